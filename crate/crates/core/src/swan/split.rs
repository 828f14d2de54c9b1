//! Degree-p splitting fields for a symbol presentation.

use crate::error::{Error, Result};
use crate::forms::FormSpace;
use crate::laurent::{Comparison, LaurentRing, Series};
use crate::residue::{ResidueField, ResidueKind, ZeroStatus};
use crate::ring::Ring;
use crate::swan::{SymbolPresentation, SymbolType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitStatus {
    Verified,
    Failed,
    Unknown,
}

impl SplitStatus {
    pub fn label(self) -> &'static str {
        match self {
            SplitStatus::Verified => "Verified",
            SplitStatus::Failed => "Failed",
            SplitStatus::Unknown => "Unknown",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SplitCertificate {
    /// degree of the splitting extension
    pub degree: u64,
    pub descriptors: Vec<String>,
    pub status: SplitStatus,
    /// one line per mechanical check performed
    pub checks: Vec<String>,
}

/// `y^p` in `F[Y]/(Y^p − b)`, computed by repeated multiplication and reduction.
fn radical_power<K: ResidueField>(f: &LaurentRing<K>, b: &Series<K::Elem>, p: usize) -> Vec<Series<K::Elem>> {
    let mut acc: Vec<Series<K::Elem>> = vec![f.one()];
    for _ in 0..p {
        let mut next = vec![f.zero(); acc.len() + 1];
        for (i, c) in acc.iter().enumerate() {
            next[i + 1] = f.add(&next[i + 1], c);
        }
        if next.len() > p {
            let top = next.pop().expect("nonempty");
            next[0] = f.add(&next[0], &f.mul(&top, b));
        }
        acc = next;
    }
    acc
}

impl<K: ResidueField> FormSpace<K> {
    /// Checks that adjoining `y = b^{1/p}` gives a degree-p extension in which `[a, b)` dies.
    fn radical_split(
        &self,
        b: &Series<K::Elem>,
        var: &str,
        checks: &mut Vec<String>,
    ) -> Result<bool> {
        let f = self.field();
        let p = f.characteristic() as usize;
        let not_power = f.pth_root(b)?.is_none();
        checks.push(format!(
            "{} is not a p-th power in F: {}",
            f.format_series(b),
            not_power
        ));
        let pw = radical_power(f, b, p);
        let constant = pw.iter().skip(1).all(|c| f.is_zero(c));
        let matches = f.compare(&pw[0], b) != Comparison::Distinct;
        checks.push(format!("{var}^{p} reduces to the slot in F[{var}]/({var}^{p} - b): {}", constant && matches));
        // a dlog(y^p) = p·a dlog y, and p vanishes in F
        let p_vanishes = f.is_zero(&f.from_int(p as i64));
        checks.push(format!("pullback a*dlog({var}^{p}) = {p}*a*dlog({var}) = 0: {p_vanishes}"));
        Ok(not_power && constant && matches && p_vanishes)
    }

    pub fn split_certificate(&self, sp: &SymbolPresentation<K::Elem>) -> Result<SplitCertificate> {
        let k = self.residue();
        let f = self.field();
        let p = k.characteristic() as u64;
        if sp.wild.is_some() && sp.tame.is_some() {
            return Err(Error::Precondition("presentation carries two symbols".into()));
        }
        let mut checks = Vec::new();
        if let Some(w) = &sp.wild {
            let mut ok = self.radical_split(&w.b, "y", &mut checks)?;
            match w.kind {
                SymbolType::II => {
                    let v = w.b.valuation().unwrap_or(0);
                    let ramified = v.rem_euclid(p as i64) != 0;
                    checks.push(format!("v(b) = {v} is prime to p: {ramified}"));
                    ok &= ramified;
                }
                SymbolType::III => {
                    let bbar = f.coeff(&w.b, 0);
                    let insep = k.pth_root(&bbar)?.is_none();
                    checks.push(format!("residue of b is not a p-th power in k: {insep}"));
                    ok &= insep;
                }
                SymbolType::I => unreachable!("wild symbols are of type II or III"),
            }
            let status = if !ok {
                SplitStatus::Failed
            } else if sp.unram_remainder.is_some() {
                SplitStatus::Unknown
            } else {
                SplitStatus::Verified
            };
            return Ok(SplitCertificate {
                degree: p,
                descriptors: vec![
                    format!("y^{p} = {}", f.format_series(&w.b)),
                    format!("z^{p} - z = {}", f.format_series(&w.a)),
                ],
                status,
                checks,
            });
        }
        let unram = sp.unram_remainder.as_ref();
        match (&sp.tame, unram) {
            (None, None) => Ok(SplitCertificate {
                degree: 1,
                descriptors: vec![],
                status: SplitStatus::Verified,
                checks: vec!["class is certified zero".into()],
            }),
            (Some(t), None) => {
                let ok = self.radical_split(&f.var_pow(1), "y", &mut checks)?;
                Ok(SplitCertificate {
                    degree: p,
                    descriptors: vec![
                        format!("y^{p} = t"),
                        format!("z^{p} - z = {}", f.format_series(&t.a)),
                    ],
                    status: if ok { SplitStatus::Verified } else { SplitStatus::Failed },
                    checks,
                })
            }
            (None, Some(rho)) if k.kind() == ResidueKind::TruncatedLocal && sp.unram_status == ZeroStatus::NonZero => {
                // ρ dθ = [ρθ, θ) with θ ∈ k
                let th = k.theta().expect("local residue fields have a p-basis");
                let ok = self.radical_split(&f.constant(th), "y", &mut checks)?;
                Ok(SplitCertificate {
                    degree: p,
                    descriptors: vec![format!(
                        "y^{p} = {}",
                        k.theta_label().unwrap_or("s")
                    ), format!("class [{}, {})", k.format(&k.mul(rho, &k.theta().unwrap())), k.theta_label().unwrap_or("s"))],
                    status: if ok { SplitStatus::Verified } else { SplitStatus::Failed },
                    checks,
                })
            }
            _ => Ok(SplitCertificate {
                degree: p,
                descriptors: sp
                    .tame
                    .iter()
                    .map(|t| format!("z^{p} - z = {}", f.format_series(&t.a)))
                    .collect(),
                status: SplitStatus::Unknown,
                checks: vec!["unramified remainder over k is not decided".into()],
            }),
        }
    }
}
