//! 1-forms `A dθ + B dt` over `F = k((t))`, the operators `d`, `dlog`, the
//! Frobenius `F`, and coboundary certificates.

use crate::error::{Error, Result};
use crate::laurent::{Horizon, LaurentRing, Series};
use crate::residue::ResidueField;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form1<E> {
    /// coefficient of `dθ` (always zero over a perfect residue field)
    pub dtheta: Series<E>,
    /// coefficient of `dt`
    pub dt: Series<E>,
}

/// A coboundary move: `Exact(v)` stands for `dv`, `Frob(u)` for `(F − I)u`.
#[derive(Clone, Debug, PartialEq)]
pub enum Move<E> {
    Exact(Series<E>),
    Frob(Form1<E>),
}

/// Moves whose sum is `ω_in − ω_out`.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<E> {
    pub moves: Vec<Move<E>>,
}

impl<E> Default for Certificate<E> {
    fn default() -> Self {
        Certificate { moves: Vec::new() }
    }
}

impl<E> Certificate<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn extend(&mut self, other: Certificate<E>) {
        self.moves.extend(other.moves);
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum CertStatus {
    Valid,
    Invalid,
    Indeterminate,
}

impl CertStatus {
    pub fn label(self) -> &'static str {
        match self {
            CertStatus::Valid => "Valid",
            CertStatus::Invalid => "Invalid",
            CertStatus::Indeterminate => "Indeterminate",
        }
    }
}

/// Forms over `k((t))` together with the verification precision.
#[derive(Clone, Debug)]
pub struct FormSpace<K: ResidueField> {
    f: LaurentRing<K>,
    floor: i64,
}

impl<K: ResidueField> FormSpace<K> {
    pub fn new(k: K, prec: i64) -> Self {
        FormSpace {
            f: LaurentRing::new(k, "t", prec),
            floor: 1,
        }
    }

    /// Minimum verified precision (in the `dlog t` normalization) for a `Valid` verdict.
    pub fn with_floor(mut self, floor: i64) -> Self {
        self.floor = floor;
        self
    }

    pub fn field(&self) -> &LaurentRing<K> {
        &self.f
    }

    pub fn residue(&self) -> &K {
        self.f.base()
    }

    pub fn precision(&self) -> i64 {
        self.f.precision()
    }

    pub fn zero(&self) -> Form1<K::Elem> {
        Form1 {
            dtheta: self.f.zero(),
            dt: self.f.zero(),
        }
    }

    pub fn form(&self, dtheta: Series<K::Elem>, dt: Series<K::Elem>) -> Form1<K::Elem> {
        let dtheta = if self.residue().theta().is_some() {
            dtheta
        } else {
            self.f.zero()
        };
        Form1 { dtheta, dt }
    }

    pub fn add(&self, a: &Form1<K::Elem>, b: &Form1<K::Elem>) -> Form1<K::Elem> {
        Form1 {
            dtheta: self.f.add(&a.dtheta, &b.dtheta),
            dt: self.f.add(&a.dt, &b.dt),
        }
    }

    pub fn neg(&self, a: &Form1<K::Elem>) -> Form1<K::Elem> {
        Form1 {
            dtheta: self.f.neg(&a.dtheta),
            dt: self.f.neg(&a.dt),
        }
    }

    pub fn sub(&self, a: &Form1<K::Elem>, b: &Form1<K::Elem>) -> Form1<K::Elem> {
        self.add(a, &self.neg(b))
    }

    /// `g · ω`.
    pub fn scale(&self, g: &Series<K::Elem>, a: &Form1<K::Elem>) -> Form1<K::Elem> {
        Form1 {
            dtheta: self.f.mul(g, &a.dtheta),
            dt: self.f.mul(g, &a.dt),
        }
    }

    pub fn is_zero(&self, a: &Form1<K::Elem>) -> bool {
        self.f.is_zero(&a.dtheta) && self.f.is_zero(&a.dt)
    }

    /// Horizon of the `dθ` and `dlog t` coefficients, `min(h_A, h_B + 1)`.
    pub fn horizon(&self, a: &Form1<K::Elem>) -> Horizon {
        a.dtheta.horizon().min(a.dt.horizon().shift(1))
    }

    /// Truncation at `t^n` in the `dlog t` normalization.
    pub fn truncate(&self, a: &Form1<K::Elem>, n: i64) -> Form1<K::Elem> {
        Form1 {
            dtheta: self.f.truncate(&a.dtheta, n),
            dt: self.f.truncate(&a.dt, n - 1),
        }
    }

    pub fn d(&self, g: &Series<K::Elem>) -> Form1<K::Elem> {
        self.form(self.f.derivative_theta(g), self.f.derivative_t(g))
    }

    pub fn dlog(&self, u: &Series<K::Elem>) -> Result<Form1<K::Elem>> {
        let inv = self.f.try_inv(u)?;
        Ok(self.scale(&inv, &self.d(u)))
    }

    /// `a · dlog b`.
    pub fn a_dlog_b(&self, a: &Series<K::Elem>, b: &Series<K::Elem>) -> Result<Form1<K::Elem>> {
        Ok(self.scale(a, &self.dlog(b)?))
    }

    /// `a · dlog t`.
    pub fn dlog_t(&self, a: &Series<K::Elem>) -> Form1<K::Elem> {
        self.form(self.f.zero(), self.f.shift(a, -1))
    }

    /// `a · dθ`; zero over a perfect residue field.
    pub fn dtheta(&self, a: &Series<K::Elem>) -> Form1<K::Elem> {
        self.form(a.clone(), self.f.zero())
    }

    /// `F(A dθ + B dt) = A^p θ^{p−1} dθ + B^p t^{p−1} dt`.
    pub fn frobenius(&self, w: &Form1<K::Elem>) -> Form1<K::Elem> {
        let p = self.f.characteristic() as i64;
        let k = self.residue();
        let dtheta = match k.theta() {
            Some(th) => {
                let c = k.pow(&th, (p - 1) as u64);
                self.f.scale(&self.f.frobenius(&w.dtheta), &c)
            }
            None => self.f.zero(),
        };
        let dt = self.f.shift(&self.f.frobenius(&w.dt), p - 1);
        Form1 { dtheta, dt }
    }

    pub fn f_minus_i(&self, w: &Form1<K::Elem>) -> Form1<K::Elem> {
        self.sub(&self.frobenius(w), w)
    }

    /// `j = max(−v(A), −1 − v(B), 0)`.
    pub fn pole_order(&self, w: &Form1<K::Elem>) -> Result<i64> {
        if self.horizon(w).bound() < 0 {
            return Err(Error::PrecisionExhausted(
                "pole order undetermined: horizon below t^0".into(),
            ));
        }
        let a = w.dtheta.valuation().map_or(0, |v| -v);
        let b = w.dt.valuation().map_or(0, |v| -1 - v);
        Ok(a.max(b).max(0))
    }

    /// Coefficient of `t^{−j}` in `A`.
    pub fn alpha(&self, w: &Form1<K::Elem>, j: i64) -> K::Elem {
        self.f.coeff(&w.dtheta, -j)
    }

    /// Coefficient of `t^{−j}` in `tB`.
    pub fn beta(&self, w: &Form1<K::Elem>, j: i64) -> K::Elem {
        self.f.coeff(&w.dt, -j - 1)
    }

    pub fn move_effect(&self, m: &Move<K::Elem>) -> Form1<K::Elem> {
        match m {
            Move::Exact(v) => self.d(v),
            Move::Frob(u) => self.f_minus_i(u),
        }
    }

    /// `ω − effect(m)`.
    pub fn apply(&self, w: &Form1<K::Elem>, m: &Move<K::Elem>) -> Form1<K::Elem> {
        self.sub(w, &self.move_effect(m))
    }

    /// Recomputes `ω_in − ω_out − Σ moves` and checks it vanishes below
    /// `min(horizon, precision)`; the integral tail beyond that is a
    /// coboundary anyway.
    pub fn cert_verify(
        &self,
        w_in: &Form1<K::Elem>,
        w_out: &Form1<K::Elem>,
        cert: &Certificate<K::Elem>,
    ) -> CertStatus {
        let mut diff = self.sub(w_in, w_out);
        for m in &cert.moves {
            diff = self.apply(&diff, m);
        }
        let h = self.horizon(&diff).bound().min(self.precision());
        let bad_a = diff
            .dtheta
            .terms()
            .any(|(e, c)| e < h && !self.residue().is_zero(c));
        let bad_b = diff
            .dt
            .terms()
            .any(|(e, c)| e + 1 < h && !self.residue().is_zero(c));
        if bad_a || bad_b {
            CertStatus::Invalid
        } else if h >= self.floor {
            CertStatus::Valid
        } else {
            CertStatus::Indeterminate
        }
    }

    /// `(Aθ)*dlog(θ) + (tB)*dlog(t)`.
    pub fn format(&self, w: &Form1<K::Elem>) -> String {
        let k = self.residue();
        let mut parts = Vec::new();
        if let (Some(th), Some(lbl)) = (k.theta(), k.theta_label()) {
            if !self.f.is_zero(&w.dtheta) {
                let a = self.f.scale(&w.dtheta, &th);
                parts.push(format!("({})*dlog({lbl})", self.f.format_series(&a)));
            }
        }
        if !self.f.is_zero(&w.dt) {
            let b = self.f.shift(&w.dt, 1);
            parts.push(format!("({})*dlog(t)", self.f.format_series(&b)));
        }
        if parts.is_empty() {
            match self.horizon(w) {
                Horizon::Exact => "0".into(),
                Horizon::Known(n) => format!("O(t^{n})"),
            }
        } else {
            parts.join(" + ")
        }
    }

    pub fn format_move(&self, m: &Move<K::Elem>) -> String {
        match m {
            Move::Exact(v) => format!("Exact({})", self.f.format_series(v)),
            Move::Frob(u) => format!("Frob({})", self.format(u)),
        }
    }
}
