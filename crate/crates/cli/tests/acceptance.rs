//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Set `BLESS=1` to rewrite the golden reports instead of comparing them.

#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use brauer_core::brauer::{Brauer, BrauerRep};
use brauer_core::forms::{CertStatus, FormSpace};
use brauer_core::laurent::Horizon;
use brauer_core::residue::{Fq, FqElem, LocalField, RatFuncField, ResidueField, ZeroStatus};
use brauer_core::ring::Ring;
use brauer_core::sample::{self, Sample};
use brauer_core::surface::{Divisor, Surface};
use brauer_core::swan::{SplitStatus, SymbolPresentation, SymbolType};
use brauer_core::witt::{Witt, WittVec};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ratfunc(p: u32) -> FormSpace<RatFuncField> {
    FormSpace::new(RatFuncField::new(Fq::new(p, 1).unwrap()), 40)
}

fn local(p: u32) -> FormSpace<LocalField> {
    FormSpace::new(LocalField::new(Fq::new(p, 1).unwrap(), "s", 24), 40)
}

fn witt_oracle() -> Outcome {
    let mut pairs = 0;
    for p in [2u64, 3, 5] {
        let w = Witt::new(Fq::new(p as u32, 1).unwrap()).unwrap();
        let (sum, prod) = oracle::ghost_tables(p);
        let v = |a: u64, b: u64| WittVec {
            comps: vec![FqElem(a as u32), FqElem(b as u32)],
        };
        for u in 0..p * p {
            for x in 0..p * p {
                let (a, b) = (v(u % p, u / p), v(x % p, x / p));
                let (s0, s1) = sum[u as usize][x as usize];
                let (m0, m1) = prod[u as usize][x as usize];
                ensure!(w.add(&a, &b).unwrap() == v(s0, s1), "p={p}: sum of {u} and {x}");
                ensure!(w.mul(&a, &b).unwrap() == v(m0, m1), "p={p}: product of {u} and {x}");
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs, + and x"))
}

fn roundtrips_in<K: Sample>(k: &K, rng: &mut StdRng, n: usize) -> Result<(), String> {
    let p = k.characteristic();
    for _ in 0..n {
        let f = k.sample(rng, 4);
        let comps = k.p_basis_decompose(&f).map_err(|e| e.to_string())?;
        let back = k.p_basis_reconstruct(&comps);
        ensure!(k.is_zero(&k.sub(&back, &f)), "p-basis roundtrip failed for {}", k.format(&f));
        let Some(th) = k.theta() else { continue };
        let (a, g) = k.cartier_decompose(&f).map_err(|e| e.to_string())?;
        let mut th_pm1 = k.one();
        for _ in 0..p - 1 {
            th_pm1 = k.mul(&th_pm1, &th);
        }
        let rebuilt = k.add(&k.mul(&k.frobenius(&a), &th_pm1), &k.derivative(&g));
        ensure!(
            k.is_zero(&k.sub(&rebuilt, &f)),
            "Cartier roundtrip failed for {}",
            k.format(&f)
        );
    }
    Ok(())
}

fn cartier_roundtrips() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    for p in [2, 3, 5] {
        let fq = Fq::new(p, 1).unwrap();
        roundtrips_in(&fq, &mut rng, 1000)?;
        roundtrips_in(&RatFuncField::new(fq.clone()), &mut rng, 1000)?;
        roundtrips_in(&LocalField::new(fq, "s", 24), &mut rng, 1000)?;
    }
    Ok("1000 inputs per residue kind, p in {2, 3, 5}".into())
}

fn swan_invariance() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    let spaces = [ratfunc(2), ratfunc(3), ratfunc(5)];
    let mut wild = 0;
    for n in 0..100 {
        let space = &spaces[n % 3];
        let p = space.residue().characteristic() as i64;
        let pole = rng.gen_range(0..=8);
        let w = sample::form(space, &mut rng, pole, 2);
        let base = space.swan_conductor(&w).map_err(|e| e.error.to_string())?;
        wild += usize::from(base.sw > 0);
        for _ in 0..20 {
            let up = rng.gen_range(0..=10 / p);
            let u = sample::form(space, &mut rng, up, 2);
            let v = sample::series(space.field(), &mut rng, -9, 3, 0.4, 2);
            let w2 = space.add(&space.add(&w, &space.f_minus_i(&u)), &space.d(&v));
            let rep = space.swan_conductor(&w2).map_err(|e| e.error.to_string())?;
            ensure!(
                rep.sw == base.sw,
                "sw {} vs {} for {}",
                base.sw,
                rep.sw,
                space.format(&w)
            );
        }
    }
    Ok(format!("100 forms ({wild} with sw > 0) x 20 coboundaries"))
}

fn dlog_bounds() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let spaces = [ratfunc(2), ratfunc(3)];
    for n in 0..500 {
        let s = &spaces[n % 2];
        let f = s.field();
        let i = rng.gen_range(0..8);
        let j = rng.gen_range(1..5);
        let a = loop {
            let a = sample::series(f, &mut rng, -i, 3, 0.6, 2);
            if !f.is_zero(&a) {
                break a;
            }
        };
        let b = sample::series(f, &mut rng, j, j + 4, 0.6, 2);
        let w1 = s.a_dlog_b(&a, &f.add(&f.one(), &b)).map_err(|e| e.to_string())?;
        let sw1 = s.swan_conductor(&w1).map_err(|e| e.error.to_string())?.sw;
        ensure!(sw1 <= (i - j).max(0), "sw(a dlog(1+b)) = {sw1} > {i} - {j}");
        let w2 = s.add(&w1, &s.a_dlog_b(&f.mul(&a, &b), &a).map_err(|e| e.to_string())?);
        let sw2 = s.swan_conductor(&w2).map_err(|e| e.error.to_string())?.sw;
        ensure!(sw2 <= (i - 2 * j).max(0), "sw = {sw2} > {i} - 2*{j}");
    }
    Ok("500 cases".into())
}

type Presented = Vec<(FormSpace<RatFuncField>, SymbolPresentation<brauer_core::residue::RatFunc>)>;

fn normal_forms(out: &mut Presented) -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let spaces = [ratfunc(2), ratfunc(3), ratfunc(5)];
    for n in 0..200 {
        let space = &spaces[n % 3];
        let p = space.residue().characteristic() as i64;
        let pole = rng.gen_range(1..=7);
        let w = sample::wild_form(space, &mut rng, pole, 2);
        let sp = space.normal_form(&w).map_err(|e| e.to_string())?;
        let wild = sp.wild.as_ref().ok_or("wild class without a wild symbol")?;
        let expect = if sp.sw % p == 0 { SymbolType::II } else { SymbolType::III };
        ensure!(wild.kind == expect, "sw {} gave type {}", sp.sw, wild.kind.label());
        ensure!(wild.exponent == sp.sw, "exponent {} for sw {}", wild.exponent, sp.sw);
        let img = space.add(&sp.symbol_form, &sp.rest);
        ensure!(
            space.cert_verify(&w, &img, &sp.certificate) == CertStatus::Valid,
            "certificate for {} not Valid",
            space.format(&w)
        );
        out.push((space.clone(), sp));
    }
    Ok("200 wild classes".into())
}

fn per_ind(presented: &Presented) -> Outcome {
    ensure!(!presented.is_empty(), "no classes from the normal-form criterion");
    for (space, sp) in presented {
        let p = space.residue().characteristic() as u64;
        let cert = space.split_certificate(sp).map_err(|e| e.to_string())?;
        ensure!(cert.status == SplitStatus::Verified, "split certificate {:?}", cert.checks);
        ensure!(cert.degree == p, "degree {}", cert.degree);
        let b = &sp.wild.as_ref().unwrap().b;
        let expect = format!("y^{p} = {}", space.field().format_series(b));
        ensure!(cert.descriptors.first() == Some(&expect), "descriptor {:?}", cert.descriptors);
    }
    Ok(format!("{} verified degree-p splittings", presented.len()))
}

fn random_symbol<K: Sample>(b: &Brauer<K>, rng: &mut StdRng) -> Result<BrauerRep<K::Elem>, String> {
    let f = b.space().field();
    let lo = -rng.gen_range(0..6);
    let a = sample::series(f, rng, lo, 2, 0.5, 2);
    let unit = loop {
        let u = sample::series(f, rng, 0, 2, 0.6, 2);
        if u.valuation() == Some(0) {
            break u;
        }
    };
    let g = f.mul(&unit, &f.var_pow(rng.gen_range(-2..3)));
    b.symbol_class(&WittVec { comps: vec![a] }, &g).map_err(|e| e.to_string())
}

fn r1_after_v_in<K: Sample>(b: &Brauer<K>, rng: &mut StdRng, n: usize) -> Result<(), String> {
    for _ in 0..n {
        let x = random_symbol(b, rng)?;
        let y = b.map_r1(&b.map_v(&x).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let v = b.is_zero(&y).map_err(|e| e.to_string())?;
        ensure!(v.status == ZeroStatus::Zero, "R1(V(x)) gave {} ({})", v.status.label(), v.reason);
    }
    Ok(())
}

fn r1_after_v() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    for p in [2, 3] {
        r1_after_v_in(&Brauer::new(ratfunc(p)).unwrap(), &mut rng, 25)?;
        r1_after_v_in(&Brauer::new(local(p)).unwrap(), &mut rng, 25)?;
    }
    Ok("100 symbols".into())
}

fn cli_exit(args: &[&str]) -> i32 {
    let out = Command::new(env!("CARGO_BIN_EXE_brauer"))
        .args(args)
        .output()
        .expect("binary runs");
    out.status.code().unwrap_or(-1)
}

fn pi_symbol_reduction() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    let mut obstructions = 0;
    let mut rejected = 0;
    for p in [3u32, 2] {
        let s = Surface::new(Fq::new(p, 1).unwrap(), 10, 14).unwrap();
        let along_t = s.along(Divisor::T);
        for _ in 0..50 {
            let w = sample::restricted_class(&s, &mut rng, p as i64 - 1);
            let locus = s.ramification_locus(&w).map_err(|e| e.to_string())?;
            ensure!(!locus.contains(&Divisor::Pi), "ramified along (pi): {}", s.format_class(&w));
            let r = s.reduce_to_pi_symbol(&w).map_err(|e| e.to_string())?;
            ensure!(r.sw < p as i64, "sw {} for {}", r.sw, s.format_class(&w));
            ensure!(r.cert_status == CertStatus::Valid, "certificate for {}", s.format_class(&w));
            match r.obstruction {
                None => ensure!(
                    along_t.field().is_zero(&r.output.dt),
                    "output of {} is not a pure [h, pi)",
                    s.format_class(&w)
                ),
                Some(_) => obstructions += 1,
            }
        }
        // sw >= p goes through the binary and must exit with status 3
        let p_s = p.to_string();
        let mut tried = 0;
        while tried < 4 {
            let w = sample::restricted_class(&s, &mut rng, p as i64 + 2);
            let (sw, _) = s.ramification_at(&w, Divisor::T).map_err(|e| e.to_string())?;
            if sw < p as i64 {
                continue;
            }
            tried += 1;
            let expr = s.format_class(&w);
            let code = cli_exit(&["local2d", "--p", &p_s, "--prec", "14", "--inner-prec", "10", &expr]);
            ensure!(code == 3, "exit {code} for sw = {sw}: {expr}");
            rejected += 1;
        }
    }
    Ok(format!("100 classes ({obstructions} with obstruction), {rejected} rejections"))
}

fn as_hensel() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let mut solvable = 0;
    for (p, n) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
        let fq = Fq::new(p, n).unwrap();
        let k = LocalField::new(fq.clone(), "pi", 20);
        for _ in 0..50 {
            let terms: Vec<(i64, FqElem)> = (0..12).map(|e| (e, sample::fq_elem(&fq, &mut rng))).collect();
            let a = k.series().from_terms(terms, Horizon::Exact);
            let c0 = k.series().coeff(&a, 0);
            let expect = fq.trace(c0) == 0;
            let got = k.artin_schreier_solve(&a).map_err(|e| e.to_string())?;
            ensure!(got.is_some() == expect, "q={}: trace {} but solver {:?}", fq.size(), fq.trace(c0), got.is_some());
            if let Some(u) = got {
                ensure!(k.is_zero(&k.sub(&k.sub(&k.frobenius(&u), &u), &a)), "u^p - u != a");
                solvable += 1;
            }
        }
    }
    Ok(format!("200 series, {solvable} solvable"))
}

const GOLDEN: [(&str, &[&str]); 10] = [
    ("01-sw-ratfunc", &["sw", "--p", "2", "--q", "2", "--residue", "ratfunc", "sym(x/t^2; t)"]),
    ("02-sw-local", &["sw", "--p", "3", "--residue", "local", "sym(1/(s*t^4); t) + d(s/t^2)"]),
    ("03-normal-form-type2", &["normal-form", "--p", "2", "--q", "2", "--residue", "ratfunc", "sym(x/t^2; t)"]),
    ("04-normal-form-type3", &["normal-form", "--p", "3", "--residue", "ratfunc", "(x/t^4)*dlog(t) + d(x*t)"]),
    ("05-per-ind-fq", &["per-ind", "--p", "2", "--q", "4", "--residue", "fq", "sym(w + 1/t^3; t)"]),
    ("06-per-ind-zero", &["per-ind", "--p", "3", "--residue", "ratfunc", "d(x/t^5) + sym(x; t^3)"]),
    ("07-witt-level2", &["witt", "--p", "2", "--residue", "ratfunc", "sym(w2(x/t^2, 0); t)"]),
    ("08-witt-v-image", &["witt", "--p", "2", "--residue", "ratfunc", "sym(w2(0, x/t^2); t)"]),
    ("09-local2d-pi-symbol", &["local2d", "--p", "3", "--q", "3", "sym(pi/t^2; t)"]),
    ("10-local2d-obstruction", &["local2d", "--p", "3", "--q", "3", "sym(1 + 1/t; t)"]),
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_brauer"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "{:?} exited {:?}", args, out.status.code());
    Ok(out.stdout)
}

fn golden() -> Outcome {
    let bless = std::env::var_os("BLESS").is_some();
    for (name, args) in GOLDEN {
        let first = run_cli(args)?;
        let second = run_cli(args)?;
        ensure!(first == second, "{name}: output differs between runs");
        let path = golden_dir().join(format!("{name}.json"));
        if bless {
            std::fs::write(&path, &first).map_err(|e| e.to_string())?;
            continue;
        }
        let want = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        ensure!(first == want, "{name}: output differs from {}", path.display());
    }
    Ok(format!("{} invocations byte-identical", GOLDEN.len()))
}

fn main() {
    let mut presented = Presented::new();
    let mut failed = 0;
    let mut check = |n: u32, name: &str, budget: Option<Duration>, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(msg)
        });
        let took = start.elapsed();
        let res = match (res, budget) {
            (Ok(_), Some(b)) if took > b => Err(format!("took {took:.2?}, budget {b:?}")),
            (r, _) => r,
        };
        match res {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail} ({took:.2?})"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {why} ({took:.2?})");
            }
        }
    };
    let secs = |s| Some(Duration::from_secs(s));
    check(1, "Witt ring laws match Z/p^2", secs(1), &mut witt_oracle);
    check(2, "p-basis and Cartier roundtrips", secs(30), &mut cartier_roundtrips);
    check(3, "Swan conductor invariant under coboundaries", secs(60), &mut swan_invariance);
    check(4, "conductor bounds for a dlog(1+b) and a dlog(1+b) + ab dlog a", secs(60), &mut dlog_bounds);
    check(5, "normal-form conformance", secs(120), &mut || normal_forms(&mut presented));
    check(6, "per = ind by degree-p splitting certificates", None, &mut || per_ind(&presented));
    check(7, "R1 after V is zero", None, &mut r1_after_v);
    check(8, "two-dimensional reduction to [h, pi)", secs(120), &mut pi_symbol_reduction);
    check(9, "Artin-Schreier solvability over F_q[[pi]] by trace", None, &mut as_hensel);
    check(10, "CLI golden reports", None, &mut golden);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
