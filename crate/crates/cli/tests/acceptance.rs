//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use birkhoff_cli::run;
use birkhoff_core::complex::{f_vector_bruteforce, order_complex, reduced_euler};
use birkhoff_core::facenum::{
    basis_vector, decompose, dehn_sommerville_check, f_to_h, h_to_f, peak_interval, predicted_peak,
    predicted_peak_by_parity, tilde_basis_vector, window_indices, FVector, HVector, Peak,
};
use birkhoff_core::lattice::{chain_vector, ideal_lattice, is_boolean, proper_part};
use birkhoff_core::poset::{enumerate_classes, Poset};
use birkhoff_core::verify::{batch_verify, boundary_relation, prop4_check, BatchConfig};
use birkhoff_core::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn universe(n_max: usize) -> Vec<Poset> {
    (1..=n_max)
        .flat_map(|n| enumerate_classes(n).unwrap().into_iter().map(|(_, p)| p))
        .collect()
}

/// Labeled strict orders whose relation respects label order. Every class
/// has such a labeling.
fn labeled_class_count(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut keys = BTreeSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let rel = |x: usize, y: usize| {
            pairs
                .iter()
                .position(|&p| p == (x, y))
                .is_some_and(|k| mask >> k & 1 == 1)
        };
        if let Ok(p) = Poset::from_relation(n, rel) {
            keys.insert(p.canonical_key().unwrap());
        }
    }
    keys.len()
}

fn lattice_vectors(p: &Poset) -> Option<(usize, FVector, HVector)> {
    let l = ideal_lattice(p).unwrap();
    let d = usize::try_from(l.d()).ok()?;
    let c = chain_vector(&proper_part(&l), d).unwrap();
    let f = c.to_f_vector();
    let h = f_to_h(&f);
    Some((d, f, h))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let expected = [1, 2, 5, 16, 63, 318];
    let mut total = 0;
    for n in 1..=6 {
        let classes = enumerate_classes(n).unwrap();
        let oracle = labeled_class_count(n);
        if classes.len() != expected[n - 1] || oracle != expected[n - 1] {
            return Outcome::new(false, format!("n = {n}: {} classes, oracle {oracle}", classes.len()));
        }
        total += classes.len();
        for (key, p) in &classes {
            let q = proper_part(&ideal_lattice(p).unwrap());
            if q.is_empty() {
                continue;
            }
            let fast = chain_vector(&q, n - 1).unwrap().to_f_vector();
            let slow = f_vector_bruteforce(&order_complex(&q).unwrap()).unwrap();
            if fast != slow {
                return Outcome::new(false, format!("mismatch at key {key}"));
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        total == 405 && elapsed < Duration::from_secs(60),
        format!("{total} classes, exact match, {elapsed:.2?}"),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let report = batch_verify(&BatchConfig::new(7)).unwrap();
    let elapsed = start.elapsed();
    let keys: Vec<String> = report.reproducers.iter().map(|r| r.key.to_hex()).collect();
    Outcome::new(
        report.falsifications == 0 && elapsed < Duration::from_secs(300),
        format!(
            "{} classes, {} falsifications {:?} ({} with f_0 > d), {} informational, {elapsed:.2?}",
            report.posets_tested,
            report.falsifications,
            keys,
            report.falsifications_exceeding_simplex,
            report.theorem_informational
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for p in universe(6) {
        let Some((d, f, h)) = lattice_vectors(&p) else { continue };
        let hd = &h.entries()[d];
        let sphere = hd.is_one() && dehn_sommerville_check(&h);
        let dichotomy = if p.is_antichain() { sphere } else { !sphere && hd.is_zero() };
        let sign = if d % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        let euler = *hd == sign * reduced_euler(&f);
        if !dichotomy || !euler {
            return Outcome::new(false, format!("fails on {p:?}: h = {:?}", h.entries()));
        }
        checked += 1;
    }
    Outcome::new(true, format!("{checked} lattices"))
}

fn criterion_4() -> Outcome {
    let mut failures = 0;
    let mut checked = 0;
    for p in universe(7) {
        if let Some((_, _, h)) = lattice_vectors(&p) {
            checked += 1;
            failures += usize::from(!prop4_check(&h));
        }
    }
    Outcome::new(failures == 0, format!("{checked} lattices, {failures} failures"))
}

fn criterion_5() -> Outcome {
    let mut lattices = 0;
    for p in universe(7) {
        if let Some((_, f, h)) = lattice_vectors(&p) {
            if decompose(&h).sum() != f.entries() {
                return Outcome::new(false, format!("fails on {p:?}"));
            }
            lattices += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..200 {
        let d = rng.gen_range(0..=15);
        let h: Vec<i64> = (0..=d).map(|_| rng.gen_range(0..1000)).collect();
        let hv = HVector::from_i64(&h);
        if decompose(&hv).sum() != h_to_f(&hv).entries() {
            return Outcome::new(false, format!("fails on h = {h:?}"));
        }
    }
    Outcome::new(true, format!("{lattices} lattices and 200 random h-vectors"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut wide_plateaus = 0;
    for d in 3..=30 {
        let w = window_indices(d).unwrap();
        let (lo_w, hi_w) = w.peak_window;
        for i in 0..=w.epsilon {
            let peak = predicted_peak(i, d).unwrap();
            if predicted_peak_by_parity(i, d).unwrap() != peak {
                failures.push(format!("case split d={d} i={i}"));
            }
            if !(lo_w..=hi_w).contains(&peak) {
                failures.push(format!("d={d} i={i}: peak {peak} outside {lo_w}..={hi_w}"));
            }
            for v in [basis_vector(d - i, d).unwrap(), tilde_basis_vector(i, d).unwrap()] {
                match peak_interval(&v.entries).unwrap() {
                    Peak::Unimodal { lo, hi } => {
                        if !(lo..=hi).contains(&peak) {
                            failures.push(format!("{:?}^{} d={d}: plateau {lo}..={hi} misses {peak}", v.kind, v.i));
                        }
                        wide_plateaus += usize::from(lo < lo_w || hi > hi_w);
                    }
                    Peak::NotUnimodal { index } => {
                        failures.push(format!("{:?}^{} d={d}: valley at {index}", v.kind, v.i))
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let detail = match failures.first() {
        None => format!("3 <= d <= 30, {wide_plateaus} plateaus reach past the window, {elapsed:.2?}"),
        Some(first) => format!(
            "{} failures, first: {first}; {wide_plateaus} plateaus reach past the window; {elapsed:.2?}",
            failures.len()
        ),
    };
    Outcome::new(failures.is_empty() && elapsed < Duration::from_secs(1), detail)
}

fn criterion_7() -> Outcome {
    let mut checked = 0;
    for p in universe(5) {
        let l = ideal_lattice(&p).unwrap();
        if is_boolean(&l) || l.d() < 2 {
            continue;
        }
        let r = boundary_relation(&l).unwrap();
        if !r.holds() {
            return Outcome::new(false, format!("fails on {p:?}"));
        }
        checked += 1;
    }
    Outcome::new(checked > 0, format!("{checked} non-Boolean lattices"))
}

fn evaluate(coeffs_high_first: &[BigInt], x: &BigInt) -> BigInt {
    coeffs_high_first.iter().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn criterion_8() -> Outcome {
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..1000 {
        let d = rng.gen_range(1..=20);
        let f: Vec<u64> = (0..d).map(|_| rng.gen_range(0..1_000_000)).collect();
        let fv = FVector::from_u64(&f);
        let h = f_to_h(&fv);
        if h_to_f(&h) != fv {
            return Outcome::new(false, format!("round trip fails on f = {f:?}"));
        }
        let left: Vec<BigInt> = std::iter::once(BigInt::one()).chain(f.iter().map(|&x| x.into())).collect();
        for x in 0..=d as i64 {
            let x = BigInt::from(x);
            let right = h
                .entries()
                .iter()
                .enumerate()
                .fold(BigInt::zero(), |acc, (i, hi)| acc + hi * num_traits::pow(&x + 1, d - i));
            if evaluate(&left, &x) != right {
                return Outcome::new(false, format!("identity fails on f = {f:?} at x = {x}"));
            }
        }
    }
    Outcome::new(true, "1000 f-vectors, d <= 20")
}

fn verify_bytes(jobs: &str, format: &str) -> (i32, Vec<u8>, Vec<u8>) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        ["birkhoff", "verify", "--n-max", "5", "--jobs", jobs, "--format", format],
        &mut out,
        &mut err,
    );
    (code, out, err)
}

fn criterion_9() -> Outcome {
    for format in ["text", "json"] {
        let one = verify_bytes("1", format);
        let max = verify_bytes("max", format);
        if one != max {
            return Outcome::new(false, format!("{format} output differs"));
        }
    }
    Outcome::new(true, "text and json identical for --jobs 1 and --jobs max")
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence, |P| <= 6", criterion_1),
        ("strict ranges, |P| <= 7", criterion_2),
        ("sphere/ball dichotomy and Euler relation, |P| <= 6", criterion_3),
        ("h_i >= h_{d-i} >= 0, |P| <= 7", criterion_4),
        ("decomposition reconstruction", criterion_5),
        ("basis peak law, 3 <= d <= 30", criterion_6),
        ("boundary relation, |P| <= 5", criterion_7),
        ("f/h round trip and polynomial identity", criterion_8),
        ("verify determinism across --jobs", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!("[criterion {}] {status} {name}: {}", k + 1, outcome.detail);
        failed += usize::from(!outcome.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
