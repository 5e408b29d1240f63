//! Checkable forms of the chain-count inequalities and the face-vector
//! facts they rest on, plus the exhaustive harness that runs them over every
//! poset up to a given size.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::complex::{
    boundary_complex, f_vector_bruteforce, order_complex, reduced_euler, within_oracle_gates,
};
use crate::error::{Error, Result};
use crate::facenum::{
    decompose, dehn_sommerville_check, f_to_h, g_vector, h_to_f, valleys, window_indices,
    FVector, HVector, WindowIndices,
};
use crate::lattice::{chain_vector, ideal_lattice, is_boolean, proper_part, ChainVector, IdealLattice};
use crate::poset::{enumerate_classes, CanonicalKey, Poset, ENUMERATION_LIMIT};

/// Default largest poset size for [`batch_verify`].
pub const BATCH_GATE: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    /// `c_i < c_{i+1}` fails inside the rising range.
    AscendFail,
    /// `c_i > c_{i+1}` fails inside the falling range.
    DescendFail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub d: usize,
    /// `c_0 < c_1 < ... < c_epsilon`
    pub ascending_ok: bool,
    /// `c_descent_start > ... > c_{d-1}`
    pub descending_ok: bool,
    pub window: WindowIndices,
    pub violations: Vec<Violation>,
    pub unimodal: bool,
    /// Valley indices of the chain counts, see [`crate::facenum::valleys`].
    pub unimodality_violations: Vec<usize>,
    pub falsification: bool,
}

/// Checks both strict ranges on a chain vector with `d >= 1`.
pub fn theorem1_check(chains: &ChainVector) -> Result<TheoremReport> {
    let window = window_indices(chains.d())?;
    let c = chains.counts();
    let mut violations = Vec::new();
    for i in 0..window.epsilon {
        if c[i] >= c[i + 1] {
            violations.push(Violation {
                index: i,
                kind: ViolationKind::AscendFail,
            });
        }
    }
    for i in window.descent_start..chains.d() - 1 {
        if c[i] <= c[i + 1] {
            violations.push(Violation {
                index: i,
                kind: ViolationKind::DescendFail,
            });
        }
    }
    let ascending_ok = !violations.iter().any(|v| v.kind == ViolationKind::AscendFail);
    let descending_ok = !violations.iter().any(|v| v.kind == ViolationKind::DescendFail);
    let unimodality_violations = valleys(c);
    Ok(TheoremReport {
        d: chains.d(),
        ascending_ok,
        descending_ok,
        window,
        unimodal: unimodality_violations.is_empty(),
        unimodality_violations,
        falsification: !(ascending_ok && descending_ok),
        violations,
    })
}

/// `h_i >= h_{d-i} >= 0` for `0 <= i <= d/2`.
pub fn prop4_check(h: &HVector) -> bool {
    let h = h.entries();
    let d = h.len() - 1;
    (0..=d / 2).all(|i| h[i] >= h[d - i] && !h[d - i].is_negative())
}

/// `f_i < f_j` for all `i < j` with `i + j <= d - 2`.
pub fn prop2_conclusion_check(f: &FVector) -> bool {
    let f = f.entries();
    let d = f.len();
    (0..d).all(|j| (0..j).filter(|i| i + j + 2 <= d).all(|i| f[i] < f[j]))
}

/// Both sides of `h_i - h_{d-i} = g^{boundary}_i` for `0 <= i <= (d-1)/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryRelation {
    pub d: usize,
    pub h: HVector,
    pub boundary_f: FVector,
    pub h_differences: Vec<BigInt>,
    pub boundary_g: Vec<BigInt>,
}

impl BoundaryRelation {
    pub fn holds(&self) -> bool {
        self.h_differences == self.boundary_g
    }
}

/// Computes the order complex of the proper part, its boundary, and both
/// sides of the boundary relation. Only defined for non-Boolean lattices
/// with `d >= 2`.
pub fn boundary_relation(lattice: &IdealLattice) -> Result<BoundaryRelation> {
    if is_boolean(lattice) {
        return Err(Error::NotApplicable("the lattice is Boolean"));
    }
    if lattice.d() < 2 {
        return Err(Error::NotApplicable("d must be at least 2"));
    }
    let d = lattice.d() as usize;
    let complex = order_complex(&proper_part(lattice))?;
    let h = f_to_h(&f_vector_bruteforce(&complex)?);
    let boundary = boundary_complex(&complex)?;
    let boundary_f = f_vector_bruteforce(&boundary)?;
    let top = (d - 1) / 2;
    let h_differences = (0..=top)
        .map(|i| &h.entries()[i] - &h.entries()[d - i])
        .collect();
    // A sphere of dimension d-2 has an f-vector of length d-1; anything else
    // cannot satisfy the relation.
    let boundary_g = if boundary_f.d() == d - 1 {
        g_vector(&f_to_h(&boundary_f)).entries().to_vec()
    } else {
        Vec::new()
    };
    Ok(BoundaryRelation {
        d,
        h,
        boundary_f,
        h_differences,
        boundary_g,
    })
}

pub fn boundary_g_check(lattice: &IdealLattice) -> Result<bool> {
    boundary_relation(lattice).map(|r| r.holds())
}

/// How a theorem report counts for a particular lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremVerdict {
    /// `d <= 0`: no inequalities to check.
    Vacuous,
    Pass,
    Falsified,
    /// Boolean lattices with `d <= 2`, where the claim is recorded but not
    /// asserted.
    Informational { holds: bool },
}

pub fn classify(report: &TheoremReport, boolean: bool) -> TheoremVerdict {
    if boolean && report.d <= 2 {
        TheoremVerdict::Informational {
            holds: !report.falsification,
        }
    } else if report.falsification {
        TheoremVerdict::Falsified
    } else {
        TheoremVerdict::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OracleMode {
    #[default]
    Off,
    /// Run the brute-force cross-checks when the instance is small enough.
    WithinGates,
    /// Run them unconditionally, failing with the gate's error if too big.
    Required,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOutcome {
    pub f_bruteforce: FVector,
    /// Brute-force f-vector equals the chain counts.
    pub matches: bool,
    /// The order complex is pure of dimension `d - 1`.
    pub pure: bool,
    /// `None` when not applicable (Boolean lattice or `d < 2`).
    pub boundary: Option<BoundaryRelation>,
}

/// Everything computed for one poset `P` and its lattice `J(P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeAnalysis {
    pub n: usize,
    pub d: i64,
    pub ideal_count: usize,
    pub boolean: bool,
    /// `None` when `d < 0`.
    pub chains: Option<ChainVector>,
    pub f: Option<FVector>,
    pub h: Option<HVector>,
    /// `None` when `d < 1`.
    pub theorem: Option<TheoremReport>,
    pub verdict: TheoremVerdict,
    pub prop4: bool,
    pub prop2: bool,
    pub dehn_sommerville: bool,
    /// `h_d = 1` with palindromic h for Boolean lattices, `h_d = 0` otherwise.
    pub dichotomy_ok: bool,
    /// `h_d = (-1)^(d-1) * reduced Euler characteristic`.
    pub euler_ok: bool,
    /// The basis decomposition sums back to the f-vector.
    pub decomposition_ok: bool,
    pub oracle: Option<OracleOutcome>,
}

impl LatticeAnalysis {
    /// `f_0 > d`, i.e. the order complex is not a simplex.
    pub fn exceeds_simplex(&self) -> bool {
        match (&self.f, self.d) {
            (Some(f), d) if d >= 1 => f.entries()[0] > BigInt::from(d),
            _ => false,
        }
    }
}

pub fn analyze_poset(poset: &Poset, oracle: OracleMode) -> Result<LatticeAnalysis> {
    let lattice = ideal_lattice(poset)?;
    analyze_lattice(&lattice, oracle)
}

pub fn analyze_lattice(lattice: &IdealLattice, oracle: OracleMode) -> Result<LatticeAnalysis> {
    let n = lattice.ground().len();
    let d = lattice.d();
    let boolean = is_boolean(lattice);
    let mut analysis = LatticeAnalysis {
        n,
        d,
        ideal_count: lattice.len(),
        boolean,
        chains: None,
        f: None,
        h: None,
        theorem: None,
        verdict: TheoremVerdict::Vacuous,
        prop4: true,
        prop2: true,
        dehn_sommerville: true,
        dichotomy_ok: true,
        euler_ok: true,
        decomposition_ok: true,
        oracle: None,
    };
    if d < 0 {
        return Ok(analysis);
    }
    let du = d as usize;
    let q = proper_part(lattice);
    let chains = chain_vector(&q, du)?;
    let f = chains.to_f_vector();
    let h = f_to_h(&f);
    let hd = &h.entries()[du];

    analysis.prop4 = prop4_check(&h);
    analysis.prop2 = prop2_conclusion_check(&f);
    analysis.dehn_sommerville = dehn_sommerville_check(&h);
    analysis.dichotomy_ok = if boolean {
        hd.is_one() && analysis.dehn_sommerville
    } else {
        hd.is_zero() && !analysis.dehn_sommerville
    };
    let sign = if (d - 1).rem_euclid(2) == 0 { 1 } else { -1 };
    analysis.euler_ok = *hd == BigInt::from(sign) * reduced_euler(&f);
    analysis.decomposition_ok =
        decompose(&h).sum() == f.entries() && h_to_f(&h) == f;

    if du >= 1 {
        let report = theorem1_check(&chains)?;
        analysis.verdict = classify(&report, boolean);
        analysis.theorem = Some(report);
        analysis.oracle = match oracle {
            OracleMode::Off => None,
            OracleMode::WithinGates
                if !within_oracle_gates(q.len(), &chains.counts()[du - 1].clone().into(), du) =>
            {
                None
            }
            _ => Some(run_oracle(lattice, &q, &f, du)?),
        };
    }
    analysis.chains = Some(chains);
    analysis.f = Some(f);
    analysis.h = Some(h);
    Ok(analysis)
}

fn run_oracle(lattice: &IdealLattice, q: &Poset, f: &FVector, d: usize) -> Result<OracleOutcome> {
    let complex = order_complex(q)?;
    let f_bruteforce = f_vector_bruteforce(&complex)?;
    let pure = complex.is_pure() && complex.dimension() == d as i64 - 1;
    let boundary = match boundary_relation(lattice) {
        Ok(r) => Some(r),
        Err(Error::NotApplicable(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(OracleOutcome {
        matches: &f_bruteforce == f,
        f_bruteforce,
        pure,
        boundary,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatchConfig {
    pub n_max: usize,
    /// Worker threads; `0` uses every available core.
    pub jobs: usize,
    /// Allow `n_max` past [`BATCH_GATE`], up to the enumeration limit.
    pub force: bool,
}

impl BatchConfig {
    pub fn new(n_max: usize) -> Self {
        BatchConfig {
            n_max,
            jobs: 0,
            force: false,
        }
    }
}

/// Minimal data to reproduce a falsified lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reproducer {
    pub key: CanonicalKey,
    pub covers: Vec<(usize, usize)>,
    pub d: usize,
    pub chains: Vec<BigUint>,
    pub violations: Vec<Violation>,
    /// `f_0 > d`. Fails only when `J(P)` is a chain and its order complex a
    /// simplex.
    pub exceeds_simplex: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonUnimodal {
    pub key: CanonicalKey,
    pub d: usize,
    pub valleys: Vec<usize>,
    pub window: WindowIndices,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BatchReport {
    pub n_max: usize,
    pub posets_tested: usize,
    /// Isomorphism classes for each `n` in `1..=n_max`.
    pub classes_per_n: Vec<usize>,
    pub lattices_boolean: usize,
    pub lattices_nonboolean: usize,
    /// Lattices whose order complex is a simplex (`J(P)` a chain).
    pub simplex_lattices: usize,
    pub theorem_passes: usize,
    pub theorem_informational: usize,
    pub falsifications: usize,
    /// Falsifications among lattices with `f_0 > d`.
    pub falsifications_exceeding_simplex: usize,
    pub prop4_failures: usize,
    pub prop2_failures: usize,
    pub prop2_failures_exceeding_simplex: usize,
    pub dichotomy_failures: usize,
    pub euler_failures: usize,
    pub decomposition_failures: usize,
    pub oracle_checked: usize,
    pub oracle_mismatches: usize,
    pub purity_failures: usize,
    pub boundary_checked: usize,
    pub boundary_failures: usize,
    pub unimodal_count: usize,
    pub nonunimodal_examples: Vec<NonUnimodal>,
    pub reproducers: Vec<Reproducer>,
}

impl BatchReport {
    /// No falsification and no failure of `h_i >= h_{d-i} >= 0`.
    pub fn passed(&self) -> bool {
        self.falsifications == 0 && self.prop4_failures == 0
    }
}

/// One analysis per isomorphism class with `1 <= |P| <= n_max`, in
/// canonical-key order.
pub fn batch_outcomes(config: &BatchConfig) -> Result<Vec<(CanonicalKey, Poset, LatticeAnalysis)>> {
    let limit = if config.force {
        ENUMERATION_LIMIT
    } else {
        BATCH_GATE
    };
    if config.n_max > limit {
        return Err(Error::size("n_max", limit, config.n_max));
    }
    if config.n_max == 0 {
        return Err(Error::range("n_max", 0, format!("1..={limit}")));
    }
    let mut classes = Vec::new();
    for n in 1..=config.n_max {
        classes.extend(enumerate_classes(n)?);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Relation(format!("cannot start worker pool: {e}")))?;
    pool.install(|| {
        classes
            .into_par_iter()
            .map(|(key, poset)| {
                let analysis = analyze_poset(&poset, OracleMode::WithinGates)?;
                Ok((key, poset, analysis))
            })
            .collect()
    })
}

pub fn summarize(n_max: usize, outcomes: &[(CanonicalKey, Poset, LatticeAnalysis)]) -> BatchReport {
    let mut report = BatchReport {
        n_max,
        posets_tested: outcomes.len(),
        classes_per_n: vec![0; n_max],
        ..Default::default()
    };
    for (key, poset, a) in outcomes {
        if (1..=n_max).contains(&a.n) {
            report.classes_per_n[a.n - 1] += 1;
        }
        if a.boolean {
            report.lattices_boolean += 1;
        } else {
            report.lattices_nonboolean += 1;
        }
        let exceeds = a.exceeds_simplex();
        if a.d >= 1 && !exceeds {
            report.simplex_lattices += 1;
        }
        match a.verdict {
            TheoremVerdict::Vacuous | TheoremVerdict::Pass => report.theorem_passes += 1,
            TheoremVerdict::Informational { .. } => report.theorem_informational += 1,
            TheoremVerdict::Falsified => {
                report.falsifications += 1;
                if exceeds {
                    report.falsifications_exceeding_simplex += 1;
                }
                let t = a.theorem.as_ref().expect("falsified lattices have a report");
                report.reproducers.push(Reproducer {
                    key: key.clone(),
                    covers: poset.cover_pairs(),
                    d: t.d,
                    chains: a.chains.as_ref().map(|c| c.counts().to_vec()).unwrap_or_default(),
                    violations: t.violations.clone(),
                    exceeds_simplex: exceeds,
                });
            }
        }
        report.prop4_failures += usize::from(!a.prop4);
        if !a.prop2 {
            report.prop2_failures += 1;
            report.prop2_failures_exceeding_simplex += usize::from(exceeds);
        }
        report.dichotomy_failures += usize::from(!a.dichotomy_ok);
        report.euler_failures += usize::from(!a.euler_ok);
        report.decomposition_failures += usize::from(!a.decomposition_ok);
        if let Some(o) = &a.oracle {
            report.oracle_checked += 1;
            report.oracle_mismatches += usize::from(!o.matches);
            report.purity_failures += usize::from(!o.pure);
            if let Some(b) = &o.boundary {
                report.boundary_checked += 1;
                report.boundary_failures += usize::from(!b.holds());
            }
        }
        match &a.theorem {
            Some(t) if !t.unimodal => report.nonunimodal_examples.push(NonUnimodal {
                key: key.clone(),
                d: t.d,
                valleys: t.unimodality_violations.clone(),
                window: t.window,
            }),
            _ => report.unimodal_count += 1,
        }
    }
    report
}

/// Runs every check over all isomorphism classes with `1 <= |P| <= n_max`.
/// The report does not depend on `jobs`.
pub fn batch_verify(config: &BatchConfig) -> Result<BatchReport> {
    let outcomes = batch_outcomes(config)?;
    Ok(summarize(config.n_max, &outcomes))
}
