//! Serialisable mirrors of the core results.
//!
//! Integers that fit in 64 bits are written as JSON numbers, larger ones as
//! decimal strings. Both forms are accepted on input.

use std::fmt;

use birkhoff_core::facenum::{BasisKind, Decomposition, WindowIndices};
use birkhoff_core::verify::{
    BatchReport, BoundaryRelation, LatticeAnalysis, NonUnimodal, OracleOutcome, Reproducer,
    TheoremReport, TheoremVerdict, ViolationKind,
};
use birkhoff_core::{BigInt, BigUint, Poset};
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision integer with the number-or-string JSON encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Self {
        Int(v.clone())
    }
}

impl From<&BigUint> for Int {
    fn from(v: &BigUint) -> Self {
        Int(v.clone().into())
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => match self.0.to_u64() {
                Some(v) => s.serialize_u64(v),
                None => s.serialize_str(&self.0.to_string()),
            },
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = Int;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                v.parse::<BigInt>().map(Int).map_err(E::custom)
            }
        }

        d.deserialize_any(IntVisitor)
    }
}

fn ints<'a, T: 'a>(v: impl IntoIterator<Item = &'a T>) -> Vec<Int>
where
    Int: From<&'a T>,
{
    v.into_iter().map(Int::from).collect()
}

/// Structured poset input and output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetDoc {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
}

impl From<&Poset> for PosetDoc {
    fn from(p: &Poset) -> Self {
        PosetDoc {
            n: p.len(),
            covers: p.cover_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub ideal_count: usize,
    pub d: i64,
    pub boolean: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowDoc {
    pub d: usize,
    pub delta: usize,
    pub epsilon: usize,
    pub descent_start: usize,
    pub peak_window: [usize; 2],
}

impl From<&WindowIndices> for WindowDoc {
    fn from(w: &WindowIndices) -> Self {
        WindowDoc {
            d: w.d,
            delta: w.delta,
            epsilon: w.epsilon,
            descent_start: w.descent_start,
            peak_window: [w.peak_window.0, w.peak_window.1],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationDoc {
    pub index: usize,
    pub kind: String,
}

fn violation_kind(kind: ViolationKind) -> String {
    match kind {
        ViolationKind::AscendFail => "ascend-fail",
        ViolationKind::DescendFail => "descend-fail",
    }
    .to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremDoc {
    pub d: usize,
    pub ascending_ok: bool,
    pub descending_ok: bool,
    pub violations: Vec<ViolationDoc>,
    pub unimodal: bool,
    pub unimodality_violations: Vec<usize>,
    pub falsification: bool,
    pub verdict: String,
}

pub fn verdict_name(v: TheoremVerdict) -> &'static str {
    match v {
        TheoremVerdict::Vacuous => "vacuous",
        TheoremVerdict::Pass => "pass",
        TheoremVerdict::Falsified => "falsified",
        TheoremVerdict::Informational { holds: true } => "informational-holds",
        TheoremVerdict::Informational { holds: false } => "informational-fails",
    }
}

impl TheoremDoc {
    fn new(t: &TheoremReport, verdict: TheoremVerdict) -> Self {
        TheoremDoc {
            d: t.d,
            ascending_ok: t.ascending_ok,
            descending_ok: t.descending_ok,
            violations: t
                .violations
                .iter()
                .map(|v| ViolationDoc {
                    index: v.index,
                    kind: violation_kind(v.kind),
                })
                .collect(),
            unimodal: t.unimodal,
            unimodality_violations: t.unimodality_violations.clone(),
            falsification: t.falsification,
            verdict: verdict_name(verdict).to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryDoc {
    pub boundary_f_vector: Vec<Int>,
    pub h_differences: Vec<Int>,
    pub boundary_g_vector: Vec<Int>,
    pub holds: bool,
}

impl From<&BoundaryRelation> for BoundaryDoc {
    fn from(b: &BoundaryRelation) -> Self {
        BoundaryDoc {
            boundary_f_vector: ints(b.boundary_f.entries()),
            h_differences: ints(&b.h_differences),
            boundary_g_vector: ints(&b.boundary_g),
            holds: b.holds(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDoc {
    pub f_vector_bruteforce: Vec<Int>,
    pub matches: bool,
    pub pure: bool,
    pub boundary: Option<BoundaryDoc>,
}

impl From<&OracleOutcome> for OracleDoc {
    fn from(o: &OracleOutcome) -> Self {
        OracleDoc {
            f_vector_bruteforce: ints(o.f_bruteforce.entries()),
            matches: o.matches,
            pure: o.pure,
            boundary: o.boundary.as_ref().map(BoundaryDoc::from),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    /// `b` or `b~`
    pub basis: String,
    pub i: usize,
    pub coefficient: Int,
    pub vector: Vec<Int>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub terms: Vec<TermDoc>,
    pub sum: Vec<Int>,
    pub has_negative_coefficient: bool,
}

impl From<&Decomposition> for DecompositionDoc {
    fn from(dec: &Decomposition) -> Self {
        DecompositionDoc {
            terms: dec
                .terms
                .iter()
                .map(|t| TermDoc {
                    basis: match t.vector.kind {
                        BasisKind::Plain => "b",
                        BasisKind::Tilde => "b~",
                    }
                    .to_string(),
                    i: t.vector.i,
                    coefficient: Int::from(&t.coefficient),
                    vector: ints(&t.vector.entries),
                })
                .collect(),
            sum: ints(&dec.sum()),
            has_negative_coefficient: dec.has_negative_coefficient,
        }
    }
}

/// Everything `analyze` reports about one poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisDocument {
    pub poset: PosetDoc,
    pub lattice: LatticeDoc,
    pub c_vector: Vec<Int>,
    pub f_vector: Vec<Int>,
    pub h_vector: Vec<Int>,
    pub g_vector: Vec<Int>,
    pub dehn_sommerville: bool,
    pub window: Option<WindowDoc>,
    pub theorem: Option<TheoremDoc>,
    pub prop4: bool,
    pub oracle: Option<OracleDoc>,
    pub decomposition: Option<DecompositionDoc>,
}

impl AnalysisDocument {
    pub fn new(poset: &Poset, a: &LatticeAnalysis, decomposition: Option<&Decomposition>) -> Self {
        let h_vector = a.h.as_ref().map(|h| ints(h.entries())).unwrap_or_default();
        let g_vector = a
            .h
            .as_ref()
            .map(|h| ints(birkhoff_core::facenum::g_vector(h).entries()))
            .unwrap_or_default();
        AnalysisDocument {
            poset: PosetDoc::from(poset),
            lattice: LatticeDoc {
                ideal_count: a.ideal_count,
                d: a.d,
                boolean: a.boolean,
            },
            c_vector: a.chains.as_ref().map(|c| ints(c.counts())).unwrap_or_default(),
            f_vector: a.f.as_ref().map(|f| ints(f.entries())).unwrap_or_default(),
            h_vector,
            g_vector,
            dehn_sommerville: a.dehn_sommerville,
            window: a.theorem.as_ref().map(|t| WindowDoc::from(&t.window)),
            theorem: a.theorem.as_ref().map(|t| TheoremDoc::new(t, a.verdict)),
            prop4: a.prop4,
            oracle: a.oracle.as_ref().map(OracleDoc::from),
            decomposition: decomposition.map(DecompositionDoc::from),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproducerDoc {
    pub key: String,
    pub poset: PosetDoc,
    pub d: usize,
    pub c_vector: Vec<Int>,
    pub violations: Vec<ViolationDoc>,
    pub exceeds_simplex: bool,
}

impl ReproducerDoc {
    fn new(r: &Reproducer) -> Self {
        ReproducerDoc {
            key: r.key.to_hex(),
            poset: PosetDoc {
                n: r.d + 1,
                covers: r.covers.iter().map(|&(a, b)| [a, b]).collect(),
            },
            d: r.d,
            c_vector: ints(&r.chains),
            violations: r
                .violations
                .iter()
                .map(|v| ViolationDoc {
                    index: v.index,
                    kind: violation_kind(v.kind),
                })
                .collect(),
            exceeds_simplex: r.exceeds_simplex,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonUnimodalDoc {
    pub key: String,
    pub d: usize,
    pub valleys: Vec<usize>,
    pub epsilon: usize,
    pub descent_start: usize,
}

impl From<&NonUnimodal> for NonUnimodalDoc {
    fn from(x: &NonUnimodal) -> Self {
        NonUnimodalDoc {
            key: x.key.to_hex(),
            d: x.d,
            valleys: x.valleys.clone(),
            epsilon: x.window.epsilon,
            descent_start: x.window.descent_start,
        }
    }
}

/// Everything `verify` reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchDocument {
    pub n_max: usize,
    pub posets_tested: usize,
    pub classes_per_n: Vec<usize>,
    pub lattices_boolean: usize,
    pub lattices_nonboolean: usize,
    pub simplex_lattices: usize,
    pub theorem_passes: usize,
    pub theorem_informational: usize,
    pub falsifications: usize,
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
    pub nonunimodal_examples: Vec<NonUnimodalDoc>,
    pub reproducers: Vec<ReproducerDoc>,
}

impl From<&BatchReport> for BatchDocument {
    fn from(r: &BatchReport) -> Self {
        BatchDocument {
            n_max: r.n_max,
            posets_tested: r.posets_tested,
            classes_per_n: r.classes_per_n.clone(),
            lattices_boolean: r.lattices_boolean,
            lattices_nonboolean: r.lattices_nonboolean,
            simplex_lattices: r.simplex_lattices,
            theorem_passes: r.theorem_passes,
            theorem_informational: r.theorem_informational,
            falsifications: r.falsifications,
            falsifications_exceeding_simplex: r.falsifications_exceeding_simplex,
            prop4_failures: r.prop4_failures,
            prop2_failures: r.prop2_failures,
            prop2_failures_exceeding_simplex: r.prop2_failures_exceeding_simplex,
            dichotomy_failures: r.dichotomy_failures,
            euler_failures: r.euler_failures,
            decomposition_failures: r.decomposition_failures,
            oracle_checked: r.oracle_checked,
            oracle_mismatches: r.oracle_mismatches,
            purity_failures: r.purity_failures,
            boundary_checked: r.boundary_checked,
            boundary_failures: r.boundary_failures,
            unimodal_count: r.unimodal_count,
            nonunimodal_examples: r.nonunimodal_examples.iter().map(NonUnimodalDoc::from).collect(),
            reproducers: r.reproducers.iter().map(ReproducerDoc::new).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ints_are_numbers() {
        assert_eq!(serde_json::to_string(&Int(BigInt::from(-7))).unwrap(), "-7");
        assert_eq!(
            serde_json::to_string(&Int(BigInt::from(u64::MAX))).unwrap(),
            u64::MAX.to_string()
        );
    }

    #[test]
    fn huge_ints_are_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let text = serde_json::to_string(&Int(big.clone())).unwrap();
        assert_eq!(text, "\"123456789012345678901234567890\"");
        assert_eq!(serde_json::from_str::<Int>(&text).unwrap(), Int(big));
        assert_eq!(serde_json::from_str::<Int>("42").unwrap(), Int(42.into()));
        assert!(serde_json::from_str::<Int>("\"x\"").is_err());
    }
}
