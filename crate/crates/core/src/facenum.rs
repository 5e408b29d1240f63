//! Exact f-, h- and g-vector algebra, the binomial basis vectors `b^i` and
//! their symmetrised sums, and peak analysis of integer sequences.
//!
//! Indices follow the usual conventions for a `(d-1)`-dimensional complex:
//! an f-vector holds `f_0..f_{d-1}` with `f_{-1} = 1` implied, and the
//! h-vector holds `h_0..h_d`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

static PASCAL: OnceLock<RwLock<Vec<Vec<BigInt>>>> = OnceLock::new();

/// `C(n, k)`, read from a shared Pascal triangle that grows on demand.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let table = PASCAL.get_or_init(|| RwLock::new(vec![vec![BigInt::one()]]));
    {
        let rows = table.read().unwrap();
        if let Some(row) = rows.get(n) {
            return row[k].clone();
        }
    }
    let mut rows = table.write().unwrap();
    while rows.len() <= n {
        let prev = rows.last().unwrap();
        let mut row = Vec::with_capacity(prev.len() + 1);
        row.push(BigInt::one());
        for w in prev.windows(2) {
            row.push(&w[0] + &w[1]);
        }
        row.push(BigInt::one());
        rows.push(row);
    }
    rows[n][k].clone()
}

/// Face numbers `f_0..f_{d-1}` of a `(d-1)`-dimensional complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector {
    f: Vec<BigInt>,
}

impl FVector {
    /// Rejects negative entries. `d` is the vector length; `d = 0` is the
    /// complex whose only face is the empty one.
    pub fn new(f: Vec<BigInt>) -> Result<Self> {
        if let Some(i) = f.iter().position(|x| x.is_negative()) {
            return Err(Error::range("f-vector entry index", i as i64, "non-negative entries"));
        }
        Ok(FVector { f })
    }

    pub fn from_u64(f: &[u64]) -> Self {
        FVector {
            f: f.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn d(&self) -> usize {
        self.f.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.f
    }

    /// `f_{k}` for `k >= -1`.
    pub fn get(&self, k: i64) -> BigInt {
        match k {
            -1 => BigInt::one(),
            k if k >= 0 && (k as usize) < self.f.len() => self.f[k as usize].clone(),
            _ => BigInt::zero(),
        }
    }
}

/// `h_0..h_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HVector {
    h: Vec<BigInt>,
}

impl HVector {
    pub fn new(h: Vec<BigInt>) -> Result<Self> {
        if h.is_empty() {
            return Err(Error::Empty("h-vector"));
        }
        Ok(HVector { h })
    }

    pub fn from_i64(h: &[i64]) -> Self {
        assert!(!h.is_empty(), "h-vector needs at least h_0");
        HVector {
            h: h.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn d(&self) -> usize {
        self.h.len() - 1
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.h
    }
}

/// `g_0..g_{floor(d/2)}` with `g_0 = h_0` and `g_i = h_i - h_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GVector {
    g: Vec<BigInt>,
}

impl GVector {
    pub fn entries(&self) -> &[BigInt] {
        &self.g
    }
}

/// h-vector from the f-vector:
/// `h_k = sum_{i<=k} (-1)^(k-i) C(d-i, k-i) f_{i-1}`.
pub fn f_to_h(f: &FVector) -> HVector {
    let d = f.d();
    let h = (0..=d)
        .map(|k| {
            (0..=k).fold(BigInt::zero(), |acc, i| {
                let term = binomial(d - i, k - i) * f.get(i as i64 - 1);
                if (k - i) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect();
    HVector { h }
}

/// f-vector from the h-vector: `f_k = sum_i h_i C(d-i, d-1-k)`.
///
/// Entries come out negative only for h-vectors that belong to no complex;
/// they are returned as computed.
pub fn h_to_f(h: &HVector) -> FVector {
    let d = h.d();
    let f = (0..d)
        .map(|k| {
            h.h.iter().enumerate().fold(BigInt::zero(), |acc, (i, hi)| {
                acc + hi * binomial(d - i, d - 1 - k)
            })
        })
        .collect();
    FVector { f }
}

pub fn g_vector(h: &HVector) -> GVector {
    let g = (0..=h.d() / 2)
        .map(|i| {
            if i == 0 {
                h.h[0].clone()
            } else {
                &h.h[i] - &h.h[i - 1]
            }
        })
        .collect();
    GVector { g }
}

/// `h_i = h_{d-i}` for every `i`.
pub fn dehn_sommerville_check(h: &HVector) -> bool {
    h.h.iter().eq(h.h.iter().rev())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// `b^i_k = C(i, d-1-k)`.
    Plain,
    /// `b^i + b^{d-i}`, or `b^{d/2}` when `2i = d`.
    Tilde,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisVector {
    pub kind: BasisKind,
    pub i: usize,
    pub d: usize,
    pub entries: Vec<BigInt>,
}

pub fn basis_vector(i: usize, d: usize) -> Result<BasisVector> {
    if d == 0 {
        return Err(Error::range("d", 0, "d >= 1"));
    }
    if i > d {
        return Err(Error::range("i", i as i64, format!("0..={d}")));
    }
    Ok(plain(i, d))
}

fn plain(i: usize, d: usize) -> BasisVector {
    BasisVector {
        kind: BasisKind::Plain,
        i,
        d,
        entries: (0..d).map(|k| binomial(i, d - 1 - k)).collect(),
    }
}

pub fn tilde_basis_vector(i: usize, d: usize) -> Result<BasisVector> {
    if d == 0 {
        return Err(Error::range("d", 0, "d >= 1"));
    }
    if i > d / 2 {
        return Err(Error::range("i", i as i64, format!("0..={}", d / 2)));
    }
    Ok(tilde(i, d))
}

fn tilde(i: usize, d: usize) -> BasisVector {
    let entries = if 2 * i == d {
        plain(i, d).entries
    } else {
        let (a, b) = (plain(i, d), plain(d - i, d));
        a.entries.iter().zip(&b.entries).map(|(x, y)| x + y).collect()
    };
    BasisVector {
        kind: BasisKind::Tilde,
        i,
        d,
        entries,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coefficient: BigInt,
    pub vector: BasisVector,
}

/// The f-vector written as
/// `sum_{i<=eps} (h_i - h_{d-i}) b^{d-i} + sum_{i<=delta} h_{d-i} b~^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub d: usize,
    pub terms: Vec<Term>,
    /// Set when some coefficient is negative, i.e. `h_i >= h_{d-i} >= 0`
    /// fails somewhere.
    pub has_negative_coefficient: bool,
}

impl Decomposition {
    /// Entrywise `sum coefficient * vector`.
    pub fn sum(&self) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); self.d];
        for term in &self.terms {
            for (slot, x) in acc.iter_mut().zip(&term.vector.entries) {
                *slot += &term.coefficient * x;
            }
        }
        acc
    }
}

pub fn decompose(h: &HVector) -> Decomposition {
    let d = h.d();
    let mut terms = Vec::new();
    if d >= 1 {
        let epsilon = (d - 1) / 2;
        let delta = d / 2;
        for i in 0..=epsilon {
            terms.push(Term {
                coefficient: &h.h[i] - &h.h[d - i],
                vector: plain(d - i, d),
            });
        }
        for i in 0..=delta {
            terms.push(Term {
                coefficient: h.h[d - i].clone(),
                vector: tilde(i, d),
            });
        }
    }
    let has_negative_coefficient = terms.iter().any(|t| t.coefficient.is_negative());
    Decomposition {
        d,
        terms,
        has_negative_coefficient,
    }
}

/// Result of [`peak_interval`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Peak {
    /// Weakly rising then weakly falling; `lo..=hi` is the plateau of the
    /// maximum.
    Unimodal { lo: usize, hi: usize },
    /// `index` is the first valley: an entry with strictly larger entries
    /// somewhere on both sides.
    NotUnimodal { index: usize },
}

/// Indices `j` with `v_i > v_j < v_k` for some `i < j < k`.
pub fn valleys<T: Ord>(v: &[T]) -> Vec<usize> {
    if v.len() < 3 {
        return Vec::new();
    }
    let mut suffix_max: Vec<&T> = Vec::with_capacity(v.len());
    for x in v.iter().rev() {
        let m = match suffix_max.last() {
            Some(&m) if m >= x => m,
            _ => x,
        };
        suffix_max.push(m);
    }
    suffix_max.reverse();
    let mut out = Vec::new();
    let mut prefix_max = &v[0];
    for j in 1..v.len() - 1 {
        if prefix_max > &v[j] && suffix_max[j + 1] > &v[j] {
            out.push(j);
        }
        if &v[j] > prefix_max {
            prefix_max = &v[j];
        }
    }
    out
}

pub fn peak_interval<T: Ord>(v: &[T]) -> Result<Peak> {
    let max = v.iter().max().ok_or(Error::Empty("sequence"))?;
    if let Some(&index) = valleys(v).first() {
        return Ok(Peak::NotUnimodal { index });
    }
    let lo = v.iter().position(|x| x == max).unwrap();
    let hi = v.iter().rposition(|x| x == max).unwrap();
    Ok(Peak::Unimodal { lo, hi })
}

/// `d - 1 - floor((d-i)/2)`, the index where `b^{d-i}` and `b~^i` peak.
pub fn predicted_peak(i: usize, d: usize) -> Result<usize> {
    if d == 0 || i > d {
        return Err(Error::range("i", i as i64, format!("0..=d with d >= 1, d = {d}")));
    }
    Ok(d - 1 - (d - i) / 2)
}

/// The same index by parity cases: `floor(d/2) + floor(i/2) - 1` when `d`
/// and `i` are both even, `floor(d/2) + floor(i/2)` otherwise.
pub fn predicted_peak_by_parity(i: usize, d: usize) -> Result<usize> {
    if d == 0 || i > d {
        return Err(Error::range("i", i as i64, format!("0..=d with d >= 1, d = {d}")));
    }
    let base = d / 2 + i / 2;
    Ok(if d.is_multiple_of(2) && i.is_multiple_of(2) { base - 1 } else { base })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowIndices {
    pub d: usize,
    /// `floor(d/2)`
    pub delta: usize,
    /// `floor((d-1)/2)`, last index of the strictly rising range.
    pub epsilon: usize,
    /// `floor(3(d-1)/4)`, first index of the strictly falling range.
    pub descent_start: usize,
    /// `[delta, delta + floor(delta/2)]`
    pub peak_window: (usize, usize),
}

pub fn window_indices(d: usize) -> Result<WindowIndices> {
    if d == 0 {
        return Err(Error::range("d", 0, "d >= 1"));
    }
    let delta = d / 2;
    Ok(WindowIndices {
        d,
        delta,
        epsilon: (d - 1) / 2,
        descent_start: 3 * (d - 1) / 4,
        peak_window: (delta, delta + delta / 2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn pascal_values() {
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(60, 30), "118264581564861424".parse::<BigInt>().unwrap());
    }

    #[test]
    fn simplex_has_trivial_h() {
        for d in 1..8 {
            let f = FVector::new((0..d).map(|k| binomial(d, k + 1)).collect()).unwrap();
            let mut expected = vec![0i64; d + 1];
            expected[0] = 1;
            assert_eq!(f_to_h(&f), HVector::from_i64(&expected));
        }
    }

    #[test]
    fn hexagon_and_path() {
        assert_eq!(f_to_h(&FVector::from_u64(&[6, 6])), HVector::from_i64(&[1, 4, 1]));
        assert_eq!(f_to_h(&FVector::from_u64(&[3, 2])), HVector::from_i64(&[1, 1, 0]));
        assert_eq!(h_to_f(&HVector::from_i64(&[1, 4, 1])), FVector::from_u64(&[6, 6]));
        assert_eq!(h_to_f(&HVector::from_i64(&[1, 1, 0])), FVector::from_u64(&[3, 2]));
    }

    #[test]
    fn trivial_h_gives_simplex() {
        let f = h_to_f(&HVector::from_i64(&[1, 0, 0, 0, 0]));
        assert_eq!(f, FVector::from_u64(&[4, 6, 4, 1]));
    }

    #[test]
    fn empty_complex() {
        let f = FVector::new(vec![]).unwrap();
        assert_eq!(f_to_h(&f), HVector::from_i64(&[1]));
        assert_eq!(h_to_f(&HVector::from_i64(&[1])).d(), 0);
        assert!(FVector::new(big(&[1, -1])).is_err());
    }

    #[test]
    fn g_vectors() {
        let g = |h: &[i64]| g_vector(&HVector::from_i64(h)).entries().to_vec();
        assert_eq!(g(&[1, 4, 1]), big(&[1, 3]));
        assert_eq!(g(&[1, 0]), big(&[1]));
        assert_eq!(g(&[1, 1]), big(&[1]));
    }

    #[test]
    fn dehn_sommerville() {
        assert!(dehn_sommerville_check(&HVector::from_i64(&[1, 4, 1])));
        assert!(!dehn_sommerville_check(&HVector::from_i64(&[1, 1, 0])));
        assert!(dehn_sommerville_check(&HVector::from_i64(&[1])));
    }

    #[test]
    fn basis_vectors() {
        assert_eq!(basis_vector(3, 3).unwrap().entries, big(&[3, 3, 1]));
        assert_eq!(basis_vector(1, 3).unwrap().entries, big(&[0, 1, 1]));
        assert_eq!(basis_vector(0, 2).unwrap().entries, big(&[0, 1]));
        assert!(basis_vector(4, 3).is_err());
        assert!(basis_vector(0, 0).is_err());
    }

    #[test]
    fn tilde_vectors() {
        assert_eq!(tilde_basis_vector(1, 3).unwrap().entries, big(&[1, 3, 2]));
        assert_eq!(tilde_basis_vector(1, 2).unwrap().entries, big(&[1, 1]));
        assert_eq!(tilde_basis_vector(0, 2).unwrap().entries, big(&[2, 2]));
        assert!(tilde_basis_vector(2, 3).is_err());
    }

    #[test]
    fn decomposition_of_path() {
        let dec = decompose(&HVector::from_i64(&[1, 1, 0]));
        let terms: Vec<(BigInt, Vec<BigInt>)> = dec
            .terms
            .iter()
            .map(|t| (t.coefficient.clone(), t.vector.entries.clone()))
            .collect();
        assert_eq!(
            terms,
            vec![
                (BigInt::from(1), big(&[2, 1])),
                (BigInt::from(0), big(&[2, 2])),
                (BigInt::from(1), big(&[1, 1])),
            ]
        );
        assert_eq!(dec.sum(), big(&[3, 2]));
        assert!(!dec.has_negative_coefficient);
    }

    #[test]
    fn decomposition_of_hexagon() {
        let dec = decompose(&HVector::from_i64(&[1, 4, 1]));
        let coefficients: Vec<BigInt> = dec.terms.iter().map(|t| t.coefficient.clone()).collect();
        assert_eq!(coefficients, big(&[0, 1, 4]));
        assert_eq!(dec.sum(), big(&[6, 6]));
    }

    #[test]
    fn decomposition_of_simplex() {
        for d in 1..10 {
            let mut h = vec![0i64; d + 1];
            h[0] = 1;
            let dec = decompose(&HVector::from_i64(&h));
            let nonzero: Vec<&Term> = dec.terms.iter().filter(|t| !t.coefficient.is_zero()).collect();
            assert_eq!(nonzero.len(), 1);
            assert_eq!(nonzero[0].vector.kind, BasisKind::Plain);
            assert_eq!(nonzero[0].vector.i, d);
            assert_eq!(dec.sum(), (0..d).map(|k| binomial(d, k + 1)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn negative_coefficients_are_flagged() {
        let dec = decompose(&HVector::from_i64(&[1, 0, 2]));
        assert!(dec.has_negative_coefficient);
        assert_eq!(dec.sum(), h_to_f(&HVector::from_i64(&[1, 0, 2])).entries().to_vec());
    }

    #[test]
    fn peaks() {
        assert_eq!(peak_interval(&[1, 3, 2]).unwrap(), Peak::Unimodal { lo: 1, hi: 1 });
        assert_eq!(peak_interval(&[3, 3, 1]).unwrap(), Peak::Unimodal { lo: 0, hi: 1 });
        assert_eq!(peak_interval(&[2, 1, 2]).unwrap(), Peak::NotUnimodal { index: 1 });
        assert_eq!(peak_interval(&[5]).unwrap(), Peak::Unimodal { lo: 0, hi: 0 });
        assert!(peak_interval::<i32>(&[]).is_err());
        assert_eq!(valleys(&[1, 5, 3, 4, 6, 2, 2, 3]), vec![2, 3, 5, 6]);
    }

    #[test]
    fn predicted_peaks() {
        assert_eq!(predicted_peak(1, 3).unwrap(), 1);
        assert_eq!(predicted_peak(0, 3).unwrap(), 1);
        assert_eq!(predicted_peak(3, 3).unwrap(), 2);
        assert!(predicted_peak(4, 3).is_err());
        for d in 1..=30 {
            for i in 0..=d {
                assert_eq!(predicted_peak(i, d).unwrap(), predicted_peak_by_parity(i, d).unwrap());
            }
        }
    }

    #[test]
    fn predicted_peak_at_i_equals_d() {
        // predicted_peak(i, d) locates b^{d-i}; for i = d that is b^0 = (0, ..., 0, 1).
        for d in 1..12 {
            let p = predicted_peak(d, d).unwrap();
            assert_eq!(p, d - 1);
            match peak_interval(&basis_vector(0, d).unwrap().entries).unwrap() {
                Peak::Unimodal { lo, hi } => assert!(lo <= p && p <= hi),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn windows() {
        let w = window_indices(5).unwrap();
        assert_eq!((w.delta, w.epsilon, w.descent_start, w.peak_window), (2, 2, 3, (2, 3)));
        let w = window_indices(2).unwrap();
        assert_eq!((w.delta, w.epsilon, w.descent_start), (1, 0, 0));
        let w = window_indices(4).unwrap();
        assert_eq!((w.delta, w.epsilon, w.descent_start, w.peak_window), (2, 1, 2, (2, 3)));
        assert!(window_indices(0).is_err());
    }
}
