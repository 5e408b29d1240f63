//! The distributive lattice `J(P)` of order ideals, its proper part, and
//! chain counting on finite posets.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::facenum::FVector;
use crate::poset::Poset;

/// Ground sets are stored as `u64` masks.
pub const GROUND_LIMIT: usize = 64;

/// Largest ideal count [`ideal_lattice`] will materialise. The proper part
/// is stored as a dense relation matrix, so this bounds its memory.
pub const IDEAL_LIMIT: usize = 1 << 13;

/// Order ideals of a poset, ordered by inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealLattice {
    ground: Poset,
    /// Sorted by `(cardinality, mask)`; first is the empty ideal, last the
    /// whole ground set.
    ideals: Vec<u64>,
}

impl IdealLattice {
    pub fn ground(&self) -> &Poset {
        &self.ground
    }

    pub fn ideals(&self) -> &[u64] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    /// `d` such that the lattice has length `d + 1`; `-1` for `J(∅)`.
    pub fn d(&self) -> i64 {
        self.ground.len() as i64 - 1
    }
}

/// Builds `J(P)` by breadth-first search from the empty ideal, adding one
/// minimal element of the complement at a time.
pub fn ideal_lattice(poset: &Poset) -> Result<IdealLattice> {
    let n = poset.len();
    if n > GROUND_LIMIT {
        return Err(Error::size("ground poset size", GROUND_LIMIT, n));
    }
    let below: Vec<u64> = (0..n)
        .map(|x| poset.down_set(x).fold(0u64, |m, y| m | 1 << y))
        .collect();
    let mut seen = HashSet::from([0u64]);
    let mut queue = VecDeque::from([0u64]);
    while let Some(ideal) = queue.pop_front() {
        for (x, &under) in below.iter().enumerate() {
            if ideal >> x & 1 == 0 && under & !ideal == 0 {
                let next = ideal | 1 << x;
                if seen.insert(next) {
                    if seen.len() > IDEAL_LIMIT {
                        return Err(Error::size("ideal count", IDEAL_LIMIT, seen.len()));
                    }
                    queue.push_back(next);
                }
            }
        }
    }
    let mut ideals: Vec<u64> = seen.into_iter().collect();
    ideals.sort_by_key(|&m| (m.count_ones(), m));
    Ok(IdealLattice {
        ground: poset.clone(),
        ideals,
    })
}

/// The lattice minus its bottom and top, as a poset under strict inclusion.
/// Element `j` is `L.ideals()[j + 1]`.
pub fn proper_part(lattice: &IdealLattice) -> Poset {
    let m = lattice.ideals.len();
    if m <= 2 {
        return Poset::empty();
    }
    let inner = &lattice.ideals[1..m - 1];
    Poset::from_fn_unchecked(inner.len(), |a, b| {
        inner[a] != inner[b] && inner[a] & !inner[b] == 0
    })
}

/// Length of a longest chain of ideals.
pub fn lattice_length(lattice: &IdealLattice) -> usize {
    let index: HashMap<u64, usize> = lattice
        .ideals
        .iter()
        .enumerate()
        .map(|(i, &m)| (m, i))
        .collect();
    let mut longest = vec![0usize; lattice.ideals.len()];
    for (i, &ideal) in lattice.ideals.iter().enumerate() {
        // Lower covers of an ideal remove a single element.
        longest[i] = crate::poset::bits(&[ideal])
            .filter_map(|x| index.get(&(ideal & !(1 << x))))
            .map(|&j| longest[j] + 1)
            .max()
            .unwrap_or(0);
    }
    longest.into_iter().max().unwrap_or(0)
}

/// True iff `J(P)` is the Boolean lattice on `P`, i.e. `P` is an antichain.
pub fn is_boolean(lattice: &IdealLattice) -> bool {
    let n = lattice.ground.len();
    lattice.ground.is_antichain() && (n >= 64 || lattice.ideals.len() == 1usize << n)
}

/// Chain counts `c_0..c_{d-1}`, `c_i` being the number of chains with
/// `i + 1` elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainVector {
    d: usize,
    c: Vec<BigUint>,
}

impl ChainVector {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.c
    }

    pub fn to_f_vector(&self) -> FVector {
        FVector::new(self.c.iter().map(|x| x.clone().into()).collect())
            .expect("chain counts are non-negative")
    }

    /// Builds a chain vector from raw counts, e.g. to probe the theorem
    /// checker with hand-made input.
    pub fn from_counts(c: Vec<BigUint>) -> Result<Self> {
        if let Some(last) = c.last() {
            if last.is_zero() {
                return Err(Error::Dimension("top chain count must be positive".into()));
            }
        }
        Ok(ChainVector { d: c.len(), c })
    }

    pub fn from_u64(c: &[u64]) -> Result<Self> {
        Self::from_counts(c.iter().map(|&x| BigUint::from(x)).collect())
    }
}

/// Counts chains of `poset` by length, requiring its longest chain to have
/// exactly `d` elements.
///
/// With `N_0(x) = 1` and `N_k(x) = sum_{y < x} N_{k-1}(y)`, `N_k(x)` counts
/// chains of `k + 1` elements topped by `x`; elements are visited in a
/// linear extension so every `N(y)` is final when `x` reads it.
pub fn chain_vector(poset: &Poset, d: usize) -> Result<ChainVector> {
    if d == 0 {
        return if poset.is_empty() {
            Ok(ChainVector { d: 0, c: Vec::new() })
        } else {
            Err(Error::Dimension(format!(
                "d = 0 requires the empty poset, got {} elements",
                poset.len()
            )))
        };
    }
    let n = poset.len();
    // One extra level detects chains longer than d.
    let mut table: Vec<Vec<BigUint>> = vec![Vec::new(); n];
    for x in poset.topological_order() {
        let mut row = vec![BigUint::zero(); d + 1];
        row[0] = BigUint::one();
        for y in poset.down_set(x) {
            let lower = &table[y];
            for k in 1..=d {
                row[k] += &lower[k - 1];
            }
        }
        table[x] = row;
    }
    let mut c = vec![BigUint::zero(); d + 1];
    for row in &table {
        for (slot, v) in c.iter_mut().zip(row) {
            *slot += v;
        }
    }
    if !c[d].is_zero() {
        return Err(Error::Dimension(format!(
            "poset has a chain with more than {d} elements"
        )));
    }
    c.truncate(d);
    if c[d - 1].is_zero() {
        return Err(Error::Dimension(format!("poset has no chain with {d} elements")));
    }
    Ok(ChainVector { d, c })
}
