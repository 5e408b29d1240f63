//! Explicit simplicial complexes, used as a brute-force reference for the
//! chain counts computed in [`crate::lattice`].
//!
//! Everything here enumerates faces outright and is gated to small inputs.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::facenum::FVector;
use crate::poset::Poset;

/// Faces are `u128` vertex masks.
pub const VERTEX_LIMIT: usize = 128;
pub const FACET_LIMIT: usize = 10_000;
/// Largest facet dimension (facet size minus one).
pub const DIMENSION_LIMIT: usize = 12;

/// A simplicial complex given by its facets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    /// Sorted, pairwise incomparable under inclusion.
    facets: Vec<u128>,
}

impl SimplicialComplex {
    /// Validates vertex range and that no facet contains another.
    pub fn new(vertices: usize, mut facets: Vec<u128>) -> Result<Self> {
        if vertices > VERTEX_LIMIT {
            return Err(Error::size("vertex count", VERTEX_LIMIT, vertices));
        }
        if facets.len() > FACET_LIMIT {
            return Err(Error::size("facet count", FACET_LIMIT, facets.len()));
        }
        let all = if vertices == VERTEX_LIMIT {
            u128::MAX
        } else {
            (1u128 << vertices) - 1
        };
        facets.sort_unstable();
        facets.dedup();
        for (i, &a) in facets.iter().enumerate() {
            if a & !all != 0 {
                return Err(Error::Relation(format!(
                    "facet {i} uses a vertex outside 0..{vertices}"
                )));
            }
            if facets.iter().any(|&b| b != a && a & !b == 0) {
                return Err(Error::Relation(format!("facet {i} is contained in another facet")));
            }
        }
        Ok(SimplicialComplex { vertices, facets })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn facets(&self) -> &[u128] {
        &self.facets
    }

    /// `(min, max)` facet cardinality, `None` without facets.
    fn facet_sizes(&self) -> Option<(usize, usize)> {
        let sizes = self.facets.iter().map(|f| f.count_ones() as usize);
        Some((sizes.clone().min()?, sizes.max()?))
    }

    pub fn is_pure(&self) -> bool {
        self.facet_sizes().is_none_or(|(lo, hi)| lo == hi)
    }

    /// Dimension of the largest facet; `-1` for the complex with no facets.
    pub fn dimension(&self) -> i64 {
        self.facet_sizes().map_or(-1, |(_, hi)| hi as i64 - 1)
    }
}

/// The order complex: facets are the maximal chains of `poset`.
pub fn order_complex(poset: &Poset) -> Result<SimplicialComplex> {
    let n = poset.len();
    if n == 0 {
        return Err(Error::Empty("poset"));
    }
    if n > VERTEX_LIMIT {
        return Err(Error::size("vertex count", VERTEX_LIMIT, n));
    }
    let upper_covers: Vec<Vec<usize>> = (0..n)
        .map(|x| poset.up_set(x).filter(|&y| poset.covers(x, y)).collect())
        .collect();
    let mut facets = Vec::new();
    let mut stack: Vec<(usize, u128)> = poset.minimal_elements().map(|x| (x, 1u128 << x)).collect();
    while let Some((x, chain)) = stack.pop() {
        if upper_covers[x].is_empty() {
            if facets.len() == FACET_LIMIT {
                return Err(Error::size("facet count", FACET_LIMIT, FACET_LIMIT + 1));
            }
            facets.push(chain);
            continue;
        }
        for &y in &upper_covers[x] {
            stack.push((y, chain | 1u128 << y));
        }
    }
    facets.sort_unstable();
    Ok(SimplicialComplex {
        vertices: n,
        facets,
    })
}

fn mask_bits(mask: u128) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(b)
    })
}

/// Counts every nonempty face by enumerating all subsets of all facets.
pub fn f_vector_bruteforce(complex: &SimplicialComplex) -> Result<FVector> {
    let d = complex.facet_sizes().map_or(0, |(_, hi)| hi);
    if d > DIMENSION_LIMIT + 1 {
        return Err(Error::size("facet dimension", DIMENSION_LIMIT, d - 1));
    }
    let mut faces: HashSet<u128> = HashSet::new();
    for &facet in &complex.facets {
        let verts: Vec<usize> = mask_bits(facet).collect();
        for sub in 1u32..(1 << verts.len()) {
            let face = mask_bits(sub as u128).fold(0u128, |m, i| m | 1u128 << verts[i]);
            faces.insert(face);
        }
    }
    let mut f = vec![0u64; d];
    for face in faces {
        f[face.count_ones() as usize - 1] += 1;
    }
    Ok(FVector::from_u64(&f))
}

/// Facets of the boundary: ridges lying in exactly one facet.
pub fn boundary_complex(complex: &SimplicialComplex) -> Result<SimplicialComplex> {
    let (lo, hi) = complex
        .facet_sizes()
        .ok_or(Error::Empty("complex"))?;
    if lo != hi {
        return Err(Error::Purity { min: lo, max: hi });
    }
    if hi < 2 {
        return Err(Error::Dimension(format!(
            "boundary needs dimension >= 1, complex has dimension {}",
            hi as i64 - 1
        )));
    }
    let mut ridge_count: HashMap<u128, usize> = HashMap::new();
    for &facet in &complex.facets {
        for v in mask_bits(facet) {
            *ridge_count.entry(facet & !(1u128 << v)).or_default() += 1;
        }
    }
    let mut facets: Vec<u128> = ridge_count
        .into_iter()
        .filter(|&(_, count)| count == 1)
        .map(|(ridge, _)| ridge)
        .collect();
    facets.sort_unstable();
    Ok(SimplicialComplex {
        vertices: complex.vertices,
        facets,
    })
}

/// `-1 + f_0 - f_1 + f_2 - ...`
pub fn reduced_euler(f: &FVector) -> BigInt {
    f.entries()
        .iter()
        .enumerate()
        .fold(-BigInt::one(), |acc, (i, x)| {
            if i % 2 == 0 {
                acc + x
            } else {
                acc - x
            }
        })
}

/// Whether an order complex with this many vertices and facets of the given
/// size can be handed to the oracle functions above.
pub fn within_oracle_gates(vertices: usize, facets: &BigInt, facet_size: usize) -> bool {
    vertices <= VERTEX_LIMIT
        && !facets.is_zero()
        && *facets <= BigInt::from(FACET_LIMIT)
        && facet_size <= DIMENSION_LIMIT + 1
}
