//! Finite strict partial orders stored as bit-rows, with isomorphism-invariant
//! canonical keys and exhaustive enumeration of isomorphism classes.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest element count accepted by [`Poset::canonical_key`].
pub const CANONICAL_LIMIT: usize = 8;

/// Largest element count accepted by [`enumerate_posets`].
pub const ENUMERATION_LIMIT: usize = 8;

/// A strict partial order on the elements `0..n`.
///
/// Both the up-sets and the down-sets are kept as packed bit-rows so that
/// either direction of the relation can be scanned without a transpose.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    words: usize,
    /// Row `x` has bit `y` set iff `x < y`.
    up: Vec<u64>,
    /// Row `x` has bit `y` set iff `y < x`.
    down: Vec<u64>,
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

pub(crate) fn bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * 64 + b)
        })
    })
}

impl Poset {
    /// The empty poset.
    pub fn empty() -> Self {
        Poset {
            n: 0,
            words: 0,
            up: Vec::new(),
            down: Vec::new(),
        }
    }

    /// An antichain on `n` elements.
    pub fn antichain(n: usize) -> Self {
        let words = words_for(n);
        Poset {
            n,
            words,
            up: vec![0; n * words],
            down: vec![0; n * words],
        }
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Self::from_fn_unchecked(n, |x, y| x < y)
    }

    /// Builds the transitive closure of `covers`.
    ///
    /// Pairs need not be cover relations; any generating set of the order is
    /// accepted. Fails with [`Error::Cycle`] if the closure is not
    /// antisymmetric.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let words = words_for(n);
        let mut up = vec![0u64; n * words];
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::Relation(format!(
                    "pair ({a}, {b}) references an element outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::Relation(format!("pair ({a}, {a}) is reflexive")));
            }
            up[a * words + b / 64] |= 1 << (b % 64);
        }

        // Warshall closure over bit-rows.
        let mut pivot = vec![0u64; words];
        for k in 0..n {
            pivot.copy_from_slice(&up[k * words..(k + 1) * words]);
            for i in 0..n {
                if up[i * words + k / 64] >> (k % 64) & 1 == 1 {
                    for (dst, src) in up[i * words..(i + 1) * words].iter_mut().zip(&pivot) {
                        *dst |= *src;
                    }
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| up[x * words + x / 64] >> (x % 64) & 1 == 1) {
            return Err(Error::Cycle { element: x });
        }
        Ok(Self::from_up_rows(n, up))
    }

    /// Builds a poset from an explicit strict-order predicate and validates
    /// irreflexivity, antisymmetry and transitivity.
    pub fn from_relation(n: usize, lt: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let p = Self::from_fn_unchecked(n, lt);
        for x in 0..n {
            if p.lt(x, x) {
                return Err(Error::Relation(format!("{x} < {x}")));
            }
            for y in p.up_set(x) {
                if p.lt(y, x) {
                    return Err(Error::Relation(format!("{x} < {y} and {y} < {x}")));
                }
                for z in p.up_set(y) {
                    if !p.lt(x, z) {
                        return Err(Error::Relation(format!(
                            "{x} < {y} < {z} but not {x} < {z}"
                        )));
                    }
                }
            }
        }
        Ok(p)
    }

    pub(crate) fn from_fn_unchecked(n: usize, lt: impl Fn(usize, usize) -> bool) -> Self {
        let words = words_for(n);
        let mut up = vec![0u64; n * words];
        for x in 0..n {
            for y in 0..n {
                if lt(x, y) {
                    up[x * words + y / 64] |= 1 << (y % 64);
                }
            }
        }
        Self::from_up_rows(n, up)
    }

    fn from_up_rows(n: usize, up: Vec<u64>) -> Self {
        let words = words_for(n);
        let mut down = vec![0u64; n * words];
        for x in 0..n {
            for y in bits(&up[x * words..(x + 1) * words]) {
                down[y * words + x / 64] |= 1 << (x % 64);
            }
        }
        Poset { n, words, up, down }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `x < y`.
    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.up[x * self.words + y / 64] >> (y % 64) & 1 == 1
    }

    pub(crate) fn up_row(&self, x: usize) -> &[u64] {
        &self.up[x * self.words..(x + 1) * self.words]
    }

    pub(crate) fn down_row(&self, x: usize) -> &[u64] {
        &self.down[x * self.words..(x + 1) * self.words]
    }

    /// Elements strictly above `x`.
    pub fn up_set(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.up_row(x))
    }

    /// Elements strictly below `x`.
    pub fn down_set(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.down_row(x))
    }

    pub fn up_count(&self, x: usize) -> usize {
        self.up_row(x).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn down_count(&self, x: usize) -> usize {
        self.down_row(x).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// True iff no two elements are comparable.
    pub fn is_antichain(&self) -> bool {
        self.up.iter().all(|&w| w == 0)
    }

    /// `x` is covered by `y`: `x < y` with nothing strictly between.
    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.lt(x, y)
            && self
                .up_row(x)
                .iter()
                .zip(self.down_row(y))
                .all(|(a, b)| a & b == 0)
    }

    /// All cover pairs `(x, y)` in lexicographic order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|x| self.up_set(x).map(move |y| (x, y)))
            .filter(|&(x, y)| self.covers(x, y))
            .collect()
    }

    pub fn minimal_elements(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&x| self.down_row(x).iter().all(|&w| w == 0))
    }

    /// A linear extension: elements ordered by the size of their down-set.
    pub fn topological_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&x| (self.down_count(x), x));
        order
    }

    /// Number of elements in a longest chain.
    pub fn height(&self) -> usize {
        let mut longest = vec![0usize; self.n];
        for x in self.topological_order() {
            longest[x] = 1 + self.down_set(x).map(|y| longest[y]).max().unwrap_or(0);
        }
        longest.into_iter().max().unwrap_or(0)
    }

    /// Relabels so that new element `p` is old element `perm[p]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::Relation(format!(
                "permutation has length {}, poset has {} elements",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Relation(format!("{perm:?} is not a permutation")));
            }
        }
        Ok(self.relabel_unchecked(perm))
    }

    fn relabel_unchecked(&self, perm: &[usize]) -> Self {
        Self::from_fn_unchecked(self.n, |p, q| self.lt(perm[p], perm[q]))
    }

    /// Returns a copy with one new element placed directly above the
    /// down-closed set `below` (given as a bit mask).
    pub(crate) fn extend_above(&self, below: u64) -> Self {
        let n = self.n;
        Self::from_fn_unchecked(n + 1, |x, y| {
            if y == n {
                x < n && below >> x & 1 == 1
            } else if x == n {
                false
            } else {
                self.lt(x, y)
            }
        })
    }

    /// True iff the set encoded by `mask` is downward closed.
    pub(crate) fn is_down_closed(&self, mask: u64) -> bool {
        debug_assert!(self.n <= 64);
        bits(&[mask]).all(|x| {
            self.down_row(x)
                .first()
                .is_none_or(|&below| below & !mask == 0)
        })
    }

    /// Canonical key; see [`Poset::canonical_form`].
    pub fn canonical_key(&self) -> Result<CanonicalKey> {
        self.canonical_form().map(|(key, _)| key)
    }

    /// Returns the canonical key together with the relabeled representative
    /// whose row-major relation matrix realises it.
    ///
    /// The key is the lexicographically smallest row-major encoding of the
    /// relation matrix over all relabelings that list elements in ascending
    /// `(down-set size, up-set size)` order. Those signatures are invariant
    /// under isomorphism, so the set of admissible encodings depends only on
    /// the isomorphism class, and equal keys mean equal matrices.
    pub fn canonical_form(&self) -> Result<(CanonicalKey, Poset)> {
        let n = self.n;
        if n > CANONICAL_LIMIT {
            return Err(Error::size("poset size for canonicalization", CANONICAL_LIMIT, n));
        }
        let mut order: Vec<usize> = (0..n).collect();
        let signature = |x: usize| (self.down_count(x), self.up_count(x));
        order.sort_by_key(|&x| signature(x));
        // cell_end[p]: one past the last position sharing p's signature.
        let mut cell_start = vec![0usize; n];
        let mut cell_end = vec![0usize; n];
        let mut p = 0;
        while p < n {
            let mut q = p;
            while q < n && signature(order[q]) == signature(order[p]) {
                q += 1;
            }
            for r in p..q {
                cell_start[r] = p;
                cell_end[r] = q;
            }
            p = q;
        }

        let mut search = CanonicalSearch {
            poset: self,
            order: &order,
            cell_start: &cell_start,
            cell_end: &cell_end,
            perm: vec![0; n],
            used: vec![false; n],
            best: u64::MAX,
            best_perm: order.clone(),
        };
        if n > 0 {
            search.fill(0);
        } else {
            search.best = 0;
        }
        let key = CanonicalKey::from_encoding(n, search.best);
        let rep = self.relabel_unchecked(&search.best_perm);
        Ok((key, rep))
    }
}

struct CanonicalSearch<'a> {
    poset: &'a Poset,
    order: &'a [usize],
    cell_start: &'a [usize],
    cell_end: &'a [usize],
    perm: Vec<usize>,
    used: Vec<bool>,
    best: u64,
    best_perm: Vec<usize>,
}

impl CanonicalSearch<'_> {
    fn fill(&mut self, pos: usize) {
        let n = self.poset.n;
        if pos == n {
            let code = encode(self.poset, &self.perm);
            if code < self.best {
                self.best = code;
                self.best_perm.copy_from_slice(&self.perm);
            }
            return;
        }
        for slot in self.cell_start[pos]..self.cell_end[pos] {
            let x = self.order[slot];
            if self.used[x] {
                continue;
            }
            self.used[x] = true;
            self.perm[pos] = x;
            self.fill(pos + 1);
            self.used[x] = false;
        }
    }
}

/// Row-major relation matrix of the relabeled poset, first bit most
/// significant, so that integer order equals lexicographic order.
fn encode(poset: &Poset, perm: &[usize]) -> u64 {
    let n = poset.n;
    let mut code = 0u64;
    for (p, &x) in perm.iter().enumerate() {
        for (q, &y) in perm.iter().enumerate() {
            if poset.lt(x, y) {
                code |= 1 << (63 - (p * n + q));
            }
        }
    }
    code
}

/// Byte-string identifying a poset up to isomorphism: the element count
/// followed by the minimal relation-matrix bit string.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    fn from_encoding(n: usize, code: u64) -> Self {
        let len = (n * n).div_ceil(8);
        let mut bytes = Vec::with_capacity(1 + len);
        bytes.push(n as u8);
        bytes.extend_from_slice(&code.to_be_bytes()[..len]);
        CanonicalKey(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.n)
            .field("covers", &self.cover_pairs())
            .finish()
    }
}

/// One representative per isomorphism class of posets on `n` elements,
/// sorted by canonical key.
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>> {
    Ok(enumerate_classes(n)?.into_iter().map(|(_, p)| p).collect())
}

/// Like [`enumerate_posets`], keeping the canonical keys.
///
/// Every poset on `m` elements is obtained from one on `m - 1` elements by
/// adding a maximal element above some order ideal, so each level extends
/// the representatives of the previous one and deduplicates by key.
pub fn enumerate_classes(n: usize) -> Result<Vec<(CanonicalKey, Poset)>> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::size("poset size for enumeration", ENUMERATION_LIMIT, n));
    }
    let mut level: BTreeMap<CanonicalKey, Poset> = BTreeMap::new();
    let empty = Poset::empty();
    level.insert(empty.canonical_key()?, empty);
    for m in 1..=n {
        let mut next = BTreeMap::new();
        for rep in level.values() {
            for mask in 0u64..(1 << (m - 1)) {
                if !rep.is_down_closed(mask) {
                    continue;
                }
                let (key, canon) = rep.extend_above(mask).canonical_form()?;
                next.entry(key).or_insert(canon);
            }
        }
        level = next;
    }
    Ok(level.into_iter().collect())
}

/// Parses the line-oriented poset format: `n <count>` followed by one
/// `a < b` pair per line. Blank lines and `#` comments are ignored.
pub fn parse_text(input: &str) -> Result<Poset> {
    let mut n: Option<usize> = None;
    let mut pairs = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let parse_index = |tok: &str| {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("expected a non-negative integer, found {tok:?}"),
            })
        };
        match (n, tokens.as_slice()) {
            (None, ["n", count]) => n = Some(parse_index(count)?),
            (None, _) => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected header `n <count>`, found {line:?}"),
                })
            }
            (Some(count), [a, "<", b]) => {
                let (a, b) = (parse_index(a)?, parse_index(b)?);
                if a >= count || b >= count || a == b {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("pair {a} < {b} is invalid for n = {count}"),
                    });
                }
                pairs.push((a, b));
            }
            (Some(_), _) => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected `a < b`, found {line:?}"),
                })
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: input.lines().count().max(1),
        message: "missing header `n <count>`".into(),
    })?;
    Poset::from_covers(n, &pairs)
}

/// Writes `poset` in the format read by [`parse_text`], listing cover pairs.
pub fn to_text(poset: &Poset) -> String {
    let mut out = format!("n {}\n", poset.len());
    for (a, b) in poset.cover_pairs() {
        out.push_str(&format!("{a} < {b}\n"));
    }
    out
}
