//! Membership and factorizations in finitely generated additive submonoids
//! of exponent pairs.
//!
//! Every generator has x-exponent at least 1, so a sum of `n` generators has
//! x-exponent at least `n`. A target `(A, B)` therefore admits at most `A`
//! factors and only generators inside the `[0..A] x [0..B]` box can
//! participate; membership is decided by a dynamic program over that box.
//!
//! Two independent deciders are provided: the grid program ([`member`])
//! and an exhaustive multiset enumeration ([`member_bruteforce`]) that
//! shares no search code with it and serves as the test oracle.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exponents::{ExponentPair, Monomial, Slope};

/// Total bit-grid words the membership search may allocate (1 GiB).
const GRID_WORD_CAP: u128 = 1 << 27;

/// Brute-force factor-count cap; above it the oracle refuses instead of
/// hanging.
pub const BRUTE_FORCE_MAX_X: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("generator set must be nonempty")]
    EmptyGeneratorSet,
    #[error("brute-force oracle requires target x-exponent <= {BRUTE_FORCE_MAX_X}, got {0}")]
    BruteForceBoundExceeded(BigUint),
}

/// A nonempty set of distinct exponent pairs, kept in canonical order
/// (increasing x-exponent, then increasing y-exponent). Factorizations refer
/// to generators by index into this order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<ExponentPair>", into = "Vec<ExponentPair>")]
pub struct GeneratorSet {
    gens: Vec<ExponentPair>,
}

impl GeneratorSet {
    pub fn new(gens: impl IntoIterator<Item = ExponentPair>) -> Result<Self, MonoidError> {
        let mut gens: Vec<ExponentPair> = gens.into_iter().collect();
        gens.sort();
        gens.dedup();
        if gens.is_empty() {
            return Err(MonoidError::EmptyGeneratorSet);
        }
        Ok(GeneratorSet { gens })
    }

    pub fn generators(&self) -> &[ExponentPair] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    /// The exact maximum of the generators' slopes. When several generators
    /// attain the maximum, the representation of the first one in canonical
    /// order is returned, so the result is reproducible byte for byte.
    pub fn max_slope(&self) -> Slope {
        let mut best = self.gens[0].slope();
        for g in &self.gens[1..] {
            let s = g.slope();
            if s > best {
                best = s;
            }
        }
        best
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("generator serialization cannot fail")
    }

    pub fn from_json_str(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

impl TryFrom<Vec<ExponentPair>> for GeneratorSet {
    type Error = MonoidError;

    fn try_from(gens: Vec<ExponentPair>) -> Result<Self, MonoidError> {
        GeneratorSet::new(gens)
    }
}

impl From<GeneratorSet> for Vec<ExponentPair> {
    fn from(set: GeneratorSet) -> Vec<ExponentPair> {
        set.gens
    }
}

/// A representation of a target as a nonnegative combination of generators:
/// generator index (into the owning [`GeneratorSet`]'s canonical order)
/// mapped to a positive multiplicity. The empty map is the empty product,
/// representing `(0,0)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Factorization {
    multiplicities: BTreeMap<usize, BigUint>,
}

impl Factorization {
    fn from_counts(counts: BTreeMap<usize, BigUint>) -> Self {
        debug_assert!(counts.values().all(|c| !c.is_zero()));
        Factorization {
            multiplicities: counts,
        }
    }

    pub fn multiplicities(&self) -> &BTreeMap<usize, BigUint> {
        &self.multiplicities
    }

    pub fn is_empty_product(&self) -> bool {
        self.multiplicities.is_empty()
    }

    pub fn total_count(&self) -> BigUint {
        self.multiplicities.values().sum()
    }

    /// The factorization as (generator, multiplicity) pairs in canonical
    /// generator order.
    pub fn parts<'a>(&'a self, gens: &'a GeneratorSet) -> Vec<(&'a ExponentPair, &'a BigUint)> {
        self.multiplicities
            .iter()
            .map(|(i, c)| (&gens.generators()[*i], c))
            .collect()
    }

    /// Recomputes the weighted generator sum this factorization stands for.
    pub fn weighted_sum(&self, gens: &GeneratorSet) -> Monomial {
        let mut a = BigUint::zero();
        let mut b = BigUint::zero();
        for (i, count) in &self.multiplicities {
            let g = &gens.generators()[*i];
            a += g.a() * count;
            b += g.b() * count;
        }
        Monomial::new(a, b)
    }

    /// Human-readable rendering, e.g. `1*(1,2) + 1*(1,3)`.
    pub fn render(&self, gens: &GeneratorSet) -> String {
        if self.multiplicities.is_empty() {
            return "(empty product)".to_owned();
        }
        self.multiplicities
            .iter()
            .map(|(i, c)| format!("{}*{}", c, gens.generators()[*i]))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Reports whether [`member`] / [`factorizations`] can process this target
/// without exceeding the internal memory cap. Front ends handling untrusted
/// targets should consult this before searching.
pub fn fits_search_budget(gens: &GeneratorSet, target: &Monomial) -> bool {
    let (rows, bits) = match (usize::try_from(target.a()), usize::try_from(target.b())) {
        (Ok(a), Ok(b)) => (a as u128 + 1, b as u128 + 1),
        _ => return false,
    };
    (gens.len() as u128 + 1) * rows * bits.div_ceil(64) <= GRID_WORD_CAP
}

/// Decides whether `target` lies in the submonoid generated by `gens`.
///
/// Returns the factorization with the lexicographically smallest
/// multiplicity vector (indexed by canonical generator order) when the
/// target is a member, `None` otherwise. `(0,0)` is always a member via the
/// empty product.
///
/// Panics if the search grid would exceed an internal memory cap; callers
/// handling untrusted targets should bound them first.
pub fn member(gens: &GeneratorSet, target: &Monomial) -> Option<Factorization> {
    let table = ReachTable::build(gens, target);
    let result = table.lex_smallest();
    if let Some(f) = &result {
        debug_assert_eq!(f.weighted_sum(gens), *target);
    }
    result
}

/// Up to `limit` factorizations of `target` over `gens`, in increasing
/// lexicographic order of their multiplicity vectors. Returns all of them
/// when fewer than `limit` exist.
pub fn factorizations(gens: &GeneratorSet, target: &Monomial, limit: usize) -> Vec<Factorization> {
    let table = ReachTable::build(gens, target);
    let found = table.enumerate(limit);
    debug_assert!(found.iter().all(|f| f.weighted_sum(gens) == *target));
    found
}

/// Exhaustive oracle: enumerates multisets of generators of size at most
/// `target.a()` (in nondecreasing index order, discarding prefixes whose sum
/// already escapes the target box) and reports whether any sums to `target`.
/// Establishes membership independently of the grid program; refuses targets
/// with x-exponent above [`BRUTE_FORCE_MAX_X`].
pub fn member_bruteforce(gens: &GeneratorSet, target: &Monomial) -> Result<bool, MonoidError> {
    if *target.a() > BigUint::from(BRUTE_FORCE_MAX_X) {
        return Err(MonoidError::BruteForceBoundExceeded(target.a().clone()));
    }
    let budget = u32::try_from(target.a()).expect("bounded above by BRUTE_FORCE_MAX_X");

    fn search(
        gens: &[ExponentPair],
        start: usize,
        budget: u32,
        sum_a: &BigUint,
        sum_b: &BigUint,
        target: &Monomial,
    ) -> bool {
        if sum_a == target.a() && sum_b == target.b() {
            return true;
        }
        if budget == 0 {
            return false;
        }
        for j in start..gens.len() {
            let next_a = sum_a + gens[j].a();
            let next_b = sum_b + gens[j].b();
            if next_a > *target.a() || next_b > *target.b() {
                continue; // sums only grow, this prefix can never come back
            }
            if search(gens, j, budget - 1, &next_a, &next_b, target) {
                return true;
            }
        }
        false
    }

    Ok(search(
        gens.generators(),
        0,
        budget,
        &BigUint::zero(),
        &BigUint::zero(),
        target,
    ))
}

/// Bit matrix over the target box: bit `(a, b)` of layer `i` says whether
/// `(a, b)` is a sum of generators with index `>= i`.
struct BitGrid {
    words: Vec<u64>,
    words_per_row: usize,
    row_mask: u64,
}

impl BitGrid {
    fn new(rows: usize, bits_per_row: usize) -> Self {
        let words_per_row = bits_per_row.div_ceil(64);
        let rem = bits_per_row % 64;
        BitGrid {
            words: vec![0; rows * words_per_row],
            words_per_row,
            row_mask: if rem == 0 { !0 } else { (1u64 << rem) - 1 },
        }
    }

    fn get(&self, row: usize, bit: usize) -> bool {
        let w = self.words[row * self.words_per_row + bit / 64];
        (w >> (bit % 64)) & 1 == 1
    }

    fn set(&mut self, row: usize, bit: usize) {
        self.words[row * self.words_per_row + bit / 64] |= 1u64 << (bit % 64);
    }

    fn copy_row_from(&mut self, row: usize, other: &BitGrid) {
        let start = row * self.words_per_row;
        self.words[start..start + self.words_per_row]
            .copy_from_slice(&other.words[start..start + self.words_per_row]);
    }

    /// `row(dst) |= row(src) << shift`, bits shifted toward higher
    /// y-exponents, overflow past the box discarded. Requires `src < dst`.
    fn or_shifted_row(&mut self, dst: usize, src: usize, shift: usize) {
        debug_assert!(src < dst);
        let wpr = self.words_per_row;
        let (low, high) = self.words.split_at_mut(dst * wpr);
        let src_row = &low[src * wpr..(src + 1) * wpr];
        let dst_row = &mut high[..wpr];
        let word_shift = shift / 64;
        let bit_shift = shift % 64;
        for w in word_shift..wpr {
            let mut v = src_row[w - word_shift] << bit_shift;
            if bit_shift > 0 && w > word_shift {
                v |= src_row[w - word_shift - 1] >> (64 - bit_shift);
            }
            dst_row[w] |= v;
        }
        dst_row[wpr - 1] &= self.row_mask;
    }
}

/// Suffix reachability: `layers[i]` marks the points expressible from the
/// generators with canonical index `>= i` that also fit inside the target
/// box. Layer `k` holds only the origin; each earlier layer closes the next
/// one under repeated addition of its generator. Because x-exponents are
/// positive, each row depends only on strictly lower rows and one pass in
/// increasing row order suffices.
struct ReachTable {
    layers: Vec<BitGrid>,
    /// (canonical index, x step, y step) of the generators that fit the box.
    steps: Vec<(usize, usize, usize)>,
    rows: usize,
    bits: usize,
}

impl ReachTable {
    fn build(gens: &GeneratorSet, target: &Monomial) -> ReachTable {
        let (rows, bits) = match (usize::try_from(target.a()), usize::try_from(target.b())) {
            (Ok(a), Ok(b)) => (a + 1, b + 1),
            _ => panic!("membership search target exceeds addressable size: {target}"),
        };
        let steps: Vec<(usize, usize, usize)> = gens
            .generators()
            .iter()
            .enumerate()
            .filter(|(_, g)| g.a() <= target.a() && g.b() <= target.b())
            .map(|(i, g)| {
                (
                    i,
                    usize::try_from(g.a()).expect("bounded by target"),
                    usize::try_from(g.b()).expect("bounded by target"),
                )
            })
            .collect();

        let words = (steps.len() as u128 + 1)
            * rows as u128
            * (bits.div_ceil(64)) as u128;
        assert!(
            words <= GRID_WORD_CAP,
            "membership search grid too large: {rows} x {bits} box with {} generators",
            steps.len()
        );

        let mut layers = Vec::with_capacity(steps.len() + 1);
        let mut base = BitGrid::new(rows, bits);
        base.set(0, 0);
        layers.push(base);
        for &(_, da, db) in steps.iter().rev() {
            let prev = layers.last().expect("seeded above");
            let mut grid = BitGrid::new(rows, bits);
            for a in 0..rows {
                grid.copy_row_from(a, prev);
                if a >= da {
                    grid.or_shifted_row(a, a - da, db);
                }
            }
            layers.push(grid);
        }
        layers.reverse();
        ReachTable {
            layers,
            steps,
            rows,
            bits,
        }
    }

    fn target_reachable(&self) -> bool {
        self.layers[0].get(self.rows - 1, self.bits - 1)
    }

    /// Greedy reconstruction of the lexicographically smallest multiplicity
    /// vector: at each generator, take the least multiplicity that leaves a
    /// remainder expressible by the later generators alone.
    fn lex_smallest(&self) -> Option<Factorization> {
        if !self.target_reachable() {
            return None;
        }
        let mut counts = BTreeMap::new();
        let (mut ra, mut rb) = (self.rows - 1, self.bits - 1);
        for (level, &(index, da, db)) in self.steps.iter().enumerate() {
            let mut c = BigUint::zero();
            while !self.layers[level + 1].get(ra, rb) {
                debug_assert!(
                    ra >= da && rb >= db,
                    "reachable remainder must admit another factor"
                );
                ra -= da;
                rb -= db;
                c += 1u32;
            }
            if !c.is_zero() {
                counts.insert(index, c);
            }
        }
        debug_assert_eq!((ra, rb), (0, 0));
        Some(Factorization::from_counts(counts))
    }

    /// Depth-first enumeration in lexicographic multiplicity order, pruned
    /// by suffix reachability so only productive branches are visited.
    fn enumerate(&self, limit: usize) -> Vec<Factorization> {
        let mut results = Vec::new();
        if limit == 0 {
            return results;
        }
        let mut counts = BTreeMap::new();
        self.enumerate_from(0, self.rows - 1, self.bits - 1, &mut counts, limit, &mut results);
        results
    }

    fn enumerate_from(
        &self,
        level: usize,
        ra: usize,
        rb: usize,
        counts: &mut BTreeMap<usize, BigUint>,
        limit: usize,
        results: &mut Vec<Factorization>,
    ) -> bool {
        if level == self.steps.len() {
            if ra == 0 && rb == 0 {
                results.push(Factorization::from_counts(counts.clone()));
                return results.len() == limit;
            }
            return false;
        }
        let (index, da, db) = self.steps[level];
        let (mut ca, mut cb) = (ra, rb);
        let mut c = BigUint::zero();
        loop {
            if self.layers[level + 1].get(ca, cb) {
                if !c.is_zero() {
                    counts.insert(index, c.clone());
                }
                let full = self.enumerate_from(level + 1, ca, cb, counts, limit, results);
                counts.remove(&index);
                if full {
                    return true;
                }
            }
            if ca < da || cb < db {
                return false;
            }
            ca -= da;
            cb -= db;
            c += 1u32;
        }
    }
}
