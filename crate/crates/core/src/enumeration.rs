//! Index sets of every sum: the mediant tree of unimodular first-quadrant
//! pairs, determinant-`n` half-plane pairs, index-`n` sublattice classes,
//! coprime pairs, zero-sum lattice triples, and brute-force oracles for them.

use std::fmt;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, VectorPair};
use crate::number_theory::{ext_gcd, gcd, DivisorTable};

/// Largest box accepted by [`unimodular_oracle`] (cost O(N⁴)).
pub const UNIMODULAR_ORACLE_MAX: u32 = 200;
/// Largest box accepted by [`detn_oracle`].
pub const DETN_ORACLE_MAX: u32 = 60;

/// How an infinite sum is cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruncationSpec {
    /// Vector coordinates in `[0, N]²` (quadrant sums), `[−N, N]²`
    /// (half-plane sums) or `[1, N]²` (scalar pair sums).
    CoordBox(u32),
    /// Lattice coefficients `(m, n)` of `ω = m·z + n` with `|m|, |n| ≤ M`.
    CoeffBox(u32),
}

impl TruncationSpec {
    pub fn bound(&self) -> u32 {
        match *self {
            TruncationSpec::CoordBox(n) | TruncationSpec::CoeffBox(n) => n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.bound() == 0 {
            return Err(Error::Domain(format!(
                "truncation {self}: bound must be >= 1"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for TruncationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TruncationSpec::CoordBox(n) => write!(f, "box:{n}"),
            TruncationSpec::CoeffBox(m) => write!(f, "coeff-box:{m}"),
        }
    }
}

/// A visited pair of the mediant tree; `boundary` when the mediant `x+y`
/// leaves the box, so the pair has no children inside the cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TreeNode {
    pub pair: VectorPair,
    pub boundary: bool,
}

/// Depth-first pre-order walk of the mediant tree, pruned at the box
/// `[0, N]²`. Children are visited `(x, x+y)` first, then `(x+y, y)`.
#[derive(Debug, Clone)]
pub struct MediantWalk {
    bound: i64,
    stack: Vec<VectorPair>,
}

impl MediantWalk {
    /// Walk of the whole tree rooted at the standard basis. Empty for `bound = 0`.
    pub fn new(bound: u32) -> Self {
        let root = VectorPair::new(LatticeVector::E1, LatticeVector::E2);
        Self::from_roots(bound, if bound >= 1 { vec![root] } else { Vec::new() })
    }

    /// Walk of the subtrees under `roots`, in the given order.
    pub fn from_roots(bound: u32, mut roots: Vec<VectorPair>) -> Self {
        let bound = bound as i64;
        debug_assert!(roots
            .iter()
            .all(|p| p.x().in_quadrant_box(bound) && p.y().in_quadrant_box(bound)));
        roots.reverse();
        Self {
            bound,
            stack: roots,
        }
    }
}

impl Iterator for MediantWalk {
    type Item = TreeNode;

    fn next(&mut self) -> Option<TreeNode> {
        let pair = self.stack.pop()?;
        // sums of first-quadrant vectors stay nonnegative; only the upper edge can fail
        let s = pair.sum();
        let boundary = s.a > self.bound || s.b > self.bound;
        if !boundary {
            let (left, right) = pair.children();
            self.stack.push(right);
            self.stack.push(left);
        }
        Some(TreeNode { pair, boundary })
    }
}

/// Pairs of the cut tree: `interior` is every visited pair, `boundary` the
/// subset whose mediant leaves the box. Both in traversal order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TreeCut {
    pub interior: Vec<VectorPair>,
    pub boundary: Vec<VectorPair>,
}

pub fn tree_cut(bound: u32) -> TreeCut {
    let mut cut = TreeCut::default();
    for node in MediantWalk::new(bound) {
        cut.interior.push(node.pair);
        if node.boundary {
            cut.boundary.push(node.pair);
        }
    }
    cut
}

/// Split of the tree into an upper part and independent subtrees, for
/// parallel traversal. `upper` followed by the walks under each of
/// `subtrees` visits exactly the pairs of [`MediantWalk::new`].
#[derive(Debug, Clone, Default)]
pub struct TreePartition {
    pub upper: Vec<TreeNode>,
    pub subtrees: Vec<VectorPair>,
}

pub fn tree_partition(bound: u32, min_subtrees: usize) -> TreePartition {
    let mut part = TreePartition::default();
    let mut queue: std::collections::VecDeque<VectorPair> = MediantWalk::new(bound).stack.into();
    let b = bound as i64;
    while queue.len() < min_subtrees {
        let Some(pair) = queue.pop_front() else { break };
        let boundary = !pair.sum().in_quadrant_box(b);
        part.upper.push(TreeNode { pair, boundary });
        if !boundary {
            let (left, right) = pair.children();
            queue.push_back(left);
            queue.push_back(right);
        }
    }
    part.subtrees = queue.into();
    part
}

/// Quadruple-loop scan of `[0, N]²` for all pairs with determinant 1.
pub fn unimodular_oracle(bound: u32) -> Result<Vec<VectorPair>> {
    if bound > UNIMODULAR_ORACLE_MAX {
        return Err(Error::Refused(format!(
            "unimodular oracle is O(N^4); N = {bound} exceeds {UNIMODULAR_ORACLE_MAX}"
        )));
    }
    let n = bound as i64;
    let mut out = Vec::new();
    for xa in 0..=n {
        for xb in 0..=n {
            for ya in 0..=n {
                for yb in 0..=n {
                    if xa * yb - xb * ya == 1 {
                        out.push(VectorPair::new(
                            LatticeVector::new(xa, xb),
                            LatticeVector::new(ya, yb),
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Solutions `x` of `det(x, y) = n` with `x` in `[−N, N]²`, walked along
/// their solution line.
#[derive(Debug, Clone)]
struct SolutionLine {
    y: LatticeVector,
    next: LatticeVector,
    step: LatticeVector,
    remaining: i64,
}

/// Range of `k` with `|base + k·step| ≤ bound`.
fn step_range(base: i128, step: i128, bound: i128) -> Option<(i128, i128)> {
    if step == 0 {
        return (base.abs() <= bound).then_some((i128::MIN, i128::MAX));
    }
    let (lo, hi) = ((-bound - base), (bound - base));
    let (lo, hi) = if step > 0 {
        (div_ceil(lo, step), hi.div_euclid(step))
    } else {
        (div_ceil(-hi, -step), (-lo).div_euclid(-step))
    };
    Some((lo, hi))
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

fn solution_line(n: i64, y: LatticeVector, bound: i64) -> Option<SolutionLine> {
    let g = gcd(y.a, y.b) as i64;
    if n % g != 0 {
        return None;
    }
    // s·y.b + t·y.a = g  ⇒  x0 = (s·n/g, −t·n/g) has x0.a·y.b − x0.b·y.a = n
    let (_, s, t) = ext_gcd(y.b, y.a);
    let scale = (n / g) as i128;
    let (x0a, x0b) = (s as i128 * scale, -(t as i128) * scale);
    let (ua, ub) = ((y.a / g) as i128, (y.b / g) as i128);
    let b = bound as i128;
    let (lo1, hi1) = step_range(x0a, ua, b)?;
    let (lo2, hi2) = step_range(x0b, ub, b)?;
    let (lo, hi) = (lo1.max(lo2), hi1.min(hi2));
    if lo > hi {
        return None;
    }
    let next = LatticeVector::new((x0a + lo * ua) as i64, (x0b + lo * ub) as i64);
    Some(SolutionLine {
        y,
        next,
        step: LatticeVector::new(ua as i64, ub as i64),
        remaining: (hi - lo + 1) as i64,
    })
}

/// Stream of half-plane pairs `(x, y)` with `det(x, y) = n` and coordinates
/// in `[−N, N]`. Ordered by `y` (row `y.b` ascending, then `y.a` ascending),
/// then by position along the solution line.
#[derive(Debug, Clone)]
pub struct DetnPairs {
    n: i64,
    bound: i64,
    row: i64,
    last_row: i64,
    col: i64,
    line: Option<SolutionLine>,
}

impl DetnPairs {
    fn advance_y(&mut self) -> Option<LatticeVector> {
        if self.row > self.last_row {
            return None;
        }
        let y = LatticeVector::new(self.col, self.row);
        self.col += 1;
        if self.col > self.bound {
            self.col = -self.bound;
            self.row += 1;
        }
        Some(y)
    }
}

impl Iterator for DetnPairs {
    type Item = VectorPair;

    fn next(&mut self) -> Option<VectorPair> {
        loop {
            if let Some(line) = self.line.as_mut() {
                while line.remaining > 0 {
                    let x = line.next;
                    line.next = x + line.step;
                    line.remaining -= 1;
                    if x.in_upper_half_plane() {
                        return Some(VectorPair::new(x, line.y));
                    }
                }
                self.line = None;
            }
            let y = self.advance_y()?;
            if y.in_upper_half_plane() {
                self.line = solution_line(self.n, y, self.bound);
            }
        }
    }
}

/// All half-plane pairs with determinant `n` in the box `[−N, N]²`.
pub fn detn_pairs(n: u64, bound: u32) -> Result<DetnPairs> {
    detn_pairs_rows(n, bound, 0..=bound as i64)
}

/// [`detn_pairs`] restricted to `y.b ∈ rows`; disjoint row ranges give
/// disjoint streams.
pub fn detn_pairs_rows(n: u64, bound: u32, rows: RangeInclusive<i64>) -> Result<DetnPairs> {
    if n == 0 {
        return Err(Error::Domain("detn_pairs: n must be >= 1".into()));
    }
    let bound = bound as i64;
    Ok(DetnPairs {
        n: n as i64,
        bound,
        row: (*rows.start()).max(0),
        last_row: (*rows.end()).min(bound),
        col: -bound,
        line: None,
    })
}

/// Exhaustive det-filter over `(H ∩ [−N, N]²)²`.
pub fn detn_oracle(n: u64, bound: u32) -> Result<Vec<VectorPair>> {
    if n == 0 {
        return Err(Error::Domain("detn_oracle: n must be >= 1".into()));
    }
    if bound > DETN_ORACLE_MAX {
        return Err(Error::Refused(format!(
            "det-n oracle is O(N^4); N = {bound} exceeds {DETN_ORACLE_MAX}"
        )));
    }
    let b = bound as i64;
    let half_plane: Vec<LatticeVector> = (0..=b)
        .flat_map(|row| (-b..=b).map(move |col| LatticeVector::new(col, row)))
        .filter(|v| v.in_upper_half_plane())
        .collect();
    let mut out = Vec::new();
    for &x in &half_plane {
        for &y in &half_plane {
            if x.det(y) == n as i128 {
                out.push(VectorPair::new(x, y));
            }
        }
    }
    Ok(out)
}

/// Pairs with a vector on the positive horizontal axis.
pub fn is_axis_ray(pair: &VectorPair) -> bool {
    pair.x().b == 0 || pair.y().b == 0
}

/// Index-`n` sublattice of ℤ² with basis `(n/d, 0), (k, d)`, `0 ≤ k < n/d`.
///
/// This is the Hermite normal form: `d` generates the projection of the
/// lattice onto the second coordinate and `k` is reduced modulo the
/// horizontal period `n/d`, so distinct `(d, k)` are distinct lattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SublatticeClass {
    pub n: u64,
    pub d: u64,
    pub k: u64,
}

impl SublatticeClass {
    pub fn period(&self) -> u64 {
        self.n / self.d
    }

    pub fn generators(&self) -> VectorPair {
        VectorPair::new(
            LatticeVector::new(self.period() as i64, 0),
            LatticeVector::new(self.k as i64, self.d as i64),
        )
    }

    /// The partition row `(k + j·n/d, d)` for `j ∈ range`.
    pub fn row_vectors(&self, range: RangeInclusive<i64>) -> impl Iterator<Item = LatticeVector> {
        let (k, p, d) = (self.k as i64, self.period() as i64, self.d as i64);
        range.map(move |j| LatticeVector::new(k + j * p, d))
    }
}

/// Canonical class of the lattice spanned by `pair`.
pub fn lattice_hnf(pair: &VectorPair) -> Result<SublatticeClass> {
    let det = pair.det();
    if det == 0 {
        return Err(Error::Domain(format!(
            "lattice_hnf: degenerate pair {pair}"
        )));
    }
    let (x, y) = (pair.x(), pair.y());
    let (g, s, t) = ext_gcd(x.b, y.b);
    let index = det.unsigned_abs();
    let period = index / g as u128;
    let wa = s as i128 * x.a as i128 + t as i128 * y.a as i128;
    let k = wa.rem_euclid(period as i128);
    Ok(SublatticeClass {
        n: index as u64,
        d: g as u64,
        k: k as u64,
    })
}

/// All `σ₁(n)` sublattices of index `n`, ordered by `d` then `k`.
pub fn sublattice_classes(n: u64) -> Result<Vec<SublatticeClass>> {
    let table = DivisorTable::new(n)?;
    Ok(table
        .divisors
        .iter()
        .flat_map(|&d| (0..n / d).map(move |k| SublatticeClass { n, d, k }))
        .collect())
}

/// Positive coprime pairs `(b, d)` with `b, d ≤ N`, `b` outer.
pub fn coprime_pairs(bound: u32) -> impl Iterator<Item = (u32, u32)> + Clone {
    (1..=bound).flat_map(move |b| {
        (1..=bound)
            .filter(move |&d| gcd(b as i64, d as i64) == 1)
            .map(move |d| (b, d))
    })
}

/// Zero-sum triple of lattice coefficients `(m, n)`, stored as integer vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triple {
    pub w1: LatticeVector,
    pub w2: LatticeVector,
    pub w3: LatticeVector,
    /// `m₁n₂ − m₂n₁ = 0`
    pub collinear: bool,
}

impl Triple {
    pub fn coefficient_det(&self) -> i128 {
        self.w1.det(self.w2)
    }
}

/// Every `(ω₁, ω₂)` with coefficients in `[−M, M]² \ {0}` and
/// `ω₃ = −ω₁ − ω₂ ≠ 0`. `ω₃` is not truncated.
#[derive(Debug, Clone)]
pub struct TripleStream {
    bound: i64,
    last_row: i64,
    w1: LatticeVector,
    w2: LatticeVector,
    done: bool,
}

impl TripleStream {
    fn step(v: &mut LatticeVector, bound: i64, last_row: i64) -> bool {
        v.b += 1;
        if v.b > bound {
            v.b = -bound;
            v.a += 1;
        }
        v.a <= last_row
    }
}

impl Iterator for TripleStream {
    type Item = Triple;

    fn next(&mut self) -> Option<Triple> {
        while !self.done {
            let (w1, w2) = (self.w1, self.w2);
            if !Self::step(&mut self.w2, self.bound, self.bound) {
                self.w2 = LatticeVector::new(-self.bound, -self.bound);
                if !Self::step(&mut self.w1, self.bound, self.last_row) {
                    self.done = true;
                }
            }
            let w3 = -(w1 + w2);
            if w1.is_zero() || w2.is_zero() || w3.is_zero() {
                continue;
            }
            return Some(Triple {
                w1,
                w2,
                w3,
                collinear: w1.det(w2) == 0,
            });
        }
        None
    }
}

pub fn triple_stream(bound: u32) -> TripleStream {
    triple_stream_rows(bound, -(bound as i64)..=bound as i64)
}

/// [`triple_stream`] restricted to `ω₁` coefficients with `m₁ ∈ rows`.
pub fn triple_stream_rows(bound: u32, rows: RangeInclusive<i64>) -> TripleStream {
    let b = bound as i64;
    let (first, last) = ((*rows.start()).max(-b), (*rows.end()).min(b));
    TripleStream {
        bound: b,
        last_row: last,
        w1: LatticeVector::new(first, -b),
        w2: LatticeVector::new(-b, -b),
        done: bound == 0 || first > last,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn v(a: i64, b: i64) -> LatticeVector {
        LatticeVector::new(a, b)
    }

    fn p(xa: i64, xb: i64, ya: i64, yb: i64) -> VectorPair {
        VectorPair::new(v(xa, xb), v(ya, yb))
    }

    #[test]
    fn tree_cut_unit_box() {
        let cut = tree_cut(1);
        assert_eq!(
            cut.interior,
            vec![p(1, 0, 0, 1), p(1, 0, 1, 1), p(1, 1, 0, 1)]
        );
        assert_eq!(cut.boundary, vec![p(1, 0, 1, 1), p(1, 1, 0, 1)]);
    }

    #[test]
    fn tree_cut_sizes() {
        // brute force over [0,2]²: 7 pairs with det 1
        let two = tree_cut(2);
        assert_eq!(two.interior.len(), 7);
        assert_eq!(
            two.interior.iter().copied().collect::<HashSet<_>>(),
            unimodular_oracle(2)
                .unwrap()
                .into_iter()
                .collect::<HashSet<_>>()
        );
        assert!(tree_cut(0).interior.is_empty());
    }

    #[test]
    fn tree_cut_boundary_invariants() {
        let cut = tree_cut(17);
        let interior: HashSet<_> = cut.interior.iter().copied().collect();
        let boundary: HashSet<_> = cut.boundary.iter().copied().collect();
        assert_eq!(interior.len(), cut.interior.len());
        assert!(boundary.is_subset(&interior));
        for pair in &cut.interior {
            assert_eq!(pair.det(), 1);
            assert!(pair.x().in_quadrant_box(17) && pair.y().in_quadrant_box(17));
            if !boundary.contains(pair) {
                let (l, r) = pair.children();
                assert!(interior.contains(&l) && interior.contains(&r));
            }
        }
    }

    #[test]
    fn deep_chain_does_not_recurse() {
        // depth N along ((1,0),(k,1)); the explicit stack stays shallow
        let n = 3000;
        let count = MediantWalk::new(n)
            .filter(|node| node.pair.x() == LatticeVector::E1)
            .count();
        assert_eq!(count, n as usize + 1);
    }

    #[test]
    fn partition_covers_tree_in_same_multiset() {
        let bound = 40;
        let full: Vec<_> = MediantWalk::new(bound).collect();
        let part = tree_partition(bound, 32);
        let mut merged = part.upper.clone();
        for root in &part.subtrees {
            merged.extend(MediantWalk::from_roots(bound, vec![*root]));
        }
        assert_eq!(merged.len(), full.len());
        let a: HashSet<_> = full.into_iter().collect();
        let b: HashSet<_> = merged.into_iter().collect();
        assert_eq!(a, b);
        assert!(part.subtrees.len() >= 32);
    }

    #[test]
    fn oracle_examples() {
        let one: HashSet<_> = unimodular_oracle(1).unwrap().into_iter().collect();
        let expect: HashSet<_> = [p(1, 0, 0, 1), p(1, 0, 1, 1), p(1, 1, 0, 1)].into();
        assert_eq!(one, expect);
        assert!(unimodular_oracle(0).unwrap().is_empty());
        assert!(matches!(unimodular_oracle(201), Err(Error::Refused(_))));
    }

    #[test]
    fn detn_small_cases_match_oracle() {
        for (n, bound) in [(1, 1), (2, 1), (1, 3), (3, 4)] {
            let fast: Vec<_> = detn_pairs(n, bound).unwrap().collect();
            let slow: HashSet<_> = detn_oracle(n, bound).unwrap().into_iter().collect();
            assert_eq!(fast.len(), slow.len());
            assert_eq!(fast.iter().copied().collect::<HashSet<_>>(), slow);
        }
        let unit: HashSet<_> = detn_pairs(1, 1).unwrap().collect();
        assert!(unit.contains(&p(1, 0, 0, 1)));
        assert!(unit.contains(&p(1, 0, 1, 1)));
        assert!(unit.contains(&p(1, 1, 0, 1)));
        // (−1, 0) is not in the half-plane
        assert!(!unit.contains(&p(0, 1, -1, 0)));
        assert!(!detn_pairs(2, 1).unwrap().any(|q| q.y() == v(0, 2)));
    }

    #[test]
    fn detn_postconditions() {
        for n in 1..=6 {
            for pair in detn_pairs(n, 9).unwrap() {
                assert_eq!(pair.det(), n as i128);
                assert!(pair.x().in_upper_half_plane() && pair.y().in_upper_half_plane());
                assert!(pair.x().in_centered_box(9) && pair.y().in_centered_box(9));
            }
        }
        assert!(detn_pairs(0, 3).is_err());
    }

    #[test]
    fn detn_rows_partition_stream() {
        let all: Vec<_> = detn_pairs(4, 12).unwrap().collect();
        let mut split: Vec<_> = detn_pairs_rows(4, 12, 0..=5).unwrap().collect();
        split.extend(detn_pairs_rows(4, 12, 6..=12).unwrap());
        assert_eq!(all, split);
    }

    #[test]
    fn sublattice_examples() {
        let one = sublattice_classes(1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].generators(), p(1, 0, 0, 1));
        let two: Vec<_> = sublattice_classes(2)
            .unwrap()
            .iter()
            .map(|c| c.generators())
            .collect();
        assert_eq!(two, vec![p(2, 0, 0, 1), p(2, 0, 1, 1), p(1, 0, 0, 2)]);
        assert_eq!(sublattice_classes(6).unwrap().len(), 12);
        assert!(sublattice_classes(0).is_err());
    }

    #[test]
    fn hnf_is_canonical() {
        for n in 1..=60u64 {
            let classes = sublattice_classes(n).unwrap();
            let mut seen = HashSet::new();
            for c in &classes {
                assert_eq!(c.generators().det().unsigned_abs(), n as u128);
                assert_eq!(lattice_hnf(&c.generators()).unwrap(), *c);
                assert!(seen.insert(*c));
            }
        }
        // a change of basis does not change the class
        let c = SublatticeClass { n: 12, d: 3, k: 2 };
        let g = c.generators();
        let other = VectorPair::new(g.x() * 3 + g.y() * 2, g.x() + g.y());
        assert_eq!(lattice_hnf(&other).unwrap(), c);
        assert!(lattice_hnf(&p(1, 2, 2, 4)).is_err());
    }

    #[test]
    fn every_detn_pair_lands_in_a_class() {
        let n = 6;
        let classes: HashSet<_> = sublattice_classes(n).unwrap().into_iter().collect();
        let mut hit = HashSet::new();
        for pair in detn_pairs(n, 8).unwrap() {
            let c = lattice_hnf(&pair).unwrap();
            assert!(classes.contains(&c));
            hit.insert(c);
        }
        assert_eq!(hit, classes);
    }

    #[test]
    fn coprime_examples() {
        let two: Vec<_> = coprime_pairs(2).collect();
        assert_eq!(two, vec![(1, 1), (1, 2), (2, 1)]);
        assert_eq!(coprime_pairs(3).count(), 7);
        assert!(!coprime_pairs(10).any(|q| q == (2, 4)));
    }

    #[test]
    fn triple_stream_examples() {
        let triples: Vec<_> = triple_stream(1).collect();
        assert_eq!(triples.len(), 56);
        let t = triples
            .iter()
            .find(|t| t.w1 == v(1, 0) && t.w2 == v(1, 0))
            .unwrap();
        assert_eq!(t.w3, v(-2, 0));
        assert!(t.collinear);
        let t = triples
            .iter()
            .find(|t| t.w1 == v(1, 0) && t.w2 == v(0, 1))
            .unwrap();
        assert_eq!(t.coefficient_det(), 1);
        assert!(!t.collinear);
        assert_eq!(triple_stream(0).count(), 0);
    }

    #[test]
    fn triple_stream_partition() {
        let m = 4;
        let side = (2 * m + 1) * (2 * m + 1) - 1;
        let all: Vec<_> = triple_stream(m as u32).collect();
        assert_eq!(all.len(), side * side - side);
        let col = all.iter().filter(|t| t.collinear).count();
        assert_eq!(col + all.iter().filter(|t| !t.collinear).count(), all.len());
        assert!(all.iter().all(|t| (t.w1 + t.w2 + t.w3).is_zero()));
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), all.len());
        let rows: Vec<_> = (-4..=4)
            .flat_map(|r| triple_stream_rows(4, r..=r))
            .collect();
        assert_eq!(rows, all);
    }

    #[test]
    fn truncation_display_and_validation() {
        assert_eq!(TruncationSpec::CoordBox(500).to_string(), "box:500");
        assert_eq!(TruncationSpec::CoeffBox(40).to_string(), "coeff-box:40");
        assert!(TruncationSpec::CoordBox(0).validate().is_err());
    }
}
