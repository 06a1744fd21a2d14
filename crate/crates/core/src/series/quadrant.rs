//! Sums over unimodular first-quadrant pairs, walked on the mediant tree.

use std::time::Instant;

use crate::accumulate::Accumulator;
use crate::enumeration::{
    tree_partition, unimodular_oracle, MediantWalk, TreeNode, TruncationSpec,
};
use crate::error::Result;
use crate::lattice::{defect, LatticeVector, Real, VectorPair};

use super::{EvalOptions, Method, SumResult};

/// Subtrees per parallel walk; fixed so the merge order is thread-independent.
const PARALLEL_SUBTREES: usize = 256;

fn kernel(u: LatticeVector, v: LatticeVector) -> Real {
    u.dot(v) as Real / (u.norm_sq() as Real * v.norm_sq() as Real)
}

fn unsigned_angle(u: LatticeVector, v: LatticeVector) -> Real {
    (u.det(v).abs() as Real).atan2(u.dot(v) as Real)
}

fn inverse_norm_product(p: &VectorPair) -> Real {
    let (x, y) = (p.x(), p.y());
    1.0 / (x.norm_sq() as Real * y.norm_sq() as Real * p.sum().norm_sq() as Real)
}

/// Sums `K` per-node quantities over the tree cut; `None` skips the node.
fn walk_sum<const K: usize, F>(bound: u32, opts: &EvalOptions, term: F) -> ([Accumulator; K], u64)
where
    F: Fn(&TreeNode) -> Option<[Real; K]> + Sync,
{
    let fold = |accs: &mut [Accumulator; K], count: &mut u64, node: &TreeNode| {
        if let Some(values) = term(node) {
            for (acc, v) in accs.iter_mut().zip(values) {
                acc.add(v);
            }
            *count += 1;
        }
    };
    let mut accs = [opts.accumulator(); K];
    let mut count = 0u64;
    if !opts.is_parallel() {
        for node in MediantWalk::new(bound) {
            fold(&mut accs, &mut count, &node);
        }
        return (accs, count);
    }
    let part = tree_partition(bound, PARALLEL_SUBTREES);
    for node in &part.upper {
        fold(&mut accs, &mut count, node);
    }
    let partials = opts.run_jobs(part.subtrees.len(), |i| {
        let mut local = [opts.accumulator(); K];
        let mut n = 0u64;
        for node in MediantWalk::from_roots(bound, vec![part.subtrees[i]]) {
            fold(&mut local, &mut n, &node);
        }
        (local, n)
    });
    for (local, n) in partials {
        for (acc, part) in accs.iter_mut().zip(local.iter()) {
            acc.merge(part);
        }
        count += n;
    }
    (accs, count)
}

/// `Σ 1/(|x|²|y|²|x+y|²)` over every unimodular pair in `[0, N]²`.
pub fn theorem1_direct(bound: u32, opts: &EvalOptions) -> Result<SumResult> {
    let started = Instant::now();
    let ([acc], terms) = walk_sum(bound, opts, |node| Some([inverse_norm_product(&node.pair)]));
    SumResult::finish(
        acc.value(),
        terms,
        TruncationSpec::CoordBox(bound),
        Method::Direct,
        None,
        started,
    )
}

/// `½ Σ_boundary [F(x+y, y) + F(x, x+y)]`, equal to [`theorem1_direct`] at
/// every `N`. The tail hint is `½ Σ (θ − F)` over the same child pairs,
/// whose angles `θ` fill the quadrant exactly.
pub fn theorem1_boundary(bound: u32, opts: &EvalOptions) -> Result<SumResult> {
    let started = Instant::now();
    let ([kern, gap], terms) = walk_sum(bound, opts, |node| {
        node.boundary.then(|| {
            let (x, y, s) = (node.pair.x(), node.pair.y(), node.pair.sum());
            let f = kernel(s, y) + kernel(x, s);
            let theta = unsigned_angle(s, y) + unsigned_angle(x, s);
            [f, theta - f]
        })
    });
    SumResult::finish(
        0.5 * kern.value(),
        terms,
        TruncationSpec::CoordBox(bound),
        Method::Boundary,
        Some(0.5 * gap.value()),
        started,
    )
}

/// The quadrant sum over the quadruple-loop oracle's pair set (`N ≤ 200`).
pub fn theorem1_oracle(bound: u32, opts: &EvalOptions) -> Result<SumResult> {
    let started = Instant::now();
    let pairs = unimodular_oracle(bound)?;
    let mut acc = opts.accumulator();
    acc.extend(pairs.iter().map(inverse_norm_product));
    SumResult::finish(
        acc.value(),
        pairs.len() as u64,
        TruncationSpec::CoordBox(bound),
        Method::Oracle,
        None,
        started,
    )
}

/// `Σ (|x| + |y| − |x+y|)/(|x||y||x+y|)`.
///
/// The boundary method uses `Σ_boundary [1/(|x+y||y|) + 1/(|x||x+y|)] − 1`,
/// from telescoping `1/(|x||y|)`. For a unimodular child pair
/// `1/(|u||v|) = sin θ`, so the tail hint is `Σ (θ − sin θ)`.
pub fn theorem2(bound: u32, method: Method, opts: &EvalOptions) -> Result<SumResult> {
    let started = Instant::now();
    let spec = TruncationSpec::CoordBox(bound);
    match method {
        Method::Boundary => {
            let ([sines, gap], terms) = walk_sum(bound, opts, |node| {
                node.boundary.then(|| {
                    let (x, y, s) = (node.pair.x(), node.pair.y(), node.pair.sum());
                    let ns = s.norm();
                    let sin = 1.0 / (ns * y.norm()) + 1.0 / (x.norm() * ns);
                    let theta = unsigned_angle(s, y) + unsigned_angle(x, s);
                    [sin, theta - sin]
                })
            });
            let value = if terms == 0 { 0.0 } else { sines.value() - 1.0 };
            SumResult::finish(value, terms, spec, method, Some(gap.value()), started)
        }
        _ => {
            let ([acc], terms) = walk_sum(bound, opts, |node| {
                let (x, y) = (node.pair.x(), node.pair.y());
                Some([defect(x, y) / (x.norm() * y.norm() * node.pair.sum().norm())])
            });
            SumResult::finish(acc.value(), terms, spec, Method::Direct, None, started)
        }
    }
}

/// `(Σ defect, Σ defect²)` over the unimodular pairs of `[0, N]²`.
pub fn tropical_sums(bound: u32, opts: &EvalOptions) -> Result<(SumResult, SumResult)> {
    let started = Instant::now();
    let ([first, second], terms) = walk_sum(bound, opts, |node| {
        let d = defect(node.pair.x(), node.pair.y());
        Some([d, d * d])
    });
    let spec = TruncationSpec::CoordBox(bound);
    Ok((
        SumResult::finish(first.value(), terms, spec, Method::Direct, None, started)?,
        SumResult::finish(second.value(), terms, spec, Method::Direct, None, started)?,
    ))
}

/// Angle bookkeeping on the cut frontier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryDiagnostics {
    pub boundary_pairs: u64,
    /// Σ of `angle(x, y)` over boundary pairs; `π/2` exactly in real arithmetic.
    pub angle_sum: Real,
    /// Same over the boundary pairs' children.
    pub child_angle_sum: Real,
    /// max over children of `|F(u,v) − θ| / θ³`.
    pub max_kernel_gap_ratio: Real,
    /// max over children of `|F(u,v) − sin θ cos θ|`.
    pub max_sincos_mismatch: Real,
}

pub fn boundary_diagnostics(bound: u32) -> BoundaryDiagnostics {
    let mut angles = Accumulator::new(true);
    let mut child_angles = Accumulator::new(true);
    let mut pairs = 0u64;
    let mut ratio: Real = 0.0;
    let mut sincos: Real = 0.0;
    for node in MediantWalk::new(bound).filter(|n| n.boundary) {
        let (x, y, s) = (node.pair.x(), node.pair.y(), node.pair.sum());
        pairs += 1;
        angles.add(unsigned_angle(x, y));
        for (u, v) in [(x, s), (s, y)] {
            let theta = unsigned_angle(u, v);
            let f = kernel(u, v);
            child_angles.add(theta);
            ratio = ratio.max((f - theta).abs() / theta.powi(3));
            sincos = sincos.max((f - theta.sin() * theta.cos()).abs());
        }
    }
    BoundaryDiagnostics {
        boundary_pairs: pairs,
        angle_sum: angles.value(),
        child_angle_sum: child_angles.value(),
        max_kernel_gap_ratio: ratio,
        max_sincos_mismatch: sincos,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn seq() -> EvalOptions {
        EvalOptions::sequential()
    }

    #[test]
    fn theorem1_unit_box() {
        let d = theorem1_direct(1, &seq()).unwrap();
        assert!((d.value - 0.7).abs() < 1e-15);
        assert_eq!(d.terms, 3);
        let b = theorem1_boundary(1, &seq()).unwrap();
        assert!((b.value - 0.7).abs() < 1e-15);
        assert_eq!(b.terms, 2);
        let o = theorem1_oracle(1, &seq()).unwrap();
        assert!((o.value - 0.7).abs() < 1e-15);
    }

    #[test]
    fn theorem1_empty_box() {
        let d = theorem1_direct(0, &seq()).unwrap();
        assert_eq!((d.value, d.terms), (0.0, 0));
    }

    #[test]
    fn direct_equals_boundary() {
        for n in [1, 2, 3, 7, 10, 31, 100] {
            let d = theorem1_direct(n, &seq()).unwrap().value;
            let b = theorem1_boundary(n, &seq()).unwrap().value;
            assert!((d - b).abs() <= 1e-13 * d, "N={n}: {d} vs {b}");
        }
    }

    #[test]
    fn boundary_tail_hint_closes_the_gap() {
        let b = theorem1_boundary(200, &seq()).unwrap();
        let gap = PI / 4.0 - b.value;
        let hint = b.tail_hint.unwrap();
        assert!(gap > 0.0 && hint > 0.0);
        assert!(
            (b.extrapolated() - PI / 4.0).abs() < 1e-14,
            "gap {gap} hint {hint}"
        );
    }

    #[test]
    fn theorem2_unit_box() {
        let d = theorem2(1, Method::Direct, &seq()).unwrap().value;
        let b = theorem2(1, Method::Boundary, &seq()).unwrap().value;
        let expect = 2.0 / 10f64.sqrt() + 2.0 / 5f64.sqrt() - 1.0;
        assert!((b - expect).abs() < 1e-15);
        assert!((d - b).abs() < 1e-15);
        assert!((d - 0.526883).abs() < 1e-6);
    }

    #[test]
    fn tropical_unit_box() {
        let (first, second) = tropical_sums(1, &seq()).unwrap();
        let d0 = 2.0 - 2f64.sqrt();
        let d1 = 1.0 + 2f64.sqrt() - 5f64.sqrt();
        assert!((first.value - (d0 + 2.0 * d1)).abs() < 1e-15);
        assert!((first.value - 0.942078).abs() < 1e-6);
        assert!((second.value - (d0 * d0 + 2.0 * d1 * d1)).abs() < 1e-15);
    }

    #[test]
    fn parallel_matches_sequential() {
        let par = EvalOptions::with_threads(4);
        for n in [1, 5, 60, 300] {
            for (a, b) in [
                (
                    theorem1_direct(n, &seq()).unwrap(),
                    theorem1_direct(n, &par).unwrap(),
                ),
                (
                    theorem1_boundary(n, &seq()).unwrap(),
                    theorem1_boundary(n, &par).unwrap(),
                ),
                (
                    theorem2(n, Method::Direct, &seq()).unwrap(),
                    theorem2(n, Method::Direct, &par).unwrap(),
                ),
            ] {
                assert_eq!(a.terms, b.terms);
                assert!((a.value - b.value).abs() <= 1e-12 * a.value.abs());
            }
        }
    }

    #[test]
    fn diagnostics_small_boxes() {
        let d = boundary_diagnostics(1);
        assert_eq!(d.boundary_pairs, 2);
        assert!((d.angle_sum - PI / 2.0).abs() < 1e-15);
        for n in [2, 9, 50] {
            let d = boundary_diagnostics(n);
            assert!((d.angle_sum - PI / 2.0).abs() <= 1e-12);
            assert!((d.child_angle_sum - PI / 2.0).abs() <= 1e-12);
            assert!(d.max_kernel_gap_ratio <= 1.0);
            assert!(d.max_sincos_mismatch <= 1e-15);
        }
    }
}
