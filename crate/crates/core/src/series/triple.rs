//! Lattice sums over `ℤz + ℤ`: the Eisenstein series, the zero-sum triple
//! sum `D₁,₁,₁` and its determinant-weighted variant.

use std::f64::consts::PI;
use std::time::Instant;

use crate::accumulate::Accumulator;
use crate::enumeration::{triple_stream, triple_stream_rows, Triple, TruncationSpec};
use crate::error::{Error, Result};
use crate::lattice::Real;

use super::{EvalOptions, LatticeShape, Method, SumResult};

/// `|m·z + n|²` for all coefficients in `[−R, R]²`.
struct NormTable {
    radius: i64,
    side: usize,
    values: Vec<Real>,
}

impl NormTable {
    fn new(shape: &LatticeShape, radius: i64) -> Self {
        let side = (2 * radius + 1) as usize;
        let mut values = Vec::with_capacity(side * side);
        for m in -radius..=radius {
            for n in -radius..=radius {
                values.push(shape.norm_sq(m, n));
            }
        }
        Self {
            radius,
            side,
            values,
        }
    }

    #[inline]
    fn get(&self, m: i64, n: i64) -> Real {
        self.values[(m + self.radius) as usize * self.side + (n + self.radius) as usize]
    }
}

/// Partial sums of a triple series, split by the collinear tag.
#[derive(Clone, Copy)]
struct TripleSums {
    collinear: Accumulator,
    noncollinear: Accumulator,
    collinear_terms: u64,
    noncollinear_terms: u64,
}

impl TripleSums {
    fn new(opts: &EvalOptions) -> Self {
        Self {
            collinear: opts.accumulator(),
            noncollinear: opts.accumulator(),
            collinear_terms: 0,
            noncollinear_terms: 0,
        }
    }

    fn merge(&mut self, other: &TripleSums) {
        self.collinear.merge(&other.collinear);
        self.noncollinear.merge(&other.noncollinear);
        self.collinear_terms += other.collinear_terms;
        self.noncollinear_terms += other.noncollinear_terms;
    }
}

/// Sums `numerator(t) / (|ω₁|²|ω₂|²|ω₃|²)` over the coefficient box;
/// triples with `numerator = None` are skipped.
fn triple_sums<F>(shape: &LatticeShape, bound: u32, opts: &EvalOptions, numerator: F) -> TripleSums
where
    F: Fn(&Triple) -> Option<Real> + Sync,
{
    let table = NormTable::new(shape, 2 * bound as i64);
    let fold = |sums: &mut TripleSums, t: Triple| {
        let Some(num) = numerator(&t) else { return };
        let value = num
            / (table.get(t.w1.a, t.w1.b) * table.get(t.w2.a, t.w2.b) * table.get(t.w3.a, t.w3.b));
        if t.collinear {
            sums.collinear.add(value);
            sums.collinear_terms += 1;
        } else {
            sums.noncollinear.add(value);
            sums.noncollinear_terms += 1;
        }
    };
    let mut total = TripleSums::new(opts);
    if !opts.is_parallel() {
        triple_stream(bound).for_each(|t| fold(&mut total, t));
        return total;
    }
    let b = bound as i64;
    let rows = opts.run_jobs(2 * bound as usize + 1, |i| {
        let row = i as i64 - b;
        let mut part = TripleSums::new(opts);
        triple_stream_rows(bound, row..=row).for_each(|t| fold(&mut part, t));
        part
    });
    rows.iter().for_each(|row| total.merge(row));
    total
}

/// `Σ' 1/|ω|²` over the coefficient box.
fn inverse_square_sum(shape: &LatticeShape, bound: u32) -> Real {
    let b = bound as i64;
    let mut acc = Accumulator::new(true);
    for m in -b..=b {
        for n in -b..=b {
            if m != 0 || n != 0 {
                acc.add(1.0 / shape.norm_sq(m, n));
            }
        }
    }
    acc.value()
}

/// Leading-order tail of `Σ' 1/|ω₁ω₂ω₃|²` outside the coefficient box.
///
/// The omitted terms are dominated by one of the three vectors being short
/// while the other two leave the box; each of the three cases contributes
/// `Σ'_{box} 1/|ω|² · Σ_{outside} 1/|ω|⁴ ≈ Σ'_{box} 1/|ω|² · π²/(4M²y²)`,
/// with the box replaced by a disc of the same area `4M²y`.
fn triple_tail_estimate(shape: &LatticeShape, bound: u32) -> Real {
    let m = bound as Real;
    3.0 * inverse_square_sum(shape, bound) * PI * PI / (4.0 * m * m * shape.im * shape.im)
}

/// `E(z, s) = ½ Σ' yˢ / |mz + n|^{2s}` over `|m|, |n| ≤ M`.
///
/// Tail hint: the integral of `yˢ r^{−2s}` outside a disc with the box's
/// area, `½ π y^{s−1} R^{2−2s}/(s−1)` with `πR² = 4M²y`.
pub fn eisenstein(
    shape: &LatticeShape,
    s: Real,
    bound: u32,
    opts: &EvalOptions,
) -> Result<SumResult> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::Refused(format!(
            "eisenstein: s = {s} does not converge (need s > 1)"
        )));
    }
    let shape = LatticeShape::new(shape.re, shape.im)?;
    let started = Instant::now();
    let b = bound as i64;
    let y = shape.im;
    let row = |m: i64| {
        let mut acc = opts.accumulator();
        let mut terms = 0u64;
        for n in -b..=b {
            if m != 0 || n != 0 {
                acc.add((y / shape.norm_sq(m, n)).powf(s));
                terms += 1;
            }
        }
        (acc, terms)
    };
    let rows: Vec<_> = if opts.is_parallel() {
        opts.run_jobs(2 * bound as usize + 1, |i| row(i as i64 - b))
    } else {
        (-b..=b).map(row).collect()
    };
    let mut acc = opts.accumulator();
    let mut terms = 0;
    for (r, t) in &rows {
        acc.merge(r);
        terms += t;
    }
    let tail = if bound == 0 {
        None
    } else {
        let r_sq = 4.0 * (bound as Real).powi(2) * y / PI;
        Some(0.5 * PI * y.powf(s - 1.0) * r_sq.powf(1.0 - s) / (s - 1.0))
    };
    SumResult::finish(
        0.5 * acc.value(),
        terms,
        TruncationSpec::CoeffBox(bound),
        Method::Direct,
        tail,
        started,
    )
}

/// `D₁,₁,₁(z)` truncated on `(ω₁, ω₂)` and split into collinear and
/// non-collinear triples. `total.value` is the sum of the two parts.
#[derive(Debug, Clone, PartialEq)]
pub struct D111Result {
    pub total: SumResult,
    pub collinear: SumResult,
    pub noncollinear: SumResult,
}

pub fn d111(shape: &LatticeShape, bound: u32, opts: &EvalOptions) -> Result<D111Result> {
    let shape = LatticeShape::new(shape.re, shape.im)?;
    let started = Instant::now();
    let y3 = shape.im.powi(3);
    let sums = triple_sums(&shape, bound, opts, |_| Some(y3));
    let spec = TruncationSpec::CoeffBox(bound);
    let tail = (bound > 0).then(|| y3 * triple_tail_estimate(&shape, bound));
    let (c, nc) = (sums.collinear.value(), sums.noncollinear.value());
    Ok(D111Result {
        total: SumResult::finish(
            c + nc,
            sums.collinear_terms + sums.noncollinear_terms,
            spec,
            Method::Direct,
            tail,
            started,
        )?,
        collinear: SumResult::finish(c, sums.collinear_terms, spec, Method::Direct, None, started)?,
        noncollinear: SumResult::finish(
            nc,
            sums.noncollinear_terms,
            spec,
            Method::Direct,
            tail,
            started,
        )?,
    })
}

/// `Σ' |det(ω₁ ω₂)|^{−s} / |ω₁ω₂ω₃|²` over non-collinear triples, with the
/// integer coefficient determinant `m₁n₂ − m₂n₁`.
///
/// Tail hint: at `s = 0` the same leading-order estimate as [`d111`];
/// for `s > 0` a Richardson step against the box `M/2`, assuming the tail
/// decays like `M^{−2−min(s,1)}`.
pub fn theorem4(
    shape: &LatticeShape,
    s: Real,
    bound: u32,
    opts: &EvalOptions,
) -> Result<SumResult> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("theorem4: s = {s} must be >= 0")));
    }
    let shape = LatticeShape::new(shape.re, shape.im)?;
    let started = Instant::now();
    let weighted = |bound: u32| {
        // |m₁n₂ − m₂n₁| ≤ 2M²
        let max_det = 2 * (bound as usize).pow(2);
        let weights: Vec<Real> = (0..=max_det).map(|d| (d as Real).powf(-s)).collect();
        triple_sums(&shape, bound, opts, |t| {
            (!t.collinear).then(|| weights[t.coefficient_det().unsigned_abs() as usize])
        })
    };
    let sums = weighted(bound);
    let value = sums.noncollinear.value();
    let tail = if bound == 0 {
        None
    } else if s == 0.0 {
        Some(triple_tail_estimate(&shape, bound))
    } else if bound >= 2 {
        let coarse = weighted(bound / 2).noncollinear.value();
        let ratio = bound as Real / (bound / 2) as Real;
        Some((value - coarse) / (ratio.powf(2.0 + s.min(1.0)) - 1.0))
    } else {
        None
    };
    SumResult::finish(
        value,
        sums.noncollinear_terms,
        TruncationSpec::CoeffBox(bound),
        Method::Direct,
        tail,
        started,
    )
}
