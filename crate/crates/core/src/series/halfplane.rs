//! Sums over half-plane pairs of a fixed determinant `n`.

use std::f64::consts::PI;
use std::time::Instant;

use crate::accumulate::Accumulator;
use crate::enumeration::{detn_oracle, detn_pairs, detn_pairs_rows, is_axis_ray, TruncationSpec};
use crate::error::{Error, Result};
use crate::lattice::{Real, VectorPair};
use crate::number_theory::sigma1;

use super::{EvalOptions, Method, SumResult};

/// Both normalisations of the det-`n` sum plus the share of pairs with a
/// vector on the positive horizontal axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Theorem3Result {
    pub n: u64,
    /// `Σ n²/(|x|²|y|²|x+y|²)`, limit `(π/2n)·σ₁(n)`.
    pub weighted: SumResult,
    /// `Σ 1/(|x|²|y|²|x+y|²)`, limit `(π/2)·σ₁(n)/n³`.
    pub normalized: SumResult,
    /// Part of `weighted` coming from axis-ray pairs.
    pub axis_ray_subtotal: Real,
    pub axis_ray_terms: u64,
}

impl Theorem3Result {
    pub fn limit(n: u64) -> Result<Real> {
        Ok(PI / (2.0 * n as Real) * sigma1(n)? as Real)
    }
}

fn term(p: &VectorPair) -> Real {
    1.0 / (p.x().norm_sq() as Real * p.y().norm_sq() as Real * p.sum().norm_sq() as Real)
}

#[derive(Clone, Copy)]
struct Partial {
    all: Accumulator,
    axis: Accumulator,
    terms: u64,
    axis_terms: u64,
}

impl Partial {
    fn new(opts: &EvalOptions) -> Self {
        Self {
            all: opts.accumulator(),
            axis: opts.accumulator(),
            terms: 0,
            axis_terms: 0,
        }
    }

    fn add(&mut self, p: &VectorPair) {
        let t = term(p);
        self.all.add(t);
        self.terms += 1;
        if is_axis_ray(p) {
            self.axis.add(t);
            self.axis_terms += 1;
        }
    }

    fn merge(&mut self, other: &Partial) {
        self.all.merge(&other.all);
        self.axis.merge(&other.axis);
        self.terms += other.terms;
        self.axis_terms += other.axis_terms;
    }
}

/// Det-`n` sum over half-plane pairs in `[−N, N]²`. `Method::Oracle` sums the
/// exhaustive det-filter set instead (`N ≤ 60`).
pub fn theorem3(n: u64, bound: u32, method: Method, opts: &EvalOptions) -> Result<Theorem3Result> {
    if n == 0 {
        return Err(Error::Domain("theorem3: n must be >= 1".into()));
    }
    let started = Instant::now();
    let mut total = Partial::new(opts);
    match method {
        Method::Oracle => detn_oracle(n, bound)?.iter().for_each(|p| total.add(p)),
        Method::Boundary => {
            return Err(Error::Domain("theorem3 has no boundary evaluator".into()));
        }
        Method::Direct if opts.is_parallel() => {
            let rows = opts.run_jobs(bound as usize + 1, |row| {
                let mut part = Partial::new(opts);
                let r = row as i64;
                if let Ok(stream) = detn_pairs_rows(n, bound, r..=r) {
                    stream.for_each(|p| part.add(&p));
                }
                part
            });
            rows.iter().for_each(|row| total.merge(row));
        }
        Method::Direct => detn_pairs(n, bound)?.for_each(|p| total.add(&p)),
    }
    let scale = (n as Real) * (n as Real);
    let spec = TruncationSpec::CoordBox(bound);
    let normalized = total.all.value();
    Ok(Theorem3Result {
        n,
        weighted: SumResult::finish(scale * normalized, total.terms, spec, method, None, started)?,
        normalized: SumResult::finish(normalized, total.terms, spec, method, None, started)?,
        axis_ray_subtotal: scale * total.axis.value(),
        axis_ray_terms: total.axis_terms,
    })
}
