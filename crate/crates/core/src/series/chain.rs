//! The chain of equalities taking the non-collinear part of `D₁,₁,₁(i)` to
//! `π³ζ(3)`: triple sum → det-`n` pair sums → `σ₁(n)/n³` → `ζ(3)ζ(2)`.

use std::f64::consts::PI;

use crate::accumulate::Accumulator;
use crate::error::Result;
use crate::lattice::Real;
use crate::number_theory::{zeta, SigmaTable};

use super::{d111, theorem3, EvalOptions, LatticeShape, Method};

/// Truncations for each link of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainParams {
    /// Coefficient box of the triple sum.
    pub coeff_box: u32,
    /// Largest determinant summed in the pair-sum link.
    pub detn_max: u64,
    /// Coordinate box of each det-`n` pair sum.
    pub detn_box: u32,
    /// Largest `n` in the `σ₁(n)/n³` link.
    pub sigma_max: u64,
}

impl Default for ChainParams {
    fn default() -> Self {
        Self {
            coeff_box: 40,
            detn_max: 12,
            detn_box: 300,
            sigma_max: 10_000,
        }
    }
}

/// Every link of the chain at its own truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZagierChain {
    pub params: ChainParams,
    /// (a) non-collinear part of `D₁,₁,₁(i)`.
    pub triple_sum: Real,
    /// Tail hint of (a).
    pub triple_tail: Real,
    /// (b) `12 Σ_{n ≤ detn_max} Σ_{det n} 1/(|x|²|y|²|x+y|²)`.
    pub pair_sums: Real,
    /// (c) at `detn_max`: `12 Σ_{n ≤ detn_max} (π/2) σ₁(n)/n³`, the limit of (b).
    pub sigma_sum_matched: Real,
    /// (c) at `sigma_max`.
    pub sigma_sum: Real,
    /// (d) `π³ ζ(3)`.
    pub closed_form: Real,
}

impl ZagierChain {
    pub fn pair_vs_sigma(&self) -> Real {
        (self.pair_sums - self.sigma_sum_matched).abs() / self.sigma_sum_matched
    }

    pub fn sigma_vs_closed_form(&self) -> Real {
        (self.sigma_sum - self.closed_form).abs() / self.closed_form
    }

    pub fn triple_vs_closed_form(&self) -> Real {
        (self.triple_sum - self.closed_form).abs() / self.closed_form
    }
}

fn sigma_chain(table: &SigmaTable, n_max: u64) -> Real {
    let mut acc = Accumulator::new(true);
    for n in (1..=n_max as usize).rev() {
        acc.add(table.get(n).unwrap_or(0) as Real / (n as Real).powi(3));
    }
    12.0 * 0.5 * PI * acc.value()
}

pub fn zagier_chain(params: ChainParams, opts: &EvalOptions) -> Result<ZagierChain> {
    let triple = d111(&LatticeShape::I, params.coeff_box, opts)?;
    let mut pairs = Accumulator::new(true);
    for n in 1..=params.detn_max {
        pairs.add(
            theorem3(n, params.detn_box, Method::Direct, opts)?
                .normalized
                .value,
        );
    }
    let table = SigmaTable::new(params.sigma_max.max(params.detn_max) as usize);
    Ok(ZagierChain {
        params,
        triple_sum: triple.noncollinear.value,
        triple_tail: triple.noncollinear.tail_hint.unwrap_or(0.0),
        pair_sums: 12.0 * pairs.value(),
        sigma_sum_matched: sigma_chain(&table, params.detn_max),
        sigma_sum: sigma_chain(&table, params.sigma_max),
        closed_form: PI.powi(3) * zeta(3.0)?,
    })
}
