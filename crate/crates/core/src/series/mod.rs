//! Evaluators for every lattice and scalar series, each by a direct sum over
//! its truncated index set and, where the telescoping gives one, by the
//! exact boundary formula.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::accumulate::Accumulator;
use crate::enumeration::TruncationSpec;
use crate::error::{Error, Result};
use crate::lattice::Real;

mod chain;
mod halfplane;
mod quadrant;
mod scalar;
mod triple;

pub use chain::{zagier_chain, ChainParams, ZagierChain};
pub use halfplane::{theorem3, Theorem3Result};
pub use quadrant::{
    boundary_diagnostics, theorem1_boundary, theorem1_direct, theorem1_oracle, theorem2,
    tropical_sums, BoundaryDiagnostics,
};
pub use scalar::{mt_scalar, scalar_kernel_identities, KernelReport, MTIndex};
pub use triple::{d111, eisenstein, theorem4, D111Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Direct,
    Boundary,
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Boundary => "boundary",
            Method::Oracle => "oracle",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "boundary" => Ok(Method::Boundary),
            "oracle" => Ok(Method::Oracle),
            other => Err(Error::Domain(format!("unknown method '{other}'"))),
        }
    }
}

/// Accumulation and parallelism settings shared by all evaluators.
///
/// `threads = 1` is the sequential reference order. With more threads the
/// index set is split into a fixed number of chunks whose partial sums are
/// merged in chunk order, so the result does not depend on the thread count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    pub compensated: bool,
    pub threads: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            compensated: true,
            threads: 1,
        }
    }
}

impl EvalOptions {
    pub fn sequential() -> Self {
        Self::default()
    }

    pub fn with_threads(threads: usize) -> Self {
        Self {
            threads: threads.max(1),
            ..Self::default()
        }
    }

    pub fn compensated(mut self, on: bool) -> Self {
        self.compensated = on;
        self
    }

    pub fn accumulator(&self) -> Accumulator {
        Accumulator::new(self.compensated)
    }

    pub fn is_parallel(&self) -> bool {
        self.threads > 1
    }

    /// Runs `job(0..jobs)` on a pool of `threads` workers, results in job order.
    pub(crate) fn run_jobs<T, F>(&self, jobs: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
        {
            Ok(pool) => pool.install(|| (0..jobs).into_par_iter().map(&job).collect()),
            Err(_) => (0..jobs).map(job).collect(),
        }
    }
}

/// One evaluated truncation of a series.
#[derive(Debug, Clone, PartialEq)]
pub struct SumResult {
    pub value: Real,
    pub terms: u64,
    pub spec: TruncationSpec,
    pub method: Method,
    /// Heuristic, non-rigorous size of the omitted tail.
    pub tail_hint: Option<Real>,
    pub elapsed: Duration,
}

impl SumResult {
    pub(crate) fn finish(
        value: Real,
        terms: u64,
        spec: TruncationSpec,
        method: Method,
        tail_hint: Option<Real>,
        started: Instant,
    ) -> Result<Self> {
        if !value.is_finite() || tail_hint.is_some_and(|t| !t.is_finite()) {
            return Err(Error::NonFinite("series evaluation"));
        }
        Ok(Self {
            value,
            terms,
            spec,
            method,
            tail_hint,
            elapsed: started.elapsed(),
        })
    }

    /// `value + tail_hint`, or `value` when no hint is available.
    pub fn extrapolated(&self) -> Real {
        self.value + self.tail_hint.unwrap_or(0.0)
    }
}

/// The modulus `z = re + i·im`, `im > 0`, of the lattice `ℤz + ℤ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeShape {
    pub re: Real,
    pub im: Real,
}

impl LatticeShape {
    pub const I: LatticeShape = LatticeShape { re: 0.0, im: 1.0 };

    pub fn new(re: Real, im: Real) -> Result<Self> {
        if !(im > 0.0) || !re.is_finite() || !im.is_finite() {
            return Err(Error::Domain(format!(
                "lattice shape needs finite re and im > 0, got {re} + {im}i"
            )));
        }
        Ok(Self { re, im })
    }

    /// `|m·z + n|²`.
    pub fn norm_sq(&self, m: i64, n: i64) -> Real {
        let (m, n) = (m as Real, n as Real);
        let u = m * self.re + n;
        let v = m * self.im;
        u * u + v * v
    }
}

impl fmt::Display for LatticeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.re, self.im)
    }
}
