//! Mordell–Tornheim series over coprime positive pairs and the scalar
//! splitting identities they rest on.

use std::time::Instant;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;

use crate::enumeration::{coprime_pairs, TruncationSpec};
use crate::error::{Error, Result};
use crate::lattice::Real;
use crate::number_theory::gcd;

use super::{EvalOptions, Method, SumResult};

/// Exponents of `(k, n, m) = Σ 1/(bᵏ dⁿ (b+d)ᵐ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MTIndex {
    pub k: u32,
    pub n: u32,
    pub m: u32,
}

impl MTIndex {
    /// Refuses exponents for which the double series diverges.
    pub fn new(k: u32, n: u32, m: u32) -> Result<Self> {
        if k + m < 2 || n + m < 2 || k + n + m < 3 {
            return Err(Error::Refused(format!(
                "({k},{n},{m}) does not converge absolutely"
            )));
        }
        Ok(Self { k, n, m })
    }

    fn term(&self, b: u32, d: u32) -> Real {
        let (b, d) = (b as Real, d as Real);
        1.0 / (b.powi(self.k as i32) * d.powi(self.n as i32) * (b + d).powi(self.m as i32))
    }
}

/// Truncated `(k, n, m)` over positive `b, d ≤ N`, coprime pairs only or all.
pub fn mt_scalar(
    idx: MTIndex,
    bound: u32,
    coprime_only: bool,
    opts: &EvalOptions,
) -> Result<SumResult> {
    let idx = MTIndex::new(idx.k, idx.n, idx.m)?;
    let started = Instant::now();
    let (value, terms) = if opts.is_parallel() {
        let rows = opts.run_jobs(bound as usize, |i| {
            let b = i as u32 + 1;
            let mut acc = opts.accumulator();
            let mut n = 0u64;
            for d in (1..=bound).filter(|&d| !coprime_only || gcd(b as i64, d as i64) == 1) {
                acc.add(idx.term(b, d));
                n += 1;
            }
            (acc, n)
        });
        let mut acc = opts.accumulator();
        let mut terms = 0;
        for (row, n) in rows {
            acc.merge(&row);
            terms += n;
        }
        (acc.value(), terms)
    } else {
        let mut acc = opts.accumulator();
        let mut terms = 0u64;
        let mut visit = |(b, d): (u32, u32)| {
            acc.add(idx.term(b, d));
            terms += 1;
        };
        if coprime_only {
            coprime_pairs(bound).for_each(&mut visit);
        } else {
            (1..=bound)
                .flat_map(|b| (1..=bound).map(move |d| (b, d)))
                .for_each(&mut visit);
        }
        (acc.value(), terms)
    };
    SumResult::finish(
        value,
        terms,
        TruncationSpec::CoordBox(bound),
        Method::Direct,
        None,
        started,
    )
}

/// Exact residuals of `1/(mn) = 1/((m+n)n) + 1/(m(m+n))` and of
/// `G(m,n) − G(m+n,n) − G(m,m+n) = 2/(m²n²)` with
/// `G(m,n) = 2/(m³n) + 1/(m²n²) + 2/(mn³)`. Both are zero for every `m, n ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelReport {
    pub split_residual: BigRational,
    pub g_residual: BigRational,
}

impl KernelReport {
    pub fn is_exact(&self) -> bool {
        self.split_residual.is_zero() && self.g_residual.is_zero()
    }
}

fn recip(den: BigInt) -> BigRational {
    BigRational::new(BigInt::from(1), den)
}

fn g_kernel(m: &BigInt, n: &BigInt) -> BigRational {
    let two = BigInt::from(2);
    recip(m * m * m * n) * &two + recip(m * m * n * n) + recip(m * n * n * n) * &two
}

pub fn scalar_kernel_identities(m: u64, n: u64) -> Result<KernelReport> {
    if m == 0 || n == 0 {
        return Err(Error::Domain(
            "scalar kernel identities need m, n >= 1".into(),
        ));
    }
    let (m, n) = (BigInt::from(m), BigInt::from(n));
    let s = &m + &n;
    let split = recip(&m * &n) - recip(&s * &n) - recip(&m * &s);
    let g = g_kernel(&m, &n)
        - g_kernel(&s, &n)
        - g_kernel(&m, &s)
        - recip(&m * &m * &n * &n) * BigInt::from(2);
    Ok(KernelReport {
        split_residual: split,
        g_residual: g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_guard() {
        assert!(MTIndex::new(2, 2, 2).is_ok());
        assert!(MTIndex::new(1, 2, 3).is_ok());
        assert!(MTIndex::new(1, 1, 0).is_err());
        assert!(MTIndex::new(0, 2, 1).is_err());
        assert!(MTIndex::new(1, 1, 1).is_ok());
        let bad = MTIndex { k: 1, n: 0, m: 1 };
        assert!(matches!(
            mt_scalar(bad, 10, true, &EvalOptions::default()),
            Err(Error::Refused(_))
        ));
    }

    #[test]
    fn small_truncation_by_hand() {
        // coprime pairs in [1,2]²: (1,1), (1,2), (2,1)
        let idx = MTIndex::new(2, 2, 2).unwrap();
        let r = mt_scalar(idx, 2, true, &EvalOptions::default()).unwrap();
        let expect = 1.0 / 4.0 + 2.0 / (4.0 * 9.0);
        assert!((r.value - expect).abs() < 1e-16);
        assert_eq!(r.terms, 3);
        let all = mt_scalar(idx, 2, false, &EvalOptions::default()).unwrap();
        assert!((all.value - (expect + 1.0 / (16.0 * 16.0))).abs() < 1e-16);
    }

    #[test]
    fn recurrence_holds_termwise() {
        let opts = EvalOptions::default();
        let whole = mt_scalar(MTIndex::new(2, 2, 2).unwrap(), 300, true, &opts).unwrap();
        let a = mt_scalar(MTIndex::new(1, 2, 3).unwrap(), 300, true, &opts).unwrap();
        let b = mt_scalar(MTIndex::new(2, 1, 3).unwrap(), 300, true, &opts).unwrap();
        assert!((whole.value - a.value - b.value).abs() < 1e-14);
    }

    #[test]
    fn parallel_rows_match() {
        let idx = MTIndex::new(2, 2, 2).unwrap();
        for coprime in [true, false] {
            let s = mt_scalar(idx, 400, coprime, &EvalOptions::default()).unwrap();
            let p = mt_scalar(idx, 400, coprime, &EvalOptions::with_threads(3)).unwrap();
            assert_eq!(s.terms, p.terms);
            assert!((s.value - p.value).abs() <= 1e-12 * s.value);
        }
    }

    #[test]
    fn kernel_identities_examples() {
        assert!(scalar_kernel_identities(1, 1).unwrap().is_exact());
        assert!(scalar_kernel_identities(3, 5).unwrap().is_exact());
        assert!(scalar_kernel_identities(0, 5).is_err());
    }
}
