//! gcd, divisors, σ₁, ζ and the Dirichlet series `Σ σ₁(n)/nˢ = ζ(s)ζ(s−1)`.

use crate::accumulate::Accumulator;
use crate::error::{finite, Error, Result};
use crate::lattice::Real;

/// Greatest common divisor, `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> u64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended Euclid: `(g, s, t)` with `s·a + t·b = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    (r0 as i64, s0 as i64, t0 as i64)
}

/// Positive divisors of `n`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorTable {
    pub n: u64,
    pub divisors: Vec<u64>,
}

impl DivisorTable {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("divisors of 0".into()));
        }
        let mut small = Vec::new();
        let mut large = Vec::new();
        let mut d = 1u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                small.push(d);
                if d * d != n {
                    large.push(n / d);
                }
            }
            d += 1;
        }
        small.extend(large.into_iter().rev());
        Ok(Self { n, divisors: small })
    }

    pub fn sigma1(&self) -> u64 {
        self.divisors.iter().sum()
    }
}

/// Sum of divisors by trial division up to `√n`.
pub fn sigma1(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("sigma1(0) is undefined".into()));
    }
    let mut total = 0u64;
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += d;
            if d * d != n {
                total += n / d;
            }
        }
        d += 1;
    }
    Ok(total)
}

/// σ₁(n) for every `n ≤ limit`, built by a linear sieve. Immutable once built.
#[derive(Debug, Clone)]
pub struct SigmaTable {
    sigma: Vec<u64>,
}

impl SigmaTable {
    pub fn new(limit: usize) -> Self {
        let mut sigma = vec![0u64; limit + 1];
        // power of the least prime factor dividing i, and 1 + p + ... + that power
        let mut lpf_pow = vec![0u64; limit + 1];
        let mut lpf_sum = vec![0u64; limit + 1];
        let mut primes: Vec<usize> = Vec::new();
        if limit >= 1 {
            sigma[1] = 1;
        }
        for i in 2..=limit {
            if lpf_pow[i] == 0 {
                primes.push(i);
                lpf_pow[i] = i as u64;
                lpf_sum[i] = 1 + i as u64;
                sigma[i] = 1 + i as u64;
            }
            for &p in &primes {
                let ip = i * p;
                if ip > limit {
                    break;
                }
                if i % p == 0 {
                    lpf_pow[ip] = lpf_pow[i] * p as u64;
                    lpf_sum[ip] = lpf_sum[i] + lpf_pow[ip];
                    let rest = i / lpf_pow[i] as usize;
                    sigma[ip] = sigma[rest] * lpf_sum[ip];
                    break;
                }
                lpf_pow[ip] = p as u64;
                lpf_sum[ip] = 1 + p as u64;
                sigma[ip] = sigma[i] * (1 + p as u64);
            }
        }
        Self { sigma }
    }

    pub fn limit(&self) -> usize {
        self.sigma.len().saturating_sub(1)
    }

    /// σ₁(n); `None` for `n = 0` or beyond the table.
    pub fn get(&self, n: usize) -> Option<u64> {
        match n {
            0 => None,
            _ => self.sigma.get(n).copied(),
        }
    }
}

const BERNOULLI_2: Real = 1.0 / 6.0;
const BERNOULLI_4: Real = -1.0 / 30.0;
const BERNOULLI_6: Real = 1.0 / 42.0;
const ZETA_TARGET: Real = 1e-14;

/// ζ(s) by direct summation of `n < cutoff` plus the Euler–Maclaurin tail
/// through the B₄ term.
pub fn zeta_with_cutoff(s: Real, cutoff: u64) -> Result<Real> {
    if !(s > 1.0) {
        return Err(Error::Refused(format!(
            "zeta({s}): series diverges for s <= 1"
        )));
    }
    if cutoff < 2 {
        return Err(Error::Domain("zeta cutoff must be at least 2".into()));
    }
    // small terms first
    let mut acc = Accumulator::new(true);
    for n in (1..cutoff).rev() {
        acc.add((n as Real).powf(-s));
    }
    let n = cutoff as Real;
    let n_s = n.powf(-s);
    acc.add(n * n_s / (s - 1.0));
    acc.add(0.5 * n_s);
    acc.add(BERNOULLI_2 / 2.0 * s * n_s / n);
    acc.add(BERNOULLI_4 / 24.0 * s * (s + 1.0) * (s + 2.0) * n_s / (n * n * n));
    finite(acc.value(), "zeta")
}

/// Size of the first omitted Euler–Maclaurin term at `cutoff`.
fn zeta_omitted_term(s: Real, cutoff: Real) -> Real {
    BERNOULLI_6 / 720.0 * s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * cutoff.powf(-s - 5.0)
}

/// Cutoff making the first omitted Euler–Maclaurin term below `1e-14`
/// (ζ(s) > 1, so this bounds the relative size too).
pub fn zeta_cutoff(s: Real) -> u64 {
    let mut cutoff = 8u64;
    while zeta_omitted_term(s, cutoff as Real) > ZETA_TARGET {
        cutoff += cutoff / 2;
    }
    cutoff
}

/// Riemann ζ(s) for real `s > 1`, to about 1e-14 relative.
pub fn zeta(s: Real) -> Result<Real> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::Refused(format!(
            "zeta({s}): series diverges for s <= 1"
        )));
    }
    zeta_with_cutoff(s, zeta_cutoff(s))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirichletReport {
    pub s: Real,
    pub n_max: u64,
    /// `Σ_{n ≤ n_max} σ₁(n)/nˢ`
    pub partial: Real,
    /// `ζ(s) ζ(s−1)`
    pub closed_form: Real,
    pub residual: Real,
    /// Heuristic size of the omitted tail, `ζ(s−1) · n_max^{2−s} / (s−2)`.
    pub tail_estimate: Real,
}

/// Compares the truncated Dirichlet series of σ₁ with `ζ(s)ζ(s−1)`.
pub fn dirichlet_sigma_check(s: Real, n_max: u64) -> Result<DirichletReport> {
    if !(s > 2.0) {
        return Err(Error::Refused(format!(
            "dirichlet series of sigma1 diverges at s = {s}"
        )));
    }
    if n_max == 0 {
        return Err(Error::Domain("n_max must be positive".into()));
    }
    let table = SigmaTable::new(n_max as usize);
    let mut acc = Accumulator::new(true);
    for n in (1..=n_max as usize).rev() {
        acc.add(table.sigma[n] as Real * (n as Real).powf(-s));
    }
    let partial = acc.value();
    let zeta_shift = zeta(s - 1.0)?;
    let closed_form = zeta(s)? * zeta_shift;
    Ok(DirichletReport {
        s,
        n_max,
        partial,
        closed_form,
        residual: (partial - closed_form).abs(),
        tail_estimate: zeta_shift * (n_max as Real).powf(2.0 - s) / (s - 2.0),
    })
}
