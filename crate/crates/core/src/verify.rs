//! The verification suite: every closed-form limit and exact finite identity
//! checked at fixed truncations and tolerances.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::fmt;
use std::time::{Duration, Instant};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::enumeration::{
    detn_oracle, detn_pairs, sublattice_classes, tree_cut, unimodular_oracle, MediantWalk,
};
use crate::error::Result;
use crate::lattice::{f_kernel_exact, Real, VectorPair};
use crate::limits;
use crate::number_theory::{dirichlet_sigma_check, zeta, SigmaTable};
use crate::series::{
    boundary_diagnostics, d111, eisenstein, mt_scalar, scalar_kernel_identities, theorem1_boundary,
    theorem1_direct, theorem2, theorem3, theorem4, tropical_sums, EvalOptions, LatticeShape,
    MTIndex, Method,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Reduced truncations where the stated ones are expensive.
    Fast,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub level: Level,
    pub eval: EvalOptions,
    /// Relative perturbation applied to every closed-form reference value.
    /// Zero in normal use; nonzero only to confirm the suite can fail.
    pub tamper: Real,
}

impl VerifyOptions {
    pub fn new(level: Level) -> Self {
        Self {
            level,
            eval: EvalOptions::sequential(),
            tamper: 0.0,
        }
    }
}

/// One measured quantity against its tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub label: String,
    pub residual: Real,
    pub tolerance: Real,
    pub passed: bool,
}

impl fmt::Display for Measurement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "ok" } else { "FAIL" };
        write!(
            f,
            "{}: {:.3e} <= {:.0e} {}",
            self.label, self.residual, self.tolerance, mark
        )
    }
}

/// Outcome of one numbered criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: u32,
    pub title: &'static str,
    pub measurements: Vec<Measurement>,
    pub elapsed: Duration,
}

impl Check {
    fn new(id: u32, title: &'static str) -> Self {
        Self {
            id,
            title,
            measurements: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        !self.measurements.is_empty() && self.measurements.iter().all(|m| m.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Measurement> {
        self.measurements.iter().filter(|m| !m.passed)
    }

    /// Status, title and every measurement on one line.
    pub fn summary(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let parts: Vec<String> = self.measurements.iter().map(|m| m.to_string()).collect();
        format!(
            "{status} [{:>2}] {} | {}",
            self.id,
            self.title,
            parts.join("; ")
        )
    }

    fn record(&mut self, label: impl Into<String>, residual: Real, tolerance: Real) {
        let passed = residual <= tolerance;
        self.measurements.push(Measurement {
            label: label.into(),
            residual,
            tolerance,
            passed,
        });
    }

    fn abs(&mut self, label: impl Into<String>, value: Real, reference: Real, tolerance: Real) {
        self.record(label, (value - reference).abs(), tolerance);
    }

    fn rel(&mut self, label: impl Into<String>, value: Real, reference: Real, tolerance: Real) {
        self.record(
            label,
            (value - reference).abs() / reference.abs(),
            tolerance,
        );
    }

    /// Pass/fail of an exact property, recorded as residual 0 or 1.
    fn holds(&mut self, label: impl Into<String>, ok: bool) {
        self.record(label, if ok { 0.0 } else { 1.0 }, 0.0);
    }

    fn timed(&mut self, label: impl Into<String>, elapsed: Duration, limit_s: Real) {
        self.record(label, elapsed.as_secs_f64(), limit_s);
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} [{:>2}] {}", self.id, self.title)?;
        for m in &self.measurements {
            write!(f, "\n        {m}")?;
        }
        Ok(())
    }
}

pub const CRITERIA: u32 = 12;

/// Runs criterion `id` (1..=12).
pub fn run_check(id: u32, opts: &VerifyOptions) -> Result<Check> {
    let started = Instant::now();
    let r = Refs {
        scale: 1.0 + opts.tamper,
    };
    let mut check = match id {
        1 => theorem1_limit(opts, &r)?,
        2 => telescoping_identity(opts)?,
        3 => angle_partition(&r)?,
        4 => oracle_equivalence(opts)?,
        5 => theorem2_limit(opts, &r)?,
        6 => tropical(opts, &r)?,
        7 => mordell_tornheim(opts, &r)?,
        8 => theorem3_limits(opts, &r)?,
        9 => dirichlet_chain(&r)?,
        10 => zagier(opts, &r)?,
        11 => theorem4_limits(opts, &r)?,
        12 => performance(opts, &r)?,
        _ => {
            return Err(crate::error::Error::Domain(format!(
                "no criterion {id} (1..={CRITERIA})"
            )));
        }
    };
    check.elapsed = started.elapsed();
    Ok(check)
}

pub fn run_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    (1..=CRITERIA).map(|id| run_check(id, opts)).collect()
}

/// Closed-form references, scaled by the tamper factor.
struct Refs {
    scale: Real,
}

impl Refs {
    fn of(&self, v: Real) -> Real {
        v * self.scale
    }
}

fn full(opts: &VerifyOptions) -> bool {
    opts.level == Level::Full
}

fn theorem1_limit(opts: &VerifyOptions, r: &Refs) -> Result<Check> {
    let mut c = Check::new(1, "quadrant sum: 4 * boundary sum -> pi");
    for (n, tol) in [(500, 1e-4), (2000, 1e-5)] {
        let b = theorem1_boundary(n, &opts.eval)?;
        c.abs(format!("|4S - pi| N={n}"), 4.0 * b.value, r.of(PI), tol);
        c.timed(format!("runtime N={n} (s)"), b.elapsed, 2.0);
    }
    Ok(c)
}

fn exact_direct_and_boundary(bound: u32) -> Result<(BigRational, BigRational)> {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut direct = BigRational::zero();
    let mut boundary = BigRational::zero();
    for node in MediantWalk::new(bound) {
        let p = node.pair;
        let den = BigInt::from(p.x().norm_sq())
            * BigInt::from(p.y().norm_sq())
            * BigInt::from(p.sum().norm_sq());
        direct += BigRational::new(BigInt::one(), den);
        if node.boundary {
            let (x, y, s) = (p.x(), p.y(), p.sum());
            boundary += (f_kernel_exact(s, y)? + f_kernel_exact(x, s)?) * &half;
        }
    }
    Ok((direct, boundary))
}

fn telescoping_identity(opts: &VerifyOptions) -> Result<Check> {
    let mut c = Check::new(2, "exact telescoping identity direct = boundary");
    for n in [10, 100, 1000] {
        let d = theorem1_direct(n, &opts.eval)?.value;
        let b = theorem1_boundary(n, &opts.eval)?.value;
        c.rel(format!("rel |direct - boundary| N={n}"), b, d, 1e-12);
    }
    let exact = (1..=20)
        .map(exact_direct_and_boundary)
        .collect::<Result<Vec<_>>>()?;
    c.holds(
        "exact rational equality N=1..20",
        exact.iter().all(|(d, b)| d == b),
    );
    Ok(c)
}

fn angle_partition(r: &Refs) -> Result<Check> {
    let mut c = Check::new(3, "boundary angles partition pi/2");
    for n in [1, 10, 100, 1000] {
        c.abs(
            format!("|sum angle - pi/2| N={n}"),
            boundary_diagnostics(n).angle_sum,
            r.of(PI / 2.0),
            1e-12,
        );
    }
    Ok(c)
}

fn oracle_equivalence(opts: &VerifyOptions) -> Result<Check> {
    let mut c = Check::new(4, "oracle equivalence of tree and det-n enumeration");
    let (tree_max, detn_bounds): (u32, Vec<u32>) = if full(opts) {
        (60, (1..=30).collect())
    } else {
        (30, vec![1, 2, 3, 7, 15, 30])
    };
    let tree_ok = (1..=tree_max).all(|n| {
        let cut = tree_cut(n);
        let tree: HashSet<VectorPair> = cut.interior.iter().copied().collect();
        tree.len() == cut.interior.len()
            && unimodular_oracle(n)
                .map(|o| o.into_iter().collect::<HashSet<_>>() == tree)
                .unwrap_or(false)
    });
    c.holds(format!("tree_cut = oracle, N=1..{tree_max}"), tree_ok);
    let mut detn_ok = true;
    for n in 1..=4 {
        for &bound in &detn_bounds {
            let stream: Vec<_> = detn_pairs(n, bound)?.collect();
            let set: HashSet<_> = stream.iter().copied().collect();
            let oracle: HashSet<_> = detn_oracle(n, bound)?.into_iter().collect();
            detn_ok &= set.len() == stream.len() && set == oracle;
        }
    }
    c.holds(
        format!(
            "detn_pairs = oracle, n<=4, N<={}",
            detn_bounds.last().unwrap_or(&0)
        ),
        detn_ok,
    );
    Ok(c)
}

fn theorem2_limit(opts: &VerifyOptions, r: &Refs) -> Result<Check> {
    let mut c = Check::new(5, "defect sum -> pi/2 - 1");
    let b = theorem2(2000, Method::Boundary, &opts.eval)?;
    c.abs(
        "|boundary - (pi/2 - 1)| N=2000",
        b.value,
        r.of(limits::theorem2()),
        1e-4,
    );
    for n in [10, 100, 1000, 2000] {
        let d = theorem2(n, Method::Direct, &opts.eval)?.value;
        let b = theorem2(n, Method::Boundary, &opts.eval)?.value;
        c.rel(format!("rel |direct - boundary| N={n}"), d, b, 1e-12);
    }
    Ok(c)
}

fn tropical(opts: &VerifyOptions, r: &Refs) -> Result<Check> {
    let mut c = Check::new(6, "tropical sums -> 2 and 2 - pi/2");
    let (first, _) = tropical_sums(4000, &opts.eval)?;
    c.rel(
        "rel |sum defect - 2| N=4000",
        first.value,
        r.of(limits::tropical_defect()),
        1e-2,
    );
    let (_, second) = tropical_sums(1000, &opts.eval)?;
    c.abs(
        "|sum defect^2 - (2 - pi/2)| N=1000",
        second.value,
        r.of(limits::tropical_defect_sq()),
        1e-4,
    );
    Ok(c)
}

fn mordell_tornheim(opts: &VerifyOptions, r: &Refs) -> Result<Check> {
    let mut c = Check::new(7, "Mordell-Tornheim (2,2,2) and scalar kernel identities");
    let idx = |k, n, m| MTIndex::new(k, n, m);
    let coprime = mt_scalar(idx(2, 2, 2)?, 2000, true, &opts.eval)?.value;
    let all = mt_scalar(idx(2, 2, 2)?, 2000, false, &opts.eval)?.value;
    c.abs(
        "|coprime (2,2,2) - 1/3| N=2000",
        coprime,
        r.of(limits::mt_222_coprime()),
        1e-5,
    );
    c.abs(
        "|all-pairs (2,2,2) - zeta(6)/3| N=2000",
        all,
        r.of(limits::mt_222_all()?),
        1e-5,
    );
    let a = mt_scalar(idx(1, 2, 3)?, 2000, true, &opts.eval)?.value;
    let b = mt_scalar(idx(2, 1, 3)?, 2000, true, &opts.eval)?.value;
    c.record(
        "|(2,2,2) - (1,2,3) - (2,1,3)| N=2000",
        (coprime - a - b).abs(),
        2e-5,
    );
    // fixed LCG stream over [1, 10^6]^2
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next = || {
        state = state
            .wrapping_mul(6_364_136_223_846_793_005)
            .wrapping_add(1_442_695_040_888_963_407);
        (state >> 33) % 1_000_000 + 1
    };
    let mut exact = true;
    for _ in 0..10_000 {
        let (m, n) = (next(), next());
        exact &= scalar_kernel_identities(m, n)?.is_exact();
    }
    c.holds("kernel identities exact, 10^4 random (m,n) <= 10^6", exact);
    Ok(c)
}

fn theorem3_limits(opts: &VerifyOptions, r: &Refs) -> Result<Check> {
    let mut c = Check::new(8, "det-n sums -> (pi/2n) sigma1(n)");
    let bound = 500;
    for n in 1..=6 {
        let t = theorem3(n, bound, Method::Direct, &opts.eval)?;
        c.rel(
            format!("rel error n={n} N={bound}"),
            t.weighted.value,
            r.of(limits::theorem3(n)?),
            5e-3,
        );
        if n == 1 {
            c.rel(
                "rel |n=1 - 2 * (pi/4)|",
                t.weighted.value,
                r.of(2.0 * limits::theorem1()),
                5e-3,
            );
            let quad = theorem1_direct(bound, &opts.eval)?.value;
            c.rel(
                format!("rel |n=1 - 2 * quadrant sum| N={bound}"),
                t.weighted.value,
                2.0 * quad,
                5e-3,
            );
        }
    }
    let n_max = if full(opts) { 10_000 } else { 2_000 };
    let table = SigmaTable::new(n_max);
    let mut counts_ok = true;
    for n in 1..=n_max as u64 {
        counts_ok &= sublattice_classes(n)?.len() as u64 == table.get(n as usize).unwrap_or(0);
    }
    c.holds(
        format!("|sublattice classes(n)| = sigma1(n), n<={n_max}"),
        counts_ok,
    );
    Ok(c)
}

fn dirichlet_chain(r: &Refs) -> Result<Check> {
    let mut c = Check::new(9, "Dirichlet series of sigma1 and zeta values");
    let d = dirichlet_sigma_check(3.0, 10_000)?;
    c.abs(
        "|sum sigma1(n)/n^3 - zeta(3)zeta(2)| n<=10^4",
        d.partial,
        r.of(d.closed_form),
        5e-4,
    );
    c.abs("|zeta(2) - pi^2/6|", zeta(2.0)?, r.of(PI * PI / 6.0), 1e-12);
    c.abs(
        "|zeta(4) - pi^4/90|",
        zeta(4.0)?,
        r.of(PI.powi(4) / 90.0),
        1e-12,
    );
    Ok(c)
}

fn zagier(opts: &VerifyOptions, r: &Refs) -> Result<Check> {
    let mut c = Check::new(10, "D111(i) = 2E(i,3) + pi^3 zeta(3)");
    let started = Instant::now();
    let m = if full(opts) { 40 } else { 20 };
    let d = d111(&LatticeShape::I, m, &opts.eval)?;
    let e = eisenstein(&LatticeShape::I, 3.0, 200, &opts.eval)?;
    let target = r.of(2.0 * e.value + limits::zagier()?);
    c.rel(
        format!("rel |total + tail - target| M={m}"),
        d.total.extrapolated(),
        target,
        2e-2,
    );
    let two_e = r.of(2.0 * limits::eisenstein_i3()?);
    c.rel(
        format!("rel |collinear - 2E(i,3)| M={m}"),
        d.collinear.value,
        two_e,
        2e-2,
    );
    let mut partition = true;
    for m in [1, 2, 5, 10] {
        let p = d111(&LatticeShape::I, m, &opts.eval)?;
        partition &= p.total.value == p.collinear.value + p.noncollinear.value
            && p.total.terms == p.collinear.terms + p.noncollinear.terms;
    }
    partition &= d.total.value == d.collinear.value + d.noncollinear.value;
    c.holds("total = collinear + noncollinear exactly", partition);
    c.timed("runtime (s)", started.elapsed(), 60.0);
    Ok(c)
}

fn theorem4_limits(opts: &VerifyOptions, r: &Refs) -> Result<Check> {
    let mut c = Check::new(11, "triple sums -> (6 pi / y^3) zeta(s+3) zeta(s+2)");
    let m = if full(opts) { 40 } else { 20 };
    let z2 = LatticeShape::new(0.0, 2.0)?;
    for s in [0.0, 1.0] {
        let t = theorem4(&LatticeShape::I, s, m, &opts.eval)?;
        c.rel(
            format!("rel error z=i s={s} M={m}"),
            t.value,
            r.of(limits::theorem4(1.0, s)?),
            2e-2,
        );
        let t2 = theorem4(&z2, s, m, &opts.eval)?;
        let ratio = t2.extrapolated() / t.extrapolated();
        c.abs(
            format!("|ratio z=2i / z=i - 1/8| s={s} M={m}"),
            ratio,
            r.of(0.125),
            2e-2,
        );
    }
    let t0 = theorem4(&LatticeShape::I, 0.0, m, &opts.eval)?;
    let d = d111(&LatticeShape::I, m, &opts.eval)?;
    c.holds(
        format!("s=0 equals d111 noncollinear part exactly, M={m}"),
        t0.value == d.noncollinear.value,
    );
    Ok(c)
}

fn performance(opts: &VerifyOptions, r: &Refs) -> Result<Check> {
    let mut c = Check::new(12, "performance: tree vs oracle, boundary at 1e-4");
    let bound = if full(opts) { 200 } else { 120 };
    let started = Instant::now();
    let cut = tree_cut(bound);
    let tree_time = started.elapsed();
    let started = Instant::now();
    let oracle = unimodular_oracle(bound)?;
    let oracle_time = started.elapsed();
    let same = cut.interior.len() == oracle.len()
        && cut.interior.iter().collect::<HashSet<_>>() == oracle.iter().collect::<HashSet<_>>();
    c.holds(format!("identical pair sets N={bound}"), same);
    let speedup = oracle_time.as_secs_f64() / tree_time.as_secs_f64().max(1e-9);
    c.record(
        format!("20 / (oracle time / tree time) N={bound}"),
        20.0 / speedup,
        1.0,
    );
    // smallest ladder box whose boundary sum reaches 1e-4
    let mut reached = None;
    for n in [100, 200, 300, 400, 500, 700, 1000] {
        let b = theorem1_boundary(n, &opts.eval)?;
        if (4.0 * b.value - r.of(PI)).abs() <= 1e-4 {
            reached = Some(b);
            break;
        }
    }
    match reached {
        Some(b) => c.timed(
            format!("boundary at 1e-4, N={} (s)", b.spec.bound()),
            b.elapsed,
            2.0,
        ),
        None => c.holds("boundary reaches 1e-4 by N=1000", false),
    }
    Ok(c)
}
