//! Exact integer 2-vectors and the pointwise quantities every series term is
//! built from.
//!
//! Coordinates are `i64`; every derived integer (dot, determinant, squared
//! norm) is returned as `i128`, which holds products of coordinates up to
//! 2^31 in magnitude without overflow. Floating quantities are `Real`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::ToPrimitive;

use crate::error::{Error, Result};

/// Floating type used for every non-exact quantity.
pub type Real = f64;

/// 2^53: integers strictly below this convert to `f64` exactly.
const EXACT_F64_LIMIT: i128 = 1 << 53;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticeVector {
    pub a: i64,
    pub b: i64,
}

impl LatticeVector {
    pub const ZERO: LatticeVector = LatticeVector { a: 0, b: 0 };
    pub const E1: LatticeVector = LatticeVector { a: 1, b: 0 };
    pub const E2: LatticeVector = LatticeVector { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn dot(self, other: Self) -> i128 {
        self.a as i128 * other.a as i128 + self.b as i128 * other.b as i128
    }

    /// `det(self other) = self.a * other.b - self.b * other.a`.
    pub fn det(self, other: Self) -> i128 {
        self.a as i128 * other.b as i128 - self.b as i128 * other.a as i128
    }

    pub fn norm_sq(self) -> i128 {
        self.dot(self)
    }

    pub fn norm(self) -> Real {
        (self.norm_sq() as Real).sqrt()
    }

    /// Membership in the half-plane `{b > 0} ∪ {(a, 0) : a > 0}`.
    pub fn in_upper_half_plane(self) -> bool {
        self.b > 0 || (self.b == 0 && self.a > 0)
    }

    /// Both coordinates in `[0, bound]`.
    pub fn in_quadrant_box(self, bound: i64) -> bool {
        (0..=bound).contains(&self.a) && (0..=bound).contains(&self.b)
    }

    /// Both coordinates in `[-bound, bound]`.
    pub fn in_centered_box(self, bound: i64) -> bool {
        self.a.abs() <= bound && self.b.abs() <= bound
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl Add for LatticeVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl Sub for LatticeVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl Neg for LatticeVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul<i64> for LatticeVector {
    type Output = Self;
    fn mul(self, k: i64) -> Self {
        Self::new(self.a * k, self.b * k)
    }
}

/// Ordered pair `(x, y)` with its determinant cached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VectorPair {
    x: LatticeVector,
    y: LatticeVector,
    det: i128,
}

impl VectorPair {
    pub fn new(x: LatticeVector, y: LatticeVector) -> Self {
        Self {
            x,
            y,
            det: x.det(y),
        }
    }

    pub fn x(&self) -> LatticeVector {
        self.x
    }

    pub fn y(&self) -> LatticeVector {
        self.y
    }

    pub fn det(&self) -> i128 {
        self.det
    }

    pub fn sum(&self) -> LatticeVector {
        self.x + self.y
    }

    /// Mediant children `(x, x+y)` and `(x+y, y)`; both keep the parent's determinant.
    pub fn children(&self) -> (VectorPair, VectorPair) {
        let s = self.sum();
        let left = VectorPair {
            x: self.x,
            y: s,
            det: self.det,
        };
        let right = VectorPair {
            x: s,
            y: self.y,
            det: self.det,
        };
        debug_assert_eq!(left.det, left.x.det(left.y));
        debug_assert_eq!(right.det, right.x.det(right.y));
        (left, right)
    }
}

impl fmt::Display for VectorPair {
    /// Dump format: `x.a x.b y.a y.b det`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {}",
            self.x.a, self.x.b, self.y.a, self.y.b, self.det
        )
    }
}

pub fn det(x: LatticeVector, y: LatticeVector) -> i128 {
    x.det(y)
}

pub fn dot(x: LatticeVector, y: LatticeVector) -> i128 {
    x.dot(y)
}

pub fn norm_sq(x: LatticeVector) -> i128 {
    x.norm_sq()
}

pub fn norm(x: LatticeVector) -> Real {
    x.norm()
}

fn require_nonzero(vs: &[LatticeVector], op: &str) -> Result<()> {
    match vs.iter().find(|v| v.is_zero()) {
        Some(_) => Err(Error::Domain(format!("{op}: zero vector argument"))),
        None => Ok(()),
    }
}

fn big(v: i128) -> BigInt {
    BigInt::from(v)
}

fn ratio_to_real(num: i128, den: i128) -> Real {
    if num.abs() < EXACT_F64_LIMIT && den.abs() < EXACT_F64_LIMIT {
        // one IEEE division of two exact operands: a single rounding
        num as Real / den as Real
    } else {
        BigRational::new(big(num), big(den))
            .to_f64()
            .unwrap_or(Real::NAN)
    }
}

/// Exact value of `F(x, y) = (x·y) / (|x|² |y|²)` as a rational.
pub fn f_kernel_exact(x: LatticeVector, y: LatticeVector) -> Result<BigRational> {
    require_nonzero(&[x, y], "f_kernel")?;
    Ok(BigRational::new(
        big(x.dot(y)),
        big(x.norm_sq()) * big(y.norm_sq()),
    ))
}

/// `F(x, y) = (x·y) / (|x|² |y|²)`, the exact rational rounded once.
pub fn f_kernel(x: LatticeVector, y: LatticeVector) -> Result<Real> {
    require_nonzero(&[x, y], "f_kernel")?;
    let num = x.dot(y);
    let value = match x.norm_sq().checked_mul(y.norm_sq()) {
        Some(den) => ratio_to_real(num, den),
        None => BigRational::new(big(num), big(x.norm_sq()) * big(y.norm_sq()))
            .to_f64()
            .unwrap_or(Real::NAN),
    };
    crate::error::finite(value, "f_kernel")
}

/// Exact left side `F(x,y) − F(x+y,y) − F(x,x+y)`.
///
/// The closed form `−2 det(x,y)² / (|x|²|y|²|x+y|²)` is evaluated
/// independently and any disagreement is reported as
/// [`Error::Inconsistent`].
pub fn telescope_residual(x: LatticeVector, y: LatticeVector) -> Result<BigRational> {
    let s = x + y;
    require_nonzero(&[x, y, s], "telescope_residual")?;
    let lhs = f_kernel_exact(x, y)? - f_kernel_exact(s, y)? - f_kernel_exact(x, s)?;
    let d = big(x.det(y));
    let rhs = BigRational::new(
        BigInt::from(-2) * &d * &d,
        big(x.norm_sq()) * big(y.norm_sq()) * big(s.norm_sq()),
    );
    if lhs != rhs {
        return Err(Error::Inconsistent(format!(
            "telescope identity failed at x={x}, y={y}: {lhs} != {rhs}"
        )));
    }
    Ok(lhs)
}

/// `|x| + |y| − |x+y|`, evaluated without cancellation.
///
/// For `x·y ≥ 0` the Lagrange identity `|x|²|y|² − (x·y)² = det²` gives
/// `2 det² / ((|x||y| + x·y)(|x| + |y| + |x+y|))`; otherwise
/// `2(|x||y| − x·y) / (|x| + |y| + |x+y|)` has no cancelling terms.
pub fn defect(x: LatticeVector, y: LatticeVector) -> Real {
    if x.is_zero() || y.is_zero() {
        return 0.0;
    }
    let (nx, ny, ns) = (x.norm(), y.norm(), (x + y).norm());
    let dot = x.dot(y);
    let outer = nx + ny + ns;
    if dot >= 0 {
        let d = x.det(y) as Real;
        2.0 * d * d / ((nx * ny + dot as Real) * outer)
    } else {
        2.0 * (nx * ny - dot as Real) / outer
    }
}

/// Unsigned angle between `x` and `y` in `[0, π]`, via `atan2(|det|, dot)`.
pub fn angle(x: LatticeVector, y: LatticeVector) -> Result<Real> {
    require_nonzero(&[x, y], "angle")?;
    Ok((x.det(y).abs() as Real).atan2(x.dot(y) as Real))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn v(a: i64, b: i64) -> LatticeVector {
        LatticeVector::new(a, b)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(v(1, 0), v(0, 1)), 1);
        assert_eq!(det(v(2, 1), v(1, 1)), 1);
        assert_eq!(det(v(3, 1), v(1, 2)), 5);
    }

    #[test]
    fn dot_and_norm_examples() {
        assert_eq!(dot(v(1, 0), v(0, 1)), 0);
        assert_eq!(norm_sq(v(3, 4)), 25);
        assert_eq!(norm(v(3, 4)), 5.0);
        assert_eq!(dot(v(2, 1), v(1, 1)), 3);
    }

    #[test]
    fn extreme_coordinates_do_not_overflow() {
        let m = 1i64 << 31;
        let x = v(m, -m);
        let y = v(-m, -m);
        assert_eq!(det(x, y), -2 * (m as i128) * (m as i128));
        assert_eq!(dot(x, x), 2 * (m as i128) * (m as i128));
        assert!(f_kernel(x, v(m, m - 1)).unwrap().is_finite());
        assert!(defect(x, y).is_finite());
    }

    #[test]
    fn f_kernel_examples() {
        assert_eq!(f_kernel(v(1, 0), v(0, 1)).unwrap(), 0.0);
        assert_eq!(f_kernel(v(2, 1), v(1, 1)).unwrap(), 0.3);
        assert_eq!(f_kernel(v(1, 0), v(2, 1)).unwrap(), 0.4);
        assert!(matches!(f_kernel(v(0, 0), v(1, 1)), Err(Error::Domain(_))));
    }

    #[test]
    fn f_kernel_large_inputs_round_once() {
        let x = v(3_000_000_007, 5);
        let y = v(2_999_999_999, 7);
        let exact = BigRational::new(
            BigInt::from(x.dot(y)),
            BigInt::from(x.norm_sq()) * BigInt::from(y.norm_sq()),
        );
        assert_eq!(f_kernel(x, y).unwrap(), exact.to_f64().unwrap());
    }

    #[test]
    fn telescope_residual_examples() {
        assert_eq!(telescope_residual(v(1, 0), v(0, 1)).unwrap(), q(-1, 1));
        // |x+y|² = |(3, 2)|² = 13
        assert_eq!(telescope_residual(v(2, 1), v(1, 1)).unwrap(), q(-1, 65));
        assert_eq!(telescope_residual(v(1, 1), v(1, -1)).unwrap(), q(-1, 2));
        assert!(telescope_residual(v(1, 1), v(-1, -1)).is_err());
    }

    #[test]
    fn defect_examples() {
        assert!((defect(v(1, 0), v(0, 1)) - (2.0 - 2f64.sqrt())).abs() < 1e-15);
        assert_eq!(defect(v(1, 0), v(1, 0)), 0.0);
        let expect = 1.0 + 2f64.sqrt() - 5f64.sqrt();
        assert!((defect(v(1, 0), v(1, 1)) - expect).abs() < 1e-15);
        assert!((defect(v(1, 0), v(1, 1)) - 0.178146).abs() < 1e-6);
    }

    #[test]
    fn defect_antiparallel_and_zero() {
        // |x| + |y| − |x+y| = 1 + 2 − 1
        assert_eq!(defect(v(1, 0), v(-2, 0)), 2.0);
        assert_eq!(defect(v(0, 0), v(3, 4)), 0.0);
    }

    #[test]
    fn defect_nearly_collinear_keeps_digits() {
        // long, nearly parallel pair: naive subtraction would lose everything
        let x = v(1_000_000, 999_999);
        let y = v(999_999, 999_998);
        let (nx, ny, ns) = (x.norm(), y.norm(), (x + y).norm());
        let naive = nx + ny - ns;
        let stable = defect(x, y);
        let d = x.det(y) as f64;
        let expect = 2.0 * d * d / ((nx * ny + x.dot(y) as f64) * (nx + ny + ns));
        assert!((stable - expect).abs() <= 1e-15 * expect);
        assert!(stable > 0.0 && stable < 1e-17);
        assert!((naive - stable).abs() >= 0.5 * stable);
    }

    #[test]
    fn angle_examples() {
        assert!((angle(v(1, 0), v(0, 1)).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((angle(v(1, 0), v(1, 1)).unwrap() - PI / 4.0).abs() < 1e-15);
        let a = angle(v(2, 1), v(1, 1)).unwrap();
        assert!((a - (1.0f64 / 3.0).atan()).abs() < 1e-15);
        assert!((a - 0.321751).abs() < 1e-6);
        assert_eq!(angle(v(1, 0), v(-1, 0)).unwrap(), PI);
        assert!(angle(v(0, 0), v(1, 0)).is_err());
    }

    #[test]
    fn children_keep_determinant() {
        let p = VectorPair::new(v(3, 1), v(1, 2));
        let (l, r) = p.children();
        assert_eq!(l.det(), 5);
        assert_eq!(r.det(), 5);
        assert_eq!(l.y(), v(4, 3));
        assert_eq!(r.x(), v(4, 3));
        assert_eq!(p.to_string(), "3 1 1 2 5");
    }
}
