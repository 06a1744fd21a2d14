//! Closed-form limits of every series, the reference values reports and
//! checks compare against.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lattice::Real;
use crate::number_theory::{sigma1, zeta};

/// `Σ_A 1/(|x|²|y|²|x+y|²) = π/4`.
pub fn theorem1() -> Real {
    PI / 4.0
}

/// `Σ_A defect/(|x||y||x+y|) = π/2 − 1`.
pub fn theorem2() -> Real {
    PI / 2.0 - 1.0
}

pub fn tropical_defect() -> Real {
    2.0
}

pub fn tropical_defect_sq() -> Real {
    2.0 - PI / 2.0
}

/// `(2,2,2)` over coprime pairs.
pub fn mt_222_coprime() -> Real {
    1.0 / 3.0
}

/// `Σ_{b,d ≥ 1} 1/(b²d²(b+d)²) = ζ(6)/3`.
pub fn mt_222_all() -> Result<Real> {
    Ok(zeta(6.0)? / 3.0)
}

/// `(π/2n) σ₁(n)`.
pub fn theorem3(n: u64) -> Result<Real> {
    Ok(PI / (2.0 * n as Real) * sigma1(n)? as Real)
}

/// `(π/2) σ₁(n)/n³`.
pub fn theorem3_normalized(n: u64) -> Result<Real> {
    Ok(theorem3(n)? / (n as Real * n as Real))
}

/// `E(i, 3) = ½ Σ' (m²+n²)^{−3} = ½ · 4ζ(3)β(3)` with `β(3) = π³/32`.
pub fn eisenstein_i3() -> Result<Real> {
    Ok(PI.powi(3) * zeta(3.0)? / 16.0)
}

/// `2E(z, 3) + π³ζ(3)` given `E(z, 3)`.
pub fn d111(eisenstein_3: Real) -> Result<Real> {
    Ok(2.0 * eisenstein_3 + PI.powi(3) * zeta(3.0)?)
}

/// `(6π/y³) ζ(s+3) ζ(s+2)`.
pub fn theorem4(im: Real, s: Real) -> Result<Real> {
    if !(im > 0.0) || !(s >= 0.0) {
        return Err(Error::Domain(format!(
            "theorem4 limit needs y > 0, s >= 0 (got {im}, {s})"
        )));
    }
    Ok(6.0 * PI / im.powi(3) * zeta(s + 3.0)? * zeta(s + 2.0)?)
}

/// `π³ ζ(3)`.
pub fn zagier() -> Result<Real> {
    Ok(PI.powi(3) * zeta(3.0)?)
}

/// `ζ(s) ζ(s−1)`.
pub fn dirichlet_sigma(s: Real) -> Result<Real> {
    Ok(zeta(s)? * zeta(s - 1.0)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert!((zagier().unwrap() - 37.27125).abs() < 1e-4);
        assert!((d111(eisenstein_i3().unwrap()).unwrap() - 41.930).abs() < 1e-3);
        // 6π ζ(3) ζ(2) = π³ ζ(3)
        assert!((theorem4(1.0, 0.0).unwrap() - zagier().unwrap()).abs() < 1e-12);
        assert!((theorem4(2.0, 1.0).unwrap() * 8.0 - theorem4(1.0, 1.0).unwrap()).abs() < 1e-12);
        assert!((theorem3(6).unwrap() - PI).abs() < 1e-15);
        assert!((mt_222_all().unwrap() - PI.powi(6) / 2835.0).abs() < 1e-14);
    }
}
