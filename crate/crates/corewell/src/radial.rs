//! Region solutions of the reduced radial equation and the matching
//! determinant.
//!
//! The equation in both regions is G'' - [Lambda/r^2] G - eps G = 0 with
//! Lambda = kappa(kappa-1) + f(U0) = a(a-1). The regular core solution is
//! r^a e^{-br} M(a, 2a; 2br) with b = sqrt(eps1); when eps1 < 0 the same
//! formula continues to b = iq and its real part is taken, which the
//! symmetric-parameter Bessel reduction evaluates without complex
//! arithmetic. The shell solution swaps M for the decaying companion U.
//! Eigenvalues are the zeros of the determinant D built from the matching
//! pair G1 = G2 and (1/m1) G1' = (1/m2) G2' at r0.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{self, HypergeometricArgs};
use crate::well::{
    bound_window, region_energy, BranchExponent, Matching, Region, RegionEnergy, WellConfig,
};

/// Unnormalized G(r) and dG/dr in one region at one trial energy.
#[derive(Clone, Copy, Debug)]
pub struct RadialSolution {
    pub value: f64,
    pub derivative: f64,
    pub region: Region,
}

/// The matching data at one trial energy.
#[derive(Clone, Copy, Debug)]
pub struct MatchingPoint {
    pub e: f64,
    /// (1/m1) g1' g2 - (1/m2) g2' g1 under weighted matching, the unweighted
    /// analogue under plain matching.
    pub d: f64,
    pub g1: RadialSolution,
    pub g2: RadialSolution,
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("radius must be positive, got r = {r}")));
    }
    Ok(())
}

fn check_exponent(a: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Domain(format!(
            "inadmissible exponent a = {a} reached a radial evaluation"
        )));
    }
    Ok(())
}

/// Regular solution, leading coefficient of r^a equal to 1.
pub fn inner_solution(r: f64, a: f64, eps: &RegionEnergy) -> Result<RadialSolution> {
    check_radius(r)?;
    check_exponent(a)?;
    if eps.eps >= 0.0 {
        // evanescent: literally r^a e^{-br} M(a, 2a; 2br)
        let b = eps.wave.re;
        let z = 2.0 * b * r;
        let args = HypergeometricArgs::from_exponent(a)?;
        let zc = Complex64::new(z, 0.0);
        let m = args.m(zc)?.re;
        let dm = args.m_derivative(zc)?.re;
        let damp = (-b * r).exp();
        Ok(RadialSolution {
            value: r.powf(a) * damp * m,
            derivative: r.powf(a - 1.0) * damp * ((a - 0.5 * z) * m + z * dm),
            region: eps.region,
        })
    } else {
        // oscillatory: real continuation through b = iq
        let q = eps.wave.im;
        let y = 2.0 * q * r;
        let (rho, tau) = specfun::oscillatory_inner_parts(a, y);
        Ok(RadialSolution {
            value: r.powf(a) * rho,
            derivative: r.powf(a - 1.0) * (a * rho + tau),
            region: eps.region,
        })
    }
}

/// Decaying solution r^a e^{-br} U(a, 2a; 2br); requires eps > 0.
pub fn outer_solution(r: f64, a: f64, eps: &RegionEnergy) -> Result<RadialSolution> {
    check_radius(r)?;
    check_exponent(a)?;
    if !(eps.eps > 0.0) {
        return Err(Error::Domain(format!(
            "decaying shell solution needs eps > 0, got eps = {}",
            eps.eps
        )));
    }
    let b = eps.wave.re;
    let z = 2.0 * b * r;
    let (u, du) = specfun::companion_pair(a, 2.0 * a, z)?;
    let damp = (-b * r).exp();
    Ok(RadialSolution {
        value: r.powf(a) * damp * u,
        derivative: r.powf(a - 1.0) * damp * ((a - 0.5 * z) * u + z * du),
        region: eps.region,
    })
}

/// D(E) for one branch; zero exactly at matched bound states.
pub fn matching_determinant(
    e: f64,
    cfg: &WellConfig,
    branch: BranchExponent,
) -> Result<MatchingPoint> {
    cfg.validate()?;
    let (lo, hi) = bound_window(cfg);
    if !(e > lo && e < hi) {
        return Err(Error::OutsideWindow { e, lo, hi });
    }
    let eps1 = region_energy(e, cfg, Region::Core);
    let eps2 = region_energy(e, cfg, Region::Shell);
    let g1 = inner_solution(cfg.r0, branch.a, &eps1)?;
    let g2 = outer_solution(cfg.r0, branch.a, &eps2)?;
    let d = match cfg.matching {
        Matching::Weighted => {
            g1.derivative * g2.value / cfg.m1 - g2.derivative * g1.value / cfg.m2
        }
        Matching::Plain => g1.derivative * g2.value - g2.derivative * g1.value,
    };
    Ok(MatchingPoint { e, d, g1, g2 })
}

/// Magnitude scale of D's two terms, for normalizing residuals.
pub(crate) fn determinant_scale(mp: &MatchingPoint, cfg: &WellConfig) -> f64 {
    match cfg.matching {
        Matching::Weighted => {
            (mp.g1.derivative * mp.g2.value / cfg.m1).abs()
                + (mp.g2.derivative * mp.g1.value / cfg.m2).abs()
        }
        Matching::Plain => {
            (mp.g1.derivative * mp.g2.value).abs() + (mp.g2.derivative * mp.g1.value).abs()
        }
    }
}

/// Upper spinor F = [G' - ((kappa + U0)/r) G] / (m_region - E + sigma0),
/// diagnostic only.
pub fn reconstruct_upper_spinor(
    r: f64,
    g: &RadialSolution,
    cfg: &WellConfig,
    e: f64,
) -> Result<f64> {
    check_radius(r)?;
    let m0 = match g.region {
        Region::Core => cfg.m1,
        Region::Shell => cfg.m2,
    };
    let denom = m0 - e + cfg.sigma0;
    if denom.abs() < 1e-12 * m0.abs().max(e.abs()).max(1.0) {
        return Err(Error::SpinorSingular { r, denom });
    }
    Ok((g.derivative - (cfg.kappa as f64 + cfg.u0) / r * g.value) / denom)
}
