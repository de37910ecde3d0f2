//! Physical configuration and the exponent algebra.
//!
//! Everything downstream sees the tensor coupling and the spin-orbit channel
//! only through the centrifugal strength kappa(kappa-1) + f(U0) and the
//! exponents a solving a(a-1) = that strength. Two channels with the same
//! admissible exponent set are therefore spectrally identical by
//! construction, which is what the degeneracy machinery checks.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Which spectral branch of the Dirac problem a solve targets. The
/// antiparticle branch is the same two-region problem with the well depth
/// reflected (V0 -> -V0); the region energies are invariant under
/// (E, V0) -> (-E, -V0), so this reflection is exactly the energy-mirrored
/// spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    Particle,
    Antiparticle,
}

/// Boundary matching convention at r0. `Weighted` divides each side's
/// derivative by its region mass; `Plain` matches bare derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Matching {
    Weighted,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Core,
    Shell,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Branch::Plus => write!(f, "plus"),
            Branch::Minus => write!(f, "minus"),
        }
    }
}

/// One admissible small-r exponent: G ~ r^a with a > 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchExponent {
    pub a: f64,
    pub branch: Branch,
}

/// Two-region spherical well in natural units (fm, fm^-1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WellConfig {
    /// Core rest mass (r < r0).
    pub m1: f64,
    /// Shell rest mass (r >= r0).
    pub m2: f64,
    /// Half-depth of the potential step: core -V0, shell +V0.
    pub v0: f64,
    /// Core radius / well width.
    pub r0: f64,
    /// Coulomb tensor strength, U(r) = -U0/r.
    pub u0: f64,
    /// Spin-orbit quantum number.
    pub kappa: i32,
    /// Constant pseudospin potential; enters only the upper-spinor rebuild.
    pub sigma0: f64,
    pub matching: Matching,
    pub sector: Sector,
}

impl WellConfig {
    /// Config with the given well geometry, no tensor coupling, kappa = 0,
    /// weighted matching, particle sector.
    pub fn new(m1: f64, m2: f64, v0: f64, r0: f64) -> Self {
        WellConfig {
            m1,
            m2,
            v0,
            r0,
            u0: 0.0,
            kappa: 0,
            sigma0: 0.0,
            matching: Matching::Weighted,
            sector: Sector::Particle,
        }
    }

    /// Well depth as seen by the solve, after the sector reflection.
    pub fn effective_v0(&self) -> f64 {
        match self.sector {
            Sector::Particle => self.v0,
            Sector::Antiparticle => -self.v0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.m1.is_finite()
            && self.m2.is_finite()
            && self.v0.is_finite()
            && self.r0.is_finite()
            && self.u0.is_finite()
            && self.sigma0.is_finite();
        if !finite {
            return Err(Error::InvalidInput(
                "well configuration contains a non-finite field".into(),
            ));
        }
        if !(self.m1 > 0.0) {
            return Err(Error::InvalidInput(format!("m1 must be > 0, got {}", self.m1)));
        }
        if !(self.m2 > 0.0) {
            return Err(Error::InvalidInput(format!("m2 must be > 0, got {}", self.m2)));
        }
        if !(self.r0 > 0.0) {
            return Err(Error::InvalidInput(format!("r0 must be > 0, got {}", self.r0)));
        }
        Ok(())
    }
}

/// Tensor shift of the centrifugal term: f(U0) = (2 kappa - 1) U0 + U0^2.
pub fn tensor_strength_f(kappa: i32, u0: f64) -> f64 {
    (2.0 * kappa as f64 - 1.0) * u0 + u0 * u0
}

/// Full centrifugal strength kappa(kappa-1) + f(U0); this is a(a-1).
pub fn centrifugal_strength(kappa: i32, u0: f64) -> f64 {
    let k = kappa as f64;
    k * (k - 1.0) + tensor_strength_f(kappa, u0)
}

/// Roots (a+, a-) of a(a-1) = kappa(kappa-1) + f(U0), a+ >= a-.
pub fn radial_exponents(kappa: i32, u0: f64) -> Result<(f64, f64)> {
    let mut disc = 0.25 + centrifugal_strength(kappa, u0);
    // the double root lands at disc = 0; tolerate rounding just below it
    if disc < 0.0 && disc > -1e-14 {
        disc = 0.0;
    }
    if disc < 0.0 {
        return Err(Error::NegativeDiscriminant { kappa, u0, disc });
    }
    let root = disc.sqrt();
    Ok((0.5 + root, 0.5 - root))
}

/// Every branch with a > 0; a double root yields a single entry. At
/// kappa = 0 the minus branch survives exactly when U0^2 - U0 < 0, which is
/// the same statement as a- > 0 there.
pub fn admissible_branches(kappa: i32, u0: f64) -> Vec<BranchExponent> {
    let (a_plus, a_minus) = match radial_exponents(kappa, u0) {
        Ok(pair) => pair,
        Err(_) => return Vec::new(),
    };
    let mut out = Vec::new();
    if a_plus > 0.0 {
        out.push(BranchExponent {
            a: a_plus,
            branch: Branch::Plus,
        });
    }
    if a_minus > 0.0 && a_minus != a_plus {
        out.push(BranchExponent {
            a: a_minus,
            branch: Branch::Minus,
        });
    }
    out
}

/// Region energy and wave parameter at a trial energy.
#[derive(Clone, Copy, Debug)]
pub struct RegionEnergy {
    /// eps1 = m1^2 - (E + V0)^2 in the core, eps2 = m2^2 - (E - V0)^2 in the
    /// shell (V0 after the sector reflection).
    pub eps: f64,
    pub region: Region,
    /// sqrt(eps), principal branch: positive real for eps >= 0, positive
    /// imaginary for eps < 0.
    pub wave: Complex64,
}

pub fn region_energy(e: f64, cfg: &WellConfig, region: Region) -> RegionEnergy {
    let v0 = cfg.effective_v0();
    let eps = match region {
        Region::Core => cfg.m1 * cfg.m1 - (e + v0) * (e + v0),
        Region::Shell => cfg.m2 * cfg.m2 - (e - v0) * (e - v0),
    };
    let wave = if eps >= 0.0 {
        Complex64::new(eps.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-eps).sqrt())
    };
    RegionEnergy { eps, region, wave }
}

/// Open interval of energies with a decaying shell solution (eps2 > 0).
pub fn bound_window(cfg: &WellConfig) -> (f64, f64) {
    let v0 = cfg.effective_v0();
    (v0 - cfg.m2, v0 + cfg.m2)
}
