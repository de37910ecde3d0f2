//! Bound states of a Dirac particle in a spherical core/shell mass well
//! with a Coulomb-type tensor coupling, in the pseudospin-symmetric limit.
//!
//! The well has a light or heavy core of radius r0 embedded in a shell with
//! a different mass, plus a vector/scalar square-well pair that cancels in
//! the lower-spinor equation. The lower radial component solves a confluent
//! hypergeometric equation in each region; eigenvalues come from matching
//! the mass-weighted logarithmic derivative at r0.

pub mod classify;
pub mod error;
pub mod oracle;
pub mod radial;
pub mod specfun;
pub mod spectrum;
pub mod well;

pub use classify::{
    classify_level_curve, transition_energies, LevelClass, LevelTag, TransitionTable, Trend,
};
pub use error::{Error, Result};
pub use oracle::{shoot_eigenvalues, ShootingGrid};
pub use radial::{
    inner_solution, matching_determinant, outer_solution, reconstruct_upper_spinor,
    MatchingPoint, RadialSolution,
};
pub use specfun::{
    decaying_companion, decaying_companion_derivative, kummer_m, kummer_m_derivative,
    HypergeometricArgs,
};
pub use spectrum::{
    aggregate_levels, count_nodes, degeneracy_report, find_levels, find_levels_scan,
    sweep_well_width, DegeneracyReport, EigenResult, LevelCurve, SweepSettings,
};
pub use well::{
    admissible_branches, bound_window, centrifugal_strength, radial_exponents, region_energy,
    tensor_strength_f, Branch, BranchExponent, Matching, Region, RegionEnergy, Sector,
    WellConfig,
};
