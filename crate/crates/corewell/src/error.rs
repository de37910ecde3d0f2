use thiserror::Error;

/// Error type shared across the solver modules.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or iteration hit its term cap without meeting the stop rule.
    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// The exponent discriminant is negative; the channel has no real
    /// power-law behaviour at the origin.
    #[error("negative exponent discriminant {disc:.6e} for kappa={kappa}, U0={u0}")]
    NegativeDiscriminant { kappa: i32, u0: f64, disc: f64 },

    /// A trial energy was requested outside the interval where the shell
    /// solution decays.
    #[error("energy {e} outside the bound window ({lo}, {hi})")]
    OutsideWindow { e: f64, lo: f64, hi: f64 },

    /// A sign-change bracket failed to refine to the requested tolerance.
    #[error("bracket [{lo}, {hi}] not refined: {detail}")]
    UnrefinedBracket { lo: f64, hi: f64, detail: String },

    /// The upper-spinor denominator vanished at the evaluation point.
    #[error("upper-spinor reconstruction singular at r={r}: denominator {denom:.3e}")]
    SpinorSingular { r: f64, denom: f64 },

    /// Level tracking across a well-width sweep could not continue a curve
    /// unambiguously even after local step bisection.
    #[error("level tracking split at r0={r0}: {detail}")]
    ContinuationSplit { r0: f64, detail: String },

    /// Invalid configuration or mismatched inputs to an operation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The fixed-step integrator produced a non-finite state.
    #[error("shooting integration failed at E={e}: {detail}")]
    IntegrationFailure { e: f64, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
