use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        name: &'static str,
        reason: &'static str,
    },
    #[error("coupling and driving fields are both zero (|Ω|² = 0)")]
    NoDriveField,
    #[error("steady-state denominator vanishes")]
    SingularDenominator,
    #[error("closed-form propagation requires γ21 = 0; use the time-domain integrator for dephasing")]
    DephasingUnsupported,
    #[error("balanced solution requires |Ω_c| = |Ω_d| and |Ω_p(0)| = |Ω_s(0)|")]
    Unbalanced,
    #[error("phase undefined at a zero-field point")]
    ZeroField,
    #[error("phase jump requires a nonzero detuning")]
    ZeroDetuning,
    #[error("branch index must be an odd positive integer, got {0}")]
    EvenBranch(u32),
    #[error("no relative phase puts the terminal probe point on the {0} axis")]
    NoPhaseSolution(&'static str),
    #[error("no feasible detuning in the searched range")]
    NoFeasibleDetuning,
    #[error("integration became unstable at t = {time}")]
    Unstable { time: f64 },
}
