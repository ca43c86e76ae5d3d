//! Time-domain propagation of weak pulses and the steady amplification
//! optimum.

pub mod amplify;
mod obe;
mod pulse;
mod simulate;

pub use amplify::{amplification_sweep, max_transmission, AmplificationPoint};
pub use obe::{step_coherences, step_fields, ObePropagator};
pub use pulse::{PulseKind, PulseShape};
pub use simulate::{simulate, simulate_with, PulseSimResult, Recording, SimGrid, SpaceTimeMap};
