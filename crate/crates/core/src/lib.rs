//! Solvers for the phase-dependent double-Λ EIT medium.
//!
//! Four weak/strong field pairs drive a four-level atom in a closed loop
//! (probe + coupling on |1>-|3>-|2>, signal + driving on |1>-|4>-|2>). The
//! first-order response depends on the loop's relative phase
//! `φ_r = (φ_p − φ_c) − (φ_s − φ_d)`.
//!
//! Units: every rate and Rabi frequency is expressed in units of the
//! excited-state coherence decay `Γ = γ31 = γ41 = 1`, time in `1/Γ`, and
//! propagation by the optical-depth coordinate `ζ ∈ [0, α]`.
//!
//! * [`params`] - medium/drive records and derived quantities.
//! * [`steady_state`] - closed-form coherences and field propagation.
//! * [`phase_jump`] - critical optical depth and jump phases.
//! * [`apm`] - all-optical phase-modulation operating points.
//! * [`dynamics`] - time-domain Maxwell-Bloch integrator and the
//!   amplification optimum.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod apm;
pub mod dynamics;
mod error;
pub mod linalg;
pub mod optimize;
pub mod params;
pub mod phase;
pub mod phase_jump;
pub mod steady_state;

pub use error::{Error, Result};
pub use params::{derive, validate_perturbative, DerivedQuantities, FieldPair, MediumParams};
pub use steady_state::{CoherenceState, PropagationCurve};

/// Complex amplitude type used throughout.
pub type C64 = num_complex::Complex<f64>;
