//! Simulation of the 1+1-dimensional Majorana equation through a
//! complex-to-real state lift.
//!
//! The Majorana equation couples a spinor to its own charge conjugate, so it
//! has no Hamiltonian form on the complex spinor. Doubling the state into
//! real and imaginary blocks turns the dynamics into an ordinary Hamiltonian
//! system and turns complex conjugation, charge conjugation and time
//! reversal into unitaries. This crate provides:
//!
//! * [`lift`] - the state/operator lift, its inverse, and the three
//!   symmetry unitaries;
//! * [`dynamics`] - a split-operator spectral propagator for 2-component
//!   Dirac and 4-component lifted wavepackets with mid-run symmetry events;
//! * [`iontrap`] - a truncated-Fock-space check of the two-ion realization,
//!   including the pseudo-helicity measurement protocol;
//! * [`scenarios`] - the named experiment presets used by the CLI and tests.

pub mod dynamics;
pub mod iontrap;
pub mod lift;
pub mod linalg;
pub mod scenarios;
