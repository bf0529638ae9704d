//! Spectral split-operator dynamics for the 2-component Dirac equation and
//! the 4-component lifted Majorana/Dirac/mixed-mass equations on a periodic
//! grid, with mid-run symmetry events and observable extraction.

pub mod field;
pub mod fourier;
pub mod grid;
pub mod hamiltonian;
pub mod observables;
pub mod propagator;

pub use field::{gaussian_packet, PacketError, PacketWarning, SpinorField};
pub use fourier::Fourier;
pub use grid::{Grid1D, GridError};
pub use hamiltonian::{
    build_hamiltonian, HamiltonianError, HamiltonianSpec, Model, Potential, SplitHamiltonian,
};
pub use observables::{
    momentum_mean, observables, position_mean, pseudo_helicity, transmission, Observables,
};
pub use propagator::{
    apply_event, run_scenario, EvolutionPlan, Propagator, ScenarioResult, Snapshot, StepError,
    SymmetryOp,
};
