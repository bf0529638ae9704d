//! Two-ion realization of the lifted Majorana dynamics.
//!
//! The register is qubit1 (x) qubit2 (x) Fock(COM) (x) Fock(stretch). The
//! qubits carry the four bispinor components (qubit1 is the real/imaginary
//! ancilla), the COM mode carries the simulated position axis through
//! p_x = i(a† - a)/(2 Delta), and the stretch mode mediates the Majorana
//! mass via a detuned sideband pair.

pub mod integrate;
pub mod measure;
pub mod ops;
pub mod state;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use integrate::{dispersive_fidelity, integrate, FidelitySeries, IonTrajectory};
pub use measure::{
    direct_sigma_tilde, gamma_ratio, measure_ak, measure_u1_correlation,
    pseudo_helicity_protocol, slope_ak, slope_u1,
};
pub use state::CompositeState;

#[derive(Debug, Error, PartialEq)]
pub enum IonError {
    #[error("Lamb-Dicke parameter must satisfy 0 < eta <= 0.2, got {0}")]
    BadLambDicke(f64),
    #[error("Fock truncations must be at least 4, got ({0}, {1})")]
    TruncationTooSmall(usize, usize),
    #[error("{0} must be positive and finite")]
    BadParameter(&'static str),
    #[error("dt = {dt} exceeds the integrator limit {limit} for this config")]
    StepTooLarge { dt: f64, limit: f64 },
    #[error("truncation leakage {leakage:.3e} exceeds 1e-4; increase Fock truncation")]
    TruncationLeakage { leakage: f64 },
    #[error("probe parameter k = {k} exceeds the displacement guard {max}")]
    ProbeTooLarge { k: f64, max: f64 },
    #[error("state dimension {got} does not match config dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Trap and laser parameters. Frequencies are dimensionless (hbar = 1);
/// the stretch frequency, stretch Lamb-Dicke parameter and ground-state
/// width are derived: nu_r = sqrt(3) nu, eta_r = eta / 3^(1/4),
/// Delta = sqrt(1 / (4 m' nu)).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IonTrapConfig {
    /// COM mode frequency nu.
    pub nu: f64,
    /// Rabi frequency Omega of the detuned sideband pairs on both ions.
    pub rabi: f64,
    /// Rabi frequency Omega-tilde of the resonant sideband pair on ion 2.
    pub rabi_tilde: f64,
    /// Detuning delta of the stretch sidebands.
    pub delta: f64,
    /// COM Lamb-Dicke parameter eta.
    pub eta: f64,
    /// Qubit splitting omega_0 (enters the laser table only; the dynamics
    /// is integrated in the interaction picture).
    pub qubit_splitting: f64,
    /// Ion mass m'.
    pub ion_mass: f64,
    /// Fock truncation of the COM mode.
    pub n_a: usize,
    /// Fock truncation of the stretch mode.
    pub n_b: usize,
}

impl IonTrapConfig {
    /// Default verification point: nu = 1, delta = 0.05 nu, eta = 0.06,
    /// Delta = 1, Omega set by delta/(eta_r Omega) = 33, Omega-tilde set so
    /// the simulated gamma is 1 for unit mean momentum (c_sim = mc2_sim).
    pub fn default_verification() -> Self {
        let nu = 1.0;
        let delta = 0.05 * nu;
        let eta = 0.06;
        let eta_r = eta / 3f64.powf(0.25);
        let ratio = 33.0;
        let rabi = delta / ratio / eta_r;
        let mc2 = 2.0 * (eta_r * rabi).powi(2) / delta;
        let ion_mass = 1.0 / (4.0 * nu); // ground-state width Delta = 1
        let delta_width = 1.0;
        let rabi_tilde = mc2 / (2.0 * eta * delta_width);
        Self {
            nu,
            rabi,
            rabi_tilde,
            delta,
            eta,
            qubit_splitting: 100.0 * nu,
            ion_mass,
            n_a: 24,
            n_b: 8,
        }
    }

    pub fn validate(&self) -> Result<(), IonError> {
        if !(self.eta > 0.0) || self.eta > 0.2 {
            return Err(IonError::BadLambDicke(self.eta));
        }
        if self.n_a < 4 || self.n_b < 4 {
            return Err(IonError::TruncationTooSmall(self.n_a, self.n_b));
        }
        for (name, v) in [
            ("nu", self.nu),
            ("delta", self.delta),
            ("ion_mass", self.ion_mass),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(IonError::BadParameter(name));
            }
        }
        for (name, v) in [("rabi", self.rabi), ("rabi_tilde", self.rabi_tilde)] {
            if v < 0.0 || !v.is_finite() {
                return Err(IonError::BadParameter(name));
            }
        }
        Ok(())
    }

    pub fn nu_r(&self) -> f64 {
        3f64.sqrt() * self.nu
    }

    pub fn eta_r(&self) -> f64 {
        self.eta / 3f64.powf(0.25)
    }

    /// Ground-state width Delta = sqrt(hbar / (4 m' nu)).
    pub fn delta_width(&self) -> f64 {
        (1.0 / (4.0 * self.ion_mass * self.nu)).sqrt()
    }

    pub fn dim(&self) -> usize {
        4 * self.n_a * self.n_b
    }

    pub fn effective_params(&self) -> EffectiveParams {
        let c_sim = 2.0 * self.eta * self.delta_width() * self.rabi_tilde;
        let mc2_sim = 2.0 * self.eta_r().powi(2) * self.rabi.powi(2) / self.delta;
        EffectiveParams { c_sim, mc2_sim }
    }

    /// Upper bound on dt accepted by the integrator.
    pub fn dt_limit(&self) -> f64 {
        let scale = self
            .delta
            .max(self.eta_r() * self.rabi)
            .max(self.eta * self.rabi_tilde);
        0.05 / scale
    }
}

/// Sideband frequencies and phases of the six drive tones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaserSchedule {
    pub omega_1: f64,
    pub omega_1_prime: f64,
    pub omega_2: f64,
    pub omega_2_prime: f64,
    pub omega: f64,
    pub omega_prime: f64,
    pub phi: f64,
    pub phi_prime: f64,
    pub phi_1: f64,
    pub phi_1_prime: f64,
    pub phi_2: f64,
    pub phi_2_prime: f64,
}

/// The tone table: stretch sidebands on both ions detuned by delta, COM
/// sidebands on ion 2 resonant, with the phase choices that produce the
/// interaction-picture Hamiltonian integrated here.
pub fn laser_schedule(config: &IonTrapConfig) -> LaserSchedule {
    let w0 = config.qubit_splitting;
    let nu_r = config.nu_r();
    let d = config.delta;
    LaserSchedule {
        omega_1: w0 + nu_r - d,
        omega_1_prime: w0 - nu_r + d,
        omega_2: w0 - nu_r + d,
        omega_2_prime: w0 + nu_r - d,
        omega: w0 - config.nu,
        omega_prime: w0 + config.nu,
        phi: std::f64::consts::PI,
        phi_prime: 0.0,
        phi_1: std::f64::consts::FRAC_PI_2,
        phi_1_prime: std::f64::consts::FRAC_PI_2,
        phi_2: 0.0,
        phi_2_prime: 0.0,
    }
}

/// Parameters of the effective lifted Hamiltonian
/// c_sim (1 x sx) p_x - mc2_sim (sx x sy).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectiveParams {
    pub c_sim: f64,
    pub mc2_sim: f64,
}

impl EffectiveParams {
    /// Half-turn time of the mass rotation, pi / mc2.
    pub fn mass_period(&self) -> f64 {
        std::f64::consts::PI / self.mc2_sim
    }
}
