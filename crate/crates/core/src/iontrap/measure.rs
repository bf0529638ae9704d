//! Pseudo-helicity measurement protocol and the relativistic ratio gamma.
//!
//! The two slope measurements assemble the lifted pseudo-helicity
//! (1 x sx - sy x sx) (x) p_x out of spin readouts after state-dependent
//! displacements:
//!
//! * U2(k) = exp(+i k (1 x sy) (x) p_x / 2) followed by <1 x sz>, whose
//!   derivative at k = 0 is <(1 x sx) (x) p_x>;
//! * U1(k) = exp(-i k (sx x 1) (x) p_x) followed by <sz x sx>, whose
//!   derivative at k = 0 is 2 <(sy x sx) (x) p_x>.
//!
//! The displacement signs and the absence of the 1/2 in U1 are fixed by
//! those two derivative identities.

use super::integrate::{expmv_inplace, ExpBuffers};
use super::ops::{
    expect_i_adag_minus_a, expect_qubit, expect_two_qubit, sigma_tilde_observable, IonOperator,
    Pauli, Qubit,
};
use super::state::CompositeState;
use super::{IonError, IonTrapConfig};

/// Relative half-width of the central difference, in units of the guard.
const SLOPE_STEP_FRACTION: f64 = 0.08;

fn probe_guard(config: &IonTrapConfig) -> f64 {
    0.5 * config.delta_width()
}

fn displaced(
    state: &CompositeState,
    generator: &IonOperator,
    k: f64,
) -> CompositeState {
    // exp(-i (k) G) via the integrator's exponential; negative k gives the
    // adjoint.
    let mut out = state.clone();
    let mut bufs = ExpBuffers::new(state.dim());
    expmv_inplace(
        generator,
        0.0,
        k,
        out.amps.as_slice_mut().unwrap(),
        &mut bufs,
        state.n_a,
        state.n_b,
    );
    out
}

fn check_k(config: &IonTrapConfig, k: f64) -> Result<(), IonError> {
    let max = probe_guard(config);
    if k.abs() > max {
        return Err(IonError::ProbeTooLarge { k, max });
    }
    Ok(())
}

/// Apply U2(k) and read out <1 x sz>.
pub fn measure_ak(state: &CompositeState, config: &IonTrapConfig, k: f64) -> Result<f64, IonError> {
    state.matches(config)?;
    check_k(config, k)?;
    let gen = IonOperator::SpinMomentum {
        qubit: Qubit::Two,
        pauli: Pauli::Y,
        scale: 0.5,
        inv_two_delta: 1.0 / (2.0 * config.delta_width()),
    };
    // exp(+i k G) = exp(-i (-k) G)
    let probed = displaced(state, &gen, -k);
    Ok(expect_qubit(&probed, Qubit::Two, Pauli::Z))
}

/// Central-difference d/dk <A(k)> at k = 0; equals <(1 x sx) (x) p_x>.
pub fn slope_ak(state: &CompositeState, config: &IonTrapConfig) -> Result<f64, IonError> {
    let h = SLOPE_STEP_FRACTION * probe_guard(config);
    let plus = measure_ak(state, config, h)?;
    let minus = measure_ak(state, config, -h)?;
    Ok((plus - minus) / (2.0 * h))
}

/// Apply U1(k) and read out the spin correlation <sz x sx>.
pub fn measure_u1_correlation(
    state: &CompositeState,
    config: &IonTrapConfig,
    k: f64,
) -> Result<f64, IonError> {
    state.matches(config)?;
    check_k(config, k)?;
    let gen = IonOperator::SpinMomentum {
        qubit: Qubit::One,
        pauli: Pauli::X,
        scale: 1.0,
        inv_two_delta: 1.0 / (2.0 * config.delta_width()),
    };
    let probed = displaced(state, &gen, k);
    Ok(expect_two_qubit(&probed, Pauli::Z, Pauli::X))
}

/// Central-difference d/dk <sz x sx> at k = 0; equals 2 <(sy x sx) (x) p_x>.
pub fn slope_u1(state: &CompositeState, config: &IonTrapConfig) -> Result<f64, IonError> {
    let h = SLOPE_STEP_FRACTION * probe_guard(config);
    let plus = measure_u1_correlation(state, config, h)?;
    let minus = measure_u1_correlation(state, config, -h)?;
    Ok((plus - minus) / (2.0 * h))
}

/// Assembled pseudo-helicity: slope_Ak - slope_U1 / 2.
pub fn pseudo_helicity_protocol(
    state: &CompositeState,
    config: &IonTrapConfig,
) -> Result<f64, IonError> {
    Ok(slope_ak(state, config)? - slope_u1(state, config)? / 2.0)
}

/// Direct expectation of (1 x sx - sy x sx) (x) p_x, the protocol's oracle.
pub fn direct_sigma_tilde(state: &CompositeState, config: &IonTrapConfig) -> f64 {
    sigma_tilde_observable(config).expect(0.0, state)
}

/// gamma = |mc^2 / <c p_x>|, via the closed form
/// 2 (eta_r Omega / delta)^2 / (|<i(a† - a)>| (eta Omega~ / delta)).
///
/// Zero mean quadrature momentum (or zero kinetic coupling) is the
/// nonrelativistic limit and returns +infinity.
pub fn gamma_ratio(config: &IonTrapConfig, state: &CompositeState) -> f64 {
    let q = expect_i_adag_minus_a(state);
    let numerator = 2.0 * (config.eta_r() * config.rabi / config.delta).powi(2);
    let denominator = q.abs() * (config.eta * config.rabi_tilde / config.delta);
    if denominator < 1e-12 {
        if numerator < 1e-24 {
            return f64::NAN;
        }
        return f64::INFINITY;
    }
    numerator / denominator
}
