//! Midpoint exponential integrator on the truncated register.
//!
//! Each step applies exp(-i H(t + dt/2) dt) exactly (Taylor expansion of the
//! sampled matrix to machine precision, sub-stepped if the norm bound calls
//! for it), so the scheme is unitary per step and second-order accurate in
//! the time dependence.

use num_complex::Complex64;

use super::ops::{effective_hamiltonian, interaction_hamiltonian, IonOperator};
use super::state::CompositeState;
use super::{IonError, IonTrapConfig};

type C64 = Complex64;

const LEAKAGE_ABORT: f64 = 1e-4;

pub(crate) struct ExpBuffers {
    term: Vec<C64>,
    apply_dst: Vec<C64>,
    apply_tmp: Vec<C64>,
    acc: Vec<C64>,
}

impl ExpBuffers {
    pub(crate) fn new(dim: usize) -> Self {
        let z = vec![C64::new(0.0, 0.0); dim];
        Self {
            term: z.clone(),
            apply_dst: z.clone(),
            apply_tmp: z.clone(),
            acc: z,
        }
    }
}

/// amps <- exp(-i op(t_mid) dt) amps.
pub(crate) fn expmv_inplace(
    op: &IonOperator,
    t_mid: f64,
    dt: f64,
    amps: &mut [C64],
    bufs: &mut ExpBuffers,
    n_a: usize,
    n_b: usize,
) {
    let bound = op.norm_bound(n_a, n_b) * dt.abs();
    let substeps = (bound / 0.5).ceil().max(1.0) as usize;
    let h = dt / substeps as f64;
    for _ in 0..substeps {
        bufs.acc.copy_from_slice(amps);
        bufs.term.copy_from_slice(amps);
        for k in 1..=64 {
            // term <- (-i h / k) H term
            op.apply(
                t_mid,
                &bufs.term,
                &mut bufs.apply_dst,
                &mut bufs.apply_tmp,
                n_a,
                n_b,
            );
            let coeff = C64::new(0.0, -h / k as f64);
            let mut term_norm = 0.0;
            for (t, s) in bufs.term.iter_mut().zip(bufs.apply_dst.iter()) {
                *t = coeff * s;
                term_norm += t.norm_sqr();
            }
            for (a, t) in bufs.acc.iter_mut().zip(bufs.term.iter()) {
                *a += *t;
            }
            if term_norm < 1e-32 {
                break;
            }
        }
        amps.copy_from_slice(&bufs.acc);
    }
}

/// Sampled trajectory of one integration.
#[derive(Debug)]
pub struct IonTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<CompositeState>,
    pub max_leakage: f64,
    pub final_state: CompositeState,
}

/// Integrate the interaction-picture drive from t = 0 to t_final.
///
/// `sample_stride` controls how often states are recorded (0: endpoints
/// only). Truncation health is monitored every step; leakage beyond 1e-4
/// aborts.
pub fn integrate(
    initial: &CompositeState,
    config: &IonTrapConfig,
    t_final: f64,
    dt: f64,
    sample_stride: usize,
) -> Result<IonTrajectory, IonError> {
    config.validate()?;
    initial.matches(config)?;
    let op = interaction_hamiltonian(config);
    integrate_operator(initial, &op, config, t_final, dt, sample_stride)
}

/// Integrate an arbitrary structured Hamiltonian with the same stepper.
pub fn integrate_operator(
    initial: &CompositeState,
    op: &IonOperator,
    config: &IonTrapConfig,
    t_final: f64,
    dt: f64,
    sample_stride: usize,
) -> Result<IonTrajectory, IonError> {
    let limit = config.dt_limit();
    if !(dt > 0.0) || dt > limit {
        return Err(IonError::StepTooLarge { dt, limit });
    }
    let n_steps = (t_final / dt).round().max(0.0) as usize;
    let (n_a, n_b) = (initial.n_a, initial.n_b);
    let mut state = initial.clone();
    let mut bufs = ExpBuffers::new(state.dim());
    let mut times = vec![0.0];
    let mut states = vec![state.clone()];
    let mut max_leakage: f64 = state.truncation_leakage();

    for step in 1..=n_steps {
        let t_mid = (step as f64 - 0.5) * dt;
        expmv_inplace(
            op,
            t_mid,
            dt,
            state.amps.as_slice_mut().unwrap(),
            &mut bufs,
            n_a,
            n_b,
        );
        let leak = state.truncation_leakage();
        max_leakage = max_leakage.max(leak);
        if leak > LEAKAGE_ABORT {
            return Err(IonError::TruncationLeakage { leakage: leak });
        }
        if sample_stride > 0 && (step % sample_stride == 0 || step == n_steps) {
            times.push(step as f64 * dt);
            states.push(state.clone());
        }
    }
    if sample_stride == 0 {
        times.push(n_steps as f64 * dt);
        states.push(state.clone());
    }
    Ok(IonTrajectory {
        times,
        states,
        max_leakage,
        final_state: state,
    })
}

/// Fidelity |<psi_full | psi_eff>|^2 over time between the interaction-picture
/// drive and the effective lifted Hamiltonian.
#[derive(Debug, Clone)]
pub struct FidelitySeries {
    pub times: Vec<f64>,
    pub fidelities: Vec<f64>,
    pub min_fidelity: f64,
    pub max_leakage: f64,
}

pub fn dispersive_fidelity(
    config: &IonTrapConfig,
    initial: &CompositeState,
    t_final: f64,
    dt: f64,
    sample_stride: usize,
) -> Result<FidelitySeries, IonError> {
    config.validate()?;
    initial.matches(config)?;
    let limit = config.dt_limit();
    if !(dt > 0.0) || dt > limit {
        return Err(IonError::StepTooLarge { dt, limit });
    }
    let full_op = interaction_hamiltonian(config);
    let eff_op = effective_hamiltonian(config);
    let (n_a, n_b) = (initial.n_a, initial.n_b);
    let n_steps = (t_final / dt).round().max(1.0) as usize;
    let stride = sample_stride.max(1);

    let mut full = initial.clone();
    let mut eff = initial.clone();
    let mut bufs = ExpBuffers::new(initial.dim());
    let mut times = vec![0.0];
    let mut fidelities = vec![full.fidelity(&eff)];
    let mut max_leakage: f64 = full.truncation_leakage();

    for step in 1..=n_steps {
        let t_mid = (step as f64 - 0.5) * dt;
        expmv_inplace(
            &full_op,
            t_mid,
            dt,
            full.amps.as_slice_mut().unwrap(),
            &mut bufs,
            n_a,
            n_b,
        );
        expmv_inplace(
            &eff_op,
            t_mid,
            dt,
            eff.amps.as_slice_mut().unwrap(),
            &mut bufs,
            n_a,
            n_b,
        );
        let leak = full.truncation_leakage();
        max_leakage = max_leakage.max(leak);
        if leak > LEAKAGE_ABORT {
            return Err(IonError::TruncationLeakage { leakage: leak });
        }
        if step % stride == 0 || step == n_steps {
            times.push(step as f64 * dt);
            fidelities.push(full.fidelity(&eff));
        }
    }
    let min_fidelity = fidelities.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(FidelitySeries {
        times,
        fidelities,
        min_fidelity,
        max_leakage,
    })
}
