//! Strang-split spectral propagator with timed symmetry events.

use ndarray::{Array1, Array2, Array3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

use super::field::SpinorField;
use super::fourier::Fourier;
use super::grid::Grid1D;
use super::hamiltonian::SplitHamiltonian;
use super::observables::{observables, Observables};

#[derive(Debug, Error, PartialEq)]
pub enum StepError {
    #[error("dt must be positive and finite, got {0}")]
    BadDt(f64),
    #[error("non-finite amplitude detected at step {step}; aborting")]
    NonFinite { step: usize },
    #[error("event step {step} exceeds n_steps {n_steps}")]
    EventOutOfRange { step: usize, n_steps: usize },
}

/// The three unphysical operations applicable mid-run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymmetryOp {
    /// Complex conjugation K.
    K,
    /// Charge conjugation C.
    C,
    /// Time reversal T (U_T = sz).
    T,
}

/// Time stepping plan with optional mid-run events.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionPlan {
    pub dt: f64,
    pub n_steps: usize,
    /// (step index, op): the op fires after that many completed steps.
    pub events: Vec<(usize, SymmetryOp)>,
    /// 0: observables every step, no field snapshots. s > 0: observables and
    /// snapshots every s steps (plus the initial and final states).
    pub snapshot_stride: usize,
}

impl EvolutionPlan {
    pub fn validate(&self) -> Result<(), StepError> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(StepError::BadDt(self.dt));
        }
        for &(step, _) in &self.events {
            if step > self.n_steps {
                return Err(StepError::EventOutOfRange {
                    step,
                    n_steps: self.n_steps,
                });
            }
        }
        Ok(())
    }
}

/// Cached split factors for one (hamiltonian, grid, dt) triple.
pub struct Propagator {
    n_comp: usize,
    dt: f64,
    local: Array3<Complex64>,
    kin_cos: Array1<f64>,
    kin_sin: Array1<f64>,
    fourier: Fourier,
    steps_taken: usize,
}

impl Propagator {
    pub fn new(split: &SplitHamiltonian, grid: &Grid1D, dt: f64) -> Result<Self, StepError> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(StepError::BadDt(dt));
        }
        let angles = split.kinetic_angles(grid, dt);
        Ok(Self {
            n_comp: split.spec.model.n_comp(),
            dt,
            local: split.local_unitaries(dt / 2.0),
            kin_cos: angles.mapv(f64::cos),
            kin_sin: angles.mapv(f64::sin),
            fourier: Fourier::new(grid.n_points),
            steps_taken: 0,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    fn apply_local(&self, amps: &mut Array2<Complex64>) {
        let n = amps.ncols();
        let nc = self.n_comp;
        let mut scratch = [Complex64::new(0.0, 0.0); 4];
        for j in 0..n {
            for (r, s) in scratch.iter_mut().enumerate().take(nc) {
                *s = (0..nc)
                    .map(|c| self.local[[j, r, c]] * amps[[c, j]])
                    .sum();
            }
            for (r, s) in scratch.iter().enumerate().take(nc) {
                amps[[r, j]] = *s;
            }
        }
    }

    fn apply_kinetic(&self, amps: &mut Array2<Complex64>) {
        let n = amps.ncols();
        for pair in 0..self.n_comp / 2 {
            let (a, b) = (2 * pair, 2 * pair + 1);
            for j in 0..n {
                let (c, s) = (self.kin_cos[j], self.kin_sin[j]);
                let fa = amps[[a, j]];
                let fb = amps[[b, j]];
                amps[[a, j]] = fa * c - Complex64::i() * fb * s;
                amps[[b, j]] = fb * c - Complex64::i() * fa * s;
            }
        }
    }

    /// One Strang step: half local, full kinetic, half local.
    pub fn step(&mut self, field: &mut SpinorField) -> Result<(), StepError> {
        self.apply_local(&mut field.amps);
        self.fourier.forward_rows(&mut field.amps);
        self.apply_kinetic(&mut field.amps);
        self.fourier.inverse_rows(&mut field.amps);
        self.apply_local(&mut field.amps);
        self.steps_taken += 1;
        let finite = field.amps.iter().all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite {
            return Err(StepError::NonFinite {
                step: self.steps_taken,
            });
        }
        Ok(())
    }

    pub fn fourier_mut(&mut self) -> &mut Fourier {
        &mut self.fourier
    }
}

/// Apply K, C or T in place. Norm-preserving; keeps 4-component lifts real.
///
/// On 2-component states the antiunitaries act directly (K conjugates,
/// C = -sx K, T = sz K); on 4-component lifts they are the unitaries
/// V_K = sz x 1, V_C = -(sz x sx), V_T = sz x sz applied pointwise in x.
pub fn apply_event(field: &mut SpinorField, op: SymmetryOp) {
    let n = field.grid.n_points;
    match field.n_comp() {
        2 => {
            for j in 0..n {
                let a = field.amps[[0, j]].conj();
                let b = field.amps[[1, j]].conj();
                let (na, nb) = match op {
                    SymmetryOp::K => (a, b),
                    SymmetryOp::C => (-b, -a),
                    SymmetryOp::T => (a, -b),
                };
                field.amps[[0, j]] = na;
                field.amps[[1, j]] = nb;
            }
        }
        4 => {
            for j in 0..n {
                let v = [
                    field.amps[[0, j]],
                    field.amps[[1, j]],
                    field.amps[[2, j]],
                    field.amps[[3, j]],
                ];
                let out = match op {
                    SymmetryOp::K => [v[0], v[1], -v[2], -v[3]],
                    SymmetryOp::C => [-v[1], -v[0], v[3], v[2]],
                    SymmetryOp::T => [v[0], -v[1], -v[2], v[3]],
                };
                for (c, z) in out.into_iter().enumerate() {
                    field.amps[[c, j]] = z;
                }
            }
        }
        _ => unreachable!("fields are 2- or 4-component"),
    }
}

/// Full field snapshot at one instant.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub t: f64,
    pub amps: Array2<Complex64>,
}

#[derive(Debug)]
pub struct ScenarioResult {
    pub series: Vec<Observables>,
    pub snapshots: Vec<Snapshot>,
    pub final_field: SpinorField,
}

/// Run a full scenario: evolve, fire events, record observables/snapshots.
///
/// `x_c` is the transmission threshold used in the observables series.
pub fn run_scenario(
    split: &SplitHamiltonian,
    plan: &EvolutionPlan,
    grid: &Arc<Grid1D>,
    initial: &SpinorField,
    x_c: f64,
) -> Result<ScenarioResult, StepError> {
    plan.validate()?;
    let mut prop = Propagator::new(split, grid, plan.dt)?;
    let mut field = initial.clone();
    let mut series = Vec::new();
    let mut snapshots = Vec::new();

    let record = |step: usize| -> bool {
        if step == 0 || step == plan.n_steps {
            return true;
        }
        if plan.snapshot_stride == 0 {
            true
        } else {
            step % plan.snapshot_stride == 0
        }
    };

    // events indexed by step
    let mut at_step = vec![Vec::new(); plan.n_steps + 1];
    for &(step, op) in &plan.events {
        at_step[step].push(op);
    }
    for &op in &at_step[0] {
        apply_event(&mut field, op);
    }
    series.push(observables(&field, prop.fourier_mut(), 0.0, x_c));
    if plan.snapshot_stride > 0 {
        snapshots.push(Snapshot {
            t: 0.0,
            amps: field.amps.clone(),
        });
    }

    for step in 1..=plan.n_steps {
        prop.step(&mut field)?;
        for &op in &at_step[step] {
            apply_event(&mut field, op);
        }
        if record(step) {
            let t = step as f64 * plan.dt;
            series.push(observables(&field, prop.fourier_mut(), t, x_c));
            if plan.snapshot_stride > 0 {
                snapshots.push(Snapshot {
                    t,
                    amps: field.amps.clone(),
                });
            }
        }
    }
    Ok(ScenarioResult {
        series,
        snapshots,
        final_field: field,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::field::gaussian_packet;
    use crate::dynamics::hamiltonian::{build_hamiltonian, HamiltonianSpec, Model, Potential};
    use crate::dynamics::observables::position_mean;
    use num_complex::Complex64 as C64;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn free_spec(model: Model, mass: f64) -> HamiltonianSpec {
        HamiltonianSpec {
            model,
            mass,
            mass_dirac: 0.0,
            mass_majorana: 0.0,
            light_speed: 1.0,
            potential: Potential::None,
            charge: 1.0,
        }
    }

    #[test]
    fn zero_steps_is_identity() {
        let grid = Arc::new(Grid1D::new(256, -50.0, 50.0).unwrap());
        let (f0, _) = gaussian_packet(&grid, 0.0, 5.0, 1.0, [c(1.0, 0.0), c(0.0, 0.0)], 2).unwrap();
        let split = build_hamiltonian(&free_spec(Model::Dirac2, 0.5), &grid).unwrap();
        let plan = EvolutionPlan {
            dt: 0.01,
            n_steps: 0,
            events: vec![],
            snapshot_stride: 0,
        };
        let out = run_scenario(&split, &plan, &grid, &f0, 0.0).unwrap();
        let err = (&out.final_field.amps - &f0.amps)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert_eq!(err, 0.0);
        assert_eq!(out.series.len(), 1);
    }

    #[test]
    fn massless_packet_rides_at_light_speed() {
        // pol (1,1)/sqrt2 is the +1 eigenstate of sx: <x>(t) = x0 + c t.
        let grid = Arc::new(Grid1D::new(2048, -100.0, 100.0).unwrap());
        let (f0, _) =
            gaussian_packet(&grid, -30.0, 5.0, 1.5, [c(1.0, 0.0), c(1.0, 0.0)], 2).unwrap();
        let split = build_hamiltonian(&free_spec(Model::Dirac2, 0.0), &grid).unwrap();
        let plan = EvolutionPlan {
            dt: 0.005,
            n_steps: 2000,
            events: vec![],
            snapshot_stride: 0,
        };
        let out = run_scenario(&split, &plan, &grid, &f0, 0.0).unwrap();
        let x_final = position_mean(&out.final_field);
        assert!(
            (x_final - (-30.0 + 10.0)).abs() < 1e-3,
            "x_final = {x_final}"
        );
        // unitary: norm drift below 1e-12 per step
        let norm = out.final_field.norm_sq();
        assert!((norm - 1.0).abs() < 2000.0 * 1e-12);
    }

    #[test]
    fn zitterbewegung_frequency_matches_two_level_oracle() {
        // Rest packet in an sx eigenstate: the plane-wave two-level oracle at
        // k = 0 gives <x>(t) = x0 + (c / 2 m c^2) sin(2 m c^2 t). Check the
        // oscillation frequency through the first return to x0 and the
        // amplitude of the first swing; a finite packet width chirps the
        // trajectory slightly, so the comparison is at the percent level.
        let grid = Arc::new(Grid1D::new(2048, -160.0, 160.0).unwrap());
        let m = 0.5;
        let (f0, _) = gaussian_packet(&grid, 0.0, 20.0, 0.0, [c(1.0, 0.0), c(1.0, 0.0)], 2).unwrap();
        let split = build_hamiltonian(&free_spec(Model::Dirac2, m), &grid).unwrap();
        let dt = 0.01;
        let n_steps = ((2.0 * std::f64::consts::PI) / dt) as usize;
        let plan = EvolutionPlan {
            dt,
            n_steps,
            events: vec![],
            snapshot_stride: 5,
        };
        let out = run_scenario(&split, &plan, &grid, &f0, 0.0).unwrap();
        let omega = 2.0 * m; // 2 m c^2 with c = 1
        let xs: Vec<(f64, f64)> = out.series.iter().map(|o| (o.t, o.x_mean)).collect();
        // amplitude of the first swing
        let peak = xs
            .iter()
            .map(|(_, x)| *x)
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(
            (peak - 1.0 / omega).abs() < 0.05 / omega,
            "peak {peak} vs {}",
            1.0 / omega
        );
        // first downward crossing of x0 happens at t = pi / omega
        let crossing = xs
            .windows(2)
            .find(|w| w[0].0 > 0.5 && w[0].1 > 0.0 && w[1].1 <= 0.0)
            .map(|w| {
                let (t0, x0v) = w[0];
                let (t1, x1v) = w[1];
                t0 + (t1 - t0) * x0v / (x0v - x1v)
            })
            .expect("trajectory should cross x0 within one period");
        let expected = std::f64::consts::PI / omega;
        assert!(
            (crossing - expected).abs() < 0.03 * expected,
            "crossing at {crossing}, oracle {expected}"
        );
    }

    #[test]
    fn strang_error_is_second_order() {
        // Halving dt reduces the error against a fine reference by ~4x.
        let grid = Arc::new(Grid1D::new(512, -60.0, 60.0).unwrap());
        let spec = HamiltonianSpec {
            potential: Potential::Linear { alpha: 1.0 },
            ..free_spec(Model::Dirac2, 0.5)
        };
        let split = build_hamiltonian(&spec, &grid).unwrap();
        let (f0, _) = gaussian_packet(&grid, -10.0, 4.0, 1.0, [c(1.0, 0.0), c(0.0, 0.0)], 2).unwrap();
        let t_final = 1.0;
        let run = |dt: f64| {
            let plan = EvolutionPlan {
                dt,
                n_steps: (t_final / dt).round() as usize,
                events: vec![],
                snapshot_stride: 0,
            };
            run_scenario(&split, &plan, &grid, &f0, 0.0)
                .unwrap()
                .final_field
        };
        let reference = run(0.0005);
        let err = |dt: f64| {
            let f = run(dt);
            (&f.amps - &reference.amps)
                .iter()
                .map(|z| z.norm_sqr())
                .sum::<f64>()
                .sqrt()
        };
        let e1 = err(0.02);
        let e2 = err(0.01);
        let ratio = e1 / e2;
        assert!(
            (2.6..=6.0).contains(&ratio),
            "convergence ratio {ratio} (e1={e1:.3e}, e2={e2:.3e})"
        );
    }

    #[test]
    fn events_are_involutions() {
        let grid = Arc::new(Grid1D::new(256, -50.0, 50.0).unwrap());
        for n_comp in [2usize, 4] {
            let (f0, _) =
                gaussian_packet(&grid, 0.0, 5.0, 1.2, [c(0.8, 0.1), c(0.0, -0.6)], n_comp).unwrap();
            for op in [SymmetryOp::K, SymmetryOp::C, SymmetryOp::T] {
                let mut f = f0.clone();
                apply_event(&mut f, op);
                assert!((f.norm_sq() - 1.0).abs() < 1e-12);
                if n_comp == 4 {
                    assert_eq!(f.reality_residual(), 0.0);
                }
                apply_event(&mut f, op);
                let err = (&f.amps - &f0.amps)
                    .iter()
                    .map(|z| z.norm())
                    .fold(0.0, f64::max);
                assert_eq!(err, 0.0, "{op:?} twice on {n_comp} comps");
            }
        }
    }

    #[test]
    fn two_and_four_component_events_are_consistent_through_the_lift() {
        let grid = Arc::new(Grid1D::new(256, -50.0, 50.0).unwrap());
        let pol = [c(0.3, -0.4), c(0.7, 0.2)];
        let (two, _) = gaussian_packet(&grid, 3.0, 5.0, 0.9, pol, 2).unwrap();
        let (four, _) = gaussian_packet(&grid, 3.0, 5.0, 0.9, pol, 4).unwrap();
        for op in [SymmetryOp::K, SymmetryOp::C, SymmetryOp::T] {
            let mut t2 = two.clone();
            let mut t4 = four.clone();
            apply_event(&mut t2, op);
            apply_event(&mut t4, op);
            let rec = t4.reconstruct_two_component().unwrap();
            let err = (&rec.amps - &t2.amps)
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(err < 1e-14, "{op:?}: {err:.2e}");
        }
    }

    #[test]
    fn event_validation_rejects_out_of_range_steps() {
        let plan = EvolutionPlan {
            dt: 0.01,
            n_steps: 10,
            events: vec![(11, SymmetryOp::T)],
            snapshot_stride: 0,
        };
        assert!(matches!(
            plan.validate(),
            Err(StepError::EventOutOfRange { .. })
        ));
    }
}
