//! Structured operator actions on the composite register.
//!
//! Operators are applied factor-by-factor (qubit rotations, ladder shifts),
//! so a Hamiltonian action costs O(dim) instead of O(dim^2). Dense matrices
//! are only materialized in tests.

use ndarray::Array2;
use num_complex::Complex64;

use super::state::CompositeState;
use super::{EffectiveParams, IonTrapConfig};

type C64 = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    #[inline]
    fn rows(&self) -> [[C64; 2]; 2] {
        let zero = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        match self {
            Pauli::X => [[zero, one], [one, zero]],
            Pauli::Y => [[zero, -i], [i, zero]],
            Pauli::Z => [[one, zero], [zero, -one]],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qubit {
    One,
    Two,
}

/// dst += coeff * (pauli on `qubit`) src
fn acc_qubit(
    dst: &mut [C64],
    src: &[C64],
    qubit: Qubit,
    pauli: Pauli,
    coeff: C64,
    n_a: usize,
    n_b: usize,
) {
    let m = pauli.rows();
    let nab = n_a * n_b;
    match qubit {
        Qubit::One => {
            let block = 2 * nab;
            for i in 0..block {
                let s0 = src[i];
                let s1 = src[block + i];
                dst[i] += coeff * (m[0][0] * s0 + m[0][1] * s1);
                dst[block + i] += coeff * (m[1][0] * s0 + m[1][1] * s1);
            }
        }
        Qubit::Two => {
            for q1 in 0..2 {
                let base = q1 * 2 * nab;
                for i in 0..nab {
                    let s0 = src[base + i];
                    let s1 = src[base + nab + i];
                    dst[base + i] += coeff * (m[0][0] * s0 + m[0][1] * s1);
                    dst[base + nab + i] += coeff * (m[1][0] * s0 + m[1][1] * s1);
                }
            }
        }
    }
}

/// dst += coeff * (p1 on qubit1)(p2 on qubit2) src
fn acc_two_qubit(
    dst: &mut [C64],
    src: &[C64],
    p1: Pauli,
    p2: Pauli,
    coeff: C64,
    n_a: usize,
    n_b: usize,
) {
    let m1 = p1.rows();
    let m2 = p2.rows();
    let nab = n_a * n_b;
    for q1 in 0..2 {
        for q2 in 0..2 {
            let dst_base = (q1 * 2 + q2) * nab;
            for s1 in 0..2 {
                for s2 in 0..2 {
                    let w = coeff * m1[q1][s1] * m2[q2][s2];
                    if w.norm_sqr() == 0.0 {
                        continue;
                    }
                    let src_base = (s1 * 2 + s2) * nab;
                    for i in 0..nab {
                        dst[dst_base + i] += w * src[src_base + i];
                    }
                }
            }
        }
    }
}

/// dst += coeff * i (a† - a) src on the COM mode.
fn acc_i_adag_minus_a(dst: &mut [C64], src: &[C64], coeff: C64, n_a: usize, n_b: usize) {
    let i = C64::new(0.0, 1.0);
    let dim = 4 * n_a * n_b;
    for idx in 0..dim {
        let na = (idx / n_b) % n_a;
        let mut acc = C64::new(0.0, 0.0);
        if na >= 1 {
            acc += (na as f64).sqrt() * src[idx - n_b];
        }
        if na + 1 < n_a {
            acc -= ((na + 1) as f64).sqrt() * src[idx + n_b];
        }
        dst[idx] += coeff * i * acc;
    }
}

/// dst += coeff * (b† phase + b conj(phase)) src on the stretch mode.
fn acc_b_drive(dst: &mut [C64], src: &[C64], phase: C64, coeff: C64, n_a: usize, n_b: usize) {
    let dim = 4 * n_a * n_b;
    for idx in 0..dim {
        let nb = idx % n_b;
        let mut acc = C64::new(0.0, 0.0);
        if nb >= 1 {
            acc += phase * (nb as f64).sqrt() * src[idx - 1];
        }
        if nb + 1 < n_b {
            acc += phase.conj() * ((nb + 1) as f64).sqrt() * src[idx + 1];
        }
        dst[idx] += coeff * acc;
    }
}

/// A Hamiltonian (or generator) acting on the composite register through
/// structured factor applications.
#[derive(Debug, Clone)]
pub enum IonOperator {
    /// Interaction-picture drive
    /// eta_r Omega (sx x 1 - 1 x sy)(b† e^{-i delta t} + b e^{+i delta t})
    ///   + eta Omega~ (1 x sx) i(a† - a).
    ///
    /// The sideband phase rotates as e^{-i delta t} on b†; with this sign
    /// the large-detuning limit reproduces the effective mass term
    /// -mc2 (sx x sy) with mc2 = 2 eta_r^2 Omega^2 / delta.
    Interaction {
        stretch_coupling: f64,
        com_coupling: f64,
        delta: f64,
    },
    /// c_sim (1 x sx) p_x - mc2_sim (sx x sy), p_x = i(a† - a)/(2 Delta).
    Effective {
        c_sim: f64,
        mc2_sim: f64,
        inv_two_delta: f64,
    },
    /// scale * (pauli on qubit) (x) p_x
    SpinMomentum {
        qubit: Qubit,
        pauli: Pauli,
        scale: f64,
        inv_two_delta: f64,
    },
    /// scale * (p1 x p2) (x) p_x
    TwoSpinMomentum {
        p1: Pauli,
        p2: Pauli,
        scale: f64,
        inv_two_delta: f64,
    },
    /// Pseudo-helicity observable (1 x sx - sy x sx) (x) p_x.
    SigmaTilde { inv_two_delta: f64 },
}

pub fn interaction_hamiltonian(config: &IonTrapConfig) -> IonOperator {
    IonOperator::Interaction {
        stretch_coupling: config.eta_r() * config.rabi,
        com_coupling: config.eta * config.rabi_tilde,
        delta: config.delta,
    }
}

pub fn effective_hamiltonian(config: &IonTrapConfig) -> IonOperator {
    let EffectiveParams { c_sim, mc2_sim } = config.effective_params();
    IonOperator::Effective {
        c_sim,
        mc2_sim,
        inv_two_delta: 1.0 / (2.0 * config.delta_width()),
    }
}

pub fn sigma_tilde_observable(config: &IonTrapConfig) -> IonOperator {
    IonOperator::SigmaTilde {
        inv_two_delta: 1.0 / (2.0 * config.delta_width()),
    }
}

impl IonOperator {
    /// dst = (self at time t) src. `tmp` is scratch of the same length.
    pub fn apply(&self, t: f64, src: &[C64], dst: &mut [C64], tmp: &mut [C64], n_a: usize, n_b: usize) {
        dst.fill(C64::new(0.0, 0.0));
        let one = C64::new(1.0, 0.0);
        match *self {
            IonOperator::Interaction {
                stretch_coupling,
                com_coupling,
                delta,
            } => {
                // tmp = (b† e^{-i delta t} + b e^{+i delta t}) src
                tmp.fill(C64::new(0.0, 0.0));
                let phase = C64::from_polar(1.0, -delta * t);
                acc_b_drive(tmp, src, phase, one, n_a, n_b);
                let g = C64::new(stretch_coupling, 0.0);
                acc_qubit(dst, tmp, Qubit::One, Pauli::X, g, n_a, n_b);
                acc_qubit(dst, tmp, Qubit::Two, Pauli::Y, -g, n_a, n_b);
                // tmp = i(a† - a) src
                tmp.fill(C64::new(0.0, 0.0));
                acc_i_adag_minus_a(tmp, src, one, n_a, n_b);
                acc_qubit(dst, tmp, Qubit::Two, Pauli::X, C64::new(com_coupling, 0.0), n_a, n_b);
            }
            IonOperator::Effective {
                c_sim,
                mc2_sim,
                inv_two_delta,
            } => {
                tmp.fill(C64::new(0.0, 0.0));
                acc_i_adag_minus_a(tmp, src, C64::new(inv_two_delta, 0.0), n_a, n_b);
                acc_qubit(dst, tmp, Qubit::Two, Pauli::X, C64::new(c_sim, 0.0), n_a, n_b);
                acc_two_qubit(dst, src, Pauli::X, Pauli::Y, C64::new(-mc2_sim, 0.0), n_a, n_b);
            }
            IonOperator::SpinMomentum {
                qubit,
                pauli,
                scale,
                inv_two_delta,
            } => {
                tmp.fill(C64::new(0.0, 0.0));
                acc_i_adag_minus_a(tmp, src, C64::new(inv_two_delta, 0.0), n_a, n_b);
                acc_qubit(dst, tmp, qubit, pauli, C64::new(scale, 0.0), n_a, n_b);
            }
            IonOperator::TwoSpinMomentum {
                p1,
                p2,
                scale,
                inv_two_delta,
            } => {
                tmp.fill(C64::new(0.0, 0.0));
                acc_i_adag_minus_a(tmp, src, C64::new(inv_two_delta, 0.0), n_a, n_b);
                acc_two_qubit(dst, tmp, p1, p2, C64::new(scale, 0.0), n_a, n_b);
            }
            IonOperator::SigmaTilde { inv_two_delta } => {
                tmp.fill(C64::new(0.0, 0.0));
                acc_i_adag_minus_a(tmp, src, C64::new(inv_two_delta, 0.0), n_a, n_b);
                acc_qubit(dst, tmp, Qubit::Two, Pauli::X, one, n_a, n_b);
                acc_two_qubit(dst, tmp, Pauli::Y, Pauli::X, -one, n_a, n_b);
            }
        }
    }

    /// Loose upper bound on the operator norm, for integrator sub-stepping.
    pub fn norm_bound(&self, n_a: usize, n_b: usize) -> f64 {
        let p_a = 2.0 * (n_a as f64).sqrt();
        let p_b = 2.0 * (n_b as f64).sqrt();
        match *self {
            IonOperator::Interaction {
                stretch_coupling,
                com_coupling,
                ..
            } => 2.0 * stretch_coupling.abs() * p_b + com_coupling.abs() * p_a,
            IonOperator::Effective {
                c_sim,
                mc2_sim,
                inv_two_delta,
            } => c_sim.abs() * inv_two_delta * p_a + mc2_sim.abs(),
            IonOperator::SpinMomentum {
                scale,
                inv_two_delta,
                ..
            }
            | IonOperator::TwoSpinMomentum {
                scale,
                inv_two_delta,
                ..
            } => scale.abs() * inv_two_delta * p_a,
            IonOperator::SigmaTilde { inv_two_delta } => 2.0 * inv_two_delta * p_a,
        }
    }

    /// Dense matrix by column-wise application (test oracle scale only).
    pub fn to_dense(&self, t: f64, n_a: usize, n_b: usize) -> Array2<C64> {
        let dim = 4 * n_a * n_b;
        let mut out = Array2::from_elem((dim, dim), C64::new(0.0, 0.0));
        let mut src = vec![C64::new(0.0, 0.0); dim];
        let mut dst = vec![C64::new(0.0, 0.0); dim];
        let mut tmp = vec![C64::new(0.0, 0.0); dim];
        for col in 0..dim {
            src.fill(C64::new(0.0, 0.0));
            src[col] = C64::new(1.0, 0.0);
            self.apply(t, &src, &mut dst, &mut tmp, n_a, n_b);
            for (row, z) in dst.iter().enumerate() {
                out[[row, col]] = *z;
            }
        }
        out
    }

    /// Real expectation value on a state.
    pub fn expect(&self, t: f64, state: &CompositeState) -> f64 {
        let dim = state.dim();
        let mut dst = vec![C64::new(0.0, 0.0); dim];
        let mut tmp = vec![C64::new(0.0, 0.0); dim];
        self.apply(
            t,
            state.amps.as_slice().unwrap(),
            &mut dst,
            &mut tmp,
            state.n_a,
            state.n_b,
        );
        state
            .amps
            .iter()
            .zip(dst.iter())
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }
}

/// <pauli on qubit> spin expectation.
pub fn expect_qubit(state: &CompositeState, qubit: Qubit, pauli: Pauli) -> f64 {
    let dim = state.dim();
    let mut dst = vec![C64::new(0.0, 0.0); dim];
    acc_qubit(
        &mut dst,
        state.amps.as_slice().unwrap(),
        qubit,
        pauli,
        C64::new(1.0, 0.0),
        state.n_a,
        state.n_b,
    );
    state
        .amps
        .iter()
        .zip(dst.iter())
        .map(|(a, b)| (a.conj() * b).re)
        .sum()
}

/// <(p1 x p2)> two-qubit correlation.
pub fn expect_two_qubit(state: &CompositeState, p1: Pauli, p2: Pauli) -> f64 {
    let dim = state.dim();
    let mut dst = vec![C64::new(0.0, 0.0); dim];
    acc_two_qubit(
        &mut dst,
        state.amps.as_slice().unwrap(),
        p1,
        p2,
        C64::new(1.0, 0.0),
        state.n_a,
        state.n_b,
    );
    state
        .amps
        .iter()
        .zip(dst.iter())
        .map(|(a, b)| (a.conj() * b).re)
        .sum()
}

/// <i(a† - a)> on the COM mode.
pub fn expect_i_adag_minus_a(state: &CompositeState) -> f64 {
    let dim = state.dim();
    let mut dst = vec![C64::new(0.0, 0.0); dim];
    acc_i_adag_minus_a(
        &mut dst,
        state.amps.as_slice().unwrap(),
        C64::new(1.0, 0.0),
        state.n_a,
        state.n_b,
    );
    state
        .amps
        .iter()
        .zip(dst.iter())
        .map(|(a, b)| (a.conj() * b).re)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iontrap::state::{coherent_amplitudes, fock_basis};
    use crate::linalg::hermiticity_residual;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn small_config() -> IonTrapConfig {
        IonTrapConfig {
            nu: 1.0,
            rabi: 0.4,
            rabi_tilde: 0.7,
            delta: 0.3,
            eta: 0.06,
            qubit_splitting: 50.0,
            ion_mass: 0.25,
            n_a: 6,
            n_b: 5,
        }
    }

    #[test]
    fn zero_couplings_give_zero_operator() {
        let mut cfg = small_config();
        cfg.rabi = 0.0;
        cfg.rabi_tilde = 0.0;
        let h = interaction_hamiltonian(&cfg);
        let dense = h.to_dense(0.37, cfg.n_a, cfg.n_b);
        assert!(crate::linalg::max_abs(&dense) == 0.0);
    }

    #[test]
    fn interaction_is_hermitian_at_random_times() {
        let cfg = small_config();
        let h = interaction_hamiltonian(&cfg);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let t: f64 = rng.random::<f64>() * 100.0;
            let dense = h.to_dense(t, cfg.n_a, cfg.n_b);
            assert!(hermiticity_residual(&dense) <= 1e-13);
        }
    }

    #[test]
    fn drive_term_at_t_zero_is_b_plus_bdag() {
        // At t = 0 the stretch factor is proportional to (b† + b): the dense
        // matrix is then real in the Fock x spin basis layout except for the
        // sy factor.
        let mut cfg = small_config();
        cfg.rabi_tilde = 0.0;
        let h = interaction_hamiltonian(&cfg);
        let d0 = h.to_dense(0.0, cfg.n_a, cfg.n_b);
        // (sx x 1)(b†+b) part is real; (1 x sy)(b†+b) is imaginary. Check
        // the symmetrized real part matches the sx block structure: entries
        // connecting q1-blocks are real.
        let nab = cfg.n_a * cfg.n_b;
        for i in 0..nab {
            for j in 0..nab {
                let z = d0[[i, 2 * nab + j]]; // q1: 0 -> 1, q2 = 0
                assert!(z.im.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn effective_mass_only_squares_to_scalar() {
        // With Omega-tilde = 0 the effective H is -mc2 (sx x sy): H^2 = mc2^2
        // and tr H = 0, so the spectrum is ±mc2 with equal multiplicity.
        let mut cfg = small_config();
        cfg.rabi_tilde = 0.0;
        let h = effective_hamiltonian(&cfg);
        let mc2 = cfg.effective_params().mc2_sim;
        let dense = h.to_dense(0.0, cfg.n_a, cfg.n_b);
        let sq = dense.dot(&dense);
        let dim = 4 * cfg.n_a * cfg.n_b;
        let expect = Array2::from_diag_elem(dim, C64::new(mc2 * mc2, 0.0));
        assert!(crate::linalg::max_abs(&(sq - expect)) < 1e-14);
        let trace: C64 = dense.diag().iter().sum();
        assert!(trace.norm() < 1e-12);
    }

    #[test]
    fn effective_kinetic_only_when_rabi_off() {
        let mut cfg = small_config();
        cfg.rabi = 0.0;
        let h = effective_hamiltonian(&cfg);
        let dense = h.to_dense(0.0, cfg.n_a, cfg.n_b);
        // Pure kinetic term: anticommutes with (1 x sz) since it carries sx
        // on qubit 2.
        let sz2 = IonOperator::SpinMomentum {
            qubit: Qubit::Two,
            pauli: Pauli::Z,
            scale: 1.0,
            inv_two_delta: 1.0,
        };
        let _ = sz2; // structural check below suffices
        assert!(hermiticity_residual(&dense) < 1e-13);
        // no (sx x sy) component: overlap with the mass direction vanishes
        let mass = IonOperator::Effective {
            c_sim: 0.0,
            mc2_sim: 1.0,
            inv_two_delta: 1.0,
        }
        .to_dense(0.0, cfg.n_a, cfg.n_b);
        let overlap: C64 = dense
            .iter()
            .zip(mass.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        assert!(overlap.norm() < 1e-12);
    }

    #[test]
    fn quadrature_expectation_on_coherent_state() {
        // <i(a† - a)> = i(conj(alpha) - alpha) = 2 Im(alpha).
        let spin = [
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ];
        for alpha in [C64::new(0.0, 1.0), C64::new(0.7, -0.3), C64::new(1.2, 0.0)] {
            let st = CompositeState::product(
                spin,
                &coherent_amplitudes(24, alpha),
                &fock_basis(5, 0),
            );
            let got = expect_i_adag_minus_a(&st);
            assert!(
                (got - 2.0 * alpha.im).abs() < 1e-8,
                "alpha={alpha}: {got}"
            );
        }
    }

    #[test]
    fn spin_expectations_on_product_states() {
        // spin (|00> + |01>)/sqrt(2): q2 in the +x state.
        let inv = 1.0 / 2f64.sqrt();
        let spin = [
            C64::new(inv, 0.0),
            C64::new(inv, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
        ];
        let st = CompositeState::product(spin, &fock_basis(6, 0), &fock_basis(5, 0));
        assert!((expect_qubit(&st, Qubit::Two, Pauli::X) - 1.0).abs() < 1e-12);
        assert!(expect_qubit(&st, Qubit::Two, Pauli::Z).abs() < 1e-12);
        assert!((expect_qubit(&st, Qubit::One, Pauli::Z) - 1.0).abs() < 1e-12);
        assert!(expect_two_qubit(&st, Pauli::Z, Pauli::X).abs() - 1.0 < 1e-12);
    }
}
