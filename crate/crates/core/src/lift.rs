//! Complex-to-real state lift and the unitary realization of antiunitary maps.
//!
//! An n-component complex vector psi is stored as a 2n-component vector
//! with all real parts stacked over all imaginary parts,
//!
//! ```text
//!   Psi = (Re psi_1 .. Re psi_n, Im psi_1 .. Im psi_n)
//! ```
//!
//! so the enlarged space factors as ancilla (x) spinor with the ancilla on
//! the left. Complex conjugation of psi becomes the local unitary
//! V_K = sz (x) 1 on the lift, and every antiunitary U K becomes the unitary
//! Theta(U) V_K. Linear operators lift via
//!
//! ```text
//!   O -> Theta(O) = 1 (x) O_r - i sy (x) O_i,   O_r = Re O,  O_i = Im O,
//! ```
//!
//! which preserves unitarity and Hermiticity and intertwines with O through
//! the reconstruction map M = (1, i 1): M Theta = O M.
//!
//! Dynamics i d/dt psi = O psi + A psi* (Hermitian O, antisymmetric A)
//! lifts to the Hermitian generator
//!
//! ```text
//!   H = [i 1 (x) O_i - sy (x) O_r] + [i sz (x) A_i - i sx (x) A_r],
//! ```
//!
//! whose (-i H) is entrywise real, so real lifted vectors stay real. Theta
//! and the reality-preserving lift of the same O differ by a left factor
//! -sy (x) 1; the propagator uses the reality-preserving form, observables
//! and symmetry unitaries use Theta.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{identity, kron, pauli_x, pauli_y, pauli_z, I, ONE, ZERO};

#[derive(Debug, Error, PartialEq)]
pub enum LiftError {
    #[error("lifted vectors must have even dimension, got {0}")]
    OddDimension(usize),
    #[error("expected dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operator must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("operator must be Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },
    #[error("antilinear coefficient must be antisymmetric (residual {residual:.3e})")]
    NotAntisymmetric { residual: f64 },
}

/// What a lifted 2n x 2n matrix represents, per the construction used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    /// Theta(O): unitary-for-unitary, Hermitian-for-Hermitian lift.
    Theta,
    /// Enlarged Hamiltonian with (-i H) entrywise real.
    RealityPreservingHamiltonian,
    /// M† O M, reproduces complex-space expectation values on lifts.
    Observable,
    /// V_K, V_C or V_T.
    Symmetry,
}

/// A dense operator on the enlarged space, tagged with its construction.
#[derive(Debug, Clone)]
pub struct LiftedOperator {
    pub matrix: Array2<Complex64>,
    pub kind: OperatorKind,
}

impl LiftedOperator {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Apply to a lifted state.
    pub fn apply(&self, state: &Array1<Complex64>) -> Result<Array1<Complex64>, LiftError> {
        if state.len() != self.dim() {
            return Err(LiftError::DimensionMismatch {
                expected: self.dim(),
                got: state.len(),
            });
        }
        Ok(self.matrix.dot(state))
    }
}

/// Lift psi to (Re psi; Im psi). Total function, preserves the norm.
pub fn lift_state(psi: &Array1<Complex64>) -> Array1<Complex64> {
    let n = psi.len();
    let mut out = Array1::from_elem(2 * n, ZERO);
    for (j, z) in psi.iter().enumerate() {
        out[j] = Complex64::new(z.re, 0.0);
        out[n + j] = Complex64::new(z.im, 0.0);
    }
    out
}

/// Apply M = (1, i 1): psi = Psi_top + i Psi_bottom. Inverse of `lift_state`
/// on lifts; defined on every even-dimensional vector.
pub fn reconstruct(lifted: &Array1<Complex64>) -> Result<Array1<Complex64>, LiftError> {
    let d = lifted.len();
    if d % 2 != 0 {
        return Err(LiftError::OddDimension(d));
    }
    let n = d / 2;
    Ok(Array1::from_shape_fn(n, |j| lifted[j] + I * lifted[n + j]))
}

/// The non-square reconstruction matrix M = (1, i 1), shape n x 2n.
pub fn reconstruction_matrix(n: usize) -> Array2<Complex64> {
    let mut m = Array2::from_elem((n, 2 * n), ZERO);
    for j in 0..n {
        m[[j, j]] = ONE;
        m[[j, n + j]] = I;
    }
    m
}

/// V_K = sz (x) 1_n: complex conjugation as a local unitary on the ancilla.
pub fn conjugation_unitary(n: usize) -> LiftedOperator {
    LiftedOperator {
        matrix: kron(&pauli_z(), &identity(n)),
        kind: OperatorKind::Symmetry,
    }
}

/// 1+1d charge conjugation on the complex spinor: psi_c = i sy sz psi* = -sx psi*.
pub fn charge_conjugate_complex(psi: &Array1<Complex64>) -> Result<Array1<Complex64>, LiftError> {
    if psi.len() != 2 {
        return Err(LiftError::DimensionMismatch {
            expected: 2,
            got: psi.len(),
        });
    }
    Ok(ndarray::array![-psi[1].conj(), -psi[0].conj()])
}

/// V_C = -(sz (x) sx): charge conjugation on the enlarged space (n = 2).
pub fn charge_conjugation_unitary() -> LiftedOperator {
    LiftedOperator {
        matrix: kron(&pauli_z(), &pauli_x()).mapv(|z| -z),
        kind: OperatorKind::Symmetry,
    }
}

/// V_T = sz (x) sz: time reversal with U_T = sz on the enlarged space (n = 2).
pub fn time_reversal_unitary() -> LiftedOperator {
    LiftedOperator {
        matrix: kron(&pauli_z(), &pauli_z()),
        kind: OperatorKind::Symmetry,
    }
}

fn split_re_im(o: &Array2<Complex64>) -> (Array2<Complex64>, Array2<Complex64>) {
    let re = o.mapv(|z| Complex64::new(z.re, 0.0));
    let im = o.mapv(|z| Complex64::new(z.im, 0.0));
    (re, im)
}

/// Theta(O) = 1 (x) O_r - i sy (x) O_i.
pub fn lift_linear_operator(o: &Array2<Complex64>) -> Result<LiftedOperator, LiftError> {
    if o.nrows() != o.ncols() {
        return Err(LiftError::NotSquare {
            rows: o.nrows(),
            cols: o.ncols(),
        });
    }
    let (o_r, o_i) = split_re_im(o);
    let matrix = kron(&identity(2), &o_r) + kron(&pauli_y(), &o_i).mapv(|z| -I * z);
    Ok(LiftedOperator {
        matrix,
        kind: OperatorKind::Theta,
    })
}

/// M† O M = (1 - sy) (x) O for Hermitian O: the expectation-value lift.
pub fn lift_observable(o: &Array2<Complex64>) -> Result<LiftedOperator, LiftError> {
    if o.nrows() != o.ncols() {
        return Err(LiftError::NotSquare {
            rows: o.nrows(),
            cols: o.ncols(),
        });
    }
    let residual = crate::linalg::hermiticity_residual(o);
    if residual > 1e-12 {
        return Err(LiftError::NotHermitian { residual });
    }
    let coupler = identity(2) - pauli_y();
    Ok(LiftedOperator {
        matrix: kron(&coupler, o),
        kind: OperatorKind::Observable,
    })
}

/// Enlarged Hamiltonian for i d/dt psi = O psi + A psi*.
///
/// O must be Hermitian and A antisymmetric; together these make the complex
/// dynamics norm-preserving and the lifted generator Hermitian with
/// (-i H) entrywise real.
pub fn lift_hamiltonian_reality_preserving(
    o: &Array2<Complex64>,
    a: &Array2<Complex64>,
) -> Result<LiftedOperator, LiftError> {
    if o.nrows() != o.ncols() {
        return Err(LiftError::NotSquare {
            rows: o.nrows(),
            cols: o.ncols(),
        });
    }
    if a.dim() != o.dim() {
        return Err(LiftError::DimensionMismatch {
            expected: o.nrows(),
            got: a.nrows(),
        });
    }
    let herm = crate::linalg::hermiticity_residual(o);
    if herm > 1e-12 {
        return Err(LiftError::NotHermitian { residual: herm });
    }
    let antisym = crate::linalg::max_abs(&(a.t().to_owned() + a));
    if antisym > 1e-12 {
        return Err(LiftError::NotAntisymmetric { residual: antisym });
    }
    let (o_r, o_i) = split_re_im(o);
    let (a_r, a_i) = split_re_im(a);
    let matrix = kron(&identity(2), &o_i).mapv(|z| I * z)
        - kron(&pauli_y(), &o_r)
        + kron(&pauli_z(), &a_i).mapv(|z| I * z)
        - kron(&pauli_x(), &a_r).mapv(|z| I * z);
    Ok(LiftedOperator {
        matrix,
        kind: OperatorKind::RealityPreservingHamiltonian,
    })
}
