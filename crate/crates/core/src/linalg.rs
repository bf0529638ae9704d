//! Dense complex linear algebra at spinor scale.
//!
//! Everything here operates on small `ndarray` matrices (2x2 up to a few
//! thousand square for test oracles). No external LAPACK backend; the
//! eigensolver is a cyclic Jacobi sweep, which is plenty for Hermitian
//! matrices of this size.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity(n: usize) -> Array2<Complex64> {
    Array2::from_diag_elem(n, ONE)
}

pub fn pauli_x() -> Array2<Complex64> {
    ndarray::array![[ZERO, ONE], [ONE, ZERO]]
}

pub fn pauli_y() -> Array2<Complex64> {
    ndarray::array![[ZERO, -I], [I, ZERO]]
}

pub fn pauli_z() -> Array2<Complex64> {
    ndarray::array![[ONE, ZERO], [ZERO, -ONE]]
}

/// Kronecker product a (x) b.
pub fn kron(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = Array2::from_elem((ar * br, ac * bc), ZERO);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[[i, j]];
            for k in 0..br {
                for l in 0..bc {
                    out[[i * br + k, j * bc + l]] = aij * b[[k, l]];
                }
            }
        }
    }
    out
}

pub fn dagger(a: &Array2<Complex64>) -> Array2<Complex64> {
    a.t().mapv(|z| z.conj())
}

pub fn max_abs(a: &Array2<Complex64>) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn hermiticity_residual(a: &Array2<Complex64>) -> f64 {
    max_abs(&(a - &dagger(a)))
}

/// Max-norm distance of a†a from the identity.
pub fn unitarity_residual(a: &Array2<Complex64>) -> f64 {
    max_abs(&(dagger(a).dot(a) - identity(a.nrows())))
}

fn one_norm(a: &Array2<Complex64>) -> f64 {
    let mut max = 0.0f64;
    for j in 0..a.ncols() {
        let s: f64 = a.column(j).iter().map(|z| z.norm()).sum();
        max = max.max(s);
    }
    max
}

/// Matrix exponential by scaling and squaring with a Taylor series.
///
/// Accurate to machine precision for the well-conditioned (anti-)Hermitian
/// arguments used throughout this crate.
pub fn expm(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm requires a square matrix");
    let norm = one_norm(a);
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scale = Complex64::new(1.0 / (1u64 << s) as f64, 0.0);
    let a_s = a * scale;

    let mut result = identity(n);
    let mut term = identity(n);
    for k in 1..=24 {
        term = term.dot(&a_s) / Complex64::new(k as f64, 0.0);
        result = result + &term;
        if one_norm(&term) < 1e-18 {
            break;
        }
    }
    for _ in 0..s {
        result = result.dot(&result);
    }
    result
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
pub fn eigvalsh(a: &Array2<Complex64>) -> Array1<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "eigvalsh requires a square matrix");
    let mut m = a.clone();
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[[p, q]].norm_sqr();
            }
        }
        if off.sqrt() < 1e-14 * (1.0 + one_norm(a)) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[[p, q]];
                if apq.norm() < 1e-300 {
                    continue;
                }
                // Unitary 2x2 rotation annihilating m[p,q].
                let app = m[[p, p]].re;
                let aqq = m[[q, q]].re;
                let phase = apq / Complex64::new(apq.norm(), 0.0);
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let cp = Complex64::new(c, 0.0);
                let sp = phase * Complex64::new(s, 0.0);
                // Apply G† m G with G the rotation in the (p,q) plane.
                for k in 0..n {
                    let mkp = m[[k, p]];
                    let mkq = m[[k, q]];
                    m[[k, p]] = cp * mkp - sp.conj() * mkq;
                    m[[k, q]] = sp * mkp + cp * mkq;
                }
                for k in 0..n {
                    let mpk = m[[p, k]];
                    let mqk = m[[q, k]];
                    m[[p, k]] = cp * mpk - sp * mqk;
                    m[[q, k]] = sp.conj() * mpk + cp * mqk;
                }
            }
        }
    }
    let mut eigs: Vec<f64> = m.diag().iter().map(|z| z.re).collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Array1::from_vec(eigs)
}
