//! Multi-component wavefunctions on the periodic grid.

use ndarray::{Array1, Array2};
use num_complex::Complex64;
use std::sync::Arc;
use thiserror::Error;

use super::grid::Grid1D;

#[derive(Debug, Error, PartialEq)]
pub enum PacketError {
    #[error("sigma must be positive, got {0}")]
    BadSigma(f64),
    #[error("polarization vector must be nonzero")]
    ZeroPolarization,
    #[error("component count must be 2 or 4, got {0}")]
    BadComponentCount(usize),
}

/// Warning raised by packet construction; does not abort the build.
#[derive(Debug, Clone, PartialEq)]
pub enum PacketWarning {
    /// Probability mass of the ideal packet lying outside the box.
    BoundaryOverlap { mass: f64 },
}

/// n_comp complex amplitudes per grid point, rows contiguous per component.
#[derive(Debug, Clone)]
pub struct SpinorField {
    pub grid: Arc<Grid1D>,
    pub amps: Array2<Complex64>,
}

impl SpinorField {
    pub fn zeros(grid: Arc<Grid1D>, n_comp: usize) -> Self {
        let n = grid.n_points;
        Self {
            grid,
            amps: Array2::from_elem((n_comp, n), Complex64::new(0.0, 0.0)),
        }
    }

    pub fn n_comp(&self) -> usize {
        self.amps.nrows()
    }

    /// Total probability: sum over x and components of |psi|^2 dx.
    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.grid.dx
    }

    pub fn normalize(&mut self) {
        let n = self.norm_sq().sqrt();
        if n > 0.0 {
            self.amps.mapv_inplace(|z| z / n);
        }
    }

    /// Probability density rho(x), integrating to norm_sq.
    pub fn density(&self) -> Array1<f64> {
        let n = self.grid.n_points;
        Array1::from_shape_fn(n, |j| {
            (0..self.n_comp()).map(|c| self.amps[[c, j]].norm_sqr()).sum()
        })
    }

    /// Largest |Im amplitude| over the field. Meaningful for lifted
    /// 4-component states, which stay entrywise real under the
    /// reality-preserving dynamics.
    pub fn reality_residual(&self) -> f64 {
        self.amps.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Reconstruct a 2-component complex field from a 4-component lift.
    pub fn reconstruct_two_component(&self) -> Option<SpinorField> {
        if self.n_comp() != 4 {
            return None;
        }
        let n = self.grid.n_points;
        let mut amps = Array2::from_elem((2, n), Complex64::new(0.0, 0.0));
        for j in 0..n {
            amps[[0, j]] = self.amps[[0, j]] + Complex64::i() * self.amps[[2, j]];
            amps[[1, j]] = self.amps[[1, j]] + Complex64::i() * self.amps[[3, j]];
        }
        Some(SpinorField {
            grid: Arc::clone(&self.grid),
            amps,
        })
    }
}

/// Normalized Gaussian wavepacket `pol_c * exp(-(x-x0)^2/(4 sigma^2) + i p0 x)`.
///
/// For 4-component models the packet is the lift of the 2-component packet,
/// so the initial state is entrywise real. The polarization is always a
/// 2-spinor.
pub fn gaussian_packet(
    grid: &Arc<Grid1D>,
    x0: f64,
    sigma: f64,
    p0: f64,
    polarization: [Complex64; 2],
    n_comp: usize,
) -> Result<(SpinorField, Vec<PacketWarning>), PacketError> {
    if !(sigma > 0.0) {
        return Err(PacketError::BadSigma(sigma));
    }
    let pol_norm_sq: f64 = polarization.iter().map(|z| z.norm_sqr()).sum();
    if pol_norm_sq == 0.0 {
        return Err(PacketError::ZeroPolarization);
    }
    if n_comp != 2 && n_comp != 4 {
        return Err(PacketError::BadComponentCount(n_comp));
    }

    let n = grid.n_points;
    let mut two = Array2::from_elem((2, n), Complex64::new(0.0, 0.0));
    for (j, &x) in grid.xs().iter().enumerate() {
        let env = (-((x - x0) * (x - x0)) / (4.0 * sigma * sigma)).exp();
        let phase = Complex64::from_polar(env, p0 * x);
        two[[0, j]] = polarization[0] * phase;
        two[[1, j]] = polarization[1] * phase;
    }
    let mut field = SpinorField {
        grid: Arc::clone(grid),
        amps: two,
    };
    field.normalize();

    let mut warnings = Vec::new();
    // Mass of the ideal (infinite-line) packet outside the box, via the
    // Gaussian tail integral of |psi|^2 ~ exp(-(x-x0)^2 / (2 sigma^2)).
    let tail = |d: f64| 0.5 * erfc(d / (std::f64::consts::SQRT_2 * sigma));
    let overlap = tail(x0 - grid.x_min) + tail(grid.x_max - x0);
    if overlap > 1e-8 {
        warnings.push(PacketWarning::BoundaryOverlap { mass: overlap });
    }

    if n_comp == 4 {
        let mut lifted = SpinorField::zeros(Arc::clone(grid), 4);
        for j in 0..n {
            for c in 0..2 {
                let z = field.amps[[c, j]];
                lifted.amps[[c, j]] = Complex64::new(z.re, 0.0);
                lifted.amps[[c + 2, j]] = Complex64::new(z.im, 0.0);
            }
        }
        field = lifted;
    }
    Ok((field, warnings))
}

// Complementary error function, Abramowitz & Stegun 7.1.26 (|err| < 1.5e-7,
// only used for the boundary-overlap warning threshold).
fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    let t = 1.0 / (1.0 + 0.3275911 * x);
    let poly = t
        * (0.254829592 + t * (-0.284496736 + t * (1.421413741 + t * (-1.453152027 + t * 1.061405429))));
    poly * (-x * x).exp()
}
