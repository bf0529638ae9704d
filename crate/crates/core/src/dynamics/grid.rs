//! Periodic 1D grid with its momentum lattice.

use ndarray::Array1;
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("n_points must be a power of two >= 64, got {0}")]
    BadPointCount(usize),
    #[error("x_max must exceed x_min (got [{0}, {1}])")]
    EmptyExtent(f64, f64),
}

/// Uniform periodic grid on [x_min, x_max) with 2^k points.
///
/// The momentum lattice follows FFT ordering: k_j = j * 2*pi/L for
/// j = 0..n/2-1, then the single Nyquist mode at -k_max, then the negative
/// frequencies. It is symmetric about zero except that one Nyquist mode.
#[derive(Debug, Clone)]
pub struct Grid1D {
    pub n_points: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub dx: f64,
    xs: Array1<f64>,
    ks: Array1<f64>,
}

impl Grid1D {
    pub fn new(n_points: usize, x_min: f64, x_max: f64) -> Result<Self, GridError> {
        if n_points < 64 || !n_points.is_power_of_two() {
            return Err(GridError::BadPointCount(n_points));
        }
        if !(x_max > x_min) {
            return Err(GridError::EmptyExtent(x_min, x_max));
        }
        let length = x_max - x_min;
        let dx = length / n_points as f64;
        let xs = Array1::from_shape_fn(n_points, |j| x_min + j as f64 * dx);
        let dk = TAU / length;
        let half = n_points / 2;
        let ks = Array1::from_shape_fn(n_points, |j| {
            if j < half {
                j as f64 * dk
            } else {
                (j as f64 - n_points as f64) * dk
            }
        });
        Ok(Self {
            n_points,
            x_min,
            x_max,
            dx,
            xs,
            ks,
        })
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn xs(&self) -> &Array1<f64> {
        &self.xs
    }

    /// Momentum lattice in FFT ordering.
    pub fn ks(&self) -> &Array1<f64> {
        &self.ks
    }

    pub fn k_max(&self) -> f64 {
        std::f64::consts::PI / self.dx
    }
}
