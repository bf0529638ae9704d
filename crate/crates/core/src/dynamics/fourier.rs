//! Thin wrapper over rustfft for row-wise transforms of multi-component fields.

use ndarray::Array2;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

/// Forward/inverse FFT plans for one grid size, reused across steps.
pub struct Fourier {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
}

impl Fourier {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let scratch_len = fwd
            .get_inplace_scratch_len()
            .max(inv.get_inplace_scratch_len());
        Self {
            n,
            fwd,
            inv,
            scratch: vec![Complex64::new(0.0, 0.0); scratch_len],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// In-place forward transform of every row (unnormalized).
    pub fn forward_rows(&mut self, amps: &mut Array2<Complex64>) {
        for mut row in amps.rows_mut() {
            let slice = row.as_slice_mut().expect("contiguous row");
            self.fwd.process_with_scratch(slice, &mut self.scratch);
        }
    }

    /// In-place inverse transform of every row, including the 1/n factor.
    pub fn inverse_rows(&mut self, amps: &mut Array2<Complex64>) {
        let scale = 1.0 / self.n as f64;
        for mut row in amps.rows_mut() {
            let slice = row.as_slice_mut().expect("contiguous row");
            self.inv.process_with_scratch(slice, &mut self.scratch);
            for z in slice.iter_mut() {
                *z *= scale;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array2;

    #[test]
    fn forward_inverse_round_trip() {
        let n = 128;
        let mut f = Fourier::new(n);
        let orig = Array2::from_shape_fn((2, n), |(c, j)| {
            Complex64::new((j as f64 * 0.1 + c as f64).sin(), (j as f64 * 0.07).cos())
        });
        let mut work = orig.clone();
        f.forward_rows(&mut work);
        f.inverse_rows(&mut work);
        let err = (&work - &orig).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(err < 1e-12);
    }

    #[test]
    fn plane_wave_lands_on_single_mode() {
        let n = 64;
        let mut f = Fourier::new(n);
        let j0 = 5usize;
        let mut amps = Array2::from_shape_fn((1, n), |(_, j)| {
            Complex64::from_polar(1.0, std::f64::consts::TAU * j0 as f64 * j as f64 / n as f64)
        });
        f.forward_rows(&mut amps);
        for j in 0..n {
            let mag = amps[[0, j]].norm();
            if j == j0 {
                assert!((mag - n as f64).abs() < 1e-9);
            } else {
                assert!(mag < 1e-9);
            }
        }
    }
}
