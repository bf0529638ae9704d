//! Expectation values and the per-snapshot observable record.


use serde::Serialize;

use super::field::SpinorField;
use super::fourier::Fourier;

/// One row of the observables time series.
#[derive(Debug, Clone, Serialize)]
pub struct Observables {
    pub t: f64,
    pub norm: f64,
    pub x_mean: f64,
    pub p_mean: f64,
    /// Pseudo-helicity <sx px> (or its lifted equivalent).
    pub sigma_ph: f64,
    /// Probability mass right of the configured x_c.
    pub transmission: f64,
    /// Max |Im amplitude|; zero for 2-component states by construction.
    pub reality_residual: f64,
}

pub fn position_mean(field: &SpinorField) -> f64 {
    let rho = field.density();
    let total: f64 = rho.sum();
    field
        .grid
        .xs()
        .iter()
        .zip(rho.iter())
        .map(|(x, r)| x * r)
        .sum::<f64>()
        / total
}

/// Probability mass at x > x_c.
pub fn transmission(field: &SpinorField, x_c: f64) -> f64 {
    let rho = field.density();
    field
        .grid
        .xs()
        .iter()
        .zip(rho.iter())
        .filter(|(x, _)| **x > x_c)
        .map(|(_, r)| r)
        .sum::<f64>()
        * field.grid.dx
}

/// <p> on the momentum lattice.
pub fn momentum_mean(field: &SpinorField, fourier: &mut Fourier) -> f64 {
    let mut hat = field.amps.clone();
    fourier.forward_rows(&mut hat);
    let ks = field.grid.ks();
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 0..field.grid.n_points {
        let w: f64 = (0..field.n_comp()).map(|c| hat[[c, j]].norm_sqr()).sum();
        num += ks[j] * w;
        den += w;
    }
    num / den
}

/// Pseudo-helicity Sigma = <sx px> for 2-component states; for 4-component
/// lifts the equivalent observable (1 x sx - sy x sx) (x) px. The two agree
/// on lifted states.
pub fn pseudo_helicity(field: &SpinorField, fourier: &mut Fourier) -> f64 {
    let mut hat = field.amps.clone();
    fourier.forward_rows(&mut hat);
    let ks = field.grid.ks();
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 0..field.grid.n_points {
        let spin_part = match field.n_comp() {
            2 => 2.0 * (hat[[0, j]].conj() * hat[[1, j]]).re,
            4 => {
                let a = hat[[0, j]];
                let b = hat[[1, j]];
                let c = hat[[2, j]];
                let d = hat[[3, j]];
                2.0 * (a.conj() * b).re + 2.0 * (c.conj() * d).re
                    - 2.0 * (a.conj() * d).im
                    - 2.0 * (b.conj() * c).im
            }
            _ => unreachable!("fields are 2- or 4-component"),
        };
        let w: f64 = (0..field.n_comp()).map(|c| hat[[c, j]].norm_sqr()).sum();
        num += ks[j] * spin_part;
        den += w;
    }
    num / den
}

pub fn observables(field: &SpinorField, fourier: &mut Fourier, t: f64, x_c: f64) -> Observables {
    Observables {
        t,
        norm: field.norm_sq(),
        x_mean: position_mean(field),
        p_mean: momentum_mean(field, fourier),
        sigma_ph: pseudo_helicity(field, fourier),
        transmission: transmission(field, x_c),
        reality_residual: if field.n_comp() == 4 {
            field.reality_residual()
        } else {
            0.0
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::field::gaussian_packet;
    use crate::dynamics::grid::Grid1D;
    use num_complex::Complex64 as C64;
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn symmetric_packet_splits_evenly_at_center() {
        // Center the packet exactly between two grid nodes so the lattice
        // pairs up symmetrically around x_c = x0.
        let g = Arc::new(Grid1D::new(2048, -128.0, 128.0).unwrap());
        let x0 = g.dx / 2.0;
        let (f, _) = gaussian_packet(&g, x0, 4.0, 0.0, [c(1.0, 0.0), c(0.0, 0.0)], 2).unwrap();
        assert!((transmission(&f, x0) - 0.5).abs() < 1e-6);
        assert!((f.density().sum() * g.dx - 1.0).abs() < 1e-12);
    }

    #[test]
    fn windowed_plane_wave_has_pseudo_helicity_k0() {
        // psi = e^{i k0 x} (1,1)/sqrt(2) under a wide window: Sigma ~ k0.
        let g = Arc::new(Grid1D::new(4096, -200.0, 200.0).unwrap());
        let k0 = 1.25;
        let (f, _) = gaussian_packet(&g, 0.0, 30.0, k0, [c(1.0, 0.0), c(1.0, 0.0)], 2).unwrap();
        let mut fft = Fourier::new(g.n_points);
        assert!((pseudo_helicity(&f, &mut fft) - k0).abs() < 1e-5);
    }

    #[test]
    fn single_component_packet_has_zero_pseudo_helicity() {
        let g = Arc::new(Grid1D::new(1024, -100.0, 100.0).unwrap());
        let (f, _) = gaussian_packet(&g, 0.0, 5.0, 2.0, [c(1.0, 0.0), c(0.0, 0.0)], 2).unwrap();
        let mut fft = Fourier::new(g.n_points);
        assert!(pseudo_helicity(&f, &mut fft).abs() < 1e-12);
    }

    #[test]
    fn lifted_and_complex_pseudo_helicity_agree() {
        let g = Arc::new(Grid1D::new(1024, -100.0, 100.0).unwrap());
        let mut fft = Fourier::new(g.n_points);
        for (p0, pol) in [
            (1.5, [c(1.0, 0.0), c(1.0, 0.0)]),
            (-0.7, [c(0.8, 0.1), c(0.2, -0.55)]),
            (2.2, [c(0.0, 1.0), c(1.0, 0.0)]),
        ] {
            let (two, _) = gaussian_packet(&g, 5.0, 6.0, p0, pol, 2).unwrap();
            let (four, _) = gaussian_packet(&g, 5.0, 6.0, p0, pol, 4).unwrap();
            let a = pseudo_helicity(&two, &mut fft);
            let b = pseudo_helicity(&four, &mut fft);
            assert!((a - b).abs() <= 1e-10, "p0={p0}: {a} vs {b}");
        }
    }

    #[test]
    fn fresh_lift_has_zero_reality_residual() {
        let g = Arc::new(Grid1D::new(1024, -100.0, 100.0).unwrap());
        let (four, _) = gaussian_packet(&g, 0.0, 5.0, 1.0, [c(1.0, 0.0), c(0.0, 1.0)], 4).unwrap();
        let mut fft = Fourier::new(g.n_points);
        let obs = observables(&four, &mut fft, 0.0, 0.0);
        assert!(obs.reality_residual <= 1e-12);
        assert!((obs.norm - 1.0).abs() < 1e-12);
    }
}
