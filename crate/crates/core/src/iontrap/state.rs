//! States of the qubit1 (x) qubit2 (x) Fock(a) (x) Fock(b) register.

use ndarray::Array1;
use num_complex::Complex64;

use super::{IonError, IonTrapConfig};

/// Flattened amplitudes indexed as ((q1*2 + q2)*n_a + na)*n_b + nb.
#[derive(Debug, Clone)]
pub struct CompositeState {
    pub amps: Array1<Complex64>,
    pub n_a: usize,
    pub n_b: usize,
}

impl CompositeState {
    pub fn dim(&self) -> usize {
        4 * self.n_a * self.n_b
    }

    pub fn zeros(n_a: usize, n_b: usize) -> Self {
        Self {
            amps: Array1::from_elem(4 * n_a * n_b, Complex64::new(0.0, 0.0)),
            n_a,
            n_b,
        }
    }

    #[inline]
    pub fn index(&self, q1: usize, q2: usize, na: usize, nb: usize) -> usize {
        ((q1 * 2 + q2) * self.n_a + na) * self.n_b + nb
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) {
        let n = self.norm_sq().sqrt();
        if n > 0.0 {
            self.amps.mapv_inplace(|z| z / n);
        }
    }

    pub fn overlap(&self, other: &CompositeState) -> Complex64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn fidelity(&self, other: &CompositeState) -> f64 {
        self.overlap(other).norm_sqr()
    }

    /// Population in the top two Fock levels of either mode.
    pub fn truncation_leakage(&self) -> f64 {
        let mut leak = 0.0;
        for q1 in 0..2 {
            for q2 in 0..2 {
                for na in 0..self.n_a {
                    for nb in 0..self.n_b {
                        if na + 2 >= self.n_a || nb + 2 >= self.n_b {
                            leak += self.amps[self.index(q1, q2, na, nb)].norm_sqr();
                        }
                    }
                }
            }
        }
        leak
    }

    pub fn matches(&self, cfg: &IonTrapConfig) -> Result<(), IonError> {
        if self.n_a != cfg.n_a || self.n_b != cfg.n_b {
            return Err(IonError::DimensionMismatch {
                expected: cfg.dim(),
                got: self.dim(),
            });
        }
        Ok(())
    }

    /// Product state spin (x) mode_a (x) mode_b from a 4-component spin vector.
    pub fn product(
        spin: [Complex64; 4],
        mode_a: &Array1<Complex64>,
        mode_b: &Array1<Complex64>,
    ) -> Self {
        let (n_a, n_b) = (mode_a.len(), mode_b.len());
        let mut st = Self::zeros(n_a, n_b);
        for (s, &sv) in spin.iter().enumerate() {
            let (q1, q2) = (s / 2, s % 2);
            for (na, &av) in mode_a.iter().enumerate() {
                for (nb, &bv) in mode_b.iter().enumerate() {
                    let idx = st.index(q1, q2, na, nb);
                    st.amps[idx] = sv * av * bv;
                }
            }
        }
        st.normalize();
        st
    }

    /// Encoding of the lifted plane-wave analog: the 2-spinor `spin` riding
    /// the coherent wavepacket |alpha> on the COM mode, lifted so that every
    /// amplitude is real (stretch mode in vacuum).
    ///
    /// The real and imaginary parts of the motional wavefunction are the
    /// even/odd combinations of |alpha> and |conj(alpha)>, which have real
    /// Fock coefficients.
    pub fn lifted_coherent(
        spin: [Complex64; 2],
        alpha: Complex64,
        n_a: usize,
        n_b: usize,
    ) -> Self {
        let wa = coherent_amplitudes(n_a, alpha);
        let wac = coherent_amplitudes(n_a, alpha.conj());
        let w_re = Array1::from_shape_fn(n_a, |n| (wa[n] + wac[n]) / 2.0);
        let w_im = Array1::from_shape_fn(n_a, |n| (wa[n] - wac[n]) / Complex64::new(0.0, 2.0));
        let vac_b = fock_basis(n_b, 0);
        let mut st = Self::zeros(n_a, n_b);
        for (j, s) in spin.iter().enumerate() {
            // ancilla 0 rows carry Re(s w), ancilla 1 rows carry Im(s w)
            for na in 0..n_a {
                let top = s.re * w_re[na].re - s.im * w_im[na].re;
                let bot = s.im * w_re[na].re + s.re * w_im[na].re;
                for (nb, &bv) in vac_b.iter().enumerate() {
                    let idx_top = st.index(0, j, na, nb);
                    st.amps[idx_top] = Complex64::new(top, 0.0) * bv;
                    let idx_bot = st.index(1, j, na, nb);
                    st.amps[idx_bot] = Complex64::new(bot, 0.0) * bv;
                }
            }
        }
        st.normalize();
        st
    }
}

/// Truncated coherent-state amplitudes, renormalized on the truncation.
pub fn coherent_amplitudes(n: usize, alpha: Complex64) -> Array1<Complex64> {
    let mut v = Array1::from_elem(n, Complex64::new(0.0, 0.0));
    let mut term = Complex64::new(1.0, 0.0);
    v[0] = term;
    for k in 1..n {
        term = term * alpha / Complex64::new((k as f64).sqrt(), 0.0);
        v[k] = term;
    }
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.mapv(|z| z / norm)
}

pub fn fock_basis(n: usize, level: usize) -> Array1<Complex64> {
    let mut v = Array1::from_elem(n, Complex64::new(0.0, 0.0));
    v[level] = Complex64::new(1.0, 0.0);
    v
}
