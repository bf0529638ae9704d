//! Built-in scenario presets.
//!
//! These are code-defined so the CLI and the test suite run exactly the same
//! parameters. All values are dimensionless with hbar = 1.

use num_complex::Complex64;

use crate::dynamics::{HamiltonianSpec, Model, Potential, SymmetryOp};

/// Full parameter set of one named scenario.
#[derive(Debug, Clone)]
pub struct ScenarioPreset {
    pub name: &'static str,
    pub description: &'static str,
    pub hamiltonian: HamiltonianSpec,
    pub n_points: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub x0: f64,
    pub sigma: f64,
    pub p0: f64,
    pub polarization: [Complex64; 2],
    pub dt: f64,
    pub t_final: f64,
    /// (time, op) pairs; times are converted to step indices at dt.
    pub events: Vec<(f64, SymmetryOp)>,
    pub snapshot_stride: usize,
    pub transmission_x_c: f64,
}

/// Positive-energy eigenspinor of c p0 sx + m c^2 sz (real, normalized).
pub fn positive_energy_polarization(mass: f64, light_speed: f64, p0: f64) -> [Complex64; 2] {
    let ck = light_speed * p0;
    let mc2 = mass * light_speed * light_speed;
    let energy = (ck * ck + mc2 * mc2).sqrt();
    let (a, b) = (ck, energy - mc2);
    let norm = (a * a + b * b).sqrt();
    [
        Complex64::new(a / norm, 0.0),
        Complex64::new(b / norm, 0.0),
    ]
}

fn ramp(model: Model, mass: f64, mass_dirac: f64, mass_majorana: f64) -> HamiltonianSpec {
    HamiltonianSpec {
        model,
        mass,
        mass_dirac,
        mass_majorana,
        light_speed: 1.0,
        potential: Potential::Linear { alpha: 1.0 },
        charge: 1.0,
    }
}

fn free(model: Model, mass: f64) -> HamiltonianSpec {
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

const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn pol_lower() -> [Complex64; 2] {
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
}

fn pol_plus_x() -> [Complex64; 2] {
    [
        Complex64::new(INV_SQRT2, 0.0),
        Complex64::new(INV_SQRT2, 0.0),
    ]
}

/// Look up a preset by name.
pub fn preset(name: &str) -> Option<ScenarioPreset> {
    let p = match name {
        "fig2a" => ScenarioPreset {
            name: "fig2a",
            description: "Klein scattering of a Dirac packet off the linear ramp V(x) = x",
            hamiltonian: ramp(Model::Dirac2, 0.5, 0.0, 0.0),
            n_points: 4096,
            x_min: -150.0,
            x_max: 150.0,
            x0: -60.0,
            sigma: 5.0,
            p0: 1.5,
            polarization: pol_lower(),
            dt: 0.005,
            t_final: 35.0,
            events: vec![],
            snapshot_stride: 700,
            transmission_x_c: -45.0,
        },
        "fig2b" => ScenarioPreset {
            name: "fig2b",
            description: "Klein scattering with a time-reversal event at t = 15; the packet retraces itself",
            hamiltonian: ramp(Model::Dirac2, 0.5, 0.0, 0.0),
            n_points: 4096,
            x_min: -150.0,
            x_max: 150.0,
            x0: -60.0,
            sigma: 5.0,
            p0: 1.5,
            polarization: pol_lower(),
            dt: 0.005,
            t_final: 30.0,
            events: vec![(15.0, SymmetryOp::T)],
            snapshot_stride: 600,
            transmission_x_c: -45.0,
        },
        "fig2c" => ScenarioPreset {
            name: "fig2c",
            description: "charge conjugation mid-run converts the particle into its antiparticle, which penetrates the ramp",
            hamiltonian: ramp(Model::Dirac2, 0.5, 0.0, 0.0),
            n_points: 4096,
            x_min: -150.0,
            x_max: 150.0,
            x0: -60.0,
            sigma: 5.0,
            p0: 1.5,
            polarization: positive_energy_polarization(0.5, 1.0, 1.5),
            dt: 0.005,
            t_final: 35.0,
            events: vec![(0.5, SymmetryOp::C)],
            snapshot_stride: 700,
            transmission_x_c: -45.0,
        },
        "fig2d" => ScenarioPreset {
            name: "fig2d",
            description: "a Majorana packet crosses the same ramp almost untouched",
            hamiltonian: ramp(Model::Majorana4, 0.5, 0.0, 0.0),
            n_points: 8192,
            x_min: -150.0,
            x_max: 150.0,
            x0: -60.0,
            sigma: 5.0,
            p0: 1.5,
            polarization: pol_plus_x(),
            dt: 0.005,
            t_final: 80.0,
            events: vec![],
            snapshot_stride: 1600,
            transmission_x_c: 0.0,
        },
        "free-dirac" => ScenarioPreset {
            name: "free-dirac",
            description: "free massive Dirac packet; pseudo-helicity drifts, <x> shows Zitterbewegung",
            hamiltonian: free(Model::Dirac2, 0.5),
            n_points: 2048,
            x_min: -100.0,
            x_max: 100.0,
            x0: 0.0,
            sigma: 5.0,
            p0: 1.5,
            polarization: pol_plus_x(),
            dt: 0.005,
            t_final: 20.0,
            events: vec![],
            snapshot_stride: 400,
            transmission_x_c: 0.0,
        },
        "free-majorana" => ScenarioPreset {
            name: "free-majorana",
            description: "free Majorana packet on the real-bispinor lift; pseudo-helicity is conserved",
            hamiltonian: free(Model::Majorana4, 0.5),
            n_points: 2048,
            x_min: -100.0,
            x_max: 100.0,
            x0: 0.0,
            sigma: 5.0,
            p0: 1.5,
            polarization: pol_plus_x(),
            dt: 0.005,
            t_final: 20.0,
            events: vec![],
            snapshot_stride: 400,
            transmission_x_c: 0.0,
        },
        "mixed-mass" => ScenarioPreset {
            name: "mixed-mass",
            description: "packet with both Dirac and Majorana mass terms scattering off the ramp",
            hamiltonian: ramp(Model::MixedMass4, 0.0, 0.25, 0.25),
            n_points: 8192,
            x_min: -150.0,
            x_max: 150.0,
            x0: -60.0,
            sigma: 5.0,
            p0: 1.5,
            polarization: pol_plus_x(),
            dt: 0.005,
            t_final: 80.0,
            events: vec![],
            snapshot_stride: 1600,
            transmission_x_c: 0.0,
        },
        _ => return None,
    };
    Some(p)
}

/// All preset names, sorted.
pub fn preset_names() -> Vec<&'static str> {
    let mut names = vec![
        "fig2a",
        "fig2b",
        "fig2c",
        "fig2d",
        "free-dirac",
        "free-majorana",
        "mixed-mass",
    ];
    names.sort_unstable();
    names
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_sorted_and_complete() {
        let names = preset_names();
        let mut sorted = names.clone();
        sorted.sort_unstable();
        assert_eq!(names, sorted);
        for name in &names {
            let p = preset(name).expect("registered preset");
            assert_eq!(&p.name, name);
            assert!(!p.description.is_empty());
            p.hamiltonian.validate().unwrap();
        }
        assert!(preset("nonexistent").is_none());
    }

    #[test]
    fn fig2_presets_use_paper_parameters() {
        for name in ["fig2a", "fig2b", "fig2c", "fig2d"] {
            let p = preset(name).unwrap();
            assert_eq!(p.hamiltonian.light_speed, 1.0);
            match p.hamiltonian.model {
                Model::Dirac2 | Model::Majorana4 => assert_eq!(p.hamiltonian.mass, 0.5),
                _ => {}
            }
            assert_eq!(
                p.hamiltonian.potential,
                Potential::Linear { alpha: 1.0 },
                "{name}"
            );
        }
        assert!(matches!(
            preset("fig2c").unwrap().events.as_slice(),
            [(t, SymmetryOp::C)] if *t == 0.5
        ));
    }

    #[test]
    fn positive_energy_polarization_is_an_eigenspinor() {
        let (m, c, p0) = (0.5, 1.0, 1.5);
        let pol = positive_energy_polarization(m, c, p0);
        let e = ((c * p0) * (c * p0) + (m * c * c) * (m * c * c)).sqrt();
        // (c p0 sx + m c^2 sz) v = E v
        let hv0 = m * c * c * pol[0].re + c * p0 * pol[1].re;
        let hv1 = c * p0 * pol[0].re - m * c * c * pol[1].re;
        assert!((hv0 - e * pol[0].re).abs() < 1e-12);
        assert!((hv1 - e * pol[1].re).abs() < 1e-12);
    }
}
