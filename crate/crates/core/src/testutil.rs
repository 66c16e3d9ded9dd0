//! Helpers shared by the unit-test suites.

use crate::params::{AtomMediumSpec, Constants, LaserSpec, Options, SystemConfig};

/// A deliberately plain configuration; numbers chosen for convenience, not
/// physical realism.
pub(crate) fn test_config(alpha: f64, beta: f64, detuning: f64) -> SystemConfig {
    let c = Constants::codata();
    let wavelength = 589e-9;
    let omega = 2.0 * std::f64::consts::PI * c.c() / wavelength;
    let atom = AtomMediumSpec {
        dipole_moment: 2.1e-29,
        number_density: 5e19,
        probe_wavelength: wavelength,
        probe_detuning: detuning,
    };
    let probe = LaserSpec {
        angular_frequency: omega,
        quantization_volume: 1e-3,
        coherent_amplitude: alpha,
    };
    let coupling = LaserSpec {
        angular_frequency: omega,
        quantization_volume: 1e-3,
        coherent_amplitude: beta,
    };
    SystemConfig::build(atom, probe, coupling, Options::default()).unwrap()
}

/// Least-squares slope of ln(y) against ln(x).
pub(crate) fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}
