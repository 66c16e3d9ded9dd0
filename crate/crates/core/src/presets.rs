//! Built-in reference scenario: sodium ultraslow-light conditions.
//!
//! The published numbers (lambda_1 = 589 nm, Delta_1 = 1.3e6 rad/s,
//! I_2 = 40 mW/cm² = 400 W/m², v_g0 = 17 m/s) never pin the dipole moment,
//! density, and coupling Rabi frequency individually — only the combination
//! `|mu|^2 N / Omega_2^2` that v_g0 fixes. The builder therefore inverts the
//! v_g0 anchor for the density at an arbitrary (sodium-scale) dipole moment;
//! every reported response quantity is independent of that choice.

use crate::params::{AtomMediumSpec, Constants, LaserSpec, Options, SystemConfig};

/// Probe (and coupling) wavelength of the reference scenario (m).
pub const REFERENCE_WAVELENGTH: f64 = 589e-9;
/// Probe detuning of the reference scenario (rad/s).
pub const REFERENCE_DETUNING: f64 = 1.3e6;
/// Incident coupling intensity, 40 mW/cm² in SI (W/m²).
pub const REFERENCE_COUPLING_INTENSITY: f64 = 400.0;
/// Lowest-order group velocity anchor (m/s).
pub const REFERENCE_GROUP_VELOCITY: f64 = 17.0;

/// Coupling-mode coherent amplitude used by the anchored scenarios. Deep in
/// the large-n regime so that (beta^2 + 1)/beta^2 corrections sit at 1e-10.
const SCENARIO_BETA: f64 = 1e5;
/// Sodium-scale transition dipole moment (C·m); cancels from all outputs.
const SCENARIO_DIPOLE: f64 = 2.1e-29;

/// The reference configuration with a weak probe (x = 1e-4).
pub fn slow_light_reference() -> SystemConfig {
    slow_light_scenario(
        REFERENCE_COUPLING_INTENSITY,
        REFERENCE_GROUP_VELOCITY,
        REFERENCE_DETUNING,
        1e-4,
    )
}

/// Build a configuration anchored to a lowest-order group velocity and an
/// incident coupling intensity, with the probe strength set through
/// `x = (Omega_1/Omega_2)^2`.
///
/// Inversion: beta is fixed large; the coupling per-photon field follows
/// from `I_2 = 2 eps0 c E_2^2 beta^2`, the quantization volume from `E_2`,
/// and the density from `v_g0 = hbar c eps0 Omega_2^2 / (2 omega_1 mu^2 N)`,
/// which collapses to `N = I_2 (1 + 1/beta^2) / (hbar omega_1 v_g0)`.
pub fn slow_light_scenario(
    coupling_intensity: f64,
    group_velocity_anchor: f64,
    detuning: f64,
    x: f64,
) -> SystemConfig {
    let k = Constants::codata();
    let omega = 2.0 * std::f64::consts::PI * k.c() / REFERENCE_WAVELENGTH;
    let beta = SCENARIO_BETA;
    let beta_sq = beta * beta;

    let field_sq = coupling_intensity / (2.0 * k.eps0() * k.c() * beta_sq);
    let volume = k.hbar() * omega / (2.0 * k.eps0() * field_sq);
    let density =
        coupling_intensity * (beta_sq + 1.0) / (beta_sq * k.hbar() * omega * group_velocity_anchor);
    let alpha = (x * (beta_sq + 1.0)).sqrt();

    let atom = AtomMediumSpec {
        dipole_moment: SCENARIO_DIPOLE,
        number_density: density,
        probe_wavelength: REFERENCE_WAVELENGTH,
        probe_detuning: detuning,
    };
    let probe = LaserSpec {
        angular_frequency: omega,
        quantization_volume: volume,
        coherent_amplitude: alpha,
    };
    let coupling = LaserSpec {
        angular_frequency: omega,
        quantization_volume: volume,
        coherent_amplitude: beta,
    };
    SystemConfig::build(atom, probe, coupling, Options::default())
        .expect("anchored scenario parameters are valid by construction")
}
