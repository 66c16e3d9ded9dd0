//! Physical constants, unit-safe system configuration, and derived
//! quantities (per-photon fields, coupling constants, Rabi frequencies,
//! intensities).
//!
//! Everything here is SI: fields in V/m, angular frequencies in rad/s,
//! intensities in W/m². Practical units (cm²/W and friends) appear only
//! through [`practical_units`] at the presentation boundary.
//!
//! All types are immutable after construction and carry no interior
//! mutability, so they are freely shareable across threads.

use crate::error::{Error, Result};

/// Fundamental constants, CODATA 2018.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    hbar: f64,
    eps0: f64,
    c: f64,
}

impl Constants {
    /// CODATA 2018 recommended values.
    pub fn codata() -> Self {
        Self {
            hbar: 1.054_571_817e-34, // J·s
            eps0: 8.854_187_8128e-12, // F/m
            c: 299_792_458.0,        // m/s
        }
    }

    /// Reduced Planck constant (J·s).
    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Vacuum permittivity (F/m).
    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    /// Speed of light in vacuum (m/s).
    pub fn c(&self) -> f64 {
        self.c
    }
}

impl Default for Constants {
    fn default() -> Self {
        Self::codata()
    }
}

/// Atom and medium parameters.
///
/// A single dipole moment is shared by both transitions; the coupling
/// constants are `g_i = mu * E_i / hbar` with `E_i` the per-photon field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomMediumSpec {
    /// Transition dipole moment mu (C·m), shared by |1>-|2> and |3>-|2>.
    pub dipole_moment: f64,
    /// Atom number density N (atoms/m³).
    pub number_density: f64,
    /// Probe wavelength lambda_1 (m).
    pub probe_wavelength: f64,
    /// Probe detuning Delta_1 (rad/s); may be negative.
    pub probe_detuning: f64,
}

/// One quantized laser mode prepared in a coherent state of real amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaserSpec {
    /// Angular frequency omega (rad/s).
    pub angular_frequency: f64,
    /// Quantization volume V (m³).
    pub quantization_volume: f64,
    /// Real coherent amplitude (alpha for the probe, beta for the coupling);
    /// the mean photon number is its square.
    pub coherent_amplitude: f64,
}

/// Validation behaviour knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    /// Turn soft warnings (large-n floor, detuning ratio, series regime)
    /// into hard errors.
    pub strict: bool,
    /// Mean-photon-number floor below which large-n formulas are suspect.
    pub large_n_floor: f64,
    /// Maximum allowed |Delta_1| / Omega for the perturbative branch.
    pub detuning_ratio_max: f64,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            strict: false,
            large_n_floor: 1e3,
            detuning_ratio_max: 0.1,
        }
    }
}

/// Soft validation findings. Warnings by default; errors under
/// [`Options::strict`]. The exact Fock-space machinery is exempt from both
/// approximations and accepts such inputs regardless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Warning {
    /// Mean photon number below the large-n floor.
    LargeN { which: Mode, n_mean: f64, floor: f64 },
    /// |Delta_1| / Omega above the perturbative ceiling.
    DetuningRatio { ratio: f64, max: f64 },
}

/// Which laser mode a warning refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Probe,
    Coupling,
}

/// Complete, validated system configuration with derived quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    constants: Constants,
    atom: AtomMediumSpec,
    probe: LaserSpec,
    coupling: LaserSpec,
    options: Options,
    per_photon_field_probe: f64,
    per_photon_field_coupling: f64,
    g_probe: f64,
    g_coupling: f64,
    rabi_probe: f64,
    rabi_coupling: f64,
    coupling_intensity: f64,
    warnings: Vec<Warning>,
}

impl SystemConfig {
    /// Validate the inputs and compute all derived fields.
    ///
    /// Derived quantities:
    /// - per-photon field `E_i = sqrt(hbar*omega_i / (2*eps0*V_i))` (V/m)
    /// - coupling constant `g_i = mu*E_i/hbar` (rad/s)
    /// - mean-field Rabi frequencies `Omega_1 = 2*g_1*sqrt(n_alpha)`,
    ///   `Omega_2 = 2*g_2*sqrt(n_beta + 1)` with `n = amplitude^2`
    /// - incident coupling intensity `I_2 = 2*eps0*c*E_2^2*beta^2` (W/m²)
    pub fn build(
        atom: AtomMediumSpec,
        probe: LaserSpec,
        coupling: LaserSpec,
        options: Options,
    ) -> Result<Self> {
        let constants = Constants::codata();

        require_positive("atom.dipole_moment", atom.dipole_moment)?;
        require_positive("atom.number_density", atom.number_density)?;
        require_positive("atom.probe_wavelength", atom.probe_wavelength)?;
        require_finite("atom.probe_detuning", atom.probe_detuning)?;
        for (name, laser) in [("probe", &probe), ("coupling", &coupling)] {
            require_positive(&format!("{name}.angular_frequency"), laser.angular_frequency)?;
            require_positive(&format!("{name}.quantization_volume"), laser.quantization_volume)?;
            if !(laser.coherent_amplitude >= 0.0) || !laser.coherent_amplitude.is_finite() {
                return Err(Error::Validation(format!(
                    "{name}.coherent_amplitude must be a finite real >= 0, got {}",
                    laser.coherent_amplitude
                )));
            }
        }

        // The probe wavelength and the probe mode frequency are redundant
        // inputs; they must describe the same mode.
        let omega_from_wavelength =
            2.0 * std::f64::consts::PI * constants.c() / atom.probe_wavelength;
        let mismatch =
            (probe.angular_frequency - omega_from_wavelength).abs() / omega_from_wavelength;
        if mismatch > 1e-6 {
            return Err(Error::Validation(format!(
                "probe.angular_frequency ({:.6e}) disagrees with 2*pi*c/probe_wavelength \
                 ({omega_from_wavelength:.6e}) by {mismatch:.2e} relative",
                probe.angular_frequency
            )));
        }

        let per_photon_field = |laser: &LaserSpec| {
            (constants.hbar() * laser.angular_frequency
                / (2.0 * constants.eps0() * laser.quantization_volume))
                .sqrt()
        };
        let per_photon_field_probe = per_photon_field(&probe);
        let per_photon_field_coupling = per_photon_field(&coupling);
        let g_probe = atom.dipole_moment * per_photon_field_probe / constants.hbar();
        let g_coupling = atom.dipole_moment * per_photon_field_coupling / constants.hbar();

        let n_alpha = probe.coherent_amplitude.powi(2);
        let n_beta = coupling.coherent_amplitude.powi(2);
        let rabi_probe = 2.0 * g_probe * n_alpha.sqrt();
        let rabi_coupling = 2.0 * g_coupling * (n_beta + 1.0).sqrt();
        let coupling_intensity = intensity_from_amplitude(
            &constants,
            per_photon_field_coupling,
            coupling.coherent_amplitude,
        );

        if rabi_coupling <= 0.0 {
            return Err(Error::Validation(
                "coupling Rabi frequency must be positive".into(),
            ));
        }

        let mut warnings = Vec::new();
        for (which, n_mean) in [(Mode::Probe, n_alpha), (Mode::Coupling, n_beta)] {
            if n_mean < options.large_n_floor {
                warnings.push(Warning::LargeN {
                    which,
                    n_mean,
                    floor: options.large_n_floor,
                });
            }
        }
        let rabi_total = rabi_probe.hypot(rabi_coupling);
        let ratio = atom.probe_detuning.abs() / rabi_total;
        if ratio > options.detuning_ratio_max {
            warnings.push(Warning::DetuningRatio {
                ratio,
                max: options.detuning_ratio_max,
            });
        }
        if options.strict {
            if let Some(w) = warnings.first() {
                return Err(match *w {
                    Warning::LargeN { n_mean, floor, .. } => Error::LargeNViolation { n_mean, floor },
                    Warning::DetuningRatio { ratio, max } => Error::Validation(format!(
                        "detuning ratio |Delta1|/Omega = {ratio:.3e} exceeds {max:.3e}"
                    )),
                });
            }
        }

        Ok(Self {
            constants,
            atom,
            probe,
            coupling,
            options,
            per_photon_field_probe,
            per_photon_field_coupling,
            g_probe,
            g_coupling,
            rabi_probe,
            rabi_coupling,
            coupling_intensity,
            warnings,
        })
    }

    pub fn constants(&self) -> &Constants {
        &self.constants
    }

    pub fn atom(&self) -> &AtomMediumSpec {
        &self.atom
    }

    pub fn probe(&self) -> &LaserSpec {
        &self.probe
    }

    pub fn coupling(&self) -> &LaserSpec {
        &self.coupling
    }

    pub fn options(&self) -> &Options {
        &self.options
    }

    /// Per-photon field of the probe mode (V/m).
    pub fn per_photon_field_probe(&self) -> f64 {
        self.per_photon_field_probe
    }

    /// Per-photon field of the coupling mode (V/m).
    pub fn per_photon_field_coupling(&self) -> f64 {
        self.per_photon_field_coupling
    }

    /// Probe coupling constant g_1 (rad/s).
    pub fn g_probe(&self) -> f64 {
        self.g_probe
    }

    /// Coupling-laser coupling constant g_2 (rad/s).
    pub fn g_coupling(&self) -> f64 {
        self.g_coupling
    }

    /// Mean-field probe Rabi frequency Omega_1 = 2*g_1*sqrt(n_alpha) (rad/s).
    pub fn rabi_probe(&self) -> f64 {
        self.rabi_probe
    }

    /// Mean-field coupling Rabi frequency Omega_2 = 2*g_2*sqrt(n_beta+1) (rad/s).
    pub fn rabi_coupling(&self) -> f64 {
        self.rabi_coupling
    }

    /// Total mean-field Rabi frequency sqrt(Omega_1^2 + Omega_2^2) (rad/s).
    pub fn rabi_total(&self) -> f64 {
        self.rabi_probe.hypot(self.rabi_coupling)
    }

    /// Incident coupling laser intensity I_2 (W/m²).
    pub fn coupling_intensity(&self) -> f64 {
        self.coupling_intensity
    }

    /// Mean probe photon number alpha².
    pub fn n_alpha(&self) -> f64 {
        self.probe.coherent_amplitude.powi(2)
    }

    /// Mean coupling photon number beta².
    pub fn n_beta(&self) -> f64 {
        self.coupling.coherent_amplitude.powi(2)
    }

    /// Mean probe field E_1 = per-photon field times alpha (V/m).
    pub fn mean_probe_field(&self) -> f64 {
        self.per_photon_field_probe * self.probe.coherent_amplitude
    }

    /// Soft validation findings collected at build time.
    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }

    /// Rebuild with a different probe detuning, everything else unchanged.
    pub fn with_probe_detuning(&self, detuning: f64) -> Result<Self> {
        let mut atom = self.atom;
        atom.probe_detuning = detuning;
        Self::build(atom, self.probe, self.coupling, self.options)
    }

    /// Rebuild with a different probe amplitude, everything else unchanged.
    pub fn with_probe_amplitude(&self, alpha: f64) -> Result<Self> {
        let mut probe = self.probe;
        probe.coherent_amplitude = alpha;
        Self::build(self.atom, probe, self.coupling, self.options)
    }

    /// Rebuild with a different coupling amplitude, everything else unchanged.
    pub fn with_coupling_amplitude(&self, beta: f64) -> Result<Self> {
        let mut coupling = self.coupling;
        coupling.coherent_amplitude = beta;
        Self::build(self.atom, self.probe, coupling, self.options)
    }

    /// Rebuild with a different number density, everything else unchanged.
    pub fn with_number_density(&self, density: f64) -> Result<Self> {
        let mut atom = self.atom;
        atom.number_density = density;
        Self::build(atom, self.probe, self.coupling, self.options)
    }

    /// Rebuild with the coupling amplitude chosen to hit a target incident
    /// intensity I_2 (W/m²) at the current per-photon field.
    pub fn with_coupling_intensity(&self, intensity: f64) -> Result<Self> {
        require_positive("coupling_intensity", intensity)?;
        let beta = amplitude_from_intensity(&self.constants, self.per_photon_field_coupling, intensity);
        self.with_coupling_amplitude(beta)
    }
}

fn require_positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Validation(format!("{name} must be positive and finite, got {value}")))
    }
}

fn require_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Validation(format!("{name} must be finite, got {value}")))
    }
}

/// Plane-wave intensity of a coherent state: `2*eps0*c*(field*amplitude)^2`
/// (W/m²), with `field` the per-photon field in V/m.
pub fn intensity_from_amplitude(constants: &Constants, per_photon_field: f64, amplitude: f64) -> f64 {
    2.0 * constants.eps0() * constants.c() * (per_photon_field * amplitude).powi(2)
}

/// Inverse of [`intensity_from_amplitude`] at fixed per-photon field.
pub fn amplitude_from_intensity(constants: &Constants, per_photon_field: f64, intensity: f64) -> f64 {
    (intensity / (2.0 * constants.eps0() * constants.c())).sqrt() / per_photon_field
}

/// Convert a nonlinear coefficient of order `k` from SI field units
/// (m^2k / V^2k) to practical intensity units (cm^2k / W^k).
///
/// Division by `(2*eps0*c)^k` rewrites powers of |E|² as powers of intensity;
/// the remaining m² -> cm² conversion contributes 10^4 per order. The mapping
/// is bijective; [`from_practical_units`] inverts it.
pub fn practical_units(constants: &Constants, value: f64, order: usize) -> Result<f64> {
    if !(1..=3).contains(&order) {
        return Err(Error::UnsupportedOrder(order));
    }
    let per_intensity = 2.0 * constants.eps0() * constants.c();
    Ok(value / per_intensity.powi(order as i32) * 1e4f64.powi(order as i32))
}

/// Inverse of [`practical_units`].
pub fn from_practical_units(constants: &Constants, value: f64, order: usize) -> Result<f64> {
    if !(1..=3).contains(&order) {
        return Err(Error::UnsupportedOrder(order));
    }
    let per_intensity = 2.0 * constants.eps0() * constants.c();
    Ok(value * per_intensity.powi(order as i32) / 1e4f64.powi(order as i32))
}
