//! On-disk configuration documents.
//!
//! TOML with unit-suffixed keys; unknown keys are rejected. Example:
//!
//! ```toml
//! [atom]
//! dipole_moment_c_m = 2.1e-29
//! number_density_per_m3 = 7.0e19
//! probe_wavelength_m = 589e-9
//! probe_detuning_rad_per_s = 1.3e6
//!
//! [probe]
//! angular_frequency_rad_per_s = 3.198e15
//! quantization_volume_m3 = 2.5e-3
//! coherent_amplitude = 1000.0
//!
//! [coupling]
//! angular_frequency_rad_per_s = 3.198e15
//! quantization_volume_m3 = 2.5e-3
//! coherent_amplitude = 1.0e5
//!
//! [options]          # optional table
//! strict = false
//! large_n_floor = 1e3
//! detuning_ratio_max = 0.1
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{AtomMediumSpec, LaserSpec, Options, SystemConfig};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub atom: AtomTable,
    pub probe: LaserTable,
    pub coupling: LaserTable,
    #[serde(default)]
    pub options: OptionsTable,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomTable {
    pub dipole_moment_c_m: f64,
    pub number_density_per_m3: f64,
    pub probe_wavelength_m: f64,
    pub probe_detuning_rad_per_s: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaserTable {
    pub angular_frequency_rad_per_s: f64,
    pub quantization_volume_m3: f64,
    pub coherent_amplitude: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptionsTable {
    pub strict: bool,
    pub large_n_floor: f64,
    pub detuning_ratio_max: f64,
}

impl Default for OptionsTable {
    fn default() -> Self {
        let o = Options::default();
        Self {
            strict: o.strict,
            large_n_floor: o.large_n_floor,
            detuning_ratio_max: o.detuning_ratio_max,
        }
    }
}

impl ConfigDocument {
    pub fn into_system_config(self) -> Result<SystemConfig> {
        let atom = AtomMediumSpec {
            dipole_moment: self.atom.dipole_moment_c_m,
            number_density: self.atom.number_density_per_m3,
            probe_wavelength: self.atom.probe_wavelength_m,
            probe_detuning: self.atom.probe_detuning_rad_per_s,
        };
        let laser = |t: &LaserTable| LaserSpec {
            angular_frequency: t.angular_frequency_rad_per_s,
            quantization_volume: t.quantization_volume_m3,
            coherent_amplitude: t.coherent_amplitude,
        };
        let options = Options {
            strict: self.options.strict,
            large_n_floor: self.options.large_n_floor,
            detuning_ratio_max: self.options.detuning_ratio_max,
        };
        SystemConfig::build(atom, laser(&self.probe), laser(&self.coupling), options)
    }

    pub fn from_system_config(cfg: &SystemConfig) -> Self {
        Self {
            atom: AtomTable {
                dipole_moment_c_m: cfg.atom().dipole_moment,
                number_density_per_m3: cfg.atom().number_density,
                probe_wavelength_m: cfg.atom().probe_wavelength,
                probe_detuning_rad_per_s: cfg.atom().probe_detuning,
            },
            probe: LaserTable {
                angular_frequency_rad_per_s: cfg.probe().angular_frequency,
                quantization_volume_m3: cfg.probe().quantization_volume,
                coherent_amplitude: cfg.probe().coherent_amplitude,
            },
            coupling: LaserTable {
                angular_frequency_rad_per_s: cfg.coupling().angular_frequency,
                quantization_volume_m3: cfg.coupling().quantization_volume,
                coherent_amplitude: cfg.coupling().coherent_amplitude,
            },
            options: OptionsTable {
                strict: cfg.options().strict,
                large_n_floor: cfg.options().large_n_floor,
                detuning_ratio_max: cfg.options().detuning_ratio_max,
            },
        }
    }
}

/// Parse a configuration document from TOML text.
pub fn from_toml_str(text: &str) -> Result<SystemConfig> {
    let doc: ConfigDocument =
        toml::from_str(text).map_err(|e| Error::ConfigParse(e.to_string()))?;
    doc.into_system_config()
}

/// Load a configuration document from a file.
pub fn load(path: &Path) -> Result<SystemConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ConfigParse(format!("{}: {e}", path.display())))?;
    from_toml_str(&text)
}

/// Canonical TOML serialization of a configuration (fixed key order).
pub fn to_toml_string(cfg: &SystemConfig) -> String {
    toml::to_string_pretty(&ConfigDocument::from_system_config(cfg))
        .expect("config documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn round_trip_through_toml() {
        let cfg = presets::slow_light_reference();
        let text = to_toml_string(&cfg);
        let back = from_toml_str(&text).unwrap();
        assert_eq!(back.rabi_probe().to_bits(), cfg.rabi_probe().to_bits());
        assert_eq!(back.rabi_coupling().to_bits(), cfg.rabi_coupling().to_bits());
        assert_eq!(
            back.coupling_intensity().to_bits(),
            cfg.coupling_intensity().to_bits()
        );
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let cfg = presets::slow_light_reference();
        let mut text = to_toml_string(&cfg);
        text.push_str("\n[atom2]\nfoo = 1.0\n");
        assert!(matches!(from_toml_str(&text), Err(Error::ConfigParse(_))));

        let sneaky = text.replace("[atom2]\nfoo = 1.0", "");
        let with_extra_key = sneaky.replace(
            "dipole_moment_c_m",
            "dipole_moment_debye = 1.0\ndipole_moment_c_m",
        );
        assert!(matches!(
            from_toml_str(&with_extra_key),
            Err(Error::ConfigParse(_))
        ));
    }

    #[test]
    fn missing_required_field_is_rejected() {
        let text = r#"
[atom]
number_density_per_m3 = 1e19
probe_wavelength_m = 589e-9
probe_detuning_rad_per_s = 0.0

[probe]
angular_frequency_rad_per_s = 3.198e15
quantization_volume_m3 = 1e-3
coherent_amplitude = 10.0

[coupling]
angular_frequency_rad_per_s = 3.198e15
quantization_volume_m3 = 1e-3
coherent_amplitude = 10.0
"#;
        assert!(matches!(from_toml_str(text), Err(Error::ConfigParse(_))));
    }

    #[test]
    fn options_table_is_optional_with_defaults() {
        let cfg = presets::slow_light_reference();
        let doc = ConfigDocument::from_system_config(&cfg);
        let text = toml::to_string(&ConfigDocument {
            options: OptionsTable::default(),
            ..doc
        })
        .unwrap();
        let without_options: String = text
            .lines()
            .take_while(|l| !l.starts_with("[options]"))
            .map(|l| format!("{l}\n"))
            .collect();
        let parsed = from_toml_str(&without_options).unwrap();
        assert_eq!(parsed.options().large_n_floor, 1e3);
        assert!(!parsed.options().strict);
    }
}
