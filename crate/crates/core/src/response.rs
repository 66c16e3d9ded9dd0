//! Macroscopic optical response of the EIT medium.
//!
//! Everything follows from one closed form for the susceptibility at the
//! probe frequency,
//!
//! ```text
//! chi = 4 N |mu|^2 Omega_2^2 Delta_1 / (hbar eps0 (Omega_1^2 + Omega_2^2)^2),
//! ```
//!
//! built from the mean-field Rabi frequencies of the configuration. The
//! linear susceptibility is its `Omega_1 -> 0` limit, the group velocity its
//! detuning derivative, and the giant Kerr and higher-order coefficients the
//! Taylor coefficients of its expansion in powers of the probe intensity.
//! The expansion only converges for `Omega_1 < Omega_2`; past that the
//! resummed closed form is the thing to use, and the series routines say so.
//!
//! Pure value-level computation throughout; sweeps over configurations
//! parallelize trivially.

use crate::dressed::{self, Branch};
use crate::error::{Error, Result};
use crate::params::{self, SystemConfig};

/// Linear response summary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SusceptibilityReport {
    /// Full susceptibility (dimensionless).
    pub chi: f64,
    /// Linear susceptibility (dimensionless).
    pub chi1: f64,
    /// Group velocity including the probe-intensity dependence (m/s).
    pub group_velocity: f64,
    /// Lowest-order group velocity (m/s).
    pub group_velocity_lowest_order: f64,
    /// Refractive-index change near zero detuning (dimensionless).
    pub delta_n: f64,
}

/// Nonlinear susceptibilities and refractive-index coefficients, in SI and
/// practical units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearCoefficients {
    /// chi^(3) (m²/V²).
    pub chi3: f64,
    /// chi^(5) (m⁴/V⁴).
    pub chi5: f64,
    /// chi^(7) (m⁶/V⁶).
    pub chi7: f64,
    /// Kerr coefficient n_2 (m²/V²).
    pub n2: f64,
    /// n_4 (m⁴/V⁴).
    pub n4: f64,
    /// n_6 (m⁶/V⁶).
    pub n6: f64,
    /// n_2 in cm²/W.
    pub n2_practical: f64,
    /// n_4 in cm⁴/W².
    pub n4_practical: f64,
    /// n_6 in cm⁶/W³.
    pub n6_practical: f64,
    /// n_2/n_4 (V²/m²); equals -I_2/(3 eps0 c) identically.
    pub ratio_n2_n4: f64,
    /// n_2/n_4 in intensity units (W/cm²).
    pub ratio_n2_n4_practical: f64,
    /// n_4/n_6 (V²/m²); equals -3 I_2/(8 eps0 c) identically.
    pub ratio_n4_n6: f64,
}

/// Susceptibility at the probe frequency.
///
/// Vanishes at resonance — the EIT signature — and is odd in the detuning.
pub fn chi(cfg: &SystemConfig) -> f64 {
    let o1 = cfg.rabi_probe();
    let o2 = cfg.rabi_coupling();
    let mu = cfg.atom().dipole_moment;
    let n = cfg.atom().number_density;
    let delta = cfg.atom().probe_detuning;
    let k = cfg.constants();
    4.0 * n * mu * mu * o2 * o2 * delta
        / (k.hbar() * k.eps0() * (o1 * o1 + o2 * o2).powi(2))
}

/// Linear susceptibility, the leading term of [`chi`] in the probe/coupling
/// ratio: `4 |mu|^2 N Delta_1 / (hbar eps0 Omega_2^2)`, identical to
/// `Delta_1 lambda_1 / (pi v_g0)`.
pub fn chi1(cfg: &SystemConfig) -> f64 {
    let o2 = cfg.rabi_coupling();
    let mu = cfg.atom().dipole_moment;
    let n = cfg.atom().number_density;
    let delta = cfg.atom().probe_detuning;
    let k = cfg.constants();
    let value = 4.0 * mu * mu * n * delta / (k.hbar() * k.eps0() * o2 * o2);
    // The dispersive form through the lowest-order group velocity is the
    // same algebra; keep them honest against each other.
    let alt = delta * cfg.atom().probe_wavelength
        / (std::f64::consts::PI * group_velocity(cfg).lowest_order);
    debug_assert!(
        (value - alt).abs() <= 1e-10 * value.abs().max(1e-300),
        "chi1 forms disagree: {value} vs {alt}"
    );
    value
}

/// Group velocity of the probe pulse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupVelocity {
    /// `v_g = v_g0 (1 + x)^2` with `x = Omega_1^2/Omega_2^2` (m/s).
    pub full: f64,
    /// `v_g0 = hbar c eps0 Omega_2^2 / (2 omega_1 |mu|^2 N)` (m/s).
    pub lowest_order: f64,
}

pub fn group_velocity(cfg: &SystemConfig) -> GroupVelocity {
    let o1 = cfg.rabi_probe();
    let o2 = cfg.rabi_coupling();
    let mu = cfg.atom().dipole_moment;
    let n = cfg.atom().number_density;
    let omega1 = cfg.probe().angular_frequency;
    let k = cfg.constants();
    let lowest = k.hbar() * k.c() * k.eps0() * o2 * o2 / (2.0 * omega1 * mu * mu * n);
    let x = (o1 / o2).powi(2);
    GroupVelocity {
        full: lowest * (1.0 + x).powi(2),
        lowest_order: lowest,
    }
}

/// Group velocity through the dispersion relation
/// `v_g = c / (1 + (omega_1/2) |d chi / d omega_1|)`, with the derivative
/// taken numerically at fixed Rabi frequencies. Validation route for
/// [`group_velocity`]; they agree to O(v_g/c).
pub fn group_velocity_from_dispersion(cfg: &SystemConfig) -> Result<f64> {
    let h = cfg.rabi_coupling() * 1e-3;
    let delta = cfg.atom().probe_detuning;
    let hi = chi(&cfg.with_probe_detuning(delta + h)?);
    let lo = chi(&cfg.with_probe_detuning(delta - h)?);
    let slope = (hi - lo) / (2.0 * h);
    let k = cfg.constants();
    Ok(k.c() / (1.0 + cfg.probe().angular_frequency / 2.0 * slope.abs()))
}

/// Refractive-index change near zero probe detuning:
/// `delta_n = (lambda_1 / 2 pi) (Delta_1 / v_g)`.
pub fn delta_n(cfg: &SystemConfig) -> f64 {
    let vg = group_velocity(cfg).full;
    cfg.atom().probe_wavelength / (2.0 * std::f64::consts::PI) * cfg.atom().probe_detuning / vg
}

/// Power-series view of [`chi`] in the probe intensity.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiSeries {
    /// `chi^(2k+1)` for `k = 0..=max_order`, in m^2k/V^2k.
    pub coefficients: Vec<f64>,
    /// Whether `Omega_1 < Omega_2` held (the series only converges there).
    pub regime_ok: bool,
    chi1: f64,
    /// `2 eps0 c / I_2` (V²/m² per intensity), the expansion ratio per order.
    q: f64,
}

impl ChiSeries {
    /// Partial sums `sum_{k<terms} chi^(2k+1) |E_1|^2k`, evaluated through
    /// the dimensionless ratio `y = q |E_1|^2` so that high orders neither
    /// underflow (`q^k`) nor overflow (`|E_1|^2k`).
    pub fn partial_sums(&self, probe_field_sq: f64, terms: usize) -> Vec<f64> {
        let y = self.q * probe_field_sq;
        let mut sums = Vec::with_capacity(terms);
        let mut acc = 0.0;
        let mut sign = 1.0;
        let mut yk = 1.0;
        for k in 0..terms {
            acc += self.chi1 * sign * (k as f64 + 1.0) * yk;
            sign = -sign;
            yk *= y;
            sums.push(acc);
        }
        sums
    }
}

/// Nonlinear susceptibilities from the closed-form recursion
///
/// ```text
/// chi^(3) = -(4 eps0 c / I_2) chi^(1)
/// chi^(5) = -(3 eps0 c / I_2) chi^(3)
/// chi^(7) = -(8 eps0 c / 3 I_2) chi^(5)
/// ```
///
/// continued for `k > 3` by the general term
/// `chi^(2k+1) = (-1)^k (k+1) (2 eps0 c / I_2)^k chi^(1)`, which the
/// numerical Taylor extraction of [`chi`] confirms.
///
/// Outside the convergence regime (`Omega_1 >= Omega_2`) the coefficients
/// are still returned with `regime_ok = false` — one had better deal with
/// the closed form directly there — or, in strict mode, an error.
pub fn chi_series(cfg: &SystemConfig, max_order: usize) -> Result<ChiSeries> {
    let regime_ok = cfg.rabi_probe() < cfg.rabi_coupling();
    if !regime_ok && cfg.options().strict {
        return Err(Error::SeriesRegimeViolation {
            rabi_probe: cfg.rabi_probe(),
            rabi_coupling: cfg.rabi_coupling(),
        });
    }
    let intensity = cfg.coupling_intensity();
    if intensity <= 0.0 {
        return Err(Error::Validation(
            "series expansion requires a nonzero coupling intensity".into(),
        ));
    }
    let k = cfg.constants();
    let q = 2.0 * k.eps0() * k.c() / intensity;
    let chi1 = chi1(cfg);
    let mut coefficients = Vec::with_capacity(max_order + 1);
    let mut sign = 1.0;
    let mut qk = 1.0;
    for order in 0..=max_order {
        coefficients.push(sign * (order as f64 + 1.0) * qk * chi1);
        sign = -sign;
        qk *= q;
    }
    Ok(ChiSeries {
        coefficients,
        regime_ok,
        chi1,
        q,
    })
}

/// Partial sums of the susceptibility series at the configuration's own
/// probe field, for convergence/divergence studies against [`chi`].
pub fn chi_partial_sums(cfg: &SystemConfig, terms: usize) -> Result<Vec<f64>> {
    let series = chi_series(cfg, 0)?;
    Ok(series.partial_sums(cfg.mean_probe_field().powi(2), terms))
}

/// Nonlinear refractive-index coefficients
///
/// ```text
/// n_2 = -(2 eps0 c / I_2) chi^(1) = -(2 eps0 c Delta_1 / pi I_2)(lambda_1 / v_g0)
/// n_4 = -(3 eps0 c / I_2) n_2
/// n_6 = -(8 eps0 c / 3 I_2) n_4
/// ```
///
/// each equal to half the matching susceptibility (n = sqrt(1 + chi) with
/// |chi| << 1), with practical-unit forms and the ratio figures of merit.
pub fn refractive_coeffs(cfg: &SystemConfig) -> Result<NonlinearCoefficients> {
    let series = chi_series(cfg, 3)?;
    let k = cfg.constants();
    let intensity = cfg.coupling_intensity();
    let eps0c = k.eps0() * k.c();

    let chi3 = series.coefficients[1];
    let chi5 = series.coefficients[2];
    let chi7 = series.coefficients[3];
    let n2 = -(2.0 * eps0c / intensity) * series.coefficients[0];
    let n4 = -(3.0 * eps0c / intensity) * n2;
    let n6 = -(8.0 * eps0c / (3.0 * intensity)) * n4;

    Ok(NonlinearCoefficients {
        chi3,
        chi5,
        chi7,
        n2,
        n4,
        n6,
        n2_practical: params::practical_units(k, n2, 1)?,
        n4_practical: params::practical_units(k, n4, 2)?,
        n6_practical: params::practical_units(k, n6, 3)?,
        ratio_n2_n4: n2 / n4,
        ratio_n2_n4_practical: params::practical_units(k, n2, 1)? / params::practical_units(k, n4, 2)?,
        ratio_n4_n6: n4 / n6,
    })
}

/// Large-n optical coherence at the probe frequency: the product
/// `a_0 b_0 = 2 Omega_1 Omega_2^2 Delta_1 / Omega^4` evaluated at the mean
/// photon numbers. Real in this model (no decay channels).
pub fn coherence_largescale(cfg: &SystemConfig) -> Result<f64> {
    if cfg.options().strict {
        let floor = cfg.options().large_n_floor;
        for n_mean in [cfg.n_alpha(), cfg.n_beta()] {
            if n_mean < floor {
                return Err(Error::LargeNViolation { n_mean, floor });
            }
        }
    }
    let s = dressed::coefficients_perturbative(
        cfg.rabi_probe(),
        cfg.rabi_coupling(),
        cfg.atom().probe_detuning,
        Branch::Zero,
    )?;
    Ok(s.a * s.b)
}

/// Assemble the linear-response summary for one configuration.
pub fn susceptibility_report(cfg: &SystemConfig) -> SusceptibilityReport {
    let vg = group_velocity(cfg);
    SusceptibilityReport {
        chi: chi(cfg),
        chi1: chi1(cfg),
        group_velocity: vg.full,
        group_velocity_lowest_order: vg.lowest_order,
        delta_n: delta_n(cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::testutil::test_config;

    #[test]
    fn chi_vanishes_at_resonance() {
        let cfg = test_config(100.0, 100.0, 0.0);
        assert_eq!(chi(&cfg), 0.0);
    }

    #[test]
    fn chi_is_odd_in_detuning() {
        let cfg = test_config(100.0, 300.0, 0.0);
        for &d in &[1.0, 1e3, 2.7e5] {
            let plus = chi(&cfg.with_probe_detuning(d).unwrap());
            let minus = chi(&cfg.with_probe_detuning(-d).unwrap());
            assert_eq!(plus, -minus);
        }
    }

    #[test]
    fn chi_reduces_to_chi1_without_probe() {
        let cfg = test_config(0.0, 300.0, 1e3);
        let full = chi(&cfg);
        let linear = chi1(&cfg);
        // Same algebra, different evaluation order: rounding only.
        assert!((full - linear).abs() <= 1e-14 * linear.abs(), "{full} vs {linear}");
    }

    #[test]
    fn chi1_is_linear_in_density() {
        let cfg = test_config(100.0, 300.0, 1e3);
        let doubled = cfg
            .with_number_density(2.0 * cfg.atom().number_density)
            .unwrap();
        let ratio = chi1(&doubled) / chi1(&cfg);
        assert!((ratio - 2.0).abs() < 1e-12);
    }

    #[test]
    fn chi1_two_forms_agree() {
        let cfg = presets::slow_light_reference();
        let value = chi1(&cfg);
        let alt = cfg.atom().probe_detuning * cfg.atom().probe_wavelength
            / (std::f64::consts::PI * group_velocity(&cfg).lowest_order);
        assert!((value - alt).abs() <= 1e-10 * value.abs());
        // Slow-light reference: Delta lambda / (pi vg0) = 1.43e-2.
        assert!((value - 1.43e-2).abs() / 1.43e-2 < 0.01, "chi1 = {value}");
    }

    #[test]
    fn group_velocity_limits() {
        let cfg = test_config(0.0, 300.0, 0.0);
        let vg = group_velocity(&cfg);
        assert_eq!(vg.full, vg.lowest_order);

        // alpha^2 = beta^2 + 1 makes the two Rabi frequencies exactly equal
        // (shared g), so v_g = 4 v_g0.
        let beta = 300.0f64;
        let alpha = (beta * beta + 1.0).sqrt();
        let cfg = test_config(alpha, beta, 0.0);
        assert!((cfg.rabi_probe() - cfg.rabi_coupling()).abs() < 1e-9 * cfg.rabi_coupling());
        let vg = group_velocity(&cfg);
        assert!((vg.full - 4.0 * vg.lowest_order).abs() < 1e-9 * vg.full);
    }

    #[test]
    fn group_velocity_monotone_in_probe_rabi() {
        let mut last = 0.0;
        for &alpha in &[0.0, 50.0, 100.0, 200.0, 400.0] {
            let cfg = test_config(alpha, 300.0, 0.0);
            let vg = group_velocity(&cfg).full;
            assert!(vg > last, "alpha {alpha}: {vg} <= {last}");
            last = vg;
        }
    }

    #[test]
    fn dispersion_route_matches_closed_form_at_slow_light() {
        for &x in &[0.0, 0.5, 1.0, 2.0] {
            let cfg = presets::slow_light_scenario(400.0, 17.0, 1.3e6, x);
            let closed = group_velocity(&cfg).full;
            let fd = group_velocity_from_dispersion(&cfg).unwrap();
            let rel = (closed - fd).abs() / closed;
            assert!(rel < 1e-6, "x = {x}: rel = {rel:.3e}");
        }
    }

    #[test]
    fn delta_n_reference_value() {
        let cfg = presets::slow_light_reference();
        let dn = delta_n(&cfg);
        assert!((dn - 7.2e-3).abs() / 7.2e-3 < 0.02, "delta_n = {dn}");
        assert_eq!(delta_n(&cfg.with_probe_detuning(0.0).unwrap()), 0.0);
    }

    #[test]
    fn delta_n_inverse_in_group_velocity() {
        // Doubling v_g0 at fixed everything else (halving N doubles v_g0)
        // halves delta_n.
        let cfg = presets::slow_light_reference();
        let halved_density = cfg
            .with_number_density(cfg.atom().number_density / 2.0)
            .unwrap();
        let ratio = delta_n(&cfg) / delta_n(&halved_density);
        assert!((ratio - 2.0).abs() < 1e-12, "ratio {ratio}");
    }

    #[test]
    fn series_ratios_are_the_closed_chain() {
        let cfg = presets::slow_light_reference();
        let series = chi_series(&cfg, 3).unwrap();
        let k = cfg.constants();
        let q = k.eps0() * k.c() / cfg.coupling_intensity();
        let c = &series.coefficients;
        assert!((c[1] / c[0] + 4.0 * q).abs() <= 1e-12 * (4.0 * q));
        assert!((c[2] / c[1] + 3.0 * q).abs() <= 1e-12 * (3.0 * q));
        assert!((c[3] / c[2] + 8.0 * q / 3.0).abs() <= 1e-12 * (8.0 * q / 3.0));
    }

    #[test]
    fn series_order_zero_is_chi1() {
        let cfg = presets::slow_light_reference();
        let series = chi_series(&cfg, 0).unwrap();
        assert_eq!(series.coefficients.len(), 1);
        assert_eq!(series.coefficients[0], chi1(&cfg));
    }

    #[test]
    fn sign_alternation_for_positive_detuning() {
        let cfg = presets::slow_light_reference();
        let series = chi_series(&cfg, 3).unwrap();
        let c = &series.coefficients;
        assert!(c[0] > 0.0 && c[1] < 0.0 && c[2] > 0.0 && c[3] < 0.0);
        let nl = refractive_coeffs(&cfg).unwrap();
        assert!(nl.n2 < 0.0 && nl.n4 > 0.0 && nl.n6 < 0.0);
    }

    #[test]
    fn partial_sums_converge_geometrically_in_regime() {
        for &x in &[0.1, 0.25, 0.5, 0.9] {
            let cfg = presets::slow_light_scenario(400.0, 17.0, 1.3e6, x);
            let target = chi(&cfg);
            let sums = chi_partial_sums(&cfg, 121).unwrap();
            let remainders: Vec<f64> = sums
                .iter()
                .map(|s| (s - target).abs() / target.abs())
                .collect();
            // The remainder after k terms is (k+2) x^(k+1) chi1/(1+x)^2 up
            // to higher orders, so successive remainders shrink by
            // x (k+3)/(k+2). Probe at the largest order still well clear of
            // the floating-point floor.
            let k = (5..remainders.len() - 1)
                .rev()
                .find(|&k| remainders[k] > 1e-7)
                .unwrap();
            let ratio = remainders[k + 1] / remainders[k];
            let expected = x * (k as f64 + 3.0) / (k as f64 + 2.0);
            assert!(
                (ratio - expected).abs() < 0.1 * expected,
                "x = {x}: remainder ratio {ratio} vs {expected} at k = {k}"
            );
            // Within the stated budget the series has fully converged for
            // ratios up to one half.
            if x <= 0.5 {
                assert!(remainders[59] < 1e-8, "x = {x}: rel {:.3e}", remainders[59]);
            } else {
                assert!(remainders[120] < remainders[60]);
            }
        }
    }

    #[test]
    fn partial_sums_diverge_outside_regime() {
        let cfg = presets::slow_light_scenario(400.0, 17.0, 1.3e6, 1.5);
        let series = chi_series(&cfg, 3).unwrap();
        assert!(!series.regime_ok);
        let sums = series.partial_sums(cfg.mean_probe_field().powi(2), 120);
        let target = chi(&cfg);
        let early = (sums[10] - target).abs();
        let late = (sums[110] - target).abs();
        assert!(late > early * 1e6, "early {early:.3e}, late {late:.3e}");
    }

    #[test]
    fn strict_mode_rejects_series_outside_regime() {
        let mut opts = *presets::slow_light_reference().options();
        opts.strict = true;
        let base = presets::slow_light_scenario(400.0, 17.0, 1.3e6, 1.5);
        let cfg = crate::SystemConfig::build(*base.atom(), *base.probe(), *base.coupling(), opts)
            .unwrap();
        assert!(matches!(
            chi_series(&cfg, 3),
            Err(Error::SeriesRegimeViolation { .. })
        ));
    }

    #[test]
    fn refractive_coefficients_reference_values() {
        let cfg = presets::slow_light_reference();
        let nl = refractive_coeffs(&cfg).unwrap();
        let checks = [
            (nl.n2, -1.9e-7, "n2"),
            (nl.n4, 3.8e-12, "n4"),
            (nl.n6, -6.7e-17, "n6"),
            (nl.n2_practical, -0.36, "n2 practical"),
            (nl.n4_practical, 13.0, "n4 practical"),
        ];
        for (got, want, name) in checks {
            let rel = (got - want).abs() / want.abs();
            assert!(rel < 0.05, "{name}: {got:.4e} vs {want:.4e} ({rel:.3})");
        }
        assert!(
            (nl.n6_practical.abs() - 4.5e2).abs() / 4.5e2 < 0.05,
            "n6 practical {:.4e}",
            nl.n6_practical
        );
    }

    #[test]
    fn refractive_coefficients_are_half_susceptibilities() {
        let cfg = presets::slow_light_reference();
        let nl = refractive_coeffs(&cfg).unwrap();
        assert!((nl.n2 / nl.chi3 - 0.5).abs() <= 1e-10);
        assert!((nl.n4 / nl.chi5 - 0.5).abs() <= 1e-10);
        assert!((nl.n6 / nl.chi7 - 0.5).abs() <= 1e-10);
    }

    #[test]
    fn ratio_figures_of_merit() {
        let cfg = presets::slow_light_reference();
        let nl = refractive_coeffs(&cfg).unwrap();
        let k = cfg.constants();
        let i2 = cfg.coupling_intensity();
        let r24 = -i2 / (3.0 * k.eps0() * k.c());
        let r46 = -3.0 * i2 / (8.0 * k.eps0() * k.c());
        assert!((nl.ratio_n2_n4 - r24).abs() <= 1e-10 * r24.abs());
        assert!((nl.ratio_n4_n6 - r46).abs() <= 1e-10 * r46.abs());
        // |n2/n4| in W/cm² is (2/3) I_2 * 1e-4, about 1e-2 here.
        assert!((nl.ratio_n2_n4_practical.abs() - 2.0 / 3.0 * i2 * 1e-4).abs() < 1e-12);
    }

    #[test]
    fn scaling_laws_in_density_and_intensity() {
        // n2 scales with N through chi1 when the intensity is held fixed.
        let cfg = presets::slow_light_reference();
        let nl = refractive_coeffs(&cfg).unwrap();
        let denser = cfg
            .with_number_density(2.0 * cfg.atom().number_density)
            .unwrap();
        let nl_denser = refractive_coeffs(&denser).unwrap();
        assert!((nl_denser.n2 / nl.n2 - 2.0).abs() < 1e-12);

        // Against the anchored scenario (fixed v_g0, hence fixed chi1),
        // each order gains one power of 1/I_2.
        let nl_double = refractive_coeffs(&presets::slow_light_scenario(800.0, 17.0, 1.3e6, 1e-4))
            .unwrap();
        assert!((nl_double.n2 / nl.n2 - 0.5).abs() < 1e-10);
        assert!((nl_double.n4 / nl.n4 - 0.25).abs() < 1e-10);
        assert!((nl_double.n6 / nl.n6 - 0.125).abs() < 1e-10);
    }

    #[test]
    fn coherence_product_recovers_chi() {
        // mu N rho_21 = eps0 chi E_1 with E_1 the mean probe field.
        let cfg = presets::slow_light_scenario(400.0, 17.0, 1.3e6, 0.3);
        let rho = coherence_largescale(&cfg).unwrap();
        let k = cfg.constants();
        let recovered =
            cfg.atom().dipole_moment * cfg.atom().number_density * rho
                / (k.eps0() * cfg.mean_probe_field());
        let target = chi(&cfg);
        assert!(
            (recovered - target).abs() <= 1e-10 * target.abs(),
            "{recovered} vs {target}"
        );
    }

    #[test]
    fn coherence_vanishes_at_resonance() {
        let cfg = test_config(100.0, 100.0, 0.0);
        assert_eq!(coherence_largescale(&cfg).unwrap(), 0.0);
    }

    #[test]
    fn strict_mode_enforces_large_n_floor() {
        let base = test_config(5.0, 100.0, 0.0);
        let mut opts = *base.options();
        opts.strict = true;
        // alpha = 5 -> mean photon number 25, below the default floor.
        let err = crate::SystemConfig::build(*base.atom(), *base.probe(), *base.coupling(), opts);
        assert!(matches!(err, Err(Error::LargeNViolation { .. })));
    }

    #[test]
    fn report_invariants() {
        let cfg = presets::slow_light_scenario(400.0, 17.0, 1.3e6, 0.5);
        let report = susceptibility_report(&cfg);
        assert!(report.group_velocity > report.group_velocity_lowest_order);
        assert!(report.group_velocity > 0.0);
        let resonant = susceptibility_report(&cfg.with_probe_detuning(0.0).unwrap());
        assert_eq!(resonant.chi, 0.0);
        assert_eq!(resonant.delta_n, 0.0);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn chi_odd_and_bounded_by_chi1(
                alpha in 1.0f64..1e3,
                beta in 10.0f64..1e3,
                detuning in 1.0f64..1e5,
            ) {
                let cfg = test_config(alpha, beta, detuning);
                let plus = chi(&cfg);
                let minus = chi(&cfg.with_probe_detuning(-detuning).unwrap());
                prop_assert_eq!(plus, -minus);
                // |chi| <= |chi1|: the probe only suppresses the response.
                prop_assert!(plus.abs() <= chi1(&cfg).abs() * (1.0 + 1e-12));
            }

            #[test]
            fn group_velocity_ratio_is_one_plus_x_squared(
                alpha in 0.0f64..2e3,
                beta in 10.0f64..1e3,
            ) {
                let cfg = test_config(alpha, beta, 0.0);
                let x = (cfg.rabi_probe() / cfg.rabi_coupling()).powi(2);
                let vg = group_velocity(&cfg);
                let ratio = vg.full / vg.lowest_order;
                prop_assert!((ratio - (1.0 + x).powi(2)).abs() <= 1e-12 * ratio);
            }
        }
    }
}
