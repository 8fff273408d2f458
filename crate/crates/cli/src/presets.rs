//! Built-in scenarios for the figure datasets, as scenario-file text.
//!
//! Each preset records its caption parameters under `[meta] caption`; they
//! are echoed as CSV header comments.

use crate::config::ScenarioConfig;
use crate::error::{CliError, Result};

/// `(name, default subcommand, scenario text)`.
pub const PRESETS: &[(&str, &str, &str)] = &[
    ("fig2", "spectrum", FIG2_4),
    ("fig3", "spectrum", FIG3_5),
    ("fig4", "spectrum", FIG2_4),
    ("fig5", "spectrum", FIG3_5),
    ("fig6", "field", FIG6),
    ("fig7", "beating", FIG7),
    ("fig8", "peaks", FIG8),
    ("fig9", "field", FIG9),
    ("fig10", "field", FIG10),
    ("fig11", "field", FIG11),
];

const FIG2_4: &str = "\
[meta]
name = weak-coupling spectra
caption = Gamma/Omega = 0.01, Omega/2pi = 5 GHz
[model]
omega_q_ghz = 5
gamma_over_omega = 0.01
k_omega_d_over_pi = 0.5
[sweep]
omega_over_omega_min = 0.98
omega_over_omega_max = 1.02
omega_over_omega_points = 2001
";

const FIG3_5: &str = "\
[meta]
name = strong-coupling spectra
caption = Gamma/Omega = 0.1, Omega/2pi = 5 GHz
[model]
omega_q_ghz = 5
gamma_over_omega = 0.1
k_omega_d_over_pi = 5
[sweep]
omega_over_omega_min = 0.8
omega_over_omega_max = 1.2
omega_over_omega_points = 2001
";

const FIG6: &str = "\
[meta]
name = transmitted energy versus distance, off resonance
caption = k_Omega d = pi/2 (d = 0.015 m), (omega_S - Omega)/Omega = +-0.007, Gamma/Omega = 0.01, Omega/2pi = 5 GHz, lambda = 6 cm
[model]
omega_q_ghz = 5
gamma_over_omega = 0.01
distance_m = 0.015
[sweep]
omega_over_omega_values = 0.993, 1.007
[grid]
x_over_d_min = 1.05
x_over_d_max = 21
x_over_d_points = 800
t_s_values = 5e-6
branch = steady
";

const FIG7: &str = "\
[meta]
name = field-energy beatings behind the second qubit
caption = (omega_S - Omega)/Omega = 0.01 and 0.02, x = 2d, Omega/2pi = 5 GHz, Gamma/Omega = 0.01, k_Omega d = 2pi, d = 0.06 m
[model]
omega_q_ghz = 5
gamma_over_omega = 0.01
distance_m = 0.06
[sweep]
omega_over_omega_values = 1.01, 1.02
[beating]
x_over_d = 2
samples_per_period = 32
";

const FIG8: &str = "\
[meta]
name = reflected resonance peak versus distance
caption = k_Omega d = pi/2, Omega/2pi = 5 GHz, Gamma/Omega = 0.01, d = 0.015 m
[model]
omega_q_ghz = 5
gamma_over_omega = 0.01
distance_m = 0.015
[peaks]
x_over_d_min = -6
x_over_d_max = -0.05
x_over_d_points = 600
";

const FIG9: &str = "\
[meta]
name = field between the qubits
caption = k_Omega d = pi/2, omega_S/Omega = 1, 1.01, 0.99, 1.02, 0.98, Gamma/Omega = 0.01, Omega/2pi = 5 GHz, d = 0.015 m
[model]
omega_q_ghz = 5
gamma_over_omega = 0.01
distance_m = 0.015
[sweep]
omega_over_omega_values = 0.98, 0.99, 1, 1.01, 1.02
[grid]
x_over_d_min = 0.05
x_over_d_max = 0.95
x_over_d_points = 361
t_s_values = 5e-6
branch = steady
";

const FIG10: &str = "\
[meta]
name = reflected resonance lines
caption = k_Omega d = 2pi, x = -0.5d, -d, -2d, Gamma/Omega = 0.01, Omega/2pi = 5 GHz, d = 0.06 m, t = 5e-6 s
[model]
omega_q_ghz = 5
gamma_over_omega = 0.01
distance_m = 0.06
[sweep]
omega_over_omega_min = 0.98
omega_over_omega_max = 1.02
omega_over_omega_points = 801
[grid]
x_over_d_values = -2, -1, -0.5
t_s_values = 5e-6
branch = transient
";

const FIG11: &str = "\
[meta]
name = field between the qubits
caption = k_Omega d = 2pi, omega_S/Omega = 1, 1.01, 0.99, 1.02, 0.98, Gamma/Omega = 0.01, Omega/2pi = 5 GHz, d = 0.06 m
[model]
omega_q_ghz = 5
gamma_over_omega = 0.01
distance_m = 0.06
[sweep]
omega_over_omega_values = 0.98, 0.99, 1, 1.01, 1.02
[grid]
x_over_d_min = 0.05
x_over_d_max = 0.95
x_over_d_points = 361
t_s_values = 5e-6
branch = steady
";

pub fn names() -> Vec<&'static str> {
    PRESETS.iter().map(|p| p.0).collect()
}

pub fn text(name: &str) -> Result<&'static str> {
    PRESETS
        .iter()
        .find(|p| p.0 == name)
        .map(|p| p.2)
        .ok_or_else(|| CliError::UnknownPreset(name.to_string(), names().join(", ")))
}

pub fn load(name: &str) -> Result<ScenarioConfig> {
    let mut cfg = ScenarioConfig::from_text(text(name)?)?;
    cfg.name.get_or_insert_with(|| name.to_string());
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_parses_with_caption() {
        for (name, _, _) in PRESETS {
            let cfg = load(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(cfg.caption.is_some(), "{name}");
        }
    }

    #[test]
    fn unknown_preset_lists_choices() {
        let err = load("fig99").unwrap_err().to_string();
        assert!(err.contains("fig2") && err.contains("fig11"));
    }

    #[test]
    fn regimes_of_presets() {
        use wqed_core::{rates_for, RegimeTag};
        assert_eq!(rates_for(&load("fig7").unwrap().params).regime.tag, RegimeTag::EvenPi);
        assert_eq!(rates_for(&load("fig8").unwrap().params).regime.tag, RegimeTag::Generic);
        assert_eq!(rates_for(&load("fig5").unwrap().params).regime.tag, RegimeTag::OddPi);
    }
}
