use std::process::{Command, Output};

use wqed_cli::{commands, presets, ScenarioConfig};

fn wqed(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wqed"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data rows of a CSV as (header, rows of raw cells).
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<Option<f64>> {
    let k = header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[k].parse().ok()).collect()
}

#[test]
fn weak_coupling_preset_spectra_coincide() {
    let (h, rows) = parse_csv(&stdout(&wqed(&["spectrum", "--preset", "fig2"])));
    assert_eq!(rows.len(), 2001);
    let t = column(&h, &rows, "T_markov");
    let t_nm = column(&h, &rows, "T_nonmarkov");
    let r = column(&h, &rows, "R_markov");
    let sup = t.iter().zip(&t_nm).map(|(a, b)| (a.unwrap() - b.unwrap()).abs()).fold(0.0, f64::max);
    assert!(sup < 0.02, "{sup}");
    // Middle row sits exactly on resonance.
    let w = column(&h, &rows, "omega_over_Omega");
    assert_eq!(w[1000], Some(1.0));
    assert!(t[1000].unwrap().abs() < 1e-12);
    assert!((r[1000].unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn strong_coupling_preset_departs() {
    let text = stdout(&wqed(&["spectrum", "--preset", "fig3"]));
    let (h, rows) = parse_csv(&text);
    let t = column(&h, &rows, "T_markov");
    let t_nm = column(&h, &rows, "T_nonmarkov");
    let sup = t.iter().zip(&t_nm).map(|(a, b)| (a.unwrap() - b.unwrap()).abs()).fold(0.0, f64::max);
    assert!(sup > 0.1, "{sup}");
    assert!(text.contains("# regime: odd-pi(n=5)"));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let a = stdout(&wqed(&["field", "--preset", "fig9"]));
    let b = stdout(&wqed(&["field", "--preset", "fig9"]));
    let c = Command::new(env!("CARGO_BIN_EXE_wqed"))
        .args(["field", "--preset", "fig9"])
        .env("WQED_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a, b);
    assert_eq!(a, stdout(&c));
}

#[test]
fn presets_echo_caption_parameters() {
    for (name, command, _) in presets::PRESETS {
        let text = stdout(&wqed(&[command, "--preset", name]));
        let caption = presets::load(name).unwrap().caption.unwrap();
        assert!(text.contains(&format!("# caption: {caption}")), "{name}");
    }
}

#[test]
fn parse_errors_report_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.ini");
    std::fs::write(&path, "[model]\nomega_q_ghz = 5\ngamma_over_omega = 0.01\ndistance_m = 0.015\nfrobnicate = 3\n").unwrap();
    let out = wqed(&["spectrum", "--config", path.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 5") && err.contains("frobnicate"), "{err}");
}

#[test]
fn exclusion_zone_points_are_rejected_clearly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zone.ini");
    std::fs::write(
        &path,
        "[model]\nomega_q_ghz = 5\ngamma_over_omega = 0.01\ndistance_m = 0.015\n[grid]\nx_over_d_values = 0.99\nt_s_values = 1e-6\n",
    )
    .unwrap();
    let out = wqed(&["field", "--config", path.to_str().unwrap()]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("exclusion zone") && err.contains("line 6"), "{err}");
}

#[test]
fn field_columns_follow_regions() {
    let (h, rows) = parse_csv(&stdout(&wqed(&["field", "--preset", "fig10"])));
    assert_eq!(rows.len(), 801 * 3);
    let u = column(&h, &rows, "energy_u");
    let v = column(&h, &rows, "energy_v");
    let w = column(&h, &rows, "energy_w");
    for k in 0..rows.len() {
        assert_eq!(rows[k][4], "before");
        assert!(u[k].is_none() && w[k].is_none() && v[k].is_some());
    }
    let (h, rows) = parse_csv(&stdout(&wqed(&["field", "--preset", "fig11"])));
    let w = column(&h, &rows, "energy_w");
    assert!(w.iter().all(Option::is_some));
}

#[test]
fn interqubit_energy_is_that_of_the_summed_field() {
    let mut cfg = presets::load("fig9").unwrap();
    cfg.sweep = None;
    let table = commands::field(&cfg).unwrap();
    let p = cfg.params;
    let rates = wqed_core::rates_for(&p);
    let a2 = p.amplitude_a().powi(2);
    for row in table.rows.iter().step_by(45) {
        let (wqed_cli::Cell::Num(Some(x)), wqed_cli::Cell::Num(Some(e))) = (&row[1], &row[7]) else {
            panic!("unexpected row {row:?}");
        };
        let direct = wqed_core::fields::interqubit_at(*x, 5e-6, &rates, &p, wqed_core::Branch::SteadyState).unwrap();
        assert!((direct.norm_sqr() / a2 - e).abs() < 1e-12 * e.max(1.0));
    }
}

#[test]
fn beating_preset_reports_expected_periods() {
    let text = stdout(&wqed(&["beating", "--preset", "fig7"]));
    for (rel, period) in [("1.01", 2e-8), ("1.02", 1e-8)] {
        let line = text
            .lines()
            .find(|l| l.starts_with(&format!("# beat omega_over_Omega={rel}:")))
            .unwrap();
        let field = |key: &str| -> f64 {
            line.split_whitespace()
                .find_map(|kv| kv.strip_prefix(&format!("{key}=")))
                .unwrap()
                .parse()
                .unwrap()
        };
        let f = field("frequency_hz");
        assert!((f - 1.0 / period).abs() <= field("bin_width_hz"), "{line}");
        assert!((field("period_s") - period).abs() < 1e-3 * period);
    }
}

#[test]
fn peaks_preset_exceeds_unity_and_matches_direct_fields() {
    let (h, rows) = parse_csv(&stdout(&wqed(&["peaks", "--preset", "fig8"])));
    let formula = column(&h, &rows, "peak_formula");
    let direct = column(&h, &rows, "peak_direct");
    assert!(formula.iter().any(|f| f.unwrap() > 1.0));
    for (f, d) in formula.iter().zip(&direct) {
        assert!((f.unwrap() - d.unwrap()).abs() < 1e-8);
    }
}

#[test]
fn json_mirror_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    let out = wqed(&["spectrum", "--preset", "fig4", "--json", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), 2001);
    assert_eq!(json["meta"]["regime"], "generic");
    assert!(json["rows"][1000]["R_markov"].as_f64().unwrap() > 0.999_999);
}

#[test]
fn oracle_check_passes_for_even_geometry() {
    let text = "[model]\nomega_q_ghz = 5\ngamma_over_omega = 0.01\nk_omega_d_over_pi = 2\nomega_s_over_omega = 1.004\n[oracle]\nsamples = 24\nseed = 9\n";
    let cfg = ScenarioConfig::from_text(text).unwrap();
    let (table, failure) = commands::oracle_check(&cfg).unwrap();
    assert!(failure.is_none(), "{:?}", table.rows);
    assert_eq!(table.rows.len(), 4);
}

#[test]
fn preset_and_config_are_exclusive() {
    let out = wqed(&["spectrum"]);
    assert!(!out.status.success());
    let out = wqed(&["spectrum", "--preset", "nope"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown preset"));
}
