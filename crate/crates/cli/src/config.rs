//! Scenario files: `key = value` lines grouped under `[section]` headers.
//!
//! ```text
//! [model]
//! omega_q_ghz = 5
//! gamma_over_omega = 0.01
//! distance_m = 0.015
//! ```
//!
//! `#` starts a comment. Every error carries the line it refers to.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;

use wqed_core::{Branch, ModelParams};

use crate::error::{CliError, Result};

const DEFAULT_V_G: f64 = 3.0e8;
const DEFAULT_BANDWIDTH: f64 = 1e-3;

#[derive(Debug, Clone)]
struct Entry {
    value: String,
    line: usize,
    used: std::cell::Cell<bool>,
}

/// Parsed but untyped scenario text.
#[derive(Debug, Clone, Default)]
pub struct RawConfig {
    entries: BTreeMap<(String, String), Entry>,
    /// Keys in file order, for echoing into output headers.
    order: Vec<(String, String)>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut raw = RawConfig::default();
        let mut section = String::new();
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| CliError::parse(lineno, "unterminated section header"))?
                    .trim();
                if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(CliError::parse(lineno, format!("bad section name '{name}'")));
                }
                section = name.to_string();
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| CliError::parse(lineno, format!("expected 'key = value', got '{content}'")))?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() {
                return Err(CliError::parse(lineno, "empty key"));
            }
            if section.is_empty() {
                return Err(CliError::parse(lineno, format!("key '{key}' appears before any [section]")));
            }
            let id = (section.clone(), key.to_string());
            if let Some(prev) = raw.entries.get(&id) {
                return Err(CliError::parse(
                    lineno,
                    format!("duplicate key '{key}' in [{section}] (first set on line {})", prev.line),
                ));
            }
            raw.order.push(id.clone());
            raw.entries.insert(
                id,
                Entry {
                    value: value.to_string(),
                    line: lineno,
                    used: std::cell::Cell::new(false),
                },
            );
        }
        Ok(raw)
    }

    fn get(&self, section: &str, key: &str) -> Option<&Entry> {
        let e = self.entries.get(&(section.to_string(), key.to_string()))?;
        e.used.set(true);
        Some(e)
    }

    fn has_section(&self, section: &str) -> bool {
        self.entries.keys().any(|(s, _)| s == section)
    }

    fn string(&self, section: &str, key: &str) -> Option<(String, usize)> {
        self.get(section, key).map(|e| (e.value.clone(), e.line))
    }

    fn number(&self, section: &str, key: &str) -> Result<Option<f64>> {
        let Some(e) = self.get(section, key) else {
            return Ok(None);
        };
        let v: f64 = e
            .value
            .parse()
            .map_err(|_| CliError::parse(e.line, format!("'{key}' must be a number, got '{}'", e.value)))?;
        if !v.is_finite() {
            return Err(CliError::parse(e.line, format!("'{key}' must be finite")));
        }
        Ok(Some(v))
    }

    fn count(&self, section: &str, key: &str) -> Result<Option<usize>> {
        let Some(e) = self.get(section, key) else {
            return Ok(None);
        };
        e.value
            .parse()
            .map(Some)
            .map_err(|_| CliError::parse(e.line, format!("'{key}' must be a nonnegative integer, got '{}'", e.value)))
    }

    fn list(&self, section: &str, key: &str) -> Result<Option<Vec<f64>>> {
        let Some(e) = self.get(section, key) else {
            return Ok(None);
        };
        e.value
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| CliError::parse(e.line, format!("'{key}' has a bad entry '{}'", s.trim())))
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    /// Exactly one of `keys` may be given.
    fn one_of(&self, section: &str, keys: &[&'static str]) -> Result<Option<(&'static str, f64, usize)>> {
        let mut found: Option<(&'static str, f64, usize)> = None;
        for &k in keys {
            if let Some(v) = self.number(section, k)? {
                let line = self.get(section, k).map(|e| e.line).unwrap_or(0);
                if let Some((prev, _, _)) = found {
                    return Err(CliError::parse(line, format!("'{k}' conflicts with '{prev}' in [{section}]")));
                }
                found = Some((k, v, line));
            }
        }
        Ok(found)
    }

    fn unused(&self) -> Option<(String, String, usize)> {
        self.order.iter().find_map(|id| {
            let e = &self.entries[id];
            (!e.used.get()).then(|| (id.0.clone(), id.1.clone(), e.line))
        })
    }

    /// `(section.key, value)` pairs in file order.
    pub fn echo(&self) -> Vec<(String, String)> {
        self.order
            .iter()
            .map(|id| (format!("{}.{}", id.0, id.1), self.entries[id].value.clone()))
            .collect()
    }
}

/// Frequencies at which the spectrum, or the field, is evaluated (units of Ω).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub omegas_over_omega: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub xs_over_d: Vec<f64>,
    pub ts: Vec<f64>,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BeatingSpec {
    pub x_over_d: f64,
    pub samples_per_period: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeaksSpec {
    pub xs_over_d: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleSpec {
    pub samples: usize,
    pub seed: u64,
}

/// Everything a subcommand needs, validated.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub name: Option<String>,
    /// Parameter summary from the figure caption, for presets.
    pub caption: Option<String>,
    pub params: ModelParams,
    pub sweep: Option<SweepSpec>,
    pub grid: Option<GridSpec>,
    pub beating: BeatingSpec,
    pub peaks: Option<PeaksSpec>,
    pub oracle: OracleSpec,
    pub output: Option<PathBuf>,
    pub echo: Vec<(String, String)>,
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// Either `<stem>_values` or `<stem>_min`/`<stem>_max`/`<stem>_points`.
fn axis(raw: &RawConfig, section: &str, stem: &str) -> Result<Option<Vec<f64>>> {
    let values = raw.list(section, &format!("{stem}_values"))?;
    let lo = raw.number(section, &format!("{stem}_min"))?;
    let hi = raw.number(section, &format!("{stem}_max"))?;
    let n = raw.count(section, &format!("{stem}_points"))?;
    match (values, lo, hi, n) {
        (Some(v), None, None, None) => Ok(Some(v)),
        (None, Some(lo), Some(hi), Some(n)) if n >= 1 && hi >= lo => Ok(Some(linspace(lo, hi, n))),
        (None, None, None, None) => Ok(None),
        _ => {
            let line = [
                format!("{stem}_values"),
                format!("{stem}_min"),
                format!("{stem}_max"),
                format!("{stem}_points"),
            ]
            .iter()
            .filter_map(|k| raw.get(section, k).map(|e| e.line))
            .min()
            .unwrap_or(0);
            Err(CliError::parse(
                line,
                format!("[{section}] needs either {stem}_values or {stem}_min <= {stem}_max with {stem}_points >= 1"),
            ))
        }
    }
}

fn required(raw: &RawConfig, section: &str, keys: &[&'static str]) -> Result<(&'static str, f64, usize)> {
    raw.one_of(section, keys)?.ok_or_else(|| CliError::Missing {
        section: section.to_string(),
        key: keys.join(" | "),
    })
}

fn model(raw: &RawConfig) -> Result<ModelParams> {
    let sec = "model";
    let (k, v, line) = required(raw, sec, &["omega_q_ghz", "omega_q_rad_s"])?;
    let omega_q = if k == "omega_q_ghz" { 2.0 * PI * v * 1e9 } else { v };
    if omega_q.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(CliError::parse(line, "qubit frequency must be positive"));
    }
    let v_g = raw.number(sec, "v_g_m_s")?.unwrap_or(DEFAULT_V_G);
    let (gk, gv, gline) = required(raw, sec, &["gamma_over_omega", "gamma_rad_s", "coupling_g"])?;
    let gamma = match gk {
        "gamma_over_omega" => gv * omega_q,
        "gamma_rad_s" => gv,
        _ => 4.0 * PI * gv * gv,
    };
    let (dk, dv, dline) = required(raw, sec, &["distance_m", "k_omega_d_over_pi"])?;
    let distance = if dk == "distance_m" { dv } else { dv * PI * v_g / omega_q };
    let omega_s = match raw.one_of(sec, &["omega_s_over_omega", "omega_s_rad_s", "omega_s_ghz"])? {
        None => omega_q,
        Some(("omega_s_over_omega", v, _)) => v * omega_q,
        Some(("omega_s_ghz", v, _)) => 2.0 * PI * v * 1e9,
        Some((_, v, _)) => v,
    };
    let bandwidth = match raw.one_of(sec, &["bandwidth_over_omega", "bandwidth_rad_s"])? {
        None => DEFAULT_BANDWIDTH * omega_q,
        Some(("bandwidth_over_omega", v, _)) => v * omega_q,
        Some((_, v, _)) => v,
    };
    ModelParams::new(omega_q, gamma, distance, v_g, omega_s, bandwidth).map_err(|e| {
        // Point at the most likely culprit.
        let line = if distance <= 0.0 { dline } else { gline };
        CliError::parse(line, e.to_string())
    })
}

impl ScenarioConfig {
    pub fn from_text(text: &str) -> Result<Self> {
        let raw = RawConfig::parse(text)?;
        let params = model(&raw)?;

        let sweep = axis(&raw, "sweep", "omega_over_omega")?.map(|omegas_over_omega| SweepSpec { omegas_over_omega });
        if let Some(s) = &sweep {
            if s.omegas_over_omega.iter().any(|w| w.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater)) {
                let line = raw.get("sweep", "omega_over_omega_min").or(raw.get("sweep", "omega_over_omega_values")).map(|e| e.line).unwrap_or(0);
                return Err(CliError::parse(line, "sweep frequencies must be positive"));
            }
        }

        let grid = if raw.has_section("grid") {
            let xs = axis(&raw, "grid", "x_over_d")?.ok_or_else(|| CliError::Missing {
                section: "grid".into(),
                key: "x_over_d_values | x_over_d_min/max/points".into(),
            })?;
            let ts = axis(&raw, "grid", "t_s")?.ok_or_else(|| CliError::Missing {
                section: "grid".into(),
                key: "t_s_values | t_s_min/max/points".into(),
            })?;
            let branch = match raw.string("grid", "branch") {
                None => Branch::Transient,
                Some((v, line)) => match v.as_str() {
                    "transient" => Branch::Transient,
                    "steady" => Branch::SteadyState,
                    other => {
                        return Err(CliError::parse(line, format!("branch must be 'transient' or 'steady', got '{other}'")))
                    }
                },
            };
            // Validate against the exclusion zones up front.
            let d = params.distance();
            let xs_m: Vec<f64> = xs.iter().map(|x| x * d).collect();
            wqed_core::SpaceTimeGrid::new(xs_m, ts.clone(), &params).map_err(|e| {
                let line = raw
                    .get("grid", "x_over_d_values")
                    .or(raw.get("grid", "x_over_d_min"))
                    .map(|e| e.line)
                    .unwrap_or(0);
                CliError::parse(line, e.to_string())
            })?;
            Some(GridSpec { xs_over_d: xs, ts, branch })
        } else {
            None
        };

        let beating = BeatingSpec {
            x_over_d: raw.number("beating", "x_over_d")?.unwrap_or(2.0),
            samples_per_period: raw.count("beating", "samples_per_period")?.unwrap_or(32),
        };
        let peaks = axis(&raw, "peaks", "x_over_d")?.map(|xs_over_d| PeaksSpec { xs_over_d });
        let oracle = OracleSpec {
            samples: raw.count("oracle", "samples")?.unwrap_or(200),
            seed: raw.count("oracle", "seed")?.unwrap_or(1) as u64,
        };
        let output = raw.string("output", "path").map(|(p, _)| PathBuf::from(p));
        let name = raw.string("meta", "name").map(|(v, _)| v);
        let caption = raw.string("meta", "caption").map(|(v, _)| v);

        if let Some((section, key, line)) = raw.unused() {
            return Err(CliError::parse(line, format!("unknown key '{key}' in [{section}]")));
        }
        Ok(ScenarioConfig {
            name,
            caption,
            params,
            sweep,
            grid,
            beating,
            peaks,
            oracle,
            output,
            echo: raw.echo(),
        })
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_text(&text)
    }
}
