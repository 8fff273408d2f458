//! CSV and JSON rendering of result tables.
//!
//! CSV floats use `{:.16e}` (17 significant digits) so identical inputs give
//! byte-identical files. Undefined cells are left empty in CSV and `null` in JSON.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Map, Value};
use wqed_core::{rates_for, ModelParams};

use crate::config::ScenarioConfig;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(Option<f64>),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(Some(v))
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        Cell::Num(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

fn fmt_num(v: f64) -> String {
    format!("{v:.16e}")
}

/// A rectangular result with `key: value` metadata lines.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(cfg: &ScenarioConfig, command: &str, columns: Vec<&'static str>) -> Self {
        Table {
            meta: scenario_meta(cfg, command),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn note(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.meta.push((key.into(), value.into()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}: {v}");
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(Some(v)) => fmt_num(*v),
                    Cell::Num(None) => String::new(),
                    Cell::Text(s) => s.clone(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        let meta: Map<String, Value> = self
            .meta
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), serde_json::to_value(v).unwrap_or(Value::Null)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&json!({
            "meta": meta,
            "columns": self.columns,
            "rows": rows,
        }))?;
        s.push('\n');
        Ok(s)
    }
}

fn model_meta(p: &ModelParams) -> Vec<(String, String)> {
    let rates = rates_for(p);
    let ghz = |w: f64| fmt_num(w / (2.0 * PI * 1e9));
    vec![
        ("regime".into(), rates.regime.to_string()),
        ("omega_q_rad_s".into(), fmt_num(p.omega_q())),
        ("omega_q_ghz".into(), ghz(p.omega_q())),
        ("gamma_rad_s".into(), fmt_num(p.gamma())),
        ("gamma_over_omega".into(), fmt_num(p.gamma() / p.omega_q())),
        ("distance_m".into(), fmt_num(p.distance())),
        ("k_omega_d".into(), fmt_num(p.phase_q())),
        ("v_g_m_s".into(), fmt_num(p.v_g())),
        ("omega_s_rad_s".into(), fmt_num(p.omega_s())),
        ("omega_s_ghz".into(), ghz(p.omega_s())),
        ("bandwidth_rad_s".into(), fmt_num(p.delta_bw())),
    ]
}

fn scenario_meta(cfg: &ScenarioConfig, command: &str) -> Vec<(String, String)> {
    let mut meta = vec![
        ("generator".to_string(), format!("wqed {}", env!("CARGO_PKG_VERSION"))),
        ("command".to_string(), command.to_string()),
    ];
    if let Some(name) = &cfg.name {
        meta.push(("scenario".into(), name.clone()));
    }
    if let Some(caption) = &cfg.caption {
        meta.push(("caption".into(), caption.clone()));
    }
    meta.extend(model_meta(&cfg.params));
    meta.extend(cfg.echo.iter().filter(|(k, _)| !k.starts_with("meta.")).map(|(k, v)| (format!("config {k}"), v.clone())));
    meta
}
