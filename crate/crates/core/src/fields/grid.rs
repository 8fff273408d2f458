use serde::Serialize;

use crate::error::{Result, WqedError};
use crate::model::ModelParams;

/// Fraction of `d` around each qubit where fields are not evaluated.
pub const EXCLUSION_FRACTION: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Region {
    /// `x < 0`, in front of the first qubit.
    Before,
    /// `0 < x < d`.
    Between,
    /// `x > d`, behind the second qubit.
    Behind,
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Region::Before => "before",
            Region::Between => "between",
            Region::Behind => "behind",
        };
        f.write_str(name)
    }
}

/// Classifies `x` and rejects points inside an exclusion zone.
pub fn locate(x: f64, params: &ModelParams) -> Result<Region> {
    if !x.is_finite() {
        return Err(WqedError::InvalidParams(format!("non-finite position {x}")));
    }
    let d = params.distance();
    // A hair of slack so that x = 0.05d itself, the customary start point, is accepted.
    let radius = EXCLUSION_FRACTION * d * (1.0 - 1e-12);
    for qubit in [0.0, d] {
        if (x - qubit).abs() < radius {
            return Err(WqedError::ExclusionZone {
                x,
                qubit,
                radius: EXCLUSION_FRACTION * d,
            });
        }
    }
    Ok(if x < 0.0 {
        Region::Before
    } else if x < d {
        Region::Between
    } else {
        Region::Behind
    })
}

/// Ordered sample positions and times with their region labels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpaceTimeGrid {
    xs: Vec<f64>,
    ts: Vec<f64>,
    regions: Vec<Region>,
}

impl SpaceTimeGrid {
    pub fn new(xs: Vec<f64>, ts: Vec<f64>, params: &ModelParams) -> Result<Self> {
        if xs.is_empty() || ts.is_empty() {
            return Err(WqedError::InvalidParams("grid needs at least one x and one t".into()));
        }
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(WqedError::InvalidParams("x samples must be strictly increasing".into()));
        }
        if ts.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(WqedError::InvalidParams("t samples must be strictly increasing".into()));
        }
        if let Some(t) = ts.iter().find(|t| !(t.is_finite() && **t >= 0.0)) {
            return Err(WqedError::InvalidParams(format!("invalid time sample {t}")));
        }
        let regions = xs
            .iter()
            .map(|&x| locate(x, params))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { xs, ts, regions })
    }

    /// `n` evenly spaced points on `[a, b]` (`n = 1` gives `a`).
    pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
        match n {
            0 => Vec::new(),
            1 => vec![a],
            _ => (0..n)
                .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
                .collect(),
        }
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ts(&self) -> &[f64] {
        &self.ts
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn len(&self) -> usize {
        self.xs.len() * self.ts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(x, t, region)` of flat index `k` (x-major order).
    pub fn point(&self, k: usize) -> (f64, f64, Region) {
        let nt = self.ts.len();
        let (ix, it) = (k / nt, k % nt);
        (self.xs[ix], self.ts[it], self.regions[ix])
    }
}
