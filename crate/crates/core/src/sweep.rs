//! Scans of the slow-light response over the pump detunings `(b₁, b₂)` and a
//! constrained search for a working point.

use std::io::{self, BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{AcousticScheme, DimensionlessDetunings, WaveguideParams};
use crate::slowlight::{self, balanced_pump_ratio, SlowLightResponse};

pub const CSV_HEADER: &str = "b1,b2,G,kappa,v_ratio,GR";

/// `[min, max, count]`, sampled inclusively.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisRange(pub f64, pub f64, pub usize);

impl AxisRange {
    pub fn min(&self) -> f64 {
        self.0
    }

    pub fn max(&self) -> f64 {
        self.1
    }

    pub fn count(&self) -> usize {
        self.2
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.2 {
            return self.1;
        }
        self.0 + (self.1 - self.0) * i as f64 / (self.2 - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.2).map(|i| self.value(i)).collect()
    }

    fn validate(&self, name: &'static str) -> Result<()> {
        if self.2 < 2 {
            return Err(Error::invalid(name, "count must be at least 2"));
        }
        if !(self.0.is_finite() && self.1.is_finite()) {
            return Err(Error::invalid(name, "bounds must be finite"));
        }
        if self.1 <= self.0 {
            return Err(Error::invalid(name, "max must exceed min"));
        }
        Ok(())
    }
}

/// Which pump intensity stays fixed when balancing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PumpNormalization {
    /// Keep `|E₂|²`, set `|E₁|² = ratio · |E₂|²`.
    #[default]
    FixedAntiStokes,
    /// Keep `|E₁|²`, set `|E₂|² = |E₁|² / ratio`.
    FixedStokes,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub b1_range: AxisRange,
    pub b2_range: AxisRange,
    pub base: AcousticScheme,
    pub wg: WaveguideParams,
    /// Enforce the zero-gain intensity ratio in every cell.
    pub balance: bool,
    #[serde(default)]
    pub normalization: PumpNormalization,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        self.b1_range.validate("b1_range")?;
        self.b2_range.validate("b2_range")?;
        self.base.validate()?;
        self.wg.validate()
    }

    /// Scheme evaluated at detunings `(b1, b2)`.
    pub fn scheme_at(&self, b1: f64, b2: f64) -> AcousticScheme {
        let mut s = self.base.with_detunings(DimensionlessDetunings::new(b1, b2));
        if self.balance {
            let ratio = balanced_pump_ratio(b1, b2);
            match self.normalization {
                PumpNormalization::FixedAntiStokes => s.e1_sq = ratio * s.e2_sq,
                PumpNormalization::FixedStokes => s.e2_sq = s.e1_sq / ratio,
            }
        }
        s
    }

    /// Closed-form response of cell `(i, j)`.
    pub fn evaluate_cell(&self, i: usize, j: usize) -> SlowLightResponse {
        let s = self.scheme_at(self.b1_range.value(i), self.b2_range.value(j));
        slowlight::effective_group_velocity(&s, &self.wg)
    }
}

/// Row-major grid: cell `(i, j)` at `i * b2.len() + j`, `i` indexing `b₁`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub b1: Vec<f64>,
    pub b2: Vec<f64>,
    pub cells: Vec<SlowLightResponse>,
    /// Cells whose response contains a non-finite number.
    pub masked: Vec<bool>,
}

impl Grid {
    pub fn cell(&self, i: usize, j: usize) -> &SlowLightResponse {
        &self.cells[i * self.b2.len() + j]
    }

    pub fn masked_count(&self) -> usize {
        self.masked.iter().filter(|&&m| m).count()
    }

    /// Largest `|G_R|` over unmasked cells.
    pub fn max_gain_gradient(&self) -> f64 {
        self.cells
            .iter()
            .zip(&self.masked)
            .filter(|(_, &m)| !m)
            .map(|(c, _)| c.gain_gradient.abs())
            .fold(0.0, f64::max)
    }

    /// Index of the cell closest to `(b1, b2)`.
    pub fn nearest(&self, b1: f64, b2: f64) -> (usize, usize) {
        let closest = |axis: &[f64], v: f64| {
            axis.iter()
                .enumerate()
                .min_by(|a, b| (a.1 - v).abs().total_cmp(&(b.1 - v).abs()))
                .map(|(k, _)| k)
                .unwrap_or(0)
        };
        (closest(&self.b1, b1), closest(&self.b2, b2))
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "{CSV_HEADER}")?;
        for (i, b1) in self.b1.iter().enumerate() {
            for (j, b2) in self.b2.iter().enumerate() {
                let c = self.cell(i, j);
                writeln!(
                    w,
                    "{:?},{:?},{:?},{:?},{:?},{:?}",
                    b1, b2, c.gain, c.kappa, c.v_ratio, c.gain_gradient
                )?;
            }
        }
        Ok(())
    }
}

/// One row of a sweep CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRow {
    pub b1: f64,
    pub b2: f64,
    pub gain: f64,
    pub kappa: f64,
    pub v_ratio: f64,
    pub gain_gradient: f64,
}

pub fn read_csv<R: BufRead>(r: R) -> Result<Vec<CsvRow>> {
    let mut lines = r.lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    if header.trim_end() != CSV_HEADER {
        return Err(Error::Config(format!("unexpected CSV header {header:?}")));
    }
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let v: Vec<f64> = line
            .split(',')
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Config(format!("line {}: {e}", k + 2)))?;
        if v.len() != 6 {
            return Err(Error::Config(format!("line {}: expected 6 columns", k + 2)));
        }
        rows.push(CsvRow {
            b1: v[0],
            b2: v[1],
            gain: v[2],
            kappa: v[3],
            v_ratio: v[4],
            gain_gradient: v[5],
        });
    }
    Ok(rows)
}

/// Evaluates every cell of the grid in parallel.
pub fn grid_evaluate(spec: &GridSpec) -> Result<Grid> {
    spec.validate()?;
    let (n1, n2) = (spec.b1_range.count(), spec.b2_range.count());
    let cells: Vec<SlowLightResponse> = (0..n1 * n2)
        .into_par_iter()
        .map(|k| spec.evaluate_cell(k / n2, k % n2))
        .collect();
    let masked = cells.iter().map(|c| !c.is_finite()).collect();
    Ok(Grid {
        b1: spec.b1_range.values(),
        b2: spec.b2_range.values(),
        cells,
        masked,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorkingPoint {
    pub b1: f64,
    pub b2: f64,
    pub v_ratio: f64,
    pub gr_abs: f64,
    /// `|E₁|² / |E₂|²` in the selected cell.
    pub e_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found { point: WorkingPoint, feasible: usize },
    NoSolution { feasible: usize },
}

impl SearchOutcome {
    pub fn point(&self) -> Option<&WorkingPoint> {
        match self {
            SearchOutcome::Found { point, .. } => Some(point),
            SearchOutcome::NoSolution { .. } => None,
        }
    }
}

/// Converts a fraction of the grid's largest `|G_R|` into an absolute budget.
pub fn budget_from_fraction(grid: &Grid, fraction: f64) -> f64 {
    fraction * grid.max_gain_gradient()
}

/// Among unmasked cells with a positive finite `v_e` and `|G_R| ≤ gr_budget`,
/// picks the smallest `v_e/v_g`. Ties go to the smaller `|G_R|`, then the
/// smaller `|b₁| + |b₂|`, then the lexicographically smaller `(b₁, b₂)`.
pub fn find_working_point_in(spec: &GridSpec, grid: &Grid, gr_budget: f64) -> Result<SearchOutcome> {
    if !spec.balance {
        return Err(Error::Domain(
            "working-point search needs the zero-gain balance enabled".into(),
        ));
    }
    if gr_budget.is_nan() || gr_budget < 0.0 {
        return Err(Error::invalid("gr_budget", "must be non-negative"));
    }
    let n2 = grid.b2.len();
    let key = |k: usize| {
        let c = &grid.cells[k];
        let (b1, b2) = (grid.b1[k / n2], grid.b2[k % n2]);
        (c.v_ratio, c.gain_gradient.abs(), b1.abs() + b2.abs(), b1, b2)
    };
    let feasible: Vec<usize> = (0..grid.cells.len())
        .filter(|&k| {
            let c = &grid.cells[k];
            !grid.masked[k] && c.is_physical() && c.gain_gradient.abs() <= gr_budget
        })
        .collect();
    let best = feasible.iter().copied().min_by(|&a, &b| {
        let (ka, kb) = (key(a), key(b));
        ka.0.total_cmp(&kb.0)
            .then(ka.1.total_cmp(&kb.1))
            .then(ka.2.total_cmp(&kb.2))
            .then(ka.3.total_cmp(&kb.3))
            .then(ka.4.total_cmp(&kb.4))
    });
    Ok(match best {
        None => SearchOutcome::NoSolution { feasible: 0 },
        Some(k) => {
            let (b1, b2) = (grid.b1[k / n2], grid.b2[k % n2]);
            let c = &grid.cells[k];
            let s = spec.scheme_at(b1, b2);
            SearchOutcome::Found {
                point: WorkingPoint {
                    b1,
                    b2,
                    v_ratio: c.v_ratio,
                    gr_abs: c.gain_gradient.abs(),
                    e_ratio: s.e1_sq / s.e2_sq,
                },
                feasible: feasible.len(),
            }
        }
    })
}

pub fn find_working_point(spec: &GridSpec, gr_budget: f64) -> Result<SearchOutcome> {
    let grid = grid_evaluate(spec)?;
    find_working_point_in(spec, &grid, gr_budget)
}
