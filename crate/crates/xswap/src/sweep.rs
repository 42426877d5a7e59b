//! Family parameter sweeps on inclusive uniform grids, emitted as CSV with
//! one header row, LF line endings, and 17-significant-digit values so every
//! row re-parses to the exact doubles it was computed from.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::families::{
    alpha_state, beta_state, pure_swap, werner, FamilyError, FamilyPoint, PureSwapPoint,
};

/// Grid resolution used when the caller does not set one.
pub const DEFAULT_POINTS: usize = 201;

/// Header of pure-family CSV output.
pub const PURE_HEADER: &str = "a,E_in,E_phi_out,E_psi_out,E_avg,p_phi,p_psi";

/// Header of mixed-family CSV output.
pub const MIXED_HEADER: &str = "param,C_in,C_out_phi,C_out_psi,C_th_min,C_th_max,regime";

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum SweepError {
    #[error("sweep range [{start}, {stop}] must satisfy 0 <= start <= stop <= 1")]
    InvalidRange { start: f64, stop: f64 },
    #[error("sweep needs at least 2 points, got {points}")]
    TooFewPoints { points: usize },
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Family selector for sweeps; the mixed families share one row layout and
/// the pure baseline has its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepFamily {
    Pure,
    Werner,
    Alpha,
    Beta,
}

impl fmt::Display for SweepFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepFamily::Pure => "pure",
            SweepFamily::Werner => "werner",
            SweepFamily::Alpha => "alpha",
            SweepFamily::Beta => "beta",
        })
    }
}

impl FromStr for SweepFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pure" => Ok(SweepFamily::Pure),
            "werner" => Ok(SweepFamily::Werner),
            "alpha" => Ok(SweepFamily::Alpha),
            "beta" => Ok(SweepFamily::Beta),
            other => Err(format!(
                "unknown family {other:?}, expected pure, werner, alpha, or beta"
            )),
        }
    }
}

/// A validated sweep request: family and an inclusive uniform grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub family: SweepFamily,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl SweepSpec {
    pub fn new(
        family: SweepFamily,
        start: f64,
        stop: f64,
        points: usize,
    ) -> Result<Self, SweepError> {
        if !(start.is_finite() && stop.is_finite())
            || start < 0.0
            || stop > 1.0
            || start > stop
        {
            return Err(SweepError::InvalidRange { start, stop });
        }
        if points < 2 {
            return Err(SweepError::TooFewPoints { points });
        }
        Ok(SweepSpec {
            family,
            start,
            stop,
            points,
        })
    }

    /// Inclusive uniform grid; both endpoints are hit exactly.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.stop
                } else {
                    let t = i as f64 / (n - 1) as f64;
                    self.start * (1.0 - t) + self.stop * t
                }
            })
            .collect()
    }
}

/// Computed sweep rows, one vector entry per grid point in grid order.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepRows {
    Pure(Vec<PureSwapPoint>),
    Mixed(Vec<FamilyPoint>),
}

impl SweepRows {
    pub fn len(&self) -> usize {
        match self {
            SweepRows::Pure(rows) => rows.len(),
            SweepRows::Mixed(rows) => rows.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Evaluates the requested family over the grid. Rows come back in grid
/// order regardless of how the parallel evaluation interleaves.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepRows, SweepError> {
    let grid = spec.grid();
    Ok(match spec.family {
        SweepFamily::Pure => SweepRows::Pure(
            grid.into_par_iter()
                .map(pure_swap)
                .collect::<Result<Vec<PureSwapPoint>, FamilyError>>()?,
        ),
        SweepFamily::Werner => SweepRows::Mixed(collect_mixed(grid, werner)?),
        SweepFamily::Alpha => SweepRows::Mixed(collect_mixed(grid, alpha_state)?),
        SweepFamily::Beta => SweepRows::Mixed(collect_mixed(grid, beta_state)?),
    })
}

fn collect_mixed(
    grid: Vec<f64>,
    point: fn(f64) -> Result<FamilyPoint, FamilyError>,
) -> Result<Vec<FamilyPoint>, SweepError> {
    Ok(grid
        .into_par_iter()
        .map(point)
        .collect::<Result<Vec<FamilyPoint>, FamilyError>>()?)
}

/// 17 significant digits, enough to reproduce the exact double on re-parse.
fn cell(x: f64) -> String {
    format!("{x:.16e}")
}

/// Renders rows as CSV: header, LF endings, '.' decimal separator.
pub fn csv_string(rows: &SweepRows) -> String {
    let mut out = String::new();
    match rows {
        SweepRows::Pure(points) => {
            out.push_str(PURE_HEADER);
            out.push('\n');
            for p in points {
                let fields = [
                    p.a,
                    p.e_in,
                    p.e_phi_out,
                    p.e_psi_out,
                    p.e_avg,
                    p.p_phi,
                    p.p_psi,
                ];
                push_row(&mut out, &fields, None);
            }
        }
        SweepRows::Mixed(points) => {
            out.push_str(MIXED_HEADER);
            out.push('\n');
            for p in points {
                let fields = [
                    p.param,
                    p.c_in,
                    p.c_out_phi,
                    p.c_out_psi,
                    p.c_th_min,
                    p.c_th_max,
                ];
                push_row(&mut out, &fields, Some(&p.regime.to_string()));
            }
        }
    }
    out
}

fn push_row(out: &mut String, fields: &[f64], tail: Option<&str>) {
    let mut first = true;
    for value in fields {
        if !first {
            out.push(',');
        }
        out.push_str(&cell(*value));
        first = false;
    }
    if let Some(tail) = tail {
        out.push(',');
        out.push_str(tail);
    }
    out.push('\n');
}
