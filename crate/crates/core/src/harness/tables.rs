//! Reference tables recomputed from scratch.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use super::format::{real, NumberStyle};
use super::RunOptions;
use crate::bounds::{chi_square_upper, spacing_bracket, Counts};
use crate::error::{ProlateError, Result};
use crate::pswf::{chi_only, ProlateContext, ProlateSpectrum};
use crate::roots::special_points;

/// Every reproducible table and figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArtifactId {
    T77a,
    T77b,
    T77c,
    T99,
    T80a,
    T80b,
    T98a,
    T98b,
    F75a,
    F75b,
    F170,
    F171a,
    F171b,
}

impl ArtifactId {
    pub const ALL: [ArtifactId; 13] = [
        ArtifactId::T77a,
        ArtifactId::T77b,
        ArtifactId::T77c,
        ArtifactId::T99,
        ArtifactId::T80a,
        ArtifactId::T80b,
        ArtifactId::T98a,
        ArtifactId::T98b,
        ArtifactId::F75a,
        ArtifactId::F75b,
        ArtifactId::F170,
        ArtifactId::F171a,
        ArtifactId::F171b,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ArtifactId::T77a => "77a",
            ArtifactId::T77b => "77b",
            ArtifactId::T77c => "77c",
            ArtifactId::T99 => "99",
            ArtifactId::T80a => "80a",
            ArtifactId::T80b => "80b",
            ArtifactId::T98a => "98a",
            ArtifactId::T98b => "98b",
            ArtifactId::F75a => "75a",
            ArtifactId::F75b => "75b",
            ArtifactId::F170 => "170",
            ArtifactId::F171a => "171a",
            ArtifactId::F171b => "171b",
        }
    }

    pub fn is_table(&self) -> bool {
        !self.is_figure()
    }

    pub fn is_figure(&self) -> bool {
        matches!(
            self,
            ArtifactId::F75a | ArtifactId::F75b | ArtifactId::F170 | ArtifactId::F171a | ArtifactId::F171b
        )
    }

    /// Needs the opt-in flag because the band limit is 10000.
    pub fn is_heavy(&self) -> bool {
        matches!(self, ArtifactId::T80b)
    }
}

impl fmt::Display for ArtifactId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ArtifactId {
    type Err = ProlateError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s.trim())
            .ok_or_else(|| ProlateError::UnknownId(s.to_string()))
    }
}

/// One CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
}

impl Cell {
    pub fn render(&self, style: NumberStyle) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => real(*v, style),
            Cell::Text(s) => s.clone(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(v) => Some(*v as f64),
            Cell::Real(v) => Some(*v),
            Cell::Text(_) => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Header plus rows, ready for CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub id: ArtifactId,
    pub c: f64,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| *h == name)
    }

    /// Row whose first cell equals `key`.
    pub fn row(&self, key: i64) -> Option<&[Cell]> {
        self.rows
            .iter()
            .find(|r| matches!(r.first(), Some(Cell::Int(k)) if *k == key))
            .map(Vec::as_slice)
    }

    pub fn value(&self, key: i64, column: &str) -> Option<f64> {
        self.row(key)?.get(self.column(column)?)?.as_f64()
    }

    pub fn write_csv<W: Write>(&self, out: W, style: NumberStyle) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.render(style)))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self, style: NumberStyle) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf, style)?;
        Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
    }
}

pub const ABOVE_BELOW_HEADER: [&str; 6] =
    ["n", "chi_over_c2", "above", "below", "above_rel", "below_rel"];

/// Band limit and row keys of each reference table.
pub fn table_layout(id: ArtifactId) -> Option<(f64, Vec<usize>)> {
    let rows = match id {
        ArtifactId::T77a => (10.0, std::iter::once(6).chain((10..=45).step_by(5)).collect()),
        ArtifactId::T77b => (100.0, std::iter::once(64).chain((70..=100).step_by(5)).collect()),
        ArtifactId::T77c => (1000.0, std::iter::once(637).chain((640..=675).step_by(5)).collect()),
        ArtifactId::T99 => (100.0, vec![1, 9, 19, 29, 39, 49, 54, 59, 63]),
        ArtifactId::T80a => (1000.0, (640..=820).step_by(20).collect()),
        ArtifactId::T80b => (10000.0, (6400..=8200).step_by(200).collect()),
        ArtifactId::T98a => (100.0, vec![44, 46, 60, 62, 70, 72, 84, 86]),
        ArtifactId::T98b => (1000.0, vec![336, 338, 400, 402, 500, 502, 601, 603, 667, 669]),
        _ => return None,
    };
    let (c, mut ns): (f64, Vec<usize>) = rows;
    ns.sort_unstable();
    ns.dedup();
    Some((c, ns))
}

/// The `ψ_n` index of the spacing tables.
pub fn spacing_table_n(id: ArtifactId) -> Option<usize> {
    match id {
        ArtifactId::T98a => Some(87),
        ArtifactId::T98b => Some(670),
        _ => None,
    }
}

fn spectrum(c: f64, n_max: usize, opts: &RunOptions) -> Result<ProlateSpectrum> {
    ProlateSpectrum::build(&ProlateContext::with_tol(c, n_max, opts.tol)?)
}

/// Above/Below rows for one band limit.
pub fn above_below_rows(c: f64, ns: &[usize], opts: &RunOptions) -> Result<Vec<Vec<Cell>>> {
    let n_max = ns.iter().copied().max().unwrap_or(0);
    let spec = spectrum(c, n_max, opts)?;
    ns.par_iter()
        .map(|&n| {
            let f = spec.function(n);
            let mut sp = special_points(f)?;
            sp.chi *= 1.0 + opts.perturb_chi;
            let k = Counts::from_points(&sp)?;
            Ok(vec![
                n.into(),
                (sp.chi / (c * c)).into(),
                k.above.into(),
                k.below.into(),
                k.rel_above().into(),
                k.rel_below().into(),
            ])
        })
        .collect()
}

fn chi_square_rows(c: f64, ns: &[usize], opts: &RunOptions) -> Result<Vec<Vec<Cell>>> {
    let chis = chi_only(c, ns, opts.tol)?;
    Ok(ns
        .iter()
        .zip(chis)
        .map(|(&n, chi)| {
            let chi = chi * (1.0 + opts.perturb_chi);
            let u = chi_square_upper(n);
            vec![
                n.into(),
                ((n as f64 - 2.0 * c / PI - 1.0) / c).into(),
                chi.into(),
                u.into(),
                (u / chi - 1.0).into(),
            ]
        })
        .collect())
}

fn spacing_rows(c: f64, n: usize, is: &[usize], opts: &RunOptions) -> Result<Vec<Vec<Cell>>> {
    let spec = spectrum(c, n, opts)?;
    let sp = special_points(spec.function(n))?;
    is.iter()
        .map(|&i| {
            let gap = sp.t[i] - sp.t[i - 1];
            let (lo, hi) = spacing_bracket(&sp, i)?;
            Ok(vec![
                i.into(),
                gap.into(),
                lo.into(),
                hi.into(),
                ((gap - lo) / gap).into(),
                ((hi - gap) / gap).into(),
            ])
        })
        .collect()
}

/// Recomputes one table.
pub fn reproduce_table(id: ArtifactId, opts: &RunOptions) -> Result<Table> {
    let (c, ns) = table_layout(id).ok_or_else(|| ProlateError::UnknownId(format!("{id} is not a table")))?;
    if id.is_heavy() && !opts.heavy {
        return Err(ProlateError::InvalidArgument(format!(
            "table {id} uses c = {c}; pass --heavy to run it"
        )));
    }
    let (header, rows) = match id {
        ArtifactId::T77a | ArtifactId::T77b | ArtifactId::T77c | ArtifactId::T99 => {
            (ABOVE_BELOW_HEADER.to_vec(), above_below_rows(c, &ns, opts)?)
        }
        ArtifactId::T80a | ArtifactId::T80b => (
            vec!["n", "d_n", "chi", "chi_square_upper", "rel_err"],
            chi_square_rows(c, &ns, opts)?,
        ),
        ArtifactId::T98a | ArtifactId::T98b => (
            vec!["i", "gap", "lower", "upper", "lower_err", "upper_err"],
            spacing_rows(c, spacing_table_n(id).expect("spacing table"), &ns, opts)?,
        ),
        _ => unreachable!("figures are rejected by table_layout"),
    };
    Ok(Table { id, c, header, rows })
}
