//! Data series behind the reference figures. Plotting is left to the
//! reader; every series is plain CSV.

use rayon::prelude::*;

use super::tables::{ArtifactId, Cell, Table};
use super::RunOptions;
use crate::bounds::{chi_bounds_suite, tn_simple_applies, XI_LOWER, XI_UPPER};
use crate::error::{ProlateError, Result};
use crate::pswf::{chi_only, ProlateContext, ProlateSpectrum};
use crate::roots::{largest_psi_root, special_points};

/// Samples of `ψ_n` on `[-1, 1]` for the 75a/75b plots.
pub const PSI_SAMPLES: usize = 1001;

fn psi_figure(id: ArtifactId, c: f64, n: usize, opts: &RunOptions) -> Result<Table> {
    let spec = ProlateSpectrum::build(&ProlateContext::with_tol(c, n, opts.tol)?)?;
    let f = spec.function(n);
    let sp = special_points(f)?;
    let mut rows: Vec<Vec<Cell>> = Vec::new();
    for k in 0..PSI_SAMPLES {
        let t = -1.0 + 2.0 * k as f64 / (PSI_SAMPLES - 1) as f64;
        rows.push(vec!["psi".into(), t.into(), f.psi(t).into()]);
    }
    for &t in &sp.t {
        rows.push(vec!["root".into(), t.into(), f.psi(t).into()]);
    }
    for &x in &sp.x {
        rows.push(vec!["extremum".into(), x.into(), f.psi(x).into()]);
    }
    if !sp.x_n_formal {
        for x in [-sp.x_n, sp.x_n] {
            rows.push(vec!["x_n".into(), x.into(), f.psi(x).into()]);
        }
    }
    // the two asterisks of the plots
    rows.push(vec!["marker".into(), 1.0.into(), f.psi(1.0).into()]);
    let tp = sp.turning;
    let at = if tp <= 1.0 { f.psi(tp) } else { 0.0 };
    rows.push(vec!["turning".into(), tp.into(), at.into()]);
    Ok(Table {
        id,
        c,
        header: vec!["kind", "t", "value"],
        rows,
    })
}

fn tn_figure(opts: &RunOptions) -> Result<Table> {
    let c = 200.0;
    let ns: Vec<usize> = (130..=230).collect();
    let spec = ProlateSpectrum::build(&ProlateContext::with_tol(c, 230, opts.tol)?)?;
    let rows = ns
        .par_iter()
        .map(|&n| {
            let f = spec.function(n);
            let t_n = largest_psi_root(f)?;
            let d = f.chi() * (1.0 + opts.perturb_chi) - c * c;
            let gap = 1.0 - t_n;
            let (lo, hi) = (XI_LOWER / d, XI_UPPER / d);
            Ok(vec![
                n.into(),
                (tn_simple_applies(n, c) as usize).into(),
                gap.ln().into(),
                lo.ln().into(),
                hi.ln().into(),
                (gap * d).into(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        id: ArtifactId::F170,
        c,
        header: vec!["n", "applies", "log_one_minus_tn", "log_lower", "log_upper", "xi"],
        rows,
    })
}

/// Relative errors `|bound - χ_n| / χ_n` of U1..U3 or L1..L3 for `c = 1000`,
/// `630 <= n <= 710`, with their base-10 logarithms.
fn chi_bound_figure(id: ArtifactId, opts: &RunOptions) -> Result<Table> {
    let c = 1000.0;
    let ns: Vec<usize> = (630..=710).collect();
    let chis = chi_only(c, &ns, opts.tol)?;
    let names: [&str; 3] = if id == ArtifactId::F171a { ["U1", "U2", "U3"] } else { ["L1", "L2", "L3"] };
    let mut rows = Vec::with_capacity(ns.len());
    for (&n, &chi) in ns.iter().zip(&chis) {
        let chi = chi * (1.0 + opts.perturb_chi);
        let suite = chi_bounds_suite(n, c, chi);
        let mut row: Vec<Cell> = vec![n.into(), chi.into()];
        let rel: Vec<f64> = names
            .iter()
            .map(|name| {
                let r = suite.iter().find(|r| r.name == *name).expect("suite has all six");
                let b = r.upper.or(r.lower).expect("one-sided bound");
                (b - chi).abs() / chi
            })
            .collect();
        row.extend(rel.iter().map(|&e| Cell::Real(e)));
        row.extend(rel.iter().map(|&e| Cell::Real(e.log10())));
        rows.push(row);
    }
    let header = if id == ArtifactId::F171a {
        vec!["n", "chi", "rel_u1", "rel_u2", "rel_u3", "log10_u1", "log10_u2", "log10_u3"]
    } else {
        vec!["n", "chi", "rel_l1", "rel_l2", "rel_l3", "log10_l1", "log10_l2", "log10_l3"]
    };
    Ok(Table { id, c, header, rows })
}

/// Recomputes the data of one figure.
pub fn reproduce_figure(id: ArtifactId, opts: &RunOptions) -> Result<Table> {
    match id {
        ArtifactId::F75a => psi_figure(id, 20.0, 9, opts),
        ArtifactId::F75b => psi_figure(id, 20.0, 14, opts),
        ArtifactId::F170 => tn_figure(opts),
        ArtifactId::F171a | ArtifactId::F171b => chi_bound_figure(id, opts),
        _ => Err(ProlateError::UnknownId(format!("{id} is not a figure"))),
    }
}
