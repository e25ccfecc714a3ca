//! Runs every checkable property over a grid of `(c, n)`.
//!
//! Each grid point yields exactly one case per entry of [`CHECKS`]; a check
//! whose hypotheses fail at that point is recorded as not applicable.

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};
use std::io::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::config::GridEntry;
use super::format::plain;
use super::RunOptions;
use crate::bounds::{function_suite, transformed_ode_residual, transformed_q, BoundReport, Claim, Verdict};
use crate::error::Result;
use crate::legendre::gauss_legendre;
use crate::prufer::{h_gap, h_t, PhaseSolution, Z_0};
use crate::pswf::{ProlateContext, ProlateSpectrum, PswfFunction};
use crate::roots::{grid_scan_roots, scan_samples, spacing_report, special_points_with_phase, Regime, SpecialPoints};

/// `|<ψ_m, ψ_n>|` limit for `m != n`.
pub const ORTHO_TOL: f64 = 1e-8;
/// `|<ψ_n, ψ_n> - 1|` limit.
pub const NORM_TOL: f64 = 1e-10;
/// Phase error limit at roots and extrema.
pub const THETA_TOL: f64 = 1e-8;

/// Every check reported per grid point, in output order.
pub const CHECKS: [&str; 45] = [
    "error",
    "orthonormality",
    "psi_root_count",
    "dpsi_root_count",
    "interlacing",
    "root_residual",
    "theta_at_special_points",
    "theta_monotone",
    "crude",
    "regime",
    "count_sandwich",
    "above_minus_n",
    "tail_count",
    "h_bracket",
    "tn_bracket",
    "tn_simple",
    "spacing",
    "spacing_coarse",
    "gap_pi_over_c",
    "gap_monotone",
    "U1",
    "U2",
    "U3",
    "L1",
    "L2",
    "L3",
    "psi1_sq_lower",
    "psi1_sq_upper",
    "inv_psi0",
    "inv_dpsi0",
    "extrema_increasing",
    "extrema_below_endpoint",
    "q_increasing",
    "q_tilde_decreasing",
    "transformed_ode",
    "transformed_q_floor",
    "z0_ratio",
    "h_t_floor",
    "h_gap_min",
    "osc_x_t",
    "osc_t_x",
    "osc_x_x",
    "osc_t_t",
    "simple_roots",
    "phase_center",
];

/// One check at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseResult {
    pub c: f64,
    pub n: usize,
    pub check: &'static str,
    pub verdict: Verdict,
    /// Smallest signed relative margin over the sub-claims; negative when
    /// violated, NaN when nothing was applicable.
    pub margin: f64,
    pub note: String,
}

/// Counts per check.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CheckSummary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub not_applicable: usize,
    pub worst_margin: f64,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub grid: Vec<GridEntry>,
    pub cases: Vec<CaseResult>,
    pub runtime: Duration,
}

fn rank(v: Verdict) -> u8 {
    match v {
        Verdict::NotApplicable => 0,
        Verdict::Pass => 1,
        Verdict::Inconclusive => 2,
        Verdict::Fail => 3,
    }
}

fn margin(r: &BoundReport) -> f64 {
    let m = [r.rel_err_lower, r.rel_err_upper].into_iter().flatten().fold(f64::INFINITY, f64::min);
    if m.is_finite() { m } else { f64::NAN }
}

fn flag(name: &'static str, f: &PswfFunction, ok: bool) -> BoundReport {
    Claim::new(name, f.c(), f.n(), if ok { 1.0 } else { -1.0 }).lower(0.0).judge()
}

/// `(|<ψ_n, ψ_n> - 1|, max_{m<n} |<ψ_m, ψ_n>|)` by Gauss-Legendre
/// quadrature exact for the truncated expansions.
fn orthonormality(spec: &ProlateSpectrum, n: usize) -> (f64, f64) {
    let f = spec.function(n);
    let deg = (0..=n)
        .map(|m| {
            let g = spec.function(m);
            g.degree(g.coeffs().len() - 1)
        })
        .max()
        .unwrap_or(0);
    let (x, w) = gauss_legendre(deg + 2);
    let vals: Vec<f64> = x.iter().map(|&t| f.psi(t)).collect();
    let norm: f64 = vals.iter().zip(&w).map(|(v, w)| v * v * w).sum();
    let cross = (0..n)
        .map(|m| {
            let g = spec.function(m);
            x.iter().zip(&w).zip(&vals).map(|((&t, w), v)| v * g.psi(t) * w).sum::<f64>().abs()
        })
        .fold(0.0, f64::max);
    ((norm - 1.0).abs(), cross)
}

fn phase_checks(f: &PswfFunction, sp: &SpecialPoints, phase: &PhaseSolution, out: &mut Vec<BoundReport>) -> Result<()> {
    let (c, n) = (f.c(), f.n());
    let mut worst: f64 = 0.0;
    for (i, &t) in sp.t.iter().enumerate() {
        worst = worst.max((phase.theta(t)? - (i as f64 + 0.5) * PI).abs());
    }
    for (i, &x) in sp.x.iter().enumerate() {
        worst = worst.max((phase.theta(x)? - (i + 1) as f64 * PI).abs());
    }
    worst = worst.max(phase.theta(-sp.x_n)?.abs());
    worst = worst.max((phase.theta(sp.x_n)? - n as f64 * PI).abs());
    out.push(Claim::new("theta_at_special_points", c, n, worst).upper(THETA_TOL).judge());
    out.push(Claim::new("phase_center", c, n, phase.center_defect()).upper(1e-9).judge());
    let grid = phase.grid();
    out.push(flag("theta_monotone", f, grid.windows(2).all(|w| w[1].0 > w[0].0 && w[1].1 > w[0].1)));

    // oscillatory term between special points on the right half
    let mut xs = sp.x.clone();
    xs.push(sp.x_n);
    for i in 1..n {
        let xi = xs[i - 1];
        if xi >= 0.0 && xi < sp.x_n {
            let a = phase.oscillatory_integral(xi, sp.t[i])?;
            let b = phase.oscillatory_integral(sp.t[i], xs[i])?;
            out.push(Claim::new("osc_x_t", c, n, a).aux(i as f64).lower(0.0).judge());
            out.push(Claim::new("osc_t_x", c, n, b).aux(i as f64).upper(0.0).judge());
            out.push(Claim::new("osc_x_x", c, n, a + b).aux(i as f64).upper(0.0).judge());
        }
        if sp.t[i - 1] >= 0.0 {
            let v = phase.oscillatory_integral(sp.t[i - 1], sp.t[i])?;
            out.push(Claim::new("osc_t_t", c, n, v).aux(i as f64).lower(0.0).judge());
        }
    }
    Ok(())
}

fn point_checks(spec: &ProlateSpectrum, n: usize, opts: &RunOptions) -> Result<Vec<BoundReport>> {
    let f = spec.function(n);
    let (c, chi) = (f.c(), f.chi());
    let phase = PhaseSolution::solve(f)?;
    let mut sp = special_points_with_phase(f, &phase)?;
    sp.chi *= 1.0 + opts.perturb_chi;
    let mut out = function_suite(f, &sp)?;

    let (norm, cross) = orthonormality(spec, n);
    out.push(Claim::new("orthonormality", c, n, norm).upper(NORM_TOL).judge());
    out.push(Claim::new("orthonormality", c, n, cross).upper(ORTHO_TOL).judge());

    let samples = scan_samples(f);
    let scan = grid_scan_roots(|t| f.psi(t), samples, 1e-10);
    out.push(flag("psi_root_count", f, scan.len() == n));
    let expected = match sp.regime {
        Regime::Below => n + 1,
        Regime::Above => n - 1,
    };
    let dscan = grid_scan_roots(|t| f.dpsi(t), samples, 1e-10 * chi.sqrt());
    out.push(flag("dpsi_root_count", f, dscan.len() == expected && sp.dpsi_roots().len() == expected));
    out.push(flag("interlacing", f, sp.interlacing_holds()));
    let resid = sp
        .t
        .iter()
        .map(|&t| f.psi(t).abs() / f.dpsi(t).abs().max(1.0))
        .fold(0.0, f64::max);
    out.push(Claim::new("root_residual", c, n, resid).upper(1e-12).non_strict().judge());
    out.push(flag("simple_roots", f, sp.t.iter().all(|&t| f.dpsi(t) != 0.0)));

    phase_checks(f, &sp, &phase, &mut out)?;

    let above = sp.regime == Regime::Above;
    let gaps = spacing_report(&sp);
    let widest = gaps.gaps.iter().copied().fold(1.0 - sp.t_max(), f64::max);
    out.push(Claim::new("gap_pi_over_c", c, n, widest).upper(PI / c).applicable(above).judge());
    let decisive = above || chi < c * c - c * SQRT_2;
    let ok = if above { gaps.decreasing_on_right } else { gaps.increasing_on_right };
    let mut mono = flag("gap_monotone", f, ok);
    if !decisive {
        mono.verdict = Verdict::NotApplicable;
    } else if ok && gaps.ties > 0 {
        mono.verdict = Verdict::Inconclusive;
    }
    out.push(mono);

    let mut worst_res: f64 = 0.0;
    let mut q_floor = f64::INFINITY;
    for t in [0.0, 0.25, -0.5, 0.5] {
        let q = transformed_q(c, chi, t);
        worst_res = worst_res.max(transformed_ode_residual(f, t)?.abs() / q);
        if t != 0.0 {
            q_floor = q_floor.min(q);
        }
    }
    out.push(Claim::new("transformed_ode", c, n, worst_res).upper(1e-7).judge());
    out.push(Claim::new("transformed_q_floor", c, n, q_floor).lower(chi + 1.0).applicable(above).judge());

    let field = phase.field();
    let t_n = sp.t_max();
    let ratio = (1..=200)
        .map(|k| t_n * k as f64 / 200.0)
        .filter(|&t| t > 0.0)
        .map(|t| field.v_raw(t) / field.f_raw(t))
        .fold(f64::NEG_INFINITY, f64::max);
    out.push(Claim::new("z0_ratio", c, n, ratio).upper(Z_0).applicable(t_n > 0.0).judge());

    let a = chi / (c * c);
    let top = a.sqrt().min(1.0);
    let ht = (1..200)
        .map(|k| top * k as f64 / 200.0)
        .map(|t| h_t(t, a))
        .fold(f64::INFINITY, f64::min);
    out.push(Claim::new("h_t_floor", c, n, ht).lower(1.5).non_strict().judge());
    let hg = (0..=10_000)
        .map(|k| h_gap(0.25 * PI * k as f64 / 10_000.0))
        .fold(f64::INFINITY, f64::min);
    out.push(Claim::new("h_gap_min", c, n, hg).lower(1.0 / 25.0).judge());
    Ok(out)
}

fn aggregate(c: f64, n: usize, reports: Result<Vec<BoundReport>>) -> Vec<CaseResult> {
    let mut by: BTreeMap<&'static str, (Verdict, f64)> = BTreeMap::new();
    let mut note = String::new();
    match reports {
        Ok(list) => {
            for r in list {
                let e = by.entry(r.name).or_insert((Verdict::NotApplicable, f64::NAN));
                if rank(r.verdict) > rank(e.0) {
                    e.0 = r.verdict;
                }
                if r.verdict != Verdict::NotApplicable {
                    let m = margin(&r);
                    if !(e.1 <= m) {
                        e.1 = if e.1.is_nan() { m } else { e.1.min(m) };
                    }
                }
            }
            by.insert("error", (Verdict::Pass, f64::NAN));
        }
        Err(err) => {
            note = err.to_string();
            by.insert("error", (Verdict::Fail, f64::NAN));
        }
    }
    CHECKS
        .iter()
        .map(|&check| {
            let (verdict, margin) = by.get(check).copied().unwrap_or((Verdict::NotApplicable, f64::NAN));
            CaseResult {
                c,
                n,
                check,
                verdict,
                margin,
                note: if check == "error" { note.clone() } else { String::new() },
            }
        })
        .collect()
}

/// Runs the suite over `grid`.
pub fn verify(grid: &[GridEntry], opts: &RunOptions) -> VerifyReport {
    let start = Instant::now();
    let mut cases: Vec<CaseResult> = grid
        .par_iter()
        .flat_map(|g| {
            let ns: Vec<usize> = (g.n_min..=g.n_max).collect();
            if ns.is_empty() {
                return Vec::new();
            }
            match ProlateContext::with_tol(g.c, g.n_max, opts.tol).and_then(|ctx| ProlateSpectrum::build(&ctx)) {
                Ok(spec) => ns
                    .par_iter()
                    .flat_map(|&n| {
                        let reports = if n < 2 {
                            Err(crate::ProlateError::InvalidArgument("verification needs n >= 2".into()))
                        } else {
                            point_checks(&spec, n, opts)
                        };
                        aggregate(g.c, n, reports)
                    })
                    .collect(),
                Err(e) => ns.iter().flat_map(|&n| aggregate(g.c, n, Err(e.clone()))).collect(),
            }
        })
        .collect();
    cases.sort_by(|a, b| {
        a.c.total_cmp(&b.c)
            .then(a.n.cmp(&b.n))
            .then(CHECKS.iter().position(|c| *c == a.check).cmp(&CHECKS.iter().position(|c| *c == b.check)))
    });
    VerifyReport {
        grid: grid.to_vec(),
        cases,
        runtime: start.elapsed(),
    }
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| c.verdict == Verdict::Fail).count()
    }

    pub fn grid_size(&self) -> usize {
        self.grid.iter().map(GridEntry::len).sum()
    }

    pub fn summary(&self) -> BTreeMap<&'static str, CheckSummary> {
        let mut out: BTreeMap<&'static str, CheckSummary> = CHECKS
            .iter()
            .map(|&c| {
                (
                    c,
                    CheckSummary {
                        worst_margin: f64::NAN,
                        ..Default::default()
                    },
                )
            })
            .collect();
        for case in &self.cases {
            let s = out.entry(case.check).or_default();
            match case.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Inconclusive => s.inconclusive += 1,
                Verdict::NotApplicable => s.not_applicable += 1,
            }
            if !case.margin.is_nan() && !(s.worst_margin <= case.margin) {
                s.worst_margin = case.margin;
            }
        }
        out
    }

    /// One row per case, sorted; byte-identical across runs.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(["c", "n", "check", "verdict", "margin", "note"])?;
        for r in &self.cases {
            w.write_record([
                plain(r.c),
                r.n.to_string(),
                r.check.to_string(),
                r.verdict.as_str().to_string(),
                plain(r.margin),
                r.note.clone(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Line-oriented log: non-passing cases, per-check totals, overall line.
    pub fn write_log<W: Write>(&self, mut out: W) -> Result<()> {
        for g in &self.grid {
            writeln!(out, "grid c={} n={}..{}", plain(g.c), g.n_min, g.n_max)?;
        }
        for r in &self.cases {
            if matches!(r.verdict, Verdict::Fail | Verdict::Inconclusive) {
                writeln!(
                    out,
                    "case c={} n={} check={} verdict={} margin={} {}",
                    plain(r.c),
                    r.n,
                    r.check,
                    r.verdict,
                    plain(r.margin),
                    r.note
                )?;
            }
        }
        for (name, s) in self.summary() {
            writeln!(
                out,
                "check {name} pass={} fail={} inconclusive={} n/a={} worst_margin={}",
                s.pass,
                s.fail,
                s.inconclusive,
                s.not_applicable,
                plain(s.worst_margin)
            )?;
        }
        writeln!(
            out,
            "total points={} cases={} failures={} runtime={:.3}s",
            self.grid_size(),
            self.cases.len(),
            self.failures(),
            self.runtime.as_secs_f64()
        )?;
        Ok(())
    }
}
