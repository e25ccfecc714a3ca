//! Roots of `ψ_n` and `ψ_n'`, special points and root spacing.
//!
//! Roots of `ψ_n` are bracketed by the Prüfer phase: `t_i` is the only
//! point in `(s((i-1)π), s(iπ))` where `θ = (i - ½)π`. Newton with a
//! bisection safeguard then polishes each one. Only the right half is
//! computed; the left half is its mirror image.

use std::f64::consts::PI;

use crate::error::{ProlateError, Result};
use crate::prufer::PhaseSolution;
use crate::pswf::PswfFunction;

/// Sign of `χ_n - c²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    /// `χ_n < c²`: the turning point lies inside `(0, 1)`.
    Below,
    /// `χ_n > c²`.
    Above,
}

impl Regime {
    pub fn of(f: &PswfFunction) -> Self {
        if f.chi() > f.c() * f.c() {
            Regime::Above
        } else {
            Regime::Below
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Below => "below",
            Regime::Above => "above",
        }
    }
}

/// Safeguarded Newton for a sign change of `g` in `[lo, hi]`.
/// `g` returns the value and the derivative.
pub fn refine_root<G: Fn(f64) -> (f64, f64)>(g: G, mut lo: f64, mut hi: f64, start: f64) -> f64 {
    let s_lo = g(lo).0.signum();
    let mut x = if start > lo && start < hi { start } else { 0.5 * (lo + hi) };
    for _ in 0..200 {
        let (v, d) = g(x);
        if v == 0.0 {
            return x;
        }
        if v.signum() == s_lo {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - v / d;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(1e-300) || hi - lo <= f64::EPSILON * x.abs() {
            return next;
        }
        x = next;
    }
    x
}

/// Largest root of `ψ_n'` in `[0, 1)`.
///
/// Scans `ψ_n'` leftwards from `min(√χ_n/c, 1)` in steps of
/// `1/(16(n + c))` until it changes sign, then polishes. In the Below
/// regime this is `x_n`; in the Above regime it is `x_{n-1}`.
pub fn max_dpsi_root(f: &PswfFunction) -> Result<f64> {
    let step = 1.0 / (16.0 * (f.n() as f64 + f.c()));
    let start = f.turning_point().min(1.0 - 1e-12);
    let mut hi = start;
    let mut d_hi = f.dpsi(hi);
    let mut lo = hi - step;
    while lo > 0.0 {
        let d_lo = f.dpsi(lo);
        if d_lo == 0.0 {
            return Ok(lo);
        }
        if d_lo.signum() != d_hi.signum() {
            return Ok(refine_root(
                |t| {
                    let j = f.jet(t);
                    (j.d1, j.d2)
                },
                lo,
                hi,
                0.5 * (lo + hi),
            ));
        }
        hi = lo;
        d_hi = d_lo;
        lo -= step;
    }
    // the only root left is the centre of an even function
    if f.parity() == 0 {
        Ok(0.0)
    } else {
        Err(ProlateError::RootCount {
            what: "psi_n' on (0, 1)",
            found: 0,
            expected: 1,
        })
    }
}

fn mirror(right: &[f64], has_zero: bool) -> Vec<f64> {
    let mut out: Vec<f64> = right.iter().rev().map(|t| -t).collect();
    if has_zero {
        out.push(0.0);
    }
    out.extend_from_slice(right);
    out
}

/// Roots `t_1 < … < t_n` of `ψ_n` using an already solved phase.
pub fn psi_roots_with_phase(f: &PswfFunction, phase: &PhaseSolution) -> Result<Vec<f64>> {
    let n = f.n();
    let g = |t: f64| {
        let j = f.jet(t);
        (j.value, j.d1)
    };
    let mut right = Vec::with_capacity(n / 2);
    // i is 1-based; t_i > 0 exactly when i > (n + 1)/2 rounded down
    for i in (n / 2 + 1)..=n {
        if n % 2 == 1 && 2 * i == n + 1 {
            continue;
        }
        let lo = phase.theta_inverse((i - 1) as f64 * PI)?.max(0.0);
        let hi = phase.theta_inverse(i as f64 * PI)?.min(1.0);
        let start = phase.theta_inverse((i as f64 - 0.5) * PI)?;
        let (vlo, vhi) = (f.psi(lo), f.psi(hi));
        let root = if vlo.signum() != vhi.signum() {
            refine_root(g, lo, hi, start)
        } else {
            // bracket ends lie on extrema; reaching here means the phase
            // and the function disagree
            return Err(ProlateError::RootCount {
                what: "psi_n (phase bracket without sign change)",
                found: right.len(),
                expected: n.div_ceil(2) - (n % 2),
            });
        };
        right.push(root);
    }
    Ok(mirror(&right, n % 2 == 1))
}

/// Roots `t_1 < … < t_n` of `ψ_n`.
pub fn psi_roots(f: &PswfFunction) -> Result<Vec<f64>> {
    if f.n() == 0 {
        return Ok(Vec::new());
    }
    let phase = PhaseSolution::solve(f)?;
    let roots = psi_roots_with_phase(f, &phase)?;
    if roots.len() != f.n() {
        return Err(ProlateError::RootCount {
            what: "psi_n",
            found: roots.len(),
            expected: f.n(),
        });
    }
    Ok(roots)
}

/// `t_n` alone, refined inside `(s((n-1)π), s(nπ))`.
pub fn largest_psi_root(f: &PswfFunction) -> Result<f64> {
    let n = f.n();
    if n == 0 {
        return Err(ProlateError::InvalidArgument("psi_0 has no roots".into()));
    }
    if n == 1 {
        return Ok(0.0);
    }
    let phase = PhaseSolution::solve(f)?;
    let nf = n as f64;
    let lo = phase.theta_inverse((nf - 1.0) * PI)?.max(0.0);
    let hi = phase.theta_inverse(nf * PI)?.min(1.0);
    if f.psi(lo).signum() == f.psi(hi).signum() {
        return Err(ProlateError::RootCount {
            what: "psi_n (last phase bracket)",
            found: 0,
            expected: 1,
        });
    }
    let start = phase.theta_inverse((nf - 0.5) * PI)?;
    Ok(refine_root(
        |t| {
            let j = f.jet(t);
            (j.value, j.d1)
        },
        lo,
        hi,
        start,
    ))
}

/// Roots `x_1 < … < x_{n-1}` of `ψ_n'` strictly between `t_1` and `t_n`.
pub fn dpsi_interior_roots(f: &PswfFunction, t: &[f64]) -> Vec<f64> {
    let n = f.n();
    if n < 2 {
        return Vec::new();
    }
    let g = |x: f64| {
        let j = f.jet(x);
        (j.d1, j.d2)
    };
    let mut right = Vec::new();
    // x_i lies in (t_i, t_{i+1}); keep those with x_i > 0
    for i in 1..n {
        let (a, b) = (t[i - 1], t[i]);
        if b <= 0.0 {
            continue;
        }
        if n % 2 == 0 && 2 * i == n {
            continue; // x_{n/2} = 0
        }
        right.push(refine_root(g, a.max(0.0), b, 0.5 * (a.max(0.0) + b)));
    }
    mirror(&right, n % 2 == 0)
}

/// Roots of `ψ_n`, `ψ_n'`, the turning point and the regime.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecialPoints {
    pub c: f64,
    pub n: usize,
    pub chi: f64,
    /// `t_1 < … < t_n`.
    pub t: Vec<f64>,
    /// `x_1 < … < x_{n-1}` inside `(t_1, t_n)`.
    pub x: Vec<f64>,
    /// Largest root of `ψ_n'` (Below) or the formal endpoint 1 (Above).
    pub x_n: f64,
    /// True when `x_n = 1` is the formal endpoint rather than a root.
    pub x_n_formal: bool,
    /// `√χ_n / c`.
    pub turning: f64,
    pub regime: Regime,
}

impl SpecialPoints {
    /// `t_n`, the largest root of `ψ_n`.
    pub fn t_max(&self) -> f64 {
        *self.t.last().unwrap_or(&0.0)
    }

    /// Roots of `ψ_n'` in `(-1, 1)` in ascending order.
    pub fn dpsi_roots(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.x.len() + 2);
        if !self.x_n_formal {
            out.push(-self.x_n);
        }
        out.extend_from_slice(&self.x);
        if !self.x_n_formal {
            out.push(self.x_n);
        }
        out
    }

    /// `-x_n < t_1 < x_1 < … < t_n < x_n <= min(1, √χ/c)`.
    pub fn interlacing_holds(&self) -> bool {
        let n = self.n;
        if self.t.len() != n || self.x.len() + 1 != n.max(1) {
            return false;
        }
        let mut chain = Vec::with_capacity(2 * n + 2);
        chain.push(-self.x_n);
        for i in 0..n {
            chain.push(self.t[i]);
            if i + 1 < n {
                chain.push(self.x[i]);
            }
        }
        chain.push(self.x_n);
        let strict = chain.windows(2).all(|w| w[0] < w[1]);
        let upper = self.x_n <= self.turning.min(1.0);
        let lower = -self.turning < -self.x_n;
        strict && upper && (lower || self.x_n_formal && self.turning > 1.0)
    }
}

/// All special points of `ψ_n`, `n >= 1`.
pub fn special_points(f: &PswfFunction) -> Result<SpecialPoints> {
    let n = f.n();
    if n == 0 {
        return Err(ProlateError::InvalidArgument(
            "special points need n >= 1".into(),
        ));
    }
    let phase = PhaseSolution::solve(f)?;
    special_points_with_phase(f, &phase)
}

/// As [`special_points`], reusing a solved phase.
pub fn special_points_with_phase(f: &PswfFunction, phase: &PhaseSolution) -> Result<SpecialPoints> {
    let n = f.n();
    let t = psi_roots_with_phase(f, phase)?;
    if t.len() != n {
        return Err(ProlateError::RootCount {
            what: "psi_n",
            found: t.len(),
            expected: n,
        });
    }
    let x = dpsi_interior_roots(f, &t);
    let regime = Regime::of(f);
    Ok(SpecialPoints {
        c: f.c(),
        n,
        chi: f.chi(),
        t,
        x,
        x_n: phase.x_n(),
        x_n_formal: phase.is_formal_endpoint(),
        turning: f.turning_point(),
        regime,
    })
}

/// Gaps `t_{i+1} - t_i` and their monotonicity on the right half.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacingReport {
    /// `gaps[i - 1] = t_{i+1} - t_i`, `i = 1..n-1`.
    pub gaps: Vec<f64>,
    /// 1-based index of the first root with `t_i >= 0`.
    pub first_right: usize,
    /// Every consecutive pair on the right half strictly decreases
    /// (ties excluded).
    pub decreasing_on_right: bool,
    /// Every consecutive pair on the right half strictly increases
    /// (ties excluded).
    pub increasing_on_right: bool,
    /// Pairs equal to within `1e-14` relative; neither pattern is judged
    /// on them.
    pub ties: usize,
}

pub const GAP_TIE: f64 = 1e-14;

pub fn spacing_report(sp: &SpecialPoints) -> SpacingReport {
    let gaps: Vec<f64> = sp.t.windows(2).map(|w| w[1] - w[0]).collect();
    let first_right = sp.t.iter().position(|&t| t >= 0.0).map_or(sp.n + 1, |k| k + 1);
    let (mut dec, mut inc, mut ties) = (true, true, 0);
    // gaps with i >= first_right and i <= n - 1
    let start = first_right.saturating_sub(1);
    if start < gaps.len() {
        for w in gaps[start..].windows(2) {
            let (g0, g1) = (w[0], w[1]);
            if (g0 - g1).abs() <= GAP_TIE * g0.abs().max(g1.abs()) {
                ties += 1;
                continue;
            }
            if g1 >= g0 {
                dec = false;
            }
            if g1 <= g0 {
                inc = false;
            }
        }
    }
    SpacingReport {
        gaps,
        first_right,
        decreasing_on_right: dec,
        increasing_on_right: inc,
        ties,
    }
}

/// Sign changes of `g` on the Chebyshev nodes `-cos(πk/samples)`,
/// `0 <= k <= samples`, each refined by bisection. The nodes crowd toward
/// `±1`, where the roots of `ψ_n` crowd for large `n`. Samples with
/// `|g| <= noise` are skipped so rounding noise in exponentially small tails
/// is not counted.
pub fn grid_scan_roots<G: Fn(f64) -> f64>(g: G, samples: usize, noise: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for k in 0..=samples {
        let t = -(PI * k as f64 / samples as f64).cos();
        let v = g(t);
        if v.abs() <= noise {
            continue;
        }
        if let Some((tp, vp)) = last {
            if vp.signum() != v.signum() {
                let (mut lo, mut hi) = (tp, t);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if g(mid).signum() == vp.signum() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                out.push(0.5 * (lo + hi));
            }
        }
        last = Some((t, v));
    }
    out
}

/// Grid resolution used by the scan oracle, `16(n + c)`.
pub fn scan_samples(f: &PswfFunction) -> usize {
    (16.0 * (f.n() as f64 + f.c())).ceil() as usize
}
