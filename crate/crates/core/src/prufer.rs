//! Modified Prüfer phase of the prolate equation.
//!
//! With `p = 1 - t²` and `q = χ - c²t²` the phase
//! `θ = atan(-√(p/q) ψ'/ψ) + mπ` satisfies `θ' = f + v sin 2θ`, where
//! `f = √(q/p)` and `v = ½(t/(1-t²) + c²t/(χ - c²t²))`. It increases from
//! `θ(-x_n) = 0` to `θ(x_n) = nπ`, hitting `(i - ½)π` at the roots of `ψ_n`
//! and `iπ` at the roots of `ψ_n'`.
//!
//! Forward integration towards `x_n` is unstable (`θ = nπ` repels), so the
//! equation is integrated backwards from `x_n` to 0 and the left half comes
//! from the symmetry `θ(-t) = nπ - θ(t)`.

use std::f64::consts::PI;

use crate::error::{ProlateError, Result};
use crate::legendre;
use crate::ode::{self, OdeOptions, Trajectory};
use crate::pswf::PswfFunction;
use crate::roots;

/// `1 / (1 + 3π/8)`.
pub const Z_0: f64 = 1.0 / (1.0 + 3.0 * PI / 8.0);

/// Distance from 1 where the Above-regime integration starts.
const ENDPOINT_OFFSET: f64 = 1e-9;

/// Coefficient functions `f`, `v` of the phase equation for one `(c, n, χ_n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseField {
    pub c: f64,
    pub n: usize,
    pub chi: f64,
}

impl PhaseField {
    pub fn new(c: f64, n: usize, chi: f64) -> Result<Self> {
        if !(c > 0.0 && chi > 0.0 && c.is_finite() && chi.is_finite()) {
            return Err(ProlateError::InvalidArgument(format!(
                "phase field needs c > 0 and chi > 0, got c = {c}, chi = {chi}"
            )));
        }
        Ok(Self { c, n, chi })
    }

    pub fn from_function(f: &PswfFunction) -> Self {
        Self {
            c: f.c(),
            n: f.n(),
            chi: f.chi(),
        }
    }

    /// `√χ_n / c`.
    pub fn turning_point(&self) -> f64 {
        self.chi.sqrt() / self.c
    }

    /// `min(√χ_n/c, 1)`; `f` and `v` are defined strictly inside.
    pub fn limit(&self) -> f64 {
        self.turning_point().min(1.0)
    }

    fn check(&self, t: f64) -> Result<()> {
        if t.abs() < self.limit() {
            Ok(())
        } else {
            Err(ProlateError::Domain(format!(
                "phase field needs |t| < {}, got t = {t}",
                self.limit()
            )))
        }
    }

    pub fn f(&self, t: f64) -> Result<f64> {
        self.check(t)?;
        Ok(self.f_raw(t))
    }

    pub fn v(&self, t: f64) -> Result<f64> {
        self.check(t)?;
        Ok(self.v_raw(t))
    }

    fn q(&self, t: f64) -> f64 {
        self.chi - self.c * self.c * t * t
    }

    pub(crate) fn f_raw(&self, t: f64) -> f64 {
        (self.q(t) / ((1.0 - t) * (1.0 + t))).sqrt()
    }

    pub(crate) fn v_raw(&self, t: f64) -> f64 {
        0.5 * (t / ((1.0 - t) * (1.0 + t)) + self.c * self.c * t / self.q(t))
    }

    /// Right-hand side `f(t) + v(t) sin 2θ`.
    pub fn rhs(&self, t: f64, theta: f64) -> f64 {
        self.f_raw(t) + self.v_raw(t) * (2.0 * theta).sin()
    }

    /// The unique `t̂` in `(0, min(√χ/c, 1))` with `f(t̂) = v(t̂)`.
    pub fn t_hat(&self) -> f64 {
        let (mut lo, mut hi) = (0.0, self.limit());
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.v_raw(mid) < self.f_raw(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn machinery(&self) -> Machinery {
        Machinery {
            a: self.chi / (self.c * self.c),
            t_hat: self.t_hat(),
            z0: Z_0,
        }
    }
}

/// `h_t(a)` with `-(f/v)' = h_t(a) f` for `a = χ/c²`.
pub fn h_t(t: f64, a: f64) -> f64 {
    let t2 = t * t;
    let num = 4.0 * t2 * t2 * t2 + (2.0 * a - 6.0) * t2 * t2 + (4.0 - 8.0 * a) * t2
        + 2.0 * a * (a + 1.0);
    let den = 1.0 + a - 2.0 * t2;
    num / (t2 * den * den)
}

/// `Z_δ = [1 + (3/2)(π/4 + δ/(1 + Z_0 sin 2δ))]^{-1}`.
pub fn z_delta(delta: f64) -> f64 {
    1.0 / (1.0 + 1.5 * (PI / 4.0 + delta / (1.0 + Z_0 * (2.0 * delta).sin())))
}

/// `h(δ) = (3/2)(π/2 - δ)/(1 + Z_δ) + (3/2)δ - 2 sin 2δ` on `[0, π/4]`.
pub fn h_gap(delta: f64) -> f64 {
    1.5 * (PI / 2.0 - delta) / (1.0 + z_delta(delta)) + 1.5 * delta - 2.0 * (2.0 * delta).sin()
}

/// Constants and helper functions tied to one phase field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Machinery {
    /// `χ_n / c²`.
    pub a: f64,
    pub t_hat: f64,
    pub z0: f64,
}

impl Machinery {
    pub fn h_t(&self, t: f64) -> f64 {
        h_t(t, self.a)
    }

    pub fn z_delta(&self, delta: f64) -> f64 {
        z_delta(delta)
    }

    pub fn h_gap(&self, delta: f64) -> f64 {
        h_gap(delta)
    }
}

/// `θ` on `[-x_n, x_n]` with its inverse.
#[derive(Debug, Clone)]
pub struct PhaseSolution {
    field: PhaseField,
    psi: PswfFunction,
    x_n: f64,
    /// `x_n = 1` stands in for the endpoint, not a root of `ψ_n'`.
    formal_endpoint: bool,
    /// Start of the numerical trajectory; above it θ uses the closed form.
    t_start: f64,
    traj: Trajectory<1>,
    center_defect: f64,
}

impl PhaseSolution {
    /// Integrates the phase of `ψ_n`. In the Below regime `x_n` is the
    /// largest root of `ψ_n'`; in the Above regime it is the endpoint 1.
    pub fn solve(f: &PswfFunction) -> Result<Self> {
        let x_n = if f.chi() > f.c() * f.c() {
            1.0
        } else {
            roots::max_dpsi_root(f)?
        };
        Self::solve_with_endpoint(f, x_n)
    }

    /// As [`PhaseSolution::solve`] with a caller-supplied `x_n`.
    pub fn solve_with_endpoint(f: &PswfFunction, x_n: f64) -> Result<Self> {
        let field = PhaseField::from_function(f);
        let n = f.n();
        if n == 0 {
            return Err(ProlateError::InvalidArgument(
                "the phase of psi_0 is constant; need n >= 1".into(),
            ));
        }
        let formal_endpoint = x_n >= 1.0;
        let (t_start, theta_start) = if formal_endpoint {
            if f.chi() <= f.c() * f.c() {
                return Err(ProlateError::Regime(format!(
                    "x_n = 1 requires chi_n > c^2 (n = {n})"
                )));
            }
            let t0 = 1.0 - ENDPOINT_OFFSET;
            (t0, closed_form_tail(&field, f, t0))
        } else {
            if !(x_n > 0.0 && x_n < field.limit()) {
                return Err(ProlateError::Domain(format!(
                    "x_n = {x_n} must lie in (0, {})",
                    field.limit()
                )));
            }
            (x_n, n as f64 * PI)
        };
        let opts = OdeOptions {
            rtol: 1e-14,
            atol: 1e-13,
            max_step: None,
            max_steps: 2_000_000,
        };
        let traj = ode::integrate(
            |t, y: &[f64; 1]| [field.rhs(t, y[0])],
            t_start,
            [theta_start],
            0.0,
            &opts,
        )?;
        let center_defect = (traj.y_end[0] - 0.5 * n as f64 * PI).abs();
        Ok(Self {
            field,
            psi: f.clone(),
            x_n,
            formal_endpoint,
            t_start,
            traj,
            center_defect,
        })
    }

    pub fn field(&self) -> &PhaseField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.field.n
    }

    pub fn x_n(&self) -> f64 {
        self.x_n
    }

    pub fn is_formal_endpoint(&self) -> bool {
        self.formal_endpoint
    }

    /// `|θ(0) - nπ/2|` of the backward integration.
    pub fn center_defect(&self) -> f64 {
        self.center_defect
    }

    /// Order of the dense interpolant.
    pub fn interpolation_order(&self) -> usize {
        7
    }

    fn theta_right(&self, t: f64) -> f64 {
        if t >= self.x_n {
            return self.field.n as f64 * PI;
        }
        if t > self.t_start {
            return closed_form_tail(&self.field, &self.psi, t);
        }
        self.traj.eval(t)[0]
    }

    /// `θ(t)` for `|t| <= x_n`.
    pub fn theta(&self, t: f64) -> Result<f64> {
        if !(t.abs() <= self.x_n) {
            return Err(ProlateError::Domain(format!(
                "theta needs |t| <= x_n = {}, got {t}",
                self.x_n
            )));
        }
        Ok(if t >= 0.0 {
            self.theta_right(t)
        } else {
            self.field.n as f64 * PI - self.theta_right(-t)
        })
    }

    /// `θ'(t) = f + v sin 2θ` for `|t| < x_n`.
    pub fn theta_prime(&self, t: f64) -> Result<f64> {
        let th = self.theta(t)?;
        self.field.check(t)?;
        Ok(self.field.rhs(t, th))
    }

    /// Points `(t, θ(t))` at the step boundaries, ascending over `[-x_n, x_n]`.
    pub fn grid(&self) -> Vec<(f64, f64)> {
        let nf = self.field.n as f64 * PI;
        let mut right: Vec<(f64, f64)> = self
            .traj
            .steps()
            .iter()
            .map(|st| (st.x0, self.theta_right(st.x0)))
            .collect();
        right.push((0.0, self.traj.y_end[0]));
        if self.formal_endpoint {
            right.insert(0, (1.0, nf));
        }
        right.reverse();
        let mut out: Vec<(f64, f64)> = right
            .iter()
            .rev()
            .filter(|p| p.0 > 0.0)
            .map(|&(t, th)| (-t, nf - th))
            .collect();
        out.extend(right);
        out
    }

    /// `s(η)`, the inverse of `θ`, for `0 <= η <= nπ`.
    pub fn theta_inverse(&self, eta: f64) -> Result<f64> {
        let nf = self.field.n as f64 * PI;
        let slack = 1e-12 * nf.max(1.0);
        if !(eta >= -slack && eta <= nf + slack) {
            return Err(ProlateError::Domain(format!(
                "theta_inverse needs 0 <= eta <= {nf}, got {eta}"
            )));
        }
        let eta = eta.clamp(0.0, nf);
        if eta < 0.5 * nf {
            return Ok(-self.inverse_right(nf - eta));
        }
        Ok(self.inverse_right(eta))
    }

    /// Inverse on `[0, x_n]`, where `θ` runs over `[nπ/2, nπ]`.
    fn inverse_right(&self, eta: f64) -> f64 {
        let (mut lo, mut hi) = if eta >= self.theta_right(self.t_start) {
            (self.t_start, self.x_n)
        } else {
            let steps = self.traj.steps();
            // steps run from t_start down to 0, θ decreasing along the list
            let k = steps.partition_point(|st| st.eval(st.x1())[0] > eta);
            let k = k.min(steps.len() - 1);
            (steps[k].x1().max(0.0), steps[k].x0)
        };
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.theta_right(mid) < eta {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// `∫_a^b v(t) sin 2θ(t) dt` for `0 <= a < b <= x_n`.
    ///
    /// Gauss–Legendre panels of a quarter turn of `θ` each. When `b = 1`
    /// the substitution `t = 1 - u²` removes the `(1 - t)^{-1/2}` endpoint
    /// behaviour of the integrand.
    pub fn oscillatory_integral(&self, a: f64, b: f64) -> Result<f64> {
        if !(0.0 <= a && a <= b && b <= self.x_n) {
            return Err(ProlateError::Domain(format!(
                "oscillatory integral needs 0 <= a <= b <= x_n, got [{a}, {b}]"
            )));
        }
        if a == b {
            return Ok(0.0);
        }
        let turns = (self.theta_right(b) - self.theta_right(a)) / (0.25 * PI);
        let panels = turns.ceil().max(1.0) as usize * 2;
        let (gx, gw) = legendre::gauss_legendre(24);
        let integrand = |t: f64| self.field.v_raw(t) * (2.0 * self.theta_right(t)).sin();
        let mut total = 0.0;
        if b >= 1.0 {
            let umax = (1.0 - a).sqrt();
            for p in 0..panels {
                let (u0, u1) = (umax * p as f64 / panels as f64, umax * (p + 1) as f64 / panels as f64);
                let (mid, half) = (0.5 * (u0 + u1), 0.5 * (u1 - u0));
                for (x, w) in gx.iter().zip(&gw) {
                    let u = mid + half * x;
                    total += half * w * integrand(1.0 - u * u) * 2.0 * u;
                }
            }
        } else {
            for p in 0..panels {
                let (t0, t1) = (
                    a + (b - a) * p as f64 / panels as f64,
                    a + (b - a) * (p + 1) as f64 / panels as f64,
                );
                let (mid, half) = (0.5 * (t0 + t1), 0.5 * (t1 - t0));
                for (x, w) in gx.iter().zip(&gw) {
                    total += half * w * integrand(mid + half * x);
                }
            }
        }
        Ok(total)
    }
}

/// `θ = nπ - atan(√(p/q) ψ'/ψ)` between `t_n` and 1 in the Above regime.
fn closed_form_tail(field: &PhaseField, psi: &PswfFunction, t: f64) -> f64 {
    let p = (1.0 - t) * (1.0 + t);
    let q = field.chi - field.c * field.c * t * t;
    let jet = psi.jet(t);
    field.n as f64 * PI - ((p / q).sqrt() * jet.d1 / jet.value).atan()
}
