//! Explicit inequalities on `χ_n`, `n`, the roots of `ψ_n` and `|ψ_n|`,
//! each evaluated against computed values.
//!
//! Every check produces a [`BoundReport`]. A strict inequality that fails
//! by less than [`INCONCLUSIVE_REL`] relative to the truth is reported as
//! [`Verdict::Inconclusive`] rather than a failure.

use std::f64::consts::{E, FRAC_PI_2, PI, SQRT_2};
use std::fmt;

use crate::elliptic::{ellint_e, ellint_ec, ellint_f, ellint_fc};
use crate::error::{ProlateError, Result};
use crate::prufer::PhaseField;
use crate::pswf::PswfFunction;
use crate::roots::{Regime, SpecialPoints};

/// Relative slack under which a violated strict inequality is inconclusive.
pub const INCONCLUSIVE_REL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    /// Violated by less than [`INCONCLUSIVE_REL`].
    Inconclusive,
    /// The hypotheses do not hold, so there is no claim to check.
    NotApplicable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "inconclusive",
            Verdict::NotApplicable => "n/a",
        }
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, Verdict::Fail)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One bound checked against one computed value.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub name: &'static str,
    pub c: f64,
    pub n: usize,
    /// Extra input such as `α` or a root index.
    pub aux: Option<f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub truth: f64,
    /// `(truth - lower) / |truth|`.
    pub rel_err_lower: Option<f64>,
    /// `(upper - truth) / |truth|`.
    pub rel_err_upper: Option<f64>,
    pub strict: bool,
    /// Raw outcome of the comparison, with no slack.
    pub holds: bool,
    pub verdict: Verdict,
}

/// Builder input for [`BoundReport::judge`].
#[derive(Debug, Clone, Copy)]
pub struct Claim {
    pub name: &'static str,
    pub c: f64,
    pub n: usize,
    pub aux: Option<f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub truth: f64,
    pub strict: bool,
    pub applicable: bool,
}

impl Claim {
    pub fn new(name: &'static str, c: f64, n: usize, truth: f64) -> Self {
        Self {
            name,
            c,
            n,
            aux: None,
            lower: None,
            upper: None,
            truth,
            strict: true,
            applicable: true,
        }
    }

    pub fn lower(mut self, v: f64) -> Self {
        self.lower = Some(v);
        self
    }

    pub fn upper(mut self, v: f64) -> Self {
        self.upper = Some(v);
        self
    }

    pub fn aux(mut self, v: f64) -> Self {
        self.aux = Some(v);
        self
    }

    pub fn non_strict(mut self) -> Self {
        self.strict = false;
        self
    }

    pub fn applicable(mut self, yes: bool) -> Self {
        self.applicable = yes;
        self
    }

    pub fn judge(self) -> BoundReport {
        BoundReport::judge(self)
    }
}

impl BoundReport {
    pub fn judge(claim: Claim) -> Self {
        let Claim {
            name,
            c,
            n,
            aux,
            lower,
            upper,
            truth,
            strict,
            applicable,
        } = claim;
        let scale = truth.abs().max(f64::MIN_POSITIVE);
        let cmp = |a: f64, b: f64| if strict { a < b } else { a <= b };
        let lo_ok = lower.is_none_or(|l| cmp(l, truth));
        let hi_ok = upper.is_none_or(|u| cmp(truth, u));
        let holds = lo_ok && hi_ok;
        let near = |b: Option<f64>| b.is_none_or(|b| (b - truth).abs() <= INCONCLUSIVE_REL * scale);
        let verdict = if !applicable {
            Verdict::NotApplicable
        } else if holds {
            Verdict::Pass
        } else if (lo_ok || near(lower)) && (hi_ok || near(upper)) {
            Verdict::Inconclusive
        } else {
            Verdict::Fail
        };
        Self {
            name,
            c,
            n,
            aux,
            lower,
            upper,
            truth,
            rel_err_lower: lower.map(|l| (truth - l) / scale),
            rel_err_upper: upper.map(|u| (u - truth) / scale),
            strict,
            holds,
            verdict,
        }
    }
}

/// `(n(n+1), n(n+1) + c²)`.
pub fn crude_chi_bracket(n: usize, c: f64) -> (f64, f64) {
    let nn = (n * (n + 1)) as f64;
    (nn, nn + c * c)
}

/// Regime predicted from `n` and `c` alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeClass {
    Below,
    Above,
    /// `2c/π - 1 < n < 2c/π`; either sign of `χ_n - c²` is possible.
    Ambiguous,
}

impl RegimeClass {
    pub fn agrees_with(&self, r: Regime) -> bool {
        match self {
            RegimeClass::Below => r == Regime::Below,
            RegimeClass::Above => r == Regime::Above,
            RegimeClass::Ambiguous => true,
        }
    }
}

pub fn regime_classify(n: usize, c: f64) -> RegimeClass {
    let m = 2.0 * c / PI;
    let n = n as f64;
    if n >= m {
        RegimeClass::Above
    } else if n <= m - 1.0 {
        RegimeClass::Below
    } else {
        RegimeClass::Ambiguous
    }
}

/// `(2/π) √χ · E(asin(endpoint), c/√χ)`.
///
/// Pass `endpoint = 1` when `χ_n > c²` and the largest root of `ψ_n'`
/// when `χ_n < c²`.
pub fn count_above(c: f64, chi: f64, endpoint: f64) -> Result<f64> {
    let sq = chi.sqrt();
    let k = c / sq;
    let lim = (sq / c).min(1.0);
    if !(0.0..=lim * (1.0 + 1e-14)).contains(&endpoint) {
        return Err(ProlateError::Domain(format!(
            "endpoint {endpoint} outside [0, {lim}]"
        )));
    }
    let e = if endpoint >= 1.0 {
        ellint_ec(k)?
    } else {
        ellint_e(endpoint.min(lim).asin(), k)?
    };
    Ok(2.0 / PI * sq * e)
}

/// `1 + (2/π) √χ · E(asin(t_n), c/√χ)`.
pub fn count_below(c: f64, chi: f64, t_n: f64) -> Result<f64> {
    let sq = chi.sqrt();
    if !(0.0..1.0).contains(&t_n) {
        return Err(ProlateError::Domain(format!("t_n = {t_n} outside [0, 1)")));
    }
    Ok(1.0 + 2.0 / PI * sq * ellint_e(t_n.asin(), c / sq)?)
}

/// `(2/π) ∫_{t_n}^1 √((χ - c²t²)/(1 - t²)) dt` for `χ > c²`.
pub fn tail_count(c: f64, chi: f64, t_n: f64) -> Result<f64> {
    let sq = chi.sqrt();
    let k = c / sq;
    if k >= 1.0 {
        return Err(ProlateError::Regime(format!("tail count needs chi > c^2, got chi = {chi}, c = {c}")));
    }
    Ok(2.0 / PI * sq * (ellint_ec(k)? - ellint_e(t_n.asin(), k)?))
}

/// Both counting functionals for one `ψ_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Counts {
    pub c: f64,
    pub n: usize,
    pub chi: f64,
    pub above: f64,
    pub below: f64,
}

impl Counts {
    pub fn from_points(sp: &SpecialPoints) -> Result<Self> {
        let endpoint = match sp.regime {
            Regime::Above => 1.0,
            Regime::Below => sp.x_n,
        };
        Ok(Self {
            c: sp.c,
            n: sp.n,
            chi: sp.chi,
            above: count_above(sp.c, sp.chi, endpoint)?,
            below: count_below(sp.c, sp.chi, sp.t_max())?,
        })
    }

    /// `(Above(n) - n) / n`.
    pub fn rel_above(&self) -> f64 {
        (self.above - self.n as f64) / self.n as f64
    }

    /// `(n - Below(n)) / n`.
    pub fn rel_below(&self) -> f64 {
        (self.n as f64 - self.below) / self.n as f64
    }

    /// `Below(n) < n < Above(n)`; the lower side is `≤` for `n = 1` where
    /// `Below(1) = 1` exactly.
    pub fn sandwich(&self) -> BoundReport {
        let mut claim = Claim::new("count_sandwich", self.c, self.n, self.n as f64)
            .lower(self.below)
            .upper(self.above);
        if self.n < 2 {
            claim = claim.non_strict();
        }
        claim.judge()
    }
}

/// `(π(n + 1)/2)²`.
pub fn chi_square_upper(n: usize) -> f64 {
    let v = FRAC_PI_2 * (n + 1) as f64;
    v * v
}

/// `f(x) = -1 + ∫₀^{π/2} √(x + cos²θ) dθ` and its inverse `H`.
#[derive(Debug, Clone, Copy, Default)]
pub struct HFunction;

impl HFunction {
    pub fn f(&self, x: f64) -> f64 {
        h_map(x)
    }

    pub fn inverse(&self, y: f64) -> f64 {
        h_inverse(y)
    }

    /// `(x, f(x))` pairs on the given abscissae.
    pub fn tabulate(&self, xs: &[f64]) -> Vec<(f64, f64)> {
        xs.iter().map(|&x| (x, h_map(x))).collect()
    }
}

/// `f(x) = -1 + √(1 + x) · Ec(1/√(1 + x))`.
///
/// For `-1 <= x < 0` the integral runs only over the range where
/// `x + cos²θ >= 0`, which continues `f` monotonically down to
/// `f(-1) = -1`. Below `-1` the result is NaN.
pub fn h_map(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !(x >= -1.0) {
        return f64::NAN;
    }
    let r = (1.0 + x).sqrt();
    if r == 0.0 {
        return -1.0;
    }
    let e = if x > 0.0 {
        ellint_ec(1.0 / r)
    } else {
        // modulus 1/r > 1 with sin y = r, so k sin y = 1
        ellint_e(r.min(1.0).asin(), 1.0 / r)
    };
    -1.0 + r * e.unwrap_or(f64::NAN)
}

/// `f'(x) = ½ ∫ dθ / √(x + cos²θ)` over the same range as [`h_map`].
pub fn h_map_derivative(x: f64) -> f64 {
    if x == 0.0 {
        return f64::INFINITY;
    }
    if !(x > -1.0) {
        return f64::NAN;
    }
    let r = (1.0 + x).sqrt();
    let k = if x > 0.0 {
        ellint_fc(1.0 / r)
    } else {
        ellint_f(r.min(1.0).asin(), 1.0 / r)
    };
    k.map_or(f64::INFINITY, |k| 0.5 * k / r)
}

/// `H(y)`, the inverse of [`h_map`], for `y >= -1`.
pub fn h_inverse(y: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    if !(y >= -1.0) {
        return f64::NAN;
    }
    let (mut lo, mut hi) = if y > 0.0 { (0.0, y.max(1.0)) } else { (-1.0, 0.0) };
    while h_map(hi) < y {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..2000 {
        if hi - lo <= 1e-14 * hi.abs().max(lo.abs()) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if h_map(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..2 {
        let d = h_map_derivative(x);
        if d.is_finite() && d > 0.0 {
            let next = x - (h_map(x) - y) / d;
            if next >= -1.0 && next.signum() == x.signum() {
                x = next;
            }
        }
    }
    x
}

/// Argument `(s/4) log(16e/s)` for which `s <= H(·)` on `0 <= s <= 5`.
pub fn h_lower_argument(s: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    0.25 * s * (16.0 * E / s).ln()
}

/// `U1..U3`, `L1..L3` against `χ_n`.
pub fn chi_bounds_suite(n: usize, c: f64, chi: f64) -> Vec<BoundReport> {
    let c2 = c * c;
    let above_line = n as f64 > 2.0 * c / PI;
    let (l1, u1) = crude_chi_bracket(n, c);
    let x = PI * n as f64 / (2.0 * c) - 1.0;
    // values below the line come from the continued H and carry no claim
    let (l3, u3) = (c2 * (1.0 + h_inverse(x)), c2 * (1.0 + h_inverse(x + 1.5 * PI / c)));
    vec![
        Claim::new("U1", c, n, chi).upper(u1).judge(),
        Claim::new("U2", c, n, chi)
            .upper(chi_square_upper(n))
            .applicable(chi > c2)
            .judge(),
        Claim::new("U3", c, n, chi).upper(u3).applicable(above_line).judge(),
        Claim::new("L1", c, n, chi).lower(l1).judge(),
        Claim::new("L2", c, n, chi)
            .lower(c2)
            .applicable(n as f64 >= 2.0 * c / PI)
            .judge(),
        Claim::new("L3", c, n, chi).lower(l3).applicable(above_line).judge(),
    ]
}

/// `H(nπ/2c - 1) < (χ_n - c²)/c² < H(nπ/2c - 1 + 3π/2c)` for `n > 2c/π`.
pub fn h_bracket(n: usize, c: f64, chi: f64) -> BoundReport {
    let x = PI * n as f64 / (2.0 * c) - 1.0;
    let ok = n as f64 > 2.0 * c / PI;
    let (lo, hi) = (h_inverse(x), h_inverse(x + 1.5 * PI / c));
    Claim::new("h_bracket", c, n, (chi - c * c) / (c * c))
        .lower(lo)
        .upper(hi)
        .applicable(ok)
        .judge()
}

/// Smallest `n` value that `n` must exceed for `χ_n > c² + αc`.
pub fn alpha_threshold(c: f64, alpha: f64) -> f64 {
    2.0 * c / PI + alpha / (2.0 * PI) * (16.0 * E * c / alpha).ln()
}

/// `c² + αc` when `0 < α < 5c` and `n` is past [`alpha_threshold`].
pub fn chi_lower_alpha(n: usize, c: f64, alpha: f64) -> Option<f64> {
    if !(alpha > 0.0 && alpha < 5.0 * c) || n < 2 || n as f64 <= alpha_threshold(c, alpha) {
        return None;
    }
    Some(c * c + alpha * c)
}

/// Brackets on `1 - t_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TnBracket {
    pub lower: f64,
    pub upper: f64,
    /// `(π²/(8(1+√2)), 2π²) / (χ_n - c²)` when its hypotheses hold.
    pub simple: Option<(f64, f64)>,
}

/// Lower edge of `ξ(n) = (1 - t_n)(χ_n - c²)` from the simple bracket.
pub const XI_LOWER: f64 = PI * PI / (8.0 * (1.0 + SQRT_2));
/// Upper edge of `ξ(n)`.
pub const XI_UPPER: f64 = 2.0 * PI * PI;

/// True when `c > 10/π` and `n > 2c/π + 1 + log(c)/4`.
pub fn tn_simple_applies(n: usize, c: f64) -> bool {
    c > 10.0 / PI && n >= 2 && n as f64 > 2.0 * c / PI + 1.0 + 0.25 * c.ln()
}

pub fn tn_bracket(n: usize, c: f64, chi: f64) -> Result<TnBracket> {
    let d = chi - c * c;
    if d <= 0.0 {
        return Err(ProlateError::Regime(format!(
            "bracket on 1 - t_n needs chi > c^2 (c = {c}, n = {n}, chi = {chi})"
        )));
    }
    let lower = PI * PI / 8.0 / (d + d.hypot(0.5 * PI * c));
    let upper = 4.0 * PI * PI / (d + d.hypot(4.0 * PI * c));
    let simple = tn_simple_applies(n, c).then(|| (XI_LOWER / d, XI_UPPER / d));
    Ok(TnBracket { lower, upper, simple })
}

/// Bracket on the gap `t_{i+1} - t_i` for a 1-based `i` with
/// `0 <= t_i < t_n`: `(π/(f(t_{i+1}) + v(t_{i+1})/2), π/f(t_i))`.
pub fn spacing_bracket(sp: &SpecialPoints, i: usize) -> Result<(f64, f64)> {
    if sp.regime != Regime::Above {
        return Err(ProlateError::Regime(format!(
            "spacing bracket needs chi > c^2 (c = {}, n = {})",
            sp.c, sp.n
        )));
    }
    if i == 0 || i >= sp.n || sp.t[i - 1] < 0.0 {
        return Err(ProlateError::InvalidArgument(format!(
            "spacing index {i} outside the nonnegative half of 1..{}",
            sp.n
        )));
    }
    let field = PhaseField::new(sp.c, sp.n, sp.chi)?;
    let (ti, tj) = (sp.t[i - 1], sp.t[i]);
    let lower = PI / (field.f(tj)? + 0.5 * field.v(tj)?);
    let upper = PI / field.f(ti)?;
    Ok((lower, upper))
}

/// Spacing brackets for every admissible `i`, plus the coarse
/// `t_{i+1} - t_i < π/√(χ_n + 1)`.
pub fn spacing_suite(sp: &SpecialPoints) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    let coarse = PI / (sp.chi + 1.0).sqrt();
    for i in 1..sp.n {
        if sp.t[i - 1] < 0.0 {
            continue;
        }
        let gap = sp.t[i] - sp.t[i - 1];
        let (lo, hi) = spacing_bracket(sp, i)?;
        out.push(Claim::new("spacing", sp.c, sp.n, gap).aux(i as f64).lower(lo).upper(hi).judge());
        out.push(Claim::new("spacing_coarse", sp.c, sp.n, gap).aux(i as f64).upper(coarse).judge());
    }
    Ok(out)
}

/// Bounds on `ψ_n(1)`, `ψ_n(0)` and `ψ_n'(0)`.
pub fn endpoint_bounds(f: &PswfFunction) -> Vec<BoundReport> {
    let (c, n, chi) = (f.c(), f.n(), f.chi());
    let above = chi > c * c;
    let p1 = f.endpoint_value();
    let p1sq = p1 * p1;
    let mut out = vec![
        Claim::new("psi1_sq_lower", c, n, p1sq).lower(0.5).applicable(above).judge(),
        Claim::new("psi1_sq_upper", c, n, p1sq).upper(n as f64 + 0.5).judge(),
    ];
    let nf = n as f64;
    if n % 2 == 0 {
        let truth = 1.0 / f.psi(0.0).abs();
        out.push(
            Claim::new("inv_psi0", c, n, truth)
                .upper(4.0 * (nf * chi / (c * c)).sqrt())
                .non_strict()
                .applicable(above && n >= 1)
                .judge(),
        );
    } else {
        let truth = 1.0 / f.dpsi(0.0).abs();
        out.push(
            Claim::new("inv_dpsi0", c, n, truth)
                .upper(4.0 * (nf / (c * c)).sqrt())
                .non_strict()
                .applicable(above)
                .judge(),
        );
    }
    out
}

/// `|ψ_n|` at the extremum points strictly increases with `|x|`, and in
/// the Above regime stays below `|ψ_n(1)|`.
pub fn extrema_checks(f: &PswfFunction, sp: &SpecialPoints) -> Vec<BoundReport> {
    let (c, n) = (f.c(), f.n());
    let mut pts: Vec<f64> = sp.dpsi_roots().into_iter().filter(|&x| x >= 0.0).collect();
    pts.sort_by(f64::total_cmp);
    let vals: Vec<f64> = pts.iter().map(|&x| f.psi(x).abs()).collect();
    let mut out = Vec::new();
    for (k, w) in vals.windows(2).enumerate() {
        out.push(Claim::new("extrema_increasing", c, n, w[1]).aux(pts[k + 1]).lower(w[0]).judge());
    }
    if let Some(&top) = vals.last() {
        out.push(
            Claim::new("extrema_below_endpoint", c, n, top)
                .upper(f.endpoint_value().abs())
                .applicable(sp.regime == Regime::Above)
                .judge(),
        );
    }
    out
}

/// `Q(t) = ψ² + (1 - t²)ψ'²/(χ - c²t²)`.
pub fn q_growth(f: &PswfFunction, t: f64) -> f64 {
    let j = f.jet(t);
    let (c, chi) = (f.c(), f.chi());
    j.value * j.value + (1.0 - t * t) * j.d1 * j.d1 / (chi - c * c * t * t)
}

/// `Q̃(t) = (1 - t²)((χ - c²t²)ψ² + (1 - t²)ψ'²)`.
pub fn q_tilde(f: &PswfFunction, t: f64) -> f64 {
    let j = f.jet(t);
    let (c, chi) = (f.c(), f.chi());
    let p = 1.0 - t * t;
    p * ((chi - c * c * t * t) * j.value * j.value + p * j.d1 * j.d1)
}

/// `Q` increasing and `Q̃` decreasing on a grid of `samples` interior
/// points of `(0, min(√χ/c, 1))`. One report per function, with the
/// worst step as the truth.
pub fn q_monotonicity(f: &PswfFunction, samples: usize) -> [BoundReport; 2] {
    let lim = f.turning_point().min(1.0);
    let ts: Vec<f64> = (1..=samples).map(|k| lim * k as f64 / (samples + 1) as f64).collect();
    let q: Vec<f64> = ts.iter().map(|&t| q_growth(f, t)).collect();
    let qt: Vec<f64> = ts.iter().map(|&t| q_tilde(f, t)).collect();
    // smallest relative step in the claimed direction
    let worst = |v: &[f64], sign: f64| {
        v.windows(2)
            .map(|w| sign * (w[1] - w[0]) / w[0].abs().max(w[1].abs()))
            .fold(f64::INFINITY, f64::min)
    };
    let (c, n) = (f.c(), f.n());
    // a zero step is one rounding unit away from either direction
    let slack = |w: f64| Claim::new("", c, n, 1.0).lower(1.0 - w).judge().verdict;
    let mk = |name, w: f64| {
        let mut r = Claim::new(name, c, n, w).lower(0.0).aux(samples as f64).judge();
        if r.verdict == Verdict::Fail && slack(w) != Verdict::Fail {
            r.verdict = Verdict::Inconclusive;
        }
        r
    };
    [mk("q_increasing", worst(&q, 1.0)), mk("q_tilde_decreasing", worst(&qt, -1.0))]
}

/// `Q_n(t) = (χ - c²t²)/(1 - t²) + 1/(1 - t²)²`.
pub fn transformed_q(c: f64, chi: f64, t: f64) -> f64 {
    let p = (1.0 - t) * (1.0 + t);
    (chi - c * c * t * t) / p + 1.0 / (p * p)
}

/// `Ψ'' + Q_n Ψ` with `Ψ = ψ_n √(1 - t²)`, `|t| < 1`.
pub fn transformed_ode_residual(f: &PswfFunction, t: f64) -> Result<f64> {
    if t.abs() >= 1.0 {
        return Err(ProlateError::Domain(format!("transformed equation needs |t| < 1, got {t}")));
    }
    let j = f.jet(t);
    let s = ((1.0 - t) * (1.0 + t)).sqrt();
    let ds = -t / s;
    let d2s = -1.0 / (s * s * s);
    let big = j.value * s;
    let big2 = j.d2 * s + 2.0 * j.d1 * ds + j.value * d2s;
    Ok(big2 + transformed_q(f.c(), f.chi(), t) * big)
}

/// Everything checkable for one `ψ_n`, `n >= 2`.
pub fn function_suite(f: &PswfFunction, sp: &SpecialPoints) -> Result<Vec<BoundReport>> {
    let (c, n, chi) = (f.c(), f.n(), sp.chi);
    let mut out = Vec::new();
    let (lo, hi) = crude_chi_bracket(n, c);
    out.push(Claim::new("crude", c, n, chi).lower(lo).upper(hi).judge());
    let cls = regime_classify(n, c);
    out.push(
        Claim::new("regime", c, n, if cls.agrees_with(sp.regime) { 1.0 } else { -1.0 })
            .lower(0.0)
            .judge(),
    );
    let counts = Counts::from_points(sp)?;
    out.push(counts.sandwich());
    if sp.regime == Regime::Above {
        out.push(Claim::new("above_minus_n", c, n, counts.above - n as f64).upper(3.0).judge());
        out.push(Claim::new("tail_count", c, n, tail_count(c, chi, sp.t_max())?).upper(4.0).judge());
        let tb = tn_bracket(n, c, chi)?;
        let gap = 1.0 - sp.t_max();
        out.push(Claim::new("tn_bracket", c, n, gap).lower(tb.lower).upper(tb.upper).judge());
        if let Some((l, u)) = tb.simple {
            out.push(Claim::new("tn_simple", c, n, gap).lower(l).upper(u).judge());
        }
        out.extend(spacing_suite(sp)?);
    }
    out.extend(chi_bounds_suite(n, c, chi));
    out.push(h_bracket(n, c, chi));
    out.extend(endpoint_bounds(f));
    out.extend(extrema_checks(f, sp));
    out.extend(q_monotonicity(f, 64));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pswf::{ProlateContext, ProlateSpectrum};
    use crate::roots::special_points;

    #[test]
    fn judge_semantics() {
        let r = Claim::new("x", 1.0, 2, 1.0).lower(0.5).upper(2.0).judge();
        assert_eq!(r.verdict, Verdict::Pass);
        assert_eq!(r.rel_err_lower, Some(0.5));
        let r = Claim::new("x", 1.0, 2, 1.0).upper(1.0).judge();
        assert!(!r.holds);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(Claim::new("x", 1.0, 2, 1.0).upper(1.0).non_strict().judge().verdict, Verdict::Pass);
        assert_eq!(Claim::new("x", 1.0, 2, 1.0).upper(0.9).judge().verdict, Verdict::Fail);
        let r = Claim::new("x", 1.0, 2, 1.0).upper(0.9).applicable(false).judge();
        assert_eq!(r.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn crude_and_regime() {
        assert_eq!(crude_chi_bracket(6, 10.0), (42.0, 142.0));
        assert_eq!(regime_classify(64, 100.0), RegimeClass::Above);
        assert_eq!(regime_classify(59, 100.0), RegimeClass::Below);
        // 2c/π ≈ 6.366 for c = 10; only n = 6 falls in (5.366, 6.366)
        assert_eq!(regime_classify(6, 10.0), RegimeClass::Ambiguous);
        assert_eq!(regime_classify(5, 10.0), RegimeClass::Below);
        assert_eq!(regime_classify(7, 10.0), RegimeClass::Above);
    }

    #[test]
    fn h_pair() {
        assert_eq!(h_map(0.0), 0.0);
        assert_eq!(h_inverse(0.0), 0.0);
        for y in [1e-6, 1e-3, 0.05, 0.3, 1.0, 4.0, 30.0] {
            let x = h_inverse(y);
            assert!((h_map(x) - y).abs() <= 1e-12 * y.max(1.0), "y = {y}");
        }
        let mut prev = 0.0;
        for k in 1..50 {
            let v = h_map(0.1 * k as f64);
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn continued_h_below_zero() {
        assert_eq!(h_map(-1.0), -1.0);
        let mut prev = -1.0;
        for k in 1..=40 {
            let x = -1.0 + 0.025 * k as f64;
            let v = h_map(x);
            assert!(v > prev, "x = {x}");
            prev = v;
        }
        for y in [-0.9, -0.3, -0.01, -1e-4] {
            let x = h_inverse(y);
            assert!((h_map(x) - y).abs() < 1e-12, "y = {y}");
        }
        // integrand cut where x + cos²θ turns negative
        let x = -0.36f64;
        let top = (-x).sqrt().acos();
        let m = 400_000;
        let h = top / m as f64;
        let q: f64 = (0..m)
            .map(|k| (x + ((k as f64 + 0.5) * h).cos().powi(2)).sqrt())
            .sum::<f64>()
            * h;
        assert!((h_map(x) - (q - 1.0)).abs() < 1e-8);
    }

    #[test]
    fn h_map_matches_midpoint_quadrature() {
        for x in [0.01, 0.5, 2.0] {
            let m = 200_000;
            let h = FRAC_PI_2 / m as f64;
            let q: f64 = (0..m)
                .map(|k| {
                    let th = (k as f64 + 0.5) * h;
                    (x + th.cos().powi(2)).sqrt()
                })
                .sum::<f64>()
                * h;
            assert!((h_map(x) - (q - 1.0)).abs() < 1e-9, "x = {x}");
        }
    }

    #[test]
    fn h_derivative_matches_difference() {
        for x in [0.05, 1.0, 7.0] {
            let d = 1e-6 * x;
            let fd = (h_map(x + d) - h_map(x - d)) / (2.0 * d);
            assert!((h_map_derivative(x) - fd).abs() < 1e-6 * fd);
        }
    }

    #[test]
    fn h_lower_bound_holds() {
        for s in [0.01, 0.1, 1.0, 5.0] {
            assert!(s <= h_inverse(h_lower_argument(s)));
        }
        let mut worst: f64 = 0.0;
        for k in 1..=500 {
            let s = 0.01 * k as f64;
            let h = h_inverse(h_lower_argument(s));
            worst = worst.max((h - s) / h);
        }
        assert!(worst < 0.07, "worst {worst}");
    }

    #[test]
    fn counts_table_rows() {
        let s = ProlateSpectrum::build(&ProlateContext::new(10.0, 6).unwrap()).unwrap();
        let sp = special_points(s.function(6)).unwrap();
        let k = Counts::from_points(&sp).unwrap();
        assert!((k.above - 6.5036).abs() < 0.5e-4);
        assert!((k.below - 5.9568).abs() < 0.5e-4);
        assert_eq!(k.sandwich().verdict, Verdict::Pass);
    }

    #[test]
    fn tn_brackets_are_ordered() {
        for (c, chi) in [(10.0, 150.0), (100.0, 1.2e4), (1000.0, 1.0001e6)] {
            let b = tn_bracket(40, c, chi).unwrap();
            assert!(b.lower < b.upper);
        }
        assert!(tn_bracket(3, 10.0, 90.0).is_err());
    }

    #[test]
    fn alpha_guard() {
        assert!(chi_lower_alpha(10, 100.0, 1.0).is_none());
        assert!(chi_lower_alpha(300, 100.0, -1.0).is_none());
        assert!(chi_lower_alpha(300, 100.0, 600.0).is_none());
        assert_eq!(chi_lower_alpha(300, 100.0, 1.0), Some(1e4 + 100.0));
    }

    #[test]
    fn transformed_equation() {
        let s = ProlateSpectrum::build(&ProlateContext::new(10.0, 10).unwrap()).unwrap();
        let f = s.function(10);
        for t in [0.0, 0.5, -0.5] {
            let q = transformed_q(10.0, f.chi(), t);
            assert!(transformed_ode_residual(f, t).unwrap().abs() < 1e-7 * q);
            // equality at the centre, strict elsewhere
            assert!(q > f.chi() + 1.0 || t == 0.0 && q == f.chi() + 1.0);
        }
    }

    #[test]
    fn full_suite_has_no_failures() {
        let s = ProlateSpectrum::build(&ProlateContext::new(20.0, 20).unwrap()).unwrap();
        for n in 2..=20 {
            let f = s.function(n);
            let sp = special_points(f).unwrap();
            for r in function_suite(f, &sp).unwrap() {
                assert!(!r.verdict.is_failure(), "{r:?}");
            }
        }
    }
}
