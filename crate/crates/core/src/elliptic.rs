//! Incomplete and complete elliptic integrals of the first and second kind
//! in Legendre form, computed through Carlson's symmetric integrals.
//!
//! `F(y, k) = ∫₀^y dt / √(1 - k² sin²t)` and
//! `E(y, k) = ∫₀^y √(1 - k² sin²t) dt`.
//!
//! The modulus may exceed 1 as long as `k sin y ≤ 1`, which keeps both
//! integrands real. The prolate brackets need that when `χ_n < c²`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{ProlateError, Result};

const ERRTOL_RF: f64 = 0.0008;
const ERRTOL_RD: f64 = 0.0008;

/// Carlson's `R_F(x, y, z)`; at most one argument may be zero.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> Result<f64> {
    if x < 0.0 || y < 0.0 || z < 0.0 || [x, y, z].iter().any(|v| !v.is_finite()) {
        return Err(ProlateError::Domain(format!("R_F({x}, {y}, {z})")));
    }
    if (x == 0.0) as u8 + (y == 0.0) as u8 + (z == 0.0) as u8 > 1 {
        return Err(ProlateError::Divergent);
    }
    let (mut x, mut y, mut z) = (x, y, z);
    let (ave, dx, dy, dz) = loop {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        let ave = (x + y + z) / 3.0;
        let (dx, dy, dz) = ((ave - x) / ave, (ave - y) / ave, (ave - z) / ave);
        if dx.abs().max(dy.abs()).max(dz.abs()) < ERRTOL_RF {
            break (ave, dx, dy, dz);
        }
    };
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    Ok((1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / ave.sqrt())
}

/// Carlson's `R_D(x, y, z)`; `z > 0` and at most one of `x`, `y` zero.
pub fn carlson_rd(x: f64, y: f64, z: f64) -> Result<f64> {
    if x < 0.0 || y < 0.0 || z <= 0.0 || [x, y, z].iter().any(|v| !v.is_finite()) {
        return Err(ProlateError::Domain(format!("R_D({x}, {y}, {z})")));
    }
    if x == 0.0 && y == 0.0 {
        return Err(ProlateError::Divergent);
    }
    const C1: f64 = 3.0 / 14.0;
    const C2: f64 = 1.0 / 6.0;
    const C3: f64 = 9.0 / 22.0;
    const C4: f64 = 3.0 / 26.0;
    const C5: f64 = 0.25 * C3;
    const C6: f64 = 1.5 * C4;
    let (mut x, mut y, mut z) = (x, y, z);
    let mut sum = 0.0;
    let mut fac = 1.0;
    let (ave, dx, dy, dz) = loop {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (z + lam));
        fac *= 0.25;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        let ave = 0.2 * (x + y + 3.0 * z);
        let (dx, dy, dz) = ((ave - x) / ave, (ave - y) / ave, (ave - z) / ave);
        if dx.abs().max(dy.abs()).max(dz.abs()) < ERRTOL_RD {
            break (ave, dx, dy, dz);
        }
    };
    let ea = dx * dy;
    let eb = dz * dz;
    let ec = ea - eb;
    let ed = ea - 6.0 * eb;
    let ee = ed + ec + ec;
    Ok(3.0 * sum
        + fac
            * (1.0
                + ed * (-C1 + C5 * ed - C6 * dz * ee)
                + dz * (C2 * ee + dz * (-C3 * ec + dz * C4 * ea)))
            / (ave * ave.sqrt()))
}

/// `(sin y, cos² y, 1 - k² sin² y)` after domain checks.
fn reduce(y: f64, k: f64) -> Result<(f64, f64, f64)> {
    if !(y.is_finite() && k.is_finite()) || y < 0.0 || y > FRAC_PI_2 || k < 0.0 {
        return Err(ProlateError::Domain(format!(
            "elliptic integral needs 0 <= y <= pi/2 and k >= 0, got y = {y}, k = {k}"
        )));
    }
    let s = y.sin();
    let ks = k * s;
    if ks > 1.0 + 8.0 * f64::EPSILON {
        return Err(ProlateError::Domain(format!(
            "k sin y = {ks} exceeds 1 (y = {y}, k = {k})"
        )));
    }
    // factored form avoids cancellation when k sin y is close to 1
    let delta = ((1.0 - ks) * (1.0 + ks)).max(0.0);
    let c = y.cos();
    // cos(pi/2) rounds to ~6e-17, not zero
    let c2 = if y == FRAC_PI_2 { 0.0 } else { c * c };
    Ok((s, c2, delta))
}

/// Incomplete integral of the first kind `F(y, k)`.
pub fn ellint_f(y: f64, k: f64) -> Result<f64> {
    let (s, c2, delta) = reduce(y, k)?;
    if s == 0.0 {
        return Ok(0.0);
    }
    Ok(s * carlson_rf(c2, delta, 1.0)?)
}

/// Incomplete integral of the second kind `E(y, k)`.
pub fn ellint_e(y: f64, k: f64) -> Result<f64> {
    let (s, c2, delta) = reduce(y, k)?;
    if s == 0.0 {
        return Ok(0.0);
    }
    if k == 1.0 || (delta == 0.0 && c2 == 0.0) {
        return Ok(s);
    }
    let kc2 = (1.0 - k) * (1.0 + k);
    if kc2 > 0.0 && delta < 0.5 {
        // all-positive form; the standard one cancels badly as k sin y -> 1
        let rf = carlson_rf(c2, delta, 1.0)?;
        let rd = carlson_rd(c2, 1.0, delta)?;
        let tail = if c2 == 0.0 { 0.0 } else { k * k * s * (c2 / delta).sqrt() };
        return Ok(kc2 * s * rf + k * k * kc2 * s * s * s * rd / 3.0 + tail);
    }
    let rf = carlson_rf(c2, delta, 1.0)?;
    let rd = carlson_rd(c2, delta, 1.0)?;
    Ok(s * rf - k * k * s * s * s * rd / 3.0)
}

/// Complete integral of the first kind, `F(π/2, k)`.
pub fn ellint_fc(k: f64) -> Result<f64> {
    if k > 1.0 {
        return Err(ProlateError::Domain(format!("complete integral needs k <= 1, got {k}")));
    }
    if k == 1.0 {
        return Err(ProlateError::Divergent);
    }
    ellint_f(FRAC_PI_2, k)
}

/// Complete integral of the second kind, `E(π/2, k)`.
pub fn ellint_ec(k: f64) -> Result<f64> {
    if k > 1.0 {
        return Err(ProlateError::Domain(format!("complete integral needs k <= 1, got {k}")));
    }
    ellint_e(FRAC_PI_2, k)
}
