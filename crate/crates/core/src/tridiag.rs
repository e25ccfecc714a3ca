//! Symmetric tridiagonal eigenproblems.
//!
//! Eigenvalues come from implicit QL with Wilkinson shifts, eigenvectors from
//! inverse iteration against a pivoted LU factorization.

use crate::error::{ProlateError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    /// `off[i]` couples rows `i` and `i + 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(ProlateError::InvalidArgument("empty matrix".into()));
        }
        if off.len() + 1 != diag.len() {
            return Err(ProlateError::InvalidArgument(format!(
                "off-diagonal length {} does not match dimension {}",
                off.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(&off).any(|x| !x.is_finite()) {
            return Err(ProlateError::InvalidArgument("non-finite matrix entry".into()));
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Max absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s += self.off[i - 1].abs();
                }
                if i + 1 < n {
                    s += self.off[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// `v^T A v / v^T v`.
    pub fn rayleigh_quotient(&self, v: &[f64]) -> f64 {
        let av = self.matvec(v);
        let num: f64 = v.iter().zip(&av).map(|(a, b)| a * b).sum();
        let den: f64 = v.iter().map(|a| a * a).sum();
        num / den
    }

    /// All eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let n = self.dim();
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        e.push(0.0);
        for l in 0..n {
            let mut iter = 0;
            loop {
                let mut m = l;
                while m + 1 < n {
                    let dd = d[m].abs() + d[m + 1].abs();
                    if e[m].abs() <= f64::EPSILON * dd {
                        break;
                    }
                    m += 1;
                }
                if m == l {
                    break;
                }
                iter += 1;
                if iter > 60 {
                    return Err(ProlateError::EigenSolver(format!(
                        "QL iteration stalled at index {l} of {n}"
                    )));
                }
                let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                let mut r = g.hypot(1.0);
                g = d[m] - d[l] + e[l] / (g + r.copysign(g));
                let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
                let mut underflow = false;
                let mut i = m;
                while i > l {
                    i -= 1;
                    let f = s * e[i];
                    let b = c * e[i];
                    r = f.hypot(g);
                    e[i + 1] = r;
                    if r == 0.0 {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if underflow {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        }
        d.sort_by(f64::total_cmp);
        Ok(d)
    }

    /// Number of eigenvalues strictly below `x` (Sturm count).
    pub fn count_below(&self, x: f64) -> usize {
        let tiny = f64::EPSILON * self.norm_inf().max(f64::MIN_POSITIVE);
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0..self.dim() {
            if i > 0 {
                q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / q;
            }
            if q == 0.0 {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection on the Sturm
    /// count. Cheaper than a full QL sweep when only a few are needed.
    pub fn eigenvalue_by_index(&self, k: usize) -> Result<f64> {
        let n = self.dim();
        if k >= n {
            return Err(ProlateError::InvalidArgument(format!(
                "eigenvalue index {k} out of range for dimension {n}"
            )));
        }
        let r = self.norm_inf();
        let (mut lo, mut hi) = (-r - 1.0, r + 1.0);
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Unit eigenvector for an (approximate) eigenvalue by inverse iteration.
    pub fn eigenvector(&self, lambda: f64, iterations: usize) -> Vec<f64> {
        let n = self.dim();
        if n == 1 {
            return vec![1.0];
        }
        let lu = ShiftedLu::factor(self, lambda);
        // deterministic, non-degenerate start
        let mut x: Vec<f64> = (0..n)
            .map(|i| 0.5 + ((i as f64 + 1.0) * 0.754_877_666_246_692_7).fract())
            .collect();
        for _ in 0..iterations.max(1) {
            lu.solve(&mut x);
            let norm = x.iter().map(|a| a * a).sum::<f64>().sqrt();
            x.iter_mut().for_each(|a| *a /= norm);
        }
        x
    }
}

/// LU factorization with partial pivoting of `A - lambda I`.
struct ShiftedLu {
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    mult: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(a: &SymTridiagonal, lambda: f64) -> Self {
        let n = a.dim();
        let tiny = f64::EPSILON * a.norm_inf().max(f64::MIN_POSITIVE);
        let mut b: Vec<f64> = a.diag.iter().map(|d| d - lambda).collect();
        let mut c = a.off.clone();
        let sub = &a.off;
        let mut u2 = vec![0.0; n.saturating_sub(2)];
        let mut mult = vec![0.0; n - 1];
        let mut swapped = vec![false; n - 1];
        for i in 0..n - 1 {
            if b[i].abs() >= sub[i].abs() {
                if b[i] == 0.0 {
                    b[i] = tiny;
                }
                let f = sub[i] / b[i];
                mult[i] = f;
                b[i + 1] -= f * c[i];
            } else {
                let f = b[i] / sub[i];
                b[i] = sub[i];
                mult[i] = f;
                let tmp = c[i];
                c[i] = b[i + 1];
                b[i + 1] = tmp - f * b[i + 1];
                if i + 2 < n {
                    u2[i] = c[i + 1];
                    c[i + 1] = -f * c[i + 1];
                }
                swapped[i] = true;
            }
        }
        for v in b.iter_mut() {
            if v.abs() < tiny {
                *v = tiny.copysign(*v);
            }
        }
        Self {
            u0: b,
            u1: c,
            u2,
            mult,
            swapped,
        }
    }

    fn solve(&self, x: &mut [f64]) {
        let n = x.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                x.swap(i, i + 1);
            }
            x[i + 1] -= self.mult[i] * x[i];
        }
        x[n - 1] /= self.u0[n - 1];
        x[n - 2] = (x[n - 2] - self.u1[n - 2] * x[n - 1]) / self.u0[n - 2];
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (x[i] - self.u1[i] * x[i + 1] - self.u2[i] * x[i + 2]) / self.u0[i];
        }
    }
}
