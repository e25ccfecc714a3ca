//! Legendre polynomials: three-term recurrences, series evaluation in the
//! orthonormal basis `P̄_k = sqrt(k + 1/2) P_k`, and Gauss–Legendre rules.

use std::f64::consts::PI;

/// Value, first and second derivative of a function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

/// Evaluates `sum_j coeffs[j] * P̄_{2j + parity}(t)` together with its first
/// two derivatives.
///
/// The derivatives use `P'_{k+1} = P'_{k-1} + (2k+1) P_k` and the same
/// identity one order up, so no differential equation is involved.
pub fn eval_parity_series(coeffs: &[f64], parity: usize, t: f64) -> Jet {
    let mut out = Jet {
        value: 0.0,
        d1: 0.0,
        d2: 0.0,
    };
    if coeffs.is_empty() {
        return out;
    }
    let max_degree = 2 * (coeffs.len() - 1) + parity;

    // (P_{k-1}, P_k) and derivatives, k starting at 0.
    let (mut p_prev, mut p) = (0.0_f64, 1.0_f64);
    let (mut dp_prev, mut dp) = (0.0_f64, 0.0_f64);
    let (mut ddp_prev, mut ddp) = (0.0_f64, 0.0_f64);
    for k in 0..=max_degree {
        if k % 2 == parity {
            let w = coeffs[(k - parity) / 2] * (k as f64 + 0.5).sqrt();
            out.value += w * p;
            out.d1 += w * dp;
            out.d2 += w * ddp;
        }
        if k == max_degree {
            break;
        }
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * t * p - kf * p_prev) / (kf + 1.0);
        let dp_next = dp_prev + (2.0 * kf + 1.0) * p;
        let ddp_next = ddp_prev + (2.0 * kf + 1.0) * dp;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
        ddp_prev = ddp;
        ddp = ddp_next;
    }
    out
}

/// `P̄_k(t)`, `P̄_k'(t)`, `P̄_k''(t)` for every `k <= max_degree`.
pub fn normalized_table(max_degree: usize, t: f64) -> Vec<Jet> {
    let mut out = Vec::with_capacity(max_degree + 1);
    let (mut p_prev, mut p) = (0.0_f64, 1.0_f64);
    let (mut dp_prev, mut dp) = (0.0_f64, 0.0_f64);
    let (mut ddp_prev, mut ddp) = (0.0_f64, 0.0_f64);
    for k in 0..=max_degree {
        let s = (k as f64 + 0.5).sqrt();
        out.push(Jet {
            value: s * p,
            d1: s * dp,
            d2: s * ddp,
        });
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * t * p - kf * p_prev) / (kf + 1.0);
        let dp_next = dp_prev + (2.0 * kf + 1.0) * p;
        let ddp_next = ddp_prev + (2.0 * kf + 1.0) * dp;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
        ddp_prev = ddp;
        ddp = ddp_next;
    }
    out
}

/// `(P_n(x), P_{n-1}(x))` for the unnormalized polynomials, `n >= 1`.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let (mut p_prev, mut p) = (1.0, x);
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = next;
    }
    (p, p_prev)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "a quadrature rule needs at least one node");
    if n == 1 {
        return (vec![0.0], vec![2.0]);
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, p_prev) = legendre_pair(n, x);
            dp = nf * (x * p - p_prev) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1e-3) {
                let (p, p_prev) = legendre_pair(n, x);
                dp = nf * (x * p - p_prev) / (x * x - 1.0);
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // i-th largest node goes to the top of the array
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Gauss–Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    (
        x.iter().map(|&xi| mid + half * xi).collect(),
        w.iter().map(|&wi| half * wi).collect(),
    )
}
