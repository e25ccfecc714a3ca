use std::f64::consts::PI;

use proptest::prelude::*;

use prolate::bounds::{crude_chi_bracket, h_inverse, h_map, regime_classify, Claim, Counts, Verdict};
use prolate::elliptic::{ellint_e, ellint_ec, ellint_f};
use prolate::harness::config::parse_grid;
use prolate::harness::format::{fortran_e, parse_fortran_e};
use prolate::prufer::PhaseSolution;
use prolate::roots::{grid_scan_roots, scan_samples, special_points, Regime};
use prolate::{ProlateContext, ProlateSpectrum};

fn spectrum(c: f64, n_max: usize) -> ProlateSpectrum {
    ProlateSpectrum::build(&ProlateContext::new(c, n_max).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spectrum_is_bracketed_and_increasing(c in 0.1f64..60.0, n_max in 0usize..30) {
        let spec = spectrum(c, n_max);
        for n in 0..=n_max {
            let (lo, hi) = crude_chi_bracket(n, c);
            prop_assert!(lo < spec.chi(n) && spec.chi(n) < hi, "n = {}", n);
        }
        prop_assert!(spec.chis().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn integral_eigenvalues_are_ordered(c in 0.5f64..30.0) {
        let spec = spectrum(c, 12);
        let ev = spec.integral_eigenvalues().unwrap();
        // μ_n = 1 - ε with ε below rounding for the first ~2c/π indices, so
        // the order and the upper limit only hold to a few ulps there
        const ULPS: f64 = 1e-13;
        for w in ev.windows(2) {
            prop_assert!(w[0].lambda_abs >= w[1].lambda_abs * (1.0 - ULPS));
        }
        for e in &ev {
            prop_assert!(e.mu > 0.0 && e.mu < 1.0 + ULPS);
            let mu = c / (2.0 * PI) * e.lambda_abs * e.lambda_abs;
            prop_assert!((mu - e.mu).abs() <= 1e-14 * mu.max(1e-300));
        }
    }

    #[test]
    fn parity_and_sign(c in 0.1f64..40.0, n in 0usize..20, t in 0.0f64..1.0) {
        let spec = spectrum(c, n);
        let f = spec.function(n);
        prop_assert!(f.psi(1.0) > 0.0);
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((f.psi(-t) - s * f.psi(t)).abs() <= 1e-13 * f.psi(1.0).abs().max(1.0));
    }

    #[test]
    fn psi_has_exactly_n_sign_changes(c in 0.5f64..40.0, n in 1usize..25) {
        let spec = spectrum(c, n);
        let f = spec.function(n);
        prop_assert_eq!(grid_scan_roots(|t| f.psi(t), scan_samples(f), 1e-10).len(), n);
    }

    #[test]
    fn phase_increases(c in 0.5f64..40.0, n in 2usize..25, u in 0.0f64..1.0) {
        let spec = spectrum(c, n);
        let f = spec.function(n);
        let phase = PhaseSolution::solve(f).unwrap();
        let t = (2.0 * u - 1.0) * phase.x_n() * 0.999;
        prop_assert!(phase.theta_prime(t).unwrap() > 0.0);
    }

    #[test]
    fn counts_sandwich_n(c in 0.5f64..60.0, n in 2usize..40) {
        let spec = spectrum(c, n);
        let sp = special_points(spec.function(n)).unwrap();
        let k = Counts::from_points(&sp).unwrap();
        prop_assert!(k.below < n as f64 && (n as f64) < k.above);
        if sp.regime == Regime::Above {
            prop_assert!(k.above - (n as f64) < 3.0);
        }
        prop_assert!(regime_classify(n, c).agrees_with(sp.regime));
    }

    #[test]
    fn claim_semantics(truth in -10.0f64..10.0, a in -10.0f64..10.0, b in -10.0f64..10.0) {
        let (lo, hi) = (a.min(b), a.max(b));
        let r = Claim::new("p", 1.0, 2, truth).lower(lo).upper(hi).judge();
        prop_assert_eq!(r.holds, lo < truth && truth < hi);
        if r.holds {
            prop_assert_eq!(r.verdict, Verdict::Pass);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn elliptic_monotone(y1 in 0.0f64..1.5707, y2 in 0.0f64..1.5707, k1 in 0.0f64..0.999, k2 in 0.0f64..0.999) {
        let (ya, yb) = (y1.min(y2), y1.max(y2));
        let (ka, kb) = (k1.min(k2), k1.max(k2));
        prop_assert!(ellint_e(ya, ka).unwrap() <= ellint_e(yb, ka).unwrap());
        prop_assert!(ellint_e(ya, ka).unwrap() >= ellint_e(ya, kb).unwrap());
        prop_assert!(ellint_f(ya, ka).unwrap() <= ellint_f(yb, ka).unwrap());
        prop_assert!(ellint_f(ya, ka).unwrap() <= ellint_f(ya, kb).unwrap());
    }

    #[test]
    fn complete_e_matches_incomplete(k in 0.0f64..=1.0) {
        prop_assert_eq!(ellint_e(PI / 2.0, k).unwrap(), ellint_ec(k).unwrap());
    }

    #[test]
    fn h_is_inverse_of_f(x in -1.0f64..50.0, dx in 1e-6f64..1.0) {
        prop_assert!(h_map(x) < h_map(x + dx));
        let y = h_map(x);
        prop_assert!((h_inverse(y) - x).abs() <= 1e-10 * x.abs().max(1.0));
    }

    #[test]
    fn fortran_format_round_trips(x in -1e12f64..1e12) {
        let s = fortran_e(x);
        let back = parse_fortran_e(&s).unwrap();
        // five significant digits in a 0.ddddd mantissa
        prop_assert!((back - x).abs() <= 5e-5 * x.abs() * (1.0 + 1e-12));
    }

    #[test]
    fn grid_lines_round_trip(c in 0.01f64..1e4, a in 0usize..100, len in 0usize..100) {
        let g = parse_grid(&format!("{c} {a} {}\n", a + len)).unwrap();
        prop_assert_eq!(g.len(), 1);
        prop_assert_eq!(g[0].c, c);
        prop_assert_eq!(g[0].len(), len + 1);
    }
}
