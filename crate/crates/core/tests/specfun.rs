use std::f64::consts::{FRAC_1_SQRT_2, PI};

use lde::specfun::*;
use lde::Complex64;
use proptest::prelude::*;

/// Trapezoid rule over a full period; exponentially accurate for smooth periodic integrands.
fn periodic_trapezoid(f: impl Fn(f64) -> f64, n: usize) -> f64 {
    let h = 2.0 * PI / n as f64;
    (0..n).map(|k| f(k as f64 * h)).sum::<f64>() * h
}

#[test]
fn elliptic_k_matches_periodic_quadrature() {
    for &k in &[0.0, 0.1, 0.5, FRAC_1_SQRT_2, 0.9, 0.99] {
        // K = (1/4) ∫_0^{2π} (1 - k² sin²θ)^{-1/2} dθ
        let oracle = 0.25 * periodic_trapezoid(|t| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(), 4096);
        let got = elliptic_k(k).unwrap();
        assert!((got - oracle).abs() <= 1e-14 * oracle, "k = {k}: {got} vs {oracle}");
    }
}

#[test]
fn elliptic_k_rejects_unit_modulus() {
    assert!(elliptic_k(1.0).is_err());
    assert!(elliptic_k(f64::NAN).is_err());
}

#[test]
fn bessel_j1_matches_bessel_integral() {
    for &x in &[0.0, 0.3, 1.0, 2.0, 2.9, 3.1, 5.0, 10.0, 17.5] {
        // J1(x) = (1/2π) ∫_0^{2π} cos(θ - x sin θ) dθ
        let oracle = periodic_trapezoid(|t| (t - x * t.sin()).cos(), 256) / (2.0 * PI);
        let got = bessel_j1(x);
        assert!((got - oracle).abs() <= 1e-14, "x = {x}: {got} vs {oracle}");
    }
    assert_eq!(bessel_j1(-1.3), -bessel_j1(1.3));
}

#[test]
fn central_binomials_are_exact() {
    // binomial(-1/2, n) = (-1)^n C(2n, n) / 4^n, with C(2n, n) in integers.
    let mut central: u128 = 1;
    for n in 0..30usize {
        if n > 0 {
            central = central * (2 * n as u128) * (2 * n as u128 - 1) / (n as u128 * n as u128);
        }
        let want = if n % 2 == 0 { 1.0 } else { -1.0 } * central as f64 / 4f64.powi(n as i32);
        let got = binomial_coefficient_nu(-0.5, n);
        assert!((got - want).abs() <= 2.0 * f64::EPSILON * want.abs(), "n = {n}");
    }
}

#[test]
fn compensated_sum_recovers_small_terms() {
    assert_eq!(compensated_sum([1e16, 1.0, -1e16]), 1.0);
    let mut s = CompensatedSum::new();
    s.extend(std::iter::repeat_n(0.1, 10));
    assert_eq!(s.value(), 1.0);
}

#[test]
fn ln_gamma_known_values() {
    let (v, sign) = ln_gamma(0.5);
    assert!((v - 0.5 * PI.ln()).abs() < 1e-15);
    assert_eq!(sign, 1.0);
    // Γ(5) = 24
    assert!((ln_gamma(5.0).0 - 24f64.ln()).abs() < 1e-14);
}

#[test]
fn inverse_power_matches_exp_log() {
    let s = Complex64::new(0.5, 50.0);
    for n in [1.0, 2.0, 7.0, 1000.0] {
        let want = (-s * f64::ln(n)).exp();
        assert!((complex_inverse_power(n, s) - want).norm() < 1e-13);
    }
}

proptest! {
    // Chu–Vandermonde: ₂F₁(1/2, -n; 1; 1) = (1/2)_n / n!.
    #[test]
    fn hyp2f1_at_unit_argument(n in 0usize..40) {
        let want: f64 = (0..n).map(|k| (0.5 + k as f64) / (k as f64 + 1.0)).product();
        let got = hyp2f1_half(n, 1.0);
        // The alternating terms C(n,k) (1/2)_k / k! sum in magnitude to ₂F₁(1/2, -n; 1; -1).
        let scale = hyp2f1_half(n, -1.0);
        prop_assert!((got - want).abs() <= 8.0 * f64::EPSILON * scale, "n = {}: {} vs {}", n, got, want);
    }

    // Finite sum with explicit binomials; tolerance scaled by the term sizes.
    #[test]
    fn hyp2f1_matches_binomial_sum(n in 0usize..20, z in -2.0f64..2.0) {
        let mut sum = 0.0;
        let mut poch = 1.0; // (1/2)_k / k!
        let mut binom = 1.0; // C(n, k)
        for k in 0..=n {
            sum += binom * poch * (-z).powi(k as i32);
            poch *= (0.5 + k as f64) / (k as f64 + 1.0);
            binom *= (n - k) as f64 / (k as f64 + 1.0);
        }
        let scale: f64 = (0..=n).map(|k| {
            let mut b = 1.0;
            for j in 0..k { b *= (n - j) as f64 / (j as f64 + 1.0); }
            b * z.abs().powi(k as i32)
        }).sum();
        prop_assert!((hyp2f1_half(n, z) - sum).abs() <= 1e-13 * scale.max(1.0));
    }

    #[test]
    fn binomial_recurrence(nu in -0.99f64..3.0, n in 0usize..30) {
        let next = binomial_coefficient_nu(nu, n + 1);
        let want = binomial_coefficient_nu(nu, n) * (nu - n as f64) / (n as f64 + 1.0);
        prop_assert!((next - want).abs() <= 1e-14 * want.abs().max(1e-300));
    }
}
