use lde::method::{self, Interpolant, PmsOptions, QuadraticFamily, TurningPointIntegral};
use lde::oscillators::{self, DuffingParams};
use lde::Error;
use proptest::prelude::*;

fn duffing(mu: f64, a: f64) -> (TurningPointIntegral, QuadraticFamily) {
    let p = DuffingParams::new(mu, a).unwrap();
    (oscillators::duffing_integral(&p), oscillators::duffing_family(&p))
}

#[test]
fn quadrature_oracle_reproduces_elliptic_period() {
    for (mu, a) in [(0.0, 1.0), (1.0, 0.3), (1.0, 10.0), (50.0, 2.0)] {
        let (spec, _) = duffing(mu, a);
        let exact = oscillators::duffing_exact(&DuffingParams::new(mu, a).unwrap());
        let est = method::quadrature_oracle(&spec).unwrap();
        assert!((est.value - exact).abs() <= 1e-12 * exact, "mu = {mu}, A = {a}");
    }
}

#[test]
fn builder_rejects_bad_input() {
    let reversed = TurningPointIntegral::builder(-0.5, 1.0, -1.0, 0.5, |x| 0.5 * x * x).build();
    assert!(matches!(reversed, Err(Error::InvalidBracket { .. })));
    let bad_nu = TurningPointIntegral::builder(-1.0, -1.0, 1.0, 0.5, |x| 0.5 * x * x).build();
    assert!(matches!(bad_nu, Err(Error::Domain { .. })));
    // Level below the potential inside the interval.
    let negative = TurningPointIntegral::builder(-0.5, -1.0, 1.0, 0.1, |x| 0.5 * x * x).build();
    assert!(negative.is_err());
}

#[test]
fn turning_points_are_detected() {
    let (spec, _) = duffing(1.0, 2.0);
    let t = spec.turning();
    assert!(t.lower && t.upper);
    // ∫_0^1 (1 - x²)^{-1/2} dx: only the upper end is a turning point.
    let half = TurningPointIntegral::builder(-0.5, 0.0, 1.0, 1.0, |x| x * x).build().unwrap();
    let t = half.turning();
    assert!(!t.lower && t.upper);
    let v = method::quadrature_oracle(&half).unwrap().value;
    assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
}

#[test]
fn delta_is_zero_for_the_matching_interpolant() {
    // Harmonic potential against the harmonic family at its own stiffness.
    let (spec, family) = duffing(0.0, 1.5);
    let i = family.at(1.0);
    for x in [-1.5, -0.7, 0.0, 1.2, 1.5] {
        assert!(method::delta_ratio(&spec, &i, x).unwrap().abs() < 1e-12);
    }
    assert!(method::delta_ratio(&spec, &i, 2.0).is_err());
}

#[test]
fn non_positive_gap_is_reported() {
    let (spec, family) = duffing(1.0, 1.0);
    let r = method::evaluate(&spec, &family.at(-1.0), 3);
    assert!(matches!(r, Err(Error::NonPositiveGap { .. })));
}

#[test]
fn first_order_pms_matches_closed_form() {
    // The order-1 partial sum is stationary at c = 1 + 3μA²/4.
    let (mu, a) = (1.0, 2.0);
    let (spec, family) = duffing(mu, a);
    let sol = method::pms_optimize(&spec, &family, 1, (1.0, 10.0), &PmsOptions::default()).unwrap();
    assert!(!sol.fallback);
    let want = 1.0 + 0.75 * mu * a * a;
    assert!((sol.param - want).abs() < 1e-6 * want, "{} vs {want}", sol.param);
    let period = oscillators::duffing_period_pms(&DuffingParams::new(mu, a).unwrap());
    assert!((sol.value - period).abs() < 1e-10 * period);
}

#[test]
fn stationarity_search_on_plain_function() {
    let sol = method::pms_optimize_fn(|c| Ok((c - 2.5).powi(2) + 1.0), (0.0, 4.0), 0, &PmsOptions::default()).unwrap();
    assert!((sol.param - 2.5).abs() < 1e-8);
    assert!(!sol.fallback);
    // Monotone objective: no stationary point, flagged fallback at the flattest end.
    let mono = method::pms_optimize_fn(|c| Ok(c.exp()), (0.0, 1.0), 0, &PmsOptions::default()).unwrap();
    assert!(mono.fallback);
    assert_eq!(mono.param, 0.0);
    assert!(method::pms_optimize_fn(Ok, (1.0, 1.0), 0, &PmsOptions::default()).is_err());
}

#[test]
fn partial_sums_accumulate_terms() {
    let (spec, family) = duffing(1.0, 1.0);
    let e = method::evaluate(&spec, &family.at(1.8), 6).unwrap();
    let mut run = 0.0;
    for (t, s) in e.terms.iter().zip(&e.partial_sums) {
        run += t;
        assert_eq!(run, *s);
    }
    let t3 = method::series_term(&spec, &family.at(1.8), 3).unwrap();
    assert!((t3 - e.terms[3]).abs() <= 1e-12 * e.terms[0].abs());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // The engine's certificate and series terms agree with the Duffing closed forms.
    #[test]
    fn engine_matches_duffing_closed_form(mu in 0.0f64..5.0, a in 0.2f64..3.0, t in 0.0f64..1.0) {
        let p = DuffingParams::new(mu, a).unwrap();
        let (spec, family) = duffing(mu, a);
        let lo = oscillators::duffing_lambda_threshold(&p);
        let lambda = lo + 0.05 + t * (2.0 * oscillators::duffing_lambda_pms(&p) + 1.0);
        let c = 1.0 + lambda * lambda;
        let engine = method::evaluate(&spec, &Interpolant::new(&family, c), 8).unwrap();
        let closed = oscillators::duffing_series(&p, lambda, 8);
        prop_assert!((engine.max_abs_delta - closed.max_abs_delta).abs() <= 1e-6 * closed.max_abs_delta.max(1e-3));
        for (x, y) in engine.terms.iter().zip(&closed.terms) {
            prop_assert!((x - y).abs() <= 1e-11 * closed.terms[0].abs(), "{} vs {}", x, y);
        }
    }
}
