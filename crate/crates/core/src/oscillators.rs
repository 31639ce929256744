//! Periods of the Duffing oscillator `V = x²/2 + μx⁴/4` and the nonlinear
//! pendulum `V = 1 - cos θ` (unit mass), with harmonic comparison
//! potentials `V0 = (1 + λ²) x² / 2`.
//!
//! Throughout, `c = 1 + λ²` is the comparison stiffness. For the pendulum
//! the optimal `λ²` is negative; `c` stays positive.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::method::{self, DeltaExpansion, QuadraticFamily, TurningPointIntegral};
use crate::specfun::{bessel_j1, binomial_coefficient_nu, elliptic_k, hyp2f1_half, CompensatedSum};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DuffingParams {
    mu: f64,
    amplitude: f64,
}

impl DuffingParams {
    pub fn new(mu: f64, amplitude: f64) -> Result<Self> {
        if !(mu >= 0.0) || !mu.is_finite() {
            return Err(Error::domain("DuffingParams", format!("coupling μ = {mu} must be >= 0")));
        }
        if !(amplitude > 0.0) || !amplitude.is_finite() {
            return Err(Error::domain("DuffingParams", format!("amplitude A = {amplitude} must be > 0")));
        }
        Ok(Self { mu, amplitude })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// `μA²`, the only dimensionless combination.
    pub fn coupling(&self) -> f64 {
        self.mu * self.amplitude * self.amplitude
    }

    pub fn potential(&self, x: f64) -> f64 {
        0.5 * x * x + 0.25 * self.mu * x.powi(4)
    }

    pub fn energy(&self) -> f64 {
        self.potential(self.amplitude)
    }
}

/// `λ_PMS = sqrt(3μ)·A/2`, the first-order optimum.
pub fn duffing_lambda_pms(p: &DuffingParams) -> f64 {
    (3.0 * p.mu).sqrt() * p.amplitude / 2.0
}

/// Smallest `λ` for which `|Δ| < 1` on the whole orbit:
/// `sqrt(μA²/2)·sqrt(1 - 1/(μA²))`. Below `μA² = 1` every `λ >= 0` works and 0 is returned.
pub fn duffing_lambda_threshold(p: &DuffingParams) -> f64 {
    let g = p.coupling();
    if g <= 1.0 {
        return 0.0;
    }
    (0.5 * g).sqrt() * (1.0 - 1.0 / g).sqrt()
}

/// First-order optimal period `4π / sqrt(4 + 3μA²)`.
pub fn duffing_period_pms(p: &DuffingParams) -> f64 {
    4.0 * PI / (4.0 + 3.0 * p.coupling()).sqrt()
}

/// Exact period `4/sqrt(1 + μA²) · K(k)`, `k² = μA² / (2(1 + μA²))`.
pub fn duffing_exact(p: &DuffingParams) -> f64 {
    let g = p.coupling();
    let k = (g / (2.0 * (1.0 + g))).sqrt();
    // k < 1/sqrt(2) for every finite coupling.
    4.0 / (1.0 + g).sqrt() * elliptic_k(k).expect("Duffing modulus below 1/sqrt(2)")
}

/// Sup of `|Δ|` on the Duffing orbit for comparison parameter `λ`.
pub fn duffing_max_abs_delta(p: &DuffingParams, lambda: f64) -> f64 {
    let c = 1.0 + lambda * lambda;
    let g = p.coupling();
    let q = g - 2.0 * lambda * lambda;
    q.abs().max((q + g).abs()) / (2.0 * c)
}

/// Closed-form period series truncated at `order`:
///
/// ```text
/// T = Σ_n (-1)^n π (2n-1)!! / (2^{2n-1} n! sqrt(1+λ²)) · ((A²μ - 2λ²)/(1+λ²))^n
///         · ₂F₁(1/2, -n; 1; A²μ / (2λ² - A²μ))
/// ```
///
/// The returned certificate is `sup |Δ|`; it is `>= 1` (and the partial
/// sums diverge) when `λ` is below [`duffing_lambda_threshold`].
pub fn duffing_series(p: &DuffingParams, lambda: f64, order: usize) -> DeltaExpansion {
    let c = 1.0 + lambda * lambda;
    let g = p.coupling();
    let q = g - 2.0 * lambda * lambda;
    let lead = 2.0 * PI / c.sqrt();
    let terms = (0..=order)
        .map(|n| {
            // (q/(2c))^n ₂F₁(1/2, -n; 1; -g/q). For |g/q| > 1 the factor q^n is
            // distributed over the hypergeometric terms so q → 0 stays finite.
            let poly = if q != 0.0 && g <= q.abs() {
                (q / (2.0 * c)).powi(n as i32) * hyp2f1_half(n, -g / q)
            } else {
                let (qs, gs) = (q / (2.0 * c), g / (2.0 * c));
                let mut acc = CompensatedSum::new();
                let mut coeff = 1.0; // C(n,k) (1/2)_k / k!
                for k in 0..=n {
                    acc.add(coeff * gs.powi(k as i32) * qs.powi((n - k) as i32));
                    coeff *= (n - k) as f64 / (k as f64 + 1.0) * (0.5 + k as f64) / (k as f64 + 1.0);
                }
                acc.value()
            };
            lead * binomial_coefficient_nu(-0.5, n) * poly
        })
        .collect();
    DeltaExpansion::from_terms(terms, duffing_max_abs_delta(p, lambda))
}

/// The period integral `T = sqrt(2) ∫ (E - V)^{-1/2} dx` as engine input.
pub fn duffing_integral(p: &DuffingParams) -> TurningPointIntegral {
    let DuffingParams { mu, amplitude: a } = *p;
    TurningPointIntegral::builder(-0.5, -a, a, p.energy(), move |x| 0.5 * x * x + 0.25 * mu * x.powi(4))
        .constant_weight(SQRT_2)
        .depth(move |pt| pt.from_lower * pt.to_upper * (0.5 + 0.25 * mu * (a * a + pt.x * pt.x)))
        .build()
        .expect("valid Duffing parameters give a valid integral")
}

/// Comparison family `V0 = c x²/2`, parameterized by `c = 1 + λ²`.
pub fn duffing_family(p: &DuffingParams) -> QuadraticFamily {
    QuadraticFamily::new(-p.amplitude, p.amplitude, 0.5, (-p.amplitude, p.amplitude))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PendulumParams {
    theta_max: f64,
}

impl PendulumParams {
    pub fn new(theta_max: f64) -> Result<Self> {
        if !(theta_max > 0.0 && theta_max < PI) {
            return Err(Error::domain(
                "PendulumParams",
                format!("amplitude Θ = {theta_max} outside (0, π)"),
            ));
        }
        Ok(Self { theta_max })
    }

    pub fn theta_max(&self) -> f64 {
        self.theta_max
    }
}

/// First-order period with comparison stiffness `1 + λ²` (δ = 1):
/// `(2π/sqrt(1+λ²))(3/2) - 2π/(1+λ²)^{3/2} · J1(Θ)/Θ`.
pub fn pendulum_period_first_order(p: &PendulumParams, lambda_sq: f64) -> Result<f64> {
    let c = 1.0 + lambda_sq;
    if !(c > 0.0) {
        return Err(Error::domain(
            "pendulum_period_first_order",
            format!("stiffness 1 + λ² = {c} must be positive"),
        ));
    }
    let theta = p.theta_max;
    Ok(2.0 * PI / c.sqrt() * 1.5 - 2.0 * PI / c.powf(1.5) * bessel_j1(theta) / theta)
}

/// Optimal comparison stiffness `c = 1 + λ² = 2 J1(Θ)/Θ`.
pub fn pendulum_optimal_stiffness(p: &PendulumParams) -> f64 {
    2.0 * bessel_j1(p.theta_max) / p.theta_max
}

/// `λ²_PMS = 2 J1(Θ)/Θ - 1` (negative for every Θ > 0).
pub fn pendulum_lambda_sq_pms(p: &PendulumParams) -> f64 {
    pendulum_optimal_stiffness(p) - 1.0
}

/// First-order optimal period `π sqrt(2Θ / J1(Θ))`.
pub fn pendulum_period_pms(p: &PendulumParams) -> f64 {
    PI * (2.0 * p.theta_max / bessel_j1(p.theta_max)).sqrt()
}

/// Exact period `4 K(sin(Θ/2))`.
pub fn pendulum_exact(p: &PendulumParams) -> f64 {
    4.0 * elliptic_k((0.5 * p.theta_max).sin()).expect("sin(Θ/2) < 1 for Θ < π")
}

/// `T = sqrt(2) ∫ (cos θ - cos Θ)^{-1/2} dθ` as engine input.
pub fn pendulum_integral(p: &PendulumParams) -> TurningPointIntegral {
    let big = p.theta_max;
    TurningPointIntegral::builder(-0.5, -big, big, 1.0 - big.cos(), |t| 1.0 - t.cos())
        .constant_weight(SQRT_2)
        // cos θ - cos Θ = 2 sin((Θ - θ)/2) sin((Θ + θ)/2)
        .depth(|pt| 2.0 * (0.5 * pt.to_upper).sin() * (0.5 * pt.from_lower).sin())
        .build()
        .expect("valid pendulum amplitude gives a valid integral")
}

pub fn pendulum_family(p: &PendulumParams) -> QuadraticFamily {
    QuadraticFamily::new(-p.theta_max, p.theta_max, 0.5, (-p.theta_max, p.theta_max))
}

/// Pendulum period series at stiffness `c`, term integrals by quadrature.
pub fn pendulum_series(p: &PendulumParams, stiffness: f64, order: usize) -> Result<DeltaExpansion> {
    let spec = pendulum_integral(p);
    let family = pendulum_family(p);
    method::evaluate(&spec, &family.at(stiffness), order)
}
