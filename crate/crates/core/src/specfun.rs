//! Special functions used by the expansion engine and its applications.
//!
//! Everything here is a pure function of its arguments. Sums that can
//! cancel go through [`CompensatedSum`].

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

/// Compensated sum of an iterator of reals.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    let mut acc = CompensatedSum::new();
    acc.extend(iter);
    acc.value()
}

/// Generalized binomial coefficient `Γ(ν+1) / (Γ(ν-n+1) n!)`.
///
/// Built from the product recurrence `c_{k+1} = c_k (ν-k)/(k+1)`, so Γ is
/// never evaluated at a pole. For integer `ν >= 0` and `n > ν` the product
/// picks up the factor `ν - ν = 0` and the result is exactly zero.
pub fn binomial_coefficient_nu(nu: f64, n: usize) -> f64 {
    let mut c = 1.0;
    for k in 0..n {
        c *= (nu - k as f64) / (k as f64 + 1.0);
    }
    c
}

/// Terminating hypergeometric sum `₂F₁(1/2, -n; 1; z)` (n + 1 terms).
pub fn hyp2f1_half(n: usize, z: f64) -> f64 {
    let mut acc = CompensatedSum::new();
    let mut term = 1.0;
    acc.add(term);
    for k in 0..n {
        let kf = k as f64;
        term *= (0.5 + kf) * (kf - n as f64) / ((kf + 1.0) * (kf + 1.0)) * z;
        acc.add(term);
    }
    acc.value()
}

const J1_SERIES_LIMIT: f64 = 3.0;

/// Bessel function of the first kind of order one.
///
/// Ascending series for `|x| <= 3`; above that, Miller's backward
/// recurrence normalized by `J0 + 2 Σ J_2k = 1`. Accuracy is only
/// guaranteed to 1e-14 relative for `|x| <= 20` (away from the zeros of J1);
/// larger arguments are evaluated but not covered.
pub fn bessel_j1(x: f64) -> f64 {
    if x < 0.0 {
        return -bessel_j1(-x);
    }
    if x == 0.0 {
        return 0.0;
    }
    if x <= J1_SERIES_LIMIT {
        return j1_series(x);
    }
    j1_miller(x)
}

fn j1_series(x: f64) -> f64 {
    let half = 0.5 * x;
    let q = -half * half;
    let mut term = half;
    let mut acc = CompensatedSum::new();
    acc.add(term);
    for k in 1..60 {
        let kf = k as f64;
        term *= q / (kf * (kf + 1.0));
        acc.add(term);
        if term.abs() < 1e-18 * acc.value().abs() {
            break;
        }
    }
    acc.value()
}

fn j1_miller(x: f64) -> f64 {
    // Start index well above x so the discarded tail is below double precision.
    let start = 2 * ((x + 40.0 + (160.0 * x).sqrt()) as usize / 2);
    let two_over_x = 2.0 / x;
    let mut j_next = 0.0;
    let mut j_cur = 1e-300;
    let mut norm = 0.0;
    let mut j1 = 0.0;
    for k in (1..=start).rev() {
        let j_prev = k as f64 * two_over_x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        if j_cur.abs() > 1e250 {
            j_cur *= 1e-250;
            j_next *= 1e-250;
            norm *= 1e-250;
            j1 *= 1e-250;
        }
        // j_cur now holds the unnormalized J_{k-1}.
        if k == 2 {
            j1 = j_cur;
        }
        if (k - 1) % 2 == 0 && k > 1 {
            norm += 2.0 * j_cur;
        }
    }
    norm += j_cur;
    j1 / norm
}

/// Complete elliptic integral of the first kind, **modulus** convention:
/// `K(k) = ∫₀^{π/2} dθ / sqrt(1 - k² sin²θ)`, by the arithmetic-geometric mean.
pub fn elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::domain("elliptic_k", format!("modulus {k} outside [0, 1)")));
    }
    let mut a = 1.0;
    let mut b = ((1.0 - k) * (1.0 + k)).sqrt();
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a {
            break;
        }
        let mean = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = mean;
    }
    Ok(FRAC_PI_2 / a)
}

/// `base^(-s) = exp(-s ln base)` for a positive real base.
pub fn complex_inverse_power(base: f64, s: Complex64) -> Complex64 {
    debug_assert!(base > 0.0);
    let ln_b = base.ln();
    let modulus = (-s.re * ln_b).exp();
    let phase = -s.im * ln_b;
    Complex64::new(modulus * phase.cos(), modulus * phase.sin())
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `(ln|Γ(x)|, sign Γ(x))` by the Lanczos approximation, with reflection
/// for `x < 1/2`. Returns `(+inf, 1)` at the poles.
pub fn ln_gamma(x: f64) -> (f64, f64) {
    if x <= 0.0 && x == x.floor() {
        return (f64::INFINITY, 1.0);
    }
    if x < 0.5 {
        let s = (PI * x).sin();
        let (lg, sg) = ln_gamma(1.0 - x);
        return ((PI / s.abs()).ln() - lg, s.signum() * sg);
    }
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    let t = z + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    (
        0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + a.ln(),
        1.0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_coefficient_nu(-0.5, 0), 1.0);
        assert_eq!(binomial_coefficient_nu(-0.5, 2), 0.375);
        assert_eq!(binomial_coefficient_nu(1.0, 2), 0.0);
        assert_eq!(binomial_coefficient_nu(3.0, 7), 0.0);
    }

    #[test]
    fn binomial_matches_gamma_ratio() {
        for &nu in &[0.3, 1.7, 2.5] {
            for n in 0..=10usize {
                let (lg_num, s_num) = ln_gamma(nu + 1.0);
                let (lg_den, s_den) = ln_gamma(nu - n as f64 + 1.0);
                let (lg_fact, _) = ln_gamma(n as f64 + 1.0);
                let reference = s_num * s_den * (lg_num - lg_den - lg_fact).exp();
                let got = binomial_coefficient_nu(nu, n);
                assert!(
                    (got - reference).abs() <= 1e-13 * reference.abs().max(1e-300),
                    "nu={nu} n={n}: {got} vs {reference}"
                );
            }
        }
    }

    #[test]
    fn binomial_minus_half_double_factorial() {
        let mut dfact = 1.0; // (2n-1)!!, with (-1)!! = 1
        let mut fact = 1.0;
        for n in 0..=15usize {
            if n > 0 {
                dfact *= (2 * n - 1) as f64;
                fact *= n as f64;
            }
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let expected = sign * dfact / (2f64.powi(n as i32) * fact);
            let got = binomial_coefficient_nu(-0.5, n);
            assert!((got - expected).abs() <= 4.0 * f64::EPSILON * expected.abs());
        }
    }

    #[test]
    fn hyp2f1_examples() {
        assert_eq!(hyp2f1_half(0, 0.7), 1.0);
        for &z in &[-1.3, 0.0, 0.4, 1.9] {
            assert!((hyp2f1_half(1, z) - (1.0 - 0.5 * z)).abs() < 1e-15);
        }
        // n = 3, z = -1: brute force of the four terms 1 + 3/2 + 9/8 + 5/16.
        let z: f64 = -1.0;
        let brute = 1.0 + (0.5 * -3.0) * z + (0.5 * 1.5 * -3.0 * -2.0) / 4.0 * z * z
            + -(0.5 * 1.5 * 2.5 * 3.0 * 2.0) / 36.0 * z * z * z;
        assert!((hyp2f1_half(3, z) - brute).abs() < 1e-15);
        assert!((brute - 3.9375).abs() < 1e-15);
    }

    #[test]
    fn j1_values() {
        assert_eq!(bessel_j1(0.0), 0.0);
        // 30-term ascending series evaluated independently.
        let oracle = |x: f64| {
            let mut s = 0.0;
            let mut fk = 1.0;
            let mut fk1 = 1.0;
            for k in 0..30 {
                if k > 0 {
                    fk *= k as f64;
                    fk1 *= (k + 1) as f64;
                }
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                s += sign * (x / 2.0).powi(2 * k + 1) / (fk * fk1);
            }
            s
        };
        assert!((bessel_j1(1.0) - 0.440_050_585_744_933_5).abs() < 1e-15);
        assert!((bessel_j1(1.0) - oracle(1.0)).abs() < 1e-15);
        for &x in &[0.1, 0.5, 2.0, 2.9, 3.1] {
            assert!((bessel_j1(x) - oracle(x)).abs() < 2e-15 * oracle(x).abs(), "x={x}");
        }
        let tiny = 1e-8;
        assert!((bessel_j1(tiny) / tiny - 0.5).abs() < 1e-15);
        assert_eq!(bessel_j1(-2.3), -bessel_j1(2.3));
    }

    #[test]
    fn j1_branch_continuity_and_large_argument() {
        let below = bessel_j1(J1_SERIES_LIMIT);
        let above = j1_miller(J1_SERIES_LIMIT);
        assert!((below - above).abs() < 1e-15);
        // Reference values (Abramowitz & Stegun table 9.1).
        assert!((bessel_j1(5.0) + 0.327_579_137_591_465_2).abs() < 1e-15);
        assert!((bessel_j1(10.0) - 0.043_472_746_168_861_44).abs() < 1e-15);
        assert!((bessel_j1(20.0) - 0.066_833_124_175_850_04).abs() < 1e-15);
    }

    #[test]
    fn elliptic_k_values() {
        assert!((elliptic_k(0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
        let k = elliptic_k(std::f64::consts::FRAC_1_SQRT_2).unwrap();
        assert!((k - 1.854_074_677_301_372).abs() < 1e-14);
        assert!(elliptic_k(1.0).is_err());
        assert!(elliptic_k(-0.1).is_err());
        assert!(elliptic_k(0.999_999).unwrap().is_finite());
    }

    #[test]
    fn inverse_power_examples() {
        let one = complex_inverse_power(1.0, Complex64::new(0.5, 50.0));
        assert_eq!(one, Complex64::new(1.0, 0.0));
        let eighth = complex_inverse_power(2.0, Complex64::new(3.0, 0.0));
        assert!((eighth.re - 0.125).abs() < 1e-16 && eighth.im == 0.0);
        let z = complex_inverse_power(2.0, Complex64::new(0.5, 50.0));
        assert!((z.norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn compensated_sum_recovers_cancelled_terms() {
        let v = compensated_sum([1e16, 1.0, -1e16, 1.0]);
        assert_eq!(v, 2.0);
    }
}
