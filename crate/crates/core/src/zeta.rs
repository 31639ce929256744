//! Accelerated series for the Riemann zeta function
//!
//! ```text
//! ζ(s) = 2^{s-1}/(2^{s-1} - 1) · Σ_k (1+λ)^{-(k+1)} Σ_{j≤k} C(k,j) λ^{k-j} (-1)^j (1+j)^{-s}
//! ```
//!
//! The series is exact for every `λ > 0`; truncated at `K` the remainder
//! depends on `λ`. `λ = 1` is Knopp's series and `λ = 0` the alternating
//! eta series.
//!
//! The inner weights `C(k,j) λ^{k-j} / (1+λ)^k` are binomial probabilities
//! with success rate `1/(1+λ)`. They are advanced from `k` to `k+1` by the
//! Pascal recurrence, which only adds positive numbers: no overflow of
//! `C(k,j)` and no cancellation in the weights themselves.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{complex_inverse_power, CompensatedSum};

/// Argument, acceleration parameter and truncation of the series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaSeriesParams {
    s: Complex64,
    lambda: f64,
    terms: usize,
}

impl ZetaSeriesParams {
    pub fn new(s: Complex64, lambda: f64, terms: usize) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::domain("ZetaSeriesParams", format!("λ = {lambda} must be > 0")));
        }
        prefactor(s)?;
        Ok(Self { s, lambda, terms })
    }

    pub fn s(&self) -> Complex64 {
        self.s
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn terms(&self) -> usize {
        self.terms
    }
}

#[derive(Default)]
struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// `2^{s-1} / (2^{s-1} - 1)`, rejected within 1e-12 of `2^{s-1} = 1`.
fn prefactor(s: Complex64) -> Result<Complex64> {
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::domain("zeta", format!("argument {s} is not finite")));
    }
    let t = complex_inverse_power(2.0, Complex64::new(1.0, 0.0) - s);
    let denom = t - 1.0;
    if denom.norm() <= 1e-12 {
        return Err(Error::domain("zeta", format!("2^(s-1) = 1 at s = {s}")));
    }
    Ok(t / denom)
}

/// The eta-series terms `(1+λ)^{-(k+1)} Σ_j C(k,j) λ^{k-j} (-1)^j (1+j)^{-s}`
/// for `k = 0..=terms`. `λ = 0` is allowed here.
fn transformed_terms(s: Complex64, lambda: f64, terms: usize) -> Vec<Complex64> {
    let p = 1.0 / (1.0 + lambda);
    let q = lambda / (1.0 + lambda);
    let signed_powers: Vec<Complex64> = (0..=terms)
        .map(|j| {
            let a = complex_inverse_power(1.0 + j as f64, s);
            if j % 2 == 0 {
                a
            } else {
                -a
            }
        })
        .collect();
    let mut weights = Vec::with_capacity(terms + 1);
    weights.push(1.0);
    let mut out = Vec::with_capacity(terms + 1);
    for k in 0..=terms {
        if k > 0 {
            weights.push(0.0);
            for j in (1..=k).rev() {
                weights[j] = q * weights[j] + p * weights[j - 1];
            }
            weights[0] *= q;
        }
        let mut acc = ComplexSum::default();
        for (w, a) in weights.iter().zip(&signed_powers) {
            if *w != 0.0 {
                acc.add(*a * *w);
            }
        }
        out.push(acc.value() * p);
    }
    out
}

fn partial_sums_raw(s: Complex64, lambda: f64, terms: usize) -> Result<Vec<Complex64>> {
    let pre = prefactor(s)?;
    let mut acc = ComplexSum::default();
    Ok(transformed_terms(s, lambda, terms)
        .into_iter()
        .map(|t| {
            acc.add(t);
            pre * acc.value()
        })
        .collect())
}

/// All partial sums `S_0, …, S_K` of the accelerated series.
pub fn zeta_partial_sums(p: &ZetaSeriesParams) -> Vec<Complex64> {
    partial_sums_raw(p.s, p.lambda, p.terms).expect("parameters validated on construction")
}

/// The accelerated series truncated after `k = K`.
pub fn zeta_accelerated(p: &ZetaSeriesParams) -> Complex64 {
    *zeta_partial_sums(p).last().expect("at least one term")
}

/// Partial sums of the plain alternating series (the `λ = 0` member),
/// `2^{s-1}/(2^{s-1}-1) · Σ_{k≤K} (-1)^k (1+k)^{-s}`.
pub fn eta_partial_sums(s: Complex64, terms: usize) -> Result<Vec<Complex64>> {
    partial_sums_raw(s, 0.0, terms)
}

/// First-order optimal parameter `2^{-n}` for real integer argument `n >= 2`.
pub fn zeta_lambda_pms(n: u32) -> f64 {
    2f64.powi(-(n as i32))
}

/// The series on the critical line `s = 1/2 + iτ`.
pub fn zeta_critical(tau: f64, lambda: f64, terms: usize) -> Result<Complex64> {
    let p = ZetaSeriesParams::new(Complex64::new(0.5, tau), lambda, terms)?;
    Ok(zeta_accelerated(&p))
}

/// Knopp's series, the `λ = 1` member.
pub fn knopp_series(s: Complex64, terms: usize) -> Result<Complex64> {
    Ok(zeta_accelerated(&ZetaSeriesParams::new(s, 1.0, terms)?))
}

/// Truncation of the plain Dirichlet series `Σ_{n=1}^{N} n^{-s}`.
pub fn direct_sum(s: Complex64, terms: usize) -> Complex64 {
    let mut acc = ComplexSum::default();
    for n in (1..=terms).rev() {
        acc.add(complex_inverse_power(n as f64, s));
    }
    acc.value()
}

/// A reference value with its estimated absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaReference {
    pub value: Complex64,
    pub error: f64,
}

// B_2, B_4, …, B_14 (the last one only for the error estimate).
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

const REFERENCE_TOL: f64 = 1e-12;

/// Euler–Maclaurin summation with `n` direct terms and Bernoulli
/// corrections through `B_12`; the error is the size of the `B_14` term.
pub fn zeta_reference_with(s: Complex64, n: usize) -> Result<ZetaReference> {
    if !(s.re > 0.0) {
        return Err(Error::domain("zeta_reference", format!("Re s = {} must be > 0", s.re)));
    }
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::domain("zeta_reference", "pole at s = 1".to_string()));
    }
    let n = n.max(2);
    let nf = n as f64;
    let mut acc = ComplexSum::default();
    for k in (1..n).rev() {
        acc.add(complex_inverse_power(k as f64, s));
    }
    let n_pow = complex_inverse_power(nf, s);
    acc.add(n_pow * nf / (s - 1.0));
    acc.add(n_pow * 0.5);
    // Running factor s(s+1)…(s+2k-2) / (2k)! · N^{-s-2k+1}.
    let mut factor = s * n_pow / nf;
    let mut fact = 2.0;
    let mut error = 0.0;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let term = factor * (*b / fact);
        if k + 1 < BERNOULLI.len() {
            acc.add(term);
        } else {
            error = term.norm();
        }
        let m = 2.0 * (k as f64 + 1.0);
        factor = factor * (s + (m - 1.0)) * (s + m) / (nf * nf);
        fact *= (m + 1.0) * (m + 2.0);
    }
    Ok(ZetaReference {
        value: acc.value(),
        error,
    })
}

/// Reference value of ζ(s) for `Re s > 0`.
///
/// The Bernoulli tail shrinks roughly like `(|s| / 2πN)^{2k}`, so the number
/// of direct terms is `N = max(50, 2|s|)` rather than a fixed 50. Fails if
/// the estimated absolute error exceeds 1e-12 (relative for `|ζ| > 1`).
pub fn zeta_reference(s: Complex64) -> Result<ZetaReference> {
    let n = 50usize.max((2.0 * s.norm()).ceil() as usize);
    let r = zeta_reference_with(s, n)?;
    if !(r.error <= REFERENCE_TOL * r.value.norm().max(1.0)) {
        return Err(Error::NonConvergence {
            what: "Euler-Maclaurin reference",
            estimate: r.error,
        });
    }
    Ok(r)
}

/// Numerical higher-order tuning of `λ`: among `points` values spread
/// log-uniformly over `[lo, hi]`, the one minimizing `|S_K - S_{K-1}|`.
/// Returns `(λ, |S_K - S_{K-1}|)`.
pub fn zeta_lambda_scan(s: Complex64, terms: usize, lo: f64, hi: f64, points: usize) -> Result<(f64, f64)> {
    if !(lo > 0.0 && lo < hi && hi.is_finite()) || points < 2 || terms < 1 {
        return Err(Error::InvalidBracket { lo, hi });
    }
    prefactor(s)?;
    let ratio = (hi / lo).ln();
    let mut best = (lo, f64::INFINITY);
    for i in 0..points {
        let lambda = lo * (ratio * i as f64 / (points - 1) as f64).exp();
        let sums = partial_sums_raw(s, lambda, terms)?;
        let change = (sums[terms] - sums[terms - 1]).norm();
        if change < best.1 {
            best = (lambda, change);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn real(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn zeta_two_and_single_term() {
        let p = ZetaSeriesParams::new(real(2.0), 0.25, 40).unwrap();
        assert!((zeta_accelerated(&p).re - PI * PI / 6.0).abs() < 1e-12);
        let one = ZetaSeriesParams::new(real(3.0), 1.0, 0).unwrap();
        assert!((zeta_accelerated(&one).re - 2.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(ZetaSeriesParams::new(real(3.0), 0.0, 5).is_err());
        assert!(ZetaSeriesParams::new(real(3.0), -1.0, 5).is_err());
        assert!(ZetaSeriesParams::new(real(1.0), 0.5, 5).is_err());
        let periodic = Complex64::new(1.0, 2.0 * PI / 2f64.ln());
        assert!(ZetaSeriesParams::new(periodic, 0.5, 5).is_err());
    }

    #[test]
    fn lambda_pms_examples() {
        assert_eq!(zeta_lambda_pms(3), 0.125);
        assert_eq!(zeta_lambda_pms(2), 0.25);
        assert_eq!(zeta_lambda_pms(10), 9.765_625e-4);
    }

    #[test]
    fn zero_lambda_is_the_eta_series() {
        let s = Complex64::new(0.5, 3.0);
        let terms = transformed_terms(s, 0.0, 12);
        for (k, t) in terms.iter().enumerate() {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let expected = complex_inverse_power(1.0 + k as f64, s) * sign;
            assert_eq!(*t, expected);
        }
    }

    #[test]
    fn reference_closed_forms() {
        let z2 = zeta_reference(real(2.0)).unwrap();
        assert!((z2.value.re - PI * PI / 6.0).abs() < 1e-13);
        let z4 = zeta_reference(real(4.0)).unwrap();
        assert!((z4.value.re - PI.powi(4) / 90.0).abs() < 1e-13);
        let half = zeta_reference(real(0.5)).unwrap();
        assert!((half.value.re + 1.460_354_508_809_586_8).abs() < 1e-12);
        assert!(zeta_reference(real(1.0)).is_err());
        assert!(zeta_reference(real(-1.0)).is_err());
    }

    #[test]
    fn reference_is_self_consistent_on_the_critical_line() {
        let s = Complex64::new(0.5, 50.0);
        let a = zeta_reference(s).unwrap().value;
        let n = 50usize.max((2.0 * s.norm()).ceil() as usize);
        let b = zeta_reference_with(s, 2 * n).unwrap().value;
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn critical_line_examples() {
        let z = zeta_critical(0.0, 0.3, 200).unwrap();
        assert!((z.re + 1.460_354_508_8).abs() < 1e-9 && z.im == 0.0);
        let up = zeta_critical(50.0, 0.3, 200).unwrap();
        let down = zeta_critical(-50.0, 0.3, 200).unwrap();
        assert_eq!(up, down.conj());
        assert!(zeta_critical(1.0, 0.0, 5).is_err());
    }

    #[test]
    fn direct_sum_counts_terms() {
        assert_eq!(direct_sum(real(2.0), 1).re, 1.0);
        assert_eq!(direct_sum(real(2.0), 2).re, 1.25);
    }
}
