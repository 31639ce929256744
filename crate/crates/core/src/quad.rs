//! Quadrature rules: adaptive Gauss–Legendre (scalar and vector valued),
//! tanh-sinh, and Gauss–Chebyshev of the first kind.

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A quadrature node together with its distances to both interval ends.
///
/// Near an endpoint `x` alone cannot resolve `x_plus - x` to full relative
/// precision; the rules below compute the distances directly from the
/// substitution variable so integrands with turning points stay accurate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    pub from_lower: f64,
    pub to_upper: f64,
}

impl Abscissa {
    /// Node at `x` inside `[lo, hi]`, distances by plain subtraction.
    pub fn plain(x: f64, lo: f64, hi: f64) -> Self {
        Self {
            x,
            from_lower: x - lo,
            to_upper: hi - x,
        }
    }
}

/// A value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    /// Relative tolerance.
    pub tol: f64,
    /// Maximum bisection depth of the adaptive scheme.
    pub max_depth: u32,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_depth: 20,
        }
    }
}

const GL_ORDER: usize = 20;

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre_rule(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi's initial guess, refined by Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule.reverse();
    rule
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    (p1, n * (x * p1 - p0) / (x * x - 1.0))
}

fn gl20() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre_rule(GL_ORDER))
}

fn gl_panel<F: FnMut(f64, &mut [f64])>(f: &mut F, a: f64, b: f64, out: &mut [f64], scratch: &mut [f64]) {
    out.iter_mut().for_each(|v| *v = 0.0);
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    for &(t, w) in gl20() {
        f(c + h * t, scratch);
        for (o, s) in out.iter_mut().zip(scratch.iter()) {
            *o += w * h * s;
        }
    }
}

/// Adaptive Gauss–Legendre quadrature of a vector-valued integrand.
///
/// Every component shares one subdivision. A panel is accepted once its
/// 20-point estimate and the sum of its two halves differ by at most
/// `tol` times the largest component magnitude of the whole integral.
/// Returns the integral and the summed error estimate.
pub fn adaptive_gauss_legendre_vec<F>(
    mut f: F,
    dim: usize,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> Result<(Vec<f64>, f64)>
where
    F: FnMut(f64, &mut [f64]),
{
    let mut scratch = vec![0.0; dim];
    let mut whole = vec![0.0; dim];
    gl_panel(&mut f, a, b, &mut whole, &mut scratch);
    let mut scale = whole.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    let mut total = vec![0.0; dim];
    let mut err_total = 0.0;
    let mut worst_unconverged = 0.0f64;
    let mut stack = vec![(a, b, whole, 0u32)];
    let mut left = vec![0.0; dim];
    let mut right = vec![0.0; dim];
    while let Some((lo, hi, est, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        gl_panel(&mut f, lo, mid, &mut left, &mut scratch);
        gl_panel(&mut f, mid, hi, &mut right, &mut scratch);
        let diff = est
            .iter()
            .zip(left.iter().zip(right.iter()))
            .fold(0.0f64, |m, (e, (l, r))| m.max((e - (l + r)).abs()));
        let refined_scale = left
            .iter()
            .zip(right.iter())
            .fold(0.0f64, |m, (l, r)| m.max((l + r).abs()));
        if depth == 0 {
            scale = scale.max(refined_scale);
        }
        let ok = diff <= opts.tol * scale || diff == 0.0;
        if ok || depth >= opts.max_depth {
            if !ok {
                worst_unconverged = worst_unconverged.max(diff);
            }
            for ((t, l), r) in total.iter_mut().zip(left.iter()).zip(right.iter()) {
                *t += l + r;
            }
            err_total += diff;
        } else {
            stack.push((lo, mid, left.clone(), depth + 1));
            stack.push((mid, hi, right.clone(), depth + 1));
        }
    }
    if !total.iter().all(|v| v.is_finite()) {
        return Err(Error::NonConvergence {
            what: "adaptive Gauss-Legendre",
            estimate: f64::INFINITY,
        });
    }
    let final_scale = total.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if worst_unconverged > 0.0 && err_total > 10.0 * opts.tol * final_scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NonConvergence {
            what: "adaptive Gauss-Legendre",
            estimate: err_total,
        });
    }
    Ok((total, err_total))
}

/// Scalar adaptive Gauss–Legendre quadrature of `f` over `[a, b]`.
pub fn adaptive_gauss_legendre<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<Estimate> {
    let (v, err) = adaptive_gauss_legendre_vec(|x, out: &mut [f64]| out[0] = f(x), 1, a, b, opts)?;
    Ok(Estimate {
        value: v[0],
        error: err,
    })
}

/// Tanh-sinh (double exponential) quadrature over `[a, b]`.
///
/// The step is halved until two successive levels agree to `tol`
/// relative. The integrand receives accurate endpoint distances, so
/// algebraic endpoint singularities are handled.
pub fn tanh_sinh<F: FnMut(Abscissa) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Estimate> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let t_max = 4.0;
    let node = |t: f64| {
        let u = FRAC_PI_2 * t.sinh();
        let e = (2.0 * u).exp();
        // 1 - tanh u and 1 + tanh u without cancellation.
        let to_upper = 2.0 * h / (e + 1.0);
        let from_lower = 2.0 * h / (1.0 + 1.0 / e);
        let cu = u.cosh();
        let w = h * FRAC_PI_2 * t.cosh() / (cu * cu);
        (
            Abscissa {
                x: c + h * u.tanh(),
                from_lower,
                to_upper,
            },
            w,
        )
    };
    let mut eval = |t: f64| -> f64 {
        let (p, w) = node(t);
        if w == 0.0 || p.from_lower <= 0.0 || p.to_upper <= 0.0 {
            return 0.0;
        }
        let v = f(p) * w;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };

    let mut step = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while k as f64 * step <= t_max {
        let t = k as f64 * step;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut estimate = sum * step;
    for _ in 0..10 {
        step *= 0.5;
        let mut k = 1;
        while k as f64 * step <= t_max {
            let t = k as f64 * step;
            sum += eval(t) + eval(-t);
            k += 2;
        }
        let next = sum * step;
        let err = (next - estimate).abs();
        estimate = next;
        if err <= tol * next.abs() {
            return Ok(Estimate {
                value: next,
                error: err,
            });
        }
    }
    Err(Error::NonConvergence {
        what: "tanh-sinh",
        estimate: (estimate).abs() * tol,
    })
}

/// n-point Gauss–Chebyshev rule for `∫_a^b f(x) / sqrt((b - x)(x - a)) dx`.
pub fn chebyshev_gauss<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, n: usize) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let w = PI / n as f64;
    let mut acc = crate::specfun::CompensatedSum::new();
    for k in 0..n {
        let x = c + h * (PI * (2 * k + 1) as f64 / (2 * n) as f64).cos();
        acc.add(f(x));
    }
    acc.value() * w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let rule = gauss_legendre_rule(GL_ORDER);
        let wsum: f64 = rule.iter().map(|(_, w)| w).sum();
        assert!((wsum - 2.0).abs() < 1e-14);
        // x^38 integrates to 2/39 on [-1, 1].
        let v: f64 = rule.iter().map(|(x, w)| w * x.powi(38)).sum();
        assert!((v - 2.0 / 39.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_smooth_and_peaked_integrands() {
        let opts = QuadOptions::default();
        let e = adaptive_gauss_legendre(|x: f64| x.exp(), 0.0, 1.0, &opts).unwrap();
        assert!((e.value - (1f64.exp() - 1.0)).abs() < 1e-14);
        let eps = 1e-4;
        let lorentz = adaptive_gauss_legendre(|x: f64| eps / (x * x + eps * eps), -1.0, 1.0, &opts).unwrap();
        let exact = 2.0 * (1.0 / eps).atan();
        assert!((lorentz.value - exact).abs() < 1e-11 * exact);
    }

    #[test]
    fn tanh_sinh_endpoint_singularity() {
        // ∫_0^1 dx / sqrt(x (1 - x)) = π
        let e = tanh_sinh(|p| 1.0 / (p.from_lower * p.to_upper).sqrt(), 0.0, 1.0, 1e-13).unwrap();
        assert!((e.value - PI).abs() < 1e-12, "{}", e.value);
        let log = tanh_sinh(|p| p.from_lower.ln(), 0.0, 1.0, 1e-13).unwrap();
        assert!((log.value + 1.0).abs() < 1e-12);
    }

    #[test]
    fn chebyshev_weight_is_exact_for_polynomials() {
        // ∫_{-1}^{1} x^2 / sqrt(1 - x^2) dx = π/2
        let v = chebyshev_gauss(|x| x * x, -1.0, 1.0, 8);
        assert!((v - FRAC_PI_2).abs() < 1e-15);
    }
}
