//! The generic delta expansion for turning-point integrals
//!
//! ```text
//! I = ∫_{x-}^{x+} [F - f(x)]^ν g(x) dx,      f(x±) = F,  ν > -1
//! ```
//!
//! A solvable comparison function `f0(c, x)` with level `F0 = f0(c, x±)` is
//! introduced and the integrand rewritten as
//!
//! ```text
//! [F0 - f0]^ν [1 + δ Δ(x)]^ν g,       Δ = (F - F0 - f + f0) / (F0 - f0)
//! ```
//!
//! Expanding in δ and setting δ = 1 gives a family of series, one per value
//! of the interpolant parameter `c`, that converge to `I` whenever
//! `sup |Δ| < 1`. At finite order the residual dependence on `c` is removed
//! by requiring the truncated sum to be stationary in `c`.
//!
//! The engine stores the interpolant's stiffness-like parameter `c` (for a
//! quadratic `f0 = c·s·(x - m)²`) rather than `λ`, since the optimum of
//! several applications corresponds to `λ² < 0` while `c` stays positive.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quad::{self, Abscissa, Estimate, QuadOptions};
use crate::specfun::binomial_coefficient_nu;

/// A real function of one variable, shareable across threads.
pub type Curve = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `F - f(x)` evaluated at a node with known endpoint distances.
pub type DepthFn = Arc<dyn Fn(&Abscissa) -> f64 + Send + Sync>;

/// Which endpoints of the integration interval are turning points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Turning {
    pub lower: bool,
    pub upper: bool,
}

/// The integral `∫ [F - f(x)]^ν g(x) dx` over `[x_minus, x_plus]` as data.
#[derive(Clone)]
pub struct TurningPointIntegral {
    nu: f64,
    x_minus: f64,
    x_plus: f64,
    level: f64,
    potential: Curve,
    weight: Curve,
    depth: DepthFn,
    turning: Turning,
}

impl fmt::Debug for TurningPointIntegral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TurningPointIntegral")
            .field("nu", &self.nu)
            .field("x_minus", &self.x_minus)
            .field("x_plus", &self.x_plus)
            .field("level", &self.level)
            .field("turning", &self.turning)
            .finish_non_exhaustive()
    }
}

/// Builder for [`TurningPointIntegral`].
pub struct TurningPointBuilder {
    nu: f64,
    x_minus: f64,
    x_plus: f64,
    level: f64,
    potential: Curve,
    weight: Curve,
    depth: Option<DepthFn>,
}

impl TurningPointBuilder {
    /// Weight function `g(x)`; defaults to 1.
    pub fn weight(mut self, g: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.weight = Arc::new(g);
        self
    }

    /// Constant weight.
    pub fn constant_weight(self, g: f64) -> Self {
        self.weight(move |_| g)
    }

    /// An algebraically factored `F - f(x)` that stays accurate next to the
    /// turning points. Without it the builder uses `F - f(x)` verbatim.
    pub fn depth(mut self, depth: impl Fn(&Abscissa) -> f64 + Send + Sync + 'static) -> Self {
        self.depth = Some(Arc::new(depth));
        self
    }

    pub fn build(self) -> Result<TurningPointIntegral> {
        if !(self.nu > -1.0) {
            return Err(Error::domain("turning-point integral", format!("exponent ν = {} must exceed -1", self.nu)));
        }
        if !(self.x_minus < self.x_plus) || !self.x_minus.is_finite() || !self.x_plus.is_finite() {
            return Err(Error::InvalidBracket {
                lo: self.x_minus,
                hi: self.x_plus,
            });
        }
        let depth = match self.depth {
            Some(d) => d,
            None => {
                let f = self.potential.clone();
                let level = self.level;
                Arc::new(move |p: &Abscissa| level - f(p.x)) as DepthFn
            }
        };
        let (lo, hi) = (self.x_minus, self.x_plus);
        let len = hi - lo;
        let samples = 256;
        let mut peak = 0.0f64;
        let mut lowest = f64::INFINITY;
        for k in 0..samples {
            let x = lo + (k as f64 + 0.5) * len / samples as f64;
            let d = depth(&Abscissa::plain(x, lo, hi));
            peak = peak.max(d.abs());
            lowest = lowest.min(d);
        }
        if !(lowest > -1e-10 * peak) {
            return Err(Error::domain(
                "turning-point integral",
                format!("F - f(x) reaches {lowest:e} inside the interval"),
            ));
        }
        let at_lower = depth(&Abscissa {
            x: lo,
            from_lower: 0.0,
            to_upper: len,
        });
        let at_upper = depth(&Abscissa {
            x: hi,
            from_lower: len,
            to_upper: 0.0,
        });
        let turning = Turning {
            lower: at_lower.abs() <= 1e-10 * peak,
            upper: at_upper.abs() <= 1e-10 * peak,
        };
        Ok(TurningPointIntegral {
            nu: self.nu,
            x_minus: lo,
            x_plus: hi,
            level: self.level,
            potential: self.potential,
            weight: self.weight,
            depth,
            turning,
        })
    }
}

impl TurningPointIntegral {
    /// Start describing `∫ [level - f(x)]^ν g(x) dx` on `[x_minus, x_plus]`.
    pub fn builder(
        nu: f64,
        x_minus: f64,
        x_plus: f64,
        level: f64,
        potential: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> TurningPointBuilder {
        TurningPointBuilder {
            nu,
            x_minus,
            x_plus,
            level,
            potential: Arc::new(potential),
            weight: Arc::new(|_| 1.0),
            depth: None,
        }
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn x_minus(&self) -> f64 {
        self.x_minus
    }

    pub fn x_plus(&self) -> f64 {
        self.x_plus
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn turning(&self) -> Turning {
        self.turning
    }

    pub fn potential(&self, x: f64) -> f64 {
        (self.potential)(x)
    }

    pub fn weight(&self, x: f64) -> f64 {
        (self.weight)(x)
    }

    /// `F - f(x)` at a node.
    pub fn depth(&self, p: &Abscissa) -> f64 {
        (self.depth)(p)
    }

    /// The original integrand `[F - f(x)]^ν g(x)`.
    pub fn integrand(&self, p: &Abscissa) -> f64 {
        signed_pow(self.depth(p), self.nu) * self.weight(p.x)
    }

    fn len(&self) -> f64 {
        self.x_plus - self.x_minus
    }

    /// The interpolant `f0 ≡ f`, for which the expansion has a single term.
    pub fn as_family(&self) -> TargetFamily {
        TargetFamily { spec: self.clone() }
    }
}

fn signed_pow(base: f64, nu: f64) -> f64 {
    if nu == -0.5 {
        1.0 / base.sqrt()
    } else if nu == 0.5 {
        base.sqrt()
    } else {
        base.powf(nu)
    }
}

/// A one-parameter family of solvable comparison functions `f0(c, x)`.
pub trait InterpolantFamily: Send + Sync {
    /// `f0(c, x)`.
    fn value(&self, param: f64, x: f64) -> f64;

    /// `F0(c) = f0(c, x±)`.
    fn level(&self, param: f64) -> f64;

    /// `F0(c) - f0(c, x)`. Implementations with known factorizations
    /// should override this to stay accurate near the turning points.
    fn gap(&self, param: f64, p: &Abscissa) -> f64 {
        self.level(param) - self.value(param, p.x)
    }
}

/// Quadratic comparison function `f0(c, x) = s·c·(x - m)²` whose roots of
/// `F0 - f0` sit at `m ± h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFamily {
    center: f64,
    half_width: f64,
    scale: f64,
    interval: (f64, f64),
}

impl QuadraticFamily {
    /// Parabola with `F0 - f0` vanishing at `root_lo` and `root_hi`.
    /// `interval` is the integration interval; when a root coincides with
    /// an interval end the node's exact endpoint distance is used.
    pub fn new(root_lo: f64, root_hi: f64, scale: f64, interval: (f64, f64)) -> Self {
        Self {
            center: 0.5 * (root_lo + root_hi),
            half_width: 0.5 * (root_hi - root_lo),
            scale,
            interval,
        }
    }

    /// Parabola sharing both turning points of `spec`.
    pub fn matching(spec: &TurningPointIntegral, scale: f64) -> Self {
        Self::new(spec.x_minus, spec.x_plus, scale, (spec.x_minus, spec.x_plus))
    }

    pub fn at(&self, param: f64) -> Interpolant<'_> {
        Interpolant::new(self, param)
    }
}

impl InterpolantFamily for QuadraticFamily {
    fn value(&self, param: f64, x: f64) -> f64 {
        let d = x - self.center;
        self.scale * param * d * d
    }

    fn level(&self, param: f64) -> f64 {
        self.scale * param * self.half_width * self.half_width
    }

    fn gap(&self, param: f64, p: &Abscissa) -> f64 {
        let root_lo = self.center - self.half_width;
        let root_hi = self.center + self.half_width;
        let above_lo = if root_lo == self.interval.0 {
            p.from_lower
        } else {
            p.x - root_lo
        };
        let below_hi = if root_hi == self.interval.1 {
            p.to_upper
        } else {
            root_hi - p.x
        };
        self.scale * param * above_lo * below_hi
    }
}

/// The degenerate family `f0 ≡ f`, independent of its parameter.
#[derive(Clone)]
pub struct TargetFamily {
    spec: TurningPointIntegral,
}

impl InterpolantFamily for TargetFamily {
    fn value(&self, _param: f64, x: f64) -> f64 {
        self.spec.potential(x)
    }

    fn level(&self, _param: f64) -> f64 {
        self.spec.level
    }

    fn gap(&self, _param: f64, p: &Abscissa) -> f64 {
        self.spec.depth(p)
    }
}

/// A family member at a fixed parameter value.
#[derive(Clone, Copy)]
pub struct Interpolant<'a> {
    family: &'a dyn InterpolantFamily,
    param: f64,
}

impl<'a> Interpolant<'a> {
    pub fn new(family: &'a dyn InterpolantFamily, param: f64) -> Self {
        Self { family, param }
    }

    pub fn param(&self) -> f64 {
        self.param
    }

    pub fn value(&self, x: f64) -> f64 {
        self.family.value(self.param, x)
    }

    pub fn level(&self) -> f64 {
        self.family.level(self.param)
    }

    pub fn gap(&self, p: &Abscissa) -> f64 {
        self.family.gap(self.param, p)
    }
}

impl fmt::Debug for Interpolant<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Interpolant").field("param", &self.param).finish()
    }
}

/// A truncated delta expansion evaluated at δ = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaExpansion {
    pub order: usize,
    /// `binomial(ν, n) · ℓ_n` for n = 0..=order.
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    /// Certified `sup |Δ|` on the interval; the series converges iff < 1.
    pub max_abs_delta: f64,
}

impl DeltaExpansion {
    pub(crate) fn from_terms(terms: Vec<f64>, max_abs_delta: f64) -> Self {
        let mut partial_sums = Vec::with_capacity(terms.len());
        let mut running = 0.0;
        for t in &terms {
            running += t;
            partial_sums.push(running);
        }
        Self {
            order: terms.len().saturating_sub(1),
            terms,
            partial_sums,
            max_abs_delta,
        }
    }

    /// The order-N partial sum.
    pub fn sum(&self) -> f64 {
        *self.partial_sums.last().unwrap_or(&0.0)
    }

    pub fn is_certified(&self) -> bool {
        self.max_abs_delta < 1.0
    }
}

const ENDPOINT_OFFSET: f64 = 1e-8;

fn delta_at(spec: &TurningPointIntegral, interp: &Interpolant<'_>, p: &Abscissa) -> Result<f64> {
    let gap = interp.gap(p);
    if !(gap > 0.0) {
        return Err(Error::NonPositiveGap { x: p.x, gap });
    }
    Ok(spec.depth(p) / gap - 1.0)
}

fn node_at(spec: &TurningPointIntegral, x: f64) -> Abscissa {
    let len = spec.len();
    let off = ENDPOINT_OFFSET * len;
    if x <= spec.x_minus {
        Abscissa {
            x: spec.x_minus + off,
            from_lower: off,
            to_upper: len - off,
        }
    } else if x >= spec.x_plus {
        Abscissa {
            x: spec.x_plus - off,
            from_lower: len - off,
            to_upper: off,
        }
    } else {
        Abscissa::plain(x, spec.x_minus, spec.x_plus)
    }
}

/// `Δ(x) = (F - F0 - f(x) + f0(x)) / (F0 - f0(x))`.
///
/// At the interval ends, where both numerator and denominator vanish, the
/// one-sided limit is taken by evaluating a relative distance 1e-8 inside.
pub fn delta_ratio(spec: &TurningPointIntegral, interp: &Interpolant<'_>, x: f64) -> Result<f64> {
    if x < spec.x_minus || x > spec.x_plus || !x.is_finite() {
        return Err(Error::domain(
            "delta_ratio",
            format!("x = {x} outside [{}, {}]", spec.x_minus, spec.x_plus),
        ));
    }
    delta_at(spec, interp, &node_at(spec, x))
}

const CERTIFY_GRID: usize = 1024;

/// Certified `sup |Δ(x)|` over the interval: a 1024-point grid plus the
/// endpoint limits, refined by golden-section search around the grid
/// maximum. The expansion converges when the result is below one.
pub fn certify_convergence(spec: &TurningPointIntegral, interp: &Interpolant<'_>) -> Result<f64> {
    let len = spec.len();
    let abs_delta = |x: f64| delta_ratio(spec, interp, x).map(f64::abs);
    let xs: Vec<f64> = std::iter::once(spec.x_minus)
        .chain((0..CERTIFY_GRID).map(|k| spec.x_minus + (k as f64 + 0.5) * len / CERTIFY_GRID as f64))
        .chain(std::iter::once(spec.x_plus))
        .collect();
    let mut best = (0usize, -1.0f64);
    for (i, &x) in xs.iter().enumerate() {
        let v = abs_delta(x)?;
        if v > best.1 {
            best = (i, v);
        }
    }
    let (i, mut sup) = best;
    let mut a = xs[i.saturating_sub(1)];
    let mut b = xs[(i + 1).min(xs.len() - 1)];
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = abs_delta(c)?;
    let mut fd = abs_delta(d)?;
    for _ in 0..60 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = abs_delta(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = abs_delta(d)?;
        }
        if (b - a).abs() < 1e-14 * len {
            break;
        }
    }
    sup = sup.max(fc).max(fd);
    Ok(sup)
}

/// Sine substitution removing square-root singularities at turning points.
/// Calls `f(node, jacobian, out)` and integrates the vector result.
fn integrate_over<F>(spec: &TurningPointIntegral, dim: usize, opts: &QuadOptions, mut f: F) -> Result<(Vec<f64>, f64)>
where
    F: FnMut(&Abscissa, &mut [f64]),
{
    let (lo, hi) = (spec.x_minus, spec.x_plus);
    let len = hi - lo;
    let smooth_after_substitution = {
        let p = 2.0 * spec.nu + 1.0;
        p >= 0.0 && p.fract() == 0.0
    };
    let Turning { lower, upper } = spec.turning;
    if !(lower || upper) || !smooth_after_substitution {
        // General exponent or no turning point: double-exponential rule.
        let mut out = vec![0.0; dim];
        let mut err = 0.0;
        for k in 0..dim {
            let mut buf = vec![0.0; dim];
            let e = quad::tanh_sinh(
                |p| {
                    f(&p, &mut buf);
                    buf[k]
                },
                lo,
                hi,
                opts.tol,
            )?;
            out[k] = e.value;
            err += e.error;
        }
        return Ok((out, err));
    }
    let mut buf = vec![0.0; dim];
    if lower && upper {
        let h = 0.5 * len;
        let c = lo + h;
        quad::adaptive_gauss_legendre_vec(
            |theta, out: &mut [f64]| {
                let s_up = (FRAC_PI_4 - 0.5 * theta).sin();
                let s_lo = (FRAC_PI_4 + 0.5 * theta).sin();
                let p = Abscissa {
                    x: c + h * theta.sin(),
                    from_lower: 2.0 * h * s_lo * s_lo,
                    to_upper: 2.0 * h * s_up * s_up,
                };
                f(&p, &mut buf);
                let jac = h * theta.cos();
                for (o, b) in out.iter_mut().zip(buf.iter()) {
                    *o = b * jac;
                }
            },
            dim,
            -FRAC_PI_2,
            FRAC_PI_2,
            opts,
        )
    } else {
        quad::adaptive_gauss_legendre_vec(
            |theta, out: &mut [f64]| {
                let s = (FRAC_PI_4 - 0.5 * theta).sin();
                let near = 2.0 * len * s * s;
                let far = len * theta.sin();
                let p = if upper {
                    Abscissa {
                        x: lo + far,
                        from_lower: far,
                        to_upper: near,
                    }
                } else {
                    Abscissa {
                        x: hi - far,
                        from_lower: near,
                        to_upper: far,
                    }
                };
                f(&p, &mut buf);
                let jac = len * theta.cos();
                for (o, b) in out.iter_mut().zip(buf.iter()) {
                    *o = b * jac;
                }
            },
            dim,
            0.0,
            FRAC_PI_2,
            opts,
        )
    }
}

/// Direct evaluation of the original integral, with an error estimate.
pub fn quadrature_oracle(spec: &TurningPointIntegral) -> Result<Estimate> {
    quadrature_oracle_with(spec, &QuadOptions::default())
}

pub fn quadrature_oracle_with(spec: &TurningPointIntegral, opts: &QuadOptions) -> Result<Estimate> {
    let (v, err) = integrate_over(spec, 1, opts, |p, out| out[0] = spec.integrand(p))?;
    Ok(Estimate {
        value: v[0],
        error: err,
    })
}

/// The raw integrals `ℓ_n = ∫ (F0 - f0)^ν Δ^n g dx` for n = 0..=order.
fn raw_moments(
    spec: &TurningPointIntegral,
    interp: &Interpolant<'_>,
    order: usize,
    opts: &QuadOptions,
) -> Result<Vec<f64>> {
    let mut bad: Option<Error> = None;
    let (moments, _) = integrate_over(spec, order + 1, opts, |p, out| {
        let gap = interp.gap(p);
        if !(gap > 0.0) {
            bad.get_or_insert(Error::NonPositiveGap { x: p.x, gap });
            out.iter_mut().for_each(|v| *v = 0.0);
            return;
        }
        let delta = spec.depth(p) / gap - 1.0;
        let mut acc = signed_pow(gap, spec.nu) * spec.weight(p.x);
        for o in out.iter_mut() {
            *o = acc;
            acc *= delta;
        }
    })?;
    match bad {
        Some(e) => Err(e),
        None => Ok(moments),
    }
}

/// The weighted term `binomial(ν, n) · ℓ_n` of the expansion.
pub fn series_term(spec: &TurningPointIntegral, interp: &Interpolant<'_>, n: usize) -> Result<f64> {
    let opts = QuadOptions::default();
    let mut bad: Option<Error> = None;
    let (v, _) = integrate_over(spec, 1, &opts, |p, out| {
        let gap = interp.gap(p);
        if !(gap > 0.0) {
            bad.get_or_insert(Error::NonPositiveGap { x: p.x, gap });
            out[0] = 0.0;
            return;
        }
        let delta = spec.depth(p) / gap - 1.0;
        out[0] = signed_pow(gap, spec.nu) * spec.weight(p.x) * delta.powi(n as i32);
    })?;
    if let Some(e) = bad {
        return Err(e);
    }
    Ok(binomial_coefficient_nu(spec.nu, n) * v[0])
}

/// The expansion truncated at `order`, with its convergence certificate.
pub fn evaluate(spec: &TurningPointIntegral, interp: &Interpolant<'_>, order: usize) -> Result<DeltaExpansion> {
    let max_abs_delta = certify_convergence(spec, interp)?;
    let terms = expansion_terms(spec, interp, order)?;
    Ok(DeltaExpansion::from_terms(terms, max_abs_delta))
}

fn expansion_terms(spec: &TurningPointIntegral, interp: &Interpolant<'_>, order: usize) -> Result<Vec<f64>> {
    let moments = raw_moments(spec, interp, order, &QuadOptions::default())?;
    Ok(moments
        .into_iter()
        .enumerate()
        .map(|(n, l)| binomial_coefficient_nu(spec.nu, n) * l)
        .collect())
}

/// Order-N partial sum as a function of the family parameter, without the
/// convergence certificate (the objective of the stationarity search).
pub fn partial_sum(
    spec: &TurningPointIntegral,
    family: &dyn InterpolantFamily,
    param: f64,
    order: usize,
) -> Result<f64> {
    let terms = expansion_terms(spec, &Interpolant::new(family, param), order)?;
    Ok(terms.iter().sum())
}

/// Settings of the stationarity search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PmsOptions {
    /// Relative finite-difference step.
    pub step_rel: f64,
    /// Lower bound on the finite-difference step.
    pub step_min: f64,
    /// Bisection stops once the bracket is narrower than this (relative to max(1, |c|)).
    pub param_tol: f64,
    /// Number of intervals in the initial derivative-sign scan.
    pub scan_intervals: usize,
}

impl Default for PmsOptions {
    fn default() -> Self {
        Self {
            step_rel: 1e-6,
            step_min: 1e-6,
            param_tol: 1e-10,
            scan_intervals: 64,
        }
    }
}

/// Result of the stationarity search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PmsSolution {
    /// Optimal family parameter.
    pub param: f64,
    /// Objective (partial sum) at the optimum.
    pub value: f64,
    /// `|∂ objective / ∂ param|` at the optimum.
    pub residual: f64,
    pub bracket: (f64, f64),
    pub order: usize,
    /// True when no sign change was found and the point of smallest
    /// `|∂/∂param|` was returned instead.
    pub fallback: bool,
}

/// Central difference with one Richardson extrapolation.
pub fn sensitivity<F>(objective: &mut F, param: f64, opts: &PmsOptions) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let h = opts.step_min.max(opts.step_rel * param.abs());
    let mut central = |h: f64| -> Result<f64> { Ok((objective(param + h)? - objective(param - h)?) / (2.0 * h)) };
    let coarse = central(h)?;
    let fine = central(0.5 * h)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Stationary point of an arbitrary objective on `bracket`.
///
/// The derivative sign is scanned on a uniform grid; the first sign change
/// (smallest parameter) is bisected. Without a sign change the grid point
/// with the smallest `|derivative|` is returned and flagged as a fallback.
pub fn pms_optimize_fn<F>(mut objective: F, bracket: (f64, f64), order: usize, opts: &PmsOptions) -> Result<PmsSolution>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (lo, hi) = bracket;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidBracket { lo, hi });
    }
    let n = opts.scan_intervals.max(1);
    let grid: Vec<f64> = (0..=n).map(|k| lo + (hi - lo) * k as f64 / n as f64).collect();
    let mut derivs = Vec::with_capacity(grid.len());
    for &p in &grid {
        derivs.push(sensitivity(&mut objective, p, opts)?);
    }
    let any_nonzero = derivs.iter().any(|&d| d != 0.0);
    let mut root = None;
    if any_nonzero {
        for i in 0..grid.len() {
            if derivs[i] == 0.0 {
                root = Some((grid[i], grid[i]));
                break;
            }
            if i + 1 < grid.len() && derivs[i] * derivs[i + 1] < 0.0 {
                root = Some((grid[i], grid[i + 1]));
                break;
            }
        }
    }
    match root {
        Some((mut a, mut b)) => {
            let mut da = sensitivity(&mut objective, a, opts)?;
            while (b - a) > opts.param_tol * a.abs().max(b.abs()).max(1.0) {
                let m = 0.5 * (a + b);
                let dm = sensitivity(&mut objective, m, opts)?;
                if dm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if (dm < 0.0) == (da < 0.0) {
                    a = m;
                    da = dm;
                } else {
                    b = m;
                }
            }
            let param = 0.5 * (a + b);
            let residual = sensitivity(&mut objective, param, opts)?.abs();
            Ok(PmsSolution {
                param,
                value: objective(param)?,
                residual,
                bracket,
                order,
                fallback: false,
            })
        }
        None => {
            let (i, d) = derivs
                .iter()
                .enumerate()
                .fold((0, f64::INFINITY), |best, (i, d)| if d.abs() < best.1 { (i, d.abs()) } else { best });
            Ok(PmsSolution {
                param: grid[i],
                value: objective(grid[i])?,
                residual: d,
                bracket,
                order,
                fallback: true,
            })
        }
    }
}

/// Stationary point of the order-N partial sum over a family parameter.
pub fn pms_optimize(
    spec: &TurningPointIntegral,
    family: &dyn InterpolantFamily,
    order: usize,
    bracket: (f64, f64),
    opts: &PmsOptions,
) -> Result<PmsSolution> {
    pms_optimize_fn(|c| partial_sum(spec, family, c, order), bracket, order, opts)
}
