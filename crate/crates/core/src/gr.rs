//! Light deflection and perihelion precession in the Schwarzschild metric
//! `B(r) = 1/A(r) = 1 - 2GM/r`.
//!
//! Lengths are in any consistent unit; `gm` is the geometrized mass
//! `G·M/c²` in that unit. Every function takes it directly.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::method::{QuadraticFamily, TurningPointIntegral};
use crate::quad::{self, QuadOptions};
use crate::specfun::CompensatedSum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricParams {
    gm: f64,
}

impl MetricParams {
    /// `gm = 0` (flat space) is accepted so that weak-field limits can be
    /// taken continuously.
    pub fn new(gm: f64) -> Result<Self> {
        if !(gm >= 0.0) || !gm.is_finite() {
            return Err(Error::domain("MetricParams", format!("GM = {gm} must be >= 0")));
        }
        Ok(Self { gm })
    }

    /// `G/c² · M`.
    pub fn from_mass(g_over_c2: f64, mass: f64) -> Result<Self> {
        Self::new(g_over_c2 * mass)
    }

    pub fn gm(&self) -> f64 {
        self.gm
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeflectionInput {
    r0: f64,
}

impl DeflectionInput {
    pub fn new(r0: f64) -> Result<Self> {
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(Error::domain("DeflectionInput", format!("closest approach r0 = {r0} must be > 0")));
        }
        Ok(Self { r0 })
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }
}

/// A bound orbit between perihelion `r_minus` and aphelion `r_plus`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitInput {
    r_minus: f64,
    r_plus: f64,
}

impl OrbitInput {
    pub fn new(r_minus: f64, r_plus: f64) -> Result<Self> {
        if !(r_minus > 0.0 && r_minus <= r_plus && r_plus.is_finite()) {
            return Err(Error::domain(
                "OrbitInput",
                format!("need 0 < r- <= r+, got r- = {r_minus}, r+ = {r_plus}"),
            ));
        }
        Ok(Self { r_minus, r_plus })
    }

    pub fn r_minus(&self) -> f64 {
        self.r_minus
    }

    pub fn r_plus(&self) -> f64 {
        self.r_plus
    }

    /// Semimajor axis `(r- + r+)/2`.
    pub fn semimajor_axis(&self) -> f64 {
        0.5 * (self.r_minus + self.r_plus)
    }

    /// Semilatus rectum `L`, `1/L = (1/r+ + 1/r-)/2`.
    pub fn semilatus_rectum(&self) -> f64 {
        2.0 * self.r_minus * self.r_plus / (self.r_minus + self.r_plus)
    }

    pub fn eccentricity(&self) -> f64 {
        (self.r_plus - self.r_minus) / (self.r_plus + self.r_minus)
    }

    /// `z+ = 1/r-`.
    pub fn z_plus(&self) -> f64 {
        1.0 / self.r_minus
    }

    /// `z- = 1/r+`.
    pub fn z_minus(&self) -> f64 {
        1.0 / self.r_plus
    }
}

/// Orbit with semimajor axis `a` and eccentricity `ecc`: `r± = a(1 ± ecc)`.
pub fn orbit_from_kepler(a: f64, ecc: f64) -> Result<OrbitInput> {
    if !(a > 0.0) || !a.is_finite() || !(0.0..1.0).contains(&ecc) {
        return Err(Error::domain(
            "orbit_from_kepler",
            format!("need a > 0 and 0 <= ecc < 1, got a = {a}, ecc = {ecc}"),
        ));
    }
    OrbitInput::new(a * (1.0 - ecc), a * (1.0 + ecc))
}

/// Radii `(3GM, 8GM/π)` at which the exact and the first-order optimized
/// deflection angles diverge.
pub fn photon_sphere(m: &MetricParams) -> (f64, f64) {
    (3.0 * m.gm, 8.0 * m.gm / PI)
}

/// Einstein's weak-field deflection `4GM/r0`.
pub fn deflection_weak_field(m: &MetricParams, d: &DeflectionInput) -> f64 {
    4.0 * m.gm / d.r0
}

/// Exact deflection angle.
///
/// With `ζ = r0/r = 1 - v²` the integral becomes
/// `4 ∫₀¹ [q^{-1/2} - (1+ζ)^{-1/2}] dv`, `q = (1+ζ) - 2ε(1+ζ+ζ²)`, `ε = GM/r0`,
/// whose flat-space part integrates to π analytically. The difference is
/// formed without cancellation, so tiny angles keep full relative accuracy.
pub fn deflection_exact(m: &MetricParams, d: &DeflectionInput) -> Result<f64> {
    let (sphere, _) = photon_sphere(m);
    if d.r0 <= sphere {
        return Err(Error::domain(
            "deflection_exact",
            format!("r0 = {} is inside the photon sphere 3GM = {sphere}", d.r0),
        ));
    }
    let eps = m.gm / d.r0;
    let integrand = |v: f64| {
        let zeta = 1.0 - v * v;
        let q0 = 1.0 + zeta;
        let shift = 2.0 * eps * (1.0 + zeta + zeta * zeta);
        let q = q0 - shift;
        let (sq, sq0) = (q.sqrt(), q0.sqrt());
        4.0 * shift / (sq * sq0 * (sq + sq0))
    };
    let opts = QuadOptions {
        tol: 1e-10,
        max_depth: 40,
    };
    Ok(quad::adaptive_gauss_legendre(integrand, 0.0, 1.0, &opts)?.value)
}

/// First-order optimized deflection `π[(1 - 8GM/(π r0))^{-1/2} - 1]`.
pub fn deflection_pms(m: &MetricParams, d: &DeflectionInput) -> Result<f64> {
    let (_, sphere) = photon_sphere(m);
    if d.r0 <= sphere {
        return Err(Error::domain(
            "deflection_pms",
            format!("r0 = {} is at or inside 8GM/π = {sphere}", d.r0),
        ));
    }
    let x = 8.0 * m.gm / (PI * d.r0);
    Ok(PI * (-0.5 * (-x).ln_1p()).exp_m1())
}

/// Optimal shift `λ² = -8GM r0²/π` of the comparison coefficient `r0³ + λ²`.
pub fn deflection_lambda_pms(m: &MetricParams, d: &DeflectionInput) -> f64 {
    -8.0 * m.gm * d.r0 * d.r0 / PI
}

/// The deflection integral `2 r0^{3/2} ∫₀^{1/r0} [F - f(z)]^{-1/2} dz` with
/// `f = r0³z² - 2GM r0³z³`, `F = r0 - 2GM`. Its value is `Δφ + π`; only the
/// upper end is a turning point.
pub fn deflection_integral(m: &MetricParams, d: &DeflectionInput) -> Result<TurningPointIntegral> {
    let (gm, r0) = (m.gm, d.r0);
    if r0 <= 3.0 * gm {
        return Err(Error::domain(
            "deflection_integral",
            format!("r0 = {r0} is inside the photon sphere 3GM = {}", 3.0 * gm),
        ));
    }
    let r3 = r0 * r0 * r0;
    let inv = 1.0 / r0;
    TurningPointIntegral::builder(-0.5, 0.0, inv, r0 - 2.0 * gm, move |z| r3 * z * z * (1.0 - 2.0 * gm * z))
        .constant_weight(2.0 * r0.powf(1.5))
        .depth(move |p| r3 * p.to_upper * ((inv + p.x) - 2.0 * gm * (inv * inv + p.x * inv + p.x * p.x)))
        .build()
}

/// Comparison family `f0 = c z²`, parameter `c = r0³ + λ²`.
pub fn deflection_family(d: &DeflectionInput) -> QuadraticFamily {
    let inv = 1.0 / d.r0;
    QuadraticFamily::new(-inv, inv, 1.0, (0.0, inv))
}

fn check_orbit(op: &'static str, m: &MetricParams, o: &OrbitInput) -> Result<()> {
    let l = o.semilatus_rectum();
    if l <= 6.0 * m.gm {
        return Err(Error::domain(op, format!("semilatus rectum L = {l} must exceed 6GM = {}", 6.0 * m.gm)));
    }
    Ok(())
}

/// Leading-order precession `6πGM/L`.
pub fn precession_leading(m: &MetricParams, o: &OrbitInput) -> f64 {
    6.0 * PI * m.gm / o.semilatus_rectum()
}

const PRECESSION_NODES: usize = 16;
const PRECESSION_MAX_NODES: usize = 1 << 20;

/// Exact precession per orbit,
/// `Δθ = 2 ∫ [(z+ - z)(z - z-)]^{-1/2} (w^{-1/2} - 1) dz`, `w = 1 - 2GM(z + z- + z+)`.
///
/// Gauss–Chebyshev nodes absorb the weight exactly; the node count doubles
/// until the relative change drops below 1e-10.
pub fn precession_exact(m: &MetricParams, o: &OrbitInput) -> Result<f64> {
    check_orbit("precession_exact", m, o)?;
    let (zm, zp) = (o.z_minus(), o.z_plus());
    let gm = m.gm;
    if 2.0 * gm * (2.0 * zp + zm) >= 1.0 {
        return Err(Error::domain(
            "precession_exact",
            "radial integrand is not real on the orbit (too close to the horizon)".to_string(),
        ));
    }
    let f = |z: f64| {
        let excess = 2.0 * gm * (z + zm + zp);
        let sw = (1.0 - excess).sqrt();
        2.0 * excess / (sw * (1.0 + sw))
    };
    let mut n = PRECESSION_NODES;
    let mut prev = quad::chebyshev_gauss(f, zm, zp, n);
    while n < PRECESSION_MAX_NODES {
        n *= 2;
        let next = quad::chebyshev_gauss(f, zm, zp, n);
        if (next - prev).abs() <= 1e-10 * next.abs() {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NonConvergence {
        what: "precession quadrature",
        estimate: prev,
    })
}

/// First-order optimized precession per orbit,
///
/// ```text
/// Δθ = 2π [ (a(4L² - 48GM·L + 147(GM)²) - 3(GM)²L) / (4a(L - 6GM)² sqrt(1 - 6GM/L)) - 1 ]
/// ```
///
/// evaluated as a difference from 1 so that tiny `GM/L` keeps full precision.
pub fn precession_pms(m: &MetricParams, o: &OrbitInput) -> Result<f64> {
    check_orbit("precession_pms", m, o)?;
    let l = o.semilatus_rectum();
    let u = m.gm / l;
    let rho = l / o.semimajor_axis();
    // (1 - 6u)^{5/2} - 1
    let root = (2.5 * (-6.0 * u).ln_1p()).exp_m1();
    let mut num = CompensatedSum::new();
    num.extend([-48.0 * u, (147.0 - 3.0 * rho) * u * u, -4.0 * root]);
    Ok(2.0 * PI * num.value() / (4.0 * (1.0 + root)))
}

/// `λ_PMS = sqrt(6GM/L)`; the optimal comparison coefficient is `1 - λ²`.
pub fn precession_lambda_pms(m: &MetricParams, o: &OrbitInput) -> f64 {
    (6.0 * m.gm / o.semilatus_rectum()).sqrt()
}

/// The precession integral `2 ∫ [F - f(z)]^{-1/2} dz` with
/// `F - f = (z+ - z)(z - z-)(1 - 2GM(z + z- + z+))`. Its value is `Δθ + 2π`.
pub fn precession_integral(m: &MetricParams, o: &OrbitInput) -> Result<TurningPointIntegral> {
    check_orbit("precession_integral", m, o)?;
    let (zm, zp, gm) = (o.z_minus(), o.z_plus(), m.gm);
    if zm == zp {
        return Err(Error::domain(
            "precession_integral",
            "circular orbit has no radial interval".to_string(),
        ));
    }
    let w = move |z: f64| 1.0 - 2.0 * gm * (z + zm + zp);
    TurningPointIntegral::builder(-0.5, zm, zp, 0.0, move |z| -(zp - z) * (z - zm) * w(z))
        .constant_weight(2.0)
        .depth(move |p| p.to_upper * p.from_lower * w(p.x))
        .build()
}

/// Comparison family with gap `c (z+ - z)(z - z-)`.
pub fn precession_family(o: &OrbitInput) -> QuadraticFamily {
    let (zm, zp) = (o.z_minus(), o.z_plus());
    QuadraticFamily::new(zm, zp, 1.0, (zm, zp))
}
