//! Built-in invariant suites, run by `lde selftest`.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use crate::gr::{self, DeflectionInput, MetricParams};
use crate::oscillators::{self, DuffingParams, PendulumParams};
use crate::specfun;
use crate::wkb::{self, AnharmonicParams, AsymptoticCoeffs, AsymptoticConstants};
use crate::zeta::{self, ZetaSeriesParams};
use crate::{method, Complex64};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SelftestOptions {
    /// Skip the diagonalization-backed wkb suite.
    pub fast: bool,
    /// Constants fed to the asymptotic level formula in the wkb suite.
    pub constants: AsymptoticConstants,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Default)]
struct Suite {
    checks: usize,
    failures: Vec<String>,
}

impl Suite {
    fn check(&mut self, label: &str, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures.push(label.to_string());
        }
    }

    fn close(&mut self, label: &str, got: f64, want: f64, rel: f64) {
        let ok = (got - want).abs() <= rel * want.abs();
        self.checks += 1;
        if !ok {
            self.failures.push(format!("{label}: got {got:e}, want {want:e} (rel {rel:e})"));
        }
    }
}

fn timed(name: &'static str, body: impl FnOnce(&mut Suite)) -> SuiteReport {
    let start = Instant::now();
    let mut s = Suite::default();
    body(&mut s);
    SuiteReport {
        name,
        checks: s.checks,
        failures: s.failures,
        elapsed: start.elapsed(),
    }
}

fn specfun_suite(s: &mut Suite) {
    s.close("K(0)", specfun::elliptic_k(0.0).unwrap_or(f64::NAN), PI / 2.0, 1e-15);
    s.close("J1 first zero", 1.0 + specfun::bessel_j1(3.831_705_970_207_512), 1.0, 1e-14);
    s.close("binomial(-1/2, 2)", specfun::binomial_coefficient_nu(-0.5, 2), 0.375, 1e-15);
    // 1 - 3(1/2) + 3(3/8) - 15/48
    s.close("2F1(1/2, -3; 1; 1)", specfun::hyp2f1_half(3, 1.0), 0.3125, 1e-14);
}

fn method_suite(s: &mut Suite) {
    let p = DuffingParams::new(1.0, 2.0).expect("valid");
    let spec = oscillators::duffing_integral(&p);
    let exact = oscillators::duffing_exact(&p);
    match method::quadrature_oracle(&spec) {
        Ok(e) => s.close("Duffing quadrature", e.value, exact, 1e-10),
        Err(e) => s.check(&format!("Duffing quadrature: {e}"), false),
    }
    let family = oscillators::duffing_family(&p);
    let lam = oscillators::duffing_lambda_pms(&p);
    match method::evaluate(&spec, &family.at(1.0 + lam * lam), 30) {
        Ok(series) => {
            s.check("certificate below one", series.is_certified());
            s.close("engine matches closed form", series.sum(), oscillators::duffing_series(&p, lam, 30).sum(), 1e-10);
        }
        Err(e) => s.check(&format!("engine: {e}"), false),
    }
}

fn oscillators_suite(s: &mut Suite) {
    let worst = [0.01, 0.1, 1.0, 10.0, 100.0, 1e4, 1e6]
        .iter()
        .map(|&g| {
            let p = DuffingParams::new(g, 1.0).expect("valid");
            let exact = oscillators::duffing_exact(&p);
            (oscillators::duffing_period_pms(&p) - exact).abs() / exact
        })
        .fold(0.0, f64::max);
    s.check(&format!("Duffing PMS bound 2.2% (worst {worst:e})"), worst <= 0.022);
    let small = PendulumParams::new(1e-6).expect("valid");
    s.close("pendulum small-amplitude", oscillators::pendulum_period_pms(&small), 2.0 * PI, 1e-10);
    let big = PendulumParams::new(2.0).expect("valid");
    s.close("pendulum at 2 rad", oscillators::pendulum_period_pms(&big), oscillators::pendulum_exact(&big), 0.01);
}

fn gr_suite(s: &mut Suite) {
    let m = MetricParams::new(1.0).expect("valid");
    let far = DeflectionInput::new(1e6).expect("valid");
    match gr::deflection_pms(&m, &far) {
        Ok(v) => s.close("deflection weak field", v, 4e-6, 1e-3),
        Err(e) => s.check(&format!("deflection: {e}"), false),
    }
    let near = DeflectionInput::new(10.0).expect("valid");
    match (gr::deflection_exact(&m, &near), gr::deflection_pms(&m, &near)) {
        (Ok(exact), Ok(pms)) => s.check(
            "PMS beats weak field at 10 gm",
            (pms - exact).abs() < (gr::deflection_weak_field(&m, &near) - exact).abs(),
        ),
        _ => s.check("deflection at 10 gm", false),
    }
    let orbit = gr::orbit_from_kepler(1e6, 0.25).expect("valid");
    match (gr::precession_exact(&m, &orbit), gr::precession_pms(&m, &orbit)) {
        (Ok(exact), Ok(pms)) => s.close("precession PMS vs quadrature", pms, exact, 1e-6),
        _ => s.check("precession at gm/L ~ 1e-6", false),
    }
}

fn zeta_suite(s: &mut Suite) {
    let three = Complex64::new(3.0, 0.0);
    let reference = match zeta::zeta_reference(three) {
        Ok(r) => r.value,
        Err(e) => return s.check(&format!("zeta(3) reference: {e}"), false),
    };
    s.close("zeta(3) reference", reference.re, 1.202_056_903_159_594_2, 1e-14);
    match ZetaSeriesParams::new(three, zeta::zeta_lambda_pms(3), 100) {
        Ok(p) => s.close("zeta(3) accelerated", zeta::zeta_accelerated(&p).re, reference.re, 1e-14),
        Err(e) => s.check(&format!("zeta params: {e}"), false),
    }
    let tau = 50.0;
    match (zeta::zeta_critical(tau, 0.3, 200), zeta::zeta_reference(Complex64::new(0.5, tau))) {
        (Ok(v), Ok(r)) => s.check("critical line at tau = 50", (v - r.value).norm() <= 1e-8),
        _ => s.check("critical line at tau = 50", false),
    }
}

fn wkb_suite(s: &mut Suite, constants: &AsymptoticConstants) {
    let sets = [(1.0, 0.5, 2.0, 8000.0), (1.0, 1.0, 1.0, 4.0)];
    for (hbar, mass, omega, mu) in sets {
        let p = AnharmonicParams::new(hbar, mass, omega, mu).expect("valid");
        let exact = match wkb::exact_spectrum_oracle(&p, 30) {
            Ok(v) => v,
            Err(e) => return s.check(&format!("oracle: {e}"), false),
        };
        let coeffs = AsymptoticCoeffs::with_constants(&p, constants);
        for n in [10u32, 20, 30] {
            s.close(&format!("asymptotic level {n} (mu = {mu})"), coeffs.energy(n), exact[n as usize], 1e-3);
        }
        match wkb::solve_level(&p, 5) {
            Ok(l) => s.close(&format!("quantized level 5 (mu = {mu})"), l.energy, exact[5], 1e-6),
            Err(e) => s.check(&format!("level 5: {e}"), false),
        }
    }
}

/// Runs every suite in a fixed order.
pub fn run_selftest(opts: &SelftestOptions) -> Vec<SuiteReport> {
    let mut out = vec![
        timed("specfun", specfun_suite),
        timed("method", method_suite),
        timed("oscillators", oscillators_suite),
        timed("gr", gr_suite),
        timed("zeta", zeta_suite),
    ];
    if !opts.fast {
        let constants = opts.constants;
        out.push(timed("wkb", move |s| wkb_suite(s, &constants)));
    }
    out
}
