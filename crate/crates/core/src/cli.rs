//! Command-line front end. Every subcommand writes CSV (header row, comma
//! separated, `.` decimal point) to stdout or `--out`.
//!
//! Exit codes: 0 success, 2 usage or domain error, 3 numerical
//! non-convergence (and 1 for a failing `selftest` or an I/O error).

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::gr::{self, DeflectionInput, MetricParams};
use crate::oscillators::{self, DuffingParams, PendulumParams};
use crate::selftest::{self, SelftestOptions};
use crate::wkb::{self, AnharmonicParams, WkbOrder};
use crate::zeta::{self, ZetaSeriesParams};
use crate::{Complex64, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "lde", version, about = "Delta expansion with minimal-sensitivity tuning")]
pub struct Cli {
    /// Write CSV here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Significant digits of printed floats.
    #[arg(long, global = true, default_value_t = 17, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub digits: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Period of x''= -x - μx³ from amplitude A.
    Duffing(DuffingArgs),
    /// Period of the nonlinear pendulum.
    Pendulum(PendulumArgs),
    /// Schwarzschild light bending and perihelion shift.
    Gr(GrArgs),
    /// WKB levels of the quartic anharmonic oscillator.
    Wkb(WkbArgs),
    /// Accelerated series for the Riemann zeta function.
    Zeta(ZetaArgs),
    /// Run the built-in invariant suites.
    Selftest(SelftestArgs),
}

/// `pms` or an explicit number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaChoice {
    Pms,
    Value(f64),
}

impl FromStr for LambdaChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("pms") {
            return Ok(Self::Pms);
        }
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Self::Value(v)),
            _ => Err(format!("expected `pms` or a finite number, got `{s}`")),
        }
    }
}

#[derive(Debug, Args)]
pub struct DuffingArgs {
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    #[arg(long, default_value_t = 10.0)]
    pub amplitude: f64,
    #[arg(long, default_value_t = 20)]
    pub order: usize,
    #[arg(long, default_value = "pms")]
    pub lambda: LambdaChoice,
    /// Errors per order at λ_PMS, 0.9 λ_PMS and 1.1 λ_PMS.
    #[arg(long)]
    pub figure1: bool,
}

#[derive(Debug, Args)]
pub struct PendulumArgs {
    /// Amplitude Θ in radians, 0 < Θ < π.
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    /// Sweep `points` amplitudes uniformly over (0, Θ].
    #[arg(long)]
    pub sweep: Option<usize>,
    /// Emit the quadrature series at the optimal stiffness up to this order.
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GrArgs {
    /// G/c² in m/kg.
    #[arg(long, global = true, default_value_t = 7.425e-28)]
    pub g_over_c2: f64,
    /// Central mass in kg.
    #[arg(long, global = true, default_value_t = 1.97e30)]
    pub mass: f64,
    /// Use this GM/c² (m) directly, ignoring --g-over-c2 and --mass.
    #[arg(long, global = true)]
    pub gm: Option<f64>,
    #[command(subcommand)]
    pub command: GrCommand,
}

#[derive(Debug, Subcommand)]
pub enum GrCommand {
    /// Deflection of light with closest approach r0.
    Deflect {
        /// Closest approach in m.
        #[arg(long, required_unless_present = "figure2")]
        r0: Option<f64>,
        /// Sweep r0 over (3, 20] GM/c².
        #[arg(long)]
        figure2: bool,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
    /// Perihelion shift per orbit.
    Precess {
        /// Semimajor axis in m (the reference a0 with --figure3).
        #[arg(long, default_value_t = 5.971e10)]
        a: f64,
        #[arg(long, default_value_t = 0.2506)]
        ecc: f64,
        /// Sweep a/a0 log-uniformly from L = 10 GM/c² up to 1.
        #[arg(long)]
        figure3: bool,
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
}

#[derive(Debug, Args)]
pub struct WkbArgs {
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Quartic coupling μ in V = mω²x²/2 + μx⁴/4.
    #[arg(long, default_value_t = 4.0)]
    pub quartic: f64,
    /// Levels n = 0..levels-1.
    #[arg(long, default_value_t = 10)]
    pub levels: u32,
    /// Truncation of the quantization condition: 0, 2 or 4 (powers of ħ).
    #[arg(long, default_value_t = 4)]
    pub hbar_order: u8,
    /// Relative error (percent) of the asymptotic formula against diagonalization.
    #[arg(long)]
    pub figure5: bool,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    /// Real part of s.
    #[arg(long, default_value_t = 3.0, conflicts_with = "tau")]
    pub s: f64,
    /// Imaginary part of s.
    #[arg(long, default_value_t = 0.0, conflicts_with = "tau")]
    pub s_imag: f64,
    /// Evaluate on the critical line s = 1/2 + iτ.
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long, default_value = "pms")]
    pub lambda: LambdaChoice,
    #[arg(long, default_value_t = 100)]
    pub terms: usize,
    /// Errors per K for λ_PMS, λ = 0 and the direct Dirichlet sum.
    #[arg(long)]
    pub figure6: bool,
    /// Ξ (percent) per K for λ = 0.3 and λ = 1 on the critical line.
    #[arg(long)]
    pub figure7: bool,
    /// Error at K = round(τ) against λ, one column per τ.
    #[arg(long)]
    pub figure8: bool,
    /// τ values for --figure8.
    #[arg(long, value_delimiter = ',', default_value = "20,50,100")]
    pub taus: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Skip the diagonalization-backed wkb suite.
    #[arg(long)]
    pub fast: bool,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self {
            code: if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// A CSV table held as text rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }
}

struct Fmt(usize);

impl Fmt {
    fn f(&self, x: f64) -> String {
        let mut s = String::new();
        write!(s, "{:.*e}", self.0 - 1, x).expect("write to String");
        s
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if let Command::Selftest(a) = &cli.command {
        return run_selftest_command(a);
    }
    match execute(&cli) {
        Ok(table) => match emit(&cli, &table.to_csv()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_FAILURE
            }
        },
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn run_selftest_command(a: &SelftestArgs) -> i32 {
    let reports = selftest::run_selftest(&SelftestOptions {
        fast: a.fast,
        ..SelftestOptions::default()
    });
    let mut ok = true;
    for r in &reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        println!("{status} {:<12} {:>3} checks {:>10.3} ms", r.name, r.checks, r.elapsed.as_secs_f64() * 1e3);
        for f in &r.failures {
            println!("    {f}");
        }
        ok &= r.passed();
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

/// Runs a parsed command that produces a table (every command but `selftest`).
pub fn execute(cli: &Cli) -> CliResult<Table> {
    let fmt = Fmt(cli.digits as usize);
    match &cli.command {
        Command::Duffing(a) => run_duffing(a, &fmt),
        Command::Pendulum(a) => run_pendulum(a, &fmt),
        Command::Gr(a) => run_gr(a, &fmt),
        Command::Wkb(a) => run_wkb(a, &fmt),
        Command::Zeta(a) => run_zeta(a, &fmt),
        Command::Selftest(_) => Err(CliError::usage("selftest does not produce a table")),
    }
}

fn run_duffing(a: &DuffingArgs, fmt: &Fmt) -> CliResult<Table> {
    let p = DuffingParams::new(a.mu, a.amplitude)?;
    let pms = oscillators::duffing_lambda_pms(&p);
    let lambdas = if a.figure1 {
        vec![pms, 0.9 * pms, 1.1 * pms]
    } else {
        match a.lambda {
            LambdaChoice::Pms => vec![pms],
            LambdaChoice::Value(v) if v >= 0.0 => vec![v],
            LambdaChoice::Value(v) => return Err(CliError::usage(format!("--lambda {v} must be >= 0"))),
        }
    };
    let exact = oscillators::duffing_exact(&p);
    let mut t = Table::new(["order", "lambda", "partial_sum", "error_vs_exact"]);
    for lambda in lambdas {
        let series = oscillators::duffing_series(&p, lambda, a.order);
        if !series.is_certified() {
            return Err(CliError::usage(format!(
                "lambda = {lambda} gives sup|Δ| = {:.6} >= 1; the series diverges (need lambda > {:.6})",
                series.max_abs_delta,
                oscillators::duffing_lambda_threshold(&p)
            )));
        }
        for (n, s) in series.partial_sums.iter().enumerate() {
            t.rows
                .push(vec![n.to_string(), fmt.f(lambda), fmt.f(*s), fmt.f((s - exact).abs() / exact)]);
        }
    }
    Ok(t)
}

fn run_pendulum(a: &PendulumArgs, fmt: &Fmt) -> CliResult<Table> {
    let p = PendulumParams::new(a.theta)?;
    if let Some(order) = a.order {
        let stiffness = oscillators::pendulum_optimal_stiffness(&p);
        let exact = oscillators::pendulum_exact(&p);
        let series = oscillators::pendulum_series(&p, stiffness, order)?;
        let mut t = Table::new(["order", "stiffness", "partial_sum", "error_vs_exact"]);
        for (n, s) in series.partial_sums.iter().enumerate() {
            t.rows
                .push(vec![n.to_string(), fmt.f(stiffness), fmt.f(*s), fmt.f((s - exact).abs() / exact)]);
        }
        return Ok(t);
    }
    let thetas: Vec<f64> = match a.sweep {
        Some(0) => return Err(CliError::usage("--sweep needs at least one point")),
        Some(k) => (1..=k).map(|i| a.theta * i as f64 / k as f64).collect(),
        None => vec![a.theta],
    };
    let mut t = Table::new(["theta_max", "exact", "pms", "relative_error"]);
    for theta in thetas {
        let q = PendulumParams::new(theta)?;
        let exact = oscillators::pendulum_exact(&q);
        let pms = oscillators::pendulum_period_pms(&q);
        t.rows
            .push(vec![fmt.f(theta), fmt.f(exact), fmt.f(pms), fmt.f((pms - exact).abs() / exact)]);
    }
    Ok(t)
}

fn run_gr(a: &GrArgs, fmt: &Fmt) -> CliResult<Table> {
    let m = match a.gm {
        Some(gm) => MetricParams::new(gm)?,
        None => MetricParams::from_mass(a.g_over_c2, a.mass)?,
    };
    if !(m.gm() > 0.0) {
        return Err(CliError::usage("GM/c² must be positive"));
    }
    let gm = m.gm();
    match &a.command {
        GrCommand::Deflect { r0, figure2, points } => {
            let radii: Vec<f64> = if *figure2 {
                if *points == 0 {
                    return Err(CliError::usage("--points must be positive"));
                }
                (1..=*points).map(|k| gm * (3.0 + 17.0 * k as f64 / *points as f64)).collect()
            } else {
                vec![r0.expect("clap enforces --r0 without --figure2")]
            };
            let mut t = Table::new(["r0", "exact", "pms", "asymptotic"]);
            for r in radii {
                let d = DeflectionInput::new(r)?;
                t.rows.push(vec![
                    fmt.f(r),
                    fmt.f(gr::deflection_exact(&m, &d)?),
                    fmt.f(gr::deflection_pms(&m, &d)?),
                    fmt.f(gr::deflection_weak_field(&m, &d)),
                ]);
            }
            Ok(t)
        }
        GrCommand::Precess { a: a0, ecc, figure3, points } => {
            if *figure3 {
                if *points < 2 {
                    return Err(CliError::usage("--points must be at least 2"));
                }
                if !(*ecc >= 0.0 && *ecc < 1.0) {
                    return Err(CliError::usage(format!("--ecc {ecc} outside [0, 1)")));
                }
                let lo = 10.0 * gm / (1.0 - ecc * ecc) / a0;
                if !(lo < 1.0) {
                    return Err(CliError::usage("--a is too small for the sweep (L must exceed 10 GM/c²)"));
                }
                let mut t = Table::new(["a_over_a0", "exact", "pms", "leading"]);
                for k in 0..*points {
                    let ratio = lo.powf(1.0 - k as f64 / (*points - 1) as f64);
                    let o = gr::orbit_from_kepler(ratio * a0, *ecc)?;
                    t.rows.push(vec![
                        fmt.f(ratio),
                        fmt.f(gr::precession_exact(&m, &o)?),
                        fmt.f(gr::precession_pms(&m, &o)?),
                        fmt.f(gr::precession_leading(&m, &o)),
                    ]);
                }
                Ok(t)
            } else {
                let o = gr::orbit_from_kepler(*a0, *ecc)?;
                let mut t = Table::new(["a", "ecc", "exact", "pms", "leading"]);
                t.rows.push(vec![
                    fmt.f(*a0),
                    fmt.f(*ecc),
                    fmt.f(gr::precession_exact(&m, &o)?),
                    fmt.f(gr::precession_pms(&m, &o)?),
                    fmt.f(gr::precession_leading(&m, &o)),
                ]);
                Ok(t)
            }
        }
    }
}

fn run_wkb(a: &WkbArgs, fmt: &Fmt) -> CliResult<Table> {
    let p = AnharmonicParams::new(a.hbar, a.mass, a.omega, a.quartic)?;
    if a.levels == 0 {
        return Err(CliError::usage("--levels must be positive"));
    }
    let order = match a.hbar_order {
        0 => WkbOrder::Leading,
        2 => WkbOrder::Second,
        4 => WkbOrder::Fourth,
        k => return Err(CliError::usage(format!("--hbar-order {k} must be 0, 2 or 4"))),
    };
    if a.figure5 {
        let exact = wkb::exact_spectrum_oracle(&p, a.levels as usize - 1)?;
        let mut t = Table::new(["n", "error_eqn6"]);
        for n in 0..a.levels {
            let e = exact[n as usize];
            let sigma = ((wkb::asymptotic_energy(&p, n) - e) / e).abs() * 100.0;
            t.rows.push(vec![n.to_string(), fmt.f(sigma)]);
        }
        return Ok(t);
    }
    let mut t = Table::new(["n", "energy", "residual", "asymptotic"]);
    for n in 0..a.levels {
        let level = wkb::solve_level_at(&p, n, order)?;
        t.rows.push(vec![
            n.to_string(),
            fmt.f(level.energy),
            fmt.f(level.residual),
            fmt.f(wkb::asymptotic_energy(&p, n)),
        ]);
    }
    Ok(t)
}

/// `2^{-n}` for real integer `n >= 2`; otherwise the λ in [1e-3, 1]
/// minimizing the last increment `|S_K - S_{K-1}|`.
fn zeta_pms_lambda(s: Complex64, terms: usize) -> CliResult<f64> {
    if s.im == 0.0 && s.re.fract() == 0.0 && s.re >= 2.0 && s.re <= 64.0 {
        return Ok(zeta::zeta_lambda_pms(s.re as u32));
    }
    Ok(zeta::zeta_lambda_scan(s, terms.max(1), 1e-3, 1.0, 200)?.0)
}

fn reference(s: Complex64) -> CliResult<Complex64> {
    Ok(zeta::zeta_reference(s)?.value)
}

fn run_zeta(a: &ZetaArgs, fmt: &Fmt) -> CliResult<Table> {
    if a.figure8 {
        return zeta_figure8(a, fmt);
    }
    let s = match a.tau {
        Some(tau) => Complex64::new(0.5, tau),
        None => Complex64::new(a.s, a.s_imag),
    };
    if a.figure7 {
        let exact = reference(s)?;
        let xi = |lambda: f64| -> CliResult<Vec<f64>> {
            let sums = zeta::zeta_partial_sums(&ZetaSeriesParams::new(s, lambda, a.terms)?);
            Ok(sums.iter().map(|v| ((v - exact) / exact).re * 100.0).collect())
        };
        let (x03, x1) = (xi(0.3)?, xi(1.0)?);
        let mut t = Table::new(["K", "xi_lambda_0.3", "xi_lambda_1"]);
        for k in 0..=a.terms {
            t.rows.push(vec![k.to_string(), fmt.f(x03[k]), fmt.f(x1[k])]);
        }
        return Ok(t);
    }
    let lambda = match a.lambda {
        LambdaChoice::Pms => zeta_pms_lambda(s, a.terms)?,
        LambdaChoice::Value(v) => v,
    };
    let params = ZetaSeriesParams::new(s, lambda, a.terms)?;
    if a.figure6 {
        let exact = reference(s)?;
        let pms = zeta::zeta_partial_sums(&params);
        let plain = zeta::eta_partial_sums(s, a.terms)?;
        let mut t = Table::new(["K", "err_lambda_pms", "err_lambda_0", "err_direct"]);
        let mut direct = Complex64::new(0.0, 0.0);
        for k in 0..=a.terms {
            // The direct sum with K + 1 terms, matching S_K's K + 1 inner terms.
            direct += crate::specfun::complex_inverse_power((k + 1) as f64, s);
            t.rows.push(vec![
                k.to_string(),
                fmt.f((pms[k] - exact).norm()),
                fmt.f((plain[k] - exact).norm()),
                fmt.f((direct - exact).norm()),
            ]);
        }
        return Ok(t);
    }
    let value = zeta::zeta_accelerated(&params);
    let exact = reference(s)?;
    let mut t = Table::new(["s_re", "s_im", "lambda", "terms", "re", "im", "reference_re", "reference_im", "abs_error"]);
    t.rows.push(vec![
        fmt.f(s.re),
        fmt.f(s.im),
        fmt.f(lambda),
        a.terms.to_string(),
        fmt.f(value.re),
        fmt.f(value.im),
        fmt.f(exact.re),
        fmt.f(exact.im),
        fmt.f((value - exact).norm()),
    ]);
    Ok(t)
}

fn zeta_figure8(a: &ZetaArgs, fmt: &Fmt) -> CliResult<Table> {
    if a.taus.is_empty() {
        return Err(CliError::usage("--taus must list at least one value"));
    }
    let mut cols = Vec::with_capacity(a.taus.len());
    for &tau in &a.taus {
        if !(tau >= 1.0) || !tau.is_finite() {
            return Err(CliError::usage(format!("tau = {tau} must be >= 1")));
        }
        let s = Complex64::new(0.5, tau);
        cols.push((s, tau.round() as usize, reference(s)?));
    }
    let mut t = Table::new(
        std::iter::once("lambda".to_string()).chain(a.taus.iter().map(|tau| format!("err_tau_{tau}"))),
    );
    for i in 1..=100 {
        let lambda = 0.01 * i as f64;
        let mut row = vec![fmt.f(lambda)];
        for &(s, k, exact) in &cols {
            let v = zeta::zeta_accelerated(&ZetaSeriesParams::new(s, lambda, k)?);
            row.push(fmt.f((v - exact).norm()));
        }
        t.rows.push(row);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(args: &[&str]) -> CliResult<Table> {
        let cli = Cli::try_parse_from(std::iter::once("lde").chain(args.iter().copied())).expect("parses");
        execute(&cli)
    }

    #[test]
    fn lambda_choice_parses() {
        assert_eq!("pms".parse::<LambdaChoice>(), Ok(LambdaChoice::Pms));
        assert_eq!("1.5".parse::<LambdaChoice>(), Ok(LambdaChoice::Value(1.5)));
        assert!("nan".parse::<LambdaChoice>().is_err());
    }

    #[test]
    fn harmonic_duffing_rows_are_two_pi() {
        let t = table(&["duffing", "--mu", "0", "--amplitude", "1", "--order", "5"]).unwrap();
        assert_eq!(t.rows.len(), 6);
        for r in &t.rows {
            assert_eq!(r[2].parse::<f64>().unwrap(), 2.0 * std::f64::consts::PI);
        }
    }

    #[test]
    fn uncertified_lambda_is_usage_error() {
        let e = table(&["duffing", "--mu", "1", "--amplitude", "10", "--lambda", "1.0"]).unwrap_err();
        assert_eq!(e.code, EXIT_USAGE);
    }

    #[test]
    fn floats_round_trip() {
        let f = Fmt(17);
        for x in [0.1, 1.0 / 3.0, 6.02e23, -2.5e-300, std::f64::consts::PI] {
            assert_eq!(f.f(x).parse::<f64>().unwrap(), x);
        }
    }
}
