//! Experiment runner behind the `passive-approx` binary.
//!
//! Subcommands: `fit` (band experiments, CSV output), `bound` (bandwidth
//! lower-bound table), `sumrule` (sum-rule and composition-chain checks for
//! fitted or synthetic measures), `basis` (prototype splines and their
//! Hilbert transforms on a dense grid).
//!
//! Configuration is a flat `key = value` text file selected with `--config`;
//! command-line flags override file entries. All CSV output is written with
//! 17 significant digits, comma separators, and LF line endings.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::approx::{
    assemble, band_spanning_basis, build_basis_columns, make_grid, minimax_bracket, permittivity_view,
    sampled_h, to_l1_lp, to_l2_problem, to_minimax_lp, LpNorm, ProblemOptions, SampleGrid,
    TargetSpec, WeightKind,
};
use crate::bspline::{expansion, prototype_bspline, PiecewisePolynomial};
use crate::cauchy::hilbert_pp;
use crate::error::Error;
use crate::herglotz::{
    aux_hdelta, lower_bound_generic, metamaterial_bound, symmetrized_density, HerglotzMeasure,
};
use crate::solver::{solve_lp, solve_nnls, SolveStatus};
use crate::{quad, Result};

/// Exit code of a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit code for configuration or flag errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for solver or validation failures.
pub const EXIT_SOLVER: i32 = 3;
/// Exit code for file input/output failures.
pub const EXIT_IO: i32 = 4;

const USAGE: &str = "\
passive-approx <fit|bound|sumrule|basis> [flags]

flags:
  --config PATH        flat `key = value` file; flags below override it
  --out DIR            output directory (default .)
  --eps-t RE,IM        target permittivity (default -1,0.05)
  --B LIST             relative bandwidths, comma separated (default 0.1)
  --N LIST             basis sizes, comma separated (default 500)
  --m INT              spline order (default 2)
  --p {1,2,inf}        norm (default inf)
  --K INT              polygon directions (default 64)
  --tol FLOAT          solver tolerance (default 1e-8)
  --atom {on,off}      origin point mass variable (default on)
  --fix-b1 FLOAT|free  fixed high-frequency slope (default 1)
  --omega0 FLOAT       center frequency (default 1)
  --grid INT           band sample count (default 1000)
  --weight {unit,invx} window weight (default invx)
  --target-file PATH   tabulated target (x,re,im rows) instead of eps-t
  --delta FLOAT        knot spacing for `basis` (default 1)
  --fit-dir PATH       completed fit directory for `sumrule`
  --synth-atom W --synth-center C --synth-halfwidth D --synth-mass M
                       synthetic measure for `sumrule`";

/// Parsed experiment configuration (defaults mirror the band protocol:
/// omega0 = 1, 1000-point grid, m = 2, N = 500, K = 64, tol = 1e-8).
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub out: PathBuf,
    pub eps_t: Complex64,
    pub b_list: Vec<f64>,
    pub n_list: Vec<usize>,
    pub order: usize,
    pub norm: LpNorm,
    pub directions: usize,
    pub tol: f64,
    pub atom: bool,
    pub fix_b1: Option<f64>,
    pub omega0: f64,
    pub grid: usize,
    pub weight: WeightKind,
    pub target_file: Option<PathBuf>,
    pub delta: f64,
    pub fit_dir: Option<PathBuf>,
    pub synth: Option<SyntheticMeasure>,
}

/// Synthetic measure description for `sumrule`: an origin atom plus a
/// symmetric roof-top pair.
#[derive(Debug, Clone, Copy, Default)]
pub struct SyntheticMeasure {
    pub atom: f64,
    pub center: f64,
    pub halfwidth: f64,
    pub mass: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            out: PathBuf::from("."),
            eps_t: Complex64::new(-1.0, 0.05),
            b_list: vec![0.1],
            n_list: vec![500],
            order: 2,
            norm: LpNorm::Inf,
            directions: 64,
            tol: 1e-8,
            atom: true,
            fix_b1: Some(1.0),
            omega0: 1.0,
            grid: 1000,
            weight: WeightKind::InverseX,
            target_file: None,
            delta: 1.0,
            fit_dir: None,
            synth: None,
        }
    }
}

fn usage_err(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.trim()
        .parse()
        .map_err(|_| usage_err(format!("{key}: expected a number, got `{v}`")))
}

fn parse_usize(key: &str, v: &str) -> Result<usize> {
    v.trim()
        .parse()
        .map_err(|_| usage_err(format!("{key}: expected an integer, got `{v}`")))
}

fn parse_list_f64(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',').map(|s| parse_f64(key, s)).collect()
}

fn parse_list_usize(key: &str, v: &str) -> Result<Vec<usize>> {
    v.split(',').map(|s| parse_usize(key, s)).collect()
}

impl ExperimentConfig {
    fn apply(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "out" => self.out = PathBuf::from(value),
            "eps-t" => {
                let parts: Vec<&str> = value.split(',').collect();
                if parts.len() != 2 {
                    return Err(usage_err("eps-t: expected RE,IM"));
                }
                self.eps_t = Complex64::new(
                    parse_f64("eps-t", parts[0])?,
                    parse_f64("eps-t", parts[1])?,
                );
            }
            "B" => self.b_list = parse_list_f64("B", value)?,
            "N" => self.n_list = parse_list_usize("N", value)?,
            "m" => self.order = parse_usize("m", value)?,
            "p" => {
                self.norm = match value.trim() {
                    "1" => LpNorm::One,
                    "2" => LpNorm::Two,
                    "inf" => LpNorm::Inf,
                    other => return Err(usage_err(format!("p: expected 1, 2 or inf, got `{other}`"))),
                }
            }
            "K" => self.directions = parse_usize("K", value)?,
            "tol" => self.tol = parse_f64("tol", value)?,
            "atom" => {
                self.atom = match value.trim() {
                    "on" => true,
                    "off" => false,
                    other => return Err(usage_err(format!("atom: expected on or off, got `{other}`"))),
                }
            }
            "fix-b1" => {
                self.fix_b1 = match value.trim() {
                    "free" => None,
                    v => Some(parse_f64("fix-b1", v)?),
                }
            }
            "omega0" => self.omega0 = parse_f64("omega0", value)?,
            "grid" => self.grid = parse_usize("grid", value)?,
            "weight" => {
                self.weight = match value.trim() {
                    "unit" => WeightKind::Unit,
                    "invx" => WeightKind::InverseX,
                    other => {
                        return Err(usage_err(format!("weight: expected unit or invx, got `{other}`")))
                    }
                }
            }
            "target-file" => self.target_file = Some(PathBuf::from(value)),
            "delta" => self.delta = parse_f64("delta", value)?,
            "fit-dir" => self.fit_dir = Some(PathBuf::from(value)),
            "synth-atom" | "synth-center" | "synth-halfwidth" | "synth-mass" => {
                let s = self.synth.get_or_insert_with(SyntheticMeasure::default);
                let v = parse_f64(key, value)?;
                match key {
                    "synth-atom" => s.atom = v,
                    "synth-center" => s.center = v,
                    "synth-halfwidth" => s.halfwidth = v,
                    _ => s.mass = v,
                }
            }
            other => return Err(usage_err(format!("unknown option `{other}`"))),
        }
        Ok(())
    }

    fn load_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(usage_err(format!(
                    "{}:{}: expected `key = value`",
                    path.display(),
                    lineno + 1
                )));
            };
            self.apply(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// Builds the configuration from command-line arguments (config file
    /// first, then flag overrides in order).
    pub fn from_args(args: &[String]) -> Result<Self> {
        let mut pairs: Vec<(String, String)> = Vec::new();
        let mut i = 0;
        while i < args.len() {
            let arg = &args[i];
            let Some(stripped) = arg.strip_prefix("--") else {
                return Err(usage_err(format!("unexpected argument `{arg}`")));
            };
            let (key, value) = if let Some((k, v)) = stripped.split_once('=') {
                (k.to_string(), v.to_string())
            } else {
                let v = args
                    .get(i + 1)
                    .ok_or_else(|| usage_err(format!("missing value for --{stripped}")))?;
                i += 1;
                (stripped.to_string(), v.clone())
            };
            pairs.push((key, value));
            i += 1;
        }
        let mut cfg = ExperimentConfig::default();
        // Config file first so that flags override it.
        for (k, v) in &pairs {
            if k == "config" {
                cfg.load_file(Path::new(v))?;
            }
        }
        for (k, v) in &pairs {
            if k != "config" {
                cfg.apply(k, v)?;
            }
        }
        Ok(cfg)
    }
}

/// Runs the CLI; returns the process exit code.
pub fn run(args: &[String]) -> i32 {
    let Some((cmd, rest)) = args.split_first() else {
        eprintln!("{USAGE}");
        return EXIT_USAGE;
    };
    let cfg = match ExperimentConfig::from_args(rest) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("{USAGE}");
            return EXIT_USAGE;
        }
    };
    let outcome = match cmd.as_str() {
        "fit" => cmd_fit(&cfg),
        "bound" => cmd_bound(&cfg),
        "sumrule" => cmd_sumrule(&cfg),
        "basis" => cmd_basis(&cfg),
        other => {
            eprintln!("error: unknown subcommand `{other}`");
            eprintln!("{USAGE}");
            return EXIT_USAGE;
        }
    };
    match outcome {
        Ok(code) => code,
        Err(Error::InvalidArgument(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Error::Io(e)) => {
            eprintln!("i/o error: {e}");
            EXIT_IO
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_SOLVER
        }
    }
}

/// Full-precision decimal formatting (17 significant digits, round-trip
/// safe).
fn fmt_g17(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    std::fs::write(path, contents)?;
    Ok(())
}

/// One completed fit.
pub struct FitOutcome {
    pub b: f64,
    pub n: usize,
    pub error: f64,
    pub bound: f64,
    pub bracket: (f64, f64),
    pub a_minus1: f64,
    /// High-frequency slope of the fitted function (fixed or optimized).
    pub b1: f64,
    pub iterations: usize,
    pub status: SolveStatus,
    /// Spline coefficients and extras, in layout order.
    pub variables: Vec<f64>,
    pub grid: SampleGrid,
    /// Positive-axis spline density part (before symmetrization and 1/pi).
    pub spline_part: PiecewisePolynomial,
    pub h_values: Vec<Complex64>,
    pub target_values: Vec<Complex64>,
}

/// Runs one band fit. Library entry point used by the CLI and the tests.
pub fn run_fit(cfg: &ExperimentConfig, b: f64, n: usize) -> Result<FitOutcome> {
    let grid = make_grid(cfg.omega0, b, cfg.grid)?;
    let lo = cfg.omega0 * (1.0 - 2.0 * b);
    let basis = band_spanning_basis(lo, 4.0 * b * cfg.omega0, n, cfg.order)?;
    let target = match &cfg.target_file {
        Some(path) => tabulated_target(path, &grid)?,
        None => TargetSpec::Permittivity { eps_t: cfg.eps_t },
    };
    let options = ProblemOptions {
        norm: cfg.norm,
        weight: cfg.weight.clone(),
        fix_b1: cfg.fix_b1,
        allow_origin_atom: cfg.atom,
        directions: cfg.directions,
    };
    let system = assemble(&options, &basis, &grid, &target)?;

    let (variables, status, iterations, bracket) = match cfg.norm {
        LpNorm::Inf => {
            let lp = to_minimax_lp(&system, cfg.directions)?;
            let r = solve_lp(&lp, cfg.tol, 200)?;
            let v = r.x[..system.layout.total].to_vec();
            (v, r.status, r.iterations, minimax_bracket(r.objective, cfg.directions))
        }
        LpNorm::One => {
            let lp = to_l1_lp(&system, cfg.directions)?;
            let r = solve_lp(&lp, cfg.tol, 300)?;
            let v = r.x[..system.layout.total].to_vec();
            (v, r.status, r.iterations, minimax_bracket(r.objective, cfg.directions))
        }
        LpNorm::Two => {
            let nnls = to_l2_problem(&system);
            let r = solve_nnls(&nnls, cfg.tol)?;
            let bracket = (r.objective, r.objective);
            (r.x, r.status, r.iterations, bracket)
        }
    };
    let error = system.objective(&variables, cfg.norm);
    let a_minus1 = system.layout.atom_col.map_or(0.0, |c| -variables[c]);
    let b1 = cfg
        .fix_b1
        .unwrap_or_else(|| system.layout.b1_col.map_or(0.0, |c| variables[c]));
    let bound = metamaterial_bound(cfg.fix_b1.unwrap_or(1.0), cfg.eps_t, b).unwrap_or(f64::NAN);

    let (full_im, full_re) = build_basis_columns(&basis, &grid)?;
    let h_values = sampled_h(&full_im, &full_re, &grid, &system.layout, cfg.fix_b1, &variables);
    let target_values = target.values_on(&grid)?;
    let spline_part = expansion(&variables[..system.layout.n_splines], &basis)?;

    Ok(FitOutcome {
        b,
        n,
        error,
        bound,
        bracket,
        a_minus1,
        b1,
        iterations,
        status,
        variables,
        grid,
        spline_part,
        h_values,
        target_values,
    })
}

fn tabulated_target(path: &Path, grid: &SampleGrid) -> Result<TargetSpec> {
    let text = std::fs::read_to_string(path)?;
    let mut rows: Vec<(f64, Complex64)> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(usage_err("target file rows must be `x,re,im`"));
        }
        if fields[0].parse::<f64>().is_err() && rows.is_empty() {
            continue; // header row
        }
        rows.push((
            parse_f64("target x", fields[0])?,
            Complex64::new(parse_f64("target re", fields[1])?, parse_f64("target im", fields[2])?),
        ));
    }
    if rows.len() < 2 {
        return Err(usage_err("target file needs at least two rows"));
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    // Linear interpolation onto the grid.
    let values = grid
        .points()
        .iter()
        .map(|&x| {
            let idx = rows.partition_point(|(xi, _)| *xi <= x).clamp(1, rows.len() - 1);
            let (x0, v0) = rows[idx - 1];
            let (x1, v1) = rows[idx];
            let t = ((x - x0) / (x1 - x0)).clamp(0.0, 1.0);
            v0 + (v1 - v0) * t
        })
        .collect();
    Ok(TargetSpec::Tabulated { values })
}

/// The symmetric measure generated by a fit outcome.
pub fn outcome_measure(out: &FitOutcome) -> Result<HerglotzMeasure> {
    let density = symmetrized_density(&out.spline_part);
    let mut atoms = Vec::new();
    if out.a_minus1 < 0.0 {
        atoms.push((0.0, -out.a_minus1));
    }
    HerglotzMeasure::new(out.b1, 0.0, atoms, density, true)
}

fn cmd_fit(cfg: &ExperimentConfig) -> Result<i32> {
    let mut summary = String::from(
        "B,N,p,E,bound,bracket_lo,bracket_hi,a_minus1,iterations,status\n",
    );
    let multi = cfg.b_list.len() * cfg.n_list.len() > 1;
    let mut all_optimal = true;
    for &b in &cfg.b_list {
        for &n in &cfg.n_list {
            let out = run_fit(cfg, b, n)?;
            all_optimal &= out.status == SolveStatus::Optimal;
            writeln!(
                summary,
                "{},{},{},{},{},{},{},{},{},{}",
                fmt_g17(b),
                n,
                cfg.norm,
                fmt_g17(out.error),
                fmt_g17(out.bound),
                fmt_g17(out.bracket.0),
                fmt_g17(out.bracket.1),
                fmt_g17(out.a_minus1),
                out.iterations,
                out.status
            )
            .expect("string write");
            write_fit_files(cfg, &out, multi)?;
            println!(
                "fit B={b} N={n}: E={:.8e} bound={:.8e} status={}",
                out.error, out.bound, out.status
            );
        }
    }
    write_file(&cfg.out.join("fit_summary.csv"), &summary)?;
    Ok(if all_optimal { EXIT_OK } else { EXIT_SOLVER })
}

fn write_fit_files(cfg: &ExperimentConfig, out: &FitOutcome, multi: bool) -> Result<()> {
    let eps = permittivity_view(&out.h_values, &out.grid)?;
    let eps_t = permittivity_view(&out.target_values, &out.grid)?;
    let mut eps_csv = String::from("x,eps_re,eps_im,target_re,target_im\n");
    for (i, &x) in out.grid.points().iter().enumerate() {
        writeln!(
            eps_csv,
            "{},{},{},{},{}",
            fmt_g17(x),
            fmt_g17(eps[i].re),
            fmt_g17(eps[i].im),
            fmt_g17(eps_t[i].re),
            fmt_g17(eps_t[i].im)
        )
        .expect("string write");
    }
    let density = symmetrized_density(&out.spline_part);
    let mut density_csv = String::from("x,beta_prime\n");
    for &t in density.breakpoints() {
        writeln!(density_csv, "{},{}", fmt_g17(t), fmt_g17(density.eval(t))).expect("string write");
    }
    // Plain names always hold the most recent fit; sweeps get suffixed
    // copies as well.
    write_file(&cfg.out.join("fit_eps.csv"), &eps_csv)?;
    write_file(&cfg.out.join("fit_density.csv"), &density_csv)?;
    if multi {
        let tag = format!("B{}_N{}", out.b, out.n);
        write_file(&cfg.out.join(format!("fit_eps_{tag}.csv")), &eps_csv)?;
        write_file(&cfg.out.join(format!("fit_density_{tag}.csv")), &density_csv)?;
    }
    Ok(())
}

fn cmd_bound(cfg: &ExperimentConfig) -> Result<i32> {
    let b1 = cfg.fix_b1.unwrap_or(1.0);
    println!("B,eps_re,eps_im,generic_h_bound,permittivity_bound");
    for &b in &cfg.b_list {
        if !(b > 0.0 && b < 2.0) {
            return Err(usage_err(format!("B = {b} outside (0, 2)")));
        }
        let b1_0 = (-cfg.eps_t.re).max(0.0);
        let generic = lower_bound_generic(b1, b1_0, b * cfg.omega0)?;
        let meta = metamaterial_bound(b1, cfg.eps_t, b)?;
        println!(
            "{},{},{},{},{}",
            fmt_g17(b),
            fmt_g17(cfg.eps_t.re),
            fmt_g17(cfg.eps_t.im),
            fmt_g17(generic),
            fmt_g17(meta)
        );
    }
    Ok(EXIT_OK)
}

/// Rebuilds the fitted measure from `fit_density.csv` + `fit_summary.csv`
/// (piecewise-linear reconstruction; exact for order-2 fits).
pub fn measure_from_fit_dir(
    dir: &Path,
    fix_b1: Option<f64>,
) -> Result<(HerglotzMeasure, f64, f64)> {
    let density_text = std::fs::read_to_string(dir.join("fit_density.csv"))?;
    let mut nodes: Vec<(f64, f64)> = Vec::new();
    for line in density_text.lines().skip(1) {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (x, v) = line
            .split_once(',')
            .ok_or_else(|| usage_err("fit_density.csv rows must be `x,beta_prime`"))?;
        nodes.push((parse_f64("density x", x)?, parse_f64("density value", v)?));
    }
    if nodes.len() < 2 {
        return Err(usage_err("fit_density.csv holds fewer than two nodes"));
    }
    let breakpoints: Vec<f64> = nodes.iter().map(|(x, _)| *x).collect();
    let coeffs: Vec<Vec<f64>> = nodes
        .windows(2)
        .map(|w| {
            let (x0, v0) = w[0];
            let (x1, v1) = w[1];
            vec![v0, (v1 - v0) / (x1 - x0)]
        })
        .collect();
    let density = PiecewisePolynomial::new(breakpoints, coeffs)?;

    let summary_text = std::fs::read_to_string(dir.join("fit_summary.csv"))?;
    let last = summary_text
        .lines()
        .rfind(|l| !l.trim().is_empty())
        .ok_or_else(|| usage_err("fit_summary.csv is empty"))?;
    let fields: Vec<&str> = last.split(',').collect();
    if fields.len() < 10 {
        return Err(usage_err("fit_summary.csv row has too few columns"));
    }
    let b = parse_f64("summary B", fields[0])?;
    let e = parse_f64("summary E", fields[3])?;
    let a_minus1 = parse_f64("summary a_minus1", fields[7])?;
    let mut atoms = Vec::new();
    if a_minus1 < 0.0 {
        atoms.push((0.0, -a_minus1));
    }
    let measure = HerglotzMeasure::new(fix_b1.unwrap_or(0.0), 0.0, atoms, density, true)?;
    Ok((measure, b, e))
}

/// Report of the composition-chain check
/// `|Omega|/pi <= (2/pi) int_Omega Im h1 <= 2 Delta / (pi (b1 + b1_0))`.
pub struct ChainReport {
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
    pub delta: f64,
    /// True when the chain holds within the 1% quadrature tolerance.
    pub holds: bool,
}

/// Evaluates the composition chain for a fitted measure against the
/// Herglotz part of the target (`h0(z) = -Re(eps_t) z`).
pub fn chain_check(
    measure: &HerglotzMeasure,
    eps_t: Complex64,
    omega0: f64,
    b: f64,
) -> Result<ChainReport> {
    let b1_0 = -eps_t.re;
    if !(b1_0 > 0.0) {
        return Err(usage_err("chain check needs Re(eps_t) < 0"));
    }
    let (x1, x2) = (omega0 * (1.0 - b / 2.0), omega0 * (1.0 + b / 2.0));
    // Delta = sup over the window of |h + h0| on a dense grid.
    let mut delta = 0.0f64;
    for i in 0..=2000 {
        let x = x1 + (x2 - x1) * i as f64 / 2000.0;
        let inner = measure.boundary_value(x)? + Complex64::new(b1_0 * x, 0.0);
        delta = delta.max(inner.norm());
    }
    let integrand = |x: f64| {
        let inner = measure
            .boundary_value(x)
            .expect("no atoms inside the window")
            + Complex64::new(b1_0 * x, 0.0);
        aux_hdelta(inner, delta).map_or(0.5, |v| v.im)
    };
    // The integrand kinks at the density knots.
    let q = quad::adaptive_with_breakpoints(
        integrand,
        x1,
        x2,
        measure.density().breakpoints(),
        1e-9,
        50_000,
    )?;
    let lower = (x2 - x1) / PI;
    let middle = 2.0 / PI * q.value;
    let upper = 2.0 * delta / (PI * (measure.b1() + b1_0));
    let tol = 0.01;
    let holds = lower <= middle * (1.0 + tol) && middle <= upper * (1.0 + tol);
    Ok(ChainReport {
        lower,
        middle,
        upper,
        delta,
        holds,
    })
}

fn cmd_sumrule(cfg: &ExperimentConfig) -> Result<i32> {
    let (measure, fitted_band) = if let Some(dir) = &cfg.fit_dir {
        let (m, b, _) = measure_from_fit_dir(dir, cfg.fix_b1)?;
        (m, Some(b))
    } else if let Some(s) = cfg.synth {
        let mut atoms = Vec::new();
        if s.atom > 0.0 {
            atoms.push((0.0, s.atom));
        }
        let density = if s.mass > 0.0 && s.halfwidth > 0.0 {
            let single = crate::cauchy::rooftop(s.halfwidth)?.translate(s.center);
            symmetrized_density(&single).scale(s.mass * PI / (2.0 * s.halfwidth))
        } else {
            PiecewisePolynomial::zero(-1.0, 1.0)
        };
        (HerglotzMeasure::new(0.0, 0.0, atoms, density, true)?, None)
    } else {
        return Err(usage_err("sumrule needs --fit-dir or a synthetic measure spec"));
    };

    println!("check,lhs,rhs,status");
    let (lhs, rhs) = measure.sum_rule(0)?;
    let ok0 = (lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs());
    println!(
        "sum_rule_k0,{},{},{}",
        fmt_g17(lhs),
        fmt_g17(rhs),
        if ok0 { "ok" } else { "violated" }
    );
    let mut all_ok = ok0;
    if let Ok((lhs1, rhs1)) = measure.sum_rule(1) {
        let ok1 = (lhs1 - rhs1).abs() <= 1e-10 * (1.0 + lhs1.abs());
        println!(
            "sum_rule_k1,{},{},{}",
            fmt_g17(lhs1),
            fmt_g17(rhs1),
            if ok1 { "ok" } else { "violated" }
        );
        all_ok &= ok1;
    }

    if let Some(b) = fitted_band {
        let report = chain_check(&measure, cfg.eps_t, cfg.omega0, b)?;
        println!(
            "chain_lower_vs_middle,{},{},{}",
            fmt_g17(report.lower),
            fmt_g17(report.middle),
            if report.lower <= report.middle * 1.01 { "ok" } else { "violated" }
        );
        println!(
            "chain_middle_vs_upper,{},{},{}",
            fmt_g17(report.middle),
            fmt_g17(report.upper),
            if report.middle <= report.upper * 1.01 { "ok" } else { "violated" }
        );
        all_ok &= report.holds;
    }
    Ok(if all_ok { EXIT_OK } else { EXIT_SOLVER })
}

fn cmd_basis(cfg: &ExperimentConfig) -> Result<i32> {
    let m = cfg.order;
    let delta = cfg.delta;
    if m < 1 {
        return Err(usage_err("basis needs m >= 1"));
    }
    if !(delta > 0.0) {
        return Err(usage_err("basis needs delta > 0"));
    }
    // Centered prototype: peak at the origin for symmetric orders; for m = 2
    // this is the roof-top pulse.
    let centered = prototype_bspline(m, delta)?.translate(-(m as f64) * delta / 2.0);
    let transform = hilbert_pp(&centered)?;
    if transform.has_singularities() {
        println!(
            "note: order {m} prototype is discontinuous; its transform has \
             genuine logarithmic singularities at the jump knots"
        );
    }
    let half_span = (m as f64 / 2.0 + 1.0) * delta;
    let mut csv = String::from("x,p,p_hat\n");
    for i in 0..=2000 {
        let x = -half_span + 2.0 * half_span * i as f64 / 2000.0;
        let p = centered.eval(x);
        let ph = transform.eval(x).map_or(f64::NAN, |v| v);
        writeln!(csv, "{},{},{}", fmt_g17(x), fmt_g17(p), fmt_g17(ph)).expect("string write");
    }
    write_file(&cfg.out.join("basis.csv"), &csv)?;
    println!("basis: wrote {}", cfg.out.join("basis.csv").display());
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing_and_overrides() {
        let dir = std::env::temp_dir().join("passive_approx_cfg_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("exp.conf");
        std::fs::write(&path, "# comment\nB = 0.2,0.3\nN = 50\np = 2\natom = off\n").unwrap();
        let args: Vec<String> = [
            "--config",
            path.to_str().unwrap(),
            "--N",
            "100,200",
            "--fix-b1",
            "free",
            "--eps-t",
            "-2,0.1",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        let cfg = ExperimentConfig::from_args(&args).unwrap();
        assert_eq!(cfg.b_list, vec![0.2, 0.3]);
        assert_eq!(cfg.n_list, vec![100, 200]); // flag wins over file
        assert_eq!(cfg.norm, LpNorm::Two);
        assert!(!cfg.atom);
        assert_eq!(cfg.fix_b1, None);
        assert_eq!(cfg.eps_t, Complex64::new(-2.0, 0.1));
        assert!(ExperimentConfig::from_args(&["--p".into(), "7".into()]).is_err());
        assert!(ExperimentConfig::from_args(&["stray".into()]).is_err());
    }

    #[test]
    fn g17_round_trips() {
        for v in [0.1, -1.0 / 3.0, 2.000625e-4, 1.0e17, f64::MIN_POSITIVE] {
            let s = fmt_g17(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(v, back, "{s}");
        }
    }
}
