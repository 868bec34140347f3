//! `pdmosc`: batch front end for trajectories, spectra, Bethe states and oracle comparisons.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use pdmosc::bethe::{v2_states, BetheState, Sector};
use pdmosc::classical::{
    first_integral, higgs_trajectory, integrate_eom, v2_trajectory, v2_trajectory_landen, Sample,
};
use pdmosc::io::{profile_csv, spectrum_csv, to_json, trajectory_csv};
use pdmosc::oracle::{compare_spectra, oracle_levels, oracle_wavefunction, Coordinate, OracleConfig};
use pdmosc::quantum_higgs::{
    higgs1d_energy, higgs1d_spectrum, higgs1d_wavefunction, higgs3d_energy, higgs3d_radial, higgs3d_spectrum,
    OrderingParameters,
};
use pdmosc::semiclassical::{higgs3d_semiclassical_energy, higgs_semiclassical_spectrum, v2_semiclassical_spectrum};
use pdmosc::spectrum::{Method, SpectrumEntry};
use pdmosc::{Dim, Error, Potential, SystemParams};

#[derive(Parser)]
#[command(name = "pdmosc", version, about = "Oscillators with position-dependent mass m(x) = (1 + kx²)⁻²")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classical orbit: closed form or RK4, written as t,x,xdot,eps.
    Trajectory(TrajectoryArgs),
    /// Bohr–Sommerfeld levels.
    Semiclassical(LevelArgs),
    /// Exact Higgs levels, Bethe levels for the nonpolynomial system, or one wavefunction.
    Spectrum(SpectrumArgs),
    /// Bethe-ansatz roots, energies and closure bookkeeping.
    Bethe(BetheArgs),
    /// Finite-difference eigenvalues with Richardson extrapolation.
    Oracle(OracleArgs),
    /// Analytic or Bethe levels against the oracle.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum System {
    Higgs,
    Nonpolynomial,
}

impl From<System> for Potential {
    fn from(s: System) -> Self {
        match s {
            System::Higgs => Potential::Higgs,
            System::Nonpolynomial => Potential::Nonpolynomial,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TrajectoryMethod {
    /// Closed-form orbit (sn form for the nonpolynomial system).
    Analytic,
    /// Landen-descended closed form (nonpolynomial system only).
    Landen,
    /// Fixed-step RK4 on the equation of motion.
    Rk4,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum CoordinateArg {
    Physical,
    Geodesic,
}

#[derive(Args, Clone, Serialize)]
struct Physics {
    /// Curvature parameter k.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    k: f64,
    #[arg(long, default_value_t = 1.0)]
    omega0: f64,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    /// Ordering mean ᾱ.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha_bar: f64,
    /// Ordering mean γ̄; for Bethe states it is the free parameter, ᾱ and ᾱγ̄ follow from the closure.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    gamma_bar: f64,
    /// Ordering mean ᾱγ̄.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alphagamma_bar: f64,
}

#[derive(Args, Clone, Serialize)]
struct Output {
    /// Write the artifact here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Emit {config, result} JSON with the resolved run configuration.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone, Serialize)]
struct TrajectoryArgs {
    #[arg(long, value_enum, default_value_t = System::Higgs)]
    system: System,
    #[arg(long, value_enum, default_value_t = TrajectoryMethod::Rk4)]
    method: TrajectoryMethod,
    /// Orbit amplitude A.
    #[arg(long, default_value_t = 1.0)]
    amplitude: f64,
    /// Phase C of the Higgs orbit.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phase: f64,
    /// RK4 initial position; defaults to the closed-form orbit at t = 0.
    #[arg(long, allow_negative_numbers = true)]
    x0: Option<f64>,
    /// RK4 initial velocity; defaults to the closed-form orbit at t = 0.
    #[arg(long, allow_negative_numbers = true)]
    xdot0: Option<f64>,
    #[arg(long, default_value_t = 20.0)]
    t_end: f64,
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    #[command(flatten)]
    physics: Physics,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Clone, Serialize)]
struct LevelArgs {
    #[arg(long, value_enum, default_value_t = System::Higgs)]
    system: System,
    #[arg(long, default_value_t = 1)]
    dim: u8,
    /// Orbital number (3D).
    #[arg(long, default_value_t = 0)]
    l: usize,
    /// Number of levels, n = 0..levels−1.
    #[arg(long, default_value_t = 5)]
    levels: usize,
    #[command(flatten)]
    physics: Physics,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Clone, Serialize)]
struct SpectrumArgs {
    #[arg(long, value_enum, default_value_t = System::Higgs)]
    system: System,
    #[arg(long, default_value_t = 1)]
    dim: u8,
    /// Angular label: l (3D), or 0 / 0.5 for even / odd nonpolynomial states in 1D.
    #[arg(long, default_value_t = 0.0)]
    l: f64,
    #[arg(long, default_value_t = 5)]
    levels: usize,
    /// Emit the normalized wavefunction of this level as x,psi (1D) or r,chi (3D).
    #[arg(long)]
    wavefunction: Option<usize>,
    /// Number of wavefunction samples.
    #[arg(long, default_value_t = 201)]
    points: usize,
    /// Sampling half-width for k ≥ 0 (the k < 0 samples span the open interval |x| < 1/√|k|).
    #[arg(long, default_value_t = 10.0)]
    extent: f64,
    #[command(flatten)]
    physics: Physics,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Clone, Serialize)]
struct BetheArgs {
    #[arg(long, default_value_t = 1)]
    dim: u8,
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// 0 or 0.5 in 1D, integer l in 3D.
    #[arg(long, default_value_t = 0.0)]
    l: f64,
    /// μ = ω₀/(ħk); overrides --k when given.
    #[arg(long, allow_negative_numbers = true)]
    mu: Option<f64>,
    #[command(flatten)]
    physics: Physics,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Clone, Serialize)]
struct NumericArgs {
    /// Interior grid points at the coarsest resolution.
    #[arg(long, default_value_t = 2000)]
    points: usize,
    /// Half-width of the domain in the chosen coordinate.
    #[arg(long)]
    half_width: Option<f64>,
    #[arg(long, value_enum)]
    coordinate: Option<CoordinateArg>,
}

impl NumericArgs {
    fn config(&self) -> OracleConfig {
        OracleConfig {
            points: self.points,
            half_width: self.half_width,
            coordinate: self.coordinate.map(|c| match c {
                CoordinateArg::Physical => Coordinate::Physical,
                CoordinateArg::Geodesic => Coordinate::Geodesic,
            }),
        }
    }
}

#[derive(Args, Clone, Serialize)]
struct OracleArgs {
    #[arg(long, value_enum, default_value_t = System::Higgs)]
    system: System,
    #[arg(long, default_value_t = 1)]
    dim: u8,
    #[arg(long, default_value_t = 0)]
    l: usize,
    #[arg(long, default_value_t = 5)]
    levels: usize,
    /// Emit the eigenfunction of this level as x,psi instead of the spectrum.
    #[arg(long)]
    wavefunction: Option<usize>,
    #[command(flatten)]
    numeric: NumericArgs,
    #[command(flatten)]
    physics: Physics,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Clone, Serialize)]
struct CompareArgs {
    #[arg(long, value_enum, default_value_t = System::Higgs)]
    system: System,
    #[arg(long, default_value_t = 1)]
    dim: u8,
    /// l in 3D; for the nonpolynomial system in 1D, 0 or 0.5.
    #[arg(long, default_value_t = 0.0)]
    l: f64,
    #[arg(long, default_value_t = 5)]
    levels: usize,
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    #[command(flatten)]
    numeric: NumericArgs,
    #[command(flatten)]
    physics: Physics,
    #[command(flatten)]
    out: Output,
}

/// Resolved run configuration echoed by `--json`.
#[derive(Serialize)]
struct RunConfig<'a, A: Serialize> {
    command: &'static str,
    params: SystemParams,
    ordering: OrderingParameters,
    args: &'a A,
}

/// Result of one command: JSON always, CSV where the command has a tabular form.
struct Artifact {
    json: Value,
    csv: Option<String>,
    default: Format,
    /// `Some(false)` marks a failed comparison (exit 3).
    pass: Option<bool>,
}

impl Artifact {
    fn table(json: Value, csv: String) -> Self {
        Self { json, csv: Some(csv), default: Format::Csv, pass: None }
    }

    fn document(json: Value) -> Self {
        Self { json, csv: None, default: Format::Json, pass: None }
    }
}

fn value<T: Serialize>(v: &T) -> Result<Value, Error> {
    serde_json::to_value(v).map_err(|e| Error::Unsupported(format!("JSON conversion failed: {e}")))
}

fn params_of(system: System, p: &Physics) -> Result<SystemParams, Error> {
    SystemParams::new(p.k, p.omega0, p.hbar, system.into())
}

fn ordering_of(p: &Physics) -> Result<OrderingParameters, Error> {
    OrderingParameters::new(p.alpha_bar, p.gamma_bar, p.alphagamma_bar)
}

fn dim_of(dim: u8, l: usize) -> Result<Dim, Error> {
    match dim {
        1 if l == 0 => Ok(Dim::One),
        1 => Err(Error::Argument(format!("--l {l} needs --dim 3"))),
        3 => Ok(Dim::Three { l }),
        d => Err(Error::Argument(format!("--dim must be 1 or 3, got {d}"))),
    }
}

fn sector_of(dim: u8, l: f64) -> Result<Sector, Error> {
    match dim {
        1 => Sector::line(l),
        3 if l >= 0.0 && l.fract() == 0.0 => Ok(Sector::Radial { l: l as usize }),
        3 => Err(Error::Argument(format!("3D orbital number must be a non-negative integer, got {l}"))),
        d => Err(Error::Argument(format!("--dim must be 1 or 3, got {d}"))),
    }
}

fn integer_l(l: f64) -> Result<usize, Error> {
    if l >= 0.0 && l.fract() == 0.0 {
        Ok(l as usize)
    } else {
        Err(Error::Argument(format!("--l must be a non-negative integer here, got {l}")))
    }
}

fn trajectory(a: &TrajectoryArgs) -> Result<Artifact, Error> {
    let p = params_of(a.system, &a.physics)?;
    if !(a.step > 0.0 && a.t_end > 0.0) {
        return Err(Error::Argument("--step and --t-end must be positive".into()));
    }
    let closed = |t: f64| -> Result<(f64, f64), Error> {
        match (a.system, a.method) {
            (System::Higgs, TrajectoryMethod::Landen) => {
                Err(Error::Argument("the Landen form applies to the nonpolynomial system only".into()))
            }
            (System::Higgs, _) => higgs_trajectory(a.amplitude, a.phase, &p, t),
            (System::Nonpolynomial, TrajectoryMethod::Landen) => v2_trajectory_landen(a.amplitude, &p, t),
            (System::Nonpolynomial, _) => v2_trajectory(a.amplitude, &p, t),
        }
    };
    let samples: Vec<Sample> = match a.method {
        TrajectoryMethod::Rk4 => {
            let (x0, v0) = match (a.x0, a.xdot0) {
                (Some(x), Some(v)) => (x, v),
                (None, None) => closed(0.0)?,
                _ => return Err(Error::Argument("give both --x0 and --xdot0 or neither".into())),
            };
            integrate_eom(&p, x0, v0, a.t_end, a.step)?.samples
        }
        _ => {
            let steps = (a.t_end / a.step).round() as usize;
            (0..=steps)
                .map(|i| {
                    let t = i as f64 * a.step;
                    let (x, xdot) = closed(t)?;
                    Ok(Sample { t, x, xdot, eps: first_integral(&p, x, xdot) })
                })
                .collect::<Result<_, Error>>()?
        }
    };
    Ok(Artifact::table(value(&samples)?, trajectory_csv(&samples)))
}

fn semiclassical(a: &LevelArgs) -> Result<Artifact, Error> {
    let p = params_of(a.system, &a.physics)?;
    if a.levels == 0 {
        return Err(Error::Argument("--levels must be at least 1".into()));
    }
    let n_max = a.levels - 1;
    let rows: Vec<SpectrumEntry> = match (a.system, dim_of(a.dim, a.l)?) {
        (System::Higgs, Dim::One) => higgs_semiclassical_spectrum(n_max, &p)
            .iter()
            .map(|lv| SpectrumEntry::bound(lv.n, 0.0, lv.energy, Method::Semiclassical))
            .collect(),
        (System::Higgs, Dim::Three { l }) => (0..=n_max)
            .map(|n| SpectrumEntry::bound(n, l as f64, higgs3d_semiclassical_energy(n, l, &p), Method::Semiclassical))
            .collect(),
        (System::Nonpolynomial, Dim::One) => v2_semiclassical_spectrum(n_max, &p)?
            .iter()
            .map(|lv| SpectrumEntry::bound(lv.n, 0.0, lv.energy, Method::Semiclassical))
            .collect(),
        (System::Nonpolynomial, Dim::Three { .. }) => {
            return Err(Error::Unsupported("semiclassical levels of the 3D nonpolynomial system".into()))
        }
    };
    Ok(Artifact::table(value(&rows)?, spectrum_csv(&rows)))
}

/// Bethe states for n = 0..levels−1 (at most n = 1), all root sets, ordered by n then energy.
fn bethe_levels(levels: usize, sector: Sector, gamma_bar: f64, p: &SystemParams) -> Result<Vec<(usize, BetheState)>, Error> {
    if levels > 2 {
        return Err(Error::QuasiExactLimit(format!(
            "closed-form Bethe states exist for n ≤ 1 only; {levels} levels requested"
        )));
    }
    let mut out = Vec::new();
    for n in 0..levels {
        out.extend(v2_states(n, sector, gamma_bar, p)?.into_iter().map(|s| (n, s)));
    }
    Ok(out)
}

fn sample_points(p: &SystemParams, radial: bool, extent: f64, count: usize) -> Result<Vec<f64>, Error> {
    if count < 2 {
        return Err(Error::Argument("--points must be at least 2".into()));
    }
    let hi = if p.k < 0.0 { p.edge() } else { extent };
    let lo = if radial { 0.0 } else { -hi };
    // Interior samples only: the k < 0 edge and r = 0 are excluded.
    Ok((0..count).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / count as f64).collect())
}

fn spectrum(a: &SpectrumArgs) -> Result<Artifact, Error> {
    let p = params_of(a.system, &a.physics)?;
    let op = ordering_of(&a.physics)?;
    if a.levels == 0 {
        return Err(Error::Argument("--levels must be at least 1".into()));
    }
    match a.system {
        System::Higgs => {
            let dim = dim_of(a.dim, integer_l(a.l)?)?;
            if let Some(n) = a.wavefunction {
                let radial = matches!(dim, Dim::Three { .. });
                let pts = sample_points(&p, radial, a.extent, a.points)?;
                let profile: Vec<(f64, f64)> = pts
                    .iter()
                    .map(|&x| {
                        let y = match dim {
                            Dim::One => higgs1d_wavefunction(n, &op, &p, x)?,
                            Dim::Three { l } => higgs3d_radial(n, l, &op, &p, x)?,
                        };
                        Ok((x, y))
                    })
                    .collect::<Result<_, Error>>()?;
                let (xa, ya) = if radial { ("r", "chi") } else { ("x", "psi") };
                let json = json!({ "n": n, "points": profile.iter().map(|(x, y)| json!({ xa: x, ya: y })).collect::<Vec<_>>() });
                return Ok(Artifact::table(json, profile_csv(xa, ya, &profile)));
            }
            let rows = match dim {
                Dim::One => higgs1d_spectrum(a.levels - 1, &op, &p)?,
                Dim::Three { l } => higgs3d_spectrum(a.levels - 1, l, &op, &p)?,
            };
            Ok(Artifact::table(value(&rows)?, spectrum_csv(&rows)))
        }
        System::Nonpolynomial => {
            let sector = sector_of(a.dim, a.l)?;
            let states = bethe_levels(a.levels, sector, a.physics.gamma_bar, &p)?;
            if let Some(n) = a.wavefunction {
                let state = states
                    .iter()
                    .find(|(m, _)| *m == n)
                    .map(|(_, s)| s)
                    .ok_or_else(|| Error::QuasiExactLimit(format!("no Bethe state with n = {n}")))?;
                let radial = matches!(sector, Sector::Radial { .. });
                let pts = sample_points(&p, radial, a.extent, a.points)?;
                let profile: Vec<(f64, f64)> =
                    pts.iter().map(|&x| (x, if radial { state.reduced(x) } else { state.value(x) })).collect();
                let (xa, ya) = if radial { ("r", "chi") } else { ("x", "psi") };
                let json = json!({ "n": n, "points": profile.iter().map(|(x, y)| json!({ xa: x, ya: y })).collect::<Vec<_>>() });
                return Ok(Artifact::table(json, profile_csv(xa, ya, &profile)));
            }
            let rows: Vec<SpectrumEntry> = states
                .iter()
                .map(|(n, s)| SpectrumEntry::bound(*n, sector.l_label(), s.solution.energy, Method::Bethe))
                .collect();
            Ok(Artifact::table(value(&rows)?, spectrum_csv(&rows)))
        }
    }
}

impl BetheArgs {
    /// Physics inputs with k derived from --mu when it is given.
    fn physics(&self) -> Result<Physics, Error> {
        let mut physics = self.physics.clone();
        if let Some(mu) = self.mu {
            if mu == 0.0 || !mu.is_finite() {
                return Err(Error::Argument(format!("--mu must be finite and non-zero, got {mu}")));
            }
            physics.k = physics.omega0 / (physics.hbar * mu);
        }
        Ok(physics)
    }
}

fn bethe(a: &BetheArgs) -> Result<Artifact, Error> {
    let physics = a.physics()?;
    let p = params_of(System::Nonpolynomial, &physics)?;
    let sector = sector_of(a.dim, a.l)?;
    let states = v2_states(a.n, sector, physics.gamma_bar, &p)?;
    let solutions: Vec<_> = states.iter().map(|s| &s.solution).collect();
    Ok(Artifact::document(value(&solutions)?))
}

fn oracle(a: &OracleArgs) -> Result<Artifact, Error> {
    let p = params_of(a.system, &a.physics)?;
    let op = ordering_of(&a.physics)?;
    let dim = dim_of(a.dim, a.l)?;
    let config = a.numeric.config();
    if let Some(j) = a.wavefunction {
        let profile = oracle_wavefunction(&p, &op, dim, j, &config)?;
        let (xa, ya) = if a.dim == 3 { ("r", "chi") } else { ("x", "psi") };
        let json = json!({ "n": j, "points": profile.iter().map(|(x, y)| json!({ xa: x, ya: y })).collect::<Vec<_>>() });
        return Ok(Artifact::table(json, profile_csv(xa, ya, &profile)));
    }
    let levels = oracle_levels(&p, &op, dim, a.levels, &config)?;
    let rows: Vec<SpectrumEntry> =
        levels.iter().map(|lv| SpectrumEntry::bound(lv.n, a.l as f64, lv.extrapolated, Method::Oracle)).collect();
    Ok(Artifact::table(value(&levels)?, spectrum_csv(&rows)))
}

fn compare(a: &CompareArgs) -> Result<Artifact, Error> {
    let p = params_of(a.system, &a.physics)?;
    let op = ordering_of(&a.physics)?;
    let config = a.numeric.config();
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(Error::Argument(format!("--tol must be positive, got {}", a.tol)));
    }
    let report = match a.system {
        System::Higgs => {
            let dim = dim_of(a.dim, integer_l(a.l)?)?;
            let analytic: Vec<f64> = (0..a.levels)
                .map(|n| match dim {
                    Dim::One => higgs1d_energy(n, &op, &p),
                    Dim::Three { l } => higgs3d_energy(n, l, &op, &p),
                })
                .collect::<Result<_, Error>>()?;
            let numeric: Vec<f64> = oracle_levels(&p, &op, dim, a.levels, &config)?.iter().map(|l| l.extrapolated).collect();
            compare_spectra(&analytic, &numeric, a.tol)?
        }
        System::Nonpolynomial => {
            // Each Bethe state fixes its own ordering; it is compared with the nearest oracle level
            // of the similarity-equivalent Hermitian problem under that ordering.
            let sector = sector_of(a.dim, a.l)?;
            let dim = match sector {
                Sector::Line { .. } => Dim::One,
                Sector::Radial { l } => Dim::Three { l },
            };
            let states = bethe_levels(a.levels, sector, a.physics.gamma_bar, &p)?;
            let mut analytic = Vec::new();
            let mut numeric = Vec::new();
            for (_, s) in &states {
                let e = s.solution.energy;
                let levels = oracle_levels(&p, &s.op, dim, 2 * a.levels + 4, &config)?;
                let nearest = levels
                    .iter()
                    .map(|l| l.extrapolated)
                    .min_by(|x, y| (x - e).abs().total_cmp(&(y - e).abs()))
                    .ok_or_else(|| Error::Convergence("oracle returned no levels".into()))?;
                analytic.push(e);
                numeric.push(nearest);
            }
            let mut report = compare_spectra(&analytic, &numeric, a.tol)?;
            for (level, (n, _)) in report.levels.iter_mut().zip(&states) {
                level.n = *n;
            }
            report
        }
    };
    let json = json!({ "params": value(&p)?, "ordering": value(&op)?, "levels": value(&report.levels)?, "pass": report.pass });
    Ok(Artifact { json, csv: None, default: Format::Json, pass: Some(report.pass) })
}

fn emit<A: Serialize>(name: &'static str, args: &A, physics: &Physics, system: Option<System>, out: &Output, artifact: Artifact) -> Result<Option<bool>, Error> {
    let text = if out.json {
        let params = SystemParams {
            k: physics.k,
            omega0: physics.omega0,
            hbar: physics.hbar,
            potential: system.unwrap_or(System::Nonpolynomial).into(),
        };
        let ordering = OrderingParameters {
            alpha_bar: physics.alpha_bar,
            gamma_bar: physics.gamma_bar,
            alphagamma_bar: physics.alphagamma_bar,
        };
        let config = RunConfig { command: name, params, ordering, args };
        to_json(&json!({ "config": value(&config)?, "result": artifact.json }))?
    } else {
        match (out.format.unwrap_or(artifact.default), artifact.csv) {
            (Format::Json, _) => to_json(&artifact.json)?,
            (Format::Csv, Some(csv)) => csv,
            (Format::Csv, None) => return Err(Error::Argument(format!("`{name}` has no CSV form; use --format json"))),
        }
    };
    match &out.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    return Err(Error::Domain(format!("cannot write to standard output: {e}")));
                }
                _ => {}
            }
        }
    }
    Ok(artifact.pass)
}

fn run(cli: Cli) -> Result<Option<bool>, Error> {
    match &cli.command {
        Command::Trajectory(a) => emit("trajectory", a, &a.physics, Some(a.system), &a.out, trajectory(a)?),
        Command::Semiclassical(a) => emit("semiclassical", a, &a.physics, Some(a.system), &a.out, semiclassical(a)?),
        Command::Spectrum(a) => emit("spectrum", a, &a.physics, Some(a.system), &a.out, spectrum(a)?),
        Command::Bethe(a) => {
            let artifact = bethe(a)?;
            emit("bethe", a, &a.physics()?, None, &a.out, artifact)
        }
        Command::Oracle(a) => emit("oracle", a, &a.physics, Some(a.system), &a.out, oracle(a)?),
        Command::Compare(a) => emit("compare", a, &a.physics, Some(a.system), &a.out, compare(a)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Some(false)) => {
            eprintln!("comparison failed: at least one level exceeds the tolerance");
            ExitCode::from(3)
        }
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
