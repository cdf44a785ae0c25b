//! The `atlas` command line: parameter/orbit queries as JSON, plane renders
//! as PPM/PNG with optional CSV sidecars, lift tables, and multiplier solves.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 numeric failure.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::atlas::{classify_parameter, param_plane_grid, PlaneSpec};
use crate::circle::{build_lift, semiconjugacy};
use crate::config::Settings;
use crate::error::AtlasError;
use crate::export;
use crate::family::{BlaschkeParam, ExtComplex};
use crate::orbit::{classify_fate, OrbitSpec};
use crate::polys::{poly_plane_grid, PolyFamily};
use crate::render;
use crate::solver::{find_superattracting, solve_multiplier};

#[derive(Parser)]
#[command(
    name = "atlas",
    version,
    about = "Dynamics of the Blaschke family B_a(z) = z³(z−a)/(1−āz)"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Flat key=value settings file; explicit flags win over its entries
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Worker threads for plane commands (default: $ATLAS_THREADS, then all cores)
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify one parameter and print the record as JSON
    Classify(ClassifyArgs),
    /// Iterate one seed under B_a and print its fate as JSON
    Orbit(OrbitArgs),
    /// Render a parameter-plane window
    ParamPlane(ParamPlaneArgs),
    /// Render a dynamical-plane window at a fixed parameter
    DynPlane(DynPlaneArgs),
    /// Render a comparison-family parameter window
    PolyPlane(PolyPlaneArgs),
    /// Tabulate the circle lift F and the conjugacy approximation H
    Lift(LiftArgs),
    /// Solve Λ(a) = λ inside a disjoint hyperbolic component
    SolveMultiplier(SolveArgs),
    /// Locate the superattracting center of a disjoint component
    Center(CenterArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Parameter, as `re,im` or a bare real
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, value_name = "N")]
    max_iter: Option<usize>,
    #[arg(long, value_name = "X")]
    eps_cycle: Option<f64>,
    /// Write the JSON here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Seed, as `re,im`, a bare real, or `inf`
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, value_name = "N")]
    max_iter: Option<usize>,
    #[arg(long, value_name = "X")]
    eps_cycle: Option<f64>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WindowArgs {
    /// Window center, as `re,im` or a bare real
    #[arg(long, allow_hyphen_values = true)]
    center: Option<String>,
    /// Window width in the complex plane (height follows the aspect ratio)
    #[arg(long, value_name = "W")]
    width: Option<f64>,
    /// Resolution: `n` for square, or `nx,ny`
    #[arg(long, value_name = "N")]
    res: Option<String>,
    #[arg(long, value_name = "N")]
    max_iter: Option<usize>,
    #[arg(long, value_name = "X")]
    eps_cycle: Option<f64>,
    /// Image path; `.png` selects PNG, anything else P6 PPM
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Record sidecar in the grid CSV schema
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct ParamPlaneArgs {
    #[command(flatten)]
    window: WindowArgs,
    /// Re-render from a previously exported CSV instead of recomputing
    #[arg(long, value_name = "PATH")]
    from_csv: Option<PathBuf>,
}

#[derive(Args)]
struct DynPlaneArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[command(flatten)]
    window: WindowArgs,
}

#[derive(Args)]
struct PolyPlaneArgs {
    /// blaschke, cubic, antiquadratic, antiquadratic-squared, or quadratic
    #[arg(long)]
    family: Option<String>,
    #[command(flatten)]
    window: WindowArgs,
    #[arg(long, value_name = "PATH")]
    from_csv: Option<PathBuf>,
}

#[derive(Args)]
struct LiftArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Sample count for the lift table
    #[arg(long, value_name = "N")]
    grid: Option<usize>,
    /// Conjugacy depth n for H_n = F^n / 2^n
    #[arg(long, value_name = "N")]
    depth: Option<u32>,
    /// CSV path; stdout when omitted
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Seed parameter in the component of interest
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Target multiplier in the open unit disk, as `re,im`
    #[arg(long, allow_hyphen_values = true)]
    target: Option<String>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CenterArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Cycle period of the component
    #[arg(long, value_name = "P")]
    period: Option<usize>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

struct Ctx {
    settings: Settings,
    threads: Option<usize>,
}

impl Ctx {
    fn new(cli: &Cli) -> Result<Self, AtlasError> {
        let settings = match &cli.config {
            Some(path) => Settings::load(path)?,
            None => Settings::default(),
        };
        let threads = match cli.threads.or(settings.typed("threads")?) {
            Some(n) => Some(n),
            None => match std::env::var("ATLAS_THREADS") {
                Ok(raw) => Some(raw.parse().map_err(|_| {
                    AtlasError::Config(format!("ATLAS_THREADS must be an integer, got {raw:?}"))
                })?),
                Err(_) => None,
            },
        };
        Ok(Ctx { settings, threads })
    }

    fn complex(&self, flag: &Option<String>, key: &str) -> Result<Option<Complex64>, AtlasError> {
        match flag.as_deref().or_else(|| self.settings.get(key)) {
            Some(raw) => parse_complex(raw).map(Some),
            None => Ok(None),
        }
    }

    fn required_complex(&self, flag: &Option<String>, key: &str) -> Result<Complex64, AtlasError> {
        self.complex(flag, key)?
            .ok_or_else(|| AtlasError::Usage(format!("--{key} is required")))
    }

    fn orbit_spec(
        &self,
        base: OrbitSpec,
        max_iter: Option<usize>,
        eps_cycle: Option<f64>,
    ) -> Result<OrbitSpec, AtlasError> {
        let mut spec = base;
        if let Some(n) = max_iter.or(self.settings.typed("max-iter")?) {
            spec.max_iter = n;
        }
        if let Some(x) = eps_cycle.or(self.settings.typed("eps-cycle")?) {
            spec.eps_cycle = x;
        }
        Ok(spec)
    }

    fn window(&self, args: &WindowArgs, default_width: f64) -> Result<PlaneSpec, AtlasError> {
        let center = self
            .complex(&args.center, "center")?
            .unwrap_or(Complex64::new(0.0, 0.0));
        let width = args
            .width
            .or(self.settings.typed("width")?)
            .unwrap_or(default_width);
        let res = match args.res.as_deref().or_else(|| self.settings.get("res")) {
            Some(raw) => parse_res(raw)?,
            None => (400, 400),
        };
        let orbit = self.orbit_spec(OrbitSpec::for_grid(), args.max_iter, args.eps_cycle)?;
        let height = width * res.1 as f64 / res.0 as f64;
        PlaneSpec::new(center, width, height, res.0, res.1, orbit)
    }
}

fn parse_complex(raw: &str) -> Result<Complex64, AtlasError> {
    let bad = || AtlasError::Usage(format!("expected a complex number as `re,im`, got {raw:?}"));
    let (re, im) = match raw.trim().split_once(',') {
        Some((re, im)) => (re, im),
        None => (raw.trim(), "0"),
    };
    Ok(Complex64::new(
        re.trim().parse().map_err(|_| bad())?,
        im.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_res(raw: &str) -> Result<(usize, usize), AtlasError> {
    let bad = || AtlasError::Usage(format!("expected a resolution as `n` or `nx,ny`, got {raw:?}"));
    match raw.trim().split_once(',') {
        Some((nx, ny)) => Ok((
            nx.trim().parse().map_err(|_| bad())?,
            ny.trim().parse().map_err(|_| bad())?,
        )),
        None => {
            let n = raw.trim().parse().map_err(|_| bad())?;
            Ok((n, n))
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), AtlasError> {
    match out {
        Some(path) => export::write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Full record plus the flat summary fields the CSV schema exposes.
fn classify_json(record: &crate::atlas::ParamClassRecord) -> String {
    let mut value = serde_json::to_value(record).expect("record serialization is total");
    value["period"] = record.period().into();
    value["multiplier"] =
        serde_json::to_value(record.multiplier()).expect("complex serialization is total");
    let mut text = serde_json::to_string_pretty(&value).expect("json value");
    text.push('\n');
    text
}

fn execute(cli: Cli) -> Result<(), AtlasError> {
    let ctx = Ctx::new(&cli)?;
    match &cli.cmd {
        Cmd::Classify(args) => {
            let a = ctx.required_complex(&args.a, "a")?;
            let spec = ctx.orbit_spec(OrbitSpec::default(), args.max_iter, args.eps_cycle)?;
            let record = classify_parameter(a, &spec);
            emit(&args.out, &classify_json(&record))
        }
        Cmd::Orbit(args) => {
            let a = ctx.required_complex(&args.a, "a")?;
            let raw_z = args
                .z
                .clone()
                .or_else(|| ctx.settings.get("z").map(str::to_string))
                .ok_or_else(|| AtlasError::Usage("--z is required".into()))?;
            let z0 = if raw_z.trim() == "inf" {
                ExtComplex::Infinity
            } else {
                ExtComplex::Finite(parse_complex(&raw_z)?)
            };
            let spec = ctx.orbit_spec(OrbitSpec::default(), args.max_iter, args.eps_cycle)?;
            let p = BlaschkeParam::new(a);
            if p.is_degenerate() {
                return Err(AtlasError::DegenerateParameter(a));
            }
            let fate = classify_fate(&p, z0, &spec);
            emit(&args.out, &export::to_json(&fate))
        }
        Cmd::ParamPlane(args) => {
            let window = ctx.window(&args.window, 16.0)?;
            if args.window.out.is_none() && args.window.csv.is_none() {
                return Err(AtlasError::Usage(
                    "param-plane needs --out and/or --csv".into(),
                ));
            }
            let pixels = if let Some(cache) = &args.from_csv {
                let records = export::parse_param_csv(&export::read_text(cache)?)?;
                if records.len() != window.len() {
                    return Err(AtlasError::Config(format!(
                        "cache holds {} records but the window asks for {}",
                        records.len(),
                        window.len()
                    )));
                }
                if let Some(csv) = &args.window.csv {
                    return Err(AtlasError::Usage(format!(
                        "--from-csv with --csv would copy {} onto {}",
                        cache.display(),
                        csv.display()
                    )));
                }
                render::render_csv_records(&records)
            } else {
                let records =
                    render::with_worker_count(ctx.threads, || param_plane_grid(&window));
                if let Some(csv) = &args.window.csv {
                    export::write_text(csv, &export::param_csv(&records))?;
                }
                render::render_param_plane(&records)
            };
            match &args.window.out {
                Some(out) => render::write_image(out, window.nx, window.ny, &pixels),
                None => Ok(()),
            }
        }
        Cmd::DynPlane(args) => {
            let a = ctx.required_complex(&args.a, "a")?;
            let window = ctx.window(&args.window, 6.0)?;
            let out = args
                .window
                .out
                .as_ref()
                .ok_or_else(|| AtlasError::Usage("dyn-plane needs --out".into()))?;
            let pixels =
                render::with_worker_count(ctx.threads, || render::render_dyn_plane(a, &window))?;
            render::write_image(out, window.nx, window.ny, &pixels)
        }
        Cmd::PolyPlane(args) => {
            let family: PolyFamily = args
                .family
                .as_deref()
                .or_else(|| ctx.settings.get("family"))
                .ok_or_else(|| AtlasError::Usage("--family is required".into()))?
                .parse()?;
            let window = ctx.window(&args.window, 4.0)?;
            if args.window.out.is_none() && args.window.csv.is_none() {
                return Err(AtlasError::Usage(
                    "poly-plane needs --out and/or --csv".into(),
                ));
            }
            let pixels = if let Some(cache) = &args.from_csv {
                let records = export::parse_poly_csv(&export::read_text(cache)?)?;
                if records.len() != window.len() {
                    return Err(AtlasError::Config(format!(
                        "cache holds {} records but the window asks for {}",
                        records.len(),
                        window.len()
                    )));
                }
                render::render_csv_records(&records)
            } else {
                let records =
                    render::with_worker_count(ctx.threads, || poly_plane_grid(family, &window));
                if let Some(csv) = &args.window.csv {
                    export::write_text(csv, &export::poly_csv(&records))?;
                }
                render::render_poly_plane(&records)
            };
            match &args.window.out {
                Some(out) => render::write_image(out, window.nx, window.ny, &pixels),
                None => Ok(()),
            }
        }
        Cmd::Lift(args) => {
            let a = ctx.required_complex(&args.a, "a")?;
            let grid = args
                .grid
                .or(ctx.settings.typed("grid")?)
                .unwrap_or(1024);
            let depth = args.depth.or(ctx.settings.typed("depth")?).unwrap_or(40);
            let p = BlaschkeParam::new(a);
            let lift = build_lift(&p, grid)?;
            let sample = semiconjugacy(&p, &lift, depth)?;
            emit(&args.csv, &export::lift_csv(&lift, &sample))
        }
        Cmd::SolveMultiplier(args) => {
            let a = ctx.required_complex(&args.a, "a")?;
            let target = ctx.required_complex(&args.target, "target")?;
            let spec = ctx.orbit_spec(OrbitSpec::default(), None, None)?;
            let report = solve_multiplier(a, target, &spec)?;
            emit(&args.out, &export::to_json(&report))
        }
        Cmd::Center(args) => {
            let a = ctx.required_complex(&args.a, "a")?;
            let period = args
                .period
                .or(ctx.settings.typed("period")?)
                .ok_or_else(|| AtlasError::Usage("--period is required".into()))?;
            let spec = ctx.orbit_spec(OrbitSpec::default(), None, None)?;
            let report = find_superattracting(a, period, &spec)?;
            emit(&args.out, &export::to_json(&report))
        }
    }
}
