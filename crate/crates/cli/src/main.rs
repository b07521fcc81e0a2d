use std::fs;
use std::io::{self, Read, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use agsurf::asymptotic::{
    code_bound_checks, diagram_csv, diagram_rows, diagram_svg, domain_membership, phi_g, polygon_image,
    product_curve_point, AsymptoticPoint,
};
use agsurf::bounds::{lifted_bound, parameter_report, BoundReport, GammaChoice, HansenCurves, ReportOptions};
use agsurf::codes::{build_code, min_distance_with_threads, PointTag, DEFAULT_DISTANCE_BUDGET};
use agsurf::surface::{SurfaceKind, SurfaceModel};
use agsurf::tower::{hyperelliptic_product_certificate, search_parameters, TowerCertificate};
use agsurf::{Error, ErrorClass, FieldSpec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde::Serialize;

/// Seed used when `--seed` is not given.
const DEFAULT_SEED: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "agsurf", version, about = "Evaluation codes on algebraic surfaces over finite fields")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build codes and compute exact minimum distances.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Compare every applicable bound for a code.
    Bounds(BoundsArgs),
    /// Golod–Shafarevich certificates on products of hyperelliptic curves.
    #[command(subcommand)]
    Tower(TowerCmd),
    /// Asymptotic invariants and code parameters.
    #[command(subcommand)]
    Asym(AsymCmd),
}

#[derive(Subcommand, Debug)]
enum CodeCmd {
    /// Write the generator matrix of `C_L(X, P, G)`.
    Build(CodeArgs),
    /// Read a code and add its exact minimum distance.
    Distance {
        /// Code JSON; stdin when absent.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DISTANCE_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SurfaceName {
    P2,
    P1xp1,
    Hirzebruch,
    CurveProduct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PointsName {
    All,
    Grid,
}

#[derive(Args, Debug)]
struct CodeArgs {
    #[arg(long, value_enum)]
    surface: SurfaceName,
    /// Hirzebruch twist.
    #[arg(long)]
    e: Option<i64>,
    #[arg(long)]
    g_c: Option<i64>,
    #[arg(long)]
    g_d: Option<i64>,
    #[arg(long)]
    n_c: Option<u64>,
    #[arg(long)]
    n_d: Option<u64>,
    #[arg(long)]
    q: u64,
    /// Divisor coordinates, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    divisor: String,
    #[arg(long, value_enum, default_value_t = PointsName::All)]
    points: PointsName,
    /// Grid values in the first coordinate, as element indices; all of F_q by default.
    #[arg(long)]
    grid_a: Option<String>,
    #[arg(long)]
    grid_b: Option<String>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// `universal`, `universal-affine` or `custom:<coords>`.
    #[arg(long, default_value = "universal")]
    gamma: String,
    /// Also compute the exact distance within `--budget`.
    #[arg(long)]
    exact: bool,
    #[arg(long, default_value_t = DEFAULT_DISTANCE_BUDGET)]
    budget: u128,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Seshadri-type parameter as `num/den`.
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    xi: Option<i64>,
    #[arg(long)]
    hansen_ell: Option<i64>,
    #[arg(long)]
    hansen_n: Option<i64>,
    /// Intersection numbers `L·C_i`, comma separated.
    #[arg(long)]
    hansen_lc: Option<String>,
    /// Pull the report back along an étale cover of this degree.
    #[arg(long)]
    lift: Option<i64>,
}

#[derive(Subcommand, Debug)]
enum TowerCmd {
    /// Certificate for one `(q, g1, g2, ρ)`.
    Check {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        g1: usize,
        #[arg(long)]
        g2: usize,
        #[arg(long, default_value_t = 1)]
        rho: usize,
    },
    /// Passing certificates over ranges such as `25..32`.
    Search {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
        #[arg(long, default_value = "1")]
        rho: String,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Subcommand, Debug)]
enum AsymCmd {
    /// Image of `(κ, χ)` under `φ_g`.
    Map {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        g: u64,
        /// `κ,χ` with rational parts, e.g. `1/9,0`.
        #[arg(long)]
        point: String,
    },
    /// Corners of the admissible polygon and their images.
    Polygon {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        g: u64,
    },
    /// Sampled CSV of the map over a rectangle.
    Diagram {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        g: u64,
        #[arg(long, default_value_t = 100)]
        grid: usize,
        /// Also write an SVG sketch here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// The point of a product of two curves.
    Product {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        g1: u64,
        #[arg(long)]
        g2: u64,
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        n2: u64,
    },
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Core(Error::Io(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Core(Error::Json(e))
    }
}

impl CliError {
    fn class(&self) -> ErrorClass {
        match self {
            CliError::Core(e) => e.class(),
            CliError::Usage(_) => ErrorClass::Precondition,
        }
    }

    fn exit_code(&self) -> u8 {
        match self.class() {
            ErrorClass::Precondition => 2,
            ErrorClass::Budget => 3,
            ErrorClass::Io => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(m) => m.clone(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<Vec<T>> {
    s.split(',')
        .map(|p| p.trim().parse().map_err(|_| usage(format!("bad {what} entry {p:?}"))))
        .collect()
}

fn parse_range(s: &str) -> CliResult<RangeInclusive<usize>> {
    let bad = || usage(format!("bad range {s:?}, expected a..b or a single value"));
    let parse = |p: &str| p.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => Ok(parse(a)?..=parse(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = parse(s)?;
            Ok(v..=v)
        }
    }
}

fn need<T>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| usage(format!("--{flag} is required for this surface")))
}

impl CodeArgs {
    fn surface(&self) -> CliResult<SurfaceModel> {
        let kind = match self.surface {
            SurfaceName::P2 => SurfaceKind::ProjectivePlane,
            SurfaceName::P1xp1 => SurfaceKind::QuadricP1xP1,
            SurfaceName::Hirzebruch => SurfaceKind::Hirzebruch { e: need(self.e, "e")? },
            SurfaceName::CurveProduct => SurfaceKind::CurveProduct {
                g_c: need(self.g_c, "g-c")?,
                g_d: need(self.g_d, "g-d")?,
                n_c: need(self.n_c, "n-c")?,
                n_d: need(self.n_d, "n-d")?,
            },
        };
        Ok(SurfaceModel::new(kind)?)
    }

    fn tag(&self, q: u64) -> CliResult<PointTag> {
        match self.points {
            PointsName::All => {
                if self.grid_a.is_some() || self.grid_b.is_some() {
                    return Err(usage("--grid-a/--grid-b need --points grid"));
                }
                Ok(PointTag::All)
            }
            PointsName::Grid => {
                let side = |s: &Option<String>| -> CliResult<Vec<u32>> {
                    match s {
                        Some(s) => parse_list(s, "grid"),
                        None => Ok((0..q as u32).collect()),
                    }
                };
                Ok(PointTag::Grid { a: side(&self.grid_a)?, b: side(&self.grid_b)? })
            }
        }
    }
}

fn emit(cli: &Cli, body: &str) -> CliResult<()> {
    match &cli.out {
        Some(p) => fs::write(p, body)?,
        None => io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn report_csv(r: &BoundReport) -> String {
    let mut s = String::from("name,value,applicable,reason\n");
    for e in &r.entries {
        s.push_str(&format!("{},{},{},{}\n", e.name, e.value, e.applicable, csv_field(&e.reason)));
    }
    s
}

fn certificates_csv(certs: &[TowerCertificate]) -> String {
    let mut s = String::from("q,g1,g2,rho,count_C,count_D,h1G,h2G,rT_upper,T_size,gs_lhs_squared,gs_rhs,gs_pass\n");
    for c in certs {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            c.q,
            c.g1,
            c.g2,
            c.rho,
            c.count_c,
            c.count_d,
            c.h1g,
            c.h2g,
            c.rt_upper,
            c.t_size,
            c.gs_lhs_squared,
            c.gs_rhs,
            c.gs_pass
        ));
    }
    s
}

fn cmd_code(cli: &Cli, cmd: &CodeCmd) -> CliResult<()> {
    match cmd {
        CodeCmd::Build(args) => {
            let surface = args.surface()?;
            let field = FieldSpec::with_order(args.q)?;
            let g = surface.divisor(&parse_list::<i64>(&args.divisor, "divisor")?)?;
            let code = build_code(&surface, &g, &field, &args.tag(args.q)?)?;
            match cli.format {
                Format::Json => emit(cli, &json(&code)?),
                Format::Csv => emit(cli, &code.to_csv()),
            }
        }
        CodeCmd::Distance { input, budget, threads } => {
            let text = match input {
                Some(p) => fs::read_to_string(p)?,
                None => {
                    let mut s = String::new();
                    io::stdin().read_to_string(&mut s)?;
                    s
                }
            };
            let mut code: agsurf::codes::LinearCode = serde_json::from_str(&text)?;
            let d = min_distance_with_threads(&code, *budget, *threads)?;
            code.set_distance(d);
            match cli.format {
                Format::Json => emit(cli, &json(&code)?),
                Format::Csv => emit(cli, &format!("n,k,d\n{},{},{}\n", code.n(), code.k(), d)),
            }
        }
    }
}

fn cmd_bounds(cli: &Cli, args: &BoundsArgs) -> CliResult<()> {
    let c = &args.code;
    let surface = c.surface()?;
    let g = surface.divisor(&parse_list::<i64>(&c.divisor, "divisor")?)?;
    let gamma = match args.gamma.as_str() {
        "universal" => GammaChoice::Universal,
        "universal-affine" => GammaChoice::UniversalAffine,
        other => match other.strip_prefix("custom:") {
            Some(coords) => GammaChoice::Custom(parse_list(coords, "gamma")?),
            None => return Err(usage(format!("unknown --gamma {other:?}"))),
        },
    };
    let epsilon = match &args.epsilon {
        None => None,
        Some(s) => {
            let v: Vec<i64> = s.split('/').map(|p| p.trim().parse()).collect::<Result<_, _>>().map_err(|_| usage(format!("bad --epsilon {s:?}")))?;
            match v[..] {
                [n] => Some(Rational64::from_integer(n)),
                [n, d] if d != 0 => Some(Rational64::new(n, d)),
                _ => return Err(usage(format!("bad --epsilon {s:?}"))),
            }
        }
    };
    let hansen_curves = match (args.hansen_ell, args.hansen_n, &args.hansen_lc) {
        (None, None, None) => None,
        (Some(ell), Some(big_n), Some(lc)) => Some(HansenCurves { ell, big_n, lc: parse_list(lc, "hansen-lc")? }),
        _ => return Err(usage("--hansen-ell, --hansen-n and --hansen-lc go together")),
    };
    let opts = ReportOptions {
        gamma,
        tag: c.tag(c.q)?,
        exact_budget: args.exact.then_some(args.budget),
        threads: args.threads,
        epsilon,
        xi: args.xi,
        hansen_curves,
    };
    let mut report = parameter_report(&surface, &g, c.q, &opts)?;
    if let Some(deg) = args.lift {
        report = lifted_bound(&report, deg)?;
    }
    match cli.format {
        Format::Json => emit(cli, &json(&report)?),
        Format::Csv => emit(cli, &report_csv(&report)),
    }
}

fn cmd_tower(cli: &Cli, cmd: &TowerCmd) -> CliResult<()> {
    match cmd {
        TowerCmd::Check { q, g1, g2, rho } => {
            let cert = hyperelliptic_product_certificate(*q, *g1, *g2, *rho, cli.seed)?;
            match cli.format {
                Format::Json => emit(cli, &json(&cert)?),
                Format::Csv => emit(cli, &certificates_csv(std::slice::from_ref(&cert))),
            }
        }
        TowerCmd::Search { q, g1, g2, rho, threads } => {
            let certs = search_parameters(*q, parse_range(g1)?, parse_range(g2)?, parse_range(rho)?, cli.seed, *threads)?;
            match cli.format {
                Format::Json => emit(cli, &json(&certs)?),
                Format::Csv => emit(cli, &certificates_csv(&certs)),
            }
        }
    }
}

#[derive(Serialize)]
struct MapOutput {
    point: AsymptoticPoint,
    image: agsurf::asymptotic::CodePoint,
    domain: agsurf::asymptotic::DomainFlags,
    code_bounds: agsurf::asymptotic::CodeBoundFlags,
}

fn cmd_asym(cli: &Cli, cmd: &AsymCmd) -> CliResult<()> {
    match cmd {
        AsymCmd::Map { q, g, point } => {
            let pt = AsymptoticPoint::parse(point)?;
            let image = phi_g(*q, *g, &pt)?;
            let out = MapOutput {
                domain: domain_membership(*q, &pt)?,
                code_bounds: code_bound_checks(*q, &image),
                point: pt,
                image,
            };
            match cli.format {
                Format::Json => emit(cli, &json(&out)?),
                Format::Csv => emit(
                    cli,
                    &format!(
                        "kappa,chi,delta,R\n{},{},{}/{},{}/{}\n",
                        out.point.kappa,
                        out.point.chi,
                        out.image.delta.numer(),
                        out.image.delta.denom(),
                        out.image.rate.numer(),
                        out.image.rate.denom()
                    ),
                ),
            }
        }
        AsymCmd::Polygon { q, g } => {
            let poly = polygon_image(*q, *g)?;
            match cli.format {
                Format::Json => emit(cli, &json(&poly)?),
                Format::Csv => {
                    let mut s = String::from("corner,kappa,chi,delta,R\n");
                    for (name, (src, img)) in ["A", "B", "C", "D"].iter().zip(poly.sources().into_iter().zip(poly.images())) {
                        s.push_str(&format!(
                            "{name},{},{},{}/{},{}/{}\n",
                            src.kappa,
                            src.chi,
                            img.delta.numer(),
                            img.delta.denom(),
                            img.rate.numer(),
                            img.rate.denom()
                        ));
                    }
                    emit(cli, &s)
                }
            }
        }
        AsymCmd::Diagram { q, g, grid, svg } => {
            let rows = diagram_rows(*q, *g, *grid)?;
            emit(cli, &diagram_csv(&rows))?;
            if let Some(p) = svg {
                fs::write(p, diagram_svg(*q, *g)?)?;
            }
            Ok(())
        }
        AsymCmd::Product { q, g1, g2, n1, n2 } => {
            let p = product_curve_point(*q, *g1, *g2, *n1, *n2)?;
            match cli.format {
                Format::Json => emit(cli, &json(&p)?),
                Format::Csv => {
                    emit(cli, &format!("kappa,chi,dv_floor_ok\n{},{},{}\n", p.point.kappa, p.point.chi, p.dv_floor_ok))
                }
            }
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Code(c) => cmd_code(cli, c),
        Command::Bounds(b) => cmd_bounds(cli, b),
        Command::Tower(t) => cmd_tower(cli, t),
        Command::Asym(a) => cmd_asym(cli, a),
    }
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    class: &'a str,
    exit_code: u8,
    message: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let class = match e.class() {
                ErrorClass::Precondition => "precondition",
                ErrorClass::Budget => "budget",
                ErrorClass::Io => "io",
            };
            let body = ErrorBody { class, exit_code: e.exit_code(), message: e.message() };
            let text = serde_json::json!({ "error": body });
            eprintln!("{text}");
            ExitCode::from(e.exit_code())
        }
    }
}
