use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dualstokes::alexander::{self, compute_alexander, Convention};
use dualstokes::derham::check_stokes_curve;
use dualstokes::invariants::invariant_report;
use dualstokes::movie::{parse_movie, serialize_movie, slice_formula_check, st2_report, Movie};
use dualstokes::random::generate_random_diagram;
use dualstokes::rational::parse_q;
use dualstokes::signs::{self, epsilon, gleams, EpsilonConvention};
use dualstokes::verify::{self, Format, Options, Report};
use dualstokes::{corpus, parse_diagram, serialize_diagram, CurveDiagram, Error, Q};

#[derive(Parser)]
#[command(
    name = "dualstokes",
    version,
    about = "Exact Stokes identities for plane curves and surface slice movies"
)]
struct Cli {
    /// How ε is read off the two passes at a double point
    #[arg(long, global = true, default_value = "standard", value_parser = parse_epsilon)]
    epsilon_convention: EpsilonConvention,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Single-diagram reports
    #[command(subcommand)]
    Curve(CurveCommand),
    /// The local triple-point model
    #[command(subcommand)]
    Surface(SurfaceCommand),
    /// Slice movies
    #[command(subcommand)]
    Movie(MovieCommand),
    /// Finite differences
    #[command(subcommand)]
    Findiff(FindiffCommand),
    /// Run the identity suites
    Verify(VerifyArgs),
    /// Print a diagram: a seeded random curve or a corpus entry
    Gen(GenArgs),
}

/// A diagram file, or `corpus:<name>` for a shipped curve.
#[derive(Args)]
struct Input {
    file: String,
}

#[derive(Subcommand)]
enum CurveCommand {
    /// Validate and print the diagram with its cell counts
    Parse(Input),
    /// Alexander numbering of every region
    Alexander(Input),
    /// (1/6) d² = (1/2) d¹ = ind at every double point
    Stokes(Input),
    /// ε, arc signs and gleams
    Signs(Input),
    /// St₍₁₎ and St at three levels, the base-arc sweep and the ledger
    Invariants(Input),
}

#[derive(Subcommand)]
enum SurfaceCommand {
    /// Level identities of the triple-point ball over half-integers
    LocalCheck {
        /// sweep k/2 for k in -range..=range
        #[arg(long, default_value_t = 21)]
        range: i64,
        #[arg(long, default_value = "text", value_parser = parse_format)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum MovieCommand {
    /// St₍₂₎ with one record per triple point
    St2 {
        file: PathBuf,
        /// also print every materialized frame
        #[arg(long)]
        frames: bool,
    },
    /// Check dSt₍₂₎ = dSt₍₁₎ + sigma between two movies
    Compare {
        before: PathBuf,
        after: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_sigma)]
        sigma: i64,
        /// the designated St₍₁₎ jump
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        ds1: Q,
    },
}

#[derive(Subcommand)]
enum FindiffCommand {
    /// D^r(x^(r+1)) = (r+1)! x over half-integers, and the level normalizations
    Sweep {
        #[arg(long, default_value_t = 21)]
        range: i64,
        #[arg(long, default_value = "text", value_parser = parse_format)]
        format: Format,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// diagram files, or movie files ending in `.movie`
    paths: Vec<PathBuf>,
    /// the shipped curves, finite differences, surface model and movies
    #[arg(long)]
    corpus: bool,
    /// number of random curves
    #[arg(long, default_value_t = 0)]
    random: usize,
    #[arg(long, default_value_t = 12)]
    max_n: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value = "text", value_parser = parse_format)]
    format: Format,
}

#[derive(Args)]
struct GenArgs {
    /// number of double points
    #[arg(short, long, required_unless_present = "corpus")]
    n: Option<usize>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// print a shipped curve instead
    #[arg(long, conflicts_with = "n")]
    corpus: Option<String>,
}

fn parse_epsilon(s: &str) -> Result<EpsilonConvention, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rational(s: &str) -> Result<Q, String> {
    parse_q(s).ok_or_else(|| format!("not a rational number: `{s}`"))
}

fn parse_sigma(s: &str) -> Result<i64, String> {
    match s.trim_start_matches('+') {
        "1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("sigma must be +1 or -1, got `{s}`")),
    }
}

/// Failure of an identity (1) or of the input (2). `Unread` carries a
/// report that was still produced for the readable inputs.
enum Fail {
    Identity(String),
    Input(String),
    Unread(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Input(e.to_string())
    }
}

type Outcome = Result<String, Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

fn load_diagram(src: &str) -> Result<CurveDiagram, Fail> {
    if let Some(name) = src.strip_prefix("corpus:") {
        return Ok(corpus::diagram(name)?);
    }
    let text = read(Path::new(src))?;
    parse_diagram(&text).map_err(|e| Fail::Input(format!("{src}: {e}")))
}

fn load_movie(path: &Path) -> Result<Movie, Fail> {
    parse_movie(&read(path)?).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

fn judged(text: String, pass: bool) -> Outcome {
    if pass {
        Ok(text)
    } else {
        Err(Fail::Identity(text))
    }
}

fn report(r: &Report, format: Format) -> Outcome {
    let text = r.render(format);
    if !r.input_errors.is_empty() {
        Err(Fail::Unread(text))
    } else {
        judged(text, r.pass())
    }
}

fn curve(cmd: CurveCommand, conv: EpsilonConvention) -> Outcome {
    match cmd {
        CurveCommand::Parse(i) => {
            let d = load_diagram(&i.file)?;
            Ok(format!(
                "# {}: {} double points, {} arcs, {} faces, {} regions, {} components, {} strands\n{}",
                d.name(),
                d.crossing_count(),
                d.edges().len(),
                d.faces().len(),
                d.regions().len(),
                d.components().len(),
                d.strand_count(),
                serialize_diagram(&d)
            ))
        }
        CurveCommand::Alexander(i) => {
            let d = load_diagram(&i.file)?;
            let phi = compute_alexander(&d, Convention::Curve)?;
            Ok(alexander::dump(&d, &phi))
        }
        CurveCommand::Stokes(i) => {
            let r = check_stokes_curve(&load_diagram(&i.file)?)?;
            judged(r.to_text(), r.pass())
        }
        CurveCommand::Signs(i) => {
            let d = load_diagram(&i.file)?;
            d.require_single_strand()?;
            let phi = compute_alexander(&d, Convention::Curve)?;
            let t = gleams(&d, &phi, &epsilon(&d, conv)?);
            Ok(signs::dump(&d, &t))
        }
        CurveCommand::Invariants(i) => {
            let r = invariant_report(&load_diagram(&i.file)?, conv)?;
            judged(r.to_text(), r.pass())
        }
    }
}

fn movie(cmd: MovieCommand) -> Outcome {
    match cmd {
        MovieCommand::St2 { file, frames } => {
            let m = load_movie(&file)?;
            let mut out = st2_report(&m).map_err(|e| Fail::Identity(e.to_string()))?;
            if frames {
                out.push_str(&serialize_movie(&m));
            }
            Ok(out)
        }
        MovieCommand::Compare {
            before,
            after,
            sigma,
            ds1,
        } => {
            let (a, b) = (load_movie(&before)?, load_movie(&after)?);
            let r = slice_formula_check(&a, &b, ds1, sigma)
                .map_err(|e| Fail::Identity(e.to_string()))?;
            judged(r.to_text(), r.pass())
        }
    }
}

fn verify_cmd(args: VerifyArgs, opts: Options) -> Outcome {
    if args.paths.is_empty() && !args.corpus && args.random == 0 {
        return Err(Fail::Input(
            "nothing to verify: give paths, --corpus or --random N".into(),
        ));
    }
    let mut r = Report::default();
    if args.corpus {
        r.extend(verify::verify_corpus(opts));
    }
    for p in &args.paths {
        let name = p.display().to_string();
        let text = match fs::read_to_string(p) {
            Ok(t) => t,
            Err(e) => {
                r.input_errors.push((name, e.to_string()));
                continue;
            }
        };
        if p.extension().is_some_and(|x| x == "movie") {
            match parse_movie(&text) {
                Ok(m) => r.extend(verify::verify_movie(&m, None)),
                Err(e) => r.input_errors.push((name, e.to_string())),
            }
        } else {
            match parse_diagram(&text) {
                Ok(d) => r.extend(verify::verify_diagram(&d, opts)),
                Err(e) => r.input_errors.push((name, e.to_string())),
            }
        }
    }
    if args.random > 0 {
        r.extend(verify::verify_random(
            args.random,
            args.max_n,
            args.seed,
            opts,
        ));
    }
    report(&r, args.format)
}

fn run(cli: Cli) -> Outcome {
    let opts = Options {
        epsilon: cli.epsilon_convention,
    };
    match cli.command {
        Command::Curve(c) => curve(c, cli.epsilon_convention),
        Command::Surface(SurfaceCommand::LocalCheck { range, format }) => {
            report(&verify::verify_surface_local(range), format)
        }
        Command::Movie(m) => movie(m),
        Command::Findiff(FindiffCommand::Sweep { range, format }) => {
            report(&verify::verify_findiff(range), format)
        }
        Command::Verify(v) => verify_cmd(v, opts),
        Command::Gen(g) => {
            let d = match (g.corpus, g.n) {
                (Some(name), _) => corpus::diagram(&name)?,
                (None, Some(n)) => generate_random_diagram(n, g.seed)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            Ok(serialize_diagram(&d))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Fail::Identity(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Fail::Unread(out)) => {
            print!("{out}");
            ExitCode::from(2)
        }
        Err(Fail::Input(msg)) => {
            eprintln!("error: {}", msg.trim_end());
            ExitCode::from(2)
        }
    }
}
