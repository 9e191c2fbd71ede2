use std::fmt::Display;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use chordcount::registry::{find_formula, parse_registry};
use chordcount::{
    builtin_formulas, calibrate, default_seeds, fuzz_invariance, gen_cabc, gen_equivalent,
    gen_torus, parse_formula, parse_records, ArrowDiagram, ArrowRule, Calibration,
    CalibrationError, CircleOrientation, Convention, CurveDiagram, Diagram, EvalMode, Evaluator,
    Formula, FuzzConfig, MoveKind, MoveLog, R3Variants,
};

/// Chord-diagram invariants of based plane curves.
#[derive(Parser)]
#[command(name = "chordcount", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate formulas on diagrams, one output line per diagram.
    Eval {
        /// Formula name (built-in or from --registry), or formula text such
        /// as `+[1-2,3-4] -[1-3,2-4]`. Repeat for several columns.
        #[arg(long, required = true)]
        formula: Vec<String>,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        registry: RegistryArg,
        #[command(flatten)]
        convention: ConventionArgs,
    },
    /// Print a generated curve diagram.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Check formulas for invariance along random move sequences.
    Fuzz {
        /// `default` or a file of diagram records.
        #[arg(long, default_value = "default")]
        seeds: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 20)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        /// Also use direct self-tangency moves (these are not invariances).
        #[arg(long)]
        dr2: bool,
        /// Comma-separated R3 variants to allow (0-7); all by default.
        #[arg(long, value_delimiter = ',')]
        r3_variants: Vec<u8>,
        /// Restrict to these formulas; all registry formulas by default.
        #[arg(long)]
        formula: Vec<String>,
        #[command(flatten)]
        registry: RegistryArg,
        #[command(flatten)]
        convention: ConventionArgs,
    },
    /// Search the reading conventions and triangle candidates.
    Calibrate {
        #[arg(long, default_value = "default")]
        seeds: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        /// Write the preferred surviving configuration here.
        #[arg(long)]
        write: Option<PathBuf>,
        #[command(flatten)]
        registry: RegistryArg,
    },
    /// Formula values along a curve family, with a distinctness verdict.
    Table {
        #[arg(long, default_value = "cabc")]
        family: String,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        b0: u32,
        #[arg(long)]
        c0: u32,
        #[arg(long)]
        kmax: u32,
        #[command(flatten)]
        registry: RegistryArg,
        #[command(flatten)]
        convention: ConventionArgs,
    },
    /// Apply a move log to diagrams and print the results.
    Replay {
        #[arg(long)]
        log: PathBuf,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand)]
enum Family {
    /// The curve C(a, b, c).
    Cabc {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
    },
    /// The closed 2-braid with n crossings (n odd).
    Torus {
        #[arg(long)]
        n: u32,
    },
    /// A random diagram equivalent to the input.
    Equivalent {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 20)]
        moves: usize,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
        #[arg(long)]
        dr2: bool,
        /// Write the move log here.
        #[arg(long)]
        log: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Diagram text; several records may be separated by newlines.
    #[arg(long)]
    code: Option<String>,
    /// File of diagram records, `-` for standard input.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct RegistryArg {
    /// Formula registry file replacing the built-in formulas.
    #[arg(long)]
    registry: Option<PathBuf>,
}

#[derive(Args)]
struct ConventionArgs {
    /// Calibration file; the built-in frozen calibration is used otherwise.
    #[arg(long)]
    calibration: Option<PathBuf>,
    #[arg(long)]
    orientation: Option<CircleOrientation>,
    #[arg(long)]
    arrow_rule: Option<ArrowRule>,
    #[arg(long)]
    eval_mode: Option<EvalMode>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read `{path}`: {source}")]
    Io { path: String, source: io::Error },
}

fn bad(e: impl Display) -> CliError {
    CliError::Input(e.to_string())
}

fn read_path(path: &Path) -> Result<String, CliError> {
    let io_err = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn write_path(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

impl Input {
    fn diagrams(&self) -> Result<Vec<Diagram>, CliError> {
        let text = match (&self.code, &self.file) {
            (Some(code), _) => code.clone(),
            (None, Some(path)) => read_path(path)?,
            (None, None) => unreachable!("clap requires one input"),
        };
        parse_records(&text).map_err(bad)
    }

    /// Inputs read as curves: chord signs are taken as crossing signs.
    fn curves(&self) -> Result<Vec<ArrowDiagram>, CliError> {
        Ok(self.diagrams()?.into_iter().map(as_curve).collect())
    }
}

fn as_curve(d: Diagram) -> ArrowDiagram {
    match d {
        Diagram::Arrows(a) => a,
        Diagram::Chords(c) => ArrowDiagram::from_crossing_signs(&c),
    }
}

impl RegistryArg {
    fn formulas(&self) -> Result<Vec<Formula>, CliError> {
        match &self.registry {
            Some(path) => parse_registry(&read_path(path)?).map_err(bad),
            None => Ok(builtin_formulas().to_vec()),
        }
    }
}

impl ConventionArgs {
    fn resolve(&self) -> Result<Convention, CliError> {
        let base = match &self.calibration {
            Some(path) => {
                let text = read_path(path)?;
                let line = text
                    .lines()
                    .map(str::trim)
                    .find(|l| !l.is_empty() && !l.starts_with('#'))
                    .ok_or_else(|| bad(format!("`{}` holds no calibration", path.display())))?;
                line.parse::<Calibration>().map_err(bad)?
            }
            None => Calibration::frozen(),
        };
        let mut c = base.convention;
        if let Some(o) = self.orientation {
            c.orientation = o;
        }
        if let Some(r) = self.arrow_rule {
            c.arrow_rule = r;
        }
        if let Some(m) = self.eval_mode {
            c.eval_mode = m;
        }
        Ok(c)
    }
}

fn select(arg: &str, registry: &[Formula]) -> Result<Formula, CliError> {
    if arg.contains('[') {
        let text = if arg.contains(":=") {
            arg.to_string()
        } else {
            format!("formula := {arg}")
        };
        return parse_formula(&text).map_err(bad);
    }
    find_formula(registry, arg)
        .cloned()
        .ok_or_else(|| bad(format!("unknown formula `{arg}`")))
}

fn selected(args: &[String], registry: Vec<Formula>) -> Result<Vec<Formula>, CliError> {
    if args.is_empty() {
        return Ok(registry);
    }
    args.iter().map(|a| select(a, &registry)).collect()
}

fn seed_list(source: &str) -> Result<Vec<CurveDiagram>, CliError> {
    if source == "default" {
        return Ok(default_seeds());
    }
    let text = read_path(Path::new(source))?;
    let seeds: Vec<CurveDiagram> = parse_records(&text)
        .map_err(bad)?
        .into_iter()
        .map(|d| CurveDiagram::from_input(as_curve(d)))
        .collect();
    if seeds.is_empty() {
        return Err(bad(format!("`{source}` holds no diagrams")));
    }
    Ok(seeds)
}

fn kinds(dr2: bool) -> Vec<MoveKind> {
    if dr2 {
        MoveKind::ALL.to_vec()
    } else {
        MoveKind::INVARIANT.to_vec()
    }
}

fn join(values: &[i64]) -> String {
    values
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Runs a command, writing its report to `out`. `Ok(false)` means the
/// command ran but found a violation.
fn run(cmd: Command, out: &mut impl Write) -> Result<bool, CliError> {
    let w = |out: &mut dyn Write, s: String| out.write_all(s.as_bytes()).map_err(bad);
    match cmd {
        Command::Eval {
            formula,
            input,
            registry,
            convention,
        } => {
            let formulas = selected(&formula, registry.formulas()?)?;
            let ev = Evaluator::new(&formulas, convention.resolve()?).map_err(bad)?;
            for d in input.diagrams()? {
                let v = match &d {
                    Diagram::Chords(c) => ev.on_chords(c),
                    Diagram::Arrows(a) => ev.on_arrows(a),
                };
                w(out, format!("{}\n", join(&v)))?;
            }
            Ok(true)
        }
        Command::Generate { family } => {
            let (curve, log) = match family {
                Family::Cabc { a, b, c } => (gen_cabc(a, b, c), None),
                Family::Torus { n } => (gen_torus(n).map_err(bad)?, None),
                Family::Equivalent {
                    input,
                    moves,
                    rng_seed,
                    dr2,
                    log,
                } => {
                    let mut curves = input.curves()?;
                    if curves.len() != 1 {
                        return Err(bad(format!("expected one diagram, got {}", curves.len())));
                    }
                    let seed = CurveDiagram::from_input(curves.remove(0));
                    let (curve, moves_done) = gen_equivalent(&seed, rng_seed, moves, &kinds(dr2));
                    (curve, log.map(|p| (p, moves_done)))
                }
            };
            let mut text = format!("{}\n", curve.diagram);
            if let Some(r) = curve.rot {
                text += &format!("# rot={r}\n");
            }
            if let Some(j) = curve.jplus {
                text += &format!("# jplus={j}\n");
            }
            text += &format!("# source={}\n", curve.provenance);
            w(out, text)?;
            if let Some((path, moves)) = log {
                write_path(&path, &moves.to_string())?;
            }
            Ok(true)
        }
        Command::Fuzz {
            seeds,
            trials,
            depth,
            rng_seed,
            dr2,
            r3_variants,
            formula,
            registry,
            convention,
        } => {
            let variants = if r3_variants.is_empty() {
                R3Variants::ALL
            } else {
                let mut mask = 0u8;
                for v in r3_variants {
                    if v > 7 {
                        return Err(bad(format!("R3 variant {v} is not in 0..=7")));
                    }
                    mask |= 1 << v;
                }
                R3Variants(mask)
            };
            let cfg = FuzzConfig {
                trials,
                depth,
                rng_seed,
                kinds: kinds(dr2),
                r3_variants: variants,
            };
            let formulas = selected(&formula, registry.formulas()?)?;
            let report =
                fuzz_invariance(&formulas, &seed_list(&seeds)?, convention.resolve()?, &cfg)
                    .map_err(bad)?;
            w(out, report.to_string())?;
            Ok(report.is_ok())
        }
        Command::Calibrate {
            seeds,
            trials,
            rng_seed,
            write,
            registry,
        } => match calibrate(&registry.formulas()?, &seed_list(&seeds)?, trials, rng_seed) {
            Ok(report) => {
                w(out, report.to_string())?;
                if let Some(path) = write {
                    write_path(&path, &format!("{}\n", report.survivors[0]))?;
                }
                Ok(true)
            }
            Err(CalibrationError::NoSurvivor(report)) => {
                w(out, report.to_string())?;
                Ok(false)
            }
            Err(e) => Err(bad(e)),
        },
        Command::Table {
            family,
            r,
            b0,
            c0,
            kmax,
            registry,
            convention,
        } => {
            if family != "cabc" {
                return Err(bad(format!(
                    "unknown family `{family}`; only `cabc` has a table"
                )));
            }
            let formulas = registry.formulas()?;
            let ev = Evaluator::new(&formulas, convention.resolve()?).map_err(bad)?;
            let mut text = format!("k a b c rot jplus {}\n", ev.names().join(" "));
            let mut rows: Vec<(u32, Vec<i64>)> = Vec::new();
            for k in 1..=kmax {
                let g = gen_cabc(r, b0 + k, c0 + k);
                let v = ev.on_arrows(&g.diagram);
                text += &format!(
                    "{k} {r} {} {} {} {} {}\n",
                    b0 + k,
                    c0 + k,
                    g.rot.unwrap_or_default(),
                    g.jplus.unwrap_or_default(),
                    join(&v)
                );
                rows.push((k, v));
            }
            let clash = rows.iter().enumerate().find_map(|(i, (k1, v1))| {
                rows[i + 1..]
                    .iter()
                    .find(|(_, v2)| v1 == v2)
                    .map(|(k2, _)| (*k1, *k2))
            });
            text += &match clash {
                None => format!("distinct: yes ({} rows pairwise distinct)\n", rows.len()),
                Some((i, j)) => format!("distinct: no (rows k={i} and k={j} agree)\n"),
            };
            w(out, text)?;
            Ok(clash.is_none())
        }
        Command::Replay { log, input } => {
            let log: MoveLog = read_path(&log)?.parse().map_err(bad)?;
            for d in input.curves()? {
                let end = log.replay(&d).map_err(bad)?;
                w(out, format!("{end}\n"))?;
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    match run(cli.command, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
