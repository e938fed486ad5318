//! The `agdmm` command line.
//!
//! Every command prints JSON on stdout (`--pretty` for a human layout).
//! Exit codes: 0 success, 2 usage or validation error, 3 search guard hit,
//! 4 too few responders. `AGDMM_SEED` overrides `--seed`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_core::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use serde_json::{json, Value};

use crate::asymptotic;
use crate::codec::{worker_multiply, CodeScheme, DecodeReport, WorkerResult};
use crate::constructions::{self, Kind, Method};
use crate::error::{Error, Result};
use crate::funcfield::Curve;
use crate::matrix::Matrix;
use crate::semigroup::NumericalSemigroup;
use crate::sim::{self, StragglerModel};

pub const SEED_ENV: &str = "AGDMM_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "agdmm",
    version,
    about = "Algebraic-geometry codes for distributed matrix multiplication"
)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect a numerical semigroup.
    Semigroup {
        #[command(subcommand)]
        cmd: SemigroupCmd,
    },
    /// Build degree sets with one of the constructions.
    Construct {
        #[command(subcommand)]
        cmd: ConstructCmd,
    },
    /// Exhaustive search for a minimum-threshold solution.
    Search(SearchArgs),
    /// Run a coded multiplication end to end.
    Dmm {
        #[command(subcommand)]
        cmd: DmmCmd,
    },
    /// Simulate straggling workers.
    Sim(SimArgs),
    /// Closed-form reports.
    Report {
        #[command(subcommand)]
        cmd: ReportCmd,
    },
}

#[derive(Args, Debug)]
struct GensArg {
    /// Semigroup generators, comma separated (`1` for the naturals).
    #[arg(long, value_delimiter = ',', required = true)]
    gens: Vec<u32>,
}

#[derive(Subcommand, Debug)]
enum SemigroupCmd {
    Info(GensArg),
    Apery {
        #[command(flatten)]
        gens: GensArg,
        #[arg(long)]
        n: u32,
    },
    Delta(GensArg),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum KindArg {
    Poly,
    Matdot,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Poly => Kind::Poly,
            KindArg::Matdot => Kind::Matdot,
        }
    }
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[command(flatten)]
    gens: GensArg,
    #[arg(long)]
    method: String,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: Option<u32>,
    /// With `--method delta`: the δ to evaluate the optimal-set formula at.
    #[arg(long)]
    delta: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum ConstructCmd {
    Poly(ConstructArgs),
    Matdot(ConstructArgs),
    /// Trivial, Apéry and recursive poly thresholds next to their closed forms.
    Table {
        #[command(flatten)]
        gens: GensArg,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[command(flatten)]
    gens: GensArg,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: Option<u32>,
    /// Largest degree considered; defaults to 2c + 2(m + n).
    #[arg(long)]
    bound: Option<u32>,
}

#[derive(Args, Debug)]
struct SchemeArgs {
    /// `hermitian:<q0>` or `rational:<q>`.
    #[arg(long)]
    curve: String,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    method: String,
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: Option<u32>,
    /// Number of workers N (the first N places are used).
    #[arg(long)]
    workers: usize,
}

#[derive(Subcommand, Debug)]
enum DmmCmd {
    Run {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Worker indices (0-based) whose results never arrive.
        #[arg(long, value_delimiter = ',')]
        drop: Vec<usize>,
        /// Zero-pad inputs to partition-compatible sizes.
        #[arg(long)]
        pad: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Schoolbook product.
    Reference {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct SimArgs {
    #[command(flatten)]
    scheme: SchemeArgs,
    /// `fixed:identity|reversed|<list>`, `shifted-exp:tau=..,lambda=..` or `bernoulli:p=..,slow=..`.
    #[arg(long)]
    model: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Side of the random square inputs; defaults to twice the block count.
    #[arg(long)]
    size: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum ReportCmd {
    Asymptotic {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum)]
        mode: KindArg,
        /// `N=<n>,c=<c>;...`
        #[arg(long, default_value = "")]
        series: String,
    },
}

/// Exit code for a library error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::SearchSpaceTooLarge { .. } => 3,
        Error::TooFewResponders { .. } => 4,
        _ => 2,
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{e}");
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn semigroup(g: &GensArg) -> Result<NumericalSemigroup> {
    NumericalSemigroup::from_generators(&g.gens)
}

fn emit(v: &Value, pretty: bool) -> String {
    let mut s = if pretty {
        serde_json::to_string_pretty(v).unwrap()
    } else {
        v.to_string()
    };
    s.push('\n');
    s
}

fn dispatch(cli: &Cli) -> Result<String> {
    let pretty = cli.pretty;
    match &cli.command {
        Command::Semigroup { cmd } => semigroup_cmd(cmd, pretty),
        Command::Construct { cmd } => construct_cmd(cmd, pretty),
        Command::Search(a) => {
            let s = semigroup(&a.gens)?;
            let kind: Kind = a.kind.into();
            let n = match kind {
                Kind::Poly => a.n.ok_or_else(|| Error::SizeMismatch("poly search needs --n".into()))?,
                Kind::Matdot => a.m,
            };
            let bound = a
                .bound
                .unwrap_or_else(|| constructions::default_search_bound(&s, a.m, n));
            let sol = constructions::brute_force_optimal(&s, kind, a.m, n, bound)?;
            let mut v = sol.to_json();
            v["bound"] = json!(bound);
            Ok(emit(&v, pretty))
        }
        Command::Dmm { cmd } => dmm_cmd(cmd, pretty),
        Command::Sim(a) => sim_cmd(a),
        Command::Report {
            cmd: ReportCmd::Asymptotic { q, m, mode, series },
        } => {
            let pts = asymptotic::parse_series(series)?;
            let v = asymptotic::report(*q, *m, (*mode).into(), &pts)?;
            Ok(emit(&v, pretty))
        }
    }
}

fn semigroup_cmd(cmd: &SemigroupCmd, pretty: bool) -> Result<String> {
    match cmd {
        SemigroupCmd::Info(g) => {
            let info = semigroup(g)?.info();
            if pretty {
                return Ok(format!(
                    "generators   {:?}\nconductor    {}\ngaps         {:?}\ngenus        {}\nn            {}\nmultiplicity {}\nsparse       {}\ndelta max    {} at {}\n",
                    info.generators, info.conductor, info.gaps, info.genus, info.n, info.multiplicity,
                    info.sparse, info.delta_max, info.delta_argmax
                ));
            }
            Ok(emit(&serde_json::to_value(&info).unwrap(), false))
        }
        SemigroupCmd::Apery { gens, n } => {
            let ap = semigroup(gens)?.apery(*n)?;
            Ok(emit(&json!({"n": n, "apery": ap}), pretty))
        }
        SemigroupCmd::Delta(g) => {
            let prof = semigroup(g)?.delta_profile();
            if pretty {
                let mut s = String::from("delta  n(delta)  Delta\n");
                for (&d, &v) in prof.domain.iter().zip(&prof.values) {
                    s += &format!("{d:>5}  {:>8}  {v:>5}\n", (v - d) / 2);
                }
                s += &format!("argmax {} (value {})\n", prof.argmax, prof.max);
                return Ok(s);
            }
            Ok(emit(&serde_json::to_value(&prof).unwrap(), false))
        }
    }
}

fn construct_cmd(cmd: &ConstructCmd, pretty: bool) -> Result<String> {
    let (kind, a) = match cmd {
        ConstructCmd::Poly(a) => (Kind::Poly, a),
        ConstructCmd::Matdot(a) => (Kind::Matdot, a),
        ConstructCmd::Table { gens, m, n } => {
            let rows = constructions::threshold_table(&semigroup(gens)?, *m, *n)?;
            if pretty {
                let mut s = String::from("method     threshold  formula\n");
                for r in &rows {
                    s += &format!(
                        "{:<10} {:>9}  {} = {}\n",
                        r.method.to_string(),
                        r.threshold,
                        r.formula_text,
                        r.formula
                    );
                }
                return Ok(s);
            }
            return Ok(emit(&json!({"m": m, "n": n, "rows": rows}), false));
        }
    };
    let s = semigroup(&a.gens)?;
    let method: Method = a.method.parse()?;
    let sol = match (kind, method) {
        (Kind::Matdot, Method::Delta) => {
            let delta = a
                .delta
                .ok_or_else(|| Error::SizeMismatch("--method delta needs --delta".into()))?;
            constructions::matdot_with_delta(&s, a.m, delta)?
        }
        _ => constructions::construct(kind, method, &s, a.m, a.n)?,
    };
    if pretty {
        return Ok(format!(
            "{} {} m={} n={}\nD_A = {:?}\nD_B = {:?}\nd = {}\nthreshold = {}\n",
            sol.kind(),
            sol.method(),
            sol.m(),
            sol.n(),
            sol.d_a(),
            sol.d_b(),
            sol.d().map_or("-".into(), |d| d.to_string()),
            sol.threshold()
        ));
    }
    Ok(emit(&sol.to_json(), false))
}

fn build_scheme(a: &SchemeArgs) -> Result<CodeScheme> {
    let curve = Curve::parse(&a.curve)?;
    CodeScheme::build(&curve, a.kind.into(), a.method.parse()?, a.m, a.n, a.workers)
}

fn read_matrix(path: &Path) -> Result<(crate::field::FieldSpec, Matrix)> {
    Matrix::from_csv(&fs::read_to_string(path)?)
}

fn dmm_cmd(cmd: &DmmCmd, pretty: bool) -> Result<String> {
    match cmd {
        DmmCmd::Reference { a, b, out } => {
            let (fa, a) = read_matrix(a)?;
            let (fb, b) = read_matrix(b)?;
            if fa != fb {
                return Err(Error::DimensionMismatch("A and B are over different fields".into()));
            }
            let csv = a.mul(&fa, &b)?.0.to_csv(&fa);
            match out {
                Some(p) => {
                    fs::write(p, csv)?;
                    Ok(String::new())
                }
                None => Ok(csv),
            }
        }
        DmmCmd::Run {
            scheme,
            a,
            b,
            drop,
            pad,
            out,
        } => {
            let scheme = build_scheme(scheme)?;
            let field = scheme.field().clone();
            let (fa, a) = read_matrix(a)?;
            let (fb, b) = read_matrix(b)?;
            if fa != field || fb != field {
                return Err(Error::DimensionMismatch(format!(
                    "inputs must be over the curve's field ({})",
                    field.header()
                )));
            }
            let (rows, cols) = (a.rows(), b.cols());
            let (pa, pb) = if *pad {
                scheme.pad_inputs(&a, &b)
            } else {
                (a.clone(), b.clone())
            };
            for &w in drop {
                if w >= scheme.workers() {
                    return Err(Error::UnknownPlace(w));
                }
            }
            let results: Vec<WorkerResult> = scheme
                .encode(&pa, &pb)?
                .iter()
                .filter(|s| !drop.contains(&s.place_index))
                .map(|s| worker_multiply(&field, s))
                .collect::<Result<_>>()?;
            let decoded = scheme.decode(&results)?;
            let product = decoded.product.truncated(rows, cols);
            let ok = product == a.mul(&field, &b)?.0;
            fs::write(out, product.to_csv(&field))?;
            let report = DecodeReport {
                threshold: scheme.threshold() as u32,
                responders_used: decoded.responders_used,
                worker_mults: results.iter().map(|r| r.mults).sum(),
                decode_mults: decoded.decode_mults,
                ok,
            };
            Ok(emit(&report.to_json(), pretty))
        }
    }
}

fn seed_with_env(flag: u64) -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{SEED_ENV} must be an unsigned integer, got {v:?}"))),
        Err(_) => Ok(flag),
    }
}

fn sim_cmd(a: &SimArgs) -> Result<String> {
    let model: StragglerModel = a.model.parse()?;
    let seed = seed_with_env(a.seed)?;
    let scheme = build_scheme(&a.scheme)?;
    let sol = scheme.solution();
    let blocks = match scheme.kind() {
        Kind::Poly => num_integer::lcm(sol.m(), sol.n()) as usize,
        Kind::Matdot => sol.m() as usize,
    };
    let size = a.size.unwrap_or(2 * blocks);
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let ma = Matrix::random(scheme.field(), size, size, &mut rng);
    let mb = Matrix::random(scheme.field(), size, size, &mut rng);
    let (ma, mb) = scheme.pad_inputs(&ma, &mb);
    let reports = sim::simulate(&scheme, &ma, &mb, &model, seed, a.trials)?;
    let mut s = String::new();
    for r in &reports {
        s += &serde_json::to_string(r).unwrap();
        s.push('\n');
    }
    if !reports.is_empty() {
        s += &serde_json::to_string(&sim::summarize(&reports)?).unwrap();
        s.push('\n');
    }
    Ok(s)
}
