//! Command-line driver: compute `E_{wλ}(x;q,0)` by any of the four models,
//! cross-check them, and export the underlying combinatorial objects.
//!
//! Exit codes: 0 success/agreement, 1 model mismatch, 2 parse error,
//! 3 internal invariant violation, 4 I/O failure.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use nsmac_core::alcove::{self, AlcoveModel};
use nsmac_core::cartan_weyl::{
    build_root_datum, enumerate_minimal_reps, parse_weight, CartanType, RootDatum, Weight, WeylElt,
};
use nsmac_core::charpoly::{self, GradedChar};
use nsmac_core::ospath;
use nsmac_core::qls::{self, QlsContext};
use nsmac_core::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "nsmac",
    version,
    about = "Nonsymmetric Macdonald polynomials at t=0"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute E_{wλ}(x;q,0) with one model (or all four).
    Compute(ComputeArgs),
    /// Run all four models and report per-w equality verdicts.
    Crosscheck(CrosscheckArgs),
    /// Export graphs, chains, and enumerations.
    Export(ExportArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Cartan type, e.g. A2 or G2.
    #[arg(long = "type", value_name = "TYPE")]
    cartan_type: String,
    /// Dominant weight in fundamental-weight coordinates, e.g. 1,0.
    /// Optional only for `export qbg`, where it defaults to the regular
    /// weight ρ (so J = ∅).
    #[arg(long, value_name = "COORDS")]
    lambda: Option<String>,
    /// Reduced word for w0 overriding the reflection-order tie-break,
    /// e.g. "s1 s2 s1".
    #[arg(long = "chain-tiebreak", value_name = "WORD")]
    chain_tiebreak: Option<String>,
    /// Write output to a file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    job: JobArgs,
    /// Weyl-group element, e.g. "s1 s2", "e", "w0".
    #[arg(long, default_value = "e")]
    w: String,
    #[arg(long, value_enum, default_value_t = Model::All)]
    model: Model,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct CrosscheckArgs {
    #[command(flatten)]
    job: JobArgs,
    /// Check one element (default: the identity).
    #[arg(long)]
    w: Option<String>,
    /// Check every w in W^{J_λ}.
    #[arg(long, default_value_t = false)]
    all_w: bool,
}

#[derive(Args)]
struct ExportArgs {
    /// What to export.
    #[arg(value_enum)]
    what: ExportWhat,
    #[command(flatten)]
    job: JobArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Model {
    Qls,
    Alcove,
    Os,
    Demazure,
    All,
}

impl Model {
    fn name(self) -> &'static str {
        match self {
            Model::Qls => "qls",
            Model::Alcove => "alcove",
            Model::Os => "os",
            Model::Demazure => "demazure",
            Model::All => "all",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportWhat {
    Qbg,
    Chain,
    Qls,
    Admissible,
}

/// CLI-level failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(err: CoreError) -> Failure {
        let code = match err {
            CoreError::ChainInvalid(_) | CoreError::Invariant(_) => 3,
            _ => 2,
        };
        Failure::new(code, err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Crosscheck(args) => cmd_crosscheck(args),
        Command::Export(args) => cmd_export(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

struct Job {
    datum: RootDatum,
    lambda: Weight,
    tiebreak: Option<Vec<usize>>,
}

fn parse_job(args: &JobArgs, lambda_default_rho: bool) -> Result<Job, Failure> {
    let ctype = CartanType::parse(&args.cartan_type)?;
    let datum = build_root_datum(ctype);
    let lambda = match &args.lambda {
        Some(s) => parse_weight(&datum, s)?,
        None if lambda_default_rho => datum.rho(),
        None => return Err(Failure::new(2, "--lambda is required")),
    };
    if !lambda.is_dominant() {
        return Err(Failure::new(2, format!("lambda {lambda} must be dominant")));
    }
    let tiebreak = match &args.chain_tiebreak {
        None => None,
        Some(s) => Some(parse_tiebreak_word(&datum, s)?),
    };
    Ok(Job {
        datum,
        lambda,
        tiebreak,
    })
}

fn parse_tiebreak_word(datum: &RootDatum, s: &str) -> Result<Vec<usize>, Failure> {
    let mut word = Vec::new();
    for t in s
        .split(|c: char| c.is_whitespace() || c == '*' || c == ',')
        .filter(|t| !t.is_empty())
    {
        let digits = t.strip_prefix('s').unwrap_or(t);
        let i: usize = digits
            .parse()
            .map_err(|_| Failure::new(2, format!("bad tie-break token `{t}`")))?;
        datum.check_index(i)?;
        word.push(i);
    }
    Ok(word)
}

/// Parses `w` and replaces it by `⌊w⌋^{J_λ}`, printing a notice when the
/// input was not already minimal (the polynomial depends only on wλ).
fn canonical_w(job: &Job, w: &str) -> Result<WeylElt, Failure> {
    let parsed = WeylElt::parse(&job.datum, w)?;
    let j = job.datum.j_of_weight(&job.lambda);
    let floor = parsed.min_coset_rep(&job.datum, &j);
    if floor != parsed {
        eprintln!(
            "notice: w canonicalized to minimal coset representative {floor} (wλ is unchanged)"
        );
    }
    Ok(floor)
}

fn run_model(job: &Job, model: Model, w: &WeylElt) -> Result<GradedChar, Failure> {
    let tb = job.tiebreak.as_deref();
    let poly = match model {
        Model::Qls => {
            let ctx = QlsContext::new(&job.datum, job.lambda.clone())?;
            qls::gch_qls(&ctx, w)?
        }
        Model::Alcove => alcove::macdonald_alcove(&job.datum, w, &job.lambda, tb)?,
        Model::Os => ospath::macdonald_os(&job.datum, w, &job.lambda, tb)?,
        Model::Demazure => charpoly::macdonald_recursive(&job.datum, w, &job.lambda)?,
        Model::All => unreachable!("expanded by the caller"),
    };
    Ok(poly)
}

fn compute_all_models(job: &Job, w: &WeylElt) -> Result<GradedChar, Failure> {
    let models = [Model::Qls, Model::Alcove, Model::Os, Model::Demazure];
    let polys: Vec<GradedChar> = models
        .iter()
        .map(|m| run_model(job, *m, w))
        .collect::<Result<_, _>>()?;
    for k in 1..polys.len() {
        if polys[k] != polys[0] {
            let (wt, q, a, b) = polys[0]
                .first_difference(&polys[k])
                .expect("unequal polynomials differ somewhere");
            return Err(Failure::new(
                1,
                format!(
                    "model mismatch at w = {w}: term x^{wt:?} q^{q} has coefficient {a} ({}) vs {b} ({})",
                    models[0].name(),
                    models[k].name()
                ),
            ));
        }
    }
    Ok(polys.into_iter().next().expect("four models ran"))
}

fn emit(out: &Option<String>, content: &str) -> Result<(), Failure> {
    match out {
        None => {
            println!("{content}");
            Ok(())
        }
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| Failure::new(4, format!("cannot create {path}: {e}")))?;
            writeln!(file, "{content}").map_err(|e| Failure::new(4, format!("write failed: {e}")))
        }
    }
}

fn cmd_compute(args: ComputeArgs) -> Result<(), Failure> {
    let job = parse_job(&args.job, false)?;
    let w = canonical_w(&job, &args.w)?;
    let poly = match args.model {
        Model::All => compute_all_models(&job, &w)?,
        m => run_model(&job, m, &w)?,
    };
    let rendered = match args.format {
        Format::Text => poly.render_text(),
        Format::Latex => poly.render_latex(&job.datum, &job.lambda)?,
        Format::Json => {
            let value = json!({
                "type": job.datum.cartan_type().to_string(),
                "lambda": job.lambda.coords,
                "w": w.to_string(),
                "model": args.model.name(),
                "terms": poly.to_json_terms(),
            });
            serde_json::to_string_pretty(&value).expect("serializable")
        }
    };
    emit(&args.job.out, &rendered)
}

fn cmd_crosscheck(args: CrosscheckArgs) -> Result<(), Failure> {
    let job = parse_job(&args.job, false)?;
    let reps: Vec<WeylElt> = if args.all_w {
        enumerate_minimal_reps(&job.datum, &job.datum.j_of_weight(&job.lambda))
    } else {
        vec![canonical_w(&job, args.w.as_deref().unwrap_or("e"))?]
    };
    let mut lines = Vec::new();
    let mut first_failure: Option<Failure> = None;
    let mut agree = 0usize;
    for w in &reps {
        match compute_all_models(&job, w) {
            Ok(poly) => {
                agree += 1;
                lines.push(format!("w = {w}: agree ({})", poly.render_text()));
            }
            Err(f) if f.code == 1 => {
                lines.push(format!("w = {w}: MISMATCH ({})", f.message));
                if first_failure.is_none() {
                    first_failure = Some(f);
                }
            }
            Err(f) => return Err(f),
        }
    }
    lines.push(format!("{agree}/{} agree (4 models)", reps.len()));
    emit(&args.job.out, &lines.join("\n"))?;
    match first_failure {
        None => Ok(()),
        Some(f) => Err(f),
    }
}

fn cmd_export(args: ExportArgs) -> Result<(), Failure> {
    let job = parse_job(&args.job, args.what == ExportWhat::Qbg)?;
    let tb = job.tiebreak.as_deref();
    let content = match args.what {
        ExportWhat::Qbg => {
            let j = job.datum.j_of_weight(&job.lambda);
            let graph = nsmac_core::qbg::build_qbg(&job.datum, &j);
            graph.to_dot(&job.datum)
        }
        ExportWhat::Chain => {
            let chain = alcove::lex_chain(&job.datum, &job.lambda, tb)?;
            serde_json::to_string_pretty(&chain.to_json(&job.datum)).expect("serializable")
        }
        ExportWhat::Qls => {
            let ctx = QlsContext::new(&job.datum, job.lambda.clone())?;
            let records: Result<Vec<_>, CoreError> = qls::enumerate_qls(&ctx)
                .iter()
                .map(|p| p.to_json(&ctx))
                .collect();
            serde_json::to_string_pretty(&serde_json::Value::Array(records?)).expect("serializable")
        }
        ExportWhat::Admissible => {
            let chain = alcove::lex_chain(&job.datum, &job.lambda, tb)?;
            let model = AlcoveModel::new(&job.datum, chain);
            let subsets = model.enumerate_admissible();
            serde_json::to_string_pretty(&model.to_json(&subsets)).expect("serializable")
        }
    };
    emit(&args.job.out, content.trim_end())
}
