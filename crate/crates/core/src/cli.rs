//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::decide::{self, Certificate, DecideError, DecisionProblem};
use crate::formula::{self, FormulaError};
use crate::fv::{self, cs, FvError};
use crate::gen::{Gen, Shape};
use crate::oracle::{self, ModuleSpec, OracleError};
use crate::qe::{self, LocalOracle};
use crate::ring::{Backend, RingError};

#[derive(Parser, Debug)]
#[command(name = "bezout-qe", version, about = "Quantifier elimination and decision for modules over Bezout domains")]
pub struct Cli {
    /// Backend: z, q_poly, z_loc:<prime>, q_poly_loc:<irreducible>.
    #[arg(long, global = true, default_value = "z")]
    pub backend: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for generated corpora.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on sentence leaves for decide.
    #[arg(long, global = true, default_value_t = decide::DEFAULT_LITERAL_CAP, value_parser = positive)]
    pub literal_cap: usize,
    /// Cap on unknowns in oracle linear systems.
    #[arg(long, global = true, default_value_t = oracle::MAX_UNKNOWNS, value_parser = positive)]
    pub system_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, got '{s}'")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Inline formula.
    #[arg(long)]
    pub formula: Option<String>,
    /// Formula file; lines starting with '#' are comments.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct SentenceInput {
    /// Inline sentence.
    #[arg(long)]
    pub sentence: Option<String>,
    /// Sentence file; lines starting with '#' are comments.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CorpusKind {
    /// pp formulas in y, z.
    Pp,
    /// pp formulas in the single free variable x.
    OneVar,
    /// Boolean combinations of invariant conditions.
    Sentence,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Eliminate quantifiers over a valuation backend.
    Qe(Input),
    /// Decompose over a global backend into guarded quantifier-free pieces.
    Decompose(Input),
    /// Decide a Boolean combination of invariant conditions.
    Decide(SentenceInput),
    /// Evaluate a pp formula at concrete parameters in a concrete module.
    Eval {
        #[command(flatten)]
        input: Input,
        /// free:<rank>, cyclic:<elem>, field.
        #[arg(long, default_value = "free:1")]
        module: String,
        /// Parameters such as y=6,z=[1;2].
        #[arg(long, default_value = "")]
        params: String,
    },
    /// Normalize a constructible set: V(e), Whole, Empty, !, &, |.
    Cs {
        #[arg(long)]
        expr: String,
        /// Also report membership of the maximal ideal generated by this irreducible.
        #[arg(long)]
        contains: Option<String>,
    },
    /// Print a generated corpus, one item per line.
    Corpus {
        #[arg(long, value_enum, default_value_t = CorpusKind::Pp)]
        kind: CorpusKind,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("capability error: {0}")]
    Capability(String),
    #[error("{0}")]
    Failed(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Capability(_) => 3,
            CliError::Failed(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<FormulaError> for CliError {
    fn from(e: FormulaError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        match e {
            RingError::Parse { .. } | RingError::BadSelector(_) | RingError::NotIrreducible(_) => {
                CliError::Parse(e.to_string())
            }
            RingError::NeedsGlobal(_) => CliError::Capability(e.to_string()),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BadSpec(_) => CliError::Parse(e.to_string()),
            OracleError::Ring(r) => r.into(),
            OracleError::Unsupported(_) | OracleError::FractionalIndex(_) => CliError::Capability(e.to_string()),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<FvError> for CliError {
    fn from(e: FvError) -> Self {
        match e {
            FvError::ValuationBackend(_) => CliError::Capability(e.to_string()),
            FvError::Ring(r) => r.into(),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<DecideError> for CliError {
    fn from(e: DecideError) -> Self {
        match e {
            DecideError::FiniteResidueField(_) | DecideError::TooManyLiterals { .. } => {
                CliError::Capability(e.to_string())
            }
            DecideError::Formula(f) => f.into(),
            DecideError::ClosedWithFreeVars(_) => CliError::Parse(e.to_string()),
            DecideError::Fv(f) => f.into(),
            DecideError::Ring(r) => r.into(),
            e => CliError::Failed(e.to_string()),
        }
    }
}

fn read_text(inline: &Option<String>, file: &Option<PathBuf>) -> Result<String, CliError> {
    match (inline, file) {
        (Some(s), _) => Ok(s.clone()),
        (None, Some(p)) => Ok(std::fs::read_to_string(p)?),
        (None, None) => Err(CliError::Parse("no input given".into())),
    }
}

fn emit(out: &mut dyn Write, format: Format, text: &str, value: serde_json::Value) -> Result<(), CliError> {
    match format {
        Format::Text => writeln!(out, "{text}")?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serializable"))?,
    }
    Ok(())
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let b: Backend = cli.backend.parse()?;
    match &cli.command {
        Command::Qe(input) => {
            let f = formula::parse_pp(&read_text(&input.formula, &input.file)?, &b)?;
            if !b.is_valuation() {
                return Err(CliError::Capability(format!(
                    "qe needs a valuation backend (z_loc:<p> or q_poly_loc:<p>); {} is global, use decompose",
                    b.name()
                )));
            }
            let (res, steps) = qe::eliminate_steps(&f, &LocalOracle::new(b.clone()), usize::MAX)
                .map_err(|e| CliError::Failed(e.to_string()))?;
            emit(
                out,
                cli.format,
                &res.to_string(),
                json!({"backend": b.descriptor(), "input": f.to_string(), "output": res.to_string(), "steps": steps}),
            )
        }
        Command::Decompose(input) => {
            let f = formula::parse_pp(&read_text(&input.formula, &input.file)?, &b)?;
            let g = fv::decompose(&b, &f)?;
            let text = g.pieces.iter().map(|p| format!("{}: {}", p.guard, p.body)).collect::<Vec<_>>().join("\n");
            emit(out, cli.format, &text, json!({"backend": b.descriptor(), "input": f.to_string(), "pieces": g}))
        }
        Command::Decide(input) => {
            let s = formula::parse_sentence(&read_text(&input.sentence, &input.file)?, &b)?;
            let problem = DecisionProblem::new(b.clone(), s)?.with_literal_cap(cli.literal_cap);
            let d = decide::decide(&problem)?;
            let detail = match &d.certificate {
                Certificate::Tautology => "propositional tautology".to_string(),
                Certificate::Exhausted { trace } => format!("no countermodel: {} disjunct(s) exhausted", trace.len()),
                Certificate::Countermodel { components, .. } => components
                    .iter()
                    .map(|c| {
                        let at = c.prime.as_ref().map(|p| format!(" at ({p})")).unwrap_or_default();
                        format!("countermodel component {}{at}", c.module)
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            let value = serde_json::to_value(&d).expect("serializable");
            emit(out, cli.format, &format!("{}\n{detail}", d.verdict), value)
        }
        Command::Eval { input, module, params } => {
            let f = formula::parse_pp(&read_text(&input.formula, &input.file)?, &b)?;
            let m = ModuleSpec::parse(module, &b)?;
            let params = oracle::parse_params(params, &b)?;
            let v = oracle::eval_pp_capped(&b, &f, &params, &m, cli.system_cap)?;
            emit(
                out,
                cli.format,
                &v.to_string(),
                json!({"module": m.to_string(), "formula": f.to_string(), "value": v}),
            )
        }
        Command::Cs { expr, contains } => {
            if b.is_valuation() {
                return Err(CliError::Capability(format!(
                    "constructible sets live on the maximal spectrum of a global backend; {} is local",
                    b.name()
                )));
            }
            let set = cs::parse_cs(expr, &b)?.normalize(&b);
            let mut value = json!({"set": set, "text": set.to_string()});
            let mut text = set.to_string();
            if let Some(p) = contains {
                let p = b.parse_elem(p)?;
                if !b.is_irreducible(&p)? {
                    return Err(CliError::Parse(format!("{p} is not irreducible")));
                }
                let m = set.contains(&b, &p);
                value["contains"] = json!(m);
                text.push_str(&format!("\n({p}) in set: {m}"));
            }
            emit(out, cli.format, &text, value)
        }
        Command::Corpus { kind, count } => {
            let mut g = Gen::new(&b, cli.seed);
            let shape = Shape { fractional: b.is_valuation(), ..Shape::default() };
            let items: Vec<String> = (0..*count)
                .map(|_| match kind {
                    CorpusKind::Pp => g.pp(&["y", "z"], &shape).to_string(),
                    CorpusKind::OneVar => g.pp(&["x"], &shape).to_string(),
                    CorpusKind::Sentence => g.sentence(2, &shape).to_string(),
                })
                .collect();
            emit(out, cli.format, &items.join("\n"), json!(items))
        }
    }
}

/// Parses `args` and runs; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
