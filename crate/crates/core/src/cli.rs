//! Command-line front end.
//!
//! Exit codes: 0 success, 2 malformed input data, 3 gold/system alignment
//! failure, 4 usage or configuration error.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ingest::{apply_sense_sidecar, parse_conll05, parse_conll09, Corpus, ParseError};
use crate::model::{Metric, Mode, UnknownLabelPolicy};
use crate::report::{
    render_comparison, render_per_label, render_scores, render_stats, ReportDocument, RunFlags,
    Style,
};
use crate::scoring::{
    corpus_stats, evaluate, legacy_metric_for, EvaluateError, ScoreError, ScoringOptions,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_ALIGN: i32 = 3;
pub const EXIT_CONFIG: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "primesrl", version, about = "Score semantic role labeling output")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score a system file against gold with one metric.
    Evaluate(EvaluateArgs),
    /// Score with PriMeSRL and the matching legacy metric side by side.
    Compare(CompareArgs),
    /// Count predicates, arguments and C-/R- prefixed arguments.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Conll09,
    Conll05,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Conll09 => "conll09",
            Format::Conll05 => "conll05",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Primesrl,
    Legacy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Head,
    Span,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Head => Mode::Head,
            ModeArg::Span => Mode::Span,
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Gold file (CoNLL-2009 file, or CoNLL-2005 props file).
    pub gold: PathBuf,
    /// System file in the same format as the gold file.
    pub system: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Conll09)]
    pub format: Format,
    /// Scoring mode; defaults to head for conll09 and span for conll05.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// CoNLL-2005 words file shared by gold and system props.
    #[arg(long)]
    pub words: Option<PathBuf>,
    /// Gold predicate senses for CoNLL-2005 input (sent, token, lemma.sense).
    #[arg(long)]
    pub senses: Option<PathBuf>,
    /// System predicate senses for CoNLL-2005 input.
    #[arg(long)]
    pub system_senses: Option<PathBuf>,
    /// Fail on labels that are neither core nor modifier roles.
    #[arg(long)]
    pub strict_labels: bool,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = MetricArg::Primesrl)]
    pub metric: MetricArg,
    /// Print the per-label breakdown.
    #[arg(long)]
    pub per_label: bool,
    /// Write a JSON report document to this path.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InputArgs,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// CoNLL-2009 file, or CoNLL-2005 props file.
    pub path: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Conll09)]
    pub format: Format,
    /// CoNLL-2005 words file.
    #[arg(long)]
    pub words: Option<PathBuf>,
}

/// A failure with its exit code and a message naming the file involved.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }

    fn parse(path: &Path, err: ParseError) -> Self {
        CliError {
            code: EXIT_PARSE,
            message: format!("{}: {err}", path.display()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))
}

fn load(
    path: &Path,
    format: Format,
    words: Option<&Path>,
    senses: Option<&Path>,
    err: &mut dyn Write,
) -> Result<Corpus, CliError> {
    let text = read(path)?;
    let parsed = match format {
        Format::Conll09 => {
            if senses.is_some() {
                return Err(CliError::config(
                    "sense sidecars only apply to conll05 input; conll09 carries senses",
                ));
            }
            parse_conll09(&text).map_err(|e| CliError::parse(path, e))?
        }
        Format::Conll05 => {
            let words = words.ok_or_else(|| CliError::config("conll05 input needs --words"))?;
            let words_text = read(words)?;
            let mut parsed = match parse_conll05(&words_text, &text) {
                Ok(p) => p,
                Err(e @ ParseError::WordsPropsMismatch { .. }) => {
                    return Err(CliError {
                        code: EXIT_PARSE,
                        message: format!("{} / {}: {e}", words.display(), path.display()),
                    })
                }
                Err(e) => return Err(CliError::parse(path, e)),
            };
            if let Some(sidecar) = senses {
                let sidecar_text = read(sidecar)?;
                apply_sense_sidecar(&mut parsed.corpus, &sidecar_text)
                    .map_err(|e| CliError::parse(sidecar, e))?;
            }
            parsed
        }
    };
    for w in &parsed.warnings {
        let _ = writeln!(err, "warning: {}: {w}", path.display());
    }
    Ok(parsed.corpus)
}

struct Loaded {
    gold: Corpus,
    system: Corpus,
    mode: Mode,
    options: ScoringOptions,
}

fn load_pair(input: &InputArgs, err: &mut dyn Write) -> Result<Loaded, CliError> {
    let mode = input.mode.map(Mode::from).unwrap_or(match input.format {
        Format::Conll09 => Mode::Head,
        Format::Conll05 => Mode::Span,
    });
    if input.format == Format::Conll05 && mode == Mode::Head {
        return Err(CliError::config("conll05 data is span-based; use --mode span"));
    }
    if input.senses.is_some() != input.system_senses.is_some() {
        return Err(CliError::config(
            "--senses and --system-senses must be given together",
        ));
    }
    let words = input.words.as_deref();
    let gold = load(&input.gold, input.format, words, input.senses.as_deref(), err)?;
    let system = load(
        &input.system,
        input.format,
        words,
        input.system_senses.as_deref(),
        err,
    )?;
    let options = ScoringOptions {
        unknown_labels: if input.strict_labels {
            UnknownLabelPolicy::Reject
        } else {
            UnknownLabelPolicy::TreatAsModifier
        },
        per_sentence: false,
    };
    Ok(Loaded {
        gold,
        system,
        mode,
        options,
    })
}

fn score(
    loaded: &Loaded,
    metric: Metric,
    input: &InputArgs,
) -> Result<crate::model::ScoreReport, CliError> {
    evaluate(&loaded.gold, &loaded.system, metric, loaded.mode, &loaded.options).map_err(|e| {
        let files = format!("{} vs {}", input.gold.display(), input.system.display());
        match e {
            EvaluateError::Align(a) => CliError {
                code: EXIT_ALIGN,
                message: format!("{files}: {a}"),
            },
            EvaluateError::Score(s @ ScoreError::ModeMismatch { .. }) => {
                CliError::config(format!("{files}: {s}"))
            }
            EvaluateError::Score(s) => CliError {
                code: EXIT_PARSE,
                message: format!("{files}: {s}"),
            },
        }
    })
}

fn cmd_evaluate(args: &EvaluateArgs, style: Style, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let loaded = load_pair(&args.input, err)?;
    let metric = match args.metric {
        MetricArg::Primesrl => Metric::PrimeSrl,
        MetricArg::Legacy => legacy_metric_for(loaded.mode),
    };
    let report = score(&loaded, metric, &args.input)?;
    for w in &report.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let mut text = render_scores(&report, style);
    if args.per_label {
        text.push('\n');
        text.push_str(&render_per_label(&report, style));
    }
    write_out(out, &text)?;

    if let Some(path) = &args.json {
        let input = &args.input;
        let display = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        let flags = RunFlags {
            gold: input.gold.display().to_string(),
            system: input.system.display().to_string(),
            format: input.format.to_string(),
            metric: metric.to_string(),
            mode: loaded.mode.to_string(),
            words: display(&input.words),
            senses: display(&input.senses),
            system_senses: display(&input.system_senses),
            per_label: args.per_label,
            strict_labels: input.strict_labels,
        };
        let doc = ReportDocument::new(flags, report);
        let json = serde_json::to_string_pretty(&doc).expect("report serializes");
        fs::write(path, json + "\n")
            .map_err(|e| CliError::config(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn cmd_compare(args: &CompareArgs, style: Style, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let loaded = load_pair(&args.input, err)?;
    let legacy = score(&loaded, legacy_metric_for(loaded.mode), &args.input)?;
    let prime = score(&loaded, Metric::PrimeSrl, &args.input)?;
    write_out(out, &render_comparison(&legacy, &prime, style))
}

fn cmd_stats(args: &StatsArgs, style: Style, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let corpus = load(&args.path, args.format, args.words.as_deref(), None, err)?;
    let stats = corpus_stats(&corpus).map_err(|e| CliError {
        code: EXIT_PARSE,
        message: format!("{}: {e}", args.path.display()),
    })?;
    write_out(out, &render_stats(&stats, style))
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::config(format!("cannot write output: {e}")))
}

/// Runs the tool and returns its exit code.
pub fn run<I, T>(args: I, style: Style, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(err, "{e}");
            return EXIT_CONFIG;
        }
        Err(e) => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let result = match &cli.command {
        Command::Evaluate(a) => cmd_evaluate(a, style, out, err),
        Command::Compare(a) => cmd_compare(a, style, out, err),
        Command::Stats(a) => cmd_stats(a, style, out, err),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}
