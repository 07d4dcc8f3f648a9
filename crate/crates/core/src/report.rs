//! Text tables and the JSON report document.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::model::{EvalCounts, Prf, ScoreReport};
use crate::scoring::CorpusStats;

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable that turns off styled terminal output.
pub const NO_COLOR_ENV: &str = "PRIME_SRL_NO_COLOR";

/// Everything a report was produced from, echoed for reproducibility.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunFlags {
    pub gold: String,
    pub system: String,
    pub format: String,
    pub metric: String,
    pub mode: String,
    pub words: Option<String>,
    pub senses: Option<String>,
    pub system_senses: Option<String>,
    pub per_label: bool,
    pub strict_labels: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    pub flags: RunFlags,
    pub report: ScoreReport,
}

impl ReportDocument {
    pub fn new(flags: RunFlags, report: ScoreReport) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            flags,
            report,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Style {
    pub color: bool,
}

impl Style {
    /// Styled output only on a terminal and only when `PRIME_SRL_NO_COLOR`
    /// is unset.
    pub fn detect() -> Self {
        use std::io::IsTerminal;
        Style {
            color: std::env::var_os(NO_COLOR_ENV).is_none() && std::io::stdout().is_terminal(),
        }
    }

    pub fn heading(&self, text: &str) -> String {
        if self.color {
            format!("\x1b[1m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }
}

pub fn fmt4(x: f64) -> String {
    // avoid printing "-0.0000"
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.4}")
}

fn fraction(num: u64, den: u64) -> String {
    format!("{num}/{den}")
}

fn score_block(out: &mut String, name: &str, counts: EvalCounts) {
    let Prf {
        precision,
        recall,
        f1,
    } = counts.prf();
    let _ = writeln!(
        out,
        "{name} precision: {} ({})",
        fmt4(precision),
        fraction(counts.correct, counts.predicted)
    );
    let _ = writeln!(
        out,
        "{name} recall: {} ({})",
        fmt4(recall),
        fraction(counts.correct, counts.gold)
    );
    let _ = writeln!(out, "{name} F1: {}", fmt4(f1));
}

/// Predicate and argument P/R/F1, four decimals.
pub fn render_scores(report: &ScoreReport, style: Style) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}",
        style.heading(&format!("Metric: {} ({} mode)", report.metric, report.mode))
    );
    score_block(&mut out, "Predicate", report.predicate_counts);
    score_block(&mut out, "Argument", report.argument_counts);
    out
}

pub fn render_per_label(report: &ScoreReport, style: Style) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}",
        style.heading(&format!(
            "{:<12} {:>7} {:>9} {:>6} {:>9} {:>9} {:>9}",
            "label", "correct", "predicted", "gold", "precision", "recall", "f1"
        ))
    );
    for (label, c) in &report.per_label {
        let p = c.prf();
        let _ = writeln!(
            out,
            "{:<12} {:>7} {:>9} {:>6} {:>9} {:>9} {:>9}",
            label.to_string(),
            c.correct,
            c.predicted,
            c.gold,
            fmt4(p.precision),
            fmt4(p.recall),
            fmt4(p.f1)
        );
    }
    out
}

/// Legacy and PriMeSRL side by side with the F1 drop.
pub fn render_comparison(legacy: &ScoreReport, prime: &ScoreReport, style: Style) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}",
        style.heading(&format!(
            "{:<12} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>9}",
            "metric", "pred_P", "pred_R", "pred_F1", "arg_P", "arg_R", "arg_F1", "delta_F1"
        ))
    );
    let row = |out: &mut String, r: &ScoreReport, delta: Option<f64>| {
        let p = r.predicate_prf();
        let a = r.argument_prf();
        let _ = writeln!(
            out,
            "{:<12} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>9}",
            r.metric.to_string(),
            fmt4(p.precision),
            fmt4(p.recall),
            fmt4(p.f1),
            fmt4(a.precision),
            fmt4(a.recall),
            fmt4(a.f1),
            delta.map(fmt4).unwrap_or_default()
        );
    };
    let delta = prime.argument_prf().f1 - legacy.argument_prf().f1;
    row(&mut out, legacy, None);
    row(&mut out, prime, Some(delta));
    let _ = writeln!(
        out,
        "Predicate F1 delta: {}",
        fmt4(prime.predicate_prf().f1 - legacy.predicate_prf().f1)
    );
    let _ = writeln!(out, "Argument F1 delta: {}", fmt4(delta));
    out
}

pub fn render_stats(stats: &CorpusStats, style: Style) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", style.heading("Corpus statistics"));
    let _ = writeln!(out, "Sentences: {}", stats.sentences);
    let _ = writeln!(out, "Predicates: {}", stats.predicates);
    let _ = writeln!(out, "Arguments: {}", stats.arguments);
    let _ = writeln!(out, "C-X: {:.2}% ({})", stats.pct_continuation(), stats.continuation);
    let _ = writeln!(out, "R-X: {:.2}% ({})", stats.pct_reference(), stats.reference);
    let _ = writeln!(out, "{}", style.heading("Per label"));
    for (label, n) in &stats.per_label {
        let _ = writeln!(out, "{:<12} {n}", label.to_string());
    }
    out
}
