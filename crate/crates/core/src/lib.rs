//! Scoring toolkit for semantic role labeling output.
//!
//! The [PriMeSRL](scoring) metric scores predicate senses jointly on
//! `lemma.sense`, credits core arguments only under a correct sense, treats a
//! discontinuous argument (`X` plus its `C-X` parts) as one unit and credits a
//! reference argument (`R-X`) only when the argument it refers to is correct.
//! CoNLL-2009 style head scoring and CoNLL-2005 style span scoring are
//! available for side-by-side comparison.
//!
//! ```
//! use primesrl::{evaluate, parse_conll09, Metric, Mode, ScoringOptions};
//!
//! let row = |id: usize, form: &str, fill: &str, pred: &str, arg: &str| {
//!     format!("{id}\t{form}\t_\t_\t_\t_\t_\t_\t_\t_\t_\t_\t{fill}\t{pred}\t{arg}\n")
//! };
//! let gold = [
//!     row(1, "John", "_", "_", "A0"),
//!     row(2, "bought", "Y", "buy.01", "_"),
//!     row(3, "cars", "_", "_", "A1"),
//! ]
//! .concat();
//! let system = gold.replace("buy.01", "sell.01");
//!
//! let gold = parse_conll09(&gold).unwrap().corpus;
//! let system = parse_conll09(&system).unwrap().corpus;
//! let opts = ScoringOptions::default();
//!
//! let prime = evaluate(&gold, &system, Metric::PrimeSrl, Mode::Head, &opts).unwrap();
//! assert_eq!(prime.predicate_counts.correct, 0);
//! assert_eq!(prime.argument_counts.correct, 0);
//!
//! let legacy = evaluate(&gold, &system, Metric::LegacyHead, Mode::Head, &opts).unwrap();
//! assert_eq!(legacy.predicate_counts.correct, 1);
//! assert_eq!(legacy.argument_counts.correct, 2);
//! ```

pub mod cli;
pub mod ingest;
pub mod model;
pub mod normalize;
pub mod report;
pub mod scoring;

pub use ingest::{
    align, apply_sense_sidecar, parse_conll05, parse_conll09, serialize_conll05,
    serialize_conll09, serialize_sense_sidecar, AlignError, AlignedCorpus, AlignedSentence,
    Corpus, ParseError, ParseWarning, Parsed, SerializeError,
};
pub use model::{
    classify, f1, merge_counts, BaseRole, CoreRole, EvalCounts, LabelError, LabelFamily,
    MergedArgument, Metric, Mode, PredicateInstance, Prf, RawArgument, RoleLabel, ScoreReport,
    Sentence, SenseLabel, Token, TokenSpan, UnknownLabelPolicy,
};
pub use normalize::{merge_continuations, resolve_references, Referent};
pub use scoring::{
    corpus_stats, evaluate, evaluate_aligned, legacy_metric_for, score_arguments_legacy_head,
    score_arguments_legacy_span, score_arguments_primesrl, score_predicates_legacy09,
    score_predicates_primesrl, CorpusStats, EvaluateError, ScoreError, ScoringOptions,
};
