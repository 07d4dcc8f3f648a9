//! Predicate and argument scorers.
//!
//! Three argument metrics are provided:
//!
//! * **PriMeSRL** scores merged units. A system unit is correct when its
//!   predicate is paired with a gold predicate, its label and token set equal
//!   those of an unused gold unit, core roles additionally need the joint
//!   `lemma.sense` of the predicate to be right, and a reference unit needs
//!   the unit it refers to be correct as well.
//! * **Legacy head** (CoNLL-2009 style) scores every labeled head token on
//!   its own, literal label included, with no sense or reference conditions.
//! * **Legacy span** (CoNLL-2005 style) chains `X` / `C-X` parts left to
//!   right and needs the whole part sequence to match.
//!
//! All scorers are pure functions over aligned sentences; corpus totals are
//! sums of per-sentence counts.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ingest::{align, AlignError, AlignedCorpus, AlignedSentence, Corpus};
use crate::model::{
    classify, EvalCounts, LabelCounts, LabelError, LabelFamily, MergedArgument, Metric, Mode,
    PredicateInstance, RawArgument, RoleLabel, ScoreReport, TokenSpan, UnknownLabelPolicy,
};
use crate::normalize::{merge_continuations, resolve_references};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScoreError {
    #[error("sentence {sentence}: gold predicate at token {anchor} has no sense")]
    MissingGoldSense { sentence: usize, anchor: usize },
    #[error("sentence {sentence}, predicate {anchor}: {source}")]
    Label {
        sentence: usize,
        anchor: usize,
        #[source]
        source: LabelError,
    },
    #[error("cannot score {requested} mode on a {found}-mode corpus")]
    ModeMismatch { requested: Mode, found: Mode },
    #[error("gold corpus is in {gold} mode, system corpus in {system} mode")]
    CorpusModeMismatch { gold: Mode, system: Mode },
}

#[derive(Debug, Error)]
pub enum EvaluateError {
    #[error(transparent)]
    Align(#[from] AlignError),
    #[error(transparent)]
    Score(#[from] ScoreError),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ScoringOptions {
    pub unknown_labels: UnknownLabelPolicy,
    pub per_sentence: bool,
}

/// How predicate senses are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SenseCheck {
    /// Lemma and sense number must both match.
    Joint,
    /// Only the sense number is compared.
    NumberOnly,
}

/// Whether a paired predicate passes the sense test. Unannotated corpora
/// pass trivially; a gold predicate without a sense is an input defect.
pub fn sense_matches(
    gold: &PredicateInstance,
    system: &PredicateInstance,
    check: SenseCheck,
    senses_annotated: bool,
    sentence: usize,
) -> Result<bool, ScoreError> {
    if !senses_annotated {
        return Ok(true);
    }
    let g = gold.sense.as_ref().ok_or(ScoreError::MissingGoldSense {
        sentence,
        anchor: gold.anchor,
    })?;
    Ok(match (&system.sense, check) {
        (None, _) => false,
        (Some(s), SenseCheck::Joint) => s == g,
        (Some(s), SenseCheck::NumberOnly) => s.same_sense_number(g),
    })
}

fn score_predicates(aligned: &AlignedCorpus<'_>, check: SenseCheck) -> Result<EvalCounts, ScoreError> {
    let mut counts = EvalCounts::ZERO;
    for (si, sent) in aligned.sentences.iter().enumerate() {
        if aligned.senses_annotated {
            if let Some(p) = sent.gold.predicates.iter().find(|p| p.sense.is_none()) {
                return Err(ScoreError::MissingGoldSense {
                    sentence: si + 1,
                    anchor: p.anchor,
                });
            }
        }
        counts.gold += sent.gold.predicates.len() as u64;
        counts.predicted += sent.system.predicates.len() as u64;
        for &(g, s) in &sent.pairs {
            let ok = sense_matches(
                &sent.gold.predicates[g],
                &sent.system.predicates[s],
                check,
                aligned.senses_annotated,
                si + 1,
            )?;
            counts.correct += u64::from(ok);
        }
    }
    Ok(counts)
}

/// Predicate scoring on the joint `lemma.sense`.
pub fn score_predicates_primesrl(aligned: &AlignedCorpus<'_>) -> Result<EvalCounts, ScoreError> {
    score_predicates(aligned, SenseCheck::Joint)
}

/// Predicate scoring on the sense number alone, as the CoNLL-2009 scorer does.
pub fn score_predicates_legacy09(aligned: &AlignedCorpus<'_>) -> Result<EvalCounts, ScoreError> {
    score_predicates(aligned, SenseCheck::NumberOnly)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitVerdict {
    pub unit: MergedArgument,
    pub family: LabelFamily,
    pub correct: bool,
}

/// PriMeSRL outcome for one gold/system predicate pair (either side may be
/// absent for missed or spurious predicates).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrimeJudgement {
    pub system: Vec<UnitVerdict>,
    pub gold: Vec<MergedArgument>,
    /// Labels scored as modifiers because they belong to neither family.
    pub unknown_labels: BTreeSet<RoleLabel>,
}

impl PrimeJudgement {
    pub fn counts(&self) -> EvalCounts {
        EvalCounts {
            correct: self.system.iter().filter(|v| v.correct).count() as u64,
            predicted: self.system.len() as u64,
            gold: self.gold.len() as u64,
        }
    }
}

fn family_of(
    label: &RoleLabel,
    policy: UnknownLabelPolicy,
    unknown: &mut BTreeSet<RoleLabel>,
) -> Result<LabelFamily, LabelError> {
    let family = classify(label, policy)?;
    if matches!(label.base(), crate::model::BaseRole::Other(_)) {
        unknown.insert(label.clone());
    }
    Ok(family)
}

fn take<'a>(pool: &mut HashMap<(&'a RoleLabel, &'a [usize]), usize>, u: &'a MergedArgument) -> bool {
    match pool.get_mut(&(&u.label, u.tokens.as_slice())) {
        Some(n) if *n > 0 => {
            *n -= 1;
            true
        }
        _ => false,
    }
}

/// Judges the system units of one predicate under PriMeSRL.
///
/// `sense_ok` is the joint sense test of the pair; it is ignored when either
/// side is missing.
pub fn judge_primesrl(
    gold: Option<&PredicateInstance>,
    system: Option<&PredicateInstance>,
    sense_ok: bool,
    policy: UnknownLabelPolicy,
) -> Result<PrimeJudgement, LabelError> {
    let gold_units = gold.map(|p| merge_continuations(&p.arguments)).unwrap_or_default();
    let sys_units = system.map(|p| merge_continuations(&p.arguments)).unwrap_or_default();
    let mut unknown = BTreeSet::new();
    for u in &gold_units {
        family_of(&u.label, policy, &mut unknown)?;
    }
    let families = sys_units
        .iter()
        .map(|u| family_of(&u.label, policy, &mut unknown))
        .collect::<Result<Vec<_>, _>>()?;

    let paired = gold.is_some() && system.is_some();
    let mut pool: HashMap<(&RoleLabel, &[usize]), usize> = HashMap::new();
    for u in &gold_units {
        *pool.entry((&u.label, u.tokens.as_slice())).or_default() += 1;
    }

    let eligible = |i: usize| paired && (families[i] == LabelFamily::Modifier || sense_ok);
    let mut correct = vec![false; sys_units.len()];
    for (i, u) in sys_units.iter().enumerate() {
        if !u.label.is_reference() && eligible(i) {
            correct[i] = take(&mut pool, u);
        }
    }
    let referents = resolve_references(&sys_units);
    for (i, u) in sys_units.iter().enumerate() {
        if u.label.is_reference() && eligible(i) {
            let referent_ok = referents[i].candidates().iter().any(|&r| correct[r]);
            correct[i] = referent_ok && take(&mut pool, u);
        }
    }

    let system = sys_units
        .into_iter()
        .zip(families)
        .zip(correct)
        .map(|((unit, family), correct)| UnitVerdict {
            unit,
            family,
            correct,
        })
        .collect();
    Ok(PrimeJudgement {
        system,
        gold: gold_units,
        unknown_labels: unknown,
    })
}

/// Outcome of the legacy head scorer for one predicate pair.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HeadJudgement {
    pub system: Vec<(RawArgument, bool)>,
    pub gold: Vec<RawArgument>,
}

impl HeadJudgement {
    pub fn counts(&self) -> EvalCounts {
        EvalCounts {
            correct: self.system.iter().filter(|(_, c)| *c).count() as u64,
            predicted: self.system.len() as u64,
            gold: self.gold.len() as u64,
        }
    }
}

fn scorable(p: Option<&PredicateInstance>) -> Vec<RawArgument> {
    p.map(|p| {
        p.arguments
            .iter()
            .filter(|a| !a.label.is_verb())
            .cloned()
            .collect()
    })
    .unwrap_or_default()
}

/// Each labeled token is its own unit; label and position must match.
pub fn judge_legacy_head(
    gold: Option<&PredicateInstance>,
    system: Option<&PredicateInstance>,
) -> HeadJudgement {
    let gold_args = scorable(gold);
    let paired = gold.is_some() && system.is_some();
    let mut pool: HashMap<&RawArgument, usize> = HashMap::new();
    for a in &gold_args {
        *pool.entry(a).or_default() += 1;
    }
    let system = scorable(system)
        .into_iter()
        .map(|a| {
            let hit = paired
                && match pool.get_mut(&a) {
                    Some(n) if *n > 0 => {
                        *n -= 1;
                        true
                    }
                    _ => false,
                };
            (a, hit)
        })
        .collect();
    HeadJudgement {
        system,
        gold: gold_args,
    }
}

/// A chain of literal parts as the CoNLL-2005 scorer groups them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainUnit {
    pub parts: Vec<(RoleLabel, TokenSpan)>,
}

impl ChainUnit {
    /// Literal label of the first part; orphans keep their `C-` prefix.
    pub fn label(&self) -> &RoleLabel {
        &self.parts[0].0
    }
}

/// Left-to-right chaining: `X` opens a unit, `C-X` joins the latest open unit
/// with base `X`, or opens an orphan unit when there is none.
pub fn chain_units(arguments: &[RawArgument]) -> Vec<ChainUnit> {
    let mut args: Vec<&RawArgument> = arguments.iter().filter(|a| !a.label.is_verb()).collect();
    args.sort_by_key(|a| a.extent);
    let mut units: Vec<ChainUnit> = Vec::new();
    let mut open: HashMap<RoleLabel, usize> = HashMap::new();
    for a in args {
        let key = a.label.without_continuation();
        let part = (a.label.clone(), a.extent);
        match open.get(&key) {
            Some(&i) if a.label.is_continuation() => units[i].parts.push(part),
            _ => {
                open.insert(key, units.len());
                units.push(ChainUnit { parts: vec![part] });
            }
        }
    }
    units
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpanJudgement {
    pub system: Vec<(ChainUnit, bool)>,
    pub gold: Vec<ChainUnit>,
}

impl SpanJudgement {
    pub fn counts(&self) -> EvalCounts {
        EvalCounts {
            correct: self.system.iter().filter(|(_, c)| *c).count() as u64,
            predicted: self.system.len() as u64,
            gold: self.gold.len() as u64,
        }
    }
}

pub fn judge_legacy_span(
    gold: Option<&PredicateInstance>,
    system: Option<&PredicateInstance>,
) -> SpanJudgement {
    let gold_units = gold.map(|p| chain_units(&p.arguments)).unwrap_or_default();
    let paired = gold.is_some() && system.is_some();
    let mut pool: HashMap<&ChainUnit, usize> = HashMap::new();
    for u in &gold_units {
        *pool.entry(u).or_default() += 1;
    }
    let system = system
        .map(|p| chain_units(&p.arguments))
        .unwrap_or_default()
        .into_iter()
        .map(|u| {
            let hit = paired
                && match pool.get_mut(&u) {
                    Some(n) if *n > 0 => {
                        *n -= 1;
                        true
                    }
                    _ => false,
                };
            (u, hit)
        })
        .collect();
    SpanJudgement {
        system,
        gold: gold_units,
    }
}

/// Argument totals with a per-label and per-sentence breakdown.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ArgumentScore {
    pub counts: EvalCounts,
    pub per_label: LabelCounts,
    pub per_sentence: Vec<EvalCounts>,
    pub warnings: Vec<String>,
}

impl ArgumentScore {
    fn add_predicted(&mut self, label: &RoleLabel, correct: bool) {
        let e = self.per_label.entry(label.clone()).or_default();
        e.predicted += 1;
        e.correct += u64::from(correct);
    }

    fn add_gold(&mut self, label: &RoleLabel) {
        self.per_label.entry(label.clone()).or_default().gold += 1;
    }

    fn finish(mut self) -> Self {
        self.counts = self.per_sentence.iter().copied().sum();
        self
    }
}

/// Every (gold, system) predicate pairing of a sentence: paired, missed and
/// spurious predicates.
fn pairings<'a>(
    sent: &'a AlignedSentence<'a>,
) -> impl Iterator<Item = (Option<&'a PredicateInstance>, Option<&'a PredicateInstance>)> + 'a {
    let g = &sent.gold.predicates;
    let s = &sent.system.predicates;
    sent.pairs
        .iter()
        .map(move |&(gi, si)| (Some(&g[gi]), Some(&s[si])))
        .chain(sent.missed.iter().map(move |&gi| (Some(&g[gi]), None)))
        .chain(sent.spurious.iter().map(move |&si| (None, Some(&s[si]))))
}

pub fn score_arguments_primesrl(
    aligned: &AlignedCorpus<'_>,
    options: &ScoringOptions,
) -> Result<ArgumentScore, ScoreError> {
    let mut score = ArgumentScore::default();
    let mut unknown = BTreeSet::new();
    for (si, sent) in aligned.sentences.iter().enumerate() {
        let mut sentence_counts = EvalCounts::ZERO;
        for (gold, system) in pairings(sent) {
            let sense_ok = match (gold, system) {
                (Some(g), Some(s)) => {
                    sense_matches(g, s, SenseCheck::Joint, aligned.senses_annotated, si + 1)?
                }
                _ => false,
            };
            let anchor = gold.or(system).map(|p| p.anchor).unwrap_or_default();
            let j = judge_primesrl(gold, system, sense_ok, options.unknown_labels).map_err(
                |source| ScoreError::Label {
                    sentence: si + 1,
                    anchor,
                    source,
                },
            )?;
            for v in &j.system {
                score.add_predicted(&v.unit.label, v.correct);
            }
            for u in &j.gold {
                score.add_gold(&u.label);
            }
            unknown.extend(j.unknown_labels.iter().cloned());
            sentence_counts += j.counts();
        }
        score.per_sentence.push(sentence_counts);
    }
    score.warnings = unknown
        .into_iter()
        .map(|l| format!("label `{l}` is neither core nor modifier; scored as a modifier"))
        .collect();
    Ok(score.finish())
}

pub fn score_arguments_legacy_head(aligned: &AlignedCorpus<'_>) -> ArgumentScore {
    let mut score = ArgumentScore::default();
    for sent in &aligned.sentences {
        let mut sentence_counts = EvalCounts::ZERO;
        for (gold, system) in pairings(sent) {
            let j = judge_legacy_head(gold, system);
            for (a, c) in &j.system {
                score.add_predicted(&a.label, *c);
            }
            for a in &j.gold {
                score.add_gold(&a.label);
            }
            sentence_counts += j.counts();
        }
        score.per_sentence.push(sentence_counts);
    }
    score.finish()
}

pub fn score_arguments_legacy_span(aligned: &AlignedCorpus<'_>) -> ArgumentScore {
    let mut score = ArgumentScore::default();
    for sent in &aligned.sentences {
        let mut sentence_counts = EvalCounts::ZERO;
        for (gold, system) in pairings(sent) {
            let j = judge_legacy_span(gold, system);
            for (u, c) in &j.system {
                score.add_predicted(u.label(), *c);
            }
            for u in &j.gold {
                score.add_gold(u.label());
            }
            sentence_counts += j.counts();
        }
        score.per_sentence.push(sentence_counts);
    }
    score.finish()
}

/// Scores an aligned corpus with one metric.
pub fn evaluate_aligned(
    aligned: &AlignedCorpus<'_>,
    metric: Metric,
    mode: Mode,
    options: &ScoringOptions,
) -> Result<ScoreReport, ScoreError> {
    if mode == Mode::Head && aligned.mode == Mode::Span {
        return Err(ScoreError::ModeMismatch {
            requested: mode,
            found: aligned.mode,
        });
    }
    let (predicate_counts, args) = match metric {
        Metric::PrimeSrl => (
            score_predicates_primesrl(aligned)?,
            score_arguments_primesrl(aligned, options)?,
        ),
        Metric::LegacyHead => (
            score_predicates_legacy09(aligned)?,
            score_arguments_legacy_head(aligned),
        ),
        Metric::LegacySpan => (
            score_predicates_legacy09(aligned)?,
            score_arguments_legacy_span(aligned),
        ),
    };
    Ok(ScoreReport {
        metric,
        mode,
        predicate_counts,
        argument_counts: args.counts,
        per_label: args.per_label,
        per_sentence: options.per_sentence.then_some(args.per_sentence),
        warnings: args.warnings,
    })
}

/// Aligns `gold` and `system` and scores them with one metric.
pub fn evaluate(
    gold: &Corpus,
    system: &Corpus,
    metric: Metric,
    mode: Mode,
    options: &ScoringOptions,
) -> Result<ScoreReport, EvaluateError> {
    if gold.mode != system.mode {
        return Err(ScoreError::CorpusModeMismatch {
            gold: gold.mode,
            system: system.mode,
        }
        .into());
    }
    let aligned = align(gold, system)?;
    Ok(evaluate_aligned(&aligned, metric, mode, options)?)
}

/// The legacy metric that corresponds to a scoring mode.
pub fn legacy_metric_for(mode: Mode) -> Metric {
    match mode {
        Mode::Head => Metric::LegacyHead,
        Mode::Span => Metric::LegacySpan,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("corpus contains no arguments")]
    EmptyCorpus,
}

/// Raw argument statistics; `V` arguments are not counted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub sentences: u64,
    pub predicates: u64,
    pub arguments: u64,
    pub continuation: u64,
    pub reference: u64,
    pub per_label: BTreeMap<RoleLabel, u64>,
}

impl CorpusStats {
    pub fn pct_continuation(&self) -> f64 {
        100.0 * self.continuation as f64 / self.arguments as f64
    }

    pub fn pct_reference(&self) -> f64 {
        100.0 * self.reference as f64 / self.arguments as f64
    }
}

pub fn corpus_stats(corpus: &Corpus) -> Result<CorpusStats, StatsError> {
    let mut stats = CorpusStats {
        sentences: corpus.sentences.len() as u64,
        predicates: corpus.predicate_count() as u64,
        arguments: 0,
        continuation: 0,
        reference: 0,
        per_label: BTreeMap::new(),
    };
    let args = corpus
        .sentences
        .iter()
        .flat_map(|s| &s.predicates)
        .flat_map(|p| &p.arguments)
        .filter(|a| !a.label.is_verb());
    for a in args {
        stats.arguments += 1;
        stats.continuation += u64::from(a.label.is_continuation());
        stats.reference += u64::from(a.label.is_reference());
        *stats.per_label.entry(a.label.clone()).or_default() += 1;
    }
    if stats.arguments == 0 {
        return Err(StatsError::EmptyCorpus);
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{SenseLabel, Sentence, Token};

    fn pred(anchor: usize, sense: &str, args: &[(&str, usize)]) -> PredicateInstance {
        PredicateInstance {
            anchor,
            sense: SenseLabel::parse(sense).ok(),
            arguments: args
                .iter()
                .map(|(l, i)| RawArgument::head(RoleLabel::parse(l).unwrap(), *i))
                .collect(),
        }
    }

    fn counts(j: EvalCounts) -> (u64, u64, u64) {
        (j.correct, j.predicted, j.gold)
    }

    const T2_GOLD: &[(&str, usize)] = &[("A0", 3), ("A2", 8), ("TMP", 10), ("C-A0", 12)];

    #[test]
    fn wrong_sense_drops_core_units_only() {
        let gold = pred(4, "buy.01", &[("TMP", 1), ("A0", 3), ("A1", 6)]);
        let sys = pred(4, "buy_out.03", &[("TMP", 1), ("A0", 3), ("A1", 6)]);
        let j = judge_primesrl(Some(&gold), Some(&sys), false, UnknownLabelPolicy::Reject).unwrap();
        assert_eq!(counts(j.counts()), (1, 3, 3));
        let ok: Vec<(String, bool)> = j
            .system
            .iter()
            .map(|v| (v.unit.label.to_string(), v.correct))
            .collect();
        assert_eq!(
            ok,
            [
                ("AM-TMP".into(), true),
                ("A0".into(), false),
                ("A1".into(), false)
            ]
        );
        assert_eq!(counts(judge_legacy_head(Some(&gold), Some(&sys)).counts()), (3, 3, 3));
    }

    #[test]
    fn incomplete_and_orphan_units() {
        let gold = pred(6, "tax.01", T2_GOLD);
        let sys = pred(6, "tax.01", &[("A0", 3), ("A2", 8), ("TMP", 10), ("C-A1", 12)]);
        let j = judge_primesrl(Some(&gold), Some(&sys), true, UnknownLabelPolicy::Reject).unwrap();
        assert_eq!(counts(j.counts()), (2, 4, 3));
        assert_eq!(counts(judge_legacy_head(Some(&gold), Some(&sys)).counts()), (3, 4, 4));
        assert_eq!(counts(judge_legacy_span(Some(&gold), Some(&sys)).counts()), (2, 4, 3));
    }

    #[test]
    fn reference_needs_correct_referent() {
        let gold = pred(7, "lead.01", &[("A0", 5), ("R-A0", 6), ("A4", 8)]);
        let wrong_head = pred(7, "lead.01", &[("A0", 4), ("R-A0", 6), ("A4", 8)]);
        let j = judge_primesrl(Some(&gold), Some(&wrong_head), true, UnknownLabelPolicy::Reject)
            .unwrap();
        assert_eq!(counts(j.counts()), (1, 3, 3));
        assert_eq!(counts(judge_legacy_head(Some(&gold), Some(&wrong_head)).counts()), (2, 3, 3));

        let wrong_ref = pred(7, "lead.01", &[("A0", 5), ("R-A1", 6), ("A4", 8)]);
        let j = judge_primesrl(Some(&gold), Some(&wrong_ref), true, UnknownLabelPolicy::Reject)
            .unwrap();
        assert_eq!(counts(j.counts()), (2, 3, 3));
        // the correct main argument is not penalized for the wrong reference
        assert!(j.system.iter().any(|v| v.unit.label.to_string() == "A0" && v.correct));
    }

    #[test]
    fn unpaired_predicates() {
        let gold = pred(6, "tax.01", T2_GOLD);
        let missed = judge_primesrl(Some(&gold), None, false, UnknownLabelPolicy::Reject).unwrap();
        assert_eq!(counts(missed.counts()), (0, 0, 3));
        let spurious = judge_primesrl(None, Some(&gold), true, UnknownLabelPolicy::Reject).unwrap();
        assert_eq!(counts(spurious.counts()), (0, 3, 0));
        assert_eq!(counts(judge_legacy_head(None, Some(&gold)).counts()), (0, 4, 0));
        assert_eq!(counts(judge_legacy_span(Some(&gold), None).counts()), (0, 0, 3));
    }

    #[test]
    fn chaining_rules() {
        let p = pred(6, "tax.01", &[("C-A0", 3), ("A0", 12)]);
        let labels: Vec<String> = chain_units(&p.arguments)
            .iter()
            .map(|u| u.label().to_string())
            .collect();
        assert_eq!(labels, ["C-A0", "A0"]);

        let p = pred(6, "tax.01", &[("C-A0", 3), ("C-A0", 12)]);
        let units = chain_units(&p.arguments);
        assert_eq!(units.len(), 1);
        assert_eq!(units[0].parts.len(), 2);
    }

    #[test]
    fn unknown_labels() {
        let gold = pred(2, "be.01", &[("SU", 1)]);
        let err = judge_primesrl(Some(&gold), Some(&gold), true, UnknownLabelPolicy::Reject);
        assert!(matches!(err, Err(LabelError::UnknownLabel(_))));
        let j = judge_primesrl(Some(&gold), Some(&gold), false, UnknownLabelPolicy::TreatAsModifier)
            .unwrap();
        // treated as a modifier, so the wrong sense does not matter
        assert_eq!(counts(j.counts()), (1, 1, 1));
        assert_eq!(j.unknown_labels.len(), 1);
    }

    fn corpus(preds: Vec<PredicateInstance>, n: usize, senses: bool) -> Corpus {
        let mut s = Sentence {
            tokens: (1..=n).map(|i| Token::new(i, format!("w{i}"))).collect(),
            predicates: preds,
        };
        for p in &s.predicates {
            s.tokens[p.anchor - 1].is_predicate = true;
            s.tokens[p.anchor - 1].sense = p.sense.clone();
        }
        Corpus {
            sentences: vec![s],
            mode: Mode::Head,
            senses_annotated: senses,
        }
    }

    #[test]
    fn predicate_scorers() {
        let g = corpus(vec![pred(4, "buy.01", &[])], 7, true);
        let opts = ScoringOptions::default();
        for (sense, prime, legacy) in [
            ("buy.01", (1, 1, 1), (1, 1, 1)),
            ("sell.01", (0, 1, 1), (1, 1, 1)),
            ("buy.05", (0, 1, 1), (0, 1, 1)),
            ("buy.1", (1, 1, 1), (1, 1, 1)),
        ] {
            let s = corpus(vec![pred(4, sense, &[])], 7, true);
            let a = align(&g, &s).unwrap();
            assert_eq!(counts(score_predicates_primesrl(&a).unwrap()), prime, "{sense}");
            assert_eq!(counts(score_predicates_legacy09(&a).unwrap()), legacy, "{sense}");
        }

        let g = corpus(vec![pred(1, "stare.01", &[])], 3, true);
        let s = corpus(vec![pred(1, "look.01", &[])], 3, true);
        let a = align(&g, &s).unwrap();
        assert_eq!(score_predicates_primesrl(&a).unwrap().correct, 0);
        let g = corpus(vec![pred(1, "overheat.01", &[])], 3, true);
        let s = corpus(vec![pred(1, "soothe.01", &[])], 3, true);
        let a = align(&g, &s).unwrap();
        assert_eq!(counts(score_predicates_legacy09(&a).unwrap()), (1, 1, 1));

        let missing = corpus(vec![pred(4, "_", &[])], 7, true);
        let a = align(&missing, &missing).unwrap();
        assert!(matches!(
            score_predicates_primesrl(&a),
            Err(ScoreError::MissingGoldSense { sentence: 1, anchor: 4 })
        ));
        // a system predicate without a sense is simply wrong
        let g7 = corpus(vec![pred(4, "buy.01", &[])], 7, true);
        let a = align(&g7, &missing).unwrap();
        assert_eq!(counts(score_predicates_primesrl(&a).unwrap()), (0, 1, 1));

        let unannotated = corpus(vec![pred(4, "_", &[])], 7, false);
        let r = evaluate(&unannotated, &unannotated, Metric::LegacySpan, Mode::Span, &opts).unwrap();
        assert_eq!(counts(r.predicate_counts), (1, 1, 1));
    }

    #[test]
    fn evaluate_fills_report() {
        let g = corpus(vec![pred(6, "tax.01", T2_GOLD)], 16, true);
        let s = corpus(
            vec![pred(6, "tax.01", &[("A0", 3), ("A2", 8), ("TMP", 10), ("C-A1", 12)])],
            16,
            true,
        );
        let opts = ScoringOptions {
            per_sentence: true,
            ..Default::default()
        };
        for metric in [Metric::PrimeSrl, Metric::LegacyHead, Metric::LegacySpan] {
            let r = evaluate(&g, &s, metric, Mode::Head, &opts).unwrap();
            let sum: EvalCounts = r.per_label.values().copied().sum();
            assert_eq!(sum, r.argument_counts, "{metric}");
            let per_sentence: EvalCounts = r.per_sentence.clone().unwrap().into_iter().sum();
            assert_eq!(per_sentence, r.argument_counts);
        }
        let r = evaluate(&g, &s, Metric::PrimeSrl, Mode::Head, &opts).unwrap();
        assert_eq!(counts(r.argument_counts), (2, 4, 3));
        assert_eq!(counts(r.per_label[&RoleLabel::core(1)]), (0, 1, 0));

        let mut span = g.clone();
        span.mode = Mode::Span;
        assert!(matches!(
            evaluate(&span, &span, Metric::PrimeSrl, Mode::Head, &opts),
            Err(EvaluateError::Score(ScoreError::ModeMismatch { .. }))
        ));
        assert!(matches!(
            evaluate(&g, &span, Metric::PrimeSrl, Mode::Head, &opts),
            Err(EvaluateError::Score(ScoreError::CorpusModeMismatch { .. }))
        ));
    }

    #[test]
    fn stats() {
        let mut args: Vec<(&str, usize)> = vec![("C-A1", 1), ("R-A0", 2)];
        let labels = ["A0", "A1", "A2", "A3", "AM-TMP", "AM-LOC", "A4", "AM-MNR"];
        for (i, l) in labels.iter().enumerate() {
            args.push((l, i + 3));
        }
        let c = corpus(vec![pred(12, "x.01", &args)], 12, true);
        let st = corpus_stats(&c).unwrap();
        assert_eq!(st.arguments, 10);
        assert!((st.pct_continuation() - 10.0).abs() < 1e-12);
        assert!((st.pct_reference() - 10.0).abs() < 1e-12);

        let c = corpus(vec![pred(4, "x.01", &[("A0", 1)])], 4, true);
        let st = corpus_stats(&c).unwrap();
        assert_eq!((st.pct_continuation(), st.pct_reference()), (0.0, 0.0));

        let c = corpus(vec![pred(4, "x.01", &[])], 4, true);
        assert_eq!(corpus_stats(&c), Err(StatsError::EmptyCorpus));
    }
}
