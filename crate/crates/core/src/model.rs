//! Domain types shared by the readers, the normalizer and the scorers.
//!
//! Everything here is an immutable value once built. Labels are kept in a
//! single canonical space (`A0`, `AM-TMP`, `R-A0`, `C-A1`, ...) so that
//! matching never has to care about the long PropBank spelling (`ARG0`,
//! `ARGM-TMP`) or the bare modifier shorthand (`TMP`).

use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::Sum;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Modifier tags accepted without the `AM-` prefix.
const BARE_MODIFIER_TAGS: &[&str] = &[
    "ADJ", "ADV", "CAU", "COM", "CXN", "DIR", "DIS", "DSP", "EXT", "GOL", "LOC", "LVB", "MNR",
    "MOD", "NEG", "PNC", "PRD", "PRP", "PRR", "PRT", "PRX", "REC", "TMP",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("empty label")]
    Empty,
    #[error("label `{0}` repeats the {1} prefix")]
    NestedPrefix(String, &'static str),
    #[error("label `{0}` has a prefix but no base role")]
    MissingBase(String),
    #[error("label `{0}` contains characters outside [A-Za-z0-9_-]")]
    InvalidCharacters(String),
    #[error("`{0}` is not a lemma.sense predicate label")]
    MalformedSense(String),
    #[error("label `{0}` is neither a core nor a modifier role")]
    UnknownLabel(String),
    #[error("the verb label is not scored")]
    NotScorable,
}

/// A PropBank roleset identifier such as `buy.01`.
///
/// Sense numbers compare after left-padding to two digits, so `buy.1` and
/// `buy.01` are the same sense. The original spelling is kept for output.
#[derive(Debug, Clone)]
pub struct SenseLabel {
    lemma: String,
    sense_id: String,
}

impl SenseLabel {
    pub fn new(lemma: impl Into<String>, sense_id: impl Into<String>) -> Result<Self, LabelError> {
        let lemma = lemma.into();
        let sense_id = sense_id.into();
        if lemma.is_empty()
            || lemma.chars().any(char::is_whitespace)
            || sense_id.is_empty()
            || !sense_id.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(LabelError::MalformedSense(format!("{lemma}.{sense_id}")));
        }
        Ok(SenseLabel { lemma, sense_id })
    }

    /// Splits on the last dot, so `buy_out.03` and `a.b.02` both work.
    pub fn parse(s: &str) -> Result<Self, LabelError> {
        let (lemma, id) = s
            .rsplit_once('.')
            .ok_or_else(|| LabelError::MalformedSense(s.to_string()))?;
        SenseLabel::new(lemma, id).map_err(|_| LabelError::MalformedSense(s.to_string()))
    }

    pub fn lemma(&self) -> &str {
        &self.lemma
    }

    pub fn sense_id(&self) -> &str {
        &self.sense_id
    }

    /// The sense number padded to at least two digits.
    pub fn normalized_id(&self) -> Cow<'_, str> {
        if self.sense_id.len() >= 2 {
            Cow::Borrowed(&self.sense_id)
        } else {
            Cow::Owned(format!("{:0>2}", self.sense_id))
        }
    }

    /// Sense-number-only comparison, ignoring the lemma.
    pub fn same_sense_number(&self, other: &SenseLabel) -> bool {
        self.normalized_id() == other.normalized_id()
    }
}

impl PartialEq for SenseLabel {
    fn eq(&self, other: &Self) -> bool {
        self.lemma == other.lemma && self.same_sense_number(other)
    }
}

impl Eq for SenseLabel {}

impl Hash for SenseLabel {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.lemma.hash(state);
        self.normalized_id().hash(state);
    }
}

impl fmt::Display for SenseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.lemma, self.sense_id)
    }
}

impl FromStr for SenseLabel {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SenseLabel::parse(s)
    }
}

/// Numbered core roles. `AA` is the causative agent of CoNLL data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoreRole {
    Numbered(u8),
    Aa,
}

/// The role a label names once its `C-`/`R-` prefixes are removed.
///
/// Variant order gives the report ordering: core roles first, then
/// modifiers alphabetically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseRole {
    Core(CoreRole),
    /// Adjunct tag without the `AM-` prefix, e.g. `TMP`.
    Modifier(String),
    /// The predicate's own span in span-based data; never scored.
    Verb,
    /// Anything else found in real data (`SU`, ...).
    Other(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelFamily {
    Core,
    Modifier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum UnknownLabelPolicy {
    /// Score unknown bases as modifiers and report a warning.
    #[default]
    TreatAsModifier,
    Reject,
}

/// A normalized argument label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RoleLabel {
    base: BaseRole,
    is_reference: bool,
    is_continuation: bool,
}

impl RoleLabel {
    pub fn new(base: BaseRole, is_continuation: bool, is_reference: bool) -> Self {
        RoleLabel {
            base,
            is_reference,
            is_continuation,
        }
    }

    pub fn core(n: u8) -> Self {
        RoleLabel::new(BaseRole::Core(CoreRole::Numbered(n)), false, false)
    }

    pub fn modifier(tag: &str) -> Self {
        RoleLabel::new(BaseRole::Modifier(tag.to_string()), false, false)
    }

    /// Accepts canonical, long (`ARG0`, `ARGM-TMP`) and bare-modifier
    /// (`TMP`) spellings. `C-R-X` and `R-C-X` parse to the same label.
    pub fn parse(s: &str) -> Result<Self, LabelError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(LabelError::Empty);
        }
        let mut rest = s;
        let mut is_continuation = false;
        let mut is_reference = false;
        loop {
            if let Some(r) = rest.strip_prefix("C-") {
                if is_continuation {
                    return Err(LabelError::NestedPrefix(s.to_string(), "C-"));
                }
                is_continuation = true;
                rest = r;
            } else if let Some(r) = rest.strip_prefix("R-") {
                if is_reference {
                    return Err(LabelError::NestedPrefix(s.to_string(), "R-"));
                }
                is_reference = true;
                rest = r;
            } else {
                break;
            }
        }
        if rest.is_empty() {
            return Err(LabelError::MissingBase(s.to_string()));
        }
        if !rest
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_')
        {
            return Err(LabelError::InvalidCharacters(s.to_string()));
        }
        let base = parse_base(rest).ok_or_else(|| LabelError::MissingBase(s.to_string()))?;
        Ok(RoleLabel::new(base, is_continuation, is_reference))
    }

    pub fn base(&self) -> &BaseRole {
        &self.base
    }

    pub fn is_continuation(&self) -> bool {
        self.is_continuation
    }

    pub fn is_reference(&self) -> bool {
        self.is_reference
    }

    pub fn is_verb(&self) -> bool {
        self.base == BaseRole::Verb
    }

    /// Same label with the continuation prefix dropped.
    pub fn without_continuation(&self) -> RoleLabel {
        RoleLabel::new(self.base.clone(), false, self.is_reference)
    }

    pub fn with_continuation(&self, is_continuation: bool) -> RoleLabel {
        RoleLabel::new(self.base.clone(), is_continuation, self.is_reference)
    }

    pub fn with_reference(&self, is_reference: bool) -> RoleLabel {
        RoleLabel::new(self.base.clone(), self.is_continuation, is_reference)
    }

    /// Renders the bare base role, e.g. `A0` or `AM-TMP`.
    pub fn base_str(&self) -> String {
        match &self.base {
            BaseRole::Core(CoreRole::Numbered(n)) => format!("A{n}"),
            BaseRole::Core(CoreRole::Aa) => "AA".to_string(),
            BaseRole::Modifier(tag) => format!("AM-{tag}"),
            BaseRole::Verb => "V".to_string(),
            BaseRole::Other(s) => s.clone(),
        }
    }
}

fn parse_base(s: &str) -> Option<BaseRole> {
    if s == "V" {
        return Some(BaseRole::Verb);
    }
    if s == "AA" || s == "ARGA" {
        return Some(BaseRole::Core(CoreRole::Aa));
    }
    let numbered = s.strip_prefix("ARG").or_else(|| s.strip_prefix('A'));
    if let Some(digits) = numbered {
        if digits.len() == 1 {
            if let Some(d) = digits.chars().next().and_then(|c| c.to_digit(10)) {
                if d <= 5 {
                    return Some(BaseRole::Core(CoreRole::Numbered(d as u8)));
                }
            }
        }
    }
    if let Some(tag) = s.strip_prefix("ARGM-").or_else(|| s.strip_prefix("AM-")) {
        return (!tag.is_empty()).then(|| BaseRole::Modifier(tag.to_string()));
    }
    if BARE_MODIFIER_TAGS.contains(&s) {
        return Some(BaseRole::Modifier(s.to_string()));
    }
    Some(BaseRole::Other(s.to_string()))
}

impl fmt::Display for RoleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_reference {
            f.write_str("R-")?;
        }
        if self.is_continuation {
            f.write_str("C-")?;
        }
        f.write_str(&self.base_str())
    }
}

impl FromStr for RoleLabel {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RoleLabel::parse(s)
    }
}

impl Serialize for RoleLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RoleLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = Cow::<'de, str>::deserialize(deserializer)?;
        RoleLabel::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Core vs. modifier family of a label; prefixes are ignored.
pub fn classify(label: &RoleLabel, policy: UnknownLabelPolicy) -> Result<LabelFamily, LabelError> {
    match label.base() {
        BaseRole::Core(_) => Ok(LabelFamily::Core),
        BaseRole::Modifier(_) => Ok(LabelFamily::Modifier),
        BaseRole::Verb => Err(LabelError::NotScorable),
        BaseRole::Other(s) => match policy {
            UnknownLabelPolicy::TreatAsModifier => Ok(LabelFamily::Modifier),
            UnknownLabelPolicy::Reject => Err(LabelError::UnknownLabel(s.clone())),
        },
    }
}

/// Inclusive 1-based token range. Head-based arguments have `start == end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TokenSpan {
    pub start: usize,
    pub end: usize,
}

impl TokenSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(1 <= start && start <= end);
        TokenSpan { start, end }
    }

    pub fn single(index: usize) -> Self {
        TokenSpan::new(index, index)
    }

    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn tokens(&self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }

    pub fn overlaps(&self, other: &TokenSpan) -> bool {
        self.start <= other.end && other.start <= self.end
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub index: usize,
    pub form: String,
    pub is_predicate: bool,
    pub sense: Option<SenseLabel>,
    /// Columns carried through untouched: LEMMA..PDEPREL for CoNLL-2009,
    /// the target-verb column for CoNLL-2005.
    pub columns: Vec<String>,
}

impl Token {
    pub fn new(index: usize, form: impl Into<String>) -> Self {
        Token {
            index,
            form: form.into(),
            is_predicate: false,
            sense: None,
            columns: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RawArgument {
    pub label: RoleLabel,
    pub extent: TokenSpan,
}

impl RawArgument {
    pub fn new(label: RoleLabel, extent: TokenSpan) -> Self {
        RawArgument { label, extent }
    }

    pub fn head(label: RoleLabel, index: usize) -> Self {
        RawArgument::new(label, TokenSpan::single(index))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PredicateInstance {
    pub anchor: usize,
    pub sense: Option<SenseLabel>,
    pub arguments: Vec<RawArgument>,
}

impl PredicateInstance {
    pub fn new(anchor: usize, sense: Option<SenseLabel>) -> Self {
        PredicateInstance {
            anchor,
            sense,
            arguments: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Sentence {
    pub tokens: Vec<Token>,
    /// Ordered by anchor.
    pub predicates: Vec<PredicateInstance>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("token {found} is out of order (expected index {expected})")]
    TokenIndex { expected: usize, found: usize },
    #[error("predicate anchor {0} does not point at a predicate token")]
    BadAnchor(usize),
    #[error("predicates are not strictly ordered by anchor at {0}")]
    UnorderedPredicates(usize),
    #[error("argument {label}@{start}-{end} of predicate {anchor} is outside the sentence")]
    OutOfBounds {
        anchor: usize,
        label: String,
        start: usize,
        end: usize,
    },
    #[error("predicate {anchor} has a duplicate argument {label}@{start}")]
    DuplicateArgument {
        anchor: usize,
        label: String,
        start: usize,
    },
}

impl Sentence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn predicate_at(&self, anchor: usize) -> Option<&PredicateInstance> {
        self.predicates.iter().find(|p| p.anchor == anchor)
    }

    /// Checks the structural invariants the readers guarantee.
    pub fn validate(&self) -> Result<(), ModelError> {
        for (i, tok) in self.tokens.iter().enumerate() {
            if tok.index != i + 1 {
                return Err(ModelError::TokenIndex {
                    expected: i + 1,
                    found: tok.index,
                });
            }
        }
        let mut last = 0;
        for pred in &self.predicates {
            if pred.anchor <= last {
                return Err(ModelError::UnorderedPredicates(pred.anchor));
            }
            last = pred.anchor;
            match self.tokens.get(pred.anchor.wrapping_sub(1)) {
                Some(t) if t.is_predicate => {}
                _ => return Err(ModelError::BadAnchor(pred.anchor)),
            }
            for (i, arg) in pred.arguments.iter().enumerate() {
                if arg.extent.start == 0 || arg.extent.end > self.tokens.len() {
                    return Err(ModelError::OutOfBounds {
                        anchor: pred.anchor,
                        label: arg.label.to_string(),
                        start: arg.extent.start,
                        end: arg.extent.end,
                    });
                }
                if pred.arguments[..i].contains(arg) {
                    return Err(ModelError::DuplicateArgument {
                        anchor: pred.anchor,
                        label: arg.label.to_string(),
                        start: arg.extent.start,
                    });
                }
            }
        }
        Ok(())
    }
}

/// One scoring unit after continuation parts have been merged.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MergedArgument {
    /// Never carries the continuation prefix.
    pub label: RoleLabel,
    /// Sorted, duplicate-free union of the parts' tokens.
    pub tokens: Vec<usize>,
    pub part_count: usize,
    pub first_part_is_base: bool,
}

impl MergedArgument {
    pub fn first_token(&self) -> usize {
        self.tokens[0]
    }
}

/// Correct / predicted / gold tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct EvalCounts {
    pub correct: u64,
    pub predicted: u64,
    pub gold: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl EvalCounts {
    pub const ZERO: EvalCounts = EvalCounts {
        correct: 0,
        predicted: 0,
        gold: 0,
    };

    pub fn new(correct: u64, predicted: u64, gold: u64) -> Self {
        debug_assert!(correct <= predicted && correct <= gold);
        EvalCounts {
            correct,
            predicted,
            gold,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.correct <= self.predicted && self.correct <= self.gold
    }

    pub fn prf(&self) -> Prf {
        f1(*self)
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Precision, recall and their harmonic mean; zero denominators give 0.
pub fn f1(counts: EvalCounts) -> Prf {
    let precision = ratio(counts.correct, counts.predicted);
    let recall = ratio(counts.correct, counts.gold);
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    Prf {
        precision,
        recall,
        f1,
    }
}

pub fn merge_counts(a: EvalCounts, b: EvalCounts) -> EvalCounts {
    EvalCounts {
        correct: a.correct + b.correct,
        predicted: a.predicted + b.predicted,
        gold: a.gold + b.gold,
    }
}

impl Add for EvalCounts {
    type Output = EvalCounts;

    fn add(self, rhs: EvalCounts) -> EvalCounts {
        merge_counts(self, rhs)
    }
}

impl AddAssign for EvalCounts {
    fn add_assign(&mut self, rhs: EvalCounts) {
        *self = merge_counts(*self, rhs);
    }
}

impl Sum for EvalCounts {
    fn sum<I: Iterator<Item = EvalCounts>>(iter: I) -> Self {
        iter.fold(EvalCounts::ZERO, merge_counts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Head,
    Span,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Head => "head",
            Mode::Span => "span",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    #[serde(rename = "primesrl")]
    PrimeSrl,
    LegacyHead,
    LegacySpan,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::PrimeSrl => "primesrl",
            Metric::LegacyHead => "legacy_head",
            Metric::LegacySpan => "legacy_span",
        })
    }
}

/// Per-label tallies, ordered core roles first, then modifiers.
pub type LabelCounts = BTreeMap<RoleLabel, EvalCounts>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub metric: Metric,
    pub mode: Mode,
    pub predicate_counts: EvalCounts,
    pub argument_counts: EvalCounts,
    pub per_label: LabelCounts,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_sentence: Option<Vec<EvalCounts>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ScoreReport {
    pub fn predicate_prf(&self) -> Prf {
        self.predicate_counts.prf()
    }

    pub fn argument_prf(&self) -> Prf {
        self.argument_counts.prf()
    }
}

impl PartialOrd for MergedArgument {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MergedArgument {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tokens
            .first()
            .cmp(&other.tokens.first())
            .then_with(|| self.label.cmp(&other.label))
            .then_with(|| self.tokens.cmp(&other.tokens))
    }
}
