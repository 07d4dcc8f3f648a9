//! Readers and writers for CoNLL-2009 (head-based) and CoNLL-2005
//! (span-based) files, plus gold/system alignment.
//!
//! Both readers accept tabs or runs of spaces between columns, collapse runs
//! of blank lines and report errors with 1-based line numbers of the file
//! they were found in.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::model::{
    LabelError, Mode, PredicateInstance, RawArgument, RoleLabel, Sentence, SenseLabel, Token,
    TokenSpan,
};

/// Fixed columns before the APRED block: ID FORM LEMMA PLEMMA POS PPOS FEAT
/// PFEAT HEAD PHEAD DEPREL PDEPREL FILLPRED PRED.
pub const CONLL09_FIXED_COLUMNS: usize = 14;
const CONLL09_PASSTHROUGH: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub sentences: Vec<Sentence>,
    pub mode: Mode,
    /// False for CoNLL-2005 data read without a sense sidecar, in which case
    /// predicate senses are not evaluated.
    pub senses_annotated: bool,
}

impl Corpus {
    pub fn new(mode: Mode, senses_annotated: bool) -> Self {
        Corpus {
            sentences: Vec::new(),
            mode,
            senses_annotated,
        }
    }

    pub fn predicate_count(&self) -> usize {
        self.sentences.iter().map(|s| s.predicates.len()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected {expected} columns, found {found}")]
    ColumnCountMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {found} argument columns but only {expected} predicates (FILLPRED=Y)")]
    DanglingApredColumn {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: token id `{found}` should be {expected}")]
    BadTokenId {
        line: usize,
        expected: usize,
        found: String,
    },
    #[error("line {line}: {source}")]
    InvalidLabel {
        line: usize,
        #[source]
        source: LabelError,
    },
    #[error("line {line}: bracket opened in column {column} is never closed")]
    UnbalancedBracket { line: usize, column: usize },
    #[error("line {line}: span in column {column} opens inside another span")]
    OverlappingSpan { line: usize, column: usize },
    #[error("line {line}: malformed props cell `{cell}`")]
    MalformedCell { line: usize, cell: String },
    #[error("line {line}: props column {column} has no V span on a target-verb row")]
    AnchorMissing { line: usize, column: usize },
    #[error("line {line}: two props columns are anchored at token {anchor}")]
    DuplicateAnchor { line: usize, anchor: usize },
    #[error("line {line}: words and props files disagree ({reason})")]
    WordsPropsMismatch { line: usize, reason: String },
    #[error("line {line}: sense sidecar: {reason}")]
    Sidecar { line: usize, reason: String },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::ColumnCountMismatch { line, .. }
            | ParseError::DanglingApredColumn { line, .. }
            | ParseError::BadTokenId { line, .. }
            | ParseError::InvalidLabel { line, .. }
            | ParseError::UnbalancedBracket { line, .. }
            | ParseError::OverlappingSpan { line, .. }
            | ParseError::MalformedCell { line, .. }
            | ParseError::AnchorMissing { line, .. }
            | ParseError::DuplicateAnchor { line, .. }
            | ParseError::WordsPropsMismatch { line, .. }
            | ParseError::Sidecar { line, .. } => *line,
        }
    }
}

/// Recoverable problems found while reading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    /// A FILLPRED=Y row without a parsable `lemma.sense`; the predicate is
    /// kept with no sense.
    MalformedSense { line: usize, value: String },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::MalformedSense { line, value } => {
                write!(f, "line {line}: predicate sense `{value}` is not lemma.sense; treated as missing")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub corpus: Corpus,
    pub warnings: Vec<ParseWarning>,
}

/// Lines of one sentence, each paired with its 1-based line number.
type Block<'a> = Vec<(usize, &'a str)>;

fn blocks<'a>(text: &'a str, is_comment: fn(&str) -> bool) -> Vec<Block<'a>> {
    let mut out = Vec::new();
    let mut cur: Block<'a> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else if !is_comment(line) {
            cur.push((i + 1, line));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn hash_comment(line: &str) -> bool {
    line.trim_start().starts_with('#')
}

/// `# key = value` metadata; a bare `#` line is a token.
fn metadata_comment(line: &str) -> bool {
    let t = line.trim_start();
    t.starts_with("# ") && t.contains(" = ")
}

fn parse_label(cell: &str, line: usize) -> Result<RoleLabel, ParseError> {
    RoleLabel::parse(cell).map_err(|source| ParseError::InvalidLabel { line, source })
}

/// Reads a CoNLL-2009 file. The k-th APRED column belongs to the k-th
/// FILLPRED=Y row of the sentence.
pub fn parse_conll09(text: &str) -> Result<Parsed, ParseError> {
    let mut corpus = Corpus::new(Mode::Head, true);
    let mut warnings = Vec::new();
    for block in blocks(text, hash_comment) {
        let rows: Vec<(usize, Vec<&str>)> = block
            .iter()
            .map(|&(line, l)| (line, l.split_whitespace().collect()))
            .collect();
        for (line, cols) in &rows {
            if cols.len() < CONLL09_FIXED_COLUMNS {
                return Err(ParseError::ColumnCountMismatch {
                    line: *line,
                    expected: CONLL09_FIXED_COLUMNS,
                    found: cols.len(),
                });
            }
        }
        let n_preds = rows.iter().filter(|(_, c)| c[12] == "Y").count();
        let expected = CONLL09_FIXED_COLUMNS + n_preds;

        let mut sentence = Sentence::default();
        for (i, (line, cols)) in rows.iter().enumerate() {
            let line = *line;
            if cols.len() < expected {
                return Err(ParseError::ColumnCountMismatch {
                    line,
                    expected,
                    found: cols.len(),
                });
            }
            if cols.len() > expected {
                return Err(ParseError::DanglingApredColumn {
                    line,
                    expected: n_preds,
                    found: cols.len() - CONLL09_FIXED_COLUMNS,
                });
            }
            let index = i + 1;
            if cols[0].parse::<usize>().ok() != Some(index) {
                return Err(ParseError::BadTokenId {
                    line,
                    expected: index,
                    found: cols[0].to_string(),
                });
            }
            let mut token = Token::new(index, cols[1]);
            token.columns = cols[2..12].iter().map(|c| c.to_string()).collect();
            if cols[12] == "Y" {
                token.is_predicate = true;
                match SenseLabel::parse(cols[13]) {
                    Ok(s) => token.sense = Some(s),
                    Err(_) => warnings.push(ParseWarning::MalformedSense {
                        line,
                        value: cols[13].to_string(),
                    }),
                }
                sentence
                    .predicates
                    .push(PredicateInstance::new(index, token.sense.clone()));
            }
            sentence.tokens.push(token);
        }
        for (i, (line, cols)) in rows.iter().enumerate() {
            for (k, cell) in cols[CONLL09_FIXED_COLUMNS..].iter().enumerate() {
                if *cell != "_" {
                    let label = parse_label(cell, *line)?;
                    sentence.predicates[k]
                        .arguments
                        .push(RawArgument::head(label, i + 1));
                }
            }
        }
        corpus.sentences.push(sentence);
    }
    Ok(Parsed { corpus, warnings })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SerializeError {
    #[error("corpus is in {found} mode but the target format needs {expected} mode")]
    ModeMismatch { expected: Mode, found: Mode },
    #[error("sentence {sentence}: predicate {anchor} has two labels on token {token}")]
    CellConflict {
        sentence: usize,
        anchor: usize,
        token: usize,
    },
}

pub fn serialize_conll09(corpus: &Corpus) -> Result<String, SerializeError> {
    if corpus.mode != Mode::Head {
        return Err(SerializeError::ModeMismatch {
            expected: Mode::Head,
            found: corpus.mode,
        });
    }
    let mut out = String::new();
    for (si, sentence) in corpus.sentences.iter().enumerate() {
        let n = sentence.tokens.len();
        let mut grid = vec![vec!["_".to_string(); sentence.predicates.len()]; n];
        for (k, pred) in sentence.predicates.iter().enumerate() {
            for arg in &pred.arguments {
                let cell = &mut grid[arg.extent.start - 1][k];
                if cell != "_" {
                    return Err(SerializeError::CellConflict {
                        sentence: si + 1,
                        anchor: pred.anchor,
                        token: arg.extent.start,
                    });
                }
                *cell = arg.label.to_string();
            }
        }
        for (tok, apreds) in sentence.tokens.iter().zip(grid) {
            let mut cols: Vec<String> = Vec::with_capacity(CONLL09_FIXED_COLUMNS + apreds.len());
            cols.push(tok.index.to_string());
            cols.push(tok.form.clone());
            if tok.columns.len() == CONLL09_PASSTHROUGH {
                cols.extend(tok.columns.iter().cloned());
            } else {
                cols.extend(std::iter::repeat_n("_".to_string(), CONLL09_PASSTHROUGH));
            }
            cols.push(if tok.is_predicate { "Y" } else { "_" }.to_string());
            cols.push(match (&tok.sense, tok.is_predicate) {
                (Some(s), true) => s.to_string(),
                _ => "_".to_string(),
            });
            cols.extend(apreds);
            out.push_str(&cols.join("\t"));
            out.push('\n');
        }
        out.push('\n');
    }
    Ok(out)
}

#[derive(Debug)]
struct PropsRow<'a> {
    line: usize,
    verb: &'a str,
    cells: Vec<&'a str>,
}

/// Splits a props cell like `(A0*`, `*`, `*)`, `(A1*)` or `(V*V)` into its
/// opened labels and number of closing brackets.
fn split_cell(cell: &str) -> Option<(Vec<&str>, usize)> {
    let star = cell.find('*')?;
    let (open_part, close_part) = (&cell[..star], &cell[star + 1..]);
    let opens = if open_part.is_empty() {
        Vec::new()
    } else {
        let body = open_part.strip_prefix('(')?;
        body.split('(').collect::<Vec<_>>()
    };
    if opens.iter().any(|l| l.is_empty()) {
        return None;
    }
    // CoNLL-2004 style repeats the label before the close: `*A0)`.
    let closes = close_part.matches(')').count();
    let residue: String = close_part.chars().filter(|&c| c != ')').collect();
    if closes == 0 && !residue.is_empty() {
        return None;
    }
    if residue.contains('*') || residue.contains('(') {
        return None;
    }
    Some((opens, closes))
}

/// Reads a CoNLL-2005 words/props pair into a span-mode corpus. Senses are
/// absent unless [`apply_sense_sidecar`] is used afterwards.
pub fn parse_conll05(words: &str, props: &str) -> Result<Parsed, ParseError> {
    let word_blocks = blocks(words, metadata_comment);
    let prop_blocks = blocks(props, hash_comment);
    if word_blocks.len() != prop_blocks.len() {
        let line = prop_blocks
            .get(word_blocks.len().min(prop_blocks.len()))
            .and_then(|b| b.first())
            .map(|(l, _)| *l)
            .unwrap_or_else(|| props.lines().count().max(1));
        return Err(ParseError::WordsPropsMismatch {
            line,
            reason: format!(
                "{} sentences in words, {} in props",
                word_blocks.len(),
                prop_blocks.len()
            ),
        });
    }
    let mut corpus = Corpus::new(Mode::Span, false);
    for (wb, pb) in word_blocks.iter().zip(&prop_blocks) {
        if wb.len() != pb.len() {
            return Err(ParseError::WordsPropsMismatch {
                line: pb[0].0,
                reason: format!("{} words vs {} props rows", wb.len(), pb.len()),
            });
        }
        let rows: Vec<PropsRow> = pb
            .iter()
            .map(|&(line, l)| {
                let mut it = l.split_whitespace();
                let verb = it.next().unwrap_or("-");
                PropsRow {
                    line,
                    verb,
                    cells: it.collect(),
                }
            })
            .collect();
        let n_cols = rows[0].cells.len();
        for row in &rows {
            if row.cells.len() != n_cols {
                return Err(ParseError::ColumnCountMismatch {
                    line: row.line,
                    expected: n_cols + 1,
                    found: row.cells.len() + 1,
                });
            }
        }

        let mut sentence = Sentence::default();
        for (i, ((_, wline), row)) in wb.iter().zip(&rows).enumerate() {
            let form = wline.split_whitespace().next().unwrap_or_default();
            let mut token = Token::new(i + 1, form);
            token.is_predicate = row.verb != "-";
            token.columns = vec![row.verb.to_string()];
            sentence.tokens.push(token);
        }

        let mut predicates = Vec::with_capacity(n_cols);
        for column in 0..n_cols {
            let mut arguments = Vec::new();
            let mut open: Option<(RoleLabel, usize, usize)> = None;
            for (i, row) in rows.iter().enumerate() {
                let cell = row.cells[column];
                let (opens, closes) = split_cell(cell).ok_or_else(|| ParseError::MalformedCell {
                    line: row.line,
                    cell: cell.to_string(),
                })?;
                if opens.len() > 1 || (!opens.is_empty() && open.is_some()) {
                    return Err(ParseError::OverlappingSpan {
                        line: row.line,
                        column: column + 1,
                    });
                }
                if let Some(label) = opens.first() {
                    open = Some((parse_label(label, row.line)?, i + 1, row.line));
                }
                match closes {
                    0 => {}
                    1 => {
                        let (label, start, _) =
                            open.take().ok_or(ParseError::UnbalancedBracket {
                                line: row.line,
                                column: column + 1,
                            })?;
                        arguments.push(RawArgument::new(label, TokenSpan::new(start, i + 1)));
                    }
                    _ => {
                        return Err(ParseError::UnbalancedBracket {
                            line: row.line,
                            column: column + 1,
                        })
                    }
                }
            }
            if let Some((_, _, line)) = open {
                return Err(ParseError::UnbalancedBracket {
                    line,
                    column: column + 1,
                });
            }
            let anchor = arguments
                .iter()
                .filter(|a| a.label.is_verb() && !a.label.is_continuation())
                .flat_map(|a| a.extent.tokens())
                .find(|&t| sentence.tokens[t - 1].is_predicate)
                .ok_or(ParseError::AnchorMissing {
                    line: rows[0].line,
                    column: column + 1,
                })?;
            predicates.push(PredicateInstance {
                anchor,
                sense: None,
                arguments,
            });
        }
        predicates.sort_by_key(|p| p.anchor);
        for pair in predicates.windows(2) {
            if pair[0].anchor == pair[1].anchor {
                return Err(ParseError::DuplicateAnchor {
                    line: rows[pair[0].anchor - 1].line,
                    anchor: pair[0].anchor,
                });
            }
        }
        sentence.predicates = predicates;
        corpus.sentences.push(sentence);
    }
    Ok(Parsed {
        corpus,
        warnings: Vec::new(),
    })
}

/// Attaches senses from a `sent<TAB>token<TAB>lemma.sense` sidecar (1-based
/// indices) and marks the corpus as sense-annotated.
pub fn apply_sense_sidecar(corpus: &mut Corpus, sidecar: &str) -> Result<(), ParseError> {
    for (i, raw) in sidecar.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = l.split_whitespace().collect();
        let err = |reason: String| ParseError::Sidecar { line, reason };
        if cols.len() != 3 {
            return Err(err(format!("expected 3 columns, found {}", cols.len())));
        }
        let sent: usize = cols[0]
            .parse()
            .map_err(|_| err(format!("bad sentence index `{}`", cols[0])))?;
        let tok: usize = cols[1]
            .parse()
            .map_err(|_| err(format!("bad token index `{}`", cols[1])))?;
        let sense = SenseLabel::parse(cols[2]).map_err(|e| err(e.to_string()))?;
        let sentence = sent
            .checked_sub(1)
            .and_then(|s| corpus.sentences.get_mut(s))
            .ok_or_else(|| err(format!("no sentence {sent}")))?;
        let pred = sentence
            .predicates
            .iter_mut()
            .find(|p| p.anchor == tok)
            .ok_or_else(|| err(format!("sentence {sent} has no predicate at token {tok}")))?;
        pred.sense = Some(sense.clone());
        sentence.tokens[tok - 1].sense = Some(sense);
    }
    corpus.senses_annotated = true;
    Ok(())
}

/// Writes the sidecar that [`apply_sense_sidecar`] reads.
pub fn serialize_sense_sidecar(corpus: &Corpus) -> String {
    let mut out = String::new();
    for (si, sentence) in corpus.sentences.iter().enumerate() {
        for pred in &sentence.predicates {
            if let Some(sense) = &pred.sense {
                let _ = writeln!(out, "{}\t{}\t{}", si + 1, pred.anchor, sense);
            }
        }
    }
    out
}

/// Writes `(words, props)` for a span-mode corpus.
pub fn serialize_conll05(corpus: &Corpus) -> Result<(String, String), SerializeError> {
    if corpus.mode != Mode::Span {
        return Err(SerializeError::ModeMismatch {
            expected: Mode::Span,
            found: corpus.mode,
        });
    }
    let mut words = String::new();
    let mut props = String::new();
    for (si, sentence) in corpus.sentences.iter().enumerate() {
        let n = sentence.tokens.len();
        let mut grid = vec![vec![(String::new(), 0usize); sentence.predicates.len()]; n];
        for (k, pred) in sentence.predicates.iter().enumerate() {
            let mut covered = vec![false; n];
            for arg in &pred.arguments {
                for t in arg.extent.tokens() {
                    if std::mem::replace(&mut covered[t - 1], true) {
                        return Err(SerializeError::CellConflict {
                            sentence: si + 1,
                            anchor: pred.anchor,
                            token: t,
                        });
                    }
                }
                grid[arg.extent.start - 1][k].0 = format!("({}", arg.label);
                grid[arg.extent.end - 1][k].1 += 1;
            }
        }
        for (tok, cells) in sentence.tokens.iter().zip(grid) {
            words.push_str(&tok.form);
            words.push('\n');
            let verb = match tok.columns.first() {
                Some(v) => v.clone(),
                None if tok.is_predicate => tok
                    .sense
                    .as_ref()
                    .map(|s| s.lemma().to_string())
                    .unwrap_or_else(|| tok.form.clone()),
                None => "-".to_string(),
            };
            props.push_str(&verb);
            for (open, closes) in cells {
                props.push('\t');
                props.push_str(&open);
                props.push('*');
                props.push_str(&")".repeat(closes));
            }
            props.push('\n');
        }
        words.push('\n');
        props.push('\n');
    }
    Ok((words, props))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlignError {
    #[error("gold has {gold} sentences, system has {system}")]
    SentenceCountMismatch { gold: usize, system: usize },
    #[error("sentence {sentence}: tokens diverge at token {token} ({detail})")]
    TokenMismatch {
        sentence: usize,
        token: usize,
        detail: String,
    },
}

/// Gold and system predicates of one sentence, paired by anchor token.
#[derive(Debug, Clone)]
pub struct AlignedSentence<'a> {
    pub gold: &'a Sentence,
    pub system: &'a Sentence,
    /// `(gold predicate index, system predicate index)`.
    pub pairs: Vec<(usize, usize)>,
    pub missed: Vec<usize>,
    pub spurious: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct AlignedCorpus<'a> {
    pub sentences: Vec<AlignedSentence<'a>>,
    pub mode: Mode,
    pub senses_annotated: bool,
}

pub fn align<'a>(gold: &'a Corpus, system: &'a Corpus) -> Result<AlignedCorpus<'a>, AlignError> {
    if gold.sentences.len() != system.sentences.len() {
        return Err(AlignError::SentenceCountMismatch {
            gold: gold.sentences.len(),
            system: system.sentences.len(),
        });
    }
    let mut sentences = Vec::with_capacity(gold.sentences.len());
    for (si, (g, s)) in gold.sentences.iter().zip(&system.sentences).enumerate() {
        let diverge = g
            .tokens
            .iter()
            .zip(&s.tokens)
            .position(|(a, b)| a.form != b.form);
        if let Some(t) = diverge {
            return Err(AlignError::TokenMismatch {
                sentence: si + 1,
                token: t + 1,
                detail: format!("`{}` vs `{}`", g.tokens[t].form, s.tokens[t].form),
            });
        }
        if g.tokens.len() != s.tokens.len() {
            let t = g.tokens.len().min(s.tokens.len()) + 1;
            return Err(AlignError::TokenMismatch {
                sentence: si + 1,
                token: t,
                detail: format!("{} vs {} tokens", g.tokens.len(), s.tokens.len()),
            });
        }
        sentences.push(align_sentence(g, s));
    }
    Ok(AlignedCorpus {
        sentences,
        mode: gold.mode,
        senses_annotated: gold.senses_annotated,
    })
}

fn align_sentence<'a>(gold: &'a Sentence, system: &'a Sentence) -> AlignedSentence<'a> {
    let sys_by_anchor: BTreeMap<usize, usize> = system
        .predicates
        .iter()
        .enumerate()
        .map(|(i, p)| (p.anchor, i))
        .collect();
    let mut pairs = Vec::new();
    let mut missed = Vec::new();
    let mut used = vec![false; system.predicates.len()];
    for (gi, gp) in gold.predicates.iter().enumerate() {
        match sys_by_anchor.get(&gp.anchor) {
            Some(&si) => {
                pairs.push((gi, si));
                used[si] = true;
            }
            None => missed.push(gi),
        }
    }
    let spurious = used
        .iter()
        .enumerate()
        .filter(|(_, u)| !**u)
        .map(|(i, _)| i)
        .collect();
    AlignedSentence {
        gold,
        system,
        pairs,
        missed,
        spurious,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(id: usize, form: &str, pred: Option<&str>, apreds: &[&str]) -> String {
        let mut cols = vec![id.to_string(), form.to_string()];
        cols.extend(std::iter::repeat_n("_".to_string(), 10));
        cols.push(if pred.is_some() { "Y" } else { "_" }.to_string());
        cols.push(pred.unwrap_or("_").to_string());
        cols.extend(apreds.iter().map(|s| s.to_string()));
        cols.join("\t")
    }

    fn table1_gold() -> String {
        [
            "# text = Yesterday, John bought a car.".to_string(),
            row(1, "Yesterday", None, &["TMP"]),
            row(2, ",", None, &["_"]),
            row(3, "John", None, &["A0"]),
            row(4, "bought", Some("buy.01"), &["_"]),
            row(5, "a", None, &["_"]),
            row(6, "car", None, &["A1"]),
            row(7, ".", None, &["_"]),
        ]
        .join("\n")
            + "\n"
    }

    #[test]
    fn reads_table1_gold() {
        let parsed = parse_conll09(&table1_gold()).unwrap();
        assert!(parsed.warnings.is_empty());
        let c = parsed.corpus;
        assert_eq!(c.sentences.len(), 1);
        let s = &c.sentences[0];
        assert_eq!(s.tokens.len(), 7);
        assert_eq!(s.predicates.len(), 1);
        let p = &s.predicates[0];
        assert_eq!(p.anchor, 4);
        assert_eq!(p.sense, Some(SenseLabel::parse("buy.01").unwrap()));
        let args: Vec<(String, usize)> = p
            .arguments
            .iter()
            .map(|a| (a.label.to_string(), a.extent.start))
            .collect();
        assert_eq!(
            args,
            [("AM-TMP".into(), 1), ("A0".into(), 3), ("A1".into(), 6)]
        );
        assert_eq!(s.validate(), Ok(()));
    }

    #[test]
    fn sentence_without_predicates() {
        let text = format!("{}\n{}\n", row(1, "Hi", None, &[]), row(2, ".", None, &[]));
        let c = parse_conll09(&text).unwrap().corpus;
        assert_eq!(c.sentences.len(), 1);
        assert!(c.sentences[0].predicates.is_empty());
    }

    #[test]
    fn blank_line_runs_collapse() {
        let text = format!("\n\n{}\n\n\n\n{}\n\n", row(1, "a", None, &[]), row(1, "b", None, &[]));
        let c = parse_conll09(&text).unwrap().corpus;
        assert_eq!(c.sentences.len(), 2);
    }

    #[test]
    fn spaces_work_as_separators() {
        let text = table1_gold().replace('\t', "   ");
        let c = parse_conll09(&text).unwrap().corpus;
        assert_eq!(c.sentences[0].predicates[0].arguments.len(), 3);
    }

    #[test]
    fn column_errors_report_lines() {
        let mut lines: Vec<String> = table1_gold().lines().map(String::from).collect();
        // line 4 is token 3; drop its APRED cell
        lines[3] = row(3, "John", None, &[]);
        let err = parse_conll09(&lines.join("\n")).unwrap_err();
        assert_eq!(
            err,
            ParseError::ColumnCountMismatch {
                line: 4,
                expected: 15,
                found: 14
            }
        );

        let mut lines: Vec<String> = table1_gold().lines().map(String::from).collect();
        lines[6] = row(6, "car", None, &["A1", "_"]);
        let err = parse_conll09(&lines.join("\n")).unwrap_err();
        assert!(matches!(err, ParseError::DanglingApredColumn { line: 7, .. }));

        let short = "1\tHi\t_\t_\n";
        assert_eq!(parse_conll09(short).unwrap_err().line(), 1);

        let mut lines: Vec<String> = table1_gold().lines().map(String::from).collect();
        lines[2] = row(5, ",", None, &["_"]);
        assert!(matches!(
            parse_conll09(&lines.join("\n")).unwrap_err(),
            ParseError::BadTokenId { line: 3, .. }
        ));

        let mut lines: Vec<String> = table1_gold().lines().map(String::from).collect();
        lines[3] = row(3, "John", None, &["C-C-A0"]);
        assert!(matches!(
            parse_conll09(&lines.join("\n")).unwrap_err(),
            ParseError::InvalidLabel { line: 4, .. }
        ));
    }

    #[test]
    fn missing_sense_is_recoverable() {
        let text = table1_gold().replace("buy.01", "_");
        let parsed = parse_conll09(&text).unwrap();
        assert_eq!(
            parsed.warnings,
            [ParseWarning::MalformedSense {
                line: 5,
                value: "_".into()
            }]
        );
        let p = &parsed.corpus.sentences[0].predicates[0];
        assert_eq!(p.anchor, 4);
        assert!(p.sense.is_none());
    }

    #[test]
    fn conll09_round_trip_and_shape() {
        let c = parse_conll09(&table1_gold()).unwrap().corpus;
        let out = serialize_conll09(&c).unwrap();
        assert_eq!(parse_conll09(&out).unwrap().corpus, c);
        let rows: Vec<&str> = out.lines().filter(|l| !l.is_empty()).collect();
        assert_eq!(rows.len(), 7);
        assert!(rows.iter().all(|r| r.split('\t').count() == 15));

        assert_eq!(serialize_conll09(&Corpus::new(Mode::Head, true)).unwrap(), "");
        assert!(matches!(
            serialize_conll09(&Corpus::new(Mode::Span, false)),
            Err(SerializeError::ModeMismatch { .. })
        ));
    }

    const WORDS5: &str = "The\ncat\nsaw\na\ndog\n";

    #[test]
    fn reads_props_column() {
        let props = "-\t(A0*)\n-\t*\nsee\t(V*)\n-\t(A1*\n-\t*)\n";
        let c = parse_conll05(WORDS5, props).unwrap().corpus;
        assert_eq!(c.mode, Mode::Span);
        assert!(!c.senses_annotated);
        let p = &c.sentences[0].predicates[0];
        assert_eq!(p.anchor, 3);
        let args: Vec<(String, usize, usize)> = p
            .arguments
            .iter()
            .map(|a| (a.label.to_string(), a.extent.start, a.extent.end))
            .collect();
        assert_eq!(
            args,
            [
                ("A0".into(), 1, 1),
                ("V".into(), 3, 3),
                ("A1".into(), 4, 5)
            ]
        );
        let (w, pr) = serialize_conll05(&c).unwrap();
        assert_eq!(parse_conll05(&w, &pr).unwrap().corpus, c);
    }

    #[test]
    fn reads_continuation_and_conll04_closers() {
        let props = "-\t(A1*)\n-\t*\nsee\t(V*V)\n-\t(C-A1*\n-\t*C-A1)\n";
        let c = parse_conll05(WORDS5, props).unwrap().corpus;
        let labels: Vec<String> = c.sentences[0].predicates[0]
            .arguments
            .iter()
            .map(|a| a.label.to_string())
            .collect();
        assert_eq!(labels, ["A1", "V", "C-A1"]);
    }

    #[test]
    fn props_errors() {
        let unbalanced = "-\t*\n-\t*\nsee\t(V*)\n-\t(A1*\n-\t*\n";
        assert_eq!(
            parse_conll05(WORDS5, unbalanced).unwrap_err(),
            ParseError::UnbalancedBracket { line: 4, column: 1 }
        );
        let stray_close = "-\t*)\n-\t*\nsee\t(V*)\n-\t*\n-\t*\n";
        assert_eq!(
            parse_conll05(WORDS5, stray_close).unwrap_err(),
            ParseError::UnbalancedBracket { line: 1, column: 1 }
        );
        let overlap = "-\t(A0*\n-\t(A1*)\nsee\t(V*)\n-\t*\n-\t*)\n";
        assert_eq!(
            parse_conll05(WORDS5, overlap).unwrap_err(),
            ParseError::OverlappingSpan { line: 2, column: 1 }
        );
        let no_verb = "-\t(A0*)\n-\t*\nsee\t*\n-\t*\n-\t*\n";
        assert!(matches!(
            parse_conll05(WORDS5, no_verb).unwrap_err(),
            ParseError::AnchorMissing { column: 1, .. }
        ));
        let bad_cell = "-\t(A0*)\n-\tfoo\nsee\t(V*)\n-\t*\n-\t*\n";
        assert!(matches!(
            parse_conll05(WORDS5, bad_cell).unwrap_err(),
            ParseError::MalformedCell { line: 2, .. }
        ));
        let short = "-\t*\n-\t*\nsee\t(V*)\n-\t*\n";
        assert!(matches!(
            parse_conll05(WORDS5, short).unwrap_err(),
            ParseError::WordsPropsMismatch { .. }
        ));
    }

    #[test]
    fn sidecar_attaches_senses() {
        let props = "-\t(A0*)\n-\t*\nsee\t(V*)\n-\t(A1*\n-\t*)\n";
        let mut c = parse_conll05(WORDS5, props).unwrap().corpus;
        apply_sense_sidecar(&mut c, "1\t3\tsee.01\n").unwrap();
        assert!(c.senses_annotated);
        assert_eq!(
            c.sentences[0].predicates[0].sense,
            Some(SenseLabel::parse("see.01").unwrap())
        );
        assert_eq!(serialize_sense_sidecar(&c), "1\t3\tsee.01\n");
        let err = apply_sense_sidecar(&mut c, "1\t2\tsee.01\n").unwrap_err();
        assert!(matches!(err, ParseError::Sidecar { line: 1, .. }));
    }

    fn corpus_of(forms: &[&str], anchors: &[usize]) -> Corpus {
        let mut s = Sentence::default();
        for (i, f) in forms.iter().enumerate() {
            let mut t = Token::new(i + 1, *f);
            t.is_predicate = anchors.contains(&(i + 1));
            s.tokens.push(t);
        }
        s.predicates = anchors.iter().map(|&a| PredicateInstance::new(a, None)).collect();
        Corpus {
            sentences: vec![s],
            mode: Mode::Head,
            senses_annotated: true,
        }
    }

    #[test]
    fn align_by_anchor() {
        let gold = corpus_of(&["a", "b", "c"], &[2]);
        let same = corpus_of(&["a", "b", "c"], &[2]);
        let a = align(&gold, &same).unwrap();
        assert_eq!(a.sentences[0].pairs, [(0, 0)]);
        assert!(a.sentences[0].missed.is_empty() && a.sentences[0].spurious.is_empty());

        let none = corpus_of(&["a", "b", "c"], &[]);
        let a = align(&gold, &none).unwrap();
        assert_eq!(a.sentences[0].missed, [0]);

        let elsewhere = corpus_of(&["a", "b", "c"], &[3]);
        let a = align(&gold, &elsewhere).unwrap();
        assert_eq!(a.sentences[0].missed, [0]);
        assert_eq!(a.sentences[0].spurious, [0]);
        assert!(a.sentences[0].pairs.is_empty());
    }

    #[test]
    fn align_errors() {
        let gold = corpus_of(&["a", "b", "c"], &[]);
        let other = corpus_of(&["a", "x", "c"], &[]);
        assert!(matches!(
            align(&gold, &other).unwrap_err(),
            AlignError::TokenMismatch {
                sentence: 1,
                token: 2,
                ..
            }
        ));
        let shorter = corpus_of(&["a", "b"], &[]);
        assert!(matches!(
            align(&gold, &shorter).unwrap_err(),
            AlignError::TokenMismatch { token: 3, .. }
        ));
        let empty = Corpus::new(Mode::Head, true);
        assert_eq!(
            align(&gold, &empty).unwrap_err(),
            AlignError::SentenceCountMismatch { gold: 1, system: 0 }
        );
    }
}
