#![allow(dead_code)]

use std::path::{Path, PathBuf};

use primesrl::{
    Corpus, Mode, PredicateInstance, RawArgument, RoleLabel, Sentence, SenseLabel, Token,
    TokenSpan,
};
use rand::rngs::StdRng;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

pub const LABELS: &[&str] = &[
    "A0", "A1", "A2", "AM-TMP", "AM-LOC", "C-A0", "C-A1", "R-A0", "R-A1", "R-AM-LOC",
];
pub const SENSES: &[&str] = &["go.01", "go.02", "run.01", "go_on.01"];

pub fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(rel)
}

pub fn read_fixture(rel: &str) -> String {
    std::fs::read_to_string(fixture(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn label(s: &str) -> RoleLabel {
    RoleLabel::parse(s).unwrap()
}

/// Free token indices of a sentence of `n` tokens, excluding `anchor`.
fn free_tokens(n: usize, anchor: usize) -> Vec<usize> {
    (1..=n).filter(|&t| t != anchor).collect()
}

/// Random non-overlapping extents that avoid the anchor.
fn random_extents(rng: &mut StdRng, n: usize, anchor: usize, mode: Mode, max: usize) -> Vec<TokenSpan> {
    let want = rng.random_range(0..=max);
    match mode {
        Mode::Head => {
            let mut free = free_tokens(n, anchor);
            free.shuffle(rng);
            free.truncate(want);
            free.sort_unstable();
            free.into_iter().map(TokenSpan::single).collect()
        }
        Mode::Span => {
            let mut out = Vec::new();
            let mut t = 1;
            while t <= n && out.len() < want {
                if t == anchor || !rng.random_bool(0.5) {
                    t += 1;
                    continue;
                }
                let mut end = t;
                if rng.random_bool(0.4) && end < n && end + 1 != anchor {
                    end += 1;
                }
                out.push(TokenSpan::new(t, end));
                t = end + 1;
            }
            out
        }
    }
}

/// One random sentence: at most 8 tokens, 2 predicates, 4 arguments each.
pub fn random_sentence(rng: &mut StdRng, mode: Mode) -> Sentence {
    let n = rng.random_range(2..=8);
    let n_preds = rng.random_range(0..=2usize.min(n));
    let mut anchors: Vec<usize> = (1..=n).collect();
    anchors.shuffle(rng);
    anchors.truncate(n_preds);
    anchors.sort_unstable();

    let mut tokens: Vec<Token> = (1..=n).map(|i| Token::new(i, format!("w{i}"))).collect();
    let mut predicates = Vec::new();
    for &anchor in &anchors {
        let sense = SenseLabel::parse(SENSES.choose(rng).unwrap()).unwrap();
        tokens[anchor - 1].is_predicate = true;
        tokens[anchor - 1].sense = Some(sense.clone());
        let mut p = PredicateInstance::new(anchor, Some(sense));
        for extent in random_extents(rng, n, anchor, mode, 4) {
            p.arguments
                .push(RawArgument::new(label(LABELS.choose(rng).unwrap()), extent));
        }
        predicates.push(p);
    }
    Sentence { tokens, predicates }
}

pub fn corpus_of(sentences: Vec<Sentence>, mode: Mode) -> Corpus {
    Corpus {
        sentences,
        mode,
        senses_annotated: true,
    }
}

pub fn random_corpus(rng: &mut StdRng, mode: Mode, n: usize) -> Corpus {
    corpus_of((0..n).map(|_| random_sentence(rng, mode)).collect(), mode)
}

fn relabel(rng: &mut StdRng, l: &RoleLabel) -> RoleLabel {
    match rng.random_range(0..3) {
        0 => l.with_continuation(!l.is_continuation()),
        1 => l.with_reference(!l.is_reference()),
        _ => label(LABELS.choose(rng).unwrap()),
    }
}

/// A noisy copy of `gold` as a system might produce it: senses swapped,
/// arguments relabeled, dropped, moved or added, predicates dropped or added.
pub fn perturb(rng: &mut StdRng, gold: &Sentence, mode: Mode) -> Sentence {
    let n = gold.tokens.len();
    let mut out = gold.clone();
    for p in &mut out.predicates {
        if rng.random_bool(0.3) {
            p.sense = Some(SenseLabel::parse(SENSES.choose(rng).unwrap()).unwrap());
        }
        let mut args = Vec::new();
        for a in &p.arguments {
            match rng.random_range(0..10) {
                0 => {}
                1 | 2 => args.push(RawArgument::new(relabel(rng, &a.label), a.extent)),
                _ => args.push(a.clone()),
            }
        }
        if mode == Mode::Head && rng.random_bool(0.3) {
            let used: Vec<usize> = args.iter().map(|a| a.extent.start).collect();
            let free: Vec<usize> = free_tokens(n, p.anchor)
                .into_iter()
                .filter(|t| !used.contains(t))
                .collect();
            if let Some(&t) = free.choose(rng) {
                args.push(RawArgument::head(label(LABELS.choose(rng).unwrap()), t));
            }
        }
        args.sort_by_key(|a| a.extent);
        p.arguments = args;
    }
    if !out.predicates.is_empty() && rng.random_bool(0.1) {
        let i = rng.random_range(0..out.predicates.len());
        out.predicates.remove(i);
    }
    let taken: Vec<usize> = out.predicates.iter().map(|p| p.anchor).collect();
    if out.predicates.len() < 2 && rng.random_bool(0.1) {
        let free: Vec<usize> = (1..=n).filter(|t| !taken.contains(t)).collect();
        if let Some(&anchor) = free.choose(rng) {
            let sense = SenseLabel::parse(SENSES.choose(rng).unwrap()).unwrap();
            let mut p = PredicateInstance::new(anchor, Some(sense));
            for extent in random_extents(rng, n, anchor, mode, 2) {
                p.arguments
                    .push(RawArgument::new(label(LABELS.choose(rng).unwrap()), extent));
            }
            out.predicates.push(p);
            out.predicates.sort_by_key(|p| p.anchor);
        }
    }
    for t in &mut out.tokens {
        t.is_predicate = false;
        t.sense = None;
    }
    for p in &out.predicates {
        out.tokens[p.anchor - 1].is_predicate = true;
        out.tokens[p.anchor - 1].sense = p.sense.clone();
    }
    out
}
