#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use nlml::lexicon::{Case, Dimension, Grade, Number, Person, Tense, ValueSet};
use nlml::nlml::NlmlNode;
use nlml::{classify_expression, Complexity, GrammarError, Lexicon, Mood, NlmlDocument, ParseResult, Tag, TokenStream};
use proptest::prelude::*;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Non-comment, non-blank lines of a fixture file.
pub fn fixture_lines(name: &str) -> Vec<String> {
    fs::read_to_string(fixture_path(name))
        .unwrap_or_else(|e| panic!("{name}: {e}"))
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

/// A single-document fixture.
pub fn golden(name: &str) -> String {
    let lines = fixture_lines(name);
    assert_eq!(lines.len(), 1, "{name} should hold one document");
    lines.into_iter().next().unwrap()
}

pub fn corpus() -> Vec<String> {
    fixture_lines("corpus.txt")
}

pub fn parse(text: &str, lex: &Lexicon) -> Result<Vec<ParseResult>, GrammarError> {
    classify_expression(&TokenStream::tokenize(text)?, lex)
}

pub fn best(text: &str, lex: &Lexicon) -> ParseResult {
    parse(text, lex).unwrap_or_else(|e| panic!("{text}: {e}")).remove(0)
}

#[derive(Debug, Clone)]
pub struct DoSupportRow {
    pub tense: Tense,
    pub number: Number,
    pub person: Person,
    pub statement: String,
    pub negated: String,
    pub question: String,
}

pub fn do_support_rows() -> Vec<DoSupportRow> {
    fixture_lines("do_support.tsv")
        .iter()
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            assert_eq!(f.len(), 6, "bad row {l:?}");
            DoSupportRow {
                tense: Tense::parse(f[0]).unwrap(),
                number: Number::parse(f[1]).unwrap(),
                person: Person::parse(f[2]).unwrap(),
                statement: f[3].into(),
                negated: f[4].into(),
                question: f[5].into(),
            }
        })
        .collect()
}

fn pick(values: Vec<String>) -> BoxedStrategy<String> {
    proptest::sample::select(values).boxed()
}

fn names<D: Dimension>() -> Vec<String> {
    D::ALL.iter().map(|d| d.as_str().to_string()).collect()
}

fn sets<D: Dimension>() -> BoxedStrategy<String> {
    proptest::sample::subsequence(D::ALL.to_vec(), 1..=D::ALL.len())
        .prop_map(|vs| ValueSet::<D>::from_values(vs).to_string())
        .boxed()
}

/// Words with random surrounding and internal whitespace.
fn loose_words() -> BoxedStrategy<String> {
    proptest::collection::vec(("[a-z]{1,7}", "[ \t]{1,3}"), 1..4)
        .prop_flat_map(|ws| {
            let body: String = ws.iter().enumerate().fold(String::new(), |mut s, (i, (w, sp))| {
                if i > 0 {
                    s.push_str(sp);
                }
                s.push_str(w);
                s
            });
            ("[ ]{0,2}", "[ ]{0,2}").prop_map(move |(a, b)| format!("{a}{body}{b}"))
        })
        .boxed()
}

fn leaf_value(tag: Tag) -> BoxedStrategy<String> {
    match tag {
        Tag::Mood => pick(Mood::ALL.iter().map(|m| m.as_str().to_string()).collect()),
        Tag::Complexity => pick(Complexity::ALL.iter().map(|c| c.as_str().to_string()).collect()),
        Tag::Tense | Tag::KernelTense => pick(names::<Tense>()),
        Tag::Grade => pick(names::<Grade>()),
        Tag::Numb => sets::<Number>(),
        Tag::Pers => sets::<Person>(),
        Tag::Case => sets::<Case>(),
        Tag::PredicateType => pick(["np", "adj", "prep", "clause"].map(String::from).to_vec()),
        Tag::Voice => pick(["active", "passive"].map(String::from).to_vec()),
        _ => loose_words(),
    }
}

fn leaf_tags() -> Vec<Tag> {
    Tag::ALL.iter().copied().filter(|t| t.is_leaf() && *t != Tag::Mood).collect()
}

fn branch_tags() -> Vec<Tag> {
    Tag::ALL.iter().copied().filter(|t| !t.is_leaf()).collect()
}

fn leaf_node() -> BoxedStrategy<NlmlNode> {
    proptest::sample::select(leaf_tags())
        .prop_flat_map(|t| leaf_value(t).prop_map(move |v| NlmlNode::el(t, vec![NlmlNode::Text(v)])))
        .boxed()
}

fn node() -> BoxedStrategy<NlmlNode> {
    leaf_node()
        .prop_recursive(4, 48, 5, |inner| {
            (proptest::sample::select(branch_tags()), proptest::collection::vec(inner, 0..5))
                .prop_map(|(t, kids)| NlmlNode::el(t, kids))
        })
        .boxed()
}

/// Documents that pass `validate`: a mood first, then arbitrary nested
/// elements with values from the closed sets. Text carries loose whitespace
/// so canonicalization has work to do.
pub fn arb_document() -> BoxedStrategy<NlmlDocument> {
    (leaf_value(Tag::Mood), proptest::collection::vec(node(), 0..6))
        .prop_map(|(mood, rest)| {
            let mut nodes = vec![NlmlNode::el(Tag::Mood, vec![NlmlNode::Text(mood)])];
            nodes.extend(rest);
            NlmlDocument::new(nodes)
        })
        .boxed()
}
