mod common;

use std::collections::HashSet;

use chrono::{TimeZone, Utc};
use proptest::prelude::*;

use common::*;
use nlml::lexicon::{unify, AffixValue, Case, Grade, Number, Person, Tense, ValueSet};
use nlml::nldb::Store;
use nlml::nlml::{canonicalize, validate, Element};
use nlml::nlom::{negate, transform_mood, Nominal};
use nlml::{
    build_model, classify, deserialize, serialize, Complexity, DbClass, Lexicon, Mood, NlmlDocument, ParseResult,
    Tag, TokenStream,
};

fn value_set<D: nlml::lexicon::Dimension>() -> impl Strategy<Value = ValueSet<D>> {
    proptest::sample::subsequence(D::ALL.to_vec(), 0..=D::ALL.len()).prop_map(ValueSet::from_values)
}

fn affix_value() -> impl Strategy<Value = AffixValue> {
    (value_set::<Number>(), value_set::<Person>(), value_set::<Case>(), value_set::<Tense>(), value_set::<Grade>())
        .prop_map(|(n, p, c, t, g)| {
            AffixValue::unconstrained().with_number(n).with_person(p).with_case(c).with_tense(t).with_grade(g)
        })
}

const SUBJECTS: &[&str] = &[
    "I", "you", "he", "she", "it", "we", "they", "the man", "the students", "both you and he", "my friend",
];
const VERBS: &[&str] = &[
    "come", "comes", "came", "go", "goes", "went", "sleep", "sleeps", "slept", "will come", "can go",
    "is coming", "are going", "am coming", "has come", "have gone", "do not come", "does not go",
    "did not sleep", "will not come", "don't go", "doesn't come", "often come", "always sleeps",
];
const TAILS: &[&str] = &["", " today", " tomorrow", " at home", " very much", " in the morning"];
const ENDS: &[&str] = &["", ".", "?", "!"];

/// Short sentences from a fixed vocabulary, agreeing or not.
fn template_sentence() -> impl Strategy<Value = String> {
    (
        proptest::sample::select(SUBJECTS),
        proptest::sample::select(VERBS),
        proptest::sample::select(TAILS),
        proptest::sample::select(ENDS),
    )
        .prop_map(|(s, v, t, e)| format!("{s} {v}{t}{e}"))
}

/// Arbitrary word salad over the demo vocabulary, up to 60 tokens.
fn word_salad() -> impl Strategy<Value = Vec<String>> {
    let lex = Lexicon::demo();
    let mut words: Vec<String> =
        lex.entries().iter().filter(|e| !e.surface.contains(' ')).map(|e| e.surface.clone()).collect();
    words.extend([",", ".", "?", "!"].map(String::from));
    words.sort();
    words.dedup();
    proptest::collection::vec(proptest::sample::select(words), 1..=60)
}

fn sorted(results: &[ParseResult]) -> bool {
    results.windows(2).all(|w| {
        (w[0].penalty, -w[0].probability, w[0].rule) <= (w[1].penalty, -w[1].probability, w[1].rule)
    })
}

fn agreement_holds(doc: &NlmlDocument) -> bool {
    let mut pairs: Vec<(Option<&Element>, Option<&Element>)> = doc
        .all_elements()
        .into_iter()
        .map(|e| (e.child(Tag::Subject), e.child(Tag::VerbPhrase)))
        .collect();
    pairs.push((doc.child(Tag::Subject), doc.child(Tag::VerbPhrase)));
    pairs.into_iter().all(|pair| match pair {
        (Some(s), Some(vp)) => {
            let Some(noun) = s.child(Tag::Noun) else { return true };
            let vp = vp.child(Tag::VerbPhrasePart).unwrap_or(vp);
            let meets = |tag: Tag| -> bool {
                match (noun.child(tag), vp.child(tag)) {
                    (Some(a), Some(b)) if tag == Tag::Numb => {
                        let (a, b) = (ValueSet::<Number>::parse(&a.text()), ValueSet::<Number>::parse(&b.text()));
                        a.zip(b).is_some_and(|(a, b)| !a.intersect(b).is_empty())
                    }
                    (Some(a), Some(b)) => {
                        let (a, b) = (ValueSet::<Person>::parse(&a.text()), ValueSet::<Person>::parse(&b.text()));
                        a.zip(b).is_some_and(|(a, b)| !a.intersect(b).is_empty())
                    }
                    _ => true,
                }
            };
            meets(Tag::Numb) && meets(Tag::Pers)
        }
        _ => true,
    })
}

/// Grammar-level invariants that every parse must satisfy.
fn check_results(text: &str, results: &[ParseResult]) -> Result<(), TestCaseError> {
    prop_assert!(!results.is_empty() && results.len() <= 8, "{text:?}: {} results", results.len());
    prop_assert!(sorted(results), "{text:?}: unsorted results");
    let has_sentence = results.iter().any(|r| r.mood().is_some_and(|m| m.is_sentence() && m != Mood::Subcircum));
    if has_sentence {
        prop_assert!(
            results.iter().all(|r| r.mood().is_some_and(Mood::is_sentence)),
            "{text:?}: phrase reading next to a sentence reading"
        );
    }
    for r in results {
        let v = validate(&r.document);
        prop_assert!(v.is_empty(), "{text:?}: {}", v[0]);
        prop_assert!(agreement_holds(&r.document), "{text:?}: agreement broken in {}", serialize(&r.document));
        let complexity = r.document.child(Tag::Complexity).and_then(|c| Complexity::parse(&c.text()));
        let clauses = r
            .document
            .elements()
            .filter(|e| matches!(e.tag, Tag::CompleteSentence | Tag::SimpleSentence))
            .count();
        let connectors = r.document.elements().filter(|e| e.tag == Tag::SentenceConnector).count();
        let subordinators: Vec<String> =
            r.document.elements().filter(|e| e.tag == Tag::Subordinator).map(Element::text).collect();
        if matches!(complexity, Some(Complexity::Compound | Complexity::CompoundComplex)) {
            prop_assert!(clauses >= 2 && connectors >= 1, "{text:?}: compound without parts");
        }
        if matches!(complexity, Some(Complexity::Complex | Complexity::CompoundComplex)) {
            prop_assert_eq!(subordinators.len(), 1, "{:?}: subordinators", text);
            let s = &subordinators[0];
            if s != "ever" && s != "whether or not" {
                prop_assert!(text.to_lowercase().contains(s.as_str()), "{text:?}: subordinator {s} not in input");
            }
        }
    }
    Ok(())
}

proptest! {
    #[test]
    fn unify_is_commutative(a in affix_value(), b in affix_value()) {
        prop_assert_eq!(unify(a, b), unify(b, a));
    }

    #[test]
    fn unify_is_associative(a in affix_value(), b in affix_value(), c in affix_value()) {
        let left = unify(a, b).and_then(|ab| unify(ab, c));
        let right = unify(b, c).and_then(|bc| unify(a, bc));
        prop_assert_eq!(left.is_ok(), right.is_ok());
        if let (Ok(l), Ok(r)) = (left, right) {
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn unify_is_idempotent(a in affix_value()) {
        let a = unify(a, AffixValue::unconstrained());
        if let Ok(a) = a {
            prop_assert_eq!(unify(a, a), Ok(a));
        }
    }

    #[test]
    fn round_trip_equals_canonical(d in arb_document()) {
        prop_assert_eq!(deserialize(&serialize(&d)).unwrap(), canonicalize(&d));
    }

    #[test]
    fn canonicalize_is_idempotent(d in arb_document()) {
        let once = canonicalize(&d);
        prop_assert_eq!(canonicalize(&once), once.clone());
    }

    #[test]
    fn serialization_is_injective(a in arb_document(), b in arb_document()) {
        let (a, b) = (canonicalize(&a), canonicalize(&b));
        prop_assert_eq!(a == b, serialize(&a) == serialize(&b));
    }

    #[test]
    fn template_sentences_satisfy_invariants(text in template_sentence()) {
        let lex = Lexicon::demo();
        if let Ok(results) = parse(&text, &lex) {
            check_results(&text, &results)?;
            prop_assert_eq!(&parse(&text, &lex).unwrap(), &results, "nondeterministic");
        }
    }

    #[test]
    fn parser_terminates_on_word_salad(words in word_salad()) {
        let lex = Lexicon::demo();
        let tokens = TokenStream::from_words(&words).unwrap();
        let text = words.join(" ");
        if let Ok(results) = nlml::classify_expression(&tokens, &lex) {
            check_results(&text, &results)?;
        }
    }

    #[test]
    fn negation_preserves_the_rest(text in template_sentence()) {
        let lex = Lexicon::demo();
        let Ok(results) = parse(&text, &lex) else { return Ok(()) };
        let Ok(m) = build_model(&results[0].document, &lex) else { return Ok(()) };
        if m.mood != Mood::Statement {
            return Ok(());
        }
        let n = negate(&m, &lex).unwrap();
        prop_assert_eq!(&negate(&n, &lex).unwrap(), &m);
        for (a, b) in m.parts.iter().zip(&n.parts) {
            prop_assert_eq!(&a.subject, &b.subject);
            prop_assert_eq!(&a.pre_circumstances, &b.pre_circumstances);
            for (x, y) in a.verb_phrases.iter().zip(&b.verb_phrases) {
                prop_assert_eq!(x.tense, y.tense);
                prop_assert_eq!(&x.circumstances, &y.circumstances);
                prop_assert_eq!(x.negated, !y.negated);
            }
        }
    }

    #[test]
    fn mood_change_keeps_the_words(text in template_sentence()) {
        let lex = Lexicon::demo();
        let Ok(results) = parse(&text, &lex) else { return Ok(()) };
        let Ok(m) = build_model(&results[0].document, &lex) else { return Ok(()) };
        let target = match m.mood {
            Mood::Statement => Mood::Question,
            Mood::Question => Mood::Statement,
            _ => return Ok(()),
        };
        let Ok(t) = transform_mood(&m, &lex, target) else { return Ok(()) };
        prop_assert_eq!(&transform_mood(&t, &lex, m.mood).unwrap(), &m);
        prop_assert_eq!(&transform_mood(&t, &lex, target).unwrap(), &t);
        let bag = |m: &nlml::SentenceModel| -> Vec<String> {
            let mut w: Vec<String> = nlml::render_text(m)
                .split(' ')
                .map(str::to_lowercase)
                .filter(|w| !matches!(w.as_str(), "." | "?" | "!" | "do" | "does" | "did"))
                .collect();
            w.sort();
            w
        };
        let (before, after) = (bag(&m), bag(&t));
        // Only the finite form of the kernel may change, e.g. comes -> come.
        let differing = before.iter().filter(|w| !after.contains(w)).count();
        prop_assert!(differing <= 1, "{:?} vs {:?}", before, after);
        prop_assert_eq!(before.len(), after.len());
    }
}

#[test]
fn every_example_token_is_in_the_lexicon() {
    let lex = Lexicon::demo();
    let mut missing = HashSet::new();
    for line in corpus() {
        for t in TokenStream::tokenize(&line).unwrap().tokens() {
            if t.is_punct() {
                continue;
            }
            if lex.lookup(&t.text).is_empty() && lex.phrases_starting_with(&t.text).next().is_none() {
                missing.insert(t.text.clone());
            }
        }
    }
    assert!(missing.is_empty(), "not in the lexicon: {missing:?}");
}

#[test]
fn corpus_parses_satisfy_invariants() {
    let lex = Lexicon::demo();
    for line in corpus() {
        let results = parse(&line, &lex).unwrap_or_else(|e| panic!("{line:?}: {e}"));
        check_results(&line, &results).unwrap();
    }
}

#[test]
fn classification_depends_on_mood_complexity_and_subordinator() {
    let lex = Lexicon::demo();
    for line in corpus() {
        let doc = best(&line, &lex).document;
        let Ok(class) = classify(&doc) else { continue };
        let reparsed = deserialize(&serialize(&doc)).unwrap();
        assert_eq!(classify(&reparsed).unwrap(), class);
        let mood = Mood::parse(&doc.mood().unwrap()).unwrap();
        let complexity = doc.child(Tag::Complexity).and_then(|c| Complexity::parse(&c.text()));
        let sub = doc.child(Tag::Subordinator).is_some();
        let want = match (mood, complexity) {
            (Mood::Question, _) => DbClass::Question,
            (Mood::Subcircum, _) => DbClass::Relation,
            (_, Some(Complexity::Complex | Complexity::CompoundComplex)) if sub => DbClass::Relation,
            _ => DbClass::Fact,
        };
        assert_eq!(class, want, "{line:?}");
    }
}

#[test]
fn store_keys_increase_and_queries_partition() {
    let lex = Lexicon::demo();
    let dir = tempfile::tempdir().unwrap();
    let store = Store::open(dir.path().join("s.tsv")).unwrap();
    let at = Utc.with_ymd_and_hms(2024, 3, 1, 12, 0, 0).unwrap();
    let mut keys = Vec::new();
    for line in corpus() {
        let doc = best(&line, &lex).document;
        if let Ok(key) = store.put_at(&doc, at) {
            let got = store.get(key).unwrap();
            let back = deserialize(&got.nlml).unwrap();
            assert_eq!(build_model(&back, &lex).unwrap(), build_model(&doc, &lex).unwrap(), "{line:?}");
            keys.push(key);
        }
    }
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    let mut seen = HashSet::new();
    for class in DbClass::ALL {
        for r in store.query(class).unwrap() {
            assert_eq!(r.class, class);
            assert!(seen.insert(r.key), "key {} in two classes", r.key);
        }
    }
    assert_eq!(seen.len(), keys.len());
}

#[test]
fn concurrent_writers_get_distinct_keys() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.tsv");
    let doc = deserialize(&golden("i_come.nlml")).unwrap();
    std::thread::scope(|s| {
        for _ in 0..4 {
            s.spawn(|| {
                let store = Store::open(&path).unwrap();
                for _ in 0..10 {
                    store.put(&doc).unwrap();
                }
            });
        }
    });
    let keys: Vec<u64> = Store::open(&path).unwrap().records().unwrap().iter().map(|r| r.key).collect();
    assert_eq!(keys, (1..=40).collect::<Vec<_>>());
}

#[test]
fn subjects_answer_by_part_index() {
    let lex = Lexicon::demo();
    let m = build_model(&best("Today you come, he goes, and I wait.", &lex).document, &lex).unwrap();
    let subjects: Vec<String> = (0..3)
        .map(|i| nlml::answer(&m, nlml::Query::Subject, i).unwrap().unwrap())
        .collect();
    assert_eq!(subjects, ["you", "he", "I"]);
    assert!(matches!(m.parts[0].subject, Some(Nominal::Phrase(_))));
    assert!(nlml::answer(&m, nlml::Query::Subject, 3).is_err());
}
