//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

mod common;

use std::collections::HashSet;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use chrono::{TimeZone, Utc};
use proptest::test_runner::{Config, TestRunner};

use common::*;
use nlml::grammar::{parse_statement, Voice};
use nlml::lexicon::{Number, Person, Tense, ValueSet};
use nlml::nldb::Store;
use nlml::nlml::{canonicalize, validate};
use nlml::nlom::{negate, transform_mood, Complement, Nominal};
use nlml::{
    build_model, classify, deserialize, render_text, serialize, Complexity, DbClass, GrammarError, Lexicon, Mood,
    NlmlDocument, NlomError, Tag, TokenStream,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&Lexicon) -> Outcome);
type Utterance = (&'static str, Mood, fn(&NlmlDocument) -> bool);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("golden markup for \"I come\"", golden_i_come),
        ("golden markup for the compound complex example", golden_compound_complex),
        ("dialog mood coverage", dialog_moods),
        ("mood/complexity/voice table coverage", table_coverage),
        ("max-matching on \"I am doing the job.\"", max_matching),
        ("penalty ordering", penalty_ordering),
        ("subject/verb agreement", agreement),
        ("serialization round trip", round_trip),
        ("transformation properties", transformations),
        ("record store", record_store),
        ("termination and determinism", determinism),
    ];
    let lex = Lexicon::demo();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| run(&lex)))
            .unwrap_or_else(|p| Err(panic_message(p.as_ref())));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    let _ = panic::take_hook();
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn panic_message(p: &(dyn std::any::Any + Send)) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panicked".into())
}

fn nlml_of(text: &str, lex: &Lexicon) -> String {
    serialize(&best(text, lex).document)
}

/// Canonical form of a raw reference listing after the given repairs.
fn repaired(raw: &str, repairs: &[(&str, &str)]) -> Result<String, String> {
    let mut s = raw.to_string();
    for (from, to) in repairs {
        ensure!(s.matches(from).count() == 1, "expected one {from:?} in the reference listing");
        s = s.replace(from, to);
    }
    deserialize(&s).map(|d| serialize(&d)).map_err(|e| e.to_string())
}

fn golden_i_come(lex: &Lexicon) -> Outcome {
    let expected = golden("i_come.nlml");
    let got = nlml_of("I come", lex);
    ensure!(got == expected, "parse output differs from fixture:\n  got {got}\n  want {expected}");
    let reference = repaired(&golden("i_come.raw.nlml"), &[(">se<", "><")])?;
    ensure!(reference == expected, "fixture differs from repaired reference listing:\n  {reference}");
    Ok("exact string match; only the stray \"se\" differs from the reference listing".into())
}

fn golden_compound_complex(lex: &Lexicon) -> Outcome {
    let text = "If it rains today, you will not go, and I will not come.";
    let expected = golden("if_it_rains.nlml");
    let got = nlml_of(text, lex);
    ensure!(got == expected, "parse output differs from fixture:\n  got {got}\n  want {expected}");
    let reference =
        repaired(&golden("if_it_rains.raw.nlml"), &[("</sub>, ", "</sub>"), ("<verb__word>", "<verb_word>")])?;
    ensure!(reference == expected, "fixture differs from repaired reference listing:\n  {reference}");

    let doc = best(text, lex).document;
    let m = build_model(&doc, lex).map_err(|e| e.to_string())?;
    ensure!(m.complexity == Complexity::CompoundComplex, "complexity {}", m.complexity);
    let sub = m.subordinate.as_ref().ok_or("no subordinate clause")?;
    ensure!(sub.subordinator == "if", "subordinator {}", sub.subordinator);
    let clause_vp = &sub.clause.parts[0].verb_phrases[0];
    ensure!(clause_vp.verb_words == ["rains"], "sub verb {:?}", clause_vp.verb_words);
    ensure!(clause_vp.tense == Tense::Present, "sub tense {:?}", clause_vp.tense);
    ensure!(
        clause_vp.agreement == Some((ValueSet::only(Number::Sing), ValueSet::only(Person::Third))),
        "sub agreement {:?}",
        clause_vp.agreement
    );
    let today = clause_vp.circumstances.iter().any(|c| {
        c.circum_type.as_deref() == Some("adv")
            && c.content.iter().any(|n| n.as_element().is_some_and(|e| e.child(Tag::Type).is_some_and(|t| t.text() == "time") && e.child(Tag::Word).is_some_and(|w| w.text() == "today")))
    });
    ensure!(today, "no time circumstance \"today\" in the sub clause");
    ensure!(m.parts.len() == 2, "{} complete sentences", m.parts.len());
    ensure!(doc.elements().filter(|e| e.tag == Tag::CompleteSentence).count() == 2, "complete_sentence count");
    for (part, kernel) in m.parts.iter().zip(["go", "come"]) {
        let vp = &part.verb_phrases[0];
        ensure!(vp.tense == Tense::Modal, "tense {:?}", vp.tense);
        ensure!(vp.verb_words == ["will not", kernel], "verb words {:?}", vp.verb_words);
        ensure!(vp.kernel_tense == Some(Tense::Infinitive), "kernel tense {:?}", vp.kernel_tense);
    }
    ensure!(m.connectors == ["and"], "connectors {:?}", m.connectors);
    ensure!(expected.contains("<word>you</word><numb>sing|plur</numb><pers>second</pers>"), "you affixes");
    ensure!(!expected.contains("secnd") && !expected.contains("NUMB"), "unrepaired values");
    Ok("exact string match and field-by-field model check".into())
}

fn dialog_moods(lex: &Lexicon) -> Outcome {
    let dialog: [Utterance; 11] = [
        ("I will buy a book tomorrow.", Mood::Statement, |_| true),
        ("Why?", Mood::Circumstances, |d| has_typed(d, Tag::Adv, "query")),
        ("Because I have got some money.", Mood::Subcircum, |_| true),
        ("Which book will you buy?", Mood::Question, |_| true),
        ("That one you have read.", Mood::Np, |d| d.all_elements().iter().any(|e| e.tag == Tag::RelativeClause)),
        ("What a pity!", Mood::WhatTerseExclamation, |_| true),
        ("What about this book?", Mood::About, |_| true),
        ("Terrible!", Mood::Adj, |_| true),
        ("What?", Mood::Np, |d| has_typed(d, Tag::Noun, "query")),
        ("How terrible that book is!", Mood::FullExclamation, |_| true),
        ("Please tell me why you say that!", Mood::Order, |_| true),
    ];
    let mut ok = 0;
    let mut wrong = Vec::new();
    for (text, mood, shape) in dialog {
        let r = best(text, lex);
        if r.mood() == Some(mood) && shape(&r.document) {
            ok += 1;
        } else {
            wrong.push(format!("{text:?} -> {:?}", r.mood()));
        }
    }
    ensure!(wrong.is_empty(), "{ok}/{} correct; wrong: {}", dialog.len(), wrong.join(", "));
    Ok(format!("{ok}/{} annotated utterances (the dialog has eleven)", dialog.len()))
}

fn has_typed(doc: &NlmlDocument, tag: Tag, ty: &str) -> bool {
    doc.all_elements().iter().any(|e| e.tag == tag && e.child(Tag::Type).is_some_and(|t| t.text() == ty))
}

const ACTIVE: bool = false;
const PASSIVE: bool = true;

fn table_coverage(lex: &Lexicon) -> Outcome {
    use Complexity::*;
    use Mood::*;
    let table: &[(&str, Mood, Complexity, bool)] = &[
        ("If it rains today, you can not go out, and I can not come.", Statement, CompoundComplex, ACTIVE),
        ("What will you do if it rains today?", Question, Complex, ACTIVE),
        ("Please do your homework if it rains today.", Order, Complex, ACTIVE),
        ("What a rainy day it is!", FullExclamation, Simple, ACTIVE),
        ("If it rains today, you will not go, and I will not come.", Statement, CompoundComplex, ACTIVE),
        ("If it rains today, please stay at home, listen to the radio and read the book!", Order, CompoundComplex, ACTIVE),
        ("Today you come, he goes, and I wait.", Statement, Compound, ACTIVE),
        ("It snows, but I still go out.", Statement, Compound, ACTIVE),
        ("Neither you come, nor do I go.", Statement, Compound, ACTIVE),
        ("What should I do, what can I do, and what must I do?", Question, Compound, ACTIVE),
        ("Please sit down, read the book and then write your paper!", Order, Compound, ACTIVE),
        ("Either live or die!", Order, Compound, ACTIVE),
        ("If you come, I will go.", Statement, Complex, ACTIVE),
        ("I lived whenever she lived.", Statement, Complex, ACTIVE),
        ("What would he do if it rains today?", Question, Complex, ACTIVE),
        ("Please phone me if you have time.", Order, Complex, ACTIVE),
        ("Both you and he come today.", Statement, Simple, ACTIVE),
        ("Neither he nor I come today.", Statement, Simple, ACTIVE),
        ("I don't understand what he is now saying.", Statement, Simple, ACTIVE),
        ("I give him a book written by the famous professor.", Statement, Simple, ACTIVE),
        ("I know the book you gave your girl friend yesterday.", Statement, Simple, ACTIVE),
        ("The man coming today is my best friend.", Statement, Simple, ACTIVE),
        ("The horse runs so fast that others can not catch up with it.", Statement, Simple, ACTIVE),
        ("I see the student do his job carefully.", Statement, Simple, ACTIVE),
        ("He has his car repaired.", Statement, Simple, ACTIVE),
        ("Can you understand what he is saying?", Question, Simple, ACTIVE),
        ("Who is coming to fetch the book?", Question, Simple, ACTIVE),
        ("Whom did you give the book written by the famous professor?", Question, Simple, ACTIVE),
        ("Go to listen to the radio!", Order, Simple, ACTIVE),
        ("What a stupid man he is!", FullExclamation, Simple, ACTIVE),
        ("How beautiful she is!", FullExclamation, Simple, ACTIVE),
        ("If it rains today, the desk should be moved into the room, and the window should be closed.", Statement, CompoundComplex, PASSIVE),
        ("Today the car should be repaired, the room should be cleaned, and the clothes should be washed.", Statement, Compound, PASSIVE),
        ("The car has been repaired, but the room has not been cleaned.", Statement, Compound, PASSIVE),
        ("Neither the car is repaired, nor is the room cleaned.", Statement, Compound, PASSIVE),
        ("What should be done, what can be done and what must be done?", Question, Compound, PASSIVE),
        ("If you come here, the room can be cleaned completely.", Statement, Complex, PASSIVE),
        ("What should be done by us if it rains today?", Question, Complex, PASSIVE),
        ("Both the car and the bicycle are repaired by him alone.", Statement, Simple, PASSIVE),
        ("Neither the car nor the bicycle was repaired by him.", Statement, Simple, PASSIVE),
        ("What he is now saying can't be understood by me.", Statement, Simple, PASSIVE),
        ("A book written by the famous professor is given him.", Statement, Simple, PASSIVE),
        ("The student was seen to do his job carefully.", Statement, Simple, PASSIVE),
        ("May the car be repaired by him?", Question, Simple, PASSIVE),
        ("Who was seen to do his job carefully?", Question, Simple, PASSIVE),
        ("How can the room be cleaned so completely?", Question, Simple, PASSIVE),
        ("What a good book has been lost by him!", FullExclamation, Simple, PASSIVE),
        ("How completely the room is cleaned!", FullExclamation, Simple, PASSIVE),
    ];
    let mut wrong = Vec::new();
    for &(text, mood, complexity, passive) in table {
        let doc = best(text, lex).document;
        let model = build_model(&doc, lex).map_err(|e| format!("{text:?}: {e}"))?;
        let voice_tags = main_clause_voice_tags(&doc);
        let ok = model.mood == mood
            && model.complexity == complexity
            && (model.voice == Voice::Passive) == passive
            && (voice_tags > 0) == passive;
        if !ok {
            wrong.push(format!(
                "{text:?} -> {} / {} / {:?} ({voice_tags} voice tags)",
                model.mood, model.complexity, model.voice
            ));
        }
    }
    ensure!(wrong.is_empty(), "{} of {} wrong: {}", wrong.len(), table.len(), wrong.join("; "));
    Ok(format!("{}/{} sentences", table.len(), table.len()))
}

/// `<voice>` tags of the verb phrases of the main clauses.
fn main_clause_voice_tags(doc: &NlmlDocument) -> usize {
    let mut clauses: Vec<&nlml::nlml::Element> = doc
        .elements()
        .filter(|e| matches!(e.tag, Tag::CompleteSentence | Tag::SimpleSentence))
        .collect();
    let top_vps: Vec<&nlml::nlml::Element> = doc.elements().filter(|e| e.tag == Tag::VerbPhrase).collect();
    let mut vps = top_vps;
    for c in clauses.drain(..) {
        vps.extend(c.elements().filter(|e| e.tag == Tag::VerbPhrase));
    }
    let mut n = 0;
    for vp in vps {
        n += vp.children_with(Tag::Voice).count();
        n += vp.children_with(Tag::VerbPhrasePart).map(|p| p.children_with(Tag::Voice).count()).sum::<usize>();
    }
    n
}

fn max_matching(lex: &Lexicon) -> Outcome {
    let results = parse("I am doing the job.", lex).map_err(|e| e.to_string())?;
    let top = &results[0];
    let tied = results
        .iter()
        .filter(|r| r.penalty == top.penalty && r.probability == top.probability)
        .count();
    ensure!(tied == 1, "{tied} analyses share the top rank");
    let m = build_model(&top.document, lex).map_err(|e| e.to_string())?;
    let vp = &m.parts[0].verb_phrases[0];
    ensure!(vp.tense == Tense::PresentProgressive, "top tense {:?}", vp.tense);
    ensure!(vp.direct_object().is_some(), "top analysis has no direct object");
    ensure!(vp.predicate().is_none(), "top analysis has a predicate");
    let phrase_moods = results.iter().filter(|r| r.mood().is_some_and(|m| !m.is_sentence())).count();
    ensure!(phrase_moods == 0, "{phrase_moods} phrase readings survived the cut");
    Ok(format!("one top analysis (present progressive + direct object) out of {}", results.len()))
}

fn penalty_ordering(lex: &Lexicon) -> Outcome {
    for (text, rule, penalty) in [("that book on the desk", 12, 10), ("Because I have got some money.", 16, 12)] {
        let results = parse(text, lex).map_err(|e| e.to_string())?;
        ensure!(results[0].rule == rule, "{text:?}: rule {} instead of {rule}", results[0].rule);
        ensure!(results[0].penalty == penalty, "{text:?}: penalty {} instead of {penalty}", results[0].penalty);
    }
    let mut lists = 0;
    for line in corpus() {
        let results = parse(&line, lex).map_err(|e| format!("{line:?}: {e}"))?;
        let sorted = results.windows(2).all(|w| {
            (w[0].penalty, -w[0].probability, w[0].rule) <= (w[1].penalty, -w[1].probability, w[1].rule)
        });
        ensure!(sorted, "{line:?}: results not ordered by penalty, probability, rule");
        if results.iter().any(|r| r.penalty == 0 && r.mood().is_some_and(Mood::is_sentence)) {
            ensure!(results[0].penalty == 0, "{line:?}: a penalized reading outranks a sentence reading");
        }
        lists += 1;
    }
    Ok(format!("penalties 10 and 12; ordering holds on {lists} corpus result lists"))
}

fn agreement(lex: &Lexicon) -> Outcome {
    let cases = [
        ("I comes", false),
        ("he come", false),
        ("both you and he comes", false),
        ("I come", true),
        ("he comes", true),
        ("both you and he come", true),
    ];
    let mut ok = 0;
    let mut wrong = Vec::new();
    for (text, parses) in cases {
        let tokens = TokenStream::tokenize(text).map_err(|e| e.to_string())?;
        let r = parse_statement(&tokens, lex);
        let good = matches!((&r, parses), (Ok(_), true) | (Err(GrammarError::NoParse { .. }), false));
        if good {
            ok += 1;
        } else {
            wrong.push(format!("{text:?} -> {:?}", r.map(|r| r.rule)));
        }
    }
    ensure!(wrong.is_empty(), "{ok}/6: {}", wrong.join(", "));
    Ok(format!("{ok}/6"))
}

fn fixture_documents() -> Vec<String> {
    let mut docs = vec![golden("i_come.nlml"), golden("if_it_rains.nlml")];
    docs.extend(fixture_lines("corpus.nlml"));
    docs
}

fn round_trip(_lex: &Lexicon) -> Outcome {
    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
    let generated = std::cell::Cell::new(0);
    runner
        .run(&arb_document(), |d| {
            generated.set(generated.get() + 1);
            assert!(validate(&d).is_empty(), "generator produced an invalid document");
            let back = deserialize(&serialize(&d)).expect("serialized markup parses");
            assert_eq!(back, canonicalize(&d));
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let fixtures = fixture_documents();
    let mut docs = HashSet::new();
    let mut strings = HashSet::new();
    for s in &fixtures {
        let d = deserialize(s).map_err(|e| format!("{s}: {e}"))?;
        ensure!(deserialize(&serialize(&d)).as_ref() == Ok(&canonicalize(&d)), "round trip failed for {s}");
        ensure!(&serialize(&d) == s, "fixture is not canonical: {s}");
        docs.insert(d);
        strings.insert(s.clone());
    }
    ensure!(docs.len() == strings.len(), "{} documents but {} strings", docs.len(), strings.len());
    Ok(format!(
        "{} generated documents and {} fixtures; {} distinct documents, {} distinct strings",
        generated.get(),
        fixtures.len(),
        docs.len(),
        strings.len()
    ))
}

fn transformations(lex: &Lexicon) -> Outcome {
    let mut negated = 0;
    let mut moved = 0;
    let mut skipped = Vec::new();
    for line in corpus() {
        let r = best(&line, lex);
        let Some(mood @ (Mood::Statement | Mood::Question)) = r.mood() else { continue };
        let m = build_model(&r.document, lex).map_err(|e| format!("{line:?}: {e}"))?;
        if m.complexity != Complexity::Simple {
            continue;
        }
        if mood == Mood::Statement {
            let n = negate(&m, lex).map_err(|e| format!("{line:?}: {e}"))?;
            ensure!(n != m, "{line:?}: negation changed nothing");
            let back = negate(&n, lex).map_err(|e| format!("{line:?}: {e}"))?;
            ensure!(back == m, "{line:?}: negate twice is not the identity ({})", render_text(&back));
            negated += 1;
        }
        let other = if mood == Mood::Statement { Mood::Question } else { Mood::Statement };
        match transform_mood(&m, lex, other) {
            Ok(t) => {
                let back = transform_mood(&t, lex, mood).map_err(|e| format!("{line:?}: {e}"))?;
                ensure!(back == m, "{line:?}: mood round trip gave {}", render_text(&back));
                moved += 1;
            }
            Err(e @ (NlomError::UnsupportedMood(_) | NlomError::UnsupportedComplexity(_))) => {
                ensure!(
                    is_wh(&m) || m.parts[0].verb_phrases.len() > 1,
                    "{line:?}: {e} on a yes/no sentence with one verb phrase"
                );
                skipped.push(line);
            }
            Err(e) => return Err(format!("{line:?}: {e}")),
        }
    }
    ensure!(negated >= 15, "only {negated} statements negated");
    ensure!(moved >= 15, "only {moved} mood round trips");

    let rows = do_support_rows();
    for row in &rows {
        let want = do_form(row.tense, row.number, row.person);
        ensure!(row.negated.split(' ').nth(1) == Some(want), "table row {:?} disagrees with oracle {want}", row.statement);
        ensure!(row.question.split(' ').next().map(str::to_lowercase).as_deref() == Some(want), "table row {:?} question", row.statement);
        let m = build_model(&best(&row.statement, lex).document, lex).map_err(|e| e.to_string())?;
        let n = render_text(&negate(&m, lex).map_err(|e| e.to_string())?);
        ensure!(n == row.negated, "{:?}: negated to {n:?}, table says {:?}", row.statement, row.negated);
        let q = render_text(&transform_mood(&m, lex, Mood::Question).map_err(|e| e.to_string())?);
        ensure!(q == row.question, "{:?}: question {q:?}, table says {:?}", row.statement, row.question);
    }
    let cells: HashSet<_> = rows.iter().map(|r| (r.tense, r.number, r.person)).collect();
    ensure!(cells.len() == 12, "do-support table covers {} of 12 tense/number/person cells", cells.len());
    Ok(format!(
        "{negated} negation involutions, {moved} mood round trips ({} wh-questions out of scope), {} do-support rows",
        skipped.len(),
        rows.len()
    ))
}

/// Independent do-support oracle.
fn do_form(tense: Tense, number: Number, person: Person) -> &'static str {
    match (tense, number, person) {
        (Tense::Past, _, _) => "did",
        (Tense::Present, Number::Sing, Person::Third) => "does",
        (Tense::Present, _, _) => "do",
        _ => unreachable!("do-support only for present and past"),
    }
}

fn is_wh(m: &nlml::SentenceModel) -> bool {
    let q = |n: &Nominal| serialize(&NlmlDocument::new(vec![n.to_node()])).contains("<type>query</type>");
    let part = &m.parts[0];
    part.subject.as_ref().is_some_and(q)
        || part.pre_circumstances.iter().any(|c| c.content.iter().any(|n| serialize(&NlmlDocument::new(vec![n.clone()])).contains("<type>query</type>")))
        || part.verb_phrases.iter().any(|vp| {
            vp.complements.iter().any(|c| match c {
                Complement::DirectObject(n) | Complement::IndirectObject(n) => q(n),
                _ => false,
            }) || vp.circumstances.iter().any(|c| {
                c.content.iter().any(|n| {
                    let s = serialize(&NlmlDocument::new(vec![n.clone()]));
                    s.contains("<type>query</type>") || s.contains("<type>exclamative</type>")
                })
            })
        })
}

fn record_store(lex: &Lexicon) -> Outcome {
    let i_come = deserialize(&golden("i_come.nlml")).map_err(|e| e.to_string())?;
    let rains = deserialize(&golden("if_it_rains.nlml")).map_err(|e| e.to_string())?;
    let which = best("Which book will you buy?", lex).document;
    ensure!(classify(&i_come).ok() == Some(DbClass::Fact), "\"I come\" is not a fact");
    ensure!(classify(&which).ok() == Some(DbClass::Question), "dialog question is not a question");
    ensure!(classify(&rains).ok() == Some(DbClass::Relation), "compound complex example is not a relation");

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let store = Store::open(dir.path().join("store.tsv")).map_err(|e| e.to_string())?;
    let at = Utc.with_ymd_and_hms(2024, 1, 1, 0, 0, 0).unwrap();
    let mut stored = Vec::new();
    let mut phrases = 0;
    for s in fixture_documents() {
        let doc = deserialize(&s).map_err(|e| e.to_string())?;
        let mood = doc.mood().and_then(|m| Mood::parse(&m));
        if !mood.is_some_and(Mood::is_sentence) {
            ensure!(classify(&doc).is_err(), "phrase document classified: {s}");
            phrases += 1;
            continue;
        }
        let key = store.put_at(&doc, at).map_err(|e| format!("{s}: {e}"))?;
        let model = build_model(&doc, lex).map_err(|e| format!("{s}: {e}"))?;
        stored.push((key, s, model));
    }
    for (key, s, _) in &stored {
        let got = store.get(*key).map_err(|e| e.to_string())?;
        ensure!(&got.nlml == s, "key {key}: stored markup differs");
    }
    let keys: Vec<u64> = stored.iter().map(|(k, _, _)| *k).collect();
    ensure!(keys.windows(2).all(|w| w[0] < w[1]), "keys do not increase");
    let rebuilt = store.rebuild(&keys, lex).map_err(|e| e.to_string())?;
    for ((key, _, before), after) in stored.iter().zip(&rebuilt) {
        ensure!(before == after, "key {key}: rebuilt model differs");
    }
    let mut seen = 0;
    for class in DbClass::ALL {
        seen += store.query(class).map_err(|e| e.to_string())?.len();
    }
    ensure!(seen == stored.len(), "queries cover {seen} of {} records", stored.len());
    let relations = store.query(DbClass::Relation).map_err(|e| e.to_string())?;
    ensure!(relations.iter().any(|r| r.nlml == golden("if_it_rains.nlml")), "compound complex example not stored as relation");
    Ok(format!("{} records round-tripped and rebuilt ({phrases} phrase fixtures are unclassifiable)", stored.len()))
}

fn run_corpus(lex: &Lexicon) -> Result<Vec<String>, String> {
    corpus()
        .iter()
        .map(|l| {
            let results = parse(l, lex).map_err(|e| format!("{l:?}: {e}"))?;
            Ok(results
                .iter()
                .map(|r| format!("{}\t{}\t{}\t{}", r.rule, r.penalty, r.probability, serialize(&r.document)))
                .collect::<Vec<_>>()
                .join("\n"))
        })
        .collect()
}

fn determinism(lex: &Lexicon) -> Outcome {
    let start = Instant::now();
    let first = run_corpus(lex)?;
    let elapsed = start.elapsed();
    let second = run_corpus(lex)?;
    ensure!(elapsed < Duration::from_secs(1), "corpus took {elapsed:?}");
    ensure!(first == second, "two runs differ");
    let best: Vec<String> = first.iter().map(|r| r.lines().next().unwrap().split('\t').nth(3).unwrap().to_string()).collect();
    ensure!(best == fixture_lines("corpus.nlml"), "best analyses differ from the committed snapshot");
    Ok(format!("{} expressions in {elapsed:.1?}; runs byte-identical", first.len()))
}
