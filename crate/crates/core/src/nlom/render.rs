//! Surface text from a model.

use super::transform::has_query;
use super::{Nominal, SentenceModel};
use crate::grammar::Mood;
use crate::nlml::{Element, NlmlNode, Tag};

/// Regenerates the sentence: words in model order separated by single
/// spaces, punctuation as separate tokens, first letter capitalized.
pub fn render_text(model: &SentenceModel) -> String {
    let mut out = Vec::new();
    let doc = model.to_document();
    let nodes: Vec<&Element> = doc.elements().skip(1).collect();
    match model.mood {
        Mood::Subcircum => {
            let (sub, rest) = nodes.split_first().expect("subordinator");
            out.push(sub.text());
            clause(rest, model.mood, false, &mut out);
        }
        _ => sentence(&nodes[1..], model.mood, &mut out),
    }
    out.push(
        match model.mood {
            Mood::Question => "?",
            Mood::Order | Mood::FullExclamation => "!",
            _ => ".",
        }
        .to_string(),
    );
    let mut text = out.join(" ");
    if let Some(c) = text.chars().next() {
        text.replace_range(..c.len_utf8(), &c.to_uppercase().to_string());
    }
    text
}

/// Surface words of a noun phrase or clause.
pub(crate) fn nominal_text(n: &Nominal) -> String {
    let mut out = Vec::new();
    words(&n.to_node(), &mut out);
    out.join(" ")
}

fn sentence(nodes: &[&Element], mood: Mood, out: &mut Vec<String>) {
    let mut parts: Vec<&Element> = Vec::new();
    let mut connectors: Vec<String> = Vec::new();
    let mut main: Vec<&Element> = Vec::new();
    let mut sub: Option<(String, &Element, bool)> = None;
    let mut i = 0;
    while i < nodes.len() {
        let e = nodes[i];
        match e.tag {
            Tag::Subordinator => {
                let leading = main.is_empty() && parts.is_empty();
                if let Some(s) = nodes.get(i + 1) {
                    sub = Some((e.text(), s, leading));
                }
                i += 1;
            }
            Tag::SimpleSentence | Tag::CompleteSentence => parts.push(e),
            Tag::SentenceConnector => connectors.push(e.text()),
            _ => main.push(e),
        }
        i += 1;
    }
    let sub_words = |out: &mut Vec<String>, s: &(String, &Element, bool)| {
        out.push(s.0.clone());
        let inner: Vec<&Element> = s.1.elements().collect();
        clause(&inner, Mood::Statement, false, out);
    };
    if let Some(s) = sub.as_ref().filter(|s| s.2) {
        sub_words(out, s);
        out.push(",".into());
    }
    if parts.is_empty() {
        clause(&main, mood, false, out);
    } else {
        let paired = connectors.len() == parts.len() && matches!(connectors[0].as_str(), "neither" | "either");
        // `neither S, nor S` inverts the second clause.
        let nor = paired && connectors[0] == "neither";
        let mut conns = connectors.iter();
        if paired {
            out.push(conns.next().expect("paired connector").clone());
        }
        for (i, p) in parts.iter().enumerate() {
            if i > 0 {
                out.push(",".into());
                match conns.next().map(String::as_str) {
                    Some(",") | None => {}
                    Some(w) => out.push(w.into()),
                }
            }
            let inner: Vec<&Element> = p.elements().collect();
            clause(&inner, mood, nor && i > 0, out);
        }
    }
    if let Some(s) = sub.as_ref().filter(|s| !s.2) {
        sub_words(out, s);
    }
}

/// One simple sentence with question inversion and fronting of query or
/// exclamative complements.
fn clause(nodes: &[&Element], mood: Mood, inverted: bool, out: &mut Vec<String>) {
    let subject = nodes.iter().find(|e| e.tag == Tag::Subject);
    let vp = nodes.iter().find(|e| e.tag == Tag::VerbPhrase);
    let fronted = match (mood, vp) {
        (Mood::Question | Mood::FullExclamation, Some(vp)) => fronted_element(vp),
        _ => None,
    };
    let invert = inverted || (mood == Mood::Question && subject.is_some_and(|s| !s.children.iter().any(has_query)));
    for e in nodes.iter().filter(|e| e.tag == Tag::Circum) {
        words(&NlmlNode::Element((*e).clone()), out);
    }
    if let Some(f) = fronted {
        words_of(f, out);
    }
    let mut vp_words = Vec::new();
    if let Some(vp) = vp {
        verb_phrase(vp, fronted, &mut vp_words);
    }
    let mut not = false;
    if invert && !vp_words.is_empty() {
        let aux = vp_words.remove(0);
        match aux.strip_suffix(" not") {
            Some(a) => {
                out.push(a.to_string());
                not = true;
            }
            None => out.push(aux),
        }
    }
    if let Some(s) = subject {
        words_of(s, out);
    }
    if not {
        out.push("not".into());
    }
    out.extend(vp_words);
}

/// The complement or circumstance of a verb phrase that carries the query or
/// exclamative word.
fn fronted_element(vp: &Element) -> Option<&Element> {
    let phrase = vp.child(Tag::VerbPhrasePart).unwrap_or(vp);
    phrase.elements().find(|c| {
        matches!(c.tag, Tag::DirectObject | Tag::IndirectObject | Tag::Predicate | Tag::Circum)
            && c.children.iter().any(has_query)
    })
}

fn verb_phrase(vp: &Element, skip: Option<&Element>, out: &mut Vec<String>) {
    if vp.child(Tag::VerbPhrasePart).is_none() {
        return verb_group(vp, skip, out);
    }
    for c in vp.elements() {
        match c.tag {
            Tag::VerbPhrasePart => verb_group(c, skip, out),
            Tag::VerbPhraseConnector => out.push(c.text()),
            _ => {}
        }
    }
}

fn verb_group(vp: &Element, skip: Option<&Element>, out: &mut Vec<String>) {
    let kids: Vec<&Element> = vp.elements().collect();
    let words: Vec<usize> = (0..kids.len()).filter(|&i| kids[i].tag == Tag::VerbWord).collect();
    let Some(&first) = words.first() else { return };
    let mid = kids
        .get(first + 1)
        .filter(|e| e.tag == Tag::Circum)
        .map(|_| first + 1)
        .or_else(|| {
            (words.len() == 1)
                .then(|| (first + 1..kids.len()).find(|&i| kids[i].tag == Tag::Circum))
                .flatten()
        });
    let lexical = words.len() == 1 && vp.child(Tag::VerbType).is_some_and(|t| t.text() != "be");
    let mut mid_words = Vec::new();
    if let Some(m) = mid {
        words_of(kids[m], &mut mid_words);
    }
    if lexical {
        out.append(&mut mid_words);
    }
    for (n, &i) in words.iter().enumerate() {
        out.push(kids[i].text());
        if n == 0 {
            out.append(&mut mid_words);
        }
    }
    for (i, c) in kids.iter().enumerate() {
        if Some(i) == mid || c.tag == Tag::VerbWord || skip.is_some_and(|s| std::ptr::eq(s, *c)) {
            continue;
        }
        words_of(c, out);
    }
}

fn words_of(e: &Element, out: &mut Vec<String>) {
    for c in &e.children {
        words(c, out);
    }
}

/// Surface words of any node, in document order.
fn words(n: &NlmlNode, out: &mut Vec<String>) {
    let Some(e) = n.as_element() else { return };
    match e.tag {
        Tag::Mood
        | Tag::Complexity
        | Tag::Voice
        | Tag::VerbType
        | Tag::Tense
        | Tag::Numb
        | Tag::Pers
        | Tag::Case
        | Tag::KernelTense
        | Tag::CircumType
        | Tag::Type
        | Tag::Grade
        | Tag::PredicateType => {}
        Tag::Word | Tag::Prep | Tag::VerbWord | Tag::Subordinator | Tag::SentenceConnector | Tag::VerbPhraseConnector => {
            out.push(e.text())
        }
        Tag::VerbPhrase | Tag::VerbPhrasePart => verb_phrase(e, None, out),
        Tag::Noun | Tag::Adj | Tag::Adv if e.child(Tag::Part).is_some() => coordination(e, out),
        Tag::Sub | Tag::NounClause | Tag::RelativeClause => {
            let kids: Vec<&Element> = e.elements().collect();
            let start = kids.iter().position(|k| matches!(k.tag, Tag::Subject | Tag::VerbPhrase | Tag::Circum));
            match start {
                Some(s) if kids[s..].iter().any(|k| k.tag == Tag::Subject) => {
                    for k in &kids[..s] {
                        words(&NlmlNode::Element((*k).clone()), out);
                    }
                    clause(&kids[s..], Mood::Statement, false, out);
                }
                _ => words_of(e, out),
            }
        }
        _ => words_of(e, out),
    }
}

/// Parts joined by connectors; `both_and` puts `both` first.
fn coordination(e: &Element, out: &mut Vec<String>) {
    let first_conn = e.child(Tag::PartConnector).map(Element::text).unwrap_or_default();
    if let Some((open, _)) = first_conn.split_once('_') {
        out.push(open.to_string());
    }
    for c in e.elements() {
        match c.tag {
            Tag::Part => words_of(c, out),
            Tag::PartConnector => {
                let t = c.text();
                out.push(t.split_once('_').map_or(t.clone(), |(_, close)| close.to_string()));
            }
            _ => {}
        }
    }
}
