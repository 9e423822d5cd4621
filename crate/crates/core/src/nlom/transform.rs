//! Negation and statement/question conversion.

use super::{Complement, Nominal, NlomError, SentenceModel, VerbPhraseModel};
use crate::grammar::{Complexity, Mood};
use crate::lexicon::{unify, AffixValue, Category, LexEntry, Lexicon, Tense, ValueSet};
use crate::nlml::{Element, NlmlNode, Tag};

/// How an inserted negation is spelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NegationStyle {
    /// `do not`, `will not`, `is not`.
    #[default]
    Full,
    /// `don't`, `won't`, `isn't` where the lexicon has the form.
    Contracted,
}

/// Toggles negation of every top-level verb phrase of every part of a
/// statement. Each verb phrase keeps its own negation spelling.
pub fn negate(model: &SentenceModel, lex: &Lexicon) -> Result<SentenceModel, NlomError> {
    toggle(model, lex, None)
}

/// Like [`negate`] with the given spelling for inserted negations.
pub fn negate_with(model: &SentenceModel, lex: &Lexicon, style: NegationStyle) -> Result<SentenceModel, NlomError> {
    toggle(model, lex, Some(style))
}

fn toggle(model: &SentenceModel, lex: &Lexicon, style: Option<NegationStyle>) -> Result<SentenceModel, NlomError> {
    if model.mood != Mood::Statement {
        return Err(NlomError::UnsupportedMood(model.mood));
    }
    let mut out = model.clone();
    for part in &mut out.parts {
        for vp in &mut part.verb_phrases {
            if vp.negated {
                affirm(vp, lex);
            } else {
                if let Some(s) = style {
                    vp.negation_style = s;
                }
                deny(vp, lex, vp.negation_style);
            }
            vp.normalize_mid();
        }
    }
    Ok(out)
}

/// Converts a simple yes/no question to a statement or back.
pub fn transform_mood(model: &SentenceModel, lex: &Lexicon, target: Mood) -> Result<SentenceModel, NlomError> {
    if !matches!(target, Mood::Statement | Mood::Question) {
        return Err(NlomError::UnsupportedMood(target));
    }
    if !matches!(model.mood, Mood::Statement | Mood::Question) {
        return Err(NlomError::UnsupportedMood(model.mood));
    }
    if model.complexity != Complexity::Simple || model.parts.len() != 1 || model.parts[0].verb_phrases.len() != 1 {
        return Err(NlomError::UnsupportedComplexity(model.complexity));
    }
    if model.mood == target {
        return Ok(model.clone());
    }
    let part = &model.parts[0];
    if part.subject.is_none() {
        return Err(NlomError::UnsupportedMood(model.mood));
    }
    if model.mood == Mood::Question && is_wh_question(model) {
        return Err(NlomError::UnsupportedMood(model.mood));
    }
    let mut out = model.clone();
    out.mood = target;
    let vp = &mut out.parts[0].verb_phrases[0];
    if target == Mood::Question {
        if needs_do_support(vp) {
            do_support(vp, lex, None);
        }
    } else if !vp.negated && has_do_support(vp, lex) {
        drop_do_support(vp, lex);
    }
    vp.normalize_mid();
    Ok(out)
}

fn agreement(vp: &VerbPhraseModel) -> AffixValue {
    let mut want = AffixValue::unconstrained().with_tense(ValueSet::only(vp.tense));
    if let Some((n, p)) = vp.agreement {
        want = want.with_number(n).with_person(p);
    }
    want
}

/// A lone lexical verb takes `do` to negate or invert. `be` never does.
fn needs_do_support(vp: &VerbPhraseModel) -> bool {
    vp.verb_words.len() == 1 && vp.verb_type == "verb" && matches!(vp.tense, Tense::Present | Tense::Past)
}

fn has_do_support(vp: &VerbPhraseModel, lex: &Lexicon) -> bool {
    vp.verb_words.len() == 2
        && vp.verb_type == "verb"
        && vp.kernel_tense == Some(Tense::Infinitive)
        && matches!(vp.tense, Tense::Present | Tense::Past)
        && lemma_of(lex, &vp.verb_words[0]).as_deref() == Some("do")
}

fn lemma_of(lex: &Lexicon, word: &str) -> Option<String> {
    let word = word.strip_suffix(" not").unwrap_or(word);
    lex.lookup(word)
        .into_iter()
        .find(|e| matches!(e.category, Category::Verb | Category::Be | Category::Modal))
        .map(|e| e.base_lemma().to_string())
}

fn do_support(vp: &mut VerbPhraseModel, lex: &Lexicon, style: Option<NegationStyle>) {
    let Some(aux) = lex.inflect("do", Category::Verb, agreement(vp)) else { return };
    let want = AffixValue::unconstrained().with_tense(ValueSet::only(Tense::Infinitive));
    let Some(kernel) = lex.inflect(&vp.lemma, Category::Verb, want) else { return };
    let aux = match style {
        Some(s) => negative_form(lex, aux, s),
        None => aux.surface.clone(),
    };
    vp.verb_words = vec![aux, kernel.surface.clone()];
    vp.kernel_tense = Some(Tense::Infinitive);
}

fn drop_do_support(vp: &mut VerbPhraseModel, lex: &Lexicon) {
    if let Some(finite) = lex.inflect(&vp.lemma, Category::Verb, agreement(vp)) {
        vp.verb_words = vec![finite.surface.clone()];
        vp.kernel_tense = None;
    }
}

fn deny(vp: &mut VerbPhraseModel, lex: &Lexicon, style: NegationStyle) {
    if needs_do_support(vp) {
        do_support(vp, lex, Some(style));
    } else {
        let first = &vp.verb_words[0];
        let entry = lex
            .lookup(first)
            .into_iter()
            .find(|e| matches!(e.category, Category::Verb | Category::Be | Category::Modal) && !e.is_negative());
        vp.verb_words[0] = match entry {
            Some(e) => negative_form(lex, e, style),
            None => format!("{first} not"),
        };
    }
    vp.negated = true;
}

fn negative_form(lex: &Lexicon, aux: &LexEntry, style: NegationStyle) -> String {
    if style == NegationStyle::Contracted {
        let contracted = lex.entries().iter().find(|n| {
            n.is_negative()
                && !n.surface.contains(' ')
                && n.category == aux.category
                && n.base_lemma() == aux.lemma
                && unify(n.affixes, aux.affixes).is_ok()
        });
        if let Some(n) = contracted {
            return n.surface.clone();
        }
    }
    format!("{} not", aux.surface)
}

fn affirm(vp: &mut VerbPhraseModel, lex: &Lexicon) {
    let Some(i) = vp.verb_words.iter().position(|w| super::is_negative_word(lex, w)) else { return };
    let w = vp.verb_words[i].clone();
    let positive = match w.strip_suffix(" not") {
        Some(base) => base.to_string(),
        None => {
            let neg = lex.lookup(&w).into_iter().find(|e| e.is_negative());
            let want = if i == 0 { agreement(vp) } else { AffixValue::unconstrained() };
            neg.and_then(|n| {
                lex.inflect(n.base_lemma(), n.category, want)
                    .or_else(|| lex.inflect(n.base_lemma(), n.category, AffixValue::unconstrained()))
            })
            .map(|e| e.surface.clone())
            .unwrap_or(w)
        }
    };
    vp.verb_words[i] = positive;
    vp.negated = false;
    if has_do_support(vp, lex) {
        drop_do_support(vp, lex);
    }
}

/// A question whose query word stands in a slot of the main clause.
fn is_wh_question(model: &SentenceModel) -> bool {
    let part = &model.parts[0];
    let subject = part.subject.as_ref().is_some_and(|s| has_query(&s.to_node()));
    let circs = part.pre_circumstances.iter().any(|c| c.content.iter().any(has_query));
    let vp = &part.verb_phrases[0];
    let comps = vp.complements.iter().any(|c| match c {
        Complement::DirectObject(n) | Complement::IndirectObject(n) => match n {
            Nominal::Phrase(p) => has_query(&p.to_node()),
            Nominal::Clause(_) => false,
        },
        Complement::Predicate(p) => p.payload.iter().any(has_query),
        Complement::PrepPhrase(n) => has_query(n),
        Complement::Particle(_) => false,
    });
    let post = vp.circumstances.iter().any(|c| c.content.iter().any(has_query));
    subject || circs || comps || post
}

/// Looks for a query or exclamative word outside embedded clauses.
pub(crate) fn has_query(n: &NlmlNode) -> bool {
    let Some(e) = n.as_element() else { return false };
    if matches!(e.tag, Tag::NounClause | Tag::RelativeClause) {
        return false;
    }
    e.child(Tag::Type).is_some_and(is_query_type) || e.children.iter().any(has_query)
}

fn is_query_type(t: &Element) -> bool {
    matches!(t.text().as_str(), "query" | "exclamative")
}
