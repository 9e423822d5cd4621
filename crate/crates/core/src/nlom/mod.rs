//! Object model over NLML sentence documents, with grammar queries and
//! structural transformations.

mod render;
mod transform;

use thiserror::Error;

use crate::grammar::{Complexity, Mood, Voice};
use crate::lexicon::{fold, Category, Dimension, Lexicon, Number, Person, Tense, ValueSet};
use crate::nlml::{Element, NlmlDocument, NlmlNode, Tag};

pub use render::render_text;
pub use transform::{negate, negate_with, transform_mood, NegationStyle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NlomError {
    #[error("mood `{0}` is not a sentence mood")]
    NotASentence(String),
    #[error("missing <{tag}> in {context}")]
    MissingTag { tag: Tag, context: &'static str },
    #[error("unexpected <{tag}> in {context}")]
    UnexpectedTag { tag: Tag, context: &'static str },
    #[error("invalid value `{value}` in <{tag}>")]
    BadValue { tag: Tag, value: String },
    #[error("part index {index} out of range ({len} parts)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operation not supported for mood `{0}`")]
    UnsupportedMood(Mood),
    #[error("operation not supported for complexity `{0}`")]
    UnsupportedComplexity(Complexity),
}

impl NlomError {
    /// The variant name, for diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            NlomError::NotASentence(_) => "NotASentence",
            NlomError::MissingTag { .. } => "MissingTag",
            NlomError::UnexpectedTag { .. } => "UnexpectedTag",
            NlomError::BadValue { .. } => "BadValue",
            NlomError::IndexOutOfRange { .. } => "IndexOutOfRange",
            NlomError::UnsupportedMood(_) => "UnsupportedMood",
            NlomError::UnsupportedComplexity(_) => "UnsupportedComplexity",
        }
    }
}

/// A whole sentence.
///
/// A subcircum expression has no main clause: its clause is the subordinate
/// one and `parts` is empty. Every other sentence has at least one part.
#[derive(Debug, Clone, PartialEq)]
pub struct SentenceModel {
    pub mood: Mood,
    pub complexity: Complexity,
    pub voice: Voice,
    pub subordinate: Option<Subordinate>,
    pub parts: Vec<SimpleSentenceModel>,
    /// Connectors between parts. Paired forms are held as one connector
    /// (`neither_nor`, `either_or`).
    pub connectors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Subordinate {
    pub subordinator: String,
    pub clause: Box<SentenceModel>,
    /// Whether the clause precedes the main clause.
    pub leading: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimpleSentenceModel {
    pub pre_circumstances: Vec<CircumstanceModel>,
    pub subject: Option<Nominal>,
    pub verb_phrases: Vec<VerbPhraseModel>,
    pub verb_connectors: Vec<String>,
}

/// A noun phrase or a noun clause in a nominal slot.
#[derive(Debug, Clone, PartialEq)]
pub enum Nominal {
    Phrase(NounPhraseModel),
    Clause(Element),
}

#[derive(Debug, Clone, PartialEq)]
pub struct NounPhraseModel {
    pub parts: Vec<NounPart>,
    pub connectors: Vec<String>,
    /// Affixes of a coordinated phrase. A single part carries its own.
    pub affixes: Affixes,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Affixes {
    pub number: Option<ValueSet<Number>>,
    pub person: Option<ValueSet<Person>>,
    pub case: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NounPart {
    pub pre_modifiers: Vec<NlmlNode>,
    pub kernel_type: Option<String>,
    pub kernel: String,
    pub affixes: Affixes,
    pub post_modifiers: Vec<NlmlNode>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerbPhraseModel {
    pub voice: Voice,
    pub verb_type: String,
    pub tense: Tense,
    pub agreement: Option<(ValueSet<Number>, ValueSet<Person>)>,
    pub verb_words: Vec<String>,
    pub kernel_tense: Option<Tense>,
    /// Lemma of the kernel verb.
    pub lemma: String,
    pub negated: bool,
    /// Spelling used when negating. Read from the negative word, kept when
    /// the negation is removed so that a second negation restores it.
    pub negation_style: NegationStyle,
    /// The slot after the verb group; `Some` with no content is the empty
    /// `<circum></circum>`.
    pub mid: Option<CircumstanceModel>,
    pub complements: Vec<Complement>,
    pub circumstances: Vec<CircumstanceModel>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Complement {
    DirectObject(Nominal),
    IndirectObject(Nominal),
    Predicate(PredicateModel),
    Particle(String),
    /// A prepositional complement such as a passive agent.
    PrepPhrase(NlmlNode),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredicateModel {
    pub predicate_type: String,
    pub payload: Vec<NlmlNode>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CircumstanceModel {
    pub circum_type: Option<String>,
    pub content: Vec<NlmlNode>,
}

impl SentenceModel {
    /// The indexed simple sentence. A subcircum addresses its only clause.
    pub fn part(&self, index: usize) -> Result<&SimpleSentenceModel, NlomError> {
        let parts = match (&self.subordinate, self.parts.is_empty()) {
            (Some(s), true) => &s.clause.parts,
            _ => &self.parts,
        };
        parts.get(index).ok_or(NlomError::IndexOutOfRange { index, len: parts.len() })
    }

    /// Rebuilds the document the model was built from.
    pub fn to_document(&self) -> NlmlDocument {
        let mut nodes = vec![NlmlNode::leaf(Tag::Mood, self.mood.as_str())];
        if self.mood == Mood::Subcircum {
            if let Some(s) = &self.subordinate {
                nodes.push(NlmlNode::leaf(Tag::Subordinator, &s.subordinator));
                nodes.extend(s.clause.part_nodes());
            }
            return NlmlDocument::new(nodes);
        }
        nodes.push(NlmlNode::leaf(Tag::Complexity, self.complexity.as_str()));
        let sub = self.subordinate.as_ref().map(|s| {
            vec![
                NlmlNode::leaf(Tag::Subordinator, &s.subordinator),
                NlmlNode::el(Tag::Sub, s.clause.part_nodes()),
            ]
        });
        let leading = self.subordinate.as_ref().is_some_and(|s| s.leading);
        if leading {
            nodes.extend(sub.clone().unwrap_or_default());
        }
        nodes.extend(self.part_nodes());
        if !leading {
            nodes.extend(sub.unwrap_or_default());
        }
        NlmlDocument::new(nodes)
    }

    fn part_nodes(&self) -> Vec<NlmlNode> {
        if self.parts.len() == 1 && self.connectors.is_empty() {
            return self.parts[0].to_nodes();
        }
        let wrap = if self.complexity == Complexity::CompoundComplex { Tag::CompleteSentence } else { Tag::SimpleSentence };
        let mut nodes: Vec<NlmlNode> = self.parts.iter().map(|p| NlmlNode::el(wrap, p.to_nodes())).collect();
        for c in &self.connectors {
            for half in split_paired(c) {
                nodes.push(NlmlNode::leaf(Tag::SentenceConnector, half));
            }
        }
        nodes
    }

    /// Top-level verb phrases of every part.
    pub fn verb_phrases(&self) -> impl Iterator<Item = &VerbPhraseModel> {
        self.parts.iter().flat_map(|p| p.verb_phrases.iter())
    }
}

const PAIRED: [(&str, &str); 2] = [("neither", "nor"), ("either", "or")];

fn split_paired(c: &str) -> Vec<&str> {
    match c.split_once('_') {
        Some((a, b)) if PAIRED.contains(&(a, b)) => vec![a, b],
        _ => vec![c],
    }
}

impl SimpleSentenceModel {
    fn to_nodes(&self) -> Vec<NlmlNode> {
        let mut nodes: Vec<NlmlNode> = self.pre_circumstances.iter().map(CircumstanceModel::to_node).collect();
        if let Some(s) = &self.subject {
            nodes.push(NlmlNode::el(Tag::Subject, vec![s.to_node()]));
        }
        if self.verb_phrases.len() == 1 {
            nodes.push(NlmlNode::el(Tag::VerbPhrase, self.verb_phrases[0].to_nodes()));
        } else {
            let mut c = Vec::new();
            for (i, vp) in self.verb_phrases.iter().enumerate() {
                if i > 0 {
                    c.push(NlmlNode::leaf(Tag::VerbPhraseConnector, &self.verb_connectors[i - 1]));
                }
                c.push(NlmlNode::el(Tag::VerbPhrasePart, vp.to_nodes()));
            }
            nodes.push(NlmlNode::el(Tag::VerbPhrase, c));
        }
        nodes
    }

    pub fn is_there_be(&self) -> bool {
        matches!(&self.subject, Some(Nominal::Phrase(np)) if np.parts.len() == 1 && np.parts[0].kernel_type.is_none() && np.parts[0].kernel.eq_ignore_ascii_case("there"))
    }
}

impl Nominal {
    pub fn to_node(&self) -> NlmlNode {
        match self {
            Nominal::Phrase(np) => np.to_node(),
            Nominal::Clause(e) => NlmlNode::Element(e.clone()),
        }
    }
}

impl Affixes {
    fn push(&self, out: &mut Vec<NlmlNode>) {
        if let Some(n) = self.number {
            out.push(NlmlNode::leaf(Tag::Numb, n.to_string()));
        }
        if let Some(p) = self.person {
            out.push(NlmlNode::leaf(Tag::Pers, p.to_string()));
        }
        if let Some(c) = &self.case {
            out.push(NlmlNode::leaf(Tag::Case, c));
        }
    }
}

impl NounPart {
    fn to_nodes(&self) -> Vec<NlmlNode> {
        let mut c = self.pre_modifiers.clone();
        if let Some(t) = &self.kernel_type {
            c.push(NlmlNode::leaf(Tag::Type, t));
        }
        c.push(NlmlNode::leaf(Tag::Word, &self.kernel));
        self.affixes.push(&mut c);
        c.extend(self.post_modifiers.iter().cloned());
        c
    }
}

impl NounPhraseModel {
    pub fn to_node(&self) -> NlmlNode {
        if self.parts.len() == 1 && self.connectors.is_empty() {
            return NlmlNode::el(Tag::Noun, self.parts[0].to_nodes());
        }
        let mut c = Vec::new();
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                if let Some(conn) = self.connectors.get(i - 1) {
                    c.push(NlmlNode::leaf(Tag::PartConnector, conn));
                }
            }
            c.push(NlmlNode::el(Tag::Part, p.to_nodes()));
        }
        self.affixes.push(&mut c);
        NlmlNode::el(Tag::Noun, c)
    }

    /// Kernel words of every part, joined by single spaces.
    pub fn kernels(&self) -> String {
        self.parts.iter().map(|p| p.kernel.as_str()).collect::<Vec<_>>().join(" ")
    }
}

impl CircumstanceModel {
    fn to_node(&self) -> NlmlNode {
        let mut c = Vec::new();
        if let Some(t) = &self.circum_type {
            c.push(NlmlNode::leaf(Tag::CircumType, t));
        }
        c.extend(self.content.iter().cloned());
        NlmlNode::el(Tag::Circum, c)
    }

    pub fn is_empty(&self) -> bool {
        self.circum_type.is_none() && self.content.is_empty()
    }
}

impl VerbPhraseModel {
    fn to_nodes(&self) -> Vec<NlmlNode> {
        let mut c = Vec::new();
        if self.voice == Voice::Passive {
            c.push(NlmlNode::leaf(Tag::Voice, "passive"));
        }
        c.push(NlmlNode::leaf(Tag::VerbType, &self.verb_type));
        c.push(NlmlNode::leaf(Tag::Tense, self.tense.as_str()));
        if let Some((n, p)) = self.agreement {
            c.push(NlmlNode::leaf(Tag::Numb, n.to_string()));
            c.push(NlmlNode::leaf(Tag::Pers, p.to_string()));
        }
        let single = self.verb_words.len() == 1;
        for (i, w) in self.verb_words.iter().enumerate() {
            c.push(NlmlNode::leaf(Tag::VerbWord, w));
            if i == 0 && !single {
                c.extend(self.mid.as_ref().map(CircumstanceModel::to_node));
            }
        }
        if let Some(k) = self.kernel_tense {
            c.push(NlmlNode::leaf(Tag::KernelTense, k.as_str()));
        }
        if single {
            c.extend(self.mid.as_ref().map(CircumstanceModel::to_node));
        }
        for comp in &self.complements {
            c.push(comp.to_node());
        }
        c.extend(self.circumstances.iter().map(CircumstanceModel::to_node));
        c
    }

    /// Restores the mid slot convention after the verb words changed: an
    /// empty slot exists only after a one-word group.
    pub(crate) fn normalize_mid(&mut self) {
        let empty = self.mid.as_ref().is_none_or(CircumstanceModel::is_empty);
        if empty {
            self.mid = (self.verb_words.len() == 1).then(CircumstanceModel::default);
        }
    }

    pub fn direct_object(&self) -> Option<&Nominal> {
        self.complements.iter().find_map(|c| match c {
            Complement::DirectObject(n) => Some(n),
            _ => None,
        })
    }

    pub fn indirect_object(&self) -> Option<&Nominal> {
        self.complements.iter().find_map(|c| match c {
            Complement::IndirectObject(n) => Some(n),
            _ => None,
        })
    }

    pub fn predicate(&self) -> Option<&PredicateModel> {
        self.complements.iter().find_map(|c| match c {
            Complement::Predicate(p) => Some(p),
            _ => None,
        })
    }

    pub fn particles(&self) -> Vec<&str> {
        self.complements
            .iter()
            .filter_map(|c| match c {
                Complement::Particle(p) => Some(p.as_str()),
                _ => None,
            })
            .collect()
    }
}

impl Complement {
    fn to_node(&self) -> NlmlNode {
        match self {
            Complement::DirectObject(n) => NlmlNode::el(Tag::DirectObject, vec![n.to_node()]),
            Complement::IndirectObject(n) => NlmlNode::el(Tag::IndirectObject, vec![n.to_node()]),
            Complement::Predicate(p) => {
                let mut c = vec![NlmlNode::leaf(Tag::PredicateType, &p.predicate_type)];
                c.extend(p.payload.iter().cloned());
                NlmlNode::el(Tag::Predicate, c)
            }
            Complement::PrepPhrase(n) => n.clone(),
            Complement::Particle(w) => NlmlNode::el(
                Tag::Adv,
                vec![NlmlNode::leaf(Tag::Type, "particle"), NlmlNode::leaf(Tag::Word, w)],
            ),
        }
    }
}

/// Builds the model of a sentence document. The lexicon resolves verb lemmas.
pub fn build_model(doc: &NlmlDocument, lex: &Lexicon) -> Result<SentenceModel, NlomError> {
    let mood_text = doc.mood().ok_or(NlomError::MissingTag { tag: Tag::Mood, context: "document" })?;
    let mood = Mood::parse(&mood_text).ok_or_else(|| NlomError::BadValue { tag: Tag::Mood, value: mood_text.clone() })?;
    if !mood.is_sentence() && mood != Mood::Subcircum {
        return Err(NlomError::NotASentence(mood_text));
    }
    let b = Builder { lex };
    let rest: Vec<&Element> = doc.elements().skip(1).collect();
    if mood == Mood::Subcircum {
        let (first, clause) = rest.split_first().ok_or(NlomError::MissingTag { tag: Tag::Subordinator, context: "subcircum" })?;
        if first.tag != Tag::Subordinator {
            return Err(NlomError::MissingTag { tag: Tag::Subordinator, context: "subcircum" });
        }
        let clause = b.clause_model(clause)?;
        return Ok(SentenceModel {
            mood,
            complexity: Complexity::Simple,
            voice: clause.voice,
            subordinate: Some(Subordinate { subordinator: first.text(), clause: Box::new(clause), leading: true }),
            parts: Vec::new(),
            connectors: Vec::new(),
        });
    }
    let (first, rest) = rest.split_first().ok_or(NlomError::MissingTag { tag: Tag::Complexity, context: "document" })?;
    if first.tag != Tag::Complexity {
        return Err(NlomError::MissingTag { tag: Tag::Complexity, context: "document" });
    }
    let complexity = Complexity::parse(&first.text()).ok_or_else(|| NlomError::BadValue { tag: Tag::Complexity, value: first.text() })?;

    let mut subordinate = None;
    let mut main: Vec<&Element> = Vec::new();
    let mut wrapped: Vec<&Element> = Vec::new();
    let mut connectors: Vec<String> = Vec::new();
    let mut i = 0;
    while i < rest.len() {
        let e = rest[i];
        match e.tag {
            Tag::Subordinator => {
                let sub = rest.get(i + 1).filter(|s| s.tag == Tag::Sub).ok_or(NlomError::MissingTag { tag: Tag::Sub, context: "complex sentence" })?;
                let leading = main.is_empty() && wrapped.is_empty();
                let clause = b.clause_model(&sub.elements().collect::<Vec<_>>())?;
                subordinate = Some(Subordinate { subordinator: e.text(), clause: Box::new(clause), leading });
                i += 2;
                continue;
            }
            Tag::SimpleSentence | Tag::CompleteSentence => wrapped.push(e),
            Tag::SentenceConnector => connectors.push(e.text()),
            _ => main.push(e),
        }
        i += 1;
    }
    let parts = if wrapped.is_empty() {
        vec![b.simple(&main)?]
    } else {
        if let Some(e) = main.first() {
            return Err(NlomError::UnexpectedTag { tag: e.tag, context: "compound sentence" });
        }
        wrapped.iter().map(|w| b.simple(&w.elements().collect::<Vec<_>>())).collect::<Result<Vec<_>, _>>()?
    };
    if parts.len() == 2 && connectors.len() == 2 && PAIRED.contains(&(connectors[0].as_str(), connectors[1].as_str())) {
        connectors = vec![connectors.join("_")];
    }
    let voice = voice_of(&parts);
    Ok(SentenceModel { mood, complexity, voice, subordinate, parts, connectors })
}

fn voice_of(parts: &[SimpleSentenceModel]) -> Voice {
    if parts.iter().flat_map(|p| &p.verb_phrases).any(|v| v.voice == Voice::Passive) {
        Voice::Passive
    } else {
        Voice::Active
    }
}

struct Builder<'a> {
    lex: &'a Lexicon,
}

impl Builder<'_> {
    fn clause_model(&self, nodes: &[&Element]) -> Result<SentenceModel, NlomError> {
        let part = self.simple(nodes)?;
        let parts = vec![part];
        Ok(SentenceModel {
            mood: Mood::Statement,
            complexity: Complexity::Simple,
            voice: voice_of(&parts),
            subordinate: None,
            parts,
            connectors: Vec::new(),
        })
    }

    fn simple(&self, nodes: &[&Element]) -> Result<SimpleSentenceModel, NlomError> {
        let mut s = SimpleSentenceModel { pre_circumstances: Vec::new(), subject: None, verb_phrases: Vec::new(), verb_connectors: Vec::new() };
        for e in nodes {
            match e.tag {
                Tag::Circum if s.subject.is_none() && s.verb_phrases.is_empty() => s.pre_circumstances.push(circumstance(e)),
                Tag::Subject if s.subject.is_none() && s.verb_phrases.is_empty() => {
                    let inner = e.elements().next().ok_or(NlomError::MissingTag { tag: Tag::Noun, context: "subject" })?;
                    s.subject = Some(self.nominal(inner)?);
                }
                Tag::VerbPhrase if s.verb_phrases.is_empty() => {
                    if e.child(Tag::VerbPhrasePart).is_some() {
                        for c in e.elements() {
                            match c.tag {
                                Tag::VerbPhrasePart => s.verb_phrases.push(self.verb_phrase(c)?),
                                Tag::VerbPhraseConnector => s.verb_connectors.push(c.text()),
                                t => return Err(NlomError::UnexpectedTag { tag: t, context: "verb phrase" }),
                            }
                        }
                    } else {
                        s.verb_phrases.push(self.verb_phrase(e)?);
                    }
                }
                t => return Err(NlomError::UnexpectedTag { tag: t, context: "simple sentence" }),
            }
        }
        if s.verb_phrases.is_empty() {
            return Err(NlomError::MissingTag { tag: Tag::VerbPhrase, context: "simple sentence" });
        }
        Ok(s)
    }

    fn nominal(&self, e: &Element) -> Result<Nominal, NlomError> {
        match e.tag {
            Tag::Noun => Ok(Nominal::Phrase(noun_phrase(e)?)),
            Tag::NounClause => Ok(Nominal::Clause(e.clone())),
            t => Err(NlomError::UnexpectedTag { tag: t, context: "nominal slot" }),
        }
    }

    fn verb_phrase(&self, e: &Element) -> Result<VerbPhraseModel, NlomError> {
        let mut voice = Voice::Active;
        let mut verb_type = None;
        let mut tense = None;
        let mut numb = None;
        let mut pers = None;
        let mut words = Vec::new();
        let mut kernel_tense = None;
        let mut mid = None;
        let mut complements = Vec::new();
        let mut circumstances = Vec::new();
        for c in e.elements() {
            match c.tag {
                Tag::Voice => voice = if c.text() == "passive" { Voice::Passive } else { Voice::Active },
                Tag::VerbType => verb_type = Some(c.text()),
                Tag::Tense => tense = Some(parse_dim::<Tense>(c)?),
                Tag::Numb => numb = Some(parse_set::<Number>(c)?),
                Tag::Pers => pers = Some(parse_set::<Person>(c)?),
                Tag::VerbWord => words.push(c.text()),
                Tag::KernelTense => kernel_tense = Some(parse_dim::<Tense>(c)?),
                Tag::Circum if mid.is_none() && words.len() == 1 && kernel_tense.is_none() && complements.is_empty() && circumstances.is_empty() => {
                    mid = Some(circumstance(c))
                }
                Tag::Circum => circumstances.push(circumstance(c)),
                Tag::DirectObject | Tag::IndirectObject => {
                    let inner = c.elements().next().ok_or(missing(Tag::Noun, "object"))?;
                    let n = self.nominal(inner)?;
                    complements.push(if c.tag == Tag::DirectObject { Complement::DirectObject(n) } else { Complement::IndirectObject(n) });
                }
                Tag::Predicate => {
                    let mut kids = c.children.iter();
                    let ptype = kids
                        .next()
                        .and_then(NlmlNode::as_element)
                        .filter(|t| t.tag == Tag::PredicateType)
                        .ok_or(missing(Tag::PredicateType, "predicate"))?;
                    complements.push(Complement::Predicate(PredicateModel { predicate_type: ptype.text(), payload: kids.cloned().collect() }));
                }
                Tag::PrepPhrase => complements.push(Complement::PrepPhrase(NlmlNode::Element(c.clone()))),
                Tag::Adv if c.child(Tag::Type).is_some_and(|t| t.text() == "particle") => {
                    complements.push(Complement::Particle(c.child(Tag::Word).map(Element::text).unwrap_or_default()))
                }
                t => return Err(NlomError::UnexpectedTag { tag: t, context: "verb phrase" }),
            }
        }
        let verb_type = verb_type.ok_or(missing(Tag::VerbType, "verb phrase"))?;
        let tense = tense.ok_or(missing(Tag::Tense, "verb phrase"))?;
        if words.is_empty() {
            return Err(missing(Tag::VerbWord, "verb phrase"));
        }
        let agreement = match (numb, pers) {
            (Some(n), Some(p)) => Some((n, p)),
            (None, None) => None,
            (Some(_), None) => return Err(missing(Tag::Pers, "verb phrase")),
            (None, Some(_)) => return Err(missing(Tag::Numb, "verb phrase")),
        };
        let negative = words.iter().find(|w| is_negative_word(self.lex, w));
        let negated = negative.is_some();
        let negation_style = match negative {
            Some(w) if !w.ends_with(" not") => NegationStyle::Contracted,
            _ => NegationStyle::Full,
        };
        let lemma = self.lemma(&words, kernel_tense.unwrap_or(tense));
        Ok(VerbPhraseModel {
            voice,
            verb_type,
            tense,
            agreement,
            verb_words: words,
            kernel_tense,
            lemma,
            negated,
            negation_style,
            mid,
            complements,
            circumstances,
        })
    }

    fn lemma(&self, words: &[String], tense: Tense) -> String {
        let last = words.last().map(String::as_str).unwrap_or_default();
        let last = last.strip_suffix(" not").unwrap_or(last);
        let last = last.rsplit(' ').next().unwrap_or(last);
        let entries: Vec<_> = self
            .lex
            .lookup(last)
            .into_iter()
            .filter(|e| matches!(e.category, Category::Verb | Category::Be | Category::Modal))
            .collect();
        entries
            .iter()
            .find(|e| e.affixes.tense.contains(tense))
            .or(entries.first())
            .map(|e| e.base_lemma().to_string())
            .unwrap_or_else(|| fold(last))
    }
}

fn missing(tag: Tag, context: &'static str) -> NlomError {
    NlomError::MissingTag { tag, context }
}

/// A verb word that negates: `will not`, `don't`, `isn't`.
pub(crate) fn is_negative_word(lex: &Lexicon, w: &str) -> bool {
    w.ends_with(" not") || lex.lookup(w).iter().any(|e| e.is_negative())
}

fn circumstance(e: &Element) -> CircumstanceModel {
    let mut m = CircumstanceModel::default();
    for (i, c) in e.children.iter().enumerate() {
        match c {
            NlmlNode::Element(t) if i == 0 && t.tag == Tag::CircumType => m.circum_type = Some(t.text()),
            other => m.content.push(other.clone()),
        }
    }
    m
}

fn parse_dim<D: Dimension>(e: &Element) -> Result<D, NlomError> {
    D::parse(&e.text()).ok_or_else(|| NlomError::BadValue { tag: e.tag, value: e.text() })
}

fn parse_set<D: Dimension>(e: &Element) -> Result<ValueSet<D>, NlomError> {
    ValueSet::parse(&e.text()).ok_or_else(|| NlomError::BadValue { tag: e.tag, value: e.text() })
}

fn noun_phrase(e: &Element) -> Result<NounPhraseModel, NlomError> {
    if e.child(Tag::Part).is_none() {
        let part = noun_part(e)?;
        return Ok(NounPhraseModel { parts: vec![part], connectors: Vec::new(), affixes: Affixes::default() });
    }
    let mut np = NounPhraseModel { parts: Vec::new(), connectors: Vec::new(), affixes: Affixes::default() };
    for c in e.elements() {
        match c.tag {
            Tag::Part => np.parts.push(noun_part(c)?),
            Tag::PartConnector => np.connectors.push(c.text()),
            Tag::Numb => np.affixes.number = Some(parse_set(c)?),
            Tag::Pers => np.affixes.person = Some(parse_set(c)?),
            Tag::Case => np.affixes.case = Some(c.text()),
            t => return Err(NlomError::UnexpectedTag { tag: t, context: "noun phrase" }),
        }
    }
    Ok(np)
}

fn noun_part(e: &Element) -> Result<NounPart, NlomError> {
    let kernel_at = e
        .children
        .iter()
        .position(|c| c.is(Tag::Word))
        .ok_or(missing(Tag::Word, "noun"))?;
    let mut start = kernel_at;
    let mut kernel_type = None;
    if kernel_at > 0 {
        if let Some(t) = e.children[kernel_at - 1].as_element().filter(|t| t.tag == Tag::Type) {
            kernel_type = Some(t.text());
            start -= 1;
        }
    }
    let mut part = NounPart {
        pre_modifiers: e.children[..start].to_vec(),
        kernel_type,
        kernel: e.children[kernel_at].as_element().map(Element::text).unwrap_or_default(),
        affixes: Affixes::default(),
        post_modifiers: Vec::new(),
    };
    let mut rest = e.children[kernel_at + 1..].iter().peekable();
    if let Some(n) = rest.next_if(|c| c.is(Tag::Numb)) {
        part.affixes.number = Some(parse_set(n.as_element().expect("element"))?);
    }
    if let Some(n) = rest.next_if(|c| c.is(Tag::Pers)) {
        part.affixes.person = Some(parse_set(n.as_element().expect("element"))?);
    }
    if let Some(n) = rest.next_if(|c| c.is(Tag::Case)) {
        part.affixes.case = n.as_element().map(Element::text);
    }
    part.post_modifiers = rest.cloned().collect();
    Ok(part)
}

/// Grammar questions answerable from the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Query {
    Subject,
    VerbWord,
    Object,
    Tense,
    Mood,
    Complexity,
    Subordinator,
}

impl Query {
    pub fn parse(s: &str) -> Option<Query> {
        Some(match s {
            "subject" => Query::Subject,
            "verb_word" | "verb" => Query::VerbWord,
            "object" => Query::Object,
            "tense" => Query::Tense,
            "mood" => Query::Mood,
            "complexity" => Query::Complexity,
            "subordinator" => Query::Subordinator,
            _ => return None,
        })
    }
}

/// Answers a question about the indexed simple sentence. `verb_word` gives the
/// kernel verb, `object` the direct object (or the indirect one when alone).
pub fn answer(model: &SentenceModel, query: Query, part_index: usize) -> Result<Option<String>, NlomError> {
    let part = model.part(part_index)?;
    let vp = part.verb_phrases.first();
    Ok(match query {
        Query::Mood => Some(model.mood.as_str().to_string()),
        Query::Complexity => Some(model.complexity.as_str().to_string()),
        Query::Subordinator => model.subordinate.as_ref().map(|s| s.subordinator.clone()),
        Query::Subject => part.subject.as_ref().map(render::nominal_text),
        Query::VerbWord => vp.and_then(|v| v.verb_words.last()).map(|w| w.rsplit(' ').next().unwrap_or(w).to_string()),
        Query::Tense => vp.map(|v| v.tense.as_str().to_string()),
        Query::Object => vp.and_then(|v| v.direct_object().or(v.indirect_object())).map(render::nominal_text),
    })
}
