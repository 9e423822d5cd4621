//! The word inventory: entries with category, affixes, verb frame and
//! probability, loaded from a tab-separated text file.
//!
//! One entry per line:
//!
//! ```text
//! surface <TAB> lemma <TAB> category <TAB> affixes <TAB> frame <TAB> probability
//! ```
//!
//! Affixes are `key=v1|v2;key=v3`, the frame is
//! `transitivity=trans;particles=up|out;attachments=obj|part_obj`. Trailing
//! fields may be omitted. `#` starts a comment line.

mod affix;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::Path;

use thiserror::Error;

pub use affix::{
    unify, AffixDimension, AffixValue, Case, Dimension, Grade, Number, Person, Tense,
    UnificationFailure, ValueSet,
};

/// The lexicon shipped with the crate.
pub const DEMO_LEXICON: &str = include_str!("../../../../lexicon/en-demo.lex");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Noun,
    PersPronoun,
    QueryPronoun,
    QueryAdverb,
    Verb,
    Be,
    Modal,
    AdjectiveAttr,
    AdjectivePred,
    AdjectiveNormal,
    Adverb,
    Preposition,
    Article,
    Demonstrative,
    Conjunction,
    Subordinator,
    NumberWord,
    Particle,
}

impl Category {
    pub const ALL: [Category; 18] = [
        Category::Noun,
        Category::PersPronoun,
        Category::QueryPronoun,
        Category::QueryAdverb,
        Category::Verb,
        Category::Be,
        Category::Modal,
        Category::AdjectiveAttr,
        Category::AdjectivePred,
        Category::AdjectiveNormal,
        Category::Adverb,
        Category::Preposition,
        Category::Article,
        Category::Demonstrative,
        Category::Conjunction,
        Category::Subordinator,
        Category::NumberWord,
        Category::Particle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Noun => "noun",
            Category::PersPronoun => "perspronoun",
            Category::QueryPronoun => "query_pronoun",
            Category::QueryAdverb => "query_adverb",
            Category::Verb => "verb",
            Category::Be => "be",
            Category::Modal => "modal",
            Category::AdjectiveAttr => "adjective_attr",
            Category::AdjectivePred => "adjective_pred",
            Category::AdjectiveNormal => "adjective_normal",
            Category::Adverb => "adverb",
            Category::Preposition => "preposition",
            Category::Article => "article",
            Category::Demonstrative => "demonstrative",
            Category::Conjunction => "conjunction",
            Category::Subordinator => "subordinator",
            Category::NumberWord => "number_word",
            Category::Particle => "particle",
        }
    }

    pub fn parse(s: &str) -> Option<Category> {
        Category::ALL.into_iter().find(|c| c.as_str() == s)
    }

    pub fn is_verbal(self) -> bool {
        matches!(self, Category::Verb | Category::Be | Category::Modal)
    }

    pub fn is_adjective(self) -> bool {
        matches!(
            self,
            Category::AdjectiveAttr | Category::AdjectivePred | Category::AdjectiveNormal
        )
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transitivity {
    Intr,
    Trans,
    Bitrans,
    Link,
}

impl Transitivity {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "intr" => Transitivity::Intr,
            "trans" => Transitivity::Trans,
            "bitrans" => Transitivity::Bitrans,
            "link" => Transitivity::Link,
            _ => return None,
        })
    }

    fn default_attachments(self) -> Vec<AttachmentKind> {
        match self {
            Transitivity::Intr => vec![AttachmentKind::Intransitive],
            Transitivity::Trans => vec![AttachmentKind::Object],
            Transitivity::Bitrans => vec![AttachmentKind::IndirectDirect, AttachmentKind::Object],
            Transitivity::Link => vec![AttachmentKind::LinkPredicate],
        }
    }
}

/// The complement patterns a verb can license.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AttachmentKind {
    /// `come`
    Intransitive,
    /// `buy a book`
    Object,
    /// `give him a book`
    IndirectDirect,
    /// `catch up with it`
    ParticlePrepPhrase,
    /// `pick up the book`
    ParticleObject,
    /// `see the student do his job`
    ObjectBareInfinitive,
    /// `have his car repaired`
    ObjectPastParticiple,
    /// `be ill`
    LinkPredicate,
}

impl AttachmentKind {
    pub const ALL: [AttachmentKind; 8] = [
        AttachmentKind::Intransitive,
        AttachmentKind::Object,
        AttachmentKind::IndirectDirect,
        AttachmentKind::ParticlePrepPhrase,
        AttachmentKind::ParticleObject,
        AttachmentKind::ObjectBareInfinitive,
        AttachmentKind::ObjectPastParticiple,
        AttachmentKind::LinkPredicate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AttachmentKind::Intransitive => "intr",
            AttachmentKind::Object => "obj",
            AttachmentKind::IndirectDirect => "iobj_obj",
            AttachmentKind::ParticlePrepPhrase => "part_pp",
            AttachmentKind::ParticleObject => "part_obj",
            AttachmentKind::ObjectBareInfinitive => "obj_bare_inf",
            AttachmentKind::ObjectPastParticiple => "obj_pp_clause",
            AttachmentKind::LinkPredicate => "link_pred",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        AttachmentKind::ALL.into_iter().find(|k| k.as_str() == s)
    }

    /// Whether the pattern contains a direct object (and so has a passive).
    pub fn takes_object(self) -> bool {
        matches!(
            self,
            AttachmentKind::Object
                | AttachmentKind::IndirectDirect
                | AttachmentKind::ParticleObject
                | AttachmentKind::ObjectBareInfinitive
                | AttachmentKind::ObjectPastParticiple
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerbFrame {
    pub transitivity: Transitivity,
    pub particles: Vec<String>,
    pub attachments: Vec<AttachmentKind>,
}

impl VerbFrame {
    pub fn new(transitivity: Transitivity) -> Self {
        VerbFrame {
            transitivity,
            particles: Vec::new(),
            attachments: transitivity.default_attachments(),
        }
    }

    pub fn licenses(&self, kind: AttachmentKind) -> bool {
        self.attachments.contains(&kind)
    }

    pub fn allows_particle(&self, particle: &str) -> bool {
        self.particles.iter().any(|p| p == particle)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexEntry {
    pub surface: String,
    pub lemma: String,
    pub category: Category,
    pub affixes: AffixValue,
    /// Semantic subtype (`type=` key), e.g. `time` for adverbs or
    /// `possessive` for articles. Not part of unification.
    pub sem: Option<String>,
    pub frame: Option<VerbFrame>,
    pub probability: f64,
}

impl LexEntry {
    pub fn sem_is(&self, sem: &str) -> bool {
        self.sem.as_deref() == Some(sem)
    }

    /// Contracted or spelled-out negative auxiliaries carry a lemma ending in ` not`.
    pub fn is_negative(&self) -> bool {
        self.lemma.ends_with(" not")
    }

    /// Lemma with a negative suffix removed.
    pub fn base_lemma(&self) -> &str {
        self.lemma.strip_suffix(" not").unwrap_or(&self.lemma)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum LexiconError {
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: duplicate entry")]
    DuplicateEntry { line: usize },
    #[error("cannot read lexicon {path}: {reason}")]
    Io { path: String, reason: String },
}

/// Case-folds a token for lookup. The pronoun `I` folds to `i` like any other word.
pub fn fold(token: &str) -> String {
    token.to_lowercase()
}

/// An immutable, indexed word inventory.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: Vec<LexEntry>,
    by_surface: HashMap<String, Vec<usize>>,
    by_category: BTreeMap<Category, Vec<usize>>,
    /// Multi-word surfaces, keyed by their first word.
    phrases: HashMap<String, Vec<usize>>,
}

impl PartialEq for Lexicon {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Lexicon {
    /// The lexicon compiled into the crate.
    pub fn demo() -> Lexicon {
        Lexicon::parse(DEMO_LEXICON).expect("shipped lexicon is well-formed")
    }

    pub fn from_entries(entries: Vec<LexEntry>) -> Result<Lexicon, LexiconError> {
        let mut lex = Lexicon::default();
        let mut seen = HashSet::new();
        for (i, e) in entries.into_iter().enumerate() {
            if !seen.insert(triple_key(&e)) {
                return Err(LexiconError::DuplicateEntry { line: i + 1 });
            }
            lex.push(e);
        }
        Ok(lex)
    }

    pub fn parse(text: &str) -> Result<Lexicon, LexiconError> {
        let mut lex = Lexicon::default();
        let mut seen = HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let entry = parse_line(line).map_err(|reason| LexiconError::MalformedLine {
                line: line_no,
                reason,
            })?;
            if !seen.insert(triple_key(&entry)) {
                return Err(LexiconError::DuplicateEntry { line: line_no });
            }
            lex.push(entry);
        }
        Ok(lex)
    }

    fn push(&mut self, entry: LexEntry) {
        let idx = self.entries.len();
        self.by_surface.entry(entry.surface.clone()).or_default().push(idx);
        self.by_category.entry(entry.category).or_default().push(idx);
        if let Some((first, _)) = entry.surface.split_once(' ') {
            self.phrases.entry(first.to_string()).or_default().push(idx);
        }
        self.entries.push(entry);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[LexEntry] {
        &self.entries
    }

    /// All homographs of a token, after case folding. Unknown words yield an empty list.
    pub fn lookup(&self, surface: &str) -> Vec<&LexEntry> {
        self.by_surface
            .get(&fold(surface))
            .map(|ix| ix.iter().map(|&i| &self.entries[i]).collect())
            .unwrap_or_default()
    }

    pub fn by_category(&self, category: Category) -> impl Iterator<Item = &LexEntry> {
        self.by_category
            .get(&category)
            .into_iter()
            .flatten()
            .map(|&i| &self.entries[i])
    }

    /// Multi-word entries beginning with the given (folded) word.
    pub fn phrases_starting_with(&self, first: &str) -> impl Iterator<Item = &LexEntry> {
        self.phrases
            .get(first)
            .into_iter()
            .flatten()
            .map(|&i| &self.entries[i])
    }

    /// Finds the inflected form of `lemma` in `category` whose affixes admit `want`.
    pub fn inflect(&self, lemma: &str, category: Category, want: AffixValue) -> Option<&LexEntry> {
        self.by_category(category)
            .filter(|e| e.lemma == lemma)
            .find(|e| !e.is_negative() && unify(e.affixes, want).is_ok())
    }
}

/// Reads and parses a lexicon file.
pub fn load_lexicon(path: impl AsRef<Path>) -> Result<Lexicon, LexiconError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| LexiconError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    Lexicon::parse(&text)
}

fn triple_key(e: &LexEntry) -> (String, Category, AffixValue) {
    (e.surface.clone(), e.category, e.affixes)
}

fn parse_line(line: &str) -> Result<LexEntry, String> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() < 3 || fields.len() > 6 {
        return Err(format!("expected 3 to 6 tab-separated fields, found {}", fields.len()));
    }
    let surface = fields[0].trim();
    if surface.is_empty() {
        return Err("empty surface".into());
    }
    if surface.contains(['<', '>']) {
        return Err("surface contains markup characters".into());
    }
    let lemma = fields[1].trim();
    if lemma.is_empty() {
        return Err("empty lemma".into());
    }
    let category = Category::parse(fields[2].trim())
        .ok_or_else(|| format!("unknown category `{}`", fields[2].trim()))?;

    let (affixes, sem) = match fields.get(3).map(|s| s.trim()) {
        Some(s) if !s.is_empty() => parse_affixes(s)?,
        _ => (AffixValue::unconstrained(), None),
    };

    let frame = match fields.get(4).map(|s| s.trim()) {
        Some(s) if !s.is_empty() => {
            if !category.is_verbal() {
                return Err(format!("verb frame given for category `{category}`"));
            }
            Some(parse_frame(s)?)
        }
        _ if category == Category::Verb => Some(VerbFrame::new(Transitivity::Intr)),
        _ if category == Category::Be => Some(VerbFrame::new(Transitivity::Link)),
        _ => None,
    };

    let probability = match fields.get(5).map(|s| s.trim()) {
        Some(s) if !s.is_empty() => {
            let p: f64 = s.parse().map_err(|_| format!("bad probability `{s}`"))?;
            if !(p > 0.0 && p <= 1.0) {
                return Err(format!("probability {p} outside (0, 1]"));
            }
            p
        }
        _ => 1.0,
    };

    Ok(LexEntry {
        surface: fold(surface),
        lemma: lemma.to_string(),
        category,
        affixes,
        sem,
        frame,
        probability,
    })
}

fn parse_affixes(s: &str) -> Result<(AffixValue, Option<String>), String> {
    let mut affixes = AffixValue::unconstrained();
    let mut sem = None;
    for item in s.split(';').map(str::trim).filter(|i| !i.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| format!("affix `{item}` is not key=value"))?;
        let value = value.trim();
        let bad = || format!("unknown {key} value `{value}`");
        match key.trim() {
            "numb" => affixes.number = ValueSet::parse(value).ok_or_else(bad)?,
            "pers" => affixes.person = ValueSet::parse(value).ok_or_else(bad)?,
            "case" => affixes.case = ValueSet::parse(value).ok_or_else(bad)?,
            "tense" => affixes.tense = ValueSet::parse(value).ok_or_else(bad)?,
            "grade" => affixes.grade = ValueSet::parse(value).ok_or_else(bad)?,
            "type" if !value.is_empty() => sem = Some(value.to_string()),
            other => return Err(format!("unknown affix key `{other}`")),
        }
    }
    Ok((affixes, sem))
}

fn parse_frame(s: &str) -> Result<VerbFrame, String> {
    let mut transitivity = None;
    let mut particles = Vec::new();
    let mut attachments = None;
    for item in s.split(';').map(str::trim).filter(|i| !i.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| format!("frame item `{item}` is not key=value"))?;
        match key.trim() {
            "transitivity" => {
                transitivity = Some(
                    Transitivity::parse(value.trim())
                        .ok_or_else(|| format!("unknown transitivity `{value}`"))?,
                )
            }
            "particles" => {
                particles = value
                    .split('|')
                    .map(|p| p.trim().to_string())
                    .filter(|p| !p.is_empty())
                    .collect()
            }
            "attachments" => {
                let mut kinds = Vec::new();
                for a in value.split('|').map(str::trim) {
                    kinds.push(
                        AttachmentKind::parse(a)
                            .ok_or_else(|| format!("unknown attachment kind `{a}`"))?,
                    );
                }
                attachments = Some(kinds)
            }
            other => return Err(format!("unknown frame key `{other}`")),
        }
    }
    let transitivity = transitivity.ok_or("frame lacks transitivity")?;
    let attachments = attachments.unwrap_or_else(|| transitivity.default_attachments());
    let required = match transitivity {
        Transitivity::Bitrans => Some(AttachmentKind::IndirectDirect),
        Transitivity::Link => Some(AttachmentKind::LinkPredicate),
        _ => None,
    };
    if let Some(kind) = required {
        if !attachments.contains(&kind) {
            return Err(format!("transitivity requires attachment `{}`", kind.as_str()));
        }
    }
    if transitivity == Transitivity::Trans && !attachments.iter().any(|k| k.takes_object()) {
        return Err("transitive frame licenses no object".into());
    }
    Ok(VerbFrame { transitivity, particles, attachments })
}
