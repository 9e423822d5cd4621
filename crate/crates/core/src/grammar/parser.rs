use std::cell::{Cell, RefCell};
use std::collections::HashMap;
use std::hash::Hash;
use std::rc::Rc;

use super::noun::NpCtx;
use super::verb::VpKey;
use super::{Fragment, GrammarError, Position, TokenStream};
use crate::lexicon::{fold, AffixValue, Category, LexEntry, Lexicon};
use crate::nlml::{NlmlNode, Tag};

/// Alternatives kept per constituent and start position.
pub(crate) const MAX_ALTS: usize = 48;

/// One way a constituent can span `start..end`.
#[derive(Debug, Clone)]
pub(crate) struct Alt<T> {
    pub end: usize,
    pub prob: f64,
    /// Internal preference; lower is tried first among equal spans.
    pub pen: u32,
    pub val: T,
}

impl<T> Alt<T> {
    pub fn new(end: usize, prob: f64, val: T) -> Self {
        Alt { end, prob, pen: 0, val }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Alt<U> {
        Alt { end: self.end, prob: self.prob, pen: self.pen, val: f(self.val) }
    }
}

/// Longest span first, then lower penalty; otherwise construction order.
pub(crate) fn order<T>(mut alts: Vec<Alt<T>>) -> Vec<Alt<T>> {
    alts.sort_by(|a, b| b.end.cmp(&a.end).then(a.pen.cmp(&b.pen)));
    alts.truncate(MAX_ALTS);
    alts
}

pub(crate) fn el(tag: Tag, children: Vec<NlmlNode>) -> NlmlNode {
    NlmlNode::el(tag, children)
}

pub(crate) fn leaf(tag: Tag, text: &str) -> NlmlNode {
    NlmlNode::leaf(tag, text)
}

/// `<adv><type>t</type><word>w</word></adv>` and similar typed words.
pub(crate) fn typed(tag: Tag, ty: &str, word: &str) -> NlmlNode {
    el(tag, vec![leaf(Tag::Type, ty), leaf(Tag::Word, word)])
}

pub(crate) type Memo<K, T> = RefCell<HashMap<K, Rc<Vec<Alt<T>>>>>;

pub(crate) struct Parser<'a> {
    pub lex: &'a Lexicon,
    words: Vec<String>,
    display: Vec<String>,
    entries: Vec<Vec<&'a LexEntry>>,
    furthest: Cell<usize>,
    pub(crate) np_memo: Memo<(usize, NpCtx), super::noun::Np>,
    pub(crate) vp_memo: Memo<VpKey, super::verb::Vp>,
    pub(crate) simple_memo: Memo<(usize, super::sentence::Kind), super::sentence::Simple>,
}

impl<'a> Parser<'a> {
    pub fn new(tokens: &TokenStream, lex: &'a Lexicon) -> Parser<'a> {
        let words: Vec<String> = tokens.tokens().iter().map(|t| fold(&t.text)).collect();
        let display = words
            .iter()
            .map(|w| if w == "i" { "I".to_string() } else { w.clone() })
            .collect();
        let entries = words.iter().map(|w| lex.lookup(w)).collect();
        Parser {
            lex,
            words,
            display,
            entries,
            furthest: Cell::new(0),
            np_memo: RefCell::default(),
            vp_memo: RefCell::default(),
            simple_memo: RefCell::default(),
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn no_parse(&self) -> GrammarError {
        GrammarError::NoParse { furthest: self.furthest.get().min(self.len()) }
    }

    /// Records that tokens up to `end` were consumed by some analysis.
    pub fn reach(&self, end: usize) {
        if end > self.furthest.get() {
            self.furthest.set(end);
        }
    }

    pub fn word(&self, pos: usize) -> Option<&str> {
        self.words.get(pos).map(String::as_str)
    }

    /// Output spelling of a token.
    pub fn disp(&self, pos: usize) -> &str {
        &self.display[pos]
    }

    pub fn is(&self, pos: usize, w: &str) -> bool {
        let hit = self.word(pos) == Some(w);
        if hit {
            self.reach(pos + 1);
        }
        hit
    }

    pub fn is_any<'w>(&self, pos: usize, ws: &[&'w str]) -> Option<&'w str> {
        let found = ws.iter().copied().find(|w| self.word(pos) == Some(*w));
        if found.is_some() {
            self.reach(pos + 1);
        }
        found
    }

    pub fn is_punct(&self, pos: usize) -> bool {
        matches!(self.word(pos), Some("." | "?" | "!" | ","))
    }

    /// Single-token entries of a category.
    pub fn cat(&self, pos: usize, category: Category) -> Vec<&'a LexEntry> {
        let out: Vec<&'a LexEntry> = match self.entries.get(pos) {
            Some(es) => es.iter().copied().filter(|e| e.category == category).collect(),
            None => Vec::new(),
        };
        if !out.is_empty() {
            self.reach(pos + 1);
        }
        out
    }

    pub fn has_cat(&self, pos: usize, category: Category) -> bool {
        self.entries
            .get(pos)
            .is_some_and(|es| es.iter().any(|e| e.category == category))
    }

    /// Multi-word entries of a category matching at `pos`, with their end.
    pub fn phrases(&self, pos: usize, category: Category) -> Vec<(&'a LexEntry, usize)> {
        let Some(first) = self.word(pos) else { return Vec::new() };
        let mut out = Vec::new();
        for e in self.lex.phrases_starting_with(first) {
            if e.category != category {
                continue;
            }
            let parts: Vec<&str> = e.surface.split(' ').collect();
            if parts.iter().enumerate().all(|(i, p)| self.word(pos + i) == Some(*p)) {
                self.reach(pos + parts.len());
                out.push((e, pos + parts.len()));
            }
        }
        out
    }

    pub fn memo<K: Eq + Hash + Clone, T>(
        &self,
        table: &Memo<K, T>,
        key: K,
        compute: impl FnOnce() -> Vec<Alt<T>>,
    ) -> Rc<Vec<Alt<T>>> {
        if let Some(hit) = table.borrow().get(&key) {
            return hit.clone();
        }
        let value = Rc::new(order(compute()));
        table.borrow_mut().insert(key, value.clone());
        value
    }

    /// End of the content, ignoring one trailing punctuation mark.
    fn content_end(&self) -> usize {
        let n = self.len();
        if n > 0 && self.is_punct(n - 1) && self.word(n - 1) != Some(",") {
            n - 1
        } else {
            n
        }
    }

    fn first_full<T>(
        &self,
        alts: Vec<Alt<T>>,
        build: impl Fn(T) -> Vec<NlmlNode>,
    ) -> Result<Fragment, GrammarError> {
        let end = self.content_end();
        alts.into_iter()
            .find(|a| a.end == end && end > 0)
            .map(|a| Fragment { probability: a.prob, nodes: build(a.val) })
            .ok_or_else(|| self.no_parse())
    }

    pub fn noun_phrase_fragment(&self) -> Result<Fragment, GrammarError> {
        let alts = self.np(0, NpCtx::FULL).as_ref().clone();
        self.first_full(alts, |np| vec![np.node])
    }

    pub fn verb_phrase_fragment(&self, subject: AffixValue) -> Result<Fragment, GrammarError> {
        let alts = self.vp_finite(0, subject.agreement()).as_ref().clone();
        self.first_full(alts, |vp| vec![vp.node])
    }

    pub fn relative_clause_fragment(&self, head: AffixValue) -> Result<Fragment, GrammarError> {
        let alts = self.relative_clause(0, head.agreement());
        self.first_full(alts, |n| vec![n])
    }

    pub fn noun_clause_fragment(&self) -> Result<Fragment, GrammarError> {
        let alts = self.noun_clause(0, super::noun::ClauseRole::Object);
        self.first_full(alts, |n| vec![n])
    }

    pub fn adjective_fragment(&self, position: Position) -> Result<Fragment, GrammarError> {
        let alts = match position {
            Position::Pre => self.attr_adj(0),
            Position::Mid | Position::Post => self.pred_adj_phrase(0),
        };
        let result = self.first_full(alts, |n| vec![n]);
        if result.is_err() {
            if let Some(word) = self.position_violation(0, position) {
                return Err(GrammarError::PositionViolation { word, position });
            }
        }
        result
    }

    /// The adjective at `pos`, if it exists but only in the other position.
    fn position_violation(&self, pos: usize, position: Position) -> Option<String> {
        let mut p = pos;
        while self.entries.get(p).is_some_and(|es| {
            es.iter().any(|e| e.category == Category::Adverb && e.sem_is("degree"))
        }) {
            p += 1;
        }
        let wrong = match position {
            Position::Pre => Category::AdjectivePred,
            Position::Mid | Position::Post => Category::AdjectiveAttr,
        };
        let es = self.entries.get(p)?;
        let misplaced = es.iter().any(|e| e.category == wrong)
            && !es.iter().any(|e| e.category == Category::AdjectiveNormal);
        misplaced.then(|| self.disp(p).to_string())
    }

    pub fn circumstance_fragment(&self, position: Position) -> Result<Fragment, GrammarError> {
        let alts = self.circumstance(0, position);
        self.first_full(alts, |n| vec![n])
    }

    pub fn prep_phrase_fragment(&self) -> Result<Fragment, GrammarError> {
        let alts = self.prep_phrase(0, NpCtx::FULL);
        self.first_full(alts, |n| vec![n])
    }

    pub fn predicate_fragment(&self) -> Result<Fragment, GrammarError> {
        let alts = self.predicate(0, &super::verb::Gap::None, false);
        self.first_full(alts, |(n, _)| vec![n])
    }
}
