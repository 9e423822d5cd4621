//! Simple sentences of each kind and their complex/compound combinations.

use std::rc::Rc;

use super::noun::{ClauseRole, NpCtx};
use super::parser::{el, leaf, typed, Alt, Parser};
use super::verb::{Filler, FillerKind, Gap, VForm, VpReq};
use super::{Complexity, GrammarError, Mood, ParseResult, Position, TokenStream};
use crate::lexicon::{AffixValue, Category, Dimension, Lexicon, Number, Person, ValueSet};
use crate::nlml::{NlmlDocument, NlmlNode, Tag};

/// Orders end in `!`, or in `.` when softened by `please`.
const ORDER_MARKS: &[&str] = &["!", "."];

/// Internal penalty of the noun-clause-subject reading.
const CLAUSE_SUBJECT: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Kind {
    Statement,
    Question,
    Order,
    /// Auxiliary before subject, as after `nor`.
    Inverted,
}

#[derive(Debug, Clone)]
pub(crate) struct Simple {
    pub nodes: Vec<NlmlNode>,
}

/// A whole sentence below the mood tag.
pub(crate) struct Sentence {
    pub complexity: Complexity,
    pub nodes: Vec<NlmlNode>,
    pub prob: f64,
}

fn subject(n: NlmlNode) -> NlmlNode {
    el(Tag::Subject, vec![n])
}

fn politeness() -> NlmlNode {
    el(Tag::Circum, vec![leaf(Tag::CircumType, "adv"), typed(Tag::Adv, "politeness", "please")])
}

impl<'a> Parser<'a> {
    pub(crate) fn simple(&self, pos: usize, kind: Kind) -> Rc<Vec<Alt<Simple>>> {
        self.memo(&self.simple_memo, (pos, kind), || match kind {
            Kind::Statement => self.simple_statement(pos),
            Kind::Question => self.simple_question(pos),
            Kind::Order => self.simple_order(pos),
            Kind::Inverted => self.inverted(pos, Gap::None),
        })
    }

    /// Zero or more pre-circumstances, longest run first.
    fn pre_circs(&self, pos: usize) -> Vec<(usize, Vec<NlmlNode>, f64)> {
        let mut out = vec![(pos, Vec::new(), 1.0)];
        let mut frontier = vec![(pos, Vec::new(), 1.0)];
        for _ in 0..2 {
            let mut next = Vec::new();
            for (p, nodes, prob) in &frontier {
                for c in self.circumstance(*p, Position::Pre) {
                    let mut n: Vec<NlmlNode> = nodes.clone();
                    n.push(c.val);
                    next.push((c.end, n, prob * c.prob));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.reverse();
        out
    }

    fn simple_statement(&self, pos: usize) -> Vec<Alt<Simple>> {
        let mut out = Vec::new();
        for (p, pre, prob) in self.pre_circs(pos) {
            let with_pre = |rest: Vec<NlmlNode>| {
                let mut nodes = pre.clone();
                nodes.extend(rest);
                Simple { nodes }
            };
            for a in self.there_be(p) {
                out.push(Alt::new(a.end, prob * a.prob, with_pre(a.val)));
            }
            for s in self.np(p, NpCtx::SUBJECT).iter() {
                for vp in self.vp_finite(s.end, s.val.affix.agreement()).iter() {
                    let nodes = vec![subject(s.val.node.clone()), vp.val.node.clone()];
                    out.push(Alt::new(vp.end, prob * s.prob * vp.prob, with_pre(nodes)));
                }
            }
            let third = AffixValue::unconstrained()
                .with_number(ValueSet::only(Number::Sing))
                .with_person(ValueSet::only(Person::Third));
            for nc in self.noun_clause(p, ClauseRole::Subject) {
                for vp in self.vp_finite(nc.end, third).iter() {
                    let nodes = vec![subject(nc.val.clone()), vp.val.node.clone()];
                    let mut a = Alt::new(vp.end, prob * nc.prob * vp.prob, with_pre(nodes));
                    a.pen = CLAUSE_SUBJECT;
                    out.push(a);
                }
            }
        }
        out
    }

    /// `there` + be + noun phrase; the noun phrase becomes the predicate.
    fn there_be(&self, pos: usize) -> Vec<Alt<Vec<NlmlNode>>> {
        let mut out = Vec::new();
        if !self.is(pos, "there") {
            return out;
        }
        for be in self.cat(pos + 1, Category::Be) {
            let Some(tense) = [crate::lexicon::Tense::Present, crate::lexicon::Tense::Past]
                .into_iter()
                .find(|t| be.affixes.tense.contains(*t))
            else {
                continue;
            };
            let mut word = self.disp(pos + 1).to_string();
            let mut p = pos + 2;
            if !be.is_negative() && self.is(p, "not") {
                word.push_str(" not");
                p += 1;
            }
            let ctx = NpCtx { case: Some(crate::lexicon::Case::Nom), ..NpCtx::FULL.no_post() };
            for np in self.np(p, ctx).iter() {
                let Ok(agree) = crate::lexicon::unify(np.val.affix.agreement(), be.affixes.agreement()) else {
                    continue;
                };
                for circ in self.post_circs(np.end) {
                    let mut vp = vec![
                        leaf(Tag::VerbType, "be"),
                        leaf(Tag::Tense, tense.as_str()),
                        leaf(Tag::Numb, &agree.number.to_string()),
                        leaf(Tag::Pers, &agree.person.to_string()),
                        leaf(Tag::VerbWord, &word),
                        el(Tag::Circum, vec![]),
                        el(Tag::Predicate, vec![leaf(Tag::PredicateType, "np"), np.val.node.clone()]),
                    ];
                    vp.extend(circ.val);
                    let there = el(Tag::Noun, vec![leaf(Tag::Word, "there")]);
                    let nodes = vec![subject(there), el(Tag::VerbPhrase, vp)];
                    out.push(Alt::new(circ.end, be.probability * np.prob * circ.prob, nodes));
                }
            }
        }
        out
    }

    fn simple_question(&self, pos: usize) -> Vec<Alt<Simple>> {
        let mut out: Vec<Alt<Simple>> = Vec::new();
        // yes/no
        out.extend(self.inverted(pos, Gap::None));
        // query word as subject, then with a fronted complement
        for q in self.np(pos, NpCtx::QUERY).iter() {
            if !q.val.query {
                continue;
            }
            if q.val.affix.case.contains(crate::lexicon::Case::Nom) {
                for vp in self.vp_finite(q.end, q.val.affix.agreement()).iter() {
                    let nodes = vec![subject(q.val.node.clone()), vp.val.node.clone()];
                    out.push(Alt::new(vp.end, q.prob * vp.prob, Simple { nodes }));
                }
            }
            let filler = Filler {
                node: q.val.node.clone(),
                kind: FillerKind::Np,
                person: q.val.person,
                span: (pos, q.end),
            };
            for a in self.inverted(q.end, Gap::Filled(Rc::new(filler))) {
                out.push(Alt { prob: a.prob * q.prob, ..a });
            }
        }
        // query adverb, or how + adjective filling the predicate
        for e in self.cat(pos, Category::QueryAdverb) {
            let pre = el(Tag::Circum, vec![leaf(Tag::CircumType, "adv"), typed(Tag::Adv, "query", self.disp(pos))]);
            for a in self.inverted(pos + 1, Gap::None) {
                let mut nodes = vec![pre.clone()];
                nodes.extend(a.val.nodes);
                out.push(Alt::new(a.end, a.prob * e.probability, Simple { nodes }));
            }
        }
        if self.is(pos, "how") {
            for adj in self.pred_adj_phrase(pos + 1) {
                let filler = Filler {
                    node: how_adj(adj.val),
                    kind: FillerKind::Adj,
                    person: false,
                    span: (pos, adj.end),
                };
                for a in self.inverted(adj.end, Gap::Filled(Rc::new(filler))) {
                    out.push(Alt { prob: a.prob * adj.prob, ..a });
                }
            }
        }
        out
    }

    /// Auxiliary, subject, rest of the verb phrase.
    fn inverted(&self, pos: usize, gap: Gap) -> Vec<Alt<Simple>> {
        let mut out = Vec::new();
        let is_aux = [Category::Modal, Category::Be, Category::Verb].into_iter().any(|c| {
            self.cat(pos, c)
                .iter()
                .any(|e| matches!(e.category, Category::Modal | Category::Be) || matches!(e.base_lemma(), "do" | "have"))
        });
        if !is_aux {
            return out;
        }
        for s in self.np(pos + 1, NpCtx::SUBJECT).iter() {
            if s.val.query {
                continue;
            }
            let req = VpReq {
                form: VForm::Finite,
                agree: s.val.affix.agreement(),
                gap: gap.clone(),
                fronted: Some(pos),
                coord: false,
                ..VpReq::default()
            };
            for vp in self.vp(s.end, &req).iter() {
                let nodes = vec![subject(s.val.node.clone()), vp.val.node.clone()];
                out.push(Alt::new(vp.end, s.prob * vp.prob, Simple { nodes }));
            }
        }
        out
    }

    fn simple_order(&self, pos: usize) -> Vec<Alt<Simple>> {
        let mut out = Vec::new();
        let (start, lead) = if self.is(pos, "please") { (pos + 1, true) } else { (pos, false) };
        let req = VpReq { form: VForm::Imperative, ..VpReq::default() };
        for (p, pre, prob) in self.pre_circs(start) {
            for vp in self.vp(p, &req).iter() {
                let mut nodes = Vec::new();
                if lead {
                    nodes.push(politeness());
                }
                nodes.extend(pre.iter().cloned());
                let base = prob * vp.prob;
                nodes.push(vp.val.node.clone());
                out.push(Alt::new(vp.end, base, Simple { nodes: nodes.clone() }));
                let comma = usize::from(self.is(vp.end, ","));
                if !lead && self.is(vp.end + comma, "please") {
                    let mut vp_node = vp.val.node.clone();
                    if let NlmlNode::Element(e) = &mut vp_node {
                        e.children.push(politeness());
                    }
                    *nodes.last_mut().expect("verb phrase") = vp_node;
                    out.push(Alt::new(vp.end + comma + 1, base, Simple { nodes }));
                }
            }
        }
        out
    }

    /// Full exclamations: `what` + noun predicate, `how` + adjective predicate,
    /// `how` + adverb, or an exclamative noun phrase as subject.
    pub(crate) fn exclamation(&self, pos: usize) -> Vec<Alt<Vec<NlmlNode>>> {
        let mut out = Vec::new();
        let clause = |p: usize, gap: Gap| -> Vec<Alt<Vec<NlmlNode>>> {
            let mut r = Vec::new();
            for s in self.np(p, NpCtx::SUBJECT).iter() {
                let req = VpReq { agree: s.val.affix.agreement(), gap: gap.clone(), coord: false, ..VpReq::default() };
                for vp in self.vp(s.end, &req).iter() {
                    r.push(Alt::new(vp.end, s.prob * vp.prob, vec![subject(s.val.node.clone()), vp.val.node.clone()]));
                }
            }
            r
        };
        for np in self.np(pos, NpCtx::EXCLAM.no_post()).iter() {
            let filler = Filler { node: np.val.node.clone(), kind: FillerKind::Np, person: false, span: (pos, np.end) };
            for c in clause(np.end, Gap::Filled(Rc::new(filler))) {
                out.push(Alt::new(c.end, np.prob * c.prob, c.val));
            }
        }
        if self.is(pos, "how") {
            for adj in self.pred_adj_phrase(pos + 1) {
                let filler = Filler { node: how_adj(adj.val), kind: FillerKind::Adj, person: false, span: (pos, adj.end) };
                for c in clause(adj.end, Gap::Filled(Rc::new(filler))) {
                    out.push(Alt::new(c.end, adj.prob * c.prob, c.val));
                }
            }
            for adv in self.adv_phrase(pos + 1, Position::Pre) {
                let circ = el(Tag::Circum, vec![leaf(Tag::CircumType, "adv"), how_adj(adv.val)]);
                for c in clause(adv.end, Gap::None) {
                    let mut nodes = vec![circ.clone()];
                    nodes.extend(c.val);
                    out.push(Alt::new(c.end, adv.prob * c.prob, nodes));
                }
            }
        }
        for np in self.np(pos, NpCtx::EXCLAM).iter() {
            for vp in self.vp_finite(np.end, np.val.affix.agreement()).iter() {
                out.push(Alt::new(vp.end, np.prob * vp.prob, vec![subject(np.val.node.clone()), vp.val.node.clone()]));
            }
        }
        out
    }

    fn subordinators(&self, pos: usize) -> Vec<String> {
        let mut out: Vec<String> = self.cat(pos, Category::Subordinator).iter().map(|e| e.surface.clone()).collect();
        out.dedup();
        out
    }

    fn first_simple(&self, pos: usize, kind: Kind, limit: usize) -> Option<Alt<Simple>> {
        self.simple(pos, kind).iter().find(|a| a.end == limit).cloned()
    }

    /// Subordinate clause first (`If S, main`) or last (`main if S`).
    fn complex(&self, pos: usize, kind: Kind, limit: usize, compound: bool) -> Option<Sentence> {
        for sub_word in self.subordinators(pos) {
            for sub in self.simple(pos + 1, Kind::Statement).iter() {
                let next = if self.is(sub.end, ",") { sub.end + 1 } else { sub.end };
                let head = vec![
                    leaf(Tag::Subordinator, &sub_word),
                    el(Tag::Sub, sub.val.nodes.clone()),
                ];
                if compound {
                    if let Some(c) = self.compound(next, kind, limit, Tag::CompleteSentence) {
                        let mut nodes = head;
                        nodes.extend(c.nodes);
                        return Some(Sentence { complexity: Complexity::CompoundComplex, nodes, prob: sub.prob * c.prob });
                    }
                } else if let Some(m) = self.first_simple(next, kind, limit) {
                    let mut nodes = head;
                    nodes.extend(m.val.nodes);
                    return Some(Sentence { complexity: Complexity::Complex, nodes, prob: sub.prob * m.prob });
                }
            }
        }
        if compound {
            return None;
        }
        for main in self.simple(pos, kind).iter() {
            let p = if self.is(main.end, ",") { main.end + 1 } else { main.end };
            for sub_word in self.subordinators(p) {
                if let Some(sub) = self.first_simple(p + 1, Kind::Statement, limit) {
                    let mut nodes = main.val.nodes.clone();
                    nodes.push(leaf(Tag::Subordinator, &sub_word));
                    nodes.push(el(Tag::Sub, sub.val.nodes));
                    return Some(Sentence { complexity: Complexity::Complex, nodes, prob: main.prob * sub.prob });
                }
            }
        }
        None
    }

    /// Coordinated simple sentences ending exactly at `limit`.
    fn compound(&self, pos: usize, kind: Kind, limit: usize, wrap: Tag) -> Option<Sentence> {
        let build = |parts: &[Alt<Simple>], conns: &[&str]| -> Sentence {
            let mut nodes: Vec<NlmlNode> = parts.iter().map(|p| el(wrap, p.val.nodes.clone())).collect();
            nodes.extend(conns.iter().map(|c| leaf(Tag::SentenceConnector, c)));
            let prob = parts.iter().map(|p| p.prob).product();
            Sentence { complexity: Complexity::Compound, nodes, prob }
        };
        if kind == Kind::Statement || kind == Kind::Order {
            // neither S, nor S / either S or S
            for (open, close) in [("neither", "nor"), ("either", "or")] {
                if kind == Kind::Order && open == "neither" {
                    continue;
                }
                if !self.is(pos, open) {
                    continue;
                }
                let second = if open == "neither" { Kind::Inverted } else { kind };
                for a in self.simple(pos + 1, kind).iter() {
                    let p = if self.is(a.end, ",") { a.end + 1 } else { a.end };
                    if !self.is(p, close) {
                        continue;
                    }
                    if let Some(b) = self.first_simple(p + 1, second, limit) {
                        return Some(build(&[a.clone(), b], &[open, close]));
                    }
                }
            }
        }
        if kind == Kind::Statement {
            for a in self.simple(pos, kind).iter() {
                let p = if self.is(a.end, ",") { a.end + 1 } else { a.end };
                if let Some(conn) = self.is_any(p, &["but", "so", "for", "yet"]) {
                    if let Some(b) = self.first_simple(p + 1, kind, limit) {
                        return Some(build(&[a.clone(), b], &[conn]));
                    }
                }
            }
        }
        // and/or lists
        let mut parts = Vec::new();
        let mut conns = Vec::new();
        if self.and_or(pos, kind, limit, &mut parts, &mut conns) {
            return Some(build(&parts, &conns));
        }
        None
    }

    fn and_or(
        &self,
        pos: usize,
        kind: Kind,
        limit: usize,
        parts: &mut Vec<Alt<Simple>>,
        conns: &mut Vec<&'static str>,
    ) -> bool {
        if parts.len() >= 5 {
            return false;
        }
        for a in self.simple(pos, kind).iter() {
            let mut seps: Vec<(usize, &'static str, bool)> = Vec::new();
            if self.is(a.end, ",") {
                match self.is_any(a.end + 1, &["and", "or"]) {
                    Some(w) => seps.push((a.end + 2, w, true)),
                    None => seps.push((a.end + 1, ",", false)),
                }
            }
            if let Some(w) = self.is_any(a.end, &["and", "or"]) {
                seps.push((a.end + 1, w, true));
            }
            for (next, conn, last) in seps {
                parts.push(a.clone());
                conns.push(conn);
                if last {
                    if let Some(b) = self.first_simple(next, kind, limit) {
                        parts.push(b);
                        return true;
                    }
                } else if self.and_or(next, kind, limit, parts, conns) {
                    return true;
                }
                parts.pop();
                conns.pop();
            }
        }
        false
    }

    /// The max-matching cascade for one sentence kind.
    pub(crate) fn sentence(&self, kind: Kind, limit: usize) -> Option<Sentence> {
        if limit == 0 {
            return None;
        }
        let wrap = Tag::SimpleSentence;
        self.complex(0, kind, limit, true)
            .or_else(|| self.compound(0, kind, limit, wrap))
            .or_else(|| self.complex(0, kind, limit, false))
            .or_else(|| {
                self.first_simple(0, kind, limit).map(|s| Sentence {
                    complexity: Complexity::Simple,
                    nodes: s.val.nodes,
                    prob: s.prob,
                })
            })
    }

    /// End of content when the input ends in one of `marks` (or no mark).
    pub(crate) fn limit_for(&self, marks: &[&str]) -> Option<usize> {
        let n = self.len();
        match self.word(n.checked_sub(1)?) {
            Some(w) if marks.contains(&w) => Some(n - 1),
            Some("." | "?" | "!" | ",") => None,
            _ => Some(n),
        }
    }
}

/// Prefixes an exclamative or query `how` to an adjective or adverb element.
fn how_adj(n: NlmlNode) -> NlmlNode {
    match n {
        NlmlNode::Element(mut e) => {
            e.children.insert(0, typed(Tag::Adv, "exclamative", "how"));
            NlmlNode::Element(e)
        }
        other => other,
    }
}

pub(crate) fn document(mood: Mood, rest: Vec<NlmlNode>) -> NlmlDocument {
    let mut nodes = vec![leaf(Tag::Mood, mood.as_str())];
    nodes.extend(rest);
    NlmlDocument::new(nodes)
}

fn sentence_result(p: &Parser, mood: Mood, kind: Kind, marks: &[&str], rule: u8) -> Result<ParseResult, GrammarError> {
    let limit = p.limit_for(marks).ok_or_else(|| p.no_parse())?;
    let s = p.sentence(kind, limit).ok_or_else(|| p.no_parse())?;
    let mut rest = vec![leaf(Tag::Complexity, s.complexity.as_str())];
    rest.extend(s.nodes);
    Ok(ParseResult { document: document(mood, rest), penalty: 0, probability: s.prob, rule })
}

pub fn parse_statement(tokens: &TokenStream, lex: &Lexicon) -> Result<ParseResult, GrammarError> {
    sentence_result(&Parser::new(tokens, lex), Mood::Statement, Kind::Statement, &["."], 1)
}

pub fn parse_question(tokens: &TokenStream, lex: &Lexicon) -> Result<ParseResult, GrammarError> {
    sentence_result(&Parser::new(tokens, lex), Mood::Question, Kind::Question, &["?"], 2)
}

pub fn parse_order(tokens: &TokenStream, lex: &Lexicon) -> Result<ParseResult, GrammarError> {
    sentence_result(&Parser::new(tokens, lex), Mood::Order, Kind::Order, ORDER_MARKS, 3)
}

pub fn parse_exclamation(tokens: &TokenStream, lex: &Lexicon) -> Result<ParseResult, GrammarError> {
    let p = Parser::new(tokens, lex);
    exclamation_result(&p)
}

pub(crate) fn exclamation_result(p: &Parser) -> Result<ParseResult, GrammarError> {
    let limit = p.limit_for(&["!"]).ok_or_else(|| p.no_parse())?;
    let a = p
        .exclamation(0)
        .into_iter()
        .find(|a| a.end == limit && limit > 0)
        .ok_or_else(|| p.no_parse())?;
    let mut rest = vec![leaf(Tag::Complexity, Complexity::Simple.as_str())];
    rest.extend(a.val);
    Ok(ParseResult { document: document(Mood::FullExclamation, rest), penalty: 0, probability: a.prob, rule: 4 })
}

pub fn parse_simple_sentence(tokens: &TokenStream, lex: &Lexicon) -> Result<ParseResult, GrammarError> {
    let p = Parser::new(tokens, lex);
    let limit = p.limit_for(&["."]).ok_or_else(|| p.no_parse())?;
    let s = p.first_simple(0, Kind::Statement, limit).ok_or_else(|| p.no_parse())?;
    let mut rest = vec![leaf(Tag::Complexity, Complexity::Simple.as_str())];
    rest.extend(s.val.nodes);
    Ok(ParseResult { document: document(Mood::Statement, rest), penalty: 0, probability: s.prob, rule: 1 })
}

pub(crate) fn sentence_with(p: &Parser, rule: u8) -> Result<ParseResult, GrammarError> {
    match rule {
        1 => sentence_result(p, Mood::Statement, Kind::Statement, &["."], 1),
        2 => sentence_result(p, Mood::Question, Kind::Question, &["?"], 2),
        3 => sentence_result(p, Mood::Order, Kind::Order, ORDER_MARKS, 3),
        _ => exclamation_result(p),
    }
}
