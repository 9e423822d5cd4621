//! Adjective and adverb phrases, prepositional phrases and circumstances.

use super::noun::{ClauseRole, NpCtx};
use super::parser::{el, leaf, typed, Alt, Parser};
use super::sentence::Kind;
use super::verb::{VForm, VpReq};
use super::Position;
use crate::lexicon::{Category, Dimension, Grade, LexEntry, Tense};
use crate::nlml::{NlmlNode, Tag};

/// Degree modifiers in front of `pos`, as nodes, with every prefix length.
struct Mods {
    end: usize,
    nodes: Vec<NlmlNode>,
    words: Vec<String>,
}

impl<'a> Parser<'a> {
    fn degree_mods(&self, pos: usize) -> Vec<Mods> {
        let mut out = vec![Mods { end: pos, nodes: Vec::new(), words: Vec::new() }];
        let mut p = pos;
        while p < pos + 2 && self.cat(p, Category::Adverb).iter().any(|e| e.sem_is("degree")) {
            let prev = out.last().expect("non-empty");
            let mut nodes = prev.nodes.clone();
            nodes.push(typed(Tag::Adv, "degree", self.disp(p)));
            let mut words = prev.words.clone();
            words.push(self.disp(p).to_string());
            p += 1;
            out.push(Mods { end: p, nodes, words });
        }
        out.reverse();
        out
    }

    fn grade_of(e: &LexEntry) -> Grade {
        e.affixes.grade.single().unwrap_or(Grade::Absolute)
    }

    pub(crate) fn attr_adj(&self, pos: usize) -> Vec<Alt<NlmlNode>> {
        let mut out = Vec::new();
        for m in self.degree_mods(pos) {
            for (cat, ty) in [(Category::AdjectiveAttr, "attribute"), (Category::AdjectiveNormal, "normal")] {
                for e in self.cat(m.end, cat) {
                    let mut c = m.nodes.clone();
                    c.push(leaf(Tag::Type, ty));
                    c.push(leaf(Tag::Word, self.disp(m.end)));
                    c.push(leaf(Tag::Grade, Self::grade_of(e).as_str()));
                    out.push(Alt::new(m.end + 1, e.probability, el(Tag::Adj, c)));
                }
            }
        }
        out
    }

    /// Predicative adjective phrase, possibly coordinated.
    pub(crate) fn pred_adj_phrase(&self, pos: usize) -> Vec<Alt<NlmlNode>> {
        let mut out = self.pred_adj(pos);
        let firsts = out.clone();
        for a in firsts {
            let Some(conn) = self.is_any(a.end, &["and", "or", "but"]) else { continue };
            for b in self.pred_adj(a.end + 1) {
                let c = vec![
                    el(Tag::Part, children(&a.val)),
                    leaf(Tag::PartConnector, conn),
                    el(Tag::Part, children(&b.val)),
                ];
                out.push(Alt::new(b.end, a.prob * b.prob, el(Tag::Adj, c)));
            }
        }
        out
    }

    fn pred_adj(&self, pos: usize) -> Vec<Alt<NlmlNode>> {
        let mut out = Vec::new();
        for m in self.degree_mods(pos) {
            let p = m.end;
            let mut kernels: Vec<(&str, Grade, f64, u32)> = Vec::new();
            for (cat, ty) in [(Category::AdjectivePred, "predicate"), (Category::AdjectiveNormal, "normal")] {
                for e in self.cat(p, cat) {
                    let g = match Self::grade_of(e) {
                        Grade::Absolute => Grade::Predicative,
                        g => g,
                    };
                    kernels.push((ty, g, e.probability, 0));
                }
            }
            if kernels.is_empty() {
                for e in self.cat(p, Category::Verb) {
                    let t = e.affixes.tense;
                    if t.contains(Tense::PresentParticiple) || t.contains(Tense::PastParticiple) {
                        kernels.push(("participle", Grade::Predicative, e.probability, 2));
                        break;
                    }
                }
            }
            for (ty, grade, prob, pen) in kernels {
                let mut head = m.nodes.clone();
                head.push(leaf(Tag::Type, ty));
                head.push(leaf(Tag::Word, self.disp(p)));
                head.push(leaf(Tag::Grade, grade.as_str()));
                for c in self.graded_complements(p + 1, &m.words, grade) {
                    let mut kids = head.clone();
                    kids.extend(c.val);
                    let mut a = Alt::new(c.end, prob * c.prob, el(Tag::Adj, kids));
                    a.pen = pen;
                    out.push(a);
                }
                if ty != "participle" {
                    for pp in self.prep_phrase(p + 1, NpCtx::OBJECT) {
                        let mut kids = head.clone();
                        kids.push(pp.val);
                        out.push(Alt::new(pp.end, prob * pp.prob, el(Tag::Adj, kids)));
                    }
                }
            }
        }
        out
    }

    /// Complements licensed by a degree word or grade: `so .. that`, `too .. to`,
    /// `.. enough to`, `as .. as`, comparative `than`. Includes the empty complement.
    fn graded_complements(&self, p: usize, mods: &[String], grade: Grade) -> Vec<Alt<Vec<NlmlNode>>> {
        let mut out = vec![Alt::new(p, 1.0, Vec::new())];
        let has = |w: &str| mods.iter().any(|m| m == w);
        let nc = |ty: &str, word: &str, rest: Vec<NlmlNode>| {
            let mut c = vec![leaf(Tag::Type, ty), leaf(Tag::Word, word)];
            c.extend(rest);
            el(Tag::NounClause, c)
        };
        let inf = VpReq { form: VForm::Infinitive, coord: false, ..VpReq::default() };
        if has("so") && self.is(p, "that") {
            for c in self.simple(p + 1, Kind::Statement).iter() {
                out.push(Alt::new(c.end, c.prob, vec![nc("result", "that", c.val.nodes.clone())]));
            }
        }
        if has("too") && self.is(p, "to") {
            for vp in self.vp(p + 1, &inf).iter() {
                out.push(Alt::new(vp.end, vp.prob, vec![nc("infinitive", "to", vec![vp.val.node.clone()])]));
            }
        }
        if self.is(p, "enough") && self.is(p + 1, "to") {
            for vp in self.vp(p + 2, &inf).iter() {
                let nodes = vec![typed(Tag::Adv, "degree", "enough"), nc("infinitive", "to", vec![vp.val.node.clone()])];
                out.push(Alt::new(vp.end, vp.prob, nodes));
            }
        }
        let mut compare = |prep: &str| {
            if self.is(p, prep) {
                for np in self.np(p + 1, NpCtx::FULL.no_post()).iter() {
                    let pp = el(Tag::PrepPhrase, vec![leaf(Tag::Prep, prep), np.val.node.clone()]);
                    out.push(Alt::new(np.end, np.prob, vec![pp]));
                }
            }
        };
        if grade == Grade::Comparative || has("more") {
            compare("than");
        }
        if has("as") {
            compare("as");
        }
        out
    }

    /// Adverb phrase with optional degree modifiers and graded complement.
    pub(crate) fn adv_phrase(&self, pos: usize, position: Position) -> Vec<Alt<NlmlNode>> {
        let mut out = Vec::new();
        for m in self.degree_mods(pos) {
            let p = m.end;
            for e in self.cat(p, Category::Adverb) {
                let sem = e.sem.as_deref().unwrap_or("manner");
                if sem == "politeness" || (sem == "degree" && (m.nodes.is_empty() || e.surface != "much")) {
                    continue;
                }
                let grade = e.affixes.grade.single().unwrap_or(Grade::Absolute);
                let mut head = m.nodes.clone();
                head.push(leaf(Tag::Type, sem));
                head.push(leaf(Tag::Word, self.disp(p)));
                let comps = if position == Position::Post {
                    self.graded_complements(p + 1, &m.words, grade)
                } else {
                    vec![Alt::new(p + 1, 1.0, Vec::new())]
                };
                for c in comps {
                    let mut kids = head.clone();
                    kids.extend(c.val);
                    out.push(Alt::new(c.end, e.probability * c.prob, el(Tag::Adv, kids)));
                }
            }
        }
        out
    }

    pub(crate) fn circumstance(&self, pos: usize, position: Position) -> Vec<Alt<NlmlNode>> {
        let circ = |ty: &str, n: NlmlNode| el(Tag::Circum, vec![leaf(Tag::CircumType, ty), n]);
        let mut out = Vec::new();
        for a in self.adv_phrase(pos, position) {
            out.push(a.map(|n| circ("adv", n)));
        }
        for pp in self.prep_phrase(pos, NpCtx::OBJECT) {
            out.push(pp.map(|n| circ("prep", n)));
        }
        if position != Position::Mid {
            let ing = VpReq { form: VForm::PresentParticiple, coord: false, ..VpReq::default() };
            for vp in self.vp(pos, &ing).iter() {
                if !vp.val.bare {
                    let nc = el(Tag::NounClause, vec![leaf(Tag::Type, "present participle"), vp.val.node.clone()]);
                    out.push(Alt::new(vp.end, vp.prob, circ("participle", nc)));
                }
            }
        }
        if position == Position::Post && self.is(pos, "to") {
            let inf = VpReq { form: VForm::Infinitive, coord: false, ..VpReq::default() };
            for vp in self.vp(pos + 1, &inf).iter() {
                let nc = el(Tag::NounClause, vec![leaf(Tag::Type, "infinitive"), leaf(Tag::Word, "to"), vp.val.node.clone()]);
                out.push(Alt::new(vp.end, vp.prob, circ("infinitive", nc)));
            }
        }
        out
    }

    pub(crate) fn prep_phrase(&self, pos: usize, ctx: NpCtx) -> Vec<Alt<NlmlNode>> {
        let mut preps: Vec<(usize, String, f64)> = Vec::new();
        for e in self.cat(pos, Category::Preposition) {
            if e.surface != "than" {
                preps.push((pos + 1, self.disp(pos).to_string(), e.probability));
            }
        }
        for (e, end) in self.phrases(pos, Category::Preposition) {
            preps.push((end, e.surface.clone(), e.probability));
        }
        let mut out = Vec::new();
        for (p, prep, prob) in preps {
            for np in self.np(p, ctx).iter() {
                let node = el(Tag::PrepPhrase, vec![leaf(Tag::Prep, &prep), np.val.node.clone()]);
                out.push(Alt::new(np.end, prob * np.prob, node));
            }
            for nc in self.noun_clause(p, ClauseRole::PrepObject) {
                let node = el(Tag::PrepPhrase, vec![leaf(Tag::Prep, &prep), nc.val]);
                let mut a = Alt::new(nc.end, prob * nc.prob, node);
                a.pen = 1;
                out.push(a);
            }
        }
        out
    }
}

fn children(n: &NlmlNode) -> Vec<NlmlNode> {
    n.as_element().map(|e| e.children.clone()).unwrap_or_default()
}
