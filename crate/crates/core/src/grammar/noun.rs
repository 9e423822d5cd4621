//! Noun phrases, relative clauses and noun clauses.

use std::rc::Rc;

use super::parser::{el, leaf, typed, Alt, Parser};
use super::sentence::Kind;
use super::verb::{Gap, VForm, VpReq};
use crate::lexicon::{unify, AffixValue, Case, Category, Number, Person, ValueSet};
use crate::nlml::{NlmlNode, Tag};

/// Restrictions on a noun phrase at a given site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct NpCtx {
    pub case: Option<Case>,
    /// Query pronouns and determiners allowed.
    pub query: bool,
    /// Must open with exclamative `what`.
    pub exclam: bool,
    /// Prepositional post-modifiers allowed.
    pub post: bool,
    /// Relative clauses allowed.
    pub rel: bool,
    pub coord: bool,
}

impl NpCtx {
    pub const FULL: NpCtx =
        NpCtx { case: None, query: false, exclam: false, post: true, rel: true, coord: true };
    pub const SUBJECT: NpCtx = NpCtx { case: Some(Case::Nom), ..NpCtx::FULL };
    pub const OBJECT: NpCtx = NpCtx { case: Some(Case::Dat), ..NpCtx::FULL };
    /// A plain noun phrase inside a relative or noun clause.
    pub const INNER_SUBJECT: NpCtx =
        NpCtx { case: Some(Case::Nom), query: false, exclam: false, post: false, rel: false, coord: true };
    pub const QUERY: NpCtx =
        NpCtx { case: None, query: true, exclam: false, post: false, rel: false, coord: false };
    pub const EXCLAM: NpCtx =
        NpCtx { case: None, query: false, exclam: true, post: true, rel: false, coord: false };

    pub fn no_post(self) -> NpCtx {
        NpCtx { post: false, ..self }
    }

    fn case_set(self) -> ValueSet<Case> {
        self.case.map(ValueSet::only).unwrap_or_else(ValueSet::full)
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Np {
    /// The `<noun>` element.
    pub node: NlmlNode,
    pub affix: AffixValue,
    pub query: bool,
    /// Refers to a person (`who`, `whom`).
    pub person: bool,
}

#[derive(Debug, Clone)]
struct Part {
    pre: Vec<NlmlNode>,
    ty: String,
    word: String,
    affix: AffixValue,
    post: Vec<NlmlNode>,
    query: bool,
    person: bool,
    modifiable: bool,
}

impl Part {
    fn children(&self) -> Vec<NlmlNode> {
        let mut out = self.pre.clone();
        out.push(leaf(Tag::Type, &self.ty));
        out.push(leaf(Tag::Word, &self.word));
        out.extend(agreement_leaves(self.affix));
        out.extend(self.post.iter().cloned());
        out
    }
}

pub(crate) fn agreement_leaves(a: AffixValue) -> Vec<NlmlNode> {
    vec![
        leaf(Tag::Numb, &a.number.to_string()),
        leaf(Tag::Pers, &a.person.to_string()),
        leaf(Tag::Case, &a.case.to_string()),
    ]
}

/// Sites a noun clause can fill.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ClauseRole {
    Subject,
    Object,
    Predicate,
    PrepObject,
}

impl<'a> Parser<'a> {
    pub(crate) fn np(&self, pos: usize, ctx: NpCtx) -> Rc<Vec<Alt<Np>>> {
        self.memo(&self.np_memo, (pos, ctx), || {
            let mut out: Vec<Alt<Np>> = self
                .np_parts(pos, ctx)
                .into_iter()
                .map(|a| {
                    a.map(|p| Np {
                        node: el(Tag::Noun, p.children()),
                        affix: p.affix,
                        query: p.query,
                        person: p.person,
                    })
                })
                .collect();
            if ctx.coord && !ctx.exclam {
                self.coordinated(pos, ctx, &mut out);
            }
            out
        })
    }

    fn np_parts(&self, pos: usize, ctx: NpCtx) -> Vec<Alt<Part>> {
        let case = ctx.case_set();
        let mut bare: Vec<Alt<Part>> = Vec::new();
        let plain = |ty: &str, word: &str, affix: AffixValue| Part {
            pre: Vec::new(),
            ty: ty.to_string(),
            word: word.to_string(),
            affix,
            post: Vec::new(),
            query: false,
            person: false,
            modifiable: false,
        };
        if !ctx.exclam {
            for e in self.cat(pos, Category::PersPronoun) {
                if let Ok(a) = unify(e.affixes, AffixValue::unconstrained().with_case(case)) {
                    bare.push(Alt::new(pos + 1, e.probability, plain("perspronoun", self.disp(pos), a)));
                }
            }
            if ctx.query {
                for e in self.cat(pos, Category::QueryPronoun) {
                    if let Ok(a) = unify(e.affixes, AffixValue::unconstrained().with_case(case)) {
                        let mut p = plain("query", self.disp(pos), a);
                        p.query = true;
                        p.person = e.sem_is("person");
                        bare.push(Alt::new(pos + 1, e.probability, p));
                    }
                }
            }
            for e in self.cat(pos, Category::Demonstrative) {
                let a = e.affixes.with_case(case);
                let mut p = plain("pronoun", self.disp(pos), a);
                p.modifiable = true;
                bare.push(Alt::new(pos + 1, e.probability, p));
            }
        }
        bare.extend(self.full_parts(pos, ctx));
        let mut out = Vec::new();
        for alt in bare {
            if alt.val.modifiable && (ctx.post || ctx.rel) {
                for (end, post, prob) in self.post_modifiers(alt.end, alt.val.affix, ctx) {
                    let mut p = alt.val.clone();
                    p.post = post;
                    out.push(Alt::new(end, alt.prob * prob, p));
                }
            } else {
                out.push(alt);
            }
        }
        out
    }

    /// Determiner, attribute adjectives, noun modifier and kernel noun.
    fn full_parts(&self, pos: usize, ctx: NpCtx) -> Vec<Alt<Part>> {
        struct St {
            p: usize,
            pre: Vec<NlmlNode>,
            affix: AffixValue,
            prob: f64,
            query: bool,
            exclam: bool,
            det: bool,
        }
        let start = St {
            p: pos,
            pre: Vec::new(),
            affix: AffixValue::unconstrained().with_case(ctx.case_set()),
            prob: 1.0,
            query: false,
            exclam: false,
            det: false,
        };
        let mut heads = Vec::new();
        if ctx.exclam {
            if !self.is(pos, "what") {
                return Vec::new();
            }
            heads.push(St {
                p: pos + 1,
                pre: vec![typed(Tag::Adj, "exclamative", "what")],
                exclam: true,
                ..start
            });
        } else {
            heads.push(start);
        }

        // determiners
        let mut states = Vec::new();
        for h in heads {
            let p = h.p;
            let mut dets: Vec<(NlmlNode, AffixValue, f64, bool)> = Vec::new();
            for e in self.cat(p, Category::Article) {
                let ty = e.sem.as_deref().unwrap_or("article");
                let ty = if ty == "possessive" { "possessive" } else { "article" };
                dets.push((typed(Tag::Adj, ty, self.disp(p)), e.affixes.agreement(), e.probability, false));
            }
            if !h.exclam {
                for e in self.cat(p, Category::Demonstrative) {
                    dets.push((typed(Tag::Adj, "demonstrative", self.disp(p)), e.affixes.agreement(), e.probability, false));
                }
                for e in self.cat(p, Category::NumberWord) {
                    dets.push((typed(Tag::Adj, "number", self.disp(p)), e.affixes.agreement(), e.probability, false));
                }
                if ctx.query {
                    for e in self.cat(p, Category::QueryPronoun) {
                        if e.sem_is("thing") {
                            dets.push((typed(Tag::Adj, "query", self.disp(p)), e.affixes.agreement(), e.probability, true));
                        }
                    }
                }
            }
            for (node, affix, prob, query) in dets {
                if let Ok(a) = unify(h.affix, affix) {
                    let mut pre = h.pre.clone();
                    pre.push(node);
                    states.push(St { p: p + 1, pre, affix: a, prob: h.prob * prob, query, exclam: h.exclam, det: true });
                }
            }
            states.push(h);
        }

        // attribute adjectives, then an optional noun modifier
        let mut expanded = Vec::new();
        while let Some(s) = states.pop() {
            for adj in self.attr_adj(s.p) {
                let mut pre = s.pre.clone();
                pre.push(adj.val);
                states.push(St { p: adj.end, pre, prob: s.prob * adj.prob, ..s });
            }
            for e in self.cat(s.p, Category::Noun) {
                if e.sem_is("common") && self.has_cat(s.p + 1, Category::Noun) {
                    let mut pre = s.pre.clone();
                    pre.push(typed(Tag::Adj, "noun", self.disp(s.p)));
                    expanded.push(St { p: s.p + 1, pre, prob: s.prob * e.probability, ..s });
                }
            }
            expanded.push(s);
        }

        let mut out = Vec::new();
        for s in expanded {
            for e in self.cat(s.p, Category::Noun) {
                if e.sem_is("proper") && s.det {
                    continue;
                }
                let Ok(affix) = unify(s.affix, e.affixes) else { continue };
                let part = Part {
                    pre: s.pre.clone(),
                    ty: e.sem.clone().unwrap_or_else(|| "common".into()),
                    word: self.disp(s.p).to_string(),
                    affix,
                    post: Vec::new(),
                    query: s.query,
                    person: false,
                    modifiable: true,
                };
                out.push(Alt::new(s.p + 1, s.prob * e.probability, part));
            }
        }
        out
    }

    /// Prepositional phrases then at most one relative clause.
    fn post_modifiers(&self, pos: usize, head: AffixValue, ctx: NpCtx) -> Vec<(usize, Vec<NlmlNode>, f64)> {
        let mut done = vec![(pos, Vec::new(), 1.0)];
        if ctx.post {
            let mut frontier = vec![(pos, Vec::new(), 1.0)];
            for _ in 0..2 {
                let mut next = Vec::new();
                for (p, nodes, prob) in &frontier {
                    for pp in self.prep_phrase(*p, NpCtx::OBJECT.no_post()) {
                        let mut n: Vec<NlmlNode> = nodes.clone();
                        n.push(pp.val);
                        next.push((pp.end, n, prob * pp.prob));
                    }
                }
                done.extend(next.iter().cloned());
                frontier = next;
            }
        }
        if ctx.rel {
            let mut with_rel = Vec::new();
            for (p, nodes, prob) in &done {
                for rc in self.relative_clause(*p, head) {
                    let mut n = nodes.clone();
                    n.push(rc.val);
                    with_rel.push((rc.end, n, prob * rc.prob));
                }
            }
            done.extend(with_rel);
        }
        done.sort_by_key(|a| std::cmp::Reverse(a.0));
        done
    }

    fn coordinated(&self, pos: usize, ctx: NpCtx, out: &mut Vec<Alt<Np>>) {
        let inner = NpCtx { coord: false, ..ctx };
        let paired = [("both", "and", "both_and"), ("neither", "nor", "neither_nor"), ("either", "or", "either_or")];
        for (open, close, conn) in paired {
            if !self.is(pos, open) {
                continue;
            }
            for a in self.np_parts(pos + 1, inner) {
                if !self.is(a.end, close) {
                    continue;
                }
                for b in self.np_parts(a.end + 1, inner) {
                    let parts = vec![a.val.clone(), b.val.clone()];
                    if let Some(np) = join(&parts, &[conn.to_string()], conn == "both_and") {
                        out.push(Alt::new(b.end, a.prob * b.prob, np));
                    }
                }
            }
        }
        // A, B and C
        struct Chain {
            end: usize,
            parts: Vec<Part>,
            conns: Vec<String>,
            prob: f64,
        }
        let mut frontier: Vec<Chain> = self
            .np_parts(pos, inner)
            .into_iter()
            .map(|a| Chain { end: a.end, parts: vec![a.val], conns: Vec::new(), prob: a.prob })
            .collect();
        while let Some(c) = frontier.pop() {
            if c.parts.len() >= 4 {
                continue;
            }
            let mut seps: Vec<(usize, String, bool)> = Vec::new();
            if self.is(c.end, ",") {
                match self.is_any(c.end + 1, &["and", "or"]) {
                    Some(w) => seps.push((c.end + 2, w.to_string(), true)),
                    None => seps.push((c.end + 1, ",".to_string(), false)),
                }
            }
            if let Some(w) = self.is_any(c.end, &["and", "or"]) {
                seps.push((c.end + 1, w.to_string(), true));
            }
            for (next, conn, last) in seps {
                for b in self.np_parts(next, inner) {
                    let mut parts = c.parts.clone();
                    parts.push(b.val);
                    let mut conns = c.conns.clone();
                    conns.push(conn.clone());
                    if last {
                        if let Some(np) = join(&parts, &conns, conn == "and") {
                            out.push(Alt::new(b.end, c.prob * b.prob, np));
                        }
                    } else {
                        frontier.push(Chain { end: b.end, parts, conns, prob: c.prob * b.prob });
                    }
                }
            }
        }
    }

    pub(crate) fn relative_clause(&self, pos: usize, head: AffixValue) -> Vec<Alt<NlmlNode>> {
        let mut out = Vec::new();
        let head = head.agreement();
        let rc = |ty: &str, mut rest: Vec<NlmlNode>| {
            let mut children = vec![leaf(Tag::Type, ty)];
            children.append(&mut rest);
            el(Tag::RelativeClause, children)
        };
        if let Some(r) = self.is_any(pos, &["who", "which", "that"]) {
            let req = VpReq { form: VForm::Finite, agree: head, ..VpReq::default() };
            for vp in self.vp(pos + 1, &req).iter() {
                out.push(Alt::new(vp.end, vp.prob, rc("full", vec![leaf(Tag::Word, r), vp.val.node.clone()])));
            }
        }
        let rel_word = self.is_any(pos, &["whom", "which", "that", "who"]);
        let starts: Vec<(usize, Option<&str>)> = match rel_word {
            Some(r) => vec![(pos + 1, Some(r)), (pos, None)],
            None => vec![(pos, None)],
        };
        for (start, r) in starts {
            let person = matches!(r, Some("who" | "whom"));
            for c in self.gapped_clause(start, Gap::Empty { person }) {
                let mut rest: Vec<NlmlNode> = r.map(|w| leaf(Tag::Word, w)).into_iter().collect();
                rest.extend(c.val);
                out.push(Alt::new(c.end, c.prob, rc("full", rest)));
            }
        }
        if self.is(pos, "to") {
            let req = VpReq { form: VForm::Infinitive, gap: Gap::Empty { person: false }, optional_gap: true, ..VpReq::default() };
            for vp in self.vp(pos + 1, &req).iter() {
                out.push(Alt::new(vp.end, vp.prob, rc("infinitive", vec![leaf(Tag::Word, "to"), vp.val.node.clone()])));
            }
        }
        for (form, ty) in [(VForm::PresentParticiple, "present participle"), (VForm::PastParticiple, "past participle")] {
            let req = VpReq { form, coord: false, ..VpReq::default() };
            for vp in self.vp(pos, &req).iter() {
                if !vp.val.bare {
                    out.push(Alt::new(vp.end, vp.prob, rc(ty, vec![vp.val.node.clone()])));
                }
            }
        }
        out
    }

    /// Subject and verb phrase with one constituent missing.
    pub(crate) fn gapped_clause(&self, pos: usize, gap: Gap) -> Vec<Alt<Vec<NlmlNode>>> {
        let mut out = Vec::new();
        for s in self.np(pos, NpCtx::INNER_SUBJECT).iter() {
            let req = VpReq { form: VForm::Finite, agree: s.val.affix.agreement(), gap: gap.clone(), ..VpReq::default() };
            for vp in self.vp(s.end, &req).iter() {
                if vp.val.gap_used {
                    let nodes = vec![el(Tag::Subject, vec![s.val.node.clone()]), vp.val.node.clone()];
                    out.push(Alt::new(vp.end, s.prob * vp.prob, nodes));
                }
            }
        }
        out
    }

    pub(crate) fn noun_clause(&self, pos: usize, role: ClauseRole) -> Vec<Alt<NlmlNode>> {
        let mut out = Vec::new();
        let nc = |ty: &str, words: &[&str], rest: Vec<NlmlNode>| {
            let mut children = vec![leaf(Tag::Type, ty)];
            children.extend(words.iter().map(|w| leaf(Tag::Word, w)));
            children.extend(rest);
            el(Tag::NounClause, children)
        };
        let clause = |p: usize| self.simple(p, Kind::Statement);

        if role != ClauseRole::PrepObject {
            if self.is(pos, "that") {
                for c in clause(pos + 1).iter() {
                    out.push(Alt::new(c.end, c.prob, nc("that", &["that"], c.val.nodes.clone())));
                }
            }
            if let Some(w) = self.is_any(pos, &["whether", "if"]) {
                if w == "whether" || role == ClauseRole::Object {
                    for c in clause(pos + 1).iter() {
                        out.push(Alt::new(c.end, c.prob, nc("whether", &[w], c.val.nodes.clone())));
                    }
                }
            }
            if role == ClauseRole::Object {
                for c in clause(pos).iter() {
                    let mut a = Alt::new(c.end, c.prob, nc("that", &[], c.val.nodes.clone()));
                    a.pen = 1;
                    out.push(a);
                }
            }
        }

        // query clauses
        for e in self.cat(pos, Category::QueryPronoun) {
            let q = self.disp(pos);
            let req = VpReq { form: VForm::Finite, agree: e.affixes.agreement(), ..VpReq::default() };
            if e.affixes.case.contains(Case::Nom) {
                for vp in self.vp(pos + 1, &req).iter() {
                    out.push(Alt::new(vp.end, e.probability * vp.prob, nc("query", &[q], vec![vp.val.node.clone()])));
                }
            }
            for c in self.gapped_clause(pos + 1, Gap::Empty { person: e.sem_is("person") }) {
                out.push(Alt::new(c.end, e.probability * c.prob, nc("query", &[q], c.val)));
            }
        }
        for e in self.cat(pos, Category::QueryAdverb) {
            let q = self.disp(pos);
            for c in clause(pos + 1).iter() {
                out.push(Alt::new(c.end, e.probability * c.prob, nc("query", &[q], c.val.nodes.clone())));
            }
        }
        if (self.has_cat(pos, Category::QueryAdverb) || self.has_cat(pos, Category::QueryPronoun))
            && self.is(pos + 1, "to")
        {
            let q = self.disp(pos).to_string();
            let req = VpReq { form: VForm::Infinitive, gap: Gap::Empty { person: false }, optional_gap: true, ..VpReq::default() };
            for vp in self.vp(pos + 2, &req).iter() {
                out.push(Alt::new(vp.end, vp.prob, nc("query infinitive", &[&q, "to"], vec![vp.val.node.clone()])));
            }
        }

        // non-finite clauses
        let inf = VpReq { form: VForm::Infinitive, ..VpReq::default() };
        let ing = VpReq { form: VForm::PresentParticiple, ..VpReq::default() };
        if role != ClauseRole::PrepObject {
            if self.is(pos, "to") {
                for vp in self.vp(pos + 1, &inf).iter() {
                    out.push(Alt::new(vp.end, vp.prob, nc("infinitive", &["to"], vec![vp.val.node.clone()])));
                }
            }
            if self.is(pos, "not") && self.is(pos + 1, "to") {
                for vp in self.vp(pos + 2, &inf).iter() {
                    out.push(Alt::new(vp.end, vp.prob, nc("negative infinitive", &["not", "to"], vec![vp.val.node.clone()])));
                }
            }
        }
        for vp in self.vp(pos, &ing).iter() {
            out.push(Alt::new(vp.end, vp.prob, nc("gerund", &[], vec![vp.val.node.clone()])));
        }
        if self.is(pos, "not") {
            for vp in self.vp(pos + 1, &ing).iter() {
                out.push(Alt::new(vp.end, vp.prob, nc("negative gerund", &["not"], vec![vp.val.node.clone()])));
            }
        }
        for e in self.cat(pos, Category::Article) {
            if e.sem_is("possessive") {
                for vp in self.vp(pos + 1, &ing).iter() {
                    let poss = typed(Tag::Adj, "possessive", self.disp(pos));
                    out.push(Alt::new(vp.end, vp.prob, nc("possessive gerund", &[], vec![poss, vp.val.node.clone()])));
                }
            }
        }
        out
    }
}

/// Combines coordinated parts; `additive` connectors make a plural.
fn join(parts: &[Part], conns: &[String], additive: bool) -> Option<Np> {
    let last = parts.last()?;
    let mut case = ValueSet::<Case>::full();
    for p in parts {
        case = case.intersect(p.affix.case);
    }
    if case.is_empty() {
        return None;
    }
    let (number, person) = if additive {
        let min = parts
            .iter()
            .filter_map(|p| p.affix.person.iter().next())
            .min_by_key(|p| *p as u8)
            .unwrap_or(Person::Third);
        (ValueSet::only(Number::Plur), ValueSet::only(min))
    } else {
        (last.affix.number, last.affix.person)
    };
    let affix = AffixValue::unconstrained().with_number(number).with_person(person).with_case(case);
    let mut children = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            children.push(leaf(Tag::PartConnector, &conns[i - 1]));
        }
        children.push(el(Tag::Part, p.children()));
    }
    children.extend(agreement_leaves(affix));
    Some(Np {
        node: el(Tag::Noun, children),
        affix,
        query: false,
        person: false,
    })
}
