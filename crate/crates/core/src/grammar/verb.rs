//! Verb groups, their complements and verb-phrase coordination.

use std::rc::Rc;

use super::noun::{ClauseRole, NpCtx};
use super::parser::{el, leaf, typed, Alt, Parser};
use super::Position;
use crate::lexicon::{unify, AffixValue, AttachmentKind, Category, Dimension, LexEntry, Person, Tense, ValueSet};
use crate::nlml::{NlmlNode, Tag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum VForm {
    Finite,
    Imperative,
    /// Bare infinitive; a leading `to` is consumed by the caller.
    Infinitive,
    PresentParticiple,
    PastParticiple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum FillerKind {
    Np,
    Adj,
}

/// A fronted constituent that fills a complement slot.
#[derive(Debug)]
pub(crate) struct Filler {
    pub node: NlmlNode,
    pub kind: FillerKind,
    pub person: bool,
    pub span: (usize, usize),
}

#[derive(Debug, Clone)]
pub(crate) enum Gap {
    None,
    /// Missing object with no overt filler (relative and embedded query clauses).
    Empty { person: bool },
    Filled(Rc<Filler>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum GapKey {
    None,
    Empty(bool),
    Filled(usize, usize, FillerKind),
}

impl Gap {
    fn key(&self) -> GapKey {
        match self {
            Gap::None => GapKey::None,
            Gap::Empty { person } => GapKey::Empty(*person),
            Gap::Filled(f) => GapKey::Filled(f.span.0, f.span.1, f.kind),
        }
    }

    fn is_none(&self) -> bool {
        matches!(self, Gap::None)
    }

    fn person(&self) -> bool {
        match self {
            Gap::None => false,
            Gap::Empty { person } => *person,
            Gap::Filled(f) => f.person,
        }
    }

    fn takes(&self, kind: FillerKind) -> bool {
        match self {
            Gap::None => false,
            Gap::Empty { .. } => kind == FillerKind::Np,
            Gap::Filled(f) => f.kind == kind,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct VpReq {
    pub form: VForm,
    pub agree: AffixValue,
    pub gap: Gap,
    /// Accept analyses that leave the gap unused.
    pub optional_gap: bool,
    /// Token index of an auxiliary inverted before the subject.
    pub fronted: Option<usize>,
    pub coord: bool,
}

impl Default for VpReq {
    fn default() -> Self {
        VpReq {
            form: VForm::Finite,
            agree: AffixValue::unconstrained(),
            gap: Gap::None,
            optional_gap: false,
            fronted: None,
            coord: true,
        }
    }
}

pub(crate) type VpKey = (usize, VForm, AffixValue, GapKey, bool, Option<usize>, bool);

#[derive(Debug, Clone)]
pub(crate) struct Vp {
    /// The `<verb_phrase>` element.
    pub node: NlmlNode,
    pub gap_used: bool,
    pub passive: bool,
    /// No complements and no circumstances.
    pub bare: bool,
}

#[derive(Debug, Clone, Copy)]
enum Head<'a> {
    Active(&'a LexEntry),
    Passive(&'a LexEntry),
    Link,
}

#[derive(Debug, Clone)]
struct Chain<'a> {
    end: usize,
    words: Vec<String>,
    tense: Tense,
    kernel: Option<Tense>,
    agree: AffixValue,
    mid: Vec<NlmlNode>,
    head: Head<'a>,
    prob: f64,
    /// `be` directly followed by a present participle.
    progressive_cut: bool,
}

type Comp = (Vec<NlmlNode>, bool);

impl<'a> Parser<'a> {
    pub(crate) fn vp_finite(&self, pos: usize, agree: AffixValue) -> Rc<Vec<Alt<Vp>>> {
        self.vp(pos, &VpReq { agree, ..VpReq::default() })
    }

    pub(crate) fn vp(&self, pos: usize, req: &VpReq) -> Rc<Vec<Alt<Vp>>> {
        let key = (pos, req.form, req.agree, req.gap.key(), req.optional_gap, req.fronted, req.coord);
        self.memo(&self.vp_memo, key, || {
            let mut out = self.vp_single(pos, req);
            if req.coord && req.gap.is_none() && req.fronted.is_none() {
                self.vp_coordinated(req, &mut out);
            }
            if !req.gap.is_none() && !req.optional_gap {
                out.retain(|a| a.val.gap_used);
            }
            out
        })
    }

    fn vp_single(&self, pos: usize, req: &VpReq) -> Vec<Alt<Vp>> {
        let mut out = Vec::new();
        for ch in self.chains(pos, req) {
            for comp in self.complements(&ch, &req.gap) {
                for circ in self.post_circs(comp.end) {
                    let (nodes, gap_used) = &comp.val;
                    let bare = nodes.is_empty() && circ.val.is_empty() && ch.mid.is_empty();
                    let node = self.vp_node(&ch, req.form, nodes, &circ.val);
                    let vp = Vp {
                        node,
                        gap_used: *gap_used,
                        passive: matches!(ch.head, Head::Passive(_)),
                        bare,
                    };
                    let mut a = Alt::new(circ.end, ch.prob * comp.prob * circ.prob, vp);
                    a.pen = comp.pen;
                    out.push(a);
                }
            }
        }
        out
    }

    fn vp_node(&self, ch: &Chain, form: VForm, comps: &[NlmlNode], circs: &[NlmlNode]) -> NlmlNode {
        let mut c = Vec::new();
        if matches!(ch.head, Head::Passive(_)) && form != VForm::PastParticiple {
            c.push(leaf(Tag::Voice, "passive"));
        }
        let vt = if matches!(ch.head, Head::Link) { "be" } else { "verb" };
        c.push(leaf(Tag::VerbType, vt));
        c.push(leaf(Tag::Tense, ch.tense.as_str()));
        if matches!(form, VForm::Finite | VForm::Imperative) {
            c.push(leaf(Tag::Numb, &ch.agree.number.to_string()));
            c.push(leaf(Tag::Pers, &ch.agree.person.to_string()));
        }
        // The mid slot follows the first verb word. It is kept empty only
        // after a one-word verb group.
        let mid = (!ch.mid.is_empty()).then(|| {
            let mut mid = vec![leaf(Tag::CircumType, "adv")];
            mid.extend(ch.mid.iter().cloned());
            el(Tag::Circum, mid)
        });
        for (i, w) in ch.words.iter().enumerate() {
            c.push(leaf(Tag::VerbWord, w));
            if i == 0 && ch.words.len() > 1 {
                c.extend(mid.clone());
            }
        }
        if let Some(k) = ch.kernel {
            c.push(leaf(Tag::KernelTense, k.as_str()));
        }
        if ch.words.len() == 1 {
            c.push(mid.unwrap_or_else(|| el(Tag::Circum, Vec::new())));
        }
        c.extend(comps.iter().cloned());
        c.extend(circs.iter().cloned());
        el(Tag::VerbPhrase, c)
    }

    fn vp_coordinated(&self, req: &VpReq, out: &mut Vec<Alt<Vp>>) {
        let part_req = VpReq { coord: false, ..req.clone() };
        let firsts: Vec<Alt<Vp>> = out.clone();
        for a in firsts {
            let mut frontier = vec![(a.end, vec![a.val.node.clone()], Vec::<String>::new(), a.prob)];
            while let Some((end, parts, conns, prob)) = frontier.pop() {
                if parts.len() >= 4 {
                    continue;
                }
                let (conn, next) = match (self.is(end, ","), self.is_any(end + 1, &["and", "or", "but"])) {
                    (true, Some(w)) => (w, end + 2),
                    (true, None) => (",", end + 1),
                    _ => match self.is_any(end, &["and", "or", "but"]) {
                        Some(w) => (w, end + 1),
                        None => continue,
                    },
                };
                for b in self.vp(next, &part_req).iter() {
                    let mut parts = parts.clone();
                    parts.push(b.val.node.clone());
                    let mut conns = conns.clone();
                    conns.push(conn.to_string());
                    let mut children = Vec::new();
                    for (i, p) in parts.iter().enumerate() {
                        if i > 0 {
                            children.push(leaf(Tag::VerbPhraseConnector, &conns[i - 1]));
                        }
                        let inner = p.as_element().map(|e| e.children.clone()).unwrap_or_default();
                        children.push(el(Tag::VerbPhrasePart, inner));
                    }
                    let vp = Vp {
                        node: el(Tag::VerbPhrase, children),
                        gap_used: false,
                        passive: a.val.passive || b.val.passive,
                        bare: false,
                    };
                    if conn != "," {
                        out.push(Alt::new(b.end, prob * b.prob, vp));
                    }
                    frontier.push((b.end, parts, conns, prob * b.prob));
                }
            }
        }
    }

    fn verbs(&self, p: usize, t: Tense) -> Vec<&'a LexEntry> {
        self.cat(p, Category::Verb)
            .into_iter()
            .filter(|e| !e.is_negative() && e.affixes.tense.contains(t))
            .collect()
    }

    fn be_form(&self, p: usize, t: Tense) -> bool {
        self.cat(p, Category::Be)
            .iter()
            .any(|e| !e.is_negative() && e.affixes.tense.contains(t))
    }

    /// Mid-position adverbs at `p`: none, or a run of them.
    fn mid_advs(&self, p: usize) -> Vec<(usize, Vec<NlmlNode>)> {
        let mut out = vec![(p, Vec::new())];
        let mut q = p;
        let mut nodes = Vec::new();
        while let Some(a) = self.mid_adverb(q) {
            nodes.push(a);
            q += 1;
            out.push((q, nodes.clone()));
        }
        out.reverse();
        out
    }

    fn mid_adverb(&self, p: usize) -> Option<NlmlNode> {
        self.cat(p, Category::Adverb)
            .into_iter()
            .find(|e| matches!(e.sem.as_deref(), Some("time" | "manner")) && e.affixes.grade.is_full())
            .map(|e| typed(Tag::Adv, e.sem.as_deref().unwrap_or("time"), self.disp(p)))
    }

    /// Everything that can follow an auxiliary: the rest of the verb group.
    fn chains(&self, pos: usize, req: &VpReq) -> Vec<Chain<'a>> {
        let mut out = Vec::new();
        match req.form {
            VForm::Finite => match req.fronted {
                Some(aux) => self.finite_chains(aux, pos, true, req.agree, &mut out),
                None => {
                    self.finite_chains(pos, pos + 1, false, req.agree, &mut out);
                    for (p, mid) in self.mid_advs(pos) {
                        if mid.is_empty() {
                            continue;
                        }
                        let mut pre = Vec::new();
                        self.lexical_finite(p, req.agree, &mut pre);
                        for mut c in pre {
                            c.mid = mid.clone();
                            out.push(c);
                        }
                    }
                    self.lexical_finite(pos, req.agree, &mut out);
                }
            },
            VForm::Imperative => {
                let agree = AffixValue::unconstrained()
                    .with_number(ValueSet::full())
                    .with_person(ValueSet::only(Person::Second));
                let (start, neg) = if self.is(pos, "don't") {
                    (pos + 1, Some("don't".to_string()))
                } else if self.is(pos, "do") && self.is(pos + 1, "not") {
                    (pos + 2, Some("do not".to_string()))
                } else {
                    (pos, None)
                };
                let mut base = Vec::new();
                self.base_chains(start, Tense::Infinitive, &mut base);
                for mut c in base {
                    c.agree = agree;
                    if let Some(n) = &neg {
                        c.words.insert(0, n.clone());
                        c.kernel = Some(Tense::Infinitive);
                    }
                    out.push(c);
                }
            }
            VForm::Infinitive => self.base_chains(pos, Tense::Infinitive, &mut out),
            VForm::PresentParticiple => self.base_chains(pos, Tense::PresentParticiple, &mut out),
            VForm::PastParticiple => {
                for v in self.verbs(pos, Tense::PastParticiple) {
                    if has_object(v) {
                        out.push(chain(pos + 1, vec![self.disp(pos).into()], Tense::PastParticiple, None, Head::Passive(v), v.probability));
                    }
                }
            }
        }
        out
    }

    /// A non-finite verb group in the given form (`read`, `be repaired`, `being`).
    fn base_chains(&self, pos: usize, t: Tense, out: &mut Vec<Chain<'a>>) {
        for v in self.verbs(pos, t) {
            out.push(chain(pos + 1, vec![self.disp(pos).into()], t, None, Head::Active(v), v.probability));
        }
        if self.be_form(pos, t) {
            for v in self.verbs(pos + 1, Tense::PastParticiple) {
                if has_object(v) {
                    let words = vec![self.disp(pos).into(), self.disp(pos + 1).into()];
                    out.push(chain(pos + 2, words, t, Some(Tense::PastParticiple), Head::Passive(v), v.probability));
                }
            }
            out.push(chain(pos + 1, vec![self.disp(pos).into()], t, None, Head::Link, 1.0));
        }
    }

    fn lexical_finite(&self, p: usize, agree: AffixValue, out: &mut Vec<Chain<'a>>) {
        for v in self.cat(p, Category::Verb) {
            if v.is_negative() {
                continue;
            }
            let Some(t) = finite_tense(v) else { continue };
            let Ok(a) = unify(agree, v.affixes.agreement()) else { continue };
            let mut c = chain(p + 1, vec![self.disp(p).into()], t, None, Head::Active(v), v.probability);
            c.agree = a;
            out.push(c);
        }
    }

    /// Auxiliary-led groups. `first` is the finite auxiliary, `cont` where the rest begins.
    fn finite_chains(&self, first: usize, cont: usize, fronted: bool, agree: AffixValue, out: &mut Vec<Chain<'a>>) {
        let Some(_) = self.word(first) else { return };
        let candidates: Vec<&'a LexEntry> = [Category::Modal, Category::Be, Category::Verb]
            .into_iter()
            .flat_map(|c| self.cat(first, c))
            .collect();
        for e in candidates {
            let t = if e.category == Category::Modal {
                Tense::Modal
            } else {
                match finite_tense(e) {
                    Some(t) => t,
                    None => continue,
                }
            };
            let Ok(a) = unify(agree, e.affixes.agreement()) else { continue };
            let lemma = e.base_lemma();
            let is_aux = match e.category {
                Category::Modal | Category::Be => true,
                _ => lemma == "do" || lemma == "have",
            };
            if !is_aux {
                continue;
            }
            let mut w0 = self.disp(first).to_string();
            let mut c0 = cont;
            if !e.is_negative() && self.is(c0, "not") {
                w0.push_str(" not");
                c0 += 1;
            }
            let mids = if fronted { vec![(c0, Vec::new())] } else { self.mid_advs(c0) };
            for (p, mid) in mids {
                let mut found = Vec::new();
                match e.category {
                    Category::Modal => self.after_modal(p, &w0, &mut found),
                    Category::Be => self.after_be(p, &w0, t, &mut found),
                    _ if lemma == "do" => {
                        for v in self.verbs(p, Tense::Infinitive) {
                            found.push(chain(p + 1, vec![w0.clone(), self.disp(p).into()], t, Some(Tense::Infinitive), Head::Active(v), v.probability));
                        }
                    }
                    _ => self.after_have(p, &w0, &mut found),
                }
                for mut c in found {
                    c.agree = a;
                    c.mid = mid.clone();
                    c.prob *= e.probability;
                    out.push(c);
                }
            }
        }
    }

    fn after_modal(&self, p: usize, w0: &str, out: &mut Vec<Chain<'a>>) {
        let m = Tense::Modal;
        for v in self.verbs(p, Tense::Infinitive) {
            out.push(chain(p + 1, vec![w0.into(), self.disp(p).into()], m, Some(Tense::Infinitive), Head::Active(v), v.probability));
        }
        let mut inner = Vec::new();
        if self.be_form(p, Tense::Infinitive) {
            let mut be = Vec::new();
            self.after_be(p + 1, w0, m, &mut be);
            for mut c in be {
                c.words.insert(1, self.disp(p).into());
                c.kernel = c.kernel.or(Some(Tense::Infinitive));
                inner.push(c);
            }
        }
        if self.is(p, "have") {
            let mut perf = Vec::new();
            self.after_have(p + 1, w0, &mut perf);
            for mut c in perf {
                c.words.insert(1, self.disp(p).into());
                inner.push(c);
            }
        }
        for mut c in inner {
            c.tense = m;
            out.push(c);
        }
    }

    fn after_be(&self, p: usize, w0: &str, t: Tense, out: &mut Vec<Chain<'a>>) {
        let progressive = match t {
            Tense::Past => Tense::PastProgressive,
            Tense::Present => Tense::PresentProgressive,
            other => other,
        };
        let ing = self.verbs(p, Tense::PresentParticiple);
        for v in &ing {
            out.push(chain(p + 1, vec![w0.into(), self.disp(p).into()], progressive, Some(Tense::PresentParticiple), Head::Active(v), v.probability));
        }
        for v in self.verbs(p, Tense::PastParticiple) {
            if has_object(v) {
                out.push(chain(p + 1, vec![w0.into(), self.disp(p).into()], t, Some(Tense::PastParticiple), Head::Passive(v), v.probability));
            }
        }
        if self.is(p, "being") {
            for v in self.verbs(p + 1, Tense::PastParticiple) {
                if has_object(v) {
                    let words = vec![w0.into(), "being".into(), self.disp(p + 1).into()];
                    out.push(chain(p + 2, words, progressive, Some(Tense::PastParticiple), Head::Passive(v), v.probability));
                }
            }
        }
        let mut link = chain(p, vec![w0.into()], t, None, Head::Link, 1.0);
        link.progressive_cut = !ing.is_empty();
        out.push(link);
    }

    fn after_have(&self, p: usize, w0: &str, out: &mut Vec<Chain<'a>>) {
        let perf = Tense::Perfect;
        let pp = Some(Tense::PastParticiple);
        if self.is(p, "been") {
            let mut inner = Vec::new();
            self.after_be(p + 1, w0, perf, &mut inner);
            for mut c in inner {
                c.words.insert(1, "been".into());
                c.tense = perf;
                if c.kernel.is_none() {
                    c.kernel = pp;
                }
                out.push(c);
            }
        }
        for v in self.verbs(p, Tense::PastParticiple) {
            out.push(chain(p + 1, vec![w0.into(), self.disp(p).into()], perf, pp, Head::Active(v), v.probability));
        }
    }

    /// Complement sequences licensed by the head, with whether the gap was used.
    fn complements(&self, ch: &Chain<'a>, gap: &Gap) -> Vec<Alt<Comp>> {
        let p = ch.end;
        let mut out: Vec<Alt<Comp>> = Vec::new();
        match ch.head {
            Head::Link => {
                for a in self.predicate(p, gap, ch.progressive_cut) {
                    out.push(a.map(|(n, used)| (vec![n], used)));
                }
            }
            Head::Active(v) => {
                let frame = v.frame.clone().unwrap_or_else(|| crate::lexicon::VerbFrame::new(crate::lexicon::Transitivity::Intr));
                let particles: Vec<(usize, Vec<NlmlNode>)> = self.particle(p, v).into_iter().collect();
                for kind in &frame.attachments {
                    match kind {
                        AttachmentKind::Intransitive => {
                            out.push(Alt::new(p, 1.0, (Vec::new(), false)));
                            for (e, n) in &particles {
                                out.push(Alt::new(*e, 1.0, (n.clone(), false)));
                            }
                        }
                        AttachmentKind::Object => {
                            for o in self.object(p, gap, Tag::DirectObject, true) {
                                out.push(o.map(|(n, u)| (n.into_iter().collect(), u)));
                            }
                        }
                        AttachmentKind::IndirectDirect => self.double_object(p, gap, &mut out),
                        AttachmentKind::ParticlePrepPhrase => {
                            for (e, n) in &particles {
                                for pp in self.prep_phrase(*e, NpCtx::OBJECT) {
                                    let mut nodes = n.clone();
                                    nodes.push(pp.val);
                                    out.push(Alt::new(pp.end, pp.prob, (nodes, false)));
                                }
                            }
                        }
                        AttachmentKind::ParticleObject => {
                            for (e, n) in &particles {
                                for o in self.object(*e, gap, Tag::DirectObject, false) {
                                    let mut nodes = n.clone();
                                    nodes.extend(o.val.0);
                                    out.push(Alt::new(o.end, o.prob, (nodes, o.val.1)));
                                }
                            }
                            for o in self.object(p, gap, Tag::DirectObject, false) {
                                if let Some((e, n)) = self.particle(o.end, v) {
                                    let mut nodes: Vec<NlmlNode> = o.val.0.into_iter().collect();
                                    nodes.extend(n);
                                    out.push(Alt::new(e, o.prob, (nodes, o.val.1)));
                                }
                            }
                        }
                        AttachmentKind::ObjectBareInfinitive => {
                            let req = super::verb::VpReq { form: VForm::Infinitive, coord: false, ..Default::default() };
                            self.object_clause(p, gap, &req, "bare infinitive", &mut out);
                        }
                        AttachmentKind::ObjectPastParticiple => {
                            let req = super::verb::VpReq { form: VForm::PastParticiple, coord: false, ..Default::default() };
                            self.object_clause(p, gap, &req, "past participle", &mut out);
                        }
                        AttachmentKind::LinkPredicate => {
                            for a in self.predicate(p, gap, false) {
                                out.push(a.map(|(n, used)| (vec![n], used)));
                            }
                        }
                    }
                }
            }
            Head::Passive(v) => {
                let frame = v.frame.clone().unwrap_or_else(|| crate::lexicon::VerbFrame::new(crate::lexicon::Transitivity::Trans));
                let mut rest: Vec<Alt<Comp>> = Vec::new();
                for kind in &frame.attachments {
                    match kind {
                        AttachmentKind::Object | AttachmentKind::ObjectPastParticiple => {
                            rest.push(Alt::new(p, 1.0, (Vec::new(), false)))
                        }
                        AttachmentKind::IndirectDirect => {
                            for o in self.object(p, gap, Tag::IndirectObject, false) {
                                rest.push(o.map(|(n, u)| (n.into_iter().collect(), u)));
                            }
                        }
                        AttachmentKind::ParticleObject => {
                            if let Some((e, n)) = self.particle(p, v) {
                                rest.push(Alt::new(e, 1.0, (n, false)));
                            }
                        }
                        AttachmentKind::ObjectBareInfinitive if self.is(p, "to") => {
                            let req = VpReq { form: VForm::Infinitive, coord: false, ..Default::default() };
                            for vp in self.vp(p + 1, &req).iter() {
                                let nc = el(Tag::NounClause, vec![leaf(Tag::Type, "infinitive"), leaf(Tag::Word, "to"), vp.val.node.clone()]);
                                let pred = el(Tag::Predicate, vec![leaf(Tag::PredicateType, "clause"), nc]);
                                rest.push(Alt::new(vp.end, vp.prob, (vec![pred], false)));
                            }
                        }
                        _ => {}
                    }
                }
                for r in rest {
                    if self.is(r.end, "by") {
                        for agent in self.np(r.end + 1, NpCtx::OBJECT).iter() {
                            let pp = el(Tag::PrepPhrase, vec![leaf(Tag::Prep, "by"), agent.val.node.clone()]);
                            let mut nodes = r.val.0.clone();
                            nodes.push(pp);
                            out.push(Alt::new(agent.end, r.prob * agent.prob, (nodes, r.val.1)));
                        }
                    } else {
                        out.push(r);
                    }
                }
            }
        }
        out
    }

    fn particle(&self, p: usize, v: &LexEntry) -> Option<(usize, Vec<NlmlNode>)> {
        let w = self.word(p)?;
        let frame = v.frame.as_ref()?;
        let ok = frame.allows_particle(w)
            && self.cat(p, Category::Particle).iter().any(|e| e.sem_is("adverbial"));
        ok.then(|| (p + 1, vec![typed(Tag::Adv, "particle", self.disp(p))]))
    }

    /// An object slot: the gap, a noun phrase or (direct objects) a noun clause.
    fn object(&self, p: usize, gap: &Gap, slot: Tag, clauses: bool) -> Vec<Alt<(Option<NlmlNode>, bool)>> {
        let mut out = Vec::new();
        if gap.takes(FillerKind::Np) {
            let node = match gap {
                Gap::Filled(f) => Some(el(slot, vec![f.node.clone()])),
                _ => None,
            };
            out.push(Alt::new(p, 1.0, (node, true)));
        }
        for np in self.np(p, NpCtx::OBJECT).iter() {
            out.push(Alt::new(np.end, np.prob, (Some(el(slot, vec![np.val.node.clone()])), false)));
        }
        if clauses && slot == Tag::DirectObject {
            for nc in self.noun_clause(p, ClauseRole::Object) {
                let mut a = Alt::new(nc.end, nc.prob, (Some(el(slot, vec![nc.val])), false));
                a.pen = nc.pen + 1;
                out.push(a);
            }
        }
        out
    }

    fn double_object(&self, p: usize, gap: &Gap, out: &mut Vec<Alt<Comp>>) {
        let mut both: Vec<Alt<Comp>> = Vec::new();
        let mut gap_first: Vec<Alt<Comp>> = Vec::new();
        for i in self.object(p, gap, Tag::IndirectObject, false) {
            let rest_gap = if i.val.1 { Gap::None } else { gap.clone() };
            for d in self.object(i.end, &rest_gap, Tag::DirectObject, true) {
                let used = i.val.1 || d.val.1;
                let nodes: Vec<NlmlNode> = i.val.0.iter().cloned().chain(d.val.0.clone()).collect();
                let a = Alt::new(d.end, i.prob * d.prob, (nodes, used));
                if i.val.1 == gap.person() && used {
                    gap_first.push(a);
                } else {
                    both.push(a);
                }
            }
        }
        out.extend(gap_first);
        out.extend(both);
    }

    fn object_clause(&self, p: usize, gap: &Gap, req: &VpReq, ty: &str, out: &mut Vec<Alt<Comp>>) {
        for o in self.object(p, gap, Tag::DirectObject, false) {
            for vp in self.vp(o.end, req).iter() {
                let nc = el(Tag::NounClause, vec![leaf(Tag::Type, ty), vp.val.node.clone()]);
                let pred = el(Tag::Predicate, vec![leaf(Tag::PredicateType, "clause"), nc]);
                let mut nodes: Vec<NlmlNode> = o.val.0.iter().cloned().collect();
                nodes.push(pred);
                out.push(Alt::new(vp.end, o.prob * vp.prob, (nodes, o.val.1)));
            }
        }
    }

    pub(crate) fn predicate(&self, p: usize, gap: &Gap, cut_gerund: bool) -> Vec<Alt<(NlmlNode, bool)>> {
        let pred = |ty: &str, n: NlmlNode| el(Tag::Predicate, vec![leaf(Tag::PredicateType, ty), n]);
        let mut out = Vec::new();
        if let Gap::Filled(f) = gap {
            let ty = match f.kind {
                FillerKind::Np => "np",
                FillerKind::Adj => "adj",
            };
            out.push(Alt::new(p, 1.0, (pred(ty, f.node.clone()), true)));
        }
        for a in self.pred_adj_phrase(p) {
            out.push(a.map(|n| (pred("adj", n), false)));
        }
        for np in self.np(p, NpCtx::FULL).iter() {
            out.push(Alt::new(np.end, np.prob, (pred("np", np.val.node.clone()), false)));
        }
        for pp in self.prep_phrase(p, NpCtx::OBJECT) {
            out.push(pp.map(|n| (pred("prep", n), false)));
        }
        for nc in self.noun_clause(p, ClauseRole::Predicate) {
            if cut_gerund && is_gerund(&nc.val) {
                continue;
            }
            let mut a = nc.map(|n| (pred("clause", n), false));
            a.pen += 1;
            out.push(a);
        }
        out
    }

    /// Zero or more post-verbal circumstances.
    pub(crate) fn post_circs(&self, p: usize) -> Vec<Alt<Vec<NlmlNode>>> {
        let mut out = vec![Alt::new(p, 1.0, Vec::new())];
        let mut frontier = vec![(p, Vec::new(), 1.0)];
        for _ in 0..3 {
            let mut next = Vec::new();
            for (q, nodes, prob) in &frontier {
                for c in self.circumstance(*q, Position::Post) {
                    let mut n: Vec<NlmlNode> = nodes.clone();
                    n.push(c.val);
                    next.push((c.end, n, prob * c.prob));
                }
            }
            for (e, n, prob) in &next {
                out.push(Alt::new(*e, *prob, n.clone()));
            }
            frontier = next;
        }
        out.sort_by_key(|a| std::cmp::Reverse(a.end));
        out
    }
}

fn chain<'a>(end: usize, words: Vec<String>, tense: Tense, kernel: Option<Tense>, head: Head<'a>, prob: f64) -> Chain<'a> {
    let kernel = kernel.filter(|_| words.len() > 1);
    Chain {
        end,
        words,
        tense,
        kernel,
        agree: AffixValue::unconstrained(),
        mid: Vec::new(),
        head,
        prob,
        progressive_cut: false,
    }
}

fn finite_tense(e: &LexEntry) -> Option<Tense> {
    if e.affixes.tense.contains(Tense::Present) {
        Some(Tense::Present)
    } else if e.affixes.tense.contains(Tense::Past) {
        Some(Tense::Past)
    } else {
        None
    }
}

fn has_object(v: &LexEntry) -> bool {
    v.frame.as_ref().is_some_and(|f| f.attachments.iter().any(|k| k.takes_object()))
}

fn is_gerund(n: &NlmlNode) -> bool {
    n.as_element()
        .and_then(|e| e.child(Tag::Type))
        .is_some_and(|t| t.text().ends_with("gerund"))
}
