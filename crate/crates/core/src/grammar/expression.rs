//! The sixteen expression rules and their ranking.

use super::noun::{ClauseRole, NpCtx};
use super::parser::{el, leaf, typed, Parser};
use super::sentence::{document, sentence_with};
use super::{GrammarError, Mood, ParseResult, Position, TokenStream};
use crate::lexicon::{Category, Lexicon};
use crate::nlml::{NlmlNode, Tag};

/// Results reported per expression.
pub const MAX_RESULTS: usize = 8;

/// Penalties of the fragment rules.
const PHRASE_PENALTY: u32 = 10;
const SUBCIRCUM_PENALTY: u32 = 12;

/// Classifies an expression under every rule and returns the analyses,
/// best first. Sentence rules (1 to 4) suppress the fragment rules.
pub fn classify_expression(tokens: &TokenStream, lex: &Lexicon) -> Result<Vec<ParseResult>, GrammarError> {
    let p = Parser::new(tokens, lex);
    let mut results: Vec<ParseResult> = (1..=4).filter_map(|r| sentence_with(&p, r).ok()).collect();
    if results.is_empty() {
        for rule in 5..=16 {
            if let Some(r) = fragment(&p, rule) {
                results.push(r);
            }
        }
    }
    if results.is_empty() {
        return Err(p.no_parse());
    }
    results.sort_by(|a, b| {
        a.penalty
            .cmp(&b.penalty)
            .then(b.probability.total_cmp(&a.probability))
            .then(a.rule.cmp(&b.rule))
    });
    let mut seen = Vec::new();
    results.retain(|r| {
        let s = r.document.to_string();
        let fresh = !seen.contains(&s);
        seen.push(s);
        fresh
    });
    results.truncate(MAX_RESULTS);
    Ok(results)
}

fn fragment(p: &Parser, rule: u8) -> Option<ParseResult> {
    let marks: &[&str] = match rule {
        5 | 6 | 9 | 10 => &["?"],
        7 | 8 => &["!"],
        _ => &[".", "!", "?"],
    };
    let marks: Vec<&str> = marks.iter().copied().chain(if rule >= 9 { vec![".", "!"] } else { vec![] }).collect();
    let limit = p.limit_for(&marks)?;
    if limit == 0 {
        return None;
    }
    let full = |alts: Vec<(usize, f64, Vec<NlmlNode>)>| alts.into_iter().find(|a| a.0 == limit);
    let (mood, penalty, found) = match rule {
        5 | 6 => {
            let w = if rule == 5 { "how" } else { "what" };
            if !(p.is(0, w) && p.is(1, "about")) {
                return None;
            }
            let mut alts: Vec<(usize, f64, Vec<NlmlNode>)> =
                p.np(2, NpCtx::OBJECT).iter().map(|a| (a.end, a.prob, vec![a.val.node.clone()])).collect();
            alts.extend(p.noun_clause(2, ClauseRole::PrepObject).into_iter().map(|a| (a.end, a.prob, vec![a.val])));
            (Mood::About, 0, full(alts))
        }
        7 => {
            let alts = p.np(0, NpCtx::EXCLAM).iter().map(|a| (a.end, a.prob, vec![a.val.node.clone()])).collect();
            (Mood::WhatTerseExclamation, 0, full(alts))
        }
        8 => {
            if !p.is(0, "how") {
                return None;
            }
            let alts = p
                .pred_adj_phrase(1)
                .into_iter()
                .map(|a| {
                    let mut node = a.val;
                    if let NlmlNode::Element(e) = &mut node {
                        e.children.insert(0, typed(Tag::Adv, "exclamative", "how"));
                    }
                    (a.end, a.prob, vec![node])
                })
                .collect();
            (Mood::HowTerseExclamation, 0, full(alts))
        }
        9 => {
            let alts = p
                .np(0, NpCtx::QUERY)
                .iter()
                .filter(|a| a.val.query)
                .map(|a| (a.end, a.prob, vec![a.val.node.clone()]))
                .collect();
            (Mood::Np, 0, full(alts))
        }
        10 => {
            let alts = p
                .cat(0, Category::QueryAdverb)
                .into_iter()
                .map(|e| {
                    let adv = typed(Tag::Adv, "query", p.disp(0));
                    (1, e.probability, vec![el(Tag::Circum, vec![leaf(Tag::CircumType, "adv"), adv])])
                })
                .collect();
            (Mood::Circumstances, 0, full(alts))
        }
        11 => {
            let mut alts = Vec::new();
            let mut frontier = vec![(0usize, Vec::<NlmlNode>::new(), 1.0f64)];
            for _ in 0..3 {
                let mut next = Vec::new();
                for (q, nodes, prob) in &frontier {
                    for c in p.circumstance(*q, Position::Mid) {
                        let mut n = nodes.clone();
                        n.push(c.val);
                        next.push((c.end, n, prob * c.prob));
                    }
                }
                alts.extend(next.iter().map(|(e, n, pr)| (*e, *pr, n.clone())));
                frontier = next;
            }
            (Mood::Circumstances, PHRASE_PENALTY, full(alts))
        }
        12 => {
            let ctx = NpCtx { rel: false, ..NpCtx::FULL };
            let alts = p.np(0, ctx).iter().map(|a| (a.end, a.prob, vec![a.val.node.clone()])).collect();
            (Mood::Np, PHRASE_PENALTY, full(alts))
        }
        13 => {
            let ctx = NpCtx { rel: false, ..NpCtx::FULL };
            let mut alts = Vec::new();
            for np in p.np(0, ctx).iter() {
                for rc in p.relative_clause(np.end, np.val.affix) {
                    alts.push((rc.end, np.prob * rc.prob, vec![np.val.node.clone(), rc.val]));
                }
            }
            (Mood::Np, PHRASE_PENALTY, full(alts))
        }
        14 => {
            let mut alts = Vec::new();
            let mut frontier = vec![(0usize, Vec::<NlmlNode>::new(), 1.0f64)];
            for _ in 0..3 {
                let mut next = Vec::new();
                for (q, nodes, prob) in &frontier {
                    for a in p.attr_adj(*q) {
                        let mut n = nodes.clone();
                        n.push(a.val);
                        next.push((a.end, n, prob * a.prob));
                    }
                }
                alts.extend(next.iter().map(|(e, n, pr)| (*e, *pr, n.clone())));
                frontier = next;
            }
            (Mood::Adj, PHRASE_PENALTY, full(alts))
        }
        15 => {
            let alts = p.pred_adj_phrase(0).into_iter().map(|a| (a.end, a.prob, vec![a.val])).collect();
            (Mood::Adj, PHRASE_PENALTY, full(alts))
        }
        16 => {
            let sub = p.cat(0, Category::Subordinator).into_iter().next()?;
            let alts = p
                .simple(1, super::sentence::Kind::Statement)
                .iter()
                .map(|a| {
                    let mut nodes = vec![leaf(Tag::Subordinator, &sub.surface)];
                    nodes.extend(a.val.nodes.clone());
                    (a.end, a.prob * sub.probability, nodes)
                })
                .collect();
            (Mood::Subcircum, SUBCIRCUM_PENALTY, full(alts))
        }
        _ => return None,
    };
    let (_, probability, nodes) = found?;
    Some(ParseResult { document: document(mood, nodes), penalty, probability, rule })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify(text: &str) -> Vec<ParseResult> {
        let lex = Lexicon::demo();
        classify_expression(&TokenStream::tokenize(text).unwrap(), &lex).unwrap()
    }

    #[test]
    fn rule_moods() {
        let cases = [
            ("I will buy a book tomorrow.", Mood::Statement),
            ("Why?", Mood::Circumstances),
            ("What a pity!", Mood::WhatTerseExclamation),
            ("How terrible!", Mood::HowTerseExclamation),
            ("What about this book?", Mood::About),
            ("How about this book?", Mood::About),
            ("Who?", Mood::Np),
            ("in the morning", Mood::Circumstances),
            ("certainly.", Mood::Circumstances),
            ("ill.", Mood::Adj),
            ("Please read the book!", Mood::Order),
        ];
        for (text, mood) in cases {
            assert_eq!(classify(text)[0].mood(), Some(mood), "{text}");
        }
    }

    #[test]
    fn sentence_readings_suppress_fragments() {
        let r = classify("I come.");
        assert!(r.iter().all(|r| r.penalty == 0));
    }

    #[test]
    fn penalties() {
        let r = classify("that book on the desk.");
        assert_eq!(r[0].penalty, 10);
        assert_eq!(r[0].mood(), Some(Mood::Np));
        let r = classify("Because I have got some money.");
        assert_eq!(r[0].penalty, 12);
        assert_eq!(r[0].mood(), Some(Mood::Subcircum));
    }

    #[test]
    fn unknown_word_reports_position() {
        let lex = Lexicon::demo();
        let err = classify_expression(&TokenStream::tokenize("I zork the book").unwrap(), &lex).unwrap_err();
        assert_eq!(err, GrammarError::NoParse { furthest: 1 });
    }
}
