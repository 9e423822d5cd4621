use std::fmt;

use super::{Element, NlmlDocument, NlmlNode, Tag};
use crate::grammar::{Complexity, Mood};
use crate::lexicon::{Case, Dimension, Grade, Number, Person, Tense, ValueSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    /// The first top-level node is not a `<mood>` element.
    MoodNotFirst,
    /// Text directly at document level.
    TopLevelText,
    /// A value tag holds something outside its closed value set.
    BadValue { tag: Tag, value: String },
    /// A value tag contains nested elements.
    NestedInLeaf { tag: Tag },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Slash-separated element path, e.g. `verb_phrase/tense`.
    pub path: String,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::MoodNotFirst => write!(f, "document does not start with <mood>"),
            ViolationKind::TopLevelText => write!(f, "text outside any element"),
            ViolationKind::BadValue { tag, value } => {
                write!(f, "{}: `{value}` is not a valid {tag} value", self.path)
            }
            ViolationKind::NestedInLeaf { tag } => {
                write!(f, "{}: <{tag}> must hold only text", self.path)
            }
        }
    }
}

const PREDICATE_TYPES: [&str; 4] = ["np", "adj", "prep", "clause"];
const VOICES: [&str; 2] = ["active", "passive"];

fn value_ok(tag: Tag, value: &str) -> bool {
    fn set<D: Dimension>(v: &str) -> bool {
        ValueSet::<D>::parse(v).is_some()
    }
    match tag {
        Tag::Mood => Mood::parse(value).is_some(),
        Tag::Complexity => Complexity::parse(value).is_some(),
        Tag::Tense | Tag::KernelTense => {
            Tense::ALL.iter().any(|t| t.as_str() == value)
        }
        Tag::Numb => set::<Number>(value),
        Tag::Pers => set::<Person>(value),
        Tag::Case => set::<Case>(value),
        Tag::Grade => Grade::ALL.iter().any(|g| g.as_str() == value),
        Tag::PredicateType => PREDICATE_TYPES.contains(&value),
        Tag::Voice => VOICES.contains(&value),
        _ => true,
    }
}

/// Checks the mood-first rule and the closed value sets. An empty result means valid.
pub fn validate(doc: &NlmlDocument) -> Vec<Violation> {
    let mut out = Vec::new();
    if !matches!(doc.nodes.first(), Some(n) if n.is(Tag::Mood)) {
        out.push(Violation { path: String::new(), kind: ViolationKind::MoodNotFirst });
    }
    for n in &doc.nodes {
        match n {
            NlmlNode::Text(_) => {
                out.push(Violation { path: String::new(), kind: ViolationKind::TopLevelText })
            }
            NlmlNode::Element(e) => check(e, "", &mut out),
        }
    }
    out
}

fn check(e: &Element, prefix: &str, out: &mut Vec<Violation>) {
    let path = if prefix.is_empty() {
        e.tag.to_string()
    } else {
        format!("{prefix}/{}", e.tag)
    };
    if e.tag.is_leaf() {
        if e.elements().next().is_some() {
            out.push(Violation { path: path.clone(), kind: ViolationKind::NestedInLeaf { tag: e.tag } });
        }
        let value = e.text();
        if !value_ok(e.tag, &value) {
            out.push(Violation {
                path: path.clone(),
                kind: ViolationKind::BadValue { tag: e.tag, value },
            });
        }
    }
    for c in e.elements() {
        check(c, &path, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nlml::deserialize;

    #[test]
    fn bad_mood_value() {
        let doc = deserialize("<mood>banana</mood>").unwrap();
        let v = validate(&doc);
        assert_eq!(v.len(), 1);
        assert!(matches!(v[0].kind, ViolationKind::BadValue { tag: Tag::Mood, .. }));
    }

    #[test]
    fn mood_must_come_first() {
        let doc = deserialize("<complexity>simple</complexity><mood>statement</mood>").unwrap();
        let v = validate(&doc);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::MoodNotFirst);
    }

    #[test]
    fn value_sets() {
        let doc = deserialize(
            "<mood>statement</mood><verb_phrase><tense>modal</tense><numb>sing|plur</numb>\
             <pers>fourth</pers><kernel_tense>infi</kernel_tense></verb_phrase>",
        )
        .unwrap();
        let v = validate(&doc);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].path, "verb_phrase/pers");
    }
}
