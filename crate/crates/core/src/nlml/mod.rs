//! NLML documents: a sibling sequence of tag elements carrying the
//! syntactic analysis of one expression.
//!
//! The canonical string form has no attributes, no self-closing tags, no
//! whitespace between elements and trimmed text, e.g.
//! `<mood>statement</mood><complexity>simple</complexity>...`.

mod tag;
mod validate;

use std::fmt;

use thiserror::Error;

pub use tag::Tag;
pub use validate::{validate, Violation, ViolationKind};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NlmlNode {
    Element(Element),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pub tag: Tag,
    pub children: Vec<NlmlNode>,
}

impl NlmlNode {
    pub fn el(tag: Tag, children: Vec<NlmlNode>) -> NlmlNode {
        NlmlNode::Element(Element { tag, children })
    }

    /// An element holding a single text value. Empty text yields an empty element.
    pub fn leaf(tag: Tag, text: impl AsRef<str>) -> NlmlNode {
        let text = normalize_text(text.as_ref());
        debug_assert!(!text.contains(['<', '>']), "markup characters in {text:?}");
        let children = if text.is_empty() { vec![] } else { vec![NlmlNode::Text(text)] };
        NlmlNode::el(tag, children)
    }

    /// A checked text node.
    pub fn text(s: impl Into<String>) -> Result<NlmlNode, NlmlError> {
        let s = s.into();
        if let Some(pos) = s.find(['<', '>']) {
            return Err(NlmlError::StrayText { position: pos });
        }
        Ok(NlmlNode::Text(s))
    }

    pub fn as_element(&self) -> Option<&Element> {
        match self {
            NlmlNode::Element(e) => Some(e),
            NlmlNode::Text(_) => None,
        }
    }

    pub fn tag(&self) -> Option<Tag> {
        self.as_element().map(|e| e.tag)
    }

    pub fn is(&self, tag: Tag) -> bool {
        self.tag() == Some(tag)
    }
}

impl Element {
    /// Concatenated text content of direct text children, as serialized.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.children {
            if let NlmlNode::Text(t) = c {
                out.push_str(&normalize_text(t));
            }
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.children.iter().filter_map(NlmlNode::as_element)
    }

    pub fn child(&self, tag: Tag) -> Option<&Element> {
        self.elements().find(|e| e.tag == tag)
    }

    pub fn children_with(&self, tag: Tag) -> impl Iterator<Item = &Element> {
        self.elements().filter(move |e| e.tag == tag)
    }

    /// Depth-first search over descendants (excluding self).
    pub fn descendants(&self) -> Vec<&Element> {
        let mut out = Vec::new();
        let mut stack: Vec<&Element> = self.elements().collect();
        stack.reverse();
        while let Some(e) = stack.pop() {
            out.push(e);
            let mut kids: Vec<&Element> = e.elements().collect();
            kids.reverse();
            stack.extend(kids);
        }
        out
    }
}

/// A multi-rooted NLML document.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NlmlDocument {
    pub nodes: Vec<NlmlNode>,
}

impl NlmlDocument {
    pub fn new(nodes: Vec<NlmlNode>) -> Self {
        NlmlDocument { nodes }
    }

    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.nodes.iter().filter_map(NlmlNode::as_element)
    }

    pub fn child(&self, tag: Tag) -> Option<&Element> {
        self.elements().find(|e| e.tag == tag)
    }

    /// Text of the leading `<mood>` element.
    pub fn mood(&self) -> Option<String> {
        self.elements().next().filter(|e| e.tag == Tag::Mood).map(Element::text)
    }

    /// Every element in document order.
    pub fn all_elements(&self) -> Vec<&Element> {
        let mut out = Vec::new();
        for e in self.elements() {
            out.push(e);
            out.extend(e.descendants());
        }
        out
    }
}

impl fmt::Display for NlmlDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NlmlError {
    #[error("unbalanced tag at byte {position}")]
    UnbalancedTag { position: usize },
    #[error("unknown tag `{name}` at byte {position}")]
    UnknownTag { name: String, position: usize },
    #[error("text outside any element at byte {position}")]
    StrayText { position: usize },
}

/// Trims and collapses internal whitespace runs to single spaces.
pub fn normalize_text(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Writes the canonical single-line markup.
pub fn serialize(doc: &NlmlDocument) -> String {
    let mut out = String::new();
    for n in &doc.nodes {
        write_node(n, &mut out);
    }
    out
}

fn write_node(node: &NlmlNode, out: &mut String) {
    match node {
        NlmlNode::Text(t) => out.push_str(&normalize_text(t)),
        NlmlNode::Element(e) => {
            out.push('<');
            out.push_str(e.tag.as_str());
            out.push('>');
            for c in &e.children {
                write_node(c, out);
            }
            out.push_str("</");
            out.push_str(e.tag.as_str());
            out.push('>');
        }
    }
}

/// Parses markup into a canonical document.
pub fn deserialize(s: &str) -> Result<NlmlDocument, NlmlError> {
    let bytes = s.as_bytes();
    // open elements: (tag, children, start position)
    let mut stack: Vec<(Tag, Vec<NlmlNode>, usize)> = Vec::new();
    let mut top: Vec<NlmlNode> = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'<' {
            let close = s[i..]
                .find('>')
                .map(|off| i + off)
                .ok_or(NlmlError::UnbalancedTag { position: i })?;
            let inner = &s[i + 1..close];
            if inner.contains('<') {
                return Err(NlmlError::UnbalancedTag { position: i });
            }
            let (closing, name) = match inner.trim_start().strip_prefix('/') {
                Some(rest) => (true, rest.trim()),
                None => (false, inner.trim()),
            };
            let tag: Tag = name.parse().map_err(|_| NlmlError::UnknownTag {
                name: name.to_string(),
                position: i,
            })?;
            if closing {
                match stack.pop() {
                    Some((open, children, _)) if open == tag => {
                        let node = NlmlNode::el(tag, children);
                        match stack.last_mut() {
                            Some(parent) => parent.1.push(node),
                            None => top.push(node),
                        }
                    }
                    _ => return Err(NlmlError::UnbalancedTag { position: i }),
                }
            } else {
                stack.push((tag, Vec::new(), i));
            }
            i = close + 1;
        } else {
            let end = s[i..].find('<').map(|off| i + off).unwrap_or(s.len());
            let text = &s[i..end];
            if let Some(off) = text.find('>') {
                return Err(NlmlError::StrayText { position: i + off });
            }
            if !text.trim().is_empty() {
                match stack.last_mut() {
                    Some(parent) => parent.1.push(NlmlNode::Text(text.to_string())),
                    None => {
                        let lead = text.len() - text.trim_start().len();
                        return Err(NlmlError::StrayText { position: i + lead });
                    }
                }
            }
            i = end;
        }
    }
    if let Some((_, _, pos)) = stack.pop() {
        return Err(NlmlError::UnbalancedTag { position: pos });
    }
    Ok(canonicalize(&NlmlDocument::new(top)))
}

/// Idempotent normalization: text trimming and merging, value repairs,
/// removal of empty text. Element order is preserved.
pub fn canonicalize(doc: &NlmlDocument) -> NlmlDocument {
    NlmlDocument::new(canonical_children(&doc.nodes, None))
}

fn canonical_children(nodes: &[NlmlNode], parent: Option<Tag>) -> Vec<NlmlNode> {
    let mut out: Vec<NlmlNode> = Vec::new();
    for n in nodes {
        match n {
            NlmlNode::Text(t) => {
                let t = normalize_text(t);
                if t.is_empty() {
                    continue;
                }
                let t = repair_value(parent, t);
                if let Some(NlmlNode::Text(prev)) = out.last_mut() {
                    prev.push_str(&t);
                    let merged = repair_value(parent, std::mem::take(prev));
                    *prev = merged;
                } else {
                    out.push(NlmlNode::Text(t));
                }
            }
            NlmlNode::Element(e) => out.push(NlmlNode::Element(Element {
                tag: e.tag,
                children: canonical_children(&e.children, Some(e.tag)),
            })),
        }
    }
    out
}

/// Repairs known generator artifacts in value tags.
fn repair_value(parent: Option<Tag>, text: String) -> String {
    match (parent, text.as_str()) {
        (Some(Tag::Pers), "secnd") => "second".to_string(),
        (Some(Tag::Numb), "NUMB") => "sing|plur".to_string(),
        (Some(Tag::Pers), "PERS") => "first|second|third".to_string(),
        _ => text,
    }
}

/// Indented debugging view, one element per line.
pub fn to_tree(doc: &NlmlDocument) -> String {
    fn walk(node: &NlmlNode, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match node {
            NlmlNode::Text(t) => {
                out.push_str(&format!("{pad}\"{}\"\n", normalize_text(t)));
            }
            NlmlNode::Element(e) => {
                if e.tag.is_leaf() && e.children.iter().all(|c| matches!(c, NlmlNode::Text(_))) {
                    out.push_str(&format!("{pad}{}: {}\n", e.tag, e.text()));
                } else {
                    out.push_str(&format!("{pad}{}\n", e.tag));
                    for c in &e.children {
                        walk(c, depth + 1, out);
                    }
                }
            }
        }
    }
    let mut out = String::new();
    for n in &doc.nodes {
        walk(n, 0, &mut out);
    }
    out
}
