//! Grammar analysis: an English subset parsed by memoized backtracking
//! recursive descent into NLML.
//!
//! Every constituent parser returns its alternatives longest-first; a sentence
//! rule keeps the first analysis that spans the whole input.

mod expression;
mod modifier;
mod noun;
mod parser;
mod sentence;
mod tokens;
mod verb;

use std::fmt;

use thiserror::Error;

use crate::lexicon::{AffixValue, Lexicon};
use crate::nlml::{NlmlDocument, NlmlNode};

pub use expression::classify_expression;
pub use tokens::{normalize_input, Token, TokenStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mood {
    Statement,
    Question,
    Order,
    FullExclamation,
    Np,
    Adj,
    About,
    Circumstances,
    WhatTerseExclamation,
    HowTerseExclamation,
    Subcircum,
}

impl Mood {
    pub const ALL: [Mood; 11] = [
        Mood::Statement,
        Mood::Question,
        Mood::Order,
        Mood::FullExclamation,
        Mood::Np,
        Mood::Adj,
        Mood::About,
        Mood::Circumstances,
        Mood::WhatTerseExclamation,
        Mood::HowTerseExclamation,
        Mood::Subcircum,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Mood::Statement => "statement",
            Mood::Question => "question",
            Mood::Order => "order",
            Mood::FullExclamation => "full exclamation",
            Mood::Np => "np",
            Mood::Adj => "adj",
            Mood::About => "about",
            Mood::Circumstances => "circumstances",
            Mood::WhatTerseExclamation => "what terse exclamation",
            Mood::HowTerseExclamation => "how terse exclamation",
            Mood::Subcircum => "subcircum",
        }
    }

    pub fn parse(s: &str) -> Option<Mood> {
        Mood::ALL.into_iter().find(|m| m.as_str() == s)
    }

    /// Moods whose documents carry a subject/verb_phrase analysis.
    pub fn is_sentence(self) -> bool {
        matches!(
            self,
            Mood::Statement | Mood::Question | Mood::Order | Mood::FullExclamation | Mood::Subcircum
        )
    }
}

impl fmt::Display for Mood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Complexity {
    Simple,
    Complex,
    Compound,
    CompoundComplex,
}

impl Complexity {
    pub const ALL: [Complexity; 4] = [
        Complexity::Simple,
        Complexity::Complex,
        Complexity::Compound,
        Complexity::CompoundComplex,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Complexity::Simple => "simple",
            Complexity::Complex => "complex",
            Complexity::Compound => "compound",
            Complexity::CompoundComplex => "compound complex",
        }
    }

    pub fn parse(s: &str) -> Option<Complexity> {
        Complexity::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Voice {
    Active,
    Passive,
}

impl Voice {
    pub fn as_str(self) -> &'static str {
        match self {
            Voice::Active => "active",
            Voice::Passive => "passive",
        }
    }
}

/// Where an adjective or circumstance stands relative to what it modifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Position {
    /// Before a noun (adjectives) or before the subject (circumstances).
    Pre,
    /// Inside the verb group.
    Mid,
    /// After the verb or in predicate position.
    Post,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("no analysis; parsing got as far as token {furthest}")]
    NoParse { furthest: usize },
    #[error("input contains markup at byte {position}")]
    MarkupInInput { position: usize },
    #[error("verb `{verb}` licenses no attachment that fits")]
    UnknownAttachment { verb: String },
    #[error("`{word}` cannot stand in {position:?} position")]
    PositionViolation { word: String, position: Position },
}

/// One complete analysis of an expression.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseResult {
    pub document: NlmlDocument,
    /// Zero for full-sentence readings, higher for fragment readings.
    pub penalty: u32,
    /// Product of the lexical probabilities of the words used.
    pub probability: f64,
    /// Number of the rule that produced it, 1 to 16.
    pub rule: u8,
}

impl ParseResult {
    pub fn mood(&self) -> Option<Mood> {
        self.document.mood().as_deref().and_then(Mood::parse)
    }
}

/// A phrase-level analysis: the nodes of one constituent.
#[derive(Debug, Clone, PartialEq)]
pub struct Fragment {
    pub nodes: Vec<NlmlNode>,
    pub probability: f64,
}

impl Fragment {
    pub fn document(&self) -> NlmlDocument {
        NlmlDocument::new(self.nodes.clone())
    }
}

pub use sentence::{
    parse_exclamation, parse_order, parse_question, parse_simple_sentence, parse_statement,
};

pub fn parse_noun_phrase(tokens: &TokenStream, lex: &Lexicon) -> Result<Fragment, GrammarError> {
    parser::Parser::new(tokens, lex).noun_phrase_fragment()
}

/// A verb phrase agreeing with a subject of the given affixes.
pub fn parse_verb_phrase(
    tokens: &TokenStream,
    lex: &Lexicon,
    subject: AffixValue,
) -> Result<Fragment, GrammarError> {
    parser::Parser::new(tokens, lex).verb_phrase_fragment(subject)
}

/// A relative clause modifying a head with the given affixes.
pub fn parse_relative_clause(
    tokens: &TokenStream,
    lex: &Lexicon,
    head: AffixValue,
) -> Result<Fragment, GrammarError> {
    parser::Parser::new(tokens, lex).relative_clause_fragment(head)
}

pub fn parse_noun_clause(tokens: &TokenStream, lex: &Lexicon) -> Result<Fragment, GrammarError> {
    parser::Parser::new(tokens, lex).noun_clause_fragment()
}

pub fn parse_adjective_phrase(
    tokens: &TokenStream,
    lex: &Lexicon,
    position: Position,
) -> Result<Fragment, GrammarError> {
    parser::Parser::new(tokens, lex).adjective_fragment(position)
}

pub fn parse_circumstance(
    tokens: &TokenStream,
    lex: &Lexicon,
    position: Position,
) -> Result<Fragment, GrammarError> {
    parser::Parser::new(tokens, lex).circumstance_fragment(position)
}

pub fn parse_prep_phrase(tokens: &TokenStream, lex: &Lexicon) -> Result<Fragment, GrammarError> {
    parser::Parser::new(tokens, lex).prep_phrase_fragment()
}

pub fn parse_predicate(tokens: &TokenStream, lex: &Lexicon) -> Result<Fragment, GrammarError> {
    parser::Parser::new(tokens, lex).predicate_fragment()
}

/// Tokenizes and classifies raw text.
pub fn parse_text(text: &str, lex: &Lexicon) -> Result<Vec<ParseResult>, GrammarError> {
    let tokens = TokenStream::tokenize(text)?;
    classify_expression(&tokens, lex)
}
