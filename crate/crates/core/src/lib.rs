//! Parsing a subset of English into NLML markup, an object model over the
//! markup, sentence transformations and a classified flat-file store.

pub mod grammar;
pub mod lexicon;
pub mod nldb;
pub mod nlml;
pub mod nlom;

pub use grammar::{classify_expression, parse_text, Complexity, GrammarError, Mood, ParseResult, TokenStream};
pub use lexicon::{load_lexicon, AffixValue, LexEntry, Lexicon, LexiconError};
pub use nlml::{deserialize, serialize, NlmlDocument, NlmlError, NlmlNode, Tag};
pub use nldb::{classify, DbClass, DbError, DbRecord, Store};
pub use nlom::{answer, build_model, negate, render_text, transform_mood, NlomError, Query, SentenceModel};
