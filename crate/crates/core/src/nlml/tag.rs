use std::fmt;
use std::str::FromStr;

macro_rules! tags {
    ($($var:ident => $s:literal),+ $(,)?) => {
        /// The closed NLML element vocabulary.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Tag {
            $($var),+
        }

        impl Tag {
            pub const ALL: &'static [Tag] = &[$(Tag::$var),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(Tag::$var => $s),+
                }
            }
        }

        impl FromStr for Tag {
            type Err = ();

            fn from_str(s: &str) -> Result<Tag, ()> {
                match s {
                    $($s => Ok(Tag::$var),)+
                    _ => Err(()),
                }
            }
        }
    };
}

tags! {
    Mood => "mood",
    Complexity => "complexity",
    Voice => "voice",
    Subordinator => "subordinator",
    Sub => "sub",
    CompleteSentence => "complete_sentence",
    SimpleSentence => "simple_sentence",
    SentenceConnector => "sentence_connector",
    Subject => "subject",
    VerbPhrase => "verb_phrase",
    VerbPhrasePart => "verb_phrase_part",
    VerbPhraseConnector => "verb_phrase_connector",
    VerbType => "verb_type",
    Tense => "tense",
    Numb => "numb",
    Pers => "pers",
    Case => "case",
    VerbWord => "verb_word",
    KernelTense => "kernel_tense",
    Circum => "circum",
    CircumType => "circum_type",
    Noun => "noun",
    Type => "type",
    Word => "word",
    Adv => "adv",
    Adj => "adj",
    Grade => "grade",
    Predicate => "predicate",
    PredicateType => "predicate_type",
    DirectObject => "direct_object",
    IndirectObject => "indirect_object",
    PrepPhrase => "prep_phrase",
    Prep => "prep",
    Part => "part",
    PartConnector => "part_connector",
    RelativeClause => "relative_clause",
    NounClause => "noun_clause",
}

impl Tag {
    /// Tags whose content is a single value rather than nested elements.
    pub fn is_leaf(self) -> bool {
        matches!(
            self,
            Tag::Mood
                | Tag::Complexity
                | Tag::Voice
                | Tag::Subordinator
                | Tag::SentenceConnector
                | Tag::VerbPhraseConnector
                | Tag::VerbType
                | Tag::Tense
                | Tag::Numb
                | Tag::Pers
                | Tag::Case
                | Tag::VerbWord
                | Tag::KernelTense
                | Tag::CircumType
                | Tag::Type
                | Tag::Word
                | Tag::Grade
                | Tag::PredicateType
                | Tag::Prep
                | Tag::PartConnector
        )
    }

    /// Leaf tags that carry surface words of the sentence.
    pub fn is_surface(self) -> bool {
        matches!(
            self,
            Tag::Subordinator
                | Tag::SentenceConnector
                | Tag::VerbPhraseConnector
                | Tag::VerbWord
                | Tag::Word
                | Tag::Prep
                | Tag::PartConnector
        )
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
