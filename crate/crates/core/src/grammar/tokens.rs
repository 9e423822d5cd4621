use super::GrammarError;

const PUNCT: [char; 4] = ['.', '?', '!', ','];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// Text as written.
    pub text: String,
    /// Byte span in the input.
    pub start: usize,
    pub end: usize,
}

impl Token {
    pub fn is_punct(&self) -> bool {
        self.text.len() == 1 && self.text.starts_with(PUNCT)
    }
}

/// Word tokens with `. ? ! ,` split off as standalone tokens.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TokenStream {
    tokens: Vec<Token>,
}

impl TokenStream {
    pub fn tokenize(input: &str) -> Result<TokenStream, GrammarError> {
        if let Some(position) = input.find(['<', '>']) {
            return Err(GrammarError::MarkupInInput { position });
        }
        let mut tokens = Vec::new();
        let mut start: Option<usize> = None;
        for (i, c) in input.char_indices() {
            if c.is_whitespace() || PUNCT.contains(&c) {
                if let Some(s) = start.take() {
                    tokens.push(Token { text: input[s..i].to_string(), start: s, end: i });
                }
                if !c.is_whitespace() {
                    let e = i + c.len_utf8();
                    tokens.push(Token { text: input[i..e].to_string(), start: i, end: e });
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            tokens.push(Token { text: input[s..].to_string(), start: s, end: input.len() });
        }
        Ok(TokenStream { tokens })
    }

    pub fn from_words<S: AsRef<str>>(words: &[S]) -> Result<TokenStream, GrammarError> {
        let joined: Vec<&str> = words.iter().map(AsRef::as_ref).collect();
        TokenStream::tokenize(&joined.join(" "))
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Tokens joined by single spaces with no space before punctuation.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tokens {
            if !out.is_empty() && !t.is_punct() {
                out.push(' ');
            }
            out.push_str(&t.text);
        }
        out
    }
}

/// The text form `TokenStream::to_text` reproduces: whitespace runs collapsed,
/// no space before punctuation, one space after punctuation that precedes a word.
pub fn normalize_input(input: &str) -> String {
    let mut out = String::new();
    let mut pending_space = false;
    for c in input.chars() {
        if c.is_whitespace() {
            pending_space = !out.is_empty();
        } else if PUNCT.contains(&c) {
            out.push(c);
            pending_space = false;
        } else {
            let after_punct = out.ends_with(PUNCT);
            if (pending_space || after_punct) && !out.is_empty() {
                out.push(' ');
            }
            out.push(c);
            pending_space = false;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn splits_punctuation() {
        let ts = TokenStream::tokenize("If it rains today, you will not go.").unwrap();
        let words: Vec<_> = ts.tokens().iter().map(|t| t.text.as_str()).collect();
        assert_eq!(words, ["If", "it", "rains", "today", ",", "you", "will", "not", "go", "."]);
        assert_eq!(ts.tokens()[4].start, 17);
    }

    #[test]
    fn contractions_stay_whole() {
        let ts = TokenStream::tokenize("I don't know!").unwrap();
        assert_eq!(ts.len(), 4);
        assert_eq!(ts.tokens()[1].text, "don't");
    }

    #[test]
    fn markup_rejected() {
        assert_eq!(
            TokenStream::tokenize("a <b"),
            Err(GrammarError::MarkupInInput { position: 2 })
        );
    }

    proptest! {
        #[test]
        fn text_reproduces_normalized_input(s in "[a-z' .,?!]{0,40}") {
            let ts = TokenStream::tokenize(&s).unwrap();
            prop_assert_eq!(ts.to_text(), normalize_input(&s));
        }
    }
}
