//! Text grammar for words.
//!
//! A word is written either as whitespace-separated identifiers (`x t1 x y`)
//! or, when the input contains no whitespace, in compact form where every
//! variable is one letter followed by optional digits (`xt1xy`). Both forms
//! accept parenthesised groups and exponents: `(x y)^3`. The empty word is
//! written `1` (an empty string is accepted as well).

use super::{Var, Word, WordError};

/// Options controlling how ambiguous notation is read.
#[derive(Clone, Copy, Debug, Default)]
pub struct ParseOptions {
    /// Read a digit suffix as an exponent instead of part of the name, so
    /// that `a2ta` means `a a t a`.
    pub digit_powers: bool,
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Open,
    Close,
    Power(usize),
}

pub(super) fn parse_word(input: &str, options: ParseOptions) -> Result<Word, WordError> {
    let trimmed = input.trim();
    if trimmed.is_empty() || trimmed == "1" || trimmed == "ε" {
        return Ok(Word::empty());
    }
    let tokens = tokenize(trimmed, options)?;
    let mut parser = Parser { tokens: &tokens, pos: 0, input: trimmed };
    let letters = parser.sequence()?;
    if parser.pos != tokens.len() {
        return Err(parser.error("unbalanced `)`"));
    }
    Ok(Word::from(letters))
}

fn tokenize(input: &str, options: ParseOptions) -> Result<Vec<Token>, WordError> {
    let compact = !input.chars().any(char::is_whitespace);
    let chars: Vec<char> = input.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    let err = |reason: String| WordError::Parse { input: input.to_string(), reason };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '(' {
            tokens.push(Token::Open);
            i += 1;
        } else if c == ')' {
            tokens.push(Token::Close);
            i += 1;
        } else if c == '^' {
            let start = i + 1;
            let mut end = start;
            while end < chars.len() && chars[end].is_ascii_digit() {
                end += 1;
            }
            if end == start {
                return Err(err(format!("`^` at offset {i} is not followed by an exponent")));
            }
            let digits: String = chars[start..end].iter().collect();
            tokens.push(Token::Power(parse_exponent(&digits).map_err(err)?));
            i = end;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            i += 1;
            if compact {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            } else {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
            }
            let raw: String = chars[start..i].iter().collect();
            if options.digit_powers {
                let stem_len = raw.trim_end_matches(|ch: char| ch.is_ascii_digit()).len();
                let (stem, digits) = raw.split_at(stem_len);
                tokens.push(Token::Ident(stem.to_string()));
                if !digits.is_empty() {
                    tokens.push(Token::Power(parse_exponent(digits).map_err(err)?));
                }
            } else {
                tokens.push(Token::Ident(raw));
            }
        } else {
            return Err(err(format!("unexpected character `{c}` at offset {i}")));
        }
    }
    Ok(tokens)
}

fn parse_exponent(digits: &str) -> Result<usize, String> {
    digits.parse::<usize>().map_err(|e| format!("bad exponent `{digits}`: {e}"))
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    input: &'a str,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> WordError {
        WordError::Parse { input: self.input.to_string(), reason: reason.to_string() }
    }

    fn sequence(&mut self) -> Result<Vec<Var>, WordError> {
        let mut out = Vec::new();
        while let Some(token) = self.tokens.get(self.pos) {
            let mut atom = match token {
                Token::Ident(name) => {
                    self.pos += 1;
                    vec![Var::new(name)]
                }
                Token::Open => {
                    self.pos += 1;
                    let inner = self.sequence()?;
                    if self.tokens.get(self.pos) != Some(&Token::Close) {
                        return Err(self.error("missing `)`"));
                    }
                    self.pos += 1;
                    inner
                }
                Token::Close => break,
                Token::Power(_) => return Err(self.error("exponent without a base")),
            };
            while let Some(Token::Power(k)) = self.tokens.get(self.pos) {
                self.pos += 1;
                atom = atom.repeat(*k);
            }
            out.extend(atom);
        }
        Ok(out)
    }
}
