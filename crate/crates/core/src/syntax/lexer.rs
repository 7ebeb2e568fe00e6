use crate::error::{Error, Location, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum Token {
    /// `[a-z][A-Za-z0-9_]*`
    Ident(String),
    /// `[A-Z][A-Za-z0-9_]*`
    Variable(String),
    Number(String),
    Dot,
    Comma,
    And,
    Or,
    Arrow,
    Iff,
    Minus,
    Falsum,
    Verum,
    If,
    LParen,
    RParen,
    /// `#atoms`
    Declare,
    /// `=`, `!=`; recognised only to be rejected
    Equality,
}

impl Token {
    pub(crate) fn describe(&self) -> String {
        match self {
            Token::Ident(s) | Token::Variable(s) | Token::Number(s) => format!("`{s}`"),
            Token::Dot => "`.`".into(),
            Token::Comma => "`,`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Arrow => "`->`".into(),
            Token::Iff => "`<->`".into(),
            Token::Minus => "`-`".into(),
            Token::Falsum => "`#f`".into(),
            Token::Verum => "`#t`".into(),
            Token::If => "`:-`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Declare => "`#atoms`".into(),
            Token::Equality => "equality".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub token: Token,
    pub at: Location,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0usize, 1usize, 1usize);

    let err = |line, column, message: String| Error::Syntax {
        at: Location { line, column },
        message,
    };

    while i < chars.len() {
        let c = chars[i];
        let at = Location { line, column };
        let mut width = 1;
        let token = match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
                continue;
            }
            c if c.is_whitespace() => None,
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '.' => Some(Token::Dot),
            ',' => Some(Token::Comma),
            '&' => Some(Token::And),
            '|' => Some(Token::Or),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            '=' => Some(Token::Equality),
            '-' if chars.get(i + 1) == Some(&'>') => {
                width = 2;
                Some(Token::Arrow)
            }
            '-' => Some(Token::Minus),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                width = 3;
                Some(Token::Iff)
            }
            '!' if chars.get(i + 1) == Some(&'=') => {
                width = 2;
                Some(Token::Equality)
            }
            ':' if chars.get(i + 1) == Some(&'-') => {
                width = 2;
                Some(Token::If)
            }
            '#' => {
                let word: String = chars[i + 1..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                    .collect();
                width = 1 + word.len();
                match word.as_str() {
                    "f" => Some(Token::Falsum),
                    "t" => Some(Token::Verum),
                    "atoms" => Some(Token::Declare),
                    _ => return Err(err(line, column, format!("unknown directive `#{word}`"))),
                }
            }
            c if c.is_ascii_alphanumeric() => {
                let word: String = chars[i..]
                    .iter()
                    .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                    .collect();
                width = word.len();
                Some(if c.is_ascii_lowercase() {
                    Token::Ident(word)
                } else if c.is_ascii_uppercase() {
                    Token::Variable(word)
                } else if word.chars().all(|c| c.is_ascii_digit()) {
                    Token::Number(word)
                } else {
                    return Err(err(line, column, format!("malformed token `{word}`")));
                })
            }
            other => return Err(err(line, column, format!("unexpected character `{other}`"))),
        };
        if let Some(token) = token {
            out.push(Spanned { token, at });
        }
        i += width;
        column += width;
    }
    Ok(out)
}

/// A cursor over a token stream.
pub(crate) struct Tokens {
    tokens: Vec<Spanned>,
    pos: usize,
    end: Location,
}

impl Tokens {
    pub(crate) fn new(text: &str) -> Result<Tokens> {
        let tokens = tokenize(text)?;
        let lines = text.split('\n').count().max(1);
        let last = text.rsplit('\n').next().unwrap_or("");
        Ok(Tokens {
            tokens,
            pos: 0,
            end: Location {
                line: lines,
                column: last.chars().count() + 1,
            },
        })
    }

    pub(crate) fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|s| &s.token)
    }

    pub(crate) fn peek_at(&self, offset: usize) -> Option<&Token> {
        self.tokens.get(self.pos + offset).map(|s| &s.token)
    }

    pub(crate) fn location(&self) -> Location {
        self.tokens.get(self.pos).map_or(self.end, |s| s.at)
    }

    pub(crate) fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|s| s.token.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    pub(crate) fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, token: &Token, context: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected {} {context}", token.describe())))
        }
    }

    pub(crate) fn unexpected(&self, message: &str) -> Error {
        let found = self
            .peek()
            .map_or_else(|| "end of input".to_owned(), Token::describe);
        Error::Syntax {
            at: self.location(),
            message: format!("{message}, found {found}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<Token> {
        tokenize(text).unwrap().into_iter().map(|s| s.token).collect()
    }

    #[test]
    fn arrows_and_negation() {
        assert_eq!(
            kinds("--a -> -b <-> c"),
            vec![
                Token::Minus,
                Token::Minus,
                Token::Ident("a".into()),
                Token::Arrow,
                Token::Minus,
                Token::Ident("b".into()),
                Token::Iff,
                Token::Ident("c".into()),
            ]
        );
    }

    #[test]
    fn comments_and_locations() {
        let toks = tokenize("% header\n  a :- b.").unwrap();
        assert_eq!(toks[0].at, Location { line: 2, column: 3 });
        assert_eq!(toks[1].token, Token::If);
        assert_eq!(toks[1].at, Location { line: 2, column: 5 });
    }

    #[test]
    fn bad_character() {
        let e = tokenize("a ; b").unwrap_err();
        assert!(matches!(e, Error::Syntax { at: Location { line: 1, column: 3 }, .. }));
    }
}
