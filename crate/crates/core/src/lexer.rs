//! Tokenizer shared by the formula parser and the `.fodb` / `.ops` / `.ded`
//! readers. `#` starts a comment that runs to the end of the line.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(u64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Slash,
    Eq,
    Neq,
    Not,
    And,
    Or,
    Implies,
    Iff,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Number(n) => write!(f, "number `{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Neq => f.write_str("`!=`"),
            Tok::Not => f.write_str("`~`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Implies => f.write_str("`->`"),
            Tok::Iff => f.write_str("`<->`"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: unexpected character `{ch}`")]
pub struct LexError {
    pub pos: Pos,
    pub ch: char,
}

pub fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

pub fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if is_ident_start(c)) && chars.all(is_ident_char)
}

/// Splits `src` into tokens. `start` is the position of the first character,
/// which lets line-oriented readers report positions in the enclosing file.
pub fn tokenize_at(src: &str, start: Pos) -> Result<Vec<Token>, LexError> {
    let mut out = Vec::new();
    let mut line = start.line;
    let mut col = start.col;
    let mut it = src.chars().peekable();
    while let Some(c) = it.next() {
        let pos = Pos { line, col };
        col += 1;
        let tok = match c {
            '\n' => {
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => continue,
            '#' => {
                for c in it.by_ref() {
                    if c == '\n' {
                        line += 1;
                        col = 1;
                        break;
                    }
                }
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '/' => Tok::Slash,
            '=' => Tok::Eq,
            '~' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '!' if it.peek() == Some(&'=') => {
                it.next();
                col += 1;
                Tok::Neq
            }
            '-' if it.peek() == Some(&'>') => {
                it.next();
                col += 1;
                Tok::Implies
            }
            '<' => {
                let mut ahead = it.clone();
                if ahead.next() == Some('-') && ahead.next() == Some('>') {
                    it.next();
                    it.next();
                    col += 2;
                    Tok::Iff
                } else {
                    return Err(LexError { pos, ch: c });
                }
            }
            c if c.is_ascii_digit() => {
                let mut n = u64::from(c.to_digit(10).unwrap_or(0));
                while let Some(d) = it.peek().and_then(|d| d.to_digit(10)) {
                    it.next();
                    col += 1;
                    n = n.saturating_mul(10).saturating_add(u64::from(d));
                }
                Tok::Number(n)
            }
            c if is_ident_start(c) => {
                let mut s = String::from(c);
                while let Some(&d) = it.peek() {
                    if !is_ident_char(d) {
                        break;
                    }
                    s.push(d);
                    it.next();
                    col += 1;
                }
                Tok::Ident(s)
            }
            _ => return Err(LexError { pos, ch: c }),
        };
        out.push(Token { tok, pos });
    }
    Ok(out)
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, LexError> {
    tokenize_at(src, Pos { line: 1, col: 1 })
}
