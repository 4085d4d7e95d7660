//! `.fodb` files: a signature, a domain, an interpretation and a theory.
//!
//! ```text
//! signature { const s, l, a  rel C/1, E/1, H/2 }
//! domain { S_, L_, A_ }
//! interpret { s = S_  l = L_  a = A_  C = {S_, L_}  E = {A_}  H = {(S_,A_),(L_,A_)} }
//! theory { forall x (C(x) -> exists y H(x,y))  forall x (C(x) | E(x))  ~E(l)  C(s) }
//! ```
//!
//! Blocks appear in this order; `theory` may be omitted. Formulas in the
//! theory may be separated by whitespace, `;` or `,`.

use std::fmt::Write as _;

use crate::database::{Database, Theory};
use crate::lexer::{tokenize, Pos, Tok, Token};
use crate::parser::{FormulaParser, ParseError};
use crate::semantics::Structure;
use crate::syntax::{Signature, Symbol};

use super::IoError;

pub(crate) struct Cursor<'a> {
    pub(crate) tokens: &'a [Token],
    pub(crate) at: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(tokens: &'a [Token]) -> Self {
        Cursor { tokens, at: 0 }
    }

    pub(crate) fn peek(&self) -> Option<&'a Tok> {
        self.tokens.get(self.at).map(|t| &t.tok)
    }

    pub(crate) fn here(&self) -> Pos {
        self.tokens
            .get(self.at)
            .map(|t| t.pos)
            .or_else(|| self.tokens.last().map(|t| Pos { line: t.pos.line, col: t.pos.col + 1 }))
            .unwrap_or(Pos { line: 1, col: 1 })
    }

    pub(crate) fn error<T>(&self, message: impl Into<String>) -> Result<T, IoError> {
        Err(IoError::Syntax { pos: self.here(), message: message.into() })
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, tok: Tok) -> Result<(), IoError> {
        match self.peek() {
            Some(t) if *t == tok => {
                self.at += 1;
                Ok(())
            }
            Some(t) => self.error(format!("expected {tok}, found {t}")),
            None => self.error(format!("expected {tok}, found end of input")),
        }
    }

    pub(crate) fn ident(&mut self) -> Result<String, IoError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                self.at += 1;
                Ok(s.clone())
            }
            Some(t) => self.error(format!("expected identifier, found {t}")),
            None => self.error("expected identifier, found end of input"),
        }
    }

    pub(crate) fn keyword(&mut self, word: &str) -> Result<(), IoError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == word => {
                self.at += 1;
                Ok(())
            }
            Some(t) => self.error(format!("expected `{word}`, found {t}")),
            None => self.error(format!("expected `{word}`, found end of input")),
        }
    }

    pub(crate) fn at_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == word)
    }

    /// Reads formulas until the closing brace, which is consumed.
    pub(crate) fn formulas(&mut self, sig: &Signature) -> Result<Vec<crate::syntax::Formula>, IoError> {
        let mut out = Vec::new();
        loop {
            while self.eat(&Tok::Semi) || self.eat(&Tok::Comma) {}
            if self.eat(&Tok::RBrace) {
                return Ok(out);
            }
            if self.peek().is_none() {
                return self.error("expected `}`, found end of input");
            }
            let mut p = FormulaParser::new(&self.tokens[self.at..], sig);
            let f = p.formula()?;
            self.at += p.position();
            out.push(f);
        }
    }
}

/// Structure and theory of a `.fodb` file, before the theory is checked
/// against the structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FodbFile {
    pub structure: Structure,
    pub theory: Theory,
}

impl FodbFile {
    pub fn into_database(self) -> Result<Database, IoError> {
        Ok(crate::database::make_database(self.structure, self.theory)?)
    }
}

fn signature_block(c: &mut Cursor<'_>) -> Result<Signature, IoError> {
    c.keyword("signature")?;
    c.expect(Tok::LBrace)?;
    let mut sig = Signature::new();
    let add = |c: &Cursor<'_>, sig: &mut Signature, s: Symbol| -> Result<(), IoError> {
        let pos = c.here();
        sig.insert(s).map_err(|e| IoError::Syntax { pos, message: e.to_string() })
    };
    loop {
        if c.eat(&Tok::RBrace) {
            return Ok(sig);
        }
        if c.at_keyword("const") {
            c.at += 1;
            loop {
                let name = c.ident()?;
                add(c, &mut sig, Symbol::constant(name))?;
                if !c.eat(&Tok::Comma) {
                    break;
                }
            }
        } else if c.at_keyword("rel") {
            c.at += 1;
            loop {
                let name = c.ident()?;
                c.expect(Tok::Slash)?;
                let arity = match c.peek() {
                    Some(Tok::Number(n)) if *n >= 1 => *n as usize,
                    _ => return c.error("expected a relation arity of at least 1"),
                };
                c.at += 1;
                add(c, &mut sig, Symbol::relation(name, arity))?;
                if !c.eat(&Tok::Comma) {
                    break;
                }
            }
        } else {
            return c.error("expected `const`, `rel` or `}` in signature");
        }
    }
}

fn label_list(c: &mut Cursor<'_>) -> Result<Vec<String>, IoError> {
    let mut out = Vec::new();
    loop {
        if c.eat(&Tok::RBrace) {
            return Ok(out);
        }
        out.push(c.ident()?);
        c.eat(&Tok::Comma);
    }
}

fn tuple(c: &mut Cursor<'_>) -> Result<Vec<String>, IoError> {
    if !c.eat(&Tok::LParen) {
        return Ok(vec![c.ident()?]);
    }
    let mut t = vec![c.ident()?];
    while c.eat(&Tok::Comma) {
        t.push(c.ident()?);
    }
    c.expect(Tok::RParen)?;
    Ok(t)
}

type Interpretation = (Vec<(String, String)>, Vec<(String, Vec<Vec<String>>)>);

fn interpret_block(c: &mut Cursor<'_>, sig: &Signature) -> Result<Interpretation, IoError> {
    c.keyword("interpret")?;
    c.expect(Tok::LBrace)?;
    let mut consts = Vec::new();
    let mut rels = Vec::new();
    loop {
        if c.eat(&Tok::RBrace) {
            return Ok((consts, rels));
        }
        let pos = c.here();
        let name = c.ident()?;
        c.expect(Tok::Eq)?;
        match sig.arity(&name) {
            None => {
                return Err(IoError::Syntax { pos, message: format!("`{name}` is not declared in the signature") })
            }
            Some(0) => consts.push((name, c.ident()?)),
            Some(_) => {
                c.expect(Tok::LBrace)?;
                let mut tuples = Vec::new();
                if !c.eat(&Tok::RBrace) {
                    loop {
                        tuples.push(tuple(c)?);
                        if c.eat(&Tok::RBrace) {
                            break;
                        }
                        c.expect(Tok::Comma)?;
                    }
                }
                rels.push((name, tuples));
            }
        }
        c.eat(&Tok::Comma);
        c.eat(&Tok::Semi);
    }
}

/// Parses a `.fodb` text without checking the theory against the structure.
pub fn parse_fodb(text: &str) -> Result<FodbFile, IoError> {
    let tokens = tokenize(text).map_err(ParseError::from)?;
    let mut c = Cursor::new(&tokens);
    let sig = signature_block(&mut c)?;
    c.keyword("domain")?;
    c.expect(Tok::LBrace)?;
    let labels = label_list(&mut c)?;
    let (consts, rels) = interpret_block(&mut c, &sig)?;
    let mut sentences = Vec::new();
    if c.at_keyword("theory") {
        c.at += 1;
        c.expect(Tok::LBrace)?;
        sentences = c.formulas(&sig)?;
    }
    if let Some(t) = c.peek() {
        return c.error(format!("unexpected {t} after the last block"));
    }
    let structure = Structure::new(sig, labels, consts, rels)?;
    let theory = Theory::new(sentences)?;
    Ok(FodbFile { structure, theory })
}

/// Parses and validates a database.
pub fn parse_database(text: &str) -> Result<Database, IoError> {
    parse_fodb(text)?.into_database()
}

pub fn load_database(path: impl AsRef<std::path::Path>) -> Result<Database, IoError> {
    parse_database(&super::read(path.as_ref())?)
}

/// The `signature`, `domain` and `interpret` blocks of a structure.
pub fn write_structure(a: &Structure) -> String {
    let mut out = String::new();
    let sig = a.signature();
    let consts: Vec<&str> = sig.constants().collect();
    let rels: Vec<String> = sig.relations().map(|(r, n)| format!("{r}/{n}")).collect();
    let mut parts = Vec::new();
    if !consts.is_empty() {
        parts.push(format!("const {}", consts.join(", ")));
    }
    if !rels.is_empty() {
        parts.push(format!("rel {}", rels.join(", ")));
    }
    let _ = writeln!(out, "signature {{ {} }}", parts.join("  "));
    let labels: Vec<&str> = a.domain().iter().map(|e| e.label.as_str()).collect();
    let _ = writeln!(out, "domain {{ {} }}", labels.join(", "));
    let _ = writeln!(out, "interpret {{ {} }}", interpretation(a));
    out
}

/// The body of an `interpret` block on one line.
pub fn interpretation(a: &Structure) -> String {
    let mut items = Vec::new();
    for (c, &e) in a.constants() {
        items.push(format!("{c} = {}", a.label(e)));
    }
    for (r, set) in a.relations() {
        let tuples: Vec<String> = set
            .iter()
            .map(|t| match t.as_slice() {
                [e] => a.label(*e).to_string(),
                _ => {
                    let ls: Vec<&str> = t.iter().map(|&e| a.label(e)).collect();
                    format!("({})", ls.join(","))
                }
            })
            .collect();
        items.push(format!("{r} = {{{}}}", tuples.join(", ")));
    }
    items.join("  ")
}

pub fn write_fodb(a: &Structure, t: &Theory) -> String {
    let mut out = write_structure(a);
    if !t.is_empty() {
        out.push_str("theory {\n");
        for f in t.sentences() {
            let _ = writeln!(out, "  {f}");
        }
        out.push_str("}\n");
    }
    out
}

pub fn write_database(d: &Database) -> String {
    write_fodb(d.structure(), d.theory())
}
