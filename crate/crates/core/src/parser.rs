//! Recursive-descent parser for the ASCII formula language.
//!
//! Precedence from loosest to tightest: `<->` (left), `->` (right), `|`, `&`,
//! `~` and quantifiers, atoms. A quantifier body is a single unary formula,
//! so `forall x C(x) & E(a)` is a conjunction whose left side is quantified.
//!
//! Identifiers resolve in this order: a variable bound by an enclosing
//! quantifier, a constant of the signature, a free variable if the name looks
//! like one (`u`..`z` followed by digits, `_` or `'`), otherwise an unknown
//! constant. Unknown symbols are reported with their inferred arity rather
//! than rejected.

use std::collections::BTreeMap;

use crate::lexer::{tokenize, LexError, Pos, Tok, Token};
use crate::syntax::{Formula, Signature, Symbol, Term};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error("{pos}: {message}")]
    Syntax { pos: Pos, message: String },
    #[error("{pos}: `{symbol}` has arity {expected} but is used with {found} argument(s)")]
    ArityMismatch {
        pos: Pos,
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("{pos}: unknown symbol `{symbol}` used with arity {first} and {second}")]
    InconsistentArity {
        pos: Pos,
        symbol: String,
        first: usize,
        second: usize,
    },
}

impl ParseError {
    pub fn pos(&self) -> Option<Pos> {
        match self {
            ParseError::Lex(e) => Some(e.pos),
            ParseError::Syntax { pos, .. }
            | ParseError::ArityMismatch { pos, .. }
            | ParseError::InconsistentArity { pos, .. } => Some(*pos),
        }
    }
}

/// Result of parsing one formula: the tree plus every symbol it uses that the
/// signature does not declare.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub formula: Formula,
    pub unknown: Vec<Symbol>,
}

pub fn parse_formula(text: &str, sig: &Signature) -> Result<Parsed, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = FormulaParser::new(&tokens, sig);
    let formula = p.formula()?;
    if let Some(t) = p.peek_token() {
        return Err(ParseError::Syntax {
            pos: t.pos,
            message: format!("unexpected {} after formula", t.tok),
        });
    }
    Ok(Parsed { formula, unknown: p.unknown_symbols() })
}

/// Parses a sentence, failing if it has free variables.
pub fn parse_sentence(text: &str, sig: &Signature) -> Result<Parsed, ParseError> {
    let parsed = parse_formula(text, sig)?;
    if let Some(v) = parsed.formula.free_variables().into_iter().next() {
        return Err(ParseError::Syntax {
            pos: Pos { line: 1, col: 1 },
            message: format!("`{v}` is free; a sentence is required"),
        });
    }
    Ok(parsed)
}

/// Whether an unbound, undeclared identifier is read as a variable.
pub fn looks_like_variable(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('u'..='z'))
        && chars.all(|c| c.is_ascii_digit() || c == '_' || c == '\'')
}

fn is_keyword(s: &str) -> bool {
    matches!(s, "forall" | "exists")
}

/// Token-level parser. Several formulas may be read from one token stream;
/// unknown-symbol arities are shared across them.
pub(crate) struct FormulaParser<'a> {
    tokens: &'a [Token],
    at: usize,
    sig: &'a Signature,
    bound: Vec<String>,
    unknown: BTreeMap<String, usize>,
}

impl<'a> FormulaParser<'a> {
    pub(crate) fn new(tokens: &'a [Token], sig: &'a Signature) -> Self {
        FormulaParser { tokens, at: 0, sig, bound: Vec::new(), unknown: BTreeMap::new() }
    }

    pub(crate) fn position(&self) -> usize {
        self.at
    }

    pub(crate) fn peek_token(&self) -> Option<&'a Token> {
        self.tokens.get(self.at)
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.peek_token().map(|t| &t.tok)
    }

    fn here(&self) -> Pos {
        self.peek_token()
            .map(|t| t.pos)
            .or_else(|| self.tokens.last().map(|t| Pos { line: t.pos.line, col: t.pos.col + 1 }))
            .unwrap_or(Pos { line: 1, col: 1 })
    }

    fn bump(&mut self) -> Option<&'a Token> {
        let t = self.tokens.get(self.at);
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.here(), message: message.into() })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == tok => {
                self.at += 1;
                Ok(())
            }
            Some(t) => self.error(format!("expected {tok}, found {t}")),
            None => self.error(format!("expected {tok}, found end of input")),
        }
    }

    pub(crate) fn unknown_symbols(&self) -> Vec<Symbol> {
        self.unknown
            .iter()
            .map(|(n, &a)| Symbol { name: n.clone(), arity: a })
            .collect()
    }

    pub(crate) fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.implication()?;
        while self.peek() == Some(&Tok::Iff) {
            self.at += 1;
            let right = self.implication()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if self.peek() == Some(&Tok::Implies) {
            self.at += 1;
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.conjunction()?;
        while self.peek() == Some(&Tok::Or) {
            self.at += 1;
            let right = self.conjunction()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.at += 1;
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.at += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Ident(kw)) if is_keyword(kw) => {
                let universal = kw == "forall";
                self.at += 1;
                let var = match self.peek() {
                    Some(Tok::Ident(v)) if !is_keyword(v) => v.clone(),
                    _ => return self.error("expected a variable after quantifier"),
                };
                self.at += 1;
                self.bound.push(var.clone());
                let body = self.unary();
                self.bound.pop();
                let body = body?;
                Ok(if universal { Formula::forall(var, body) } else { Formula::exists(var, body) })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.at += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Some(Tok::Ident(name)) if self.tokens.get(self.at + 1).map(|t| &t.tok) == Some(&Tok::LParen) => {
                let pos = self.here();
                let name = name.clone();
                self.at += 2;
                let mut args = vec![self.term()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.at += 1;
                    args.push(self.term()?);
                }
                self.expect(Tok::RParen)?;
                self.check_symbol(&name, args.len(), pos)?;
                Ok(Formula::atom(name, args))
            }
            Some(Tok::Ident(_)) => {
                let left = self.term()?;
                match self.peek() {
                    Some(Tok::Eq) => {
                        self.at += 1;
                        Ok(Formula::eq(left, self.term()?))
                    }
                    Some(Tok::Neq) => {
                        self.at += 1;
                        Ok(Formula::not(Formula::eq(left, self.term()?)))
                    }
                    _ => self.error(format!("expected `=` or `!=` after term `{left}`")),
                }
            }
            Some(t) => self.error(format!("expected a formula, found {t}")),
            None => self.error("expected a formula, found end of input"),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let pos = self.here();
        let name = match self.bump().map(|t| &t.tok) {
            Some(Tok::Ident(n)) if !is_keyword(n) => n.clone(),
            Some(t) => {
                return Err(ParseError::Syntax { pos, message: format!("expected a term, found {t}") })
            }
            None => {
                return Err(ParseError::Syntax { pos, message: "expected a term, found end of input".into() })
            }
        };
        if self.bound.contains(&name) {
            return Ok(Term::Var(name));
        }
        match self.sig.arity(&name) {
            Some(0) => Ok(Term::Const(name)),
            Some(n) => Err(ParseError::ArityMismatch { pos, symbol: name, expected: n, found: 0 }),
            None if self.unknown.get(&name) == Some(&0) => Ok(Term::Const(name)),
            None if looks_like_variable(&name) && !self.unknown.contains_key(&name) => Ok(Term::Var(name)),
            None => {
                self.check_symbol(&name, 0, pos)?;
                Ok(Term::Const(name))
            }
        }
    }

    fn check_symbol(&mut self, name: &str, arity: usize, pos: Pos) -> Result<(), ParseError> {
        match self.sig.arity(name) {
            Some(n) if n == arity => Ok(()),
            Some(n) => Err(ParseError::ArityMismatch { pos, symbol: name.into(), expected: n, found: arity }),
            None => match self.unknown.get(name) {
                Some(&n) if n != arity => Err(ParseError::InconsistentArity {
                    pos,
                    symbol: name.into(),
                    first: n,
                    second: arity,
                }),
                Some(_) => Ok(()),
                None => {
                    self.unknown.insert(name.into(), arity);
                    Ok(())
                }
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper_sig() -> Signature {
        Signature::from_symbols([
            Symbol::constant("s"),
            Symbol::constant("l"),
            Symbol::constant("a"),
            Symbol::relation("C", 1),
            Symbol::relation("E", 1),
            Symbol::relation("H", 2),
        ])
        .unwrap()
    }

    #[test]
    fn quantified_implication() {
        let p = parse_formula("forall x (C(x) -> exists y H(x,y))", &paper_sig()).unwrap();
        assert!(p.unknown.is_empty());
        let expected = Formula::forall(
            "x",
            Formula::implies(
                Formula::atom("C", vec![Term::var("x")]),
                Formula::exists("y", Formula::atom("H", vec![Term::var("x"), Term::var("y")])),
            ),
        );
        assert_eq!(p.formula, expected);
    }

    #[test]
    fn identity_sentence() {
        let sig = Signature::from_symbols([Symbol::constant("s")]).unwrap();
        let p = parse_formula("s = s", &sig).unwrap();
        assert_eq!(p.formula, Formula::eq(Term::constant("s"), Term::constant("s")));
        assert!(p.formula.is_sentence());
        assert!(p.unknown.is_empty());
    }

    #[test]
    fn unknown_constant_is_reported() {
        let p = parse_formula("E(b)", &paper_sig()).unwrap();
        assert_eq!(p.formula, Formula::atom("E", vec![Term::constant("b")]));
        assert_eq!(p.unknown, vec![Symbol::constant("b")]);
    }

    #[test]
    fn unknown_relation_arity_is_inferred() {
        let p = parse_formula("forall x (G(x,a) -> G(a,x))", &paper_sig()).unwrap();
        assert_eq!(p.unknown, vec![Symbol::relation("G", 2)]);
        let err = parse_formula("G(a) & G(a,a)", &paper_sig()).unwrap_err();
        assert!(matches!(err, ParseError::InconsistentArity { ref symbol, first: 1, second: 2, .. } if symbol == "G"));
    }

    #[test]
    fn arity_mismatch_names_symbol() {
        let err = parse_formula("H(s)", &paper_sig()).unwrap_err();
        assert!(matches!(err, ParseError::ArityMismatch { ref symbol, expected: 2, found: 1, .. } if symbol == "H"));
        let err = parse_formula("s(a)", &paper_sig()).unwrap_err();
        assert!(matches!(err, ParseError::ArityMismatch { expected: 0, found: 1, .. }));
        let err = parse_formula("C = s", &paper_sig()).unwrap_err();
        assert!(matches!(err, ParseError::ArityMismatch { expected: 1, found: 0, .. }));
    }

    #[test]
    fn syntax_error_has_position() {
        let err = parse_formula("C(s) &\n  & E(a)", &paper_sig()).unwrap_err();
        assert_eq!(err.pos(), Some(Pos { line: 2, col: 3 }));
        let err = parse_formula("C(s) E(a)", &paper_sig()).unwrap_err();
        assert_eq!(err.pos(), Some(Pos { line: 1, col: 6 }));
        assert!(parse_formula("forall (C(x))", &paper_sig()).is_err());
        assert!(parse_formula("(C(s)", &paper_sig()).is_err());
    }

    #[test]
    fn free_variable_convention() {
        let p = parse_formula("C(x)", &paper_sig()).unwrap();
        assert_eq!(p.formula.free_variables().len(), 1);
        assert!(p.unknown.is_empty());
        assert!(parse_sentence("C(x)", &paper_sig()).is_err());
        let p = parse_formula("forall x H(x,y)", &paper_sig()).unwrap();
        assert_eq!(p.formula.free_variables().into_iter().collect::<Vec<_>>(), vec!["y"]);
    }

    #[test]
    fn bound_variable_shadows_constant() {
        let p = parse_formula("forall a E(a)", &paper_sig()).unwrap();
        assert_eq!(p.formula, Formula::forall("a", Formula::atom("E", vec![Term::var("a")])));
    }

    #[test]
    fn precedence_and_associativity() {
        let sig = paper_sig();
        let f = parse_formula("C(s) -> C(l) -> C(a)", &sig).unwrap().formula;
        assert!(matches!(f, Formula::Implies(_, ref r) if matches!(**r, Formula::Implies(..))));
        let f = parse_formula("C(s) | C(l) & C(a)", &sig).unwrap().formula;
        assert!(matches!(f, Formula::Or(_, ref r) if matches!(**r, Formula::And(..))));
        let f = parse_formula("~C(s) & C(a) <-> C(l)", &sig).unwrap().formula;
        assert!(matches!(f, Formula::Iff(ref l, _) if matches!(**l, Formula::And(..))));
        let f = parse_formula("forall x C(x) & E(a)", &sig).unwrap().formula;
        assert!(matches!(f, Formula::And(ref l, _) if matches!(**l, Formula::Forall(..))));
        let f = parse_formula("s != a", &sig).unwrap().formula;
        assert_eq!(f, Formula::not(Formula::eq(Term::constant("s"), Term::constant("a"))));
    }
}
