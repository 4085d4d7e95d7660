//! `.ded` files: `premises { … } steps { … } conclusion { … }`.
//!
//! `premises` and `steps` may be omitted. Formulas are read against the
//! given signature; symbols outside it are allowed.

use crate::lexer::tokenize;
use crate::metrics::Deduction;
use crate::parser::ParseError;
use crate::syntax::Signature;

use super::fodb::Cursor;
use super::IoError;

pub fn parse_deduction(text: &str, sig: &Signature) -> Result<Deduction, IoError> {
    let tokens = tokenize(text).map_err(ParseError::from)?;
    let mut c = Cursor::new(&tokens);
    let block = |c: &mut Cursor<'_>, name: &str, required: bool| -> Result<Vec<_>, IoError> {
        if !required && !c.at_keyword(name) {
            return Ok(Vec::new());
        }
        c.keyword(name)?;
        c.expect(crate::lexer::Tok::LBrace)?;
        c.formulas(sig)
    };
    let premises = block(&mut c, "premises", false)?;
    let steps = block(&mut c, "steps", false)?;
    let pos = c.here();
    let mut conclusion = block(&mut c, "conclusion", true)?;
    if conclusion.len() != 1 {
        return Err(IoError::Syntax { pos, message: format!("expected one conclusion, found {}", conclusion.len()) });
    }
    if let Some(t) = c.peek() {
        return c.error(format!("unexpected {t} after the conclusion"));
    }
    Ok(Deduction::new(premises, steps, conclusion.remove(0))?)
}

pub fn load_deduction(path: impl AsRef<std::path::Path>, sig: &Signature) -> Result<Deduction, IoError> {
    parse_deduction(&super::read(path.as_ref())?, sig)
}
