//! `.ops` scripts: one operation per line.
//!
//! ```text
//! insert const b = A_
//! insert rel E (new B_)
//! delete const b reinterpret B_
//! delete rel E tuple (B_)
//! delete const c drop
//! delete rel R drop
//! ```

use crate::database::Database;
use crate::lexer::{tokenize_at, Pos, Tok};
use crate::ops::{ElementRef, OpMode, Operation};
use crate::parser::ParseError;
use crate::update::Update;

use super::fodb::Cursor;
use super::IoError;

fn element_ref(c: &mut Cursor<'_>) -> Result<ElementRef, IoError> {
    let first = c.ident()?;
    if first == "new" {
        if let Some(Tok::Ident(_)) = c.peek() {
            return Ok(ElementRef::Fresh(c.ident()?));
        }
    }
    Ok(ElementRef::Existing(first))
}

fn parenthesised<T>(c: &mut Cursor<'_>, mut item: impl FnMut(&mut Cursor<'_>) -> Result<T, IoError>) -> Result<Vec<T>, IoError> {
    c.expect(Tok::LParen)?;
    let mut out = vec![item(c)?];
    while c.eat(&Tok::Comma) {
        out.push(item(c)?);
    }
    c.expect(Tok::RParen)?;
    Ok(out)
}

fn operation(c: &mut Cursor<'_>) -> Result<Operation, IoError> {
    let verb = c.ident()?;
    let kind = c.ident()?;
    let name = c.ident()?;
    let op = match (verb.as_str(), kind.as_str()) {
        ("insert", "const") => {
            c.expect(Tok::Eq)?;
            Operation::InsertConstant { name, target: element_ref(c)? }
        }
        ("insert", "rel") => Operation::InsertTuple { relation: name, args: parenthesised(c, element_ref)? },
        ("delete", "const") => match c.ident()?.as_str() {
            "reinterpret" => Operation::ReinterpretConstant { name, target: c.ident()? },
            "drop" => Operation::DropConstant { name },
            other => return c.error(format!("expected `reinterpret` or `drop`, found `{other}`")),
        },
        ("delete", "rel") => match c.ident()?.as_str() {
            "tuple" => Operation::RemoveTuple { relation: name, tuple: parenthesised(c, |c| c.ident())? },
            "drop" => Operation::DropRelation { relation: name },
            other => return c.error(format!("expected `tuple` or `drop`, found `{other}`")),
        },
        _ => return c.error(format!("expected `insert|delete const|rel`, found `{verb} {kind}`")),
    };
    if let Some(t) = c.peek() {
        return c.error(format!("unexpected {t} after operation"));
    }
    Ok(op)
}

pub fn parse_ops(text: &str) -> Result<Vec<Operation>, IoError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let tokens = tokenize_at(line, Pos { line: i + 1, col: 1 }).map_err(ParseError::from)?;
        if tokens.is_empty() {
            continue;
        }
        out.push(operation(&mut Cursor::new(&tokens))?);
    }
    Ok(out)
}

pub fn write_ops(ops: &[Operation]) -> String {
    ops.iter().map(|op| format!("{op}\n")).collect()
}

/// Applies a script to `base`.
pub fn parse_update(text: &str, base: Database, mode: OpMode) -> Result<Update, IoError> {
    Ok(Update::from_ops(base, parse_ops(text)?, mode)?)
}

pub fn load_ops_script(path: impl AsRef<std::path::Path>, base: Database, mode: OpMode) -> Result<Update, IoError> {
    parse_update(&super::read(path.as_ref())?, base, mode)
}
