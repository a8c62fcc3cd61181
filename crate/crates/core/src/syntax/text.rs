//! Concrete syntax: `;` for sequencing, `+` for the monoidal product
//! (binding tighter than `;`), parentheses, and `#` line comments.

use std::fmt;

use super::circuit::{Circuit, SortError};
use crate::algebra::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SyntaxError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error(transparent)]
    Sort(#[from] SortError),
}

/// Parse and sort-check a circuit term.
pub fn parse(text: &str) -> Result<Circuit, SyntaxError> {
    let c = parse_unchecked(text)?;
    c.sort()?;
    Ok(c)
}

/// Parse without sort checking.
pub fn parse_unchecked(text: &str) -> Result<Circuit, SyntaxError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let c = p.seq()?;
    p.skip_trivia();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected input after term"));
    }
    Ok(c)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> SyntaxError {
        let before = &self.src[..self.pos.min(self.src.len())];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let col = self.pos
            - before
                .iter()
                .rposition(|&b| b == b'\n')
                .map_or(0, |i| i + 1)
            + 1;
        SyntaxError::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(&b) = self.src.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.src.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        self.skip_trivia();
        if self.src.get(self.pos) == Some(&b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn seq(&mut self) -> Result<Circuit, SyntaxError> {
        let mut acc = self.par()?;
        while self.eat(b';') {
            acc = Circuit::seq(acc, self.par()?);
        }
        Ok(acc)
    }

    fn par(&mut self) -> Result<Circuit, SyntaxError> {
        let mut acc = self.atom()?;
        while self.eat(b'+') {
            acc = Circuit::par(acc, self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Circuit, SyntaxError> {
        if self.eat(b'(') {
            let c = self.seq()?;
            if !self.eat(b')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(c);
        }
        self.skip_trivia();
        let start = self.pos;
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a generator name or `(`"));
        }
        let name = std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string();
        let g = match name.as_str() {
            "copy" => Circuit::Copy,
            "discard" => Circuit::Discard,
            "add" => Circuit::Add,
            "zero" => Circuit::Zero,
            "reg" => Circuit::Reg,
            "one" => Circuit::One,
            "cocopy" => Circuit::CoCopy,
            "codiscard" => Circuit::CoDiscard,
            "coadd" => Circuit::CoAdd,
            "cozero" => Circuit::CoZero,
            "coreg" => Circuit::CoReg,
            "coone" => Circuit::CoOne,
            "id" => Circuit::Id,
            "sym" => Circuit::Sym,
            "empty" => Circuit::Empty,
            "scalar" => Circuit::Scalar(self.scalar_arg()?),
            "coscalar" => Circuit::CoScalar(self.scalar_arg()?),
            _ => {
                self.pos = start;
                return Err(self.error(format!("unknown generator `{name}`")));
            }
        };
        Ok(g)
    }

    fn scalar_arg(&mut self) -> Result<Rational, SyntaxError> {
        if !self.eat(b'(') {
            return Err(self.error("expected `(` after scalar"));
        }
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|&b| b != b')') {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let r: Rational = text.parse().map_err(|_| {
            let mut at = Parser {
                src: self.src,
                pos: start,
            };
            at.skip_trivia();
            at.error(format!("invalid scalar `{}`", text.trim()))
        })?;
        if !self.eat(b')') {
            return Err(self.error("expected `)`"));
        }
        Ok(r)
    }
}

fn atom_name(c: &Circuit) -> String {
    use Circuit::*;
    match c {
        Copy => "copy".into(),
        Discard => "discard".into(),
        Add => "add".into(),
        Zero => "zero".into(),
        Scalar(r) => format!("scalar({r})"),
        Reg => "reg".into(),
        One => "one".into(),
        CoCopy => "cocopy".into(),
        CoDiscard => "codiscard".into(),
        CoAdd => "coadd".into(),
        CoZero => "cozero".into(),
        CoScalar(r) => format!("coscalar({r})"),
        CoReg => "coreg".into(),
        CoOne => "coone".into(),
        Id => "id".into(),
        Sym => "sym".into(),
        Empty => "empty".into(),
        Seq(..) | Par(..) => unreachable!("not an atom"),
    }
}

fn write_term(c: &Circuit, f: &mut fmt::Formatter<'_>, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "(")?;
    }
    match c {
        Circuit::Seq(a, b) => {
            write_term(a, f, false)?;
            write!(f, " ; ")?;
            write_term(b, f, matches!(**b, Circuit::Seq(..)))?;
        }
        Circuit::Par(a, b) => {
            write_term(a, f, matches!(**a, Circuit::Seq(..)))?;
            write!(f, " + ")?;
            write_term(b, f, matches!(**b, Circuit::Seq(..) | Circuit::Par(..)))?;
        }
        atom => write!(f, "{}", atom_name(atom))?,
    }
    if parens {
        write!(f, ")")?;
    }
    Ok(())
}

/// Canonical text with minimal parentheses; `parse` reads it back to the
/// same tree.
impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, f, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Circuit::*;

    #[test]
    fn two_node_term() {
        assert_eq!(parse("one ; cozero").unwrap(), Circuit::seq(One, CoZero));
    }

    #[test]
    fn nested_term() {
        let c = parse("(copy + id) ; (id + add)").unwrap();
        assert_eq!(
            c,
            Circuit::seq(Circuit::par(Copy, Id), Circuit::par(Id, Add))
        );
    }

    #[test]
    fn sort_error_reports_arities() {
        match parse("copy ; copy") {
            Err(SyntaxError::Sort(e)) => assert_eq!((e.left_has, e.right_wants), (2, 1)),
            other => panic!("expected sort error, got {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        match parse("copy ;\n  frob") {
            Err(SyntaxError::Parse { line, col, .. }) => assert_eq!((line, col), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(parse("scalar(1/0)").is_err());
        assert!(parse("(copy").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn comments_are_skipped() {
        let c = parse("# the register\nreg # trailing\n").unwrap();
        assert_eq!(c, Reg);
    }

    #[test]
    fn render_examples() {
        assert_eq!(Circuit::seq(One, CoZero).to_string(), "one ; cozero");
        assert_eq!(
            Circuit::scalar(Rational::new(3, 2)).to_string(),
            "scalar(3/2)"
        );
        let c = Circuit::seq(Id, Circuit::seq(Reg, CoReg));
        assert_eq!(c.to_string(), "id ; (reg ; coreg)");
        let c = Circuit::par(Circuit::seq(Id, Id), Circuit::par(Reg, CoReg));
        assert_eq!(c.to_string(), "(id ; id) + (reg + coreg)");
        assert_eq!(parse(&c.to_string()).unwrap(), c);
    }
}
