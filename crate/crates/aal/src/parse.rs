//! Recursive-descent term parser.
//!
//! Grammar:
//! ```text
//! term   := VAR | SYMBOL '(' term (',' term)* ')' | SYMBOL
//! VAR    := 'v' digits        (index >= 1)
//! SYMBOL := ident, must be in the ambient signature with matching arity
//! ```
//! Whitespace between tokens is tolerated on input; the printer in
//! [`crate::term`] emits the canonical spacing, and parse ∘ print = id.

use crate::error::{Error, Result};
use crate::signature::{is_variable_token, Signature};
use crate::term::Term;

/// Reserved token for schematic psi templates: `vconj` / `vconj(tail)`
/// stands for the right-folded conjunction v1 ∧ ... ∧ vn (∧ tail).
pub const CONJ_MARKER: &str = "vconj";

pub fn parse_term(sig: &Signature, text: &str) -> Result<Term> {
    Parser {
        sig,
        bytes: text.as_bytes(),
        pos: 0,
        allow_marker: false,
    }
    .parse_full()
}

/// Like [`parse_term`] but accepting the `vconj` marker (psi files only).
pub fn parse_template(sig: &Signature, text: &str) -> Result<Term> {
    Parser {
        sig,
        bytes: text.as_bytes(),
        pos: 0,
        allow_marker: true,
    }
    .parse_full()
}

struct Parser<'a> {
    sig: &'a Signature,
    bytes: &'a [u8],
    pos: usize,
    allow_marker: bool,
}

impl<'a> Parser<'a> {
    fn parse_full(mut self) -> Result<Term> {
        let t = self.term()?;
        self.ws();
        if self.pos != self.bytes.len() {
            return Err(self.syntax("trailing input"));
        }
        Ok(t)
    }

    fn ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn syntax(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn ident(&mut self) -> Result<(String, usize)> {
        self.ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {}
            _ => return Err(self.syntax("expected an identifier")),
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("identifier bytes are ascii")
            .to_string();
        Ok((name, start))
    }

    fn term(&mut self) -> Result<Term> {
        let (name, start) = self.ident()?;
        if is_variable_token(&name) {
            let idx: u32 = name[1..].parse().map_err(|_| Error::Syntax {
                pos: start,
                msg: format!("variable index out of range in `{name}`"),
            })?;
            if idx == 0 {
                return Err(Error::Syntax {
                    pos: start,
                    msg: "variable indices start at 1".to_string(),
                });
            }
            return Ok(Term::Var(idx));
        }

        let args = self.maybe_args()?;
        if self.allow_marker && name == CONJ_MARKER {
            if args.len() > 1 {
                return Err(Error::Arity {
                    name,
                    expected: 1,
                    got: args.len(),
                    pos: start,
                });
            }
            return Ok(Term::App(name, args));
        }
        let Some(arity) = self.sig.arity_of(&name) else {
            return Err(Error::UnknownSymbol { name, pos: start });
        };
        if args.len() != arity {
            return Err(Error::Arity {
                name,
                expected: arity,
                got: args.len(),
                pos: start,
            });
        }
        Ok(Term::App(name, args))
    }

    fn maybe_args(&mut self) -> Result<Vec<Term>> {
        self.ws();
        if self.peek() != Some(b'(') {
            return Ok(Vec::new());
        }
        self.pos += 1;
        let mut args = vec![self.term()?];
        loop {
            self.ws();
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    args.push(self.term()?);
                }
                Some(b')') => {
                    self.pos += 1;
                    return Ok(args);
                }
                _ => return Err(self.syntax("expected `,` or `)`")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dmm_sig() -> Signature {
        Signature::new([("fuse", 2), ("meet", 2), ("join", 2), ("neg", 1), ("e", 0)]).unwrap()
    }

    #[test]
    fn parses_the_two_variable_psi() {
        let sig = dmm_sig();
        let text = "arrow(meet(v1, meet(v2, e)), meet(f, neg(fuse(f, f))))";
        // `arrow` and `f` are not primitive in the DMM signature.
        assert!(parse_term(&sig, text).is_err());
        let sig2 = Signature::new([
            ("fuse", 2),
            ("meet", 2),
            ("join", 2),
            ("neg", 1),
            ("e", 0),
            ("arrow", 2),
            ("f", 0),
        ])
        .unwrap();
        let t = parse_term(&sig2, text).unwrap();
        assert_eq!(t.to_string(), text);
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let sig = dmm_sig();
        match parse_term(&sig, "meet(v1)") {
            Err(Error::Arity { name, expected, got, .. }) => {
                assert_eq!((name.as_str(), expected, got), ("meet", 2, 1));
            }
            other => panic!("expected arity error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_symbol_is_reported_with_position() {
        let sig = dmm_sig();
        match parse_term(&sig, "meet(v1, bogus)") {
            Err(Error::UnknownSymbol { name, pos }) => {
                assert_eq!(name, "bogus");
                assert_eq!(pos, 9);
            }
            other => panic!("expected unknown symbol, got {other:?}"),
        }
    }

    #[test]
    fn v0_is_rejected() {
        assert!(parse_term(&dmm_sig(), "v0").is_err());
    }

    #[test]
    fn marker_only_in_template_mode() {
        let sig = dmm_sig();
        assert!(parse_term(&sig, "neg(vconj)").is_err());
        let t = parse_template(&sig, "neg(vconj(e))").unwrap();
        assert_eq!(t.to_string(), "neg(vconj(e))");
    }

    #[test]
    fn whitespace_tolerated_roundtrip_canonical() {
        let sig = dmm_sig();
        let t = parse_term(&sig, "  meet( v1 ,meet(v2,e) ) ").unwrap();
        assert_eq!(t.to_string(), "meet(v1, meet(v2, e))");
        let back = parse_term(&sig, &t.to_string()).unwrap();
        assert_eq!(back, t);
    }
}
