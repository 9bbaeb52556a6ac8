//! Parser for vector-field and 1-form expressions.
//!
//! Grammar: standard precedence (`^` over `*` over `+`/`-`), mandatory `*`
//! for multiplication. A valid input is a polynomial combination containing
//! the formal symbols `d/dz`, `d/dw` (vector field) or `dz`, `dw` (1-form),
//! exactly one family per input. 1-forms `A*dz + B*dw` convert to the dual
//! vector field `(P, Q) = (B, -A)`.

use std::fmt;

use folia_core::algebra::rat::Rat;
use folia_core::germ::GermError;
use folia_core::{BiPoly, FoliationGerm};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    MixedSyntax,
    NonIntegerExponent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error at offset {}: {m}", self.offset),
            ParseErrorKind::MixedSyntax => write!(
                f,
                "mixed vector-field and 1-form syntax at offset {}",
                self.offset
            ),
            ParseErrorKind::NonIntegerExponent => {
                write!(f, "exponent at offset {} is not a nonnegative integer", self.offset)
            }
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    VectorField,
    OneForm,
}

/// Parse result: the saturated germ, which syntax was used, and the common
/// factor divided out at construction (warn when nonconstant).
#[derive(Debug, Clone)]
pub struct ParsedFoliation {
    pub germ: FoliationGerm,
    pub kind: InputKind,
    pub removed_factor: Option<BiPoly>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sym {
    DDz,
    DDw,
    Dz,
    Dw,
}

impl Sym {
    fn kind(self) -> InputKind {
        match self {
            Sym::DDz | Sym::DDw => InputKind::VectorField,
            Sym::Dz | Sym::Dw => InputKind::OneForm,
        }
    }
}

/// Intermediate value: either a plain polynomial or a symbol combination.
#[derive(Debug, Clone)]
enum Val {
    Scalar(BiPoly),
    Form {
        kind: InputKind,
        /// Coefficients of (d/dz, d/dw) or (dz, dw).
        comps: [BiPoly; 2],
    },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, at: usize, msg: &str) -> Result<T, ParseError> {
        Err(ParseError {
            offset: at,
            kind: ParseErrorKind::Syntax(msg.to_string()),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Val, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                neg(self.term()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let at = self.pos;
                    acc = add(acc, self.term()?, at)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let at = self.pos;
                    acc = add(acc, neg(self.term()?), at)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Val, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.factor()?;
            acc = mul(acc, rhs, at)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Val, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        let caret = self.pos;
        self.pos += 1;
        let e = self.exponent()?;
        match base {
            Val::Scalar(p) => Ok(Val::Scalar(p.pow(e))),
            Val::Form { .. } => self.err(caret, "cannot exponentiate a form symbol"),
        }
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_digit()
                || self.src[self.pos] == b'/'
                || self.src[self.pos] == b'.'
                || self.src[self.pos] == b'-')
        {
            self.pos += 1;
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match text.parse::<u32>() {
            Ok(e) => Ok(e),
            Err(_) => Err(ParseError {
                offset: start,
                kind: if text.is_empty() {
                    ParseErrorKind::Syntax("expected an exponent".to_string())
                } else {
                    ParseErrorKind::NonIntegerExponent
                },
            }),
        }
    }

    fn atom(&mut self) -> Result<Val, ParseError> {
        match self.peek() {
            None => self.err(self.pos, "unexpected end of input"),
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err(open, "unclosed parenthesis");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let mut den: Option<i64> = None;
                if self.src.get(self.pos) == Some(&b'/')
                    && self
                        .src
                        .get(self.pos + 1)
                        .is_some_and(|c| c.is_ascii_digit())
                {
                    self.pos += 1;
                    let dstart = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    den = Some(
                        core::str::from_utf8(&self.src[dstart..self.pos])
                            .unwrap()
                            .parse()
                            .map_err(|_| ParseError {
                                offset: dstart,
                                kind: ParseErrorKind::Syntax("denominator too large".to_string()),
                            })?,
                    );
                }
                let numtext = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let numtext = numtext.split('/').next().unwrap();
                let num: i64 = numtext.parse().map_err(|_| ParseError {
                    offset: start,
                    kind: ParseErrorKind::Syntax("numeric literal too large".to_string()),
                })?;
                let r = match den {
                    Some(d) if d == 0 => {
                        return self.err(start, "zero denominator");
                    }
                    Some(d) => Rat::new(num, d),
                    None => Rat::from_int(num),
                };
                Ok(Val::Scalar(BiPoly::constant(r)))
            }
            Some(b'd') => self.symbol(),
            Some(b'z') => {
                self.pos += 1;
                Ok(Val::Scalar(BiPoly::var_z()))
            }
            Some(b'w') => {
                self.pos += 1;
                Ok(Val::Scalar(BiPoly::var_w()))
            }
            Some(c) => self.err(self.pos, &format!("unexpected character '{}'", c as char)),
        }
    }

    /// One of d/dz, d/dw, dz, dw.
    fn symbol(&mut self) -> Result<Val, ParseError> {
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let (sym, len) = if rest.starts_with(b"d/dz") {
            (Sym::DDz, 4)
        } else if rest.starts_with(b"d/dw") {
            (Sym::DDw, 4)
        } else if rest.starts_with(b"dz") {
            (Sym::Dz, 2)
        } else if rest.starts_with(b"dw") {
            (Sym::Dw, 2)
        } else {
            return self.err(start, "expected d/dz, d/dw, dz or dw");
        };
        self.pos += len;
        let comps = match sym {
            Sym::DDz | Sym::Dz => [BiPoly::one(), BiPoly::zero()],
            Sym::DDw | Sym::Dw => [BiPoly::zero(), BiPoly::one()],
        };
        Ok(Val::Form {
            kind: sym.kind(),
            comps,
        })
    }
}

fn neg(v: Val) -> Val {
    match v {
        Val::Scalar(p) => Val::Scalar(-&p),
        Val::Form { kind, comps: [a, b] } => Val::Form {
            kind,
            comps: [-&a, -&b],
        },
    }
}

fn add(lhs: Val, rhs: Val, at: usize) -> Result<Val, ParseError> {
    match (lhs, rhs) {
        (Val::Scalar(a), Val::Scalar(b)) => Ok(Val::Scalar(&a + &b)),
        (
            Val::Form { kind: ka, comps: [a0, a1] },
            Val::Form { kind: kb, comps: [b0, b1] },
        ) => {
            if ka != kb {
                return Err(ParseError {
                    offset: at,
                    kind: ParseErrorKind::MixedSyntax,
                });
            }
            Ok(Val::Form {
                kind: ka,
                comps: [&a0 + &b0, &a1 + &b1],
            })
        }
        _ => Err(ParseError {
            offset: at,
            kind: ParseErrorKind::Syntax(
                "cannot add a polynomial and a form expression".to_string(),
            ),
        }),
    }
}

fn mul(lhs: Val, rhs: Val, at: usize) -> Result<Val, ParseError> {
    match (lhs, rhs) {
        (Val::Scalar(a), Val::Scalar(b)) => Ok(Val::Scalar(&a * &b)),
        (Val::Scalar(s), Val::Form { kind, comps: [a, b] })
        | (Val::Form { kind, comps: [a, b] }, Val::Scalar(s)) => Ok(Val::Form {
            kind,
            comps: [&s * &a, &s * &b],
        }),
        (Val::Form { .. }, Val::Form { .. }) => Err(ParseError {
            offset: at,
            kind: ParseErrorKind::Syntax("cannot multiply two form symbols".to_string()),
        }),
    }
}

/// Parse a foliation expression into a saturated germ.
pub fn parse_foliation(text: &str) -> Result<ParsedFoliation, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.err(p.pos, "trailing input");
    }
    let (kind, comps) = match v {
        Val::Scalar(_) => {
            return Err(ParseError {
                offset: text.len(),
                kind: ParseErrorKind::Syntax(
                    "expression contains no d/dz, d/dw, dz or dw symbol".to_string(),
                ),
            })
        }
        Val::Form { kind, comps } => (kind, comps),
    };
    let [c0, c1] = comps;
    // 1-form A dz + B dw is dual to the vector field (P, Q) = (B, -A).
    let (pc, qc) = match kind {
        InputKind::VectorField => (c0, c1),
        InputKind::OneForm => (c1, -&c0),
    };
    let germ = FoliationGerm::new(pc, qc).map_err(|e: GermError| ParseError {
        offset: 0,
        kind: ParseErrorKind::Syntax(e.to_string()),
    })?;
    let removed = if germ.removed_factor().is_constant() {
        None
    } else {
        Some(germ.removed_factor().clone())
    };
    Ok(ParsedFoliation {
        germ,
        kind,
        removed_factor: removed,
    })
}

/// Canonical printed form: re-parsing yields an identical germ.
pub fn print_foliation(germ: &FoliationGerm) -> String {
    format!("({})*d/dz + ({})*d/dw", poly_str(germ.p()), poly_str(germ.q()))
}

fn poly_str(p: &BiPoly) -> String {
    format!("{p}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radial_from_one_form() {
        let r = parse_foliation("-w*dz + z*dw").unwrap();
        assert_eq!(r.kind, InputKind::OneForm);
        assert_eq!(r.germ.p(), &"z".parse().unwrap());
        assert_eq!(r.germ.q(), &"w".parse().unwrap());
    }

    #[test]
    fn vector_field_direct() {
        let r = parse_foliation("z*d/dz - 2*w*d/dw").unwrap();
        assert_eq!(r.kind, InputKind::VectorField);
        assert_eq!(r.germ.p(), &"z".parse().unwrap());
        assert_eq!(r.germ.q(), &"-2*w".parse().unwrap());
    }

    #[test]
    fn syntax_error_offset() {
        let e = parse_foliation("z*(d/dz").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn mixed_syntax_rejected() {
        let e = parse_foliation("z*d/dz + w*dw").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MixedSyntax);
    }

    #[test]
    fn non_integer_exponent() {
        let e = parse_foliation("z^1/2*d/dz + w*d/dw").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NonIntegerExponent);
    }

    #[test]
    fn common_factor_warning() {
        let r = parse_foliation("z*w*d/dz + z*z*d/dw").unwrap();
        assert_eq!(r.removed_factor, Some("z".parse().unwrap()));
    }

    #[test]
    fn round_trip_canonical() {
        let samples = [
            "z*d/dz - 2*w*d/dw",
            "-w*dz + z*dw",
            "(z^2 - w)*d/dz + (w^2 + 3/2*z)*d/dw",
            "2*w*dz - 3*z^2*dw",
        ];
        for s in samples {
            let a = parse_foliation(s).unwrap().germ;
            let printed = print_foliation(&a);
            let b = parse_foliation(&printed).unwrap().germ;
            assert_eq!(a.p(), b.p(), "round trip failed for {s}");
            assert_eq!(a.q(), b.q(), "round trip failed for {s}");
        }
    }

    #[test]
    fn scalar_only_is_error() {
        assert!(parse_foliation("z + w").is_err());
        assert!(parse_foliation("").is_err());
    }
}
