//! Lattice expressions: `expr := term ('+' term)*`, `term := atom ('(' int ')')?`,
//! `atom := 'Z' int? | 'A' int | 'D' int | 'E' (6|7|8) | 'gram:' json-matrix`.

use latjac::lattice::{named, Lattice};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Z(usize),
    A(usize),
    D(usize),
    E(usize),
    Gram(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub atom: Atom,
    pub scale: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeExpr(pub Vec<Term>);

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown lattice {0}")]
    UnknownLattice(String),
    #[error("{0}")]
    Lattice(String),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn number(&mut self) -> Option<Result<i64, ExprError>> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(rest[..len].parse().map_err(|_| ExprError::Syntax { pos: start, msg: "integer too large".into() }))
    }

    fn size(&mut self, letter: char) -> Result<usize, ExprError> {
        let start = self.pos;
        match self.number() {
            Some(n) => Ok(n? as usize),
            None => Err(ExprError::Syntax { pos: start, msg: format!("{letter} needs a rank") }),
        }
    }

    fn atom(&mut self) -> Result<Atom, ExprError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        if self.src[self.pos..].starts_with("gram:") {
            self.pos += 5;
            return self.gram();
        }
        let Some(c) = self.peek() else { return self.err("expected a lattice") };
        self.pos += c.len_utf8();
        let unknown = |p: &Self| ExprError::UnknownLattice(p.src[start..p.pos].trim().to_string());
        match c {
            'Z' => match self.number() {
                None => Ok(Atom::Z(1)),
                Some(n) => match n? {
                    0 => Err(unknown(self)),
                    n => Ok(Atom::Z(n as usize)),
                },
            },
            'A' => match self.size('A')? {
                0 => Err(unknown(self)),
                n => Ok(Atom::A(n)),
            },
            'D' => match self.size('D')? {
                n if n < 3 => Err(unknown(self)),
                n => Ok(Atom::D(n)),
            },
            'E' => match self.size('E')? {
                n @ 6..=8 => Ok(Atom::E(n)),
                _ => Err(unknown(self)),
            },
            c if c.is_alphabetic() => {
                while self.src[self.pos..].starts_with(|c: char| c.is_alphanumeric()) {
                    self.pos += 1;
                }
                Err(unknown(self))
            }
            _ => {
                self.pos = start;
                self.err(format!("unexpected '{c}'"))
            }
        }
    }

    fn gram(&mut self) -> Result<Atom, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0i32;
        for (i, c) in self.src[start..].char_indices() {
            match c {
                '[' => depth += 1,
                ']' => {
                    depth -= 1;
                    if depth == 0 {
                        let text = &self.src[start..start + i + 1];
                        self.pos = start + i + 1;
                        return serde_json::from_str(text)
                            .map(Atom::Gram)
                            .map_err(|e| ExprError::Syntax { pos: start, msg: format!("bad Gram matrix: {e}") });
                    }
                }
                _ if depth == 0 => break,
                _ => {}
            }
        }
        self.err("expected a bracketed integer matrix")
    }

    fn term(&mut self) -> Result<Term, ExprError> {
        let atom = self.atom()?;
        let scale = if self.peek() == Some('(') {
            self.pos += 1;
            let p = self.pos;
            let m = match self.number() {
                Some(m) => m?,
                None => return self.err("expected a positive scale"),
            };
            if m == 0 {
                return Err(ExprError::Syntax { pos: p, msg: "scale must be positive".into() });
            }
            self.eat(')')?;
            Some(m)
        } else {
            None
        };
        Ok(Term { atom, scale })
    }
}

pub fn parse(text: &str) -> Result<LatticeExpr, ExprError> {
    let mut p = Parser { src: text, pos: 0 };
    let mut terms = vec![p.term()?];
    while p.peek() == Some('+') {
        p.pos += 1;
        terms.push(p.term()?);
    }
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(LatticeExpr(terms))
}

impl Atom {
    fn lattice(&self) -> Result<Lattice, ExprError> {
        let l = match self {
            Atom::Z(n) => named::z(*n),
            Atom::A(n) => named::a(*n),
            Atom::D(n) => named::d(*n),
            Atom::E(n) => named::e(*n).ok_or_else(|| ExprError::UnknownLattice(format!("E{n}")))?,
            Atom::Gram(g) => Lattice::new(g.clone()).map_err(|e| ExprError::Lattice(e.to_string()))?,
        };
        Ok(l)
    }
}

impl LatticeExpr {
    pub fn eval(&self) -> Result<Lattice, ExprError> {
        let mut out: Option<Lattice> = None;
        for t in &self.0 {
            let mut l = t.atom.lattice()?;
            if let Some(m) = t.scale {
                l = l.rescale(m).map_err(|e| ExprError::Lattice(e.to_string()))?;
            }
            out = Some(match out {
                None => l,
                Some(acc) => acc.direct_sum(&l),
            });
        }
        let l = out.expect("nonempty expression");
        Ok(l.named(&self.to_string()))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Z(1) => write!(f, "Z"),
            Atom::Z(n) => write!(f, "Z{n}"),
            Atom::A(n) => write!(f, "A{n}"),
            Atom::D(n) => write!(f, "D{n}"),
            Atom::E(n) => write!(f, "E{n}"),
            Atom::Gram(g) => write!(f, "gram:{}", serde_json::to_string(g).unwrap()),
        }
    }
}

impl fmt::Display for LatticeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{}", t.atom)?;
            if let Some(m) = t.scale {
                write!(f, "({m})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(parse("A2").unwrap().eval().unwrap().gram(), &vec![vec![2, 1], vec![1, 2]]);
        let l = parse(" Z(3) + Z2 ").unwrap().eval().unwrap();
        assert_eq!(l.gram(), &vec![vec![3, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(parse("E9"), Err(ExprError::UnknownLattice("E9".into())));
        assert_eq!(parse("gram:[[2, 1],[1,2]](2)").unwrap().to_string(), "gram:[[2,1],[1,2]](2)");
        assert!(matches!(parse("gram:[[1,2],[2,1]]").unwrap().eval(), Err(ExprError::Lattice(_))));
    }

    #[test]
    fn error_positions() {
        assert_eq!(parse("A2+").unwrap_err(), ExprError::Syntax { pos: 3, msg: "expected a lattice".into() });
        assert!(matches!(parse("A2 ) "), Err(ExprError::Syntax { pos: 3, .. })));
        assert!(matches!(parse("A2(0)"), Err(ExprError::Syntax { pos: 3, .. })));
        assert!(matches!(parse("A"), Err(ExprError::Syntax { pos: 1, .. })));
        assert!(matches!(parse("Q3"), Err(ExprError::UnknownLattice(_))));
        assert_eq!(parse("D2"), Err(ExprError::UnknownLattice("D2".into())));
    }

    fn atom() -> impl Strategy<Value = Atom> {
        prop_oneof![
            (1usize..6).prop_map(Atom::Z),
            (1usize..6).prop_map(Atom::A),
            (3usize..6).prop_map(Atom::D),
            (6usize..9).prop_map(Atom::E),
            (1i64..5, -1i64..2, 1i64..5).prop_map(|(a, b, c)| Atom::Gram(vec![vec![2 * a, b], vec![b, 2 * c]])),
        ]
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(terms in prop::collection::vec((atom(), prop::option::of(1i64..7)), 1..4)) {
            let e = LatticeExpr(terms.into_iter().map(|(atom, scale)| Term { atom, scale }).collect());
            prop_assert_eq!(parse(&e.to_string()).unwrap(), e.clone());
            let l = e.eval().unwrap();
            let rank: usize = e.0.iter().map(|t| t.atom.lattice().unwrap().rank()).sum();
            prop_assert_eq!(l.rank(), rank);
        }
    }
}
