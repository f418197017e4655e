//! Polynomial-functor expressions and their text grammar.
//!
//! ```text
//! expr   := "id" | "T(" n ")" | "gamma(" parts ")" | "s(" parts ")"
//!         | "lambda(" parts ")" | "tensor(" expr "," expr ")"
//!         | "compose(" expr "," expr ")" | "dual(" expr ")"
//!         | "twist(" r "," expr ")" | "ker(norm(" n "))"
//!         | "coker(norm(" n "))"
//! parts  := n ("," n)*
//! ```
//!
//! Names are case-insensitive. `gamma`, `s` and `lambda` accept a
//! partition, meaning the tensor product of the one-part powers.

use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyExpr {
    Id,
    T(usize),
    Gamma(Vec<usize>),
    Sym(Vec<usize>),
    Lambda(Vec<usize>),
    Tensor(Box<PolyExpr>, Box<PolyExpr>),
    Compose(Box<PolyExpr>, Box<PolyExpr>),
    Dual(Box<PolyExpr>),
    Twist(usize, Box<PolyExpr>),
    KerNorm(usize),
    CokerNorm(usize),
}

impl PolyExpr {
    /// Total degree; the twist multiplies by `p^r`, so the degree depends
    /// on the characteristic.
    pub fn degree(&self, p: u32) -> usize {
        match self {
            PolyExpr::Id => 1,
            PolyExpr::T(n) => *n,
            PolyExpr::Gamma(l) | PolyExpr::Sym(l) | PolyExpr::Lambda(l) => l.iter().sum(),
            PolyExpr::Tensor(a, b) => a.degree(p) + b.degree(p),
            PolyExpr::Compose(a, b) => a.degree(p) * b.degree(p),
            PolyExpr::Dual(a) => a.degree(p),
            PolyExpr::Twist(r, a) => a.degree(p) * (p as usize).pow(*r as u32),
            PolyExpr::KerNorm(n) | PolyExpr::CokerNorm(n) => *n,
        }
    }

    /// Is this a tensor product of divided powers? These are the inputs
    /// for which the graded Ext formula is established.
    pub fn is_divided_tensor(&self) -> bool {
        match self {
            PolyExpr::Gamma(_) => true,
            PolyExpr::Id => true,
            PolyExpr::Tensor(a, b) => a.is_divided_tensor() && b.is_divided_tensor(),
            _ => false,
        }
    }
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), Error> {
        self.skip_ws();
        if self.input.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected '{}' at byte {}",
                c as char, self.pos
            )))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.input[start..self.pos]).to_lowercase()
    }

    fn number(&mut self) -> Result<usize, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected a number at byte {start}")));
        }
        String::from_utf8_lossy(&self.input[start..self.pos])
            .parse()
            .map_err(|_| Error::Parse("number out of range".into()))
    }

    fn parts(&mut self) -> Result<Vec<usize>, Error> {
        let mut out = vec![self.number()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.number()?);
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<PolyExpr, Error> {
        let name = self.ident();
        match name.as_str() {
            "id" => Ok(PolyExpr::Id),
            "t" => {
                self.expect(b'(')?;
                let n = self.number()?;
                self.expect(b')')?;
                Ok(PolyExpr::T(n))
            }
            "gamma" => {
                self.expect(b'(')?;
                let l = self.parts()?;
                self.expect(b')')?;
                Ok(PolyExpr::Gamma(l))
            }
            "s" => {
                self.expect(b'(')?;
                let l = self.parts()?;
                self.expect(b')')?;
                Ok(PolyExpr::Sym(l))
            }
            "lambda" => {
                self.expect(b'(')?;
                let l = self.parts()?;
                self.expect(b')')?;
                Ok(PolyExpr::Lambda(l))
            }
            "tensor" => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                Ok(PolyExpr::Tensor(Box::new(a), Box::new(b)))
            }
            "compose" => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b')')?;
                Ok(PolyExpr::Compose(Box::new(a), Box::new(b)))
            }
            "dual" => {
                self.expect(b'(')?;
                let a = self.expr()?;
                self.expect(b')')?;
                Ok(PolyExpr::Dual(Box::new(a)))
            }
            "twist" => {
                self.expect(b'(')?;
                let r = self.number()?;
                self.expect(b',')?;
                let a = self.expr()?;
                self.expect(b')')?;
                Ok(PolyExpr::Twist(r, Box::new(a)))
            }
            "ker" => {
                self.expect(b'(')?;
                let inner = self.ident();
                if inner != "norm" {
                    return Err(Error::Parse(format!("ker of unknown map '{inner}'")));
                }
                self.expect(b'(')?;
                let n = self.number()?;
                self.expect(b')')?;
                self.expect(b')')?;
                Ok(PolyExpr::KerNorm(n))
            }
            "coker" => {
                self.expect(b'(')?;
                let inner = self.ident();
                if inner != "norm" {
                    return Err(Error::Parse(format!("coker of unknown map '{inner}'")));
                }
                self.expect(b'(')?;
                let n = self.number()?;
                self.expect(b')')?;
                self.expect(b')')?;
                Ok(PolyExpr::CokerNorm(n))
            }
            other => Err(Error::Parse(format!("unknown functor '{other}'"))),
        }
    }
}

pub fn parse_expr(input: &str) -> Result<PolyExpr, Error> {
    let mut p = Parser {
        input: input.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(Error::Parse(format!("trailing input at byte {}", p.pos)));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_grammar() {
        assert_eq!(parse_expr("id").unwrap(), PolyExpr::Id);
        assert_eq!(parse_expr("T(2)").unwrap(), PolyExpr::T(2));
        assert_eq!(parse_expr("gamma(2,1)").unwrap(), PolyExpr::Gamma(vec![2, 1]));
        assert_eq!(
            parse_expr("twist(1, id)").unwrap(),
            PolyExpr::Twist(1, Box::new(PolyExpr::Id))
        );
        assert_eq!(parse_expr("ker(norm(2))").unwrap(), PolyExpr::KerNorm(2));
        assert!(parse_expr("tensor(gamma(2), s(1,1))").is_ok());
        assert!(parse_expr("frobnicate(2)").is_err());
        assert!(parse_expr("gamma(2) junk").is_err());
    }

    #[test]
    fn degrees_compose_correctly() {
        let e = parse_expr("compose(gamma(2), twist(1, id))").unwrap();
        assert_eq!(e.degree(2), 4);
        assert_eq!(e.degree(3), 6);
        let f = parse_expr("tensor(T(2), lambda(1,1))").unwrap();
        assert_eq!(f.degree(5), 4);
    }

    #[test]
    fn divided_tensor_detection() {
        assert!(parse_expr("gamma(3)").unwrap().is_divided_tensor());
        assert!(parse_expr("tensor(gamma(2),gamma(1))").unwrap().is_divided_tensor());
        assert!(!parse_expr("s(2)").unwrap().is_divided_tensor());
    }
}
