//! Parser for polynomial expressions such as `[x2,x3] + 1/2*x1^2 - (x4 - x5)*x6`.
//!
//! Supported syntax: sums, differences, products written with `*`, powers `^n`,
//! unary minus, parentheses, commutators `[a,b]`, rational literals `p/q`, the
//! generators `x1..x7`, and (over fields containing `i`) the scalar `i` and the split
//! generators `t, u1..u3, v1..v3`.

use crate::error::{Error, Result};
use crate::field::{parse_rational, Field};
use crate::ncpoly::NcPoly;

pub fn parse_poly<F: Field>(src: &str) -> Result<NcPoly<F>> {
    let mut p = Parser {
        chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    };
    let e = p.expr::<F>()?;
    if p.pos != p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses an expression that must evaluate to a constant.
pub fn parse_scalar_expr<F: Field>(src: &str) -> Result<F> {
    let p = parse_poly::<F>(src)?;
    match p.degree() {
        None => Ok(F::zero()),
        Some(0) => Ok(p.coeff(&crate::ncpoly::Word::empty())),
        _ => Err(Error::Parse(format!("'{src}' is not a scalar"))),
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {}", self.pos))
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn expr<F: Field>(&mut self) -> Result<NcPoly<F>> {
        let mut acc = self.term::<F>()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term::<F>()?);
                }
                '-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term::<F>()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term<F: Field>(&mut self) -> Result<NcPoly<F>> {
        let mut acc = self.unary::<F>()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.unary::<F>()?);
        }
        Ok(acc)
    }

    fn unary<F: Field>(&mut self) -> Result<NcPoly<F>> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(self.unary::<F>()?.neg());
        }
        let base = self.atom::<F>()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.digits().ok_or_else(|| self.error("expected exponent"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.chars[start..self.pos].iter().collect::<String>().parse().ok()
    }

    fn atom<F: Field>(&mut self) -> Result<NcPoly<F>> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        match c {
            '(' => {
                self.pos += 1;
                let e = self.expr::<F>()?;
                self.expect(')')?;
                Ok(e)
            }
            '[' => {
                self.pos += 1;
                let a = self.expr::<F>()?;
                self.expect(',')?;
                let b = self.expr::<F>()?;
                self.expect(']')?;
                Ok(a.commutator(&b))
            }
            '0'..='9' => {
                let start = self.pos;
                self.digits();
                if self.peek() == Some('/') {
                    self.pos += 1;
                    if self.digits().is_none() {
                        return Err(self.error("expected denominator"));
                    }
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                let q = parse_rational(&text).ok_or_else(|| self.error("invalid number"))?;
                let s = F::from_rational(&q)
                    .ok_or_else(|| self.error(&format!("{text} is not defined in {}", F::name())))?;
                // `2i` is read as `2*i`
                if self.peek() == Some('i') {
                    self.pos += 1;
                    return Ok(NcPoly::constant(s * F::imaginary_unit().ok_or(Error::NoSqrtNegOne)?));
                }
                Ok(NcPoly::constant(s))
            }
            'x' => {
                self.pos += 1;
                let n = self.digits().ok_or_else(|| self.error("expected generator index"))?;
                if !(1..=7).contains(&n) {
                    return Err(Error::IndexOutOfRange(n));
                }
                Ok(NcPoly::var((n - 1) as u8))
            }
            'i' | 't' | 'u' | 'v' => {
                self.pos += 1;
                let i = F::imaginary_unit().ok_or(Error::NoSqrtNegOne)?;
                match c {
                    'i' => Ok(NcPoly::constant(i)),
                    't' => Ok(NcPoly::var(0).scale(&i)),
                    _ => {
                        let m = self.digits().ok_or_else(|| self.error("expected index"))?;
                        if !(1..=3).contains(&m) {
                            return Err(self.error("split generator index must be 1..3"));
                        }
                        let re = NcPoly::var((2 * m - 1) as u8);
                        let im = NcPoly::var((2 * m) as u8).scale(&i);
                        Ok(if c == 'u' { re.add(&im) } else { re.sub(&im) })
                    }
                }
            }
            _ => Err(self.error(&format!("unexpected character '{c}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rational, Gaussian, Rational};

    type Q = Rational;

    #[test]
    fn parses_commutators_and_rationals() {
        let p = parse_poly::<Q>("[x2,x3] + 1/2*x1").unwrap();
        assert_eq!(p.to_string(), "1/2*x1 + x2*x3 - x3*x2");
        let q = parse_poly::<Q>("-(x1 - x2)^2").unwrap();
        assert_eq!(q.to_string(), "-x1*x1 + x1*x2 + x2*x1 - x2*x2");
    }

    #[test]
    fn round_trips_display() {
        let p = parse_poly::<Q>("3/4*x7*x6 - x1 + 5").unwrap();
        assert_eq!(parse_poly::<Q>(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn split_generators_need_i() {
        assert!(parse_poly::<Q>("t").is_err());
        let t = parse_poly::<Gaussian>("t*t").unwrap();
        assert_eq!(t, parse_poly::<Gaussian>("-x1*x1").unwrap());
        assert_eq!(parse_scalar_expr::<Gaussian>("i*i").unwrap(), Gaussian::from_i64(-1));
        let z = Gaussian::new(Q::from_i64(1), rational(-2, 3));
        assert_eq!(parse_scalar_expr::<Gaussian>("1-2/3i").unwrap(), z);
        assert_eq!(parse_scalar_expr::<Gaussian>(&z.to_string()).unwrap(), z);
        assert_eq!(parse_scalar_expr::<Q>("2/6").unwrap(), rational(1, 3));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly::<Q>("x8").is_err());
        assert!(parse_poly::<Q>("x1 +").is_err());
        assert!(parse_poly::<Q>("[x1 x2]").is_err());
        assert!(parse_scalar_expr::<Q>("x1").is_err());
    }
}
