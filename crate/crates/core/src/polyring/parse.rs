//! Polynomial text grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | VAR | '(' expr ')'
//! ```
//!
//! Juxtaposition (`2x`, `x y`) is rejected rather than read as a product.

use super::field::PrimeField;
use super::poly::{FpPoly, Var};
use super::PolyError;

/// Coefficient field plus the variables a parsed expression may use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domain {
    pub field: PrimeField,
    pub variables: Vec<Var>,
}

impl Domain {
    pub fn new(prime: u64, variables: &[Var]) -> Result<Self, PolyError> {
        Ok(Self {
            field: PrimeField::new(prime)?,
            variables: variables.to_vec(),
        })
    }

    /// `x, y, z` over 𝔽_p.
    pub fn plane(prime: u64) -> Result<Self, PolyError> {
        Self::new(prime, &Var::PLANE)
    }

    pub fn all(prime: u64) -> Result<Self, PolyError> {
        Self::new(prime, &Var::ALL)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => {
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((pos, Tok::Int(s)));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((pos, Tok::Ident(s)));
            }
            _ => {
                let t = match c {
                    '+' => Tok::Plus,
                    '-' | '\u{2212}' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => {
                        return Err(PolyError::Syntax {
                            position: pos,
                            message: format!("unexpected character '{other}'"),
                        })
                    }
                };
                out.push((pos, t));
                i += 1;
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    domain: &'a Domain,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<FpPoly, PolyError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<FpPoly, PolyError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<FpPoly, PolyError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<FpPoly, PolyError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(s)) => {
                    let e: u32 = match s.parse() {
                        Ok(e) if e <= 4096 => e,
                        _ => return self.syntax(format!("exponent '{s}' too large")),
                    };
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return self.syntax("expected a non-negative integer exponent after '^'"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FpPoly, PolyError> {
        let field = self.domain.field;
        let out = match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                let p = field.modulus();
                let c = s
                    .bytes()
                    .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                self.pos += 1;
                FpPoly::constant(field, c)
            }
            Some(Tok::Ident(name)) => {
                let var = Var::from_name(&name)
                    .filter(|v| self.domain.variables.contains(v))
                    .ok_or_else(|| PolyError::UnknownVariable {
                        position: self.offset(),
                        name: name.clone(),
                    })?;
                self.pos += 1;
                FpPoly::var(field, var)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.syntax("expected ')'");
                }
                self.pos += 1;
                inner
            }
            Some(_) => return self.syntax("expected a number, variable or '('"),
            None => return self.syntax("unexpected end of input"),
        };
        if matches!(self.peek(), Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen)) {
            return self.syntax("implicit multiplication is not allowed; use '*'");
        }
        Ok(out)
    }
}

pub fn parse(text: &str, domain: &Domain) -> Result<FpPoly, PolyError> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
        domain,
    };
    let out = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return parser.syntax("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d13() -> Domain {
        Domain::plane(13).unwrap()
    }

    #[test]
    fn parses_quadratic_form() {
        let a = parse("x^2+x*z+z^2", &d13()).unwrap();
        assert_eq!(a.to_string(), "x^2 + x*z + z^2");
        assert_eq!(a.num_terms(), 3);
    }

    #[test]
    fn zero_and_constants() {
        assert!(parse("0", &d13()).unwrap().is_zero());
        assert!(parse("13", &d13()).unwrap().is_zero());
        assert_eq!(parse("-1", &d13()).unwrap().constant_term(), 12);
    }

    #[test]
    fn binomial_expansion() {
        let p = parse("(x+y)^4", &d13()).unwrap();
        let x = FpPoly::var(p.field(), Var::X);
        let y = FpPoly::var(p.field(), Var::Y);
        let s = &x + &y;
        let by_hand = &(&s * &s) * &(&s * &s);
        assert_eq!(p, by_hand);
        assert_eq!(p.to_string(), "x^4 + 4*x^3*y + 6*x^2*y^2 + 4*x*y^3 + y^4");
    }

    #[test]
    fn precedence() {
        let d = d13();
        assert_eq!(parse("-x^2", &d).unwrap(), parse("-(x^2)", &d).unwrap());
        assert_eq!(parse("2*x+3*x", &d).unwrap(), parse("5*x", &d).unwrap());
        assert_eq!(parse("x-y-z", &d).unwrap(), parse("x-(y+z)", &d).unwrap());
    }

    #[test]
    fn errors() {
        let d = d13();
        match parse("2x", &d) {
            Err(PolyError::Syntax { position, .. }) => assert_eq!(position, 1),
            other => panic!("{other:?}"),
        }
        match parse("x + q", &d) {
            Err(PolyError::UnknownVariable { position, name }) => {
                assert_eq!((position, name.as_str()), (4, "q"))
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse("u", &d),
            Err(PolyError::UnknownVariable { .. })
        ));
        assert!(matches!(parse("(x+y", &d), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse("x^", &d), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse("", &d), Err(PolyError::Syntax { .. })));
        assert_eq!(Domain::plane(2), Err(PolyError::CharacteristicTwo));
    }
}
