//! Polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | base ('^' nat)?
//! base   := rat | var | '(' expr ')'
//! rat    := int ('/' posint)?
//! var    := [a-z], except the reserved t and c
//! ```
//!
//! Unary minus binds looser than `^`, so `-x^2` is `-(x^2)`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::coeff::Rat;
use crate::multipoly::MPoly;

pub const RESERVED: [char; 2] = ['t', 'c'];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    SyntaxError { position: usize, message: String },
    #[error("unknown variable {name:?} at position {position}")]
    UnknownVariable { name: char, position: usize },
    #[error("{name:?} is reserved and cannot be a variable (position {position})")]
    ReservedSymbol { name: char, position: usize },
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        match self {
            ParseError::SyntaxError { .. } => "SyntaxError",
            ParseError::UnknownVariable { .. } => "UnknownVariable",
            ParseError::ReservedSymbol { .. } => "ReservedSymbol",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Rat(Rat),
    Var(char),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
}

impl Expr {
    /// Lowers to a polynomial in `vars`; every variable must be listed.
    pub fn to_poly(&self, vars: &[char]) -> MPoly<Rat> {
        let n = vars.len();
        match self {
            Expr::Rat(r) => MPoly::constant(n, r.clone()),
            Expr::Var(v) => {
                let i = vars.iter().position(|w| w == v).expect("checked variable");
                MPoly::var(n, i)
            }
            Expr::Add(a, b) => &a.to_poly(vars) + &b.to_poly(vars),
            Expr::Sub(a, b) => &a.to_poly(vars) - &b.to_poly(vars),
            Expr::Mul(a, b) => &a.to_poly(vars) * &b.to_poly(vars),
            Expr::Pow(a, k) => a.to_poly(vars).pow(*k),
            Expr::Neg(a) => -&a.to_poly(vars),
        }
    }

    pub fn variables(&self, out: &mut Vec<char>) {
        match self {
            Expr::Rat(_) => {}
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.variables(out);
                b.variables(out);
            }
            Expr::Pow(a, _) | Expr::Neg(a) => a.variables(out),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::SyntaxError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn unexpected(&mut self, expected: &str) -> ParseError {
        let found = self.found();
        self.error(format!("{expected}, {found}"))
    }

    fn found(&mut self) -> String {
        match self.peek() {
            Some(b) => format!("unexpected {:?}", b as char),
            None => "unexpected end of input".into(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' {
                Expr::Add(Box::new(acc), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(acc), Box::new(rhs))
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.unexpected("exponent must be a natural number"));
            }
            let k: u32 = digits.parse().map_err(|_| ParseError::SyntaxError {
                position: start,
                message: "exponent too large".into(),
            })?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b) if b.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                let mut value = Rat::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.unexpected("expected a denominator"));
                    }
                    let den: BigInt = d.parse().expect("digits");
                    if den.is_zero() {
                        return Err(ParseError::SyntaxError {
                            position: at,
                            message: "zero denominator".into(),
                        });
                    }
                    value /= Rat::from_integer(den);
                }
                Ok(Expr::Rat(value))
            }
            Some(b) if b.is_ascii_lowercase() => {
                let position = self.pos;
                self.pos += 1;
                let name = b as char;
                if RESERVED.contains(&name) {
                    return Err(ParseError::ReservedSymbol { name, position });
                }
                if matches!(self.src.get(self.pos), Some(n) if n.is_ascii_alphanumeric()) {
                    return Err(ParseError::SyntaxError {
                        position: self.pos,
                        message: "variables are single letters; write products with '*'".into(),
                    });
                }
                Ok(Expr::Var(name))
            }
            _ => Err(self.unexpected("expected a number, variable or '('")),
        }
    }
}

/// Parses `text` into an expression tree.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        let found = p.found();
        return Err(p.error(found));
    }
    Ok(e)
}

/// Parses `text` as a polynomial in `vars`, in that order.
pub fn parse_poly(text: &str, vars: &[char]) -> Result<MPoly<Rat>, ParseError> {
    let e = parse_expr(text)?;
    let mut used = Vec::new();
    e.variables(&mut used);
    if let Some(&name) = used.iter().find(|v| !vars.contains(v)) {
        let position = text.find(name).unwrap_or(0);
        return Err(ParseError::UnknownVariable { name, position });
    }
    Ok(e.to_poly(vars))
}

/// Letters used by any of the expressions, sorted; `min_vars` pads with
/// `x, y, z` (or earlier unused letters) so constant inputs still get an arity.
pub fn infer_variables(texts: &[&str], min_vars: usize) -> Result<Vec<char>, ParseError> {
    let mut used = Vec::new();
    for t in texts {
        parse_expr(t)?.variables(&mut used);
    }
    for pad in ['x', 'y', 'z', 'w', 'u', 'v'] {
        if used.len() >= min_vars {
            break;
        }
        if !used.contains(&pad) {
            used.push(pad);
        }
    }
    used.sort();
    Ok(used)
}

/// Prints a polynomial so that [`parse_poly`] reads it back.
pub fn print_poly(p: &MPoly<Rat>, vars: &[char]) -> String {
    let names: Vec<String> = vars.iter().map(|c| c.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    p.display_with(&refs)
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::coeff::{rat, rat_int};

    const XY: [char; 2] = ['x', 'y'];

    fn mono(c: Rat, ex: &[u32]) -> MPoly<Rat> {
        MPoly::from_terms(ex.len(), [(ex.to_vec(), c)])
    }

    #[test]
    fn parses_examples() {
        let p = parse_poly("x^2 + y^3", &XY).unwrap();
        assert_eq!(p, &mono(rat_int(1), &[2, 0]) + &mono(rat_int(1), &[0, 3]));
        assert_eq!(parse_poly("x^2*y^2", &XY).unwrap(), mono(rat_int(1), &[2, 2]));
        assert_eq!(parse_poly("-x^2", &XY).unwrap(), mono(rat_int(-1), &[2, 0]));
        assert_eq!(parse_poly("(-x)^2", &XY).unwrap(), mono(rat_int(1), &[2, 0]));
        assert_eq!(parse_poly("3/6*x - -y", &XY).unwrap(), &mono(rat(1, 2), &[1, 0]) + &mono(rat_int(1), &[0, 1]));
        assert_eq!(parse_poly("(x+y)^2 - x*x - y^2 - 2*x*y", &XY).unwrap(), MPoly::zero(2));
    }

    #[test]
    fn reports_errors_with_positions() {
        assert_eq!(
            parse_poly("x^2 + + y", &XY),
            Err(ParseError::SyntaxError {
                position: 6,
                message: "expected a number, variable or '(', unexpected '+'".into()
            })
        );
        assert!(matches!(
            parse_poly("x + z", &XY),
            Err(ParseError::UnknownVariable { name: 'z', position: 4 })
        ));
        assert!(matches!(
            parse_poly("x + t*y", &XY),
            Err(ParseError::ReservedSymbol { name: 't', position: 4 })
        ));
        assert!(matches!(parse_poly("c", &XY), Err(ParseError::ReservedSymbol { .. })));
        assert!(matches!(parse_poly("xy", &XY), Err(ParseError::SyntaxError { position: 1, .. })));
        assert!(matches!(parse_poly("2x", &XY), Err(ParseError::SyntaxError { position: 1, .. })));
        assert!(matches!(parse_poly("(x", &XY), Err(ParseError::SyntaxError { position: 2, .. })));
        assert!(matches!(parse_poly("x^-1", &XY), Err(ParseError::SyntaxError { .. })));
        assert!(matches!(parse_poly("1/0", &XY), Err(ParseError::SyntaxError { .. })));
        assert!(matches!(parse_poly("", &XY), Err(ParseError::SyntaxError { position: 0, .. })));
    }

    #[test]
    fn infers_sorted_variables() {
        assert_eq!(infer_variables(&["y^2 + x"], 0).unwrap(), vec!['x', 'y']);
        assert_eq!(infer_variables(&["z", "x*y"], 0).unwrap(), vec!['x', 'y', 'z']);
        assert_eq!(infer_variables(&["x^2"], 2).unwrap(), vec!['x', 'y']);
        assert_eq!(infer_variables(&["1"], 2).unwrap(), vec!['x', 'y']);
    }

    #[test]
    fn print_then_parse_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let vars = ['x', 'y', 'z'];
        for _ in 0..100 {
            let nterms = rng.gen_range(0..7);
            let terms: Vec<(Vec<u32>, Rat)> = (0..nterms)
                .map(|_| {
                    let ex = (0..3).map(|_| rng.gen_range(0..4)).collect();
                    (ex, rat(rng.gen_range(-20..=20), rng.gen_range(1..=6)))
                })
                .collect();
            let p = MPoly::from_terms(3, terms);
            let text = print_poly(&p, &vars);
            assert_eq!(parse_poly(&text, &vars).unwrap(), p, "{text}");
        }
    }
}
