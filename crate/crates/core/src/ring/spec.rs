//! Ring-spec expressions and their text grammar.
//!
//! ```text
//! spec    := product
//! product := atom (("x" | "*") atom)*
//! atom    := "Z" INT | "GF(" INT ("^" INT)? ")" | "F" INT
//!          | "Z" INT "[" vars "]/(" polys ")" | "local8/" NAME | "(" product ")"
//! ```
//!
//! `NAME` is read greedily from `[A-Za-z0-9_]`, so a catalog reference must be
//! followed by whitespace or `)` before a product separator.

use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use super::catalog;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at column {}: {message}", .position + 1)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

/// One term `coefficient * prod(var_i ^ exponents[i])` of a relation polynomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Term {
    pub coefficient: i64,
    pub exponents: Vec<u32>,
}

/// `Z_m[vars] / (relations)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Presentation {
    pub modulus: u64,
    pub variables: Vec<char>,
    pub relations: Vec<Vec<Term>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum RingSpec {
    Cyclic(u64),
    GaloisField {
        p: u64,
        k: u32,
        /// Coefficients of a monic irreducible modulus, constant term first.
        /// `None` selects the lexicographically smallest one.
        modulus: Option<Vec<u64>>,
    },
    Quotient(Presentation),
    Product(Vec<RingSpec>),
    Catalog(String),
}

impl RingSpec {
    pub fn galois(p: u64, k: u32) -> Self {
        RingSpec::GaloisField {
            p,
            k,
            modulus: None,
        }
    }

    /// Factor specs of a product, or the spec itself.
    pub fn factors(&self) -> Vec<RingSpec> {
        match self.canonical() {
            RingSpec::Product(fs) => fs,
            other => vec![other],
        }
    }

    /// Normal form for provenance comparisons: catalog references resolved,
    /// prime fields written as `Z_p`, nested products flattened, relation
    /// lists sorted.
    pub fn canonical(&self) -> RingSpec {
        match self {
            RingSpec::Cyclic(n) => RingSpec::Cyclic(*n),
            RingSpec::GaloisField {
                p,
                k: 1,
                modulus: None,
            } => RingSpec::Cyclic(*p),
            RingSpec::GaloisField { .. } => self.clone(),
            RingSpec::Quotient(pres) => {
                let mut pres = pres.clone();
                for rel in &mut pres.relations {
                    rel.sort();
                }
                pres.relations.sort();
                RingSpec::Quotient(pres)
            }
            RingSpec::Product(fs) => {
                let mut flat = Vec::new();
                for f in fs {
                    match f.canonical() {
                        RingSpec::Product(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                if flat.len() == 1 {
                    flat.pop().unwrap()
                } else {
                    RingSpec::Product(flat)
                }
            }
            RingSpec::Catalog(name) => match catalog::lookup(name) {
                Some(spec) => spec.canonical(),
                None => self.clone(),
            },
        }
    }

    /// Canonical-form equality.
    pub fn same_construction(&self, other: &RingSpec) -> bool {
        self.canonical() == other.canonical()
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, vars: &[char], terms: &[Term]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, t) in terms.iter().enumerate() {
        let c = t.coefficient;
        if i > 0 {
            write!(f, "{}", if c < 0 { "-" } else { "+" })?;
        } else if c < 0 {
            write!(f, "-")?;
        }
        let has_vars = t.exponents.iter().any(|&e| e > 0);
        if c.unsigned_abs() != 1 || !has_vars {
            write!(f, "{}", c.unsigned_abs())?;
        }
        for (v, &e) in vars.iter().zip(&t.exponents) {
            match e {
                0 => {}
                1 => write!(f, "{v}")?,
                _ => write!(f, "{v}^{e}")?,
            }
        }
    }
    Ok(())
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z{}[", self.modulus)?;
        for (i, v) in self.variables.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]/(")?;
        for (i, rel) in self.relations.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write_poly(f, &self.variables, rel)?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Cyclic(n) => write!(f, "Z{n}"),
            RingSpec::GaloisField { p, k, .. } => match p.checked_pow(*k) {
                Some(q) => write!(f, "GF({q})"),
                None => write!(f, "GF({p}^{k})"),
            },
            RingSpec::Quotient(pres) => write!(f, "{pres}"),
            RingSpec::Product(fs) => {
                for (i, s) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    match s {
                        RingSpec::Product(_) => write!(f, "({s})")?,
                        _ => write!(f, "{s}")?,
                    }
                }
                Ok(())
            }
            RingSpec::Catalog(name) => write!(f, "local8/{name}"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s, pos: 0 };
        let spec = p.product()?;
        p.skip_ws();
        if p.pos < s.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(spec)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{s}`")))
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        self.src[start..self.pos].parse().map_err(|_| ParseError {
            position: start,
            message: "integer out of range".into(),
        })
    }

    fn product(&mut self) -> Result<RingSpec, ParseError> {
        let mut factors = vec![self.atom()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some('x') | Some('*') => {
                    self.bump();
                    factors.push(self.atom()?);
                }
                _ => break,
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            RingSpec::Product(factors)
        })
    }

    fn atom(&mut self) -> Result<RingSpec, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("local8/") {
            let name_start = self.pos;
            while self
                .peek()
                .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                self.bump();
            }
            let name = &self.src[name_start..self.pos];
            if catalog::lookup(name).is_none() {
                return Err(ParseError {
                    position: name_start,
                    message: format!("unknown catalog name `{name}`"),
                });
            }
            return Ok(RingSpec::Catalog(name.to_string()));
        }
        if self.eat("GF(") {
            let base = self.int()?;
            self.skip_ws();
            let spec = if self.eat("^") {
                let k = self.int()?;
                if !is_prime(base) {
                    return Err(ParseError {
                        position: start,
                        message: format!("GF base {base} is not prime"),
                    });
                }
                let k = u32::try_from(k).map_err(|_| self.error("exponent too large"))?;
                RingSpec::galois(base, k)
            } else {
                prime_power_field(base).ok_or_else(|| ParseError {
                    position: start,
                    message: format!("{base} is not a prime power"),
                })?
            };
            self.expect(")")?;
            return Ok(spec);
        }
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.product()?;
                self.expect(")")?;
                Ok(inner)
            }
            Some('F') => {
                self.bump();
                let q = self.int()?;
                prime_power_field(q).ok_or_else(|| ParseError {
                    position: start,
                    message: format!("{q} is not a prime power"),
                })
            }
            Some('Z') => {
                self.bump();
                let n = self.int()?;
                if self.peek() == Some('[') {
                    self.presentation(n)
                } else {
                    Ok(RingSpec::Cyclic(n))
                }
            }
            _ => Err(self.error("expected a ring: Z<n>, GF(q), F<q>, local8/<name> or `(`")),
        }
    }

    fn presentation(&mut self, modulus: u64) -> Result<RingSpec, ParseError> {
        self.expect("[")?;
        let mut variables = Vec::new();
        loop {
            self.skip_ws();
            match self.bump() {
                Some(c) if c.is_ascii_lowercase() => {
                    if variables.contains(&c) {
                        return Err(self.error(format!("duplicate variable `{c}`")));
                    }
                    variables.push(c);
                }
                _ => return Err(self.error("expected a single-letter variable")),
            }
            self.skip_ws();
            if self.eat(",") {
                continue;
            }
            break;
        }
        self.expect("]")?;
        self.expect("/")?;
        self.expect("(")?;
        let mut relations = Vec::new();
        loop {
            relations.push(self.polynomial(&variables)?);
            self.skip_ws();
            if self.eat(",") {
                continue;
            }
            break;
        }
        self.expect(")")?;
        Ok(RingSpec::Quotient(Presentation {
            modulus,
            variables,
            relations,
        }))
    }

    fn polynomial(&mut self, vars: &[char]) -> Result<Vec<Term>, ParseError> {
        let mut terms = Vec::new();
        self.skip_ws();
        let mut sign = if self.eat("-") { -1 } else { 1 };
        loop {
            let mut term = self.term(vars)?;
            term.coefficient *= sign;
            terms.push(term);
            self.skip_ws();
            if self.eat("+") {
                sign = 1;
            } else if self.eat("-") {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(terms)
    }

    fn term(&mut self, vars: &[char]) -> Result<Term, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut coefficient = 1i64;
        let saw_coefficient = self.peek().is_some_and(|c| c.is_ascii_digit());
        if saw_coefficient {
            coefficient =
                i64::try_from(self.int()?).map_err(|_| self.error("coefficient too large"))?;
            self.skip_ws();
            self.eat("*");
        }
        let mut exponents = vec![0u32; vars.len()];
        let mut saw_var = false;
        loop {
            self.skip_ws();
            let Some(c) = self.peek() else { break };
            let Some(slot) = vars.iter().position(|&v| v == c) else {
                if c.is_ascii_lowercase() {
                    return Err(self.error(format!("undeclared variable `{c}`")));
                }
                break;
            };
            self.bump();
            saw_var = true;
            self.skip_ws();
            let e = if self.eat("^") {
                u32::try_from(self.int()?).map_err(|_| self.error("exponent too large"))?
            } else {
                1
            };
            exponents[slot] += e;
            self.skip_ws();
            self.eat("*");
        }
        if !saw_coefficient && !saw_var {
            return Err(ParseError {
                position: start,
                message: "expected a polynomial term".into(),
            });
        }
        Ok(Term {
            coefficient,
            exponents,
        })
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `q = p^k` as `(p, k)` when `q` is a prime power.
pub(crate) fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn prime_power_field(q: u64) -> Option<RingSpec> {
    prime_power(q).map(|(p, k)| RingSpec::galois(p, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> RingSpec {
        s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn atoms() {
        assert_eq!(parse("Z6"), RingSpec::Cyclic(6));
        assert_eq!(parse("GF(4)"), RingSpec::galois(2, 2));
        assert_eq!(parse("GF(2^3)"), RingSpec::galois(2, 3));
        assert_eq!(parse("F9"), RingSpec::galois(3, 2));
        assert_eq!(parse("local8/Z2x3"), RingSpec::Catalog("Z2x3".into()));
    }

    #[test]
    fn products_with_both_separators() {
        let expected = RingSpec::Product(vec![RingSpec::Cyclic(2), RingSpec::galois(2, 2)]);
        assert_eq!(parse("Z2 x GF(4)"), expected);
        assert_eq!(parse("Z2*GF(4)"), expected);
        assert_eq!(parse("Z2xGF(4)"), expected);
        let nested = parse("(Z2 x Z3) x Z5");
        assert_eq!(nested.factors().len(), 3);
    }

    #[test]
    fn presentations() {
        let spec = parse("Z4[x]/(2x, x^2-2)");
        let RingSpec::Quotient(p) = &spec else {
            panic!()
        };
        assert_eq!(p.modulus, 4);
        assert_eq!(p.variables, vec!['x']);
        assert_eq!(
            p.relations,
            vec![
                vec![Term {
                    coefficient: 2,
                    exponents: vec![1]
                }],
                vec![
                    Term {
                        coefficient: 1,
                        exponents: vec![2]
                    },
                    Term {
                        coefficient: -2,
                        exponents: vec![0]
                    }
                ],
            ]
        );
        assert_eq!(spec.to_string(), "Z4[x]/(2x, x^2-2)");
        let two_vars = parse("Z2[x,y]/(x^2, xy, y^2)");
        assert_eq!(two_vars.to_string(), "Z2[x,y]/(x^2, xy, y^2)");
        assert_eq!(parse("Z2[x]/(x*x*x)").to_string(), "Z2[x]/(x^3)");
    }

    #[test]
    fn display_roundtrips() {
        for s in [
            "Z6",
            "Z2 x GF(4)",
            "Z2 x (Z3 x Z5)",
            "local8/Z4x_2x_x2m2",
            "Z4[x]/(2x, x^2)",
        ] {
            assert_eq!(parse(s).to_string(), s);
            assert_eq!(parse(&parse(s).to_string()), parse(s));
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = "Z2 x Q7".parse::<RingSpec>().unwrap_err();
        assert_eq!(e.position, 5);
        let e = "GF(6)".parse::<RingSpec>().unwrap_err();
        assert!(e.message.contains("prime power"));
        let e = "Z4[x]/(y)".parse::<RingSpec>().unwrap_err();
        assert!(e.message.contains("undeclared"));
        let e = "local8/Nope".parse::<RingSpec>().unwrap_err();
        assert!(e.message.contains("unknown catalog"));
        assert!("Z6 )".parse::<RingSpec>().is_err());
    }

    #[test]
    fn canonical_forms() {
        assert!(parse("Z5").same_construction(&parse("GF(5)")));
        assert!(parse("local8/Z2x3").same_construction(&parse("Z2[x]/(x^3)")));
        assert!(parse("(Z2 x Z3) x Z5").same_construction(&parse("Z2 x Z3 x Z5")));
        assert!(!parse("Z4").same_construction(&parse("Z2[x]/(x^2)")));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
