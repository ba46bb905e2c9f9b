//! Multivariate polynomials over `Z_m` with rewrite-rule reduction, used to
//! evaluate quotient presentations.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::spec::{Presentation, Term};

/// Exponent vector under graded lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Monomial(pub Vec<u32>);

impl Monomial {
    fn one(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, divisor: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect())
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Nonzero coefficients in `[1, m)` keyed by monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Poly(BTreeMap<Monomial, u64>);

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeMap::new())
    }

    pub fn constant(c: u64, vars: usize, m: u64) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(vars), c, m);
        p
    }

    pub fn variable(i: usize, vars: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Poly(BTreeMap::from([(Monomial(e), 1)]))
    }

    fn add_term(&mut self, mono: Monomial, c: u64, m: u64) {
        let c = c % m;
        if c == 0 {
            return;
        }
        let v = (self.0.get(&mono).copied().unwrap_or(0) + c) % m;
        if v == 0 {
            self.0.remove(&mono);
        } else {
            self.0.insert(mono, v);
        }
    }

    pub fn add(&self, other: &Poly, m: u64) -> Poly {
        let mut out = self.clone();
        for (mono, &c) in &other.0 {
            out.add_term(mono.clone(), c, m);
        }
        out
    }

    pub fn mul(&self, other: &Poly, m: u64) -> Poly {
        let mut out = Poly::zero();
        for (a, &ca) in &self.0 {
            for (b, &cb) in &other.0 {
                out.add_term(a.times(b), mul_mod(ca, cb, m), m);
            }
        }
        out
    }

    fn scaled_shift(&self, c: u64, shift: &Monomial, m: u64) -> Poly {
        let mut out = Poly::zero();
        for (mono, &k) in &self.0 {
            out.add_term(mono.times(shift), mul_mod(k, c, m), m);
        }
        out
    }

    fn leading(&self) -> Option<(&Monomial, u64)> {
        self.0.iter().next_back().map(|(k, &v)| (k, v))
    }

    pub fn render(&self, vars: &[char]) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (mono, &c) in self.0.iter().rev() {
            if !out.is_empty() {
                out.push('+');
            }
            let has_vars = mono.0.iter().any(|&e| e > 0);
            if c != 1 || !has_vars {
                out.push_str(&c.to_string());
            }
            for (v, &e) in vars.iter().zip(&mono.0) {
                match e {
                    0 => {}
                    1 => out.push(*v),
                    _ => out.push_str(&format!("{v}^{e}")),
                }
            }
        }
        out
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Rewrite rule whose leading coefficient `lead` divides `m`: any term
/// `d * X^a` with `X^lead_mono | X^a` and `d >= lead` is reduced.
#[derive(Debug, Clone)]
struct Rule {
    lead_mono: Monomial,
    lead: u64,
    poly: Poly,
}

#[derive(Debug, Clone)]
pub(crate) struct Reducer {
    modulus: u64,
    vars: usize,
    rules: Vec<Rule>,
}

impl Reducer {
    pub fn new(pres: &Presentation) -> Self {
        let m = pres.modulus;
        let vars = pres.variables.len();
        let mut rules = Vec::new();
        for rel in &pres.relations {
            let poly = from_terms(rel, m);
            let Some((mono, c)) = poly.leading() else {
                continue;
            };
            let g = gcd(c, m);
            // c and gcd(c, m) are associates in Z_m; rescale by a unit so the
            // leading coefficient becomes g.
            let unit = (1..m)
                .find(|&s| gcd(s, m) == 1 && mul_mod(s, c, m) == g % m)
                .unwrap_or(1);
            let lead_mono = mono.clone();
            let poly = poly.scaled_shift(unit, &Monomial::one(vars), m);
            rules.push(Rule {
                lead_mono,
                lead: g,
                poly,
            });
        }
        Reducer {
            modulus: m,
            vars,
            rules,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn reduce(&self, mut p: Poly) -> Poly {
        let m = self.modulus;
        loop {
            let step = p.0.iter().rev().find_map(|(mono, &d)| {
                self.rules
                    .iter()
                    .find(|r| d >= r.lead && r.lead_mono.divides(mono))
                    .map(|r| (r, mono.quotient(&r.lead_mono), d / r.lead))
            });
            let Some((rule, shift, q)) = step else {
                return p;
            };
            let sub = rule.poly.scaled_shift(m - q % m, &shift, m);
            p = p.add(&sub, m);
        }
    }
}

pub(crate) fn from_terms(terms: &[Term], m: u64) -> Poly {
    let mut p = Poly::zero();
    for t in terms {
        let c = t.coefficient.rem_euclid(m as i64) as u64;
        p.add_term(Monomial(t.exponents.clone()), c, m);
    }
    p
}
