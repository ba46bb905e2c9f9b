use std::collections::HashMap;

use super::poly::{from_terms, Poly, Reducer};
use super::spec::{is_prime, Presentation, RingSpec};
use super::{catalog, FiniteRing, RingElement, RingError};

pub const DEFAULT_ELEMENT_BOUND: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Largest ring order any constructor may produce.
    pub element_bound: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            element_bound: DEFAULT_ELEMENT_BOUND,
        }
    }
}

pub fn build_ring(spec: &RingSpec) -> Result<FiniteRing, RingError> {
    build_ring_with(spec, &BuildOptions::default())
}

pub fn build_ring_with(spec: &RingSpec, opts: &BuildOptions) -> Result<FiniteRing, RingError> {
    match spec {
        RingSpec::Cyclic(n) => cyclic(*n, opts),
        RingSpec::GaloisField { p, k, modulus } => galois(*p, *k, modulus.as_deref(), opts),
        RingSpec::Quotient(pres) => quotient(pres, opts),
        RingSpec::Product(factors) => {
            let rings = factors
                .iter()
                .map(|f| build_ring_with(f, opts))
                .collect::<Result<Vec<_>, _>>()?;
            product(&rings, spec.clone(), opts)
        }
        RingSpec::Catalog(name) => {
            let inner =
                catalog::lookup(name).ok_or_else(|| RingError::UnknownCatalogName(name.clone()))?;
            let ring = build_ring_with(&inner, opts)?;
            Ok(FiniteRing {
                construction: spec.clone(),
                ..ring
            })
        }
    }
}

fn check_bound(order: u64, opts: &BuildOptions) -> Result<usize, RingError> {
    if order > opts.element_bound as u64 {
        Err(RingError::ElementBoundExceeded {
            bound: opts.element_bound,
        })
    } else {
        Ok(order as usize)
    }
}

fn cyclic(n: u64, opts: &BuildOptions) -> Result<FiniteRing, RingError> {
    match n {
        0 => return Err(RingError::MalformedSpec("Z0 is not a finite ring".into())),
        1 => return Err(RingError::TrivialRing),
        _ => {}
    }
    let n = check_bound(n, opts)?;
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            add.push(((a + b) % n) as u32);
            mul.push(((a * b) % n) as u32);
        }
    }
    let names = (0..n).map(|i| i.to_string()).collect();
    FiniteRing::from_tables(names, add, mul, RingSpec::Cyclic(n as u64))
}

/// Polynomials over `Z_p` as coefficient vectors, constant term first.
fn poly_mod(mut a: Vec<u64>, modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let lead_inv = mod_inverse(modulus[k], p);
    while a.len() > k {
        let top = a.pop().unwrap();
        if top == 0 {
            continue;
        }
        let factor = top * lead_inv % p;
        let shift = a.len() - k;
        for (i, &c) in modulus[..k].iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - factor * c % p) % p;
        }
    }
    a
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    (1..p).find(|&x| a * x % p == 1).unwrap_or(1)
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

/// True iff the monic `f` (degree >= 1) has no monic factor of degree in
/// `1..=deg/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let mut g = vec![0u64; d + 1];
        g[d] = 1;
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut c = code;
            for slot in g.iter_mut().take(d) {
                *slot = c % p;
                c /= p;
            }
            if trim(poly_mod(f.to_vec(), &g, p)).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `k` over `Z_p`,
/// comparing coefficients from `x^(k-1)` down to the constant term.
pub(crate) fn smallest_irreducible(p: u64, k: u32) -> Vec<u64> {
    let k = k as usize;
    let count = p.pow(k as u32);
    for code in 0..count {
        let mut f = vec![0u64; k + 1];
        f[k] = 1;
        let mut c = code;
        for slot in f.iter_mut().take(k) {
            *slot = c % p;
            c /= p;
        }
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn galois(
    p: u64,
    k: u32,
    modulus: Option<&[u64]>,
    opts: &BuildOptions,
) -> Result<FiniteRing, RingError> {
    if !is_prime(p) {
        return Err(RingError::MalformedSpec(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(RingError::MalformedSpec(
            "field degree must be at least 1".into(),
        ));
    }
    let order = p.checked_pow(k).ok_or(RingError::ElementBoundExceeded {
        bound: opts.element_bound,
    })?;
    let n = check_bound(order, opts)?;
    let k_us = k as usize;
    let f = match modulus {
        Some(m) => {
            if m.len() != k_us + 1 || m[k_us] != 1 || m.iter().any(|&c| c >= p) {
                return Err(RingError::MalformedSpec(format!(
                    "field modulus must be monic of degree {k} with coefficients below {p}"
                )));
            }
            if !is_irreducible(m, p) {
                return Err(RingError::MalformedSpec(
                    "field modulus is reducible".into(),
                ));
            }
            m.to_vec()
        }
        None => smallest_irreducible(p, k),
    };
    let digits = |mut i: usize| -> Vec<u64> {
        (0..k_us)
            .map(|_| {
                let d = (i as u64) % p;
                i /= p as usize;
                d
            })
            .collect()
    };
    let index = |v: &[u64]| -> u32 { v.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32 };
    let elems: Vec<Vec<u64>> = (0..n).map(digits).collect();
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in &elems {
        for b in &elems {
            let s: Vec<u64> = a.iter().zip(b).map(|(x, y)| (x + y) % p).collect();
            add.push(index(&s));
            let mut prod = poly_mod(poly_mul(a, b, p), &f, p);
            prod.resize(k_us, 0);
            mul.push(index(&prod));
        }
    }
    let names = elems.iter().map(|e| render_field_element(e)).collect();
    let spec = RingSpec::GaloisField {
        p,
        k,
        modulus: modulus.map(<[u64]>::to_vec),
    };
    FiniteRing::from_tables(names, add, mul, spec)
}

fn render_field_element(coeffs: &[u64]) -> String {
    if coeffs.len() == 1 {
        return coeffs[0].to_string();
    }
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 && i > 0 {
            String::new()
        } else {
            c.to_string()
        };
        parts.push(match i {
            0 => coeff,
            1 => format!("{coeff}a"),
            _ => format!("{coeff}a^{i}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Evaluates a presentation by closing `{0, 1, generators}` under `+` and `*`
/// with every intermediate result reduced to normal form.
///
/// The result is accepted only if the closure is finite within the element
/// bound, the tables satisfy the ring axioms, and every relation evaluates to
/// zero in the constructed ring. The last check rules out rewrite systems whose
/// normal forms are not unique.
fn quotient(pres: &Presentation, opts: &BuildOptions) -> Result<FiniteRing, RingError> {
    let m = pres.modulus;
    match m {
        0 => {
            return Err(RingError::MalformedSpec(
                "base ring Z0 is not finite".into(),
            ))
        }
        1 => return Err(RingError::TrivialRing),
        _ => {}
    }
    if pres.variables.is_empty() {
        return Err(RingError::MalformedSpec(
            "presentation needs at least one variable".into(),
        ));
    }
    let vars = pres.variables.len();
    if pres
        .relations
        .iter()
        .flatten()
        .any(|t| t.exponents.len() != vars)
    {
        return Err(RingError::MalformedSpec(
            "relation term has wrong arity".into(),
        ));
    }
    let reducer = Reducer::new(pres);
    debug_assert_eq!(reducer.modulus(), m);
    debug_assert_eq!(reducer.vars(), vars);

    let mut elems: Vec<Poly> = Vec::new();
    let mut index: HashMap<Poly, usize> = HashMap::new();
    let intern = |p: Poly,
                  elems: &mut Vec<Poly>,
                  index: &mut HashMap<Poly, usize>|
     -> Result<usize, RingError> {
        if let Some(&i) = index.get(&p) {
            return Ok(i);
        }
        if elems.len() >= opts.element_bound {
            return Err(RingError::ElementBoundExceeded {
                bound: opts.element_bound,
            });
        }
        index.insert(p.clone(), elems.len());
        elems.push(p);
        Ok(elems.len() - 1)
    };
    let zero = intern(reducer.reduce(Poly::zero()), &mut elems, &mut index)?;
    let one = intern(
        reducer.reduce(Poly::constant(1, vars, m)),
        &mut elems,
        &mut index,
    )?;
    if zero == one {
        return Err(RingError::TrivialRing);
    }
    let mut generators = Vec::with_capacity(vars);
    for i in 0..vars {
        generators.push(intern(
            reducer.reduce(Poly::variable(i, vars)),
            &mut elems,
            &mut index,
        )?);
    }

    let mut sums: HashMap<(usize, usize), usize> = HashMap::new();
    let mut prods: HashMap<(usize, usize), usize> = HashMap::new();
    let mut i = 0;
    while i < elems.len() {
        for j in 0..=i {
            let s = reducer.reduce(elems[i].add(&elems[j], m));
            let s = intern(s, &mut elems, &mut index)?;
            let p = reducer.reduce(elems[i].mul(&elems[j], m));
            let p = intern(p, &mut elems, &mut index)?;
            sums.insert((i, j), s);
            prods.insert((i, j), p);
        }
        i += 1;
    }

    let n = elems.len();
    let mut add = vec![0u32; n * n];
    let mut mul = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..=a {
            let s = sums[&(a, b)] as u32;
            let p = prods[&(a, b)] as u32;
            add[a * n + b] = s;
            add[b * n + a] = s;
            mul[a * n + b] = p;
            mul[b * n + a] = p;
        }
    }
    let names = elems.iter().map(|e| e.render(&pres.variables)).collect();
    let ring = FiniteRing::from_tables(names, add, mul, RingSpec::Quotient(pres.clone()))?;

    // from_tables keeps 0 and 1 in place, so generator indices are unchanged.
    let gens: Vec<RingElement> = generators.into_iter().map(RingElement::new).collect();
    for rel in &pres.relations {
        let mut value = RingElement::ZERO;
        for term in rel {
            let mut t = ring.from_integer(term.coefficient.rem_euclid(m as i64) as u64);
            for (g, &e) in gens.iter().zip(&term.exponents) {
                t = ring.mul(t, ring.pow(*g, e));
            }
            value = ring.add(value, t);
        }
        if value != RingElement::ZERO {
            let shown = from_terms(rel, m).render(&pres.variables);
            return Err(RingError::MalformedSpec(format!(
                "relation {shown} does not vanish under the rewrite system; \
                 supply relations whose leading terms give unique normal forms"
            )));
        }
    }
    Ok(ring)
}

fn product(
    rings: &[FiniteRing],
    spec: RingSpec,
    opts: &BuildOptions,
) -> Result<FiniteRing, RingError> {
    if rings.is_empty() {
        return Err(RingError::MalformedSpec(
            "product needs at least one factor".into(),
        ));
    }
    let order = rings
        .iter()
        .try_fold(1u64, |acc, r| acc.checked_mul(r.order() as u64))
        .ok_or(RingError::ElementBoundExceeded {
            bound: opts.element_bound,
        })?;
    let n = check_bound(order, opts)?;
    // Mixed radix with the first factor most significant.
    let radices: Vec<usize> = rings.iter().map(FiniteRing::order).collect();
    let decode = |mut i: usize| -> Vec<usize> {
        let mut digits = vec![0; radices.len()];
        for (slot, &r) in digits.iter_mut().zip(&radices).rev() {
            *slot = i % r;
            i /= r;
        }
        digits
    };
    let encode = |digits: &[usize]| -> u32 {
        digits
            .iter()
            .zip(&radices)
            .fold(0usize, |acc, (&d, &r)| acc * r + d) as u32
    };
    let tuples: Vec<Vec<usize>> = (0..n).map(decode).collect();
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    let mut buf = vec![0usize; rings.len()];
    for a in &tuples {
        for b in &tuples {
            for (k, r) in rings.iter().enumerate() {
                buf[k] = r
                    .add(RingElement::new(a[k]), RingElement::new(b[k]))
                    .index();
            }
            add.push(encode(&buf));
            for (k, r) in rings.iter().enumerate() {
                buf[k] = r
                    .mul(RingElement::new(a[k]), RingElement::new(b[k]))
                    .index();
            }
            mul.push(encode(&buf));
        }
    }
    let names = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t
                .iter()
                .zip(rings)
                .map(|(&d, r)| r.name(RingElement::new(d)))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    FiniteRing::from_tables(names, add, mul, spec)
}
