//! Finite commutative rings with unity, stored as explicit operation tables.
//!
//! Every constructor in [`build`] compiles down to [`FiniteRing::from_tables`],
//! which checks the ring axioms exhaustively and caches the algebraic
//! inventory (idempotents, units, inverses) used by the clean-graph code.

mod build;
pub mod catalog;
mod poly;
pub mod spec;

pub use build::{build_ring, build_ring_with, BuildOptions, DEFAULT_ELEMENT_BOUND};
pub use catalog::{catalog, CatalogEntry, CatalogKind};
pub use spec::{ParseError, Presentation, RingSpec, Term};

use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("malformed ring spec: {0}")]
    MalformedSpec(String),
    #[error("order-1 ring rejected: 0 = 1 in the constructed ring")]
    TrivialRing,
    #[error("construction exceeded the element bound of {bound}")]
    ElementBoundExceeded { bound: usize },
    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogName(String),
    #[error("idempotent count {0} is not a power of two (broken ring table)")]
    NonPowerOfTwoIdempotentCount(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Ordinal of an element in its ring's element list.
///
/// Index 0 is always the additive identity and index 1 the multiplicative
/// identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct RingElement(u32);

impl RingElement {
    pub const ZERO: RingElement = RingElement(0);
    pub const ONE: RingElement = RingElement(1);

    pub fn new(index: usize) -> Self {
        RingElement(u32::try_from(index).expect("ring element index fits in u32"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Split of the unit group into involutory units (`u^2 = 1`) and the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitClasses {
    pub involutory: Vec<RingElement>,
    pub non_involutory: Vec<RingElement>,
}

/// Both biconditionals relating `|U''|` to the shape of the unit group,
/// evaluated on one ring. Left sides count `U''`; right sides test the group
/// structure directly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropositionReport {
    pub unit_count: usize,
    pub non_involutory_count: usize,
    /// `|U''| = 2`
    pub two_non_involutory: bool,
    /// `U` is cyclic of order 3 or 4
    pub unit_group_cyclic_3_or_4: bool,
    /// `U'' = {}`
    pub no_non_involutory: bool,
    /// `U` is trivial or an elementary abelian 2-group
    pub unit_group_elementary_2: bool,
}

impl PropositionReport {
    pub fn cyclic_proposition_holds(&self) -> bool {
        self.two_non_involutory == self.unit_group_cyclic_3_or_4
    }

    pub fn elementary_proposition_holds(&self) -> bool {
        self.no_non_involutory == self.unit_group_elementary_2
    }

    pub fn holds(&self) -> bool {
        self.cyclic_proposition_holds() && self.elementary_proposition_holds()
    }
}

#[derive(Debug, Clone)]
pub struct FiniteRing {
    order: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    names: Vec<String>,
    construction: RingSpec,
    idempotents: Vec<RingElement>,
    units: Vec<RingElement>,
    inverse: Vec<Option<RingElement>>,
}

impl FiniteRing {
    /// Builds a ring from flattened `order x order` addition and multiplication
    /// tables.
    ///
    /// The tables may use any element numbering; elements are renumbered so
    /// that the additive identity comes first and the multiplicative identity
    /// second, with all other elements keeping their relative order. All ring
    /// axioms are checked over every pair and triple.
    pub fn from_tables(
        names: Vec<String>,
        add: Vec<u32>,
        mul: Vec<u32>,
        construction: RingSpec,
    ) -> Result<Self, RingError> {
        let n = names.len();
        if n == 0 {
            return Err(RingError::MalformedSpec("empty element set".into()));
        }
        if add.len() != n * n || mul.len() != n * n {
            return Err(RingError::MalformedSpec(format!(
                "operation tables must have {} entries",
                n * n
            )));
        }
        if add.iter().chain(mul.iter()).any(|&x| x as usize >= n) {
            return Err(RingError::MalformedSpec("table entry out of range".into()));
        }
        let at = |t: &[u32], a: usize, b: usize| t[a * n + b] as usize;

        let zero = (0..n)
            .find(|&z| (0..n).all(|a| at(&add, z, a) == a && at(&add, a, z) == a))
            .ok_or_else(|| RingError::MalformedSpec("no additive identity".into()))?;
        let one = (0..n)
            .find(|&o| (0..n).all(|a| at(&mul, o, a) == a && at(&mul, a, o) == a))
            .ok_or_else(|| RingError::MalformedSpec("no multiplicative identity".into()))?;
        if zero == one {
            return Err(RingError::TrivialRing);
        }

        // old index -> new index
        let mut order_list = vec![zero, one];
        order_list.extend((0..n).filter(|&i| i != zero && i != one));
        let mut relabel = vec![0u32; n];
        for (new, &old) in order_list.iter().enumerate() {
            relabel[old] = new as u32;
        }
        let mut new_add = vec![0u32; n * n];
        let mut new_mul = vec![0u32; n * n];
        for (a_new, &a) in order_list.iter().enumerate() {
            for (b_new, &b) in order_list.iter().enumerate() {
                new_add[a_new * n + b_new] = relabel[at(&add, a, b)];
                new_mul[a_new * n + b_new] = relabel[at(&mul, a, b)];
            }
        }
        let new_names = order_list.iter().map(|&i| names[i].clone()).collect();

        let mut ring = FiniteRing {
            order: n,
            add: new_add,
            mul: new_mul,
            neg: Vec::new(),
            names: new_names,
            construction,
            idempotents: Vec::new(),
            units: Vec::new(),
            inverse: Vec::new(),
        };
        ring.check_axioms()?;
        ring.cache_inventory();
        Ok(ring)
    }

    fn check_axioms(&mut self) -> Result<(), RingError> {
        let n = self.order;
        let fail = |what: &str| {
            Err(RingError::MalformedSpec(format!(
                "ring axiom fails: {what}"
            )))
        };
        let mut neg = vec![0u32; n];
        for (a, slot) in neg.iter_mut().enumerate() {
            match (0..n).find(|&b| self.add[a * n + b] == 0) {
                Some(b) => *slot = b as u32,
                None => return fail("additive inverse"),
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.add[a * n + b] != self.add[b * n + a] {
                    return fail("commutativity of addition");
                }
                if self.mul[a * n + b] != self.mul[b * n + a] {
                    return fail("commutativity of multiplication");
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab_sum = self.add[a * n + b] as usize;
                let ab_prod = self.mul[a * n + b] as usize;
                for c in 0..n {
                    if self.add[ab_sum * n + c] != self.add[a * n + self.add[b * n + c] as usize] {
                        return fail("associativity of addition");
                    }
                    if self.mul[ab_prod * n + c] != self.mul[a * n + self.mul[b * n + c] as usize] {
                        return fail("associativity of multiplication");
                    }
                    let lhs = self.mul[a * n + self.add[b * n + c] as usize];
                    let rhs =
                        self.add[self.mul[a * n + b] as usize * n + self.mul[a * n + c] as usize];
                    if lhs != rhs {
                        return fail("distributivity");
                    }
                }
            }
        }
        self.neg = neg;
        Ok(())
    }

    fn cache_inventory(&mut self) {
        let n = self.order;
        self.idempotents = self.elements().filter(|&e| self.mul(e, e) == e).collect();
        self.inverse = vec![None; n];
        for a in self.elements() {
            if let Some(b) = self
                .elements()
                .find(|&b| self.mul(a, b) == RingElement::ONE)
            {
                self.inverse[a.index()] = Some(b);
            }
        }
        self.units = self
            .elements()
            .filter(|u| self.inverse[u.index()].is_some())
            .collect();
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> RingElement {
        RingElement::ZERO
    }

    pub fn one(&self) -> RingElement {
        RingElement::ONE
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElement> {
        (0..self.order).map(RingElement::new)
    }

    #[inline]
    pub fn add(&self, a: RingElement, b: RingElement) -> RingElement {
        RingElement(self.add[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn mul(&self, a: RingElement, b: RingElement) -> RingElement {
        RingElement(self.mul[a.index() * self.order + b.index()])
    }

    pub fn neg(&self, a: RingElement) -> RingElement {
        RingElement(self.neg[a.index()])
    }

    pub fn sub(&self, a: RingElement, b: RingElement) -> RingElement {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: RingElement, exp: u32) -> RingElement {
        (0..exp).fold(RingElement::ONE, |acc, _| self.mul(acc, a))
    }

    /// `k * 1`, the image of the integer `k` in the ring.
    pub fn from_integer(&self, k: u64) -> RingElement {
        (0..k).fold(RingElement::ZERO, |acc, _| self.add(acc, RingElement::ONE))
    }

    pub fn name(&self, a: RingElement) -> &str {
        &self.names[a.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn construction(&self) -> &RingSpec {
        &self.construction
    }

    /// `Id(R)`, sorted by element index. Always contains 0 and 1.
    pub fn idempotents(&self) -> &[RingElement] {
        &self.idempotents
    }

    /// `Id(R)* = Id(R) \ {0, 1}`.
    pub fn nontrivial_idempotents(&self) -> Vec<RingElement> {
        self.idempotents
            .iter()
            .copied()
            .filter(|&e| e != RingElement::ZERO && e != RingElement::ONE)
            .collect()
    }

    pub fn has_nontrivial_idempotents(&self) -> bool {
        self.idempotents.len() > 2
    }

    pub fn is_idempotent(&self, e: RingElement) -> bool {
        self.mul(e, e) == e
    }

    /// `U(R)`, sorted by element index. Always contains 1.
    pub fn units(&self) -> &[RingElement] {
        &self.units
    }

    pub fn is_unit(&self, a: RingElement) -> bool {
        self.inverse[a.index()].is_some()
    }

    pub fn inverse(&self, a: RingElement) -> Option<RingElement> {
        self.inverse[a.index()]
    }

    pub fn classify_units(&self) -> UnitClasses {
        let (involutory, non_involutory) = self
            .units
            .iter()
            .partition(|&&u| self.mul(u, u) == RingElement::ONE);
        UnitClasses {
            involutory,
            non_involutory,
        }
    }

    /// Multiplicative order of a unit.
    pub fn unit_order(&self, u: RingElement) -> usize {
        debug_assert!(self.is_unit(u));
        let mut k = 1;
        let mut x = u;
        while x != RingElement::ONE {
            x = self.mul(x, u);
            k += 1;
        }
        k
    }

    pub fn unit_group_propositions(&self) -> PropositionReport {
        let classes = self.classify_units();
        let unit_count = self.units.len();
        let cyclic = self.units.iter().any(|&u| self.unit_order(u) == unit_count);
        let exponent_two = self.units.iter().all(|&u| self.unit_order(u) <= 2);
        PropositionReport {
            unit_count,
            non_involutory_count: classes.non_involutory.len(),
            two_non_involutory: classes.non_involutory.len() == 2,
            unit_group_cyclic_3_or_4: matches!(unit_count, 3 | 4) && cyclic,
            no_non_involutory: classes.non_involutory.is_empty(),
            unit_group_elementary_2: unit_count.is_power_of_two() && exponent_two,
        }
    }

    /// A maximum family of pairwise-orthogonal nonzero idempotents.
    ///
    /// Exhaustive search over `Id(R)* ∪ {1}`; among families of maximum size
    /// the lexicographically least (by sorted element indices) is returned.
    pub fn max_orthogonal_idempotents(&self) -> Vec<RingElement> {
        let candidates: Vec<RingElement> = self
            .idempotents
            .iter()
            .copied()
            .filter(|&e| e != RingElement::ZERO)
            .collect();
        let mut best = Vec::new();
        let mut current = Vec::new();
        self.orthogonal_search(&candidates, 0, &mut current, &mut best);
        best
    }

    fn orthogonal_search(
        &self,
        candidates: &[RingElement],
        start: usize,
        current: &mut Vec<RingElement>,
        best: &mut Vec<RingElement>,
    ) {
        if current.len() > best.len() {
            *best = current.clone();
        }
        if current.len() + (candidates.len() - start) <= best.len() {
            return;
        }
        for i in start..candidates.len() {
            let e = candidates[i];
            if current.iter().all(|&f| self.mul(e, f) == RingElement::ZERO) {
                current.push(e);
                self.orthogonal_search(candidates, i + 1, current, best);
                current.pop();
            }
        }
    }

    /// Number of local factors, recovered as `log2 |Id(R)|`.
    pub fn local_factor_count(&self) -> Result<usize, RingError> {
        let count = self.idempotents.len();
        if count.is_power_of_two() {
            Ok(count.trailing_zeros() as usize)
        } else {
            Err(RingError::NonPowerOfTwoIdempotentCount(count))
        }
    }

    /// True iff the non-units form an additive subgroup (the unique maximal
    /// ideal of a finite local ring).
    pub fn is_local(&self) -> bool {
        let non_units: Vec<RingElement> = self.elements().filter(|&a| !self.is_unit(a)).collect();
        non_units
            .iter()
            .all(|&a| non_units.iter().all(|&b| !self.is_unit(self.add(a, b))))
    }

    pub fn is_field(&self) -> bool {
        self.units.len() == self.order - 1
    }

    /// True iff the only nilpotent element is 0.
    pub fn is_reduced(&self) -> bool {
        self.elements().skip(1).all(|a| {
            let mut x = a;
            for _ in 0..self.order {
                if x == RingElement::ZERO {
                    return false;
                }
                x = self.mul(x, a);
            }
            true
        })
    }
}

impl PartialEq for FiniteRing {
    /// Table equality under the stored numbering (not isomorphism).
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.add == other.add && self.mul == other.mul
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(text: &str) -> FiniteRing {
        build_ring(&text.parse().unwrap()).unwrap()
    }

    fn names(r: &FiniteRing, xs: &[RingElement]) -> Vec<String> {
        xs.iter().map(|&x| r.name(x).to_string()).collect()
    }

    #[test]
    fn z4_units() {
        let r = ring("Z4");
        assert_eq!(r.order(), 4);
        assert_eq!(names(&r, r.units()), ["1", "3"]);
    }

    #[test]
    fn z6_idempotents() {
        let r = ring("Z6");
        let mut id = names(&r, r.idempotents());
        id.sort();
        assert_eq!(id, ["0", "1", "3", "4"]);
        assert_eq!(r.nontrivial_idempotents().len(), 2);
    }

    #[test]
    fn fields_have_trivial_idempotents() {
        for f in ["Z2", "Z3", "Z5", "Z7", "GF(4)", "GF(8)", "F9"] {
            assert_eq!(
                ring(f).idempotents(),
                &[RingElement::ZERO, RingElement::ONE],
                "{f}"
            );
        }
    }

    #[test]
    fn z5_inverses_and_classes() {
        let r = ring("Z5");
        let two = r.from_integer(2);
        assert_eq!(r.name(r.inverse(two).unwrap()), "3");
        let classes = r.classify_units();
        assert_eq!(names(&r, &classes.involutory), ["1", "4"]);
        assert_eq!(names(&r, &classes.non_involutory), ["2", "3"]);
    }

    #[test]
    fn boolean_square_has_single_unit() {
        let r = ring("Z2 x Z2");
        assert_eq!(r.units().len(), 1);
        assert_eq!(r.name(r.units()[0]), "(1,1)");
    }

    #[test]
    fn gf8_has_seven_units() {
        assert_eq!(ring("GF(8)").units().len(), 7);
    }

    #[test]
    fn z2_times_z3_has_no_non_involutory_units() {
        let r = ring("Z2 x Z3");
        assert!(r.classify_units().non_involutory.is_empty());
    }

    #[test]
    fn f4_has_two_non_involutory_units() {
        assert_eq!(ring("F4").classify_units().non_involutory.len(), 2);
    }

    #[test]
    fn propositions_on_examples() {
        let f4 = ring("F4").unit_group_propositions();
        assert!(f4.two_non_involutory && f4.unit_group_cyclic_3_or_4 && f4.holds());
        let z2z2 = ring("Z2 x Z2").unit_group_propositions();
        assert!(z2z2.no_non_involutory && z2z2.unit_group_elementary_2 && z2z2.holds());
        let z5 = ring("Z5").unit_group_propositions();
        assert!(z5.two_non_involutory && z5.unit_group_cyclic_3_or_4 && z5.holds());
        let z7 = ring("Z7").unit_group_propositions();
        assert!(!z7.two_non_involutory && !z7.unit_group_cyclic_3_or_4 && z7.holds());
    }

    #[test]
    fn orthogonal_families() {
        let r = ring("Z2 x Z3");
        let fam = r.max_orthogonal_idempotents();
        let mut n = names(&r, &fam);
        n.sort();
        assert_eq!(n, ["(0,1)", "(1,0)"]);
        assert_eq!(
            ring("GF(4)").max_orthogonal_idempotents(),
            vec![RingElement::ONE]
        );
        assert_eq!(ring("Z2 x Z2 x Z2").max_orthogonal_idempotents().len(), 3);
    }

    #[test]
    fn local_factor_counts() {
        assert_eq!(ring("Z8").local_factor_count().unwrap(), 1);
        assert_eq!(ring("Z6").local_factor_count().unwrap(), 2);
        assert_eq!(ring("Z2 x F4 x Z3").local_factor_count().unwrap(), 3);
    }

    #[test]
    fn locality() {
        assert!(ring("Z9").is_local());
        assert!(!ring("Z6").is_local());
        assert!(ring("Z2[x]/(x^2)").is_local());
        assert!(ring("Z4[x]/(2x, x^2-2)").is_local());
    }

    #[test]
    fn reduced_and_field() {
        assert!(ring("Z6").is_reduced());
        assert!(!ring("Z4").is_reduced());
        assert!(ring("GF(4)").is_field());
        assert!(!ring("Z2 x Z2").is_field());
    }

    #[test]
    fn from_tables_renumbers_identities() {
        // Z2 with 1 listed first and 0 second.
        let r = FiniteRing::from_tables(
            vec!["one".into(), "zero".into()],
            vec![1, 0, 0, 1],
            vec![0, 1, 1, 1],
            RingSpec::Cyclic(2),
        )
        .unwrap();
        assert_eq!(r.name(RingElement::ZERO), "zero");
        assert_eq!(r.name(RingElement::ONE), "one");
    }

    #[test]
    fn from_tables_rejects_broken_distributivity() {
        // Z3 addition with a multiplication that is commutative, associative and
        // unital but not distributive: 2*2 = 2.
        let add = vec![0, 1, 2, 1, 2, 0, 2, 0, 1];
        let mul = vec![0, 0, 0, 0, 1, 2, 0, 2, 2];
        let err = FiniteRing::from_tables(
            vec!["0".into(), "1".into(), "2".into()],
            add,
            mul,
            RingSpec::Cyclic(3),
        )
        .unwrap_err();
        assert!(matches!(err, RingError::MalformedSpec(_)), "{err}");
    }
}
