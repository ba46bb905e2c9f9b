//! Closed-form predictions for clean-graph invariants, and the harness that
//! checks them against computation.

mod claims;
pub mod registry;
pub mod report;

pub use claims::{
    run_verification, verify_ring, Claim, ClaimStatus, ClaimValue, VerificationReport,
    VerifyOptions,
};

use serde::Serialize;
use thiserror::Error;

use crate::ring::{build_ring, FiniteRing, RingError, RingSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoryError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

fn violated<T>(msg: &str) -> Result<T, TheoryError> {
    Err(TheoryError::HypothesisViolated(msg.to_string()))
}

/// Ring quantities that select formula cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inventory {
    pub order: usize,
    /// |Id(R)|
    pub idempotents: usize,
    /// |Id(R)*|, idempotents other than 0 and 1.
    pub nontrivial_idempotents: usize,
    /// Size of a largest family of pairwise orthogonal nonzero idempotents.
    pub orthogonal_idempotents: usize,
    /// |U(R)|
    pub units: usize,
    /// |U'(R)|, units with u^2 = 1.
    pub involutory_units: usize,
    /// |U''(R)|
    pub non_involutory_units: usize,
    /// Number of local factors n, with |Id(R)| = 2^n.
    pub local_factors: usize,
    pub is_local: bool,
    pub is_field: bool,
    pub is_reduced: bool,
}

impl Inventory {
    pub fn of(ring: &FiniteRing) -> Result<Self, RingError> {
        let classes = ring.classify_units();
        Ok(Inventory {
            order: ring.order(),
            idempotents: ring.idempotents().len(),
            nontrivial_idempotents: ring.nontrivial_idempotents().len(),
            orthogonal_idempotents: ring.max_orthogonal_idempotents().len(),
            units: ring.units().len(),
            involutory_units: classes.involutory.len(),
            non_involutory_units: classes.non_involutory.len(),
            local_factors: ring.local_factor_count()?,
            is_local: ring.is_local(),
            is_field: ring.is_field(),
            is_reduced: ring.is_reduced(),
        })
    }

    pub fn has_nontrivial_idempotents(&self) -> bool {
        self.nontrivial_idempotents > 0
    }

    /// True iff |Id*| >= 2|Id_perp*|, the side of the case split that also
    /// receives ties.
    fn idempotents_dominate(&self) -> bool {
        self.nontrivial_idempotents >= 2 * self.orthogonal_idempotents
    }

    fn pow2n(&self) -> usize {
        1usize << self.local_factors
    }
}

/// A predicted value with the formula case that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub value: usize,
    pub case: &'static str,
}

fn pred(value: usize, case: &'static str) -> Result<Prediction, TheoryError> {
    Ok(Prediction { value, case })
}

/// Independence number of the SR-graph of Cl2(R).
pub fn predict_beta_cl2_srg(inv: &Inventory) -> Result<Prediction, TheoryError> {
    if !inv.has_nontrivial_idempotents() {
        return violated("ring has no nontrivial idempotents");
    }
    if inv.units < 2 {
        return violated("|U(R)| < 2");
    }
    let id = inv.nontrivial_idempotents;
    let perp2 = 2 * inv.orthogonal_idempotents;
    match inv.non_involutory_units {
        0 => pred(id + 1, "U'' empty: |Id*| + 1"),
        2 if inv.idempotents_dominate() => {
            pred(id + 2, "|U''| = 2, |Id*| >= 2|Id_perp*|: |Id*| + 2")
        }
        2 => pred(perp2 + 1, "|U''| = 2, 2|Id_perp*| > |Id*|: 2|Id_perp*| + 1"),
        _ => pred(id.max(perp2) + 2, "|U''| > 2: max(2|Id_perp*|, |Id*|) + 2"),
    }
}

/// Independence number of the SR-graph of Cl(R) from that of Cl2(R).
pub fn predict_beta_relation(inv: &Inventory, beta_cl2: usize) -> Result<Prediction, TheoryError> {
    if !inv.has_nontrivial_idempotents() {
        return violated("ring has no nontrivial idempotents");
    }
    if inv.units == 1 {
        return pred(1, "|U| = 1: 1");
    }
    match inv.non_involutory_units {
        0 => pred(beta_cl2 + 1, "U'' empty: beta2 + 1"),
        2 => pred(beta_cl2, "|U''| = 2: beta2"),
        _ if inv.idempotents_dominate() => pred(beta_cl2, "|U''| > 2, |Id*| >= 2|Id_perp*|: beta2"),
        _ => pred(beta_cl2 - 1, "|U''| > 2, 2|Id_perp*| > |Id*|: beta2 - 1"),
    }
}

/// Independence number of Cl(R)_SR without nontrivial idempotents.
pub fn predict_beta_cl_no_idempotents(inv: &Inventory) -> Result<Prediction, TheoryError> {
    if inv.has_nontrivial_idempotents() {
        return violated("ring has nontrivial idempotents");
    }
    if inv.units < 2 {
        return violated("Cl(R) is complete");
    }
    pred(2, "2")
}

/// sdim(Cl(R)) from sdim(Cl2(R)).
pub fn predict_sdim_relation(inv: &Inventory, sdim_cl2: usize) -> Result<Prediction, TheoryError> {
    if !inv.has_nontrivial_idempotents() {
        return violated("ring has no nontrivial idempotents");
    }
    let u = inv.units;
    if u == 1 {
        return pred(sdim_cl2 + 1, "|U| = 1: sdim2 + 1");
    }
    match inv.non_involutory_units {
        0 => pred(sdim_cl2 + u - 1, "U'' empty: sdim2 + |U| - 1"),
        2 => pred(sdim_cl2 + u, "|U''| = 2: sdim2 + |U|"),
        _ if inv.idempotents_dominate() => {
            pred(sdim_cl2 + u, "|U''| > 2, |Id*| >= 2|Id_perp*|: sdim2 + |U|")
        }
        _ => pred(
            sdim_cl2 + u + 1,
            "|U''| > 2, 2|Id_perp*| > |Id*|: sdim2 + |U| + 1",
        ),
    }
}

/// sdim(Cl(R)) when Id(R) = {0, 1}; also the local-ring formula.
pub fn predict_sdim_no_idempotents(inv: &Inventory) -> Result<Prediction, TheoryError> {
    if inv.has_nontrivial_idempotents() {
        return violated("ring has nontrivial idempotents");
    }
    if inv.units == 1 {
        pred(1, "|U| = 1: 1")
    } else {
        pred(2 * inv.units - 2, "|U| >= 2: 2|U| - 2")
    }
}

/// sdim(Cl(F_q)).
pub fn predict_sdim_field(inv: &Inventory) -> Result<Prediction, TheoryError> {
    if !inv.is_field {
        return violated("ring is not a field");
    }
    let q = inv.order;
    if q == 2 {
        pred(1, "q = 2: 1")
    } else {
        pred(2 * q - 4, "q >= 3: 2q - 4")
    }
}

/// sdim(Cl2(R)) for a product of n >= 2 local rings. `listed_u2_ring`
/// says whether R is one of the four |U''| = 2 rings times Z2.
pub fn predict_sdim_cl2_product(
    inv: &Inventory,
    listed_u2_ring: bool,
) -> Result<Prediction, TheoryError> {
    let n = inv.local_factors;
    if n < 2 {
        return violated("fewer than two local factors");
    }
    let (p, u) = (inv.pow2n(), inv.units);
    if inv.non_involutory_units == 0 {
        if u == 1 {
            pred(p - 2, "U'' empty, |U| = 1: 2^n - 2")
        } else {
            pred(
                (p - 1) * u - p + 1,
                "U'' empty, |U| >= 2: (2^n - 1)|U| - 2^n + 1",
            )
        }
    } else if n >= 3 {
        pred((p - 1) * u - p, "U'' nonempty, n >= 3: (2^n - 1)|U| - 2^n")
    } else if listed_u2_ring {
        pred(3 * u - 5, "U'' nonempty, n = 2, listed ring: 3|U| - 5")
    } else {
        pred(3 * u - 6, "U'' nonempty, n = 2, other: 3|U| - 6")
    }
}

/// Closed form for sdim(Cl(R)) of a product of n >= 2 local rings.
pub fn predict_sdim_cl_product(inv: &Inventory) -> Result<Prediction, TheoryError> {
    let n = inv.local_factors;
    if n < 2 {
        return violated("fewer than two local factors");
    }
    let (p, u) = (inv.pow2n(), inv.units);
    if u == 1 {
        pred(p - 1, "|U| = 1: 2^n - 1")
    } else if n == 2 {
        pred(4 * u - 5, "|U| >= 2, n = 2: 4|U| - 5")
    } else {
        pred(p * u - p, "|U| >= 2, n >= 3: 2^n|U| - 2^n")
    }
}

/// sdim(Cl2(R)) for a product of fields, written with prod(|F_i| - 1).
pub fn predict_sdim_cl2_reduced(field_orders: &[usize]) -> Result<Prediction, TheoryError> {
    let n = field_orders.len();
    if n < 2 {
        return violated("fewer than two field factors");
    }
    let p = 1usize << n;
    let prod: usize = field_orders.iter().map(|q| q - 1).product();
    if field_orders.iter().all(|&q| q == 2) {
        return pred(p - 2, "all Z2: 2^n - 2");
    }
    if field_orders.iter().all(|&q| q <= 3) {
        return pred(
            (p - 1) * prod - p + 1,
            "Z2/Z3 factors: (2^n - 1)prod - 2^n + 1",
        );
    }
    let mut sorted = field_orders.to_vec();
    sorted.sort_unstable();
    if sorted == [2, 4] || sorted == [2, 5] {
        pred(3 * prod - 5, "Z2 x F4 or Z2 x Z5: 3 prod - 5")
    } else if n == 2 {
        pred((p - 1) * prod - 6, "n = 2: (2^n - 1)prod - 6")
    } else {
        pred((p - 1) * prod - p, "n >= 3: (2^n - 1)prod - 2^n")
    }
}

/// sdim(Cl(R)) for a product of fields, written with prod(|F_i| - 1).
pub fn predict_sdim_cl_reduced(field_orders: &[usize]) -> Result<Prediction, TheoryError> {
    let n = field_orders.len();
    if n < 2 {
        return violated("fewer than two field factors");
    }
    let p = 1usize << n;
    let prod: usize = field_orders.iter().map(|q| q - 1).product();
    if field_orders.iter().all(|&q| q == 2) {
        pred(p - 1, "all Z2: 2^n - 1")
    } else if n == 2 {
        pred(4 * prod - 5, "n = 2: 4 prod - 5")
    } else {
        pred(p * prod - p, "n >= 3: 2^n prod - 2^n")
    }
}

/// Outcome of checking: |U''(R)| = 2 iff R = R1 x Z2 x ... x Z2 with R1 one
/// of F4, Z5, Z2[x]/(x^3), Z4[x]/(2x, x^2-2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct U2LemmaCheck {
    pub two_non_involutory: bool,
    pub factors_listed: bool,
}

impl U2LemmaCheck {
    pub fn holds(&self) -> bool {
        self.two_non_involutory == self.factors_listed
    }
}

fn is_listed_u2_factor(spec: &RingSpec) -> bool {
    if let RingSpec::GaloisField { p: 2, k: 2, .. } = spec {
        return true;
    }
    ["Z5", "Z2[x]/(x^3)", "Z4[x]/(2x, x^2-2)"]
        .iter()
        .any(|t| spec.same_construction(&t.parse().expect("listed rings parse")))
}

/// Whether the construction is one of the four listed rings times copies of
/// Z2, compared on construction provenance up to factor order.
pub fn factors_match_u2_list(spec: &RingSpec) -> bool {
    let factors = spec.factors();
    let z2 = RingSpec::Cyclic(2);
    let listed = factors.iter().filter(|f| is_listed_u2_factor(f)).count();
    let twos = factors.iter().filter(|f| **f == z2).count();
    factors.len() >= 2 && listed == 1 && twos == factors.len() - 1
}

/// Requires a ring built as an explicit product of at least two local
/// factors.
pub fn check_u2_lemma(ring: &FiniteRing) -> Result<U2LemmaCheck, TheoryError> {
    let factors = ring.construction().factors();
    if factors.len() < 2 {
        return violated("ring was not built as a product of two or more factors");
    }
    for f in &factors {
        let local = build_ring(f).map(|r| r.is_local()).unwrap_or(false);
        if !local {
            return violated(&format!("factor {f} is not local"));
        }
    }
    Ok(U2LemmaCheck {
        two_non_involutory: ring.classify_units().non_involutory.len() == 2,
        factors_listed: factors_match_u2_list(ring.construction()),
    })
}

/// Orders of the field factors when the construction is a product of
/// fields; `None` otherwise.
pub fn field_factor_orders(spec: &RingSpec) -> Option<Vec<usize>> {
    let factors = spec.factors();
    if factors.len() < 2 {
        return None;
    }
    factors
        .iter()
        .map(|f| {
            build_ring(f)
                .ok()
                .filter(|r| r.is_field())
                .map(|r| r.order())
        })
        .collect()
}

/// Unit-group orders of the factors when built as a product.
pub fn factor_unit_counts(spec: &RingSpec) -> Option<Vec<usize>> {
    let factors = spec.factors();
    if factors.len() < 2 {
        return None;
    }
    factors
        .iter()
        .map(|f| build_ring(f).ok().map(|r| r.units().len()))
        .collect()
}
