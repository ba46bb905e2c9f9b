//! Per-ring verification: every applicable closed form against computation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

use super::registry::Registry;
use super::*;
use crate::clean::{build_cl, build_cl1, build_cl2, CleanGraph};
use crate::graph::{all_pairs_distances, Diameter};
use crate::ring::{build_ring_with, BuildOptions};
use crate::solver::{sdim_with_oracle, DimensionReport, DEFAULT_ORACLE_BOUND};
use crate::srg::{mmd_pairs, predicted_mmd, verify_srg_structure, MmdTheorem, StructureOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClaimValue {
    Int(usize),
    Bool(bool),
    Text(String),
}

impl fmt::Display for ClaimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimValue::Int(v) => write!(f, "{v}"),
            ClaimValue::Bool(v) => write!(f, "{v}"),
            ClaimValue::Text(v) => f.write_str(v),
        }
    }
}

impl From<usize> for ClaimValue {
    fn from(v: usize) -> Self {
        ClaimValue::Int(v)
    }
}

impl From<bool> for ClaimValue {
    fn from(v: bool) -> Self {
        ClaimValue::Bool(v)
    }
}

impl From<String> for ClaimValue {
    fn from(v: String) -> Self {
        ClaimValue::Text(v)
    }
}

impl From<&str> for ClaimValue {
    fn from(v: &str) -> Self {
        ClaimValue::Text(v.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ClaimStatus {
    Match,
    Mismatch,
    Skipped,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Match => "MATCH",
            ClaimStatus::Mismatch => "MISMATCH",
            ClaimStatus::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: &'static str,
    pub predicted: Option<ClaimValue>,
    pub computed: Option<ClaimValue>,
    pub status: ClaimStatus,
    /// Formula case for evaluated claims, reason for skipped ones.
    pub note: String,
    /// Present on every mismatch.
    pub witness: Option<String>,
    /// Mismatch listed in the expected-mismatch registry.
    pub registered: bool,
}

impl Claim {
    fn compare(
        id: &'static str,
        predicted: impl Into<ClaimValue>,
        computed: impl Into<ClaimValue>,
        note: impl Into<String>,
    ) -> Self {
        let (p, c) = (predicted.into(), computed.into());
        let status = if p == c {
            ClaimStatus::Match
        } else {
            ClaimStatus::Mismatch
        };
        let witness =
            (status == ClaimStatus::Mismatch).then(|| format!("predicted {p}, computed {c}"));
        Claim {
            id,
            predicted: Some(p),
            computed: Some(c),
            status,
            note: note.into(),
            witness,
            registered: false,
        }
    }

    fn skipped(id: &'static str, reason: impl Into<String>) -> Self {
        Claim {
            id,
            predicted: None,
            computed: None,
            status: ClaimStatus::Skipped,
            note: reason.into(),
            witness: None,
            registered: false,
        }
    }

    fn from_prediction(
        id: &'static str,
        prediction: Result<Prediction, TheoryError>,
        computed: usize,
    ) -> Self {
        match prediction {
            Ok(p) => Claim::compare(id, p.value, computed, p.case),
            Err(e) => Claim::skipped(id, e.to_string()),
        }
    }

    /// Replaces the generic witness with a specific one on mismatch.
    fn with_witness(mut self, witness: Option<String>) -> Self {
        if self.status == ClaimStatus::Mismatch {
            if let Some(w) = witness {
                self.witness = Some(w);
            }
        }
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub ring: String,
    pub inventory: Option<Inventory>,
    pub error: Option<String>,
    pub claims: Vec<Claim>,
}

impl VerificationReport {
    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn unregistered_mismatches(&self) -> impl Iterator<Item = &Claim> {
        self.claims
            .iter()
            .filter(|c| c.status == ClaimStatus::Mismatch && !c.registered)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub oracle_bound: usize,
    pub build: BuildOptions,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub registry: Registry,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            oracle_bound: DEFAULT_ORACLE_BOUND,
            build: BuildOptions::default(),
            jobs: None,
            registry: Registry::builtin(),
        }
    }
}

fn diameter_text(d: Diameter) -> String {
    d.to_string()
}

/// Computed MMD pair set against the predicate, pair by pair.
fn mmd_claim(id: &'static str, ring: &FiniteRing, g: &CleanGraph, theorem: MmdTheorem) -> Claim {
    let d = all_pairs_distances(g);
    let computed = match mmd_pairs(g, &d) {
        Ok(p) => p,
        Err(e) => return Claim::skipped(id, e.to_string()),
    };
    let mut is_computed = vec![false; g.order() * g.order()];
    for &(u, v) in &computed {
        is_computed[u * g.order() + v] = true;
    }
    let mut predicted_count = 0;
    let mut witness = None;
    for u in 0..g.order() {
        for v in (u + 1)..g.order() {
            let p = match predicted_mmd(ring, theorem, *g.label(u), *g.label(v)) {
                Ok(p) => p,
                Err(e) => return Claim::skipped(id, e.to_string()),
            };
            predicted_count += usize::from(p);
            if p != is_computed[u * g.order() + v] && witness.is_none() {
                witness = Some(format!(
                    "pair {} {} predicted {}, computed {}",
                    g.label(u).render(ring),
                    g.label(v).render(ring),
                    if p { "MMD" } else { "not MMD" },
                    if p { "not MMD" } else { "MMD" },
                ));
            }
        }
    }
    let note = format!("{theorem:?}: {predicted_count} predicted pairs");
    match witness {
        None => Claim::compare(id, computed.len(), computed.len(), note),
        Some(w) => Claim {
            id,
            predicted: Some(predicted_count.into()),
            computed: Some(computed.len().into()),
            status: ClaimStatus::Mismatch,
            note,
            witness: Some(w),
            registered: false,
        },
    }
}

fn structure_claim(id: &'static str, outcome: &StructureOutcome) -> Claim {
    match outcome {
        StructureOutcome::Match { claim } => Claim::compare(
            id,
            format!("{claim:?}"),
            format!("{claim:?}"),
            "label-exact",
        ),
        StructureOutcome::Mismatch { claim, witness } => Claim {
            id,
            predicted: Some(format!("{claim:?}").into()),
            computed: Some("differs".into()),
            status: ClaimStatus::Mismatch,
            note: "label-exact".into(),
            witness: Some(witness.clone()),
            registered: false,
        },
        StructureOutcome::Skipped { reason } => Claim::skipped(id, reason.clone()),
    }
}

fn witness_text(ring: &FiniteRing, g: &CleanGraph, set: &[usize]) -> String {
    let items: Vec<String> = set.iter().map(|&i| g.label(i).render(ring)).collect();
    format!("{{{}}}", items.join(", "))
}

/// Dimension data for one graph, `None` when disconnected.
struct Dim {
    report: Option<DimensionReport>,
    reason: String,
}

fn dimension(g: &CleanGraph, oracle_bound: usize) -> Dim {
    match sdim_with_oracle(g, oracle_bound) {
        Ok(r) => Dim {
            report: Some(r),
            reason: String::new(),
        },
        Err(e) => Dim {
            report: None,
            reason: e.to_string(),
        },
    }
}

fn oracle_claims(
    out: &mut Vec<Claim>,
    ring: &FiniteRing,
    g: &CleanGraph,
    dim: &Dim,
    oracle_id: &'static str,
    gallai_id: &'static str,
) {
    match &dim.report {
        None => {
            out.push(Claim::skipped(oracle_id, dim.reason.clone()));
            out.push(Claim::skipped(gallai_id, dim.reason.clone()));
        }
        Some(r) => {
            match &r.resolving_set {
                Some(set) => {
                    let note = format!("oracle witness {}", witness_text(ring, g, set));
                    out.push(
                        Claim::compare(oracle_id, r.alpha_srg, set.len(), note).with_witness(Some(
                            format!(
                                "alpha(SR) = {} with cover {}, oracle set {}",
                                r.alpha_srg,
                                witness_text(ring, g, &r.vertex_cover),
                                witness_text(ring, g, set)
                            ),
                        )),
                    );
                }
                None => out.push(Claim::skipped(oracle_id, "graph above oracle bound")),
            }
            out.push(Claim::compare(
                gallai_id,
                r.srg_vertices,
                r.alpha_srg + r.beta_srg,
                "alpha + beta = |V(SR)|",
            ));
        }
    }
}

/// All claims for one ring.
fn claims_for(ring: &FiniteRing, oracle_bound: usize) -> Result<(Inventory, Vec<Claim>), String> {
    let inv = Inventory::of(ring).map_err(|e| e.to_string())?;
    let spec = ring.construction();
    let mut out = Vec::new();

    let cl = build_cl(ring);
    let cl1 = build_cl1(ring);
    let cl2 = build_cl2(ring);
    let zero = ring.zero();

    // Graph shape.
    out.push(Claim::compare(
        "vertex_count_cl",
        inv.idempotents * inv.units,
        cl.order(),
        "|Id||U|",
    ));
    out.push(Claim::compare(
        "vertex_count_cl2",
        (inv.idempotents - 1) * inv.units,
        cl2.order(),
        "(|Id| - 1)|U|",
    ));
    out.push(match factor_unit_counts(spec) {
        Some(us) if inv.local_factors >= 2 => Claim::compare(
            "vertex_count_product",
            (1usize << inv.local_factors) * us.iter().product::<usize>(),
            cl.order(),
            "2^n prod |U(R_i)|",
        ),
        _ => Claim::skipped("vertex_count_product", "not built as a product"),
    });
    out.push(Claim::compare(
        "cl1_complete",
        true,
        cl1.order() == inv.units && cl1.is_complete(),
        "Cl1 complete on |U| vertices",
    ));
    let join_witness = cl.labels().iter().enumerate().find_map(|(i, a)| {
        cl.labels().iter().enumerate().find_map(|(j, b)| {
            (a.idempotent == zero && b.idempotent != zero && !cl.has_edge(i, j))
                .then(|| format!("{} and {} not adjacent", a.render(ring), b.render(ring)))
        })
    });
    out.push(
        Claim::compare("cl_join", true, join_witness.is_none(), "Cl = Cl1 v Cl2")
            .with_witness(join_witness),
    );
    out.push(Claim::compare(
        "cl_complete_iff_one_unit",
        inv.units == 1,
        cl.is_complete(),
        "Cl complete iff |U| = 1",
    ));
    let cl_dist = all_pairs_distances(&cl);
    out.push(Claim::compare(
        "cl_diameter",
        if inv.units == 1 { "1" } else { "2" },
        diameter_text(cl_dist.diameter()),
        "1 if complete, else 2",
    ));
    let cl2_diam = diameter_text(all_pairs_distances(&cl2).diameter());
    out.push(if inv.has_nontrivial_idempotents() && inv.units >= 2 {
        Claim::compare("cl2_diameter", "3", cl2_diam, "idempotents, |U| >= 2: 3")
    } else if !inv.has_nontrivial_idempotents() && inv.units >= 2 {
        Claim::compare(
            "cl2_diameter",
            "infinite",
            cl2_diam,
            "no idempotents: disconnected",
        )
    } else if inv.has_nontrivial_idempotents() {
        Claim::compare("cl2_diameter", "1", cl2_diam, "|U| = 1: complete")
    } else {
        Claim::skipped("cl2_diameter", "Cl2 is a single vertex")
    });

    // MMD characterizations.
    out.push(match MmdTheorem::applicable(ring, false) {
        Some(t) => mmd_claim("mmd_cl", ring, &cl, t),
        None => Claim::skipped("mmd_cl", "|U(R)| < 2"),
    });
    out.push(match MmdTheorem::applicable(ring, true) {
        Some(t) => mmd_claim("mmd_cl2", ring, &cl2, t),
        None => Claim::skipped(
            "mmd_cl2",
            if inv.has_nontrivial_idempotents() {
                "|U(R)| < 2"
            } else {
                "ring has no nontrivial idempotents"
            },
        ),
    });

    // SR-graph structure.
    let structure = verify_srg_structure(ring);
    out.push(structure_claim("srg_structure_cl", &structure.cl));
    out.push(structure_claim("srg_structure_cl2", &structure.cl2));
    out.push(match structure.cl_full_boundary {
        Some(full) if !cl.is_complete() => {
            Claim::compare("srg_full_boundary_cl", true, full, "V(Cl_SR) = V(Cl)")
        }
        _ => Claim::skipped("srg_full_boundary_cl", "Cl(R) is complete"),
    });
    out.push(match structure.cl2_full_boundary {
        Some(full) if inv.has_nontrivial_idempotents() => {
            Claim::compare("srg_full_boundary_cl2", true, full, "V(Cl2_SR) = V(Cl2)")
        }
        _ => Claim::skipped(
            "srg_full_boundary_cl2",
            "ring has no nontrivial idempotents",
        ),
    });
    out.push(match structure.g_connected {
        Some(c) => Claim::compare("g_connected", true, c, "G connected"),
        None => Claim::skipped("g_connected", "G + K_|U| structure does not apply"),
    });

    // Dimensions.
    let dim_cl = dimension(&cl, oracle_bound);
    let dim_cl2 = dimension(&cl2, oracle_bound);
    oracle_claims(
        &mut out,
        ring,
        &cl,
        &dim_cl,
        "oracle_equals_alpha_cl",
        "gallai_cl",
    );
    oracle_claims(
        &mut out,
        ring,
        &cl2,
        &dim_cl2,
        "oracle_equals_alpha_cl2",
        "gallai_cl2",
    );
    let cl_report = dim_cl.report.as_ref().expect("Cl(R) is connected");
    let sdim_cl = cl_report.ground_truth();
    let sdim_cl2 = dim_cl2.report.as_ref().map(DimensionReport::ground_truth);
    let beta_cl = cl_report.beta_srg;
    let beta_cl2 = dim_cl2.report.as_ref().map(|r| r.beta_srg);

    out.push(match beta_cl2 {
        Some(b) => Claim::from_prediction("beta_cl2_srg", predict_beta_cl2_srg(&inv), b),
        None => Claim::skipped("beta_cl2_srg", dim_cl2.reason.clone()),
    });
    out.push(match beta_cl2 {
        Some(b2) => {
            Claim::from_prediction("beta_cl_relation", predict_beta_relation(&inv, b2), beta_cl)
        }
        None => Claim::skipped("beta_cl_relation", dim_cl2.reason.clone()),
    });
    out.push(Claim::from_prediction(
        "beta_cl_no_idempotents",
        predict_beta_cl_no_idempotents(&inv),
        beta_cl,
    ));
    out.push(match sdim_cl2 {
        Some(s2) => {
            Claim::from_prediction("sdim_relation", predict_sdim_relation(&inv, s2), sdim_cl)
        }
        None => Claim::skipped("sdim_relation", dim_cl2.reason.clone()),
    });
    out.push(Claim::from_prediction(
        "sdim_no_idempotents",
        predict_sdim_no_idempotents(&inv),
        sdim_cl,
    ));
    out.push(if inv.is_local {
        Claim::from_prediction("sdim_local", predict_sdim_no_idempotents(&inv), sdim_cl)
    } else {
        Claim::skipped("sdim_local", "ring is not local")
    });
    out.push(Claim::from_prediction(
        "sdim_field",
        predict_sdim_field(&inv),
        sdim_cl,
    ));

    // Products of local rings.
    let listed = if spec.factors().len() >= 2 {
        factors_match_u2_list(spec)
    } else {
        inv.non_involutory_units == 2
    };
    let cl2_product = predict_sdim_cl2_product(&inv, listed);
    out.push(match sdim_cl2 {
        Some(s2) => Claim::from_prediction("sdim_cl2_product", cl2_product.clone(), s2),
        None => Claim::skipped("sdim_cl2_product", dim_cl2.reason.clone()),
    });
    out.push(Claim::from_prediction(
        "sdim_cl_product",
        predict_sdim_cl_product(&inv),
        sdim_cl,
    ));
    let chain = cl2_product.and_then(|p| predict_sdim_relation(&inv, p.value));
    out.push(Claim::from_prediction("sdim_cl_chain", chain, sdim_cl));
    match field_factor_orders(spec) {
        Some(orders) => {
            out.push(match sdim_cl2 {
                Some(s2) => Claim::from_prediction(
                    "sdim_cl2_reduced",
                    predict_sdim_cl2_reduced(&orders),
                    s2,
                ),
                None => Claim::skipped("sdim_cl2_reduced", dim_cl2.reason.clone()),
            });
            out.push(Claim::from_prediction(
                "sdim_cl_reduced",
                predict_sdim_cl_reduced(&orders),
                sdim_cl,
            ));
        }
        None => {
            out.push(Claim::skipped(
                "sdim_cl2_reduced",
                "not built as a product of fields",
            ));
            out.push(Claim::skipped(
                "sdim_cl_reduced",
                "not built as a product of fields",
            ));
        }
    }

    // Ring-level statements.
    out.push(match check_u2_lemma(ring) {
        Ok(c) => Claim::compare(
            "u2_lemma",
            c.factors_listed,
            c.two_non_involutory,
            "|U''| = 2 iff listed factors",
        ),
        Err(e) => Claim::skipped("u2_lemma", e.to_string()),
    });
    let props = ring.unit_group_propositions();
    out.push(
        Claim::compare(
            "unit_group_propositions",
            true,
            props.holds(),
            "cyclic 3/4 and elementary 2",
        )
        .with_witness(Some(format!("{props:?}"))),
    );
    out.push(Claim::compare(
        "idempotent_count",
        1usize << inv.local_factors,
        inv.idempotents,
        "|Id| = 2^n",
    ));
    out.push(Claim::compare(
        "orthogonal_family_size",
        inv.local_factors,
        inv.orthogonal_idempotents,
        "|Id_perp*| = n",
    ));
    let bound = 1usize
        .checked_shl(sdim_cl as u32)
        .map(|b| b.saturating_add(sdim_cl))
        .unwrap_or(usize::MAX);
    out.push(
        Claim::compare(
            "finiteness_bound",
            true,
            cl.order() <= bound,
            "|V(Cl)| <= 2^sdim + sdim",
        )
        .with_witness(Some(format!("|V| = {}, sdim = {sdim_cl}", cl.order()))),
    );
    Ok((inv, out))
}

/// Verifies one ring spec; construction errors are recorded in the report.
pub fn verify_ring(spec: &RingSpec, options: &VerifyOptions) -> VerificationReport {
    let name = spec.to_string();
    let result = build_ring_with(spec, &options.build)
        .map_err(|e| e.to_string())
        .and_then(|ring| claims_for(&ring, options.oracle_bound));
    match result {
        Ok((inv, mut claims)) => {
            for c in &mut claims {
                c.registered =
                    c.status == ClaimStatus::Mismatch && options.registry.covers(&name, c);
            }
            VerificationReport {
                ring: name,
                inventory: Some(inv),
                error: None,
                claims,
            }
        }
        Err(e) => VerificationReport {
            ring: name,
            inventory: None,
            error: Some(e),
            claims: Vec::new(),
        },
    }
}

/// Verifies rings concurrently; reports come back sorted by ring name.
pub fn run_verification(specs: &[RingSpec], options: &VerifyOptions) -> Vec<VerificationReport> {
    let work = || -> Vec<VerificationReport> {
        specs.par_iter().map(|s| verify_ring(s, options)).collect()
    };
    let mut reports = match options.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map(|pool| pool.install(work))
            .unwrap_or_else(|_| work()),
        None => work(),
    };
    reports.sort_by(|a, b| a.ring.cmp(&b.ring));
    reports
}
