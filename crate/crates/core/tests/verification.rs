use cleansdim_core::ring::{build_ring, catalog::suite, RingSpec};
use cleansdim_core::theory::registry::Registry;
use cleansdim_core::theory::report::{to_json, write_csv, Summary};
use cleansdim_core::theory::{run_verification, ClaimStatus, Inventory, VerifyOptions};

fn names(
    ring: &cleansdim_core::ring::FiniteRing,
    xs: &[cleansdim_core::ring::RingElement],
) -> Vec<String> {
    xs.iter().map(|&x| ring.name(x).to_string()).collect()
}

#[test]
fn z6_inventory() {
    let r = build_ring(&"Z6".parse().unwrap()).unwrap();
    assert_eq!(r.order(), 6);
    assert_eq!(names(&r, r.idempotents()), ["0", "1", "3", "4"]);
    assert_eq!(names(&r, r.units()), ["1", "5"]);
    assert_eq!(r.local_factor_count().unwrap(), 2);
}

#[test]
fn local_ring_with_two_non_involutory_units() {
    let r = build_ring(&"local8/Z4x_2x_x2m2".parse().unwrap()).unwrap();
    let inv = Inventory::of(&r).unwrap();
    assert_eq!((inv.order, inv.units, inv.non_involutory_units), (8, 4, 2));
    assert!(inv.is_local);
}

#[test]
fn order_one_rejected() {
    assert!(build_ring(&"Z1".parse::<RingSpec>().unwrap()).is_err());
}

#[test]
fn local_suite_all_match() {
    let reports = run_verification(&suite("table1").unwrap(), &VerifyOptions::default());
    assert_eq!(reports.len(), 13);
    for rep in &reports {
        assert!(rep.error.is_none(), "{}", rep.ring);
        for c in &rep.claims {
            assert_ne!(c.status, ClaimStatus::Mismatch, "{} {}", rep.ring, c.id);
        }
    }
}

#[test]
fn product_suite_only_registered_mismatches() {
    let opts = VerifyOptions::default();
    let reports = run_verification(&suite("products-small").unwrap(), &opts);
    let summary = Summary::of(&reports);
    assert!(summary.passed(), "{summary:?}");
    assert_eq!(summary.registered, 7);

    // every registry entry is exercised by the battery
    let registry = Registry::builtin();
    for e in &registry.entries {
        let rep = reports.iter().find(|r| r.ring == e.ring).expect(&e.ring);
        let c = rep.claim(&e.claim).unwrap();
        assert!(
            c.registered && c.witness.is_some(),
            "{} {}",
            e.ring,
            e.claim
        );
    }
}

#[test]
fn reports_sorted_and_deterministic() {
    let specs: Vec<RingSpec> = ["Z5", "Z2 x Z3", "GF(4)"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let single = VerifyOptions {
        jobs: Some(1),
        ..VerifyOptions::default()
    };
    let many = VerifyOptions {
        jobs: Some(4),
        ..VerifyOptions::default()
    };
    let a = run_verification(&specs, &single);
    let b = run_verification(&specs, &many);
    let rings: Vec<_> = a.iter().map(|r| r.ring.as_str()).collect();
    assert_eq!(rings, ["GF(4)", "Z2 x Z3", "Z5"]);
    assert_eq!(to_json(&a).unwrap(), to_json(&b).unwrap());
}

#[test]
fn csv_columns() {
    let reports = run_verification(&["Z3".parse().unwrap()], &VerifyOptions::default());
    let mut buf = Vec::new();
    write_csv(&reports, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("ring,claim_id,predicted,computed,status")
    );
    let row = lines.find(|l| l.contains(",sdim_field,")).unwrap();
    assert_eq!(row, "Z3,sdim_field,2,2,MATCH");
}

#[test]
fn registry_requires_exact_values() {
    let reg = Registry::from_json(
        r#"[{"claim":"sdim_cl_product","ring":"Z2 x Z3","predicted":3,"computed":5,"reason":"x"}]"#,
    )
    .unwrap();
    let opts = VerifyOptions {
        registry: reg,
        ..VerifyOptions::default()
    };
    let rep = &run_verification(&["Z2 x Z3".parse().unwrap()], &opts)[0];
    let c = rep.claim("sdim_cl_product").unwrap();
    assert_eq!(c.status, ClaimStatus::Mismatch);
    assert!(!c.registered);
}
