//! End-to-end constructions, re-checked from the certificate with kernel
//! arithmetic only, plus tampered certificates the verifier must reject.

mod common;

use common::construct::{
    build, family, perm, perturb_q_coordinate, recheck, step, step_mut, surjects,
};
use perfect_cover::certificate::Certificate;
use perfect_cover::structure::{is_in_y, StructureOptions};
use perfect_cover::{
    catalog, construct, verify_certificate, ConstructOptions, Permutation, VerifyOptions,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn trivial_family_gives_trivial_gamma() {
    let c = construct(&[], 2, 3, &ConstructOptions::default()).unwrap();
    assert!(c.gamma.is_trivial());
    assert!(c.certificate.root.step.is_none());
}

#[test]
fn level_one_families() {
    for names in [
        &["A5"][..],
        &["A5", "PSL27"],
        &["A5", "A6", "PSL27"],
        &["A5xA5"],
    ] {
        let c = build(names, 2, 1, 0);
        recheck(names, &c);
        assert!(verify_certificate(&c.certificate, &VerifyOptions::default()).valid());
    }
}

#[test]
fn level_two_families() {
    for names in [
        &["SL25"][..],
        &["2^4:A5"],
        &["SL25", "2^4:A5"],
        &["SL25", "2^4:A5", "A5", "PSL27"],
    ] {
        let c = build(names, 2, 2, 1);
        recheck(names, &c);
    }
}

#[test]
fn sl25_lifts_exactly() {
    let c = build(&["SL25"], 2, 2, 0);
    let st = step(&c.certificate);
    let id = Permutation::identity(24).to_string();
    assert!(st.k_residues.iter().flatten().all(|k| *k == id));
    assert!(st.s_residues.iter().flatten().all(|s| *s == id));
    assert!(
        st.q_generators
            .iter()
            .all(|q| *q == Permutation::identity(24).to_string())
            || st.q_generators.is_empty()
    );
    assert_eq!(c.gamma.order(), 120);
}

#[test]
fn mixed_family_q_lives_on_the_affine_factor() {
    let c = build(&["SL25", "2^4:A5"], 2, 2, 0);
    for q in &step(&c.certificate).q_generators {
        let x = perm(40, q);
        assert!(x.restricted(0, 24).is_identity());
    }
}

/// Seeded sub-families of up to three catalog groups from `Y(2, k)`.
#[test]
fn random_catalog_families_are_covered() {
    let opts = StructureOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for k in 1..=2 {
        let members: Vec<&str> = catalog::entries()
            .into_iter()
            .filter(|e| is_in_y(&e.group(), 2, k, &opts).unwrap().member)
            .map(|e| e.name)
            .collect();
        assert!(members.len() >= 4);
        for _ in 0..4 {
            let size = rng.gen_range(1..=3);
            let names: Vec<&str> = members.choose_multiple(&mut rng, size).copied().collect();
            let c = build(&names, 2, k, rng.gen());
            assert!(c.gamma.is_perfect(), "{names:?}");
            assert!(surjects(&c.gamma, &family(&names)), "{names:?}");
        }
    }
}

#[test]
fn rejects_members_outside_y() {
    let opts = ConstructOptions::default();
    assert!(construct(&family(&["A4"]), 2, 2, &opts).is_err());
    assert!(construct(&family(&["SL25"]), 2, 1, &opts).is_err());
    assert!(construct(
        &family(&["A5"]),
        2,
        1,
        &ConstructOptions { budget: 0, ..opts }
    )
    .is_err());
}

fn failing_step(cert: &Certificate) -> Option<&'static str> {
    verify_certificate(cert, &VerifyOptions::default())
        .failure()
        .map(|f| f.step)
}

#[test]
fn dropped_t_generator_is_caught() {
    let mut cert = build(&["A5"], 2, 1, 0).certificate;
    step_mut(&mut cert).t_generators.pop();
    assert_eq!(failing_step(&cert), Some("t_generators"));
    step_mut(&mut cert).t_generators.clear();
    assert_eq!(failing_step(&cert), Some("s_in_T"));
}

#[test]
fn non_commutator_word_is_caught() {
    let mut cert = build(&["SL25"], 2, 2, 0).certificate;
    step_mut(&mut cert).words[0] = "x1".into();
    assert_eq!(failing_step(&cert), Some("words_in_commutator_subgroup"));
}

#[test]
fn perturbed_q_coordinate_is_caught() {
    let names = ["2^4:A5"];
    let bad = perturb_q_coordinate(&names, &build(&names, 2, 2, 0).certificate);
    assert_eq!(failing_step(&bad), Some("q_decomposition"));
}

#[test]
fn version_mismatch_needs_force() {
    let mut cert = build(&["A5"], 2, 1, 0).certificate;
    cert.version = "perfect-cover/0.0.0".into();
    assert_eq!(failing_step(&cert), Some("version"));
    let forced = verify_certificate(
        &cert,
        &VerifyOptions {
            force: true,
            ..VerifyOptions::default()
        },
    );
    assert!(forced.valid());
}

#[test]
fn same_seed_same_bytes() {
    let a = build(&["SL25", "2^4:A5"], 2, 2, 7).certificate.to_json();
    let b = build(&["SL25", "2^4:A5"], 2, 2, 7).certificate.to_json();
    assert_eq!(a, b);
    let c = build(&["SL25", "2^4:A5"], 2, 2, 8).certificate;
    assert!(verify_certificate(&c, &VerifyOptions::default()).valid());
}

#[test]
fn json_roundtrip_preserves_validity() {
    let cert = build(&["A5", "PSL27"], 2, 1, 2).certificate;
    let back = Certificate::from_json(&cert.to_json()).unwrap();
    assert_eq!(back, cert);
    let first = verify_certificate(&back, &VerifyOptions::default());
    let second = verify_certificate(&back, &VerifyOptions::default());
    assert!(first.valid());
    assert_eq!(first.to_string(), second.to_string());
}
