//! Construction helpers: build a family and recheck a certificate with
//! kernel arithmetic only.

use perfect_cover::certificate::{Certificate, LevelStep};
use perfect_cover::{
    catalog, construct, ConstructOptions, Construction, DirectProduct, PermGroup, Permutation, Word,
};

pub fn family(names: &[&str]) -> Vec<(String, PermGroup)> {
    names
        .iter()
        .map(|n| (n.to_string(), catalog::get(n).unwrap().group()))
        .collect()
}

pub fn build(names: &[&str], d: usize, k: usize, seed: u64) -> Construction {
    let opts = ConstructOptions {
        seed,
        ..ConstructOptions::default()
    };
    construct(&family(names), d, k, &opts).unwrap()
}

pub fn perm(degree: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(degree, s).unwrap()
}

pub fn step(cert: &Certificate) -> &LevelStep {
    cert.root.step.as_deref().expect("nontrivial root level")
}

pub fn step_mut(cert: &mut Certificate) -> &mut LevelStep {
    cert.root
        .step
        .as_deref_mut()
        .expect("nontrivial root level")
}

pub fn product(fam: &[(String, PermGroup)]) -> DirectProduct {
    DirectProduct::new(fam.iter().map(|(_, g)| g.clone()).collect()).unwrap()
}

pub fn surjects(gamma: &PermGroup, fam: &[(String, PermGroup)]) -> bool {
    let mut offset = 0;
    fam.iter().all(|(_, g)| {
        let images = gamma
            .generators()
            .iter()
            .map(|x| x.restricted(offset, g.degree()))
            .collect();
        offset += g.degree();
        PermGroup::new(g.degree(), images).unwrap().order() == g.order()
    })
}

/// Smallest subgroup containing `gens` and normalized by `delta`.
pub fn delta_closure(degree: usize, gens: Vec<Permutation>, delta: &[Permutation]) -> PermGroup {
    let mut group = PermGroup::new(degree, gens.clone()).unwrap();
    let mut queue = gens;
    while let Some(x) = queue.pop() {
        for a in delta {
            let y = x.conjugate_by(a);
            if !group.contains(&y) {
                group = group.join_with(std::slice::from_ref(&y));
                queue.push(y);
            }
        }
    }
    group
}

/// The residue identity, word membership in `[F, F]`, `Q = [Q, Δ]`, `s_l ∈ T`,
/// perfectness and surjectivity, recomputed from the certificate.
pub fn recheck(names: &[&str], c: &Construction) {
    let fam = family(names);
    let cert = &c.certificate;
    let st = step(cert);
    let m = st.words.len();
    let words: Vec<Word> = st
        .words
        .iter()
        .map(|w| Word::parse(m, w).unwrap())
        .collect();
    assert!(words
        .iter()
        .all(|w| w.exponent_sums().iter().all(|&s| s == 0)));
    let prod = product(&fam);
    let mut delta = Vec::new();
    for i in 0..m {
        let parts: Vec<Permutation> = fam
            .iter()
            .enumerate()
            .map(|(j, (_, g))| perm(g.degree(), &st.lifts[i][j]))
            .collect();
        delta.push(prod.from_parts(&parts));
    }
    for (j, (_, g)) in fam.iter().enumerate() {
        let a: Vec<Permutation> = (0..m).map(|i| perm(g.degree(), &st.lifts[i][j])).collect();
        for i in 0..m {
            let lhs = a[i].compose(&words[i].evaluate(&a).unwrap().inverse());
            let k = perm(g.degree(), &st.k_residues[i][j]);
            let s = perm(g.degree(), &st.s_residues[i][j]);
            assert_eq!(lhs, k.compose(&s), "residue identity at i={i} j={j}");
        }
        assert_eq!(PermGroup::new(g.degree(), a).unwrap().order(), g.order());
    }
    let deg = prod.degree();
    let q = delta_closure(
        deg,
        st.q_generators.iter().map(|x| perm(deg, x)).collect(),
        &delta,
    );
    let q_elements = q.elements(1 << 16).unwrap();
    let comms = q_elements
        .iter()
        .flat_map(|x| delta.iter().map(move |a| Permutation::commutator(x, a)))
        .collect();
    assert!(
        delta_closure(deg, comms, &delta).same_group(&q),
        "Q = [Q, Δ]"
    );
    let t = PermGroup::new(deg, st.t_generators.iter().map(|x| perm(deg, x)).collect()).unwrap();
    for i in 0..m {
        let parts: Vec<Permutation> = fam
            .iter()
            .enumerate()
            .map(|(j, (_, g))| perm(g.degree(), &st.s_residues[i][j]))
            .collect();
        assert!(t.contains(&prod.from_parts(&parts)), "s_{i} ∈ T");
    }
    assert!(
        c.gamma.derived_subgroup().same_group(&c.gamma),
        "[Γ, Γ] = Γ"
    );
    assert!(surjects(&c.gamma, &fam));
}

/// Changes one q-coordinate of factor 0 so that the product of commutators moves.
pub fn perturb_q_coordinate(names: &[&str], cert: &Certificate) -> Certificate {
    let fam = family(names);
    let st = step(cert);
    let g = &fam[0].1;
    let module = &st.modules[0];
    let basis: Vec<Permutation> = module.basis.iter().map(|b| perm(g.degree(), b)).collect();
    let m = st.words.len();
    let a: Vec<Permutation> = (0..m).map(|l| perm(g.degree(), &st.lifts[l][0])).collect();
    let k_of = |coords: &[Vec<i64>]| {
        coords.iter().zip(&a).fold(g.identity(), |acc, (c, al)| {
            let q = c
                .iter()
                .zip(&basis)
                .fold(g.identity(), |x, (&e, b)| x.compose(&b.pow(e)));
            acc.compose(&Permutation::commutator(&q, al))
        })
    };
    for i in 0..m {
        let coords = &st.q_coordinates[i][0];
        let before = k_of(coords);
        for l in 0..coords.len() {
            for c in 0..coords[l].len() {
                let mut changed = coords.clone();
                changed[l][c] = (changed[l][c] + 1) % module.orders[c] as i64;
                if k_of(&changed) != before {
                    let mut bad = cert.clone();
                    step_mut(&mut bad).q_coordinates[i][0] = changed;
                    return bad;
                }
            }
        }
    }
    panic!("no q-coordinate changes the product")
}
