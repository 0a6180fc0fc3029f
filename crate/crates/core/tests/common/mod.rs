//! Brute-force oracles. Nothing here touches stabilizer chains: every set is
//! built by closing explicit element lists under multiplication.

#![allow(dead_code)]

pub mod construct;

use std::collections::{BTreeSet, VecDeque};

use perfect_cover::{catalog, PermGroup, Permutation, DEFAULT_CAP};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Set = BTreeSet<Permutation>;

pub fn p(degree: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(degree, s).unwrap()
}

/// Subgroup generated by `gens`, by breadth-first right multiplication.
pub fn closure(degree: usize, gens: &[Permutation]) -> Set {
    let id = Permutation::identity(degree);
    let mut seen = Set::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Subgroup generated by a set, adding one missing element at a time so the
/// generator list stays short.
pub fn closure_of_set(degree: usize, xs: &Set) -> Set {
    let mut gens = Vec::new();
    let mut cur = Set::from([Permutation::identity(degree)]);
    for x in xs {
        if !cur.contains(x) {
            gens.push(x.clone());
            cur = closure(degree, &gens);
        }
    }
    cur
}

pub fn elements(g: &PermGroup) -> Set {
    closure(g.degree(), g.generators())
}

pub fn to_vec(s: &Set) -> Vec<Permutation> {
    s.iter().cloned().collect()
}

pub fn group_of(degree: usize, s: &Set) -> PermGroup {
    PermGroup::new(degree, to_vec(s)).unwrap()
}

pub fn same(g: &PermGroup, s: &Set) -> bool {
    g.order() == s.len() as u128 && s.iter().all(|x| g.contains(x))
}

pub fn class(all: &Set, x: &Permutation) -> Set {
    all.iter().map(|g| x.conjugate_by(g)).collect()
}

pub fn classes(all: &Set) -> Vec<Set> {
    let mut out: Vec<Set> = Vec::new();
    for x in all {
        if !out.iter().any(|c| c.contains(x)) {
            out.push(class(all, x));
        }
    }
    out
}

pub fn commutator_closure(degree: usize, xs: &Set, ys: &Set) -> Set {
    let comms: Set = xs
        .iter()
        .flat_map(|x| ys.iter().map(move |y| Permutation::commutator(x, y)))
        .collect();
    closure_of_set(degree, &comms)
}

/// Every normal subgroup: normal closures of classes, then joins to a fixpoint.
pub fn normal_subgroups(degree: usize, all: &Set) -> Vec<Set> {
    let mut subs: Vec<Set> = Vec::new();
    for c in classes(all) {
        let n = closure_of_set(degree, &c);
        if !subs.contains(&n) {
            subs.push(n);
        }
    }
    loop {
        let mut grew = false;
        let snapshot = subs.clone();
        for a in &snapshot {
            for b in &snapshot {
                if a.is_subset(b) || b.is_subset(a) {
                    continue;
                }
                let j = closure_of_set(degree, &a.union(b).cloned().collect());
                if !subs.contains(&j) {
                    subs.push(j);
                    grew = true;
                }
            }
        }
        if !grew {
            subs.sort_by_key(|s| s.len());
            return subs;
        }
    }
}

pub fn is_simple_nonabelian(degree: usize, all: &Set) -> bool {
    all.len() > 1
        && normal_subgroups(degree, all).len() == 2
        && commutator_closure(degree, all, all).len() == all.len()
}

/// `[G, G] ∩ ⋂ N` over maximal normal `N` with nonabelian simple quotient.
pub fn star(degree: usize, all: &Set) -> Set {
    let derived = commutator_closure(degree, all, all);
    let normals = normal_subgroups(degree, all);
    let mut result = derived.clone();
    for n in &normals {
        if n.len() == all.len() {
            continue;
        }
        let maximal = !normals
            .iter()
            .any(|m| m.len() > n.len() && m.len() < all.len() && n.is_subset(m));
        let abelian_quotient = derived.is_subset(n);
        if maximal && !abelian_quotient {
            result = result.intersection(n).cloned().collect();
        }
    }
    result
}

pub fn star_orders(degree: usize, all: &Set) -> Vec<usize> {
    let mut orders = vec![all.len()];
    let mut cur = all.clone();
    while cur.len() > 1 {
        let next = star(degree, &cur);
        if next.len() == cur.len() {
            break;
        }
        orders.push(next.len());
        cur = next;
    }
    orders
}

pub fn product_set(xs: &[Permutation], ys: &[Permutation]) -> Set {
    xs.iter()
        .flat_map(|x| ys.iter().map(move |y| x.compose(y)))
        .collect()
}

/// Catalog groups small enough for the brute-force oracles.
pub fn small_catalog() -> Vec<(&'static str, PermGroup)> {
    catalog::entries()
        .into_iter()
        .filter(|e| e.order <= 4000)
        .map(|e| (e.name, e.group()))
        .collect()
}

pub fn simple_catalog() -> Vec<(&'static str, PermGroup)> {
    ["A5", "PSL27", "A6"]
        .into_iter()
        .map(|n| (n, catalog::get(n).unwrap().group()))
        .collect()
}

/// Smallest subgroup containing `seeds` and closed under conjugation by `gens`.
pub fn conjugation_closure(degree: usize, seeds: &Set, gens: &[Permutation]) -> Set {
    let mut cur = closure_of_set(degree, seeds);
    loop {
        let conj: Set = cur
            .iter()
            .flat_map(|x| gens.iter().map(move |g| x.conjugate_by(g)))
            .collect();
        if conj.is_subset(&cur) {
            return cur;
        }
        cur = closure_of_set(degree, &cur.union(&conj).cloned().collect());
    }
}

/// Every catalog pair `(G, A)` with `A` abelian normal and `|A| ≤ 2^12`.
pub fn module_pairs() -> Vec<(&'static str, PermGroup, PermGroup)> {
    let mut out = Vec::new();
    for e in catalog::entries() {
        let g = e.group();
        for a in perfect_cover::structure::normal_subgroups(&g, DEFAULT_CAP).unwrap() {
            if a.is_abelian() && a.order() <= 1 << 12 {
                out.push((e.name, g.clone(), a));
            }
        }
    }
    out
}

/// A second generating set: random elements until they generate, plus one spare.
pub fn other_generators(g: &PermGroup, seed: u64) -> Vec<Permutation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = Vec::new();
    while PermGroup::new(g.degree(), gens.clone()).unwrap().order() != g.order() {
        gens.push(g.random_element(&mut rng));
    }
    gens.push(g.random_element(&mut rng));
    gens
}

/// A random `(G, N, reps)` with `⟨reps, N⟩ = G`, reps perturbed inside their cosets.
pub fn lifting_instance(rng: &mut ChaCha8Rng) -> (PermGroup, PermGroup, Vec<Permutation>) {
    let names = ["S3", "A4", "A5", "SL25", "PSL27", "2^4:A5", "A5xA5"];
    let g = catalog::get(names.choose(rng).unwrap()).unwrap().group();
    let normals = perfect_cover::structure::normal_subgroups(&g, DEFAULT_CAP).unwrap();
    let n = normals.choose(rng).unwrap().clone();
    let k = rng.gen_range(2..=3);
    loop {
        let xs: Vec<Permutation> = (0..k).map(|_| g.random_element(rng)).collect();
        if n.join_with(&xs).order() == g.order() {
            let reps = xs
                .iter()
                .map(|x| x.compose(&n.random_element(rng)))
                .collect();
            return (g, n, reps);
        }
    }
}
