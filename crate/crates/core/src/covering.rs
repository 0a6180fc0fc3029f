//! Conjugacy-class arithmetic in small simple groups: product sets, covering
//! numbers, the centralizer pigeonhole, conjugate-product factorizations and
//! semisimple covers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::product::DirectProduct;
use crate::structure::{is_nonabelian_simple, min_generators};

/// `{xy : x ∈ X, y ∈ Y}`, sorted.
pub fn product_set(x: &[Permutation], y: &[Permutation]) -> Vec<Permutation> {
    let mut out = BTreeSet::new();
    for a in x {
        for b in y {
            out.insert(a.compose(b));
        }
    }
    out.into_iter().collect()
}

/// Conjugacy class of `x` in `s`, sorted.
pub fn class_of(s: &PermGroup, x: &Permutation) -> Vec<Permutation> {
    class_with_conjugators(s, x).into_keys().collect()
}

/// Each member `c` of the class of `x`, with some `r` satisfying `x^r = c`.
fn class_with_conjugators(s: &PermGroup, x: &Permutation) -> BTreeMap<Permutation, Permutation> {
    let gens = s.essential_generators();
    let mut out = BTreeMap::new();
    out.insert(x.clone(), s.identity());
    let mut queue = vec![x.clone()];
    while let Some(c) = queue.pop() {
        let r = out[&c].clone();
        for g in &gens {
            let d = c.conjugate_by(g);
            if !out.contains_key(&d) {
                out.insert(d.clone(), r.compose(g));
                queue.push(d);
            }
        }
    }
    out
}

/// Product of the classes of the given elements.
pub fn class_product(s: &PermGroup, elements: &[Permutation]) -> Vec<Permutation> {
    let mut acc = vec![s.identity()];
    for m in elements {
        acc = product_set(&acc, &class_of(s, m));
    }
    acc
}

/// Exact covering data for a normal subset `X` of a simple group `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringCertificate {
    pub group_order: u128,
    pub set_size: usize,
    /// Least `e` with `X^e = S`.
    pub e: usize,
    /// `|X^i|` for `i = 1..=e`.
    pub power_sizes: Vec<usize>,
}

fn is_normal_set(s: &PermGroup, x: &[Permutation]) -> bool {
    let set: BTreeSet<&Permutation> = x.iter().collect();
    let gens = s.essential_generators();
    x.iter()
        .all(|a| s.contains(a) && gens.iter().all(|g| set.contains(&a.conjugate_by(g))))
}

pub fn covering_number(
    s: &PermGroup,
    x: &[Permutation],
    cap: usize,
) -> Result<CoveringCertificate> {
    if !is_nonabelian_simple(s, cap)? {
        return Err(Error::Precondition("group is not nonabelian simple".into()));
    }
    if !is_normal_set(s, x) {
        return Err(Error::Precondition(
            "set is not a union of conjugacy classes".into(),
        ));
    }
    if x.iter().all(|a| a.is_identity()) {
        return Err(Error::Precondition("set is trivial".into()));
    }
    let order = s.order();
    let mut power = x.to_vec();
    power.sort();
    power.dedup();
    let set_size = power.len();
    let mut sizes = vec![power.len()];
    while (power.len() as u128) < order {
        if sizes.len() as u128 > order {
            return Err(Error::Internal(
                "powers of a normal set never cover the group".into(),
            ));
        }
        power = product_set(&power, x);
        sizes.push(power.len());
    }
    let e = sizes.len();
    let cert = CoveringCertificate {
        group_order: order,
        set_size,
        e,
        power_sizes: sizes,
    };
    check_certificate(&cert)?;
    Ok(cert)
}

/// `X^e = S`, `X^(e−1) ≠ S`, and the counting bound `|X|^e ≥ |S|`.
pub fn check_certificate(c: &CoveringCertificate) -> Result<()> {
    if c.e == 0 || c.power_sizes.len() != c.e {
        return Err(Error::Internal("malformed covering certificate".into()));
    }
    if c.power_sizes[c.e - 1] as u128 != c.group_order {
        return Err(Error::Internal("X^e does not cover the group".into()));
    }
    if c.e >= 2 && c.power_sizes[c.e - 2] as u128 == c.group_order {
        return Err(Error::Internal("e is not minimal".into()));
    }
    if c.e == 1 && c.group_order == 1 {
        return Err(Error::Internal(
            "trivial group has no covering number".into(),
        ));
    }
    if BigUint::from(c.set_size).pow(c.e as u32) < BigUint::from(c.group_order) {
        return Err(Error::Internal(
            "counting bound |X|^e ≥ |S| violated".into(),
        ));
    }
    Ok(())
}

/// Index of a generator with least centralizer, and that centralizer's order.
/// Asserts `|C|^t ≤ |S|^(t−1)` for a generating `t`-tuple.
pub fn pick_small_centralizer_gen(
    s: &PermGroup,
    gens: &[Permutation],
    cap: usize,
) -> Result<(usize, u128)> {
    if PermGroup::new(s.degree(), gens.to_vec())?.order() != s.order() {
        return Err(Error::Precondition(
            "elements do not generate the group".into(),
        ));
    }
    let mut best: Option<(usize, u128)> = None;
    for (i, m) in gens.iter().enumerate() {
        let c = s.centralizer(m, cap)?.order();
        if best.is_none_or(|(_, b)| c < b) {
            best = Some((i, c));
        }
    }
    let (i, c) = best.ok_or_else(|| Error::Precondition("empty generating tuple".into()))?;
    let t = gens.len() as u32;
    if BigUint::from(c).pow(t) > BigUint::from(s.order()).pow(t - 1) {
        return Err(Error::Internal(format!(
            "centralizer order {c} exceeds |S|^({}/{t}) with |S| = {}",
            t - 1,
            s.order()
        )));
    }
    Ok((i, c))
}

/// Layered table of partial products `∏ m_j^{r}` with back-pointers; layer
/// `t·g + j` holds everything reachable after `j` factors of round `t`.
#[derive(Clone, Debug)]
pub struct ConjugateProductTable {
    gens: Vec<Permutation>,
    rounds: usize,
    classes: Vec<BTreeMap<Permutation, Permutation>>,
    /// For each layer after the first: element → (previous element, class member).
    layers: Vec<BTreeMap<Permutation, (Permutation, Permutation)>>,
}

impl ConjugateProductTable {
    pub fn new(s: &PermGroup, gens: &[Permutation], rounds: usize) -> Result<Self> {
        for m in gens {
            if !s.is_member(m)? {
                return Err(Error::Precondition(format!("{m} is not in the group")));
            }
        }
        let classes: Vec<_> = gens.iter().map(|m| class_with_conjugators(s, m)).collect();
        let mut layers: Vec<BTreeMap<Permutation, (Permutation, Permutation)>> = Vec::new();
        let mut current: Vec<Permutation> = vec![s.identity()];
        for _ in 0..rounds {
            for class in &classes {
                let mut next = BTreeMap::new();
                for x in &current {
                    for c in class.keys() {
                        next.entry(x.compose(c))
                            .or_insert_with(|| (x.clone(), c.clone()));
                    }
                }
                current = next.keys().cloned().collect();
                layers.push(next);
            }
        }
        Ok(ConjugateProductTable {
            gens: gens.to_vec(),
            rounds,
            classes,
            layers,
        })
    }

    /// Whether the last layer is the whole group.
    pub fn covers(&self, order: u128) -> bool {
        match self.layers.last() {
            Some(l) => l.len() as u128 == order,
            None => order == 1,
        }
    }

    /// Conjugators `r[t][j]` with `target = ∏_t ∏_j m_j^{r[t][j]}`.
    pub fn decompose(&self, target: &Permutation) -> Result<Vec<Vec<Permutation>>> {
        let g = self.gens.len();
        let id = Permutation::identity(target.degree());
        if g == 0 || self.rounds == 0 {
            return if target.is_identity() {
                Ok(vec![Vec::new(); self.rounds])
            } else {
                Err(Error::Precondition(
                    "empty product cannot reach a nontrivial target".into(),
                ))
            };
        }
        let mut r = vec![vec![id.clone(); g]; self.rounds];
        let mut x = target.clone();
        for layer in (0..self.layers.len()).rev() {
            let (prev, c) = self.layers[layer].get(&x).ok_or_else(|| {
                Error::Precondition(format!(
                    "{target} is not a product of {} rounds of conjugates",
                    self.rounds
                ))
            })?;
            let (t, j) = (layer / g, layer % g);
            r[t][j] = self.classes[j][c].clone();
            x = prev.clone();
        }
        let check = evaluate_conjugate_product(&self.gens, &r, &id);
        assert_eq!(
            &check, target,
            "conjugate factorization does not evaluate to its target"
        );
        Ok(r)
    }
}

/// `∏_t ∏_j m_j^{r[t][j]}`.
pub fn evaluate_conjugate_product(
    gens: &[Permutation],
    r: &[Vec<Permutation>],
    id: &Permutation,
) -> Permutation {
    let mut acc = id.clone();
    for round in r {
        for (m, c) in gens.iter().zip(round) {
            acc = acc.compose(&m.conjugate_by(c));
        }
    }
    acc
}

pub fn decompose_conjugate_product(
    s: &PermGroup,
    target: &Permutation,
    gens: &[Permutation],
    e: usize,
) -> Result<Vec<Vec<Permutation>>> {
    ConjugateProductTable::new(s, gens, e)?.decompose(target)
}

/// Diagonal generators of a perfect subgroup of `∏ M_i` projecting onto
/// every simple factor.
#[derive(Clone, Debug)]
pub struct SemisimpleCover {
    pub product: DirectProduct,
    /// `tuples[i][j]` is the `j`-th generator's component in factor `i`.
    pub tuples: Vec<Vec<Permutation>>,
    pub gens: Vec<Permutation>,
    pub group: PermGroup,
    pub full: bool,
}

const COVER_ATTEMPTS: usize = 50;

fn random_generating_tuple(
    m: &PermGroup,
    size: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Permutation>> {
    for _ in 0..1000 {
        let tuple: Vec<Permutation> = (0..size)
            .map(|_| loop {
                let x = m.random_element(rng);
                if !x.is_identity() {
                    break x;
                }
            })
            .collect();
        if PermGroup::new(m.degree(), tuple.clone())?.order() == m.order() {
            return Ok(tuple);
        }
    }
    Err(Error::Search(format!("no generating {size}-tuple found")))
}

pub fn semisimple_cover(
    factors: &[PermGroup],
    budget: usize,
    seed: u64,
    cap: usize,
) -> Result<SemisimpleCover> {
    if factors.is_empty() {
        return Err(Error::Precondition("no factors to cover".into()));
    }
    for m in factors {
        if !is_nonabelian_simple(m, cap)? {
            return Err(Error::Precondition(
                "cover factor is not nonabelian simple".into(),
            ));
        }
        if !min_generators(m, budget, seed, cap)?.at_most(budget) {
            return Err(Error::Precondition(format!(
                "budget {budget} is too small to generate a factor of order {}",
                m.order()
            )));
        }
    }
    let product = DirectProduct::new(factors.to_vec())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = None;
    for _ in 0..COVER_ATTEMPTS {
        let tuples = factors
            .iter()
            .map(|m| random_generating_tuple(m, budget, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        let gens: Vec<Permutation> = (0..budget)
            .map(|j| {
                let parts: Vec<Permutation> = tuples.iter().map(|t| t[j].clone()).collect();
                product.from_parts(&parts)
            })
            .collect();
        let group = product.subgroup(&gens);
        let full = group.order() == product.full_order();
        let cover = SemisimpleCover {
            product: product.clone(),
            tuples,
            gens,
            group,
            full,
        };
        if full {
            return check_cover(cover, factors);
        }
        last = Some(cover);
    }
    check_cover(last.expect("at least one attempt"), factors)
}

fn check_cover(cover: SemisimpleCover, factors: &[PermGroup]) -> Result<SemisimpleCover> {
    for (i, m) in factors.iter().enumerate() {
        if !cover.product.projects_onto(i, &cover.group)
            || m.order() != cover.product.projection_of(i, &cover.group).order()
        {
            return Err(Error::Internal(format!(
                "cover does not project onto factor {i}"
            )));
        }
    }
    if !cover.group.is_perfect() {
        return Err(Error::Internal("cover is not perfect".into()));
    }
    Ok(cover)
}
