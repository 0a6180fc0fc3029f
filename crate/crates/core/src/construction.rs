//! The inductive construction: from a finite family `G_1..G_n` of perfect
//! `d`-generated groups of level at most `k`, a perfect subgroup
//! `Γ ≤ ∏ G_j` projecting onto every `G_j`, with a certificate.
//!
//! Each level splits `W_j = (G_j)_{k−1} = A_j × S_j`, recurses on the
//! quotients `G_j/W_j`, lifts the marked generators of the recursive `Γ'`
//! and closes the gap with an abelian part `Q ≤ ∏ A_j` and a semisimple
//! part `T ≤ ∏ S_j`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::certificate::{
    Certificate, CoverData, FactorData, GroupData, LevelCert, LevelStep, ModuleData, FORMAT_VERSION,
};
use crate::covering::{
    class_product, covering_number, pick_small_centralizer_gen, semisimple_cover,
    ConjugateProductTable,
};
use crate::error::{Error, Result};
use crate::gmodule::GModule;
use crate::group::{conjugation_closure, PermGroup, DEFAULT_CAP};
use crate::lifting::{gaschutz_lift, WordSearch};
use crate::perm::Permutation;
use crate::product::DirectProduct;
use crate::quotient::{quotient_by_normal, Quotient};
use crate::structure::{
    is_in_y, level_of, simple_factors, split_star_trivial, star_terms, Level, StructureOptions,
};
use crate::verify::{verify_certificate, VerifyOptions};
use crate::word::Word;

pub const DEFAULT_BUDGET: usize = 61;

#[derive(Clone, Debug)]
pub struct ConstructOptions {
    pub seed: u64,
    /// Number of generators of the semisimple cover.
    pub budget: usize,
    pub cap: usize,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions {
            seed: 0,
            budget: DEFAULT_BUDGET,
            cap: DEFAULT_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub certificate: Certificate,
    pub gamma: PermGroup,
}

/// splitmix64 finalizer, chained over a path of tags.
pub fn derive_seed(seed: u64, path: &[u64]) -> u64 {
    let mut x = seed;
    for &t in path {
        x = x.wrapping_add(0x9e37_79b9_7f4a_7c15 ^ t.wrapping_mul(0xbf58_476d_1ce4_e5b9));
        let mut z = x;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        x = z ^ (z >> 31);
    }
    x
}

const TAG_GENERAL: u64 = 1;
const TAG_MARKED: u64 = 2;
const TAG_LIFT: u64 = 3;
const TAG_COVER: u64 = 4;

pub fn construct(
    family: &[(String, PermGroup)],
    d: usize,
    k: usize,
    opts: &ConstructOptions,
) -> Result<Construction> {
    if opts.budget == 0 {
        return Err(Error::Input("budget must be positive".into()));
    }
    let sopts = StructureOptions {
        max_depth: k + 1,
        cap: opts.cap,
        generator_bound: d.max(1),
        seed: derive_seed(opts.seed, &[TAG_GENERAL]),
    };
    for (name, g) in family {
        let check = is_in_y(g, d, k, &sopts)?;
        if !check.member {
            return Err(Error::Precondition(format!(
                "{name} is not in Y({d},{k}): {}",
                check.reason
            )));
        }
    }
    let built = build_level(family, d, k, opts)?;
    let mut certificate = Certificate {
        version: FORMAT_VERSION.to_string(),
        seed: opts.seed,
        d,
        k,
        budget: opts.budget,
        root: built.cert,
        verification: Vec::new(),
    };
    let report = verify_certificate(
        &certificate,
        &VerifyOptions {
            force: false,
            cap: opts.cap,
        },
    );
    if let Some(f) = report.failure() {
        return Err(Error::Internal(format!(
            "constructed certificate fails verification: {f}"
        )));
    }
    certificate.verification = report.steps.iter().map(|s| s.to_string()).collect();
    Ok(Construction {
        certificate,
        gamma: built.gamma,
    })
}

struct Built {
    cert: LevelCert,
    gamma: PermGroup,
}

fn family_data(family: &[(String, PermGroup)]) -> Vec<GroupData> {
    family
        .iter()
        .map(|(n, g)| GroupData::from_group(n, g))
        .collect()
}

fn product_degree(family: &[(String, PermGroup)]) -> usize {
    family.iter().map(|(_, g)| g.degree()).sum::<usize>().max(1)
}

/// `W = (G)_{k−1}`, its splitting `A × S`, `B = [A, G]`, and `G/W`.
#[derive(Clone, Debug)]
pub struct LevelSplit {
    pub w: PermGroup,
    pub a: PermGroup,
    pub s: PermGroup,
    pub b: PermGroup,
    pub quotient: Quotient,
}

pub fn split_levels(g: &PermGroup, k: usize, cap: usize) -> Result<LevelSplit> {
    if k == 0 {
        return Err(Error::Precondition("split needs k ≥ 1".into()));
    }
    let terms = star_terms(g, k, cap)?;
    let w = terms
        .get(k - 1)
        .cloned()
        .unwrap_or_else(|| PermGroup::trivial(g.degree()));
    let (a, s) = split_star_trivial(&w, cap)?;
    let b = g.commutator_subgroup(&a, g)?;
    if !b.is_subgroup_of(&a) {
        return Err(Error::Internal("[A, G] is not inside A".into()));
    }
    let quotient = quotient_by_normal(g, &w, cap)?;
    match level_of(&quotient.group, k, cap)? {
        Level::Finite(l) if l < k => {}
        other => {
            return Err(Error::Precondition(format!(
                "quotient by W has level {other}, expected at most {}",
                k - 1
            )))
        }
    }
    Ok(LevelSplit {
        w,
        a,
        s,
        b,
        quotient,
    })
}

/// A small generating tuple of `gamma`, padded to at least `d` entries by
/// repeating the last element.
fn choose_marked(gamma: &PermGroup, d: usize, seed: u64) -> Vec<Permutation> {
    let m = d.max(1);
    if gamma.is_trivial() {
        return vec![gamma.identity(); m];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tuple = None;
    'search: for t in 2..=m.max(4) {
        for _ in 0..200 {
            let cand: Vec<Permutation> = (0..t).map(|_| gamma.random_element(&mut rng)).collect();
            if PermGroup::new(gamma.degree(), cand.clone())
                .unwrap()
                .order()
                == gamma.order()
            {
                tuple = Some(cand);
                break 'search;
            }
        }
    }
    let mut tuple = tuple.unwrap_or_else(|| gamma.essential_generators());
    while tuple.len() < m {
        tuple.push(tuple.last().unwrap().clone());
    }
    tuple
}

/// `r = k·s` with `k ∈ A`, `s ∈ S`, for `r ∈ A × S`.
fn split_residue(
    r: &Permutation,
    a: &PermGroup,
    s: &PermGroup,
    cap: usize,
) -> Result<(Permutation, Permutation)> {
    for x in a.elements(cap)? {
        let y = x.inverse().compose(r);
        if s.contains(&y) {
            return Ok((x, y));
        }
    }
    Err(Error::Internal(format!("residue {r} is not in A × S")))
}

fn residue(a: &[Permutation], w: &Word, i: usize) -> Result<Permutation> {
    Ok(a[i].compose(&w.evaluate(a)?.inverse()))
}

/// Components of `s ∈ M_1 × … × M_r` (pairwise commuting factors).
fn factor_components(
    s: &Permutation,
    factors: &[&PermGroup],
    cap: usize,
) -> Result<Vec<Permutation>> {
    let degree = s.degree();
    let mut out = Vec::with_capacity(factors.len());
    for (i, m) in factors.iter().enumerate() {
        let others: Vec<Permutation> = factors
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != i)
            .flat_map(|(_, f)| f.essential_generators())
            .collect();
        let rest = PermGroup::new(degree, others)?;
        let x = m
            .elements(cap)?
            .into_iter()
            .find(|x| rest.contains(&x.inverse().compose(s)))
            .ok_or_else(|| {
                Error::Internal(format!("{s} is not in the product of the simple factors"))
            })?;
        out.push(x);
    }
    let prod = out
        .iter()
        .fold(Permutation::identity(degree), |acc, x| acc.compose(x));
    if prod != *s {
        return Err(Error::Internal(
            "simple factor components do not multiply back".into(),
        ));
    }
    Ok(out)
}

fn strings(v: &[Permutation]) -> Vec<String> {
    v.iter().map(|p| p.to_string()).collect()
}

fn build_level(
    family: &[(String, PermGroup)],
    d: usize,
    k: usize,
    opts: &ConstructOptions,
) -> Result<Built> {
    let degree = product_degree(family);
    if k == 0 || family.is_empty() {
        if family.iter().any(|(_, g)| !g.is_trivial()) {
            return Err(Error::Precondition(
                "level 0 admits only trivial groups".into(),
            ));
        }
        return Ok(Built {
            cert: LevelCert {
                k,
                family: family_data(family),
                step: None,
            },
            gamma: PermGroup::trivial(degree),
        });
    }
    let n = family.len();
    let cap = opts.cap;
    let seed = |tag: u64, j: usize| derive_seed(opts.seed, &[k as u64, tag, j as u64]);
    let groups: Vec<&PermGroup> = family.iter().map(|(_, g)| g).collect();
    let product = DirectProduct::new(groups.iter().map(|g| (*g).clone()).collect())?;

    let splits = groups
        .iter()
        .map(|g| split_levels(g, k, cap))
        .collect::<Result<Vec<_>>>()?;
    let quotient_family: Vec<(String, PermGroup)> = family
        .iter()
        .zip(&splits)
        .map(|((name, _), sp)| (format!("{name}/W"), sp.quotient.group.clone()))
        .collect();
    let sub = build_level(&quotient_family, d, k - 1, opts)?;

    // Marked generators of Γ' and their commutator words.
    let marked = choose_marked(&sub.gamma, d, seed(TAG_MARKED, 0));
    let m = marked.len();
    let search = WordSearch::exhaustive(&sub.gamma, &marked)?;
    let words = marked
        .iter()
        .map(|g| search.word_for(g))
        .collect::<Result<Vec<_>>>()?;

    let mut sub_offsets = Vec::with_capacity(n);
    let mut off = 0;
    for (_, q) in &quotient_family {
        sub_offsets.push(off);
        off += q.degree();
    }

    // Aligned lifts, per factor.
    let mut lifts = vec![Vec::with_capacity(n); m];
    let mut k_res = vec![Vec::with_capacity(n); m];
    let mut s_res = vec![Vec::with_capacity(n); m];
    for j in 0..n {
        let sp = &splits[j];
        let qdeg = sp.quotient.group.degree();
        let mut a: Vec<Permutation> = marked
            .iter()
            .map(|g| {
                let target = g.restricted(sub_offsets[j], qdeg);
                sp.quotient
                    .map
                    .preimage(&target)
                    .ok_or_else(|| Error::Internal("quotient image has no preimage".into()))
            })
            .collect::<Result<_>>()?;
        for i in 0..m {
            let r = residue(&a, &words[i], i)?;
            let (kk, _) = split_residue(&r, &sp.a, &sp.s, cap)?;
            a[i] = a[i].compose(&kk.inverse());
        }
        let bs = sp.b.join_with(&sp.s.essential_generators());
        let a = gaschutz_lift(groups[j], &bs, &a, seed(TAG_LIFT, j), cap)?;
        for i in 0..m {
            let r = residue(&a, &words[i], i)?;
            let (kk, ss) = split_residue(&r, &sp.a, &sp.s, cap)?;
            if !sp.b.contains(&kk) {
                return Err(Error::Internal(format!(
                    "residue {kk} of lift {i} is not in B"
                )));
            }
            lifts[i].push(a[i].clone());
            k_res[i].push(kk);
            s_res[i].push(ss);
        }
    }
    let delta: Vec<Permutation> = lifts.iter().map(|a| product.from_parts(a)).collect();

    // Q: solve k_{i,j} = ∏_l [q_{i,j,l}, a_{l,j}] in each A_j.
    let mut modules = Vec::with_capacity(n);
    let mut q_coords = vec![vec![Vec::new(); n]; m];
    let identities: Vec<Permutation> = groups.iter().map(|g| g.identity()).collect();
    let mut q_perms = vec![vec![identities; m]; m];
    for j in 0..n {
        let sp = &splits[j];
        let acting: Vec<Permutation> = (0..m).map(|i| lifts[i][j].clone()).collect();
        let module = GModule::new(groups[j], &sp.a, &acting, cap)?;
        modules.push(ModuleData {
            basis: strings(module.basis()),
            orders: module.orders().to_vec(),
        });
        for i in 0..m {
            let qs = module.solve_commutator_decomposition(&k_res[i][j])?;
            q_coords[i][j] = qs
                .iter()
                .map(|q| module.encode(q))
                .collect::<Result<Vec<_>>>()?;
            for (l, q) in qs.into_iter().enumerate() {
                q_perms[i][l][j] = q;
            }
        }
    }
    let bold_q: Vec<Vec<Permutation>> = q_perms
        .iter()
        .map(|row| row.iter().map(|parts| product.from_parts(parts)).collect())
        .collect();
    let mut q_gens = Vec::with_capacity(m * m * m);
    for row in &bold_q {
        for q in row {
            for a in &delta {
                q_gens.push(Permutation::commutator(q, a));
            }
        }
    }
    let q_group = conjugation_closure(product.degree(), &q_gens, &delta);
    for i in 0..m {
        let kk = product.from_parts(&k_res[i]);
        if !q_group.contains(&kk) {
            return Err(Error::Internal(format!("k_{} is not in Q", i + 1)));
        }
    }
    let q_seeds: Vec<Permutation> = q_group
        .essential_generators()
        .iter()
        .flat_map(|q| delta.iter().map(move |a| Permutation::commutator(q, a)))
        .collect();
    if conjugation_closure(product.degree(), &q_seeds, &delta).order() != q_group.order() {
        return Err(Error::Internal("Q ≠ [Q, Δ]".into()));
    }

    // T: conjugates of the semisimple cover hitting every s_l.
    let mut factor_list: Vec<(usize, PermGroup)> = Vec::new();
    for (j, sp) in splits.iter().enumerate() {
        for f in simple_factors(&sp.s, cap)? {
            factor_list.push((j, f));
        }
    }
    let (cover_data, t_gens) = if factor_list.is_empty() {
        (None, Vec::new())
    } else {
        build_t(
            &factor_list,
            &s_res,
            &product,
            n,
            m,
            opts,
            seed(TAG_COVER, 0),
        )?
    };
    let t_group = PermGroup::new(product.degree(), t_gens.clone())?;
    for i in 0..m {
        if !t_group.contains(&product.from_parts(&s_res[i])) {
            return Err(Error::Internal(format!("s_{} is not in T", i + 1)));
        }
    }
    if !t_group.is_perfect() {
        return Err(Error::Internal("T is not perfect".into()));
    }

    let mut gamma_gens = delta.clone();
    gamma_gens.extend(q_gens.iter().cloned());
    gamma_gens.extend(t_gens.iter().cloned());
    let gamma = PermGroup::new(product.degree(), gamma_gens)?;
    if !gamma.is_perfect() {
        return Err(Error::Internal("Γ is not perfect".into()));
    }
    for j in 0..n {
        if !product.projects_onto(j, &gamma) {
            return Err(Error::Internal(format!(
                "Γ does not project onto factor {}",
                j + 1
            )));
        }
    }

    let step = LevelStep {
        quotient_images: splits
            .iter()
            .map(|sp| strings(sp.quotient.map.images()))
            .collect(),
        sublevel: sub.cert,
        marked: strings(&marked),
        words: words.iter().map(|w| w.to_string()).collect(),
        lifts: lifts.iter().map(|r| strings(r)).collect(),
        k_residues: k_res.iter().map(|r| strings(r)).collect(),
        s_residues: s_res.iter().map(|r| strings(r)).collect(),
        modules,
        q_coordinates: q_coords,
        q_generators: strings(&q_gens),
        cover: cover_data,
        t_generators: strings(&t_gens),
    };
    Ok(Built {
        cert: LevelCert {
            k,
            family: family_data(family),
            step: Some(Box::new(step)),
        },
        gamma,
    })
}

fn build_t(
    factor_list: &[(usize, PermGroup)],
    s_res: &[Vec<Permutation>],
    product: &DirectProduct,
    n: usize,
    m: usize,
    opts: &ConstructOptions,
    seed: u64,
) -> Result<(Option<CoverData>, Vec<Permutation>)> {
    let cap = opts.cap;
    let g = opts.budget;
    let factors: Vec<PermGroup> = factor_list.iter().map(|(_, f)| f.clone()).collect();
    let cover = semisimple_cover(&factors, g, seed, cap)?;
    let mut pigeonhole = Vec::with_capacity(factors.len());
    let mut e = 1;
    for (i, mi) in factors.iter().enumerate() {
        pigeonhole.push(pick_small_centralizer_gen(mi, &cover.tuples[i], cap)?.0);
        let x = class_product(mi, &cover.tuples[i]);
        e = e.max(covering_number(mi, &x, cap)?.e);
    }
    let tables = factors
        .iter()
        .enumerate()
        .map(|(i, mi)| ConjugateProductTable::new(mi, &cover.tuples[i], e))
        .collect::<Result<Vec<_>>>()?;

    // Components s_{l,i} of each s_{l,j} in the simple factors of S_j.
    let mut conj = vec![vec![vec![Vec::with_capacity(factors.len()); e]; g]; m];
    for l in 0..m {
        let mut comps: Vec<Option<Permutation>> = vec![None; factors.len()];
        for j in 0..n {
            let idx: Vec<usize> = (0..factors.len())
                .filter(|&i| factor_list[i].0 == j)
                .collect();
            if idx.is_empty() {
                continue;
            }
            let fs: Vec<&PermGroup> = idx.iter().map(|&i| &factors[i]).collect();
            for (c, &i) in factor_components(&s_res[l][j], &fs, cap)?
                .into_iter()
                .zip(&idx)
            {
                comps[i] = Some(c);
            }
        }
        for (i, c) in comps.into_iter().enumerate() {
            let r = tables[i].decompose(&c.expect("every factor has a component"))?;
            for (t, round) in r.into_iter().enumerate() {
                for (jj, x) in round.into_iter().enumerate() {
                    conj[l][jj][t].push(x);
                }
            }
        }
    }

    // 𝐦_{j'}^{𝐫}: assemble per family component.
    let assemble = |jp: usize, r: &[Permutation]| -> Permutation {
        let parts: Vec<Permutation> = (0..n)
            .map(|j| {
                let mut acc = Permutation::identity(product.factor(j).degree());
                for (i, (c, _)) in factor_list.iter().enumerate() {
                    if *c == j {
                        acc = acc.compose(&cover.tuples[i][jp].conjugate_by(&r[i]));
                    }
                }
                acc
            })
            .collect();
        product.from_parts(&parts)
    };
    let mut t_gens = Vec::with_capacity(m * g * e * g);
    for l in 0..m {
        for j in 0..g {
            for t in 0..e {
                for jp in 0..g {
                    t_gens.push(assemble(jp, &conj[l][j][t]));
                }
            }
        }
    }
    let data = CoverData {
        factors: factor_list
            .iter()
            .map(|(c, f)| FactorData {
                component: *c,
                generators: strings(&f.essential_generators()),
            })
            .collect(),
        tuples: cover.tuples.iter().map(|t| strings(t)).collect(),
        e,
        pigeonhole,
        conjugators: conj
            .iter()
            .map(|a| {
                a.iter()
                    .map(|b| b.iter().map(|c| strings(c)).collect())
                    .collect()
            })
            .collect(),
    };
    Ok((Some(data), t_gens))
}
