//! The star series `G = G_0 ⊇ G_1 ⊇ …` with `G_{n+1} = (G_n)_*`, where `G_*`
//! is the intersection of all normal subgroups with abelian or simple
//! quotient, together with level, perfectness and generator counts.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::abelian::abelian_invariants;
use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_CAP};
use crate::quotient::quotient_by_normal;

/// All normal subgroups, as joins of normal closures of conjugacy classes.
/// Sorted by order; the trivial subgroup comes first and `G` last.
pub fn normal_subgroups(g: &PermGroup, cap: usize) -> Result<Vec<PermGroup>> {
    let classes = g.conjugacy_classes(cap)?;
    let mut list: Vec<PermGroup> = vec![PermGroup::trivial(g.degree())];
    let push_new = |list: &mut Vec<PermGroup>, h: PermGroup| {
        if !list.iter().any(|x| x.same_group(&h)) {
            list.push(h);
            true
        } else {
            false
        }
    };
    for class in classes.iter().skip(1) {
        let n = g.normal_closure(&class[..1])?;
        push_new(&mut list, n);
    }
    let mut i = 0;
    while i < list.len() {
        let mut j = 0;
        while j < i {
            if !list[i].is_subgroup_of(&list[j]) && !list[j].is_subgroup_of(&list[i]) {
                let join = list[i].join_with(&list[j].essential_generators());
                push_new(&mut list, join);
            }
            j += 1;
        }
        i += 1;
    }
    list.sort_by_key(|h| h.order());
    Ok(list)
}

/// Whether `g` is a nonabelian simple group.
pub fn is_nonabelian_simple(g: &PermGroup, cap: usize) -> Result<bool> {
    if g.is_trivial() || g.is_abelian() {
        return Ok(false);
    }
    Ok(normal_subgroups(g, cap)?.len() == 2)
}

/// Maximal normal subgroups `N` with `G/N` nonabelian simple.
fn nonabelian_simple_kernels(g: &PermGroup, normals: &[PermGroup]) -> Vec<PermGroup> {
    let derived = g.derived_subgroup();
    normals
        .iter()
        .filter(|n| n.order() < g.order())
        .filter(|n| {
            !normals
                .iter()
                .any(|m| m.order() > n.order() && m.order() < g.order() && n.is_subgroup_of(m))
        })
        .filter(|n| !derived.is_subgroup_of(n))
        .cloned()
        .collect()
}

/// `G_*`: the derived subgroup intersected with every kernel of a nonabelian
/// simple quotient.
pub fn star_subgroup(g: &PermGroup, cap: usize) -> Result<PermGroup> {
    let normals = normal_subgroups(g, cap)?;
    let mut star = g.derived_subgroup();
    for n in nonabelian_simple_kernels(g, &normals) {
        star = star.intersection(&n, cap)?;
    }
    Ok(star)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Finite(usize),
    /// The series stalled at a nontrivial term or exceeded the depth bound.
    Infinite,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(k) => write!(f, "{k}"),
            Level::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinGenerators {
    Exactly(usize),
    /// No generating tuple of size at most the bound was found.
    MoreThan(usize),
}

impl MinGenerators {
    pub fn at_most(&self, d: usize) -> bool {
        matches!(self, MinGenerators::Exactly(t) if *t <= d)
    }
}

impl fmt::Display for MinGenerators {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinGenerators::Exactly(t) => write!(f, "{t}"),
            MinGenerators::MoreThan(b) => write!(f, ">{b}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct StructureOptions {
    pub max_depth: usize,
    pub cap: usize,
    pub generator_bound: usize,
    pub seed: u64,
}

impl Default for StructureOptions {
    fn default() -> Self {
        StructureOptions {
            max_depth: 16,
            cap: DEFAULT_CAP,
            generator_bound: 4,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct StructureReport {
    pub series: Vec<PermGroup>,
    pub level: Level,
    pub perfect: bool,
    pub min_generators: MinGenerators,
    pub abelianization_invariants: Vec<u64>,
}

impl StructureReport {
    pub fn orders(&self) -> Vec<u128> {
        self.series.iter().map(|g| g.order()).collect()
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.series.iter().enumerate() {
            writeln!(f, "G_{i} |G_{i}|={}", g.order())?;
        }
        write!(
            f,
            "level={} perfect={} dmin={}",
            self.level, self.perfect, self.min_generators
        )
    }
}

/// `G_0, G_1, …` until the trivial group, a fixpoint, or `max_depth` steps.
pub fn star_terms(g: &PermGroup, max_depth: usize, cap: usize) -> Result<Vec<PermGroup>> {
    let mut series = vec![g.clone()];
    loop {
        let cur = series.last().unwrap();
        if cur.is_trivial() || series.len() > max_depth {
            return Ok(series);
        }
        let next = star_subgroup(cur, cap)?;
        if next.order() == cur.order() {
            return Ok(series);
        }
        series.push(next);
    }
}

/// Level of `g`: the least `k` with `G_k = 1`, if reached within `max_depth`.
pub fn level_of(g: &PermGroup, max_depth: usize, cap: usize) -> Result<Level> {
    let series = star_terms(g, max_depth, cap)?;
    Ok(if series.last().unwrap().is_trivial() {
        Level::Finite(series.len() - 1)
    } else {
        Level::Infinite
    })
}

/// Iterates the star operator until the trivial group, a fixpoint, or `max_depth`.
pub fn star_series(g: &PermGroup, opts: &StructureOptions) -> Result<StructureReport> {
    let series = star_terms(g, opts.max_depth, opts.cap)?;
    let level = if series.last().unwrap().is_trivial() {
        Level::Finite(series.len() - 1)
    } else {
        Level::Infinite
    };
    let derived = g.derived_subgroup();
    let perfect = derived.order() == g.order();
    let abelianization_invariants = if perfect {
        Vec::new()
    } else {
        let q = quotient_by_normal(g, &derived, opts.cap)?;
        abelian_invariants(&q.group, opts.cap)?
    };
    let min_generators = min_generators(g, opts.generator_bound, opts.seed, opts.cap)?;
    Ok(StructureReport {
        series,
        level,
        perfect,
        min_generators,
        abelianization_invariants,
    })
}

const RANDOM_TRIALS: usize = 400;
const EXHAUSTIVE_ORDER: u128 = 10_000;
const EXHAUSTIVE_TUPLES: u128 = 2_000_000;

fn generates(g: &PermGroup, tuple: &[crate::Permutation]) -> bool {
    let mut h = PermGroup::trivial(g.degree());
    for x in tuple {
        h.add_generator(x.clone());
        if h.order() == g.order() {
            return true;
        }
    }
    h.order() == g.order()
}

/// Least `t ≤ bound` such that some `t`-tuple generates `g`. Seeded random
/// sampling first; exhaustive search (first entry over class representatives)
/// for groups below order 10⁴.
pub fn min_generators(g: &PermGroup, bound: usize, seed: u64, cap: usize) -> Result<MinGenerators> {
    if g.is_trivial() {
        return Ok(MinGenerators::Exactly(0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = g.order();
    let mut elements: Option<Vec<crate::Permutation>> = None;
    let mut reps: Option<Vec<crate::Permutation>> = None;
    for t in 1..=bound {
        if t == 1 && order <= cap as u128 {
            let elems = g.elements(cap)?;
            if elems.iter().any(|x| x.order() as u128 == order) {
                return Ok(MinGenerators::Exactly(1));
            }
            continue;
        }
        for _ in 0..RANDOM_TRIALS {
            let tuple: Vec<_> = (0..t).map(|_| g.random_element(&mut rng)).collect();
            if generates(g, &tuple) {
                return Ok(MinGenerators::Exactly(t));
            }
        }
        if order < EXHAUSTIVE_ORDER {
            if elements.is_none() {
                elements = Some(g.elements(cap)?);
                reps = Some(
                    g.conjugacy_classes(cap)?
                        .into_iter()
                        .map(|c| c[0].clone())
                        .collect(),
                );
            }
            let elems = elements.as_ref().unwrap();
            let reps = reps.as_ref().unwrap();
            let count = reps.len() as u128 * order.pow(t as u32 - 1);
            if count <= EXHAUSTIVE_TUPLES && exhaustive_search(g, reps, elems, t) {
                return Ok(MinGenerators::Exactly(t));
            }
        }
    }
    Ok(MinGenerators::MoreThan(bound))
}

fn exhaustive_search(
    g: &PermGroup,
    reps: &[crate::Permutation],
    elems: &[crate::Permutation],
    t: usize,
) -> bool {
    let n = elems.len();
    let mut idx = vec![0usize; t.saturating_sub(1)];
    for r in reps {
        idx.iter_mut().for_each(|i| *i = 0);
        loop {
            let mut tuple = vec![r.clone()];
            tuple.extend(idx.iter().map(|&i| elems[i].clone()));
            if generates(g, &tuple) {
                return true;
            }
            // odometer
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < n {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    false
}

/// Membership in the class of `d`-generated perfect groups of level at most `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YCheck {
    pub member: bool,
    pub reason: String,
}

pub fn is_in_y(g: &PermGroup, d: usize, k: usize, opts: &StructureOptions) -> Result<YCheck> {
    if !g.is_perfect() {
        return Ok(YCheck {
            member: false,
            reason: "not perfect".into(),
        });
    }
    let dmin = min_generators(g, d.max(1), opts.seed, opts.cap)?;
    if !g.is_trivial() && !dmin.at_most(d) {
        return Ok(YCheck {
            member: false,
            reason: format!("no generating {d}-tuple found (d(G) {dmin})"),
        });
    }
    let mut o = opts.clone();
    o.max_depth = o.max_depth.max(k + 1);
    let report = star_series(g, &o)?;
    match report.level {
        Level::Finite(l) if l <= k => Ok(YCheck {
            member: true,
            reason: format!("perfect, d(G)={dmin}, level {l}"),
        }),
        level => Ok(YCheck {
            member: false,
            reason: format!("level {level} exceeds {k}"),
        }),
    }
}

/// Splits a group with trivial star subgroup as `W = A × S`, `A` the centre
/// and `S` the derived subgroup.
pub fn split_star_trivial(w: &PermGroup, cap: usize) -> Result<(PermGroup, PermGroup)> {
    if !star_subgroup(w, cap)?.is_trivial() {
        return Err(Error::Precondition("star subgroup is not trivial".into()));
    }
    let a = w.center(cap)?;
    let s = w.derived_subgroup();
    if !a.intersection(&s, cap)?.is_trivial() {
        return Err(Error::Precondition(
            "centre meets the derived subgroup".into(),
        ));
    }
    if a.order() * s.order() != w.order() {
        return Err(Error::Precondition(format!(
            "|A|·|S| = {} differs from |W| = {}",
            a.order() * s.order(),
            w.order()
        )));
    }
    let commute = a
        .essential_generators()
        .iter()
        .all(|x| s.essential_generators().iter().all(|y| x.commutes_with(y)));
    if !commute {
        return Err(Error::Precondition("A and S do not commute".into()));
    }
    if !s.is_perfect() || !star_subgroup(&s, cap)?.is_trivial() {
        return Err(Error::Precondition("S is not semisimple".into()));
    }
    Ok((a, s))
}

/// The simple direct factors of a semisimple group: its minimal normal subgroups.
pub fn simple_factors(s: &PermGroup, cap: usize) -> Result<Vec<PermGroup>> {
    if s.is_trivial() {
        return Ok(Vec::new());
    }
    let normals = normal_subgroups(s, cap)?;
    let minimal: Vec<PermGroup> = normals
        .iter()
        .filter(|n| !n.is_trivial())
        .filter(|n| {
            !normals
                .iter()
                .any(|m| !m.is_trivial() && m.order() < n.order() && m.is_subgroup_of(n))
        })
        .cloned()
        .collect();
    let product: u128 = minimal.iter().map(|m| m.order()).product();
    if product != s.order() || minimal.iter().any(|m| m.is_abelian()) {
        return Err(Error::Precondition("group is not semisimple".into()));
    }
    Ok(minimal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::product::DirectProduct;

    fn opts() -> StructureOptions {
        StructureOptions::default()
    }

    #[test]
    fn normal_subgroup_examples() {
        let orders = |g: &PermGroup| -> Vec<u128> {
            normal_subgroups(g, DEFAULT_CAP)
                .unwrap()
                .iter()
                .map(|h| h.order())
                .collect()
        };
        assert_eq!(orders(&catalog::s3()), vec![1, 3, 6]);
        assert_eq!(orders(&catalog::a5()), vec![1, 60]);
        assert_eq!(orders(&PermGroup::trivial(2)), vec![1]);
        assert_eq!(orders(&catalog::a4()), vec![1, 4, 12]);
    }

    #[test]
    fn star_examples() {
        assert!(star_subgroup(&catalog::a5(), DEFAULT_CAP)
            .unwrap()
            .is_trivial());
        assert_eq!(
            star_subgroup(&catalog::sl25(), DEFAULT_CAP)
                .unwrap()
                .order(),
            2
        );
        assert!(star_subgroup(&catalog::z4(), DEFAULT_CAP)
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn series_examples() {
        let r = star_series(&catalog::a5(), &opts()).unwrap();
        assert_eq!(r.orders(), vec![60, 1]);
        assert_eq!(r.level, Level::Finite(1));
        let r = star_series(&catalog::sl25(), &opts()).unwrap();
        assert_eq!(r.orders(), vec![120, 2, 1]);
        assert_eq!(r.level, Level::Finite(2));
        assert!(r.perfect);
        let r = star_series(&PermGroup::trivial(1), &opts()).unwrap();
        assert_eq!(r.orders(), vec![1]);
        assert_eq!(r.level, Level::Finite(0));
    }

    #[test]
    fn imperfect_report() {
        let r = star_series(&catalog::s3(), &opts()).unwrap();
        assert!(!r.perfect);
        assert_eq!(r.abelianization_invariants, vec![2]);
        let r = star_series(&catalog::z4(), &opts()).unwrap();
        assert_eq!(r.abelianization_invariants, vec![4]);
        assert_eq!(r.level, Level::Finite(1));
    }

    #[test]
    fn min_generator_examples() {
        assert_eq!(
            min_generators(&catalog::a5(), 3, 0, DEFAULT_CAP).unwrap(),
            MinGenerators::Exactly(2)
        );
        assert_eq!(
            min_generators(&PermGroup::trivial(1), 1, 0, DEFAULT_CAP).unwrap(),
            MinGenerators::Exactly(0)
        );
        assert_eq!(
            min_generators(&catalog::v4(), 3, 0, DEFAULT_CAP).unwrap(),
            MinGenerators::Exactly(2)
        );
        assert_eq!(
            min_generators(&catalog::v4(), 1, 0, DEFAULT_CAP).unwrap(),
            MinGenerators::MoreThan(1)
        );
        assert_eq!(
            min_generators(&catalog::z4(), 2, 0, DEFAULT_CAP).unwrap(),
            MinGenerators::Exactly(1)
        );
    }

    #[test]
    fn y_examples() {
        assert!(is_in_y(&catalog::a5(), 2, 1, &opts()).unwrap().member);
        assert!(!is_in_y(&catalog::sl25(), 2, 1, &opts()).unwrap().member);
        assert!(is_in_y(&catalog::sl25(), 2, 2, &opts()).unwrap().member);
        assert!(
            is_in_y(&PermGroup::trivial(1), 2, 0, &opts())
                .unwrap()
                .member
        );
        assert!(!is_in_y(&catalog::a4(), 2, 5, &opts()).unwrap().member);
    }

    #[test]
    fn split_examples() {
        let dp = DirectProduct::new(vec![catalog::v4(), catalog::a5()]).unwrap();
        let mut gens: Vec<_> = catalog::v4()
            .generators()
            .iter()
            .map(|x| dp.embed(0, x))
            .collect();
        gens.extend(catalog::a5().generators().iter().map(|x| dp.embed(1, x)));
        let w = dp.subgroup(&gens);
        let (a, s) = split_star_trivial(&w, DEFAULT_CAP).unwrap();
        assert_eq!((a.order(), s.order()), (4, 60));

        let (a, s) = split_star_trivial(&catalog::a5(), DEFAULT_CAP).unwrap();
        assert_eq!((a.order(), s.order()), (1, 60));
        let (a, s) = split_star_trivial(&catalog::v4(), DEFAULT_CAP).unwrap();
        assert_eq!((a.order(), s.order()), (4, 1));
        assert!(split_star_trivial(&catalog::sl25(), DEFAULT_CAP).is_err());
    }

    #[test]
    fn simple_factors_of_a5xa5() {
        let f = simple_factors(&catalog::a5xa5(), DEFAULT_CAP).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|m| m.order() == 60));
        assert!(simple_factors(&catalog::a4(), DEFAULT_CAP).is_err());
    }
}
