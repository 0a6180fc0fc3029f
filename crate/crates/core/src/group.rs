//! Permutation groups backed by a stabilizer chain.

use std::collections::{HashMap, HashSet};

use rand::Rng;

use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default ceiling for brute-force enumeration.
pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    /// Indices of generators that enlarged the group when added in order.
    essential: Vec<usize>,
    chain: StabChain,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Input("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let mut chain = StabChain::new(degree);
        let mut essential = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            if chain.add_generator(g) {
                essential.push(i);
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            essential,
            chain,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("positive degree")
    }

    /// Parses generators given in cycle notation.
    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| Permutation::parse_cycles(degree, s))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// A generating subset with no generator inside the span of its predecessors.
    pub fn essential_generators(&self) -> Vec<Permutation> {
        self.essential
            .iter()
            .map(|&i| self.generators[i].clone())
            .collect()
    }

    pub fn essential_indices(&self) -> &[usize] {
        &self.essential
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    /// Membership with an explicit degree check.
    pub fn is_member(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                got: g.degree(),
            });
        }
        Ok(self.contains(g))
    }

    /// Adds a generator; returns whether the group grew.
    pub fn add_generator(&mut self, g: Permutation) -> bool {
        assert_eq!(g.degree(), self.degree);
        let grew = self.chain.add_generator(&g);
        self.generators.push(g);
        if grew {
            self.essential.push(self.generators.len() - 1);
        }
        grew
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain.random_element(rng)
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.order() > cap as u128 {
            Err(Error::Size {
                order: self.order(),
                cap,
            })
        } else {
            Ok(())
        }
    }

    /// All elements, sorted, when the order is at most `cap`.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        self.check_cap(cap)?;
        let mut out = Vec::with_capacity(self.order() as usize);
        self.chain.for_each_element(|g| out.push(g.clone()));
        out.sort();
        Ok(out)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        self.is_subgroup_of(ambient)
            && self.essential_generators().iter().all(|h| {
                ambient
                    .essential_generators()
                    .iter()
                    .all(|g| self.contains(&h.conjugate_by(g)))
            })
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.essential_generators();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    /// Subgroup generated by `self` and extra elements.
    pub fn join_with(&self, extra: &[Permutation]) -> PermGroup {
        let mut g = PermGroup::new(self.degree, self.essential_generators()).unwrap();
        for x in extra {
            g.add_generator(x.clone());
        }
        g
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> Result<PermGroup> {
        for s in seeds {
            if !self.is_member(s)? {
                return Err(Error::Precondition(format!("seed {s} is not in the group")));
            }
        }
        Ok(conjugation_closure(
            self.degree,
            seeds,
            &self.essential_generators(),
        ))
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let gens = self.essential_generators();
        let mut seeds = Vec::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                let c = Permutation::commutator(&gens[i], &gens[j]);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        conjugation_closure(self.degree, &seeds, &gens)
    }

    /// `[h, k]` for `h ∈ H`, `k ∈ K`, both inside `self`, at least one normal.
    pub fn commutator_subgroup(&self, h: &PermGroup, k: &PermGroup) -> Result<PermGroup> {
        if !h.is_subgroup_of(self) || !k.is_subgroup_of(self) {
            return Err(Error::Precondition(
                "commutator arguments must be subgroups of the ambient group".into(),
            ));
        }
        if !h.is_normal_in(self) && !k.is_normal_in(self) {
            return Err(Error::Precondition(
                "one commutator argument must be normal in the ambient group".into(),
            ));
        }
        Ok(commutator_of(self.degree, h, k))
    }

    /// `{x ∈ G : xg = gx}` by filtering the enumerated elements.
    pub fn centralizer(&self, g: &Permutation, cap: usize) -> Result<PermGroup> {
        if !self.is_member(g)? {
            return Err(Error::Precondition(format!("{g} is not in the group")));
        }
        let elems = self.elements(cap)?;
        let mut c = PermGroup::trivial(self.degree);
        for x in elems {
            if x.commutes_with(g) && !c.contains(&x) {
                c.add_generator(x);
            }
        }
        Ok(c)
    }

    pub fn center(&self, cap: usize) -> Result<PermGroup> {
        let gens = self.essential_generators();
        let elems = self.elements(cap)?;
        let mut z = PermGroup::trivial(self.degree);
        for x in elems {
            if gens.iter().all(|g| g.commutes_with(&x)) && !z.contains(&x) {
                z.add_generator(x);
            }
        }
        Ok(z)
    }

    /// Conjugacy classes, each sorted, ordered by their least element (the
    /// identity class comes first).
    pub fn conjugacy_classes(&self, cap: usize) -> Result<Vec<Vec<Permutation>>> {
        let elems = self.elements(cap)?;
        let index: HashMap<&Permutation, usize> =
            elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let gens = self.essential_generators();
        let mut class_of = vec![usize::MAX; elems.len()];
        let mut classes = Vec::new();
        for start in 0..elems.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut head = 0;
            while head < members.len() {
                let x = &elems[members[head]];
                head += 1;
                for g in &gens {
                    let y = x.conjugate_by(g);
                    let yi = index[&y];
                    if class_of[yi] == usize::MAX {
                        class_of[yi] = id;
                        members.push(yi);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members.into_iter().map(|i| elems[i].clone()).collect());
        }
        Ok(classes)
    }

    /// Intersection, by filtering the elements of the smaller group.
    pub fn intersection(&self, other: &PermGroup, cap: usize) -> Result<PermGroup> {
        let (small, big) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = PermGroup::trivial(self.degree);
        for x in small.elements(cap)? {
            if big.contains(&x) && !out.contains(&x) {
                out.add_generator(x);
            }
        }
        Ok(out)
    }
}

/// Closure of `⟨seeds⟩` under conjugation by `acting`.
pub fn conjugation_closure(
    degree: usize,
    seeds: &[Permutation],
    acting: &[Permutation],
) -> PermGroup {
    let mut n = PermGroup::trivial(degree);
    let mut queue: Vec<Permutation> = Vec::new();
    for s in seeds {
        if n.add_generator(s.clone()) {
            queue.push(s.clone());
        }
    }
    while let Some(x) = queue.pop() {
        for a in acting {
            let y = x.conjugate_by(a);
            if n.add_generator(y.clone()) {
                queue.push(y);
            }
        }
    }
    // Generators that did not grow the group are noise; rebuild compactly.
    PermGroup::new(degree, n.essential_generators()).unwrap()
}

/// `[H, K]`: normal closure in `⟨H, K⟩` of commutators of generators.
pub(crate) fn commutator_of(degree: usize, h: &PermGroup, k: &PermGroup) -> PermGroup {
    let hg = h.essential_generators();
    let kg = k.essential_generators();
    let mut seeds = Vec::new();
    let mut seen = HashSet::new();
    for x in &hg {
        for y in &kg {
            let c = Permutation::commutator(x, y);
            if !c.is_identity() && seen.insert(c.clone()) {
                seeds.push(c);
            }
        }
    }
    let mut acting = hg;
    acting.extend(kg);
    conjugation_closure(degree, &seeds, &acting)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(deg: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(deg, gens).unwrap()
    }

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(deg, s).unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(g(5, &["(1 2 3 4 5)", "(1 2 3)"]).order(), 60);
        assert_eq!(g(4, &[]).order(), 1);
        assert_eq!(g(3, &["(1 2)", "(1 2 3)"]).order(), 6);
    }

    #[test]
    fn rejects_bad_degree() {
        let x = p(4, "(1 2)");
        assert!(matches!(
            PermGroup::new(3, vec![x]),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn membership_examples() {
        let a5 = g(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert!(a5.is_member(&p(5, "(1 2 3)")).unwrap());
        assert!(!a5.is_member(&p(5, "(1 2)")).unwrap());
        assert!(a5.is_member(&a5.identity()).unwrap());
        assert!(a5.is_member(&p(4, "(1 2)")).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let s3 = g(3, &["(1 2)", "(1 2 3)"]);
        assert_eq!(s3.elements(10).unwrap().len(), 6);
        let t = g(2, &[]);
        assert_eq!(t.elements(1).unwrap(), vec![Permutation::identity(2)]);
        let a5 = g(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert!(matches!(a5.elements(59), Err(Error::Size { .. })));
    }

    #[test]
    fn normal_closure_examples() {
        let s3 = g(3, &["(1 2)", "(1 2 3)"]);
        assert_eq!(s3.normal_closure(&[p(3, "(1 2 3)")]).unwrap().order(), 3);
        assert_eq!(s3.normal_closure(&[s3.identity()]).unwrap().order(), 1);
        let a5 = g(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert_eq!(a5.normal_closure(&[p(5, "(1 2 3)")]).unwrap().order(), 60);
        assert!(a5.normal_closure(&[p(5, "(1 2)")]).is_err());
    }

    #[test]
    fn derived_examples() {
        let s3 = g(3, &["(1 2)", "(1 2 3)"]);
        assert_eq!(s3.derived_subgroup().order(), 3);
        let a5 = g(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert_eq!(a5.derived_subgroup().order(), 60);
        assert_eq!(g(4, &["(1 2 3 4)"]).derived_subgroup().order(), 1);
    }

    #[test]
    fn commutator_subgroup_examples() {
        let a4 = g(4, &["(1 2 3)", "(1 2)(3 4)"]);
        let v4 = g(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let c = a4.commutator_subgroup(&v4, &a4).unwrap();
        assert!(c.same_group(&v4));
        let t = PermGroup::trivial(4);
        assert_eq!(a4.commutator_subgroup(&t, &a4).unwrap().order(), 1);
        let s4 = g(4, &["(1 2)", "(1 2 3 4)"]);
        assert!(a4.commutator_subgroup(&s4, &a4).is_err());
    }

    #[test]
    fn centralizer_examples() {
        let a5 = g(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        assert_eq!(
            a5.centralizer(&p(5, "(1 2 3 4 5)"), DEFAULT_CAP)
                .unwrap()
                .order(),
            5
        );
        assert_eq!(
            a5.centralizer(&a5.identity(), DEFAULT_CAP).unwrap().order(),
            60
        );
        let s3 = g(3, &["(1 2)", "(1 2 3)"]);
        assert_eq!(
            s3.centralizer(&p(3, "(1 2)"), DEFAULT_CAP).unwrap().order(),
            2
        );
    }

    #[test]
    fn class_examples() {
        let a5 = g(5, &["(1 2 3 4 5)", "(1 2 3)"]);
        let mut sizes: Vec<usize> = a5
            .conjugacy_classes(DEFAULT_CAP)
            .unwrap()
            .iter()
            .map(|c| c.len())
            .collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
        assert_eq!(PermGroup::trivial(3).conjugacy_classes(1).unwrap().len(), 1);
        let s3 = g(3, &["(1 2)", "(1 2 3)"]);
        let sizes: Vec<usize> = s3
            .conjugacy_classes(DEFAULT_CAP)
            .unwrap()
            .iter()
            .map(|c| c.len())
            .collect();
        assert_eq!(sizes[0], 1);
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 2, 3]);
    }

    #[test]
    fn center_and_intersection() {
        let a4 = g(4, &["(1 2 3)", "(1 2)(3 4)"]);
        assert_eq!(a4.center(DEFAULT_CAP).unwrap().order(), 1);
        let v4 = g(4, &["(1 2)(3 4)", "(1 3)(2 4)"]);
        let c3 = g(4, &["(1 2 3)"]);
        assert_eq!(v4.intersection(&c3, DEFAULT_CAP).unwrap().order(), 1);
        assert_eq!(a4.intersection(&v4, DEFAULT_CAP).unwrap().order(), 4);
    }
}
