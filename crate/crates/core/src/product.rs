//! Direct products realised on the disjoint union of the factor domains.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Element of a direct product; missing factors are the identity.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ProductElement {
    components: BTreeMap<usize, Permutation>,
}

impl ProductElement {
    pub fn identity() -> Self {
        ProductElement::default()
    }

    pub fn from_components(components: impl IntoIterator<Item = (usize, Permutation)>) -> Self {
        let mut e = ProductElement::default();
        for (j, p) in components {
            e.set(j, p);
        }
        e
    }

    pub fn set(&mut self, factor: usize, p: Permutation) {
        if p.is_identity() {
            self.components.remove(&factor);
        } else {
            self.components.insert(factor, p);
        }
    }

    pub fn component(&self, factor: usize) -> Option<&Permutation> {
        self.components.get(&factor)
    }

    pub fn components(&self) -> &BTreeMap<usize, Permutation> {
        &self.components
    }

    pub fn is_identity(&self) -> bool {
        self.components.is_empty()
    }

    pub fn multiply(&self, other: &ProductElement) -> ProductElement {
        let mut out = self.clone();
        for (&j, q) in &other.components {
            let v = match self.components.get(&j) {
                Some(p) => p.compose(q),
                None => q.clone(),
            };
            out.set(j, v);
        }
        out
    }

    pub fn inverse(&self) -> ProductElement {
        ProductElement {
            components: self
                .components
                .iter()
                .map(|(&j, p)| (j, p.inverse()))
                .collect(),
        }
    }
}

/// Context for `∏ G_j`: embeddings, projections and generated subgroups.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    factors: Vec<PermGroup>,
    offsets: Vec<usize>,
    degree: usize,
}

impl DirectProduct {
    pub fn new(factors: Vec<PermGroup>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Input(
                "direct product needs at least one factor".into(),
            ));
        }
        let mut offsets = Vec::with_capacity(factors.len());
        let mut degree = 0;
        for f in &factors {
            offsets.push(degree);
            degree += f.degree();
        }
        Ok(DirectProduct {
            factors,
            offsets,
            degree,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn factors(&self) -> &[PermGroup] {
        &self.factors
    }

    pub fn factor(&self, j: usize) -> &PermGroup {
        &self.factors[j]
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn offset(&self, j: usize) -> usize {
        self.offsets[j]
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn embed(&self, j: usize, p: &Permutation) -> Permutation {
        debug_assert_eq!(p.degree(), self.factors[j].degree());
        p.shifted(self.offsets[j], self.degree)
    }

    pub fn project(&self, j: usize, x: &Permutation) -> Permutation {
        x.restricted(self.offsets[j], self.factors[j].degree())
    }

    pub fn to_permutation(&self, e: &ProductElement) -> Permutation {
        let mut images: Vec<usize> = (0..self.degree).collect();
        for (&j, p) in e.components() {
            let off = self.offsets[j];
            for (i, x) in p.images().enumerate() {
                images[off + i] = off + x;
            }
        }
        Permutation::from_images(images).expect("componentwise bijection")
    }

    pub fn to_element(&self, x: &Permutation) -> ProductElement {
        ProductElement::from_components((0..self.factors.len()).map(|j| (j, self.project(j, x))))
    }

    /// Assembles a product permutation from one component per factor.
    pub fn from_parts(&self, parts: &[Permutation]) -> Permutation {
        assert_eq!(parts.len(), self.factors.len());
        let mut images = Vec::with_capacity(self.degree);
        for (j, p) in parts.iter().enumerate() {
            images.extend(p.images().map(|x| x + self.offsets[j]));
        }
        Permutation::from_images(images).expect("componentwise bijection")
    }

    pub fn subgroup(&self, gens: &[Permutation]) -> PermGroup {
        PermGroup::new(self.degree, gens.to_vec()).expect("product degree")
    }

    /// Whether every generator lies componentwise in the factors.
    pub fn contains(&self, x: &Permutation) -> bool {
        x.degree() == self.degree
            && (0..self.factors.len()).all(|j| {
                let off = self.offsets[j];
                let len = self.factors[j].degree();
                (off..off + len).all(|i| (off..off + len).contains(&x.image(i)))
                    && self.factors[j].contains(&self.project(j, x))
            })
    }

    /// Image of `H ≤ ∏ G_j` under the `j`-th projection.
    pub fn projection_of(&self, j: usize, h: &PermGroup) -> PermGroup {
        let gens = h
            .essential_generators()
            .iter()
            .map(|x| self.project(j, x))
            .collect();
        PermGroup::new(self.factors[j].degree(), gens).unwrap()
    }

    pub fn projects_onto(&self, j: usize, h: &PermGroup) -> bool {
        self.projection_of(j, h).order() == self.factors[j].order()
    }

    pub fn full_order(&self) -> u128 {
        self.factors.iter().map(|f| f.order()).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(deg, s).unwrap()
    }

    #[test]
    fn diagonal_a5() {
        let a5 = catalog::a5();
        let dp = DirectProduct::new(vec![a5.clone(), a5]).unwrap();
        let x = p(5, "(1 2 3 4 5)");
        let y = p(5, "(1 2 3)");
        let gens = vec![
            dp.from_parts(&[x.clone(), x]),
            dp.from_parts(&[y.clone(), y]),
        ];
        let h = dp.subgroup(&gens);
        assert_eq!(h.degree(), 10);
        assert_eq!(h.order(), 60);
        assert!(dp.projects_onto(0, &h) && dp.projects_onto(1, &h));
    }

    #[test]
    fn single_factor_copy() {
        let a5 = catalog::a5();
        let dp = DirectProduct::new(vec![a5.clone()]).unwrap();
        let h = dp.subgroup(a5.generators());
        assert_eq!(h.order(), 60);
        let x = p(5, "(1 3 5)");
        assert_eq!(dp.project(0, &dp.embed(0, &x)), x);
    }

    #[test]
    fn a5_times_psl27_is_full() {
        let a5 = catalog::a5();
        let l = catalog::psl27();
        let dp = DirectProduct::new(vec![a5.clone(), l.clone()]).unwrap();
        let gens: Vec<Permutation> = (0..2)
            .map(|i| dp.from_parts(&[a5.generators()[i].clone(), l.generators()[i].clone()]))
            .collect();
        let h = dp.subgroup(&gens);
        assert_eq!(h.degree(), 13);
        assert_eq!(h.order(), 10080);
    }

    #[test]
    fn element_arithmetic() {
        let a5 = catalog::a5();
        let dp = DirectProduct::new(vec![a5.clone(), a5]).unwrap();
        let e = ProductElement::from_components([(1, p(5, "(1 2 3)"))]);
        let f = ProductElement::from_components([(0, p(5, "(1 2)(3 4)")), (1, p(5, "(1 3 2)"))]);
        let prod = e.multiply(&f);
        assert_eq!(prod.component(1), None);
        assert_eq!(
            dp.to_permutation(&prod),
            dp.to_permutation(&e).compose(&dp.to_permutation(&f))
        );
        assert!(e.multiply(&e.inverse()).is_identity());
        assert_eq!(dp.to_element(&dp.to_permutation(&f)), f);
    }
}
