//! Homomorphisms given by generator images, checked through their graph.

use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A homomorphism `source → target` determined by images of the source
/// generators. Its graph `⟨(g_i, φ(g_i))⟩` acts on the disjoint union of both
/// domains; it is a function exactly when the graph has the order of the source.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: PermGroup,
    target: PermGroup,
    images: Vec<Permutation>,
    /// Graph chain whose base starts with every source point.
    by_source: StabChain,
    /// Graph chain whose base starts with every target point.
    by_target: StabChain,
    surjective: bool,
}

impl Homomorphism {
    pub fn from_images(
        source: &PermGroup,
        target: &PermGroup,
        images: Vec<Permutation>,
    ) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::Input(format!(
                "{} images given for {} generators",
                images.len(),
                source.generators().len()
            )));
        }
        for im in &images {
            if !target.is_member(im)? {
                return Err(Error::Verification(format!(
                    "image {im} is not in the target"
                )));
            }
        }
        let n = source.degree();
        let m = target.degree();
        let graph: Vec<Permutation> = source
            .generators()
            .iter()
            .zip(&images)
            .map(|(g, h)| g.direct_sum(h))
            .collect();
        let src_points: Vec<usize> = (0..n).collect();
        let tgt_points: Vec<usize> = (n..n + m).collect();
        let mut by_source = StabChain::with_base_prefix(n + m, &src_points);
        let mut by_target = StabChain::with_base_prefix(n + m, &tgt_points);
        for x in &graph {
            by_source.add_generator(x);
            by_target.add_generator(x);
        }
        if by_source.order() != source.order() {
            return Err(Error::Verification(format!(
                "graph has order {} but the source has order {}",
                by_source.order(),
                source.order()
            )));
        }
        let image_group = PermGroup::new(m, images.clone())?;
        let surjective = image_group.order() == target.order();
        Ok(Homomorphism {
            source: source.clone(),
            target: target.clone(),
            images,
            by_source,
            by_target,
            surjective,
        })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    /// Image of an arbitrary source element.
    pub fn image(&self, g: &Permutation) -> Result<Permutation> {
        let n = self.source.degree();
        let m = self.target.degree();
        if !self.source.is_member(g)? {
            return Err(Error::Precondition(format!("{g} is not in the source")));
        }
        let probe = g.direct_sum(&Permutation::identity(m));
        let y = self
            .by_source
            .sift_prefix(&probe, n)
            .ok_or_else(|| Error::Internal("source element failed to sift".into()))?;
        Ok(y.restricted(n, m))
    }

    /// Some preimage of `t`, or `None` when `t` is outside the image.
    pub fn preimage(&self, t: &Permutation) -> Option<Permutation> {
        let n = self.source.degree();
        let m = self.target.degree();
        if t.degree() != m {
            return None;
        }
        let probe = Permutation::identity(n).direct_sum(t);
        let y = self.by_target.sift_prefix(&probe, m)?;
        // sift_prefix only guarantees the residue fixes the target points,
        // so y carries t in its target part.
        if y.restricted(n, m) != *t {
            return None;
        }
        Some(y.restricted(0, n))
    }

    /// Kernel, as the preimage of the identity: `{g : (g, 1) ∈ graph}`.
    pub fn kernel(&self) -> PermGroup {
        let n = self.source.degree();
        let m = self.target.degree();
        // Strong generators of the target-prefixed chain below the target
        // levels fix every target point; they generate the kernel copy.
        let gens: Vec<Permutation> = self
            .by_target
            .strong_generators()
            .into_iter()
            .filter(|x| x.restricted(n, m).is_identity())
            .map(|x| x.restricted(0, n))
            .collect();
        PermGroup::new(n, gens).unwrap()
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
    fn identity_hom_is_surjective() {
        let a5 = catalog::a5();
        let h = Homomorphism::from_images(&a5, &a5, a5.generators().to_vec()).unwrap();
        assert!(h.is_surjective());
        let x = p(5, "(1 4)(2 5)");
        assert_eq!(h.image(&x).unwrap(), x);
        assert_eq!(h.kernel().order(), 1);
    }

    #[test]
    fn swapped_generators_are_rejected() {
        let a5 = catalog::a5();
        let images = vec![p(5, "(1 2 3)"), p(5, "(1 2 3 4 5)")];
        assert!(matches!(
            Homomorphism::from_images(&a5, &a5, images),
            Err(Error::Verification(_))
        ));
    }

    #[test]
    fn sign_map_to_c2() {
        let s3 = PermGroup::from_cycles(3, &["(1 2)", "(1 2 3)"]).unwrap();
        let c2 = PermGroup::from_cycles(2, &["(1 2)"]).unwrap();
        let h = Homomorphism::from_images(&s3, &c2, vec![p(2, "(1 2)"), p(2, "")]).unwrap();
        assert!(h.is_surjective());
        assert_eq!(h.kernel().order(), 3);
        assert_eq!(h.image(&p(3, "(1 3)")).unwrap(), p(2, "(1 2)"));
        let pre = h.preimage(&p(2, "(1 2)")).unwrap();
        assert_eq!(h.image(&pre).unwrap(), p(2, "(1 2)"));
    }
}
