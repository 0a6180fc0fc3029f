//! Permutation representations of quotients `G/N` via coset actions.

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::Homomorphism;
use crate::perm::Permutation;

/// `G/N` as a permutation group together with the projection `G → G/N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: PermGroup,
    pub map: Homomorphism,
}

/// Action of the generators of `g` on the right cosets of `h`.
pub fn coset_action(g: &PermGroup, h: &PermGroup) -> Vec<Permutation> {
    let gens = g.generators();
    let mut reps = vec![g.identity()];
    let find = |reps: &[Permutation], x: &Permutation| {
        reps.iter()
            .position(|r| h.contains(&x.compose(&r.inverse())))
    };
    let mut head = 0;
    while head < reps.len() {
        let r = reps[head].clone();
        head += 1;
        for s in gens {
            let c = r.compose(s);
            if find(&reps, &c).is_none() {
                reps.push(c);
            }
        }
    }
    gens.iter()
        .map(|s| {
            let images = reps
                .iter()
                .map(|r| find(&reps, &r.compose(s)).expect("coset closure"))
                .collect();
            Permutation::from_images(images).expect("coset action is a permutation")
        })
        .collect()
}

/// Builds `G/N`. `G` itself when `N` is trivial; otherwise the action on the
/// cosets of the largest subgroup `⟨N, x⟩` or `⟨N, x, y⟩` with core `N`
/// (`x`, `y` class representatives), falling back to the cosets of `N`.
pub fn quotient_by_normal(g: &PermGroup, n: &PermGroup, cap: usize) -> Result<Quotient> {
    if !n.is_normal_in(g) {
        return Err(Error::Precondition(
            "quotient by a non-normal subgroup".into(),
        ));
    }
    if n.is_trivial() {
        let map = Homomorphism::from_images(g, g, g.generators().to_vec())?;
        return Ok(Quotient {
            group: g.clone(),
            map,
        });
    }
    let index = g.order() / n.order();
    let mut candidates: Vec<PermGroup> = Vec::new();
    let push = |candidates: &mut Vec<PermGroup>, h: PermGroup| {
        if h.order() < g.order() && !candidates.iter().any(|c| c.same_group(&h)) {
            candidates.push(h);
        }
    };
    if index > 1 {
        let reps: Vec<Permutation> = g
            .conjugacy_classes(cap)?
            .into_iter()
            .map(|c| c[0].clone())
            .collect();
        for x in &reps {
            push(&mut candidates, n.join_with(std::slice::from_ref(x)));
        }
        let singles = candidates.clone();
        for h in &singles {
            for y in &reps {
                if !h.contains(y) {
                    push(&mut candidates, h.join_with(std::slice::from_ref(y)));
                }
            }
        }
    }
    // Largest subgroup first; ties keep discovery order.
    candidates.sort_by_key(|c| std::cmp::Reverse(c.order()));
    candidates.push(n.clone());
    for h in candidates {
        let images = coset_action(g, &h);
        let degree = images.first().map(|p| p.degree()).unwrap_or(1);
        let q = PermGroup::new(degree, images.clone())?;
        if q.order() == index {
            let map = Homomorphism::from_images(g, &q, images)?;
            return Ok(Quotient { group: q, map });
        }
    }
    Err(Error::Internal(
        "regular coset action was not faithful".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::DEFAULT_CAP;

    #[test]
    fn s3_mod_a3() {
        let s3 = catalog::s3();
        let a3 = PermGroup::from_cycles(3, &["(1 2 3)"]).unwrap();
        let q = quotient_by_normal(&s3, &a3, DEFAULT_CAP).unwrap();
        assert_eq!(q.group.order(), 2);
        assert!(q.map.is_surjective());
        assert!(q.map.kernel().same_group(&a3));
    }

    #[test]
    fn sl25_mod_center_is_small_a5() {
        let g = catalog::sl25();
        let z = g.center(DEFAULT_CAP).unwrap();
        let q = quotient_by_normal(&g, &z, DEFAULT_CAP).unwrap();
        assert_eq!(q.group.order(), 60);
        assert!(q.group.degree() <= 6);
        assert!(q.map.kernel().same_group(&z));
    }

    #[test]
    fn quotient_by_trivial_is_the_group() {
        let g = catalog::psl27();
        let q = quotient_by_normal(&g, &PermGroup::trivial(8), DEFAULT_CAP).unwrap();
        assert!(q.group.same_group(&g));
        assert!(q.map.kernel().is_trivial());
    }

    #[test]
    fn affine_mod_translations_is_small() {
        let g = catalog::affine_a5();
        let t = crate::structure::star_subgroup(&g, DEFAULT_CAP).unwrap();
        let q = quotient_by_normal(&g, &t, DEFAULT_CAP).unwrap();
        assert_eq!(q.group.order(), 60);
        assert!(q.group.degree() <= 6);
    }

    #[test]
    fn quotient_by_whole_group() {
        let a5 = catalog::a5();
        let q = quotient_by_normal(&a5, &a5, DEFAULT_CAP).unwrap();
        assert_eq!(q.group.order(), 1);
        assert_eq!(q.group.degree(), 1);
    }
}
