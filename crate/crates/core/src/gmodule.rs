//! An abelian normal subgroup `A ⊴ G` viewed as a right `ZG`-module under
//! conjugation. Multiplicative and additive notation meet only in
//! `encode`/`decode`: `[m, g] = m⁻¹ m^g` corresponds to `m(g − 1)`.

use crate::abelian::AbelianBasis;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::snf::{IntMatrix, Lattice, Smith};

#[derive(Clone, Debug)]
pub struct GModule {
    ambient: PermGroup,
    carrier: PermGroup,
    coords: AbelianBasis,
    acting: Vec<Permutation>,
    /// Row `i` of `action[l]` holds the coordinates of `b_i^{a_l}`.
    action: Vec<Vec<Vec<i64>>>,
}

/// A submodule, stored by additive generators in coordinates.
#[derive(Clone, Debug)]
pub struct Submodule {
    orders: Vec<u64>,
    gens: Vec<Vec<i64>>,
    lattice: Lattice,
}

impl Submodule {
    fn new(orders: &[u64], gens: Vec<Vec<i64>>) -> Self {
        let lattice = lattice_of(orders, &gens);
        Submodule {
            orders: orders.to_vec(),
            gens,
            lattice,
        }
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.gens
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        self.lattice.contains(&w)
    }

    /// Number of elements.
    pub fn order(&self) -> u128 {
        let total: u128 = self.orders.iter().map(|&d| d as u128).product();
        match self.lattice.index() {
            Some(idx) => total / idx as u128,
            None => total,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subset_of(&self, other: &Submodule) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn same_as(&self, other: &Submodule) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }
}

fn lattice_of(orders: &[u64], gens: &[Vec<i64>]) -> Lattice {
    let n = orders.len();
    let mut rows: IntMatrix = gens
        .iter()
        .map(|g| g.iter().map(|&x| x as i128).collect())
        .collect();
    for (i, &d) in orders.iter().enumerate() {
        let mut r = vec![0i128; n];
        r[i] = d as i128;
        rows.push(r);
    }
    Lattice::new(n, rows)
}

impl GModule {
    pub fn new(
        ambient: &PermGroup,
        carrier: &PermGroup,
        acting: &[Permutation],
        cap: usize,
    ) -> Result<Self> {
        if !carrier.is_abelian() {
            return Err(Error::Precondition("carrier is not abelian".into()));
        }
        if !carrier.is_normal_in(ambient) {
            return Err(Error::Precondition(
                "carrier is not normal in the ambient group".into(),
            ));
        }
        for a in acting {
            if !ambient.is_member(a)? {
                return Err(Error::Precondition(format!(
                    "acting element {a} is outside the ambient group"
                )));
            }
        }
        let coords = AbelianBasis::new(carrier, cap)?;
        let mut action = Vec::with_capacity(acting.len());
        for a in acting {
            let mut rows = Vec::with_capacity(coords.rank());
            for b in coords.basis() {
                rows.push(coords.encode(&b.conjugate_by(a))?);
            }
            action.push(rows);
        }
        Ok(GModule {
            ambient: ambient.clone(),
            carrier: carrier.clone(),
            coords,
            acting: acting.to_vec(),
            action,
        })
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn carrier(&self) -> &PermGroup {
        &self.carrier
    }

    pub fn acting(&self) -> &[Permutation] {
        &self.acting
    }

    pub fn rank(&self) -> usize {
        self.coords.rank()
    }

    pub fn orders(&self) -> &[u64] {
        self.coords.orders()
    }

    pub fn basis(&self) -> &[Permutation] {
        self.coords.basis()
    }

    pub fn action_matrix(&self, l: usize) -> &[Vec<i64>] {
        &self.action[l]
    }

    pub fn encode(&self, x: &Permutation) -> Result<Vec<i64>> {
        self.coords.encode(x)
    }

    pub fn decode(&self, v: &[i64]) -> Permutation {
        self.coords.decode(v)
    }

    pub fn carrier_elements(&self) -> Vec<Permutation> {
        self.coords.elements()
    }

    fn reduce(&self, v: &mut [i64]) {
        for (x, &d) in v.iter_mut().zip(self.orders()) {
            *x = x.rem_euclid(d as i64);
        }
    }

    /// `v · T_l`.
    pub fn act(&self, v: &[i64], l: usize) -> Vec<i64> {
        let n = self.rank();
        let mut out = vec![0i64; n];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for j in 0..n {
                out[j] += c * self.action[l][i][j];
            }
        }
        self.reduce(&mut out);
        out
    }

    /// `v (a_l − 1)`.
    pub fn augment(&self, v: &[i64], l: usize) -> Vec<i64> {
        let mut out = self.act(v, l);
        for (o, &x) in out.iter_mut().zip(v) {
            *o -= x;
        }
        self.reduce(&mut out);
        out
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule::new(self.orders(), Vec::new())
    }

    pub fn whole(&self) -> Submodule {
        let n = self.rank();
        let gens = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        Submodule::new(self.orders(), gens)
    }

    /// Additive span of `gens`, then closed under every acting element.
    pub fn close(&self, gens: Vec<Vec<i64>>) -> Submodule {
        let mut sub = Submodule::new(self.orders(), Vec::new());
        let mut queue = Vec::new();
        for mut g in gens {
            self.reduce(&mut g);
            if !sub.contains(&g) {
                sub = Submodule::new(self.orders(), push(&sub.gens, g.clone()));
                queue.push(g);
            }
        }
        while let Some(v) = queue.pop() {
            for l in 0..self.acting.len() {
                let w = self.act(&v, l);
                if !sub.contains(&w) {
                    sub = Submodule::new(self.orders(), push(&sub.gens, w.clone()));
                    queue.push(w);
                }
            }
        }
        sub
    }

    /// Additive span only, without closing under the action.
    pub fn span(&self, gens: Vec<Vec<i64>>) -> Submodule {
        let gens = gens
            .into_iter()
            .map(|mut g| {
                self.reduce(&mut g);
                g
            })
            .collect();
        Submodule::new(self.orders(), gens)
    }

    /// `Σ_l V(a_l − 1)` as an additive span of `v_k(a_l − 1)`.
    pub fn augmentation_span(&self, v: &Submodule) -> Submodule {
        let mut gens = Vec::new();
        for g in v.generators() {
            for l in 0..self.acting.len() {
                gens.push(self.augment(g, l));
            }
        }
        self.span(gens)
    }

    /// `M(G − 1)` generated by `b_i(a_l − 1)` and closed under the action.
    pub fn augmentation_submodule(&self) -> Submodule {
        let whole = self.whole();
        let span = self.augmentation_span(&whole);
        self.close(span.gens)
    }

    /// `V(G − 1)` for a submodule `V`.
    pub fn augmentation_of(&self, v: &Submodule) -> Submodule {
        let span = self.augmentation_span(v);
        self.close(span.gens)
    }

    /// Submodule generated by carrier elements, or by their images
    /// `m(a_l − 1)` when `apply_augmentation` is set.
    pub fn submodule_generated(
        &self,
        elements: &[Permutation],
        apply_augmentation: bool,
    ) -> Result<Submodule> {
        let mut gens = Vec::new();
        for x in elements {
            let v = self.encode(x)?;
            if apply_augmentation {
                for l in 0..self.acting.len() {
                    gens.push(self.augment(&v, l));
                }
            } else {
                gens.push(v);
            }
        }
        Ok(self.close(gens))
    }

    /// `V = V(G − 1)`.
    pub fn is_perfect_module(&self, v: &Submodule) -> bool {
        self.augmentation_of(v).same_as(v)
    }

    /// The subgroup of the carrier corresponding to a submodule.
    pub fn to_group(&self, v: &Submodule) -> PermGroup {
        let gens = v.generators().iter().map(|g| self.decode(g)).collect();
        PermGroup::new(self.carrier.degree(), gens).unwrap()
    }

    /// Finds `q_1..q_m` in the carrier with `∏_l [q_l, a_l] = target`.
    pub fn solve_commutator_decomposition(&self, target: &Permutation) -> Result<Vec<Permutation>> {
        let t = self.encode(target)?;
        let aug = self.augmentation_submodule();
        if !aug.contains(&t) {
            return Err(Error::Precondition(format!("{target} is not in [A, G]")));
        }
        let n = self.rank();
        let m = self.acting.len();
        // Unknowns (q_1, …, q_m, z): Σ_l q_l (T_l − I) − z·D = t.
        let mut rows: IntMatrix = Vec::with_capacity(m * n + n);
        for l in 0..m {
            for i in 0..n {
                let mut r: Vec<i128> = self.action[l][i].iter().map(|&x| x as i128).collect();
                r[i] -= 1;
                rows.push(r);
            }
        }
        for (i, &d) in self.orders().iter().enumerate() {
            let mut r = vec![0i128; n];
            r[i] = -(d as i128);
            rows.push(r);
        }
        let tv: Vec<i128> = t.iter().map(|&x| x as i128).collect();
        let x = if n == 0 {
            Vec::new()
        } else {
            Smith::compute(&rows, n)
                .solve_left(&tv)
                .ok_or_else(|| Error::Internal("integer system unsolvable inside [A, G]".into()))?
        };
        let mut qs = Vec::with_capacity(m);
        for l in 0..m {
            let mut v: Vec<i64> = (0..n)
                .map(|i| x[l * n + i].rem_euclid(self.orders()[i] as i128) as i64)
                .collect();
            self.reduce(&mut v);
            qs.push(self.decode(&v));
        }
        let check = commutator_product(&qs, &self.acting);
        if check != *target {
            return Err(Error::Internal(format!(
                "decomposition evaluates to {check}, expected {target}"
            )));
        }
        Ok(qs)
    }
}

fn push(gens: &[Vec<i64>], g: Vec<i64>) -> Vec<Vec<i64>> {
    let mut v = gens.to_vec();
    v.push(g);
    v
}

/// `∏_l [q_l, a_l]` in the written order.
pub fn commutator_product(qs: &[Permutation], acting: &[Permutation]) -> Permutation {
    let degree = acting
        .first()
        .or(qs.first())
        .map(|p| p.degree())
        .unwrap_or(1);
    qs.iter()
        .zip(acting)
        .fold(Permutation::identity(degree), |acc, (q, a)| {
            acc.compose(&Permutation::commutator(q, a))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::DEFAULT_CAP;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(deg, s).unwrap()
    }

    fn a4_module() -> GModule {
        let a4 = catalog::a4();
        let acting = vec![p(4, "(1 2 3)"), p(4, "(1 2)(3 4)")];
        GModule::new(&a4, &catalog::v4(), &acting, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn v4_under_a4() {
        let m = a4_module();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.orders(), &[2, 2]);
        for x in m.carrier_elements() {
            assert_eq!(m.decode(&m.encode(&x).unwrap()), x);
            for (l, a) in m.acting().iter().enumerate() {
                let via_matrix = m.decode(&m.act(&m.encode(&x).unwrap(), l));
                assert_eq!(via_matrix, x.conjugate_by(a));
            }
        }
        assert_eq!(m.augmentation_submodule().order(), 4);
        assert!(m.is_perfect_module(&m.augmentation_submodule()));
    }

    #[test]
    fn trivial_action_gives_identity_matrices() {
        let v4 = catalog::v4();
        let m = GModule::new(&v4, &v4, v4.generators(), DEFAULT_CAP).unwrap();
        for l in 0..2 {
            for (i, row) in m.action_matrix(l).iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    assert_eq!(x, i64::from(i == j));
                }
            }
        }
        assert!(m.augmentation_submodule().is_zero());
    }

    #[test]
    fn generated_submodules() {
        let m = a4_module();
        let s = m.submodule_generated(&[p(4, "(1 2)(3 4)")], false).unwrap();
        assert_eq!(s.order(), 4);
        assert!(m.submodule_generated(&[], false).unwrap().is_zero());
        assert!(m.submodule_generated(&[p(4, "(1 2 3)")], false).is_err());
    }

    #[test]
    fn decomposition_example() {
        let m = a4_module();
        let target = p(4, "(1 3)(2 4)");
        let q = m.solve_commutator_decomposition(&target).unwrap();
        assert_eq!(commutator_product(&q, m.acting()), target);
        let id = m
            .solve_commutator_decomposition(&Permutation::identity(4))
            .unwrap();
        assert!(id.iter().all(|x| x.is_identity()));
    }

    #[test]
    fn rejects_non_normal_or_nonabelian() {
        let a4 = catalog::a4();
        let c3 = PermGroup::from_cycles(4, &["(1 2 3)"]).unwrap();
        assert!(GModule::new(&a4, &c3, a4.generators(), DEFAULT_CAP).is_err());
        assert!(GModule::new(&a4, &a4, a4.generators(), DEFAULT_CAP).is_err());
    }

    #[test]
    fn target_outside_augmentation() {
        let v4 = catalog::v4();
        let m = GModule::new(&v4, &v4, v4.generators(), DEFAULT_CAP).unwrap();
        assert!(matches!(
            m.solve_commutator_decomposition(&p(4, "(1 2)(3 4)")),
            Err(Error::Precondition(_))
        ));
    }
}
