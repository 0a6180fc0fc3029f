//! Coordinates on a finite abelian permutation group, `A ≅ ⊕ Z/d_i`,
//! obtained from the Smith form of the relation lattice of its generators.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::snf::{unimodular_inverse, vec_mul, IntMatrix, Smith};

#[derive(Clone, Debug)]
pub struct AbelianBasis {
    degree: usize,
    /// Independent basis elements and their orders (all > 1).
    basis: Vec<Permutation>,
    orders: Vec<u64>,
    /// Element → coordinates over the original generators.
    table: HashMap<Permutation, Vec<i128>>,
    /// Change of coordinates: generator coordinates `x` ↦ `x·V`.
    v: IntMatrix,
    /// Columns of `x·V` that survive (invariant > 1).
    kept: Vec<usize>,
}

impl AbelianBasis {
    pub fn new(group: &PermGroup, cap: usize) -> Result<Self> {
        if !group.is_abelian() {
            return Err(Error::Precondition("group is not abelian".into()));
        }
        if group.order() > cap as u128 {
            return Err(Error::Size {
                order: group.order(),
                cap,
            });
        }
        let degree = group.degree();
        let gens = group.essential_generators();
        let r = gens.len();
        let id = Permutation::identity(degree);
        let mut table: HashMap<Permutation, Vec<i128>> = HashMap::new();
        table.insert(id.clone(), vec![0; r]);
        let mut order_list = vec![id];
        let mut relations: IntMatrix = Vec::new();
        let mut head = 0;
        while head < order_list.len() {
            let x = order_list[head].clone();
            head += 1;
            let xv = table[&x].clone();
            for (i, g) in gens.iter().enumerate() {
                let y = x.compose(g);
                let mut yv = xv.clone();
                yv[i] += 1;
                match table.get(&y) {
                    Some(prev) => {
                        let rel: Vec<i128> = yv.iter().zip(prev).map(|(a, b)| a - b).collect();
                        if rel.iter().any(|&c| c != 0) {
                            relations.push(rel);
                        }
                    }
                    None => {
                        table.insert(y.clone(), yv);
                        order_list.push(y);
                    }
                }
            }
        }
        for (i, g) in gens.iter().enumerate() {
            let mut rel = vec![0i128; r];
            rel[i] = g.order() as i128;
            relations.push(rel);
        }
        relations.sort();
        relations.dedup();

        let smith = Smith::compute(&relations, r);
        if smith.rank != r {
            return Err(Error::Internal(
                "relation lattice is not of full rank".into(),
            ));
        }
        let v_inv = unimodular_inverse(&smith.v);
        let mut basis = Vec::new();
        let mut orders = Vec::new();
        let mut kept = Vec::new();
        for i in 0..r {
            let d = smith.diagonal[i];
            if d == 1 {
                continue;
            }
            let mut b = Permutation::identity(degree);
            for (k, g) in gens.iter().enumerate() {
                let e = v_inv[i][k].rem_euclid(g.order() as i128) as i64;
                b = b.compose(&g.pow(e));
            }
            basis.push(b);
            orders.push(d as u64);
            kept.push(i);
        }
        let total: u128 = orders.iter().map(|&d| d as u128).product();
        if total != group.order() {
            return Err(Error::Internal(format!(
                "invariants multiply to {total}, group order is {}",
                group.order()
            )));
        }
        Ok(AbelianBasis {
            degree,
            basis,
            orders,
            table,
            v: smith.v,
            kept,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Permutation] {
        &self.basis
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.table.contains_key(x)
    }

    /// Coordinates of `x` in `⊕ Z/d_i`, reduced into `0..d_i`.
    pub fn encode(&self, x: &Permutation) -> Result<Vec<i64>> {
        let gx = self
            .table
            .get(x)
            .ok_or_else(|| Error::Precondition(format!("{x} is not in the abelian group")))?;
        let y = vec_mul(gx, &self.v);
        Ok(self
            .kept
            .iter()
            .zip(&self.orders)
            .map(|(&k, &d)| y[k].rem_euclid(d as i128) as i64)
            .collect())
    }

    pub fn decode(&self, coords: &[i64]) -> Permutation {
        assert_eq!(coords.len(), self.basis.len());
        let mut x = Permutation::identity(self.degree);
        for ((b, &d), &c) in self.basis.iter().zip(&self.orders).zip(coords) {
            x = x.compose(&b.pow(c.rem_euclid(d as i64)));
        }
        x
    }

    /// All elements (the carrier is enumerated anyway).
    pub fn elements(&self) -> Vec<Permutation> {
        let mut v: Vec<Permutation> = self.table.keys().cloned().collect();
        v.sort();
        v
    }
}

/// Abelian invariants `d_1 | d_2 | …` of an abelian group.
pub fn abelian_invariants(group: &PermGroup, cap: usize) -> Result<Vec<u64>> {
    Ok(AbelianBasis::new(group, cap)?.orders().to_vec())
}
