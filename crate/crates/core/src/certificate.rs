//! Serialized construction certificates. Every permutation is stored in
//! 1-based cycle notation; product elements act on the disjoint union of the
//! family's domains, in family order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

pub const FORMAT_VERSION: &str = concat!("perfect-cover/", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupData {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
}

impl GroupData {
    pub fn from_group(name: &str, g: &PermGroup) -> Self {
        GroupData {
            name: name.to_string(),
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.to_string()).collect(),
        }
    }

    pub fn build(&self) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|s| Permutation::parse_cycles(self.degree, s))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(self.degree, gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: String,
    pub seed: u64,
    pub d: usize,
    pub k: usize,
    pub budget: usize,
    pub root: LevelCert,
    /// Outcome of the verifier run at construction time.
    pub verification: Vec<String>,
}

/// One level of the recursion: a family of groups of level at most `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCert {
    pub k: usize,
    pub family: Vec<GroupData>,
    /// Absent when `k = 0` or the family is empty; `Γ` is then trivial.
    pub step: Option<Box<LevelStep>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelStep {
    /// `quotient_images[j]`: images of the generators of `G_j` in `G_j/W_j`,
    /// which is `sublevel.family[j]`.
    pub quotient_images: Vec<Vec<String>>,
    pub sublevel: LevelCert,
    /// Marked generators `g_1..g_m` of the sublevel `Γ'`.
    pub marked: Vec<String>,
    /// `w_i` with `w_i(g_1..g_m) = g_i`.
    pub words: Vec<String>,
    /// `lifts[i][j] = a_{i,j}`.
    pub lifts: Vec<Vec<String>>,
    /// `k_residues[i][j] ∈ B_j`.
    pub k_residues: Vec<Vec<String>>,
    /// `s_residues[i][j] ∈ S_j`.
    pub s_residues: Vec<Vec<String>>,
    /// Coordinate basis of each `A_j`.
    pub modules: Vec<ModuleData>,
    /// `q_coordinates[i][j][l]`: coordinates of `q_{i,j,l}` in the basis of `A_j`.
    pub q_coordinates: Vec<Vec<Vec<Vec<i64>>>>,
    /// `[𝐪_{i,l}, 𝐚_t]` in the order `i, l, t`.
    pub q_generators: Vec<String>,
    pub cover: Option<CoverData>,
    /// `𝐦_{j'}^{𝐫_{l,j,t}}` in the order `l, j, t, j'`.
    pub t_generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleData {
    pub basis: Vec<String>,
    pub orders: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorData {
    /// Family index `j` with `M_i ≤ S_j`.
    pub component: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverData {
    pub factors: Vec<FactorData>,
    /// `tuples[i][j] = m_{i,j}`, in the domain of `G_{component}`.
    pub tuples: Vec<Vec<String>>,
    pub e: usize,
    /// Per factor, the index of the generator with least centralizer.
    pub pigeonhole: Vec<usize>,
    /// `conjugators[l][j][t][i] = r_{l,i,j,t}`.
    pub conjugators: Vec<Vec<Vec<Vec<String>>>>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn group_data_roundtrip() {
        let g = catalog::psl27();
        let data = GroupData::from_group("PSL27", &g);
        assert!(data.build().unwrap().same_group(&g));
    }

    #[test]
    fn json_errors_carry_line() {
        let err = Certificate::from_json("{\n  \"version\": 3\n}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
