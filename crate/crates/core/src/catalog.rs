//! Built-in permutation groups used by the CLI and the test-suites.

use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub provenance: &'static str,
    /// Documented order, checked against the computed order by the self-test.
    pub order: u128,
}

impl CatalogEntry {
    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.degree, self.generators.clone()).expect("catalog generators are valid")
    }
}

fn cycles(degree: usize, gens: &[&str]) -> Vec<Permutation> {
    gens.iter()
        .map(|s| Permutation::parse_cycles(degree, s).expect("catalog cycle notation"))
        .collect()
}

fn from_map(points: usize, f: impl Fn(usize) -> usize) -> Permutation {
    Permutation::from_images((0..points).map(f).collect()).expect("catalog map is a bijection")
}

pub fn a5() -> PermGroup {
    PermGroup::new(5, cycles(5, &["(1 2 3 4 5)", "(1 2 3)"])).unwrap()
}

pub fn a6() -> PermGroup {
    PermGroup::new(6, cycles(6, &["(1 2 3)", "(2 3 4 5 6)"])).unwrap()
}

pub fn s3() -> PermGroup {
    PermGroup::new(3, cycles(3, &["(1 2)", "(1 2 3)"])).unwrap()
}

pub fn v4() -> PermGroup {
    PermGroup::new(4, cycles(4, &["(1 2)(3 4)", "(1 3)(2 4)"])).unwrap()
}

pub fn a4() -> PermGroup {
    PermGroup::new(4, cycles(4, &["(1 2 3)", "(1 2)(3 4)"])).unwrap()
}

pub fn z4() -> PermGroup {
    PermGroup::new(4, cycles(4, &["(1 2 3 4)"])).unwrap()
}

pub fn a5xa5() -> PermGroup {
    PermGroup::new(10, a5xa5_generators()).unwrap()
}

fn a5xa5_generators() -> Vec<Permutation> {
    cycles(10, &["(1 2 3 4 5)", "(1 2 3)", "(6 7 8 9 10)", "(6 7 8)"])
}

/// Nonzero vectors of F_5², indexed `5a + b - 1`.
fn sl25_generators() -> Vec<Permutation> {
    let index = |a: usize, b: usize| 5 * a + b - 1;
    let act = |m: [[usize; 2]; 2]| {
        from_map(24, move |i| {
            let v = i + 1;
            let (x, y) = (v / 5, v % 5);
            let nx = (x * m[0][0] + y * m[1][0]) % 5;
            let ny = (x * m[0][1] + y * m[1][1]) % 5;
            index(nx, ny)
        })
    };
    vec![act([[1, 1], [0, 1]]), act([[0, 1], [4, 0]])]
}

pub fn sl25() -> PermGroup {
    PermGroup::new(24, sl25_generators()).unwrap()
}

/// Projective line over F_7: points 0..6 and infinity (index 7).
fn psl27_generators() -> Vec<Permutation> {
    const INF: usize = 7;
    let shift = from_map(8, |z| if z == INF { INF } else { (z + 1) % 7 });
    let inv7 = |z: usize| (1..7).find(|w| (z * w) % 7 == 1).unwrap();
    let flip = from_map(8, |z| match z {
        INF => 0,
        0 => INF,
        z => (7 - inv7(z)) % 7,
    });
    vec![shift, flip]
}

pub fn psl27() -> PermGroup {
    PermGroup::new(8, psl27_generators()).unwrap()
}

/// Affine group F_2⁴ ⋊ SL(2,4) on the 16 vectors of F_4², with F_4 = F_2[ω]
/// encoded as two bits `b1·ω + b0`.
fn affine_a5_generators() -> Vec<Permutation> {
    fn mul4(a: usize, b: usize) -> usize {
        let (a1, a0) = (a >> 1, a & 1);
        let (b1, b0) = (b >> 1, b & 1);
        let w2 = a1 & b1;
        let w1 = (a1 & b0) ^ (a0 & b1);
        let w0 = a0 & b0;
        // ω² = ω + 1
        ((w1 ^ w2) << 1) | (w0 ^ w2)
    }
    let act = |m: [[usize; 2]; 2]| {
        from_map(16, move |i| {
            let (x, y) = (i >> 2, i & 3);
            let nx = mul4(x, m[0][0]) ^ mul4(y, m[1][0]);
            let ny = mul4(x, m[0][1]) ^ mul4(y, m[1][1]);
            (nx << 2) | ny
        })
    };
    let omega = 2;
    let translation = from_map(16, |i| i ^ 1);
    vec![
        act([[1, 1], [0, 1]]),
        act([[1, omega], [0, 1]]),
        act([[1, 0], [1, 1]]),
        translation,
    ]
}

pub fn affine_a5() -> PermGroup {
    PermGroup::new(16, affine_a5_generators()).unwrap()
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "A5",
            degree: 5,
            generators: a5().generators().to_vec(),
            provenance: "alternating group on 5 points",
            order: 60,
        },
        CatalogEntry {
            name: "S3",
            degree: 3,
            generators: s3().generators().to_vec(),
            provenance: "symmetric group on 3 points",
            order: 6,
        },
        CatalogEntry {
            name: "V4",
            degree: 4,
            generators: v4().generators().to_vec(),
            provenance: "Klein four-group, regular on 4 points",
            order: 4,
        },
        CatalogEntry {
            name: "A4",
            degree: 4,
            generators: a4().generators().to_vec(),
            provenance: "alternating group on 4 points",
            order: 12,
        },
        CatalogEntry {
            name: "Z4",
            degree: 4,
            generators: z4().generators().to_vec(),
            provenance: "cyclic group of order 4, regular",
            order: 4,
        },
        CatalogEntry {
            name: "SL25",
            degree: 24,
            generators: sl25_generators(),
            provenance: "SL(2,5) acting on the 24 nonzero vectors of F_5^2",
            order: 120,
        },
        CatalogEntry {
            name: "PSL27",
            degree: 8,
            generators: psl27_generators(),
            provenance: "PSL(2,7) acting on the projective line over F_7",
            order: 168,
        },
        CatalogEntry {
            name: "A6",
            degree: 6,
            generators: a6().generators().to_vec(),
            provenance: "alternating group on 6 points",
            order: 360,
        },
        CatalogEntry {
            name: "2^4:A5",
            degree: 16,
            generators: affine_a5_generators(),
            provenance: "2^4:A5 affine on 16 points via A5 = SL(2,4) on F_2^4",
            order: 960,
        },
        CatalogEntry {
            name: "A5xA5",
            degree: 10,
            generators: a5xa5_generators(),
            provenance: "A5 x A5 on two disjoint 5-point blocks",
            order: 3600,
        },
    ]
}

pub fn get(name: &str) -> Option<CatalogEntry> {
    let key = name.to_ascii_uppercase();
    let key = match key.as_str() {
        "AFFA5" | "2^4A5" | "AGL" => "2^4:A5".to_string(),
        "SL(2,5)" => "SL25".to_string(),
        "PSL(2,7)" => "PSL27".to_string(),
        _ => key,
    };
    entries()
        .into_iter()
        .find(|e| e.name.eq_ignore_ascii_case(&key))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_orders() {
        for e in entries() {
            assert_eq!(e.group().order(), e.order, "{}", e.name);
        }
    }

    #[test]
    fn lookup_aliases() {
        assert_eq!(get("sl25").unwrap().name, "SL25");
        assert_eq!(get("AFFA5").unwrap().name, "2^4:A5");
        assert!(get("nope").is_none());
    }
}
