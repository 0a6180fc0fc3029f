//! Commutator words for elements of a perfect group, and Gaschütz lifting of
//! quotient generators.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::structure::min_generators;
use crate::word::Word;

pub const DEFAULT_DEPTH_CAP: usize = 32;
pub const MAX_DEPTH_CAP: usize = 256;

/// Longest conjugating word tried when building commutator blocks.
const MAX_CONJUGATOR_LEN: usize = 3;

/// Groups up to this order get a full shortest-first tree; larger groups are
/// searched per target from both ends.
const FULL_TREE_LIMIT: u128 = 200_000;

/// Node budget for one bidirectional search, both sides together; lowered
/// for large degrees so the search stays within roughly half a gigabyte.
const BIDIRECTIONAL_NODE_LIMIT: usize = 1_500_000;
const BIDIRECTIONAL_BYTE_LIMIT: usize = 512 << 20;

fn node_limit(degree: usize) -> usize {
    // each node stores its element twice, plus map and bookkeeping overhead
    BIDIRECTIONAL_NODE_LIMIT.min(BIDIRECTIONAL_BYTE_LIMIT / (8 * degree + 96))
}

/// Search over products of commutator blocks `[x_i^±, x_j^±]^c`. Every word
/// it returns lies in `[F, F]`.
#[derive(Clone, Debug)]
pub struct WordSearch {
    alphabet: usize,
    gens: Vec<Permutation>,
    blocks: Vec<(Word, Permutation)>,
    block_inverses: Vec<Permutation>,
    depth_cap: usize,
    /// Full tree for small groups: element → (parent node, block index).
    tree: Option<Tree>,
}

#[derive(Clone, Debug)]
struct Tree {
    nodes: Vec<(Permutation, Option<(usize, usize)>)>,
    index: HashMap<Permutation, usize>,
    complete: bool,
}

/// One side of a bidirectional search.
struct Side {
    /// (element, parent, block, letters)
    nodes: Vec<(Permutation, usize, usize, usize)>,
    index: HashMap<Permutation, usize>,
    frontier: Vec<usize>,
}

impl Side {
    fn new(root: Permutation) -> Self {
        Side {
            nodes: vec![(root.clone(), usize::MAX, usize::MAX, 0)],
            index: HashMap::from([(root, 0)]),
            frontier: vec![0],
        }
    }

    fn path(&self, mut node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while node != 0 {
            out.push(self.nodes[node].2);
            node = self.nodes[node].1;
        }
        out
    }
}

impl WordSearch {
    /// Prepares a search within `depth_cap` letters. Small groups are
    /// enumerated up front.
    pub fn new(group: &PermGroup, gens: &[Permutation], depth_cap: usize) -> Result<Self> {
        if !group.is_perfect() {
            return Err(Error::Precondition("group is not perfect".into()));
        }
        for g in gens {
            if !group.is_member(g)? {
                return Err(Error::Precondition(format!(
                    "generator {g} is not in the group"
                )));
            }
        }
        if PermGroup::new(group.degree(), gens.to_vec())?.order() != group.order() {
            return Err(Error::Precondition(
                "the given elements do not generate the group".into(),
            ));
        }
        let blocks = commutator_blocks(group, gens)?;
        let block_inverses = blocks.iter().map(|b| b.1.inverse()).collect();
        let mut search = WordSearch {
            alphabet: gens.len(),
            gens: gens.to_vec(),
            blocks,
            block_inverses,
            depth_cap,
            tree: None,
        };
        if group.order() <= FULL_TREE_LIMIT {
            search.tree = Some(search.grow(group.identity(), group.order()));
        }
        Ok(search)
    }

    /// Doubles the depth cap from the default up to the maximum until every
    /// element is reachable. Large groups use the maximum cap directly.
    pub fn exhaustive(group: &PermGroup, gens: &[Permutation]) -> Result<Self> {
        if group.order() > FULL_TREE_LIMIT {
            return WordSearch::new(group, gens, MAX_DEPTH_CAP);
        }
        let mut cap = DEFAULT_DEPTH_CAP;
        loop {
            let s = WordSearch::new(group, gens, cap)?;
            if s.is_complete() || cap >= MAX_DEPTH_CAP {
                return Ok(s);
            }
            cap *= 2;
        }
    }

    /// Bucketed shortest-path growth by letter count.
    fn grow(&self, id: Permutation, order: u128) -> Tree {
        let mut nodes = vec![(id.clone(), None)];
        let mut index = HashMap::from([(id, 0)]);
        let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); self.depth_cap + 1];
        let mut dist = vec![0usize];
        buckets[0].push(0);
        for len in 0..=self.depth_cap {
            let mut k = 0;
            while k < buckets[len].len() {
                let node = buckets[len][k];
                k += 1;
                if dist[node] != len {
                    continue;
                }
                for b in 0..self.blocks.len() {
                    let nl = len + self.blocks[b].0.len();
                    if nl > self.depth_cap {
                        continue;
                    }
                    let y = nodes[node].0.compose(&self.blocks[b].1);
                    if !index.contains_key(&y) {
                        let id = nodes.len();
                        index.insert(y.clone(), id);
                        nodes.push((y, Some((node, b))));
                        dist.push(nl);
                        buckets[nl].push(id);
                    }
                }
            }
        }
        let complete = nodes.len() as u128 == order;
        Tree {
            nodes,
            index,
            complete,
        }
    }

    pub fn depth_cap(&self) -> usize {
        self.depth_cap
    }

    /// Whether every group element is known to have a word within the cap.
    /// Always false for groups searched per target.
    pub fn is_complete(&self) -> bool {
        self.tree.as_ref().is_some_and(|t| t.complete)
    }

    fn not_found(&self, target: &Permutation) -> Error {
        Error::Search(format!(
            "no commutator word for {target} within {} letters; raise the depth cap",
            self.depth_cap
        ))
    }

    fn tree_blocks(&self, tree: &Tree, target: &Permutation) -> Result<Vec<usize>> {
        let mut node = *tree
            .index
            .get(target)
            .ok_or_else(|| self.not_found(target))?;
        let mut parts = Vec::new();
        while let Some((parent, b)) = tree.nodes[node].1 {
            parts.push(b);
            node = parent;
        }
        parts.reverse();
        Ok(parts)
    }

    /// Layered search from the identity (right multiplication by blocks) and
    /// from the target (right multiplication by inverse blocks), always
    /// extending the smaller frontier.
    fn bidirectional_blocks(&self, target: &Permutation) -> Result<Vec<usize>> {
        let id = Permutation::identity(target.degree());
        let limit = node_limit(target.degree());
        let mut fwd = Side::new(id);
        let mut bwd = Side::new(target.clone());
        if let Some(&n) = fwd.index.get(target) {
            return Ok(fwd.path(n));
        }
        loop {
            if fwd.frontier.is_empty() && bwd.frontier.is_empty() {
                return Err(self.not_found(target));
            }
            let forward = !fwd.frontier.is_empty()
                && (bwd.frontier.is_empty() || fwd.frontier.len() <= bwd.frontier.len());
            let (side, other, mults) = if forward {
                (
                    &mut fwd,
                    &bwd,
                    self.blocks.iter().map(|b| &b.1).collect::<Vec<_>>(),
                )
            } else {
                (
                    &mut bwd,
                    &fwd,
                    self.block_inverses.iter().collect::<Vec<_>>(),
                )
            };
            let frontier = std::mem::take(&mut side.frontier);
            let mut meet = None;
            'layer: for node in frontier {
                let len = side.nodes[node].3;
                for (b, m) in mults.iter().enumerate() {
                    let nl = len + self.blocks[b].0.len();
                    if nl > self.depth_cap {
                        continue;
                    }
                    let y = side.nodes[node].0.compose(m);
                    if side.index.contains_key(&y) {
                        continue;
                    }
                    if side.nodes.len() + other.nodes.len() >= limit {
                        return Err(Error::Search(format!(
                            "commutator word search for {target} exceeded {limit} nodes"
                        )));
                    }
                    let id = side.nodes.len();
                    side.index.insert(y.clone(), id);
                    side.nodes.push((y.clone(), node, b, nl));
                    side.frontier.push(id);
                    if let Some(&o) = other.index.get(&y) {
                        if nl + other.nodes[o].3 <= self.depth_cap {
                            meet = Some((id, o));
                            break 'layer;
                        }
                    }
                }
            }
            if let Some((mine, theirs)) = meet {
                let (f, bk) = if forward {
                    (mine, theirs)
                } else {
                    (theirs, mine)
                };
                let mut parts = fwd.path(f);
                parts.reverse();
                parts.extend(bwd.path(bk));
                return Ok(parts);
            }
        }
    }

    /// A word `w ∈ [F, F]` with `w(gens) = target`.
    pub fn word_for(&self, target: &Permutation) -> Result<Word> {
        let parts = match &self.tree {
            Some(tree) => self.tree_blocks(tree, target)?,
            None => self.bidirectional_blocks(target)?,
        };
        let mut w = Word::empty(self.alphabet);
        for b in parts {
            w = w.concat(&self.blocks[b].0);
        }
        assert!(w.in_commutator_subgroup());
        assert_eq!(
            &w.evaluate(&self.gens)?,
            target,
            "word search returned a wrong word"
        );
        Ok(w)
    }
}

/// Blocks `[x_i^a, x_j^b]` and their conjugates by short words, extended until
/// they generate the group. Deduplicated by value, shortest word kept.
fn commutator_blocks(group: &PermGroup, gens: &[Permutation]) -> Result<Vec<(Word, Permutation)>> {
    let m = gens.len();
    let mut base: Vec<Word> = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            for a in [1i8, -1] {
                for b in [1i8, -1] {
                    base.push(Word::commutator(
                        &Word::letter(m, i, a),
                        &Word::letter(m, j, b),
                    ));
                }
            }
        }
    }
    let mut blocks: Vec<(Word, Permutation)> = Vec::new();
    let mut seen: HashMap<Permutation, usize> = HashMap::new();
    let mut add = |blocks: &mut Vec<(Word, Permutation)>, w: Word| -> Result<()> {
        let p = w.evaluate(gens)?;
        if p.is_identity() {
            return Ok(());
        }
        match seen.get(&p) {
            Some(&i) if blocks[i].0.len() <= w.len() => {}
            Some(&i) => blocks[i].0 = w,
            None => {
                seen.insert(p.clone(), blocks.len());
                blocks.push((w, p));
            }
        }
        Ok(())
    };
    for w in &base {
        add(&mut blocks, w.clone())?;
    }
    let generated = |blocks: &[(Word, Permutation)]| {
        PermGroup::new(group.degree(), blocks.iter().map(|b| b.1.clone()).collect())
            .map(|h| h.order() == group.order())
    };
    let mut conjugators = vec![Word::empty(m)];
    for _ in 0..MAX_CONJUGATOR_LEN {
        if group.is_trivial() || generated(&blocks)? {
            return Ok(blocks);
        }
        let mut next = Vec::new();
        for c in &conjugators {
            for i in 0..m {
                for e in [1i8, -1] {
                    let w = c.concat(&Word::letter(m, i, e));
                    if w.len() > c.len() {
                        next.push(w);
                    }
                }
            }
        }
        for c in &next {
            for w in &base {
                add(&mut blocks, w.conjugate_by(c))?;
            }
        }
        conjugators = next;
    }
    if group.is_trivial() || generated(&blocks)? {
        Ok(blocks)
    } else {
        Err(Error::Search(
            "commutator blocks do not generate the group".into(),
        ))
    }
}

/// A commutator word for `target` in the generators, searched within
/// `depth_cap` letters.
pub fn commutator_word_for(
    group: &PermGroup,
    gens: &[Permutation],
    target: &Permutation,
    depth_cap: usize,
) -> Result<Word> {
    if !group.is_perfect() {
        return Err(Error::Precondition("group is not perfect".into()));
    }
    if !group.is_member(target)? {
        return Err(Error::Precondition(format!("{target} is not in the group")));
    }
    WordSearch::new(group, gens, depth_cap)?.word_for(target)
}

const EXHAUSTIVE_LIMIT: u128 = 1_000_000;
const RANDOM_TRIALS: usize = 100_000;

fn generates(g: &PermGroup, tuple: &[Permutation]) -> bool {
    let mut h = PermGroup::trivial(g.degree());
    for x in tuple {
        h.add_generator(x.clone());
    }
    h.order() == g.order()
}

/// Replaces each `a_i` by some `b_i ∈ a_i N` so that the `b_i` generate `G`.
pub fn gaschutz_lift(
    g: &PermGroup,
    n: &PermGroup,
    reps: &[Permutation],
    seed: u64,
    cap: usize,
) -> Result<Vec<Permutation>> {
    if !n.is_normal_in(g) {
        return Err(Error::Precondition("N is not normal in G".into()));
    }
    for a in reps {
        if !g.is_member(a)? {
            return Err(Error::Precondition(format!("{a} is not in G")));
        }
    }
    if n.join_with(reps).order() != g.order() {
        return Err(Error::Precondition("the cosets do not generate G/N".into()));
    }
    let k = reps.len();
    if generates(g, reps) {
        return Ok(reps.to_vec());
    }
    if !min_generators(g, k, seed, cap)?.at_most(k) {
        return Err(Error::Precondition(format!(
            "G is not known to be {k}-generated"
        )));
    }
    let found = lift_search(g, n, reps, seed, cap)?;
    if let Some(b) = &found {
        for (bi, ai) in b.iter().zip(reps) {
            assert!(n.contains(&bi.compose(&ai.inverse())));
        }
        assert!(generates(g, b));
    }
    found.ok_or_else(|| {
        Error::Search(format!(
            "no generating lift in {RANDOM_TRIALS} random trials"
        ))
    })
}

fn lift_search(
    g: &PermGroup,
    n: &PermGroup,
    reps: &[Permutation],
    seed: u64,
    cap: usize,
) -> Result<Option<Vec<Permutation>>> {
    let k = reps.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = n.order();
    let total = size.checked_pow(k as u32);
    let candidate = |digits: &[Permutation]| -> Vec<Permutation> {
        reps.iter().zip(digits).map(|(a, x)| a.compose(x)).collect()
    };
    if let Some(total) = total.filter(|&t| t <= EXHAUSTIVE_LIMIT) {
        let elems = n.elements(cap)?;
        let mut order: Vec<u32> = (0..total as u32).collect();
        order.shuffle(&mut rng);
        for code in order {
            let mut c = code as u128;
            let digits: Vec<Permutation> = (0..k)
                .map(|_| {
                    let d = (c % size) as usize;
                    c /= size;
                    elems[d].clone()
                })
                .collect();
            let b = candidate(&digits);
            if generates(g, &b) {
                return Ok(Some(b));
            }
        }
        return Err(Error::Internal(
            "exhaustive lift search failed although the hypotheses hold".into(),
        ));
    }
    for _ in 0..RANDOM_TRIALS {
        let digits: Vec<Permutation> = (0..k).map(|_| n.random_element(&mut rng)).collect();
        let b = candidate(&digits);
        if generates(g, &b) {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::DEFAULT_CAP;

    fn p(deg: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(deg, s).unwrap()
    }

    #[test]
    fn identity_gets_empty_word() {
        let g = catalog::a5();
        let gens = vec![p(5, "(1 2 3 4 5)"), p(5, "(1 2 3)")];
        let w = commutator_word_for(&g, &gens, &g.identity(), DEFAULT_DEPTH_CAP).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn three_cycle_word() {
        let g = catalog::a5();
        let gens = vec![p(5, "(1 2 3 4 5)"), p(5, "(1 2 3)")];
        let w = commutator_word_for(&g, &gens, &p(5, "(1 2 3)"), DEFAULT_DEPTH_CAP).unwrap();
        assert!(w.in_commutator_subgroup());
        assert!(w.len() <= 24);
        assert_eq!(w.evaluate(&gens).unwrap(), p(5, "(1 2 3)"));
    }

    #[test]
    fn every_a5_element_reachable() {
        let g = catalog::a5();
        let gens = vec![p(5, "(1 2 3 4 5)"), p(5, "(1 2 3)")];
        let s = WordSearch::exhaustive(&g, &gens).unwrap();
        assert!(s.is_complete());
        for x in g.elements(DEFAULT_CAP).unwrap() {
            assert_eq!(s.word_for(&x).unwrap().evaluate(&gens).unwrap(), x);
        }
    }

    #[test]
    fn large_group_uses_bidirectional_search() {
        let gens = vec![
            p(15, "(1 2 3 4 5)(6 7 8)(11 12 13 14 15)"),
            p(15, "(1 2 3)(6 7 8 9 10)(11 12 13)"),
            p(15, "(1 2 3)(6 7 8)(11 12 14)"),
        ];
        let g = PermGroup::new(15, gens.clone()).unwrap();
        assert_eq!(g.order(), 216_000);
        let s = WordSearch::exhaustive(&g, &gens).unwrap();
        assert!(!s.is_complete());
        for t in [
            g.identity(),
            gens[0].clone(),
            p(15, "(1 2 3)(6 7 8)(11 12 13)"),
        ] {
            let w = s.word_for(&t).unwrap();
            assert_eq!(w.evaluate(&gens).unwrap(), t);
        }
    }

    #[test]
    fn imperfect_group_rejected() {
        let g = catalog::z4();
        let gens = vec![p(4, "(1 2 3 4)")];
        let err = commutator_word_for(&g, &gens, &gens[0], DEFAULT_DEPTH_CAP).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn tiny_cap_reports_search_error() {
        let g = catalog::a5();
        let gens = vec![p(5, "(1 2 3 4 5)"), p(5, "(1 2 3)")];
        let s = WordSearch::new(&g, &gens, 4).unwrap();
        assert!(!s.is_complete());
        let missing = g
            .elements(DEFAULT_CAP)
            .unwrap()
            .into_iter()
            .find(|x| s.word_for(x).is_err())
            .unwrap();
        assert!(matches!(s.word_for(&missing), Err(Error::Search(_))));
    }

    #[test]
    fn s3_lift() {
        let g = catalog::s3();
        let n = PermGroup::from_cycles(3, &["(1 2 3)"]).unwrap();
        let reps = vec![p(3, "(1 2)"), Permutation::identity(3)];
        let b = gaschutz_lift(&g, &n, &reps, 1, DEFAULT_CAP).unwrap();
        assert!(generates(&g, &b));
        for (bi, ai) in b.iter().zip(&reps) {
            assert!(n.contains(&bi.compose(&ai.inverse())));
        }
    }

    #[test]
    fn generating_reps_unchanged() {
        let g = catalog::sl25();
        let z = g.center(DEFAULT_CAP).unwrap();
        let reps = g.generators().to_vec();
        assert_eq!(gaschutz_lift(&g, &z, &reps, 0, DEFAULT_CAP).unwrap(), reps);
    }

    #[test]
    fn trivial_cosets_rejected() {
        let g = catalog::s3();
        let n = PermGroup::from_cycles(3, &["(1 2 3)"]).unwrap();
        let reps = vec![Permutation::identity(3); 2];
        assert!(matches!(
            gaschutz_lift(&g, &n, &reps, 0, DEFAULT_CAP),
            Err(Error::Precondition(_))
        ));
    }
}
