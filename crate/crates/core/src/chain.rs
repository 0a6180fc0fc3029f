//! Deterministic Schreier–Sims stabilizer chains.

use std::collections::HashSet;

use rand::Rng;

use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
    /// Schreier generators `(orbit position, generator index)` already known to sift.
    checked: HashSet<(usize, usize)>,
}

impl Level {
    fn new(degree: usize, base: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
            checked: HashSet::new(),
        }
    }

    fn push_gen(&mut self, g: Permutation) {
        self.gens.push(g);
        let new_gen = self.gens.len() - 1;
        // Existing transversal entries are kept, so checked pairs stay valid.
        let mut queue: Vec<usize> = Vec::new();
        for &b in &self.orbit {
            let c = self.gens[new_gen].image(b);
            if self.transversal[c].is_none() {
                let u = self.transversal[b]
                    .as_ref()
                    .unwrap()
                    .compose(&self.gens[new_gen]);
                self.transversal[c] = Some(u);
                queue.push(c);
            }
        }
        self.orbit.extend(queue.iter().copied());
        let mut head = self.orbit.len() - queue.len();
        while head < self.orbit.len() {
            let b = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let c = s.image(b);
                if self.transversal[c].is_none() {
                    let u = self.transversal[b].as_ref().unwrap().compose(s);
                    self.transversal[c] = Some(u);
                    self.orbit.push(c);
                }
            }
        }
    }
}

/// A base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
        }
    }

    /// A chain whose base begins with `prefix` (points may be redundant).
    pub fn with_base_prefix(degree: usize, prefix: &[usize]) -> Self {
        StabChain {
            degree,
            levels: prefix.iter().map(|&b| Level::new(degree, b)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Sifts `g` starting at level `from`. Returns the residue and the level at
    /// which sifting stopped (`depth()` when every level was passed).
    pub fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let b = h.image(level.base);
            match &level.transversal[b] {
                Some(u) => h = h.compose(&u.inverse()),
                None => return (h, i),
            }
        }
        let depth = self.levels.len();
        (h, depth)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, _) = self.strip(g, 0);
        h.is_identity()
    }

    /// Sifts through the first `levels` levels only, returning `y` in the
    /// group with `elem = x·y` where `x` fixes the first `levels` base points.
    pub(crate) fn sift_prefix(&self, elem: &Permutation, levels: usize) -> Option<Permutation> {
        let mut x = elem.clone();
        let mut y = Permutation::identity(self.degree);
        for level in self.levels.iter().take(levels) {
            let b = x.image(level.base);
            let u = level.transversal[b].as_ref()?;
            x = x.compose(&u.inverse());
            y = u.compose(&y);
        }
        Some(y)
    }

    /// Adds a generator, returning whether the group grew.
    pub fn add_generator(&mut self, g: &Permutation) -> bool {
        assert_eq!(g.degree(), self.degree, "generator degree mismatch");
        let (h, j) = self.strip(g, 0);
        if h.is_identity() {
            return false;
        }
        self.insert_residue(h, 0, j);
        self.complete(j);
        true
    }

    fn insert_residue(&mut self, h: Permutation, from: usize, to: usize) {
        if to == self.levels.len() {
            let b = h
                .first_moved_point()
                .expect("nontrivial residue moves some point");
            self.levels.push(Level::new(self.degree, b));
        }
        for l in from..=to {
            self.levels[l].push_gen(h.clone());
        }
    }

    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            let lvl = i as usize;
            match self.failing_schreier_generator(lvl) {
                Some((h, j)) => {
                    self.insert_residue(h, lvl + 1, j);
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn failing_schreier_generator(&mut self, lvl: usize) -> Option<(Permutation, usize)> {
        let mut pos = 0;
        while pos < self.levels[lvl].orbit.len() {
            let ngens = self.levels[lvl].gens.len();
            for s in 0..ngens {
                if self.levels[lvl].checked.contains(&(pos, s)) {
                    continue;
                }
                let level = &self.levels[lvl];
                let b = level.orbit[pos];
                let gen = &level.gens[s];
                let c = gen.image(b);
                let y = level.transversal[b]
                    .as_ref()
                    .unwrap()
                    .compose(gen)
                    .compose(&level.transversal[c].as_ref().unwrap().inverse());
                let (h, j) = self.strip(&y, lvl + 1);
                if !h.is_identity() {
                    return Some((h, j));
                }
                self.levels[lvl].checked.insert((pos, s));
            }
            pos += 1;
        }
        None
    }

    /// Visits every element exactly once, in a deterministic order.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        fn rec<F: FnMut(&Permutation)>(levels: &[Level], idx: usize, acc: &Permutation, f: &mut F) {
            if idx == 0 {
                f(acc);
                return;
            }
            let level = &levels[idx - 1];
            for &b in &level.orbit {
                let u = level.transversal[b].as_ref().unwrap();
                rec(levels, idx - 1, &acc.compose(u), f);
            }
        }
        let id = Permutation::identity(self.degree);
        rec(&self.levels, self.levels.len(), &id, &mut f);
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let b = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.compose(level.transversal[b].as_ref().unwrap());
        }
        g
    }

    /// All strong generators, deduplicated, in level order.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if seen.insert(g.clone()) {
                    out.push(g.clone());
                }
            }
        }
        out
    }
}
