//! Independent re-verification of a certificate from its serialized data.
//!
//! Only the group kernel and the structure analysis are shared with the
//! construction; every witness is re-parsed and re-checked. Verification
//! stops at the first failing step, which names the claim that broke.

use std::fmt;

use crate::certificate::{Certificate, CoverData, LevelCert, LevelStep, FORMAT_VERSION};
use crate::error::Result;
use crate::group::{conjugation_closure, PermGroup, DEFAULT_CAP};
use crate::hom::Homomorphism;
use crate::perm::Permutation;
use crate::product::DirectProduct;
use crate::structure::{
    is_in_y, is_nonabelian_simple, split_star_trivial, star_terms, StructureOptions,
};
use crate::word::Word;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Verify even when the certificate was written by another version.
    pub force: bool,
    pub cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            force: false,
            cap: DEFAULT_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepResult {
    pub level: usize,
    pub step: &'static str,
    pub ok: bool,
    pub detail: String,
}

impl fmt::Display for StepResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.ok { "ok" } else { "FAIL" };
        write!(f, "[{mark}] level {}: {}", self.level, self.step)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub steps: Vec<StepResult>,
}

impl VerificationReport {
    pub fn valid(&self) -> bool {
        !self.steps.is_empty() && self.steps.iter().all(|s| s.ok)
    }

    pub fn failure(&self) -> Option<&StepResult> {
        self.steps.iter().find(|s| !s.ok)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "{s}")?;
        }
        write!(
            f,
            "{}",
            if self.valid() {
                "certificate valid"
            } else {
                "certificate INVALID"
            }
        )
    }
}

type Check<T> = std::result::Result<(T, String), String>;

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

struct Verifier<'a> {
    cert: &'a Certificate,
    opts: &'a VerifyOptions,
    steps: Vec<StepResult>,
}

fn parse(degree: usize, s: &str) -> std::result::Result<Permutation, String> {
    Permutation::parse_cycles(degree, s).map_err(err)
}

fn parse_all(degree: usize, v: &[String]) -> std::result::Result<Vec<Permutation>, String> {
    v.iter().map(|s| parse(degree, s)).collect()
}

fn generated(degree: usize, gens: &[Permutation]) -> std::result::Result<PermGroup, String> {
    PermGroup::new(degree, gens.to_vec()).map_err(err)
}

/// Everything about one factor that later steps need.
struct Factor {
    g: PermGroup,
    w: PermGroup,
    hom: Option<Homomorphism>,
    a: PermGroup,
    s: PermGroup,
    b: PermGroup,
}

impl<'a> Verifier<'a> {
    fn step<T>(
        &mut self,
        level: usize,
        step: &'static str,
        f: impl FnOnce() -> Check<T>,
    ) -> Option<T> {
        match f() {
            Ok((v, detail)) => {
                self.steps.push(StepResult {
                    level,
                    step,
                    ok: true,
                    detail,
                });
                Some(v)
            }
            Err(detail) => {
                self.steps.push(StepResult {
                    level,
                    step,
                    ok: false,
                    detail,
                });
                None
            }
        }
    }

    fn structure_options(&self, k: usize) -> StructureOptions {
        StructureOptions {
            max_depth: k + 1,
            cap: self.opts.cap,
            generator_bound: self.cert.d.max(1),
            seed: self.cert.seed,
        }
    }

    /// Verifies a level and returns its `Γ`.
    fn level(&mut self, lc: &LevelCert, k: usize) -> Option<PermGroup> {
        let d = self.cert.d;
        let sopts = self.structure_options(k);
        let groups = self.step(k, "family_membership", || {
            if lc.k != k {
                return Err(format!("level records k = {}, expected {k}", lc.k));
            }
            let mut out = Vec::new();
            for gd in &lc.family {
                let g = gd.build().map_err(err)?;
                let y = is_in_y(&g, d, k, &sopts).map_err(err)?;
                if !y.member {
                    return Err(format!("{} is not in Y({d},{k}): {}", gd.name, y.reason));
                }
                out.push(g);
            }
            Ok((out, format!("{} groups in Y({d},{k})", lc.family.len())))
        })?;
        let degree = groups.iter().map(|g| g.degree()).sum::<usize>().max(1);
        let Some(step) = &lc.step else {
            return self.step(k, "trivial_level", || {
                if k != 0 && !groups.is_empty() {
                    return Err("construction data missing for a nontrivial level".into());
                }
                Ok((PermGroup::trivial(degree), "Γ is trivial".into()))
            });
        };
        self.nontrivial_level(step, groups, k)
    }

    fn nontrivial_level(
        &mut self,
        step: &LevelStep,
        groups: Vec<PermGroup>,
        k: usize,
    ) -> Option<PermGroup> {
        let cap = self.opts.cap;
        let d = self.cert.d;
        let n = groups.len();
        let mut factors: Vec<Factor> = self.step(k, "quotient_maps", || {
            if k == 0 || n == 0 {
                return Err("construction data present on a trivial level".into());
            }
            if step.quotient_images.len() != n || step.sublevel.family.len() != n {
                return Err("quotient data does not match the family".into());
            }
            let mut out = Vec::new();
            for (j, g) in groups.iter().enumerate() {
                let terms = star_terms(g, k, cap).map_err(err)?;
                let w = terms
                    .get(k - 1)
                    .cloned()
                    .unwrap_or_else(|| PermGroup::trivial(g.degree()));
                let q = step.sublevel.family[j].build().map_err(err)?;
                let images = parse_all(q.degree(), &step.quotient_images[j])?;
                let hom = Homomorphism::from_images(g, &q, images).map_err(err)?;
                if !hom.is_surjective() {
                    return Err(format!("map of factor {} is not surjective", j + 1));
                }
                if !hom.kernel().same_group(&w) {
                    return Err(format!("kernel of factor {} is not W", j + 1));
                }
                out.push(Factor {
                    g: g.clone(),
                    w,
                    hom: Some(hom),
                    a: PermGroup::trivial(1),
                    s: PermGroup::trivial(1),
                    b: PermGroup::trivial(1),
                });
            }
            Ok((out, "G_j/W_j with W_j the (k−1)-th series term".into()))
        })?;

        let sub_gamma = self.level(&step.sublevel, k - 1)?;
        self.step(k, "sublevel", || {
            Ok(((), format!("|Γ'| = {}", sub_gamma.order())))
        })?;

        let marked = self.step(k, "marked_generators", || {
            let m = parse_all(sub_gamma.degree(), &step.marked)?;
            if m.len() < d.max(1) {
                return Err(format!("{} marked generators, need at least {d}", m.len()));
            }
            if m.iter().any(|x| !sub_gamma.contains(x)) {
                return Err("a marked generator is outside Γ'".into());
            }
            if generated(sub_gamma.degree(), &m)?.order() != sub_gamma.order() {
                return Err("marked generators do not generate Γ'".into());
            }
            Ok((m, String::new()))
        })?;
        let m = marked.len();

        let words = self.step(k, "words_in_commutator_subgroup", || {
            if step.words.len() != m {
                return Err(format!("{} words for {m} generators", step.words.len()));
            }
            let mut out = Vec::new();
            for (i, s) in step.words.iter().enumerate() {
                let w = Word::parse(m, s).map_err(err)?;
                if !w.in_commutator_subgroup() {
                    return Err(format!(
                        "w_{} = {w} has exponent sums {:?}",
                        i + 1,
                        w.exponent_sums()
                    ));
                }
                out.push(w);
            }
            Ok((out, String::new()))
        })?;
        self.step(k, "words_evaluate", || {
            for (i, w) in words.iter().enumerate() {
                if w.evaluate(&marked).map_err(err)? != marked[i] {
                    return Err(format!("w_{} does not evaluate to g_{}", i + 1, i + 1));
                }
            }
            Ok(((), String::new()))
        })?;

        let mut sub_offsets = Vec::new();
        let mut off = 0;
        for f in &factors {
            sub_offsets.push(off);
            off += f.hom.as_ref().unwrap().target().degree();
        }
        let lifts = self.step(k, "lifts_match_quotient", || {
            if step.lifts.len() != m || step.lifts.iter().any(|r| r.len() != n) {
                return Err("lift table has the wrong shape".into());
            }
            let mut out = vec![Vec::new(); m];
            for i in 0..m {
                for (j, f) in factors.iter().enumerate() {
                    let a = parse(f.g.degree(), &step.lifts[i][j])?;
                    let hom = f.hom.as_ref().unwrap();
                    let image = hom.image(&a).map_err(err)?;
                    let want = marked[i].restricted(sub_offsets[j], hom.target().degree());
                    if image != want {
                        return Err(format!(
                            "a_{{{},{}}} does not map to f_{}(g_{})",
                            i + 1,
                            j + 1,
                            j + 1,
                            i + 1
                        ));
                    }
                    out[i].push(a);
                }
            }
            Ok((out, String::new()))
        })?;
        self.step(k, "lifts_generate", || {
            for (j, f) in factors.iter().enumerate() {
                let a: Vec<Permutation> = (0..m).map(|i| lifts[i][j].clone()).collect();
                if generated(f.g.degree(), &a)?.order() != f.g.order() {
                    return Err(format!("lifts do not generate G_{}", j + 1));
                }
            }
            Ok(((), String::new()))
        })?;

        self.step(k, "split_subgroups", || {
            for f in factors.iter_mut() {
                let (a, s) = split_star_trivial(&f.w, cap).map_err(err)?;
                f.b = f.g.commutator_subgroup(&a, &f.g).map_err(err)?;
                f.a = a;
                f.s = s;
            }
            Ok(((), String::new()))
        })?;

        let (k_res, s_res) = self.step(k, "residue_identity", || {
            let shape = |t: &Vec<Vec<String>>| t.len() == m && t.iter().all(|r| r.len() == n);
            if !shape(&step.k_residues) || !shape(&step.s_residues) {
                return Err("residue tables have the wrong shape".into());
            }
            let mut ks = vec![Vec::new(); m];
            let mut ss = vec![Vec::new(); m];
            for (j, f) in factors.iter().enumerate() {
                let a: Vec<Permutation> = (0..m).map(|i| lifts[i][j].clone()).collect();
                for i in 0..m {
                    let kk = parse(f.g.degree(), &step.k_residues[i][j])?;
                    let s = parse(f.g.degree(), &step.s_residues[i][j])?;
                    let lhs = a[i].compose(&words[i].evaluate(&a).map_err(err)?.inverse());
                    if lhs != kk.compose(&s) {
                        return Err(format!(
                            "a_{0} w_{0}(a)⁻¹ ≠ k_{0} s_{0} in factor {1}",
                            i + 1,
                            j + 1
                        ));
                    }
                    if !f.s.contains(&s) {
                        return Err(format!("s_{{{},{}}} is not in S_{}", i + 1, j + 1, j + 1));
                    }
                    ks[i].push(kk);
                    ss[i].push(s);
                }
            }
            Ok(((ks, ss), String::new()))
        })?;
        self.step(k, "residues_in_B", || {
            for (j, f) in factors.iter().enumerate() {
                for (i, row) in k_res.iter().enumerate() {
                    if !f.b.contains(&row[j]) {
                        return Err(format!("k_{{{},{}}} is not in B_{}", i + 1, j + 1, j + 1));
                    }
                }
            }
            Ok(((), String::new()))
        })?;

        let product = DirectProduct::new(groups.clone()).ok()?;
        let delta: Vec<Permutation> = lifts.iter().map(|a| product.from_parts(a)).collect();

        let q_parts = self.step(k, "q_decomposition", || {
            if step.modules.len() != n {
                return Err("module data does not match the family".into());
            }
            let mut bases = Vec::new();
            for (j, f) in factors.iter().enumerate() {
                let md = &step.modules[j];
                let basis = parse_all(f.g.degree(), &md.basis)?;
                if basis.len() != md.orders.len() {
                    return Err(format!("basis of A_{} has mismatched orders", j + 1));
                }
                for (b, &o) in basis.iter().zip(&md.orders) {
                    if !f.a.contains(b) || b.order() != o {
                        return Err(format!("basis element {b} of A_{} is invalid", j + 1));
                    }
                }
                if generated(f.g.degree(), &basis)?.order() != f.a.order()
                    || md.orders.iter().map(|&o| o as u128).product::<u128>() != f.a.order()
                {
                    return Err(format!("basis does not describe A_{}", j + 1));
                }
                bases.push(basis);
            }
            if step.q_coordinates.len() != m {
                return Err("q table has the wrong shape".into());
            }
            // q[i][l][j]
            let mut q = vec![vec![Vec::new(); m]; m];
            for i in 0..m {
                if step.q_coordinates[i].len() != n {
                    return Err("q table has the wrong shape".into());
                }
                for (j, f) in factors.iter().enumerate() {
                    let coords = &step.q_coordinates[i][j];
                    if coords.len() != m || coords.iter().any(|c| c.len() != bases[j].len()) {
                        return Err(format!(
                            "q coordinates for k_{{{},{}}} have the wrong shape",
                            i + 1,
                            j + 1
                        ));
                    }
                    let mut prod = f.g.identity();
                    for (l, c) in coords.iter().enumerate() {
                        let qv = bases[j]
                            .iter()
                            .zip(c)
                            .fold(f.g.identity(), |acc, (b, &e)| acc.compose(&b.pow(e)));
                        prod = prod.compose(&Permutation::commutator(&qv, &lifts[l][j]));
                        q[i][l].push(qv);
                    }
                    if prod != k_res[i][j] {
                        return Err(format!(
                            "∏_l [q_{{{},{},l}}, a_{{l,{}}}] ≠ k_{{{},{}}}",
                            i + 1,
                            j + 1,
                            j + 1,
                            i + 1,
                            j + 1
                        ));
                    }
                }
            }
            Ok((q, String::new()))
        })?;

        let q_gens = self.step(k, "q_generators", || {
            let listed = parse_all(product.degree(), &step.q_generators)?;
            let mut expected = Vec::new();
            for row in &q_parts {
                for parts in row {
                    let q = product.from_parts(parts);
                    for a in &delta {
                        expected.push(Permutation::commutator(&q, a));
                    }
                }
            }
            if listed != expected {
                return Err(format!(
                    "{} listed Q-generators, {} expected, or they differ",
                    listed.len(),
                    expected.len()
                ));
            }
            Ok((listed, String::new()))
        })?;
        let q_group = self.step(k, "q_perfect", || {
            let q = conjugation_closure(product.degree(), &q_gens, &delta);
            if !q.is_abelian() {
                return Err("Q is not abelian".into());
            }
            let seeds: Vec<Permutation> = q
                .essential_generators()
                .iter()
                .flat_map(|x| delta.iter().map(move |a| Permutation::commutator(x, a)))
                .collect();
            if conjugation_closure(product.degree(), &seeds, &delta).order() != q.order() {
                return Err("[Q, Δ] ≠ Q".into());
            }
            let order = q.order();
            Ok((q, format!("|Q| = {order}")))
        })?;
        self.step(k, "k_in_Q", || {
            for (i, row) in k_res.iter().enumerate() {
                if !q_group.contains(&product.from_parts(row)) {
                    return Err(format!("k_{} is not in Q", i + 1));
                }
            }
            Ok(((), String::new()))
        })?;

        let budget = self.cert.budget;
        let cover = self.step(k, "cover", || {
            check_cover(step.cover.as_ref(), &factors, budget, m, cap)
        })?;

        let s_bold: Vec<Permutation> = s_res.iter().map(|row| product.from_parts(row)).collect();
        let t_group = self.step(k, "s_in_T", || {
            let t_gens = parse_all(product.degree(), &step.t_generators)?;
            let t = generated(product.degree(), &t_gens)?;
            for (i, s) in s_bold.iter().enumerate() {
                if !t.contains(s) {
                    return Err(format!("s_{} is not in T", i + 1));
                }
            }
            let order = t.order();
            Ok(((t, t_gens), format!("|T| = {order}")))
        })?;
        let (t_group, t_gens) = t_group;

        self.step(k, "t_generators", || {
            let expected = match &cover {
                None => Vec::new(),
                Some(c) => {
                    let mut v = Vec::new();
                    for l in 0..m {
                        for j in 0..budget {
                            for t in 0..c.e {
                                for jp in 0..budget {
                                    v.push(c.conjugate(&product, jp, &c.r[l][j][t]));
                                }
                            }
                        }
                    }
                    v
                }
            };
            if t_gens != expected {
                return Err(format!(
                    "{} listed T-generators, {} expected, or they differ",
                    t_gens.len(),
                    expected.len()
                ));
            }
            Ok(((), String::new()))
        })?;
        self.step(k, "s_factorization", || {
            if let Some(c) = &cover {
                for (l, s) in s_bold.iter().enumerate() {
                    let mut acc = product.identity();
                    for t in 0..c.e {
                        for j in 0..budget {
                            acc = acc.compose(&c.conjugate(&product, j, &c.r[l][j][t]));
                        }
                    }
                    if acc != *s {
                        return Err(format!("s_{} ≠ ∏ m_j^r", l + 1));
                    }
                }
            } else if s_bold.iter().any(|s| !s.is_identity()) {
                return Err("nontrivial s without a cover".into());
            }
            Ok(((), String::new()))
        })?;
        self.step(k, "t_perfect", || {
            if !t_group.is_perfect() {
                return Err("T is not perfect".into());
            }
            Ok(((), String::new()))
        })?;

        let gamma = self.step(k, "gamma_perfect", || {
            let mut gens = delta.clone();
            gens.extend(q_gens.iter().cloned());
            gens.extend(t_gens.iter().cloned());
            let g = generated(product.degree(), &gens)?;
            if !g.is_perfect() {
                return Err("[Γ, Γ] ≠ Γ".into());
            }
            let order = g.order();
            Ok((g, format!("|Γ| = {order}")))
        })?;
        self.step(k, "gamma_surjective", || {
            for j in 0..n {
                if !product.projects_onto(j, &gamma) {
                    return Err(format!("Γ does not project onto G_{}", j + 1));
                }
            }
            Ok(((), format!("onto all {n} factors")))
        })?;
        self.step(k, "perfectness_chain", || {
            let derived = gamma.derived_subgroup();
            if t_gens.iter().any(|x| !derived.contains(x)) {
                return Err("T is not inside [Γ, Γ]".into());
            }
            if q_gens.iter().any(|x| !derived.contains(x)) {
                return Err("Q is not inside [Γ, Γ]".into());
            }
            for i in 0..m {
                let k_bold = product.from_parts(&k_res[i]);
                let w = words[i].evaluate(&delta).map_err(err)?;
                if k_bold.compose(&s_bold[i]).compose(&w) != delta[i] {
                    return Err(format!("a_{0} ≠ k_{0} s_{0} w_{0}(a)", i + 1));
                }
                if !derived.contains(&delta[i]) {
                    return Err(format!("a_{} is not in [Γ, Γ]", i + 1));
                }
            }
            Ok(((), String::new()))
        })?;
        Some(gamma)
    }
}

/// Parsed cover data.
struct Cover {
    /// Family component of each simple factor.
    components: Vec<usize>,
    /// `m[i][j]`.
    m: Vec<Vec<Permutation>>,
    e: usize,
    /// `r[l][j][t][i]`.
    r: Vec<Vec<Vec<Vec<Permutation>>>>,
}

impl Cover {
    /// `𝐦_{jp}^{𝐫}` on the product domain.
    fn conjugate(&self, product: &DirectProduct, jp: usize, r: &[Permutation]) -> Permutation {
        let parts: Vec<Permutation> = (0..product.len())
            .map(|j| {
                let mut acc = product.factor(j).identity();
                for (i, &c) in self.components.iter().enumerate() {
                    if c == j {
                        acc = acc.compose(&self.m[i][jp].conjugate_by(&r[i]));
                    }
                }
                acc
            })
            .collect();
        product.from_parts(&parts)
    }
}

fn check_cover(
    data: Option<&CoverData>,
    factors: &[Factor],
    budget: usize,
    m: usize,
    cap: usize,
) -> Check<Option<Cover>> {
    let Some(c) = data else {
        if factors.iter().any(|f| !f.s.is_trivial()) {
            return Err("semisimple parts are nontrivial but no cover is given".into());
        }
        return Ok((None, "no semisimple part".into()));
    };
    let mut groups = Vec::new();
    let mut components = Vec::new();
    for fd in &c.factors {
        let f = factors
            .get(fd.component)
            .ok_or("factor component out of range")?;
        let deg = f.g.degree();
        let mi = generated(deg, &parse_all(deg, &fd.generators)?)?;
        if !mi.is_subgroup_of(&f.s) || !mi.is_normal_in(&f.s) {
            return Err(format!(
                "a simple factor is not normal in S_{}",
                fd.component + 1
            ));
        }
        if !is_nonabelian_simple(&mi, cap).map_err(err)? {
            return Err("a cover factor is not nonabelian simple".into());
        }
        groups.push(mi);
        components.push(fd.component);
    }
    for (j, f) in factors.iter().enumerate() {
        let mine: Vec<&PermGroup> = groups
            .iter()
            .zip(&components)
            .filter(|(_, &c)| c == j)
            .map(|(g, _)| g)
            .collect();
        let order: u128 = mine.iter().map(|g| g.order()).product();
        let gens: Vec<Permutation> = mine.iter().flat_map(|g| g.essential_generators()).collect();
        for (x, a) in mine.iter().enumerate() {
            for b in &mine[x + 1..] {
                let commute = a
                    .essential_generators()
                    .iter()
                    .all(|p| b.essential_generators().iter().all(|q| p.commutes_with(q)));
                if !commute {
                    return Err(format!("simple factors of S_{} do not commute", j + 1));
                }
            }
        }
        if order != f.s.order() || generated(f.g.degree(), &gens)?.order() != f.s.order() {
            return Err(format!("simple factors do not multiply to S_{}", j + 1));
        }
    }
    let r = groups.len();
    if c.tuples.len() != r || c.pigeonhole.len() != r || c.e == 0 {
        return Err("cover data has the wrong shape".into());
    }
    let mut tuples = Vec::new();
    for (i, mi) in groups.iter().enumerate() {
        let t = parse_all(mi.degree(), &c.tuples[i])?;
        if t.len() != budget || t.iter().any(|x| !mi.contains(x)) {
            return Err(format!("cover tuple {} is invalid", i + 1));
        }
        if generated(mi.degree(), &t)?.order() != mi.order() {
            return Err(format!("cover does not project onto factor {}", i + 1));
        }
        if c.pigeonhole[i] >= budget {
            return Err("pigeonhole index out of range".into());
        }
        tuples.push(t);
    }
    let mut conj = Vec::new();
    if c.conjugators.len() != m {
        return Err("conjugator table has the wrong shape".into());
    }
    for l in 0..m {
        if c.conjugators[l].len() != budget {
            return Err("conjugator table has the wrong shape".into());
        }
        let mut by_j = Vec::new();
        for j in 0..budget {
            if c.conjugators[l][j].len() != c.e {
                return Err("conjugator table has the wrong shape".into());
            }
            let mut by_t = Vec::new();
            for t in 0..c.e {
                let row = &c.conjugators[l][j][t];
                if row.len() != r {
                    return Err("conjugator table has the wrong shape".into());
                }
                let mut by_i = Vec::new();
                for (i, mi) in groups.iter().enumerate() {
                    let x = parse(mi.degree(), &row[i])?;
                    if !mi.contains(&x) {
                        return Err(format!(
                            "conjugator r_{{{},{},{},{}}} is outside M_{}",
                            l + 1,
                            i + 1,
                            j + 1,
                            t + 1,
                            i + 1
                        ));
                    }
                    by_i.push(x);
                }
                by_t.push(by_i);
            }
            by_j.push(by_t);
        }
        conj.push(by_j);
    }
    let cover = Cover {
        components,
        m: tuples,
        e: c.e,
        r: conj,
    };
    // The cover group itself must be perfect.
    let degrees: Vec<PermGroup> = factors.iter().map(|f| f.g.clone()).collect();
    let product = DirectProduct::new(degrees).map_err(err)?;
    let id: Vec<Permutation> = (0..r).map(|i| groups[i].identity()).collect();
    let gens: Vec<Permutation> = (0..budget)
        .map(|jp| cover.conjugate(&product, jp, &id))
        .collect();
    if !generated(product.degree(), &gens)?.is_perfect() {
        return Err("cover group is not perfect".into());
    }
    Ok((Some(cover), format!("{r} simple factors, e = {}", c.e)))
}

pub fn verify_certificate(cert: &Certificate, opts: &VerifyOptions) -> VerificationReport {
    let mut v = Verifier {
        cert,
        opts,
        steps: Vec::new(),
    };
    let version_ok = v.step(cert.k, "version", || {
        if cert.version == FORMAT_VERSION {
            Ok(((), cert.version.clone()))
        } else if opts.force {
            Ok((
                (),
                format!(
                    "{} differs from {FORMAT_VERSION}; checked anyway",
                    cert.version
                ),
            ))
        } else {
            Err(format!(
                "certificate version {} differs from {FORMAT_VERSION}; use --force to check anyway",
                cert.version
            ))
        }
    });
    if version_ok.is_some() && cert.root.k == cert.k && cert.budget > 0 {
        v.level(&cert.root, cert.k);
    } else if version_ok.is_some() {
        v.step(cert.k, "parameters", || -> Check<()> {
            Err("root level or budget is inconsistent".into())
        });
    }
    VerificationReport { steps: v.steps }
}

/// Parses and verifies a certificate document.
pub fn verify_json(text: &str, opts: &VerifyOptions) -> Result<VerificationReport> {
    Ok(verify_certificate(&Certificate::from_json(text)?, opts))
}
