//! The morphism side: the right `C`-factorization lattice `^C[→Y⟩` built from
//! explicit maps, certified against the submodule lattice of `Hom(C, Y)`.

use crate::ar::{self, class_of_sequence, ext1, is_projective, realize_with, tau, Extension};
use crate::determine::{
    add_classes, c_type, determiner_in_add, eta, minimal_determiner, Determiner, GammaModule,
};
use crate::endo::{
    decompose, indecomposables_isomorphic, is_indecomposable, is_isomorphic, krs_count, right_minimalize, EndAlgebra,
};
use crate::ffmat::{Mat, Subspace};
use crate::lattice::{default_max_dim, invariant_subspaces, submodule_lattice, FiniteLattice};
use crate::rep::{self, hom_space, Morphism, Rep};
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Enumeration limits.
#[derive(Clone, Debug)]
pub struct Caps {
    /// Largest `dim Hom(C, Y)` enumerated; defaults per field.
    pub max_dim: Option<usize>,
    /// Largest number of copies of one kernel summand; `None` means the
    /// `Ext¹` bound.
    pub max_ext_mult: Option<usize>,
    /// Pairs of classes checked for meet preservation.
    pub meet_samples: usize,
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps { max_dim: None, max_ext_mult: None, meet_samples: 300, seed: 0 }
    }
}

/// One right-equivalence class, represented by a right minimal map.
#[derive(Clone, Debug)]
pub struct REClass {
    pub f: Morphism,
    pub eta: Subspace,
    pub node: usize,
    pub c_length: usize,
    pub c_type: Vec<usize>,
    pub is_epi: bool,
    pub is_mono: bool,
    pub determiner: Determiner,
}

impl REClass {
    pub fn source(&self) -> &Rep {
        self.f.src()
    }
}

#[derive(Clone, Debug, Default)]
pub struct BijectionReport {
    pub candidates: usize,
    pub surjective: bool,
    pub missing: Vec<usize>,
    pub injectivity_failures: usize,
    pub meet_pairs: usize,
    pub meet_failures: usize,
    pub order_failures: usize,
}

impl BijectionReport {
    pub fn ok(&self) -> bool {
        self.surjective && self.injectivity_failures == 0 && self.meet_failures == 0 && self.order_failures == 0
    }
}

#[derive(Clone, Debug)]
pub struct FactorizationLattice {
    pub gm: GammaModule,
    pub lattice: FiniteLattice,
    /// `classes[i]` realizes lattice node `i`.
    pub classes: Vec<REClass>,
    pub report: BijectionReport,
}

impl FactorizationLattice {
    pub fn zero_class(&self) -> &REClass {
        &self.classes[self.lattice.bottom]
    }

    pub fn top_class(&self) -> &REClass {
        &self.classes[self.lattice.top]
    }
}

/// Λ-submodules of `y` with their inclusions.
pub fn submodules(y: &Rep) -> Result<Vec<(Rep, Morphism)>> {
    let p = y.p();
    let acts = y.total_actions();
    let offs = y.offsets();
    let spaces = invariant_subspaces(p, y.dim(), &acts)?;
    spaces
        .iter()
        .map(|s| {
            let subs: Vec<Subspace> = (0..y.dims().len())
                .map(|v| {
                    let d = y.dims()[v];
                    let parts: Vec<Vec<u32>> = s.basis_vecs().iter().map(|b| b[offs[v]..offs[v] + d].to_vec()).collect();
                    Subspace::span(p, d, &parts)
                })
                .collect();
            rep::subrep(y, &subs)
        })
        .collect()
}

/// Candidate key used to pick a reproducible representative.
fn canonical_key(f: &Morphism) -> (usize, Vec<usize>, Vec<u32>, Vec<u32>) {
    let x = f.src();
    let act: Vec<u32> = x.maps().iter().flat_map(|m| m.data().to_vec()).collect();
    (x.dim(), x.dims().to_vec(), act, f.flat())
}

struct Builder<'a> {
    gm: &'a GammaModule,
    classes_c: Vec<Rep>,
    found: HashMap<Subspace, (Morphism, Determiner)>,
    report: BijectionReport,
}

impl<'a> Builder<'a> {
    fn offer(&mut self, f: &Morphism) -> Result<()> {
        self.report.candidates += 1;
        let m = right_minimalize(f).f;
        let e = eta(&m, self.gm)?;
        if let Some((g, _)) = self.found.get(&e) {
            if rep::right_equivalent(&m, g)? {
                if canonical_key(&m) < canonical_key(g) {
                    let d = self.found[&e].1.clone();
                    self.found.insert(e, (m, d));
                }
                return Ok(());
            }
            let d = minimal_determiner(&m)?;
            if determiner_in_add(&d, &self.classes_c) {
                self.report.injectivity_failures += 1;
            }
            return Ok(());
        }
        let d = minimal_determiner(&m)?;
        if determiner_in_add(&d, &self.classes_c) {
            self.found.insert(e, (m, d));
        }
        Ok(())
    }
}

/// Enumerate `^C[→Y⟩` and certify that `η` is a lattice isomorphism onto the
/// submodule lattice of `Hom(C, Y)`.
pub fn enumerate_classes(c: &Rep, y: &Rep, caps: &Caps) -> Result<FactorizationLattice> {
    enumerate_with(GammaModule::new(c, y)?, caps)
}

pub fn enumerate_with(gm: GammaModule, caps: &Caps) -> Result<FactorizationLattice> {
    let c = gm.c.clone();
    let y = gm.y.clone();
    let alg = y.alg().clone();
    let p = alg.p();
    let max_dim = caps.max_dim.unwrap_or_else(|| default_max_dim(p));
    let lattice = submodule_lattice(&gm, max_dim)?;
    let classes_c = add_classes(&c);
    // kernel building blocks: the indecomposable summands of τC
    let mut kb: Vec<Rep> = Vec::new();
    for ci in &classes_c {
        if is_projective(ci) {
            continue;
        }
        let t = tau(ci);
        if !t.is_zero() && !kb.iter().any(|k| indecomposables_isomorphic(k, &t)) {
            kb.push(t);
        }
    }
    let kbar = rep::direct_sum(&alg, &kb);
    let kb_end = EndAlgebra::new(&kbar.rep);
    let mut b = Builder { gm: &gm, classes_c, found: HashMap::new(), report: BijectionReport::default() };
    for (ysub, yincl) in submodules(&y)? {
        b.offer(&yincl)?;
        if kb.is_empty() || ysub.is_zero() {
            continue;
        }
        let e = ext1(&ysub, &kbar.rep)?;
        if e.dim() == 0 {
            continue;
        }
        let acts: Vec<Mat> = kb_end
            .basis
            .iter()
            .map(|phi| {
                let cols: Vec<Vec<u32>> = (0..e.dim()).map(|i| e.push(phi, &unit(e.dim(), i))).collect();
                Mat::from_row_vecs(p, e.dim(), &cols).transpose()
            })
            .collect();
        let eps: Vec<Mat> = (0..kb.len())
            .map(|i| {
                let id = kbar.incl[i].comp(&kbar.proj[i]);
                let cols: Vec<Vec<u32>> = (0..e.dim()).map(|j| e.push(&id, &unit(e.dim(), j))).collect();
                Mat::from_row_vecs(p, e.dim(), &cols).transpose()
            })
            .collect();
        for w in invariant_subspaces(p, e.dim(), &acts)? {
            if w.is_zero() {
                continue;
            }
            // generators of W over End(K̄), each inside one ε_i W
            let mut pieces: Vec<Morphism> = Vec::new();
            let mut mult = vec![0usize; eps.len()];
            let mut span = Subspace::zero(p, e.dim());
            for (i, ep) in eps.iter().enumerate() {
                for v in w.image_under(ep).basis_vecs() {
                    if span.contains(&v) {
                        continue;
                    }
                    span = module_closure(&span.sum(&Subspace::span(p, e.dim(), &[v.clone()]))?, &acts)?;
                    pieces.push(kbar.proj[i].comp(&e.cocycle(&v)));
                    mult[i] += 1;
                }
            }
            let too_many = caps.max_ext_mult.is_some_and(|cap| mult.iter().any(|&m| m > cap));
            if too_many {
                continue;
            }
            let xi = rep::column_map(&pieces, e.iota.src());
            let ext = realize_with(&e.cover, &e.iota, &xi);
            b.offer(&yincl.comp(&ext.proj))?;
        }
    }
    let Builder { found, mut report, .. } = b;
    let mut slots: Vec<Option<REClass>> = vec![None; lattice.len()];
    for (sp, (f, d)) in found {
        let Some(node) = lattice.find(&sp) else {
            return Err(Error::Verification("η image is not a submodule".into()));
        };
        let ct = gm.quotient_dimvec(&sp, &gm.full());
        slots[node] = Some(REClass {
            is_epi: f.is_epi(),
            is_mono: f.is_mono(),
            c_length: ct.iter().sum(),
            c_type: ct,
            eta: sp,
            node,
            f,
            determiner: d,
        });
    }
    report.missing = (0..lattice.len()).filter(|&i| slots[i].is_none()).collect();
    report.surjective = report.missing.is_empty();
    if !report.surjective {
        let dims: Vec<String> = report.missing.iter().map(|&i| format!("node {i} (dim {})", lattice.nodes[i].space.dim())).collect();
        return Err(Error::Verification(format!("η misses submodules: {}", dims.join(", "))));
    }
    if report.injectivity_failures > 0 {
        return Err(Error::Verification(format!("{} distinct classes share an η image", report.injectivity_failures)));
    }
    let classes: Vec<REClass> = slots.into_iter().map(|s| s.expect("surjective")).collect();
    let mut lattice = lattice;
    for cl in &classes {
        lattice.set_flag(cl.node, "is_epi", cl.is_epi);
        lattice.set_flag(cl.node, "is_mono", cl.is_mono);
    }
    // meets and order on sampled pairs
    let mut pairs: Vec<(usize, usize)> = (0..classes.len()).flat_map(|a| (a + 1..classes.len()).map(move |b| (a, b))).collect();
    if pairs.len() > caps.meet_samples {
        let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);
        pairs.shuffle(&mut rng);
        pairs.truncate(caps.meet_samples);
    }
    for &(a, bb) in &pairs {
        let (fa, fb) = (&classes[a].f, &classes[bb].f);
        report.meet_pairs += 1;
        let m = rep::meet_map(fa, fb)?;
        let want = classes[a].eta.intersect(&classes[bb].eta)?;
        if eta(&m, &gm)? != want {
            report.meet_failures += 1;
        }
        let leq = rep::right_leq(fa, fb)?.is_some();
        if leq != classes[bb].eta.contains_space(&classes[a].eta) {
            report.order_failures += 1;
        }
    }
    if report.meet_failures + report.order_failures > 0 {
        return Err(Error::Verification(format!(
            "{} meet and {} order failures",
            report.meet_failures, report.order_failures
        )));
    }
    Ok(FactorizationLattice { gm, lattice, classes, report })
}

/// Smallest subspace containing `s` and stable under `acts`.
fn module_closure(s: &Subspace, acts: &[Mat]) -> Result<Subspace> {
    let mut cur = s.clone();
    loop {
        let mut next = cur.clone();
        for a in acts {
            next = next.sum(&cur.image_under(a))?;
        }
        if next.dim() == cur.dim() {
            return Ok(cur);
        }
        cur = next;
    }
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// The unique class with `η = 0`.
pub fn zero_class(c: &Rep, y: &Rep, caps: &Caps) -> Result<REClass> {
    Ok(enumerate_classes(c, y, caps)?.zero_class().clone())
}

pub fn c_length_of(f: &Morphism, gm: &GammaModule) -> Result<usize> {
    if !determiner_in_add(&minimal_determiner(f)?, &add_classes(&gm.c)) {
        return Err(Error::Invalid("map is not right C-determined".into()));
    }
    Ok(c_type(f, gm)?.iter().sum())
}

/// Indices of the classes whose `η` contains `Hom(C, 𝒫, Y)`, checked against
/// surjectivity and closure under meets.
pub fn epi_classes(fl: &FactorizationLattice) -> Result<Vec<usize>> {
    let hp = fl.gm.through_projectives();
    let epi: Vec<usize> = (0..fl.classes.len()).filter(|&i| fl.classes[i].eta.contains_space(&hp)).collect();
    for (i, cl) in fl.classes.iter().enumerate() {
        if cl.is_epi != epi.contains(&i) {
            return Err(Error::Verification(format!("epi criterion disagrees at node {i}")));
        }
    }
    let l = &fl.lattice;
    for &a in &epi {
        for u in 0..l.len() {
            if l.leq(a, u) && !epi.contains(&u) {
                return Err(Error::Verification("epi classes are not upward closed".into()));
            }
        }
        for &b in &epi {
            if !l.meet(a, b).is_some_and(|m| epi.contains(&m)) {
                return Err(Error::Verification("epi classes are not closed under meets".into()));
            }
        }
    }
    Ok(epi)
}

#[derive(Clone, Debug, Default)]
pub struct LengthOneReport {
    pub length_one: usize,
    pub maximal: usize,
    pub kernel_indecomposable: usize,
    pub socle_checked: usize,
    pub mu_checked: usize,
    pub failures: Vec<String>,
}

/// Checks on classes of `C`-length one, and `|f|_C = μ(Ker f)` where it applies.
pub fn length_one_checks(fl: &FactorizationLattice) -> Result<LengthOneReport> {
    let gm = &fl.gm;
    let mut r = LengthOneReport::default();
    let taus: Vec<Rep> = add_classes(&gm.c).iter().map(tau).filter(|t| !t.is_zero()).collect();
    let tc = tau(&gm.c);
    let mu_applies = gm.through_projectives().is_zero() && (tc.is_zero() || EndAlgebra::new(&tc).radical().is_zero());
    let l = &fl.lattice;
    for cl in &fl.classes {
        let (k, kincl) = rep::kernel(&cl.f);
        if mu_applies {
            r.mu_checked += 1;
            if cl.c_length != krs_count(&k) {
                r.failures.push(format!("node {}: |f|_C = {} but μ(Ker f) = {}", cl.node, cl.c_length, krs_count(&k)));
            }
        }
        if cl.c_length != 1 {
            continue;
        }
        r.length_one += 1;
        if l.upper_covers(cl.node) == vec![l.top] {
            r.maximal += 1;
        } else {
            r.failures.push(format!("node {}: η is not maximal", cl.node));
        }
        if !cl.is_epi {
            continue;
        }
        if is_indecomposable(&k) && taus.iter().any(|t| indecomposables_isomorphic(t, &k)) {
            r.kernel_indecomposable += 1;
        } else {
            r.failures.push(format!("node {}: kernel is not an indecomposable summand of τC", cl.node));
            continue;
        }
        let e = ext1(&gm.y, &k)?;
        let class = class_of_sequence(&e, &kincl, &cl.f)?;
        r.socle_checked += 1;
        if !e.socle().contains(&class) {
            r.failures.push(format!("node {}: extension class outside the End(K)-socle", cl.node));
        }
    }
    Ok(r)
}

/// Nodes of `^C[→Y⟩` whose class does not reappear in `^{C⊕C′}[→Y⟩`;
/// enlarging `C` keeps every right `C`-determined map, so this is empty.
pub fn lost_after_enlarging(small: &FactorizationLattice, extra: &Rep, caps: &Caps) -> Result<Vec<usize>> {
    let c = &small.gm.c;
    let big_c = rep::direct_sum(c.alg(), &[c.clone(), extra.clone()]).rep;
    let big = enumerate_classes(&big_c, &small.gm.y, caps)?;
    let mut lost = Vec::new();
    for cl in &small.classes {
        let mut found = false;
        for g in &big.classes {
            if g.source().dims() == cl.source().dims() && rep::right_equivalent(&g.f, &cl.f)? {
                found = true;
                break;
            }
        }
        if !found {
            lost.push(cl.node);
        }
    }
    Ok(lost)
}

/// `0 → K → X ⊕ K′ → X′ → 0` (with `K′ = Ker f′ ≅ K`) from `f = f′h` with isomorphic kernels.
pub fn rz_witness(f: &Morphism, fp: &Morphism, h: &Morphism) -> Result<Extension> {
    if fp.comp(h) != *f {
        return Err(Error::Invalid("h is not a witness for f = f'h".into()));
    }
    let (k, u) = rep::kernel(f);
    let (kp, up) = rep::kernel(fp);
    if !is_isomorphic(&k, &kp) {
        return Err(Error::Invalid("kernels are not isomorphic".into()));
    }
    let hprime = rep::lift_through_mono(&h.comp(&u), &up).expect("h maps Ker f into Ker f'");
    let alg = f.src().alg();
    let mid = rep::direct_sum(alg, &[f.src().clone(), kp.clone()]);
    let left = rep::column_map(&[u.clone(), hprime.neg()], &k).with_ends(&k, &mid.rep);
    let right = rep::row_map(&[h.clone(), up.clone()], fp.src()).with_ends(&mid.rep, fp.src());
    let seq = Extension { x: mid.rep, incl: left, proj: right };
    if !seq.is_exact() {
        return Err(Error::Verification("Riedtmann–Zwara sequence is not exact".into()));
    }
    Ok(seq)
}

/// Some isomorphism `a → b`, if any.
pub fn find_iso(a: &Rep, b: &Rep) -> Option<Morphism> {
    if !is_isomorphic(a, b) {
        return None;
    }
    if a.is_zero() {
        return Some(Morphism::zero(a, b));
    }
    let da = decompose(a);
    let db = decompose(b);
    let mut used = vec![false; db.summands.len()];
    let mut total = Morphism::zero(a, b);
    for sa in &da.summands {
        let j = (0..db.summands.len()).find(|&j| !used[j] && indecomposables_isomorphic(&sa.rep, &db.summands[j].rep))?;
        used[j] = true;
        let sb = &db.summands[j];
        let h1 = hom_space(&sa.rep, &sb.rep).ok()?;
        let h2 = hom_space(&sb.rep, &sa.rep).ok()?;
        // v∘u invertible forces u to be an isomorphism between equal dimensions
        let g = h1.basis.iter().find(|u| h2.basis.iter().any(|v| v.comp(u).is_iso()))?;
        total = total.add(&sb.incl.comp(&g).comp(&sa.proj));
    }
    total.is_iso().then_some(total)
}

/// Lemma criterion: `f_i ∉ Σ_{j≠i} f_j Hom(M_i, M_j)` for all `i`.
pub fn is_cofork(family: &[Morphism]) -> Result<bool> {
    let Some(first) = family.first() else { return Err(Error::Invalid("empty family".into())) };
    let y = first.dst();
    if family.iter().any(|f| f.dst() != y) {
        return Err(Error::Invalid("maps must share a target".into()));
    }
    if family.iter().any(|f| f.is_zero() || !is_indecomposable(f.src())) {
        return Ok(false);
    }
    for (i, fi) in family.iter().enumerate() {
        let h = hom_space(fi.src(), y)?;
        let mut gens = Vec::new();
        for (j, fj) in family.iter().enumerate() {
            if j == i {
                continue;
            }
            for g in hom_space(fi.src(), fj.src())?.basis {
                gens.push(h.coords(&fj.comp(&g)));
            }
        }
        if Subspace::span(y.p(), h.dim(), &gens).contains(&h.coords(fi)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dual criterion for families `g_i: X → M_i`.
pub fn is_fork(family: &[Morphism]) -> Result<bool> {
    let duals: Vec<Morphism> = family.iter().map(|g| g.dual()).collect();
    is_cofork(&duals)
}

pub use ar::min_right_almost_split;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    #[test]
    fn a2_classes() {
        let a = Algebra::parse("field 2\nvertices a b\narrow alpha b a\n").unwrap();
        let sb = a.simple(1);
        let fl = enumerate_classes(&sb, &sb, &Caps::default()).unwrap();
        assert_eq!(fl.classes.len(), 2);
        assert_eq!(fl.zero_class().source().dims(), &[1, 1]);
        assert!(fl.top_class().f.is_iso());
        assert!(fl.report.ok());
        let epi = epi_classes(&fl).unwrap();
        assert_eq!(epi.len(), 2);
    }

    #[test]
    fn cofork_basics() {
        let a = Algebra::parse("field 2\nvertices a b\narrow alpha b a\n").unwrap();
        let sb = a.simple(1);
        let f = crate::ar::proj_cover(&sb);
        assert!(is_cofork(&[f.clone()]).unwrap());
        assert!(!is_cofork(&[f.clone(), f]).unwrap());
    }
}
