//! `Hom(C, Y)` as a module over `Γ(C) = End(C)^op`, the map `η_CY`, and the
//! minimal right determiner of a morphism.

use crate::ar::{hom_through_proj, is_projective, tau_minus};
use crate::endo::{decompose, indecomposables_isomorphic, right_minimalize, Decomposition, EndAlgebra};
use crate::ffmat::{Mat, Subspace};
use crate::rep::{self, hom_space, HomSpace, Morphism, Rep};
use crate::{Error, Result};

/// A simple `Γ(C)`-module, indexed by an isomorphism class of summands of `C`.
#[derive(Clone, Debug)]
pub struct Label {
    pub name: String,
    pub rep: Rep,
    /// `dim End(C_i)/rad`.
    pub top_dim: usize,
    /// Action of the primitive idempotent `ε_i` on `Hom(C, Y)` coordinates.
    eps: Mat,
}

#[derive(Clone, Debug)]
pub struct GammaModule {
    pub c: Rep,
    pub y: Rep,
    pub hom: HomSpace,
    pub end: EndAlgebra,
    /// Precomposition `h ↦ h∘e` for each basis element `e` of `End(C)`.
    pub action: Vec<Mat>,
    pub decomposition: Decomposition,
    pub labels: Vec<Label>,
}

impl GammaModule {
    pub fn new(c: &Rep, y: &Rep) -> Result<GammaModule> {
        let hom = hom_space(c, y)?;
        let end = EndAlgebra::new(c);
        let action = end.basis.iter().map(|e| precomp_matrix(&hom, e)).collect();
        let decomposition = decompose(c);
        let labels = decomposition
            .classes
            .iter()
            .enumerate()
            .map(|(k, cl)| {
                let s = &decomposition.summands[cl[0]];
                let e = s.incl.comp(&s.proj);
                Label {
                    name: format!("C{}", k + 1),
                    rep: s.rep.clone(),
                    top_dim: EndAlgebra::new(&s.rep).top_dim(),
                    eps: precomp_matrix(&hom, &e),
                }
            })
            .collect();
        Ok(GammaModule { c: c.clone(), y: y.clone(), hom, end, action, decomposition, labels })
    }

    /// Rename labels after the first matching named module.
    pub fn name_labels(&mut self, named: &[(String, Rep)]) {
        for l in &mut self.labels {
            if let Some((n, _)) = named.iter().find(|(_, r)| indecomposables_isomorphic(r, &l.rep)) {
                l.name = n.clone();
            }
        }
    }

    pub fn p(&self) -> u32 {
        self.c.p()
    }

    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    pub fn full(&self) -> Subspace {
        Subspace::full(self.p(), self.dim())
    }

    pub fn zero(&self) -> Subspace {
        Subspace::zero(self.p(), self.dim())
    }

    pub fn is_submodule(&self, s: &Subspace) -> bool {
        self.action.iter().all(|a| s.is_invariant(a))
    }

    /// The submodule generated by the given vectors.
    pub fn generate(&self, vecs: &[Vec<u32>]) -> Subspace {
        let mut e = crate::ffmat::Echelon::new(self.p(), self.dim());
        let mut queue: Vec<Vec<u32>> = Vec::new();
        for v in vecs {
            if let Some(r) = e.insert(v) {
                queue.push(r);
            }
        }
        while let Some(v) = queue.pop() {
            for a in &self.action {
                if let Some(r) = e.insert(&a.mul_vec(&v)) {
                    queue.push(r);
                }
            }
        }
        e.to_subspace()
    }

    /// Jordan–Hölder multiplicities of `s`, one per label.
    pub fn dimvec(&self, s: &Subspace) -> Vec<usize> {
        self.labels
            .iter()
            .map(|l| {
                let d = s.image_under(&l.eps).dim();
                debug_assert_eq!(d % l.top_dim, 0);
                d / l.top_dim
            })
            .collect()
    }

    pub fn length_of(&self, s: &Subspace) -> usize {
        self.dimvec(s).iter().sum()
    }

    pub fn length(&self) -> usize {
        self.length_of(&self.full())
    }

    /// Multiplicities of `big / small`.
    pub fn quotient_dimvec(&self, small: &Subspace, big: &Subspace) -> Vec<usize> {
        self.dimvec(big).iter().zip(self.dimvec(small)).map(|(a, b)| a - b).collect()
    }

    /// `Hom(C, 𝒫, Y)`.
    pub fn through_projectives(&self) -> Subspace {
        let (h, s) = hom_through_proj(&self.c, &self.y).expect("same algebra");
        // the basis is canonical, so coordinates agree
        debug_assert_eq!(h.dim(), self.dim());
        s
    }

    /// Radical of the Γ-module: span of `rad Γ · M`.
    pub fn radical_of(&self, s: &Subspace) -> Subspace {
        let p = self.p();
        let mut gens = Vec::new();
        for r in self.end.rad_basis() {
            let a = precomp_matrix(&self.hom, &r);
            gens.extend(s.image_under(&a).basis_vecs());
        }
        Subspace::span(p, self.dim(), &gens)
    }
}

fn precomp_matrix(hom: &HomSpace, e: &Morphism) -> Mat {
    let n = hom.dim();
    let cols: Vec<Vec<u32>> = hom.basis.iter().map(|h| hom.coords(&h.comp(e))).collect();
    Mat::from_row_vecs(hom.src.p(), n, &cols).transpose()
}

/// `η(f) = f·Hom(C, X)` in the coordinates of `gm`.
pub fn eta(f: &Morphism, gm: &GammaModule) -> Result<Subspace> {
    if f.dst() != &gm.y {
        return Err(Error::Invalid("morphism does not end in Y".into()));
    }
    let hx = hom_space(&gm.c, f.src())?;
    let gens: Vec<Vec<u32>> = hx.basis.iter().map(|g| gm.hom.coords(&f.comp(g))).collect();
    Ok(Subspace::span(gm.p(), gm.dim(), &gens))
}

/// `|f|_C` and `type_C(f)`.
pub fn c_type(f: &Morphism, gm: &GammaModule) -> Result<Vec<usize>> {
    let e = eta(f, gm)?;
    Ok(gm.quotient_dimvec(&e, &gm.full()))
}

pub fn c_length(f: &Morphism, gm: &GammaModule) -> Result<usize> {
    Ok(c_type(f, gm)?.iter().sum())
}

/// Whether the indecomposable projective `P(x)` almost factors through `f`.
pub fn almost_factors_through(x: usize, f: &Morphism) -> Result<bool> {
    let alg = f.dst().alg();
    let p = alg.p();
    let px = alg.projective(x);
    let y = f.dst();
    let (rp, iota) = rep::rad(&px);
    let hpy = hom_space(&px, y)?;
    let hry = hom_space(&rp, y)?;
    let hrx = hom_space(&rp, f.src())?;
    let fact = Subspace::span(p, hry.dim(), &hrx.basis.iter().map(|g| hry.coords(&f.comp(g))).collect::<Vec<_>>());
    // W = {η : η∘ι ∈ f·Hom(rad P, X)}
    let (_, pi) = fact.quotient_map();
    let cols: Vec<Vec<u32>> = hpy.basis.iter().map(|e| pi.mul_vec(&hry.coords(&e.comp(&iota)))).collect();
    let m = Mat::from_row_vecs(p, pi.rows(), &cols).transpose();
    let w = m.kernel().row_space();
    let hpx = hom_space(&px, f.src())?;
    let through = Subspace::span(p, hpy.dim(), &hpx.basis.iter().map(|g| hpy.coords(&f.comp(g))).collect::<Vec<_>>());
    Ok(!through.contains_space(&w))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    TauOfIntrinsicKernel,
    ProjectiveAlmostFactors,
}

#[derive(Clone, Debug)]
pub struct Determiner {
    pub summands: Vec<(Rep, Provenance)>,
}

impl Determiner {
    pub fn reps(&self) -> Vec<Rep> {
        self.summands.iter().map(|(r, _)| r.clone()).collect()
    }
}

pub fn minimal_determiner(f: &Morphism) -> Result<Determiner> {
    let alg = f.dst().alg();
    let m = right_minimalize(f);
    let mut summands: Vec<(Rep, Provenance)> = Vec::new();
    let push = |r: Rep, pv: Provenance, s: &mut Vec<(Rep, Provenance)>| {
        if !s.iter().any(|(q, _)| indecomposables_isomorphic(q, &r)) {
            s.push((r, pv));
        }
    };
    for (k, _) in decompose(&m.kernel).with_multiplicity() {
        let t = tau_minus(&k);
        if t.is_zero() {
            return Err(Error::Verification("injective summand in an intrinsic kernel".into()));
        }
        push(t, Provenance::TauOfIntrinsicKernel, &mut summands);
    }
    for x in 0..alg.n_vertices() {
        if almost_factors_through(x, &m.f)? {
            push(alg.projective(x), Provenance::ProjectiveAlmostFactors, &mut summands);
        }
    }
    Ok(Determiner { summands })
}

/// Representatives of the indecomposable summands of `c`, one per class.
pub fn add_classes(c: &Rep) -> Vec<Rep> {
    decompose(c).with_multiplicity().into_iter().map(|(r, _)| r).collect()
}

pub fn in_add(classes: &[Rep], m: &Rep) -> bool {
    classes.iter().any(|r| indecomposables_isomorphic(r, m))
}

pub fn determiner_in_add(d: &Determiner, classes: &[Rep]) -> bool {
    d.summands.iter().all(|(r, _)| in_add(classes, r))
}

pub fn is_right_determined(f: &Morphism, c: &Rep) -> Result<bool> {
    Ok(determiner_in_add(&minimal_determiner(f)?, &add_classes(c)))
}

/// A probe `f′` whose every `C`-restriction factors through `f` but which
/// does not itself factor through `f`.
#[derive(Clone, Debug)]
pub struct Violation {
    pub probe: usize,
}

#[derive(Clone, Debug, Default)]
pub struct ProbeReport {
    pub checked: usize,
    /// Probes satisfying the hypothesis of the definition.
    pub applicable: usize,
    pub violations: Vec<Violation>,
}

pub fn definitional_check(f: &Morphism, c: &Rep, probes: &[Morphism]) -> Result<ProbeReport> {
    let mut rep = ProbeReport::default();
    for (i, g) in probes.iter().enumerate() {
        if g.dst() != f.dst() {
            return Err(Error::Invalid("probe does not end in Y".into()));
        }
        rep.checked += 1;
        let hc = hom_space(c, g.src())?;
        let hyp = hc.basis.iter().all(|phi| rep::factors_through(&g.comp(phi), f));
        if hyp {
            rep.applicable += 1;
            if !rep::factors_through(g, f) {
                rep.violations.push(Violation { probe: i });
            }
        }
    }
    Ok(rep)
}

/// Whether `c` is projective-free, used to pick the right `η⁻¹(0)` checks.
pub fn has_projective_summand(c: &Rep) -> bool {
    add_classes(c).iter().any(is_projective)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    #[test]
    fn a2_gamma_module() {
        let a = Algebra::parse("field 2\nvertices a b\narrow alpha b a\n").unwrap();
        let sb = a.simple(1);
        let gm = GammaModule::new(&sb, &sb).unwrap();
        assert_eq!(gm.dim(), 1);
        assert_eq!(gm.length(), 1);
        let f = proj_of(&a);
        assert_eq!(eta(&f, &gm).unwrap().dim(), 0);
        assert_eq!(c_length(&Morphism::zero(&Rep::zero(&a), &sb), &gm).unwrap(), 1);
        // P(b) ↠ S(b) has kernel S(a) = τ S(b)
        let d = minimal_determiner(&f).unwrap();
        assert_eq!(d.summands.len(), 1);
        assert_eq!(d.summands[0].1, Provenance::TauOfIntrinsicKernel);
        assert!(is_right_determined(&f, &sb).unwrap());
        // 0 → S(b) needs P(b)
        let z = Morphism::zero(&Rep::zero(&a), &sb);
        let d = minimal_determiner(&z).unwrap();
        assert_eq!(d.summands[0].0.dims(), &[1, 1]);
        assert!(!is_right_determined(&z, &sb).unwrap());
        assert!(!almost_factors_through(1, &Morphism::identity(&sb)).unwrap());
    }

    fn proj_of(a: &Algebra) -> Morphism {
        crate::ar::proj_cover(&a.simple(1))
    }
}
