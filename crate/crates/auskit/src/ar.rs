//! Auslander–Reiten machinery: projective covers, minimal presentations,
//! transpose, `τ = D Tr`, `τ⁻ = Tr D`, `Ext¹` with explicit extensions, and
//! maps factoring through projectives.

use crate::algebra::Algebra;
use crate::endo::{is_indecomposable, EndAlgebra};
use crate::ffmat::{self, Mat, Subspace};
use crate::rep::{self, hom_space, HomSpace, Morphism, Rep};
use crate::{Error, Result};

/// The homomorphism `P(x) → m` sending the trivial path `e_x` to `v ∈ m_x`.
pub fn hom_from_projective(alg: &Algebra, x: usize, m: &Rep, v: &[u32]) -> Morphism {
    let px = alg.projective(x);
    let p = alg.p();
    let maps = (0..alg.n_vertices())
        .map(|y| {
            let cols: Vec<Vec<u32>> = alg
                .path_basis(x, y)
                .iter()
                .map(|w| alg.path_matrix(m.dims(), m.maps(), w, x).mul_vec(v))
                .collect();
            Mat::from_row_vecs(p, m.dims()[y], &cols).transpose()
        })
        .collect();
    Morphism::new_unchecked(px, m.clone(), maps)
}

/// A projective cover together with the vertex of each indecomposable summand.
#[derive(Clone, Debug)]
pub struct Cover {
    pub map: Morphism,
    pub vertices: Vec<usize>,
}

pub fn projective_cover(m: &Rep) -> Cover {
    let alg = m.alg();
    let mut vertices = Vec::new();
    let mut pieces = Vec::new();
    for (x, r) in rep::rad_spaces(m).iter().enumerate() {
        let (sigma, _) = r.quotient_map();
        for c in 0..sigma.cols() {
            vertices.push(x);
            pieces.push(hom_from_projective(alg, x, m, &sigma.col(c)));
        }
    }
    let map = if pieces.is_empty() { Morphism::zero(&Rep::zero(alg), m) } else { rep::row_map(&pieces, m) };
    Cover { map, vertices }
}

pub fn proj_cover(m: &Rep) -> Morphism {
    projective_cover(m).map
}

pub fn is_projective(m: &Rep) -> bool {
    proj_cover(m).src().dim() == m.dim()
}

pub fn is_injective(m: &Rep) -> bool {
    is_projective(&m.dual())
}

/// `P1 --d--> P0 --cover--> M → 0`, minimal.
#[derive(Clone, Debug)]
pub struct ProjPresentation {
    pub p1: Rep,
    pub p0: Rep,
    pub v1: Vec<usize>,
    pub v0: Vec<usize>,
    pub d: Morphism,
    pub cover: Morphism,
}

pub fn min_presentation(m: &Rep) -> ProjPresentation {
    let c0 = projective_cover(m);
    let (k, incl) = rep::kernel(&c0.map);
    let c1 = projective_cover(&k);
    let d = incl.comp(&c1.map);
    ProjPresentation {
        p1: c1.map.src().clone(),
        p0: c0.map.src().clone(),
        v1: c1.vertices,
        v0: c0.vertices,
        d,
        cover: c0.map,
    }
}

/// Offset of summand `i` of `⊕ P(vs[k])` inside vertex `y`.
fn summand_offset(alg: &Algebra, vs: &[usize], i: usize, y: usize) -> usize {
    vs[..i].iter().map(|&x| alg.projective_dims(x)[y]).sum()
}

/// Transpose `Tr m`, a module over the opposite algebra.
pub fn transpose(m: &Rep) -> Rep {
    let alg = m.alg();
    let op = alg.opposite();
    let pres = min_presentation(m);
    let p = alg.p();
    // Hom(-, Λ) turns P(y) into P^op(y) and d into d*: ⊕ P^op(v0) → ⊕ P^op(v1)
    let src = Rep::direct_sum_all(&op, &pres.v0.iter().map(|&y| op.projective(y)).collect::<Vec<_>>());
    let tgt = Rep::direct_sum_all(&op, &pres.v1.iter().map(|&x| op.projective(x)).collect::<Vec<_>>());
    let ds_src = rep::direct_sum(&op, &pres.v0.iter().map(|&y| op.projective(y)).collect::<Vec<_>>());
    let ds_tgt = rep::direct_sum(&op, &pres.v1.iter().map(|&x| op.projective(x)).collect::<Vec<_>>());
    let mut dstar = Morphism::zero(&src, &tgt);
    for (i, &x) in pres.v1.iter().enumerate() {
        // d(e_x) inside P0_x
        let col = pres.d.map(x).col(summand_offset(alg, &pres.v1, i, x));
        for (j, &y) in pres.v0.iter().enumerate() {
            let off = summand_offset(alg, &pres.v0, j, x);
            let n = alg.projective_dims(y)[x];
            let u = &col[off..off + n];
            if u.iter().all(|&c| c == 0) {
                continue;
            }
            // reverse u ∈ P(y)_x into P^op(x)_y
            let pox = op.projective(x);
            let mut top = vec![0u32; pox.dims()[x]];
            top[op.top_index(x)] = 1;
            let mut v = vec![0u32; pox.dims()[y]];
            for (w, &c) in alg.path_basis(y, x).iter().zip(u) {
                if c == 0 {
                    continue;
                }
                let rev: Vec<usize> = w.iter().rev().copied().collect();
                let img = op.path_matrix(pox.dims(), pox.maps(), &rev, x).mul_vec(&top);
                for (a, b) in v.iter_mut().zip(img) {
                    *a = ffmat::add(p, *a, ffmat::mul(p, c, b));
                }
            }
            let block = hom_from_projective(&op, y, &pox, &v);
            dstar = dstar.add(&ds_tgt.incl[i].comp(&block).comp(&ds_src.proj[j]).with_ends(&src, &tgt));
        }
    }
    rep::cokernel(&dstar).0
}

pub fn dual(m: &Rep) -> Rep {
    m.dual()
}

pub fn tau(m: &Rep) -> Rep {
    transpose(m).dual()
}

pub fn tau_minus(m: &Rep) -> Rep {
    transpose(&m.dual())
}

/// `Ext¹(Y, K) = Hom(ΩY, K) / ι*Hom(P0, K)` with explicit cocycles.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub y: Rep,
    pub k: Rep,
    pub p0: Rep,
    pub cover: Morphism,
    pub iota: Morphism,
    pub cocycles: HomSpace,
    coboundary: Subspace,
    sigma: Mat,
    pi: Mat,
}

impl ExtSpace {
    pub fn dim(&self) -> usize {
        self.pi.rows()
    }

    /// Coordinates of the class of a cocycle `ΩY → K`.
    pub fn class_of(&self, xi: &Morphism) -> Vec<u32> {
        self.pi.mul_vec(&self.cocycles.coords(xi))
    }

    /// Cocycle representing class coordinates `c`.
    pub fn cocycle(&self, c: &[u32]) -> Morphism {
        self.cocycles.element(&self.sigma.mul_vec(c))
    }

    pub fn basis(&self) -> Vec<Morphism> {
        (0..self.dim()).map(|i| self.cocycle(&unit(self.dim(), i))).collect()
    }

    pub fn is_split(&self, xi: &Morphism) -> bool {
        self.coboundary.contains(&self.cocycles.coords(xi))
    }

    /// Induced class under `φ: K → K` (pushout along `φ`).
    pub fn push(&self, phi: &Morphism, c: &[u32]) -> Vec<u32> {
        self.class_of(&phi.comp(&self.cocycle(c)))
    }

    /// Classes annihilated by `rad End(K)`.
    pub fn socle(&self) -> Subspace {
        let p = self.y.p();
        let n = self.dim();
        let end = EndAlgebra::new(&self.k);
        let mut rows = Vec::new();
        for phi in end.rad_basis() {
            let m: Vec<Vec<u32>> = (0..n).map(|i| self.push(&phi, &unit(n, i))).collect();
            let mt = Mat::from_row_vecs(p, n, &m).transpose();
            rows.extend(mt.row_vecs());
        }
        Mat::from_row_vecs(p, n, &rows).kernel().row_space()
    }
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn ext1(y: &Rep, k: &Rep) -> Result<ExtSpace> {
    if !y.alg().same(k.alg()) {
        return Err(Error::AlgebraMismatch);
    }
    let cover = proj_cover(y);
    let (omega, iota) = rep::kernel(&cover);
    let cocycles = hom_space(&omega, k)?;
    let hp = hom_space(cover.src(), k)?;
    let gens: Vec<Vec<u32>> = hp.basis.iter().map(|f| cocycles.coords(&f.comp(&iota))).collect();
    let coboundary = Subspace::span(y.p(), cocycles.dim(), &gens);
    let (sigma, pi) = coboundary.quotient_map();
    Ok(ExtSpace { y: y.clone(), k: k.clone(), p0: cover.src().clone(), cover, iota, cocycles, coboundary, sigma, pi })
}

/// A short exact sequence `0 → K → X → Y → 0`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub x: Rep,
    pub incl: Morphism,
    pub proj: Morphism,
}

impl Extension {
    pub fn is_exact(&self) -> bool {
        self.incl.is_mono()
            && self.proj.is_epi()
            && self.proj.comp(&self.incl).is_zero()
            && self.incl.src().dim() + self.proj.dst().dim() == self.x.dim()
    }
}

/// The pushout of `ΩY ↪ P0` along the cocycle `xi`.
pub fn realize(e: &ExtSpace, xi: &Morphism) -> Extension {
    realize_with(&e.cover, &e.iota, xi)
}

/// Pushout of `iota: ΩY ↪ P0` along `xi: ΩY → K`, with `cover: P0 ↠ Y`.
pub fn realize_with(cover: &Morphism, iota: &Morphism, xi: &Morphism) -> Extension {
    let alg = cover.dst().alg();
    let ds = rep::direct_sum(alg, &[cover.src().clone(), xi.dst().clone()]);
    let m = rep::column_map(&[iota.clone(), xi.neg()], iota.src()).with_ends(iota.src(), &ds.rep);
    let (x, q) = rep::cokernel(&m);
    let incl = q.comp(&ds.incl[1]);
    let down = cover.comp(&ds.proj[0]);
    let proj = rep::descend_through_epi(&down, &q).expect("cover kills the relations");
    Extension { x, incl, proj }
}

/// Class in `e` of a short exact sequence `K → X → Y` with `K = e.k`, `Y = e.y`.
pub fn class_of_sequence(e: &ExtSpace, incl: &Morphism, proj: &Morphism) -> Result<Vec<u32>> {
    let g = rep::right_leq(&e.cover, proj)?.ok_or_else(|| Error::Invalid("not an epimorphism onto Y".into()))?;
    let xi = rep::lift_through_mono(&g.comp(&e.iota), incl).ok_or_else(|| Error::Invalid("sequence is not exact".into()))?;
    Ok(e.class_of(&xi))
}

pub fn realize_class(e: &ExtSpace, c: &[u32]) -> Extension {
    realize(e, &e.cocycle(c))
}

/// Maps `c → y` factoring through a projective, as a subspace of `Hom(c, y)`.
pub fn hom_through_proj(c: &Rep, y: &Rep) -> Result<(HomSpace, Subspace)> {
    let h = hom_space(c, y)?;
    let cover = proj_cover(y);
    let hp = hom_space(c, cover.src())?;
    let gens: Vec<Vec<u32>> = hp.basis.iter().map(|g| h.coords(&cover.comp(g))).collect();
    let s = Subspace::span(c.p(), h.dim(), &gens);
    Ok((h, s))
}

/// The Auslander–Reiten sequence ending in a non-projective indecomposable.
pub fn ar_sequence(y: &Rep) -> Result<Extension> {
    if !is_indecomposable(y) {
        return Err(Error::Invalid("AR sequences need an indecomposable end term".into()));
    }
    if is_projective(y) {
        return Err(Error::Invalid("projective modules have no AR sequence ending in them".into()));
    }
    let k = tau(y);
    let e = ext1(y, &k)?;
    let s = e.socle();
    let c = s.basis_vecs().into_iter().next().ok_or_else(|| Error::Verification("empty Ext socle".into()))?;
    Ok(realize_class(&e, &c))
}

/// `rad y ↪ y` for projective `y`, otherwise the AR-sequence epimorphism.
pub fn min_right_almost_split(y: &Rep) -> Result<Morphism> {
    if !is_indecomposable(y) {
        return Err(Error::Invalid("minimal right almost split maps need an indecomposable target".into()));
    }
    if is_projective(y) {
        return Ok(rep::rad(y).1);
    }
    Ok(ar_sequence(y)?.proj)
}

/// `dim Ext¹(Y,K)` and `dim Hom(τ⁻K,Y) − dim Hom(τ⁻K,𝒫,Y)`.
pub fn ar_formula_dims(y: &Rep, k: &Rep) -> Result<(usize, usize)> {
    let e = ext1(y, k)?.dim();
    let (h, s) = hom_through_proj(&tau_minus(k), y)?;
    Ok((e, h.dim() - s.dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::is_isomorphic;

    fn kron() -> Algebra {
        Algebra::parse("field 2\nvertices a b\narrow alpha b a\narrow beta b a\n").unwrap()
    }

    #[test]
    fn covers() {
        let a = kron();
        let c = proj_cover(&a.simple(1));
        assert_eq!(c.src().dims(), &[2, 1]);
        assert!(c.is_epi());
        let c = proj_cover(&a.projective(0));
        assert!(c.is_iso());
        let pr = min_presentation(&a.simple(1));
        assert_eq!(pr.p1.dims(), &[2, 0]);
    }

    #[test]
    fn tau_on_kronecker() {
        let a = kron();
        // τ⁻ P_0 = P_2 with dimension vector (3, 2)
        let p2 = tau_minus(&a.projective(0));
        assert_eq!(p2.dims(), &[3, 2]);
        assert!(is_isomorphic(&tau(&p2), &a.projective(0)));
        let q0 = a.simple(1);
        let q1 = tau_minus(&q0);
        assert!(q1.is_zero());
        assert_eq!(tau(&q0).dims(), &[2, 3]);
        assert!(tau(&a.projective(1)).is_zero());
    }

    #[test]
    fn ext_and_realize() {
        let a = kron();
        let e = ext1(&a.simple(1), &a.simple(0)).unwrap();
        assert_eq!(e.dim(), 2);
        let split = realize_class(&e, &[0, 0]);
        assert!(split.is_exact());
        assert!(is_isomorphic(&split.x, &Rep::direct_sum_all(&a, &[a.simple(0), a.simple(1)])));
        let nonsplit = realize_class(&e, &[1, 0]);
        assert!(nonsplit.is_exact());
        assert!(is_indecomposable(&nonsplit.x));
    }

    #[test]
    fn ar_sequence_at_simple_injective() {
        let a = kron();
        let s = ar_sequence(&a.simple(1)).unwrap();
        assert!(s.is_exact());
        assert_eq!(s.x.dims(), &[2, 4]);
        let (e, h) = ar_formula_dims(&a.simple(1), &tau(&a.simple(1))).unwrap();
        assert_eq!(e, h);
    }

    #[test]
    fn through_projectives() {
        let a = kron();
        let p2 = tau_minus(&a.projective(0));
        let (h, s) = hom_through_proj(&p2, &a.simple(1)).unwrap();
        assert_eq!(h.dim(), 2);
        assert_eq!(s.dim(), 0);
        let (h, s) = hom_through_proj(&a.projective(1), &a.simple(1)).unwrap();
        assert_eq!(h.dim(), s.dim());
    }
}
