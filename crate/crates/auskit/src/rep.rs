//! Representations, morphisms and Hom spaces.
//!
//! A [`Rep`] stores one vector space dimension per vertex and one matrix per
//! arrow; a [`Morphism`] stores one matrix per vertex. Both are cheap to clone.
//! Endomorphism rings, decompositions and right-minimal versions of maps are
//! in [`crate::endo`] and re-exported here.

use crate::algebra::Algebra;
use crate::ffmat::{self, Mat, Subspace};
use crate::{Error, Result};
use std::fmt;
use std::sync::Arc;

pub use crate::endo::{
    decompose, is_isomorphic, krs_count, right_minimalize, Decomposition, EndAlgebra, Summand,
};

#[derive(Debug)]
struct RepData {
    alg: Algebra,
    dims: Vec<usize>,
    maps: Vec<Mat>,
}

#[derive(Clone)]
pub struct Rep(Arc<RepData>);

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}", self.dims())
    }
}

impl PartialEq for Rep {
    /// Equality of presentations (same basis), not isomorphism.
    fn eq(&self, o: &Rep) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || (self.alg().same(o.alg()) && self.dims() == o.dims() && self.maps() == o.maps())
    }
}

impl Rep {
    pub fn new(alg: Algebra, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Rep> {
        if dims.len() != alg.n_vertices() || maps.len() != alg.n_arrows() {
            return Err(Error::Dimension("representation does not match the quiver".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            let a = alg.arrow(i);
            if m.shape() != (dims[a.dst], dims[a.src]) || m.p() != alg.p() {
                return Err(Error::Dimension(format!("matrix of arrow `{}` has the wrong shape", a.name)));
            }
        }
        let r = Rep::new_unchecked(alg, dims, maps);
        if !r.relations_hold() {
            return Err(Error::Invalid("relations do not vanish on this representation".into()));
        }
        Ok(r)
    }

    pub(crate) fn new_unchecked(alg: Algebra, dims: Vec<usize>, maps: Vec<Mat>) -> Rep {
        Rep(Arc::new(RepData { alg, dims, maps }))
    }

    /// Representation with all arrows acting by zero.
    pub fn zero_maps(alg: Algebra, dims: Vec<usize>) -> Rep {
        let p = alg.p();
        let maps = (0..alg.n_arrows())
            .map(|i| {
                let a = alg.arrow(i);
                Mat::zeros(p, dims[a.dst], dims[a.src])
            })
            .collect();
        Rep::new_unchecked(alg, dims, maps)
    }

    pub fn zero(alg: &Algebra) -> Rep {
        Rep::zero_maps(alg.clone(), vec![0; alg.n_vertices()])
    }

    pub fn alg(&self) -> &Algebra {
        &self.0.alg
    }
    pub fn p(&self) -> u32 {
        self.0.alg.p()
    }
    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }
    pub fn maps(&self) -> &[Mat] {
        &self.0.maps
    }
    pub fn map(&self, a: usize) -> &Mat {
        &self.0.maps[a]
    }
    pub fn dim(&self) -> usize {
        self.dims().iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Offsets of the vertex blocks in the total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut o = Vec::with_capacity(self.dims().len());
        let mut s = 0;
        for &d in self.dims() {
            o.push(s);
            s += d;
        }
        o
    }

    pub fn relations_hold(&self) -> bool {
        let alg = self.alg();
        alg.relations().iter().all(|r| {
            let start = alg.arrow(r.terms[0].path[0]).src;
            let end = alg.arrow(*r.terms[0].path.last().unwrap()).dst;
            let mut acc = Mat::zeros(self.p(), self.dims()[end], self.dims()[start]);
            for t in &r.terms {
                acc = acc.axpy(t.coef, &alg.path_matrix(self.dims(), self.maps(), &t.path, start));
            }
            acc.is_zero()
        })
    }

    /// Vector-space dual, a representation of the opposite algebra.
    pub fn dual(&self) -> Rep {
        Rep::new_unchecked(self.alg().opposite(), self.dims().to_vec(), self.maps().iter().map(|m| m.transpose()).collect())
    }

    /// Same matrices over another handle of an identical quiver.
    pub fn rebase(&self, alg: &Algebra) -> Result<Rep> {
        if alg.quiver() != self.alg().quiver() || alg.p() != self.p() {
            return Err(Error::AlgebraMismatch);
        }
        Rep::new(alg.clone(), self.dims().to_vec(), self.maps().to_vec())
    }

    pub fn direct_sum_all(alg: &Algebra, xs: &[Rep]) -> Rep {
        direct_sum(alg, xs).rep
    }

    /// `self^n`.
    pub fn power(&self, n: usize) -> Rep {
        Rep::direct_sum_all(self.alg(), &vec![self.clone(); n])
    }

    /// Action of an arrow on a total-space vector.
    pub fn act(&self, a: usize, v: &[u32]) -> Vec<u32> {
        let arrow = self.alg().arrow(a);
        let off = self.offsets();
        let x = &v[off[arrow.src]..off[arrow.src] + self.dims()[arrow.src]];
        let y = self.map(a).mul_vec(x);
        let mut out = vec![0; self.dim()];
        out[off[arrow.dst]..off[arrow.dst] + y.len()].copy_from_slice(&y);
        out
    }

    /// Action matrices on the total space: one per arrow plus the vertex idempotents.
    pub fn total_actions(&self) -> Vec<Mat> {
        let p = self.p();
        let n = self.dim();
        let off = self.offsets();
        let mut out = Vec::new();
        for a in 0..self.alg().n_arrows() {
            let arrow = self.alg().arrow(a);
            let mut m = Mat::zeros(p, n, n);
            m.put(off[arrow.dst], off[arrow.src], self.map(a));
            out.push(m);
        }
        for x in 0..self.dims().len() {
            let mut m = Mat::zeros(p, n, n);
            m.put(off[x], off[x], &Mat::identity(p, self.dims()[x]));
            out.push(m);
        }
        out
    }
}

#[derive(Clone)]
pub struct Morphism {
    src: Rep,
    dst: Rep,
    maps: Vec<Mat>,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({:?} -> {:?}; {:?})", self.src, self.dst, self.flat())
    }
}

impl PartialEq for Morphism {
    fn eq(&self, o: &Morphism) -> bool {
        self.src == o.src && self.dst == o.dst && self.maps == o.maps
    }
}

impl Morphism {
    pub fn new(src: Rep, dst: Rep, maps: Vec<Mat>) -> Result<Morphism> {
        if !src.alg().same(dst.alg()) {
            return Err(Error::AlgebraMismatch);
        }
        if maps.len() != src.dims().len()
            || maps.iter().enumerate().any(|(x, m)| m.shape() != (dst.dims()[x], src.dims()[x]))
        {
            return Err(Error::Dimension("morphism blocks do not match the modules".into()));
        }
        let f = Morphism { src, dst, maps };
        if !f.intertwines() {
            return Err(Error::Invalid("matrices do not commute with the arrows".into()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(src: Rep, dst: Rep, maps: Vec<Mat>) -> Morphism {
        debug_assert!(maps.iter().enumerate().all(|(x, m)| m.shape() == (dst.dims()[x], src.dims()[x])));
        Morphism { src, dst, maps }
    }

    pub fn identity(x: &Rep) -> Morphism {
        let maps = x.dims().iter().map(|&d| Mat::identity(x.p(), d)).collect();
        Morphism { src: x.clone(), dst: x.clone(), maps }
    }

    pub fn zero(x: &Rep, y: &Rep) -> Morphism {
        let maps = x.dims().iter().zip(y.dims()).map(|(&a, &b)| Mat::zeros(x.p(), b, a)).collect();
        Morphism { src: x.clone(), dst: y.clone(), maps }
    }

    /// Build from a flat coordinate vector (vertex blocks, row-major).
    pub fn from_flat(src: &Rep, dst: &Rep, v: &[u32]) -> Morphism {
        let mut maps = Vec::with_capacity(src.dims().len());
        let mut off = 0;
        for (x, &d) in src.dims().iter().enumerate() {
            let r = dst.dims()[x];
            maps.push(Mat::from_vec(src.p(), r, d, v[off..off + r * d].to_vec()));
            off += r * d;
        }
        Morphism { src: src.clone(), dst: dst.clone(), maps }
    }

    pub fn src(&self) -> &Rep {
        &self.src
    }
    pub fn dst(&self) -> &Rep {
        &self.dst
    }
    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }
    pub fn map(&self, x: usize) -> &Mat {
        &self.maps[x]
    }
    pub fn p(&self) -> u32 {
        self.src.p()
    }

    pub fn flat(&self) -> Vec<u32> {
        self.maps.iter().flat_map(|m| m.data().iter().copied()).collect()
    }

    /// Block-diagonal matrix on the total spaces.
    pub fn total(&self) -> Mat {
        Mat::block_diag(self.p(), &self.maps.iter().collect::<Vec<_>>())
    }

    pub fn intertwines(&self) -> bool {
        let alg = self.src.alg();
        (0..alg.n_arrows()).all(|a| {
            let ar = alg.arrow(a);
            self.dst.map(a).mul(&self.maps[ar.src]) == self.maps[ar.dst].mul(self.src.map(a))
        })
    }

    /// `self ∘ f`.
    pub fn comp(&self, f: &Morphism) -> Morphism {
        assert!(f.dst.dims() == self.src.dims(), "composition of incompatible morphisms");
        let maps = self.maps.iter().zip(&f.maps).map(|(a, b)| a.mul(b)).collect();
        Morphism { src: f.src.clone(), dst: self.dst.clone(), maps }
    }

    pub fn add(&self, o: &Morphism) -> Morphism {
        let maps = self.maps.iter().zip(&o.maps).map(|(a, b)| a.add(b)).collect();
        Morphism { src: self.src.clone(), dst: self.dst.clone(), maps }
    }

    pub fn sub(&self, o: &Morphism) -> Morphism {
        let maps = self.maps.iter().zip(&o.maps).map(|(a, b)| a.sub(b)).collect();
        Morphism { src: self.src.clone(), dst: self.dst.clone(), maps }
    }

    pub fn scale(&self, c: u32) -> Morphism {
        Morphism { src: self.src.clone(), dst: self.dst.clone(), maps: self.maps.iter().map(|m| m.scale(c)).collect() }
    }

    pub fn neg(&self) -> Morphism {
        self.scale(self.p() - 1)
    }

    /// Same matrices with the source replaced by an equal-dimension module.
    pub(crate) fn with_ends(&self, src: &Rep, dst: &Rep) -> Morphism {
        Morphism { src: src.clone(), dst: dst.clone(), maps: self.maps.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(|m| m.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.maps.iter().map(|m| m.rank()).sum()
    }

    pub fn is_mono(&self) -> bool {
        self.rank() == self.src.dim()
    }

    pub fn is_epi(&self) -> bool {
        self.rank() == self.dst.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.src.dims() == self.dst.dims() && self.is_mono()
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let maps = self.maps.iter().map(|m| m.inverse()).collect::<Option<Vec<_>>>()?;
        Some(Morphism { src: self.dst.clone(), dst: self.src.clone(), maps })
    }

    pub fn dual(&self) -> Morphism {
        Morphism { src: self.dst.dual(), dst: self.src.dual(), maps: self.maps.iter().map(|m| m.transpose()).collect() }
    }
}

/// Linear conditions on the entries of an unknown morphism `X → Y`.
///
/// Unknowns are ordered vertex by vertex, row-major inside each block, which
/// matches [`Morphism::flat`].
pub(crate) struct HomSystem {
    pub x: Rep,
    pub y: Rep,
    pub off: Vec<usize>,
    pub n: usize,
}

impl HomSystem {
    pub fn new(x: &Rep, y: &Rep) -> HomSystem {
        let mut off = Vec::new();
        let mut n = 0;
        for (a, b) in x.dims().iter().zip(y.dims()) {
            off.push(n);
            n += a * b;
        }
        HomSystem { x: x.clone(), y: y.clone(), off, n }
    }

    #[inline]
    pub fn var(&self, v: usize, r: usize, c: usize) -> usize {
        self.off[v] + r * self.x.dims()[v] + c
    }

    /// Rows expressing `M^Y_α f_s − f_t M^X_α = 0` for every arrow.
    pub fn intertwining_rows(&self) -> Vec<Vec<u32>> {
        let p = self.x.p();
        let alg = self.x.alg();
        let mut rows = Vec::new();
        for a in 0..alg.n_arrows() {
            let ar = alg.arrow(a);
            let (s, t) = (ar.src, ar.dst);
            let ya = self.y.map(a);
            let xa = self.x.map(a);
            for r in 0..self.y.dims()[t] {
                for c in 0..self.x.dims()[s] {
                    let mut row = vec![0u32; self.n];
                    for k in 0..self.y.dims()[s] {
                        let v = ya.get(r, k);
                        if v != 0 {
                            let i = self.var(s, k, c);
                            row[i] = ffmat::add(p, row[i], v);
                        }
                    }
                    for k in 0..self.x.dims()[t] {
                        let v = xa.get(k, c);
                        if v != 0 {
                            let i = self.var(t, r, k);
                            row[i] = ffmat::sub(p, row[i], v);
                        }
                    }
                    if row.iter().any(|&v| v != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        rows
    }

    /// Rows and right-hand side for `g ∘ h = target` where `h` is the unknown.
    pub fn post_compose_rows(&self, g: &Morphism, target: &Morphism) -> (Vec<Vec<u32>>, Vec<u32>) {
        let p = self.x.p();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for v in 0..self.x.dims().len() {
            let gv = g.map(v);
            for r in 0..gv.rows() {
                for c in 0..self.x.dims()[v] {
                    let mut row = vec![0u32; self.n];
                    for k in 0..gv.cols() {
                        row[self.var(v, k, c)] = gv.get(r, k);
                    }
                    rows.push(row);
                    rhs.push(target.map(v).get(r, c));
                }
            }
        }
        let _ = p;
        (rows, rhs)
    }
}

/// A basis of `Hom(X, Y)` with exact coordinate extraction.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub src: Rep,
    pub dst: Rep,
    pub basis: Vec<Morphism>,
    free: Vec<usize>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a morphism in the basis.
    pub fn coords(&self, f: &Morphism) -> Vec<u32> {
        let v = f.flat();
        self.free.iter().map(|&i| v[i]).collect()
    }

    pub fn element(&self, c: &[u32]) -> Morphism {
        let p = self.src.p();
        let mut f = Morphism::zero(&self.src, &self.dst);
        for (b, &ci) in self.basis.iter().zip(c) {
            if ci != 0 {
                f = f.add(&b.scale(ci % p));
            }
        }
        f
    }
}

pub fn hom_space(x: &Rep, y: &Rep) -> Result<HomSpace> {
    if !x.alg().same(y.alg()) {
        return Err(Error::AlgebraMismatch);
    }
    let sys = HomSystem::new(x, y);
    let rows = sys.intertwining_rows();
    let p = x.p();
    let a = Mat::from_row_vecs(p, sys.n, &rows);
    let rr = a.rref();
    let free = ffmat::free_columns(&rr, sys.n);
    let ker = a.kernel();
    let basis = (0..ker.rows()).map(|i| Morphism::from_flat(x, y, ker.row(i))).collect();
    Ok(HomSpace { src: x.clone(), dst: y.clone(), basis, free })
}

pub fn hom_dim(x: &Rep, y: &Rep) -> usize {
    hom_space(x, y).map(|h| h.dim()).unwrap_or(0)
}

/// Submodule given by one subspace per vertex, with its inclusion.
pub fn subrep(y: &Rep, subs: &[Subspace]) -> Result<(Rep, Morphism)> {
    let alg = y.alg();
    let p = y.p();
    let incl: Vec<Mat> = subs.iter().map(|s| s.basis().transpose()).collect();
    let mut maps = Vec::with_capacity(alg.n_arrows());
    for a in 0..alg.n_arrows() {
        let ar = alg.arrow(a);
        let img = y.map(a).mul(&incl[ar.src]);
        let tgt = &subs[ar.dst];
        let mut m = Mat::zeros(p, tgt.dim(), subs[ar.src].dim());
        for c in 0..img.cols() {
            let col = img.col(c);
            let co = tgt.coords(&col).ok_or_else(|| Error::Invalid("subspaces are not arrow-invariant".into()))?;
            for (r, v) in co.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        maps.push(m);
    }
    let sub = Rep::new_unchecked(alg.clone(), subs.iter().map(|s| s.dim()).collect(), maps);
    let i = Morphism::new_unchecked(sub.clone(), y.clone(), incl);
    Ok((sub, i))
}

/// Quotient by an invariant family of subspaces, with the projection.
pub fn quotient_by(y: &Rep, subs: &[Subspace]) -> Result<(Rep, Morphism)> {
    let alg = y.alg();
    let qm: Vec<(Mat, Mat)> = subs.iter().map(|s| s.quotient_map()).collect();
    for a in 0..alg.n_arrows() {
        let ar = alg.arrow(a);
        if !subs[ar.src].basis_vecs().iter().all(|v| subs[ar.dst].contains(&y.map(a).mul_vec(v))) {
            return Err(Error::Invalid("subspaces are not arrow-invariant".into()));
        }
    }
    let maps = (0..alg.n_arrows())
        .map(|a| {
            let ar = alg.arrow(a);
            qm[ar.dst].1.mul(y.map(a)).mul(&qm[ar.src].0)
        })
        .collect();
    let q = Rep::new_unchecked(alg.clone(), qm.iter().map(|(_, pi)| pi.rows()).collect(), maps);
    let proj = Morphism::new_unchecked(y.clone(), q.clone(), qm.into_iter().map(|(_, pi)| pi).collect());
    Ok((q, proj))
}

pub fn kernel(f: &Morphism) -> (Rep, Morphism) {
    let subs: Vec<Subspace> = f.maps().iter().map(|m| m.kernel().row_space()).collect();
    subrep(f.src(), &subs).expect("kernel is a submodule")
}

pub fn image_spaces(f: &Morphism) -> Vec<Subspace> {
    f.maps().iter().map(|m| m.column_space()).collect()
}

pub fn image(f: &Morphism) -> (Rep, Morphism) {
    subrep(f.dst(), &image_spaces(f)).expect("image is a submodule")
}

/// `f = mono ∘ epi` through the image.
pub fn image_factorization(f: &Morphism) -> (Morphism, Morphism) {
    let (im, incl) = image(f);
    let epi = lift_through_mono(f, &incl).expect("f factors through its image");
    let _ = im;
    (epi, incl)
}

pub fn cokernel(f: &Morphism) -> (Rep, Morphism) {
    quotient_by(f.dst(), &image_spaces(f)).expect("image is a submodule")
}

/// Quotient of `y` by the image of a monomorphism.
pub fn quotient(y: &Rep, sub: &Morphism) -> Result<(Rep, Morphism)> {
    if !sub.is_mono() {
        return Err(Error::Invalid("quotient requires a monomorphism".into()));
    }
    if sub.dst() != y {
        return Err(Error::Invalid("monomorphism does not end in the module".into()));
    }
    Ok(cokernel(sub))
}

/// `h` with `mono ∘ h = g`, when `g` lands in the image of `mono`.
pub fn lift_through_mono(g: &Morphism, mono: &Morphism) -> Option<Morphism> {
    let maps = g
        .maps()
        .iter()
        .zip(mono.maps())
        .map(|(gv, mv)| ffmat::solve_all(mv, gv).ok().flatten().map(|s| s.particular))
        .collect::<Option<Vec<_>>>()?;
    let h = Morphism::new_unchecked(g.src().clone(), mono.src().clone(), maps);
    (mono.comp(&h) == *g).then_some(h)
}

/// `h` with `h ∘ epi = g`, when `g` vanishes on the kernel of `epi`.
pub fn descend_through_epi(g: &Morphism, epi: &Morphism) -> Option<Morphism> {
    let maps = g
        .maps()
        .iter()
        .zip(epi.maps())
        .map(|(gv, ev)| {
            // h·e = g  <=>  eᵀ·hᵀ = gᵀ
            ffmat::solve_all(&ev.transpose(), &gv.transpose()).ok().flatten().map(|s| s.particular.transpose())
        })
        .collect::<Option<Vec<_>>>()?;
    let h = Morphism::new_unchecked(epi.dst().clone(), g.dst().clone(), maps);
    (h.comp(epi) == *g).then_some(h)
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub rep: Rep,
    pub incl: Vec<Morphism>,
    pub proj: Vec<Morphism>,
}

pub fn direct_sum(alg: &Algebra, xs: &[Rep]) -> DirectSum {
    let p = alg.p();
    let nv = alg.n_vertices();
    let dims: Vec<usize> = (0..nv).map(|v| xs.iter().map(|x| x.dims()[v]).sum()).collect();
    let maps = (0..alg.n_arrows())
        .map(|a| Mat::block_diag(p, &xs.iter().map(|x| x.map(a)).collect::<Vec<_>>()))
        .collect();
    let rep = Rep::new_unchecked(alg.clone(), dims.clone(), maps);
    let mut incl = Vec::new();
    let mut proj = Vec::new();
    let mut off = vec![0; nv];
    for x in xs {
        let mut im = Vec::new();
        let mut pm = Vec::new();
        for v in 0..nv {
            let mut i = Mat::zeros(p, dims[v], x.dims()[v]);
            i.put(off[v], 0, &Mat::identity(p, x.dims()[v]));
            pm.push(i.transpose());
            im.push(i);
            off[v] += x.dims()[v];
        }
        incl.push(Morphism::new_unchecked(x.clone(), rep.clone(), im));
        proj.push(Morphism::new_unchecked(rep.clone(), x.clone(), pm));
    }
    DirectSum { rep, incl, proj }
}

/// `[f_1, ..., f_n]: ⊕ X_i → Y`.
pub fn row_map(fs: &[Morphism], y: &Rep) -> Morphism {
    let alg = y.alg();
    let ds = direct_sum(alg, &fs.iter().map(|f| f.src().clone()).collect::<Vec<_>>());
    let mut g = Morphism::zero(&ds.rep, y);
    for (f, pr) in fs.iter().zip(&ds.proj) {
        g = g.add(&f.comp(pr));
    }
    g
}

/// `[g_1; ...; g_n]: X → ⊕ Y_i`.
pub fn column_map(gs: &[Morphism], x: &Rep) -> Morphism {
    let alg = x.alg();
    let ds = direct_sum(alg, &gs.iter().map(|g| g.dst().clone()).collect::<Vec<_>>());
    let mut h = Morphism::zero(x, &ds.rep);
    for (g, inc) in gs.iter().zip(&ds.incl) {
        h = h.add(&inc.comp(g));
    }
    h
}

/// Radical, socle and top with their canonical maps.
#[derive(Clone, Debug)]
pub struct Structure {
    pub rad: (Rep, Morphism),
    pub soc: (Rep, Morphism),
    pub top: (Rep, Morphism),
}

pub fn rad_spaces(x: &Rep) -> Vec<Subspace> {
    let alg = x.alg();
    let p = x.p();
    (0..alg.n_vertices())
        .map(|v| {
            let mut gens: Vec<Vec<u32>> = Vec::new();
            for a in 0..alg.n_arrows() {
                if alg.arrow(a).dst == v {
                    let m = x.map(a);
                    for c in 0..m.cols() {
                        gens.push(m.col(c));
                    }
                }
            }
            Subspace::span(p, x.dims()[v], &gens)
        })
        .collect()
}

pub fn soc_spaces(x: &Rep) -> Vec<Subspace> {
    let alg = x.alg();
    let p = x.p();
    (0..alg.n_vertices())
        .map(|v| {
            let outs: Vec<&Mat> = (0..alg.n_arrows()).filter(|&a| alg.arrow(a).src == v).map(|a| x.map(a)).collect();
            if outs.is_empty() {
                return Subspace::full(p, x.dims()[v]);
            }
            let stacked = Mat::vstack(p, x.dims()[v], &outs);
            stacked.kernel().row_space()
        })
        .collect()
}

pub fn rad(x: &Rep) -> (Rep, Morphism) {
    subrep(x, &rad_spaces(x)).expect("radical is a submodule")
}

pub fn soc(x: &Rep) -> (Rep, Morphism) {
    subrep(x, &soc_spaces(x)).expect("socle is a submodule")
}

pub fn top(x: &Rep) -> (Rep, Morphism) {
    quotient_by(x, &rad_spaces(x)).expect("radical is a submodule")
}

pub fn structure(x: &Rep) -> Structure {
    Structure { rad: rad(x), soc: soc(x), top: top(x) }
}

/// Dimension vector of the top.
pub fn top_dims(x: &Rep) -> Vec<usize> {
    rad_spaces(x).iter().zip(x.dims()).map(|(s, &d)| d - s.dim()).collect()
}

pub fn soc_dims(x: &Rep) -> Vec<usize> {
    soc_spaces(x).iter().map(|s| s.dim()).collect()
}

/// Some `h: X → X'` with `f = f'·h`, lexicographically smallest in the
/// canonical coordinates.
pub fn right_leq(f: &Morphism, fp: &Morphism) -> Result<Option<Morphism>> {
    if f.dst().dims() != fp.dst().dims() || !f.dst().alg().same(fp.dst().alg()) {
        return Err(Error::Invalid("right_leq needs a common target".into()));
    }
    let sys = HomSystem::new(f.src(), fp.src());
    let mut rows = sys.intertwining_rows();
    let mut rhs = vec![0u32; rows.len()];
    let (r2, b2) = sys.post_compose_rows(fp, f);
    rows.extend(r2);
    rhs.extend(b2);
    let a = Mat::from_row_vecs(f.p(), sys.n, &rows);
    Ok(ffmat::lex_min_solution(&a, &rhs).map(|v| Morphism::from_flat(f.src(), fp.src(), &v)))
}

pub fn factors_through(f: &Morphism, fp: &Morphism) -> bool {
    right_leq(f, fp).ok().flatten().is_some()
}

pub fn right_equivalent(f: &Morphism, fp: &Morphism) -> Result<bool> {
    Ok(right_leq(f, fp)?.is_some() && right_leq(fp, f)?.is_some())
}

/// Pullback of `f1, f2` as the kernel of `[f1, −f2]`.
pub fn pullback(f1: &Morphism, f2: &Morphism) -> Result<(Rep, Morphism, Morphism)> {
    if f1.dst() != f2.dst() {
        return Err(Error::Invalid("pullback needs a common target".into()));
    }
    let alg = f1.src().alg();
    let ds = direct_sum(alg, &[f1.src().clone(), f2.src().clone()]);
    let d = f1.comp(&ds.proj[0]).sub(&f2.comp(&ds.proj[1]));
    let (k, incl) = kernel(&d);
    let g1 = ds.proj[0].comp(&incl);
    let g2 = ds.proj[1].comp(&incl);
    Ok((k, g1, g2))
}

pub fn meet_map(f1: &Morphism, f2: &Morphism) -> Result<Morphism> {
    let (_, g1, _) = pullback(f1, f2)?;
    Ok(f1.comp(&g1))
}

pub fn join_map(f1: &Morphism, f2: &Morphism) -> Result<Morphism> {
    if f1.dst() != f2.dst() {
        return Err(Error::Invalid("join needs a common target".into()));
    }
    Ok(row_map(&[f1.clone(), f2.clone()], f1.dst()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Algebra {
        Algebra::parse("field 2\nvertices a b\narrow alpha b a\n").unwrap()
    }

    #[test]
    fn hom_projective_to_simple() {
        let a = a2();
        let pb = a.projective(1);
        let sb = a.simple(1);
        assert_eq!(hom_space(&pb, &sb).unwrap().dim(), 1);
        assert_eq!(hom_space(&sb, &sb).unwrap().dim(), 1);
        assert_eq!(hom_space(&a.simple(0), &sb).unwrap().dim(), 0);
    }

    #[test]
    fn kernel_of_projection_is_simple() {
        let a = a2();
        let pb = a.projective(1);
        let f = hom_space(&pb, &a.simple(1)).unwrap().basis[0].clone();
        let (k, i) = kernel(&f);
        assert_eq!(k.dims(), &[1, 0]);
        assert!(i.is_mono());
        assert!(f.comp(&i).is_zero());
        let (c, _) = cokernel(&Morphism::identity(&pb));
        assert!(c.is_zero());
    }

    #[test]
    fn radical_and_top() {
        let a = a2();
        let pb = a.projective(1);
        assert_eq!(rad(&pb).0.dims(), &[1, 0]);
        assert_eq!(top(&pb).0.dims(), &[0, 1]);
        assert_eq!(soc(&pb).0.dims(), &[1, 0]);
    }

    #[test]
    fn pullback_of_projection_with_itself() {
        let a = a2();
        let pb = a.projective(1);
        let f = hom_space(&pb, &a.simple(1)).unwrap().basis[0].clone();
        let (u, g1, g2) = pullback(&f, &f).unwrap();
        assert_eq!(u.dims(), &[2, 1]);
        assert_eq!(f.comp(&g1), f.comp(&g2));
        let m = meet_map(&f, &f).unwrap();
        assert!(right_equivalent(&m, &f).unwrap());
    }

    #[test]
    fn right_leq_identity() {
        let a = a2();
        let pb = a.projective(1);
        let sb = a.simple(1);
        let f = hom_space(&pb, &sb).unwrap().basis[0].clone();
        let w = right_leq(&f, &Morphism::identity(&sb)).unwrap().unwrap();
        assert_eq!(w, f);
        assert!(right_leq(&Morphism::identity(&sb), &f).unwrap().is_none());
        let z = Morphism::zero(&a.simple(0), &sb);
        assert!(right_leq(&z, &f).unwrap().is_some());
        assert!(right_leq(&Morphism::identity(&sb), &z).unwrap().is_none());
    }

    #[test]
    fn dual_is_involutive() {
        let a = a2();
        let pb = a.projective(1);
        assert_eq!(pb.dual().dual(), pb);
        assert_eq!(a.injective(0).dims(), &[1, 1]);
        assert_eq!(a.injective(1).dims(), &[0, 1]);
    }
}
