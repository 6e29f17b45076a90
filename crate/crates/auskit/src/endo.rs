//! Endomorphism algebras: Jacobson radical, idempotents, Krull–Remak–Schmidt
//! decompositions and right-minimal versions of maps.
//!
//! The radical is computed with the Cohen–Ivanyos–Wales trace criterion,
//! which works in every characteristic. Idempotents are found in the
//! semisimple quotient (center plus Berlekamp subalgebra, otherwise the right
//! identity of a proper left ideal) and lifted by Fitting decomposition.

use crate::ffmat::{self, Mat, Subspace};
use crate::rep::{self, hom_space, Morphism, Rep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A subalgebra of `End(X)` given by a basis of endomorphisms.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub x: Rep,
    /// Basis in reduced echelon form with respect to [`Morphism::flat`].
    pub basis: Vec<Morphism>,
    space: Subspace,
    rad: Subspace,
}

impl EndAlgebra {
    pub fn new(x: &Rep) -> EndAlgebra {
        let h = hom_space(x, x).expect("same algebra");
        EndAlgebra::from_elements(x, &h.basis)
    }

    /// Algebra spanned by the given endomorphisms (assumed closed under products).
    pub fn from_elements(x: &Rep, elems: &[Morphism]) -> EndAlgebra {
        let p = x.p();
        let n: usize = x.dims().iter().map(|d| d * d).sum();
        let space = Subspace::span(p, n, &elems.iter().map(|e| e.flat()).collect::<Vec<_>>());
        let basis = space.basis_vecs().iter().map(|v| Morphism::from_flat(x, x, v)).collect::<Vec<_>>();
        let mut a = EndAlgebra { x: x.clone(), basis, space, rad: Subspace::zero(p, 0) };
        a.rad = a.compute_radical();
        a
    }

    pub fn p(&self) -> u32 {
        self.x.p()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, f: &Morphism) -> Vec<u32> {
        self.space.coords(&f.flat()).expect("element of the algebra")
    }

    pub fn elem(&self, c: &[u32]) -> Morphism {
        let p = self.p();
        let mut v = vec![0u32; self.space.ambient()];
        for (b, &ci) in self.space.basis_vecs().iter().zip(c) {
            if ci != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = ffmat::add(p, *x, ffmat::mul(p, ci, y));
                }
            }
        }
        Morphism::from_flat(&self.x, &self.x, &v)
    }

    /// Radical as a subspace of the coordinate space.
    pub fn radical(&self) -> &Subspace {
        &self.rad
    }

    pub fn rad_basis(&self) -> Vec<Morphism> {
        self.rad.basis_vecs().iter().map(|c| self.elem(c)).collect()
    }

    pub fn in_radical(&self, f: &Morphism) -> bool {
        self.rad.contains(&self.coords(f))
    }

    /// `dim End/rad`.
    pub fn top_dim(&self) -> usize {
        self.dim() - self.rad.dim()
    }

    /// `dim rad^k` for `k = 0, 1, …` up to the first zero power.
    pub fn radical_power_dims(&self) -> Vec<usize> {
        let p = self.p();
        let rad = self.rad_basis();
        let mut out = vec![self.dim()];
        let mut cur = self.rad.clone();
        while !cur.is_zero() {
            out.push(cur.dim());
            let gens: Vec<Vec<u32>> = cur
                .basis_vecs()
                .iter()
                .flat_map(|c| {
                    let x = self.elem(c);
                    rad.iter().map(move |r| r.comp(&x))
                })
                .map(|m| self.coords(&m))
                .collect();
            cur = Subspace::span(p, self.dim(), &gens);
        }
        out.push(0);
        out
    }

    /// Least `n` with `rad^n = 0`.
    pub fn loewy_length(&self) -> usize {
        self.radical_power_dims().len() - 1 - usize::from(self.dim() == 0)
    }

    /// Whether the algebra is local (`End/rad` a field).
    pub fn is_local(&self) -> bool {
        if self.dim() == 0 {
            return false;
        }
        let s = Semisimple::new(self);
        s.is_field()
    }

    fn compute_radical(&self) -> Subspace {
        let p = self.p();
        let m = self.dim();
        let n = self.x.dim();
        if m == 0 {
            return Subspace::zero(p, 0);
        }
        let mut l = 0u32;
        while (p as usize).pow(l + 1) <= n {
            l += 1;
        }
        // current ideal as coordinate vectors
        let mut ideal: Vec<Vec<u32>> = (0..m).map(|i| unit(m, i)).collect();
        for i in 0..=l {
            if ideal.is_empty() {
                break;
            }
            let modulus = (p as u64).pow(i + 1);
            let e = (p as u64).pow(i);
            let elems: Vec<Morphism> = ideal.iter().map(|c| self.elem(c)).collect();
            let mut g = Mat::zeros(p, elems.len(), m);
            for (k, a) in elems.iter().enumerate() {
                for (j, b) in self.basis.iter().enumerate() {
                    let t = lifted_power_trace(&a.comp(b), e, modulus);
                    debug_assert_eq!(t % (modulus / p as u64), 0);
                    g.set(k, j, ((t / (modulus / p as u64)) % p as u64) as u32);
                }
            }
            // c with Σ c_k g[k][j] = 0 for all j
            let lk = g.transpose().kernel();
            let cur = Mat::from_row_vecs(p, m, &ideal);
            ideal = lk.mul(&cur).row_space().basis_vecs();
        }
        Subspace::span(p, m, &ideal)
    }
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `Tr(ã^e) mod modulus` for the integer lift `ã` with entries in `0..p`.
fn lifted_power_trace(f: &Morphism, e: u64, modulus: u64) -> u64 {
    let mut t = 0u64;
    for m in f.maps() {
        let n = m.rows();
        if n == 0 {
            continue;
        }
        let base: Vec<u64> = m.data().iter().map(|&v| v as u64).collect();
        let r = int_pow(&base, n, e, modulus);
        for i in 0..n {
            t = (t + r[i * n + i]) % modulus;
        }
    }
    t
}

fn int_mul(a: &[u64], b: &[u64], n: usize, md: u64) -> Vec<u64> {
    let mut c = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] = (c[i * n + j] + x * b[k * n + j]) % md;
            }
        }
    }
    c
}

fn int_pow(a: &[u64], n: usize, mut e: u64, md: u64) -> Vec<u64> {
    let mut r = vec![0u64; n * n];
    for i in 0..n {
        r[i * n + i] = 1 % md;
    }
    let mut b: Vec<u64> = a.iter().map(|&x| x % md).collect();
    while e > 0 {
        if e & 1 == 1 {
            r = int_mul(&r, &b, n, md);
        }
        b = int_mul(&b, &b, n, md);
        e >>= 1;
    }
    r
}

/// The semisimple quotient `A/rad A` with structure constants.
struct Semisimple<'a> {
    a: &'a EndAlgebra,
    s: usize,
    sigma: Mat,
    pi: Mat,
    table: Vec<Vec<Vec<u32>>>,
}

impl<'a> Semisimple<'a> {
    fn new(a: &'a EndAlgebra) -> Semisimple<'a> {
        let (sigma, pi) = a.radical().quotient_map();
        let s = pi.rows();
        let lifts: Vec<Morphism> = (0..s).map(|i| a.elem(&sigma.col(i))).collect();
        let table = (0..s)
            .map(|i| (0..s).map(|j| pi.mul_vec(&a.coords(&lifts[i].comp(&lifts[j])))).collect())
            .collect();
        Semisimple { a, s, sigma, pi, table }
    }

    fn p(&self) -> u32 {
        self.a.p()
    }

    fn mul(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        let p = self.p();
        let mut out = vec![0u32; self.s];
        for i in 0..self.s {
            if u[i] == 0 {
                continue;
            }
            for j in 0..self.s {
                let c = ffmat::mul(p, u[i], v[j]);
                if c == 0 {
                    continue;
                }
                for (o, &t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o = ffmat::add(p, *o, ffmat::mul(p, c, t));
                }
            }
        }
        out
    }

    fn one(&self) -> Vec<u32> {
        self.pi.mul_vec(&self.a.coords(&Morphism::identity(&self.a.x)))
    }

    fn pow(&self, u: &[u32], e: u64) -> Vec<u32> {
        let mut r = self.one();
        for _ in 0..e {
            r = self.mul(&r, u);
        }
        r
    }

    fn left_mult(&self, u: &[u32]) -> Mat {
        let cols: Vec<Vec<u32>> = (0..self.s).map(|j| self.mul(u, &unit(self.s, j))).collect();
        Mat::from_row_vecs(self.p(), self.s, &cols).transpose()
    }

    fn is_invertible(&self, u: &[u32]) -> bool {
        self.left_mult(u).rank() == self.s
    }

    fn center(&self) -> Vec<Vec<u32>> {
        let p = self.p();
        let s = self.s;
        // z ↦ z e_j − e_j z, stacked over j
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let img: Vec<Vec<Vec<u32>>> = (0..s)
            .map(|k| (0..s).map(|j| {
                let a = self.mul(&unit(s, k), &unit(s, j));
                let b = self.mul(&unit(s, j), &unit(s, k));
                a.iter().zip(&b).map(|(&x, &y)| ffmat::sub(p, x, y)).collect()
            }).collect())
            .collect();
        for j in 0..s {
            for r in 0..s {
                rows.push((0..s).map(|k| img[k][j][r]).collect());
            }
        }
        Mat::from_row_vecs(p, s, &rows).kernel().row_vecs()
    }

    fn is_commutative(&self) -> bool {
        self.center().len() == self.s
    }

    /// Basis of `{z ∈ Z : z^p = z}`.
    fn berlekamp(&self, center: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let p = self.p();
        let k = center.len();
        let diffs: Vec<Vec<u32>> = center
            .iter()
            .map(|z| {
                let f = self.pow(z, p as u64);
                f.iter().zip(z).map(|(&a, &b)| ffmat::sub(p, a, b)).collect()
            })
            .collect();
        let m = Mat::from_row_vecs(p, self.s, &diffs).transpose();
        let ker = m.kernel();
        let zs = Mat::from_row_vecs(p, self.s, center);
        let _ = k;
        ker.mul(&zs).row_vecs()
    }

    fn is_field(&self) -> bool {
        self.s > 0 && self.is_commutative() && self.berlekamp(&self.center()).len() == 1
    }

    /// A nontrivial idempotent, or `None` when the quotient is a field.
    fn idempotent(&self) -> Option<Vec<u32>> {
        if self.s <= 1 {
            return None;
        }
        let p = self.p();
        let one = self.one();
        let center = self.center();
        let b = self.berlekamp(&center);
        if b.len() > 1 {
            let one_space = Subspace::span(p, self.s, &[one.clone()]);
            let z = b.into_iter().find(|z| !one_space.contains(z))?;
            for lambda in 0..p {
                let d: Vec<u32> = z.iter().zip(&one).map(|(&a, &o)| ffmat::sub(p, a, ffmat::mul(p, lambda, o))).collect();
                let q = self.pow(&d, (p - 1) as u64);
                let e: Vec<u32> = one.iter().zip(&q).map(|(&o, &x)| ffmat::sub(p, o, x)).collect();
                if e.iter().any(|&v| v != 0) && e != one {
                    return Some(e);
                }
            }
            unreachable!("a non-scalar Berlekamp element has at least two eigenvalues");
        }
        if center.len() == self.s {
            return None; // commutative with one component: a field
        }
        let u = self.zero_divisor()?;
        Some(self.right_identity_of_left_ideal(&u))
    }

    fn zero_divisor(&self) -> Option<Vec<u32>> {
        let s = self.s;
        let ok = |u: &Vec<u32>| u.iter().any(|&v| v != 0) && !self.is_invertible(u);
        for i in 0..s {
            let u = unit(s, i);
            if ok(&u) {
                return Some(u);
            }
        }
        for i in 0..s {
            for j in i + 1..s {
                let mut u = unit(s, i);
                u[j] = 1;
                if ok(&u) {
                    return Some(u);
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let u: Vec<u32> = (0..s).map(|_| rng.gen_range(0..self.p())).collect();
            if ok(&u) {
                return Some(u);
            }
        }
        None
    }

    /// For `L = S·u`, the unique-up-to-choice `e ∈ L` with `x·e = x` on `L`.
    fn right_identity_of_left_ideal(&self, u: &[u32]) -> Vec<u32> {
        let p = self.p();
        let gens: Vec<Vec<u32>> = (0..self.s).map(|j| self.mul(&unit(self.s, j), u)).collect();
        let l = Subspace::span(p, self.s, &gens).basis_vecs();
        self.identity_in(&l, true).expect("semisimple left ideals have a right identity")
    }

    /// For a right ideal spanned by `r`, some `e` in it with `e·x = x`.
    fn left_identity_of_right_ideal(&self, r: &[Vec<u32>]) -> Vec<u32> {
        let l = Subspace::span(self.p(), self.s, r).basis_vecs();
        self.identity_in(&l, false).expect("semisimple right ideals have a left identity")
    }

    fn identity_in(&self, l: &[Vec<u32>], right: bool) -> Option<Vec<u32>> {
        let p = self.p();
        let d = l.len();
        // unknown c: e = Σ c_k l_k; for each basis x = l_i: x·e = x (or e·x = x)
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let prods: Vec<Vec<Vec<u32>>> = l
            .iter()
            .map(|x| l.iter().map(|lk| if right { self.mul(x, lk) } else { self.mul(lk, x) }).collect())
            .collect();
        for (i, x) in l.iter().enumerate() {
            for r in 0..self.s {
                rows.push((0..d).map(|k| prods[i][k][r]).collect::<Vec<u32>>());
                rhs.push(x[r]);
            }
        }
        let a = Mat::from_row_vecs(p, d, &rows);
        let c = ffmat::lex_min_solution(&a, &rhs)?;
        Some(Mat::from_row_vecs(p, self.s, l).transpose().mul_vec(&c))
    }

    fn lift(&self, e: &[u32]) -> Morphism {
        self.a.elem(&self.sigma.mul_vec(e))
    }
}

/// `X = Im h^N ⊕ Ker h^N` as inclusions.
fn fitting(h: &Morphism) -> (Morphism, Morphism) {
    let n = h.src().dim().max(1) as u64;
    let maps: Vec<Mat> = h.maps().iter().map(|m| m.pow(n)).collect();
    let hn = Morphism::new_unchecked(h.src().clone(), h.src().clone(), maps);
    let (_, im) = rep::image(&hn);
    let (_, ker) = rep::kernel(&hn);
    (im, ker)
}

/// One indecomposable summand with its structure maps into and out of `X`.
#[derive(Clone, Debug)]
pub struct Summand {
    pub rep: Rep,
    pub incl: Morphism,
    pub proj: Morphism,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Indices of summands grouped by isomorphism class.
    pub classes: Vec<Vec<usize>>,
}

impl Decomposition {
    /// One representative per class with its multiplicity.
    pub fn with_multiplicity(&self) -> Vec<(Rep, usize)> {
        self.classes.iter().map(|c| (self.summands[c[0]].rep.clone(), c.len())).collect()
    }
}

/// Split `x` into indecomposable summands (inclusions only).
fn split_all(x: &Rep, out: &mut Vec<Morphism>, into: &Morphism) {
    if x.is_zero() {
        return;
    }
    let a = EndAlgebra::new(x);
    let s = Semisimple::new(&a);
    match s.idempotent() {
        None => out.push(into.clone()),
        Some(e) => {
            let h = s.lift(&e);
            let (i1, i2) = fitting(&h);
            split_all(&i1.src().clone(), out, &into.comp(&i1));
            split_all(&i2.src().clone(), out, &into.comp(&i2));
        }
    }
}

pub fn decompose(x: &Rep) -> Decomposition {
    let mut incls = Vec::new();
    split_all(x, &mut incls, &Morphism::identity(x));
    let iso = rep::row_map(&incls, x);
    let inv = iso.inverse().expect("summands span the module");
    let ds = rep::direct_sum(x.alg(), &incls.iter().map(|i| i.src().clone()).collect::<Vec<_>>());
    let summands: Vec<Summand> = incls
        .iter()
        .enumerate()
        .map(|(k, i)| {
            let proj = ds.proj[k].with_ends(&ds.rep, i.src()).comp(&inv.with_ends(x, &ds.rep));
            Summand { rep: i.src().clone(), incl: i.clone(), proj }
        })
        .collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (k, s) in summands.iter().enumerate() {
        match classes.iter_mut().find(|c| indecomposables_isomorphic(&summands[c[0]].rep, &s.rep)) {
            Some(c) => c.push(k),
            None => classes.push(vec![k]),
        }
    }
    Decomposition { summands, classes }
}

pub fn krs_count(x: &Rep) -> usize {
    decompose(x).summands.len()
}

pub fn is_indecomposable(x: &Rep) -> bool {
    !x.is_zero() && EndAlgebra::new(x).is_local()
}

/// For indecomposable `u, v`: some `v∘u` composite is invertible.
pub fn indecomposables_isomorphic(u: &Rep, v: &Rep) -> bool {
    if u.dims() != v.dims() {
        return false;
    }
    let huv = hom_space(u, v).expect("same algebra");
    if huv.dim() == 0 {
        return false;
    }
    let hvu = hom_space(v, u).expect("same algebra");
    huv.basis.iter().any(|a| hvu.basis.iter().any(|b| b.comp(a).is_iso()))
}

pub fn is_isomorphic(x: &Rep, y: &Rep) -> bool {
    if x.dims() != y.dims() || !x.alg().same(y.alg()) {
        return false;
    }
    if x.is_zero() {
        return true;
    }
    let dx = decompose(x).with_multiplicity();
    let dy = decompose(y).with_multiplicity();
    dx.len() == dy.len()
        && dx.iter().all(|(r, m)| dy.iter().any(|(s, n)| m == n && indecomposables_isomorphic(r, s)))
}

/// `f` restricted to a complement of the largest summand it kills.
#[derive(Clone, Debug)]
pub struct Minimal {
    pub f: Morphism,
    /// Inclusion of the new source into the old one.
    pub incl: Morphism,
    pub kernel: Rep,
}

pub fn right_minimalize(f: &Morphism) -> Minimal {
    let p = f.p();
    let mut cur = f.clone();
    let mut incl = Morphism::identity(f.src());
    loop {
        let x = cur.src().clone();
        if x.is_zero() {
            break;
        }
        let a = EndAlgebra::new(&x);
        let m = a.dim();
        // N = {h : cur∘h = 0}
        let rows: Vec<Vec<u32>> = a.basis.iter().map(|b| cur.comp(b).flat()).collect();
        let nlen = rows.first().map_or(0, |r| r.len());
        let ker = Mat::from_row_vecs(p, nlen, &rows).transpose().kernel();
        let n_coords = ker.row_vecs();
        if n_coords.iter().all(|c| a.radical().contains(c)) {
            break;
        }
        let s = Semisimple::new(&a);
        let nbar: Vec<Vec<u32>> = n_coords.iter().map(|c| s.pi.mul_vec(c)).collect();
        let e = s.left_identity_of_right_ideal(&nbar);
        // lift e to an element of N
        let nb = Mat::from_row_vecs(p, s.s, &nbar).transpose();
        let d = ffmat::lex_min_solution(&nb, &e).expect("e lies in the image of N");
        let coords = Mat::from_row_vecs(p, m, &n_coords).transpose().mul_vec(&d);
        let h = a.elem(&coords);
        let (_, keep) = fitting(&h);
        cur = cur.comp(&keep);
        incl = incl.comp(&keep);
    }
    let (k, _) = rep::kernel(&cur);
    Minimal { f: cur, incl, kernel: k }
}

pub fn is_right_minimal(f: &Morphism) -> bool {
    right_minimalize(f).f.src().dim() == f.src().dim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;

    fn alg(t: &str) -> Algebra {
        Algebra::parse(t).unwrap()
    }

    #[test]
    fn radical_of_dual_numbers() {
        let a = alg("field 2\nvertices x\narrow t x x\nrelation t*t\n");
        let e = EndAlgebra::new(&a.projective(0));
        assert_eq!(e.dim(), 2);
        assert_eq!(e.radical().dim(), 1);
        assert!(e.is_local());
    }

    #[test]
    fn radical_of_semisimple() {
        let a = alg("field 2\nvertices x y\n");
        let m = Rep::direct_sum_all(&a, &[a.simple(0), a.simple(0)]);
        let e = EndAlgebra::new(&m);
        assert_eq!(e.dim(), 4);
        assert_eq!(e.radical().dim(), 0);
        assert!(!e.is_local());
        let d = decompose(&m);
        assert_eq!(d.summands.len(), 2);
        assert_eq!(d.classes.len(), 1);
        let m3 = Rep::direct_sum_all(&a, &[a.simple(0), a.simple(1), a.simple(0)]);
        let d = decompose(&m3);
        assert_eq!(d.with_multiplicity().len(), 2);
    }

    #[test]
    fn radical_in_odd_characteristic() {
        for p in [3, 5] {
            let a = alg(&format!("field {p}\nvertices x\narrow t x x\nrelation t*t*t\n"));
            let x = a.projective(0);
            let m = Rep::direct_sum_all(&a, &[x.clone(), x.clone(), x.clone(), x]);
            let e = EndAlgebra::new(&m);
            // End = M_4(k[t]/t^3): dim 48, radical 32
            assert_eq!(e.dim(), 48);
            assert_eq!(e.radical().dim(), 32);
            assert_eq!(krs_count(&m), 4);
        }
    }

    #[test]
    fn decomposition_projections() {
        let a = alg("field 3\nvertices a b\narrow alpha b a\narrow beta b a\n");
        let m = Rep::direct_sum_all(&a, &[a.projective(0), a.projective(1), a.simple(1), a.projective(0)]);
        let d = decompose(&m);
        assert_eq!(d.summands.len(), 4);
        let mut sum = Morphism::zero(&m, &m);
        for s in &d.summands {
            assert!(s.proj.comp(&s.incl).is_iso());
            sum = sum.add(&s.incl.comp(&s.proj));
        }
        assert!(sum.total().is_identity());
        assert!(is_isomorphic(&m, &Rep::direct_sum_all(&a, &[a.projective(0), a.projective(0), a.simple(1), a.projective(1)])));
        assert!(!is_isomorphic(&m, &Rep::direct_sum_all(&a, &[a.projective(0), a.simple(1), a.simple(1), a.projective(1)])));
    }

    #[test]
    fn minimalize_join_of_equal_maps() {
        let a = alg("field 2\nvertices a b\narrow alpha b a\n");
        let pb = a.projective(1);
        let sb = a.simple(1);
        let f = hom_space(&pb, &sb).unwrap().basis[0].clone();
        let j = rep::join_map(&f, &f).unwrap();
        let m = right_minimalize(&j);
        assert_eq!(m.f.src().dims(), &[1, 1]);
        assert!(rep::right_equivalent(&m.f, &j).unwrap());
        let z = Morphism::zero(&pb, &sb);
        let m = right_minimalize(&z);
        assert!(m.f.src().is_zero());
        assert!(m.kernel.is_zero());
    }
}
