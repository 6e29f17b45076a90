//! The Kronecker algebra `b ⇉ a`: preprojective, preinjective and regular
//! modules, the defect, strongly regular modules and the parameterization of
//! length-one factorization classes by their sources.
//!
//! Dimension vectors are written `(dim M_a, dim M_b)`. Tubes are indexed by
//! monic irreducible polynomials over `F_p` together with the point `∞`.

use crate::algebra::Algebra;
use crate::ar::ext1;
use crate::endo::{decompose, is_indecomposable, is_isomorphic};
use crate::factor::{enumerate_classes, Caps};
use crate::ffmat::{self, Mat};
use crate::lattice::{classify_shape, Shape};
use crate::rep::{hom_dim, hom_space, Rep};
use crate::{Error, Result};
use std::fmt;

/// Coefficients of a polynomial over `F_p`, lowest degree first.
pub type Poly = Vec<u32>;

fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn poly_mul(p: u32, f: &[u32], g: &[u32]) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut h = vec![0u32; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            h[i + j] = ffmat::add(p, h[i + j], ffmat::mul(p, a, b));
        }
    }
    trim(h)
}

pub fn poly_pow(p: u32, f: &[u32], e: usize) -> Poly {
    (0..e).fold(vec![1], |acc, _| poly_mul(p, &acc, f))
}

/// Remainder of `f` modulo the monic polynomial `g`.
pub fn poly_rem(p: u32, f: &[u32], g: &[u32]) -> Poly {
    let mut r = trim(f.to_vec());
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (i, &gi) in g.iter().enumerate() {
            r[shift + i] = ffmat::sub(p, r[shift + i], ffmat::mul(p, c, gi));
        }
        r = trim(r);
    }
    r
}

/// All monic polynomials of degree `d`.
pub fn monic_polys(p: u32, d: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    let total = (p as usize).pow(d as u32);
    for mut k in 0..total {
        let mut f = Vec::with_capacity(d + 1);
        for _ in 0..d {
            f.push((k % p as usize) as u32);
            k /= p as usize;
        }
        f.push(1);
        out.push(f);
    }
    out
}

/// Irreducibility by trial division through monic polynomials of degree ≤ d/2.
pub fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let d = f.len().saturating_sub(1);
    if d == 0 {
        return false;
    }
    (1..=d / 2).all(|e| monic_polys(p, e).iter().all(|g| !poly_rem(p, f, g).is_empty()))
}

pub fn irreducibles(p: u32, d: usize) -> Vec<Poly> {
    monic_polys(p, d).into_iter().filter(|f| is_irreducible(p, f)).collect()
}

pub fn poly_to_string(f: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        parts.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

/// Parse `x^2+x+1`, `x+2`, `2x^3+1` over `F_p`.
pub fn parse_poly(p: u32, s: &str) -> Result<Poly> {
    let bad = || Error::Invalid(format!("bad polynomial `{s}`"));
    let mut f: Poly = Vec::new();
    for term in s.split('+').map(str::trim) {
        if term.is_empty() {
            return Err(bad());
        }
        let (coef, deg) = match term.find('x') {
            None => (term.parse::<i64>().map_err(|_| bad())?, 0),
            Some(k) => {
                let c = if k == 0 { 1 } else { term[..k].trim_end_matches('*').parse::<i64>().map_err(|_| bad())? };
                let rest = &term[k + 1..];
                let d = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                };
                (c, d)
            }
        };
        if f.len() <= deg {
            f.resize(deg + 1, 0);
        }
        f[deg] = ffmat::add(p, f[deg], ffmat::reduce(p, coef));
    }
    Ok(trim(f))
}

fn poly_at(p: u32, f: &[u32], a: &Mat) -> Mat {
    let n = a.rows();
    let mut r = Mat::zeros(p, n, n);
    for &c in f.iter().rev() {
        r = r.mul(a).add(&Mat::scalar(p, n, c));
    }
    r
}

/// Companion matrix of a monic polynomial.
pub fn companion(p: u32, f: &[u32]) -> Mat {
    let n = f.len() - 1;
    let mut m = Mat::zeros(p, n, n);
    for i in 1..n {
        m.set(i, i - 1, 1);
    }
    for i in 0..n {
        m.set(i, n - 1, ffmat::neg(p, f[i]));
    }
    m
}

/// A tube of the Kronecker algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KroneckerPoint {
    Infinity,
    Poly(Poly),
}

impl KroneckerPoint {
    pub fn poly(p: u32, f: Poly) -> Result<KroneckerPoint> {
        let f = trim(f);
        if f.last() != Some(&1) || !is_irreducible(p, &f) {
            return Err(Error::Invalid(format!("{} is not monic irreducible over F_{p}", poly_to_string(&f))));
        }
        Ok(KroneckerPoint::Poly(f))
    }

    pub fn parse(p: u32, s: &str) -> Result<KroneckerPoint> {
        match s.trim() {
            "inf" | "∞" => Ok(KroneckerPoint::Infinity),
            t => KroneckerPoint::poly(p, parse_poly(p, t)?),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            KroneckerPoint::Infinity => 1,
            KroneckerPoint::Poly(f) => f.len() - 1,
        }
    }

    /// All points of degree at most `d`, `∞` first.
    pub fn all_up_to(p: u32, d: usize) -> Vec<KroneckerPoint> {
        let mut out = vec![KroneckerPoint::Infinity];
        for e in 1..=d {
            out.extend(irreducibles(p, e).into_iter().map(KroneckerPoint::Poly));
        }
        out
    }
}

impl fmt::Display for KroneckerPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KroneckerPoint::Infinity => write!(f, "inf"),
            KroneckerPoint::Poly(g) => write!(f, "{}", poly_to_string(g)),
        }
    }
}

/// The generalized Kronecker quiver with `n` arrows `b → a`.
pub fn kronecker_algebra_n(p: u32, n: usize) -> Result<Algebra> {
    let names: Vec<String> = if n == 2 {
        vec!["alpha".into(), "beta".into()]
    } else {
        (1..=n).map(|i| format!("k{i}")).collect()
    };
    let mut text = format!("field {p}\nvertices a b\n");
    for a in &names {
        text.push_str(&format!("arrow {a} b a\n"));
    }
    Algebra::parse(&text)
}

pub fn kronecker_algebra(p: u32) -> Result<Algebra> {
    kronecker_algebra_n(p, 2)
}

/// Whether `alg` is the 2-Kronecker quiver with vertex 0 the sink.
pub fn is_kronecker(alg: &Algebra) -> bool {
    alg.n_vertices() == 2
        && alg.n_arrows() == 2
        && alg.relations().is_empty()
        && (0..2).all(|i| alg.arrow(i).src == 1 && alg.arrow(i).dst == 0)
}

fn check(alg: &Algebra) -> Result<()> {
    if is_kronecker(alg) {
        Ok(())
    } else {
        Err(Error::Invalid("not the Kronecker algebra b ⇉ a".into()))
    }
}

fn from_pair(alg: &Algebra, da: usize, db: usize, alpha: Mat, beta: Mat) -> Result<Rep> {
    check(alg)?;
    Rep::new(alg.clone(), vec![da, db], vec![alpha, beta])
}

/// `P_i`, dimension vector `(i+1, i)`.
pub fn pre_projective(alg: &Algebra, i: usize) -> Result<Rep> {
    let p = alg.p();
    let mut alpha = Mat::zeros(p, i + 1, i);
    let mut beta = Mat::zeros(p, i + 1, i);
    for k in 0..i {
        alpha.set(k, k, 1);
        beta.set(k + 1, k, 1);
    }
    from_pair(alg, i + 1, i, alpha, beta)
}

/// `Q_j`, dimension vector `(j, j+1)`.
pub fn pre_injective(alg: &Algebra, j: usize) -> Result<Rep> {
    let p = alg.p();
    let mut alpha = Mat::zeros(p, j, j + 1);
    let mut beta = Mat::zeros(p, j, j + 1);
    for k in 0..j {
        alpha.set(k, k, 1);
        beta.set(k, k + 1, 1);
    }
    from_pair(alg, j, j + 1, alpha, beta)
}

/// `R_π[t]`: `α = 1, β = companion(π^t)`; on the `∞` tube the roles swap and
/// `α` is nilpotent.
pub fn regular(alg: &Algebra, point: &KroneckerPoint, t: usize) -> Result<Rep> {
    let p = alg.p();
    if t == 0 {
        return Err(Error::Invalid("regular length must be at least 1".into()));
    }
    match point {
        KroneckerPoint::Infinity => {
            let mut x = vec![0u32; t + 1];
            x[t] = 1;
            from_pair(alg, t, t, companion(p, &x), Mat::identity(p, t))
        }
        KroneckerPoint::Poly(f) => {
            let c = companion(p, &poly_pow(p, f, t));
            let n = c.rows();
            from_pair(alg, n, n, Mat::identity(p, n), c)
        }
    }
}

/// `δ(M) = dim Hom(M, Q_0) − dim Hom(P_0, M)`.
pub fn defect(m: &Rep) -> Result<i64> {
    let alg = m.alg();
    check(alg)?;
    Ok(hom_dim(m, &alg.simple(1)) as i64 - hom_dim(&alg.projective(0), m) as i64)
}

/// Position of an indecomposable Kronecker module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KClass {
    Preprojective(usize),
    Regular(KroneckerPoint, usize),
    Preinjective(usize),
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KClass::Preprojective(i) => write!(f, "P{i}"),
            KClass::Preinjective(j) => write!(f, "Q{j}"),
            KClass::Regular(pt, t) => write!(f, "R[{pt}]{t}"),
        }
    }
}

/// Tube of a regular indecomposable (or of a regular module all of whose
/// summands share a tube).
fn tube_of(m: &Rep) -> Result<KroneckerPoint> {
    let p = m.p();
    let (alpha, beta) = (m.map(0), m.map(1));
    let n = alpha.rows();
    let a = match alpha.inverse() {
        None => return Ok(KroneckerPoint::Infinity),
        Some(inv) => inv.mul(beta),
    };
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        for f in irreducibles(p, d) {
            if poly_at(p, &f, &a).pow(n as u64).is_zero() {
                return Ok(KroneckerPoint::Poly(f));
            }
        }
    }
    Err(Error::Invalid("no tube found".into()))
}

pub fn classify_indecomposable(m: &Rep) -> Result<KClass> {
    check(m.alg())?;
    if !is_indecomposable(m) {
        return Err(Error::Invalid("module is not indecomposable".into()));
    }
    let (da, db) = (m.dims()[0], m.dims()[1]);
    match defect(m)? {
        -1 => Ok(KClass::Preprojective(db)),
        1 => Ok(KClass::Preinjective(da)),
        0 => {
            let pt = tube_of(m)?;
            Ok(KClass::Regular(pt.clone(), da / pt.degree()))
        }
        d => Err(Error::Verification(format!("indecomposable with defect {d}"))),
    }
}

/// Summand multiset of any Kronecker module, sorted.
pub fn classify(m: &Rep) -> Result<Vec<(KClass, usize)>> {
    let mut out = Vec::new();
    for (r, k) in decompose(m).with_multiplicity() {
        out.push((classify_indecomposable(&r)?, k));
    }
    out.sort();
    Ok(out)
}

/// `P1 ⊕ R[x]2^3`-style name; `0` for the zero module.
pub fn name(m: &Rep) -> Result<String> {
    if m.is_zero() {
        return Ok("0".into());
    }
    Ok(classify(m)?
        .iter()
        .map(|(c, k)| if *k == 1 { c.to_string() } else { format!("{c}^{k}") })
        .collect::<Vec<_>>()
        .join(" ⊕ "))
}

/// The four equivalent conditions for a regular module to be strongly regular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongRegularity {
    /// `Ext¹(M', M'') = 0` for every splitting `M = M' ⊕ M''`.
    pub ext_vanishes: bool,
    /// The regular socle is multiplicity free.
    pub socle_multiplicity_free: bool,
    /// Indecomposable summands lie in pairwise different tubes.
    pub distinct_tubes: bool,
    pub end_commutative: bool,
}

impl StrongRegularity {
    pub fn agree(&self) -> bool {
        let v = self.ext_vanishes;
        self.socle_multiplicity_free == v && self.distinct_tubes == v && self.end_commutative == v
    }
}

pub fn strong_regularity(m: &Rep) -> Result<StrongRegularity> {
    check(m.alg())?;
    let alg = m.alg();
    let summands: Vec<Rep> = decompose(m).summands.into_iter().map(|s| s.rep).collect();
    let mut tubes = Vec::new();
    for s in &summands {
        match classify_indecomposable(s)? {
            KClass::Regular(pt, _) => tubes.push(pt),
            c => return Err(Error::Invalid(format!("module is not regular: summand {c}"))),
        }
    }
    let mut ext_vanishes = true;
    'outer: for (i, u) in summands.iter().enumerate() {
        for (j, v) in summands.iter().enumerate() {
            if i != j && ext1(u, v)?.dim() != 0 {
                ext_vanishes = false;
                break 'outer;
            }
        }
    }
    let mut socle_multiplicity_free = true;
    for pt in KroneckerPoint::all_up_to(m.p(), m.dims()[0]) {
        let r = regular(alg, &pt, 1)?;
        if hom_dim(&r, m) > pt.degree() {
            socle_multiplicity_free = false;
            break;
        }
    }
    let mut sorted = tubes.clone();
    sorted.sort();
    sorted.dedup();
    let distinct_tubes = sorted.len() == tubes.len();
    let end = hom_space(m, m)?.basis;
    let end_commutative = end.iter().all(|u| end.iter().all(|v| u.comp(v) == v.comp(u)));
    Ok(StrongRegularity { ext_vanishes, socle_multiplicity_free, distinct_tubes, end_commutative })
}

/// Strong regularity; all four criteria are computed and must agree.
pub fn is_strongly_regular(m: &Rep) -> Result<bool> {
    let s = strong_regularity(m)?;
    if !s.agree() {
        return Err(Error::Verification(format!("strong regularity criteria disagree: {s:?}")));
    }
    Ok(s.ext_vanishes)
}

/// A strongly regular module `⊕ R_{π_k}[t_k]` with distinct points.
#[derive(Clone, Debug)]
pub struct StronglyRegular {
    pub parts: Vec<(KroneckerPoint, usize)>,
    pub rep: Rep,
}

impl StronglyRegular {
    pub fn name(&self) -> String {
        if self.parts.is_empty() {
            return "0".into();
        }
        self.parts.iter().map(|(pt, t)| KClass::Regular(pt.clone(), *t).to_string()).collect::<Vec<_>>().join(" ⊕ ")
    }
}

/// All strongly regular modules of composition length `len`, one per
/// isomorphism class.
pub fn enumerate_strongly_regular(alg: &Algebra, len: usize) -> Result<Vec<StronglyRegular>> {
    check(alg)?;
    if len % 2 == 1 {
        return Ok(Vec::new());
    }
    let half = len / 2;
    let points = KroneckerPoint::all_up_to(alg.p(), half);
    let mut choices = Vec::new();
    fn rec(
        points: &[KroneckerPoint],
        from: usize,
        left: usize,
        cur: &mut Vec<(KroneckerPoint, usize)>,
        out: &mut Vec<Vec<(KroneckerPoint, usize)>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in from..points.len() {
            let d = points[k].degree();
            for t in 1..=left / d {
                cur.push((points[k].clone(), t));
                rec(points, k + 1, left - t * d, cur, out);
                cur.pop();
            }
        }
    }
    rec(&points, 0, half, &mut Vec::new(), &mut choices);
    choices
        .into_iter()
        .map(|parts| {
            let reps = parts.iter().map(|(pt, t)| regular(alg, pt, *t)).collect::<Result<Vec<_>>>()?;
            Ok(StronglyRegular { rep: Rep::direct_sum_all(alg, &reps), parts })
        })
        .collect()
}

/// Comparison of the length-one factorization classes with `R(i)`.
#[derive(Clone, Debug)]
pub struct SigmaReport {
    pub i: usize,
    /// Names of the sources of the length-one classes.
    pub sources: Vec<String>,
    /// Names of the enumerated strongly regular modules of length `i`.
    pub expected: Vec<String>,
    pub sources_strongly_regular: bool,
    pub pairwise_non_isomorphic: bool,
    pub bijective: bool,
}

/// `σ: ^C[→Y⟩¹ → R(i)`, `i = |C| + |Y| − 4`, for `C` preprojective and `Y`
/// preinjective indecomposable.
pub fn sigma_check(c: &Rep, y: &Rep, caps: &Caps) -> Result<SigmaReport> {
    match (classify_indecomposable(c)?, classify_indecomposable(y)?) {
        (KClass::Preprojective(_), KClass::Preinjective(_)) => {}
        _ => return Err(Error::Invalid("σ needs C preprojective and Y preinjective".into())),
    }
    let i = c.dim() + y.dim() - 4;
    let fl = enumerate_classes(c, y, caps)?;
    if !fl.report.ok() {
        return Err(Error::Verification(format!("factorization lattice not certified: {:?}", fl.report)));
    }
    let sources: Vec<Rep> = fl.classes.iter().filter(|k| k.c_length == 1).map(|k| k.source().clone()).collect();
    let expected = enumerate_strongly_regular(c.alg(), i)?;
    let mut sources_strongly_regular = true;
    for s in &sources {
        let regular_all = classify(s)?.iter().all(|(k, _)| matches!(k, KClass::Regular(..)));
        if s.dim() != i || !regular_all || !(s.is_zero() || is_strongly_regular(s)?) {
            sources_strongly_regular = false;
        }
    }
    let pairwise_non_isomorphic =
        (0..sources.len()).all(|a| (a + 1..sources.len()).all(|b| !is_isomorphic(&sources[a], &sources[b])));
    let covered = expected.iter().all(|e| sources.iter().any(|s| is_isomorphic(s, &e.rep)));
    let bijective = sources_strongly_regular && pairwise_non_isomorphic && covered && sources.len() == expected.len();
    Ok(SigmaReport {
        i,
        sources: sources.iter().map(name).collect::<Result<Vec<_>>>()?,
        expected: expected.iter().map(|e| e.name()).collect(),
        sources_strongly_regular,
        pairwise_non_isomorphic,
        bijective,
    })
}

/// One verified instance of the Kronecker table.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub row: u8,
    pub c: String,
    pub y: String,
    pub hom_dim: usize,
    pub expected_hom_dim: usize,
    pub expected: Shape,
    pub computed: Shape,
    /// `F_p`-dimension of the simple `Γ(C)`-module (rows 4 and 5).
    pub simple_dim: usize,
    pub certified: bool,
}

impl TableRow {
    pub fn ok(&self) -> bool {
        self.hom_dim == self.expected_hom_dim && shape_matches(&self.expected, &self.computed) && self.certified
    }
}

/// `G(0)` and `G(1)` are also chains.
pub fn shape_matches(expected: &Shape, computed: &Shape) -> bool {
    match expected {
        Shape::Geometry { d, q } => computed.is_geometry(*d, *q),
        Shape::Chain(d) => computed.is_chain(*d),
        Shape::Other => false,
    }
}

/// A `Hom` dimension checked against the closed formula.
#[derive(Clone, Debug)]
pub struct HomCheck {
    pub c: String,
    pub y: String,
    pub dim: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, Default)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
    pub hom_checks: Vec<HomCheck>,
    /// Instances left out because their lattice exceeds the node cap.
    pub skipped: Vec<String>,
}

impl TableReport {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(TableRow::ok) && self.hom_checks.iter().all(|h| h.dim == h.expected)
    }
}

/// Lattice size cap for table instances.
pub const TABLE_NODE_CAP: u128 = 1000;

/// Largest target dimension enumerated in the table: every submodule of `Y`
/// is visited, so this bounds the work.
pub const TABLE_MAX_DIM: usize = 8;

/// The two tubes used for the regular rows: `x` (degree 1) and the first
/// irreducible quadratic.
pub fn table_points(p: u32) -> Vec<KroneckerPoint> {
    vec![KroneckerPoint::Poly(vec![0, 1]), KroneckerPoint::Poly(irreducibles(p, 2).remove(0))]
}

/// Verify the shape table for indices up to `max`: `i + j ≤ max` on the
/// preprojective/preinjective rows, `s, t ≤ max` on the regular ones.
pub fn verify_table(max: usize, p: u32) -> Result<TableReport> {
    let alg = kronecker_algebra(p)?;
    let q = p as u128;
    let caps = Caps::default();
    let mut rep = TableReport::default();
    let pp = |i| pre_projective(&alg, i);
    let qq = |j| pre_injective(&alg, j);
    let rr = |pt: &KroneckerPoint, t| regular(&alg, pt, t);
    let mut cases: Vec<(u8, String, Rep, String, Rep, usize, Shape)> = Vec::new();
    for i in 0..=max {
        for j in i..=max - i {
            cases.push((1, format!("P{i}"), pp(i)?, format!("P{j}"), pp(j)?, j - i + 1, Shape::Geometry { d: j - i + 1, q }));
        }
    }
    for pt in table_points(p) {
        let deg = pt.degree();
        for i in 0..=max {
            for t in 1..=max {
                let d = t * deg;
                cases.push((2, format!("P{i}"), pp(i)?, format!("R[{pt}]{t}"), rr(&pt, t)?, d, Shape::Geometry { d, q }));
            }
        }
        for s in 1..=max {
            for t in 1..=max {
                let d = s.min(t);
                let c = format!("R[{pt}]{s}");
                cases.push((4, c, rr(&pt, s)?, format!("R[{pt}]{t}"), rr(&pt, t)?, d * deg, Shape::Chain(d)));
            }
            for j in 0..=max {
                let c = format!("R[{pt}]{s}");
                cases.push((5, c, rr(&pt, s)?, format!("Q{j}"), qq(j)?, s * deg, Shape::Chain(s)));
            }
        }
    }
    for i in 0..=max {
        for j in 0..=max - i {
            cases.push((3, format!("P{i}"), pp(i)?, format!("Q{j}"), qq(j)?, i + j, Shape::Geometry { d: i + j, q }));
        }
    }
    for j in 0..=max {
        for i in j..=max - j {
            cases.push((6, format!("Q{i}"), qq(i)?, format!("Q{j}"), qq(j)?, i - j + 1, Shape::Geometry { d: i - j + 1, q }));
        }
    }
    for (row, cn, c, yn, y, expected_hom_dim, expected) in cases {
        let hom_dim = hom_dim(&c, &y);
        let nodes = match &expected {
            Shape::Geometry { d, .. } => ffmat::subspace_count(*d, q),
            _ => 0,
        };
        if nodes > TABLE_NODE_CAP || y.dim() > TABLE_MAX_DIM {
            rep.skipped.push(format!("row {row}: {cn} → {yn} ({nodes} nodes, dim Y = {})", y.dim()));
            rep.hom_checks.push(HomCheck { c: cn, y: yn, dim: hom_dim, expected: expected_hom_dim });
            continue;
        }
        let fl = enumerate_classes(&c, &y, &caps)?;
        let computed = classify_shape(&fl.lattice, q);
        let simple_dim = fl.gm.labels.iter().map(|l| l.top_dim).max().unwrap_or(0);
        rep.rows.push(TableRow {
            row,
            c: cn,
            y: yn,
            hom_dim,
            expected_hom_dim,
            expected,
            computed,
            simple_dim,
            certified: fl.report.ok(),
        });
    }
    // Pairs outside the table have no maps.
    for i in 0..=max {
        for j in 0..i {
            rep.hom_checks.push(HomCheck { c: format!("P{i}"), y: format!("P{j}"), dim: hom_dim(&pp(i)?, &pp(j)?), expected: 0 });
            rep.hom_checks.push(HomCheck { c: format!("Q{j}"), y: format!("Q{i}"), dim: hom_dim(&qq(j)?, &qq(i)?), expected: 0 });
        }
        let pts = table_points(p);
        for t in 1..=max {
            for pt in &pts {
                let r = rr(pt, t)?;
                rep.hom_checks.push(HomCheck { c: format!("R[{pt}]{t}"), y: format!("P{i}"), dim: hom_dim(&r, &pp(i)?), expected: 0 });
                rep.hom_checks.push(HomCheck { c: format!("Q{i}"), y: format!("R[{pt}]{t}"), dim: hom_dim(&qq(i)?, &r), expected: 0 });
            }
            let (a, b) = (rr(&pts[0], t)?, rr(&pts[1], t)?);
            rep.hom_checks.push(HomCheck { c: format!("R[{}]{t}", pts[0]), y: format!("R[{}]{t}", pts[1]), dim: hom_dim(&a, &b), expected: 0 });
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials() {
        assert_eq!(irreducibles(2, 1).len(), 2);
        assert_eq!(irreducibles(2, 2), vec![vec![1, 1, 1]]);
        assert_eq!(irreducibles(2, 3).len(), 2);
        assert_eq!(irreducibles(3, 2).len(), 3);
        assert_eq!(parse_poly(2, "x^2+x+1").unwrap(), vec![1, 1, 1]);
        assert_eq!(poly_to_string(&[1, 0, 2]), "2x^2+1");
        assert_eq!(poly_rem(2, &poly_mul(2, &[1, 1], &[1, 1, 1]), &[1, 1, 1]), Vec::<u32>::new());
    }

    #[test]
    fn constructors_and_defect() {
        let alg = kronecker_algebra(2).unwrap();
        for i in 0..4 {
            let m = pre_projective(&alg, i).unwrap();
            assert_eq!(m.dims(), &[i + 1, i]);
            assert_eq!(defect(&m).unwrap(), -1);
            assert_eq!(classify_indecomposable(&m).unwrap(), KClass::Preprojective(i));
            let m = pre_injective(&alg, i).unwrap();
            assert_eq!(m.dims(), &[i, i + 1]);
            assert_eq!(defect(&m).unwrap(), 1);
            assert_eq!(classify_indecomposable(&m).unwrap(), KClass::Preinjective(i));
        }
        for pt in KroneckerPoint::all_up_to(2, 2) {
            for t in 1..3 {
                let m = regular(&alg, &pt, t).unwrap();
                assert_eq!(m.dim(), 2 * t * pt.degree());
                assert_eq!(defect(&m).unwrap(), 0);
                assert_eq!(classify_indecomposable(&m).unwrap(), KClass::Regular(pt.clone(), t));
            }
        }
        assert!(is_isomorphic(&pre_projective(&alg, 0).unwrap(), &alg.projective(0)));
        assert!(is_isomorphic(&pre_projective(&alg, 1).unwrap(), &alg.projective(1)));
        assert!(is_isomorphic(&pre_injective(&alg, 0).unwrap(), &alg.simple(1)));
    }

    #[test]
    fn strong_regularity_examples() {
        let alg = kronecker_algebra(2).unwrap();
        let r = regular(&alg, &KroneckerPoint::Infinity, 1).unwrap();
        let r2 = regular(&alg, &KroneckerPoint::Poly(vec![0, 1]), 1).unwrap();
        let both = Rep::direct_sum_all(&alg, &[r.clone(), r2]);
        assert!(is_strongly_regular(&both).unwrap());
        let s = strong_regularity(&Rep::direct_sum_all(&alg, &[r.clone(), r.clone()])).unwrap();
        assert!(s.agree() && !s.end_commutative);
        assert!(is_strongly_regular(&regular(&alg, &KroneckerPoint::Infinity, 3).unwrap()).unwrap());
        assert!(is_strongly_regular(&pre_projective(&alg, 1).unwrap()).is_err());
    }

    #[test]
    fn strongly_regular_counts() {
        let alg = kronecker_algebra(2).unwrap();
        assert_eq!(enumerate_strongly_regular(&alg, 0).unwrap().len(), 1);
        assert_eq!(enumerate_strongly_regular(&alg, 1).unwrap().len(), 0);
        assert_eq!(enumerate_strongly_regular(&alg, 2).unwrap().len(), 3);
        // length 4: R[t=2] on 3 tubes, 3 pairs of degree-one tubes, 1 quadratic point
        assert_eq!(enumerate_strongly_regular(&alg, 4).unwrap().len(), 7);
    }
}
