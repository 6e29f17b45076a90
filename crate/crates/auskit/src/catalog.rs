//! The built-in example catalog: algebras, module pairs `(C, Y)` and their
//! expected facts, kept in plain-text files under `catalog/`.
//!
//! ```text
//! example kron2
//! algebra
//! field 2
//! vertices a b
//! arrow alpha b a
//! arrow beta b a
//! end
//! let R = kR(inf, 1)
//! instance p2-to-q0
//! C = kP(2)
//! Y = kQ(0)
//! fact nodes = 5 known
//! fact sources 1 = kR(inf,1) ; kR(x,1) ; kR(x+1,1) known
//! end
//! ```
//!
//! Every fact ends in `known` (read off a worked example) or `derived`
//! (frozen from an independent computation).

use crate::algebra::{parse_algebra_file, Algebra};
use crate::ar::{ar_formula_dims, is_projective, tau};
use crate::determine::{add_classes, definitional_check, is_right_determined, minimal_determiner, GammaModule};
use crate::endo::{decompose, indecomposables_isomorphic, is_isomorphic};
use crate::expr::{Env, Value};
use crate::factor::{enumerate_classes, enumerate_with, epi_classes, length_one_checks, Caps, FactorizationLattice};
use crate::kronecker::shape_matches;
use crate::lattice::{classify_shape, maximal_chain, strata_counts, Shape};
use crate::rep::{self, hom_space, Morphism, Rep};
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::time::Instant;

const SOURCES: &[(&str, &str)] = &[
    ("a2", include_str!("../catalog/a2.cat")),
    ("a3-linear", include_str!("../catalog/a3-linear.cat")),
    ("a3-radsq", include_str!("../catalog/a3-radsq.cat")),
    ("a3-sinks", include_str!("../catalog/a3-sinks.cat")),
    ("a3-sources", include_str!("../catalog/a3-sources.cat")),
    ("kron2", include_str!("../catalog/kron2.cat")),
    ("kron3", include_str!("../catalog/kron3.cat")),
    ("loop-b", include_str!("../catalog/loop-b.cat")),
    ("subspace3", include_str!("../catalog/subspace3.cat")),
    ("onepoint-ext", include_str!("../catalog/onepoint-ext.cat")),
    ("uniserial-8", include_str!("../catalog/uniserial-8.cat")),
    ("uniserial-6", include_str!("../catalog/uniserial-6.cat")),
    ("uniserial-4", include_str!("../catalog/uniserial-4.cat")),
    ("uniserial-3", include_str!("../catalog/uniserial-3.cat")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactKind {
    Known,
    Derived,
}

impl std::fmt::Display for FactKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FactKind::Known => "known",
            FactKind::Derived => "derived",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Fact {
    pub line: usize,
    pub key: String,
    pub arg: String,
    pub value: String,
    pub kind: FactKind,
}

impl std::fmt::Display for Fact {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.arg.is_empty() {
            write!(f, "{}", self.key)
        } else {
            write!(f, "{} {}", self.key, self.arg)
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub line: usize,
    /// Overrides the algebra's field.
    pub field: Option<u32>,
    pub lets: Vec<(String, String)>,
    pub c: String,
    pub y: String,
    pub facts: Vec<Fact>,
}

#[derive(Clone, Debug)]
pub struct Example {
    pub name: String,
    pub algebra: String,
    pub lets: Vec<(String, String)>,
    pub instances: Vec<Instance>,
}

impl Example {
    pub fn instance(&self, name: &str) -> Option<&Instance> {
        self.instances.iter().find(|i| i.name == name)
    }
}

/// All built-in examples, in catalog order.
pub fn builtin() -> Vec<Example> {
    SOURCES
        .iter()
        .map(|(n, t)| parse_example(t).unwrap_or_else(|e| panic!("built-in catalog `{n}` is malformed: {e}")))
        .collect()
}

/// Catalog file text of a built-in example.
pub fn builtin_source(name: &str) -> Option<&'static str> {
    SOURCES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn find_example(name: &str) -> Result<Example> {
    builtin().into_iter().find(|e| e.name == name).ok_or_else(|| Error::Unknown(name.to_string()))
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col: 1, msg: msg.into() }
}

fn parse_let(line: usize, rest: &str) -> Result<(String, String)> {
    let (n, e) = rest.split_once('=').ok_or_else(|| perr(line, "expected `let NAME = expr`"))?;
    let n = n.trim();
    if n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
        return Err(perr(line, format!("invalid name `{n}`")));
    }
    Ok((n.to_string(), e.trim().to_string()))
}

fn parse_fact(line: usize, rest: &str) -> Result<Fact> {
    let (lhs, rhs) = rest.split_once(" = ").ok_or_else(|| perr(line, "expected `fact KEY [ARG] = VALUE known|derived`"))?;
    let lhs = lhs.trim();
    let (key, arg) = lhs.split_once(char::is_whitespace).unwrap_or((lhs, ""));
    let rhs = rhs.trim();
    let (value, kind) = rhs.rsplit_once(char::is_whitespace).ok_or_else(|| perr(line, "missing fact kind"))?;
    let kind = match kind {
        "known" => FactKind::Known,
        "derived" => FactKind::Derived,
        k => return Err(perr(line, format!("fact kind must be `known` or `derived`, found `{k}`"))),
    };
    Ok(Fact { line, key: key.to_string(), arg: arg.trim().to_string(), value: value.trim().to_string(), kind })
}

pub fn parse_example(text: &str) -> Result<Example> {
    let mut name = None;
    let mut algebra: Option<String> = None;
    let mut in_alg: Option<String> = None;
    let mut lets = Vec::new();
    let mut instances = Vec::new();
    let mut cur: Option<Instance> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(buf) = in_alg.as_mut() {
            if line == "end" {
                algebra = in_alg.take();
            } else {
                buf.push_str(line);
                buf.push('\n');
            }
            continue;
        }
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match (kw, cur.as_mut()) {
            ("example", None) => name = Some(rest.to_string()),
            ("algebra", None) => in_alg = Some(String::new()),
            ("let", None) => lets.push(parse_let(line_no, rest)?),
            ("instance", None) => {
                cur = Some(Instance {
                    name: rest.to_string(),
                    line: line_no,
                    field: None,
                    lets: Vec::new(),
                    c: String::new(),
                    y: String::new(),
                    facts: Vec::new(),
                })
            }
            ("let", Some(i)) => i.lets.push(parse_let(line_no, rest)?),
            ("field", Some(i)) => i.field = Some(rest.parse().map_err(|_| perr(line_no, "expected a prime"))?),
            ("C" | "Y", Some(i)) => {
                let e = rest.strip_prefix('=').ok_or_else(|| perr(line_no, format!("expected `{kw} = expr`")))?;
                if kw == "C" {
                    i.c = e.trim().to_string();
                } else {
                    i.y = e.trim().to_string();
                }
            }
            ("fact", Some(i)) => i.facts.push(parse_fact(line_no, rest)?),
            ("end", Some(_)) => {
                let i = cur.take().unwrap();
                if i.c.is_empty() || i.y.is_empty() {
                    return Err(perr(i.line, format!("instance `{}` needs both C and Y", i.name)));
                }
                instances.push(i);
            }
            _ => return Err(perr(line_no, format!("unexpected `{kw}`"))),
        }
    }
    if in_alg.is_some() || cur.is_some() {
        return Err(perr(text.lines().count(), "missing `end`"));
    }
    Ok(Example {
        name: name.ok_or_else(|| perr(1, "missing `example` line"))?,
        algebra: algebra.ok_or_else(|| perr(1, "missing `algebra` block"))?,
        lets,
        instances,
    })
}

/// The evaluated instance: algebra, names, `C` and `Y`.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub env: Env,
    pub c: Rep,
    pub y: Rep,
}

pub fn prepare(ex: &Example, inst: &Instance) -> Result<Prepared> {
    let mut pres = parse_algebra_file(&ex.algebra)?;
    if let Some(p) = inst.field {
        pres.p = p;
    }
    let alg = Algebra::build(&pres)?;
    let mut env = Env::new(&alg);
    for (n, e) in ex.lets.iter().chain(&inst.lets) {
        env.define(n, e)?;
    }
    let c = env.module(&inst.c)?;
    let y = env.module(&inst.y)?;
    env.bind("C", Value::Module(c.clone()));
    env.bind("Y", Value::Module(y.clone()));
    Ok(Prepared { env, c, y })
}

/// `Γ(C)`-module with labels named after the catalog's bindings.
pub fn gamma_module(pr: &Prepared) -> Result<GammaModule> {
    let mut gm = GammaModule::new(&pr.c, &pr.y)?;
    let named: Vec<(String, Rep)> =
        gm.labels.iter().map(|l| (pr.env.name_indecomposable(&l.rep), l.rep.clone())).collect();
    gm.name_labels(&named);
    Ok(gm)
}

#[derive(Clone, Debug)]
pub struct FactResult {
    pub fact: Fact,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct InstanceReport {
    pub example: String,
    pub instance: String,
    pub field: u32,
    pub nodes: usize,
    pub facts: Vec<FactResult>,
    pub certificates: Vec<Certificate>,
    pub millis: u128,
}

impl InstanceReport {
    pub fn ok(&self) -> bool {
        self.facts.iter().all(|f| f.ok) && self.certificates.iter().all(|c| c.ok)
    }

    pub fn id(&self) -> String {
        format!("{}/{}", self.example, self.instance)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let status = if self.ok() { "ok" } else { "FAILED" };
        let _ = writeln!(s, "{} (F_{}): {} nodes, {status}", self.id(), self.field, self.nodes);
        for f in &self.facts {
            let mark = if f.ok { "ok  " } else { "FAIL" };
            let _ = writeln!(s, "  {mark} fact {} = {} [{}]", f.fact, f.actual, f.fact.kind);
            if !f.ok {
                let _ = writeln!(s, "       expected {}", f.fact.value);
            }
        }
        for c in &self.certificates {
            let mark = if c.ok { "ok  " } else { "FAIL" };
            let _ = writeln!(s, "  {mark} {}: {}", c.name, c.detail);
        }
        s
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Also run the determiner property suite with raw definition probes.
    pub probe_definitional: bool,
    pub probes: usize,
}

/// Enumerate `^C[→Y⟩`, check every fact and attach certificates.
pub fn run_instance(ex: &Example, inst: &Instance, caps: &Caps, opts: &RunOptions) -> Result<InstanceReport> {
    let t0 = Instant::now();
    let pr = prepare(ex, inst)?;
    let fl = enumerate_with(gamma_module(&pr)?, caps)?;
    let facts = inst.facts.iter().map(|f| check_fact(&pr, &fl, f)).collect::<Result<Vec<_>>>()?;
    let mut certificates = certificates(&fl, caps)?;
    if opts.probe_definitional {
        let d = determiner_suite(&pr, &fl, caps, opts.probes.max(1))?;
        certificates.push(Certificate { name: "determiners", ok: d.ok(), detail: d.summary() });
    }
    Ok(InstanceReport {
        example: ex.name.clone(),
        instance: inst.name.clone(),
        field: pr.y.p(),
        nodes: fl.lattice.len(),
        facts,
        certificates,
        millis: t0.elapsed().as_millis(),
    })
}

fn parse_num(f: &Fact) -> Result<usize> {
    f.value.parse().map_err(|_| perr(f.line, format!("`{}` expects a number", f.key)))
}

fn level_of(fl: &FactorizationLattice, arg: &str, f: &Fact) -> Result<usize> {
    arg.parse().map_err(|_| perr(f.line, format!("`{}` expects a level", f.key)))
        .and_then(|l: usize| if l <= fl.lattice.height() { Ok(l) } else { Err(perr(f.line, "level above the top")) })
}

/// Multisets of modules agree up to isomorphism.
fn same_modules(a: &[Rep], b: &[Rep]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        let hit = (0..b.len()).find(|&j| !used[j] && b[j].dims() == x.dims() && is_isomorphic(x, &b[j]));
        hit.map(|j| used[j] = true).is_some()
    })
}

fn check_fact(pr: &Prepared, fl: &FactorizationLattice, f: &Fact) -> Result<FactResult> {
    let l = &fl.lattice;
    let gm = &fl.gm;
    let num = |actual: usize| -> Result<(String, bool)> { Ok((actual.to_string(), parse_num(f)? == actual)) };
    let (actual, ok) = match f.key.as_str() {
        "nodes" => num(l.len())?,
        "height" => num(l.height())?,
        "covers" => num(l.covers.len())?,
        "length" => num(gm.length())?,
        "hom-dim" => num(gm.dim())?,
        "labels" => num(gm.dimvec(&gm.full()).iter().filter(|&&m| m > 0).count())?,
        "gamma-dim" => num(gm.end.dim())?,
        "gamma-loewy" => num(gm.end.loewy_length())?,
        "epis" => num(fl.classes.iter().filter(|c| c.is_epi).count())?,
        "monos" => num(fl.classes.iter().filter(|c| c.is_mono).count())?,
        "marker" => {
            let node = l.find(&gm.through_projectives()).ok_or_else(|| Error::Verification("Hom(C,P,Y) is not a node".into()))?;
            num(l.nodes[node].height)?
        }
        "levels" => {
            let actual = l.level_counts();
            let want = f.value.split_whitespace().map(|x| x.parse::<usize>()).collect::<std::result::Result<Vec<_>, _>>();
            let want = want.map_err(|_| perr(f.line, "`levels` expects numbers"))?;
            (actual.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "), want == actual)
        }
        "shape" => {
            let words: Vec<&str> = f.value.split_whitespace().collect();
            let q = l.p as u128;
            let expected = match words.as_slice() {
                ["chain", d] => Shape::Chain(d.parse().map_err(|_| perr(f.line, "bad chain height"))?),
                ["geometry", d] => Shape::Geometry { d: d.parse().map_err(|_| perr(f.line, "bad dimension"))?, q },
                ["other"] => Shape::Other,
                _ => return Err(perr(f.line, "shape is `chain D`, `geometry D` or `other`")),
            };
            let computed = classify_shape(l, q);
            let ok = if expected == Shape::Other { computed == Shape::Other } else { shape_matches(&expected, &computed) };
            (computed.to_string(), ok)
        }
        "sources" => {
            let lev = level_of(fl, &f.arg, f)?;
            let at: Vec<&crate::factor::REClass> = fl.classes.iter().filter(|c| l.nodes[c.node].height == lev).collect();
            let actual: Vec<Rep> = at.iter().map(|c| c.source().clone()).collect();
            let want = f.value.split(';').map(|e| pr.env.module(e.trim())).collect::<Result<Vec<_>>>()?;
            let mut names: Vec<String> = actual.iter().map(|r| pr.env.name(r)).collect();
            names.sort();
            (names.join(" ; "), same_modules(&actual, &want))
        }
        "label-mult" => {
            let m = pr.env.module(&f.arg)?;
            let mult = gm.dimvec(&gm.full());
            let k = gm.labels.iter().position(|lb| lb.rep.dims() == m.dims() && indecomposables_isomorphic(&lb.rep, &m));
            num(k.map(|k| mult[k]).unwrap_or(0))?
        }
        "determined" => {
            let g = pr.env.morphism(&f.arg)?;
            let d = is_right_determined(&g, &pr.c)?;
            let want = match f.value.as_str() {
                "true" => true,
                "false" => false,
                _ => return Err(perr(f.line, "`determined` expects true or false")),
            };
            (d.to_string(), d == want)
        }
        "determiner" => {
            let g = pr.env.morphism(&f.arg)?;
            let d = minimal_determiner(&g)?;
            let mut names: Vec<String> = d.summands.iter().map(|(r, _)| pr.env.name(r)).collect();
            names.sort();
            let (op, e) = f.value.split_once(char::is_whitespace).ok_or_else(|| perr(f.line, "expected `includes EXPR`"))?;
            let m = pr.env.module(e.trim())?;
            let has = d.summands.iter().any(|(r, _)| indecomposables_isomorphic(r, &m));
            let ok = match op {
                "includes" => has,
                "excludes" => !has,
                _ => return Err(perr(f.line, "expected `includes` or `excludes`")),
            };
            (names.join(" ++ "), ok)
        }
        k => return Err(perr(f.line, format!("unknown fact `{k}`"))),
    };
    Ok(FactResult { fact: f.clone(), actual, ok })
}

/// Bijection, modularity, length-one, epi, strata, Jordan–Hölder, join and
/// AR-formula certificates.
pub fn certificates(fl: &FactorizationLattice, caps: &Caps) -> Result<Vec<Certificate>> {
    let l = &fl.lattice;
    let gm = &fl.gm;
    let mut out = Vec::new();
    let r = &fl.report;
    out.push(Certificate {
        name: "bijection",
        ok: r.ok(),
        detail: format!("{} candidates, {} meet pairs, {} meet failures", r.candidates, r.meet_pairs, r.meet_failures),
    });
    let full = l.len() <= 60;
    out.push(Certificate {
        name: "modular",
        ok: l.check_modular(if full { None } else { Some(5000) }, caps.seed),
        detail: if full { "all triples".into() } else { "5000 sampled triples".into() },
    });
    let lo = length_one_checks(fl)?;
    out.push(Certificate {
        name: "length-one",
        ok: lo.failures.is_empty(),
        detail: if lo.failures.is_empty() {
            format!("{} classes, {} kernels, {} socle checks, {} μ checks", lo.length_one, lo.kernel_indecomposable, lo.socle_checked, lo.mu_checked)
        } else {
            lo.failures.join("; ")
        },
    });
    let epi = epi_classes(fl);
    out.push(Certificate {
        name: "epi",
        ok: epi.is_ok(),
        detail: match &epi {
            Ok(e) => format!("{} epimorphic classes", e.len()),
            Err(e) => e.to_string(),
        },
    });
    let mut by_type: std::collections::BTreeMap<Vec<usize>, usize> = std::collections::BTreeMap::new();
    for cl in &fl.classes {
        *by_type.entry(cl.c_type.clone()).or_default() += 1;
    }
    out.push(Certificate {
        name: "strata",
        ok: by_type == strata_counts(l),
        detail: format!("{} C-types", by_type.len()),
    });
    let mut jh_bad = 0;
    for (i, cl) in fl.classes.iter().enumerate() {
        let chain = maximal_chain(l, cl.node, l.top, caps.seed + i as u64);
        if chain.len() - 1 != cl.c_length {
            jh_bad += 1;
        }
    }
    out.push(Certificate {
        name: "jordan-holder",
        ok: jh_bad == 0,
        detail: format!("{} classes, {} mismatches", fl.classes.len(), jh_bad),
    });
    let mut pairs: Vec<(usize, usize)> =
        (0..fl.classes.len()).flat_map(|a| (a + 1..fl.classes.len()).map(move |b| (a, b))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);
    pairs.shuffle(&mut rng);
    pairs.truncate(caps.meet_samples);
    let mut join_bad = 0;
    for &(a, b) in &pairs {
        let j = rep::join_map(&fl.classes[a].f, &fl.classes[b].f)?;
        let want = fl.classes[a].eta.sum(&fl.classes[b].eta)?;
        if crate::determine::eta(&j, gm)? != want {
            join_bad += 1;
        }
    }
    out.push(Certificate { name: "joins", ok: join_bad == 0, detail: format!("{} pairs, {} failures", pairs.len(), join_bad) });
    let mut ar_bad = Vec::new();
    let mut ar_n = 0;
    for ci in add_classes(&gm.c) {
        if is_projective(&ci) {
            continue;
        }
        let k = tau(&ci);
        let (e, h) = ar_formula_dims(&gm.y, &k)?;
        ar_n += 1;
        if e != h {
            ar_bad.push(format!("dims {:?}: Ext {e} vs Hom {h}", ci.dims()));
        }
    }
    out.push(Certificate {
        name: "ar-formula",
        ok: ar_bad.is_empty(),
        detail: if ar_bad.is_empty() { format!("{ar_n} summands") } else { ar_bad.join("; ") },
    });
    Ok(out)
}

#[derive(Clone, Debug, Default)]
pub struct DeterminerSuite {
    pub classes: usize,
    pub not_determined: usize,
    pub zero_hom: usize,
    pub removals: usize,
    pub removal_failures: usize,
    pub probes: usize,
    pub applicable: usize,
    pub violations: usize,
    pub failures: Vec<String>,
}

impl DeterminerSuite {
    pub fn ok(&self) -> bool {
        self.not_determined + self.zero_hom + self.removal_failures + self.violations == 0
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} classes; {} removals checked; {} probe checks ({} applicable)",
            self.classes,
            self.removals,
            self.probes,
            self.applicable
        );
        if !self.ok() {
            let _ = write!(s, "; failures: {}", self.failures.join("; "));
        }
        s
    }
}

/// A seeded family of maps into `Y` from small modules related to `C` and `Y`.
pub fn probe_set(pr: &Prepared, fl: &FactorizationLattice, n: usize, seed: u64) -> Result<Vec<Morphism>> {
    let alg = pr.y.alg();
    let mut pool: Vec<Rep> = add_classes(&pr.c);
    pool.extend((0..alg.n_vertices()).map(|x| alg.projective(x)));
    pool.extend(add_classes(&pr.y));
    for cl in &fl.classes {
        pool.extend(decompose(cl.source()).with_multiplicity().into_iter().map(|(r, _)| r));
    }
    let mut uniq: Vec<Rep> = Vec::new();
    for r in pool {
        if !r.is_zero() && !uniq.iter().any(|u| u.dims() == r.dims() && indecomposables_isomorphic(u, &r)) {
            uniq.push(r);
        }
    }
    let homs: Vec<(Rep, Vec<Morphism>)> = uniq
        .into_iter()
        .map(|x| hom_space(&x, &pr.y).map(|h| (x, h.basis)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, b)| !b.is_empty())
        .collect();
    if homs.is_empty() {
        return Ok(Vec::new());
    }
    let p = pr.y.p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_map = |rng: &mut ChaCha8Rng, x: &Rep, b: &[Morphism]| -> Morphism {
        b.iter().fold(Morphism::zero(x, &pr.y), |acc, g| acc.add(&g.scale(rng.gen_range(0..p))))
    };
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let (x, b) = &homs[rng.gen_range(0..homs.len())];
        let g = random_map(&mut rng, x, b);
        if k % 2 == 1 {
            let (x2, b2) = &homs[rng.gen_range(0..homs.len())];
            let g2 = random_map(&mut rng, x2, b2);
            out.push(rep::row_map(&[g, g2], &pr.y));
        } else {
            out.push(g);
        }
    }
    Ok(out)
}

/// For every class `f`: `f` is right `C`-determined, each summand of `C(f)`
/// maps nontrivially to `Y`, dropping any `C(f)`-summand from `C` removes `f`
/// from the enumeration, and no probe violates the definition.
pub fn determiner_suite(pr: &Prepared, fl: &FactorizationLattice, caps: &Caps, probes: usize) -> Result<DeterminerSuite> {
    let mut s = DeterminerSuite { classes: fl.classes.len(), ..Default::default() };
    let probe_maps = probe_set(pr, fl, probes, caps.seed)?;
    let c_classes = decompose(&pr.c).with_multiplicity();
    let mut smaller: Vec<Option<FactorizationLattice>> = vec![None; c_classes.len()];
    for cl in &fl.classes {
        let f = &cl.f;
        if !is_right_determined(f, &pr.c)? {
            s.not_determined += 1;
            s.failures.push(format!("node {}: not right C-determined", cl.node));
        }
        for (r, _) in &cl.determiner.summands {
            if hom_space(r, &pr.y)?.dim() == 0 {
                s.zero_hom += 1;
                s.failures.push(format!("node {}: determiner summand {} has no maps to Y", cl.node, pr.env.name(r)));
            }
            let Some(k) = c_classes.iter().position(|(x, _)| x.dims() == r.dims() && indecomposables_isomorphic(x, r)) else {
                continue;
            };
            if smaller[k].is_none() {
                let rest: Vec<Rep> = c_classes
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != k)
                    .flat_map(|(_, (x, m))| std::iter::repeat(x.clone()).take(*m))
                    .collect();
                let c2 = Rep::direct_sum_all(pr.c.alg(), &rest);
                smaller[k] = Some(enumerate_classes(&c2, &pr.y, caps)?);
            }
            s.removals += 1;
            let sm = smaller[k].as_ref().unwrap();
            let present = sm.classes.iter().any(|g| {
                g.source().dims() == f.src().dims() && rep::right_equivalent(&g.f, f).unwrap_or(false)
            });
            if present {
                s.removal_failures += 1;
                s.failures.push(format!("node {}: still present without {}", cl.node, pr.env.name(r)));
            }
        }
        let pc = definitional_check(f, &pr.c, &probe_maps)?;
        s.probes += pc.checked;
        s.applicable += pc.applicable;
        if !pc.violations.is_empty() {
            s.violations += pc.violations.len();
            s.failures.push(format!("node {}: {} probe violations", cl.node, pc.violations.len()));
        }
    }
    Ok(s)
}

/// Run every instance of every built-in example.
pub fn run_all(caps: &Caps, opts: &RunOptions) -> Vec<(String, Result<InstanceReport>)> {
    let mut out = Vec::new();
    for ex in builtin() {
        for inst in &ex.instances {
            out.push((format!("{}/{}", ex.name, inst.name), run_instance(&ex, inst, caps, opts)));
        }
    }
    out
}
