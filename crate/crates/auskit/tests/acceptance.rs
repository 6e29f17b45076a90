//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use auskit::catalog::{self, builtin, find_example, gamma_module, prepare, run_instance, InstanceReport, RunOptions};
use auskit::endo::{is_isomorphic, is_right_minimal};
use auskit::factor::{enumerate_classes, enumerate_with, lost_after_enlarging, Caps};
use auskit::kronecker::{
    enumerate_strongly_regular, kronecker_algebra, pre_injective, pre_projective, sigma_check, table_points,
    verify_table,
};
use auskit::rep::Morphism;
use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: auskit::Error) -> String {
    e.to_string()
}

fn criterion(n: usize, title: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t0 = Instant::now();
    let res = f();
    let el = t0.elapsed();
    let res = match res {
        Ok(d) if el > limit => Err(format!("{d}; took {:.1}s, limit {}s", el.as_secs_f64(), limit.as_secs())),
        r => r,
    };
    match &res {
        Ok(d) => println!("PASS {n} {title} ({:.1}s): {d}", el.as_secs_f64()),
        Err(d) => println!("FAIL {n} {title} ({:.1}s): {d}", el.as_secs_f64()),
    }
    res.is_ok()
}

fn report(example: &str, instance: &str, opts: &RunOptions) -> Result<InstanceReport, String> {
    let ex = find_example(example).map_err(err)?;
    let inst = ex.instance(instance).ok_or(format!("no instance {example}/{instance}"))?;
    run_instance(&ex, inst, &Caps::default(), opts).map_err(err)
}

fn require_ok(r: &InstanceReport) -> Result<(), String> {
    ensure(r.ok(), format!("{} failed:\n{}", r.id(), r.to_text()))
}

fn kronecker_table() -> Outcome {
    let mut rows = 0;
    let mut homs = 0;
    let mut extra_skipped = 0;
    for p in [2, 3] {
        let rep = verify_table(3, p).map_err(err)?;
        let bad: Vec<String> = rep.rows.iter().filter(|r| !r.ok()).map(|r| format!("row {} {}→{}", r.row, r.c, r.y)).collect();
        ensure(bad.is_empty(), format!("F_{p}: {}", bad.join(", ")))?;
        let hom_bad: Vec<String> =
            rep.hom_checks.iter().filter(|h| h.dim != h.expected).map(|h| format!("{}→{}", h.c, h.y)).collect();
        ensure(hom_bad.is_empty(), format!("F_{p}: Hom dimension mismatch {}", hom_bad.join(", ")))?;
        // every required case lives on a rational tube; only the extra
        // quadratic-tube cases may exceed the enumeration caps
        let quad = table_points(p)[1].to_string();
        let required: Vec<&String> = rep.skipped.iter().filter(|s| !s.contains(&format!("R[{quad}]"))).collect();
        ensure(required.is_empty(), format!("F_{p}: required cases skipped: {required:?}"))?;
        rows += rep.rows.len();
        homs += rep.hom_checks.len();
        extra_skipped += rep.skipped.len();
    }
    Ok(format!("{rows} shapes and {homs} Hom dimensions over F_2, F_3; {extra_skipped} extra quadratic-tube cases beyond caps"))
}

fn second_theorem(reports: &[InstanceReport]) -> Outcome {
    ensure(reports.len() >= 12, format!("only {} catalog instances", reports.len()))?;
    let mut classes = 0;
    for r in reports {
        let b = r.certificates.iter().find(|c| c.name == "bijection").ok_or("missing bijection certificate")?;
        ensure(b.ok, format!("{}: {}", r.id(), b.detail))?;
        require_ok(r)?;
        classes += r.nodes;
    }
    Ok(format!("{} instances, {classes} classes, surjective, injective and meet-preserving", reports.len()))
}

fn sigma() -> Outcome {
    let alg = kronecker_algebra(2).map_err(err)?;
    let caps = Caps::default();
    let mut out = Vec::new();
    for (i, j) in [(2, 0), (0, 1), (1, 1), (0, 2)] {
        let c = pre_projective(&alg, i).map_err(err)?;
        let y = pre_injective(&alg, j).map_err(err)?;
        let s = sigma_check(&c, &y, &caps).map_err(err)?;
        let expected = enumerate_strongly_regular(&alg, s.i).map_err(err)?;
        ensure(
            s.bijective && s.sources_strongly_regular && s.pairwise_non_isomorphic && s.sources.len() == expected.len(),
            format!("P{i}→Q{j}: {s:?}"),
        )?;
        if (i, j) == (2, 0) {
            ensure(s.sources.len() == 3 && s.i == 2, format!("P2→Q0 gives {} classes at length {}", s.sources.len(), s.i))?;
            let mut a = s.sources.clone();
            let mut b = s.expected.clone();
            a.sort();
            b.sort();
            ensure(a == b, format!("sources {a:?} vs strongly regular {b:?}"))?;
        }
        out.push(format!("P{i}→Q{j}: {} sources of length {}", s.sources.len(), s.i));
    }
    Ok(out.join("; "))
}

fn loop_b() -> Outcome {
    let r = report("loop-b", "tau-inverse-projective", &RunOptions::default())?;
    require_ok(&r)?;
    let ex = find_example("loop-b").map_err(err)?;
    let pr = prepare(&ex, &ex.instances[0]).map_err(err)?;
    let fl = enumerate_with(gamma_module(&pr).map_err(err)?, &Caps::default()).map_err(err)?;
    let end = &fl.gm.end;
    ensure(end.radical_power_dims() == vec![2, 1, 0], format!("rad powers {:?}", end.radical_power_dims()))?;
    // basis {1, t} with t² = 0 and t ≠ 0
    let t = end.rad_basis().pop().ok_or("radical is zero")?;
    ensure(!t.is_zero() && t.comp(&t).is_zero(), "radical generator is not square-zero")?;
    let srcs: Vec<String> = (0..3)
        .map(|h| {
            let c = fl.classes.iter().find(|c| fl.lattice.nodes[c.node].height == h).unwrap();
            pr.env.name(c.source())
        })
        .collect();
    let zero = fl.zero_class().source();
    ensure(is_isomorphic(zero, &pr.env.module("P(b)").map_err(err)?), "η⁻¹(0) source is not P(b)")?;
    Ok(format!("Γ(C) = k[t]/t², chain {}", srcs.join(" < ")))
}

fn hammock() -> Outcome {
    let r = report("subspace3", "hammock", &RunOptions::default())?;
    require_ok(&r)?;
    let ex = find_example("subspace3").map_err(err)?;
    let pr = prepare(&ex, ex.instance("hammock").unwrap()).map_err(err)?;
    let gm = gamma_module(&pr).map_err(err)?;
    let oracle = common::submodules_by_cyclic_sums(&gm).len();
    ensure(oracle == r.nodes, format!("oracle finds {oracle} submodules, enumeration {}", r.nodes))?;
    let mult = gm.dimvec(&gm.full());
    let distinct = mult.iter().filter(|&&m| m > 0).count();
    Ok(format!("length {}, {distinct} labels, {} nodes (oracle {oracle})", gm.length(), r.nodes))
}

fn determiners() -> Outcome {
    let opts = RunOptions { probe_definitional: true, probes: 20 };
    let mut classes = 0;
    let mut probes = 0;
    for ex in builtin() {
        for inst in &ex.instances {
            let r = run_instance(&ex, inst, &Caps::default(), &opts).map_err(err)?;
            let d = r.certificates.iter().find(|c| c.name == "determiners").ok_or("missing suite")?;
            ensure(d.ok, format!("{}: {}", r.id(), d.detail))?;
            classes += r.nodes;
            probes += 20 * r.nodes;
        }
    }
    Ok(format!("{classes} classes, {probes} definition probes, zero failures"))
}

fn uniserial() -> Outcome {
    let mut out = Vec::new();
    for (n, marker) in [(8, 0), (6, 2), (4, 4)] {
        let r = report(&format!("uniserial-{n}"), "four", &RunOptions::default())?;
        require_ok(&r)?;
        let m = r.facts.iter().find(|f| f.fact.key == "marker").ok_or("no marker fact")?;
        ensure(m.actual == marker.to_string(), format!("n = {n}: marker at {}", m.actual))?;
        out.push(format!("n={n} marker {marker}"));
    }
    Ok(out.join(", "))
}

fn structural(reports: &[InstanceReport]) -> Outcome {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for r in reports {
        for c in &r.certificates {
            ensure(c.ok, format!("{}: {} {}", r.id(), c.name, c.detail))?;
            *counts.entry(c.name).or_default() += 1;
        }
    }
    let mu: usize = reports
        .iter()
        .filter_map(|r| r.certificates.iter().find(|c| c.name == "length-one"))
        .filter(|c| !c.detail.ends_with(" 0 μ checks"))
        .count();
    ensure(mu > 0, "no instance exercises |f|_C = μ(Ker f)")?;
    // monotonicity under C → C ⊕ C′
    let caps = Caps::default();
    let mut enlarged = 0;
    for ex in builtin() {
        for inst in &ex.instances {
            let pr = prepare(&ex, inst).map_err(err)?;
            let small = enumerate_classes(&pr.c, &pr.y, &caps).map_err(err)?;
            if small.gm.dim() > 4 || pr.c.alg().dim() > 10 {
                continue;
            }
            let extra = pr.c.alg().regular();
            let lost = lost_after_enlarging(&small, &extra, &caps).map_err(err)?;
            ensure(lost.is_empty(), format!("{}/{}: classes {lost:?} lost after adding Λ", ex.name, inst.name))?;
            enlarged += 1;
        }
    }
    // join-breaking witness: two monomorphisms whose join is right minimal
    // but not right Λ-determined
    let ex = find_example("a3-sources").map_err(err)?;
    let pr = prepare(&ex, &ex.instances[0]).map_err(err)?;
    let f1 = pr.env.morphism("hom(P(b1), Y)[0]").map_err(err)?;
    let f2 = pr.env.morphism("hom(P(b2), Y)[0]").map_err(err)?;
    let join = pr.env.morphism("row(hom(P(b1), Y)[0], hom(P(b2), Y)[0])").map_err(err)?;
    let det = |f: &Morphism| auskit::determine::is_right_determined(f, &pr.c).map_err(err);
    ensure(f1.is_mono() && f2.is_mono() && det(&f1)? && det(&f2)?, "witness maps are not determined monos")?;
    ensure(is_right_minimal(&join) && !join.is_mono() && !det(&join)?, "join witness fails")?;
    Ok(format!(
        "{} modular, {} join, {} Jordan–Hölder, {} AR-formula certificates; μ on {mu} instances; monotone on {enlarged} enlargements; join witness ok",
        counts.get("modular").unwrap_or(&0),
        counts.get("joins").unwrap_or(&0),
        counts.get("jordan-holder").unwrap_or(&0),
        counts.get("ar-formula").unwrap_or(&0),
    ))
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut ok = true;
    ok &= criterion(1, "Kronecker shape table", secs(60), kronecker_table);
    let t0 = Instant::now();
    let reports: Result<Vec<InstanceReport>, String> = catalog::run_all(&Caps::default(), &RunOptions::default())
        .into_iter()
        .map(|(id, r)| r.map_err(|e| format!("{id}: {e}")))
        .collect();
    let catalog_time = t0.elapsed();
    ok &= criterion(2, "bijection certificates on the catalog", secs(300), || {
        reports.clone().and_then(|r| second_theorem(&r)).map(|d| format!("{d}; catalog run {:.1}s", catalog_time.as_secs_f64()))
    });
    ok &= criterion(3, "σ-bijection on the Kronecker algebra", secs(10), sigma);
    ok &= criterion(4, "loop at a with an arrow from b", secs(5), loop_b);
    ok &= criterion(5, "3-subspace hammock", secs(120), hammock);
    ok &= criterion(6, "determiner formula properties", secs(600), determiners);
    ok &= criterion(7, "uniserial chains", secs(10), uniserial);
    ok &= criterion(8, "structural invariants", secs(600), || reports.clone().and_then(|r| structural(&r)));
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
