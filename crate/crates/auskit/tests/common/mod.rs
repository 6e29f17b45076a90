//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use auskit::determine::GammaModule;
use auskit::ffmat::{Mat, Subspace};
use std::collections::HashSet;

fn closure(s: Subspace, acts: &[Mat]) -> Subspace {
    let mut cur = s;
    loop {
        let mut next = cur.clone();
        for a in acts {
            next = next.sum(&cur.image_under(a)).unwrap();
        }
        if next.dim() == cur.dim() {
            return cur;
        }
        cur = next;
    }
}

/// Every submodule is a sum of cyclic ones: generate all cyclic submodules
/// from every vector, then close under pairwise sums.
pub fn submodules_by_cyclic_sums(gm: &GammaModule) -> Vec<Subspace> {
    let p = gm.p();
    let n = gm.dim();
    let mut seen: HashSet<Subspace> = HashSet::new();
    seen.insert(Subspace::zero(p, n));
    let total = (p as u64).pow(n as u32);
    for code in 1..total {
        let mut v = vec![0u32; n];
        let mut c = code;
        for x in v.iter_mut() {
            *x = (c % p as u64) as u32;
            c /= p as u64;
        }
        seen.insert(closure(Subspace::span(p, n, &[v]), &gm.action));
    }
    let cyclic: Vec<Subspace> = seen.iter().cloned().collect();
    let mut all: Vec<Subspace> = seen.iter().cloned().collect();
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &cyclic {
                let t = s.sum(c).unwrap();
                if seen.insert(t.clone()) {
                    next.push(t);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}
