use auskit::ar::{ar_sequence, tau, tau_minus};
use auskit::endo::is_isomorphic;
use auskit::expr::Env;
use auskit::ffmat::subspace_count;
use auskit::kronecker::{kronecker_algebra, kronecker_algebra_n, pre_injective, pre_projective};
use auskit::lattice::subspace_lattice;

/// `τ⁻` of the simple projective on the `n`-Kronecker quiver: the AR
/// sequence `0 → P(a) → P(b)^n → τ⁻P(a) → 0` gives `n·(n, 1) − (1, 0)`.
#[test]
fn inverse_translate_of_simple_projective() {
    for n in 2..=4 {
        let alg = kronecker_algebra_n(2, n).unwrap();
        let s = alg.simple(0);
        let t = tau_minus(&s);
        assert_eq!(t.dims(), &[n * n - 1, n]);
        assert!(is_isomorphic(&tau(&t), &s));
        let seq = ar_sequence(&t).unwrap();
        assert!(seq.is_exact());
    }
}

/// Preprojectives `(i+1, i)` and preinjectives `(j, j+1)`, linked by `τ`.
#[test]
fn kronecker_translates_walk_the_components() {
    let alg = kronecker_algebra(3).unwrap();
    for i in 0..5 {
        let p = pre_projective(&alg, i).unwrap();
        assert_eq!(p.dims(), &[i + 1, i]);
        assert!(is_isomorphic(&tau_minus(&p), &pre_projective(&alg, i + 2).unwrap()));
        let q = pre_injective(&alg, i).unwrap();
        assert_eq!(q.dims(), &[i, i + 1]);
        assert!(is_isomorphic(&tau(&q), &pre_injective(&alg, i + 2).unwrap()));
    }
}

/// Brute-force count of subspaces of `F_q^n` by enumerating spanning sets.
fn subspaces_by_brute_force(q: u32, n: usize) -> usize {
    let vectors: Vec<Vec<u32>> = (0..q.pow(n as u32))
        .map(|mut x| (0..n).map(|_| { let d = x % q; x /= q; d }).collect())
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut stack = vec![std::collections::BTreeSet::from([vec![0u32; n]])];
    while let Some(s) = stack.pop() {
        if !seen.insert(s.clone()) {
            continue;
        }
        for v in &vectors {
            if s.contains(v) {
                continue;
            }
            let mut t = s.clone();
            for w in &s {
                for c in 0..q {
                    t.insert(w.iter().zip(v).map(|(a, b)| (a + c * b) % q).collect());
                }
            }
            stack.push(t);
        }
    }
    seen.len()
}

#[test]
fn subspace_lattices_have_gaussian_sizes() {
    for (q, n) in [(2, 1), (2, 2), (2, 3), (3, 2), (5, 2)] {
        let brute = subspaces_by_brute_force(q, n);
        assert_eq!(subspace_count(n, q as u128), brute as u128);
        assert_eq!(subspace_lattice(q, n).unwrap().len(), brute);
    }
}

#[test]
fn expressions_name_what_they_build() {
    let alg = auskit::algebra::Algebra::parse("field 3\nvertices a b\narrow alpha b a\narrow beta b a\n").unwrap();
    let env = Env::new(&alg);
    assert_eq!(env.name(&env.module("taum(taum(P(a)))").unwrap()), "P4");
    assert_eq!(env.name(&env.module("kR(x, 2) ++ kR(x, 2) ++ S(b)").unwrap()), "Q(b) ++ R[x]2^2");
    assert_eq!(env.name(&env.module("tau(Q(b))").unwrap()), "Q2");
}
