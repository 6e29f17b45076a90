use auskit::algebra::Algebra;
use auskit::ar::{ext1, is_projective, tau, tau_minus};
use auskit::catalog::certificates;
use auskit::determine::{add_classes, is_right_determined, minimal_determiner};
use auskit::endo::{decompose, is_isomorphic};
use auskit::factor::{enumerate_classes, lost_after_enlarging, Caps};
use auskit::ffmat::Mat;
use auskit::kronecker::{defect, kronecker_algebra};
use auskit::lattice::{jordan_holder, maximal_chain};
use auskit::rep::{hom_dim, hom_space, Rep};
use proptest::prelude::*;

/// Dimension vector plus enough entries to fill every arrow matrix.
type Raw = (Vec<usize>, Vec<u32>);

fn raw(n_vertices: usize, max_dim: usize, p: u32) -> impl Strategy<Value = Raw> {
    prop::collection::vec(0..=max_dim, n_vertices)
        .prop_flat_map(move |dims| (Just(dims), prop::collection::vec(0..p, 4 * max_dim * max_dim)))
}

/// `None` when the data violates the relations.
fn build(alg: &Algebra, (dims, data): &Raw) -> Option<Rep> {
    let mut it = data.iter().copied().cycle();
    let maps = (0..alg.n_arrows())
        .map(|i| {
            let a = alg.arrow(i);
            let (r, c) = (dims[a.dst], dims[a.src]);
            Mat::from_vec(alg.p(), r, c, (&mut it).take(r * c).collect())
        })
        .collect();
    Rep::new(alg.clone(), dims.clone(), maps).ok()
}

fn linear_a3() -> Algebra {
    Algebra::parse("field 2\nvertices a b c\narrow alpha b a\narrow beta c b\n").unwrap()
}

fn radical_square_zero_a3() -> Algebra {
    Algebra::parse("field 2\nvertices a b c\narrow alpha b a\narrow beta c b\nrelation alpha*beta\n").unwrap()
}

/// Euler form of an acyclic quiver without relations.
fn euler(alg: &Algebra, x: &Rep, y: &Rep) -> i64 {
    let diag: i64 = x.dims().iter().zip(y.dims()).map(|(a, b)| (a * b) as i64).sum();
    let arrows: i64 = (0..alg.n_arrows()).map(|i| (x.dims()[alg.arrow(i).src] * y.dims()[alg.arrow(i).dst]) as i64).sum();
    diag - arrows
}

fn small_caps() -> Caps {
    Caps { max_dim: Some(6), ..Caps::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    #[test]
    fn hom_minus_ext_is_the_euler_form(rx in raw(2, 3, 2), ry in raw(2, 3, 2), rz in raw(3, 2, 2), rw in raw(3, 2, 2)) {
        let k = kronecker_algebra(2).unwrap();
        let (x, y) = (build(&k, &rx).unwrap(), build(&k, &ry).unwrap());
        prop_assert_eq!(hom_dim(&x, &y) as i64 - ext1(&x, &y).unwrap().dim() as i64, euler(&k, &x, &y));
        let a3 = linear_a3();
        let (z, w) = (build(&a3, &rz).unwrap(), build(&a3, &rw).unwrap());
        prop_assert_eq!(hom_dim(&z, &w) as i64 - ext1(&z, &w).unwrap().dim() as i64, euler(&a3, &z, &w));
    }

    #[test]
    fn translates_undo_each_other(r in raw(2, 3, 2)) {
        let k = kronecker_algebra(2).unwrap();
        let m = build(&k, &r).unwrap();
        for (s, _) in decompose(&m).with_multiplicity() {
            if is_projective(&s) {
                prop_assert!(tau(&s).is_zero());
                continue;
            }
            let t = tau(&s);
            prop_assert!(is_isomorphic(&tau_minus(&t), &s));
            prop_assert_eq!(defect(&t).unwrap(), defect(&s).unwrap());
        }
    }

    #[test]
    fn kronecker_lattices_are_certified(rc in raw(2, 2, 2), ry in raw(2, 2, 2)) {
        let k = kronecker_algebra(2).unwrap();
        let (c, y) = (build(&k, &rc).unwrap(), build(&k, &ry).unwrap());
        prop_assume!(hom_dim(&c, &y) <= 5);
        check_lattice(&c, &y)?;
    }

    #[test]
    fn lattices_with_relations_are_certified(rc in raw(3, 2, 2), ry in raw(3, 2, 2)) {
        let alg = radical_square_zero_a3();
        let (c, y) = (build(&alg, &rc), build(&alg, &ry));
        prop_assume!(c.is_some() && y.is_some());
        let (c, y) = (c.unwrap(), y.unwrap());
        prop_assume!(hom_dim(&c, &y) <= 5);
        check_lattice(&c, &y)?;
    }

    #[test]
    fn enlarging_c_keeps_every_class(rc in raw(3, 1, 2), ry in raw(3, 2, 2), re in raw(3, 1, 2)) {
        let alg = linear_a3();
        let (c, y, extra) = (build(&alg, &rc).unwrap(), build(&alg, &ry).unwrap(), build(&alg, &re).unwrap());
        prop_assume!(hom_dim(&c, &y) + hom_dim(&extra, &y) <= 5);
        let fl = enumerate_classes(&c, &y, &small_caps()).unwrap();
        prop_assert!(lost_after_enlarging(&fl, &extra, &small_caps()).unwrap().is_empty());
    }

    #[test]
    fn a_map_is_determined_by_its_determiner(rx in raw(2, 2, 2), ry in raw(2, 2, 2), coeffs in prop::collection::vec(0u32..2, 16)) {
        let k = kronecker_algebra(2).unwrap();
        let (x, y) = (build(&k, &rx).unwrap(), build(&k, &ry).unwrap());
        let h = hom_space(&x, &y).unwrap();
        let f = h.basis.iter().zip(coeffs.iter().cycle()).fold(auskit::rep::Morphism::zero(&x, &y), |acc, (g, &c)| acc.add(&g.scale(c)));
        let d = minimal_determiner(&f).unwrap();
        let det = Rep::direct_sum_all(&k, &d.reps());
        prop_assert!(is_right_determined(&f, &det).unwrap());
        for (r, _) in &d.summands {
            prop_assert!(hom_dim(r, &y) > 0);
        }
    }
}

/// Certificates, Jordan–Hölder lengths and right `C`-determination of every class.
fn check_lattice(c: &Rep, y: &Rep) -> Result<(), TestCaseError> {
    let caps = small_caps();
    let fl = enumerate_classes(c, y, &caps).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(fl.report.ok());
    for cert in certificates(&fl, &caps).unwrap() {
        prop_assert!(cert.ok, "{} failed: {}", cert.name, cert.detail);
    }
    let l = &fl.lattice;
    prop_assert!(l.check_modular(None, 0));
    let classes = add_classes(c);
    for cl in &fl.classes {
        let chain = maximal_chain(l, cl.node, l.top, 0);
        prop_assert_eq!(chain.len() - 1, cl.c_length);
        prop_assert_eq!(&jordan_holder(l, cl.node, l.top).unwrap(), &cl.c_type);
        prop_assert!(is_right_determined(&cl.f, c).unwrap());
        prop_assert!(cl.determiner.summands.iter().all(|(r, _)| classes.iter().any(|k| is_isomorphic(k, r))));
    }
    Ok(())
}
