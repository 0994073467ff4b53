use num_traits::{Signed, Zero};
use proptest::prelude::*;
use spark_core::arith::{int, rat};
use spark_core::cochain::{pullback_matrix, simplicial_cochains};
use spark_core::hodge::*;
use spark_core::models::build_cs_model;
use spark_core::simplicial::fixtures::*;
use spark_core::simplicial::SimplicialComplex;
use spark_core::Rat;

fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn scaled(v: &[Rat], s: &Rat) -> Vec<Rat> {
    v.iter().map(|x| x * s).collect()
}

/// Closed integer cochain of degree `q`: `dS` plus integer multiples of the
/// integral cohomology generators.
fn closed_integer(k: &SimplicialComplex, q: usize, s: &[i64], mult: &[i64]) -> Vec<Rat> {
    let c = simplicial_cochains(k);
    let mut r = if q == 0 { vec![Rat::zero(); k.count(0)] } else {
        let s: Vec<Rat> = (0..k.count(q - 1)).map(|i| rat(s[i % s.len()], 1)).collect();
        c.apply(q - 1, &s)
    };
    let g = c.integer_cohomology(q);
    let gens = g.free_reps.iter().chain(g.torsion_reps.iter().map(|t| &t.cocycle));
    for (rep, m) in gens.zip(mult.iter().cycle()) {
        r = add(&r, &scaled(rep, &rat(*m, 1)));
    }
    r
}

#[test]
fn circle_harmonic_projection_of_one_edge() {
    let k = circle(3);
    let h = Hodge::identity(&k).unwrap();
    let d1 = h.degree(1).unwrap();
    assert!(d1.verify());
    assert_eq!(d1.harmonic.len(), 1);
    let r = vec![rat(1, 1), rat(0, 1), rat(0, 1)];
    let s = hodge_spark(&h, 0, &r).unwrap();
    assert!(s.harmonic.iter().all(|x| x.abs() == rat(1, 3)));
    assert!(verify_spark_equation(&simplicial_cochains(&k), &s, &r));
}

#[test]
fn zero_and_exact_divisors() {
    let k = torus7();
    let h = Hodge::identity(&k).unwrap();
    let s = hodge_spark(&h, 0, &vec![Rat::zero(); k.count(1)]).unwrap();
    assert!(s.sigma.iter().all(Zero::is_zero));
    let r = closed_integer(&k, 1, &[1, -2, 0, 3], &[0]);
    let s = hodge_spark(&h, 0, &r).unwrap();
    assert!(s.harmonic.iter().all(Zero::is_zero));
}

#[test]
fn sphere_has_no_harmonic_one_forms() {
    let k = tetrahedron_boundary();
    let h = Hodge::identity(&k).unwrap();
    for q in 0..=2 {
        assert!(h.degree(q).unwrap().verify());
    }
    assert!(h.degree(1).unwrap().harmonic.is_empty());
}

#[test]
fn weighted_inner_product() {
    let k = circle(4);
    let ip = InnerProduct::diagonal(vec![vec![rat(1, 1); 4], vec![rat(1, 1), rat(2, 1), rat(3, 1), rat(1, 2)]]).unwrap();
    let h = Hodge::new(&k, ip).unwrap();
    assert!(h.degrees.iter().all(|d| d.verify()));
    assert!(InnerProduct::diagonal(vec![vec![rat(-1, 1)]]).is_err());
}

#[test]
fn hodge_model_carries_the_spark() {
    let k = torus7();
    let h = Hodge::identity(&k).unwrap();
    let model = hodge_model(&h).unwrap();
    assert!(model.verify_axioms().passes());
    let r = closed_integer(&k, 2, &[1], &[2]);
    let s = hodge_spark(&h, 1, &r).unwrap();
    let x = hodge_model_spark(&model, &h, &s).unwrap();
    assert!(model.is_spark(1, &x));
}

#[test]
fn abel_jacobi_on_the_torus() {
    let k = torus7();
    let h = Hodge::identity(&k).unwrap();
    let fg = flat_group(&k, 1).unwrap();
    let gamma = scaled(&fg.torus_generators[0].cochain, &rat(1, 3));
    let aj = abel_jacobi(&h, 1, &gamma).unwrap();
    assert_eq!(aj.periods, vec![rat(1, 3), rat(0, 1)]);
    let r = simplicial_cochains(&k).apply(1, &gamma);
    assert!(!linear_equivalence_zero(&h, 1, &r, &gamma).unwrap());
    // integral shift leaves the class alone
    let shifted = add(&gamma, &closed_integer(&k, 1, &[2, 0, -1], &[1, 4]));
    assert_eq!(abel_jacobi(&h, 1, &shifted).unwrap().periods, aj.periods);
    let integral = closed_integer(&k, 1, &[1, 1, -1], &[3, -2]);
    assert!(abel_jacobi(&h, 1, &integral).unwrap().is_zero());
    assert!(linear_equivalence_zero(&h, 1, &simplicial_cochains(&k).apply(1, &integral), &integral).unwrap());
}

#[test]
fn flat_groups() {
    let t = flat_group(&torus7(), 1).unwrap();
    assert_eq!(t.invariants.torus_dim, 2);
    assert!(t.invariants.torsion.is_empty());
    let e = t.torus_element(&[rat(1, 3), rat(1, 4)]).unwrap();
    assert_eq!(e.holonomy, vec![rat(1, 3), rat(1, 4)]);

    let s = flat_group(&tetrahedron_boundary(), 1).unwrap();
    assert_eq!(s.invariants.torus_dim, 0);
    assert!(s.invariants.torsion.is_empty());

    let p = flat_group(&rp2(), 1).unwrap();
    assert_eq!(p.invariants.torus_dim, 0);
    assert_eq!(p.invariants.torsion, vec![int(2)]);
    assert_eq!(p.torsion_generators.len(), 1);
    assert_eq!(p.torsion_generators[0].holonomy, vec![rat(1, 2)]);
}

#[test]
fn poincare_duality() {
    for (k, n) in [(tetrahedron_boundary(), 2), (torus7(), 2), (rp3(), 3)] {
        for q in 0..=n {
            let v = poincare_duality_check(&k, q).unwrap();
            assert!(v.holds, "{:?}", v);
        }
    }
    assert!(poincare_duality_check(&rp2(), 1).is_err());
}

#[test]
fn rp2_torsion_class_and_bockstein() {
    let k = rp2();
    let cs = build_cs_model(&k, 1).unwrap();
    let fg = flat_group(&k, 1).unwrap();
    let vmap: Vec<usize> = (0..cs.fine().count(0)).map(|v| cs.subdivision.approximation_vertex(v)).collect();
    let pull = pullback_matrix(cs.fine(), &k, &vmap, 1);
    let h = pull.mul_vec(&fg.torsion_generators[0].cochain);
    let x = cs.flat_spark(1, &h).unwrap().a;
    let t = torsion_analysis(&cs, 1, &x, &int(2)).unwrap();
    assert!(t.holds);
    assert_eq!(t.bockstein, t.divisor);
    assert!(t.u_class.iter().any(|c| !c.is_zero()));
    assert!(t.divisor.iter().any(|c| !c.is_zero()));
    let inv = character_invariants(&cs, 1, &x).unwrap();
    assert!(inv.flat);
    assert!(torsion_analysis(&cs, 1, &x, &int(3)).is_err());
}

#[test]
fn zero_class_is_torsion_with_zero_lift() {
    let cs = build_cs_model(&rp2(), 1).unwrap();
    let x = vec![Rat::zero(); cs.presentation.dim(1)];
    let t = torsion_analysis(&cs, 1, &x, &int(2)).unwrap();
    assert!(t.holds && t.u.iter().all(Zero::is_zero));
    assert!(t.bockstein.iter().all(Zero::is_zero));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn spark_equation_holds(s in prop::collection::vec(-3i64..4, 1..8), m in prop::collection::vec(-3i64..4, 1..3)) {
        for k in [circle(4), torus7(), tetrahedron_boundary()] {
            let h = Hodge::identity(&k).unwrap();
            let c = simplicial_cochains(&k);
            for q in 1..=k.dim() {
                let r = closed_integer(&k, q, &s, &m);
                let sp = hodge_spark(&h, q - 1, &r).unwrap();
                prop_assert!(verify_spark_equation(&c, &sp, &r));
            }
        }
    }

    #[test]
    fn abel_jacobi_matches_linear_equivalence(s in prop::collection::vec(-3i64..4, 1..8), beta in prop::collection::vec(-5i64..6, 1..8), t in prop::collection::vec(0i64..4, 2)) {
        let k = torus7();
        let h = Hodge::identity(&k).unwrap();
        let c = simplicial_cochains(&k);
        let fg = flat_group(&k, 1).unwrap();
        let b: Vec<Rat> = (0..k.count(0)).map(|i| rat(beta[i % beta.len()], 7)).collect();
        let mut gamma = add(&closed_integer(&k, 1, &s, &[0]), &c.apply(0, &b));
        for (g, ti) in fg.torus_generators.iter().zip(&t) {
            gamma = add(&gamma, &scaled(&g.cochain, &rat(*ti, 2)));
        }
        let r = c.apply(1, &gamma);
        let aj = abel_jacobi(&h, 1, &gamma).unwrap();
        prop_assert_eq!(aj.is_zero(), linear_equivalence_zero(&h, 1, &r, &gamma).unwrap());
        prop_assert_eq!(aj.is_zero(), t.iter().all(|x| x % 2 == 0));
    }
}
