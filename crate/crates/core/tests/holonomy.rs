use num_traits::{One, Zero};
use spark_core::arith::{frac, rat};
use spark_core::cochain::{homology_basis, simplicial_cochains};
use spark_core::holonomy::*;
use spark_core::linalg::{solve, RatMatrix};
use spark_core::models::*;
use spark_core::simplicial::fixtures::*;
use spark_core::simplicial::{Chain, SimplicialComplex};
use spark_core::whitney::{whitney_matrix, WhitneyForm};
use spark_core::Rat;

/// Integral cocycles on `k` pairing to the identity with the free homology basis.
fn dual_cocycles(k: &SimplicialComplex, q: usize) -> (Vec<Chain>, Vec<Vec<Rat>>) {
    let (free, _) = homology_basis(k, q);
    let c = simplicial_cochains(k);
    let reps = c.rational_cohomology(q).free_reps;
    let pair = |v: &[Rat], z: &Chain| spark_core::cochain::evaluate(v, z);
    // rows: cycles, columns: representatives
    let n = free.len();
    let m = RatMatrix::from_columns(n, &reps.iter().map(|r| free.iter().map(|z| pair(r, z)).collect()).collect::<Vec<_>>());
    let mut out = Vec::new();
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = Rat::one();
        let coeffs = solve(&m, &e).unwrap();
        let mut v = vec![Rat::zero(); k.count(q)];
        for (c, r) in coeffs.iter().zip(&reps) {
            for (x, y) in v.iter_mut().zip(r) {
                *x += c * y;
            }
        }
        out.push(v);
    }
    (free, out)
}

struct Flat {
    fam: ModelFamily,
    cycles: Vec<Chain>,
    form: WhitneyForm,
    cs: Vec<Rat>,
}

/// The flat class with the given holonomy on the free homology basis, as a
/// CS spark whose cochain is the Whitney restriction of a closed form.
fn flat_class(k: &SimplicialComplex, q: usize, periods: &[Rat]) -> Flat {
    let fam = ModelFamily::build(k, 1).unwrap();
    let (free, duals) = dual_cocycles(k, q);
    let mut w = vec![Rat::zero(); k.count(q)];
    for (p, d) in periods.iter().zip(&duals) {
        for (x, y) in w.iter_mut().zip(d) {
            *x += p * y;
        }
    }
    let h = whitney_matrix(&fam.cs.subdivision, q).mul_vec(&w);
    let cs = fam.cs.flat_spark(q, &h).unwrap().a;
    let cycles = free.iter().map(|z| fam.cs.subdivision.subdivide_chain(z)).collect();
    Flat { fam, cycles, form: WhitneyForm::new(q, w), cs }
}

#[test]
fn flat_torus_holonomy_agrees_across_routes() {
    let periods = [rat(1, 3), rat(1, 4)];
    let f = flat_class(&torus7(), 1, &periods);
    let smooth = &f.fam.smooth;
    let x = f.fam.convert(ModelKind::CheegerSimons, ModelKind::SmoothHyperspark, 1, &f.cs).unwrap();
    let g = grundle_from_hyperspark(smooth, 1, &x).unwrap();
    let chk = g.check(smooth).unwrap();
    assert!(chk.cocycle && chk.ladder);
    let tot = smooth.cech.as_ref().unwrap();
    for (z, p) in f.cycles.iter().zip(&periods) {
        let lc = LabeledCycle::auto(tot, z).unwrap();
        assert_eq!(grundle_holonomy(&g, &lc).unwrap(), *p);
        assert_eq!(holonomy_degree1(smooth, &g.values, &loop_arcs(smooth, z).unwrap()).unwrap(), *p);
        assert_eq!(holonomy_via_character(&f.fam.cs, 1, &f.cs, z).unwrap(), *p);
        assert_eq!(holonomy_smooth_representative(&f.fam.cs.subdivision, &f.form, z).unwrap(), *p);
    }
}

#[test]
fn labels_do_not_change_holonomy() {
    let f = flat_class(&torus7(), 1, &[rat(2, 5), rat(5, 7)]);
    let smooth = &f.fam.smooth;
    let x = f.fam.convert(ModelKind::CheegerSimons, ModelKind::SmoothHyperspark, 1, &f.cs).unwrap();
    let g = grundle_from_hyperspark(smooth, 1, &x).unwrap();
    let tot = smooth.cech.as_ref().unwrap();
    let z = &f.cycles[0];
    let base = LabeledCycle::auto(tot, z).unwrap();
    let h0 = grundle_holonomy(&g, &base).unwrap();
    for shift in 1..4usize {
        let labels: Vec<Vec<usize>> = (0..=1)
            .map(|q| {
                (0..smooth.fine().count(q))
                    .map(|s| {
                        let adm = admissible_labels(tot, q, s);
                        adm[(s + shift) % adm.len()]
                    })
                    .collect()
            })
            .collect();
        let lc = LabeledCycle::new(tot, z, labels).unwrap();
        assert_eq!(grundle_holonomy(&g, &lc).unwrap(), h0);
    }
}

#[test]
fn grundle_round_trip_and_gauge() {
    let f = flat_class(&torus7(), 1, &[rat(1, 3), rat(1, 4)]);
    let smooth = &f.fam.smooth;
    let tot = smooth.cech.as_ref().unwrap();
    let x = f.fam.convert(ModelKind::CheegerSimons, ModelKind::SmoothHyperspark, 1, &f.cs).unwrap();
    let g = grundle_from_hyperspark(smooth, 1, &x).unwrap();
    let (y, r) = hyperspark_from_grundle(smooth, &g, None).unwrap();
    assert!(r.iter().all(|v| v.is_integer()));
    assert!(smooth.presentation.equivalent(1, &x, &y).unwrap().is_some());

    // small gauge: B^{0,0} in (-1/8, 1/8), the rest arbitrary
    let mut b = tot.zero(0);
    for (i, v) in b.iter_mut().enumerate() {
        *v = rat((i % 5) as i64 - 2, 17);
    }
    let mut s = tot.zero(1);
    for i in tot.block_range(1, 0) {
        s[i] = rat((i % 3) as i64 - 1, 1);
    }
    let g2 = apply_gauge(smooth, &g, &b, &s).unwrap();
    let w = gauge_equivalent(smooth, &g2, &g).unwrap().expect("gauge equivalent");
    assert_eq!(w.h.len(), tot.dim(0));

    let other = flat_class(&torus7(), 1, &[rat(1, 5), rat(1, 4)]);
    let x3 = other.fam.convert(ModelKind::CheegerSimons, ModelKind::SmoothHyperspark, 1, &other.cs).unwrap();
    let g3 = grundle_from_hyperspark(&other.fam.smooth, 1, &x3).unwrap();
    assert!(gauge_equivalent(smooth, &g, &g3).unwrap().is_none());
}

#[test]
fn surface_holonomy_by_dual_cells() {
    for k in [tetrahedron_boundary(), torus7()] {
        let t = rat(2, 7);
        let f = flat_class(&k, 2, &[t.clone()]);
        let smooth = &f.fam.smooth;
        let x = f.fam.convert(ModelKind::CheegerSimons, ModelKind::SmoothHyperspark, 2, &f.cs).unwrap();
        let g = grundle_from_hyperspark(smooth, 2, &x).unwrap();
        let fund = fine_fundamental_cycle(smooth).unwrap();
        let lc = LabeledCycle::auto(smooth.cech.as_ref().unwrap(), &fund).unwrap();
        // the homology generator is the fundamental cycle up to sign
        let expected = if fund == f.cycles[0] { t.clone() } else { assert_eq!(fund, f.cycles[0].neg()); Rat::one() - &t };
        assert_eq!(holonomy_via_character(&f.fam.cs, 2, &f.cs, &fund).unwrap(), expected);
        assert_eq!(grundle_holonomy(&g, &lc).unwrap(), expected);
        assert_eq!(holonomy_degree2(smooth, &g.values).unwrap(), expected);
    }
}

#[test]
fn holonomy_descends_under_refinement() {
    let k = circle(3);
    let f = flat_class(&k, 1, &[rat(3, 8)]);
    let fine = build_cs_model(&k, 2).unwrap();
    let rep = descent_check(&f.fam.cs, &fine, 1, &f.cs, &f.cycles[0]).unwrap();
    assert!(rep.passes(), "{:?}", rep);
    assert_eq!(rep.coarse, rat(3, 8));
}

#[test]
fn curvature_determines_holonomy_on_the_sphere() {
    let k = tetrahedron_boundary();
    let fam = ModelFamily::build(&k, 1).unwrap();
    let cs = &fam.cs;
    let gens = cs.class_generators(1, &[]).unwrap();
    let x = gens.last().unwrap();
    let phi = WhitneyForm::new(2, cs.curvature(1, x).unwrap());
    let fine = cs.fine();
    // Γ: one fine triangle, Σ its boundary
    let gamma = Chain::simplex(2, 0);
    let sigma = spark_core::simplicial::boundary(fine, &gamma);
    let hol = holonomy_via_character(cs, 1, x, &sigma).unwrap();
    let h1 = curvature_driven_holonomy(&cs.subdivision, &phi, &sigma, &gamma, true).unwrap();
    let gamma2 = gamma.add(&fine_fundamental_cycle(cs).unwrap().neg());
    let h2 = curvature_driven_holonomy(&cs.subdivision, &phi, &sigma, &gamma2, true).unwrap();
    assert_eq!(hol, h1);
    assert_eq!(h1, h2);
    assert!(!h1.is_zero());
}

#[test]
fn smooth_representative_of_trivial_and_flat_classes() {
    let f = flat_class(&torus7(), 1, &[rat(1, 3), rat(1, 4)]);
    let cs = &f.fam.cs;
    let a = smooth_representative(cs, 1, &f.cs).unwrap().expect("flat class with real periods");
    for (z, p) in f.cycles.iter().zip([rat(1, 3), rat(1, 4)]) {
        assert_eq!(holonomy_smooth_representative(&cs.subdivision, &a, z).unwrap(), p);
    }
    // a divisor class with nonzero Chern class has none
    let s2 = ModelFamily::build(&tetrahedron_boundary(), 1).unwrap();
    let gens = s2.cs.class_generators(1, &[]).unwrap();
    assert!(smooth_representative(&s2.cs, 1, gens.last().unwrap()).unwrap().is_none());
}

#[test]
fn large_gauge_transforms_lift() {
    let f = flat_class(&torus7(), 1, &[rat(1, 3), rat(1, 4)]);
    let smooth = &f.fam.smooth;
    let tot = smooth.cech.as_ref().unwrap();
    let x = f.fam.convert(ModelKind::CheegerSimons, ModelKind::SmoothHyperspark, 1, &f.cs).unwrap();
    let g = grundle_from_hyperspark(smooth, 1, &x).unwrap();
    let b: Vec<Rat> = (0..tot.dim(0)).map(|i| rat((i * 7 % 11) as i64 - 5, 3)).collect();
    let g2 = apply_gauge(smooth, &g, &b, &tot.zero(1)).unwrap();
    let chk = g2.check(smooth).unwrap();
    assert!(chk.cocycle && chk.ladder);
    assert!(gauge_equivalent(smooth, &g, &g2).unwrap().is_some());
    // angles that disagree with the connection are rejected
    let mut bad = g2.clone();
    let i = tot.block_range(1, 0).start;
    bad.values[i] = frac(&(&bad.values[i] + rat(1, 5)));
    assert!(!bad.check(smooth).unwrap().ladder);
    assert!(hyperspark_from_grundle(smooth, &bad, None).is_err());
}
