//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spark_core::arith::{frac, int, rat, vec_add, vec_scale, vec_sub, Int, Rat};
use spark_core::cochain::{homology_basis, pullback_matrix, simplicial_cochains};
use spark_core::hodge::*;
use spark_core::holonomy::*;
use spark_core::linalg::solve;
use spark_core::models::*;
use spark_core::simplicial::fixtures::*;
use spark_core::simplicial::{boundary, Chain, SimplicialComplex};
use spark_core::spark::compute_grid;
use spark_core::whitney::{whitney_matrix, WhitneyForm};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{}: {:?}", what, e))
}

struct Fixture {
    name: &'static str,
    k: SimplicialComplex,
    fam: ModelFamily,
}

fn complexes() -> Vec<(&'static str, SimplicialComplex)> {
    vec![("circle", circle(3)), ("S2", tetrahedron_boundary()), ("T2", torus7()), ("RP2", rp2())]
}

// ---------------------------------------------------------------------------
// Independent homology oracle: Smith normal form of boundary matrices over
// i128, built from the vertex lists alone.

fn boundary_i128(k: &SimplicialComplex, q: usize) -> Vec<Vec<i128>> {
    let index: HashMap<Vec<usize>, usize> = (0..k.count(q - 1)).map(|i| (sorted(k.simplex(q - 1, i)), i)).collect();
    let mut m = vec![vec![0i128; k.count(q)]; k.count(q - 1)];
    for j in 0..k.count(q) {
        let s = sorted(k.simplex(q, j));
        for i in 0..s.len() {
            let mut face = s.clone();
            face.remove(i);
            m[index[&face]][j] += if i % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

fn sorted(s: &[usize]) -> Vec<usize> {
    let mut v = s.to_vec();
    v.sort_unstable();
    v
}

/// Nonzero invariant factors.
fn smith(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j))).filter(|&(i, j)| m[i][j] != 0).min_by_key(|&(i, j)| m[i][j].abs()) else { break };
        m.swap(t, pi);
        for r in m.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let f = m[i][t] / p;
                for j in t..cols {
                    m[i][j] -= f * m[t][j];
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let f = m[t][j] / p;
                for i in t..rows {
                    m[i][j] -= f * m[i][t];
                }
                clean &= m[t][j] == 0;
            }
            if clean {
                // divisibility: fold any entry not divisible by the pivot into row t
                if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0)) {
                    for j in t..cols {
                        m[t][j] += m[i][j];
                    }
                    continue;
                }
                break;
            }
            let (bi, bj) = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j))).filter(|&(i, j)| (i == t || j == t) && m[i][j] != 0).min_by_key(|&(i, j)| m[i][j].abs()).unwrap();
            m.swap(t, bi);
            for r in m.iter_mut() {
                r.swap(t, bj);
            }
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}

/// `(b_q, torsion of H_q)` from the SNF oracle.
fn homology_oracle(k: &SimplicialComplex, q: usize) -> (usize, Vec<i128>) {
    let n = k.count(q);
    let rank_out = if q == 0 { 0 } else { smith(boundary_i128(k, q)).len() };
    let into = if q + 1 <= k.dim() { smith(boundary_i128(k, q + 1)) } else { Vec::new() };
    (n - rank_out - into.len(), into.into_iter().filter(|&d| d > 1).collect())
}

// ---------------------------------------------------------------------------

fn criterion_1(fx: &[Fixture]) -> Outcome {
    let mut certified = 0;
    for f in fx {
        for m in [&f.fam.cs, &f.fam.smooth, &f.fam.cochain] {
            ensure!(m.axioms.passes(), "{} {} depth 1: {:?}", f.name, m.name(), m.axioms);
            let deep = ok(build_model(m.kind, &f.k, 2), "depth 2 build")?;
            ensure!(deep.axioms.axiom_b.iter().all(|&b| b) && deep.axioms.passes(), "{} {} depth 2: {:?}", f.name, m.name(), deep.axioms);
            certified += 1;
        }
        let err = build_cs_model(&f.k, 0);
        ensure!(err.is_err(), "{}: depth-0 CS model was accepted", f.name);
        let (q, w) = ok(literal_axiom_b_witness(&f.k, 0), "witness")?.ok_or(format!("{}: no depth-0 witness", f.name))?;
        ensure!(q >= 1 && w.iter().all(|x| x.is_integer()) && w.iter().any(|x| !x.is_zero()), "{}: bad witness", f.name);
    }
    Ok(format!("{} models certified at depths 1 and 2; depth 0 rejected with integer witnesses", certified))
}

fn criterion_2(fx: &[Fixture]) -> Outcome {
    let mut grids = 0;
    for f in fx {
        let degrees: Vec<usize> = if matches!(f.name, "T2" | "S2") { vec![1, 2] } else { vec![1] };
        for &k in &degrees {
            let (b_k, tors_hk) = homology_oracle(&f.k, k);
            let (b_k1, _) = homology_oracle(&f.k, k + 1);
            // torsion of H^{k+1}(Z) is the torsion of H_k
            let expect_torsion: Vec<Int> = tors_hk.iter().map(|&d| int(d as i64)).collect();
            for m in [&f.fam.cs, &f.fam.smooth, &f.fam.cochain] {
                let g = ok(compute_grid(&m.presentation, k), "grid")?;
                ensure!(g.exact(), "{} {} k={}: {:?}", f.name, m.name(), k, g.checks.iter().filter(|c| !c.holds).map(|c| &c.name).collect::<Vec<_>>());
                let ml = &g.node("H(F/I)").ok_or("no middle-left node")?.invariants;
                ensure!(ml.torus_dim == b_k && ml.torsion == expect_torsion, "{} {} k={}: middle-left {} vs b_k={} torsion {:?}", f.name, m.name(), k, ml, b_k, expect_torsion);
                let bm = &g.node("H(I)").ok_or("no bottom-middle node")?.invariants;
                ensure!(bm.free_rank == b_k1 && bm.torsion == expect_torsion, "{} {} k={}: bottom-middle {}", f.name, m.name(), k, bm);
                grids += 1;
            }
        }
    }
    Ok(format!("{} grids exact; invariants match the SNF oracle", grids))
}

const KINDS: [ModelKind; 3] = [ModelKind::CheegerSimons, ModelKind::SmoothHyperspark, ModelKind::CochainHyperspark];

/// Holonomy on `z` computed inside the model itself.
fn intrinsic_holonomy(fam: &ModelFamily, kind: ModelKind, k: usize, x: &[Rat], z: &Chain) -> Result<Rat, String> {
    let m = fam.model(kind);
    match kind {
        ModelKind::CheegerSimons => ok(holonomy_via_character(m, k, x, z), "via character"),
        ModelKind::SmoothHyperspark => {
            let g = ok(grundle_from_hyperspark(m, k, x), "grundle")?;
            let lc = ok(LabeledCycle::auto(m.cech.as_ref().unwrap(), z), "labels")?;
            ok(grundle_holonomy(&g, &lc), "grundle holonomy")
        }
        ModelKind::CochainHyperspark => {
            let (_, h) = ok(m.normal_form(k, x), "normal form")?;
            let lc = ok(LabeledCycle::auto(m.cech.as_ref().unwrap(), z), "labels")?;
            ok(holonomy_general(&h, &lc), "general")
        }
    }
}

fn criterion_3(fx: &[Fixture]) -> Outcome {
    let mut checked = 0;
    for f in fx {
        let fam = &f.fam;
        let (free, tors) = homology_basis(&f.k, 1);
        let cycles: Vec<Chain> = free.iter().chain(tors.iter().map(|(z, _)| z)).map(|z| fam.cs.subdivision.subdivide_chain(z)).collect();
        let amb = &fam.cochain.presentation;
        for from in KINDS {
            let gens = ok(fam.model(from).class_generators(1, &[rat(1, 3)]), "generators")?;
            for x in &gens {
                let ax = ok(fam.convert(from, ModelKind::CochainHyperspark, 1, x), "include")?;
                let d2 = ok(amb.delta2(1, &ax), "delta2")?;
                let hol: Vec<Rat> = cycles.iter().map(|z| intrinsic_holonomy(fam, from, 1, x, z)).collect::<Result<_, _>>()?;
                for to in KINDS.into_iter().filter(|&t| t != from) {
                    let y = ok(fam.convert(from, to, 1, x), "convert")?;
                    ensure!(fam.model(from).curvature(1, x).unwrap() == fam.model(to).curvature(1, &y).unwrap(), "{} {:?}->{:?}: δ1 changed", f.name, from, to);
                    let ay = ok(fam.convert(to, ModelKind::CochainHyperspark, 1, &y), "include")?;
                    ensure!(ok(amb.delta2(1, &ay), "delta2")? == d2, "{} {:?}->{:?}: δ2 changed", f.name, from, to);
                    let hy: Vec<Rat> = cycles.iter().map(|z| intrinsic_holonomy(fam, to, 1, &y, z)).collect::<Result<_, _>>()?;
                    ensure!(hy == hol, "{} {:?}->{:?}: holonomy {:?} vs {:?}", f.name, from, to, hy, hol);
                    let back = ok(fam.convert(to, from, 1, &y), "convert back")?;
                    ensure!(ok(fam.model(from).presentation.equivalent(1, x, &back), "equivalent")?.is_some(), "{} {:?}->{:?}->{:?} is not the identity", f.name, from, to, from);
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{} round trips preserve δ1, δ2 and holonomy and return to the start", checked))
}

/// A class with a grundle, a CS spark and the cycles to evaluate it on.
struct Example {
    name: String,
    fixture: usize,
    k: usize,
    cs: Vec<Rat>,
    grundle: Grundle,
    cycles: Vec<(Chain, Option<Rat>)>,
}

fn flat_cs(f: &Fixture, q: usize, coords: &[Rat]) -> Result<(Vec<Rat>, Vec<Chain>), String> {
    let fg = ok(flat_group(&f.k, q), "flat group")?;
    let e = ok(fg.torus_element(coords), "torus element")?;
    let h = whitney_matrix(&f.fam.cs.subdivision, q).mul_vec(&e.cochain);
    let x = ok(f.fam.cs.flat_spark(q, &h), "flat spark")?.a;
    Ok((x, fg.free_cycles.iter().map(|z| f.fam.cs.subdivision.subdivide_chain(z)).collect()))
}

fn example(fx: &[Fixture], i: usize, name: &str, k: usize, cs: Vec<Rat>, cycles: Vec<(Chain, Option<Rat>)>) -> Result<Example, String> {
    let fam = &fx[i].fam;
    let y = ok(fam.convert(ModelKind::CheegerSimons, ModelKind::SmoothHyperspark, k, &cs), "to smooth")?;
    let grundle = ok(grundle_from_hyperspark(&fam.smooth, k, &y), "grundle")?;
    Ok(Example { name: name.to_string(), fixture: i, k, cs, grundle, cycles })
}

fn examples(fx: &[Fixture]) -> Result<Vec<Example>, String> {
    let find = |n: &str| fx.iter().position(|f| f.name == n).unwrap();
    let (circle, s2, t2, rp) = (find("circle"), find("S2"), find("T2"), find("RP2"));
    let mut out = Vec::new();
    for coords in [[rat(1, 3), rat(1, 4)], [rat(2, 5), rat(5, 7)]] {
        let (x, cycles) = flat_cs(&fx[t2], 1, &coords)?;
        let cycles = cycles.into_iter().zip(coords.iter()).map(|(z, c)| (z, Some(c.clone()))).collect();
        out.push(example(fx, t2, &format!("flat T2 {}, {}", coords[0], coords[1]), 1, x, cycles)?);
    }
    let (free, _) = homology_basis(&fx[t2].k, 1);
    let t2_cycles: Vec<(Chain, Option<Rat>)> = free.iter().map(|z| (fx[t2].fam.cs.subdivision.subdivide_chain(z), None)).collect();
    let gens = ok(fx[t2].fam.cs.class_generators(1, &[]), "generators")?;
    out.push(example(fx, t2, "T2 Whitney 1-form", 1, gens[0].clone(), t2_cycles.clone())?);
    out.push(example(fx, t2, "T2 unit divisor", 1, gens.last().unwrap().clone(), t2_cycles)?);

    let (x, _) = flat_cs(&fx[circle], 0, &[rat(1, 3)])?;
    let points = (0..3).map(|v| (Chain::simplex(0, v), Some(rat(1, 3)))).collect();
    out.push(example(fx, circle, "circle constant 1/3", 0, x, points)?);
    let gens = ok(fx[circle].fam.cs.class_generators(0, &[]), "generators")?;
    let points = (0..fx[circle].fam.cs.fine().count(0)).map(|v| (Chain::simplex(0, v), None)).collect();
    out.push(example(fx, circle, "circle winding function", 0, gens[0].clone(), points)?);

    let gens = ok(fx[s2].fam.cs.class_generators(1, &[]), "generators")?;
    let tri = boundary(fx[s2].fam.cs.fine(), &Chain::simplex(2, 0));
    out.push(example(fx, s2, "S2 unit divisor", 1, gens.last().unwrap().clone(), vec![(tri, None)])?);

    for i in [s2, t2] {
        let t = rat(2, 7);
        let (x, cycles) = flat_cs(&fx[i], 2, &[t.clone()])?;
        let fund = ok(fine_fundamental_cycle(&fx[i].fam.cs), "fundamental cycle")?;
        let expected = if fund == cycles[0] { t } else { frac(&-t) };
        out.push(example(fx, i, &format!("flat {} degree 2", fx[i].name), 2, x, vec![(fund, Some(expected))])?);
    }

    let f = &fx[rp];
    let fg = ok(flat_group(&f.k, 1), "flat group")?;
    let vmap: Vec<usize> = (0..f.fam.cs.fine().count(0)).map(|v| f.fam.cs.subdivision.approximation_vertex(v)).collect();
    let h = pullback_matrix(f.fam.cs.fine(), &f.k, &vmap, 1).mul_vec(&fg.torsion_generators[0].cochain);
    let x = ok(f.fam.cs.flat_spark(1, &h), "flat spark")?.a;
    let z = f.fam.cs.subdivision.subdivide_chain(&fg.torsion_cycles[0].0);
    out.push(example(fx, rp, "RP2 torsion class", 1, x, vec![(z, Some(rat(1, 2)))])?);
    Ok(out)
}

fn criterion_4(fx: &[Fixture], ex: &[Example]) -> Outcome {
    let mut evaluations = 0;
    for e in ex {
        let fam = &fx[e.fixture].fam;
        let smooth = &fam.smooth;
        let tot = smooth.cech.as_ref().unwrap();
        let rep = ok(smooth_representative(&fam.cs, e.k, &e.cs), "smooth representative")?;
        for (z, expected) in &e.cycles {
            let lc = ok(LabeledCycle::auto(tot, z), "labels")?;
            let general = ok(grundle_holonomy(&e.grundle, &lc), "general")?;
            let mut routes = vec![("via character", ok(holonomy_via_character(&fam.cs, e.k, &e.cs, z), "via character")?)];
            if e.k == 1 {
                routes.push(("degree 1", ok(holonomy_degree1(smooth, &e.grundle.values, &ok(loop_arcs(smooth, z), "arcs")?), "degree 1")?));
            }
            if e.k == 2 {
                routes.push(("degree 2", ok(holonomy_degree2(smooth, &e.grundle.values), "degree 2")?));
            }
            if let Some(a) = &rep {
                routes.push(("smooth representative", ok(holonomy_smooth_representative(&fam.cs.subdivision, a, z), "smooth")?));
            }
            for (route, v) in &routes {
                ensure!(*v == general, "{}: {} gives {} but the general formula gives {}", e.name, route, v, general);
            }
            if let Some(x) = expected {
                ensure!(general == *x, "{}: holonomy {} expected {}", e.name, general, x);
            }
            evaluations += 1 + routes.len();
        }
    }
    Ok(format!("{} examples, {} route evaluations agree exactly", ex.len(), evaluations))
}

fn random_chain(rng: &mut ChaCha8Rng, k: &SimplicialComplex, q: usize) -> Chain {
    let n = k.count(q);
    let terms: Vec<(usize, Int)> = (0..rng.gen_range(1..5)).map(|_| (rng.gen_range(0..n), int(rng.gen_range(-2..=2)))).collect();
    let mut c = Chain::zero(q);
    for (i, x) in terms {
        c.add_term(i, &x);
    }
    c
}

fn criterion_5(fx: &[Fixture], ex: &[Example], rng: &mut ChaCha8Rng) -> Outcome {
    let mut trials = 0;
    for e in ex {
        let fam = &fx[e.fixture].fam;
        let tot = fam.smooth.cech.as_ref().unwrap();
        let phi = WhitneyForm::new(e.k + 1, ok(fam.cs.curvature(e.k, &e.cs), "curvature")?);
        let fine = fam.cs.fine();
        if e.k + 1 > fine.dim() {
            continue;
        }
        for _ in 0..200 {
            let c = random_chain(rng, fine, e.k + 1);
            let dc = boundary(fine, &c);
            let hol = if dc.is_zero() { Rat::zero() } else { ok(grundle_holonomy(&e.grundle, &ok(LabeledCycle::auto(tot, &dc), "labels")?), "holonomy")? };
            let flux = ok(whitney_pairing(&fam.cs.subdivision, &phi, &c), "pairing")?;
            ensure!((&hol - &flux).is_integer(), "{}: holonomy(∂c) = {} but ⟨φ, c⟩ = {}", e.name, hol, flux);
            trials += 1;
        }
    }
    Ok(format!("{} random chains satisfy holonomy(∂c) ≡ ⟨φ, c⟩ mod 1", trials))
}

fn criterion_6(fx: &[Fixture], ex: &[Example], rng: &mut ChaCha8Rng) -> Outcome {
    let mut trials = 0;
    let positive: Vec<&Example> = ex.iter().filter(|e| e.k >= 1).collect();
    for t in 0..100 {
        let e = positive[t % positive.len()];
        let fam = &fx[e.fixture].fam;
        let smooth = &fam.smooth;
        let tot = smooth.cech.as_ref().unwrap();
        let (z, _) = &e.cycles[t % e.cycles.len()];
        let base = ok(grundle_holonomy(&e.grundle, &ok(LabeledCycle::auto(tot, z), "labels")?), "holonomy")?;

        let b: Vec<Rat> = (0..tot.dim(e.k - 1)).map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(17..40))).collect();
        let mut s = tot.zero(e.k);
        for i in tot.block_range(e.k, 0) {
            s[i] = rat(rng.gen_range(-2..=2), 1);
        }
        let g2 = ok(apply_gauge(smooth, &e.grundle, &b, &s), "gauge")?;
        let labels: Vec<Vec<usize>> = (0..=e.k)
            .map(|q| (0..smooth.fine().count(q)).map(|i| {
                let adm = admissible_labels(tot, q, i);
                adm[rng.gen_range(0..adm.len())]
            }).collect())
            .collect();
        let lc = ok(LabeledCycle::new(tot, z, labels), "relabel")?;
        let moved = ok(grundle_holonomy(&g2, &lc), "holonomy")?;
        ensure!(moved == base, "{}: gauge + relabel moved holonomy {} -> {}", e.name, base, moved);
        ensure!(ok(gauge_equivalent(smooth, &e.grundle, &g2), "gauge equivalence")?.is_some(), "{}: gauge transform not recognized", e.name);

        let shifts: Vec<Int> = (0..smooth.base.count(e.k)).map(|_| int(rng.gen_range(-3..=3))).collect();
        let (x0, _) = ok(hyperspark_from_grundle(smooth, &e.grundle, None), "lift")?;
        let (x1, r1) = ok(hyperspark_from_grundle(smooth, &e.grundle, Some(&shifts)), "shifted lift")?;
        ensure!(r1.iter().all(|v| v.is_integer()), "{}: branch change gave a non-integral R", e.name);
        ensure!(ok(smooth.presentation.equivalent(e.k, &x0, &x1), "equivalent")?.is_some(), "{}: branches not equivalent", e.name);
        let g1 = ok(grundle_from_hyperspark(smooth, e.k, &x1), "grundle")?;
        let h1 = ok(grundle_holonomy(&g1, &ok(LabeledCycle::auto(tot, z), "labels")?), "holonomy")?;
        ensure!(h1 == base, "{}: branch change moved holonomy {} -> {}", e.name, base, h1);
        trials += 1;
    }

    let mut descents = 0;
    for name in ["circle", "T2"] {
        let f = fx.iter().find(|f| f.name == name).unwrap();
        let fine = ok(build_cs_model(&f.k, 2), "depth 2")?;
        let (free, _) = homology_basis(&f.k, 1);
        let mut classes = ok(f.fam.cs.class_generators(1, &[rat(3, 8)]), "generators")?;
        classes.truncate(6);
        for x in &classes {
            for z in &free {
                let z = f.fam.cs.subdivision.subdivide_chain(z);
                let rep = ok(descent_check(&f.fam.cs, &fine, 1, x, &z), "descent")?;
                ensure!(rep.passes(), "{}: descent {:?}", name, rep);
                descents += 1;
            }
        }
    }
    Ok(format!("{} randomized gauge/label/branch trials invariant; {} descent checks pass", trials, descents))
}

fn closed_integer(rng: &mut ChaCha8Rng, k: &SimplicialComplex, q: usize) -> Vec<Rat> {
    let c = simplicial_cochains(k);
    let s: Vec<Rat> = (0..k.count(q - 1)).map(|_| rat(rng.gen_range(-3..=3), 1)).collect();
    let mut r = c.apply(q - 1, &s);
    let g = c.integer_cohomology(q);
    for rep in g.free_reps.iter().chain(g.torsion_reps.iter().map(|t| &t.cocycle)) {
        r = vec_add(&r, &vec_scale(rep, &rat(rng.gen_range(-3..=3), 1)));
    }
    r
}

fn criterion_7(rng: &mut ChaCha8Rng) -> Outcome {
    let mut sparks = 0;
    let mut aj = 0;
    for (name, k) in [("circle", circle(4)), ("T2", torus7()), ("S2", tetrahedron_boundary())] {
        let hodge = ok(Hodge::identity(&k), "hodge")?;
        let c = simplicial_cochains(&k);
        for t in 0..50 {
            let q = 1 + t % k.dim();
            let r = closed_integer(rng, &k, q);
            let s = ok(hodge_spark(&hodge, q - 1, &r), "hodge spark")?;
            ensure!(verify_spark_equation(&c, &s, &r), "{}: dσ ≠ H(R) - R in degree {}", name, q);
            sparks += 1;
        }
        let fg = ok(flat_group(&k, 1), "flat group")?;
        for t in 0..50 {
            let b: Vec<Rat> = (0..k.count(0)).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..12))).collect();
            let mut gamma = vec_add(&closed_integer(rng, &k, 1), &c.apply(0, &b));
            let principal = t % 2 == 0 || fg.torus_generators.is_empty();
            if !principal {
                for g in &fg.torus_generators {
                    gamma = vec_add(&gamma, &vec_scale(&g.cochain, &rat(rng.gen_range(0..6), 3)));
                }
            }
            let r = c.apply(1, &gamma);
            let j = ok(abel_jacobi(&hodge, 1, &gamma), "abel-jacobi")?;
            if principal {
                ensure!(j.is_zero(), "{}: Abel-Jacobi of a shifted principal boundary is {:?}", name, j.periods);
            }
            ensure!(ok(linear_equivalence_zero(&hodge, 1, &r, &gamma), "linear equivalence")? == j.is_zero(), "{}: linear equivalence disagrees with Abel-Jacobi", name);
            aj += 1;
        }
    }
    Ok(format!("{} Hodge sparks exact; {} Abel-Jacobi cases agree with linear equivalence", sparks, aj))
}

fn criterion_8(fx: &[Fixture], rng: &mut ChaCha8Rng) -> Outcome {
    let t2 = fx.iter().find(|f| f.name == "T2").unwrap();
    let fg = ok(flat_group(&t2.k, 1), "flat group")?;
    ensure!(fg.invariants.torus_dim == 2 && fg.invariants.free_rank == 0 && fg.invariants.torsion.is_empty(), "flat group of T2 is {}", fg.invariants);
    let tot = t2.fam.smooth.cech.as_ref().unwrap();
    for _ in 0..10 {
        let coords: Vec<Rat> = (0..2).map(|_| {
            let d = rng.gen_range(2..13);
            rat(rng.gen_range(0..d), d)
        }).collect();
        let (x, cycles) = flat_cs(t2, 1, &coords)?;
        let y = ok(t2.fam.convert(ModelKind::CheegerSimons, ModelKind::SmoothHyperspark, 1, &x), "to smooth")?;
        let g = ok(grundle_from_hyperspark(&t2.fam.smooth, 1, &y), "grundle")?;
        for (z, c) in cycles.iter().zip(&coords) {
            let h = ok(grundle_holonomy(&g, &ok(LabeledCycle::auto(tot, z), "labels")?), "holonomy")?;
            ensure!(h == *c, "flat coordinate {} read back as {}", c, h);
        }
    }

    let rp = fx.iter().find(|f| f.name == "RP2").unwrap();
    let cs = &rp.fam.cs;
    let fg = ok(flat_group(&rp.k, 1), "flat group")?;
    let vmap: Vec<usize> = (0..cs.fine().count(0)).map(|v| cs.subdivision.approximation_vertex(v)).collect();
    let h = pullback_matrix(cs.fine(), &rp.k, &vmap, 1).mul_vec(&fg.torsion_generators[0].cochain);
    let x = ok(cs.flat_spark(1, &h), "flat spark")?.a;
    let t = ok(torsion_analysis(cs, 1, &x, &int(2)), "torsion analysis")?;
    ensure!(t.holds && t.bockstein == t.divisor && t.divisor.iter().any(|c| !c.is_zero()), "RP2: β(u) = {:?}, δ2 = {:?}", t.bockstein, t.divisor);

    let mut dual = 0;
    for (name, k) in [("S2", tetrahedron_boundary()), ("T2", torus7()), ("RP3", rp3())] {
        for q in 0..=k.dim() {
            let v = ok(poincare_duality_check(&k, q), "duality")?;
            ensure!(v.holds, "{} degree {}: {:?}", name, q, v);
            dual += 1;
        }
    }
    Ok(format!("T2 flat group (R/Z)^2 with matching holonomy; RP2 β(u) = δ2(c) ≠ 0; {} duality checks", dual))
}

fn criterion_9(rng: &mut ChaCha8Rng) -> Outcome {
    let k = tetrahedron_boundary();
    let fam = ok(ModelFamily::build(&k, 1), "family")?;
    let cs = &fam.cs;
    let sub = &cs.subdivision;
    ensure!(ok(flat_group(&k, 1), "flat group")?.invariants.torus_dim == 0, "H^1(S2, S^1) is not trivial");
    let fund = ok(fine_fundamental_cycle(cs), "fundamental cycle")?;
    let periods: Vec<Rat> = (0..k.count(2))
        .map(|i| {
            let mut e = vec![Rat::zero(); k.count(2)];
            e[i] = Rat::one();
            whitney_pairing(sub, &WhitneyForm::new(2, e), &fund).unwrap()
        })
        .collect();
    let x0 = ok(cs.class_generators(1, &[]), "generators")?.pop().unwrap();
    let phi0 = ok(cs.curvature(1, &x0), "curvature")?;
    let p0 = ok(whitney_pairing(sub, &WhitneyForm::new(2, phi0.clone()), &fund), "period")?;
    ensure!(p0.abs() == Rat::one(), "unit divisor has period {}", p0);
    let d1 = cs.whitney().differential(1);
    let fine = cs.fine();
    let fund_terms: Vec<(usize, Int)> = fund.terms().map(|(i, c)| (i, c.clone())).collect();
    for _ in 0..50 {
        let n = rng.gen_range(-4..=4);
        let last = k.count(2) - 1;
        let mut phi: Vec<Rat> = (0..last).map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..9))).collect();
        let partial: Rat = phi.iter().zip(&periods).map(|(a, b)| a * b).sum();
        phi.push((rat(n, 1) - partial) / &periods[last]);
        let form = WhitneyForm::new(2, phi.clone());
        // a random region and its boundary
        let gamma = loop {
            let mut g = Chain::zero(2);
            for (i, c) in &fund_terms {
                if rng.gen_bool(0.4) {
                    g.add_term(*i, c);
                }
            }
            if !boundary(fine, &g).is_zero() {
                break g;
            }
        };
        let sigma = boundary(fine, &gamma);
        let other = gamma.add(&fund.neg());
        let h1 = ok(curvature_driven_holonomy(sub, &form, &sigma, &gamma, true), "cap 1")?;
        let h2 = ok(curvature_driven_holonomy(sub, &form, &sigma, &other, true), "cap 2")?;
        ensure!(h1 == h2, "caps disagree: {} vs {}", h1, h2);
        let raw = ok(whitney_pairing(sub, &form, &gamma), "pairing")? - ok(whitney_pairing(sub, &form, &other), "pairing")?;
        ensure!(raw == rat(n, 1), "caps differ by {} instead of the period {}", raw, n);
        // a character with this curvature has the same holonomy
        let m = rat(n, 1) / &p0;
        let rest = vec_sub(&phi, &vec_scale(&phi0, &m));
        let e = solve(&d1, &rest).ok_or("exact part is not exact")?;
        let x = vec_add(&vec_scale(&x0, &m), &ok(cs.spark_from_form(1, &e), "form spark")?.a);
        ensure!(ok(cs.curvature(1, &x), "curvature")? == phi, "character has the wrong curvature");
        let hx = ok(holonomy_via_character(cs, 1, &x, &sigma), "via character")?;
        ensure!(hx == h1, "character holonomy {} vs curvature-driven {}", hx, h1);
    }
    Ok("50 forms: both caps agree mod 1, differ by the period, and match a character with that curvature".into())
}

fn main() {
    let start = Instant::now();
    let fixtures: Result<Vec<Fixture>, String> = complexes()
        .into_iter()
        .map(|(name, k)| ModelFamily::build(&k, 1).map(|fam| Fixture { name, k, fam }).map_err(|e| format!("{}: {}", name, e)))
        .collect();
    let fixtures = match fixtures {
        Ok(f) => f,
        Err(e) => {
            for n in 1..=9 {
                println!("FAIL criterion {}: model families did not build: {}", n, e);
            }
            std::process::exit(1);
        }
    };
    let ex = examples(&fixtures);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let names = [
        "axiom certification",
        "grid exactness",
        "compatibility",
        "holonomy coherence",
        "defining congruence",
        "gauge/label/branch invariance",
        "Hodge sparks",
        "flat/torsion/duality",
        "curvature-driven holonomy",
    ];
    let mut failed = 0;
    for (i, name) in names.iter().enumerate() {
        let t = Instant::now();
        let run = || -> Outcome {
            let ex = || ex.as_deref().map_err(|e| format!("examples: {}", e));
            match i {
                0 => criterion_1(&fixtures),
                1 => criterion_2(&fixtures),
                2 => criterion_3(&fixtures),
                3 => criterion_4(&fixtures, ex()?),
                4 => criterion_5(&fixtures, ex()?, &mut rng),
                5 => criterion_6(&fixtures, ex()?, &mut rng),
                6 => criterion_7(&mut rng),
                7 => criterion_8(&fixtures, &mut rng),
                _ => criterion_9(&mut rng),
            }
        };
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({}): {} [{:.1}s]", i + 1, name, detail, t.elapsed().as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({}): {} [{:.1}s]", i + 1, name, why, t.elapsed().as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria pass in {:.1}s", names.len() - failed, names.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
