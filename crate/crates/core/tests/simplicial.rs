use spark_core::linalg::AbelianGroupInvariants;
use spark_core::simplicial::fixtures::*;
use spark_core::simplicial::*;
use spark_core::Int;

fn free(r: usize) -> AbelianGroupInvariants {
    AbelianGroupInvariants { free_rank: r, torsion: vec![] }
}

fn z2() -> AbelianGroupInvariants {
    AbelianGroupInvariants { free_rank: 0, torsion: vec![Int::from(2)] }
}

#[test]
fn fixture_counts() {
    assert_eq!(circle(3).counts(), vec![3, 3]);
    assert_eq!(tetrahedron_boundary().counts(), vec![4, 6, 4]);
    assert_eq!(octahedron().counts(), vec![6, 12, 8]);
    assert_eq!(torus7().counts(), vec![7, 21, 14]);
    assert_eq!(rp2().counts(), vec![6, 15, 10]);
    assert!(tetrahedron_boundary().is_oriented());
}

#[test]
fn rp2_cannot_be_oriented() {
    let k = rp2();
    assert!(k.is_closed_pseudomanifold());
    assert!(!k.is_orientable());
    let facets = k.facets().to_vec();
    assert!(build_complex(&facets, true).is_err());
}

#[test]
fn duplicate_facet_rejected() {
    assert!(SimplicialComplex::new(&[vec![0, 1], vec![1, 0]]).is_err());
}

#[test]
fn homology_of_fixtures() {
    assert_eq!(integral_homology(&circle(3)), vec![free(1), free(1)]);
    assert_eq!(integral_homology(&tetrahedron_boundary()), vec![free(1), free(0), free(1)]);
    assert_eq!(integral_homology(&torus7()), vec![free(1), free(2), free(1)]);
    assert_eq!(integral_homology(&rp2()), vec![free(1), z2(), free(0)]);
}

#[test]
fn rp3_is_projective_space() {
    let k = rp3();
    assert_eq!(k.counts()[0], 40);
    assert_eq!(k.counts()[3], 192);
    assert!(k.is_oriented());
    assert_eq!(integral_homology(&k), vec![free(1), z2(), free(0), free(1)]);
}

#[test]
fn boundary_squares_to_zero() {
    for k in [tetrahedron_boundary(), torus7(), rp2(), SimplicialComplex::new(&[vec![0, 1, 2, 3]]).unwrap()] {
        for d in 2..=k.dim() {
            for i in 0..k.count(d) {
                let c = Chain::simplex(d, i);
                assert!(boundary(&k, &boundary(&k, &c)).is_zero());
            }
        }
    }
}

#[test]
fn triangle_boundary_formula() {
    let k = SimplicialComplex::new(&[vec![0, 1, 2]]).unwrap();
    let t = Chain::simplex(2, 0);
    let expected = oriented_simplex(&k, &[1, 2])
        .unwrap()
        .add(&oriented_simplex(&k, &[0, 2]).unwrap().neg())
        .add(&oriented_simplex(&k, &[0, 1]).unwrap());
    assert_eq!(boundary(&k, &t), expected);
}

#[test]
fn fundamental_cycles_close() {
    for k in [circle(5), tetrahedron_boundary(), octahedron(), torus7()] {
        let f = k.fundamental_chain().unwrap();
        assert!(boundary(&k, &f).is_zero());
    }
}

#[test]
fn subdivision_is_chain_map_and_homology_iso() {
    for k in [circle(3), tetrahedron_boundary(), rp2()] {
        let (sd, map) = barycentric_subdivide(&k);
        for d in 1..=k.dim() {
            for i in 0..k.count(d) {
                let c = Chain::simplex(d, i);
                assert_eq!(boundary(&sd, &map.apply(&c)), map.apply(&boundary(&k, &c)));
                let fact: usize = (1..=d + 1).product();
                assert_eq!(map.apply(&c).len(), fact);
                assert!(map.apply(&c).terms().all(|(_, x)| x == &Int::from(1) || x == &Int::from(-1)));
            }
        }
        assert_eq!(integral_homology(&sd), integral_homology(&k));
    }
    let edge = SimplicialComplex::new(&[vec![0, 1]]).unwrap();
    let (sd, _) = barycentric_subdivide(&edge);
    assert_eq!(sd.counts(), vec![3, 2]);
    let tri = SimplicialComplex::new(&[vec![0, 1, 2]]).unwrap();
    let (sd, _) = barycentric_subdivide(&tri);
    assert_eq!(sd.count(2), 6);
}

#[test]
fn subdivision_keeps_orientation() {
    let k = torus7();
    let s = Subdivision::new(&k, 2);
    let fund = s.subdivide_chain(&k.fundamental_chain().unwrap());
    assert_eq!(fund, s.complex.fundamental_chain().unwrap());
}

#[test]
fn star_cover_nerve_is_the_complex() {
    for (k, depth) in [(circle(3), 1), (tetrahedron_boundary(), 1), (rp2(), 1), (circle(3), 2)] {
        let cover = star_cover(&k, depth).unwrap();
        for p in 0..=k.dim() {
            for s in 0..k.count(p) {
                assert!(!cover.members(p, s, 0).is_empty());
                let sub = cover.intersection_complex(p, s).unwrap();
                let h = integral_homology(&sub);
                assert_eq!(h[0], free(1));
                assert!(h[1..].iter().all(|g| g.is_trivial()), "intersection not acyclic");
            }
        }
        // every fine simplex lies in some vertex element
        let fine = cover.fine();
        for q in 0..=fine.dim() {
            for i in 0..fine.count(q) {
                assert!((0..k.vertex_count()).any(|v| cover.contains(0, v, q, i)));
            }
        }
    }
    assert!(star_cover(&circle(3), 0).is_err());
}

#[test]
fn rp2_intersection_table() {
    let k = rp2();
    let cover = star_cover(&k, 1).unwrap();
    let pairs = (0..k.count(1)).filter(|&s| !cover.members(1, s, 0).is_empty()).count();
    let triples = (0..k.count(2)).filter(|&s| !cover.members(2, s, 0).is_empty()).count();
    assert_eq!((pairs, triples), (15, 10));
}

#[test]
fn dual_cells_of_circle() {
    let k = circle(3);
    let d = dual_cells(&k).unwrap();
    for a in 0..3 {
        assert_eq!(d.cell(0, a).len(), 2);
    }
    for e in 0..3 {
        assert_eq!(d.cell(1, e).degree, 0);
        assert_eq!(d.cell(1, e).len(), 1);
    }
}

#[test]
fn dual_cells_of_surfaces() {
    let oct = octahedron();
    let d = dual_cells(&oct).unwrap();
    for a in 0..6 {
        let bd = boundary(&d.subdivision.complex, d.cell(0, a));
        // four walls, each made of two half-edges of the subdivision
        assert_eq!(bd.len(), 8);
    }
    let t = torus7();
    let d = dual_cells(&t).unwrap();
    for f in 0..t.count(2) {
        assert_eq!(d.incident_top_cells(2, f).len(), 3);
        let edges = (0..t.count(1)).filter(|&e| {
            let verts = d.cell_vertices(1, e);
            let own = d.cell_vertices(2, f)[0];
            verts.contains(&own)
        });
        assert_eq!(edges.count(), 3);
    }
    for e in 0..t.count(1) {
        assert_eq!(d.incident_top_cells(1, e).len(), 2);
    }
    assert!(dual_cells(&rp2()).is_err());
}

#[test]
fn dual_cells_tile_the_manifold() {
    let k = torus7();
    let d = dual_cells(&k).unwrap();
    let mut total = Chain::zero(2);
    for a in 0..k.vertex_count() {
        total = total.add(d.cell(0, a));
    }
    assert_eq!(total, d.subdivision.complex.fundamental_chain().unwrap());
}
