//! Small triangulations used throughout the tests and the command line tool.

use alloc::vec;
use alloc::vec::Vec;

use super::{barycentric_subdivide, SimplicialComplex};

/// Boundary of an `n`-gon, `n >= 3`, oriented `0 -> 1 -> ... -> 0`.
pub fn circle(n: usize) -> SimplicialComplex {
    let facets: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    let mut c = SimplicialComplex::new_oriented(&facets).expect("polygon");
    // orient along increasing vertex index
    let e = c.index_of(&[0, 1]).unwrap();
    if c.orientation().unwrap()[e] < 0 {
        c = c.with_flipped_orientation();
    }
    c
}

/// Boundary of the 3-simplex.
pub fn tetrahedron_boundary() -> SimplicialComplex {
    SimplicialComplex::new_oriented(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
}

/// Boundary of the octahedron; vertices `2i`, `2i+1` are the poles on axis `i`.
pub fn octahedron() -> SimplicialComplex {
    let mut facets = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                facets.push(vec![a, b, c]);
            }
        }
    }
    SimplicialComplex::new_oriented(&facets).unwrap()
}

/// Seven-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus7() -> SimplicialComplex {
    let mut facets = Vec::new();
    for i in 0..7 {
        facets.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        facets.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    SimplicialComplex::new_oriented(&facets).unwrap()
}

/// Six-vertex real projective plane (half of the icosahedron).
pub fn rp2() -> SimplicialComplex {
    let facets: [[usize; 3]; 10] = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 6, 2],
        [2, 3, 5],
        [3, 4, 6],
        [4, 5, 2],
        [5, 6, 3],
        [6, 2, 4],
    ];
    let facets: Vec<Vec<usize>> = facets.iter().map(|f| f.iter().map(|v| v - 1).collect()).collect();
    SimplicialComplex::new(&facets).unwrap()
}

/// Real projective 3-space: the barycentric subdivision of the boundary of
/// the 4-dimensional cross-polytope modulo the antipodal map.
pub fn rp3() -> SimplicialComplex {
    // vertices 2i and 2i+1 are +e_i and -e_i
    let mut facets = Vec::new();
    for signs in 0..16usize {
        facets.push((0..4).map(|i| 2 * i + ((signs >> i) & 1)).collect::<Vec<_>>());
    }
    let c4 = SimplicialComplex::new(&facets).unwrap();
    let (sd, map) = barycentric_subdivide(&c4);
    let antipode = |v: usize| -> usize {
        let (d, i) = map.source_of_vertex(v);
        let mut s: Vec<usize> = c4.simplex(d, i).iter().map(|x| x ^ 1).collect();
        s.sort_unstable();
        map.barycenter(d, c4.index_of(&s).unwrap())
    };
    let mut reps: Vec<usize> = (0..sd.vertex_count()).filter(|&v| v < antipode(v)).collect();
    reps.sort_unstable();
    let orbit = |v: usize| reps.binary_search(&v.min(antipode(v))).unwrap();
    let mut quotient: Vec<Vec<usize>> = sd
        .facets()
        .iter()
        .map(|f| {
            let mut g: Vec<usize> = f.iter().map(|&v| orbit(v)).collect();
            g.sort_unstable();
            g
        })
        .collect();
    quotient.sort();
    quotient.dedup();
    SimplicialComplex::new_oriented(&quotient).unwrap()
}

/// Look up a fixture by name.
pub fn by_name(name: &str) -> Option<SimplicialComplex> {
    Some(match name {
        "circle" => circle(3),
        "hexagon" => circle(6),
        "s2" | "tetrahedron" => tetrahedron_boundary(),
        "octahedron" => octahedron(),
        "torus" | "t2" => torus7(),
        "rp2" => rp2(),
        "rp3" => rp3(),
        _ => return None,
    })
}

pub const NAMES: &[&str] = &["circle", "hexagon", "s2", "octahedron", "torus", "rp2", "rp3"];
