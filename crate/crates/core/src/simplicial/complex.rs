use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::Int;

/// Sign of the permutation sorting `v`, or `None` when `v` has repeats.
pub fn sort_sign(v: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// A finite abstract simplicial complex. Simplices are stored in ascending
/// vertex order, sorted lexicographically within each dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<Vec<usize>>,
    simplices: Vec<Vec<Vec<usize>>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
    faces: Vec<Vec<Vec<usize>>>,
    cofaces: Vec<Vec<Vec<usize>>>,
    /// For an oriented closed pseudomanifold: sign of each top simplex
    /// relative to its ascending vertex order.
    orientation: Option<Vec<i32>>,
}

impl SimplicialComplex {
    /// Builds the closure of `facets`. Vertex indices are `0..=max`.
    pub fn new(facets: &[Vec<usize>]) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::InvalidComplex("no facets".into()));
        }
        let mut seen = BTreeSet::new();
        let mut sorted = Vec::with_capacity(facets.len());
        for f in facets {
            let mut s = f.clone();
            if s.is_empty() {
                return Err(Error::InvalidComplex("empty facet".into()));
            }
            if sort_sign(&mut s).is_none() {
                return Err(Error::InvalidComplex(format!("facet {:?} repeats a vertex", f)));
            }
            if !seen.insert(s.clone()) {
                return Err(Error::InvalidComplex(format!("duplicate facet {:?}", f)));
            }
            sorted.push(s);
        }
        let vertex_count = sorted.iter().flatten().max().map_or(0, |m| m + 1);
        let dim = sorted.iter().map(|f| f.len() - 1).max().unwrap_or(0);
        let mut sets: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dim + 1];
        for v in 0..vertex_count {
            sets[0].insert(vec![v]);
        }
        for f in &sorted {
            let k = f.len();
            // all nonempty subsets, which keep ascending order
            for mask in 1u64..(1u64 << k) {
                let s: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect();
                sets[s.len() - 1].insert(s);
            }
        }
        let simplices: Vec<Vec<Vec<usize>>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        if simplices[0].len() != vertex_count || simplices[0].iter().enumerate().any(|(i, s)| s[0] != i) {
            return Err(Error::InvalidComplex("vertex indices must be 0..n without gaps".into()));
        }
        let mut c = SimplicialComplex {
            vertex_count,
            facets: sorted,
            simplices,
            index: Vec::new(),
            faces: Vec::new(),
            cofaces: Vec::new(),
            orientation: None,
        };
        c.build_tables();
        Ok(c)
    }

    /// Builds the complex and orients it as a closed pseudomanifold, so that
    /// adjacent top simplices induce opposite orientations on shared faces.
    pub fn new_oriented(facets: &[Vec<usize>]) -> Result<Self> {
        let mut c = Self::new(facets)?;
        c.orientation = Some(c.compute_orientation()?);
        Ok(c)
    }

    fn build_tables(&mut self) {
        self.index = self
            .simplices
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let dim = self.simplices.len() - 1;
        self.faces = vec![Vec::new(); dim + 1];
        self.cofaces = vec![Vec::new(); dim + 1];
        for k in 0..=dim {
            self.cofaces[k] = vec![Vec::new(); self.simplices[k].len()];
        }
        for k in 1..=dim {
            let mut level = Vec::with_capacity(self.simplices[k].len());
            for (i, s) in self.simplices[k].iter().enumerate() {
                let fs: Vec<usize> = (0..s.len())
                    .map(|j| {
                        let mut f = s.clone();
                        f.remove(j);
                        self.index[k - 1][&f]
                    })
                    .collect();
                for &f in &fs {
                    self.cofaces[k - 1][f].push(i);
                }
                level.push(fs);
            }
            self.faces[k] = level;
        }
    }

    fn compute_orientation(&self) -> Result<Vec<i32>> {
        let n = self.dim();
        if n == 0 {
            return Err(Error::InvalidComplex("cannot orient a zero-dimensional complex".into()));
        }
        if self.facets.iter().any(|f| f.len() != n + 1) {
            return Err(Error::InvalidComplex("complex is not pure".into()));
        }
        for (f, cof) in self.cofaces[n - 1].iter().enumerate() {
            if cof.len() != 2 {
                return Err(Error::InvalidComplex(format!(
                    "codimension-one simplex {:?} lies in {} top simplices",
                    self.simplices[n - 1][f],
                    cof.len()
                )));
            }
        }
        let tops = self.simplices[n].len();
        let mut sign = vec![0i32; tops];
        for start in 0..tops {
            if sign[start] != 0 {
                continue;
            }
            if start != 0 {
                return Err(Error::InvalidComplex("complex is not connected".into()));
            }
            sign[start] = 1;
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for (j, &f) in self.faces[n][t].iter().enumerate() {
                    let induced_t = sign[t] * if j % 2 == 0 { 1 } else { -1 };
                    for &u in &self.cofaces[n - 1][f] {
                        if u == t {
                            continue;
                        }
                        let ju = self.faces[n][u].iter().position(|&g| g == f).expect("face table");
                        let base_u = if ju % 2 == 0 { 1 } else { -1 };
                        let want = -induced_t * base_u;
                        if sign[u] == 0 {
                            sign[u] = want;
                            stack.push(u);
                        } else if sign[u] != want {
                            return Err(Error::InvalidComplex("complex is not orientable".into()));
                        }
                    }
                }
            }
        }
        Ok(sign)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices.get(k).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn simplices(&self, k: usize) -> &[Vec<usize>] {
        self.simplices.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn simplex(&self, k: usize, i: usize) -> &[usize] {
        &self.simplices[k][i]
    }

    /// Index of an ascending vertex list.
    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.index.get(s.len() - 1)?.get(s).copied()
    }

    /// Index and orientation sign of an arbitrarily ordered vertex list.
    pub fn oriented_index(&self, s: &[usize]) -> Option<(usize, i32)> {
        let mut v = s.to_vec();
        let sign = sort_sign(&mut v)?;
        Some((self.index_of(&v)?, sign))
    }

    /// Indices of the faces of `(k, i)`, the `j`-th omitting the `j`-th vertex.
    pub fn faces(&self, k: usize, i: usize) -> &[usize] {
        &self.faces[k][i]
    }

    /// Indices of the `(k+1)`-simplices having `(k, i)` as a face.
    pub fn cofaces(&self, k: usize, i: usize) -> &[usize] {
        &self.cofaces[k][i]
    }

    pub fn orientation(&self) -> Option<&[i32]> {
        self.orientation.as_deref()
    }

    pub(crate) fn orientation_mut(&mut self) -> Option<&mut Vec<i32>> {
        self.orientation.as_mut()
    }

    pub fn is_oriented(&self) -> bool {
        self.orientation.is_some()
    }

    /// Whether every codimension-one simplex lies in exactly two top simplices
    /// and the complex is pure and connected.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        let n = self.dim();
        n > 0
            && self.facets.iter().all(|f| f.len() == n + 1)
            && self.cofaces[n - 1].iter().all(|c| c.len() == 2)
            && self.is_connected()
    }

    pub fn is_orientable(&self) -> bool {
        self.compute_orientation().is_ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for &e in self.cofaces(0, v) {
                for &w in self.simplex(1, e) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen.iter().all(|&b| b)
    }

    /// `∂_k` as an `n_{k-1} x n_k` matrix; `k` must be at least 1.
    pub fn boundary_matrix(&self, k: usize) -> IntMatrix {
        let rows = if k == 0 { 0 } else { self.count(k - 1) };
        let mut m = IntMatrix::zeros(rows, self.count(k));
        if k == 0 || k > self.dim() {
            return m;
        }
        for i in 0..self.count(k) {
            for (j, &f) in self.faces[k][i].iter().enumerate() {
                m.set(f, i, Int::from(if j % 2 == 0 { 1 } else { -1 }));
            }
        }
        m
    }

    /// Sum of the top simplices with their orientation signs.
    pub fn fundamental_chain(&self) -> Option<super::Chain> {
        let o = self.orientation.as_ref()?;
        let n = self.dim();
        Some(super::Chain::from_terms(n, o.iter().enumerate().map(|(i, &s)| (i, Int::from(s)))))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().enumerate().map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) }).sum()
    }
}
