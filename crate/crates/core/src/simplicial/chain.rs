use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use super::SimplicialComplex;
use crate::Int;

/// Integer chain: a finitely supported combination of `degree`-simplices,
/// keyed by simplex index. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Chain {
    pub degree: usize,
    terms: BTreeMap<usize, Int>,
}

impl Chain {
    pub fn zero(degree: usize) -> Self {
        Chain { degree, terms: BTreeMap::new() }
    }

    pub fn simplex(degree: usize, index: usize) -> Self {
        Self::from_terms(degree, [(index, Int::from(1))])
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, Int)>>(degree: usize, terms: I) -> Self {
        let mut c = Chain::zero(degree);
        for (i, x) in terms {
            c.add_term(i, &x);
        }
        c
    }

    pub fn from_dense(degree: usize, v: &[Int]) -> Self {
        Self::from_terms(degree, v.iter().cloned().enumerate())
    }

    pub fn add_term(&mut self, index: usize, coeff: &Int) {
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry(index).or_insert_with(Int::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&index);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Int)> {
        self.terms.iter().map(|(&i, x)| (i, x))
    }

    pub fn coeff(&self, index: usize) -> Int {
        self.terms.get(&index).cloned().unwrap_or_else(Int::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.degree, other.degree, "adding chains of different degree");
        let mut c = self.clone();
        for (i, x) in other.terms() {
            c.add_term(i, x);
        }
        c
    }

    pub fn scale(&self, s: &Int) -> Chain {
        Chain::from_terms(self.degree, self.terms().map(|(i, x)| (i, x * s)))
    }

    pub fn neg(&self) -> Chain {
        self.scale(&Int::from(-1))
    }

    pub fn to_dense(&self, len: usize) -> Vec<Int> {
        let mut v = alloc::vec![Int::zero(); len];
        for (i, x) in self.terms() {
            v[i] = x.clone();
        }
        v
    }

    /// Keeps only the terms whose index satisfies `keep`.
    pub fn restrict<F: Fn(usize) -> bool>(&self, keep: F) -> Chain {
        Chain::from_terms(self.degree, self.terms().filter(|(i, _)| keep(*i)).map(|(i, x)| (i, x.clone())))
    }
}

/// Alternating face sum.
pub fn boundary(k: &SimplicialComplex, c: &Chain) -> Chain {
    if c.degree == 0 {
        return Chain::zero(0);
    }
    let mut out = Chain::zero(c.degree - 1);
    for (i, x) in c.terms() {
        for (j, &f) in k.faces(c.degree, i).iter().enumerate() {
            if j % 2 == 0 {
                out.add_term(f, x);
            } else {
                out.add_term(f, &-x);
            }
        }
    }
    out
}

/// Chain of an oriented simplex given by (possibly unsorted) vertices.
pub fn oriented_simplex(k: &SimplicialComplex, vertices: &[usize]) -> Option<Chain> {
    let (i, s) = k.oriented_index(vertices)?;
    Some(Chain::from_terms(vertices.len() - 1, [(i, Int::from(s))]))
}
