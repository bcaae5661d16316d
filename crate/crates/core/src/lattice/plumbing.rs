use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numkernel::gcd;
use crate::seifert::SeifertData;

use super::form::IntegerQuadraticForm;

/// `α/β = e₁ − 1/(e₂ − 1/(⋯))` with every `e_i ≥ 2`.
pub fn hj_expand(alpha: i64, beta: i64) -> Result<Vec<i64>> {
    if !(0 < beta && beta < alpha) {
        return Err(Error::InvalidSeifert(format!("continued fraction needs 0 < {beta} < {alpha}")));
    }
    if gcd(alpha, beta) != 1 {
        return Err(Error::NotCoprime(beta, alpha));
    }
    let (mut a, mut b) = (alpha, beta);
    let mut out = Vec::new();
    while b > 0 {
        let e = (a + b - 1) / b;
        out.push(e);
        (a, b) = (b, e * b - a);
    }
    Ok(out)
}

/// A weighted tree; vertex `i` carries the Euler number `weights[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlumbingGraph {
    weights: Vec<i64>,
    edges: Vec<(usize, usize)>,
}

impl PlumbingGraph {
    pub fn new(weights: Vec<i64>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = weights.len();
        if n > 0 && edges.len() != n - 1 {
            return Err(Error::InvalidSeifert(format!("{n} vertices need {} edges, got {}", n - 1, edges.len())));
        }
        // union-find for acyclicity
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for &(u, v) in &edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidSeifert(format!("bad edge ({u}, {v})")));
            }
            let (ru, rv) = (root(&mut parent, u), root(&mut parent, v));
            if ru == rv {
                return Err(Error::InvalidSeifert("plumbing graph has a cycle".into()));
            }
            parent[ru] = rv;
        }
        Ok(PlumbingGraph { weights, edges })
    }

    /// Star-shaped graph of a Seifert fibration over the sphere: central
    /// weight the smooth degree `b`, arm `i` the negated expansion of `α_i/β_i`.
    pub fn star(seifert: &SeifertData) -> Result<Self> {
        if seifert.genus() != 0 {
            return Err(Error::InvalidSeifert("plumbing needs a genus 0 base".into()));
        }
        let mut weights = vec![seifert.smooth_degree()];
        let mut edges = Vec::new();
        for (&a, &b) in seifert.alphas().iter().zip(seifert.betas()) {
            let mut prev = 0;
            for e in hj_expand(a, b)? {
                weights.push(-e);
                edges.push((prev, weights.len() - 1));
                prev = weights.len() - 1;
            }
        }
        PlumbingGraph::new(weights, edges)
    }

    pub fn brieskorn(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::star(&SeifertData::brieskorn(a, b, c)?)
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Intersection matrix: weights on the diagonal, `1` per edge.
    pub fn intersection_form(&self) -> IntegerQuadraticForm {
        let n = self.weights.len();
        let mut m = vec![vec![0; n]; n];
        for (i, &w) in self.weights.iter().enumerate() {
            m[i][i] = w;
        }
        for &(u, v) in &self.edges {
            m[u][v] = 1;
            m[v][u] = 1;
        }
        IntegerQuadraticForm::new(m).expect("adjacency matrices are symmetric")
    }
}

/// `Γ_{a,b,c}`, the intersection form of the star plumbing of `Σ(a, b, c)`.
pub fn plumbing_form(a: i64, b: i64, c: i64) -> Result<IntegerQuadraticForm> {
    let q = PlumbingGraph::brieskorn(a, b, c)?.intersection_form();
    if !q.is_negative_definite() {
        return Err(Error::Invariant(format!("plumbing of ({a},{b},{c}) is not negative definite")));
    }
    if !q.is_unimodular() {
        return Err(Error::Invariant(format!("plumbing of ({a},{b},{c}) has det {}", q.determinant())));
    }
    Ok(q)
}
