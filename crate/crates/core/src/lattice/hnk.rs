use serde::Serialize;

use crate::error::Result;
use crate::par::Execution;

use super::form::IntegerQuadraticForm;
use super::theta::{completed_squares, exact_norm, theta_invariant_with};

/// `q ≅ d⟨−1⟩ ⊕ residual`, where the residual has no vector of norm `−1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HnkSplit {
    pub diagonal_rank: usize,
    pub residual: Option<IntegerQuadraticForm>,
}

impl HnkSplit {
    pub fn is_fully_diagonal(&self) -> bool {
        self.residual.is_none()
    }

    pub fn residual_rank(&self) -> usize {
        self.residual.as_ref().map_or(0, |r| r.rank())
    }

    pub fn residual_is_even(&self) -> bool {
        self.residual.as_ref().is_some_and(|r| r.is_even())
    }

    /// Rank 8, even, unimodular and `Θ = 8`, which pins down `−E8` among
    /// negative definite forms.
    pub fn residual_is_negative_e8(&self) -> Result<bool> {
        match &self.residual {
            Some(r) if r.rank() == 8 && r.is_even() && r.is_unimodular() => {
                Ok(theta_invariant_with(r, Execution::Sequential)? == 8)
            }
            _ => Ok(false),
        }
    }
}

/// Splits off `⟨−1⟩` summands until none is left.
pub fn hnk_split_diagonalize(q: &IntegerQuadraticForm) -> Result<HnkSplit> {
    q.require_negative_unimodular()?;
    let mut current = q.clone();
    let mut diagonal_rank = 0;
    while current.rank() > 0 {
        let j = match (0..current.rank()).find(|&j| current.entry(j, j) == -1) {
            Some(j) => j,
            None => match unit_vector(&current) {
                Some(v) => {
                    current = current.transform(&completion(&v))?;
                    0
                }
                None => break,
            },
        };
        current = complement(&current, j);
        diagonal_rank += 1;
    }
    let residual = (current.rank() > 0).then_some(current);
    Ok(HnkSplit {
        diagonal_rank,
        residual,
    })
}

/// The orthogonal complement of basis vector `j` when `q(e_j, e_j) = −1`,
/// in the basis `e_i + q(e_i, e_j) e_j`.
fn complement(q: &IntegerQuadraticForm, j: usize) -> IntegerQuadraticForm {
    let keep: Vec<usize> = (0..q.rank()).filter(|&i| i != j).collect();
    let m = keep
        .iter()
        .map(|&i| keep.iter().map(|&k| q.entry(i, k) + q.entry(i, j) * q.entry(k, j)).collect())
        .collect();
    IntegerQuadraticForm::new(m).expect("complement of a symmetric form is symmetric")
}

/// A vector with `q(v, v) = −1`, if any.
fn unit_vector(q: &IntegerQuadraticForm) -> Option<Vec<i64>> {
    let n = q.rank();
    let gram: Vec<Vec<i64>> = q.matrix().iter().map(|r| r.iter().map(|&x| -x).collect()).collect();
    let (diag, mu) = completed_squares(&gram);
    let mut x = vec![0; n];
    fn go(i: usize, x: &mut Vec<i64>, partial: f64, gram: &[Vec<i64>], diag: &[f64], mu: &[Vec<f64>]) -> bool {
        let n = x.len();
        let center = -(i + 1..n).map(|j| mu[i][j] * x[j] as f64).sum::<f64>();
        let room = 1.0 + 1e-9 - partial;
        if room < 0.0 {
            return false;
        }
        let r = (room / diag[i]).sqrt();
        for v in (center - r).ceil() as i64..=(center + r).floor() as i64 {
            x[i] = v;
            let t = partial + diag[i] * (v as f64 - center).powi(2);
            let hit = if i == 0 {
                exact_norm(gram, x) == 1
            } else {
                go(i - 1, x, t, gram, diag, mu)
            };
            if hit {
                return true;
            }
        }
        x[i] = 0;
        false
    }
    go(n - 1, &mut x, 0.0, &gram, &diag, &mu).then_some(x)
}

/// A unimodular matrix whose first column is the primitive vector `v`.
fn completion(v: &[i64]) -> Vec<Vec<i64>> {
    let n = v.len();
    let mut cur = v.to_vec();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    // keep v = U·cur while Euclid reduces cur to ±e_p
    loop {
        let nonzero: Vec<usize> = (0..n).filter(|&i| cur[i] != 0).collect();
        if nonzero.len() == 1 {
            break;
        }
        let i = *nonzero.iter().min_by_key(|&&i| cur[i].abs()).expect("v is nonzero");
        for &j in &nonzero {
            if j != i {
                let f = cur[j] / cur[i];
                cur[j] -= f * cur[i];
                for row in u.iter_mut() {
                    row[i] += f * row[j];
                }
            }
        }
    }
    let p = (0..n).find(|&i| cur[i] != 0).expect("v is nonzero");
    let sign = cur[p];
    for row in u.iter_mut() {
        row.swap(0, p);
        row[0] *= sign;
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{plumbing_form, theta_invariant};

    #[test]
    fn completion_has_first_column() {
        let v = vec![3, -5, 7, 0];
        let u = completion(&v);
        let col: Vec<i64> = u.iter().map(|r| r[0]).collect();
        assert_eq!(col, v);
        let det = IntegerQuadraticForm::new(
            (0..4).map(|i| (0..4).map(|j| (0..4).map(|k| u[k][i] * u[k][j]).sum()).collect()).collect(),
        )
        .unwrap()
        .determinant();
        assert_eq!(det, 1.into());
    }

    #[test]
    fn diagonal_forms() {
        let s = hnk_split_diagonalize(&IntegerQuadraticForm::minus_identity(5)).unwrap();
        assert_eq!(s.diagonal_rank, 5);
        assert!(s.is_fully_diagonal());
        let s = hnk_split_diagonalize(&plumbing_form(2, 3, 7).unwrap()).unwrap();
        assert_eq!(s.diagonal_rank, 4);
    }

    #[test]
    fn e8_is_left_alone() {
        let s = hnk_split_diagonalize(&IntegerQuadraticForm::negative_e8()).unwrap();
        assert_eq!(s.diagonal_rank, 0);
        assert!(s.residual_is_negative_e8().unwrap());
    }

    #[test]
    fn families() {
        for k in 1..=8 {
            let q = plumbing_form(2, 3, 6 * k + 1).unwrap();
            let s = hnk_split_diagonalize(&q).unwrap();
            assert!(s.is_fully_diagonal(), "k = {k}");
            assert_eq!(theta_invariant(&q).unwrap(), 0);
            let q = plumbing_form(2, 3, 6 * k - 1).unwrap();
            let s = hnk_split_diagonalize(&q).unwrap();
            assert_eq!(s.residual_rank(), 8, "k = {k}");
            assert!(s.residual_is_negative_e8().unwrap());
            assert_eq!(s.diagonal_rank + 8, q.rank());
            assert_eq!(theta_invariant(&q).unwrap(), 8);
        }
    }
}
