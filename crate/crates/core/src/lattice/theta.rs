use std::sync::atomic::{AtomicI64, Ordering};

use crate::error::{Error, Result};
use crate::par::Execution;

use super::form::IntegerQuadraticForm;

/// `Θ(q) = rk(q) + max q(ξ, ξ)` over characteristic vectors `ξ`.
pub fn theta_invariant(q: &IntegerQuadraticForm) -> Result<i64> {
    theta_invariant_with(q, Execution::best())
}

pub fn theta_invariant_with(q: &IntegerQuadraticForm, exec: Execution) -> Result<i64> {
    q.require_negative_unimodular()?;
    let n = q.rank() as i64;
    let theta = n - min_characteristic_norm(q, exec)?;
    if theta.rem_euclid(8) != 0 {
        return Err(Error::Invariant(format!("theta {theta} is not divisible by 8")));
    }
    if theta > n || (theta == n) != q.is_even() {
        return Err(Error::Invariant(format!("theta {theta} against rank {n} and parity")));
    }
    if theta < 0 {
        return Err(Error::Invariant(format!("negative theta {theta}")));
    }
    Ok(theta)
}

/// `min −q(ξ, ξ)` over characteristic `ξ`, i.e. over `ξ ≡ q⁻¹·diag(q) (mod 2)`.
pub fn min_characteristic_norm(q: &IntegerQuadraticForm, exec: Execution) -> Result<i64> {
    q.require_negative_unimodular()?;
    let n = q.rank();
    if n == 0 {
        return Ok(0);
    }
    let inv = q.integer_inverse()?;
    let parity: Vec<i64> = (0..n)
        .map(|i| (0..n).map(|j| inv[i][j] * q.entry(j, j)).sum::<i64>().rem_euclid(2))
        .collect();
    // largest diagonal entries are enumerated first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (-q.entry(i, i), i));
    let gram: Vec<Vec<i64>> = order.iter().map(|&i| order.iter().map(|&j| -q.entry(i, j)).collect()).collect();
    let coset: Vec<i64> = order.iter().map(|&i| parity[i]).collect();
    let search = CosetSearch::new(gram, coset);
    Ok(search.run(exec))
}

struct CosetSearch {
    gram: Vec<Vec<i64>>,
    coset: Vec<i64>,
    diag: Vec<f64>,
    mu: Vec<Vec<f64>>,
    best: AtomicI64,
}

impl CosetSearch {
    fn new(gram: Vec<Vec<i64>>, coset: Vec<i64>) -> Self {
        let (diag, m) = completed_squares(&gram);
        let start = exact_norm(&gram, &coset);
        CosetSearch {
            gram,
            coset,
            diag,
            mu: m,
            best: AtomicI64::new(start),
        }
    }

    fn bound(&self) -> f64 {
        let b = self.best.load(Ordering::Relaxed);
        (b - 1) as f64 + 1e-6 * (1.0 + b as f64)
    }

    /// Admissible values of coordinate `i` given the later coordinates.
    fn candidates(&self, i: usize, x: &[i64], partial: f64) -> (f64, Vec<i64>) {
        let n = self.gram.len();
        let center: f64 = -(i + 1..n).map(|j| self.mu[i][j] * x[j] as f64).sum::<f64>();
        let room = self.bound() - partial;
        if room < 0.0 {
            return (center, Vec::new());
        }
        let r = (room / self.diag[i]).sqrt();
        let mut lo = (center - r).ceil() as i64;
        let hi = (center + r).floor() as i64;
        if (lo - self.coset[i]).rem_euclid(2) != 0 {
            lo += 1;
        }
        (center, (lo..=hi).step_by(2).collect())
    }

    fn descend(&self, i: usize, x: &mut Vec<i64>, partial: f64) {
        let (center, values) = self.candidates(i, x, partial);
        for v in values {
            let t = partial + self.diag[i] * (v as f64 - center).powi(2);
            if t > self.bound() {
                continue;
            }
            x[i] = v;
            if i == 0 {
                let norm = exact_norm(&self.gram, x);
                self.best.fetch_min(norm, Ordering::Relaxed);
            } else {
                self.descend(i - 1, x, t);
            }
        }
        x[i] = 0;
    }

    fn run(&self, exec: Execution) -> i64 {
        let n = self.gram.len();
        let top = n - 1;
        let (center, values) = self.candidates(top, &vec![0; n], 0.0);
        exec.map(&values, |&v| {
            let mut x = vec![0; n];
            x[top] = v;
            let t = self.diag[top] * (v as f64 - center).powi(2);
            if t > self.bound() {
                return;
            }
            if top == 0 {
                self.best.fetch_min(exact_norm(&self.gram, &x), Ordering::Relaxed);
            } else {
                self.descend(top - 1, &mut x, t);
            }
        });
        self.best.load(Ordering::Relaxed)
    }
}

/// `x·G·x = Σ_i d_i (x_i + Σ_{j>i} μ_ij x_j)²` for positive definite `G`.
pub(super) fn completed_squares(gram: &[Vec<i64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = gram.len();
    let mut m: Vec<Vec<f64>> = gram.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    for i in 0..n {
        for j in i + 1..n {
            m[j][i] = m[i][j];
            m[i][j] /= m[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                m[k][l] -= m[k][i] * m[i][l];
            }
        }
    }
    let diag = (0..n).map(|i| m[i][i]).collect();
    (diag, m)
}

pub(super) fn exact_norm(gram: &[Vec<i64>], x: &[i64]) -> i64 {
    let mut total = 0i128;
    for (i, row) in gram.iter().enumerate() {
        if x[i] != 0 {
            total += x[i] as i128 * row.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum::<i128>();
        }
    }
    total as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::plumbing_form;

    #[test]
    fn basic_values() {
        assert_eq!(theta_invariant(&IntegerQuadraticForm::minus_identity(1)).unwrap(), 0);
        assert_eq!(theta_invariant(&IntegerQuadraticForm::minus_identity(7)).unwrap(), 0);
        assert_eq!(theta_invariant(&IntegerQuadraticForm::negative_e8()).unwrap(), 8);
        let sum = IntegerQuadraticForm::minus_identity(1).direct_sum(&IntegerQuadraticForm::negative_e8());
        assert_eq!(theta_invariant(&sum).unwrap(), 8);
        assert_eq!(theta_invariant(&plumbing_form(2, 3, 7).unwrap()).unwrap(), 0);
    }

    #[test]
    fn min_norm_of_identity() {
        let q = IntegerQuadraticForm::minus_identity(5);
        assert_eq!(min_characteristic_norm(&q, Execution::Sequential).unwrap(), 5);
    }

    #[test]
    fn rejects_bad_forms() {
        assert!(matches!(
            theta_invariant(&IntegerQuadraticForm::diagonal(&[-1, 1])),
            Err(Error::NotNegativeDefinite)
        ));
        assert!(matches!(
            theta_invariant(&IntegerQuadraticForm::diagonal(&[-1, -2])),
            Err(Error::NotUnimodular(_))
        ));
    }

    #[test]
    fn sequential_matches_parallel() {
        for k in 1..=4 {
            let q = plumbing_form(2, 3, 6 * k - 1).unwrap();
            assert_eq!(
                theta_invariant_with(&q, Execution::Sequential).unwrap(),
                theta_invariant_with(&q, Execution::Parallel).unwrap()
            );
        }
    }
}
