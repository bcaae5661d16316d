use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A symmetric integer matrix viewed as a quadratic form on `Z^n`.
pub struct IntegerQuadraticForm {
    matrix: Vec<Vec<i64>>,
    negative_definite: OnceLock<bool>,
}

impl IntegerQuadraticForm {
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(Error::NotSymmetric);
        }
        for i in 0..n {
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(IntegerQuadraticForm {
            matrix,
            negative_definite: OnceLock::new(),
        })
    }

    /// `d_1 ⊕ … ⊕ d_n`.
    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = vec![vec![0; n]; n];
        for (i, &d) in entries.iter().enumerate() {
            m[i][i] = d;
        }
        IntegerQuadraticForm::new(m).expect("diagonal matrices are symmetric")
    }

    /// `n⟨−1⟩`.
    pub fn minus_identity(n: usize) -> Self {
        Self::diagonal(&vec![-1; n])
    }

    /// The negative of the `E8` Cartan matrix.
    pub fn negative_e8() -> Self {
        // Bourbaki labelling: 1-3-4-5-6-7-8 with 2 attached to 4
        let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
        let mut m = vec![vec![0; 8]; 8];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = -2;
        }
        for (i, j) in edges {
            m[i][j] = 1;
            m[j][i] = 1;
        }
        IntegerQuadraticForm::new(m).expect("symmetric")
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i][j]
    }

    /// `q(x, y)`.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> i128 {
        let mut total = 0i128;
        for (i, row) in self.matrix.iter().enumerate() {
            if x[i] == 0 {
                continue;
            }
            let r: i128 = row.iter().zip(y).map(|(&a, &b)| a as i128 * b as i128).sum();
            total += x[i] as i128 * r;
        }
        total
    }

    /// `q(x, x)`.
    pub fn norm(&self, x: &[i64]) -> i128 {
        self.pairing(x, x)
    }

    /// All diagonal entries even.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.matrix[i][i] % 2 == 0)
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| i == j || self.matrix[i][j] == 0))
    }

    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(&self.matrix)
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    /// Sylvester's criterion on `−q`, computed once and cached.
    pub fn is_negative_definite(&self) -> bool {
        *self.negative_definite.get_or_init(|| self.check_negative_definite())
    }

    /// Recomputes definiteness without the cache.
    pub fn check_negative_definite(&self) -> bool {
        let neg: Vec<Vec<i64>> = self.matrix.iter().map(|r| r.iter().map(|&x| -x).collect()).collect();
        leading_minors(&neg).iter().all(|m| m.is_positive())
    }

    /// Exact rational inverse, or `None` for a singular form.
    pub fn inverse(&self) -> Option<Vec<Vec<BigRational>>> {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r: Vec<BigRational> = row.iter().map(|&x| BigRational::from_integer(x.into())).collect();
                r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            let p = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..2 * n {
                        let sub = &f * &a[col][c];
                        a[r][c] -= sub;
                    }
                }
            }
        }
        Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
    }

    /// The inverse as an integer matrix; requires `|det| = 1`.
    pub fn integer_inverse(&self) -> Result<Vec<Vec<i64>>> {
        if !self.is_unimodular() {
            return Err(Error::NotUnimodular(self.determinant().to_string()));
        }
        let inv = self.inverse().ok_or_else(|| Error::NotUnimodular("0".into()))?;
        inv.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| {
                        x.to_integer()
                            .to_i64()
                            .filter(|_| x.is_integer())
                            .ok_or_else(|| Error::Invariant("inverse entry outside i64".into()))
                    })
                    .collect()
            })
            .collect()
    }

    /// Block sum `q1 ⊕ q2`.
    pub fn direct_sum(&self, other: &IntegerQuadraticForm) -> IntegerQuadraticForm {
        let (n, m) = (self.rank(), other.rank());
        let mut out = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            out[i][..n].copy_from_slice(&self.matrix[i]);
        }
        for i in 0..m {
            out[n + i][n..].copy_from_slice(&other.matrix[i]);
        }
        IntegerQuadraticForm::new(out).expect("block sums of symmetric matrices are symmetric")
    }

    /// `Uᵀ q U`, the form in the basis given by the columns of `u`.
    pub fn transform(&self, u: &[Vec<i64>]) -> Result<IntegerQuadraticForm> {
        let n = self.rank();
        let cols: Vec<Vec<i64>> = (0..u.first().map_or(0, |r| r.len())).map(|j| (0..n).map(|i| u[i][j]).collect()).collect();
        let mut out = vec![vec![0; cols.len()]; cols.len()];
        for i in 0..cols.len() {
            for j in 0..=i {
                let v = i64::try_from(self.pairing(&cols[i], &cols[j]))
                    .map_err(|_| Error::Invariant("transformed entry outside i64".into()))?;
                out[i][j] = v;
                out[j][i] = v;
            }
        }
        IntegerQuadraticForm::new(out)
    }

    /// The same form in a random basis, built from `steps` elementary
    /// column operations with multipliers `±1`.
    pub fn scrambled<R: Rng>(&self, rng: &mut R, steps: usize) -> IntegerQuadraticForm {
        let n = self.rank();
        if n < 2 {
            return self.clone();
        }
        let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for _ in 0..steps {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let f = if rng.gen_bool(0.5) { 1 } else { -1 };
            for row in u.iter_mut() {
                row[i] += f * row[j];
            }
        }
        self.transform(&u).expect("small random bases stay in range")
    }

    pub(crate) fn require_negative_unimodular(&self) -> Result<()> {
        if !self.is_negative_definite() {
            return Err(Error::NotNegativeDefinite);
        }
        if !self.is_unimodular() {
            return Err(Error::NotUnimodular(self.determinant().to_string()));
        }
        Ok(())
    }
}

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Fraction-free elimination with row pivoting.
fn bareiss_determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_big(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Leading principal minors via Bareiss without pivoting; stops at the
/// first vanishing minor.
fn leading_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    let mut a = to_big(m);
    let mut prev = BigInt::one();
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        minors.push(a[k][k].clone());
        if a[k][k].is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    minors
}

impl Clone for IntegerQuadraticForm {
    fn clone(&self) -> Self {
        IntegerQuadraticForm {
            matrix: self.matrix.clone(),
            negative_definite: self.negative_definite.clone(),
        }
    }
}

impl PartialEq for IntegerQuadraticForm {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for IntegerQuadraticForm {}

impl fmt::Debug for IntegerQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.matrix).finish()
    }
}

/// Rows of the matrix, one per line.
impl fmt::Display for IntegerQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.matrix.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
            write!(f, "[{}]", cells.join(""))?;
        }
        Ok(())
    }
}

impl Serialize for IntegerQuadraticForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.matrix.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntegerQuadraticForm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let m = Vec::<Vec<i64>>::deserialize(deserializer)?;
        IntegerQuadraticForm::new(m).map_err(serde::de::Error::custom)
    }
}
