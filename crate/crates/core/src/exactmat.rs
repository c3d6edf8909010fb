//! Exact dense matrix arithmetic over the integers and rationals.
//!
//! Everything downstream (Euler forms, mutation, orbit search) is built on
//! these two types; no floating point appears anywhere in the crate. All
//! matrices in scope are desk scale (side length at most ~10), so the
//! representation is dense and the algorithms are the plain exact ones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix side length must be positive")]
    EmptySide,
    #[error("expected {expected} entries for a {n}x{n} matrix, got {got}")]
    WrongEntryCount { n: usize, expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix dimensions do not match: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}

/// Square matrix with arbitrary-precision integer entries, row major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

/// Square matrix with exact rational entries, row major.
///
/// `num_rational::BigRational` keeps every entry in lowest terms with a
/// positive denominator, which is exactly the invariant we need.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl IntMatrix {
    pub fn new(n: usize, entries: Vec<BigInt>) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::EmptySide);
        }
        if entries.len() != n * n {
            return Err(MatrixError::WrongEntryCount {
                n,
                expected: n * n,
                got: entries.len(),
            });
        }
        Ok(IntMatrix { n, entries })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        IntMatrix { n, entries }
    }

    /// Convenience constructor from machine-integer rows, mostly for tests
    /// and the named-matrix builders.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::EmptySide);
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(MatrixError::WrongEntryCount {
                    n,
                    expected: n * n,
                    got: row.len() * n,
                });
            }
            entries.extend(row.iter().map(|&v| BigInt::from(v)));
        }
        Ok(IntMatrix { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_, _| BigInt::zero())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn transpose(&self) -> IntMatrix {
        Self::from_fn(self.n, |i, j| self.at(j, i).clone())
    }

    pub fn neg(&self) -> IntMatrix {
        Self::from_fn(self.n, |i, j| -self.at(i, j))
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n, "sub requires equal dimensions");
        Self::from_fn(self.n, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n, "mul requires equal dimensions");
        let n = self.n;
        Self::from_fn(n, |i, j| {
            let mut acc = BigInt::zero();
            for k in 0..n {
                acc += self.at(i, k) * other.at(k, j);
            }
            acc
        })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination; every
    /// intermediate division is exact so the computation stays in the
    /// integers throughout.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            let pivot = match (k..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => r,
                None => return BigInt::zero(),
            };
            if pivot != k {
                for c in 0..n {
                    a.swap(k * n + c, pivot * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                    a[i * n + j] = v;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = a[k * n + k].clone();
        }
        let d = a[(n - 1) * n + (n - 1)].clone();
        if sign < 0 { -d } else { d }
    }

    /// Exact inverse over the rationals. `M.mul(&M.inverse()?)` is the
    /// identity exactly, there is no rounding anywhere.
    pub fn inverse(&self) -> Result<RatMatrix, MatrixError> {
        self.to_rat().inverse()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// True iff M^n = 0 (n the side length), by exact repeated
    /// multiplication over the integers.
    pub fn is_nilpotent(&self) -> bool {
        let mut power = self.clone();
        for _ in 1..self.n {
            if power.is_zero() {
                return true;
            }
            power = power.mul(self);
        }
        power.is_zero()
    }

    /// Rank over the rationals by fraction-free elimination.
    pub fn rank(&self) -> usize {
        bareiss_rank(self.n, self.entries.clone())
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|e| BigRational::from_integer(e.clone()))
                .collect(),
        }
    }
}

impl RatMatrix {
    pub fn new(n: usize, entries: Vec<BigRational>) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::EmptySide);
        }
        if entries.len() != n * n {
            return Err(MatrixError::WrongEntryCount {
                n,
                expected: n * n,
                got: entries.len(),
            });
        }
        Ok(RatMatrix { n, entries })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        RatMatrix { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> RatMatrix {
        Self::from_fn(self.n, |i, j| self.at(j, i).clone())
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n, "sub requires equal dimensions");
        Self::from_fn(self.n, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n, "mul requires equal dimensions");
        let n = self.n;
        Self::from_fn(n, |i, j| {
            let mut acc = BigRational::zero();
            for k in 0..n {
                acc += self.at(i, k) * other.at(k, j);
            }
            acc
        })
    }

    pub fn trace(&self) -> BigRational {
        (0..self.n).map(|i| self.at(i, i).clone()).sum()
    }

    /// Rank over the rationals. Each row is scaled by the lcm of its
    /// denominators (rank-preserving), then the elimination runs
    /// fraction-free over the integers.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut a = Vec::with_capacity(n * n);
        for i in 0..n {
            let mut lcm = BigInt::one();
            for j in 0..n {
                lcm = lcm.lcm(self.at(i, j).denom());
            }
            for j in 0..n {
                let e = self.at(i, j);
                a.push(e.numer() * (&lcm / e.denom()));
            }
        }
        bareiss_rank(n, a)
    }

    /// True iff M^n = 0 (n the side length), by exact repeated
    /// multiplication. No smaller a-priori nilpotency index is assumed.
    pub fn is_nilpotent(&self) -> bool {
        let mut power = self.clone();
        for _ in 1..self.n {
            if power.is_zero() {
                return true;
            }
            power = power.mul(self);
        }
        power.is_zero()
    }

    /// Characteristic polynomial coefficients, leading first, so the result
    /// always starts with 1 and has length n + 1. Computed by the
    /// Faddeev-LeVerrier recurrence, which is exact over the rationals.
    pub fn charpoly(&self) -> Vec<BigRational> {
        let n = self.n;
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(BigRational::one());
        let mut ak = self.clone();
        for k in 1..=n {
            let c = -ak.trace() / BigRational::from_integer(BigInt::from(k));
            coeffs.push(c.clone());
            if k < n {
                // A_{k+1} = M (A_k + c_k I)
                let shifted = Self::from_fn(n, |i, j| {
                    if i == j {
                        ak.at(i, j) + &c
                    } else {
                        ak.at(i, j).clone()
                    }
                });
                ak = self.mul(&shifted);
            }
        }
        coeffs
    }

    pub fn inverse(&self) -> Result<RatMatrix, MatrixError> {
        let n = self.n;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut inv: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(MatrixError::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for c in 0..n {
                a[col][c] = &a[col][c] / &p;
                inv[col][c] = &inv[col][c] / &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for c in 0..n {
                    let va = &a[r][c] - &factor * &a[col][c];
                    a[r][c] = va;
                    let vi = &inv[r][c] - &factor * &inv[col][c];
                    inv[r][c] = vi;
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| inv[i][j].clone()))
    }

    /// Some(m) when every entry is an integer.
    pub fn to_int(&self) -> Option<IntMatrix> {
        let mut entries = Vec::with_capacity(self.n * self.n);
        for e in &self.entries {
            if !e.is_integer() {
                return None;
            }
            entries.push(e.to_integer());
        }
        Some(IntMatrix {
            n: self.n,
            entries,
        })
    }

    pub fn max_abs_numer(&self) -> BigInt {
        self.entries
            .iter()
            .map(|e| e.numer().abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// Fraction-free (Bareiss) elimination with row swaps and column skips;
/// every division by the previous pivot is exact, since the working entries
/// are minors of the original matrix.
fn bareiss_rank(n: usize, mut a: Vec<BigInt>) -> usize {
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..n {
        let pivot = match (row..n).find(|&r| !a[r * n + col].is_zero()) {
            Some(r) => r,
            None => continue,
        };
        if pivot != row {
            for c in 0..n {
                a.swap(row * n + c, pivot * n + c);
            }
        }
        for r in row + 1..n {
            for c in col + 1..n {
                let v = (&a[r * n + c] * &a[row * n + col] - &a[r * n + col] * &a[row * n + c])
                    / &prev;
                a[r * n + c] = v;
            }
            a[r * n + col] = BigInt::zero();
        }
        prev = a[row * n + col].clone();
        rank += 1;
        row += 1;
        if row == n {
            break;
        }
    }
    rank
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn det_identity_is_one() {
        assert_eq!(IntMatrix::identity(3).det(), BigInt::one());
    }

    #[test]
    fn det_unit_upper_triangular_is_one() {
        let m = int(&[vec![1, 7, -4], vec![0, 1, 11], vec![0, 0, 1]]);
        assert_eq!(m.det(), BigInt::one());
    }

    #[test]
    fn det_two_by_two() {
        let m = int(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(m.det(), BigInt::one());
    }

    #[test]
    fn det_singular_is_zero() {
        let m = int(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.det(), BigInt::zero());
    }

    #[test]
    fn inverse_identity() {
        let inv = IntMatrix::identity(4).inverse().unwrap();
        assert_eq!(inv, RatMatrix::identity(4));
    }

    #[test]
    fn inverse_beilinson_cartan() {
        let m = int(&[vec![1, 3, 6], vec![0, 1, 3], vec![0, 0, 1]]);
        let inv = m.inverse().unwrap();
        let expected = int(&[vec![1, -3, 3], vec![0, 1, -3], vec![0, 0, 1]]).to_rat();
        assert_eq!(inv, expected);
        assert_eq!(m.to_rat().mul(&inv), RatMatrix::identity(3));
    }

    #[test]
    fn inverse_swap_involution() {
        let m = int(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.inverse().unwrap(), m.to_rat());
    }

    #[test]
    fn inverse_singular_errors() {
        let m = int(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(m.inverse().unwrap_err(), MatrixError::Singular);
    }

    #[test]
    fn rank_zero_and_identity() {
        assert_eq!(IntMatrix::zero(4).to_rat().rank(), 0);
        assert_eq!(RatMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn nilpotent_strict_upper() {
        let m = int(&[
            vec![0, 5, -2, 9],
            vec![0, 0, 3, 1],
            vec![0, 0, 0, 7],
            vec![0, 0, 0, 0],
        ]);
        assert!(m.to_rat().is_nilpotent());
        assert!(!RatMatrix::identity(4).is_nilpotent());
    }

    #[test]
    fn charpoly_identity_and_zero() {
        let one = BigRational::one;
        let id2 = RatMatrix::identity(2).charpoly();
        assert_eq!(id2, vec![one(), -one() - one(), one()]);
        let z2 = IntMatrix::zero(2).to_rat().charpoly();
        assert_eq!(z2, vec![one(), BigRational::zero(), BigRational::zero()]);
    }

    // the Coxeter matrix of the plane has every eigenvalue -1, so its
    // characteristic polynomial is (x + 1)^3; frozen after confirming with
    // the interpolation oracle in tests/properties.rs
    #[test]
    fn charpoly_of_plane_coxeter_golden() {
        let coxeter = int(&[vec![-10, -6, -3], vec![15, 8, 3], vec![-6, -3, -1]]);
        let golden: Vec<BigRational> = [1, 3, 3, 1]
            .into_iter()
            .map(|v| BigRational::from_integer(BigInt::from(v)))
            .collect();
        assert_eq!(coxeter.to_rat().charpoly(), golden);
    }

    #[test]
    fn wrong_entry_count_rejected() {
        assert!(matches!(
            IntMatrix::new(2, vec![BigInt::one(); 3]),
            Err(MatrixError::WrongEntryCount { .. })
        ));
        assert!(matches!(IntMatrix::new(0, vec![]), Err(MatrixError::EmptySide)));
    }
}
