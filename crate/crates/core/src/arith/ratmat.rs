//! Dense matrices over Q: exact Gaussian elimination, inverses, and
//! characteristic polynomials via the Faddeev-LeVerrier recurrence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::RatPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMat {
    pub fn new(rows: usize, cols: usize, data: Vec<BigRational>) -> Self {
        assert_eq!(rows * cols, data.len());
        RatMat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> BigRational,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows);
        RatMat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = BigRational::zero();
            for k in 0..self.cols {
                if self[(i, k)].is_zero() || other[(k, j)].is_zero() {
                    continue;
                }
                acc += &self[(i, k)] * &other[(k, j)];
            }
            acc
        })
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                let mut acc = BigRational::zero();
                for (i, vi) in v.iter().enumerate() {
                    if vi.is_zero() {
                        continue;
                    }
                    acc += vi * &self[(i, j)];
                }
                acc
            })
            .collect()
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = BigRational::zero();
                for (j, vj) in v.iter().enumerate() {
                    if vj.is_zero() {
                        continue;
                    }
                    acc += &self[(i, j)] * vj;
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &BigRational) -> RatMat {
        RatMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn trace(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        let mut acc = BigRational::zero();
        for i in 0..self.rows {
            acc += &self[(i, i)];
        }
        acc
    }

    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = BigRational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i * n + k].is_zero()) else {
                return BigRational::zero();
            };
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = a[k * n + k].clone();
            det *= &pivot;
            for i in k + 1..n {
                if a[i * n + k].is_zero() {
                    continue;
                }
                let f = &a[i * n + k] / &pivot;
                for j in k..n {
                    let t = &f * &a[k * n + j];
                    a[i * n + j] -= t;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RatMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMat::identity(n);
        for k in 0..n {
            let p = (k..n).find(|&i| !a[(i, k)].is_zero())?;
            if p != k {
                for j in 0..n {
                    let (x, y) = (a[(k, j)].clone(), a[(p, j)].clone());
                    a[(k, j)] = y;
                    a[(p, j)] = x;
                    let (x, y) = (inv[(k, j)].clone(), inv[(p, j)].clone());
                    inv[(k, j)] = y;
                    inv[(p, j)] = x;
                }
            }
            let pivot = a[(k, k)].clone();
            for j in 0..n {
                a[(k, j)] /= &pivot;
                inv[(k, j)] /= &pivot;
            }
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let f = a[(i, k)].clone();
                for j in 0..n {
                    let t = &f * &a[(k, j)];
                    a[(i, j)] -= t;
                    let t = &f * &inv[(k, j)];
                    inv[(i, j)] -= t;
                }
            }
        }
        Some(inv)
    }

    /// Monic characteristic polynomial `det(x*I - M)` (Faddeev-LeVerrier).
    pub fn charpoly(&self) -> RatPoly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut mk = self.clone();
        for k in 1..=n {
            let c = -(mk.trace() / BigRational::from_integer(BigInt::from(k)));
            coeffs[n - k] = c.clone();
            if k < n {
                let mut shifted = mk;
                for i in 0..n {
                    shifted[(i, i)] += &c;
                }
                mk = self.mul(&shifted);
            }
        }
        RatPoly::new(coeffs)
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}
