//! Full-rank Z-lattices in an etale algebra, stored in a canonical form:
//! an integer basis matrix in row Hermite normal form together with a
//! minimal positive denominator. Equality of lattices is equality of the
//! canonical forms.
//!
//! The colon `(L1 : L2) = {x : x L2 <= L1}` is computed through trace
//! duals as `(L1^t L2)^t`, and the intersection as `(L1^t + L2^t)^t`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::num::rat_from_int;
use crate::arith::{IntMat, RatMat};
use crate::etale::{AlgElem, Conjugation, EtaleAlgebra};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Lattice {
    alg: EtaleAlgebra,
    /// Basis vectors as rows, in row HNF; basis element `i` is
    /// `(1/den) * sum_j num[i][j] x^j`.
    num: IntMat,
    den: BigInt,
    /// Cached inverse of the rational basis matrix (num/den).
    inv: OnceLock<RatMat>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.den == other.den && self.num == other.num
    }
}
impl Eq for Lattice {}

impl PartialOrd for Lattice {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Lattice {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.den, &self.num).cmp(&(&other.den, &other.num))
    }
}

impl Lattice {
    /// Canonicalizes an integer matrix + denominator into a lattice.
    /// The matrix rows must span a full-rank subgroup.
    pub fn from_int_rows(alg: &EtaleAlgebra, rows: IntMat, den: BigInt) -> Result<Lattice> {
        assert!(den.is_positive(), "denominator must be positive");
        assert_eq!(rows.cols(), alg.dim());
        let h = rows.hnf();
        let n = alg.dim();
        // Keep the top n rows; they must all be nonzero (full rank).
        if h.rows() < n {
            return Err(Error::NotFullRank);
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            if h.row(i).iter().all(|x| x.is_zero()) {
                return Err(Error::NotFullRank);
            }
            data.extend(h.row(i).iter().cloned());
        }
        for i in n..h.rows() {
            debug_assert!(h.row(i).iter().all(|x| x.is_zero()));
        }
        let mut num = IntMat::new(n, n, data);
        // Minimal denominator: divide out gcd(den, content of num).
        let mut g = den.clone();
        'outer: for i in 0..n {
            for j in 0..n {
                g = g.gcd(&num[(i, j)]);
                if g.is_one() {
                    break 'outer;
                }
            }
        }
        let den = if g.is_one() {
            den
        } else {
            num = IntMat::from_fn(n, n, |i, j| &num[(i, j)] / &g);
            den / g
        };
        Ok(Lattice {
            alg: alg.clone(),
            num,
            den,
            inv: OnceLock::new(),
        })
    }

    /// Z-span of rational coordinate rows (at least `dim` independent ones).
    pub fn from_rat_rows(alg: &EtaleAlgebra, rows: &[Vec<BigRational>]) -> Result<Lattice> {
        let n = alg.dim();
        let mut den = BigInt::one();
        for row in rows {
            assert_eq!(row.len(), n);
            for c in row {
                den = den.lcm(c.denom());
            }
        }
        let m = IntMat::from_fn(rows.len(), n, |i, j| {
            let c = &rows[i][j];
            c.numer() * (&den / c.denom())
        });
        Lattice::from_int_rows(alg, m, den)
    }

    /// Z-span of a set of algebra elements.
    pub fn from_elems(alg: &EtaleAlgebra, elems: &[AlgElem]) -> Result<Lattice> {
        let rows: Vec<Vec<BigRational>> = elems.iter().map(|e| e.coords().to_vec()).collect();
        Lattice::from_rat_rows(alg, &rows)
    }

    /// The lattice `Z[x]`-span of the power basis (the equation order as a
    /// lattice).
    pub fn standard(alg: &EtaleAlgebra) -> Lattice {
        Lattice::from_int_rows(alg, IntMat::identity(alg.dim()), BigInt::one()).unwrap()
    }

    pub fn algebra(&self) -> &EtaleAlgebra {
        &self.alg
    }

    pub fn basis_num(&self) -> &IntMat {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn basis_elems(&self) -> Vec<AlgElem> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                self.alg.elem(
                    (0..n)
                        .map(|j| BigRational::new(self.num[(i, j)].clone(), self.den.clone()))
                        .collect(),
                )
            })
            .collect()
    }

    fn basis_rat(&self) -> RatMat {
        let n = self.dim();
        RatMat::from_fn(n, n, |i, j| {
            BigRational::new(self.num[(i, j)].clone(), self.den.clone())
        })
    }

    fn basis_inv(&self) -> &RatMat {
        self.inv.get_or_init(|| {
            self.basis_rat()
                .inverse()
                .expect("lattice basis is full rank")
        })
    }

    /// Coordinates of `a` with respect to this lattice basis (rational).
    pub fn coords_of(&self, a: &AlgElem) -> Vec<BigRational> {
        // Solve c * B = a  =>  c = a * B^{-1}.
        let binv = self.basis_inv();
        binv.vec_mul(a.coords())
    }

    pub fn contains(&self, a: &AlgElem) -> bool {
        self.coords_of(a).iter().all(|c| c.denom().is_one())
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis_elems().iter().all(|b| self.contains(b))
    }

    /// Signed covolume: `det(basis)` as a rational.
    pub fn covolume(&self) -> BigRational {
        let d = self.num.det();
        let n = self.dim() as u32;
        BigRational::new(d, self.den.pow(n))
    }

    /// `[self : other]` for `other <= self`.
    pub fn index_of(&self, other: &Lattice) -> Result<BigInt> {
        if !self.contains_lattice(other) {
            return Err(Error::NotContained);
        }
        let r = (other.covolume() / self.covolume()).abs();
        debug_assert!(r.denom().is_one(), "index must be an integer");
        Ok(r.numer().clone())
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert!(self.alg == other.alg);
        let den = self.den.lcm(&other.den);
        let s1 = &den / &self.den;
        let s2 = &den / &other.den;
        let stacked = self.num.scale(&s1).stack(&other.num.scale(&s2));
        Lattice::from_int_rows(&self.alg, stacked, den).expect("sum of full-rank lattices")
    }

    /// Z-span of all pairwise products of basis elements.
    pub fn mul(&self, other: &Lattice) -> Lattice {
        assert!(self.alg == other.alg);
        let b1 = self.basis_elems();
        let b2 = other.basis_elems();
        let mut rows = Vec::with_capacity(b1.len() * b2.len());
        for x in &b1 {
            for y in &b2 {
                rows.push(x.mul(y).coords().to_vec());
            }
        }
        Lattice::from_rat_rows(&self.alg, &rows).expect("product of full-rank lattices")
    }

    pub fn intersect(&self, other: &Lattice) -> Lattice {
        self.trace_dual().sum(&other.trace_dual()).trace_dual()
    }

    /// Scale by a unit of the algebra.
    pub fn mul_elem(&self, a: &AlgElem) -> Result<Lattice> {
        if !a.is_unit() {
            return Err(Error::ZeroDivisor);
        }
        let rows: Vec<Vec<BigRational>> = self
            .basis_elems()
            .iter()
            .map(|b| b.mul(a).coords().to_vec())
            .collect();
        Lattice::from_rat_rows(&self.alg, &rows)
    }

    pub fn scale_rat(&self, c: &BigRational) -> Lattice {
        assert!(!c.is_zero());
        let num = self.num.scale(&c.numer().abs());
        let den = &self.den * c.denom();
        Lattice::from_int_rows(&self.alg, num, den).expect("scaling keeps full rank")
    }

    pub fn scale_int(&self, c: &BigInt) -> Lattice {
        self.scale_rat(&rat_from_int(c.clone()))
    }

    /// Trace dual `L^t = {x : Tr(x L) <= Z}`: rows of `G^{-1} B` where `G`
    /// is the Gram matrix of the trace form on the basis.
    pub fn trace_dual(&self) -> Lattice {
        let b = self.basis_elems();
        let n = self.dim();
        let gram = RatMat::from_fn(n, n, |i, j| b[i].mul(&b[j]).trace());
        let ginv = gram
            .inverse()
            .unwrap_or_else(|| panic!("degenerate trace form on a squarefree algebra"));
        let rows: Vec<Vec<BigRational>> = (0..n)
            .map(|k| {
                let mut acc = vec![BigRational::zero(); n];
                for j in 0..n {
                    let c = &ginv[(k, j)];
                    if c.is_zero() {
                        continue;
                    }
                    for (i, a) in acc.iter_mut().enumerate() {
                        *a += c * b[j].coords()[i].clone();
                    }
                }
                acc
            })
            .collect();
        Lattice::from_rat_rows(&self.alg, &rows).expect("dual of full-rank lattice")
    }

    /// Colon lattice `(self : other) = {x : x other <= self}`, via
    /// `(L1 : L2) = (L1^t L2)^t`.
    pub fn colon(&self, other: &Lattice) -> Lattice {
        self.trace_dual().mul(other).trace_dual()
    }

    /// Image under the conjugation involution.
    pub fn conjugate(&self, conj: &Conjugation) -> Lattice {
        let rows: Vec<Vec<BigRational>> = self
            .basis_elems()
            .iter()
            .map(|b| conj.apply(b).coords().to_vec())
            .collect();
        Lattice::from_rat_rows(&self.alg, &rows).expect("conjugate of full-rank lattice")
    }

    /// Matrix expressing the basis of `other` in the basis of `self`;
    /// integral exactly when `other <= self`.
    pub fn coords_matrix_of(&self, other: &Lattice) -> RatMat {
        let n = self.dim();
        let rows: Vec<Vec<BigRational>> = other
            .basis_elems()
            .iter()
            .map(|b| self.coords_of(b))
            .collect();
        RatMat::from_fn(n, n, |i, j| rows[i][j].clone())
    }
}
