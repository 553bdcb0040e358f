//! The etale algebra `K = Q[x]/(h)` for a monic squarefree integer
//! polynomial `h`, with exact element arithmetic in the power basis.
//!
//! `h` is never factored: even when `K` splits as a product of fields, every
//! computation is basis-level linear algebra over Q. Inversion solves
//! `M_a v = e_1`; a singular multiplication matrix signals a zero divisor.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::num::{factorial, rat_from_int};
use crate::arith::{IntPoly, RatMat, RatPoly};
use crate::{Error, Result};

#[derive(Debug)]
struct AlgebraData {
    h: IntPoly,
    dim: usize,
    /// `x^k` reduced mod `h`, for `0 <= k <= 2*(dim-1)`; integer coordinates
    /// since `h` is monic.
    xpow: Vec<Vec<BigInt>>,
    /// `Tr(x^k)` for `0 <= k <= 2*(dim-1)`, from Newton's identities.
    trace_pow: Vec<BigInt>,
}

/// Handle to `Q[x]/(h)`; cheap to clone and share.
#[derive(Clone, Debug)]
pub struct EtaleAlgebra {
    data: Arc<AlgebraData>,
}

impl PartialEq for EtaleAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.h == other.data.h
    }
}
impl Eq for EtaleAlgebra {}

impl EtaleAlgebra {
    /// Builds `Q[x]/(h)` for monic `h` of degree >= 1; rejects non-squarefree
    /// input.
    pub fn new(h: IntPoly) -> Result<Self> {
        let dim = match h.degree() {
            Some(d) if d >= 1 => d,
            _ => {
                return Err(Error::NotWeil {
                    reason: "defining polynomial must have degree >= 1".into(),
                })
            }
        };
        assert!(h.is_monic(), "defining polynomial must be monic");
        if !h.is_squarefree() {
            return Err(Error::NotSquarefree);
        }

        // x^k mod h by repeated shift-and-reduce.
        let top = 2 * dim.saturating_sub(1);
        let mut xpow: Vec<Vec<BigInt>> = Vec::with_capacity(top + 1);
        let mut cur = vec![BigInt::zero(); dim];
        cur[0] = BigInt::one();
        xpow.push(cur.clone());
        for _ in 1..=top {
            // multiply by x: shift up; reduce the overflow with h.
            let overflow = cur[dim - 1].clone();
            let mut next = vec![BigInt::zero(); dim];
            for i in (1..dim).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !overflow.is_zero() {
                for (i, n) in next.iter_mut().enumerate() {
                    *n -= &overflow * &h.coeff(i);
                }
            }
            xpow.push(next.clone());
            cur = next;
        }

        // Newton's identities: p_k = Tr(x^k).
        let mut trace_pow = Vec::with_capacity(top + 1);
        trace_pow.push(BigInt::from(dim as i64));
        let c = |i: usize| h.coeff(i); // h = x^n + c_{n-1} x^{n-1} + ... + c_0
        for k in 1..=top {
            let mut pk = BigInt::zero();
            for i in 1..k.min(dim) {
                pk -= &c(dim - i) * &trace_pow[k - i];
            }
            if k <= dim {
                pk -= BigInt::from(k as i64) * c(dim - k);
            } else {
                for i in k.min(dim)..=dim.min(k) {
                    // only i = dim remains when k > dim
                    pk -= &c(dim - i) * &trace_pow[k - i];
                }
            }
            trace_pow.push(pk);
        }

        Ok(EtaleAlgebra {
            data: Arc::new(AlgebraData {
                h,
                dim,
                xpow,
                trace_pow,
            }),
        })
    }

    pub fn h(&self) -> &IntPoly {
        &self.data.h
    }

    pub fn dim(&self) -> usize {
        self.data.dim
    }

    pub fn zero(&self) -> AlgElem {
        AlgElem {
            alg: self.clone(),
            coords: vec![BigRational::zero(); self.dim()],
        }
    }

    pub fn one(&self) -> AlgElem {
        self.from_int(BigInt::one())
    }

    pub fn from_int(&self, c: BigInt) -> AlgElem {
        self.from_rat(rat_from_int(c))
    }

    pub fn from_rat(&self, c: BigRational) -> AlgElem {
        let mut coords = vec![BigRational::zero(); self.dim()];
        coords[0] = c;
        AlgElem {
            alg: self.clone(),
            coords,
        }
    }

    /// The class of `x` (pi, for Weil algebras).
    pub fn gen(&self) -> AlgElem {
        if self.dim() == 1 {
            return self.from_rat(rat_from_int(-self.data.h.coeff(0)));
        }
        let mut coords = vec![BigRational::zero(); self.dim()];
        coords[1] = BigRational::one();
        AlgElem {
            alg: self.clone(),
            coords,
        }
    }

    pub fn elem(&self, coords: Vec<BigRational>) -> AlgElem {
        assert_eq!(coords.len(), self.dim(), "coordinate length mismatch");
        AlgElem {
            alg: self.clone(),
            coords,
        }
    }

    pub fn elem_from_int_coords(&self, coords: &[BigInt]) -> AlgElem {
        self.elem(coords.iter().cloned().map(rat_from_int).collect())
    }

    /// The element represented by an integer polynomial in `x`.
    pub fn elem_from_poly(&self, p: &IntPoly) -> AlgElem {
        let mut acc = self.zero();
        let mut xp = self.one();
        let x = self.gen();
        for c in p.coeffs() {
            if !c.is_zero() {
                acc = acc.add(&xp.scale(&rat_from_int(c.clone())));
            }
            xp = xp.mul(&x);
        }
        acc
    }

    fn trace_of_coords(&self, coords: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += c * rat_from_int(self.data.trace_pow[i].clone());
        }
        acc
    }
}

/// Element of an [`EtaleAlgebra`] in power-basis coordinates.
#[derive(Clone, Debug)]
pub struct AlgElem {
    alg: EtaleAlgebra,
    coords: Vec<BigRational>,
}

impl PartialEq for AlgElem {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg && self.coords == other.coords
    }
}
impl Eq for AlgElem {}

impl AlgElem {
    pub fn algebra(&self) -> &EtaleAlgebra {
        &self.alg
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn check_same(&self, other: &AlgElem) -> Result<()> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &AlgElem) -> AlgElem {
        self.check_same(other).expect("algebra mismatch");
        self.alg.elem(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &AlgElem) -> AlgElem {
        self.check_same(other).expect("algebra mismatch");
        self.alg.elem(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> AlgElem {
        self.alg.elem(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, c: &BigRational) -> AlgElem {
        self.alg.elem(self.coords.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &AlgElem) -> AlgElem {
        self.check_same(other).expect("algebra mismatch");
        let n = self.alg.dim();
        let mut conv = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        let mut out = vec![BigRational::zero(); n];
        for (k, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let t = &self.alg.data.xpow[k][i];
                if t.is_zero() {
                    continue;
                }
                *o += &c * rat_from_int(t.clone());
            }
        }
        self.alg.elem(out)
    }

    pub fn pow_usize(&self, e: usize) -> AlgElem {
        let mut acc = self.alg.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Matrix of multiplication by `self`; column `j` holds the coordinates
    /// of `self * x^j`.
    pub fn mult_matrix(&self) -> RatMat {
        let n = self.alg.dim();
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(n);
        let mut cur = self.clone();
        cols.push(cur.coords.clone());
        for _ in 1..n {
            cur = cur.mul(&self.alg.gen());
            cols.push(cur.coords.clone());
        }
        RatMat::from_fn(n, n, |i, j| cols[j][i].clone())
    }

    /// Multiplicative inverse; a singular multiplication matrix means the
    /// element is a zero divisor.
    pub fn inv(&self) -> Result<AlgElem> {
        let m = self.mult_matrix();
        let minv = m.inverse().ok_or(Error::ZeroDivisor)?;
        let n = self.alg.dim();
        let mut e1 = vec![BigRational::zero(); n];
        e1[0] = BigRational::one();
        let v = minv.mul_vec(&e1);
        Ok(self.alg.elem(v))
    }

    pub fn trace(&self) -> BigRational {
        self.alg.trace_of_coords(&self.coords)
    }

    pub fn norm(&self) -> BigRational {
        self.mult_matrix().det()
    }

    /// Characteristic polynomial `det(X*I - M_self)`, monic of degree `dim`.
    pub fn charpoly(&self) -> RatPoly {
        self.mult_matrix().charpoly()
    }

    pub fn is_unit(&self) -> bool {
        !self.norm().is_zero()
    }
}

/// The involution `x -> q/x` of a q-symmetric algebra (complex conjugation
/// on a Weil algebra). Validated at construction: the defining polynomial
/// must satisfy `a_{2g-i} = q^{g-i} a_i` and have a unit `x`.
#[derive(Clone, Debug)]
pub struct Conjugation {
    alg: EtaleAlgebra,
    q: BigInt,
    /// Images of the power basis: `conj(x^i)` for `0 <= i < dim`.
    basis_images: Vec<AlgElem>,
}

impl Conjugation {
    pub fn new(alg: &EtaleAlgebra, q: &BigInt) -> Result<Self> {
        let h = alg.h();
        let n = alg.dim();
        if !n.is_multiple_of(2) {
            return Err(Error::NotQSymmetric { q: q.clone() });
        }
        let g = n / 2;
        if h.coeff(0).is_zero() {
            return Err(Error::ZeroDivisor);
        }
        // Coefficientwise functional equation h(q/x) x^{2g} / q^g = h:
        // the low coefficient a_i equals q^{g-i} times the high one a_{2g-i}.
        for i in 0..=g {
            let lhs = h.coeff(i);
            let rhs = q.pow((g - i) as u32) * h.coeff(2 * g - i);
            if lhs != rhs {
                return Err(Error::NotQSymmetric { q: q.clone() });
            }
        }
        let pi = alg.gen();
        let pibar = pi.inv()?.scale(&rat_from_int(q.clone()));
        let mut basis_images = Vec::with_capacity(n);
        let mut cur = alg.one();
        basis_images.push(cur.clone());
        for _ in 1..n {
            cur = cur.mul(&pibar);
            basis_images.push(cur.clone());
        }
        Ok(Conjugation {
            alg: alg.clone(),
            q: q.clone(),
            basis_images,
        })
    }

    pub fn algebra(&self) -> &EtaleAlgebra {
        &self.alg
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// `conj(x) = q/x`.
    pub fn pibar(&self) -> AlgElem {
        self.basis_images[1.min(self.basis_images.len() - 1)].clone()
    }

    pub fn apply(&self, a: &AlgElem) -> AlgElem {
        assert!(a.algebra() == &self.alg, "algebra mismatch");
        let mut out = self.alg.zero();
        for (c, img) in a.coords.iter().zip(&self.basis_images) {
            if c.is_zero() {
                continue;
            }
            out = out.add(&img.scale(c));
        }
        out
    }
}

/// `h_{b*a+c}(x) = b^r h_a(x/b - c/b)`: the characteristic polynomial of an
/// affine transform of `a`, computed from `charpoly(a)` alone.
pub fn transformed_charpoly(a: &AlgElem, b: &BigRational, c: &BigRational) -> RatPoly {
    assert!(!b.is_zero(), "affine scale must be nonzero");
    let ha = a.charpoly();
    let r = ha.degree().unwrap_or(0);
    // sum_i a_i b^{r-i} (x - c)^i
    let mut acc = RatPoly::zero();
    let xc = RatPoly::new(vec![-c.clone(), BigRational::one()]);
    let mut xc_pow = RatPoly::one();
    for (i, ai) in ha.coeffs().iter().enumerate() {
        if !ai.is_zero() {
            let scale = ai * pow_rat(b, (r - i) as u32);
            acc = acc.add(&xc_pow.scale(&scale));
        }
        if i < r {
            xc_pow = xc_pow.mul(&xc);
        }
    }
    acc
}

/// `h_{1/a}(x) = x^r h_a(1/x) / h_a(0)`: the reverse of `h_a / h_a(0)`.
pub fn reciprocal_charpoly(a: &AlgElem) -> Result<RatPoly> {
    let ha = a.charpoly();
    let c0 = ha.coeff(0);
    if c0.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    Ok(ha.reverse().scale(&(BigRational::one() / c0)))
}

/// Characteristic polynomial of `d/(1-a)` by the closed-form coefficient
/// formula `a_i = (-1)^{r+i} d^{r-i} h_a^{(r-i)}(1) / ((r-i)! h_a(1))`.
pub fn charpoly_scaled_inverse(a: &AlgElem, d: &BigRational) -> Result<RatPoly> {
    assert!(!d.is_zero(), "scale must be nonzero");
    let ha = a.charpoly();
    let r = ha.degree().unwrap_or(0);
    let one = BigRational::one();
    let h1 = ha.eval(&one);
    if h1.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    // Derivative values h^{(k)}(1) for k = 0..r.
    let mut derivs = Vec::with_capacity(r + 1);
    let mut cur = ha;
    derivs.push(cur.eval(&one));
    for _ in 1..=r {
        cur = cur.derivative();
        derivs.push(cur.eval(&one));
    }
    let mut coeffs = Vec::with_capacity(r + 1);
    for i in 0..=r {
        let k = r - i;
        let sign = if (r + i).is_multiple_of(2) {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        let num = sign * pow_rat(d, k as u32) * &derivs[k];
        let den = rat_from_int(factorial(k)) * &h1;
        coeffs.push(num / den);
    }
    Ok(RatPoly::new(coeffs))
}

fn pow_rat(b: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= b;
    }
    acc
}
