//! Univariate polynomials over Z and Q, coefficients stored lowest degree
//! first with no trailing zeros (the zero polynomial has an empty vector).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::quad::QuadIrr;

/// Polynomial with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

fn trim_int(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn trim_rat(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        IntPoly {
            coeffs: trim_int(coeffs),
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn x() -> Self {
        IntPoly {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// Index of the last nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_quad(&self, x: &QuadIrr) -> QuadIrr {
        let mut acc = QuadIrr::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&QuadIrr::from_int(c.clone()));
        }
        acc
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new(
            (0..n)
                .map(|i| self.coeff(i) + other.coeff(i))
                .collect(),
        )
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new(
            (0..n)
                .map(|i| self.coeff(i) - other.coeff(i))
                .collect(),
        )
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(c0 + c1*x)`, expanded exactly.
    pub fn compose_linear(&self, c0: &BigInt, c1: &BigInt) -> IntPoly {
        let mut acc = IntPoly::zero();
        let lin = IntPoly::new(vec![c0.clone(), c1.clone()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&IntPoly::constant(c.clone()));
        }
        acc
    }

    /// Coefficients reversed: `x^deg * p(1/x)`.
    pub fn reverse(&self) -> IntPoly {
        let mut v = self.coeffs.clone();
        v.reverse();
        IntPoly::new(v)
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// True when `gcd(p, p')` is constant, i.e. `p` has no repeated roots.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        if self.degree() == Some(0) {
            return true;
        }
        let g = RatPoly::gcd(&self.to_rat(), &self.derivative().to_rat());
        g.degree() == Some(0)
    }
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{}", a)?,
                1 if a.is_one() => write!(f, "x")?,
                1 => write!(f, "{}*x", a)?,
                _ if a.is_one() => write!(f, "x^{}", i)?,
                _ => write!(f, "{}*x^{}", a, i)?,
            }
            first = false;
        }
        Ok(())
    }
}

impl RatPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        RatPoly {
            coeffs: trim_rat(coeffs),
        }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RatPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_quad(&self, x: &QuadIrr) -> QuadIrr {
        let mut acc = QuadIrr::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&QuadIrr::from_rat(c.clone()));
        }
        acc
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let c = &rem[k] / &lead;
            if !c.is_zero() {
                quot[k - dd] = c.clone();
                for i in 0..=dd {
                    let t = &c * &d.coeffs[i];
                    rem[k - dd + i] -= t;
                }
            }
            rem.pop();
        }
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Monic gcd (Euclid over Q); gcd(0, 0) = 0.
    pub fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scaled so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> RatPoly {
        match self.leading() {
            None => RatPoly::zero(),
            Some(l) => {
                let inv = BigRational::one() / l;
                self.scale(&inv)
            }
        }
    }

    /// `p(c0 + c1*x)` for rational `c0`, `c1`.
    pub fn compose_linear(&self, c0: &BigRational, c1: &BigRational) -> RatPoly {
        let mut acc = RatPoly::zero();
        let lin = RatPoly::new(vec![c0.clone(), c1.clone()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&RatPoly::constant(c.clone()));
        }
        acc
    }

    pub fn reverse(&self) -> RatPoly {
        let mut v = self.coeffs.clone();
        v.reverse();
        RatPoly::new(v)
    }

    /// Converts to an integer polynomial when every coefficient is integral.
    pub fn to_int(&self) -> Option<IntPoly> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.denom().is_one() {
                return None;
            }
            out.push(c.numer().clone());
        }
        Some(IntPoly::new(out))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }
}
