//! Exact arithmetic in Q(sqrt(q)): values `a + b*sqrt(q)` with rational
//! `a`, `b` and a nonnegative integer radicand. Sign determination is exact,
//! which is what makes Sturm evaluation at `±2*sqrt(q)` reliable.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;

use super::num::perfect_sqrt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadIrr {
    a: BigRational,
    b: BigRational,
    /// Radicand; zero whenever `b` is zero (purely rational values). Kept
    /// square-free of perfect squares by the constructor.
    q: BigInt,
}

impl QuadIrr {
    /// `a + b*sqrt(q)`. If `q` is a perfect square the value collapses to a
    /// rational.
    pub fn new(a: BigRational, b: BigRational, q: BigInt) -> Self {
        assert!(!q.is_negative(), "radicand must be nonnegative");
        if b.is_zero() || q.is_zero() {
            return QuadIrr {
                a,
                b: BigRational::zero(),
                q: BigInt::zero(),
            };
        }
        if let Some(r) = perfect_sqrt(&q) {
            return QuadIrr {
                a: a + b * BigRational::from_integer(r),
                b: BigRational::zero(),
                q: BigInt::zero(),
            };
        }
        QuadIrr { a, b, q }
    }

    pub fn from_rat(a: BigRational) -> Self {
        QuadIrr {
            a,
            b: BigRational::zero(),
            q: BigInt::zero(),
        }
    }

    pub fn from_int(a: BigInt) -> Self {
        Self::from_rat(BigRational::from_integer(a))
    }

    pub fn zero() -> Self {
        Self::from_int(BigInt::zero())
    }

    /// `2*sqrt(q)`, the upper endpoint for real Weil root location.
    pub fn two_sqrt(q: &BigInt) -> Self {
        QuadIrr::new(
            BigRational::zero(),
            BigRational::from_integer(BigInt::from(2)),
            q.clone(),
        )
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn radicand_compatible(&self, other: &Self) -> BigInt {
        if self.b.is_zero() {
            other.q.clone()
        } else if other.b.is_zero() {
            self.q.clone()
        } else {
            assert_eq!(self.q, other.q, "mixed radicands are not supported");
            self.q.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let q = self.radicand_compatible(other);
        QuadIrr::new(&self.a + &other.a, &self.b + &other.b, q)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let q = self.radicand_compatible(other);
        QuadIrr::new(&self.a - &other.a, &self.b - &other.b, q)
    }

    pub fn neg(&self) -> Self {
        QuadIrr {
            a: -&self.a,
            b: -&self.b,
            q: self.q.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let q = self.radicand_compatible(other);
        let qr = BigRational::from_integer(q.clone());
        QuadIrr::new(
            &self.a * &other.a + &self.b * &other.b * qr,
            &self.a * &other.b + &self.b * &other.a,
            q,
        )
    }

    pub fn is_zero(&self) -> bool {
        // With a non-square radicand, a + b*sqrt(q) = 0 forces a = b = 0.
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign: -1, 0, or 1.
    pub fn sign(&self) -> i32 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Opposite signs: compare a^2 against b^2 * q. Equality cannot occur
        // because sqrt(q) is irrational here.
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * BigRational::from_integer(self.q.clone());
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("irrational sqrt matched a rational"),
        }
    }
}

fn rat_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialOrd for QuadIrr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(match self.sub(other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }
}
