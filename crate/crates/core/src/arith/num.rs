//! Small helpers on big integers and rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `ord_p(n)`: the exponent of `p` in `n`. Panics for `n = 0` (infinite valuation).
pub fn valuation(n: &BigInt, p: &BigInt) -> u64 {
    assert!(!n.is_zero(), "valuation of zero is infinite");
    let mut v = 0u64;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        m = q;
    }
}

/// Exact integer square root test.
pub fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Writes `q = p^a` with `p` prime, if possible.
pub fn prime_power(q: &BigInt) -> Option<(BigInt, u32)> {
    if q <= &BigInt::one() {
        return None;
    }
    let facs = super::factor::factor_integer(q);
    if facs.len() == 1 {
        let (p, a) = facs.into_iter().next().unwrap();
        Some((p, a))
    } else {
        None
    }
}

/// Radical of `|n|`: the product of its distinct prime divisors.
pub fn radical(n: &BigInt) -> BigInt {
    super::factor::factor_integer(n)
        .into_iter()
        .map(|(p, _)| p)
        .product()
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= BigInt::from(k);
    }
    f
}

pub fn rat_is_integer(r: &BigRational) -> bool {
    r.denom().is_one()
}

pub fn rat_from_int(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation_basic() {
        let two = BigInt::from(2);
        assert_eq!(valuation(&BigInt::from(32), &two), 5);
        assert_eq!(valuation(&BigInt::from(-12), &two), 2);
        assert_eq!(valuation(&BigInt::from(7), &two), 0);
    }

    #[test]
    fn prime_power_detects() {
        assert_eq!(
            prime_power(&BigInt::from(8)),
            Some((BigInt::from(2), 3u32))
        );
        assert_eq!(
            prime_power(&BigInt::from(5)),
            Some((BigInt::from(5), 1u32))
        );
        assert_eq!(prime_power(&BigInt::from(6)), None);
        assert_eq!(prime_power(&BigInt::from(1)), None);
    }

    #[test]
    fn sqrt_test() {
        assert_eq!(perfect_sqrt(&BigInt::from(49)), Some(BigInt::from(7)));
        assert_eq!(perfect_sqrt(&BigInt::from(50)), None);
        assert_eq!(perfect_sqrt(&BigInt::from(-4)), None);
    }
}
