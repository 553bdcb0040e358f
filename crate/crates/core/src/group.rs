//! Finite abelian groups as invariant-factor chains `d_1 | d_2 | ... | d_k`
//! with every `d_i >= 2`. The trivial group has an empty chain.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::num::valuation;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbGroup {
    /// Ascending divisibility chain, no factor 1.
    factors: Vec<BigInt>,
}

impl AbGroup {
    pub fn trivial() -> AbGroup {
        AbGroup { factors: vec![] }
    }

    pub fn cyclic(n: &BigInt) -> AbGroup {
        assert!(n.is_positive(), "group order must be positive");
        if n.is_one() {
            AbGroup::trivial()
        } else {
            AbGroup {
                factors: vec![n.clone()],
            }
        }
    }

    /// From Smith normal form output (drops unit factors, checks the chain).
    pub fn from_invariant_factors(mut factors: Vec<BigInt>) -> AbGroup {
        factors.retain(|d| !d.is_one());
        for w in factors.windows(2) {
            assert!(
                (&w[1] % &w[0]).is_zero(),
                "invariant factors must form a divisibility chain"
            );
        }
        AbGroup { factors }
    }

    /// Combines per-prime partitions (exponent multisets) into invariant
    /// factors: the k-th largest factor takes the k-th largest exponent of
    /// each prime.
    pub fn from_primary_parts(parts: &BTreeMap<BigInt, Vec<u32>>) -> AbGroup {
        let max_len = parts.values().map(|v| v.len()).max().unwrap_or(0);
        let mut factors = Vec::with_capacity(max_len);
        for k in 0..max_len {
            let mut d = BigInt::one();
            for (p, exps) in parts {
                // exps ascending; align from the top.
                let mut sorted = exps.clone();
                sorted.sort_unstable();
                let idx = sorted.len() as isize - 1 - (max_len - 1 - k) as isize;
                if idx >= 0 {
                    d *= p.pow(sorted[idx as usize]);
                }
            }
            if !d.is_one() {
                factors.push(d);
            }
        }
        AbGroup { factors }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> BigInt {
        self.factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// Exponents of `p` in the invariant factors (ascending, zeros dropped):
    /// the partition describing the p-primary part.
    pub fn primary_part(&self, p: &BigInt) -> Vec<u32> {
        self.factors
            .iter()
            .filter_map(|d| {
                let v = valuation(d, p) as u32;
                if v > 0 {
                    Some(v)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Direct product.
    pub fn product(&self, other: &AbGroup) -> AbGroup {
        let mut parts: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
        for g in [self, other] {
            for d in &g.factors {
                for (p, e) in crate::arith::factor_integer(d) {
                    parts.entry(p).or_default().push(e);
                }
            }
        }
        AbGroup::from_primary_parts(&parts)
    }
}

impl std::fmt::Display for AbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{}", d)).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn canonical_chain() {
        let g = AbGroup::from_invariant_factors(vec![bi(1), bi(2), bi(4)]);
        assert_eq!(g.invariant_factors(), &[bi(2), bi(4)]);
        assert_eq!(g.order(), bi(8));
        assert_eq!(g.exponent(), bi(4));
        assert!(!g.is_cyclic());
        assert_eq!(g.to_string(), "Z/2 x Z/4");
        assert!(AbGroup::cyclic(&bi(1)).is_trivial());
        assert_eq!(AbGroup::trivial().exponent(), bi(1));
    }

    #[test]
    fn primary_combination() {
        // 2-part (1, 3), 7-part (1) -> Z/2 x Z/56
        let mut parts = BTreeMap::new();
        parts.insert(bi(2), vec![1, 3]);
        parts.insert(bi(7), vec![1]);
        let g = AbGroup::from_primary_parts(&parts);
        assert_eq!(g.invariant_factors(), &[bi(2), bi(56)]);
        assert_eq!(g.primary_part(&bi(2)), vec![1, 3]);
        assert_eq!(g.primary_part(&bi(7)), vec![1]);
    }

    #[test]
    fn products() {
        let a = AbGroup::cyclic(&bi(28));
        let b = AbGroup::cyclic(&bi(2));
        let c = a.product(&b);
        assert_eq!(c.invariant_factors(), &[bi(2), bi(28)]);
        assert_eq!(c.order(), bi(56));
    }
}
