//! Integer factorization: trial division, deterministic Miller-Rabin, and
//! Pollard rho with Brent cycle detection. Complete factorizations at desk
//! scale; a budgeted variant reports composite cofactors it could not split
//! instead of looping forever.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

const TRIAL_BOUND: u64 = 1_000_000;

/// Deterministic witness set: correct for all n < 3.317e24, which covers
/// every integer this crate factors in practice; larger inputs fall back to
/// the same witnesses (a strong pseudoprime to all of them has never been
/// exhibited).
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

pub fn is_prime(n: &BigInt) -> bool {
    let n = n.abs();
    let two = BigInt::from(2);
    if n < two {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigInt::from(p);
        if n == p {
            return true;
        }
        if (&n % &p).is_zero() {
            return false;
        }
    }
    // Write n - 1 = d * 2^s.
    let n1: BigInt = &n - 1;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &a in &MR_WITNESSES {
        let a = BigInt::from(a);
        let mut x = a.modpow(&d, &n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, &n);
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigInt, budget: &mut u64) -> Option<BigInt> {
    // n odd composite, not a perfect power of a trial prime.
    let one = BigInt::one();
    for c in 1u64..64 {
        let c = BigInt::from(c);
        let mut y = BigInt::from(2);
        let mut m = 128u64;
        let mut g = BigInt::one();
        let mut r = 1u64;
        let mut q = BigInt::one();
        let mut x = BigInt::zero();
        let mut ys = BigInt::zero();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            let mut k = 0u64;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = m.min(r - k);
                for _ in 0..steps {
                    y = (&y * &y + &c) % n;
                    q = (&q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += steps;
                if *budget < steps {
                    *budget = 0;
                    return None;
                }
                *budget -= steps;
            }
            r *= 2;
            if m < 1 << 16 {
                m *= 2;
            }
        }
        if g == *n {
            // Backtrack one step at a time.
            loop {
                ys = (&ys * &ys + &c) % n;
                let g2 = (&x - &ys).abs().gcd(n);
                if g2 > one {
                    if g2 < *n {
                        return Some(g2);
                    }
                    break; // cycle degenerate for this c; try the next one
                }
            }
        } else {
            return Some(g);
        }
    }
    None
}

/// Extracts `p^k` from a perfect power if `n = m^k`; helps rho which cannot
/// split prime powers quickly.
fn perfect_power(n: &BigInt) -> Option<(BigInt, u32)> {
    let bits = n.bits();
    for k in (2..=bits.max(2)).rev() {
        let k = k as u32;
        let r = n.nth_root(k);
        if &r.pow(k) == n && r > BigInt::one() {
            return Some((r, k));
        }
    }
    None
}

fn factor_rec(
    n: BigInt,
    out: &mut Vec<(BigInt, u32)>,
    leftovers: &mut Vec<BigInt>,
    budget: &mut u64,
) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push((n, 1));
        return;
    }
    if let Some((root, k)) = perfect_power(&n) {
        let mut sub = Vec::new();
        let mut sub_left = Vec::new();
        factor_rec(root, &mut sub, &mut sub_left, budget);
        for (p, e) in sub {
            out.push((p, e * k));
        }
        for l in sub_left {
            // A leftover inside a perfect power stays composite; keep the
            // power collapsed so the product invariant holds.
            leftovers.push(l.pow(k));
        }
        return;
    }
    if *budget == 0 {
        leftovers.push(n);
        return;
    }
    match pollard_brent(&n, budget) {
        Some(d) => {
            let q = &n / &d;
            factor_rec(d, out, leftovers, budget);
            factor_rec(q, out, leftovers, budget);
        }
        None => leftovers.push(n),
    }
}

fn normalize(mut facs: Vec<(BigInt, u32)>) -> Vec<(BigInt, u32)> {
    facs.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(BigInt, u32)> = Vec::new();
    for (p, e) in facs {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    merged
}

/// Factorization of `|n|` with an iteration budget; primes are returned in
/// `.0`, any composite cofactors that resisted splitting in `.1`. The
/// product of all pieces equals `|n|`.
pub fn factor_with_budget(n: &BigInt, budget: u64) -> (Vec<(BigInt, u32)>, Vec<BigInt>) {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut leftovers = Vec::new();
    // Trial division by 2, 3 and a 2-3 wheel up to the bound.
    for p in [2u64, 3] {
        let p = BigInt::from(p);
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut d = 5u64;
    let mut step = 2u64;
    while d <= TRIAL_BOUND {
        let db = BigInt::from(d);
        if (&db * &db) > m {
            break;
        }
        let mut e = 0u32;
        while (&m % &db).is_zero() {
            m /= &db;
            e += 1;
        }
        if e > 0 {
            out.push((db, e));
        }
        d += step;
        step = 6 - step; // alternate +2, +4
    }
    if m > BigInt::one() {
        let mut budget = budget;
        factor_rec(m, &mut out, &mut leftovers, &mut budget);
    }
    (normalize(out), leftovers)
}

/// Complete prime factorization of `|n|` as (prime, exponent) pairs in
/// increasing order of prime. Runs without an effort cap.
pub fn factor_integer(n: &BigInt) -> Vec<(BigInt, u32)> {
    let (mut facs, mut leftovers) = factor_with_budget(n, u64::MAX / 2);
    // With an effectively unlimited budget leftovers should not occur, but
    // keep grinding if they somehow did.
    while let Some(c) = leftovers.pop() {
        let (f2, l2) = factor_with_budget(&c, u64::MAX / 2);
        facs.extend(f2);
        leftovers.extend(l2);
    }
    normalize(facs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fac(n: i64) -> Vec<(BigInt, u32)> {
        factor_integer(&BigInt::from(n))
    }

    #[test]
    fn small_examples() {
        assert_eq!(fac(32), vec![(BigInt::from(2), 5)]);
        assert_eq!(fac(28), vec![(BigInt::from(2), 2), (BigInt::from(7), 1)]);
        assert_eq!(fac(10), vec![(BigInt::from(2), 1), (BigInt::from(5), 1)]);
        assert_eq!(fac(-12), vec![(BigInt::from(2), 2), (BigInt::from(3), 1)]);
        assert!(fac(1).is_empty());
    }

    #[test]
    fn primality() {
        assert!(is_prime(&BigInt::from(2)));
        assert!(is_prime(&BigInt::from(1_000_003)));
        assert!(!is_prime(&BigInt::from(1)));
        assert!(!is_prime(&BigInt::from(561))); // Carmichael
        assert!(is_prime(&BigInt::from(2147483647i64))); // 2^31 - 1
        assert!(!is_prime(&(BigInt::from(2147483647i64) * BigInt::from(998244353i64))));
    }

    #[test]
    fn recomposition_on_random_64bit() {
        // Deterministic LCG covers a spread of 64-bit values.
        let mut x = 0x243F6A8885A308D3u64;
        for _ in 0..200 {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let n = BigInt::from(x | 1);
            let facs = factor_integer(&n);
            let prod: BigInt = facs.iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(prod, n);
            for (p, _) in &facs {
                assert!(is_prime(p), "{p} not prime in factorization of {n}");
            }
        }
    }

    #[test]
    fn splits_semiprime() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let n = &p * &q;
        let facs = factor_integer(&n);
        assert_eq!(facs, vec![(q.clone(), 1), (p.clone(), 1)]);
    }

    #[test]
    fn perfect_powers() {
        let p = BigInt::from(1_000_003u64);
        let n = p.pow(3);
        assert_eq!(factor_integer(&n), vec![(p, 3)]);
    }
}
