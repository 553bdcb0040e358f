//! Exact real-root counting via Sturm chains, with quadratic-irrational
//! interval endpoints so that boundary roots at `±2*sqrt(q)` are decided
//! exactly.

use super::poly::{IntPoly, RatPoly};
use super::quad::QuadIrr;
use num_rational::BigRational;
use num_traits::{One, Signed};

fn sturm_chain(p: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push(r.neg());
    }
}

fn sign_variations(chain: &[RatPoly], x: &QuadIrr) -> usize {
    let mut count = 0usize;
    let mut last = 0i32;
    for p in chain {
        let s = p.eval_quad(x).sign();
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of **distinct** real roots of `g` in the closed interval
/// `[lo, hi]` (multiplicities collapsed: the squarefree part is counted).
pub fn count_real_roots(g: &IntPoly, lo: &QuadIrr, hi: &QuadIrr) -> usize {
    assert!(!g.is_zero(), "root counting needs a nonzero polynomial");
    assert!(lo <= hi, "empty interval");
    if g.degree() == Some(0) {
        return 0;
    }
    let grat = g.to_rat();
    let gcd = RatPoly::gcd(&grat, &grat.derivative());
    let (sqfree, r) = grat.div_rem(&gcd);
    debug_assert!(r.is_zero());
    let chain = sturm_chain(&sqfree);
    // V(lo) - V(hi) counts roots in the half-open interval (lo, hi]; a root
    // exactly at lo is added back for the closed interval.
    let open = sign_variations(&chain, lo) - sign_variations(&chain, hi);
    let at_lo = usize::from(sqfree.eval_quad(lo).is_zero());
    open + at_lo
}

/// Distinct real roots over the whole line, using a Cauchy bound as the
/// interval.
pub fn count_real_roots_everywhere(g: &IntPoly) -> usize {
    assert!(!g.is_zero());
    if g.degree() == Some(0) {
        return 0;
    }
    let lead = g.leading().unwrap().abs();
    let max = g
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap();
    let bound = BigRational::new(max, lead) + BigRational::one();
    let hi = QuadIrr::from_rat(bound.clone());
    let lo = QuadIrr::from_rat(-bound);
    count_real_roots(g, &lo, &hi)
}
