//! Group structures of rational points through ideal quotients.
//!
//! `A(F_{q^n})` is computed as `I/(1-pi^n)I` via the Smith normal form of
//! the matrix expressing an `(1-pi^n)I` basis in an `I` basis. The validity
//! of the identification `A(F_{q^n}) = S/(1-pi^n)S` for every variety with
//! `End = S` depends on local Cohen-Macaulay types; the `ClaimBasis` enum
//! keeps that epistemic status machine-checkable.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::IntMat;
use crate::etale::AlgElem;
use crate::group::AbGroup;
use crate::lattice::Lattice;
use crate::order::{sublattices_between, Order, OrderPrime};
use crate::weil::ClassData;
use crate::{Error, Result};

/// `I/rI` as an abstract abelian group (Smith normal form of the
/// change-of-basis matrix). Requires `rI <= I`, i.e. `r` in the
/// multiplicator ring.
pub fn quotient_group(ideal: &Lattice, r: &AlgElem) -> Result<AbGroup> {
    if r.norm().is_zero() {
        return Err(Error::ZeroDivisor);
    }
    let ri = ideal.mul_elem(r)?;
    let m = ideal.coords_matrix_of(&ri);
    let n = ideal.dim();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let c = &m[(i, j)];
            if !c.denom().is_one() {
                return Err(Error::NotContained);
            }
            data.push(c.numer().clone());
        }
    }
    let (factors, rank) = IntMat::new(n, n, data).snf();
    debug_assert_eq!(rank, n, "r is a unit so rI has full rank");
    let group = AbGroup::from_invariant_factors(factors);
    debug_assert_eq!(group.order(), r.norm().abs().to_integer());
    Ok(group)
}

/// Whose theorem backs the claim that the computed group is the group of
/// rational points of **every** variety with the given endomorphism ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClaimBasis {
    /// Maximal endomorphism ring: holds unconditionally.
    UnconditionalMaximalOrder,
    /// Gorenstein at every prime containing `1 - pi^n` (module-level
    /// identification).
    GorensteinThm,
    /// Types at most 2 at those primes, under the Ord/CS functor regime
    /// (Z-module identification).
    Type2Thm,
    /// No theorem applies: the value is the quotient for the ideal `S`
    /// itself and other varieties with the same endomorphism ring may have
    /// different groups.
    IdealQuotient,
}

/// Functor regime for the categorical equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctorRegime {
    /// Ordinary isogeny class.
    Ord,
    /// Prime base field.
    Cs,
    /// Neither; only Gorenstein-based claims are available.
    None,
}

pub fn functor_regime(c: &ClassData) -> FunctorRegime {
    if c.weil().is_ordinary() {
        FunctorRegime::Ord
    } else if c.weil().q_exponent() == 1 {
        FunctorRegime::Cs
    } else {
        FunctorRegime::None
    }
}

/// Local data recorded for each prime hypothesis check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeTypeRecord {
    pub p: BigInt,
    pub residue_degree: usize,
    pub cm_type: u32,
}

#[derive(Clone, Debug)]
pub struct PointsResult {
    pub group: AbGroup,
    pub basis: ClaimBasis,
    pub regime: FunctorRegime,
    pub hypotheses: Vec<PrimeTypeRecord>,
    /// Set when no rigidity theorem applies (`IdealQuotient` basis).
    pub warning: bool,
}

/// Group of `F_{q^n}`-points for varieties with `End = S`, with the basis
/// of the claim: Gorenstein types give an unconditional identification,
/// types at most 2 need the Ord/CS regime, anything else is only the
/// quotient of the ideal `S` itself.
pub fn group_from_order(c: &ClassData, s: &Order, n: u32) -> Result<PointsResult> {
    assert!(
        s.contains_order(c.frobenius_order()),
        "S must contain R = Z[pi, pibar]"
    );
    let r_elem = c.one_minus_pi_pow(n);
    let ideal = s.lattice().mul_elem(&r_elem)?;
    let primes = s.primes_containing(&ideal)?;
    let mut hypotheses = Vec::with_capacity(primes.len());
    let mut max_type = 0u32;
    for pr in &primes {
        let t = s.cm_type_at(pr);
        max_type = max_type.max(t);
        hypotheses.push(PrimeTypeRecord {
            p: pr.p().clone(),
            residue_degree: pr.residue_degree(),
            cm_type: t,
        });
    }
    let regime = functor_regime(c);
    let is_maximal = match c.maximal_order() {
        Ok(ok) => ok.lattice() == s.lattice(),
        Err(_) => false,
    };
    let basis = if is_maximal {
        ClaimBasis::UnconditionalMaximalOrder
    } else if max_type <= 1 {
        ClaimBasis::GorensteinThm
    } else if max_type == 2 && regime != FunctorRegime::None {
        ClaimBasis::Type2Thm
    } else {
        ClaimBasis::IdealQuotient
    };
    let group = quotient_group(s.lattice(), &r_elem)?;
    Ok(PointsResult {
        group,
        basis,
        regime,
        hypotheses,
        warning: basis == ClaimBasis::IdealQuotient,
    })
}

/// The ideal of the dual variety: conjugate then trace dual (the order of
/// the two operations does not matter; checked).
pub fn dual_ideal(c: &ClassData, ideal: &Lattice) -> Lattice {
    let a = ideal.conjugate(c.conjugation()).trace_dual();
    debug_assert_eq!(a, ideal.trace_dual().conjugate(c.conjugation()));
    a
}

/// `A^dual(F_{q^n})`: all four expressions of the duality theorem are
/// computed and must agree.
pub fn dual_group(c: &ClassData, ideal: &Lattice, n: u32) -> Result<AbGroup> {
    let conj = c.conjugation();
    let r = c.one_minus_pi_pow(n);
    let rbar = conj.apply(&r);
    let route1 = quotient_group(&dual_ideal(c, ideal), &r)?;
    let route2 = quotient_group(&ideal.trace_dual(), &rbar)?;
    let route3 = quotient_group(ideal, &rbar)?;
    let route4 = quotient_group(&ideal.conjugate(conj), &r)?;
    if route1 != route2 || route1 != route3 || route1 != route4 {
        return Err(Error::OracleDisagreement(format!(
            "dual-group routes disagree: {route1}, {route2}, {route3}, {route4}"
        )));
    }
    Ok(route1)
}

/// Self-duality obstruction: a conjugation-stable order `S` inside `S_end`
/// with a conjugation-stable prime of type exactly 2 at which `S` and
/// `S_end` agree locally. A witness certifies that every variety with
/// `End = S_end` differs from its dual (hence is not principally
/// polarizable and not a Jacobian). Requires the Ord/CS regime.
pub fn not_self_dual_witness(
    c: &ClassData,
    s_end: &Order,
) -> Result<Option<(Order, OrderPrime)>> {
    assert!(
        functor_regime(c) != FunctorRegime::None,
        "obstruction needs the Ord or CS regime"
    );
    let conj = c.conjugation();
    for s in c.overorders()? {
        if !s_end.contains_order(&s) {
            continue;
        }
        if s.conjugate(conj) != s {
            continue;
        }
        // Type >= 2 primes all contain the conductor in O_K.
        let cond = s.conductor(c.maximal_order()?)?;
        let index = s.lattice().index_of(&cond)?;
        for (p, _) in crate::arith::factor_integer(&index) {
            for pr in s.primes_above(&p) {
                if !pr.contains_lattice(&cond) {
                    continue;
                }
                if !pr.is_conjugation_stable(conj) {
                    continue;
                }
                if s.cm_type_at(&pr) != 2 {
                    continue;
                }
                if s.locally_equal(s_end, &pr)? {
                    return Ok(Some((s, pr)));
                }
            }
        }
    }
    Ok(None)
}

/// For a conjugation-stable order with a type-2 prime that is **not**
/// conjugation-stable, the obstruction provably fails: this constructs the
/// fractional ideal `I = d S^t + pbar^m` with `(I : I) = S` whose class is
/// locally self-dual at the prime. Returns `(d, m, I)`.
pub fn self_dual_counterexample_ideal(
    c: &ClassData,
    s: &Order,
    prime: &OrderPrime,
) -> (BigInt, u32, Lattice) {
    let conj = c.conjugation();
    debug_assert_eq!(s.conjugate(conj), *s);
    debug_assert!(!prime.is_conjugation_stable(conj));
    let st = s.lattice().trace_dual();
    // Smallest positive integer d with d S^t <= S.
    let colon = s.lattice().colon(&st);
    let d = smallest_scaling_integer(&colon);
    let dst = st.scale_int(&d);
    debug_assert!(s.lattice().contains_lattice(&dst));
    let pbar = prime.conjugate_lattice(conj);
    // Smallest m with pbar^m locally inside d S^t at pbar:
    // (d S^t : pbar^m) not contained in pbar.
    let mut power = s.lattice().clone();
    let mut m = 0u32;
    loop {
        m += 1;
        power = power.mul(&pbar);
        let colon_m = dst.colon(&power);
        if !pbar.contains_lattice(&colon_m.intersect(s.lattice())) {
            break;
        }
        assert!(m < 64, "no local containment exponent found");
    }
    let ideal = dst.sum(&power);
    debug_assert_eq!(ideal.colon(&ideal), *s.lattice());
    (d, m, ideal)
}

fn smallest_scaling_integer(colon: &Lattice) -> BigInt {
    // The set {x in Z : x S^t <= S} is colon intersect Q; its positive
    // generator is the denominator of 1 in the colon lattice.
    let one = colon.algebra().one();
    let mut d = BigInt::from(1);
    loop {
        if colon.contains(&one.scale(&crate::arith::num::rat_from_int(d.clone()))) {
            return d;
        }
        d += 1;
        assert!(d < BigInt::from(1 << 20), "scaling integer out of range");
    }
}

/// Enumerates ideals `m O_K <= I <= O_K` with multiplicator ring exactly
/// `S`, and collects the groups `I/(1-pi)I`. A witness search, not a
/// completeness claim.
pub fn search_groups_for_multiplicator(
    c: &ClassData,
    s: &Order,
    m: u32,
    cap: usize,
) -> Result<BTreeSet<AbGroup>> {
    assert!(m >= 1);
    let ok = c.maximal_order()?;
    let sub = ok.lattice().scale_int(&BigInt::from(m));
    let lats = sublattices_between(&sub, ok.lattice(), cap)?;
    let r = c.one_minus_pi_pow(1);
    let mut out = BTreeSet::new();
    for lat in lats {
        if &lat.colon(&lat) == s.lattice() {
            out.insert(quotient_group(&lat, &r)?);
        }
    }
    Ok(out)
}

/// Default search depth: the exponent of `O_K / conductor(S, O_K)`
/// restricted to primes dividing `N`, clamped to `[1, 16]`.
pub fn default_search_depth(c: &ClassData, s: &Order) -> Result<u32> {
    let ok = c.maximal_order()?;
    let cond = s.conductor(ok)?;
    // Exponent of the finite group O_K / cond: largest invariant factor.
    let m = ok.lattice().coords_matrix_of(&cond);
    let n = ok.dim();
    let int = IntMat::from_fn(n, n, |i, j| {
        debug_assert!(m[(i, j)].denom().is_one());
        m[(i, j)].numer().clone()
    });
    let (factors, _) = int.snf();
    let exponent = factors.last().cloned().unwrap_or_else(|| BigInt::from(1));
    let npoints = c.weil().n_points();
    let mut depth = BigInt::from(1);
    for (p, _) in crate::arith::factor_integer(npoints) {
        let v = if exponent.is_zero() {
            0
        } else {
            crate::arith::num::valuation(&exponent, &p)
        };
        depth *= p.pow(v as u32);
    }
    let depth: u32 = depth.min(BigInt::from(16)).try_into().unwrap_or(16);
    Ok(depth.max(1))
}

/// When `(1-pi)R` is coprime to the conductor, every variety in the class
/// has cyclic points `Z/N`; sampled ideals are checked to agree.
pub fn coprime_conductor_group(c: &ClassData) -> Result<Option<AbGroup>> {
    let cond = c.conductor()?;
    let ideal = c.one_minus_pi_ideal();
    if !c.frobenius_order().is_coprime(&ideal, &cond)? {
        return Ok(None);
    }
    let n = c.weil().n_points();
    let expected = AbGroup::cyclic(n);
    let r_elem = c.one_minus_pi_pow(1);
    // Sample a few fractional R-ideals and verify cyclicity of the quotient.
    let r = c.frobenius_order();
    let ok = c.maximal_order()?;
    let samples = [
        r.lattice().clone(),
        ok.lattice().clone(),
        r.lattice().trace_dual(),
        r.lattice().mul(&ok.lattice().trace_dual()),
    ];
    for i in samples {
        let got = quotient_group(&i, &r_elem)?;
        if got != expected {
            return Err(Error::OracleDisagreement(format!(
                "coprime-conductor class produced a non-cyclic quotient {got}"
            )));
        }
    }
    Ok(Some(expected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::IntPoly;

    fn class(h: &[i64], q: i64) -> ClassData {
        ClassData::from_parts(&IntPoly::from_i64(h), &BigInt::from(q)).unwrap()
    }

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn quotient_group_basics() {
        // R = Z[pi] for x^2+x+2 over F_2: R/(1-pi)R = Z/2 since N... h(1)=4?
        // No: |R/(1-pi)R| = |norm(1-pi)| = h(1) = 4, and the quotient is
        // cyclic: SNF of the 2x2 matrix has factors (1, 4).
        let c = class(&[2, 1, 1], 2);
        let g = quotient_group(c.frobenius_order().lattice(), &c.one_minus_pi_pow(1)).unwrap();
        assert_eq!(g, AbGroup::cyclic(&bi(4)));

        // Trace +1 sibling over F_2: N = 2 gives Z/2 (SNF diag(1,2)).
        let c1 = class(&[2, -1, 1], 2);
        let g1 = quotient_group(c1.frobenius_order().lattice(), &c1.one_minus_pi_pow(1)).unwrap();
        assert_eq!(g1, AbGroup::cyclic(&bi(2)));

        // x^2+3 over F_3: R/(1-pi)R = Z/4 (SNF diag(1,4)).
        let c2 = class(&[3, 0, 1], 3);
        let g2 = quotient_group(c2.frobenius_order().lattice(), &c2.one_minus_pi_pow(1)).unwrap();
        assert_eq!(g2, AbGroup::cyclic(&bi(4)));

        // Order = |norm(r)| on a non-principal-ish sample.
        let ok = c2.maximal_order().unwrap();
        let r2 = c2.one_minus_pi_pow(2);
        let g3 = quotient_group(ok.lattice(), &r2).unwrap();
        assert_eq!(g3.order(), r2.norm().abs().to_integer());
    }

    #[test]
    fn quotient_group_needs_module_structure() {
        let c = class(&[2, 1, 1], 2);
        // r = pi/2 is a unit of K but does not map R into itself.
        let half_pi = c
            .pi()
            .scale(&num_rational::BigRational::new(bi(1), bi(2)));
        assert_eq!(
            quotient_group(c.frobenius_order().lattice(), &half_pi).unwrap_err(),
            Error::NotContained
        );
        assert_eq!(
            quotient_group(c.frobenius_order().lattice(), &c.algebra().zero()).unwrap_err(),
            Error::ZeroDivisor
        );
    }

    #[test]
    fn matlis_duality_on_examples() {
        for (h, q) in [([2i64, 1, 1].as_slice(), 2i64), (&[3, 0, 1], 3), (&[5, 2, 1], 5)] {
            let c = class(h, q);
            let r = c.one_minus_pi_pow(1);
            let lat = c.frobenius_order().lattice();
            assert_eq!(
                quotient_group(lat, &r).unwrap(),
                quotient_group(&lat.trace_dual(), &r).unwrap()
            );
        }
    }

    #[test]
    fn group_from_order_maximal_is_unconditional() {
        let c = class(&[3, 0, 1], 3);
        let ok = c.maximal_order().unwrap().clone();
        let res = group_from_order(&c, &ok, 1).unwrap();
        assert_eq!(res.basis, ClaimBasis::UnconditionalMaximalOrder);
        assert!(!res.warning);
        assert_eq!(res.group.order(), bi(4));
    }

    #[test]
    fn dual_ideal_involution() {
        let c = class(&[25, 0, 6, 0, 1], 5);
        let r = c.frobenius_order().lattice().clone();
        let d = dual_ideal(&c, &r);
        assert_eq!(dual_ideal(&c, &d), r);
        // Multiplicator ring of the dual is the conjugate multiplicator.
        let s = r.colon(&r);
        let sd = d.colon(&d);
        assert_eq!(sd, s.conjugate(c.conjugation()));
    }

    #[test]
    fn dual_group_routes_agree() {
        let c = class(&[25, 0, 6, 0, 1], 5);
        let ok = c.maximal_order().unwrap();
        let g = dual_group(&c, ok.lattice(), 1).unwrap();
        assert_eq!(g.order(), bi(32));
        let r = c.frobenius_order();
        let g2 = dual_group(&c, r.lattice(), 1).unwrap();
        assert_eq!(g2.order(), bi(32));
    }

    #[test]
    fn coprime_conductor_classes() {
        // h(1) = 10 coprime to the conductor above 3: cyclic Z/10.
        let c = class(&[9, -3, 4, -1, 1], 3);
        assert_eq!(
            coprime_conductor_group(&c).unwrap(),
            Some(AbGroup::cyclic(&bi(10)))
        );
        // The F_5 quartic: 2 divides both N and the conductor index.
        let c2 = class(&[25, 0, 6, 0, 1], 5);
        assert_eq!(coprime_conductor_group(&c2).unwrap(), None);
    }

    #[test]
    fn obstruction_absent_at_maximal_and_unstable_orders() {
        // Maximal endomorphism ring: no witness ever.
        let c = class(&[9, -3, 4, -1, 1], 3);
        let ok = c.maximal_order().unwrap().clone();
        assert!(not_self_dual_witness(&c, &ok).unwrap().is_none());
        // The two swapped index-3 orders are not conjugation-stable and no
        // stable suborder has a stable type-2 prime locally equal to them.
        for s in c.overorders().unwrap() {
            if s.conjugate(c.conjugation()) != s {
                assert!(not_self_dual_witness(&c, &s).unwrap().is_none());
            }
        }
    }

    #[test]
    fn counterexample_ideal_at_split_type2_prime() {
        // A sextic over F_2 whose conductor supports a conjugation-stable
        // order with a *split* pair of type-2 primes above 2: the
        // obstruction cannot fire there, and the constructed ideal
        // d*S^t + pbar^m has multiplicator ring exactly S.
        let c = class(&[8, -4, 2, 1, 1, -1, 1], 2);
        let ok = c.maximal_order().unwrap().clone();
        let orders = c.overorders_capped(200_000).unwrap();
        let conj = c.conjugation();
        let mut found = false;
        for s in &orders {
            if s.conjugate(conj) != *s {
                continue;
            }
            let cond = s.conductor(&ok).unwrap();
            let idx = s.lattice().index_of(&cond).unwrap();
            for (p, _) in crate::arith::factor_integer(&idx) {
                for pr in s.primes_above(&p) {
                    if !pr.contains_lattice(&cond)
                        || pr.is_conjugation_stable(conj)
                        || s.cm_type_at(&pr) != 2
                    {
                        continue;
                    }
                    let (d, m, ideal) = self_dual_counterexample_ideal(&c, s, &pr);
                    assert!(d >= bi(1));
                    assert!(m >= 1);
                    assert_eq!(ideal.colon(&ideal), *s.lattice());
                    // The ideal is locally S away from pbar: its quotient by
                    // any regular element has the same order as S's.
                    let r = c.one_minus_pi_pow(1);
                    assert_eq!(
                        quotient_group(&ideal, &r).unwrap().order(),
                        quotient_group(s.lattice(), &r).unwrap().order()
                    );
                    found = true;
                }
            }
        }
        assert!(found, "expected a split type-2 prime in this class");
    }

    #[test]
    fn search_groups_maximal_order() {
        let c = class(&[9, -3, 4, -1, 1], 3);
        let ok = c.maximal_order().unwrap().clone();
        let groups =
            search_groups_for_multiplicator(&c, &ok, 3, crate::order::DEFAULT_ENUM_CAP).unwrap();
        assert!(groups.contains(&AbGroup::cyclic(&bi(10))));
        assert_eq!(groups.len(), 1);
    }
}
