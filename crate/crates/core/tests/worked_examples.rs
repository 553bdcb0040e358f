//! End-to-end checks of the four worked examples that exercise the deep
//! lattice machinery (overorders, CM types, duality, group searches).

use std::collections::BTreeSet;

use avfq::arith::IntPoly;
use avfq::group::AbGroup;
use avfq::order::{Order, DEFAULT_ENUM_CAP};
use avfq::points::{
    dual_group, group_from_order, not_self_dual_witness, quotient_group,
    search_groups_for_multiplicator, ClaimBasis,
};
use avfq::weil::ClassData;
use avfq::BigInt;

fn class(h: &[i64], q: i64) -> ClassData {
    ClassData::from_parts(&IntPoly::from_i64(h), &BigInt::from(q)).unwrap()
}

fn bi(n: i64) -> BigInt {
    BigInt::from(n)
}

fn group(factors: &[i64]) -> AbGroup {
    AbGroup::from_invariant_factors(factors.iter().map(|&f| bi(f)).collect())
}

/// x^4 + 6x^2 + 25 over F_5: the type-3 order S = Z + 2 O_K, where two
/// distinct groups of rational points occur.
#[test]
fn surface_f5_type_three_order() {
    let c = class(&[25, 0, 6, 0, 1], 5);
    let ok = c.maximal_order().unwrap().clone();
    let r = c.frobenius_order();
    assert_eq!(r.index_in(&ok).unwrap(), bi(64));

    // S = Z + 2 O_K (spanned by 1 and twice an O_K basis) is an overorder
    // with [O_K : S] = [S : R] = 8, and it is the unique one with that index.
    let two_ok = ok.lattice().scale_int(&bi(2));
    let mut gens = vec![c.algebra().one()];
    for b in ok.lattice().basis_elems() {
        gens.push(b.scale(&num_rational::BigRational::from_integer(bi(2))));
    }
    let s = Order::require(avfq::lattice::Lattice::from_elems(c.algebra(), &gens).unwrap());
    assert_eq!(s.index_in(&ok).unwrap(), bi(8));
    assert_eq!(r.index_in(&s).unwrap(), bi(8));

    let overorders = c.overorders().unwrap();
    let with_index_8: Vec<&Order> = overorders
        .iter()
        .filter(|o| o.index_in(&ok).unwrap() == bi(8))
        .collect();
    assert_eq!(with_index_8.len(), 1);
    assert_eq!(with_index_8[0], &s);

    // 2 O_K is a prime of S with residue degree 1 and CM type 3.
    let primes2 = s.primes_above(&bi(2));
    let p = primes2
        .iter()
        .find(|pr| pr.lattice() == &two_ok)
        .expect("2 O_K is a maximal ideal of S");
    assert_eq!(p.residue_degree(), 1);
    assert_eq!(s.cm_type_at(p), 3);

    // S is the unique overorder with a type-3 prime.
    let mut type3_orders = 0;
    for o in &overorders {
        let cond = o.conductor(&ok).unwrap();
        let idx = o.lattice().index_of(&cond).unwrap();
        let mut has3 = false;
        for (pp, _) in avfq::arith::factor_integer(&idx) {
            for pr in o.primes_above(&pp) {
                if o.cm_type_at(&pr) >= 3 {
                    has3 = true;
                }
            }
        }
        if has3 {
            type3_orders += 1;
            assert_eq!(o, &s);
        }
    }
    assert_eq!(type3_orders, 1);

    // The ideal search at depth 4 finds exactly the two groups.
    let groups = search_groups_for_multiplicator(&c, &s, 4, DEFAULT_ENUM_CAP).unwrap();
    let expected: BTreeSet<AbGroup> =
        [group(&[2, 2, 8]), group(&[4, 8])].into_iter().collect();
    assert_eq!(groups, expected);

    // The quotient of S itself is Z/2 x Z/2 x Z/8, reported with a warning.
    let res = group_from_order(&c, &s, 1).unwrap();
    assert_eq!(res.group, group(&[2, 2, 8]));
    assert_eq!(res.basis, ClaimBasis::IdealQuotient);
    assert!(res.warning);
}

/// Same algebra: R has a unique minimal overorder T, conjugation-stable,
/// with a unique (stable) prime above 2 of type 2: the self-duality
/// obstruction fires.
#[test]
fn surface_f5_minimal_overorder_obstruction() {
    let c = class(&[25, 0, 6, 0, 1], 5);
    let r = c.frobenius_order().clone();
    let overorders = c.overorders().unwrap();
    // Minimal overorders: strictly contain R, minimal with that property.
    let strict: Vec<&Order> = overorders.iter().filter(|o| **o != r).collect();
    let minimal: Vec<&&Order> = strict
        .iter()
        .filter(|o| {
            strict
                .iter()
                .all(|other| other == *o || !o.contains_order(other))
        })
        .collect();
    assert_eq!(minimal.len(), 1, "unique minimal overorder");
    let t = (*minimal[0]).clone();
    assert_eq!(r.index_in(&t).unwrap(), bi(2));
    assert_eq!(t.conjugate(c.conjugation()), t);

    // Unique prime above 2, stable, type 2.
    let primes = t.primes_above(&bi(2));
    assert_eq!(primes.len(), 1);
    let q = &primes[0];
    assert!(q.is_conjugation_stable(c.conjugation()));
    assert_eq!(t.cm_type_at(q), 2);

    // Witness: (T, q) for S_end = T.
    let w = not_self_dual_witness(&c, &t).unwrap();
    let (ws, wp) = w.expect("obstruction must fire");
    assert_eq!(ws, t);
    assert_eq!(wp.lattice(), q.lattice());

    // group_from_order(T) carries the type-2 basis (Ord and CS both hold).
    let res = group_from_order(&c, &t, 1).unwrap();
    assert_eq!(res.basis, ClaimBasis::Type2Thm);
}

/// x^4 + 2x^3 + x^2 + 8x + 16 over F_4: 2 O_K = p^2 pbar^2; S = R + p^2 has
/// points Z/28 and dual points Z/2 x Z/14; R has exactly three proper
/// overorders S, Sbar, O_K, all Gorenstein.
#[test]
fn surface_f4_dual_groups_differ() {
    let c = class(&[16, 8, 1, 2, 1], 4);
    let ok = c.maximal_order().unwrap().clone();
    let r = c.frobenius_order().clone();

    let primes = ok.primes_above(&bi(2));
    assert_eq!(primes.len(), 2, "2 O_K = p^2 pbar^2");
    let p = &primes[0];
    let pbar_lat = p.conjugate_lattice(c.conjugation());
    assert_eq!(&pbar_lat, primes[1].lattice());
    assert_eq!(p.residue_degree(), 1);
    // p^2 * pbar^2 = 2 O_K.
    let prod = p.pow(2).mul(&primes[1].pow(2));
    assert_eq!(prod, ok.lattice().scale_int(&bi(2)));

    // S = R + p^2, labeling p so that S is the order whose own quotient is
    // the cyclic group (the two conjugate primes are interchangeable).
    let s_candidates: Vec<Order> = primes
        .iter()
        .map(|pr| Order::require(r.lattice().sum(&pr.pow(2))))
        .collect();
    let s = s_candidates
        .iter()
        .find(|o| {
            quotient_group(o.lattice(), &c.one_minus_pi_pow(1)).unwrap() == group(&[28])
        })
        .expect("one labeling gives the cyclic group")
        .clone();
    let sbar = s.conjugate(c.conjugation());
    assert_ne!(s, sbar);
    assert!(s_candidates.contains(&sbar));

    let overorders = c.overorders().unwrap();
    assert_eq!(overorders.len(), 4); // R, S, Sbar, O_K
    assert!(overorders.contains(&r));
    assert!(overorders.contains(&s));
    assert!(overorders.contains(&sbar));
    assert!(overorders.contains(&ok));

    // All three proper overorders are Gorenstein.
    for o in [&s, &sbar, &ok] {
        let cond = o.conductor(&ok).unwrap();
        let idx = o.lattice().index_of(&cond).unwrap();
        for (pp, _) in avfq::arith::factor_integer(&idx) {
            for pr in o.primes_above(&pp) {
                assert_eq!(o.cm_type_at(&pr), 1, "{:?}", pp);
            }
        }
    }

    // Groups: S gives Z/28; the dual ideal gives Z/2 x Z/14.
    let g = quotient_group(s.lattice(), &c.one_minus_pi_pow(1)).unwrap();
    assert_eq!(g, group(&[28]));
    let gd = dual_group(&c, s.lattice(), 1).unwrap();
    assert_eq!(gd, group(&[2, 14]));
}

/// x^4 - x^3 + 4x^2 - 3x + 9 over F_3: [O_K:R] = 9, two conjugate primes
/// above 3, two intermediate orders swapped by conjugation, cyclic and
/// rich, group Z/10 at the maximal order.
#[test]
fn surface_f3_cyclic_and_rich() {
    let c = class(&[9, -3, 4, -1, 1], 3);
    let ok = c.maximal_order().unwrap().clone();
    let r = c.frobenius_order().clone();
    assert_eq!(r.index_in(&ok).unwrap(), bi(9));

    let primes3 = r.primes_above(&bi(3));
    assert_eq!(primes3.len(), 2, "exactly two primes of R above 3");
    let p0 = primes3[0].conjugate_lattice(c.conjugation());
    assert_eq!(&p0, primes3[1].lattice(), "primes are conjugate");

    let overorders = c.overorders().unwrap();
    assert_eq!(overorders.len(), 4);
    let intermediates: Vec<&Order> = overorders
        .iter()
        .filter(|o| **o != r && **o != ok)
        .collect();
    assert_eq!(intermediates.len(), 2);
    assert_eq!(
        intermediates[0].index_in(&ok).unwrap(),
        bi(3)
    );
    assert_eq!(
        intermediates[1].index_in(&ok).unwrap(),
        bi(3)
    );
    // Swapped by conjugation; realizable as multiplicator rings (p : p).
    assert_eq!(
        &intermediates[0].conjugate(c.conjugation()),
        intermediates[1]
    );
    let mult0 = Order::multiplicator_ring(primes3[0].lattice());
    assert!(intermediates.iter().any(|o| *o == &mult0));

    // Cyclic and rich, all methods.
    let cv = c.cyclic_verdicts().unwrap();
    assert!(cv.agree() && cv.value().unwrap());
    let rv = c.rich_verdicts().unwrap();
    assert!(rv.agree() && rv.value().unwrap());

    // Group at the maximal order: Z/10, unconditional.
    let res = group_from_order(&c, &ok, 1).unwrap();
    assert_eq!(res.group, AbGroup::cyclic(&bi(10)));
    assert_eq!(res.basis, ClaimBasis::UnconditionalMaximalOrder);
    assert_eq!(dual_group(&c, ok.lattice(), 1).unwrap(), res.group);
}
