//! Orders in an etale algebra and their local structure: maximal-order
//! computation (Pohst-Zassenhaus Round 2), conductors, primes above a
//! rational prime, Cohen-Macaulay types, local principality and local
//! comparison, and bounded overorder enumeration.
//!
//! Localizations are never materialized; every local predicate is reduced
//! to global ideal arithmetic (conductor containment for order comparison,
//! `I (S:I)` for principality, index counts for dimensions over residue
//! fields).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::factor::{factor_integer, factor_with_budget};
use crate::arith::fp::{reduce_mod, FpAlgebra, FpMat};
use crate::arith::num::valuation;
use crate::arith::{mat, IntMat};
use crate::etale::{AlgElem, Conjugation, EtaleAlgebra};
use crate::lattice::Lattice;
use crate::{Error, Result};

/// Rho budget for discriminant factorization inside Round 2; failures show
/// up as `PartialFactorization` rather than silently wrong p-maximality.
const DISC_FACTOR_BUDGET: u64 = 1 << 24;

/// Default cap on enumeration candidates for overorders / sublattices.
pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

/// A subring of `K` that is a full-rank lattice containing 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Order {
    lat: Lattice,
}

impl Order {
    /// Validates multiplicative closure and the presence of 1.
    pub fn try_new(lat: Lattice) -> Option<Order> {
        let one = lat.algebra().one();
        if !lat.contains(&one) {
            return None;
        }
        let b = lat.basis_elems();
        for i in 0..b.len() {
            for j in i..b.len() {
                if !lat.contains(&b[i].mul(&b[j])) {
                    return None;
                }
            }
        }
        Some(Order { lat })
    }

    /// Wraps a lattice that is known to be an order (checked).
    pub fn require(lat: Lattice) -> Order {
        Order::try_new(lat).expect("lattice is not an order")
    }

    /// The equation order `Z[x]` inside `Q[x]/(h)`.
    pub fn equation_order(alg: &EtaleAlgebra) -> Order {
        Order::require(Lattice::standard(alg))
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lat
    }

    pub fn algebra(&self) -> &EtaleAlgebra {
        self.lat.algebra()
    }

    pub fn dim(&self) -> usize {
        self.lat.dim()
    }

    pub fn contains(&self, a: &AlgElem) -> bool {
        self.lat.contains(a)
    }

    pub fn contains_order(&self, other: &Order) -> bool {
        self.lat.contains_lattice(&other.lat)
    }

    /// `(L : L)`, the largest order over which `L` is an ideal.
    pub fn multiplicator_ring(l: &Lattice) -> Order {
        Order::require(l.colon(l))
    }

    /// The Frobenius order `R = Z[pi, pibar]`: the smallest order containing
    /// `x` and `q/x`, closed up by product saturation.
    pub fn frobenius_order(conj: &Conjugation) -> Order {
        let alg = conj.algebra();
        let n = alg.dim();
        let pi = alg.gen();
        let pibar = conj.pibar();
        let mut gens = vec![alg.one()];
        let mut cur = alg.one();
        for _ in 1..n {
            cur = cur.mul(&pi);
            gens.push(cur.clone());
        }
        let mut cur = alg.one();
        for _ in 1..n {
            cur = cur.mul(&pibar);
            gens.push(cur.clone());
        }
        let mut lat = Lattice::from_elems(alg, &gens).expect("pi powers span K");
        // Saturate under multiplication; stabilizes immediately for monomial
        // generating sets but run the loop to certify closure.
        for _ in 0..n + 2 {
            let next = lat.sum(&lat.mul(&lat));
            if next == lat {
                return Order::require(lat);
            }
            lat = next;
        }
        panic!("product saturation did not stabilize");
    }

    /// `disc(S)`: determinant of the trace-form Gram matrix on a basis.
    pub fn discriminant(&self) -> BigInt {
        let b = self.lat.basis_elems();
        let n = b.len();
        let gram = IntMat::from_fn(n, n, |i, j| {
            let t = b[i].mul(&b[j]).trace();
            assert!(t.denom().is_one(), "trace of integral element is an integer");
            t.numer().clone()
        });
        gram.det()
    }

    /// Structure constants of `S/pS` as an F_p-algebra in the basis of `S`.
    pub fn fp_structure(&self, p: &BigInt) -> FpAlgebra {
        let b = self.lat.basis_elems();
        let n = b.len();
        let mut table = Vec::with_capacity(n * n);
        for bi in &b {
            for bj in &b {
                let coords = self.lat.coords_of(&bi.mul(bj));
                table.push(
                    coords
                        .into_iter()
                        .map(|c| {
                            debug_assert!(c.denom().is_one());
                            reduce_mod(p, c.numer().clone())
                        })
                        .collect(),
                );
            }
        }
        let one = self
            .lat
            .coords_of(&self.algebra().one())
            .into_iter()
            .map(|c| reduce_mod(p, c.numer().clone()))
            .collect();
        FpAlgebra {
            p: p.clone(),
            dim: n,
            table,
            one,
        }
    }

    /// Lifts F_p row vectors (coordinates in the order basis) into a
    /// sublattice of `S` containing `pS`.
    fn lift_subspace(&self, p: &BigInt, rows: &[Vec<BigInt>]) -> Lattice {
        let b = self.lat.basis_elems();
        let mut elems: Vec<AlgElem> = b.iter().map(|e| e.scale(&crate::arith::num::rat_from_int(p.clone()))).collect();
        for row in rows {
            let mut acc = self.algebra().zero();
            for (c, bi) in row.iter().zip(&b) {
                if c.is_zero() {
                    continue;
                }
                acc = acc.add(&bi.scale(&crate::arith::num::rat_from_int(c.clone())));
            }
            elems.push(acc);
        }
        Lattice::from_elems(self.algebra(), &elems).expect("contains pS, full rank")
    }

    /// The p-radical: preimage in `S` of the nilradical of `S/pS`.
    pub fn p_radical(&self, p: &BigInt) -> Lattice {
        let a = self.fp_structure(p);
        let rad = a.nilradical();
        self.lift_subspace(p, &rad)
    }

    /// Pohst-Zassenhaus Round 2: enlarge at every prime whose square divides
    /// the discriminant until stable. Errors with `PartialFactorization` if
    /// the discriminant cannot be fully factored (p-maximality would then be
    /// unverifiable at the unknown primes).
    pub fn maximal_order(&self) -> Result<Order> {
        let disc = self.discriminant();
        assert!(!disc.is_zero(), "squarefree algebras have nonzero discriminant");
        let (facs, leftovers) = factor_with_budget(&disc, DISC_FACTOR_BUDGET);
        if !leftovers.is_empty() {
            let cofactor = leftovers.into_iter().product();
            return Err(Error::PartialFactorization { cofactor });
        }
        let mut cur = self.clone();
        for (p, e) in facs {
            if e < 2 {
                continue;
            }
            loop {
                let rad = cur.p_radical(&p);
                let bigger = Order::require(rad.colon(&rad));
                if bigger.lat == cur.lat {
                    break;
                }
                debug_assert!(bigger.contains_order(&cur));
                cur = bigger;
            }
        }
        Ok(cur)
    }

    /// Conductor `(S : S')` of `S` in a larger order `S'`: an ideal of both.
    pub fn conductor(&self, sup: &Order) -> Result<Lattice> {
        if !sup.contains_order(self) {
            return Err(Error::NotContained);
        }
        Ok(self.lat.colon(&sup.lat))
    }

    pub fn conjugate(&self, conj: &Conjugation) -> Order {
        Order::require(self.lat.conjugate(conj))
    }

    pub fn index_in(&self, sup: &Order) -> Result<BigInt> {
        sup.lat.index_of(&self.lat)
    }

    /// All maximal ideals of `S` above the rational prime `p`, sorted
    /// canonically. Decomposes `S/pS` by nilradical + Berlekamp splitting.
    pub fn primes_above(&self, p: &BigInt) -> Vec<OrderPrime> {
        let a = self.fp_structure(p);
        let rad_rows = a.nilradical();
        let (b, qmap) = a.quotient(&rad_rows);
        let idems = b.primitive_idempotents();
        let n = self.dim();
        let mut primes = Vec::with_capacity(idems.len());
        for e in &idems {
            // Maximal ideal = kernel of A -> B -> B*e (x |-> project(x)*e).
            let mut rows = Vec::with_capacity(n);
            for i in 0..n {
                let mut unit = vec![BigInt::zero(); n];
                unit[i] = BigInt::one();
                rows.push(b.mul(&qmap.project(&unit), e));
            }
            let map = FpMat::new(
                p.clone(),
                n,
                b.dim,
                rows.into_iter().flatten().collect(),
            );
            let kernel = map.left_kernel();
            let f = n - kernel.len();
            let lat = self.lift_subspace(p, &kernel);
            debug_assert_eq!(
                self.lat.index_of(&lat).unwrap(),
                p.pow(f as u32),
                "residue field size must be p^f"
            );
            debug_assert!(ideal_check(self, &lat));
            primes.push(OrderPrime {
                order: self.clone(),
                p: p.clone(),
                residue_degree: f,
                lat,
            });
        }
        primes.sort_by(|a, b| a.lat.cmp(&b.lat));
        primes
    }

    /// Primes of `S` containing the integral ideal `I`.
    pub fn primes_containing(&self, ideal: &Lattice) -> Result<Vec<OrderPrime>> {
        if !self.lat.contains_lattice(ideal) {
            return Err(Error::NotContained);
        }
        let index = self.lat.index_of(ideal)?;
        let mut out = Vec::new();
        for (p, _) in factor_integer(&index) {
            for pr in self.primes_above(&p) {
                if pr.lat.contains_lattice(ideal) {
                    out.push(pr);
                }
            }
        }
        Ok(out)
    }

    /// `I + J = S`?
    pub fn is_coprime(&self, i: &Lattice, j: &Lattice) -> Result<bool> {
        if !self.lat.contains_lattice(i) || !self.lat.contains_lattice(j) {
            return Err(Error::NotContained);
        }
        Ok(i.sum(j) == self.lat)
    }

    /// `S_p == S'_p`? True iff the conductor `(S : S')` is not contained in
    /// the prime.
    pub fn locally_equal(&self, sup: &Order, prime: &OrderPrime) -> Result<bool> {
        let cond = self.conductor(sup)?;
        Ok(!prime.lat.contains_lattice(&cond))
    }

    /// Cohen-Macaulay type at a prime: `dim_{S/p} (S^t / p S^t)`, computed
    /// as the logarithm of an index.
    pub fn cm_type_at(&self, prime: &OrderPrime) -> u32 {
        debug_assert!(prime.order.lat == self.lat);
        let st = self.lat.trace_dual();
        let pst = prime.lat.mul(&st);
        let index = st.index_of(&pst).expect("p S^t <= S^t");
        power_log(&index, &prime.p, prime.residue_degree)
    }

    pub fn is_gorenstein_at(&self, prime: &OrderPrime) -> bool {
        self.cm_type_at(prime) == 1
    }

    /// Local principality of a fractional `S`-ideal at a prime:
    /// `I (S : I)` is not contained in the prime.
    pub fn is_locally_principal(&self, ideal: &Lattice, prime: &OrderPrime) -> bool {
        debug_assert!(
            ideal.colon(ideal).contains_lattice(&self.lat),
            "ideal must be an S-module"
        );
        let inv_candidate = self.lat.colon(ideal);
        let prod = ideal.mul(&inv_candidate);
        !prime.lat.contains_lattice(&prod)
    }

    /// Minimal number of generators of the `S_p`-module `(L1/L2)_p`
    /// (Nakayama): `dim_{S/p} L1 / (L2 + p L1)`.
    pub fn min_generators_at(&self, prime: &OrderPrime, l1: &Lattice, l2: &Lattice) -> u32 {
        assert!(l1.contains_lattice(l2));
        let denom = l2.sum(&prime.lat.mul(l1));
        let index = l1.index_of(&denom).expect("contained by construction");
        power_log(&index, &prime.p, prime.residue_degree)
    }

    /// All orders `S` with `self <= S <= sup`, by bounded enumeration of the
    /// subgroups of `sup/self` filtered for multiplicative closure. Includes
    /// both endpoints. Errors with `BoundExceeded` past `cap` candidates.
    pub fn overorders(&self, sup: &Order, cap: usize) -> Result<Vec<Order>> {
        let lats = sublattices_between(&self.lat, &sup.lat, cap)?;
        let mut orders: Vec<Order> = lats.into_iter().filter_map(Order::try_new).collect();
        orders.sort();
        Ok(orders)
    }
}

fn ideal_check(s: &Order, lat: &Lattice) -> bool {
    s.lat
        .basis_elems()
        .iter()
        .all(|b| lat.basis_elems().iter().all(|x| lat.contains(&b.mul(x))))
}

/// `index = (p^f)^t`; returns `t` (asserts exactness).
fn power_log(index: &BigInt, p: &BigInt, f: usize) -> u32 {
    if index.is_one() {
        return 0;
    }
    let v = valuation(index, p);
    assert_eq!(
        index,
        &p.pow(v as u32),
        "index must be a power of p"
    );
    assert_eq!(v % f as u64, 0, "index must be a power of the residue size");
    (v / f as u64) as u32
}

/// A maximal ideal of an order, above the rational prime `p`, with
/// `|S/p| = p^f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderPrime {
    order: Order,
    p: BigInt,
    residue_degree: usize,
    lat: Lattice,
}

impl OrderPrime {
    pub fn order(&self) -> &Order {
        &self.order
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn residue_degree(&self) -> usize {
        self.residue_degree
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lat
    }

    pub fn contains(&self, a: &AlgElem) -> bool {
        self.lat.contains(a)
    }

    pub fn contains_lattice(&self, l: &Lattice) -> bool {
        self.lat.contains_lattice(l)
    }

    /// `prime^m` as an ideal (lattice) of the owner order.
    pub fn pow(&self, m: u32) -> Lattice {
        let mut acc = self.order.lat.clone();
        for _ in 0..m {
            acc = acc.mul(&self.lat);
        }
        acc
    }

    /// Image under conjugation (a prime of the conjugate order; for
    /// conjugation-stable orders, another prime of the same order).
    pub fn conjugate_lattice(&self, conj: &Conjugation) -> Lattice {
        self.lat.conjugate(conj)
    }

    /// Is this prime fixed by conjugation? Only meaningful when the owner
    /// order is conjugation-stable.
    pub fn is_conjugation_stable(&self, conj: &Conjugation) -> bool {
        self.conjugate_lattice(conj) == self.lat
    }
}

/// All lattices `L` with `sub <= L <= sup`, enumerated through Hermite
/// forms in the coordinates of `sup`. The candidate count (before the
/// containment filter) is capped.
pub fn sublattices_between(sub: &Lattice, sup: &Lattice, cap: usize) -> Result<Vec<Lattice>> {
    assert!(sup.contains_lattice(sub), "sub must be contained in sup");
    let n = sup.dim();
    // Integer matrix of sub's basis in sup's coordinates, in HNF.
    let m = {
        let rm = sup.coords_matrix_of(sub);
        IntMat::from_fn(n, n, |i, j| {
            let c = &rm[(i, j)];
            debug_assert!(c.denom().is_one());
            c.numer().clone()
        })
        .hnf()
    };
    // Divisor lists for each pivot.
    let mut divisor_lists: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let d = m[(i, i)].clone();
        assert!(d.is_positive(), "sub is full rank");
        divisor_lists.push(divisors(&d));
    }
    // Candidate count: sum over pivot tuples of prod_j h_jj^j.
    let mut count = BigInt::zero();
    let mut stack = vec![(0usize, BigInt::one())];
    while let Some((i, acc)) = stack.pop() {
        if i == n {
            count += acc;
            continue;
        }
        for d in &divisor_lists[i] {
            stack.push((i + 1, &acc * d.pow(i as u32)));
        }
    }
    if count > BigInt::from(cap) {
        return Err(Error::BoundExceeded {
            candidates: count,
            cap,
        });
    }

    let mut out = Vec::new();
    let mut pivots = vec![0usize; n]; // indices into divisor_lists
    loop {
        // Enumerate off-diagonal entries for this pivot tuple.
        enumerate_offdiag(&m, &divisor_lists, &pivots, sup, &mut out);
        // Advance the pivot odometer.
        let mut i = 0;
        loop {
            if i == n {
                let mut lats: Vec<Lattice> = out;
                lats.sort();
                lats.dedup();
                return Ok(lats);
            }
            pivots[i] += 1;
            if pivots[i] < divisor_lists[i].len() {
                break;
            }
            pivots[i] = 0;
            i += 1;
        }
    }
}

fn enumerate_offdiag(
    m: &IntMat,
    divisor_lists: &[Vec<BigInt>],
    pivots: &[usize],
    sup: &Lattice,
    out: &mut Vec<Lattice>,
) {
    let n = pivots.len();
    let diag: Vec<BigInt> = (0..n).map(|i| divisor_lists[i][pivots[i]].clone()).collect();
    // Positions (i, j) with i < j and diag[j] > 1; other entries are 0.
    let positions: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(_, j)| !diag[j].is_one())
        .collect();
    let mut values = vec![BigInt::zero(); positions.len()];
    loop {
        // Build H and test containment of all rows of m.
        let mut h = IntMat::zeros(n, n);
        for i in 0..n {
            h[(i, i)] = diag[i].clone();
        }
        for (k, &(i, j)) in positions.iter().enumerate() {
            h[(i, j)] = values[k].clone();
        }
        let contains_m = (0..n).all(|r| mat::solve_upper_triangular(&h, m.row(r)).is_some());
        if contains_m {
            // Lattice with rows of H as coordinates in sup's basis:
            // basis matrix H * num(sup) over den(sup).
            let rows = h.mul(sup.basis_num());
            out.push(
                Lattice::from_int_rows(sup.algebra(), rows, sup.den().clone())
                    .expect("full rank"),
            );
        }
        // Odometer over off-diagonal values.
        let mut k = 0;
        loop {
            if k == positions.len() {
                return;
            }
            values[k] += 1;
            if values[k] < diag[positions[k].1] {
                break;
            }
            values[k] = BigInt::zero();
            k += 1;
        }
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let facs = factor_integer(n);
    let mut divs = vec![BigInt::one()];
    for (p, e) in facs {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}
