//! Linear algebra and finite commutative algebras over a prime field F_p.
//!
//! Used to split `S/pS` for an order `S`: the nilradical is the kernel of an
//! iterated Frobenius map, and the semisimple quotient is decomposed into
//! fields through its Berlekamp subalgebra `{x : x^p = x}`, whose elements
//! have split squarefree minimal polynomials. Only root finding of split
//! polynomials is ever needed, no general factorization.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Nonnegative residue of `x` mod `p`.
pub fn reduce_mod(p: &BigInt, x: BigInt) -> BigInt {
    let r = x % p;
    if r.is_negative() {
        r + p
    } else {
        r
    }
}

fn md(p: &BigInt, x: BigInt) -> BigInt {
    reduce_mod(p, x)
}

fn inv_mod(p: &BigInt, x: &BigInt) -> BigInt {
    // p prime, x not divisible by p.
    let e = p - BigInt::from(2);
    x.modpow(&e, p)
}

/// Row-major matrix over F_p, entries reduced into `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMat {
    pub p: BigInt,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl FpMat {
    pub fn new(p: BigInt, rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(rows * cols, data.len());
        let data = data.into_iter().map(|x| md(&p, x)).collect();
        FpMat { p, rows, cols, data }
    }

    pub fn identity(p: BigInt, n: usize) -> Self {
        let mut m = FpMat::new(p, n, n, vec![BigInt::zero(); n * n]);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.p, other.p);
        let mut data = vec![BigInt::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    data[i * other.cols + j] += self.at(i, k) * other.at(k, j);
                }
            }
        }
        FpMat::new(self.p.clone(), self.rows, other.cols, data)
    }

    pub fn pow(&self, e: usize) -> FpMat {
        assert_eq!(self.rows, self.cols);
        let mut acc = FpMat::identity(self.p.clone(), self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn sub(&self, other: &FpMat) -> FpMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| md(&self.p, a - b))
            .collect();
        FpMat::new(self.p.clone(), self.rows, self.cols, data)
    }

    /// Reduced row echelon form; returns the pivot column of each nonzero row.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(sel) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(r * self.cols + j, sel * self.cols + j);
            }
            let inv = inv_mod(&p, self.at(r, c));
            for j in 0..self.cols {
                let v = md(&p, &self.data[r * self.cols + j] * &inv);
                self.data[r * self.cols + j] = v;
            }
            for i in 0..self.rows {
                if i == r || self.at(i, c).is_zero() {
                    continue;
                }
                let f = self.at(i, c).clone();
                for j in 0..self.cols {
                    let t = &f * &self.data[r * self.cols + j];
                    let v = md(&p, &self.data[i * self.cols + j] - t);
                    self.data[i * self.cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of `{v : v * M = 0}` (row vectors).
    pub fn left_kernel(&self) -> Vec<Vec<BigInt>> {
        // Right kernel of the transpose.
        let mut t = FpMat::new(
            self.p.clone(),
            self.cols,
            self.rows,
            {
                let mut data = Vec::with_capacity(self.data.len());
                for i in 0..self.cols {
                    for j in 0..self.rows {
                        data.push(self.at(j, i).clone());
                    }
                }
                data
            },
        );
        let pivots = t.rref();
        let free: Vec<usize> = (0..t.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![BigInt::zero(); t.cols];
            v[f] = BigInt::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = md(&self.p, -t.at(row, f).clone());
            }
            basis.push(v);
        }
        basis
    }
}

/// Polynomial over F_p, lowest degree first, trimmed, coefficients in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub p: BigInt,
    pub coeffs: Vec<BigInt>,
}

impl FpPoly {
    pub fn new(p: BigInt, coeffs: Vec<BigInt>) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(|c| md(&p, c)).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: BigInt) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = md(&self.p, acc * x + c);
        }
        acc
    }

    pub fn monic(&self) -> FpPoly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => {
                let inv = inv_mod(&self.p, l);
                FpPoly::new(
                    self.p.clone(),
                    self.coeffs.iter().map(|c| c * &inv).collect(),
                )
            }
        }
    }

    pub fn mul(&self, other: &FpPoly) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p.clone());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        FpPoly::new(self.p.clone(), out)
    }

    pub fn sub(&self, other: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &Vec<BigInt>, i: usize| v.get(i).cloned().unwrap_or_else(BigInt::zero);
        FpPoly::new(
            self.p.clone(),
            (0..n)
                .map(|i| get(&self.coeffs, i) - get(&other.coeffs, i))
                .collect(),
        )
    }

    pub fn rem(&self, m: &FpPoly) -> FpPoly {
        assert!(!m.is_zero());
        let dm = m.degree().unwrap();
        let leadinv = inv_mod(&self.p, m.coeffs.last().unwrap());
        let mut r = self.coeffs.clone();
        while r.len() > dm {
            let k = r.len() - 1;
            let c = md(&self.p, &r[k] * &leadinv);
            if !c.is_zero() {
                for i in 0..=dm {
                    let t = &c * &m.coeffs[i];
                    r[k - dm + i] = md(&self.p, &r[k - dm + i] - t);
                }
            }
            r.pop();
        }
        FpPoly::new(self.p.clone(), r)
    }

    pub fn gcd(a: &FpPoly, b: &FpPoly) -> FpPoly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `base^e mod m`.
    pub fn modpow(&self, e: &BigInt, m: &FpPoly) -> FpPoly {
        let mut result = FpPoly::new(self.p.clone(), vec![BigInt::one()]);
        let mut base = self.rem(m);
        let mut e = e.clone();
        let two = BigInt::from(2);
        while e.is_positive() {
            if (&e % &two).is_one() {
                result = result.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e /= &two;
        }
        result
    }

    /// All roots of a squarefree polynomial that splits into distinct linear
    /// factors over F_p. Deterministic for small p; seeded Cantor-Zassenhaus
    /// splitting otherwise.
    pub fn roots_of_split(&self) -> Vec<BigInt> {
        let d = match self.degree() {
            None | Some(0) => return vec![],
            Some(d) => d,
        };
        if d == 1 {
            let m = self.monic();
            return vec![md(&self.p, -m.coeffs[0].clone())];
        }
        if self.p <= BigInt::from(256) {
            let mut roots = Vec::new();
            let mut c = BigInt::zero();
            while c < self.p {
                if self.eval(&c).is_zero() {
                    roots.push(c.clone());
                }
                c += 1;
            }
            return roots;
        }
        // p odd and large: random shift splitting.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0f00 ^ d as u64);
        let m = self.monic();
        let half = (&self.p - BigInt::one()) / BigInt::from(2);
        loop {
            let a = md(&self.p, BigInt::from(rng.next_u64()));
            let shift = FpPoly::new(self.p.clone(), vec![a, BigInt::one()]);
            let s = shift.modpow(&half, &m);
            let s1 = s.sub(&FpPoly::new(self.p.clone(), vec![BigInt::one()]));
            let g = FpPoly::gcd(&s1, &m);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < d {
                let q = div_exact(&m, &g);
                debug_assert!(m.sub(&g.mul(&q)).is_zero());
                let mut roots = g.roots_of_split();
                roots.extend(q.roots_of_split());
                return roots;
            }
        }
    }
}

fn div_exact(a: &FpPoly, b: &FpPoly) -> FpPoly {
    // Long division, quotient only (used when b | a).
    let db = b.degree().unwrap();
    let leadinv = inv_mod(&a.p, b.coeffs.last().unwrap());
    let mut r = a.coeffs.clone();
    let mut q = vec![BigInt::zero(); a.coeffs.len().saturating_sub(db)];
    while r.len() > db {
        let k = r.len() - 1;
        let c = md(&a.p, &r[k] * &leadinv);
        q[k - db] = c.clone();
        if !c.is_zero() {
            for i in 0..=db {
                let t = &c * &b.coeffs[i];
                r[k - db + i] = md(&a.p, &r[k - db + i] - t);
            }
        }
        r.pop();
    }
    FpPoly::new(a.p.clone(), q)
}

/// Finite-dimensional commutative F_p-algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct FpAlgebra {
    pub p: BigInt,
    pub dim: usize,
    /// `table[i * dim + j]` = coordinates of `b_i * b_j`.
    pub table: Vec<Vec<BigInt>>,
    pub one: Vec<BigInt>,
}

impl FpAlgebra {
    pub fn mul(&self, u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim];
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = md(&self.p, a * b);
                for (k, t) in self.table[i * self.dim + j].iter().enumerate() {
                    out[k] += &ab * t;
                }
            }
        }
        out.into_iter().map(|x| md(&self.p, x)).collect()
    }

    pub fn pow(&self, u: &[BigInt], e: &BigInt) -> Vec<BigInt> {
        let mut result = self.one.clone();
        let mut base = u.to_vec();
        let mut e = e.clone();
        let two = BigInt::from(2);
        while e.is_positive() {
            if (&e % &two).is_one() {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e /= &two;
        }
        result
    }

    /// Matrix of the (F_p-linear) map `x -> x^p`; row `i` is `b_i^p`.
    pub fn frobenius_matrix(&self) -> FpMat {
        let mut data = Vec::with_capacity(self.dim * self.dim);
        for i in 0..self.dim {
            let mut e = vec![BigInt::zero(); self.dim];
            e[i] = BigInt::one();
            data.extend(self.pow(&e, &self.p));
        }
        FpMat::new(self.p.clone(), self.dim, self.dim, data)
    }

    /// Basis (row vectors) of the nilradical: the kernel of enough iterates
    /// of Frobenius to kill every nilpotent.
    pub fn nilradical(&self) -> Vec<Vec<BigInt>> {
        if self.dim == 0 {
            return vec![];
        }
        let mut e = 0usize;
        let mut pe = BigInt::one();
        while pe < BigInt::from(self.dim) {
            pe *= &self.p;
            e += 1;
        }
        let f = self.frobenius_matrix().pow(e.max(1));
        f.left_kernel()
    }

    /// Quotient algebra by an ideal given as a subspace (row basis), plus
    /// the data needed to project to and lift from the quotient.
    pub fn quotient(&self, ideal_rows: &[Vec<BigInt>]) -> (FpAlgebra, QuotientMap) {
        let k = ideal_rows.len();
        let mut m = FpMat::new(
            self.p.clone(),
            k.max(1),
            self.dim,
            if k == 0 {
                vec![BigInt::zero(); self.dim]
            } else {
                ideal_rows.iter().flatten().cloned().collect()
            },
        );
        let pivots = m.rref();
        let nonpivots: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let map = QuotientMap {
            p: self.p.clone(),
            dim: self.dim,
            rref: m,
            pivots,
            nonpivots,
        };
        let qdim = map.nonpivots.len();
        let mut table = Vec::with_capacity(qdim * qdim);
        for i in 0..qdim {
            for j in 0..qdim {
                let bi = map.lift_unit(i);
                let bj = map.lift_unit(j);
                table.push(map.project(&self.mul(&bi, &bj)));
            }
        }
        let one = map.project(&self.one);
        (
            FpAlgebra {
                p: self.p.clone(),
                dim: qdim,
                table,
                one,
            },
            map,
        )
    }

    /// Minimal polynomial of `u` (monic) over F_p.
    pub fn min_poly(&self, u: &[BigInt]) -> FpPoly {
        // Grow the list of powers 1, u, u^2, ... until dependent; an RREF of
        // the power rows augmented with an identity block records the
        // dependence coefficients.
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut power = self.one.clone();
        loop {
            rows.push(power.clone());
            let k = rows.len();
            let width = self.dim + k;
            let mut data = Vec::with_capacity(k * width);
            for (i, row) in rows.iter().enumerate() {
                data.extend(row.iter().cloned());
                for j in 0..k {
                    data.push(if i == j { BigInt::one() } else { BigInt::zero() });
                }
            }
            let mut aug = FpMat::new(self.p.clone(), k, width, data);
            aug.rref();
            // A dependence shows up as a row that is zero on the left block.
            for r in 0..k {
                if (0..self.dim).all(|j| aug.at(r, j).is_zero()) {
                    let coeffs: Vec<BigInt> =
                        (0..k).map(|j| aug.at(r, self.dim + j).clone()).collect();
                    // The first k-1 powers were independent, so the top
                    // coefficient is nonzero.
                    debug_assert!(!coeffs[k - 1].is_zero());
                    return FpPoly::new(self.p.clone(), coeffs).monic();
                }
            }
            power = self.mul(&power, u);
            assert!(rows.len() <= self.dim + 1, "min_poly did not terminate");
        }
    }

    /// Primitive idempotents of a **semisimple** commutative algebra, via
    /// the Berlekamp subalgebra. Deterministic output order (sorted).
    pub fn primitive_idempotents(&self) -> Vec<Vec<BigInt>> {
        if self.dim == 0 {
            return vec![];
        }
        let frob = self.frobenius_matrix();
        let fixed = frob.sub(&FpMat::identity(self.p.clone(), self.dim));
        let kernel = fixed.left_kernel();
        if kernel.len() <= 1 {
            return vec![self.one.clone()];
        }
        // Find a kernel vector that is not a scalar multiple of 1.
        let w = kernel
            .iter()
            .find(|v| !is_scalar_multiple(&self.p, v, &self.one))
            .expect("berlekamp dimension > 1 must contain a non-constant")
            .clone();
        let m = self.min_poly(&w);
        let roots = m.roots_of_split();
        assert!(roots.len() >= 2, "non-constant fixed vector must split");
        let mut idempotents = Vec::new();
        for c in &roots {
            // Lagrange indicator: prod_{c' != c} (w - c') / (c - c')
            let mut e = self.one.clone();
            for c2 in &roots {
                if c2 == c {
                    continue;
                }
                let denom = inv_mod(&self.p, &md(&self.p, c - c2));
                let mut shifted = w.clone();
                for (i, oi) in self.one.iter().enumerate() {
                    shifted[i] = md(&self.p, &shifted[i] - c2 * oi);
                }
                let scaled: Vec<BigInt> =
                    shifted.iter().map(|x| md(&self.p, x * &denom)).collect();
                e = self.mul(&e, &scaled);
            }
            // Component algebra e*B; recurse.
            let (sub, basis_rows) = self.ideal_subalgebra(&e);
            for idem in sub.primitive_idempotents() {
                // Map back: coords * basis_rows
                let mut v = vec![BigInt::zero(); self.dim];
                for (coef, row) in idem.iter().zip(&basis_rows) {
                    if coef.is_zero() {
                        continue;
                    }
                    for j in 0..self.dim {
                        v[j] = md(&self.p, &v[j] + coef * &row[j]);
                    }
                }
                idempotents.push(v);
            }
        }
        idempotents.sort();
        idempotents
    }

    /// The ideal `e*B` as an algebra with identity `e`; returns the algebra
    /// together with its basis rows in `B` coordinates.
    fn ideal_subalgebra(&self, e: &[BigInt]) -> (FpAlgebra, Vec<Vec<BigInt>>) {
        let mut gen_rows = Vec::new();
        for i in 0..self.dim {
            let mut b = vec![BigInt::zero(); self.dim];
            b[i] = BigInt::one();
            gen_rows.push(self.mul(e, &b));
        }
        let mut m = FpMat::new(
            self.p.clone(),
            self.dim,
            self.dim,
            gen_rows.into_iter().flatten().collect(),
        );
        let pivots = m.rref();
        let k = pivots.len();
        let basis: Vec<Vec<BigInt>> = (0..k).map(|i| m.data[i * self.dim..(i + 1) * self.dim].to_vec()).collect();
        let represent = |v: &[BigInt]| -> Vec<BigInt> {
            // RREF basis: coefficient of row r is v[pivot_r].
            pivots.iter().map(|&pc| v[pc].clone()).collect()
        };
        let mut table = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                table.push(represent(&self.mul(&basis[i], &basis[j])));
            }
        }
        let one = represent(e);
        (
            FpAlgebra {
                p: self.p.clone(),
                dim: k,
                table,
                one,
            },
            basis,
        )
    }
}

fn is_scalar_multiple(p: &BigInt, v: &[BigInt], w: &[BigInt]) -> bool {
    // Is v = c*w for some scalar c? (w nonzero)
    let Some(i0) = w.iter().position(|x| !x.is_zero()) else {
        return v.iter().all(|x| x.is_zero());
    };
    let c = md(p, &v[i0] * inv_mod(p, &w[i0]));
    v.iter()
        .zip(w)
        .all(|(vi, wi)| *vi == md(p, &c * wi))
}

/// Projection/lift data for a quotient of an F_p vector space.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    p: BigInt,
    dim: usize,
    rref: FpMat,
    pivots: Vec<usize>,
    nonpivots: Vec<usize>,
}

impl QuotientMap {
    /// Reduce modulo the subspace, then read off non-pivot coordinates.
    pub fn project(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut r = v.to_vec();
        for (row, &pc) in self.pivots.iter().enumerate() {
            let c = r[pc].clone();
            if c.is_zero() {
                continue;
            }
            for (j, rj) in r.iter_mut().enumerate() {
                let t = &c * self.rref.at(row, j);
                *rj = md(&self.p, &*rj - t);
            }
        }
        self.nonpivots.iter().map(|&c| r[c].clone()).collect()
    }

    /// Section of the projection: quotient coordinates to a representative.
    pub fn lift(&self, q: &[BigInt]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.dim];
        for (qi, &c) in q.iter().zip(&self.nonpivots) {
            v[c] = qi.clone();
        }
        v
    }

    fn lift_unit(&self, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.dim];
        v[self.nonpivots[i]] = BigInt::one();
        v
    }

    pub fn quotient_dim(&self) -> usize {
        self.nonpivots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(n: i64) -> BigInt {
        BigInt::from(n)
    }

    /// F_2[x]/(x^2+x+1) = F_4: basis {1, w}, w^2 = w + 1.
    fn f4() -> FpAlgebra {
        let p = fp(2);
        let table = vec![
            vec![fp(1), fp(0)], // 1*1
            vec![fp(0), fp(1)], // 1*w
            vec![fp(0), fp(1)], // w*1
            vec![fp(1), fp(1)], // w*w
        ];
        FpAlgebra {
            p,
            dim: 2,
            table,
            one: vec![fp(1), fp(0)],
        }
    }

    /// F_5[x]/(x^2-1) = F_5 x F_5.
    fn split_algebra() -> FpAlgebra {
        let p = fp(5);
        let table = vec![
            vec![fp(1), fp(0)],
            vec![fp(0), fp(1)],
            vec![fp(0), fp(1)],
            vec![fp(1), fp(0)], // x*x = 1
        ];
        FpAlgebra {
            p,
            dim: 2,
            table,
            one: vec![fp(1), fp(0)],
        }
    }

    #[test]
    fn field_has_single_idempotent() {
        let b = f4();
        assert!(b.nilradical().is_empty());
        let es = b.primitive_idempotents();
        assert_eq!(es, vec![vec![fp(1), fp(0)]]);
    }

    #[test]
    fn split_algebra_decomposes() {
        let b = split_algebra();
        assert!(b.nilradical().is_empty());
        let es = b.primitive_idempotents();
        assert_eq!(es.len(), 2);
        for e in &es {
            assert_eq!(b.mul(e, e), *e, "idempotent");
        }
        // The two idempotents sum to 1.
        let sum: Vec<BigInt> = (0..2).map(|i| md(&b.p, &es[0][i] + &es[1][i])).collect();
        assert_eq!(sum, b.one);
        // (1 ± x)/2: orthogonal.
        let prod = b.mul(&es[0], &es[1]);
        assert!(prod.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn nilpotents_detected() {
        // F_2[x]/(x^2): x is nilpotent.
        let p = fp(2);
        let table = vec![
            vec![fp(1), fp(0)],
            vec![fp(0), fp(1)],
            vec![fp(0), fp(1)],
            vec![fp(0), fp(0)], // x*x = 0
        ];
        let a = FpAlgebra {
            p,
            dim: 2,
            table,
            one: vec![fp(1), fp(0)],
        };
        let rad = a.nilradical();
        assert_eq!(rad.len(), 1);
        assert_eq!(rad[0], vec![fp(0), fp(1)]);
        let (q, map) = a.quotient(&rad);
        assert_eq!(q.dim, 1);
        assert_eq!(map.quotient_dim(), 1);
        assert!(q.nilradical().is_empty());
    }

    #[test]
    fn min_poly_examples() {
        let b = f4();
        let m = b.min_poly(&[fp(0), fp(1)]); // w: x^2 + x + 1
        assert_eq!(m.coeffs, vec![fp(1), fp(1), fp(1)]);
        let m1 = b.min_poly(&[fp(1), fp(0)]); // 1: x - 1 = x + 1
        assert_eq!(m1.coeffs, vec![fp(1), fp(1)]);
    }

    #[test]
    fn roots_of_split_poly() {
        // (x-1)(x-3) over F_7
        let p = fp(7);
        let m = FpPoly::new(p, vec![fp(3), fp(-4), fp(1)]);
        let mut roots = m.roots_of_split();
        roots.sort();
        assert_eq!(roots, vec![fp(1), fp(3)]);
    }
}
