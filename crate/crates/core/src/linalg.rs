//! Exact sparse elimination over ℚ and over prime fields.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
}

/// Field operations on an element type, carried by a context value.
pub trait Field {
    type E: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn embed_i64(&self, v: i64) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Panics on zero.
    fn inv(&self, a: &Self::E) -> Self::E;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn embed_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverting zero");
        a.recip()
    }
}

/// ℤ/p for an odd prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if p < 3 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(LinalgError::NotOddPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

impl Field for PrimeField {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn embed_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverting zero");
        self.pow(*a, self.p - 2)
    }
}

/// Sorted `(column, value)` pairs with nonzero values.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Rows in semi-echelon form: each stored row has a leading 1 in its pivot
/// column and is zero in every pivot column that existed when it was added.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<SparseVec<F::E>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            pivot_row: vec![None; ncols],
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns in insertion order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec<F::E>) -> SparseVec<F::E> {
        let f = &self.field;
        let Some(&(start, _)) = v.first() else {
            return Vec::new();
        };
        let mut acc: Vec<F::E> = vec![f.zero(); self.ncols];
        for (c, x) in v {
            acc[*c] = f.add(&acc[*c], x);
        }
        let mut out = Vec::new();
        for c in start..self.ncols {
            if f.is_zero(&acc[c]) {
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    let k = std::mem::replace(&mut acc[c], f.zero());
                    for (j, y) in &self.rows[r][1..] {
                        acc[*j] = f.sub(&acc[*j], &f.mul(&k, y));
                    }
                }
                None => out.push((c, std::mem::replace(&mut acc[c], f.zero()))),
            }
        }
        out
    }

    /// Adds `v` to the row space. Returns whether it raised the rank.
    pub fn insert(&mut self, v: &SparseVec<F::E>) -> bool {
        let r = self.reduce(v);
        self.push_reduced(r)
    }

    fn push_reduced(&mut self, r: SparseVec<F::E>) -> bool {
        let Some((c, lead)) = r.first().cloned() else {
            return false;
        };
        let f = &self.field;
        let s = f.inv(&lead);
        let row: SparseVec<F::E> = r.into_iter().map(|(j, x)| (j, f.mul(&s, &x))).collect();
        self.pivot_row[c] = Some(self.rows.len());
        self.pivots.push(c);
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: &SparseVec<F::E>) -> bool {
        self.reduce(v).is_empty()
    }

    /// A basis of `{x : row · x = 0 for every stored row}`, one vector per
    /// non-pivot column with a 1 there, in column order.
    pub fn nullspace(&self) -> Vec<Vec<F::E>> {
        let f = &self.field;
        let mut order = self.pivots.clone();
        order.sort_unstable_by(|a, b| b.cmp(a));
        (0..self.ncols)
            .filter(|&c| self.pivot_row[c].is_none())
            .map(|free| {
                let mut x = vec![f.zero(); self.ncols];
                x[free] = f.one();
                for &p in &order {
                    let row = &self.rows[self.pivot_row[p].unwrap()];
                    let mut s = f.zero();
                    for (j, y) in &row[1..] {
                        if !f.is_zero(&x[*j]) {
                            s = f.add(&s, &f.mul(y, &x[*j]));
                        }
                    }
                    x[p] = f.neg(&s);
                }
                x
            })
            .collect()
    }
}

pub fn to_sparse<F: Field>(f: &F, dense: &[F::E]) -> SparseVec<F::E> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, x)| !f.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense<F: Field>(f: &F, sparse: &SparseVec<F::E>, n: usize) -> Vec<F::E> {
    let mut v = vec![f.zero(); n];
    for (i, x) in sparse {
        v[*i] = x.clone();
    }
    v
}

/// Scales a rational vector to coprime integers, first nonzero entry
/// positive.
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(v: i64) -> BigRational {
        Rationals.embed_i64(v)
    }

    fn row(v: &[i64]) -> SparseVec<BigRational> {
        to_sparse(&Rationals, &v.iter().map(|&x| q(x)).collect::<Vec<_>>())
    }

    fn dot(a: &[BigRational], b: &[i64]) -> BigRational {
        a.iter().zip(b).map(|(x, &y)| x * q(y)).sum()
    }

    #[test]
    fn rank_and_nullspace() {
        let mut e = Echelon::new(Rationals, 3);
        assert!(e.insert(&row(&[1, 2, 3])));
        assert!(e.insert(&row(&[2, 4, 7])));
        assert!(!e.insert(&row(&[3, 6, 10])));
        assert_eq!(e.rank(), 2);
        let ns = e.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![q(-2), q(1), q(0)]);
    }

    #[test]
    fn prime_field_detects_characteristic() {
        // det = 3, singular mod 3 only
        let rows = [[1i64, 1], [1, 4]];
        let mut e3 = Echelon::new(PrimeField::new(3).unwrap(), 2);
        let mut e5 = Echelon::new(PrimeField::new(5).unwrap(), 2);
        for r in rows {
            let f3 = *e3.field();
            let f5 = *e5.field();
            e3.insert(&to_sparse(&f3, &r.map(|x| f3.embed_i64(x))));
            e5.insert(&to_sparse(&f5, &r.map(|x| f5.embed_i64(x))));
        }
        assert_eq!(e3.rank(), 1);
        assert_eq!(e5.rank(), 2);
    }

    #[test]
    fn prime_validation() {
        assert_eq!(PrimeField::new(2), Err(LinalgError::NotOddPrime(2)));
        assert_eq!(PrimeField::new(9), Err(LinalgError::NotOddPrime(9)));
        assert!(PrimeField::new(7).is_ok());
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&f.inv(&3), &3), 1);
        assert_eq!(f.embed_i64(-1), 6);
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![
            BigRational::new(BigInt::from(-1), BigInt::from(2)),
            q(0),
            BigRational::new(BigInt::from(3), BigInt::from(4)),
        ];
        let expected: Vec<BigInt> = [2, 0, -3].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(primitive_integer(&v), expected);
    }

    proptest! {
        #[test]
        fn nullspace_is_annihilated(
            seed in proptest::collection::vec(-3i64..4, 30),
            nrows in 0usize..6,
        ) {
            let rows: Vec<Vec<i64>> = (0..nrows).map(|i| seed[i * 5..i * 5 + 5].to_vec()).collect();
            let mut e = Echelon::new(Rationals, 5);
            for r in &rows {
                e.insert(&row(r));
            }
            let ns = e.nullspace();
            prop_assert_eq!(ns.len() + e.rank(), 5);
            for x in &ns {
                for r in &rows {
                    prop_assert!(dot(x, r).is_zero());
                }
            }
        }
    }
}
