//! Bicovariant calculus on a finite group G with an ad-stable generating set
//! C, and its first de Rham cohomology.
//!
//! A 1-form is ω = Σₐ cₐ ωₐ with cₐ: G → ℚ, stored densely with index
//! `a·|G| + x`. The conditions below use the right quandle aᵇ = b⁻¹ab.

use std::collections::VecDeque;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::group::{FiniteGroup, GroupElement};
use crate::linalg::{
    primitive_integer, to_sparse, Echelon, Field, LinalgError, PrimeField, Rationals, SparseVec,
};
use crate::quandle::{IPQuandle, RightQuandle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerhamError {
    #[error("index {0} is not an element of C")]
    NotInC(usize),
    #[error("the quandle is not attached to a group")]
    NoEmbedding,
    #[error("expected {expected} coefficients, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the form is not closed")]
    NotClosed,
    #[error(transparent)]
    Field(#[from] LinalgError),
}

/// G, C ⊆ G∖{e}, and the tables needed to evaluate x ↦ xa and aᵇ.
#[derive(Debug, Clone)]
pub struct Calculus {
    group: Arc<FiniteGroup>,
    elements: Vec<GroupElement>,
    names: Vec<String>,
    right: RightQuandle,
    left: Vec<Vec<usize>>,
    /// `step[x][a]`: index of x·a.
    step: Vec<Vec<usize>>,
    identity: usize,
}

impl Calculus {
    pub fn new(q: &IPQuandle) -> Result<Self, DerhamError> {
        let emb = q.embedding().ok_or(DerhamError::NoEmbedding)?;
        let group = emb.group.clone();
        let step = group
            .right_mul_table(&emb.elements)
            .expect("quandle elements lie in their group");
        let identity = group
            .index_of(group.identity())
            .expect("identity is an element");
        Ok(Calculus {
            elements: emb.elements.clone(),
            names: (0..q.len()).map(|a| q.name(a)).collect(),
            right: q.to_right(),
            left: q.table().to_vec(),
            step,
            identity,
            group,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn right_quandle(&self) -> &RightQuandle {
        &self.right
    }

    /// |G|.
    pub fn order(&self) -> usize {
        self.step.len()
    }

    /// |C|.
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn unknowns(&self) -> usize {
        self.order() * self.size()
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    /// Index of x·a.
    pub fn step(&self, x: usize, a: usize) -> usize {
        self.step[x][a]
    }

    fn check_c(&self, a: usize) -> Result<(), DerhamError> {
        if a < self.size() {
            Ok(())
        } else {
            Err(DerhamError::NotInC(a))
        }
    }

    fn check_fn(&self, f: &[BigRational]) -> Result<(), DerhamError> {
        if f.len() == self.order() {
            Ok(())
        } else {
            Err(DerhamError::DimensionMismatch {
                expected: self.order(),
                got: f.len(),
            })
        }
    }

    /// (∂ᵃf)(x) = f(xa) − f(x).
    pub fn partial(&self, a: usize, f: &[BigRational]) -> Result<Vec<BigRational>, DerhamError> {
        self.check_c(a)?;
        self.check_fn(f)?;
        Ok((0..self.order())
            .map(|x| &f[self.step[x][a]] - &f[x])
            .collect())
    }

    pub fn d0(&self, f: &[BigRational]) -> Result<OneForm, DerhamError> {
        self.check_fn(f)?;
        let mut w = OneForm::zero(self.size(), self.order());
        for a in 0..self.size() {
            for x in 0..self.order() {
                w.set(a, x, &f[self.step[x][a]] - &f[x]);
            }
        }
        Ok(w)
    }

    /// δ_y as a function on G.
    pub fn delta(&self, y: usize) -> Vec<BigRational> {
        (0..self.order())
            .map(|x| {
                if x == y {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect()
    }

    pub fn theta(&self) -> OneForm {
        OneForm {
            m: self.size(),
            n: self.order(),
            c: vec![BigRational::one(); self.unknowns()],
        }
    }

    /// The left-invariant form ωₐ.
    pub fn omega(&self, a: usize) -> Result<OneForm, DerhamError> {
        self.check_c(a)?;
        let mut w = OneForm::zero(self.size(), self.order());
        for x in 0..self.order() {
            w.set(a, x, BigRational::one());
        }
        Ok(w)
    }

    pub fn form(&self, coefficients: Vec<BigRational>) -> Result<OneForm, DerhamError> {
        if coefficients.len() != self.unknowns() {
            return Err(DerhamError::DimensionMismatch {
                expected: self.unknowns(),
                got: coefficients.len(),
            });
        }
        Ok(OneForm {
            m: self.size(),
            n: self.order(),
            c: coefficients,
        })
    }

    fn check_form(&self, w: &OneForm) -> Result<(), DerhamError> {
        if w.m == self.size() && w.n == self.order() {
            Ok(())
        } else {
            Err(DerhamError::DimensionMismatch {
                expected: self.unknowns(),
                got: w.c.len(),
            })
        }
    }

    /// Nonzero entries of the closedness condition at (a, b, x), as
    /// (unknown index, coefficient):
    /// c_{aᵇ}(xb) + c_b(x) − c_b(xa) − c_a(x).
    fn closedness_row(&self, a: usize, b: usize, x: usize) -> Vec<(usize, i64)> {
        let n = self.order();
        let ab = self.right.op(a, b);
        let mut terms = vec![
            (ab * n + self.step[x][b], 1),
            (b * n + x, 1),
            (b * n + self.step[x][a], -1),
            (a * n + x, -1),
        ];
        terms.sort_unstable();
        let mut out: Vec<(usize, i64)> = Vec::with_capacity(4);
        for (i, v) in terms {
            match out.last_mut() {
                Some((j, w)) if *j == i => *w += v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|&(_, v)| v != 0);
        out
    }

    /// Number of rows in the closedness system, |C|²·|G|.
    pub fn closedness_rows(&self) -> usize {
        self.size() * self.size() * self.order()
    }

    pub fn is_closed(&self, w: &OneForm) -> bool {
        assert!(self.check_form(w).is_ok(), "form dimension mismatch");
        (0..self.size()).all(|a| {
            (0..self.size()).all(|b| {
                (0..self.order()).all(|x| {
                    self.closedness_row(a, b, x)
                        .iter()
                        .map(|&(i, v)| &w.c[i] * BigRational::from_integer(BigInt::from(v)))
                        .sum::<BigRational>()
                        .is_zero()
                })
            })
        })
    }

    /// Coefficients t_{p,q}(x) = c_q(xp) + c_p(x) of dω on ω_p ⊗ ω_q.
    pub fn d1_tensor(&self, w: &OneForm) -> Tensor2 {
        let (m, n) = (self.size(), self.order());
        let mut t = Tensor2::zero(m, n);
        for p in 0..m {
            for q in 0..m {
                for x in 0..n {
                    t.set(p, q, x, w.get(q, self.step[x][p]) + w.get(p, x));
                }
            }
        }
        t
    }

    /// Ψ̃(ωₐ ⊗ ω_b) = ω_{aba⁻¹} ⊗ ωₐ on coefficients:
    /// (Ψ̃t)_{r,s} = t_{s, s⁻¹rs}.
    pub fn psi_tilde(&self, t: &Tensor2) -> Tensor2 {
        let (m, n) = (self.size(), self.order());
        let mut out = Tensor2::zero(m, n);
        for r in 0..m {
            for s in 0..m {
                let b = self.right.op(r, s);
                for x in 0..n {
                    out.set(r, s, x, t.get(s, b, x).clone());
                }
            }
        }
        out
    }

    /// Ψ̃ on basis labels: (a, b) ↦ (aba⁻¹, a).
    pub fn psi_label(&self, a: usize, b: usize) -> (usize, usize) {
        (self.left[a][b], a)
    }

    /// Closedness as dω ∈ ker(id − Ψ̃).
    pub fn is_closed_via_braiding(&self, w: &OneForm) -> bool {
        let t = self.d1_tensor(w);
        self.psi_tilde(&t) == t
    }

    /// The f with df = ω and f(e) = 0, or `None` when ω is not exact.
    pub fn is_exact(&self, w: &OneForm) -> Result<Option<Vec<BigRational>>, DerhamError> {
        self.check_form(w)?;
        if !self.is_closed(w) {
            return Err(DerhamError::NotClosed);
        }
        let n = self.order();
        let mut f: Vec<Option<BigRational>> = vec![None; n];
        f[self.identity] = Some(BigRational::zero());
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for a in 0..self.size() {
                let y = self.step[x][a];
                if f[y].is_none() {
                    f[y] = Some(f[x].as_ref().unwrap() + w.get(a, x));
                    queue.push_back(y);
                }
            }
        }
        let Some(f) = f.into_iter().collect::<Option<Vec<_>>>() else {
            return Ok(None);
        };
        for a in 0..self.size() {
            let ai = self.right.inv(a);
            for x in 0..n {
                let xa = self.step[x][a];
                if &f[xa] - &f[x] != *w.get(a, x) {
                    return Ok(None);
                }
                if !(w.get(a, x) + w.get(ai, xa)).is_zero() {
                    return Ok(None);
                }
            }
        }
        Ok(Some(f))
    }

    /// dₐ(x) = cₐ(x) + c_{a⁻¹}(xa).
    pub fn d_invariants(&self, w: &OneForm) -> Result<DInvariants, DerhamError> {
        self.check_form(w)?;
        if !self.is_closed(w) {
            return Err(DerhamError::NotClosed);
        }
        let table: Vec<Vec<BigRational>> = (0..self.size())
            .map(|a| {
                let ai = self.right.inv(a);
                (0..self.order())
                    .map(|x| w.get(a, x) + w.get(ai, self.step[x][a]))
                    .collect()
            })
            .collect();
        let first = &table[0][0];
        let constant = table
            .iter()
            .all(|row| row.iter().all(|v| v == first))
            .then(|| first.clone());
        Ok(DInvariants { table, constant })
    }

    fn closed_echelon<F: Field + Clone>(&self, field: F) -> Echelon<F> {
        let mut e = Echelon::new(field.clone(), self.unknowns());
        for a in 0..self.size() {
            for b in 0..self.size() {
                if a == b {
                    continue;
                }
                for x in 0..self.order() {
                    let row: SparseVec<F::E> = self
                        .closedness_row(a, b, x)
                        .into_iter()
                        .map(|(i, v)| (i, field.embed_i64(v)))
                        .collect();
                    if !row.is_empty() {
                        e.insert(&row);
                    }
                }
            }
        }
        e
    }

    fn exact_echelon<F: Field + Clone>(&self, field: F) -> Echelon<F> {
        let n = self.order();
        let mut e = Echelon::new(field.clone(), self.unknowns());
        for y in 0..n {
            let mut entries: Vec<(usize, i64)> = Vec::new();
            for a in 0..self.size() {
                for x in 0..n {
                    let v = i64::from(self.step[x][a] == y) - i64::from(x == y);
                    if v != 0 {
                        entries.push((a * n + x, v));
                    }
                }
            }
            let row: SparseVec<F::E> = entries
                .into_iter()
                .map(|(i, v)| (i, field.embed_i64(v)))
                .collect();
            e.insert(&row);
        }
        e
    }

    fn theta_sparse<F: Field>(&self, field: &F) -> SparseVec<F::E> {
        (0..self.unknowns()).map(|i| (i, field.one())).collect()
    }

    /// Nullspace of the closedness system over ℚ. A basis computed over
    /// 𝔽_p is lifted by rational reconstruction and kept if every lift
    /// satisfies the system exactly: rank over ℚ is at least rank over 𝔽_p,
    /// so the lifts then span the whole rational nullspace. Otherwise the
    /// system is eliminated over ℚ.
    fn closed_nullspace(&self) -> Vec<Vec<BigRational>> {
        self.lifted_nullspace()
            .unwrap_or_else(|| self.closed_echelon(Rationals).nullspace())
    }

    fn lifted_nullspace(&self) -> Option<Vec<Vec<BigRational>>> {
        let field = PrimeField::new(LIFT_PRIME).expect("lift prime is an odd prime");
        let modular = self.closed_echelon(field).nullspace();
        let mut out = Vec::with_capacity(modular.len());
        for v in modular {
            let lifted = v
                .iter()
                .map(|&x| rational_reconstruction(x, LIFT_PRIME))
                .collect::<Option<Vec<BigRational>>>()?;
            let ints = primitive_integer(&lifted);
            let all_rows_vanish = (0..self.size()).all(|a| {
                (0..self.size()).filter(|&b| b != a).all(|b| {
                    (0..self.order()).all(|x| {
                        self.closedness_row(a, b, x)
                            .into_iter()
                            .map(|(i, k)| &ints[i] * k)
                            .sum::<BigInt>()
                            .is_zero()
                    })
                })
            });
            if !all_rows_vanish {
                return None;
            }
            out.push(lifted);
        }
        Some(out)
    }

    /// A basis of the closed 1-forms.
    pub fn closed_basis(&self) -> Vec<OneForm> {
        self.closed_nullspace()
            .into_iter()
            .map(|c| OneForm {
                m: self.size(),
                n: self.order(),
                c,
            })
            .collect()
    }

    /// H¹ over ℚ with representatives of a basis.
    pub fn h1(&self) -> H1Result {
        let exact = self.exact_echelon(Rationals);
        let z = self.closed_nullspace();
        let theta = self.theta_sparse(&Rationals);
        let theta_independent = !exact.contains(&theta);
        let mut span = exact.clone();
        let mut basis = Vec::new();
        let candidates = std::iter::once(theta).chain(z.iter().map(|v| to_sparse(&Rationals, v)));
        for v in candidates {
            if span.insert(&v) {
                let r = exact.reduce(&v);
                let mut dense = vec![BigRational::zero(); self.unknowns()];
                for (i, x) in r {
                    dense[i] = x;
                }
                let ints = primitive_integer(&dense);
                basis.push(OneForm {
                    m: self.size(),
                    n: self.order(),
                    c: ints.into_iter().map(BigRational::from_integer).collect(),
                });
            }
        }
        let dims = H1Dims {
            dim_closed: z.len(),
            dim_exact: exact.rank(),
            dim_h1: z.len() - exact.rank(),
            theta_independent,
        };
        debug_assert_eq!(basis.len(), dims.dim_h1);
        H1Result { dims, basis }
    }

    /// H¹ dimensions over 𝔽_p for an odd prime p.
    pub fn h1_mod_p(&self, p: u64) -> Result<H1Dims, DerhamError> {
        let field = PrimeField::new(p)?;
        let closed = self.closed_echelon(field);
        let exact = self.exact_echelon(field);
        let dim_closed = self.unknowns() - closed.rank();
        Ok(H1Dims {
            dim_closed,
            dim_exact: exact.rank(),
            dim_h1: dim_closed - exact.rank(),
            theta_independent: !exact.contains(&self.theta_sparse(&field)),
        })
    }
}

/// Prime used to lift closed forms from 𝔽_p to ℚ.
const LIFT_PRIME: u64 = 2_147_483_647;

/// The fraction r/s ≡ x mod p with |r|, |s| ≤ √(p/2), if one exists.
fn rational_reconstruction(x: u64, p: u64) -> Option<BigRational> {
    let bound = ((p / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (p as i128, x as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if t1 == 0 || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(BigInt::from(r1), BigInt::from(t1)))
}

/// Coefficients cₐ(x), a ∈ C, x ∈ G.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneForm {
    m: usize,
    n: usize,
    c: Vec<BigRational>,
}

impl OneForm {
    pub fn zero(m: usize, n: usize) -> Self {
        OneForm {
            m,
            n,
            c: vec![BigRational::zero(); m * n],
        }
    }

    pub fn get(&self, a: usize, x: usize) -> &BigRational {
        &self.c[a * self.n + x]
    }

    pub fn set(&mut self, a: usize, x: usize, v: BigRational) {
        self.c[a * self.n + x] = v;
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &OneForm) -> OneForm {
        self.zip(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &OneForm) -> OneForm {
        self.zip(other, |x, y| x - y)
    }

    pub fn scale(&self, k: &BigRational) -> OneForm {
        OneForm {
            m: self.m,
            n: self.n,
            c: self.c.iter().map(|x| x * k).collect(),
        }
    }

    fn zip(
        &self,
        other: &OneForm,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> OneForm {
        assert_eq!(
            (self.m, self.n),
            (other.m, other.n),
            "form dimension mismatch"
        );
        OneForm {
            m: self.m,
            n: self.n,
            c: self.c.iter().zip(&other.c).map(|(x, y)| f(x, y)).collect(),
        }
    }
}

/// Coefficients t_{p,q}(x) on ω_p ⊗ ω_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor2 {
    m: usize,
    n: usize,
    t: Vec<BigRational>,
}

impl Tensor2 {
    pub fn zero(m: usize, n: usize) -> Self {
        Tensor2 {
            m,
            n,
            t: vec![BigRational::zero(); m * m * n],
        }
    }

    pub fn get(&self, p: usize, q: usize, x: usize) -> &BigRational {
        &self.t[(p * self.m + q) * self.n + x]
    }

    pub fn set(&mut self, p: usize, q: usize, x: usize, v: BigRational) {
        self.t[(p * self.m + q) * self.n + x] = v;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DInvariants {
    /// `table[a][x]` = dₐ(x).
    pub table: Vec<Vec<BigRational>>,
    pub constant: Option<BigRational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct H1Dims {
    pub dim_closed: usize,
    pub dim_exact: usize,
    pub dim_h1: usize,
    pub theta_independent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Result {
    pub dims: H1Dims,
    /// Integer representatives reduced modulo exact forms, [θ] first when
    /// it is nonzero.
    pub basis: Vec<OneForm>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Perm;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn s3() -> Calculus {
        let t = |a: u32, b: u32| GroupElement::Perm(Perm::from_cycles(3, &[&[a, b]]).unwrap());
        let class = vec![t(0, 1), t(0, 2), t(1, 2)];
        let g = FiniteGroup::closure_from_generators(&class, 100).unwrap();
        Calculus::new(&IPQuandle::conjugation(&g, &class, None).unwrap()).unwrap()
    }

    fn z2() -> Calculus {
        let x = GroupElement::Perm(Perm::from_cycles(2, &[&[0, 1]]).unwrap());
        let g = FiniteGroup::closure_from_generators(std::slice::from_ref(&x), 10).unwrap();
        Calculus::new(&IPQuandle::conjugation(&g, &[x], None).unwrap()).unwrap()
    }

    #[test]
    fn partial_derivatives() {
        let c = z2();
        let e = c.identity_index();
        let x = 1 - e;
        let d = c.partial(0, &c.delta(e)).unwrap();
        assert_eq!(d[e], q(-1));
        assert_eq!(d[x], q(1));
        assert_eq!(c.partial(0, &[q(3), q(3)]).unwrap(), vec![q(0), q(0)]);
        assert_eq!(c.partial(1, &[q(0), q(0)]), Err(DerhamError::NotInC(1)));
        assert!(matches!(
            c.partial(0, &[q(0)]),
            Err(DerhamError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn d0_of_delta_on_s3() {
        let c = s3();
        let w = c.d0(&c.delta(c.identity_index())).unwrap();
        let nonzero = w.coefficients().iter().filter(|x| !x.is_zero()).count();
        assert_eq!(nonzero, 6);
        assert!(c.is_closed(&w));
        assert!(c.is_closed_via_braiding(&w));
        let f = c.is_exact(&w).unwrap().unwrap();
        assert_eq!(f[c.identity_index()], q(0));
        let back = c.d0(&f).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn theta_is_closed_not_exact() {
        let c = s3();
        let t = c.theta();
        assert!(c.is_closed(&t));
        assert!(c.is_closed_via_braiding(&t));
        assert_eq!(c.is_exact(&t).unwrap(), None);
        assert_eq!(c.d_invariants(&t).unwrap().constant, Some(q(2)));
    }

    #[test]
    fn single_left_invariant_form_is_not_closed() {
        let c = s3();
        let w = c.omega(0).unwrap();
        assert!(!c.is_closed(&w));
        assert!(!c.is_closed_via_braiding(&w));
        assert_eq!(c.is_exact(&w), Err(DerhamError::NotClosed));
        assert_eq!(c.d_invariants(&w), Err(DerhamError::NotClosed));
    }

    #[test]
    fn psi_tilde_moves_theta_past_omega() {
        let c = s3();
        let (m, n) = (c.size(), c.order());
        for a in 0..m {
            let mut t = Tensor2::zero(m, n);
            let mut expected = Tensor2::zero(m, n);
            for b in 0..m {
                for x in 0..n {
                    t.set(a, b, x, q(1));
                    expected.set(b, a, x, q(1));
                }
            }
            assert_eq!(c.psi_tilde(&t), expected);
        }
    }

    #[test]
    fn s3_cohomology() {
        let c = s3();
        let h = c.h1();
        assert_eq!(
            h.dims,
            H1Dims {
                dim_closed: 6,
                dim_exact: 5,
                dim_h1: 1,
                theta_independent: true
            }
        );
        let rep = &h.basis[0];
        let lambda = c.d_invariants(rep).unwrap().constant.unwrap();
        assert!(!lambda.is_zero());
        let diff = rep.sub(&c.theta().scale(&(lambda / q(2))));
        assert!(c.is_exact(&diff).unwrap().is_some());
        for p in [3, 5, 7] {
            assert_eq!(c.h1_mod_p(p).unwrap(), h.dims);
        }
        assert!(matches!(c.h1_mod_p(2), Err(DerhamError::Field(_))));
    }

    #[test]
    fn z2_cohomology_is_theta() {
        let h = z2().h1();
        assert_eq!(h.dims.dim_h1, 1);
        assert_eq!(h.dims.dim_exact, 1);
    }

    #[test]
    fn reconstruction() {
        let p = LIFT_PRIME;
        let f = PrimeField::new(p).unwrap();
        let x = f.mul(&f.embed_i64(-3), &f.inv(&7));
        assert_eq!(
            rational_reconstruction(x, p),
            Some(BigRational::new((-3).into(), 7.into()))
        );
        assert_eq!(rational_reconstruction(0, p), Some(BigRational::zero()));
        assert_eq!(
            rational_reconstruction(p / 2, p),
            Some(BigRational::new((-1).into(), 2.into()))
        );
    }

    #[test]
    fn lift_matches_rational_elimination() {
        for q in [
            crate::catalog::dihedral(4).unwrap(),
            crate::catalog::symmetric_2cycles(4).unwrap(),
        ] {
            let c = Calculus::new(&q).unwrap();
            let lifted = c.lifted_nullspace().expect("lift verifies");
            let direct = c.closed_echelon(Rationals).nullspace();
            assert_eq!(lifted, direct);
        }
    }
}
