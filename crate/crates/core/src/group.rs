//! Finite groups with concrete backends.
//!
//! Three element representations are supported: permutations of `0..n`,
//! 2×2 integer matrices of determinant ±1, and coset indices of a completed
//! coset table (the regular representation of a finitely presented group).
//! A [`FiniteGroup`] always carries its full element list, enumerated
//! breadth-first from the identity.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Default upper bound on the number of elements enumerated by
/// [`FiniteGroup::closure_from_generators`].
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generators mix element backends")]
    MixedBackends,
    #[error("no generators given")]
    NoGenerators,
    #[error("element {0} is not in the group")]
    ElementNotInGroup(GroupElement),
    #[error("matrix {0} is not invertible over the integers")]
    NotInvertible(Mat2),
    #[error("coset elements can only be multiplied inside their coset-table group")]
    DetachedCoset,
}

/// A permutation of `0..n`, stored as its image tuple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// Builds a permutation from its images. Returns `None` unless `images`
    /// is a permutation of `0..images.len()`.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen.get_mut(i as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Perm(images))
    }

    /// Builds a permutation of `0..n` from disjoint cycles given with
    /// 0-based points.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Option<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let q = cycle[(k + 1) % cycle.len()];
                *images.get_mut(p as usize)? = q;
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.0[point as usize]
    }

    /// Composition `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Disjoint cycle decomposition, 1-based, fixed points omitted.
    pub fn cycle_string(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            out.push('(');
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    out.push(' ');
                }
                first = false;
                out.push_str(&(p + 1).to_string());
                p = self.0[p] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

/// A 2×2 integer matrix in row-major order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mat2(pub [i64; 4]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([1, 0, 0, 1]);

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2([a, b, c, d])
    }

    pub fn det(&self) -> i64 {
        let [a, b, c, d] = self.0;
        a * d - b * c
    }

    pub fn trace(&self) -> i64 {
        self.0[0] + self.0[3]
    }

    pub fn mul(&self, other: &Mat2) -> Mat2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = other.0;
        Mat2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    /// Inverse over the integers; `None` unless the determinant is ±1.
    pub fn inverse(&self) -> Option<Mat2> {
        let [a, b, c, d] = self.0;
        match self.det() {
            1 => Some(Mat2([d, -b, -c, a])),
            -1 => Some(Mat2([-d, b, c, -a])),
            _ => None,
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

/// A group element. Equality and ordering are on the canonical form:
/// image tuples for permutations, row-major entries for matrices, the index
/// for cosets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum GroupElement {
    Perm(Perm),
    Mat2(Mat2),
    Coset(u32),
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Perm(p) => write!(f, "{}", p.cycle_string()),
            GroupElement::Mat2(m) => write!(f, "{m}"),
            GroupElement::Coset(c) => write!(f, "coset#{c}"),
        }
    }
}

/// The right action of a completed coset table, used to multiply coset
/// elements. Coset `c` stands for the group element `w_c` with `0 · w_c = c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetAction {
    /// `table[c][col]`: image of coset `c` under column `col`.
    pub(crate) table: Vec<Vec<u32>>,
    /// Column holding the inverse of each column.
    pub(crate) inverse_col: Vec<usize>,
    /// A column word reaching each coset from coset 0.
    pub(crate) words: Vec<Vec<usize>>,
}

impl CosetAction {
    fn act(&self, coset: u32, word: &[usize]) -> u32 {
        word.iter()
            .fold(coset, |c, &col| self.table[c as usize][col])
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn word(&self, coset: u32) -> &[usize] {
        &self.words[coset as usize]
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        self.act(x, &self.words[y as usize])
    }

    fn inv(&self, x: u32) -> u32 {
        let back: Vec<usize> = self.words[x as usize]
            .iter()
            .rev()
            .map(|&c| self.inverse_col[c])
            .collect();
        self.act(0, &back)
    }
}

#[derive(Debug, Clone)]
enum Backend {
    Perm(usize),
    Mat2,
    Coset(Arc<CosetAction>),
}

impl Backend {
    fn of(e: &GroupElement) -> Result<Backend, GroupError> {
        match e {
            GroupElement::Perm(p) => Ok(Backend::Perm(p.degree())),
            GroupElement::Mat2(_) => Ok(Backend::Mat2),
            GroupElement::Coset(_) => Err(GroupError::DetachedCoset),
        }
    }

    fn accepts(&self, e: &GroupElement) -> bool {
        match (self, e) {
            (Backend::Perm(n), GroupElement::Perm(p)) => p.degree() == *n,
            (Backend::Mat2, GroupElement::Mat2(_)) => true,
            (Backend::Coset(a), GroupElement::Coset(c)) => (*c as usize) < a.len(),
            _ => false,
        }
    }

    fn identity(&self) -> GroupElement {
        match self {
            Backend::Perm(n) => GroupElement::Perm(Perm::identity(*n)),
            Backend::Mat2 => GroupElement::Mat2(Mat2::IDENTITY),
            Backend::Coset(_) => GroupElement::Coset(0),
        }
    }

    fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (self, a, b) {
            (_, GroupElement::Perm(p), GroupElement::Perm(q)) => GroupElement::Perm(p.compose(q)),
            (_, GroupElement::Mat2(m), GroupElement::Mat2(n)) => GroupElement::Mat2(m.mul(n)),
            (Backend::Coset(act), GroupElement::Coset(x), GroupElement::Coset(y)) => {
                GroupElement::Coset(act.mul(*x, *y))
            }
            _ => panic!("multiplying elements of different backends: {a} and {b}"),
        }
    }

    fn inv(&self, a: &GroupElement) -> Option<GroupElement> {
        match (self, a) {
            (_, GroupElement::Perm(p)) => Some(GroupElement::Perm(p.inverse())),
            (_, GroupElement::Mat2(m)) => m.inverse().map(GroupElement::Mat2),
            (Backend::Coset(act), GroupElement::Coset(x)) => Some(GroupElement::Coset(act.inv(*x))),
            _ => None,
        }
    }
}

/// A finite group given by generators, with all elements enumerated.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    backend: Backend,
    identity: GroupElement,
    generators: Vec<GroupElement>,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
}

impl FiniteGroup {
    /// Breadth-first closure of `gens` from the identity. Neighbours of each
    /// element are visited as `x·g` for the generators in input order, then
    /// `x·g⁻¹`.
    pub fn closure_from_generators(
        gens: &[GroupElement],
        cap: usize,
    ) -> Result<FiniteGroup, GroupError> {
        let first = gens.first().ok_or(GroupError::NoGenerators)?;
        let backend = Backend::of(first)?;
        Self::closure_with_backend(backend, gens, cap)
    }

    fn closure_with_backend(
        backend: Backend,
        gens: &[GroupElement],
        cap: usize,
    ) -> Result<FiniteGroup, GroupError> {
        if gens.iter().any(|g| !backend.accepts(g)) {
            return Err(GroupError::MixedBackends);
        }
        let mut moves = gens.to_vec();
        for g in gens {
            let inv = backend.inv(g).ok_or_else(|| match g {
                GroupElement::Mat2(m) => GroupError::NotInvertible(*m),
                other => GroupError::ElementNotInGroup(other.clone()),
            })?;
            if !moves.contains(&inv) {
                moves.push(inv);
            }
        }
        let identity = backend.identity();
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::from([(identity.clone(), 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for m in &moves {
                let next = backend.mul(&elements[i], m);
                if !index.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        Ok(FiniteGroup {
            backend,
            identity,
            generators: gens.to_vec(),
            elements,
            index,
        })
    }

    /// The subgroup generated by `gens`, which must be elements of `self`.
    pub fn subgroup(&self, gens: &[GroupElement]) -> Result<FiniteGroup, GroupError> {
        for g in gens {
            self.check(g)?;
        }
        if gens.is_empty() {
            return Self::closure_with_backend(
                self.backend.clone(),
                std::slice::from_ref(&self.identity),
                self.order(),
            );
        }
        Self::closure_with_backend(self.backend.clone(), gens, self.order())
    }

    /// Wraps a completed coset action as a group whose elements are the
    /// cosets `0..n` in order. `generators` are the coset elements to record
    /// as generators.
    pub(crate) fn from_coset_action(action: CosetAction, generators: Vec<GroupElement>) -> Self {
        let n = action.len();
        let elements: Vec<GroupElement> = (0..n as u32).map(GroupElement::Coset).collect();
        let index = elements.iter().cloned().zip(0..).collect();
        FiniteGroup {
            backend: Backend::Coset(Arc::new(action)),
            identity: GroupElement::Coset(0),
            generators,
            elements,
            index,
        }
    }

    pub fn coset_action(&self) -> Option<&CosetAction> {
        match &self.backend {
            Backend::Coset(a) => Some(a),
            _ => None,
        }
    }

    pub fn identity(&self) -> &GroupElement {
        &self.identity
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    fn check(&self, g: &GroupElement) -> Result<usize, GroupError> {
        self.index_of(g)
            .ok_or_else(|| GroupError::ElementNotInGroup(g.clone()))
    }

    /// Product `a·b`. Both arguments must belong to this group's backend.
    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.backend.mul(a, b)
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        self.backend
            .inv(a)
            .unwrap_or_else(|| panic!("{a} has no inverse in this group"))
    }

    /// `a·b·a⁻¹`.
    pub fn conjugate(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.mul(&self.mul(a, b), &self.inv(a))
    }

    pub fn pow(&self, a: &GroupElement, k: usize) -> GroupElement {
        (0..k).fold(self.identity.clone(), |acc, _| self.mul(&acc, a))
    }

    /// `{x g x⁻¹ : x ∈ G}` in canonical order.
    pub fn conjugacy_class(&self, g: &GroupElement) -> Result<Vec<GroupElement>, GroupError> {
        self.check(g)?;
        let class: BTreeSet<GroupElement> =
            self.elements.iter().map(|x| self.conjugate(x, g)).collect();
        Ok(class.into_iter().collect())
    }

    /// Whether `n` commutes with every generator, hence with the group.
    pub fn is_central(&self, n: &GroupElement) -> Result<bool, GroupError> {
        self.check(n)?;
        Ok(self
            .generators
            .iter()
            .all(|g| self.mul(n, g) == self.mul(g, n)))
    }

    pub fn element_order(&self, g: &GroupElement) -> Result<usize, GroupError> {
        self.check(g)?;
        let mut k = 1;
        let mut x = g.clone();
        while x != self.identity {
            x = self.mul(&x, g);
            k += 1;
        }
        Ok(k)
    }

    /// `table[i][j]` is the index of `elements[i] · by[j]`.
    pub fn right_mul_table(&self, by: &[GroupElement]) -> Result<Vec<Vec<usize>>, GroupError> {
        for b in by {
            self.check(b)?;
        }
        Ok(self
            .elements
            .iter()
            .map(|x| by.iter().map(|b| self.index[&self.mul(x, b)]).collect())
            .collect())
    }
}
