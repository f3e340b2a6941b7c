//! Irreducible crystallographic root systems from Cartan matrices, their
//! Weyl groups acting on the root list, and reflection quandles.
//!
//! Roots live in the simple-root basis as integer vectors. The coroot
//! pairing ⟨α̌, v⟩ comes from the symmetrized Cartan matrix and is exact.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

use crate::group::{FiniteGroup, GroupElement, Perm};
use crate::quandle::IPQuandle;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("no irreducible root system of type {kind}{rank}")]
    InvalidType { kind: char, rank: usize },
    #[error("not a crystallographic Cartan matrix: {0}")]
    InvalidCartan(String),
}

/// Dynkin type letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl RootType {
    pub fn letter(self) -> char {
        match self {
            RootType::A => 'A',
            RootType::B => 'B',
            RootType::C => 'C',
            RootType::D => 'D',
            RootType::E => 'E',
            RootType::F => 'F',
            RootType::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => RootType::A,
            'B' => RootType::B,
            'C' => RootType::C,
            'D' => RootType::D,
            'E' => RootType::E,
            'F' => RootType::F,
            'G' => RootType::G,
            _ => return None,
        })
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            RootType::A => rank >= 1,
            RootType::B | RootType::C => rank >= 2,
            RootType::D => rank >= 3,
            RootType::E => (6..=8).contains(&rank),
            RootType::F => rank == 4,
            RootType::G => rank == 2,
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for RootType {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => {
                RootType::from_letter(c).ok_or(RootSystemError::InvalidType { kind: c, rank: 0 })
            }
            _ => Err(RootSystemError::InvalidType { kind: '?', rank: 0 }),
        }
    }
}

/// `a[i][j] = ⟨α̌ᵢ, αⱼ⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    a: Vec<Vec<i64>>,
    /// Squared root lengths of the simple roots, scaled to coprime integers.
    lengths: Vec<i64>,
}

impl CartanMatrix {
    #[allow(clippy::needless_range_loop)]
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self, RootSystemError> {
        let n = a.len();
        let bad = |m: &str| Err(RootSystemError::InvalidCartan(m.to_string()));
        if n == 0 {
            return bad("empty");
        }
        if a.iter().any(|r| r.len() != n) {
            return bad("not square");
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return bad("diagonal entry is not 2");
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if !(-3..=0).contains(&a[i][j]) {
                    return bad("off-diagonal entry outside {0,-1,-2,-3}");
                }
                if (a[i][j] == 0) != (a[j][i] == 0) {
                    return bad("zero pattern is not symmetric");
                }
                if a[i][j] * a[j][i] > 3 {
                    return bad("product of paired entries exceeds 3");
                }
            }
        }
        let lengths = symmetrizer(&a).ok_or_else(|| {
            RootSystemError::InvalidCartan("not symmetrizable or not connected".into())
        })?;
        Ok(CartanMatrix { a, lengths })
    }

    /// The Cartan matrix of an irreducible type, in Bourbaki numbering.
    pub fn of_type(kind: RootType, rank: usize) -> Result<Self, RootSystemError> {
        if !kind.valid_rank(rank) {
            return Err(RootSystemError::InvalidType {
                kind: kind.letter(),
                rank,
            });
        }
        let n = rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match kind {
            RootType::A | RootType::B | RootType::C | RootType::F | RootType::G => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            RootType::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            RootType::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
        }
        match kind {
            RootType::B => a[n - 1][n - 2] = -2,
            RootType::C => a[n - 2][n - 1] = -2,
            RootType::F => a[2][1] = -2,
            RootType::G => a[0][1] = -3,
            _ => {}
        }
        CartanMatrix::new(a)
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn simple_lengths(&self) -> &[i64] {
        &self.lengths
    }

    /// Twice the invariant form, `2(u, v)`, on simple-root coordinates.
    fn form2(&self, u: &[i64], v: &[i64]) -> i64 {
        u.iter()
            .zip(&self.lengths)
            .zip(&self.a)
            .filter(|((&ui, _), _)| ui != 0)
            .map(|((&ui, &li), row)| ui * li * row.iter().zip(v).map(|(&x, &y)| x * y).sum::<i64>())
            .sum()
    }
}

fn symmetrizer(a: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = a.len();
    let mut len: Vec<Option<Rational64>> = vec![None; n];
    len[0] = Some(Rational64::from_integer(1));
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        let li = len[i].unwrap();
        for j in 0..n {
            if i == j || a[i][j] == 0 {
                continue;
            }
            let lj = li * Rational64::new(a[i][j], a[j][i]);
            match len[j] {
                Some(x) if x != lj => return None,
                Some(_) => {}
                None => {
                    len[j] = Some(lj);
                    queue.push_back(j);
                }
            }
        }
    }
    let len: Vec<Rational64> = len.into_iter().collect::<Option<_>>()?;
    let denom = len
        .iter()
        .fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
    let ints: Vec<i64> = len.iter().map(|x| (x * denom).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
    Some(ints.into_iter().map(|x| x / g).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct RootSystem {
    kind: Option<(RootType, usize)>,
    cartan: CartanMatrix,
    /// Positive roots by height then reverse lexicographically, then their
    /// negatives in the same order.
    roots: Vec<Vec<i64>>,
    positive: usize,
    #[serde(skip)]
    index: HashMap<Vec<i64>, usize>,
}

/// The root system of an irreducible type.
pub fn build_root_system(kind: RootType, rank: usize) -> Result<RootSystem, RootSystemError> {
    let cartan = CartanMatrix::of_type(kind, rank)?;
    let mut r = RootSystem::from_cartan(cartan);
    r.kind = Some((kind, rank));
    Ok(r)
}

impl RootSystem {
    /// Orbit of the simple roots under the simple reflections.
    pub fn from_cartan(cartan: CartanMatrix) -> Self {
        let n = cartan.rank();
        let simple: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for s in &simple {
            seen.insert(s.clone(), ());
            queue.push_back(s.clone());
        }
        while let Some(v) = queue.pop_front() {
            for i in 0..n {
                let w = simple_reflect(&cartan, i, &v);
                if seen.insert(w.clone(), ()).is_none() {
                    queue.push_back(w);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen.into_keys().filter(|v| is_positive(v)).collect();
        pos.sort_by(|u, v| {
            let h = |x: &Vec<i64>| x.iter().sum::<i64>();
            h(u).cmp(&h(v)).then_with(|| v.cmp(u))
        });
        let positive = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|v| v.iter().map(|x| -x).collect::<Vec<_>>()));
        let index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        RootSystem {
            kind: None,
            cartan,
            roots,
            positive,
            index,
        }
    }

    pub fn kind(&self) -> Option<(RootType, usize)> {
        self.kind
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.roots[..self.positive]
    }

    pub fn is_positive_index(&self, i: usize) -> bool {
        i < self.positive
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Squared length `(α, α)` in the scale where the shortest simple root
    /// has the smallest coprime integer length.
    pub fn length(&self, alpha: &[i64]) -> Rational64 {
        Rational64::new(self.cartan.form2(alpha, alpha), 2)
    }

    /// `⟨α̌, v⟩ = 2(α, v)/(α, α)`.
    pub fn pairing(&self, alpha: &[i64], v: &[i64]) -> Rational64 {
        Rational64::new(
            2 * self.cartan.form2(alpha, v),
            self.cartan.form2(alpha, alpha),
        )
    }

    /// `r_α(v) = v − ⟨α̌, v⟩α`.
    pub fn reflect(&self, alpha: &[i64], v: &[i64]) -> Vec<i64> {
        let p = self.pairing(alpha, v);
        assert!(
            p.is_integer(),
            "pairing of a root with a lattice vector is integral"
        );
        let k = p.to_integer();
        v.iter().zip(alpha).map(|(x, a)| x - k * a).collect()
    }

    /// The reflection in root `alpha` as a permutation of the root list.
    pub fn reflection_perm(&self, alpha: &[i64]) -> Perm {
        let images = self
            .roots
            .iter()
            .map(|v| self.index[&self.reflect(alpha, v)] as u32)
            .collect();
        Perm::from_images(images).expect("reflections permute the roots")
    }

    fn simple_root(&self, i: usize) -> Vec<i64> {
        (0..self.rank()).map(|j| i64::from(i == j)).collect()
    }

    pub fn simple_reflections(&self) -> Vec<Perm> {
        (0..self.rank())
            .map(|i| self.reflection_perm(&self.simple_root(i)))
            .collect()
    }

    pub fn root_name(v: &[i64]) -> String {
        let digits: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        format!("r{}", digits.join(""))
    }
}

fn simple_reflect(c: &CartanMatrix, i: usize, v: &[i64]) -> Vec<i64> {
    let k: i64 = (0..c.rank()).map(|j| c.a[i][j] * v[j]).sum();
    let mut w = v.to_vec();
    w[i] -= k;
    w
}

fn is_positive(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

/// The Weyl group as a permutation group on the root list.
pub fn weyl_group(r: &RootSystem) -> FiniteGroup {
    let gens: Vec<GroupElement> = r
        .simple_reflections()
        .into_iter()
        .map(GroupElement::Perm)
        .collect();
    FiniteGroup::closure_from_generators(&gens, crate::group::DEFAULT_CLOSURE_CAP)
        .expect("Weyl groups of the supported types fit under the closure cap")
}

/// The conjugation quandle of all reflections, indexed by the positive
/// roots. Names are `r` followed by the simple-root coordinates.
pub fn reflection_quandle(r: &RootSystem) -> IPQuandle {
    let w = weyl_group(r);
    let class: Vec<GroupElement> = r
        .positive_roots()
        .iter()
        .map(|a| GroupElement::Perm(r.reflection_perm(a)))
        .collect();
    let names = r
        .positive_roots()
        .iter()
        .map(|a| RootSystem::root_name(a))
        .collect();
    IPQuandle::conjugation(&w, &class, Some(names)).expect("reflections form an IP quandle")
}

pub fn is_simply_laced(kind: RootType, _rank: usize) -> bool {
    matches!(kind, RootType::A | RootType::D | RootType::E)
}
