//! Presentations of the group G_C of an IP quandle and the machinery used to
//! study it: coset enumeration, Smith normal form, the covering map onto the
//! group a conjugation quandle came from, and bounded equational proofs.

mod cover;
mod proof;
mod smith;
mod todd_coxeter;

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::quandle::IPQuandle;

pub use cover::{
    braid_check, covering_analysis, covering_map, enumerate_gc, induced_hom, CoverError,
    CoveringReport, GcRealization, InducedHom,
};
pub use proof::{prove_equal_bounded, Proof, ProofError};
pub use smith::{smith_normal_form, IntMatrix, SmithForm};
pub use todd_coxeter::{
    group_from_coset_table, todd_coxeter, CosetTable, CosetTableError, Exceeded,
};

/// A generator or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(generator: usize) -> Self {
        Letter {
            generator: generator as u32,
            inverse: false,
        }
    }

    pub fn inv(generator: usize) -> Self {
        Letter {
            generator: generator as u32,
            inverse: true,
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            inverse: !self.inverse,
            ..self
        }
    }

    /// Signed 1-based encoding: `g+1` for the generator, `-(g+1)` for its
    /// formal inverse.
    pub fn signed(self) -> i64 {
        let v = self.generator as i64 + 1;
        if self.inverse {
            -v
        } else {
            v
        }
    }
}

/// A word in the generators and their formal inverses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Cancels adjacent `g g⁻¹` and `g⁻¹ g` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Cyclic reduction after free reduction.
    pub fn cyclic_reduce(&self) -> Word {
        let mut w = self.free_reduce().0;
        while w.len() >= 2 && w[0] == w[w.len() - 1].inverse() {
            w.pop();
            w.remove(0);
        }
        Word(w)
    }

    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.0.len().max(1)).map(move |k| {
            let mut v = self.0[k.min(self.0.len())..].to_vec();
            v.extend_from_slice(&self.0[..k.min(self.0.len())]);
            Word(v)
        })
    }

    /// A representative of the word's class under rotation and inversion.
    pub fn cyclic_canonical(&self) -> Word {
        let w = self.cyclic_reduce();
        let inv = w.inverse();
        w.rotations()
            .chain(inv.rotations())
            .min()
            .unwrap_or_default()
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, generators: usize) -> Vec<i64> {
        let mut v = vec![0; generators];
        for l in &self.0 {
            v[l.generator as usize] += if l.inverse { -1 } else { 1 };
        }
        v
    }

    /// Renders the word with the given generator names, `x'` for formal
    /// inverses, `e` for the empty word.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "e".into();
        }
        self.0
            .iter()
            .map(|l| {
                let n = &names[l.generator as usize];
                if l.inverse {
                    format!("{n}'")
                } else {
                    n.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|l| l.signed().to_string()).collect();
        write!(f, "[{}]", s.join(" "))
    }
}

/// Generators `0..generators` subject to `relators = e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Freely reduces the relators and drops empty ones and those equal to
    /// an earlier relator up to rotation and inversion. The first occurrence
    /// is kept in its original form.
    pub fn new(generators: usize, relators: Vec<Word>) -> Self {
        let mut seen = HashSet::new();
        let relators = relators
            .into_iter()
            .map(|r| r.free_reduce())
            .filter(|r| !r.is_empty() && seen.insert(r.cyclic_canonical()))
            .collect();
        Presentation {
            generators,
            relators,
        }
    }

    /// The presentation of G_C: one generator per quandle element, the
    /// relator ᵃb·a·b⁻¹·a⁻¹ for every ordered pair and a·inv(a) for every
    /// element.
    pub fn from_quandle(q: &IPQuandle) -> Self {
        let m = q.len();
        let mut relators = Vec::with_capacity(m * m + m);
        for a in 0..m {
            for b in 0..m {
                relators.push(Word(vec![
                    Letter::gen(q.op(a, b)),
                    Letter::gen(a),
                    Letter::inv(b),
                    Letter::inv(a),
                ]));
            }
        }
        for a in 0..m {
            relators.push(Word(vec![Letter::gen(a), Letter::gen(q.inv(a))]));
        }
        Presentation::new(m, relators)
    }

    /// Abelian invariants of the presented group.
    pub fn abelianization(&self) -> AbelianInvariants {
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let mut seen = HashSet::new();
        for r in &self.relators {
            let row = r.exponent_sums(self.generators);
            if row.iter().any(|&x| x != 0) && seen.insert(row.clone()) {
                rows.push(row);
            }
        }
        let matrix = IntMatrix::from_rows(self.generators, rows);
        let diagonal = smith::invariant_factors(&matrix);
        let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
        AbelianInvariants {
            free_rank: self.generators - rank,
            torsion: diagonal
                .into_iter()
                .filter(|d| !d.is_zero() && !d.abs().is_one())
                .map(|d| d.abs())
                .collect(),
        }
    }
}

/// ℤ^free_rank ⊕ ℤ/d₁ ⊕ ⋯ ⊕ ℤ/d_k with d₁ | d₂ | ⋯ | d_k, each ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|d| u64::try_from(d).expect("torsion coefficient fits in u64"))
            .collect()
    }

    pub fn is_infinite(&self) -> bool {
        self.free_rank > 0
    }
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for d in v {
        match u64::try_from(d) {
            Ok(x) => seq.serialize_element(&x)?,
            Err(_) => seq.serialize_element(&d.to_string())?,
        }
    }
    seq.end()
}
