use std::collections::{HashMap, HashSet};

use thiserror::Error;

use super::{Letter, Presentation, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProofError {
    #[error("no derivation of length at most {depth} was found")]
    NotFound { depth: usize },
    #[error("generator {0} is out of range")]
    BadGenerator(u32),
}

/// A chain of freely reduced words, each obtained from a neighbour by
/// replacing a subword `u` with `v` where `u·v⁻¹` is a cyclic conjugate of a
/// relator or its inverse, then freely reducing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    pub chain: Vec<Word>,
}

impl Proof {
    pub fn steps(&self) -> usize {
        self.chain.len().saturating_sub(1)
    }

    /// Rechecks every link of the chain against the presentation.
    pub fn verify(&self, p: &Presentation) -> bool {
        let moves = Moves::new(p);
        let cap = self.chain.iter().map(Word::len).max().unwrap_or(0);
        self.chain.windows(2).all(|w| {
            moves.neighbours(&w[0], cap).contains(&w[1])
                || moves.neighbours(&w[1], cap).contains(&w[0])
        })
    }

    pub fn render(&self, names: &[String]) -> String {
        self.chain
            .iter()
            .map(|w| w.display_with(names))
            .collect::<Vec<_>>()
            .join(" = ")
    }
}

struct Moves {
    by_lhs: HashMap<Vec<Letter>, Vec<Vec<Letter>>>,
    max_lhs: usize,
}

impl Moves {
    fn new(p: &Presentation) -> Self {
        let mut by_lhs: HashMap<Vec<Letter>, Vec<Vec<Letter>>> = HashMap::new();
        let mut seen = HashSet::new();
        for r in &p.relators {
            for base in [r.clone(), r.inverse()] {
                for rot in base.rotations() {
                    for k in 0..=rot.len() {
                        let u = rot.0[..k].to_vec();
                        let v = Word(rot.0[k..].to_vec()).inverse().0;
                        if seen.insert((u.clone(), v.clone())) {
                            by_lhs.entry(u).or_default().push(v);
                        }
                    }
                }
            }
        }
        let max_lhs = by_lhs.keys().map(Vec::len).max().unwrap_or(0);
        Moves { by_lhs, max_lhs }
    }

    fn neighbours(&self, w: &Word, cap: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let n = w.len();
        for i in 0..=n {
            for k in 0..=self.max_lhs.min(n - i) {
                let Some(vs) = self.by_lhs.get(&w.0[i..i + k]) else {
                    continue;
                };
                for v in vs {
                    let mut x = w.0[..i].to_vec();
                    x.extend_from_slice(v);
                    x.extend_from_slice(&w.0[i + k..]);
                    let x = Word(x).free_reduce();
                    if x.len() <= cap && x != *w {
                        out.push(x);
                    }
                }
            }
        }
        out
    }
}

/// Searches for a derivation of `w1 = w2` with at most `depth` moves,
/// meeting in the middle. Intermediate words never exceed the longer input
/// by more than the longest relator.
pub fn prove_equal_bounded(
    p: &Presentation,
    w1: &Word,
    w2: &Word,
    depth: usize,
) -> Result<Proof, ProofError> {
    for l in w1.letters().iter().chain(w2.letters()) {
        if l.generator as usize >= p.generators {
            return Err(ProofError::BadGenerator(l.generator));
        }
    }
    let a = w1.free_reduce();
    let b = w2.free_reduce();
    if a == b {
        return Ok(Proof { chain: vec![a] });
    }
    let cap = a.len().max(b.len()) + p.relators.iter().map(Word::len).max().unwrap_or(0);
    let moves = Moves::new(p);

    let mut parents = [HashMap::new(), HashMap::new()];
    parents[0].insert(a.clone(), None::<Word>);
    parents[1].insert(b.clone(), None::<Word>);
    let mut frontiers = [vec![a], vec![b]];
    let mut depths = [0usize, 0];

    while depths[0] + depths[1] < depth {
        let side = usize::from(frontiers[1].len() < frontiers[0].len());
        if frontiers[side].is_empty() {
            break;
        }
        let mut next = Vec::new();
        for w in std::mem::take(&mut frontiers[side]) {
            for x in moves.neighbours(&w, cap) {
                if parents[side].contains_key(&x) {
                    continue;
                }
                parents[side].insert(x.clone(), Some(w.clone()));
                if parents[1 - side].contains_key(&x) {
                    return Ok(Proof {
                        chain: join(&parents, &x),
                    });
                }
                next.push(x);
            }
        }
        frontiers[side] = next;
        depths[side] += 1;
    }
    Err(ProofError::NotFound { depth })
}

fn join(parents: &[HashMap<Word, Option<Word>>; 2], meet: &Word) -> Vec<Word> {
    let walk = |side: usize| {
        let mut out = vec![meet.clone()];
        let mut cur = meet;
        while let Some(Some(prev)) = parents[side].get(cur) {
            out.push(prev.clone());
            cur = prev;
        }
        out
    };
    let mut chain = walk(0);
    chain.reverse();
    chain.extend(walk(1).into_iter().skip(1));
    chain
}
