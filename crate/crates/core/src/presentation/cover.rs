//! The covering map π: G_C ↠ G for conjugation quandles, and the universal
//! property it satisfies.

use serde::Serialize;
use thiserror::Error;

use std::collections::VecDeque;

use super::{todd_coxeter, CosetTable, Exceeded, Presentation, Word};
use crate::group::{FiniteGroup, GroupElement};
use crate::quandle::IPQuandle;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("coset enumeration did not complete: {0}")]
    EnumerationIncomplete(Exceeded),
    #[error("the quandle has no group back-reference")]
    NoEmbedding,
    #[error("index {0} is out of range")]
    BadIndex(usize),
    #[error("j is not a map of IP quandles at ({0}, {1})")]
    NotQuandleMap(usize, usize),
    #[error("phi(j({0})) differs from {0}'s group element")]
    SectionFails(usize),
    #[error("j({0}) is not an element of H other than the identity")]
    BadImage(usize),
    #[error("j identifies elements {0} and {1}")]
    NotInjective(usize, usize),
}

/// A finite realization of G_C: its presentation, completed coset table,
/// and the regular-representation group whose `i`-th generator is the
/// coset of quandle element `i`.
#[derive(Debug, Clone)]
pub struct GcRealization {
    pub presentation: Presentation,
    pub table: CosetTable,
    pub group: FiniteGroup,
}

impl GcRealization {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// The element of G_C represented by quandle element `a`.
    pub fn generator(&self, a: usize) -> &GroupElement {
        &self.group.generators()[a]
    }

    /// Evaluates a word in the quandle generators.
    pub fn eval(&self, w: &Word) -> GroupElement {
        let coset = self
            .table
            .trace(0, w.letters())
            .expect("complete table traces every word");
        GroupElement::Coset(coset)
    }

    /// Whether the quandle injects into G_C∖{e}.
    pub fn embeddable(&self) -> bool {
        let gens = self.table.generator_cosets();
        let mut sorted = gens.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == gens.len() && !gens.contains(&0)
    }
}

/// Runs coset enumeration for the presentation of G_C.
pub fn enumerate_gc(q: &IPQuandle, max_cosets: usize) -> Result<GcRealization, Exceeded> {
    let presentation = Presentation::from_quandle(q);
    let table = todd_coxeter(&presentation, max_cosets)?;
    let group = super::group_from_coset_table(&table).expect("enumeration output is complete");
    Ok(GcRealization {
        presentation,
        table,
        group,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringReport {
    pub order_gc: usize,
    pub order_g: usize,
    pub kernel_order: usize,
    pub kernel_central: bool,
    pub embeddable: bool,
    pub is_covering: bool,
    /// π sends each generator coset back to its quandle element.
    pub section_holds: bool,
}

/// π evaluated on every coset of a realization, indexed by coset.
pub fn covering_map(q: &IPQuandle, real: &GcRealization) -> Result<Vec<GroupElement>, CoverError> {
    let emb = q.embedding().ok_or(CoverError::NoEmbedding)?;
    let g = &emb.group;
    let letters = real.table.column_letters();
    let image = |col: usize| {
        let l = letters[col];
        let x = &emb.elements[l.generator as usize];
        if l.inverse {
            g.inv(x)
        } else {
            x.clone()
        }
    };
    let n = real.order();
    let mut pi: Vec<Option<GroupElement>> = vec![None; n];
    pi[0] = Some(g.identity().clone());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for (col, _) in letters.iter().enumerate() {
            let d = real.table.entry(c, col).expect("complete table") as usize;
            if pi[d].is_none() {
                pi[d] = Some(g.mul(pi[c].as_ref().unwrap(), &image(col)));
                queue.push_back(d);
            }
        }
    }
    Ok(pi
        .into_iter()
        .map(|x| x.expect("coset reachable from 0"))
        .collect())
}

/// Order, kernel, centrality and embeddability data for the covering map of
/// a conjugation quandle.
pub fn covering_analysis(q: &IPQuandle, max_cosets: usize) -> Result<CoveringReport, CoverError> {
    let emb = q.embedding().ok_or(CoverError::NoEmbedding)?;
    let real = enumerate_gc(q, max_cosets).map_err(CoverError::EnumerationIncomplete)?;
    covering_analysis_with(q, &real, &emb.group)
}

pub(crate) fn covering_analysis_with(
    q: &IPQuandle,
    real: &GcRealization,
    g: &FiniteGroup,
) -> Result<CoveringReport, CoverError> {
    let emb = q.embedding().ok_or(CoverError::NoEmbedding)?;
    let pi = covering_map(q, real)?;
    let kernel: Vec<GroupElement> = pi
        .iter()
        .enumerate()
        .filter(|(_, x)| *x == g.identity())
        .map(|(c, _)| GroupElement::Coset(c as u32))
        .collect();
    let kernel_central = kernel.iter().all(|k| {
        real.group
            .is_central(k)
            .expect("kernel coset lies in the group")
    });
    let section_holds = (0..q.len()).all(|a| {
        let GroupElement::Coset(c) = real.generator(a) else {
            unreachable!()
        };
        pi[*c as usize] == emb.elements[a]
    });
    Ok(CoveringReport {
        order_gc: real.order(),
        order_g: g.order(),
        kernel_order: kernel.len(),
        kernel_central,
        embeddable: real.embeddable(),
        is_covering: kernel.len() == 1,
        section_holds,
    })
}

/// Whether `a` and `b⁻¹` satisfy the braid relation a·b⁻¹·a = b⁻¹·a·b⁻¹ in
/// the realization of G_C.
pub fn braid_check(
    q: &IPQuandle,
    a: usize,
    b: usize,
    real: &GcRealization,
) -> Result<bool, CoverError> {
    let m = q.len();
    if a >= m {
        return Err(CoverError::BadIndex(a));
    }
    if b >= m {
        return Err(CoverError::BadIndex(b));
    }
    let g = &real.group;
    let x = real.generator(a);
    let y = g.inv(real.generator(b));
    let lhs = g.mul(&g.mul(x, &y), x);
    let rhs = g.mul(&g.mul(&y, x), &y);
    Ok(lhs == rhs)
}

/// A homomorphism G_C → H given by its values on the generators.
#[derive(Debug, Clone)]
pub struct InducedHom {
    pub images: Vec<GroupElement>,
}

impl InducedHom {
    pub fn apply(&self, h: &FiniteGroup, w: &Word) -> GroupElement {
        w.letters().iter().fold(h.identity().clone(), |acc, l| {
            let x = &self.images[l.generator as usize];
            if l.inverse {
                h.mul(&acc, &h.inv(x))
            } else {
                h.mul(&acc, x)
            }
        })
    }
}

/// Given `phi: H → G` and a quandle map `j: C → H∖{e}` with `phi∘j = id`,
/// returns the homomorphism ψ: G_C → H with ψ(a) = j(a), after checking
/// the hypotheses and that every relator of G_C maps to the identity.
pub fn induced_hom(
    q: &IPQuandle,
    h: &FiniteGroup,
    j: &[GroupElement],
    phi: &dyn Fn(&GroupElement) -> GroupElement,
) -> Result<InducedHom, CoverError> {
    let emb = q.embedding().ok_or(CoverError::NoEmbedding)?;
    let m = q.len();
    if j.len() != m {
        return Err(CoverError::BadIndex(j.len()));
    }
    for (a, x) in j.iter().enumerate() {
        if !h.contains(x) || x == h.identity() {
            return Err(CoverError::BadImage(a));
        }
    }
    for a in 0..m {
        for b in a + 1..m {
            if j[a] == j[b] {
                return Err(CoverError::NotInjective(a, b));
            }
        }
    }
    for a in 0..m {
        if j[q.inv(a)] != h.inv(&j[a]) {
            return Err(CoverError::NotQuandleMap(a, q.inv(a)));
        }
        for b in 0..m {
            if j[q.op(a, b)] != h.conjugate(&j[a], &j[b]) {
                return Err(CoverError::NotQuandleMap(a, b));
            }
        }
    }
    for (a, x) in j.iter().enumerate() {
        if phi(x) != emb.elements[a] {
            return Err(CoverError::SectionFails(a));
        }
    }
    let hom = InducedHom { images: j.to_vec() };
    let presentation = Presentation::from_quandle(q);
    debug_assert!(presentation
        .relators
        .iter()
        .all(|r| hom.apply(h, r) == *h.identity()));
    Ok(hom)
}
