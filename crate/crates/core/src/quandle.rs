//! IP quandles stored as dense tables.
//!
//! `op[a][b]` is the index of ᵃb, and `inv[a]` the index of a⁻¹. Quandles
//! built from a group by conjugation keep a back-reference to the group and
//! to the element each index stands for.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::group::{FiniteGroup, GroupElement, GroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuandleError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("the subset contains the identity")]
    ContainsIdentity,
    #[error("{element} conjugated by generator {generator} leaves the subset")]
    NotAdStable {
        element: GroupElement,
        generator: GroupElement,
    },
    #[error("the inverse of {0} is not in the subset")]
    NotInversionStable(GroupElement),
    #[error(
        "the subset generates a proper subgroup of order {subgroup_order}, missing e.g. {witness}"
    )]
    NotGenerating {
        subgroup_order: usize,
        witness: GroupElement,
    },
    #[error("{0} is listed twice")]
    Duplicate(GroupElement),
    #[error("the subset is empty")]
    Empty,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The group a conjugation quandle came from, and the element behind each
/// quandle index.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub group: Arc<FiniteGroup>,
    pub elements: Vec<GroupElement>,
}

#[derive(Debug, Clone)]
pub struct IPQuandle {
    op: Vec<Vec<usize>>,
    inv: Vec<usize>,
    names: Option<Vec<String>>,
    embedding: Option<Embedding>,
}

/// Outcome of one axiom: whether it holds, and the first failing index
/// tuple in lexicographic order when it does not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<usize>>,
}

impl AxiomCheck {
    fn first_failure(witness: Option<Vec<usize>>) -> Self {
        AxiomCheck {
            holds: witness.is_none(),
            counterexample: witness,
        }
    }

    fn and(self, other: AxiomCheck) -> AxiomCheck {
        if self.holds {
            other
        } else {
            self
        }
    }
}

/// Per-axiom results of [`IPQuandle::verify_ip`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// Every left translation ᵃ(·) is a bijection. Witness: `[a]`.
    pub bijective: AxiomCheck,
    /// ᵃ(ᵇc) = ⁽ᵃᵇ⁾(ᵃc). Witness: `[a, b, c]`.
    pub self_distributive: AxiomCheck,
    /// ᵃa = a. Witness: `[a]`.
    pub idempotent: AxiomCheck,
    /// (a⁻¹)⁻¹ = a. Witness: `[a]`.
    pub inverse_involutive: AxiomCheck,
    /// ᵃ(b⁻¹) = (ᵃb)⁻¹. Witness: `[a, b]`.
    pub inverse_equivariant: AxiomCheck,
    /// ᵃ⁻¹(ᵃb) = b. Witness: `[a, b]`.
    pub inverse_cancels: AxiomCheck,
    /// ᵃ⁻¹a = a, a consequence of the others. Witness: `[a]`.
    pub derived_fixed_point: AxiomCheck,
}

impl AxiomReport {
    /// Rack axioms: bijective translations and self-distributivity.
    pub fn rack(&self) -> AxiomCheck {
        self.bijective.clone().and(self.self_distributive.clone())
    }

    pub fn quandle(&self) -> AxiomCheck {
        self.idempotent.clone()
    }

    pub fn ip(&self) -> AxiomCheck {
        self.inverse_involutive
            .clone()
            .and(self.inverse_equivariant.clone())
            .and(self.inverse_cancels.clone())
    }

    /// True when the table is an IP quandle. The derived identity is not
    /// part of the definition.
    pub fn all_pass(&self) -> bool {
        self.rack().holds && self.quandle().holds && self.ip().holds
    }
}

/// The graph of mutually skew distinct pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkewGraph {
    pub vertices: usize,
    /// Edges `(a, b)` with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Component label of each vertex; labels are assigned in order of the
    /// smallest vertex of each component.
    pub component: Vec<usize>,
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkewAnalysis {
    pub graph: SkewGraph,
    pub is_skew: bool,
    pub is_locally_skew: bool,
}

/// The table-side conditions of the skew/braid equivalence for a pair
/// `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SkewConditions {
    /// ᵃb = (ᵇa)⁻¹.
    pub mutually_skew: bool,
    /// ᵇ⁻¹(ᵃ(b⁻¹)) = a.
    pub conjugated_back: bool,
    /// ⁽ᵇ⁻¹ᵃ⁾(b⁻¹) = a.
    pub translated_back: bool,
    /// a⁻¹ and b⁻¹ are mutually skew.
    pub inverses_skew: bool,
    /// ⁽ᵇᵃ⁾(a⁻¹) = b, evaluated only when the pair is mutually skew.
    pub skew_ip_identity: Option<bool>,
}

impl SkewConditions {
    pub fn all_equal(&self) -> bool {
        let c = [
            self.mutually_skew,
            self.conjugated_back,
            self.translated_back,
            self.inverses_skew,
        ];
        c.iter().all(|&x| x == c[0])
    }
}

fn check_table(op: &[Vec<usize>], inv: &[usize]) -> Result<(), QuandleError> {
    let m = inv.len();
    if op.len() != m {
        return Err(QuandleError::MalformedTable(format!(
            "{} op rows for {} elements",
            op.len(),
            m
        )));
    }
    for (a, row) in op.iter().enumerate() {
        if row.len() != m {
            return Err(QuandleError::MalformedTable(format!(
                "op row {a} has {} entries, expected {m}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= m) {
            return Err(QuandleError::MalformedTable(format!(
                "op row {a} has out-of-range entry {bad}"
            )));
        }
    }
    if let Some(&bad) = inv.iter().find(|&&x| x >= m) {
        return Err(QuandleError::MalformedTable(format!(
            "inverse entry {bad} out of range"
        )));
    }
    Ok(())
}

fn check_names(names: &Option<Vec<String>>, m: usize) -> Result<(), QuandleError> {
    if let Some(names) = names {
        if names.len() != m {
            return Err(QuandleError::MalformedTable(format!(
                "{} names for {m} elements",
                names.len()
            )));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != m {
            return Err(QuandleError::MalformedTable(
                "names are not distinct".into(),
            ));
        }
    }
    Ok(())
}

fn first<I: IntoIterator<Item = Vec<usize>>>(it: I) -> AxiomCheck {
    AxiomCheck::first_failure(it.into_iter().next())
}

impl IPQuandle {
    /// Wraps tables after checking their shape and index ranges. Axioms are
    /// not checked here; see [`IPQuandle::verify_ip`].
    pub fn new(
        op: Vec<Vec<usize>>,
        inv: Vec<usize>,
        names: Option<Vec<String>>,
    ) -> Result<Self, QuandleError> {
        check_table(&op, &inv)?;
        check_names(&names, inv.len())?;
        Ok(IPQuandle {
            op,
            inv,
            names,
            embedding: None,
        })
    }

    /// The trivial quandle ᵃb = b on `m` self-inverse elements.
    pub fn trivial(m: usize) -> Self {
        IPQuandle {
            op: (0..m).map(|_| (0..m).collect()).collect(),
            inv: (0..m).collect(),
            names: None,
            embedding: None,
        }
    }

    /// The IP quandle of an ad-stable, inversion-stable generating subset
    /// `class ⊆ G∖{e}` with ᵃb = aba⁻¹. Index `i` stands for `class[i]`.
    pub fn conjugation(
        group: &FiniteGroup,
        class: &[GroupElement],
        names: Option<Vec<String>>,
    ) -> Result<Self, QuandleError> {
        if class.is_empty() {
            return Err(QuandleError::Empty);
        }
        let mut position = HashMap::new();
        for (i, c) in class.iter().enumerate() {
            if !group.contains(c) {
                return Err(GroupError::ElementNotInGroup(c.clone()).into());
            }
            if c == group.identity() {
                return Err(QuandleError::ContainsIdentity);
            }
            if position.insert(c.clone(), i).is_some() {
                return Err(QuandleError::Duplicate(c.clone()));
            }
        }
        for c in class {
            for g in group.generators() {
                let conj = group.conjugate(g, c);
                if !position.contains_key(&conj) {
                    return Err(QuandleError::NotAdStable {
                        element: c.clone(),
                        generator: g.clone(),
                    });
                }
            }
        }
        let mut inv = Vec::with_capacity(class.len());
        for c in class {
            match position.get(&group.inv(c)) {
                Some(&j) => inv.push(j),
                None => return Err(QuandleError::NotInversionStable(c.clone())),
            }
        }
        let span = group.subgroup(class)?;
        if span.order() != group.order() {
            let witness = group
                .elements()
                .iter()
                .find(|x| !span.contains(x))
                .cloned()
                .expect("proper subgroup misses an element");
            return Err(QuandleError::NotGenerating {
                subgroup_order: span.order(),
                witness,
            });
        }
        let op = class
            .iter()
            .map(|a| {
                class
                    .iter()
                    .map(|b| position[&group.conjugate(a, b)])
                    .collect()
            })
            .collect();
        let names = names.unwrap_or_else(|| class.iter().map(element_name).collect());
        check_names(&Some(names.clone()), class.len())?;
        Ok(IPQuandle {
            op,
            inv,
            names: Some(names),
            embedding: Some(Embedding {
                group: Arc::new(group.clone()),
                elements: class.to_vec(),
            }),
        })
    }

    pub fn len(&self) -> usize {
        self.inv.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inv.is_empty()
    }

    /// ᵃb.
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.op
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inv
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// The name of element `a`, or its index when unnamed.
    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_ref()
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, QuandleError> {
        check_names(&Some(names.clone()), self.len())?;
        self.names = Some(names);
        Ok(self)
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.as_ref()?.iter().position(|n| n == name)
    }

    /// Checks every axiom separately, reporting the first counterexample of
    /// each in lexicographic index order.
    pub fn verify_ip(&self) -> AxiomReport {
        let m = self.len();
        let (op, inv) = (&self.op, &self.inv);
        let bijective = first((0..m).filter_map(|a| {
            let distinct: BTreeSet<usize> = op[a].iter().copied().collect();
            (distinct.len() != m).then(|| vec![a])
        }));
        let self_distributive = first((0..m).flat_map(move |a| {
            (0..m).flat_map(move |b| {
                (0..m)
                    .filter(move |&c| op[a][op[b][c]] != op[op[a][b]][op[a][c]])
                    .map(move |c| vec![a, b, c])
            })
        }));
        let idempotent = first((0..m).filter(move |&a| op[a][a] != a).map(move |a| vec![a]));
        let inverse_involutive = first(
            (0..m)
                .filter(move |&a| inv[inv[a]] != a)
                .map(move |a| vec![a]),
        );
        let inverse_equivariant = first((0..m).flat_map(|a| {
            (0..m)
                .filter(move |&b| op[a][inv[b]] != inv[op[a][b]])
                .map(move |b| vec![a, b])
        }));
        let inverse_cancels = first((0..m).flat_map(|a| {
            (0..m)
                .filter(move |&b| op[inv[a]][op[a][b]] != b)
                .map(move |b| vec![a, b])
        }));
        let derived_fixed_point = first(
            (0..m)
                .filter(move |&a| op[inv[a]][a] != a)
                .map(move |a| vec![a]),
        );
        AxiomReport {
            bijective,
            self_distributive,
            idempotent,
            inverse_involutive,
            inverse_equivariant,
            inverse_cancels,
            derived_fixed_point,
        }
    }

    /// ᵃb = (ᵇa)⁻¹.
    pub fn mutually_skew(&self, a: usize, b: usize) -> bool {
        self.op[a][b] == self.inv[self.op[b][a]]
    }

    pub fn skew_analysis(&self) -> Result<SkewAnalysis, QuandleError> {
        let m = self.len();
        if m == 0 {
            return Err(QuandleError::Empty);
        }
        let mut edges = Vec::new();
        let mut adjacency = vec![Vec::new(); m];
        for a in 0..m {
            for b in a + 1..m {
                if self.mutually_skew(a, b) {
                    edges.push((a, b));
                    adjacency[a].push(b);
                    adjacency[b].push(a);
                }
            }
        }
        let (component, components) = components_of(&adjacency);
        Ok(SkewAnalysis {
            is_skew: edges.len() == m * (m - 1) / 2,
            is_locally_skew: components == 1,
            graph: SkewGraph {
                vertices: m,
                edges,
                component,
                components,
            },
        })
    }

    pub fn skew_conditions(&self, a: usize, b: usize) -> SkewConditions {
        let (op, inv) = (&self.op, &self.inv);
        let bi = inv[b];
        let mutually_skew = self.mutually_skew(a, b);
        SkewConditions {
            mutually_skew,
            conjugated_back: op[bi][op[a][bi]] == a,
            translated_back: op[op[bi][a]][bi] == a,
            inverses_skew: self.mutually_skew(inv[a], bi),
            skew_ip_identity: mutually_skew.then(|| op[op[b][a]][inv[a]] == b),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.op
            .iter()
            .all(|row| row.iter().enumerate().all(|(b, &x)| x == b))
    }

    /// The right IP quandle on the same set with aᵇ = (ᵇ⁻¹(a⁻¹))⁻¹.
    pub fn to_right(&self) -> RightQuandle {
        let m = self.len();
        let (op, inv) = (&self.op, &self.inv);
        let right = (0..m)
            .map(|a| (0..m).map(|b| inv[op[inv[b]][inv[a]]]).collect())
            .collect();
        RightQuandle {
            op: right,
            inv: inv.clone(),
            names: self.names.clone(),
        }
    }

    /// The braiding Ψ̃(a, b) = (ᵃb, a) on pairs.
    pub fn braid_pair(&self, a: usize, b: usize) -> (usize, usize) {
        (self.op[a][b], a)
    }

    /// Checks (Ψ̃×id)(id×Ψ̃)(Ψ̃×id) = (id×Ψ̃)(Ψ̃×id)(id×Ψ̃) on every triple,
    /// returning the first failing triple.
    pub fn braiding_failure(&self) -> Option<(usize, usize, usize)> {
        let m = self.len();
        let left = |(x, y): (usize, usize), z| {
            let (p, q) = self.braid_pair(x, y);
            (p, q, z)
        };
        let right = |x, (y, z): (usize, usize)| {
            let (p, q) = self.braid_pair(y, z);
            (x, p, q)
        };
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let (x, y, z) = left((a, b), c);
                    let (x, y, z) = right(x, (y, z));
                    let lhs = left((x, y), z);
                    let (x, y, z) = right(a, (b, c));
                    let (x, y, z) = left((x, y), z);
                    let rhs = right(x, (y, z));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Whether `perm` (a bijection of indices) is an isomorphism onto
    /// `other`.
    pub fn is_isomorphism(&self, other: &IPQuandle, perm: &[usize]) -> bool {
        let m = self.len();
        other.len() == m
            && perm.len() == m
            && (0..m).all(|a| other.inv[perm[a]] == perm[self.inv[a]])
            && (0..m).all(|a| (0..m).all(|b| other.op[perm[a]][perm[b]] == perm[self.op[a][b]]))
    }
}

/// A right IP quandle, `op[a][b]` = aᵇ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightQuandle {
    op: Vec<Vec<usize>>,
    inv: Vec<usize>,
    names: Option<Vec<String>>,
}

/// Results of the right-handed axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RightAxiomReport {
    /// (aᵇ)ᶜ = (aᶜ)⁽ᵇᶜ⁾. Witness `[a, b, c]`.
    pub self_distributive: AxiomCheck,
    /// aᵃ = a.
    pub idempotent: AxiomCheck,
    /// (a⁻¹)⁻¹ = a.
    pub inverse_involutive: AxiomCheck,
    /// (a⁻¹)ᵇ = (aᵇ)⁻¹.
    pub inverse_equivariant: AxiomCheck,
    /// (aᵇ)^(b⁻¹) = a.
    pub inverse_cancels: AxiomCheck,
}

impl RightAxiomReport {
    pub fn all_pass(&self) -> bool {
        self.self_distributive.holds
            && self.idempotent.holds
            && self.inverse_involutive.holds
            && self.inverse_equivariant.holds
            && self.inverse_cancels.holds
    }
}

impl RightQuandle {
    pub fn new(op: Vec<Vec<usize>>, inv: Vec<usize>) -> Result<Self, QuandleError> {
        check_table(&op, &inv)?;
        Ok(RightQuandle {
            op,
            inv,
            names: None,
        })
    }

    pub fn len(&self) -> usize {
        self.inv.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inv.is_empty()
    }

    /// aᵇ.
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.op
    }

    pub fn verify(&self) -> RightAxiomReport {
        let m = self.len();
        let (op, inv) = (&self.op, &self.inv);
        RightAxiomReport {
            self_distributive: first((0..m).flat_map(move |a| {
                (0..m).flat_map(move |b| {
                    (0..m)
                        .filter(move |&c| op[op[a][b]][c] != op[op[a][c]][op[b][c]])
                        .map(move |c| vec![a, b, c])
                })
            })),
            idempotent: first((0..m).filter(move |&a| op[a][a] != a).map(move |a| vec![a])),
            inverse_involutive: first(
                (0..m)
                    .filter(move |&a| inv[inv[a]] != a)
                    .map(move |a| vec![a]),
            ),
            inverse_equivariant: first((0..m).flat_map(|a| {
                (0..m)
                    .filter(move |&b| op[inv[a]][b] != inv[op[a][b]])
                    .map(move |b| vec![a, b])
            })),
            inverse_cancels: first((0..m).flat_map(|a| {
                (0..m)
                    .filter(move |&b| op[op[a][b]][inv[b]] != a)
                    .map(move |b| vec![a, b])
            })),
        }
    }

    /// The left IP quandle with ᵃb = ((b⁻¹)^(a⁻¹))⁻¹, inverting
    /// [`IPQuandle::to_right`].
    pub fn to_left(&self) -> IPQuandle {
        let m = self.len();
        let (op, inv) = (&self.op, &self.inv);
        IPQuandle {
            op: (0..m)
                .map(|a| (0..m).map(|b| inv[op[inv[b]][inv[a]]]).collect())
                .collect(),
            inv: inv.clone(),
            names: self.names.clone(),
            embedding: None,
        }
    }
}

/// Connected components of an undirected graph given by adjacency lists.
pub(crate) fn components_of(adjacency: &[Vec<usize>]) -> (Vec<usize>, usize) {
    let n = adjacency.len();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = count;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[v] {
                if label[w] == usize::MAX {
                    label[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// A whitespace-free display name for a group element.
pub fn element_name(e: &GroupElement) -> String {
    match e {
        GroupElement::Perm(p) => {
            let sep = if p.degree() > 9 { "," } else { "" };
            let s = p.cycle_string();
            s.replace(' ', sep)
        }
        other => other.to_string(),
    }
}
