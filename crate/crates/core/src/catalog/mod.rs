//! Built-in quandle families, addressed by stable identifiers such as
//! `sym:4:ncycles`, `dihedral:6` or `weyl:B:2`.

pub mod sl2z;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::group::{FiniteGroup, GroupElement, Perm, DEFAULT_CLOSURE_CAP};
use crate::quandle::{IPQuandle, QuandleError};
use crate::rootsys::{build_root_system, reflection_quandle, RootSystemError, RootType};

pub use sl2z::{
    sl2z_conjugate, sl2z_matrix, sl2z_skew, sl2z_window, ProjVec, SignedVec, WindowQuandle,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown catalog identifier `{0}`")]
    UnknownId(String),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Quandle(#[from] QuandleError),
}

const MAX_SYMMETRIC_DEGREE: usize = 8;
const MAX_DIHEDRAL: usize = 5000;
const MAX_ABELIAN_ORDER: u64 = 100_000;

fn invalid<T>(msg: impl Into<String>) -> Result<T, CatalogError> {
    Err(CatalogError::InvalidParameter(msg.into()))
}

fn perm_group(gens: &[GroupElement]) -> FiniteGroup {
    FiniteGroup::closure_from_generators(gens, DEFAULT_CLOSURE_CAP)
        .expect("catalog groups fit under the cap")
}

fn perm(images: Vec<u32>) -> GroupElement {
    GroupElement::Perm(Perm::from_images(images).expect("valid permutation"))
}

/// The transpositions of Sₙ, in lexicographic order of their 0-based pairs.
pub fn symmetric_2cycles(n: usize) -> Result<IPQuandle, CatalogError> {
    if !(2..=MAX_SYMMETRIC_DEGREE).contains(&n) {
        return invalid(format!(
            "sym:{n}:2cycles needs 2 <= n <= {MAX_SYMMETRIC_DEGREE}"
        ));
    }
    let mut class = Vec::new();
    for i in 0..n as u32 {
        for j in i + 1..n as u32 {
            class.push(GroupElement::Perm(
                Perm::from_cycles(n, &[&[i, j]]).unwrap(),
            ));
        }
    }
    let g = perm_group(&class);
    Ok(IPQuandle::conjugation(&g, &class, None)?)
}

/// All n-cycles of Sₙ: representatives whose inverse comes later in
/// lexicographic order of their cycle sequence starting from 0, followed by
/// those inverses in the same order.
fn n_cycles(n: usize) -> Vec<GroupElement> {
    let mut rest: Vec<u32> = (1..n as u32).collect();
    let mut seqs = Vec::new();
    loop {
        let mut s = vec![0u32];
        s.extend_from_slice(&rest);
        seqs.push(s);
        if !next_permutation(&mut rest) {
            break;
        }
    }
    let to_perm = |s: &[u32]| Perm::from_cycles(n, &[s]).unwrap();
    let mut reps = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for s in &seqs {
        let p = to_perm(s);
        if seen.contains(&p) {
            continue;
        }
        seen.insert(p.inverse());
        seen.insert(p.clone());
        reps.push(p);
    }
    let mut out: Vec<GroupElement> = reps.iter().cloned().map(GroupElement::Perm).collect();
    if n > 2 {
        out.extend(reps.iter().map(|p| GroupElement::Perm(p.inverse())));
    }
    out
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// The n-cycles of Sₙ for even n.
pub fn symmetric_ncycles(n: usize) -> Result<IPQuandle, CatalogError> {
    if !n.is_multiple_of(2) || !(2..=MAX_SYMMETRIC_DEGREE).contains(&n) {
        return invalid(format!(
            "sym:{n}:ncycles needs even 2 <= n <= {MAX_SYMMETRIC_DEGREE}"
        ));
    }
    let class = n_cycles(n);
    let g = perm_group(&class);
    Ok(IPQuandle::conjugation(&g, &class, None)?)
}

/// The n-cycles of Aₙ for odd n.
pub fn alternating_ncycles(n: usize) -> Result<IPQuandle, CatalogError> {
    if n % 2 != 1 || !(3..=MAX_SYMMETRIC_DEGREE).contains(&n) {
        return invalid(format!(
            "alt:{n}:ncycles needs odd 3 <= n <= {MAX_SYMMETRIC_DEGREE}"
        ));
    }
    let class = n_cycles(n);
    let g = perm_group(&class);
    Ok(IPQuandle::conjugation(&g, &class, None)?)
}

/// D₂ₙ = ⟨a, x | aⁿ = x² = e, xa = a⁻¹x⟩ acting on itself, with
/// C = {aⁱx}. Point `i + n·s` stands for aⁱxˢ.
pub fn dihedral(n: usize) -> Result<IPQuandle, CatalogError> {
    if !(2..=MAX_DIHEDRAL).contains(&n) {
        return invalid(format!("dihedral:{n} needs 2 <= n <= {MAX_DIHEDRAL}"));
    }
    let class: Vec<GroupElement> = (0..n)
        .map(|i| {
            let images = (0..2 * n)
                .map(|p| {
                    let (j, s) = (p % n, p / n);
                    ((i + n - j) % n + n * (1 - s)) as u32
                })
                .collect();
            perm(images)
        })
        .collect();
    let names = (0..n)
        .map(|i| match i {
            0 => "x".to_string(),
            1 => "ax".to_string(),
            _ => format!("a{i}x"),
        })
        .collect();
    let g = perm_group(&class);
    Ok(IPQuandle::conjugation(&g, &class, Some(names))?)
}

/// ℤₙ with C = {a, a⁻¹}, n ≥ 3.
pub fn cyclic(n: usize) -> Result<IPQuandle, CatalogError> {
    if !(3..=MAX_DIHEDRAL).contains(&n) {
        return invalid(format!("cyclic:{n} needs 3 <= n <= {MAX_DIHEDRAL}"));
    }
    let a = perm((0..n).map(|i| ((i + 1) % n) as u32).collect());
    let ai = perm((0..n).map(|i| ((i + n - 1) % n) as u32).collect());
    let class = vec![a, ai];
    let g = perm_group(&class);
    Ok(IPQuandle::conjugation(
        &g,
        &class,
        Some(vec!["a".into(), "a'".into()]),
    )?)
}

/// ℤ₂ × ℤ₂ = D₄ with C = {x, ax}.
pub fn klein_four() -> IPQuandle {
    dihedral(2).expect("n = 2 is valid")
}

/// The reflection quandle of an irreducible Weyl group.
pub fn weyl(kind: RootType, rank: usize) -> Result<IPQuandle, CatalogError> {
    let r = build_root_system(kind, rank)?;
    if r.roots().len() > 72 {
        return invalid(format!(
            "weyl:{kind}:{rank} is too large for the permutation backend"
        ));
    }
    Ok(reflection_quandle(&r))
}

/// The six-element quandle on a, b, c and their inverses where b swaps a
/// and c and every other row is trivial. It does not embed in its G_C.
pub fn example_2_3() -> IPQuandle {
    let id = vec![0, 1, 2, 3, 4, 5];
    let swap = vec![2, 1, 0, 5, 4, 3];
    let op = vec![id.clone(), swap.clone(), id.clone(), id.clone(), swap, id];
    let names = ["a", "b", "c", "a'", "b'", "c'"].map(String::from).to_vec();
    IPQuandle::new(op, vec![3, 4, 5, 0, 1, 2], Some(names)).expect("well-formed table")
}

/// ℤ_{n₁} × ⋯ × ℤ_{n_k} with C the standard generators and their inverses.
pub fn abelian_product(orders: &[u64]) -> Result<IPQuandle, CatalogError> {
    if orders.is_empty() || orders.iter().any(|&n| n < 2) {
        return invalid("abelian factors must be at least 2");
    }
    let total = orders.iter().try_fold(1u64, |acc, &n| {
        acc.checked_mul(n).filter(|&x| x <= MAX_ABELIAN_ORDER)
    });
    let Some(total) = total else {
        return invalid(format!("abelian group order exceeds {MAX_ABELIAN_ORDER}"));
    };
    let total = total as usize;
    let mut stride = 1usize;
    let mut class = Vec::new();
    let mut names = Vec::new();
    for (k, &n) in orders.iter().enumerate() {
        let n = n as usize;
        let shift = |by: usize| {
            perm(
                (0..total)
                    .map(|p| {
                        let digit = (p / stride) % n;
                        (p - digit * stride + ((digit + by) % n) * stride) as u32
                    })
                    .collect(),
            )
        };
        class.push(shift(1));
        names.push(format!("g{k}"));
        if n > 2 {
            class.push(shift(n - 1));
            names.push(format!("g{k}'"));
        }
        stride *= n;
    }
    let g = perm_group(&class);
    Ok(IPQuandle::conjugation(&g, &class, Some(names))?)
}

/// A parsed catalog identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogId {
    Sym2Cycles(usize),
    SymNCycles(usize),
    AltNCycles(usize),
    Dihedral(usize),
    Cyclic(usize),
    Klein4,
    Weyl(RootType, usize),
    Example23,
    Abelian(Vec<u64>),
    Sl2zWindow(usize),
}

/// Identifier templates, one per family.
pub const CATALOG_TEMPLATES: &[(&str, &str)] = &[
    ("sym:<n>:2cycles", "transpositions of S_n, 2 <= n <= 8"),
    ("sym:<n>:ncycles", "n-cycles of S_n, n even, 2 <= n <= 8"),
    ("alt:<n>:ncycles", "n-cycles of A_n, n odd, 3 <= n <= 8"),
    ("dihedral:<n>", "reflections a^i x of D_2n, n >= 2"),
    ("cyclic:<n>", "Z_n with C = {a, a^-1}, n >= 3"),
    ("klein4", "Z_2 x Z_2 with C = {x, ax}"),
    (
        "weyl:<A|B|C|D|E|F|G>:<rank>",
        "reflections of an irreducible Weyl group",
    ),
    (
        "example-2.3",
        "six-element quandle that does not embed in its group",
    ),
    (
        "abelian:<n1>x<n2>x...",
        "product of cyclic groups with C = generators and inverses",
    ),
    (
        "sl2z:window:<N>",
        "trace-2 elements of SL_2(Z) with entries of the vector at most N",
    ),
];

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogId::Sym2Cycles(n) => write!(f, "sym:{n}:2cycles"),
            CatalogId::SymNCycles(n) => write!(f, "sym:{n}:ncycles"),
            CatalogId::AltNCycles(n) => write!(f, "alt:{n}:ncycles"),
            CatalogId::Dihedral(n) => write!(f, "dihedral:{n}"),
            CatalogId::Cyclic(n) => write!(f, "cyclic:{n}"),
            CatalogId::Klein4 => write!(f, "klein4"),
            CatalogId::Weyl(t, r) => write!(f, "weyl:{t}:{r}"),
            CatalogId::Example23 => write!(f, "example-2.3"),
            CatalogId::Abelian(v) => {
                let parts: Vec<String> = v.iter().map(u64::to_string).collect();
                write!(f, "abelian:{}", parts.join("x"))
            }
            CatalogId::Sl2zWindow(n) => write!(f, "sl2z:window:{n}"),
        }
    }
}

fn number<T: FromStr>(s: &str, id: &str) -> Result<T, CatalogError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CatalogError::UnknownId(id.to_string()));
    }
    s.parse()
        .map_err(|_| CatalogError::InvalidParameter(format!("`{s}` is out of range in `{id}`")))
}

impl FromStr for CatalogId {
    type Err = CatalogError;

    fn from_str(id: &str) -> Result<Self, CatalogError> {
        let parts: Vec<&str> = id.split(':').collect();
        let unknown = || CatalogError::UnknownId(id.to_string());
        Ok(match parts.as_slice() {
            ["sym", n, "2cycles"] => CatalogId::Sym2Cycles(number(n, id)?),
            ["sym", n, "ncycles"] => CatalogId::SymNCycles(number(n, id)?),
            ["alt", n, "ncycles"] => CatalogId::AltNCycles(number(n, id)?),
            ["dihedral", n] => CatalogId::Dihedral(number(n, id)?),
            ["cyclic", n] => CatalogId::Cyclic(number(n, id)?),
            ["klein4"] => CatalogId::Klein4,
            ["weyl", t, r] => {
                let mut chars = t.chars();
                let kind = match (chars.next(), chars.next()) {
                    (Some(c), None) => RootType::from_letter(c).ok_or_else(unknown)?,
                    _ => return Err(unknown()),
                };
                CatalogId::Weyl(kind, number(r, id)?)
            }
            ["example-2.3"] => CatalogId::Example23,
            ["abelian", spec] => CatalogId::Abelian(
                spec.split('x')
                    .map(|s| number(s, id))
                    .collect::<Result<_, _>>()?,
            ),
            ["sl2z", "window", n] => CatalogId::Sl2zWindow(number(n, id)?),
            _ => return Err(unknown()),
        })
    }
}

/// A built catalog object: a finite IP quandle or an SL₂(ℤ) window.
#[derive(Debug, Clone)]
pub enum CatalogItem {
    Quandle(IPQuandle),
    Window(WindowQuandle),
}

impl CatalogId {
    pub fn build(&self) -> Result<CatalogItem, CatalogError> {
        Ok(CatalogItem::Quandle(match self {
            CatalogId::Sym2Cycles(n) => symmetric_2cycles(*n)?,
            CatalogId::SymNCycles(n) => symmetric_ncycles(*n)?,
            CatalogId::AltNCycles(n) => alternating_ncycles(*n)?,
            CatalogId::Dihedral(n) => dihedral(*n)?,
            CatalogId::Cyclic(n) => cyclic(*n)?,
            CatalogId::Klein4 => klein_four(),
            CatalogId::Weyl(t, r) => weyl(*t, *r)?,
            CatalogId::Example23 => example_2_3(),
            CatalogId::Abelian(v) => abelian_product(v)?,
            CatalogId::Sl2zWindow(n) => return Ok(CatalogItem::Window(sl2z_window(*n)?)),
        }))
    }

    /// Builds a finite quandle, rejecting windows.
    pub fn build_quandle(&self) -> Result<IPQuandle, CatalogError> {
        match self.build()? {
            CatalogItem::Quandle(q) => Ok(q),
            CatalogItem::Window(_) => {
                invalid(format!("{self} is a partial window, not a finite quandle"))
            }
        }
    }
}

/// Small finite instances of every family, used for exhaustive checks.
pub fn finite_instances() -> Vec<CatalogId> {
    use CatalogId::*;
    let mut v = vec![
        Sym2Cycles(3),
        Sym2Cycles(4),
        Sym2Cycles(5),
        SymNCycles(4),
        AltNCycles(3),
        AltNCycles(5),
    ];
    v.extend((2..=9).map(Dihedral));
    v.extend((3..=5).map(Cyclic));
    v.push(Klein4);
    for (t, r) in [
        (RootType::A, 1),
        (RootType::A, 2),
        (RootType::A, 3),
        (RootType::A, 4),
        (RootType::B, 2),
        (RootType::B, 3),
        (RootType::C, 3),
        (RootType::D, 4),
        (RootType::G, 2),
    ] {
        v.push(Weyl(t, r));
    }
    v.push(Example23);
    v.push(Abelian(vec![2, 3]));
    v.push(Abelian(vec![2, 2, 2]));
    v
}
