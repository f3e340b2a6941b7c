//! The IP quandle of trace-2 unipotents e_v in SL₂(ℤ), v a primitive vector
//! up to sign, and finite windows of it.

use std::fmt;

use num_integer::Integer;

use super::CatalogError;
use crate::group::Mat2;
use crate::quandle::components_of;

/// A primitive integer vector (a, c) with its first nonzero entry positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjVec {
    a: i64,
    c: i64,
}

impl ProjVec {
    /// Normalizes ±(a, c); `None` unless gcd(a, c) = 1.
    pub fn new(a: i64, c: i64) -> Option<Self> {
        if a.gcd(&c) != 1 {
            return None;
        }
        let (a, c) = if a < 0 || (a == 0 && c < 0) {
            (-a, -c)
        } else {
            (a, c)
        };
        Some(ProjVec { a, c })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    /// det of the 2×2 matrix with rows `self`, `other`.
    pub fn det(&self, other: &ProjVec) -> i64 {
        self.a * other.c - self.c * other.a
    }

    pub fn norm_inf(&self) -> i64 {
        self.a.abs().max(self.c.abs())
    }
}

impl fmt::Display for ProjVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.c)
    }
}

/// e_v (`inverse = false`) or e_v⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedVec {
    pub inverse: bool,
    pub v: ProjVec,
}

impl SignedVec {
    pub fn e(v: ProjVec) -> Self {
        SignedVec { inverse: false, v }
    }

    pub fn e_inv(v: ProjVec) -> Self {
        SignedVec { inverse: true, v }
    }

    pub fn flip(self) -> Self {
        SignedVec {
            inverse: !self.inverse,
            ..self
        }
    }

    fn sign(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for SignedVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}{}", self.v, if self.inverse { "'" } else { "" })
    }
}

/// e_(a,c) = [[1 − ac, a²], [−c², 1 + ac]], or its inverse.
pub fn sl2z_matrix(s: SignedVec) -> Mat2 {
    let (a, c) = (s.v.a, s.v.c);
    let k = s.sign();
    Mat2::new(1 - k * a * c, k * a * a, -k * c * c, 1 + k * a * c)
}

/// ᵘv via the determinant shift: e_a^{±1} conjugates e_b^{±1} to the
/// element of the same sign at b ± det(a; b)·a.
pub fn sl2z_conjugate(u: SignedVec, v: SignedVec) -> SignedVec {
    let d = u.v.det(&v.v) * u.sign();
    let w =
        ProjVec::new(v.v.a + d * u.v.a, v.v.c + d * u.v.c).expect("shear keeps vectors primitive");
    SignedVec {
        inverse: v.inverse,
        v: w,
    }
}

/// Opposite signs with a = ±b or |det(a; b)| = 1.
pub fn sl2z_skew(u: SignedVec, v: SignedVec) -> bool {
    u.inverse != v.inverse && (u.v == v.v || u.v.det(&v.v).abs() == 1)
}

/// The elements with both entries of v bounded by N, with the partially
/// defined operation and the skew graph restricted to the window.
#[derive(Debug, Clone)]
pub struct WindowQuandle {
    bound: usize,
    elements: Vec<SignedVec>,
    op: Vec<Vec<Option<usize>>>,
    inv: Vec<usize>,
    edges: Vec<(usize, usize)>,
    component: Vec<usize>,
    components: usize,
}

pub fn sl2z_window(bound: usize) -> Result<WindowQuandle, CatalogError> {
    if bound == 0 || bound > 1000 {
        return Err(CatalogError::InvalidParameter(format!(
            "sl2z:window:{bound} needs 1 <= N <= 1000"
        )));
    }
    let n = bound as i64;
    let mut vecs = Vec::new();
    for a in 0..=n {
        for c in -n..=n {
            if let Some(v) = ProjVec::new(a, c) {
                if v.a == a && v.c == c {
                    vecs.push(v);
                }
            }
        }
    }
    vecs.sort_by_key(|v| (v.a.abs() + v.c.abs(), v.a, v.c));
    let elements: Vec<SignedVec> = vecs
        .iter()
        .map(|&v| SignedVec::e(v))
        .chain(vecs.iter().map(|&v| SignedVec::e_inv(v)))
        .collect();
    let index: std::collections::HashMap<SignedVec, usize> =
        elements.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let op = elements
        .iter()
        .map(|&u| {
            elements
                .iter()
                .map(|&v| index.get(&sl2z_conjugate(u, v)).copied())
                .collect()
        })
        .collect();
    let inv = elements.iter().map(|s| index[&s.flip()]).collect();
    let m = elements.len();
    let mut adjacency = vec![Vec::new(); m];
    let mut edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if sl2z_skew(elements[i], elements[j]) {
                edges.push((i, j));
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    let (component, components) = components_of(&adjacency);
    Ok(WindowQuandle {
        bound,
        elements,
        op,
        inv,
        edges,
        component,
        components,
    })
}

impl WindowQuandle {
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[SignedVec] {
        &self.elements
    }

    pub fn name(&self, i: usize) -> String {
        self.elements[i].to_string()
    }

    /// ᵃb, or `None` when it leaves the window.
    pub fn op(&self, a: usize, b: usize) -> Option<usize> {
        self.op[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn component(&self) -> &[usize] {
        &self.component
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components == 1
    }

    /// Whether ᵃb = (ᵇa)⁻¹ with both sides in the window; `None` if either
    /// side leaves it.
    pub fn mutually_skew(&self, a: usize, b: usize) -> Option<bool> {
        let ab = self.op(a, b)?;
        let ba = self.op(b, a)?;
        Some(ab == self.inv(ba))
    }

    /// Checks the IP quandle axioms on every instance whose evaluations stay
    /// inside the window. Returns the first failing triple.
    pub fn check_partial_axioms(&self) -> Option<(usize, usize, usize)> {
        let m = self.len();
        for a in 0..m {
            if self.op(a, a) != Some(a) || self.inv(self.inv(a)) != a {
                return Some((a, a, a));
            }
            for b in 0..m {
                let Some(ab) = self.op(a, b) else { continue };
                if self.op(a, self.inv(b)) != Some(self.inv(ab)) {
                    return Some((a, b, b));
                }
                if self.op(self.inv(a), ab) != Some(b) {
                    return Some((a, b, b));
                }
                for c in 0..m {
                    let lhs = self.op(c, a).and_then(|ca| {
                        let cb = self.op(c, b)?;
                        self.op(ca, cb)
                    });
                    let rhs = self.op(c, ab);
                    if let (Some(l), Some(r)) = (lhs, rhs) {
                        if l != r {
                            return Some((a, b, c));
                        }
                    }
                }
            }
        }
        None
    }
}
