//! HLT coset enumeration over the trivial subgroup.
//!
//! Every generator gets a column and a column for its formal inverse, except
//! generators with a relator `g·g`, whose inverse shares the generator's
//! column. Cosets are defined in order (lowest undefined entry of the
//! current row first) and coincidences are processed fully as they arise.

use std::collections::VecDeque;

use thiserror::Error;

use super::{Letter, Presentation};
use crate::group::{CosetAction, FiniteGroup, GroupElement};

const NONE: u32 = u32::MAX;

/// Enumeration stopped after defining `high_water` cosets.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("coset enumeration exceeded {max_cosets} cosets (high-water mark {high_water})")]
pub struct Exceeded {
    pub max_cosets: usize,
    pub high_water: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CosetTableError {
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("coset table rows have inconsistent widths")]
    Malformed,
}

/// A coset table over the trivial subgroup. Coset 0 is the subgroup itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    /// Column of each generator.
    gen_col: Vec<usize>,
    /// Column of each generator's formal inverse.
    inv_col: Vec<usize>,
    /// Inverse column of each column.
    col_inverse: Vec<usize>,
    rows: Vec<Vec<Option<u32>>>,
    high_water: usize,
}

impl CosetTable {
    /// Builds a table from raw rows, `None` marking undefined entries.
    pub fn from_rows(
        gen_col: Vec<usize>,
        inv_col: Vec<usize>,
        rows: Vec<Vec<Option<u32>>>,
    ) -> Result<Self, CosetTableError> {
        let ncols = gen_col
            .iter()
            .chain(&inv_col)
            .map(|c| c + 1)
            .max()
            .unwrap_or(0);
        if gen_col.len() != inv_col.len()
            || rows.iter().any(|r| r.len() != ncols)
            || rows
                .iter()
                .flatten()
                .flatten()
                .any(|&c| c as usize >= rows.len())
        {
            return Err(CosetTableError::Malformed);
        }
        let mut col_inverse = vec![usize::MAX; ncols];
        for (&g, &i) in gen_col.iter().zip(&inv_col) {
            col_inverse[g] = i;
            col_inverse[i] = g;
        }
        if col_inverse.contains(&usize::MAX) {
            return Err(CosetTableError::Malformed);
        }
        let high_water = rows.len();
        Ok(CosetTable {
            gen_col,
            inv_col,
            col_inverse,
            rows,
            high_water,
        })
    }

    pub fn cosets(&self) -> usize {
        self.rows.len()
    }

    pub fn columns(&self) -> usize {
        self.col_inverse.len()
    }

    /// Total cosets defined during enumeration, including those later
    /// identified by coincidences.
    pub fn high_water(&self) -> usize {
        self.high_water
    }

    pub fn is_complete(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(Option::is_some))
    }

    pub fn column_of(&self, letter: Letter) -> usize {
        if letter.inverse {
            self.inv_col[letter.generator as usize]
        } else {
            self.gen_col[letter.generator as usize]
        }
    }

    pub fn entry(&self, coset: usize, col: usize) -> Option<u32> {
        self.rows[coset][col]
    }

    /// Image of `coset` under a word, if every step is defined.
    pub fn trace(&self, coset: u32, word: &[Letter]) -> Option<u32> {
        word.iter()
            .try_fold(coset, |c, &l| self.rows[c as usize][self.column_of(l)])
    }

    /// Coset `0 · g` for each generator `g`.
    pub fn generator_cosets(&self) -> Vec<u32> {
        self.gen_col
            .iter()
            .map(|&c| self.rows[0][c].expect("generator entry of coset 0 is defined"))
            .collect()
    }

    /// The letter read along each column: its generator and whether it is
    /// the formal inverse. Shared involution columns read as the generator.
    pub fn column_letters(&self) -> Vec<Letter> {
        let mut letters = vec![Letter::gen(0); self.columns()];
        for (g, (&fc, &ic)) in self.gen_col.iter().zip(&self.inv_col).enumerate() {
            letters[ic] = Letter::inv(g);
            letters[fc] = Letter::gen(g);
        }
        letters
    }

    /// Breadth-first column words reaching every coset from coset 0, in
    /// coset order.
    pub fn spanning_words(&self) -> Vec<Vec<usize>> {
        let n = self.cosets();
        let mut words: Vec<Option<Vec<usize>>> = vec![None; n];
        if n == 0 {
            return Vec::new();
        }
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for col in 0..self.columns() {
                if let Some(d) = self.rows[c][col] {
                    if words[d as usize].is_none() {
                        let mut w = words[c].clone().unwrap();
                        w.push(col);
                        words[d as usize] = Some(w);
                        queue.push_back(d as usize);
                    }
                }
            }
        }
        words.into_iter().map(|w| w.unwrap_or_default()).collect()
    }
}

struct Enumerator {
    ncols: usize,
    col_inverse: Vec<usize>,
    table: Vec<u32>,
    parent: Vec<u32>,
    relators: Vec<Vec<usize>>,
    max_cosets: usize,
    queue: Vec<u32>,
    /// Definitions, deductions and coincidences so far.
    events: u64,
}

impl Enumerator {
    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.ncols + col]
    }

    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.ncols + col] = v;
    }

    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, col: usize) -> Result<u32, Exceeded> {
        if self.rows() >= self.max_cosets {
            return Err(Exceeded {
                max_cosets: self.max_cosets,
                high_water: self.rows(),
            });
        }
        let d = self.rows() as u32;
        self.events += 1;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        self.set(c, col, d);
        self.set(d, self.col_inverse[col], c);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (keep, kill) = (ra.min(rb), ra.max(rb));
            self.parent[kill as usize] = keep;
            self.queue.push(kill);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.events += 1;
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.ncols {
                let target = self.get(dead, col);
                if target == NONE {
                    continue;
                }
                let icol = self.col_inverse[col];
                if self.get(target, icol) == dead {
                    self.set(target, icol, NONE);
                }
                let mu = self.rep(dead);
                let nu = self.rep(target);
                let mu_x = self.get(mu, col);
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                } else {
                    let nu_xi = self.get(nu, icol);
                    if nu_xi != NONE {
                        self.merge(mu, nu_xi);
                    } else {
                        self.set(mu, col, nu);
                        self.set(nu, icol, mu);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, r: usize) -> Result<(), Exceeded> {
        let len = self.relators[r].len();
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = len; // exclusive upper end of the unscanned segment
        loop {
            while i < j {
                let next = self.get(f, self.relators[r][i]);
                if next == NONE {
                    break;
                }
                f = next;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let col = self.col_inverse[self.relators[r][j - 1]];
                let next = self.get(b, col);
                if next == NONE {
                    break;
                }
                b = next;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                let col = self.relators[r][i];
                self.events += 1;
                self.set(f, col, b);
                self.set(b, self.col_inverse[col], f);
                return Ok(());
            }
            self.define(f, self.relators[r][i])?;
        }
    }

    /// Repeats HLT passes until one pass changes nothing, so every relator
    /// closes at every live coset.
    fn run(&mut self) -> Result<(), Exceeded> {
        loop {
            let before = self.events;
            self.pass()?;
            if self.events == before {
                return Ok(());
            }
        }
    }

    fn pass(&mut self) -> Result<(), Exceeded> {
        let mut c = 0u32;
        while (c as usize) < self.rows() {
            if self.live(c) {
                for r in 0..self.relators.len() {
                    self.scan_and_fill(c, r)?;
                    if !self.live(c) {
                        break;
                    }
                }
                if self.live(c) {
                    for col in 0..self.ncols {
                        if self.get(c, col) == NONE {
                            self.define(c, col)?;
                        }
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    /// Live cosets renumbered in breadth-first order from coset 0.
    fn standardize(&self) -> Vec<Vec<Option<u32>>> {
        let mut number = vec![NONE; self.rows()];
        let mut order = vec![0u32];
        number[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            k += 1;
            for col in 0..self.ncols {
                let d = self.get(c, col);
                if number[d as usize] == NONE {
                    number[d as usize] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        order
            .iter()
            .map(|&c| {
                (0..self.ncols)
                    .map(|col| Some(number[self.get(c, col) as usize]))
                    .collect()
            })
            .collect()
    }
}

/// Enumerates the cosets of the trivial subgroup. On success the table is
/// complete, standardized (breadth-first from coset 0), and has one coset
/// per group element.
pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> Result<CosetTable, Exceeded> {
    let involution: Vec<bool> = (0..p.generators)
        .map(|g| {
            p.relators
                .iter()
                .any(|r| r.0 == [Letter::gen(g), Letter::gen(g)])
        })
        .collect();
    let mut gen_col = Vec::with_capacity(p.generators);
    let mut inv_col = Vec::with_capacity(p.generators);
    let mut ncols = 0;
    for &inv in &involution {
        gen_col.push(ncols);
        if inv {
            inv_col.push(ncols);
            ncols += 1;
        } else {
            inv_col.push(ncols + 1);
            ncols += 2;
        }
    }
    let mut col_inverse = vec![0; ncols];
    for (&g, &i) in gen_col.iter().zip(&inv_col) {
        col_inverse[g] = i;
        col_inverse[i] = g;
    }
    let column = |l: &Letter| {
        if l.inverse {
            inv_col[l.generator as usize]
        } else {
            gen_col[l.generator as usize]
        }
    };
    let relators = p
        .relators
        .iter()
        .map(|r| r.0.iter().map(column).collect())
        .collect();
    let mut e = Enumerator {
        ncols,
        col_inverse,
        table: vec![NONE; ncols],
        parent: vec![0],
        relators,
        max_cosets: max_cosets.max(1),
        queue: Vec::new(),
        events: 0,
    };
    e.run()?;
    let rows = if ncols == 0 {
        vec![vec![]]
    } else {
        e.standardize()
    };
    let mut table = CosetTable::from_rows(gen_col, inv_col, rows)
        .expect("enumerator produces well-formed tables");
    table.high_water = e.rows();
    Ok(table)
}

/// The regular representation: a group whose elements are the cosets, with
/// the generator cosets `0·g` recorded as generators.
pub fn group_from_coset_table(t: &CosetTable) -> Result<FiniteGroup, CosetTableError> {
    if !t.is_complete() {
        return Err(CosetTableError::IncompleteTable);
    }
    let table: Vec<Vec<u32>> = t
        .rows
        .iter()
        .map(|r| r.iter().map(|x| x.unwrap()).collect())
        .collect();
    let generators = t
        .generator_cosets()
        .into_iter()
        .map(GroupElement::Coset)
        .collect();
    let action = CosetAction {
        table,
        inverse_col: t.col_inverse.clone(),
        words: t.spanning_words(),
    };
    Ok(FiniteGroup::from_coset_action(action, generators))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Word;

    fn word(v: &[i64]) -> Word {
        Word(
            v.iter()
                .map(|&x| {
                    if x > 0 {
                        Letter::gen(x as usize - 1)
                    } else {
                        Letter::inv((-x) as usize - 1)
                    }
                })
                .collect(),
        )
    }

    #[test]
    fn z2() {
        let p = Presentation::new(1, vec![word(&[1, 1])]);
        let t = todd_coxeter(&p, 100).unwrap();
        assert_eq!(t.cosets(), 2);
        assert_eq!(t.columns(), 1);
        let g = group_from_coset_table(&t).unwrap();
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn coxeter_presentation_of_s4() {
        // s1² = s2² = s3² = (s1 s2)³ = (s2 s3)³ = (s1 s3)² = e
        let p = Presentation::new(
            3,
            vec![
                word(&[1, 1]),
                word(&[2, 2]),
                word(&[3, 3]),
                word(&[1, 2, 1, 2, 1, 2]),
                word(&[2, 3, 2, 3, 2, 3]),
                word(&[1, 3, 1, 3]),
            ],
        );
        let t = todd_coxeter(&p, 1000).unwrap();
        assert_eq!(t.cosets(), 24);
        assert!(t.is_complete());
    }

    #[test]
    fn cyclic_with_formal_inverse_columns() {
        let p = Presentation::new(1, vec![word(&[1, 1, 1, 1, 1])]);
        let t = todd_coxeter(&p, 100).unwrap();
        assert_eq!(t.cosets(), 5);
        assert_eq!(t.columns(), 2);
        let g = group_from_coset_table(&t).unwrap();
        let x = &g.generators()[0];
        assert_eq!(g.element_order(x).unwrap(), 5);
        assert_eq!(g.mul(x, &g.inv(x)), GroupElement::Coset(0));
    }

    #[test]
    fn free_abelian_group_exceeds() {
        let p = Presentation::new(2, vec![word(&[1, 2, -1, -2])]);
        let err = todd_coxeter(&p, 500).unwrap_err();
        assert_eq!(err.max_cosets, 500);
        assert_eq!(err.high_water, 500);
    }

    #[test]
    fn trivial_group_from_collapsing_relators() {
        // a = b, a² = e, ab = e  ⇒  but a² = ab gives a = b; still order 2.
        // a = e directly:
        let p = Presentation::new(2, vec![word(&[1]), word(&[1, -2])]);
        let t = todd_coxeter(&p, 100).unwrap();
        assert_eq!(t.cosets(), 1);
    }

    #[test]
    fn incomplete_table_is_rejected() {
        let t = CosetTable::from_rows(vec![0], vec![0], vec![vec![None]]).unwrap();
        assert_eq!(
            group_from_coset_table(&t).unwrap_err(),
            CosetTableError::IncompleteTable
        );
        assert_eq!(
            CosetTable::from_rows(vec![0], vec![0], vec![vec![Some(3)]]).unwrap_err(),
            CosetTableError::Malformed
        );
    }
}
