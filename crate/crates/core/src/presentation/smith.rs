//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// `cols` is needed to describe matrices with no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<i64>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other.data[k][j].is_zero() {
                        out.data[i][j] += &self.data[i][k] * &other.data[k][j];
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free elimination. Square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            BigInt::one()
        } else {
            sign * &a[n - 1][n - 1]
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.data.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.data {
            row.swap(i, j);
        }
    }

    /// row_i -= q · row_j
    fn sub_row(&mut self, i: usize, j: usize, q: &BigInt) {
        for c in 0..self.cols {
            if !self.data[j][c].is_zero() {
                let d = q * &self.data[j][c];
                self.data[i][c] -= d;
            }
        }
    }

    /// col_i -= q · col_j
    fn sub_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for row in &mut self.data {
            if !row[j].is_zero() {
                let d = q * &row[j];
                row[i] -= d;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -&*x;
        }
    }
}

/// `left · M · right = D` with `D` diagonal, d₁ | d₂ | ⋯, all dᵢ ≥ 0, and
/// `left`, `right` unimodular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// The `min(rows, cols)` diagonal entries of `D`.
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows, self.right.cols);
        for (i, v) in self.diagonal.iter().enumerate() {
            d.data[i][i] = v.clone();
        }
        d
    }
}

struct Reducer<'a> {
    a: IntMatrix,
    left: Option<&'a mut IntMatrix>,
    right: Option<&'a mut IntMatrix>,
}

impl Reducer<'_> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_rows(i, j);
            if let Some(l) = self.left.as_deref_mut() {
                l.swap_rows(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap_cols(i, j);
            if let Some(r) = self.right.as_deref_mut() {
                r.swap_cols(i, j);
            }
        }
    }

    fn sub_row(&mut self, i: usize, j: usize, q: &BigInt) {
        self.a.sub_row(i, j, q);
        if let Some(l) = self.left.as_deref_mut() {
            l.sub_row(i, j, q);
        }
    }

    fn sub_col(&mut self, i: usize, j: usize, q: &BigInt) {
        self.a.sub_col(i, j, q);
        if let Some(r) = self.right.as_deref_mut() {
            r.sub_col(i, j, q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(l) = self.left.as_deref_mut() {
            l.negate_row(i);
        }
    }

    /// Position of the smallest nonzero entry in the trailing block from
    /// `(t, t)`, scanning row-major.
    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let v = &self.a.data[i][j];
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a.data[bi][bj].abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
                if v.abs().is_one() {
                    return best;
                }
            }
        }
        best
    }

    fn run(&mut self) -> Vec<BigInt> {
        let n = self.a.rows.min(self.a.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.smallest(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..self.a.rows {
                    if !self.a.data[i][t].is_zero() {
                        let q = self.a.data[i][t].div_floor(&self.a.data[t][t]);
                        self.sub_row(i, t, &q);
                        if !self.a.data[i][t].is_zero() {
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..self.a.cols {
                    if !self.a.data[t][j].is_zero() {
                        let q = self.a.data[t][j].div_floor(&self.a.data[t][t]);
                        self.sub_col(j, t, &q);
                        if !self.a.data[t][j].is_zero() {
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    // A smaller remainder sits in row or column t; move it to
                    // the pivot and repeat.
                    let (pi, pj) = self.smallest_in_cross(t);
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                let pivot = self.a.data[t][t].clone();
                let offender = (t + 1..self.a.rows).find(|&i| {
                    (t + 1..self.a.cols).any(|j| !self.a.data[i][j].is_multiple_of(&pivot))
                });
                match offender {
                    Some(i) => {
                        // row_t += row_i, then keep reducing.
                        self.sub_row(t, i, &BigInt::from(-1));
                    }
                    None => break,
                }
            }
            if self.a.data[t][t].is_negative() {
                self.negate_row(t);
            }
        }
        (0..n).map(|i| self.a.data[i][i].clone()).collect()
    }

    fn smallest_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut best_abs = self.a.data[t][t].abs();
        for i in t + 1..self.a.rows {
            let v = self.a.data[i][t].abs();
            if !v.is_zero() && v < best_abs {
                best = (i, t);
                best_abs = v;
            }
        }
        for j in t + 1..self.a.cols {
            let v = self.a.data[t][j].abs();
            if !v.is_zero() && v < best_abs {
                best = (t, j);
                best_abs = v;
            }
        }
        best
    }
}

/// Smith normal form with the unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut left = IntMatrix::identity(m.rows);
    let mut right = IntMatrix::identity(m.cols);
    let diagonal = Reducer {
        a: m.clone(),
        left: Some(&mut left),
        right: Some(&mut right),
    }
    .run();
    SmithForm {
        diagonal,
        left,
        right,
    }
}

/// The diagonal of the Smith normal form, without the transforms.
pub(crate) fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    Reducer {
        a: m.clone(),
        left: None,
        right: None,
    }
    .run()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(m: &IntMatrix, s: &SmithForm) {
        assert_eq!(s.left.mul(m).mul(&s.right), s.diagonal_matrix());
        assert!(s.left.determinant().abs().is_one());
        assert!(s.right.determinant().abs().is_one());
        for w in s.diagonal.windows(2) {
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        assert!(s.diagonal.iter().all(|d| !d.is_negative()));
    }

    #[test]
    fn fixed_examples() {
        let m = IntMatrix::from_rows(2, vec![vec![2, 0], vec![0, 0]]);
        let s = smith_normal_form(&m);
        check(&m, &s);
        assert_eq!(s.diagonal, big(&[2, 0]));

        let id = IntMatrix::from_rows(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let s = smith_normal_form(&id);
        check(&id, &s);
        assert_eq!(s.diagonal, big(&[1, 1, 1]));

        let m = IntMatrix::from_rows(2, vec![vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&m);
        check(&m, &s);
        assert_eq!(s.diagonal, big(&[2, 4]));
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) is diagonal but not in Smith form: diag(1, 6).
        let m = IntMatrix::from_rows(2, vec![vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        check(&m, &s);
        assert_eq!(s.diagonal, big(&[1, 6]));
    }

    #[test]
    fn empty_and_rectangular() {
        let m = IntMatrix::from_rows(3, vec![]);
        assert!(smith_normal_form(&m).diagonal.is_empty());
        let m = IntMatrix::from_rows(3, vec![vec![4, 6, 8]]);
        let s = smith_normal_form(&m);
        check(&m, &s);
        assert_eq!(s.diagonal, big(&[2]));
    }

    proptest! {
        #[test]
        fn transforms_reproduce_diagonal(
            rows in 0usize..5, cols in 1usize..5,
            seed in proptest::collection::vec(-9i64..10, 25),
        ) {
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| seed[i * 5 + j]).collect())
                .collect();
            let m = IntMatrix::from_rows(cols, data);
            let s = smith_normal_form(&m);
            check(&m, &s);
            prop_assert_eq!(invariant_factors(&m), s.diagonal);
        }

        #[test]
        fn diagonal_matches_determinantal_divisors(
            rows in 1usize..4, cols in 1usize..4,
            seed in proptest::collection::vec(-6i64..7, 16),
        ) {
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect())
                .collect();
            let diag = smith_normal_form(&IntMatrix::from_rows(cols, data.clone())).diagonal;
            let mut product = BigInt::one();
            for k in 1..=rows.min(cols) {
                product *= diag[k - 1].clone();
                prop_assert_eq!(product.abs(), minor_gcd(&data, k));
            }
        }
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    }

    fn minor_gcd(data: &[Vec<i64>], k: usize) -> BigInt {
        let mut g = BigInt::zero();
        for rs in subsets(data.len(), k) {
            for cs in subsets(data[0].len(), k) {
                let sub = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| data[i][j]).collect())
                    .collect();
                g = g.gcd(&IntMatrix::from_rows(k, sub).determinant());
            }
        }
        g
    }
}
