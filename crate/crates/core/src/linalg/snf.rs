//! Dense Smith normal form over the integers.
//!
//! Pivoting always picks the entry of least absolute value in the active
//! block, which keeps entry growth down on the sparse, mostly unimodular
//! matrices produced by boundary maps.

use crate::linalg::Matrix;
use crate::scalar::{abs_cmp, IntScalar};

/// Unimodular transforms with `left * A * right = D`.
#[derive(Clone, Debug)]
pub struct SnfTransforms<T> {
    pub left: Matrix<T>,
    pub left_inv: Matrix<T>,
    pub right: Matrix<T>,
    pub right_inv: Matrix<T>,
}

#[derive(Clone, Debug)]
pub struct SmithNormalForm<T> {
    /// Nonzero diagonal entries of `D`, positive, each dividing the next.
    /// Unit factors are included.
    pub factors: Vec<T>,
    pub shape: (usize, usize),
    pub transforms: Option<SnfTransforms<T>>,
}

impl<T: IntScalar> SmithNormalForm<T> {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one.
    pub fn nontrivial_factors(&self) -> Vec<T> {
        self.factors.iter().filter(|f| !f.is_one()).cloned().collect()
    }

    /// The diagonal matrix `D`.
    pub fn diagonal(&self) -> Matrix<T> {
        let mut d = Matrix::zeros(self.shape.0, self.shape.1);
        for (i, f) in self.factors.iter().enumerate() {
            d[(i, i)] = f.clone();
        }
        d
    }
}

struct Reducer<T> {
    a: Matrix<T>,
    tr: Option<SnfTransforms<T>>,
}

impl<T: IntScalar> Reducer<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_rows(i, j);
        if let Some(t) = &mut self.tr {
            t.left.swap_rows(i, j);
            t.left_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_cols(i, j);
        if let Some(t) = &mut self.tr {
            t.right.swap_cols(i, j);
            t.right_inv.swap_rows(i, j);
        }
    }

    /// row[dst] += q row[src]
    fn row_op(&mut self, dst: usize, src: usize, q: &T) {
        self.a.add_row_multiple(dst, src, q);
        if let Some(t) = &mut self.tr {
            t.left.add_row_multiple(dst, src, q);
            t.left_inv.add_col_multiple(src, dst, &-q.clone());
        }
    }

    /// col[dst] += q col[src]
    fn col_op(&mut self, dst: usize, src: usize, q: &T) {
        self.a.add_col_multiple(dst, src, q);
        if let Some(t) = &mut self.tr {
            t.right.add_col_multiple(dst, src, q);
            t.right_inv.add_row_multiple(src, dst, &-q.clone());
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(t) = &mut self.tr {
            t.left.negate_row(i);
            t.left_inv.negate_col(i);
        }
    }

    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let (m, n) = self.a.shape();
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                if v.is_unit() {
                    return Some((i, j));
                }
                match best {
                    Some((bi, bj)) if abs_cmp(v, &self.a[(bi, bj)]).is_ge() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Clears row and column `t` past the pivot; returns false when a
    /// nonzero remainder forced a new, smaller pivot.
    fn clear_cross(&mut self, t: usize) -> bool {
        let (m, n) = self.a.shape();
        let mut clean = true;
        for i in t + 1..m {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let q = self.a[(i, t)].trunc_div(&self.a[(t, t)]);
            self.row_op(i, t, &-q);
            if !self.a[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..n {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let q = self.a[(t, j)].trunc_div(&self.a[(t, t)]);
            self.col_op(j, t, &-q);
            if !self.a[(t, j)].is_zero() {
                clean = false;
            }
        }
        if clean {
            return true;
        }
        // bring the smallest remaining cross entry to the pivot
        let mut best = (t, t);
        for i in t + 1..m {
            let v = &self.a[(i, t)];
            if !v.is_zero() && abs_cmp(v, &self.a[best]).is_lt() {
                best = (i, t);
            }
        }
        for j in t + 1..n {
            let v = &self.a[(t, j)];
            if !v.is_zero() && abs_cmp(v, &self.a[best]).is_lt() {
                best = (t, j);
            }
        }
        self.swap_rows(t, best.0);
        self.swap_cols(t, best.1);
        false
    }

    fn run(&mut self) -> Vec<T> {
        let (m, n) = self.a.shape();
        let mut factors = Vec::new();
        for t in 0..m.min(n) {
            let Some((pi, pj)) = self.min_in_block(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                if !self.clear_cross(t) {
                    continue;
                }
                let p = self.a[(t, t)].clone();
                if p.is_unit() {
                    break;
                }
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !self.a[(i, j)].is_multiple_of(&p)));
                match bad {
                    Some(i) => self.row_op(t, i, &T::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            factors.push(self.a[(t, t)].clone());
        }
        factors
    }
}

/// Smith normal form of `a`; with `transforms` the unimodular `U`, `V`
/// (and their inverses) with `U A V = D` are returned as well.
pub fn smith_normal_form<T: IntScalar>(a: &Matrix<T>, transforms: bool) -> SmithNormalForm<T> {
    let (m, n) = a.shape();
    let tr = transforms.then(|| SnfTransforms {
        left: Matrix::identity(m),
        left_inv: Matrix::identity(m),
        right: Matrix::identity(n),
        right_inv: Matrix::identity(n),
    });
    let mut r = Reducer { a: a.clone(), tr };
    let factors = r.run();
    debug_assert!(factors.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    SmithNormalForm { factors, shape: (m, n), transforms: r.tr }
}

/// Invariant factors only (units included).
pub fn invariant_factors<T: IntScalar>(a: &Matrix<T>) -> Vec<T> {
    smith_normal_form(a, false).factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn check_transforms(a: &Matrix<BigInt>) {
        let snf = smith_normal_form(a, true);
        let t = snf.transforms.as_ref().unwrap();
        assert_eq!(t.left.mul(a).mul(&t.right), snf.diagonal());
        assert_eq!(t.left.mul(&t.left_inv), Matrix::identity(a.nrows()));
        assert_eq!(t.right.mul(&t.right_inv), Matrix::identity(a.ncols()));
    }

    #[test]
    fn diag_two_three() {
        let a = Matrix::<i64>::from_i64_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(invariant_factors(&a), vec![1, 6]);
    }

    #[test]
    fn zero_matrix_has_no_factors() {
        assert!(invariant_factors(&Matrix::<i64>::zeros(3, 2)).is_empty());
        assert!(invariant_factors(&Matrix::<i64>::zeros(0, 4)).is_empty());
    }

    #[test]
    fn determinantal_divisors() {
        let a = Matrix::<i64>::from_i64_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(invariant_factors(&a), vec![2, 4]);
    }

    #[test]
    fn transforms_reconstruct() {
        let a = Matrix::<BigInt>::from_i64_rows(&[vec![4, 6, -2], vec![10, 0, 3], vec![8, 12, -4], vec![0, 5, 7]]);
        check_transforms(&a);
        check_transforms(&Matrix::from_i64_rows(&[vec![0, 0], vec![0, 0]]));
        check_transforms(&Matrix::from_i64_rows(&[vec![6, 10, 15]]));
    }

    #[test]
    fn rank_deficient() {
        let a = Matrix::<i64>::from_i64_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 1, 1]]);
        let snf = smith_normal_form(&a, false);
        assert_eq!(snf.rank(), 2);
        assert_eq!(snf.factors, vec![1, 1]);
    }
}
