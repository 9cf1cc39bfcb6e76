//! Sublattices of `Z^n`: incremental Hermite bases, kernels, images and
//! exact integer solving.

use crate::linalg::{smith_normal_form, Matrix};
use crate::scalar::IntScalar;

/// A sublattice of `Z^dim` kept as a row-echelon basis with strictly
/// increasing pivot columns and positive pivots.
#[derive(Clone, Debug)]
pub struct Lattice<T> {
    dim: usize,
    rows: Vec<(usize, Vec<T>)>,
}

fn leading<T: IntScalar>(v: &[T]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

impl<T: IntScalar> Lattice<T> {
    pub fn new(dim: usize) -> Self {
        Lattice { dim, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &[T]> {
        self.rows.iter().map(|(_, r)| r.as_slice())
    }

    /// Absolute index `[Z^rank ∩ span : self]` measured on the pivot
    /// columns; 1 iff the lattice is saturated in its pivot coordinates.
    pub fn pivot_product(&self) -> T {
        self.rows.iter().fold(T::one(), |acc, (p, r)| acc * r[*p].clone())
    }

    pub fn contains(&self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            match leading(&v) {
                None => return true,
                Some(l) if l < *p => return false,
                Some(l) if l > *p => continue,
                Some(_) => {}
            }
            let (q, r) = v[*p].div_rem(&row[*p]);
            if !r.is_zero() {
                return false;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x = x.clone() - q.clone() * y.clone();
            }
        }
        leading(&v).is_none()
    }

    /// Adds `v` to the lattice. Returns false if it was already contained.
    pub fn insert(&mut self, v: &[T]) -> bool {
        if self.contains(v) {
            return false;
        }
        let mut v = v.to_vec();
        let mut idx = 0;
        while let Some(l) = leading(&v) {
            if idx == self.rows.len() || l < self.rows[idx].0 {
                if v[l].is_negative() {
                    v.iter_mut().for_each(|x| *x = -x.clone());
                }
                self.rows.insert(idx, (l, v));
                return true;
            }
            let p = self.rows[idx].0;
            if l > p {
                idx += 1;
                continue;
            }
            let row = &self.rows[idx].1;
            let eg = row[p].extended_gcd(&v[p]);
            let (a, b) = (row[p].clone() / eg.gcd.clone(), v[p].clone() / eg.gcd.clone());
            let new_row: Vec<T> =
                row.iter().zip(&v).map(|(r, x)| eg.x.clone() * r.clone() + eg.y.clone() * x.clone()).collect();
            let rest: Vec<T> = row.iter().zip(&v).map(|(r, x)| b.clone() * r.clone() - a.clone() * x.clone()).collect();
            let mut new_row = new_row;
            if new_row[p].is_negative() {
                new_row.iter_mut().for_each(|x| *x = -x.clone());
            }
            self.rows[idx].1 = new_row;
            v = rest;
            idx += 1;
        }
        true
    }
}

/// Columns spanning the integer kernel of `a` (a saturated lattice).
pub fn kernel_basis<T: IntScalar>(a: &Matrix<T>) -> Matrix<T> {
    let snf = smith_normal_form(a, true);
    let rank = snf.rank();
    let right = snf.transforms.expect("requested transforms").right;
    right.columns(rank..a.ncols())
}

/// Columns forming a basis of the column lattice of `a`.
pub fn image_basis<T: IntScalar>(a: &Matrix<T>) -> Matrix<T> {
    let snf = smith_normal_form(a, true);
    let left_inv = snf.transforms.as_ref().expect("requested transforms").left_inv.clone();
    let mut basis = left_inv.columns(0..snf.rank());
    for (j, f) in snf.factors.iter().enumerate() {
        for i in 0..basis.nrows() {
            basis[(i, j)] = basis[(i, j)].clone() * f.clone();
        }
    }
    basis
}

/// Some integer `x` with `a x = b` (column by column), if one exists.
pub fn solve_integer<T: IntScalar>(a: &Matrix<T>, b: &Matrix<T>) -> Option<Matrix<T>> {
    assert_eq!(a.nrows(), b.nrows());
    let snf = smith_normal_form(a, true);
    let t = snf.transforms.as_ref().unwrap();
    let ub = t.left.mul(b);
    let r = snf.rank();
    let mut y = Matrix::zeros(a.ncols(), b.ncols());
    for j in 0..b.ncols() {
        for i in 0..ub.nrows() {
            let v = &ub[(i, j)];
            if i < r {
                let (q, rem) = v.div_rem(&snf.factors[i]);
                if !rem.is_zero() {
                    return None;
                }
                y[(i, j)] = q;
            } else if !v.is_zero() {
                return None;
            }
        }
    }
    Some(t.right.mul(&y))
}
