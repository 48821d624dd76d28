use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::exactla::field::Field;
use crate::exactla::matrix::{axpy, is_zero_vec, unit_vec, zero_vec, Matrix, Vector};

/// Reduced row-echelon form with zero rows dropped. Returns the nonzero rows
/// and their pivot columns.
pub fn rref<F: Field>(f: &F, m: &Matrix<F>) -> (Vec<Vector<F>>, Vec<usize>) {
    rref_rows(f, m.cols(), m.row_vectors())
}

pub fn rref_rows<F: Field>(
    f: &F,
    cols: usize,
    mut rows: Vec<Vector<F>>,
) -> (Vec<Vector<F>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]).expect("nonzero pivot");
        if !f.is_one(&inv) {
            for x in rows[r].iter_mut().skip(c) {
                *x = f.mul(x, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !f.is_zero(&row[c]) {
                let coef = f.neg(&row[c]);
                axpy(f, &mut row[c..], &coef, &pivot_row[c..]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// A subspace of K^n stored by its canonical reduced echelon basis, so that
/// equal subspaces have identical representations.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vector<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl<F: Field> Eq for Subspace<F> {}

impl<F: Field> Hash for Subspace<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.basis.hash(state);
    }
}

impl<F: Field> Subspace<F> {
    pub fn span(field: &F, ambient: usize, vectors: &[Vector<F>]) -> Self {
        for v in vectors {
            assert_eq!(
                v.len(),
                ambient,
                "vector length must equal ambient dimension"
            );
        }
        let (basis, pivots) = rref_rows(field, ambient, vectors.to_vec());
        Subspace {
            field: field.clone(),
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(field: &F, ambient: usize) -> Self {
        Self::span(field, ambient, &[])
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        let vs: Vec<_> = (0..ambient).map(|i| unit_vec(field, ambient, i)).collect();
        Self::span(field, ambient, &vs)
    }

    /// Trust the caller that `basis` is already in reduced echelon form.
    pub(crate) fn from_echelon(
        field: &F,
        ambient: usize,
        basis: Vec<Vector<F>>,
        pivots: Vec<usize>,
    ) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn codim(&self) -> usize {
        self.ambient - self.basis.len()
    }
    pub fn basis(&self) -> &[Vector<F>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(&self.field, self.ambient, &self.basis).expect("consistent rows")
    }

    /// Remainder of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            if !f.is_zero(&out[c]) {
                let coef = f.neg(&out[c]);
                axpy(f, &mut out, &coef, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient);
        is_zero_vec(&self.field, &self.reduce(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vector<F>> {
        if self.contains(v) {
            Some(self.pivots.iter().map(|&c| v[c].clone()).collect())
        } else {
            None
        }
    }

    pub fn combine(&self, coords: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = zero_vec(f, self.ambient);
        for (c, row) in coords.iter().zip(&self.basis) {
            axpy(f, &mut out, c, row);
        }
        out
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            Err(Error::AmbientMismatch(self.ambient, other.ambient))
        } else {
            Ok(())
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Self::span(&self.field, self.ambient, &vs))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let f = &self.field;
        // Each basis vector of self, reduced modulo other, must cancel.
        let k = self.dim();
        if k == 0 || other.dim() == 0 {
            return Ok(Self::zero(f, self.ambient));
        }
        let reduced: Vec<Vector<F>> = self.basis.iter().map(|v| other.reduce(v)).collect();
        let m = Matrix::from_columns(f, self.ambient, &reduced)?;
        let ker = kernel(&m);
        let vs: Vec<Vector<F>> = ker.basis.iter().map(|c| self.combine(c)).collect();
        Ok(Self::span(f, self.ambient, &vs))
    }

    /// Non-pivot columns: the standard complement used for quotients.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Coordinates of the class of `v` in the quotient K^n / self, with respect
    /// to the standard complement spanned by the free columns.
    pub fn quotient_coords(&self, v: &[F::Elem]) -> Vector<F> {
        let r = self.reduce(v);
        self.free_columns()
            .into_iter()
            .map(|c| r[c].clone())
            .collect()
    }

    /// Representative in the standard complement of a quotient class.
    pub fn quotient_lift(&self, q: &[F::Elem]) -> Vector<F> {
        let mut out = zero_vec(&self.field, self.ambient);
        for (x, c) in q.iter().zip(self.free_columns()) {
            out[c] = x.clone();
        }
        out
    }

    /// Image under a linear map given as a function on vectors.
    pub fn map(&self, target_ambient: usize, phi: impl Fn(&[F::Elem]) -> Vector<F>) -> Self {
        let vs: Vec<Vector<F>> = self.basis.iter().map(|v| phi(v)).collect();
        Self::span(&self.field, target_ambient, &vs)
    }
}

/// Right kernel {x : a x = 0} as a subspace of K^{cols(a)}.
pub fn kernel<F: Field>(a: &Matrix<F>) -> Subspace<F> {
    let f = a.field();
    let (rows, pivots) = rref(f, a);
    let n = a.cols();
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut vs = Vec::new();
    for fc in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vec(f, n);
        v[fc] = f.one();
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = f.neg(&row[fc]);
        }
        vs.push(v);
    }
    Subspace::span(f, n, &vs)
}

/// Result of solving `a x = b`.
#[derive(Clone, Debug)]
pub struct LinearSolution<F: Field> {
    pub particular: Option<Matrix<F>>,
    pub kernel: Subspace<F>,
}

/// Solve `a x = b`; `x` has shape cols(a) x cols(b). Free variables of the
/// particular solution are set to zero.
pub fn solve_linear<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<LinearSolution<F>> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "system with {} rows and right-hand side with {} rows",
            a.rows(),
            b.rows()
        )));
    }
    let f = a.field();
    let n = a.cols();
    let m = b.cols();
    let aug: Vec<Vector<F>> = (0..a.rows())
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.extend(b.row(r).iter().cloned());
            row
        })
        .collect();
    let (rows, pivots) = rref_rows(f, n + m, aug);
    let kern = kernel(a);
    if pivots.iter().any(|&c| c >= n) {
        return Ok(LinearSolution {
            particular: None,
            kernel: kern,
        });
    }
    let mut x = Matrix::zeros(f, n, m);
    for (row, &pc) in rows.iter().zip(&pivots) {
        for j in 0..m {
            x.set(pc, j, row[n + j].clone());
        }
    }
    Ok(LinearSolution {
        particular: Some(x),
        kernel: kern,
    })
}

/// Solve for a single vector `x` with `a x = b`.
pub fn solve_vector<F: Field>(a: &Matrix<F>, b: &[F::Elem]) -> Option<Vector<F>> {
    let rhs = Matrix::from_columns(a.field(), a.rows(), &[b.to_vec()]).ok()?;
    solve_linear(a, &rhs).ok()?.particular.map(|x| x.column(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::{PrimeField, Rationals};

    #[test]
    fn echelon_over_f2() {
        let f = PrimeField::new(2).unwrap();
        let m = Matrix::from_i64(&f, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        let (rows, pivots) = rref(&f, &m);
        assert_eq!(rows, vec![vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn zero_and_identity_echelon() {
        let q = Rationals;
        assert_eq!(Subspace::span(&q, 3, &[]).dim(), 0);
        let id = Matrix::identity(&q, 3);
        let (rows, _) = rref(&q, &id);
        assert_eq!(rows, id.row_vectors());
    }

    #[test]
    fn rational_solve_with_kernel() {
        let q = Rationals;
        let a = Matrix::from_i64(&q, &[vec![1, 2], vec![2, 4]]);
        let b = Matrix::from_i64(&q, &[vec![3], vec![6]]);
        let sol = solve_linear(&a, &b).unwrap();
        let x = sol.particular.unwrap();
        assert_eq!(a.mul(&x).unwrap(), b);
        assert_eq!(sol.kernel.dim(), 1);
        assert!(sol.kernel.contains(&[q.from_i64(-2), q.from_i64(1)]));
    }

    #[test]
    fn inconsistent_system() {
        let q = Rationals;
        let a = Matrix::from_i64(&q, &[vec![1, 2], vec![2, 4]]);
        let b = Matrix::from_i64(&q, &[vec![3], vec![7]]);
        let sol = solve_linear(&a, &b).unwrap();
        assert!(sol.particular.is_none());
        assert_eq!(sol.kernel.dim(), 1);
    }

    #[test]
    fn solve_rejects_row_mismatch() {
        let q = Rationals;
        let a = Matrix::identity(&q, 2);
        let b = Matrix::identity(&q, 3);
        assert!(solve_linear(&a, &b).is_err());
    }

    #[test]
    fn sum_and_intersection_over_f2() {
        let f = PrimeField::new(2).unwrap();
        let u = Subspace::span(&f, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let w = Subspace::span(&f, 4, &[vec![0, 1, 1, 0], vec![0, 0, 0, 1]]);
        assert_eq!(u.intersection(&w).unwrap().dim(), 0);
        assert!(u.sum(&w).unwrap().is_full());
    }

    #[test]
    fn quotient_roundtrip() {
        let q = Rationals;
        let u = Subspace::span(&q, 3, &[vec![q.from_i64(1), q.from_i64(1), q.from_i64(0)]]);
        let v = vec![q.from_i64(2), q.from_i64(5), q.from_i64(1)];
        let c = u.quotient_coords(&v);
        assert_eq!(c.len(), 2);
        let back = u.quotient_lift(&c);
        assert!(u.contains(&crate::exactla::matrix::sub_vec(&q, &v, &back)));
    }
}
