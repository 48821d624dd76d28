use crate::error::{Error, Result};
use crate::exactla::field::Field;

pub type Vector<F> = Vec<<F as Field>::Elem>;

pub fn zero_vec<F: Field>(f: &F, n: usize) -> Vector<F> {
    vec![f.zero(); n]
}

pub fn unit_vec<F: Field>(f: &F, n: usize, i: usize) -> Vector<F> {
    let mut v = zero_vec(f, n);
    v[i] = f.one();
    v
}

pub fn is_zero_vec<F: Field>(f: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| f.is_zero(x))
}

pub fn add_vec<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn sub_vec<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn scale_vec<F: Field>(f: &F, c: &F::Elem, a: &[F::Elem]) -> Vector<F> {
    a.iter().map(|x| f.mul(c, x)).collect()
}

/// `acc += c * v`
pub fn axpy<F: Field>(f: &F, acc: &mut [F::Elem], c: &F::Elem, v: &[F::Elem]) {
    if f.is_zero(c) {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !f.is_zero(x) {
            *a = f.add(a, &f.mul(c, x));
        }
    }
}

/// Dense row-major matrix over a field.
#[derive(Clone, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> Eq for Matrix<F> {}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &F, cols: usize, rows: &[Vector<F>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in matrix with {} columns",
                    r.len(),
                    cols
                )));
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_columns(field: &F, rows: usize, columns: &[Vector<F>]) -> Result<Self> {
        Ok(Self::from_rows(field, rows, columns)?.transpose())
    }

    /// Build from small integers; convenient for fixtures.
    pub fn from_i64(field: &F, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vector<F>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, &rows).expect("ragged fixture")
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vector<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let row = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                axpy(f, dst, a, row);
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[F::Elem]) -> Vector<F> {
        assert_eq!(v.len(), self.cols, "vector length");
        let f = &self.field;
        let mut out = zero_vec(f, self.rows);
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = f.zero();
            for (a, x) in self.row(i).iter().zip(v) {
                if !f.is_zero(a) && !f.is_zero(x) {
                    acc = f.add(&acc, &f.mul(a, x));
                }
            }
            *o = acc;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: add_vec(f, &self.data, &other.data),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: sub_vec(f, &self.data, &other.data),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: scale_vec(&self.field, c, &self.data),
        }
    }

    /// Entries in row-major order, i.e. the coordinates of the matrix as a
    /// vector of length rows*cols.
    pub fn as_slice(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn from_flat(field: &F, rows: usize, cols: usize, data: Vector<F>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        crate::exactla::subspace::rref(&self.field, self).1.len()
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let sol =
            crate::exactla::subspace::solve_linear(self, &Self::identity(&self.field, n)).ok()?;
        if sol.kernel.dim() > 0 {
            return None;
        }
        sol.particular
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut m = Self::zeros(f, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                m.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    pub fn format_rows(&self) -> Vec<String> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|x| self.field.format(x))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::{PrimeField, Rationals};

    #[test]
    fn product_and_inverse() {
        let q = Rationals;
        let a = Matrix::from_i64(&q, &[vec![1, 1], vec![0, 1]]);
        let ai = a.inverse().unwrap();
        assert_eq!(ai, Matrix::from_i64(&q, &[vec![1, -1], vec![0, 1]]));
        assert_eq!(a.mul(&ai).unwrap(), Matrix::identity(&q, 2));
    }

    #[test]
    fn singular_has_no_inverse() {
        let f = PrimeField::new(2).unwrap();
        let a = Matrix::from_i64(&f, &[vec![1, 1], vec![1, 1]]);
        assert!(a.inverse().is_none());
        assert_eq!(a.rank(), 1);
    }
}
