use crate::exactla::field::Field;
use crate::exactla::matrix::{Matrix, Vector};
use crate::exactla::subspace::Subspace;

/// Quotient of K^l ⊗ K^r by the span of relation vectors. Tensor coordinate
/// (i, j) lives at index `i * dim_right + j`.
#[derive(Clone, Debug)]
pub struct TensorQuotient<F: Field> {
    pub dim_left: usize,
    pub dim_right: usize,
    pub quotient_dim: usize,
    /// quotient_dim x (dim_left * dim_right)
    pub projection: Matrix<F>,
    /// (dim_left * dim_right) x quotient_dim
    pub section: Matrix<F>,
    relations: Subspace<F>,
}

impl<F: Field> TensorQuotient<F> {
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.dim_right + j
    }

    pub fn relations(&self) -> &Subspace<F> {
        &self.relations
    }

    pub fn project(&self, v: &[F::Elem]) -> Vector<F> {
        self.relations.quotient_coords(v)
    }

    pub fn lift(&self, q: &[F::Elem]) -> Vector<F> {
        self.relations.quotient_lift(q)
    }

    /// Class of the pure tensor x ⊗ y.
    pub fn pure(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
        self.project(&outer(self.relations.field(), x, y))
    }
}

/// Coordinates of x ⊗ y in K^l ⊗ K^r.
pub fn outer<F: Field>(f: &F, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push(f.mul(a, b));
        }
    }
    out
}

pub fn tensor_quotient<F: Field>(
    field: &F,
    dim_left: usize,
    dim_right: usize,
    relations: &[Vector<F>],
) -> TensorQuotient<F> {
    let n = dim_left * dim_right;
    let rel = Subspace::span(field, n, relations);
    let free = rel.free_columns();
    let q = free.len();
    let mut projection = Matrix::zeros(field, q, n);
    for j in 0..n {
        let mut e = vec![field.zero(); n];
        e[j] = field.one();
        for (t, x) in rel.quotient_coords(&e).into_iter().enumerate() {
            projection.set(t, j, x);
        }
    }
    let mut section = Matrix::zeros(field, n, q);
    for (t, &c) in free.iter().enumerate() {
        section.set(c, t, field.one());
    }
    TensorQuotient {
        dim_left,
        dim_right,
        quotient_dim: q,
        projection,
        section,
        relations: rel,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::Rationals;

    #[test]
    fn no_relations_is_identity() {
        let q = Rationals;
        let t = tensor_quotient(&q, 2, 3, &[]);
        assert_eq!(t.quotient_dim, 6);
        assert_eq!(t.projection, Matrix::identity(&q, 6));
    }

    #[test]
    fn everything_killed() {
        let q = Rationals;
        let rels: Vec<_> = (0..4)
            .map(|i| crate::exactla::matrix::unit_vec(&q, 4, i))
            .collect();
        assert_eq!(tensor_quotient(&q, 2, 2, &rels).quotient_dim, 0);
    }

    #[test]
    fn projection_after_section_is_identity() {
        let q = Rationals;
        let r = vec![vec![
            q.from_i64(1),
            q.from_i64(-1),
            q.from_i64(0),
            q.from_i64(2),
        ]];
        let t = tensor_quotient(&q, 2, 2, &r);
        assert_eq!(t.quotient_dim, 3);
        let id = t.projection.mul(&t.section).unwrap();
        assert_eq!(id, Matrix::identity(&q, 3));
    }
}
