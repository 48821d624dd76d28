//! Finite-dimensional left modules given by one action matrix per basis
//! element of the acting algebra.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::matrix::axpy;
use crate::exactla::{solve_linear, Field, Matrix, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module<F: Field> {
    field: F,
    dim: usize,
    action: Vec<Matrix<F>>,
}

impl<F: Field> Module<F> {
    /// Checks that the action is a unital algebra morphism.
    pub fn new(algebra: &Algebra<F>, dim: usize, action: Vec<Matrix<F>>) -> Result<Self> {
        let m = Self::new_unchecked(algebra.field(), dim, action);
        if m.action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for an algebra of dimension {}",
                m.action.len(),
                algebra.dim()
            )));
        }
        if m.action.iter().any(|a| a.rows() != dim || a.cols() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "action matrices must be {dim}x{dim}"
            )));
        }
        m.check(algebra)?;
        Ok(m)
    }

    pub fn new_unchecked(field: &F, dim: usize, action: Vec<Matrix<F>>) -> Self {
        Module {
            field: field.clone(),
            dim,
            action,
        }
    }

    pub fn check(&self, algebra: &Algebra<F>) -> Result<()> {
        let d = algebra.dim();
        if self.act(algebra.unit()) != Matrix::identity(&self.field, self.dim) {
            return Err(Error::VerificationFailed(
                "unit does not act as the identity".into(),
            ));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = self.action[i].mul(&self.action[j])?;
                let rhs =
                    self.act(&algebra.mul(&algebra.basis_vector(i), &algebra.basis_vector(j)));
                if lhs != rhs {
                    return Err(Error::VerificationFailed(format!(
                        "action is not multiplicative on ({}, {})",
                        algebra.names()[i],
                        algebra.names()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn action(&self) -> &[Matrix<F>] {
        &self.action
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn act(&self, x: &[F::Elem]) -> Matrix<F> {
        let f = &self.field;
        let mut data = vec![f.zero(); self.dim * self.dim];
        for (c, a) in x.iter().zip(&self.action) {
            axpy(f, &mut data, c, a.as_slice());
        }
        Matrix::from_flat(f, self.dim, self.dim, data)
    }

    /// The left regular module.
    pub fn regular(algebra: &Algebra<F>) -> Self {
        let action = (0..algebra.dim())
            .map(|i| algebra.left_matrix(&algebra.basis_vector(i)))
            .collect();
        Self::new_unchecked(algebra.field(), algebra.dim(), action)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Self::new_unchecked(&self.field, self.dim + other.dim, action)
    }

    /// Whether the column space of `basis` (dim x k) is stable under the action.
    pub fn is_submodule(&self, basis: &Subspace<F>) -> bool {
        self.action
            .iter()
            .all(|a| basis.basis().iter().all(|v| basis.contains(&a.apply(v))))
    }

    /// The submodule spanned by the given vectors, written in the given basis
    /// (which must span a submodule).
    pub fn submodule(&self, basis: &[Vector<F>]) -> Result<Self> {
        let f = &self.field;
        let u = Matrix::from_columns(f, self.dim, basis)?;
        let mut action = Vec::with_capacity(self.action.len());
        for a in &self.action {
            let image = a.mul(&u)?;
            let sol = solve_linear(&u, &image)?;
            let y = sol
                .particular
                .ok_or_else(|| Error::VerificationFailed("span is not a submodule".into()))?;
            action.push(y);
        }
        Ok(Self::new_unchecked(f, basis.len(), action))
    }

    /// Smallest submodule containing the given vectors.
    pub fn spin_up(&self, seeds: &[Vector<F>]) -> Subspace<F> {
        let mut s = Subspace::span(&self.field, self.dim, seeds);
        loop {
            let mut vs = s.basis().to_vec();
            for a in &self.action {
                for v in s.basis() {
                    vs.push(a.apply(v));
                }
            }
            let next = Subspace::span(&self.field, self.dim, &vs);
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// The same module written in a new basis (columns of `p`).
    pub fn change_basis(&self, p: &Matrix<F>) -> Result<Self> {
        let pi = p
            .inverse()
            .ok_or_else(|| Error::Precondition("change of basis is singular".into()))?;
        let action = self
            .action
            .iter()
            .map(|a| pi.mul(&a.mul(p)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new_unchecked(&self.field, self.dim, action))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix_algebra;
    use crate::exactla::Rationals;

    #[test]
    fn regular_module_is_valid() {
        let q = Rationals;
        let m2 = matrix_algebra(2, &q);
        let r = Module::regular(&m2);
        assert!(r.check(&m2).is_ok());
        let col = r.spin_up(&[m2.element(&[("e11", 1)])]);
        assert_eq!(col.dim(), 2);
        let sub = r.submodule(col.basis()).unwrap();
        assert!(sub.check(&m2).is_ok());
    }
}
