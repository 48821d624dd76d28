//! Structure-constant model of finite-dimensional unital associative algebras.

mod matrices;
mod ops;

pub use matrices::{
    block_triangular, diagonal_subalgebra, matrix_algebra, matrix_product_algebra,
    matrix_to_vector, vector_to_matrix,
};
pub use ops::{
    center, centralizer, conjugate_space, conjugate_subalgebra, induced_algebra, invert_element,
    is_closed, is_nilpotent_subspace, is_two_sided_ideal, multiply, power_subspace, product_space,
    quotient_algebra, solve_left_in, subalgebra_generated, BimoduleSubspace, Subalgebra,
};

use crate::error::{Error, Result};
use crate::exactla::matrix::{is_zero_vec, unit_vec, zero_vec};
use crate::exactla::{Field, Matrix, Vector};

/// Per-basis-element data for algebras built from a quiver or a poset: the
/// element lives in e_target · B · e_source and has the given path length
/// (0 exactly for the vertex idempotents).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathLabel {
    pub source: usize,
    pub target: usize,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathLabels {
    pub vertices: Vec<String>,
    pub basis: Vec<PathLabel>,
}

impl PathLabels {
    /// Basis index of the idempotent of each vertex.
    pub fn vertex_basis(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.vertices.len()];
        for (i, l) in self.basis.iter().enumerate() {
            if l.length == 0 {
                out[l.source] = i;
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    StructureConstants,
    Quiver(PathLabels),
    Incidence(PathLabels),
    MatrixAlgebra(usize),
    /// Direct product of full matrix algebras, blocks laid out consecutively.
    MatrixProduct(Vec<usize>),
}

impl Presentation {
    pub fn labels(&self) -> Option<&PathLabels> {
        match self {
            Presentation::Quiver(l) | Presentation::Incidence(l) => Some(l),
            _ => None,
        }
    }

    pub fn tag(&self) -> String {
        match self {
            Presentation::StructureConstants => "structure-constants".into(),
            Presentation::Quiver(_) => "quiver".into(),
            Presentation::Incidence(_) => "incidence".into(),
            Presentation::MatrixAlgebra(n) => format!("matrix({n})"),
            Presentation::MatrixProduct(v) => format!(
                "matrix-product({})",
                v.iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }
}

/// A finite-dimensional algebra given by structure constants
/// b_i · b_j = Σ_k c[i][j][k] b_k.
#[derive(Clone, Debug)]
pub struct Algebra<F: Field> {
    field: F,
    names: Vec<String>,
    unit: Vector<F>,
    table: Vec<Vec<(usize, F::Elem)>>,
    presentation: Presentation,
}

/// Violations found by [`Algebra::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub associativity: Vec<(usize, usize, usize)>,
    pub unit: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.associativity.is_empty() && self.unit.is_empty()
    }
}

impl<F: Field> Algebra<F> {
    /// Build from a product rule on basis indices. Products are stored sparsely.
    pub fn from_fn(
        field: &F,
        names: Vec<String>,
        unit: Vector<F>,
        product: impl Fn(usize, usize) -> Vector<F>,
    ) -> Result<Self> {
        let d = names.len();
        if unit.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "unit of length {} for dimension {}",
                unit.len(),
                d
            )));
        }
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let v = product(i, j);
                if v.len() != d {
                    return Err(Error::DimensionMismatch(format!(
                        "product b{i}*b{j} has length {}",
                        v.len()
                    )));
                }
                table.push(
                    v.into_iter()
                        .enumerate()
                        .filter(|(_, c)| !field.is_zero(c))
                        .collect(),
                );
            }
        }
        Ok(Algebra {
            field: field.clone(),
            names,
            unit,
            table,
            presentation: Presentation::StructureConstants,
        })
    }

    /// Build from sparse products `(i, j, [(k, c)])`; missing pairs multiply to 0.
    pub fn from_sparse(
        field: &F,
        names: Vec<String>,
        unit: Vector<F>,
        products: &[(usize, usize, Vec<(usize, F::Elem)>)],
    ) -> Result<Self> {
        let d = names.len();
        let mut dense = vec![zero_vec(field, d); d * d];
        for (i, j, terms) in products {
            if *i >= d || *j >= d {
                return Err(Error::DimensionMismatch(format!(
                    "product index ({i},{j}) out of range"
                )));
            }
            for (k, c) in terms {
                if *k >= d {
                    return Err(Error::DimensionMismatch(format!(
                        "coordinate {k} out of range"
                    )));
                }
                let slot = &mut dense[i * d + j][*k];
                *slot = field.add(slot, c);
            }
        }
        Self::from_fn(field, names, unit, |i, j| dense[i * d + j].clone())
    }

    pub fn with_presentation(mut self, p: Presentation) -> Self {
        self.presentation = p;
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn unit(&self) -> &Vector<F> {
        &self.unit
    }
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn zero(&self) -> Vector<F> {
        zero_vec(&self.field, self.dim())
    }

    pub fn basis_vector(&self, i: usize) -> Vector<F> {
        unit_vec(&self.field, self.dim(), i)
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn element(&self, terms: &[(&str, i64)]) -> Vector<F> {
        let mut v = self.zero();
        for (name, c) in terms {
            let i = self
                .basis_index(name)
                .unwrap_or_else(|| panic!("no basis element {name}"));
            v[i] = self.field.add(&v[i], &self.field.from_i64(*c));
        }
        v
    }

    /// Sparse product of two basis elements.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let d = self.dim();
        let mut out = zero_vec(f, d);
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, v) in &self.table[i * d + j] {
                    out[*k] = f.add(&out[*k], &f.mul(&c, v));
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[F::Elem], k: usize) -> Vector<F> {
        let mut acc = self.unit.clone();
        for _ in 0..k {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Matrix of y ↦ x·y (columns indexed by basis elements).
    pub fn left_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<Vector<F>> = (0..self.dim())
            .map(|j| self.mul(x, &self.basis_vector(j)))
            .collect();
        Matrix::from_columns(&self.field, self.dim(), &cols).expect("square")
    }

    /// Matrix of y ↦ y·x.
    pub fn right_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<Vector<F>> = (0..self.dim())
            .map(|j| self.mul(&self.basis_vector(j), x))
            .collect();
        Matrix::from_columns(&self.field, self.dim(), &cols).expect("square")
    }

    pub fn is_nilpotent_element(&self, x: &[F::Elem]) -> bool {
        let mut p = x.to_vec();
        for _ in 0..=self.dim() {
            if is_zero_vec(&self.field, &p) {
                return true;
            }
            p = self.mul(&p, x);
        }
        is_zero_vec(&self.field, &p)
    }

    pub fn is_idempotent(&self, x: &[F::Elem]) -> bool {
        self.mul(x, x) == x
    }

    /// Check associativity on all basis triples and the unit laws on the basis.
    pub fn validate(&self) -> ValidationReport {
        let d = self.dim();
        let mut report = ValidationReport::default();
        let basis: Vec<Vector<F>> = (0..d).map(|i| self.basis_vector(i)).collect();
        for i in 0..d {
            for j in 0..d {
                let ij = self.mul(&basis[i], &basis[j]);
                for k in 0..d {
                    let left = self.mul(&ij, &basis[k]);
                    let jk = self.mul(&basis[j], &basis[k]);
                    let right = self.mul(&basis[i], &jk);
                    if left != right {
                        report.associativity.push((i, j, k));
                    }
                }
            }
            if self.mul(&self.unit, &basis[i]) != basis[i]
                || self.mul(&basis[i], &self.unit) != basis[i]
            {
                report.unit.push(i);
            }
        }
        report
    }

    pub fn format_vector(&self, v: &[F::Elem]) -> String {
        let f = &self.field;
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(i, c)| {
                if f.is_one(c) {
                    self.names[i].clone()
                } else {
                    format!("{}*{}", f.format(c), self.names[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    /// Direct product, laid out block by block with names suffixed by the
    /// factor index.
    pub fn direct_product(factors: &[Algebra<F>]) -> Result<Self> {
        let field = factors
            .first()
            .ok_or_else(|| Error::Precondition("empty product".into()))?
            .field
            .clone();
        let offsets: Vec<usize> = factors
            .iter()
            .scan(0, |acc, a| {
                let o = *acc;
                *acc += a.dim();
                Some(o)
            })
            .collect();
        let d: usize = factors.iter().map(|a| a.dim()).sum();
        let mut names = Vec::with_capacity(d);
        let mut unit = zero_vec(&field, d);
        let mut owner = Vec::with_capacity(d);
        for (fi, a) in factors.iter().enumerate() {
            for (i, n) in a.names.iter().enumerate() {
                names.push(format!("{n}^{}", fi + 1));
                unit[offsets[fi] + i] = a.unit[i].clone();
                owner.push((fi, i));
            }
        }
        let sizes: Option<Vec<usize>> = factors
            .iter()
            .map(|a| match &a.presentation {
                Presentation::MatrixAlgebra(n) => Some(vec![*n]),
                Presentation::MatrixProduct(v) => Some(v.clone()),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(|v| v.concat());
        let alg = Self::from_fn(&field, names, unit, |i, j| {
            let (fi, a) = owner[i];
            let (fj, b) = owner[j];
            let mut out = zero_vec(&field, d);
            if fi == fj {
                for (k, c) in factors[fi].basis_product(a, b) {
                    out[offsets[fi] + k] = c.clone();
                }
            }
            out
        })?;
        Ok(match sizes {
            Some(s) => alg.with_presentation(Presentation::MatrixProduct(s)),
            None => alg,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rationals};

    #[test]
    fn matrix_units_multiply() {
        let q = Rationals;
        let m2 = matrix_algebra(2, &q);
        let e12 = m2.element(&[("e12", 1)]);
        let e21 = m2.element(&[("e21", 1)]);
        assert_eq!(m2.mul(&e12, &e21), m2.element(&[("e11", 1)]));
        assert_eq!(m2.mul(m2.unit(), &e12), e12);
        assert!(m2.validate().is_valid());
    }

    #[test]
    fn broken_table_reports_triple() {
        let f = PrimeField::new(2).unwrap();
        // x^2 = 1 + x with x*1 = x but 1*x = 0 violates the unit law; the
        // table is also not associative.
        let alg = Algebra::from_sparse(
            &f,
            vec!["1".into(), "x".into()],
            vec![1, 0],
            &[
                (0, 0, vec![(0, 1)]),
                (1, 0, vec![(1, 1)]),
                (1, 1, vec![(0, 1), (1, 1)]),
            ],
        )
        .unwrap();
        let r = alg.validate();
        assert!(!r.is_valid());
        assert_eq!(r.unit, vec![1]);
    }

    #[test]
    fn direct_product_of_matrix_algebras() {
        let q = Rationals;
        let k = matrix_algebra(1, &q);
        let m2 = matrix_algebra(2, &q);
        let p = Algebra::direct_product(&[k.clone(), k, m2]).unwrap();
        assert_eq!(p.dim(), 6);
        assert_eq!(
            p.presentation(),
            &Presentation::MatrixProduct(vec![1, 1, 2])
        );
        assert!(p.validate().is_valid());
    }
}
