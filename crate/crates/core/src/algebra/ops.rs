use crate::algebra::{Algebra, Presentation};
use crate::error::{Error, Result};
use crate::exactla::matrix::zero_vec;
use crate::exactla::{kernel, solve_vector, Field, Matrix, Subspace, Vector};

/// A unital, multiplicatively closed subspace of an ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subalgebra<F: Field> {
    space: Subspace<F>,
}

impl<F: Field> Subalgebra<F> {
    pub fn new(parent: &Algebra<F>, space: Subspace<F>) -> Result<Self> {
        if space.ambient() != parent.dim() {
            return Err(Error::AmbientMismatch(space.ambient(), parent.dim()));
        }
        if !space.contains(parent.unit()) {
            return Err(Error::NotSubalgebra("unit is missing".into()));
        }
        if !is_closed(parent, &space) {
            return Err(Error::NotSubalgebra(
                "not closed under multiplication".into(),
            ));
        }
        Ok(Subalgebra { space })
    }

    /// The whole algebra as a subalgebra of itself.
    pub fn full(parent: &Algebra<F>) -> Self {
        Subalgebra {
            space: Subspace::full(parent.field(), parent.dim()),
        }
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
    pub fn basis(&self) -> &[Vector<F>] {
        self.space.basis()
    }
    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.space.contains(v)
    }
    pub fn into_space(self) -> Subspace<F> {
        self.space
    }
}

/// A subspace stable under left and right multiplication by a subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleSubspace<F: Field> {
    space: Subspace<F>,
}

impl<F: Field> BimoduleSubspace<F> {
    pub fn new(parent: &Algebra<F>, acting: &Subalgebra<F>, space: Subspace<F>) -> Result<Self> {
        for a in acting.basis() {
            for v in space.basis() {
                if !space.contains(&parent.mul(a, v)) || !space.contains(&parent.mul(v, a)) {
                    return Err(Error::VerificationFailed(
                        "subspace is not a sub-bimodule".into(),
                    ));
                }
            }
        }
        Ok(BimoduleSubspace { space })
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }
}

pub fn multiply<F: Field>(a: &Algebra<F>, x: &[F::Elem], y: &[F::Elem]) -> Result<Vector<F>> {
    if x.len() != a.dim() || y.len() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "operands of length {} and {} in dimension {}",
            x.len(),
            y.len(),
            a.dim()
        )));
    }
    Ok(a.mul(x, y))
}

pub fn is_closed<F: Field>(a: &Algebra<F>, s: &Subspace<F>) -> bool {
    let b = s.basis();
    b.iter().all(|x| b.iter().all(|y| s.contains(&a.mul(x, y))))
}

/// span{u·w : u ∈ U, w ∈ W}.
pub fn product_space<F: Field>(a: &Algebra<F>, u: &Subspace<F>, w: &Subspace<F>) -> Subspace<F> {
    let mut vs = Vec::with_capacity(u.dim() * w.dim());
    for x in u.basis() {
        for y in w.basis() {
            vs.push(a.mul(x, y));
        }
    }
    Subspace::span(a.field(), a.dim(), &vs)
}

/// S^k for k ≥ 1.
pub fn power_subspace<F: Field>(a: &Algebra<F>, s: &Subspace<F>, k: usize) -> Subspace<F> {
    let mut p = s.clone();
    for _ in 1..k {
        p = product_space(a, &p, s);
    }
    p
}

pub fn is_two_sided_ideal<F: Field>(a: &Algebra<F>, s: &Subspace<F>) -> bool {
    (0..a.dim()).all(|i| {
        let b = a.basis_vector(i);
        s.basis()
            .iter()
            .all(|v| s.contains(&a.mul(&b, v)) && s.contains(&a.mul(v, &b)))
    })
}

/// Whether S^k = 0 for some k (checked up to k = dim + 1).
pub fn is_nilpotent_subspace<F: Field>(a: &Algebra<F>, s: &Subspace<F>) -> bool {
    let mut p = s.clone();
    for _ in 0..=a.dim() {
        if p.is_zero() {
            return true;
        }
        let next = product_space(a, &p, s);
        if next == p {
            return false;
        }
        p = next;
    }
    p.is_zero()
}

/// Smallest unital subalgebra containing the seeds.
pub fn subalgebra_generated<F: Field>(a: &Algebra<F>, seeds: &[Vector<F>]) -> Subalgebra<F> {
    let mut vs = vec![a.unit().clone()];
    vs.extend(seeds.iter().cloned());
    let mut s = Subspace::span(a.field(), a.dim(), &vs);
    loop {
        let prod = product_space(a, &s, &s);
        let next = s.sum(&prod).expect("same ambient");
        if next == s {
            return Subalgebra { space: s };
        }
        s = next;
    }
}

/// {b : bx = xb for all x in s}.
pub fn centralizer<F: Field>(a: &Algebra<F>, s: &Subspace<F>) -> Subalgebra<F> {
    let f = a.field();
    let d = a.dim();
    let mut rows = Vec::new();
    for x in s.basis() {
        let comm = a.right_matrix(x).sub(&a.left_matrix(x));
        rows.extend(comm.row_vectors());
    }
    if rows.is_empty() {
        return Subalgebra::full(a);
    }
    let m = Matrix::from_rows(f, d, &rows).expect("consistent rows");
    Subalgebra { space: kernel(&m) }
}

pub fn center<F: Field>(a: &Algebra<F>) -> Subalgebra<F> {
    centralizer(a, &Subspace::full(a.field(), a.dim()))
}

pub fn invert_element<F: Field>(a: &Algebra<F>, x: &[F::Elem]) -> Option<Vector<F>> {
    let y = solve_vector(&a.left_matrix(x), a.unit())?;
    (a.mul(&y, x) == *a.unit()).then_some(y)
}

pub fn conjugate_subalgebra<F: Field>(
    a: &Algebra<F>,
    u: &[F::Elem],
    s: &Subalgebra<F>,
) -> Result<Subalgebra<F>> {
    let ui = invert_element(a, u).ok_or(Error::NotInvertible)?;
    Ok(Subalgebra {
        space: conjugate_space(a, u, &ui, s.space()),
    })
}

/// u S u^{-1} for a known inverse.
pub fn conjugate_space<F: Field>(
    a: &Algebra<F>,
    u: &[F::Elem],
    ui: &[F::Elem],
    s: &Subspace<F>,
) -> Subspace<F> {
    s.map(a.dim(), |x| a.mul(&a.mul(u, x), ui))
}

/// The subalgebra as an algebra in its own right, on its echelon basis.
pub fn induced_algebra<F: Field>(a: &Algebra<F>, s: &Subalgebra<F>) -> Algebra<F> {
    let sp = s.space();
    let basis = sp.basis();
    let names: Vec<String> = basis.iter().map(|v| a.format_vector(v)).collect();
    let unit = sp.coordinates(a.unit()).expect("unit in subalgebra");
    Algebra::from_fn(a.field(), names, unit, |i, j| {
        sp.coordinates(&a.mul(&basis[i], &basis[j]))
            .expect("closed")
    })
    .expect("well-formed induced algebra")
}

/// B / I on the standard complement of I (free columns of its echelon basis).
pub fn quotient_algebra<F: Field>(a: &Algebra<F>, ideal: &Subspace<F>) -> Algebra<F> {
    let free = ideal.free_columns();
    let names: Vec<String> = free.iter().map(|&c| a.names()[c].clone()).collect();
    let unit = ideal.quotient_coords(a.unit());
    let q = Algebra::from_fn(a.field(), names, unit, |i, j| {
        ideal.quotient_coords(&a.mul(&a.basis_vector(free[i]), &a.basis_vector(free[j])))
    })
    .expect("well-formed quotient");
    // Quotients of matrix products by zero keep their block structure.
    if ideal.is_zero() {
        q.with_presentation(a.presentation().clone())
    } else {
        q.with_presentation(Presentation::StructureConstants)
    }
}

/// Solve for y with x·y = target inside the span of `space`; used for
/// corner computations.
pub fn solve_left_in<F: Field>(
    a: &Algebra<F>,
    x: &[F::Elem],
    space: &Subspace<F>,
    target: &[F::Elem],
) -> Option<Vector<F>> {
    let f = a.field();
    if space.is_zero() {
        return crate::exactla::matrix::is_zero_vec(f, target).then(|| zero_vec(f, a.dim()));
    }
    let cols: Vec<Vector<F>> = space.basis().iter().map(|v| a.mul(x, v)).collect();
    let m = Matrix::from_columns(f, a.dim(), &cols).ok()?;
    let c = solve_vector(&m, target)?;
    Some(space.combine(&c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{block_triangular, matrix_algebra};
    use crate::exactla::{PrimeField, Rationals};

    #[test]
    fn generated_examples() {
        let q = Rationals;
        let m2 = matrix_algebra(2, &q);
        assert_eq!(subalgebra_generated(&m2, &[]).dim(), 1);
        let all =
            subalgebra_generated(&m2, &[m2.element(&[("e12", 1)]), m2.element(&[("e21", 1)])]);
        assert_eq!(all.dim(), 4);

        let f2 = PrimeField::new(2).unwrap();
        let m = matrix_algebra(2, &f2);
        // companion matrix of x^2 + x + 1
        let c = m.element(&[("e12", 1), ("e21", 1), ("e22", 1)]);
        let f4 = subalgebra_generated(&m, &[c]);
        assert_eq!(f4.dim(), 2);
        assert_eq!(centralizer(&m, f4.space()), f4);
    }

    #[test]
    fn centralizer_examples() {
        let q = Rationals;
        let m2 = matrix_algebra(2, &q);
        let unit_span = Subspace::span(&q, 4, &[m2.unit().clone()]);
        assert_eq!(centralizer(&m2, &unit_span).dim(), 4);
        assert_eq!(center(&m2).dim(), 1);
    }

    #[test]
    fn inverses() {
        let q = Rationals;
        let m2 = matrix_algebra(2, &q);
        assert_eq!(invert_element(&m2, m2.unit()), Some(m2.unit().clone()));
        assert!(invert_element(&m2, &m2.element(&[("e12", 1)])).is_none());
        let x = m2.element(&[("e11", 1), ("e12", 1), ("e22", 1)]);
        let y = m2.element(&[("e11", 1), ("e12", -1), ("e22", 1)]);
        assert_eq!(invert_element(&m2, &x), Some(y));
    }

    #[test]
    fn conjugating_upper_to_lower_triangular() {
        let q = Rationals;
        let m2 = matrix_algebra(2, &q);
        let upper = block_triangular(2, &[1, 1], &q).unwrap();
        let perm = m2.element(&[("e12", 1), ("e21", 1)]);
        let lower = conjugate_subalgebra(&m2, &perm, &upper).unwrap();
        assert!(lower.contains(&m2.element(&[("e21", 1)])));
        assert!(!lower.contains(&m2.element(&[("e12", 1)])));
        assert_eq!(conjugate_subalgebra(&m2, m2.unit(), &upper).unwrap(), upper);
        assert!(conjugate_subalgebra(&m2, &m2.element(&[("e12", 1)]), &upper).is_err());
    }
}
