//! Split and separable extensions A ⊂ B, induction and restriction of
//! modules, and decomposition into indecomposables.

mod modules;

pub use modules::{
    check_summand_property, decompose_module, endomorphism_algebra, induce, is_summand, restrict,
    SummandDirection, SummandReport, SummandWitness, DEFAULT_SUMMAND_CAP,
};

use crate::algebra::{
    is_nilpotent_subspace, is_two_sided_ideal, product_space, quotient_algebra, Algebra,
    BimoduleSubspace, Subalgebra,
};
use crate::error::{Error, Result};
use crate::exactla::matrix::{axpy, unit_vec, zero_vec};
use crate::exactla::{
    solve_linear, tensor_quotient, Field, Matrix, Subspace, TensorQuotient, Vector,
};
use crate::structure::WedderburnMalcev;

/// X ⊗_A Y for a right A-module X and a left A-module Y, both given by the
/// matrices of a basis of A.
#[derive(Clone, Debug)]
pub struct BalancedTensor<F: Field> {
    pub tq: TensorQuotient<F>,
    pub left_dim: usize,
    pub right_dim: usize,
}

impl<F: Field> BalancedTensor<F> {
    pub fn new(
        f: &F,
        right_action: &[Matrix<F>],
        left_action: &[Matrix<F>],
        left_dim: usize,
        right_dim: usize,
    ) -> Self {
        let mut rels = Vec::new();
        for (ra, la) in right_action.iter().zip(left_action) {
            for i in 0..left_dim {
                let xa = ra.column(i);
                for j in 0..right_dim {
                    let ay = la.column(j);
                    let mut v = crate::exactla::tensor::outer(f, &xa, &unit_vec(f, right_dim, j));
                    let w = crate::exactla::tensor::outer(f, &unit_vec(f, left_dim, i), &ay);
                    axpy(f, &mut v, &f.neg(&f.one()), &w);
                    if v.iter().any(|c| !f.is_zero(c)) {
                        rels.push(v);
                    }
                }
            }
        }
        BalancedTensor {
            tq: tensor_quotient(f, left_dim, right_dim, &rels),
            left_dim,
            right_dim,
        }
    }

    pub fn dim(&self) -> usize {
        self.tq.quotient_dim
    }

    /// Matrix of (L ⊗ R) on the quotient; either side may be the identity.
    pub fn induced_map(
        &self,
        f: &F,
        left: Option<&Matrix<F>>,
        right: Option<&Matrix<F>>,
    ) -> Matrix<F> {
        let q = self.dim();
        let cols: Vec<Vector<F>> = (0..q)
            .map(|t| {
                let v = self.tq.section.column(t);
                let mut m = Matrix::from_flat(f, self.left_dim, self.right_dim, v);
                if let Some(l) = left {
                    m = l.mul(&m).expect("left factor size");
                }
                if let Some(r) = right {
                    m = m.mul(&r.transpose()).expect("right factor size");
                }
                self.tq.project(m.as_slice())
            })
            .collect();
        Matrix::from_columns(f, q, &cols).expect("square")
    }
}

/// Right and left multiplication matrices on B by a basis of A.
fn multiplications<F: Field>(
    b: &Algebra<F>,
    a: &Subalgebra<F>,
) -> (Vec<Matrix<F>>, Vec<Matrix<F>>) {
    (
        a.basis().iter().map(|x| b.right_matrix(x)).collect(),
        a.basis().iter().map(|x| b.left_matrix(x)).collect(),
    )
}

/// B ⊗_A B with the multiplication map u.
pub fn tensor_square<F: Field>(b: &Algebra<F>, a: &Subalgebra<F>) -> BalancedTensor<F> {
    let (r, l) = multiplications(b, a);
    BalancedTensor::new(b.field(), &r, &l, b.dim(), b.dim())
}

fn multiplication_map<F: Field>(b: &Algebra<F>, t: &BalancedTensor<F>, e: &[F::Elem]) -> Vector<F> {
    let f = b.field();
    let v = t.tq.lift(e);
    let d = b.dim();
    let mut out = zero_vec(f, d);
    for i in 0..d {
        for j in 0..d {
            let c = &v[i * d + j];
            if !f.is_zero(c) {
                let p = b.mul(&b.basis_vector(i), &b.basis_vector(j));
                axpy(f, &mut out, c, &p);
            }
        }
    }
    out
}

/// u(e) = 1 and x·e = e·x for every basis element x.
pub fn is_separability_idempotent<F: Field>(
    b: &Algebra<F>,
    t: &BalancedTensor<F>,
    e: &[F::Elem],
) -> bool {
    let f = b.field();
    if multiplication_map(b, t, e) != *b.unit() {
        return false;
    }
    (0..b.dim()).all(|i| {
        let x = b.basis_vector(i);
        let l = t.induced_map(f, Some(&b.left_matrix(&x)), None).apply(e);
        let r = t.induced_map(f, None, Some(&b.right_matrix(&x))).apply(e);
        l == r
    })
}

/// An A-bimodule complement of A in B, if one exists.
///
/// The complement spanned by the basis vectors of B on the free columns of
/// A is tried first; otherwise an A-bimodule projection B → A is solved for.
pub fn split_complement<F: Field>(
    b: &Algebra<F>,
    a: &Subalgebra<F>,
) -> Result<Option<BimoduleSubspace<F>>> {
    let f = b.field();
    let d = b.dim();
    let k = a.dim();
    let standard = Subspace::span(
        f,
        d,
        &a.space()
            .free_columns()
            .into_iter()
            .map(|c| unit_vec(f, d, c))
            .collect::<Vec<_>>(),
    );
    if let Ok(i) = BimoduleSubspace::new(b, a, standard) {
        return Ok(Some(i));
    }

    // Unknown P (k x d) with P·S = I, P·L_x = M^L_x·P, P·R_x = M^R_x·P.
    let idx = |t: usize, x: usize| t * d + x;
    let coords = |v: &Vector<F>| a.space().coordinates(v).expect("closed");
    let mut rows: Vec<Vector<F>> = Vec::new();
    let mut rhs: Vec<F::Elem> = Vec::new();
    for (s, alpha) in a.basis().iter().enumerate() {
        for t in 0..k {
            let mut row = zero_vec(f, k * d);
            for y in 0..d {
                row[idx(t, y)] = alpha[y].clone();
            }
            rows.push(row);
            rhs.push(if s == t { f.one() } else { f.zero() });
        }
    }
    for x in a.basis() {
        for (bm, left) in [(b.left_matrix(x), true), (b.right_matrix(x), false)] {
            let am: Vec<Vector<F>> = a
                .basis()
                .iter()
                .map(|al| coords(&if left { b.mul(x, al) } else { b.mul(al, x) }))
                .collect();
            for t in 0..k {
                for col in 0..d {
                    let mut row = zero_vec(f, k * d);
                    for y in 0..d {
                        let c = bm.get(y, col);
                        if !f.is_zero(c) {
                            row[idx(t, y)] = f.add(&row[idx(t, y)], c);
                        }
                    }
                    for (s, am_s) in am.iter().enumerate() {
                        let c = &am_s[t];
                        if !f.is_zero(c) {
                            row[idx(s, col)] = f.sub(&row[idx(s, col)], c);
                        }
                    }
                    rows.push(row);
                    rhs.push(f.zero());
                }
            }
        }
    }
    let m = Matrix::from_rows(f, k * d, &rows)?;
    let rhs_m = Matrix::from_columns(f, rows.len(), &[rhs])?;
    let sol = solve_linear(&m, &rhs_m)?;
    let Some(p) = sol.particular else {
        return Ok(None);
    };
    let p = Matrix::from_flat(f, k, d, p.column(0));
    let i = crate::exactla::kernel(&p);
    BimoduleSubspace::new(b, a, i).map(Some)
}

#[derive(Clone, Debug)]
pub struct ExtensionAnalysis<F: Field> {
    pub complement: Option<Subspace<F>>,
    pub split: bool,
    pub ideal: bool,
    pub nilpotent: bool,
    pub trivial: bool,
    pub separability_idempotent: Option<Vector<F>>,
}

impl<F: Field> ExtensionAnalysis<F> {
    pub fn separable(&self) -> bool {
        self.separability_idempotent.is_some()
    }
}

pub fn analyze_extension<F: Field>(
    b: &Algebra<F>,
    a: &Subalgebra<F>,
) -> Result<ExtensionAnalysis<F>> {
    let complement = split_complement(b, a)?.map(|i| i.space().clone());
    let (ideal, nilpotent, trivial) = match &complement {
        Some(i) => {
            let ideal = is_two_sided_ideal(b, i);
            let nilpotent = ideal && is_nilpotent_subspace(b, i);
            (
                ideal,
                nilpotent,
                nilpotent && product_space(b, i, i).is_zero(),
            )
        }
        None => (false, false, false),
    };
    Ok(ExtensionAnalysis {
        split: complement.is_some(),
        complement,
        ideal,
        nilpotent,
        trivial,
        separability_idempotent: separability_idempotent(b, a)?,
    })
}

/// Pass to B/H ⊃ A/H with H = A ∩ J(B), where a split-type maximal
/// subalgebra becomes a trivial extension. H must be an ideal of B.
pub fn split_type_quotient<F: Field>(
    b: &Algebra<F>,
    a: &Subalgebra<F>,
) -> Result<(Algebra<F>, Subalgebra<F>)> {
    let j = crate::structure::jacobson_radical(b)?;
    let h = a.space().intersection(&j)?;
    if !is_two_sided_ideal(b, &h) {
        return Err(Error::Precondition("A ∩ J(B) is not an ideal of B".into()));
    }
    let q = quotient_algebra(b, &h);
    let img: Vec<Vector<F>> = a.basis().iter().map(|v| h.quotient_coords(v)).collect();
    let sub = Subalgebra::new(&q, Subspace::span(b.field(), q.dim(), &img))?;
    Ok((q, sub))
}

/// Solve u(e) = 1, x·e = e·x in B ⊗_A B.
pub fn separability_idempotent<F: Field>(
    b: &Algebra<F>,
    a: &Subalgebra<F>,
) -> Result<Option<Vector<F>>> {
    let f = b.field();
    let t = tensor_square(b, a);
    let q = t.dim();
    let d = b.dim();
    let mut blocks: Vec<Matrix<F>> = Vec::new();
    let mut rhs: Vec<F::Elem> = Vec::new();
    let ucols: Vec<Vector<F>> = (0..q)
        .map(|s| multiplication_map(b, &t, &unit_vec(f, q, s)))
        .collect();
    blocks.push(Matrix::from_columns(f, d, &ucols)?);
    rhs.extend(b.unit().iter().cloned());
    for i in 0..d {
        let x = b.basis_vector(i);
        let l = t.induced_map(f, Some(&b.left_matrix(&x)), None);
        let r = t.induced_map(f, None, Some(&b.right_matrix(&x)));
        blocks.push(l.sub(&r));
        rhs.extend(std::iter::repeat_n(f.zero(), q));
    }
    let rows: Vec<Vector<F>> = blocks.iter().flat_map(|m| m.row_vectors()).collect();
    if q == 0 {
        return Ok(None);
    }
    let m = Matrix::from_rows(f, q, &rows)?;
    let sol = solve_linear(&m, &Matrix::from_columns(f, rows.len(), &[rhs])?)?;
    match sol.particular {
        Some(e) => {
            let e = e.column(0);
            if !is_separability_idempotent(b, &t, &e) {
                return Err(Error::VerificationFailed(
                    "separability idempotent failed substitution".into(),
                ));
            }
            Ok(Some(e))
        }
        None => Ok(None),
    }
}

/// Image in B ⊗_A B of Σ_blocks (1/n) Σ_{p,q} E_pq ⊗ E_qp built from the
/// lifted matrix units of a Wedderburn-Malcev complement.
pub fn separable_type_idempotent<F: Field>(
    b: &Algebra<F>,
    a: &Subalgebra<F>,
    wm: &WedderburnMalcev<F>,
) -> Result<Vector<F>> {
    let f = b.field();
    if !a.space().contains_subspace(&wm.report.radical) {
        return Err(Error::Precondition(
            "the subalgebra must contain J(B)".into(),
        ));
    }
    let p = f.characteristic();
    let t = tensor_square(b, a);
    let mut e = zero_vec(f, b.dim() * b.dim());
    for u in &wm.units {
        let n = u.len();
        if p != 0 && (n as u64).is_multiple_of(p) {
            return Err(Error::CharacteristicDividesBlock { p, n });
        }
        let inv_n = f.inv(&f.from_i64(n as i64)).expect("n is invertible");
        for pp in 0..n {
            for q in 0..n {
                let o = crate::exactla::tensor::outer(f, &u[pp][q], &u[q][pp]);
                axpy(f, &mut e, &inv_n, &o);
            }
        }
    }
    let e = t.tq.project(&e);
    if !is_separability_idempotent(b, &t, &e) {
        return Err(Error::VerificationFailed(
            "separable-type idempotent failed substitution".into(),
        ));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, matrix_product_algebra};
    use crate::exactla::{PrimeField, Rationals};
    use crate::maximal::{MaximalContext, MaximalFamily};
    use crate::presentations::{delete_arrows, path_algebra, PathAlgebraPresentation, Quiver};
    use crate::structure::wedderburn_malcev;

    #[test]
    fn whole_algebra_is_split_and_separable() {
        let q = Rationals;
        let m = matrix_algebra(2, &q);
        let full = Subalgebra::full(&m);
        let an = analyze_extension(&m, &full).unwrap();
        assert!(an.split && an.trivial);
        assert!(an.complement.unwrap().is_zero());
        let t = tensor_square(&m, &full);
        assert_eq!(t.dim(), 4);
        assert!(an.separability_idempotent.is_some());
        let wm = wedderburn_malcev(&m, 0).unwrap();
        let e = separable_type_idempotent(&m, &full, &wm).unwrap();
        assert!(is_separability_idempotent(&m, &t, &e));
    }

    #[test]
    fn deleting_a_leaf_is_trivial() {
        let q = Rationals;
        let del = delete_arrows(&Quiver::linear(3), &["3".to_string()], &q).unwrap();
        let an = analyze_extension(&del.ambient, &del.sub).unwrap();
        assert!(an.split && an.ideal && an.nilpotent && an.trivial);
        assert_eq!(an.complement.unwrap(), del.complement);
    }

    #[test]
    fn kronecker_maximal_subalgebras() {
        let q = Rationals;
        let b = path_algebra(
            &PathAlgebraPresentation::free(Quiver::kronecker()).unwrap(),
            &q,
        )
        .unwrap();
        let ctx = MaximalContext::new(&b, 0).unwrap();
        let fams = ctx.enumerate().unwrap();
        let merge = ctx.instantiate(&fams[0], None).unwrap();
        assert!(matches!(fams[0], MaximalFamily::DiagonalMerge { .. }));
        assert!(separability_idempotent(&b, &merge).unwrap().is_some());
        let e = separable_type_idempotent(&b, &merge, &ctx.wm).unwrap();
        assert!(is_separability_idempotent(
            &b,
            &tensor_square(&b, &merge),
            &e
        ));
        let split = ctx
            .instantiate(&fams[1], Some(&[q.one(), q.zero()]))
            .unwrap();
        let an = analyze_extension(&b, &split).unwrap();
        assert!(an.trivial);
    }

    #[test]
    fn characteristic_dividing_block() {
        let f2 = PrimeField::new(2).unwrap();
        let m = matrix_algebra(2, &f2);
        let wm = wedderburn_malcev(&m, 0).unwrap();
        assert!(matches!(
            separable_type_idempotent(&m, &Subalgebra::full(&m), &wm),
            Err(Error::CharacteristicDividesBlock { p: 2, n: 2 })
        ));
        let kk = matrix_product_algebra(&[1, 1], &f2);
        let diag = Subalgebra::new(&kk, Subspace::span(&f2, 2, &[kk.unit().clone()])).unwrap();
        assert!(separability_idempotent(&kk, &diag).unwrap().is_some());
    }
}
