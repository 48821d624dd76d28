use super::{separability_idempotent, split_complement, BalancedTensor};
use crate::algebra::{induced_algebra, Algebra, Subalgebra};
use crate::error::{Error, Result};
use crate::exactla::{kernel, Field, Matrix, Subspace, Vector};
use crate::module::Module;
use crate::structure::{jacobson_radical, wedderburn_malcev};

/// Default dimension cap for modules explored by the summand check.
pub const DEFAULT_SUMMAND_CAP: usize = 8;

/// B ⊗_A M with the left regular action of B. `m` is a module over the
/// induced algebra of `a` (its echelon basis).
pub fn induce<F: Field>(m: &Module<F>, a: &Subalgebra<F>, b: &Algebra<F>) -> Result<Module<F>> {
    if m.action().len() != a.dim() {
        return Err(Error::DimensionMismatch(format!(
            "module has {} action matrices, subalgebra has dimension {}",
            m.action().len(),
            a.dim()
        )));
    }
    let f = b.field();
    let right: Vec<Matrix<F>> = a.basis().iter().map(|x| b.right_matrix(x)).collect();
    let t = BalancedTensor::new(f, &right, m.action(), b.dim(), m.dim());
    let action = (0..b.dim())
        .map(|i| t.induced_map(f, Some(&b.left_matrix(&b.basis_vector(i))), None))
        .collect();
    Module::new(b, t.dim(), action)
}

/// The same space with the action of the echelon basis of A.
pub fn restrict<F: Field>(n: &Module<F>, a: &Subalgebra<F>) -> Module<F> {
    let action = a.basis().iter().map(|x| n.act(x)).collect();
    Module::new_unchecked(n.field(), n.dim(), action)
}

/// End(M) as an algebra on a basis of commuting matrices, with the basis
/// matrices themselves.
pub fn endomorphism_algebra<F: Field>(m: &Module<F>) -> Result<(Algebra<F>, Vec<Matrix<F>>)> {
    let (space, mats) = hom_space(m, m)?;
    let f = m.field();
    let n = m.dim();
    let unit = space
        .coordinates(Matrix::identity(f, n).as_slice())
        .ok_or_else(|| Error::VerificationFailed("identity is not an endomorphism".into()))?;
    let names = (0..mats.len()).map(|i| format!("phi{}", i + 1)).collect();
    let e = Algebra::from_fn(f, names, unit, |i, j| {
        let p = mats[i].mul(&mats[j]).expect("square");
        space
            .coordinates(p.as_slice())
            .expect("closed under composition")
    })?;
    Ok((e, mats))
}

/// {X : X·ρ_M(x) = ρ_N(x)·X}, as flattened dim N × dim M matrices.
fn hom_space<F: Field>(m: &Module<F>, n: &Module<F>) -> Result<(Subspace<F>, Vec<Matrix<F>>)> {
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    let unknowns = dn * dm;
    let mut rows: Vec<Vector<F>> = Vec::new();
    for (rm, rn) in m.action().iter().zip(n.action()) {
        for r in 0..dn {
            for c in 0..dm {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..dm {
                    let v = rm.get(k, c);
                    if !f.is_zero(v) {
                        row[r * dm + k] = f.add(&row[r * dm + k], v);
                    }
                }
                for k in 0..dn {
                    let v = rn.get(r, k);
                    if !f.is_zero(v) {
                        row[k * dm + c] = f.sub(&row[k * dm + c], v);
                    }
                }
                if row.iter().any(|x| !f.is_zero(x)) {
                    rows.push(row);
                }
            }
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(f, unknowns)
    } else {
        kernel(&Matrix::from_rows(f, unknowns, &rows)?)
    };
    let mats = space
        .basis()
        .iter()
        .map(|v| Matrix::from_flat(f, dn, dm, v.clone()))
        .collect();
    Ok((space, mats))
}

/// Whether the indecomposable `x` is isomorphic to a direct summand of `n`:
/// some composite g∘f with f: X → N and g: N → X is invertible.
pub fn is_summand<F: Field>(x: &Module<F>, n: &Module<F>) -> Result<bool> {
    if x.dim() == 0 {
        return Ok(true);
    }
    if x.dim() > n.dim() {
        return Ok(false);
    }
    let (_, fs) = hom_space(x, n)?;
    let (_, gs) = hom_space(n, x)?;
    for g in &gs {
        for h in &fs {
            if g.mul(h)?.rank() == x.dim() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn is_isomorphic<F: Field>(x: &Module<F>, y: &Module<F>) -> Result<bool> {
    Ok(x.dim() == y.dim() && is_summand(x, y)?)
}

/// Split M along a lifted complete system of primitive idempotents of
/// End(M). The summands, in order, are conjugate to M by an explicit change
/// of basis, which is checked.
pub fn decompose_module<F: Field>(
    m: &Module<F>,
    b: &Algebra<F>,
    seed: u64,
) -> Result<Vec<Module<F>>> {
    if m.dim() == 0 {
        return Ok(Vec::new());
    }
    let f = m.field();
    let (e, mats) = endomorphism_algebra(m)?;
    if e.dim() == 1 {
        return Ok(vec![m.clone()]);
    }
    let je = jacobson_radical(&e)?;
    if e.dim() - je.dim() == 1 {
        return Ok(vec![m.clone()]);
    }
    let wm = wedderburn_malcev(&e, seed)?;
    let to_matrix = |c: &Vector<F>| {
        let mut out = Matrix::zeros(f, m.dim(), m.dim());
        for (k, x) in c.iter().enumerate() {
            if !f.is_zero(x) {
                out = out.add(&mats[k].scale(x));
            }
        }
        out
    };
    let mut summands = Vec::new();
    let mut columns: Vec<Vector<F>> = Vec::new();
    for idem in wm.primitive_idempotents() {
        // e·End·e must be local.
        let corner = Subspace::span(
            f,
            e.dim(),
            &(0..e.dim())
                .map(|k| e.mul(&e.mul(&idem, &e.basis_vector(k)), &idem))
                .collect::<Vec<_>>(),
        );
        let corner_rad = Subspace::span(
            f,
            e.dim(),
            &je.basis()
                .iter()
                .map(|x| e.mul(&e.mul(&idem, x), &idem))
                .collect::<Vec<_>>(),
        );
        if corner.dim() - corner_rad.dim() != 1 {
            return Err(Error::VerificationFailed(
                "summand endomorphism ring is not local".into(),
            ));
        }
        let p = to_matrix(&idem);
        let image = Subspace::span(
            f,
            m.dim(),
            &(0..m.dim()).map(|c| p.column(c)).collect::<Vec<_>>(),
        );
        let basis = image.basis().to_vec();
        summands.push(m.submodule(&basis)?);
        columns.extend(basis);
    }
    let change = Matrix::from_columns(f, m.dim(), &columns)?;
    let conj = m.change_basis(&change)?;
    let sum = summands[1..]
        .iter()
        .fold(summands[0].clone(), |acc, s| acc.direct_sum(s));
    if conj.action() != sum.action() {
        return Err(Error::VerificationFailed(
            "summands do not reassemble the module".into(),
        ));
    }
    for s in &summands {
        s.check(b)?;
    }
    Ok(summands)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SummandDirection {
    /// Every indecomposable A-module is a summand of a restricted
    /// indecomposable B-module.
    SplitDown,
    /// Every indecomposable B-module is a summand of an induced
    /// indecomposable A-module.
    SeparableUp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandWitness {
    pub source_dim: usize,
    /// Dimension of the indecomposable partner, if one was found.
    pub partner_dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandReport {
    pub direction: SummandDirection,
    pub cap: usize,
    pub witnesses: Vec<SummandWitness>,
}

impl SummandReport {
    pub fn holds(&self) -> bool {
        self.witnesses.iter().all(|w| w.partner_dim.is_some())
    }
}

fn push_new<F: Field>(list: &mut Vec<Module<F>>, x: Module<F>) -> Result<()> {
    for y in list.iter() {
        if is_isomorphic(y, &x)? {
            return Ok(());
        }
    }
    list.push(x);
    Ok(())
}

/// Check the summand property over the indecomposables found in the regular
/// modules of A and B and their inductions and restrictions, up to `cap`.
pub fn check_summand_property<F: Field>(
    a: &Subalgebra<F>,
    b: &Algebra<F>,
    direction: SummandDirection,
    cap: usize,
    seed: u64,
) -> Result<SummandReport> {
    const REGULAR_CAP: usize = 24;
    if b.dim() > REGULAR_CAP {
        return Err(Error::CapExceeded(format!(
            "algebra dimension {} exceeds {REGULAR_CAP}",
            b.dim()
        )));
    }
    match direction {
        SummandDirection::SplitDown if split_complement(b, a)?.is_none() => {
            return Err(Error::Precondition(
                "B is not a split extension of A".into(),
            ))
        }
        SummandDirection::SeparableUp if separability_idempotent(b, a)?.is_none() => {
            return Err(Error::Precondition(
                "B is not a separable extension of A".into(),
            ))
        }
        _ => {}
    }
    let ind_a = induced_algebra(b, a);
    let mut a_mods: Vec<Module<F>> = Vec::new();
    for x in decompose_module(&Module::regular(&ind_a), &ind_a, seed)? {
        push_new(&mut a_mods, x)?;
    }
    let mut b_mods: Vec<Module<F>> = Vec::new();
    for y in decompose_module(&Module::regular(b), b, seed)? {
        push_new(&mut b_mods, y)?;
    }

    let mut witnesses = Vec::new();
    match direction {
        SummandDirection::SplitDown => {
            let base = b_mods.clone();
            for y in &base {
                for x in decompose_module(&restrict(y, a), &ind_a, seed)? {
                    if x.dim() <= cap {
                        push_new(&mut a_mods, x)?;
                    }
                }
            }
            for x in &a_mods {
                let mut partner = None;
                let induced = induce(x, a, b)?;
                for y in decompose_module(&induced, b, seed)? {
                    if is_summand(x, &restrict(&y, a))? {
                        partner = Some(y.dim());
                        break;
                    }
                }
                witnesses.push(SummandWitness {
                    source_dim: x.dim(),
                    partner_dim: partner,
                });
            }
        }
        SummandDirection::SeparableUp => {
            let base = a_mods.clone();
            for x in &base {
                let induced = induce(x, a, b)?;
                if induced.dim() <= cap {
                    for y in decompose_module(&induced, b, seed)? {
                        push_new(&mut b_mods, y)?;
                    }
                }
            }
            for y in &b_mods {
                let mut partner = None;
                for x in decompose_module(&restrict(y, a), &ind_a, seed)? {
                    if is_summand(y, &induce(&x, a, b)?)? {
                        partner = Some(x.dim());
                        break;
                    }
                }
                witnesses.push(SummandWitness {
                    source_dim: y.dim(),
                    partner_dim: partner,
                });
            }
        }
    }
    Ok(SummandReport {
        direction,
        cap,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix_product_algebra;
    use crate::exactla::{PrimeField, Rationals};
    use crate::presentations::{delete_arrows, path_algebra, PathAlgebraPresentation, Quiver};

    #[test]
    fn regular_module_of_product_splits() {
        let q = Rationals;
        let kk = matrix_product_algebra(&[1, 1], &q);
        let parts = decompose_module(&Module::regular(&kk), &kk, 0).unwrap();
        assert_eq!(
            parts.iter().map(|p| p.dim()).collect::<Vec<_>>(),
            vec![1, 1]
        );
    }

    #[test]
    fn induce_from_scalars() {
        let q = Rationals;
        let kk = matrix_product_algebra(&[1, 1], &q);
        let a = Subalgebra::new(&kk, Subspace::span(&q, 2, &[kk.unit().clone()])).unwrap();
        let triv = Module::regular(&induced_algebra(&kk, &a));
        let ind = induce(&triv, &a, &kk).unwrap();
        assert_eq!(ind.dim(), 2);
        let full = Subalgebra::full(&kk);
        let reg = Module::regular(&kk);
        let back = induce(&restrict(&reg, &full), &full, &kk).unwrap();
        assert_eq!(back.dim(), 2);
    }

    #[test]
    fn path_algebra_projectives() {
        let f3 = PrimeField::new(3).unwrap();
        let b = path_algebra(
            &PathAlgebraPresentation::free(Quiver::linear(3)).unwrap(),
            &f3,
        )
        .unwrap();
        let parts = decompose_module(&Module::regular(&b), &b, 0).unwrap();
        let mut dims: Vec<usize> = parts.iter().map(|p| p.dim()).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 2, 3]);
    }

    #[test]
    fn summand_properties_on_a3() {
        let q = Rationals;
        let del = delete_arrows(&Quiver::linear(3), &["1".to_string()], &q).unwrap();
        let r = check_summand_property(&del.sub, &del.ambient, SummandDirection::SplitDown, 8, 0)
            .unwrap();
        assert!(r.holds(), "{r:?}");
        let full = Subalgebra::full(&del.ambient);
        let r = check_summand_property(&full, &del.ambient, SummandDirection::SeparableUp, 8, 0)
            .unwrap();
        assert!(r.holds());
    }
}
