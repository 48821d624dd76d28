use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{analyze, StructureReport};
use crate::algebra::{invert_element, is_closed, solve_left_in, Algebra, Subalgebra};
use crate::error::{Error, Result};
use crate::exactla::matrix::{add_vec, axpy, is_zero_vec, scale_vec, sub_vec};
use crate::exactla::{all_vectors, Field, Subspace, Vector};

/// Witness candidates per corner before the Q search switches to sampling.
const WITNESS_SWEEP_CAP: usize = 15_625;
const WITNESS_SAMPLES: usize = 4096;

/// A complete system of orthogonal idempotents of an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentSystem<F: Field> {
    pub idempotents: Vec<Vector<F>>,
}

impl<F: Field> IdempotentSystem<F> {
    /// Checks idempotence, orthogonality and completeness.
    pub fn new(b: &Algebra<F>, idempotents: Vec<Vector<F>>) -> Result<Self> {
        if !is_complete_orthogonal(b, &idempotents) {
            return Err(Error::Precondition(
                "idempotents are not a complete orthogonal system".into(),
            ));
        }
        Ok(IdempotentSystem { idempotents })
    }

    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }
}

fn is_complete_orthogonal<F: Field>(b: &Algebra<F>, es: &[Vector<F>]) -> bool {
    let f = b.field();
    let mut sum = b.zero();
    for (i, e) in es.iter().enumerate() {
        axpy(f, &mut sum, &f.one(), e);
        for (k, g) in es.iter().enumerate() {
            let p = b.mul(e, g);
            let ok = if i == k { p == *e } else { is_zero_vec(f, &p) };
            if !ok {
                return false;
            }
        }
    }
    !es.is_empty() && sum == *b.unit()
}

/// Iterate x ← 3x² − 2x³ until idempotent.
fn lift_one<F: Field>(b: &Algebra<F>, x: &[F::Elem]) -> Result<Vector<F>> {
    let f = b.field();
    let mut x = x.to_vec();
    for _ in 0..=2 * b.dim() + 2 {
        let x2 = b.mul(&x, &x);
        if x2 == x {
            return Ok(x);
        }
        let x3 = b.mul(&x2, &x);
        x = sub_vec(
            f,
            &scale_vec(f, &f.from_i64(3), &x2),
            &scale_vec(f, &f.from_i64(2), &x3),
        );
    }
    Err(Error::VerificationFailed(
        "idempotent lifting did not converge".into(),
    ))
}

/// Lift a complete orthogonal system of B/J (quotient coordinates of
/// `report`) to one of B.
pub fn lift_idempotents<F: Field>(
    b: &Algebra<F>,
    report: &StructureReport<F>,
    bar: &[Vector<F>],
) -> Result<IdempotentSystem<F>> {
    let f = b.field();
    if !is_complete_orthogonal(&report.quotient, bar) {
        return Err(Error::Precondition(
            "quotient idempotents are not a complete orthogonal system".into(),
        ));
    }
    let mut out = Vec::with_capacity(bar.len());
    let mut rest = b.unit().clone();
    for (k, e) in bar.iter().enumerate() {
        if k + 1 == bar.len() {
            out.push(rest.clone());
            break;
        }
        let x = b.mul(&b.mul(&rest, &report.lift(e)), &rest);
        let lifted = lift_one(b, &x)?;
        rest = sub_vec(f, &rest, &lifted);
        out.push(lifted);
    }
    for (e, eb) in out.iter().zip(bar) {
        if report.project(e) != *eb {
            return Err(Error::VerificationFailed(
                "lifted idempotent does not reduce correctly".into(),
            ));
        }
    }
    IdempotentSystem::new(b, out)
        .map_err(|_| Error::VerificationFailed("lifted system is not orthogonal".into()))
}

/// A Wedderburn-Malcev complement together with lifted matrix units.
#[derive(Clone, Debug)]
pub struct WedderburnMalcev<F: Field> {
    pub report: StructureReport<F>,
    pub complement: Subalgebra<F>,
    /// `units[i][p][q]` is the lift of e^i_pq.
    pub units: Vec<Vec<Vec<Vector<F>>>>,
}

impl<F: Field> WedderburnMalcev<F> {
    /// Lifted primitive idempotents e^i_pp, block by block.
    pub fn primitive_idempotents(&self) -> Vec<Vector<F>> {
        self.units
            .iter()
            .flat_map(|u| (0..u.len()).map(move |p| u[p][p].clone()))
            .collect()
    }

    /// Lifted central idempotents of the blocks.
    pub fn block_idempotents(&self, field: &F, dim: usize) -> Vec<Vector<F>> {
        self.units
            .iter()
            .map(|u| {
                let mut s = crate::exactla::matrix::zero_vec(field, dim);
                for (p, row) in u.iter().enumerate() {
                    axpy(field, &mut s, &field.one(), &row[p]);
                }
                s
            })
            .collect()
    }
}

pub fn wedderburn_malcev<F: Field>(b: &Algebra<F>, seed: u64) -> Result<WedderburnMalcev<F>> {
    let report = analyze(b, seed)?;
    wedderburn_malcev_from(b, report)
}

pub fn wedderburn_malcev_complement<F: Field>(b: &Algebra<F>, seed: u64) -> Result<Subalgebra<F>> {
    Ok(wedderburn_malcev(b, seed)?.complement)
}

pub(crate) fn wedderburn_malcev_from<F: Field>(
    b: &Algebra<F>,
    report: StructureReport<F>,
) -> Result<WedderburnMalcev<F>> {
    let f = b.field();
    let diag = lift_idempotents(b, &report, &report.primitive_idempotents())?.idempotents;
    let mut units = Vec::with_capacity(report.blocks.len());
    let mut offset = 0;
    for bl in &report.blocks {
        let n = bl.n;
        let fs = &diag[offset..offset + n];
        offset += n;
        let f0 = &fs[0];
        let mut row0 = vec![f0.clone()];
        let mut col0 = vec![f0.clone()];
        for q in 1..n {
            let x = b.mul(&b.mul(f0, &report.lift(&bl.units[0][q])), &fs[q]);
            let y = b.mul(&b.mul(&fs[q], &report.lift(&bl.units[q][0])), f0);
            // w = xy is f0 plus a radical element; invert it in f0·B·f0.
            let w = b.mul(&x, &y);
            let d = sub_vec(f, f0, &w);
            let mut winv = f0.clone();
            let mut power = f0.clone();
            for _ in 0..b.dim() {
                power = b.mul(&power, &d);
                if is_zero_vec(f, &power) {
                    break;
                }
                winv = add_vec(f, &winv, &power);
            }
            row0.push(x);
            col0.push(b.mul(&y, &winv));
        }
        let block_units: Vec<Vec<Vector<F>>> = (0..n)
            .map(|p| (0..n).map(|q| b.mul(&col0[p], &row0[q])).collect())
            .collect();
        units.push(block_units);
    }

    let all: Vec<Vector<F>> = units.iter().flatten().flatten().cloned().collect();
    let space = Subspace::span(f, b.dim(), &all);
    let j = &report.radical;
    if space.dim() != all.len()
        || !space.intersection(j)?.is_zero()
        || !space.sum(j)?.is_full()
        || !is_closed(b, &space)
    {
        return Err(Error::VerificationFailed(
            "lifted matrix units do not form a complement".into(),
        ));
    }
    let complement = Subalgebra::new(b, space)
        .map_err(|e| Error::VerificationFailed(format!("complement is not a subalgebra: {e}")))?;
    Ok(WedderburnMalcev {
        report,
        complement,
        units,
    })
}

fn corner_space<F: Field>(b: &Algebra<F>, left: &[F::Elem], right: &[F::Elem]) -> Subspace<F> {
    let vs: Vec<Vector<F>> = (0..b.dim())
        .map(|k| b.mul(&b.mul(left, &b.basis_vector(k)), right))
        .collect();
    Subspace::span(b.field(), b.dim(), &vs)
}

fn coefficient_vectors<F: Field>(f: &F, k: usize, seed: u64) -> Vec<Vector<F>> {
    if f.order().is_some() {
        return all_vectors(f, k).unwrap_or_default();
    }
    let range = -2i64..=2;
    if 5usize
        .checked_pow(k as u32)
        .is_some_and(|c| c <= WITNESS_SWEEP_CAP)
    {
        let mut vs: Vec<Vec<i64>> = (0..k)
            .map(|_| range.clone())
            .multi_cartesian_product()
            .collect();
        if k == 0 {
            vs = vec![Vec::new()];
        }
        // Small coefficients first, positive before negative.
        vs.sort_by_key(|v| {
            let size: u64 = v.iter().map(|c| c.unsigned_abs()).sum();
            (
                size,
                v.iter()
                    .map(|&c| (c.unsigned_abs(), c < 0))
                    .collect::<Vec<_>>(),
            )
        });
        return vs
            .into_iter()
            .map(|v| v.into_iter().map(|c| f.from_i64(c)).collect())
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..WITNESS_SAMPLES)
        .map(|_| {
            (0..k)
                .map(|_| f.from_i64(rng.gen_range(range.clone())))
                .collect()
        })
        .collect()
}

/// An invertible a with f_i = a e_i a^{-1} for all i, built from elements
/// a_i ∈ f_i B e_i with inverses in e_i B f_i.
pub fn conjugating_unit<F: Field>(
    b: &Algebra<F>,
    e_sys: &IdempotentSystem<F>,
    f_sys: &IdempotentSystem<F>,
    seed: u64,
) -> Option<Vector<F>> {
    let f = b.field();
    if e_sys.len() != f_sys.len() {
        return None;
    }
    let mut a = b.zero();
    for (e, g) in e_sys.idempotents.iter().zip(&f_sys.idempotents) {
        let forward = corner_space(b, g, e);
        let backward = corner_space(b, e, g);
        let accept = |x: &Vector<F>| -> bool {
            solve_left_in(b, x, &backward, g).is_some_and(|y| b.mul(&y, x) == *e)
        };
        let natural = b.mul(g, e);
        let found = if accept(&natural) {
            Some(natural)
        } else {
            coefficient_vectors(f, forward.dim(), seed)
                .into_iter()
                .map(|c| forward.combine(&c))
                .find(|x| !is_zero_vec(f, x) && accept(x))
        };
        a = add_vec(f, &a, &found?);
    }
    let ai = invert_element(b, &a)?;
    let ok = e_sys
        .idempotents
        .iter()
        .zip(&f_sys.idempotents)
        .all(|(e, g)| b.mul(&b.mul(&a, e), &ai) == *g);
    ok.then_some(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{block_triangular, induced_algebra, matrix_algebra};
    use crate::exactla::{PrimeField, Rationals};
    use crate::structure::jacobson_radical;

    #[test]
    fn triangular_complement_is_diagonal() {
        let q = Rationals;
        let m2 = matrix_algebra(2, &q);
        let t = induced_algebra(&m2, &block_triangular(2, &[1, 1], &q).unwrap());
        let wm = wedderburn_malcev(&t, 0).unwrap();
        assert_eq!(wm.complement.dim(), 2);
        let j = jacobson_radical(&t).unwrap();
        assert!(wm.complement.space().intersection(&j).unwrap().is_zero());
    }

    #[test]
    fn permutation_conjugates_diagonal_units() {
        let q = Rationals;
        let m2 = matrix_algebra(2, &q);
        let e11 = m2.element(&[("e11", 1)]);
        let e22 = m2.element(&[("e22", 1)]);
        let e = IdempotentSystem::new(&m2, vec![e11.clone(), e22.clone()]).unwrap();
        let g = IdempotentSystem::new(&m2, vec![e22, e11]).unwrap();
        assert_eq!(conjugating_unit(&m2, &e, &e, 0), Some(m2.unit().clone()));
        let a = conjugating_unit(&m2, &e, &g, 0).unwrap();
        assert_eq!(a, m2.element(&[("e12", 1), ("e21", 1)]));
    }

    #[test]
    fn rejects_incomplete_systems() {
        let f2 = PrimeField::new(2).unwrap();
        let m2 = matrix_algebra(2, &f2);
        assert!(IdempotentSystem::new(&m2, vec![m2.element(&[("e11", 1)])]).is_err());
    }
}
