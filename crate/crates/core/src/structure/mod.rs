//! Radical, semisimple quotient, blocks and idempotent lifting.

mod lifting;

pub use lifting::{
    conjugating_unit, lift_idempotents, wedderburn_malcev, wedderburn_malcev_complement,
    IdempotentSystem, WedderburnMalcev,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    center, is_nilpotent_subspace, is_two_sided_ideal, product_space, quotient_algebra, Algebra,
    Presentation,
};
use crate::error::{Error, Result};
use crate::exactla::matrix::{axpy, sub_vec};
use crate::exactla::{all_vectors, kernel, Field, Matrix, Subspace, Vector};
use crate::module::Module;
use crate::poly::primary_idempotent;
use crate::presentations::radical_of_labels;

/// Largest number of trace-kernel elements the finite-field radical sweep
/// is allowed to visit.
const RADICAL_SWEEP_CAP: u64 = 200_000;

/// Random probes tried after the deterministic candidates when splitting.
const RANDOM_PROBES: usize = 64;

/// One simple block M_n(K) of B/J, with matrix units in quotient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block<F: Field> {
    pub n: usize,
    pub central_idempotent: Vector<F>,
    /// `units[p][q]` is the matrix unit e_pq.
    pub units: Vec<Vec<Vector<F>>>,
}

#[derive(Clone, Debug)]
pub struct StructureReport<F: Field> {
    pub radical: Subspace<F>,
    /// B/J on the standard complement of the radical.
    pub quotient: Algebra<F>,
    pub blocks: Vec<Block<F>>,
    pub schur: bool,
}

impl<F: Field> StructureReport<F> {
    pub fn block_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.n).collect()
    }

    pub fn central_idempotents(&self) -> Vec<Vector<F>> {
        self.blocks
            .iter()
            .map(|b| b.central_idempotent.clone())
            .collect()
    }

    /// The primitive idempotents e^i_pp of all blocks, block by block.
    pub fn primitive_idempotents(&self) -> Vec<Vector<F>> {
        self.blocks
            .iter()
            .flat_map(|b| (0..b.n).map(move |p| b.units[p][p].clone()))
            .collect()
    }

    /// Lift a quotient element to B through the standard complement.
    pub fn lift(&self, q: &[F::Elem]) -> Vector<F> {
        self.radical.quotient_lift(q)
    }

    pub fn project(&self, x: &[F::Elem]) -> Vector<F> {
        self.radical.quotient_coords(x)
    }
}

/// Radical and block decomposition in one call.
pub fn analyze<F: Field>(b: &Algebra<F>, seed: u64) -> Result<StructureReport<F>> {
    let j = jacobson_radical(b)?;
    semisimple_blocks(b, &j, seed)
}

/// J(B). Presented algebras use their arrow ideal, matrix algebras are
/// semisimple, other algebras over Q use the trace form; over F_p the trace
/// kernel is refined by an exhaustive nilpotency sweep.
pub fn jacobson_radical<F: Field>(b: &Algebra<F>) -> Result<Subspace<F>> {
    let f = b.field();
    let d = b.dim();
    let j = match b.presentation() {
        Presentation::Quiver(l) | Presentation::Incidence(l) => radical_of_labels(f, l),
        Presentation::MatrixAlgebra(_) | Presentation::MatrixProduct(_) => Subspace::zero(f, d),
        Presentation::StructureConstants => {
            let t = trace_form_radical(b);
            if f.characteristic() == 0
                || (is_two_sided_ideal(b, &t) && is_nilpotent_subspace(b, &t))
            {
                t
            } else {
                nilpotency_sweep(b, &t)?
            }
        }
    };
    if !is_two_sided_ideal(b, &j) || !is_nilpotent_subspace(b, &j) {
        return Err(Error::VerificationFailed(
            "computed radical is not a nilpotent two-sided ideal".into(),
        ));
    }
    Ok(j)
}

/// {x : tr(L_x L_y) = 0 for all y}.
pub fn trace_form_radical<F: Field>(b: &Algebra<F>) -> Subspace<F> {
    let f = b.field();
    let d = b.dim();
    let traces: Vec<F::Elem> = (0..d)
        .map(|k| {
            let l = b.left_matrix(&b.basis_vector(k));
            (0..d).fold(f.zero(), |acc, i| f.add(&acc, l.get(i, i)))
        })
        .collect();
    let mut g = Matrix::zeros(f, d, d);
    for i in 0..d {
        for j in 0..d {
            let v = b
                .basis_product(i, j)
                .iter()
                .fold(f.zero(), |acc, (k, c)| f.add(&acc, &f.mul(c, &traces[*k])));
            g.set(i, j, v);
        }
    }
    kernel(&g)
}

/// Largest nilpotent ideal inside `t` over a finite field: x is radical iff
/// the ideal BxB is nilpotent.
fn nilpotency_sweep<F: Field>(b: &Algebra<F>, t: &Subspace<F>) -> Result<Subspace<F>> {
    let f = b.field();
    let q = f.order().ok_or_else(|| {
        Error::UnsupportedField("trace form is degenerate in characteristic 0".into())
    })?;
    if (t.dim() as f64) * (q as f64).log2() > (RADICAL_SWEEP_CAP as f64).log2() {
        return Err(Error::UnsupportedField(format!(
            "degenerate trace form with a {}-dimensional kernel is too large to sweep",
            t.dim()
        )));
    }
    let full = Subspace::full(f, b.dim());
    let mut n = Subspace::zero(f, b.dim());
    for c in all_vectors(f, t.dim())? {
        let x = t.combine(&c);
        if n.contains(&x) {
            continue;
        }
        let ideal = product_space(
            b,
            &product_space(b, &full, &Subspace::span(f, b.dim(), &[x])),
            &full,
        );
        let cand = n.sum(&ideal)?;
        if is_nilpotent_subspace(b, &cand) {
            n = cand;
        }
    }
    Ok(n)
}

fn random_element<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> F::Elem {
    match f.order() {
        Some(q) => f.from_i64(rng.gen_range(0..q as i64)),
        None => f.from_i64(rng.gen_range(-3..=3)),
    }
}

/// Elements of `space` to try when looking for a splitting idempotent:
/// basis, pairwise products, then seeded random combinations.
fn probes<F: Field>(s: &Algebra<F>, space: &Subspace<F>, seed: u64) -> Vec<Vector<F>> {
    let basis = space.basis();
    let mut out: Vec<Vector<F>> = basis.to_vec();
    for x in basis {
        for y in basis {
            out.push(s.mul(x, y));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_PROBES {
        let c: Vec<F::Elem> = (0..space.dim())
            .map(|_| random_element(s.field(), &mut rng))
            .collect();
        out.push(space.combine(&c));
    }
    out
}

/// A proper nonzero idempotent in the corner `space` (identity `one`).
fn find_split<F: Field>(
    s: &Algebra<F>,
    space: &Subspace<F>,
    one: &[F::Elem],
    seed: u64,
) -> Option<Vector<F>> {
    let f = s.field();
    for x in probes(s, space, seed) {
        if let Some(e) = primary_idempotent(s, &x, one) {
            if !crate::exactla::matrix::is_zero_vec(f, &e) && e != one {
                return Some(e);
            }
        }
    }
    None
}

fn corner<F: Field>(s: &Algebra<F>, e: &[F::Elem]) -> Subspace<F> {
    let vs: Vec<Vector<F>> = (0..s.dim())
        .map(|k| s.mul(&s.mul(e, &s.basis_vector(k)), e))
        .collect();
    Subspace::span(s.field(), s.dim(), &vs)
}

/// Decompose B/J into matrix blocks with explicit matrix units. Blocks are
/// sorted by size.
pub fn semisimple_blocks<F: Field>(
    b: &Algebra<F>,
    j: &Subspace<F>,
    seed: u64,
) -> Result<StructureReport<F>> {
    let s = quotient_algebra(b, j);
    let f = s.field().clone();
    let z = center(&s);

    let mut central = Vec::new();
    let mut work = vec![s.unit().clone()];
    while let Some(e) = work.pop() {
        let ze = z.space().map(s.dim(), |v| s.mul(&e, v));
        if ze.dim() == 1 {
            central.push(e);
            continue;
        }
        let eps = find_split(&s, &ze, &e, seed).ok_or_else(|| {
            Error::NotSplit(
                "the center of the semisimple quotient does not split over the base field".into(),
            )
        })?;
        let rest = sub_vec(&f, &e, &eps);
        work.push(rest);
        work.push(eps);
    }

    let mut blocks = Vec::with_capacity(central.len());
    for e in central {
        blocks.push(matrix_block(&s, &e, seed)?);
    }
    blocks.sort_by_key(|bl| bl.n);
    Ok(StructureReport {
        radical: j.clone(),
        quotient: s,
        blocks,
        schur: true,
    })
}

fn matrix_block<F: Field>(s: &Algebra<F>, e: &[F::Elem], seed: u64) -> Result<Block<F>> {
    let f = s.field();
    let block = Subspace::span(
        f,
        s.dim(),
        &(0..s.dim())
            .map(|k| s.mul(e, &s.basis_vector(k)))
            .collect::<Vec<_>>(),
    );
    let d = block.dim();
    let n = (1..=d).find(|n| n * n >= d).unwrap_or(0);
    if n * n != d {
        return Err(Error::NotSplit(format!(
            "simple block of dimension {d} is not a full matrix algebra"
        )));
    }

    let mut idem = e.to_vec();
    loop {
        let c = corner(s, &idem);
        if c.dim() == 1 {
            break;
        }
        let eps = find_split(s, &c, &idem, seed).ok_or_else(|| {
            Error::NotSplit("a simple block is not split over the base field".into())
        })?;
        let other = sub_vec(f, &idem, &eps);
        idem = if corner(s, &eps).dim() <= corner(s, &other).dim() {
            eps
        } else {
            other
        };
    }

    let v = Subspace::span(
        f,
        s.dim(),
        &(0..s.dim())
            .map(|k| s.mul(&s.basis_vector(k), &idem))
            .collect::<Vec<_>>(),
    );
    if v.dim() != n {
        return Err(Error::NotSplit(
            "minimal left ideal has the wrong dimension".into(),
        ));
    }
    // Columns: vec(ρ(u_k)) for the block basis u_k, with ρ the action on V.
    let mut cols = Vec::with_capacity(d);
    for u in block.basis() {
        let mut col = Vec::with_capacity(d);
        for p in 0..n {
            for q in 0..n {
                let image = v.coordinates(&s.mul(u, &v.basis()[q])).expect("left ideal");
                col.push(image[p].clone());
            }
        }
        cols.push(col);
    }
    let rho = Matrix::from_columns(f, d, &cols)?;
    let rho_inv = rho
        .inverse()
        .ok_or_else(|| Error::VerificationFailed("block representation is not faithful".into()))?;
    let units: Vec<Vec<Vector<F>>> = (0..n)
        .map(|p| {
            (0..n)
                .map(|q| block.combine(&rho_inv.column(p * n + q)))
                .collect()
        })
        .collect();

    let zero = s.zero();
    let mut sum = s.zero();
    for p in 0..n {
        axpy(f, &mut sum, &f.one(), &units[p][p]);
        for q in 0..n {
            for r in 0..n {
                for t in 0..n {
                    let expect = if q == r { &units[p][t] } else { &zero };
                    if s.mul(&units[p][q], &units[r][t]) != *expect {
                        return Err(Error::VerificationFailed(
                            "matrix unit relations fail".into(),
                        ));
                    }
                }
            }
        }
    }
    if sum != e {
        return Err(Error::VerificationFailed(
            "matrix units do not sum to the block identity".into(),
        ));
    }
    Ok(Block {
        n,
        central_idempotent: e.to_vec(),
        units,
    })
}

/// One simple left B-module per block: column vectors of M_n acted on
/// through the block projection.
pub fn simple_modules<F: Field>(
    b: &Algebra<F>,
    report: &StructureReport<F>,
) -> Result<Vec<Module<F>>> {
    let s = &report.quotient;
    let f = b.field();
    let mut out = Vec::new();
    for bl in &report.blocks {
        let n = bl.n;
        let flat: Vec<Vector<F>> = bl.units.iter().flatten().cloned().collect();
        let basis = Matrix::from_columns(f, s.dim(), &flat)?;
        let mut action = Vec::with_capacity(b.dim());
        for k in 0..b.dim() {
            let x = s.mul(&report.project(&b.basis_vector(k)), &bl.central_idempotent);
            let c = crate::exactla::solve_vector(&basis, &x).ok_or_else(|| {
                Error::VerificationFailed("block element outside the span of its units".into())
            })?;
            action.push(Matrix::from_flat(f, n, n, c));
        }
        out.push(Module::new(b, n, action)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        block_triangular, induced_algebra, matrix_algebra, matrix_product_algebra,
    };
    use crate::exactla::matrix::unit_vec;
    use crate::exactla::{PrimeField, Rationals};

    fn structure_constants<F: Field>(a: &Algebra<F>) -> Algebra<F> {
        a.clone()
            .with_presentation(Presentation::StructureConstants)
    }

    #[test]
    fn matrix_algebra_is_semisimple() {
        let q = Rationals;
        let m2 = structure_constants(&matrix_algebra(2, &q));
        let r = analyze(&m2, 0).unwrap();
        assert!(r.radical.is_zero());
        assert_eq!(r.block_dims(), vec![2]);
    }

    #[test]
    fn upper_triangular_radical() {
        let q = Rationals;
        let m2 = matrix_algebra(2, &q);
        let t = induced_algebra(&m2, &block_triangular(2, &[1, 1], &q).unwrap());
        let j = jacobson_radical(&t).unwrap();
        assert_eq!(j.dim(), 1);
        let names: Vec<String> = j.basis().iter().map(|v| t.format_vector(v)).collect();
        assert_eq!(
            names,
            vec![t.format_vector(&t.basis_vector(t.basis_index("e12").unwrap()))]
        );
        let r = semisimple_blocks(&t, &j, 0).unwrap();
        assert_eq!(r.block_dims(), vec![1, 1]);
    }

    #[test]
    fn product_blocks_sorted() {
        let q = Rationals;
        let b = structure_constants(&matrix_product_algebra(&[2, 1, 1], &q));
        let r = analyze(&b, 3).unwrap();
        assert_eq!(r.block_dims(), vec![1, 1, 2]);
        assert_eq!(
            simple_modules(&b, &r)
                .unwrap()
                .iter()
                .map(|m| m.dim())
                .collect::<Vec<_>>(),
            vec![1, 1, 2]
        );
    }

    #[test]
    fn f4_over_f2_is_not_split() {
        let f2 = PrimeField::new(2).unwrap();
        // basis 1, x with x^2 = x + 1
        let a = Algebra::from_fn(
            &f2,
            vec!["1".into(), "x".into()],
            vec![1, 0],
            |i, j| match (i, j) {
                (0, k) | (k, 0) => unit_vec(&f2, 2, k),
                _ => vec![1, 1],
            },
        )
        .unwrap();
        let j = jacobson_radical(&a).unwrap();
        assert!(j.is_zero());
        assert!(matches!(
            semisimple_blocks(&a, &j, 0),
            Err(Error::NotSplit(_))
        ));
    }

    #[test]
    fn sweep_handles_char_p_matrix_algebra() {
        // tr(L_x L_y) = 2 tr(xy) vanishes identically on M_2(F_2).
        let f2 = PrimeField::new(2).unwrap();
        let m2 = structure_constants(&matrix_algebra(2, &f2));
        assert_eq!(trace_form_radical(&m2).dim(), 4);
        assert!(jacobson_radical(&m2).unwrap().is_zero());
        assert_eq!(analyze(&m2, 0).unwrap().block_dims(), vec![2]);
    }

    #[test]
    fn dual_numbers_radical() {
        let q = Rationals;
        let a = Algebra::from_fn(
            &q,
            vec!["1".into(), "x".into()],
            vec![q.one(), q.zero()],
            |i, j| match (i, j) {
                (0, k) | (k, 0) => unit_vec(&q, 2, k),
                _ => vec![q.zero(), q.zero()],
            },
        )
        .unwrap();
        let r = analyze(&a, 0).unwrap();
        assert_eq!(r.radical.dim(), 1);
        assert_eq!(r.block_dims(), vec![1]);
    }
}
