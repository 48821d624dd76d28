use crate::algebra::{induced_algebra, is_closed, subalgebra_generated, Algebra, Subalgebra};
use crate::error::{Error, Result};
use crate::exactla::matrix::unit_vec;
use crate::exactla::{projective_points, Field, Matrix, Subspace, Vector};
use crate::structure::{analyze, jacobson_radical, semisimple_blocks};

/// Projective points of B/A visited by the exhaustive finite-field check.
const EXHAUSTIVE_CAP: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertifyMethod {
    /// The left and right actions of A generate End(B/A).
    Burnside,
    /// Every nonzero class v of B/A generates B together with A.
    Exhaustive,
    /// An explicit intermediate subalgebra was found.
    Witness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate<F: Field> {
    Maximal { method: CertifyMethod },
    NotMaximal { witness: Subalgebra<F> },
    Inconclusive,
}

impl<F: Field> Certificate<F> {
    pub fn is_maximal(&self) -> bool {
        matches!(self, Certificate::Maximal { .. })
    }
}

/// B/A with the induced left and right actions of A.
struct QuotientAction<F: Field> {
    lifts: Vec<Vector<F>>,
    gens: Vec<Matrix<F>>,
}

impl<F: Field> QuotientAction<F> {
    fn new(b: &Algebra<F>, a: &Subalgebra<F>) -> Self {
        let f = b.field();
        let s = a.space();
        let r = s.codim();
        let lifts: Vec<Vector<F>> = (0..r)
            .map(|c| s.quotient_lift(&unit_vec(f, r, c)))
            .collect();
        let mut gens = Vec::new();
        for x in a.basis() {
            for left in [true, false] {
                let cols: Vec<Vector<F>> = lifts
                    .iter()
                    .map(|l| s.quotient_coords(&if left { b.mul(x, l) } else { b.mul(l, x) }))
                    .collect();
                gens.push(Matrix::from_columns(f, r, &cols).expect("square action"));
            }
        }
        QuotientAction { lifts, gens }
    }

    fn dim(&self) -> usize {
        self.lifts.len()
    }

    fn lift(&self, f: &F, q: &[F::Elem]) -> Vector<F> {
        let d = self.lifts.first().map_or(0, |v| v.len());
        let mut out = crate::exactla::matrix::zero_vec(f, d);
        for (c, l) in q.iter().zip(&self.lifts) {
            crate::exactla::matrix::axpy(f, &mut out, c, l);
        }
        out
    }

    /// Dimension of the algebra generated by the actions inside End(B/A).
    fn enveloping_dim(&self, f: &F) -> usize {
        let r = self.dim();
        let flat = |m: &Matrix<F>| m.as_slice().to_vec();
        let mut span = Subspace::span(f, r * r, &[flat(&Matrix::identity(f, r))]);
        let mut frontier = vec![Matrix::identity(f, r)];
        while let Some(m) = frontier.pop() {
            for g in &self.gens {
                let p = g.mul(&m).expect("square");
                let v = flat(&p);
                if !span.contains(&v) {
                    span = span
                        .sum(&Subspace::span(f, r * r, &[v]))
                        .expect("same ambient");
                    frontier.push(p);
                }
            }
        }
        span.dim()
    }

    /// Smallest sub-bimodule of B/A containing v.
    fn spin_up(&self, f: &F, v: &[F::Elem]) -> Subspace<F> {
        let r = self.dim();
        let mut span = Subspace::span(f, r, &[v.to_vec()]);
        let mut frontier = vec![v.to_vec()];
        while let Some(w) = frontier.pop() {
            for g in &self.gens {
                let u = g.apply(&w);
                if !span.contains(&u) {
                    span = span
                        .sum(&Subspace::span(f, r, std::slice::from_ref(&u)))
                        .expect("same ambient");
                    frontier.push(u);
                }
            }
        }
        span
    }
}

fn generated_with<F: Field>(b: &Algebra<F>, a: &Subalgebra<F>, extra: Vector<F>) -> Subalgebra<F> {
    let mut seeds = a.basis().to_vec();
    seeds.push(extra);
    subalgebra_generated(b, &seeds)
}

/// Decide whether A is a maximal subalgebra of B.
pub fn certify_maximal<F: Field>(b: &Algebra<F>, a: &Subalgebra<F>) -> Result<Certificate<F>> {
    if a.space().ambient() != b.dim() {
        return Err(Error::AmbientMismatch(a.space().ambient(), b.dim()));
    }
    if a.dim() == b.dim() {
        return Err(Error::NotProper);
    }
    let f = b.field();
    let qa = QuotientAction::new(b, a);
    let r = qa.dim();
    if qa.enveloping_dim(f) == r * r {
        return Ok(Certificate::Maximal {
            method: CertifyMethod::Burnside,
        });
    }

    if let Some(q) = f.order() {
        let points = (q.checked_pow(r as u32).unwrap_or(u64::MAX) - 1) / (q - 1);
        if points <= EXHAUSTIVE_CAP {
            for v in projective_points(f, r)? {
                if qa.spin_up(f, &v).is_full() {
                    continue;
                }
                let g = generated_with(b, a, qa.lift(f, &v));
                if g.dim() < b.dim() {
                    return Ok(Certificate::NotMaximal { witness: g });
                }
            }
            return Ok(Certificate::Maximal {
                method: CertifyMethod::Exhaustive,
            });
        }
    }

    // Search for a witness: basis vectors of B outside A first, then sums
    // of pairs of quotient basis vectors.
    let mut cands: Vec<Vector<F>> = (0..b.dim())
        .map(|k| b.basis_vector(k))
        .filter(|x| !a.contains(x))
        .map(|x| a.space().quotient_coords(&x))
        .collect();
    for c in 0..r {
        for d in c + 1..r {
            let mut v = unit_vec(f, r, c);
            v[d] = f.one();
            cands.push(v);
        }
    }
    for v in &cands {
        let g = generated_with(b, a, qa.lift(f, v));
        if g.dim() < b.dim() {
            return Ok(Certificate::NotMaximal { witness: g });
        }
        let u = qa.spin_up(f, v);
        if !u.is_full() {
            let lifted: Vec<Vector<F>> = u.basis().iter().map(|w| qa.lift(f, w)).collect();
            let s = a.space().sum(&Subspace::span(f, b.dim(), &lifted))?;
            if is_closed(b, &s) {
                return Ok(Certificate::NotMaximal {
                    witness: Subalgebra::new(b, s)?,
                });
            }
        }
    }
    Ok(Certificate::Inconclusive)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaximalType {
    /// J(B) ⊆ A.
    Semisimple,
    /// J(A) = A ∩ J(B) and A, B have the same block sizes.
    Split,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeReport<F: Field> {
    pub kind: MaximalType,
    pub radical_contained: bool,
    /// J(A), in the coordinates of B.
    pub radical_a: Subspace<F>,
    pub radical_matches_intersection: bool,
    /// Block sizes of A/J(A); `None` when that quotient is not split over the
    /// base field, which only happens for the semisimple type (subfield centralizers).
    pub blocks_a: Option<Vec<usize>>,
    pub blocks_b: Vec<usize>,
}

/// Classify a maximal subalgebra; fails if neither type applies.
pub fn classify_type<F: Field>(
    b: &Algebra<F>,
    a: &Subalgebra<F>,
    seed: u64,
) -> Result<TypeReport<F>> {
    let rb = analyze(b, seed)?;
    let ind = induced_algebra(b, a);
    let ja_coords = jacobson_radical(&ind)?;
    let f = b.field();
    let radical_a = Subspace::span(
        f,
        b.dim(),
        &ja_coords
            .basis()
            .iter()
            .map(|c| a.space().combine(c))
            .collect::<Vec<_>>(),
    );
    let radical_contained = a.space().contains_subspace(&rb.radical);
    let inter = a.space().intersection(&rb.radical)?;
    let radical_matches_intersection = inter == radical_a;
    let blocks_a = match semisimple_blocks(&ind, &ja_coords, seed) {
        Ok(ra) => {
            let mut d = ra.block_dims();
            d.sort_unstable();
            Some(d)
        }
        Err(_) if radical_contained => None,
        Err(e) => return Err(e),
    };
    let mut blocks_b = rb.block_dims();
    blocks_b.sort_unstable();
    let kind = if radical_contained {
        MaximalType::Semisimple
    } else if radical_matches_intersection && blocks_a.as_ref() == Some(&blocks_b) {
        MaximalType::Split
    } else {
        return Err(Error::VerificationFailed(
            "subalgebra is neither of semisimple nor of split type".into(),
        ));
    };
    Ok(TypeReport {
        kind,
        radical_contained,
        radical_a,
        radical_matches_intersection,
        blocks_a,
        blocks_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{block_triangular, matrix_algebra};
    use crate::exactla::{PrimeField, Rationals};

    #[test]
    fn triangular_is_maximal_by_burnside() {
        let q = Rationals;
        let m = matrix_algebra(2, &q);
        let t = block_triangular(2, &[1, 1], &q).unwrap();
        assert_eq!(
            certify_maximal(&m, &t).unwrap(),
            Certificate::Maximal {
                method: CertifyMethod::Burnside
            }
        );
        let r = classify_type(&m, &t, 0).unwrap();
        assert_eq!(r.kind, MaximalType::Semisimple);
    }

    #[test]
    fn scalars_are_not_maximal() {
        let q = Rationals;
        let m = matrix_algebra(2, &q);
        let k = Subalgebra::new(&m, Subspace::span(&q, 4, &[m.unit().clone()])).unwrap();
        match certify_maximal(&m, &k).unwrap() {
            Certificate::NotMaximal { witness } => {
                let diag =
                    Subspace::span(&q, 4, &[m.element(&[("e11", 1)]), m.element(&[("e22", 1)])]);
                assert_eq!(*witness.space(), diag);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            certify_maximal(&m, &Subalgebra::full(&m)),
            Err(Error::NotProper)
        ));
    }

    #[test]
    fn diagonal_in_triangular_is_split() {
        let f2 = PrimeField::new(2).unwrap();
        let t = block_triangular(2, &[1, 1], &f2).unwrap();
        let b = induced_algebra(&matrix_algebra(2, &f2), &t);
        let d = Subalgebra::new(
            &b,
            Subspace::span(
                &f2,
                3,
                &b.names()
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| *n != "e12")
                    .map(|(i, _)| unit_vec(&f2, 3, i))
                    .collect::<Vec<_>>(),
            ),
        )
        .unwrap();
        assert!(certify_maximal(&b, &d).unwrap().is_maximal());
        assert_eq!(classify_type(&b, &d, 0).unwrap().kind, MaximalType::Split);
    }
}
