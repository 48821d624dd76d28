use crate::algebra::{Algebra, Presentation, Subalgebra};
use crate::error::{Error, Result};
use crate::exactla::matrix::zero_vec;
use crate::exactla::{Field, Matrix, Subspace, Vector};

fn unit_name(n: usize, p: usize, q: usize) -> String {
    if n < 10 {
        format!("e{}{}", p + 1, q + 1)
    } else {
        format!("e{}_{}", p + 1, q + 1)
    }
}

/// M_n(K) with the matrix-unit basis e_pq at index p*n + q.
pub fn matrix_algebra<F: Field>(n: usize, field: &F) -> Algebra<F> {
    matrix_product_algebra(&[n], field)
}

/// Π M_{n_i}(K) as one algebra; block i occupies a consecutive range of
/// n_i² coordinates.
pub fn matrix_product_algebra<F: Field>(sizes: &[usize], field: &F) -> Algebra<F> {
    let d: usize = sizes.iter().map(|n| n * n).sum();
    let mut names = Vec::with_capacity(d);
    let mut owner = Vec::with_capacity(d);
    let mut offset = 0;
    for (b, &n) in sizes.iter().enumerate() {
        for p in 0..n {
            for q in 0..n {
                let base = unit_name(n, p, q);
                names.push(if sizes.len() == 1 {
                    base
                } else {
                    format!("{base}^{}", b + 1)
                });
                owner.push((offset, n, p, q));
            }
        }
        offset += n * n;
    }
    let mut unit = zero_vec(field, d);
    for &(off, n, p, q) in &owner {
        if p == q {
            unit[off + p * n + q] = field.one();
        }
    }
    let alg = Algebra::from_fn(field, names, unit, |i, j| {
        let (o1, n, p, q) = owner[i];
        let (o2, _, r, s) = owner[j];
        let mut v = zero_vec(field, d);
        if o1 == o2 && q == r {
            v[o1 + p * n + s] = field.one();
        }
        v
    })
    .expect("well-formed matrix algebra");
    let pres = if sizes.len() == 1 {
        Presentation::MatrixAlgebra(sizes[0])
    } else {
        Presentation::MatrixProduct(sizes.to_vec())
    };
    alg.with_presentation(pres)
}

/// Coordinates of an n×n matrix in the matrix-unit basis.
pub fn matrix_to_vector<F: Field>(m: &Matrix<F>) -> Vector<F> {
    m.as_slice().to_vec()
}

pub fn vector_to_matrix<F: Field>(field: &F, n: usize, v: &[F::Elem]) -> Matrix<F> {
    Matrix::from_flat(field, n, n, v.to_vec())
}

/// Block upper-triangular matrices with the given composition of n.
pub fn block_triangular<F: Field>(
    n: usize,
    composition: &[usize],
    field: &F,
) -> Result<Subalgebra<F>> {
    if composition.contains(&0) || composition.iter().sum::<usize>() != n {
        return Err(Error::BadComposition(format!(
            "{composition:?} is not a composition of {n}"
        )));
    }
    let mut block_of = Vec::with_capacity(n);
    for (b, &c) in composition.iter().enumerate() {
        block_of.extend(std::iter::repeat_n(b, c));
    }
    let d = n * n;
    let mut vs = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if block_of[p] <= block_of[q] {
                let mut v = zero_vec(field, d);
                v[p * n + q] = field.one();
                vs.push(v);
            }
        }
    }
    let alg = matrix_algebra(n, field);
    Subalgebra::new(&alg, Subspace::span(field, d, &vs))
}

/// Δ^k: inside a product of matrix algebras, the elements (X, ..., X) on the
/// listed blocks, with every other block left full.
pub fn diagonal_subalgebra<F: Field>(
    ambient: &Algebra<F>,
    positions: &[usize],
) -> Result<Subalgebra<F>> {
    let sizes = match ambient.presentation() {
        Presentation::MatrixAlgebra(n) => vec![*n],
        Presentation::MatrixProduct(v) => v.clone(),
        _ => {
            return Err(Error::BlockMismatch(
                "ambient is not a product of matrix algebras".into(),
            ))
        }
    };
    if positions.is_empty() {
        return Err(Error::BlockMismatch("no positions given".into()));
    }
    let mut seen = vec![false; sizes.len()];
    for &p in positions {
        if p >= sizes.len() || seen[p] {
            return Err(Error::BlockMismatch(format!("bad block position {p}")));
        }
        seen[p] = true;
    }
    let n = sizes[positions[0]];
    if positions.iter().any(|&p| sizes[p] != n) {
        return Err(Error::BlockMismatch(
            "merged blocks have different sizes".into(),
        ));
    }
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &m| {
            let o = *acc;
            *acc += m * m;
            Some(o)
        })
        .collect();
    let f = ambient.field();
    let d = ambient.dim();
    let mut vs = Vec::new();
    for e in 0..n * n {
        let mut v = zero_vec(f, d);
        for &p in positions {
            v[offsets[p] + e] = f.one();
        }
        vs.push(v);
    }
    for (b, &m) in sizes.iter().enumerate() {
        if !seen[b] {
            for e in 0..m * m {
                let mut v = zero_vec(f, d);
                v[offsets[b] + e] = f.one();
                vs.push(v);
            }
        }
    }
    Subalgebra::new(ambient, Subspace::span(f, d, &vs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rationals;

    #[test]
    fn block_triangular_dimensions() {
        let q = Rationals;
        assert_eq!(block_triangular(3, &[3], &q).unwrap().dim(), 9);
        assert_eq!(block_triangular(2, &[1, 1], &q).unwrap().dim(), 3);
        assert_eq!(block_triangular(3, &[1, 2], &q).unwrap().dim(), 7);
        assert!(block_triangular(3, &[1, 1], &q).is_err());
    }

    #[test]
    fn diagonal_merges() {
        let q = Rationals;
        let kk = matrix_product_algebra(&[1, 1], &q);
        assert_eq!(diagonal_subalgebra(&kk, &[0, 1]).unwrap().dim(), 1);
        assert_eq!(diagonal_subalgebra(&kk, &[0]).unwrap().dim(), 2);
        let mm = matrix_product_algebra(&[2, 2], &q);
        let d = diagonal_subalgebra(&mm, &[0, 1]).unwrap();
        assert_eq!(d.dim(), 4);
        let mixed = matrix_product_algebra(&[1, 2], &q);
        assert!(diagonal_subalgebra(&mixed, &[0, 1]).is_err());
    }
}
