use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exactla::field::Field;
use crate::exactla::matrix::Vector;
use crate::exactla::subspace::Subspace;

/// Streams every `dim`-dimensional subspace of K^n over a finite field, in
/// lexicographic order of pivot sets and then of the free echelon entries.
pub struct SubspaceIter<F: Field> {
    field: F,
    n: usize,
    elems: Vec<F::Elem>,
    pivot_sets: Box<dyn Iterator<Item = Vec<usize>> + Send>,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<usize>,
    exhausted_current: bool,
}

impl<F: Field> SubspaceIter<F> {
    fn load_next_pivots(&mut self) -> bool {
        let Some(p) = self.pivot_sets.next() else {
            return false;
        };
        self.free = p
            .iter()
            .enumerate()
            .flat_map(|(r, &c)| {
                let p = p.clone();
                (c + 1..self.n)
                    .filter(move |x| !p.contains(x))
                    .map(move |x| (r, x))
            })
            .collect();
        self.pivots = p;
        self.counter = vec![0; self.free.len()];
        self.exhausted_current = false;
        true
    }

    fn current(&self) -> Subspace<F> {
        let f = &self.field;
        let mut rows: Vec<Vector<F>> = self
            .pivots
            .iter()
            .map(|&c| {
                let mut v = vec![f.zero(); self.n];
                v[c] = f.one();
                v
            })
            .collect();
        for (&(r, c), &i) in self.free.iter().zip(&self.counter) {
            rows[r][c] = self.elems[i].clone();
        }
        Subspace::from_echelon(f, self.n, rows, self.pivots.clone())
    }

    fn advance(&mut self) {
        let q = self.elems.len();
        for i in (0..self.counter.len()).rev() {
            self.counter[i] += 1;
            if self.counter[i] < q {
                return;
            }
            self.counter[i] = 0;
        }
        self.exhausted_current = true;
    }
}

impl<F: Field> Iterator for SubspaceIter<F> {
    type Item = Subspace<F>;

    fn next(&mut self) -> Option<Subspace<F>> {
        if self.exhausted_current && !self.load_next_pivots() {
            return None;
        }
        let s = self.current();
        self.advance();
        Some(s)
    }
}

/// All subspaces of dimension `dim` in K^`ambient`, unfiltered.
pub fn subspaces<F: Field>(field: &F, ambient: usize, dim: usize) -> Result<SubspaceIter<F>> {
    let elems = field.elements().ok_or(Error::NotFinite)?;
    if dim > ambient {
        return Err(Error::DimensionMismatch(format!(
            "subspace dimension {dim} exceeds ambient {ambient}"
        )));
    }
    let combos: Vec<Vec<usize>> = (0..ambient).combinations(dim).collect();
    let mut it = SubspaceIter {
        field: field.clone(),
        n: ambient,
        elems,
        pivot_sets: Box::new(combos.into_iter()),
        pivots: Vec::new(),
        free: Vec::new(),
        counter: Vec::new(),
        exhausted_current: true,
    };
    if !it.load_next_pivots() {
        it.exhausted_current = true;
    }
    Ok(it)
}

/// `subspaces` with a predicate applied to each candidate.
pub fn enumerate_subspaces<F: Field>(
    field: &F,
    ambient: usize,
    dim: usize,
    filter: impl FnMut(&Subspace<F>) -> bool,
) -> Result<impl Iterator<Item = Subspace<F>>> {
    Ok(subspaces(field, ambient, dim)?.filter(filter))
}

/// Every nonzero vector of K^n up to scalars: the first nonzero entry is 1.
pub fn projective_points<F: Field>(field: &F, n: usize) -> Result<Vec<Vector<F>>> {
    Ok(subspaces(field, n, 1)?
        .map(|s| s.basis()[0].clone())
        .collect())
}

/// Every vector of K^n, in lexicographic order of coordinates.
pub fn all_vectors<F: Field>(field: &F, n: usize) -> Result<Vec<Vector<F>>> {
    let elems = field.elements().ok_or(Error::NotFinite)?;
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    Ok((0..n)
        .map(|_| elems.iter().cloned())
        .multi_cartesian_product()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::PrimeField;

    #[test]
    fn small_counts_over_f2() {
        let f = PrimeField::new(2).unwrap();
        assert_eq!(subspaces(&f, 3, 0).unwrap().count(), 1);
        assert_eq!(subspaces(&f, 2, 1).unwrap().count(), 3);
        let total: usize = (0..=4).map(|k| subspaces(&f, 4, k).unwrap().count()).sum();
        assert_eq!(total, 67);
    }

    #[test]
    fn order_is_lexicographic_on_pivots() {
        let f = PrimeField::new(2).unwrap();
        let firsts: Vec<Vec<usize>> = subspaces(&f, 3, 1)
            .unwrap()
            .map(|s| s.pivots().to_vec())
            .collect();
        let mut sorted = firsts.clone();
        sorted.sort();
        assert_eq!(firsts, sorted);
    }

    #[test]
    fn vectors_and_points() {
        let f = PrimeField::new(3).unwrap();
        assert_eq!(all_vectors(&f, 2).unwrap().len(), 9);
        assert_eq!(all_vectors(&f, 0).unwrap().len(), 1);
        assert_eq!(projective_points(&f, 2).unwrap().len(), 4);
    }

    #[test]
    fn rejects_infinite_field() {
        assert!(subspaces(&crate::exactla::field::Rationals, 2, 1).is_err());
    }
}
