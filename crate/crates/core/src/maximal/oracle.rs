use std::collections::HashMap;

use crate::algebra::{conjugate_space, invert_element, is_closed, Algebra, Subalgebra};
use crate::error::{Error, Result};
use crate::exactla::{all_vectors, subspaces, Field, Subspace, Vector};

/// Largest algebra dimension the brute-force searches accept by default.
pub const DEFAULT_ORACLE_DIM_CAP: usize = 9;

/// Largest unit group (counted as |K|^dim) used for conjugacy classes.
const UNIT_CAP: u64 = 1 << 16;

#[derive(Clone, Debug)]
pub struct BruteForce<F: Field> {
    /// Every maximal subalgebra, largest first.
    pub maximal: Vec<Subalgebra<F>>,
    /// Conjugacy class id of each entry of `maximal`, numbered from 0 in
    /// order of first appearance.
    pub class_of: Vec<usize>,
    pub class_count: usize,
}

impl<F: Field> BruteForce<F> {
    pub fn max_dim(&self) -> usize {
        self.maximal.iter().map(|a| a.dim()).max().unwrap_or(0)
    }

    /// Class id of a maximal subalgebra, found by exact match.
    pub fn class_id(&self, a: &Subalgebra<F>) -> Option<usize> {
        self.maximal
            .iter()
            .position(|m| m == a)
            .map(|i| self.class_of[i])
    }
}

fn check_finite<F: Field>(b: &Algebra<F>, cap: usize) -> Result<()> {
    if b.field().order().is_none() {
        return Err(Error::NotFinite);
    }
    if b.dim() > cap {
        return Err(Error::CapExceeded(format!(
            "dimension {} exceeds the cap {cap}",
            b.dim()
        )));
    }
    Ok(())
}

/// Closed subspaces of dimension k containing the unit. They correspond to
/// (k-1)-subspaces of the coordinate hyperplane x_c = 0, where c is the
/// first coordinate on which the unit is nonzero.
fn unital_subalgebras<F: Field>(b: &Algebra<F>, k: usize) -> Result<Vec<Subspace<F>>> {
    let f = b.field();
    let d = b.dim();
    let unit = b.unit();
    let c = unit
        .iter()
        .position(|x| !f.is_zero(x))
        .expect("nonzero unit");
    let embed = |w: &Vector<F>| {
        let mut v = w.clone();
        v.insert(c, f.zero());
        v
    };
    let mut out = Vec::new();
    for w in subspaces(f, d - 1, k - 1)? {
        let mut vs: Vec<Vector<F>> = w.basis().iter().map(embed).collect();
        vs.push(unit.clone());
        let s = Subspace::span(f, d, &vs);
        if is_closed(b, &s) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Largest dimension of a proper unital subalgebra, by descending search.
pub fn oracle_max_dim<F: Field>(b: &Algebra<F>, cap: usize) -> Result<usize> {
    check_finite(b, cap)?;
    if b.dim() < 2 {
        return Err(Error::TooSmall(b.dim()));
    }
    for k in (1..b.dim()).rev() {
        if !unital_subalgebras(b, k)?.is_empty() {
            return Ok(k);
        }
    }
    unreachable!("the scalars form a proper subalgebra")
}

/// Every maximal subalgebra and its conjugacy class under the unit group.
pub fn brute_force_maximal<F: Field>(b: &Algebra<F>, cap: usize) -> Result<BruteForce<F>> {
    check_finite(b, cap)?;
    if b.dim() < 2 {
        return Err(Error::TooSmall(b.dim()));
    }
    let f = b.field();
    let order = f.order().expect("finite");
    if order
        .checked_pow(b.dim() as u32)
        .is_none_or(|n| n > UNIT_CAP)
    {
        return Err(Error::CapExceeded(format!(
            "unit group of K^{} is too large",
            b.dim()
        )));
    }

    // Descending: a subalgebra is maximal iff no maximal one found so far
    // contains it.
    let mut maximal: Vec<Subspace<F>> = Vec::new();
    for k in (1..b.dim()).rev() {
        for s in unital_subalgebras(b, k)? {
            if !maximal.iter().any(|m| m.contains_subspace(&s)) {
                maximal.push(s);
            }
        }
    }

    let index: HashMap<&Subspace<F>, usize> =
        maximal.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut parent: Vec<usize> = (0..maximal.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let units: Vec<(Vector<F>, Vector<F>)> = all_vectors(f, b.dim())?
        .into_iter()
        .filter_map(|u| invert_element(b, &u).map(|ui| (u, ui)))
        .collect();
    for (i, s) in maximal.iter().enumerate() {
        if find(&mut parent, i) != i {
            continue;
        }
        for (u, ui) in &units {
            let t = conjugate_space(b, u, ui, s);
            let j = *index.get(&t).ok_or_else(|| {
                Error::VerificationFailed("conjugate of a maximal subalgebra is not maximal".into())
            })?;
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[rj] = ri;
            }
        }
    }
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let mut class_of = Vec::with_capacity(maximal.len());
    for i in 0..maximal.len() {
        let r = find(&mut parent, i);
        let next = ids.len();
        class_of.push(*ids.entry(r).or_insert(next));
    }
    let class_count = ids.len();
    let maximal = maximal
        .into_iter()
        .map(|s| Subalgebra::new(b, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(BruteForce {
        maximal,
        class_of,
        class_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, matrix_product_algebra};
    use crate::exactla::PrimeField;

    #[test]
    fn small_oracles() {
        let f2 = PrimeField::new(2).unwrap();
        let kk = brute_force_maximal(&matrix_product_algebra(&[1, 1], &f2), 9).unwrap();
        assert_eq!(kk.maximal.len(), 1);
        assert_eq!(kk.max_dim(), 1);
        let m2 = brute_force_maximal(&matrix_algebra(2, &f2), 9).unwrap();
        assert_eq!(m2.maximal.len(), 4);
        assert_eq!(m2.class_count, 2);
        assert_eq!(oracle_max_dim(&matrix_algebra(2, &f2), 9).unwrap(), 3);
        assert!(matches!(
            oracle_max_dim(&matrix_algebra(4, &f2), 9),
            Err(Error::CapExceeded(_))
        ));
    }
}
