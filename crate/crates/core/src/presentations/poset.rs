use crate::algebra::{Algebra, PathLabel, PathLabels, Presentation, Subalgebra};
use crate::error::{Error, Result};
use crate::exactla::matrix::{unit_vec, zero_vec};
use crate::exactla::{Field, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    covers: Vec<(usize, usize)>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Covers are (lower, upper) pairs; the order is their reflexive
    /// transitive closure.
    pub fn new(elements: Vec<String>, covers: Vec<(String, String)>) -> Result<Self> {
        let n = elements.len();
        let idx = |s: &str| {
            elements
                .iter()
                .position(|e| e == s)
                .ok_or_else(|| Error::UnknownName(s.to_string()))
        };
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::InvalidParams(format!("duplicate element {e}")));
            }
        }
        let mut cs = Vec::with_capacity(covers.len());
        for (lo, hi) in &covers {
            cs.push((idx(lo)?, idx(hi)?));
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(lo, hi) in &cs {
            leq[lo][hi] = true;
        }
        for m in 0..n {
            for a in 0..n {
                if leq[a][m] {
                    for b in 0..n {
                        if leq[m][b] {
                            leq[a][b] = true;
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(Error::Cycle(format!("{} and {}", elements[a], elements[b])));
                }
            }
        }
        Ok(Poset {
            elements,
            covers: cs,
            leq,
        })
    }

    pub fn chain(n: usize) -> Self {
        let els: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let covers = (1..n)
            .map(|i| (i.to_string(), (i + 1).to_string()))
            .collect();
        Self::new(els, covers).expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        Self::new((1..=n).map(|i| i.to_string()).collect(), Vec::new()).expect("antichain")
    }

    /// 1 < 2, 3 < 4.
    pub fn diamond() -> Self {
        let c = |a: &str, b: &str| (a.to_string(), b.to_string());
        Self::new(
            (1..=4).map(|i| i.to_string()).collect(),
            vec![c("1", "2"), c("1", "3"), c("2", "4"), c("3", "4")],
        )
        .expect("diamond")
    }

    /// The zig-zag 1 > 2 < 3 > 4 < 5.
    pub fn zigzag(n: usize) -> Self {
        let covers = (1..n)
            .map(|i| {
                let (a, b) = (i.to_string(), (i + 1).to_string());
                if i % 2 == 1 {
                    (b, a)
                } else {
                    (a, b)
                }
            })
            .collect();
        Self::new((1..=n).map(|i| i.to_string()).collect(), covers).expect("zigzag")
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq[a][b] || self.leq[b][a]
    }

    /// b covers a: a < b with nothing strictly between.
    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        a != b
            && self.leq[a][b]
            && (0..self.elements.len())
                .all(|c| c == a || c == b || !(self.leq[a][c] && self.leq[c][b]))
    }

    /// Intervals a ≤ b: the diagonal first, then strict intervals by (a, b).
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        let n = self.elements.len();
        let mut out: Vec<(usize, usize)> = (0..n).map(|a| (a, a)).collect();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq[a][b] {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Length of the longest chain from a to b.
    fn height(&self, a: usize, b: usize) -> usize {
        if a == b {
            return 0;
        }
        (0..self.elements.len())
            .filter(|&c| c != a && self.leq[a][c] && self.leq[c][b] && self.is_cover(a, c))
            .map(|c| 1 + self.height(c, b))
            .max()
            .unwrap_or(0)
    }

    pub fn interval_name(&self, a: usize, b: usize) -> String {
        format!("[{},{}]", self.elements[a], self.elements[b])
    }
}

/// The incidence algebra with [a,b]·[c,d] = δ_bc [a,d].
pub fn incidence_algebra<F: Field>(p: &Poset, field: &F) -> Result<Algebra<F>> {
    let ivs = p.intervals();
    let d = ivs.len();
    let n = p.elements().len();
    let names = ivs.iter().map(|&(a, b)| p.interval_name(a, b)).collect();
    let mut unit = zero_vec(field, d);
    for u in unit.iter_mut().take(n) {
        *u = field.one();
    }
    let alg = Algebra::from_fn(field, names, unit, |i, j| {
        let ((a, b), (c, e)) = (ivs[i], ivs[j]);
        if b == c {
            let k = ivs
                .iter()
                .position(|&iv| iv == (a, e))
                .expect("closed under composition");
            unit_vec(field, d, k)
        } else {
            zero_vec(field, d)
        }
    })?;
    let labels = PathLabels {
        vertices: p.elements().to_vec(),
        basis: ivs
            .iter()
            .map(|&(a, b)| PathLabel {
                source: b,
                target: a,
                length: p.height(a, b),
            })
            .collect(),
    };
    Ok(alg.with_presentation(Presentation::Incidence(labels)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IncidenceMaximal {
    /// [a,a] and [b,b] merged.
    Is(String, String),
    /// The interval [a,b] removed, for b covering a.
    It(String, String),
}

pub fn incidence_maximal<F: Field>(
    p: &Poset,
    b: &Algebra<F>,
    kind: &IncidenceMaximal,
) -> Result<Subalgebra<F>> {
    let f = b.field();
    let d = b.dim();
    let ivs = p.intervals();
    if ivs.len() != d {
        return Err(Error::DimensionMismatch(
            "algebra is not the incidence algebra of this poset".into(),
        ));
    }
    let mut vs: Vec<Vector<F>> = Vec::new();
    match kind {
        IncidenceMaximal::Is(a, c) => {
            let (ia, ic) = (p.index(a)?, p.index(c)?);
            if ia == ic {
                return Err(Error::InvalidParams("merged elements must differ".into()));
            }
            let mut merged = unit_vec(f, d, ia);
            merged[ic] = f.one();
            vs.push(merged);
            for (k, &(x, y)) in ivs.iter().enumerate() {
                if !(x == y && (x == ia || x == ic)) {
                    vs.push(unit_vec(f, d, k));
                }
            }
        }
        IncidenceMaximal::It(a, c) => {
            let (ia, ic) = (p.index(a)?, p.index(c)?);
            if !p.is_cover(ia, ic) {
                return Err(Error::NotCovering(c.clone(), a.clone()));
            }
            for (k, &iv) in ivs.iter().enumerate() {
                if iv != (ia, ic) {
                    vs.push(unit_vec(f, d, k));
                }
            }
        }
    }
    Subalgebra::new(b, Subspace::span(f, d, &vs))
}

/// Every x ≤ b is comparable to a and every y ≥ a is comparable to b.
pub fn clamped_check(p: &Poset, a: &str, b: &str) -> Result<bool> {
    let (ia, ib) = (p.index(a)?, p.index(b)?);
    if !p.leq(ia, ib) {
        return Err(Error::NotComparable(a.to_string(), b.to_string()));
    }
    let n = p.elements().len();
    Ok((0..n).all(|x| !p.leq(x, ib) || p.comparable(x, ia))
        && (0..n).all(|y| !p.leq(ia, y) || p.comparable(y, ib)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{block_triangular, induced_algebra, matrix_algebra};
    use crate::exactla::{PrimeField, Rationals};

    #[test]
    fn small_incidence_algebras() {
        let q = Rationals;
        let anti = incidence_algebra(&Poset::antichain(3), &q).unwrap();
        assert_eq!(anti.dim(), 3);
        let c2 = incidence_algebra(&Poset::chain(2), &q).unwrap();
        assert_eq!(c2.dim(), 3);
        assert!(c2.validate().is_valid());
        // chain 1 < 2 versus upper triangular 2x2: same multiplication table
        let t = induced_algebra(
            &matrix_algebra(2, &q),
            &block_triangular(2, &[1, 1], &q).unwrap(),
        );
        assert_eq!(t.dim(), 3);
        assert_eq!(incidence_algebra(&Poset::chain(3), &q).unwrap().dim(), 6);
        assert_eq!(incidence_algebra(&Poset::diamond(), &q).unwrap().dim(), 9);
    }

    #[test]
    fn zigzag_has_nine_intervals() {
        let p = Poset::zigzag(5);
        let b = incidence_algebra(&p, &PrimeField::new(2).unwrap()).unwrap();
        assert_eq!(b.dim(), 9);
        assert!(b.basis_index("[2,1]").is_some());
        assert!(b.basis_index("[4,5]").is_some());
    }

    #[test]
    fn rejects_cycles() {
        let c = |a: &str, b: &str| (a.to_string(), b.to_string());
        let r = Poset::new(vec!["x".into(), "y".into()], vec![c("x", "y"), c("y", "x")]);
        assert!(matches!(r, Err(Error::Cycle(_))));
    }

    #[test]
    fn maximal_intervals() {
        let q = Rationals;
        let c2 = Poset::chain(2);
        let b = incidence_algebra(&c2, &q).unwrap();
        assert_eq!(
            incidence_maximal(&c2, &b, &IncidenceMaximal::It("1".into(), "2".into()))
                .unwrap()
                .dim(),
            2
        );
        assert_eq!(
            incidence_maximal(&c2, &b, &IncidenceMaximal::Is("1".into(), "2".into()))
                .unwrap()
                .dim(),
            2
        );
        let c3 = Poset::chain(3);
        let b3 = incidence_algebra(&c3, &q).unwrap();
        assert_eq!(
            incidence_maximal(&c3, &b3, &IncidenceMaximal::It("1".into(), "2".into()))
                .unwrap()
                .dim(),
            5
        );
        assert!(matches!(
            incidence_maximal(&c3, &b3, &IncidenceMaximal::It("1".into(), "3".into())),
            Err(Error::NotCovering(_, _))
        ));
    }

    #[test]
    fn clamped_intervals() {
        let c = Poset::chain(4);
        for i in 1..4 {
            assert!(clamped_check(&c, &i.to_string(), &(i + 1).to_string()).unwrap());
        }
        let d = Poset::diamond();
        assert!(!clamped_check(&d, "2", "4").unwrap());
        assert!(!clamped_check(&d, "1", "2").unwrap());
        assert!(clamped_check(&d, "1", "4").unwrap());
        assert!(clamped_check(&d, "2", "3").is_err());
    }
}
