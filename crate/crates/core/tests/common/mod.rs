#![allow(dead_code)]

use algmax::algebra::{
    block_triangular, centralizer, induced_algebra, is_nilpotent_subspace, is_two_sided_ideal,
    matrix_algebra, matrix_product_algebra, product_space, Algebra, Subalgebra,
};
use algmax::exactla::matrix::unit_vec;
use algmax::exactla::{Field, Subspace, Vector};
use algmax::presentations::{
    incidence_algebra, path_algebra, radical_of_labels, PathAlgebraPresentation, Poset, Quiver,
};
use algmax::structure::{jacobson_radical, trace_form_radical, wedderburn_malcev};
use num_rational::BigRational;
use proptest::prelude::*;

pub struct SuiteEntry<F: Field> {
    pub name: &'static str,
    pub algebra: Algebra<F>,
    /// Smallest block size, entered by hand.
    pub n1: usize,
    pub quiver: Option<Quiver>,
}

pub fn d4() -> Quiver {
    let a = |n: &str, s: &str, t: &str| (n.to_string(), s.to_string(), t.to_string());
    Quiver::new(
        vec!["1".into(), "2".into(), "3".into(), "4".into()],
        vec![a("a", "1", "2"), a("b", "3", "2"), a("c", "4", "2")],
    )
    .unwrap()
}

fn free<F: Field>(q: &Quiver, f: &F) -> Algebra<F> {
    path_algebra(&PathAlgebraPresentation::free(q.clone()).unwrap(), f).unwrap()
}

fn a3_mod_ba<F: Field>(f: &F) -> Algebra<F> {
    let q = Quiver::linear(3);
    let ba = q.parse_path("b.a").unwrap();
    let one = BigRational::from_integer(1.into());
    path_algebra(
        &PathAlgebraPresentation::new(q, vec![vec![(one, ba)]], None).unwrap(),
        f,
    )
    .unwrap()
}

fn dual_numbers<F: Field>(f: &F) -> Algebra<F> {
    let q = Quiver::new(vec!["1".into()], vec![("x".into(), "1".into(), "1".into())]).unwrap();
    let xx = q.parse_path("x.x").unwrap();
    let one = BigRational::from_integer(1.into());
    path_algebra(
        &PathAlgebraPresentation::new(q, vec![vec![(one, xx)]], Some(2)).unwrap(),
        f,
    )
    .unwrap()
}

pub fn upper_triangular<F: Field>(n: usize, f: &F) -> Algebra<F> {
    let t = block_triangular(n, &vec![1; n], f).unwrap();
    induced_algebra(&matrix_algebra(n, f), &t)
}

pub fn suite<F: Field>(f: &F) -> Vec<SuiteEntry<F>> {
    let e = |name, algebra, n1, quiver| SuiteEntry {
        name,
        algebra,
        n1,
        quiver,
    };
    vec![
        e(
            "A2",
            free(&Quiver::linear(2), f),
            1,
            Some(Quiver::linear(2)),
        ),
        e(
            "A3",
            free(&Quiver::linear(3), f),
            1,
            Some(Quiver::linear(3)),
        ),
        e(
            "Kronecker",
            free(&Quiver::kronecker(), f),
            1,
            Some(Quiver::kronecker()),
        ),
        e("D4", free(&d4(), f), 1, Some(d4())),
        e("A3/(ba)", a3_mod_ba(f), 1, None),
        e("K[x]/x^2", dual_numbers(f), 1, None),
        e(
            "chain3",
            incidence_algebra(&Poset::chain(3), f).unwrap(),
            1,
            None,
        ),
        e(
            "diamond",
            incidence_algebra(&Poset::diamond(), f).unwrap(),
            1,
            None,
        ),
        e(
            "zigzag5",
            incidence_algebra(&Poset::zigzag(5), f).unwrap(),
            1,
            None,
        ),
        e("KxKxM2", matrix_product_algebra(&[1, 1, 2], f), 1, None),
        e("UT3", upper_triangular(3, f), 1, None),
        e("KxK", matrix_product_algebra(&[1, 1], f), 1, None),
        e("M2", matrix_algebra(2, f), 2, None),
        e("M3", matrix_algebra(3, f), 3, None),
    ]
}

pub fn is_pointed<F: Field>(e: &SuiteEntry<F>) -> bool {
    !e.name.starts_with('M') && e.name != "KxKxM2"
}

/// Gaussian binomial [n choose k]_q by the product formula.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..k {
        num *= (q as u128).pow(n - i) - 1;
        den *= (q as u128).pow(i + 1) - 1;
    }
    (num / den) as u64
}

/// Independent maximality check over a finite field: every class of B/A
/// together with A generates B (closure computed here, not by the library).
pub fn recheck_maximal<F: Field>(b: &Algebra<F>, a: &Subalgebra<F>) -> bool {
    let f = b.field();
    let free = a.space().free_columns();
    let r = free.len();
    if r == 0 {
        return false;
    }
    for c in algmax::exactla::projective_points(f, r).unwrap() {
        let mut v = b.zero();
        for (k, x) in c.iter().enumerate() {
            v[free[k]] = x.clone();
        }
        let mut vs = a.basis().to_vec();
        vs.push(v);
        let mut s = Subspace::span(f, b.dim(), &vs);
        loop {
            let mut more = s.basis().to_vec();
            for x in s.basis() {
                for y in s.basis() {
                    more.push(b.mul(x, y));
                }
            }
            let next = Subspace::span(f, b.dim(), &more);
            if next == s {
                break;
            }
            s = next;
        }
        if !s.is_full() {
            return false;
        }
    }
    true
}

// ---- random algebras for the property suites ----

#[derive(Clone, Debug)]
pub enum RandomAlgebra {
    /// Acyclic quiver: arrows i → j with i < j.
    Quiver {
        n: usize,
        arrows: Vec<(usize, usize)>,
    },
    /// Poset on n elements given by covers i < j.
    Poset {
        n: usize,
        covers: Vec<(usize, usize)>,
    },
    Matrices(Vec<usize>),
}

pub fn random_algebra() -> impl Strategy<Value = RandomAlgebra> {
    let quiver = (1usize..=4).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let m = pairs.len();
        (Just(n), proptest::collection::vec(0usize..=2, m)).prop_map(move |(n, mult)| {
            let mut arrows = Vec::new();
            for (p, k) in pairs.iter().zip(mult) {
                arrows.extend(std::iter::repeat_n(*p, k.min(1 + usize::from(n <= 2))));
            }
            RandomAlgebra::Quiver { n, arrows }
        })
    });
    let poset = (1usize..=4).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let m = pairs.len();
        (Just(n), proptest::collection::vec(any::<bool>(), m)).prop_map(move |(n, keep)| {
            RandomAlgebra::Poset {
                n,
                covers: pairs
                    .iter()
                    .zip(keep)
                    .filter(|(_, k)| *k)
                    .map(|(p, _)| *p)
                    .collect(),
            }
        })
    });
    let mats = proptest::collection::vec(1usize..=2, 1..=3).prop_map(RandomAlgebra::Matrices);
    prop_oneof![quiver, poset, mats]
}

impl RandomAlgebra {
    pub fn quiver(&self) -> Option<Quiver> {
        match self {
            RandomAlgebra::Quiver { n, arrows } => Some(
                Quiver::new(
                    (1..=*n).map(|i| i.to_string()).collect(),
                    arrows
                        .iter()
                        .enumerate()
                        .map(|(k, (i, j))| {
                            (format!("x{k}"), (i + 1).to_string(), (j + 1).to_string())
                        })
                        .collect(),
                )
                .unwrap(),
            ),
            _ => None,
        }
    }

    pub fn build<F: Field>(&self, f: &F) -> Algebra<F> {
        match self {
            RandomAlgebra::Quiver { .. } => free(&self.quiver().unwrap(), f),
            RandomAlgebra::Poset { n, covers } => {
                let p = Poset::new(
                    (1..=*n).map(|i| i.to_string()).collect(),
                    covers
                        .iter()
                        .map(|(i, j)| ((i + 1).to_string(), (j + 1).to_string()))
                        .collect(),
                )
                .unwrap();
                incidence_algebra(&p, f).unwrap()
            }
            RandomAlgebra::Matrices(sizes) => matrix_product_algebra(sizes, f),
        }
    }
}

/// Random coefficient vectors, small integers.
pub fn coefficient_rows(max_rows: usize, len: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-2i64..=2, len), 0..=max_rows)
}

pub fn to_vectors<F: Field>(f: &F, rows: &[Vec<i64>], d: usize) -> Vec<Vector<F>> {
    rows.iter()
        .map(|r| r.iter().take(d).map(|&c| f.from_i64(c)).collect::<Vec<_>>())
        .filter(|v: &Vector<F>| v.len() == d)
        .collect()
}

// ---- the properties ----

pub fn prop_bicommutant<F: Field>(b: &Algebra<F>, s: &Subspace<F>) -> Result<(), String> {
    let c1 = centralizer(b, s);
    let c2 = centralizer(b, c1.space());
    let c3 = centralizer(b, c2.space());
    if c3.space() != c1.space() {
        return Err("C^3 differs from C".into());
    }
    if !c2.space().contains_subspace(s) {
        return Err("S is not inside C^2(S)".into());
    }
    Ok(())
}

pub fn prop_radical<F: Field>(b: &Algebra<F>) -> Result<(), String> {
    let j = jacobson_radical(b).map_err(|e| e.to_string())?;
    if !is_two_sided_ideal(b, &j) || !is_nilpotent_subspace(b, &j) {
        return Err("radical is not a nilpotent ideal".into());
    }
    let mut p = j.clone();
    for _ in 0..=b.dim() {
        p = product_space(b, &p, &j);
    }
    if !p.is_zero() {
        return Err("J^(d+1) is nonzero".into());
    }
    Ok(())
}

pub fn prop_wedderburn_malcev<F: Field>(b: &Algebra<F>, seed: u64) -> Result<(), String> {
    let wm = wedderburn_malcev(b, seed).map_err(|e| e.to_string())?;
    let j = &wm.report.radical;
    let a0 = wm.complement.space();
    if !a0.intersection(j).unwrap().is_zero() {
        return Err("A_0 meets J".into());
    }
    if a0.dim() + j.dim() != b.dim() || !a0.sum(j).unwrap().is_full() {
        return Err("A_0 + J is not B".into());
    }
    Subalgebra::new(b, a0.clone()).map_err(|e| e.to_string())?;
    Ok(())
}

pub fn prop_trace_matches_arrows(b: &Algebra<algmax::exactla::Rationals>) -> Result<(), String> {
    let labels = b.presentation().labels().ok_or("no presentation")?;
    let arrows = radical_of_labels(b.field(), labels);
    if trace_form_radical(b) != arrows {
        return Err("trace-form radical differs from the arrow ideal".into());
    }
    Ok(())
}

pub fn prop_subspace_count<F: Field>(f: &F, n: usize, k: usize) -> Result<(), String> {
    let q = f.order().unwrap();
    let got = algmax::exactla::subspaces(f, n, k)
        .map_err(|e| e.to_string())?
        .count() as u64;
    let want = gaussian_binomial(n as u32, k as u32, q);
    if got != want {
        return Err(format!(
            "{got} subspaces of dimension {k} in F_{q}^{n}, expected {want}"
        ));
    }
    Ok(())
}

pub fn unit_vectors<F: Field>(f: &F, d: usize) -> Vec<Vector<F>> {
    (0..d).map(|i| unit_vec(f, d, i)).collect()
}
