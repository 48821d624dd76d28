//! Maximal subalgebras: family enumeration and instantiation, certification,
//! type classification and a brute-force oracle over small prime fields.

mod certify;
mod oracle;

pub use certify::{
    certify_maximal, classify_type, Certificate, CertifyMethod, MaximalType, TypeReport,
};
pub use oracle::{brute_force_maximal, oracle_max_dim, BruteForce, DEFAULT_ORACLE_DIM_CAP};

use std::fmt;

use crate::algebra::{
    centralizer, matrix_algebra, matrix_to_vector, product_space, subalgebra_generated, Algebra,
    Subalgebra,
};
use crate::error::{Error, Result};
use crate::exactla::matrix::{axpy, zero_vec};
use crate::exactla::{kernel, projective_points, Field, Matrix, Subspace, Vector};
use crate::poly;
use crate::structure::{analyze, wedderburn_malcev, WedderburnMalcev};

/// Descriptor of one conjugacy class (or, over Q, one parameterized family)
/// of maximal subalgebras. Block indices are 0-based positions in the
/// sorted block list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaximalFamily<F: Field> {
    BlockTriangular {
        block: usize,
        k: usize,
    },
    DiagonalMerge {
        i: usize,
        j: usize,
    },
    /// `hyperplane` is a linear functional on the multiplicity space whose
    /// kernel is kept; `None` stands for the whole projective family.
    RadicalHyperplane {
        i: usize,
        j: usize,
        multiplicity: usize,
        hyperplane: Option<Vector<F>>,
    },
    SubfieldCentralizer {
        block: usize,
        degree: usize,
    },
}

impl<F: Field> MaximalFamily<F> {
    pub fn kind_name(&self) -> &'static str {
        match self {
            MaximalFamily::BlockTriangular { .. } => "block-triangular",
            MaximalFamily::DiagonalMerge { .. } => "diagonal-merge",
            MaximalFamily::RadicalHyperplane { .. } => "radical-hyperplane",
            MaximalFamily::SubfieldCentralizer { .. } => "subfield-centralizer",
        }
    }

    /// Codimension of every member, given the block sizes.
    pub fn codim(&self, dims: &[usize]) -> usize {
        match *self {
            MaximalFamily::BlockTriangular { block, k } => k * (dims[block] - k),
            MaximalFamily::DiagonalMerge { i, .. } => dims[i] * dims[i],
            MaximalFamily::RadicalHyperplane { i, j, .. } => dims[i] * dims[j],
            MaximalFamily::SubfieldCentralizer { block, degree } => {
                let n = dims[block];
                n * n - n * n / degree
            }
        }
    }

    /// One-line record `family kind=... ...` with 1-based block numbers.
    pub fn record(&self, field: &F, dims: &[usize]) -> String {
        let body = match self {
            MaximalFamily::BlockTriangular { block, k } => format!("block={} k={k}", block + 1),
            MaximalFamily::DiagonalMerge { i, j } => format!("blocks={},{}", i + 1, j + 1),
            MaximalFamily::RadicalHyperplane {
                i,
                j,
                multiplicity,
                hyperplane,
            } => {
                let h = match hyperplane {
                    Some(v) => v
                        .iter()
                        .map(|c| field.format(c))
                        .collect::<Vec<_>>()
                        .join(","),
                    None => "param".into(),
                };
                format!(
                    "component={},{} m={multiplicity} hyperplane={h}",
                    i + 1,
                    j + 1
                )
            }
            MaximalFamily::SubfieldCentralizer { block, degree } => {
                format!("block={} degree={degree}", block + 1)
            }
        };
        format!(
            "family kind={} {body} codim={}",
            self.kind_name(),
            self.codim(dims)
        )
    }

    /// Parse a record produced by [`MaximalFamily::record`]; `codim` is
    /// ignored on input.
    pub fn parse(field: &F, line: &str) -> Result<Self> {
        let mut kv = std::collections::BTreeMap::new();
        let mut words = line.split_whitespace();
        if words.next() != Some("family") {
            return Err(Error::Parse(
                "family record must start with 'family'".into(),
            ));
        }
        for w in words {
            let (k, v) = w
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, found '{w}'")))?;
            kv.insert(k.to_string(), v.to_string());
        }
        let get = |k: &str| {
            kv.get(k)
                .ok_or_else(|| Error::Parse(format!("missing '{k}'")))
        };
        let num = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .map_err(|_| Error::Parse(format!("'{s}' is not a nonnegative integer")))
        };
        let block = |s: &str| -> Result<usize> {
            num(s)?
                .checked_sub(1)
                .ok_or_else(|| Error::Parse("block numbers start at 1".into()))
        };
        let pair = |s: &str| -> Result<(usize, usize)> {
            let (a, b) = s
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("expected a pair, found '{s}'")))?;
            Ok((block(a)?, block(b)?))
        };
        match get("kind")?.as_str() {
            "block-triangular" => Ok(MaximalFamily::BlockTriangular {
                block: block(get("block")?)?,
                k: num(get("k")?)?,
            }),
            "diagonal-merge" => {
                let (i, j) = pair(get("blocks")?)?;
                Ok(MaximalFamily::DiagonalMerge { i, j })
            }
            "radical-hyperplane" => {
                let (i, j) = pair(get("component")?)?;
                let h = get("hyperplane")?;
                let hyperplane = if h == "param" {
                    None
                } else {
                    Some(
                        h.split(',')
                            .map(|c| {
                                field
                                    .parse(c)
                                    .ok_or_else(|| Error::Parse(format!("bad coefficient '{c}'")))
                            })
                            .collect::<Result<Vec<_>>>()?,
                    )
                };
                let multiplicity = match kv.get("m") {
                    Some(m) => num(m)?,
                    None => hyperplane.as_ref().map_or(0, |v| v.len()),
                };
                Ok(MaximalFamily::RadicalHyperplane {
                    i,
                    j,
                    multiplicity,
                    hyperplane,
                })
            }
            "subfield-centralizer" => Ok(MaximalFamily::SubfieldCentralizer {
                block: block(get("block")?)?,
                degree: num(get("degree")?)?,
            }),
            other => Err(Error::Parse(format!("unknown family kind '{other}'"))),
        }
    }
}

/// The (i,j) component of J/J²: multiplicity m and elements of
/// E^i_11 J E^j_11 whose classes form a basis of the multiplicity space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleComponent<F: Field> {
    pub i: usize,
    pub j: usize,
    pub multiplicity: usize,
    pub generators: Vec<Vector<F>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleComponentData {
    /// (i, j, m_ij) for every pair of blocks, including m_ij = 0.
    pub multiplicities: Vec<(usize, usize, usize)>,
    pub top_dim: usize,
}

impl BimoduleComponentData {
    /// Σ m_ij n_i n_j = dim J/J².
    pub fn is_consistent(&self, dims: &[usize]) -> bool {
        self.multiplicities
            .iter()
            .map(|&(i, j, m)| m * dims[i] * dims[j])
            .sum::<usize>()
            == self.top_dim
    }
}

/// Everything needed to build maximal subalgebras of one algebra.
#[derive(Clone, Debug)]
pub struct MaximalContext<F: Field> {
    pub algebra: Algebra<F>,
    pub wm: WedderburnMalcev<F>,
    pub radical_sq: Subspace<F>,
    pub block_idempotents: Vec<Vector<F>>,
    pub components: Vec<BimoduleComponent<F>>,
}

impl<F: Field> MaximalContext<F> {
    pub fn new(b: &Algebra<F>, seed: u64) -> Result<Self> {
        let wm = wedderburn_malcev(b, seed)?;
        let f = b.field();
        let j = wm.report.radical.clone();
        let radical_sq = product_space(b, &j, &j);
        let block_idempotents = wm.block_idempotents(f, b.dim());
        let t = wm.units.len();
        let mut components = Vec::new();
        for i in 0..t {
            for k in 0..t {
                let (ei, ek) = (&wm.units[i][0][0], &wm.units[k][0][0]);
                let mut span = radical_sq.clone();
                let mut generators = Vec::new();
                for x in j.basis() {
                    let u = b.mul(&b.mul(ei, x), ek);
                    if !span.contains(&u) {
                        span = span.sum(&Subspace::span(f, b.dim(), std::slice::from_ref(&u)))?;
                        generators.push(u);
                    }
                }
                components.push(BimoduleComponent {
                    i,
                    j: k,
                    multiplicity: generators.len(),
                    generators,
                });
            }
        }
        Ok(MaximalContext {
            algebra: b.clone(),
            wm,
            radical_sq,
            block_idempotents,
            components,
        })
    }

    pub fn radical(&self) -> &Subspace<F> {
        &self.wm.report.radical
    }

    pub fn block_dims(&self) -> Vec<usize> {
        self.wm.report.block_dims()
    }

    pub fn component_data(&self) -> BimoduleComponentData {
        BimoduleComponentData {
            multiplicities: self
                .components
                .iter()
                .map(|c| (c.i, c.j, c.multiplicity))
                .collect(),
            top_dim: self.radical().dim() - self.radical_sq.dim(),
        }
    }

    pub fn component(&self, i: usize, j: usize) -> Option<&BimoduleComponent<F>> {
        self.components.iter().find(|c| c.i == i && c.j == j)
    }

    /// All families: block-triangular, diagonal merges, radical hyperplanes
    /// (enumerated over finite fields, parameterized over Q) and, over
    /// finite fields, subfield centralizers.
    pub fn enumerate(&self) -> Result<Vec<MaximalFamily<F>>> {
        let f = self.algebra.field();
        let dims = self.block_dims();
        let mut out = Vec::new();
        for (block, &n) in dims.iter().enumerate() {
            for k in 1..n {
                out.push(MaximalFamily::BlockTriangular { block, k });
            }
        }
        for i in 0..dims.len() {
            for j in i + 1..dims.len() {
                if dims[i] == dims[j] {
                    out.push(MaximalFamily::DiagonalMerge { i, j });
                }
            }
        }
        for c in self.components.iter().filter(|c| c.multiplicity > 0) {
            if f.order().is_some() {
                for h in projective_points(f, c.multiplicity)? {
                    out.push(MaximalFamily::RadicalHyperplane {
                        i: c.i,
                        j: c.j,
                        multiplicity: c.multiplicity,
                        hyperplane: Some(h),
                    });
                }
            } else {
                out.push(MaximalFamily::RadicalHyperplane {
                    i: c.i,
                    j: c.j,
                    multiplicity: c.multiplicity,
                    hyperplane: None,
                });
            }
        }
        if f.order().is_some() {
            for (block, &n) in dims.iter().enumerate() {
                for d in
                    (2..=n).filter(|&d| n % d == 0 && crate::exactla::field::is_prime(d as u64))
                {
                    out.push(MaximalFamily::SubfieldCentralizer { block, degree: d });
                }
            }
        }
        Ok(out)
    }

    fn unit_span(&self, block: usize, keep: impl Fn(usize, usize) -> bool) -> Vec<Vector<F>> {
        let u = &self.wm.units[block];
        let n = u.len();
        let mut out = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if keep(p, q) {
                    out.push(u[p][q].clone());
                }
            }
        }
        out
    }

    fn other_blocks(&self, skip: &[usize]) -> Vec<Vector<F>> {
        (0..self.wm.units.len())
            .filter(|b| !skip.contains(b))
            .flat_map(|b| self.unit_span(b, |_, _| true))
            .collect()
    }

    /// Image of an n×n matrix of block `block` under the lifted units.
    fn embed_matrix(&self, block: usize, m: &Matrix<F>) -> Vector<F> {
        let f = self.algebra.field();
        let u = &self.wm.units[block];
        let mut out = zero_vec(f, self.algebra.dim());
        for (p, row) in u.iter().enumerate() {
            for (q, e) in row.iter().enumerate() {
                axpy(f, &mut out, m.get(p, q), e);
            }
        }
        out
    }

    /// A concrete member. `params` overrides (or supplies, over Q) the
    /// hyperplane functional of a radical-hyperplane family.
    pub fn instantiate(
        &self,
        fam: &MaximalFamily<F>,
        params: Option<&[F::Elem]>,
    ) -> Result<Subalgebra<F>> {
        let b = &self.algebra;
        let f = b.field();
        let d = b.dim();
        let dims = self.block_dims();
        let t = dims.len();
        let check_block = |i: usize| {
            if i < t {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!(
                    "block {} does not exist",
                    i + 1
                )))
            }
        };
        let j = self.radical();
        let mut vs: Vec<Vector<F>> = Vec::new();
        match fam {
            &MaximalFamily::BlockTriangular { block, k } => {
                check_block(block)?;
                if k == 0 || k >= dims[block] {
                    return Err(Error::InvalidParams(format!(
                        "need 1 <= k < {}",
                        dims[block]
                    )));
                }
                vs.extend(self.unit_span(block, |p, q| p < k || q >= k));
                vs.extend(self.other_blocks(&[block]));
                vs.extend(j.basis().iter().cloned());
            }
            &MaximalFamily::DiagonalMerge { i, j: jj } => {
                check_block(i)?;
                check_block(jj)?;
                if i == jj || dims[i] != dims[jj] {
                    return Err(Error::InvalidParams(
                        "diagonal merge needs two distinct blocks of equal size".into(),
                    ));
                }
                let n = dims[i];
                for p in 0..n {
                    for q in 0..n {
                        let mut x = self.wm.units[i][p][q].clone();
                        axpy(f, &mut x, &f.one(), &self.wm.units[jj][p][q]);
                        vs.push(x);
                    }
                }
                vs.extend(self.other_blocks(&[i, jj]));
                vs.extend(j.basis().iter().cloned());
            }
            MaximalFamily::RadicalHyperplane {
                i,
                j: jj,
                hyperplane,
                ..
            } => {
                let (i, jj) = (*i, *jj);
                check_block(i)?;
                check_block(jj)?;
                let comp = self
                    .component(i, jj)
                    .filter(|c| c.multiplicity > 0)
                    .ok_or_else(|| {
                        Error::InvalidParams(format!(
                            "component ({},{}) of J/J² is zero",
                            i + 1,
                            jj + 1
                        ))
                    })?;
                let phi: Vector<F> = match (params, hyperplane) {
                    (Some(p), _) => p.to_vec(),
                    (None, Some(h)) => h.clone(),
                    (None, None) => {
                        return Err(Error::InvalidParams(
                            "hyperplane coordinates are required over Q".into(),
                        ))
                    }
                };
                if phi.len() != comp.multiplicity || phi.iter().all(|c| f.is_zero(c)) {
                    return Err(Error::InvalidParams(format!(
                        "hyperplane needs {} coordinates, not all zero",
                        comp.multiplicity
                    )));
                }
                let w = kernel(&Matrix::from_rows(f, comp.multiplicity, &[phi])?);
                vs.extend(self.wm.complement.basis().iter().cloned());
                vs.extend(self.radical_sq.basis().iter().cloned());
                for k in 0..t {
                    for l in 0..t {
                        if (k, l) != (i, jj) {
                            for x in j.basis() {
                                let y = b.mul(
                                    &b.mul(&self.block_idempotents[k], x),
                                    &self.block_idempotents[l],
                                );
                                vs.push(y);
                            }
                        }
                    }
                }
                let (ui, uj) = (&self.wm.units[i], &self.wm.units[jj]);
                for c in w.basis() {
                    let mut wv = zero_vec(f, d);
                    for (coef, g) in c.iter().zip(&comp.generators) {
                        axpy(f, &mut wv, coef, g);
                    }
                    for row in ui {
                        for q in 0..uj.len() {
                            vs.push(b.mul(&b.mul(&row[0], &wv), &uj[0][q]));
                        }
                    }
                }
            }
            &MaximalFamily::SubfieldCentralizer { block, degree } => {
                check_block(block)?;
                let n = dims[block];
                if f.order().is_none() {
                    return Err(Error::UnsupportedField(
                        "subfield centralizers are built over finite fields only".into(),
                    ));
                }
                if degree < 2 || !n.is_multiple_of(degree) || !crate::exactla::field::is_prime(degree as u64)
                {
                    return Err(Error::InvalidParams(format!(
                        "degree must be a prime divisor of {n}"
                    )));
                }
                let m = matrix_algebra(n, f);
                let t_mat = subfield_generator(f, n, degree)?;
                let field_gen = subalgebra_generated(&m, &[matrix_to_vector(&t_mat)]);
                let cent = centralizer(&m, field_gen.space());
                for x in cent.basis() {
                    vs.push(self.embed_matrix(block, &Matrix::from_flat(f, n, n, x.clone())));
                }
                vs.extend(self.other_blocks(&[block]));
                vs.extend(j.basis().iter().cloned());
            }
        }
        Subalgebra::new(b, Subspace::span(f, d, &vs))
    }
}

/// First monic irreducible polynomial of the given degree, in lexicographic
/// order of its lower coefficients.
pub fn irreducible_polynomial<F: Field>(f: &F, degree: usize) -> Result<Vec<F::Elem>> {
    let cands = crate::exactla::all_vectors(f, degree)?;
    let monic = |mut c: Vec<F::Elem>| {
        c.push(f.one());
        c
    };
    let small: Vec<Vec<F::Elem>> = (1..=degree / 2)
        .flat_map(|k| {
            crate::exactla::all_vectors(f, k)
                .unwrap_or_default()
                .into_iter()
                .map(monic)
        })
        .collect();
    for c in cands {
        let p = monic(c);
        if small
            .iter()
            .all(|g| poly::degree(f, &poly::divrem(f, &p, g).1).is_some())
        {
            return Ok(p);
        }
    }
    Err(Error::InvalidParams(format!(
        "no irreducible polynomial of degree {degree}"
    )))
}

/// companion(f) ⊗ I_{n/d}: generates a copy of the field of order p^d.
fn subfield_generator<F: Field>(f: &F, n: usize, d: usize) -> Result<Matrix<F>> {
    let p = irreducible_polynomial(f, d)?;
    let mut c = Matrix::zeros(f, d, d);
    for r in 1..d {
        c.set(r, r - 1, f.one());
    }
    for r in 0..d {
        c.set(r, d - 1, f.neg(&p[r]));
    }
    let reps = n / d;
    let mut t = Matrix::zeros(f, n, n);
    for r in 0..d {
        for s in 0..d {
            for k in 0..reps {
                t.set(r * reps + k, s * reps + k, c.get(r, s).clone());
            }
        }
    }
    Ok(t)
}

pub fn enumerate_maximal_families<F: Field>(
    b: &Algebra<F>,
    seed: u64,
) -> Result<Vec<MaximalFamily<F>>> {
    MaximalContext::new(b, seed)?.enumerate()
}

/// dim(B) − 1 − max(n_1 − 2, 0), with n_1 the smallest block size.
pub fn max_proper_subalgebra_dim<F: Field>(b: &Algebra<F>, seed: u64) -> Result<usize> {
    if b.dim() < 2 {
        return Err(Error::TooSmall(b.dim()));
    }
    let report = analyze(b, seed)?;
    let n1 = report.block_dims().into_iter().min().unwrap_or(1);
    Ok(b.dim() - 1 - n1.saturating_sub(2))
}

impl fmt::Display for BimoduleComponentData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .multiplicities
            .iter()
            .filter(|(_, _, m)| *m > 0)
            .map(|(i, j, m)| format!("({},{}):{m}", i + 1, j + 1))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_algebra, matrix_product_algebra};
    use crate::exactla::{PrimeField, Rationals};
    use crate::presentations::{path_algebra, PathAlgebraPresentation, Quiver};

    #[test]
    fn matrix_families() {
        let q = Rationals;
        let fams = enumerate_maximal_families(&matrix_algebra(2, &q), 0).unwrap();
        assert_eq!(
            fams,
            vec![MaximalFamily::BlockTriangular { block: 0, k: 1 }]
        );
        let f2 = PrimeField::new(2).unwrap();
        let fams = enumerate_maximal_families(&matrix_algebra(2, &f2), 0).unwrap();
        assert_eq!(
            fams,
            vec![
                MaximalFamily::BlockTriangular { block: 0, k: 1 },
                MaximalFamily::SubfieldCentralizer {
                    block: 0,
                    degree: 2
                }
            ]
        );
        let ctx = MaximalContext::new(&matrix_algebra(2, &f2), 0).unwrap();
        let c = ctx.instantiate(&fams[1], None).unwrap();
        assert_eq!(c.dim(), 2);
    }

    #[test]
    fn kronecker_families() {
        let q = Rationals;
        let k = path_algebra(
            &PathAlgebraPresentation::free(Quiver::kronecker()).unwrap(),
            &q,
        )
        .unwrap();
        let ctx = MaximalContext::new(&k, 0).unwrap();
        let fams = ctx.enumerate().unwrap();
        assert_eq!(fams.len(), 2);
        assert!(ctx.component_data().is_consistent(&ctx.block_dims()));
        let rh = &fams[1];
        assert!(matches!(
            rh,
            MaximalFamily::RadicalHyperplane {
                multiplicity: 2,
                hyperplane: None,
                ..
            }
        ));
        assert!(ctx.instantiate(rh, None).is_err());
        let a = ctx.instantiate(rh, Some(&[q.zero(), q.one()])).unwrap();
        assert_eq!(a.dim(), 3);
        assert!(a.contains(&k.element(&[("alpha1", 1)])));
        let merge = ctx.instantiate(&fams[0], None).unwrap();
        assert_eq!(merge.dim(), 3);
    }

    #[test]
    fn records_round_trip() {
        let f3 = PrimeField::new(3).unwrap();
        let dims = [1, 2];
        let fams = vec![
            MaximalFamily::BlockTriangular { block: 1, k: 1 },
            MaximalFamily::DiagonalMerge { i: 0, j: 1 },
            MaximalFamily::RadicalHyperplane {
                i: 0,
                j: 1,
                multiplicity: 2,
                hyperplane: Some(vec![1, 2]),
            },
            MaximalFamily::SubfieldCentralizer {
                block: 1,
                degree: 2,
            },
        ];
        for fam in fams {
            let rec = fam.record(&f3, &dims);
            assert_eq!(MaximalFamily::parse(&f3, &rec).unwrap(), fam, "{rec}");
        }
    }

    #[test]
    fn max_dims() {
        let q = Rationals;
        for n in 2..=4 {
            assert_eq!(
                max_proper_subalgebra_dim(&matrix_algebra(n, &q), 0).unwrap(),
                n * n - n + 1
            );
        }
        assert_eq!(
            max_proper_subalgebra_dim(&matrix_product_algebra(&[1, 1], &q), 0).unwrap(),
            1
        );
        assert!(matches!(
            max_proper_subalgebra_dim(&matrix_algebra(1, &q), 0),
            Err(Error::TooSmall(1))
        ));
    }

    #[test]
    fn families_match_oracle_classes() {
        let f2 = PrimeField::new(2).unwrap();
        let algebras = vec![
            matrix_algebra(2, &f2),
            matrix_product_algebra(&[1, 1], &f2),
            path_algebra(
                &PathAlgebraPresentation::free(Quiver::kronecker()).unwrap(),
                &f2,
            )
            .unwrap(),
            path_algebra(
                &PathAlgebraPresentation::free(Quiver::linear(3)).unwrap(),
                &f2,
            )
            .unwrap(),
        ];
        for b in algebras {
            let ctx = MaximalContext::new(&b, 7).unwrap();
            let oracle = brute_force_maximal(&b, 9).unwrap();
            let mut hit = vec![0; oracle.class_count];
            for fam in ctx.enumerate().unwrap() {
                let a = ctx.instantiate(&fam, None).unwrap();
                assert_eq!(b.dim() - a.dim(), fam.codim(&ctx.block_dims()));
                hit[oracle.class_id(&a).expect("instance is maximal")] += 1;
            }
            assert!(hit.iter().all(|&h| h == 1), "{hit:?}");
        }
    }

    #[test]
    fn irreducibles() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(irreducible_polynomial(&f2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(irreducible_polynomial(&f2, 3).unwrap(), vec![1, 0, 1, 1]);
    }
}
