use std::collections::HashMap;

use num_rational::BigRational;

use super::radical_of_labels;
use crate::algebra::{product_space, Algebra, PathLabel, PathLabels, Presentation, Subalgebra};
use crate::error::{Error, Result};
use crate::exactla::matrix::{axpy, unit_vec, zero_vec};
use crate::exactla::{Field, Subspace, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// A path given by its arrows in traversal order; vertices are the paths of
/// length 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `next`, if they meet.
    pub fn then(&self, next: &Path) -> Option<Path> {
        (self.target == next.source).then(|| Path {
            source: self.source,
            target: next.target,
            arrows: self.arrows.iter().chain(&next.arrows).copied().collect(),
        })
    }
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidParams(format!("duplicate vertex {v}")));
            }
        }
        let mut names = HashMap::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            let source = *seen.get(&s).ok_or_else(|| Error::UnknownName(s.clone()))?;
            let target = *seen.get(&t).ok_or_else(|| Error::UnknownName(t.clone()))?;
            if names.insert(name.clone(), ()).is_some() || seen.contains_key(&name) {
                return Err(Error::InvalidParams(format!("duplicate arrow name {name}")));
            }
            out.push(Arrow {
                name,
                source,
                target,
            });
        }
        Ok(Quiver {
            vertices,
            arrows: out,
        })
    }

    /// Linear quiver 1 → 2 → ... → n with arrows named a, b, c, ...
    pub fn linear(n: usize) -> Self {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n)
            .map(|i| (arrow_letter(i - 1), i.to_string(), (i + 1).to_string()))
            .collect();
        Self::new(vertices, arrows).expect("well-formed linear quiver")
    }

    /// Two vertices joined by two parallel arrows alpha1, alpha2 : 1 → 2.
    pub fn kronecker() -> Self {
        Self::new(
            vec!["1".into(), "2".into()],
            vec![
                ("alpha1".into(), "1".into(), "2".into()),
                ("alpha2".into(), "1".into(), "2".into()),
            ],
        )
        .expect("well-formed Kronecker quiver")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn vertex_path(&self, v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    /// Display name: vertices are `e_<v>`, longer paths list their arrows
    /// right to left, so `b.a` is a followed by b.
    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e_{}", self.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .rev()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// Parse `b.a` (a then b) or `e_v`.
    pub fn parse_path(&self, s: &str) -> Result<Path> {
        let s = s.trim();
        if let Some(v) = s.strip_prefix("e_") {
            if let Ok(i) = self.vertex_index(v) {
                return Ok(self.vertex_path(i));
            }
        }
        let mut arrows = Vec::new();
        for name in s.split('.').rev() {
            arrows.push(self.arrow_index(name.trim())?);
        }
        let mut p = Path {
            source: self.arrows[arrows[0]].source,
            target: self.arrows[arrows[0]].target,
            arrows: vec![arrows[0]],
        };
        for &a in &arrows[1..] {
            let step = Path {
                source: self.arrows[a].source,
                target: self.arrows[a].target,
                arrows: vec![a],
            };
            p = p
                .then(&step)
                .ok_or_else(|| Error::InvalidParams(format!("{s} is not a path")))?;
        }
        Ok(p)
    }

    /// All paths of each length 0..=max_len, in a fixed order.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Vec<Path>> {
        let mut out = vec![(0..self.vertices.len())
            .map(|v| self.vertex_path(v))
            .collect::<Vec<_>>()];
        for _ in 0..max_len {
            let prev = out.last().expect("nonempty");
            let mut next = Vec::new();
            for p in prev {
                for (ai, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(Path {
                            source: p.source,
                            target: a.target,
                            arrows,
                        });
                    }
                }
            }
            out.push(next);
        }
        out
    }

    /// reach[k][l]: there is a path from k to l (reflexive).
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.vertices.len();
        let mut r = vec![vec![false; n]; n];
        for (k, row) in r.iter_mut().enumerate() {
            row[k] = true;
        }
        for a in &self.arrows {
            r[a.source][a.target] = true;
        }
        for m in 0..n {
            for k in 0..n {
                if r[k][m] {
                    for l in 0..n {
                        if r[m][l] {
                            r[k][l] = true;
                        }
                    }
                }
            }
        }
        r
    }

    pub fn is_acyclic(&self) -> bool {
        let r = self.reachability();
        self.arrows.iter().all(|a| !r[a.target][a.source])
    }

    /// Length of the longest path, for acyclic quivers.
    pub fn longest_path(&self) -> Option<usize> {
        if !self.is_acyclic() {
            return None;
        }
        let paths = self.paths_up_to(self.vertices.len());
        Some(paths.iter().rposition(|ps| !ps.is_empty()).unwrap_or(0))
    }

    /// Whether the underlying undirected graph is a tree.
    pub fn is_tree(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 || self.arrows.len() + 1 != n {
            return false;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if x == y {
                return false;
            }
            parent[x] = y;
        }
        true
    }
}

fn arrow_letter(i: usize) -> String {
    let letters = "abcdefghijklmnopqrstuvwxyz".as_bytes();
    if i < letters.len() {
        (letters[i] as char).to_string()
    } else {
        format!("x{i}")
    }
}

/// A linear combination of paths with rational coefficients.
pub type Relation = Vec<(BigRational, Path)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathAlgebraPresentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
    pub nilpotency_bound: usize,
}

impl PathAlgebraPresentation {
    /// The bound defaults to longest path + 1 on acyclic quivers and is
    /// required otherwise.
    pub fn new(quiver: Quiver, relations: Vec<Relation>, bound: Option<usize>) -> Result<Self> {
        for r in &relations {
            if let Some((_, p)) = r.iter().find(|(_, p)| p.len() < 2) {
                return Err(Error::NotAdmissible(format!(
                    "relation term {} has length below 2",
                    quiver.path_name(p)
                )));
            }
        }
        let nilpotency_bound = match (bound, quiver.longest_path()) {
            (Some(l), _) => l,
            (None, Some(l)) => l + 1,
            (None, None) => {
                return Err(Error::NotAdmissible(
                    "a cyclic quiver needs an explicit nilpotency bound".into(),
                ))
            }
        };
        if nilpotency_bound == 0 {
            return Err(Error::NotAdmissible(
                "nilpotency bound must be positive".into(),
            ));
        }
        Ok(PathAlgebraPresentation {
            quiver,
            relations,
            nilpotency_bound,
        })
    }

    pub fn free(quiver: Quiver) -> Result<Self> {
        Self::new(quiver, Vec::new(), None)
    }
}

fn rational_to<F: Field>(f: &F, r: &BigRational) -> Result<F::Elem> {
    f.parse(&r.to_string()).ok_or_else(|| {
        Error::InvalidParams(format!("coefficient {r} is not defined in {}", f.spec()))
    })
}

/// A path algebra together with the path chosen for each basis element.
#[derive(Clone, Debug)]
pub struct PathAlgebra<F: Field> {
    pub algebra: Algebra<F>,
    pub basis_paths: Vec<Path>,
}

/// KQ/I, truncated at the nilpotency bound L. Paths are reduced modulo the
/// span of u·r·v with longer paths eliminated first, so the basis consists
/// of the shortest surviving paths.
pub fn path_algebra<F: Field>(p: &PathAlgebraPresentation, field: &F) -> Result<Algebra<F>> {
    Ok(build_path_algebra(p, field)?.algebra)
}

pub fn build_path_algebra<F: Field>(
    p: &PathAlgebraPresentation,
    field: &F,
) -> Result<PathAlgebra<F>> {
    let q = &p.quiver;
    let l = p.nilpotency_bound;
    let by_len = q.paths_up_to(l);
    // Columns ordered longest first.
    let cols: Vec<Path> = by_len.iter().rev().flatten().cloned().collect();
    let index: HashMap<Path, usize> = cols
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let n = cols.len();

    let mut rels = Vec::new();
    let all: Vec<&Path> = by_len.iter().flatten().collect();
    for r in &p.relations {
        let coeffs: Vec<(F::Elem, &Path)> = r
            .iter()
            .map(|(c, path)| Ok((rational_to(field, c)?, path)))
            .collect::<Result<_>>()?;
        for v in &all {
            for u in &all {
                let mut vec = zero_vec(field, n);
                let mut any = false;
                for (c, comp) in &coeffs {
                    if let Some(w) = v.then(comp).and_then(|x| x.then(u)) {
                        if w.len() <= l {
                            axpy(field, &mut vec, c, &unit_vec(field, n, index[&w]));
                            any = true;
                        }
                    }
                }
                if any {
                    rels.push(vec);
                }
            }
        }
    }
    let ideal = Subspace::span(field, n, &rels);
    if let Some(w) = by_len[l]
        .iter()
        .find(|w| !ideal.contains(&unit_vec(field, n, index[*w])))
    {
        return Err(Error::NotAdmissible(format!(
            "path {} of length {l} does not vanish",
            q.path_name(w)
        )));
    }

    let mut basis: Vec<(usize, Path)> = ideal
        .free_columns()
        .into_iter()
        .map(|c| (c, cols[c].clone()))
        .collect();
    let order: HashMap<&Path, usize> = by_len
        .iter()
        .flatten()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    basis.sort_by_key(|(_, p)| order[p]);
    let free = ideal.free_columns();
    // position in the quotient coordinates -> position in the sorted basis
    let perm: Vec<usize> = free
        .iter()
        .map(|c| {
            basis
                .iter()
                .position(|(bc, _)| bc == c)
                .expect("free column")
        })
        .collect();
    let d = basis.len();
    let reduce = |w: Option<Path>| -> Vector<F> {
        let mut out = zero_vec(field, d);
        if let Some(w) = w.filter(|w| w.len() <= l) {
            let qc = ideal.quotient_coords(&unit_vec(field, n, index[&w]));
            for (i, c) in qc.into_iter().enumerate() {
                out[perm[i]] = c;
            }
        }
        out
    };

    let paths: Vec<Path> = basis.iter().map(|(_, p)| p.clone()).collect();
    let names = paths.iter().map(|w| q.path_name(w)).collect();
    let mut unit = zero_vec(field, d);
    for (i, w) in paths.iter().enumerate() {
        if w.is_empty() {
            unit[i] = field.one();
        }
    }
    // b_i · b_j is b_j followed by b_i.
    let algebra = Algebra::from_fn(field, names, unit, |i, j| reduce(paths[j].then(&paths[i])))?;
    let labels = PathLabels {
        vertices: q.vertices().to_vec(),
        basis: paths
            .iter()
            .map(|w| PathLabel {
                source: w.source,
                target: w.target,
                length: w.len(),
            })
            .collect(),
    };
    Ok(PathAlgebra {
        algebra: algebra.with_presentation(Presentation::Quiver(labels)),
        basis_paths: paths,
    })
}

/// The two kinds of maximal subalgebra of a basic algebra KQ/I.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverMaximal<F: Field> {
    /// A′(a,b): vertices a and b merged, radical kept.
    Merge(String, String),
    /// A(a,b,V) for V a hyperplane in the arrow space V(a,b), given by a
    /// spanning set in coordinates of the arrows a → b (quiver order).
    SplitHyperplane(String, String, Vec<Vector<F>>),
}

/// Arrows from a to b, as basis indices of the path algebra.
pub fn arrow_space<F: Field>(
    q: &Quiver,
    b: &Algebra<F>,
    source: usize,
    target: usize,
) -> Vec<usize> {
    q.arrows()
        .iter()
        .filter(|a| a.source == source && a.target == target)
        .map(|a| {
            b.basis_index(&a.name)
                .expect("arrows survive admissible relations")
        })
        .collect()
}

pub fn quiver_maximal<F: Field>(
    p: &PathAlgebraPresentation,
    b: &Algebra<F>,
    kind: &QuiverMaximal<F>,
) -> Result<Subalgebra<F>> {
    let labels = b.presentation().labels().ok_or(Error::NoPresentation)?;
    let f = b.field();
    let d = b.dim();
    let q = &p.quiver;
    let vertex_basis = labels.vertex_basis();
    let j = radical_of_labels(f, labels);
    let mut vs: Vec<Vector<F>> = Vec::new();
    match kind {
        QuiverMaximal::Merge(a, c) => {
            let (ia, ic) = (q.vertex_index(a)?, q.vertex_index(c)?);
            if ia == ic {
                return Err(Error::InvalidParams("merged vertices must differ".into()));
            }
            for (v, &bi) in vertex_basis.iter().enumerate() {
                if v != ia && v != ic {
                    vs.push(unit_vec(f, d, bi));
                }
            }
            let mut merged = unit_vec(f, d, vertex_basis[ia]);
            merged[vertex_basis[ic]] = f.one();
            vs.push(merged);
            vs.extend(j.basis().iter().cloned());
        }
        QuiverMaximal::SplitHyperplane(a, c, hyper) => {
            let (ia, ic) = (q.vertex_index(a)?, q.vertex_index(c)?);
            let arrows = arrow_space(q, b, ia, ic);
            if arrows.is_empty() {
                return Err(Error::ZeroArrowSpace(a.clone(), c.clone()));
            }
            let bad_len = hyper.iter().any(|v| v.len() != arrows.len());
            let h = Subspace::span(f, arrows.len(), if bad_len { &[] } else { hyper });
            if bad_len || h.dim() + 1 != arrows.len() {
                return Err(Error::InvalidParams(format!(
                    "V must be a hyperplane of the {}-dimensional arrow space",
                    arrows.len()
                )));
            }
            for &bi in &vertex_basis {
                vs.push(unit_vec(f, d, bi));
            }
            for v in h.basis() {
                let mut x = zero_vec(f, d);
                for (c, &bi) in v.iter().zip(&arrows) {
                    x[bi] = c.clone();
                }
                vs.push(x);
            }
            for (i, l) in labels.basis.iter().enumerate() {
                if l.length == 1 && !(l.source == ia && l.target == ic) {
                    vs.push(unit_vec(f, d, i));
                }
            }
            vs.extend(product_space(b, &j, &j).basis().iter().cloned());
        }
    }
    Subalgebra::new(b, Subspace::span(f, d, &vs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_closed;
    use crate::exactla::{PrimeField, Rationals};

    #[test]
    fn linear_a3_basis() {
        let q = Rationals;
        let p = PathAlgebraPresentation::free(Quiver::linear(3)).unwrap();
        let b = path_algebra(&p, &q).unwrap();
        assert_eq!(b.names(), &["e_1", "e_2", "e_3", "a", "b", "b.a"]);
        assert!(b.validate().is_valid());
        let a = b.element(&[("a", 1)]);
        let bb = b.element(&[("b", 1)]);
        assert_eq!(b.mul(&bb, &a), b.element(&[("b.a", 1)]));
        assert!(b.mul(&a, &bb).iter().all(|c| q.is_zero(c)));
    }

    #[test]
    fn kronecker_and_point() {
        let q = Rationals;
        let k = path_algebra(
            &PathAlgebraPresentation::free(Quiver::kronecker()).unwrap(),
            &q,
        )
        .unwrap();
        assert_eq!(k.dim(), 4);
        let pt = Quiver::new(vec!["v".into()], vec![]).unwrap();
        assert_eq!(
            path_algebra(&PathAlgebraPresentation::free(pt).unwrap(), &q)
                .unwrap()
                .dim(),
            1
        );
    }

    #[test]
    fn commutative_square_relation() {
        let f3 = PrimeField::new(3).unwrap();
        let sq = Quiver::new(
            ["1", "2", "3", "4"].iter().map(|s| s.to_string()).collect(),
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "4".into()),
                ("c".into(), "1".into(), "3".into()),
                ("d".into(), "3".into(), "4".into()),
            ],
        )
        .unwrap();
        let rel = vec![
            (
                BigRational::from_integer(1.into()),
                sq.parse_path("b.a").unwrap(),
            ),
            (
                BigRational::from_integer((-1).into()),
                sq.parse_path("d.c").unwrap(),
            ),
        ];
        let p = PathAlgebraPresentation::new(sq, vec![rel], None).unwrap();
        let b = path_algebra(&p, &f3).unwrap();
        assert_eq!(b.dim(), 9);
        assert!(b.validate().is_valid());
    }

    #[test]
    fn rejects_short_relations_and_loops_without_bound() {
        let lp = Quiver::new(vec!["1".into()], vec![("x".into(), "1".into(), "1".into())]).unwrap();
        assert!(matches!(
            PathAlgebraPresentation::new(lp.clone(), vec![], None),
            Err(Error::NotAdmissible(_))
        ));
        let x2 = vec![(
            BigRational::from_integer(1.into()),
            lp.parse_path("x.x").unwrap(),
        )];
        let p = PathAlgebraPresentation::new(lp.clone(), vec![x2], Some(2)).unwrap();
        assert_eq!(path_algebra(&p, &Rationals).unwrap().dim(), 2);
        let p = PathAlgebraPresentation::new(lp, vec![], Some(3)).unwrap();
        assert!(matches!(
            path_algebra(&p, &Rationals),
            Err(Error::NotAdmissible(_))
        ));
    }

    #[test]
    fn maximal_constructions() {
        let q = Rationals;
        let a2 = PathAlgebraPresentation::free(Quiver::linear(2)).unwrap();
        let b = path_algebra(&a2, &q).unwrap();
        let merge = quiver_maximal(&a2, &b, &QuiverMaximal::Merge("1".into(), "2".into())).unwrap();
        assert_eq!(merge.dim(), 2);
        let split = quiver_maximal(
            &a2,
            &b,
            &QuiverMaximal::SplitHyperplane("1".into(), "2".into(), vec![]),
        )
        .unwrap();
        assert_eq!(split.dim(), 2);
        assert!(quiver_maximal(
            &a2,
            &b,
            &QuiverMaximal::SplitHyperplane("2".into(), "1".into(), vec![])
        )
        .is_err());

        let kr = PathAlgebraPresentation::free(Quiver::kronecker()).unwrap();
        let k = path_algebra(&kr, &q).unwrap();
        let w = vec![vec![q.one(), q.one()]];
        let s = quiver_maximal(
            &kr,
            &k,
            &QuiverMaximal::SplitHyperplane("1".into(), "2".into(), w),
        )
        .unwrap();
        assert_eq!(s.dim(), 3);
        assert!(is_closed(&k, s.space()));
    }

    #[test]
    fn tree_and_cycle_detection() {
        assert!(Quiver::linear(4).is_tree());
        assert!(!Quiver::kronecker().is_tree());
        assert_eq!(Quiver::linear(4).longest_path(), Some(3));
    }
}
