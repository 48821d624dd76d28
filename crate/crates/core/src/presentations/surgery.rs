//! Edge collapse and arrow deletion on quivers, realized as explicit
//! subalgebra inclusions.

use super::quiver::{build_path_algebra, PathAlgebraPresentation, Quiver};
use crate::algebra::{product_space, Algebra, PathLabel, PathLabels, Presentation, Subalgebra};
use crate::error::{Error, Result};
use crate::exactla::matrix::{unit_vec, zero_vec};
use crate::exactla::{Field, Subspace, Vector};

/// span{E_lk : rel[k][l]} inside M_n, with E_lk named `[l,k]`. Diagonal
/// units come first.
fn relation_algebra<F: Field>(
    field: &F,
    names: &[String],
    rel: &[Vec<bool>],
) -> Result<(Algebra<F>, Vec<(usize, usize)>)> {
    let n = names.len();
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|v| (v, v)).collect();
    for l in 0..n {
        for k in 0..n {
            if k != l && rel[k][l] {
                pairs.push((l, k));
            }
        }
    }
    let d = pairs.len();
    let mut unit = zero_vec(field, d);
    for u in unit.iter_mut().take(n) {
        *u = field.one();
    }
    let labels: Vec<String> = pairs
        .iter()
        .map(|&(l, k)| format!("[{},{}]", names[l], names[k]))
        .collect();
    let alg = Algebra::from_fn(field, labels, unit, |i, j| {
        let ((a, b), (c, e)) = (pairs[i], pairs[j]);
        match (b == c).then(|| pairs.iter().position(|&p| p == (a, e))) {
            Some(Some(k)) => unit_vec(field, d, k),
            Some(None) => unreachable!("relation is transitive"),
            None => zero_vec(field, d),
        }
    })?;
    Ok((alg, pairs))
}

/// The result of collapsing an arrow i → j of a tree quiver.
#[derive(Clone, Debug)]
pub struct Collapse<F: Field> {
    /// Q′: the arrow removed and j identified with i.
    pub quiver: Quiver,
    /// B = span{E_lk : k ⪯ l} where ⪯ is the path order with j ⪯ i added.
    pub ambient: Algebra<F>,
    /// A = span{E_lk : k ≤ l}, isomorphic to KQ.
    pub sub: Subalgebra<F>,
    /// e = Σ_{t ≠ j} E_tt and the corner eBe ≅ KQ′.
    pub corner_idempotent: Vector<F>,
    pub corner: Algebra<F>,
    /// i emits only this arrow and j receives only this arrow.
    pub condition_star: bool,
}

pub fn collapse_edge<F: Field>(q: &Quiver, arrow: &str, field: &F) -> Result<Collapse<F>> {
    if !q.is_tree() {
        return Err(Error::NotTree);
    }
    let ai = q.arrow_index(arrow)?;
    let (i, j) = (q.arrows()[ai].source, q.arrows()[ai].target);
    let n = q.vertices().len();
    let le = q.reachability();
    let mut pre = le.clone();
    for k in 0..n {
        for l in 0..n {
            pre[k][l] = le[k][l] || (le[k][j] && le[i][l]);
        }
    }

    let (ambient, pairs) = relation_algebra(field, q.vertices(), &pre)?;
    let d = ambient.dim();
    let sub_vs: Vec<Vector<F>> = pairs
        .iter()
        .enumerate()
        .filter(|(_, &(l, k))| le[k][l])
        .map(|(t, _)| unit_vec(field, d, t))
        .collect();
    let sub = Subalgebra::new(&ambient, Subspace::span(field, d, &sub_vs))?;

    let mut e = zero_vec(field, d);
    for t in (0..n).filter(|&t| t != j) {
        e[t] = field.one();
    }
    let keep: Vec<usize> = (0..n).filter(|&t| t != j).collect();
    let names: Vec<String> = keep.iter().map(|&t| q.vertices()[t].clone()).collect();
    let rel: Vec<Vec<bool>> = keep
        .iter()
        .map(|&k| keep.iter().map(|&l| pre[k][l]).collect())
        .collect();
    let (corner_alg, corner_pairs) = relation_algebra(field, &names, &rel)?;

    let rename = |v: usize| if v == j { i } else { v };
    let arrows: Vec<(String, String, String)> = q
        .arrows()
        .iter()
        .enumerate()
        .filter(|&(t, _)| t != ai)
        .map(|(_, a)| {
            (
                a.name.clone(),
                q.vertices()[rename(a.source)].clone(),
                q.vertices()[rename(a.target)].clone(),
            )
        })
        .collect();
    let collapsed = Quiver::new(names.clone(), arrows)?;

    // The corner is the incidence algebra of Q′'s reversed path order.
    let reach = collapsed.reachability();
    if rel != reach {
        return Err(Error::VerificationFailed(
            "corner order differs from the collapsed path order".into(),
        ));
    }
    let labels = PathLabels {
        vertices: names,
        basis: corner_pairs
            .iter()
            .map(|&(l, k)| PathLabel {
                source: k,
                target: l,
                length: usize::from(k != l),
            })
            .collect(),
    };
    let corner = corner_alg.with_presentation(Presentation::Incidence(labels));

    let condition_star = q.arrows().iter().filter(|a| a.source == i).count() == 1
        && q.arrows().iter().filter(|a| a.target == j).count() == 1;
    Ok(Collapse {
        quiver: collapsed,
        ambient,
        sub,
        corner_idempotent: e,
        corner,
        condition_star,
    })
}

/// KQ_{-S} ⊂ KQ with its complement.
#[derive(Clone, Debug)]
pub struct Deletion<F: Field> {
    pub quiver: Quiver,
    pub ambient: Algebra<F>,
    pub sub: Subalgebra<F>,
    /// Span of the nontrivial paths meeting S.
    pub complement: Subspace<F>,
    pub square_zero: bool,
}

pub fn delete_arrows<F: Field>(q: &Quiver, s: &[String], field: &F) -> Result<Deletion<F>> {
    if !q.is_acyclic() {
        return Err(Error::Cycle(
            "arrow deletion needs an acyclic quiver".into(),
        ));
    }
    let mut in_s = vec![false; q.vertices().len()];
    for v in s {
        in_s[q.vertex_index(v)?] = true;
    }
    let pa = build_path_algebra(&PathAlgebraPresentation::free(q.clone())?, field)?;
    let b = pa.algebra;
    let d = b.dim();
    let touches = |p: &super::quiver::Path| {
        !p.is_empty() && (in_s[p.source] || p.arrows.iter().any(|&a| in_s[q.arrows()[a].target]))
    };
    let (mut a_vs, mut i_vs) = (Vec::new(), Vec::new());
    for (t, p) in pa.basis_paths.iter().enumerate() {
        if touches(p) {
            i_vs.push(unit_vec(field, d, t));
        } else {
            a_vs.push(unit_vec(field, d, t));
        }
    }
    let sub = Subalgebra::new(&b, Subspace::span(field, d, &a_vs))?;
    let complement = Subspace::span(field, d, &i_vs);
    let square_zero = product_space(&b, &complement, &complement).is_zero();

    let arrows = q
        .arrows()
        .iter()
        .filter(|a| !in_s[a.source] && !in_s[a.target])
        .map(|a| {
            (
                a.name.clone(),
                q.vertices()[a.source].clone(),
                q.vertices()[a.target].clone(),
            )
        })
        .collect();
    Ok(Deletion {
        quiver: Quiver::new(q.vertices().to_vec(), arrows)?,
        ambient: b,
        sub,
        complement,
        square_zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rationals;

    #[test]
    fn collapse_a2() {
        let c = collapse_edge(&Quiver::linear(2), "a", &Rationals).unwrap();
        assert_eq!(c.ambient.dim(), 4);
        assert_eq!(c.sub.dim(), 3);
        assert_eq!(c.quiver.vertices().len(), 1);
        assert_eq!(c.corner.dim(), 1);
        assert!(c.condition_star);
    }

    #[test]
    fn collapse_a4_middle() {
        let c = collapse_edge(&Quiver::linear(4), "b", &Rationals).unwrap();
        assert!(!c.condition_star || c.quiver.arrows().len() == 2);
        // A_3 path algebra has 6 paths.
        assert_eq!(c.corner.dim(), 6);
    }

    #[test]
    fn delete_leaf_and_middle() {
        let q = Rationals;
        let a3 = Quiver::linear(3);
        let leaf = delete_arrows(&a3, &["3".to_string()], &q).unwrap();
        assert!(leaf.square_zero);
        assert_eq!(leaf.sub.dim(), 4);
        // The middle vertex sits at the junction of b.a, so I² ≠ 0.
        let mid = delete_arrows(&a3, &["2".to_string()], &q).unwrap();
        assert_eq!(mid.complement.dim(), 3);
        assert!(!mid.square_zero);
        let all = delete_arrows(&a3, &["1".into(), "2".into(), "3".into()], &q).unwrap();
        assert_eq!(all.sub.dim(), 3);
        assert!(all.quiver.arrows().is_empty());
    }
}
