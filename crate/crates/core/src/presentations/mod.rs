//! Algebras presented by quivers with relations and by posets, their
//! canonical maximal subalgebras, and quiver surgery.

mod poset;
mod quiver;
mod surgery;
mod zigzag;

pub use poset::{clamped_check, incidence_algebra, incidence_maximal, IncidenceMaximal, Poset};
pub use quiver::{
    arrow_space, build_path_algebra, path_algebra, quiver_maximal, Arrow, Path, PathAlgebra,
    PathAlgebraPresentation, Quiver, QuiverMaximal, Relation,
};
pub use surgery::{collapse_edge, delete_arrows, Collapse, Deletion};
pub use zigzag::{zigzag_d4_embedding, ZigzagEmbedding};

use crate::algebra::{Algebra, PathLabels};
use crate::error::{Error, Result};
use crate::exactla::matrix::unit_vec;
use crate::exactla::{Field, Subspace, Vector};
use crate::module::Module;

/// Span of the basis elements of positive length.
pub fn radical_of_labels<F: Field>(f: &F, labels: &PathLabels) -> Subspace<F> {
    let d = labels.basis.len();
    let vs: Vec<Vector<F>> = labels
        .basis
        .iter()
        .enumerate()
        .filter(|(_, l)| l.length > 0)
        .map(|(i, _)| unit_vec(f, d, i))
        .collect();
    Subspace::span(f, d, &vs)
}

/// Ranks of the given idempotents acting on the module.
pub fn dimension_vector_for<F: Field>(m: &Module<F>, idempotents: &[Vector<F>]) -> Vec<usize> {
    idempotents.iter().map(|e| m.act(e).rank()).collect()
}

/// (dim e_v M)_v over the vertices of the presentation.
pub fn dimension_vector<F: Field>(m: &Module<F>, b: &Algebra<F>) -> Result<Vec<usize>> {
    let labels = b.presentation().labels().ok_or(Error::NoPresentation)?;
    let idems: Vec<Vector<F>> = labels
        .vertex_basis()
        .into_iter()
        .map(|i| unit_vec(b.field(), b.dim(), i))
        .collect();
    Ok(dimension_vector_for(m, &idems))
}

pub fn is_thin(dims: &[usize]) -> bool {
    dims.iter().all(|&d| d <= 1)
}
