use super::poset::{incidence_algebra, Poset};
use crate::algebra::{Algebra, Subalgebra};
use crate::error::Result;
use crate::exactla::{Field, Matrix, Subspace, Vector};
use crate::module::Module;

/// The zig-zag poset 2 < 1, 2 < 3, 4 < 3, 4 < 5 with a D_4 subalgebra of its
/// incidence algebra obtained by gluing the minima 2 and 4.
#[derive(Clone, Debug)]
pub struct ZigzagEmbedding<F: Field> {
    pub poset: Poset,
    pub ambient: Algebra<F>,
    pub sub: Subalgebra<F>,
    /// [a,b] acts on K^5 as the matrix unit E_ab.
    pub defining_module: Module<F>,
    /// Vertex idempotents of the subalgebra: [1,1], [2,2]+[4,4], [3,3], [5,5].
    pub sub_idempotents: Vec<Vector<F>>,
}

pub fn zigzag_d4_embedding<F: Field>(field: &F) -> Result<ZigzagEmbedding<F>> {
    let poset = Poset::zigzag(5);
    let b = incidence_algebra(&poset, field)?;
    let e = |terms: &[(&str, i64)]| b.element(terms);
    let sub_idempotents = vec![
        e(&[("[1,1]", 1)]),
        e(&[("[2,2]", 1), ("[4,4]", 1)]),
        e(&[("[3,3]", 1)]),
        e(&[("[5,5]", 1)]),
    ];
    let mut span = sub_idempotents.clone();
    span.push(e(&[("[2,1]", 1)]));
    span.push(e(&[("[2,3]", 1), ("[4,3]", 1)]));
    span.push(e(&[("[4,5]", 1)]));
    let sub = Subalgebra::new(&b, Subspace::span(field, b.dim(), &span))?;

    let n = poset.elements().len();
    let action = poset
        .intervals()
        .into_iter()
        .map(|(a, c)| {
            let mut m = Matrix::zeros(field, n, n);
            m.set(a, c, field.one());
            m
        })
        .collect();
    let defining_module = Module::new(&b, n, action)?;
    Ok(ZigzagEmbedding {
        poset,
        ambient: b,
        sub,
        defining_module,
        sub_idempotents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rationals;
    use crate::presentations::{dimension_vector, dimension_vector_for, is_thin};

    #[test]
    fn d4_inside_zigzag() {
        let z = zigzag_d4_embedding(&Rationals).unwrap();
        assert_eq!(z.sub.dim(), 7);
        let dv = dimension_vector(&z.defining_module, &z.ambient).unwrap();
        assert_eq!(dv, vec![1, 1, 1, 1, 1]);
        assert!(is_thin(&dv));
        assert_eq!(
            dimension_vector_for(&z.defining_module, &z.sub_idempotents),
            vec![1, 2, 1, 1]
        );
    }
}
