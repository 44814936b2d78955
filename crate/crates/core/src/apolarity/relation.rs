use super::{apolar_piece, hilbert_function, Form, HilbertFunction};
use crate::error::{AlgebraError, Result};
use crate::exact::{ExactMatrix, Field};
use crate::poly::{MPoly, MonomialIndex};

/// Quadratic relations `Σ c_ij q_i q_j = 0` among a list of quadrics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticRelation {
    /// Dimension of the space of relations.
    pub dim: usize,
    /// Each relation as a symmetric matrix `M` with `Σ M_ij q_i q_j = 0`.
    pub relations: Vec<ExactMatrix>,
    /// The relation and its rank when the relation is unique.
    pub unique: Option<(ExactMatrix, usize)>,
}

/// Relations among arbitrary homogeneous quadrics in a common ring.
pub fn quadratic_relations_of(quadrics: &[MPoly]) -> Result<QuadraticRelation> {
    let first = quadrics
        .first()
        .ok_or_else(|| AlgebraError::Unsupported("at least one quadric".into()))?;
    let field = first.field();
    if let Field::Prime(2) = field {
        return Err(AlgebraError::CharacteristicTooSmall { p: 2, bound: 2 });
    }
    let nv = first.nvars();
    for q in quadrics {
        if q.homogeneous_degree()? != 2 {
            return Err(AlgebraError::DegreeOutOfRange { degree: q.degree().unwrap_or(0) as usize, max: 2 });
        }
    }
    let index = MonomialIndex::graded(nv - 1, 4);
    let k = quadrics.len();
    let mut pairs = Vec::new();
    let mut columns = Vec::new();
    for i in 0..k {
        for j in i..k {
            pairs.push((i, j));
            columns.push((&quadrics[i] * &quadrics[j]).coords(&index)?);
        }
    }
    let products = ExactMatrix::from_columns(field, index.len(), &columns)?;
    let kernel = products.kernel_basis();
    let half = field.from_i64(2).inv().expect("odd characteristic");
    let relations: Vec<ExactMatrix> = (0..kernel.cols())
        .map(|c| {
            let mut m = ExactMatrix::zeros(field, k, k);
            for (r, &(i, j)) in pairs.iter().enumerate() {
                let v = kernel.get(r, c);
                if i == j {
                    m.set(i, i, &v);
                } else {
                    let h = &v * &half;
                    m.set(i, j, &h);
                    m.set(j, i, &h);
                }
            }
            m
        })
        .collect();
    let unique = (relations.len() == 1).then(|| {
        let m = relations[0].clone();
        let r = m.rank();
        (m, r)
    });
    Ok(QuadraticRelation {
        dim: relations.len(),
        relations,
        unique,
    })
}

/// Relations among the canonical basis of `F_2⊥` for a cubic in five
/// variables with Hilbert function (1,5,5,1).
pub fn quadratic_relation(form: &Form) -> Result<QuadraticRelation> {
    let want = HilbertFunction(vec![1, 5, 5, 1]);
    let hf = hilbert_function(form)?;
    if form.n() != 4 || form.d() != 3 || hf != want {
        return Err(AlgebraError::HilbertFunctionMismatch {
            expected: format!("cubic in 5 variables with {want}"),
            found: format!("degree {} in {} variables with {hf}", form.d(), form.n() + 1),
        });
    }
    quadratic_relations_of(&apolar_piece(form, 2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, RingKind};

    #[test]
    fn conic_relation() {
        // d0^2, d0d1, d1^2 satisfy (d0^2)(d1^2) = (d0d1)^2
        let q = Field::Rational;
        let quads: Vec<MPoly> = ["d0^2", "d0*d1", "d1^2"]
            .iter()
            .map(|s| parse_poly(s, q, RingKind::Dual, Some(2)).unwrap())
            .collect();
        let r = quadratic_relations_of(&quads).unwrap();
        assert_eq!(r.dim, 1);
        assert_eq!(r.unique.unwrap().1, 3);
    }

    #[test]
    fn quadric_surface_is_refused() {
        let f = Form::parse("x0*x1 - x2*x3", Field::Rational, None).unwrap();
        assert!(matches!(
            quadratic_relation(&f),
            Err(AlgebraError::HilbertFunctionMismatch { .. })
        ));
    }
}
