//! Catalecticants, apolar ideals and their Hilbert functions, inverse
//! systems, and the projection from partials.

mod points;
mod relation;

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::exact::{ExactMatrix, Field, Scalar};
use crate::poly::{apply_factor, monomial_basis, MPoly, Monomial, MonomialIndex, RingKind};

pub use points::{
    brute_force_fiber, evaluation_matrix, gamma_span_dim, ideal_of_points, is_apolar,
    powersum_lambda, project, ApolarityCertificate, PointSet, PowerSumOutcome,
};
pub use relation::{quadratic_relation, quadratic_relations_of, QuadraticRelation};

/// A nonzero homogeneous form in the primal ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    f: MPoly,
    d: u32,
}

impl Form {
    pub fn new(f: MPoly) -> Result<Form> {
        if f.ring() != RingKind::Primal {
            return Err(AlgebraError::RingMismatch {
                expected: RingKind::Primal.name(),
                found: f.ring().name(),
            });
        }
        let d = f.homogeneous_degree()?;
        Ok(Form { f, d })
    }

    pub fn parse(text: &str, field: Field, nvars: Option<usize>) -> Result<Form> {
        Form::new(crate::poly::parse_poly(text, field, RingKind::Primal, nvars)?)
    }

    /// Uniformly random coefficients on every degree-`d` monomial.
    pub fn random<R: Rng + ?Sized>(field: Field, n: usize, d: u32, rng: &mut R) -> Form {
        loop {
            let terms = monomial_basis(n, d)
                .into_iter()
                .map(|m| (m, field.random(rng)))
                .collect();
            let f = MPoly::from_terms(RingKind::Primal, field, n + 1, terms).expect("one field");
            if !f.is_zero() {
                return Form { f, d };
            }
        }
    }

    /// `Σ λ_i l_i^d` with `l_i` the linear form of the i-th point.
    pub fn power_sum(points: &PointSet, lambdas: &[Scalar], d: u32) -> Result<Form> {
        if lambdas.len() != points.len() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} coefficients for {} points",
                lambdas.len(),
                points.len()
            )));
        }
        let mut f = MPoly::zero(RingKind::Primal, points.field(), points.n() + 1);
        for (l, c) in points.linear_forms().iter().zip(lambdas) {
            f = &f + &crate::poly::power_of_linear(l, d)?.scale(c);
        }
        Form::new(f)
    }

    pub fn poly(&self) -> &MPoly {
        &self.f
    }

    pub fn n(&self) -> usize {
        self.f.nvars() - 1
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn field(&self) -> Field {
        self.f.field()
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.f.fmt(f)
    }
}

/// Dimensions `h_0, h_1, ...` of graded pieces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertFunction(pub Vec<usize>);

impl HilbertFunction {
    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn length(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|h| h.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Hilbert function of `T/F⊥` for a general form of degree `d` in `n+1`
/// variables: `min(dim T_e, dim T_{d-e})`.
pub fn generic_hilbert_function(n: usize, d: u32) -> HilbertFunction {
    let d = d as usize;
    HilbertFunction(
        (0..=d)
            .map(|e| binom(n + e, e).min(binom(n + d - e, d - e)))
            .collect(),
    )
}

/// Matrix of `D ↦ D(f)` from `T_e` (columns) to `S_{d-e}` (rows), both in
/// the global monomial order.
pub fn catalecticant(form: &Form, e: u32) -> Result<ExactMatrix> {
    let d = form.d();
    if e > d {
        return Err(AlgebraError::DegreeOutOfRange {
            degree: e as usize,
            max: d as usize,
        });
    }
    let field = form.field();
    field.require_char_above(d as u64)?;
    let n = form.n();
    let coeffs: HashMap<&Monomial, &Scalar> = form.f.terms().iter().map(|(m, c)| (m, c)).collect();
    let cols = monomial_basis(n, e);
    let rows = monomial_basis(n, d - e);
    let mut m = ExactMatrix::zeros(field, rows.len(), cols.len());
    for (j, alpha) in cols.iter().enumerate() {
        for (i, beta) in rows.iter().enumerate() {
            let full = alpha.mul(beta);
            if let Some(c) = coeffs.get(&full) {
                m.set(i, j, &(*c * &apply_factor(field, alpha, &full)));
            }
        }
    }
    Ok(m)
}

/// Canonical basis of `F⊥` in degree `e`.
pub fn apolar_piece(form: &Form, e: u32) -> Result<Vec<MPoly>> {
    let k = catalecticant(form, e)?.kernel_basis();
    let index = MonomialIndex::graded(form.n(), e);
    Ok((0..k.cols())
        .map(|j| MPoly::from_coords(RingKind::Dual, form.field(), form.n() + 1, &index, &k.column(j)))
        .collect())
}

pub fn hilbert_function(form: &Form) -> Result<HilbertFunction> {
    (0..=form.d())
        .map(|e| catalecticant(form, e).map(|c| c.rank()))
        .collect::<Result<Vec<_>>>()
        .map(HilbertFunction)
}

/// Draws random forms until the Hilbert function is the generic one;
/// returns the form and the number of draws.
pub fn random_general_form<R: Rng + ?Sized>(
    field: Field,
    n: usize,
    d: u32,
    retries: usize,
    rng: &mut R,
) -> Result<(Form, usize)> {
    let want = generic_hilbert_function(n, d);
    for attempt in 1..=retries {
        let f = Form::random(field, n, d, rng);
        if hilbert_function(&f)? == want {
            return Ok((f, attempt));
        }
    }
    Err(AlgebraError::RetriesExhausted(retries))
}

/// The form `f` of degree `d` annihilated by every degree-`d` multiple of
/// the given dual generators, normalized to leading coefficient 1.
pub fn dual_socle_generator(gens: &[MPoly], n: usize, d: u32, field: Field) -> Result<Form> {
    field.require_char_above(d as u64)?;
    let index = MonomialIndex::graded(n, d);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in gens {
        if g.ring() != RingKind::Dual {
            return Err(AlgebraError::RingMismatch {
                expected: RingKind::Dual.name(),
                found: g.ring().name(),
            });
        }
        if g.nvars() != n + 1 {
            return Err(AlgebraError::VariableCountMismatch {
                left: n + 1,
                right: g.nvars(),
            });
        }
        if g.is_zero() {
            continue;
        }
        let e = g.homogeneous_degree()?;
        if e > d {
            continue;
        }
        for m in monomial_basis(n, d - e) {
            rows.push(g.mul_monomial(&m).coords(&index)?);
        }
    }
    // ∂^α pairs with x^α to α!, so weight the columns.
    let weights: Vec<Scalar> = index
        .basis()
        .iter()
        .map(|m| apply_factor(field, m, m))
        .collect();
    let weighted: Vec<Vec<Scalar>> = rows
        .into_iter()
        .map(|r| r.iter().zip(&weights).map(|(a, w)| a * w).collect())
        .collect();
    let m = ExactMatrix::from_rows(field, index.len(), &weighted)?;
    let k = m.kernel_basis();
    if k.cols() != 1 {
        return Err(AlgebraError::SocleNotOneDimensional(k.cols()));
    }
    let f = MPoly::from_coords(RingKind::Primal, field, n + 1, &index, &k.column(0)).monic();
    Form::new(f)
}

/// The components of the projection from the partials of order `e`, with
/// `n_e = dim F_e⊥ − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialProjection {
    pub components: Vec<MPoly>,
    pub n_e: i64,
}

pub fn partial_projection(form: &Form, e: u32) -> Result<PartialProjection> {
    let components = apolar_piece(form, e)?;
    let n_e = components.len() as i64 - 1;
    Ok(PartialProjection { components, n_e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf() -> Field {
        Field::default_prime()
    }

    #[test]
    fn power_has_rank_one_catalecticant() {
        let f = Form::parse("x0^3", Field::Rational, Some(2)).unwrap();
        assert_eq!(catalecticant(&f, 1).unwrap().rank(), 1);
        assert_eq!(hilbert_function(&f).unwrap().values(), &[1, 1, 1, 1]);
    }

    #[test]
    fn catalecticant_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = Form::random(gf(), 1, 5, &mut rng);
        let c = catalecticant(&f, 2).unwrap();
        assert_eq!((c.rows(), c.cols()), (4, 3));
        assert!(catalecticant(&f, 6).is_err());
    }

    #[test]
    fn monomial_cubic_apolar_quadrics() {
        let f = Form::parse("x0*x1*x2", Field::Rational, None).unwrap();
        let q: Vec<String> = apolar_piece(&f, 2).unwrap().iter().map(|p| p.to_string()).collect();
        assert_eq!(q, vec!["d0^2", "d1^2", "d2^2"]);
        assert_eq!(hilbert_function(&f).unwrap().to_string(), "(1,3,3,1)");
    }

    #[test]
    fn socle_of_monomial_complete_intersection() {
        let q = Field::Rational;
        let gens: Vec<MPoly> = ["d0^2", "d1^2", "d2^2"]
            .iter()
            .map(|s| crate::poly::parse_poly(s, q, RingKind::Dual, Some(3)).unwrap())
            .collect();
        let f = dual_socle_generator(&gens, 2, 3, q).unwrap();
        assert_eq!(f.to_string(), "x0*x1*x2");
    }

    #[test]
    fn socle_of_a_linear_generator() {
        let q = Field::Rational;
        let g = crate::poly::parse_poly("d1", q, RingKind::Dual, Some(2)).unwrap();
        assert_eq!(dual_socle_generator(&[g], 1, 2, q).unwrap().to_string(), "x0^2");
    }

    #[test]
    fn socle_dimension_checked() {
        let q = Field::Rational;
        let g = crate::poly::parse_poly("d0^2", q, RingKind::Dual, Some(3)).unwrap();
        assert!(matches!(
            dual_socle_generator(&[g], 2, 3, q),
            Err(AlgebraError::SocleNotOneDimensional(_))
        ));
    }

    #[test]
    fn generic_values() {
        assert_eq!(generic_hilbert_function(4, 3).to_string(), "(1,5,5,1)");
        assert_eq!(generic_hilbert_function(1, 5).to_string(), "(1,2,3,3,2,1)");
        assert_eq!(generic_hilbert_function(2, 7).to_string(), "(1,3,6,10,10,6,3,1)");
    }

    #[test]
    fn general_binary_quintic_projection() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (f, _) = random_general_form(gf(), 1, 5, 5, &mut rng).unwrap();
        // three cubic partials span all of S_2, so F_3⊥ is a single cubic
        assert_eq!(partial_projection(&f, 3).unwrap().n_e, 0);
    }
}
