use rand::Rng;
use serde::Serialize;

use super::{catalecticant, Form};
use crate::error::{AlgebraError, Result};
use crate::exact::{ExactMatrix, Field, Scalar, SolveOutcome};
use crate::poly::{
    linear_form, monomial_basis, poly_eval, power_of_linear, MPoly, MonomialIndex, RingKind,
};

/// Distinct points of the dual projective space, as coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    field: Field,
    n: usize,
    points: Vec<Vec<Scalar>>,
}

fn proportional(a: &[Scalar], b: &[Scalar]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if !(&(&a[i] * &b[j]) - &(&a[j] * &b[i])).is_zero() {
                return false;
            }
        }
    }
    true
}

impl PointSet {
    /// Rejects zero vectors and repeated points.
    pub fn new(field: Field, points: Vec<Vec<Scalar>>) -> Result<PointSet> {
        let len = points.first().map_or(1, |p| p.len());
        if len == 0 {
            return Err(AlgebraError::ZeroPoint);
        }
        for (k, p) in points.iter().enumerate() {
            if p.len() != len {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "point {k} has {} coordinates, expected {len}",
                    p.len()
                )));
            }
            if let Some(x) = p.iter().find(|x| x.field() != field) {
                return Err(AlgebraError::MixedFields {
                    left: field,
                    right: x.field(),
                });
            }
            if p.iter().all(|x| x.is_zero()) {
                return Err(AlgebraError::ZeroPoint);
            }
            if points[..k].iter().any(|q| proportional(p, q)) {
                return Err(AlgebraError::RepeatedPoint);
            }
        }
        Ok(PointSet {
            field,
            n: len - 1,
            points,
        })
    }

    /// `"1,0;0,1"`: points separated by `;`, coordinates by `,`.
    pub fn parse(text: &str, field: Field) -> Result<PointSet> {
        let mut points = Vec::new();
        for (k, chunk) in text.split(';').enumerate() {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let mut p = Vec::new();
            for c in chunk.split(',') {
                let s = crate::poly::parse_poly(c.trim(), field, RingKind::Primal, Some(0))
                    .map_err(|e| AlgebraError::Parse {
                        line: 1,
                        column: 1,
                        message: format!("point {}: {e}", k + 1),
                    })?;
                p.push(
                    s.terms()
                        .first()
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(|| field.zero()),
                );
            }
            points.push(p);
        }
        PointSet::new(field, points)
    }

    /// `s` points with uniformly random coordinates in `P^n`.
    pub fn random<R: Rng + ?Sized>(field: Field, n: usize, s: usize, rng: &mut R) -> PointSet {
        loop {
            let points = (0..s)
                .map(|_| (0..=n).map(|_| field.random(rng)).collect())
                .collect();
            if let Ok(p) = PointSet::new(field, points) {
                return p;
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Scalar>] {
        &self.points
    }

    /// `l_i = Σ_j a_ij x_j` in the primal ring.
    pub fn linear_forms(&self) -> Vec<MPoly> {
        self.points
            .iter()
            .map(|p| linear_form(RingKind::Primal, self.field, p))
            .collect()
    }

    /// Same points, each scaled to have first nonzero coordinate 1.
    pub fn normalized(&self) -> PointSet {
        PointSet {
            points: self.points.iter().map(|p| normalize(p)).collect(),
            ..self.clone()
        }
    }

    /// Set equality up to order and scaling.
    pub fn same_points(&self, other: &PointSet) -> bool {
        self.len() == other.len()
            && self
                .points
                .iter()
                .all(|p| other.points.iter().any(|q| proportional(p, q)))
    }
}

pub(crate) fn normalize(p: &[Scalar]) -> Vec<Scalar> {
    match p.iter().find(|x| !x.is_zero()) {
        None => p.to_vec(),
        Some(lead) => {
            let inv = lead.inv().expect("nonzero");
            p.iter().map(|x| x * &inv).collect()
        }
    }
}

/// Rows are points, columns the degree-`e` monomials; its kernel is `I_Γ(e)`.
pub fn evaluation_matrix(points: &PointSet, e: u32) -> ExactMatrix {
    let basis = monomial_basis(points.n(), e);
    let mut m = ExactMatrix::zeros(points.field(), points.len(), basis.len());
    for (i, p) in points.points().iter().enumerate() {
        for (j, mono) in basis.iter().enumerate() {
            let mut v = points.field().one();
            for (x, &k) in p.iter().zip(mono.exponents()) {
                if k > 0 {
                    v = &v * &x.pow(k);
                }
            }
            m.set(i, j, &v);
        }
    }
    m
}

/// Canonical basis of the degree-`e` piece of the ideal of the points.
pub fn ideal_of_points(points: &PointSet, e: u32) -> Vec<MPoly> {
    let k = evaluation_matrix(points, e).kernel_basis();
    let index = MonomialIndex::graded(points.n(), e);
    (0..k.cols())
        .map(|j| MPoly::from_coords(RingKind::Dual, points.field(), points.n() + 1, &index, &k.column(j)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApolarityCertificate {
    pub apolar: bool,
    /// First degree `e` where `I_Γ(e) ⊄ F_e⊥`.
    pub first_failure: Option<u32>,
    /// `dim I_Γ(e)` for `e = 1..=d`.
    pub ideal_dims: Vec<usize>,
}

fn check_points(form: &Form, points: &PointSet) -> Result<()> {
    if points.n() != form.n() {
        return Err(AlgebraError::VariableCountMismatch {
            left: form.n() + 1,
            right: points.n() + 1,
        });
    }
    if points.field() != form.field() {
        return Err(AlgebraError::MixedFields {
            left: form.field(),
            right: points.field(),
        });
    }
    Ok(())
}

/// Whether `I_Γ ⊂ F⊥`, tested degree by degree.
pub fn is_apolar(form: &Form, points: &PointSet) -> Result<ApolarityCertificate> {
    check_points(form, points)?;
    let mut dims = Vec::new();
    let mut first_failure = None;
    for e in 1..=form.d() {
        let k = evaluation_matrix(points, e).kernel_basis();
        dims.push(k.cols());
        if first_failure.is_none() && k.cols() > 0 && !catalecticant(form, e)?.mul(&k)?.is_zero() {
            first_failure = Some(e);
        }
    }
    Ok(ApolarityCertificate {
        apolar: first_failure.is_none(),
        first_failure,
        ideal_dims: dims,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PowerSumOutcome {
    /// Canonical `λ` (free variables zero) and the dimension of all solutions.
    Presentable { lambda: Vec<Scalar>, solution_dim: usize },
    NotPresentable,
}

/// Solves `f = Σ λ_i l_i^d`.
pub fn powersum_lambda(form: &Form, points: &PointSet) -> Result<PowerSumOutcome> {
    check_points(form, points)?;
    let index = MonomialIndex::graded(form.n(), form.d());
    let columns = points
        .linear_forms()
        .iter()
        .map(|l| power_of_linear(l, form.d())?.coords(&index))
        .collect::<Result<Vec<_>>>()?;
    let m = ExactMatrix::from_columns(form.field(), index.len(), &columns)?;
    Ok(match m.solve(&form.poly().coords(&index)?)? {
        SolveOutcome::Solved { solution, nullity } => PowerSumOutcome::Presentable {
            lambda: solution,
            solution_dim: nullity,
        },
        SolveOutcome::Inconsistent => PowerSumOutcome::NotPresentable,
    })
}

/// Dimension of the span of `π_e^F(Γ)`: `dim F_e⊥ − dim(F_e⊥ ∩ I_Γ(e)) − 1`.
/// When `Γ` is apolar in degree `e` this is `dim F_e⊥ − dim I_Γ(e) − 1`;
/// `-1` means every point of `Γ` is a base point of the projection.
pub fn gamma_span_dim(form: &Form, e: u32, points: &PointSet) -> Result<i64> {
    check_points(form, points)?;
    let cat = catalecticant(form, e)?;
    let dim_perp = cat.cols() - cat.rank();
    let both = cat.stack(&evaluation_matrix(points, e))?;
    let dim_meet = both.cols() - both.rank();
    Ok(dim_perp as i64 - dim_meet as i64 - 1)
}

/// Evaluates dual components at a point of the dual space.
pub fn project(components: &[MPoly], point: &[Scalar]) -> Result<Vec<Scalar>> {
    components.iter().map(|c| poly_eval(c, point)).collect()
}

const FIBER_POINT_LIMIT: u64 = 5_000_000;

/// All points `a` (normalized) of `P^n(GF(p))` with `π(a) = image` projectively,
/// found by exhaustive enumeration. Base points of `π` are skipped.
pub fn brute_force_fiber(components: &[MPoly], image: &[Scalar]) -> Result<PointSet> {
    let first = components
        .first()
        .ok_or_else(|| AlgebraError::Unsupported("a nonempty projection".into()))?;
    let field = first.field();
    let p = match field {
        Field::Prime(p) => p,
        Field::Rational => return Err(AlgebraError::Unsupported("a prime field".into())),
    };
    let nv = first.nvars();
    let total = (0..nv).try_fold(0u64, |acc, k| {
        p.checked_pow(k as u32).and_then(|x| acc.checked_add(x))
    });
    if total.map_or(true, |t| t > FIBER_POINT_LIMIT) {
        return Err(AlgebraError::FieldTooLarge(p));
    }
    let mut found = Vec::new();
    for lead in 0..nv {
        let free = nv - lead - 1;
        for code in 0..p.pow(free as u32) {
            let mut pt = vec![field.zero(); nv];
            pt[lead] = field.one();
            let mut c = code;
            for slot in pt.iter_mut().skip(lead + 1) {
                *slot = field.from_i64((c % p) as i64);
                c /= p;
            }
            let v = project(components, &pt)?;
            if v.iter().any(|x| !x.is_zero()) && proportional(&v, image) {
                found.push(pt);
            }
        }
    }
    PointSet::new(field, found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    fn coords() -> PointSet {
        PointSet::parse("1,0;0,1", q()).unwrap()
    }

    #[test]
    fn coordinate_points_apolar_to_sum_of_cubes() {
        let f = Form::parse("x0^3 + x1^3", q(), None).unwrap();
        assert!(is_apolar(&f, &coords()).unwrap().apolar);
        assert_eq!(
            powersum_lambda(&f, &coords()).unwrap(),
            PowerSumOutcome::Presentable {
                lambda: vec![q().one(), q().one()],
                solution_dim: 0
            }
        );
    }

    #[test]
    fn extra_summand_breaks_apolarity() {
        let f = Form::parse("x0^3 + x1^3 + (x0 + x1)^3", q(), None).unwrap();
        let cert = is_apolar(&f, &coords()).unwrap();
        assert!(!cert.apolar);
        assert_eq!(cert.first_failure, Some(2));
        assert_eq!(powersum_lambda(&f, &coords()).unwrap(), PowerSumOutcome::NotPresentable);
    }

    #[test]
    fn degenerate_point_sets_rejected() {
        assert_eq!(
            PointSet::parse("1,2;2,4", q()),
            Err(AlgebraError::RepeatedPoint)
        );
        assert_eq!(PointSet::parse("0,0", q()), Err(AlgebraError::ZeroPoint));
    }

    #[test]
    fn single_point_spans_a_point() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let gf = Field::default_prime();
        let f = Form::random(gf, 2, 4, &mut rng);
        let pts = PointSet::random(gf, 2, 1, &mut rng);
        // F_e⊥ is nonzero only from e = 3 on
        assert_eq!(gamma_span_dim(&f, 2, &pts).unwrap(), -1);
        for e in 3..=4 {
            assert_eq!(gamma_span_dim(&f, e, &pts).unwrap(), 0);
        }
        // the point of a pure power is a base point of every projection
        let g = Form::new(power_of_linear(&pts.linear_forms()[0], 4).unwrap()).unwrap();
        assert_eq!(gamma_span_dim(&g, 2, &pts).unwrap(), -1);
    }
}
