use std::collections::HashMap;

use num_bigint::BigInt;

use super::monomial::{monomial_basis, Monomial};
use super::mpoly::{MPoly, RingKind};
use crate::error::{AlgebraError, Result};
use crate::exact::{ExactMatrix, Field, Scalar};

/// `Π b_i! / (b_i - a_i)!`, the coefficient of `x^(b-a)` in `∂^a x^b`.
pub(crate) fn apply_factor(field: Field, a: &Monomial, b: &Monomial) -> Scalar {
    let mut acc = field.one();
    for (&ai, &bi) in a.exponents().iter().zip(b.exponents()) {
        for k in 0..ai {
            acc = &acc * &field.from_i64((bi - k) as i64);
        }
    }
    acc
}

fn act(op: &MPoly, target: &MPoly, op_ring: RingKind) -> Result<MPoly> {
    if op.ring() != op_ring {
        return Err(AlgebraError::RingMismatch {
            expected: op_ring.name(),
            found: op.ring().name(),
        });
    }
    if target.ring() != op_ring.other() {
        return Err(AlgebraError::RingMismatch {
            expected: op_ring.other().name(),
            found: target.ring().name(),
        });
    }
    if op.nvars() != target.nvars() {
        return Err(AlgebraError::VariableCountMismatch {
            left: op.nvars(),
            right: target.nvars(),
        });
    }
    if op.field() != target.field() {
        return Err(AlgebraError::MixedFields {
            left: op.field(),
            right: target.field(),
        });
    }
    let field = target.field();
    field.require_char_above(target.degree().unwrap_or(0) as u64)?;
    let mut terms = Vec::new();
    for (a, c) in op.terms() {
        for (b, e) in target.terms() {
            if let Some(rest) = b.div(a) {
                terms.push((rest, &(c * e) * &apply_factor(field, a, b)));
            }
        }
    }
    MPoly::from_terms(target.ring(), field, target.nvars(), terms)
}

/// `D(f)`: a dual operator differentiating a primal polynomial.
pub fn diff_apply(d: &MPoly, f: &MPoly) -> Result<MPoly> {
    act(d, f, RingKind::Dual)
}

/// `g(D)`: a primal polynomial acting on a dual one by the symmetric rule.
pub fn contract_apply(g: &MPoly, d: &MPoly) -> Result<MPoly> {
    act(g, d, RingKind::Primal)
}

fn linear_coeffs(l: &MPoly) -> Result<Vec<Scalar>> {
    if l.terms().iter().any(|(m, _)| m.degree() != 1) {
        return Err(AlgebraError::NotLinear);
    }
    let mut c = vec![l.field().zero(); l.nvars()];
    for (m, x) in l.terms() {
        let i = m.exponents().iter().position(|&e| e == 1).unwrap();
        c[i] = x.clone();
    }
    Ok(c)
}

fn multinomial(d: u32, m: &Monomial) -> BigInt {
    let fact = |k: u32| (1..=k).fold(BigInt::from(1), |acc, i| acc * i);
    m.exponents().iter().fold(fact(d), |acc, &e| acc / fact(e))
}

/// `l^d` for a linear form `l`, expanded by multinomials.
pub fn power_of_linear(l: &MPoly, d: u32) -> Result<MPoly> {
    let c = linear_coeffs(l)?;
    let field = l.field();
    let n = l.nvars();
    if n == 0 {
        return Err(AlgebraError::ZeroForm);
    }
    let terms = monomial_basis(n - 1, d)
        .into_iter()
        .map(|m| {
            let mut coef = field.from_bigint(&multinomial(d, &m));
            for (ci, &e) in c.iter().zip(m.exponents()) {
                if e > 0 {
                    coef = &coef * &ci.pow(e);
                }
            }
            (m, coef)
        })
        .collect();
    MPoly::from_terms(l.ring(), field, n, terms)
}

/// The linear form `Σ c_i v_i` in the given ring.
pub fn linear_form(ring: RingKind, field: Field, coeffs: &[Scalar]) -> MPoly {
    let n = coeffs.len();
    let terms = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| (Monomial::var(n, i), c.clone()))
        .collect();
    MPoly::from_terms(ring, field, n, terms).expect("coefficients in one field")
}

pub fn poly_eval(f: &MPoly, point: &[Scalar]) -> Result<Scalar> {
    if point.len() != f.nvars() {
        return Err(AlgebraError::VariableCountMismatch {
            left: f.nvars(),
            right: point.len(),
        });
    }
    let mut acc = f.field().zero();
    for (m, c) in f.terms() {
        let mut t = c.clone();
        for (x, &e) in point.iter().zip(m.exponents()) {
            if e > 0 {
                t = t.try_mul(&x.pow(e))?;
            }
        }
        acc = &acc + &t;
    }
    Ok(acc)
}

/// Linear substitution `x_i ↦ Σ_j c_ij z_j`, stored with one row per source
/// variable and one column per target variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearParam {
    coeffs: ExactMatrix,
}

impl LinearParam {
    pub fn new(coeffs: ExactMatrix) -> LinearParam {
        LinearParam { coeffs }
    }

    pub fn identity(field: Field, n: usize) -> LinearParam {
        LinearParam::new(ExactMatrix::identity(field, n))
    }

    pub fn sources(&self) -> usize {
        self.coeffs.rows()
    }

    pub fn targets(&self) -> usize {
        self.coeffs.cols()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.coeffs
    }

    /// Image of source variable `i` as a linear form in the targets.
    pub fn image(&self, i: usize, ring: RingKind) -> MPoly {
        linear_form(ring, self.coeffs.field(), &self.coeffs.row(i))
    }
}

/// `f ∘ φ`, in the target variables and the same ring as `f`.
pub fn substitute_linear(f: &MPoly, phi: &LinearParam) -> Result<MPoly> {
    if phi.sources() != f.nvars() {
        return Err(AlgebraError::VariableCountMismatch {
            left: f.nvars(),
            right: phi.sources(),
        });
    }
    if phi.matrix().field() != f.field() {
        return Err(AlgebraError::MixedFields {
            left: f.field(),
            right: phi.matrix().field(),
        });
    }
    let ring = f.ring();
    let images: Vec<MPoly> = (0..f.nvars()).map(|i| phi.image(i, ring)).collect();
    let mut powers: HashMap<(usize, u32), MPoly> = HashMap::new();
    let mut out = MPoly::zero(ring, f.field(), phi.targets());
    for (m, c) in f.terms() {
        let mut t = MPoly::constant(ring, f.field(), phi.targets(), c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = powers
                .entry((i, e))
                .or_insert_with(|| images[i].pow(e));
            t = &t * &*p;
        }
        out = &out + &t;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn q() -> Field {
        Field::Rational
    }

    fn p(s: &str, ring: RingKind, n: usize) -> MPoly {
        parse_poly(s, q(), ring, Some(n)).unwrap()
    }

    #[test]
    fn mixed_partial_on_product() {
        let d = p("d0*d1", RingKind::Dual, 2);
        let f = p("x0*x1", RingKind::Primal, 2);
        assert_eq!(diff_apply(&d, &f).unwrap().to_string(), "1");
    }

    #[test]
    fn second_partial() {
        let d = p("d0^2", RingKind::Dual, 2);
        let f = p("x0^2*x1", RingKind::Primal, 2);
        assert_eq!(diff_apply(&d, &f).unwrap().to_string(), "2*x1");
    }

    #[test]
    fn contraction_mirror() {
        let g = p("x0", RingKind::Primal, 2);
        let d = p("d0^2", RingKind::Dual, 2);
        assert_eq!(contract_apply(&g, &d).unwrap().to_string(), "2*d0");
    }

    #[test]
    fn diagonal_pairing_is_factorial() {
        let g = p("x0^2*x1^3", RingKind::Primal, 2);
        let d = p("d0^2*d1^3", RingKind::Dual, 2);
        assert_eq!(contract_apply(&g, &d).unwrap().to_string(), "12");
        assert_eq!(diff_apply(&d, &g).unwrap().to_string(), "12");
    }

    #[test]
    fn wrong_ring_rejected() {
        let f = p("x0", RingKind::Primal, 1);
        assert!(diff_apply(&f, &f).is_err());
    }

    #[test]
    fn char_guard_refuses_small_prime() {
        let f5 = Field::prime(5).unwrap();
        let f = parse_poly("x0^5", f5, RingKind::Primal, Some(1)).unwrap();
        let d = parse_poly("d0", f5, RingKind::Dual, Some(1)).unwrap();
        assert!(matches!(
            diff_apply(&d, &f),
            Err(AlgebraError::CharacteristicTooSmall { .. })
        ));
    }

    #[test]
    fn binomial_square() {
        let l = p("x0 + x1", RingKind::Primal, 2);
        assert_eq!(
            power_of_linear(&l, 2).unwrap().to_string(),
            "x0^2 + 2*x0*x1 + x1^2"
        );
        assert!(power_of_linear(&l.pow(2), 2).is_err());
    }

    #[test]
    fn identity_and_diagonal_substitution() {
        let f = p("x0^2 + x1^2", RingKind::Primal, 2);
        let id = LinearParam::identity(q(), 2);
        assert_eq!(substitute_linear(&f, &id).unwrap(), f);
        let diag = LinearParam::new(ExactMatrix::from_i64(q(), 2, 1, &[1, 1]));
        assert_eq!(substitute_linear(&f, &diag).unwrap().to_string(), "2*x0^2");
    }
}
