use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MonomialIndex};
use crate::error::{AlgebraError, Result};
use crate::exact::{Field, Scalar};

/// Which side of the apolarity pairing a polynomial lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingKind {
    /// `S = k[x0..xn]`
    Primal,
    /// `T = k[d0..dn]`, acting on `S` by differentiation.
    Dual,
}

impl RingKind {
    pub fn name(self) -> &'static str {
        match self {
            RingKind::Primal => "S",
            RingKind::Dual => "T",
        }
    }

    pub fn var_prefix(self) -> char {
        match self {
            RingKind::Primal => 'x',
            RingKind::Dual => 'd',
        }
    }

    pub fn other(self) -> RingKind {
        match self {
            RingKind::Primal => RingKind::Dual,
            RingKind::Dual => RingKind::Primal,
        }
    }
}

/// Sparse polynomial; terms sorted with the leading monomial first, no
/// zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    ring: RingKind,
    field: Field,
    nvars: usize,
    terms: Vec<(Monomial, Scalar)>,
}

impl MPoly {
    pub fn zero(ring: RingKind, field: Field, nvars: usize) -> MPoly {
        MPoly {
            ring,
            field,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: RingKind, field: Field, nvars: usize, c: Scalar) -> MPoly {
        MPoly::from_terms(ring, field, nvars, vec![(Monomial::one(nvars), c)])
            .expect("constant in its own field")
    }

    pub fn var(ring: RingKind, field: Field, nvars: usize, i: usize) -> MPoly {
        MPoly::monomial(ring, field, nvars, Monomial::var(nvars, i), field.one())
    }

    pub fn monomial(ring: RingKind, field: Field, nvars: usize, m: Monomial, c: Scalar) -> MPoly {
        MPoly::from_terms(ring, field, nvars, vec![(m, c)]).expect("well-formed monomial")
    }

    /// Collects like terms and drops zeros.
    pub fn from_terms(
        ring: RingKind,
        field: Field,
        nvars: usize,
        terms: Vec<(Monomial, Scalar)>,
    ) -> Result<MPoly> {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(AlgebraError::VariableCountMismatch {
                    left: nvars,
                    right: m.nvars(),
                });
            }
            if c.field() != field {
                return Err(AlgebraError::MixedFields {
                    left: field,
                    right: c.field(),
                });
            }
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Ok(MPoly {
            ring,
            field,
            nvars,
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Polynomial with the given coordinates in `index`.
    pub fn from_coords(
        ring: RingKind,
        field: Field,
        nvars: usize,
        index: &MonomialIndex,
        coords: &[Scalar],
    ) -> MPoly {
        let terms = coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (index.get(i).clone(), c.clone()))
            .collect();
        MPoly::from_terms(ring, field, nvars, terms).expect("coordinates in one field")
    }

    pub fn ring(&self) -> RingKind {
        self.ring
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// Maximal total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroForm);
        }
        if !self.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous);
        }
        Ok(self.terms[0].0.degree())
    }

    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect(),
            ..self.clone_empty()
        }
    }

    fn clone_empty(&self) -> MPoly {
        MPoly::zero(self.ring, self.field, self.nvars)
    }

    /// Same terms, other ring tag.
    pub fn with_ring(&self, ring: RingKind) -> MPoly {
        MPoly {
            ring,
            ..self.clone()
        }
    }

    /// Coordinates in `index`; fails if a term falls outside it.
    pub fn coords(&self, index: &MonomialIndex) -> Result<Vec<Scalar>> {
        let mut v = vec![self.field.zero(); index.len()];
        for (m, c) in &self.terms {
            let i = index.position(m).ok_or_else(|| {
                AlgebraError::DimensionMismatch(format!("monomial {:?} outside basis", m.exponents()))
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    fn check(&self, other: &MPoly) -> Result<()> {
        if self.field != other.field {
            return Err(AlgebraError::MixedFields {
                left: self.field,
                right: other.field,
            });
        }
        if self.nvars != other.nvars {
            return Err(AlgebraError::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch {
                expected: self.ring.name(),
                found: other.ring.name(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        MPoly::from_terms(self.ring, self.field, self.nvars, terms)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                terms.push((a.mul(b), x * y));
            }
        }
        MPoly::from_terms(self.ring, self.field, self.nvars, terms)
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        MPoly::from_terms(self.ring, self.field, self.nvars, terms).expect("same field")
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
            ..self.clone()
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let one = MPoly::constant(self.ring, self.field, self.nvars, self.field.one());
        (0..e).fold(one, |acc, _| &acc * self)
    }

    /// Formal partial derivative in variable `i` (same ring).
    pub fn partial(&self, i: usize) -> MPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents()[i] > 0)
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                let k = e[i];
                e[i] -= 1;
                (Monomial::new(e), c * &self.field.from_i64(k as i64))
            })
            .collect();
        MPoly::from_terms(self.ring, self.field, self.nvars, terms).expect("same field")
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero lead")),
        }
    }

    /// Renders with custom variable names.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_repr();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{e}", names[i])),
                }
            }
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    pub fn default_names(&self) -> Vec<String> {
        let p = self.ring.var_prefix();
        (0..self.nvars).map(|i| format!("{p}{i}")).collect()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&self.default_names()))
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            ..self.clone()
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

macro_rules! poly_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

poly_op!(Add, add, try_add);
poly_op!(Sub, sub, try_sub);
poly_op!(Mul, mul, try_mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MPoly {
        MPoly::var(RingKind::Primal, Field::Rational, 3, i)
    }

    #[test]
    fn cancellation_leaves_zero() {
        let p = &x(0) + &x(1);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn display_and_order() {
        let q = Field::Rational;
        let p = &(&x(0).pow(2) * &x(1)).scale(&q.from_i64(3)) - &x(2);
        assert_eq!(p.to_string(), "3*x0^2*x1 - x2");
        let r = &x(2) - &x(0);
        assert_eq!(r.to_string(), "-x0 + x2");
    }

    #[test]
    fn rational_coefficients_print_as_fractions() {
        let q = Field::Rational;
        let half = q.from_i64(1) / q.from_i64(2);
        assert_eq!(x(1).scale(&half).to_string(), "1/2*x1");
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let d = MPoly::var(RingKind::Dual, Field::Rational, 3, 0);
        assert!(matches!(
            x(0).try_add(&d),
            Err(AlgebraError::RingMismatch { .. })
        ));
    }

    #[test]
    fn partial_derivative() {
        let p = x(0).pow(3);
        assert_eq!(p.partial(0), x(0).pow(2).scale(&Field::Rational.from_i64(3)));
        assert!(p.partial(1).is_zero());
    }
}
