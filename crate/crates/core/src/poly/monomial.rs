use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

/// Exponent vector. Ordered graded-lexicographically with `x0 > x1 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `Π a_i!`
    pub fn factorial_weight(&self) -> u128 {
        self.0
            .iter()
            .map(|&a| (1..=a as u128).product::<u128>())
            .product()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn fill(prefix: &mut Vec<u32>, left: usize, d: u32, out: &mut Vec<Monomial>) {
    if left == 1 {
        prefix.push(d);
        out.push(Monomial(prefix.clone()));
        prefix.pop();
        return;
    }
    for a in (0..=d).rev() {
        prefix.push(a);
        fill(prefix, left - 1, d - a, out);
        prefix.pop();
    }
}

/// Degree-`d` monomials in `n + 1` variables, leading monomial first.
pub fn monomial_basis(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    fill(&mut Vec::with_capacity(n + 1), n + 1, d, &mut out);
    out
}

/// A monomial basis together with the inverse lookup.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(basis: Vec<Monomial>) -> MonomialIndex {
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialIndex { basis, index }
    }

    /// Index for the degree-`d` piece in `n + 1` variables.
    pub fn graded(n: usize, d: u32) -> MonomialIndex {
        MonomialIndex::new(monomial_basis(n, d))
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.basis[i]
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_quadrics() {
        let b = monomial_basis(1, 2);
        let e: Vec<&[u32]> = b.iter().map(|m| m.exponents()).collect();
        assert_eq!(e, vec![&[2, 0][..], &[1, 1], &[0, 2]]);
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(monomial_basis(4, 3).len(), 35);
        assert_eq!(monomial_basis(4, 4).len(), 70);
        assert_eq!(monomial_basis(15, 2).len(), 136);
        assert_eq!(monomial_basis(0, 5).len(), 1);
    }

    #[test]
    fn basis_is_strictly_decreasing() {
        let b = monomial_basis(3, 4);
        assert!(b.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn graded_before_lex() {
        let a = Monomial::new(vec![0, 3]);
        let b = Monomial::new(vec![2, 0]);
        assert!(a > b);
    }
}
