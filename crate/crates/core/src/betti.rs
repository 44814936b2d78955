//! Graded Betti numbers of cyclic quotients `R/I`, computed as the
//! homology of the Koszul complex `Λ^i V ⊗ R/I` one strand at a time.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::apolarity::{catalecticant, evaluation_matrix, Form, HilbertFunction, PointSet};
use crate::error::{AlgebraError, Result};
use crate::exact::{ExactMatrix, Field, RowSpace, Scalar};
use crate::poly::{
    monomial_basis, substitute_linear, LinearParam, MPoly, Monomial, MonomialIndex, RingKind,
};

/// Default cap on the number of entries of a single strand matrix.
pub const DEFAULT_BUDGET: usize = 10_000_000;

/// A homogeneous ideal described by how to produce each graded piece.
#[derive(Clone, Debug)]
pub enum GradedIdealOracle {
    /// The ideal of a finite set of points.
    Points(PointSet),
    /// The apolar ideal `F⊥`.
    Apolar(Form),
    /// The ideal generated by homogeneous polynomials in `nvars` variables.
    Generators {
        field: Field,
        nvars: usize,
        gens: Vec<MPoly>,
    },
    /// The image of an ideal in `R/(h_1, ..., h_k)` for linear forms `h`,
    /// presented as an ideal of a polynomial ring in fewer variables.
    Sum(Box<GradedIdealOracle>, Vec<MPoly>),
}

impl GradedIdealOracle {
    pub fn generators(gens: Vec<MPoly>) -> Result<GradedIdealOracle> {
        let first = gens
            .first()
            .ok_or_else(|| AlgebraError::Unsupported("at least one generator".into()))?;
        let (field, nvars) = (first.field(), first.nvars());
        for g in &gens {
            if g.nvars() != nvars {
                return Err(AlgebraError::VariableCountMismatch {
                    left: nvars,
                    right: g.nvars(),
                });
            }
            if g.field() != field {
                return Err(AlgebraError::MixedFields {
                    left: field,
                    right: g.field(),
                });
            }
            if !g.is_zero() {
                g.homogeneous_degree()?;
            }
        }
        Ok(GradedIdealOracle::Generators { field, nvars, gens })
    }

    /// Adds linear forms, moving to the quotient by them.
    pub fn with_linear_forms(self, forms: Vec<MPoly>) -> Result<GradedIdealOracle> {
        for h in &forms {
            if h.nvars() != self.ambient_nvars() {
                return Err(AlgebraError::VariableCountMismatch {
                    left: self.ambient_nvars(),
                    right: h.nvars(),
                });
            }
            if h.terms().iter().any(|(m, _)| m.degree() != 1) {
                return Err(AlgebraError::NotLinear);
            }
        }
        Ok(GradedIdealOracle::Sum(Box::new(self), forms))
    }

    pub fn field(&self) -> Field {
        match self {
            GradedIdealOracle::Points(p) => p.field(),
            GradedIdealOracle::Apolar(f) => f.field(),
            GradedIdealOracle::Generators { field, .. } => *field,
            GradedIdealOracle::Sum(inner, _) => inner.field(),
        }
    }

    fn ambient_nvars(&self) -> usize {
        match self {
            GradedIdealOracle::Points(p) => p.n() + 1,
            GradedIdealOracle::Apolar(f) => f.n() + 1,
            GradedIdealOracle::Generators { nvars, .. } => *nvars,
            GradedIdealOracle::Sum(inner, _) => inner.ambient_nvars(),
        }
    }

    /// Number of variables of the ring the graded pieces live in.
    pub fn nvars(&self) -> usize {
        match self {
            GradedIdealOracle::Sum(_, _) => self.reduction().targets(),
            _ => self.ambient_nvars(),
        }
    }

    /// Parametrization of `V(h)` for a `Sum` oracle.
    fn reduction(&self) -> LinearParam {
        let GradedIdealOracle::Sum(inner, forms) = self else {
            unreachable!()
        };
        let n = inner.ambient_nvars();
        let field = inner.field();
        let index = MonomialIndex::graded(n - 1, 1);
        let rows: Vec<Vec<Scalar>> = forms
            .iter()
            .map(|h| h.coords(&index).expect("linear"))
            .collect();
        let h = ExactMatrix::from_rows(field, n, &rows).expect("shape checked");
        LinearParam::new(h.kernel_basis())
    }

    /// `I_j` as a row space of `R_j` in the global monomial order.
    pub fn piece(&self, j: u32) -> Result<RowSpace> {
        let field = self.field();
        let nv = self.nvars();
        if nv == 0 {
            return Err(AlgebraError::Unsupported("at least one variable after reduction".into()));
        }
        let index = MonomialIndex::graded(nv - 1, j);
        match self {
            GradedIdealOracle::Points(points) => {
                let k = evaluation_matrix(points, j).kernel_basis();
                Ok(RowSpace::from_matrix(&k.transpose()))
            }
            GradedIdealOracle::Apolar(form) => {
                if j > form.d() {
                    return Ok(RowSpace::full(field, index.len()));
                }
                let k = catalecticant(form, j)?.kernel_basis();
                Ok(RowSpace::from_matrix(&k.transpose()))
            }
            GradedIdealOracle::Generators { gens, .. } => {
                let mut rows = Vec::new();
                for g in gens.iter().filter(|g| !g.is_zero()) {
                    let e = g.homogeneous_degree()?;
                    if e > j {
                        continue;
                    }
                    for m in monomial_basis(nv - 1, j - e) {
                        rows.push(g.mul_monomial(&m).coords(&index)?);
                    }
                }
                RowSpace::from_vectors(field, index.len(), &rows)
            }
            GradedIdealOracle::Sum(inner, _) => {
                let phi = self.reduction();
                if let GradedIdealOracle::Generators { gens, .. } = inner.as_ref() {
                    let pulled = gens
                        .iter()
                        .map(|g| substitute_linear(g, &phi))
                        .collect::<Result<Vec<_>>>()?;
                    return GradedIdealOracle::Generators {
                        field,
                        nvars: nv,
                        gens: pulled,
                    }
                    .piece(j);
                }
                let outer = inner.piece(j)?;
                let inner_index = MonomialIndex::graded(inner.nvars() - 1, j);
                let mut rows = Vec::new();
                for v in outer.vectors() {
                    let p = MPoly::from_coords(RingKind::Dual, field, inner.nvars(), &inner_index, &v);
                    rows.push(substitute_linear(&p, &phi)?.coords(&index)?);
                }
                RowSpace::from_vectors(field, index.len(), &rows)
            }
        }
    }
}

/// Canonical RREF basis of `I_j`, one row per basis vector.
pub fn ideal_piece(oracle: &GradedIdealOracle, j: u32) -> Result<ExactMatrix> {
    Ok(oracle.piece(j)?.basis().clone())
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `dim R_j − dim I_j` for `j = 0..=j_max`.
pub fn quotient_dims(oracle: &GradedIdealOracle, j_max: u32) -> Result<HilbertFunction> {
    let nv = oracle.nvars();
    (0..=j_max)
        .map(|j| Ok(binom(nv - 1 + j as usize, j as usize) - oracle.piece(j)?.dim()))
        .collect::<Result<Vec<_>>>()
        .map(HilbertFunction)
}

/// `β[i][r] = β_{i,i+r}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    beta: Vec<Vec<usize>>,
}

impl BettiTable {
    pub fn new(beta: Vec<Vec<usize>>) -> BettiTable {
        BettiTable { beta }
    }

    /// Builds a table from `(i, j, β_{i,j})` triples.
    pub fn from_entries(entries: &[(usize, usize, usize)]) -> BettiTable {
        let imax = entries.iter().map(|e| e.0).max().unwrap_or(0);
        let rmax = entries.iter().map(|e| e.1 - e.0).max().unwrap_or(0);
        let mut beta = vec![vec![0; rmax + 1]; imax + 1];
        for &(i, j, b) in entries {
            beta[i][j - i] = b;
        }
        BettiTable { beta }
    }

    pub fn max_i(&self) -> usize {
        self.beta.len().saturating_sub(1)
    }

    pub fn max_r(&self) -> usize {
        self.beta.first().map_or(0, |c| c.len().saturating_sub(1))
    }

    /// `β_{i,j}`, zero outside the computed range.
    pub fn get(&self, i: usize, j: usize) -> usize {
        if j < i {
            return 0;
        }
        self.beta
            .get(i)
            .and_then(|c| c.get(j - i))
            .copied()
            .unwrap_or(0)
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.beta
    }

    /// Drops trailing rows and columns that are entirely zero.
    pub fn trimmed(&self) -> BettiTable {
        let icount = (0..self.beta.len())
            .rev()
            .find(|&i| self.beta[i].iter().any(|&b| b > 0))
            .map_or(1, |i| i + 1);
        let rcount = (0..=self.max_r())
            .rev()
            .find(|&r| self.beta.iter().any(|c| c[r] > 0))
            .map_or(1, |r| r + 1);
        BettiTable {
            beta: self.beta[..icount]
                .iter()
                .map(|c| c[..rcount].to_vec())
                .collect(),
        }
    }

    /// Coefficients of `K(t) = Σ (−1)^i β_{i,j} t^j`.
    pub fn numerator(&self) -> Vec<BigInt> {
        let top = self.max_i() + self.max_r();
        let mut k = vec![BigInt::zero(); top + 1];
        for (i, col) in self.beta.iter().enumerate() {
            for (r, &b) in col.iter().enumerate() {
                let s = if i % 2 == 0 { 1i64 } else { -1 };
                k[i + r] += BigInt::from(s) * BigInt::from(b);
            }
        }
        k
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cell = |b: usize| if b == 0 { "-".to_string() } else { b.to_string() };
        let width = self
            .beta
            .iter()
            .flatten()
            .map(|&b| cell(b).len())
            .max()
            .unwrap_or(1);
        for r in 0..=self.max_r() {
            let row: Vec<String> = self
                .beta
                .iter()
                .map(|c| format!("{:>width$}", cell(c[r])))
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

struct Quotient {
    /// `M_r` basis: the non-pivot monomials of `I_r`.
    basis: Vec<usize>,
    /// Position of a monomial column within `basis`.
    slot: Vec<Option<usize>>,
    space: RowSpace,
}

impl Quotient {
    fn new(space: RowSpace) -> Quotient {
        let basis = space.non_pivots();
        let mut slot = vec![None; space.ambient_dim()];
        for (k, &c) in basis.iter().enumerate() {
            slot[c] = Some(k);
        }
        Quotient { basis, slot, space }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Normal form of a monomial column in `M` coordinates.
    fn reduce_monomial(&self, col: usize) -> Vec<(usize, Scalar)> {
        let field = self.space.field();
        if let Some(k) = self.slot[col] {
            return vec![(k, field.one())];
        }
        let row = self
            .space
            .pivots()
            .iter()
            .position(|&p| p == col)
            .expect("pivot column");
        let b = self.space.basis();
        self.basis
            .iter()
            .enumerate()
            .filter(|(_, &c)| !b.is_zero_at(row, c))
            .map(|(k, &c)| (k, -b.get(row, c)))
            .collect()
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in start..n {
            cur.push(s);
            go(s + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

struct Strands {
    field: Field,
    nvars: usize,
    quotients: Vec<Quotient>,
    /// `mult[r][m][k]`: `x_k · m` in `M_{r+1}` for basis element `m` of `M_r`.
    mult: Vec<Vec<Vec<Vec<(usize, Scalar)>>>>,
    budget: usize,
}

impl Strands {
    fn new(oracle: &GradedIdealOracle, top: u32, budget: usize) -> Result<Strands> {
        let nvars = oracle.nvars();
        let field = oracle.field();
        let mut quotients = Vec::new();
        let mut indices = Vec::new();
        for j in 0..=top {
            quotients.push(Quotient::new(oracle.piece(j)?));
            indices.push(MonomialIndex::graded(nvars - 1, j));
        }
        let mut mult = Vec::new();
        for r in 0..top as usize {
            let (src, dst) = (&quotients[r], &quotients[r + 1]);
            let table = src
                .basis
                .iter()
                .map(|&c| {
                    let m = indices[r].get(c);
                    (0..nvars)
                        .map(|k| {
                            let up = m.mul(&Monomial::var(nvars, k));
                            dst.reduce_monomial(indices[r + 1].position(&up).expect("degree r+1"))
                        })
                        .collect()
                })
                .collect();
            mult.push(table);
        }
        Ok(Strands {
            field,
            nvars,
            quotients,
            mult,
            budget,
        })
    }

    fn dim_m(&self, r: i64) -> usize {
        if r < 0 {
            0
        } else {
            self.quotients.get(r as usize).map_or(0, |q| q.dim())
        }
    }

    /// Rank of `Λ^i V ⊗ M_r → Λ^{i−1} V ⊗ M_{r+1}`.
    fn rank(&self, i: usize, r: i64) -> Result<usize> {
        if i == 0 || i > self.nvars || r < 0 {
            return Ok(0);
        }
        let r = r as usize;
        let (src_dim, dst_dim) = (self.dim_m(r as i64), self.dim_m(r as i64 + 1));
        if src_dim == 0 || dst_dim == 0 {
            return Ok(0);
        }
        let src_sets = subsets(self.nvars, i);
        let dst_sets = subsets(self.nvars, i - 1);
        let rows = dst_sets.len() * dst_dim;
        let cols = src_sets.len() * src_dim;
        if rows.saturating_mul(cols) > self.budget {
            return Err(AlgebraError::BudgetExceeded {
                entries: rows.saturating_mul(cols),
                budget: self.budget,
            });
        }
        let mut m = ExactMatrix::zeros(self.field, rows, cols);
        for (si, s) in src_sets.iter().enumerate() {
            for mi in 0..src_dim {
                let col = si * src_dim + mi;
                for (t, &var) in s.iter().enumerate() {
                    let mut rest = s.clone();
                    rest.remove(t);
                    let ti = dst_sets.binary_search(&rest).expect("lexicographic subsets");
                    for (k, c) in &self.mult[r][mi][var] {
                        let v = if t % 2 == 0 { c.clone() } else { -c };
                        let row = ti * dst_dim + k;
                        let cur = m.get(row, col);
                        m.set(row, col, &(&cur + &v));
                    }
                }
            }
        }
        Ok(m.rank())
    }
}

/// Graded Betti numbers `β_{i,i+r}` of `R/I` for `i ≤ i_max`, `r ≤ r_max`.
pub fn koszul_betti(
    oracle: &GradedIdealOracle,
    i_max: usize,
    r_max: usize,
    budget: usize,
) -> Result<BettiTable> {
    let strands = Strands::new(oracle, r_max as u32 + 1, budget)?;
    let mut beta = vec![vec![0; r_max + 1]; i_max + 1];
    for (i, col) in beta.iter_mut().enumerate() {
        for (r, b) in col.iter_mut().enumerate() {
            let dim = binom(strands.nvars, i) * strands.dim_m(r as i64);
            if dim == 0 {
                continue;
            }
            let out = strands.rank(i, r as i64)?;
            let inc = strands.rank(i + 1, r as i64 - 1)?;
            *b = dim - out - inc;
        }
    }
    Ok(BettiTable::new(beta))
}

fn binom_big(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// Degree of the module from its table: `K(t)` must vanish to order `c` at
/// `t = 1`, and the degree is `(−1)^c K^{(c)}(1) / c!`.
pub fn degree_from_betti(table: &BettiTable, codim: usize) -> Result<BigRational> {
    let k = table.numerator();
    // coefficient of (t−1)^m in K is Σ_j k_j C(j, m)
    let taylor = |m: usize| -> BigInt {
        k.iter()
            .enumerate()
            .map(|(j, kj)| kj * binom_big(j, m))
            .sum()
    };
    if (0..codim).any(|m| !taylor(m).is_zero()) || taylor(codim).is_zero() {
        return Err(AlgebraError::TableInconsistent(codim));
    }
    let sign = if codim % 2 == 0 { 1 } else { -1 };
    Ok(BigRational::from_integer(taylor(codim) * sign))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn twisted_cubic() -> GradedIdealOracle {
        let q = Field::Rational;
        let gens = ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]
            .iter()
            .map(|s| parse_poly(s, q, RingKind::Primal, Some(4)).unwrap())
            .collect();
        GradedIdealOracle::generators(gens).unwrap()
    }

    #[test]
    fn twisted_cubic_hilbert_function() {
        let h = quotient_dims(&twisted_cubic(), 5).unwrap();
        assert_eq!(h.values(), &[1, 4, 7, 10, 13, 16]);
    }

    #[test]
    fn twisted_cubic_table() {
        let b = koszul_betti(&twisted_cubic(), 3, 2, DEFAULT_BUDGET).unwrap().trimmed();
        assert_eq!(b, BettiTable::from_entries(&[(0, 0, 1), (1, 2, 3), (2, 3, 2)]));
        assert_eq!(b.to_string(), "1 - -\n- 3 2\n");
        assert_eq!(degree_from_betti(&b, 2).unwrap(), BigRational::from_integer(3.into()));
    }

    #[test]
    fn wrong_codimension_rejected() {
        let b = BettiTable::from_entries(&[(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
        assert_eq!(degree_from_betti(&b, 3), Err(AlgebraError::TableInconsistent(3)));
        assert_eq!(degree_from_betti(&b, 1), Err(AlgebraError::TableInconsistent(1)));
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            koszul_betti(&twisted_cubic(), 3, 2, 10),
            Err(AlgebraError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn hyperplane_section_of_twisted_cubic() {
        // a hyperplane meets the curve in three points of P^2
        let q = Field::Rational;
        let h = parse_poly("x3", q, RingKind::Primal, Some(4)).unwrap();
        let o = twisted_cubic().with_linear_forms(vec![h]).unwrap();
        assert_eq!(o.nvars(), 3);
        assert_eq!(quotient_dims(&o, 3).unwrap().values(), &[1, 3, 3, 3]);
    }
}
