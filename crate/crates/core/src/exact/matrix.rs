use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use super::scalar::{mod_inv, Field, ModInt, Scalar};
use crate::error::{AlgebraError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Entries {
    Rational(Vec<BigRational>),
    Modular { p: u64, data: Vec<u64> },
}

/// Dense row-major matrix over a single exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

/// Result of [`ExactMatrix::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Particular solution with all free variables zero, plus the dimension
    /// of the solution space.
    Solved { solution: Vec<Scalar>, nullity: usize },
    Inconsistent,
}

trait Elim {
    type T: Clone;
    fn is_zero(&self, a: &Self::T) -> bool;
    fn inv(&self, a: &Self::T) -> Self::T;
    fn scale(&self, row: &mut [Self::T], s: &Self::T);
    /// `dst -= s * src`
    fn axpy(&self, dst: &mut [Self::T], src: &[Self::T], s: &Self::T);
}

struct ModP(u64);

impl Elim for ModP {
    type T = u64;
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> u64 {
        mod_inv(*a, self.0).expect("pivot is nonzero")
    }
    fn scale(&self, row: &mut [u64], s: &u64) {
        let p = self.0;
        for x in row.iter_mut() {
            *x = *x * s % p;
        }
    }
    fn axpy(&self, dst: &mut [u64], src: &[u64], s: &u64) {
        let p = self.0;
        let m = p - s;
        for (d, x) in dst.iter_mut().zip(src) {
            if *x != 0 {
                *d = (*d + m * x) % p;
            }
        }
    }
}

struct Rat;

impl Elim for Rat {
    type T = BigRational;
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn scale(&self, row: &mut [BigRational], s: &BigRational) {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x *= s;
            }
        }
    }
    fn axpy(&self, dst: &mut [BigRational], src: &[BigRational], s: &BigRational) {
        for (d, x) in dst.iter_mut().zip(src) {
            if !x.is_zero() {
                *d -= s * x;
            }
        }
    }
}

/// In-place Gauss-Jordan; leftmost pivots, first nonzero row wins.
/// With `full == false` only rows below the pivot are cleared.
fn eliminate<E: Elim>(e: &E, data: &mut [E::T], rows: usize, cols: usize, full: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !e.is_zero(&data[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for k in c..cols {
                data.swap(pr * cols + k, r * cols + k);
            }
        }
        let inv = e.inv(&data[r * cols + c]);
        e.scale(&mut data[r * cols + c..(r + 1) * cols], &inv);
        let pivot_row: Vec<E::T> = data[r * cols + c..(r + 1) * cols].to_vec();
        let start = if full { 0 } else { r + 1 };
        for i in start..rows {
            if i == r {
                continue;
            }
            let f = data[i * cols + c].clone();
            if e.is_zero(&f) {
                continue;
            }
            e.axpy(&mut data[i * cols + c..(i + 1) * cols], &pivot_row, &f);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> ExactMatrix {
        let n = rows * cols;
        let entries = match field {
            Field::Rational => Entries::Rational(vec![BigRational::zero(); n]),
            Field::Prime(p) => Entries::Modular {
                p,
                data: vec![0; n],
            },
        };
        ExactMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(field: Field, n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(field, n, n);
        let one = field.one();
        for i in 0..n {
            m.set(i, i, &one);
        }
        m
    }

    /// Builds a matrix from row-major scalars; every entry must lie in `field`.
    pub fn from_scalars(field: Field, rows: usize, cols: usize, values: &[Scalar]) -> Result<ExactMatrix> {
        if values.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        let mut m = ExactMatrix::zeros(field, rows, cols);
        for (k, v) in values.iter().enumerate() {
            m.try_set(k / cols.max(1), k % cols.max(1), v)?;
        }
        Ok(m)
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Result<ExactMatrix> {
        let mut m = ExactMatrix::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, v) in row.iter().enumerate() {
                m.try_set(i, j, v)?;
            }
        }
        Ok(m)
    }

    pub fn from_i64(field: Field, rows: usize, cols: usize, values: &[i64]) -> ExactMatrix {
        assert_eq!(values.len(), rows * cols, "entry count");
        let scalars: Vec<Scalar> = values.iter().map(|&v| field.from_i64(v)).collect();
        ExactMatrix::from_scalars(field, rows, cols, &scalars).expect("uniform field")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<ExactMatrix> {
        let mut m = ExactMatrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "column {j} has {} entries, expected {rows}",
                    col.len()
                )));
            }
            for (i, v) in col.iter().enumerate() {
                m.try_set(i, j, v)?;
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        match &self.entries {
            Entries::Rational(_) => Field::Rational,
            Entries::Modular { p, .. } => Field::Prime(*p),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let k = i * self.cols + j;
        match &self.entries {
            Entries::Rational(d) => Scalar::Rational(d[k].clone()),
            Entries::Modular { p, data } => Scalar::Modular(ModInt::new(data[k], *p)),
        }
    }

    pub fn is_zero_at(&self, i: usize, j: usize) -> bool {
        let k = i * self.cols + j;
        match &self.entries {
            Entries::Rational(d) => d[k].is_zero(),
            Entries::Modular { data, .. } => data[k] == 0,
        }
    }

    pub fn try_set(&mut self, i: usize, j: usize, v: &Scalar) -> Result<()> {
        if i >= self.rows || j >= self.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "index ({i},{j}) outside {}x{}",
                self.rows, self.cols
            )));
        }
        let k = i * self.cols + j;
        let field = self.field();
        match (&mut self.entries, v) {
            (Entries::Rational(d), Scalar::Rational(q)) => d[k] = q.clone(),
            (Entries::Modular { p, data }, Scalar::Modular(m)) if m.modulus() == *p => {
                data[k] = m.value()
            }
            _ => {
                return Err(AlgebraError::MixedFields {
                    left: field,
                    right: v.field(),
                })
            }
        }
        Ok(())
    }

    /// Panics if `v` lies in another field.
    pub fn set(&mut self, i: usize, j: usize, v: &Scalar) {
        self.try_set(i, j, v).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.field(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.is_zero_at(i, j) {
                    t.set(j, i, &self.get(i, j));
                }
            }
        }
        t
    }

    pub fn select_rows(&self, idx: &[usize]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.field(), idx.len(), self.cols);
        for (r, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                if !self.is_zero_at(i, j) {
                    m.set(r, j, &self.get(i, j));
                }
            }
        }
        m
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.field() != other.field() {
            return Err(AlgebraError::MixedFields {
                left: self.field(),
                right: other.field(),
            });
        }
        if self.cols != other.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "stacking {} and {} columns",
                self.cols, other.cols
            )));
        }
        let entries = match (&self.entries, &other.entries) {
            (Entries::Rational(a), Entries::Rational(b)) => {
                Entries::Rational(a.iter().chain(b).cloned().collect())
            }
            (Entries::Modular { p, data: a }, Entries::Modular { data: b, .. }) => Entries::Modular {
                p: *p,
                data: a.iter().chain(b).copied().collect(),
            },
            _ => unreachable!(),
        };
        Ok(ExactMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.field() != other.field() {
            return Err(AlgebraError::MixedFields {
                left: self.field(),
                right: other.field(),
            });
        }
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, m, q) = (self.rows, self.cols, other.cols);
        let entries = match (&self.entries, &other.entries) {
            (Entries::Modular { p, data: a }, Entries::Modular { data: b, .. }) => {
                let p = *p;
                let mut out = vec![0u64; n * q];
                for i in 0..n {
                    for k in 0..m {
                        let x = a[i * m + k];
                        if x == 0 {
                            continue;
                        }
                        for j in 0..q {
                            out[i * q + j] = (out[i * q + j] + x * b[k * q + j]) % p;
                        }
                    }
                }
                Entries::Modular { p, data: out }
            }
            (Entries::Rational(a), Entries::Rational(b)) => {
                let mut out = vec![BigRational::zero(); n * q];
                for i in 0..n {
                    for k in 0..m {
                        let x = &a[i * m + k];
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..q {
                            out[i * q + j] += x * &b[k * q + j];
                        }
                    }
                }
                Entries::Rational(out)
            }
            _ => unreachable!(),
        };
        Ok(ExactMatrix {
            rows: n,
            cols: q,
            entries,
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let col = ExactMatrix::from_columns(self.field(), v.len(), &[v.to_vec()])?;
        Ok(self.mul(&col)?.column(0))
    }

    pub fn is_zero(&self) -> bool {
        match &self.entries {
            Entries::Rational(d) => d.iter().all(|x| x.is_zero()),
            Entries::Modular { data, .. } => data.iter().all(|&x| x == 0),
        }
    }

    fn run(&mut self, full: bool) -> Vec<usize> {
        let (r, c) = (self.rows, self.cols);
        match &mut self.entries {
            Entries::Rational(d) => eliminate(&Rat, d, r, c, full),
            Entries::Modular { p, data } => eliminate(&ModP(*p), data, r, c, full),
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.run(true);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.run(false).len()
    }

    /// Canonical right-kernel basis as the columns of the result: one vector
    /// per free column, in increasing order, with a 1 in that column.
    pub fn kernel_basis(&self) -> ExactMatrix {
        let field = self.field();
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = ExactMatrix::zeros(field, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k.set(f, j, &field.one());
            for (i, &pc) in pivots.iter().enumerate() {
                if !r.is_zero_at(i, f) {
                    k.set(pc, j, &-r.get(i, f));
                }
            }
        }
        k
    }

    pub fn solve(&self, rhs: &[Scalar]) -> Result<SolveOutcome> {
        if rhs.len() != self.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let field = self.field();
        let mut aug = ExactMatrix::zeros(field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.is_zero_at(i, j) {
                    aug.set(i, j, &self.get(i, j));
                }
            }
            aug.try_set(i, self.cols, &rhs[i])?;
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(SolveOutcome::Inconsistent);
        }
        let mut x = vec![field.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Ok(SolveOutcome::Solved {
            solution: x,
            nullity: self.cols - pivots.len(),
        })
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A subspace of `k^n` held as its canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpace {
    basis: ExactMatrix,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn from_matrix(m: &ExactMatrix) -> RowSpace {
        let (r, pivots) = m.rref();
        let basis = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        RowSpace { basis, pivots }
    }

    pub fn from_vectors(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<RowSpace> {
        Ok(RowSpace::from_matrix(&ExactMatrix::from_rows(field, ambient, vectors)?))
    }

    pub fn zero(field: Field, ambient: usize) -> RowSpace {
        RowSpace {
            basis: ExactMatrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> RowSpace {
        RowSpace {
            basis: ExactMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; they index a basis of the quotient.
    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ambient_dim())
            .filter(|c| self.pivots.binary_search(c).is_err())
            .collect()
    }

    /// Reduces `v` modulo the subspace; the result vanishes on pivot columns.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            if out[pc].is_zero() {
                continue;
            }
            let f = out[pc].clone();
            for j in pc..self.ambient_dim() {
                if !self.basis.is_zero_at(i, j) {
                    out[j] = &out[j] - &(&f * &self.basis.get(i, j));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn is_subspace_of(&self, other: &RowSpace) -> bool {
        (0..self.dim()).all(|i| other.contains(&self.basis.row(i)))
    }

    pub fn sum(&self, other: &RowSpace) -> Result<RowSpace> {
        Ok(RowSpace::from_matrix(&self.basis.stack(&other.basis)?))
    }

    /// Basis vectors as rows.
    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|i| self.basis.row(i)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf() -> Field {
        Field::Prime(31991)
    }

    #[test]
    fn identity_is_its_own_rref() {
        let id = ExactMatrix::identity(Field::Rational, 3);
        let (r, p) = id.rref();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn rank_one_rref() {
        let m = ExactMatrix::from_i64(Field::Rational, 2, 2, &[1, 2, 2, 4]);
        let (r, p) = m.rref();
        assert_eq!(r, ExactMatrix::from_i64(Field::Rational, 2, 2, &[1, 2, 0, 0]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn canonical_kernel_vector() {
        let m = ExactMatrix::from_i64(Field::Rational, 1, 2, &[1, 1]);
        let k = m.kernel_basis();
        assert_eq!(k, ExactMatrix::from_i64(Field::Rational, 2, 1, &[-1, 1]));
    }

    #[test]
    fn solve_scalar_equation() {
        let q = Field::Rational;
        let m = ExactMatrix::from_i64(q, 1, 1, &[2]);
        match m.solve(&[q.from_i64(4)]).unwrap() {
            SolveOutcome::Solved { solution, nullity } => {
                assert_eq!(solution, vec![q.from_i64(2)]);
                assert_eq!(nullity, 0);
            }
            SolveOutcome::Inconsistent => panic!("consistent system"),
        }
    }

    #[test]
    fn inconsistent_system() {
        let f = gf();
        let m = ExactMatrix::from_i64(f, 2, 1, &[1, 1]);
        assert_eq!(
            m.solve(&[f.from_i64(1), f.from_i64(2)]).unwrap(),
            SolveOutcome::Inconsistent
        );
        assert!(m.solve(&[f.one()]).is_err());
    }

    #[test]
    fn mixed_entries_rejected() {
        let vals = vec![Field::Rational.one(), gf().one()];
        assert!(matches!(
            ExactMatrix::from_scalars(Field::Rational, 1, 2, &vals),
            Err(AlgebraError::MixedFields { .. })
        ));
    }

    #[test]
    fn rowspace_reduce_and_contains() {
        let f = gf();
        let m = ExactMatrix::from_i64(f, 2, 3, &[1, 1, 0, 0, 1, 1]);
        let s = RowSpace::from_matrix(&m);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[f.from_i64(1), f.from_i64(2), f.from_i64(1)]));
        assert!(!s.contains(&[f.from_i64(0), f.from_i64(0), f.from_i64(1)]));
        assert_eq!(s.non_pivots(), vec![2]);
    }
}
