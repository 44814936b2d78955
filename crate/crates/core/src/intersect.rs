//! Graded quotient rings `Q[g₁, …, g_k]/(relations)` with weighted
//! generators, and the intersection numbers of the variety of lines on
//! the spinor variety.
//!
//! Each graded piece is `R_j / I_j`, where `I_j` is spanned by monomial
//! multiples of the relations; the non-pivot monomials of its RREF form
//! the quotient basis.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::exact::{Field, RowSpace, Scalar};
use crate::poly::{parse_named, MPoly, Monomial, MonomialIndex, RingKind};

/// A class in a presented ring: a polynomial in its generators.
pub type ClassExpr = MPoly;

fn q() -> Field {
    Field::Rational
}

fn rat(c: &Scalar) -> BigRational {
    c.as_rational().expect("rational coefficients").clone()
}

/// `∫ monomial = value`, fixing the top degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integration {
    pub monomial: Monomial,
    pub value: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRingPresentation {
    names: Vec<String>,
    degrees: Vec<u32>,
    relations: Vec<ClassExpr>,
    integration: Option<Integration>,
}

impl GradedRingPresentation {
    pub fn new(names: &[&str], degrees: &[u32]) -> Result<GradedRingPresentation> {
        if names.len() != degrees.len() || names.is_empty() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{} generator names for {} degrees",
                names.len(),
                degrees.len()
            )));
        }
        if degrees.contains(&0) {
            return Err(AlgebraError::Unsupported("generators of positive degree".into()));
        }
        Ok(GradedRingPresentation {
            names: names.iter().map(|s| s.to_string()).collect(),
            degrees: degrees.to_vec(),
            relations: Vec::new(),
            integration: None,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn relations(&self) -> &[ClassExpr] {
        &self.relations
    }

    pub fn integration(&self) -> Option<&Integration> {
        self.integration.as_ref()
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn parse(&self, text: &str) -> Result<ClassExpr> {
        parse_named(text, q(), RingKind::Primal, &self.names)
    }

    pub fn var(&self, name: &str) -> Result<ClassExpr> {
        self.parse(name)
    }

    pub fn constant(&self, c: i64) -> ClassExpr {
        MPoly::constant(RingKind::Primal, q(), self.ngens(), q().from_i64(c))
    }

    pub fn display(&self, c: &ClassExpr) -> String {
        c.display_with(&self.names)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.exponents().iter().zip(&self.degrees).map(|(e, w)| e * w).sum()
    }

    /// Weighted degree, `None` for zero; fails on inhomogeneous input.
    pub fn weighted_degree(&self, c: &ClassExpr) -> Result<Option<u32>> {
        if c.nvars() != self.ngens() {
            return Err(AlgebraError::VariableCountMismatch {
                left: self.ngens(),
                right: c.nvars(),
            });
        }
        let mut deg = None;
        for (m, _) in c.terms() {
            let d = self.monomial_degree(m);
            if deg.is_some_and(|e| e != d) {
                return Err(AlgebraError::NotHomogeneous);
            }
            deg = Some(d);
        }
        Ok(deg)
    }

    pub fn add_relation(&mut self, r: ClassExpr) -> Result<()> {
        self.weighted_degree(&r)?;
        if !r.is_zero() {
            self.relations.push(r);
        }
        Ok(())
    }

    pub fn with_relations(mut self, texts: &[&str]) -> Result<GradedRingPresentation> {
        for t in texts {
            let r = self.parse(t)?;
            self.add_relation(r)?;
        }
        Ok(self)
    }

    pub fn with_integration(mut self, monomial: &str, value: BigRational) -> Result<GradedRingPresentation> {
        let m = self.parse(monomial)?;
        match m.terms() {
            [(mono, c)] if c.is_one() => {
                self.integration = Some(Integration {
                    monomial: mono.clone(),
                    value,
                });
                Ok(self)
            }
            _ => Err(AlgebraError::Unsupported(format!(
                "a monomial for the integration rule, got '{monomial}'"
            ))),
        }
    }

    pub fn top_degree(&self) -> Option<u32> {
        self.integration.as_ref().map(|i| self.monomial_degree(&i.monomial))
    }

    /// Adds generators after the existing ones; relations carry over, the
    /// integration rule does not.
    pub fn adjoin(&self, names: &[&str], degrees: &[u32]) -> Result<GradedRingPresentation> {
        let all_names: Vec<&str> = self
            .names
            .iter()
            .map(String::as_str)
            .chain(names.iter().copied())
            .collect();
        let all_degrees: Vec<u32> = self.degrees.iter().chain(degrees).copied().collect();
        let mut out = GradedRingPresentation::new(&all_names, &all_degrees)?;
        for r in &self.relations {
            out.relations.push(pad(r, out.ngens()));
        }
        Ok(out)
    }

    /// A class of this ring read in a ring with more generators.
    pub fn lift(&self, c: &ClassExpr, into: &GradedRingPresentation) -> ClassExpr {
        pad(c, into.ngens())
    }
}

fn pad(c: &ClassExpr, n: usize) -> ClassExpr {
    let terms = c
        .terms()
        .iter()
        .map(|(m, x)| {
            let mut e = m.exponents().to_vec();
            e.resize(n, 0);
            (Monomial::new(e), x.clone())
        })
        .collect();
    MPoly::from_terms(RingKind::Primal, q(), n, terms).expect("rational")
}

/// Monomials of weighted degree `j`, with those heavy in later generators
/// first, so relations eliminate them in favour of earlier generators.
fn weighted_monomials(degrees: &[u32], j: u32) -> Vec<Monomial> {
    fn go(degrees: &[u32], j: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == degrees.len() {
            if j == 0 {
                out.push(Monomial::new(prefix.clone()));
            }
            return;
        }
        let w = degrees[prefix.len()];
        for e in 0..=j / w {
            prefix.push(e);
            go(degrees, j - e * w, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(degrees, j, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| b.exponents().iter().rev().cmp(a.exponents().iter().rev()));
    out
}

/// Sparse echelon basis over Q: each row has a leading 1 at its key and
/// only later columns otherwise. Relation multiples are very sparse, so
/// this beats dense RREF by a wide margin on the larger pieces.
#[derive(Debug, Default)]
struct SparseEchelon {
    rows: BTreeMap<usize, Vec<(usize, BigRational)>>,
}

impl SparseEchelon {
    /// Eliminates every pivot column from `v`; the result is the unique
    /// representative of `v` modulo the span with zero pivot entries.
    fn reduce(&self, v: &mut BTreeMap<usize, BigRational>) {
        let mut cursor = 0;
        while let Some(k) = v.range(cursor..).map(|(k, _)| *k).find(|k| self.rows.contains_key(k)) {
            let a = v.remove(&k).expect("present");
            for (c, x) in &self.rows[&k][1..] {
                let e = v.entry(*c).or_insert_with(BigRational::zero);
                *e -= &a * x;
                if e.is_zero() {
                    v.remove(c);
                }
            }
            cursor = k + 1;
        }
    }

    fn insert(&mut self, mut v: BTreeMap<usize, BigRational>) {
        self.reduce(&mut v);
        let Some((&lead, a)) = v.iter().next() else {
            return;
        };
        let inv = a.recip();
        let row = v.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        self.rows.insert(lead, row);
    }
}

fn sparse(v: &[Scalar]) -> BTreeMap<usize, BigRational> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, rat(c)))
        .collect()
}

#[derive(Debug)]
struct Piece {
    index: MonomialIndex,
    ideal: SparseEchelon,
    basis: Vec<usize>,
}

/// A presentation together with its cached graded pieces.
#[derive(Debug)]
pub struct GradedRing {
    pres: GradedRingPresentation,
    pieces: RefCell<HashMap<u32, Rc<Piece>>>,
}

/// Coordinates of a class against the quotient basis of its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub degree: Option<u32>,
    pub basis: Vec<Monomial>,
    pub coords: Vec<BigRational>,
}

impl NormalForm {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl GradedRing {
    pub fn new(pres: GradedRingPresentation) -> GradedRing {
        GradedRing {
            pres,
            pieces: RefCell::new(HashMap::new()),
        }
    }

    pub fn presentation(&self) -> &GradedRingPresentation {
        &self.pres
    }

    fn piece(&self, j: u32) -> Rc<Piece> {
        if let Some(p) = self.pieces.borrow().get(&j) {
            return p.clone();
        }
        let index = MonomialIndex::new(weighted_monomials(&self.pres.degrees, j));
        let mut ideal = SparseEchelon::default();
        for r in &self.pres.relations {
            let e = self.pres.weighted_degree(r).expect("checked").expect("nonzero");
            if e > j {
                continue;
            }
            for m in weighted_monomials(&self.pres.degrees, j - e) {
                ideal.insert(sparse(&r.mul_monomial(&m).coords(&index).expect("same weighted degree")));
            }
        }
        let basis = (0..index.len()).filter(|i| !ideal.rows.contains_key(i)).collect();
        let p = Rc::new(Piece {
            index,
            ideal,
            basis,
        });
        self.pieces.borrow_mut().insert(j, p.clone());
        p
    }

    pub fn dim(&self, j: u32) -> usize {
        self.piece(j).basis.len()
    }

    /// Dimensions of the pieces `0..=j_max`.
    pub fn dims(&self, j_max: u32) -> Vec<usize> {
        (0..=j_max).map(|j| self.dim(j)).collect()
    }

    /// `Σ_j dim`, up to one past the top degree; `None` without an
    /// integration rule or when the piece past the top is nonzero.
    pub fn total_dim(&self) -> Option<usize> {
        let top = self.pres.top_degree()?;
        (self.dim(top + 1) == 0).then(|| self.dims(top).iter().sum())
    }

    pub fn normal_form(&self, c: &ClassExpr) -> Result<NormalForm> {
        let Some(j) = self.pres.weighted_degree(c)? else {
            return Ok(NormalForm {
                degree: None,
                basis: Vec::new(),
                coords: Vec::new(),
            });
        };
        let p = self.piece(j);
        let mut v = sparse(&c.coords(&p.index)?);
        p.ideal.reduce(&mut v);
        Ok(NormalForm {
            degree: Some(j),
            basis: p.basis.iter().map(|&i| p.index.get(i).clone()).collect(),
            coords: p.basis.iter().map(|&i| v.get(&i).cloned().unwrap_or_else(BigRational::zero)).collect(),
        })
    }

    /// The normal form as a polynomial in the basis monomials.
    pub fn reduce(&self, c: &ClassExpr) -> Result<ClassExpr> {
        let nf = self.normal_form(c)?;
        let terms = nf
            .basis
            .into_iter()
            .zip(nf.coords)
            .filter(|(_, x)| !x.is_zero())
            .map(|(m, x)| (m, Scalar::Rational(x)))
            .collect();
        MPoly::from_terms(RingKind::Primal, q(), self.pres.ngens(), terms)
    }

    pub fn class_equal(&self, a: &ClassExpr, b: &ClassExpr) -> Result<bool> {
        Ok(self.normal_form(&a.try_sub(b)?)?.is_zero())
    }

    pub fn integrate(&self, c: &ClassExpr) -> Result<BigRational> {
        let rule = self
            .pres
            .integration
            .as_ref()
            .ok_or_else(|| AlgebraError::Unsupported("an integration rule".into()))?;
        let top = self.pres.top_degree().expect("rule present");
        let Some(j) = self.pres.weighted_degree(c)? else {
            return Ok(BigRational::zero());
        };
        if j != top {
            return Err(AlgebraError::DegreeOutOfRange {
                degree: j as usize,
                max: top as usize,
            });
        }
        let dim = self.dim(top);
        if dim != 1 {
            return Err(AlgebraError::HilbertFunctionMismatch {
                expected: "a 1-dimensional top piece".into(),
                found: format!("dimension {dim} in degree {top}"),
            });
        }
        let norm = MPoly::monomial(RingKind::Primal, q(), self.pres.ngens(), rule.monomial.clone(), q().one());
        let a = &self.normal_form(c)?.coords[0];
        let b = &self.normal_form(&norm)?.coords[0];
        if b.is_zero() {
            return Err(AlgebraError::HilbertFunctionMismatch {
                expected: "a nonzero normalization monomial".into(),
                found: "it vanishes in the quotient".into(),
            });
        }
        Ok(a / b * &rule.value)
    }

    /// `{x in degree j : x·c = 0}`, as a subspace of the quotient basis.
    pub fn annihilator_piece(&self, c: &ClassExpr, j: u32) -> Result<RowSpace> {
        let p = self.piece(j);
        let images: Vec<Vec<Scalar>> = p
            .basis
            .iter()
            .map(|&i| {
                let m = MPoly::monomial(RingKind::Primal, q(), self.pres.ngens(), p.index.get(i).clone(), q().one());
                Ok(self
                    .normal_form(&m.try_mul(c)?)?
                    .coords
                    .into_iter()
                    .map(Scalar::Rational)
                    .collect())
            })
            .collect::<Result<_>>()?;
        let width = images.first().map_or(0, Vec::len);
        if width == 0 {
            return Ok(RowSpace::full(q(), p.basis.len()));
        }
        let m = crate::exact::ExactMatrix::from_rows(q(), width, &images)?;
        Ok(RowSpace::from_matrix(&m.transpose().kernel_basis().transpose()))
    }

    /// The degree-`j` piece of the ideal generated by `gens` in the
    /// quotient, as a subspace of the quotient basis.
    pub fn ideal_piece(&self, gens: &[ClassExpr], j: u32) -> Result<RowSpace> {
        let dim = self.dim(j);
        let mut rows = Vec::new();
        for g in gens {
            let Some(e) = self.pres.weighted_degree(g)? else {
                continue;
            };
            if e > j {
                continue;
            }
            for m in weighted_monomials(&self.pres.degrees, j - e) {
                let nf = self.normal_form(&g.mul_monomial(&m))?;
                rows.push(nf.coords.into_iter().map(Scalar::Rational).collect());
            }
        }
        RowSpace::from_vectors(q(), dim, &rows)
    }
}

pub fn graded_piece(ring: &GradedRing, j: u32) -> (Vec<Monomial>, usize) {
    let p = ring.piece(j);
    let basis: Vec<Monomial> = p.basis.iter().map(|&i| p.index.get(i).clone()).collect();
    let n = basis.len();
    (basis, n)
}

pub fn normal_form(ring: &GradedRing, c: &ClassExpr) -> Result<NormalForm> {
    ring.normal_form(c)
}

pub fn class_equal(ring: &GradedRing, a: &ClassExpr, b: &ClassExpr) -> Result<bool> {
    ring.class_equal(a, b)
}

pub fn integrate(ring: &GradedRing, c: &ClassExpr) -> Result<BigRational> {
    ring.integrate(c)
}

/// Standard Young tableaux of a `rows × cols` rectangle, by the hook
/// length formula.
pub fn rectangular_syt(rows: usize, cols: usize) -> BigInt {
    let n = rows * cols;
    let mut num: BigInt = (1..=n).map(BigInt::from).product();
    for i in 0..rows {
        for j in 0..cols {
            num /= BigInt::from((rows - i) + (cols - j) - 1);
        }
    }
    num
}

/// `H*(Gr(k, n))` with `u_i = c_i(U)` for the tautological subbundle: the
/// relations are the components of degree `n−k+1..n` of `c(U)⁻¹`, and
/// `∫ (−u₁)^{k(n−k)}` is the number of standard tableaux of the rectangle.
pub fn grassmann_cohomology(k: usize, n: usize) -> Result<GradedRingPresentation> {
    if k == 0 || k >= n {
        return Err(AlgebraError::Unsupported(format!("Gr({k},{n}) with 1 ≤ k < n")));
    }
    let names: Vec<String> = (1..=k).map(|i| format!("u{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let degrees: Vec<u32> = (1..=k as u32).collect();
    let mut pres = GradedRingPresentation::new(&name_refs, &degrees)?;
    let u: Vec<ClassExpr> = (0..k).map(|i| MPoly::var(RingKind::Primal, q(), k, i)).collect();
    let mut s = vec![MPoly::constant(RingKind::Primal, q(), k, q().one())];
    for j in 1..=n {
        let mut acc = MPoly::zero(RingKind::Primal, q(), k);
        for i in 1..=j.min(k) {
            acc = &acc - &(&u[i - 1] * &s[j - i]);
        }
        s.push(acc);
    }
    for r in s.into_iter().skip(n - k + 1) {
        pres.add_relation(r)?;
    }
    let top = k * (n - k);
    let sign = if top % 2 == 0 { 1 } else { -1 };
    let value = BigRational::from_integer(rectangular_syt(k, n - k) * sign);
    pres.with_integration(&format!("u1^{top}"), value)
}

/// `Σ c_m Π images_i^{m_i}`.
pub fn compose(p: &MPoly, images: &[ClassExpr]) -> Result<ClassExpr> {
    if images.len() != p.nvars() || images.is_empty() {
        return Err(AlgebraError::VariableCountMismatch {
            left: p.nvars(),
            right: images.len(),
        });
    }
    let n = images[0].nvars();
    let mut powers: HashMap<(usize, u32), ClassExpr> = HashMap::new();
    let mut out = MPoly::zero(RingKind::Primal, q(), n);
    for (m, c) in p.terms() {
        let mut t = MPoly::constant(RingKind::Primal, q(), n, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                let pw = powers.entry((i, e)).or_insert_with(|| images[i].pow(e));
                t = t.try_mul(pw)?;
            }
        }
        out = out.try_add(&t)?;
    }
    Ok(out)
}

/// Elementary symmetric polynomials `e₁..e_r` in `r` variables.
fn elementary(r: usize) -> Vec<MPoly> {
    let x: Vec<MPoly> = (0..r).map(|i| MPoly::var(RingKind::Primal, q(), r, i)).collect();
    let one = MPoly::constant(RingKind::Primal, q(), r, q().one());
    // Π (1 + x_i t), read off by degree
    let mut e = vec![one];
    for xi in &x {
        let mut next = e.clone();
        next.push(MPoly::zero(RingKind::Primal, q(), r));
        for k in 1..next.len() {
            next[k] = &next[k] + &(&e[k - 1] * xi);
        }
        e = next;
    }
    e.into_iter().skip(1).collect()
}

/// Rewrites a symmetric polynomial in `r` variables as a polynomial in
/// `e₁..e_r` (variable `i` standing for `e_{i+1}`).
pub fn to_elementary(p: &MPoly) -> Result<MPoly> {
    let r = p.nvars();
    let e = elementary(r);
    let mut rest = p.clone();
    let mut out = MPoly::zero(RingKind::Primal, q(), r);
    while let Some((m, c)) = rest.leading().cloned() {
        let a = m.exponents();
        if a.windows(2).any(|w| w[0] < w[1]) {
            return Err(AlgebraError::Unsupported("a symmetric polynomial".into()));
        }
        let mut expo = vec![0u32; r];
        let mut term = MPoly::constant(RingKind::Primal, q(), r, c.clone());
        for i in 0..r {
            let k = a[i] - a.get(i + 1).copied().unwrap_or(0);
            expo[i] = k;
            if k > 0 {
                term = &term * &e[i].pow(k);
            }
        }
        rest = &rest - &term;
        out = &out + &MPoly::monomial(RingKind::Primal, q(), r, Monomial::new(expo), c);
    }
    Ok(out)
}

/// `c_1..c_N` of `Λ²E` as polynomials in `c_1(E)..c_r(E)`, `N = r(r−1)/2`.
pub fn lambda2_universal(r: usize) -> Result<Vec<MPoly>> {
    let x: Vec<MPoly> = (0..r).map(|i| MPoly::var(RingKind::Primal, q(), r, i)).collect();
    let one = MPoly::constant(RingKind::Primal, q(), r, q().one());
    let mut total = one.clone();
    for i in 0..r {
        for j in i + 1..r {
            total = &total * &(&(&one + &x[i]) + &x[j]);
        }
    }
    let n = r * (r - 1) / 2;
    (1..=n as u32)
        .map(|k| to_elementary(&total.homogeneous_part(k)))
        .collect()
}

/// Chern classes `c_1..c_N` of `Λ²E` from `c_1(E)..c_r(E)`.
pub fn chern_lambda2(b: &[ClassExpr]) -> Result<Vec<ClassExpr>> {
    lambda2_universal(b.len())?
        .iter()
        .map(|p| compose(p, b))
        .collect()
}

// ---------------------------------------------------------------------
// VSP(F, 8)

/// Relations of `H*(S)` in `h` (degree 1) and `b₃` (degree 3).
pub const S_RELATIONS: [&str; 2] = ["b3^2 + 8*b3*h^3 + 8*h^6", "6*h^5*b3 + 7*h^8"];

/// `c_i(B)` of the tautological rank-5 bundle, in `h` and `b₃`.
pub const B_CLASSES: [&str; 5] = ["-2*h", "2*h^2", "b3", "-2*h^4 - 2*h*b3", "0"];

pub const F_RELATION: &str = "h^4 - h^2*u2 - 1/2*u2^2 - 1/2*b3*u1 + 2*h^3*u1 - 2*h*u2*u1 \
     + 3*h^2*u1^2 - 1/2*u2*u1^2 + 2*h*u1^3 + 1/2*u1^4";

pub const G_RELATION: &str = "b3*h^2 - 1/2*b3*u2 + 2*h^3*u2 - h*u2^2 + b3*h*u1 + 3*h^2*u2*u1 \
     - 2*u2^2*u1 - 1/2*b3*u1^2 + 2*h^2*u1^3 + 1/2*u2*u1^3 + 2*h*u1^4 + 1/2*u1^5";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VspConfig {
    /// `∫_S h¹⁰`, the degree of the spinor variety.
    pub degree_s: BigRational,
    pub s_relations: Vec<String>,
    pub b_classes: Vec<String>,
    pub f: String,
    pub g: String,
}

impl VspConfig {
    pub fn standard(degree_s: BigRational) -> VspConfig {
        VspConfig {
            degree_s,
            s_relations: S_RELATIONS.iter().map(|s| s.to_string()).collect(),
            b_classes: B_CLASSES.iter().map(|s| s.to_string()).collect(),
            f: F_RELATION.split_whitespace().collect::<Vec<_>>().join(" "),
            g: G_RELATION.split_whitespace().collect::<Vec<_>>().join(" "),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCheck {
    pub name: String,
    pub expected: String,
    pub found: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingSummary {
    pub name: String,
    pub graded_dims: Vec<usize>,
    pub total: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VspReport {
    pub degree_s: String,
    pub rings: Vec<RingSummary>,
    pub checks: Vec<ClassCheck>,
    pub euler_s: Option<String>,
    pub degree: Option<String>,
    pub first_failure: Option<String>,
}

impl VspReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("int_S h^10 = {}\n", self.degree_s));
        for r in &self.rings {
            let dims: Vec<String> = r.graded_dims.iter().map(usize::to_string).collect();
            let total = r.total.map_or("?".to_string(), |t| t.to_string());
            out.push_str(&format!("{}: dims ({}), total {}\n", r.name, dims.join(","), total));
        }
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {}: {}  (expected {})\n",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.found,
                c.expected
            ));
        }
        if let Some(e) = &self.euler_s {
            out.push_str(&format!("e(S) = {e}\n"));
        }
        match (&self.degree, &self.first_failure) {
            (Some(d), None) => out.push_str(&format!("deg VSP(F,8) = {d}\n")),
            (_, Some(f)) => out.push_str(&format!("deg VSP(F,8) not certified: {f} failed\n")),
            (None, None) => unreachable!(),
        }
        out
    }
}

struct Recorder {
    checks: Vec<ClassCheck>,
}

impl Recorder {
    fn record(&mut self, name: &str, expected: String, found: Result<(String, bool)>) {
        let (found, pass) = found.unwrap_or_else(|e| (format!("error: {e}"), false));
        self.checks.push(ClassCheck {
            name: name.to_string(),
            expected,
            found,
            pass,
        });
    }

    fn class(&mut self, ring: &GradedRing, name: &str, value: &ClassExpr, expected: &str) {
        let pres = ring.presentation();
        let found = (|| {
            let want = pres.parse(expected)?;
            let shown = pres.display(&ring.reduce(value)?);
            Ok((shown, ring.class_equal(value, &want)?))
        })();
        self.record(name, expected.to_string(), found);
    }

    fn first_failure(&self) -> Option<String> {
        self.checks.iter().find(|c| !c.pass).map(|c| c.name.clone())
    }
}

fn fmt_rat(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `H*(S)` with its integration rule.
pub fn spinor_cohomology(config: &VspConfig) -> Result<GradedRingPresentation> {
    let rels: Vec<&str> = config.s_relations.iter().map(String::as_str).collect();
    GradedRingPresentation::new(&["h", "b3"], &[1, 3])?
        .with_relations(&rels)?
        .with_integration("h^10", config.degree_s.clone())
}

/// `H*(G)` for the universal line `G → S`, a `Gr(3,5)`-bundle.
pub fn family_cohomology(config: &VspConfig) -> Result<GradedRingPresentation> {
    let s = spinor_cohomology(config)?;
    let fiber = grassmann_cohomology(3, 5)?;
    let fiber_ring = GradedRing::new(fiber.clone());
    let u1_top = fiber.parse("u1^6")?;
    let value = fiber_ring.integrate(&u1_top)? * &config.degree_s;
    s.adjoin(&["u1", "u2"], &[1, 2])?
        .with_relations(&[config.f.as_str(), config.g.as_str()])?
        .with_integration("u1^6*h^10", value)
}

/// Certifies the invariants of the variety `M_Y` of lines in a linear
/// section of `S`, ending with the anticanonical degree.
pub fn vsp_invariants(config: &VspConfig) -> Result<VspReport> {
    let s_pres = spinor_cohomology(config)?;
    let s = GradedRing::new(s_pres.clone());
    let gr = GradedRing::new(grassmann_cohomology(3, 5)?);
    let g_pres = family_cohomology(config)?;
    let g = GradedRing::new(g_pres.clone());
    let mut rec = Recorder { checks: Vec::new() };

    let summary = |name: &str, ring: &GradedRing| {
        let top = ring.presentation().top_degree().unwrap_or(0);
        RingSummary {
            name: name.to_string(),
            graded_dims: ring.dims(top),
            total: ring.total_dim(),
        }
    };
    let mut rings = vec![summary("H*(S)", &s), summary("H*(Gr(3,5))", &gr), summary("H*(G)", &g)];
    let g_total = rings[2].total;
    rings.push(RingSummary {
        name: "H*(M)".into(),
        graded_dims: Vec::new(),
        total: g_total.map(|t| t / 2),
    });
    for (r, want) in rings.iter().zip([16, 10, 160, 80]) {
        rec.record(
            &format!("length of {}", r.name),
            want.to_string(),
            Ok((r.total.map_or("infinite".into(), |t| t.to_string()), r.total == Some(want))),
        );
    }

    // S: canonical class and Euler number from Ω¹ = Λ²B
    let b: Vec<ClassExpr> = config
        .b_classes
        .iter()
        .map(|t| s_pres.parse(t))
        .collect::<Result<_>>()?;
    let omega = chern_lambda2(&b)?;
    rec.class(&s, "K_S = c1(Λ²B)", &omega[0], "-8*h");
    let euler = s.integrate(&omega[9]);
    let euler_s = euler.as_ref().ok().map(fmt_rat);
    rec.record(
        "e(S) = ∫ c10(Λ²B)",
        "16".into(),
        euler
            .as_ref()
            .map(|e| (fmt_rat(e), *e == BigRational::from_integer(16.into())))
            .map_err(Clone::clone),
    );
    rec.record(
        "∫ (-u1)^6 on Gr(3,5)",
        "5".into(),
        gr.integrate(&gr.presentation().parse("u1^6")?)
            .map(|v| (fmt_rat(&v), v == BigRational::from_integer(5.into()))),
    );

    // G: annihilator of u1^14
    let gp = |t: &str| g_pres.parse(t);
    let u1_14 = gp("u1^14")?;
    let ann_gens = [gp("u1^2")?, gp("u2")?, gp("h^2 + u1*h")?];
    let top = g_pres.top_degree().expect("integration rule");
    // u1^14 kills everything above degree top − 14, so only the pieces
    // below that carry information.
    let ann = (|| {
        let last = top.saturating_sub(14);
        for j in 0..=last {
            let a = g.annihilator_piece(&u1_14, j)?;
            let i = g.ideal_piece(&ann_gens, j)?;
            if a != i {
                return Ok((format!("differs in degree {j} (dims {} vs {})", a.dim(), i.dim()), false));
            }
        }
        let a2 = g.annihilator_piece(&u1_14, 2)?.dim();
        let next = g.ideal_piece(&ann_gens, last + 1)?.dim();
        Ok((
            format!(
                "equal in degrees 0..={last}; dim H^4(G) = {}, dim Ann_2 = {a2}; \
                 in degree {} the ideal has dim {next} of {}",
                g.dim(2),
                last + 1,
                g.dim(last + 1)
            ),
            true,
        ))
    })();
    rec.record("Ann(u1^14) = (u1^2, u2, h^2+u1*h)", "equal as graded pieces".into(), ann);

    // E = pr_2* pr_1^* O(h): Chern classes and the projective-bundle relation
    let c1 = gp("-u1")?;
    let c2 = gp("-h^2 - u1*h")?;
    let h = gp("h")?;
    let bundle = &(&(&h * &h) - &(&c1 * &h)) + &c2;
    rec.class(&g, "h^2 - c1*h + c2", &bundle, "0");
    let c2_in_ann = g
        .annihilator_piece(&u1_14, 2)
        .and_then(|a| {
            let nf = g.normal_form(&c2)?;
            Ok(a.contains(&nf.coords.into_iter().map(Scalar::Rational).collect::<Vec<_>>()))
        })
        .map(|ok| (ok.to_string(), ok));
    rec.record("c2 ∈ Ann(u1^14)", "true".into(), c2_in_ann);

    // canonical classes
    let b1 = s_pres.lift(&b[0], &g_pres);
    let u1 = gp("u1")?;
    let k_s = s_pres.lift(&omega[0], &g_pres);
    // K_{G/S} = −c1(Hom(U,Q)) = −(3 c1(Q) − 2 c1(U)), c1(Q) = b1 − u1
    let c1_q = &b1 - &u1;
    let k_gs = -&(&c1_q.scale(&q().from_i64(3)) - &u1.scale(&q().from_i64(2)));
    rec.class(&g, "K_G/S", &k_gs, "6*h + 5*u1");
    let k_g = &k_s + &k_gs;
    rec.class(&g, "K_G", &k_g, "-2*h + 5*u1");
    let k_gm = &h.scale(&q().from_i64(-2)) + &c1;
    let k_m = &k_g - &k_gm;
    rec.class(&g, "K_M", &k_m, "6*u1");
    let m_y = c2.pow(5);
    rec.class(&g, "[M_Y] = c2^5", &m_y, "(-h^2 - u1*h)^5");
    let k_my = &k_m + &c1.scale(&q().from_i64(5));
    rec.class(&g, "K_M_Y = K_M + 5 c1", &k_my, "u1");

    let product = &(&m_y * &(-&k_my).pow(5)) * &h;
    rec.class(&g, "[M_Y](-K_M_Y)^5 h", &product, "11*u1^6*h^10");
    let degree = g.integrate(&product);
    rec.record(
        "deg M_Y",
        "660".into(),
        degree
            .as_ref()
            .map(|d| (fmt_rat(d), *d == BigRational::from_integer(660.into())))
            .map_err(Clone::clone),
    );

    let first_failure = rec.first_failure();
    Ok(VspReport {
        degree_s: fmt_rat(&config.degree_s),
        rings,
        checks: rec.checks,
        euler_s,
        degree: degree.ok().map(|d| fmt_rat(&d)),
        first_failure,
    })
}

/// Tautological relations on `S` in the generators `h, b₁..b₅`: the graded
/// pieces of `c(B)c(B*) = 1` and `(1−h)¹⁶ = c(B*(−2h)) c(Λ²B)`.
pub fn tautological_presentation() -> Result<GradedRingPresentation> {
    let mut pres = GradedRingPresentation::new(&["h", "b1", "b2", "b3", "b4", "b5"], &[1, 1, 2, 3, 4, 5])?;
    let n = pres.ngens();
    let one = pres.constant(1);
    let h = MPoly::var(RingKind::Primal, q(), n, 0);
    let b: Vec<ClassExpr> = (1..=5).map(|i| MPoly::var(RingKind::Primal, q(), n, i)).collect();
    let sign = |i: usize| q().from_i64(if i % 2 == 0 { 1 } else { -1 });
    // c(B*) has c_i = (−1)^i b_i
    let c_b = b.iter().fold(one.clone(), |acc, x| &acc + x);
    let c_bdual = b
        .iter()
        .enumerate()
        .fold(one.clone(), |acc, (i, x)| &acc + &x.scale(&sign(i + 1)));
    // c(B* ⊗ L) = Σ c_i(B*) (1 + l)^{5−i}, l = −2h
    let one_l = &one - &h.scale(&q().from_i64(2));
    let mut c_twist = one_l.pow(5);
    for (i, x) in b.iter().enumerate() {
        c_twist = &c_twist + &(&x.scale(&sign(i + 1)) * &one_l.pow(4 - i as u32));
    }
    let mut c_omega = one.clone();
    for c in chern_lambda2(&b)? {
        c_omega = &c_omega + &c;
    }
    let cotangent = (&one - &h).pow(16);
    let taut = &(&c_b * &c_bdual) - &one;
    let conormal = &cotangent - &(&c_twist * &c_omega);
    for total in [taut, conormal] {
        for j in 1..=16 {
            let part = weighted_part(&pres, &total, j);
            pres.add_relation(part)?;
        }
    }
    Ok(pres)
}

fn weighted_part(pres: &GradedRingPresentation, c: &ClassExpr, j: u32) -> ClassExpr {
    let terms = c
        .terms()
        .iter()
        .filter(|(m, _)| pres.monomial_degree(m) == j)
        .cloned()
        .collect();
    MPoly::from_terms(RingKind::Primal, q(), c.nvars(), terms).expect("rational")
}

/// Whether each `b_i` and the two relations of `H*(S)` follow from
/// [`tautological_presentation`] up to degree 8.
pub fn tautological_checks(config: &VspConfig) -> Result<Vec<ClassCheck>> {
    let pres = tautological_presentation()?;
    let ring = GradedRing::new(pres.clone());
    let mut rec = Recorder { checks: Vec::new() };
    for (i, t) in config.b_classes.iter().enumerate() {
        let lhs = pres.parse(&format!("b{}", i + 1))?;
        rec.class(&ring, &format!("b{}", i + 1), &lhs, t);
    }
    for r in &config.s_relations {
        let rel = pres.parse(r)?;
        rec.class(&ring, r, &rel, "0");
    }
    Ok(rec.checks)
}

/// Whether `a` is a nonnegative integer, for display of counts.
pub fn is_count(a: &BigRational) -> bool {
    a.is_integer() && !a.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(rectangular_syt(3, 2), 5.into());
        assert_eq!(rectangular_syt(2, 2), 2.into());
        assert_eq!(rectangular_syt(1, 7), 1.into());
        assert_eq!(rectangular_syt(2, 3), 5.into());
        assert_eq!(rectangular_syt(3, 3), 42.into());
    }

    #[test]
    fn projective_line() {
        let p1 = GradedRing::new(grassmann_cohomology(1, 2).unwrap());
        assert_eq!(p1.total_dim(), Some(2));
        let u = p1.presentation().parse("-u1").unwrap();
        assert_eq!(p1.integrate(&u).unwrap(), int(1));
    }

    #[test]
    fn grassmannians() {
        let g = GradedRing::new(grassmann_cohomology(3, 5).unwrap());
        assert_eq!(g.total_dim(), Some(10));
        assert_eq!(g.integrate(&g.presentation().parse("u1^6").unwrap()).unwrap(), int(5));
        let g24 = GradedRing::new(grassmann_cohomology(2, 4).unwrap());
        assert_eq!(g24.total_dim(), Some(6));
        assert_eq!(g24.integrate(&g24.presentation().parse("u1^4").unwrap()).unwrap(), int(2));
        // σ₂² = 1 on Gr(2,4): c(Q) components are the special classes
        let s2 = g24.presentation().parse("u1^2 - u2").unwrap();
        assert_eq!(g24.integrate(&s2.pow(2)).unwrap(), int(1));
    }

    #[test]
    fn lambda2_low_rank() {
        let l2 = lambda2_universal(2).unwrap();
        assert_eq!(l2.len(), 1);
        assert_eq!(l2[0].to_string(), "x0");
        let l3 = lambda2_universal(3).unwrap();
        // Λ²E ≅ E* ⊗ det E for rank 3: c1 = 2 c1(E)
        assert_eq!(l3[0].to_string(), "2*x0");
        let l5 = lambda2_universal(5).unwrap();
        assert_eq!(l5.len(), 10);
        assert_eq!(l5[0].to_string(), "4*x0");
    }

    #[test]
    fn symmetric_reduction_round_trips() {
        let e = elementary(3);
        let p = &(&e[0] * &e[1]) - &e[2].scale(&q().from_i64(3));
        let back = to_elementary(&p).unwrap();
        assert_eq!(back.to_string(), "x0*x1 - 3*x2");
        let x0 = MPoly::var(RingKind::Primal, q(), 3, 0);
        assert!(to_elementary(&x0).is_err());
    }

    #[test]
    fn spinor_ring() {
        let cfg = VspConfig::standard(int(12));
        let s = GradedRing::new(spinor_cohomology(&cfg).unwrap());
        assert_eq!(s.dims(11), vec![1, 1, 1, 2, 2, 2, 2, 2, 1, 1, 1, 0]);
        assert_eq!(s.total_dim(), Some(16));
        let h10 = s.presentation().parse("h^10").unwrap();
        assert_eq!(s.integrate(&h10).unwrap(), int(12));
        assert!(s.integrate(&s.presentation().parse("h^9").unwrap()).is_err());
    }

    #[test]
    fn inhomogeneous_classes_are_refused() {
        let cfg = VspConfig::standard(int(12));
        let s = GradedRing::new(spinor_cohomology(&cfg).unwrap());
        let c = s.presentation().parse("h + b3").unwrap();
        assert!(matches!(s.normal_form(&c), Err(AlgebraError::NotHomogeneous)));
        let z = s.presentation().constant(0);
        assert!(s.class_equal(&z, &z).unwrap());
    }
}
