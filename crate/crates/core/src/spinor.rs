//! The ten-dimensional spinor variety `S ⊂ P¹⁵`: its quadrics, the
//! exponential chart, the map `v⁺` onto the quadric `Q ⊂ P⁹`, and linear
//! sections of its coordinate ring.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::apolarity::{apolar_piece, dual_socle_generator, Form, HilbertFunction};
use crate::betti::{degree_from_betti, koszul_betti, quotient_dims, BettiTable, GradedIdealOracle};
use crate::error::{AlgebraError, Result};
use crate::exact::{ExactMatrix, Field, RowSpace, Scalar};
use crate::poly::{
    linear_form, parse_named, poly_eval, substitute_linear, LinearParam, MPoly, MonomialIndex,
    RingKind,
};

/// Coordinate names of `Λ^ev`, in storage order.
pub const SPINOR_VARIABLES: [&str; 16] = [
    "x0", "x12", "x13", "x14", "x15", "x23", "x24", "x25", "x34", "x35", "x45", "x2345", "x1345",
    "x1245", "x1235", "x1234",
];

/// `q₁⁺, …, q₅⁺, q₁⁻, …, q₅⁻`.
pub const QUADRIC_TEXT: [&str; 10] = [
    "x0*x2345 + x23*x45 - x24*x35 + x34*x25",
    "x0*x1345 - x13*x45 + x14*x35 - x34*x15",
    "x0*x1245 + x12*x45 - x14*x25 + x24*x15",
    "x0*x1235 - x12*x35 + x13*x25 - x23*x15",
    "x0*x1234 + x12*x34 - x13*x24 + x23*x14",
    "x12*x1345 + x13*x1245 + x14*x1235 + x15*x1234",
    "-x12*x2345 + x23*x1245 + x24*x1235 + x1234*x25",
    "-x13*x2345 - x23*x1345 + x34*x1235 + x1234*x35",
    "-x14*x2345 - x24*x1345 - x34*x1245 + x1234*x45",
    "-x15*x2345 - x25*x1345 - x35*x1245 - x1235*x45",
];

/// Names of the ten quadrics, in the order of [`QUADRIC_TEXT`].
pub const QUADRIC_NAMES: [&str; 10] = [
    "q1+", "q2+", "q3+", "q4+", "q5+", "q1-", "q2-", "q3-", "q4-", "q5-",
];

pub fn spinor_names() -> Vec<String> {
    SPINOR_VARIABLES.iter().map(|s| s.to_string()).collect()
}

/// Index of `x_{ij}` (1 ≤ i < j ≤ 5).
fn pair_index(i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= 5);
    const OFFSET: [usize; 4] = [0, 4, 7, 9];
    OFFSET[i - 1] + (j - i - 1) + 1
}

/// Index of the four-element coordinate missing `m`.
fn complement_index(m: usize) -> usize {
    10 + m
}

/// A point of `P¹⁵ = P(Λ^ev)` in the coordinates of [`SPINOR_VARIABLES`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinorCoords(pub Vec<Scalar>);

impl SpinorCoords {
    pub fn new(coords: Vec<Scalar>) -> Result<SpinorCoords> {
        if coords.len() != 16 {
            return Err(AlgebraError::DimensionMismatch(format!(
                "16 spinor coordinates, got {}",
                coords.len()
            )));
        }
        Ok(SpinorCoords(coords))
    }

    /// The point `o = (1:0:…:0)`.
    pub fn origin(field: Field) -> SpinorCoords {
        let mut c = vec![field.zero(); 16];
        c[0] = field.one();
        SpinorCoords(c)
    }

    pub fn random<R: rand::Rng + ?Sized>(field: Field, rng: &mut R) -> SpinorCoords {
        loop {
            let c: Vec<Scalar> = (0..16).map(|_| field.random(rng)).collect();
            if c.iter().any(|x| !x.is_zero()) {
                return SpinorCoords(c);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.0[0].field()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }
}

/// A 5×5 skew-symmetric matrix, stored by its entries above the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMatrix5 {
    upper: Vec<Scalar>,
}

impl SkewMatrix5 {
    /// Entries `a₁₂, a₁₃, a₁₄, a₁₅, a₂₃, …, a₄₅`.
    pub fn new(upper: Vec<Scalar>) -> Result<SkewMatrix5> {
        if upper.len() != 10 {
            return Err(AlgebraError::DimensionMismatch(format!(
                "10 entries above the diagonal, got {}",
                upper.len()
            )));
        }
        Ok(SkewMatrix5 { upper })
    }

    pub fn zero(field: Field) -> SkewMatrix5 {
        SkewMatrix5 {
            upper: vec![field.zero(); 10],
        }
    }

    pub fn random<R: rand::Rng + ?Sized>(field: Field, rng: &mut R) -> SkewMatrix5 {
        SkewMatrix5 {
            upper: (0..10).map(|_| field.random(rng)).collect(),
        }
    }

    /// `a_ij` for 1-based indices, with `a_ji = −a_ij`.
    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[pair_index(i, j) - 1].clone(),
            std::cmp::Ordering::Greater => -&self.upper[pair_index(j, i) - 1],
            std::cmp::Ordering::Equal => self.upper[0].field().zero(),
        }
    }

    pub fn upper(&self) -> &[Scalar] {
        &self.upper
    }

    pub fn pfaffian(&self, i: usize, j: usize, k: usize, l: usize) -> Scalar {
        let a = |x, y| self.get(x, y);
        &(&(&a(i, j) * &a(k, l)) - &(&a(i, k) * &a(j, l))) + &(&a(i, l) * &a(j, k))
    }
}

/// The ten quadrics in the dual ring on the sixteen spinor coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricTen {
    pub plus: Vec<MPoly>,
    pub minus: Vec<MPoly>,
}

impl QuadricTen {
    /// `q₁⁺, …, q₅⁺, q₁⁻, …, q₅⁻`.
    pub fn all(&self) -> Vec<MPoly> {
        self.plus.iter().chain(&self.minus).cloned().collect()
    }

    /// Canonical text, one quadric per line, used for content pinning.
    pub fn canonical_text(&self) -> String {
        let names = spinor_names();
        self.all()
            .iter()
            .zip(QUADRIC_NAMES)
            .map(|(q, n)| format!("{n} = {}\n", q.display_with(&names)))
            .collect()
    }
}

pub fn spinor_quadrics(field: Field) -> QuadricTen {
    let names = spinor_names();
    let q: Vec<MPoly> = QUADRIC_TEXT
        .iter()
        .map(|t| parse_named(t, field, RingKind::Dual, &names).expect("fixed text parses"))
        .collect();
    QuadricTen {
        plus: q[..5].to_vec(),
        minus: q[5..].to_vec(),
    }
}

/// `(1, a_ij, ±Pf_ijkl)`: the sign of the coordinate missing `m` is
/// `(−1)^m`, which is what makes the quadrics vanish.
pub fn exp_point(a: &SkewMatrix5) -> SpinorCoords {
    let field = a.upper[0].field();
    let mut c = vec![field.zero(); 16];
    c[0] = field.one();
    for i in 1..=5 {
        for j in i + 1..=5 {
            c[pair_index(i, j)] = a.get(i, j);
        }
    }
    for m in 1..=5 {
        let rest: Vec<usize> = (1..=5).filter(|&t| t != m).collect();
        let pf = a.pfaffian(rest[0], rest[1], rest[2], rest[3]);
        c[complement_index(m)] = if m % 2 == 1 { -&pf } else { pf };
    }
    SpinorCoords(c)
}

fn quadric_values(p: &SpinorCoords) -> Result<Vec<Scalar>> {
    spinor_quadrics(p.field())
        .all()
        .iter()
        .map(|q| poly_eval(q, p.coords()))
        .collect()
}

pub fn on_spinor(p: &SpinorCoords) -> Result<bool> {
    Ok(quadric_values(p)?.iter().all(Scalar::is_zero))
}

/// `(y₁, …, y₅, y₋₁, …, y₋₅) = (q₁⁺(p), …, q₅⁺(p), q₁⁻(p), …, q₅⁻(p))`.
pub fn vplus(p: &SpinorCoords) -> Result<Vec<Scalar>> {
    let y = quadric_values(p)?;
    if y.iter().all(Scalar::is_zero) {
        return Err(AlgebraError::BasePoint);
    }
    Ok(y)
}

/// `Σ y_i y_{−i}`.
pub fn q_form(y: &[Scalar]) -> Scalar {
    let field = y[0].field();
    (0..5).fold(field.zero(), |acc, i| &acc + &(&y[i] * &y[i + 5]))
}

/// Even subsets of {1..5} in coordinate order.
fn even_subsets() -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for i in 1..=5 {
        for j in i + 1..=5 {
            out.push(vec![i, j]);
        }
    }
    for m in 1..=5 {
        out.push((1..=5).filter(|&t| t != m).collect());
    }
    out
}

/// Odd subsets of {1..5}: singletons, triples in lexicographic order, then
/// the full set.
pub fn odd_subsets() -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1..=5).map(|i| vec![i]).collect();
    for i in 1..=5 {
        for j in i + 1..=5 {
            for k in j + 1..=5 {
                out.push(vec![i, j, k]);
            }
        }
    }
    out.push(vec![1, 2, 3, 4, 5]);
    out
}

/// `(−1)^{#{s ∈ set : s < i}}`
fn wedge_sign(set: &[usize], i: usize) -> bool {
    set.iter().filter(|&&s| s < i).count() % 2 == 1
}

/// Clifford multiplication on `p` as a 16×10 matrix: rows are the odd
/// subsets of {1..5}, columns are `y₁, …, y₅, y₋₁, …, y₋₅`. The coordinate
/// missing `m` enters with sign `(−1)^m`, matching [`exp_point`].
///
/// With `y_i = q_i⁺` the kernel is `v⁺(p)` only if `y_i` acts by
/// contraction `ι_{e_i}` and `y₋ᵢ` by `e_i ∧`; the opposite labelling
/// has kernel `(q⁻, q⁺)` instead.
pub fn clifford_matrix(p: &SpinorCoords) -> ExactMatrix {
    let field = p.field();
    let evens = even_subsets();
    let odds = odd_subsets();
    // coefficient of e_S in the exterior algebra
    let coeff = |s: &[usize]| -> Scalar {
        let k = evens.iter().position(|e| e == s).expect("even subset");
        let c = p.0[k].clone();
        if s.len() == 4 {
            let m = (1..=5).find(|t| !s.contains(t)).unwrap();
            if m % 2 == 1 {
                return -&c;
            }
        }
        c
    };
    let mut out = ExactMatrix::zeros(field, 16, 10);
    for (r, t) in odds.iter().enumerate() {
        for i in 1..=5 {
            if t.contains(&i) {
                // e_i ∧ e_{T∖i} = ± e_T
                let s: Vec<usize> = t.iter().copied().filter(|&x| x != i).collect();
                let c = coeff(&s);
                out.set(r, i + 4, &if wedge_sign(&s, i) { -&c } else { c });
            } else {
                // ι_{e_i} e_{T∪i} = ± e_T
                let mut s = t.clone();
                s.push(i);
                s.sort_unstable();
                let c = coeff(&s);
                out.set(r, i - 1, &if wedge_sign(&s, i) { -&c } else { c });
            }
        }
    }
    out
}

/// The Jacobian matrix of the ten quadrics at `p`, 10×16.
pub fn jacobian(p: &SpinorCoords) -> Result<ExactMatrix> {
    let field = p.field();
    let quads = spinor_quadrics(field).all();
    let mut m = ExactMatrix::zeros(field, 10, 16);
    for (r, q) in quads.iter().enumerate() {
        for v in 0..16 {
            m.set(r, v, &poly_eval(&q.partial(v), p.coords())?);
        }
    }
    Ok(m)
}

/// The coordinate `P⁷` over the point of `Q` whose only nonzero coordinate
/// is `y₁`: the quadrics restricted to `x₁ₐ = x_{complement of a} = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCheck {
    /// Quadrics vanishing identically on the `P⁷`.
    pub vanishing: Vec<&'static str>,
    /// The quadric that survives, and the rank of its restriction.
    pub surviving: Vec<(&'static str, usize)>,
}

impl FiberCheck {
    pub fn holds(&self) -> bool {
        self.vanishing.len() == 9 && self.surviving == vec![("q1+", 8)]
    }
}

/// Variables cut out by the `P⁷`.
pub const FIBER_ZERO_VARIABLES: [&str; 8] =
    ["x12", "x1345", "x13", "x1245", "x14", "x1235", "x15", "x1234"];

pub fn fiber_p7_check(field: Field) -> Result<FiberCheck> {
    field.require_char_above(2)?;
    let keep: Vec<usize> = (0..16)
        .filter(|&i| !FIBER_ZERO_VARIABLES.contains(&SPINOR_VARIABLES[i]))
        .collect();
    let mut phi = ExactMatrix::zeros(field, 16, keep.len());
    for (j, &i) in keep.iter().enumerate() {
        phi.set(i, j, &field.one());
    }
    let phi = LinearParam::new(phi);
    let mut vanishing = Vec::new();
    let mut surviving = Vec::new();
    for (q, name) in spinor_quadrics(field).all().iter().zip(QUADRIC_NAMES) {
        let r = substitute_linear(q, &phi)?;
        if r.is_zero() {
            vanishing.push(name);
        } else {
            surviving.push((name, quadric_rank(&r)?));
        }
    }
    Ok(FiberCheck {
        vanishing,
        surviving,
    })
}

/// Rank of the symmetric matrix of a quadratic form (odd characteristic).
pub fn quadric_rank(q: &MPoly) -> Result<usize> {
    let field = q.field();
    let n = q.nvars();
    let half = field
        .from_i64(2)
        .inv()
        .ok_or(AlgebraError::CharacteristicTooSmall { p: 2, bound: 2 })?;
    let mut m = ExactMatrix::zeros(field, n, n);
    for (mono, c) in q.terms() {
        let e = mono.exponents();
        if mono.degree() != 2 {
            return Err(AlgebraError::NotHomogeneous);
        }
        let vars: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
        match vars[..] {
            [i] => m.set(i, i, c),
            [i, j] => {
                let h = c * &half;
                m.set(i, j, &h);
                m.set(j, i, &h);
            }
            _ => unreachable!(),
        }
    }
    Ok(m.rank())
}

/// Eleven linear forms on `P¹⁵` with the Hilbert function of the section
/// ring, and the number of draws it took.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinorSection {
    pub field: Field,
    pub seed: u64,
    pub forms: Vec<MPoly>,
    pub hilbert: HilbertFunction,
    pub attempts: usize,
}

pub const SECTION_RETRIES: usize = 5;

/// The ideal of `S ∩ V(h)` presented in the five coordinates of `V(h)`.
pub fn section_oracle(forms: &[MPoly]) -> Result<GradedIdealOracle> {
    let field = forms
        .first()
        .ok_or_else(|| AlgebraError::Unsupported("at least one linear form".into()))?
        .field();
    GradedIdealOracle::generators(spinor_quadrics(field).all())?.with_linear_forms(forms.to_vec())
}

pub fn section_hilbert_function(forms: &[MPoly]) -> Result<HilbertFunction> {
    quotient_dims(&section_oracle(forms)?, 4)
}

/// Draws eleven random linear forms until the section ring has Hilbert
/// function (1,5,5,1,0), which certifies that `P⁴ = V(h)` misses `S`.
pub fn random_section(seed: u64, field: Field) -> Result<SpinorSection> {
    field.require_char_above(5)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let want = HilbertFunction(vec![1, 5, 5, 1, 0]);
    for attempt in 1..=SECTION_RETRIES {
        let forms: Vec<MPoly> = (0..11)
            .map(|_| {
                let c: Vec<Scalar> = (0..16).map(|_| field.random(&mut rng)).collect();
                linear_form(RingKind::Dual, field, &c)
            })
            .collect();
        let hilbert = section_hilbert_function(&forms)?;
        if hilbert == want {
            return Ok(SpinorSection {
                field,
                seed,
                forms,
                hilbert,
                attempts: attempt,
            });
        }
    }
    Err(AlgebraError::RetriesExhausted(SECTION_RETRIES))
}

/// The cubic recovered from a section, with the pulled-back quadrics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCubic {
    pub form: Form,
    /// The ten quadrics restricted to `V(h)`, in five dual variables.
    pub quadrics: Vec<MPoly>,
    pub param: LinearParam,
}

pub fn dual_cubic_from_section(forms: &[MPoly]) -> Result<SectionCubic> {
    let field = forms
        .first()
        .ok_or_else(|| AlgebraError::Unsupported("eleven linear forms".into()))?
        .field();
    let fail = |why: &str| AlgebraError::SectionNotGeneral(why.to_string());
    let hf = section_hilbert_function(forms)?;
    if hf.values() != [1, 5, 5, 1, 0] {
        return Err(fail(&format!("section ring has Hilbert function {hf}")));
    }
    let index = MonomialIndex::graded(15, 1);
    let rows: Vec<Vec<Scalar>> = forms.iter().map(|h| h.coords(&index)).collect::<Result<_>>()?;
    let param = LinearParam::new(ExactMatrix::from_rows(field, 16, &rows)?.kernel_basis());
    if param.targets() != 5 {
        return Err(fail("linear forms are dependent"));
    }
    let quadrics = spinor_quadrics(field)
        .all()
        .iter()
        .map(|q| substitute_linear(q, &param))
        .collect::<Result<Vec<_>>>()?;
    let index2 = MonomialIndex::graded(4, 2);
    let coords: Vec<Vec<Scalar>> = quadrics.iter().map(|q| q.coords(&index2)).collect::<Result<_>>()?;
    let span = RowSpace::from_vectors(field, index2.len(), &coords)?;
    if span.dim() != 10 {
        return Err(fail(&format!("pulled-back quadrics span {}", span.dim())));
    }
    let form = dual_socle_generator(&quadrics, 4, 3, field)?;
    let apolar: Vec<Vec<Scalar>> = apolar_piece(&form, 2)?
        .iter()
        .map(|q| q.coords(&index2))
        .collect::<Result<_>>()?;
    if RowSpace::from_vectors(field, index2.len(), &apolar)? != span {
        return Err(fail("apolar quadrics differ from the section"));
    }
    Ok(SectionCubic {
        form,
        quadrics,
        param,
    })
}

/// Betti table of the coordinate ring of `S`, computed on the Artinian
/// reduction by the given linear forms.
pub fn section_betti(forms: &[MPoly], budget: usize) -> Result<BettiTable> {
    Ok(koszul_betti(&section_oracle(forms)?, 6, 4, budget)?.trimmed())
}

/// `deg S`, from the Betti table of the section ring (codimension 5).
pub fn spinor_degree(forms: &[MPoly], budget: usize) -> Result<(BettiTable, num_rational::BigRational)> {
    let table = section_betti(forms, budget)?;
    let deg = degree_from_betti(&table, 5)?;
    Ok((table, deg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf() -> Field {
        Field::default_prime()
    }

    #[test]
    fn pair_indices_follow_the_coordinate_list() {
        for i in 1..=5 {
            for j in i + 1..=5 {
                assert_eq!(SPINOR_VARIABLES[pair_index(i, j)], format!("x{i}{j}"));
            }
        }
        for m in 1..=5 {
            let name: String = (1..=5).filter(|&t| t != m).map(|t| t.to_string()).collect();
            assert_eq!(SPINOR_VARIABLES[complement_index(m)], format!("x{name}"));
        }
    }

    #[test]
    fn origin_lies_on_s() {
        assert!(on_spinor(&SpinorCoords::origin(gf())).unwrap());
        assert_eq!(exp_point(&SkewMatrix5::zero(gf())), SpinorCoords::origin(gf()));
    }

    #[test]
    fn single_entry_has_vanishing_pfaffians() {
        let f = gf();
        let mut up = vec![f.zero(); 10];
        up[0] = f.one();
        let p = exp_point(&SkewMatrix5::new(up).unwrap());
        assert_eq!(p.0[1], f.one());
        assert!(p.0[11..].iter().all(Scalar::is_zero));
    }

    #[test]
    fn exp_points_lie_on_s() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let p = exp_point(&SkewMatrix5::random(gf(), &mut rng));
            assert!(on_spinor(&p).unwrap());
            assert!(matches!(vplus(&p), Err(AlgebraError::BasePoint)));
        }
    }

    #[test]
    fn clifford_kernel_is_vplus() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let p = SpinorCoords::random(gf(), &mut rng);
            let y = vplus(&p).unwrap();
            assert!(q_form(&y).is_zero());
            let c = clifford_matrix(&p);
            assert!(c.mul_vec(&y).unwrap().iter().all(Scalar::is_zero));
            assert_eq!(c.rank(), 9);
        }
    }

    #[test]
    fn p7_fiber() {
        let check = fiber_p7_check(gf()).unwrap();
        assert!(check.holds(), "{check:?}");
    }

    #[test]
    fn small_characteristic_is_refused() {
        assert!(matches!(
            random_section(1, Field::Prime(5)),
            Err(AlgebraError::CharacteristicTooSmall { .. })
        ));
    }
}
