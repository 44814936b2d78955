//! Power-sum decompositions of binary forms from the minimal-degree
//! generator of the apolar ideal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::Serialize;

use crate::apolarity::{apolar_piece, catalecticant, powersum_lambda, Form, PointSet, PowerSumOutcome};
use crate::error::{AlgebraError, Result};
use crate::exact::{Field, Scalar};
use crate::poly::{diff_apply, MPoly, MonomialIndex, RingKind};

/// Largest prime for which roots are found by exhaustive scan.
pub const ROOT_SCAN_LIMIT: u64 = 1 << 20;

/// Why a generator does not yield a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Obstruction {
    RepeatedRoot,
    IrreducibleFactor,
    NotPresentable,
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Obstruction::RepeatedRoot => "repeated root",
            Obstruction::IrreducibleFactor => "irreducible factor",
            Obstruction::NotPresentable => "not presentable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionStatus {
    Exact,
    GeneratorOnly(Obstruction),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryDecomposition {
    /// The apolar form whose roots were used.
    pub generator: MPoly,
    /// Roots of the generator, each with first nonzero coordinate 1.
    pub roots: Option<PointSet>,
    pub lambdas: Vec<Scalar>,
    pub status: DecompositionStatus,
}

impl BinaryDecomposition {
    pub fn is_exact(&self) -> bool {
        self.status == DecompositionStatus::Exact
    }

    pub fn summands(&self) -> usize {
        self.lambdas.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryGenerators {
    pub deg_a: u32,
    pub deg_b: u32,
    pub a: MPoly,
}

fn require_binary(form: &Form) -> Result<()> {
    if form.n() != 1 {
        return Err(AlgebraError::VariableCountMismatch {
            left: 2,
            right: form.n() + 1,
        });
    }
    Ok(())
}

/// Degrees of the two generators of `F⊥` and the canonical generator of
/// least degree.
pub fn binary_apolar_generators(form: &Form) -> Result<BinaryGenerators> {
    require_binary(form)?;
    for e in 1..=form.d() {
        let piece = apolar_piece(form, e)?;
        if let Some(a) = piece.into_iter().next() {
            return Ok(BinaryGenerators {
                deg_a: e,
                deg_b: form.d() + 2 - e,
                a,
            });
        }
    }
    unreachable!("F⊥ contains every operator of degree d+1, and is nonzero in degree d")
}

// Univariate polynomials: coefficients from the constant term up.

fn trim(mut p: Vec<Scalar>) -> Vec<Scalar> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn derivative(p: &[Scalar]) -> Vec<Scalar> {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &c.field().from_i64(i as i64))
            .collect(),
    )
}

fn rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut r = a.to_vec();
    let lead_inv = b.last().expect("nonzero divisor").inv().expect("nonzero lead");
    while r.len() >= b.len() {
        let c = r.last().unwrap() * &lead_inv;
        let shift = r.len() - b.len();
        for (i, x) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&c * x);
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn gcd_degree(a: &[Scalar], b: &[Scalar]) -> usize {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    x.len().saturating_sub(1)
}

fn horner(p: &[Scalar], t: &Scalar) -> Scalar {
    p.iter().rev().fold(t.field().zero(), |acc, c| &(&acc * t) + c)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Distinct roots in the field, in increasing order of representative.
fn affine_roots(g: &[Scalar], field: Field) -> Result<Vec<Scalar>> {
    if g.len() <= 1 {
        return Ok(Vec::new());
    }
    match field {
        Field::Prime(p) => {
            if p > ROOT_SCAN_LIMIT {
                return Err(AlgebraError::FieldTooLarge(p));
            }
            let c: Vec<u64> = g.iter().map(|x| x.as_residue().unwrap()).collect();
            Ok((0..p)
                .filter(|&t| c.iter().rev().fold(0u64, |acc, &x| (acc * t + x) % p) == 0)
                .map(|t| field.from_i64(t as i64))
                .collect())
        }
        Field::Rational => {
            // clear denominators, then the rational root test
            let lcm = g.iter().fold(BigInt::one(), |acc, x| {
                acc.lcm(x.as_rational().unwrap().denom())
            });
            let ints: Vec<BigInt> = g
                .iter()
                .map(|x| (x.as_rational().unwrap() * &lcm).to_integer())
                .collect();
            let mut roots = Vec::new();
            let low = ints.iter().position(|c| !c.is_zero()).unwrap();
            if low > 0 {
                roots.push(field.zero());
            }
            let (Some(num), Some(den)) = (divisors(&ints[low]), divisors(ints.last().unwrap()))
            else {
                return Ok(roots);
            };
            let mut cands: Vec<num_rational::BigRational> = Vec::new();
            for a in &num {
                for b in &den {
                    for s in [1i64, -1] {
                        let r = num_rational::BigRational::new(a * s, b.clone());
                        if !cands.contains(&r) {
                            cands.push(r);
                        }
                    }
                }
            }
            cands.sort();
            for r in cands {
                let t = Scalar::Rational(r);
                if horner(g, &t).is_zero() {
                    roots.push(t);
                }
            }
            Ok(roots)
        }
    }
}

/// Coefficients of `a(1, t)` for a binary form `a(d0, d1)`.
fn dehomogenize(a: &MPoly) -> Vec<Scalar> {
    let k = a.degree().unwrap_or(0) as usize;
    let mut g = vec![a.field().zero(); k + 1];
    for (m, c) in a.terms() {
        g[m.exponents()[1] as usize] = c.clone();
    }
    trim(g)
}

/// Distinct projective roots of a binary form, or the reason it does not
/// split into distinct linear factors.
pub fn split_binary(a: &MPoly) -> Result<std::result::Result<PointSet, Obstruction>> {
    let field = a.field();
    let k = a.homogeneous_degree()? as usize;
    let g = dehomogenize(a);
    let deg_g = g.len() - 1;
    let at_infinity = k - deg_g;
    if at_infinity > 1 || gcd_degree(&g, &derivative(&g)) > 0 {
        return Ok(Err(Obstruction::RepeatedRoot));
    }
    let mut points: Vec<Vec<Scalar>> = affine_roots(&g, field)?
        .into_iter()
        .map(|t| vec![field.one(), t])
        .collect();
    if at_infinity == 1 {
        points.push(vec![field.zero(), field.one()]);
    }
    if points.len() < k {
        return Ok(Err(Obstruction::IrreducibleFactor));
    }
    Ok(Ok(PointSet::new(field, points)?))
}

/// Decomposes `f` via the least-degree generator of `F⊥`, or via `hint`
/// when given (which must annihilate `f`).
pub fn decompose_binary(form: &Form, hint: Option<&MPoly>) -> Result<BinaryDecomposition> {
    require_binary(form)?;
    let generator = match hint {
        Some(h) => {
            if !diff_apply(h, form.poly())?.is_zero() {
                return Err(AlgebraError::NotApolar(h.degree().unwrap_or(0) as usize));
            }
            h.clone()
        }
        None => binary_apolar_generators(form)?.a,
    };
    decompose_with(form, generator)
}

fn decompose_with(form: &Form, generator: MPoly) -> Result<BinaryDecomposition> {
    let roots = match split_binary(&generator)? {
        Ok(r) => r,
        Err(ob) => {
            return Ok(BinaryDecomposition {
                generator,
                roots: None,
                lambdas: Vec::new(),
                status: DecompositionStatus::GeneratorOnly(ob),
            })
        }
    };
    match powersum_lambda(form, &roots)? {
        PowerSumOutcome::Presentable {
            lambda,
            solution_dim: 0,
        } => {
            debug_assert_eq!(&Form::power_sum(&roots, &lambda, form.d())?, form);
            Ok(BinaryDecomposition {
                generator,
                roots: Some(roots),
                lambdas: lambda,
                status: DecompositionStatus::Exact,
            })
        }
        _ => Ok(BinaryDecomposition {
            generator,
            roots: Some(roots),
            lambdas: Vec::new(),
            status: DecompositionStatus::GeneratorOnly(Obstruction::NotPresentable),
        }),
    }
}

/// The pencil `F_{k+1}⊥` of a binary form of degree `2k` and sampled
/// decompositions from its split members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenPencil {
    pub pencil: [MPoly; 2],
    /// Exact decompositions found, each with `k+1` summands.
    pub samples: Vec<BinaryDecomposition>,
    /// Members drawn in total.
    pub drawn: usize,
    /// Members with a repeated root or an irreducible factor.
    pub obstructed: usize,
}

/// Draws random members of the pencil until `wanted` of them split with
/// distinct roots, or `max_draws` members have been tried.
pub fn decompose_even_binary<R: Rng + ?Sized>(
    form: &Form,
    wanted: usize,
    max_draws: usize,
    rng: &mut R,
) -> Result<EvenPencil> {
    require_binary(form)?;
    let d = form.d();
    if d % 2 != 0 {
        return Err(AlgebraError::Unsupported("a form of even degree".into()));
    }
    let k = d / 2;
    let g = binary_apolar_generators(form)?;
    let piece = apolar_piece(form, k + 1)?;
    if g.deg_a != k + 1 || piece.len() != 2 {
        return Err(AlgebraError::HilbertFunctionMismatch {
            expected: format!("both generators in degree {}", k + 1),
            found: format!("generator degrees {} and {}", g.deg_a, g.deg_b),
        });
    }
    let field = form.field();
    let pencil = [piece[0].clone(), piece[1].clone()];
    let mut samples = Vec::new();
    let mut drawn = 0;
    let mut obstructed = 0;
    while samples.len() < wanted && drawn < max_draws {
        drawn += 1;
        let (s, t) = (field.random(rng), field.random(rng));
        if s.is_zero() && t.is_zero() {
            continue;
        }
        let member = &pencil[0].scale(&s) + &pencil[1].scale(&t);
        let dec = decompose_with(form, member)?;
        if dec.is_exact() {
            samples.push(dec);
        } else {
            obstructed += 1;
        }
    }
    Ok(EvenPencil {
        pencil,
        samples,
        drawn,
        obstructed,
    })
}

/// Searches random elements of `F_e⊥` for one with distinct roots in the
/// field; `None` when the attempts run out.
pub fn search_decomposition<R: Rng + ?Sized>(
    form: &Form,
    e: u32,
    attempts: usize,
    rng: &mut R,
) -> Result<Option<BinaryDecomposition>> {
    require_binary(form)?;
    let field = form.field();
    let kernel = catalecticant(form, e)?.kernel_basis();
    if kernel.cols() == 0 {
        return Ok(None);
    }
    let index = MonomialIndex::graded(1, e);
    for _ in 0..attempts {
        let coeffs: Vec<Scalar> = (0..kernel.cols()).map(|_| field.random(rng)).collect();
        let v: Vec<Scalar> = (0..kernel.rows())
            .map(|i| {
                (0..kernel.cols()).fold(field.zero(), |acc, j| &acc + &(&kernel.get(i, j) * &coeffs[j]))
            })
            .collect();
        let a = MPoly::from_coords(RingKind::Dual, field, 2, &index, &v);
        if a.is_zero() {
            continue;
        }
        let dec = decompose_with(form, a)?;
        if dec.is_exact() {
            return Ok(Some(dec));
        }
    }
    Ok(None)
}
