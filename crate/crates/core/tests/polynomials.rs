use apolar_core::apolarity::Form;
use apolar_core::poly::{
    contract_apply, diff_apply, linear_form, monomial_basis, poly_eval, power_of_linear, substitute_linear,
    MonomialIndex,
};
use apolar_core::spinor::{spinor_quadrics, FIBER_ZERO_VARIABLES, SPINOR_VARIABLES};
use apolar_core::{ExactMatrix, Field, LinearParam, MPoly, Monomial, RingKind, Scalar};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gf() -> Field {
    Field::default_prime()
}

fn random_poly(ring: RingKind, n: usize, d: u32, rng: &mut ChaCha8Rng) -> MPoly {
    let index = MonomialIndex::graded(n, d);
    let c: Vec<Scalar> = (0..index.len()).map(|_| gf().random(rng)).collect();
    MPoly::from_coords(ring, gf(), n + 1, &index, &c)
}

fn constant_term(p: &MPoly) -> Scalar {
    p.coeff(&Monomial::one(p.nvars()))
}

#[test]
fn cube_of_a_point_evaluates() {
    // (a·∂)^3 f = 3! f(a)
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let f = Form::random(gf(), 4, 3, &mut rng);
        let a: Vec<Scalar> = (0..5).map(|_| gf().random(&mut rng)).collect();
        let op = power_of_linear(&linear_form(RingKind::Dual, gf(), &a), 3).unwrap();
        let lhs = diff_apply(&op, f.poly()).unwrap();
        let rhs = &gf().from_i64(6) * &poly_eval(f.poly(), &a).unwrap();
        assert_eq!(constant_term(&lhs), rhs);
        assert_eq!(lhs.degree().unwrap_or(0), 0);
    }
}

#[test]
fn apolarity_is_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut apolar = 0;
    for i in 0..100 {
        let n = rng.gen_range(1..=4);
        let d = rng.gen_range(1..=4);
        let f = random_poly(RingKind::Primal, n, d, &mut rng);
        let mut op = random_poly(RingKind::Dual, n, d, &mut rng);
        if i % 2 == 0 {
            // correct along one monomial of f so that op(f) = 0
            let m = f.leading().unwrap().0.clone();
            let unit = MPoly::monomial(RingKind::Dual, gf(), n + 1, m, gf().one());
            let value = constant_term(&diff_apply(&unit, &f).unwrap());
            let excess = constant_term(&diff_apply(&op, &f).unwrap());
            op = &op - &unit.scale(&(&excess * &value.inv().unwrap()));
        }
        let df = diff_apply(&op, &f).unwrap();
        let fd = contract_apply(&f, &op).unwrap();
        assert_eq!(constant_term(&df), constant_term(&fd));
        assert_eq!(df.is_zero(), fd.is_zero());
        apolar += df.is_zero() as usize;
    }
    assert!(apolar >= 50);
}

#[test]
fn perfect_pairing_is_diagonal() {
    let f = Field::Rational;
    for n in 1..=4 {
        for d in 0..=6 {
            let basis = monomial_basis(n, d);
            for a in &basis {
                let op = MPoly::monomial(RingKind::Dual, f, n + 1, a.clone(), f.one());
                for b in &basis {
                    let x = MPoly::monomial(RingKind::Primal, f, n + 1, b.clone(), f.one());
                    let v = constant_term(&diff_apply(&op, &x).unwrap());
                    if a == b {
                        let fact: i64 = a.exponents().iter().map(|&e| (1..=e as i64).product::<i64>()).product();
                        assert_eq!(v, f.from_i64(fact));
                    } else {
                        assert!(v.is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn evaluation_matches_substitution() {
    // x_i ↦ a_i z, then f(a) is the coefficient of z^d
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let d = rng.gen_range(0..=4);
        let f = random_poly(RingKind::Primal, n, d, &mut rng);
        let a: Vec<Scalar> = (0..=n).map(|_| gf().random(&mut rng)).collect();
        let phi = LinearParam::new(ExactMatrix::from_columns(gf(), n + 1, &[a.clone()]).unwrap());
        let g = substitute_linear(&f, &phi).unwrap();
        assert_eq!(g.coeff(&Monomial::new(vec![d])), poly_eval(&f, &a).unwrap());
    }
}

#[test]
fn spinor_quadric_on_the_fiber_has_rank_eight() {
    let f = gf();
    let keep: Vec<usize> = (0..16)
        .filter(|&i| !FIBER_ZERO_VARIABLES.contains(&SPINOR_VARIABLES[i]))
        .collect();
    let mut m = ExactMatrix::zeros(f, 16, 8);
    for (j, &i) in keep.iter().enumerate() {
        m.set(i, j, &f.one());
    }
    let q = substitute_linear(&spinor_quadrics(f).plus[0], &LinearParam::new(m)).unwrap();
    // Gram matrix of the restricted quadric
    let mut gram = ExactMatrix::zeros(f, 8, 8);
    for (mono, c) in q.terms() {
        let idx: Vec<usize> = (0..8).flat_map(|v| std::iter::repeat(v).take(mono.exponents()[v] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            gram.set(i, i, &(&c.clone() + c));
        } else {
            gram.set(i, j, c);
            gram.set(j, i, c);
        }
    }
    assert_eq!(gram.rank(), 8);
}

#[test]
fn substitution_examples() {
    let f = Field::Rational;
    let p = MPoly::var(RingKind::Primal, f, 2, 0).pow(2);
    let p = &p + &MPoly::var(RingKind::Primal, f, 2, 1).pow(2);
    let collapse = LinearParam::new(ExactMatrix::from_i64(f, 2, 1, &[1, 1]));
    assert_eq!(substitute_linear(&p, &collapse).unwrap().to_string(), "2*x0^2");
    assert_eq!(substitute_linear(&p, &LinearParam::identity(f, 2)).unwrap(), p);
}

fn triple() -> impl Strategy<Value = (u64, usize, u32, u32)> {
    (any::<u64>(), 1usize..=3, 0u32..=2, 0u32..=2)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn operators_compose((seed, n, d1, d2) in triple()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_poly(RingKind::Dual, n, d1, &mut rng);
        let b = random_poly(RingKind::Dual, n, d2, &mut rng);
        let f = random_poly(RingKind::Primal, n, d1 + d2 + 1, &mut rng);
        let lhs = diff_apply(&(&a * &b), &f).unwrap();
        let rhs = diff_apply(&a, &diff_apply(&b, &f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_ring_map((seed, n, d1, d2) in triple()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_poly(RingKind::Primal, n, d1 + 1, &mut rng);
        let g = random_poly(RingKind::Primal, n, d2, &mut rng);
        let m = rng.gen_range(1..=3);
        let c: Vec<Scalar> = (0..(n + 1) * m).map(|_| gf().random(&mut rng)).collect();
        let phi = LinearParam::new(ExactMatrix::from_scalars(gf(), n + 1, m, &c).unwrap());
        let fg = substitute_linear(&(&f * &g), &phi).unwrap();
        let prod = &substitute_linear(&f, &phi).unwrap() * &substitute_linear(&g, &phi).unwrap();
        prop_assert_eq!(fg, prod);
    }
}
