use apolar_core::apolarity::{hilbert_function, quadratic_relation, quadratic_relations_of};
use apolar_core::betti::{koszul_betti, GradedIdealOracle, DEFAULT_BUDGET};
use apolar_core::poly::{poly_eval, MPoly, Monomial};
use apolar_core::spinor::*;
use apolar_core::{AlgebraError, ExactMatrix, Field, RingKind, Scalar};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

const QUADRICS_SHA256: &str = "b91bf61358bf7d27316759a0379e7b6f0bfb28e293730b30d014af568925e284";

fn gf() -> Field {
    Field::default_prime()
}

fn var(name: &str) -> usize {
    SPINOR_VARIABLES.iter().position(|v| *v == name).unwrap()
}

// Typed separately from the library table: (sign, left, right) per term.
const TERMS: [[(i64, &str, &str); 4]; 10] = [
    [(1, "x0", "x2345"), (1, "x23", "x45"), (-1, "x24", "x35"), (1, "x34", "x25")],
    [(1, "x0", "x1345"), (-1, "x13", "x45"), (1, "x14", "x35"), (-1, "x34", "x15")],
    [(1, "x0", "x1245"), (1, "x12", "x45"), (-1, "x14", "x25"), (1, "x24", "x15")],
    [(1, "x0", "x1235"), (-1, "x12", "x35"), (1, "x13", "x25"), (-1, "x23", "x15")],
    [(1, "x0", "x1234"), (1, "x12", "x34"), (-1, "x13", "x24"), (1, "x23", "x14")],
    [(1, "x12", "x1345"), (1, "x13", "x1245"), (1, "x14", "x1235"), (1, "x15", "x1234")],
    [(-1, "x12", "x2345"), (1, "x23", "x1245"), (1, "x24", "x1235"), (1, "x1234", "x25")],
    [(-1, "x13", "x2345"), (-1, "x23", "x1345"), (1, "x34", "x1235"), (1, "x1234", "x35")],
    [(-1, "x14", "x2345"), (-1, "x24", "x1345"), (-1, "x34", "x1245"), (1, "x1234", "x45")],
    [(-1, "x15", "x2345"), (-1, "x25", "x1345"), (-1, "x35", "x1245"), (-1, "x1235", "x45")],
];

fn transcribed(field: Field) -> Vec<MPoly> {
    TERMS
        .iter()
        .map(|terms| {
            let t = terms
                .iter()
                .map(|&(s, a, b)| {
                    let mut e = vec![0u32; 16];
                    e[var(a)] += 1;
                    e[var(b)] += 1;
                    (Monomial::new(e), field.from_i64(s))
                })
                .collect();
            MPoly::from_terms(RingKind::Dual, field, 16, t).unwrap()
        })
        .collect()
}

#[test]
fn quadrics_match_the_pinned_content() {
    let q = spinor_quadrics(Field::Rational);
    let digest = format!("{:x}", Sha256::digest(q.canonical_text().as_bytes()));
    assert_eq!(digest, QUADRICS_SHA256);
    assert_eq!(q.all(), transcribed(Field::Rational));
    assert!(q.all().iter().all(|p| p.homogeneous_degree().unwrap() == 2));
}

#[test]
fn quadrics_vanish_at_the_origin() {
    let o = SpinorCoords::origin(gf());
    for q in spinor_quadrics(gf()).all() {
        assert!(poly_eval(&q, o.coords()).unwrap().is_zero());
    }
}

#[test]
fn image_lies_on_q_symbolically() {
    let q = spinor_quadrics(Field::Rational);
    let s = q
        .plus
        .iter()
        .zip(&q.minus)
        .fold(MPoly::zero(RingKind::Dual, Field::Rational, 16), |acc, (a, b)| &acc + &(a * b));
    assert!(s.is_zero());
}

#[test]
fn pfaffian_by_hand() {
    // a12 = 1, a34 = 2, a35 = 3: Pf_1234 = 2, Pf_1235 = 3, others 0
    let f = Field::Rational;
    let mut up = vec![f.zero(); 10];
    up[0] = f.one();
    up[7] = f.from_i64(2);
    up[8] = f.from_i64(3);
    let p = exp_point(&SkewMatrix5::new(up).unwrap());
    assert_eq!(p.0[var("x1234")], f.from_i64(-2));
    assert_eq!(p.0[var("x1235")], f.from_i64(3));
    for v in ["x2345", "x1345", "x1245"] {
        assert!(p.0[var(v)].is_zero());
    }
    assert!(on_spinor(&p).unwrap());
}

#[test]
fn exponential_chart_lies_on_s() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let p = exp_point(&SkewMatrix5::random(gf(), &mut rng));
        assert!(on_spinor(&p).unwrap());
        assert!(clifford_matrix(&p).rank() <= 8);
        // smooth of codimension 5
        assert_eq!(jacobian(&p).unwrap().rank(), 5);
    }
}

#[test]
fn random_points_are_off_s() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let p = SpinorCoords::random(gf(), &mut rng);
        assert!(!on_spinor(&p).unwrap());
        let y = vplus(&p).unwrap();
        assert!(q_form(&y).is_zero());
        let c = clifford_matrix(&p);
        assert_eq!(c.rank(), 9);
        let k = c.kernel_basis();
        assert_eq!(k.cols(), 1);
        // the kernel line is v⁺(p)
        let pair = ExactMatrix::from_columns(gf(), 10, &[k.column(0), y]).unwrap();
        assert_eq!(pair.rank(), 1);
    }
}

#[test]
fn clifford_matrix_is_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let a = SpinorCoords::random(gf(), &mut rng);
    let b = SpinorCoords::random(gf(), &mut rng);
    let t = gf().random(&mut rng);
    let ab = SpinorCoords((0..16).map(|i| &a.0[i] + &(&t * &b.0[i])).collect());
    let (ca, cb, cab) = (clifford_matrix(&a), clifford_matrix(&b), clifford_matrix(&ab));
    for r in 0..16 {
        for c in 0..10 {
            assert_eq!(cab.get(r, c), &ca.get(r, c) + &(&t * &cb.get(r, c)));
        }
    }
}

#[test]
fn fiber_over_a_coordinate_point() {
    let check = fiber_p7_check(gf()).unwrap();
    assert!(check.holds(), "{check:?}");
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut seen = 0;
    while seen < 20 {
        let mut p = SpinorCoords::random(gf(), &mut rng);
        for v in FIBER_ZERO_VARIABLES {
            p.0[var(v)] = gf().zero();
        }
        match vplus(&p) {
            Ok(y) => {
                assert!(!y[0].is_zero());
                assert!(y[1..].iter().all(Scalar::is_zero));
                seen += 1;
            }
            Err(AlgebraError::BasePoint) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn section_pipeline() {
    for seed in 0..5 {
        let s = random_section(seed, gf()).unwrap();
        assert_eq!(s.hilbert.values(), &[1, 5, 5, 1, 0]);
        let cubic = dual_cubic_from_section(&s.forms).unwrap();
        assert_eq!(hilbert_function(&cubic.form).unwrap().values(), &[1, 5, 5, 1]);
        let rel = quadratic_relation(&cubic.form).unwrap();
        assert_eq!(rel.dim, 1);
        assert_eq!(rel.unique.unwrap().1, 10);

        // The relation among the pulled-back quadrics is the form of Q.
        let pulled = quadratic_relations_of(&cubic.quadrics).unwrap();
        assert_eq!(pulled.dim, 1);
        let (m, rank) = pulled.unique.unwrap();
        assert_eq!(rank, 10);
        let mut q = ExactMatrix::zeros(gf(), 10, 10);
        for i in 0..5 {
            q.set(i, i + 5, &gf().one());
            q.set(i + 5, i, &gf().one());
        }
        let flat = |a: &ExactMatrix| -> Vec<Scalar> {
            (0..100).map(|k| a.get(k / 10, k % 10)).collect()
        };
        let both = ExactMatrix::from_columns(gf(), 100, &[flat(&m), flat(&q)]).unwrap();
        assert_eq!(both.rank(), 1);

        // v⁺ of a point of the P⁴ lands on that quadric
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z: Vec<Scalar> = (0..5).map(|_| gf().random_nonzero(&mut rng)).collect();
        let p = SpinorCoords(cubic.param.matrix().mul_vec(&z).unwrap());
        let y = vplus(&p).unwrap();
        let my = m.mul_vec(&y).unwrap();
        let val = y.iter().zip(&my).fold(gf().zero(), |acc, (a, b)| &acc + &(a * b));
        assert!(val.is_zero());

        // the section ring and the apolar ring have the same table
        let sec = section_betti(&s.forms, DEFAULT_BUDGET).unwrap();
        let apo = koszul_betti(&GradedIdealOracle::Apolar(cubic.form), 6, 4, DEFAULT_BUDGET)
            .unwrap()
            .trimmed();
        assert_eq!(sec, apo);
    }
}

#[test]
fn degree_of_s() {
    let s = random_section(7, gf()).unwrap();
    let (table, deg) = spinor_degree(&s.forms, DEFAULT_BUDGET).unwrap();
    assert_eq!(table.to_string(), " 1  -  -  -  -  -\n - 10 16  -  -  -\n -  -  - 16 10  -\n -  -  -  -  -  1\n");
    assert_eq!(deg, BigRational::from_integer(12.into()));
}

#[test]
fn section_through_the_origin_is_rejected() {
    // forms vanishing at o: P⁴ meets S, so the Hilbert function changes
    let s = random_section(3, gf()).unwrap();
    let forms: Vec<MPoly> = s
        .forms
        .iter()
        .map(|h| {
            let c = h.coeff(&Monomial::var(16, 0));
            h - &MPoly::var(RingKind::Dual, gf(), 16, 0).scale(&c)
        })
        .collect();
    assert_ne!(section_hilbert_function(&forms).unwrap().values(), &[1, 5, 5, 1, 0]);
    assert!(matches!(
        dual_cubic_from_section(&forms),
        Err(AlgebraError::SectionNotGeneral(_))
    ));
}

#[test]
fn direct_strands_respect_the_budget() {
    let oracle = GradedIdealOracle::generators(spinor_quadrics(gf()).all()).unwrap();
    assert!(matches!(
        koszul_betti(&oracle, 3, 2, 100_000),
        Err(AlgebraError::BudgetExceeded { .. })
    ));
}
