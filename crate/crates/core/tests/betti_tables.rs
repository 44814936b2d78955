use apolar_core::apolarity::{random_general_form, Form, PointSet};
use apolar_core::betti::{degree_from_betti, koszul_betti, quotient_dims, BettiTable, GradedIdealOracle, DEFAULT_BUDGET};
use apolar_core::{Field, Scalar};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gf() -> Field {
    Field::default_prime()
}

fn apolar_table(n: usize, d: u32, seed: u64) -> BettiTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (f, _) = random_general_form(gf(), n, d, 5, &mut rng).unwrap();
    koszul_betti(&GradedIdealOracle::Apolar(f), n + 2, d as usize + 1, DEFAULT_BUDGET)
        .unwrap()
        .trimmed()
}

#[test]
fn eight_points_in_p4() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pts = PointSet::random(gf(), 4, 8, &mut rng);
    let o = GradedIdealOracle::Points(pts);
    assert_eq!(quotient_dims(&o, 5).unwrap().values(), &[1, 5, 8, 8, 8, 8]);
    let b = koszul_betti(&o, 5, 3, DEFAULT_BUDGET).unwrap().trimmed();
    let want = BettiTable::from_entries(&[
        (0, 0, 1),
        (1, 2, 7),
        (2, 3, 8),
        (2, 4, 3),
        (3, 5, 8),
        (4, 6, 3),
    ]);
    assert_eq!(b, want);
    assert_eq!(degree_from_betti(&b, 4).unwrap(), BigInt::from(8).into());
}

#[test]
fn cubic_threefold() {
    let b = apolar_table(4, 3, 1);
    let want = BettiTable::from_entries(&[
        (0, 0, 1),
        (1, 2, 10),
        (2, 3, 16),
        (3, 5, 16),
        (4, 6, 10),
        (5, 8, 1),
    ]);
    assert_eq!(b, want);
}

#[test]
fn cubic_of_seven_powers_has_extra_syzygies() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pts = PointSet::random(gf(), 4, 7, &mut rng);
    let lambdas: Vec<Scalar> = (0..7).map(|_| gf().random_nonzero(&mut rng)).collect();
    let f = Form::power_sum(&pts, &lambdas, 3).unwrap();
    let b = koszul_betti(&GradedIdealOracle::Apolar(f), 5, 3, DEFAULT_BUDGET).unwrap();
    assert!(b.get(1, 2) >= 10 && b.get(2, 3) >= 16);
    assert!(b.get(3, 4) >= 3, "{b}");
    assert!(b.get(2, 4) >= 3, "{b}");
    assert!(b.get(3, 5) >= 16 && b.get(4, 6) >= 10);
}

#[test]
fn plane_curves_of_even_degree() {
    for n in 1..=4usize {
        let b = apolar_table(2, 2 * n as u32, 100 + n as u64);
        let want = BettiTable::from_entries(&[
            (0, 0, 1),
            (1, n + 1, 2 * n + 3),
            (2, n + 2, 2 * n + 3),
            (3, 2 * n + 3, 1),
        ]);
        assert_eq!(b, want, "degree {}", 2 * n);
    }
}

#[test]
fn plane_quintic() {
    let b = apolar_table(2, 5, 5);
    let want = BettiTable::from_entries(&[
        (0, 0, 1),
        (1, 3, 4),
        (1, 4, 1),
        (2, 4, 1),
        (2, 5, 4),
        (3, 8, 1),
    ]);
    assert_eq!(b, want);
}

#[test]
fn plane_septic() {
    let b = apolar_table(2, 7, 77);
    let want = BettiTable::from_entries(&[(0, 0, 1), (1, 4, 5), (2, 6, 5), (3, 10, 1)]);
    assert_eq!(b, want);
}

#[test]
fn cubic_surface() {
    let b = apolar_table(3, 3, 33);
    let want = BettiTable::from_entries(&[
        (0, 0, 1),
        (1, 2, 6),
        (2, 3, 5),
        (2, 4, 5),
        (3, 5, 6),
        (4, 7, 1),
    ]);
    assert_eq!(b, want);
}

#[test]
fn gorenstein_tables_are_self_dual() {
    for (n, d, seed) in [(2usize, 4u32, 1u64), (3, 3, 2), (4, 3, 3), (2, 5, 4), (2, 6, 5)] {
        let b = apolar_table(n, d, seed);
        let c = n + 1;
        for i in 0..=c {
            for j in 0..=(d as usize + c) {
                assert_eq!(b.get(i, j), b.get(c - i, d as usize + c - j), "n={n} d={d}");
            }
        }
    }
}
