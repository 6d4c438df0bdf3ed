use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use terracini::fields::{Field, PrimeField, Rational, RationalField};
use terracini::linalg::{determinant_bareiss, determinant_laplace, k_minors_with, Matrix, MinorStrategy, PolyMatrix};
use terracini::poly::{MonomialOrder, PolyRing, VariableLayout};

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn q(rows: &[Vec<i64>]) -> Matrix<RationalField> {
    Matrix::from_rows(RationalField, rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect()).unwrap()
}

proptest! {
    #[test]
    fn rank_is_transpose_invariant(rows in matrix()) {
        let m = q(&rows);
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_ignores_row_scaling_and_order(rows in matrix(), scales in prop::collection::vec(prop_oneof![-5i64..=-1, 1i64..=5], 6), shift in 0usize..6) {
        let mut moved: Vec<Vec<i64>> = rows.iter().zip(&scales).map(|(r, &s)| r.iter().map(|&x| x * s).collect()).collect();
        let len = moved.len();
        moved.rotate_left(shift % len);
        prop_assert_eq!(q(&rows).rank(), q(&moved).rank());
    }

    #[test]
    fn polynomial_minors_evaluate_to_scalar_minors(seed in any::<u64>(), k in 1usize..4, strategy in prop_oneof![Just(MinorStrategy::Laplace), Just(MinorStrategy::Bareiss)]) {
        let fp = PrimeField::new(32003).unwrap();
        let ring = PolyRing::new(fp, VariableLayout::source(&[2]), MonomialOrder::DegRevLex);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries: Vec<Vec<_>> = (0..3)
            .map(|_| (0..4).map(|_| {
                let a = rng.gen_range(0..3);
                let b = rng.gen_range(0..3);
                ring.var(a).checked_mul(&ring.var(b)).unwrap().checked_add(&ring.constant(fp.from_i64(rng.gen_range(-4..5)))).unwrap()
            }).collect())
            .collect();
        let m = PolyMatrix::from_rows(&ring, entries).unwrap();
        let set = k_minors_with(&m, k, None, 0, strategy).unwrap();
        let point: Vec<u64> = (0..3).map(|_| fp.from_i64(rng.gen_range(0..32003))).collect();
        let scalar = m.evaluate(&point).unwrap();
        for (minor, (rows, cols)) in set.minors.iter().zip(&set.indices) {
            prop_assert_eq!(minor.evaluate(&point).unwrap(), scalar.select(rows, cols).determinant().unwrap());
        }
    }
}

#[test]
fn modular_rank_is_a_lower_bound() {
    let fp = PrimeField::new(10007).unwrap();
    let mut equal = 0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (r, c) = (rng.gen_range(2..7), rng.gen_range(2..7));
        let mut rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-50..=50)).collect()).collect();
        if seed % 3 == 0 {
            let dup: Vec<i64> = rows[0].iter().zip(&rows[1]).map(|(a, b)| 2 * a - b).collect();
            rows.push(dup);
        }
        let m = q(&rows);
        let mp = m.map(fp, |x| fp.from_rational(x)).unwrap();
        assert!(mp.rank() <= m.rank());
        equal += (mp.rank() == m.rank()) as usize;
    }
    assert!(equal >= 99, "{equal} of 100 seeds agree");
}

#[test]
fn determinant_strategies_agree() {
    let ring = PolyRing::new(RationalField, VariableLayout::source(&[3]), MonomialOrder::DegRevLex);
    let rows: Vec<Vec<_>> = (0..4)
        .map(|i| (0..4).map(|j| ring.parse(&format!("x_0_{}^{} {:+}", (i + j) % 4, 1 + (i * j) % 2, i as i64 - j as i64)).unwrap()).collect())
        .collect();
    let m = PolyMatrix::from_rows(&ring, rows).unwrap();
    assert_eq!(determinant_laplace(&m).unwrap(), determinant_bareiss(&m).unwrap());
}

#[test]
fn small_examples() {
    assert_eq!(q(&[vec![1, 2], vec![2, 4]]).rank(), 1);
    assert_eq!(q(&[vec![1, 2], vec![3, 4]]).determinant().unwrap(), Rational::from(-2));
    let kernel = q(&[vec![1, 1, 1]]).kernel_basis();
    assert_eq!(kernel.len(), 2);
}
