use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use terracini::fields::{Field, PrimeField, Rational};
use terracini::groebner::GbOptions;
use terracini::locus::{
    membership, membership_ideal, membership_param, oracle_config, random_smooth_point, rank_report, sv_two_point_expected,
    terracini_ideal, PointConfig, TerraciniOptions,
};
use terracini::varieties::{IdealVariety, ParamMap, Variety};

fn nonzero(rng: &mut ChaCha8Rng) -> Rational {
    let v = rng.gen_range(1..=40i64);
    Rational::from(if rng.gen_bool(0.5) { v } else { -v })
}

/// Families with both members and controls, as `(map, r, member family, control family)`.
fn families() -> Vec<(ParamMap, usize, &'static str, &'static str)> {
    vec![
        (ParamMap::veronese(2, 3).unwrap(), 3, "collinear", "generic"),
        (ParamMap::veronese(2, 4).unwrap(), 4, "collinear-plus-free", "coplanar"),
        (ParamMap::segre_veronese(&[1, 1], &[2, 2]).unwrap(), 2, "T_1", "generic"),
        (ParamMap::segre_veronese(&[1, 2], &[2, 1]).unwrap(), 2, "T_1", "generic"),
        (ParamMap::del_pezzo(2).unwrap(), 2, "Y_2", "generic"),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn membership_ignores_order_and_scaling(seed in any::<u64>(), family in 0usize..5, member in any::<bool>()) {
        let (map, r, yes, no) = &families()[family];
        let config = oracle_config(map, if member { yes } else { no }, *r, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..*r).collect();
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let scales: Vec<Vec<Rational>> = (0..*r).map(|_| map.dims().iter().map(|_| nonzero(&mut rng)).collect()).collect();
        let moved = config.permuted(&perm).unwrap().rescaled(&scales).unwrap();
        let (a, b) = (rank_report(map, &config).unwrap(), rank_report(map, &moved).unwrap());
        prop_assert_eq!(a.rank, b.rank);
        prop_assert_eq!(a.is_member(), member);
    }

    #[test]
    fn single_points_never_belong(seed in any::<u64>(), family in 0usize..5) {
        let map = &families()[family].0;
        let point = random_smooth_point(map, seed).unwrap();
        let report = rank_report(map, &PointConfig::new(vec![point]).unwrap()).unwrap();
        prop_assert_eq!(report.rank, report.threshold);
        prop_assert!(!report.is_member());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn adding_a_point_keeps_membership(seed in any::<u64>()) {
        let map = ParamMap::veronese(2, 4).unwrap();
        let config = oracle_config(&map, "collinear", 3, seed).unwrap();
        prop_assert!(membership_param(&map, &config).unwrap());
        let bigger = config.with_point(random_smooth_point(&map, seed ^ 1).unwrap()).unwrap();
        prop_assert!(membership_param(&map, &bigger).unwrap());
    }

    #[test]
    fn points_on_a_fixed_line_belong(seed in any::<u64>(), which in 0usize..3) {
        let (n, d, r) = [(2usize, 3u32, 3usize), (2, 4, 3), (3, 3, 3)][which];
        let map = ParamMap::veronese(n, d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut params: Vec<(i64, i64)> = Vec::new();
        while params.len() < r {
            let (s, t) = (rng.gen_range(-30..=30i64), rng.gen_range(-30..=30i64));
            if (s, t) != (0, 0) && params.iter().all(|&(u, v)| u * t != v * s) {
                params.push((s, t));
            }
        }
        let points: Vec<Vec<i64>> = params.iter().map(|&(s, t)| (0..=n).map(|j| match j { 0 => s, 1 => t, _ => 0 }).collect()).collect();
        prop_assume!(2 * r > d as usize + 1);
        prop_assert!(membership_param(&map, &PointConfig::from_integers(&points).unwrap()).unwrap());
    }

    #[test]
    fn twisted_cubic_routes_agree(s0 in 1i64..30, t0 in -30i64..30, s1 in -30i64..30, t1 in 1i64..30) {
        prop_assume!(s0 * t1 != t0 * s1);
        let cubic = ParamMap::veronese(1, 3).unwrap();
        let ideal = IdealVariety::from_text(
            3,
            &["x_0_1^2-x_0_0*x_0_2".into(), "x_0_1*x_0_2-x_0_0*x_0_3".into(), "x_0_2^2-x_0_1*x_0_3".into()],
        )
        .unwrap();
        let params = PointConfig::from_integers(&[vec![s0, t0], vec![s1, t1]]).unwrap();
        let image = |s: i64, t: i64| vec![s * s * s, s * s * t, s * t * t, t * t * t];
        let images = PointConfig::from_integers(&[image(s0, t0), image(s1, t1)]).unwrap();
        prop_assert_eq!(membership_param(&cubic, &params).unwrap(), membership_ideal(&ideal, &images).unwrap());
    }
}

#[test]
fn segre_veronese_two_point_classification() {
    for degrees in [[1u32, 3], [2, 2], [3, 3]] {
        let map = ParamMap::segre_veronese(&[1, 1], &degrees).unwrap();
        let mut members = 0;
        for seed in 0..200 {
            let config = oracle_config(&map, "two-point", 2, seed).unwrap();
            let got = membership_param(&map, &config).unwrap();
            assert_eq!(got, sv_two_point_expected(&map, &config).unwrap(), "{degrees:?} {}", config.to_json());
            members += got as usize;
        }
        assert_eq!(members > 0, degrees != [3, 3], "{degrees:?}");
    }
}

#[test]
fn ideal_vanishes_exactly_on_members() {
    let fp = PrimeField::new(32003).unwrap();
    for (map, member_family) in [(ParamMap::segre_veronese(&[1, 1], &[1, 2]).unwrap(), "T_2"), (ParamMap::del_pezzo(1).unwrap(), "Y_1")] {
        let variety = Variety::Param(map.clone());
        let t = terracini_ideal(&variety, 2, fp, &TerraciniOptions::default()).unwrap();
        let gb = t.ideal.groebner(&GbOptions::default()).unwrap();
        for seed in 0..10 {
            for family in [member_family, "generic"] {
                let config = oracle_config(&map, family, 2, seed).unwrap();
                let point: Vec<u64> =
                    (0..2).flat_map(|i| config.flat(i)).map(|c| fp.from_rational(&c).unwrap()).collect();
                let vanishes = gb.polys().iter().all(|g| fp.is_zero(&g.evaluate(&point).unwrap()));
                assert_eq!(membership(&variety, &config).unwrap().is_member(), vanishes, "{family} {}", config.to_json());
                assert_eq!(vanishes, family != "generic");
            }
        }
    }
}
