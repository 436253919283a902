use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tpgrass::exactgeom::RatVector;
use tpgrass::tropfan::{
    build_fan, build_fan_with, init_form, gr24_relation, linear_on_cones, nontrivial_trop_polys,
    pos_membership_gr24, refine_all, trop_phi2, trop_plucker_polys, Route, GR24_SUBSETS,
};

fn catalan(m: u64) -> usize {
    (1..=m).fold(1u64, |c, i| c * (m + i) / i) as usize / (m as usize + 1)
}

#[test]
fn gr2n_top_entry_is_catalan() {
    for n in 4..=8 {
        let f = build_fan(2, n).unwrap();
        assert_eq!(*f.f_vector().unwrap().last().unwrap(), catalan(n as u64 - 2), "n = {n}");
    }
}

#[test]
fn gr25_has_five_cones() {
    let f = build_fan(2, 5).unwrap();
    assert_eq!(f.maximal_cone_count(), 5);
    assert_eq!(f.f_vector().unwrap(), vec![5, 5]);
}

#[test]
fn routes_agree_on_small_cases() {
    for (k, n) in [(2, 4), (2, 5), (2, 6), (2, 7), (3, 5), (3, 6)] {
        assert_eq!(
            build_fan_with(k, n, Route::Refinement).unwrap(),
            build_fan_with(k, n, Route::Minkowski).unwrap(),
            "({k},{n})"
        );
    }
}

#[test]
fn every_trop_pk_is_linear_on_every_cone() {
    for (k, n) in [(2, 6), (3, 6), (3, 7)] {
        let f = build_fan(k, n).unwrap();
        for t in trop_plucker_polys(k, n).unwrap().values() {
            assert!(linear_on_cones(&f, t).unwrap(), "({k},{n}) {t}");
        }
    }
}

/// Random positive combinations of each cone's rays share one minimizer.
#[test]
fn argmin_constant_on_sampled_interiors() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (k, n) in [(2, 6), (3, 6)] {
        let f = build_fan(k, n).unwrap();
        let polys = trop_plucker_polys(k, n).unwrap();
        for cone in f.maximal_cones() {
            let rays = f.ray_vectors(cone);
            let sample = |rng: &mut ChaCha8Rng| {
                let mut x = vec![BigRational::from_integer(0.into()); f.ambient_dim()];
                for r in &rays {
                    let c = BigRational::new(BigInt::from(rng.gen_range(1..=50)), BigInt::from(rng.gen_range(1..=50)));
                    for (xi, &ri) in x.iter_mut().zip(r) {
                        *xi += &c * BigInt::from(ri);
                    }
                }
                RatVector::new(x)
            };
            let base: Vec<_> = (0..3).map(|_| sample(&mut rng)).collect();
            for t in polys.values() {
                let first = t.argmin(&base[0]).cloned();
                assert!(first.is_some());
                for p in &base[1..] {
                    assert_eq!(t.argmin(p).cloned(), first);
                }
            }
        }
    }
}

#[test]
fn gr24_image_is_positive() {
    let f = build_fan(2, 4).unwrap();
    assert_eq!(f.maximal_cone_count(), 2);
    for x in -5..=5 {
        let w = trop_phi2(2, 4, &RatVector::from_ints(&[x])).unwrap();
        let v = RatVector::new(GR24_SUBSETS.iter().map(|s| w[&s.to_vec()].clone()).collect());
        assert!(pos_membership_gr24(&v).unwrap(), "x = {x}");
    }
}

#[test]
fn gr24_rejections() {
    // w indexed by 12, 13, 14, 23, 24, 34
    let reject = [[0, -1, 0, 0, 0, 0], [0, 1, 0, 0, 1, 0]];
    for w in reject {
        assert!(!pos_membership_gr24(&RatVector::from_ints(&w)).unwrap(), "{w:?}");
    }
    assert!(pos_membership_gr24(&RatVector::zeros(6)).unwrap());
    let binomial = init_form(&gr24_relation(), &RatVector::from_ints(&[0, 0, 1, 1, 0, 0])).unwrap();
    assert_eq!(binomial.terms().len(), 2);
    assert!(binomial.has_mixed_signs());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn refinement_order_is_irrelevant(shape in prop::sample::select(vec![(2usize, 6usize), (3, 5), (3, 6)]), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let (k, n) = shape;
        let mut polys = nontrivial_trop_polys(k, n).unwrap();
        polys.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let d = (k - 1) * (n - k - 1);
        prop_assert_eq!(refine_all(d, &polys, Route::Refinement).unwrap(), build_fan(k, n).unwrap());
    }
}
