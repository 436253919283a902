use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use tpgrass::assoctrees::{
    binary_to_trivalent, check_f2n_equals_sp, cone_of_tree, enum_plane_binary, stanley_pitman_fan,
    trivalent_bijection, triangulation_trees, tree_of_point, TreeError,
};
use tpgrass::exactgeom::RatVector;
use tpgrass::tropfan::{linear_on_cones, linearity_fan, trop_phi2, trop_plucker_polys, TropicalPolynomial};

#[test]
fn gr2n_equals_stanley_pitman() {
    for n in 4..=8 {
        let c = check_f2n_equals_sp(n).unwrap();
        assert!(c.equal, "n = {n}");
        assert_eq!(c.fan_cones, c.tree_cones);
    }
}

#[test]
fn trop_maps_linear_on_tree_cones() {
    for n in 4..=7 {
        let sp = stanley_pitman_fan(n).unwrap();
        for t in trop_plucker_polys(2, n).unwrap().values() {
            assert!(linear_on_cones(&sp, t).unwrap(), "n = {n}: {t}");
        }
    }
}

/// Shifting `min(S_a, ..., S_b)` by the linear form `S_a` keeps its domains.
#[test]
fn theta_normalization_keeps_domains() {
    for m in 1..=5 {
        let prefix = |t: usize| -> Vec<i64> { (0..m).map(|i| i64::from(i < t)).collect() };
        for a in 0..=m {
            for b in a..=m {
                let raw = TropicalPolynomial::new(m, (a..=b).map(prefix)).unwrap();
                let shifted = TropicalPolynomial::new(
                    m,
                    (a..=b).map(|t| prefix(t).iter().zip(prefix(a)).map(|(x, y)| x - y).collect()),
                )
                .unwrap();
                assert_eq!(linearity_fan(&raw).unwrap(), linearity_fan(&shifted).unwrap());
            }
        }
    }
}

/// Quartet `{p,q,r,s}` (sorted) as the index of its pairing: 0 = pq|rs,
/// 1 = pr|qs, 2 = ps|qr.
fn pairing_from_weights(w: &std::collections::BTreeMap<Vec<usize>, BigRational>, q: &[usize]) -> Option<usize> {
    let d = |a: usize, b: usize| &w[&vec![q[a], q[b]]];
    let sums = [d(0, 1) + d(2, 3), d(0, 2) + d(1, 3), d(0, 3) + d(1, 2)];
    let max = sums.iter().max().unwrap();
    let hits: Vec<usize> = (0..3).filter(|&i| &sums[i] == max).collect();
    (hits.len() == 1).then(|| hits[0])
}

fn pairing_from_splits(splits: &BTreeSet<(usize, usize)>, q: &[usize]) -> Option<usize> {
    let found: BTreeSet<usize> = splits
        .iter()
        .filter_map(|&(a, b)| {
            let inside: Vec<usize> = (0..4).filter(|&i| (a..=b).contains(&q[i])).collect();
            match inside.as_slice() {
                [0, 1] | [2, 3] => Some(0),
                [0, 2] | [1, 3] => Some(1),
                [0, 3] | [1, 2] => Some(2),
                _ => None,
            }
        })
        .collect();
    (found.len() == 1).then(|| *found.iter().next().unwrap())
}

/// The tree read off `Trop Φ₂` by the four-point condition agrees with the
/// trivalent tree attached to each cone.
#[test]
fn four_point_condition_matches_bijection() {
    for n in 5..=8 {
        for t in triangulation_trees(n).unwrap() {
            let binary = trivalent_bijection(&t).unwrap();
            let x = cone_of_tree(&binary, n).unwrap().cone().unwrap().interior_point();
            let w = trop_phi2(2, n, &RatVector::from_ints(&x)).unwrap();
            for q in (1..=n).combinations(4) {
                assert_eq!(
                    pairing_from_weights(&w, &q),
                    pairing_from_splits(t.splits(), &q),
                    "n = {n}, tree {binary}, quartet {q:?}"
                );
            }
        }
    }
}

#[test]
fn bijection_is_onto_triangulations() {
    for n in 3..=8 {
        let via: BTreeSet<_> = enum_plane_binary(n - 1)
            .unwrap()
            .iter()
            .map(|b| binary_to_trivalent(b).unwrap())
            .collect();
        let direct: BTreeSet<_> = triangulation_trees(n).unwrap().into_iter().collect();
        assert_eq!(via, direct);
    }
}

fn tree_and_weights() -> impl Strategy<Value = (usize, usize, Vec<(i64, i64)>)> {
    (4usize..=8).prop_flat_map(|n| {
        let count = enum_plane_binary(n - 1).unwrap().len();
        (Just(n), 0..count, prop::collection::vec((1i64..=60, 1i64..=60), n - 3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn tree_of_point_recovers_tree((n, idx, coeffs) in tree_and_weights()) {
        let tree = enum_plane_binary(n - 1).unwrap().swap_remove(idx);
        let cone = cone_of_tree(&tree, n).unwrap().cone().unwrap();
        prop_assert!(cone.is_simplicial());
        let mut x = vec![BigRational::from_integer(0.into()); n - 3];
        for (r, &(p, q)) in cone.rays().iter().zip(&coeffs) {
            let c = BigRational::new(BigInt::from(p), BigInt::from(q));
            for (xi, &ri) in x.iter_mut().zip(r) {
                *xi += &c * BigInt::from(ri);
            }
        }
        prop_assert_eq!(tree_of_point(&RatVector::new(x)).unwrap(), tree);
    }

    #[test]
    fn located_tree_contains_point(x in prop::collection::vec(-20i64..=20, 1..=5)) {
        let n = x.len() + 3;
        match tree_of_point(&RatVector::from_ints(&x)) {
            Ok(t) => {
                let cone = cone_of_tree(&t, n).unwrap().cone().unwrap();
                prop_assert!(cone.contains_in_relative_interior(&x));
            }
            Err(TreeError::Boundary(_)) => {
                let inside = enum_plane_binary(n - 1)
                    .unwrap()
                    .iter()
                    .filter(|t| cone_of_tree(t, n).unwrap().cone().unwrap().contains(&x))
                    .count();
                prop_assert!(inside >= 2);
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}
