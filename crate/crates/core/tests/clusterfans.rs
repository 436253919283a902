use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tpgrass::clusterfans::{
    extra_vars_gr36, pullback_vars_gr37, refine_gr36, refine_gr37, split_report, ClusterVarExpr,
    Projection,
};
use tpgrass::tropfan::build_fan;
use tpgrass::webdiagram::{build_web, matrix_entry_poly, WebDiagram};

#[allow(clippy::needless_range_loop)]
fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c].clone();
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for j in c..n {
                let t = &f * &m[c][j];
                m[r][j] -= t;
            }
        }
    }
    d
}

/// `Δ_A Δ_B - Δ_C Δ_D` from minors of the evaluated path matrix, with the
/// outer regions set to 1.
fn via_minors(w: &WebDiagram, x: &ClusterVarExpr, inner: &[BigRational]) -> BigRational {
    let mut all = vec![BigRational::one(); w.region_count()];
    for (&r, v) in w.inner_regions().iter().zip(inner) {
        all[r] = v.clone();
    }
    let a: Vec<Vec<BigRational>> = (1..=3)
        .map(|i| (1..=w.n()).map(|j| matrix_entry_poly(w, i, j).unwrap().eval(&all)).collect())
        .collect();
    let minor = |s: &Vec<usize>| det(a.iter().map(|row| s.iter().map(|&j| row[j - 1].clone()).collect()).collect());
    minor(&x.plus[0]) * minor(&x.plus[1]) - minor(&x.minus[0]) * minor(&x.minus[1])
}

fn random_point(rng: &mut ChaCha8Rng, len: usize) -> Vec<BigRational> {
    (0..len)
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(1..=25)), BigInt::from(rng.gen_range(1..=25))))
        .collect()
}

#[test]
fn gr36_variables_match_minors_and_are_positive() {
    let w = build_web(3, 6).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    let xs = extra_vars_gr36().unwrap();
    for _ in 0..100 {
        let p = random_point(&mut rng, w.inner_count());
        for x in &xs {
            let v = x.expanded.eval(&p);
            assert!(v > BigRational::zero());
            assert_eq!(v, via_minors(&w, x, &p), "{}", x.formula());
        }
    }
}

#[test]
fn gr37_pullbacks() {
    let w = build_web(3, 7).unwrap();
    let ordered = pullback_vars_gr37(Projection::OrderPreserving).unwrap();
    assert_eq!(ordered.len(), 14);
    let distinct: BTreeSet<String> = ordered.iter().map(|x| x.expanded.to_string()).collect();
    assert_eq!(distinct.len(), 14);

    let deleting_7: Vec<String> = ordered
        .iter()
        .filter(|x| x.name.ends_with("[del 7]"))
        .map(ClusterVarExpr::formula)
        .collect();
    assert_eq!(deleting_7, vec!["D134 D256 - D156 D234", "D236 D145 - D123 D456"]);

    let cyclic: BTreeSet<String> = pullback_vars_gr37(Projection::Cyclic)
        .unwrap()
        .iter()
        .map(|x| x.expanded.to_string())
        .collect();
    assert_eq!(cyclic, distinct);

    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..100 {
        let p = random_point(&mut rng, w.inner_count());
        for x in &ordered {
            let v = x.expanded.eval(&p);
            assert!(v > BigRational::zero());
            assert_eq!(v, via_minors(&w, x, &p), "{}", x.name);
        }
    }
}

#[test]
fn d4_refinement() {
    let before = build_fan(3, 6).unwrap();
    let after = refine_gr36().unwrap();
    assert_eq!(after.f_vector().unwrap(), vec![16, 66, 100, 50]);
    assert!(after.is_simplicial());
    assert_eq!(after.rays(), before.rays());
    after.certify_complete(200, 1).unwrap();

    let report = split_report(&before, &after).unwrap();
    assert!(report.matches_pattern(4));
    assert_eq!(
        report.child_counts(),
        [(4, BTreeSet::from([1])), (5, BTreeSet::from([2]))].into()
    );
    for e in report.entries.iter().filter(|e| e.parent.len() == 5) {
        let a: BTreeSet<_> = e.children[0].iter().collect();
        let b: BTreeSet<_> = e.children[1].iter().collect();
        assert_eq!(a.intersection(&b).count(), 3);
    }
    assert!(split_report(&after, &before).is_err());
}

#[test]
fn e6_refinement_both_projections() {
    let before = build_fan(3, 7).unwrap();
    let mut fans = Vec::new();
    for proj in [Projection::OrderPreserving, Projection::Cyclic] {
        let after = refine_gr37(proj).unwrap();
        assert_eq!(after.f_vector().unwrap(), vec![42, 399, 1547, 2856, 2499, 833]);
        assert!(after.is_simplicial());
        let report = split_report(&before, &after).unwrap();
        assert!(report.matches_pattern(6));
        let counts: Vec<(usize, Vec<usize>)> = report
            .child_counts()
            .into_iter()
            .map(|(m, c)| (m, c.into_iter().collect()))
            .collect();
        assert_eq!(counts, vec![(6, vec![1]), (7, vec![2]), (8, vec![3]), (9, vec![4])]);
        fans.push(after);
    }
    assert_eq!(fans[0], fans[1]);
}
