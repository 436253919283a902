use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tpgrass::webdiagram::{
    all_plucker_polys, build_web, k_subsets, lgv_check, path_families, paths_between, VarMode,
};

fn random_positive(rng: &mut ChaCha8Rng, len: usize) -> Vec<BigRational> {
    (0..len)
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(1..=30)), BigInt::from(rng.gen_range(1..=30))))
        .collect()
}

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

/// Paths from source `i` to sink `j`: entry rows `i = h_{k+1} <= ... <= h_j <= k`.
fn path_count(k: usize, i: usize, j: usize) -> BigInt {
    let free = j - k - 1;
    binomial(BigInt::from(free + k - i), BigInt::from(free))
}

#[test]
fn path_counts_match_binomials() {
    for (k, n) in [(2, 5), (3, 6), (3, 7), (4, 8)] {
        let w = build_web(k, n).unwrap();
        for i in 1..=k {
            for j in k + 1..=n {
                assert_eq!(BigInt::from(paths_between(&w, i, j).len()), path_count(k, i, j));
            }
        }
    }
}

#[test]
fn lgv_at_counting_level() {
    for (k, n) in [(2, 4), (2, 6), (3, 6), (3, 7), (4, 8)] {
        let w = build_web(k, n).unwrap();
        for set in k_subsets(n, k) {
            let m: Vec<Vec<BigRational>> = (1..=k)
                .map(|i| {
                    set.iter()
                        .map(|&j| {
                            let v = if j <= k {
                                BigInt::from(u8::from(i == j))
                            } else if (k - i) % 2 == 0 {
                                path_count(k, i, j)
                            } else {
                                -path_count(k, i, j)
                            };
                            BigRational::from_integer(v)
                        })
                        .collect()
                })
                .collect();
            let families = path_families(&w, &set).unwrap();
            assert_eq!(det(m), BigRational::from_integer(families.len().into()), "{set:?}");
            assert!(families.iter().all(|f| f.is_vertex_disjoint()));
        }
    }
}

#[test]
fn lgv_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a2b);
    for (k, n) in [(2, 5), (3, 6)] {
        let w = build_web(k, n).unwrap();
        for _ in 0..100 {
            let x = random_positive(&mut rng, w.region_count());
            for set in k_subsets(n, k) {
                assert!(lgv_check(&w, &set, &x).unwrap(), "({k},{n}) {set:?}");
            }
        }
    }
}

#[test]
fn outer_exponents_agree_within_each_family_set() {
    for (k, n) in [(2, 4), (2, 5), (2, 6), (2, 7), (3, 5), (3, 6), (3, 7)] {
        let w = build_web(k, n).unwrap();
        let outer: Vec<usize> = (0..w.region_count())
            .filter(|r| !w.inner_regions().contains(r))
            .collect();
        for set in k_subsets(n, k) {
            let families = path_families(&w, &set).unwrap();
            let project = |e: Vec<u32>| -> Vec<u32> { outer.iter().map(|&r| e[r]).collect() };
            let first = project(families[0].exponent(&w));
            for f in &families[1..] {
                assert_eq!(project(f.exponent(&w)), first, "({k},{n}) {set:?}");
            }
        }
    }
}

#[test]
fn coefficients_positive() {
    for (k, n) in [(2, 6), (3, 6), (3, 7)] {
        let w = build_web(k, n).unwrap();
        for mode in [VarMode::AllRegions, VarMode::InnerOnly] {
            assert!(all_plucker_polys(&w, mode).values().all(|p| !p.is_zero() && p.all_positive()));
        }
    }
}

/// For `k = 2` every inner-only polynomial is `x_1...x_a + ... + x_1...x_b`.
#[test]
fn gr2n_polynomials_are_prefix_sums() {
    for n in 4..=8 {
        let w = build_web(2, n).unwrap();
        let m = n - 3;
        for (set, p) in all_plucker_polys(&w, VarMode::InnerOnly) {
            let mut lengths: Vec<usize> = p
                .terms()
                .iter()
                .map(|(e, c)| {
                    assert!(c.is_one(), "{set:?}");
                    let t = e.iter().take_while(|&&x| x == 1).count();
                    assert!(e[t..].iter().all(|&x| x == 0), "{set:?}: {p}");
                    t
                })
                .collect();
            lengths.sort_unstable();
            assert!(lengths.windows(2).all(|w| w[1] == w[0] + 1), "{set:?}: {p}");
            assert!(*lengths.last().unwrap() <= m);
        }
    }
}
