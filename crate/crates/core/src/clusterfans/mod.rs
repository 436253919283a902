//! The two non-Plücker cluster variables of `Gr(3,6)`, their pullbacks to
//! `Gr(3,7)`, and the refinements of `F(3,6)` and `F(3,7)` they induce.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::exactgeom::{common_refinement, containment_map, Fan, GeomError};
use crate::tropfan::{build_fan, linearity_fan, tropicalize, TropError, TropicalPolynomial};
use crate::webdiagram::{all_plucker_polys, build_web, ExponentPolynomial, VarMode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error("expansion of {0} has a non-positive coefficient")]
    NotPositive(String),
    #[error(transparent)]
    Trop(#[from] TropError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// `Δ_A Δ_B - Δ_C Δ_D`, with its expansion in the inner region variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterVarExpr {
    pub name: String,
    pub plus: [Vec<usize>; 2],
    pub minus: [Vec<usize>; 2],
    pub expanded: ExponentPolynomial,
}

impl ClusterVarExpr {
    pub fn formula(&self) -> String {
        let d = |s: &Vec<usize>| format!("D{}", s.iter().join(""));
        format!(
            "{} {} - {} {}",
            d(&self.plus[0]),
            d(&self.plus[1]),
            d(&self.minus[0]),
            d(&self.minus[1])
        )
    }

    pub fn tropical(&self) -> Result<TropicalPolynomial, TropError> {
        tropicalize(&self.expanded)
    }
}

/// The `Gr(3,6)` extra variables as index sets:
/// `Δ134 Δ256 - Δ156 Δ234` and its cyclic shift `Δ236 Δ145 - Δ123 Δ456`.
pub const GR36_EXTRA: [[[usize; 3]; 4]; 2] = [
    [[1, 3, 4], [2, 5, 6], [1, 5, 6], [2, 3, 4]],
    [[2, 3, 6], [1, 4, 5], [1, 2, 3], [4, 5, 6]],
];

/// `Δ236 Δ145 - Δ234 Δ156`. Easily confused with the second variable, but
/// its expansion contains `-x3 x4`, so it is not a cluster variable.
pub const GR36_NON_POSITIVE: [[usize; 3]; 4] = [[2, 3, 6], [1, 4, 5], [2, 3, 4], [1, 5, 6]];

/// Expands `Δ_A Δ_B - Δ_C Δ_D` over the inner regions of `Gr(3,n)` without
/// checking positivity.
pub fn expand_unchecked(n: usize, sets: [[usize; 3]; 4]) -> Result<ExponentPolynomial, ClusterError> {
    let w = build_web(3, n).map_err(TropError::from)?;
    let polys = all_plucker_polys(&w, VarMode::InnerOnly);
    let p = |s: &[usize; 3]| &polys[&s.to_vec()];
    Ok(p(&sets[0]).mul(p(&sets[1])).sub(&p(&sets[2]).mul(p(&sets[3]))))
}

fn expand(
    n: usize,
    name: String,
    sets: [Vec<usize>; 4],
) -> Result<ClusterVarExpr, ClusterError> {
    let w = build_web(3, n).map_err(TropError::from)?;
    let polys = all_plucker_polys(&w, VarMode::InnerOnly);
    let p = |s: &Vec<usize>| &polys[s];
    let expanded = p(&sets[0]).mul(p(&sets[1])).sub(&p(&sets[2]).mul(p(&sets[3])));
    if expanded.is_zero() || !expanded.all_positive() {
        return Err(ClusterError::NotPositive(name));
    }
    let [a, b, c, d] = sets;
    Ok(ClusterVarExpr {
        name,
        plus: [a, b],
        minus: [c, d],
        expanded,
    })
}

pub fn extra_vars_gr36() -> Result<Vec<ClusterVarExpr>, ClusterError> {
    GR36_EXTRA
        .iter()
        .enumerate()
        .map(|(i, s)| expand(6, format!("X{}", i + 1), s.map(|t| t.to_vec())))
        .collect()
}

/// How `[6]` is identified with `[7] \ {c}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    /// `i -> i` for `i < c`, `i -> i + 1` otherwise.
    OrderPreserving,
    /// `i -> c + i (mod 7)`.
    Cyclic,
}

fn relabel(c: usize, i: usize, proj: Projection) -> usize {
    match proj {
        Projection::OrderPreserving if i < c => i,
        Projection::OrderPreserving => i + 1,
        Projection::Cyclic => (c + i - 1) % 7 + 1,
    }
}

/// Parity of the permutation sorting `v`.
fn sort_sign(v: &[usize]) -> bool {
    let inversions = (0..v.len())
        .flat_map(|i| (i + 1..v.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| v[i] > v[j])
        .count();
    inversions % 2 == 0
}

/// The 14 pullbacks of the two `Gr(3,6)` extra variables along the seven
/// column deletions `Gr(3,7) -> Gr(3,6)`.
pub fn pullback_vars_gr37(proj: Projection) -> Result<Vec<ClusterVarExpr>, ClusterError> {
    let jobs: Vec<(usize, usize)> = (1..=7).flat_map(|c| (0..2).map(move |v| (c, v))).collect();
    jobs.into_par_iter()
        .map(|(c, v)| {
            let mut even = true;
            let sets = GR36_EXTRA[v].map(|s| {
                let img: Vec<usize> = s.iter().map(|&i| relabel(c, i, proj)).collect();
                even ^= !sort_sign(&img);
                img.into_iter().sorted().collect::<Vec<usize>>()
            });
            // a reordering sign on the two terms would change the expression
            if !even {
                return Err(ClusterError::NotPositive(format!("X{} deleting {c}: sign change", v + 1)));
            }
            expand(7, format!("X{}[del {c}]", v + 1), sets)
        })
        .collect()
}

fn refine_by(base: Fan, vars: &[ClusterVarExpr]) -> Result<Fan, ClusterError> {
    let trops: BTreeSet<TropicalPolynomial> =
        vars.iter().map(ClusterVarExpr::tropical).collect::<Result<_, _>>()?;
    let fans: Vec<Fan> = trops
        .par_iter()
        .map(linearity_fan)
        .collect::<Result<_, _>>()?;
    let mut acc = base;
    for f in &fans {
        acc = common_refinement(&acc, f)?;
    }
    Ok(acc)
}

/// `F(3,6)` refined by the two extra variables.
pub fn refine_gr36() -> Result<Fan, ClusterError> {
    refine_by(build_fan(3, 6)?, &extra_vars_gr36()?)
}

/// `F(3,7)` refined by the 14 pullbacks.
pub fn refine_gr37(proj: Projection) -> Result<Fan, ClusterError> {
    refine_by(build_fan(3, 7)?, &pullback_vars_gr37(proj)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitEntry {
    /// Ray indices of the coarse cone (into the coarse fan's rays).
    pub parent: Vec<usize>,
    /// Ray sets of the finer cones inside it, as vectors.
    pub children: Vec<Vec<Vec<i64>>>,
    /// Children share a core of `2D - m` rays and add consecutive windows of
    /// `m - D` of the remaining rays in some order.
    pub sliding_window: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    pub entries: Vec<SplitEntry>,
    pub same_rays: bool,
}

impl SplitReport {
    /// Ray count of the parent -> set of observed child counts.
    pub fn child_counts(&self) -> BTreeMap<usize, BTreeSet<usize>> {
        let mut h: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for e in &self.entries {
            h.entry(e.parent.len()).or_default().insert(e.children.len());
        }
        h
    }

    /// Every cone with `m` rays splits into `m - D + 1` children in the
    /// sliding-window pattern, and no rays are added.
    pub fn matches_pattern(&self, dim: usize) -> bool {
        self.same_rays
            && self.entries.iter().all(|e| {
                e.sliding_window && e.children.len() + dim == e.parent.len() + 1
            })
    }
}

fn sliding_window(parent: &BTreeSet<Vec<i64>>, children: &[BTreeSet<Vec<i64>>], dim: usize) -> bool {
    let m = parent.len();
    if m < dim {
        return false;
    }
    let w = m - dim;
    if w == 0 {
        return children.len() == 1 && &children[0] == parent;
    }
    if children.len() != w + 1 || children.iter().any(|c| c.len() != dim || !c.is_subset(parent)) {
        return false;
    }
    let core: BTreeSet<Vec<i64>> = children
        .iter()
        .skip(1)
        .fold(children[0].clone(), |acc, c| acc.intersection(c).cloned().collect());
    if core.len() + w != dim {
        return false;
    }
    let extra: Vec<&Vec<i64>> = parent.difference(&core).collect();
    let want: BTreeSet<BTreeSet<&Vec<i64>>> = children
        .iter()
        .map(|c| c.difference(&core).collect())
        .collect();
    extra.iter().copied().permutations(extra.len()).any(|order| {
        let got: BTreeSet<BTreeSet<&Vec<i64>>> =
            order.windows(w).map(|win| win.iter().copied().collect()).collect();
        got == want
    })
}

/// For each maximal cone of `before`, the maximal cones of `after` inside it.
pub fn split_report(before: &Fan, after: &Fan) -> Result<SplitReport, ClusterError> {
    let map = containment_map(before, after)?;
    let dim = before.ambient_dim() - before.lineality().len();
    let entries = map
        .iter()
        .enumerate()
        .map(|(i, kids)| {
            let parent = before.maximal_cones()[i].clone();
            let pset: BTreeSet<Vec<i64>> = before.ray_vectors(&parent).into_iter().collect();
            let children: Vec<Vec<Vec<i64>>> = kids
                .iter()
                .map(|&j| after.ray_vectors(&after.maximal_cones()[j]))
                .collect();
            let csets: Vec<BTreeSet<Vec<i64>>> =
                children.iter().map(|c| c.iter().cloned().collect()).collect();
            SplitEntry {
                parent,
                sliding_window: sliding_window(&pset, &csets, dim),
                children,
            }
        })
        .collect();
    Ok(SplitReport {
        entries,
        same_rays: before.rays() == after.rays(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gr36_extra_vars_positive() {
        let xs = extra_vars_gr36().unwrap();
        assert_eq!(xs.len(), 2);
        assert_eq!(xs[0].formula(), "D134 D256 - D156 D234");
        let w = build_web(3, 6).unwrap();
        let counts = all_plucker_polys(&w, VarMode::InnerOnly);
        let ones = vec![num_rational::BigRational::from_integer(1.into()); 4];
        for x in &xs {
            assert!(x.expanded.all_positive());
            let at_one = |s: &Vec<usize>| counts[s].eval(&ones);
            let expect = at_one(&x.plus[0]) * at_one(&x.plus[1]) - at_one(&x.minus[0]) * at_one(&x.minus[1]);
            assert_eq!(x.expanded.eval(&ones), expect);
        }
    }

    #[test]
    fn second_variable_is_cyclic_shift_of_first() {
        let shift = |s: [usize; 3]| {
            let mut v = s.map(|i| i % 6 + 1);
            v.sort_unstable();
            v
        };
        let x1 = GR36_EXTRA[0];
        let shifted = x1.map(shift);
        assert_eq!(
            expand_unchecked(6, shifted).unwrap(),
            expand_unchecked(6, GR36_EXTRA[1]).unwrap()
        );
        assert_eq!(
            expand_unchecked(6, shifted.map(shift)).unwrap(),
            expand_unchecked(6, x1).unwrap()
        );
        assert!(!expand_unchecked(6, GR36_NON_POSITIVE).unwrap().all_positive());
    }

    #[test]
    fn sort_parity() {
        assert!(sort_sign(&[1, 2, 3]));
        assert!(sort_sign(&[7, 1, 2]));
        assert!(!sort_sign(&[2, 1, 3]));
    }

    #[test]
    fn window_pattern() {
        let r = |v: i64| vec![v];
        let parent: BTreeSet<Vec<i64>> = (1..=7).map(r).collect();
        let kid = |v: &[i64]| v.iter().map(|&x| r(x)).collect::<BTreeSet<_>>();
        assert!(sliding_window(
            &parent,
            &[kid(&[1, 2, 3, 4, 5, 6]), kid(&[1, 2, 3, 4, 5, 7])],
            6
        ));
        let parent8: BTreeSet<Vec<i64>> = (1..=8).map(r).collect();
        assert!(sliding_window(
            &parent8,
            &[kid(&[1, 2, 3, 4, 5, 6]), kid(&[1, 2, 3, 4, 6, 7]), kid(&[1, 2, 3, 4, 7, 8])],
            6
        ));
        assert!(!sliding_window(
            &parent8,
            &[kid(&[1, 2, 3, 4, 5, 6]), kid(&[1, 2, 3, 4, 5, 7]), kid(&[1, 2, 3, 4, 5, 8])],
            6
        ));
    }
}
