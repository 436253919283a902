//! Verification reports. Each item passes or fails with a diff listing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use anyhow::{bail, Result};
use tpgrass::clusterfans::{split_report, SplitReport};
use tpgrass::exactgeom::{Fan, IntVec, RatVector};
use tpgrass::tropfan::{pos_membership_gr24, trop_phi2, trop_plucker_polys, GR24_SUBSETS};

use crate::golden::{format_ray, parse_trop, GoldenTable, TropList};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub item: String,
    pub pass: bool,
    pub detail: Vec<String>,
}

impl Check {
    fn new(item: impl Into<String>, pass: bool, detail: Vec<String>) -> Check {
        Check {
            item: item.into(),
            pass,
            detail,
        }
    }

    fn compare<T: fmt::Debug + PartialEq>(item: &str, expected: &T, found: &T) -> Check {
        let pass = expected == found;
        let detail = if pass {
            Vec::new()
        } else {
            vec![format!("expected {expected:?}"), format!("found    {found:?}")]
        };
        Check::new(format!("{item} {expected:?}"), pass, detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report {
            title: title.into(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            writeln!(f, "{} {}", if c.pass { "PASS" } else { "FAIL" }, c.item)?;
            for d in &c.detail {
                writeln!(f, "  {d}")?;
            }
        }
        write!(f, "{}", if self.passed() { "ok" } else { "MISMATCH" })
    }
}

fn set_diff(item: &str, expected: &BTreeSet<IntVec>, found: &BTreeSet<IntVec>) -> Check {
    let mut detail: Vec<String> = expected
        .difference(found)
        .map(|r| format!("missing    {}", format_ray(r)))
        .collect();
    detail.extend(found.difference(expected).map(|r| format!("unexpected {}", format_ray(r))));
    Check::new(format!("{item} ({})", expected.len()), detail.is_empty(), detail)
}

/// Rays after the pinned coordinate permutation, f-vector, facet census and
/// (when listed) the non-simplicial cones.
pub fn check_tables(fan: &Fan, table: &GoldenTable) -> Result<Report> {
    if fan.ambient_dim() != table.dim() {
        bail!("fan lives in R^{}, table {} in R^{}", fan.ambient_dim(), table.name, table.dim());
    }
    let mut r = Report::new(format!("check-tables {}", table.name));
    let moved = fan.apply_signed_permutation(&table.permutation)?;
    let golden: BTreeSet<IntVec> = table.ray_vectors()?.into_iter().collect();
    let found: BTreeSet<IntVec> = moved.rays().iter().cloned().collect();
    r.push(set_diff("rays", &golden, &found));
    r.push(Check::compare("f-vector", &table.f_vector, &moved.f_vector()?));
    r.push(Check::compare("facet census", &table.facet_census, &moved.facet_census()));
    if let Some(cones) = table.nonsimplicial_vectors()? {
        let want: BTreeSet<BTreeSet<IntVec>> = cones.into_iter().map(|c| c.into_iter().collect()).collect();
        let got: BTreeSet<BTreeSet<IntVec>> = moved
            .nonsimplicial_cones()
            .into_iter()
            .map(|c| c.into_iter().collect())
            .collect();
        let show = |s: &BTreeSet<IntVec>| s.iter().map(|v| format_ray(v)).collect::<Vec<_>>().join(", ");
        let mut detail: Vec<String> = want.difference(&got).map(|c| format!("missing    {{{}}}", show(c))).collect();
        detail.extend(got.difference(&want).map(|c| format!("unexpected {{{}}}", show(c))));
        r.push(Check::new(format!("non-simplicial cones ({})", want.len()), detail.is_empty(), detail));
    }
    Ok(r)
}

/// Refined f-vector, simplicial cones, unchanged rays and per-facet split
/// counts in the sliding-window pattern.
pub fn check_refinement(before: &Fan, after: &Fan, table: &GoldenTable) -> Result<(Report, SplitReport)> {
    let mut r = Report::new(format!("refine {}", table.name));
    r.push(Check::compare("f-vector", &table.refined_f_vector, &after.f_vector()?));
    r.push(Check::new("all cones simplicial", after.is_simplicial(), Vec::new()));
    let split = split_report(before, after)?;
    r.push(Check::new("no new rays", split.same_rays, Vec::new()));
    let counts: BTreeMap<usize, usize> = split
        .child_counts()
        .into_iter()
        .map(|(m, c)| (m, if c.len() == 1 { *c.first().expect("one") } else { 0 }))
        .collect();
    r.push(Check::compare("children per facet size", &table.refined_children, &counts));
    let bad: Vec<String> = split
        .entries
        .iter()
        .filter(|e| !e.sliding_window)
        .map(|e| format!("facet {:?} splits irregularly", e.parent))
        .collect();
    r.push(Check::new("sliding-window splits", bad.is_empty(), bad));
    Ok((r, split))
}

/// Every printed `Gr(2,5)` map against the computed one, term for term.
pub fn check_trop_list(list: &TropList) -> Result<Report> {
    let computed = trop_plucker_polys(list.k, list.n)?;
    let nvars = (list.k - 1) * (list.n - list.k - 1);
    let mut r = Report::new(format!("trop maps Gr({},{})", list.k, list.n));
    let mut seen = BTreeSet::new();
    for (key, printed) in &list.maps {
        let set: Vec<usize> = key.chars().filter_map(|c| c.to_digit(10)).map(|d| d as usize).collect();
        seen.insert(set.clone());
        let want = parse_trop(printed, nvars)?;
        let Some(got) = computed.get(&set) else {
            bail!("no Plücker coordinate {key}");
        };
        let detail = if &want == got { Vec::new() } else { vec![format!("computed {got}")] };
        r.push(Check::new(format!("P{key} = {printed}"), detail.is_empty(), detail));
    }
    let unlisted: Vec<String> = computed.keys().filter(|k| !seen.contains(*k)).map(|k| format!("{k:?}")).collect();
    r.push(Check::new("every coordinate listed", unlisted.is_empty(), unlisted));
    Ok(r)
}

/// Weight vector in the `GR24_SUBSETS` order.
fn gr24_weights(x: i64) -> Result<RatVector> {
    let w = trop_phi2(2, 4, &RatVector::from_ints(&[x]))?;
    Ok(RatVector::new(GR24_SUBSETS.iter().map(|s| w[&s.to_vec()].clone()).collect()))
}

/// The parameterized grid `x_1 in [-b, b]` must pass the initial-form sign
/// test. Two weights whose initial form is one-signed must fail it.
pub fn oracle_gr24(bound: i64) -> Result<Report> {
    let mut r = Report::new(format!("oracle Gr(2,4), |x_1| <= {bound}"));
    for x in -bound..=bound {
        let w = gr24_weights(x)?;
        r.push(Check::new(format!("accept x_1 = {x}, w = {w}"), pos_membership_gr24(&w)?, Vec::new()));
    }
    r.push(Check::new("accept w = 0", pos_membership_gr24(&RatVector::zeros(6))?, Vec::new()));
    // coordinates 12, 13, 14, 23, 24, 34
    for (why, w) in [
        ("monomial p13 p24", [0, -1, 0, 0, 0, 0]),
        ("negative binomial -p12 p34 - p14 p23", [0, 1, 0, 0, 1, 0]),
    ] {
        let v = RatVector::from_ints(&w);
        r.push(Check::new(format!("reject w = {v} ({why})"), !pos_membership_gr24(&v)?, Vec::new()));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::{fixtures_dir, load_table};
    use tpgrass::tropfan::build_fan;

    #[test]
    fn gr36_tables_pass() {
        let t = load_table(&fixtures_dir(), 3, 6).unwrap();
        let r = check_tables(&build_fan(3, 6).unwrap(), &t).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn corrupted_table_lists_diff() {
        let mut t = load_table(&fixtures_dir(), 3, 6).unwrap();
        t.rays[15] = "e2+e3+e4".into();
        t.f_vector[2] = 97;
        let r = check_tables(&build_fan(3, 6).unwrap(), &t).unwrap();
        assert!(!r.passed());
        let text = r.to_string();
        assert!(text.contains("missing    e2+e3+e4"), "{text}");
        assert!(text.contains("unexpected e2+e3-e4"), "{text}");
        assert!(text.contains("FAIL f-vector"), "{text}");
        assert!(text.ends_with("MISMATCH"));
    }

    #[test]
    fn wrong_permutation_fails() {
        let mut t = load_table(&fixtures_dir(), 3, 6).unwrap();
        t.permutation = vec![(0, 1), (1, 1), (2, 1), (3, 1)];
        assert!(!check_tables(&build_fan(3, 6).unwrap(), &t).unwrap().passed());
    }

    #[test]
    fn oracle_small_grid() {
        let r = oracle_gr24(3).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks.len(), 7 + 3);
    }
}
