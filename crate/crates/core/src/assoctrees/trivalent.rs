use std::collections::BTreeSet;

use super::{PlaneBinaryTree, TreeError};

/// Trivalent planar tree with leaves `1..=n` in clockwise order, stored by
/// its internal edges. Each edge splits the leaves into two cyclic
/// intervals; it is recorded as the interval `[a, b]` not containing leaf 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TrivalentTree {
    n: usize,
    splits: BTreeSet<(usize, usize)>,
}

impl TrivalentTree {
    /// Validates that the splits are planar, pairwise compatible and
    /// `n - 3` in number.
    pub fn new(n: usize, splits: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, TreeError> {
        if n < 3 {
            return Err(TreeError::NotTrivalent(format!("{n} leaves")));
        }
        let splits: BTreeSet<(usize, usize)> = splits.into_iter().collect();
        for &(a, b) in &splits {
            if a < 2 || b > n || b < a + 1 || b - a + 1 > n - 2 {
                return Err(TreeError::NotTrivalent(format!("bad split [{a}, {b}]")));
            }
        }
        for &(a, b) in &splits {
            for &(c, d) in &splits {
                let nested = (a <= c && d <= b) || (c <= a && b <= d);
                let disjoint = b < c || d < a;
                if !nested && !disjoint {
                    return Err(TreeError::NotTrivalent(format!(
                        "crossing splits [{a}, {b}] and [{c}, {d}]"
                    )));
                }
            }
        }
        if splits.len() != n - 3 {
            return Err(TreeError::NotTrivalent(format!(
                "{} internal edges, trivalence needs {}",
                splits.len(),
                n - 3
            )));
        }
        Ok(TrivalentTree { n, splits })
    }

    pub fn leaves(&self) -> usize {
        self.n
    }

    pub fn splits(&self) -> &BTreeSet<(usize, usize)> {
        &self.splits
    }
}

/// Contract the edge at leaf 1 and root the tree there. The subtree that
/// comes first clockwise after leaf 1 becomes the left child, so the leaves
/// of the plane binary tree read `2, 3, ..., n` from left to right.
pub fn trivalent_bijection(t: &TrivalentTree) -> Result<PlaneBinaryTree, TreeError> {
    fn build(t: &TrivalentTree, a: usize, b: usize) -> Result<PlaneBinaryTree, TreeError> {
        if a == b {
            return Ok(PlaneBinaryTree::Leaf);
        }
        let first = t
            .splits
            .iter()
            .filter(|&&(x, y)| x == a && y < b)
            .map(|&(_, y)| y)
            .max()
            .unwrap_or(a);
        let rest = (first + 1, b);
        if rest.0 != rest.1 && !t.splits.contains(&rest) {
            return Err(TreeError::NotTrivalent(format!("vertex over [{a}, {b}] has degree > 3")));
        }
        let left = build(t, a, first)?;
        let right = build(t, rest.0, rest.1)?;
        Ok(PlaneBinaryTree::node(left, right))
    }
    build(t, 2, t.n)
}

/// Inverse of [`trivalent_bijection`].
pub fn binary_to_trivalent(t: &PlaneBinaryTree) -> Result<TrivalentTree, TreeError> {
    let n = t.leaves() + 1;
    fn walk(t: &PlaneBinaryTree, lo: usize, root: bool, out: &mut Vec<(usize, usize)>) {
        if let PlaneBinaryTree::Node(l, r) = t {
            if !root {
                out.push((lo, lo + t.leaves() - 1));
            }
            walk(l, lo, false, out);
            walk(r, lo + l.leaves(), false, out);
        }
    }
    let mut splits = Vec::new();
    walk(t, 2, true, &mut splits);
    TrivalentTree::new(n, splits)
}

/// Trees dual to the triangulations of the `n`-gon, enumerated directly.
/// Side `i` of the polygon joins vertices `i - 1` and `i` (mod `n`).
pub fn triangulation_trees(n: usize) -> Result<Vec<TrivalentTree>, TreeError> {
    fn tri(i: usize, j: usize) -> Vec<Vec<(usize, usize)>> {
        if j < i + 2 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for m in i + 1..j {
            for a in tri(i, m) {
                for b in tri(m, j) {
                    let mut d = a.clone();
                    d.extend(b);
                    if m > i + 1 {
                        d.push((i, m));
                    }
                    if j > m + 1 {
                        d.push((m, j));
                    }
                    out.push(d);
                }
            }
        }
        out
    }
    if n < 3 {
        return Err(TreeError::NotTrivalent(format!("{n} leaves")));
    }
    let mut trees = tri(0, n - 1)
        .into_iter()
        .map(|diagonals| {
            let splits = diagonals.into_iter().map(|(p, q)| {
                if p == 0 {
                    (q + 1, n)
                } else {
                    (p + 1, q)
                }
            });
            TrivalentTree::new(n, splits)
        })
        .collect::<Result<Vec<_>, _>>()?;
    trees.sort();
    Ok(trees)
}
