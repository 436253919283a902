//! Plane binary trees and the Stanley–Pitman fan.
//!
//! A tree with `n - 1` leaves has internal vertices labelled `1..=n-2` in
//! in-order (the order in which a left-to-right depth-first search first
//! climbs back up to them). Each parent/child pair `(i, j)` of internal
//! vertices contributes `x_i + ... + x_{j-1} >= 0` if `i < j` and `<= 0` if
//! `i > j`, giving a simplicial cone `C_T` in `R^{n-3}`.

mod trivalent;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::exactgeom::{Cone, Fan, GeomError, IntVec, RatVector};
use crate::tropfan::{build_fan, TropError};

pub use trivalent::{binary_to_trivalent, trivalent_bijection, triangulation_trees, TrivalentTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("need at least one leaf")]
    NoLeaves,
    #[error("tree has {found} leaves, expected {expected}")]
    LeafCount { expected: usize, found: usize },
    #[error("boundary point: minimum attained at labels {0:?}")]
    Boundary(Vec<usize>),
    #[error("not a trivalent planar tree: {0}")]
    NotTrivalent(String),
    #[error("cannot parse tree: {0}")]
    Parse(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Trop(#[from] TropError),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaneBinaryTree {
    Leaf,
    Node(Box<PlaneBinaryTree>, Box<PlaneBinaryTree>),
}

impl PlaneBinaryTree {
    pub fn node(l: PlaneBinaryTree, r: PlaneBinaryTree) -> Self {
        PlaneBinaryTree::Node(Box::new(l), Box::new(r))
    }

    pub fn leaves(&self) -> usize {
        match self {
            PlaneBinaryTree::Leaf => 1,
            PlaneBinaryTree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    pub fn internal(&self) -> usize {
        self.leaves() - 1
    }

    /// Label of the root, or `None` for a single leaf.
    pub fn root_label(&self) -> Option<usize> {
        match self {
            PlaneBinaryTree::Leaf => None,
            PlaneBinaryTree::Node(l, _) => Some(l.internal() + 1),
        }
    }

    /// Parent/child pairs of internal vertices, as labels.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        fn walk(t: &PlaneBinaryTree, offset: usize, out: &mut Vec<(usize, usize)>) {
            if let PlaneBinaryTree::Node(l, r) = t {
                let me = offset + l.internal() + 1;
                if let Some(c) = l.root_label() {
                    out.push((me, offset + c));
                }
                if let Some(c) = r.root_label() {
                    out.push((me, me + c));
                }
                walk(l, offset, out);
                walk(r, me, out);
            }
        }
        let mut out = Vec::new();
        walk(self, 0, &mut out);
        out.sort_unstable();
        out
    }
}

impl fmt::Display for PlaneBinaryTree {
    /// Nested parentheses: a leaf is `x`, an internal vertex `(left,right)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaneBinaryTree::Leaf => write!(f, "x"),
            PlaneBinaryTree::Node(l, r) => write!(f, "({l},{r})"),
        }
    }
}

impl FromStr for PlaneBinaryTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        fn parse(b: &[u8], pos: &mut usize) -> Result<PlaneBinaryTree, TreeError> {
            let err = |p: usize| TreeError::Parse(format!("unexpected input at byte {p}"));
            match b.get(*pos) {
                Some(b'x') => {
                    *pos += 1;
                    Ok(PlaneBinaryTree::Leaf)
                }
                Some(b'(') => {
                    *pos += 1;
                    let l = parse(b, pos)?;
                    if b.get(*pos) != Some(&b',') {
                        return Err(err(*pos));
                    }
                    *pos += 1;
                    let r = parse(b, pos)?;
                    if b.get(*pos) != Some(&b')') {
                        return Err(err(*pos));
                    }
                    *pos += 1;
                    Ok(PlaneBinaryTree::node(l, r))
                }
                _ => Err(err(*pos)),
            }
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let t = parse(compact.as_bytes(), &mut pos)?;
        if pos != compact.len() {
            return Err(TreeError::Parse("trailing input".into()));
        }
        Ok(t)
    }
}

/// All plane binary trees with `m` leaves, in a fixed canonical order.
pub fn enum_plane_binary(m: usize) -> Result<Vec<PlaneBinaryTree>, TreeError> {
    if m == 0 {
        return Err(TreeError::NoLeaves);
    }
    let mut table: Vec<Vec<PlaneBinaryTree>> = vec![Vec::new(), vec![PlaneBinaryTree::Leaf]];
    for size in 2..=m {
        let mut here = Vec::new();
        for left in 1..size {
            for l in &table[left] {
                for r in &table[size - left] {
                    here.push(PlaneBinaryTree::node(l.clone(), r.clone()));
                }
            }
        }
        table.push(here);
    }
    Ok(table.swap_remove(m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    AtLeastZero,
    AtMostZero,
}

/// `C_T`, with its inequalities `x_lo + ... + x_hi (sense) 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCone {
    pub tree: PlaneBinaryTree,
    pub inequalities: Vec<(usize, usize, Sense)>,
    dim: usize,
}

impl TreeCone {
    /// Normals `a` with `a . x >= 0`.
    pub fn normals(&self) -> Vec<IntVec> {
        self.inequalities
            .iter()
            .map(|&(lo, hi, s)| {
                let sign = if s == Sense::AtLeastZero { 1 } else { -1 };
                let mut a = vec![0; self.dim];
                for v in &mut a[lo - 1..hi] {
                    *v = sign;
                }
                a
            })
            .collect()
    }

    pub fn cone(&self) -> Result<Cone, GeomError> {
        Cone::from_inequalities(self.dim, &self.normals())
    }
}

pub fn cone_of_tree(t: &PlaneBinaryTree, n: usize) -> Result<TreeCone, TreeError> {
    if n < 3 || t.leaves() != n - 1 {
        return Err(TreeError::LeafCount {
            expected: n.saturating_sub(1),
            found: t.leaves(),
        });
    }
    let inequalities = t
        .edges()
        .into_iter()
        .map(|(p, c)| {
            if p < c {
                (p, c - 1, Sense::AtLeastZero)
            } else {
                (c, p - 1, Sense::AtMostZero)
            }
        })
        .collect();
    Ok(TreeCone {
        tree: t.clone(),
        inequalities,
        dim: n - 3,
    })
}

/// The tree whose cone contains the generic point `x` in its interior:
/// the root of the label window `[a, b]` minimizes `x_1 + ... + x_{j-1}`
/// over `j` in the window.
pub fn tree_of_point(x: &RatVector) -> Result<PlaneBinaryTree, TreeError> {
    let mut prefix = vec![BigRational::zero()];
    for c in x.coords() {
        let next = prefix.last().expect("nonempty") + c;
        prefix.push(next);
    }
    fn build(prefix: &[BigRational], a: usize, b: usize) -> Result<PlaneBinaryTree, TreeError> {
        if a > b {
            return Ok(PlaneBinaryTree::Leaf);
        }
        let min = (a..=b).map(|j| &prefix[j - 1]).min().expect("nonempty window");
        let hits: Vec<usize> = (a..=b).filter(|&j| &prefix[j - 1] == min).collect();
        if hits.len() > 1 {
            return Err(TreeError::Boundary(hits));
        }
        let r = hits[0];
        Ok(PlaneBinaryTree::node(
            build(prefix, a, r - 1)?,
            build(prefix, r + 1, b)?,
        ))
    }
    build(&prefix, 1, x.dim() + 1)
}

/// The Stanley–Pitman fan in `R^{n-3}` as a canonical [`Fan`].
pub fn stanley_pitman_fan(n: usize) -> Result<Fan, TreeError> {
    let cones = enum_plane_binary(n - 1)?
        .iter()
        .map(|t| Ok(cone_of_tree(t, n)?.cone()?))
        .collect::<Result<Vec<Cone>, TreeError>>()?;
    Ok(Fan::from_maximal_cones(n - 3, cones, true)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpCheck {
    pub n: usize,
    pub fan_cones: usize,
    pub tree_cones: usize,
    pub equal: bool,
}

/// Compares the maximal cones of `F(2, n)` with `{C_T}`.
pub fn check_f2n_equals_sp(n: usize) -> Result<SpCheck, TreeError> {
    let f = build_fan(2, n)?;
    let sp = stanley_pitman_fan(n)?;
    Ok(SpCheck {
        n,
        fan_cones: f.maximal_cone_count(),
        tree_cones: sp.maximal_cone_count(),
        equal: f == sp,
    })
}
