//! The web diagram `Web(k, n)`: a directed `k x (n-k)` grid.
//!
//! Horizontal wires `1..=k` run right to left, top to bottom, and are fed by
//! sources on the right boundary. Vertical wires `k+1..=n` run downwards and
//! are numbered right to left, ending in sinks on the bottom boundary. The
//! boundary labels are therefore clockwise.
//!
//! Region `(i, j)` lies below horizontal wire `i` and to the right of
//! vertical wire `j`. It is inner iff `i < k` and `j > k + 1`. Regions are
//! indexed row-major: `(i - 1)(n - k) + (j - k - 1)`. For `k = 2` the inner
//! regions come out right to left.

mod paths;
mod poly;

use serde::Serialize;
use thiserror::Error;

pub use paths::{
    all_plucker_polys, lgv_check, matrix_entry_poly, path_families, paths_between, plucker_poly,
    LatticePath, Node, PathFamily,
};
pub use poly::ExponentPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WebError {
    #[error("need 1 <= k <= n - 1, got k = {k}, n = {n}")]
    OutOfRange { k: usize, n: usize },
    #[error("invalid subset {0:?}: need {1} distinct labels in 1..={2}")]
    BadSubset(Vec<usize>, usize, usize),
    #[error("invalid matrix index ({0}, {1})")]
    BadIndex(usize, usize),
    #[error("region values must be strictly positive")]
    NonPositive,
    #[error("expected {expected} region values, got {found}")]
    WrongLength { expected: usize, found: usize },
}

/// Which region variables a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarMode {
    AllRegions,
    InnerOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    pub index: usize,
    pub i: usize,
    pub j: usize,
    pub inner: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebDiagram {
    k: usize,
    n: usize,
    regions: Vec<Region>,
    inner: Vec<usize>,
}

#[derive(Serialize)]
struct WebJson<'a> {
    k: usize,
    n: usize,
    regions: &'a [Region],
}

pub fn build_web(k: usize, n: usize) -> Result<WebDiagram, WebError> {
    WebDiagram::new(k, n)
}

impl WebDiagram {
    pub fn new(k: usize, n: usize) -> Result<Self, WebError> {
        if k < 1 || k + 1 > n {
            return Err(WebError::OutOfRange { k, n });
        }
        let mut regions = Vec::with_capacity(k * (n - k));
        for i in 1..=k {
            for j in k + 1..=n {
                regions.push(Region {
                    index: regions.len(),
                    i,
                    j,
                    inner: i < k && j > k + 1,
                });
            }
        }
        let inner = regions.iter().filter(|r| r.inner).map(|r| r.index).collect();
        Ok(WebDiagram {
            k,
            n,
            regions,
            inner,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn regions(&self) -> &[Region] {
        &self.regions
    }
    pub fn region_count(&self) -> usize {
        self.regions.len()
    }

    /// Indices (into [`WebDiagram::regions`]) of the inner regions, in order.
    pub fn inner_regions(&self) -> &[usize] {
        &self.inner
    }
    pub fn inner_count(&self) -> usize {
        self.inner.len()
    }

    pub fn region_index(&self, i: usize, j: usize) -> Option<usize> {
        if (1..=self.k).contains(&i) && (self.k + 1..=self.n).contains(&j) {
            Some((i - 1) * (self.n - self.k) + (j - self.k - 1))
        } else {
            None
        }
    }

    /// Position of region `(i, j)` among the inner regions.
    pub fn inner_position(&self, i: usize, j: usize) -> Option<usize> {
        let r = self.region_index(i, j)?;
        self.inner.binary_search(&r).ok()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.k * (self.n - self.k)
    }

    pub fn vars(&self, mode: VarMode) -> usize {
        match mode {
            VarMode::AllRegions => self.region_count(),
            VarMode::InnerOnly => self.inner_count(),
        }
    }

    pub(crate) fn check_subset(&self, set: &[usize]) -> Result<Vec<usize>, WebError> {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != self.k || s.len() != set.len() || s.iter().any(|&x| x < 1 || x > self.n) {
            return Err(WebError::BadSubset(set.to_vec(), self.k, self.n));
        }
        Ok(s)
    }

    /// ASCII picture: sources on the right, sinks at the bottom, and each
    /// region cell showing its index (`*` marks inner regions).
    pub fn render(&self) -> String {
        let (k, n) = (self.k, self.n);
        let cols: Vec<usize> = (k + 1..=n).rev().collect();
        let cell = 6;
        let mut out = String::new();
        let mut header = String::from("   ");
        for c in &cols {
            header.push_str(&format!("{:^width$}", c, width = cell));
        }
        out.push_str(header.trim_end());
        out.push('\n');
        for i in 1..=k {
            let mut wire = String::from("   ");
            for _ in &cols {
                wire.push_str("--+---");
            }
            wire.push_str(&format!("-< {i}"));
            out.push_str(&wire);
            out.push('\n');
            let mut cells = String::from("   ");
            for &c in &cols {
                let idx = self.region_index(i, c).expect("grid region");
                let mark = if self.regions[idx].inner { "*" } else { " " };
                cells.push_str(&format!("  |{:<3}", format!("{idx}{mark}")));
            }
            out.push_str(cells.trim_end());
            out.push('\n');
        }
        let mut sinks = String::from("   ");
        for _ in &cols {
            sinks.push_str("  v   ");
        }
        out.push_str(sinks.trim_end());
        out.push('\n');
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&WebJson {
            k: self.k,
            n: self.n,
            regions: &self.regions,
        })
        .expect("serializable")
    }
}

/// All `k`-subsets of `1..=n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (1..=n).combinations(k).collect()
}
