use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{k_subsets, ExponentPolynomial, VarMode, WebDiagram, WebError};

/// A node of `Web(k, n)`: boundary source, grid vertex `(row, column)`, or
/// boundary sink. Columns carry their wire labels `k+1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Source(usize),
    Grid(usize, usize),
    Sink(usize),
}

/// Directed path from source `i` to sink `j`.
///
/// `entry_rows[b - k - 1]` is the row on which the path enters column `b`;
/// the sequence is weakly increasing, starts at `i` and the path leaves
/// column `j` from row `k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePath {
    source: usize,
    sink: usize,
    entry_rows: Vec<usize>,
    k: usize,
}

impl LatticePath {
    pub fn source(&self) -> usize {
        self.source
    }
    pub fn sink(&self) -> usize {
        self.sink
    }
    pub fn entry_rows(&self) -> &[usize] {
        &self.entry_rows
    }

    fn exit_row(&self, pos: usize) -> usize {
        self.entry_rows.get(pos + 1).copied().unwrap_or(self.k)
    }

    /// Grid vertices visited, in order.
    pub fn vertices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (pos, &h) in self.entry_rows.iter().enumerate() {
            let c = self.k + 1 + pos;
            for r in h..=self.exit_row(pos) {
                out.push((r, c));
            }
        }
        out
    }

    pub fn edges(&self) -> Vec<(Node, Node)> {
        let mut nodes = vec![Node::Source(self.source)];
        nodes.extend(self.vertices().into_iter().map(|(r, c)| Node::Grid(r, c)));
        nodes.push(Node::Sink(self.sink));
        nodes.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Regions `(a, b)` strictly below the path.
    pub fn regions_below(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (pos, &h) in self.entry_rows.iter().enumerate() {
            for a in h..=self.k {
                out.push((a, self.k + 1 + pos));
            }
        }
        out
    }

    fn exponent(&self, w: &WebDiagram) -> Vec<u32> {
        let mut e = vec![0u32; w.region_count()];
        for (a, b) in self.regions_below() {
            e[w.region_index(a, b).expect("region")] += 1;
        }
        e
    }
}

/// Pairwise vertex-disjoint paths, sorted by source.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathFamily {
    pub paths: Vec<LatticePath>,
}

impl PathFamily {
    /// Exponent vector over all regions of the product of the path weights.
    pub fn exponent(&self, w: &WebDiagram) -> Vec<u32> {
        let mut e = vec![0u32; w.region_count()];
        for p in &self.paths {
            for (x, y) in e.iter_mut().zip(p.exponent(w)) {
                *x += y;
            }
        }
        e
    }

    pub fn is_vertex_disjoint(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.paths
            .iter()
            .flat_map(|p| p.vertices())
            .all(|v| seen.insert(v))
    }
}

/// All paths from source `i` to sink `j`.
pub fn paths_between(w: &WebDiagram, i: usize, j: usize) -> Vec<LatticePath> {
    let k = w.k();
    if !(1..=k).contains(&i) || !(k + 1..=w.n()).contains(&j) {
        return Vec::new();
    }
    let len = j - k;
    let mut out = Vec::new();
    let mut rows = vec![i];
    fn extend(rows: &mut Vec<usize>, len: usize, k: usize, i: usize, j: usize, out: &mut Vec<LatticePath>) {
        if rows.len() == len {
            out.push(LatticePath {
                source: i,
                sink: j,
                entry_rows: rows.clone(),
                k,
            });
            return;
        }
        let last = *rows.last().expect("nonempty");
        for r in last..=k {
            rows.push(r);
            extend(rows, len, k, i, j, out);
            rows.pop();
        }
    }
    extend(&mut rows, len, k, i, j, &mut out);
    out
}

/// Vertex-disjoint families from `[k] \ K` to `K \ [k]`, any pairing.
pub fn path_families(w: &WebDiagram, set: &[usize]) -> Result<Vec<PathFamily>, WebError> {
    let set = w.check_subset(set)?;
    let k = w.k();
    let sources: Vec<usize> = (1..=k).filter(|s| !set.contains(s)).collect();
    let sinks: Vec<usize> = set.iter().copied().filter(|&s| s > k).collect();
    let cols = w.n() - k;
    let cell = |(r, c): (usize, usize)| (r - 1) * cols + (c - k - 1);

    let options: Vec<Vec<(LatticePath, Vec<usize>)>> = sources
        .iter()
        .map(|&s| {
            sinks
                .iter()
                .flat_map(|&t| paths_between(w, s, t))
                .map(|p| {
                    let cells = p.vertices().into_iter().map(cell).collect();
                    (p, cells)
                })
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut occupied = vec![false; k * cols];
    let mut used_sink = vec![false; w.n() + 1];
    let mut chosen: Vec<LatticePath> = Vec::new();

    struct Search<'a> {
        options: &'a [Vec<(LatticePath, Vec<usize>)>],
        occupied: &'a mut Vec<bool>,
        used_sink: &'a mut Vec<bool>,
        chosen: &'a mut Vec<LatticePath>,
        out: &'a mut Vec<PathFamily>,
    }
    fn go(s: &mut Search<'_>, depth: usize) {
        if depth == s.options.len() {
            s.out.push(PathFamily {
                paths: s.chosen.clone(),
            });
            return;
        }
        for (p, cells) in &s.options[depth] {
            if s.used_sink[p.sink] || cells.iter().any(|&c| s.occupied[c]) {
                continue;
            }
            s.used_sink[p.sink] = true;
            for &c in cells {
                s.occupied[c] = true;
            }
            s.chosen.push(p.clone());
            go(s, depth + 1);
            s.chosen.pop();
            for &c in cells {
                s.occupied[c] = false;
            }
            s.used_sink[p.sink] = false;
        }
    }
    go(
        &mut Search {
            options: &options,
            occupied: &mut occupied,
            used_sink: &mut used_sink,
            chosen: &mut chosen,
            out: &mut out,
        },
        0,
    );
    out.sort();
    Ok(out)
}

/// Sum over `Path(K)` of the product of the regions below each path.
pub fn plucker_poly(
    w: &WebDiagram,
    set: &[usize],
    mode: VarMode,
) -> Result<ExponentPolynomial, WebError> {
    let families = path_families(w, set)?;
    let mut p = ExponentPolynomial::zero(w.region_count());
    for f in &families {
        p.add_term(f.exponent(w), BigInt::one());
    }
    Ok(match mode {
        VarMode::AllRegions => p,
        VarMode::InnerOnly => p.restrict(w.inner_regions()),
    })
}

/// Plücker polynomials of every `k`-subset, keyed by subset.
pub fn all_plucker_polys(
    w: &WebDiagram,
    mode: VarMode,
) -> BTreeMap<Vec<usize>, ExponentPolynomial> {
    k_subsets(w.n(), w.k())
        .into_par_iter()
        .map(|s| {
            let p = plucker_poly(w, &s, mode).expect("valid subset");
            (s, p)
        })
        .collect()
}

/// Entry `a_ij` of the path matrix over all region variables.
///
/// Columns `1..=k` form the identity. For `j > k` the entry is the path
/// generating function with sign `(-1)^(k - i)`, which makes every maximal
/// minor equal to the corresponding Plücker polynomial.
pub fn matrix_entry_poly(
    w: &WebDiagram,
    i: usize,
    j: usize,
) -> Result<ExponentPolynomial, WebError> {
    let k = w.k();
    if !(1..=k).contains(&i) || !(1..=w.n()).contains(&j) {
        return Err(WebError::BadIndex(i, j));
    }
    let nv = w.region_count();
    if j <= k {
        return Ok(if i == j {
            ExponentPolynomial::one(nv)
        } else {
            ExponentPolynomial::zero(nv)
        });
    }
    let sign = if (k - i).is_multiple_of(2) { 1 } else { -1 };
    let mut p = ExponentPolynomial::zero(nv);
    for path in paths_between(w, i, j) {
        p.add_term(path.exponent(w), BigInt::from(sign));
    }
    Ok(p)
}

#[allow(clippy::needless_range_loop)]
pub(crate) fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let d = &f * &m[col][c];
                m[r][c] -= d;
            }
        }
    }
    det
}

/// Compares the `K`-minor of the evaluated path matrix with the Plücker
/// polynomial at the same point.
pub fn lgv_check(
    w: &WebDiagram,
    set: &[usize],
    assignment: &[BigRational],
) -> Result<bool, WebError> {
    let set = w.check_subset(set)?;
    if assignment.len() != w.region_count() {
        return Err(WebError::WrongLength {
            expected: w.region_count(),
            found: assignment.len(),
        });
    }
    if assignment.iter().any(|x| !x.is_positive()) {
        return Err(WebError::NonPositive);
    }
    let mut m = Vec::with_capacity(w.k());
    for i in 1..=w.k() {
        let mut row = Vec::with_capacity(w.k());
        for &j in &set {
            row.push(matrix_entry_poly(w, i, j)?.eval(assignment));
        }
        m.push(row);
    }
    let lhs = determinant(m);
    let rhs = plucker_poly(w, &set, VarMode::AllRegions)?.eval(assignment);
    Ok(lhs == rhs)
}
