//! Checked-in reference data: ray tables, f-vectors and facet censuses of
//! `F(3,6)` and `F(3,7)`, and the tropical maps of `Gr(2,5)`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use tpgrass::exactgeom::IntVec;
use tpgrass::tropfan::TropicalPolynomial;

pub const FIXTURES_ENV: &str = "TPGRASS_FIXTURES";

/// `$TPGRASS_FIXTURES`, or the fixtures shipped with this crate.
pub fn fixtures_dir() -> PathBuf {
    std::env::var_os(FIXTURES_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

#[derive(Clone, Debug, Deserialize)]
pub struct GoldenTable {
    pub name: String,
    pub k: usize,
    pub n: usize,
    /// `permutation[i] = (j, s)`: table coordinate `i` is `s` times ours `j`.
    pub permutation: Vec<(usize, i64)>,
    /// Rays as printed, e.g. `e1-e2-e3`.
    pub rays: Vec<String>,
    /// Right-hand sides of the printed inequalities. Kept for reference only:
    /// they fix one realization of the dual polytope.
    pub rhs: Vec<i64>,
    pub f_vector: Vec<usize>,
    pub facet_census: BTreeMap<usize, usize>,
    #[serde(default)]
    pub nonsimplicial: Option<Vec<Vec<String>>>,
    pub refined_f_vector: Vec<usize>,
    /// Rays of a coarse facet -> number of cones it splits into.
    pub refined_children: BTreeMap<usize, usize>,
}

impl GoldenTable {
    pub fn dim(&self) -> usize {
        self.permutation.len()
    }

    pub fn ray_vectors(&self) -> Result<Vec<IntVec>> {
        self.rays.iter().map(|r| parse_ray(r, self.dim())).collect()
    }

    pub fn nonsimplicial_vectors(&self) -> Result<Option<Vec<Vec<IntVec>>>> {
        self.nonsimplicial
            .as_ref()
            .map(|cones| {
                cones
                    .iter()
                    .map(|c| c.iter().map(|r| parse_ray(r, self.dim())).collect())
                    .collect()
            })
            .transpose()
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("missing fixture {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("malformed fixture {}", path.display()))
}

pub fn load_table(dir: &Path, k: usize, n: usize) -> Result<GoldenTable> {
    let t: GoldenTable = read_json(&dir.join(format!("gr{k}{n}.json")))?;
    if (t.k, t.n) != (k, n) {
        bail!("fixture gr{k}{n}.json describes ({}, {})", t.k, t.n);
    }
    if t.rays.len() != t.rhs.len() {
        bail!("fixture gr{k}{n}.json: {} rays but {} right-hand sides", t.rays.len(), t.rhs.len());
    }
    Ok(t)
}

#[derive(Clone, Debug, Deserialize)]
pub struct TropList {
    pub k: usize,
    pub n: usize,
    /// Subset digits (e.g. `"25"`) -> printed map (e.g. `"min(x_1+x_2, x_1, 0)"`).
    pub maps: BTreeMap<String, String>,
}

pub fn load_trop_list(dir: &Path) -> Result<TropList> {
    read_json(&dir.join("gr25_trop.json"))
}

/// `e2+e3-e4` -> `[0, 1, 1, -1]`.
pub fn parse_ray(s: &str, dim: usize) -> Result<IntVec> {
    let mut v = vec![0; dim];
    let mut rest = s.trim();
    if rest.is_empty() {
        bail!("empty ray");
    }
    while !rest.is_empty() {
        let (sign, tail) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let Some(tail) = tail.strip_prefix('e') else {
            bail!("bad ray {s:?}");
        };
        let end = tail.find(['+', '-']).unwrap_or(tail.len());
        let i: usize = tail[..end].parse().with_context(|| format!("bad ray {s:?}"))?;
        if i == 0 || i > dim {
            bail!("ray {s:?} leaves R^{dim}");
        }
        v[i - 1] += sign;
        rest = &tail[end..];
    }
    Ok(v)
}

/// Inverse of [`parse_ray`], in index order.
pub fn format_ray(v: &[i64]) -> String {
    let mut out = String::new();
    for (i, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else if out.is_empty() { "" } else { "+" };
        let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
        out.push_str(&format!("{sign}{mag}e{}", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `min(x_1+x_2, x_1, 0)`, `x_1` or `0` as a tropical polynomial.
pub fn parse_trop(s: &str, nvars: usize) -> Result<TropicalPolynomial> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let body = match s.strip_prefix("min(") {
        Some(b) => b.strip_suffix(')').with_context(|| format!("unbalanced {s:?}"))?,
        None => s.as_str(),
    };
    let term = |t: &str| -> Result<Vec<i64>> {
        let mut e = vec![0; nvars];
        if t == "0" {
            return Ok(e);
        }
        for x in t.split('+') {
            let i: usize = x
                .strip_prefix("x_")
                .and_then(|d| d.parse().ok())
                .with_context(|| format!("bad term {t:?}"))?;
            if i == 0 || i > nvars {
                bail!("variable x_{i} out of range");
            }
            e[i - 1] += 1;
        }
        Ok(e)
    };
    let exps = body.split(',').map(term).collect::<Result<Vec<_>>>()?;
    Ok(TropicalPolynomial::new(nvars, exps)?)
}
