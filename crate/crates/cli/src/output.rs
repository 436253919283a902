//! Fan files and deterministic text output.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use num_rational::BigRational;
use serde_json::json;
use tpgrass::exactgeom::{Fan, FanJson};

pub fn read_fan(path: &Path) -> Result<Fan> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let doc: FanJson = serde_json::from_str(&text).with_context(|| format!("malformed fan file {}", path.display()))?;
    Fan::from_json(&doc).with_context(|| format!("inconsistent fan file {}", path.display()))
}

/// Pretty JSON with a trailing newline.
pub fn fan_json(fan: &Fan) -> Result<String> {
    Ok(serde_json::to_string_pretty(&fan.to_json()?)? + "\n")
}

pub fn write_fan(fan: &Fan, path: &Path) -> Result<()> {
    std::fs::write(path, fan_json(fan)?).with_context(|| format!("cannot write {}", path.display()))
}

fn ints(v: &[impl ToString]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// `index<TAB>coordinates`, one ray per line.
pub fn rays_tsv(fan: &Fan) -> String {
    let mut out = String::new();
    for (i, r) in fan.rays().iter().enumerate() {
        let _ = writeln!(out, "{i}\t{}", ints(r));
    }
    out
}

pub fn f_vector_line(fan: &Fan) -> Result<String> {
    Ok(ints(&fan.f_vector()?))
}

/// TSV sections for the f-vector, census, rays and maximal cones, followed
/// by a one-line JSON summary.
pub fn fan_report(fan: &Fan) -> Result<String> {
    let mut out = String::new();
    if fan.is_trivial() {
        let _ = writeln!(out, "trivial fan: one cone, all of R^{}", fan.ambient_dim());
        let summary = json!({ "ambient_dim": fan.ambient_dim(), "trivial": true });
        let _ = writeln!(out, "{summary}");
        return Ok(out);
    }
    let census = fan.facet_census();
    let _ = writeln!(out, "# fan");
    let _ = writeln!(out, "ambient_dim\t{}", fan.ambient_dim());
    let _ = writeln!(out, "lineality_dim\t{}", fan.lineality().len());
    let f = if fan.is_pointed() { Some(fan.f_vector()?) } else { None };
    if let Some(f) = &f {
        let _ = writeln!(out, "f_vector\t{}", ints(f));
    }
    let census_text: Vec<String> = census.iter().map(|(r, c)| format!("{r}:{c}")).collect();
    let _ = writeln!(out, "facet_census\t{}", census_text.join(" "));
    let _ = writeln!(out, "# rays");
    out.push_str(&rays_tsv(fan));
    let _ = writeln!(out, "# maximal cones");
    for (i, c) in fan.maximal_cones().iter().enumerate() {
        let _ = writeln!(out, "{i}\t{}", ints(c));
    }
    let summary = json!({
        "ambient_dim": fan.ambient_dim(),
        "lineality_dim": fan.lineality().len(),
        "rays": fan.rays().len(),
        "maximal_cones": fan.maximal_cone_count(),
        "f_vector": f,
        "facet_census": census,
        "simplicial": fan.is_simplicial(),
    });
    let _ = writeln!(out, "# summary");
    let _ = writeln!(out, "{summary}");
    Ok(out)
}

/// Comma-separated rationals such as `1,2,3/2`.
pub fn parse_rationals(s: &str) -> Result<Vec<BigRational>> {
    let v = s
        .split(',')
        .map(|t| BigRational::from_str(t.trim()).with_context(|| format!("bad rational {t:?}")))
        .collect::<Result<Vec<_>>>()?;
    if v.is_empty() {
        bail!("no values given");
    }
    Ok(v)
}
