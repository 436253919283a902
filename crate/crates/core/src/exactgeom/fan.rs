use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cone::Cone;
use super::linalg::{dot, negate, rank, IntVec};
use super::GeomError;

/// Polyhedral fan stored through its maximal cones.
///
/// All cones share one lineality space. Rays are taken orthogonal to it,
/// primitive, and sorted lexicographically; each maximal cone is a sorted set
/// of ray indices, and the cones themselves are sorted. Two fans built from
/// the same cones therefore compare equal regardless of construction order.
#[derive(Debug, Clone)]
pub struct Fan {
    ambient: usize,
    lineality: Vec<IntVec>,
    rays: Vec<IntVec>,
    cones: Vec<Vec<usize>>,
    cone_facets: Vec<Vec<IntVec>>,
    complete: bool,
    faces: OnceLock<Result<Vec<Vec<Vec<usize>>>, GeomError>>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.lineality == other.lineality
            && self.rays == other.rays
            && self.cones == other.cones
    }
}
impl Eq for Fan {}

impl Fan {
    /// Builds the canonical fan from its maximal cones. The cones must share
    /// one lineality space; `complete` records whether the caller knows the
    /// support to be the whole space.
    pub fn from_maximal_cones(
        ambient: usize,
        cones: Vec<Cone>,
        complete: bool,
    ) -> Result<Fan, GeomError> {
        let Some(first) = cones.first() else {
            return Err(GeomError::Empty);
        };
        let lineality = first.lineality().to_vec();
        for c in &cones {
            if c.ambient() != ambient {
                return Err(GeomError::DimensionMismatch {
                    expected: ambient,
                    found: c.ambient(),
                });
            }
            if c.lineality() != lineality.as_slice() {
                return Err(GeomError::Inconsistent(
                    "maximal cones with different lineality spaces".into(),
                ));
            }
        }
        let ray_set: BTreeSet<&IntVec> = cones.iter().flat_map(|c| c.rays()).collect();
        let rays: Vec<IntVec> = ray_set.into_iter().cloned().collect();
        let index: HashMap<&IntVec, usize> = rays.iter().enumerate().map(|(i, r)| (r, i)).collect();

        let mut entries: Vec<(Vec<usize>, Vec<IntVec>)> = cones
            .iter()
            .map(|c| {
                let mut idx: Vec<usize> = c.rays().iter().map(|r| index[r]).collect();
                idx.sort_unstable();
                (idx, c.facets().to_vec())
            })
            .collect();
        entries.sort();
        entries.dedup_by(|a, b| a.0 == b.0);
        let (cones, cone_facets) = entries.into_iter().unzip();

        Ok(Fan {
            ambient,
            lineality,
            rays,
            cones,
            cone_facets,
            complete,
            faces: OnceLock::new(),
        })
    }

    /// The fan with the single cone `R^ambient`.
    pub fn trivial(ambient: usize) -> Fan {
        Fan::from_maximal_cones(ambient, vec![Cone::full_space(ambient)], true)
            .expect("full space is a valid fan")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }
    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }
    pub fn maximal_cones(&self) -> &[Vec<usize>] {
        &self.cones
    }
    pub fn maximal_cone_count(&self) -> usize {
        self.cones.len()
    }
    pub fn is_complete(&self) -> bool {
        self.complete
    }
    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }
    pub fn is_trivial(&self) -> bool {
        self.cones.len() == 1 && self.rays.is_empty()
    }

    /// Facet normals (`a . x >= 0`) of the `i`-th maximal cone.
    pub fn cone_facets(&self, i: usize) -> &[IntVec] {
        &self.cone_facets[i]
    }

    /// The `i`-th maximal cone as a standalone [`Cone`].
    pub fn cone(&self, i: usize) -> Result<Cone, GeomError> {
        let rays: Vec<IntVec> = self.cones[i].iter().map(|&r| self.rays[r].clone()).collect();
        Cone::from_generators(self.ambient, &rays, &self.lineality)
    }

    pub fn ray_vectors(&self, idx: &[usize]) -> Vec<IntVec> {
        idx.iter().map(|&i| self.rays[i].clone()).collect()
    }

    fn contains_in_cone(&self, i: usize, x: &[i64]) -> bool {
        self.cone_facets[i].iter().all(|a| dot(a, x) >= 0)
    }

    /// Indices of the maximal cones containing `x`.
    pub fn locate(&self, x: &[i64]) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&i| self.contains_in_cone(i, x))
            .collect()
    }

    /// Indices of the maximal cones containing `x` in their interior.
    pub fn locate_interior(&self, x: &[i64]) -> Vec<usize> {
        (0..self.cones.len())
            .filter(|&i| self.cone_facets[i].iter().all(|a| dot(a, x) > 0))
            .collect()
    }

    fn cone_facet_ray_sets(&self, i: usize) -> Vec<Vec<usize>> {
        self.cone_facets[i]
            .iter()
            .map(|a| {
                self.cones[i]
                    .iter()
                    .copied()
                    .filter(|&r| dot(a, &self.rays[r]) == 0)
                    .collect()
            })
            .collect()
    }

    fn face_dim(&self, idx: &[usize]) -> Result<usize, GeomError> {
        Ok(self.lineality.len() + rank(idx.iter().map(|&i| self.rays[i].as_slice()))?)
    }

    /// All cones of the fan, grouped by dimension (`result[d]` holds the
    /// `d`-dimensional cones as sorted ray index sets). Faces are found by
    /// closing the facet ray sets of each maximal cone under intersection.
    pub fn faces_by_dim(&self) -> Result<&Vec<Vec<Vec<usize>>>, GeomError> {
        self.faces
            .get_or_init(|| self.compute_faces())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn compute_faces(&self) -> Result<Vec<Vec<Vec<usize>>>, GeomError> {
        let per_cone: Vec<Vec<Vec<usize>>> = (0..self.cones.len())
            .into_par_iter()
            .map(|i| {
                let facet_sets = self.cone_facet_ray_sets(i);
                let mut seen: HashSet<Vec<usize>> = HashSet::new();
                seen.insert(self.cones[i].clone());
                let mut stack = vec![self.cones[i].clone()];
                while let Some(f) = stack.pop() {
                    for s in &facet_sets {
                        let g: Vec<usize> = f.iter().copied().filter(|r| s.contains(r)).collect();
                        if g.len() < f.len() && seen.insert(g.clone()) {
                            stack.push(g);
                        }
                    }
                }
                seen.into_iter().collect()
            })
            .collect();
        let all: BTreeSet<Vec<usize>> = per_cone.into_iter().flatten().collect();
        let mut by_dim = vec![Vec::new(); self.ambient + 1];
        for f in all {
            let d = self.face_dim(&f)?;
            by_dim[d].push(f);
        }
        Ok(by_dim)
    }

    /// Number of cones of each dimension `1..=ambient`. The zero cone is not
    /// counted. Requires a pointed fan.
    pub fn f_vector(&self) -> Result<Vec<usize>, GeomError> {
        if !self.is_pointed() {
            return Err(GeomError::NotPointed);
        }
        let faces = self.faces_by_dim()?;
        Ok(faces[1..].iter().map(Vec::len).collect())
    }

    /// Histogram: number of rays of a maximal cone -> number of such cones.
    pub fn facet_census(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for c in &self.cones {
            *h.entry(c.len()).or_insert(0) += 1;
        }
        h
    }

    /// Ray sets of the maximal cones that are not simplicial, as vectors.
    pub fn nonsimplicial_cones(&self) -> Vec<Vec<IntVec>> {
        let pointed_dim = self.ambient - self.lineality.len();
        self.cones
            .iter()
            .filter(|c| c.len() > pointed_dim)
            .map(|c| self.ray_vectors(c))
            .collect()
    }

    pub fn is_simplicial(&self) -> bool {
        self.nonsimplicial_cones().is_empty()
    }

    /// Certifies completeness: all maximal cones are full-dimensional, every
    /// facet of a maximal cone is shared by exactly two maximal cones, and
    /// `samples` pseudo-random points each lie in some maximal cone and in
    /// the interior of at most one.
    pub fn certify_complete(&self, samples: usize, seed: u64) -> Result<(), GeomError> {
        if self.is_trivial() {
            return Ok(());
        }
        let mut count: HashMap<Vec<usize>, usize> = HashMap::new();
        for i in 0..self.cones.len() {
            if self.face_dim(&self.cones[i])? != self.ambient {
                return Err(GeomError::Incomplete("maximal cone of low dimension".into()));
            }
            for s in self.cone_facet_ray_sets(i) {
                *count.entry(s).or_insert(0) += 1;
            }
        }
        if let Some((f, c)) = count.iter().find(|(_, &c)| c != 2) {
            return Err(GeomError::Incomplete(format!(
                "facet with rays {f:?} lies in {c} maximal cones"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let x: IntVec = (0..self.ambient).map(|_| rng.gen_range(-1000..=1000)).collect();
            if self.locate(&x).is_empty() {
                return Err(GeomError::Incomplete(format!("point {x:?} is not covered")));
            }
            if self.locate_interior(&x).len() > 1 {
                return Err(GeomError::Inconsistent(format!(
                    "point {x:?} is interior to two maximal cones"
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn mark_complete(mut self) -> Fan {
        self.complete = true;
        self
    }

    /// Image of the fan under the coordinate map `x -> M x`, where `M` is a
    /// signed permutation given as `perm[i] = (j, s)`: output coordinate `i`
    /// is `s * x_j`.
    pub fn apply_signed_permutation(&self, perm: &[(usize, i64)]) -> Result<Fan, GeomError> {
        let map = |v: &IntVec| -> IntVec { perm.iter().map(|&(j, s)| s * v[j]).collect() };
        let lineality: Vec<IntVec> = self.lineality.iter().map(map).collect();
        let cones: Vec<Cone> = self
            .cones
            .iter()
            .map(|c| {
                let rays: Vec<IntVec> = c.iter().map(|&r| map(&self.rays[r])).collect();
                Cone::from_generators(self.ambient, &rays, &lineality)
            })
            .collect::<Result<_, _>>()?;
        Fan::from_maximal_cones(self.ambient, cones, self.complete)
    }

    pub fn to_json(&self) -> Result<FanJson, GeomError> {
        let faces = self.faces_by_dim()?;
        let cones_by_dim = faces
            .iter()
            .enumerate()
            .filter(|(d, f)| *d >= 1 && !f.is_empty())
            .map(|(d, f)| (d, f.clone()))
            .collect();
        Ok(FanJson {
            ambient_dim: self.ambient,
            lineality: self.lineality.clone(),
            rays: self.rays.clone(),
            cones_by_dim,
        })
    }

    /// Rebuilds a fan from its serialized maximal cones and certifies its
    /// completeness.
    pub fn from_json(doc: &FanJson) -> Result<Fan, GeomError> {
        let d = doc.ambient_dim;
        for r in doc.rays.iter().chain(&doc.lineality) {
            if r.len() != d {
                return Err(GeomError::DimensionMismatch {
                    expected: d,
                    found: r.len(),
                });
            }
        }
        let top: Vec<Vec<usize>> = match doc.cones_by_dim.get(&d) {
            Some(c) => c.clone(),
            None if doc.rays.is_empty() => {
                let c = Cone::from_generators(d, &[], &doc.lineality)?;
                let fan = Fan::from_maximal_cones(d, vec![c], false)?;
                return match fan.certify_complete(64, 0) {
                    Ok(()) => Ok(fan.mark_complete()),
                    Err(_) => Ok(fan),
                };
            }
            None => return Err(GeomError::Malformed("no maximal cones".into())),
        };
        let mut cones = Vec::with_capacity(top.len());
        for c in &top {
            let mut rays = Vec::with_capacity(c.len());
            for &i in c {
                rays.push(
                    doc.rays
                        .get(i)
                        .cloned()
                        .ok_or_else(|| GeomError::Malformed(format!("ray index {i} out of range")))?,
                );
            }
            cones.push(Cone::from_generators(d, &rays, &doc.lineality)?);
        }
        let fan = Fan::from_maximal_cones(d, cones, false)?;
        match fan.certify_complete(256, 0) {
            Ok(()) => Ok(fan.mark_complete()),
            Err(_) => Ok(fan),
        }
    }
}

/// Serialized form: `{ambient_dim, rays, cones_by_dim}`, plus `lineality`
/// when the fan is not pointed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    pub ambient_dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lineality: Vec<IntVec>,
    pub rays: Vec<IntVec>,
    pub cones_by_dim: BTreeMap<usize, Vec<Vec<usize>>>,
}

/// Common refinement of two complete fans: all full-dimensional
/// intersections of a maximal cone of `f` with one of `g`.
pub fn common_refinement(f: &Fan, g: &Fan) -> Result<Fan, GeomError> {
    if f.ambient != g.ambient {
        return Err(GeomError::DimensionMismatch {
            expected: f.ambient,
            found: g.ambient,
        });
    }
    if !f.complete || !g.complete {
        return Err(GeomError::Incomplete("refinement needs complete fans".into()));
    }
    if g.is_trivial() {
        return Ok(f.clone());
    }
    if f.is_trivial() {
        return Ok(g.clone());
    }
    let d = f.ambient;
    let pieces: Vec<Vec<Cone>> = (0..f.cones.len())
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in 0..g.cones.len() {
                if !may_meet(f, i, g, j) {
                    continue;
                }
                let mut h = f.cone_facets[i].clone();
                h.extend(g.cone_facets[j].iter().cloned());
                if let Some(c) = Cone::full_from_inequalities(d, &h)? {
                    out.push(c);
                }
            }
            Ok(out)
        })
        .collect::<Result<_, GeomError>>()?;
    let cones: Vec<Cone> = pieces.into_iter().flatten().collect();
    Fan::from_maximal_cones(d, cones, true)
}

/// Cheap necessary condition for two full-dimensional cones to have a
/// full-dimensional intersection: no facet of one has the other (rays and
/// lineality) entirely on its closed negative side.
fn may_meet(f: &Fan, i: usize, g: &Fan, j: usize) -> bool {
    let separated = |a: &IntVec, fan: &Fan, k: usize| {
        fan.cones[k].iter().all(|&r| dot(a, &fan.rays[r]) <= 0)
            && fan.lineality.iter().all(|l| dot(a, l) == 0)
    };
    !f.cone_facets[i].iter().any(|a| separated(a, g, j))
        && !g.cone_facets[j].iter().any(|a| separated(a, f, i))
}

/// For every maximal cone of `coarse`, the maximal cones of `fine` inside it.
/// Errors if some cone of `fine` is not contained in exactly one cone of
/// `coarse`.
pub fn containment_map(coarse: &Fan, fine: &Fan) -> Result<Vec<Vec<usize>>, GeomError> {
    let mut children = vec![Vec::new(); coarse.cones.len()];
    for (j, c) in fine.cones.iter().enumerate() {
        let pts: Vec<&IntVec> = c.iter().map(|&r| &fine.rays[r]).collect();
        let parents: Vec<usize> = (0..coarse.cones.len())
            .filter(|&i| {
                pts.iter()
                    .all(|p| coarse.cone_facets[i].iter().all(|a| dot(a, p) >= 0))
                    && fine.lineality.iter().all(|l| {
                        coarse.cone_facets[i]
                            .iter()
                            .all(|a| dot(a, l) >= 0 && dot(a, &negate(l)) >= 0)
                    })
            })
            .collect();
        if parents.len() != 1 {
            return Err(GeomError::NotARefinement(format!(
                "cone {j} of the finer fan lies in {} cones of the coarser fan",
                parents.len()
            )));
        }
        children[parents[0]].push(j);
    }
    Ok(children)
}
