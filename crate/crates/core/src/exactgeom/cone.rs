use super::dd::{double_description, Generators};
use super::linalg::{
    canonical_basis, dot, is_zero, negate, orthogonal_complement, primitive_i64, rank, IntVec,
    Projector,
};
use super::GeomError;

/// Polyhedral cone with both descriptions in canonical form.
///
/// Rays are primitive integer vectors orthogonal to the lineality space;
/// facet normals are primitive and lie in the linear span of the cone. Both
/// lists are sorted, so two cones are equal iff they are the same set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    ambient: usize,
    rays: Vec<IntVec>,
    lineality: Vec<IntVec>,
    facets: Vec<IntVec>,
    equations: Vec<IntVec>,
    dim: usize,
}

impl Cone {
    /// The cone `{x : a . x >= 0 for every a in ineqs}`.
    pub fn from_inequalities(ambient: usize, ineqs: &[IntVec]) -> Result<Cone, GeomError> {
        let gens = double_description(ambient, ineqs)?;
        Self::assemble(ambient, ineqs, gens)
    }

    /// Like [`Cone::from_inequalities`] but returns `None` without further
    /// canonicalization when the cone is not full-dimensional.
    pub fn full_from_inequalities(
        ambient: usize,
        ineqs: &[IntVec],
    ) -> Result<Option<Cone>, GeomError> {
        let gens = double_description(ambient, ineqs)?;
        let d = gens.lines.len() + rank(gens.rays.iter().map(Vec::as_slice))?;
        if d < ambient {
            return Ok(None);
        }
        Self::assemble(ambient, ineqs, gens).map(Some)
    }

    /// The cone generated by `rays` plus the linear span of `lines`.
    pub fn from_generators(
        ambient: usize,
        rays: &[IntVec],
        lines: &[IntVec],
    ) -> Result<Cone, GeomError> {
        let mut dual_rows: Vec<IntVec> = Vec::with_capacity(rays.len() + 2 * lines.len());
        dual_rows.extend(rays.iter().cloned());
        for l in lines {
            dual_rows.push(l.clone());
            dual_rows.push(negate(l));
        }
        let dual = double_description(ambient, &dual_rows)?;
        let mut ineqs = dual.rays;
        for e in &dual.lines {
            ineqs.push(e.clone());
            ineqs.push(negate(e));
        }
        Self::from_inequalities(ambient, &ineqs)
    }

    /// The whole space.
    pub fn full_space(ambient: usize) -> Cone {
        let lineality = (0..ambient)
            .map(|i| {
                let mut e = vec![0; ambient];
                e[i] = 1;
                e
            })
            .collect();
        Cone {
            ambient,
            rays: Vec::new(),
            lineality,
            facets: Vec::new(),
            equations: Vec::new(),
            dim: ambient,
        }
    }

    fn assemble(ambient: usize, ineqs: &[IntVec], gens: Generators) -> Result<Cone, GeomError> {
        let lineality = canonical_basis(&gens.lines)?;
        let lin_proj = Projector::new(&lineality);
        let mut rays: Vec<IntVec> = gens
            .rays
            .iter()
            .map(|r| lin_proj.reject(r))
            .collect::<Result<_, _>>()?;
        rays.retain(|r| !is_zero(r));
        rays.sort();
        rays.dedup();

        let dim = lineality.len() + rank(rays.iter().map(Vec::as_slice))?;
        let mut spanning: Vec<IntVec> = rays.clone();
        spanning.extend(lineality.iter().cloned());
        let equations = if dim == ambient {
            Vec::new()
        } else {
            orthogonal_complement(ambient, &spanning)?
        };
        let span_proj = if dim == ambient || dim == 0 {
            None
        } else {
            Some(Projector::new(&canonical_basis(&spanning)?))
        };

        let mut facets: Vec<IntVec> = Vec::new();
        if dim > lineality.len() {
            for a in ineqs {
                if is_zero(a) {
                    continue;
                }
                let tight: Vec<&[i64]> = rays
                    .iter()
                    .filter(|r| dot(a, r) == 0)
                    .map(Vec::as_slice)
                    .collect();
                if tight.len() == rays.len() {
                    continue;
                }
                if lineality.len() + rank(tight)? + 1 != dim {
                    continue;
                }
                let normal = match &span_proj {
                    Some(p) => p.keep(a)?,
                    None => primitive_i64(a)?,
                };
                facets.push(normal);
            }
        }
        facets.sort();
        facets.dedup();

        Ok(Cone {
            ambient,
            rays,
            lineality,
            facets,
            equations,
            dim,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }
    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }
    pub fn facets(&self) -> &[IntVec] {
        &self.facets
    }
    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }
    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }
    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient
    }
    pub fn is_simplicial(&self) -> bool {
        self.rays.len() + self.lineality.len() == self.dim
    }

    /// All inequalities `a . x >= 0` describing the cone, equations included
    /// as opposite pairs.
    pub fn halfspaces(&self) -> Vec<IntVec> {
        let mut out = self.facets.clone();
        for e in &self.equations {
            out.push(e.clone());
            out.push(negate(e));
        }
        out
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|a| dot(a, x) >= 0) && self.equations.iter().all(|e| dot(e, x) == 0)
    }

    /// Strictly inside every facet (relative interior).
    pub fn contains_in_relative_interior(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|a| dot(a, x) > 0) && self.equations.iter().all(|e| dot(e, x) == 0)
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
            && other
                .lineality
                .iter()
                .all(|l| self.contains(l) && self.contains(&negate(l)))
    }

    /// Sum of the rays: a point in the relative interior (modulo lineality).
    pub fn interior_point(&self) -> IntVec {
        let mut p = vec![0i64; self.ambient];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone, GeomError> {
        let mut h = self.halfspaces();
        h.extend(other.halfspaces());
        Cone::from_inequalities(self.ambient, &h)
    }
}
