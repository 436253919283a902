use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cone::Cone;
use super::dd::double_description;
use super::fan::Fan;
use super::linalg::{canonical_basis, dot, primitive, rank, IntVec, Projector};
use super::{GeomError, RatVector};

/// Affine inequality `normal . x >= offset` (or equality, for equations).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Facet {
    pub normal: IntVec,
    pub offset: BigRational,
}

impl Facet {
    fn value(&self, x: &RatVector) -> BigRational {
        let s: BigRational = self
            .normal
            .iter()
            .zip(x.coords())
            .map(|(&a, c)| c * BigInt::from(a))
            .sum();
        s - &self.offset
    }
}

/// Convex polytope with exact V- and H-representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    ambient: usize,
    dim: usize,
    vertices: Vec<RatVector>,
    facets: Vec<Facet>,
    equations: Vec<Facet>,
}

fn homogenize(p: &RatVector) -> Result<IntVec, GeomError> {
    let lcm = p.coords().iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let mut wide: Vec<i128> = Vec::with_capacity(p.dim() + 1);
    let to_i128 = |b: BigInt| -> Result<i128, GeomError> {
        i128::try_from(b).map_err(|_| GeomError::Overflow)
    };
    wide.push(to_i128(lcm.clone())?);
    for x in p.coords() {
        wide.push(to_i128((x * &lcm).to_integer())?);
    }
    primitive(&wide)
}

fn affine_from_homogeneous(h: &[i64]) -> Facet {
    Facet {
        normal: h[1..].to_vec(),
        offset: BigRational::from_integer(BigInt::from(-h[0])),
    }
}

impl Polytope {
    /// Convex hull of a finite point set.
    pub fn convex_hull(points: &[RatVector]) -> Result<Polytope, GeomError> {
        let Some(first) = points.first() else {
            return Err(GeomError::Empty);
        };
        let ambient = first.dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != ambient) {
            return Err(GeomError::DimensionMismatch {
                expected: ambient,
                found: bad.dim(),
            });
        }
        let distinct: BTreeSet<&RatVector> = points.iter().collect();
        let distinct: Vec<&RatVector> = distinct.into_iter().collect();
        let hom: Vec<IntVec> = distinct
            .iter()
            .map(|p| homogenize(p))
            .collect::<Result<_, _>>()?;

        let gens = double_description(ambient + 1, &hom)?;
        let eq_hom = canonical_basis(&gens.lines)?;
        let proj = Projector::new(&eq_hom);
        let eq_normals: Vec<IntVec> = eq_hom.iter().map(|h| h[1..].to_vec()).collect();
        let eq_rank = rank(eq_normals.iter().map(Vec::as_slice))?;

        let mut facet_hom: Vec<IntVec> = Vec::new();
        for r in &gens.rays {
            let r = proj.reject(r)?;
            let mut with = eq_normals.clone();
            with.push(r[1..].to_vec());
            // the trivial inequality 1 >= 0 shows up for a single point
            if rank(with.iter().map(Vec::as_slice))? == eq_rank {
                continue;
            }
            facet_hom.push(r);
        }
        facet_hom.sort();
        facet_hom.dedup();

        let mut vertices = Vec::new();
        for (p, h) in distinct.iter().zip(&hom) {
            let mut tight = eq_normals.clone();
            tight.extend(
                facet_hom
                    .iter()
                    .filter(|f| dot(f, h) == 0)
                    .map(|f| f[1..].to_vec()),
            );
            if rank(tight.iter().map(Vec::as_slice))? == ambient {
                vertices.push((*p).clone());
            }
        }

        Ok(Polytope {
            ambient,
            dim: ambient - eq_rank,
            vertices,
            facets: facet_hom.iter().map(|h| affine_from_homogeneous(h)).collect(),
            equations: eq_hom.iter().map(|h| affine_from_homogeneous(h)).collect(),
        })
    }

    /// Polytope given by inequalities `normal . x >= offset` and equations.
    /// Fails if the region is empty or unbounded.
    pub fn from_inequalities(
        ambient: usize,
        facets: &[Facet],
        equations: &[Facet],
    ) -> Result<Polytope, GeomError> {
        let hom = |f: &Facet| -> Result<IntVec, GeomError> {
            let den = f.offset.denom().clone();
            let to_i128 = |b: BigInt| i128::try_from(b).map_err(|_| GeomError::Overflow);
            let mut wide = vec![to_i128(-f.offset.numer().clone())?];
            for &a in &f.normal {
                wide.push(to_i128(&den * BigInt::from(a))?);
            }
            primitive(&wide)
        };
        let mut rows = Vec::new();
        let mut x0 = vec![0; ambient + 1];
        x0[0] = 1;
        rows.push(x0);
        for f in facets {
            rows.push(hom(f)?);
        }
        for e in equations {
            let h = hom(e)?;
            rows.push(h.iter().map(|x| -x).collect());
            rows.push(h);
        }
        let gens = double_description(ambient + 1, &rows)?;
        if !gens.lines.is_empty() {
            return Err(GeomError::Unbounded);
        }
        let mut pts = Vec::new();
        for r in &gens.rays {
            if r[0] == 0 {
                return Err(GeomError::Unbounded);
            }
            let d = BigInt::from(r[0]);
            pts.push(RatVector::new(
                r[1..]
                    .iter()
                    .map(|&x| BigRational::new(BigInt::from(x), d.clone()))
                    .collect(),
            ));
        }
        if pts.is_empty() {
            return Err(GeomError::Empty);
        }
        Polytope::convex_hull(&pts)
    }

    /// Minkowski sum, as the hull of all pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope, GeomError> {
        if self.ambient != other.ambient {
            return Err(GeomError::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let mut sums = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for v in &self.vertices {
            for w in &other.vertices {
                sums.push(v.add(w));
            }
        }
        Polytope::convex_hull(&sums)
    }

    /// Inner normal fan: one maximal cone per vertex, the set of linear
    /// functionals minimized there.
    pub fn inner_normal_fan(&self) -> Result<Fan, GeomError> {
        let lines: Vec<IntVec> = self.equations.iter().map(|e| e.normal.clone()).collect();
        let mut cones = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let rays: Vec<IntVec> = self
                .facets
                .iter()
                .filter(|f| f.value(v).is_zero())
                .map(|f| f.normal.clone())
                .collect();
            cones.push(Cone::from_generators(self.ambient, &rays, &lines)?);
        }
        Fan::from_maximal_cones(self.ambient, cones, true)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn vertices(&self) -> &[RatVector] {
        &self.vertices
    }
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }
    pub fn equations(&self) -> &[Facet] {
        &self.equations
    }

    /// Checks the V/H consistency invariants: every vertex satisfies every
    /// inequality and equation, and each vertex is tight on enough facets to
    /// be pinned down.
    pub fn check_invariants(&self) -> Result<(), GeomError> {
        for v in &self.vertices {
            if self.equations.iter().any(|e| !e.value(v).is_zero()) {
                return Err(GeomError::Inconsistent("vertex off an equation".into()));
            }
            if self.facets.iter().any(|f| f.value(v).is_negative()) {
                return Err(GeomError::Inconsistent("vertex violates a facet".into()));
            }
            let tight = self.facets.iter().filter(|f| f.value(v).is_zero()).count();
            if tight < self.dim {
                return Err(GeomError::Inconsistent("vertex tight on too few facets".into()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<RatVector> {
        v.iter().map(|p| RatVector::from_ints(p)).collect()
    }

    #[test]
    fn square_drops_center() {
        let mut p = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        p.push(RatVector::new(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new(1.into(), 2.into()),
        ]));
        let q = Polytope::convex_hull(&p).unwrap();
        assert_eq!(q.vertices().len(), 4);
        assert_eq!(q.facets().len(), 4);
        assert_eq!(q.dim(), 2);
        q.check_invariants().unwrap();
    }

    #[test]
    fn single_point() {
        let q = Polytope::convex_hull(&pts(&[&[3, -1]])).unwrap();
        assert_eq!(q.dim(), 0);
        assert_eq!(q.vertices().len(), 1);
        assert!(q.facets().is_empty());
        assert_eq!(q.equations().len(), 2);
    }

    #[test]
    fn dimension_mismatch() {
        let e = Polytope::convex_hull(&pts(&[&[0, 0], &[1]])).unwrap_err();
        assert!(matches!(e, GeomError::DimensionMismatch { .. }));
        assert!(matches!(Polytope::convex_hull(&[]), Err(GeomError::Empty)));
    }

    #[test]
    fn segments_sum_to_square() {
        let a = Polytope::convex_hull(&pts(&[&[0, 0], &[1, 0]])).unwrap();
        let b = Polytope::convex_hull(&pts(&[&[0, 0], &[0, 1]])).unwrap();
        let s = a.minkowski_sum(&b).unwrap();
        let sq = Polytope::convex_hull(&pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(s, sq);
        let origin = Polytope::convex_hull(&pts(&[&[0, 0]])).unwrap();
        assert_eq!(sq.minkowski_sum(&origin).unwrap(), sq);
    }

    #[test]
    fn round_trip_v_h_v() {
        let q = Polytope::convex_hull(&pts(&[&[0, 0, 0], &[2, 0, 1], &[0, 3, 0], &[1, 1, 4], &[1, 1, 1]]))
            .unwrap();
        let back = Polytope::from_inequalities(3, q.facets(), q.equations()).unwrap();
        assert_eq!(back.vertices(), q.vertices());
    }

    #[test]
    fn segment_normal_fan_is_two_halfplanes() {
        let seg = Polytope::convex_hull(&pts(&[&[0, 0], &[1, 0]])).unwrap();
        let fan = seg.inner_normal_fan().unwrap();
        assert_eq!(fan.maximal_cone_count(), 2);
        assert_eq!(fan.lineality(), &[vec![0, 1]]);
        assert_eq!(fan.rays(), &[vec![-1, 0], vec![1, 0]]);
    }
}
