//! Double description method for homogeneous cones.
//!
//! Given constraint rows `a_i`, computes generators of `{x : a_i . x >= 0}`:
//! a basis of the lineality space and the extreme rays of the pointed part.
//! Constraints are added one at a time. While the current cone still has
//! lines, a constraint that is not orthogonal to them is absorbed by turning
//! one line into a ray. Otherwise the usual positive/negative ray combination
//! step runs, with the combinatorial adjacency test on zero sets.

use fixedbitset::FixedBitSet;

use super::linalg::{combine, dot, is_zero, negate, IntVec};
use super::GeomError;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Generators {
    pub lines: Vec<IntVec>,
    pub rays: Vec<IntVec>,
}

struct Ray {
    v: IntVec,
    zeros: FixedBitSet,
}

pub fn double_description(dim: usize, constraints: &[IntVec]) -> Result<Generators, GeomError> {
    if let Some(bad) = constraints.iter().find(|c| c.len() != dim) {
        return Err(GeomError::DimensionMismatch {
            expected: dim,
            found: bad.len(),
        });
    }
    let m = constraints.len();
    let mut lines: Vec<IntVec> = (0..dim)
        .map(|i| {
            let mut e = vec![0; dim];
            e[i] = 1;
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (ci, a) in constraints.iter().enumerate() {
        if is_zero(a) {
            for r in &mut rays {
                r.zeros.insert(ci);
            }
            continue;
        }

        if let Some(pos) = lines.iter().position(|l| dot(a, l) != 0) {
            let mut l0 = lines.swap_remove(pos);
            if dot(a, &l0) < 0 {
                l0 = negate(&l0);
            }
            let al0 = dot(a, &l0);
            for l in &mut lines {
                let al = dot(a, l);
                if al != 0 {
                    *l = combine(al0, l, -al, &l0)?;
                }
            }
            for r in &mut rays {
                let ar = dot(a, &r.v);
                if ar != 0 {
                    r.v = combine(al0, &r.v, -ar, &l0)?;
                }
                r.zeros.insert(ci);
            }
            let mut zeros = FixedBitSet::with_capacity(m);
            zeros.insert_range(0..ci);
            rays.push(Ray { v: l0, zeros });
            continue;
        }

        let vals: Vec<i128> = rays.iter().map(|r| dot(a, &r.v)).collect();
        if vals.iter().all(|&s| s >= 0) {
            for (r, &s) in rays.iter_mut().zip(&vals) {
                if s == 0 {
                    r.zeros.insert(ci);
                }
            }
            continue;
        }

        let plus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        let pointed_dim = dim - lines.len();
        let need = pointed_dim.saturating_sub(2);

        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &plus {
            for &n in &minus {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[n].zeros);
                if common.count_ones(..) < need {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(i, r)| i != p && i != n && common.is_subset(&r.zeros));
                if blocked {
                    continue;
                }
                let v = combine(vals[p], &rays[n].v, -vals[n], &rays[p].v)?;
                common.insert(ci);
                fresh.push(Ray { v, zeros: common });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (mut r, &s) in rays.into_iter().zip(&vals) {
            if s > 0 {
                next.push(r);
            } else if s == 0 {
                r.zeros.insert(ci);
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
    }

    Ok(Generators {
        lines,
        rays: rays.into_iter().map(|r| r.v).collect(),
    })
}
