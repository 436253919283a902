//! Min-plus tropicalization of the Plücker polynomials and the fan `F(k, n)`
//! on whose maximal cones all of them are linear.
//!
//! Every classical coefficient is a positive integer, so every tropical
//! coefficient is 0 and a tropical polynomial is just its exponent set.
//! Linearity domains of `min_a <a, x>` are the cones of the inner normal fan
//! of the Newton polytope.

mod initial;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::exactgeom::{common_refinement, Fan, GeomError, Polytope, RatVector};
use crate::webdiagram::{all_plucker_polys, build_web, ExponentPolynomial, VarMode, WebError};

pub use initial::{gr24_relation, init_form, pos_membership_gr24, SignedPolynomial, GR24_SUBSETS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TropError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Web(#[from] WebError),
    #[error("tropicalization needs positive coefficients")]
    NotPositive,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// `min` over a nonempty set of exponent vectors, all coefficients 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TropicalPolynomial {
    nvars: usize,
    exponents: BTreeSet<Vec<i64>>,
}

impl TropicalPolynomial {
    pub fn new(nvars: usize, exponents: impl IntoIterator<Item = Vec<i64>>) -> Result<Self, TropError> {
        let exponents: BTreeSet<Vec<i64>> = exponents.into_iter().collect();
        if exponents.is_empty() {
            return Err(TropError::ZeroPolynomial);
        }
        if let Some(e) = exponents.iter().find(|e| e.len() != nvars) {
            return Err(TropError::DimensionMismatch {
                expected: nvars,
                found: e.len(),
            });
        }
        Ok(TropicalPolynomial { nvars, exponents })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn exponents(&self) -> &BTreeSet<Vec<i64>> {
        &self.exponents
    }

    pub fn is_monomial(&self) -> bool {
        self.exponents.len() == 1
    }

    /// Exponent achieving the minimum at `x`, if it is unique.
    pub fn argmin(&self, x: &RatVector) -> Option<&Vec<i64>> {
        let vals: Vec<(BigRational, &Vec<i64>)> =
            self.exponents.iter().map(|e| (pairing(e, x), e)).collect();
        let min = vals.iter().map(|(v, _)| v).min()?.clone();
        let mut hits = vals.iter().filter(|(v, _)| *v == min);
        let first = hits.next()?.1;
        if hits.next().is_some() {
            None
        } else {
            Some(first)
        }
    }

    pub fn newton_polytope(&self) -> Result<Polytope, GeomError> {
        let pts: Vec<RatVector> = self.exponents.iter().map(|e| RatVector::from_ints(e)).collect();
        Polytope::convex_hull(&pts)
    }
}

fn pairing(e: &[i64], x: &RatVector) -> BigRational {
    e.iter()
        .zip(x.coords())
        .map(|(&a, c)| c * BigInt::from(a))
        .sum()
}

impl fmt::Display for TropicalPolynomial {
    /// Largest exponent first: `min(x_1+x_2, x_1, 0)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |e: &Vec<i64>| -> String {
            let mut s = String::new();
            for (v, &a) in e.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if a < 0 {
                    s.push('-');
                } else if !s.is_empty() {
                    s.push('+');
                }
                if a.abs() != 1 {
                    s.push_str(&a.abs().to_string());
                }
                s.push_str(&format!("x_{}", v + 1));
            }
            if s.is_empty() {
                s.push('0');
            }
            s
        };
        let terms: Vec<String> = self.exponents.iter().rev().map(term).collect();
        if terms.len() == 1 {
            write!(f, "{}", terms[0])
        } else {
            write!(f, "min({})", terms.join(", "))
        }
    }
}

/// Exponent set of a polynomial with positive coefficients.
pub fn tropicalize(p: &ExponentPolynomial) -> Result<TropicalPolynomial, TropError> {
    if p.is_zero() {
        return Err(TropError::ZeroPolynomial);
    }
    if !p.all_positive() {
        return Err(TropError::NotPositive);
    }
    TropicalPolynomial::new(
        p.nvars(),
        p.exponents().map(|e| e.iter().map(|&a| i64::from(a)).collect()),
    )
}

pub fn trop_eval(t: &TropicalPolynomial, x: &RatVector) -> Result<BigRational, TropError> {
    if x.dim() != t.nvars {
        return Err(TropError::DimensionMismatch {
            expected: t.nvars,
            found: x.dim(),
        });
    }
    Ok(t.exponents
        .iter()
        .map(|e| pairing(e, x))
        .min()
        .expect("nonempty"))
}

/// Domains of linearity: the inner normal fan of the Newton polytope.
pub fn linearity_fan(t: &TropicalPolynomial) -> Result<Fan, GeomError> {
    if t.is_monomial() {
        return Ok(Fan::trivial(t.nvars));
    }
    t.newton_polytope()?.inner_normal_fan()
}

/// How the linearity fans are combined into `F(k, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Fold of pairwise common refinements.
    Refinement,
    /// Inner normal fan of the Minkowski sum of the Newton polytopes.
    Minkowski,
}

/// `(k - 1)(n - k - 1)`, or `None` when `k`, `n` are out of range.
pub fn fan_dimension(k: usize, n: usize) -> Option<usize> {
    (k >= 1 && k < n).then(|| (k - 1) * (n - k - 1))
}

/// Trop of the inner-only Plücker polynomial of every `k`-subset.
pub fn trop_plucker_polys(k: usize, n: usize) -> Result<BTreeMap<Vec<usize>, TropicalPolynomial>, TropError> {
    let w = build_web(k, n)?;
    all_plucker_polys(&w, VarMode::InnerOnly)
        .into_iter()
        .map(|(s, p)| Ok((s, tropicalize(&p)?)))
        .collect()
}

/// The distinct non-monomial tropical Plücker polynomials; the monomials
/// have trivial linearity fans.
pub fn nontrivial_trop_polys(k: usize, n: usize) -> Result<Vec<TropicalPolynomial>, TropError> {
    let set: BTreeSet<TropicalPolynomial> = trop_plucker_polys(k, n)?
        .into_values()
        .filter(|t| !t.is_monomial())
        .collect();
    Ok(set.into_iter().collect())
}

/// Common refinement of the linearity fans of `polys` (the trivial fan if
/// there are none).
pub fn refine_all(nvars: usize, polys: &[TropicalPolynomial], route: Route) -> Result<Fan, GeomError> {
    use rayon::prelude::*;
    match route {
        Route::Refinement => {
            let fans: Vec<Fan> = polys
                .par_iter()
                .map(linearity_fan)
                .collect::<Result<_, _>>()?;
            let mut acc = Fan::trivial(nvars);
            for f in &fans {
                acc = common_refinement(&acc, f)?;
            }
            Ok(acc)
        }
        Route::Minkowski => {
            if polys.is_empty() {
                return Ok(Fan::trivial(nvars));
            }
            let tops: Vec<Polytope> = polys
                .par_iter()
                .map(TropicalPolynomial::newton_polytope)
                .collect::<Result<_, _>>()?;
            let mut acc = tops[0].clone();
            for p in &tops[1..] {
                acc = acc.minkowski_sum(p)?;
            }
            acc.inner_normal_fan()
        }
    }
}

/// The fan `F(k, n)` in `R^{(k-1)(n-k-1)}`. When that dimension is 0 the
/// trivial fan of `R^0` is returned.
pub fn build_fan(k: usize, n: usize) -> Result<Fan, TropError> {
    build_fan_with(k, n, Route::Refinement)
}

pub fn build_fan_with(k: usize, n: usize, route: Route) -> Result<Fan, TropError> {
    let d = fan_dimension(k, n).ok_or(WebError::OutOfRange { k, n })?;
    if d == 0 {
        return Ok(Fan::trivial(0));
    }
    let polys = nontrivial_trop_polys(k, n)?;
    Ok(refine_all(d, &polys, route)?)
}

/// Tropical weights `Trop P_K(x)` of all Plücker coordinates at an inner
/// point `x`, with outer regions fixed to 0.
pub fn trop_phi2(k: usize, n: usize, x: &RatVector) -> Result<BTreeMap<Vec<usize>, BigRational>, TropError> {
    trop_plucker_polys(k, n)?
        .into_iter()
        .map(|(s, t)| Ok((s, trop_eval(&t, x)?)))
        .collect()
}

/// True if `t` has a unique minimizing exponent on every maximal cone of
/// `fan`, the same at an interior point and at that point pushed towards
/// each ray.
pub fn linear_on_cones(fan: &Fan, t: &TropicalPolynomial) -> Result<bool, GeomError> {
    for i in 0..fan.maximal_cone_count() {
        let c = fan.cone(i)?;
        let mut p = c.interior_point();
        for l in c.lineality() {
            for (x, y) in p.iter_mut().zip(l) {
                *x += y;
            }
        }
        let Some(base) = t.argmin(&RatVector::from_ints(&p)).cloned() else {
            return Ok(false);
        };
        for r in c.rays() {
            let q: Vec<i64> = p.iter().zip(r).map(|(a, b)| 4 * a + b).collect();
            if t.argmin(&RatVector::from_ints(&q)) != Some(&base) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn tropicalize_and_print() {
        let w = build_web(2, 5).unwrap();
        let p = crate::webdiagram::plucker_poly(&w, &[2, 5], VarMode::InnerOnly).unwrap();
        let t = tropicalize(&p).unwrap();
        assert_eq!(t.to_string(), "min(x_1+x_2, x_1, 0)");
        let x = RatVector::new(vec![q(-1), q(-1)]);
        assert_eq!(trop_eval(&t, &x).unwrap(), q(-2));
        let one = tropicalize(&ExponentPolynomial::one(2)).unwrap();
        assert_eq!(one.to_string(), "0");
        let mut neg = ExponentPolynomial::one(1);
        neg.add_term(vec![1], BigInt::from(-1));
        assert_eq!(tropicalize(&neg), Err(TropError::NotPositive));
    }

    #[test]
    fn min_zero_x1() {
        let t = TropicalPolynomial::new(1, [vec![0], vec![1]]).unwrap();
        assert_eq!(trop_eval(&t, &RatVector::from_ints(&[3])).unwrap(), q(0));
        assert_eq!(trop_eval(&t, &RatVector::from_ints(&[-2])).unwrap(), q(-2));
        let f = linearity_fan(&t).unwrap();
        assert_eq!(f.rays(), &[vec![-1], vec![1]]);
        assert_eq!(f.maximal_cone_count(), 2);
        let m = TropicalPolynomial::new(2, [vec![1, 1]]).unwrap();
        assert!(linearity_fan(&m).unwrap().is_trivial());
    }

    #[test]
    fn gr25_fan() {
        let f = build_fan(2, 5).unwrap();
        assert_eq!(f.maximal_cone_count(), 5);
        assert_eq!(f.f_vector().unwrap(), vec![5, 5]);
        assert_eq!(f, build_fan_with(2, 5, Route::Minkowski).unwrap());
        for t in nontrivial_trop_polys(2, 5).unwrap() {
            assert!(linear_on_cones(&f, &t).unwrap());
        }
    }

    #[test]
    fn degenerate_dimension() {
        assert!(build_fan(1, 4).unwrap().is_trivial());
        assert!(build_fan(3, 4).unwrap().is_trivial());
        assert!(build_fan(0, 4).is_err());
    }
}
