//! The region parameterization of the totally positive Grassmannian, its
//! inverse, and the torus action.
//!
//! Plücker vectors are stored normalized so that `Δ_[k] = 1`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::webdiagram::{
    all_plucker_polys, build_web, k_subsets, ExponentPolynomial, VarMode, WebDiagram, WebError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error(transparent)]
    Web(#[from] WebError),
    #[error("values must be strictly positive")]
    NonPositive,
    #[error("expected {expected} values, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("missing Plücker coordinate {0:?}")]
    Missing(Vec<usize>),
    #[error("Plücker vector is for Gr({0},{1}), expected Gr({2},{3})")]
    Shape(usize, usize, usize, usize),
    #[error("no torus element maps one vector to the other")]
    NotInOrbit,
}

/// Positive Plücker coordinates of a point of `Gr(k, n)`, keyed by sorted
/// `k`-subsets of `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlueckerVector {
    k: usize,
    n: usize,
    entries: BTreeMap<Vec<usize>, BigRational>,
}

impl PlueckerVector {
    /// Checks positivity and completeness, then divides by `Δ_[k]`.
    pub fn new(
        k: usize,
        n: usize,
        entries: BTreeMap<Vec<usize>, BigRational>,
    ) -> Result<Self, ParamError> {
        for s in k_subsets(n, k) {
            match entries.get(&s) {
                None => return Err(ParamError::Missing(s)),
                Some(v) if !v.is_positive() => return Err(ParamError::NonPositive),
                _ => {}
            }
        }
        if entries.len() != k_subsets(n, k).len() {
            return Err(ParamError::WrongLength {
                expected: k_subsets(n, k).len(),
                found: entries.len(),
            });
        }
        let base: Vec<usize> = (1..=k).collect();
        let scale = entries[&base].clone();
        let entries = entries.into_iter().map(|(s, v)| (s, v / &scale)).collect();
        Ok(PlueckerVector { k, n, entries })
    }

    pub fn k(&self) -> usize {
        self.k
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn entries(&self) -> &BTreeMap<Vec<usize>, BigRational> {
        &self.entries
    }

    /// `Δ_K`, with `Δ_∅ = 1`.
    pub fn get(&self, set: Option<&[usize]>) -> BigRational {
        match set {
            None => BigRational::one(),
            Some(s) => self.entries[s].clone(),
        }
    }

    /// Every three-term relation
    /// `Δ_Sac Δ_Sbd = Δ_Sab Δ_Scd + Δ_Sad Δ_Sbc` for `a < b < c < d`.
    pub fn satisfies_three_term_relations(&self) -> bool {
        if self.k < 2 || self.n < self.k + 2 {
            return true;
        }
        let key = |s: &[usize], extra: [usize; 2]| {
            let mut v: Vec<usize> = s.iter().copied().chain(extra).collect();
            v.sort_unstable();
            v
        };
        for s in k_subsets(self.n, self.k - 2) {
            let rest: Vec<usize> = (1..=self.n).filter(|x| !s.contains(x)).collect();
            for q in k_subsets(rest.len(), 4) {
                let [a, b, c, d] = [rest[q[0] - 1], rest[q[1] - 1], rest[q[2] - 1], rest[q[3] - 1]];
                let e = |x, y| &self.entries[&key(&s, [x, y])];
                if e(a, c) * e(b, d) != e(a, b) * e(c, d) + e(a, d) * e(b, c) {
                    return false;
                }
            }
        }
        true
    }
}

/// Values on regions, in region-index order (all regions) or inner order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionAssignment {
    pub mode: VarMode,
    pub values: Vec<BigRational>,
}

impl RegionAssignment {
    pub fn new(mode: VarMode, values: Vec<BigRational>) -> Result<Self, ParamError> {
        if values.iter().any(|v| !v.is_positive()) {
            return Err(ParamError::NonPositive);
        }
        Ok(RegionAssignment { mode, values })
    }

    /// The inner-region values of an all-regions assignment.
    pub fn inner_part(&self, w: &WebDiagram) -> RegionAssignment {
        match self.mode {
            VarMode::InnerOnly => self.clone(),
            VarMode::AllRegions => RegionAssignment {
                mode: VarMode::InnerOnly,
                values: w.inner_regions().iter().map(|&r| self.values[r].clone()).collect(),
            },
        }
    }
}

/// `K(i, j) = {1..i-1} ∪ {i+j-k..j}` for a region `(i, j)`, `None` (the
/// empty marker) otherwise.
pub fn k_index(i: i64, j: i64, k: usize, n: usize) -> Option<Vec<usize>> {
    let (k, n) = (k as i64, n as i64);
    if !(1..=k).contains(&i) || !(k + 1..=n).contains(&j) {
        return None;
    }
    Some((1..i).chain(i + j - k..=j).map(|x| x as usize).collect())
}

/// The parameterization for fixed `(k, n)`, with the Plücker polynomials
/// precomputed.
#[derive(Clone, Debug)]
pub struct Parameterization {
    web: WebDiagram,
    polys: BTreeMap<Vec<usize>, ExponentPolynomial>,
}

impl Parameterization {
    pub fn new(k: usize, n: usize) -> Result<Self, ParamError> {
        let web = build_web(k, n)?;
        let polys = all_plucker_polys(&web, VarMode::AllRegions);
        Ok(Parameterization { web, polys })
    }

    pub fn web(&self) -> &WebDiagram {
        &self.web
    }

    fn check(&self, x: &RegionAssignment, mode: VarMode) -> Result<(), ParamError> {
        let expected = self.web.vars(mode);
        if x.mode != mode || x.values.len() != expected {
            return Err(ParamError::WrongLength {
                expected,
                found: x.values.len(),
            });
        }
        if x.values.iter().any(|v| !v.is_positive()) {
            return Err(ParamError::NonPositive);
        }
        Ok(())
    }

    /// `Δ_K = P_K(x)` for every `K`.
    pub fn phi1(&self, x: &RegionAssignment) -> Result<PlueckerVector, ParamError> {
        self.check(x, VarMode::AllRegions)?;
        let entries = self
            .polys
            .iter()
            .map(|(s, p)| (s.clone(), p.eval(&x.values)))
            .collect();
        PlueckerVector::new(self.web.k(), self.web.n(), entries)
    }

    /// `phi1` with every outer region set to 1.
    pub fn phi2(&self, x: &RegionAssignment) -> Result<PlueckerVector, ParamError> {
        self.check(x, VarMode::InnerOnly)?;
        let mut all = vec![BigRational::one(); self.web.region_count()];
        for (&r, v) in self.web.inner_regions().iter().zip(&x.values) {
            all[r] = v.clone();
        }
        self.phi1(&RegionAssignment {
            mode: VarMode::AllRegions,
            values: all,
        })
    }

    /// Region values recovered from the Plücker coordinates:
    /// `Δ_K(i,j) Δ_K(i+1,j-2) Δ_K(i+2,j-1) / (Δ_K(i,j-1) Δ_K(i+1,j) Δ_K(i+2,j-2))`.
    pub fn psi(&self, d: &PlueckerVector) -> Result<RegionAssignment, ParamError> {
        let (k, n) = (self.web.k(), self.web.n());
        if d.k != k || d.n != n {
            return Err(ParamError::Shape(d.k, d.n, k, n));
        }
        let delta = |i: i64, j: i64| d.get(k_index(i, j, k, n).as_deref());
        let values = self
            .web
            .regions()
            .iter()
            .map(|r| {
                let (i, j) = (r.i as i64, r.j as i64);
                delta(i, j) * delta(i + 1, j - 2) * delta(i + 2, j - 1)
                    / (delta(i, j - 1) * delta(i + 1, j) * delta(i + 2, j - 2))
            })
            .collect();
        RegionAssignment::new(VarMode::AllRegions, values)
    }

    /// The torus element `lambda` (with `lambda_k = 1`) taking `d` to the
    /// representative whose outer region values are all 1.
    pub fn normalizing_torus(&self, d: &PlueckerVector) -> Result<Vec<BigRational>, ParamError> {
        let (k, n) = (self.web.k(), self.web.n());
        let target = self.phi2(&self.psi(d)?.inner_part(&self.web))?;
        let swap = |out: usize, inn: usize| -> Vec<usize> {
            let mut s: Vec<usize> = (1..=k).filter(|&x| x != out).chain([inn]).collect();
            s.sort_unstable();
            s
        };
        let ratio = |s: &Vec<usize>| &target.entries[s] / &d.entries[s];
        let mut lambda = vec![BigRational::one(); n];
        for j in k + 1..=n {
            lambda[j - 1] = ratio(&swap(k, j));
        }
        for i in 1..k {
            lambda[i - 1] = &lambda[k] / ratio(&swap(i, k + 1));
        }
        if torus_rescale(d, &lambda)? != target {
            return Err(ParamError::NotInOrbit);
        }
        Ok(lambda)
    }
}

pub fn phi1(x: &RegionAssignment, k: usize, n: usize) -> Result<PlueckerVector, ParamError> {
    Parameterization::new(k, n)?.phi1(x)
}

pub fn phi2(x: &RegionAssignment, k: usize, n: usize) -> Result<PlueckerVector, ParamError> {
    Parameterization::new(k, n)?.phi2(x)
}

pub fn psi(d: &PlueckerVector, k: usize, n: usize) -> Result<RegionAssignment, ParamError> {
    Parameterization::new(k, n)?.psi(d)
}

/// Column scaling: `Δ_K -> (prod_{c in K} lambda_c) Δ_K`, then renormalized.
pub fn torus_rescale(d: &PlueckerVector, lambda: &[BigRational]) -> Result<PlueckerVector, ParamError> {
    if lambda.len() != d.n {
        return Err(ParamError::WrongLength {
            expected: d.n,
            found: lambda.len(),
        });
    }
    if lambda.iter().any(|l| !l.is_positive()) {
        return Err(ParamError::NonPositive);
    }
    let entries = d
        .entries
        .iter()
        .map(|(s, v)| {
            let f: BigRational = s.iter().map(|&c| lambda[c - 1].clone()).product();
            (s.clone(), v * f)
        })
        .collect();
    PlueckerVector::new(d.k, d.n, entries)
}
