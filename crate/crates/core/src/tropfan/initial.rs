use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::TropError;
use crate::exactgeom::RatVector;

/// Polynomial with nonzero rational coefficients of either sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl SignedPolynomial {
    pub fn new(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>,
    ) -> Result<Self, TropError> {
        let mut map: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(TropError::DimensionMismatch {
                    expected: nvars,
                    found: e.len(),
                });
            }
            *map.entry(e).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(SignedPolynomial { nvars, terms: map })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_mixed_signs(&self) -> bool {
        self.terms.values().any(Signed::is_positive) && self.terms.values().any(Signed::is_negative)
    }
}

/// Terms of `f` minimizing the `w`-weight of their exponent.
pub fn init_form(f: &SignedPolynomial, w: &RatVector) -> Result<SignedPolynomial, TropError> {
    if f.is_zero() {
        return Err(TropError::ZeroPolynomial);
    }
    if w.dim() != f.nvars {
        return Err(TropError::DimensionMismatch {
            expected: f.nvars,
            found: w.dim(),
        });
    }
    let weight = |e: &Vec<u32>| -> BigRational {
        e.iter()
            .zip(w.coords())
            .map(|(&a, c)| c * BigInt::from(a))
            .sum()
    };
    let min = f.terms.keys().map(weight).min().expect("nonzero");
    SignedPolynomial::new(
        f.nvars,
        f.terms
            .iter()
            .filter(|(e, _)| weight(e) == min)
            .map(|(e, c)| (e.clone(), c.clone())),
    )
}

/// The 2-subsets of `[4]` in the coordinate order used by the `Gr(2,4)`
/// weight vectors.
pub const GR24_SUBSETS: [[usize; 2]; 6] = [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]];

/// `p13 p24 - p12 p34 - p14 p23`.
pub fn gr24_relation() -> SignedPolynomial {
    let mono = |a: usize, b: usize| {
        let mut e = vec![0u32; 6];
        e[a] += 1;
        e[b] += 1;
        e
    };
    let one = BigRational::from_integer(1.into());
    SignedPolynomial::new(
        6,
        [
            (mono(1, 4), one.clone()),
            (mono(0, 5), -one.clone()),
            (mono(2, 3), -one),
        ],
    )
    .expect("six variables")
}

/// Positive tropical membership for `Gr(2,4)`: the initial form of the one
/// Plücker relation must have terms of both signs.
pub fn pos_membership_gr24(w: &RatVector) -> Result<bool, TropError> {
    if w.dim() != 6 {
        return Err(TropError::DimensionMismatch {
            expected: 6,
            found: w.dim(),
        });
    }
    Ok(init_form(&gr24_relation(), w)?.has_mixed_signs())
}

#[cfg(test)]
mod tests {
    use super::*;

    // w indexed by 12, 13, 14, 23, 24, 34
    fn w(v: [i64; 6]) -> RatVector {
        RatVector::from_ints(&v)
    }

    #[test]
    fn initial_forms() {
        let f = gr24_relation();
        assert_eq!(init_form(&f, &w([0; 6])).unwrap(), f);
        let mono = init_form(&f, &w([1, 0, 1, 1, 0, 1])).unwrap();
        assert_eq!(mono.terms().len(), 1);
        assert!(mono.terms().values().all(Signed::is_positive));
        let bin = init_form(&f, &w([0, 0, 1, 1, 0, 0])).unwrap();
        assert_eq!(bin.terms().len(), 2);
        assert!(bin.has_mixed_signs());
    }

    #[test]
    fn membership() {
        assert!(pos_membership_gr24(&w([0; 6])).unwrap());
        assert!(!pos_membership_gr24(&w([1, 0, 1, 1, 0, 1])).unwrap());
        assert!(!pos_membership_gr24(&w([0, 1, 0, 0, 1, 0])).unwrap());
        assert!(pos_membership_gr24(&RatVector::from_ints(&[0; 5])).is_err());
    }
}
