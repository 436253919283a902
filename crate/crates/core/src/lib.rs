//! Exact computation of the totally positive tropical Grassmannian fan.
//!
//! The fan `F(k, n)` lives in `R^{(k-1)(n-k-1)}`, one coordinate per inner
//! region of the web diagram. It is the coarsest fan on whose cones every
//! tropicalized Plücker polynomial is linear. This crate builds it exactly,
//! compares it with the Stanley–Pitman fan for `k = 2`, and refines the
//! `(3,6)` and `(3,7)` fans by the extra cluster variables.

pub mod exactgeom;
pub mod webdiagram;
pub mod tropfan;
pub mod posparam;
pub mod assoctrees;
pub mod clusterfans;
