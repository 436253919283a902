//! Small exact linear-algebra helpers.
//!
//! Hot paths work on primitive `i64` vectors with `i128` accumulators. Every
//! stored entry is kept within `±MAX_ENTRY` so that dot products of vectors of
//! any realistic dimension cannot overflow an `i128`; a result that would leave
//! that range is reported as [`GeomError::Overflow`] instead of wrapping.
//! Projections and reduced row echelon forms go through `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::GeomError;

/// Integer vector used throughout the kernel.
pub type IntVec = Vec<i64>;

pub(crate) const MAX_ENTRY: i128 = i32::MAX as i128;

#[inline]
pub fn dot(a: &[i64], b: &[i64]) -> i128 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// Divides by the gcd of the entries. Sign is preserved; the zero vector
/// stays zero.
pub fn primitive(v: &[i128]) -> Result<IntVec, GeomError> {
    let g = v.iter().fold(0i128, |g, x| g.gcd(x));
    if g == 0 {
        return Ok(vec![0; v.len()]);
    }
    v.iter()
        .map(|&x| {
            let y = x / g;
            if y.abs() > MAX_ENTRY {
                Err(GeomError::Overflow)
            } else {
                Ok(y as i64)
            }
        })
        .collect()
}

pub fn primitive_i64(v: &[i64]) -> Result<IntVec, GeomError> {
    let wide: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    primitive(&wide)
}

/// `alpha * u + beta * v`, reduced to a primitive vector.
pub fn combine(alpha: i128, u: &[i64], beta: i128, v: &[i64]) -> Result<IntVec, GeomError> {
    let mut out = Vec::with_capacity(u.len());
    for (&x, &y) in u.iter().zip(v) {
        let a = alpha.checked_mul(x as i128).ok_or(GeomError::Overflow)?;
        let b = beta.checked_mul(y as i128).ok_or(GeomError::Overflow)?;
        out.push(a.checked_add(b).ok_or(GeomError::Overflow)?);
    }
    primitive(&out)
}

pub fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn negate(v: &[i64]) -> IntVec {
    v.iter().map(|&x| -x).collect()
}

/// Rank of a set of integer vectors, by fraction-free elimination with
/// gcd reduction of every updated row.
pub fn rank<'a, I>(rows: I) -> Result<usize, GeomError>
where
    I: IntoIterator<Item = &'a [i64]>,
{
    let mut m: Vec<Vec<i128>> = rows
        .into_iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let Some(ncols) = m.first().map(Vec::len) else {
        return Ok(0);
    };
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot = &head[r];
        for row in tail.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let pc = pivot[c];
            let mut g = 0i128;
            for (x, &y) in row.iter_mut().zip(pivot.iter()) {
                let a = pc.checked_mul(*x).ok_or(GeomError::Overflow)?;
                let b = f.checked_mul(y).ok_or(GeomError::Overflow)?;
                *x = a.checked_sub(b).ok_or(GeomError::Overflow)?;
                g = g.gcd(x);
            }
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    Ok(r)
}

pub fn rank_of(rows: &[IntVec]) -> Result<usize, GeomError> {
    rank(rows.iter().map(Vec::as_slice))
}

pub(crate) fn to_rat(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

/// Clears denominators of a rational vector and returns the primitive integer
/// vector on the same ray.
pub fn rat_to_primitive(v: &[BigRational]) -> Result<IntVec, GeomError> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let scaled: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = scaled.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Ok(vec![0; v.len()]);
    }
    scaled
        .iter()
        .map(|x| {
            let y = x / &g;
            match y.to_i64() {
                Some(y) if (y as i128).abs() <= MAX_ENTRY => Ok(y),
                _ => Err(GeomError::Overflow),
            }
        })
        .collect()
}

/// Reduced row echelon form over the rationals. Returns the nonzero rows and
/// their pivot columns.
#[allow(clippy::needless_range_loop)]
pub fn rref(rows: &[Vec<BigRational>]) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        m[r].iter_mut().for_each(|x| *x *= &inv);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Canonical integer basis of the span of `rows`: the RREF rows, each scaled
/// to a primitive integer vector.
pub fn canonical_basis(rows: &[IntVec]) -> Result<Vec<IntVec>, GeomError> {
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let rat: Vec<_> = rows.iter().map(|r| to_rat(r)).collect();
    let (red, _) = rref(&rat);
    red.iter().map(|r| rat_to_primitive(r)).collect()
}

/// Basis of the orthogonal complement of the span of `rows` in dimension
/// `dim`, in canonical form.
pub fn orthogonal_complement(dim: usize, rows: &[IntVec]) -> Result<Vec<IntVec>, GeomError> {
    let rat: Vec<_> = rows.iter().map(|r| to_rat(r)).collect();
    let (red, pivots) = rref(&rat);
    let mut basis = Vec::new();
    for free in (0..dim).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); dim];
        v[free] = BigRational::one();
        for (row, &p) in red.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(rat_to_primitive(&v)?);
    }
    canonical_basis(&basis)
}

/// Orthogonal projector onto the span of a fixed set of vectors.
pub struct Projector {
    basis: Vec<Vec<BigRational>>,
    gram_inv: Vec<Vec<BigRational>>,
}

impl Projector {
    pub fn new(basis: &[IntVec]) -> Self {
        let basis: Vec<_> = basis.iter().map(|b| to_rat(b)).collect();
        let k = basis.len();
        let mut aug: Vec<Vec<BigRational>> = (0..k)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..k).map(|j| rat_dot(&basis[i], &basis[j])).collect();
                row.extend((0..k).map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                row
            })
            .collect();
        let (red, _) = rref(&aug);
        aug = red;
        let gram_inv = aug.into_iter().map(|row| row[k..].to_vec()).collect();
        Projector { basis, gram_inv }
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    /// Component of `v` inside the span.
    pub fn project(&self, v: &[i64]) -> Vec<BigRational> {
        let dim = v.len();
        let vr = to_rat(v);
        let coeffs: Vec<BigRational> = self.basis.iter().map(|b| rat_dot(b, &vr)).collect();
        let mut out = vec![BigRational::zero(); dim];
        for (i, row) in self.gram_inv.iter().enumerate() {
            let c: BigRational = row.iter().zip(&coeffs).map(|(g, c)| g * c).sum();
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(&self.basis[i]) {
                *o += &c * b;
            }
        }
        out
    }

    /// Primitive integer vector along the component of `v` orthogonal to the span.
    pub fn reject(&self, v: &[i64]) -> Result<IntVec, GeomError> {
        if self.basis.is_empty() {
            return Ok(v.to_vec());
        }
        let p = self.project(v);
        let diff: Vec<BigRational> = v
            .iter()
            .zip(p)
            .map(|(&x, y)| BigRational::from_integer(BigInt::from(x)) - y)
            .collect();
        rat_to_primitive(&diff)
    }

    /// Primitive integer vector along the component of `v` inside the span.
    pub fn keep(&self, v: &[i64]) -> Result<IntVec, GeomError> {
        rat_to_primitive(&self.project(v))
    }
}

fn rat_dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
