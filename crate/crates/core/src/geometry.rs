//! Exact affine geometry over `Qⁿ`.
//!
//! Everything here is driven by one routine, [`reduce`], which brings a
//! rational matrix to reduced row echelon form. Pivots are taken from the
//! first row (top to bottom) with a nonzero entry in the current column, so
//! ranks, kernels and solutions are reproducible bit for bit.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lottery::EmbeddedPoint;
use crate::rational::Rational;

/// Sign of a scalar product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(value: &Rational) -> Sign {
        match value.signum() {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            _ => Sign::Zero,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        })
    }
}

/// A dense rectangular matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Rational>>", into = "Vec<Vec<Rational>>")]
pub struct RationalMatrix {
    rows: Vec<Vec<Rational>>,
    cols: usize,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(Error::MalformedMatrix);
        }
        Ok(RationalMatrix { rows, cols })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::integer(v)).collect())
                .collect(),
        )
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        reduce(self.rows.clone(), self.cols).pivots.len()
    }

    /// `M · v`.
    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }
}

impl TryFrom<Vec<Vec<Rational>>> for RationalMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<Rational>>) -> Result<Self> {
        RationalMatrix::new(rows)
    }
}

impl From<RationalMatrix> for Vec<Vec<Rational>> {
    fn from(m: RationalMatrix) -> Self {
        m.rows
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub(crate) struct Reduced {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

pub(crate) fn reduce(mut rows: Vec<Vec<Rational>>, cols: usize) -> Reduced {
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..cols {
        if next_row == rows.len() {
            break;
        }
        let Some(found) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, found);
        let inv = rows[next_row][col].recip();
        if !inv.is_one() {
            for v in rows[next_row][col..].iter_mut() {
                *v = &*v * &inv;
            }
        }
        let pivot_row = rows[next_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *v = &*v - &factor * p;
            }
        }
        pivots.push(col);
        next_row += 1;
    }
    Reduced { rows, pivots }
}

/// Null space basis of a `rows.len() × cols` system; `rows` may be empty.
///
/// One vector per free column in ascending order: the free variable is set
/// to one, the other free variables to zero, and pivot variables solved.
pub(crate) fn null_space(rows: Vec<Vec<Rational>>, cols: usize) -> Vec<Vec<Rational>> {
    let reduced = reduce(rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &reduced.pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &p) in reduced.rows.iter().zip(&reduced.pivots) {
                v[p] = -&row[free];
            }
            v
        })
        .collect()
}

/// Exact basis of `ker(M)`.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<EmbeddedPoint> {
    null_space(m.rows.clone(), m.cols)
        .into_iter()
        .map(EmbeddedPoint::new)
        .collect()
}

fn common_dim(points: &[EmbeddedPoint]) -> Result<usize> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let dim = first.dim();
    for p in points {
        p.check_dim(dim)?;
    }
    Ok(dim)
}

fn directions(points: &[EmbeddedPoint]) -> Vec<Vec<Rational>> {
    let origin = &points[0];
    points[1..]
        .iter()
        .map(|p| p.sub(origin).into_coords())
        .collect()
}

/// Dimension of the affine hull: the rank of `{p_k − p_1}`.
pub fn affine_rank(points: &[EmbeddedPoint]) -> Result<usize> {
    let dim = common_dim(points)?;
    Ok(reduce(directions(points), dim).pivots.len())
}

/// Affine coefficients `λ` with `Σλ = 1` and `Σλ_k p_k = x`, or `None` when
/// `x` lies outside the affine hull. When the directions are dependent the
/// returned solution sets every free coefficient to zero.
pub fn affine_coefficients(
    x: &EmbeddedPoint,
    points: &[EmbeddedPoint],
) -> Result<Option<Vec<Rational>>> {
    let dim = common_dim(points)?;
    x.check_dim(dim)?;
    let m = points.len();
    let origin = &points[0];
    let target = x.sub(origin);
    let dirs = directions(points);
    // Unknowns μ_2 … μ_m, one equation per coordinate, augmented with x − p_1.
    let rows: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Rational> = dirs.iter().map(|d| d[i].clone()).collect();
            row.push(target.coords()[i].clone());
            row
        })
        .collect();
    let unknowns = m - 1;
    let reduced = reduce(rows, unknowns + 1);
    if reduced.pivots.last() == Some(&unknowns) {
        return Ok(None);
    }
    let mut mu = vec![Rational::zero(); unknowns];
    for (row, &p) in reduced.rows.iter().zip(&reduced.pivots) {
        mu[p] = row[unknowns].clone();
    }
    let head = Rational::one() - mu.iter().sum::<Rational>();
    let mut lambda = Vec::with_capacity(m);
    lambda.push(head);
    lambda.extend(mu);
    Ok(Some(lambda))
}

/// Scales a nonzero rational vector to the primitive integer vector with a
/// positive first nonzero entry.
pub fn primitive_integer(v: &[Rational]) -> Option<Vec<Rational>> {
    let first = v.iter().find(|c| !c.is_zero())?;
    let lcm = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let gcd = if first.is_negative() { -gcd } else { gcd };
    Some(ints.into_iter().map(|c| Rational::from(c / &gcd)).collect())
}

/// `{h : ⟨h − base, normal⟩ = 0}` with a primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHyperplane")]
pub struct Hyperplane {
    normal: EmbeddedPoint,
    base: EmbeddedPoint,
}

#[derive(Deserialize)]
struct RawHyperplane {
    normal: EmbeddedPoint,
    base: EmbeddedPoint,
}

impl TryFrom<RawHyperplane> for Hyperplane {
    type Error = Error;
    fn try_from(raw: RawHyperplane) -> Result<Self> {
        Hyperplane::new(raw.normal, raw.base)
    }
}

impl Hyperplane {
    /// Canonicalises `normal`; fails on a zero normal or a dimension clash.
    pub fn new(normal: EmbeddedPoint, base: EmbeddedPoint) -> Result<Self> {
        base.check_dim(normal.dim())?;
        let normal = primitive_integer(normal.coords())
            .ok_or_else(|| Error::InvalidOracle("hyperplane normal must be nonzero".into()))?;
        Ok(Hyperplane {
            normal: EmbeddedPoint::new(normal),
            base,
        })
    }

    pub fn normal(&self) -> &EmbeddedPoint {
        &self.normal
    }

    pub fn base(&self) -> &EmbeddedPoint {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.normal.dim()
    }

    /// `⟨q − base, normal⟩`.
    pub fn offset(&self, q: &EmbeddedPoint) -> Result<Rational> {
        q.check_dim(self.dim())?;
        Ok(q.sub(&self.base).dot(&self.normal))
    }

    /// The parallel hyperplane through `point`.
    pub fn through(&self, point: &EmbeddedPoint) -> Result<Hyperplane> {
        point.check_dim(self.dim())?;
        Ok(Hyperplane {
            normal: self.normal.clone(),
            base: point.clone(),
        })
    }

    pub fn contains(&self, q: &EmbeddedPoint) -> Result<bool> {
        Ok(self.offset(q)?.is_zero())
    }
}

/// The hyperplane spanned by exactly `n` points of `Qⁿ` in general position.
pub fn hyperplane_from_points(points: &[EmbeddedPoint]) -> Result<Hyperplane> {
    let dim = common_dim(points)?;
    if points.len() != dim {
        return Err(Error::WrongCount {
            expected: dim,
            found: points.len(),
        });
    }
    let required = dim - 1;
    let dirs = directions(points);
    let rank = reduce(dirs.clone(), dim).pivots.len();
    if rank < required {
        return Err(Error::RankDeficient { rank, required });
    }
    let mut kernel = null_space(dirs, dim);
    debug_assert_eq!(kernel.len(), 1);
    let normal = kernel
        .pop()
        .expect("rank n-1 leaves a one-dimensional kernel");
    Hyperplane::new(EmbeddedPoint::new(normal), points[0].clone())
}

/// Which side of `h` the point `q` lies on.
pub fn halfspace_classify(q: &EmbeddedPoint, h: &Hyperplane) -> Result<Sign> {
    Ok(Sign::of(&h.offset(q)?))
}
