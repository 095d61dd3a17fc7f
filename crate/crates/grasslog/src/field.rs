//! Exact scalar arithmetic over the base fields: ℚ, quadratic extensions
//! ℚ(√d) with d squarefree and ≠ 0, 1, and prime fields 𝔽_p.
//!
//! Every value is kept in canonical form (reduced fractions, reduced
//! coefficient pair for a + b√d, residue 0 ≤ r < p), so structural equality
//! is field equality. Nothing in this module rounds.

use crate::arith;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("quadratic discriminant {0} must be squarefree and different from 0 and 1")]
    BadDiscriminant(i64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operands live in different fields: {0} vs {1}")]
    MixedFields(FieldDescriptor, FieldDescriptor),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

/// Which field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FieldDescriptor {
    Rational,
    Quadratic { d: i64 },
    Prime { p: u64 },
}

impl FieldDescriptor {
    pub fn rational() -> Self {
        FieldDescriptor::Rational
    }

    pub fn quadratic(d: i64) -> Result<Self, FieldError> {
        if d == 0 || d == 1 || !arith::is_squarefree_i64(d) {
            return Err(FieldError::BadDiscriminant(d));
        }
        Ok(FieldDescriptor::Quadratic { d })
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if !arith::is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldDescriptor::Prime { p })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldDescriptor::Prime { .. })
    }

    /// Parses the CLI field syntax: `q`, `q(sqrt D)`, `fp:P`.
    pub fn parse(s: &str) -> Result<Self, FieldError> {
        let bad = || FieldError::Parse { what: "field", input: s.to_string() };
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldDescriptor::Rational);
        }
        if let Some(rest) = t.strip_prefix("fp:") {
            let p: u64 = rest.trim().parse().map_err(|_| bad())?;
            return FieldDescriptor::prime(p);
        }
        if let Some(rest) = t.strip_prefix("q(sqrt").and_then(|r| r.strip_suffix(')')) {
            let d: i64 = rest.trim().parse().map_err(|_| bad())?;
            return FieldDescriptor::quadratic(d);
        }
        Err(bad())
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rational => write!(f, "q"),
            FieldDescriptor::Quadratic { d } => write!(f, "q(sqrt {d})"),
            FieldDescriptor::Prime { p } => write!(f, "fp:{p}"),
        }
    }
}

/// An exact element of one of the three field kinds.
///
/// Invariants: rationals reduced; the quadratic discriminant is valid and
/// shared with the descriptor; prime-field residues satisfy 0 ≤ r < p.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Quadratic { a: BigRational, b: BigRational, d: i64 },
    Prime { r: u64, p: u64 },
}

impl Scalar {
    pub fn zero(desc: FieldDescriptor) -> Self {
        Scalar::from_integer(desc, 0)
    }

    pub fn one(desc: FieldDescriptor) -> Self {
        Scalar::from_integer(desc, 1)
    }

    pub fn from_integer(desc: FieldDescriptor, n: i64) -> Self {
        match desc {
            FieldDescriptor::Rational => Scalar::Rational(BigRational::from_integer(n.into())),
            FieldDescriptor::Quadratic { d } => Scalar::Quadratic {
                a: BigRational::from_integer(n.into()),
                b: BigRational::zero(),
                d,
            },
            FieldDescriptor::Prime { p } => Scalar::Prime { r: n.rem_euclid(p as i64) as u64, p },
        }
    }

    pub fn from_rational(desc: FieldDescriptor, q: BigRational) -> Result<Self, FieldError> {
        match desc {
            FieldDescriptor::Rational => Ok(Scalar::Rational(q)),
            FieldDescriptor::Quadratic { d } => Ok(Scalar::Quadratic { a: q, b: BigRational::zero(), d }),
            FieldDescriptor::Prime { p } => {
                let num = q.numer().clone();
                let den = q.denom().clone();
                let pb = BigInt::from(p);
                let den_r = bigint_mod(&den, &pb, p);
                let den_inv = arith::inv_mod_u64(den_r, p).ok_or(FieldError::DivisionByZero)?;
                let num_r = bigint_mod(&num, &pb, p);
                Ok(Scalar::Prime { r: arith::mul_mod_u64(num_r, den_inv, p), p })
            }
        }
    }

    pub fn quadratic(a: BigRational, b: BigRational, d: i64) -> Result<Self, FieldError> {
        FieldDescriptor::quadratic(d)?;
        Ok(Scalar::Quadratic { a, b, d })
    }

    pub fn rational(q: BigRational) -> Self {
        Scalar::Rational(q)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Rational(q)
    }
}

impl Scalar {
    pub fn residue(r: u64, p: u64) -> Result<Self, FieldError> {
        FieldDescriptor::prime(p)?;
        Ok(Scalar::Prime { r: r % p, p })
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            Scalar::Rational(_) => FieldDescriptor::Rational,
            Scalar::Quadratic { d, .. } => FieldDescriptor::Quadratic { d: *d },
            Scalar::Prime { p, .. } => FieldDescriptor::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Quadratic { a, b, .. } => a.is_zero() && b.is_zero(),
            Scalar::Prime { r, .. } => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Quadratic { a, b, .. } => a.is_one() && b.is_zero(),
            Scalar::Prime { r, .. } => *r == 1,
        }
    }

    /// The rational value, if the scalar is a rational (or a quadratic
    /// element with vanishing √d part).
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Quadratic { a, b, .. } if b.is_zero() => Some(a),
            _ => None,
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<(), FieldError> {
        let (l, r) = (self.descriptor(), other.descriptor());
        if l != r {
            return Err(FieldError::MixedFields(l, r));
        }
        Ok(())
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Quadratic { a, b, d }, Scalar::Quadratic { a: a2, b: b2, .. }) => {
                Scalar::Quadratic { a: a + a2, b: b + b2, d: *d }
            }
            (Scalar::Prime { r, p }, Scalar::Prime { r: r2, .. }) => {
                Scalar::Prime { r: ((*r as u128 + *r2 as u128) % *p as u128) as u64, p: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Quadratic { a, b, d } => Scalar::Quadratic { a: -a, b: -b, d: *d },
            Scalar::Prime { r, p } => Scalar::Prime { r: if *r == 0 { 0 } else { p - r }, p: *p },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Quadratic { a, b, d }, Scalar::Quadratic { a: a2, b: b2, .. }) => {
                let dq = BigRational::from_integer((*d).into());
                Scalar::Quadratic { a: a * a2 + &dq * b * b2, b: a * b2 + b * a2, d: *d }
            }
            (Scalar::Prime { r, p }, Scalar::Prime { r: r2, .. }) => {
                Scalar::Prime { r: arith::mul_mod_u64(*r, *r2, *p), p: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Quadratic { a, b, d } => {
                // (a + b√d)⁻¹ = (a − b√d)/(a² − d·b²); the norm is nonzero
                // because d is squarefree and ≠ 1, so √d ∉ ℚ.
                let dq = BigRational::from_integer((*d).into());
                let norm = a * a - &dq * b * b;
                Scalar::Quadratic { a: a / &norm, b: -(b / &norm), d: *d }
            }
            Scalar::Prime { r, p } => {
                Scalar::Prime { r: arith::inv_mod_u64(*r, *p).ok_or(FieldError::DivisionByZero)?, p: *p }
            }
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.mul(&other.inv()?)
    }
}

fn bigint_mod(n: &BigInt, pb: &BigInt, p: u64) -> u64 {
    let r = n % pb;
    let r = if r.is_negative() { r + pb } else { r };
    // r is in [0, p), so the conversion cannot fail.
    let mag = r.magnitude();
    let mut out = 0u64;
    for digit in mag.to_u64_digits() {
        out = digit; // at most one digit since r < p < 2^64
    }
    let _ = p;
    out
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Quadratic { a, b, d } => {
                if b.is_zero() {
                    write!(f, "{a}")
                } else if a.is_zero() {
                    write!(f, "{b}*sqrt({d})")
                } else {
                    write!(f, "{a}+{b}*sqrt({d})")
                }
            }
            Scalar::Prime { r, p } => write!(f, "{r} (mod {p})"),
        }
    }
}

/// Canonical "p/q" string, denominator always present.
pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts "p/q" or a bare integer "p".
pub fn rational_from_string(s: &str) -> Result<BigRational, FieldError> {
    let bad = || FieldError::Parse { what: "rational", input: s.to_string() };
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(FieldError::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Str(String),
    Quadratic { a: String, b: String, d: i64 },
    Prime { r: u64, p: u64 },
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let repr = match self {
            Scalar::Rational(q) => ScalarRepr::Str(rational_to_string(q)),
            Scalar::Quadratic { a, b, d } => ScalarRepr::Quadratic {
                a: rational_to_string(a),
                b: rational_to_string(b),
                d: *d,
            },
            Scalar::Prime { r, p } => ScalarRepr::Prime { r: *r, p: *p },
        };
        repr.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = ScalarRepr::deserialize(de)?;
        match repr {
            ScalarRepr::Str(s) => Ok(Scalar::Rational(rational_from_string(&s).map_err(D::Error::custom)?)),
            ScalarRepr::Quadratic { a, b, d } => Scalar::quadratic(
                rational_from_string(&a).map_err(D::Error::custom)?,
                rational_from_string(&b).map_err(D::Error::custom)?,
                d,
            )
            .map_err(D::Error::custom),
            ScalarRepr::Prime { r, p } => Scalar::residue(r, p).map_err(D::Error::custom),
        }
    }
}

/// A column vector of scalars sharing one field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(pub Vec<Scalar>);

impl Vector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn standard_basis(desc: FieldDescriptor, m: usize, i: usize) -> Vector {
        let mut v = vec![Scalar::zero(desc); m];
        v[i] = Scalar::one(desc);
        Vector(v)
    }

    pub fn descriptor(&self) -> Result<FieldDescriptor, FieldError> {
        uniform_descriptor(self.0.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }
}

/// The shared descriptor of a nonempty collection, or an error if mixed.
pub fn uniform_descriptor<'a, I: IntoIterator<Item = &'a Scalar>>(
    scalars: I,
) -> Result<FieldDescriptor, FieldError> {
    let mut iter = scalars.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| FieldError::Dimension("empty scalar collection".into()))?
        .descriptor();
    for s in iter {
        if s.descriptor() != first {
            return Err(FieldError::MixedFields(first, s.descriptor()));
        }
    }
    Ok(first)
}

/// Dense row-major matrix over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, FieldError> {
        if data.len() != rows * cols {
            return Err(FieldError::Dimension(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                data.len()
            )));
        }
        uniform_descriptor(data.iter())?;
        Ok(Matrix { rows, cols, data })
    }

    pub fn identity(desc: FieldDescriptor, n: usize) -> Self {
        let mut data = vec![Scalar::zero(desc); n * n];
        for i in 0..n {
            data[i * n + i] = Scalar::one(desc);
        }
        Matrix { rows: n, cols: n, data }
    }

    /// Columns are the given vectors; all must share length and field.
    pub fn from_columns(cols: &[Vector]) -> Result<Self, FieldError> {
        let n = cols.len();
        let m = cols.first().map(Vector::len).unwrap_or(0);
        if m == 0 || n == 0 {
            return Err(FieldError::Dimension("empty matrix".into()));
        }
        if cols.iter().any(|c| c.len() != m) {
            return Err(FieldError::Dimension("ragged columns".into()));
        }
        let mut data = Vec::with_capacity(m * n);
        for i in 0..m {
            for c in cols {
                data.push(c.0[i].clone());
            }
        }
        Matrix::new(m, n, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.data[0].descriptor()
    }

    pub fn mul_vector(&self, v: &Vector) -> Result<Vector, FieldError> {
        if v.len() != self.cols {
            return Err(FieldError::Dimension("matrix/vector size mismatch".into()));
        }
        let desc = self.descriptor();
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Scalar::zero(desc);
            for j in 0..self.cols {
                acc = acc.add(&self.get(i, j).mul(&v.0[j])?)?;
            }
            out.push(acc);
        }
        Ok(Vector(out))
    }

    pub fn mul_matrix(&self, other: &Matrix) -> Result<Matrix, FieldError> {
        if self.cols != other.rows {
            return Err(FieldError::Dimension("matrix/matrix size mismatch".into()));
        }
        let desc = self.descriptor();
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Scalar::zero(desc);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j))?)?;
                }
                data.push(acc);
            }
        }
        Matrix::new(self.rows, other.cols, data)
    }

    /// Exact determinant by Gaussian elimination with pivot-sign tracking.
    pub fn det(&self) -> Result<Scalar, FieldError> {
        if self.rows != self.cols {
            return Err(FieldError::NotSquare);
        }
        let desc = self.descriptor();
        let n = self.rows;
        let mut w = self.data.clone();
        let mut det = Scalar::one(desc);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !w[r * n + col].is_zero());
            let Some(pivot) = pivot else {
                return Ok(Scalar::zero(desc));
            };
            if pivot != col {
                for j in 0..n {
                    w.swap(pivot * n + j, col * n + j);
                }
                det = det.neg();
            }
            let pv = w[col * n + col].clone();
            det = det.mul(&pv)?;
            let pinv = pv.inv()?;
            for r in (col + 1)..n {
                let factor = w[r * n + col].mul(&pinv)?;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let delta = factor.mul(&w[col * n + j])?;
                    w[r * n + j] = w[r * n + j].sub(&delta)?;
                }
            }
        }
        Ok(det)
    }

    /// Column rank by elimination.
    pub fn rank(&self) -> Result<usize, FieldError> {
        let (m, n) = (self.rows, self.cols);
        let mut w = self.data.clone();
        let mut rank = 0usize;
        for col in 0..n {
            let pivot = (rank..m).find(|&r| !w[r * n + col].is_zero());
            let Some(pivot) = pivot else { continue };
            if pivot != rank {
                for j in 0..n {
                    w.swap(pivot * n + j, rank * n + j);
                }
            }
            let pinv = w[rank * n + col].inv()?;
            for r in (rank + 1)..m {
                let factor = w[r * n + col].mul(&pinv)?;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let delta = factor.mul(&w[rank * n + j])?;
                    w[r * n + j] = w[r * n + j].sub(&delta)?;
                }
            }
            rank += 1;
        }
        Ok(rank)
    }

    /// Solves M x = b exactly for square invertible M.
    pub fn solve(&self, b: &Vector) -> Result<Vector, FieldError> {
        if self.rows != self.cols {
            return Err(FieldError::NotSquare);
        }
        if b.len() != self.rows {
            return Err(FieldError::Dimension("rhs length mismatch".into()));
        }
        let n = self.rows;
        // Gauss-Jordan on [M | b].
        let width = n + 1;
        let mut w = Vec::with_capacity(n * width);
        for i in 0..n {
            for j in 0..n {
                w.push(self.get(i, j).clone());
            }
            w.push(b.0[i].clone());
        }
        for col in 0..n {
            let pivot = (col..n).find(|&r| !w[r * width + col].is_zero()).ok_or(FieldError::Singular)?;
            if pivot != col {
                for j in 0..width {
                    w.swap(pivot * width + j, col * width + j);
                }
            }
            let pinv = w[col * width + col].inv()?;
            for j in col..width {
                w[col * width + j] = w[col * width + j].mul(&pinv)?;
            }
            for r in 0..n {
                if r == col || w[r * width + col].is_zero() {
                    continue;
                }
                let factor = w[r * width + col].clone();
                for j in col..width {
                    let delta = factor.mul(&w[col * width + j])?;
                    w[r * width + j] = w[r * width + j].sub(&delta)?;
                }
            }
        }
        Ok(Vector((0..n).map(|i| w[i * width + n].clone()).collect()))
    }

    pub fn inverse(&self) -> Result<Matrix, FieldError> {
        if self.rows != self.cols {
            return Err(FieldError::NotSquare);
        }
        let n = self.rows;
        let desc = self.descriptor();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            cols.push(self.solve(&Vector::standard_basis(desc, n, j))?);
        }
        Matrix::from_columns(&cols)
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use rand::Rng;

    /// Small random scalar; rationals and quadratic coefficients use
    /// numerators in [-9, 9] and denominators in [1, 4].
    pub fn random_scalar<R: Rng>(desc: FieldDescriptor, rng: &mut R) -> Scalar {
        match desc {
            FieldDescriptor::Rational => Scalar::Rational(random_rational(rng)),
            FieldDescriptor::Quadratic { d } => Scalar::Quadratic {
                a: random_rational(rng),
                b: random_rational(rng),
                d,
            },
            FieldDescriptor::Prime { p } => Scalar::Prime { r: rng.gen_range(0..p), p },
        }
    }

    pub fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
        let num: i64 = rng.gen_range(-9..=9);
        let den: i64 = rng.gen_range(1..=4);
        BigRational::new(num.into(), den.into())
    }

    pub fn random_nonzero<R: Rng>(desc: FieldDescriptor, rng: &mut R) -> Scalar {
        loop {
            let s = random_scalar(desc, rng);
            if !s.is_zero() {
                return s;
            }
        }
    }
}
