//! Tuples of vectors in general position, the symmetric-group action and
//! face maps on them, GL-orbit canonical forms, cross-ratios, and the
//! chart change between the two affine coordinate systems on orbits.

use crate::field::{
    uniform_descriptor, FieldDescriptor, FieldError, Matrix, Scalar, Vector,
};
use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("vectors are not in general position")]
    NotGeneralPosition,
    #[error("expected vectors of length {expected}, got {got}")]
    VectorLength { expected: usize, got: usize },
    #[error("configuration must contain at least one vector")]
    Empty,
    #[error("{0}")]
    Shape(String),
    #[error("not a permutation of 0..{0}")]
    BadPermutation(usize),
    #[error("no general-position tuple of {len} vectors exists over {field}")]
    Infeasible { len: usize, field: FieldDescriptor },
}

/// A permutation of {0, …, n−1} stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, ConfigError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(ConfigError::BadPermutation(n));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// The transposition (i j) in S_n.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self, ConfigError> {
        if i >= n || j >= n || i == j {
            return Err(ConfigError::BadPermutation(n));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Ok(Permutation(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, ConfigError> {
        if self.len() != other.len() {
            return Err(ConfigError::BadPermutation(self.len()));
        }
        Ok(Permutation(other.0.iter().map(|&i| self.0[i]).collect()))
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &img) in self.0.iter().enumerate() {
            images[img] = i;
        }
        Permutation(images)
    }

    /// Parity via inversion count.
    pub fn sign(&self) -> i32 {
        let mut inversions = 0usize;
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All of S_n in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut images: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(images.clone()));
            // next_permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| images[i] < images[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| images[j] > images[i]).unwrap();
            images.swap(i, j);
            images[i + 1..].reverse();
            if n == 0 {
                break;
            }
        }
        out
    }
}

/// True iff every min(m, count) of the vectors are linearly independent.
/// Repeats are allowed when m = 1 (a vector is degenerate only if zero).
pub fn is_general_position(m: usize, vectors: &[Vector]) -> Result<bool, ConfigError> {
    if vectors.is_empty() {
        return Err(ConfigError::Empty);
    }
    for v in vectors {
        if v.len() != m {
            return Err(ConfigError::VectorLength { expected: m, got: v.len() });
        }
    }
    uniform_descriptor(vectors.iter().flat_map(|v| v.0.iter()))?;
    let count = vectors.len();
    if m == 1 {
        return Ok(vectors.iter().all(|v| !v.0[0].is_zero()));
    }
    if count <= m {
        let mat = stack_columns(vectors)?;
        return Ok(mat.rank()? == count);
    }
    for subset in combinations(count, m) {
        let cols: Vec<Vector> = subset.iter().map(|&i| vectors[i].clone()).collect();
        if Matrix::from_columns(&cols)?.det()?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn stack_columns(vectors: &[Vector]) -> Result<Matrix, ConfigError> {
    Ok(Matrix::from_columns(vectors)?)
}

/// Lexicographic k-subsets of {0, …, n−1}.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            break;
        };
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// An ordered tuple of vectors of k^m in general position.
///
/// A tuple of length m+n+1 represents a point of the space of
/// n-dimensional configurations; shorter tuples appear as the low ends
/// of the chain complexes built on them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ConfigRepr", into = "ConfigRepr")]
pub struct Configuration {
    m: usize,
    vectors: Vec<Vector>,
}

#[derive(Serialize, Deserialize)]
struct ConfigRepr {
    m: usize,
    vectors: Vec<Vec<Scalar>>,
}

impl TryFrom<ConfigRepr> for Configuration {
    type Error = ConfigError;

    fn try_from(repr: ConfigRepr) -> Result<Self, ConfigError> {
        Configuration::new(repr.m, repr.vectors.into_iter().map(Vector).collect())
    }
}

impl From<Configuration> for ConfigRepr {
    fn from(c: Configuration) -> ConfigRepr {
        ConfigRepr { m: c.m, vectors: c.vectors.into_iter().map(|v| v.0).collect() }
    }
}

impl Configuration {
    pub fn new(m: usize, vectors: Vec<Vector>) -> Result<Self, ConfigError> {
        if !is_general_position(m, &vectors)? {
            return Err(ConfigError::NotGeneralPosition);
        }
        Ok(Configuration { m, vectors })
    }

    /// For internal callers that already preserve general position
    /// (faces, permutations, invertible linear maps).
    pub(crate) fn new_unchecked(m: usize, vectors: Vec<Vector>) -> Self {
        debug_assert!(is_general_position(m, &vectors).unwrap_or(false));
        Configuration { m, vectors }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Chain degree: one less than the number of vectors.
    pub fn degree(&self) -> usize {
        self.vectors.len() - 1
    }

    /// The simplicial index n for a tuple of m+n+1 vectors, when defined.
    pub fn simplicial_n(&self) -> Option<usize> {
        self.vectors.len().checked_sub(self.m + 1)
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.vectors[0].0[0].descriptor()
    }

    /// Face map: deletes vector j.
    pub fn face(&self, j: usize) -> Result<Configuration, ConfigError> {
        if j >= self.len() {
            return Err(ConfigError::Shape(format!("face index {j} out of range")));
        }
        if self.len() == 1 {
            return Err(ConfigError::Shape("face of a single-vector tuple is empty".into()));
        }
        let mut vectors = self.vectors.clone();
        vectors.remove(j);
        Ok(Configuration::new_unchecked(self.m, vectors))
    }

    /// Place vector i at position σ(i).
    pub fn act(&self, perm: &Permutation) -> Result<Configuration, ConfigError> {
        if perm.len() != self.len() {
            return Err(ConfigError::Shape(format!(
                "permutation of {} letters applied to {} vectors",
                perm.len(),
                self.len()
            )));
        }
        let mut vectors = vec![Vector(Vec::new()); self.len()];
        for (i, v) in self.vectors.iter().enumerate() {
            vectors[perm.apply(i)] = v.clone();
        }
        Ok(Configuration::new_unchecked(self.m, vectors))
    }

    /// Applies an invertible matrix to every vector.
    pub fn transform(&self, g: &Matrix) -> Result<Configuration, ConfigError> {
        if g.rows() != self.m || g.cols() != self.m {
            return Err(ConfigError::Shape("transform must be m x m".into()));
        }
        if g.det()?.is_zero() {
            return Err(FieldError::Singular.into());
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| g.mul_vector(v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Configuration::new_unchecked(self.m, vectors))
    }

    /// The canonical representative of the GL_m-orbit: the first min(m, len)
    /// vectors become standard basis vectors.
    pub fn orbit_canonical(&self) -> Result<Configuration, ConfigError> {
        let desc = self.descriptor();
        let l = self.len();
        if l <= self.m {
            // Independent short tuples form a single orbit.
            let vectors = (0..l).map(|i| Vector::standard_basis(desc, self.m, i)).collect();
            return Ok(Configuration::new_unchecked(self.m, vectors));
        }
        let frame = Matrix::from_columns(&self.vectors[..self.m])?;
        let g = frame.inverse()?;
        self.transform(&g)
    }

    pub fn orbit_equal(&self, other: &Configuration) -> Result<bool, ConfigError> {
        if self.m != other.m || self.len() != other.len() {
            return Ok(false);
        }
        Ok(self.orbit_canonical()? == other.orbit_canonical()?)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vectors.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "(")?;
            for (j, s) in v.0.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{s}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}

/// Cross-ratio of four vectors of k², viewed as four points on the
/// projective line: r = (d02·d13)/(d03·d12) with d_ij = det[v_i v_j].
/// General position keeps every d_ij nonzero, so r is defined and ≠ 0, 1.
pub fn cross_ratio(c: &Configuration) -> Result<Scalar, ConfigError> {
    if c.m() != 2 || c.len() != 4 {
        return Err(ConfigError::Shape("cross-ratio needs four vectors of k^2".into()));
    }
    let d = |i: usize, j: usize| -> Result<Scalar, ConfigError> {
        let m = Matrix::from_columns(&[c.vectors()[i].clone(), c.vectors()[j].clone()])?;
        Ok(m.det()?)
    };
    let num = d(0, 2)?.mul(&d(1, 3)?)?;
    let den = d(0, 3)?.mul(&d(1, 2)?)?;
    Ok(num.div(&den)?)
}

/// The orbit generator ⟨a₁, …, a_m⟩ = [e₁, …, e_m, Σ aᵢeᵢ].
/// Defined exactly when all aᵢ are nonzero.
pub fn suslin_generator(a: &[Scalar]) -> Result<Configuration, ConfigError> {
    let m = a.len();
    if m == 0 {
        return Err(ConfigError::Empty);
    }
    let desc = uniform_descriptor(a.iter())?;
    if a.iter().any(Scalar::is_zero) {
        return Err(ConfigError::NotGeneralPosition);
    }
    let mut vectors: Vec<Vector> =
        (0..m).map(|i| Vector::standard_basis(desc, m, i)).collect();
    vectors.push(Vector(a.to_vec()));
    Configuration::new(m, vectors)
}

/// Affine coordinates of the orbit of [e₁, …, e_m, Σ aᵢeᵢ] in the chart
/// built from the kernel of (t₀, …, t_m) ↦ Σ tᵢvᵢ, normalised by t₀ = 1
/// and with the leading coordinate dropped:
/// (a₁, …, a_m) ↦ (a₂/a₁, …, a_m/a₁, −1/a₁).
pub fn chart_change(a: &[Scalar]) -> Result<Vec<Scalar>, ConfigError> {
    let m = a.len();
    if m == 0 {
        return Err(ConfigError::Empty);
    }
    uniform_descriptor(a.iter())?;
    if a.iter().any(Scalar::is_zero) {
        return Err(ConfigError::NotGeneralPosition);
    }
    let a1_inv = a[0].inv()?;
    let mut out = Vec::with_capacity(m);
    for ai in &a[1..] {
        out.push(ai.mul(&a1_inv)?);
    }
    out.push(a1_inv.neg());
    Ok(out)
}

/// Seeded general-position sampling by rejection; errors out when the
/// field cannot support a tuple of the requested length.
pub fn random_configuration<R: Rng>(
    desc: FieldDescriptor,
    m: usize,
    len: usize,
    rng: &mut R,
) -> Result<Configuration, ConfigError> {
    const MAX_ATTEMPTS: usize = 20_000;
    for _ in 0..MAX_ATTEMPTS {
        let vectors: Vec<Vector> = (0..len)
            .map(|_| Vector((0..m).map(|_| random_entry(desc, rng)).collect()))
            .collect();
        if is_general_position(m, &vectors)? {
            return Ok(Configuration::new_unchecked(m, vectors));
        }
    }
    Err(ConfigError::Infeasible { len, field: desc })
}

fn random_entry<R: Rng>(desc: FieldDescriptor, rng: &mut R) -> Scalar {
    match desc {
        FieldDescriptor::Rational => {
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=4);
            Scalar::Rational(BigRational::new(num.into(), den.into()))
        }
        FieldDescriptor::Quadratic { d } => {
            let part = |rng: &mut R| {
                let num: i64 = rng.gen_range(-4..=4);
                BigRational::from_integer(num.into())
            };
            Scalar::Quadratic { a: part(rng), b: part(rng), d }
        }
        FieldDescriptor::Prime { p } => Scalar::Prime { r: rng.gen_range(0..p), p },
    }
}
