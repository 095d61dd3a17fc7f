//! Numeric verification harnesses for Grassmann logarithm functions: seeded
//! sampling of general-position configurations over ℂ, the (2m+1)-term
//! functional-equation and skew-symmetry checks, the group-cocycle
//! construction f^e with its base-change maps, and the Dedekind zeta
//! special-value demonstration.

use crate::config::Permutation;
use crate::numeric::polylog::{bw_d1, bw_d2, dirichlet_l, zeta_int};
use crate::numeric::{Complex, NumericError, PrecisionPolicy, Real};
use crate::report::CheckReport;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("configuration margin below the general-position threshold")]
    DegenerateConfiguration,
    #[error("expected vectors of dimension {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("expected {expected} vectors, got {got}")]
    WrongVectorCount { expected: usize, got: usize },
    #[error("need at least {m} vectors for an m = {m} configuration, got {got}")]
    TooFewVectors { m: usize, got: usize },
    #[error("resampling budget of {attempts} attempts exhausted")]
    SamplingBudget { attempts: u32 },
    #[error("at least one trial is required")]
    NoTrials,
    #[error("base vector must be nonzero")]
    ZeroBaseVector,
    #[error("matrix is numerically singular")]
    SingularMatrix,
    #[error("matrix rows must form a square array")]
    MatrixShape,
    #[error("expected a tuple of {expected} group elements, got {got}")]
    WrongArity { expected: usize, got: usize },
}

const SAMPLE_BUDGET: u32 = 256;

/// Determinant of the m vectors taken as columns, by Gaussian elimination
/// with partial pivoting.
fn det_columns(m: usize, cols: &[&[Complex]], bits: usize) -> Complex {
    debug_assert_eq!(cols.len(), m);
    let mut a: Vec<Vec<Complex>> = (0..m)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut det = Complex::one(bits);
    for col in 0..m {
        let mut pivot = col;
        let mut best = a[col][col].abs2();
        for (r, row) in a.iter().enumerate().skip(col + 1) {
            let mag = row[col].abs2();
            if mag.gt(&best) {
                best = mag;
                pivot = r;
            }
        }
        if best.is_zero() {
            return Complex::zero(bits);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = det.neg();
        }
        let lead = a[col][col].clone();
        det = det.mul(&lead);
        for r in col + 1..m {
            let factor = a[r][col].div(&lead);
            for c in col..m {
                let sub = factor.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&sub);
            }
        }
    }
    det
}

/// Calls `f` on every size-m index subset of 0..n in lexicographic order.
fn for_each_subset(n: usize, m: usize, mut f: impl FnMut(&[usize])) {
    debug_assert!(m >= 1 && m <= n);
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        f(&idx);
        let mut i = m;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - m {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn compute_margin(m: usize, vectors: &[Vec<Complex>], bits: usize) -> Real {
    let mut min_sq: Option<Real> = None;
    for_each_subset(vectors.len(), m, |idx| {
        let cols: Vec<&[Complex]> = idx.iter().map(|&i| vectors[i].as_slice()).collect();
        let mag = det_columns(m, &cols, bits).abs2();
        min_sq = Some(match min_sq.take() {
            None => mag,
            Some(cur) => {
                if mag.lt(&cur) {
                    mag
                } else {
                    cur
                }
            }
        });
    });
    min_sq.expect("at least one subset").sqrt()
}

/// A tuple of vectors in ℂ^m in numerically general position: the margin,
/// the smallest |minor| over all m-subsets, stays above 10·τ of the policy
/// the configuration was built against.
#[derive(Debug, Clone)]
pub struct NumericConfiguration {
    m: usize,
    vectors: Vec<Vec<Complex>>,
    margin: Real,
}

impl NumericConfiguration {
    pub fn new(
        vectors: Vec<Vec<Complex>>,
        policy: &PrecisionPolicy,
    ) -> Result<Self, HarnessError> {
        let m = match vectors.first() {
            Some(v) => v.len(),
            None => return Err(HarnessError::TooFewVectors { m: 1, got: 0 }),
        };
        if m == 0 {
            return Err(HarnessError::DimensionMismatch { expected: 1, got: 0 });
        }
        for v in &vectors {
            if v.len() != m {
                return Err(HarnessError::DimensionMismatch { expected: m, got: v.len() });
            }
        }
        if vectors.len() < m {
            return Err(HarnessError::TooFewVectors { m, got: vectors.len() });
        }
        let margin = compute_margin(m, &vectors, policy.working_bits());
        let floor = policy.tolerance().mul(&Real::from_i64(10, policy.working_bits()));
        if !margin.gt(&floor) {
            return Err(HarnessError::DegenerateConfiguration);
        }
        Ok(NumericConfiguration { m, vectors, margin })
    }

    fn from_sampled(m: usize, vectors: Vec<Vec<Complex>>, margin: Real) -> Self {
        NumericConfiguration { m, vectors, margin }
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

    pub fn vectors(&self) -> &[Vec<Complex>] {
        &self.vectors
    }

    pub fn margin(&self) -> &Real {
        &self.margin
    }

    /// Face map: deletes vector j. Dropping a vector can only shrink the
    /// set of minors, so the margin never decreases and no recheck is
    /// needed; it is recomputed to keep the stored value exact.
    pub fn face(&self, j: usize, bits: usize) -> Result<Self, HarnessError> {
        if j >= self.vectors.len() || self.vectors.len() <= self.m {
            return Err(HarnessError::WrongVectorCount {
                expected: self.m + 1,
                got: self.vectors.len(),
            });
        }
        let vectors: Vec<Vec<Complex>> = self
            .vectors
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, v)| v.clone())
            .collect();
        let margin = compute_margin(self.m, &vectors, bits);
        Ok(NumericConfiguration { m: self.m, vectors, margin })
    }

    /// Applies a permutation of the vector slots; the multiset of minors
    /// is unchanged, so the margin carries over.
    pub fn act(&self, perm: &Permutation) -> Result<Self, HarnessError> {
        if perm.len() != self.vectors.len() {
            return Err(HarnessError::WrongVectorCount {
                expected: self.vectors.len(),
                got: perm.len(),
            });
        }
        let vectors: Vec<Vec<Complex>> =
            (0..self.vectors.len()).map(|i| self.vectors[perm.apply(i)].clone()).collect();
        Ok(NumericConfiguration { m: self.m, vectors, margin: self.margin.clone() })
    }

    /// Left action of a matrix on every vector; the margin is recomputed
    /// and revalidated against the policy.
    pub fn transform(
        &self,
        g: &CMat,
        policy: &PrecisionPolicy,
    ) -> Result<Self, HarnessError> {
        if g.m() != self.m {
            return Err(HarnessError::DimensionMismatch { expected: self.m, got: g.m() });
        }
        let vectors: Vec<Vec<Complex>> =
            self.vectors.iter().map(|v| g.mul_vec(v)).collect();
        NumericConfiguration::new(vectors, policy)
    }
}

fn draw_complex<R: Rng>(rng: &mut R, bits: usize) -> Complex {
    // Uniform on the closed disk of radius 2, by rejection from the
    // bounding square; avoids platform-dependent transcendental calls.
    loop {
        let x: f64 = rng.gen_range(-2.0..=2.0);
        let y: f64 = rng.gen_range(-2.0..=2.0);
        if x * x + y * y <= 4.0 {
            return Complex::from_f64(x, y, bits);
        }
    }
}

fn sampling_floor(policy: &PrecisionPolicy) -> Real {
    let bits = policy.working_bits();
    let spec = Real::pow10(-5, bits);
    let hard = policy.tolerance().mul(&Real::from_i64(100, bits));
    spec.max_real(&hard)
}

fn sample_with_floor<R: Rng>(
    m: usize,
    count: usize,
    floor: &Real,
    bits: usize,
    rng: &mut R,
    rejected: &mut u64,
) -> Result<NumericConfiguration, HarnessError> {
    for _ in 0..SAMPLE_BUDGET {
        let vectors: Vec<Vec<Complex>> =
            (0..count).map(|_| (0..m).map(|_| draw_complex(rng, bits)).collect()).collect();
        let margin = compute_margin(m, &vectors, bits);
        if margin.lt(floor) {
            *rejected += 1;
            continue;
        }
        return Ok(NumericConfiguration::from_sampled(m, vectors, margin));
    }
    Err(HarnessError::SamplingBudget { attempts: SAMPLE_BUDGET })
}

/// Draws a configuration of `count` vectors in ℂ^m with entries uniform on
/// the radius-2 disk, resampling until the genericity margin clears 10⁻⁵
/// and counting the rejections.
pub fn sample_configuration<R: Rng>(
    m: usize,
    count: usize,
    policy: &PrecisionPolicy,
    rng: &mut R,
    rejected: &mut u64,
) -> Result<NumericConfiguration, HarnessError> {
    sample_with_floor(m, count, &sampling_floor(policy), policy.working_bits(), rng, rejected)
}

/// Whether a function is defined on all of G^m_{m−1} or only on a generic
/// open subset of it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionDomain {
    Full,
    Generic,
}

/// A real-valued function of 2m-vector configurations (points of
/// G^m_{m−1}(ℂ)), defined and finite wherever the genericity margin clears
/// the policy threshold.
#[derive(Clone)]
pub struct GrassmannFunction {
    m: usize,
    domain: FunctionDomain,
    evaluator: Arc<dyn Fn(&NumericConfiguration) -> Result<Real, HarnessError> + Send + Sync>,
}

impl std::fmt::Debug for GrassmannFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GrassmannFunction")
            .field("m", &self.m)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl GrassmannFunction {
    pub fn new(
        m: usize,
        domain: FunctionDomain,
        evaluator: impl Fn(&NumericConfiguration) -> Result<Real, HarnessError>
            + Send
            + Sync
            + 'static,
    ) -> Self {
        GrassmannFunction { m, domain, evaluator: Arc::new(evaluator) }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn domain(&self) -> FunctionDomain {
        self.domain
    }

    pub fn eval(&self, c: &NumericConfiguration) -> Result<Real, HarnessError> {
        if c.m() != self.m {
            return Err(HarnessError::DimensionMismatch { expected: self.m, got: c.m() });
        }
        if c.len() != 2 * self.m {
            return Err(HarnessError::WrongVectorCount { expected: 2 * self.m, got: c.len() });
        }
        (self.evaluator)(c)
    }
}

/// D₁ on G¹₀(ℂ): a pair of nonzero scalars maps to log|v₁/v₀|.
pub fn grassmann_d1(policy: &PrecisionPolicy) -> GrassmannFunction {
    let bits = policy.working_bits();
    GrassmannFunction::new(1, FunctionDomain::Full, move |c| {
        let ratio = c.vectors()[1][0].div(&c.vectors()[0][0]);
        Ok(bw_d1(&ratio, bits)?)
    })
}

fn det2(u: &[Complex], v: &[Complex]) -> Complex {
    u[0].mul(&v[1]).sub(&u[1].mul(&v[0]))
}

/// Cross-ratio of a 4-vector configuration in ℂ², through the 2×2 minors:
/// r = (d₀₂ d₁₃)/(d₀₃ d₁₂).
pub fn numeric_cross_ratio(c: &NumericConfiguration) -> Result<Complex, HarnessError> {
    if c.m() != 2 {
        return Err(HarnessError::DimensionMismatch { expected: 2, got: c.m() });
    }
    if c.len() != 4 {
        return Err(HarnessError::WrongVectorCount { expected: 4, got: c.len() });
    }
    let v = c.vectors();
    let num = det2(&v[0], &v[2]).mul(&det2(&v[1], &v[3]));
    let den = det2(&v[0], &v[3]).mul(&det2(&v[1], &v[2]));
    Ok(num.div(&den))
}

/// The raw pullback bw_d2 ∘ cross_ratio on G²₁(ℂ), without symmetrization.
pub fn grassmann_d2_unsymmetrized(policy: &PrecisionPolicy) -> GrassmannFunction {
    let bits = policy.working_bits();
    GrassmannFunction::new(2, FunctionDomain::Full, move |c| {
        let r = numeric_cross_ratio(c)?;
        Ok(bw_d2(&r, bits)?)
    })
}

/// The Grassmann 2-logarithm on G²₁(ℂ): the Bloch-Wigner dilogarithm of
/// the cross-ratio, skew-symmetrized by Alt₄ so that σ*D₂ = sgn(σ)D₂ holds
/// by construction.
pub fn grassmann_d2(policy: &PrecisionPolicy) -> GrassmannFunction {
    let bits = policy.working_bits();
    let perms: Vec<(Permutation, i32)> =
        Permutation::all(4).into_iter().map(|p| { let s = p.sign(); (p, s) }).collect();
    GrassmannFunction::new(2, FunctionDomain::Full, move |c| {
        let mut acc = Real::zero(bits);
        for (perm, sign) in &perms {
            let permuted = c.act(perm)?;
            let r = numeric_cross_ratio(&permuted)?;
            let value = bw_d2(&r, bits)?;
            acc = if *sign > 0 { acc.add(&value) } else { acc.sub(&value) };
        }
        Ok(acc.div(&Real::from_i64(24, bits)))
    })
}

fn residual_outcome(
    label: &str,
    trials: u64,
    rejected: u64,
    max_residual: Real,
    policy: &PrecisionPolicy,
    seed: u64,
) -> CheckReport {
    let tolerance = policy.tolerance();
    CheckReport {
        check: label.to_string(),
        trials,
        rejected,
        max_residual: max_residual.decimal(20),
        tolerance: policy.tolerance_string(),
        pass: max_residual.lt(&tolerance),
        seed,
    }
}

/// Samples (2m+1)-vector configurations (points of G^m_m(ℂ)) and measures
/// the functional-equation residual |Σ_j (−1)^j f(face_j)|.
pub fn verify_functional_equation(
    f: &GrassmannFunction,
    trials: u64,
    policy: &PrecisionPolicy,
    seed: u64,
) -> Result<CheckReport, HarnessError> {
    if trials == 0 {
        return Err(HarnessError::NoTrials);
    }
    let m = f.m();
    let bits = policy.working_bits();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejected = 0u64;
    let mut max_residual = Real::zero(bits);
    for _ in 0..trials {
        let c = sample_configuration(m, 2 * m + 1, policy, &mut rng, &mut rejected)?;
        let residual = functional_equation_residual(f, &c, bits)?;
        max_residual = max_residual.max_real(&residual);
    }
    Ok(residual_outcome("functional-equation", trials, rejected, max_residual, policy, seed))
}

fn functional_equation_residual(
    f: &GrassmannFunction,
    c: &NumericConfiguration,
    bits: usize,
) -> Result<Real, HarnessError> {
    let mut acc = Real::zero(bits);
    for j in 0..c.len() {
        let value = f.eval(&c.face(j, bits)?)?;
        acc = if j % 2 == 0 { acc.add(&value) } else { acc.sub(&value) };
    }
    Ok(acc.abs())
}

/// Samples 2m-vector configurations and measures the worst deviation of
/// f(σ·c) from sgn(σ)·f(c) over all σ ∈ Σ_{2m}.
pub fn verify_skew_symmetry(
    f: &GrassmannFunction,
    label: &str,
    trials: u64,
    policy: &PrecisionPolicy,
    seed: u64,
) -> Result<CheckReport, HarnessError> {
    if trials == 0 {
        return Err(HarnessError::NoTrials);
    }
    let m = f.m();
    let bits = policy.working_bits();
    let perms = Permutation::all(2 * m);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejected = 0u64;
    let mut max_residual = Real::zero(bits);
    for _ in 0..trials {
        let c = sample_configuration(m, 2 * m, policy, &mut rng, &mut rejected)?;
        let base = f.eval(&c)?;
        for perm in &perms {
            let expected = if perm.sign() > 0 { base.clone() } else { base.neg() };
            let actual = f.eval(&c.act(perm)?)?;
            max_residual = max_residual.max_real(&actual.sub(&expected).abs());
        }
    }
    Ok(residual_outcome(label, trials, rejected, max_residual, policy, seed))
}

/// Square complex matrix, row major.
#[derive(Debug, Clone)]
pub struct CMat {
    m: usize,
    rows: Vec<Vec<Complex>>,
}

impl CMat {
    pub fn new(rows: Vec<Vec<Complex>>) -> Result<Self, HarnessError> {
        let m = rows.len();
        if m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(HarnessError::MatrixShape);
        }
        Ok(CMat { m, rows })
    }

    pub fn identity(m: usize, bits: usize) -> Self {
        let rows = (0..m)
            .map(|r| {
                (0..m)
                    .map(|c| if r == c { Complex::one(bits) } else { Complex::zero(bits) })
                    .collect()
            })
            .collect();
        CMat { m, rows }
    }

    pub fn random<R: Rng>(m: usize, bits: usize, rng: &mut R) -> Self {
        let rows =
            (0..m).map(|_| (0..m).map(|_| draw_complex(rng, bits)).collect()).collect();
        CMat { m, rows }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> &[Vec<Complex>] {
        &self.rows
    }

    pub fn mul(&self, other: &CMat) -> Result<CMat, HarnessError> {
        if self.m != other.m {
            return Err(HarnessError::DimensionMismatch { expected: self.m, got: other.m });
        }
        let bits = self.rows[0][0].bits();
        let rows = (0..self.m)
            .map(|r| {
                (0..self.m)
                    .map(|c| {
                        let mut acc = Complex::zero(bits);
                        for k in 0..self.m {
                            acc = acc.add(&self.rows[r][k].mul(&other.rows[k][c]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(CMat { m: self.m, rows })
    }

    pub fn mul_vec(&self, v: &[Complex]) -> Vec<Complex> {
        self.rows
            .iter()
            .map(|row| {
                let mut acc = Complex::zero(row[0].bits());
                for (a, x) in row.iter().zip(v) {
                    acc = acc.add(&a.mul(x));
                }
                acc
            })
            .collect()
    }

    pub fn det(&self, bits: usize) -> Complex {
        // det Aᵀ = det A, so the rows can serve as columns.
        let cols: Vec<&[Complex]> = self.rows.iter().map(|r| r.as_slice()).collect();
        det_columns(self.m, &cols, bits)
    }
}

/// A sample point for the cocycle harness: a tuple of group elements
/// together with the base vector, valid when the image tuple (g₀e,…,g_ne)
/// is in numerically general position.
#[derive(Debug, Clone)]
pub struct CocycleSample {
    matrices: Vec<CMat>,
    e: Vec<Complex>,
    image: NumericConfiguration,
}

impl CocycleSample {
    pub fn new(
        matrices: Vec<CMat>,
        e: Vec<Complex>,
        policy: &PrecisionPolicy,
    ) -> Result<Self, HarnessError> {
        if e.iter().all(|z| z.is_zero()) {
            return Err(HarnessError::ZeroBaseVector);
        }
        for g in &matrices {
            if g.m() != e.len() {
                return Err(HarnessError::DimensionMismatch { expected: e.len(), got: g.m() });
            }
        }
        let image =
            NumericConfiguration::new(matrices.iter().map(|g| g.mul_vec(&e)).collect(), policy)?;
        Ok(CocycleSample { matrices, e, image })
    }

    pub fn matrices(&self) -> &[CMat] {
        &self.matrices
    }

    pub fn base_vector(&self) -> &[Complex] {
        &self.e
    }

    pub fn image_configuration(&self) -> &NumericConfiguration {
        &self.image
    }
}

/// A real-valued function of n-tuples of group elements (an (n−1)-cochain
/// in the homogeneous picture).
#[derive(Clone)]
pub struct Cochain {
    m: usize,
    arity: usize,
    evaluator: Arc<dyn Fn(&[CMat]) -> Result<Real, HarnessError> + Send + Sync>,
}

impl std::fmt::Debug for Cochain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Cochain")
            .field("m", &self.m)
            .field("arity", &self.arity)
            .finish_non_exhaustive()
    }
}

impl Cochain {
    pub fn new(
        m: usize,
        arity: usize,
        evaluator: impl Fn(&[CMat]) -> Result<Real, HarnessError> + Send + Sync + 'static,
    ) -> Self {
        Cochain { m, arity, evaluator: Arc::new(evaluator) }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn eval(&self, gs: &[CMat]) -> Result<Real, HarnessError> {
        if gs.len() != self.arity {
            return Err(HarnessError::WrongArity { expected: self.arity, got: gs.len() });
        }
        (self.evaluator)(gs)
    }
}

/// The evaluation cocycle f^e(g₀,…,g_{2m−1}) = f([g₀e,…,g_{2m−1}e]).
pub fn build_cocycle(
    f: &GrassmannFunction,
    e: &[Complex],
    policy: &PrecisionPolicy,
) -> Result<Cochain, HarnessError> {
    if e.iter().all(|z| z.is_zero()) {
        return Err(HarnessError::ZeroBaseVector);
    }
    if e.len() != f.m() {
        return Err(HarnessError::DimensionMismatch { expected: f.m(), got: e.len() });
    }
    let m = f.m();
    let f = f.clone();
    let e: Vec<Complex> = e.to_vec();
    let policy = *policy;
    Ok(Cochain::new(m, 2 * m, move |gs| {
        let vectors: Vec<Vec<Complex>> = gs.iter().map(|g| g.mul_vec(&e)).collect();
        let c = NumericConfiguration::new(vectors, &policy)?;
        f.eval(&c)
    }))
}

/// Discrete coboundary: δc(g₀,…,g_n) = Σ_i (−1)^i c(…, ĝ_i, …).
pub fn coboundary(c: &Cochain) -> Cochain {
    let inner = c.clone();
    let bits_hint = 64;
    Cochain::new(c.m(), c.arity() + 1, move |gs| {
        let mut acc: Option<Real> = None;
        for i in 0..gs.len() {
            let omitted: Vec<CMat> = gs
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let value = inner.eval(&omitted)?;
            let signed = if i % 2 == 0 { value } else { value.neg() };
            acc = Some(match acc.take() {
                None => signed,
                Some(cur) => cur.add(&signed),
            });
        }
        Ok(acc.unwrap_or_else(|| Real::zero(bits_hint)))
    })
}

/// Base change φ_h: precomposition with right multiplication by h. Carries
/// the evaluation cocycle f^e to f^{he}.
pub fn base_change(
    h: &CMat,
    c: &Cochain,
    policy: &PrecisionPolicy,
) -> Result<Cochain, HarnessError> {
    let bits = policy.working_bits();
    let floor = policy.tolerance().mul(&Real::from_i64(10, bits));
    if !h.det(bits).abs().gt(&floor) {
        return Err(HarnessError::SingularMatrix);
    }
    let h = h.clone();
    let inner = c.clone();
    Ok(Cochain::new(c.m(), c.arity(), move |gs| {
        let shifted: Vec<CMat> =
            gs.iter().map(|g| g.mul(&h)).collect::<Result<_, _>>()?;
        inner.eval(&shifted)
    }))
}

fn sample_cocycle_tuple<R: Rng>(
    m: usize,
    count: usize,
    e: &[Complex],
    policy: &PrecisionPolicy,
    rng: &mut R,
    rejected: &mut u64,
) -> Result<Vec<CMat>, HarnessError> {
    let bits = policy.working_bits();
    let floor = sampling_floor(policy);
    for _ in 0..SAMPLE_BUDGET {
        let matrices: Vec<CMat> = (0..count).map(|_| CMat::random(m, bits, rng)).collect();
        let vectors: Vec<Vec<Complex>> = matrices.iter().map(|g| g.mul_vec(e)).collect();
        if compute_margin(m, &vectors, bits).lt(&floor) {
            *rejected += 1;
            continue;
        }
        return Ok(matrices);
    }
    Err(HarnessError::SamplingBudget { attempts: SAMPLE_BUDGET })
}

/// Samples (2m+1)-tuples of group elements whose image configurations are
/// generic and measures |δf^e| on each.
pub fn verify_cocycle(
    f: &GrassmannFunction,
    e: &[Complex],
    trials: u64,
    policy: &PrecisionPolicy,
    seed: u64,
) -> Result<CheckReport, HarnessError> {
    if trials == 0 {
        return Err(HarnessError::NoTrials);
    }
    let m = f.m();
    let bits = policy.working_bits();
    let cocycle = build_cocycle(f, e, policy)?;
    let delta = coboundary(&cocycle);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejected = 0u64;
    let mut max_residual = Real::zero(bits);
    for _ in 0..trials {
        let gs = sample_cocycle_tuple(m, 2 * m + 1, e, policy, &mut rng, &mut rejected)?;
        let residual = delta.eval(&gs)?.abs();
        max_residual = max_residual.max_real(&residual);
    }
    Ok(residual_outcome("cocycle-coboundary", trials, rejected, max_residual, policy, seed))
}

/// Samples a fresh h, e and 2m-tuple per trial and measures the defect of
/// the base-change identity φ_h(f^e) = f^{he}.
pub fn verify_base_change(
    f: &GrassmannFunction,
    trials: u64,
    policy: &PrecisionPolicy,
    seed: u64,
) -> Result<CheckReport, HarnessError> {
    if trials == 0 {
        return Err(HarnessError::NoTrials);
    }
    let m = f.m();
    let bits = policy.working_bits();
    let floor = policy.tolerance().mul(&Real::from_i64(10, bits));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejected = 0u64;
    let mut max_residual = Real::zero(bits);
    for _ in 0..trials {
        let h = loop {
            let cand = CMat::random(m, bits, &mut rng);
            if cand.det(bits).abs().gt(&floor) {
                break cand;
            }
            rejected += 1;
        };
        let e: Vec<Complex> = (0..m).map(|_| draw_complex(&mut rng, bits)).collect();
        if e.iter().all(|z| z.is_zero()) {
            rejected += 1;
            continue;
        }
        let he = h.mul_vec(&e);
        let gs = sample_cocycle_tuple(m, 2 * m, &he, policy, &mut rng, &mut rejected)?;
        let lhs = base_change(&h, &build_cocycle(f, &e, policy)?, policy)?.eval(&gs)?;
        let rhs = build_cocycle(f, &he, policy)?.eval(&gs)?;
        max_residual = max_residual.max_real(&lhs.sub(&rhs).abs());
    }
    Ok(residual_outcome("base-change", trials, rejected, max_residual, policy, seed))
}

/// Both sides of the Dedekind zeta factorization at s = 2 for the
/// imaginary quadratic field of discriminant d, compared through
/// independent evaluation routes.
#[derive(Debug, Clone)]
pub struct ZetaDemo {
    pub discriminant: i64,
    pub lhs: Real,
    pub rhs: Real,
    pub residual: Real,
    pub tolerance: Real,
    pub pass: bool,
}

/// Compares ζ(2)·L(2, χ_d) against (π²/6)·(2/√|d|)·D₂(e^{2πi/|d|}). The
/// left side goes through the accelerated zeta and Hurwitz series, the
/// right through the polylogarithm evaluator, so agreement cross-checks
/// genuinely independent pipelines.
pub fn zeta_demo(d: i64, policy: &PrecisionPolicy) -> Result<ZetaDemo, HarnessError> {
    let bits = policy.working_bits();
    let l_value = dirichlet_l(d, bits)?;
    let lhs = zeta_int(2, bits).mul(&l_value);
    let q = -d;
    let pi = Real::pi(bits);
    let theta = pi.mul(&Real::from_i64(2, bits)).div(&Real::from_i64(q, bits));
    let root = Complex::from_polar(&Real::from_i64(1, bits), &theta);
    let d2 = bw_d2(&root, bits)?;
    let scale = pi
        .powi(2)
        .div(&Real::from_i64(6, bits))
        .mul(&Real::from_i64(2, bits))
        .div(&Real::from_i64(q, bits).sqrt());
    let rhs = scale.mul(&d2);
    let residual = lhs.sub(&rhs).abs();
    let tolerance = Real::pow10(-(i64::from(policy.prec()) - 15), bits);
    let pass = residual.lt(&tolerance);
    Ok(ZetaDemo { discriminant: d, lhs, rhs, residual, tolerance, pass })
}

/// Exact rational cross-ratio of four scalars through the same minor
/// pattern as [`numeric_cross_ratio`], for oracle use in tests.
pub fn rational_cross_ratio(points: &[BigRational; 4]) -> Option<BigRational> {
    let diff = |i: usize, j: usize| &points[j] - &points[i];
    let den = diff(0, 3) * diff(1, 2);
    if den.is_zero() {
        return None;
    }
    Some(diff(0, 2) * diff(1, 3) / den)
}
