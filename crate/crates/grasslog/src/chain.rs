//! Formal linear combinations of configurations, the simplicial boundary,
//! the alternation projector, and the generic-cone contracting homotopy.
//!
//! Chains come in two basis modes: equivariant (basis elements are plain
//! configurations) and coinvariant (basis elements are canonical orbit
//! representatives, renormalized on every insertion). Coefficients are
//! either integers or rationals; the alternation projector divides by ℓ!
//! and therefore refuses integer-coefficient chains.

use crate::config::{ConfigError, Configuration, Permutation};
use crate::field::{FieldDescriptor, FieldError, Scalar, Vector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum ChainError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("term has m={got_m}, degree={got_degree}; chain wants m={m}, degree={degree}")]
    TermShape { m: usize, degree: usize, got_m: usize, got_degree: usize },
    #[error("chains have different shapes or modes")]
    ShapeMismatch,
    #[error("coefficient {0} is not an integer (chain is in integer mode)")]
    NonIntegerCoefficient(BigRational),
    #[error("operation needs rational coefficients (division by a factorial)")]
    NeedsRationalCoefficients,
    #[error("operation is defined on equivariant chains only")]
    NotEquivariant,
    #[error("boundary of a degree-0 chain is not defined")]
    ZeroDegreeBoundary,
    #[error("homotopy needs a positive-degree cycle")]
    NotPositiveDegree,
    #[error("not a cycle; boundary defect has {} terms", .defect.terms().len())]
    NotACycle { defect: Box<Chain> },
    #[error("no vector generic for the given configurations exists over {field}")]
    Exhausted { field: FieldDescriptor },
}

/// Basis discipline of a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainMode {
    /// Basis elements are configurations as given.
    Equivariant,
    /// Basis elements are canonical orbit representatives.
    Coinvariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffMode {
    Integer,
    Rational,
}

/// A formal linear combination of same-shaped configurations.
/// Zero coefficients are never stored; in coinvariant mode every stored
/// basis element is in canonical orbit form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    desc: FieldDescriptor,
    m: usize,
    degree: usize,
    mode: ChainMode,
    coeffs: CoeffMode,
    terms: BTreeMap<Configuration, BigRational>,
}

impl Chain {
    pub fn zero(
        desc: FieldDescriptor,
        m: usize,
        degree: usize,
        mode: ChainMode,
        coeffs: CoeffMode,
    ) -> Self {
        Chain { desc, m, degree, mode, coeffs, terms: BTreeMap::new() }
    }

    /// The configuration with coefficient 1 as an equivariant rational chain.
    pub fn single(config: Configuration) -> Self {
        let mut c = Chain::zero(
            config.descriptor(),
            config.m(),
            config.degree(),
            ChainMode::Equivariant,
            CoeffMode::Rational,
        );
        c.terms.insert(config, BigRational::one());
        c
    }

    /// The orbit of the configuration with coefficient 1, as a coinvariant
    /// integer chain.
    pub fn single_orbit(config: &Configuration) -> Result<Self, ChainError> {
        let mut c = Chain::zero(
            config.descriptor(),
            config.m(),
            config.degree(),
            ChainMode::Coinvariant,
            CoeffMode::Integer,
        );
        c.add_term(config.clone(), BigRational::one())?;
        Ok(c)
    }

    pub fn add_term(&mut self, config: Configuration, coeff: BigRational) -> Result<(), ChainError> {
        if config.m() != self.m || config.degree() != self.degree || config.descriptor() != self.desc {
            return Err(ChainError::TermShape {
                m: self.m,
                degree: self.degree,
                got_m: config.m(),
                got_degree: config.degree(),
            });
        }
        if self.coeffs == CoeffMode::Integer && !coeff.is_integer() {
            return Err(ChainError::NonIntegerCoefficient(coeff));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let key = match self.mode {
            ChainMode::Equivariant => config,
            ChainMode::Coinvariant => config.orbit_canonical()?,
        };
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
        Ok(())
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.desc
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn mode(&self) -> ChainMode {
        self.mode
    }

    pub fn coeff_mode(&self) -> CoeffMode {
        self.coeffs
    }

    pub fn terms(&self) -> &BTreeMap<Configuration, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_shape(&self, other: &Chain) -> bool {
        (self.desc, self.m, self.degree, self.mode, self.coeffs)
            == (other.desc, other.m, other.degree, other.mode, other.coeffs)
    }

    pub fn add(&self, other: &Chain) -> Result<Chain, ChainError> {
        if !self.same_shape(other) {
            return Err(ChainError::ShapeMismatch);
        }
        let mut out = self.clone();
        for (config, coeff) in &other.terms {
            out.add_term(config.clone(), coeff.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, q: &BigRational) -> Result<Chain, ChainError> {
        if self.coeffs == CoeffMode::Integer && !q.is_integer() {
            return Err(ChainError::NonIntegerCoefficient(q.clone()));
        }
        if q.is_zero() {
            return Ok(Chain::zero(self.desc, self.m, self.degree, self.mode, self.coeffs));
        }
        let terms = self.terms.iter().map(|(c, x)| (c.clone(), x * q)).collect();
        Ok(Chain { terms, ..self.clone() })
    }

    pub fn neg(&self) -> Chain {
        self.scale(&-BigRational::one()).expect("-1 is an integer")
    }

    pub fn sub(&self, other: &Chain) -> Result<Chain, ChainError> {
        self.add(&other.neg())
    }

    /// Forgets the configurations down to their orbits.
    pub fn to_coinvariant(&self) -> Result<Chain, ChainError> {
        let mut out = Chain::zero(self.desc, self.m, self.degree, ChainMode::Coinvariant, self.coeffs);
        for (config, coeff) in &self.terms {
            out.add_term(config.clone(), coeff.clone())?;
        }
        Ok(out)
    }

    /// Simplicial boundary ∂ = Σ_j (−1)^j A_j. In coinvariant mode the
    /// faces are renormalized as they are collected.
    pub fn boundary(&self) -> Result<Chain, ChainError> {
        if self.degree == 0 {
            return Err(ChainError::ZeroDegreeBoundary);
        }
        let mut out = Chain::zero(self.desc, self.m, self.degree - 1, self.mode, self.coeffs);
        for (config, coeff) in &self.terms {
            for j in 0..config.len() {
                let signed = if j % 2 == 0 { coeff.clone() } else { -coeff.clone() };
                out.add_term(config.face(j)?, signed)?;
            }
        }
        Ok(out)
    }

    /// Alternation projector Alt = (1/ℓ!) Σ_{σ ∈ S_ℓ} sgn(σ)·σ over the
    /// tuple positions; requires rational coefficients.
    pub fn alt(&self) -> Result<Chain, ChainError> {
        if self.coeffs == CoeffMode::Integer {
            return Err(ChainError::NeedsRationalCoefficients);
        }
        let l = self.degree + 1;
        let perms = Permutation::all(l);
        let factorial: BigInt = (1..=l as u64).product::<u64>().into();
        let inv_fact = BigRational::new(BigInt::one(), factorial);
        let mut out = Chain::zero(self.desc, self.m, self.degree, self.mode, self.coeffs);
        for (config, coeff) in &self.terms {
            for sigma in &perms {
                let signed = if sigma.sign() > 0 { coeff.clone() } else { -coeff.clone() };
                out.add_term(config.act(sigma)?, signed * &inv_fact)?;
            }
        }
        Ok(out)
    }

    /// Applies an invertible matrix to every basis configuration
    /// (equivariant mode only).
    pub fn transform(&self, g: &crate::field::Matrix) -> Result<Chain, ChainError> {
        if self.mode != ChainMode::Equivariant {
            return Err(ChainError::NotEquivariant);
        }
        let mut out = Chain::zero(self.desc, self.m, self.degree, self.mode, self.coeffs);
        for (config, coeff) in &self.terms {
            out.add_term(config.transform(g)?, coeff.clone())?;
        }
        Ok(out)
    }

    /// Prepends v to every term (equivariant mode only). Fails if some
    /// coned tuple leaves general position.
    pub fn cone(&self, v: &Vector) -> Result<Chain, ChainError> {
        if self.mode != ChainMode::Equivariant {
            return Err(ChainError::NotEquivariant);
        }
        let mut out = Chain::zero(self.desc, self.m, self.degree + 1, self.mode, self.coeffs);
        for (config, coeff) in &self.terms {
            let mut vectors = Vec::with_capacity(config.len() + 1);
            vectors.push(v.clone());
            vectors.extend_from_slice(config.vectors());
            out.add_term(Configuration::new(self.m, vectors)?, coeff.clone())?;
        }
        Ok(out)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (config, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " {} ", if coeff.is_negative() { "-" } else { "+" })?;
            } else if coeff.is_negative() {
                write!(f, "-")?;
            }
            let abs = coeff.abs();
            if !abs.is_one() {
                write!(f, "{abs}·")?;
            }
            write!(f, "{config}")?;
        }
        Ok(())
    }
}

/// Finds a vector whose prepending preserves general position for every
/// given configuration.
///
/// The search is deterministic: standard basis vectors first, then integer
/// vectors by ascending max-norm, lexicographic within a norm shell with
/// components ordered 0, 1, −1, 2, −2, …. Over 𝔽_p all nonzero vectors are
/// tried lexicographically and exhaustion is reported explicitly.
pub fn find_generic_vector(
    desc: FieldDescriptor,
    m: usize,
    configs: &[&Configuration],
) -> Result<Vector, ChainError> {
    for c in configs {
        if c.m() != m || c.descriptor() != desc {
            return Err(ChainError::TermShape {
                m,
                degree: 0,
                got_m: c.m(),
                got_degree: c.degree(),
            });
        }
    }
    for v in candidate_vectors(desc, m) {
        if v.is_zero() {
            continue;
        }
        let mut ok = true;
        for c in configs {
            let mut vectors = Vec::with_capacity(c.len() + 1);
            vectors.push(v.clone());
            vectors.extend_from_slice(c.vectors());
            if !crate::config::is_general_position(m, &vectors)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(v);
        }
    }
    Err(ChainError::Exhausted { field: desc })
}

fn candidate_vectors(desc: FieldDescriptor, m: usize) -> Box<dyn Iterator<Item = Vector>> {
    match desc {
        FieldDescriptor::Prime { p } => {
            let mut all = Vec::new();
            let mut current = vec![0u64; m];
            loop {
                if current.iter().any(|&r| r != 0) {
                    all.push(Vector(current.iter().map(|&r| Scalar::Prime { r, p }).collect()));
                }
                let mut i = m;
                loop {
                    if i == 0 {
                        return Box::new(all.into_iter());
                    }
                    i -= 1;
                    current[i] += 1;
                    if current[i] < p {
                        break;
                    }
                    current[i] = 0;
                }
            }
        }
        _ => {
            let basis = (0..m).map(move |i| Vector::standard_basis(desc, m, i));
            // The shell cap only bounds the loop; over an infinite field a
            // generic vector for finitely many constraints appears long
            // before max-norm 50.
            let shells = (1i64..=50).flat_map(move |norm| integer_shell(desc, m, norm));
            Box::new(basis.chain(shells))
        }
    }
}

/// Integer vectors with max-norm exactly `norm`, lexicographic in the
/// component order 0, 1, −1, 2, −2, ….
fn integer_shell(desc: FieldDescriptor, m: usize, norm: i64) -> Vec<Vector> {
    let values: Vec<i64> = std::iter::once(0).chain((1..=norm).flat_map(|v| [v, -v])).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; m];
    loop {
        let coords: Vec<i64> = idx.iter().map(|&i| values[i]).collect();
        if coords.iter().map(|c| c.abs()).max() == Some(norm) {
            out.push(Vector(coords.iter().map(|&c| Scalar::from_integer(desc, c)).collect()));
        }
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < values.len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Contracting homotopy of the configuration complex: for a positive-degree
/// cycle z returns w = v·z with v generic for every term of z, so that
/// ∂w = z exactly.
pub fn cone_homotopy(z: &Chain) -> Result<Chain, ChainError> {
    if z.mode() != ChainMode::Equivariant {
        return Err(ChainError::NotEquivariant);
    }
    if z.degree() == 0 {
        return Err(ChainError::NotPositiveDegree);
    }
    let defect = z.boundary()?;
    if !defect.is_zero() {
        return Err(ChainError::NotACycle { defect: Box::new(defect) });
    }
    if z.is_zero() {
        return Ok(Chain::zero(z.descriptor(), z.m(), z.degree() + 1, z.mode(), z.coeff_mode()));
    }
    let configs: Vec<&Configuration> = z.terms().keys().collect();
    let v = find_generic_vector(z.descriptor(), z.m(), &configs)?;
    z.cone(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::random_configuration;
    use crate::field::test_support::random_scalar;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qv(entries: &[i64]) -> Vector {
        Vector(
            entries
                .iter()
                .map(|&n| Scalar::Rational(BigRational::from_integer(n.into())))
                .collect(),
        )
    }

    fn random_chain<R: Rng>(
        desc: FieldDescriptor,
        m: usize,
        degree: usize,
        terms: usize,
        rng: &mut R,
    ) -> Chain {
        let mut c = Chain::zero(desc, m, degree, ChainMode::Equivariant, CoeffMode::Rational);
        for _ in 0..terms {
            let config = random_configuration(desc, m, degree + 1, rng).unwrap();
            let num: i64 = rng.gen_range(-5..=5);
            let den: i64 = rng.gen_range(1..=3);
            c.add_term(config, BigRational::new(num.into(), den.into())).unwrap();
        }
        c
    }

    #[test]
    fn boundary_alternates_faces() {
        let c = Configuration::new(2, vec![qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 1])]).unwrap();
        let b = Chain::single(c.clone()).boundary().unwrap();
        let mut expected =
            Chain::zero(FieldDescriptor::Rational, 2, 1, ChainMode::Equivariant, CoeffMode::Rational);
        expected.add_term(c.face(0).unwrap(), BigRational::one()).unwrap();
        expected.add_term(c.face(1).unwrap(), -BigRational::one()).unwrap();
        expected.add_term(c.face(2).unwrap(), BigRational::one()).unwrap();
        assert_eq!(b, expected);
    }

    #[test]
    fn boundary_squares_to_zero_in_both_modes() {
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        for degree in 2..=4usize {
            for _ in 0..10 {
                let c = random_chain(FieldDescriptor::Rational, 2, degree, 3, &mut rng);
                assert!(c.boundary().unwrap().boundary().unwrap().is_zero(), "degree {degree}");
                let ci = c.to_coinvariant().unwrap();
                assert!(ci.boundary().unwrap().boundary().unwrap().is_zero(), "degree {degree}");
            }
        }
    }

    #[test]
    fn boundary_commutes_with_gl_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(27);
        let desc = FieldDescriptor::Rational;
        for _ in 0..10 {
            let c = random_chain(desc, 2, 2, 2, &mut rng);
            let g = loop {
                let g = crate::field::Matrix::new(
                    2,
                    2,
                    (0..4).map(|_| random_scalar(desc, &mut rng)).collect(),
                )
                .unwrap();
                if !g.det().unwrap().is_zero() {
                    break g;
                }
            };
            let lhs = c.transform(&g).unwrap().boundary().unwrap();
            let rhs = c.boundary().unwrap().transform(&g).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn coinvariant_boundary_is_well_defined() {
        let mut rng = ChaCha8Rng::seed_from_u64(28);
        for _ in 0..10 {
            let c = random_chain(FieldDescriptor::Rational, 2, 3, 3, &mut rng);
            let lhs = c.to_coinvariant().unwrap().boundary().unwrap();
            let rhs = c.boundary().unwrap().to_coinvariant().unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn boundary_of_degree_zero_rejected() {
        let c = Chain::single(Configuration::new(1, vec![qv(&[2])]).unwrap());
        assert!(matches!(c.boundary(), Err(ChainError::ZeroDegreeBoundary)));
    }

    #[test]
    fn integer_mode_refuses_fractions() {
        let config = Configuration::new(2, vec![qv(&[1, 0]), qv(&[0, 1])]).unwrap();
        let mut c = Chain::zero(FieldDescriptor::Rational, 2, 1, ChainMode::Equivariant, CoeffMode::Integer);
        let half = BigRational::new(1.into(), 2.into());
        assert!(matches!(
            c.add_term(config.clone(), half.clone()),
            Err(ChainError::NonIntegerCoefficient(_))
        ));
        c.add_term(config, BigRational::from_integer(3.into())).unwrap();
        assert!(matches!(c.alt(), Err(ChainError::NeedsRationalCoefficients)));
        assert!(matches!(c.scale(&half), Err(ChainError::NonIntegerCoefficient(_))));
        assert!(c.boundary().is_ok());
    }

    #[test]
    fn alt_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..5 {
            let c = random_chain(FieldDescriptor::Rational, 2, 3, 2, &mut rng);
            let once = c.alt().unwrap();
            assert_eq!(once.alt().unwrap(), once);
        }
    }

    #[test]
    fn alt_kills_symmetric_pairs() {
        let v0 = qv(&[1, 0]);
        let v1 = qv(&[1, 1]);
        let a = Configuration::new(2, vec![v0.clone(), v1.clone()]).unwrap();
        let b = Configuration::new(2, vec![v1, v0]).unwrap();
        let sum = Chain::single(a).add(&Chain::single(b)).unwrap();
        assert!(sum.alt().unwrap().is_zero());
    }

    #[test]
    fn alt_commutes_with_boundary() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for degree in 1..=3usize {
            for _ in 0..5 {
                let c = random_chain(FieldDescriptor::Rational, 2, degree, 2, &mut rng);
                let lhs = c.alt().unwrap().boundary().unwrap();
                let rhs = c.boundary().unwrap().alt().unwrap();
                assert_eq!(lhs, rhs, "degree {degree}");
            }
        }
    }

    #[test]
    fn cancelling_terms_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let config = random_configuration(FieldDescriptor::Rational, 2, 3, &mut rng).unwrap();
        let mut c = Chain::zero(FieldDescriptor::Rational, 2, 2, ChainMode::Equivariant, CoeffMode::Rational);
        c.add_term(config.clone(), BigRational::new(2.into(), 3.into())).unwrap();
        c.add_term(config, BigRational::new((-2).into(), 3.into())).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn coinvariant_mode_collapses_orbits() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let desc = FieldDescriptor::Rational;
        let config = random_configuration(desc, 2, 4, &mut rng).unwrap();
        let g = crate::field::Matrix::new(
            2,
            2,
            vec![
                Scalar::from_integer(desc, 2),
                Scalar::from_integer(desc, 1),
                Scalar::from_integer(desc, 1),
                Scalar::from_integer(desc, 1),
            ],
        )
        .unwrap();
        let moved = config.transform(&g).unwrap();
        let mut c = Chain::zero(desc, 2, 3, ChainMode::Coinvariant, CoeffMode::Integer);
        c.add_term(config, BigRational::one()).unwrap();
        c.add_term(moved, -BigRational::one()).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn generic_vector_candidate_order() {
        let desc = FieldDescriptor::Rational;
        assert_eq!(find_generic_vector(desc, 2, &[]).unwrap(), qv(&[1, 0]));
        let frame = Configuration::new(2, vec![qv(&[1, 0]), qv(&[0, 1])]).unwrap();
        assert_eq!(find_generic_vector(desc, 2, &[&frame]).unwrap(), qv(&[1, 1]));
        let point = Configuration::new(1, vec![qv(&[5])]).unwrap();
        assert_eq!(find_generic_vector(desc, 1, &[&point]).unwrap(), qv(&[1]));
    }

    #[test]
    fn generic_vector_exhaustion_over_f2() {
        let f2 = FieldDescriptor::prime(2).unwrap();
        let one = Scalar::one(f2);
        let zero = Scalar::zero(f2);
        let all_dirs = Configuration::new(
            2,
            vec![
                Vector(vec![one.clone(), zero.clone()]),
                Vector(vec![zero.clone(), one.clone()]),
                Vector(vec![one.clone(), one.clone()]),
            ],
        )
        .unwrap();
        assert!(matches!(
            find_generic_vector(f2, 2, &[&all_dirs]),
            Err(ChainError::Exhausted { .. })
        ));
        let two_dirs = Configuration::new(
            2,
            vec![Vector(vec![one.clone(), zero.clone()]), Vector(vec![zero, one])],
        )
        .unwrap();
        assert!(find_generic_vector(f2, 2, &[&two_dirs]).is_ok());
    }

    #[test]
    fn generic_vector_over_quadratic_field() {
        let desc = FieldDescriptor::quadratic(2).unwrap();
        let sqrt2 = Scalar::quadratic(BigRational::zero(), BigRational::one(), 2).unwrap();
        let u = Vector(vec![Scalar::one(desc), sqrt2]);
        let c = Configuration::new(2, vec![u.clone()]).unwrap();
        let v = find_generic_vector(desc, 2, &[&c]).unwrap();
        let cols = vec![u, v];
        assert_eq!(crate::field::Matrix::from_columns(&cols).unwrap().rank().unwrap(), 2);
    }

    #[test]
    fn cone_boundary_relation() {
        // ∂(v·c) = c − v·∂c for positive-degree c.
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..10 {
            let c = random_chain(FieldDescriptor::Rational, 2, 2, 2, &mut rng);
            if c.is_zero() {
                continue;
            }
            let configs: Vec<&Configuration> = c.terms().keys().collect();
            let v = find_generic_vector(c.descriptor(), 2, &configs).unwrap();
            let lhs = c.cone(&v).unwrap().boundary().unwrap();
            let rhs = c.sub(&c.boundary().unwrap().cone(&v).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn homotopy_inverts_boundary_on_cycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for _ in 0..20 {
            let c = random_chain(FieldDescriptor::Rational, 2, 2, 2, &mut rng);
            let z = c.boundary().unwrap();
            if z.is_zero() {
                continue;
            }
            let w = cone_homotopy(&z).unwrap();
            assert_eq!(w.boundary().unwrap(), z);
        }
    }

    #[test]
    fn homotopy_zero_in_gives_zero_out() {
        let z = Chain::zero(FieldDescriptor::Rational, 2, 1, ChainMode::Equivariant, CoeffMode::Rational);
        let w = cone_homotopy(&z).unwrap();
        assert!(w.is_zero());
        assert_eq!(w.degree(), 2);
    }

    #[test]
    fn homotopy_rejects_bad_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(26);
        let config = random_configuration(FieldDescriptor::Rational, 2, 3, &mut rng).unwrap();
        let c = Chain::single(config.clone());
        match cone_homotopy(&c) {
            Err(ChainError::NotACycle { defect }) => {
                assert_eq!(*defect, c.boundary().unwrap());
            }
            other => panic!("expected NotACycle, got {other:?}"),
        }
        let point = Chain::single(Configuration::new(1, vec![qv(&[3])]).unwrap());
        assert!(matches!(cone_homotopy(&point), Err(ChainError::NotPositiveDegree)));
        let orbit = Chain::single_orbit(&config).unwrap();
        assert!(matches!(cone_homotopy(&orbit), Err(ChainError::NotEquivariant)));
    }
}
