//! Suslin symbols of Grassmann configurations, the symbol map into Milnor
//! K-theory, an equality oracle for K^M₂(ℚ), the dlog map ψ, and the
//! calibration of the coordinate volume form across the two affine charts.

use crate::arith;
use crate::chain::{Chain, ChainError};
use crate::config::{Configuration, ConfigError};
use crate::field::{uniform_descriptor, FieldError, Scalar};
use crate::logform::{LogForm, LogFormError, RatFunc};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, thiserror::Error)]
pub enum MilnorError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    LogForm(#[from] LogFormError),
    #[error("symbol entries must be nonzero")]
    ZeroEntry,
    #[error("expected {m} entries, got {got}")]
    EntryCount { m: usize, got: usize },
    #[error("expected a configuration of {expected} vectors, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("expected a chain of degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("chain coefficient {0} is not an integer")]
    NonIntegerCoefficient(BigRational),
    #[error("the K-theory reduction supports only m = 2, got m = {0}")]
    ReductionUnsupported(usize),
    #[error("the K-theory reduction needs rational entries")]
    NotRational,
    #[error("a prime above {0} exceeds the reduction's word size")]
    PrimeTooLarge(BigUint),
    #[error("symbol sums over different m: {0} vs {1}")]
    MixedM(usize, usize),
    #[error("volume calibration supports 1 ≤ m ≤ 4, got m = {0}")]
    CalibrationUnsupported(usize),
}

/// The class ⟨a₁,…,a_m⟩ of the configuration (e₁,…,e_m, Σ aᵢeᵢ).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuslinSymbol {
    m: usize,
    entries: Vec<Scalar>,
}

impl SuslinSymbol {
    pub fn new(m: usize, entries: Vec<Scalar>) -> Result<Self, MilnorError> {
        if entries.len() != m {
            return Err(MilnorError::EntryCount { m, got: entries.len() });
        }
        uniform_descriptor(entries.iter())?;
        if entries.iter().any(Scalar::is_zero) {
            return Err(MilnorError::ZeroEntry);
        }
        Ok(SuslinSymbol { m, entries })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// The single Milnor symbol {a₁,…,a_m} with coefficient one.
    pub fn to_milnor(&self) -> MilnorSymbolSum {
        let mut sum = SymbolSum::zero(self.m);
        sum.add_term(self.entries.clone(), BigInt::one())
            .expect("entry count matches by invariant");
        sum
    }
}

impl std::fmt::Display for SuslinSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|s| s.to_string()).collect();
        write!(f, "⟨{}⟩", parts.join(", "))
    }
}

/// Reads off the Suslin symbol of an (m+1)-vector configuration,
/// normalizing to the canonical frame first.
pub fn suslin_class(config: &Configuration) -> Result<SuslinSymbol, MilnorError> {
    let m = config.m();
    if config.len() != m + 1 {
        return Err(MilnorError::WrongLength { expected: m + 1, got: config.len() });
    }
    let canonical = config.orbit_canonical()?;
    let coeffs = canonical.vectors()[m].0.clone();
    SuslinSymbol::new(m, coeffs)
}

/// Formal integer combination of m-tuples of nonzero entries. The Milnor
/// relations are not imposed here; equality modulo them is decided by
/// `km2_reduce` where implemented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolSum<T: Ord + Clone> {
    m: usize,
    terms: BTreeMap<Vec<T>, BigInt>,
}

pub type MilnorSymbolSum = SymbolSum<Scalar>;
pub type FunctionSymbolSum = SymbolSum<RatFunc>;

impl<T: Ord + Clone> SymbolSum<T> {
    pub fn zero(m: usize) -> Self {
        SymbolSum { m, terms: BTreeMap::new() }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<T>, BigInt> {
        &self.terms
    }

    pub fn add_term(&mut self, entries: Vec<T>, coeff: BigInt) -> Result<(), MilnorError> {
        if entries.len() != self.m {
            return Err(MilnorError::EntryCount { m: self.m, got: entries.len() });
        }
        if coeff.is_zero() {
            return Ok(());
        }
        match self.terms.entry(entries) {
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

    pub fn add(&self, other: &Self) -> Result<Self, MilnorError> {
        if self.m != other.m {
            return Err(MilnorError::MixedM(self.m, other.m));
        }
        let mut out = self.clone();
        for (entries, coeff) in &other.terms {
            out.add_term(entries.clone(), coeff.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        SymbolSum { m: self.m, terms }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MilnorError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return SymbolSum::zero(self.m);
        }
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        SymbolSum { m: self.m, terms }
    }
}

/// Symbol image of an integer chain of degree m: each configuration is an
/// (m+1)-tuple, whose Suslin class maps to a single Milnor symbol.
pub fn milnor_image(chain: &Chain) -> Result<MilnorSymbolSum, MilnorError> {
    let m = chain.m();
    if chain.degree() != m {
        return Err(MilnorError::WrongDegree { expected: m, got: chain.degree() });
    }
    let mut sum = SymbolSum::zero(m);
    for (config, coeff) in chain.terms() {
        if !coeff.is_integer() {
            return Err(MilnorError::NonIntegerCoefficient(coeff.clone()));
        }
        let symbol = suslin_class(config)?;
        sum.add_term(symbol.entries().to_vec(), coeff.numer().clone())?;
    }
    Ok(sum)
}

/// φ(a₁·…·a_m) = (−1)^{m−1}(m−1)!·{a₁,…,a_m}: the expected symbol image
/// of a product class, used as an expectation generator in calibrations.
pub fn phi_on_products(a: &[BigRational]) -> Result<MilnorSymbolSum, MilnorError> {
    let m = a.len();
    if m == 0 {
        return Err(MilnorError::EntryCount { m: 1, got: 0 });
    }
    if a.iter().any(BigRational::is_zero) {
        return Err(MilnorError::ZeroEntry);
    }
    let mut constant: BigInt = (1..m).map(BigInt::from).product();
    if m % 2 == 0 {
        constant = -constant;
    }
    let entries = a.iter().map(|q| Scalar::from(q.clone())).collect();
    let mut sum = SymbolSum::zero(m);
    sum.add_term(entries, constant)?;
    Ok(sum)
}

/// Canonical invariant of a K^M₂(ℚ) class: the real-place symbol together
/// with every nontrivial tame symbol at an odd prime. Two symbol sums are
/// equal in K^M₂(ℚ) exactly when these agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Km2Invariant {
    real_negative: bool,
    tame: BTreeMap<u64, u64>,
}

impl Km2Invariant {
    /// +1 or −1: the image under the symbol at the real place.
    pub fn real_symbol(&self) -> i8 {
        if self.real_negative {
            -1
        } else {
            1
        }
    }

    /// Nontrivial tame-symbol values, keyed by odd prime.
    pub fn tame(&self) -> &BTreeMap<u64, u64> {
        &self.tame
    }

    pub fn is_trivial(&self) -> bool {
        !self.real_negative && self.tame.is_empty()
    }
}

impl std::fmt::Display for Km2Invariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "real: {:+}", self.real_symbol())?;
        for (p, t) in &self.tame {
            write!(f, ", tame[{p}]: {t}")?;
        }
        Ok(())
    }
}

fn rational_entries(entries: &[Scalar]) -> Result<Vec<&BigRational>, MilnorError> {
    entries
        .iter()
        .map(|s| s.as_rational().ok_or(MilnorError::NotRational))
        .collect()
}

fn odd_primes_of(q: &BigRational, primes: &mut BTreeSet<u64>) -> Result<(), MilnorError> {
    for part in [q.numer().magnitude(), q.denom().magnitude()] {
        for p in arith::factor(part).keys() {
            if !p.bit(0) {
                continue;
            }
            let small = p.to_u64().ok_or_else(|| MilnorError::PrimeTooLarge(p.clone()))?;
            primes.insert(small);
        }
    }
    Ok(())
}

fn valuation_q(q: &BigRational, p: &BigUint) -> i64 {
    arith::valuation(q.numer(), p) - arith::valuation(q.denom(), p)
}

/// The p-free part of q reduced mod p, sign included.
fn unit_mod(q: &BigRational, p: u64) -> u64 {
    let pb = BigUint::from(p);
    let strip = |n: &BigUint| -> u64 {
        let mut mag = n.clone();
        while (&mag % &pb).is_zero() {
            mag /= &pb;
        }
        (mag % &pb).to_u64().expect("residue below p")
    };
    let num = strip(q.numer().magnitude());
    let den = strip(q.denom().magnitude());
    let r = arith::mul_mod_u64(num, arith::inv_mod_u64(den, p).expect("p-free"), p);
    if q.numer().is_negative() && r != 0 {
        p - r
    } else {
        r
    }
}

/// τ_p{a,b} = (−1)^{v_p(a)v_p(b)} a^{v_p(b)} / b^{v_p(a)} mod p.
fn tame_symbol(a: &BigRational, b: &BigRational, p: u64) -> u64 {
    let pb = BigUint::from(p);
    let va = valuation_q(a, &pb);
    let vb = valuation_q(b, &pb);
    if va == 0 && vb == 0 {
        return 1;
    }
    let ua = unit_mod(a, p);
    let ub = unit_mod(b, p);
    let mut t = arith::mul_mod_u64(
        arith::pow_mod_signed(ua, vb, p).expect("unit part"),
        arith::pow_mod_signed(ub, -va, p).expect("unit part"),
        p,
    );
    if (va * vb) % 2 != 0 {
        t = arith::mul_mod_u64(t, p - 1, p);
    }
    t
}

/// Reduces an m = 2 symbol sum over ℚ to its canonical invariant.
pub fn km2_reduce(sum: &MilnorSymbolSum) -> Result<Km2Invariant, MilnorError> {
    if sum.m() != 2 {
        return Err(MilnorError::ReductionUnsupported(sum.m()));
    }
    let mut primes = BTreeSet::new();
    for entries in sum.terms().keys() {
        for q in rational_entries(entries)? {
            odd_primes_of(q, &mut primes)?;
        }
    }
    let mut real_negative = false;
    let mut tame: BTreeMap<u64, u64> = BTreeMap::new();
    for (entries, coeff) in sum.terms() {
        let rationals = rational_entries(entries)?;
        let (a, b) = (rationals[0], rationals[1]);
        if a.is_negative() && b.is_negative() && coeff.is_odd() {
            real_negative = !real_negative;
        }
        for &p in &primes {
            let t = tame_symbol(a, b, p);
            if t == 1 {
                continue;
            }
            // Exponents reduce mod the group order p − 1.
            let e = coeff.mod_floor(&BigInt::from(p - 1)).to_u64().expect("below p - 1");
            let contribution = arith::pow_mod_u64(t, e, p);
            let acc = tame.entry(p).or_insert(1);
            *acc = arith::mul_mod_u64(*acc, contribution, p);
        }
    }
    tame.retain(|_, t| *t != 1);
    Ok(Km2Invariant { real_negative, tame })
}

/// ψ{f₁,…,f_m} = dlog f₁ ∧ … ∧ dlog f_m, extended additively. The ambient
/// variable count pins the target even for the empty sum.
pub fn psi(sum: &FunctionSymbolSum, nvars: usize) -> Result<LogForm, MilnorError> {
    let mut out = LogForm::zero(nvars, sum.m());
    for (entries, coeff) in sum.terms() {
        let mut wedge = LogForm::one(nvars);
        for f in entries {
            wedge = wedge.wedge(&f.dlog())?;
        }
        out = out.add(&wedge.scale(&BigRational::from(coeff.clone())))?;
    }
    Ok(out)
}

/// vol_m = dlog x₁ ∧ … ∧ dlog x_m over the m chart coordinates.
pub fn vol_form(m: usize) -> Result<LogForm, MilnorError> {
    if !(1..=4).contains(&m) {
        return Err(MilnorError::CalibrationUnsupported(m));
    }
    let mut form = LogForm::one(m);
    for i in 0..m {
        form = form.wedge(&RatFunc::var(i, m).dlog())?;
    }
    Ok(form)
}

/// The chart coordinates (x₁,…,x_m) = (a₂/a₁, …, a_m/a₁, −1/a₁) as
/// rational functions of the source coordinates a₁,…,a_m.
pub fn chart_functions(m: usize) -> Result<Vec<RatFunc>, MilnorError> {
    if !(1..=4).contains(&m) {
        return Err(MilnorError::CalibrationUnsupported(m));
    }
    let a1 = RatFunc::var(0, m);
    let mut xs = Vec::with_capacity(m);
    for i in 1..m {
        xs.push(RatFunc::var(i, m).div(&a1)?);
    }
    xs.push(RatFunc::constant(-BigRational::one(), m)?.div(&a1)?);
    Ok(xs)
}

/// Pulls vol_m back through the chart change and compares with the
/// a-coordinate volume form: pullback = ε_m · dlog a₁ ∧ … ∧ dlog a_m.
pub fn volume_calibration(m: usize) -> Result<i8, MilnorError> {
    let xs = chart_functions(m)?;
    let mut pullback = LogForm::one(m);
    for x in &xs {
        pullback = pullback.wedge(&x.dlog())?;
    }
    let mut target = LogForm::one(m);
    for i in 0..m {
        target = target.wedge(&RatFunc::var(i, m).dlog())?;
    }
    if pullback == target {
        Ok(1)
    } else if pullback == target.neg() {
        Ok(-1)
    } else {
        unreachable!("the pullback is a signed copy of the a-chart volume form")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{ChainMode, CoeffMode};
    use crate::config::{chart_change, random_configuration, suslin_generator};
    use crate::field::{FieldDescriptor, Matrix};
    use crate::logform::Poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn qs(n: i64, d: i64) -> Scalar {
        Scalar::from(q(n, d))
    }

    fn pair_sum(a: BigRational, b: BigRational) -> MilnorSymbolSum {
        let mut s = SymbolSum::zero(2);
        s.add_term(vec![Scalar::from(a), Scalar::from(b)], BigInt::one()).unwrap();
        s
    }

    #[test]
    fn suslin_class_reads_off_canonical_coefficients() {
        let config = suslin_generator(&[qs(2, 1), qs(3, 1)]).unwrap();
        let symbol = suslin_class(&config).unwrap();
        assert_eq!(symbol, SuslinSymbol::new(2, vec![qs(2, 1), qs(3, 1)]).unwrap());
        assert_eq!(symbol.to_string(), "⟨2, 3⟩");

        let m1 = suslin_generator(&[qs(-5, 3)]).unwrap();
        assert_eq!(suslin_class(&m1).unwrap().entries(), &[qs(-5, 3)]);
    }

    #[test]
    fn suslin_class_is_orbit_invariant() {
        let config = suslin_generator(&[qs(2, 1), qs(3, 1)]).unwrap();
        let expected = suslin_class(&config).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut found = 0;
        while found < 5 {
            let data: Vec<Scalar> = (0..4).map(|_| qs(rng.gen_range(-6..=6), 1)).collect();
            let g = Matrix::new(2, 2, data).unwrap();
            if g.det().unwrap().is_zero() {
                continue;
            }
            found += 1;
            let moved = config.transform(&g).unwrap();
            assert_eq!(suslin_class(&moved).unwrap(), expected);
        }
    }

    #[test]
    fn suslin_class_rejects_wrong_length() {
        let desc = FieldDescriptor::Rational;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let config = random_configuration(desc, 2, 4, &mut rng).unwrap();
        assert!(matches!(
            suslin_class(&config),
            Err(MilnorError::WrongLength { expected: 3, got: 4 })
        ));
        assert!(matches!(
            SuslinSymbol::new(2, vec![qs(1, 1), Scalar::from(q(0, 1))]),
            Err(MilnorError::ZeroEntry)
        ));
    }

    #[test]
    fn symbol_serde_round_trips_with_golden_string() {
        let symbol = SuslinSymbol::new(2, vec![qs(2, 1), qs(3, 1)]).unwrap();
        let json = serde_json::to_string(&symbol).unwrap();
        assert_eq!(json, r#"{"m":2,"entries":["2/1","3/1"]}"#);
        let back: SuslinSymbol = serde_json::from_str(&json).unwrap();
        assert_eq!(back, symbol);
    }

    #[test]
    fn unit_and_steinberg_symbols_reduce_to_zero() {
        for a in [q(3, 1), q(-7, 2), q(5, 9), q(2, 3)] {
            let unit = pair_sum(BigRational::one(), a.clone());
            assert!(km2_reduce(&unit).unwrap().is_trivial(), "{{1, {a}}}");
            if !a.is_one() {
                let steinberg = pair_sum(a.clone(), BigRational::one() - &a);
                assert!(km2_reduce(&steinberg).unwrap().is_trivial(), "{{a, 1−a}} at {a}");
            }
            let torsion = pair_sum(a.clone(), -a.clone());
            assert!(km2_reduce(&torsion).unwrap().is_trivial(), "{{a, −a}} at {a}");
        }
    }

    #[test]
    fn tame_symbols_detect_nontrivial_classes() {
        let s = pair_sum(q(2, 1), q(3, 1));
        let inv = km2_reduce(&s).unwrap();
        assert!(!inv.is_trivial());
        assert_eq!(inv.real_symbol(), 1);
        assert_eq!(inv.tame().get(&3), Some(&2));

        let minus = pair_sum(q(-1, 1), q(-1, 1));
        let inv = km2_reduce(&minus).unwrap();
        assert_eq!(inv.real_symbol(), -1);
        assert!(inv.tame().is_empty());
        assert!(!inv.is_trivial());

        // 2-torsion: doubling {−1,−1} kills it.
        assert!(km2_reduce(&minus.scale(&BigInt::from(2))).unwrap().is_trivial());
    }

    #[test]
    fn reduction_is_bilinear_and_skew() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let pick = |rng: &mut ChaCha8Rng| loop {
                let v = q(rng.gen_range(-9..=9), rng.gen_range(1..=6));
                if !v.is_zero() {
                    return v;
                }
            };
            let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let product = pair_sum(&a * &b, c.clone());
            let split = pair_sum(a.clone(), c.clone()).add(&pair_sum(b.clone(), c.clone())).unwrap();
            let defect = product.sub(&split).unwrap();
            assert!(km2_reduce(&defect).unwrap().is_trivial(), "bilinearity at {a}, {b}, {c}");

            let skew = pair_sum(a.clone(), b.clone()).add(&pair_sum(b.clone(), a.clone())).unwrap();
            assert!(km2_reduce(&skew).unwrap().is_trivial(), "skew at {a}, {b}");
        }
    }

    #[test]
    fn reduction_rejects_wrong_shapes() {
        let mut m1 = SymbolSum::zero(1);
        m1.add_term(vec![qs(2, 1)], BigInt::one()).unwrap();
        assert!(matches!(km2_reduce(&m1), Err(MilnorError::ReductionUnsupported(1))));

        let mut quad = SymbolSum::zero(2);
        let root = Scalar::quadratic(q(0, 1), q(1, 1), -1).unwrap();
        quad.add_term(vec![root.clone(), root], BigInt::one()).unwrap();
        assert!(matches!(km2_reduce(&quad), Err(MilnorError::NotRational)));
    }

    #[test]
    fn symbol_image_of_boundaries_reduces_to_zero() {
        let desc = FieldDescriptor::Rational;
        for seed in 0..10u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
            let mut chain = Chain::zero(desc, 2, 3, ChainMode::Coinvariant, CoeffMode::Integer);
            for _ in 0..3 {
                let config = random_configuration(desc, 2, 4, &mut rng).unwrap();
                let coeff = q(rng.gen_range(-4..=4i64), 1);
                chain.add_term(config, coeff).unwrap();
            }
            let image = milnor_image(&chain.boundary().unwrap()).unwrap();
            let inv = km2_reduce(&image).unwrap();
            assert!(inv.is_trivial(), "seed {seed}: {inv}");
        }
    }

    #[test]
    fn symbol_image_demands_integer_degree_m_chains() {
        let desc = FieldDescriptor::Rational;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let deg3 = Chain::single(random_configuration(desc, 2, 4, &mut rng).unwrap());
        assert!(matches!(
            milnor_image(&deg3),
            Err(MilnorError::WrongDegree { expected: 2, got: 3 })
        ));
        let halved = Chain::single(random_configuration(desc, 2, 3, &mut rng).unwrap())
            .scale(&q(1, 2))
            .unwrap();
        assert!(matches!(milnor_image(&halved), Err(MilnorError::NonIntegerCoefficient(_))));
    }

    #[test]
    fn phi_constants_match_low_degrees() {
        let one = phi_on_products(&[q(5, 1)]).unwrap();
        assert_eq!(one.terms().values().collect::<Vec<_>>(), vec![&BigInt::one()]);
        let two = phi_on_products(&[q(2, 1), q(3, 1)]).unwrap();
        assert_eq!(two.terms().values().collect::<Vec<_>>(), vec![&BigInt::from(-1)]);
        let three = phi_on_products(&[q(2, 1), q(3, 1), q(5, 1)]).unwrap();
        assert_eq!(three.terms().values().collect::<Vec<_>>(), vec![&BigInt::from(2)]);
        assert!(matches!(phi_on_products(&[]), Err(MilnorError::EntryCount { .. })));
        assert!(matches!(phi_on_products(&[q(0, 1)]), Err(MilnorError::ZeroEntry)));
    }

    #[test]
    fn psi_expands_by_multiplicativity() {
        let n = 3;
        let x1 = RatFunc::var(0, n);
        let x2 = RatFunc::var(1, n);
        let x3 = RatFunc::var(2, n);

        let mut single = SymbolSum::zero(1);
        single.add_term(vec![x1.clone()], BigInt::one()).unwrap();
        assert_eq!(psi(&single, n).unwrap(), x1.dlog());

        let mut product = SymbolSum::zero(2);
        product.add_term(vec![x1.mul(&x2).unwrap(), x3.clone()], BigInt::one()).unwrap();
        let expect = x1
            .dlog()
            .wedge(&x3.dlog())
            .unwrap()
            .add(&x2.dlog().wedge(&x3.dlog()).unwrap())
            .unwrap();
        assert_eq!(psi(&product, n).unwrap(), expect);
        assert_eq!(
            psi(&product, n).unwrap().render(&["x1", "x2", "x3"]),
            "dlog(x1)∧dlog(x3) + dlog(x2)∧dlog(x3)"
        );
    }

    #[test]
    fn psi_keeps_steinberg_but_kills_f_wedge_f() {
        let n = 1;
        let x = RatFunc::var(0, n);
        let one_minus_x = RatFunc::from_poly(
            &Poly::constant(BigRational::one(), n).sub(&Poly::var(0, n)).unwrap(),
        )
        .unwrap();

        let mut steinberg = SymbolSum::zero(2);
        steinberg.add_term(vec![x.clone(), one_minus_x], BigInt::one()).unwrap();
        assert!(!psi(&steinberg, n).unwrap().is_zero());

        let mut diag = SymbolSum::zero(2);
        diag.add_term(vec![x.clone(), x.clone()], BigInt::one()).unwrap();
        assert!(psi(&diag, n).unwrap().is_zero());

        let mut torsion = SymbolSum::zero(2);
        torsion.add_term(vec![x.clone(), x.neg()], BigInt::one()).unwrap();
        assert!(psi(&torsion, n).unwrap().is_zero());
    }

    #[test]
    fn psi_is_additive() {
        let n = 2;
        let x1 = RatFunc::var(0, n);
        let x2 = RatFunc::var(1, n);
        let mut a = SymbolSum::zero(2);
        a.add_term(vec![x1.clone(), x2.clone()], BigInt::from(3)).unwrap();
        let mut b = SymbolSum::zero(2);
        b.add_term(vec![x2.clone(), x1.clone()], BigInt::from(2)).unwrap();
        let sum = a.add(&b).unwrap();
        assert_eq!(
            psi(&sum, n).unwrap(),
            psi(&a, n).unwrap().add(&psi(&b, n).unwrap()).unwrap()
        );
        // {x1,x2} + {x2,x1} is visibly zero already under ψ.
        let skew = a.scale(&BigInt::from(2)).sub(&a).unwrap().sub(&a).unwrap();
        assert!(psi(&skew, n).unwrap().is_zero());
    }

    #[test]
    fn volume_form_renders_canonically() {
        assert_eq!(vol_form(2).unwrap().render(&["x1", "x2"]), "dlog(x1)∧dlog(x2)");
        assert!(matches!(vol_form(0), Err(MilnorError::CalibrationUnsupported(0))));
        assert!(matches!(vol_form(5), Err(MilnorError::CalibrationUnsupported(5))));
    }

    #[test]
    fn chart_functions_agree_with_exact_chart_change() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for m in 1..=4usize {
            let xs = chart_functions(m).unwrap();
            for _ in 0..5 {
                let point: Vec<BigRational> = (0..m)
                    .map(|_| loop {
                        let v = q(rng.gen_range(-9..=9), rng.gen_range(1..=5));
                        if !v.is_zero() {
                            break v;
                        }
                    })
                    .collect();
                let scalars: Vec<Scalar> = point.iter().cloned().map(Scalar::from).collect();
                let exact = chart_change(&scalars).unwrap();
                let symbolic: Vec<BigRational> =
                    xs.iter().map(|x| x.eval(&point).unwrap()).collect();
                let exact_q: Vec<BigRational> =
                    exact.iter().map(|s| s.as_rational().unwrap().clone()).collect();
                assert_eq!(symbolic, exact_q, "m = {m}");
            }
        }
    }

    #[test]
    fn volume_calibration_signs_alternate() {
        // The pullback computation gives ε_m = (−1)^m under this chart
        // ordering: the last coordinate −1/a₁ contributes −dlog a₁ and
        // moving it to the front costs m − 1 transpositions.
        assert_eq!(volume_calibration(1).unwrap(), -1);
        assert_eq!(volume_calibration(2).unwrap(), 1);
        assert_eq!(volume_calibration(3).unwrap(), -1);
        assert_eq!(volume_calibration(4).unwrap(), 1);
    }

    #[test]
    fn calibration_pullback_matches_reported_sign() {
        for m in 1..=4usize {
            let eps = volume_calibration(m).unwrap();
            let xs = chart_functions(m).unwrap();
            let mut pullback = LogForm::one(m);
            for x in &xs {
                pullback = pullback.wedge(&x.dlog()).unwrap();
            }
            let mut target = LogForm::one(m);
            for i in 0..m {
                target = target.wedge(&RatFunc::var(i, m).dlog()).unwrap();
            }
            let signed = target.scale(&BigRational::from_integer(eps.into()));
            assert_eq!(pullback, signed, "m = {m}");
            assert_eq!(eps.abs(), 1);
        }
    }
}
