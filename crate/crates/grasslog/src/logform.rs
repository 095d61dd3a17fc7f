//! A small formal engine for logarithmic differential forms: multivariate
//! polynomials over ℚ, rational functions kept in factored shape, and
//! wedge sums of dlog monomials in canonical sorted form.
//!
//! dlog(c) = 0 for every nonzero constant c, and dlog(f·g) = dlog f +
//! dlog g holds by construction because rational functions never forget
//! their factored shape. The engine does not factor polynomials; callers
//! supply atoms (irreducible by construction) and combine them through
//! `mul`, `div`, and `pow`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum LogFormError {
    #[error("the zero function has no dlog")]
    ZeroFunction,
    #[error("mixed variable universes: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("mixed wedge degrees: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("exponent {0} out of range")]
    ExponentRange(i64),
}

/// Multivariate polynomial over ℚ with a fixed number of ambient variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    coeffs: BTreeMap<Vec<u32>, BigRational>,
}

// Exponent vectors compare reverse-lexicographically so that earlier
// variables sort lower: x1 < x2 < x3. This fixes the canonical atom order
// everywhere (wedge monomials, rendered text).
fn cmp_exps(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.nvars.cmp(&other.nvars).then_with(|| {
            let mut ia = self.coeffs.iter();
            let mut ib = other.coeffs.iter();
            loop {
                match (ia.next(), ib.next()) {
                    (None, None) => return std::cmp::Ordering::Equal,
                    (None, Some(_)) => return std::cmp::Ordering::Less,
                    (Some(_), None) => return std::cmp::Ordering::Greater,
                    (Some((ea, ca)), Some((eb, cb))) => {
                        let c = cmp_exps(ea, eb).then_with(|| ca.cmp(cb));
                        if c != std::cmp::Ordering::Equal {
                            return c;
                        }
                    }
                }
            }
        })
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, coeffs: BTreeMap::new() }
    }

    pub fn constant(q: BigRational, nvars: usize) -> Self {
        let mut p = Poly::zero(nvars);
        if !q.is_zero() {
            p.coeffs.insert(vec![0; nvars], q);
        }
        p
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = Poly::zero(nvars);
        p.coeffs.insert(exps, BigRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.coeffs.is_empty() {
            return Some(BigRational::zero());
        }
        if self.coeffs.len() == 1 {
            if let Some(c) = self.coeffs.get(vec![0; self.nvars].as_slice()) {
                return Some(c.clone());
            }
        }
        None
    }

    fn insert(&mut self, exps: Vec<u32>, q: BigRational) {
        if q.is_zero() {
            return;
        }
        match self.coeffs.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(q);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += q;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, LogFormError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (exps, q) in &other.coeffs {
            out.insert(exps.clone(), q.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|(e, q)| (e.clone(), -q)).collect();
        Poly { nvars: self.nvars, coeffs }
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly, LogFormError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, LogFormError> {
        self.check_vars(other)?;
        let mut out = Poly::zero(self.nvars);
        for (ea, qa) in &self.coeffs {
            for (eb, qb) in &other.coeffs {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(exps, qa * qb);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        assert_eq!(values.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (exps, q) in &self.coeffs {
            let mut term = q.clone();
            for (v, &e) in values.iter().zip(exps) {
                for _ in 0..e {
                    term *= v;
                }
            }
            acc += term;
        }
        acc
    }

    fn check_vars(&self, other: &Poly) -> Result<(), LogFormError> {
        if self.nvars != other.nvars {
            return Err(LogFormError::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    /// Splits off content and sign: self = constant · primitive, where the
    /// primitive part has integer coefficients with gcd 1 and a positive
    /// coefficient on its lexicographically greatest monomial.
    fn primitive_normal(&self) -> Option<(BigRational, Poly)> {
        if self.is_zero() {
            return None;
        }
        let denom_lcm = self
            .coeffs
            .values()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let numer_gcd = self
            .coeffs
            .values()
            .fold(BigInt::zero(), |acc, q| acc.gcd(&(q.numer() * &denom_lcm / q.denom())));
        let mut content = BigRational::new(numer_gcd, denom_lcm);
        let leading = self.coeffs.iter().next_back().expect("nonzero poly").1;
        if leading.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        let coeffs = self.coeffs.iter().map(|(e, q)| (e.clone(), q * &inv)).collect();
        Some((content, Poly { nvars: self.nvars, coeffs }))
    }

    pub fn render(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (exps, q)) in self.coeffs.iter().enumerate() {
            let neg = q.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = q.abs();
            let monomial: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| if e == 1 { names[j].to_string() } else { format!("{}^{}", names[j], e) })
                .collect();
            if monomial.is_empty() {
                let _ = write!(out, "{abs}");
            } else {
                if !abs.is_one() {
                    let _ = write!(out, "{abs}·");
                }
                out.push_str(&monomial.join("·"));
            }
        }
        out
    }
}

/// A nonzero rational function kept in factored shape: a nonzero rational
/// constant times a product of primitive polynomial atoms with integer
/// exponents.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RatFunc {
    nvars: usize,
    constant: BigRational,
    factors: BTreeMap<Poly, i64>,
}

impl RatFunc {
    pub fn constant(q: BigRational, nvars: usize) -> Result<Self, LogFormError> {
        if q.is_zero() {
            return Err(LogFormError::ZeroFunction);
        }
        Ok(RatFunc { nvars, constant: q, factors: BTreeMap::new() })
    }

    pub fn one(nvars: usize) -> Self {
        RatFunc { nvars, constant: BigRational::one(), factors: BTreeMap::new() }
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        RatFunc::from_poly(&Poly::var(i, nvars)).expect("a variable is nonzero")
    }

    /// Treats the polynomial as a single atom after normalization. The
    /// engine does not factor; pass products through `mul` instead.
    pub fn from_poly(p: &Poly) -> Result<Self, LogFormError> {
        let (content, primitive) = p.primitive_normal().ok_or(LogFormError::ZeroFunction)?;
        let mut factors = BTreeMap::new();
        if primitive.as_constant().is_none() {
            factors.insert(primitive, 1);
        }
        Ok(RatFunc { nvars: p.nvars, constant: content, factors })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn mul(&self, other: &RatFunc) -> Result<RatFunc, LogFormError> {
        if self.nvars != other.nvars {
            return Err(LogFormError::VariableMismatch(self.nvars, other.nvars));
        }
        let mut out = self.clone();
        out.constant *= &other.constant;
        for (atom, e) in &other.factors {
            let entry = out.factors.entry(atom.clone()).or_insert(0);
            *entry += e;
            if *entry == 0 {
                out.factors.remove(atom);
            }
        }
        Ok(out)
    }

    pub fn inv(&self) -> RatFunc {
        RatFunc {
            nvars: self.nvars,
            constant: self.constant.recip(),
            factors: self.factors.iter().map(|(a, e)| (a.clone(), -e)).collect(),
        }
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc, LogFormError> {
        self.mul(&other.inv())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { constant: -&self.constant, ..self.clone() }
    }

    pub fn pow(&self, e: i64) -> RatFunc {
        let exp = i32::try_from(e).expect("exponent fits i32");
        RatFunc {
            nvars: self.nvars,
            constant: num_traits::Pow::pow(&self.constant, exp),
            factors: self.factors.iter().map(|(a, k)| (a.clone(), k * e)).collect(),
        }
    }

    /// Value at a rational point; None where an atom vanishes (or an atom
    /// with negative exponent would divide by zero).
    pub fn eval(&self, values: &[BigRational]) -> Option<BigRational> {
        let mut acc = self.constant.clone();
        for (atom, &e) in &self.factors {
            let v = atom.eval(values);
            if v.is_zero() {
                return None;
            }
            let exp = i32::try_from(e).ok()?;
            acc *= num_traits::Pow::pow(&v, exp);
        }
        Some(acc)
    }

    /// dlog of the function as a 1-form; the constant contributes nothing.
    pub fn dlog(&self) -> LogForm {
        let mut form = LogForm::zero(self.nvars, 1);
        for (atom, &e) in &self.factors {
            form.insert(vec![atom.clone()], BigRational::from_integer(e.into()));
        }
        form
    }
}

/// A wedge sum of dlog monomials of a fixed degree, with atoms kept in
/// strictly ascending canonical order and signs absorbed into rational
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogForm {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Vec<Poly>, BigRational>,
}

impl LogForm {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        LogForm { nvars, degree, terms: BTreeMap::new() }
    }

    /// The empty wedge: the degree-zero form with constant 1, the unit for
    /// `wedge`.
    pub fn one(nvars: usize) -> Self {
        let mut form = LogForm::zero(nvars, 0);
        form.terms.insert(Vec::new(), BigRational::one());
        form
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Poly>, BigRational> {
        &self.terms
    }

    /// Inserts a wedge monomial, sorting its atoms and tracking the sign of
    /// the permutation; monomials with a repeated atom vanish.
    fn insert(&mut self, mut atoms: Vec<Poly>, coeff: BigRational) {
        debug_assert_eq!(atoms.len(), self.degree);
        if coeff.is_zero() {
            return;
        }
        // Insertion sort with swap parity.
        let mut sign_flip = false;
        for i in 1..atoms.len() {
            let mut j = i;
            while j > 0 && atoms[j] < atoms[j - 1] {
                atoms.swap(j, j - 1);
                sign_flip = !sign_flip;
                j -= 1;
            }
        }
        if atoms.windows(2).any(|w| w[0] == w[1]) {
            return;
        }
        let signed = if sign_flip { -coeff } else { coeff };
        match self.terms.entry(atoms) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(signed);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += signed;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LogForm) -> Result<LogForm, LogFormError> {
        if self.nvars != other.nvars {
            return Err(LogFormError::VariableMismatch(self.nvars, other.nvars));
        }
        if self.degree != other.degree {
            return Err(LogFormError::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (atoms, coeff) in &other.terms {
            out.insert(atoms.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, q: &BigRational) -> LogForm {
        if q.is_zero() {
            return LogForm::zero(self.nvars, self.degree);
        }
        let terms = self.terms.iter().map(|(a, c)| (a.clone(), c * q)).collect();
        LogForm { terms, ..self.clone() }
    }

    pub fn neg(&self) -> LogForm {
        self.scale(&-BigRational::one())
    }

    pub fn sub(&self, other: &LogForm) -> Result<LogForm, LogFormError> {
        self.add(&other.neg())
    }

    pub fn wedge(&self, other: &LogForm) -> Result<LogForm, LogFormError> {
        if self.nvars != other.nvars {
            return Err(LogFormError::VariableMismatch(self.nvars, other.nvars));
        }
        let mut out = LogForm::zero(self.nvars, self.degree + other.degree);
        for (aa, ca) in &self.terms {
            for (ab, cb) in &other.terms {
                let mut atoms = aa.clone();
                atoms.extend(ab.iter().cloned());
                out.insert(atoms, ca * cb);
            }
        }
        Ok(out)
    }

    /// Stable canonical text, suitable for golden comparisons.
    pub fn render(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (atoms, coeff)) in self.terms.iter().enumerate() {
            let neg = coeff.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = coeff.abs();
            if !abs.is_one() || atoms.is_empty() {
                let _ = write!(out, "{abs}");
                if !atoms.is_empty() {
                    out.push('·');
                }
            }
            let rendered: Vec<String> =
                atoms.iter().map(|a| format!("dlog({})", a.render(names))).collect();
            out.push_str(&rendered.join("∧"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn one_minus_var(i: usize, nvars: usize) -> Poly {
        Poly::constant(BigRational::one(), nvars).sub(&Poly::var(i, nvars)).unwrap()
    }

    #[test]
    fn poly_arithmetic_and_eval() {
        let n = 2;
        let p = Poly::var(0, n).mul(&Poly::var(1, n)).unwrap().add(&Poly::constant(q(3, 2), n)).unwrap();
        assert_eq!(p.eval(&[q(2, 1), q(5, 1)]), q(23, 2));
        assert_eq!(p.render(&["x1", "x2"]), "3/2 + x1·x2");
        assert!(p.sub(&p).unwrap().is_zero());
        let sq = Poly::var(0, 1).mul(&Poly::var(0, 1)).unwrap();
        assert_eq!(sq.render(&["t"]), "t^2");
    }

    #[test]
    fn atoms_normalize_up_to_scaling_and_sign() {
        let n = 1;
        // 2 − 2x and x − 1 share the primitive atom.
        let a = Poly::constant(q(2, 1), n).sub(&Poly::var(0, n).mul(&Poly::constant(q(2, 1), n)).unwrap()).unwrap();
        let b = Poly::var(0, n).sub(&Poly::constant(q(1, 1), n)).unwrap();
        let fa = RatFunc::from_poly(&a).unwrap();
        let fb = RatFunc::from_poly(&b).unwrap();
        assert_eq!(fa.dlog(), fb.dlog());
        // dlog of a constant is zero.
        assert!(RatFunc::constant(q(-7, 3), n).unwrap().dlog().is_zero());
        assert!(RatFunc::from_poly(&Poly::zero(n)).is_err());
    }

    #[test]
    fn dlog_is_multiplicative_by_construction() {
        let n = 3;
        let f = RatFunc::var(0, n);
        let g = RatFunc::from_poly(&one_minus_var(1, n)).unwrap();
        let fg = f.mul(&g).unwrap();
        assert_eq!(fg.dlog(), f.dlog().add(&g.dlog()).unwrap());
        let quot = f.div(&g).unwrap();
        assert_eq!(quot.dlog(), f.dlog().sub(&g.dlog()).unwrap());
        assert_eq!(f.pow(3).dlog(), f.dlog().scale(&q(3, 1)));
        // Negation changes only the invisible constant.
        assert_eq!(f.neg().dlog(), f.dlog());
    }

    #[test]
    fn wedge_is_alternating() {
        let n = 2;
        let dx = RatFunc::var(0, n).dlog();
        let dy = RatFunc::var(1, n).dlog();
        let xy = dx.wedge(&dy).unwrap();
        let yx = dy.wedge(&dx).unwrap();
        assert_eq!(yx, xy.neg());
        assert!(dx.wedge(&dx).unwrap().is_zero());
        assert!(!xy.is_zero());
    }

    #[test]
    fn wedge_distributes_and_renders_canonically() {
        let n = 3;
        let dx1 = RatFunc::var(0, n).dlog();
        let dx2 = RatFunc::var(1, n).dlog();
        let dx3 = RatFunc::var(2, n).dlog();
        let sum = dx1.add(&dx2).unwrap().wedge(&dx3).unwrap();
        let expect = dx1.wedge(&dx3).unwrap().add(&dx2.wedge(&dx3).unwrap()).unwrap();
        assert_eq!(sum, expect);
        let names = ["x1", "x2", "x3"];
        assert_eq!(sum.render(&names), "dlog(x1)∧dlog(x3) + dlog(x2)∧dlog(x3)");
        // Out-of-order wedge renders with the sign absorbed.
        let rev = dx3.wedge(&dx1).unwrap();
        assert_eq!(rev.render(&names), "-dlog(x1)∧dlog(x3)");
    }

    #[test]
    fn ratfunc_eval_matches_factored_shape() {
        let n = 2;
        let f = RatFunc::var(0, n)
            .mul(&RatFunc::from_poly(&one_minus_var(1, n)).unwrap())
            .unwrap()
            .div(&RatFunc::constant(q(3, 1), n).unwrap())
            .unwrap();
        let val = f.eval(&[q(4, 1), q(1, 2)]).unwrap();
        assert_eq!(val, q(2, 3));
        assert!(f.eval(&[q(0, 1), q(1, 2)]).is_none());
        let g = f.pow(-2);
        assert_eq!(g.eval(&[q(4, 1), q(1, 2)]).unwrap(), q(9, 4));
    }

    #[test]
    fn mixed_universe_operations_fail() {
        let a = RatFunc::var(0, 1);
        let b = RatFunc::var(0, 2);
        assert!(a.mul(&b).is_err());
        assert!(a.dlog().add(&b.dlog()).is_err());
        let one_form = a.dlog();
        let two_form = one_form.wedge(&one_form).unwrap();
        assert!(one_form.add(&two_form).is_err());
    }
}
