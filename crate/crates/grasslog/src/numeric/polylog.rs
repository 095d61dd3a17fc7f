//! Classical polylogarithms Li_m on the principal branch, the
//! single-valued Bernoulli-weighted combinations D_m, zeta and Dirichlet
//! values, and a discretized monodromy loop around z = 1.
//!
//! Branch conventions: logarithm cut (−∞, 0], Li cut [1, ∞), Arg ∈ (−π, π]
//! with the negative axis taking +π; on the Li cut the values are the
//! limits from below, consistently across evaluation regimes.

use super::complex::Complex;
use super::real::Real;
use super::NumericError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cell::RefCell;
use std::collections::BTreeMap;

thread_local! {
    static BERNOULLI: RefCell<Vec<BigRational>> = const { RefCell::new(Vec::new()) };
    static ZETA_CACHE: RefCell<BTreeMap<(i64, usize), Real>> = const { RefCell::new(BTreeMap::new()) };
}

/// B_n in the B₁ = −1/2 convention, computed by the defining recurrence
/// and cached.
pub fn bernoulli(n: usize) -> BigRational {
    BERNOULLI.with(|cell| {
        let mut cache = cell.borrow_mut();
        if cache.is_empty() {
            cache.push(BigRational::one());
        }
        while cache.len() <= n {
            let k = cache.len();
            // Σ_{j=0}^{k} C(k+1, j) B_j = 0.
            let mut acc = BigRational::zero();
            for (j, b) in cache.iter().enumerate() {
                acc += BigRational::from_integer(binomial(k + 1, j)) * b;
            }
            let next = -acc / BigRational::from_integer(BigInt::from(k + 1));
            cache.push(next);
        }
        cache[n].clone()
    })
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

fn harmonic(n: usize) -> BigRational {
    (1..=n)
        .map(|j| BigRational::new(BigInt::one(), BigInt::from(j)))
        .sum()
}

/// ζ at negative or zero integers: ζ(−n) = (−1)^n B_{n+1}/(n+1), exact.
fn zeta_nonpositive(s: i64) -> BigRational {
    debug_assert!(s <= 0);
    let n = (-s) as usize;
    let mut v = bernoulli(n + 1) / BigRational::from_integer(BigInt::from(n + 1));
    if n % 2 == 1 {
        v = -v;
    }
    v
}

/// η(s) = Σ (−1)^{n−1}/n^s for integer s ≥ 1 by the accelerated
/// alternating-series scheme with exact Chebyshev weights.
pub fn eta_int(s: u32, bits: usize) -> Real {
    assert!(s >= 1);
    let w = bits + 32;
    // Error decays like (3 + √8)^{−n}; log2(3 + √8) ≈ 2.543.
    let n = ((w as f64 + 16.0) / 2.543).ceil() as usize + 4;
    let mut t = BigRational::new(BigInt::one(), BigInt::from(n));
    let mut partial = t.clone();
    let mut d: Vec<BigRational> = Vec::with_capacity(n + 1);
    let nq = BigRational::from_integer(BigInt::from(n));
    d.push(&nq * &partial);
    for i in 1..=n {
        // t_i = t_{i−1} · 4(n+i−1)(n−i+1) / (2i(2i−1)).
        let num = BigInt::from(4) * BigInt::from(n + i - 1) * BigInt::from(n - i + 1);
        let den = BigInt::from(2 * i) * BigInt::from(2 * i - 1);
        t *= BigRational::new(num, den);
        partial += &t;
        d.push(&nq * &partial);
    }
    let dn = Real::from_rational(&d[n], w);
    let mut acc = Real::zero(w);
    for k in 0..n {
        let weight = &d[n] - &d[k];
        let mut term = Real::from_rational(&weight, w);
        let denom = BigInt::from(k + 1).pow(s);
        term = term.div(&Real::from_bigint(&denom, w));
        if k % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc.div(&dn)
}

/// ζ(s) for integer s ≥ 2, via η(s) = (1 − 2^{1−s}) ζ(s); cached per
/// (s, bits).
pub fn zeta_int(s: u32, bits: usize) -> Real {
    assert!(s >= 2);
    zeta_signed(i64::from(s), bits)
}

fn zeta_signed(s: i64, bits: usize) -> Real {
    if let Some(hit) =
        ZETA_CACHE.with(|cell| cell.borrow().get(&(s, bits)).cloned())
    {
        return hit;
    }
    let value = if s <= 0 {
        Real::from_rational(&zeta_nonpositive(s), bits + 32)
    } else {
        assert!(s >= 2, "zeta pole");
        let eta = eta_int(s as u32, bits);
        // ζ = η · 2^{s−1}/(2^{s−1} − 1).
        let p = BigInt::from(2).pow(s as u32 - 1);
        let scale = BigRational::new(p.clone(), &p - BigInt::one());
        eta.mul(&Real::from_rational(&scale, bits + 32))
    };
    ZETA_CACHE.with(|cell| cell.borrow_mut().insert((s, bits), value.clone()));
    value
}

/// ζ_H(2, a) = Σ_{k≥0} (k+a)^{−2} for exact rational 0 < a ≤ 1, by a
/// truncated sum plus the Euler–Maclaurin tail.
pub fn hurwitz_zeta2(a: &BigRational, bits: usize) -> Real {
    assert!(a.is_positive() && *a <= BigRational::one());
    let w = bits + 32;
    let cutoff = (w as f64 * 0.111).ceil() as usize + 8;
    let mut acc = Real::zero(w);
    for k in 0..cutoff {
        let base = a + BigRational::from_integer(BigInt::from(k));
        let sq = &base * &base;
        acc = acc.add(&Real::from_rational(&sq, w).recip());
    }
    let x = Real::from_rational(&(a + BigRational::from_integer(BigInt::from(cutoff))), w);
    // ∫ tail + half-step: 1/x + 1/(2x²).
    acc = acc.add(&x.recip());
    let inv2 = x.powi(2).recip();
    acc = acc.add(&inv2.div(&Real::from_i64(2, w)));
    // Σ_j B_{2j} x^{−2j−1}, truncated when terms drop below the target.
    let threshold = Real::from_i64(2, w).powi(w + 8).recip();
    let mut p = x.powi(3).recip();
    for j in 1..=(2 * cutoff + 8) {
        let term = Real::from_rational(&bernoulli(2 * j), w).mul(&p);
        acc = acc.add(&term);
        if term.abs().le(&threshold) {
            break;
        }
        p = p.mul(&inv2);
    }
    acc
}

fn series_threshold(w: usize) -> Real {
    let t = Real::from_i64(2, w).powi(w + 8).recip();
    t.mul(&t)
}

/// Direct defining series; converges on |z| ≤ 1/2.
fn li_series(m: usize, z: &Complex, w: usize) -> Complex {
    let t2 = series_threshold(w);
    let mut acc = Complex::zero(w);
    let mut zp = Complex::one(w);
    for n in 1..200_000usize {
        zp = zp.mul(z);
        let denom = BigInt::from(n).pow(m as u32);
        let term = zp.mul_real(&Real::from_bigint(&denom, w).recip());
        acc = acc.add(&term);
        if term.abs2().le(&t2) {
            break;
        }
    }
    acc
}

/// Expansion of Li_m(e^μ) in powers of μ = ln z, for the annulus
/// 1/2 < |z| < 2: Σ_{k≠m−1} ζ(m−k) μ^k/k! + μ^{m−1}/(m−1)!·(H_{m−1} − ln(−μ)).
fn li_log_series(m: usize, z: &Complex, w: usize) -> Complex {
    let mu = z.ln();
    let t2 = series_threshold(w);
    let mut acc = Complex::zero(w);
    let mut power = Complex::one(w); // μ^k / k!
    let mut small_run = 0;
    let mut k = 0usize;
    loop {
        if k == m - 1 {
            let h = Real::from_rational(&harmonic(m - 1), w);
            let log_term = Complex::from_real(h).sub(&mu.neg().ln());
            acc = acc.add(&power.mul(&log_term));
        } else {
            let weight = zeta_signed(m as i64 - k as i64, w);
            let term = power.mul_real(&weight);
            acc = acc.add(&term);
            if k > m {
                // ζ vanishes at negative even integers; demand a run of
                // small terms before stopping.
                if term.abs2().le(&t2) {
                    small_run += 1;
                    if small_run >= 3 {
                        break;
                    }
                } else {
                    small_run = 0;
                }
            }
        }
        k += 1;
        assert!(k < 64 * 64, "log-series failed to converge");
        power = power.mul(&mu).mul_real(&Real::from_i64(k as i64, w).recip());
    }
    acc
}

/// Bernoulli polynomial B_m(x) over ℂ, exact coefficients.
fn bernoulli_poly(m: usize, x: &Complex, w: usize) -> Complex {
    let mut acc = Complex::zero(w);
    for k in 0..=m {
        let coeff = BigRational::from_integer(binomial(m, k)) * bernoulli(k);
        let term = x.powi(m - k).mul_real(&Real::from_rational(&coeff, w));
        acc = acc.add(&term);
    }
    acc
}

/// Inversion: Li_m(z) = (−1)^{m+1} Li_m(1/z) − (2πi)^m/m! · B_m(1/2 + ln(−z)/(2πi)).
fn li_inversion(m: usize, z: &Complex, w: usize) -> Complex {
    let inner = li_series(m, &z.recip(), w);
    let signed = if m % 2 == 0 { inner.neg() } else { inner };
    let two_pi_i = Complex::new(Real::zero(w), Real::pi(w).mul(&Real::from_i64(2, w)));
    let half = Complex::from_rational(&BigRational::new(BigInt::one(), BigInt::from(2)), w);
    let arg = half.add(&z.neg().ln().div(&two_pi_i));
    let poly = bernoulli_poly(m, &arg, w);
    let scale = two_pi_i
        .powi(m)
        .mul_real(&Real::from_bigint(&factorial(m), w).recip());
    signed.sub(&scale.mul(&poly))
}

/// Principal-branch polylogarithm Li_m(z), accurate to roughly 2^{−bits}.
pub fn li(m: usize, z: &Complex, bits: usize) -> Result<Complex, NumericError> {
    if m == 0 {
        return Err(NumericError::OrderZero);
    }
    let w = bits + 32;
    if z.is_zero() {
        return Ok(Complex::zero(bits));
    }
    if m == 1 {
        let one_minus = Complex::one(w).sub(z);
        if one_minus.is_zero() {
            return Err(NumericError::LiPole);
        }
        return finite("li", one_minus.ln().neg());
    }
    let a2 = z.abs2();
    let quarter = Real::from_rational(&BigRational::new(BigInt::one(), BigInt::from(4)), w);
    let four = Real::from_i64(4, w);
    let value = if a2.le(&quarter) {
        li_series(m, z, w)
    } else if a2.ge(&four) {
        li_inversion(m, z, w)
    } else if z.sub(&Complex::one(w)).is_zero() {
        Complex::from_real(zeta_int(m as u32, w))
    } else {
        li_log_series(m, z, w)
    };
    finite("li", value)
}

fn finite(what: &'static str, value: Complex) -> Result<Complex, NumericError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(NumericError::NotFinite(what))
    }
}

fn finite_real(what: &'static str, value: Real) -> Result<Real, NumericError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(NumericError::NotFinite(what))
    }
}

/// D₁(x) = log|x|.
pub fn bw_d1(x: &Complex, bits: usize) -> Result<Real, NumericError> {
    if x.is_zero() {
        return Err(NumericError::ZeroArgument("bw_d1"));
    }
    let w = bits + 32;
    finite_real("bw_d1", lift(x, w).ln_abs())
}

fn lift(x: &Complex, w: usize) -> Complex {
    Complex::new(x.re.clone().add(&Real::zero(w)), x.im.clone().add(&Real::zero(w)))
}

/// The Bloch-Wigner function D₂(x) = Im Li₂(x) + log|x|·Arg(1−x), with the
/// continuous extension D₂(0) = D₂(1) = 0.
pub fn bw_d2(x: &Complex, bits: usize) -> Result<Real, NumericError> {
    let w = bits + 32;
    if x.is_zero() {
        return Ok(Real::zero(bits));
    }
    let x = lift(x, w);
    if x.sub(&Complex::one(w)).is_zero() {
        return Ok(Real::zero(bits));
    }
    let li2 = li(2, &x, w)?;
    let arg = Complex::one(w).sub(&x).arg();
    finite_real("bw_d2", li2.im.add(&x.ln_abs().mul(&arg)))
}

/// Bernoulli weights β_k = 2^k B_k / k!.
fn beta_weight(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(2).pow(k as u32)) * bernoulli(k)
        / BigRational::from_integer(factorial(k))
}

/// Assembles Σ_{k=0}^{m−1} β_k log^k|x| Li_{m−k}(x) from supplied
/// polylogarithm values (index k holds Li_{m−k}) and projects to the real
/// part for odd m, the imaginary part for even m.
fn bw_assemble(m: usize, x: &Complex, li_values: &[Complex], w: usize) -> Real {
    debug_assert_eq!(li_values.len(), m);
    let log_abs = x.ln_abs();
    let mut acc = Complex::zero(w);
    let mut log_pow = Real::from_i64(1, w);
    for (k, li_k) in li_values.iter().enumerate() {
        let beta = Real::from_rational(&beta_weight(k), w);
        acc = acc.add(&li_k.mul_real(&beta.mul(&log_pow)));
        log_pow = log_pow.mul(&log_abs);
    }
    if m % 2 == 1 {
        acc.re
    } else {
        acc.im
    }
}

/// The single-valued polylogarithm D_m: the ℜ (m odd) or ℑ (m even) part
/// of Σ_{k=0}^{m−1} β_k log^k|x| Li_{m−k}(x), β_k = 2^k B_k/k!.
///
/// At m = 2 this is exactly [`bw_d2`] (β₁ = −1 folds the Arg term in). At
/// m = 1 it evaluates to ℜ Li₁(x) = −log|1−x|, which is −bw_d1(1−x)
/// rather than bw_d1(x) itself.
pub fn bw_dm(m: usize, x: &Complex, bits: usize) -> Result<Real, NumericError> {
    if m == 0 {
        return Err(NumericError::OrderZero);
    }
    if x.is_zero() {
        return Err(NumericError::ZeroArgument("bw_dm"));
    }
    let w = bits + 32;
    let x = lift(x, w);
    if m >= 2 && x.sub(&Complex::one(w)).is_zero() {
        // log|1| = 0 kills every k ≥ 1 term, so only Li_m(1) = ζ(m)
        // survives; its imaginary part is zero for even m.
        return Ok(if m % 2 == 1 { zeta_int(m as u32, w) } else { Real::zero(bits) });
    }
    let mut values = Vec::with_capacity(m);
    for k in 0..m {
        values.push(li(m - k, &x, w)?);
    }
    finite_real("bw_dm", bw_assemble(m, &x, &values, w))
}

/// Outcome of a discretized loop once around z = 1 (radius 1/2): the
/// winding count recovered by branch tracking, the defect |D_m(end) −
/// D_m(start)| of the assembled single-valued function, and the shift
/// accumulated by the continued Li₂ itself.
#[derive(Debug, Clone)]
pub struct MonodromyReport {
    pub winding: i64,
    pub drift: Real,
    pub li_shift: Real,
}

/// Continued polylogarithm on the loop region: principal branch plus
/// w · 2πi ln^{ℓ−1}(z)/(ℓ−1)!.
fn li_continued(
    principal: &Complex,
    order: usize,
    z: &Complex,
    w_count: i64,
    bits: usize,
) -> Complex {
    if w_count == 0 {
        return principal.clone();
    }
    let two_pi_i = Complex::new(Real::zero(bits), Real::pi(bits).mul(&Real::from_i64(2, bits)));
    let log_pow = z.ln().powi(order - 1);
    let correction = two_pi_i
        .mul(&log_pow)
        .mul_real(&Real::from_bigint(&factorial(order - 1), bits).recip())
        .mul_real(&Real::from_i64(w_count, bits));
    principal.add(&correction)
}

/// Walks z(θ) = 1 + (1/2) e^{iθ} once around (steps segments, starting on
/// the far side of the cut), tracking the Li branch by continuity, and
/// reports how far D_m lands from its start value.
pub fn monodromy_loop(m: usize, steps: usize, bits: usize) -> Result<MonodromyReport, NumericError> {
    if m < 2 {
        return Err(NumericError::OrderZero);
    }
    assert!(steps >= 16);
    let w = bits + 32;
    let pi = Real::pi(w);
    let radius = Real::from_rational(&BigRational::new(BigInt::one(), BigInt::from(2)), w);
    let point = |j: usize| -> Complex {
        let theta = pi.add(
            &pi.mul(&Real::from_i64(2 * j as i64, w)).div(&Real::from_i64(steps as i64, w)),
        );
        Complex::one(w).add(&Complex::from_polar(&radius, &theta))
    };

    let start = point(0);
    let mut start_values = Vec::with_capacity(m);
    for k in 0..m {
        start_values.push(li(m - k, &start, w)?);
    }
    let d_start = bw_assemble(m, &start, &start_values, w);
    let li2_start = start_values[m - 2].clone();

    // Track the branch of Li₂ by continuity: at each step pick the winding
    // offset whose continued value stays closest to the previous one.
    let mut winding: i64 = 0;
    let mut prev = li2_start.clone();
    let mut last_point = start.clone();
    for j in 1..=steps {
        let z = point(j);
        let p2 = li(2, &z, w)?;
        let mut best = winding;
        let mut best_dist = li_continued(&p2, 2, &z, winding, w).dist(&prev);
        for cand in [winding - 1, winding + 1] {
            let dist = li_continued(&p2, 2, &z, cand, w).dist(&prev);
            if dist.lt(&best_dist) {
                best_dist = dist;
                best = cand;
            }
        }
        winding = best;
        prev = li_continued(&p2, 2, &z, winding, w);
        last_point = z;
    }

    let mut end_values = Vec::with_capacity(m);
    for k in 0..m {
        let p = li(m - k, &last_point, w)?;
        end_values.push(li_continued(&p, m - k, &last_point, winding, w));
    }
    let d_end = bw_assemble(m, &last_point, &end_values, w);
    let drift = d_end.sub(&d_start).abs();
    let li_shift = prev.dist(&li2_start);
    Ok(MonodromyReport { winding, drift, li_shift })
}

/// L(2, χ_d) for the shipped fundamental discriminants d ∈ {−3, −4}, via
/// exact Hurwitz-zeta resummation of the character-twisted series.
pub fn dirichlet_l(d: i64, bits: usize) -> Result<Real, NumericError> {
    let (modulus, plus, minus) = match d {
        -3 => (3u32, 1u32, 2u32),
        -4 => (4, 1, 3),
        _ => return Err(NumericError::InvalidDiscriminant(d)),
    };
    let w = bits + 32;
    let q = |a: u32| BigRational::new(BigInt::from(a), BigInt::from(modulus));
    let diff = hurwitz_zeta2(&q(plus), w).sub(&hurwitz_zeta2(&q(minus), w));
    let scale = Real::from_i64(i64::from(modulus * modulus), w);
    finite_real("dirichlet_l", diff.div(&scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng as _, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const BITS: usize = 200;

    fn close(a: &Real, b: &Real, exp: i64) {
        let d = a.sub(b).abs();
        assert!(
            d.le(&Real::pow10(exp, BITS)),
            "difference {} between {} and {}",
            d.decimal(6),
            a.decimal(10),
            b.decimal(10)
        );
    }

    fn qr(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn bernoulli_numbers_match_the_table() {
        let expect = [
            qr(1, 1),
            qr(-1, 2),
            qr(1, 6),
            qr(0, 1),
            qr(-1, 30),
            qr(0, 1),
            qr(1, 42),
            qr(0, 1),
            qr(-1, 30),
            qr(0, 1),
            qr(5, 66),
            qr(0, 1),
            qr(-691, 2730),
        ];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(&bernoulli(n), e, "B_{n}");
        }
    }

    #[test]
    fn zeta_values_match_pi_powers_and_known_digits() {
        let pi = Real::pi(BITS);
        let z2 = zeta_int(2, BITS);
        close(&z2, &pi.powi(2).div(&Real::from_i64(6, BITS)), -55);
        let z4 = zeta_int(4, BITS);
        close(&z4, &pi.powi(4).div(&Real::from_i64(90, BITS)), -55);
        let z3 = zeta_int(3, BITS);
        assert_eq!(z3.decimal(16), "1.202056903159594e0");
        // η(1) = ln 2 exercises the alternating path at its slowest.
        close(&eta_int(1, BITS), &Real::ln2(BITS), -55);
    }

    #[test]
    fn hurwitz_zeta_satisfies_multiplication_theorem() {
        let z2 = zeta_int(2, BITS);
        close(&hurwitz_zeta2(&qr(1, 1), BITS), &z2, -54);
        // Σ 1/(k+1/2)² = π²/2.
        let pi = Real::pi(BITS);
        close(&hurwitz_zeta2(&qr(1, 2), BITS), &pi.powi(2).div(&Real::from_i64(2, BITS)), -54);
        // Multiplication theorem at q = 4: Σ_a ζ_H(2, a/4) = 16 ζ(2).
        let total = hurwitz_zeta2(&qr(1, 4), BITS)
            .add(&hurwitz_zeta2(&qr(2, 4), BITS))
            .add(&hurwitz_zeta2(&qr(3, 4), BITS))
            .add(&hurwitz_zeta2(&qr(4, 4), BITS));
        close(&total, &z2.mul(&Real::from_i64(16, BITS)), -53);
    }

    #[test]
    fn li_matches_closed_forms_inside_the_disk() {
        let zero = li(2, &Complex::zero(BITS), BITS).unwrap();
        assert!(zero.re.is_zero() && zero.im.is_zero());

        let pi = Real::pi(BITS);
        let half = Complex::from_rational(&qr(1, 2), BITS);
        let li2_half = li(2, &half, BITS).unwrap();
        // Li₂(1/2) = π²/12 − ln²2/2.
        let expect = pi
            .powi(2)
            .div(&Real::from_i64(12, BITS))
            .sub(&Real::ln2(BITS).powi(2).div(&Real::from_i64(2, BITS)));
        close(&li2_half.re, &expect, -54);
        assert!(li2_half.im.is_zero());

        // Li₃(1/2) = 7ζ(3)/8 − π² ln2/12 + ln³2/6.
        let li3_half = li(3, &half, BITS).unwrap();
        let expect3 = zeta_int(3, BITS)
            .mul(&Real::from_i64(7, BITS))
            .div(&Real::from_i64(8, BITS))
            .sub(&pi.powi(2).mul(&Real::ln2(BITS)).div(&Real::from_i64(12, BITS)))
            .add(&Real::ln2(BITS).powi(3).div(&Real::from_i64(6, BITS)));
        close(&li3_half.re, &expect3, -54);
    }

    #[test]
    fn li_at_roots_of_unity_and_the_pole() {
        let one = Complex::one(BITS);
        let li2_one = li(2, &one, BITS).unwrap();
        close(&li2_one.re, &zeta_int(2, BITS), -54);
        assert!(li2_one.im.is_zero());

        let minus = Complex::from_i64(-1, 0, BITS);
        let li2_minus = li(2, &minus, BITS).unwrap();
        // Li₂(−1) = −η(2) = −π²/12.
        close(&li2_minus.re, &eta_int(2, BITS).neg(), -54);
        let pi = Real::pi(BITS);
        close(&li2_minus.re, &pi.powi(2).div(&Real::from_i64(-12, BITS)), -54);

        close(&li(3, &minus, BITS).unwrap().re, &eta_int(3, BITS).neg(), -54);
        assert!(matches!(li(1, &one, BITS), Err(NumericError::LiPole)));
        assert!(matches!(li(0, &one, BITS), Err(NumericError::OrderZero)));
    }

    #[test]
    fn annulus_and_inversion_regimes_agree_with_identities() {
        let pi = Real::pi(BITS);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..8 {
            // Random z in the annulus, off the real axis.
            let re = rng.gen_range(-1.2..1.2);
            let im = rng.gen_range(0.3..1.1) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let z = Complex::from_f64(re, im, BITS);
            if z.abs2().lt(&Real::from_f64(0.3, BITS)) {
                continue;
            }
            // Inversion identity: Li₂(z) + Li₂(1/z) = −π²/6 − ln²(−z)/2.
            let lhs = li(2, &z, BITS).unwrap().add(&li(2, &z.recip(), BITS).unwrap());
            let ln_neg = z.neg().ln();
            let rhs = Complex::from_real(pi.powi(2).div(&Real::from_i64(-6, BITS)))
                .sub(&ln_neg.powi(2).mul_real(&Real::from_rational(&qr(1, 2), BITS)));
            close(&lhs.re, &rhs.re, -52);
            close(&lhs.im, &rhs.im, -52);

            // Reflection: Li₂(z) + Li₂(1−z) = π²/6 − ln z ln(1−z).
            let omz = Complex::one(BITS).sub(&z);
            let sum = li(2, &z, BITS).unwrap().add(&li(2, &omz, BITS).unwrap());
            let rhs2 = Complex::from_real(pi.powi(2).div(&Real::from_i64(6, BITS)))
                .sub(&z.ln().mul(&omz.ln()));
            close(&sum.re, &rhs2.re, -52);
            close(&sum.im, &rhs2.im, -52);
        }
    }

    #[test]
    fn cut_values_take_the_lower_limit_in_every_regime() {
        let pi = Real::pi(BITS);
        // Im Li₂(x) = −π ln x for x > 1 approaching from the principal side.
        for x in [3i64, 5] {
            let z = Complex::from_i64(x, 0, BITS);
            let v = li(2, &z, BITS).unwrap();
            close(&v.im, &pi.neg().mul(&Real::from_i64(x, BITS).ln()), -52);
        }
        let z = Complex::from_f64(1.5, 0.0, BITS);
        let v = li(2, &z, BITS).unwrap();
        close(&v.im, &pi.neg().mul(&Real::from_f64(1.5, BITS).ln()), -52);
    }

    #[test]
    fn bw_d1_is_the_log_modulus() {
        let e = Complex::from_real(Real::from_i64(1, BITS).exp());
        close(&bw_d1(&e, BITS).unwrap(), &Real::from_i64(1, BITS), -54);
        let two_i = Complex::from_i64(0, 2, BITS);
        close(&bw_d1(&two_i, BITS).unwrap(), &Real::ln2(BITS), -54);
        assert!(bw_d1(&Complex::one(BITS), BITS).unwrap().abs().le(&Real::pow10(-54, BITS)));
        assert!(matches!(
            bw_d1(&Complex::zero(BITS), BITS),
            Err(NumericError::ZeroArgument("bw_d1"))
        ));
    }

    #[test]
    fn bw_d2_vanishes_on_the_real_interval_and_extends_by_zero() {
        assert!(bw_d2(&Complex::zero(BITS), BITS).unwrap().is_zero());
        assert!(bw_d2(&Complex::one(BITS), BITS).unwrap().is_zero());
        for x in [0.25, 0.5, 0.75, 0.99] {
            let v = bw_d2(&Complex::from_f64(x, 0.0, BITS), BITS).unwrap();
            assert!(v.abs().le(&Real::pow10(-52, BITS)), "D2({x}) = {}", v.decimal(6));
        }
        // Negative reals and reals beyond 1 also land on measure-zero set.
        let v = bw_d2(&Complex::from_f64(-2.0, 0.0, BITS), BITS).unwrap();
        assert!(v.abs().le(&Real::pow10(-52, BITS)));
    }

    #[test]
    fn bw_d2_matches_hurwitz_oracles_at_special_points() {
        // D₂(i) = Catalan = (ζ_H(2,1/4) − ζ_H(2,3/4))/16.
        let catalan = hurwitz_zeta2(&qr(1, 4), BITS)
            .sub(&hurwitz_zeta2(&qr(3, 4), BITS))
            .div(&Real::from_i64(16, BITS));
        let di = bw_d2(&Complex::i(BITS), BITS).unwrap();
        close(&di, &catalan, -52);
        assert_eq!(catalan.decimal(16), "9.159655941772190e-1");

        // D₂(e^{2πi/3}) = (√3/2) L(2, χ₋₃).
        let pi = Real::pi(BITS);
        let theta = pi.mul(&Real::from_i64(2, BITS)).div(&Real::from_i64(3, BITS));
        let omega = Complex::from_polar(&Real::from_i64(1, BITS), &theta);
        let d = bw_d2(&omega, BITS).unwrap();
        let oracle = Real::from_i64(3, BITS)
            .sqrt()
            .div(&Real::from_i64(2, BITS))
            .mul(&dirichlet_l(-3, BITS).unwrap());
        close(&d, &oracle, -52);
    }

    #[test]
    fn bw_d2_symmetries_hold_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..6 {
            let z = Complex::from_f64(rng.gen_range(-1.5..1.5), rng.gen_range(0.2..1.5), BITS);
            let d = bw_d2(&z, BITS).unwrap();
            // Conjugation antisymmetry.
            close(&bw_d2(&z.conj(), BITS).unwrap(), &d.neg(), -50);
            // Six-fold relations.
            close(&bw_d2(&z.recip(), BITS).unwrap(), &d.neg(), -50);
            close(&bw_d2(&Complex::one(BITS).sub(&z), BITS).unwrap(), &d.neg(), -50);
        }
    }

    #[test]
    fn bw_d2_is_continuous_across_the_cut() {
        // ε = 10^{−P/2} at P = 50: the two one-sided values agree to τ-ish.
        let eps = Real::pow10(-25, BITS);
        for x in [1.5f64, 2.0, 3.5] {
            let up = bw_d2(&Complex::new(Real::from_f64(x, BITS), eps.clone()), BITS).unwrap();
            let down =
                bw_d2(&Complex::new(Real::from_f64(x, BITS), eps.neg()), BITS).unwrap();
            let gap = up.sub(&down).abs();
            assert!(gap.le(&Real::pow10(-23, BITS)), "gap {} at {x}", gap.decimal(6));
        }
    }

    #[test]
    fn bw_dm_specializes_to_the_low_orders() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..10 {
            let z = Complex::from_f64(rng.gen_range(-1.8..1.8), rng.gen_range(-1.8..1.8), BITS);
            if z.is_zero() {
                continue;
            }
            let via_m = bw_dm(2, &z, BITS).unwrap();
            let direct = bw_d2(&z, BITS).unwrap();
            close(&via_m, &direct, -50);

            // m = 1: ℜ Li₁ = −log|1−x| = −bw_d1(1−x).
            let one_minus = Complex::one(BITS).sub(&z);
            if !one_minus.is_zero() {
                let m1 = bw_dm(1, &z, BITS).unwrap();
                close(&m1, &bw_d1(&one_minus, BITS).unwrap().neg(), -50);
            }
        }
        assert!(matches!(bw_dm(0, &Complex::one(BITS), BITS), Err(NumericError::OrderZero)));
        assert!(matches!(
            bw_dm(3, &Complex::zero(BITS), BITS),
            Err(NumericError::ZeroArgument("bw_dm"))
        ));
    }

    #[test]
    fn bw_d3_matches_its_defining_sum_at_doubled_precision() {
        let points = [(0.3, 0.0), (1.7, 0.0), (0.4, 0.8), (-1.2, 0.5)];
        for (re, im) in points {
            let z = Complex::from_f64(re, im, BITS);
            let v = bw_dm(3, &z, BITS).unwrap();
            // Defining sum, term by term, at doubled working precision.
            let w2 = 2 * BITS;
            let z2 = Complex::from_f64(re, im, w2);
            let l = z2.ln_abs();
            let term0 = li(3, &z2, w2).unwrap();
            let term1 = li(2, &z2, w2).unwrap().mul_real(&l).neg();
            let term2 = li(1, &z2, w2)
                .unwrap()
                .mul_real(&l.powi(2).div(&Real::from_i64(3, w2)));
            let oracle = term0.add(&term1).add(&term2).re;
            close(&v, &oracle, -52);
        }
        // D₃(1) = ζ(3).
        close(&bw_dm(3, &Complex::one(BITS), BITS).unwrap(), &zeta_int(3, BITS), -52);
    }

    #[test]
    fn monodromy_loop_returns_single_valued_values() {
        for m in [2usize, 3] {
            let report = monodromy_loop(m, 144, BITS).unwrap();
            assert_eq!(report.winding.abs(), 1, "loop should wind once (m = {m})");
            assert!(
                report.li_shift.gt(&Real::from_i64(1, BITS)),
                "continued Li₂ must move across branches (m = {m})"
            );
            assert!(
                report.drift.le(&Real::pow10(-50, BITS)),
                "D_{m} drift {}",
                report.drift.decimal(6)
            );
        }
        assert!(matches!(monodromy_loop(1, 144, BITS), Err(NumericError::OrderZero)));
    }

    #[test]
    fn dirichlet_values_hit_catalan_and_reject_bad_discriminants() {
        let l4 = dirichlet_l(-4, BITS).unwrap();
        assert_eq!(l4.decimal(16), "9.159655941772190e-1");
        assert!(matches!(dirichlet_l(-7, BITS), Err(NumericError::InvalidDiscriminant(-7))));
        assert!(matches!(dirichlet_l(5, BITS), Err(NumericError::InvalidDiscriminant(5))));
        let l3 = dirichlet_l(-3, BITS).unwrap();
        // Leading digits of L(2, χ₋₃).
        assert_eq!(l3.decimal(6), "7.81302e-1");
    }

    #[test]
    fn doubling_precision_is_self_consistent() {
        let z = Complex::from_f64(0.6, 0.9, BITS);
        let coarse = bw_d2(&z, BITS).unwrap();
        let fine = bw_d2(&Complex::from_f64(0.6, 0.9, 2 * BITS), 2 * BITS).unwrap();
        close(&coarse, &fine, -55);
    }
}
