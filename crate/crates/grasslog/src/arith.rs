//! Small integer number-theory helpers: primality, factorization, p-adic
//! valuations. Shared by the prime-field scalars and the tame-symbol oracle.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Deterministic Miller-Rabin for u64. The witness set below is known to be
/// exact for all n < 2^64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of a modulo the prime p.
pub fn inv_mod_u64(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    // Extended Euclid on i128; p < 2^64 keeps every intermediate in range.
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// base^exp mod p for prime p, with negative exponents via inversion.
/// None when base ≡ 0.
pub fn pow_mod_signed(base: u64, exp: i64, p: u64) -> Option<u64> {
    let b = base % p;
    if b == 0 {
        return None;
    }
    let positive = if exp >= 0 { b } else { inv_mod_u64(b, p)? };
    Some(pow_mod_u64(positive, exp.unsigned_abs(), p))
}

/// Squarefree test for a nonzero integer (sign ignored).
pub fn is_squarefree_i64(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p.saturating_mul(p).saturating_mul(p) <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    // n now has at most two prime factors; it is non-squarefree only if a
    // perfect square remains.
    let r = n.isqrt();
    !(r > 1 && r * r == n)
}

fn is_prime_big(n: &BigUint) -> bool {
    match n.to_u64() {
        Some(v) => is_prime_u64(v),
        None => miller_rabin_big(n),
    }
}

fn miller_rabin_big(n: &BigUint) -> bool {
    let one = BigUint::one();
    let two = &one + &one;
    if n < &two {
        return false;
    }
    if n.is_even() {
        return *n == two;
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigUint::from(a) % n;
        if a.is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization of a positive integer as prime -> exponent.
/// Trial division up to a small bound, then Pollard rho on what remains.
pub fn factor(n: &BigUint) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    if n.is_zero() || n.is_one() {
        return out;
    }
    let mut rest = n.clone();
    for p in 2u64..=4096 {
        let pb = BigUint::from(p);
        if (&pb * &pb) > rest {
            break;
        }
        while (&rest % &pb).is_zero() {
            *out.entry(pb.clone()).or_insert(0) += 1;
            rest /= &pb;
        }
    }
    if !rest.is_one() {
        factor_rho(&rest, &mut out);
    }
    out
}

fn factor_rho(n: &BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if is_prime_big(n) {
        *out.entry(n.clone()).or_insert(0) += 1;
        return;
    }
    let d = pollard_rho(n);
    factor_rho(&d, out);
    factor_rho(&(n / &d), out);
}

/// Brent-cycle Pollard rho; the caller guarantees n is composite and odd-ish
/// (trial division has removed all factors up to 4096).
fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = BigUint::one();
        while d.is_one() {
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = (BigInt::from(x.clone()) - BigInt::from(y.clone())).abs();
            let diff = diff.magnitude().clone();
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if !d.is_one() && &d != n {
            return d;
        }
        c += &one;
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigUint) -> i64 {
    let mut v = 0i64;
    let mut rest = n.magnitude().clone();
    let p = p.clone();
    while !rest.is_zero() && (&rest % &p).is_zero() {
        rest /= &p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..100).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
        );
        assert!(is_prime_u64(2u64.pow(61) - 1));
        assert!(!is_prime_u64(2u64.pow(59) - 1));
    }

    #[test]
    fn inverse_mod() {
        assert_eq!(inv_mod_u64(2, 5), Some(3));
        assert_eq!(inv_mod_u64(3, 7), Some(5));
        assert_eq!(inv_mod_u64(0, 7), None);
        for p in [2u64, 3, 5, 101, 65537] {
            for a in 1..p.min(200) {
                let i = inv_mod_u64(a, p).unwrap();
                assert_eq!(mul_mod_u64(a, i, p), 1 % p);
            }
        }
    }

    #[test]
    fn squarefree() {
        for d in [-1i64, 2, -2, 3, -3, 5, 6, 7, 10, -163] {
            assert!(is_squarefree_i64(d), "{d}");
        }
        for d in [0i64, 4, -4, 8, 9, 12, 18, 25, 49, -50] {
            assert!(!is_squarefree_i64(d), "{d}");
        }
    }

    #[test]
    fn factorization() {
        let n = BigUint::from(2u32.pow(10) * 3u32.pow(4) * 5 * 7 * 11);
        let f = factor(&n);
        let expect: Vec<(u32, u32)> = vec![(2, 10), (3, 4), (5, 1), (7, 1), (11, 1)];
        let got: Vec<(u32, u32)> = f.iter().map(|(p, e)| (p.to_u32().unwrap(), *e)).collect();
        assert_eq!(got, expect);

        // A semiprime past the trial-division bound exercises Pollard rho.
        let a = BigUint::from(1_000_003u64);
        let b = BigUint::from(1_000_033u64);
        let f = factor(&(&a * &b));
        assert_eq!(f.len(), 2);
        assert_eq!(f[&a], 1);
        assert_eq!(f[&b], 1);
    }

    #[test]
    fn valuations() {
        let n = BigInt::from(-720); // -2^4 3^2 5
        assert_eq!(valuation(&n, &BigUint::from(2u32)), 4);
        assert_eq!(valuation(&n, &BigUint::from(3u32)), 2);
        assert_eq!(valuation(&n, &BigUint::from(5u32)), 1);
        assert_eq!(valuation(&n, &BigUint::from(7u32)), 0);
    }
}
