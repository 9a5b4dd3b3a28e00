//! Elementary arithmetic: gcd, factorization by trial division, Euler's
//! totient, the Moebius function, divisor lists and primitive roots.
//!
//! Everything here is exact integer arithmetic at desk scale (moduli up to a
//! few hundred); no attempt is made at asymptotic efficiency.

use crate::error::{Error, Result};

/// Greatest common divisor, always nonnegative.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Factorization `n = prod p_i^{k_i}` with ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler totient. `n = 0` is a domain error.
pub fn totient(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("totient(0) undefined"));
    }
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

/// Moebius function. `n = 0` is a domain error.
pub fn moebius(n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::domain("moebius(0) undefined"));
    }
    let f = factorize(n);
    if f.iter().any(|&(_, k)| k > 1) {
        return Ok(0);
    }
    Ok(if f.len() % 2 == 0 { 1 } else { -1 })
}

/// Divisors of n in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors of 0");
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Euclidean residue in `0..m`.
#[inline]
pub fn umod(n: i64, m: u64) -> u64 {
    let m = m as i64;
    (((n % m) + m) % m) as u64
}

/// a^e mod m.
pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % m;
        }
        a = a * a % m;
        e >>= 1;
    }
    r
}

/// Smallest primitive root modulo an odd prime power `p^k` (p odd).
///
/// The smallest primitive root g mod p is upgraded to p^k by the standard
/// criterion: g works for all k unless g^(p-1) = 1 mod p^2, in which case
/// g + p does.
pub fn primitive_root_odd_prime_power(p: u64, k: u32) -> u64 {
    debug_assert!(p % 2 == 1 && p > 2);
    let order = p - 1;
    let pf = factorize(order);
    let mut g = 2;
    loop {
        if pow_mod(g, order, p) == 1 && pf.iter().all(|&(q, _)| pow_mod(g, order / q, p) != 1) {
            break;
        }
        g += 1;
    }
    if k == 1 {
        return g;
    }
    let p2 = p * p;
    if pow_mod(g % p2, p - 1, p2) == 1 {
        g + p
    } else {
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totient_values() {
        assert_eq!(totient(1).unwrap(), 1);
        assert_eq!(totient(12).unwrap(), 4);
        assert_eq!(totient(60).unwrap(), 16);
        assert!(totient(0).is_err());
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(12).unwrap(), 0);
        assert_eq!(moebius(30).unwrap(), -1);
        assert_eq!(moebius(6).unwrap(), 1);
        assert!(moebius(0).is_err());
    }

    #[test]
    fn totient_sums_to_n_over_divisors() {
        for n in 1..=60u64 {
            let s: u64 = divisors(n).into_iter().map(|d| totient(d).unwrap()).sum();
            assert_eq!(s, n);
        }
    }

    #[test]
    fn primitive_roots_generate() {
        for (p, k) in [(3u64, 1u32), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3)] {
            let m = p.pow(k);
            let g = primitive_root_odd_prime_power(p, k);
            let order = totient(m).unwrap();
            let mut seen = std::collections::HashSet::new();
            let mut x = 1u64;
            for _ in 0..order {
                x = x * g % m;
                seen.insert(x);
            }
            assert_eq!(seen.len() as u64, order, "g={g} mod {m}");
        }
    }
}
