//! Rational-prime infrastructure: a segmented Eratosthenes sieve, a
//! deterministic Miller–Rabin test for 64-bit inputs, and square roots
//! modulo p by Tonelli–Shanks with a deterministic non-residue scan.

use crate::{Error, Result};

/// Primes up to `limit` (inclusive) by a plain odd-only sieve.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n / 2 + 1]; // index i <-> odd 2i+1
    let mut primes = vec![2];
    let mut i = 1usize;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = (p * p) / 2;
            while j <= n / 2 {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    for i in 1..=n / 2 {
        if !composite[i] && 2 * i + 1 <= n {
            primes.push((2 * i + 1) as u64);
        }
    }
    primes
}

/// Segmented sieve: all primes in `[lo, hi]` (inclusive), using `O(√hi)`
/// base primes and a window bitmap. `cap` bounds `hi` so that runaway
/// requests fail loudly instead of thrashing.
pub fn primes_in_range(lo: u64, hi: u64, cap: u64) -> Result<Vec<u64>> {
    if hi > cap {
        return Err(Error::CapacityExceeded(format!(
            "sieve upper bound {hi} exceeds configured capacity {cap}"
        )));
    }
    if hi < lo || hi < 2 {
        return Ok(Vec::new());
    }
    let lo = lo.max(2);
    let base = primes_up_to((hi as f64).sqrt() as u64 + 1);
    let len = (hi - lo + 1) as usize;
    let mut composite = vec![false; len];
    for &p in &base {
        if p * p > hi {
            break;
        }
        let start = ((lo + p - 1) / p * p).max(p * p);
        let mut m = start;
        while m <= hi {
            composite[(m - lo) as usize] = true;
            m += p;
        }
    }
    Ok((0..len)
        .filter(|&i| !composite[i] && lo + i as u64 >= 2)
        .map(|i| lo + i as u64)
        .collect())
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all 64-bit inputs.
///
/// The witness set {2,3,5,7,11,13,17,19,23,29,31,37} is sufficient for
/// n < 3.3·10²⁴, which covers u64.
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
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Floor of the integer square root.
pub fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    // float guess can be off by a couple of ulps at 128 bits
    while x > 0 && x.saturating_mul(x) > n {
        x -= 1;
    }
    while (x + 1).saturating_mul(x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square_u128(n: u128) -> Option<u128> {
    let r = isqrt_u128(n);
    (r * r == n).then_some(r)
}

/// Kronecker symbol (a|n) for arbitrary integers.
pub fn kronecker(a: i64, n: i64) -> i32 {
    let mut a = a as i128;
    let mut n = n as i128;
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut v = 0;
    while n % 2 == 0 {
        n /= 2;
        v += 1;
    }
    let mut k = if v % 2 == 0 {
        1i32
    } else {
        match (a % 8 + 8) % 8 {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        }
    };
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    // now n odd positive: standard Jacobi loop
    a = ((a % n) + n) % n;
    while a != 0 {
        v = 0;
        while a % 2 == 0 {
            a /= 2;
            v += 1;
        }
        if v % 2 == 1 {
            let nm8 = n % 8;
            if nm8 == 3 || nm8 == 5 {
                k = -k;
            }
        }
        if a % 4 == 3 && n % 4 == 3 {
            k = -k;
        }
        let t = a;
        a = n % t;
        n = t;
    }
    if n == 1 {
        k
    } else {
        0
    }
}

/// Square root of `a` modulo an odd prime `p` by Tonelli–Shanks; the
/// non-residue needed by the algorithm is found by scanning 2, 3, 5, …,
/// which keeps the routine fully deterministic.
pub fn sqrt_mod_p(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if p == 2 {
        return Some(a);
    }
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    // Tonelli–Shanks
    let mut q = p - 1;
    let mut s = 0u32;
    while q & 1 == 0 {
        q >>= 1;
        s += 1;
    }
    let mut z = 2u64;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns (g, x, y) with a·x + b·y = g ≥ 0.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

pub fn is_squarefree(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut f = 2u64;
    while f * f <= n {
        if n % f == 0 {
            n /= f;
            if n % f == 0 {
                return false;
            }
        }
        f += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn segmented_matches_plain() {
        let plain: Vec<u64> = primes_up_to(10_000)
            .into_iter()
            .filter(|&p| p >= 5_000)
            .collect();
        let seg = primes_in_range(5_000, 10_000, 1 << 30).unwrap();
        assert_eq!(plain, seg);
    }

    #[test]
    fn segmented_capacity_is_loud() {
        assert!(matches!(
            primes_in_range(10, 100, 50),
            Err(Error::CapacityExceeded(_))
        ));
    }

    #[test]
    fn miller_rabin_agrees_with_sieve() {
        let primes = primes_up_to(20_000);
        let mut it = primes.iter().peekable();
        for n in 0..20_000u64 {
            let in_sieve = it.peek() == Some(&&n);
            if in_sieve {
                it.next();
            }
            assert_eq!(is_prime_u64(n), in_sieve, "disagreement at {n}");
        }
    }

    #[test]
    fn miller_rabin_large() {
        assert!(is_prime_u64(1_000_000_007));
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime_u64(1_000_000_007u64 * 3));
        assert!(!is_prime_u64((1 << 31) - 2));
    }

    #[test]
    fn sqrt_mod_small_primes() {
        for &p in &[3u64, 5, 7, 11, 13, 10_007, 1_000_003] {
            let mut residues = 0;
            for a in 1..p.min(200) {
                if let Some(r) = sqrt_mod_p(a, p) {
                    assert_eq!(mul_mod(r, r, p), a % p, "bad root for {a} mod {p}");
                    residues += 1;
                }
            }
            assert!(residues > 0);
        }
    }

    #[test]
    fn kronecker_table() {
        // (−4|p): 1 iff p ≡ 1 mod 4
        assert_eq!(kronecker(-4, 5), 1);
        assert_eq!(kronecker(-4, 13), 1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 7), -1);
        assert_eq!(kronecker(-4, 2), 0);
        // (8|p): 1 iff p ≡ ±1 mod 8
        assert_eq!(kronecker(8, 7), 1);
        assert_eq!(kronecker(8, 17), 1);
        assert_eq!(kronecker(8, 3), -1);
        assert_eq!(kronecker(8, 5), -1);
        assert_eq!(kronecker(8, 2), 0);
        // (−20|p)
        assert_eq!(kronecker(-20, 3), 1);
        assert_eq!(kronecker(-20, 7), 1);
        assert_eq!(kronecker(-20, 11), -1);
        assert_eq!(kronecker(-20, 5), 0);
    }

    #[test]
    fn ext_gcd_identity() {
        for a in -50i128..50 {
            for b in -50i128..50 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert_eq!(g, gcd_i128(a, b));
            }
        }
    }

    #[test]
    fn squarefree_checks() {
        assert!(is_squarefree(-1));
        assert!(is_squarefree(2));
        assert!(is_squarefree(-5));
        assert!(!is_squarefree(4));
        assert!(!is_squarefree(-12));
        assert!(!is_squarefree(18));
        assert!(!is_squarefree(0));
    }

    #[test]
    fn isqrt_exact() {
        for n in 0u128..2_000 {
            let r = isqrt_u128(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        assert_eq!(isqrt_u128(u64::MAX as u128 * u64::MAX as u128), u64::MAX as u128);
    }
}
