//! Small exact integer helpers: primality, factorisation, unit groups mod n.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_factors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

/// Number of divisors.
pub fn sigma0(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, e)| e as u64 + 1).product()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let ext = a.rem_euclid(m).extended_gcd(&m);
    (ext.gcd == 1).then(|| ext.x.rem_euclid(m))
}

/// Multiplicative order of `a` modulo `m`; `None` if `a` is not a unit.
pub fn mult_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a % m, m) != 1 {
        return None;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * a % m;
        k += 1;
    }
    Some(k)
}

/// Units modulo `m` in increasing order.
pub fn units(m: u64) -> Vec<u64> {
    if m == 1 {
        return vec![0];
    }
    (1..m).filter(|&a| gcd(a, m) == 1).collect()
}

/// Smallest primitive root modulo a prime `p`.
pub fn smallest_primitive_root(p: u64) -> Option<u64> {
    if !is_prime(p) {
        return None;
    }
    if p == 2 {
        return Some(1);
    }
    (2..p).find(|&a| mult_order(a, p) == Some(p - 1))
}

/// Solve x = a (mod m), x = b (mod n) for coprime m, n.
pub fn crt(a: u64, m: u64, b: u64, n: u64) -> u64 {
    let mi = inv_mod(m as i64, n as i64).expect("moduli must be coprime") as u64;
    let a = a % m;
    let t = ((b % n + n - a % n) % n) * mi % n;
    a + m * t
}

pub fn rem(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(7) && is_prime(11) && !is_prime(15) && !is_prime(1));
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert!(is_squarefree(30) && !is_squarefree(12));
        assert_eq!(euler_phi(21), 12);
        assert_eq!(sigma0(45), 6);
    }

    #[test]
    fn unit_groups() {
        assert_eq!(mult_order(2, 7), Some(3));
        assert_eq!(smallest_primitive_root(7), Some(3));
        assert_eq!(smallest_primitive_root(11), Some(2));
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(-2, 7), Some(3));
        let x = crt(2, 7, 1, 3);
        assert_eq!((x % 7, x % 3), (2, 1));
    }
}
