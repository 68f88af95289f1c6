//! Elementary integer arithmetic: the Kronecker-Jacobi symbol, deterministic
//! 64-bit factorization, square-free testing, divisor enumeration, and the
//! divisor character sums that drive the quadratic-form identities.

use crate::error::{Error, Result};

/// Exact integer square root: the largest `r` with `r * r <= n`.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    // f64 has 53 bits of mantissa; correct the rounding in both directions.
    while r.checked_mul(r).map_or(true, |sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map_or(false, |sq| sq <= n) {
        r += 1;
    }
    r
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd(a.unsigned_abs(), b.unsigned_abs()) as i64
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, valid for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    // This base set is deterministic for all n < 3.3 * 10^24.
    'witness: for a in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle variant of Pollard's rho with a deterministic parameter
/// sequence, so repeated runs split composites identically.
fn rho_split(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime(n) && n % 2 == 1);
    for c in 1u64.. {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!("rho parameter sequence exhausted");
}

/// Prime/exponent decomposition of a positive integer.
///
/// Invariants: primes strictly ascending, every listed prime is prime, and
/// recomposing the powers yields `n` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs in ascending prime order.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct prime factors.
    pub fn t(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Deterministic factorization of `n >= 1`: trial division up to 10^6, then
/// Miller-Rabin plus rho splitting for any remaining 64-bit cofactor.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::NonPositive);
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut rem = n;
    for p in [2u64, 3] {
        let mut e = 0;
        while rem % p == 0 {
            rem /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    let mut p = 5u64;
    let mut step = 2u64; // alternates 2, 4 over 6k +- 1
    while p <= TRIAL_DIVISION_BOUND && p * p <= rem {
        if rem % p == 0 {
            let mut e = 0;
            while rem % p == 0 {
                rem /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += step;
        step = 6 - step;
    }
    if rem > 1 {
        if p * p > rem {
            factors.push((rem, 1));
        } else {
            let mut stack = vec![rem];
            let mut large: Vec<u64> = Vec::new();
            while let Some(m) = stack.pop() {
                if is_prime(m) {
                    large.push(m);
                } else {
                    let d = rho_split(m);
                    stack.push(d);
                    stack.push(m / d);
                }
            }
            large.sort_unstable();
            let mut i = 0;
            while i < large.len() {
                let mut j = i;
                while j < large.len() && large[j] == large[i] {
                    j += 1;
                }
                factors.push((large[i], (j - i) as u32));
                i = j;
            }
        }
    }
    factors.sort_unstable_by_key(|&(p, _)| p);
    Ok(Factorization { n, factors })
}

/// True iff no prime square divides `n` (precondition `n >= 1`).
pub fn is_squarefree(n: u64) -> bool {
    debug_assert!(n >= 1);
    if n == 0 {
        return false;
    }
    factorize(n).map_or(false, |f| f.is_squarefree())
}

/// All divisors of the factored integer, ascending.
pub fn divisors(f: &Factorization) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, e) in f.factors() {
        let prev = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..prev {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

fn jacobi_odd(a: i64, n: u64) -> i64 {
    debug_assert!(n % 2 == 1);
    if n == 1 {
        return 1;
    }
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut sign = 1i64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// The Kronecker symbol (a/n), extended to all integer pairs: n may be zero,
/// negative, or even. Completely multiplicative in both arguments.
///
/// At n = 0 the value is 1 for a = +-1 and 0 otherwise.
pub fn kronecker(a: i64, n: i64) -> i64 {
    match n {
        0 => {
            return if a == 1 || a == -1 { 1 } else { 0 };
        }
        1 | -1 => {
            let unit = if n == -1 && a < 0 { -1 } else { 1 };
            return unit;
        }
        _ => {}
    }
    let neg = n < 0;
    let mut n_abs = n.unsigned_abs();
    let mut sign = if neg && a < 0 { -1i64 } else { 1 };
    let twos = n_abs.trailing_zeros();
    n_abs >>= twos;
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a/2) = 1 for a = +-1 (mod 8), -1 for a = +-3 (mod 8)
        let r = a.rem_euclid(8);
        let k2 = if r == 1 || r == 7 { 1 } else { -1 };
        if twos % 2 == 1 {
            sign *= k2;
        }
    }
    sign * jacobi_odd(a, n_abs)
}

/// Sum of Kronecker symbols `(d_sym/d)` over all divisors d of n.
pub fn divisor_kronecker_sum(n: u64, d_sym: i64) -> i64 {
    assert!(n >= 1, "divisor sums need n >= 1");
    let f = factorize(n).expect("n >= 1 factors");
    divisors(&f)
        .into_iter()
        .map(|d| kronecker(d_sym, d as i64))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_fixtures() {
        assert_eq!(kronecker(-6, 1), 1);
        assert_eq!(kronecker(-6, 2), 0);
        assert_eq!(kronecker(-6, 5), 1);
        assert_eq!(kronecker(-6, 13), -1);
        assert_eq!(kronecker(-6, 7), 1);
        assert_eq!(kronecker(-6, 11), 1);
    }

    #[test]
    fn kronecker_at_zero_and_units() {
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(-1, 0), 1);
        assert_eq!(kronecker(2, 0), 0);
        assert_eq!(kronecker(0, 0), 0);
        assert_eq!(kronecker(-7, 1), 1);
        assert_eq!(kronecker(-7, -1), -1);
        assert_eq!(kronecker(7, -1), 1);
    }

    #[test]
    fn kronecker_even_denominator() {
        // (a/2) by the 8-residue rule, zero on even a
        assert_eq!(kronecker(3, 2), -1);
        assert_eq!(kronecker(7, 2), 1);
        assert_eq!(kronecker(4, 2), 0);
        // (5/24) = (5/2)^3 (5/3) = (-1)(-1) = 1
        assert_eq!(kronecker(5, 24), 1);
    }

    #[test]
    fn euler_criterion_small_primes() {
        // For odd prime p and gcd(a, p) = 1, (a/p) matches a^((p-1)/2) mod p.
        let mut p = 3u64;
        while p < 1000 {
            if is_prime(p) {
                for a in 1..p {
                    let e = powmod(a, (p - 1) / 2, p);
                    let expect = if e == 1 { 1 } else { -1 };
                    assert_eq!(kronecker(a as i64, p as i64), expect, "a={a} p={p}");
                }
            }
            p += 2;
        }
    }

    #[test]
    fn factorize_fixtures() {
        assert_eq!(factorize(1).unwrap().factors(), &[]);
        assert_eq!(factorize(35).unwrap().factors(), &[(5, 1), (7, 1)]);
        assert_eq!(factorize(9991).unwrap().factors(), &[(97, 1), (103, 1)]);
        assert_eq!(factorize(24).unwrap().factors(), &[(2, 3), (3, 1)]);
        assert!(matches!(factorize(0), Err(Error::NonPositive)));
    }

    #[test]
    fn factorize_large_semiprime_via_rho() {
        // 1_000_003 and 1_000_033 both exceed the trial division bound.
        let n = 1_000_003u64 * 1_000_033;
        let f = factorize(n).unwrap();
        assert_eq!(f.factors(), &[(1_000_003, 1), (1_000_033, 1)]);
        let sq = 1_000_003u64 * 1_000_003;
        assert_eq!(factorize(sq).unwrap().factors(), &[(1_000_003, 2)]);
    }

    #[test]
    fn squarefree_fixtures() {
        assert!(is_squarefree(11));
        assert!(!is_squarefree(99));
        assert!(is_squarefree(995));
        assert_eq!(factorize(995).unwrap().factors(), &[(5, 1), (199, 1)]);
    }

    #[test]
    fn divisors_fixtures() {
        assert_eq!(divisors(&factorize(1).unwrap()), vec![1]);
        assert_eq!(divisors(&factorize(35).unwrap()), vec![1, 5, 7, 35]);
        assert_eq!(divisors(&factorize(97).unwrap()), vec![1, 97]);
        assert_eq!(divisors(&factorize(12).unwrap()), vec![1, 2, 3, 4, 6, 12]);
        let f = factorize(720).unwrap();
        let count: u32 = f.factors().iter().map(|&(_, e)| e + 1).product();
        assert_eq!(divisors(&f).len(), count as usize);
    }

    #[test]
    fn divisor_kronecker_sum_fixtures() {
        assert_eq!(divisor_kronecker_sum(1, -6), 1);
        assert_eq!(divisor_kronecker_sum(35, -6), 4);
        assert_eq!(divisor_kronecker_sum(11, -6), 2);
        // 995 = 5 * 199 with (-6/5) = (-6/199) = 1, so the sum is (1+1)(1+1)
        assert_eq!(divisor_kronecker_sum(995, -6), 4);
    }

    #[test]
    fn divisor_sum_multiplicative_structure() {
        // Spot-check the product formula on a handful of composites.
        for n in [35u64, 77, 144, 210, 9991] {
            let f = factorize(n).unwrap();
            let prod: i64 = f
                .factors()
                .iter()
                .map(|&(p, e)| {
                    let chi = kronecker(-6, p as i64);
                    (0..=e).map(|j| chi.pow(j)).sum::<i64>()
                })
                .product();
            assert_eq!(divisor_kronecker_sum(n, -6), prod);
        }
    }

    #[test]
    fn isqrt_exact() {
        for n in 0..2000u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
        assert_eq!(isqrt(u64::MAX), (1u64 << 32) - 1);
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001)); // 101 * 9901
        assert!(is_prime(18_446_744_073_709_551_557)); // largest 64-bit prime
    }
}
