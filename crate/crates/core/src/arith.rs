//! Elementary integer routines: gcd, integer square roots, the Kronecker
//! symbol, primality and factorization.
//!
//! Everything here is exact fixed-width arithmetic. Factorization uses trial
//! division up to 10^6 followed by Pollard rho with a deterministic
//! Miller–Rabin certificate, so accidental large inputs cannot hang a scan.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Trial-division bound before Pollard rho takes over.
const TRIAL_BOUND: u64 = 1_000_000;

/// Greatest common divisor, always nonnegative.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

/// gcd of three integers.
pub fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    gcd(gcd(a, b), c)
}

/// Extended gcd: returns `(g, u, v)` with `g = u·a + v·b` and `g ≥ 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Extended gcd of three values: `(g, u, v, w)` with `g = u·a + v·b + w·c`.
pub fn ext_gcd3(a: i128, b: i128, c: i128) -> (i128, i128, i128, i128) {
    let (g1, u1, v1) = ext_gcd(a, b);
    let (g, s, w) = ext_gcd(g1, c);
    (g, s * u1, s * v1, w)
}

/// ⌊√n⌋ for nonnegative `n`; errors on negative input.
pub fn isqrt(n: i64) -> Result<i64> {
    if n < 0 {
        return Err(Error::NegativeInput);
    }
    Ok((n as u64).isqrt() as i64)
}

pub(crate) fn isqrt_i128(n: i128) -> Result<i128> {
    if n < 0 {
        return Err(Error::NegativeInput);
    }
    Ok((n as u128).isqrt() as i128)
}

/// True iff `n` is a perfect square (negative numbers are not).
pub fn is_perfect_square(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let s = (n as u128).isqrt();
    s * s == n as u128
}

/// Kronecker symbol (a|n). Completely multiplicative in both arguments, with
/// the standard conventions at 2 and at negative n. Errors only on n = 0.
pub fn kronecker(a: i64, n: i64) -> Result<i32> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let mut k = 1i32;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            k = -k;
        }
    }
    // Peel factors of two off the bottom; (a|2) depends on a mod 8.
    if n % 2 == 0 {
        if a % 2 == 0 {
            return Ok(0);
        }
        let mut v = 0u32;
        while n % 2 == 0 {
            n /= 2;
            v += 1;
        }
        if v % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            k = -k;
        }
    }
    if n == 1 {
        return Ok(k);
    }
    // Jacobi symbol (a|n) for odd n > 1 via quadratic reciprocity.
    let mut a = a.rem_euclid(n);
    loop {
        if a == 0 {
            return Ok(if n == 1 { k } else { 0 });
        }
        let v = a.trailing_zeros();
        a >>= v;
        if v % 2 == 1 && matches!(n % 8, 3 | 5) {
            k = -k;
        }
        if a % 4 == 3 && n % 4 == 3 {
            k = -k;
        }
        let t = n % a;
        n = a;
        a = t;
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
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

/// Deterministic Miller–Rabin for the full u64 range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let r = d.trailing_zeros();
    d >>= r;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho; `n` must be odd, composite and > 1.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.wrapping_sub(y) as i64, n as i64) as u64;
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// A certified prime factorization `value = sign · ∏ pᵢ^{eᵢ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: i64,
    pub sign: i8,
    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Rebuild `value` from the factor data; used to check the invariant.
    pub fn reconstruct(&self) -> i128 {
        let mut acc = self.sign as i128;
        for &(p, e) in &self.factors {
            for _ in 0..e {
                acc *= p as i128;
            }
        }
        acc
    }

    /// The distinct primes dividing `value`.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Factor a nonzero 64-bit integer.
pub fn factorize(n: i64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let sign: i8 = if n < 0 { -1 } else { 1 };
    let mut m = n.unsigned_abs();
    let mut primes = Vec::new();
    for p in core::iter::once(2).chain((3..=TRIAL_BOUND).step_by(2)) {
        if p * p > m {
            break;
        }
        while m.is_multiple_of(p) {
            primes.push(p);
            m /= p;
        }
    }
    if m > 1 {
        if m <= TRIAL_BOUND * TRIAL_BOUND {
            // No factor below the trial bound, so the cofactor is prime.
            primes.push(m);
        } else {
            factor_u64_into(m, &mut primes);
        }
    }
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(Factorization {
        value: n,
        sign,
        factors,
    })
}

/// True iff no prime square divides `n`.
pub fn is_squarefree(n: i64) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let m = n.unsigned_abs();
    // Cheap squares first; most callers pass small d values.
    for p in [2u64, 3, 5, 7, 11, 13] {
        if m.is_multiple_of(p * p) {
            return Ok(false);
        }
    }
    Ok(factorize(n)?.is_squarefree())
}
