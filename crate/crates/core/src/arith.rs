//! Exact 64-bit integer arithmetic: primality, factorization, the
//! multiplicative order of a prime modulo 5, and a brute-force factorization
//! of the fifth cyclotomic polynomial over a prime field.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Witnesses that make Miller-Rabin deterministic for every `u64`.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
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

/// Deterministic primality test valid for the whole `u64` range.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if m == p {
            return true;
        }
        if m.is_multiple_of(p) {
            return false;
        }
    }
    if m < 41 * 41 {
        return true;
    }

    let mut d = m - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A prime together with its exponent in some integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn new(prime: u64, exponent: u32) -> Self {
        Self { prime, exponent }
    }
}

/// Canonical factorization of a positive integer, primes strictly increasing.
///
/// `n` is held as `u128` so that associates of a 64-bit radicand (which can
/// exceed 64 bits) share the same representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeFactorization {
    n: u128,
    factors: Vec<PrimePower>,
}

impl PrimeFactorization {
    /// Builds a factorization from prime powers, checking every invariant.
    pub fn from_factors(factors: Vec<PrimePower>) -> Result<Self, Error> {
        let mut n: u128 = 1;
        let mut previous = 0u64;
        for pp in &factors {
            if pp.exponent == 0 {
                return Err(Error::InvalidFactorization(format!(
                    "zero exponent for prime {}",
                    pp.prime
                )));
            }
            if pp.prime <= previous {
                return Err(Error::InvalidFactorization(
                    "primes must be strictly increasing".into(),
                ));
            }
            if !is_prime(pp.prime) {
                return Err(Error::NotPrime(pp.prime));
            }
            previous = pp.prime;
            n = checked_pow_mul(n, pp.prime, pp.exponent).ok_or(Error::Overflow)?;
        }
        Ok(Self { n, factors })
    }

    pub fn n(&self) -> u128 {
        self.n
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies the factorization back out.
    pub fn expand(&self) -> Option<u128> {
        self.factors
            .iter()
            .try_fold(1u128, |acc, pp| checked_pow_mul(acc, pp.prime, pp.exponent))
    }

    pub fn exponent_of(&self, prime: u64) -> u32 {
        self.factors
            .iter()
            .find(|pp| pp.prime == prime)
            .map_or(0, |pp| pp.exponent)
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, pp) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if pp.exponent == 1 {
                write!(f, "{}", pp.prime)?;
            } else {
                write!(f, "{}^{}", pp.prime, pp.exponent)?;
            }
        }
        Ok(())
    }
}

pub(crate) fn checked_pow_mul(mut acc: u128, base: u64, exp: u32) -> Option<u128> {
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

/// Factorizes `n` by trial division over a 2-3-5 wheel.
///
/// Stops early once the cofactor is prime, so inputs with at most one large
/// prime factor are cheap regardless of size.
pub fn factorize(n: u64) -> Result<PrimeFactorization, Error> {
    if n < 2 {
        return Err(Error::TooSmall(n as u128));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut take = |rest: &mut u64, p: u64| {
        let mut e = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push(PrimePower::new(p, e));
        }
    };
    for p in [2u64, 3, 5] {
        take(&mut rest, p);
    }

    // Offsets from 7 through one turn of the 30-wheel.
    const GAPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut d = 7u64;
    let mut i = 0;
    while rest > 1 && d.saturating_mul(d) <= rest {
        if rest.is_multiple_of(d) {
            take(&mut rest, d);
            if is_prime(rest) {
                break;
            }
        }
        d += GAPS[i];
        i = (i + 1) % GAPS.len();
    }
    if rest > 1 {
        factors.push(PrimePower::new(rest, 1));
    }

    Ok(PrimeFactorization {
        n: n as u128,
        factors,
    })
}

/// Least `f >= 1` with `p^f = 1 (mod 5)`.
pub fn mult_order_mod5(p: u64) -> Result<u32, Error> {
    if p == 5 {
        return Err(Error::PrimeFive);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let r = p % 5;
    let mut x = r;
    let mut f = 1;
    while x != 1 {
        x = x * r % 5;
        f += 1;
    }
    Ok(f)
}

/// Residue degree and number of factors of a prime in the fifth cyclotomic
/// field, as read off a factorization of `x^4+x^3+x^2+x+1` mod p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Splitting {
    pub f: u32,
    pub g: u32,
}

/// Factors the fifth cyclotomic polynomial over `F_p` by exhaustive search
/// and reports the common degree of its irreducible factors and their count.
///
/// Linear factors are found by evaluating at every residue. With no roots
/// left, a split into two monic quadratics `(x^2+bx+c)(x^2+(1-b)x+d)` is
/// searched over all `b`; matching coefficients forces `c+d = 1-b(1-b)` and
/// `cd = 1`, so `c, d` are the roots of a quadratic and are read from a table
/// of square roots mod p. Anything left after both searches is irreducible.
///
/// Does not consult `p mod 5`.
pub fn cyclotomic_splitting_oracle(p: u64) -> Result<Splitting, Error> {
    if p == 5 {
        return Err(Error::PrimeFive);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let degrees = phi5_factor_degrees(p);
    let f = degrees[0];
    if degrees.iter().any(|&d| d != f) {
        return Err(Error::OracleInconsistent { prime: p, degrees });
    }
    Ok(Splitting {
        f,
        g: degrees.len() as u32,
    })
}

/// Degrees of the irreducible factors of `x^4+x^3+x^2+x+1` over `F_p`,
/// sorted ascending. Assumes `p` prime and `p != 5`.
fn phi5_factor_degrees(p: u64) -> Vec<u32> {
    let phi = |x: u64| -> u64 {
        // Horner: (((x+1)x+1)x+1)x+1
        let mut acc = 1u64;
        for _ in 0..4 {
            acc = (mul_mod(acc, x, p) + 1) % p;
        }
        acc
    };
    let roots: Vec<u64> = (0..p).filter(|&x| phi(x) == 0).collect();
    let linear = roots.len();
    let mut degrees = vec![1u32; linear];

    match 4 - linear {
        0 => {}
        // no roots remain in the cofactor, so degree 1..=3 means irreducible
        rest @ 1..=3 => degrees.push(rest as u32),
        _ => {
            if has_quadratic_split(p) {
                degrees.extend([2, 2]);
            } else {
                degrees.push(4);
            }
        }
    }
    degrees.sort_unstable();
    degrees
}

/// Whether `x^4+x^3+x^2+x+1` is a product of two distinct monic quadratics
/// over `F_p`.
fn has_quadratic_split(p: u64) -> bool {
    if p == 2 {
        // only x^2+x+1 is irreducible of degree 2 over F_2, and its square is
        // x^4+x^2+1
        return false;
    }
    let mut sqrt = vec![None; p as usize];
    for y in 0..p {
        let sq = mul_mod(y, y, p) as usize;
        if sqrt[sq].is_none() {
            sqrt[sq] = Some(y);
        }
    }
    let inv2 = p.div_ceil(2);
    let four = 4 % p;
    for b in 0..p {
        let b2 = (1 + p - b) % p;
        // c + d = s, c * d = 1
        let s = (1 + p - mul_mod(b, b2, p)) % p;
        let disc = (mul_mod(s, s, p) + p - four) % p;
        let Some(r) = sqrt[disc as usize] else {
            continue;
        };
        for root in [r, (p - r) % p] {
            let c = mul_mod((s + root) % p, inv2, p);
            let d = (s + p - c) % p;
            if mul_mod(c, d, p) != 1 {
                continue;
            }
            // x coefficient: b*d + b2*c = 1
            if (mul_mod(b, d, p) + mul_mod(b2, c, p)) % p == 1 && (b, c) != (b2, d) {
                return true;
            }
        }
    }
    false
}
