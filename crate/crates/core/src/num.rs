//! Exact number helpers: rationals, valuations and the elementary arithmetic
//! functions (Möbius, totient, divisors) used throughout the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number used for every coefficient in the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Render as `num/den`, always with an explicit denominator.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parse `a`, `a/b` or `-a/b`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(Q::new(a, b))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Number-theoretic Möbius function.
pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// p-adic valuation of a positive integer.
pub fn vp(mut n: u64, p: u64) -> u32 {
    assert!(n > 0, "valuation of zero");
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

pub fn vp_big(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (quo, rem) = n.div_rem(&p);
        if !rem.is_zero() {
            return e;
        }
        n = quo;
        e += 1;
    }
}

/// p-adic valuation of a non-zero rational.
pub fn vp_q(x: &Q, p: u64) -> i64 {
    vp_big(x.numer(), p) - vp_big(x.denom(), p)
}

/// `x` lies in `step * Z`.
pub fn in_lattice(x: &Q, step: &Q) -> bool {
    (x / step).is_integer()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scale a rational vector to a primitive integer vector whose first
/// non-zero entry is positive. The zero vector is returned unchanged.
pub fn primitive_integral(v: &[Q]) -> Vec<BigInt> {
    let den = common_denominator(v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Q::from_integer(den.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if content.is_zero() {
        return ints;
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| if x.is_negative() { -BigInt::one() } else { BigInt::one() })
        .unwrap();
    ints.into_iter().map(|x| x / &content * &sign).collect()
}

pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}

/// Multiplicative order of `k` modulo `m` (`None` if not a unit).
pub fn mult_order(k: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(k % m, m) != 1 {
        return None;
    }
    let mut x = k % m;
    let mut ord = 1;
    while x != 1 {
        x = x * (k % m) % m;
        ord += 1;
    }
    Some(ord)
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}
