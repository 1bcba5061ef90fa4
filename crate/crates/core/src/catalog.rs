//! Named groups used by sweeps and test suites.

use crate::num::{gcd, is_prime, mult_order};

/// `C_{p^r} ⋊ C_n` of order at most `max_order` for the given primes, one
/// action per multiplicative order of the twisting exponent.
pub fn hypo_family(primes: &[u64], max_order: u64) -> Vec<String> {
    let mut out = Vec::new();
    for &p in primes.iter().filter(|&&p| is_prime(p)) {
        let mut pr = p;
        while pr <= max_order {
            for n in (1..=max_order / pr).filter(|n| n % p != 0) {
                let mut orders_seen = Vec::new();
                for k in 1..pr {
                    if gcd(k, pr) != 1 {
                        continue;
                    }
                    let Some(d) = mult_order(k, pr) else { continue };
                    if n % d != 0 || orders_seen.contains(&d) {
                        continue;
                    }
                    orders_seen.push(d);
                    out.push(match (k, n) {
                        (_, 1) => format!("C{pr}"),
                        (1, _) => format!("C{pr}xC{n}"),
                        _ => format!("C{pr}:{k}:C{n}"),
                    });
                }
            }
            pr *= p;
        }
    }
    out
}

/// `D_2n` for `2 ≤ n ≤ max_n`.
pub fn dihedral_family(max_n: u64) -> Vec<String> {
    (2..=max_n).map(|n| format!("D{}", 2 * n)).collect()
}

/// Groups outside the two families that the checks single out.
pub fn named() -> Vec<String> {
    ["S3", "S4", "C3xC3xS3", "(C7xC7):2:C3", "C5:2:C4", "C7:3:C12", "C7:3:C6"]
        .map(String::from)
        .to_vec()
}

/// The full default catalog without duplicates, in a fixed order.
pub fn default_catalog() -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for spec in named()
        .into_iter()
        .chain(dihedral_family(30))
        .chain(hypo_family(&[2, 3, 5, 7], 200))
    {
        if !out.contains(&spec) {
            out.push(spec);
        }
    }
    out
}
