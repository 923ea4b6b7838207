//! Chinese remaindering and rational reconstruction for multi-modular
//! computations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::is_prime;
use crate::scalar::ExactScalar;

/// The `count` largest primes below `2^62`, descending. Deterministic.
pub fn large_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

/// Combines `x = r mod m` with `x = a mod p` into a residue mod `m p`,
/// normalized to `0 <= x < m p`.
pub fn crt_combine(r: &BigInt, m: &BigInt, a: u64, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let m_mod_p = (m % &pb).to_u64_digits().1.first().copied().unwrap_or(0);
    let inv = super::modp::inv_mod(m_mod_p, p).expect("moduli are coprime");
    let r_mod_p = (r % &pb).to_u64_digits().1.first().copied().unwrap_or(0);
    let diff = super::modp::sub_mod(a % p, r_mod_p, p);
    let t = super::modp::mul_mod(diff, inv, p);
    let x = r + m * BigInt::from(t);
    x.mod_floor(&(m * &pb))
}

/// The fraction `a/b` with `a = b r mod m` and `|a|, |b| <= sqrt(m/2)`, if any.
pub fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<ExactScalar> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    ExactScalar::from_parts(r1, s1).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_descend() {
        let p = large_primes(3);
        assert!(p[0] > p[1] && p[1] > p[2]);
        assert!(p.iter().all(|&q| is_prime(q) && q < 1 << 62));
    }

    #[test]
    fn reconstruct_through_crt() {
        let target = ExactScalar::ratio(-123_456_789_012_345, 987_654_321_098_765);
        let primes = large_primes(3);
        let mut r = BigInt::zero();
        let mut m = BigInt::one();
        for &p in &primes {
            let a = target.mod_prime(p).unwrap();
            r = crt_combine(&r, &m, a, p);
            m *= BigInt::from(p);
        }
        assert_eq!(rational_reconstruct(&r, &m), Some(target));
        let small = ExactScalar::ratio(3, 7);
        let p = primes[0];
        assert_eq!(rational_reconstruct(&BigInt::from(small.mod_prime(p).unwrap()), &BigInt::from(p)), Some(small));
    }
}
