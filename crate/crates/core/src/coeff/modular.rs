//! Word-size modular arithmetic for the gcd fast paths.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// The largest 31-bit prime; products of residues fit in `u128`.
pub(crate) const PRIME: u64 = 2_147_483_647;

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1, a, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

pub(crate) fn residue(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    u64::try_from(n.mod_floor(&m)).expect("residue below modulus")
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// 31-bit primes in decreasing order, starting at [`PRIME`].
pub(crate) fn primes() -> impl Iterator<Item = u64> {
    (1..=PRIME).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

fn trim(a: &mut Vec<u64>) {
    while a.len() > 1 && a.last() == Some(&0) {
        a.pop();
    }
}

/// Monic gcd of dense polynomials (lowest degree first) over `Z/p`.
/// Both inputs must be nonzero.
pub(crate) fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !(b.len() == 1 && b[0] == 0) {
        let inv = inv_mod(b[b.len() - 1], p);
        while a.len() >= b.len() {
            let q = mul_mod(a[a.len() - 1], inv, p);
            let shift = a.len() - b.len();
            for (i, &c) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - mul_mod(q, c, p)) % p;
            }
            a.pop();
            if a.is_empty() {
                a.push(0);
                break;
            }
        }
        trim(&mut a);
        std::mem::swap(&mut a, &mut b);
    }
    let inv = inv_mod(a[a.len() - 1], p);
    a.iter().map(|&c| mul_mod(c, inv, p)).collect()
}

/// `n / d` with `|n|, |d| <= sqrt(m / 2)` and `n ≡ u d (mod m)`.
pub(crate) fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(if t1.is_negative() {
        (-r1, -t1)
    } else {
        (r1, t1)
    })
}
