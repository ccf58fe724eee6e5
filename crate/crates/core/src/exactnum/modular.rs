//! Square-freeness certificates by reduction modulo word-sized primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::QPoly;

const PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// `true` only if `p` is certainly square-free over Q: some prime keeps the
/// degree and makes `gcd(p, p') = 1` modulo it, so the discriminant is
/// nonzero. `false` means undecided.
pub fn certify_squarefree(p: &QPoly) -> bool {
    let Some(deg) = p.degree() else { return false };
    if deg == 0 {
        return true;
    }
    let lcm = p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    PRIMES.iter().any(|&m| {
        let f: Vec<u64> = ints.iter().map(|c| reduce(c, m)).collect();
        if f[deg] == 0 {
            return false;
        }
        let df: Vec<u64> = (1..=deg).map(|k| mul(f[k], k as u64 % m, m)).collect();
        degree(&gcd(f, df, m)) == Some(0)
    })
}

fn reduce(c: &BigInt, m: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits")
}

fn mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, m);
        }
        a = mul(a, a, m);
        e >>= 1;
    }
    r
}

fn degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, m: u64) -> Vec<u64> {
    loop {
        let Some(db) = degree(&b) else { return a };
        b.truncate(db + 1);
        let inv = pow(b[db], m - 2, m);
        while let Some(da) = degree(&a) {
            if da < db {
                break;
            }
            let q = mul(a[da], inv, m);
            for (j, &bj) in b.iter().enumerate() {
                let t = mul(q, bj, m);
                let idx = da - db + j;
                a[idx] = (a[idx] + m - t) % m;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
}
