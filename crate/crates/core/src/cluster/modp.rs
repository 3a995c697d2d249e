//! Arithmetic modulo the Mersenne prime `2^61 - 1`, used for fingerprints.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::Rat;
use crate::comb::{all_ksubsets, KSubset};

pub const P: u64 = (1 << 61) - 1;
pub const PROBES: usize = 2;

/// Values of a function at the fixed probe points.
pub type Fingerprint = [u64; PROBES];

pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

pub fn mul(a: u64, b: u64) -> u64 {
    let w = a as u128 * b as u128;
    let lo = (w as u64) & P;
    let hi = (w >> 61) as u64;
    add(lo, hi)
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64) -> Option<u64> {
    (a != 0).then(|| pow(a, P - 2))
}

pub fn neg(a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        P - a
    }
}

pub fn from_i64(x: i64) -> u64 {
    if x >= 0 {
        x as u64 % P
    } else {
        neg((-x) as u64 % P)
    }
}

/// Reduction of a rational; `None` when the denominator vanishes mod p.
pub fn from_rat(r: &Rat) -> Option<u64> {
    let p = num_bigint::BigInt::from(P);
    let reduce = |x: &num_bigint::BigInt| -> u64 {
        let m = ((x % &p) + &p) % &p;
        m.try_into().unwrap()
    };
    let n = reduce(r.numer());
    let d = reduce(r.denom());
    inv(d).map(|di| mul(n, di))
}

/// `base^e` with a possibly negative exponent.
pub fn pow_i(base: u64, e: i32) -> Option<u64> {
    if e >= 0 {
        Some(pow(base, e as u64))
    } else {
        inv(base).map(|b| pow(b, (-e) as u64))
    }
}

/// Determinant by Gaussian elimination.
pub fn det(mut m: Vec<Vec<u64>>) -> u64 {
    let n = m.len();
    let mut d = 1u64;
    for c in 0..n {
        let piv = match (c..n).find(|&r| m[r][c] != 0) {
            Some(r) => r,
            None => return 0,
        };
        if piv != c {
            m.swap(piv, c);
            d = neg(d);
        }
        d = mul(d, m[c][c]);
        let ic = inv(m[c][c]).unwrap();
        for r in c + 1..n {
            if m[r][c] == 0 {
                continue;
            }
            let f = mul(m[r][c], ic);
            for cc in c..n {
                let t = mul(f, m[c][cc]);
                m[r][cc] = sub(m[r][cc], t);
            }
        }
    }
    d
}

/// Random `k × n` matrices mod p at which every function is fingerprinted.
#[derive(Clone, Debug)]
pub struct ProbeMatrices {
    pub k: usize,
    pub n: usize,
    pub mats: Vec<Vec<Vec<u64>>>,
}

impl ProbeMatrices {
    pub fn new(k: usize, n: usize, seed: u64) -> ProbeMatrices {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mats = (0..PROBES)
            .map(|_| {
                (0..k)
                    .map(|_| (0..n).map(|_| rng.gen_range(1..P)).collect())
                    .collect()
            })
            .collect();
        ProbeMatrices { k, n, mats }
    }

    pub fn minor(&self, s: &KSubset) -> Fingerprint {
        let mut out = [0; PROBES];
        for (t, m) in self.mats.iter().enumerate() {
            let sub: Vec<Vec<u64>> = m
                .iter()
                .map(|row| s.iter().map(|c| row[c - 1]).collect())
                .collect();
            out[t] = det(sub);
        }
        out
    }

    /// Minor on an arbitrary ordered column list (sign from the order; zero on repeats).
    pub fn minor_cols(&self, cols: &[usize]) -> Fingerprint {
        let mut out = [0; PROBES];
        for (t, m) in self.mats.iter().enumerate() {
            let sub: Vec<Vec<u64>> = m
                .iter()
                .map(|row| cols.iter().map(|&c| row[c - 1]).collect())
                .collect();
            out[t] = det(sub);
        }
        out
    }

    pub fn all_minors(&self) -> Vec<(KSubset, Fingerprint)> {
        all_ksubsets(self.k, self.n)
            .into_iter()
            .map(|s| (s, self.minor(&s)))
            .collect()
    }
}

/// Random nonzero fingerprint, for indeterminates with no geometric meaning.
pub fn random_fingerprint(rng: &mut impl Rng) -> Fingerprint {
    let mut f = [0; PROBES];
    for x in f.iter_mut() {
        *x = rng.gen_range(1..P);
    }
    f
}
