//! Small finite fields with table arithmetic.
//!
//! Elements are bytes: for `q = p^k` the element with index
//! `c_0 + c_1·p + ⋯ + c_{k−1}·p^{k−1}` is the residue class of
//! `c_0 + c_1·x + ⋯` modulo the stored irreducible polynomial.

use std::fmt;

use crate::error::{Error, Result};

/// Conway polynomials for the prime powers up to 64, low degree first.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
];

pub(crate) fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl FiniteField {
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) || p > 251 {
            return Err(Error::UnsupportedField(p));
        }
        Self::with_modulus(p, vec![0, 1])
    }

    /// The field of order `q`, using the stored Conway polynomial when `q`
    /// is a proper prime power.
    pub fn new(q: u32) -> Result<Self> {
        if is_prime(q) {
            return Self::prime(q);
        }
        CONWAY
            .iter()
            .find(|(p, k, _)| p.pow(*k) == q)
            .ok_or(Error::UnsupportedField(q))
            .and_then(|(p, _, m)| Self::with_modulus(*p, m.to_vec()))
    }

    /// `modulus` is monic, low degree first, and must be irreducible over `F_p`.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p) || modulus.len() < 2 || modulus.last() != Some(&1) {
            return Err(Error::UnsupportedField(p));
        }
        let k = (modulus.len() - 1) as u32;
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= 256)
            .ok_or(Error::UnsupportedField(p))?;
        if modulus.iter().any(|&c| c >= p) || !is_irreducible(p, &modulus) {
            return Err(Error::UnsupportedField(q));
        }
        let digits = |x: u32| -> Vec<u32> { (0..k).map(|i| (x / p.pow(i)) % p).collect() };
        let index = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = index(&sum) as u8;
                mul[(a * q + b) as usize] = index(&poly_mulmod(p, &da, &db, &modulus)) as u8;
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for a in 0..qs {
            neg[a] = (0..qs).find(|&b| add[a * qs + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..qs).find(|&b| mul[a * qs + b] == 1).unwrap() as u8;
            }
        }
        Ok(Self {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Panics on zero.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.q).map(|x| x as u8)
    }
}

fn poly_mulmod(p: u32, a: &[u32], b: &[u32], modulus: &[u32]) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; 2 * k.max(1)];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c != 0 {
            for (j, &m) in modulus.iter().enumerate() {
                let idx = d - k + j;
                prod[idx] = (prod[idx] + (p - c) * m % p) % p;
            }
        }
    }
    prod.truncate(k);
    prod
}

/// Irreducible iff no monic polynomial of degree `1..=deg/2` divides it.
fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    for d in 1..=n / 2 {
        for idx in 0..p.pow(d as u32) {
            let mut g: Vec<u32> = (0..d).map(|i| (idx / p.pow(i as u32)) % p).collect();
            g.push(1);
            if poly_rem(p, f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(p: u32, f: &[u32], g: &[u32]) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (j, &m) in g.iter().enumerate() {
            r[shift + j] = (r[shift + j] + (p - c) * m % p) % p;
        }
        r.pop();
    }
    r
}
