//! Finite fields `𝔽_{p^k}` small enough for log tables.
//!
//! Nonzero elements are stored by their discrete logarithm to a fixed
//! generator; addition goes through Zech logarithms.

use std::fmt;

use super::SmoothError;

/// Upper bound on `p^k`; tables are `O(p^k)`.
pub const MAX_FIELD_SIZE: u64 = 1 << 22;

/// A field element: `Elem::ZERO` or `g^log`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(u32::MAX);

    pub fn is_zero(self) -> bool {
        self == Elem::ZERO
    }

    /// Discrete log, or `None` for zero.
    pub fn log(self) -> Option<u32> {
        (!self.is_zero()).then_some(self.0)
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(l) => write!(f, "g^{l}"),
        }
    }
}

/// `𝔽_{p^k}` together with the image of `ζ_N`.
#[derive(Clone)]
pub struct GFContext {
    p: u32,
    k: u32,
    /// Monic modulus, coefficients from the constant term up.
    modulus: Vec<u32>,
    q: u32,
    /// `exp[i]` = encoding of `g^i` (base-`p` digits of the coefficient vector).
    exp: Vec<u32>,
    /// Inverse of `exp` on encodings `1..q`.
    log: Vec<u32>,
    /// `zech[n]` = log of `1 + g^n`, or `u32::MAX` when that sum is zero.
    zech: Vec<u32>,
    conductor: u32,
    zeta: Elem,
}

impl fmt::Debug for GFContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {}", self.p, self.k, self.modulus_string())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative order of `p` modulo `n` (`n ≥ 1`, `gcd(p, n) = 1`).
pub fn multiplicative_order(p: u64, n: u64) -> u32 {
    if n == 1 {
        return 1;
    }
    let mut x = p % n;
    let mut k = 1;
    while x != 1 {
        x = x * (p % n) % n;
        k += 1;
    }
    k
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let k = m.len() - 1;
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    // m is monic: x^k = -Σ m_j x^j
    for d in (k..2 * k).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for j in 0..k {
            let sub = c * m[j] as u64 % p as u64;
            prod[d - k + j] = (prod[d - k + j] + p as u64 - sub) % p as u64;
        }
    }
    prod[..k].iter().map(|&x| x as u32).collect()
}

fn encode(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn decode(mut x: u32, p: u32, k: usize) -> Vec<u32> {
    let mut v = vec![0; k];
    for d in v.iter_mut() {
        *d = x % p;
        x /= p;
    }
    v
}

/// Whether the monic polynomial `m` has no monic factor of degree `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    for d in 1..=k / 2 {
        // every monic polynomial of degree d
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut f = decode(idx as u32, p, d);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db] as u64, p as u64);
    let p = p as u64;
    while r.len() > db {
        let top = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if top != 0 {
            let c = top * lead_inv % p;
            for (j, &bj) in b.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p - c * bj as u64 % p) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|x| x as u32).collect()
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
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

impl GFContext {
    /// Builds `𝔽_{p^k}` with `k = ord_N(p)` and fixes the image of `ζ_N`.
    pub fn new(p: u32, conductor: u32) -> Result<Self, SmoothError> {
        if !is_prime(p as u64) {
            return Err(SmoothError::NotPrime(p));
        }
        if conductor.is_multiple_of(p) {
            return Err(SmoothError::Ramified { p, conductor });
        }
        let k = multiplicative_order(p as u64, conductor as u64);
        let q64 = (p as u64).pow(k);
        if q64 > MAX_FIELD_SIZE {
            return Err(SmoothError::FieldTooLarge { p, k, conductor });
        }
        let q = q64 as u32;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            // lexicographic search over monic degree-k polynomials
            (0..(p as u64).pow(k))
                .map(|idx| {
                    let mut m = decode(idx as u32, p, k as usize);
                    m.push(1);
                    m
                })
                .find(|m| m[0] != 0 && is_irreducible(m, p))
                .expect("an irreducible polynomial of every degree exists")
        };
        // smallest generator in encoding order
        let order = q - 1;
        let mut exp = Vec::with_capacity(order as usize);
        let mut gen = None;
        for cand in 1..q {
            let g = decode(cand, p, k as usize);
            let mut cur = vec![0; k as usize];
            cur[0] = 1;
            let mut table = Vec::with_capacity(order as usize);
            let mut ok = true;
            for i in 0..order {
                let e = encode(&cur, p);
                if i > 0 && e == 1 {
                    ok = false;
                    break;
                }
                table.push(e);
                cur = poly_mulmod(&cur, &g, &modulus, p);
            }
            if ok {
                gen = Some(cand);
                exp = table;
                break;
            }
        }
        gen.expect("the multiplicative group is cyclic");
        let mut log = vec![u32::MAX; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let mut zech = vec![u32::MAX; order as usize];
        for n in 0..order {
            let mut v = decode(exp[n as usize], p, k as usize);
            v[0] = (v[0] + 1) % p;
            let e = encode(&v, p);
            zech[n as usize] = if e == 0 { u32::MAX } else { log[e as usize] };
        }
        let zeta = Elem((order / conductor) % order);
        Ok(GFContext {
            p,
            k,
            modulus,
            q,
            exp,
            log,
            zech,
            conductor,
            zeta,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The modulus as text in the variable `t`.
    pub fn modulus_string(&self) -> String {
        let mut parts = Vec::new();
        for (d, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match d {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{d}"),
            };
            parts.push(match (c, d) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        parts.join("+")
    }

    /// Image of `ζ_N`.
    pub fn zeta(&self) -> Elem {
        self.zeta
    }

    pub fn one(&self) -> Elem {
        Elem(0)
    }

    /// The prime-field element `a mod p`.
    pub fn from_int(&self, a: i64) -> Elem {
        let r = a.rem_euclid(self.p as i64) as u32;
        if r == 0 {
            Elem::ZERO
        } else {
            Elem(self.log[r as usize])
        }
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let s = a.0 as u64 + b.0 as u64;
        Elem((s % (self.q as u64 - 1)) as u32)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let ord = self.q - 1;
        let n = (b.0 + ord - a.0) % ord;
        let z = self.zech[n as usize];
        if z == u32::MAX {
            Elem::ZERO
        } else {
            Elem(((a.0 as u64 + z as u64) % ord as u64) as u32)
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if a.is_zero() || self.p == 2 {
            return a;
        }
        let ord = self.q - 1;
        Elem((a.0 + ord / 2) % ord)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        let l = a.log()?;
        let ord = self.q - 1;
        Some(Elem((ord - l) % ord))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        match a.log() {
            None if e == 0 => self.one(),
            None => Elem::ZERO,
            Some(l) => Elem(((l as u64 * e) % (self.q as u64 - 1)) as u32),
        }
    }

    /// Every element, zero first.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        std::iter::once(Elem::ZERO).chain((0..self.q - 1).map(Elem))
    }

    /// Coefficient vector of `a` over the prime field, constant term first.
    pub fn coordinates(&self, a: Elem) -> Vec<u32> {
        match a.log() {
            None => vec![0; self.k as usize],
            Some(l) => decode(self.exp[l as usize], self.p, self.k as usize),
        }
    }

    /// `a` as text: a prime-field integer when `k = 1`, else a polynomial in `t`.
    pub fn format(&self, a: Elem) -> String {
        let v = self.coordinates(a);
        if self.k == 1 {
            return v[0].to_string();
        }
        let mut parts = Vec::new();
        for (d, &c) in v.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match d {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{d}"),
            };
            parts.push(match (c, d) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}
