//! Per-conductor tables: cyclotomic polynomials and the reduction of every
//! power `x^e` (`0 <= e < N`) modulo `Φ_N`.
//!
//! Tables are built once per conductor, leaked, and shared by every thread.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use super::rational::Rational;

/// Arithmetic tables for `ℚ(ζ_N)` in the power basis `1, ζ, …, ζ^{φ(N)-1}`.
#[derive(Debug)]
pub struct FieldData {
    pub n: u32,
    pub phi: usize,
    /// Coefficients of `Φ_N`, lowest degree first (monic, length `phi + 1`).
    pub cyclotomic_poly: Vec<i64>,
    /// `reduce[e]` lists the nonzero `(index, coefficient)` pairs of `x^e mod Φ_N`.
    pub reduce: Vec<Vec<(u32, i64)>>,
}

impl FieldData {
    fn build(n: u32) -> Self {
        let poly = cyclotomic_polynomial(n);
        let phi = poly.len() - 1;
        let mut reduce = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi.max(1)];
        if phi == 0 {
            unreachable!("cyclotomic polynomial has positive degree");
        }
        cur[0] = 1;
        for _ in 0..n {
            reduce.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(i, c)| (i as u32, *c))
                    .collect(),
            );
            // multiply by x and reduce the overflowing top coefficient
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] = cur[i]
                        .checked_sub(top.checked_mul(poly[i]).expect("reduction table overflow"))
                        .expect("reduction table overflow");
                }
            }
        }
        FieldData {
            n,
            phi,
            cyclotomic_poly: poly,
            reduce,
        }
    }

    /// Reduces a vector indexed by exponents mod `N` (length `N`) to the
    /// power basis.
    pub fn reduce_exponents(&self, acc: &[Rational]) -> Vec<Rational> {
        debug_assert_eq!(acc.len(), self.n as usize);
        let mut out: Vec<Rational> = acc[..self.phi].to_vec();
        for (e, c) in acc.iter().enumerate().skip(self.phi) {
            if c.is_zero() {
                continue;
            }
            for &(i, k) in &self.reduce[e] {
                let t = c.mul_int(k);
                out[i as usize] += &t;
            }
        }
        out
    }

    /// Adds `coef * ζ^e` to a power-basis vector.
    pub fn add_power(&self, out: &mut [Rational], e: u64, coef: &Rational) {
        if coef.is_zero() {
            return;
        }
        let e = (e % self.n as u64) as usize;
        for &(i, k) in &self.reduce[e] {
            let t = coef.mul_int(k);
            out[i as usize] += &t;
        }
    }
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = field(d).cyclotomic_poly.clone();
            num = exact_div(&num, &den);
        }
    }
    num
}

/// Exact division of integer polynomials by a monic divisor.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for j in 0..=dn {
                rem[i + j] -= c * den[j];
            }
        }
    }
    debug_assert!(rem.iter().all(|c| *c == 0), "inexact cyclotomic division");
    q
}

fn registry() -> &'static RwLock<HashMap<u32, &'static FieldData>> {
    static REG: OnceLock<RwLock<HashMap<u32, &'static FieldData>>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(HashMap::new()))
}

thread_local! {
    static LOCAL: RefCell<Vec<Option<&'static FieldData>>> = const { RefCell::new(Vec::new()) };
}

/// Tables for conductor `n`, built on first use.
pub fn field(n: u32) -> &'static FieldData {
    let idx = n as usize;
    if let Some(f) = LOCAL.with(|l| l.borrow().get(idx).copied().flatten()) {
        return f;
    }
    let found = registry().read().unwrap().get(&n).copied();
    let f = match found {
        Some(f) => f,
        None => {
            // build outside the lock: building may recurse into smaller conductors
            let built: &'static FieldData = Box::leak(Box::new(FieldData::build(n)));
            *registry().write().unwrap().entry(n).or_insert(built)
        }
    };
    LOCAL.with(|l| {
        let mut l = l.borrow_mut();
        if l.len() <= idx {
            l.resize(idx + 1, None);
        }
        l[idx] = Some(f);
    });
    f
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}
