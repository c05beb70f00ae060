//! Exact arithmetic in cyclotomic fields `ℚ(ζ_N)`.
//!
//! A [`Cyclotomic`] stores a conductor `N` and the coordinates of its value in
//! the power basis `1, ζ_N, …, ζ_N^{φ(N)-1}` modulo `Φ_N`. Conductors that are
//! `2 mod 4` are halved on construction since `ℚ(ζ_{2n}) = ℚ(ζ_n)` for odd `n`.
//! Binary operations embed both operands into the lcm of their conductors.

pub mod field;
mod parse;
pub mod rational;

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

pub use field::{euler_phi, field, gcd, lcm, FieldData};
pub use parse::{parse_expression, ExprValue, ParseError};
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("Sqrt({0}) is not supported: argument must be squarefree with |k| <= 10")]
    UnsupportedSqrt(i64),
}

/// An element of `ℚ(ζ_N)`.
#[derive(Clone)]
pub struct Cyclotomic {
    n: u32,
    c: Vec<Rational>,
}

/// Normalized conductor: `N ≡ 2 (mod 4)` collapses to `N/2`.
pub fn normalize_conductor(n: u32) -> u32 {
    assert!(n >= 1, "conductor must be positive");
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            n: 1,
            c: vec![Rational::ZERO],
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::ONE)
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(Rational::from_int(k))
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic { n: 1, c: vec![q] }
    }

    /// Builds a value from power-basis coordinates in conductor `n`.
    /// `coeffs.len()` must equal `φ(n)` for the normalized conductor.
    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Self {
        assert_eq!(
            normalize_conductor(n),
            n,
            "conductor {n} is 2 mod 4; use the halved conductor"
        );
        assert_eq!(coeffs.len(), field(n).phi, "coefficient length must be φ({n})");
        Cyclotomic { n, c: coeffs }
    }

    /// `ζ_n^k` for any `n >= 1` and integer `k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as u64;
        if n % 4 == 2 {
            // ζ_{2m} = -ζ_m^{(m+1)/2} for odd m
            let m = n / 2;
            let half = (m as u64).div_ceil(2) * k;
            let mut z = Self::root_of_unity(m, half as i64);
            if k % 2 == 1 {
                z = -z;
            }
            return z;
        }
        let f = field(n);
        let mut c = vec![Rational::ZERO; f.phi];
        f.add_power(&mut c, k, &Rational::ONE);
        Cyclotomic { n, c }
    }

    /// `E(n)` in GAP notation.
    pub fn e(n: u32) -> Self {
        Self::root_of_unity(n, 1)
    }

    /// Square root of a squarefree integer `k` with `|k| <= 10`, written in
    /// roots of unity. Negative `k` gives `i·√|k|`.
    pub fn sqrt(k: i64) -> Result<Self, CycloError> {
        if k == 0 || k == 1 {
            return Ok(Self::from_int(k));
        }
        if k == -1 {
            return Ok(Self::e(4));
        }
        if k.unsigned_abs() > 10 || !is_squarefree(k.unsigned_abs()) {
            return Err(CycloError::UnsupportedSqrt(k));
        }
        if k < 0 {
            return Ok(&Self::e(4) * &Self::sqrt(-k)?);
        }
        let z = match k {
            2 => &Self::e(8) - &Self::root_of_unity(8, 3),
            3 => &Self::e(12) - &Self::root_of_unity(12, 5),
            5 => {
                // 1 + 2(ζ5 + ζ5^4)
                let s = &Self::e(5) + &Self::root_of_unity(5, 4);
                &Self::one() + &s.scale(&Rational::from_int(2))
            }
            7 => {
                // Gauss sum: Σ (a/7) ζ_7^a = i√7
                let mut g = Self::zero();
                for a in 1..7i64 {
                    let sign = if [1, 2, 4].contains(&a) { 1 } else { -1 };
                    g = &g + &Self::root_of_unity(7, a).scale(&Rational::from_int(sign));
                }
                // √7 = -i · (i√7)
                &(-Self::e(4)) * &g
            }
            6 => &Self::sqrt(2)? * &Self::sqrt(3)?,
            10 => &Self::sqrt(2)? * &Self::sqrt(5)?,
            _ => return Err(CycloError::UnsupportedSqrt(k)),
        };
        Ok(z)
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().skip(1).all(Rational::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.c[0].clone())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.is_rational()
    }

    /// The same value expressed in conductor `m` (a multiple of the current one).
    pub fn embed(&self, m: u32) -> Cyclotomic {
        let m = normalize_conductor(m);
        if m == self.n {
            return self.clone();
        }
        assert!(
            m.is_multiple_of(self.n),
            "cannot embed conductor {} into {}",
            self.n,
            m
        );
        let step = (m / self.n) as u64;
        let f = field(m);
        let mut c = vec![Rational::ZERO; f.phi];
        for (j, q) in self.c.iter().enumerate() {
            f.add_power(&mut c, j as u64 * step, q);
        }
        Cyclotomic { n: m, c }
    }

    fn common(&self, other: &Cyclotomic) -> u32 {
        if self.n == other.n {
            self.n
        } else {
            normalize_conductor(lcm(self.n as u64, other.n as u64) as u32)
        }
    }

    pub fn scale(&self, q: &Rational) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            c: self.c.iter().map(|x| x * q).collect(),
        }
    }

    /// Galois automorphism `ζ_N ↦ ζ_N^k` for `k` coprime to `N`.
    pub fn galois(&self, k: i64) -> Cyclotomic {
        let n = self.n as i64;
        assert!(gcd(k.rem_euclid(n) as u64, n as u64) == 1 || n == 1);
        let f = field(self.n);
        let mut c = vec![Rational::ZERO; f.phi];
        let k = k.rem_euclid(n) as u64;
        for (j, q) in self.c.iter().enumerate() {
            f.add_power(&mut c, j as u64 * k, q);
        }
        Cyclotomic { n: self.n, c }
    }

    /// Complex conjugate: `ζ_N ↦ ζ_N^{N-1}`.
    pub fn conj(&self) -> Cyclotomic {
        self.galois(-1)
    }

    /// `|z|² = z·conj(z)`.
    pub fn abs_sq(&self) -> Cyclotomic {
        self * &self.conj()
    }

    pub fn inv(&self) -> Result<Cyclotomic, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(q.recip().unwrap()));
        }
        let f = field(self.n);
        let phi_poly: Vec<Rational> = f
            .cyclotomic_poly
            .iter()
            .map(|c| Rational::from_int(*c))
            .collect();
        let s = poly_inverse_mod(&self.c, &phi_poly);
        let mut c = s;
        c.resize(f.phi, Rational::ZERO);
        Ok(Cyclotomic { n: self.n, c })
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Cyclotomic, CycloError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// If `self` is a root of unity `ζ_M^j` for `M` a multiple-compatible order,
    /// returns its multiplicative order; otherwise `None`.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        // any root of unity in ℚ(ζ_N) has order dividing lcm(2, N)
        let n = lcm(2, self.n as u64) as u32;
        let mut p = Cyclotomic::one();
        for k in 1..=n {
            p = &p * self;
            if p.is_one() {
                return Some(k);
            }
        }
        None
    }

    /// `Σ_k a_k b_k` computed with one reduction.
    pub fn dot<'a, I>(pairs: I) -> Cyclotomic
    where
        I: IntoIterator<Item = (&'a Cyclotomic, &'a Cyclotomic)> + Clone,
    {
        let mut n = 1u64;
        for (a, b) in pairs.clone() {
            n = lcm(n, a.n as u64);
            n = lcm(n, b.n as u64);
        }
        let n = normalize_conductor(n as u32);
        let f = field(n);
        let mut acc = vec![Rational::ZERO; n as usize];
        let mut any = false;
        for (a, b) in pairs {
            let (a, b) = (a.embed_ref(n), b.embed_ref(n));
            accumulate_product(&mut acc, a.as_ref(), b.as_ref(), n);
            any = true;
        }
        if !any {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            n,
            c: f.reduce_exponents(&acc),
        }
    }

    fn embed_ref(&self, m: u32) -> std::borrow::Cow<'_, [Rational]> {
        if self.n == m {
            std::borrow::Cow::Borrowed(&self.c)
        } else {
            std::borrow::Cow::Owned(self.embed(m).c)
        }
    }

    /// Approximate complex value, for diagnostics only.
    pub fn to_complex_approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, q) in self.c.iter().enumerate() {
            let v = rational_to_f64(q);
            let ang = 2.0 * std::f64::consts::PI * j as f64 / self.n as f64;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// Tries to express the value in a smaller conductor.
    pub fn minimize_conductor(&self) -> Cyclotomic {
        if self.is_rational() {
            return Cyclotomic::from_rational(self.c[0].clone());
        }
        let mut best = self.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for p in prime_factors(best.n) {
                let d = normalize_conductor(best.n / p);
                if d == best.n || d == 0 {
                    continue;
                }
                if let Some(z) = best.descend(d) {
                    best = z;
                    changed = true;
                    break;
                }
            }
        }
        best
    }

    /// Value in conductor `d | N` if it lies in `ℚ(ζ_d)`.
    fn descend(&self, d: u32) -> Option<Cyclotomic> {
        // fixed by all σ_k with k ≡ 1 mod d is necessary and sufficient
        let n = self.n as u64;
        for k in 1..n {
            if k % d as u64 == 1 % d as u64 && gcd(k, n) == 1 && *self != self.galois(k as i64) {
                return None;
            }
        }
        // solve by writing basis images of ℚ(ζ_d) in ℚ(ζ_N)
        let fd = field(d);
        let basis: Vec<Cyclotomic> = (0..fd.phi)
            .map(|j| Cyclotomic::root_of_unity(d, j as i64).embed(self.n))
            .collect();
        let coords = solve_coordinates(&basis, self)?;
        Some(Cyclotomic { n: d, c: coords })
    }
}

fn accumulate_product(acc: &mut [Rational], a: &[Rational], b: &[Rational], n: u32) {
    let n = n as usize;
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let mut idx = i + j;
            if idx >= n {
                idx -= n;
            }
            acc[idx].add_mul(x, y);
        }
    }
}

fn rational_to_f64(q: &Rational) -> f64 {
    match q {
        Rational::Small(a, b) => *a as f64 / *b as f64,
        Rational::Big(_) => {
            use num_traits::ToPrimitive;
            q.to_big().to_f64().unwrap_or(f64::NAN)
        }
    }
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_squarefree(k: u64) -> bool {
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Solves `Σ x_j basis_j = target` over ℚ, all in one conductor.
fn solve_coordinates(basis: &[Cyclotomic], target: &Cyclotomic) -> Option<Vec<Rational>> {
    let rows = target.c.len();
    let cols = basis.len();
    // augmented matrix: rows = power-basis coordinates
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b.c[r].clone()).collect();
            row.push(target.c[r].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip().unwrap();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in 0..=cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= &t;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::ZERO; cols];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = m[i][cols].clone();
    }
    Some(x)
}

/// Inverse of `a` modulo the monic polynomial `m` (coefficients lowest first),
/// by the extended Euclidean algorithm over ℚ.
fn poly_inverse_mod(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
    // invariant: s_i * a ≡ r_i (mod m)
    let mut r0 = trim(m.to_vec());
    let mut r1 = trim(a.to_vec());
    let mut s0: Vec<Rational> = vec![];
    let mut s1: Vec<Rational> = vec![Rational::ONE];
    while !(r1.len() == 1) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        assert!(!r1.is_empty(), "element is not invertible modulo Φ_N");
    }
    let c = r1[0].recip().unwrap();
    let out: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
    // reduce modulo m in case degree exceeds
    let (_, rem) = poly_divmod(&out, &trim(m.to_vec()));
    rem
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j].add_mul(x, y);
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::ZERO; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead_inv = b.last().unwrap().recip().unwrap();
    let mut q = vec![Rational::ZERO; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead_inv;
        for (j, y) in b.iter().enumerate() {
            let t = &c * y;
            r[shift + j] -= &t;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.c == other.c;
        }
        let m = self.common(other);
        self.embed(m).c == other.embed(m).c
    }
}

impl Eq for Cyclotomic {}

impl Default for Cyclotomic {
    fn default() -> Self {
        Cyclotomic::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(k: i64) -> Self {
        Cyclotomic::from_int(k)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Cyclotomic::from_rational(q)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        let m = self.common(rhs);
        let a = self.embed_ref(m);
        let b = rhs.embed_ref(m);
        Cyclotomic {
            n: m,
            c: a.iter().zip(b.iter()).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        let m = self.common(rhs);
        let a = self.embed_ref(m);
        let b = rhs.embed_ref(m);
        Cyclotomic {
            n: m,
            c: a.iter().zip(b.iter()).map(|(x, y)| x - y).collect(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if self.n == 1 {
            return rhs.scale(&self.c[0]);
        }
        if rhs.n == 1 {
            return self.scale(&rhs.c[0]);
        }
        Cyclotomic::dot([(self, rhs)])
    }
}

impl<'a> Div<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.n == rhs.n {
            for (x, y) in self.c.iter_mut().zip(&rhs.c) {
                *x += y;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        if self.n == rhs.n {
            for (x, y) in self.c.iter_mut().zip(&rhs.c) {
                *x -= y;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: Cyclotomic) -> Cyclotomic {
                <&Cyclotomic as $tr>::$f(&self, &rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for Cyclotomic {
    /// GAP-style output such as `1+2*E(3)` or `-1/3*E(12)^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, q) in self.c.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let neg = q.is_negative();
            let abs = if neg { -q } else { q.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let root = match j {
                0 => None,
                1 => Some(format!("E({})", self.n)),
                _ => Some(format!("E({})^{}", self.n, j)),
            };
            match root {
                None => write!(f, "{abs}")?,
                Some(r) if abs.is_one() => write!(f, "{r}")?,
                Some(r) => write!(f, "{abs}*{r}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Cyclotomic {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_cyclotomic(s)
    }
}

/// Parses a scalar literal such as `(-1 - E(3))/3` or `1/Sqrt(3)`.
pub fn parse_cyclotomic(text: &str) -> Result<Cyclotomic, ParseError> {
    parse_expression::<Cyclotomic>(text, &|_| None)
}
