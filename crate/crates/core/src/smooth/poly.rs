//! Polynomials over `𝔽_{p^k}` with packed monomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::field::{Elem, GFContext};

/// Most variables a packed monomial can hold.
pub const MAX_VARS: usize = 15;
/// Exponents and total degree must stay below this bound.
pub const MAX_EXPONENT: u32 = 127;

const HIGH_BITS: u128 = 0x8080_8080_8080_8080_8080_8080_8080_8080;

/// A monomial packed into one word.
///
/// The top byte holds the total degree and byte `i` holds the exponent
/// of variable `i`, so that adding two packed words multiplies monomials.
/// Ordering is graded reverse lexicographic with `x1 > x2 > …`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono(u128);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn from_exponents(e: &[u8]) -> Mono {
        assert!(e.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let mut w = 0u128;
        let mut deg = 0u32;
        for (i, &x) in e.iter().enumerate() {
            assert!((x as u32) <= MAX_EXPONENT, "exponent too large");
            deg += x as u32;
            w |= (x as u128) << (8 * i);
        }
        assert!(deg <= MAX_EXPONENT, "degree too large");
        Mono(w | ((deg as u128) << 120))
    }

    pub fn var(i: usize) -> Mono {
        let mut e = [0u8; MAX_VARS];
        e[i] = 1;
        Mono::from_exponents(&e[..=i])
    }

    pub fn exponent(self, i: usize) -> u8 {
        (self.0 >> (8 * i)) as u8
    }

    pub fn exponents(self, nvars: usize) -> Vec<u8> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    pub fn degree(self) -> u32 {
        (self.0 >> 120) as u32
    }

    /// Product. Panics if a degree bound is exceeded.
    pub fn mul(self, other: Mono) -> Mono {
        let s = Mono(self.0 + other.0);
        assert!(s.degree() <= MAX_EXPONENT, "degree too large");
        s
    }

    pub fn divides(self, other: Mono) -> bool {
        ((other.0 | HIGH_BITS).wrapping_sub(self.0) & HIGH_BITS) == HIGH_BITS
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(self, other: Mono) -> Mono {
        Mono(other.0 - self.0)
    }

    pub fn lcm(self, other: Mono) -> Mono {
        let mut e = [0u8; MAX_VARS];
        for (i, x) in e.iter_mut().enumerate() {
            *x = self.exponent(i).max(other.exponent(i));
        }
        Mono::from_exponents(&e)
    }

    /// Whether the supports are disjoint.
    pub fn coprime(self, other: Mono) -> bool {
        let mask = (1u128 << 120) - 1;
        (0..MAX_VARS).all(|i| {
            let sh = 8 * i;
            ((self.0 & mask) >> sh) as u8 == 0 || ((other.0 & mask) >> sh) as u8 == 0
        })
    }

    /// `Some(i)` when this is a power of the single variable `x_i`.
    pub fn pure_power_of(self) -> Option<usize> {
        let nz: Vec<usize> = (0..MAX_VARS).filter(|&i| self.exponent(i) != 0).collect();
        (nz.len() == 1).then(|| nz[0])
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        let mask = (1u128 << 120) - 1;
        self.degree()
            .cmp(&other.degree())
            .then_with(|| (other.0 & mask).cmp(&(self.0 & mask)))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents(MAX_VARS))
    }
}

/// A polynomial over `𝔽_{p^k}`; terms are sorted by decreasing monomial and
/// never carry a zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GFPolynomial {
    nvars: usize,
    terms: Vec<(Mono, Elem)>,
}

impl GFPolynomial {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        GFPolynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, Elem)>, ctx: &GFContext) -> Self {
        let mut acc: BTreeMap<Mono, Elem> = BTreeMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(Elem::ZERO);
            *e = ctx.add(*e, c);
        }
        Self::from_map(nvars, acc)
    }

    pub(crate) fn from_map(nvars: usize, acc: BTreeMap<Mono, Elem>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        GFPolynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing grevlex order.
    pub fn terms(&self) -> &[(Mono, Elem)] {
        &self.terms
    }

    /// Terms as `(exponent vector, coefficient)` pairs.
    pub fn exponent_terms(&self) -> Vec<(Vec<u8>, Elem)> {
        self.terms
            .iter()
            .map(|&(m, c)| (m.exponents(self.nvars), c))
            .collect()
    }

    pub fn leading_monomial(&self) -> Option<Mono> {
        self.terms.first().map(|t| t.0)
    }

    pub fn leading_coefficient(&self) -> Option<Elem> {
        self.terms.first().map(|t| t.1)
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self, ctx: &GFContext) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => {
                let inv = ctx.inv(lc).unwrap();
                self.scale(inv, ctx)
            }
        }
    }

    pub fn scale(&self, c: Elem, ctx: &GFContext) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        GFPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|&(m, a)| (m, ctx.mul(a, c))).collect(),
        }
    }

    /// `∂/∂x_i`.
    pub fn derivative(&self, i: usize, ctx: &GFContext) -> Self {
        let var = Mono::var(i);
        let terms = self.terms.iter().filter_map(|&(m, c)| {
            let e = m.exponent(i);
            if e == 0 {
                return None;
            }
            let c = ctx.mul(c, ctx.from_int(e as i64));
            Some((var.quotient_of(m), c))
        });
        Self::from_terms(self.nvars, terms.collect::<Vec<_>>(), ctx)
    }

    pub fn evaluate(&self, point: &[Elem], ctx: &GFContext) -> Elem {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Elem::ZERO;
        for &(m, c) in &self.terms {
            let mut t = c;
            for (i, &x) in point.iter().enumerate() {
                let e = m.exponent(i);
                if e != 0 {
                    t = ctx.mul(t, ctx.pow(x, e as u64));
                }
            }
            acc = ctx.add(acc, t);
        }
        acc
    }

    /// Human-readable form, coefficients via [`GFContext::format`].
    pub fn display(&self, ctx: &GFContext) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let mono = monomial_string(&m.exponents(self.nvars));
                let coef = ctx.format(c);
                match (coef.as_str(), mono.is_empty()) {
                    (_, true) => coef,
                    ("1", false) => mono,
                    _ if coef.contains('+') => format!("({coef})*{mono}"),
                    _ => format!("{coef}*{mono}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// `x1^2*x3`-style text for an exponent vector; empty for the unit monomial.
pub fn monomial_string(e: &[u8]) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, k)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_small_cases() {
        let m = |e: &[u8]| Mono::from_exponents(e);
        // degree first
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
        // x1 > x2 > x3
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        // x1 x3 < x2^2 in grevlex (but not in lex)
        assert!(m(&[1, 0, 1]) < m(&[0, 2, 0]));
        assert!(m(&[2, 0, 0]) > m(&[1, 1, 0]));
    }

    #[test]
    fn packed_arithmetic() {
        let a = Mono::from_exponents(&[1, 2, 0, 3]);
        let b = Mono::from_exponents(&[0, 1, 4, 0]);
        assert_eq!(a.mul(b).exponents(4), vec![1, 3, 4, 3]);
        assert_eq!(a.mul(b).degree(), 11);
        assert!(a.divides(a.mul(b)));
        assert!(!a.divides(b));
        assert_eq!(a.quotient_of(a.mul(b)), b);
        assert_eq!(a.lcm(b).exponents(4), vec![1, 2, 4, 3]);
        assert!(!a.coprime(b));
        assert!(Mono::var(0).coprime(Mono::var(2)));
        assert_eq!(Mono::from_exponents(&[0, 0, 5]).pure_power_of(), Some(2));
        assert_eq!(a.pure_power_of(), None);
    }
}
