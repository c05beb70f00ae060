//! Sparse multivariate polynomials with cyclotomic coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::cyclo::{parse_expression, Cyclotomic, ExprValue, ParseError, Rational};
use crate::linalg::Matrix;

/// Exponent vector; entry `i` is the exponent of `x_{i+1}`.
pub type Exponents = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial uses {used} variables but only {allowed} are available")]
    TooManyVariables { used: usize, allowed: usize },
    #[error("matrix is {rows}x{cols} but the polynomial has {nvars} variables")]
    SizeMismatch { rows: usize, cols: usize, nvars: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Graded lexicographic comparison with `x1 > x2 > …`.
pub fn grlex_cmp(a: &[u8], b: &[u8]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// A polynomial in `x1 … xm`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, Cyclotomic>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Cyclotomic) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable `x_{i+1}` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Cyclotomic::one())
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: Cyclotomic) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponents, Cyclotomic)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded lexicographic order, largest first.
    pub fn terms(&self) -> Vec<(&Exponents, &Cyclotomic)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_cmp(b.0, a.0));
        v
    }

    pub fn coefficient(&self, exps: &[u8]) -> Cyclotomic {
        self.terms.get(exps).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    /// Total degree (0 for the zero polynomial).
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self
            .terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Index of the highest variable actually used, plus one.
    pub fn used_vars(&self) -> usize {
        self.terms
            .keys()
            .filter_map(|e| e.iter().rposition(|&x| x > 0))
            .max()
            .map_or(0, |i| i + 1)
    }

    /// Same polynomial viewed in `m` variables.
    pub fn with_nvars(&self, m: usize) -> Result<Self, PolyError> {
        let used = self.used_vars();
        if used > m {
            return Err(PolyError::TooManyVariables { used, allowed: m });
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2.resize(m, 0);
                (e2, c.clone())
            })
            .collect();
        Ok(Polynomial { nvars: m, terms })
    }

    fn widen(&self, m: usize) -> std::borrow::Cow<'_, Polynomial> {
        if self.nvars == m {
            std::borrow::Cow::Borrowed(self)
        } else {
            std::borrow::Cow::Owned(self.with_nvars(m).expect("widening never drops variables"))
        }
    }

    fn add_term(&mut self, e: Exponents, c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let m = self.nvars.max(other.nvars);
        let mut out = self.widen(m).into_owned();
        for (e, c) in &other.widen(m).terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, z: &Cyclotomic) -> Polynomial {
        if z.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * z)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let m = self.nvars.max(other.nvars);
        let a = self.widen(m);
        let b = other.widen(m);
        let mut acc: HashMap<Exponents, Cyclotomic> = HashMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let p = ca * cb;
                acc.entry(e)
                    .and_modify(|c| *c += &p)
                    .or_insert(p);
            }
        }
        Polynomial {
            nvars: m,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.nvars, Cyclotomic::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `∂F/∂x_{i+1}`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, &c.scale(&Rational::from_int(e[i] as i64)));
        }
        out
    }

    /// `F(Mx)`: each `x_i` is replaced by `Σ_j M[i][j] x_j`.
    ///
    /// This is a right action: `F(A(Bx))` equals `substitute(F, A·B)`.
    pub fn substitute(&self, m: &Matrix) -> Result<Polynomial, PolyError> {
        if m.rows() != self.nvars || m.cols() != self.nvars {
            return Err(PolyError::SizeMismatch {
                rows: m.rows(),
                cols: m.cols(),
                nvars: self.nvars,
            });
        }
        self.substitute_linear(m)
    }

    /// `F(Mx)` for an `nvars × k` matrix; the result has `k` variables.
    pub fn substitute_linear(&self, m: &Matrix) -> Result<Polynomial, PolyError> {
        if m.rows() != self.nvars {
            return Err(PolyError::SizeMismatch {
                rows: m.rows(),
                cols: m.cols(),
                nvars: self.nvars,
            });
        }
        let n = m.cols();
        let forms: Vec<Polynomial> = (0..self.nvars)
            .map(|i| {
                Polynomial::from_terms(
                    n,
                    (0..n).map(|j| {
                        let mut e = vec![0; n];
                        e[j] = 1;
                        (e, m[(i, j)].clone())
                    }),
                )
            })
            .collect();
        let mut powers: HashMap<(usize, u8), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero(n);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(n, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let p = powers
                    .entry((i, k))
                    .or_insert_with(|| forms[i].pow(k as u32));
                t = t.mul(p);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Evaluation at a point.
    pub fn evaluate(&self, point: &[Cyclotomic]) -> Cyclotomic {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Cyclotomic::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = &t * x;
                }
            }
            acc += &t;
        }
        acc
    }

    /// Least common conductor of the coefficients.
    pub fn conductor(&self) -> u32 {
        let n = self
            .terms
            .values()
            .fold(1u64, |acc, c| crate::cyclo::lcm(acc, c.conductor() as u64));
        crate::cyclo::normalize_conductor(n as u32)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &Cyclotomic> {
        self.terms.values()
    }

    pub fn raw_terms(&self) -> &BTreeMap<Exponents, Cyclotomic> {
        &self.terms
    }
}

/// Parses a polynomial in `x1 … xm`. Names in `bindings` are substituted.
pub fn parse_polynomial(
    text: &str,
    nvars: usize,
    bindings: &HashMap<String, Polynomial>,
) -> Result<Polynomial, PolyError> {
    let lookup = |name: &str| bindings.get(name).cloned();
    let p: Polynomial = parse_expression(text, &lookup)?;
    p.with_nvars(nvars)
}

impl ExprValue for Polynomial {
    fn from_cyclotomic(c: Cyclotomic) -> Self {
        Polynomial::constant(0, c)
    }

    fn variable(name: &str) -> Option<Self> {
        let idx: usize = name.strip_prefix('x')?.parse().ok()?;
        if idx == 0 || idx > 64 {
            return None;
        }
        Some(Polynomial::var(idx, idx - 1))
    }

    fn add(&self, other: &Self) -> Self {
        Polynomial::add(self, other)
    }

    fn sub(&self, other: &Self) -> Self {
        Polynomial::sub(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        Polynomial::mul(self, other)
    }

    fn neg(&self) -> Self {
        Polynomial::neg(self)
    }

    fn div(&self, other: &Self) -> Result<Self, String> {
        let c = (other.degree() == 0 && other.num_terms() <= 1)
            .then(|| other.coefficient(&vec![0; other.nvars]))
            .ok_or_else(|| "division by a non-constant polynomial".to_string())?;
        let inv = c.inv().map_err(|e| e.to_string())?;
        Ok(self.scale(&inv))
    }

    fn pow(&self, e: i64) -> Result<Self, String> {
        if e < 0 {
            if self.degree() == 0 && self.num_terms() == 1 {
                let c = self.coefficient(&vec![0; self.nvars]);
                let z = c.pow(e).map_err(|e| e.to_string())?;
                return Ok(Polynomial::constant(self.nvars, z));
            }
            return Err("negative power of a non-constant polynomial".into());
        }
        if e > 255 {
            return Err("exponent too large".into());
        }
        Ok(Polynomial::pow(self, e as u32))
    }
}

fn is_single_term(c: &Cyclotomic) -> bool {
    c.coeffs().iter().filter(|q| !q.is_zero()).count() <= 1
}

fn monomial_string(e: &[u8]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, k)
            }
        })
        .collect();
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().into_iter().enumerate() {
            let mono = monomial_string(e);
            let (neg, body) = if is_single_term(c) {
                let s = c.to_string();
                match s.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, s),
                }
            } else {
                (false, format!("({c})"))
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            match (body.as_str(), mono.is_empty()) {
                (b, true) => write!(f, "{b}")?,
                ("1", false) => write!(f, "{mono}")?,
                (b, false) => write!(f, "{b}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Whether `Σ coeffs[i] · polys[i]` is the zero polynomial.
pub fn verify_relation(polys: &[Polynomial], coeffs: &[Cyclotomic]) -> bool {
    assert_eq!(polys.len(), coeffs.len(), "one coefficient per polynomial");
    let m = polys.iter().map(Polynomial::nvars).max().unwrap_or(0);
    polys
        .iter()
        .zip(coeffs)
        .fold(Polynomial::zero(m), |acc, (p, c)| acc.add(&p.scale(c)))
        .is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, n, &HashMap::new()).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let f = p("(-1-E(3))/3 * x1^2*x2 + 2*x3^3 - x1*x2*x3", 3);
        assert_eq!(f.degree(), 3);
        assert!(f.is_homogeneous());
        let g = p(&f.to_string(), 3);
        assert_eq!(f, g);
        assert_eq!(p("x1 - x1", 2).to_string(), "0");
        assert_eq!(p("-x2 + x1^2", 2).to_string(), "x1^2 - x2");
    }

    #[test]
    fn too_many_variables() {
        assert!(parse_polynomial("x7", 6, &HashMap::new()).is_err());
        assert!(parse_polynomial("x1/x2", 6, &HashMap::new()).is_err());
    }

    #[test]
    fn bindings() {
        let mut b = HashMap::new();
        b.insert("y1".to_string(), p("x4", 6));
        let f = parse_polynomial("y1^2*x1", 6, &b).unwrap();
        assert_eq!(f, p("x1*x4^2", 6));
    }

    #[test]
    fn substitution_of_symmetric_polynomial() {
        let f = p("x1^3 + x2^3 + x3^3", 3);
        let perm = Matrix::permutation(&[2, 0, 1]);
        assert_eq!(f.substitute(&perm).unwrap(), f);
        let d = Matrix::diagonal(&[Cyclotomic::e(3), Cyclotomic::one(), Cyclotomic::one()]);
        assert_eq!(p("x1^3", 3).substitute(&d).unwrap(), p("x1^3", 3));
        assert_ne!(p("x1^2*x2", 3).substitute(&d).unwrap(), p("x1^2*x2", 3));
    }

    #[test]
    fn relations() {
        let x = p("x1", 2);
        let y = p("x2", 2);
        let one = Cyclotomic::one();
        let m1 = Cyclotomic::from_int(-1);
        assert!(verify_relation(&[x.add(&y), x.clone(), y.clone()], &[one.clone(), m1.clone(), m1]));
        assert!(!verify_relation(&[x, y], &[one.clone(), one]));
    }

    #[test]
    fn derivative() {
        let f = p("x1^3 + 2*x1*x2", 2);
        assert_eq!(f.derivative(0), p("3*x1^2 + 2*x2", 2));
        assert_eq!(f.derivative(1), p("2*x1", 2));
    }
}
