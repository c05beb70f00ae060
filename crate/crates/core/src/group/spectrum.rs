//! Exact eigenvalue multisets of finite-order matrices.
//!
//! For `g` of order `n` every eigenvalue is an `n`-th root of unity, and the
//! multiplicity of `ζ_n^j` is `(1/n) Σ_k Tr(g^k) ζ_n^{-jk}`.

use std::fmt;

use crate::cyclo::{Cyclotomic, Rational};
use crate::linalg::Matrix;

/// Default cap on the order search for a bare matrix.
const ORDER_CAP: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectrumError {
    #[error("multiplicity of E({n})^{j} is {value}, not a non-negative integer")]
    NonIntegral { n: u32, j: u32, value: String },
    #[error("matrix has no finite order up to {0}")]
    InfiniteOrder(u64),
    #[error("multiplicities sum to {0}, expected {1}")]
    WrongTotal(usize, usize),
}

/// Eigenvalues `ζ_n^j` of a matrix of order `n`, with multiplicities.
#[derive(Clone, PartialEq, Eq)]
pub struct Spectrum {
    order: u32,
    /// `mult[j]` is the multiplicity of `ζ_n^j`.
    mult: Vec<usize>,
}

impl Spectrum {
    /// Builds the spectrum from `Tr(g^k)`, `k = 0..n`, where `n = traces.len()`.
    pub fn from_power_traces(traces: &[Cyclotomic], degree: usize) -> Result<Self, SpectrumError> {
        let n = traces.len() as u32;
        let inv_n = Rational::new(1, n as i64);
        let mut mult = Vec::with_capacity(n as usize);
        let inverse_roots: Vec<Cyclotomic> = (0..n)
            .map(|m| Cyclotomic::root_of_unity(n, -(m as i64)))
            .collect();
        for j in 0..n {
            let s = Cyclotomic::dot(
                traces
                    .iter()
                    .enumerate()
                    .map(|(k, t)| (t, &inverse_roots[(j as usize * k) % n as usize])),
            )
            .scale(&inv_n);
            let value = s.to_rational().and_then(|q| q.to_i64()).filter(|v| *v >= 0);
            match value {
                Some(v) => mult.push(v as usize),
                None => {
                    return Err(SpectrumError::NonIntegral {
                        n,
                        j,
                        value: s.to_string(),
                    })
                }
            }
        }
        let total: usize = mult.iter().sum();
        if total != degree {
            return Err(SpectrumError::WrongTotal(total, degree));
        }
        Ok(Spectrum { order: n, mult })
    }

    /// Order `n` of the matrix; eigenvalues are `n`-th roots of unity.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn multiplicity(&self, j: u32) -> usize {
        self.mult[(j % self.order) as usize]
    }

    /// Nonzero `(j, multiplicity)` pairs, `j` ascending.
    pub fn pairs(&self) -> Vec<(u32, usize)> {
        self.mult
            .iter()
            .enumerate()
            .filter(|(_, m)| **m > 0)
            .map(|(j, m)| (j as u32, *m))
            .collect()
    }

    /// Exponents `j` listed with multiplicity, ascending.
    pub fn exponents(&self) -> Vec<u32> {
        self.pairs()
            .into_iter()
            .flat_map(|(j, m)| std::iter::repeat_n(j, m))
            .collect()
    }

    /// Eigenvalues as field elements, listed with multiplicity.
    pub fn eigenvalues(&self) -> Vec<Cyclotomic> {
        self.exponents()
            .into_iter()
            .map(|j| Cyclotomic::root_of_unity(self.order, j as i64))
            .collect()
    }

    /// `Σ mult_j ζ_n^{jk}`, the trace of `g^k` implied by this spectrum.
    pub fn trace_of_power(&self, k: i64) -> Cyclotomic {
        let mut t = Cyclotomic::zero();
        for (j, m) in self.pairs() {
            let z = Cyclotomic::root_of_unity(self.order, j as i64 * k);
            t = &t + &z.scale(&Rational::from_int(m as i64));
        }
        t
    }

    /// Exponents rescaled to a common modulus `l` (a multiple of the order).
    pub fn exponents_mod(&self, l: u32) -> Vec<u32> {
        assert_eq!(l % self.order, 0);
        let f = l / self.order;
        self.exponents().into_iter().map(|j| j * f).collect()
    }

    /// Whether the eigenvalue multiset equals `{ζ_l^{e}}` for the given
    /// exponent list.
    pub fn matches_exponents(&self, l: u32, exps: &[u32]) -> bool {
        let m = crate::cyclo::lcm(l as u64, self.order as u64) as u32;
        let mut a = self.exponents_mod(m);
        let mut b: Vec<u32> = exps.iter().map(|e| (e * (m / l)) % m).collect();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

impl fmt::Debug for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs()
            .into_iter()
            .map(|(j, m)| format!("E({})^{}:{}", self.order, j, m))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Multiplicative order of a square matrix, searched up to a cap.
pub fn matrix_order(m: &Matrix, cap: u64) -> Option<u64> {
    let mut p = m.clone();
    for k in 1..=cap {
        if p.is_identity() {
            return Some(k);
        }
        p = &p * m;
    }
    None
}

/// Eigenvalue multiset of a finite-order matrix from its power traces.
pub fn eigenvalue_multiplicities(m: &Matrix) -> Result<Spectrum, SpectrumError> {
    let mut traces = vec![Cyclotomic::from_int(m.rows() as i64)];
    let mut p = m.clone();
    for _ in 1..=ORDER_CAP {
        if p.is_identity() {
            return Spectrum::from_power_traces(&traces, m.rows());
        }
        traces.push(p.trace());
        p = &p * m;
    }
    Err(SpectrumError::InfiniteOrder(ORDER_CAP))
}

/// Least `n >= 1` with `m^n` scalar, searched up to a cap.
pub fn projective_order_of_matrix(m: &Matrix, cap: u64) -> Option<u64> {
    let mut p = m.clone();
    for k in 1..=cap {
        if p.scalar_value().is_some() {
            return Some(k);
        }
        p = &p * m;
    }
    None
}
