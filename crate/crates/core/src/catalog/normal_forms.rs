//! Diagonal normal forms of symplectic automorphisms of order at most 8.

use crate::cyclo::{Cyclotomic, Rational};

/// One normal form `diag(ζ_n^{k_1}, …, ζ_n^{k_6})` with its `|Tr|²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalForm {
    pub order: u32,
    pub exponents: [u32; 6],
    /// `|Tr g|²` as tabulated (the table lists `|Tr g|`; only `√2` is irrational).
    pub trace_abs_sq: i64,
}

pub const NORMAL_FORMS: [NormalForm; 10] = [
    NormalForm { order: 2, exponents: [0, 0, 0, 0, 1, 1], trace_abs_sq: 4 },
    NormalForm { order: 3, exponents: [0, 0, 0, 0, 1, 2], trace_abs_sq: 9 },
    NormalForm { order: 3, exponents: [0, 0, 0, 1, 1, 1], trace_abs_sq: 9 },
    NormalForm { order: 3, exponents: [0, 0, 1, 1, 2, 2], trace_abs_sq: 0 },
    NormalForm { order: 4, exponents: [0, 0, 2, 2, 1, 3], trace_abs_sq: 0 },
    NormalForm { order: 5, exponents: [0, 0, 1, 2, 3, 4], trace_abs_sq: 1 },
    NormalForm { order: 6, exponents: [0, 3, 2, 5, 4, 4], trace_abs_sq: 4 },
    NormalForm { order: 6, exponents: [3, 3, 0, 0, 2, 4], trace_abs_sq: 1 },
    NormalForm { order: 7, exponents: [1, 5, 4, 6, 2, 3], trace_abs_sq: 1 },
    NormalForm { order: 8, exponents: [0, 4, 2, 6, 1, 3], trace_abs_sq: 2 },
];

impl NormalForm {
    /// Eigenvalues as field elements.
    pub fn eigenvalues(&self) -> Vec<Cyclotomic> {
        self.exponents
            .iter()
            .map(|&k| Cyclotomic::root_of_unity(self.order, k as i64))
            .collect()
    }

    /// `|Σ ζ_n^{k_i}|²` computed exactly.
    pub fn computed_trace_abs_sq(&self) -> Cyclotomic {
        let t = self
            .eigenvalues()
            .iter()
            .fold(Cyclotomic::zero(), |acc, z| &acc + z);
        t.abs_sq()
    }

    pub fn is_consistent(&self) -> bool {
        self.computed_trace_abs_sq() == Cyclotomic::from_rational(Rational::from_int(self.trace_abs_sq))
    }
}

/// Rows for projective order `n`.
pub fn normal_forms_of_order(n: u32) -> impl Iterator<Item = &'static NormalForm> {
    NORMAL_FORMS.iter().filter(move |r| r.order == n)
}
