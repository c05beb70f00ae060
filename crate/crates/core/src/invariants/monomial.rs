//! Ordered monomial bases of homogeneous forms.

use std::collections::HashMap;

use super::polynomial::{Exponents, PolyError, Polynomial};
use crate::cyclo::Cyclotomic;

/// All degree-`d` monomials in `m` variables, graded lexicographic with
/// `x1 > x2 > …` (so `x1^d` comes first and `xm^d` last).
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    degree: u32,
    nvars: usize,
    monomials: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
}

fn generate(m: usize, d: u32, prefix: &mut Exponents, out: &mut Vec<Exponents>) {
    if prefix.len() == m - 1 {
        let used: u32 = prefix.iter().map(|&e| e as u32).sum();
        let mut e = prefix.clone();
        e.push((d - used) as u8);
        out.push(e);
        return;
    }
    let used: u32 = prefix.iter().map(|&e| e as u32).sum();
    for k in (0..=(d - used)).rev() {
        prefix.push(k as u8);
        generate(m, d, prefix, out);
        prefix.pop();
    }
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        assert!(nvars >= 1);
        assert!(degree <= 255);
        let mut monomials = Vec::new();
        generate(nvars, degree, &mut Vec::with_capacity(nvars), &mut monomials);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        MonomialBasis {
            degree,
            nvars,
            monomials,
            index,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Exponents] {
        &self.monomials
    }

    pub fn index_of(&self, e: &[u8]) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Coordinates of a homogeneous polynomial of this degree.
    pub fn coordinates(&self, f: &Polynomial) -> Result<Vec<Cyclotomic>, PolyError> {
        let f = f.with_nvars(self.nvars)?;
        let mut v = vec![Cyclotomic::zero(); self.len()];
        for (e, c) in f.raw_terms() {
            let i = self.index_of(e).ok_or(PolyError::NotHomogeneous)?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// The polynomial with the given coordinates.
    pub fn polynomial(&self, coords: &[Cyclotomic]) -> Polynomial {
        assert_eq!(coords.len(), self.len());
        Polynomial::from_terms(
            self.nvars,
            self.monomials
                .iter()
                .zip(coords)
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e.clone(), c.clone())),
        )
    }
}

/// `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        for m in 1..=7usize {
            for d in 0..=4u32 {
                let b = MonomialBasis::new(m, d);
                assert_eq!(b.len() as u64, binomial(d as u64 + m as u64 - 1, m as u64 - 1));
            }
        }
        assert_eq!(MonomialBasis::new(6, 3).len(), 56);
    }

    #[test]
    fn order_is_graded_lex_descending() {
        let b = MonomialBasis::new(3, 2);
        let expected: Vec<Exponents> = vec![
            vec![2, 0, 0],
            vec![1, 1, 0],
            vec![1, 0, 1],
            vec![0, 2, 0],
            vec![0, 1, 1],
            vec![0, 0, 2],
        ];
        assert_eq!(b.monomials(), expected.as_slice());
    }
}
