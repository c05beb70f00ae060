//! Molien series `Σ_d dim V_d(ρ, χ) t^d`, averaged element by element from
//! exact eigenvalues: `(1/|G|) Σ_g conj(χ(g)) / det(1 - t·ρ(g))`.

use std::collections::HashMap;
use std::fmt;

use super::InvariantError;
use crate::cyclo::{Cyclotomic, Rational};
use crate::group::{FiniteMatrixGroup, LinearCharacter};

/// Coefficients `c_0 … c_D`, each a non-negative integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MolienSeries {
    coefficients: Vec<Rational>,
}

impl MolienSeries {
    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Coefficients as integers.
    pub fn integers(&self) -> Vec<i64> {
        self.coefficients
            .iter()
            .map(|q| q.to_i64().expect("coefficients are verified integers"))
            .collect()
    }

    pub fn coefficient(&self, d: usize) -> i64 {
        self.integers()[d]
    }
}

impl fmt::Display for MolienSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|q| q.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Expands `Π_i 1/(1 - λ_i t)` through degree `max_degree`.
pub fn inverse_char_poly_series(eigenvalues: &[Cyclotomic], max_degree: usize) -> Vec<Cyclotomic> {
    let mut s = vec![Cyclotomic::zero(); max_degree + 1];
    s[0] = Cyclotomic::one();
    for lambda in eigenvalues {
        // multiplying by 1/(1 - λt): s[d] += λ·s[d-1], increasing d
        for d in 1..=max_degree {
            let t = lambda * &s[d - 1];
            s[d] = &s[d] + &t;
        }
    }
    s
}

pub fn molien_series(
    group: &FiniteMatrixGroup,
    chi: &LinearCharacter,
    max_degree: usize,
) -> Result<MolienSeries, InvariantError> {
    let spectra = group.all_spectra()?;
    // class key: (order, exponents, χ value) → count
    let mut classes: HashMap<(u32, Vec<u32>, String), (usize, usize)> = HashMap::new();
    for (i, s) in spectra.iter().enumerate() {
        let key = (s.order(), s.exponents(), chi.value(i).to_string());
        classes.entry(key).or_insert((i, 0)).1 += 1;
    }
    let mut keys: Vec<_> = classes.into_iter().collect();
    keys.sort_by(|a, b| a.0.cmp(&b.0));
    let inv_order = Rational::new(1, group.order() as i64);
    let mut total = vec![Cyclotomic::zero(); max_degree + 1];
    for (_, (rep, count)) in keys {
        let series = inverse_char_poly_series(&spectra[rep].eigenvalues(), max_degree);
        let w = chi
            .value(rep)
            .conj()
            .scale(&(&inv_order * &Rational::from_int(count as i64)));
        for (t, s) in total.iter_mut().zip(&series) {
            *t = &*t + &(&w * s);
        }
    }
    let mut coefficients = Vec::with_capacity(total.len());
    for (d, c) in total.into_iter().enumerate() {
        match c.to_rational() {
            Some(q) if q.is_integer() && !q.is_negative() => coefficients.push(q),
            _ => {
                return Err(InvariantError::NonIntegralMolien {
                    degree: d,
                    value: c.to_string(),
                })
            }
        }
    }
    Ok(MolienSeries { coefficients })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let s = inverse_char_poly_series(&vec![Cyclotomic::one(); 6], 3);
        let v: Vec<Cyclotomic> = [1, 6, 21, 56].iter().map(|&k| Cyclotomic::from_int(k)).collect();
        assert_eq!(s, v);
    }
}
