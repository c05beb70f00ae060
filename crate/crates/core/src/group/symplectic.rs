//! Symplectic classification of projective actions by eigenvalue normal forms.

use std::collections::HashMap;
use std::fmt;

use super::spectrum::{eigenvalue_multiplicities, projective_order_of_matrix};
use super::{FiniteMatrixGroup, GroupError, Spectrum, SpectrumError};
use crate::catalog::normal_forms::{normal_forms_of_order, NormalForm, NORMAL_FORMS};
use crate::cyclo::{lcm, Cyclotomic, Rational};
use crate::linalg::Matrix;

/// Projective orders handled by classification rather than normal forms.
pub const SPECIAL_ORDERS: [usize; 4] = [9, 11, 12, 15];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    SpecialOrder,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::SpecialOrder => "special-order",
        })
    }
}

/// Classification of one element.
#[derive(Debug, Clone)]
pub struct ElementReport {
    pub projective_order: usize,
    /// Spectrum of the stored (linear) matrix.
    pub spectrum: Spectrum,
    pub verdict: Verdict,
    /// Index into the normal-form table of the matched row.
    pub matched_row: Option<usize>,
    pub trace_abs_sq: Cyclotomic,
    /// Whether `|Tr|²` agrees with the matched row's tabulated value.
    pub trace_consistent: Option<bool>,
}

/// Per-element classification of a whole group.
#[derive(Debug, Clone)]
pub struct SymplecticReport {
    pub elements: Vec<ElementReport>,
    pub overall: bool,
}

impl SymplecticReport {
    /// Element indices with the given verdict.
    pub fn with_verdict(&self, v: Verdict) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&i| self.elements[i].verdict == v)
            .collect()
    }

    pub fn has_special_order(&self) -> bool {
        self.elements.iter().any(|e| e.verdict == Verdict::SpecialOrder)
    }

    /// Counts of elements by projective order, ascending.
    pub fn projective_order_counts(&self) -> Vec<(usize, usize)> {
        let mut m: HashMap<usize, usize> = HashMap::new();
        for e in &self.elements {
            *m.entry(e.projective_order).or_default() += 1;
        }
        let mut v: Vec<_> = m.into_iter().collect();
        v.sort_unstable();
        v
    }
}

/// Whether the spectrum equals the normal form after multiplying all its
/// eigenvalues by one common root of unity.
fn matches_up_to_scalar(spec: &Spectrum, row: &NormalForm) -> bool {
    let l = lcm(spec.order() as u64, row.order as u64) as u32;
    let a = spec.exponents_mod(l);
    let scale = l / row.order;
    let b: Vec<u32> = row.exponents.iter().map(|k| k * scale).collect();
    let mut a_sorted = a.clone();
    a_sorted.sort_unstable();
    b.iter().any(|&bj| {
        let shift = (a[0] + l - bj) % l;
        let mut shifted: Vec<u32> = b.iter().map(|x| (x + shift) % l).collect();
        shifted.sort_unstable();
        shifted == a_sorted
    })
}

fn classify(projective_order: usize, spectrum: Spectrum, trace: &Cyclotomic) -> ElementReport {
    let trace_abs_sq = trace.abs_sq();
    let (verdict, matched_row) = if projective_order == 1 {
        (Verdict::Pass, None)
    } else if projective_order <= 8 {
        let hit = normal_forms_of_order(projective_order as u32)
            .find(|row| matches_up_to_scalar(&spectrum, row))
            .map(|row| NORMAL_FORMS.iter().position(|r| r == row).unwrap());
        match hit {
            Some(r) => (Verdict::Pass, Some(r)),
            None => (Verdict::Fail, None),
        }
    } else if SPECIAL_ORDERS.contains(&projective_order) {
        (Verdict::SpecialOrder, None)
    } else {
        (Verdict::Fail, None)
    };
    let trace_consistent = matched_row.map(|r| {
        trace_abs_sq == Cyclotomic::from_rational(Rational::from_int(NORMAL_FORMS[r].trace_abs_sq))
    });
    ElementReport {
        projective_order,
        spectrum,
        verdict,
        matched_row,
        trace_abs_sq,
        trace_consistent,
    }
}

/// Classifies a single finite-order 6×6 matrix.
pub fn classify_element(g: &Matrix) -> Result<ElementReport, SpectrumError> {
    let spectrum = eigenvalue_multiplicities(g)?;
    let n = projective_order_of_matrix(g, spectrum.order() as u64)
        .expect("projective order divides the linear order") as usize;
    Ok(classify(n, spectrum, &g.trace()))
}

/// Classifies every element of a degree-6 group.
pub fn symplectic_check(group: &FiniteMatrixGroup) -> Result<SymplecticReport, GroupError> {
    if group.degree() != 6 {
        return Err(GroupError::WrongDegree(group.degree(), 6));
    }
    let spectra = group
        .all_spectra()
        .expect("group elements have integral spectra");
    let mut elements = Vec::with_capacity(group.order());
    for (i, spectrum) in spectra.into_iter().enumerate() {
        let n = group.projective_order(i);
        elements.push(classify(n, spectrum, &group.element(i).trace()));
    }
    let overall = elements.iter().all(|e| e.verdict != Verdict::Fail);
    Ok(SymplecticReport { elements, overall })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(n: u32, ks: &[i64]) -> Matrix {
        Matrix::diagonal(
            &ks.iter()
                .map(|&k| Cyclotomic::root_of_unity(n, k))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn every_normal_form_passes_even_after_scaling() {
        for row in &NORMAL_FORMS {
            let ks: Vec<i64> = row.exponents.iter().map(|&k| k as i64).collect();
            let g = diag(row.order, &ks);
            let r = classify_element(&g).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{row:?}");
            assert_eq!(r.trace_consistent, Some(true));
            let scaled = g.scale(&Cyclotomic::e(7));
            assert_eq!(classify_element(&scaled).unwrap().verdict, Verdict::Pass);
        }
    }

    #[test]
    fn reflection_fails() {
        let g = diag(2, &[0, 0, 0, 0, 0, 1]);
        assert_eq!(classify_element(&g).unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn special_order_nine() {
        let g = diag(9, &[0, 1, 2, 3, 4, 5]);
        let r = classify_element(&g).unwrap();
        assert_eq!(r.projective_order, 9);
        assert_eq!(r.verdict, Verdict::SpecialOrder);
    }
}
