//! Moduli-dimension bookkeeping: `dim V_3(ρ, χ) - dim C_ρ(G)` against
//! `20 - r(G)`.

use std::fmt;

use super::reynolds::semi_invariant_space;
use super::InvariantError;
use crate::group::{FiniteMatrixGroup, LinearCharacter};
use crate::linalg::commutant_dimension;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModuliReport {
    pub dim_v3: usize,
    pub dim_c: usize,
    pub r_g: usize,
    /// `dim_v3 - dim_c == 20 - r_g`.
    pub identity_holds: bool,
    /// `dim_v3 <= 20 - r_g`: the family cannot contain a smooth member.
    pub excluded_by_dimension: bool,
}

impl ModuliReport {
    pub fn from_dimensions(dim_v3: usize, dim_c: usize, r_g: usize) -> Self {
        let target = 20i64 - r_g as i64;
        ModuliReport {
            dim_v3,
            dim_c,
            r_g,
            identity_holds: dim_v3 as i64 - dim_c as i64 == target,
            excluded_by_dimension: (dim_v3 as i64) <= target,
        }
    }
}

impl fmt::Display for ModuliReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dim V3 = {}, dim C = {}, {} - {} = {} vs 20 - r(G) = {} ({}){}",
            self.dim_v3,
            self.dim_c,
            self.dim_v3,
            self.dim_c,
            self.dim_v3 as i64 - self.dim_c as i64,
            20 - self.r_g as i64,
            if self.identity_holds { "holds" } else { "fails" },
            if self.excluded_by_dimension {
                ", excluded by dimension"
            } else {
                ""
            }
        )
    }
}

pub fn moduli_report(
    group: &FiniteMatrixGroup,
    chi: &LinearCharacter,
    r_g: usize,
) -> Result<ModuliReport, InvariantError> {
    let dim_v3 = semi_invariant_space(group, chi, 3)?.dim();
    let dim_c = commutant_dimension(group.generators(), group.degree())?;
    Ok(ModuliReport::from_dimensions(dim_v3, dim_c, r_g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predicates_are_exclusive_when_commutant_is_nontrivial() {
        for v in 0..30 {
            for c in 1..10 {
                for r in 0..=20 {
                    let m = ModuliReport::from_dimensions(v, c, r);
                    assert!(!(m.identity_holds && m.excluded_by_dimension));
                }
            }
        }
    }
}
