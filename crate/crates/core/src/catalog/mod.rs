//! Bundled group data: generator files, expected values, invariant bases
//! and the table of symplectic normal forms.

pub mod expect;
pub mod format;
pub mod hyperplane;
pub mod index;
pub mod normal_forms;
pub mod repro;
pub mod s6;

pub use expect::{BasisFile, Check, ExpectedSymplectic, Expectations};
pub use format::{parse_cycles, GroupSpec};
pub use hyperplane::{HyperplaneError, HyperplaneModel};
pub use index::{catalog_entry, catalog_get, catalog_names, CatalogEntry, ENTRIES};
pub use repro::{reproduce, reproduce_entry, ReproReport, ReproRow, Status};

use crate::cyclo::Cyclotomic;
use crate::group::{CharacterError, GroupError};
use crate::invariants::{parse_polynomial, PolyError};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("unknown matrix {0:?}")]
    UnknownMatrix(String),
    #[error("unknown character {0:?}")]
    UnknownCharacter(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Hyperplane(#[from] HyperplaneError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A group acting by coordinate permutations on the hyperplane cut out by
/// `relations` in `num_coords` coordinates.
///
/// Relations are linear forms in `x1 … xM`; permutations use cycle notation.
pub fn build_hyperplane_model(
    name: &str,
    num_coords: usize,
    relations: &[&str],
    permutations: &[(&str, &str)],
) -> Result<GroupSpec, CatalogError> {
    let mut rel = Vec::new();
    for r in relations {
        let p = parse_polynomial(r, num_coords, &Default::default())?;
        let mut v = vec![Cyclotomic::zero(); num_coords];
        for (e, c) in p.raw_terms() {
            let pos: Vec<usize> = (0..num_coords).filter(|&i| e[i] > 0).collect();
            if pos.len() != 1 || e[pos[0]] != 1 {
                return Err(CatalogError::Format {
                    line: 0,
                    msg: format!("relation {r:?} is not a linear form"),
                });
            }
            v[pos[0]] = c.clone();
        }
        rel.push(v);
    }
    let model = HyperplaneModel::new(num_coords, &rel)?;
    let mut gens = Vec::new();
    for (n, cycles) in permutations {
        let sigma = parse_cycles(cycles, num_coords).map_err(|msg| CatalogError::Format { line: 0, msg })?;
        let m = Matrix::permutation(&sigma);
        if !model.preserves(&m) {
            return Err(HyperplaneError::NotPreserved.into());
        }
        gens.push((n.to_string(), m));
    }
    GroupSpec::from_parts(name, model, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clebsch_segre_model() {
        let spec = build_hyperplane_model(
            "A7",
            7,
            &["x1+x2+x3+x4+x5+x6+x7"],
            &[("p", "(1,2,3)"), ("q", "(3,4,5,6,7)")],
        )
        .unwrap();
        assert_eq!(spec.degree(), 6);
        let g = spec.build_group().unwrap();
        assert_eq!(g.order(), 2520);
    }

    #[test]
    fn two_relations_and_rejection() {
        let rels = ["x1+x2+x3", "x4+x5+x6+x7+x8"];
        let spec = build_hyperplane_model("A35", 8, &rels, &[("a", "(1,2,3)"), ("b", "(4,5,6,7,8)")]).unwrap();
        assert_eq!(spec.degree(), 6);
        let bad = build_hyperplane_model("bad", 8, &rels, &[("c", "(3,4)")]);
        assert!(matches!(bad, Err(CatalogError::Hyperplane(HyperplaneError::NotPreserved))));
    }

    #[test]
    fn no_relations_is_unchanged() {
        let spec = build_hyperplane_model("id", 6, &[], &[("e", "()")]).unwrap();
        assert_eq!(spec.matrix("e").unwrap(), Matrix::identity(6));
    }
}
