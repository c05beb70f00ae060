//! Linear characters `χ: G → ℂ^×` of an enumerated group.

use super::FiniteMatrixGroup;
use crate::cyclo::Cyclotomic;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharacterError {
    #[error("expected {expected} generator values, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("value {0} assigned to generator {1} is not a root of unity")]
    NotRootOfUnity(String, usize),
    #[error("assignment is not a homomorphism (fails at element {element} times generator {generator})")]
    Inconsistent { element: usize, generator: usize },
}

/// Values of a linear character on every element of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCharacter {
    values: Vec<Cyclotomic>,
}

impl LinearCharacter {
    pub fn trivial(group: &FiniteMatrixGroup) -> Self {
        LinearCharacter {
            values: vec![Cyclotomic::one(); group.order()],
        }
    }

    pub fn value(&self, element: usize) -> &Cyclotomic {
        &self.values[element]
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_one)
    }

    /// Pointwise product `χ·ψ`.
    pub fn product(&self, other: &LinearCharacter) -> LinearCharacter {
        LinearCharacter {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// Pointwise power `χ^k`.
    pub fn pow(&self, k: i64) -> LinearCharacter {
        LinearCharacter {
            values: self
                .values
                .iter()
                .map(|a| a.pow(k).expect("character values are units"))
                .collect(),
        }
    }
}

/// Extends generator values along the group's generator words and checks
/// multiplicativity on every edge `g ↦ g·s` of the Cayley graph.
///
/// Every element is a word in the generators, so agreement on all edges
/// gives `χ(gh) = χ(g)χ(h)` for all pairs.
pub fn build_character(
    group: &FiniteMatrixGroup,
    gen_values: &[Cyclotomic],
) -> Result<LinearCharacter, CharacterError> {
    let ngens = group.generators().len();
    if gen_values.len() != ngens {
        return Err(CharacterError::WrongCount {
            expected: ngens,
            got: gen_values.len(),
        });
    }
    for (s, v) in gen_values.iter().enumerate() {
        if v.root_of_unity_order().is_none() {
            return Err(CharacterError::NotRootOfUnity(v.to_string(), s));
        }
    }
    let n = group.order();
    let mut values = vec![Cyclotomic::one(); n];
    for i in 1..n {
        let (p, s) = group.parent(i).unwrap();
        values[i] = &values[p] * &gen_values[s];
    }
    for i in 0..n {
        for (s, v) in gen_values.iter().enumerate() {
            let j = group.right_mul(i, s);
            if values[j] != &values[i] * v {
                return Err(CharacterError::Inconsistent {
                    element: i,
                    generator: s,
                });
            }
        }
    }
    Ok(LinearCharacter { values })
}
