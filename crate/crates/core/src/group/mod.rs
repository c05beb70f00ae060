//! Finite matrix groups: closure from generators, element tables, scalars,
//! spectra, linear characters and the symplectic classifier.

mod character;
mod spectrum;
mod symplectic;

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, VecDeque};
use std::hash::{Hash, Hasher};

pub use character::{build_character, CharacterError, LinearCharacter};
pub use spectrum::{
    eigenvalue_multiplicities, matrix_order, projective_order_of_matrix, Spectrum, SpectrumError,
};
pub use symplectic::{
    classify_element, symplectic_check, ElementReport, SymplecticReport, Verdict,
    SPECIAL_ORDERS,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclo::{lcm, normalize_conductor, Cyclotomic};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group enumeration exceeded the limit of {0} elements")]
    LimitExceeded(usize),
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("generators must be square matrices of one common size")]
    ShapeMismatch,
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("group has degree {0}, expected {1}")]
    WrongDegree(usize, usize),
}

/// A fully enumerated finite matrix group.
///
/// Elements are stored in breadth-first order from the identity (index 0),
/// every entry expressed in one working conductor.
#[derive(Clone)]
pub struct FiniteMatrixGroup {
    degree: usize,
    conductor: u32,
    generators: Vec<Matrix>,
    elements: Vec<Matrix>,
    /// `parent[i] = (j, s)` with `elements[i] = elements[j] * generators[s]`.
    parent: Vec<(usize, usize)>,
    /// `right_mul[i][s]` = index of `elements[i] * generators[s]`.
    right_mul: Vec<Vec<usize>>,
    lookup: HashMap<u64, Vec<usize>>,
}

fn matrix_key(m: &Matrix) -> u64 {
    let mut h = DefaultHasher::new();
    for z in m.entries() {
        z.coeffs().hash(&mut h);
    }
    h.finish()
}

/// Re-expresses every entry in conductor `n` so coefficient vectors are
/// comparable.
fn canonical(m: Matrix, n: u32) -> Matrix {
    if m.entries().iter().all(|z| z.conductor() == n) {
        return m;
    }
    m.embed(n)
}

/// Breadth-first closure of `generators` under right multiplication.
pub fn generate_group(generators: &[Matrix], limit: usize) -> Result<FiniteMatrixGroup, GroupError> {
    let first = generators.first().ok_or(GroupError::NoGenerators)?;
    let degree = first.rows();
    if generators
        .iter()
        .any(|g| g.rows() != degree || g.cols() != degree)
    {
        return Err(GroupError::ShapeMismatch);
    }
    for (i, g) in generators.iter().enumerate() {
        if g.inverse().is_err() {
            return Err(GroupError::NotInvertible(i));
        }
    }
    let n = normalize_conductor(
        generators
            .iter()
            .fold(1u64, |acc, g| lcm(acc, g.conductor() as u64)) as u32,
    );
    let gens: Vec<Matrix> = generators.iter().map(|g| g.embed(n)).collect();

    let mut group = FiniteMatrixGroup {
        degree,
        conductor: n,
        generators: gens,
        elements: Vec::new(),
        parent: Vec::new(),
        right_mul: Vec::new(),
        lookup: HashMap::new(),
    };
    group.insert(Matrix::identity(degree).embed(n), (0, usize::MAX));
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let mut row = Vec::with_capacity(group.generators.len());
        for s in 0..group.generators.len() {
            let prod = canonical(&group.elements[i] * &group.generators[s], n);
            let j = match group.find(&prod) {
                Some(j) => j,
                None => {
                    if group.elements.len() >= limit {
                        return Err(GroupError::LimitExceeded(limit));
                    }
                    let j = group.insert(prod, (i, s));
                    queue.push_back(j);
                    j
                }
            };
            row.push(j);
        }
        group.right_mul[i] = row;
    }
    Ok(group)
}

impl std::fmt::Debug for FiniteMatrixGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteMatrixGroup")
            .field("degree", &self.degree)
            .field("conductor", &self.conductor)
            .field("order", &self.order())
            .finish()
    }
}

impl FiniteMatrixGroup {
    fn insert(&mut self, m: Matrix, parent: (usize, usize)) -> usize {
        let idx = self.elements.len();
        self.lookup.entry(matrix_key(&m)).or_default().push(idx);
        self.elements.push(m);
        self.parent.push(parent);
        self.right_mul.push(Vec::new());
        idx
    }

    /// Index of a matrix in the group, if present.
    pub fn find(&self, m: &Matrix) -> Option<usize> {
        if m.rows() != self.degree || m.cols() != self.degree {
            return None;
        }
        let m = canonical(m.clone(), self.conductor);
        let cands = self.lookup.get(&matrix_key(&m))?;
        cands.iter().copied().find(|&i| self.elements[i] == m)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    /// Index of the `s`-th generator.
    pub fn generator_index(&self, s: usize) -> usize {
        self.right_mul[0][s]
    }

    /// `right_mul(i, s)` = index of `g_i · gen_s`.
    pub fn right_mul(&self, i: usize, s: usize) -> usize {
        self.right_mul[i][s]
    }

    /// Generator word of element `i`, as generator indices read left to right.
    pub fn word(&self, i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut cur = i;
        while cur != 0 {
            let (p, s) = self.parent[cur];
            w.push(s);
            cur = p;
        }
        w.reverse();
        w
    }

    /// BFS parent link of element `i` (identity has none).
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        (i != 0).then(|| self.parent[i])
    }

    /// Index of `g_i · g_j`, found by walking the word of `g_j`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.word(j)
            .into_iter()
            .fold(i, |acc, s| self.right_mul[acc][s])
    }

    /// Indices of `g^0, g^1, …, g^{ord-1}`.
    pub fn powers(&self, i: usize) -> Vec<usize> {
        let w = self.word(i);
        let mut out = vec![0];
        let mut cur = i;
        while cur != 0 {
            out.push(cur);
            cur = w.iter().fold(cur, |acc, &s| self.right_mul[acc][s]);
            assert!(out.len() <= self.order(), "element order exceeds group order");
        }
        out
    }

    pub fn element_order(&self, i: usize) -> usize {
        self.powers(i).len()
    }

    pub fn inverse(&self, i: usize) -> usize {
        *self.powers(i).last().unwrap()
    }

    /// Indices of elements that are scalar matrices.
    pub fn scalar_subgroup(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.elements[i].scalar_value().is_some())
            .collect()
    }

    /// The scalar values `z` with `z·I` in the group.
    pub fn scalar_values(&self) -> Vec<Cyclotomic> {
        self.scalar_subgroup()
            .into_iter()
            .map(|i| self.elements[i].scalar_value().unwrap())
            .collect()
    }

    /// Whether every scalar `z·I` in the group satisfies `z^d = 1`.
    pub fn validate_scalar_lemma(&self, d: u32) -> bool {
        self.scalar_values()
            .iter()
            .all(|z| z.pow(d as i64).map(|p| p.is_one()).unwrap_or(false))
    }

    /// Least `n >= 1` with `g_i^n` scalar.
    pub fn projective_order(&self, i: usize) -> usize {
        let p = self.powers(i);
        (1..=p.len())
            .find(|&n| n == p.len() || self.elements[p[n]].scalar_value().is_some())
            .unwrap()
    }

    /// Power traces `Tr(g^k)` for `k = 0..ord(g)`.
    pub fn power_traces(&self, i: usize) -> Vec<Cyclotomic> {
        self.powers(i)
            .into_iter()
            .map(|j| self.elements[j].trace())
            .collect()
    }

    /// Spectra of all elements; elements with equal power traces share one
    /// computation.
    pub fn all_spectra(&self) -> Result<Vec<Spectrum>, SpectrumError> {
        let mut cache: HashMap<Vec<Vec<crate::cyclo::Rational>>, Spectrum> = HashMap::new();
        let mut out = Vec::with_capacity(self.order());
        for i in 0..self.order() {
            let traces = self.power_traces(i);
            let key: Vec<Vec<crate::cyclo::Rational>> = traces
                .iter()
                .map(|t| t.embed(self.conductor).coeffs().to_vec())
                .collect();
            let s = match cache.get(&key) {
                Some(s) => s.clone(),
                None => {
                    let s = Spectrum::from_power_traces(&traces, self.degree)?;
                    cache.insert(key, s.clone());
                    s
                }
            };
            out.push(s);
        }
        Ok(out)
    }

    /// Eigenvalue multiset of element `i` from its power traces.
    pub fn spectrum(&self, i: usize) -> Result<Spectrum, SpectrumError> {
        Spectrum::from_power_traces(&self.power_traces(i), self.degree)
    }

    /// Representatives of `G / Z` where `Z` is the scalar subgroup, with
    /// the scalar subgroup indices. Every element is `t·z` for exactly one pair.
    pub fn scalar_transversal(&self) -> (Vec<usize>, Vec<usize>) {
        let z = self.scalar_subgroup();
        if z.len() == 1 {
            return ((0..self.order()).collect(), z);
        }
        let mut seen = vec![false; self.order()];
        let mut reps = Vec::with_capacity(self.order() / z.len());
        for i in 0..self.order() {
            if seen[i] {
                continue;
            }
            reps.push(i);
            for &s in &z {
                seen[self.mul(i, s)] = true;
            }
        }
        (reps, z)
    }

    /// Exhaustive (small groups) or sampled (large groups) closure check
    /// against explicit matrix products.
    pub fn verify_closure(&self, samples: usize, seed: u64) -> bool {
        let n = self.order();
        let check = |i: usize, j: usize| -> bool {
            let prod = &self.elements[i] * &self.elements[j];
            self.find(&prod) == Some(self.mul(i, j))
        };
        if n <= 200 {
            return (0..n).all(|i| (0..n).all(|j| check(i, j)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).all(|_| {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            check(i, j)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> Cyclotomic {
        Cyclotomic::e(3)
    }

    #[test]
    fn cyclic_of_order_three() {
        let one = Cyclotomic::one();
        let g = Matrix::diagonal(&[
            one.clone(),
            one.clone(),
            one.clone(),
            one,
            w(),
            &w() * &w(),
        ]);
        let grp = generate_group(&[g], 100).unwrap();
        assert_eq!(grp.order(), 3);
        assert_eq!(grp.scalar_subgroup(), vec![0]);
        assert!(grp.verify_closure(0, 1));
        for i in 0..3 {
            assert_eq!(grp.mul(i, grp.inverse(i)), 0);
        }
    }

    #[test]
    fn limit_and_bad_generators() {
        let g = Matrix::diagonal(&[Cyclotomic::e(5), Cyclotomic::one()]);
        assert_eq!(
            generate_group(&[g], 3).unwrap_err(),
            GroupError::LimitExceeded(3)
        );
        let z = Matrix::zeros(2, 2);
        assert_eq!(generate_group(&[z], 3).unwrap_err(), GroupError::NotInvertible(0));
    }

    #[test]
    fn scalar_lemma() {
        let i6 = Matrix::scalar(6, Cyclotomic::e(4));
        let g = generate_group(&[i6], 10).unwrap();
        assert!(!g.validate_scalar_lemma(3));
        let t = generate_group(&[Matrix::identity(6)], 10).unwrap();
        assert!(t.validate_scalar_lemma(3));
        assert_eq!(t.order(), 1);
    }

    #[test]
    fn symmetric_group_words() {
        let s = Matrix::permutation(&[1, 0, 2]);
        let c = Matrix::permutation(&[1, 2, 0]);
        let g = generate_group(&[s, c], 100).unwrap();
        assert_eq!(g.order(), 6);
        for i in 0..g.order() {
            let prod = g
                .word(i)
                .into_iter()
                .fold(Matrix::identity(3), |acc, s| &acc * &g.generators()[s]);
            assert_eq!(g.find(&prod), Some(i));
        }
    }
}
