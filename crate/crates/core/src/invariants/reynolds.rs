//! Semi-invariant spaces `V_d(ρ, χ)` through the averaging projection
//! `P = (1/|G|) Σ_g χ(g)^{-1} T_g`, where `T_g F = F(ρ(g)x)`.
//!
//! The matrix of `T_g` on degree-`d` monomials is built degree by degree:
//! the image of `μ = μ'·x_k` is the image of `μ'` times the linear form in
//! row `k` of `ρ(g)`. All arithmetic happens on raw coefficient vectors in
//! the group's working conductor, reducing modulo `Φ_N` once per entry.

use super::monomial::MonomialBasis;
use super::polynomial::Polynomial;
use super::InvariantError;
use crate::cyclo::{field, Cyclotomic, Rational};
use crate::group::{FiniteMatrixGroup, LinearCharacter};
use crate::linalg::{nullspace, Matrix, Subspace};

/// Tables for the action of `m×m` matrices on forms of degree `≤ d`.
pub struct SymmetricPower {
    nvars: usize,
    bases: Vec<MonomialBasis>,
    /// `split[t][μ] = (μ', k)` with `μ = μ'·x_k`, `μ'` indexed in degree `t-1`.
    split: Vec<Vec<(usize, usize)>>,
    /// `times_var[t][ν][j]` = index in degree `t+1` of `ν·x_j`.
    times_var: Vec<Vec<Vec<usize>>>,
}

impl SymmetricPower {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let bases: Vec<MonomialBasis> = (0..=degree).map(|t| MonomialBasis::new(nvars, t)).collect();
        let mut split = vec![Vec::new()];
        let mut times_var = Vec::new();
        for t in 0..degree as usize {
            let next = &bases[t + 1];
            times_var.push(
                bases[t]
                    .monomials()
                    .iter()
                    .map(|e| {
                        (0..nvars)
                            .map(|j| {
                                let mut e2 = e.clone();
                                e2[j] += 1;
                                next.index_of(&e2).unwrap()
                            })
                            .collect()
                    })
                    .collect(),
            );
        }
        for t in 1..=degree as usize {
            split.push(
                bases[t]
                    .monomials()
                    .iter()
                    .map(|e| {
                        let k = e.iter().position(|&x| x > 0).unwrap();
                        let mut e2 = e.clone();
                        e2[k] -= 1;
                        (bases[t - 1].index_of(&e2).unwrap(), k)
                    })
                    .collect(),
            );
        }
        SymmetricPower {
            nvars,
            bases,
            split,
            times_var,
        }
    }

    pub fn basis(&self) -> &MonomialBasis {
        self.bases.last().unwrap()
    }

    pub fn degree(&self) -> u32 {
        (self.bases.len() - 1) as u32
    }

    /// Flat coefficients of the matrix of `T_g` in conductor `n`:
    /// entry `(row, col)` starts at `(row * K + col) * φ(n)`, and column
    /// `col` holds the coordinates of `μ_col(gx)`.
    pub fn action_flat(&self, g: &Matrix, n: u32) -> Vec<Rational> {
        let f = field(n);
        let phi = f.phi;
        let m = self.nvars;
        assert_eq!(g.rows(), m);
        let gc: Vec<Vec<Rational>> = g.entries().iter().map(|z| z.embed(n).coeffs().to_vec()).collect();
        let nonzero: Vec<bool> = gc.iter().map(|c| c.iter().any(|q| !q.is_zero())).collect();
        let d = self.degree() as usize;
        if d == 0 {
            let mut one = vec![Rational::ZERO; phi];
            one[0] = Rational::ONE;
            return one;
        }
        // images[μ][ν] in degree 1: coefficient of x_ν in row μ of g
        let mut k_prev = m;
        let mut images: Vec<Rational> = Vec::with_capacity(m * m * phi);
        for mu in 0..m {
            for nu in 0..m {
                images.extend_from_slice(&gc[mu * m + nu]);
            }
        }
        let nn = n as usize;
        for t in 2..=d {
            let k_cur = self.bases[t].len();
            let mut next = vec![Rational::ZERO; k_cur * k_cur * phi];
            let mut scratch = vec![Rational::ZERO; k_cur * nn];
            let mut touched = vec![false; k_cur];
            for (mu, &(mu_prev, k)) in self.split[t].iter().enumerate() {
                for s in scratch.iter_mut() {
                    if !s.is_zero() {
                        *s = Rational::ZERO;
                    }
                }
                touched.iter_mut().for_each(|x| *x = false);
                let img = &images[mu_prev * k_prev * phi..(mu_prev + 1) * k_prev * phi];
                for nu in 0..k_prev {
                    let a = &img[nu * phi..(nu + 1) * phi];
                    if a.iter().all(Rational::is_zero) {
                        continue;
                    }
                    for j in 0..m {
                        if !nonzero[k * m + j] {
                            continue;
                        }
                        let b = &gc[k * m + j];
                        let idx = self.times_var[t - 1][nu][j];
                        touched[idx] = true;
                        let acc = &mut scratch[idx * nn..(idx + 1) * nn];
                        mul_acc(acc, a, b, nn);
                    }
                }
                for (idx, &was) in touched.iter().enumerate() {
                    if !was {
                        continue;
                    }
                    let red = f.reduce_exponents(&scratch[idx * nn..(idx + 1) * nn]);
                    let base = (mu * k_cur + idx) * phi;
                    next[base..base + phi].clone_from_slice(&red);
                }
            }
            images = next;
            k_prev = k_cur;
        }
        // transpose: images is indexed [μ][ν]; the matrix wants row ν, column μ
        let k = k_prev;
        let mut out = vec![Rational::ZERO; k * k * phi];
        for mu in 0..k {
            for nu in 0..k {
                let src = (mu * k + nu) * phi;
                let dst = (nu * k + mu) * phi;
                out[dst..dst + phi].clone_from_slice(&images[src..src + phi]);
            }
        }
        out
    }

    /// Matrix of `T_g` on degree-`d` forms.
    pub fn action_matrix(&self, g: &Matrix) -> Matrix {
        let n = g.conductor();
        let flat = self.action_flat(g, n);
        flat_to_matrix(&flat, self.basis().len(), n)
    }
}

#[inline]
fn mul_acc(acc: &mut [Rational], a: &[Rational], b: &[Rational], n: usize) {
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let mut e = i + j;
            if e >= n {
                e -= n;
            }
            acc[e].add_mul(x, y);
        }
    }
}

fn flat_to_matrix(flat: &[Rational], k: usize, n: u32) -> Matrix {
    let phi = field(n).phi;
    let entries = (0..k * k)
        .map(|i| Cyclotomic::from_coeffs(n, flat[i * phi..(i + 1) * phi].to_vec()))
        .collect();
    Matrix::from_entries(k, k, entries)
}

fn add_flat(acc: &mut [Rational], x: &[Rational]) {
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += b;
        }
    }
}

/// Checks `λ^d = χ(λI)` for every scalar `λI` in the group. When it fails no
/// nonzero degree-`d` form can be semi-invariant.
pub fn scalar_condition(group: &FiniteMatrixGroup, chi: &LinearCharacter, d: u32) -> bool {
    group.scalar_subgroup().into_iter().all(|i| {
        let lambda = group.element(i).scalar_value().unwrap();
        lambda.pow(d as i64).unwrap() == *chi.value(i)
    })
}

/// The averaging projection onto `V_d(ρ, χ)` in the monomial basis.
///
/// When the group contains scalars the sum runs over a transversal of the
/// scalar subgroup `Z`; the scalars contribute the factor
/// `Σ_{z∈Z} χ(z)^{-1} λ_z^d`, which is `|Z|` or `0`.
pub fn reynolds_projection(
    group: &FiniteMatrixGroup,
    chi: &LinearCharacter,
    d: u32,
) -> Result<Matrix, InvariantError> {
    let sp = SymmetricPower::new(group.degree(), d);
    reynolds_with(&sp, group, chi)
}

fn reynolds_with(
    sp: &SymmetricPower,
    group: &FiniteMatrixGroup,
    chi: &LinearCharacter,
) -> Result<Matrix, InvariantError> {
    let d = sp.degree();
    let k = sp.basis().len();
    let n = group.conductor();
    let (reps, scalars) = group.scalar_transversal();
    let mut factor = Cyclotomic::zero();
    for &z in &scalars {
        let lambda = group.element(z).scalar_value().unwrap();
        let term = &lambda.pow(d as i64).unwrap() * &chi.value(z).inv().unwrap();
        factor = &factor + &term;
    }
    if factor.is_zero() {
        return Ok(Matrix::zeros(k, k));
    }
    // sums of T_t grouped by the value χ(t)^{-1}
    let mut buckets: Vec<(Cyclotomic, Vec<Rational>)> = Vec::new();
    for &t in &reps {
        let w = chi.value(t).inv().unwrap();
        let flat = sp.action_flat(group.element(t), n);
        match buckets.iter_mut().find(|(c, _)| *c == w) {
            Some((_, acc)) => add_flat(acc, &flat),
            None => buckets.push((w, flat)),
        }
    }
    let scale = &factor * &Cyclotomic::from_rational(Rational::new(1, group.order() as i64));
    let mut p = Matrix::zeros(k, k);
    for (w, acc) in buckets {
        let m = flat_to_matrix(&acc, k, n);
        p = &p + &m.scale(&(&w * &scale));
    }
    Ok(p)
}

/// `V_d(ρ, χ)` as the column space of the averaging projection, with the
/// projection's idempotence checked.
pub fn semi_invariant_space(
    group: &FiniteMatrixGroup,
    chi: &LinearCharacter,
    d: u32,
) -> Result<Subspace, InvariantError> {
    if !scalar_condition(group, chi, d) {
        return Err(InvariantError::ScalarLemma { degree: d });
    }
    let p = reynolds_projection(group, chi, d)?;
    if &p * &p != p {
        return Err(InvariantError::NotIdempotent);
    }
    Ok(Subspace::column_space(&p))
}

/// `V_d(ρ, χ)` as the common kernel of `T_s - χ(s)` over the generators.
/// An independent route used to cross-check the projection.
pub fn semi_invariant_space_by_generators(
    group: &FiniteMatrixGroup,
    chi: &LinearCharacter,
    d: u32,
) -> Subspace {
    let sp = SymmetricPower::new(group.degree(), d);
    let k = sp.basis().len();
    let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
    for (s, g) in group.generators().iter().enumerate() {
        let t = sp.action_matrix(g);
        let c = chi.value(group.generator_index(s));
        let m = &t - &Matrix::scalar(k, c.clone());
        rows.extend(m.to_rows());
    }
    let m = Matrix::from_rows(rows).expect("rows have equal length");
    nullspace(&m)
}

/// Basis polynomials of a subspace of degree-`d` forms.
pub fn basis_polynomials(space: &Subspace, basis: &MonomialBasis) -> Vec<Polynomial> {
    space.basis().iter().map(|v| basis.polynomial(v)).collect()
}

/// Span of the given forms as a subspace over the monomial basis.
pub fn span_of(polys: &[Polynomial], basis: &MonomialBasis) -> Result<Subspace, InvariantError> {
    let vecs = polys
        .iter()
        .map(|p| basis.coordinates(p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subspace::span(basis.len(), &vecs)?)
}

/// Whether `F(ρ(s)x) = χ(s)F(x)` for every generator `s`.
pub fn check_semi_invariance(f: &Polynomial, group: &FiniteMatrixGroup, chi: &LinearCharacter) -> bool {
    let Ok(f) = f.with_nvars(group.degree()) else {
        return false;
    };
    group.generators().iter().enumerate().all(|(s, g)| {
        let c = chi.value(group.generator_index(s));
        f.substitute(g).map(|h| h == f.scale(c)).unwrap_or(false)
    })
}
