//! Helpers shared by the integration targets: catalog pools and the
//! property checks run both by proptest and by the acceptance target.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::OnceLock;

use cubicsym::catalog::{catalog_entry, catalog_names, CatalogEntry};
use cubicsym::group::{build_character, FiniteMatrixGroup, LinearCharacter};
use cubicsym::invariants::{
    basis_polynomials, molien_series, reynolds_projection, semi_invariant_space,
    semi_invariant_space_by_generators, span_of, InvariantError, MonomialBasis, Polynomial,
};
use cubicsym::linalg::{span_equal, Matrix, Subspace};
use cubicsym::Cyclotomic;

/// Groups small enough for many randomized runs.
pub const SMALL_ORDER: usize = 200;

/// A catalog group with one of its characters.
#[derive(Debug, Clone)]
pub struct Pick {
    pub entry: String,
    pub character: String,
}

pub fn entry(name: &str) -> CatalogEntry {
    catalog_entry(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// `(entry, character)` pairs over catalog groups of order at most
/// [`SMALL_ORDER`], with `trivial` included for every entry.
pub fn small_pool() -> Vec<Pick> {
    static POOL: OnceLock<Vec<Pick>> = OnceLock::new();
    POOL.get_or_init(build_small_pool).clone()
}

fn build_small_pool() -> Vec<Pick> {
    let mut out = Vec::new();
    for name in catalog_names() {
        let e = entry(name);
        let g = e.spec.build_group().unwrap();
        if g.order() > SMALL_ORDER {
            continue;
        }
        out.push(Pick {
            entry: name.to_string(),
            character: "trivial".into(),
        });
        for c in e.spec.character_names() {
            out.push(Pick {
                entry: name.to_string(),
                character: c.to_string(),
            });
        }
    }
    out
}

/// Pairs whose character is nontrivial, usable as twists.
pub fn twist_pool() -> Vec<Pick> {
    small_pool().into_iter().filter(|p| p.character != "trivial").collect()
}

pub fn group_and_character(p: &Pick) -> (CatalogEntry, FiniteMatrixGroup, LinearCharacter) {
    let e = entry(&p.entry);
    let g = e.spec.build_group().unwrap();
    let chi = e.spec.character(&g, &p.character).unwrap();
    (e, g, chi)
}

/// `V_d` with the scalar obstruction read as the zero space.
pub fn space_or_zero(g: &FiniteMatrixGroup, chi: &LinearCharacter, d: u32) -> Subspace {
    match semi_invariant_space(g, chi, d) {
        Ok(s) => s,
        Err(InvariantError::ScalarLemma { .. }) => {
            Subspace::zero(MonomialBasis::new(g.degree(), d).len())
        }
        Err(e) => panic!("{e}"),
    }
}

/// Idempotence of the averaging operator, and agreement of its rank with
/// the Molien coefficient and with the generator-kernel route.
pub fn check_reynolds(p: &Pick, d: u32) -> Result<(), String> {
    let (_, g, chi) = group_and_character(p);
    let proj = reynolds_projection(&g, &chi, d).map_err(|e| e.to_string())?;
    if &proj * &proj != proj {
        return Err(format!("{p:?} d={d}: P^2 != P"));
    }
    let rank = Subspace::column_space(&proj).dim();
    let molien = molien_series(&g, &chi, d as usize).map_err(|e| e.to_string())?;
    let kernel = semi_invariant_space_by_generators(&g, &chi, d);
    if rank as i64 != molien.coefficient(d as usize) || rank != kernel.dim() {
        return Err(format!(
            "{p:?} d={d}: rank {rank}, molien {}, kernel {}",
            molien.coefficient(d as usize),
            kernel.dim()
        ));
    }
    Ok(())
}

/// A small invertible integer matrix: a product of elementary moves applied
/// to a permutation.
pub fn unimodular(n: usize, moves: &[(usize, usize, i64)], perm_seed: usize) -> Matrix {
    let mut rows: Vec<Vec<Cyclotomic>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Cyclotomic::from_int(((i + perm_seed) % n == j) as i64))
                .collect()
        })
        .collect();
    for &(a, b, k) in moves {
        let (a, b) = (a % n, b % n);
        if a == b {
            continue;
        }
        let src = rows[b].clone();
        for (x, y) in rows[a].iter_mut().zip(&src) {
            *x = &*x + &(y * &Cyclotomic::from_int(k));
        }
    }
    Matrix::from_rows(rows).unwrap()
}

/// Relabeling property: conjugating every generator by a group element `h`,
/// reordering them, and changing coordinates by `a` moves `V_d` by `F ↦ F∘a⁻¹`.
pub fn check_relabeling(p: &Pick, d: u32, h_seed: usize, order_seed: usize, a: &Matrix) -> Result<(), String> {
    let (e, g, chi) = group_and_character(p);
    let h = g.element(h_seed % g.order()).clone();
    let h_inv = h.inverse().map_err(|e| e.to_string())?;
    let a_inv = a.inverse().map_err(|e| e.to_string())?;
    let gens = g.generators();
    let values = e.spec.character_values(&p.character).map_err(|e| e.to_string())?;
    let k = gens.len();
    let order: Vec<usize> = (0..k).map(|i| (i + order_seed) % k).collect();
    let new_gens: Vec<Matrix> = order
        .iter()
        .map(|&i| &(&(a * &h) * &gens[i]) * &(&h_inv * &a_inv))
        .collect();
    let new_vals: Vec<Cyclotomic> = order.iter().map(|&i| values[i].clone()).collect();
    let g2 = cubicsym::group::generate_group(&new_gens, e.spec.limit()).map_err(|e| e.to_string())?;
    if g2.order() != g.order() {
        return Err(format!("{p:?}: conjugate group has order {}", g2.order()));
    }
    let chi2 = build_character(&g2, &new_vals).map_err(|e| e.to_string())?;
    let basis = MonomialBasis::new(g.degree(), d);
    let moved: Vec<Polynomial> = basis_polynomials(&space_or_zero(&g, &chi, d), &basis)
        .iter()
        .map(|f| f.substitute(&a_inv).unwrap())
        .collect();
    let expected = span_of(&moved, &basis).map_err(|e| e.to_string())?;
    let got = space_or_zero(&g2, &chi2, d);
    if !span_equal(&expected, &got).map_err(|e| e.to_string())? {
        return Err(format!("{p:?} d={d}: relabeled space differs"));
    }
    Ok(())
}

/// Twist property: `V_d(ρ, χ) = V_d(ρ ⊗ θ, χ θ^d)`, with the twisted
/// representation realized as the group generated by `θ(s)·s`.
pub fn check_twist(theta: &Pick, chi_name: &str, d: u32) -> Result<(), String> {
    let e = entry(&theta.entry);
    let g = e.spec.build_group().map_err(|e| e.to_string())?;
    let chi = e.spec.character(&g, chi_name).map_err(|e| e.to_string())?;
    let tg = e.spec.twisted_group(&theta.character).map_err(|e| e.to_string())?;
    let th = e.spec.character_values(&theta.character).map_err(|e| e.to_string())?;
    let cv = e.spec.character_values(chi_name).map_err(|e| e.to_string())?;
    let vals: Vec<Cyclotomic> = cv
        .iter()
        .zip(&th)
        .map(|(c, t)| c * &t.pow(d as i64).unwrap())
        .collect();
    let lhs = space_or_zero(&g, &chi, d);
    let rhs = match build_character(&tg, &vals) {
        Ok(c) => space_or_zero(&tg, &c, d),
        // the twisted image is a proper quotient on which χθ^d is not
        // defined; then no form can be a semi-invariant on either side
        Err(_) => Subspace::zero(MonomialBasis::new(g.degree(), d).len()),
    };
    if !span_equal(&lhs, &rhs).map_err(|e| e.to_string())? {
        return Err(format!("{theta:?} chi={chi_name} d={d}: twisted space differs"));
    }
    Ok(())
}

/// A polynomial in `n` variables from `(exponents, coefficient)` seeds.
pub fn polynomial(n: usize, terms: &[(Vec<u8>, i64, u8)]) -> Polynomial {
    let w = Cyclotomic::root_of_unity(3, 1);
    Polynomial::from_terms(
        n,
        terms.iter().map(|(e, c, k)| {
            let mut e = e.clone();
            e.resize(n, 0);
            (e, &Cyclotomic::from_int(*c) * &w.pow(*k as i64).unwrap())
        }),
    )
}

pub fn matrix(n: usize, entries: &[i64]) -> Matrix {
    Matrix::from_entries(n, n, entries.iter().take(n * n).map(|&x| Cyclotomic::from_int(x)).collect())
}

pub fn bindings(e: &CatalogEntry) -> HashMap<String, Polynomial> {
    e.expect.bindings(&e.spec).unwrap()
}

/// A named form of an entry, restricted to the representation's coordinates.
pub fn form(e: &CatalogEntry, name: &str) -> Polynomial {
    let b = bindings(e);
    e.spec.restrict(&b[name]).unwrap()
}
