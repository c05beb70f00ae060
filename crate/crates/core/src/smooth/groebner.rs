//! Buchberger's algorithm in graded reverse lexicographic order.

use std::collections::BTreeMap;

use super::field::{Elem, GFContext};
use super::poly::{GFPolynomial, Mono};

/// Full reduction of `f` modulo monic polynomials `basis`.
pub fn reduce(f: &GFPolynomial, basis: &[GFPolynomial], ctx: &GFContext) -> GFPolynomial {
    let mut work: BTreeMap<Mono, Elem> = f.terms().iter().copied().collect();
    let mut rem: BTreeMap<Mono, Elem> = BTreeMap::new();
    while let Some((m, c)) = work.pop_last() {
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|l| l.divides(m)));
        match divisor {
            None => {
                rem.insert(m, c);
            }
            Some(g) => {
                let lead = g.leading_monomial().unwrap();
                let shift = lead.quotient_of(m);
                let factor = ctx.neg(c);
                for &(gm, gc) in &g.terms()[1..] {
                    let t = gm.mul(shift);
                    let e = work.entry(t).or_insert(Elem::ZERO);
                    *e = ctx.add(*e, ctx.mul(gc, factor));
                    if e.is_zero() {
                        work.remove(&t);
                    }
                }
            }
        }
    }
    GFPolynomial::from_map(f.nvars(), rem)
}

/// The S-polynomial of two monic polynomials.
pub fn s_polynomial(f: &GFPolynomial, g: &GFPolynomial, ctx: &GFContext) -> GFPolynomial {
    let lf = f.leading_monomial().unwrap();
    let lg = g.leading_monomial().unwrap();
    let l = lf.lcm(lg);
    let (a, b) = (lf.quotient_of(l), lg.quotient_of(l));
    let mut acc: BTreeMap<Mono, Elem> = BTreeMap::new();
    for &(m, c) in f.terms() {
        let e = acc.entry(m.mul(a)).or_insert(Elem::ZERO);
        *e = ctx.add(*e, c);
    }
    for &(m, c) in g.terms() {
        let e = acc.entry(m.mul(b)).or_insert(Elem::ZERO);
        *e = ctx.sub(*e, c);
    }
    GFPolynomial::from_map(f.nvars(), acc)
}

/// The reduced Gröbner basis of the ideal generated by `gens`, sorted by
/// increasing leading monomial.
///
/// # Panics
///
/// If `gens` mix variable counts, or if the final S-pair check fails.
pub fn buchberger(gens: &[GFPolynomial], ctx: &GFContext) -> Vec<GFPolynomial> {
    let nvars = gens.first().map_or(0, |g| g.nvars());
    assert!(gens.iter().all(|g| g.nvars() == nvars), "generators must share variables");
    let mut basis: Vec<GFPolynomial> = Vec::new();
    // pairs keyed by lcm for the normal selection strategy
    let mut pairs: BTreeMap<(Mono, usize, usize), ()> = BTreeMap::new();
    let add = |p: GFPolynomial, basis: &mut Vec<GFPolynomial>, pairs: &mut BTreeMap<_, _>| {
        let lp = p.leading_monomial().unwrap();
        let j = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let lg = g.leading_monomial().unwrap();
            if !lp.coprime(lg) {
                pairs.insert((lp.lcm(lg), i, j), ());
            }
        }
        basis.push(p);
    };
    for g in gens {
        let r = reduce(g, &basis, ctx);
        if !r.is_zero() {
            add(r.monic(ctx), &mut basis, &mut pairs);
        }
    }
    while let Some(((_, i, j), ())) = pairs.pop_first() {
        let s = s_polynomial(&basis[i], &basis[j], ctx);
        let r = reduce(&s, &basis, ctx);
        if !r.is_zero() {
            add(r.monic(ctx), &mut basis, &mut pairs);
        }
    }
    let reduced = interreduce(basis, ctx);
    for (i, f) in reduced.iter().enumerate() {
        for g in &reduced[i + 1..] {
            let s = s_polynomial(f, g, ctx);
            assert!(reduce(&s, &reduced, ctx).is_zero(), "S-polynomial did not reduce to zero");
        }
    }
    reduced
}

fn interreduce(mut basis: Vec<GFPolynomial>, ctx: &GFContext) -> Vec<GFPolynomial> {
    basis.sort_by_key(|g| g.leading_monomial().unwrap());
    let mut minimal: Vec<GFPolynomial> = Vec::new();
    for g in basis {
        let lg = g.leading_monomial().unwrap();
        if !minimal.iter().any(|h| h.leading_monomial().unwrap().divides(lg)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<GFPolynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let lead = &minimal[i].terms()[0];
        let tail = GFPolynomial::from_terms(minimal[i].nvars(), minimal[i].terms()[1..].to_vec(), ctx);
        let tail = reduce(&tail, &others, ctx);
        out.push(GFPolynomial::from_terms(
            minimal[i].nvars(),
            std::iter::once(*lead).chain(tail.terms().iter().copied()),
            ctx,
        ));
    }
    out
}
