//! Smoothness certificates for projective hypersurfaces.
//!
//! A form over `ℚ(ζ_N)` is reduced modulo a prime `p ∤ N` into `𝔽_{p^k}`.
//! If the Jacobian ideal there has a Gröbner basis containing a pure power
//! of every variable, the reduction is smooth and so is the original form.

mod field;
mod groebner;
mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub use field::{is_prime, multiplicative_order, Elem, GFContext, MAX_FIELD_SIZE};
pub use groebner::{buchberger, reduce, s_polynomial};
pub use poly::{monomial_string, GFPolynomial, Mono, MAX_EXPONENT, MAX_VARS};

use crate::cyclo::Rational;
use crate::invariants::Polynomial;

/// Primes tried by default, in order.
pub const DEFAULT_PRIMES: [u32; 5] = [2, 7, 13, 5, 11];

/// Above this many projective points the rational-point scan is skipped.
pub const POINT_SCAN_LIMIT: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SmoothError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{p} divides the conductor {conductor}")]
    Ramified { p: u32, conductor: u32 },
    #[error("residue field of {p} for conductor {conductor} has size {p}^{k}, too large")]
    FieldTooLarge { p: u32, k: u32, conductor: u32 },
    #[error("prime {p} is not admissible ({reason}); try one of {suggestions:?}")]
    Inadmissible {
        p: u32,
        reason: String,
        suggestions: Vec<u32>,
    },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial reduces to zero modulo {0}")]
    ZeroReduction(u32),
    #[error("at most {MAX_VARS} variables are supported")]
    TooManyVariables,
}

/// Why `p` cannot be used for a form with the given coefficients, if it can't.
fn admissibility(p: u32, f: &Polynomial) -> Result<(), String> {
    if !is_prime(p as u64) {
        return Err(format!("{p} is not prime"));
    }
    let n = f.conductor();
    if n.is_multiple_of(p) {
        return Err(format!("{p} divides the conductor {n}"));
    }
    let big_p = BigInt::from(p);
    for c in f.coefficients() {
        for q in c.coeffs() {
            if (q.denom() % &big_p) == BigInt::from(0) {
                return Err(format!("{p} divides a coefficient denominator"));
            }
        }
    }
    let k = multiplicative_order(p as u64, n as u64);
    if (p as u64).checked_pow(k).is_none_or(|q| q > MAX_FIELD_SIZE) {
        return Err(format!("residue field {p}^{k} is too large"));
    }
    Ok(())
}

/// Admissible primes for `f`: the defaults first, then the remaining primes
/// below 100 in increasing order.
pub fn admissible_primes(f: &Polynomial) -> Vec<u32> {
    let rest = (2..100u32).filter(|p| !DEFAULT_PRIMES.contains(p));
    DEFAULT_PRIMES
        .iter()
        .copied()
        .chain(rest)
        .filter(|&p| admissibility(p, f).is_ok())
        .collect()
}

fn inadmissible(p: u32, reason: String, f: &Polynomial) -> SmoothError {
    let mut suggestions = admissible_primes(f);
    suggestions.truncate(5);
    SmoothError::Inadmissible {
        p,
        reason,
        suggestions,
    }
}

fn rational_mod(q: &Rational, p: u32) -> i64 {
    let big_p = BigInt::from(p);
    let num = (q.numer() % &big_p).to_i64().unwrap();
    let den = (q.denom() % &big_p).to_i64().unwrap();
    let den_inv = field::inv_mod(den.rem_euclid(p as i64) as u64, p as u64) as i64;
    (num.rem_euclid(p as i64) * den_inv).rem_euclid(p as i64)
}

/// Reduces `f` modulo `p`, sending `ζ_N` to the context's chosen root.
pub fn reduce_mod(f: &Polynomial, p: u32) -> Result<(GFPolynomial, GFContext), SmoothError> {
    if f.nvars() > MAX_VARS {
        return Err(SmoothError::TooManyVariables);
    }
    admissibility(p, f).map_err(|r| inadmissible(p, r, f))?;
    let n = f.conductor();
    let ctx = GFContext::new(p, n).map_err(|e| inadmissible(p, e.to_string(), f))?;
    let reduced = reduce_with(f, &ctx);
    Ok((reduced, ctx))
}

fn reduce_with(f: &Polynomial, ctx: &GFContext) -> GFPolynomial {
    let n = ctx.conductor();
    let p = ctx.characteristic();
    let terms: Vec<(Mono, Elem)> = f
        .raw_terms()
        .iter()
        .map(|(e, c)| {
            // coefficients live in the power basis of their own conductor
            let c = c.embed(n);
            let mut acc = Elem::ZERO;
            for (j, q) in c.coeffs().iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                let a = ctx.from_int(rational_mod(q, p));
                acc = ctx.add(acc, ctx.mul(a, ctx.pow(ctx.zeta(), j as u64)));
            }
            (Mono::from_exponents(e), acc)
        })
        .collect();
    GFPolynomial::from_terms(f.nvars(), terms, ctx)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Smooth,
    /// A projective point where the form and all its partials vanish.
    SingularPointFound(Vec<Elem>),
    Inconclusive,
}

impl Verdict {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Verdict::Smooth)
    }
}

#[derive(Debug, Clone)]
pub struct SmoothnessCertificate {
    pub prime: u32,
    pub context: GFContext,
    /// The reduced form.
    pub reduction: GFPolynomial,
    /// Generators handed to Buchberger (partials, plus the form if `p | deg`).
    pub jacobian: Vec<GFPolynomial>,
    /// Leading exponents of the reduced Gröbner basis; empty if it was not computed.
    pub groebner_leading_terms: Vec<Vec<u8>>,
    /// Smallest `m` with `x_i^m` a leading term, per variable.
    pub variable_powers: Vec<Option<u8>>,
    /// Number of projective points checked, if the scan ran.
    pub points_scanned: Option<u64>,
    /// Number of singular rational points, if the scan ran.
    pub singular_points_found: Option<u64>,
    pub verdict: Verdict,
}

impl SmoothnessCertificate {
    /// Re-checks a reported singular point against the reduced form.
    pub fn point_is_singular(&self, point: &[Elem]) -> bool {
        let ctx = &self.context;
        self.reduction.evaluate(point, ctx).is_zero()
            && self.jacobian.iter().all(|g| g.evaluate(point, ctx).is_zero())
    }

    pub fn format_point(&self, point: &[Elem]) -> String {
        let parts: Vec<String> = point.iter().map(|&a| self.context.format(a)).collect();
        format!("[{}]", parts.join(":"))
    }
}

impl fmt::Display for SmoothnessCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = &self.context;
        writeln!(f, "prime: {}", self.prime)?;
        writeln!(f, "field: GF({}^{})", ctx.characteristic(), ctx.degree())?;
        writeln!(f, "modulus: {}", ctx.modulus_string())?;
        writeln!(f, "conductor: {}", ctx.conductor())?;
        writeln!(f, "zeta_image: {}", ctx.format(ctx.zeta()))?;
        writeln!(f, "generators: {}", self.jacobian.len())?;
        match self.points_scanned {
            Some(n) => writeln!(f, "points_scanned: {n}")?,
            None => writeln!(f, "points_scanned: skipped")?,
        }
        if let Some(n) = self.singular_points_found {
            writeln!(f, "singular_points: {n}")?;
        }
        let leads: Vec<String> = self
            .groebner_leading_terms
            .iter()
            .map(|e| monomial_string(e))
            .collect();
        writeln!(f, "leading_terms: {}", leads.join(", "))?;
        let powers: Vec<String> = self
            .variable_powers
            .iter()
            .map(|m| m.map_or("-".to_string(), |m| m.to_string()))
            .collect();
        writeln!(f, "variable_powers: {}", powers.join(" "))?;
        match &self.verdict {
            Verdict::Smooth => writeln!(f, "verdict: smooth"),
            Verdict::SingularPointFound(pt) => {
                writeln!(f, "verdict: singular-point-found {}", self.format_point(pt))
            }
            Verdict::Inconclusive => writeln!(f, "verdict: inconclusive"),
        }
    }
}

/// Scans every projective point over the field (normalized so the first
/// nonzero coordinate is one) for common zeros of `gens`.
///
/// Returns the number of zeros and the preferred one: fewest distinct
/// coordinate values, then first in enumeration order. Invariant forms tend
/// to be singular at their most symmetric points, which are also the ones
/// most likely to lift to characteristic zero.
fn scan_points(gens: &[GFPolynomial], nvars: usize, ctx: &GFContext) -> (u64, Option<Vec<Elem>>) {
    let elems: Vec<Elem> = ctx.elements().collect();
    let q = elems.len();
    let mut found = 0u64;
    let mut best: Option<(usize, Vec<Elem>)> = None;
    for lead in 0..nvars {
        let free = nvars - lead - 1;
        let mut idx = vec![0usize; free];
        'points: loop {
            let mut pt = vec![Elem::ZERO; nvars];
            pt[lead] = ctx.one();
            for (k, &i) in idx.iter().enumerate() {
                pt[lead + 1 + k] = elems[i];
            }
            if gens.iter().all(|g| g.evaluate(&pt, ctx).is_zero()) {
                found += 1;
                let mut vals = pt.clone();
                vals.sort();
                vals.dedup();
                if best.as_ref().is_none_or(|(d, _)| vals.len() < *d) {
                    best = Some((vals.len(), pt));
                }
            }
            // odometer, last coordinate fastest
            for k in (0..free).rev() {
                idx[k] += 1;
                if idx[k] < q {
                    continue 'points;
                }
                idx[k] = 0;
            }
            break;
        }
    }
    (found, best.map(|(_, pt)| pt))
}

fn projective_point_count(q: u64, n: usize) -> Option<u64> {
    let qn = q.checked_pow(n as u32)?;
    Some((qn - 1) / (q - 1))
}

/// Certifies smoothness of `V(f)` by reduction modulo `p`.
pub fn certify_smooth(f: &Polynomial, p: u32) -> Result<SmoothnessCertificate, SmoothError> {
    if !f.is_homogeneous() {
        return Err(SmoothError::NotHomogeneous);
    }
    let (reduction, context) = reduce_mod(f, p)?;
    if reduction.is_zero() {
        return Err(SmoothError::ZeroReduction(p));
    }
    let ctx = &context;
    let n = f.nvars();
    let mut jacobian: Vec<GFPolynomial> = (0..n)
        .map(|i| reduction.derivative(i, ctx))
        .filter(|g| !g.is_zero())
        .collect();
    if f.degree().is_multiple_of(p) {
        jacobian.push(reduction.clone());
    }
    let mut cert = SmoothnessCertificate {
        prime: p,
        context: context.clone(),
        reduction: reduction.clone(),
        jacobian: jacobian.clone(),
        groebner_leading_terms: Vec::new(),
        variable_powers: vec![None; n],
        points_scanned: None,
        singular_points_found: None,
        verdict: Verdict::Inconclusive,
    };
    let count = projective_point_count(ctx.size() as u64, n);
    if let Some(count) = count.filter(|&c| c <= POINT_SCAN_LIMIT) {
        cert.points_scanned = Some(count);
        // the form vanishes wherever all partials do unless p | deg, in which
        // case it is already among the generators
        let (found, best) = scan_points(&jacobian, n, ctx);
        cert.singular_points_found = Some(found);
        if let Some(pt) = best {
            cert.verdict = Verdict::SingularPointFound(pt);
            return Ok(cert);
        }
    }
    let gb = buchberger(&jacobian, ctx);
    let leads: Vec<Mono> = gb.iter().map(|g| g.leading_monomial().unwrap()).collect();
    for &m in &leads {
        if let Some(i) = m.pure_power_of() {
            let e = m.exponent(i);
            let slot = &mut cert.variable_powers[i];
            *slot = Some(slot.map_or(e, |old| old.min(e)));
        }
    }
    cert.groebner_leading_terms = leads.iter().map(|m| m.exponents(n)).collect();
    if cert.variable_powers.iter().all(Option::is_some) {
        cert.verdict = Verdict::Smooth;
    }
    Ok(cert)
}

/// Tries `primes` in order (or the admissible defaults when `None`) and
/// returns the first smooth certificate, else every certificate computed.
pub fn certify_smooth_any(
    f: &Polynomial,
    primes: Option<&[u32]>,
) -> Result<Result<SmoothnessCertificate, Vec<SmoothnessCertificate>>, SmoothError> {
    let list: Vec<u32> = match primes {
        Some(ps) => ps.to_vec(),
        None => DEFAULT_PRIMES
            .iter()
            .copied()
            .filter(|&p| admissibility(p, f).is_ok())
            .collect(),
    };
    let mut tried = Vec::new();
    for p in list {
        let cert = certify_smooth(f, p)?;
        if cert.verdict.is_smooth() {
            return Ok(Ok(cert));
        }
        tried.push(cert);
    }
    Ok(Err(tried))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::parse_polynomial;
    use std::collections::HashMap;

    fn poly(text: &str) -> Polynomial {
        parse_polynomial(text, 6, &HashMap::new()).unwrap()
    }

    const FERMAT: &str = "x1^3+x2^3+x3^3+x4^3+x5^3+x6^3";

    #[test]
    fn fermat_reduces_to_ones_mod_two() {
        let (g, ctx) = reduce_mod(&poly(FERMAT), 2).unwrap();
        assert_eq!(ctx.size(), 2);
        assert_eq!(g.terms().len(), 6);
        assert!(g.terms().iter().all(|&(_, c)| c == ctx.one()));
    }

    #[test]
    fn omega_coefficient_needs_f4() {
        let (g, ctx) = reduce_mod(&poly("E(3)*x1^3 + x2^3"), 2).unwrap();
        assert_eq!(ctx.degree(), 2);
        let w = ctx.zeta();
        assert_eq!(ctx.pow(w, 3), ctx.one());
        assert_ne!(w, ctx.one());
        assert!(g.terms().iter().any(|&(_, c)| c == w));
    }

    #[test]
    fn denominators_and_ramification_are_rejected() {
        let err = reduce_mod(&poly("x1^3/3 + x2^3"), 3).unwrap_err();
        match err {
            SmoothError::Inadmissible { p, suggestions, .. } => {
                assert_eq!(p, 3);
                assert!(!suggestions.contains(&3));
                assert!(suggestions.contains(&2));
            }
            e => panic!("{e}"),
        }
        assert!(matches!(
            reduce_mod(&poly("E(4)*x1^3"), 2),
            Err(SmoothError::Inadmissible { .. })
        ));
    }

    #[test]
    fn fermat_is_smooth_mod_two() {
        let cert = certify_smooth(&poly(FERMAT), 2).unwrap();
        assert_eq!(cert.verdict, Verdict::Smooth);
        let mut leads = cert.groebner_leading_terms.clone();
        leads.sort();
        let mut want: Vec<Vec<u8>> = (0..6)
            .map(|i| {
                let mut e = vec![0; 6];
                e[i] = 2;
                e
            })
            .collect();
        want.sort();
        assert_eq!(leads, want);
        assert_eq!(cert.variable_powers, vec![Some(2); 6]);
    }

    #[test]
    fn cone_over_conic_is_singular() {
        let cert = certify_smooth(&poly("x1^3 + x2^3 + x3^3"), 7).unwrap();
        match &cert.verdict {
            Verdict::SingularPointFound(pt) => assert!(cert.point_is_singular(pt)),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn degree_divisible_by_p_uses_the_form() {
        // mod 3 every partial of a Fermat cubic vanishes identically
        let cert = certify_smooth(&poly(FERMAT), 3).unwrap();
        assert_eq!(cert.jacobian.len(), 1);
        assert!(!cert.verdict.is_smooth());
    }
}
