//! The reproduction harness: recompute every expected value of a catalog
//! entry and tag each row.

use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use super::expect::{Check, ExpectedSymplectic};
use super::index::{catalog_entry, CatalogEntry, ENTRIES};
use super::CatalogError;
use crate::cyclo::Cyclotomic;
use crate::group::{
    classify_element, eigenvalue_multiplicities, symplectic_check, FiniteMatrixGroup,
    LinearCharacter, Verdict as ElementVerdict,
};
use crate::invariants::{
    check_semi_invariance, molien_series, span_of, InvariantError, ModuliReport, MonomialBasis, Polynomial,
    semi_invariant_space,
};
use crate::linalg::{commutant_dimension, Matrix, Subspace};
use crate::smooth::{certify_smooth, certify_smooth_any, Verdict as SmoothVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "PAPER-MATCH",
            Status::Mismatch => "MISMATCH",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ReproRow {
    pub entry: String,
    /// Short name of the quantity checked.
    pub field: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    /// The directive (or file section) the expectation came from.
    pub source: String,
}

#[derive(Debug, Clone, Default)]
pub struct ReproReport {
    pub rows: Vec<ReproRow>,
}

impl ReproReport {
    pub fn mismatches(&self) -> usize {
        self.rows.iter().filter(|r| r.status == Status::Mismatch).count()
    }

    pub fn is_green(&self) -> bool {
        self.mismatches() == 0
    }

    pub fn extend(&mut self, other: ReproReport) {
        self.rows.extend(other.rows);
    }

    /// One line of space-separated `key=value` pairs per row; spaces inside
    /// a field name become `:` and inside values `_`.
    pub fn porcelain(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&format!(
                "entry={} field={} status={} expected={} computed={}\n",
                r.entry,
                r.field.replace(' ', ":"),
                r.status,
                r.expected.replace(' ', "_"),
                r.computed.replace(' ', "_")
            ));
        }
        out
    }
}

impl fmt::Display for ReproReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w_entry = self.rows.iter().map(|r| r.entry.len()).max().unwrap_or(5).max(5);
        let w_field = self.rows.iter().map(|r| r.field.len()).max().unwrap_or(5).max(5);
        for r in &self.rows {
            writeln!(
                f,
                "{:<11} {:<we$} {:<wf$} expected {} / computed {}  [{}]",
                r.status.to_string(),
                r.entry,
                r.field,
                r.expected,
                r.computed,
                r.source,
                we = w_entry,
                wf = w_field
            )?;
        }
        write!(
            f,
            "{} rows, {} mismatches",
            self.rows.len(),
            self.mismatches()
        )
    }
}

/// Computed facts shared between checks of one entry.
struct Context<'a> {
    entry: &'a CatalogEntry,
    group: FiniteMatrixGroup,
    env: HashMap<String, Polynomial>,
    v3: HashMap<String, Result<Subspace, String>>,
    dim_c: Option<Result<usize, String>>,
}

impl<'a> Context<'a> {
    fn character(&self, chi: &str) -> Result<LinearCharacter, String> {
        self.entry
            .spec
            .character(&self.group, chi)
            .map_err(|e| e.to_string())
    }

    fn v3(&mut self, chi: &str) -> Result<Subspace, String> {
        if !self.v3.contains_key(chi) {
            let r = self.character(chi).and_then(|c| match semi_invariant_space(&self.group, &c, 3) {
                Ok(s) => Ok(s),
                // a scalar acting by the wrong value kills every cubic
                Err(InvariantError::ScalarLemma { .. }) => {
                    Ok(Subspace::zero(MonomialBasis::new(self.group.degree(), 3).len()))
                }
                Err(e) => Err(e.to_string()),
            });
            self.v3.insert(chi.to_string(), r);
        }
        self.v3[chi].clone()
    }

    fn dim_c(&mut self) -> Result<usize, String> {
        if self.dim_c.is_none() {
            let r = commutant_dimension(self.group.generators(), self.group.degree()).map_err(|e| e.to_string());
            self.dim_c = Some(r);
        }
        self.dim_c.clone().unwrap()
    }

    /// A named form restricted to the representation's coordinates.
    fn form(&self, name: &str) -> Result<Polynomial, String> {
        let f = self
            .env
            .get(name)
            .ok_or_else(|| format!("unknown form {name}"))?;
        self.entry.spec.restrict(f).map_err(|e| e.to_string())
    }

    fn matrix(&self, name: &str) -> Result<Matrix, String> {
        self.entry.spec.matrix(name).map_err(|e| e.to_string())
    }

    fn twisted_group(&self, chi: &str) -> Result<FiniteMatrixGroup, String> {
        self.entry.spec.twisted_group(chi).map_err(|e| e.to_string())
    }
}

fn molien_coeffs(group: &FiniteMatrixGroup, chi: &LinearCharacter, len: usize) -> Result<Vec<i64>, String> {
    molien_series(group, chi, len.saturating_sub(1))
        .map(|m| m.integers())
        .map_err(|e| e.to_string())
}

fn list(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Multiset equality of cyclotomic values.
fn same_multiset(a: &[Cyclotomic], b: &[Cyclotomic]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        match (0..b.len()).find(|&j| !used[j] && b[j] == *x) {
            Some(j) => {
                used[j] = true;
                true
            }
            None => false,
        }
    })
}

fn row(entry: &str, field: impl Into<String>, expected: impl Into<String>, computed: Result<String, String>, ok: impl FnOnce(&str) -> bool, source: &str) -> ReproRow {
    let expected = expected.into();
    let (computed, status) = match computed {
        Ok(c) => {
            let s = if ok(&c) { Status::Match } else { Status::Mismatch };
            (c, s)
        }
        Err(e) => (format!("error: {e}"), Status::Mismatch),
    };
    ReproRow {
        entry: entry.to_string(),
        field: field.into(),
        expected,
        computed,
        status,
        source: source.to_string(),
    }
}

/// Runs every expectation of one entry.
pub fn reproduce_entry(entry: &CatalogEntry) -> ReproReport {
    let name = entry.dir;
    let mut rows = Vec::new();
    let group = match entry.spec.build_group() {
        Ok(g) => g,
        Err(e) => {
            rows.push(row(name, "closure", "finite group", Err(e.to_string()), |_| false, "group.txt"));
            return ReproReport { rows };
        }
    };
    let env = match entry.expect.bindings(&entry.spec) {
        Ok(env) => env,
        Err(e) => {
            rows.push(row(name, "forms", "parse", Err(e.to_string()), |_| false, "expect.txt"));
            return ReproReport { rows };
        }
    };
    let mut cx = Context {
        entry,
        group,
        env,
        v3: HashMap::new(),
        dim_c: None,
    };
    rows.push(row(
        name,
        "closure",
        "true",
        Ok(cx.group.verify_closure(64, 7).to_string()),
        |c| c == "true",
        "random products stay in the enumerated set",
    ));
    rows.push(row(
        name,
        "scalar_lemma(3)",
        "true",
        Ok(cx.group.validate_scalar_lemma(3).to_string()),
        |c| c == "true",
        "scalars act trivially on cubics",
    ));
    let mut symplectic = None;
    for line in &entry.expect.checks {
        let src = line.text.as_str();
        let r = match &line.check {
            Check::Order(n) => row(name, "order", n.to_string(), Ok(cx.group.order().to_string()), |c| c == n.to_string(), src),
            Check::Scalars(n) => {
                let k = cx.group.scalar_subgroup().len();
                row(name, "scalars", n.to_string(), Ok(k.to_string()), |c| c == n.to_string(), src)
            }
            Check::Symplectic(exp) => {
                if symplectic.is_none() {
                    symplectic = Some(symplectic_check(&cx.group).map_err(|e| e.to_string()));
                }
                let computed = symplectic.clone().unwrap().map(|rep| {
                    if !rep.overall {
                        let fails = rep.with_verdict(ElementVerdict::Fail).len();
                        format!("fail ({fails} elements)")
                    } else if rep.has_special_order() {
                        "special".to_string()
                    } else {
                        "pass".to_string()
                    }
                });
                let want = match exp {
                    ExpectedSymplectic::Pass => "pass",
                    ExpectedSymplectic::Special => "special",
                    ExpectedSymplectic::Fail => "fail",
                };
                row(name, "symplectic", want, computed, |c| c.split(' ').next() == Some(want), src)
            }
            Check::NonSymplectic(m) => {
                let computed = cx
                    .matrix(m)
                    .and_then(|a| classify_element(&a).map_err(|e| e.to_string()))
                    .map(|rep| rep.verdict.to_string());
                row(name, format!("nonsymplectic {m}"), "fail", computed, |c| c == "fail", src)
            }
            Check::DimV3 { chi, dim } => {
                let computed = cx.v3(chi).map(|s| s.dim().to_string());
                row(name, format!("dim_v3 {chi}"), dim.to_string(), computed, |c| c == dim.to_string(), src)
            }
            Check::DimC(n) => {
                let computed = cx.dim_c().map(|d| d.to_string());
                row(name, "dim_c", n.to_string(), computed, |c| c == n.to_string(), src)
            }
            Check::Identity { chi, holds } => {
                let computed = match (entry.expect.r_g, cx.v3(chi), cx.dim_c()) {
                    (None, _, _) => Err("no r declared".to_string()),
                    (_, Err(e), _) | (_, _, Err(e)) => Err(e),
                    (Some(r), Ok(v), Ok(c)) => {
                        let m = ModuliReport::from_dimensions(v.dim(), c, r);
                        Ok(format!(
                            "{} ({} - {} vs {})",
                            if m.identity_holds { "holds" } else { "fails" },
                            m.dim_v3,
                            m.dim_c,
                            20 - r as i64
                        ))
                    }
                };
                let want = if *holds { "holds" } else { "fails" };
                row(name, format!("identity {chi}"), want, computed, |c| c.starts_with(want), src)
            }
            Check::Molien { chi, coeffs } => {
                let computed = cx
                    .character(chi)
                    .and_then(|c| molien_coeffs(&cx.group, &c, coeffs.len()))
                    .map(|v| list(&v));
                row(name, format!("molien {chi}"), list(coeffs), computed, |c| c == list(coeffs), src)
            }
            Check::MolienTwist { chi, coeffs } => {
                let computed = cx.twisted_group(chi).and_then(|g| {
                    let triv = LinearCharacter::trivial(&g);
                    molien_coeffs(&g, &triv, coeffs.len()).map(|v| list(&v))
                });
                row(name, format!("molien_twist {chi}"), list(coeffs), computed, |c| c == list(coeffs), src)
            }
            Check::Invariant { chi, form } => {
                let computed = cx.form(form).and_then(|f| {
                    let c = cx.character(chi)?;
                    Ok(check_semi_invariance(&f, &cx.group, &c).to_string())
                });
                row(name, format!("invariant {chi} {form}"), "true", computed, |c| c == "true", src)
            }
            Check::SpanEqual { left, right } => {
                let computed = (|| {
                    let l = left.iter().map(|n| cx.form(n)).collect::<Result<Vec<_>, _>>()?;
                    let r = right.iter().map(|n| cx.form(n)).collect::<Result<Vec<_>, _>>()?;
                    let d = l.first().map_or(3, |p| p.degree());
                    let basis = MonomialBasis::new(cx.group.degree(), d);
                    let sl = span_of(&l, &basis).map_err(|e| e.to_string())?;
                    let sr = span_of(&r, &basis).map_err(|e| e.to_string())?;
                    Ok((sl == sr).to_string())
                })();
                row(name, "span_equal", "true", computed, |c| c == "true", src)
            }
            Check::Transform { form, matrix, factor } => {
                let computed = (|| {
                    let f = cx.form(form)?;
                    let a = cx.matrix(matrix)?;
                    let g = f.substitute(&a).map_err(|e| e.to_string())?;
                    Ok((g == f.scale(factor)).to_string())
                })();
                row(name, format!("transform {form} {matrix}"), "true", computed, |c| c == "true", src)
            }
            Check::Eigenvalues { matrix, values } => {
                let computed = cx
                    .matrix(matrix)
                    .and_then(|a| eigenvalue_multiplicities(&a).map_err(|e| e.to_string()))
                    .map(|s| {
                        let ev = s.eigenvalues();
                        let ok = same_multiset(&ev, values);
                        let shown: Vec<String> = ev.iter().map(|z| z.to_string()).collect();
                        format!("{} [{}]", ok, shown.join(","))
                    });
                let shown: Vec<String> = values.iter().map(|z| z.to_string()).collect();
                row(name, format!("eigenvalues {matrix}"), shown.join(","), computed, |c| c.starts_with("true"), src)
            }
            Check::Smooth { form, prime } => {
                let computed = cx.form(form).and_then(|f| match prime {
                    Some(p) => certify_smooth(&f, *p)
                        .map_err(|e| e.to_string())
                        .map(|c| format!("{} at p={}", verdict_name(&c.verdict), p)),
                    None => certify_smooth_any(&f, None).map_err(|e| e.to_string()).map(|r| match r {
                        Ok(c) => format!("smooth at p={}", c.prime),
                        Err(tried) => {
                            let ps: Vec<String> = tried.iter().map(|c| c.prime.to_string()).collect();
                            format!("not certified at p={}", ps.join(","))
                        }
                    }),
                });
                row(name, format!("smooth {form}"), "smooth", computed, |c| c.starts_with("smooth"), src)
            }
            Check::Singular { form, prime, point } => {
                let computed = cx.form(form).and_then(|f| {
                    let cert = certify_smooth(&f, *prime).map_err(|e| e.to_string())?;
                    match &cert.verdict {
                        SmoothVerdict::SingularPointFound(pt) => {
                            let shown = cert.format_point(pt);
                            let ok = match point {
                                None => true,
                                Some(want) => {
                                    let ctx = &cert.context;
                                    want.len() == pt.len()
                                        && want.iter().zip(pt).all(|(w, x)| ctx.from_int(*w) == *x)
                                }
                            };
                            Ok(format!("{} {}", if ok { "singular" } else { "other-point" }, shown))
                        }
                        v => Ok(verdict_name(v).to_string()),
                    }
                });
                let want = match point {
                    Some(p) => format!(
                        "singular [{}]",
                        p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(":")
                    ),
                    None => "singular".to_string(),
                };
                row(name, format!("singular {form} p={prime}"), want, computed, |c| c.starts_with("singular"), src)
            }
            Check::Skip { field, reason } => ReproRow {
                entry: name.to_string(),
                field: field.clone(),
                expected: "-".into(),
                computed: reason.clone(),
                status: Status::Skipped,
                source: src.to_string(),
            },
        };
        rows.push(r);
    }
    let sections: Vec<String> = entry.basis.sections.iter().map(|(c, _)| c.clone()).collect();
    for chi in sections {
        let computed = (|| {
            let forms = entry
                .basis
                .forms(&chi, &entry.spec, &cx.env)
                .map_err(|e| e.to_string())?
                .unwrap_or_default();
            let basis = MonomialBasis::new(cx.group.degree(), 3);
            let given = span_of(&forms, &basis).map_err(|e| e.to_string())?;
            let space = cx.v3(&chi)?;
            Ok(format!("{} (dim {} vs {})", given == space, given.dim(), space.dim()))
        })();
        rows.push(row(name, format!("basis {chi}"), "span equal", computed, |c| c.starts_with("true"), "basis.txt"));
    }
    ReproReport { rows }
}

fn verdict_name(v: &SmoothVerdict) -> &'static str {
    match v {
        SmoothVerdict::Smooth => "smooth",
        SmoothVerdict::SingularPointFound(_) => "singular",
        SmoothVerdict::Inconclusive => "inconclusive",
    }
}

/// Runs the harness on the named entries (all when empty), reporting
/// progress through `progress`.
pub fn reproduce(names: &[&str], mut progress: impl FnMut(&str, f64)) -> Result<ReproReport, CatalogError> {
    let mut report = ReproReport::default();
    let run = |entry: CatalogEntry, report: &mut ReproReport, progress: &mut dyn FnMut(&str, f64)| {
        let start = Instant::now();
        report.extend(reproduce_entry(&entry));
        progress(entry.dir, start.elapsed().as_secs_f64());
    };
    if names.is_empty() {
        for raw in ENTRIES {
            run(raw.parse()?, &mut report, &mut progress);
        }
    } else {
        for n in names {
            run(catalog_entry(n)?, &mut report, &mut progress);
        }
    }
    Ok(report)
}
