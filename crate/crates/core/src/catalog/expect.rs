//! Expected values (`expect.txt`) and transcribed bases (`basis.txt`).
//!
//! `expect.txt` holds one directive per line:
//!
//! ```text
//! let f = x1^3 + x2^3            # named form in the file's coordinates
//! r 17                           # rank used by the moduli identity
//! order 8
//! scalars 1                      # size of the scalar subgroup
//! symplectic pass                # or: special, fail
//! nonsymplectic t                # named matrix that must be classified fail
//! dim_v3 trivial 8
//! dim_c 5
//! identity trivial holds         # or: fails
//! molien trivial 1,0,0,8
//! molien_twist chi2 1,0,2,0,7    # series of the twisted representation
//! invariant chi2 f               # f is a chi2-semi-invariant
//! span_equal F1 F2 = f g
//! transform F r -1               # F(r x) = -F(x)
//! eigenvalues r 1,1,-1,-1,i,-i
//! smooth f                       # or: smooth f 2
//! singular f 7 [1:1:1:1:1:1]     # point optional
//! skip dim_c reason text          # reported as SKIPPED
//! ```
//!
//! `basis.txt` has `[CHAR]` headers followed by one form per line; each
//! section must span the computed semi-invariant space.

use std::collections::HashMap;

use super::format::GroupSpec;
use super::CatalogError;
use crate::cyclo::{parse_cyclotomic, Cyclotomic};
use crate::invariants::Polynomial;

/// Expected overall symplectic verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectedSymplectic {
    Pass,
    Special,
    Fail,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Check {
    Order(usize),
    Scalars(usize),
    Symplectic(ExpectedSymplectic),
    NonSymplectic(String),
    DimV3 { chi: String, dim: usize },
    DimC(usize),
    Identity { chi: String, holds: bool },
    Molien { chi: String, coeffs: Vec<i64> },
    MolienTwist { chi: String, coeffs: Vec<i64> },
    Invariant { chi: String, form: String },
    SpanEqual { left: Vec<String>, right: Vec<String> },
    Transform { form: String, matrix: String, factor: Cyclotomic },
    Eigenvalues { matrix: String, values: Vec<Cyclotomic> },
    Smooth { form: String, prime: Option<u32> },
    Singular { form: String, prime: u32, point: Option<Vec<i64>> },
    /// A quantity deliberately left unchecked.
    Skip { field: String, reason: String },
}

/// A check with the source line it came from.
#[derive(Debug, Clone)]
pub struct ExpectLine {
    pub line: usize,
    pub text: String,
    pub check: Check,
}

#[derive(Debug, Clone, Default)]
pub struct Expectations {
    /// `let` bindings in file order.
    pub forms: Vec<(String, String)>,
    pub r_g: Option<usize>,
    pub checks: Vec<ExpectLine>,
}

/// `[CHAR]` sections of transcribed forms.
#[derive(Debug, Clone, Default)]
pub struct BasisFile {
    pub sections: Vec<(String, Vec<(usize, String)>)>,
}

fn err(line: usize, msg: impl Into<String>) -> CatalogError {
    CatalogError::Format {
        line,
        msg: msg.into(),
    }
}

fn int<T: std::str::FromStr>(line: usize, s: &str) -> Result<T, CatalogError> {
    s.trim()
        .parse()
        .map_err(|_| err(line, format!("expected an integer, got {s:?}")))
}

fn int_list(line: usize, s: &str) -> Result<Vec<i64>, CatalogError> {
    s.split(',').map(|x| int(line, x)).collect()
}

fn scalar(line: usize, s: &str) -> Result<Cyclotomic, CatalogError> {
    parse_cyclotomic(s.trim()).map_err(|e| err(line, e.to_string()))
}

fn words(s: &str) -> Vec<String> {
    s.split_whitespace().map(String::from).collect()
}

impl Expectations {
    pub fn parse(text: &str) -> Result<Expectations, CatalogError> {
        let mut out = Expectations::default();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = match line.split_once(char::is_whitespace) {
                Some((k, r)) => (k, r.trim()),
                None => (line, ""),
            };
            let w = words(rest);
            let need = |n: usize| {
                if w.len() < n {
                    Err(err(ln, format!("{key} needs {n} arguments")))
                } else {
                    Ok(())
                }
            };
            let check = match key {
                "let" => {
                    let (n, v) = rest
                        .split_once('=')
                        .ok_or_else(|| err(ln, "expected 'let NAME = FORM'"))?;
                    out.forms.push((n.trim().to_string(), v.trim().to_string()));
                    continue;
                }
                "r" => {
                    out.r_g = Some(int(ln, rest)?);
                    continue;
                }
                "order" => Check::Order(int(ln, rest)?),
                "scalars" => Check::Scalars(int(ln, rest)?),
                "symplectic" => Check::Symplectic(match rest {
                    "pass" => ExpectedSymplectic::Pass,
                    "special" => ExpectedSymplectic::Special,
                    "fail" => ExpectedSymplectic::Fail,
                    _ => return Err(err(ln, "symplectic expects pass, special or fail")),
                }),
                "nonsymplectic" => {
                    need(1)?;
                    Check::NonSymplectic(w[0].clone())
                }
                "dim_v3" => {
                    need(2)?;
                    Check::DimV3 {
                        chi: w[0].clone(),
                        dim: int(ln, &w[1])?,
                    }
                }
                "dim_c" => Check::DimC(int(ln, rest)?),
                "identity" => {
                    need(2)?;
                    let holds = match w[1].as_str() {
                        "holds" => true,
                        "fails" => false,
                        _ => return Err(err(ln, "identity expects holds or fails")),
                    };
                    Check::Identity {
                        chi: w[0].clone(),
                        holds,
                    }
                }
                "molien" | "molien_twist" => {
                    need(2)?;
                    let chi = w[0].clone();
                    let coeffs = int_list(ln, &w[1])?;
                    if key == "molien" {
                        Check::Molien { chi, coeffs }
                    } else {
                        Check::MolienTwist { chi, coeffs }
                    }
                }
                "invariant" => {
                    need(2)?;
                    Check::Invariant {
                        chi: w[0].clone(),
                        form: w[1].clone(),
                    }
                }
                "span_equal" => {
                    let (l, r) = rest
                        .split_once('=')
                        .ok_or_else(|| err(ln, "expected 'span_equal A B = C D'"))?;
                    Check::SpanEqual {
                        left: words(l),
                        right: words(r),
                    }
                }
                "transform" => {
                    need(3)?;
                    Check::Transform {
                        form: w[0].clone(),
                        matrix: w[1].clone(),
                        factor: scalar(ln, &w[2..].join(" "))?,
                    }
                }
                "eigenvalues" => {
                    need(2)?;
                    let values = w[1..]
                        .join(" ")
                        .split(',')
                        .map(|v| scalar(ln, v))
                        .collect::<Result<_, _>>()?;
                    Check::Eigenvalues {
                        matrix: w[0].clone(),
                        values,
                    }
                }
                "smooth" => {
                    need(1)?;
                    Check::Smooth {
                        form: w[0].clone(),
                        prime: w.get(1).map(|p| int(ln, p)).transpose()?,
                    }
                }
                "singular" => {
                    need(2)?;
                    let point = match w.get(2) {
                        None => None,
                        Some(pt) => {
                            let inner = pt
                                .strip_prefix('[')
                                .and_then(|s| s.strip_suffix(']'))
                                .ok_or_else(|| err(ln, "point must look like [a:b:...]"))?;
                            Some(inner.split(':').map(|x| int(ln, x)).collect::<Result<_, _>>()?)
                        }
                    };
                    Check::Singular {
                        form: w[0].clone(),
                        prime: int(ln, &w[1])?,
                        point,
                    }
                }
                "skip" => {
                    need(1)?;
                    Check::Skip {
                        field: w[0].clone(),
                        reason: w[1..].join(" "),
                    }
                }
                other => return Err(err(ln, format!("unknown directive {other:?}"))),
            };
            out.checks.push(ExpectLine {
                line: ln,
                text: line.to_string(),
                check,
            });
        }
        Ok(out)
    }

    /// Evaluates the `let` forms in order, in the ambient coordinates of `spec`.
    pub fn bindings(&self, spec: &GroupSpec) -> Result<HashMap<String, Polynomial>, CatalogError> {
        let mut env: HashMap<String, Polynomial> = HashMap::new();
        for (name, text) in &self.forms {
            let p = spec.polynomial(text, &env)?;
            env.insert(name.clone(), p);
        }
        Ok(env)
    }
}

impl BasisFile {
    pub fn parse(text: &str) -> Result<BasisFile, CatalogError> {
        let mut out = BasisFile::default();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            if let Some(h) = line.strip_prefix('[') {
                let name = h
                    .strip_suffix(']')
                    .ok_or_else(|| err(ln, "unterminated section header"))?;
                out.sections.push((name.trim().to_string(), Vec::new()));
                continue;
            }
            let sec = out
                .sections
                .last_mut()
                .ok_or_else(|| err(ln, "form before the first [CHAR] header"))?;
            sec.1.push((ln, line.to_string()));
        }
        Ok(out)
    }

    /// The forms of one section, parsed in the ambient coordinates of `spec`
    /// and restricted to the representation's coordinates.
    pub fn forms(
        &self,
        chi: &str,
        spec: &GroupSpec,
        env: &HashMap<String, Polynomial>,
    ) -> Result<Option<Vec<Polynomial>>, CatalogError> {
        let Some((_, lines)) = self.sections.iter().find(|(c, _)| c == chi) else {
            return Ok(None);
        };
        let mut out = Vec::new();
        for (ln, text) in lines {
            let p = spec
                .polynomial(text, env)
                .map_err(|e| err(*ln, e.to_string()))?;
            out.push(spec.restrict(&p)?);
        }
        Ok(Some(out))
    }
}
