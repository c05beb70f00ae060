//! The group-input text format.
//!
//! One directive per line; `#` starts a comment. Scalars use the cyclotomic
//! literal grammar (`E(n)`, `Sqrt(k)`, `i`, rationals, `+ - * / ^ ( )`).
//! Within a list of entries, whitespace separates items unless it is
//! inside parentheses.
//!
//! ```text
//! name 3.A7
//! about triple cover of A7 with its unique invariant cubic
//! degree 6                         # or: coordinates M, with relation lines
//! relation x1+x2+x3+x4+x5+x6+x7    # linear forms that vanish (needs coordinates)
//! let w = E(3)                     # named scalar
//! matrix a diag 1 1 w w w^2 w^2
//! matrix b rows 1/3                # optional prefactor; k rows of k entries follow
//!   -1 ...
//! matrix p perm (1,2,3)(4,5)       # (p x)_i = x_{σ(i)}, size = coordinates
//! matrix q images x2 x1 -x3 ...    # row i = coefficients of the i-th form
//! matrix s word a^2*(b*a^2*b^2*a)^2*a
//! matrix t blocks u u              # block diagonal
//! generators a b
//! character chi2 a=-1 b=1
//! limit 100000
//! ```
//!
//! With relations, every matrix of size `coordinates` is restricted to the
//! hyperplane model (see [`HyperplaneModel`]); words are evaluated before
//! restriction.

use std::collections::HashMap;

use super::hyperplane::HyperplaneModel;
use super::CatalogError;
use crate::cyclo::{parse_expression, Cyclotomic, ExprValue};
use crate::group::{build_character, generate_group, FiniteMatrixGroup, LinearCharacter};
use crate::invariants::{parse_polynomial, Polynomial};
use crate::linalg::Matrix;

pub const DEFAULT_LIMIT: usize = 100_000;

/// A parsed group file.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    name: String,
    about: String,
    ambient: usize,
    model: HyperplaneModel,
    scalars: HashMap<String, Cyclotomic>,
    /// Named matrices in ambient coordinates.
    ambient_matrices: Vec<(String, Matrix)>,
    generator_names: Vec<String>,
    characters: Vec<(String, Vec<Cyclotomic>)>,
    limit: usize,
}

type RawCharacter = (usize, String, Vec<(String, String)>);

fn format_err(line: usize, msg: impl Into<String>) -> CatalogError {
    CatalogError::Format {
        line,
        msg: msg.into(),
    }
}

/// Splits at whitespace outside parentheses.
pub fn split_top(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch.is_whitespace() && depth <= 0 {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Parses cycle notation like `(1,2,3)(4,5)` into the 0-based map
/// `i ↦ σ(i)` on `size` points.
pub fn parse_cycles(text: &str, size: usize) -> Result<Vec<usize>, String> {
    let mut perm: Vec<usize> = (0..size).collect();
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(format!("expected '(' in cycle notation at {rest:?}"));
        };
        let close = body.find(')').ok_or("unclosed cycle")?;
        let inner = &body[..close];
        rest = &body[close + 1..];
        if inner.is_empty() {
            continue;
        }
        let pts = inner
            .split(',')
            .map(|t| {
                let k: usize = t.parse().map_err(|_| format!("bad point {t:?}"))?;
                if k == 0 || k > size {
                    return Err(format!("point {k} outside 1..{size}"));
                }
                Ok(k - 1)
            })
            .collect::<Result<Vec<_>, String>>()?;
        for (idx, &p) in pts.iter().enumerate() {
            if perm[p] != p {
                return Err(format!("point {} repeated", p + 1));
            }
            perm[p] = pts[(idx + 1) % pts.len()];
        }
        let mut seen = pts.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != pts.len() {
            return Err("point repeated in cycle".into());
        }
    }
    Ok(perm)
}

/// Value type for matrix words: scalars and matrices mix freely.
#[derive(Clone)]
enum MatVal {
    Scalar(Cyclotomic),
    Mat(Matrix),
}

impl MatVal {
    fn combine(
        &self,
        other: &Self,
        f: impl Fn(&Matrix, &Matrix) -> Matrix,
        g: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic,
    ) -> Self {
        match (self, other) {
            (MatVal::Scalar(a), MatVal::Scalar(b)) => MatVal::Scalar(g(a, b)),
            (MatVal::Mat(a), MatVal::Mat(b)) => MatVal::Mat(f(a, b)),
            (MatVal::Scalar(a), MatVal::Mat(b)) => MatVal::Mat(f(&Matrix::scalar(b.rows(), a.clone()), b)),
            (MatVal::Mat(a), MatVal::Scalar(b)) => MatVal::Mat(f(a, &Matrix::scalar(a.rows(), b.clone()))),
        }
    }
}

impl ExprValue for MatVal {
    fn from_cyclotomic(c: Cyclotomic) -> Self {
        MatVal::Scalar(c)
    }
    fn variable(_name: &str) -> Option<Self> {
        None
    }
    fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b, |a, b| a + b)
    }
    fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b, |a, b| a - b)
    }
    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (MatVal::Scalar(a), MatVal::Mat(b)) | (MatVal::Mat(b), MatVal::Scalar(a)) => {
                MatVal::Mat(b.scale(a))
            }
            _ => self.combine(other, |a, b| a * b, |a, b| a * b),
        }
    }
    fn neg(&self) -> Self {
        match self {
            MatVal::Scalar(a) => MatVal::Scalar(-a),
            MatVal::Mat(m) => MatVal::Mat(m.scale(&Cyclotomic::from_int(-1))),
        }
    }
    fn div(&self, other: &Self) -> Result<Self, String> {
        let inv = other.pow(-1)?;
        Ok(self.mul(&inv))
    }
    fn pow(&self, e: i64) -> Result<Self, String> {
        match self {
            MatVal::Scalar(a) => a.pow(e).map(MatVal::Scalar).map_err(|e| e.to_string()),
            MatVal::Mat(m) => {
                let base = if e < 0 {
                    m.inverse().map_err(|e| e.to_string())?
                } else {
                    m.clone()
                };
                Ok(MatVal::Mat(base.pow(e.unsigned_abs())))
            }
        }
    }
}

struct Parser<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl GroupSpec {
    /// Parses a group file.
    pub fn parse(text: &str) -> Result<GroupSpec, CatalogError> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let mut p = Parser { lines, pos: 0 };
        let mut name = None;
        let mut about = String::new();
        let mut degree: Option<usize> = None;
        let mut coordinates: Option<usize> = None;
        let mut relations: Vec<(usize, String)> = Vec::new();
        let mut scalars: HashMap<String, Cyclotomic> = HashMap::new();
        let mut matrices: Vec<(String, Matrix)> = Vec::new();
        let mut generator_names: Vec<String> = Vec::new();
        let mut generators_line = 0;
        let mut matrix_lines: Vec<(String, usize)> = Vec::new();
        // (line, name, generator=value pairs)
        let mut raw_chars: Vec<RawCharacter> = Vec::new();
        let mut limit = DEFAULT_LIMIT;

        while p.pos < p.lines.len() {
            let (ln, line) = p.lines[p.pos];
            p.pos += 1;
            let (key, rest) = match line.split_once(char::is_whitespace) {
                Some((k, r)) => (k, r.trim()),
                None => (line, ""),
            };
            match key {
                "name" => name = Some(rest.to_string()),
                "about" => about = rest.to_string(),
                "degree" => {
                    degree = Some(rest.parse().map_err(|_| format_err(ln, "degree must be an integer"))?)
                }
                "coordinates" => {
                    coordinates =
                        Some(rest.parse().map_err(|_| format_err(ln, "coordinates must be an integer"))?)
                }
                "relation" => relations.push((ln, rest.to_string())),
                "limit" => limit = rest.parse().map_err(|_| format_err(ln, "limit must be an integer"))?,
                "let" => {
                    let (n, v) = rest
                        .split_once('=')
                        .ok_or_else(|| format_err(ln, "expected 'let NAME = VALUE'"))?;
                    let n = n.trim();
                    check_ident(n).map_err(|m| format_err(ln, m))?;
                    let z = scalar(v.trim(), &scalars).map_err(|m| format_err(ln, m))?;
                    scalars.insert(n.to_string(), z);
                }
                "generators" => {
                    generators_line = ln;
                    generator_names = rest.split_whitespace().map(String::from).collect();
                }
                "character" => {
                    let mut parts = rest.split_whitespace();
                    let cname = parts
                        .next()
                        .ok_or_else(|| format_err(ln, "character needs a name"))?
                        .to_string();
                    let mut assigns = Vec::new();
                    for a in parts {
                        let (g, v) = a
                            .split_once('=')
                            .ok_or_else(|| format_err(ln, format!("expected GEN=VALUE, got {a:?}")))?;
                        assigns.push((g.to_string(), v.to_string()));
                    }
                    raw_chars.push((ln, cname, assigns));
                }
                "matrix" => {
                    let ambient = coordinates
                        .or(degree)
                        .ok_or_else(|| format_err(ln, "declare degree or coordinates before matrices"))?;
                    let (mname, m) = p.matrix(ln, rest, ambient, &scalars, &matrices)?;
                    if matrices.iter().any(|(n, _)| *n == mname) {
                        return Err(format_err(ln, format!("matrix {mname} defined twice")));
                    }
                    matrix_lines.push((mname.clone(), ln));
                    matrices.push((mname, m));
                }
                other => return Err(format_err(ln, format!("unknown directive {other:?}"))),
            }
        }

        let name = name.ok_or_else(|| format_err(0, "missing 'name'"))?;
        let ambient = coordinates
            .or(degree)
            .ok_or_else(|| format_err(0, "missing 'degree'"))?;
        let mut rel_vectors = Vec::new();
        for (ln, r) in &relations {
            if coordinates.is_none() {
                return Err(format_err(*ln, "relations need 'coordinates'"));
            }
            let poly = parse_scalar_poly(r, ambient, &scalars).map_err(|m| format_err(*ln, m))?;
            let v = linear_coefficients(&poly, ambient)
                .ok_or_else(|| format_err(*ln, "relation must be a linear form"))?;
            rel_vectors.push(v);
        }
        let model = HyperplaneModel::new(ambient, &rel_vectors)?;
        if let Some(d) = degree {
            if coordinates.is_some() && d != model.dimension() {
                return Err(format_err(
                    0,
                    format!("degree {d} does not match the hyperplane dimension {}", model.dimension()),
                ));
            }
        }
        if generator_names.is_empty() {
            return Err(format_err(0, "missing 'generators'"));
        }
        for g in &generator_names {
            if !matrices.iter().any(|(n, _)| n == g) {
                return Err(format_err(generators_line, format!("unknown generator {g}")));
            }
        }
        let mut characters = Vec::new();
        for (ln, cname, assigns) in raw_chars {
            let mut vals = vec![None; generator_names.len()];
            for (g, v) in assigns {
                let idx = generator_names
                    .iter()
                    .position(|n| *n == g)
                    .ok_or_else(|| format_err(ln, format!("{g} is not a generator")))?;
                vals[idx] = Some(scalar(&v, &scalars).map_err(|m| format_err(ln, m))?);
            }
            let vals = vals
                .into_iter()
                .enumerate()
                .map(|(i, v)| v.ok_or_else(|| format_err(ln, format!("no value for {}", generator_names[i]))))
                .collect::<Result<Vec<_>, _>>()?;
            characters.push((cname, vals));
        }
        let spec = GroupSpec {
            name,
            about,
            ambient,
            model,
            scalars,
            ambient_matrices: matrices,
            generator_names,
            characters,
            limit,
        };
        for g in &spec.generator_names {
            let m = spec.matrix(g)?;
            if m.rows() != spec.degree() || m.cols() != spec.degree() {
                let ln = matrix_lines.iter().find(|(n, _)| n == g).map_or(0, |(_, l)| *l);
                return Err(format_err(ln, format!("generator {g} is not {0}x{0}", spec.degree())));
            }
        }
        Ok(spec)
    }

    /// Builds a spec directly from ambient permutation or linear generators.
    pub fn from_parts(
        name: &str,
        model: HyperplaneModel,
        generators: Vec<(String, Matrix)>,
    ) -> Result<GroupSpec, CatalogError> {
        let generator_names = generators.iter().map(|(n, _)| n.clone()).collect();
        let spec = GroupSpec {
            name: name.to_string(),
            about: String::new(),
            ambient: model.ambient(),
            model,
            scalars: HashMap::new(),
            ambient_matrices: generators,
            generator_names,
            characters: Vec::new(),
            limit: DEFAULT_LIMIT,
        };
        for g in &spec.generator_names {
            spec.matrix(g)?;
        }
        Ok(spec)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn about(&self) -> &str {
        &self.about
    }

    /// Dimension of the representation after any hyperplane restriction.
    pub fn degree(&self) -> usize {
        self.model.dimension()
    }

    /// Number of coordinates polynomials are written in.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn model(&self) -> &HyperplaneModel {
        &self.model
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn set_limit(&mut self, limit: usize) {
        self.limit = limit;
    }

    pub fn scalar(&self, name: &str) -> Option<&Cyclotomic> {
        self.scalars.get(name)
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generator_names
    }

    pub fn matrix_names(&self) -> Vec<&str> {
        self.ambient_matrices.iter().map(|(n, _)| n.as_str()).collect()
    }

    /// A named matrix in the coordinates of the representation.
    pub fn matrix(&self, name: &str) -> Result<Matrix, CatalogError> {
        let m = self
            .ambient_matrices
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| CatalogError::UnknownMatrix(name.to_string()))?;
        if m.rows() == self.ambient && self.ambient != self.degree() {
            Ok(self.model.reduce_matrix(m)?)
        } else {
            Ok(m.clone())
        }
    }

    pub fn generators(&self) -> Result<Vec<Matrix>, CatalogError> {
        self.generator_names.iter().map(|g| self.matrix(g)).collect()
    }

    pub fn build_group(&self) -> Result<FiniteMatrixGroup, CatalogError> {
        Ok(generate_group(&self.generators()?, self.limit)?)
    }

    pub fn character_names(&self) -> Vec<&str> {
        self.characters.iter().map(|(n, _)| n.as_str()).collect()
    }

    /// Generator values of a named character; `trivial` is always defined.
    pub fn character_values(&self, name: &str) -> Result<Vec<Cyclotomic>, CatalogError> {
        if let Some((_, v)) = self.characters.iter().find(|(n, _)| n == name) {
            return Ok(v.clone());
        }
        if name == "trivial" {
            return Ok(vec![Cyclotomic::one(); self.generator_names.len()]);
        }
        Err(CatalogError::UnknownCharacter(name.to_string()))
    }

    pub fn character(&self, group: &FiniteMatrixGroup, name: &str) -> Result<LinearCharacter, CatalogError> {
        Ok(build_character(group, &self.character_values(name)?)?)
    }

    /// The group generated by `χ(s)·s` over the generators `s`: the image of
    /// the twisted representation `ρ ⊗ χ`.
    pub fn twisted_group(&self, name: &str) -> Result<FiniteMatrixGroup, CatalogError> {
        let values = self.character_values(name)?;
        let gens: Vec<Matrix> = self
            .generators()?
            .iter()
            .zip(&values)
            .map(|(g, v)| g.scale(v))
            .collect();
        Ok(generate_group(&gens, self.limit)?)
    }

    /// Parses a form written in the file's coordinates and restricts it to
    /// the representation's coordinates.
    pub fn polynomial(
        &self,
        text: &str,
        bindings: &HashMap<String, Polynomial>,
    ) -> Result<Polynomial, CatalogError> {
        let mut all = bindings.clone();
        for (k, v) in &self.scalars {
            all.entry(k.clone())
                .or_insert_with(|| Polynomial::constant(self.ambient, v.clone()));
        }
        let p = parse_polynomial(text, self.ambient, &all)?;
        Ok(p)
    }

    /// Restriction of an ambient form to the representation's coordinates.
    pub fn restrict(&self, f: &Polynomial) -> Result<Polynomial, CatalogError> {
        if self.ambient == self.degree() {
            return Ok(f.with_nvars(self.ambient)?);
        }
        Ok(self.model.reduce_polynomial(f)?)
    }
}

fn check_ident(n: &str) -> Result<(), String> {
    let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !ok {
        return Err(format!("invalid name {n:?}"));
    }
    if n == "i" || n == "E" || n == "Sqrt" {
        return Err(format!("{n} is reserved"));
    }
    Ok(())
}

fn scalar(text: &str, scalars: &HashMap<String, Cyclotomic>) -> Result<Cyclotomic, String> {
    let lookup = |n: &str| scalars.get(n).cloned();
    parse_expression::<Cyclotomic>(text, &lookup).map_err(|e| e.to_string())
}

fn parse_scalar_poly(
    text: &str,
    nvars: usize,
    scalars: &HashMap<String, Cyclotomic>,
) -> Result<Polynomial, String> {
    let bindings: HashMap<String, Polynomial> = scalars
        .iter()
        .map(|(k, v)| (k.clone(), Polynomial::constant(nvars, v.clone())))
        .collect();
    parse_polynomial(text, nvars, &bindings).map_err(|e| e.to_string())
}

fn linear_coefficients(p: &Polynomial, nvars: usize) -> Option<Vec<Cyclotomic>> {
    let mut v = vec![Cyclotomic::zero(); nvars];
    for (e, c) in p.raw_terms() {
        let pos: Vec<usize> = e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| i).collect();
        if pos.len() != 1 || e[pos[0]] != 1 {
            return None;
        }
        v[pos[0]] = c.clone();
    }
    Some(v)
}

impl Parser<'_> {
    fn matrix(
        &mut self,
        ln: usize,
        rest: &str,
        ambient: usize,
        scalars: &HashMap<String, Cyclotomic>,
        defined: &[(String, Matrix)],
    ) -> Result<(String, Matrix), CatalogError> {
        let mut parts = rest.splitn(3, char::is_whitespace);
        let name = parts.next().unwrap_or("").to_string();
        check_ident(&name).map_err(|m| format_err(ln, m))?;
        let kind = parts.next().ok_or_else(|| format_err(ln, "matrix needs a kind"))?;
        let body = parts.next().unwrap_or("").trim();
        let err = |m: String| format_err(ln, format!("matrix {name}: {m}"));
        let m = match kind {
            "diag" => {
                let d = split_top(body)
                    .iter()
                    .map(|t| scalar(t, scalars))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(err)?;
                if d.is_empty() {
                    return Err(format_err(ln, "empty diagonal"));
                }
                Matrix::diagonal(&d)
            }
            "rows" => {
                let prefactor = if body.is_empty() {
                    Cyclotomic::one()
                } else {
                    scalar(body, scalars).map_err(err)?
                };
                let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
                loop {
                    let Some(&(rl, text)) = self.lines.get(self.pos) else {
                        return Err(format_err(ln, format!("matrix {name}: missing rows")));
                    };
                    self.pos += 1;
                    let row = split_top(text)
                        .iter()
                        .map(|t| scalar(t, scalars))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|m| format_err(rl, format!("matrix {name}: {m}")))?;
                    let width = rows.first().map_or(row.len(), |r| r.len());
                    if row.len() != width {
                        return Err(format_err(
                            rl,
                            format!("matrix {name}: row has {} entries, expected {width}", row.len()),
                        ));
                    }
                    rows.push(row);
                    if rows.len() == width {
                        break;
                    }
                }
                Matrix::from_rows(rows).unwrap().scale(&prefactor)
            }
            "perm" => Matrix::permutation(&parse_cycles(body, ambient).map_err(err)?),
            "images" => {
                let forms = split_top(body);
                if forms.len() != ambient {
                    return Err(err(format!("expected {ambient} images, got {}", forms.len())));
                }
                let mut rows = Vec::new();
                for f in &forms {
                    let p = parse_scalar_poly(f, ambient, scalars).map_err(&err)?;
                    rows.push(
                        linear_coefficients(&p, ambient)
                            .ok_or_else(|| err(format!("{f:?} is not a linear form")))?,
                    );
                }
                Matrix::from_rows(rows).unwrap()
            }
            "word" => {
                let lookup = |n: &str| {
                    defined
                        .iter()
                        .find(|(k, _)| k == n)
                        .map(|(_, m)| MatVal::Mat(m.clone()))
                        .or_else(|| scalars.get(n).map(|z| MatVal::Scalar(z.clone())))
                };
                match parse_expression::<MatVal>(body, &lookup).map_err(|e| err(e.to_string()))? {
                    MatVal::Mat(m) => m,
                    MatVal::Scalar(z) => Matrix::scalar(ambient, z),
                }
            }
            "blocks" => {
                let mut acc: Option<Matrix> = None;
                for b in body.split_whitespace() {
                    let m = defined
                        .iter()
                        .find(|(k, _)| k == b)
                        .map(|(_, m)| m.clone())
                        .ok_or_else(|| err(format!("unknown block {b}")))?;
                    acc = Some(match acc {
                        None => m,
                        Some(a) => a.direct_sum(&m),
                    });
                }
                acc.ok_or_else(|| err("no blocks".into()))?
            }
            other => return Err(err(format!("unknown kind {other:?}"))),
        };
        if !m.is_square() {
            return Err(err("not square".into()));
        }
        Ok((name, m))
    }
}
