//! Command-line front end for the cubicsym library.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cubicsym::catalog::{catalog_entry, reproduce, CatalogError, GroupSpec};
use cubicsym::group::{symplectic_check, FiniteMatrixGroup, LinearCharacter, Verdict};
use cubicsym::invariants::{
    basis_polynomials, molien_series, moduli_report, parse_polynomial, semi_invariant_space,
    MonomialBasis, Polynomial,
};
use cubicsym::smooth::{certify_smooth, certify_smooth_any};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Group(#[from] cubicsym::group::GroupError),
    #[error(transparent)]
    Spectrum(#[from] cubicsym::group::SpectrumError),
    #[error(transparent)]
    Invariant(#[from] cubicsym::invariants::InvariantError),
    #[error(transparent)]
    Poly(#[from] cubicsym::invariants::PolyError),
    #[error(transparent)]
    Smooth(#[from] cubicsym::smooth::SmoothError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser)]
#[command(name = "cubicsym", version, about = "Symplectic group actions on cubic fourfolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a group: order, scalar subgroup, generator spectra.
    Generate {
        /// Group file, or the name of a catalog entry.
        group: String,
    },
    /// Classify every element against the symplectic normal forms.
    Symplectic {
        group: String,
        /// List every element instead of grouping by spectrum.
        #[arg(long)]
        elements: bool,
    },
    /// Print a basis of the semi-invariant forms of one degree.
    Invariants {
        group: String,
        #[arg(long = "char", default_value = "trivial")]
        character: String,
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Print the Molien series up to a degree.
    Molien {
        group: String,
        #[arg(long = "char", default_value = "trivial")]
        character: String,
        #[arg(long, default_value_t = 6)]
        degree: usize,
        /// Use the representation twisted by this character.
        #[arg(long)]
        twist: Option<String>,
    },
    /// Compare dim V3 - dim C with 20 - r(G).
    Moduli {
        group: String,
        #[arg(long = "char", default_value = "trivial")]
        character: String,
        /// Rank r(G); read from the catalog when omitted.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Certify smoothness of a cubic by a Groebner basis over a finite field.
    Smooth {
        /// Prime to reduce at; the default list is tried when omitted.
        #[arg(long)]
        prime: Option<u32>,
        /// File with optional `let` lines and one form.
        #[arg(long)]
        poly: PathBuf,
    },
    /// Run the catalog regression harness.
    Reproduce {
        #[arg(long, conflicts_with = "all")]
        entry: Vec<String>,
        #[arg(long)]
        all: bool,
        /// Emit key=value lines instead of columns.
        #[arg(long)]
        porcelain: bool,
    },
}

/// A group spec together with the rank recorded in its catalog entry.
struct Loaded {
    spec: GroupSpec,
    r_g: Option<usize>,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load(arg: &str) -> Result<Loaded, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(Loaded {
            spec: GroupSpec::parse(&read(path)?)?,
            r_g: None,
        });
    }
    let entry = catalog_entry(arg.trim_start_matches("catalog/"))?;
    Ok(Loaded {
        spec: entry.spec,
        r_g: entry.expect.r_g,
    })
}

fn group_and_character(
    spec: &GroupSpec,
    name: &str,
) -> Result<(FiniteMatrixGroup, LinearCharacter), CliError> {
    let group = spec.build_group()?;
    let chi = spec.character(&group, name)?;
    Ok((group, chi))
}

fn cmd_generate(arg: &str) -> Result<(), CliError> {
    let spec = load(arg)?.spec;
    let group = spec.build_group()?;
    println!("name: {}", spec.name());
    println!("degree: {}", group.degree());
    println!("order: {}", group.order());
    println!("conductor: {}", group.conductor());
    let scalars: Vec<String> = group.scalar_values().iter().map(|z| z.to_string()).collect();
    println!("scalars: {} [{}]", scalars.len(), scalars.join(", "));
    println!("scalar_lemma_d3: {}", group.validate_scalar_lemma(3));
    for (s, name) in spec.generator_names().iter().enumerate() {
        let i = group.generator_index(s);
        println!(
            "generator {name}: order {} projective {} spectrum {}",
            group.element_order(i),
            group.projective_order(i),
            group.spectrum(i)?
        );
    }
    Ok(())
}

fn cmd_symplectic(arg: &str, each: bool) -> Result<bool, CliError> {
    let group = load(arg)?.spec.build_group()?;
    let report = symplectic_check(&group)?;
    if each {
        for (i, e) in report.elements.iter().enumerate() {
            println!(
                "{i} projective {} spectrum {} |Tr|^2 {} {}",
                e.projective_order, e.spectrum, e.trace_abs_sq, e.verdict
            );
        }
    } else {
        // one line per (projective order, spectrum, verdict)
        let mut classes: BTreeMap<(usize, String, String), usize> = BTreeMap::new();
        for e in &report.elements {
            let key = (e.projective_order, e.spectrum.to_string(), e.verdict.to_string());
            *classes.entry(key).or_default() += 1;
        }
        for ((n, s, v), count) in classes {
            println!("projective {n} count {count} spectrum {s} {v}");
        }
    }
    let fails = report.with_verdict(Verdict::Fail).len();
    let special = report.with_verdict(Verdict::SpecialOrder).len();
    println!("elements: {}", report.elements.len());
    println!("fail: {fails}");
    println!("special-order: {special}");
    println!("overall: {}", if report.overall { "pass" } else { "fail" });
    Ok(report.overall)
}

fn cmd_invariants(arg: &str, character: &str, degree: u32) -> Result<(), CliError> {
    let spec = load(arg)?.spec;
    let (group, chi) = group_and_character(&spec, character)?;
    let space = semi_invariant_space(&group, &chi, degree)?;
    let basis = MonomialBasis::new(group.degree(), degree);
    println!("# dim {}", space.dim());
    for f in basis_polynomials(&space, &basis) {
        println!("{f}");
    }
    Ok(())
}

fn cmd_molien(arg: &str, character: &str, degree: usize, twist: Option<&str>) -> Result<(), CliError> {
    let spec = load(arg)?.spec;
    let group = match twist {
        Some(t) => spec.twisted_group(t)?,
        None => spec.build_group()?,
    };
    let chi = if twist.is_some() && character == "trivial" {
        LinearCharacter::trivial(&group)
    } else if twist.is_some() {
        return Err(CliError::Usage("--twist combines only with the trivial character".into()));
    } else {
        spec.character(&group, character)?
    };
    let series = molien_series(&group, &chi, degree)?;
    let coeffs: Vec<String> = series.integers().iter().map(|c| c.to_string()).collect();
    println!("order: {}", group.order());
    println!("coefficients: {}", coeffs.join(","));
    println!("series: {series}");
    Ok(())
}

fn cmd_moduli(arg: &str, character: &str, r: Option<usize>) -> Result<bool, CliError> {
    let loaded = load(arg)?;
    let r_g = r
        .or(loaded.r_g)
        .ok_or_else(|| CliError::Usage("no r(G) recorded for this group; pass --r".into()))?;
    let (group, chi) = group_and_character(&loaded.spec, character)?;
    let report = moduli_report(&group, &chi, r_g)?;
    println!("{report}");
    Ok(report.identity_holds)
}

/// Reads `let name = form` lines, `#` comments, and one form spread over the
/// remaining lines.
fn read_form(text: &str) -> Result<Polynomial, CliError> {
    let nvars = max_variable(text).max(1);
    let mut env: HashMap<String, Polynomial> = HashMap::new();
    let mut body = String::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if let Some(rest) = line.strip_prefix("let ") {
            let (name, expr) = rest
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("malformed let: {line}")))?;
            let p = parse_polynomial(expr, nvars, &env)?;
            env.insert(name.trim().to_string(), p);
        } else if !line.is_empty() {
            body.push(' ');
            body.push_str(line);
        }
    }
    if body.trim().is_empty() {
        return Err(CliError::Usage("no form in file".into()));
    }
    Ok(parse_polynomial(&body, nvars, &env)?)
}

/// Largest `k` with `xk` appearing as a variable.
fn max_variable(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut best = 0;
    for (i, &b) in bytes.iter().enumerate() {
        let boundary = i == 0 || !(bytes[i - 1].is_ascii_alphanumeric() || bytes[i - 1] == b'_');
        if b == b'x' && boundary {
            let digits: String = text[i + 1..].chars().take_while(char::is_ascii_digit).collect();
            if let Ok(k) = digits.parse::<usize>() {
                best = best.max(k);
            }
        }
    }
    best
}

fn cmd_smooth(prime: Option<u32>, path: &Path) -> Result<bool, CliError> {
    let f = read_form(&read(path)?)?;
    match prime {
        Some(p) => {
            let cert = certify_smooth(&f, p)?;
            print!("{cert}");
            Ok(cert.verdict.is_smooth())
        }
        None => match certify_smooth_any(&f, None)? {
            Ok(cert) => {
                print!("{cert}");
                Ok(true)
            }
            Err(tried) => {
                for cert in &tried {
                    print!("{cert}");
                }
                if tried.is_empty() {
                    println!("verdict: no admissible prime in the default list");
                }
                Ok(false)
            }
        },
    }
}

fn cmd_reproduce(entries: &[String], all: bool, porcelain: bool) -> Result<bool, CliError> {
    if !all && entries.is_empty() {
        return Err(CliError::Usage("pass --entry NAME or --all".into()));
    }
    let names: Vec<&str> = entries.iter().map(String::as_str).collect();
    let report = reproduce(&names, |name, secs| {
        eprintln!("{name}: {secs:.2}s");
    })?;
    let mut out = std::io::stdout().lock();
    let mut text = if porcelain {
        report.porcelain()
    } else {
        report.to_string()
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    // a closed pipe is not an error worth reporting
    let _ = out.write_all(text.as_bytes());
    Ok(report.is_green())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Generate { group } => cmd_generate(&group).map(|_| true),
        Command::Symplectic { group, elements } => cmd_symplectic(&group, elements),
        Command::Invariants {
            group,
            character,
            degree,
        } => cmd_invariants(&group, &character, degree).map(|_| true),
        Command::Molien {
            group,
            character,
            degree,
            twist,
        } => cmd_molien(&group, &character, degree, twist.as_deref()).map(|_| true),
        Command::Moduli { group, character, r } => cmd_moduli(&group, &character, r),
        Command::Smooth { prime, poly } => cmd_smooth(prime, &poly),
        Command::Reproduce {
            entry,
            all,
            porcelain,
        } => cmd_reproduce(&entry, all, porcelain),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
