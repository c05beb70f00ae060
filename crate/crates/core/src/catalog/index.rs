//! The bundled catalog, embedded at compile time.

use super::expect::{BasisFile, Expectations};
use super::format::GroupSpec;
use super::CatalogError;

/// Raw text of one catalog directory.
#[derive(Debug, Clone, Copy)]
pub struct RawEntry {
    pub dir: &'static str,
    pub group: &'static str,
    pub expect: &'static str,
    pub basis: &'static str,
}

macro_rules! entry {
    ($d:literal) => {
        RawEntry {
            dir: $d,
            group: include_str!(concat!("../../catalog/", $d, "/group.txt")),
            expect: include_str!(concat!("../../catalog/", $d, "/expect.txt")),
            basis: include_str!(concat!("../../catalog/", $d, "/basis.txt")),
        }
    };
}

/// Every entry, in directory-name order.
pub static ENTRIES: &[RawEntry] = &[
    entry!("3.A6"),
    entry!("3.A7"),
    entry!("3^1+4-2"),
    entry!("3^1+4-2.2"),
    entry!("3^1+4-2.2^2"),
    entry!("3^2.4-1"),
    entry!("3^2.4-2"),
    entry!("A33-1"),
    entry!("A33-2"),
    entry!("A35"),
    entry!("A4-1"),
    entry!("A4-2"),
    entry!("A43-1"),
    entry!("A43-2"),
    entry!("A5-1"),
    entry!("A5-2"),
    entry!("A5-rho3"),
    entry!("A6-1"),
    entry!("A7"),
    entry!("C2"),
    entry!("C2xC2"),
    entry!("C3-1"),
    entry!("C3-2"),
    entry!("C4"),
    entry!("D10"),
    entry!("D12-1"),
    entry!("D12-2"),
    entry!("D8"),
    entry!("F21"),
    entry!("Fermat"),
    entry!("Hol5"),
    entry!("L2-11"),
    entry!("L2-7"),
    entry!("M10"),
    entry!("M9"),
    entry!("N72"),
    entry!("Q8"),
    entry!("QD16"),
    entry!("S3"),
    entry!("S33"),
    entry!("S33-rho2"),
    entry!("S4-1"),
    entry!("S4-2"),
    entry!("S5-1"),
    entry!("S5-2"),
    entry!("T48"),
];

/// A parsed catalog entry.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub dir: &'static str,
    pub spec: GroupSpec,
    pub expect: Expectations,
    pub basis: BasisFile,
}

impl RawEntry {
    pub fn parse(&self) -> Result<CatalogEntry, CatalogError> {
        let ctx = |file: &str, e: CatalogError| match e {
            CatalogError::Format { line, msg } => CatalogError::Format {
                line,
                msg: format!("{}/{file}: {msg}", self.dir),
            },
            e => e,
        };
        Ok(CatalogEntry {
            dir: self.dir,
            spec: GroupSpec::parse(self.group).map_err(|e| ctx("group.txt", e))?,
            expect: Expectations::parse(self.expect).map_err(|e| ctx("expect.txt", e))?,
            basis: BasisFile::parse(self.basis).map_err(|e| ctx("basis.txt", e))?,
        })
    }
}

/// Directory names of all entries.
pub fn catalog_names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.dir).collect()
}

/// Looks an entry up by directory name or by its `name` directive.
pub fn catalog_entry(name: &str) -> Result<CatalogEntry, CatalogError> {
    if let Some(raw) = ENTRIES.iter().find(|e| e.dir == name) {
        return raw.parse();
    }
    for raw in ENTRIES {
        let entry = raw.parse()?;
        if entry.spec.name() == name {
            return Ok(entry);
        }
    }
    Err(CatalogError::UnknownEntry(name.to_string()))
}

/// The parsed group file of an entry.
pub fn catalog_get(name: &str) -> Result<GroupSpec, CatalogError> {
    Ok(catalog_entry(name)?.spec)
}
