//! Bundled example varieties and the tiny text format they are stored in.
//!
//! Entries are kept as equation strings so the same catalog can be realized
//! over ℚ or over a prime field on demand.

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::variety::Variety;

const BUILTIN: &str = include_str!("../catalog/varieties.cat");

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub ambient: usize,
    pub equations: Vec<String>,
}

impl CatalogEntry {
    /// Parse the stored equations over a concrete field.
    pub fn realize<F: Scalar>(&self, ctx: &F::Ctx) -> Result<Variety<F>> {
        let eqs: Vec<&str> = self.equations.iter().map(|s| s.as_str()).collect();
        Variety::from_strings(self.name.clone(), self.ambient, &eqs, ctx)
    }
}

/// Parse a catalog file: `variety <name>` / `ambient <N>` / one equation
/// per line / `end`, with `#` comments and blank lines ignored.
pub fn parse_catalog(src: &str) -> Result<Vec<CatalogEntry>> {
    let mut out: Vec<CatalogEntry> = Vec::new();
    let mut cur: Option<(String, Option<usize>, Vec<String>)> = None;
    for (lineno, raw) in src.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| Error::Parse {
            pos: lineno + 1,
            msg: msg.to_string(),
        };
        if let Some(name) = line.strip_prefix("variety ") {
            if cur.is_some() {
                return Err(bad("nested 'variety' block"));
            }
            let name = name.trim();
            if name.is_empty()
                || !name
                    .chars()
                    .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-')
            {
                return Err(bad("variety names are kebab-case"));
            }
            cur = Some((name.to_string(), None, Vec::new()));
        } else if let Some(n) = line.strip_prefix("ambient ") {
            let Some((_, ambient, _)) = cur.as_mut() else {
                return Err(bad("'ambient' outside a variety block"));
            };
            if ambient.is_some() {
                return Err(bad("duplicate 'ambient'"));
            }
            *ambient = Some(
                n.trim()
                    .parse::<usize>()
                    .map_err(|_| bad("ambient must be a small integer"))?,
            );
        } else if line == "end" {
            let Some((name, ambient, eqs)) = cur.take() else {
                return Err(bad("'end' outside a variety block"));
            };
            let ambient = ambient.ok_or_else(|| bad("block is missing 'ambient'"))?;
            if out.iter().any(|e| e.name == name) {
                return Err(bad("duplicate variety name"));
            }
            out.push(CatalogEntry {
                name,
                ambient,
                equations: eqs,
            });
        } else {
            let Some((_, ambient, eqs)) = cur.as_mut() else {
                return Err(bad("equation outside a variety block"));
            };
            if ambient.is_none() {
                return Err(bad("'ambient' must come before equations"));
            }
            eqs.push(line.to_string());
        }
    }
    if cur.is_some() {
        return Err(Error::Parse {
            pos: src.lines().count(),
            msg: "unterminated variety block".to_string(),
        });
    }
    Ok(out)
}

/// The entries bundled with the library.
pub fn builtin() -> Vec<CatalogEntry> {
    parse_catalog(BUILTIN).expect("bundled catalog must parse")
}

/// Look up a bundled entry by name.
pub fn find(name: &str) -> Option<CatalogEntry> {
    builtin().into_iter().find(|e| e.name == name)
}
