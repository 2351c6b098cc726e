//! Named diagram codes.
//!
//! The built-in catalog holds the prime classical links up to seven
//! crossings, the knots `3_1` and `4_1`, and the virtual knot `2.1`. A bare
//! link name such as `L6n1` uses the orientation KnotInfo lists first; every
//! KnotInfo orientation is also available as e.g. `L6n1{0,1}`.

use serde::{Deserialize, Serialize};

use crate::diagram::{parse_gauss, parse_pd, LinkDiagram};
use crate::error::{Error, Result};

const BUILTIN: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeFormat {
    Pd,
    Gauss,
}

impl std::str::FromStr for CodeFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pd" => Ok(CodeFormat::Pd),
            "gauss" => Ok(CodeFormat::Gauss),
            other => Err(Error::Parse(format!("unknown diagram format '{other}'"))),
        }
    }
}

pub fn parse_diagram(format: CodeFormat, code: &str) -> Result<LinkDiagram> {
    match format {
        CodeFormat::Pd => parse_pd(code),
        CodeFormat::Gauss => parse_gauss(code),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub format: CodeFormat,
    pub code: String,
}

impl CatalogEntry {
    pub fn diagram(&self) -> Result<LinkDiagram> {
        parse_diagram(self.format, &self.code)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn builtin() -> Catalog {
        Catalog::from_json(BUILTIN).expect("built-in catalog is valid")
    }

    pub fn from_json(text: &str) -> Result<Catalog> {
        let entries: Vec<CatalogEntry> = serde_json::from_str(text)?;
        Ok(Catalog { entries })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.name.as_str()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::NotInCatalog(name.to_string()))
    }

    pub fn diagram(&self, name: &str) -> Result<LinkDiagram> {
        self.get(name)?.diagram()
    }

    /// The classical links `L2a1` .. `L7n2`, default orientation.
    pub fn classical_links(&self) -> Vec<&str> {
        self.names().into_iter().filter(|n| n.starts_with('L') && !n.contains('{')).collect()
    }

    /// Names of the other listed orientations of `name`.
    pub fn orientations(&self, name: &str) -> Vec<&str> {
        let prefix = format!("{name}{{");
        self.names().into_iter().filter(|n| n.starts_with(&prefix)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_parses() {
        let c = Catalog::builtin();
        assert_eq!(c.classical_links().len(), 18);
        for e in c.entries() {
            let d = e.diagram().unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert!(d.validate().is_empty());
        }
    }

    #[test]
    fn component_counts() {
        let c = Catalog::builtin();
        assert_eq!(c.diagram("L2a1").unwrap().component_count(), 2);
        assert_eq!(c.diagram("L6a4").unwrap().component_count(), 3);
        assert_eq!(c.diagram("3_1").unwrap().component_count(), 1);
        assert_eq!(c.orientations("L6n1").len(), 4);
        assert_eq!(c.diagram("L7a6").unwrap(), c.diagram("L7a6{0}").unwrap());
        let v = c.diagram("2.1").unwrap();
        assert_eq!((v.crossing_count(), v.semiarc_count()), (2, 4));
    }

    #[test]
    fn unknown_name() {
        let err = Catalog::builtin().diagram("9_42").unwrap_err();
        assert_eq!(err.to_string(), "9_42 not in catalog");
    }
}
