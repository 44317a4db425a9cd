//! Group files: TOML documents with 1-based cycle strings.
//!
//! ```toml
//! name = "s3"
//! degree = 3
//! generators = ["(1,2,3)", "(1,2)"]
//! comment = "symmetric group on three points"
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::group::PermGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn from_group(name: &str, group: &PermGroup, comment: Option<String>) -> Self {
        GroupFile {
            name: name.to_string(),
            degree: group.degree(),
            generators: group
                .generators()
                .iter()
                .map(|g| g.to_cycle_string())
                .collect(),
            comment,
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("group file serializes")
    }

    pub fn build(&self) -> Result<PermGroup> {
        let gens = self
            .generators
            .iter()
            .map(|s| Permutation::parse_cycles(self.degree, s))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(self.degree, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_build_write() {
        let text = "name = \"s3\"\ndegree = 3\ngenerators = [\"(1,2,3)\", \" (1, 2) \"]\n";
        let file = GroupFile::parse(text).unwrap();
        let g = file.build().unwrap();
        assert_eq!(g.order(), 6);
        let again = GroupFile::parse(&GroupFile::from_group("s3", &g, None).to_toml()).unwrap();
        assert_eq!(again.build().unwrap().order(), 6);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(GroupFile::parse("name = \"x\"\ndegree = 3\n").is_err());
        let bad = GroupFile::parse("name = \"x\"\ndegree = 3\ngenerators = [\"(1,5)\"]\n").unwrap();
        assert!(matches!(bad.build(), Err(Error::MalformedInput(_))));
    }
}
