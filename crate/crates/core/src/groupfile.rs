//! Group files: TOML documents with `degree` and 1-indexed cycle-notation `generators`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::perm::Permutation;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u64>,
    pub generators: Vec<String>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let mut gf =
            Self::parse(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        if gf.name.is_none() {
            gf.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        }
        Ok(gf)
    }

    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .map(|g| Permutation::parse_cycles(g, self.degree, true))
            .collect()
    }

    /// Builds the group, checking the degree cap and any recorded order.
    pub fn to_handle(&self, caps: &Caps) -> Result<GroupHandle> {
        caps.check_degree(self.degree)?;
        let g = GroupHandle::new(self.degree, self.permutations()?)?;
        if let Some(o) = self.order {
            if g.order_u64() != Some(o) {
                return Err(Error::Data(format!(
                    "{}: recorded order {o} but generators give {}",
                    self.name.as_deref().unwrap_or("group"),
                    g.order()
                )));
            }
        }
        Ok(g)
    }

    pub fn from_handle(name: Option<&str>, g: &GroupHandle) -> Self {
        GroupFile {
            name: name.map(str::to_string),
            degree: g.degree(),
            order: g.order_u64(),
            generators: g
                .generators()
                .iter()
                .map(|p| p.to_cycle_string(true))
                .collect(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("group file serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_build() {
        let gf =
            GroupFile::parse("degree = 5\ngenerators = [\"(1 2)\", \"(1 2 3 4 5)\"]\n").unwrap();
        let g = gf.to_handle(&Caps::default()).unwrap();
        assert_eq!(g.order_u64(), Some(120));
        let back = GroupFile::parse(&GroupFile::from_handle(Some("S5"), &g).to_toml()).unwrap();
        assert_eq!(
            back.to_handle(&Caps::default()).unwrap().order_u64(),
            Some(120)
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(GroupFile::parse("degree = 3").is_err());
        let bad = GroupFile::parse("degree = 3\ngenerators = [\"(1 4)\"]").unwrap();
        assert!(bad.to_handle(&Caps::default()).is_err());
        let wrong = GroupFile::parse("degree = 3\norder = 5\ngenerators = [\"(1 2 3)\"]").unwrap();
        assert!(matches!(
            wrong.to_handle(&Caps::default()),
            Err(Error::Data(_))
        ));
        let wide = GroupFile::parse("degree = 80\ngenerators = []").unwrap();
        assert!(matches!(
            wide.to_handle(&Caps::default()),
            Err(Error::DegreeCap { .. })
        ));
    }
}
