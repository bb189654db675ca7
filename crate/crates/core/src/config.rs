use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Scale limits. Every brute-force routine checks the relevant cap before doing work.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest group order whose elements may be enumerated.
    pub element_cap: u64,
    /// Largest group order whose full subgroup lattice may be built.
    pub subgroup_cap: u64,
    /// Largest permutation degree accepted by group constructors.
    pub degree_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            element_cap: 50_000,
            subgroup_cap: 1_000,
            degree_cap: 64,
        }
    }
}

impl Caps {
    pub fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.degree_cap {
            return Err(Error::DegreeCap {
                degree,
                cap: self.degree_cap,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}
