use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use crate::catalog::{self, SimpleTable};
use crate::config::{Caps, Execution};
use crate::error::Result;
use crate::group::GroupHandle;
use crate::oracle::Oracle;
use crate::perm::Permutation;

const ORACLE_CACHE_LIMIT: usize = 256;

type OracleCache = HashMap<(usize, Vec<Permutation>), Arc<Oracle>>;

/// Shared settings and read-only data for one run. Oracles are cached per generating set.
pub struct Context {
    pub caps: Caps,
    pub exec: Execution,
    pub table: Arc<SimpleTable>,
    pub data_dir: PathBuf,
    oracles: Mutex<OracleCache>,
}

impl Context {
    pub fn new(caps: Caps, exec: Execution) -> Result<Self> {
        Self::from_dir(&catalog::data_dir(), caps, exec)
    }

    pub fn from_dir(dir: &Path, caps: Caps, exec: Execution) -> Result<Self> {
        let table = SimpleTable::load(dir)?;
        Ok(Context {
            caps,
            exec,
            table: Arc::new(table),
            data_dir: dir.to_path_buf(),
            oracles: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_table(&self, table: SimpleTable) -> Self {
        Context {
            caps: self.caps,
            exec: self.exec,
            table: Arc::new(table),
            data_dir: self.data_dir.clone(),
            oracles: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_exec(&self, exec: Execution) -> Self {
        Context {
            caps: self.caps,
            exec,
            table: self.table.clone(),
            data_dir: self.data_dir.clone(),
            oracles: Mutex::new(HashMap::new()),
        }
    }

    pub fn oracle(&self, g: &GroupHandle) -> Result<Arc<Oracle>> {
        let key = (g.degree(), g.generators().to_vec());
        if let Some(o) = self.oracles.lock().unwrap().get(&key) {
            return Ok(o.clone());
        }
        let o = Arc::new(Oracle::new(g, &self.caps)?);
        let mut cache = self.oracles.lock().unwrap();
        if cache.len() >= ORACLE_CACHE_LIMIT {
            cache.clear();
        }
        Ok(cache.entry(key).or_insert(o).clone())
    }

    /// Normal subgroups of `g`, computed once per generating set.
    pub fn normal_subgroups(&self, g: &GroupHandle) -> Result<Vec<GroupHandle>> {
        let o = self.oracle(g)?;
        Ok(o.normal_subgroups_with(self.exec)
            .iter()
            .map(|s| s.group.clone())
            .collect())
    }
}
