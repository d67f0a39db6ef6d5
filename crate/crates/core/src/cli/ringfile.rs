use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffpoly::MonomialOrder;
use crate::groebner::{Ring, RingSpec};

/// `.ring` file: `{"p": 2, "vars": ["x","y","z"], "order": "grevlex",
/// "quotient": ["x^3+y^3+z^3"]}`. `order` defaults to grevlex and
/// `quotient` to no relations.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub p: u64,
    pub vars: Vec<String>,
    #[serde(default = "default_order")]
    pub order: String,
    #[serde(default)]
    pub quotient: Vec<String>,
}

fn default_order() -> String {
    "grevlex".into()
}

impl RingFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidRing(e.to_string()))
    }

    pub fn to_ring(&self, step_cap: Option<usize>) -> Result<Ring> {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let quotient: Vec<&str> = self.quotient.iter().map(String::as_str).collect();
        let order = MonomialOrder::parse(&self.order)?;
        let ring = RingSpec::parse(self.p, &vars, order, &quotient)?;
        Ok(match step_cap {
            Some(cap) => ring.with_step_cap(cap),
            None => ring,
        })
    }
}
