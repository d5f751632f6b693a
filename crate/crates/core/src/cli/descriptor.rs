//! Model descriptors: the JSON files every subcommand reads.
//!
//! ```json
//! {
//!   "N": 2,
//!   "omega": "i*(dz1^dzb1 + dz2^dzb2)",
//!   "mode_radius": 1,
//!   "bindings": { "v": "e[1,0,0,0]*dz1^dzb1", "alpha": "dz1^dzb2" },
//!   "suite": "all",
//!   "seed": 7
//! }
//! ```
//!
//! `modes` lists the mode set explicitly and takes precedence over
//! `mode_radius`. Integers may also be written as decimal strings.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use super::expr::{eval_constant, parse_form, Env, Expr};
use crate::error::{Error, Result};
use crate::form::Form;
use crate::hodge::StarContext;
use crate::sl2::build_model;
use crate::torus::{FourierForm, Mode, ModeSet, TorusContext};

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Int {
    Number(i64),
    Text(String),
}

impl Int {
    fn value(&self, field: &str) -> Result<i64> {
        match self {
            Int::Number(v) => Ok(*v),
            Int::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Descriptor(format!("{field}: '{s}' is not a 64-bit integer"))),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDescriptor {
    #[serde(rename = "N", alias = "n")]
    n: Int,
    pub omega: String,
    #[serde(default)]
    modes: Option<Vec<Vec<Int>>>,
    #[serde(default)]
    mode_radius: Option<Int>,
    #[serde(default)]
    pub bindings: BTreeMap<String, String>,
    #[serde(default)]
    pub suite: Option<String>,
    #[serde(default)]
    seed: Option<Int>,
}

/// A descriptor checked and turned into module inputs.
pub struct Model {
    pub n: usize,
    pub omega: Form,
    pub torus: TorusContext,
    pub bindings: BTreeMap<String, FourierForm>,
    pub sources: BTreeMap<String, Expr>,
    pub suite: Option<String>,
    pub seed: u64,
}

impl ModelDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Descriptor(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Descriptor(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn mode_set(&self, n: usize) -> Result<ModeSet> {
        match (&self.modes, &self.mode_radius) {
            (Some(list), _) => {
                let modes = list
                    .iter()
                    .map(|k| k.iter().map(|x| x.value("modes")).collect::<Result<Mode>>())
                    .collect::<Result<Vec<_>>>()?;
                ModeSet::new(n, modes)
            }
            (None, Some(r)) => ModeSet::cube(n, r.value("mode_radius")?),
            (None, None) => ModeSet::cube(n, 1),
        }
    }

    /// Parses every expression and builds the contexts. All errors surface
    /// here, before any check runs.
    pub fn elaborate(&self) -> Result<Model> {
        let n = usize::try_from(self.n.value("N")?)
            .map_err(|_| Error::Descriptor("N must be positive".into()))?;
        crate::form::validate_dimension(n)?;
        let modes = self.mode_set(n)?;
        let env = Env {
            n,
            omega: None,
            modes: &modes,
        };
        let omega_expr = parse_form(&self.omega, n)?;
        let omega = eval_constant(&omega_expr, &env)?;
        let star = StarContext::new(build_model(&omega)?)?;
        let torus = TorusContext::new(star, modes)?;
        let env = Env {
            n,
            omega: Some(&omega),
            modes: torus.mode_set(),
        };
        let mut bindings = BTreeMap::new();
        let mut sources = BTreeMap::new();
        for (name, src) in &self.bindings {
            let e = parse_form(src, n).map_err(|err| Error::Descriptor(format!("binding '{name}': {err}")))?;
            let value = e
                .eval(&env)
                .map_err(|err| Error::Descriptor(format!("binding '{name}': {err}")))?;
            bindings.insert(name.clone(), value);
            sources.insert(name.clone(), e);
        }
        let seed = match &self.seed {
            Some(s) => u64::try_from(s.value("seed")?).map_err(|_| Error::Descriptor("seed must be nonnegative".into()))?,
            None => 0,
        };
        Ok(Model {
            n,
            omega,
            torus,
            bindings,
            sources,
            suite: self.suite.clone(),
            seed,
        })
    }
}

impl Model {
    pub fn env(&self) -> Env<'_> {
        Env {
            n: self.n,
            omega: Some(&self.omega),
            modes: self.torus.mode_set(),
        }
    }

    pub fn parse(&self, src: &str) -> Result<FourierForm> {
        parse_form(src, self.n)?.eval(&self.env())
    }

    pub fn parse_constant(&self, src: &str) -> Result<Form> {
        eval_constant(&parse_form(src, self.n)?, &self.env())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_shape_elaborates() {
        let d = ModelDescriptor::from_json(
            r#"{"N": "2", "omega": "i*(dz1^dzb1 + dz2^dzb2)", "bindings": {"v": "w"}, "seed": "18446744073709551"}"#,
        )
        .unwrap();
        let m = d.elaborate().unwrap();
        assert_eq!(m.n, 2);
        assert_eq!(m.torus.mode_set().len(), 81);
        assert_eq!(m.bindings["v"], m.torus.omega());
        assert_eq!(m.seed, 18_446_744_073_709_551);
    }

    #[test]
    fn bad_omega_is_rejected() {
        let d = ModelDescriptor::from_json(r#"{"N": 2, "omega": "dz1^dz2"}"#).unwrap();
        assert!(matches!(d.elaborate(), Err(Error::NotOneOne)));
        let d = ModelDescriptor::from_json(r#"{"N": 2, "omega": "i*dz1^dzb1"}"#).unwrap();
        assert!(d.elaborate().is_err());
        assert!(ModelDescriptor::from_json(r#"{"N": 2, "omega": "w", "colour": 1}"#).is_err());
    }

    #[test]
    fn explicit_modes() {
        let d = ModelDescriptor::from_json(
            r#"{"n": 1, "omega": "i*dz1^dzb1", "modes": [[0,0],[1,0],[-1,0]], "bindings": {"alpha": "e[1,0]"}}"#,
        )
        .unwrap();
        let m = d.elaborate().unwrap();
        assert_eq!(m.torus.mode_set().len(), 3);
        let d = ModelDescriptor::from_json(r#"{"n": 1, "omega": "i*dz1^dzb1", "modes": [[0,0]], "bindings": {"a": "e[1,0]"}}"#)
            .unwrap();
        assert!(matches!(d.elaborate(), Err(Error::Descriptor(_))));
    }
}
