//! Job configuration, read from a TOML document.
//!
//! ```toml
//! [curve]
//! weights = [3, 2]
//! h = "x1^2 - x2^3"
//!
//! [connection]
//! n = 2
//! a = "lambda + m*x1 + n*x2"
//! b = "solve"          # or a list ["b0", "b1", ...]
//! e = "nu - nu^2"      # used by b = "solve"
//!
//! [parameters]
//! lambda = "symbolic"  # "symbolic", a number (3, "-1/2") or an expression
//! nu = "lambda"
//!
//! [options]
//! mode = "symbolic"    # symbolic | generic | specialized
//! degree_bound = 60
//! k = 1
//! kprime = 1
//! certificate = false
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::ratpoly::Rational;

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub curve: CurveConfig,
    #[serde(default)]
    pub connection: ConnectionConfig,
    #[serde(default)]
    pub parameters: BTreeMap<String, ParamEntry>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub weights: [i64; 2],
    pub h: String,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ConnectionConfig {
    #[serde(default = "one")]
    pub n: i64,
    #[serde(default = "zero_text")]
    pub a: String,
    #[serde(default)]
    pub b: BSpec,
    #[serde(default = "zero_text")]
    pub e: String,
}

fn one() -> i64 {
    1
}

fn zero_text() -> String {
    "0".to_string()
}

impl Default for ConnectionConfig {
    fn default() -> Self {
        ConnectionConfig { n: 1, a: zero_text(), b: BSpec::default(), e: zero_text() }
    }
}

/// Either the keyword `"solve"` or the explicit coefficients `b₀, …, b_{n−1}`.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum BSpec {
    Keyword(String),
    List(Vec<String>),
}

impl Default for BSpec {
    fn default() -> Self {
        BSpec::List(vec![zero_text()])
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ParamEntry {
    Int(i64),
    Text(String),
}

/// A parameter after interpretation.
#[derive(Clone, Debug, PartialEq)]
pub enum ParamValue {
    Symbolic,
    Number(Rational),
    Expression(String),
}

impl ParamEntry {
    pub fn value(&self) -> ParamValue {
        match self {
            ParamEntry::Int(n) => ParamValue::Number(Rational::from_int(*n)),
            ParamEntry::Text(t) => {
                let t = t.trim();
                if t == "symbolic" {
                    ParamValue::Symbolic
                } else if let Ok(q) = t.parse::<Rational>() {
                    ParamValue::Number(q)
                } else {
                    ParamValue::Expression(t.to_string())
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum RunMode {
    /// Free parameters become central variables over ℚ.
    Symbolic,
    /// Free parameters live in the coefficient field ℚ(λ, m, n, ν).
    Generic,
    /// Every parameter has a numeric value.
    Specialized,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub mode: Option<RunMode>,
    pub degree_bound: Option<u32>,
    pub k: Option<i64>,
    pub kprime: Option<i64>,
    pub certificate: Option<bool>,
}

impl JobConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Applies a `name=value` override from the command line.
    pub fn set_param(&mut self, assignment: &str) -> Result<()> {
        let (name, value) = assignment
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("parameter override `{assignment}` is not of the form name=value")))?;
        self.parameters.insert(name.trim().to_string(), ParamEntry::Text(value.trim().to_string()));
        Ok(())
    }
}
