use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use lbca::{ComplexSpec, ExchangeMatrix, IceQuiver, QPoint, Seed};
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::report::digest;

pub enum Input {
    Seed(Seed),
    Complex(ComplexSpec),
}

pub struct Loaded {
    pub input: Input,
    pub digest: String,
}

fn read_json(path: &Path) -> Result<(Value, Vec<u8>)> {
    let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let value = serde_json::from_slice(&bytes).map_err(|e| anyhow!("parse error in {}: {e}", path.display()))?;
    Ok((value, bytes))
}

fn validate<T: DeserializeOwned>(value: Value, what: &str, path: &Path) -> Result<T> {
    serde_json::from_value(value).map_err(|e| anyhow!("validation error in {} ({what}): {e}", path.display()))
}

/// Reads a quiver, exchange matrix or complex, chosen by the keys present.
pub fn load(path: &Path) -> Result<Loaded> {
    let (value, bytes) = read_json(path)?;
    let Some(obj) = value.as_object() else {
        bail!("validation error in {}: expected a JSON object", path.display());
    };
    let input = if obj.contains_key("B") {
        Input::Seed(Seed::from(validate::<ExchangeMatrix>(value, "exchange matrix", path)?))
    } else if obj.contains_key("S") {
        Input::Complex(validate::<ComplexSpec>(value, "complex", path)?)
    } else {
        Input::Seed(Seed::from(validate::<IceQuiver>(value, "quiver", path)?))
    };
    Ok(Loaded {
        input,
        digest: digest(&bytes),
    })
}

pub fn load_seed(path: &Path) -> Result<(Seed, String)> {
    let loaded = load(path)?;
    match loaded.input {
        Input::Seed(s) => Ok((s, loaded.digest)),
        Input::Complex(_) => bail!(
            "validation error in {}: expected a quiver or exchange matrix, found a complex",
            path.display()
        ),
    }
}

pub fn load_point(path: &Path) -> Result<(QPoint, Vec<u8>)> {
    let (value, bytes) = read_json(path)?;
    Ok((validate::<QPoint>(value, "point", path)?, bytes))
}
