//! Optional JSON config files. Keys are the long flag names; flags given on
//! the command line win over the file.

use std::fs;
use std::path::Path;

use clap::{Args, Command};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::CliError;

fn known_keys<T: Args>() -> Vec<String> {
    T::augment_args(Command::new("config"))
        .get_arguments()
        .filter_map(|a| a.get_long().map(str::to_string))
        .collect()
}

/// Overlays the flags in `flags` onto the config file at `path`.
pub fn merge<T>(flags: T, path: Option<&Path>) -> Result<T, CliError>
where
    T: Args + Serialize + DeserializeOwned,
{
    let Some(path) = path else { return Ok(flags) };
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("reading config {}: {e}", path.display())))?;
    let mut base: Map<String, Value> = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
    let known = known_keys::<T>();
    if let Some(bad) = base.keys().find(|k| !known.contains(k) || k.as_str() == "config") {
        return Err(CliError::Usage(format!("config {}: unknown key '{bad}'", path.display())));
    }
    let Value::Object(over) = serde_json::to_value(&flags).expect("flags serialize") else {
        unreachable!("argument structs serialize to objects")
    };
    // unset flags serialize as null, false or an empty list
    base.extend(over.into_iter().filter(|(_, v)| match v {
        Value::Null | Value::Bool(false) => false,
        Value::Array(a) => !a.is_empty(),
        _ => true,
    }));
    serde_json::from_value(Value::Object(base))
        .map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))
}
