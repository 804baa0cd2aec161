//! `--config FILE`: a JSON object whose keys are long flag names.
//!
//! The file's entries are spliced into the argument list right after the
//! subcommand, before the flags given on the command line, so explicit flags win.

use anyhow::{bail, Context, Result};
use serde_json::Value;

fn to_flags(v: &Value) -> Result<Vec<String>> {
    let Value::Object(map) = v else {
        bail!("config file must contain a JSON object");
    };
    let mut out = Vec::new();
    for (k, v) in map {
        let flag = format!("--{}", k.replace('_', "-"));
        let scalar = |v: &Value| -> Result<String> {
            Ok(match v {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                _ => bail!("config key {k:?}: unsupported value {v}"),
            })
        };
        match v {
            Value::Null | Value::Bool(false) => {}
            Value::Bool(true) => out.push(flag),
            Value::Array(items) => {
                out.push(flag);
                out.push(items.iter().map(scalar).collect::<Result<Vec<_>>>()?.join(","));
            }
            _ => {
                out.push(flag);
                out.push(scalar(v)?);
            }
        }
    }
    Ok(out)
}

/// Replace `--config FILE` in `args` by the file's flags.
pub fn expand(mut args: Vec<String>) -> Result<Vec<String>> {
    let Some(pos) = args.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(args);
    };
    let path = if let Some(p) = args[pos].strip_prefix("--config=") {
        let p = p.to_string();
        args.remove(pos);
        p
    } else {
        if pos + 1 >= args.len() {
            bail!("--config needs a file path");
        }
        args.drain(pos..pos + 2).nth(1).expect("checked length")
    };
    let text = std::fs::read_to_string(&path).with_context(|| format!("cannot read config {path}"))?;
    let value: Value = serde_json::from_str(&text).with_context(|| format!("invalid JSON in config {path}"))?;
    let flags = to_flags(&value)?;
    let insert_at = args
        .iter()
        .skip(1)
        .position(|a| a.starts_with('-'))
        .map_or(args.len(), |i| i + 1);
    args.splice(insert_at..insert_at, flags);
    Ok(args)
}
