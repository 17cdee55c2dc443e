//! Resolution of a command argument into an instance or a bare period germ.

use std::collections::BTreeMap;
use std::path::Path;

use lmhs::instances::{
    conifold_instance, hashimoto_sano_instance, read_instance, two_quadrics, validate_instance,
    ConifoldParams,
};
use lmhs::period::PeriodGerm;
use lmhs::steenbrink::SncInstance;

use crate::CliError;

#[derive(Clone, Debug)]
pub enum Source {
    Instance(SncInstance),
    Germ { name: String, germ: PeriodGerm },
}

impl Source {
    pub fn name(&self) -> &str {
        match self {
            Source::Instance(inst) => &inst.name,
            Source::Germ { name, .. } => name,
        }
    }

    pub fn instance(&self) -> Result<&SncInstance, CliError> {
        match self {
            Source::Instance(inst) => Ok(inst),
            Source::Germ { name, .. } => Err(CliError::Usage(format!(
                "{name} is a period germ, not an SNC instance"
            ))),
        }
    }
}

fn parse_query(query: &str) -> Result<BTreeMap<String, String>, CliError> {
    query
        .split('&')
        .filter(|kv| !kv.is_empty())
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| CliError::Usage(format!("malformed query parameter `{kv}`")))
        })
        .collect()
}

fn int_param(
    params: &BTreeMap<String, String>,
    key: &str,
    default: i64,
    min: i64,
) -> Result<i64, CliError> {
    let value = match params.get(key) {
        Some(v) => v
            .parse()
            .map_err(|_| CliError::Usage(format!("`{key}` must be an integer, got `{v}`")))?,
        None => default,
    };
    if value < min {
        return Err(CliError::Usage(format!("`{key}` must be at least {min}")));
    }
    Ok(value)
}

fn builtin(spec: &str) -> Result<Source, CliError> {
    let (name, query) = spec.split_once('?').unwrap_or((spec, ""));
    let params = parse_query(query)?;
    let allow = |keys: &[&str]| match params.keys().find(|k| !keys.contains(&k.as_str())) {
        Some(k) => Err(CliError::Usage(format!(
            "builtin:{name} takes no parameter `{k}`"
        ))),
        None => Ok(()),
    };
    match name {
        "hashimoto-sano" => {
            allow(&["a"])?;
            let a = int_param(&params, "a", 1, 1)?;
            Ok(Source::Instance(hashimoto_sano_instance(a as u32)))
        }
        "conifold" => {
            allow(&["h21"])?;
            let h21 = int_param(&params, "h21", 1, 0)? as usize;
            let inst = conifold_instance(&ConifoldParams {
                h21,
                ..ConifoldParams::default()
            })?;
            Ok(Source::Instance(inst))
        }
        "two-quadrics" => {
            allow(&[])?;
            Ok(Source::Instance(two_quadrics()))
        }
        "jordan-block" => {
            allow(&["d"])?;
            let d = int_param(&params, "d", 1, 0)? as usize;
            Ok(Source::Germ {
                name: format!("jordan-block(d={d})"),
                germ: PeriodGerm::jordan(d),
            })
        }
        other => Err(CliError::Usage(format!("unknown built-in `{other}`"))),
    }
}

/// A `builtin:` URI or a path to an instance file, without checking invariants.
pub fn resolve(arg: &str) -> Result<Source, CliError> {
    match arg.strip_prefix("builtin:") {
        Some(spec) => builtin(spec),
        None => Ok(Source::Instance(read_instance(Path::new(arg))?)),
    }
}

/// [`resolve`] and reject instances that break an invariant.
pub fn load(arg: &str) -> Result<Source, CliError> {
    let source = resolve(arg)?;
    if let Source::Instance(inst) = &source {
        let report = validate_instance(inst);
        if !report.is_valid() {
            return Err(CliError::Invalid {
                name: report.name,
                issues: report.issues,
            });
        }
    }
    Ok(source)
}
