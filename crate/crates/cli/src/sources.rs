//! Resolving command-line arguments to bialgebras, functionals and group
//! data.
//!
//! A bialgebra argument is `[fun:|cstar:]<target>`, where the target is a
//! built-in group name (`zn:<n>`, `s3`, `d4`, `q8`) or a JSON file. A bare
//! built-in name means both constructions for `validate` and the function
//! algebra everywhere else.

use std::path::{Path, PathBuf};

use convsemi::bialgebra::fixtures;
use convsemi::io::{self, BialgebraFile, SemigroupFile};
use convsemi::{function_bialgebra, group_cstar_bialgebra, Bialgebra, IrrepTable, SemigroupTable};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::report::Input;
use crate::CliError;

/// Read a file and record its digest.
pub fn read_input(role: &str, path: &Path) -> Result<(String, Input), CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Input(format!("{}: not valid UTF-8", path.display())))?;
    let input = Input {
        role: role.into(),
        source: path.display().to_string(),
        sha256: Some(hex::encode(Sha256::digest(&bytes))),
    };
    Ok((text, input))
}

pub fn parse_file<T: for<'de> serde::Deserialize<'de>>(path: &Path, text: &str) -> Result<T, CliError> {
    io::parse(text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn builtin_input(role: &str, name: &str) -> Input {
    Input {
        role: role.into(),
        source: name.into(),
        sha256: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Construction {
    Function,
    GroupCStar,
    Both,
}

fn split_prefix(arg: &str) -> (Option<Construction>, &str) {
    if let Some(rest) = arg.strip_prefix("cstar:") {
        (Some(Construction::GroupCStar), rest)
    } else if let Some(rest) = arg.strip_prefix("fun:") {
        (Some(Construction::Function), rest)
    } else {
        (None, arg)
    }
}

/// A group or monoid table with irreps when available.
pub struct GroupData {
    pub table: SemigroupTable,
    pub irreps: Option<IrrepTable>,
    pub input: Input,
}

/// Built-in name or semigroup file.
pub fn load_group(role: &str, target: &str, tol: f64) -> Result<GroupData, CliError> {
    if let Ok((table, irreps)) = fixtures::by_name(target) {
        return Ok(GroupData {
            table,
            irreps: Some(irreps),
            input: builtin_input(role, target),
        });
    }
    let path = PathBuf::from(target);
    if !path.exists() {
        return Err(CliError::Input(format!(
            "'{target}' is neither a built-in group nor a file"
        )));
    }
    let (text, input) = read_input(role, &path)?;
    let file: SemigroupFile = parse_file(&path, &text)?;
    let (table, irreps) = file.resolve(tol)?;
    Ok(GroupData { table, irreps, input })
}

fn group_constructions(name: &str, g: &GroupData, which: Construction) -> Result<Vec<(String, Bialgebra)>, CliError> {
    let mut out = Vec::new();
    if which != Construction::GroupCStar {
        out.push((format!("C({name})"), function_bialgebra(&g.table)));
    }
    if which != Construction::Function {
        match &g.irreps {
            Some(irr) => out.push((format!("C*({name})"), group_cstar_bialgebra(&g.table, irr)?)),
            None if which == Construction::GroupCStar => {
                return Err(CliError::Input(format!("{name}: no irreps given, C*(G) unavailable")))
            }
            None => {}
        }
    }
    Ok(out)
}

/// All bialgebras named by `arg`; see the module documentation.
pub fn load_bialgebras(arg: &str, tol: f64) -> Result<(Vec<(String, Bialgebra)>, Input), CliError> {
    let (prefix, target) = split_prefix(arg);
    if fixtures::by_name(target).is_ok() {
        let g = load_group("bialgebra", target, tol)?;
        let list = group_constructions(target, &g, prefix.unwrap_or(Construction::Both))?;
        return Ok((list, builtin_input("bialgebra", arg)));
    }
    let path = PathBuf::from(target);
    if !path.exists() {
        return Err(CliError::Input(format!(
            "'{target}' is neither a built-in group nor a file"
        )));
    }
    let (text, input) = read_input("bialgebra", &path)?;
    let probe: Value = parse_file(&path, &text)?;
    if probe.get("blocks").is_some() {
        if prefix.is_some() {
            return Err(CliError::Input(format!(
                "{target}: prefixes apply to group tables only"
            )));
        }
        let file: BialgebraFile = parse_file(&path, &text)?;
        return Ok((vec![(target.to_string(), file.bialgebra()?)], input));
    }
    if probe.get("order").is_some() {
        let file: SemigroupFile = parse_file(&path, &text)?;
        let (table, irreps) = file.resolve(tol)?;
        let g = GroupData {
            table,
            irreps,
            input: input.clone(),
        };
        let list = group_constructions(target, &g, prefix.unwrap_or(Construction::Both))?;
        return Ok((list, input));
    }
    Err(CliError::Input(format!(
        "{target}: expected a bialgebra file (\"blocks\") or a semigroup file (\"order\")"
    )))
}

/// One bialgebra; a bare group name selects the function algebra.
pub fn load_bialgebra(arg: &str, tol: f64) -> Result<(String, Bialgebra, Input), CliError> {
    let (prefix, _) = split_prefix(arg);
    let (mut list, input) = load_bialgebras(arg, tol)?;
    if prefix.is_none() && list.len() > 1 {
        list.truncate(1);
    }
    let (label, b) = list
        .into_iter()
        .next()
        .ok_or_else(|| CliError::Input(format!("{arg}: nothing to load")))?;
    Ok((label, b, input))
}
