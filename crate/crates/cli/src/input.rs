use std::fs;
use std::path::Path;

use clap::ValueEnum;
use hteq::nonground::{parse_ng_program, NGProgram};
use hteq::syntax::{parse_program, parse_theory};
use hteq::{Alphabets, Atom, Signature, Theory};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// `.lp` is a program, `.ht` a theory, otherwise look for `:-` or `not`
    Auto,
    Theory,
    Program,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn looks_like_program(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('%').next().unwrap_or(""))
        .any(|l| l.contains(":-") || l.split(|c: char| !c.is_ascii_alphanumeric() && c != '_').any(|w| w == "not"))
}

pub fn resolve_kind(path: &Path, text: &str, kind: Kind) -> Kind {
    match (kind, path.extension().and_then(|e| e.to_str())) {
        (Kind::Auto, Some("lp")) => Kind::Program,
        (Kind::Auto, Some("ht")) => Kind::Theory,
        (Kind::Auto, _) if looks_like_program(text) => Kind::Program,
        (Kind::Auto, _) => Kind::Theory,
        (k, _) => k,
    }
}

/// A theory, translating programs rule by rule.
pub fn load_theory(path: &Path, kind: Kind) -> Result<Theory, CliError> {
    let text = read(path)?;
    let parsed = match resolve_kind(path, &text, kind) {
        Kind::Program => parse_program(&text).map(|p| p.to_theory()),
        _ => parse_theory(&text),
    };
    parsed.map_err(|e| CliError::at(path, e))
}

pub fn load_program(path: &Path) -> Result<hteq::Program, CliError> {
    parse_program(&read(path)?).map_err(|e| CliError::at(path, e))
}

pub fn load_ng_program(path: &Path) -> Result<NGProgram, CliError> {
    parse_ng_program(&read(path)?).map_err(|e| CliError::at(path, e))
}

/// `k` fresh atoms, or a comma-separated list of names.
pub fn extra_atoms(spec: Option<&str>, base: &Signature) -> Result<Vec<Atom>, CliError> {
    let Some(spec) = spec.map(str::trim).filter(|s| !s.is_empty()) else {
        return Ok(Vec::new());
    };
    if let Ok(k) = spec.parse::<usize>() {
        return Ok(base.fresh_atoms(k));
    }
    atom_list(spec)
}

fn atom_list(spec: &str) -> Result<Vec<Atom>, CliError> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| {
            let valid = name.starts_with(|c: char| c.is_ascii_lowercase())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if valid {
                Ok(Atom::new(name))
            } else {
                Err(CliError::Usage(format!("`{name}` is not an atom name")))
            }
        })
        .collect()
}

/// `--aplus`/`--aminus` values: atom lists or `@all` for the whole signature.
pub fn alphabets(plus: Option<&str>, minus: Option<&str>, signature: &Signature) -> Result<Alphabets, CliError> {
    let side = |spec: Option<&str>| -> Result<Vec<Atom>, CliError> {
        match spec.map(str::trim) {
            None | Some("") => Ok(Vec::new()),
            Some("@all") => Ok(signature.atoms().to_vec()),
            Some(list) => atom_list(list),
        }
    };
    Ok(Alphabets::new(side(plus)?, side(minus)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_detection() {
        let p = Path::new;
        assert_eq!(resolve_kind(p("x.lp"), "a.", Kind::Auto), Kind::Program);
        assert_eq!(resolve_kind(p("x.ht"), "a :- b.", Kind::Auto), Kind::Theory);
        assert_eq!(resolve_kind(p("x.txt"), "a :- b.", Kind::Auto), Kind::Program);
        assert_eq!(resolve_kind(p("x.txt"), "a | not b.", Kind::Auto), Kind::Program);
        assert_eq!(resolve_kind(p("x.txt"), "nota -> b. % not", Kind::Auto), Kind::Theory);
        assert_eq!(resolve_kind(p("x.lp"), "a.", Kind::Theory), Kind::Theory);
    }

    #[test]
    fn extra_atom_specs() {
        let sig = Signature::new(["a", "u1"]).unwrap();
        let names = |v: Vec<Atom>| v.iter().map(|a| a.name().to_owned()).collect::<Vec<_>>();
        assert_eq!(names(extra_atoms(Some("2"), &sig).unwrap()), ["u1_", "u2"]);
        assert_eq!(names(extra_atoms(Some("x, y"), &sig).unwrap()), ["x", "y"]);
        assert!(extra_atoms(Some("X"), &sig).is_err());
        assert!(extra_atoms(None, &sig).unwrap().is_empty());
    }
}
