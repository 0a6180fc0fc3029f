//! Group and family text files.
//!
//! A group file starts with `degree N` and lists one generator per line in
//! cycle notation. A family file holds `group <name> <path>` lines and one
//! `params d=<d> k=<k>` line; a path of the form `catalog:NAME` refers to the
//! built-in catalog. `#` starts a comment in both formats.

use std::fs;
use std::path::Path;

use crate::catalog;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

fn strip(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

pub fn parse_group_text(text: &str) -> Result<PermGroup> {
    let mut degree = None;
    let mut gens = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = strip(raw);
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: no + 1,
            message,
        };
        match degree {
            None => {
                let n = line
                    .strip_prefix("degree")
                    .map(str::trim)
                    .ok_or_else(|| parse_err("expected `degree N`".into()))?;
                let n: usize = n
                    .parse()
                    .map_err(|_| parse_err(format!("bad degree {n:?}")))?;
                if n == 0 {
                    return Err(parse_err("degree must be positive".into()));
                }
                degree = Some(n);
            }
            Some(n) => {
                let p = Permutation::parse_cycles(n, line).map_err(|e| parse_err(e.to_string()))?;
                gens.push(p);
            }
        }
    }
    let n = degree.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing `degree N` line".into(),
    })?;
    PermGroup::new(n, gens)
}

pub fn format_group(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for p in g.generators() {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

/// `catalog:NAME` or a path, resolved against `base` when relative.
pub fn load_group(spec: &str, base: Option<&Path>) -> Result<(String, PermGroup)> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        let entry = catalog::get(name)
            .ok_or_else(|| Error::Input(format!("unknown catalog group {name:?}")))?;
        return Ok((entry.name.to_string(), entry.group()));
    }
    let path = match base {
        Some(b) if Path::new(spec).is_relative() => b.join(spec),
        _ => Path::new(spec).to_path_buf(),
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| spec.to_string());
    Ok((name, parse_group_text(&text)?))
}

#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub members: Vec<(String, PermGroup)>,
    pub d: usize,
    pub k: usize,
}

pub fn parse_family_text(text: &str, base: Option<&Path>) -> Result<FamilySpec> {
    let mut members = Vec::new();
    let mut params = None;
    for (no, raw) in text.lines().enumerate() {
        let line = strip(raw);
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: no + 1,
            message,
        };
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("group") => {
                let (name, path) = match (toks.next(), toks.next(), toks.next()) {
                    (Some(n), Some(p), None) => (n, p),
                    _ => return Err(parse_err("expected `group <name> <path>`".into())),
                };
                let (_, g) = load_group(path, base).map_err(|e| parse_err(e.to_string()))?;
                members.push((name.to_string(), g));
            }
            Some("params") => {
                if params.is_some() {
                    return Err(parse_err("duplicate params line".into()));
                }
                let (mut d, mut k) = (None, None);
                for t in toks {
                    let (key, value) = t
                        .split_once('=')
                        .ok_or_else(|| parse_err(format!("expected key=value, got {t:?}")))?;
                    let v: usize = value
                        .parse()
                        .map_err(|_| parse_err(format!("bad value {value:?}")))?;
                    match key {
                        "d" => d = Some(v),
                        "k" => k = Some(v),
                        _ => return Err(parse_err(format!("unknown parameter {key:?}"))),
                    }
                }
                match (d, k) {
                    (Some(d), Some(k)) => params = Some((d, k)),
                    _ => return Err(parse_err("params needs both d and k".into())),
                }
            }
            Some(other) => return Err(parse_err(format!("unknown directive {other:?}"))),
            None => {}
        }
    }
    let (d, k) = params.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        message: "missing `params d=<d> k=<k>` line".into(),
    })?;
    Ok(FamilySpec { members, d, k })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_file_examples() {
        let g = parse_group_text("degree 5\n(1 2 3 4 5)\n(1 2 3)\n").unwrap();
        assert_eq!(g.order(), 60);
        let g = parse_group_text("# nothing\ndegree 3\n").unwrap();
        assert!(g.is_trivial());
        let err = parse_group_text("degree 3\n(1 2 2)\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn format_roundtrip() {
        let g = catalog::sl25();
        assert!(parse_group_text(&format_group(&g)).unwrap().same_group(&g));
    }

    #[test]
    fn family_with_catalog_members() {
        let f = parse_family_text(
            "group a catalog:A5\ngroup p catalog:PSL27  # note\nparams d=2 k=1\n",
            None,
        )
        .unwrap();
        assert_eq!(f.members.len(), 2);
        assert_eq!((f.d, f.k), (2, 1));
        assert!(parse_family_text("group a catalog:A5\n", None).is_err());
        assert!(matches!(
            parse_family_text("params d=2 k=1\nfoo\n", None),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
