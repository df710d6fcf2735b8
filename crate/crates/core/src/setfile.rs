//! Plain-text set files.
//!
//! ```text
//! #ambient interval n=16
//! 1
//! 2
//! 5
//! ```
//!
//! Product sets use `#ambient product 4,4,4` and comma-separated residues per
//! line. Intervals not starting at 1 add `start=S` to the header. Any other
//! line starting with `#` is a comment.

use std::fmt::Write as _;
use std::path::Path;

use crate::ambient::{Ambient, Element};
use crate::error::{Error, Result};
use crate::set::GroundSet;

fn parse_header(rest: &str, line: usize) -> Result<Ambient> {
    let perr = |msg: String| Error::Parse { line, msg };
    let mut parts = rest.split_whitespace();
    match parts.next() {
        Some("interval") => {
            let mut n = None;
            let mut start = 1i64;
            for kv in parts {
                let (k, v) = kv.split_once('=').ok_or_else(|| perr(format!("expected key=value, got {kv:?}")))?;
                match k {
                    "n" => n = Some(v.parse::<u64>().map_err(|_| perr(format!("bad n {v:?}")))?),
                    "start" => start = v.parse::<i64>().map_err(|_| perr(format!("bad start {v:?}")))?,
                    _ => return Err(perr(format!("unknown interval key {k:?}"))),
                }
            }
            let n = n.ok_or_else(|| perr("interval header needs n=".into()))?;
            Ambient::interval_from(start, n).map_err(|e| perr(e.to_string()))
        }
        Some("product") => {
            let spec = parts.next().ok_or_else(|| perr("product header needs moduli".into()))?;
            let moduli = spec
                .split(',')
                .map(|m| m.trim().parse::<u64>().map_err(|_| perr(format!("bad modulus {m:?}"))))
                .collect::<Result<Vec<_>>>()?;
            Ambient::product(moduli).map_err(|e| perr(e.to_string()))
        }
        other => Err(perr(format!("unknown ambient kind {other:?}"))),
    }
}

pub fn parse_set(text: &str) -> Result<GroundSet> {
    let mut ambient: Option<Ambient> = None;
    let mut elems = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("#ambient") {
            if ambient.is_some() {
                return Err(Error::Parse { line: lineno, msg: "duplicate #ambient header".into() });
            }
            ambient = Some(parse_header(rest, lineno)?);
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let amb = ambient.as_ref().ok_or_else(|| Error::Parse {
            line: lineno,
            msg: "element before #ambient header".into(),
        })?;
        let perr = |msg: String| Error::Parse { line: lineno, msg };
        let e = match amb {
            Ambient::Interval { .. } => Element::Int(line.parse().map_err(|_| perr(format!("not an integer: {line:?}")))?),
            Ambient::Product { .. } => Element::Tuple(
                line.split(',')
                    .map(|x| x.trim().parse::<u64>().map_err(|_| perr(format!("bad residue in {line:?}"))))
                    .collect::<Result<_>>()?,
            ),
        };
        if !amb.contains(&e) {
            return Err(perr(format!("element {e} outside {amb}")));
        }
        elems.push(e);
    }
    let ambient = ambient.ok_or_else(|| Error::Parse { line: 0, msg: "missing #ambient header".into() })?;
    GroundSet::new(ambient, elems)
}

pub fn write_set(set: &GroundSet) -> String {
    let mut out = format!("#ambient {}\n", set.ambient().describe());
    for e in set.iter() {
        let _ = writeln!(out, "{e}");
    }
    out
}

pub fn read_set_file(path: &Path) -> Result<GroundSet> {
    parse_set(&std::fs::read_to_string(path)?)
}

pub fn write_set_file(path: &Path, set: &GroundSet) -> Result<()> {
    std::fs::write(path, write_set(set))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_interval_with_comments() {
        let s = parse_set("# a Sidon set\n#ambient interval n=16\n1\n2\n\n5\n# trailing\n11\n").unwrap();
        assert_eq!(s.ints().unwrap(), vec![1, 2, 5, 11]);
        assert_eq!(s.ambient(), &Ambient::interval(16).unwrap());
    }

    #[test]
    fn parses_product_and_shifted_interval() {
        let s = parse_set("#ambient product 4,4,4\n1,3,2\n0,0,0\n").unwrap();
        assert_eq!(s.len(), 2);
        let t = parse_set("#ambient interval n=256 start=0\n0\n73\n").unwrap();
        assert_eq!(t.ints().unwrap(), vec![0, 73]);
        assert_eq!(parse_set(&write_set(&t)).unwrap(), t);
    }

    #[test]
    fn reports_bad_lines() {
        assert!(matches!(parse_set("1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_set("#ambient interval n=4\n5\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_set("#ambient product 4,4\n1,2,3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_set("#ambient torus 3\n"), Err(Error::Parse { .. })));
    }
}
