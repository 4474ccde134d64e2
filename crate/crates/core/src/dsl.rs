//! Text specifications of groups, e.g. `direct(frobenius(7,3,2), alt(5))`.
//!
//! ```text
//! spec  := name "(" arg ("," arg)* ")"
//! arg   := spec | integer | "quoted text"
//! ```
//!
//! Constructors: `cyclic(n)`, `dihedral(2n)`, `sym(n)`, `alt(n)`,
//! `quaternion(4n)`, `frobenius(p,q,k)`, `direct(a,b,...)`,
//! `semidirect(n,h,k)` (a generator of cyclic `h` acts on abelian `n` by
//! `x -> x^k`), `perm("[(0 1),(0 1 2)]")`, `table("file.json")`, `sl2(p)`,
//! `gl2(p)`.

use std::path::Path;

use serde::Deserialize;

use crate::error::{GroupError, Result};
use crate::group::{Group, DEFAULT_MAX_ORDER};
use crate::perm::parse_permutation_list;

#[derive(Clone, Debug, PartialEq)]
enum Arg {
    Spec(String, Vec<Arg>),
    Int(i64),
    Text(String),
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> GroupError {
        GroupError::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&format!("expected {c:?}")))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !f(c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.text[start..self.pos]
    }

    fn arg(&mut self) -> Result<Arg> {
        match self.peek() {
            Some('"') => {
                self.pos += 1;
                let body = self.take_while(|c| c != '"');
                self.expect('"')?;
                Ok(Arg::Text(body.to_string()))
            }
            Some(c) if c == '-' || c.is_ascii_digit() => {
                let sign = if c == '-' {
                    self.pos += 1;
                    -1
                } else {
                    1
                };
                let digits = self.take_while(|c| c.is_ascii_digit());
                let n: i64 = digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(Arg::Int(sign * n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_').to_string();
                self.expect('(')?;
                let mut args = vec![self.arg()?];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    args.push(self.arg()?);
                }
                self.expect(')')?;
                Ok(Arg::Spec(name, args))
            }
            _ => Err(self.error("expected a constructor, integer or quoted text")),
        }
    }
}

#[derive(Deserialize)]
struct TableFile {
    order: usize,
    mul: Vec<usize>,
}

fn parse(text: &str) -> Result<Arg> {
    let mut p = Parser { text, pos: 0 };
    let arg = p.arg()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(arg)
}

fn int(args: &[Arg], i: usize, name: &str) -> Result<i64> {
    match args.get(i) {
        Some(Arg::Int(n)) => Ok(*n),
        _ => Err(GroupError::Parse(format!("{name}: argument {} must be an integer", i + 1))),
    }
}

fn size(args: &[Arg], i: usize, name: &str) -> Result<usize> {
    let n = int(args, i, name)?;
    usize::try_from(n)
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| GroupError::Parse(format!("{name}: argument {} must be positive", i + 1)))
}

fn arity(args: &[Arg], n: usize, name: &str) -> Result<()> {
    if args.len() == n {
        Ok(())
    } else {
        Err(GroupError::Parse(format!("{name} takes {n} argument(s), got {}", args.len())))
    }
}

fn check_order(order: usize, max_order: usize) -> Result<()> {
    if order > max_order {
        Err(GroupError::OrderBoundExceeded { bound: max_order })
    } else {
        Ok(())
    }
}

/// `n!`, saturating. Lets `sym(n)`/`alt(n)` be refused before any work.
fn factorial(n: usize) -> usize {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k)).unwrap_or(usize::MAX)
}

fn build(arg: &Arg, max_order: usize, base: &Path) -> Result<Group> {
    let Arg::Spec(name, args) = arg else {
        return Err(GroupError::Parse(format!("expected a group, found {arg:?}")));
    };
    let name = name.as_str();
    let group = match name {
        "cyclic" => {
            arity(args, 1, name)?;
            let n = size(args, 0, name)?;
            check_order(n, max_order)?;
            Group::cyclic(n)
        }
        "dihedral" => {
            arity(args, 1, name)?;
            let n = size(args, 0, name)?;
            check_order(n, max_order)?;
            Group::dihedral(n)?
        }
        "quaternion" => {
            arity(args, 1, name)?;
            let n = size(args, 0, name)?;
            check_order(n, max_order)?;
            Group::quaternion(n)?
        }
        "sym" | "alt" => {
            arity(args, 1, name)?;
            let n = size(args, 0, name)?;
            let order = if name == "sym" { factorial(n) } else { (factorial(n) / 2).max(1) };
            check_order(order, max_order)?;
            if name == "sym" {
                Group::symmetric(n)?
            } else {
                Group::alternating(n)?
            }
        }
        "frobenius" => {
            arity(args, 3, name)?;
            let (p, q) = (size(args, 0, name)?, size(args, 1, name)?);
            check_order(p * q, max_order)?;
            Group::frobenius(p, q, int(args, 2, name)?)?
        }
        "direct" => {
            if args.len() < 2 {
                return Err(GroupError::Parse("direct takes at least 2 arguments".into()));
            }
            let mut acc = build(&args[0], max_order, base)?;
            for a in &args[1..] {
                let next = build(a, max_order, base)?;
                acc = Group::direct_product(&acc, &next, max_order)?;
            }
            acc
        }
        "semidirect" => {
            arity(args, 3, name)?;
            let n = build(&args[0], max_order, base)?;
            let h = build(&args[1], max_order, base)?;
            if !n.is_abelian() {
                return Err(GroupError::Parse("semidirect: the normal factor must be abelian".into()));
            }
            Group::power_semidirect(&n, &h, int(args, 2, name)?, max_order)?
        }
        "perm" => {
            let mut gens = Vec::new();
            for a in args {
                let Arg::Text(t) = a else {
                    return Err(GroupError::Parse("perm takes quoted permutation lists".into()));
                };
                gens.extend(parse_permutation_list(t)?);
            }
            Group::from_generators(&gens, max_order)?
        }
        "table" => {
            arity(args, 1, name)?;
            let Arg::Text(file) = &args[0] else {
                return Err(GroupError::Parse("table takes a quoted file path".into()));
            };
            let path = base.join(file);
            let text = std::fs::read_to_string(&path).map_err(|e| GroupError::Io(format!("{}: {e}", path.display())))?;
            let t: TableFile = serde_json::from_str(&text).map_err(|e| GroupError::Parse(format!("{}: {e}", path.display())))?;
            if t.mul.len() != t.order * t.order {
                return Err(GroupError::InvalidTable(format!("expected {} entries, found {}", t.order * t.order, t.mul.len())));
            }
            check_order(t.order, max_order)?;
            let rows: Vec<Vec<usize>> = t.mul.chunks(t.order.max(1)).map(|r| r.to_vec()).collect();
            Group::from_table(&rows)?
        }
        "sl2" | "gl2" => {
            arity(args, 1, name)?;
            let p = size(args, 0, name)?;
            let order = p * (p * p - 1) * if name == "gl2" { p - 1 } else { 1 };
            check_order(order, max_order)?;
            if name == "sl2" {
                Group::sl2(p)?
            } else {
                Group::gl2(p)?
            }
        }
        other => return Err(GroupError::Parse(format!("unknown constructor {other:?}"))),
    };
    check_order(group.order(), max_order)?;
    Ok(group)
}

/// Builds the group described by `spec`. Relative `table` paths resolve
/// against the working directory.
pub fn parse_group(spec: &str, max_order: usize) -> Result<Group> {
    parse_group_in(spec, max_order, Path::new("."))
}

/// As [`parse_group`], with relative `table` paths resolved against `base`.
pub fn parse_group_in(spec: &str, max_order: usize, base: &Path) -> Result<Group> {
    build(&parse(spec)?, max_order, base)
}

/// [`parse_group`] with the default order bound.
pub fn group(spec: &str) -> Result<Group> {
    parse_group(spec, DEFAULT_MAX_ORDER)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for (spec, order) in [
            ("cyclic(12)", 12),
            ("dihedral(8)", 8),
            ("sym(4)", 24),
            ("alt(5)", 60),
            ("quaternion(8)", 8),
            ("frobenius(7,3,2)", 21),
            ("direct(frobenius(7,3,2), alt(5))", 1260),
            ("direct(cyclic(2),cyclic(2),cyclic(3))", 12),
            ("semidirect(cyclic(9), cyclic(2), -1)", 18),
            ("perm(\"[(0 1),(0 1 2)]\")", 6),
            ("sl2(3)", 24),
            ("gl2(3)", 48),
        ] {
            assert_eq!(group(spec).unwrap().order(), order, "{spec}");
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(group("sym(8)"), Err(GroupError::OrderBoundExceeded { .. })));
        assert!(matches!(group("foo(3)"), Err(GroupError::Parse(_))));
        assert!(matches!(group("cyclic(3"), Err(GroupError::Parse(_))));
        assert!(matches!(group("cyclic(3) x"), Err(GroupError::Parse(_))));
        assert!(matches!(group("dihedral(7)"), Err(GroupError::Parse(_))));
        assert!(matches!(group("semidirect(sym(3), cyclic(2), 1)"), Err(GroupError::Parse(_))));
        assert!(matches!(group("frobenius(7,3,3)"), Err(GroupError::NotAHomomorphism { .. })));
        assert!(matches!(group("table(\"/nonexistent.json\")"), Err(GroupError::Io(_))));
    }

    #[test]
    fn table_files() {
        let dir = std::env::temp_dir().join(format!("hsigma-dsl-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let c3 = serde_json::json!({ "order": 3, "mul": [0, 1, 2, 1, 2, 0, 2, 0, 1] });
        std::fs::write(dir.join("c3.json"), c3.to_string()).unwrap();
        let g = parse_group_in("table(\"c3.json\")", 100, &dir).unwrap();
        assert_eq!(g.order(), 3);
        let bad = serde_json::json!({ "order": 2, "mul": [0, 1, 1, 1] });
        std::fs::write(dir.join("bad.json"), bad.to_string()).unwrap();
        assert!(parse_group_in("table(\"bad.json\")", 100, &dir).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn same_spec_same_table() {
        let a = group("direct(sym(3), cyclic(4))").unwrap();
        let b = group("direct(sym(3), cyclic(4))").unwrap();
        assert_eq!(a.table_bytes(), b.table_bytes());
    }
}
