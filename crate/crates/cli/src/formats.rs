//! Text formats: integer sets, residue sets, uniform set-cover instances and
//! solution files. Lines starting with `#` are comments everywhere.

use std::fmt::Write as _;

use apcover_core::below::TuscInstance;
use apcover_core::zp::ZpInstance;
use apcover_core::{Ap, BigInt, Instance};

#[derive(Debug)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

type Parsed<T> = Result<T, ParseError>;

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn integer(token: &str, line: usize) -> Parsed<BigInt> {
    token
        .parse()
        .map_err(|_| ParseError(format!("line {line}: not an integer: {token:?}")))
}

fn count<T: std::str::FromStr>(token: &str, line: usize, what: &str) -> Parsed<T> {
    token
        .parse()
        .map_err(|_| ParseError(format!("line {line}: {what} must be a non-negative integer, got {token:?}")))
}

pub fn parse_instance(text: &str) -> Parsed<Instance> {
    let mut values = Vec::new();
    for (line, l) in content_lines(text) {
        for token in l.split_whitespace() {
            values.push(integer(token, line)?);
        }
    }
    Instance::new(values).map_err(|e| ParseError(e.to_string()))
}

pub fn print_instance(x: &Instance, header: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(h) = header {
        for l in h.lines() {
            let _ = writeln!(out, "# {l}");
        }
    }
    let body: Vec<String> = x.elements().iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "{}", body.join(" "));
    out
}

fn key_value<'a>(token: &'a str, key: &str, line: usize) -> Parsed<&'a str> {
    token
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| ParseError(format!("line {line}: expected {key}=<value>, got {token:?}")))
}

pub fn parse_zp_instance(text: &str) -> Parsed<ZpInstance> {
    let mut lines = content_lines(text);
    let (line, head) = lines
        .next()
        .ok_or_else(|| ParseError("missing p=<prime> line".into()))?;
    let p: u64 = count(key_value(head, "p", line)?, line, "p")?;
    let mut residues = Vec::new();
    for (line, l) in lines {
        for token in l.split_whitespace() {
            residues.push(count::<u64>(token, line, "a residue")?);
        }
    }
    ZpInstance::new(p, residues).map_err(|e| ParseError(e.to_string()))
}

pub fn print_zp_instance(z: &ZpInstance) -> String {
    let body: Vec<String> = z.elements().iter().map(ToString::to_string).collect();
    format!("p={}\n{}\n", z.p(), body.join(" "))
}

/// A uniform instance and the `k` from its header.
pub fn parse_tusc(text: &str) -> Parsed<(TuscInstance, usize)> {
    let mut lines = content_lines(text);
    let (line, head) = lines
        .next()
        .ok_or_else(|| ParseError("missing n=<int> t=<int> k=<int> line".into()))?;
    let tokens: Vec<&str> = head.split_whitespace().collect();
    if tokens.len() != 3 {
        return Err(ParseError(format!("line {line}: expected n=<int> t=<int> k=<int>")));
    }
    let n = count(key_value(tokens[0], "n", line)?, line, "n")?;
    let t = count(key_value(tokens[1], "t", line)?, line, "t")?;
    let k = count(key_value(tokens[2], "k", line)?, line, "k")?;
    let mut sets = Vec::new();
    for (line, l) in lines {
        let set = l
            .split_whitespace()
            .map(|tok| count::<usize>(tok, line, "an element index"))
            .collect::<Parsed<Vec<_>>>()?;
        if let Some(&e) = set.iter().find(|&&e| e >= n) {
            return Err(ParseError(format!("line {line}: index {e} outside [0, {n})")));
        }
        sets.push(set);
    }
    let inst = TuscInstance::new(n, t, sets).map_err(|e| ParseError(e.to_string()))?;
    Ok((inst, k))
}

/// One progression per line: `first diff len`.
pub fn parse_solution(text: &str) -> Parsed<Vec<Ap>> {
    content_lines(text)
        .map(|(line, l)| {
            let tokens: Vec<&str> = l.split_whitespace().collect();
            let [first, diff, len] = tokens[..] else {
                return Err(ParseError(format!("line {line}: expected `first diff len`")));
            };
            let (first, diff) = (integer(first, line)?, integer(diff, line)?);
            let len: usize = count(len, line, "len")?;
            if len == 1 {
                return Ok(Ap::singleton(first));
            }
            Ap::new(first, diff, len).map_err(|e| ParseError(format!("line {line}: {e}")))
        })
        .collect()
}

pub fn print_solution(aps: &[Ap]) -> String {
    aps.iter()
        .map(|a| format!("{} {} {}\n", a.first(), a.diff(), a.len()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_round_trip() {
        let x = parse_instance("# demo\n9 0 4\n  6 7\n8\n").unwrap();
        assert_eq!(x, Instance::from_i64s(&[0, 4, 6, 7, 8, 9]).unwrap());
        assert_eq!(parse_instance(&print_instance(&x, Some("a\nb"))).unwrap(), x);
        assert!(parse_instance("1 2 1").is_err());
        assert!(parse_instance("1 x").unwrap_err().0.contains("line 1"));
        let big = parse_instance("-123456789012345678901234567890 5").unwrap();
        assert_eq!(parse_instance(&print_instance(&big, None)).unwrap(), big);
    }

    #[test]
    fn zp_files() {
        let z = parse_zp_instance("# c\np=11\n0 1 2\n4\n").unwrap();
        assert_eq!((z.p(), z.elements()), (11, &[0, 1, 2, 4][..]));
        assert_eq!(parse_zp_instance(&print_zp_instance(&z)).unwrap(), z);
        assert!(parse_zp_instance("p=9\n1").is_err());
        assert!(parse_zp_instance("p=7\n7").is_err());
        assert!(parse_zp_instance("q=7\n1").is_err());
    }

    #[test]
    fn tusc_files() {
        let (inst, k) = parse_tusc("n=6 t=2 k=1\n0 1 2\n3 4 5\n").unwrap();
        assert_eq!((inst.n(), inst.t(), k), (6, 2, 1));
        assert_eq!(inst.explicit_sets().len(), 2);
        assert!(parse_tusc("n=3 t=2 k=0\n0 3\n").is_err());
        assert!(parse_tusc("n=3 t=2\n").is_err());
    }

    #[test]
    fn solution_files() {
        let aps = parse_solution("0 4 2\n6 1 4\n# c\n5 0 1\n").unwrap();
        assert_eq!(aps.len(), 3);
        assert_eq!(parse_solution(&print_solution(&aps)).unwrap(), aps);
        assert!(parse_solution("0 4\n").is_err());
        assert!(parse_solution("0 0 3\n").is_err());
    }
}
