//! Text formats: instances, PACE-style tree decompositions and treedepth
//! forests. All files label vertices (and instance colors) from 1.
//!
//! Instance files look like
//!
//! ```text
//! c optional comments
//! p fcc 3 1 2
//! n 1 1
//! n 2 2
//! n 3 1
//! e 1 2
//! ```

use std::fmt::Write as _;
use std::path::Path;

use fcc_core::decomp::{TreeDecomposition, TreedepthForest};
use fcc_core::{ColoredInstance, Graph};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 for errors about the whole document.
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Non-comment lines with their 1-based numbers, split on single spaces.
fn records<'a>(
    text: &'a str,
    comment: &'a str,
) -> impl Iterator<Item = Result<(usize, Vec<&'a str>), ParseError>> + 'a {
    text.split('\n').enumerate().filter_map(move |(i, raw)| {
        let line = i + 1;
        if raw.is_empty() || raw == comment.trim_end() || raw.starts_with(comment) {
            return None;
        }
        if !raw.is_ascii() {
            return Some(err(line, "non-ASCII character"));
        }
        if raw.contains('\r') {
            return Some(err(line, "carriage return; lines must end with LF only"));
        }
        let fields: Vec<&str> = raw.split(' ').collect();
        if fields.iter().any(|f| f.is_empty()) {
            return Some(err(line, "fields must be separated by single spaces"));
        }
        Some(Ok((line, fields)))
    })
}

fn number(line: usize, field: &str, what: &str) -> Result<usize, ParseError> {
    field.parse::<usize>().or_else(|_| {
        err(
            line,
            format!("{what} `{field}` is not a nonnegative integer"),
        )
    })
}

fn label(line: usize, field: &str, what: &str, max: usize) -> Result<usize, ParseError> {
    let x = number(line, field, what)?;
    if x == 0 || x > max {
        return err(line, format!("{what} {x} out of range 1..={max}"));
    }
    Ok(x - 1)
}

fn arity(line: usize, fields: &[&str], expect: usize) -> Result<(), ParseError> {
    if fields.len() != expect {
        return err(
            line,
            format!("expected {expect} fields, found {}", fields.len()),
        );
    }
    Ok(())
}

pub fn parse_instance_str(text: &str) -> Result<ColoredInstance, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut colors: Vec<Option<usize>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen_edges = std::collections::HashSet::new();
    let mut last_line = 0;
    for rec in records(text, "c ") {
        let (line, f) = rec?;
        last_line = line;
        match (f[0], header) {
            ("p", None) => {
                arity(line, &f, 5)?;
                if f[1] != "fcc" {
                    return err(line, format!("unknown problem `{}`, expected `fcc`", f[1]));
                }
                let n = number(line, f[2], "vertex count")?;
                let m = number(line, f[3], "edge count")?;
                let kappa = number(line, f[4], "color count")?;
                if n == 0 {
                    return err(line, "instance needs at least one vertex");
                }
                if kappa == 0 {
                    return err(line, "instance needs at least one color");
                }
                header = Some((n, m, kappa));
                colors = vec![None; n];
            }
            ("p", Some(_)) => return err(line, "duplicate header"),
            (_, None) => return err(line, "expected header `p fcc <n> <m> <kappa>` first"),
            ("n", Some((n, _, kappa))) => {
                arity(line, &f, 3)?;
                let v = label(line, f[1], "vertex", n)?;
                let c = label(line, f[2], "color", kappa)?;
                if colors[v].replace(c).is_some() {
                    return err(line, format!("vertex {} colored twice", v + 1));
                }
            }
            ("e", Some((n, m, _))) => {
                arity(line, &f, 3)?;
                let u = label(line, f[1], "vertex", n)?;
                let v = label(line, f[2], "vertex", n)?;
                if u == v {
                    return err(line, format!("self-loop at vertex {}", u + 1));
                }
                if u > v {
                    return err(line, "edge endpoints must be listed in increasing order");
                }
                if !seen_edges.insert((u, v)) {
                    return err(line, format!("duplicate edge {} {}", u + 1, v + 1));
                }
                if edges.len() == m {
                    return err(line, format!("more edge lines than the {m} in the header"));
                }
                edges.push((u, v));
            }
            (tag, Some(_)) => return err(line, format!("unknown line type `{tag}`")),
        }
    }
    let Some((n, m, kappa)) = header else {
        return err(0, "missing header `p fcc <n> <m> <kappa>`");
    };
    if edges.len() != m {
        return err(
            last_line,
            format!("header announces {m} edges, found {}", edges.len()),
        );
    }
    let colors: Vec<usize> = match colors.iter().position(Option::is_none) {
        Some(v) => return err(last_line, format!("vertex {} has no color line", v + 1)),
        None => colors.into_iter().flatten().collect(),
    };
    let mut used = vec![false; kappa];
    colors.iter().for_each(|&c| used[c] = true);
    if let Some(c) = used.iter().position(|&u| !u) {
        return err(last_line, format!("color {} is never used", c + 1));
    }
    let graph = Graph::new(n, edges).or_else(|e| err(0, e.to_string()))?;
    ColoredInstance::new(graph, colors, None).or_else(|e| err(0, e.to_string()))
}

/// Canonical text: header, one color line per vertex, edges in ascending order.
pub fn write_instance(instance: &ColoredInstance) -> String {
    let g = instance.graph();
    let mut out = String::new();
    writeln!(out, "p fcc {} {} {}", g.n(), g.m(), instance.kappa()).unwrap();
    for (v, &c) in instance.colors().iter().enumerate() {
        writeln!(out, "n {} {}", v + 1, c + 1).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Reads `s td <bags> <width+1> <n>`, `b <id> <vertices...>` and one
/// `<i> <j>` line per tree edge.
pub fn parse_td_str(text: &str, n: usize) -> Result<TreeDecomposition, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for rec in records(text, "c") {
        let (line, f) = rec?;
        match (f[0], header) {
            ("s", None) => {
                arity(line, &f, 5)?;
                if f[1] != "td" {
                    return err(line, format!("unknown solution type `{}`", f[1]));
                }
                let count = number(line, f[2], "bag count")?;
                let size = number(line, f[3], "bag size")?;
                let nv = number(line, f[4], "vertex count")?;
                if nv != n {
                    return err(
                        line,
                        format!("decomposition is for {nv} vertices, graph has {n}"),
                    );
                }
                header = Some((count, size));
                bags = vec![None; count];
            }
            ("s", Some(_)) => return err(line, "duplicate header"),
            (_, None) => return err(line, "expected header `s td <bags> <width+1> <n>` first"),
            ("b", Some((count, size))) => {
                if f.len() < 2 {
                    return err(line, "bag line needs an id");
                }
                let id = label(line, f[1], "bag", count)?;
                let bag = f[2..]
                    .iter()
                    .map(|x| label(line, x, "vertex", n))
                    .collect::<Result<Vec<_>, _>>()?;
                if bag.len() > size {
                    return err(
                        line,
                        format!("bag has {} vertices, header allows {size}", bag.len()),
                    );
                }
                if bags[id].replace(bag).is_some() {
                    return err(line, format!("bag {} listed twice", id + 1));
                }
            }
            (_, Some((count, _))) => {
                arity(line, &f, 2)?;
                let a = label(line, f[0], "bag", count)?;
                let b = label(line, f[1], "bag", count)?;
                edges.push((a, b));
            }
        }
    }
    let Some((_, size)) = header else {
        return err(0, "missing header `s td <bags> <width+1> <n>`");
    };
    let bags: Vec<Vec<usize>> = match bags.iter().position(Option::is_none) {
        Some(b) => return err(0, format!("bag {} is missing", b + 1)),
        None => bags.into_iter().flatten().collect(),
    };
    if bags.iter().map(Vec::len).max().unwrap_or(0) != size && !bags.is_empty() {
        return err(
            0,
            format!("header bag size {size} differs from the largest bag"),
        );
    }
    Ok(TreeDecomposition::new(bags, edges))
}

pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = String::new();
    let size = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    writeln!(out, "s td {} {} {}", td.bags.len(), size, n).unwrap();
    for (i, bag) in td.bags.iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(a, b) in &td.edges {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// One `<vertex> <parent-or-0>` line per vertex.
pub fn parse_forest_str(text: &str, n: usize) -> Result<TreedepthForest, ParseError> {
    let mut parent: Vec<Option<Option<usize>>> = vec![None; n];
    for rec in records(text, "c ") {
        let (line, f) = rec?;
        arity(line, &f, 2)?;
        let v = label(line, f[0], "vertex", n)?;
        let p = match number(line, f[1], "parent")? {
            0 => None,
            _ => Some(label(line, f[1], "parent", n)?),
        };
        if parent[v].replace(p).is_some() {
            return err(line, format!("vertex {} listed twice", v + 1));
        }
    }
    let parent: Vec<Option<usize>> = match parent.iter().position(Option::is_none) {
        Some(v) => return err(0, format!("vertex {} has no parent line", v + 1)),
        None => parent.into_iter().flatten().collect(),
    };
    TreedepthForest::new(parent).or_else(|e| err(0, e.to_string()))
}

pub fn write_forest(forest: &TreedepthForest) -> String {
    let mut out = String::new();
    for (v, p) in forest.parents().iter().enumerate() {
        writeln!(out, "{} {}", v + 1, p.map_or(0, |p| p + 1)).unwrap();
    }
    out
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn located(path: &Path) -> impl FnOnce(ParseError) -> CliError + '_ {
    move |error| CliError::Parse {
        path: path.to_path_buf(),
        error,
    }
}

pub fn parse_instance(path: &Path) -> Result<ColoredInstance, CliError> {
    parse_instance_str(&read(path)?).map_err(located(path))
}

pub fn parse_td(path: &Path, n: usize) -> Result<TreeDecomposition, CliError> {
    parse_td_str(&read(path)?, n).map_err(located(path))
}

pub fn parse_forest(path: &Path, n: usize) -> Result<TreedepthForest, CliError> {
    parse_forest_str(&read(path)?, n).map_err(located(path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use fcc_core::model::figure_one;

    #[test]
    fn roundtrip_figure() {
        let fig = figure_one();
        let text = write_instance(&fig);
        assert!(text.starts_with("p fcc 9 13 2\n"));
        let back = parse_instance_str(&text).unwrap();
        assert_eq!(back, fig);
        assert_eq!(write_instance(&back), text);
    }

    #[test]
    fn edge_count_mismatch() {
        let text = "p fcc 3 3 1\nn 1 1\nn 2 1\nn 3 1\ne 1 2\ne 2 3\n";
        let e = parse_instance_str(text).unwrap_err();
        assert!(e.message.contains("3 edges, found 2"), "{e}");
    }

    #[test]
    fn self_loop() {
        let text = "p fcc 2 1 1\nn 1 1\nn 2 1\ne 2 2\n";
        let e = parse_instance_str(text).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("self-loop"));
    }

    #[test]
    fn malformed_lines_carry_numbers() {
        let cases = [
            ("n 1 1\n", 1, "header"),
            (
                "c hi\np fcc 2 0 2\nn 1 1\nn 2 1\n",
                4,
                "color 2 is never used",
            ),
            ("p fcc 2 0 1\nn 1 1\nn  2 1\n", 3, "single spaces"),
            ("p fcc 2 0 1\nn 1 1\nn 3 1\n", 3, "out of range"),
            ("p fcc 2 0 1\nn 1 1\n", 2, "vertex 2 has no color"),
            ("p fcc 2 1 1\nn 1 1\nn 2 1\ne 2 1\n", 4, "increasing"),
            ("p fcc 2 0 1\r\nn 1 1\n", 1, "carriage return"),
            ("p fcc 2 0 1\nx 1\n", 2, "unknown line type"),
        ];
        for (text, line, needle) in cases {
            let e = parse_instance_str(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
            assert!(e.message.contains(needle), "{text:?}: {e}");
        }
    }

    #[test]
    fn td_and_forest_roundtrip() {
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]);
        let text = write_td(&td, 3);
        assert_eq!(text, "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
        assert_eq!(parse_td_str(&text, 3).unwrap(), td);
        assert!(parse_td_str(&text, 4).is_err());

        let f = TreedepthForest::new(vec![None, Some(0), Some(1)]).unwrap();
        let text = write_forest(&f);
        assert_eq!(text, "1 0\n2 1\n3 2\n");
        assert_eq!(parse_forest_str(&text, 3).unwrap().parents(), f.parents());
        assert!(parse_forest_str("1 2\n2 1\n", 2).is_err());
    }
}
