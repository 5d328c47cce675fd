//! TRI-v1 text format.
//!
//! ```text
//! tri v1 <tet_count>
//! t<i>: <g0> <g1> <g2> <g3>
//! ```
//!
//! Each `<gj>` is `-` for a boundary face or `<k>/<p>`, where `<p>` lists the
//! images of vertices 0..3. Everything after `#` on a line is a comment.

use std::fmt::Write;

use super::{Gluing, Perm, TriError, Triangulation};

fn syntax(line: usize, message: impl Into<String>) -> TriError {
    TriError::Syntax { line, message: message.into() }
}

pub fn parse_triangulation(text: &str) -> Result<Triangulation, TriError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| syntax(1, "missing `tri v1` header"))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("tri") || words.next() != Some("v1") {
        return Err(syntax(hline, "expected `tri v1 <tet_count>`"));
    }
    let n: usize = words
        .next()
        .and_then(|w| w.parse().ok())
        .ok_or_else(|| syntax(hline, "bad tetrahedron count"))?;
    if words.next().is_some() {
        return Err(syntax(hline, "trailing tokens after tetrahedron count"));
    }

    let mut gluings = Vec::with_capacity(n);
    for expected in 0..n {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| syntax(hline, format!("expected {n} tetrahedron lines, found {expected}")))?;
        let (label, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax(lno, "expected `t<i>:`"))?;
        let index: usize = label
            .strip_prefix('t')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| syntax(lno, format!("bad tetrahedron label `{label}`")))?;
        if index != expected {
            return Err(syntax(lno, format!("expected t{expected}, found t{index}")));
        }
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        if tokens.len() != 4 {
            return Err(syntax(lno, format!("expected 4 face entries, found {}", tokens.len())));
        }
        let mut row = [None; 4];
        for (f, tok) in tokens.iter().enumerate() {
            if *tok == "-" {
                continue;
            }
            let (k, p) = tok
                .split_once('/')
                .ok_or_else(|| syntax(lno, format!("bad face entry `{tok}`")))?;
            let target: usize = k.parse().map_err(|_| syntax(lno, format!("bad target `{k}`")))?;
            let perm: Perm = p.parse().map_err(|_| syntax(lno, format!("bad permutation `{p}`")))?;
            if target >= n {
                return Err(TriError::IndexOutOfRange { tet: expected, face: f as u8, target });
            }
            row[f] = Some(Gluing { tet: target, perm });
        }
        gluings.push(row);
    }
    if let Some((lno, _)) = lines.next() {
        return Err(syntax(lno, "unexpected content after last tetrahedron"));
    }
    Triangulation::from_gluings(gluings)
}

pub fn serialize(t: &Triangulation) -> String {
    let mut out = String::new();
    writeln!(out, "tri v1 {}", t.tet_count()).unwrap();
    for (i, row) in t.gluings().iter().enumerate() {
        write!(out, "t{i}:").unwrap();
        for g in row {
            match g {
                None => out.push_str(" -"),
                Some(g) => write!(out, " {}/{}", g.tet, g.perm).unwrap(),
            }
        }
        out.push('\n');
    }
    out
}
