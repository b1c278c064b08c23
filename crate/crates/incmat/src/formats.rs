//! Text formats: matrices, subset families and subspace lists.

use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use incmat_core::qlat::{Grassmannian, SubspaceCode};
use incmat_core::sets::{SetFamily, Subset};
use incmat_core::{ExactMatrix, FieldCtx};

/// Writes `incmat <rows> <cols> <field>` followed by one `i j v` line per
/// nonzero entry, row-major.
pub fn write_matrix<W: Write + ?Sized>(out: &mut W, m: &ExactMatrix) -> Result<()> {
    writeln!(out, "incmat {} {} {}", m.rows(), m.cols(), m.field())?;
    let f = m.field();
    for (i, j, v) in m.nonzero_entries() {
        writeln!(out, "{} {} {}", i, j, f.format(&v))?;
    }
    Ok(())
}

pub fn read_matrix<R: Read>(input: R) -> Result<ExactMatrix> {
    let mut lines = BufReader::new(input).lines();
    let header = lines.next().context("empty matrix file")??;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "incmat" {
        bail!("bad matrix header {:?}", header);
    }
    let rows: usize = parts[1].parse().context("row count")?;
    let cols: usize = parts[2].parse().context("column count")?;
    let field = FieldCtx::parse(parts[3])?;
    let mut m = ExactMatrix::zeros(rows, cols, &field);
    for (lineno, line) in lines.enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(i), Some(j), Some(v), None) = (it.next(), it.next(), it.next(), it.next()) else {
            bail!("line {}: expected `i j v`", lineno + 2);
        };
        let i: usize = i.parse().with_context(|| format!("line {}", lineno + 2))?;
        let j: usize = j.parse().with_context(|| format!("line {}", lineno + 2))?;
        if i >= rows || j >= cols {
            bail!("line {}: entry ({}, {}) outside {}x{}", lineno + 2, i, j, rows, cols);
        }
        m.set(i, j, field.parse_elem(v)?)?;
    }
    Ok(m)
}

/// One subset per line as comma-separated elements (`1,3,7`); blank lines
/// and `#` comments are skipped. An empty subset is written as `-`.
pub fn parse_family(text: &str, n: usize, r: usize) -> Result<SetFamily> {
    let mut sets = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let elems = if line == "-" {
            Vec::new()
        } else {
            line.split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .with_context(|| format!("line {}: bad subset {:?}", lineno + 1, line))?
        };
        let mut sorted = elems.clone();
        sorted.sort_unstable();
        let set = Subset::new(n, &sorted).with_context(|| format!("line {}", lineno + 1))?;
        if set.len() != r {
            bail!("line {}: {:?} has {} elements, expected {}", lineno + 1, line, set.len(), r);
        }
        sets.push(set);
    }
    Ok(SetFamily::from_subsets(n, r, &sets)?)
}

pub fn format_family(family: &SetFamily) -> String {
    let mut out = String::new();
    for s in family.subsets() {
        let e: Vec<String> = s.elements().iter().map(|x| x.to_string()).collect();
        out.push_str(if e.is_empty() { "-" } else { "" });
        out.push_str(&e.join(","));
        out.push('\n');
    }
    out
}

/// One subspace per line as `p1,...,pr|f1 f2 ...`: pivot columns, then
/// the filling row-major as element strings of `F_q`.
pub fn parse_subspaces(text: &str, g: &Grassmannian) -> Result<Vec<usize>> {
    let field = g.field();
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (piv, fill) = line.split_once('|').with_context(|| format!("line {}: missing `|`", lineno + 1))?;
        let pivots: Vec<usize> = if piv.trim().is_empty() {
            Vec::new()
        } else {
            piv.split(',')
                .map(|t| t.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .with_context(|| format!("line {}: bad pivots", lineno + 1))?
        };
        let mut values = Vec::new();
        for tok in fill.split_whitespace() {
            match field.parse_elem(tok)? {
                incmat_core::Ffe::Finite(c) => values.push(c),
                incmat_core::Ffe::Rational(_) => unreachable!("subspaces live over finite fields"),
            }
        }
        let mut filling = Vec::with_capacity(pivots.len());
        let mut at = 0;
        for (i, &p) in pivots.iter().enumerate() {
            let len = p.saturating_sub(i + 1);
            if at + len > values.len() {
                bail!("line {}: filling too short", lineno + 1);
            }
            filling.push(values[at..at + len].to_vec());
            at += len;
        }
        if at != values.len() {
            bail!("line {}: filling has {} values, expected {}", lineno + 1, values.len(), at);
        }
        let code = SubspaceCode::new(g.n(), g.q(), pivots, filling).with_context(|| format!("line {}", lineno + 1))?;
        if code.r() != g.r() {
            bail!("line {}: subspace of dimension {}, expected {}", lineno + 1, code.r(), g.r());
        }
        out.push(g.index(&code));
    }
    Ok(out)
}

pub fn format_subspace(code: &SubspaceCode) -> String {
    code.to_string()
}

/// `--remove` values: an inline index list such as `0,4,17` (or `none`),
/// otherwise a path to a file.
pub enum RemoveSpec {
    Indices(Vec<usize>),
    File(String),
}

pub fn parse_remove(arg: &str) -> Result<RemoveSpec> {
    let t = arg.trim();
    if t.is_empty() || t == "none" {
        return Ok(RemoveSpec::Indices(Vec::new()));
    }
    if t.chars().all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace()) && !Path::new(t).exists() {
        let idx = t
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()?;
        return Ok(RemoveSpec::Indices(idx));
    }
    Ok(RemoveSpec::File(t.to_string()))
}

pub fn read_text(path: &str) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_roundtrip() {
        for fs in ["q0", "gf2", "gf3^2"] {
            let f = FieldCtx::parse(fs).unwrap();
            let m = ExactMatrix::from_int_fn(3, 4, &f, |i, j| (i as i64 - j as i64) * (j as i64 + 1));
            let mut buf = Vec::new();
            write_matrix(&mut buf, &m).unwrap();
            let back = read_matrix(&buf[..]).unwrap();
            assert_eq!(back, m);
        }
        let text = "incmat 2 2 q0\n0 1 -3/4\n";
        let m = read_matrix(text.as_bytes()).unwrap();
        assert_eq!(m.get(0, 1), m.field().rational(-3, 4).unwrap());
        assert!(read_matrix("incmat 2 2 q0\n2 0 1\n".as_bytes()).is_err());
        assert!(read_matrix("matrix 2 2 q0\n".as_bytes()).is_err());
    }

    #[test]
    fn family_roundtrip() {
        let fam = parse_family("1,3\n# comment\n\n2,4\n", 5, 2).unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(format_family(&fam), "1,3\n2,4\n");
        assert!(parse_family("1,2,3\n", 5, 2).is_err());
        assert!(parse_family("1,9\n", 5, 2).is_err());
    }

    #[test]
    fn subspace_lines() {
        let g = Grassmannian::new(4, 2, 3).unwrap();
        let idx = parse_subspaces("3,4|1 2 0 1\n1,2|\n", &g).unwrap();
        let c = g.code(idx[0]);
        assert_eq!(format_subspace(&c), "3,4|1 2 0 1");
        assert_eq!(idx[1], 0);
        assert!(parse_subspaces("3,4|1 2\n", &g).is_err());
        assert!(parse_subspaces("3|1 2\n", &g).is_err());
    }

    #[test]
    fn remove_specs() {
        assert!(matches!(parse_remove("0, 5,7").unwrap(), RemoveSpec::Indices(v) if v == vec![0, 5, 7]));
        assert!(matches!(parse_remove("none").unwrap(), RemoveSpec::Indices(v) if v.is_empty()));
        assert!(matches!(parse_remove("fam.txt").unwrap(), RemoveSpec::File(_)));
    }
}
