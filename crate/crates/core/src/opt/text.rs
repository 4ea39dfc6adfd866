//! Plain-text program format; see `docs/lp-format.md` for the grammar.

use std::fmt::Write as _;

use super::{LinearProgram, ObjSense, Row, RowSense};
use crate::error::{bad, Result};
use crate::scalar::Scalar;

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !matches!(name, "minimize" | "maximize" | "bound")
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '[' | ']' | '-'))
}

fn write_terms(out: &mut String, terms: impl Iterator<Item = (usize, Scalar)>) {
    for (j, a) in terms {
        let _ = write!(out, " {a} x{j}");
    }
}

/// Serializes `p`. Rows with names outside `[A-Za-z0-9_.\[\]-]+` are
/// written as `r<index>`.
pub fn write_lp(p: &LinearProgram) -> String {
    let mut out = String::new();
    out.push_str(match p.sense {
        ObjSense::Minimize => "minimize:",
        ObjSense::Maximize => "maximize:",
    });
    write_terms(&mut out, p.cost.iter().cloned().enumerate());
    out.push('\n');
    for (i, row) in p.rows.iter().enumerate() {
        if valid_name(&row.name) {
            out.push_str(&row.name);
        } else {
            let _ = write!(out, "r{i}");
        }
        out.push(':');
        write_terms(&mut out, row.coeffs.iter().cloned());
        let _ = writeln!(out, " {} {}", row.sense, row.rhs);
    }
    for j in 0..p.num_vars() {
        let (l, u) = (&p.lower[j], &p.upper[j]);
        if l.as_ref().is_some_and(Scalar::is_zero) && u.is_none() {
            continue;
        }
        let l = l.as_ref().map_or("-inf".to_string(), Scalar::to_string);
        let u = u.as_ref().map_or("inf".to_string(), Scalar::to_string);
        let _ = writeln!(out, "bound: {l} <= x{j} <= {u}");
    }
    out
}

fn parse_var(tok: &str, line: usize) -> Result<usize> {
    tok.strip_prefix('x')
        .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()) && (d.len() == 1 || !d.starts_with('0')))
        .and_then(|d| d.parse().ok())
        .map_or_else(
            || bad(format!("line {line}: expected a variable like x3, got {tok:?}")),
            Ok,
        )
}

fn parse_scalar(tok: &str, line: usize) -> Result<Scalar> {
    tok.parse()
        .map_err(|e| crate::error::Error::BadInput(format!("line {line}: {e}")))
}

fn parse_terms(toks: &[&str], line: usize) -> Result<Vec<(usize, Scalar)>> {
    if !toks.len().is_multiple_of(2) {
        return bad(format!("line {line}: terms must be coefficient/variable pairs"));
    }
    toks.chunks(2)
        .map(|pair| Ok((parse_var(pair[1], line)?, parse_scalar(pair[0], line)?)))
        .collect()
}

fn parse_bound(tok: &str, infinite: &str, line: usize) -> Result<Option<Scalar>> {
    if tok == infinite {
        Ok(None)
    } else {
        parse_scalar(tok, line).map(Some)
    }
}

/// Parses the text format produced by [`write_lp`].
pub fn parse_lp(text: &str) -> Result<LinearProgram> {
    let mut program: Option<LinearProgram> = None;
    let mut bounded = std::collections::HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((head, rest)) = content.split_once(':') else {
            return bad(format!("line {line}: expected `name: ...`"));
        };
        let head = head.trim();
        let toks: Vec<&str> = rest.split_whitespace().collect();
        let Some(p) = program.as_mut() else {
            let sense = match head {
                "minimize" => ObjSense::Minimize,
                "maximize" => ObjSense::Maximize,
                _ => {
                    return bad(format!(
                        "line {line}: the first line must be `minimize:` or `maximize:`"
                    ))
                }
            };
            let terms = parse_terms(&toks, line)?;
            for (pos, (j, _)) in terms.iter().enumerate() {
                if *j != pos {
                    return bad(format!("line {line}: the objective must list x0, x1, ... in order"));
                }
            }
            program = Some(LinearProgram::new(sense, terms.into_iter().map(|(_, c)| c).collect()));
            continue;
        };
        if head == "bound" {
            let [lo, le1, var, le2, hi] = toks[..] else {
                return bad(format!("line {line}: expected `bound: lo <= xj <= hi`"));
            };
            if le1 != "<=" || le2 != "<=" {
                return bad(format!("line {line}: expected `bound: lo <= xj <= hi`"));
            }
            let j = parse_var(var, line)?;
            if j >= p.num_vars() {
                return bad(format!("line {line}: x{j} is not declared in the objective"));
            }
            if !bounded.insert(j) {
                return bad(format!("line {line}: x{j} already has a bound line"));
            }
            p.set_bounds(j, parse_bound(lo, "-inf", line)?, parse_bound(hi, "inf", line)?);
            continue;
        }
        if !valid_name(head) {
            return bad(format!("line {line}: invalid row name {head:?}"));
        }
        if toks.len() < 2 {
            return bad(format!("line {line}: row needs a sense and a right-hand side"));
        }
        let (terms, tail) = toks.split_at(toks.len() - 2);
        let sense = match tail[0] {
            ">=" => RowSense::Ge,
            "<=" => RowSense::Le,
            "=" => RowSense::Eq,
            other => return bad(format!("line {line}: unknown sense {other:?}")),
        };
        let coeffs = parse_terms(terms, line)?;
        p.rows.push(Row {
            name: head.to_string(),
            coeffs,
            sense,
            rhs: parse_scalar(tail[1], line)?,
        });
    }
    let Some(p) = program else {
        return bad("empty program: missing `minimize:` or `maximize:` line");
    };
    p.validate()?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut p = LinearProgram::new(
            ObjSense::Maximize,
            vec![Scalar::new(3, 2), Scalar::zero(), Scalar::from(-1)],
        );
        p.add_row(
            "cap",
            vec![(0, Scalar::one()), (2, Scalar::new(-1, 3))],
            RowSense::Le,
            Scalar::from(4),
        );
        p.add_row("eq", vec![], RowSense::Eq, Scalar::zero());
        p.set_bounds(1, None, Some(Scalar::from(7)));
        p.set_bounds(2, Some(Scalar::from(-2)), None);
        let text = write_lp(&p);
        assert_eq!(parse_lp(&text).unwrap(), p);
        assert!(text.starts_with("maximize: 3/2 x0 0 x1 -1 x2\ncap: 1 x0 -1/3 x2 <= 4\n"));
    }

    #[test]
    fn rejects_malformed() {
        for text in [
            "",
            "r: 1 x0 >= 1",
            "minimize: 1 x1",
            "minimize: 1 x0\nr: 1 x1 >= 1",
            "minimize: 1 x0\nr: 1 x0 => 1",
            "minimize: 1 x0\nr: 1 >= 1",
            "minimize: 1 x0\nbound: 2 <= x0 <= 1",
            "minimize: 1 x0\nbound: 0 <= x0\n",
            "minimize: 1 x0\nr: 1 x0 1 x0 >= 1",
            "minimize: 1 x00",
        ] {
            assert!(parse_lp(text).is_err(), "{text:?}");
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let p = parse_lp("# header\n\nminimize: 1 x0  # cost\nrow_1: 2 x0 >= 1/2\n").unwrap();
        assert_eq!(p.rows[0].rhs, Scalar::new(1, 2));
    }
}
