//! The `.cay` table format: a line holding `n`, then `n` rows of `n`
//! whitespace-separated zero-based indices. Row `g`, column `h` holds `g h`.

use std::path::Path;

use super::FiniteGroup;
use crate::error::{Error, Result};

pub fn parse_cay(text: &str, path: &Path) -> Result<FiniteGroup> {
    let bad = |line: usize, column: usize, message: String| Error::BadFile {
        path: path.to_path_buf(),
        line,
        column,
        message,
    };
    let mut lines = text.lines().enumerate();
    let n = match lines.next() {
        None => return Err(bad(1, 1, "missing order line".into())),
        Some((i, l)) if l.trim().is_empty() => return Err(bad(i + 1, 1, "first line must hold the order".into())),
        Some((i, l)) => {
            let t = l.trim();
            let col = l.find(t).unwrap_or(0) + 1;
            let n: usize = t
                .parse()
                .map_err(|_| bad(i + 1, col, format!("expected the order, found `{t}`")))?;
            if n == 0 {
                return Err(bad(i + 1, col, "order must be positive".into()));
            }
            n
        }
    };
    let mut table = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (i, l) in lines {
        if l.trim().is_empty() {
            continue;
        }
        if rows == n {
            return Err(bad(i + 1, 1, format!("extra row beyond the {n} expected")));
        }
        let mut count = 0;
        let mut offset = 0;
        for tok in l.split_whitespace() {
            let col = l[offset..].find(tok).unwrap() + offset + 1;
            offset = col - 1 + tok.len();
            let v: usize = tok
                .parse()
                .map_err(|_| bad(i + 1, col, format!("`{tok}` is not an index")))?;
            if v >= n {
                return Err(bad(i + 1, col, format!("index {v} out of range 0..{n}")));
            }
            count += 1;
            if count > n {
                return Err(bad(i + 1, col, format!("row has more than {n} entries")));
            }
            table.push(v);
        }
        if count < n {
            return Err(bad(i + 1, l.len() + 1, format!("row has {count} entries, expected {n}")));
        }
        rows += 1;
    }
    if rows < n {
        return Err(bad(text.lines().count() + 1, 1, format!("found {rows} rows, expected {n}")));
    }
    FiniteGroup::from_table(n, table)
}

pub fn write_cay(g: &FiniteGroup) -> String {
    let n = g.order();
    let mut out = format!("{n}\n");
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| g.mul(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<FiniteGroup> {
        parse_cay(s, Path::new("t.cay"))
    }

    #[test]
    fn roundtrip_q8() {
        let q = FiniteGroup::quaternion8();
        let back = parse(&write_cay(&q)).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn reports_position_of_bad_token() {
        let err = parse("2\n0 1\n1 x\n").unwrap_err();
        match err {
            Error::BadFile { line, column, .. } => assert_eq!((line, column), (3, 3)),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn reports_short_row_and_range() {
        assert!(matches!(parse("2\n0 1\n1\n"), Err(Error::BadFile { line: 3, .. })));
        assert!(matches!(parse("2\n0 1\n1 2\n"), Err(Error::BadFile { line: 3, column: 3, .. })));
        assert!(matches!(parse("2\n0 1\n"), Err(Error::BadFile { .. })));
        assert!(matches!(parse("two\n"), Err(Error::BadFile { line: 1, .. })));
    }

    #[test]
    fn valid_table_with_broken_axioms_is_not_a_group() {
        assert!(matches!(parse("2\n0 1\n1 1\n"), Err(Error::NotAGroup(_))));
    }
}
