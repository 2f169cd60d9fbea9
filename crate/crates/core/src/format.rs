//! Plain-text matrix files.
//!
//! ```text
//! q rows cols
//! p m c0 .. cm        (extension fields only)
//! a00 a01 ...         (rows lines of cols canonical elements)
//! ```

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{make_field, Field, FieldElement};
use crate::linalg::Matrix;

pub fn write_matrix(m: &Matrix) -> String {
    let f = m.field();
    let mut out = format!("{} {} {}\n", f.order(), m.rows(), m.cols());
    if f.degree() > 1 {
        out.push_str(&format!("{f}\n"));
    }
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn numbers(line: usize, text: &str) -> Result<Vec<u64>> {
    text.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| parse_err(line, format!("{t:?} is not a non-negative integer"))))
        .collect()
}

pub fn read_matrix(text: &str) -> Result<Matrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty());
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let head = numbers(hl, header)?;
    let [q, rows, cols] = head[..] else {
        return Err(parse_err(hl, format!("header needs \"q rows cols\", got {} fields", head.len())));
    };
    let prime = make_field(q).map_err(|e| parse_err(hl, e.to_string()))?;
    let field = if prime.degree() > 1 {
        let (fl, field_line) = lines.next().ok_or_else(|| parse_err(hl + 1, "missing field line \"p m c0 .. cm\""))?;
        let f: Field = field_line.parse().map_err(|e: Error| parse_err(fl, e.to_string()))?;
        if f.order() as u64 != q {
            return Err(parse_err(fl, format!("field line describes GF({}), header says q = {q}", f.order())));
        }
        Arc::new(f)
    } else {
        prime
    };
    let mut data: Vec<Vec<FieldElement>> = Vec::with_capacity(rows as usize);
    for (ln, text) in lines {
        if data.len() as u64 == rows {
            return Err(parse_err(ln, format!("more than {rows} rows")));
        }
        let vals = numbers(ln, text)?;
        if vals.len() as u64 != cols {
            return Err(parse_err(ln, format!("expected {cols} entries, got {}", vals.len())));
        }
        let row = vals
            .into_iter()
            .map(|v| field.element(v).map_err(|e| parse_err(ln, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        data.push(row);
    }
    if (data.len() as u64) < rows {
        return Err(parse_err(text.lines().count() + 1, format!("expected {rows} rows, got {}", data.len())));
    }
    Matrix::from_rows(&field, cols as usize, &data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_prime_and_extension() {
        for q in [3u64, 4, 9, 27] {
            let f = make_field(q).unwrap();
            let rows: Vec<Vec<u32>> = (0..3).map(|i| (0..5).map(|j| ((i * 5 + j) % q) as u32).collect()).collect();
            let m = Matrix::from_rows(&f, 5, &rows).unwrap();
            let text = write_matrix(&m);
            assert_eq!(read_matrix(&text).unwrap(), m);
        }
        assert!(write_matrix(&Matrix::zeros(&make_field(9).unwrap(), 0, 2)).starts_with("9 0 2\n3 2 1 0 1\n"));
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = read_matrix("3 2 2\n1 2\n1 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = read_matrix("3 2 2\n1 2 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = read_matrix("3 2 2\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = read_matrix("6 1 1\n0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = read_matrix("4 1 1\n2 2 1 0 1\n0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(read_matrix("").is_err());
    }
}
