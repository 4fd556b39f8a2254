//! The `.wsc` text matrix format.
//!
//! ```text
//! l n t d
//! <row 0: n characters from {0,1}>
//! ...
//! <row l-1>
//! ```
//!
//! Row `i`, character `j` is coordinate `i` of codeword `j`. The file ends with a
//! newline and contains no other characters (no `\r`, no trailing blanks).

use crate::error::{Error, Result};
use crate::matrix::{CodeMatrix, CodeParams};

/// Renders the live columns of `m` with `(t, d)` in the header.
pub fn write_wsc(m: &CodeMatrix, params: CodeParams) -> String {
    let mut out = format!("{} {} {} {}\n", m.length(), m.live_count(), params.t, params.d);
    for i in 0..m.length() {
        out.push_str(&m.row_string(i));
        out.push('\n');
    }
    out
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses a `.wsc` document. Line numbers in errors are 1-based.
pub fn parse_wsc(text: &str) -> Result<(CodeMatrix, CodeParams)> {
    let body = text.strip_suffix('\n').ok_or_else(|| parse_err(1, "missing trailing newline"))?;
    let mut lines = body.split('\n');
    let header = lines.next().unwrap_or("");
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.len() != 4 {
        return Err(parse_err(1, format!("header must be `l n t d`, got {header:?}")));
    }
    let mut nums = [0usize; 4];
    for (slot, f) in nums.iter_mut().zip(&fields) {
        if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_err(1, format!("not a decimal integer: {f:?}")));
        }
        *slot = f.parse().map_err(|e| parse_err(1, format!("{f:?}: {e}")))?;
    }
    let [l, n, t, d] = nums;
    if l == 0 {
        return Err(parse_err(1, "length l must be >= 1"));
    }
    let params = CodeParams::new(t, d).map_err(|e| parse_err(1, e.to_string()))?;
    let mut m = CodeMatrix::zeros(l, n)?;
    let mut rows = 0;
    for (i, row) in lines.enumerate() {
        let lineno = i + 2;
        if i >= l {
            return Err(parse_err(lineno, format!("expected {l} rows, found more")));
        }
        if row.len() != n {
            return Err(parse_err(lineno, format!("row has {} characters, expected {n}", row.len())));
        }
        for (j, b) in row.bytes().enumerate() {
            match b {
                b'0' => {}
                b'1' => m.set(i, j, true),
                other => return Err(parse_err(lineno, format!("invalid character {:?} at column {j}", other as char))),
            }
        }
        rows += 1;
    }
    if rows != l {
        return Err(parse_err(rows + 2, format!("expected {l} rows, found {rows}")));
    }
    Ok((m, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_file() {
        let id = CodeMatrix::identity(4).unwrap();
        let text = write_wsc(&id, CodeParams::new(3, 3).unwrap());
        assert_eq!(text, "4 4 3 3\n1000\n0100\n0010\n0001\n");
        let (back, p) = parse_wsc(&text).unwrap();
        assert_eq!(back, id);
        assert_eq!(p, CodeParams { t: 3, d: 3 });
    }

    #[test]
    fn empty_matrix_has_blank_rows() {
        let m = CodeMatrix::zeros(2, 0).unwrap();
        let text = write_wsc(&m, CodeParams::new(2, 1).unwrap());
        assert_eq!(text, "2 0 2 1\n\n\n");
        assert_eq!(parse_wsc(&text).unwrap().0, m);
    }

    #[test]
    fn dead_columns_are_dropped() {
        let mut m = CodeMatrix::identity(3).unwrap();
        m.remove_column(0).unwrap();
        assert_eq!(write_wsc(&m, CodeParams::new(2, 1).unwrap()), "3 2 2 1\n00\n10\n01\n");
    }

    #[test]
    fn rejects_malformed() {
        let bad = [
            "2 2 2 1\n10\n01",       // no trailing newline
            "2 2 2 1\n10\n0x\n",     // bad char
            "2 2 2 1\n10\n01 \n",    // trailing blank
            "2 2 2 1\r\n10\n01\n",   // carriage return
            "2 2 2 1\n10\n",         // too few rows
            "2 2 2 1\n10\n01\n11\n", // too many rows
            "2 2 2 1\n100\n01\n",    // row too long
            "2 2 1 1\n10\n01\n",     // t < 2
            "2 2 2\n10\n01\n",       // short header
            "0 0 2 1\n",             // l = 0
            "2 2 +2 1\n10\n01\n",    // sign
        ];
        for b in bad {
            assert!(matches!(parse_wsc(b), Err(Error::Parse { .. })), "{b:?}");
        }
    }

    proptest! {
        #[test]
        fn round_trip_is_bit_exact(
            l in 1usize..80,
            n in 1usize..12,
            seed in any::<u64>(),
            t in 2usize..6,
            d in 1usize..5,
        ) {
            let m = crate::construct::sample_random_code(l, n, 0.5, seed).unwrap();
            let p = CodeParams::new(t, d).unwrap();
            let text = write_wsc(&m, p);
            let (back, bp) = parse_wsc(&text).unwrap();
            prop_assert_eq!(&back, &m);
            prop_assert_eq!(bp, p);
            prop_assert_eq!(write_wsc(&back, bp), text);
        }
    }
}
