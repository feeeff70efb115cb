//! FIMI `.dat` transaction files: one object per line, whitespace-separated
//! non-negative integer item labels.
//!
//! Line `k` (1-based) is object `k`. A line with no labels is an object with
//! no items; a trailing newline does not start a new object. CRLF is accepted.

use std::fmt::Write as _;
use std::path::Path;

use prince_core::TransactionContext;

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: `{token}` is not a non-negative integer item label")]
    BadToken { line: usize, token: String },
    #[error("input is not valid UTF-8 (after byte {valid_up_to})")]
    NotUtf8 { valid_up_to: usize },
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
}

pub fn parse(text: &str) -> Result<TransactionContext, ParseError> {
    let mut objects = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let labels = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>().map_err(|_| ParseError::BadToken {
                    line: idx + 1,
                    token: tok.to_owned(),
                })
            })
            .collect::<Result<Vec<u32>, _>>()?;
        objects.push(labels);
    }
    Ok(TransactionContext::from_transactions(objects))
}

pub fn parse_bytes(bytes: &[u8]) -> Result<TransactionContext, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|e| ParseError::NotUtf8 {
        valid_up_to: e.valid_up_to(),
    })?;
    parse(text)
}

pub fn read(path: &Path) -> Result<TransactionContext, ReadError> {
    let shown = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|source| ReadError::Io {
        path: shown.clone(),
        source,
    })?;
    parse_bytes(&bytes).map_err(|source| ReadError::Parse { path: shown, source })
}

/// Renders `ctx` with its external labels, one newline-terminated line per
/// object.
pub fn write(ctx: &TransactionContext) -> String {
    let mut out = String::new();
    for o in 0..ctx.num_objects() {
        let items = ctx.object_items(o).expect("object in range");
        let mut first = true;
        for label in ctx.labels_of(&items) {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{label}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use prince_core::Itemset;

    #[test]
    fn running_example_parses() {
        let ctx = parse("1 3 4\n2 3 5\n1 2 3 5\n2 5\n1 2 3 5").unwrap();
        assert_eq!((ctx.num_objects(), ctx.num_items()), (5, 5));
        assert_eq!(ctx.labels(), &[1, 2, 3, 4, 5]);
    }

    #[test]
    fn empty_and_duplicates() {
        let empty = parse("").unwrap();
        assert_eq!((empty.num_objects(), empty.num_items()), (0, 0));
        let dup = parse("7 7 7").unwrap();
        assert_eq!((dup.num_objects(), dup.num_items()), (1, 1));
        assert_eq!(dup.labels(), &[7]);
    }

    #[test]
    fn blank_lines_and_crlf() {
        let ctx = parse("\n1\r\n  \n1 2\n").unwrap();
        assert_eq!(ctx.num_objects(), 4);
        assert_eq!(ctx.object_items(0).unwrap(), Itemset::empty());
        assert_eq!(ctx.object_items(3).unwrap(), Itemset::from([0, 1]));
    }

    #[test]
    fn bad_token_reports_line() {
        match parse("1 2\n3 x4\n") {
            Err(ParseError::BadToken { line, token }) => assert_eq!((line, token.as_str()), (2, "x4")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("-1"), Err(ParseError::BadToken { line: 1, .. })));
        assert!(matches!(
            parse_bytes(b"1 \xff"),
            Err(ParseError::NotUtf8 { valid_up_to: 2 })
        ));
    }

    #[test]
    fn worst_case_round_trip() {
        let one = TransactionContext::worst_case(1).unwrap();
        assert_eq!(write(&one), "\n1\n");
        assert_eq!(parse(&write(&one)).unwrap(), one);
        let four = TransactionContext::worst_case(4).unwrap();
        assert_eq!(write(&four), "2 3 4\n1 3 4\n1 2 4\n1 2 3\n1 2 3 4\n");
        assert_eq!(parse(&write(&four)).unwrap(), four);
    }
}
