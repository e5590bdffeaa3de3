//! Parsing and serialization of design matrices.
//!
//! Two input formats are accepted — whitespace text and JSON — and four
//! output formats are produced: text, JSON, CSV, and a LaTeX pmatrix.
//! Text carries no name table, so its round trip preserves dimensions and
//! cells but drops names; the JSON round trip is a full identity.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cod::{CodMatrix, Entry, Sign};
use crate::f2vec::F2Vec;
use crate::{CodError, Result};

/// Output (and for the first two, input) encodings of a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixFormat {
    Text,
    Json,
    Csv,
    Latex,
}

impl FromStr for MatrixFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "text" => Ok(MatrixFormat::Text),
            "json" => Ok(MatrixFormat::Json),
            "csv" => Ok(MatrixFormat::Csv),
            "latex" => Ok(MatrixFormat::Latex),
            other => Err(format!("unknown format {other:?} (expected text|json|csv|latex)")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct WireCell {
    v: u32,
    s: i8,
    c: bool,
}

#[derive(Serialize, Deserialize)]
struct WireMatrix {
    p: usize,
    n: usize,
    k: u32,
    cells: Vec<Vec<Option<WireCell>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<BTreeMap<String, String>>,
}

/// Serializes a matrix in the requested format.
pub fn serialize(m: &CodMatrix, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::Text => m.to_string(),
        MatrixFormat::Json => to_json(m),
        MatrixFormat::Csv => to_csv(m),
        MatrixFormat::Latex => to_latex(m),
    }
}

fn to_json(m: &CodMatrix) -> String {
    let cells = m
        .rows()
        .map(|row| {
            row.iter()
                .map(|e| match e {
                    Entry::Zero => None,
                    Entry::Var { id, sign, conj } => Some(WireCell {
                        v: *id,
                        s: sign.as_i64() as i8,
                        c: *conj,
                    }),
                })
                .collect()
        })
        .collect();
    let wire = WireMatrix {
        p: m.p(),
        n: m.n(),
        k: m.k(),
        cells,
        names: m.names().map(|names| {
            names
                .iter()
                .map(|(id, name)| (id.to_string(), name.to_string()))
                .collect()
        }),
    };
    serde_json::to_string(&wire).expect("matrix serialization cannot fail")
}

fn to_csv(m: &CodMatrix) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(|e| format!("\"{e}\"")).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

fn latex_entry(e: &Entry) -> String {
    match e {
        Entry::Zero => "0".to_string(),
        Entry::Var { id, sign, conj } => format!(
            "{}z_{{{id}}}{}",
            if *sign == Sign::Minus { "-" } else { "" },
            if *conj { "^{*}" } else { "" }
        ),
    }
}

fn to_latex(m: &CodMatrix) -> String {
    let mut out = String::from("\\begin{pmatrix}\n");
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(latex_entry).collect();
        out.push_str(&line.join(" & "));
        out.push_str(" \\\\\n");
    }
    out.push_str("\\end{pmatrix}\n");
    out
}

/// Parses the whitespace text format. Errors carry the 1-based line and
/// column of the offending token.
pub fn parse_text(input: &str) -> Result<CodMatrix> {
    let mut rows: Vec<Vec<Entry>> = Vec::new();
    for (line0, line) in input.lines().enumerate() {
        let mut row = Vec::new();
        let mut col: Option<usize> = None;
        let mut start = 0usize;
        let flush = |row: &mut Vec<Entry>, tok: &str, line0: usize, col: usize| {
            tok.parse::<Entry>().map(|e| row.push(e)).map_err(|msg| {
                CodError::Parse { line: line0 + 1, col, msg }
            })
        };
        for (i, ch) in line.char_indices() {
            if ch.is_whitespace() {
                if let Some(c) = col.take() {
                    flush(&mut row, &line[start..i], line0, c)?;
                }
            } else if col.is_none() {
                col = Some(i + 1);
                start = i;
            }
        }
        if let Some(c) = col {
            flush(&mut row, &line[start..], line0, c)?;
        }
        if !row.is_empty() {
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Err(CodError::Parse {
            line: 1,
            col: 1,
            msg: "empty input".into(),
        });
    }
    CodMatrix::from_rows(rows)
}

/// Parses the JSON wire format.
pub fn parse_json(input: &str) -> Result<CodMatrix> {
    let wire: WireMatrix = serde_json::from_str(input).map_err(|e| CodError::Parse {
        line: e.line(),
        col: e.column(),
        msg: e.to_string(),
    })?;
    if wire.cells.len() != wire.p {
        return Err(CodError::InvalidArgument(format!(
            "declared p = {} but cells hold {} rows",
            wire.p,
            wire.cells.len()
        )));
    }
    let mut rows = Vec::with_capacity(wire.p);
    for (i, wrow) in wire.cells.into_iter().enumerate() {
        if wrow.len() != wire.n {
            return Err(CodError::InvalidArgument(format!(
                "declared n = {} but row {} holds {} cells",
                wire.n,
                i + 1,
                wrow.len()
            )));
        }
        let mut row = Vec::with_capacity(wire.n);
        for wcell in wrow {
            row.push(match wcell {
                None => Entry::Zero,
                Some(WireCell { v, s, c }) => {
                    if v == 0 {
                        return Err(CodError::InvalidArgument(
                            "variable ids start at 1".into(),
                        ));
                    }
                    let sign = match s {
                        1 => Sign::Plus,
                        -1 => Sign::Minus,
                        other => {
                            return Err(CodError::InvalidArgument(format!(
                                "cell sign must be 1 or -1, got {other}"
                            )))
                        }
                    };
                    Entry::Var { id: v, sign, conj: c }
                }
            });
        }
        rows.push(row);
    }
    let names = wire
        .names
        .map(|raw| {
            raw.into_iter()
                .map(|(key, val)| {
                    let id: u32 = key.parse().map_err(|_| {
                        CodError::InvalidArgument(format!("bad name key {key:?}"))
                    })?;
                    let name: F2Vec = val
                        .parse()
                        .map_err(|e| CodError::InvalidArgument(format!("bad name: {e}")))?;
                    Ok((id, name))
                })
                .collect::<Result<BTreeMap<u32, F2Vec>>>()
        })
        .transpose()?;
    let m = match names {
        Some(names) => CodMatrix::from_rows_with_names(rows, names)?,
        None => CodMatrix::from_rows(rows)?,
    };
    if m.k() != wire.k {
        return Err(CodError::InvalidArgument(format!(
            "declared k = {} but cells use {} variables",
            wire.k,
            m.k()
        )));
    }
    Ok(m)
}

/// Parses either input format, deciding by the first non-space byte.
pub fn parse_auto(input: &str) -> Result<CodMatrix> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RATE34: &str = "z1 z2 z3\n-z2* z1* 0\n-z3* 0 z1*\n0 z3* -z2*\n";

    #[test]
    fn parse_text_frozen_design() {
        let m = parse_text(RATE34).unwrap();
        assert_eq!((m.p(), m.n(), m.k()), (4, 3, 3));
        assert!(m.is_cod());
        assert_eq!(serialize(&m, MatrixFormat::Text), RATE34);
    }

    #[test]
    fn serialize_row_two_of_rate34() {
        let m = parse_text(RATE34).unwrap();
        let line2 = serialize(&m, MatrixFormat::Text).lines().nth(1).unwrap().to_string();
        assert_eq!(line2, "-z2* z1* 0");
    }

    #[test]
    fn parse_single_token() {
        let m = parse_text("z1").unwrap();
        assert_eq!((m.p(), m.n(), m.k()), (1, 1, 1));
        assert_eq!(m.cell(1, 1), Entry::Var { id: 1, sign: Sign::Plus, conj: false });
    }

    #[test]
    fn parse_error_carries_line_and_column() {
        let err = parse_text("z1 z2\nz1* -q").unwrap_err();
        match err {
            CodError::Parse { line, col, .. } => assert_eq!((line, col), (2, 5)),
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn parse_rejects_empty_input() {
        assert!(matches!(parse_text("  \n \n"), Err(CodError::Parse { .. })));
    }

    #[test]
    fn parse_rejects_ragged_rows() {
        assert!(parse_text("z1 z2\nz1*").is_err());
    }

    #[test]
    fn json_round_trip_without_names() {
        let m = parse_text(RATE34).unwrap();
        let json = serialize(&m, MatrixFormat::Json);
        let back = parse_json(&json).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn json_round_trip_with_names() {
        let rows = vec![
            vec![
                Entry::Var { id: 2, sign: Sign::Plus, conj: false },
                Entry::Var { id: 1, sign: Sign::Plus, conj: false },
            ],
            vec![
                Entry::Var { id: 1, sign: Sign::Plus, conj: true },
                Entry::Var { id: 2, sign: Sign::Minus, conj: true },
            ],
        ];
        let names = BTreeMap::from([
            (1u32, "(1,0)".parse().unwrap()),
            (2u32, "(0,1)".parse().unwrap()),
        ]);
        let m = CodMatrix::from_rows_with_names(rows, names).unwrap();
        let json = serialize(&m, MatrixFormat::Json);
        assert!(json.contains("\"names\""));
        let back = parse_json(&json).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn json_frozen_shape() {
        let m = parse_text("z1 -z1*\nz1* z1").unwrap();
        // Not a COD, but serialization is defined on any matrix.
        assert_eq!(
            serialize(&m, MatrixFormat::Json),
            "{\"p\":2,\"n\":2,\"k\":1,\"cells\":[[{\"v\":1,\"s\":1,\"c\":false},{\"v\":1,\"s\":-1,\"c\":true}],[{\"v\":1,\"s\":1,\"c\":true},{\"v\":1,\"s\":1,\"c\":false}]]}"
        );
    }

    #[test]
    fn json_rejects_inconsistent_header() {
        let m = parse_text("z1 z2\nz2* -z1*").unwrap();
        let json = serialize(&m, MatrixFormat::Json);
        let broken = json.replace("\"k\":2", "\"k\":3");
        assert!(parse_json(&broken).is_err());
        let syntactic = parse_json("{\"p\":1,");
        assert!(matches!(syntactic, Err(CodError::Parse { .. })));
    }

    #[test]
    fn csv_quotes_every_cell() {
        let m = parse_text("z1 0\n0 z1*").unwrap();
        assert_eq!(serialize(&m, MatrixFormat::Csv), "\"z1\",\"0\"\n\"0\",\"z1*\"\n");
    }

    #[test]
    fn latex_pmatrix_body() {
        let m = parse_text("z1 -z2*\nz2 z1*").unwrap();
        assert_eq!(
            serialize(&m, MatrixFormat::Latex),
            "\\begin{pmatrix}\nz_{1} & -z_{2}^{*} \\\\\nz_{2} & z_{1}^{*} \\\\\n\\end{pmatrix}\n"
        );
    }

    #[test]
    fn auto_detects_json_and_text() {
        let m = parse_text(RATE34).unwrap();
        let json = serialize(&m, MatrixFormat::Json);
        assert_eq!(parse_auto(&json).unwrap(), m);
        assert_eq!(parse_auto(RATE34).unwrap(), m);
    }

    #[test]
    fn format_names_parse() {
        assert_eq!("text".parse::<MatrixFormat>().unwrap(), MatrixFormat::Text);
        assert_eq!("latex".parse::<MatrixFormat>().unwrap(), MatrixFormat::Latex);
        assert!("yaml".parse::<MatrixFormat>().is_err());
    }
}
