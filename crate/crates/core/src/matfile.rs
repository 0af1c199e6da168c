//! Matrix ingestion from CSV and JSON files.
//!
//! CSV: one row vector per line, comma-separated decimal literals, no
//! header. JSON: an object `{"rows": [[...], ...]}`. A path of `-` reads
//! standard input; the format is taken from the file extension, with a
//! leading `{` selecting JSON on stdin.

use std::fmt;
use std::io::Read;
use std::path::Path;

use serde::Deserialize;

use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// A parsed matrix input together with its provenance.
#[derive(Debug, Clone)]
pub struct MatrixFile {
    pub path: String,
    pub format: Format,
    pub parsed: Matrix,
    /// SHA-256 of the raw bytes, hex encoded.
    pub digest: String,
}

#[derive(Debug)]
pub enum ParseError {
    Io {
        path: String,
        source: std::io::Error,
    },
    Empty {
        path: String,
    },
    BadNumber {
        path: String,
        line: usize,
        token: String,
    },
    RaggedRow {
        path: String,
        line: usize,
        expected: usize,
        got: usize,
    },
    Json {
        path: String,
        detail: String,
    },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Io { path, source } => write!(f, "{path}: {source}"),
            ParseError::Empty { path } => write!(f, "{path}: file contains no matrix rows"),
            ParseError::BadNumber { path, line, token } => {
                write!(f, "{path}: line {line}: not a finite number: {token:?}")
            }
            ParseError::RaggedRow {
                path,
                line,
                expected,
                got,
            } => write!(
                f,
                "{path}: line {line}: row has {got} entries, expected {expected}"
            ),
            ParseError::Json { path, detail } => write!(f, "{path}: {detail}"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Deserialize)]
struct JsonMatrix {
    rows: Vec<Vec<f64>>,
}

/// Reads and parses a matrix file; `-` means standard input.
pub fn parse_matrix(path: &str) -> Result<MatrixFile, ParseError> {
    let bytes = read_bytes(path)?;
    let digest = sha256_hex(&bytes);
    let text = String::from_utf8_lossy(&bytes);
    let format = detect_format(path, &text);
    let parsed = match format {
        Format::Csv => parse_csv(path, &text)?,
        Format::Json => parse_json(path, &text)?,
    };
    Ok(MatrixFile {
        path: path.to_string(),
        format,
        parsed,
        digest,
    })
}

fn read_bytes(path: &str) -> Result<Vec<u8>, ParseError> {
    let mut buf = Vec::new();
    if path == "-" {
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|source| ParseError::Io {
                path: path.to_string(),
                source,
            })?;
    } else {
        buf = std::fs::read(path).map_err(|source| ParseError::Io {
            path: path.to_string(),
            source,
        })?;
    }
    Ok(buf)
}

fn detect_format(path: &str, text: &str) -> Format {
    if path != "-" {
        if Path::new(path)
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"))
        {
            return Format::Json;
        }
        return Format::Csv;
    }
    if text.trim_start().starts_with('{') {
        Format::Json
    } else {
        Format::Csv
    }
}

fn parse_csv(path: &str, text: &str) -> Result<Matrix, ParseError> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width = 0;
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for token in line.split(',') {
            let trimmed = token.trim();
            let value: f64 = trimmed.parse().map_err(|_| ParseError::BadNumber {
                path: path.to_string(),
                line: idx + 1,
                token: trimmed.to_string(),
            })?;
            if !value.is_finite() {
                return Err(ParseError::BadNumber {
                    path: path.to_string(),
                    line: idx + 1,
                    token: trimmed.to_string(),
                });
            }
            row.push(value);
        }
        if rows.is_empty() {
            width = row.len();
        } else if row.len() != width {
            return Err(ParseError::RaggedRow {
                path: path.to_string(),
                line: idx + 1,
                expected: width,
                got: row.len(),
            });
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(ParseError::Empty {
            path: path.to_string(),
        });
    }
    Matrix::from_rows(&rows).map_err(|e| ParseError::Json {
        path: path.to_string(),
        detail: e.to_string(),
    })
}

fn parse_json(path: &str, text: &str) -> Result<Matrix, ParseError> {
    let value: JsonMatrix = serde_json::from_str(text).map_err(|e| ParseError::Json {
        path: path.to_string(),
        detail: format!("line {}: {e}", e.line()),
    })?;
    if value.rows.is_empty() || value.rows[0].is_empty() {
        return Err(ParseError::Empty {
            path: path.to_string(),
        });
    }
    let width = value.rows[0].len();
    for (idx, row) in value.rows.iter().enumerate() {
        if row.len() != width {
            return Err(ParseError::RaggedRow {
                path: path.to_string(),
                line: idx + 1,
                expected: width,
                got: row.len(),
            });
        }
        for &v in row {
            if !v.is_finite() {
                return Err(ParseError::BadNumber {
                    path: path.to_string(),
                    line: idx + 1,
                    token: v.to_string(),
                });
            }
        }
    }
    Matrix::from_rows(&value.rows).map_err(|e| ParseError::Json {
        path: path.to_string(),
        detail: e.to_string(),
    })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let out = hasher.finalize();
    let mut hex = String::with_capacity(out.len() * 2);
    for byte in out {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}
