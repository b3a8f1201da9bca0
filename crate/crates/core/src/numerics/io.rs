//! Matrix/vector files.
//!
//! Binary layout: the 4 magic bytes `SPD1`, then `rows` and `cols` as
//! little-endian `u64`, then `rows * cols` little-endian IEEE-754 `f64`
//! entries in row-major order. Vectors are stored as `len × 1` matrices.
//!
//! The CSV form has one matrix row per line with comma-separated decimals.

use std::fs;
use std::io::Write;
use std::path::Path;

use super::Matrix;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"SPD1";

const HEADER_LEN: usize = 4 + 8 + 8;

pub fn write_matrix_bin(path: impl AsRef<Path>, m: &Matrix) -> Result<()> {
    let mut buf = Vec::with_capacity(HEADER_LEN + 8 * m.data().len());
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&(m.rows() as u64).to_le_bytes());
    buf.extend_from_slice(&(m.cols() as u64).to_le_bytes());
    for v in m.data() {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    fs::write(path, buf)?;
    Ok(())
}

pub fn read_matrix_bin(path: impl AsRef<Path>) -> Result<Matrix> {
    let path = path.as_ref();
    let bytes = fs::read(path)?;
    decode_bin(&bytes).map_err(|detail| Error::Parse {
        path: path.to_path_buf(),
        detail,
    })
}

fn decode_bin(bytes: &[u8]) -> std::result::Result<Matrix, String> {
    if bytes.len() < HEADER_LEN || &bytes[..4] != MAGIC {
        return Err("missing SPD1 header".into());
    }
    let word = |at: usize| u64::from_le_bytes(bytes[at..at + 8].try_into().unwrap());
    let (rows, cols) = (word(4) as usize, word(12) as usize);
    let count = rows
        .checked_mul(cols)
        .ok_or_else(|| format!("dimensions {rows}x{cols} overflow"))?;
    let body = &bytes[HEADER_LEN..];
    if body.len() != count * 8 {
        return Err(format!(
            "expected {} payload bytes for {rows}x{cols}, found {}",
            count * 8,
            body.len()
        ));
    }
    let data = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Matrix::new(rows, cols, data).map_err(|e| e.to_string())
}

pub fn read_matrix_csv(path: impl AsRef<Path>) -> Result<Matrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let parse_err = |detail: String| Error::Parse {
        path: path.to_path_buf(),
        detail,
    };
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|e| parse_err(format!("line {}: `{}`: {e}", lineno + 1, tok.trim())))
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Matrix::from_rows(&rows).map_err(|e| parse_err(e.to_string()))
}

pub fn write_matrix_csv(path: impl AsRef<Path>, m: &Matrix) -> Result<()> {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        let line: Vec<String> = m.row(i).iter().map(|v| format!("{v:?}")).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    fs::write(path, out)?;
    Ok(())
}

/// Reads either format, choosing by the magic bytes.
pub fn read_matrix(path: impl AsRef<Path>) -> Result<Matrix> {
    let path = path.as_ref();
    let bytes = fs::read(path)?;
    if bytes.starts_with(MAGIC) {
        decode_bin(&bytes).map_err(|detail| Error::Parse {
            path: path.to_path_buf(),
            detail,
        })
    } else {
        read_matrix_csv(path)
    }
}

/// Reads a vector stored as an `n × 1` or `1 × n` matrix in either format.
pub fn read_vector(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    let m = read_matrix(path)?;
    if m.cols() == 1 || m.rows() == 1 {
        Ok(m.data().to_vec())
    } else {
        Err(Error::Parse {
            path: path.to_path_buf(),
            detail: format!("expected a vector, found a {}x{} matrix", m.rows(), m.cols()),
        })
    }
}

pub fn write_vector(path: impl AsRef<Path>, v: &[f64]) -> Result<()> {
    let m = Matrix::new(v.len(), 1, v.to_vec())?;
    write_matrix_bin(path, &m)
}
