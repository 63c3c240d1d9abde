//! Matrix Market coordinate I/O and plain-text sequence manifests.
//!
//! Reading accepts `real`, `integer` and `pattern` fields with `general` or
//! `symmetric` storage; symmetric files must store the lower triangle and are
//! expanded on read. Writing always produces `real general` (or
//! `pattern general` for bare patterns) with 1-based indices and values
//! printed to 17 significant digits, which round-trips `f64` exactly.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::sparse::{MatrixSequence, SparseMatrix, SparsityPattern};

#[derive(Clone, Copy, PartialEq)]
enum Field {
    Real,
    Integer,
    Pattern,
}

#[derive(Clone, Copy, PartialEq)]
enum Storage {
    General,
    Symmetric,
}

fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::MarketParse {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

/// Reads a Matrix Market coordinate file.
pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<SparseMatrix> {
    let path = path.as_ref();
    let file = fs::File::open(path)?;
    let reader = BufReader::new(file);
    let mut lines = reader.lines().enumerate();

    let (header_no, header) = loop {
        match lines.next() {
            Some((no, line)) => {
                let line = line?;
                if !line.trim().is_empty() {
                    break (no + 1, line);
                }
            }
            None => return Err(parse_error(path, 0, "empty file")),
        }
    };
    let tokens: Vec<String> = header
        .split_whitespace()
        .map(|t| t.to_ascii_lowercase())
        .collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(parse_error(
            path,
            header_no,
            "expected header '%%MatrixMarket matrix coordinate <field> <storage>'",
        ));
    }
    if tokens[2] != "coordinate" {
        return Err(parse_error(
            path,
            header_no,
            format!(
                "unsupported format '{}', only 'coordinate' is supported",
                tokens[2]
            ),
        ));
    }
    let field = match tokens[3].as_str() {
        "real" => Field::Real,
        "integer" => Field::Integer,
        "pattern" => Field::Pattern,
        other => {
            return Err(parse_error(
                path,
                header_no,
                format!("unsupported field '{other}', expected real, integer or pattern"),
            ))
        }
    };
    let storage = match tokens[4].as_str() {
        "general" => Storage::General,
        "symmetric" => Storage::Symmetric,
        other => {
            return Err(parse_error(
                path,
                header_no,
                format!("unsupported storage '{other}', expected general or symmetric"),
            ))
        }
    };

    // Size line: first non-comment, non-blank line after the header.
    let (size_no, size_line) = loop {
        match lines.next() {
            Some((no, line)) => {
                let line = line?;
                let trimmed = line.trim();
                if trimmed.is_empty() || trimmed.starts_with('%') {
                    continue;
                }
                break (no + 1, line);
            }
            None => return Err(parse_error(path, header_no, "missing size line")),
        }
    };
    let dims: Vec<&str> = size_line.split_whitespace().collect();
    if dims.len() != 3 {
        return Err(parse_error(
            path,
            size_no,
            "size line must be 'nrows ncols nnz'",
        ));
    }
    let nrows: usize = dims[0]
        .parse()
        .map_err(|_| parse_error(path, size_no, format!("bad row count '{}'", dims[0])))?;
    let ncols: usize = dims[1]
        .parse()
        .map_err(|_| parse_error(path, size_no, format!("bad column count '{}'", dims[1])))?;
    let nnz: usize = dims[2]
        .parse()
        .map_err(|_| parse_error(path, size_no, format!("bad entry count '{}'", dims[2])))?;
    if storage == Storage::Symmetric && nrows != ncols {
        return Err(parse_error(
            path,
            size_no,
            "symmetric storage requires a square matrix",
        ));
    }

    let mut triplets: Vec<(usize, usize, f64)> = Vec::with_capacity(nnz);
    let mut seen = 0usize;
    while seen < nnz {
        let (no, line) = match lines.next() {
            Some((no, line)) => (no + 1, line?),
            None => {
                return Err(parse_error(
                    path,
                    size_no,
                    format!("expected {nnz} entries, found {seen}"),
                ))
            }
        };
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        let expected = if field == Field::Pattern { 2 } else { 3 };
        if fields.len() != expected {
            return Err(parse_error(
                path,
                no,
                format!(
                    "expected {expected} fields per entry, found {}",
                    fields.len()
                ),
            ));
        }
        let i: usize = fields[0]
            .parse()
            .map_err(|_| parse_error(path, no, format!("bad row index '{}'", fields[0])))?;
        let j: usize = fields[1]
            .parse()
            .map_err(|_| parse_error(path, no, format!("bad column index '{}'", fields[1])))?;
        if i == 0 || j == 0 || i > nrows || j > ncols {
            return Err(parse_error(
                path,
                no,
                format!("index ({i}, {j}) outside 1..={nrows} x 1..={ncols}"),
            ));
        }
        let value = match field {
            Field::Pattern => 1.0,
            _ => fields[2]
                .parse::<f64>()
                .map_err(|_| parse_error(path, no, format!("bad value '{}'", fields[2])))?,
        };
        let (i, j) = (i - 1, j - 1);
        if storage == Storage::Symmetric {
            if i < j {
                return Err(parse_error(
                    path,
                    no,
                    "symmetric storage must hold the lower triangle (row >= column)",
                ));
            }
            triplets.push((i, j, value));
            if i != j {
                triplets.push((j, i, value));
            }
        } else {
            triplets.push((i, j, value));
        }
        seen += 1;
    }

    SparseMatrix::from_triplets(nrows, ncols, &triplets)
}

/// Writes a matrix in `real general` coordinate format.
pub fn write_matrix_market(a: &SparseMatrix, path: impl AsRef<Path>) -> Result<()> {
    let file = fs::File::create(path.as_ref())?;
    let mut w = BufWriter::new(file);
    writeln!(w, "%%MatrixMarket matrix coordinate real general")?;
    writeln!(w, "{} {} {}", a.nrows(), a.ncols(), a.nnz())?;
    for j in 0..a.ncols() {
        let (rows, vals) = a.col(j);
        for (&i, &v) in rows.iter().zip(vals) {
            writeln!(w, "{} {} {:.16e}", i + 1, j + 1, v)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Writes a bare pattern in `pattern general` coordinate format.
pub fn write_pattern_market(p: &SparsityPattern, path: impl AsRef<Path>) -> Result<()> {
    let file = fs::File::create(path.as_ref())?;
    let mut w = BufWriter::new(file);
    writeln!(w, "%%MatrixMarket matrix coordinate pattern general")?;
    writeln!(w, "{} {} {}", p.nrows(), p.ncols(), p.nnz())?;
    for j in 0..p.ncols() {
        for &i in p.col(j) {
            writeln!(w, "{} {}", i + 1, j + 1)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads a sequence manifest: one matrix path per line, `#` comments and
/// blank lines allowed, paths resolved relative to the manifest's directory.
pub fn read_sequence_manifest(path: impl AsRef<Path>) -> Result<MatrixSequence> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Manifest {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let mut entries = Vec::new();
    let mut labels = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let matrix_path = base.join(line);
        let matrix = read_matrix_market(&matrix_path)?;
        let label = matrix_path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| line.to_string());
        entries.push(matrix);
        labels.push(label);
    }
    if entries.is_empty() {
        return Err(Error::Manifest {
            path: path.display().to_string(),
            message: "no matrix paths listed".into(),
        });
    }
    MatrixSequence::new(entries, labels)
}

/// Writes every matrix of a sequence to `dir` as `<label>.mtx` plus a
/// `manifest.txt` listing them in order. Returns the manifest path.
pub fn write_sequence(seq: &MatrixSequence, dir: impl AsRef<Path>) -> Result<PathBuf> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    let manifest_path = dir.join("manifest.txt");
    let mut manifest = BufWriter::new(fs::File::create(&manifest_path)?);
    writeln!(manifest, "# matrix sequence, one file per line, in order")?;
    for k in 0..seq.len() {
        let name = format!("{}.mtx", seq.label(k));
        write_matrix_market(seq.entry(k), dir.join(&name))?;
        writeln!(manifest, "{name}")?;
    }
    manifest.flush()?;
    Ok(manifest_path)
}
