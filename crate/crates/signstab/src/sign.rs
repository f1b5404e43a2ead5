//! Sign patterns, real matrices, and the relationship between them.
//!
//! A [`SignPattern`] is the qualitative object: an n×n grid over `{-, 0, +}`.
//! A [`RealMatrix`] is a concrete realization. [`realization`] maps a pattern
//! plus positive magnitudes to a matrix, [`sign_of`] classifies a matrix back
//! to its pattern, and the two are inverse in the sense that
//! `sign_of(realization(P, m), 0) == P` for any strictly positive `m`.
//!
//! Matrix entries are indexed `(row, col)`, 0-based, matching `a_ij = [A]_ij`
//! with `i` the row. Rows and columns in [`ParseError`] variants are 0-based
//! as well.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::defaults::MAX_DIM;

/// Qualitative sign of a matrix entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    /// Classify a real number, treating `|x| <= zero_tol` as zero.
    pub fn of(x: f64, zero_tol: f64) -> Sign {
        if x.abs() <= zero_tol {
            Sign::Zero
        } else if x > 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    /// Usual sign arithmetic: anything times zero is zero, like signs give
    /// positive, unlike signs give negative.
    pub fn product(self, other: Sign) -> Sign {
        use Sign::*;
        match (self, other) {
            (Zero, _) | (_, Zero) => Zero,
            (Positive, Positive) | (Negative, Negative) => Positive,
            _ => Negative,
        }
    }

    /// The multiplier this sign applies to a magnitude: −1, 0, or +1.
    pub fn signum(self) -> f64 {
        match self {
            Sign::Negative => -1.0,
            Sign::Zero => 0.0,
            Sign::Positive => 1.0,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    /// Text token for this sign: `-`, `0`, or `+`.
    pub fn token(self) -> &'static str {
        match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let tok = String::deserialize(d)?;
        match tok.as_str() {
            "-" => Ok(Sign::Negative),
            "0" => Ok(Sign::Zero),
            "+" => Ok(Sign::Positive),
            other => Err(D::Error::custom(format!("not a sign token: {other:?}"))),
        }
    }
}

/// Errors from the text parsers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    /// A cell was neither a sign token nor a finite number. Row and column
    /// are 0-based.
    #[error("bad cell {token:?} at row {row}, col {col} (0-based)")]
    BadCell { row: usize, col: usize, token: String },
    /// Row `row` (0-based) has a different number of cells than row 0.
    #[error("ragged input: row {row} (0-based) differs in length from row 0")]
    RaggedInput { row: usize },
    /// The input contained no cells at all.
    #[error("empty input: no cells found")]
    Empty,
    /// Consistent rows, but the grid is not square.
    #[error("not square: {rows} rows x {cols} cols")]
    NotSquare { rows: usize, cols: usize },
    /// Dimension above the supported cap.
    #[error("dimension {n} exceeds the supported maximum {max}")]
    DimensionCap { n: usize, max: usize },
}

/// Errors from pattern/matrix construction and realization.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignError {
    #[error("dimension mismatch: pattern is {expected}x{expected}, magnitudes are {got_rows}x{got_cols}")]
    DimensionMismatch { expected: usize, got_rows: usize, got_cols: usize },
    /// A magnitude at a nonzero pattern position was not strictly positive
    /// and finite. Row and column are 0-based.
    #[error("magnitude at row {row}, col {col} must be strictly positive and finite, got {value}")]
    BadMagnitude { row: usize, col: usize, value: f64 },
    #[error("rows do not form a square grid")]
    NotSquare,
    #[error("dimension {n} exceeds the supported maximum {max}")]
    DimensionCap { n: usize, max: usize },
    #[error("matrix entry at row {row}, col {col} is not finite")]
    NotFinite { row: usize, col: usize },
}

/// An n×n grid of [`Sign`]s: the qualitative class of all real matrices
/// sharing those signs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignPattern {
    n: usize,
    cells: Vec<Sign>, // row-major, n*n
}

impl SignPattern {
    /// Build from rows. All rows must have the same length as there are rows.
    pub fn from_rows(rows: Vec<Vec<Sign>>) -> Result<Self, SignError> {
        let n = rows.len();
        if n == 0 {
            return Err(SignError::NotSquare);
        }
        if n > MAX_DIM {
            return Err(SignError::DimensionCap { n, max: MAX_DIM });
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(SignError::NotSquare);
        }
        Ok(SignPattern { n, cells: rows.into_iter().flatten().collect() })
    }

    /// All-zero n×n pattern.
    pub fn zeros(n: usize) -> Result<Self, SignError> {
        if n == 0 {
            return Err(SignError::NotSquare);
        }
        if n > MAX_DIM {
            return Err(SignError::DimensionCap { n, max: MAX_DIM });
        }
        Ok(SignPattern { n, cells: vec![Sign::Zero; n * n] })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at `(row, col)`, 0-based.
    pub fn get(&self, row: usize, col: usize) -> Sign {
        self.cells[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, s: Sign) {
        self.cells[row * self.n + col] = s;
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.cells.iter().filter(|s| !s.is_zero()).count()
    }

    /// The transposed pattern.
    pub fn transpose(&self) -> SignPattern {
        let n = self.n;
        let mut cells = vec![Sign::Zero; n * n];
        for i in 0..n {
            for j in 0..n {
                cells[j * n + i] = self.get(i, j);
            }
        }
        SignPattern { n, cells }
    }

    /// Simultaneous row-and-column relabeling: entry `(i, j)` of the result
    /// is entry `(perm[i], perm[j])` of `self`. `perm` must be a permutation
    /// of `0..n`.
    pub fn permute(&self, perm: &[usize]) -> SignPattern {
        assert_eq!(perm.len(), self.n, "permutation length must equal n");
        let n = self.n;
        let mut cells = vec![Sign::Zero; n * n];
        for i in 0..n {
            for j in 0..n {
                cells[i * n + j] = self.get(perm[i], perm[j]);
            }
        }
        SignPattern { n, cells }
    }

    /// Canonical text form: one row per line, cells separated by single
    /// spaces, tokens `-`/`0`/`+`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            if i > 0 {
                out.push('\n');
            }
            for j in 0..self.n {
                if j > 0 {
                    out.push(' ');
                }
                out.push_str(self.get(i, j).token());
            }
        }
        out
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// JSON form: {"n": 2, "rows": [["-","+"],["-","-"]]}
#[derive(Serialize, Deserialize)]
struct PatternJson {
    n: usize,
    rows: Vec<Vec<Sign>>,
}

impl Serialize for SignPattern {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows =
            (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect();
        PatternJson { n: self.n, rows }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignPattern {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PatternJson::deserialize(d)?;
        if raw.rows.len() != raw.n {
            return Err(D::Error::custom("row count does not match n"));
        }
        SignPattern::from_rows(raw.rows).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Dense n×n real matrix, row-major. All entries are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    n: usize,
    entries: Vec<f64>, // row-major, n*n
}

impl RealMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, SignError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(SignError::NotSquare);
        }
        if n > MAX_DIM {
            return Err(SignError::DimensionCap { n, max: MAX_DIM });
        }
        let entries: Vec<f64> = rows.into_iter().flatten().collect();
        for (k, &v) in entries.iter().enumerate() {
            if !v.is_finite() {
                return Err(SignError::NotFinite { row: k / n, col: k % n });
            }
        }
        Ok(RealMatrix { n, entries })
    }

    pub fn zeros(n: usize) -> Result<Self, SignError> {
        if n == 0 {
            return Err(SignError::NotSquare);
        }
        if n > MAX_DIM {
            return Err(SignError::DimensionCap { n, max: MAX_DIM });
        }
        Ok(RealMatrix { n, entries: vec![0.0; n * n] })
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self, SignError> {
        let mut m = RealMatrix::zeros(diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at `(row, col)`, 0-based.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: f64) {
        self.entries[row * self.n + col] = v;
    }

    /// Row-major view of all entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Scale every entry by `c`.
    pub fn scaled(&self, c: f64) -> RealMatrix {
        RealMatrix { n: self.n, entries: self.entries.iter().map(|v| c * v).collect() }
    }
}

impl fmt::Display for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            if i > 0 {
                writeln!(f)?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    rows: Vec<Vec<f64>>,
}

impl Serialize for RealMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows =
            (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect();
        MatrixJson { n: self.n, rows }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        if raw.rows.len() != raw.n {
            return Err(D::Error::custom("row count does not match n"));
        }
        RealMatrix::from_rows(raw.rows).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Split matrix text into cell tokens, rows by newlines or `;`, cells by
/// whitespace or `,`.
fn tokenize(text: &str) -> Vec<Vec<&str>> {
    text.split(|c| c == '\n' || c == ';')
        .map(|line| {
            line.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .collect::<Vec<_>>()
        })
        .filter(|row| !row.is_empty())
        .collect()
}

fn check_shape(rows: &[Vec<&str>]) -> Result<usize, ParseError> {
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }
    let width = rows[0].len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(ParseError::RaggedInput { row: i });
        }
    }
    if rows.len() != width {
        return Err(ParseError::NotSquare { rows: rows.len(), cols: width });
    }
    if width > MAX_DIM {
        return Err(ParseError::DimensionCap { n: width, max: MAX_DIM });
    }
    Ok(width)
}

/// Parse a sign pattern from text.
///
/// Rows are separated by newlines or `;`, cells by whitespace or `,`. A cell
/// is a sign token (`-`, `0`, `+`) or a finite number, which is classified
/// by its sign with zero tolerance 0. One grammar therefore covers both
/// qualitative inputs and concrete matrices.
pub fn parse_sign_pattern(text: &str) -> Result<SignPattern, ParseError> {
    let rows = tokenize(text);
    let n = check_shape(&rows)?;
    let mut cells = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        for (j, tok) in row.iter().enumerate() {
            let sign = match *tok {
                "-" => Sign::Negative,
                "0" => Sign::Zero,
                "+" => Sign::Positive,
                other => match other.parse::<f64>() {
                    Ok(v) if v.is_finite() => Sign::of(v, 0.0),
                    _ => {
                        return Err(ParseError::BadCell {
                            row: i,
                            col: j,
                            token: other.to_string(),
                        })
                    }
                },
            };
            cells.push(sign);
        }
    }
    Ok(SignPattern { n, cells })
}

/// Parse a numeric matrix from text. Same grammar as [`parse_sign_pattern`]
/// but every cell must be a finite number.
pub fn parse_real_matrix(text: &str) -> Result<RealMatrix, ParseError> {
    let rows = tokenize(text);
    let n = check_shape(&rows)?;
    let mut entries = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        for (j, tok) in row.iter().enumerate() {
            match tok.parse::<f64>() {
                Ok(v) if v.is_finite() => entries.push(v),
                _ => {
                    return Err(ParseError::BadCell { row: i, col: j, token: tok.to_string() })
                }
            }
        }
    }
    Ok(RealMatrix { n, entries })
}

/// Classify every entry of `m`, treating `|a_ij| <= zero_tol` as zero.
pub fn sign_of(m: &RealMatrix, zero_tol: f64) -> SignPattern {
    let n = m.n();
    SignPattern {
        n,
        cells: m.entries.iter().map(|&v| Sign::of(v, zero_tol)).collect(),
    }
}

/// Build the realization `a_ij = signum(s_ij) * m_ij`.
///
/// Entries where the pattern is zero are exactly `0.0`, regardless of the
/// magnitude supplied there; the digraph read off a realization must agree
/// with the pattern's, so structural zeros are honored bit-exactly.
/// Magnitudes at nonzero positions must be strictly positive and finite.
pub fn realization(p: &SignPattern, magnitudes: &RealMatrix) -> Result<RealMatrix, SignError> {
    if magnitudes.n() != p.n() {
        return Err(SignError::DimensionMismatch {
            expected: p.n(),
            got_rows: magnitudes.n(),
            got_cols: magnitudes.n(),
        });
    }
    let n = p.n();
    let mut out = RealMatrix::zeros(n)?;
    for i in 0..n {
        for j in 0..n {
            let s = p.get(i, j);
            if s.is_zero() {
                continue;
            }
            let m = magnitudes.get(i, j);
            if !(m.is_finite() && m > 0.0) {
                return Err(SignError::BadMagnitude { row: i, col: j, value: m });
            }
            out.set(i, j, s.signum() * m);
        }
    }
    Ok(out)
}
