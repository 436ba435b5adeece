//! Square {0,1} pattern matrices.
//!
//! A pattern matrix `M` of size `m` prescribes how the parts of a partition
//! may interact: diagonal entries say whether a part must be independent
//! (entry 0) or a strong clique (entry 1), and an off-diagonal entry `M[i][j]`
//! says whether arcs from part `i` to part `j` must all be present (1) or all
//! absent (0). Read as an adjacency matrix with loops allowed, `M` is also
//! the template digraph of the corresponding full homomorphism problem.
//!
//! The text format matches the digraph format, except the diagonal is free:
//!
//! ```
//! use fullhom::PatternMatrix;
//!
//! let m = PatternMatrix::parse("2\n00\n11\n").unwrap();
//! assert_eq!((m.diagonal_zeros(), m.diagonal_ones()), (1, 1));
//! assert_eq!(m.bound(), 4);
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::digraph::{self, ParseError, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("row {row} has {found} entries, expected {expected}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("entry ({row},{col}) is {found}, expected 0 or 1")]
    BadEntry { row: usize, col: usize, found: u8 },
    #[error("size {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooLarge(usize),
}

/// A square {0,1} matrix over part indices `0..m`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PatternMatrix {
    m: usize,
    rows: Vec<u64>,
}

impl PatternMatrix {
    /// Builds a matrix from its rows of 0/1 entries.
    pub fn new(entries: &[Vec<u8>]) -> Result<Self, MatrixError> {
        let m = entries.len();
        if m > MAX_ORDER {
            return Err(MatrixError::TooLarge(m));
        }
        let mut rows = Vec::with_capacity(m);
        for (i, row) in entries.iter().enumerate() {
            if row.len() != m {
                return Err(MatrixError::NotSquare {
                    row: i,
                    expected: m,
                    found: row.len(),
                });
            }
            let mut bits = 0u64;
            for (j, &e) in row.iter().enumerate() {
                match e {
                    0 => {}
                    1 => bits |= 1 << j,
                    _ => {
                        return Err(MatrixError::BadEntry {
                            row: i,
                            col: j,
                            found: e,
                        })
                    }
                }
            }
            rows.push(bits);
        }
        Ok(PatternMatrix { m, rows })
    }

    /// Parses the text format: a decimal size line, then one row of `0`/`1`
    /// characters per part. Unlike digraphs, the diagonal is unrestricted.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let (m, rows) = digraph::parse_square_rows(text)?;
        Ok(PatternMatrix { m, rows })
    }

    pub fn to_text(&self) -> String {
        digraph::rows_to_text(self.m, &self.rows)
    }

    /// Rows as `0`/`1` strings, as used in catalog documents.
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.m)
            .map(|i| {
                (0..self.m)
                    .map(|j| if self.entry(i, j) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        assert!(i < self.m && j < self.m, "entry ({i},{j}) out of range");
        self.rows[i] >> j & 1 == 1
    }

    /// Number of independent parts: diagonal zeros, usually called `k`.
    pub fn diagonal_zeros(&self) -> usize {
        (0..self.m).filter(|&i| !self.entry(i, i)).count()
    }

    /// Number of strong-clique parts: diagonal ones, usually called `l`.
    pub fn diagonal_ones(&self) -> usize {
        (0..self.m).filter(|&i| self.entry(i, i)).count()
    }

    /// The order bound `(k+1)(l+1)` on minimal obstructions.
    pub fn bound(&self) -> usize {
        (self.diagonal_zeros() + 1) * (self.diagonal_ones() + 1)
    }

    /// Reorders the parts so all independent parts precede all clique parts,
    /// keeping the relative order inside each group.
    pub fn normalized(&self) -> NormalizedPattern {
        let mut to_original: Vec<usize> = (0..self.m).filter(|&i| !self.entry(i, i)).collect();
        to_original.extend((0..self.m).filter(|&i| self.entry(i, i)));
        let entries: Vec<Vec<u8>> = to_original
            .iter()
            .map(|&oi| {
                to_original
                    .iter()
                    .map(|&oj| self.entry(oi, oj) as u8)
                    .collect()
            })
            .collect();
        NormalizedPattern {
            matrix: PatternMatrix::new(&entries).expect("permuted matrix is valid"),
            to_original,
        }
    }
}

impl fmt::Display for PatternMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for PatternMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternMatrix[{}]", self.row_strings().join(","))
    }
}

impl FromStr for PatternMatrix {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        PatternMatrix::parse(s)
    }
}

/// A matrix with its diagonal zeros moved to the front, plus the permutation
/// needed to translate part indices back to the original order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedPattern {
    pub matrix: PatternMatrix,
    /// `to_original[p]` is the original index of normalized part `p`.
    pub to_original: Vec<usize>,
}

impl NormalizedPattern {
    pub fn original_part(&self, normalized: usize) -> usize {
        self.to_original[normalized]
    }

    pub fn normalized_part(&self, original: usize) -> usize {
        self.to_original
            .iter()
            .position(|&o| o == original)
            .expect("part in range")
    }

    /// Undoes the normalization; round-trips to the matrix it came from.
    pub fn denormalized(&self) -> PatternMatrix {
        let m = self.matrix.size();
        let entries: Vec<Vec<u8>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        self.matrix
                            .entry(self.normalized_part(i), self.normalized_part(j))
                            as u8
                    })
                    .collect()
            })
            .collect();
        PatternMatrix::new(&entries).expect("permuted matrix is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_counts() {
        let m = PatternMatrix::new(&[vec![0, 0], vec![1, 1]]).unwrap();
        assert_eq!(m.size(), 2);
        assert!(!m.entry(0, 0));
        assert!(m.entry(1, 0));
        assert_eq!(m.diagonal_zeros(), 1);
        assert_eq!(m.diagonal_ones(), 1);
        assert_eq!(m.bound(), 4);
    }

    #[test]
    fn bounds_for_one_by_one_matrices() {
        let zero = PatternMatrix::new(&[vec![0]]).unwrap();
        assert_eq!((zero.diagonal_zeros(), zero.diagonal_ones()), (1, 0));
        assert_eq!(zero.bound(), 2);
        let one = PatternMatrix::new(&[vec![1]]).unwrap();
        assert_eq!(one.bound(), 2);
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(
            PatternMatrix::new(&[vec![0, 1]]),
            Err(MatrixError::NotSquare {
                row: 0,
                expected: 1,
                found: 2
            })
        );
        assert_eq!(
            PatternMatrix::new(&[vec![2]]),
            Err(MatrixError::BadEntry {
                row: 0,
                col: 0,
                found: 2
            })
        );
    }

    #[test]
    fn text_round_trip_allows_diagonal_ones() {
        let m = PatternMatrix::parse("2\n01\n11\n").unwrap();
        assert!(!m.entry(0, 0) && m.entry(1, 1));
        assert_eq!(m.to_text(), "2\n01\n11\n");
        assert_eq!(PatternMatrix::parse(&m.to_text()).unwrap(), m);
        let empty = PatternMatrix::parse("0\n").unwrap();
        assert_eq!(empty.size(), 0);
        assert_eq!(empty.bound(), 1);
    }

    #[test]
    fn normalization_moves_zeros_first_and_round_trips() {
        let m = PatternMatrix::new(&[vec![1, 0, 1], vec![1, 0, 0], vec![0, 1, 1]]).unwrap();
        let norm = m.normalized();
        assert_eq!(norm.to_original, vec![1, 0, 2]);
        // Normalized diagonal is sorted: zeros then ones.
        assert!(!norm.matrix.entry(0, 0));
        assert!(norm.matrix.entry(1, 1) && norm.matrix.entry(2, 2));
        // Entries are carried along: normalized (0,1) is original (1,0).
        assert_eq!(norm.matrix.entry(0, 1), m.entry(1, 0));
        assert_eq!(norm.denormalized(), m);
        assert_eq!(norm.matrix.bound(), m.bound());
    }

    #[test]
    fn normalization_of_already_normalized_matrix_is_identity() {
        let m = PatternMatrix::new(&[vec![0, 1], vec![0, 1]]).unwrap();
        let norm = m.normalized();
        assert_eq!(norm.to_original, vec![0, 1]);
        assert_eq!(norm.matrix, m);
    }
}
