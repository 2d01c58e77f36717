//! Tesler matrices with arbitrary integer hook sums.
//!
//! Row `i` of a matrix with hook sums `alpha` must add up to
//! `s_i = alpha_i + U[0][i] + ... + U[i-1][i]`, which is fixed once the rows
//! above are chosen. Sign-homogeneity forces every entry of the row to carry
//! the sign of `s_i` and bounds it by `|s_i|`, and `s_i = 0` is impossible for
//! a nonzero sign-homogeneous row. So every level of the search tree is a
//! finite list of signed weak compositions and the enumeration terminates.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, MatrixDefect, Result};
use crate::qt_algebra::{qt_int, LaurentPoly};

/// An upper-triangular integer matrix with sign-homogeneous, nonzero rows.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct TeslerMatrix {
    n: usize,
    entries: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl TryFrom<MatrixJson> for TeslerMatrix {
    type Error = Error;

    fn try_from(m: MatrixJson) -> Result<Self> {
        if m.rows.len() != m.n {
            return Err(Error::LengthMismatch {
                expected: m.n,
                got: m.rows.len(),
            });
        }
        validate(&m.rows)
    }
}

impl From<TeslerMatrix> for MatrixJson {
    fn from(u: TeslerMatrix) -> Self {
        MatrixJson {
            n: u.n,
            rows: u.rows(),
        }
    }
}

/// Check the three defining conditions, reporting the first violation.
pub fn validate(rows: &[Vec<i64>]) -> Result<TeslerMatrix> {
    let n = rows.len();
    if let Some(i) = rows.iter().position(|r| r.len() != n) {
        return Err(Error::InvalidMatrix(MatrixDefect::NotSquare, i));
    }
    for (i, row) in rows.iter().enumerate() {
        if row[..i].iter().any(|&x| x != 0) {
            return Err(Error::InvalidMatrix(MatrixDefect::NotUpperTriangular, i));
        }
    }
    for (i, row) in rows.iter().enumerate() {
        if row.iter().all(|&x| x == 0) {
            return Err(Error::InvalidMatrix(MatrixDefect::ZeroRow, i));
        }
        if row.iter().any(|&x| x > 0) && row.iter().any(|&x| x < 0) {
            return Err(Error::InvalidMatrix(MatrixDefect::MixedSigns, i));
        }
    }
    Ok(TeslerMatrix {
        n,
        entries: rows.concat(),
    })
}

impl TeslerMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn hooks(&self) -> Vec<i64> {
        hooks_of(&self.entries, self.n)
    }

    pub fn weight(&self) -> LaurentPoly {
        let (nonzero, rows_plus) = weight_key(&self.entries, self.n);
        weight_from_key(&nonzero, rows_plus, self.n)
    }

    /// Exactly one nonzero entry in every row.
    pub fn is_permutational(&self) -> bool {
        self.entries
            .chunks(self.n.max(1))
            .take(self.n)
            .all(|r| r.iter().filter(|&&x| x != 0).count() == 1)
    }

    pub fn negate(&self) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Debug for TeslerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

fn hooks_of(m: &[i64], n: usize) -> Vec<i64> {
    (0..n)
        .map(|i| {
            let right: i64 = (i..n).map(|j| m[i * n + j]).sum();
            let above: i64 = (0..i).map(|j| m[j * n + i]).sum();
            right - above
        })
        .collect()
}

/// Sorted nonzero entries and the number of positive rows: all the weight depends on.
fn weight_key(m: &[i64], n: usize) -> (Vec<i64>, usize) {
    let mut nonzero: Vec<i64> = m.iter().copied().filter(|&x| x != 0).collect();
    nonzero.sort_unstable();
    let rows_plus = (0..n)
        .filter(|&i| m[i * n + i..(i + 1) * n].iter().any(|&x| x > 0))
        .count();
    (nonzero, rows_plus)
}

fn weight_from_key(nonzero: &[i64], rows_plus: usize, n: usize) -> LaurentPoly {
    let positive = nonzero.iter().filter(|&&x| x > 0).count();
    let mut w: LaurentPoly = nonzero.iter().map(|&x| qt_int(x)).product();
    w *= &LaurentPoly::m()
        .pow((nonzero.len() - n) as i64)
        .expect("nonnegative power");
    if (positive + rows_plus) % 2 == 1 {
        w = -w;
    }
    w
}

/// Advance a signed weak composition to its colexicographic successor.
fn next_composition(row: &mut [i64]) -> bool {
    let Some(j) = row.iter().position(|&x| x != 0) else {
        return false;
    };
    if j + 1 == row.len() {
        return false;
    }
    let v = row[j];
    let sign = v.signum();
    row[j] = 0;
    row[j + 1] += sign;
    row[0] = v - sign;
    true
}

/// Signed weak compositions of `s` into `m` parts in colexicographic order.
pub fn signed_compositions(s: i64, m: usize) -> Vec<Vec<i64>> {
    if m == 0 {
        return if s == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut row = vec![0; m];
    row[0] = s;
    let mut out = vec![row.clone()];
    while next_composition(&mut row) {
        out.push(row.clone());
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

/// Streaming depth-first enumeration of `T(alpha)`.
pub struct TeslerIter {
    alpha: Vec<i64>,
    n: usize,
    mat: Vec<i64>,
    floor: usize,
    state: State,
}

impl TeslerIter {
    fn new(alpha: &[i64]) -> Self {
        let n = alpha.len();
        Self {
            alpha: alpha.to_vec(),
            n,
            mat: vec![0; n * n],
            floor: 0,
            state: State::Fresh,
        }
    }

    fn with_first_row(alpha: &[i64], row: &[i64]) -> Self {
        let mut it = Self::new(alpha);
        it.mat[..row.len()].copy_from_slice(row);
        it.floor = 1;
        it
    }

    fn first_row(&mut self, i: usize) -> bool {
        let n = self.n;
        let s = self.alpha[i] + (0..i).map(|j| self.mat[j * n + i]).sum::<i64>();
        let row = &mut self.mat[i * n + i..(i + 1) * n];
        row.fill(0);
        row[0] = s;
        s != 0
    }

    /// Try successors of rows `below - 1` down to the floor; returns the
    /// first level that must be refilled.
    fn bump_below(&mut self, below: usize) -> Option<usize> {
        let n = self.n;
        for k in (self.floor..below).rev() {
            if next_composition(&mut self.mat[k * n + k..(k + 1) * n]) {
                return Some(k + 1);
            }
        }
        None
    }

    /// Move to the next matrix; the current one is readable through `self.mat`.
    fn advance(&mut self) -> bool {
        let mut level = match self.state {
            State::Done => return false,
            State::Fresh => {
                self.state = State::Running;
                self.floor
            }
            State::Running => match self.bump_below(self.n) {
                Some(l) => l,
                None => {
                    self.state = State::Done;
                    return false;
                }
            },
        };
        loop {
            while level < self.n && self.first_row(level) {
                level += 1;
            }
            if level == self.n {
                return true;
            }
            match self.bump_below(level) {
                Some(l) => level = l,
                None => {
                    self.state = State::Done;
                    return false;
                }
            }
        }
    }
}

impl Iterator for TeslerIter {
    type Item = TeslerMatrix;

    fn next(&mut self) -> Option<TeslerMatrix> {
        if self.advance() {
            Some(TeslerMatrix {
                n: self.n,
                entries: self.mat.clone(),
            })
        } else {
            None
        }
    }
}

/// All Tesler matrices with hook sums `alpha`.
pub fn enumerate(alpha: &[i64]) -> TeslerIter {
    TeslerIter::new(alpha)
}

/// The permutational matrices in `T(alpha)`.
pub fn enumerate_permutational(alpha: &[i64]) -> impl Iterator<Item = TeslerMatrix> {
    enumerate(alpha).filter(TeslerMatrix::is_permutational)
}

/// Independent sub-enumerations, one per choice of first row.
fn first_row_shards(alpha: &[i64]) -> Vec<TeslerIter> {
    match alpha.first() {
        None => vec![TeslerIter::new(alpha)],
        Some(0) => Vec::new(),
        Some(&a) => signed_compositions(a, alpha.len())
            .into_iter()
            .map(|row| TeslerIter::with_first_row(alpha, &row))
            .collect(),
    }
}

type KeyCounts = HashMap<(Vec<i64>, usize), u64>;

fn count_keys(mut it: TeslerIter) -> KeyCounts {
    let mut counts = KeyCounts::new();
    while it.advance() {
        *counts.entry(weight_key(&it.mat, it.n)).or_default() += 1;
    }
    counts
}

fn merge(mut a: KeyCounts, b: KeyCounts) -> KeyCounts {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

/// `Tes_alpha(q, t)`: the weight sum over `T(alpha)`.
///
/// Matrices are grouped by the data their weight depends on, and the groups
/// are counted in parallel over first-row choices.
pub fn tes(alpha: &[i64]) -> LaurentPoly {
    let counts = first_row_shards(alpha)
        .into_par_iter()
        .map(count_keys)
        .reduce(KeyCounts::new, merge);
    let n = alpha.len();
    let mut keys: Vec<_> = counts.into_iter().collect();
    keys.sort();
    keys.into_iter()
        .map(|((nonzero, rows_plus), c)| weight_from_key(&nonzero, rows_plus, n).scale(&c.into()))
        .sum()
}

/// `|T(alpha)|`.
pub fn count(alpha: &[i64]) -> u64 {
    first_row_shards(alpha)
        .into_par_iter()
        .map(|mut it| {
            let mut c = 0;
            while it.advance() {
                c += 1;
            }
            c
        })
        .sum()
}

/// Parse a comma-separated hook vector such as `3,-3,2,-1`.
pub fn parse_hooks(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty hook vector".into()));
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad hook sum `{x}`")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> TeslerMatrix {
        validate(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn hook_sums() {
        let u = m(&[&[0, 1, 0, 2], &[0, -1, -1, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(u.hooks(), [3, -3, 2, -1]);
        assert_eq!(m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).hooks(), [1, 1, 1]);
        // Applying the definition directly gives -5 in the second position.
        assert_eq!(
            m(&[&[0, 3, 0], &[0, -1, -1], &[0, 0, 1]]).hooks(),
            [3, -5, 2]
        );
        assert_eq!(
            m(&[&[0, 1, 0, 2], &[0, 0, -1, -1], &[0, 0, 1, 0], &[0, 0, 0, 1]]).hooks(),
            [3, -3, 2, 0]
        );
    }

    #[test]
    fn validation() {
        let err = |rows: Vec<Vec<i64>>| validate(&rows).unwrap_err();
        assert_eq!(
            err(vec![vec![1, -1], vec![0, 1]]),
            Error::InvalidMatrix(MatrixDefect::MixedSigns, 0)
        );
        assert_eq!(
            err(vec![vec![0, 0], vec![0, 1]]),
            Error::InvalidMatrix(MatrixDefect::ZeroRow, 0)
        );
        assert_eq!(
            err(vec![vec![1, 0], vec![1, 1]]),
            Error::InvalidMatrix(MatrixDefect::NotUpperTriangular, 1)
        );
        assert_eq!(
            err(vec![vec![1, 0], vec![1]]),
            Error::InvalidMatrix(MatrixDefect::NotSquare, 1)
        );
        assert_eq!(
            Error::InvalidMatrix(MatrixDefect::MixedSigns, 0).to_string(),
            "row not sign-homogeneous (row 0)"
        );
        assert!(validate(&[vec![1, 0], vec![0, 1]]).is_ok());
    }

    #[test]
    fn small_enumerations() {
        let rows = |a: &[i64]| enumerate(a).map(|u| u.rows()).collect::<Vec<_>>();
        assert_eq!(
            rows(&[1, 1]),
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 2]]]
        );
        assert_eq!(
            rows(&[2, 0]),
            vec![vec![vec![1, 1], vec![0, 1]], vec![vec![0, 2], vec![0, 2]]]
        );
        assert!(rows(&[0, 1]).is_empty());
        let counts: Vec<u64> = (1..=7).map(|n| count(&vec![1; n])).collect();
        assert_eq!(counts, [1, 2, 7, 40, 357, 4820, 96030]);
    }

    #[test]
    fn weights_and_tesler_functions() {
        assert!(m(&[&[1, 0], &[0, 1]]).weight().is_one());
        assert_eq!(m(&[&[0, 1], &[0, 2]]).weight(), p("q + t"));
        let u = m(&[&[0, 1, 0, 2], &[0, -1, -1, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let want = -(LaurentPoly::m().pow(2).unwrap() * p("q + t")).shift(-2, -2);
        assert_eq!(u.weight(), want);
        assert!(tes(&[1]).is_one());
        assert_eq!(tes(&[1, 1]), p("1 + q + t"));
        assert_eq!(tes(&[2, 0]), p("q^2 + q*t + t^2 + q + t - 1"));
        assert!(tes(&[0, 1]).is_zero());
    }

    #[test]
    fn parallel_fold_matches_stream() {
        for alpha in [
            vec![1, 1, 1, 1],
            vec![2, -1, 0, 1],
            vec![-2, 1, 2],
            vec![1, -2, -1, 2],
        ] {
            let streamed: LaurentPoly = enumerate(&alpha).map(|u| u.weight()).sum();
            assert_eq!(tes(&alpha), streamed, "{alpha:?}");
            for u in enumerate(&alpha) {
                assert_eq!(u.hooks(), alpha);
            }
        }
    }

    #[test]
    fn permutational_subset() {
        assert_eq!(enumerate_permutational(&[1, 1]).count(), 2);
        assert_eq!(enumerate_permutational(&[1, 1, 1]).count(), 6);
        let want = m(&[&[0, 2, 0, 0], &[0, 0, 0, 2], &[0, 0, 0, 3], &[0, 0, 0, 6]]);
        assert!(enumerate_permutational(&[2, 0, 3, 1]).any(|u| u == want));
    }

    #[test]
    fn json_round_trip() {
        let u = m(&[&[0, 1], &[0, 2]]);
        let s = serde_json::to_string(&u).unwrap();
        assert_eq!(s, r#"{"n":2,"rows":[[0,1],[0,2]]}"#);
        assert_eq!(serde_json::from_str::<TeslerMatrix>(&s).unwrap(), u);
        assert!(serde_json::from_str::<TeslerMatrix>(r#"{"n":2,"rows":[[0,0],[0,2]]}"#).is_err());
    }

    #[test]
    fn parses_hook_vectors() {
        assert_eq!(parse_hooks("3,-3, 2,-1").unwrap(), [3, -3, 2, -1]);
        assert!(parse_hooks("1,x").is_err());
        assert!(parse_hooks("").is_err());
    }
}
