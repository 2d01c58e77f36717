//! Partitions, cell statistics, and covering relations in Young's lattice.
//!
//! Diagrams are in French orientation: cell `(x, y)` sits in column `x` of
//! row `y`, both zero-based, with row 0 the longest.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qt_algebra::LaurentPoly;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

/// Arm, coarm, leg and coleg of a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellStats {
    pub a: usize,
    pub a_prime: usize,
    pub l: usize,
    pub l_prime: usize,
}

/// `T_mu`, `B_mu`, `Pi_mu` and `w_mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub t: LaurentPoly,
    pub b: LaurentPoly,
    pub pi: LaurentPoly,
    pub w: LaurentPoly,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.parts.get(y).is_some_and(|&p| x < p)
    }

    /// Cells in row-major order, bottom row first.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(y, &p)| (0..p).map(move |x| (x, y)))
    }

    pub fn conjugate(&self) -> Self {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width)
            .map(|x| self.parts.iter().filter(|&&p| p > x).count())
            .collect();
        Self { parts }
    }

    pub fn cell_stats(&self, x: usize, y: usize) -> Result<CellStats> {
        if !self.contains(x, y) {
            return Err(Error::CellOutside(x, y));
        }
        Ok(self.stats_unchecked(x, y))
    }

    fn stats_unchecked(&self, x: usize, y: usize) -> CellStats {
        CellStats {
            a: self.parts[y] - 1 - x,
            a_prime: x,
            l: self.parts[y + 1..].iter().filter(|&&p| p > x).count(),
            l_prime: y,
        }
    }

    /// Exponents of the monomial `T_mu`.
    pub fn t_exponents(&self) -> (i32, i32) {
        self.cells()
            .fold((0, 0), |(a, b), (x, y)| (a + x as i32, b + y as i32))
    }

    /// Monomials of `B_mu`, one per cell, as exponent pairs.
    pub fn b_monomials(&self) -> Vec<(i32, i32)> {
        self.cells().map(|(x, y)| (x as i32, y as i32)).collect()
    }

    pub fn b_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.b_monomials().into_iter().map(|e| (e, 1)))
    }

    pub fn stats(&self) -> Result<PartitionStats> {
        if self.is_empty() {
            return Err(Error::EmptyPartition);
        }
        let (tq, tt) = self.t_exponents();
        let mut pi = LaurentPoly::one();
        let mut w = LaurentPoly::one();
        for (x, y) in self.cells() {
            let s = self.stats_unchecked(x, y);
            let (a, l) = (s.a as i32, s.l as i32);
            if (x, y) != (0, 0) {
                pi *= &LaurentPoly::from_terms([((0, 0), 1), ((x as i32, y as i32), -1)]);
            }
            w *= &LaurentPoly::from_terms([((a, 0), 1), ((0, l + 1), -1)]);
            w *= &LaurentPoly::from_terms([((0, l), 1), ((a + 1, 0), -1)]);
        }
        Ok(PartitionStats {
            t: LaurentPoly::qt_power(tq, tt),
            b: self.b_poly(),
            pi,
            w,
        })
    }

    /// Partitions obtained by adding one cell, ordered by the row of the added cell.
    pub fn covers(&self) -> Vec<(Partition, (usize, usize))> {
        let mut out = Vec::new();
        for y in 0..=self.parts.len() {
            let x = self.parts.get(y).copied().unwrap_or(0);
            let addable = y == 0 || self.parts[y - 1] > x;
            if addable {
                let mut parts = self.parts.clone();
                if y == parts.len() {
                    parts.push(1);
                } else {
                    parts[y] += 1;
                }
                out.push((Partition { parts }, (x, y)));
            }
        }
        out
    }

    /// Partitions obtained by removing one cell, ordered by the row of the removed cell.
    pub fn cocovers(&self) -> Vec<(Partition, (usize, usize))> {
        let mut out = Vec::new();
        for y in 0..self.parts.len() {
            let p = self.parts[y];
            let removable = self.parts.get(y + 1).is_none_or(|&next| next < p);
            if removable {
                let mut parts = self.parts.clone();
                parts[y] -= 1;
                if parts[y] == 0 {
                    parts.pop();
                }
                out.push((Partition { parts }, (p - 1, y)));
            }
        }
        out
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad part `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// A weakly decreasing vector of nonzero integers; negative parts allowed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPartition {
    parts: Vec<i32>,
}

impl LaurentPartition {
    pub fn new(parts: Vec<i32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse(
                "Laurent partition parts must be nonzero".into(),
            ));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(
                "Laurent partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Self { parts })
    }

    /// `sort(alpha)`: drop zeros and sort decreasingly.
    pub fn sorted_from(alpha: &[i32]) -> Self {
        let mut parts: Vec<i32> = alpha.iter().copied().filter(|&a| a != 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[i32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for LaurentPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for LaurentPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::default());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad part `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn enumerates_partitions() {
        let p3: Vec<String> = partitions_of(3).iter().map(|p| p.to_string()).collect();
        assert_eq!(p3, ["3", "2,1", "1,1,1"]);
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        let counts: Vec<usize> = (0..=8).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn cell_statistics() {
        let s = part("4,3").cell_stats(2, 1).unwrap();
        assert_eq!(
            s,
            CellStats {
                a: 0,
                a_prime: 2,
                l: 0,
                l_prime: 1
            }
        );
        assert_eq!(
            part("1").cell_stats(0, 0).unwrap(),
            CellStats {
                a: 0,
                a_prime: 0,
                l: 0,
                l_prime: 0
            }
        );
        assert_eq!(
            part("2,2").cell_stats(0, 0).unwrap(),
            CellStats {
                a: 1,
                a_prime: 0,
                l: 1,
                l_prime: 0
            }
        );
        assert_eq!(part("2,2").cell_stats(2, 0), Err(Error::CellOutside(2, 0)));
    }

    #[test]
    fn small_partition_stats() {
        let s = part("1").stats().unwrap();
        assert!(s.t.is_one() && s.b.is_one() && s.pi.is_one());
        assert_eq!(s.w, LaurentPoly::m());
        let s = part("2").stats().unwrap();
        assert_eq!(s.t, LaurentPoly::q());
        assert_eq!(s.b, "1 + q".parse().unwrap());
        assert_eq!(s.pi, "1 - q".parse().unwrap());
        let w: LaurentPoly = "q - t".parse::<LaurentPoly>().unwrap()
            * "1 - q^2".parse::<LaurentPoly>().unwrap()
            * LaurentPoly::m();
        assert_eq!(s.w, w);
        assert_eq!(
            part("2,2").stats().unwrap().b,
            "1 + q + t + q*t".parse().unwrap()
        );
        assert_eq!(Partition::empty().stats(), Err(Error::EmptyPartition));
    }

    #[test]
    fn covering_relations() {
        let c: Vec<String> = part("1")
            .covers()
            .iter()
            .map(|(m, _)| m.to_string())
            .collect();
        assert_eq!(c, ["2", "1,1"]);
        assert_eq!(part("1").covers()[1].1, (0, 1));
        let c: Vec<String> = part("2,1")
            .cocovers()
            .iter()
            .map(|(m, _)| m.to_string())
            .collect();
        assert_eq!(c, ["1,1", "2"]);
        assert!(Partition::empty().cocovers().is_empty());
    }

    #[test]
    fn lattice_invariants() {
        for n in 1..=7 {
            for mu in partitions_of(n) {
                let s = mu.stats().unwrap();
                assert_eq!(s.b.eval_at_one(), n.into());
                let prod: LaurentPoly = mu
                    .b_monomials()
                    .into_iter()
                    .map(|(i, j)| LaurentPoly::qt_power(i, j))
                    .product();
                assert_eq!(s.t, prod);
                if n <= 6 {
                    let c = mu.conjugate().stats().unwrap();
                    assert_eq!(c.t, s.t.swap_qt());
                    assert_eq!(c.b, s.b.swap_qt());
                    assert_eq!(c.pi, s.pi.swap_qt());
                    assert_eq!(c.w, s.w.swap_qt());
                }
                let (tq, tt) = mu.t_exponents();
                let mut seen = Vec::new();
                for (nu, (x, y)) in mu.covers() {
                    let (uq, ut) = nu.t_exponents();
                    assert_eq!((uq - tq, ut - tt), (x as i32, y as i32));
                    assert!(!seen.contains(&(x, y)));
                    seen.push((x, y));
                    assert!(nu
                        .cocovers()
                        .iter()
                        .any(|(back, cell)| back == &mu && *cell == (x, y)));
                }
                for (nu, _) in mu.cocovers() {
                    assert!(nu.covers().iter().any(|(up, _)| up == &mu));
                }
            }
        }
    }

    #[test]
    fn parses_and_prints() {
        assert_eq!(part("2,2,1").parts(), &[2, 2, 1]);
        assert!("1,2".parse::<Partition>().is_err());
        let r: LaurentPartition = "3,-1".parse().unwrap();
        assert_eq!(r.to_string(), "3,-1");
        assert_eq!(
            LaurentPartition::sorted_from(&[0, -1, 2, 0, 1]).parts(),
            &[2, 1, -1]
        );
    }
}
