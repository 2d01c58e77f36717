//! Ordered set partitions, the `inv` statistic and q-Stirling numbers.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qt_algebra::{q_int, LaurentPoly};

/// A sequence of disjoint nonempty blocks covering `{1..n}`.
/// Elements are stored ascending within each block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedSetPartition {
    blocks: Vec<Vec<usize>>,
}

impl OrderedSetPartition {
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut blocks = blocks;
        let mut seen = BTreeSet::new();
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::Precondition("empty block".into()));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if !seen.insert(x) {
                    return Err(Error::Precondition(format!("{x} appears twice")));
                }
            }
        }
        let n = seen.len();
        if seen.iter().copied().ne(1..=n) {
            return Err(Error::Precondition("blocks must cover 1..n".into()));
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn minima(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b[0]).collect()
    }

    /// 0-based index of the block containing `i`.
    pub fn block_of(&self, i: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&i))
    }

    /// The elements read left to right, blocks in order.
    pub fn word(&self) -> Vec<usize> {
        self.blocks.concat()
    }
}

impl fmt::Display for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() <= 9 { "" } else { "," };
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(sep)
            })
            .collect();
        f.write_str(&parts.join("|"))
    }
}

impl FromStr for OrderedSetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad ordered set partition `{s}`"));
        let blocks = s
            .trim()
            .split('|')
            .map(|b| {
                let b = b.trim();
                if b.contains(',') {
                    b.split(',')
                        .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
                        .collect()
                } else {
                    b.chars()
                        .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                        .collect()
                }
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        Self::new(blocks)
    }
}

/// `{i : alpha_i != 0}`, 1-based.
pub fn set_of(alpha: &[i64]) -> BTreeSet<usize> {
    alpha
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, _)| i + 1)
        .collect()
}

/// All ordered set partitions of `{1..n}` whose block minima are exactly `s`.
pub fn osp_enumerate(n: usize, s: &BTreeSet<usize>) -> Vec<OrderedSetPartition> {
    if !s.contains(&1) || s.iter().any(|&x| x > n) {
        return Vec::new();
    }
    let mins: Vec<usize> = s.iter().copied().collect();
    let rest: Vec<usize> = (1..=n).filter(|x| !s.contains(x)).collect();
    let mut out = Vec::new();
    for order in permutations(&mins) {
        let mut blocks: Vec<Vec<usize>> = order.iter().map(|&m| vec![m]).collect();
        fill(&rest, &mut blocks, &mut out);
    }
    out
}

fn fill(rest: &[usize], blocks: &mut Vec<Vec<usize>>, out: &mut Vec<OrderedSetPartition>) {
    let Some((&x, tail)) = rest.split_first() else {
        let mut b = blocks.clone();
        b.iter_mut().for_each(|v| v.sort_unstable());
        out.push(OrderedSetPartition { blocks: b });
        return;
    };
    for k in 0..blocks.len() {
        if blocks[k][0] < x {
            blocks[k].push(x);
            fill(tail, blocks, out);
            blocks[k].pop();
        }
    }
}

fn permutations(xs: &[usize]) -> Vec<Vec<usize>> {
    if xs.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Pairs `a > b` with `a` in a block strictly left of `b`'s block and `b`
/// minimal in its block.
pub fn inv_stat(pi: &OrderedSetPartition) -> usize {
    let bl = pi.blocks();
    (0..bl.len())
        .map(|k| {
            let b = bl[k][0];
            bl[..k].iter().flatten().filter(|&&a| a > b).count()
        })
        .sum()
}

/// `S_q(n, k) = S_q(n-1, k-1) + [k]_q S_q(n-1, k)`, `S_q(0, 0) = 1`.
pub fn q_stirling(n: usize, k: usize) -> LaurentPoly {
    let mut row = vec![LaurentPoly::one()];
    for m in 1..=n {
        let next = (0..=m)
            .map(|j| {
                let mut v = LaurentPoly::zero();
                if j >= 1 && j - 1 < row.len() {
                    v += &row[j - 1];
                }
                if j < row.len() {
                    v += &q_int(j as i64) * &row[j];
                }
                v
            })
            .collect();
        row = next;
    }
    row.get(k).cloned().unwrap_or_else(LaurentPoly::zero)
}

/// `prod_j [alpha_1 + ... + alpha_j]_q` for `alpha` in `{0,1}^n`.
pub fn tes_t0(alpha: &[i64]) -> Result<LaurentPoly> {
    if alpha.iter().any(|&a| a != 0 && a != 1) {
        return Err(Error::Precondition("hook sums must be 0 or 1".into()));
    }
    let mut s = 0;
    Ok(alpha
        .iter()
        .map(|&a| {
            s += a;
            q_int(s)
        })
        .product())
}

/// `sum_{pi in OSP(n, set(alpha))} q^inv(pi)`.
pub fn inv_generating_function(alpha: &[i64]) -> LaurentPoly {
    osp_enumerate(alpha.len(), &set_of(alpha))
        .iter()
        .map(|pi| LaurentPoly::qt_power(inv_stat(pi) as i32, 0))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    fn strs(v: &[OrderedSetPartition]) -> BTreeSet<String> {
        v.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn enumerates_small_cases() {
        let got = strs(&osp_enumerate(3, &set(&[1, 2])));
        let want: BTreeSet<String> = ["1|23", "23|1", "13|2", "2|13"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(got, want);
        assert_eq!(strs(&osp_enumerate(3, &set(&[1]))), set_str(&["123"]));
        assert!(osp_enumerate(3, &set(&[2])).is_empty());
        let big = osp_enumerate(7, &set(&[1, 2, 4, 7]));
        assert!(big.contains(&"7|236|45|1".parse().unwrap()));
    }

    fn set_str(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn inv_examples() {
        let p = |s: &str| s.parse::<OrderedSetPartition>().unwrap();
        assert_eq!(inv_stat(&p("5|24|13")), 4);
        assert_eq!(inv_stat(&p("1|23")), 0);
        assert_eq!(inv_stat(&p("23|1")), 2);
    }

    #[test]
    fn parse_round_trip_and_rejects() {
        let p: OrderedSetPartition = "23|4|1".parse().unwrap();
        assert_eq!(p.to_string(), "23|4|1");
        assert_eq!(p.minima(), vec![2, 4, 1]);
        assert!("12|2".parse::<OrderedSetPartition>().is_err());
        assert!("13".parse::<OrderedSetPartition>().is_err());
        let long: OrderedSetPartition = "1,10|2,3,4,5,6,7,8,9".parse().unwrap();
        assert_eq!(long.to_string(), "1,10|2,3,4,5,6,7,8,9");
    }

    #[test]
    fn q_stirling_values() {
        assert!(q_stirling(0, 0).is_one());
        assert_eq!(q_stirling(3, 2).to_string(), "2 + q");
        for n in 0..=8 {
            assert!(q_stirling(n, n).is_one());
        }
        assert!(q_stirling(3, 4).is_zero());
        assert!(q_stirling(3, 0).is_zero());
    }

    #[test]
    fn t0_product_matches_inv_sum() {
        assert_eq!(tes_t0(&[1, 1, 0]).unwrap().to_string(), "1 + 2*q + q^2");
        assert!(tes_t0(&[0, 1, 1]).unwrap().is_zero());
        assert!(tes_t0(&[2]).is_err());
        for n in 1..=5usize {
            for mask in 0..(1u32 << n) {
                let alpha: Vec<i64> = (0..n).map(|i| ((mask >> i) & 1) as i64).collect();
                assert_eq!(
                    tes_t0(&alpha).unwrap(),
                    inv_generating_function(&alpha),
                    "{alpha:?}"
                );
            }
        }
    }
}
