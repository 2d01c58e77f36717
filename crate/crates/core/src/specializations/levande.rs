//! The map from nonnegative Tesler matrices with 0/1 hook sums to ordered
//! set partitions, via an intermediary array of rows.

use crate::error::{Error, Result};
use crate::tesler::TeslerMatrix;

use super::osp::OrderedSetPartition;

/// Rows are listed top to bottom, each read left to right.
pub type LevandeArray = Vec<Vec<usize>>;

pub fn levande_map(u: &TeslerMatrix) -> Result<(LevandeArray, OrderedSetPartition)> {
    let n = u.n();
    if u.hooks().iter().any(|&a| a != 0 && a != 1) {
        return Err(Error::Precondition("hook sums must be 0 or 1".into()));
    }
    if u.rows().iter().flatten().any(|&x| x < 0) {
        return Err(Error::Precondition("matrix must be nonnegative".into()));
    }
    let mut array: LevandeArray = Vec::new();
    for j in (1..=n).rev() {
        for _ in 0..u.get(j - 1, j - 1) {
            array.push(vec![j]);
        }
    }
    for j in (1..=n).rev() {
        for i in (1..j).rev() {
            for _ in 0..u.get(i - 1, j - 1) {
                let row = array
                    .iter_mut()
                    .find(|r| r[0] == j)
                    .ok_or_else(|| Error::Internal(format!("no free {j} in the array")))?;
                row.insert(0, i);
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = array.iter().rev().map(|r| vec![r[0]]).collect();
    for i in 1..=n {
        if blocks.iter().any(|b| b[0] == i) {
            continue;
        }
        let row = array
            .iter()
            .rev()
            .find(|r| r.contains(&i))
            .ok_or_else(|| Error::Internal(format!("{i} missing from the array")))?;
        let lead = row[0];
        blocks
            .iter_mut()
            .find(|b| b[0] == lead)
            .ok_or_else(|| Error::Internal("leading entry without a block".into()))?
            .push(i);
    }
    let pi = OrderedSetPartition::new(blocks)?;
    Ok((array, pi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tesler::validate;

    #[test]
    fn worked_example() {
        let u = validate(&[
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 2],
        ])
        .unwrap();
        let (array, pi) = levande_map(&u).unwrap();
        assert_eq!(array, vec![vec![1, 4], vec![4], vec![2, 3]]);
        assert_eq!(pi.to_string(), "23|4|1");
    }

    #[test]
    fn identity_gives_singletons() {
        let u = validate(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(levande_map(&u).unwrap().1.to_string(), "1|2|3");
    }

    #[test]
    fn rejects_bad_input() {
        let u = validate(&[vec![2, 0], vec![0, 1]]).unwrap();
        assert!(levande_map(&u).is_err());
    }
}
