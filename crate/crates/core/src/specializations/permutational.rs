//! The `t = 1` specialization through permutational Tesler matrices.

use crate::error::{Error, Result};
use crate::qt_algebra::{q_int, LaurentPoly};
use crate::tesler::{validate, TeslerMatrix};

use super::osp::{osp_enumerate, set_of, OrderedSetPartition};

/// `(target, tail)` of `pi` with respect to `alpha`, both 1-based in index.
pub fn target_tail(alpha: &[i64], pi: &OrderedSetPartition) -> Result<(Vec<usize>, Vec<i64>)> {
    let n = alpha.len();
    if pi.n() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: pi.n(),
        });
    }
    let mut mins = pi.minima();
    mins.sort_unstable();
    if mins.into_iter().ne(set_of(alpha)) {
        return Err(Error::Precondition(
            "block minima must be the nonzero positions of alpha".into(),
        ));
    }
    let word = pi.word();
    let bl: Vec<usize> = word.iter().map(|&x| pi.block_of(x).unwrap_or(0)).collect();
    let block_alpha: Vec<i64> = pi.minima().iter().map(|&m| alpha[m - 1]).collect();
    let mut target = vec![0; n];
    let mut tail = vec![0; n];
    for (p, &i) in word.iter().enumerate() {
        target[i - 1] = word[p + 1..].iter().copied().find(|&x| x > i).unwrap_or(i);
        let m = (0..p).rev().find(|&r| word[r] > i).map_or(0, |r| bl[r] + 1);
        tail[i - 1] = block_alpha[m..=bl[p]].iter().sum();
    }
    Ok((target, tail))
}

/// The permutational matrix with `tail_i` at `(i, target_i)`, or `None` when
/// some tail vanishes and the matrix would have a zero row.
pub fn psi(alpha: &[i64], pi: &OrderedSetPartition) -> Result<Option<TeslerMatrix>> {
    let (target, tail) = target_tail(alpha, pi)?;
    if tail.contains(&0) {
        return Ok(None);
    }
    let n = alpha.len();
    let mut rows = vec![vec![0; n]; n];
    for i in 0..n {
        rows[i][target[i] - 1] = tail[i];
    }
    validate(&rows).map(Some)
}

/// `sum_pi prod_i [tail_i]_q` over `OSP(n, set(alpha))`.
pub fn tes_t1(alpha: &[i64]) -> LaurentPoly {
    osp_enumerate(alpha.len(), &set_of(alpha))
        .iter()
        .map(|pi| {
            let (_, tail) = target_tail(alpha, pi).expect("minima match by construction");
            tail.into_iter().map(q_int).product::<LaurentPoly>()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn osp(s: &str) -> OrderedSetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn worked_target_and_tail() {
        let (target, tail) = target_tail(&[2, 0, 3, 1], &osp("3|12|4")).unwrap();
        assert_eq!(target, vec![2, 4, 4, 4]);
        assert_eq!(tail, vec![2, 2, 3, 6]);
        let (_, tail) = target_tail(&[2, 0, -3, 1], &osp("3|12|4")).unwrap();
        assert_eq!(tail[3], 0);
        assert!(target_tail(&[2, 1, 3, 1], &osp("3|12|4")).is_err());
    }

    #[test]
    fn psi_examples() {
        let u = psi(&[2, 0, 3, 1], &osp("3|12|4")).unwrap().unwrap();
        assert_eq!(
            u.rows(),
            vec![
                vec![0, 2, 0, 0],
                vec![0, 0, 0, 2],
                vec![0, 0, 0, 3],
                vec![0, 0, 0, 6]
            ]
        );
        assert_eq!(u.hooks(), vec![2, 0, 3, 1]);
        let u = psi(&[1, 1, 1], &osp("1|2|3")).unwrap().unwrap();
        assert_eq!(u.rows(), vec![vec![0, 1, 0], vec![0, 0, 2], vec![0, 0, 3]]);
        assert_eq!(u.hooks(), vec![1, 1, 1]);
        assert!(psi(&[2, 0, -3, 1], &osp("3|12|4")).unwrap().is_none());
    }

    #[test]
    fn t1_small() {
        assert_eq!(tes_t1(&[1, 1]).to_string(), "2 + q");
        assert!(tes_t1(&[0, 1]).is_zero());
    }
}
