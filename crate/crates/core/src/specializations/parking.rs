//! Parking functions, considerate cars and the decorated area statistic.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

use super::osp::OrderedSetPartition;

/// A preference list `f(1) .. f(n)` with values in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParkingFunction {
    prefs: Vec<usize>,
}

impl ParkingFunction {
    pub fn new(prefs: Vec<usize>) -> Result<Self> {
        let a = park_analysis(&prefs);
        if !a.valid {
            return Err(Error::Precondition(format!(
                "{} is not a parking function",
                fmt_prefs(&prefs)
            )));
        }
        Ok(Self { prefs })
    }

    pub fn prefs(&self) -> &[usize] {
        &self.prefs
    }

    pub fn n(&self) -> usize {
        self.prefs.len()
    }

    pub fn analysis(&self) -> ParkAnalysis {
        park_analysis(&self.prefs)
    }
}

fn fmt_prefs(prefs: &[usize]) -> String {
    let sep = if prefs.len() <= 9 { "" } else { "," };
    prefs
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for ParkingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_prefs(&self.prefs))
    }
}

impl FromStr for ParkingFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad preference list `{s}`"));
        let prefs = if s.contains(',') {
            s.split(',')
                .map(|x| x.trim().parse().map_err(|_| bad()))
                .collect::<Result<Vec<usize>>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<Vec<usize>>>()?
        };
        Self::new(prefs)
    }
}

/// A parking function together with a set of cars that are all considerate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedParkingFunction {
    pub pf: ParkingFunction,
    pub s: BTreeSet<usize>,
}

/// Outcome of running the parking process. `car[i]` is the car in spot
/// `i + 1` and `spot[i]` the spot of car `i + 1`; both are empty when the
/// process fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParkAnalysis {
    pub valid: bool,
    pub car: Vec<usize>,
    pub spot: Vec<usize>,
    pub cons: BTreeSet<usize>,
}

pub fn park_analysis(f: &[usize]) -> ParkAnalysis {
    let n = f.len();
    let fail = ParkAnalysis {
        valid: false,
        car: Vec::new(),
        spot: Vec::new(),
        cons: BTreeSet::new(),
    };
    let mut car = vec![0; n];
    let mut spot = vec![0; n];
    for (i, &want) in f.iter().enumerate() {
        if want == 0 || want > n {
            return fail;
        }
        match (want - 1..n).find(|&s| car[s] == 0) {
            Some(s) => {
                car[s] = i + 1;
                spot[i] = s + 1;
            }
            None => return fail,
        }
    }
    let wanted: BTreeSet<usize> = f.iter().copied().collect();
    let cons = (1..=n)
        .filter(|&i| !wanted.contains(&spot[i - 1]))
        .collect();
    ParkAnalysis {
        valid: true,
        car,
        spot,
        cons,
    }
}

/// Every parking function of order `n` in which all cars of `s` are
/// considerate, in lexicographic order of preference lists.
pub fn cpf(n: usize, s: &BTreeSet<usize>) -> Vec<DecoratedParkingFunction> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut f = vec![1; n];
    loop {
        let a = park_analysis(&f);
        if a.valid && s.is_subset(&a.cons) {
            out.push(DecoratedParkingFunction {
                pf: ParkingFunction { prefs: f.clone() },
                s: s.clone(),
            });
        }
        let Some(k) = (0..n).rev().find(|&k| f[k] < n) else {
            break;
        };
        f[k] += 1;
        f[k + 1..].iter_mut().for_each(|x| *x = 1);
    }
    out
}

/// `car(f)` with a bar before every car outside `s`, except the first.
pub fn car_bars(f: &ParkingFunction, s: &BTreeSet<usize>) -> Result<OrderedSetPartition> {
    let a = f.analysis();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (k, &c) in a.car.iter().enumerate() {
        match blocks.last_mut() {
            Some(b) if k > 0 && s.contains(&c) => {
                if b.last().is_some_and(|&x| x > c) {
                    return Err(Error::Precondition(format!(
                        "car {c} is not preceded by a smaller car"
                    )));
                }
                b.push(c);
            }
            _ => blocks.push(vec![c]),
        }
    }
    OrderedSetPartition::new(blocks)
}

/// `sum_i spot_i - f_i - |{f_i..spot_i} ∩ {spot_j : j in s}|`.
pub fn area(f: &ParkingFunction, s: &BTreeSet<usize>) -> i64 {
    let a = f.analysis();
    let marked: BTreeSet<usize> = s
        .iter()
        .filter(|&&j| j >= 1 && j <= f.n())
        .map(|&j| a.spot[j - 1])
        .collect();
    f.prefs
        .iter()
        .zip(&a.spot)
        .map(|(&fi, &si)| si as i64 - fi as i64 - marked.range(fi..=si).count() as i64)
        .sum()
}

/// `alpha_1 (alpha_1 + n alpha_2) ... (alpha_1 + ... + alpha_{n-1} + 2 alpha_n)`.
pub fn tes_11(alpha: &[i64]) -> BigInt {
    let n = alpha.len() as i64;
    let mut prefix = BigInt::from(0);
    let mut out = BigInt::one();
    for (i, &a) in alpha.iter().enumerate() {
        let mult = if i == 0 { 1 } else { n - i as i64 + 1 };
        out *= &prefix + BigInt::from(mult * a);
        prefix += a;
    }
    out
}

/// `prod_i alpha_{car_{f_i}(f)}`.
pub fn wt_alpha(alpha: &[i64], f: &ParkingFunction) -> Result<BigInt> {
    if alpha.len() != f.n() {
        return Err(Error::LengthMismatch {
            expected: f.n(),
            got: alpha.len(),
        });
    }
    let a = f.analysis();
    Ok(f.prefs
        .iter()
        .map(|&fi| BigInt::from(alpha[a.car[fi - 1] - 1]))
        .product())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pf(s: &str) -> ParkingFunction {
        s.parse().unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn worked_parking_function() {
        let a = park_analysis(&[5, 1, 2, 1, 1, 4, 2]);
        assert!(a.valid);
        assert_eq!(a.car, vec![2, 3, 4, 5, 1, 6, 7]);
        assert_eq!(a.spot, vec![5, 1, 2, 3, 4, 6, 7]);
        assert!(a.cons.is_superset(&set(&[4, 7])));
        let f = pf("5121142");
        assert_eq!(
            car_bars(&f, &set(&[4, 7])).unwrap().to_string(),
            "2|34|5|1|67"
        );
        assert_eq!(area(&f, &set(&[4, 7])), 8);
        assert!(!park_analysis(&[3, 1, 3]).valid);
        assert!(park_analysis(&[3, 1, 1]).valid);
        assert!("313".parse::<ParkingFunction>().is_err());
    }

    #[test]
    fn cpf_example() {
        let got: Vec<String> = cpf(3, &set(&[2]))
            .iter()
            .map(|d| d.pf.to_string())
            .collect();
        assert_eq!(got, vec!["111", "113", "221"]);
    }

    #[test]
    fn car_and_spot_are_inverse() {
        for d in cpf(4, &BTreeSet::new()) {
            let a = d.pf.analysis();
            for i in 0..4 {
                assert_eq!(a.car[a.spot[i] - 1], i + 1);
            }
            let classical: i64 =
                d.pf.prefs()
                    .iter()
                    .zip(&a.spot)
                    .map(|(&f, &s)| s as i64 - f as i64)
                    .sum();
            assert_eq!(area(&d.pf, &BTreeSet::new()), classical);
        }
    }

    #[test]
    fn product_formula() {
        assert_eq!(tes_11(&[1, 1, 1]), BigInt::from(16));
        assert_eq!(tes_11(&[2, 0, 3, 1]), BigInt::from(308));
        assert_eq!(tes_11(&[5]), BigInt::from(5));
        assert_eq!(cpf(3, &BTreeSet::new()).len(), 16);
    }

    #[test]
    fn weights() {
        assert_eq!(
            wt_alpha(&[2, -1, 0, 3], &pf("2121")).unwrap(),
            BigInt::from(4)
        );
        for d in cpf(3, &BTreeSet::new()) {
            assert_eq!(wt_alpha(&[1, 1, 1], &d.pf).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn weighted_count_is_the_product() {
        let alpha = [2, 0, -1, 1];
        let s: BTreeSet<usize> = (1..=4).filter(|&i| alpha[i - 1] == 0).collect();
        let total: BigInt = cpf(4, &s)
            .iter()
            .map(|d| wt_alpha(&alpha, &d.pf).unwrap())
            .sum();
        assert_eq!(total, tes_11(&alpha));
    }
}
