//! Plethystic evaluation `f[S]` at finite signed alphabets of monomials.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::qt_algebra::LaurentPoly;
use crate::young::{partitions_of, LaurentPartition, Partition};

/// Largest `|lambda|` accepted by [`schur_to_monomial`].
pub const SCHUR_SIZE_CAP: usize = 8;

/// A formal integer combination of monic monomials in `q` and `t`.
///
/// Stored as a Laurent polynomial: a term `c q^i t^j` means the monomial
/// `q^i t^j` appears with multiplicity `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet(LaurentPoly);

/// The alphabets that occur in Pieri and eigenvalue computations.
#[derive(Clone, Copy, Debug)]
pub enum AlphabetExpr<'a> {
    M,
    B(&'a Partition),
    BMinusOne(&'a Partition),
    MB(&'a Partition),
    MBMinusOne(&'a Partition),
}

impl Alphabet {
    pub fn from_poly(p: LaurentPoly) -> Self {
        Self(p)
    }

    pub fn as_poly(&self) -> &LaurentPoly {
        &self.0
    }

    /// True when every multiplicity is positive.
    pub fn is_plain(&self) -> bool {
        self.0.is_nonnegative()
    }

    /// Monomials as exponent pairs, each repeated by its multiplicity.
    fn plain_monomials(&self) -> Result<Vec<(i32, i32)>> {
        let mut out = Vec::new();
        for (e, c) in self.0.terms() {
            let c = c.to_usize().ok_or(Error::SignedAlphabet)?;
            out.extend(std::iter::repeat_n(e, c));
        }
        Ok(out)
    }
}

pub fn alphabet_of(expr: AlphabetExpr<'_>) -> Alphabet {
    let one = LaurentPoly::one();
    let p = match expr {
        AlphabetExpr::M => LaurentPoly::m(),
        AlphabetExpr::B(mu) => mu.b_poly(),
        AlphabetExpr::BMinusOne(mu) => mu.b_poly() - &one,
        AlphabetExpr::MB(nu) => LaurentPoly::m() * nu.b_poly(),
        AlphabetExpr::MBMinusOne(nu) => LaurentPoly::m() * nu.b_poly() - &one,
    };
    Alphabet(p)
}

/// `p_r[A]`: every monomial raised to the `r`-th power.
pub fn p_plethysm(r: u32, a: &Alphabet) -> LaurentPoly {
    let r = r as i32;
    LaurentPoly::from_terms(a.0.terms().map(|((i, j), c)| ((i * r, j * r), c.clone())))
}

/// `e_k[A]` by Newton's identities.
///
/// Works with `E_j = j! e_j[A]`, which satisfies the integral recursion
/// `E_j = sum_r (-1)^(r-1) (j-1)!/(j-r)! p_r[A] E_(j-r)`, and divides by `k!`
/// at the end.
pub fn e_plethysm(k: usize, a: &Alphabet) -> Result<LaurentPoly> {
    let powers: Vec<LaurentPoly> = (1..=k).map(|r| p_plethysm(r as u32, a)).collect();
    let mut scaled = vec![LaurentPoly::one()];
    for j in 1..=k {
        let mut acc = LaurentPoly::zero();
        let mut falling = BigInt::one();
        for r in 1..=j {
            // falling = (j-1)!/(j-r)!
            if r > 1 {
                falling *= j - r + 1;
            }
            let mut term = (&powers[r - 1] * &scaled[j - r]).scale(&falling);
            if r % 2 == 0 {
                term = -term;
            }
            acc += term;
        }
        scaled.push(acc);
    }
    let fact: BigInt = (1..=k).map(BigInt::from).product();
    let mut out = LaurentPoly::zero();
    for (e, c) in scaled[k].terms() {
        let (quot, rem) = c.div_rem(&fact);
        if !rem.is_zero() {
            return Err(Error::Internal(format!("e_{k} plethysm is not integral")));
        }
        out.add_term(e, quot);
    }
    Ok(out)
}

/// Distinct placements of the nonzero parts of `rho` into `slots` positions,
/// remaining positions zero.
pub fn arrangements(rho: &[i32], slots: usize) -> Vec<Vec<i32>> {
    fn go(rho: &[i32], idx: usize, last: usize, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if idx == rho.len() {
            out.push(cur.clone());
            return;
        }
        let start = if idx > 0 && rho[idx] == rho[idx - 1] {
            last + 1
        } else {
            0
        };
        for v in start..cur.len() {
            if cur[v] == 0 {
                cur[v] = rho[idx];
                go(rho, idx + 1, v, cur, out);
                cur[v] = 0;
            }
        }
    }
    let mut out = Vec::new();
    if rho.len() <= slots {
        let mut sorted = rho.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        go(&sorted, 0, 0, &mut vec![0; slots], &mut out);
    }
    out
}

/// `m_rho` evaluated at the monomials of a plain alphabet.
pub fn m_eval(rho: &LaurentPartition, s: &Alphabet) -> Result<LaurentPoly> {
    let vars = s.plain_monomials()?;
    let mut out = LaurentPoly::zero();
    for exps in arrangements(rho.parts(), vars.len()) {
        let (mut eq, mut et) = (0, 0);
        for (&(i, j), &k) in vars.iter().zip(&exps) {
            eq += i * k;
            et += j * k;
        }
        out.add_term((eq, et), BigInt::one());
    }
    Ok(out)
}

/// A symmetric Laurent polynomial in the monomial basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonomialSymFn {
    coeffs: BTreeMap<LaurentPartition, LaurentPoly>,
}

impl MonomialSymFn {
    pub fn monomial(rho: LaurentPartition) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(rho, LaurentPoly::one());
        Self { coeffs }
    }

    /// `e_k = m_(1^k)`; `e_0` is the constant 1.
    pub fn elementary(k: usize) -> Self {
        Self::monomial(LaurentPartition::new(vec![1; k]).expect("valid parts"))
    }

    pub fn add_term(&mut self, rho: LaurentPartition, c: LaurentPoly) {
        let entry = self.coeffs.entry(rho.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&rho);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LaurentPartition, &LaurentPoly)> {
        self.coeffs.iter()
    }

    /// `f[S]` for a plain alphabet.
    pub fn eval(&self, s: &Alphabet) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (rho, c) in &self.coeffs {
            out += c * &m_eval(rho, s)?;
        }
        Ok(out)
    }

    /// Monomials `x^beta` of `f(x_1, ..., x_n)` with their coefficients.
    pub fn expand(&self, n: usize) -> Vec<(Vec<i32>, LaurentPoly)> {
        let mut out = Vec::new();
        for (rho, c) in &self.coeffs {
            for beta in arrangements(rho.parts(), n) {
                out.push((beta, c.clone()));
            }
        }
        out
    }
}

impl fmt::Display for MonomialSymFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(rho, c)| format!("({c})*m[{rho}]"))
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl FromStr for MonomialSymFn {
    type Err = Error;

    /// Accepts `e:k`, `m:parts` and `s:parts`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected e:k, m:parts or s:parts, got `{s}`"));
        let (kind, body) = s.trim().split_once(':').ok_or_else(bad)?;
        let parse_parts = |body: &str| -> Result<Vec<i32>> {
            if body.trim().is_empty() {
                return Ok(Vec::new());
            }
            body.split(',')
                .map(|p| p.trim().parse::<i32>().map_err(|_| bad()))
                .collect()
        };
        match kind.trim() {
            "e" => {
                let k: usize = body.trim().parse().map_err(|_| bad())?;
                Ok(Self::elementary(k))
            }
            "m" => {
                let mut parts = parse_parts(body)?;
                parts.sort_unstable_by(|a, b| b.cmp(a));
                Ok(Self::monomial(LaurentPartition::new(parts)?))
            }
            "s" => {
                let parts = parse_parts(body)?;
                if parts.iter().any(|&p| p <= 0) {
                    return Err(bad());
                }
                let lambda = Partition::new(parts.into_iter().map(|p| p as usize).collect())?;
                schur_to_monomial(&lambda)
            }
            _ => Err(bad()),
        }
    }
}

/// Number of semistandard tableaux of shape `lambda` and content `mu`.
pub fn kostka(lambda: &Partition, mu: &Partition) -> u64 {
    fn go(
        cells: &[(usize, usize)],
        idx: usize,
        grid: &mut [Vec<usize>],
        left: &mut [usize],
    ) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (r, c) = cells[idx];
        let lo = if c > 0 { grid[r][c - 1] } else { 1 };
        let lo = if r > 0 {
            lo.max(grid[r - 1][c] + 1)
        } else {
            lo
        };
        let mut total = 0;
        for v in lo..=left.len() {
            if left[v - 1] == 0 {
                continue;
            }
            left[v - 1] -= 1;
            grid[r][c] = v;
            total += go(cells, idx + 1, grid, left);
            left[v - 1] += 1;
        }
        grid[r][c] = 0;
        total
    }
    if lambda.size() != mu.size() {
        return 0;
    }
    let shape = lambda.parts();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &p)| (0..p).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&p| vec![0; p]).collect();
    let mut left = mu.parts().to_vec();
    go(&cells, 0, &mut grid, &mut left)
}

/// `s_lambda = sum_mu K_(lambda, mu) m_mu`.
pub fn schur_to_monomial(lambda: &Partition) -> Result<MonomialSymFn> {
    let n = lambda.size();
    if n > SCHUR_SIZE_CAP {
        return Err(Error::SizeCap {
            size: n,
            cap: SCHUR_SIZE_CAP,
        });
    }
    if lambda.is_empty() {
        return Err(Error::EmptyPartition);
    }
    let mut f = MonomialSymFn::default();
    for mu in partitions_of(n) {
        let k = kostka(lambda, &mu);
        if k > 0 {
            let rho = LaurentPartition::new(mu.parts().iter().map(|&p| p as i32).collect())?;
            f.add_term(rho, LaurentPoly::constant(k));
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qt_algebra::qt_int;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn lp(s: &str) -> LaurentPartition {
        s.parse().unwrap()
    }

    #[test]
    fn alphabets() {
        assert_eq!(
            alphabet_of(AlphabetExpr::M).as_poly(),
            &p("1 - q - t + q*t")
        );
        let one = part("1");
        assert_eq!(
            alphabet_of(AlphabetExpr::MBMinusOne(&one)).as_poly(),
            &p("-q - t + q*t")
        );
        let two = part("2");
        assert_eq!(
            alphabet_of(AlphabetExpr::BMinusOne(&two)).as_poly(),
            &p("q")
        );
        assert!(!alphabet_of(AlphabetExpr::M).is_plain());
    }

    #[test]
    fn power_sums() {
        let m = alphabet_of(AlphabetExpr::M);
        assert_eq!(p_plethysm(2, &m), p("1 - q^2 - t^2 + q^2*t^2"));
        assert_eq!(p_plethysm(1, &m), LaurentPoly::m());
        let two = part("2");
        assert_eq!(
            p_plethysm(3, &alphabet_of(AlphabetExpr::B(&two))),
            p("1 + q^3")
        );
    }

    #[test]
    fn elementary_at_m() {
        let m = alphabet_of(AlphabetExpr::M);
        assert_eq!(e_plethysm(2, &m).unwrap(), -(p("q + t") * LaurentPoly::m()));
        assert_eq!(
            e_plethysm(3, &m).unwrap(),
            p("q^2 + q*t + t^2") * LaurentPoly::m()
        );
        assert!(e_plethysm(0, &m).unwrap().is_one());
        for k in 1..=8 {
            let mut v = e_plethysm(k, &m).unwrap();
            if k % 2 == 0 {
                v = -v;
            }
            assert_eq!(v, qt_int(k as i64) * LaurentPoly::m(), "k = {k}");
        }
        let one = part("1");
        let a = alphabet_of(AlphabetExpr::MBMinusOne(&one));
        assert_eq!(e_plethysm(1, &a).unwrap(), p("-q - t + q*t"));
    }

    #[test]
    fn monomial_evaluation() {
        let b2 = alphabet_of(AlphabetExpr::B(&part("2")));
        assert_eq!(m_eval(&lp("1"), &b2).unwrap(), p("1 + q"));
        assert_eq!(m_eval(&lp("-1"), &b2).unwrap(), p("1 + q^-1"));
        assert_eq!(m_eval(&lp("2,1"), &b2).unwrap(), p("q + q^2"));
        assert!(m_eval(&lp("1,1,1"), &b2).unwrap().is_zero());
        let m = alphabet_of(AlphabetExpr::M);
        assert_eq!(m_eval(&lp("1"), &m), Err(Error::SignedAlphabet));
    }

    #[test]
    fn schur_expansions() {
        let s111 = schur_to_monomial(&part("1,1,1")).unwrap();
        assert_eq!(s111, MonomialSymFn::elementary(3));
        let s21 = schur_to_monomial(&part("2,1")).unwrap();
        let mut want = MonomialSymFn::monomial(lp("2,1"));
        want.add_term(lp("1,1,1"), LaurentPoly::constant(2));
        assert_eq!(s21, want);
        let s3 = schur_to_monomial(&part("3")).unwrap();
        let mut want = MonomialSymFn::monomial(lp("3"));
        want.add_term(lp("2,1"), LaurentPoly::one());
        want.add_term(lp("1,1,1"), LaurentPoly::one());
        assert_eq!(s3, want);
        assert!(matches!(
            schur_to_monomial(&part("5,4")),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn parses_symmetric_functions() {
        assert_eq!(
            "e:2".parse::<MonomialSymFn>().unwrap(),
            MonomialSymFn::elementary(2)
        );
        assert_eq!(
            "e:0".parse::<MonomialSymFn>().unwrap(),
            MonomialSymFn::monomial(lp(""))
        );
        assert_eq!(
            "m:-1,3".parse::<MonomialSymFn>().unwrap(),
            MonomialSymFn::monomial(lp("3,-1"))
        );
        assert!("p:2".parse::<MonomialSymFn>().is_err());
        assert!("m:0".parse::<MonomialSymFn>().is_err());
    }

    #[test]
    fn counts_arrangements() {
        assert_eq!(arrangements(&[1, 1], 3).len(), 3);
        assert_eq!(arrangements(&[2, 1], 3).len(), 6);
        assert_eq!(arrangements(&[], 2), vec![vec![0, 0]]);
        assert!(arrangements(&[1, 1, 1], 2).is_empty());
    }

    fn alphabet() -> impl Strategy<Value = Alphabet> {
        prop::collection::vec(((-2i32..3, -2i32..3), -2i64..3), 0..4)
            .prop_map(|v| Alphabet::from_poly(LaurentPoly::from_terms(v)))
    }

    fn plain_alphabet() -> impl Strategy<Value = Vec<(i32, i32)>> {
        prop::collection::vec((-2i32..3, -2i32..3), 0..5)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn elementary_is_additive(a in alphabet(), b in alphabet(), k in 0usize..5) {
            let joint = Alphabet::from_poly(a.as_poly() + b.as_poly());
            let split: LaurentPoly = (0..=k)
                .map(|i| e_plethysm(i, &a).unwrap() * e_plethysm(k - i, &b).unwrap())
                .sum();
            prop_assert_eq!(e_plethysm(k, &joint).unwrap(), split);
        }

        #[test]
        fn negated_single_monomial(i in -3i32..4, j in -3i32..4, k in 0usize..7) {
            let neg = Alphabet::from_poly(-LaurentPoly::qt_power(i, j));
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let h = LaurentPoly::monomial(sign.into(), i * k as i32, j * k as i32);
            prop_assert_eq!(e_plethysm(k, &neg).unwrap(), h);
        }

        #[test]
        fn monomial_eval_ignores_order(mut vars in plain_alphabet(), parts in prop::collection::vec(-2i32..3, 0..3)) {
            let rho = LaurentPartition::sorted_from(&parts);
            let a = Alphabet::from_poly(LaurentPoly::from_terms(vars.iter().map(|&e| (e, 1))));
            vars.reverse();
            let b = Alphabet::from_poly(LaurentPoly::from_terms(vars.iter().map(|&e| (e, 1))));
            prop_assert_eq!(m_eval(&rho, &a).unwrap(), m_eval(&rho, &b).unwrap());
        }

        #[test]
        fn monomial_ones_are_elementary(vars in plain_alphabet(), k in 0usize..5) {
            let a = Alphabet::from_poly(LaurentPoly::from_terms(vars.iter().map(|&e| (e, 1))));
            let rho = LaurentPartition::new(vec![1; k]).unwrap();
            prop_assert_eq!(m_eval(&rho, &a).unwrap(), e_plethysm(k, &a).unwrap());
        }
    }
}
