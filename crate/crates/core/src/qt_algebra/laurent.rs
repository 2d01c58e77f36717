use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent pair `(q-exponent, t-exponent)`.
pub type Exponent = (i32, i32);

/// An element of `Z[q, t, 1/q, 1/t]`.
///
/// Terms are kept in a map from exponent pairs to nonzero coefficients, so
/// structural equality is ring equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponent, BigInt>,
}

/// Substitutions accepted by [`LaurentPoly::specialize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// `t := 0`
    T0,
    /// `t := 1`
    T1,
    /// `q := 1`
    Q1,
    /// `q := 1, t := 1`
    Q1T1,
}

impl FromStr for Specialization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace(' ', "").as_str() {
            "t=0" => Ok(Specialization::T0),
            "t=1" => Ok(Specialization::T1),
            "q=1" => Ok(Specialization::Q1),
            "q=t=1" | "q=1,t=1" | "t=q=1" => Ok(Specialization::Q1T1),
            other => Err(Error::Parse(format!("unknown specialization `{other}`"))),
        }
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0, 0)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c.into(), 0, 0)
    }

    pub fn monomial(coeff: BigInt, eq: i32, et: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((eq, et), coeff);
        }
        Self { terms }
    }

    /// The monic monomial `q^eq t^et`.
    pub fn qt_power(eq: i32, et: i32) -> Self {
        Self::monomial(BigInt::one(), eq, et)
    }

    pub fn q() -> Self {
        Self::qt_power(1, 0)
    }

    pub fn t() -> Self {
        Self::qt_power(0, 1)
    }

    /// `M = (1 - q)(1 - t)`.
    pub fn m() -> Self {
        Self::from_terms([((0, 0), 1), ((1, 0), -1), ((0, 1), -1), ((1, 1), 1)])
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, eq: i32, et: i32) -> BigInt {
        self.terms.get(&(eq, et)).cloned().unwrap_or_default()
    }

    /// `Some((c, eq, et))` when the polynomial is the single term `c q^eq t^et`.
    pub fn as_monomial(&self) -> Option<(&BigInt, i32, i32)> {
        if self.terms.len() != 1 {
            return None;
        }
        self.terms.iter().next().map(|(&(i, j), c)| (c, i, j))
    }

    /// The integer value of a constant polynomial.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Componentwise minimum of the exponents, `None` for zero.
    pub fn min_exponents(&self) -> Option<Exponent> {
        self.fold_exponents(i32::min)
    }

    pub fn max_exponents(&self) -> Option<Exponent> {
        self.fold_exponents(i32::max)
    }

    fn fold_exponents(&self, f: fn(i32, i32) -> i32) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold(first, |(a, b), &(i, j)| (f(a, i), f(b, j))))
    }

    /// True when no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.min_exponents().is_none_or(|(a, b)| a >= 0 && b >= 0)
    }

    /// Multiply by `q^dq t^dt`.
    pub fn shift(&self, dq: i32, dt: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i + dq, j + dt), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// The substitution `q -> 1/q, t -> 1/t`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((-i, -j), c.clone()))
                .collect(),
        }
    }

    /// The substitution `q <-> t`.
    pub fn swap_qt(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    /// Integer power; negative exponents are only defined for `±` monic monomials.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return match self.as_monomial() {
                Some((c, i, j)) if c.abs().is_one() => {
                    let k = i32::try_from(-k).map_err(|_| Error::NonInvertible)?;
                    let sign = if c.is_negative() && k % 2 == 1 { -1 } else { 1 };
                    Ok(Self::monomial(BigInt::from(sign), -i * k, -j * k))
                }
                _ => Err(Error::NonInvertible),
            };
        }
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    pub fn specialize(&self, s: Specialization) -> Result<Self> {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let e = match s {
                Specialization::T0 => {
                    if j < 0 {
                        return Err(Error::PoleAtSpecialization);
                    }
                    if j > 0 {
                        continue;
                    }
                    (i, 0)
                }
                Specialization::T1 => (i, 0),
                Specialization::Q1 => (0, j),
                Specialization::Q1T1 => (0, 0),
            };
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    /// Evaluate at rational values of `q` and `t`.
    pub fn eval(&self, q: &BigRational, t: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (&(i, j), c) in &self.terms {
            acc += BigRational::from_integer(c.clone()) * rat_pow(q, i)? * rat_pow(t, j)?;
        }
        Ok(acc)
    }

    /// Sum of the coefficients, i.e. the value at `q = t = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// `[eq, et, coeff]` triples in lexicographic exponent order, coefficients as decimal strings.
    pub fn to_triples(&self) -> Vec<(i32, i32, String)> {
        self.terms
            .iter()
            .map(|(&(i, j), c)| (i, j, c.to_string()))
            .collect()
    }

    pub fn from_triples(triples: &[(i32, i32, String)]) -> Result<Self> {
        let mut p = Self::zero();
        for (i, j, c) in triples {
            let c: BigInt = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?;
            p.add_term((*i, *j), c);
        }
        Ok(p)
    }

    /// Terms in display order: ascending total degree, then descending `q`-degree.
    fn display_order(&self) -> Vec<(Exponent, &BigInt)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|(a, _), (b, _)| display_cmp(*a, *b));
        v
    }

    fn mul_map(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }

    fn mul_dense(&self, rhs: &Self, lo: Exponent, width: usize, height: usize) -> Self {
        let mut grid = vec![BigInt::zero(); width * height];
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                let x = (i1 + i2 - lo.0) as usize;
                let y = (j1 + j2 - lo.1) as usize;
                grid[x * height + y] += c1 * c2;
            }
        }
        let terms = grid
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let (x, y) = (k / height, k % height);
                ((x as i32 + lo.0, y as i32 + lo.1), c)
            })
            .collect();
        Self { terms }
    }
}

fn display_cmp(a: Exponent, b: Exponent) -> Ordering {
    (a.0 + a.1).cmp(&(b.0 + b.1)).then(b.0.cmp(&a.0))
}

fn rat_pow(x: &BigRational, k: i32) -> Result<BigRational> {
    if k >= 0 {
        return Ok(num_traits::pow(x.clone(), k as usize));
    }
    if x.is_zero() {
        return Err(Error::PoleAtSpecialization);
    }
    Ok(num_traits::pow(x.recip(), k.unsigned_abs() as usize))
}

/// `[k]_{q,t} = (q^k - t^k) / (q - t)`.
pub fn qt_int(k: i64) -> LaurentPoly {
    let m = k.unsigned_abs() as i32;
    let mut p = LaurentPoly::zero();
    for i in 0..m {
        p.add_term((i, m - 1 - i), BigInt::one());
    }
    if k < 0 {
        // (q^-m - t^-m)/(q - t) = -(qt)^-m [m]_{q,t}
        p = -p.shift(-m, -m);
    }
    p
}

/// `[k]_q = (q^k - 1) / (q - 1)`.
pub fn q_int(k: i64) -> LaurentPoly {
    let m = k.unsigned_abs() as i32;
    let mut p = LaurentPoly::zero();
    for i in 0..m {
        p.add_term((i, 0), BigInt::one());
    }
    if k < 0 {
        p = -p.shift(-m, 0);
    }
    p
}

fn write_monomial(f: &mut fmt::Formatter<'_>, i: i32, j: i32) -> fmt::Result {
    let mut first = true;
    for (var, e) in [('q', i), ('t', j)] {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{var}")?;
        } else {
            write!(f, "{var}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, ((i, j), c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if i == 0 && j == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, i, j)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

fn parse_term(s: &str) -> Result<(BigInt, Exponent)> {
    let bad = || Error::Parse(format!("bad term `{s}`"));
    let mut coeff = BigInt::one();
    let (mut eq, mut et) = (0i32, 0i32);
    for factor in s.split('*') {
        let factor = factor.trim();
        if let Some(rest) = factor
            .strip_prefix('q')
            .or_else(|| factor.strip_prefix('t'))
        {
            let e = match rest.strip_prefix('^') {
                Some(e) => e.parse::<i32>().map_err(|_| bad())?,
                None if rest.is_empty() => 1,
                None => return Err(bad()),
            };
            if factor.starts_with('q') {
                eq += e;
            } else {
                et += e;
            }
        } else {
            coeff *= factor.parse::<BigInt>().map_err(|_| bad())?;
        }
    }
    Ok((coeff, (eq, et)))
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the canonical display form, e.g. `1 - q^-1*t^-1 + 2*q^2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut p = Self::zero();
        let mut sign = BigInt::one();
        let mut rest = s;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r;
        }
        loop {
            let cut = [" + ", " - "].iter().filter_map(|d| rest.find(d)).min();
            let (term, next) = match cut {
                Some(k) => (&rest[..k], Some(&rest[k..])),
                None => (rest, None),
            };
            let (c, e) = parse_term(term)?;
            p.add_term(e, c * &sign);
            match next {
                Some(n) => {
                    sign = if n.starts_with(" - ") {
                        -BigInt::one()
                    } else {
                        BigInt::one()
                    };
                    rest = &n[3..];
                }
                None => break,
            }
        }
        Ok(p)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let work = self.len() * rhs.len();
        if work > 64 {
            let (a_lo, a_hi) = (self.min_exponents().unwrap(), self.max_exponents().unwrap());
            let (b_lo, b_hi) = (rhs.min_exponents().unwrap(), rhs.max_exponents().unwrap());
            let lo = (a_lo.0 + b_lo.0, a_lo.1 + b_lo.1);
            let width = (a_hi.0 + b_hi.0 - lo.0 + 1) as usize;
            let height = (a_hi.1 + b_hi.1 - lo.1 + 1) as usize;
            if width * height <= 4 * work {
                return self.mul_dense(rhs, lo, width, height);
            }
        }
        self.mul_map(rhs)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
    };
}
forward_binop!(Add, add, add_assign);
forward_binop!(Sub, sub, sub_assign);

macro_rules! owned_binops {
    ($tr:ident, $method:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}
owned_binops!(Add, add);
owned_binops!(Sub, sub);
owned_binops!(Mul, mul);

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl SubAssign<LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        *self -= &rhs;
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl<'a> Sum<&'a LaurentPoly> for LaurentPoly {
    fn sum<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |mut acc, p| {
            acc += p;
            acc
        })
    }
}

impl Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        LaurentPoly::constant(c)
    }
}

/// Binomial coefficient as a big integer; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let one_minus_q = p("1 - q");
        let one_minus_t = p("1 - t");
        assert_eq!(&one_minus_q * &one_minus_t, p("1 - q - t + q*t"));
        assert_eq!(&one_minus_q * &one_minus_t, LaurentPoly::m());
        let s = p("q + t");
        assert!((&s + &(-&s)).is_zero());
        assert_eq!(p("q*t").pow(-1).unwrap(), p("q^-1*t^-1"));
        assert_eq!(p("-q").pow(-3).unwrap(), p("-q^-3"));
        assert_eq!(p("1 + q").pow(-1), Err(Error::NonInvertible));
        assert_eq!(p("2*q").pow(-1), Err(Error::NonInvertible));
        assert_eq!(p("1 + q").pow(2).unwrap(), p("1 + 2*q + q^2"));
    }

    #[test]
    fn integer_analogues() {
        assert_eq!(qt_int(2), p("q + t"));
        assert!(qt_int(0).is_zero());
        assert_eq!(qt_int(-1), p("-q^-1*t^-1"));
        assert_eq!(q_int(3), p("1 + q + q^2"));
        assert_eq!(q_int(1), LaurentPoly::one());
        assert_eq!(q_int(-2), p("-q^-1 - q^-2"));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(p("q + q*t").bar(), p("q^-1 + q^-1*t^-1"));
        let m = LaurentPoly::m();
        assert_eq!(m.bar(), m.shift(-1, -1));
    }

    #[test]
    fn specialization_examples() {
        assert_eq!(qt_int(2).specialize(Specialization::T1).unwrap(), q_int(2));
        assert_eq!(
            p("1 + q + t").specialize(Specialization::Q1T1).unwrap(),
            LaurentPoly::constant(3)
        );
        assert_eq!(
            qt_int(-1).specialize(Specialization::T0),
            Err(Error::PoleAtSpecialization)
        );
        assert_eq!(
            p("1 + q + t").specialize(Specialization::T0).unwrap(),
            p("1 + q")
        );
        let half = BigRational::new(1.into(), 2.into());
        let v = p("q^-1 + t").eval(&half, &half).unwrap();
        assert_eq!(v, BigRational::new(5.into(), 2.into()));
    }

    #[test]
    fn negative_analogue_law() {
        for k in 1..=12 {
            let lhs = qt_int(-k);
            let rhs = -qt_int(k).shift(-(k as i32), -(k as i32));
            assert_eq!(lhs, rhs, "k = {k}");
            assert_eq!(qt_int(k).bar(), qt_int(k).shift(1 - k as i32, 1 - k as i32));
        }
        for k in -12..=12 {
            assert_eq!(qt_int(k).specialize(Specialization::T1).unwrap(), q_int(k));
        }
    }

    #[test]
    fn display_format() {
        assert_eq!(p("t + q + 1").to_string(), "1 + q + t");
        assert_eq!(p("q^2 + 2*q + 1").to_string(), "1 + 2*q + q^2");
        assert_eq!(qt_int(-1).to_string(), "-q^-1*t^-1");
        assert_eq!(LaurentPoly::m().to_string(), "1 - q - t + q*t");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::constant(-7).to_string(), "-7");
        assert_eq!(p("3*q^2*t - 1").to_string(), "-1 + 3*q^2*t");
    }

    #[test]
    fn dense_and_sparse_products_agree() {
        let a = (qt_int(9) + LaurentPoly::m()).pow(2).unwrap();
        let b = qt_int(8) - qt_int(-3);
        assert_eq!(&a * &b, a.mul_map(&b));
    }
}
