use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dense::Dense;
use super::LaurentPoly;
use crate::error::{Error, Result};

/// An element of `Q(q, t)` stored as a quotient of integer polynomials.
///
/// Integer content and monomial content are always stripped; common
/// polynomial factors are removed on a best-effort basis. Equality is decided
/// by cross-multiplication, so it never depends on how reduced a value is.
#[derive(Clone)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

fn content(p: &LaurentPoly) -> BigInt {
    p.terms().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
}

fn div_content(p: &LaurentPoly, c: &BigInt) -> LaurentPoly {
    LaurentPoly::from_terms(p.terms().map(|(e, x)| (e, x / c)))
}

/// Strip the monomial factor so both exponent minima are zero.
fn strip_monomial(p: &LaurentPoly) -> (LaurentPoly, (i32, i32)) {
    let (a, b) = p.min_exponents().unwrap_or((0, 0));
    (p.shift(-a, -b), (a, b))
}

fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.len() == 1 || b.len() == 1 {
        return LaurentPoly::constant(content(a).gcd(&content(b)));
    }
    match Dense::from_poly(a).heu_gcd(&Dense::from_poly(b)) {
        Some(g) => g.to_poly(),
        None => LaurentPoly::constant(content(a).gcd(&content(b))),
    }
}

/// Exact quotient of polynomials; `None` when it does not exist.
fn poly_div(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    if let Some((c, i, j)) = b.as_monomial() {
        let mut out = LaurentPoly::zero();
        for ((x, y), v) in a.terms() {
            let (qv, r) = v.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.add_term((x - i, y - j), qv);
        }
        return Some(out);
    }
    Dense::from_poly(a)
        .div_exact(&Dense::from_poly(b))
        .map(|d| d.to_poly())
}

fn exact(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    poly_div(a, b).expect("divisor is a known factor")
}

impl RatFunc {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    /// Embed a Laurent polynomial.
    pub fn from_poly(p: LaurentPoly) -> Self {
        Self::from_coprime(p, LaurentPoly::one())
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (n, (a, b)) = strip_monomial(&num);
        let (d, (c, e)) = strip_monomial(&den);
        let g = poly_gcd(&n, &d);
        let (n, d) = if g.is_one() {
            (n, d)
        } else {
            (exact(&n, &g), exact(&d, &g))
        };
        Ok(Self::from_coprime(n.shift(a, b), d.shift(c, e)))
    }

    /// Build from parts whose only possible common factors are monomials and integers.
    fn from_coprime(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, (a, b)) = strip_monomial(&num);
        let (den, (c, e)) = strip_monomial(&den);
        let (dq, dt) = (a - c, b - e);
        let mut num = num.shift(dq.max(0), dt.max(0));
        let mut den = den.shift((-dq).max(0), (-dt).max(0));
        let g = content(&num).gcd(&content(&den));
        if !g.is_one() {
            num = div_content(&num, &g);
            den = div_content(&den, &g);
        }
        let lead_negative = den.terms().last().is_some_and(|(_, c)| c.is_negative());
        if lead_negative {
            num = -num;
            den = -den;
        }
        Self { num, den }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    /// Multiply by `q^dq t^dt`.
    pub fn shift(&self, dq: i32, dt: i32) -> Self {
        Self::from_coprime(self.num.shift(dq, dt), self.den.clone())
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        self * &RatFunc::from_poly(p.clone())
    }

    /// The substitution `q -> 1/q, t -> 1/t`.
    pub fn bar(&self) -> Self {
        Self::from_coprime(self.num.bar(), self.den.bar())
    }

    pub fn swap_qt(&self) -> Self {
        Self::from_coprime(self.num.swap_qt(), self.den.swap_qt())
    }

    /// Convert to a Laurent polynomial, failing with `NotLaurent` if the
    /// denominator does not divide out.
    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        let (den, (a, b)) = strip_monomial(&self.den);
        let q = poly_div(&self.num, &den).ok_or(Error::NotLaurent)?;
        Ok(q.shift(-a, -b))
    }

    pub fn eval(&self, q: &BigRational, t: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q, t)?;
        if d.is_zero() {
            return Err(Error::PoleAtSpecialization);
        }
        Ok(self.num.eval(q, t)? / d)
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.recip()?)
    }
}

/// `rf_to_laurent`: the final conversion step of every Macdonald-route value.
pub fn rf_to_laurent(a: &RatFunc) -> Result<LaurentPoly> {
    a.to_laurent()
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        RatFunc::from_poly(LaurentPoly::constant(c))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;

    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        let g = poly_gcd(&self.den, &rhs.den);
        if g.as_constant().is_some() {
            let num = &self.num * &rhs.den + &rhs.num * &self.den;
            return RatFunc::from_coprime(num, &self.den * &rhs.den);
        }
        let b = exact(&self.den, &g);
        let d = exact(&rhs.den, &g);
        let num = &self.num * &d + &rhs.num * &b;
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (num, (a, e)) = strip_monomial(&num);
        let g2 = poly_gcd(&num, &g);
        let den = &b * &rhs.den;
        if g2.as_constant().is_some() {
            RatFunc::from_coprime(num.shift(a, e), den)
        } else {
            RatFunc::from_coprime(exact(&num, &g2).shift(a, e), exact(&den, &g2))
        }
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;

    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let (a, d) = if g1.as_constant().is_some() {
            (self.num.clone(), rhs.den.clone())
        } else {
            (exact(&self.num, &g1), exact(&rhs.den, &g1))
        };
        let (c, b) = if g2.as_constant().is_some() {
            (rhs.num.clone(), self.den.clone())
        } else {
            (exact(&rhs.num, &g2), exact(&self.den, &g2))
        };
        RatFunc::from_coprime(&a * &c, &b * &d)
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;

    /// Panics on division by zero; see [`RatFunc::checked_div`].
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! owned_binops {
    ($tr:ident, $method:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                self.$method(&rhs)
            }
        }
    };
}
owned_binops!(Add, add);
owned_binops!(Sub, sub);
owned_binops!(Mul, mul);
owned_binops!(Div, div);

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> Self {
        iter.fold(RatFunc::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for RatFunc {
    fn product<I: Iterator<Item = RatFunc>>(iter: I) -> Self {
        iter.fold(RatFunc::one(), |acc, x| &acc * &x)
    }
}
