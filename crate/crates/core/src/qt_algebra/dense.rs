//! Dense integer polynomials in `q` and `t` with nonnegative exponents.
//!
//! Only what [`RatFunc`](super::RatFunc) needs lives here: exact division and
//! a heuristic GCD (evaluation at a large integer, integer GCD, and balanced
//! base-`x` interpolation, each candidate confirmed by trial division).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::LaurentPoly;

type Uni = Vec<BigInt>;

/// Outer index is the `q`-degree, inner the `t`-degree; both trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Dense(Vec<Uni>);

const HEURISTIC_ATTEMPTS: usize = 6;

fn trim(u: &mut Uni) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

fn uni_is_zero(u: &Uni) -> bool {
    u.is_empty()
}

fn uni_mul(a: &Uni, b: &Uni) -> Uni {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn uni_sub_assign(a: &mut Uni, b: &Uni) {
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x -= y;
    }
    trim(a);
}

fn uni_scale_div(a: &Uni, d: &BigInt) -> Uni {
    a.iter().map(|c| c / d).collect()
}

fn uni_eval(a: &Uni, x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn uni_content(a: &Uni) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn uni_max_norm(a: &Uni) -> BigInt {
    a.iter().map(|c| c.abs()).max().unwrap_or_default()
}

fn uni_div_exact(a: &Uni, b: &Uni) -> Option<Uni> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let lead = r.get(k + db).cloned().unwrap_or_default();
        if lead.is_zero() {
            continue;
        }
        let (qk, rem) = lead.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= &qk * c;
        }
        q[k] = qk;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

/// Balanced digits of `h` in base `x`, least significant first.
fn balanced_digits(mut h: BigInt, x: &BigInt) -> Vec<BigInt> {
    let half = x / 2;
    let mut out = Vec::new();
    while !h.is_zero() {
        let mut g = h.mod_floor(x);
        if g > half {
            g -= x;
        }
        h = (h - &g) / x;
        out.push(g);
    }
    out
}

fn uni_interpolate(h: &BigInt, x: &BigInt) -> Uni {
    let mut u = balanced_digits(h.clone(), x);
    trim(&mut u);
    if u.last().is_some_and(|c| c.is_negative()) {
        u.iter_mut().for_each(|c| *c = -std::mem::take(c));
    }
    u
}

fn next_point(x: &BigInt) -> BigInt {
    BigInt::from(73794) * x * x.sqrt().sqrt() / BigInt::from(27011)
}

fn starting_point(fnorm: &BigInt, gnorm: &BigInt, flc: &BigInt, glc: &BigInt) -> BigInt {
    let b: BigInt = BigInt::from(2) * fnorm.min(gnorm) + 29;
    let cap = BigInt::from(99) * b.sqrt();
    let lead = BigInt::from(2) * (fnorm / flc.abs()).min(gnorm / glc.abs()) + 4;
    b.min(cap).max(lead)
}

/// Heuristic GCD in `Z[t]`; returns `(gcd, f / gcd, g / gcd)`.
fn uni_heu_gcd(f: &Uni, g: &Uni) -> Option<(Uni, Uni, Uni)> {
    if f.is_empty() || g.is_empty() {
        return None;
    }
    if f.len() == 1 || g.len() == 1 {
        let h = uni_content(f).gcd(&uni_content(g));
        return Some((vec![h.clone()], uni_scale_div(f, &h), uni_scale_div(g, &h)));
    }
    let common = uni_content(f).gcd(&uni_content(g));
    let f = uni_scale_div(f, &common);
    let g = uni_scale_div(g, &common);
    let (fnorm, gnorm) = (uni_max_norm(&f), uni_max_norm(&g));
    let mut x = starting_point(&fnorm, &gnorm, f.last().unwrap(), g.last().unwrap());
    for _ in 0..HEURISTIC_ATTEMPTS {
        let ff = uni_eval(&f, &x);
        let gg = uni_eval(&g, &x);
        if !ff.is_zero() && !gg.is_zero() {
            let hh = ff.gcd(&gg);
            let candidates = [
                uni_interpolate(&hh, &x),
                uni_interpolate(&(&ff / &hh), &x),
                uni_interpolate(&(&gg / &hh), &x),
            ];
            for (k, cand) in candidates.iter().enumerate() {
                let cand = {
                    let c = uni_content(cand);
                    if c.is_zero() {
                        continue;
                    }
                    uni_scale_div(cand, &c)
                };
                let h = match k {
                    0 => cand,
                    1 => match uni_div_exact(&f, &cand) {
                        Some(h) => h,
                        None => continue,
                    },
                    _ => match uni_div_exact(&g, &cand) {
                        Some(h) => h,
                        None => continue,
                    },
                };
                if let (Some(cf), Some(cg)) = (uni_div_exact(&f, &h), uni_div_exact(&g, &h)) {
                    let h: Uni = h.iter().map(|c| c * &common).collect();
                    return Some((h, cf, cg));
                }
            }
        }
        x = next_point(&x);
    }
    None
}

impl Dense {
    pub(crate) fn from_poly(p: &LaurentPoly) -> Dense {
        let Some((dq, dt)) = p.max_exponents() else {
            return Dense(Vec::new());
        };
        debug_assert!(p.is_polynomial());
        let mut rows = vec![vec![BigInt::zero(); dt as usize + 1]; dq as usize + 1];
        for ((i, j), c) in p.terms() {
            rows[i as usize][j as usize] = c.clone();
        }
        rows.iter_mut().for_each(trim);
        let mut d = Dense(rows);
        d.trim();
        d
    }

    pub(crate) fn to_poly(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (i, row) in self.0.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                p.add_term((i as i32, j as i32), c.clone());
            }
        }
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(uni_is_zero) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.0.len() == 1 && self.0[0].len() == 1
    }

    fn content(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::zero(), |g, row| g.gcd(&uni_content(row)))
    }

    fn max_norm(&self) -> BigInt {
        self.0.iter().map(uni_max_norm).max().unwrap_or_default()
    }

    fn ground_lc(&self) -> &BigInt {
        self.0
            .last()
            .and_then(|r| r.last())
            .expect("nonzero polynomial")
    }

    fn scale_div(&self, d: &BigInt) -> Dense {
        Dense(self.0.iter().map(|r| uni_scale_div(r, d)).collect())
    }

    fn primitive(&self) -> Dense {
        let c = self.content();
        let mut d = self.scale_div(&c);
        if d.ground_lc().is_negative() {
            d = d.scale_div(&BigInt::from(-1));
        }
        d
    }

    fn eval_q(&self, x: &BigInt) -> Uni {
        let width = self.0.iter().map(|r| r.len()).max().unwrap_or(0);
        let mut out = vec![BigInt::zero(); width];
        for row in self.0.iter().rev() {
            for c in out.iter_mut() {
                *c *= x;
            }
            for (o, c) in out.iter_mut().zip(row) {
                *o += c;
            }
        }
        trim(&mut out);
        out
    }

    fn interpolate(h: &Uni, x: &BigInt) -> Dense {
        let mut rows: Vec<Uni> = Vec::new();
        for (j, c) in h.iter().enumerate() {
            for (i, d) in balanced_digits(c.clone(), x).into_iter().enumerate() {
                if rows.len() <= i {
                    rows.resize(i + 1, Vec::new());
                }
                if rows[i].len() <= j {
                    rows[i].resize(j + 1, BigInt::zero());
                }
                rows[i][j] = d;
            }
        }
        rows.iter_mut().for_each(trim);
        let mut d = Dense(rows);
        d.trim();
        d
    }

    /// `Some(self / rhs)` when the quotient exists in `Z[q, t]`.
    pub(crate) fn div_exact(&self, rhs: &Dense) -> Option<Dense> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Dense(Vec::new()));
        }
        if self.0.len() < rhs.0.len() {
            return None;
        }
        let db = rhs.0.len() - 1;
        let mut r = self.0.clone();
        let mut q = vec![Vec::new(); self.0.len() - db];
        for k in (0..q.len()).rev() {
            if uni_is_zero(&r[k + db]) {
                continue;
            }
            let qk = uni_div_exact(&r[k + db], &rhs.0[db])?;
            for (i, row) in rhs.0.iter().enumerate() {
                uni_sub_assign(&mut r[k + i], &uni_mul(&qk, row));
            }
            q[k] = qk;
        }
        if r.iter().any(|row| !uni_is_zero(row)) {
            return None;
        }
        let mut d = Dense(q);
        d.trim();
        Some(d)
    }

    /// Heuristic GCD in `Z[q, t]`; `None` if every evaluation point failed.
    pub(crate) fn heu_gcd(&self, rhs: &Dense) -> Option<Dense> {
        if self.is_zero() || rhs.is_zero() {
            return None;
        }
        if self.is_constant() || rhs.is_constant() {
            return Some(Dense(vec![vec![self.content().gcd(&rhs.content())]]));
        }
        let common = self.content().gcd(&rhs.content());
        let f = self.scale_div(&common);
        let g = rhs.scale_div(&common);
        if f.0.len() == 1 && g.0.len() == 1 {
            let (h, _, _) = uni_heu_gcd(&f.0[0], &g.0[0])?;
            let h: Uni = h.iter().map(|c| c * &common).collect();
            return Some(Dense(vec![h]).primitive_keep(&common));
        }
        let (fnorm, gnorm) = (f.max_norm(), g.max_norm());
        let mut x = starting_point(&fnorm, &gnorm, f.ground_lc(), g.ground_lc());
        for _ in 0..HEURISTIC_ATTEMPTS {
            let ff = f.eval_q(&x);
            let gg = g.eval_q(&x);
            if !ff.is_empty() && !gg.is_empty() {
                let (hh, cff, cfg) = uni_heu_gcd(&ff, &gg)?;
                let h = Dense::interpolate(&hh, &x);
                if !h.is_zero() {
                    let h = h.primitive();
                    if f.div_exact(&h).is_some() && g.div_exact(&h).is_some() {
                        return Some(h.primitive_keep(&common));
                    }
                }
                for (cof, this, other) in [(&cff, &f, &g), (&cfg, &g, &f)] {
                    let c = Dense::interpolate(cof, &x);
                    if c.is_zero() {
                        continue;
                    }
                    if let Some(h) = this.div_exact(&c) {
                        if !h.is_zero() && other.div_exact(&h).is_some() {
                            return Some(h.primitive_keep(&common));
                        }
                    }
                }
            }
            x = next_point(&x);
        }
        None
    }

    fn primitive_keep(&self, common: &BigInt) -> Dense {
        let p = self.primitive();
        Dense(
            p.0.iter()
                .map(|r| r.iter().map(|c| c * common).collect())
                .collect(),
        )
    }
}
