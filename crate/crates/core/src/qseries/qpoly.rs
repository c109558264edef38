//! Exact polynomials in q with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A polynomial in q over the integers. Zero coefficients are never stored,
/// so the degree is the largest stored exponent (or undefined for 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPolynomial {
    coeffs: BTreeMap<u32, BigInt>,
}

impl QPolynomial {
    pub fn zero() -> QPolynomial {
        QPolynomial { coeffs: BTreeMap::new() }
    }

    pub fn one() -> QPolynomial {
        QPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> QPolynomial {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        QPolynomial { coeffs }
    }

    pub fn from_int(c: i64) -> QPolynomial {
        QPolynomial::constant(BigInt::from(c))
    }

    /// The monomial `q^k`.
    pub fn q_power(k: u32) -> QPolynomial {
        QPolynomial::monomial(BigInt::one(), k)
    }

    pub fn monomial(c: BigInt, k: u32) -> QPolynomial {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        QPolynomial { coeffs }
    }

    /// Builds from ascending coefficients: `from_dense(&[2,3,1])` is
    /// `q^2 + 3q + 2`.
    pub fn from_dense(ascending: &[i64]) -> QPolynomial {
        let mut coeffs = BTreeMap::new();
        for (k, &c) in ascending.iter().enumerate() {
            if c != 0 {
                coeffs.insert(k as u32, BigInt::from(c));
            }
        }
        QPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.values().next_back().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coefficient(&self, k: u32) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Ascending `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    fn insert_add(coeffs: &mut BTreeMap<u32, BigInt>, k: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match coeffs.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &QPolynomial) -> QPolynomial {
        let mut coeffs = self.coeffs.clone();
        for (&k, c) in &other.coeffs {
            Self::insert_add(&mut coeffs, k, c.clone());
        }
        QPolynomial { coeffs }
    }

    pub fn sub(&self, other: &QPolynomial) -> QPolynomial {
        let mut coeffs = self.coeffs.clone();
        for (&k, c) in &other.coeffs {
            Self::insert_add(&mut coeffs, k, -c.clone());
        }
        QPolynomial { coeffs }
    }

    pub fn neg(&self) -> QPolynomial {
        QPolynomial { coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c.clone())).collect() }
    }

    pub fn mul(&self, other: &QPolynomial) -> QPolynomial {
        let mut coeffs = BTreeMap::new();
        for (&ka, ca) in &self.coeffs {
            for (&kb, cb) in &other.coeffs {
                Self::insert_add(&mut coeffs, ka + kb, ca * cb);
            }
        }
        QPolynomial { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> QPolynomial {
        if c.is_zero() {
            return QPolynomial::zero();
        }
        QPolynomial { coeffs: self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: u32) -> QPolynomial {
        QPolynomial { coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    /// Substitutes `q -> q^d` (`d >= 1`).
    pub fn substitute_q_power(&self, d: u32) -> QPolynomial {
        debug_assert!(d >= 1);
        QPolynomial { coeffs: self.coeffs.iter().map(|(&e, c)| (e * d, c.clone())).collect() }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        // Horner over the sparse terms, descending.
        let mut acc = BigInt::zero();
        let mut prev_exp: Option<u32> = None;
        for (&k, c) in self.coeffs.iter().rev() {
            let gap = match prev_exp {
                Some(p) => p - k,
                None => 0,
            };
            acc = acc * x.pow(gap) + c;
            prev_exp = Some(k);
        }
        if let Some(k) = prev_exp {
            acc *= x.pow(k);
        }
        acc
    }

    /// Value at q = 1 (the sum of the coefficients).
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// gcd of the coefficients, non-negative; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.coeffs.values() {
            g = g.gcd(c);
        }
        g
    }

    /// Exact division, `None` when `d` does not divide `self` over Q or the
    /// quotient is not integral.
    pub fn div_exact(&self, d: &QPolynomial) -> Option<QPolynomial> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(QPolynomial::zero());
        }
        let (quot, rem) = rational_divrem(&to_rational_dense(self), &to_rational_dense(d));
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut coeffs = BTreeMap::new();
        for (k, c) in quot.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.denom().is_one() {
                return None;
            }
            coeffs.insert(k as u32, c.numer().clone());
        }
        Some(QPolynomial { coeffs })
    }

    /// Renders with descending powers, `*` between coefficient and power,
    /// bare `q` for exponent 1, coefficient 1 omitted:
    /// `q^6+q^5+3*q^4+4*q^3+5*q^2+3*q+2`. The zero polynomial is `0`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (&k, c) in self.coeffs.iter().rev() {
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push(if c.is_negative() { '-' } else { '+' });
            }
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => out.push_str(&a.to_string()),
                (1, true) => out.push('q'),
                (1, false) => {
                    out.push_str(&a.to_string());
                    out.push_str("*q");
                }
                (_, true) => out.push_str(&format!("q^{k}")),
                (_, false) => out.push_str(&format!("{a}*q^{k}")),
            }
        }
        out
    }

    /// Parses the [`QPolynomial::render`] format (whitespace tolerated around
    /// the whole string only).
    pub fn parse(text: &str) -> Result<QPolynomial> {
        let s = text.trim();
        if s.is_empty() {
            return Err(Error::input("empty polynomial"));
        }
        // Split into sign-prefixed terms.
        let mut coeffs = BTreeMap::new();
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut sign: i32 = 1;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            sign = if bytes[0] == b'-' { -1 } else { 1 };
            pos = 1;
        }
        while pos < bytes.len() {
            let start = pos;
            while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
                pos += 1;
            }
            let term = &s[start..pos];
            let (coeff, exp) = parse_term(term)
                .ok_or_else(|| Error::input(format!("bad polynomial term `{term}`")))?;
            Self::insert_add(&mut coeffs, exp, coeff * sign);
            if pos < bytes.len() {
                sign = if bytes[pos] == b'-' { -1 } else { 1 };
                pos += 1;
                if pos == bytes.len() {
                    return Err(Error::input("dangling sign in polynomial"));
                }
            }
        }
        Ok(QPolynomial { coeffs })
    }
}

fn parse_term(term: &str) -> Option<(BigInt, u32)> {
    if term.is_empty() {
        return None;
    }
    let (coeff_part, q_part) = match term.find('q') {
        None => (term, None),
        Some(i) => (&term[..i], Some(&term[i..])),
    };
    let coeff = match (coeff_part, q_part.is_some()) {
        ("", true) => BigInt::one(),
        (c, true) => {
            let c = c.strip_suffix('*')?;
            c.parse().ok()?
        }
        (c, false) => c.parse().ok()?,
    };
    let exp = match q_part {
        None => 0,
        Some("q") => 1,
        Some(rest) => rest.strip_prefix("q^")?.parse().ok()?,
    };
    Some((coeff, exp))
}

fn to_rational_dense(p: &QPolynomial) -> Vec<BigRational> {
    let deg = p.degree().map_or(0, |d| d as usize);
    let mut out = vec![BigRational::zero(); deg + 1];
    for (k, c) in p.terms() {
        out[k as usize] = BigRational::from_integer(c.clone());
    }
    out
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Division with remainder over Q; `b` must be non-zero.
fn rational_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut divisor = b.to_vec();
    trim(&mut divisor);
    let db = divisor.len() - 1;
    let lead = divisor[db].clone();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db {
        let da = rem.len() - 1;
        let factor = rem[da].clone() / lead.clone();
        quot[da - db] = factor.clone();
        for (i, c) in divisor.iter().enumerate() {
            let idx = da - db + i;
            let delta = &factor * c;
            rem[idx] -= delta;
        }
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    (quot, rem)
}

/// Polynomial gcd over Z including content, normalized to a positive leading
/// coefficient. `gcd(0, b) = |b|` normalized; `gcd(0, 0) = 0`.
pub(crate) fn poly_gcd(a: &QPolynomial, b: &QPolynomial) -> QPolynomial {
    if a.is_zero() {
        return normalize_sign(b);
    }
    if b.is_zero() {
        return normalize_sign(a);
    }
    let content = a.content().gcd(&b.content());
    let mut x = to_rational_dense(a);
    let mut y = to_rational_dense(b);
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = rational_divrem(&x, &y);
        x = y;
        y = r;
    }
    // Clear denominators and make primitive with positive leading coefficient.
    let mut denom_lcm = BigInt::one();
    for c in &x {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut coeffs = BTreeMap::new();
    for (k, c) in x.iter().enumerate() {
        let v = c.numer() * (&denom_lcm / c.denom());
        if !v.is_zero() {
            coeffs.insert(k as u32, v);
        }
    }
    let prim = QPolynomial { coeffs };
    let prim_content = prim.content();
    let prim = prim
        .div_exact(&QPolynomial::constant(prim_content))
        .expect("content divides its polynomial");
    normalize_sign(&prim.scale(&content))
}

fn normalize_sign(p: &QPolynomial) -> QPolynomial {
    if p.leading_coeff().is_negative() {
        p.neg()
    } else {
        p.clone()
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
