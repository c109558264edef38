//! Truncated multivariate power series over [`QRational`] coefficients, with
//! the plethystic Log/Exp pair used to extract "connected" counts.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::qseries::{QPolynomial, QRational};

/// A series in variables x_1..x_n truncated componentwise: only monomials
/// x^k with k <= bound (in every coordinate) are stored, and arithmetic
/// re-truncates against the bound. Keys with zero coefficient are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XSeries {
    bound: Vec<u32>,
    terms: BTreeMap<Vec<u32>, QRational>,
}

impl XSeries {
    pub fn zero(bound: Vec<u32>) -> XSeries {
        XSeries { bound, terms: BTreeMap::new() }
    }

    pub fn one(bound: Vec<u32>) -> XSeries {
        let mut s = XSeries::zero(bound);
        s.add_term(vec![0; s.bound.len()], QRational::one());
        s
    }

    pub fn bound(&self) -> &[u32] {
        &self.bound
    }

    pub fn num_vars(&self) -> usize {
        self.bound.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &[u32]) -> QRational {
        self.terms.get(key).cloned().unwrap_or_else(QRational::zero)
    }

    pub fn constant_term(&self) -> QRational {
        self.coefficient(&vec![0; self.bound.len()])
    }

    /// Ascending (lexicographic) iteration over stored terms.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &QRational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// Adds `value * x^key`, silently dropping keys beyond the bound (the
    /// truncation semantics all arithmetic shares).
    pub fn add_term(&mut self, key: Vec<u32>, value: QRational) {
        debug_assert_eq!(key.len(), self.bound.len());
        if value.is_zero() || key.iter().zip(&self.bound).any(|(k, b)| k > b) {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&value);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_same_bound(&self, other: &XSeries) -> Result<()> {
        if self.bound != other.bound {
            return Err(Error::input("series bounds differ"));
        }
        Ok(())
    }

    pub fn add(&self, other: &XSeries) -> Result<XSeries> {
        self.check_same_bound(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &XSeries) -> Result<XSeries> {
        self.check_same_bound(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.neg());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &XSeries) -> Result<XSeries> {
        self.check_same_bound(other)?;
        let mut out = XSeries::zero(self.bound.clone());
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let key: Vec<u32> = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                if key.iter().zip(&self.bound).any(|(k, b)| k > b) {
                    continue;
                }
                out.add_term(key, va.mul(vb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QRational) -> XSeries {
        let mut out = XSeries::zero(self.bound.clone());
        if c.is_zero() {
            return out;
        }
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.mul(c));
        }
        out
    }

    /// Adams operation `psi_d`: substitutes q -> q^d and x_i -> x_i^d
    /// (monomials pushed past the bound are truncated away).
    pub fn adams(&self, d: u32) -> XSeries {
        assert!(d >= 1, "adams index must be >= 1");
        if d == 1 {
            return self.clone();
        }
        let mut out = XSeries::zero(self.bound.clone());
        for (k, v) in &self.terms {
            let key: Vec<u32> = k.iter().map(|x| x * d).collect();
            if key.iter().zip(&self.bound).any(|(x, b)| x > b) {
                continue;
            }
            out.add_term(key, v.substitute_q_power(d));
        }
        out
    }

    /// log(S) for S with constant term 1, via the Mercator series; exact at
    /// the truncation bound because (S-1)^k starts in total degree k.
    pub fn formal_log(&self) -> Result<XSeries> {
        if !self.constant_term().is_one() {
            return Err(Error::input("formal_log needs constant term 1"));
        }
        let n = self.sub(&XSeries::one(self.bound.clone()))?;
        let max_k: u32 = self.bound.iter().sum();
        let mut acc = XSeries::zero(self.bound.clone());
        let mut power = XSeries::one(self.bound.clone());
        for k in 1..=max_k.max(1) {
            power = power.mul(&n)?;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&power.scale(&QRational::from_ratio(sign, i64::from(k))))?;
        }
        Ok(acc)
    }

    /// exp(T) for T with constant term 0.
    pub fn formal_exp(&self) -> Result<XSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::input("formal_exp needs constant term 0"));
        }
        let max_k: u32 = self.bound.iter().sum();
        let mut acc = XSeries::one(self.bound.clone());
        let mut power = XSeries::one(self.bound.clone());
        let mut factorial = BigInt::one();
        for k in 1..=max_k.max(1) {
            power = power.mul(self)?;
            if power.is_zero() {
                break;
            }
            factorial *= k;
            let inv_fact = QRational::new(
                QPolynomial::one(),
                QPolynomial::constant(factorial.clone()),
            )?;
            acc = acc.add(&power.scale(&inv_fact))?;
        }
        Ok(acc)
    }

    /// Plethystic logarithm `Log(S) = sum_{d>=1} mu(d)/d * psi_d(log S)`;
    /// the d-sum is finite because psi_d empties the truncated series once
    /// d exceeds every bound coordinate.
    pub fn plethystic_log(&self) -> Result<XSeries> {
        let log = self.formal_log()?;
        let max_d = self.bound.iter().copied().max().unwrap_or(0).max(1);
        let mut acc = XSeries::zero(self.bound.clone());
        for d in 1..=max_d {
            let mu = mobius(d);
            if mu == 0 {
                continue;
            }
            let scaled = log.adams(d).scale(&QRational::from_ratio(mu, i64::from(d)));
            acc = acc.add(&scaled)?;
        }
        Ok(acc)
    }

    /// Plethystic exponential `Exp(T) = exp(sum_{d>=1} psi_d(T)/d)`, the
    /// inverse of [`XSeries::plethystic_log`] at the truncation bound.
    pub fn plethystic_exp(&self) -> Result<XSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::input("plethystic_exp needs constant term 0"));
        }
        let max_d = self.bound.iter().copied().max().unwrap_or(0).max(1);
        let mut acc = XSeries::zero(self.bound.clone());
        for d in 1..=max_d {
            acc = acc.add(&self.adams(d).scale(&QRational::from_ratio(1, i64::from(d))))?;
        }
        acc.formal_exp()
    }
}

/// Moebius function for d >= 1.
pub(crate) fn mobius(d: u32) -> i64 {
    debug_assert!(d >= 1);
    let mut rest = d;
    let mut primes = 0;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            rest /= p;
            if rest % p == 0 {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if rest > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}
