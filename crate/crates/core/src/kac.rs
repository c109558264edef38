//! The Kac-polynomial engine.
//!
//! `kac_polynomial` computes a_{Q,alpha}(q) from Hua's formula, evaluated at
//! integer points q0 = 2, 3, … and reassembled by exact interpolation: the
//! polynomial has degree 1 - tits(alpha) when alpha is a root and is zero
//! otherwise, so `2 - tits` sample points suffice and two further points
//! cross-check the reconstruction. Each sample is plain rational arithmetic
//! — no rational-function normal forms — which keeps large dimension
//! vectors tractable. `kac_polynomial_via_series` is the independent
//! symbolic path (`hua_series` + plethystic Log over Q(q)); the two are
//! checked against each other in the tests. Results must reduce to
//! polynomials with non-negative integer coefficients (anything else is
//! reported as an internal error, never returned). `cached_kac` adds a
//! concurrency-safe, optionally file-backed result cache.

use std::collections::HashMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qseries::{hua_pairing, partitions_of, Partition, QPolynomial, QRational, XSeries};
use crate::quiver::{DimVector, Quiver};

fn check_bound(quiver: &Quiver, bound: &DimVector) -> Result<Vec<u32>> {
    if bound.len() != quiver.num_vertices() {
        return Err(Error::input(format!(
            "dimension vector has {} entries, quiver has {} vertices",
            bound.len(),
            quiver.num_vertices()
        )));
    }
    if !bound.is_nonnegative() {
        return Err(Error::input("dimension vector must be non-negative"));
    }
    Ok(bound.entries().iter().map(|&x| x as u32).collect())
}

/// Hua's series for the quiver, truncated at `bound`: the sum over
/// multipartitions pi = (pi_v) with |pi_v| <= bound_v of
///
/// ```text
///   prod_{a: i->j} q^<pi_i, pi_j>
///   ------------------------------------  *  prod_v x_v^|pi_v|
///   prod_v q^<pi_v, pi_v> b_{pi_v}(q^-1)
/// ```
///
/// with the negative powers of q cleared via 1 - q^-j = (q^j - 1)/q^j.
/// The empty multipartition contributes the constant term 1.
pub fn hua_series(quiver: &Quiver, bound: &DimVector) -> Result<XSeries> {
    let bounds = check_bound(quiver, bound)?;
    let lists: Vec<Vec<Partition>> = bounds
        .iter()
        .map(|&b| (0..=b).flat_map(partitions_of).collect())
        .collect();
    let mut series = XSeries::zero(bounds);
    let sizes: Vec<usize> = lists.iter().map(|l| l.len()).collect();
    let mut idx = vec![0usize; lists.len()];
    loop {
        let multi: Vec<&Partition> = idx.iter().zip(&lists).map(|(&i, l)| &l[i]).collect();
        let key: Vec<u32> = multi.iter().map(|p| p.weight()).collect();
        series.add_term(key, hua_term(quiver, &multi)?);
        // Odometer over the product of the per-vertex lists.
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(series);
            }
            idx[pos] += 1;
            if idx[pos] < sizes[pos] {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn hua_term(quiver: &Quiver, multi: &[&Partition]) -> Result<QRational> {
    let mut arrow_power: u32 = 0;
    for a in quiver.arrows() {
        arrow_power += hua_pairing(multi[a.src], multi[a.dst]) as u32;
    }
    let mut self_power: u32 = 0;
    let mut clear_power: u32 = 0;
    let mut denominator = QPolynomial::one();
    for pi in multi {
        self_power += hua_pairing(pi, pi) as u32;
        for (_, mult) in pi.multiplicities() {
            for j in 1..=mult {
                clear_power += j;
                // q^j - 1
                let factor = QPolynomial::q_power(j).sub(&QPolynomial::one());
                denominator = denominator.mul(&factor);
            }
        }
    }
    let numerator = QPolynomial::q_power(arrow_power + clear_power);
    QRational::new(numerator, denominator.shift(self_power))
}

/// Reference implementation of [`kac_polynomial`]: the coefficient of
/// x^alpha in (q - 1) * Log(hua_series(Q, alpha)), computed symbolically
/// over Q(q). Exact but much slower than the interpolating engine once the
/// intermediate rational functions grow; kept as an independent code path
/// for cross-validation.
pub fn kac_polynomial_via_series(quiver: &Quiver, alpha: &DimVector) -> Result<QPolynomial> {
    let key = check_bound(quiver, alpha)?;
    if alpha.is_zero() {
        return Err(Error::input("dimension vector must be non-zero"));
    }
    let series = hua_series(quiver, alpha)?;
    let log = series.plethystic_log()?;
    let q_minus_one = QPolynomial::from_dense(&[-1, 1]);
    let coefficient = log.coefficient(&key).mul_poly(&q_minus_one);
    let poly = coefficient.to_polynomial().ok_or_else(|| {
        Error::internal(format!(
            "Kac coefficient did not reduce to a polynomial at alpha={alpha}: {coefficient}"
        ))
    })?;
    if poly.terms().any(|(_, c)| c.is_negative()) {
        return Err(Error::internal(format!(
            "Kac polynomial has a negative coefficient at alpha={alpha}: {poly}"
        )));
    }
    Ok(poly)
}

/// Truncated polynomial in the x-variables with scalar rational
/// coefficients: Hua's series specialized at one value of q. Dense odometer
/// layout; `keys[i]` is the exponent vector of slot `i`.
struct PointSeries {
    bounds: Vec<u32>,
    keys: Vec<Vec<u32>>,
    data: Vec<BigRational>,
}

impl PointSeries {
    fn zero(bounds: Vec<u32>) -> PointSeries {
        let mut keys = vec![Vec::new()];
        for &b in &bounds {
            let mut next = Vec::with_capacity(keys.len() * (b as usize + 1));
            for e in 0..=b {
                for key in &keys {
                    let mut k = key.clone();
                    k.push(e);
                    next.push(k);
                }
            }
            keys = next;
        }
        let len = keys.len();
        PointSeries { bounds, keys, data: vec![BigRational::zero(); len] }
    }

    fn index(&self, key: &[u32]) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for (pos, &e) in key.iter().enumerate() {
            idx += e as usize * stride;
            stride *= self.bounds[pos] as usize + 1;
        }
        idx
    }

    fn mul(&self, other: &PointSeries) -> PointSeries {
        let mut out = PointSeries::zero(self.bounds.clone());
        for (i, a) in self.data.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ka = &self.keys[i];
            'pair: for (j, b) in other.data.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let kb = &other.keys[j];
                let mut key = Vec::with_capacity(ka.len());
                for (pos, (&ea, &eb)) in ka.iter().zip(kb).enumerate() {
                    let e = ea + eb;
                    if e > self.bounds[pos] {
                        continue 'pair;
                    }
                    key.push(e);
                }
                let idx = out.index(&key);
                out.data[idx] += a * b;
            }
        }
        out
    }

    /// log(self); requires constant term 1. Expands
    /// log(1 + u) = sum_k (-1)^{k+1} u^k / k, which terminates at the total
    /// truncation degree because u has no constant term.
    fn log(&self) -> Result<PointSeries> {
        if !self.data[0].is_one() {
            return Err(Error::internal("point series log needs constant term 1"));
        }
        let mut u = PointSeries {
            bounds: self.bounds.clone(),
            keys: self.keys.clone(),
            data: self.data.clone(),
        };
        u.data[0] = BigRational::zero();
        let max_total: u32 = self.bounds.iter().sum::<u32>().max(1);
        let mut out = PointSeries::zero(self.bounds.clone());
        let mut power = PointSeries {
            bounds: u.bounds.clone(),
            keys: u.keys.clone(),
            data: u.data.clone(),
        };
        for k in 1..=max_total {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let scale = BigRational::new(BigInt::from(sign), BigInt::from(k));
            for (slot, value) in power.data.iter().enumerate() {
                if !value.is_zero() {
                    out.data[slot] += value * &scale;
                }
            }
            if k < max_total {
                power = power.mul(&u);
            }
        }
        Ok(out)
    }
}

/// Value of one Hua summand at q = zeta, as an exact rational; same shape
/// as [`hua_term`] with the polynomial arithmetic collapsed to integers.
fn hua_term_at(quiver: &Quiver, multi: &[&Partition], zeta: &BigInt) -> BigRational {
    let mut arrow_power: u32 = 0;
    for a in quiver.arrows() {
        arrow_power += hua_pairing(multi[a.src], multi[a.dst]) as u32;
    }
    let mut self_power: u32 = 0;
    let mut clear_power: u32 = 0;
    let mut denominator = BigInt::one();
    for pi in multi {
        self_power += hua_pairing(pi, pi) as u32;
        for (_, mult) in pi.multiplicities() {
            for j in 1..=mult {
                clear_power += j;
                denominator *= zeta.pow(j) - BigInt::one();
            }
        }
    }
    let numerator = zeta.pow(arrow_power + clear_power);
    BigRational::new(numerator, denominator * zeta.pow(self_power))
}

/// Hua's series truncated at `bounds`, with q specialized to `zeta`.
fn hua_point_series(quiver: &Quiver, bounds: &[u32], zeta: &BigInt) -> PointSeries {
    let lists: Vec<Vec<Partition>> =
        bounds.iter().map(|&b| (0..=b).flat_map(partitions_of).collect()).collect();
    let mut series = PointSeries::zero(bounds.to_vec());
    let sizes: Vec<usize> = lists.iter().map(|l| l.len()).collect();
    let mut idx = vec![0usize; lists.len()];
    loop {
        let multi: Vec<&Partition> = idx.iter().zip(&lists).map(|(&i, l)| &l[i]).collect();
        let key: Vec<u32> = multi.iter().map(|p| p.weight()).collect();
        let slot = series.index(&key);
        let term = hua_term_at(quiver, &multi, zeta);
        series.data[slot] += term;
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return series;
            }
            idx[pos] += 1;
            if idx[pos] < sizes[pos] {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn moebius(n: u32) -> i32 {
    let mut n = n;
    let mut primes = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// a_{Q,alpha}(q0) as an exact rational:
///
///   (q0 - 1) * sum_{d | gcd(alpha)} mu(d)/d * ([x^{alpha/d}] log S)(q0^d)
///
/// — the x^alpha coefficient of (q - 1) * Log S with the Adams operations
/// resolved pointwise (psi_d sends q0 to q0^d and x^beta to x^{d*beta}).
fn kac_value_at(quiver: &Quiver, alpha: &[u32], q0: &BigInt) -> Result<BigRational> {
    let gcd = alpha.iter().fold(0u32, |g, &a| num_integer::gcd(g, a));
    let mut total = BigRational::zero();
    for d in 1..=gcd {
        if gcd % d != 0 {
            continue;
        }
        let mu = moebius(d);
        if mu == 0 {
            continue;
        }
        let reduced: Vec<u32> = alpha.iter().map(|&a| a / d).collect();
        let zeta = q0.pow(d);
        let log = hua_point_series(quiver, &reduced, &zeta).log()?;
        let slot = log.index(&reduced);
        total += &log.data[slot] * BigRational::new(BigInt::from(mu), BigInt::from(d));
    }
    Ok(total * BigRational::from_integer(q0 - BigInt::one()))
}

/// Exact polynomial through the points `(xs[i], ys[i])` (Newton form),
/// returned as ascending coefficients; `xs` must be pairwise distinct.
fn interpolate(xs: &[BigInt], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let denom = BigRational::from_integer(&xs[i] - &xs[i - j]);
            dd[i] = (&dd[i] - &dd[i - 1]) / denom;
        }
    }
    let mut coeffs = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // coeffs <- coeffs * (x - xs[i]) + dd[i]
        let x_i = BigRational::from_integer(xs[i].clone());
        coeffs.insert(0, BigRational::zero());
        for k in 0..coeffs.len() - 1 {
            let shifted = coeffs[k + 1].clone();
            coeffs[k] -= shifted * &x_i;
        }
        coeffs[0] += &dd[i];
    }
    coeffs
}

fn eval_rational_poly(coeffs: &[BigRational], x: &BigInt) -> BigRational {
    let x = BigRational::from_integer(x.clone());
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * &x + c;
    }
    acc
}

/// The Kac polynomial a_{Q,alpha}(q): non-negative integer coefficients,
/// zero exactly when alpha is not a root, monic of degree 1 - tits(alpha)
/// on roots. Computed by evaluating Hua's formula at 2 - tits(alpha)
/// integer points and interpolating; two extra sample points guard the
/// degree bound, and integrality/non-negativity of the result are asserted.
pub fn kac_polynomial(quiver: &Quiver, alpha: &DimVector) -> Result<QPolynomial> {
    let key = check_bound(quiver, alpha)?;
    if alpha.is_zero() {
        return Err(Error::input("dimension vector must be non-zero"));
    }
    let tits = quiver.tits_form(alpha)?;
    let degree_bound = (1 - tits).max(0) as usize;
    let samples = degree_bound + 3;
    let xs: Vec<BigInt> = (0..samples).map(|i| BigInt::from(i as u64 + 2)).collect();
    let ys: Vec<BigRational> =
        xs.iter().map(|x| kac_value_at(quiver, &key, x)).collect::<Result<_>>()?;
    let coeffs = interpolate(&xs[..degree_bound + 1], &ys[..degree_bound + 1]);
    for (x, y) in xs.iter().zip(&ys).skip(degree_bound + 1) {
        if eval_rational_poly(&coeffs, x) != *y {
            return Err(Error::internal(format!(
                "Kac values at alpha={alpha} do not fit a degree-{degree_bound} polynomial"
            )));
        }
    }
    let mut poly = QPolynomial::zero();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !c.is_integer() {
            return Err(Error::internal(format!(
                "Kac coefficient of q^{k} at alpha={alpha} is not an integer: {c}"
            )));
        }
        let c = c.to_integer();
        if c.is_negative() {
            return Err(Error::internal(format!(
                "Kac polynomial has a negative coefficient at alpha={alpha}"
            )));
        }
        poly = poly.add(&QPolynomial::monomial(c, k as u32));
    }
    Ok(poly)
}

/// a_{Q,alpha}(1), the count the covering identity sums.
pub fn kac_at_one(quiver: &Quiver, alpha: &DimVector) -> Result<BigInt> {
    Ok(kac_polynomial(quiver, alpha)?.eval_one())
}

/// One cached engine result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KacResult {
    /// Content hash of the canonical quiver serialization.
    pub quiver_key: String,
    /// Dimension entries in sorted-vertex order, comma-separated.
    pub dim_key: String,
    pub polynomial: QPolynomial,
    pub value_at_one: BigInt,
}

/// Concurrency-safe polynomial cache, optionally backed by an append-only
/// file of `hash TAB dims TAB polynomial` lines (last line wins; corrupted
/// lines are ignored and recomputed).
pub struct KacCache {
    path: Option<PathBuf>,
    entries: Mutex<HashMap<(String, String), QPolynomial>>,
}

impl KacCache {
    pub fn in_memory() -> KacCache {
        KacCache { path: None, entries: Mutex::new(HashMap::new()) }
    }

    /// Loads any existing entries from `path`; the file is created on first
    /// write if missing.
    pub fn with_file(path: impl AsRef<Path>) -> Result<KacCache> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        if path.exists() {
            let text = fs::read_to_string(&path)
                .map_err(|e| Error::input(format!("cannot read cache {}: {e}", path.display())))?;
            for line in text.lines() {
                let mut parts = line.split('\t');
                let (Some(hash), Some(dims), Some(poly), None) =
                    (parts.next(), parts.next(), parts.next(), parts.next())
                else {
                    continue;
                };
                let Ok(poly) = QPolynomial::parse(poly) else {
                    continue;
                };
                entries.insert((hash.to_string(), dims.to_string()), poly);
            }
        }
        Ok(KacCache { path: Some(path), entries: Mutex::new(entries) })
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, key: &(String, String)) -> Option<QPolynomial> {
        self.entries.lock().expect("cache lock").get(key).cloned()
    }

    fn put(&self, key: (String, String), poly: &QPolynomial) -> Result<()> {
        let mut entries = self.entries.lock().expect("cache lock");
        entries.insert(key.clone(), poly.clone());
        if let Some(path) = &self.path {
            let mut file = fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| Error::input(format!("cannot open cache {}: {e}", path.display())))?;
            writeln!(file, "{}\t{}\t{}", key.0, key.1, poly.render())
                .map_err(|e| Error::input(format!("cannot write cache: {e}")))?;
        }
        Ok(())
    }
}

/// Dimension entries in sorted-vertex order — the order the canonical quiver
/// serialization (and therefore the cache) uses.
pub fn dim_key(quiver: &Quiver, alpha: &DimVector) -> String {
    let parts: Vec<String> =
        quiver.sorted_vertex_indices().iter().map(|&i| alpha[i].to_string()).collect();
    parts.join(",")
}

/// Cache-aware [`kac_polynomial`]: hits return without recomputation,
/// misses compute, store, and (when file-backed) append.
pub fn cached_kac(cache: &KacCache, quiver: &Quiver, alpha: &DimVector) -> Result<KacResult> {
    quiver.check_dim_len(alpha)?;
    let key = (quiver.content_hash(), dim_key(quiver, alpha));
    let polynomial = match cache.get(&key) {
        Some(poly) => poly,
        None => {
            let poly = kac_polynomial(quiver, alpha)?;
            cache.put(key.clone(), &poly)?;
            poly
        }
    };
    let value_at_one = polynomial.eval_one();
    Ok(KacResult { quiver_key: key.0, dim_key: key.1, polynomial, value_at_one })
}
