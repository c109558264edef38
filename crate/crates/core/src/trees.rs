//! Tree-module counting: spanning trees for thin dimension vectors,
//! cover-thin counts for the m-Kronecker quiver, and the growth-rate bound
//! for their exponential behavior.

use num_bigint::BigInt;
use num_integer::Integer;
pub use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::covering::enumerate_compatible;
use crate::error::{Error, Result};
use crate::kac::{cached_kac, kac_at_one, KacCache};
use crate::qseries::QPolynomial;
use crate::quiver::{DimVector, Quiver};

/// C(x, k) with out-of-range lower index giving 0.
pub fn binomial(x: i64, k: i64) -> BigInt {
    if k < 0 || k > x {
        return BigInt::zero();
    }
    let mut result = BigInt::one();
    for j in 1..=k {
        result = result * (x - k + j) / j;
    }
    result
}

/// Number of spanning trees of the underlying multigraph (loops dropped,
/// parallel arrows counted with multiplicity): the first cofactor of the
/// Laplacian, by the matrix-tree theorem. Disconnected graphs give 0.
pub fn spanning_tree_count(quiver: &Quiver) -> BigInt {
    let n = quiver.num_vertices();
    if n == 1 {
        return BigInt::one();
    }
    let mut lap = vec![vec![BigInt::zero(); n]; n];
    for a in quiver.arrows() {
        if a.src == a.dst {
            continue;
        }
        lap[a.src][a.src] += 1;
        lap[a.dst][a.dst] += 1;
        lap[a.src][a.dst] -= 1;
        lap[a.dst][a.src] -= 1;
    }
    let minor: Vec<Vec<BigInt>> =
        (1..n).map(|i| (1..n).map(|j| lap[i][j].clone()).collect()).collect();
    determinant(minor)
}

/// Fraction-free Bareiss elimination; every division below is exact.
fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                let (q, r) = t.div_rem(&prev);
                debug_assert!(r.is_zero(), "fraction-free step left a remainder");
                m[i][j] = q;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m.pop().expect("n >= 1").pop().expect("n >= 1");
    if negate {
        -det
    } else {
        det
    }
}

/// Spanning trees by direct enumeration of edge subsets; reference
/// implementation for cross-checking the determinant.
pub fn spanning_tree_count_brute(quiver: &Quiver) -> Result<BigInt> {
    let n = quiver.num_vertices();
    let edges: Vec<(usize, usize)> = quiver
        .arrows()
        .iter()
        .filter(|a| a.src != a.dst)
        .map(|a| (a.src, a.dst))
        .collect();
    let m = edges.len();
    if m > 20 {
        return Err(Error::resource(format!(
            "brute-force spanning-tree count supports at most 20 non-loop edges, got {m}"
        )));
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    if m < n - 1 {
        return Ok(BigInt::zero());
    }

    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut x = x;
        while parent[x] != root {
            let next = parent[x];
            parent[x] = root;
            x = next;
        }
        root
    }

    let mut count: u64 = 0;
    for mask in 0u32..1u32 << m {
        if mask.count_ones() as usize != n - 1 {
            continue;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        let mut acyclic = true;
        for (idx, &(s, d)) in edges.iter().enumerate() {
            if mask >> idx & 1 == 1 {
                let (rs, rd) = (find(&mut parent, s), find(&mut parent, d));
                if rs == rd {
                    acyclic = false;
                    break;
                }
                parent[rs] = rd;
            }
        }
        // n-1 acyclic edges on n vertices are automatically spanning.
        if acyclic {
            count += 1;
        }
    }
    Ok(BigInt::from(count))
}

/// Result of checking a(1) at the all-ones dimension against the
/// spanning-tree count.
#[derive(Debug, Clone)]
pub struct ThinCheck {
    pub kac_one: BigInt,
    pub spanning: BigInt,
    pub ok: bool,
}

/// At the all-ones dimension vector, a(1) equals the number of spanning
/// trees of the underlying graph; this runs both sides independently.
pub fn thin_kac_at_one_check(quiver: &Quiver) -> Result<ThinCheck> {
    let kac_one = kac_at_one(quiver, &DimVector::all_ones(quiver.num_vertices()))?;
    let spanning = spanning_tree_count(quiver);
    let ok = kac_one == spanning;
    Ok(ThinCheck { kac_one, spanning, ok })
}

/// Parameters of a cover-thin count for the m-Kronecker quiver at
/// dimension (d, e).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverThinParams {
    pub m: u64,
    pub d: u64,
    pub e: u64,
}

impl CoverThinParams {
    pub fn new(m: u64, d: u64, e: u64) -> Result<CoverThinParams> {
        if m < 1 || d < 1 || e < 1 {
            return Err(Error::input("cover-thin parameters m, d, e must all be at least 1"));
        }
        Ok(CoverThinParams { m, d, e })
    }

    pub fn n(&self) -> u64 {
        self.m - 1
    }
}

/// Number of cover-thin tree classes of the m-Kronecker quiver at (d, e):
/// (1/d) sum_{i=1}^m C(m,i) C(ne, d-1) C(n(d-1), e-i) (i/e) with n = m-1,
/// evaluated exactly; the sum is always divisible by d*e.
pub fn cover_thin_count(p: CoverThinParams) -> Result<BigInt> {
    let (m, d, e) = (p.m as i64, p.d as i64, p.e as i64);
    let n = p.n() as i64;
    let left = binomial(n * e, d - 1);
    let mut sum = BigInt::zero();
    for i in 1..=m {
        sum += binomial(m, i) * &left * binomial(n * (d - 1), e - i) * i;
    }
    let divisor = BigInt::from(d) * e;
    let (q, r) = sum.div_rem(&divisor);
    if !r.is_zero() {
        return Err(Error::internal(format!(
            "cover-thin sum {sum} for (m,d,e)=({},{},{}) is not divisible by d*e",
            p.m, p.d, p.e
        )));
    }
    Ok(q)
}

/// Cover-thin count of the 3-Kronecker quiver at (d, d+1) in closed form:
/// 3/((d+2)(d+3)) * C(2d,d) * C(2d+2,d+1).
pub fn cover_thin_closed_form_m3(d: u64) -> Result<BigInt> {
    if d < 1 {
        return Err(Error::input("closed form needs d >= 1"));
    }
    let d = d as i64;
    let numerator = BigInt::from(3) * binomial(2 * d, d) * binomial(2 * d + 2, d + 1);
    let divisor = BigInt::from((d + 2) * (d + 3));
    let (q, r) = numerator.div_rem(&divisor);
    if !r.is_zero() {
        return Err(Error::internal(format!("closed form at d={d} is not an integer")));
    }
    Ok(q)
}

fn ratio_f64(x: Ratio<i64>) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// x ln x, with the limit value 0 at x = 0 (zero detected exactly).
fn xlnx(x: Ratio<i64>) -> f64 {
    if x.is_zero() {
        0.0
    } else {
        let v = ratio_f64(x);
        v * v.ln()
    }
}

/// Exponential growth-rate bound for cover-thin counts of the m-Kronecker
/// quiver along e = k*d:
/// n(k+1) ln n + k(n-1) ln k - (nk-1) ln(nk-1) - (n-k) ln(n-k), n = m-1.
/// Domain: m >= 2 and 1 <= k <= n; terms with zero argument take their
/// limit value 0.
pub fn growth_rate_bound(m: u64, k: Ratio<i64>) -> Result<f64> {
    if m < 2 {
        return Err(Error::input("growth-rate bound needs m >= 2"));
    }
    let n = (m - 1) as i64;
    let n_r = Ratio::from_integer(n);
    if k < Ratio::one() || k > n_r {
        return Err(Error::input(format!("growth-rate slope k must lie in [1, {n}]")));
    }
    let nf = n as f64;
    let kf = ratio_f64(k);
    let head = nf * (kf + 1.0) * nf.ln() + kf * (nf - 1.0) * kf.ln();
    Ok(head - xlnx(n_r * k - Ratio::one()) - xlnx(n_r - k))
}

/// One row of the empirical growth table for e = k*d.
#[derive(Debug, Clone)]
pub struct GrowthRow {
    pub d: u64,
    pub count: BigInt,
    /// ln(count)/d, the finite-d analogue of the bound.
    pub log_ratio: f64,
    pub bound: f64,
}

/// Cover-thin counts along e = k*d for d = 1..=dmax, restricted to the d
/// where k*d is a positive integer.
pub fn growth_report(m: u64, k: Ratio<i64>, dmax: u64) -> Result<Vec<GrowthRow>> {
    let bound = growth_rate_bound(m, k)?;
    let mut rows = Vec::new();
    for d in 1..=dmax {
        let e = k * Ratio::from_integer(d as i64);
        if !e.is_integer() || e < Ratio::one() {
            continue;
        }
        let count = cover_thin_count(CoverThinParams::new(m, d, e.to_integer() as u64)?)?;
        let log_ratio = if count.is_zero() {
            f64::NEG_INFINITY
        } else {
            ln_bigint(&count) / d as f64
        };
        rows.push(GrowthRow { d, count, log_ratio, bound });
    }
    Ok(rows)
}

/// Tab-separated growth table: d, count, ln(count)/d, bound.
pub fn render_growth_table(rows: &[GrowthRow]) -> String {
    rows.iter()
        .map(|r| format!("{}\t{}\t{:.6}\t{:.6}\n", r.d, r.count, r.log_ratio, r.bound))
        .collect()
}

/// Natural log of a positive big integer, headroom-safe for values far
/// beyond f64 range.
pub fn ln_bigint(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "ln_bigint needs a positive argument");
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("within f64 range").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit head fits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Outcome of counting tree modules through the covering identity.
#[derive(Debug, Clone)]
pub enum TreeModuleCount {
    /// Every compatible class has Kac polynomial exactly 1, so the number
    /// of classes is the tree-module count and equals a(1).
    Count(u64),
    /// Witness class whose Kac polynomial is not 1; the count-by-classes
    /// argument does not apply.
    NotApplicable { class_serialization: String, polynomial: QPolynomial },
}

/// Counts compatible cover classes if all of them are exceptional
/// (Kac polynomial 1); otherwise reports the first witness class that is
/// not.
pub fn tree_module_count_if_exceptional(
    quiver: &Quiver,
    alpha: &DimVector,
    node_cap: u64,
    cache: &KacCache,
) -> Result<TreeModuleCount> {
    let classes = enumerate_compatible(quiver, alpha, node_cap)?;
    for class in &classes {
        let (support, dims) = class.structural();
        let result = cached_kac(cache, &support, &dims)?;
        if !result.polynomial.is_one() {
            return Ok(TreeModuleCount::NotApplicable {
                class_serialization: class.serialization.clone(),
                polynomial: result.polynomial,
            });
        }
    }
    Ok(TreeModuleCount::Count(classes.len() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(4, 0), BigInt::one());
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(40, 20), BigInt::from(137_846_528_820u64));
    }

    #[test]
    fn spanning_tree_examples() {
        for m in 1..=4 {
            assert_eq!(spanning_tree_count(&Quiver::kronecker(m)), BigInt::from(m));
        }
        assert_eq!(spanning_tree_count(&Quiver::cycle(3).unwrap()), BigInt::from(3));
        assert_eq!(spanning_tree_count(&Quiver::loops(3)), BigInt::one());
        assert_eq!(spanning_tree_count(&Quiver::path(4).unwrap()), BigInt::one());
        // Complete graph on 4 vertices: 4^2 trees.
        let k4 = Quiver::new(
            vec!["1", "2", "3", "4"],
            vec![
                ("a", "1", "2"),
                ("b", "1", "3"),
                ("c", "1", "4"),
                ("d", "2", "3"),
                ("e", "2", "4"),
                ("f", "3", "4"),
            ],
        )
        .unwrap();
        assert_eq!(spanning_tree_count(&k4), BigInt::from(16));
        // Disconnected graphs have none.
        let split = Quiver::new(vec!["1", "2", "3", "4"], vec![("a", "1", "2"), ("b", "3", "4")])
            .unwrap();
        assert_eq!(spanning_tree_count(&split), BigInt::zero());
    }

    #[test]
    fn brute_force_matches_determinant() {
        let k4 = Quiver::new(
            vec!["1", "2", "3", "4"],
            vec![
                ("a", "1", "2"),
                ("b", "1", "3"),
                ("c", "1", "4"),
                ("d", "2", "3"),
                ("e", "2", "4"),
                ("f", "3", "4"),
            ],
        )
        .unwrap();
        assert_eq!(spanning_tree_count_brute(&k4).unwrap(), BigInt::from(16));
        for quiver in [
            Quiver::kronecker(3),
            Quiver::cycle(4).unwrap(),
            Quiver::loops(2),
            Quiver::star(3).unwrap(),
            Quiver::new(vec!["1", "2", "3"], vec![("a", "1", "2")]).unwrap(),
        ] {
            assert_eq!(
                spanning_tree_count_brute(&quiver).unwrap(),
                spanning_tree_count(&quiver),
                "{}",
                quiver.canonical_serialization()
            );
        }
    }

    #[test]
    fn thin_check_examples() {
        for quiver in [
            Quiver::kronecker(3),
            Quiver::cycle(3).unwrap(),
            Quiver::path(2).unwrap(),
            // Opposite-direction pair: orientation must not matter.
            Quiver::new(vec!["1", "2"], vec![("a", "1", "2"), ("b", "2", "1")]).unwrap(),
        ] {
            let check = thin_kac_at_one_check(&quiver).unwrap();
            assert!(check.ok, "{}", quiver.canonical_serialization());
        }
        let check = thin_kac_at_one_check(&Quiver::kronecker(3)).unwrap();
        assert_eq!(check.kac_one, BigInt::from(3));
        assert_eq!(check.spanning, BigInt::from(3));
    }

    #[test]
    fn cover_thin_values() {
        let ct = |m, d, e| cover_thin_count(CoverThinParams::new(m, d, e).unwrap()).unwrap();
        assert_eq!(ct(3, 2, 3), BigInt::from(18));
        assert_eq!(ct(3, 1, 2), BigInt::from(3));
        assert_eq!(ct(3, 1, 1), BigInt::from(3));
        assert_eq!(ct(2, 1, 1), BigInt::from(2));
        assert_eq!(ct(3, 2, 2), BigInt::from(12));
        assert_eq!(ct(3, 3, 3), BigInt::from(75));
        assert_eq!(ct(4, 2, 4), BigInt::from(120));
        assert_eq!(ct(1, 1, 1), BigInt::one());
        assert!(CoverThinParams::new(0, 1, 1).is_err());
        assert!(CoverThinParams::new(3, 0, 1).is_err());
    }

    #[test]
    fn closed_form_values_and_agreement() {
        assert_eq!(cover_thin_closed_form_m3(1).unwrap(), BigInt::from(3));
        assert_eq!(cover_thin_closed_form_m3(2).unwrap(), BigInt::from(18));
        assert_eq!(cover_thin_closed_form_m3(3).unwrap(), BigInt::from(140));
        assert_eq!(cover_thin_closed_form_m3(4).unwrap(), BigInt::from(1260));
        for d in 1..=10 {
            assert_eq!(
                cover_thin_closed_form_m3(d).unwrap(),
                cover_thin_count(CoverThinParams::new(3, d, d + 1).unwrap()).unwrap(),
                "d={d}"
            );
        }
        assert!(cover_thin_closed_form_m3(0).is_err());
    }

    #[test]
    fn growth_bound_values_and_domain() {
        let b31 = growth_rate_bound(3, ratio(1, 1)).unwrap();
        assert!((b31 - 4.0 * std::f64::consts::LN_2).abs() < 1e-12);
        assert_eq!(growth_rate_bound(2, ratio(1, 1)).unwrap(), 0.0);
        // k = n is allowed (the (n-k) term vanishes by limit).
        let b32 = growth_rate_bound(3, ratio(2, 1)).unwrap();
        assert!((b32 - (8.0 * std::f64::consts::LN_2 - 3.0 * 3f64.ln())).abs() < 1e-12);
        assert!(growth_rate_bound(1, ratio(1, 1)).is_err());
        assert!(growth_rate_bound(3, ratio(1, 2)).is_err());
        assert!(growth_rate_bound(3, ratio(5, 2)).is_err());
    }

    #[test]
    fn growth_report_rows() {
        let rows = growth_report(3, ratio(1, 1), 5).unwrap();
        assert_eq!(rows.iter().map(|r| r.d).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5]);
        assert_eq!(rows[2].count, BigInt::from(75));
        // Fractional slope keeps only the d where e = k*d is integral.
        let rows = growth_report(3, ratio(3, 2), 6).unwrap();
        assert_eq!(rows.iter().map(|r| r.d).collect::<Vec<_>>(), vec![2, 4, 6]);
        let table = render_growth_table(&rows);
        for line in table.lines() {
            assert_eq!(line.split('\t').count(), 4);
        }
    }

    #[test]
    fn ln_bigint_handles_huge_values() {
        let x = BigInt::from(1000);
        assert!((ln_bigint(&x) - 1000f64.ln()).abs() < 1e-12);
        let huge = BigInt::from(2).pow(20_000);
        let expected = 20_000.0 * std::f64::consts::LN_2;
        assert!((ln_bigint(&huge) - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn tree_module_counts() {
        let cache = KacCache::in_memory();
        let cap = 5_000_000;
        let a2 = Quiver::path(2).unwrap();
        match tree_module_count_if_exceptional(&a2, &DimVector::new(vec![1, 1]), cap, &cache)
            .unwrap()
        {
            TreeModuleCount::Count(n) => assert_eq!(n, 1),
            other => panic!("unexpected: {other:?}"),
        }
        let k3 = Quiver::kronecker(3);
        match tree_module_count_if_exceptional(&k3, &DimVector::new(vec![2, 3]), cap, &cache)
            .unwrap()
        {
            TreeModuleCount::Count(n) => assert_eq!(n, 19),
            other => panic!("unexpected: {other:?}"),
        }
        let k4 = Quiver::kronecker(4);
        match tree_module_count_if_exceptional(&k4, &DimVector::new(vec![2, 4]), cap, &cache)
            .unwrap()
        {
            TreeModuleCount::NotApplicable { class_serialization, polynomial } => {
                assert_eq!(polynomial, QPolynomial::from_dense(&[4, 1]));
                assert!(class_serialization.contains(":2"));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }
}
