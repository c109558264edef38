//! Integer partitions and the partition-indexed factors of Hua's formula.

use crate::qseries::QPolynomial;

/// An integer partition: weakly decreasing positive parts (empty allowed).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts and drops zero parts, so any bag of non-negative integers is
    /// accepted.
    pub fn new(mut parts: Vec<u32>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Weight `|lambda|`, the sum of parts.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((part, mult)) if *part == p => *mult += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

/// All partitions of `n` in descending lexicographic order, `(n)` first and
/// `(1,...,1)` last. `partitions_of(0)` is `[empty]`.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(current.clone()));
            return;
        }
        let mut part = remaining.min(max_part);
        while part >= 1 {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
            part -= 1;
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// The pairing `<lambda, mu> = sum_{i,j} min(lambda_i, mu_j)`, equivalently
/// the scalar product of the conjugate partitions.
pub fn hua_pairing(lambda: &Partition, mu: &Partition) -> u64 {
    let mut total: u64 = 0;
    for &a in lambda.parts() {
        for &b in mu.parts() {
            total += u64::from(a.min(b));
        }
    }
    total
}

/// The factor `b_lambda(t) = prod_k prod_{j=1..m_k} (1 - t^j)` over the
/// multiplicities `m_k` of `lambda`, as an exact polynomial in `t`.
/// (Hua's formula evaluates it at `t = q^{-1}`; the caller clears the
/// negative powers.)
pub fn b_poly(lambda: &Partition) -> QPolynomial {
    let mut out = QPolynomial::one();
    for (_, mult) in lambda.multiplicities() {
        for j in 1..=mult {
            // 1 - t^j
            let factor = QPolynomial::one().sub(&QPolynomial::q_power(j));
            out = out.mul(&factor);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_small_numbers() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(1), vec![Partition::new(vec![1])]);
        let four = partitions_of(4);
        assert_eq!(four.len(), 5);
        assert_eq!(four[0], Partition::new(vec![4]));
        assert_eq!(four[4], Partition::new(vec![1, 1, 1, 1]));
        // Descending lexicographic order throughout.
        for w in four.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn partition_counts_match_euler_recurrence() {
        // p(n) for n = 0..=12.
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(partitions_of(n as u32).len(), count, "p({n})");
        }
    }

    #[test]
    fn partition_normalizes_input() {
        assert_eq!(Partition::new(vec![1, 0, 3, 2]), Partition::new(vec![3, 2, 1]));
        assert_eq!(Partition::new(vec![2, 2, 1]).multiplicities(), vec![(2, 2), (1, 1)]);
        assert_eq!(Partition::new(vec![5]).weight(), 5);
        assert_eq!(Partition::empty().weight(), 0);
    }

    #[test]
    fn hua_pairing_values() {
        let one = Partition::new(vec![1]);
        let two_one = Partition::new(vec![2, 1]);
        assert_eq!(hua_pairing(&one, &one), 1);
        assert_eq!(hua_pairing(&two_one, &two_one), 5);
        assert_eq!(hua_pairing(&Partition::empty(), &two_one), 0);
        assert_eq!(hua_pairing(&Partition::new(vec![1, 1]), &Partition::new(vec![2])), 2);
    }

    #[test]
    fn hua_pairing_is_symmetric_and_dominates_weight() {
        let pool: Vec<Partition> = (0..=5).flat_map(partitions_of).collect();
        for a in &pool {
            for b in &pool {
                assert_eq!(hua_pairing(a, b), hua_pairing(b, a));
            }
            assert!(hua_pairing(a, a) >= u64::from(a.weight()));
        }
    }

    #[test]
    fn hua_pairing_matches_conjugate_scalar_product() {
        // <lambda,mu> = sum_k lambda'_k mu'_k where lambda'_k = #{i : lambda_i >= k}.
        let conj_product = |a: &Partition, b: &Partition| -> u64 {
            let max = a.parts().first().copied().unwrap_or(0).max(
                b.parts().first().copied().unwrap_or(0),
            );
            (1..=max)
                .map(|k| {
                    let ac = a.parts().iter().filter(|&&p| p >= k).count() as u64;
                    let bc = b.parts().iter().filter(|&&p| p >= k).count() as u64;
                    ac * bc
                })
                .sum()
        };
        let pool: Vec<Partition> = (0..=6).flat_map(partitions_of).collect();
        for a in &pool {
            for b in &pool {
                assert_eq!(hua_pairing(a, b), conj_product(a, b));
            }
        }
    }

    #[test]
    fn b_poly_values() {
        assert!(b_poly(&Partition::empty()).is_one());
        // m_1 = 2: (1-t)(1-t^2) = 1 - t - t^2 + t^3.
        assert_eq!(
            b_poly(&Partition::new(vec![1, 1])),
            QPolynomial::from_dense(&[1, -1, -1, 1])
        );
        // m_1 = m_2 = 1: (1-t)^2.
        assert_eq!(b_poly(&Partition::new(vec![2, 1])), QPolynomial::from_dense(&[1, -2, 1]));
    }
}
