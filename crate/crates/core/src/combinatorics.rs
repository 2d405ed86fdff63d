//! Hooks, compositions and the index sets of the hook resolution.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// The hook partition `(a, 1^b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hook {
    a: u32,
    b: u32,
}

impl Hook {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidHook { a, b });
        }
        Ok(Hook { a, b })
    }

    /// Arm length (first row).
    pub fn arm(&self) -> u32 {
        self.a
    }

    /// Leg length (number of boxes below the first row).
    pub fn leg(&self) -> u32 {
        self.b
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b
    }

    /// `(a + k, 1^(b - k))`, defined for `0 <= k <= b`.
    pub fn shift(&self, k: u32) -> Result<Hook> {
        if k > self.b {
            return Err(Error::InvalidShift { k, b: self.b });
        }
        Ok(Hook {
            a: self.a + k,
            b: self.b - k,
        })
    }
}

impl fmt::Display for Hook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},1^{})", self.a, self.b)
    }
}

/// A finite sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<u32>,
    sum: u32,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(parts));
        }
        let sum = parts.iter().sum();
        Ok(Composition { parts, sum })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> u32 {
        self.sum
    }

    pub fn first(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    /// Merge positions `s` and `s + 1` (1-based). `None` when `s + 1` is past the end.
    pub fn merge(&self, s: usize) -> Option<Composition> {
        if s == 0 || s >= self.parts.len() {
            return None;
        }
        let mut parts = Vec::with_capacity(self.parts.len() - 1);
        parts.extend_from_slice(&self.parts[..s - 1]);
        parts.push(self.parts[s - 1] + self.parts[s]);
        parts.extend_from_slice(&self.parts[s + 1..]);
        Some(Composition {
            parts,
            sum: self.sum,
        })
    }

    /// The composition with its first part removed.
    pub fn tail(&self) -> Composition {
        let parts = self.parts.iter().skip(1).copied().collect::<Vec<_>>();
        let sum = parts.iter().sum();
        Composition { parts, sum }
    }

    /// Parts padded with zeros to length `n` (never truncates).
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.parts.clone();
        if v.len() < n {
            v.resize(n, 0);
        }
        v
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Rank of the ambient free module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GlobalConfig {
    pub n: usize,
}

impl GlobalConfig {
    /// The smallest rank admissible for a hook with leg `b`.
    pub fn for_leg(b: u32) -> Self {
        GlobalConfig { n: b as usize + 1 }
    }

    pub fn serves(&self, b: u32) -> bool {
        self.n > b as usize
    }
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::from(0);
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Global order on weights: `Less` when every basis vector of weight `mu`
/// precedes every basis vector of weight `nu`, i.e. when `mu` is
/// lexicographically greater after zero padding.
pub fn weight_cmp(mu: &Composition, nu: &Composition) -> Ordering {
    let n = mu.len().max(nu.len());
    nu.padded(n).cmp(&mu.padded(n))
}

pub fn weight_less(mu: &Composition, nu: &Composition) -> bool {
    weight_cmp(mu, nu) == Ordering::Less
}

/// Compositions indexing the summands of the `i`-th term of the resolution
/// of `Δ(a, 1^b)`: length `b + 1 - i`, total `a + b`, first part in
/// `[a, a + i]`. Sorted by [`weight_cmp`].
pub fn resolution_compositions(a: u32, b: u32, i: u32) -> Vec<Composition> {
    if i > b {
        return Vec::new();
    }
    let len = (b + 1 - i) as usize;
    let total = a + b;
    let mut out = Vec::new();
    for first in a..=(a + i) {
        if first > total {
            break;
        }
        let rest = total - first;
        let mut prefix = vec![first];
        positive_compositions(rest, len - 1, &mut prefix, &mut out);
    }
    out.sort_by(weight_cmp);
    out
}

fn positive_compositions(total: u32, len: usize, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
    if len == 0 {
        if total == 0 {
            out.push(Composition {
                parts: prefix.clone(),
                sum: prefix.iter().sum(),
            });
        }
        return;
    }
    if (total as usize) < len {
        return;
    }
    let max = total - (len as u32 - 1);
    for p in 1..=max {
        prefix.push(p);
        positive_compositions(total - p, len - 1, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(p: &[u32]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    fn pascal(n: usize, k: usize) -> BigInt {
        let mut row = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::one(); row.len() + 1];
            for j in 1..row.len() {
                next[j] = &row[j - 1] + &row[j];
            }
            row = next;
        }
        row[k].clone()
    }

    /// Every positive composition of `total` with `len` parts, by odometer.
    fn brute_compositions(total: u32, len: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        if len == 0 {
            return out;
        }
        let mut cur = vec![1u32; len];
        loop {
            if cur.iter().sum::<u32>() == total {
                out.push(cur.clone());
            }
            let mut idx = 0;
            loop {
                if idx == len {
                    return out;
                }
                cur[idx] += 1;
                if cur[idx] <= total {
                    break;
                }
                cur[idx] = 1;
                idx += 1;
            }
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(3, 2), BigInt::from(3));
        assert_eq!(binomial(5, -1), BigInt::from(0));
        assert_eq!(binomial(5, 6), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        let expected: BigInt = "118264581564861424".parse().unwrap();
        assert_eq!(pascal(60, 30), expected);
        assert_eq!(binomial(60, 30), expected);
    }

    #[test]
    fn binomial_matches_pascal() {
        for n in 0..40usize {
            for k in 0..=n {
                assert_eq!(binomial(n as u64, k as i64), pascal(n, k), "C({n},{k})");
            }
        }
    }

    #[test]
    fn hook_shift() {
        let h = Hook::new(2, 3).unwrap();
        assert_eq!(h.degree(), 5);
        assert_eq!(h.shift(2).unwrap(), Hook::new(4, 1).unwrap());
        assert_eq!(h.shift(3).unwrap().leg(), 0);
        assert!(h.shift(4).is_err());
        assert!(Hook::new(0, 2).is_err());
    }

    #[test]
    fn resolution_index_examples() {
        assert_eq!(resolution_compositions(2, 2, 0), vec![comp(&[2, 1, 1])]);
        assert_eq!(resolution_compositions(1, 2, 1), vec![comp(&[2, 1]), comp(&[1, 2])]);
        assert!(resolution_compositions(3, 4, 5).is_empty());
        assert_eq!(
            resolution_compositions(1, 3, 1),
            vec![comp(&[2, 1, 1]), comp(&[1, 2, 1]), comp(&[1, 1, 2])]
        );
    }

    #[test]
    fn resolution_index_matches_filtered_enumeration() {
        for a in 1..=4u32 {
            for b in 0..=6u32 {
                for i in 0..=b {
                    let mut brute: Vec<Composition> = brute_compositions(a + b, (b + 1 - i) as usize)
                        .into_iter()
                        .filter(|c| c[0] >= a && c[0] <= a + i)
                        .map(|c| comp(&c))
                        .collect();
                    brute.sort_by(weight_cmp);
                    assert_eq!(resolution_compositions(a, b, i), brute, "a={a} b={b} i={i}");
                }
            }
        }
    }

    #[test]
    fn counts_for_unit_arm() {
        for k in 1..=10u32 {
            assert_eq!(resolution_compositions(1, k, 0).len(), 1);
            assert_eq!(resolution_compositions(1, k, 1).len(), k as usize);
        }
    }

    #[test]
    fn merging_adjacent_parts_stays_in_range() {
        for a in 1..=7u32 {
            for b in 1..=7u32 {
                for i in 0..b {
                    let next = resolution_compositions(a, b, i + 1);
                    for c in resolution_compositions(a, b, i).iter().flat_map(|c| {
                        (1..c.len()).filter_map(move |s| c.merge(s))
                    }) {
                        let hit = next.contains(&c);
                        let violates = c.first().unwrap() > a + i + 1;
                        assert!(hit || violates, "{c} a={a} b={b} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn weight_order_examples() {
        assert!(weight_less(&comp(&[2, 1, 1]), &comp(&[1, 2, 1])));
        assert!(!weight_less(&comp(&[1, 2]), &comp(&[1, 2])));
        assert!(weight_less(&comp(&[3, 1]), &comp(&[1, 1, 2])));
    }

    #[test]
    fn merge_positions() {
        let c = comp(&[1, 2, 3]);
        assert_eq!(c.merge(1).unwrap(), comp(&[3, 3]));
        assert_eq!(c.merge(2).unwrap(), comp(&[1, 5]));
        assert!(c.merge(3).is_none());
        assert!(c.merge(0).is_none());
        assert_eq!(c.tail(), comp(&[2, 3]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn composition_of(total: u32) -> impl Strategy<Value = Composition> {
            proptest::collection::vec(1u32..=3, 1..=8).prop_map(move |mut v| {
                // Fold into a fixed total so the order is exercised on equal sums.
                let mut s: u32 = v.iter().sum();
                while s > total {
                    let last = v.len() - 1;
                    if v[last] > 1 {
                        v[last] -= 1;
                    } else {
                        v.pop();
                    }
                    s -= 1;
                }
                if s < total {
                    v.push(total - s);
                }
                Composition::new(v).unwrap()
            })
        }

        proptest! {
            #[test]
            fn weight_less_is_strict_total(x in composition_of(9), y in composition_of(9), z in composition_of(9)) {
                prop_assert!(!weight_less(&x, &x));
                prop_assert!(!(weight_less(&x, &y) && weight_less(&y, &x)));
                if x != y {
                    prop_assert!(weight_less(&x, &y) || weight_less(&y, &x));
                }
                if weight_less(&x, &y) && weight_less(&y, &z) {
                    prop_assert!(weight_less(&x, &z));
                }
            }
        }
    }
}
