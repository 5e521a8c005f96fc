//! Integer partitions.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts and drops zero parts.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn row(n: usize) -> Self {
        Self::new(vec![n])
    }

    pub fn column(n: usize) -> Self {
        Self(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i`, zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let first = self.part(0);
        Self((1..=first).map(|k| self.0.iter().filter(|&&p| p >= k).count()).collect())
    }

    /// Multiplicity of each part size `1..=max part`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0)];
        for &p in &self.0 {
            m[p - 1] += 1;
        }
        m
    }

    /// Young diagram containment.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Every partition of `n`, in reverse lexicographic order starting with `(n)`.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=n.min(max)).rev() {
                cur.push(k);
                rec(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Compact text `3.1.1`; the empty partition is `-`.
    pub fn to_compact(&self) -> String {
        if self.0.is_empty() {
            return "-".into();
        }
        self.0.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
    }

    pub fn parse_compact(s: &str) -> Option<Self> {
        if s == "-" {
            return Some(Self::empty());
        }
        let parts: Option<Vec<usize>> = s.split('.').map(|p| p.parse().ok().filter(|&x| x > 0)).collect();
        let parts = parts?;
        parts.windows(2).all(|w| w[0] >= w[1]).then_some(Self(parts))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn conjugate_is_involutive() {
        for n in 0..=8 {
            for p in Partition::all(n) {
                assert_eq!(p.conjugate().conjugate(), p);
                assert_eq!(p.conjugate().size(), n);
            }
        }
        assert_eq!(Partition::new(vec![3, 1]).conjugate(), Partition::new(vec![2, 1, 1]));
    }

    #[test]
    fn normalizes_input() {
        assert_eq!(Partition::new(vec![1, 0, 3, 2]).parts(), &[3, 2, 1]);
        assert_eq!(Partition::parse_compact("3.1").unwrap(), Partition::new(vec![3, 1]));
        assert!(Partition::parse_compact("1.3").is_none());
    }
}
