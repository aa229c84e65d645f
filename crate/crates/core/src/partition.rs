use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer partition, parts kept non-increasing and positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Sorts the parts; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Spec("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    /// Partition whose conjugate is `conj` (which need not be sorted).
    pub fn from_conjugate(conj: &[usize]) -> Self {
        let mut c = conj.to_vec();
        c.retain(|&v| v > 0);
        c.sort_unstable_by(|a, b| b.cmp(a));
        Partition(c).conjugate()
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Self {
        let largest = self.0.first().copied().unwrap_or(0);
        Partition((1..=largest).map(|k| self.0.iter().filter(|&&p| p >= k).count()).collect())
    }

    /// (part, multiplicity) pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.0.iter().filter(|&&p| p == part).count()
    }

    /// Appends `k` parts equal to 1.
    pub fn pad_ones(&self, k: usize) -> Self {
        let mut p = self.0.clone();
        p.extend(std::iter::repeat(1).take(k));
        Partition(p)
    }

    /// Dominance order: every prefix sum of `other` is at most the matching
    /// prefix sum of `self`. Both must have the same total.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.total() != other.total() {
            return false;
        }
        let n = self.0.len().max(other.0.len());
        let (mut a, mut b) = (0, 0);
        for i in 0..n {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// All parts even, each with even multiplicity.
    pub fn is_very_even(&self) -> bool {
        !self.0.is_empty() && self.multiplicities().iter().all(|&(p, m)| p % 2 == 0 && m % 2 == 0)
    }

    /// Every partition of n, in reverse lexicographic order (so [n] first).
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fill(n, n, &mut cur, &mut out);
        out
    }

    /// Label like `[3,2^2,1^4]`.
    pub fn label(&self) -> String {
        let items: Vec<String> = self
            .multiplicities()
            .into_iter()
            .map(|(p, m)| if m == 1 { p.to_string() } else { format!("{p}^{m}") })
            .collect();
        format!("[{}]", items.join(","))
    }

    /// Parses `[3,2^2,1^4]` or `3,2,2,1,1,1,1`.
    pub fn parse(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let mut parts = Vec::new();
        for item in body.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let bad = || Error::Spec(format!("bad partition item {item:?}"));
            let (p, m): (usize, usize) = match item.split_once('^') {
                Some((p, m)) => (p.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?),
                None => (item.parse().map_err(|_| bad())?, 1usize),
            };
            parts.extend(std::iter::repeat(p).take(m));
        }
        Partition::new(parts)
    }
}

fn fill(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in (1..=rest.min(max)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.0
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on parts. This is a linear extension of dominance.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(&self.label())
    }
}
