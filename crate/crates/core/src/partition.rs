//! Cycle-type partitions and the column-filled Young diagram that yields a
//! one-descent representative of every non-trivial conjugacy class.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{join, parse_list, Permutation};

/// A partition of `n`, parts weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Accepts parts in any order and sorts them.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub(crate) fn from_sorted_unchecked(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The cycle type of the identity in `S_n`.
    pub fn ones(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_identity_type(&self) -> bool {
        self.parts[0] == 1
    }

    /// `n! / (prod a_i * prod m_j!)` where `m_j` are part multiplicities.
    pub fn class_size(&self) -> BigUint {
        let mut num = factorial(self.n());
        for &a in &self.parts {
            num /= BigUint::from(a);
        }
        let mut run = 1;
        for w in self.parts.windows(2) {
            if w[0] == w[1] {
                run += 1;
            } else {
                num /= factorial(run);
                run = 1;
            }
        }
        num / factorial(run)
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.parts))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        Partition::new(parse_list(s)?)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in reverse-lexicographic order, starting at `(n)`.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    assert!(n >= 1, "n must be positive");
    let mut out = Vec::new();
    let mut parts = vec![n];
    loop {
        out.push(Partition { parts: parts.clone() });
        let Some(j) = parts.iter().rposition(|&p| p > 1) else {
            break;
        };
        let v = parts[j] - 1;
        let mut rem: usize = parts[j + 1..].iter().sum::<usize>() + 1;
        parts.truncate(j);
        parts.push(v);
        while rem > 0 {
            let take = rem.min(v);
            parts.push(take);
            rem -= take;
        }
    }
    out
}

/// A Young diagram filled column by column, each column bottom to top.
/// `rows[0]` is the top (longest) row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilledDiagram {
    pub rows: Vec<Vec<usize>>,
}

impl FilledDiagram {
    /// Entries read column by column, bottom to top.
    pub fn column_reading(&self) -> Vec<usize> {
        let width = self.rows.first().map_or(0, Vec::len);
        let mut out = Vec::new();
        for c in 0..width {
            for row in self.rows.iter().rev() {
                if let Some(&v) = row.get(c) {
                    out.push(v);
                }
            }
        }
        out
    }
}

pub fn young_column_fill(lambda: &Partition) -> FilledDiagram {
    let parts = lambda.parts();
    let mut rows: Vec<Vec<usize>> = parts.iter().map(|&a| Vec::with_capacity(a)).collect();
    let mut next = 1;
    for c in 0..parts[0] {
        let height = parts.iter().take_while(|&&a| a > c).count();
        for row in rows[..height].iter_mut().rev() {
            row.push(next);
            next += 1;
        }
    }
    FilledDiagram { rows }
}

/// The permutation `tau` whose inverse is the product of the filled diagram's
/// rows read as cycles. It has cycle type `lambda` and exactly one descent,
/// at position `lambda.num_parts()`, unless `lambda` is all ones (identity).
pub fn min_des_representative(lambda: &Partition) -> Permutation {
    let n = lambda.n();
    let diagram = young_column_fill(lambda);
    // Rows are disjoint, so the product order is immaterial; compose last row first.
    let mut tau_inv = Permutation::identity(n);
    for row in diagram.rows.iter().rev() {
        let cycle = Permutation::from_cycles(n, &[row]).expect("diagram entries are 1..n");
        tau_inv = cycle.compose(&tau_inv).expect("equal degree");
    }
    tau_inv.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    /// Brute-force oracle: weakly decreasing sequences summing to n.
    fn brute_partitions(n: usize) -> Vec<Vec<usize>> {
        fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rem == 0 {
                out.push(cur.clone());
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                go(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions_of(1), vec![part(&[1])]);
        let four: Vec<Vec<usize>> = partitions_of(4).into_iter().map(|p| p.parts).collect();
        assert_eq!(four, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(partitions_of(5).len(), 7);
        assert_eq!(partitions_of(8).len(), 22);
        for n in 1..=14 {
            let got: Vec<Vec<usize>> = partitions_of(n).into_iter().map(|p| p.parts).collect();
            assert_eq!(got, brute_partitions(n), "n={n}");
        }
    }

    #[test]
    fn parse_and_print() {
        let p: Partition = "3,4,4".parse().unwrap();
        assert_eq!(p.to_string(), "4,4,3");
        assert_eq!(p.n(), 11);
        assert!("".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("2,a".parse::<Partition>().is_err());
    }

    #[test]
    fn class_sizes() {
        assert_eq!(part(&[2, 1]).class_size(), BigUint::from(3u32));
        assert_eq!(part(&[3]).class_size(), BigUint::from(2u32));
        assert_eq!(part(&[1, 1, 1]).class_size(), BigUint::from(1u32));
        assert_eq!(part(&[2, 2]).class_size(), BigUint::from(3u32));
        assert_eq!(part(&[4, 4, 3]).class_size(), BigUint::from(415_800u32));
    }

    #[test]
    fn column_fill_examples() {
        let d = young_column_fill(&part(&[4, 4, 3]));
        assert_eq!(d.rows, vec![vec![3, 6, 9, 11], vec![2, 5, 8, 10], vec![1, 4, 7]]);
        assert_eq!(young_column_fill(&part(&[1])).rows, vec![vec![1]]);
        assert_eq!(young_column_fill(&part(&[2, 1])).rows, vec![vec![2, 3], vec![1]]);
    }

    #[test]
    fn column_reading_round_trip() {
        for n in 1..=10 {
            for lambda in partitions_of(n) {
                let d = young_column_fill(&lambda);
                assert_eq!(d.column_reading(), (1..=n).collect::<Vec<_>>(), "{lambda}");
                let lens: Vec<usize> = d.rows.iter().map(Vec::len).collect();
                assert_eq!(lens, lambda.parts());
            }
        }
    }

    #[test]
    fn representative_examples() {
        let tau = min_des_representative(&part(&[4, 4, 3]));
        assert_eq!(tau.one_line(), vec![7, 10, 11, 1, 2, 3, 4, 5, 6, 8, 9]);
        assert_eq!(tau.des(), 1);
        let id = min_des_representative(&part(&[1, 1, 1]));
        assert_eq!((id.one_line(), id.des()), (vec![1, 2, 3], 0));
        let t = min_des_representative(&part(&[2, 1]));
        assert_eq!((t.one_line(), t.des()), (vec![1, 3, 2], 1));
    }

    #[test]
    fn representative_construction_properties() {
        for n in 2..=12 {
            for lambda in partitions_of(n) {
                let tau = min_des_representative(&lambda);
                assert_eq!(tau.cycle_type(), lambda);
                if lambda.is_identity_type() {
                    assert!(tau.is_identity());
                    continue;
                }
                let k = lambda.num_parts();
                assert_eq!(tau.descents().positions, vec![k], "{lambda}");
                assert_eq!(tau.image(k), n);
            }
            let full = min_des_representative(&part(&[n]));
            assert_eq!(full, Permutation::long_cycle(n).inverse());
            let mut expected = vec![n];
            expected.extend(1..n);
            assert_eq!(full.one_line(), expected);
        }
    }
}
