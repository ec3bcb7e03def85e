//! Permutations of `{1..n}` in one-line form, with descent statistics,
//! Coxeter generators and conjugation by powers of the long cycle.
//!
//! Every public position and value is 1-indexed. Storage is 0-indexed.
//!
//! Composition is right-to-left: `a.compose(&b)` maps `i` to `a(b(i))`. With
//! this convention `pi.compose(&s_i)` swaps the entries at positions `i` and
//! `i+1`, and `s_i.compose(&pi)` swaps the values `i` and `i+1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentSet {
    pub positions: Vec<usize>,
    pub cyclic: bool,
}

impl DescentSet {
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.positions.binary_search(&i).is_ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseKind {
    /// `{i, i+1}` and `{pi(i), pi(i+1)}` are disjoint.
    A,
    /// They share exactly one element.
    B,
    /// They coincide, so conjugation by `s_i` fixes `pi`.
    C,
}

/// How conjugation by `s_i` acts on `pi` around `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AdjacentCase {
    pub kind: CaseKind,
    /// Whether the values `i` and `i+1` sit in adjacent positions. Computed for
    /// every case but only meaningful for [`CaseKind::A`].
    pub positions_consecutive: bool,
    pub d_size: usize,
}

impl Permutation {
    pub fn from_one_line(values: &[usize]) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut seen = vec![false; n];
        let mut images = Vec::with_capacity(n);
        for (pos, &v) in values.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::ValueOutOfRange { index: pos + 1, value: v, n });
            }
            if seen[v - 1] {
                return Err(Error::RepeatedValue { index: pos + 1, value: v });
            }
            seen[v - 1] = true;
            images.push(v - 1);
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles; elements not mentioned are
    /// fixed. Within `(a1, .., am)`, `a_j` maps to `a_{j+1}` and `a_m` to `a1`.
    pub fn from_cycles<C: AsRef<[usize]>>(n: usize, cycles: &[C]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        let mut index = 0;
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for (j, &a) in cycle.iter().enumerate() {
                index += 1;
                if a == 0 || a > n {
                    return Err(Error::ValueOutOfRange { index, value: a, n });
                }
                if seen[a - 1] {
                    return Err(Error::RepeatedValue { index, value: a });
                }
                seen[a - 1] = true;
                images[a - 1] = cycle[(j + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "degree must be positive");
        Permutation { images: (0..n).collect() }
    }

    /// The Coxeter generator `s_i = (i, i+1)`.
    pub fn coxeter(n: usize, i: usize) -> Result<Self> {
        check_generator_index(n, i)?;
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        Ok(p)
    }

    /// The long cycle `w = (1, 2, .., n)`, one-line `[2, 3, .., n, 1]`.
    pub fn long_cycle(n: usize) -> Self {
        assert!(n >= 1, "degree must be positive");
        Permutation { images: (0..n).map(|i| (i + 1) % n).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `pi(i)` for `1 <= i <= n`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// `pi^{-1}(v)` for `1 <= v <= n`.
    pub fn position_of(&self, v: usize) -> usize {
        self.images.iter().position(|&x| x == v - 1).expect("value in range") + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        self.check_degree(other)?;
        Ok(Permutation { images: other.images.iter().map(|&j| self.images[j]).collect() })
    }

    /// `g ∘ self ∘ g^{-1}`.
    pub fn conjugate(&self, g: &Permutation) -> Result<Self> {
        self.check_degree(g)?;
        let mut out = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            out[g.images[x]] = g.images[y];
        }
        Ok(Permutation { images: out })
    }

    /// `self ∘ s_i`: swaps the entries at positions `i` and `i+1`.
    pub fn swap_positions(&self, i: usize) -> Result<Self> {
        check_generator_index(self.degree(), i)?;
        let mut p = self.clone();
        p.images.swap(i - 1, i);
        Ok(p)
    }

    /// `s_i ∘ self`: swaps the values `i` and `i+1`.
    pub fn swap_values(&self, i: usize) -> Result<Self> {
        check_generator_index(self.degree(), i)?;
        let mut p = self.clone();
        p.swap_values_unchecked(i - 1);
        Ok(p)
    }

    /// `s_i ∘ self ∘ s_i`.
    pub fn conjugate_by_coxeter(&self, i: usize) -> Result<Self> {
        check_generator_index(self.degree(), i)?;
        let mut p = self.clone();
        p.images.swap(i - 1, i);
        p.swap_values_unchecked(i - 1);
        Ok(p)
    }

    fn swap_values_unchecked(&mut self, lo: usize) {
        for v in self.images.iter_mut() {
            if *v == lo {
                *v = lo + 1;
            } else if *v == lo + 1 {
                *v = lo;
            }
        }
    }

    /// `w^{-k} ∘ self ∘ w^k` for the long cycle `w`, with `k` reduced mod `n`.
    ///
    /// In one-line form this is `t -> pi(t + k) - k`, indices and values
    /// taken cyclically in `{1..n}`.
    pub fn conjugate_by_long_cycle_power(&self, k: i64) -> Self {
        let n = self.degree();
        let k = k.rem_euclid(n as i64) as usize;
        if k == 0 {
            return self.clone();
        }
        let images = (0..n).map(|t| (self.images[(t + k) % n] + n - k) % n).collect();
        Permutation { images }
    }

    /// The position-reversed permutation `[pi(n), .., pi(1)]`.
    pub fn reverse_positions(&self) -> Self {
        let mut images = self.images.clone();
        images.reverse();
        Permutation { images }
    }

    pub fn descents(&self) -> DescentSet {
        let positions = self.images.windows(2).enumerate().filter(|(_, w)| w[0] > w[1]).map(|(i, _)| i + 1).collect();
        DescentSet { positions, cyclic: false }
    }

    pub fn des(&self) -> usize {
        self.images.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// Descents with the wrap-around comparison `pi(n) > pi(1)` at position `n`.
    pub fn cyclic_descents(&self) -> DescentSet {
        let mut set = self.descents();
        set.cyclic = true;
        if self.wraps() {
            set.positions.push(self.degree());
        }
        set
    }

    pub fn cdes(&self) -> usize {
        self.des() + usize::from(self.wraps())
    }

    fn wraps(&self) -> bool {
        self.images[self.images.len() - 1] > self.images[0]
    }

    /// Disjoint cycles including fixed points, each starting at its minimum,
    /// ordered by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_sorted_unchecked(self.cycles().iter().map(Vec::len).collect())
    }

    pub fn classify_adjacent_case(&self, i: usize) -> Result<AdjacentCase> {
        check_generator_index(self.degree(), i)?;
        let (a, b) = (self.image(i), self.image(i + 1));
        let d_size = [a, b].iter().filter(|&&v| v == i || v == i + 1).count();
        let kind = match d_size {
            0 => CaseKind::A,
            1 => CaseKind::B,
            _ => CaseKind::C,
        };
        let (p, q) = (self.position_of(i), self.position_of(i + 1));
        Ok(AdjacentCase { kind, positions_consecutive: p.abs_diff(q) == 1, d_size })
    }

    /// Canonical cycle notation, fixed points included, e.g. `(1,3)(2)`.
    pub fn to_cycle_string(&self) -> String {
        let mut s = String::new();
        for cycle in self.cycles() {
            s.push('(');
            s.push_str(&join(&cycle));
            s.push(')');
        }
        s
    }

    /// Parses cycle notation such as `(3,6,9,11)(2,5,8,10)(1,4,7)`. Without an
    /// explicit degree the largest entry is used.
    pub fn parse_cycles(s: &str, degree: Option<usize>) -> Result<Self> {
        let s = s.trim();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = body.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let inner = &body[..close];
            if !inner.is_empty() {
                cycles.push(parse_list(inner)?);
            }
            rest = &body[close + 1..];
        }
        let n = match degree {
            Some(n) => n,
            None => cycles.iter().flatten().copied().max().ok_or(Error::Empty)?,
        };
        Self::from_cycles(n, &cycles)
    }

    fn check_degree(&self, other: &Permutation) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(())
    }

    pub(crate) fn from_zero_based_unchecked(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v)
        });
        Permutation { images }
    }
}

fn check_generator_index(n: usize, i: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, max: n.saturating_sub(1) });
    }
    Ok(())
}

pub(crate) fn join(values: &[usize]) -> String {
    values.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub(crate) fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<usize>().map_err(|_| Error::Parse(format!("not a positive integer: {t:?}")))
        })
        .collect()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", join(&self.one_line()))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `[2,6,1,5,3,4]`; the brackets are optional.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(s);
        if inner.trim().is_empty() {
            return Err(Error::Empty);
        }
        Self::from_one_line(&parse_list(inner)?)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_one_line(&values).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v).unwrap()
    }

    #[test]
    fn one_line_validation() {
        assert_eq!(p(&[2, 6, 1, 5, 3, 4]).degree(), 6);
        assert!(p(&[1]).is_identity());
        assert_eq!(Permutation::from_one_line(&[1, 1]), Err(Error::RepeatedValue { index: 2, value: 1 }));
        assert_eq!(Permutation::from_one_line(&[1, 3]), Err(Error::ValueOutOfRange { index: 2, value: 3, n: 2 }));
        assert_eq!(Permutation::from_one_line(&[]), Err(Error::Empty));
    }

    #[test]
    fn cycles_to_one_line() {
        let tau_inv = Permutation::from_cycles(11, &[vec![3, 6, 9, 11], vec![2, 5, 8, 10], vec![1, 4, 7]]).unwrap();
        assert_eq!(tau_inv.one_line(), vec![4, 5, 6, 7, 8, 9, 1, 10, 11, 2, 3]);
        let empty: [Vec<usize>; 0] = [];
        assert!(Permutation::from_cycles(4, &empty).unwrap().is_identity());
        assert_eq!(Permutation::from_cycles(3, &[vec![2, 3]]).unwrap().one_line(), vec![1, 3, 2]);
        assert!(matches!(
            Permutation::from_cycles(3, &[vec![1, 2], vec![2, 3]]),
            Err(Error::RepeatedValue { value: 2, .. })
        ));
        assert!(matches!(Permutation::from_cycles(3, &[vec![1, 4]]), Err(Error::ValueOutOfRange { value: 4, .. })));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            p(&[4, 5, 6, 7, 8, 9, 1, 10, 11, 2, 3]).inverse().one_line(),
            vec![7, 10, 11, 1, 2, 3, 4, 5, 6, 8, 9]
        );
        assert!(Permutation::identity(5).inverse().is_identity());
        assert_eq!(p(&[2, 3, 1]).inverse().one_line(), vec![3, 1, 2]);
    }

    #[test]
    fn composition_convention() {
        let pi = p(&[2, 6, 1, 5, 3, 4]);
        let s2 = Permutation::coxeter(6, 2).unwrap();
        assert_eq!(pi.compose(&s2).unwrap().one_line(), vec![2, 1, 6, 5, 3, 4]);
        assert_eq!(pi.compose(&Permutation::identity(6)).unwrap(), pi);
        let s1 = Permutation::coxeter(3, 1).unwrap();
        let s2 = Permutation::coxeter(3, 2).unwrap();
        assert_eq!(s1.compose(&s2).unwrap().one_line(), vec![2, 3, 1]);
        assert_eq!(pi.compose(&Permutation::identity(3)), Err(Error::DegreeMismatch { left: 6, right: 3 }));
    }

    #[test]
    fn conjugation_examples() {
        let s2 = Permutation::coxeter(6, 2).unwrap();
        for (from, to) in [
            ([2, 6, 1, 5, 3, 4], [3, 1, 6, 5, 2, 4]),
            ([4, 5, 2, 6, 3, 1], [4, 3, 5, 6, 2, 1]),
            ([4, 3, 2, 6, 1, 5], [4, 3, 2, 6, 1, 5]),
        ] {
            assert_eq!(p(&from).conjugate(&s2).unwrap().one_line(), to.to_vec());
            assert_eq!(p(&from).conjugate_by_coxeter(2).unwrap().one_line(), to.to_vec());
        }
    }

    #[test]
    fn coxeter_and_long_cycle() {
        assert_eq!(Permutation::coxeter(4, 2).unwrap().one_line(), vec![1, 3, 2, 4]);
        assert_eq!(Permutation::coxeter(2, 1).unwrap().one_line(), vec![2, 1]);
        assert_eq!(Permutation::coxeter(4, 4), Err(Error::IndexOutOfRange { index: 4, max: 3 }));
        assert_eq!(Permutation::coxeter(4, 0), Err(Error::IndexOutOfRange { index: 0, max: 3 }));
        assert_eq!(Permutation::long_cycle(4).one_line(), vec![2, 3, 4, 1]);
        assert_eq!(Permutation::long_cycle(1).one_line(), vec![1]);
        assert_eq!(Permutation::long_cycle(5).one_line(), vec![2, 3, 4, 5, 1]);
    }

    #[test]
    fn long_cycle_conjugation_examples() {
        let pi = p(&[3, 1, 4, 2]);
        assert_eq!(pi.conjugate_by_long_cycle_power(1).one_line(), vec![4, 3, 1, 2]);
        assert_eq!(pi.conjugate_by_long_cycle_power(2).one_line(), vec![2, 4, 1, 3]);
        assert_eq!(pi.conjugate_by_long_cycle_power(3).one_line(), vec![3, 4, 2, 1]);
        assert_eq!(pi.conjugate_by_long_cycle_power(4), pi);
        assert_eq!(pi.conjugate_by_long_cycle_power(0), pi);
        assert_eq!(pi.conjugate_by_long_cycle_power(-1), pi.conjugate_by_long_cycle_power(3));
        assert_eq!(p(&[2, 4, 6, 5, 3, 1]).conjugate_by_long_cycle_power(3).one_line(), vec![2, 6, 4, 5, 1, 3]);
    }

    #[test]
    fn long_cycle_conjugation_matches_group_product() {
        let w = Permutation::long_cycle(6);
        let pi = p(&[2, 4, 6, 5, 3, 1]);
        let mut wk = Permutation::identity(6);
        for k in 0..8 {
            let direct = wk.inverse().compose(&pi).unwrap().compose(&wk).unwrap();
            assert_eq!(pi.conjugate_by_long_cycle_power(k), direct, "k={k}");
            wk = wk.compose(&w).unwrap();
        }
    }

    #[test]
    fn descent_examples() {
        let tau = p(&[7, 10, 11, 1, 2, 3, 4, 5, 6, 8, 9]);
        assert_eq!(tau.descents().positions, vec![3]);
        assert_eq!(tau.des(), 1);
        assert_eq!(Permutation::identity(7).des(), 0);
        assert_eq!(p(&[2, 1, 4, 3]).des(), 2);
    }

    #[test]
    fn cyclic_descent_examples() {
        assert_eq!(p(&[3, 1, 4, 2]).cdes(), 2);
        assert_eq!(p(&[2, 6, 4, 5, 1, 3]).cdes(), 3);
        let id = Permutation::identity(5).cyclic_descents();
        assert_eq!(id.positions, vec![5]);
        assert!(id.cyclic);
        let one = Permutation::identity(1);
        assert_eq!((one.des(), one.cdes()), (0, 0));
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(p(&[7, 10, 11, 1, 2, 3, 4, 5, 6, 8, 9]).cycle_type().parts(), &[4, 4, 3]);
        assert_eq!(Permutation::identity(5).cycle_type().parts(), &[1, 1, 1, 1, 1]);
        assert_eq!(p(&[2, 1, 4, 3]).cycle_type().parts(), &[2, 2]);
    }

    #[test]
    fn adjacent_case_examples() {
        let a = p(&[2, 6, 1, 5, 3, 4]).classify_adjacent_case(2).unwrap();
        assert_eq!((a.kind, a.positions_consecutive, a.d_size), (CaseKind::A, false, 0));
        let b = p(&[4, 5, 2, 6, 3, 1]).classify_adjacent_case(2).unwrap();
        assert_eq!((b.kind, b.d_size), (CaseKind::B, 1));
        let c = p(&[4, 3, 2, 6, 1, 5]).classify_adjacent_case(2).unwrap();
        assert_eq!((c.kind, c.d_size), (CaseKind::C, 2));
        assert!(p(&[1, 2]).classify_adjacent_case(2).is_err());
    }

    #[test]
    fn text_forms() {
        let pi: Permutation = "[2,6,1,5,3,4]".parse().unwrap();
        assert_eq!(pi.to_string(), "[2,6,1,5,3,4]");
        assert_eq!("3,1,2".parse::<Permutation>().unwrap().one_line(), vec![3, 1, 2]);
        assert!("[]".parse::<Permutation>().is_err());
        assert!("[1,x]".parse::<Permutation>().is_err());

        let tau_inv = Permutation::parse_cycles("(3,6,9,11)(2,5,8,10)(1,4,7)", None).unwrap();
        assert_eq!(tau_inv.one_line(), vec![4, 5, 6, 7, 8, 9, 1, 10, 11, 2, 3]);
        assert_eq!(tau_inv.to_cycle_string(), "(1,4,7)(2,5,8,10)(3,6,9,11)");
        let with_fixed = Permutation::parse_cycles("(2,3)", Some(4)).unwrap();
        assert_eq!(with_fixed.to_cycle_string(), "(1)(2,3)(4)");
        assert_eq!(Permutation::parse_cycles("(1)(2,3)(4)", None).unwrap(), with_fixed);
        assert!(Permutation::parse_cycles("(1,2", None).is_err());
        assert!(Permutation::parse_cycles("1,2)", None).is_err());
    }

    #[test]
    fn serde_one_line() {
        let pi = p(&[3, 1, 2]);
        assert_eq!(serde_json::to_string(&pi).unwrap(), "[3,1,2]");
        let back: Permutation = serde_json::from_str("[3,1,2]").unwrap();
        assert_eq!(back, pi);
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
    }
}
