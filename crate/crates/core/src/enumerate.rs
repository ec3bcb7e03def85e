//! Exhaustive generators: all of `S_n`, and the members of one conjugacy
//! class built directly from the cycle type.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::partition::Partition;
use crate::perm::Permutation;

/// Every permutation of degree `n`, lexicographic in one-line form.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    assert!(n >= 1, "degree must be positive");
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::from_zero_based_unchecked(cur.clone()));
        if !next_permutation(&mut cur) {
            return out;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// A partially built class member: cycles placed so far and what is left.
#[derive(Clone)]
struct Partial {
    images: Vec<usize>,
    remaining: Vec<usize>,
    lengths: Vec<usize>,
}

impl Partial {
    /// Each way to close the cycle through the smallest unplaced element.
    /// A cycle is identified by (its length, the ordered tail after its
    /// minimum), so every class member is produced exactly once.
    fn children(&self) -> Vec<Partial> {
        let mut out = Vec::new();
        let head = self.remaining[0];
        let pool = &self.remaining[1..];
        let mut last = None;
        for (li, &len) in self.lengths.iter().enumerate() {
            if last == Some(len) {
                continue;
            }
            last = Some(len);
            let mut lengths = self.lengths.clone();
            lengths.remove(li);
            let mut tail = Vec::with_capacity(len - 1);
            let mut used = vec![false; pool.len()];
            arrangements(pool, len - 1, &mut used, &mut tail, &mut |tail| {
                let mut images = self.images.clone();
                let mut prev = head;
                for &x in tail {
                    images[prev] = x;
                    prev = x;
                }
                images[prev] = head;
                let remaining = pool.iter().copied().filter(|x| !tail.contains(x)).collect();
                out.push(Partial { images, remaining, lengths: lengths.clone() });
            });
        }
        out
    }

    fn expand(self, out: &mut Vec<Permutation>) {
        if self.remaining.is_empty() {
            out.push(Permutation::from_zero_based_unchecked(self.images));
            return;
        }
        for child in self.children() {
            child.expand(out);
        }
    }
}

fn arrangements(pool: &[usize], k: usize, used: &mut [bool], cur: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        emit(cur);
        return;
    }
    for j in 0..pool.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        cur.push(pool[j]);
        arrangements(pool, k, used, cur, emit);
        cur.pop();
        used[j] = false;
    }
}

/// Members of the conjugacy class with cycle type `lambda`, in a fixed order.
/// Work is split on the arrangement of the cycle through `1`.
pub fn class_members(lambda: &Partition) -> Vec<Permutation> {
    let n = lambda.n();
    let root = Partial { images: (0..n).collect(), remaining: (0..n).collect(), lengths: lambda.parts().to_vec() };
    root.children()
        .into_par_iter()
        .map(|child| {
            let mut out = Vec::new();
            child.expand(&mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// A uniformly random member of the class with cycle type `lambda`.
pub fn random_member<R: Rng + ?Sized>(lambda: &Partition, rng: &mut R) -> Permutation {
    let n = lambda.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut images: Vec<usize> = (0..n).collect();
    let mut at = 0;
    for &len in lambda.parts() {
        let cycle = &order[at..at + len];
        for j in 0..len {
            images[cycle[j]] = cycle[(j + 1) % len];
        }
        at += len;
    }
    Permutation::from_zero_based_unchecked(images)
}
