//! Realizing every attainable descent value inside a conjugacy class.
//!
//! Starting from the one-descent representative, a conjugator onto a
//! maximal-descent member is written as a word in the Coxeter generators and
//! walked one conjugation at a time. Each step moves `des` by at most two.
//! When a step skips the target value, [`close_gap`] produces a member of the
//! class with the skipped value by conjugating with a power of the long cycle
//! (or with `s_t` when the lower endpoint is itself a power `w^t`).

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::enumerate::{class_members, random_member};
use crate::error::{Error, Result};
use crate::partition::{min_des_representative, Partition};
use crate::perm::Permutation;

/// How a trace entry was obtained from its predecessor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Start,
    /// Conjugation by `s_i`.
    Coxeter(usize),
    /// `w^{-k} σ0 w^k` when `σ0(n) > σ0(1)`.
    GapCloseCaseA(usize),
    /// `w^{-k} σ2 w^k` with `σ2 = s_i σ0 s_i` when `σ0(n) < σ0(1)`.
    GapCloseCaseB(usize),
    /// `s_t σ0 s_t` when `σ0 = w^t`.
    GapCloseWt(usize),
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Start => f.write_str("start"),
            Step::Coxeter(i) => write!(f, "coxeter({i})"),
            Step::GapCloseCaseA(k) => write!(f, "gap_close_case_a({k})"),
            Step::GapCloseCaseB(k) => write!(f, "gap_close_case_b({k})"),
            Step::GapCloseWt(t) => write!(f, "gap_close_wt({t})"),
        }
    }
}

impl FromStr for Step {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "start" {
            return Ok(Step::Start);
        }
        let bad = || Error::Parse(format!("unknown step descriptor {s:?}"));
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let arg: usize = rest.strip_suffix(')').and_then(|a| a.parse().ok()).ok_or_else(bad)?;
        match name {
            "coxeter" => Ok(Step::Coxeter(arg)),
            "gap_close_case_a" => Ok(Step::GapCloseCaseA(arg)),
            "gap_close_case_b" => Ok(Step::GapCloseCaseB(arg)),
            "gap_close_wt" => Ok(Step::GapCloseWt(arg)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Step {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Step {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub perm: Permutation,
    pub des: usize,
    pub step: Step,
}

impl TraceStep {
    fn new(perm: Permutation, step: Step) -> Self {
        TraceStep { des: perm.des(), perm, step }
    }
}

/// Serializes as a bare JSON array of `{perm, des, step}` objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RealizationTrace {
    pub steps: Vec<TraceStep>,
}

impl RealizationTrace {
    fn start(perm: Permutation) -> Self {
        RealizationTrace { steps: vec![TraceStep::new(perm, Step::Start)] }
    }

    fn push(&mut self, perm: Permutation, step: Step) {
        self.steps.push(TraceStep::new(perm, step));
    }

    pub fn last(&self) -> &TraceStep {
        self.steps.last().expect("trace is never empty")
    }

    pub fn des_values(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.des).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchBudget {
    /// Classes of degree up to this are enumerated exactly.
    pub exhaustive_limit: usize,
    pub restarts: usize,
    /// Steps per hill-climbing walk; `None` means `n^3`.
    pub walk_cap: Option<usize>,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { exhaustive_limit: 9, restarts: 32, walk_cap: None, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxSearchResult {
    pub witness: Permutation,
    pub des_value: usize,
    /// True when found by enumerating the whole class; otherwise `des_value`
    /// is only a lower bound for the class maximum.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Realization {
    pub permutation: Permutation,
    pub trace: RealizationTrace,
}

/// A canonical `alpha` with `sigma = alpha ∘ pi ∘ alpha^{-1}`.
///
/// Cycles of both permutations are sorted by (length descending, minimum
/// ascending), each rotated to start at its minimum, and matched pointwise.
pub fn conjugator(pi: &Permutation, sigma: &Permutation) -> Result<Permutation> {
    if pi.degree() != sigma.degree() {
        return Err(Error::DegreeMismatch { left: pi.degree(), right: sigma.degree() });
    }
    let (tp, ts) = (pi.cycle_type(), sigma.cycle_type());
    if tp != ts {
        return Err(Error::CycleTypeMismatch { left: tp, right: ts });
    }
    let canonical = |p: &Permutation| {
        let mut cycles = p.cycles();
        cycles.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        cycles
    };
    let mut images = vec![0; pi.degree()];
    for (a, b) in canonical(pi).iter().zip(canonical(sigma).iter()) {
        for (&x, &y) in a.iter().zip(b.iter()) {
            images[x - 1] = y;
        }
    }
    Permutation::from_one_line(&images)
}

/// A word `(i_1, .., i_l)` with `alpha = s_{i_l} ∘ .. ∘ s_{i_1}`, read off an
/// insertion sort of the one-line form. Its length is the inversion count.
pub fn coxeter_word(alpha: &Permutation) -> Vec<usize> {
    let mut a = alpha.one_line();
    let mut word = Vec::new();
    for p in 1..a.len() {
        let mut j = p;
        while j > 0 && a[j - 1] > a[j] {
            a.swap(j - 1, j);
            word.push(j);
            j -= 1;
        }
    }
    word
}

/// `s_{i_l} ∘ .. ∘ s_{i_1}`.
pub fn compose_word(n: usize, word: &[usize]) -> Result<Permutation> {
    word.iter().try_fold(Permutation::identity(n), |acc, &i| acc.swap_values(i))
}

/// The sequence `pi_0, pi_1, ..` with `pi_{j+1} = s_{i_{j+1}} pi_j s_{i_{j+1}}`.
pub fn conjugation_path(start: &Permutation, word: &[usize]) -> Result<RealizationTrace> {
    let mut trace = RealizationTrace::start(start.clone());
    let mut cur = start.clone();
    for &i in word {
        cur = cur.conjugate_by_coxeter(i)?;
        trace.push(cur.clone(), Step::Coxeter(i));
    }
    Ok(trace)
}

/// The exponent `t` with `sigma = w^t`, `1 <= t < n`, if any.
fn long_cycle_exponent(sigma: &Permutation) -> Option<usize> {
    let n = sigma.degree();
    let t = sigma.image(1) - 1;
    if t == 0 {
        return None;
    }
    (1..=n).all(|j| sigma.image(j) == (j - 1 + t) % n + 1).then_some(t)
}

/// Given `sigma0` whose conjugate by `s_i` has two more descents, returns a
/// member of the same class with exactly one more descent, together with the
/// step that produced it.
pub fn close_gap_step(sigma0: &Permutation, i: usize) -> Result<(Permutation, Step)> {
    let sigma2 = sigma0.conjugate_by_coxeter(i)?;
    let base = sigma0.des();
    let jump = sigma2.des() as i64 - base as i64;
    if jump != 2 {
        return Err(Error::NoGap { jump });
    }
    let n = sigma0.degree();
    let (out, step) = if let Some(t) = long_cycle_exponent(sigma0) {
        (sigma0.conjugate_by_coxeter(t)?, Step::GapCloseWt(t))
    } else if sigma0.image(n) > sigma0.image(1) {
        let k = sigma0.position_of(i);
        (sigma0.conjugate_by_long_cycle_power(k as i64), Step::GapCloseCaseA(k))
    } else {
        let k = sigma2.position_of(i + 1);
        (sigma2.conjugate_by_long_cycle_power(k as i64), Step::GapCloseCaseB(k))
    };
    if out.des() != base + 1 || out.cycle_type() != sigma0.cycle_type() {
        return Err(Error::Internal(format!(
            "gap closing {sigma0} at {i} via {step} gave {out} with des {}",
            out.des()
        )));
    }
    Ok((out, step))
}

pub fn close_gap(sigma0: &Permutation, i: usize) -> Result<Permutation> {
    close_gap_step(sigma0, i).map(|(p, _)| p)
}

/// A member of the class of `lambda` with the largest descent count found.
pub fn max_des_element(lambda: &Partition, budget: &SearchBudget) -> MaxSearchResult {
    let n = lambda.n();
    if n <= budget.exhaustive_limit {
        let mut best: Option<(Permutation, usize)> = None;
        for m in class_members(lambda) {
            let d = m.des();
            if best.as_ref().is_none_or(|(_, bd)| d > *bd) {
                best = Some((m, d));
            }
        }
        let (witness, des_value) = best.expect("classes are non-empty");
        return MaxSearchResult { witness, des_value, exact: true };
    }
    let walk_cap = budget.walk_cap.unwrap_or(n * n * n);
    let walks: Vec<(Permutation, usize)> = (0..budget.restarts.max(1) as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
            rng.set_stream(r);
            hill_climb(random_member(lambda, &mut rng), walk_cap)
        })
        .collect();
    // Highest des wins; ties go to the earliest restart.
    let (witness, des_value) =
        walks.into_iter().reduce(|best, cand| if cand.1 > best.1 { cand } else { best }).expect("at least one restart");
    MaxSearchResult { witness, des_value, exact: false }
}

/// Steepest ascent over conjugation by each `s_i` and by `w^{±1}`.
fn hill_climb(start: Permutation, walk_cap: usize) -> (Permutation, usize) {
    let n = start.degree();
    let mut cur_des = start.des();
    let mut cur = start;
    for _ in 0..walk_cap {
        let mut best: Option<(Permutation, usize)> = None;
        let neighbours = (1..n)
            .map(|i| cur.conjugate_by_coxeter(i).expect("index in range"))
            .chain([cur.conjugate_by_long_cycle_power(1), cur.conjugate_by_long_cycle_power(-1)]);
        for nb in neighbours {
            let d = nb.des();
            if best.as_ref().is_none_or(|(_, bd)| d > *bd) {
                best = Some((nb, d));
            }
        }
        match best {
            Some((nb, d)) if d > cur_des => {
                cur = nb;
                cur_des = d;
            }
            _ => break,
        }
    }
    (cur, cur_des)
}

/// A member of the class of `lambda` with exactly `target` descents, and the
/// trace that produced it.
pub fn realize(lambda: &Partition, target: usize, budget: &SearchBudget) -> Result<Realization> {
    let n = lambda.n();
    if target == 0 {
        if !lambda.is_identity_type() {
            return Err(Error::IdentityOnly);
        }
        let id = Permutation::identity(n);
        return Ok(Realization { trace: RealizationTrace::start(id.clone()), permutation: id });
    }
    if lambda.is_identity_type() {
        return Err(Error::NotAttained { max: 0 });
    }
    let min_rep = min_des_representative(lambda);
    if target == 1 {
        return Ok(Realization { trace: RealizationTrace::start(min_rep.clone()), permutation: min_rep });
    }
    let max = max_des_element(lambda, budget);
    if target > max.des_value {
        return Err(if max.exact {
            Error::NotAttained { max: max.des_value }
        } else {
            Error::NotReached { best: max.des_value }
        });
    }
    let alpha = conjugator(&min_rep, &max.witness)?;
    let trace = walk_to_target(&min_rep, &coxeter_word(&alpha), target)?;
    let permutation = trace.last().perm.clone();
    if permutation.des() != target || permutation.cycle_type() != *lambda {
        return Err(Error::Internal(format!("realized {permutation} misses target {target}")));
    }
    Ok(Realization { permutation, trace })
}

/// Walks the conjugation path and stops at the first entry with `target`
/// descents, or closes the first two-step jump that skips over it.
fn walk_to_target(start: &Permutation, word: &[usize], target: usize) -> Result<RealizationTrace> {
    let mut trace = RealizationTrace::start(start.clone());
    if start.des() == target {
        return Ok(trace);
    }
    let mut cur = start.clone();
    for &i in word {
        let next = cur.conjugate_by_coxeter(i)?;
        let (lo, hi) = (cur.des().min(next.des()), cur.des().max(next.des()));
        if next.des() == target {
            trace.push(next, Step::Coxeter(i));
            return Ok(trace);
        }
        if hi == lo + 2 && target == lo + 1 {
            let lower = if next.des() < cur.des() {
                trace.push(next.clone(), Step::Coxeter(i));
                next
            } else {
                cur
            };
            let (closed, step) = close_gap_step(&lower, i)?;
            trace.push(closed, step);
            return Ok(trace);
        }
        trace.push(next.clone(), Step::Coxeter(i));
        cur = next;
    }
    Err(Error::Internal(format!("conjugation path never reached des {target}")))
}
