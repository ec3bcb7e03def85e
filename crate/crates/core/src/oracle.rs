//! Exhaustive verification at desk scale.
//!
//! Class distributions are built from direct class enumeration. The checks in
//! [`run_checks`] sweep either every class of `S_n` or every pair
//! `(pi, i)` / `(pi, k)` over the whole group, and report the first
//! counterexample found in enumeration order.

pub mod cache;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::{all_permutations, class_members};
use crate::error::{Error, Result};
use crate::partition::{min_des_representative, partitions_of, Partition};
use crate::perm::{CaseKind, Permutation};
use crate::realization::{close_gap_step, realize, SearchBudget, Step};
use crate::stats::{eulerian_row, lyndon_count};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest degree for per-class enumeration.
    pub class_limit: usize,
    /// Largest degree for sweeps over all of `S_n` times all generators.
    pub group_limit: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { class_limit: 9, group_limit: 7 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassDistribution {
    pub lambda: Partition,
    pub counts: BTreeMap<usize, u64>,
    pub class_size: u64,
    pub min_des: usize,
    pub max_des: usize,
    /// Attained values are exactly `{1..max_des}`, or `{0}` for the identity.
    pub contiguous: bool,
}

impl ClassDistribution {
    pub fn from_counts(lambda: Partition, counts: BTreeMap<usize, u64>) -> Self {
        let class_size = counts.values().sum();
        let min_des = counts.keys().next().copied().unwrap_or(0);
        let max_des = counts.keys().next_back().copied().unwrap_or(0);
        let contiguous = if lambda.is_identity_type() {
            counts.keys().eq([0].iter())
        } else {
            counts.keys().copied().eq(1..=max_des)
        };
        ClassDistribution { lambda, counts, class_size, min_des, max_des, contiguous }
    }
}

fn check_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::BudgetExceeded { n, limit });
    }
    Ok(())
}

pub fn class_distribution(lambda: &Partition, cfg: &OracleConfig) -> Result<ClassDistribution> {
    check_limit(lambda.n(), cfg.class_limit)?;
    let mut counts = BTreeMap::new();
    for m in class_members(lambda) {
        *counts.entry(m.des()).or_insert(0) += 1;
    }
    Ok(ClassDistribution::from_counts(lambda.clone(), counts))
}

pub fn enumerate_all_classes(n: usize, cfg: &OracleConfig) -> Result<Vec<ClassDistribution>> {
    check_limit(n, cfg.class_limit)?;
    partitions_of(n).iter().map(|l| class_distribution(l, cfg)).collect()
}

/// Histogram of `des` over all of `S_n`, independent of class enumeration.
pub fn des_histogram(n: usize) -> Vec<u64> {
    let mut hist = vec![0u64; n];
    for p in all_permutations(n) {
        hist[p.des()] += 1;
    }
    hist
}

/// Number of binary Lyndon words of length `n`, by testing every word for
/// being strictly smaller than all of its proper rotations.
pub fn lyndon_words_brute(n: usize) -> u64 {
    assert!((1..=30).contains(&n), "word length out of range");
    let mask = (1u64 << n) - 1;
    (0..=mask).filter(|&w| (1..n).all(|r| w < (((w << r) | (w >> (n - r))) & mask))).count() as u64
}

/// Members of the full-cycle class of `S_n` with exactly one descent.
pub fn full_cycle_des_one(n: usize, cfg: &OracleConfig) -> Result<u64> {
    let dist = class_distribution(&Partition::new(vec![n])?, cfg)?;
    Ok(dist.counts.get(&1).copied().unwrap_or(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Min,
    Range,
    Step2,
    Step1Cases,
    Swap1,
    Nonconsec,
    CdesInvariance,
    Jump2Shape,
    Lyndon,
    EulerianMatch,
    GapClose,
    RealizeTotal,
}

impl Check {
    pub const ALL: [Check; 12] = [
        Check::Min,
        Check::Range,
        Check::Step2,
        Check::Step1Cases,
        Check::Swap1,
        Check::Nonconsec,
        Check::CdesInvariance,
        Check::Jump2Shape,
        Check::Lyndon,
        Check::EulerianMatch,
        Check::GapClose,
        Check::RealizeTotal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Min => "min",
            Check::Range => "range",
            Check::Step2 => "step2",
            Check::Step1Cases => "step1_cases",
            Check::Swap1 => "swap1",
            Check::Nonconsec => "nonconsec",
            Check::CdesInvariance => "cdes_invariance",
            Check::Jump2Shape => "jump2_shape",
            Check::Lyndon => "lyndon",
            Check::EulerianMatch => "eulerian_match",
            Check::GapClose => "gap_close",
            Check::RealizeTotal => "realize_total",
        }
    }

    /// Whether the check sweeps all of `S_n` rather than class by class.
    pub fn is_group_sweep(self) -> bool {
        matches!(
            self,
            Check::Step2
                | Check::Step1Cases
                | Check::Swap1
                | Check::Nonconsec
                | Check::CdesInvariance
                | Check::Jump2Shape
                | Check::GapClose
        )
    }

    /// Parses a comma-separated list, or `all`.
    pub fn parse_list(s: &str) -> Result<Vec<Check>> {
        if s.trim() == "all" {
            return Ok(Check::ALL.to_vec());
        }
        s.split(',').map(|t| t.trim().parse()).collect()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL.iter().copied().find(|c| c.name() == s).ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// Everything needed to reproduce a failure with one call.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub permutations: Vec<Permutation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Partition>,
    pub observed: Vec<i64>,
    pub message: String,
}

impl Counterexample {
    fn new(permutations: Vec<Permutation>, observed: Vec<i64>, message: impl Into<String>) -> Self {
        Counterexample { permutations, index: None, k: None, lambda: None, observed, message: message.into() }
    }

    fn at_index(mut self, i: usize) -> Self {
        self.index = Some(i);
        self
    }

    fn at_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    fn in_class(mut self, lambda: &Partition) -> Self {
        self.lambda = Some(lambda.clone());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub check_name: String,
    pub passed: bool,
    pub cases_checked: u64,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    fn new(n: usize, check: Check, cases_checked: u64, counterexample: Option<Counterexample>) -> Self {
        VerificationReport {
            n,
            check_name: check.name().to_string(),
            passed: counterexample.is_none(),
            cases_checked,
            counterexample,
        }
    }
}

pub fn run_checks(n: usize, checks: &[Check], cfg: &OracleConfig) -> Result<Vec<VerificationReport>> {
    if n == 0 {
        return Err(Error::Empty);
    }
    for &c in checks {
        let limit = if c.is_group_sweep() { cfg.group_limit } else { cfg.class_limit };
        check_limit(n, limit)?;
    }
    // Class distributions are shared by several checks.
    let mut classes: Option<Vec<ClassDistribution>> = None;
    let mut reports = Vec::with_capacity(checks.len());
    for &check in checks {
        let needs_classes = matches!(check, Check::Min | Check::Range | Check::EulerianMatch | Check::RealizeTotal);
        if needs_classes && classes.is_none() {
            classes = Some(enumerate_all_classes(n, cfg)?);
        }
        let cls = classes.as_deref().unwrap_or(&[]);
        let report = match check {
            Check::Min => check_min(n, cls),
            Check::Range => check_range(n, cls),
            Check::EulerianMatch => check_eulerian(n, cls),
            Check::RealizeTotal => check_realize_total(n, cls, cfg)?,
            Check::Lyndon => check_lyndon(n, cfg)?,
            Check::GapClose => {
                let survey = gap_close_survey(n);
                VerificationReport::new(n, check, survey.cases, survey.counterexample)
            }
            sweep => group_sweep(n, sweep),
        };
        reports.push(report);
    }
    Ok(reports)
}

fn check_min(n: usize, classes: &[ClassDistribution]) -> VerificationReport {
    let mut cases = 0;
    let mut failure = None;
    for d in classes.iter().filter(|d| !d.lambda.is_identity_type()) {
        cases += 1;
        let tau = min_des_representative(&d.lambda);
        if d.min_des != 1 || tau.des() != 1 || tau.cycle_type() != d.lambda {
            failure = Some(
                Counterexample::new(
                    vec![tau.clone()],
                    vec![d.min_des as i64, tau.des() as i64],
                    "class minimum or representative des is not 1",
                )
                .in_class(&d.lambda),
            );
            break;
        }
    }
    VerificationReport::new(n, Check::Min, cases, failure)
}

fn check_range(n: usize, classes: &[ClassDistribution]) -> VerificationReport {
    let failure = classes.iter().find(|d| !d.contiguous).map(|d| {
        Counterexample::new(
            vec![],
            d.counts.keys().map(|&k| k as i64).collect(),
            "attained des values are not contiguous",
        )
        .in_class(&d.lambda)
    });
    VerificationReport::new(n, Check::Range, classes.len() as u64, failure)
}

fn check_eulerian(n: usize, classes: &[ClassDistribution]) -> VerificationReport {
    let row: Vec<u64> =
        eulerian_row(n).coefficients.iter().map(|c| c.to_u64().expect("fits for enumerable n")).collect();
    let hist = des_histogram(n);
    let mut from_classes = vec![0u64; n];
    for d in classes {
        for (&k, &c) in &d.counts {
            from_classes[k] += c;
        }
    }
    let failure = (row != hist || row != from_classes).then(|| {
        let mut observed: Vec<i64> = row.iter().map(|&v| v as i64).collect();
        observed.extend(hist.iter().map(|&v| v as i64));
        Counterexample::new(vec![], observed, "recurrence row differs from the des histogram")
    });
    VerificationReport::new(n, Check::EulerianMatch, n as u64, failure)
}

fn check_lyndon(n: usize, cfg: &OracleConfig) -> Result<VerificationReport> {
    let formula = lyndon_count(n);
    let brute = BigUint::from(lyndon_words_brute(n));
    let mut cases = 1;
    let mut failure = None;
    if formula != brute {
        failure = Some(Counterexample::new(
            vec![],
            vec![to_i64(&formula), to_i64(&brute)],
            "formula differs from brute-force Lyndon word count",
        ));
    } else if n >= 2 {
        // The class identity does not hold at n = 1 (L_1 = 2, des(e) = 0).
        cases += 1;
        let class_count = BigUint::from(full_cycle_des_one(n, cfg)?);
        if class_count != formula {
            failure = Some(Counterexample::new(
                vec![],
                vec![to_i64(&formula), to_i64(&class_count)],
                "full-cycle class des=1 count differs from the Lyndon count",
            ));
        }
    }
    Ok(VerificationReport::new(n, Check::Lyndon, cases, failure))
}

fn to_i64(v: &BigUint) -> i64 {
    v.to_i64().unwrap_or(i64::MAX)
}

fn check_realize_total(n: usize, classes: &[ClassDistribution], cfg: &OracleConfig) -> Result<VerificationReport> {
    let budget = SearchBudget { exhaustive_limit: cfg.class_limit, ..Default::default() };
    let mut cases = 0;
    for d in classes {
        let targets = if d.lambda.is_identity_type() { 0..=0 } else { 1..=d.max_des };
        for k in targets {
            cases += 1;
            let bad = |observed: Vec<i64>, perms: Vec<Permutation>, msg: String| {
                Counterexample::new(perms, observed, msg).at_k(k).in_class(&d.lambda)
            };
            let failure = match realize(&d.lambda, k, &budget) {
                Err(e) => Some(bad(vec![], vec![], e.to_string())),
                Ok(r) if r.permutation.des() != k || r.permutation.cycle_type() != d.lambda => {
                    Some(bad(vec![r.permutation.des() as i64], vec![r.permutation], "wrong output".into()))
                }
                Ok(_) => None,
            };
            if failure.is_some() {
                return Ok(VerificationReport::new(n, Check::RealizeTotal, cases, failure));
            }
        }
    }
    Ok(VerificationReport::new(n, Check::RealizeTotal, cases, None))
}

/// Checks quantified over every `pi` in `S_n` and every generator index
/// (or every shift `k` for cdes invariance).
fn group_sweep(n: usize, check: Check) -> VerificationReport {
    let group = all_permutations(n);
    let per_perm = match check {
        Check::CdesInvariance => n,
        _ => n - 1,
    };
    let failure = group.par_iter().find_map_first(|pi| match check {
        Check::CdesInvariance => (0..n).find_map(|k| cdes_invariance_at(pi, k)),
        _ => (1..n).find_map(|i| sweep_at(check, pi, i)),
    });
    VerificationReport::new(n, check, (group.len() * per_perm) as u64, failure)
}

fn cdes_invariance_at(pi: &Permutation, k: usize) -> Option<Counterexample> {
    let shifted = pi.conjugate_by_long_cycle_power(k as i64);
    (shifted.cdes() != pi.cdes()).then(|| {
        Counterexample::new(
            vec![pi.clone(), shifted.clone()],
            vec![pi.cdes() as i64, shifted.cdes() as i64],
            "cdes changed under conjugation by a power of w",
        )
        .at_k(k)
    })
}

fn sweep_at(check: Check, pi: &Permutation, i: usize) -> Option<Counterexample> {
    let des = pi.des() as i64;
    let conj = pi.conjugate_by_coxeter(i).expect("index in range");
    let delta = conj.des() as i64 - des;
    let fail = |perms: Vec<Permutation>, observed: Vec<i64>, msg: &str| {
        Some(Counterexample::new(perms, observed, msg).at_index(i))
    };
    match check {
        Check::Step2 if delta.abs() > 2 => {
            fail(vec![pi.clone(), conj], vec![des, des + delta], "|des change| > 2 under s_i conjugation")
        }
        Check::Step1Cases => {
            let case = pi.classify_adjacent_case(i).expect("index in range");
            let covered = case.kind != CaseKind::A || !case.positions_consecutive;
            if covered && delta.abs() > 1 {
                fail(vec![pi.clone(), conj], vec![des, des + delta], "|des change| > 1 outside case A-consecutive")
            } else {
                None
            }
        }
        Check::Swap1 => {
            let by_value = pi.swap_values(i).expect("index in range");
            let by_position = pi.swap_positions(i).expect("index in range");
            let (dv, dp) = (by_value.des() as i64, by_position.des() as i64);
            if (dv - des).abs() > 1 || (dp - des).abs() > 1 {
                fail(
                    vec![pi.clone(), by_value, by_position],
                    vec![des, dv, dp],
                    "adjacent swap moved des by more than 1",
                )
            } else {
                None
            }
        }
        Check::Nonconsec => {
            let apart = pi.position_of(i).abs_diff(pi.position_of(i + 1)) > 1;
            let swapped = pi.swap_values(i).expect("index in range");
            if apart && swapped.des() as i64 != des {
                fail(
                    vec![pi.clone(), swapped.clone()],
                    vec![des, swapped.des() as i64],
                    "value swap of non-adjacent i, i+1 changed des",
                )
            } else {
                None
            }
        }
        Check::Jump2Shape if delta == 2 => {
            let ordered_positions = pi.position_of(i) < pi.position_of(i + 1);
            let ordered_values = pi.image(i) < pi.image(i + 1);
            let msg = match (ordered_positions, ordered_values) {
                (true, true) => return None,
                (false, _) => "+2 jump with pi^-1(i) > pi^-1(i+1)",
                (true, false) => "+2 jump with pi(i) > pi(i+1)",
            };
            fail(vec![pi.clone(), conj], vec![des, des + delta], msg)
        }
        _ => None,
    }
}

/// Outcome of running [`close_gap_step`] on every `(sigma0, i)` in `S_n` whose
/// `s_i` conjugate has two more descents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapCloseSurvey {
    pub n: usize,
    pub cases: u64,
    /// Cases resolved as `w^t`, case a, case b.
    pub branch_counts: [u64; 3],
    pub counterexample: Option<Counterexample>,
}

pub fn gap_close_survey(n: usize) -> GapCloseSurvey {
    let per_perm: Vec<([u64; 3], Option<Counterexample>)> = all_permutations(n)
        .par_iter()
        .map(|sigma0| {
            let mut counts = [0u64; 3];
            for i in 1..n {
                let sigma2 = sigma0.conjugate_by_coxeter(i).expect("index in range");
                if sigma2.des() != sigma0.des() + 2 {
                    continue;
                }
                match close_gap_step(sigma0, i) {
                    Ok((out, step)) => {
                        let slot = match step {
                            Step::GapCloseWt(_) => 0,
                            Step::GapCloseCaseA(_) => 1,
                            _ => 2,
                        };
                        counts[slot] += 1;
                        if out.des() != sigma0.des() + 1 || out.cycle_type() != sigma0.cycle_type() {
                            let c = Counterexample::new(
                                vec![sigma0.clone(), out.clone()],
                                vec![sigma0.des() as i64, out.des() as i64],
                                "gap closing missed des + 1",
                            );
                            return (counts, Some(c.at_index(i)));
                        }
                    }
                    Err(e) => {
                        let c = Counterexample::new(vec![sigma0.clone()], vec![], e.to_string());
                        return (counts, Some(c.at_index(i)));
                    }
                }
            }
            (counts, None)
        })
        .collect();
    let mut branch_counts = [0u64; 3];
    let mut counterexample = None;
    for (counts, failure) in per_perm {
        for (acc, c) in branch_counts.iter_mut().zip(counts) {
            *acc += c;
        }
        if counterexample.is_none() {
            counterexample = failure;
        }
    }
    GapCloseSurvey { n, cases: branch_counts.iter().sum(), branch_counts, counterexample }
}
