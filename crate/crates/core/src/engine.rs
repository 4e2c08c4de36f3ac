//! Blow-up engine: center selection, pullback, nerve update and the
//! principalization loop.
//!
//! Each step blows up `Y_i ∩ Y_j` for the lexicographically largest pair
//! `(i, j)` attaining `σ`. The exceptional divisor is appended as the new last
//! support, every divisor is pulled back by
//! `β*D = (a_i + a_j)·E + Σ_k a_k·Ỹ_k`, and the nerve is updated from the
//! emptiness rules of the blow-up. The loop asserts that `(σ, τ)` strictly
//! decreases at every step.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::arrangement::{
    min_divisor, validate_arrangement, Arrangement, Divisor, DivisorLabel, Nerve,
};
use crate::complex::Complex;
use crate::invariants::{
    diff, is_locally_principal, is_sum_locally_principal, pair_value, sigma, SigmaReport,
};
use crate::{Error, ExtPair, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Total number of blow-ups allowed in one run.
    pub max_steps: usize,
}

impl EngineConfig {
    pub const DEFAULT_MAX_STEPS: usize = 10_000;
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_steps: Self::DEFAULT_MAX_STEPS,
        }
    }
}

/// One stage `X_k` of the blow-up tower.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BlowupState {
    pub arrangement: Arrangement,
    pub divisors: Vec<Divisor>,
    /// Number of blow-ups applied so far.
    pub step: usize,
}

impl BlowupState {
    pub fn new(arrangement: Arrangement, divisors: Vec<Divisor>) -> Self {
        BlowupState {
            arrangement,
            divisors,
            step: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        validate_arrangement(&self.arrangement, &self.divisors).map_err(Error::Invalid)
    }

    pub fn nerve(&self) -> &Nerve {
        self.arrangement.nerve()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TraceStep {
    /// 1-based blow-up number; equals the step of `new_label`.
    pub step: usize,
    /// Index of the pair reduction round; always 0 for a single pair.
    pub phase: usize,
    pub center: (usize, usize),
    pub sigma_before: ExtPair,
    pub tau_before: usize,
    pub sigma_after: ExtPair,
    pub tau_after: usize,
    pub new_label: DivisorLabel,
    /// Coefficient of the new exceptional divisor in each tracked divisor.
    /// Proper transforms keep their coefficients, so the full pulled-back
    /// vectors are the initial ones extended by these entries step by step
    /// (see [`Trace::pulled_back_coeffs`]).
    pub exceptional_coeffs: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Certificate {
    Principalized,
    AlreadyPrincipal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Trace {
    pub initial: BlowupState,
    pub steps: Vec<TraceStep>,
    /// Nerve after the last step.
    pub final_nerve: Nerve,
    pub certificate: Certificate,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Tracked divisors after the first `steps` blow-ups.
    pub fn pulled_back_coeffs(&self, steps: usize) -> Vec<Divisor> {
        let mut out = self.initial.divisors.clone();
        for step in &self.steps[..steps] {
            for (d, &e) in out.iter_mut().zip(&step.exceptional_coeffs) {
                d.push(e);
            }
        }
        out
    }

    /// Drops every step after the first `steps`. Only useful for producing
    /// incomplete traces to feed a verifier.
    pub fn truncated(&self, steps: usize) -> Result<Trace> {
        let mut t = self.clone();
        t.steps.truncate(steps);
        let mut nerve = t.initial.nerve().clone();
        for step in &t.steps {
            nerve = blowup_nerve(&nerve, step.center)?;
        }
        t.final_nerve = nerve;
        if t.steps.is_empty() {
            t.certificate = Certificate::AlreadyPrincipal;
        }
        Ok(t)
    }
}

fn check_center(n: usize, (i, j): (usize, usize)) -> Result<()> {
    for idx in [i, j] {
        if idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, len: n });
        }
    }
    if i == j {
        return Err(Error::EqualIndices(i));
    }
    Ok(())
}

fn max_achieving_pair(report: &SigmaReport) -> Result<(usize, usize)> {
    report
        .achieving_pairs
        .iter()
        .copied()
        .max()
        .ok_or(Error::AlreadyPrincipal)
}

/// Lexicographically largest pair `(k, l)`, `k < l`, attaining `σ(D1, D2)`.
pub fn select_center(state: &BlowupState, d1: &Divisor, d2: &Divisor) -> Result<(usize, usize)> {
    max_achieving_pair(&sigma(d1, d2, state.nerve())?)
}

/// Appends the exceptional coefficient `D[i] + D[j]`; proper transforms keep
/// their coefficients.
pub fn pullback_divisor(d: &Divisor, center: (usize, usize)) -> Result<Divisor> {
    check_center(d.len(), center)?;
    let mut out = d.clone();
    out.push(d.coeffs()[center.0] + d.coeffs()[center.1]);
    Ok(out)
}

/// Nerve of `{Ỹ_0, …, Ỹ_{n−1}, E}` after blowing up `Y_i ∩ Y_j`, with `E`
/// as vertex `n`.
///
/// A set of proper transforms stays nonempty iff it was nonempty and does not
/// contain both `i` and `j`; `A ∪ {E}` is nonempty iff `A ∪ {i, j}` was
/// nonempty and `A` does not contain both. Intersections not forced empty by
/// the center are kept, so the result may overapproximate.
pub fn blowup_nerve(nerve: &Nerve, center: (usize, usize)) -> Result<Nerve> {
    let n = nerve.vertex_count();
    check_center(n, center)?;
    let (i, j) = center;
    if !nerve.contains_pair(i, j) {
        return Err(Error::EmptyCenter(i, j));
    }
    let e = n;
    let mut family = Vec::with_capacity(nerve.maximal_sets().len() + 1);
    for face in nerve.maximal_sets() {
        let through_center = face.binary_search(&i).is_ok() && face.binary_search(&j).is_ok();
        if through_center {
            for drop in [i, j] {
                // e exceeds every old vertex, so the face stays sorted.
                let mut side: Vec<usize> = face.iter().copied().filter(|&v| v != drop).collect();
                side.push(e);
                family.push(side);
            }
        } else {
            family.push(face.clone());
        }
    }
    Ok(Nerve::from_antichain_unchecked(n + 1, family))
}

fn blowup_arrangement(
    arr: &Arrangement,
    center: (usize, usize),
    step: usize,
) -> Result<Arrangement> {
    let nerve = blowup_nerve(arr.nerve(), center)?;
    let mut labels = arr.labels().to_vec();
    labels.push(DivisorLabel::exceptional(labels.len(), step));
    Ok(Arrangement::from_parts_unchecked(labels, nerve))
}

/// Returns the exceptional coefficients.
fn pull_back_all(divisors: &mut [Divisor], center: (usize, usize)) -> Vec<u64> {
    divisors
        .iter_mut()
        .map(|d| {
            let e = d.coeffs()[center.0] + d.coeffs()[center.1];
            d.push(e);
            e
        })
        .collect()
}

/// Blows up `Y_i ∩ Y_j` and pulls back every divisor of the state.
pub fn blowup(state: &BlowupState, center: (usize, usize)) -> Result<BlowupState> {
    if let Some(bad) = state
        .divisors
        .iter()
        .find(|d| d.len() != state.arrangement.vertex_count())
    {
        return Err(Error::LengthMismatch {
            expected: state.arrangement.vertex_count(),
            found: bad.len(),
        });
    }
    let arrangement = blowup_arrangement(&state.arrangement, center, state.step + 1)?;
    let mut divisors = state.divisors.clone();
    pull_back_all(&mut divisors, center);
    Ok(BlowupState {
        arrangement,
        divisors,
        step: state.step + 1,
    })
}

/// Bad pairs of the working pair, grouped by `σ_ij`. Differences of old
/// supports never change under pullback, so a blow-up only removes the
/// center and adds pairs with the new vertex.
#[derive(Debug, Default)]
struct BadPairs {
    diffs: Vec<i128>,
    by_value: BTreeMap<ExtPair, BTreeSet<(usize, usize)>>,
}

impl BadPairs {
    fn new(d1: &Divisor, d2: &Divisor, complex: &Complex) -> Self {
        let diffs: Vec<i128> = (0..d1.len()).map(|i| diff(d1, d2, i)).collect();
        let mut bad = BadPairs {
            diffs,
            by_value: BTreeMap::new(),
        };
        for &(i, j) in complex.edges() {
            bad.insert(i, j);
        }
        bad
    }

    fn insert(&mut self, i: usize, j: usize) {
        let value = pair_value(self.diffs[i], self.diffs[j]);
        if !value.is_bottom() {
            self.by_value.entry(value).or_default().insert((i, j));
        }
    }

    fn remove(&mut self, i: usize, j: usize) {
        let value = pair_value(self.diffs[i], self.diffs[j]);
        if let Some(set) = self.by_value.get_mut(&value) {
            set.remove(&(i, j));
            if set.is_empty() {
                self.by_value.remove(&value);
            }
        }
    }

    /// `(σ, τ)` and the lexicographically largest achieving pair.
    fn top(&self) -> (ExtPair, usize, Option<(usize, usize)>) {
        match self.by_value.last_key_value() {
            Some((&value, set)) => (value, set.len(), set.last().copied()),
            None => (ExtPair::Bottom, 0, None),
        }
    }
}

/// Mutable run of the loop. `tracked` are the divisors reported in the
/// trace; `working` are the divisors whose pairwise `σ` drives the centers.
struct Run<'a> {
    config: &'a EngineConfig,
    labels: Vec<DivisorLabel>,
    complex: Complex,
    tracked: Vec<Divisor>,
    working: Vec<Divisor>,
    step: usize,
    steps: Vec<TraceStep>,
}

impl Run<'_> {
    fn reduce_pair(&mut self, phase: usize, a: usize, b: usize) -> Result<()> {
        let mut bad = BadPairs::new(&self.working[a], &self.working[b], &self.complex);
        loop {
            let (sigma_before, tau_before, center) = bad.top();
            let Some(center) = center else {
                return Ok(());
            };
            if self.steps.len() >= self.config.max_steps {
                return Err(Error::StepLimitExceeded {
                    limit: self.config.max_steps,
                });
            }
            self.step += 1;
            let (i, j) = center;
            let e = self.labels.len();
            self.labels.push(DivisorLabel::exceptional(e, self.step));
            let exceptional_coeffs = pull_back_all(&mut self.tracked, center);
            pull_back_all(&mut self.working, center);

            bad.remove(i, j);
            bad.diffs.push(diff(&self.working[a], &self.working[b], e));
            for k in self.complex.blow_up(i, j) {
                bad.insert(k, e);
            }

            let (sigma_after, tau_after, _) = bad.top();
            if (sigma_after, tau_after) >= (sigma_before, tau_before) {
                return Err(Error::InvariantViolation(format!(
                    "step {}: (σ, τ) went from ({}, {}) to ({}, {}) at center {:?}",
                    self.step, sigma_before, tau_before, sigma_after, tau_after, center
                )));
            }
            self.steps.push(TraceStep {
                step: self.step,
                phase,
                center,
                sigma_before,
                tau_before,
                sigma_after,
                tau_after,
                new_label: self.labels[e].clone(),
                exceptional_coeffs,
            });
        }
    }

    fn finish(self, initial: BlowupState) -> (BlowupState, Trace) {
        let certificate = if self.steps.is_empty() {
            Certificate::AlreadyPrincipal
        } else {
            Certificate::Principalized
        };
        let final_nerve = self.complex.to_nerve();
        let state = BlowupState {
            arrangement: Arrangement::from_parts_unchecked(self.labels, final_nerve.clone()),
            divisors: self.tracked,
            step: self.step,
        };
        (
            state,
            Trace {
                initial,
                steps: self.steps,
                final_nerve,
                certificate,
            },
        )
    }
}

fn start<'a>(state: &BlowupState, working: Vec<Divisor>, config: &'a EngineConfig) -> Run<'a> {
    Run {
        config,
        labels: state.arrangement.labels().to_vec(),
        complex: Complex::new(state.nerve()),
        tracked: state.divisors.clone(),
        working,
        step: state.step,
        steps: Vec::new(),
    }
}

/// Blows up until `I_{D_idx1} + I_{D_idx2}` is locally principal. All
/// divisors of the state are pulled back along the way.
pub fn principalize_pair(
    state: &BlowupState,
    idx1: usize,
    idx2: usize,
    config: &EngineConfig,
) -> Result<(BlowupState, Trace)> {
    state.validate()?;
    check_center(state.divisors.len(), (idx1, idx2))?;
    let working = alloc::vec![state.divisors[idx1].clone(), state.divisors[idx2].clone()];
    let mut run = start(state, working, config);
    run.reduce_pair(0, 0, 1)?;
    let (out, trace) = run.finish(state.clone());
    if !is_locally_principal(&out.divisors[idx1], &out.divisors[idx2], out.nerve())? {
        return Err(Error::InvariantViolation(format!(
            "pair ({idx1}, {idx2}) not principal after {} steps",
            trace.len()
        )));
    }
    Ok((out, trace))
}

/// Principalizes `Σ_k I_{D_k}` by reducing pairs left to right: the first two
/// working divisors are principalized, then replaced by their componentwise
/// minimum, until one remains.
pub fn principalize_many(
    state: &BlowupState,
    config: &EngineConfig,
) -> Result<(BlowupState, Trace)> {
    state.validate()?;
    let mut run = start(state, state.divisors.clone(), config);
    let mut phase = 0;
    while run.working.len() > 1 {
        run.reduce_pair(phase, 0, 1)?;
        let merged = min_divisor(&run.working[0], &run.working[1])?;
        run.working.splice(0..2, [merged]);
        phase += 1;
    }
    let (out, trace) = run.finish(state.clone());
    if !is_sum_locally_principal(&out.divisors, out.nerve())? {
        return Err(Error::InvariantViolation(format!(
            "ideal sum not principal after {} steps",
            trace.len()
        )));
    }
    Ok((out, trace))
}
