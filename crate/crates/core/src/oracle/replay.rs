use alloc::format;
use alloc::vec::Vec;

use super::chart::{blowup_charts, initial_chart, DivisorEquation, MonomialChart};
use super::monomial::{is_principal_monomial, Exponents};
use super::OracleError;
use crate::arrangement::{Divisor, Nerve};
use crate::engine::{blowup_nerve, Trace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Maximum number of live charts at any stage.
    pub max_leaves: usize,
}

impl OracleConfig {
    pub const DEFAULT_MAX_LEAVES: usize = 1 << 14;
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_leaves: Self::DEFAULT_MAX_LEAVES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LeafReport {
    pub lineage: Vec<(usize, usize)>,
    pub present_divisors: Vec<usize>,
    /// Minimal generators of the transformed ideal sum.
    pub generators: Vec<Exponents>,
    pub principal_generator: Option<Exponents>,
}

/// A chart exponent that differs from `Σ_k a_jk · eq_k` computed from the
/// engine's pulled-back coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PullbackMismatch {
    pub step: usize,
    pub lineage: Vec<(usize, usize)>,
    pub divisor: usize,
    pub coordinate: usize,
    pub chart_exponent: u64,
    pub engine_exponent: u64,
}

/// Divisors that meet in a chart while the engine's nerve says they do not.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NerveViolation {
    pub step: usize,
    pub lineage: Vec<(usize, usize)>,
    pub divisors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct VerificationReport {
    pub steps_replayed: usize,
    pub leaf_count: usize,
    pub leaves: Vec<LeafReport>,
    /// Lineages of leaves where the ideal is not principal.
    pub failures: Vec<Vec<(usize, usize)>>,
    /// Number of (chart, divisor) pullback comparisons made.
    pub pullback_checks: usize,
    pub pullback_mismatches: Vec<PullbackMismatch>,
    pub nerve_violations: Vec<NerveViolation>,
    /// Maximal faces of the final engine nerve met by no leaf chart.
    pub unwitnessed_faces: Vec<Vec<usize>>,
}

impl VerificationReport {
    pub fn verdict(&self) -> Result<(), OracleError> {
        if !self.pullback_mismatches.is_empty() {
            return Err(OracleError::PullbackMismatch(
                self.pullback_mismatches.clone(),
            ));
        }
        if !self.nerve_violations.is_empty() {
            return Err(OracleError::NerveUnsound(self.nerve_violations.clone()));
        }
        if !self.failures.is_empty() {
            return Err(OracleError::NotPrincipalAtLeaf(self.failures.clone()));
        }
        Ok(())
    }

    pub fn is_certified(&self) -> bool {
        self.verdict().is_ok()
    }
}

fn mismatch(msg: alloc::string::String) -> OracleError {
    OracleError::ReplayMismatch(msg)
}

struct Checker<'a> {
    report: &'a mut VerificationReport,
}

impl Checker<'_> {
    fn check_chart(
        &mut self,
        step: usize,
        chart: &MonomialChart,
        coeffs: &[Divisor],
        nerve: &Nerve,
    ) {
        for (j, (gen, d)) in chart.generators.iter().zip(coeffs).enumerate() {
            let mut expected = alloc::vec![0u64; chart.var_count];
            for (eq, &a) in chart.divisor_equations.iter().zip(d.coeffs()) {
                for (slot, &e) in expected.iter_mut().zip(&eq.exponents) {
                    *slot += a * e;
                }
            }
            self.report.pullback_checks += 1;
            for (coordinate, (&got, &want)) in gen.iter().zip(&expected).enumerate() {
                if got != want {
                    self.report.pullback_mismatches.push(PullbackMismatch {
                        step,
                        lineage: chart.lineage.clone(),
                        divisor: j,
                        coordinate,
                        chart_exponent: got,
                        engine_exponent: want,
                    });
                }
            }
        }
        let present = chart.present_divisors();
        if !nerve.contains(&present).unwrap_or(false) {
            self.report.nerve_violations.push(NerveViolation {
                step,
                lineage: chart.lineage.clone(),
                divisors: present,
            });
        }
    }
}

/// Replays every blow-up of `trace` through the affine charts of the
/// coordinate-hyperplane arrangement `Y_i = V(x_i)` in `n` variables with
/// divisors given by the rows of `coeff_matrix`.
///
/// Charts where a center divisor is absent are carried over unchanged. After
/// each step every chart is compared with the trace: its generator exponents
/// must match the pulled-back coefficients, and the divisors meeting it must
/// form a face of the engine's nerve at that stage (and, for leaves, of the
/// recorded final nerve). Structural problems are errors; check results are
/// collected in the report.
pub fn replay_trace(
    n: usize,
    coeff_matrix: &[Vec<u64>],
    trace: &Trace,
    config: &OracleConfig,
) -> Result<VerificationReport, OracleError> {
    let initial = &trace.initial;
    if initial.arrangement.vertex_count() != n || initial.step != 0 {
        return Err(mismatch(format!(
            "trace starts at step {} on {} supports, expected step 0 on {n}",
            initial.step,
            initial.arrangement.vertex_count()
        )));
    }
    if *initial.arrangement.nerve() != Nerve::full(n) {
        return Err(mismatch("trace does not start from the full nerve".into()));
    }
    let rows_match = initial.divisors.len() == coeff_matrix.len()
        && initial
            .divisors
            .iter()
            .zip(coeff_matrix)
            .all(|(d, r)| d.coeffs() == r.as_slice());
    if !rows_match {
        return Err(mismatch("trace divisors differ from the instance".into()));
    }

    let (chart, _) = initial_chart(n, coeff_matrix)?;
    let mut report = VerificationReport::default();
    let mut checker = Checker {
        report: &mut report,
    };
    checker.check_chart(0, &chart, &initial.divisors, initial.arrangement.nerve());

    let mut live = alloc::vec![chart];
    let mut ids = n;
    let mut coeffs = initial.divisors.clone();
    // The engine's nerve at each stage, re-derived from the recorded centers.
    let mut claimed = initial.arrangement.nerve().clone();
    for (t, step) in trace.steps.iter().enumerate() {
        let number = t + 1;
        if step.step != number {
            return Err(mismatch(format!(
                "step {} recorded as {}",
                number, step.step
            )));
        }
        let (i, j) = step.center;
        if i >= ids || j >= ids || i == j {
            return Err(mismatch(format!(
                "step {number}: invalid center {:?}",
                step.center
            )));
        }
        if step.new_label.id != ids {
            return Err(mismatch(format!(
                "step {number}: exceptional divisor has id {}, expected {ids}",
                step.new_label.id
            )));
        }
        ids += 1;
        if step.exceptional_coeffs.len() != coeff_matrix.len() {
            return Err(mismatch(format!(
                "step {number}: record has wrong dimensions"
            )));
        }
        for (d, &e) in coeffs.iter_mut().zip(&step.exceptional_coeffs) {
            d.push(e);
        }
        claimed = blowup_nerve(&claimed, step.center)
            .map_err(|e| mismatch(format!("step {number}: {e}")))?;

        let mut next = Vec::with_capacity(live.len() * 2);
        let mut split_any = false;
        for chart in live {
            if chart.is_present(i) && chart.is_present(j) {
                next.extend(blowup_charts(&chart, &[i, j], number)?);
                split_any = true;
            } else {
                let mut chart = chart;
                chart.divisor_equations.push(DivisorEquation {
                    exponents: alloc::vec![0; chart.var_count],
                    present: false,
                });
                next.push(chart);
            }
            if next.len() > config.max_leaves {
                return Err(OracleError::LeafCapExceeded {
                    cap: config.max_leaves,
                });
            }
        }
        if !split_any {
            return Err(mismatch(format!(
                "step {number}: center {:?} meets no chart",
                step.center
            )));
        }
        for chart in &next {
            checker.check_chart(number, chart, &coeffs, &claimed);
        }
        live = next;
    }

    if trace.final_nerve.vertex_count() != ids {
        return Err(mismatch(format!(
            "final nerve has {} vertices, expected {ids}",
            trace.final_nerve.vertex_count()
        )));
    }
    for chart in &live {
        let present = chart.present_divisors();
        if !trace.final_nerve.contains(&present).unwrap_or(false) {
            report.nerve_violations.push(NerveViolation {
                step: trace.steps.len(),
                lineage: chart.lineage.clone(),
                divisors: present,
            });
        }
    }
    report.steps_replayed = trace.steps.len();
    report.leaf_count = live.len();
    for chart in &live {
        let ideal = chart.ideal();
        let principal = is_principal_monomial(&ideal)?;
        if !principal {
            report.failures.push(chart.lineage.clone());
        }
        report.leaves.push(LeafReport {
            lineage: chart.lineage.clone(),
            present_divisors: chart.present_divisors(),
            generators: ideal.generators().to_vec(),
            principal_generator: ideal.principal_generator().cloned(),
        });
    }
    report.unwitnessed_faces = trace
        .final_nerve
        .maximal_sets()
        .iter()
        .filter(|face| {
            !report.leaves.iter().any(|leaf| {
                face.iter()
                    .all(|v| leaf.present_divisors.binary_search(v).is_ok())
            })
        })
        .cloned()
        .collect();
    Ok(report)
}

/// [`replay_trace`] followed by [`VerificationReport::verdict`].
pub fn verify_trace(
    n: usize,
    coeff_matrix: &[Vec<u64>],
    trace: &Trace,
    config: &OracleConfig,
) -> Result<VerificationReport, OracleError> {
    let report = replay_trace(n, coeff_matrix, trace, config)?;
    report.verdict()?;
    Ok(report)
}
