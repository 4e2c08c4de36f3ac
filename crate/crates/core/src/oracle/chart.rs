use alloc::vec::Vec;

use super::monomial::{Exponents, MonomialIdeal};
use super::OracleError;

/// Local equation of one divisor in a chart. An absent divisor (empty
/// intersection with the chart) has the all-zero exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DivisorEquation {
    pub exponents: Exponents,
    pub present: bool,
}

impl DivisorEquation {
    fn new(exponents: Exponents) -> Self {
        let present = exponents.iter().any(|&e| e > 0);
        DivisorEquation { exponents, present }
    }

    /// The coordinate this divisor is, if its equation is a single variable.
    pub fn variable(&self) -> Option<usize> {
        let mut nonzero = self.exponents.iter().enumerate().filter(|(_, &e)| e > 0);
        match (nonzero.next(), nonzero.next()) {
            (Some((k, 1)), None) => Some(k),
            _ => None,
        }
    }
}

/// An affine chart `A^var_count` of some stage of the blow-up tower.
///
/// Coordinate slots are reused: when a chart of a blow-up substitutes
/// `x_i = a_i·x_m`, slot `i` holds the new coordinate `a_i` from then on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MonomialChart {
    pub var_count: usize,
    /// Indexed by divisor label id.
    pub divisor_equations: Vec<DivisorEquation>,
    /// Total transform of each input divisor `D_j`, i.e. the generators of
    /// the transformed ideal sum before reduction.
    pub generators: Vec<Exponents>,
    /// `(step, chart index)` for every blow-up that split this chart.
    pub lineage: Vec<(usize, usize)>,
}

impl MonomialChart {
    pub fn ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.generators.iter().cloned())
    }

    /// Ids of divisors meeting this chart. They all pass through its origin.
    pub fn present_divisors(&self) -> Vec<usize> {
        (0..self.divisor_equations.len())
            .filter(|&k| self.divisor_equations[k].present)
            .collect()
    }

    pub fn is_present(&self, id: usize) -> bool {
        self.divisor_equations.get(id).is_some_and(|e| e.present)
    }
}

/// `Y_i = V(x_i)` in affine `n`-space; `D_j` has equation `∏ x_i^{a_ij}`.
pub fn initial_chart(
    n: usize,
    coeff_matrix: &[Vec<u64>],
) -> Result<(MonomialChart, MonomialIdeal), OracleError> {
    if coeff_matrix.is_empty() {
        return Err(OracleError::EmptyIdeal);
    }
    if let Some(row) = coeff_matrix.iter().find(|r| r.len() != n) {
        return Err(OracleError::LengthMismatch {
            expected: n,
            found: row.len(),
        });
    }
    let divisor_equations = (0..n)
        .map(|i| {
            let mut e = alloc::vec![0; n];
            e[i] = 1;
            DivisorEquation::new(e)
        })
        .collect();
    let chart = MonomialChart {
        var_count: n,
        divisor_equations,
        generators: coeff_matrix.to_vec(),
        lineage: Vec::new(),
    };
    let ideal = chart.ideal();
    Ok((chart, ideal))
}

/// Substitutes `x_{c} = a_{c}·x_{center[m]}` for every other center
/// coordinate `c`.
pub fn substitute(e: &[u64], center_vars: &[usize], m: usize) -> Exponents {
    let mut out = e.to_vec();
    out[center_vars[m]] = center_vars.iter().map(|&v| e[v]).sum();
    out
}

/// Total transform, proper transform and multiplicity along `E` of one
/// equation in chart `m`. `proper · E^mult = total`.
pub fn transform_equation(
    e: &[u64],
    center_vars: &[usize],
    m: usize,
) -> (Exponents, Exponents, u64) {
    let total = substitute(e, center_vars, m);
    let mult: u64 = center_vars.iter().map(|&v| e[v]).sum();
    let mut proper = total.clone();
    proper[center_vars[m]] -= mult;
    (total, proper, mult)
}

/// The `r` standard charts of the blow-up of `chart` along the intersection
/// of the `center` divisors. The new exceptional divisor gets the next id.
pub fn blowup_charts(
    chart: &MonomialChart,
    center: &[usize],
    step: usize,
) -> Result<Vec<MonomialChart>, OracleError> {
    if center.len() < 2 {
        return Err(OracleError::CenterTooSmall(center.len()));
    }
    let mut vars = Vec::with_capacity(center.len());
    for &id in center {
        let eq = chart
            .divisor_equations
            .get(id)
            .ok_or(OracleError::UnknownDivisor(id))?;
        if !eq.present {
            return Err(OracleError::CenterAbsent(id));
        }
        let v = eq.variable().ok_or(OracleError::NonSimpleEquation(id))?;
        if vars.contains(&v) {
            return Err(OracleError::NonSimpleEquation(id));
        }
        vars.push(v);
    }

    let charts = (0..vars.len())
        .map(|m| {
            let mut divisor_equations: Vec<DivisorEquation> = chart
                .divisor_equations
                .iter()
                .map(|eq| DivisorEquation::new(transform_equation(&eq.exponents, &vars, m).1))
                .collect();
            let mut exceptional = alloc::vec![0; chart.var_count];
            exceptional[vars[m]] = 1;
            divisor_equations.push(DivisorEquation::new(exceptional));
            let generators = chart
                .generators
                .iter()
                .map(|g| substitute(g, &vars, m))
                .collect();
            let mut lineage = chart.lineage.clone();
            lineage.push((step, m));
            MonomialChart {
                var_count: chart.var_count,
                divisor_equations,
                generators,
                lineage,
            }
        })
        .collect();
    Ok(charts)
}
