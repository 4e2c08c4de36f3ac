use alloc::vec::Vec;

use super::OracleError;

/// Exponent vector of a monomial `∏ x_k^{e_k}`.
pub type Exponents = Vec<u64>;

/// `a` divides `b`.
pub fn divides(a: &[u64], b: &[u64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Monomial ideal given by its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MonomialIdeal {
    generators: Vec<Exponents>,
}

impl MonomialIdeal {
    /// Reduces `generators` to the antichain of minimal elements (sorted).
    pub fn new(generators: impl IntoIterator<Item = Exponents>) -> Self {
        let mut gens: Vec<Exponents> = generators.into_iter().collect();
        gens.sort_unstable_by(|a, b| {
            a.iter()
                .sum::<u64>()
                .cmp(&b.iter().sum::<u64>())
                .then_with(|| a.cmp(b))
        });
        gens.dedup();
        let mut minimal: Vec<Exponents> = Vec::with_capacity(gens.len());
        for g in gens {
            // A divisor of g has degree ≤ deg g and so was seen already.
            if !minimal.iter().any(|m| divides(m, &g)) {
                minimal.push(g);
            }
        }
        minimal.sort_unstable();
        MonomialIdeal {
            generators: minimal,
        }
    }

    pub fn generators(&self) -> &[Exponents] {
        &self.generators
    }

    pub fn principal_generator(&self) -> Option<&Exponents> {
        match self.generators.as_slice() {
            [g] => Some(g),
            _ => None,
        }
    }
}

/// A reduced monomial ideal is principal iff it has exactly one generator.
pub fn is_principal_monomial(ideal: &MonomialIdeal) -> Result<bool, OracleError> {
    if ideal.generators.is_empty() {
        return Err(OracleError::EmptyIdeal);
    }
    Ok(ideal.generators.len() == 1)
}
