//! Divisor arrangements: labels, coefficient vectors and the nerve of
//! nonempty intersections.
//!
//! The ambient space is never represented. An arrangement is a list of
//! labelled supports `Y_0, …, Y_{n−1}` together with the downward-closed
//! family of index sets whose intersection is nonempty, stored through its
//! maximal elements.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum LabelKind {
    Original,
    /// Created by the blow-up with this 1-based step number.
    Exceptional {
        step: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DivisorLabel {
    pub id: usize,
    pub kind: LabelKind,
    pub name: String,
}

impl DivisorLabel {
    pub fn original(id: usize, name: impl Into<String>) -> Self {
        DivisorLabel {
            id,
            kind: LabelKind::Original,
            name: name.into(),
        }
    }

    pub fn exceptional(id: usize, step: usize) -> Self {
        DivisorLabel {
            id,
            kind: LabelKind::Exceptional { step },
            name: format!("E{step}"),
        }
    }
}

/// Downward-closed family of index sets with nonempty intersection.
///
/// Stored as the antichain of maximal members. Each member is a sorted,
/// duplicate-free index list and the antichain itself is kept sorted, so two
/// nerves describing the same family compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Nerve {
    vertex_count: usize,
    maximal: Vec<Vec<usize>>,
}

impl Nerve {
    /// Every subset of `0..n` is nonempty, e.g. coordinate hyperplanes
    /// through the origin.
    pub fn full(vertex_count: usize) -> Self {
        Nerve {
            vertex_count,
            maximal: alloc::vec![(0..vertex_count).collect()],
        }
    }

    /// Builds a nerve from any generating family; sets are sorted,
    /// deduplicated and reduced to their maximal elements.
    pub fn from_maximal<I, S>(vertex_count: usize, sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = usize>,
    {
        let mut family = Vec::new();
        for set in sets {
            let mut set: Vec<usize> = set.into_iter().collect();
            if let Some(&bad) = set.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::IndexOutOfRange {
                    index: bad,
                    len: vertex_count,
                });
            }
            set.sort_unstable();
            set.dedup();
            family.push(set);
        }
        Ok(Nerve {
            vertex_count,
            maximal: reduce_antichain(family),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn maximal_sets(&self) -> &[Vec<usize>] {
        &self.maximal
    }

    /// Whether `∩_{i∈set} Y_i` is (treated as) nonempty.
    pub fn contains(&self, set: &[usize]) -> Result<bool> {
        if let Some(&bad) = set.iter().find(|&&v| v >= self.vertex_count) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                len: self.vertex_count,
            });
        }
        Ok(self.contains_unchecked(set))
    }

    pub(crate) fn contains_unchecked(&self, set: &[usize]) -> bool {
        set.is_empty()
            || self
                .maximal
                .iter()
                .any(|m| set.iter().all(|v| m.binary_search(v).is_ok()))
    }

    pub(crate) fn contains_pair(&self, i: usize, j: usize) -> bool {
        self.maximal
            .iter()
            .any(|m| m.binary_search(&i).is_ok() && m.binary_search(&j).is_ok())
    }

    /// `family` must already be an antichain of sorted sets.
    pub(crate) fn from_antichain_unchecked(
        vertex_count: usize,
        mut family: Vec<Vec<usize>>,
    ) -> Self {
        family.sort_unstable();
        Nerve {
            vertex_count,
            maximal: family,
        }
    }
}

/// Drops every set contained in another one and sorts the survivors.
fn reduce_antichain(mut family: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    // Longest first so that a set can only be absorbed by an earlier one.
    family.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    family.dedup();
    let mut kept: Vec<Vec<usize>> = Vec::with_capacity(family.len());
    for set in family {
        if !kept.iter().any(|k| is_subset(&set, k)) {
            kept.push(set);
        }
    }
    kept.sort_unstable();
    kept
}

/// Both slices sorted ascending.
fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|s| it.any(|b| b == s))
}

/// Membership test `A ∈ nerve`.
pub fn nerve_contains(nerve: &Nerve, set: &[usize]) -> Result<bool> {
    nerve.contains(set)
}

/// Coefficient vector of an effective divisor `Σ a_i Y_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Divisor(Vec<u64>);

impl Divisor {
    pub fn new(coeffs: Vec<u64>) -> Self {
        Divisor(coeffs)
    }

    pub fn zero(len: usize) -> Self {
        Divisor(alloc::vec![0; len])
    }

    /// Rejects negative entries with [`Violation::NegativeCoefficient`]
    /// (divisor index reported as 0; callers relabel as needed).
    pub fn from_signed(coeffs: &[i64]) -> core::result::Result<Self, Violation> {
        coeffs
            .iter()
            .enumerate()
            .map(|(index, &c)| {
                u64::try_from(c).map_err(|_| Violation::NegativeCoefficient {
                    divisor: 0,
                    index,
                    value: c,
                })
            })
            .collect::<core::result::Result<Vec<_>, _>>()
            .map(Divisor)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<u64> {
        self.0.get(i).copied()
    }

    pub fn into_inner(self) -> Vec<u64> {
        self.0
    }

    pub(crate) fn push(&mut self, c: u64) {
        self.0.push(c);
    }
}

impl From<Vec<u64>> for Divisor {
    fn from(v: Vec<u64>) -> Self {
        Divisor(v)
    }
}

impl<const N: usize> From<[u64; N]> for Divisor {
    fn from(v: [u64; N]) -> Self {
        Divisor(v.to_vec())
    }
}

/// Componentwise sum; panics on length mismatch.
impl Add for &Divisor {
    type Output = Divisor;

    fn add(self, rhs: &Divisor) -> Divisor {
        assert_eq!(self.len(), rhs.len(), "divisor length mismatch");
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

/// Componentwise minimum. On a locally principal pair this cuts out the sum
/// of the two ideals at every point.
pub fn min_divisor(d1: &Divisor, d2: &Divisor) -> Result<Divisor> {
    if d1.len() != d2.len() {
        return Err(Error::LengthMismatch {
            expected: d1.len(),
            found: d2.len(),
        });
    }
    Ok(Divisor(
        d1.0.iter().zip(&d2.0).map(|(a, b)| *a.min(b)).collect(),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Arrangement {
    labels: Vec<DivisorLabel>,
    nerve: Nerve,
}

impl Arrangement {
    /// Requires dense ids `0..n` in order and a nerve on `n` vertices.
    pub fn new(labels: Vec<DivisorLabel>, nerve: Nerve) -> Result<Self> {
        if labels.len() != nerve.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: nerve.vertex_count(),
                found: labels.len(),
            });
        }
        if let Some((pos, _)) = labels.iter().enumerate().find(|(pos, l)| l.id != *pos) {
            return Err(Error::IndexOutOfRange {
                index: labels[pos].id,
                len: labels.len(),
            });
        }
        Ok(Arrangement { labels, nerve })
    }

    /// Original supports named `Y0, Y1, …`.
    pub fn with_nerve(nerve: Nerve) -> Self {
        let labels = (0..nerve.vertex_count())
            .map(|i| DivisorLabel::original(i, format!("Y{i}")))
            .collect();
        Arrangement { labels, nerve }
    }

    pub fn full(n: usize) -> Self {
        Self::with_nerve(Nerve::full(n))
    }

    pub fn labels(&self) -> &[DivisorLabel] {
        &self.labels
    }

    pub fn nerve(&self) -> &Nerve {
        &self.nerve
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub(crate) fn from_parts_unchecked(labels: Vec<DivisorLabel>, nerve: Nerve) -> Self {
        Arrangement { labels, nerve }
    }
}

/// A single reason an arrangement/divisor family is rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Violation {
    LengthMismatch {
        divisor: usize,
        expected: usize,
        found: usize,
    },
    NegativeCoefficient {
        divisor: usize,
        index: usize,
        value: i64,
    },
    EmptyNerveSingleton {
        vertex: usize,
    },
    TooFewDivisors {
        found: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LengthMismatch {
                divisor,
                expected,
                found,
            } => write!(
                f,
                "divisor {divisor} has {found} coefficients, arrangement has {expected} supports"
            ),
            Violation::NegativeCoefficient {
                divisor,
                index,
                value,
            } => {
                write!(
                    f,
                    "divisor {divisor} has negative coefficient {value} at support {index}"
                )
            }
            Violation::EmptyNerveSingleton { vertex } => {
                write!(f, "support {vertex} is missing from the nerve")
            }
            Violation::TooFewDivisors { found } => {
                write!(f, "at least 2 divisors are required, found {found}")
            }
        }
    }
}

/// Checks everything the engine relies on. `Ok` guarantees that the
/// invariant and engine operations cannot fail on index or length errors.
pub fn validate_arrangement(
    arr: &Arrangement,
    divisors: &[Divisor],
) -> core::result::Result<(), Vec<Violation>> {
    let n = arr.vertex_count();
    let mut violations = Vec::new();
    if divisors.len() < 2 {
        violations.push(Violation::TooFewDivisors {
            found: divisors.len(),
        });
    }
    for (k, d) in divisors.iter().enumerate() {
        if d.len() != n {
            violations.push(Violation::LengthMismatch {
                divisor: k,
                expected: n,
                found: d.len(),
            });
        }
    }
    for v in 0..n {
        if !arr.nerve().contains_unchecked(&[v]) {
            violations.push(Violation::EmptyNerveSingleton { vertex: v });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}
