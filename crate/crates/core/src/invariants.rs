//! The `(σ, τ)` invariant of a pair of divisors and local principality.
//!
//! For `D_1 = Σ a_i Y_i` and `D_2 = Σ b_i Y_i` let `d_i = a_i − b_i`. A pair
//! of supports `(i, j)` is *bad* when `d_i` and `d_j` have strictly opposite
//! signs; then `σ_ij = (max(|d_i|,|d_j|), min(|d_i|,|d_j|))`, otherwise
//! `σ_ij = ⊥`. `σ` is the maximum of `σ_ij` over pairs that meet, and `τ`
//! counts the unordered pairs attaining it. The sum `I_{D_1} + I_{D_2}` is
//! locally principal everywhere exactly when `σ = ⊥`.

use alloc::vec::Vec;

use crate::arrangement::{Divisor, Nerve};
use crate::{Error, ExtPair, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SigmaReport {
    pub sigma: ExtPair,
    pub tau: usize,
    /// Pairs `(i, j)` with `i < j` and `σ_ij = σ`, in ascending order.
    pub achieving_pairs: Vec<(usize, usize)>,
}

impl SigmaReport {
    /// The lexicographic termination measure `(σ, τ)`.
    pub fn measure(&self) -> (ExtPair, usize) {
        (self.sigma, self.tau)
    }
}

fn check_lengths(d1: &Divisor, d2: &Divisor) -> Result<()> {
    if d1.len() != d2.len() {
        return Err(Error::LengthMismatch {
            expected: d1.len(),
            found: d2.len(),
        });
    }
    Ok(())
}

#[inline]
pub(crate) fn diff(d1: &Divisor, d2: &Divisor, i: usize) -> i128 {
    i128::from(d1.coeffs()[i]) - i128::from(d2.coeffs()[i])
}

/// Zero differences never count as opposite.
#[inline]
pub(crate) fn pair_value(di: i128, dj: i128) -> ExtPair {
    if (di > 0 && dj < 0) || (di < 0 && dj > 0) {
        let (x, y) = (di.unsigned_abs() as u64, dj.unsigned_abs() as u64);
        ExtPair::Pair(x.max(y), x.min(y))
    } else {
        ExtPair::Bottom
    }
}

pub fn sigma_ij(d1: &Divisor, d2: &Divisor, i: usize, j: usize) -> Result<ExtPair> {
    check_lengths(d1, d2)?;
    let len = d1.len();
    for idx in [i, j] {
        if idx >= len {
            return Err(Error::IndexOutOfRange { index: idx, len });
        }
    }
    if i == j {
        return Err(Error::EqualIndices(i));
    }
    Ok(pair_value(diff(d1, d2, i), diff(d1, d2, j)))
}

/// `σ` and `τ` over all pairs of supports that meet according to `nerve`.
pub fn sigma(d1: &Divisor, d2: &Divisor, nerve: &Nerve) -> Result<SigmaReport> {
    check_lengths(d1, d2)?;
    if d1.len() != nerve.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: nerve.vertex_count(),
            found: d1.len(),
        });
    }
    // Walk the maximal faces: every pair that meets lies in one of them, and
    // only pairs with one positive and one negative difference can be bad.
    let diffs: Vec<i128> = (0..d1.len()).map(|i| diff(d1, d2, i)).collect();
    let mut report = SigmaReport::default();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for face in nerve.maximal_sets() {
        pos.clear();
        neg.clear();
        for &v in face {
            match diffs[v] {
                0 => {}
                d if d > 0 => pos.push(v),
                _ => neg.push(v),
            }
        }
        for &p in &pos {
            for &q in &neg {
                let value = pair_value(diffs[p], diffs[q]);
                if value < report.sigma {
                    continue;
                }
                if value > report.sigma {
                    report.sigma = value;
                    report.achieving_pairs.clear();
                }
                report.achieving_pairs.push((p.min(q), p.max(q)));
            }
        }
    }
    report.achieving_pairs.sort_unstable();
    report.achieving_pairs.dedup();
    report.tau = report.achieving_pairs.len();
    Ok(report)
}

pub fn is_locally_principal(d1: &Divisor, d2: &Divisor, nerve: &Nerve) -> Result<bool> {
    Ok(sigma(d1, d2, nerve)?.sigma.is_bottom())
}

/// Whether `Σ_k I_{D_k}` is locally principal: on every maximal nerve set
/// one divisor is componentwise below all the others.
pub fn is_sum_locally_principal(divisors: &[Divisor], nerve: &Nerve) -> Result<bool> {
    let n = nerve.vertex_count();
    if let Some(bad) = divisors.iter().find(|d| d.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    if divisors.len() < 2 {
        return Ok(true);
    }
    Ok(nerve.maximal_sets().iter().all(|face| {
        divisors.iter().any(|low| {
            divisors
                .iter()
                .all(|d| face.iter().all(|&v| low.coeffs()[v] <= d.coeffs()[v]))
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;
    use ExtPair::{Bottom, Pair};

    fn d<const N: usize>(c: [u64; N]) -> Divisor {
        Divisor::from(c)
    }

    #[test]
    fn sigma_ij_examples() {
        assert_eq!(sigma_ij(&d([2, 0]), &d([0, 3]), 0, 1).unwrap(), Pair(3, 2));
        assert_eq!(sigma_ij(&d([1, 1]), &d([1, 1]), 0, 1).unwrap(), Bottom);
        assert_eq!(sigma_ij(&d([2, 1]), &d([1, 0]), 0, 1).unwrap(), Bottom);
    }

    #[test]
    fn zero_difference_is_never_opposite() {
        assert_eq!(sigma_ij(&d([3, 0]), &d([3, 5]), 0, 1).unwrap(), Bottom);
        assert_eq!(sigma_ij(&d([0, 4]), &d([2, 4]), 0, 1).unwrap(), Bottom);
    }

    #[test]
    fn sigma_ij_errors() {
        assert_eq!(
            sigma_ij(&d([1, 0]), &d([0, 1]), 1, 1),
            Err(Error::EqualIndices(1))
        );
        assert_eq!(
            sigma_ij(&d([1, 0]), &d([0, 1]), 0, 2),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        );
        assert!(matches!(
            sigma_ij(&d([1, 0]), &d([0]), 0, 1),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn sigma_examples() {
        let full = Nerve::full(2);
        let r = sigma(&d([1, 0]), &d([0, 1]), &full).unwrap();
        assert_eq!(
            r,
            SigmaReport {
                sigma: Pair(1, 1),
                tau: 1,
                achieving_pairs: vec![(0, 1)]
            }
        );

        let r = sigma(&d([1, 3]), &d([1, 3]), &full).unwrap();
        assert_eq!(r, SigmaReport::default());

        let split = Nerve::from_maximal(3, [vec![0, 2], vec![1, 2]]).unwrap();
        let r = sigma(&d([1, 0, 0]), &d([0, 1, 0]), &split).unwrap();
        assert_eq!(r.sigma, Bottom);
        assert_eq!(r.tau, 0);
    }

    #[test]
    fn tau_counts_ties() {
        // diffs (2, -2, 2): pairs (0,1) and (1,2) both give (2,2).
        let r = sigma(&d([2, 0, 2]), &d([0, 2, 0]), &Nerve::full(3)).unwrap();
        assert_eq!(r.sigma, Pair(2, 2));
        assert_eq!(r.achieving_pairs, vec![(0, 1), (1, 2)]);
        assert_eq!(r.tau, 2);
    }

    #[test]
    fn principality_examples() {
        let full = Nerve::full(2);
        assert!(!is_locally_principal(&d([1, 0]), &d([0, 1]), &full).unwrap());
        assert!(is_locally_principal(&d([2, 1]), &d([1, 0]), &full).unwrap());
        assert!(is_locally_principal(&d([5, 2]), &d([5, 2]), &full).unwrap());
    }

    #[test]
    fn sum_principality_uses_faces() {
        let full = Nerve::full(2);
        assert!(!is_sum_locally_principal(&[d([1, 0]), d([0, 1])], &full).unwrap());
        let apart = Nerve::from_maximal(2, [vec![0], vec![1]]).unwrap();
        assert!(is_sum_locally_principal(&[d([1, 0]), d([0, 1])], &apart).unwrap());
        assert!(is_sum_locally_principal(&[d([1, 1]), d([1, 2]), d([3, 1])], &full).unwrap());
    }

    /// Straight transcription of the definition over ordered pairs.
    fn naive_sigma(a: &[u64], b: &[u64], nerve: &Nerve) -> (ExtPair, usize) {
        let n = a.len();
        let mut best = Bottom;
        for i in 0..n {
            for j in 0..n {
                if i == j || !nerve.contains(&[i, j]).unwrap() {
                    continue;
                }
                let di = a[i] as i64 - b[i] as i64;
                let dj = a[j] as i64 - b[j] as i64;
                if di.signum() * dj.signum() == -1 {
                    let p = Pair(di.unsigned_abs(), dj.unsigned_abs());
                    let q = Pair(dj.unsigned_abs(), di.unsigned_abs());
                    best = best.max(p.max(q));
                }
            }
        }
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if nerve.contains(&[i, j]).unwrap()
                    && !best.is_bottom()
                    && sigma_ij(&Divisor::from(a.to_vec()), &Divisor::from(b.to_vec()), i, j)
                        .unwrap()
                        == best
                {
                    count += 1;
                }
            }
        }
        (best, count)
    }

    #[test]
    fn exhaustive_against_naive_double_loop() {
        // n ≤ 4, coefficients ≤ 3, full nerve and a split nerve.
        for n in 2..=4usize {
            let total = 4usize.pow(n as u32);
            let nerves = [
                Nerve::full(n),
                Nerve::from_maximal(n, [(0..n - 1).collect::<Vec<_>>(), vec![n - 1, 0]]).unwrap(),
            ];
            for x in 0..total {
                for y in 0..total {
                    let a: Vec<u64> = (0..n)
                        .map(|k| (x / 4usize.pow(k as u32) % 4) as u64)
                        .collect();
                    let b: Vec<u64> = (0..n)
                        .map(|k| (y / 4usize.pow(k as u32) % 4) as u64)
                        .collect();
                    let (da, db) = (Divisor::from(a.clone()), Divisor::from(b.clone()));
                    for nerve in &nerves {
                        let r = sigma(&da, &db, nerve).unwrap();
                        assert_eq!(r.measure(), naive_sigma(&a, &b, nerve), "{a:?} {b:?}");
                    }
                }
            }
        }
    }

    fn arb_pair(n: usize) -> impl Strategy<Value = (Divisor, Divisor)> {
        (
            prop::collection::vec(0u64..6, n).prop_map(Divisor::new),
            prop::collection::vec(0u64..6, n).prop_map(Divisor::new),
        )
    }

    proptest! {
        #[test]
        fn sigma_ij_is_symmetric((a, b) in arb_pair(4), i in 0usize..4, j in 0usize..4) {
            prop_assume!(i != j);
            let v = sigma_ij(&a, &b, i, j).unwrap();
            prop_assert_eq!(v, sigma_ij(&b, &a, i, j).unwrap());
            prop_assert_eq!(v, sigma_ij(&a, &b, j, i).unwrap());
        }

        #[test]
        fn sigma_ij_is_translation_invariant(
            (a, b) in arb_pair(4),
            c in prop::collection::vec(0u64..6, 4),
            i in 0usize..4,
            j in 0usize..4,
        ) {
            prop_assume!(i != j);
            let c = Divisor::new(c);
            prop_assert_eq!(
                sigma_ij(&(&a + &c), &(&b + &c), i, j).unwrap(),
                sigma_ij(&a, &b, i, j).unwrap()
            );
        }

        #[test]
        fn enlarging_the_nerve_never_lowers_sigma(
            (a, b) in arb_pair(5),
            sets in prop::collection::vec(prop::collection::vec(0usize..5, 1..4), 1..4),
            extra in prop::collection::vec(0usize..5, 1..5),
        ) {
            let small = Nerve::from_maximal(5, sets.clone()).unwrap();
            let mut bigger = sets;
            bigger.push(extra);
            let big = Nerve::from_maximal(5, bigger).unwrap();
            let (s, t) = (sigma(&a, &b, &small).unwrap(), sigma(&a, &b, &big).unwrap());
            prop_assert!(s.sigma <= t.sigma);
            if !is_locally_principal(&a, &b, &small).unwrap() {
                prop_assert!(!is_locally_principal(&a, &b, &big).unwrap());
            }
        }

        #[test]
        fn bottom_iff_pairwise_principal_sum((a, b) in arb_pair(5)) {
            let nerve = Nerve::full(5);
            prop_assert_eq!(
                is_locally_principal(&a, &b, &nerve).unwrap(),
                is_sum_locally_principal(&[a, b], &nerve).unwrap()
            );
        }

        #[test]
        fn report_invariants((a, b) in arb_pair(5)) {
            let r = sigma(&a, &b, &Nerve::full(5)).unwrap();
            prop_assert_eq!(r.tau, r.achieving_pairs.len());
            if r.sigma.is_bottom() {
                prop_assert!(r.achieving_pairs.is_empty());
            }
            for &(i, j) in &r.achieving_pairs {
                prop_assert!(i < j);
                prop_assert_eq!(sigma_ij(&a, &b, i, j).unwrap(), r.sigma);
            }
        }
    }
}
