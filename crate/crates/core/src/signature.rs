//! Discrete (iterated-sum) signatures of time series.
//!
//! For increments `y_1, …, y_N` and a word `w = e_1 • … • e_k`,
//! `⟨S(y), w⟩ = Σ_{i_1 < … < i_k} e_1(y_{i_1}) ⋯ e_k(y_{i_k})`, where a letter
//! `e` acts on a vector as the monomial it names.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::alphabet::monomials_up_to;
use crate::error::{Error, Result};
use crate::tensor::{CheckReport, Product, Tensor};
use crate::words::{words_up_to, Word};

/// How the rows of a series are read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Interpretation {
    /// Rows are the increments `y_i` themselves.
    #[default]
    Increments,
    /// Rows are path positions `x_i`; signatures use `y_i = x_{i+1} - x_i`.
    Path,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimeSeries {
    dim: usize,
    values: Vec<Vec<BigRational>>,
    interpretation: Interpretation,
}

impl TimeSeries {
    pub fn new(dim: usize, values: Vec<Vec<BigRational>>, interpretation: Interpretation) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        for row in &values {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
        }
        Ok(TimeSeries {
            dim,
            values,
            interpretation,
        })
    }

    pub fn increments(dim: usize, values: Vec<Vec<BigRational>>) -> Result<Self> {
        Self::new(dim, values, Interpretation::Increments)
    }

    pub fn path(dim: usize, values: Vec<Vec<BigRational>>) -> Result<Self> {
        Self::new(dim, values, Interpretation::Path)
    }

    /// Integer increments, mostly for tests and examples.
    pub fn from_integers(dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let values = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
            .collect();
        Self::increments(dim, values)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Vec<BigRational>] {
        &self.values
    }

    pub fn interpretation(&self) -> Interpretation {
        self.interpretation
    }

    /// The increments this series stands for: the rows themselves, or the
    /// difference series of a path.
    pub fn to_increments(&self) -> TimeSeries {
        match self.interpretation {
            Interpretation::Increments => self.clone(),
            Interpretation::Path => TimeSeries {
                dim: self.dim,
                values: self
                    .values
                    .windows(2)
                    .map(|p| p[1].iter().zip(&p[0]).map(|(b, a)| b - a).collect())
                    .collect(),
                interpretation: Interpretation::Increments,
            },
        }
    }
}

/// The operations the prefix recursion needs from a coefficient type.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }

    fn one_like(&self) -> Self {
        BigRational::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// Iterated sums of every word of height at most `h` over `increments`,
/// returned in canonical word order (ε first).
///
/// Runs one pass over the series; at step `t` each word accumulates its
/// parent's running sum times the last letter evaluated at `y_t`. Longer
/// words are updated first so parents still hold the sum over `i < t`.
pub fn iterated_sums<R: Ring>(dim: usize, h: usize, unit: &R, increments: &[Vec<R>]) -> Vec<(Word, R)> {
    let words = words_up_to(dim, h);
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let letters = monomials_up_to(dim, h);
    let letter_index: HashMap<_, usize> = letters.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();

    // (word, parent, last letter), longest first
    let mut steps: Vec<(usize, usize, usize)> = words
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_empty())
        .map(|(i, w)| {
            let parent = index[&w.slice(0, w.len() - 1)];
            let last = letter_index[w.letters().last().unwrap()];
            (i, parent, last)
        })
        .collect();
    steps.sort_by_key(|&(i, _, _)| std::cmp::Reverse(words[i].len()));

    let mut sums: Vec<R> = vec![unit.zero_like(); words.len()];
    sums[0] = unit.one_like();
    for y in increments {
        let evals: Vec<R> = letters.iter().map(|m| eval_monomial(m.indices(), y, unit)).collect();
        for &(i, parent, last) in &steps {
            if Ring::is_zero(&evals[last]) || Ring::is_zero(&sums[parent]) {
                continue;
            }
            let delta = sums[parent].mul(&evals[last]);
            sums[i].add_assign(&delta);
        }
    }
    words.into_iter().zip(sums).collect()
}

fn eval_monomial<R: Ring>(indices: &[u16], y: &[R], unit: &R) -> R {
    let mut acc = unit.one_like();
    for &i in indices {
        acc = acc.mul(&y[i as usize - 1]);
    }
    acc
}

/// The truncated signature of a series; path series are differenced first.
pub fn dsign(y: &TimeSeries, h: usize) -> Tensor {
    let y = y.to_increments();
    let one = BigRational::one();
    let terms = iterated_sums(y.dim, h, &one, &y.values)
        .into_iter()
        .filter(|(_, c)| !Zero::is_zero(c));
    Tensor::from_terms(y.dim, h, terms).expect("words are within the space")
}

/// The signature of the path whose positions are the rows of `x`, whatever
/// its interpretation flag.
pub fn dsign_from_path(x: &TimeSeries, h: usize) -> Tensor {
    let path = TimeSeries {
        interpretation: Interpretation::Path,
        ..x.clone()
    };
    dsign(&path, h)
}

/// `a` followed by `b`, as increments.
pub fn concat_series(a: &TimeSeries, b: &TimeSeries) -> Result<TimeSeries> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    let mut values = a.to_increments().values;
    values.extend(b.to_increments().values);
    TimeSeries::increments(a.dim, values)
}

/// The increments in reversed time order.
pub fn reverse_series(a: &TimeSeries) -> TimeSeries {
    let mut out = a.to_increments();
    out.values.reverse();
    out
}

/// `a` followed by its reversal.
pub fn double(a: &TimeSeries) -> TimeSeries {
    concat_series(a, &reverse_series(a)).expect("same dimension")
}

/// `log(Φ*_H(S(y)))`, a Lie element for the shuffle product.
pub fn log_signature(y: &TimeSeries, h: usize) -> Tensor {
    dsign(y, h)
        .hoffman_phi_star()
        .log()
        .expect("signatures have constant term one")
}

/// Checks the quasi-shuffle relations on the signature of `y`.
pub fn check_quasi_shuffle(y: &TimeSeries, h: usize) -> CheckReport {
    dsign(y, h).check_grouplike(Product::QuasiShuffle)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::alphabet::{monomials_up_to, Monomial};
    use crate::rational::{int, ratio};
    use crate::tensor::tests::{t, w};
    use crate::tensor::{eulerian_qshuffle, eulerian_shuffle};
    use proptest::prelude::*;

    /// Brute force over all index tuples `i_1 < … < i_k`.
    pub(crate) fn brute_force(y: &TimeSeries, word: &Word) -> BigRational {
        fn go(y: &[Vec<BigRational>], letters: &[Monomial], start: usize) -> BigRational {
            let Some((first, rest)) = letters.split_first() else {
                return BigRational::one();
            };
            let mut total = BigRational::zero();
            for i in start..y.len() {
                let v = first.evaluate(&y[i]);
                if !Zero::is_zero(&v) {
                    total += v * go(y, rest, i + 1);
                }
            }
            total
        }
        go(y.to_increments().values(), word.letters(), 0)
    }

    pub(crate) fn worked_example() -> TimeSeries {
        TimeSeries::from_integers(2, &[vec![1, 2], vec![2, 3], vec![3, 2]]).unwrap()
    }

    pub(crate) fn arb_series(dim: usize, max_len: usize) -> impl Strategy<Value = TimeSeries> {
        prop::collection::vec(prop::collection::vec(-4i64..=4, dim), 0..=max_len)
            .prop_map(move |rows| TimeSeries::from_integers(dim, &rows).unwrap())
    }

    #[test]
    fn worked_example_coefficients() {
        let s = dsign(&worked_example(), 2);
        let expected = t(
            2,
            2,
            &[
                (1, 1, ""),
                (6, 1, "1"),
                (7, 1, "2"),
                (14, 1, "11"),
                (14, 1, "12"),
                (17, 1, "22"),
                (11, 1, "1.1"),
                (9, 1, "1.2"),
                (19, 1, "2.1"),
                (16, 1, "2.2"),
            ],
        );
        assert_eq!(s, expected);
        let padded = TimeSeries::from_integers(
            2,
            &[vec![0, 0], vec![1, 2], vec![0, 0], vec![2, 3], vec![3, 2], vec![0, 0]],
        )
        .unwrap();
        assert_eq!(dsign(&padded, 2), expected);
    }

    #[test]
    fn small_cases() {
        let empty = TimeSeries::increments(2, vec![]).unwrap();
        assert_eq!(dsign(&empty, 3), Tensor::unit(2, 3));
        let a = TimeSeries::increments(1, vec![vec![ratio(3, 2)]]).unwrap();
        assert_eq!(dsign(&a, 2), t(1, 2, &[(1, 1, ""), (3, 2, "1"), (9, 4, "11")]));
        assert_eq!(
            TimeSeries::from_integers(2, &[vec![1]]),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn matches_brute_force() {
        let y = TimeSeries::from_integers(2, &[vec![1, -2], vec![0, 3], vec![2, 2], vec![-1, 1]]).unwrap();
        let s = dsign(&y, 4);
        for x in words_up_to(2, 4) {
            assert_eq!(s.coefficient(&x), brute_force(&y, &x), "{x}");
        }
    }

    #[test]
    fn path_conversion() {
        let x = TimeSeries::from_integers(2, &[vec![0, 0], vec![1, 1], vec![2, 0]]).unwrap();
        let y = TimeSeries::from_integers(2, &[vec![1, 1], vec![1, -1]]).unwrap();
        assert_eq!(dsign_from_path(&x, 3), dsign(&y, 3));
        let flat = TimeSeries::from_integers(2, &[vec![5, 5], vec![5, 5]]).unwrap();
        assert_eq!(dsign_from_path(&flat, 3), Tensor::unit(2, 3));
        let single = TimeSeries::from_integers(2, &[vec![5, 5]]).unwrap();
        assert_eq!(dsign_from_path(&single, 3), Tensor::unit(2, 3));
    }

    #[test]
    fn concat_and_reverse() {
        let a = TimeSeries::from_integers(1, &[vec![3]]).unwrap();
        let b = TimeSeries::from_integers(1, &[vec![5]]).unwrap();
        let ab = concat_series(&a, &b).unwrap();
        assert_eq!(dsign(&ab, 2).coefficient(&w("1.1")), int(15));
        let empty = TimeSeries::increments(1, vec![]).unwrap();
        assert_eq!(concat_series(&a, &empty).unwrap(), a);
        let c = TimeSeries::from_integers(2, &[vec![1, 2]]).unwrap();
        assert!(concat_series(&a, &c).is_err());
        let r = reverse_series(&TimeSeries::from_integers(1, &[vec![1], vec![2], vec![3]]).unwrap());
        assert_eq!(r, TimeSeries::from_integers(1, &[vec![3], vec![2], vec![1]]).unwrap());
    }

    #[test]
    fn doubling_multiplies_letters_by_two() {
        let a = TimeSeries::from_integers(2, &[vec![1, -2], vec![3, 1], vec![0, 2]]).unwrap();
        let s = dsign(&a, 3);
        let g = dsign(&double(&a), 3);
        for m in monomials_up_to(2, 3) {
            let x = Word::letter(m);
            assert_eq!(g.coefficient(&x), int(2) * s.coefficient(&x), "{x}");
        }
    }

    #[test]
    fn log_signature_examples() {
        let empty = TimeSeries::increments(2, vec![]).unwrap();
        assert!(log_signature(&empty, 3).is_zero());
        // Φ* turns a·1 + a²·11 into a·1 + a²·11 + a²/2·1•1; the log then
        // removes the square of the level-one part.
        let a = TimeSeries::from_integers(1, &[vec![3]]).unwrap();
        assert_eq!(log_signature(&a, 2), t(1, 2, &[(3, 1, "1"), (9, 1, "11")]));
    }

    #[test]
    fn quasi_shuffle_report() {
        let y = worked_example();
        let s = dsign(&y, 2);
        let pair = crate::tensor::quasi_shuffle(&w("1"), &w("2"));
        assert_eq!(s.pair_word_sum(&pair), int(42));
        assert!(check_quasi_shuffle(&y, 4).passed());
        let mut corrupted = s.clone();
        corrupted.add_term(w("1.2"), int(1)).unwrap();
        let report = corrupted.check_grouplike(Product::QuasiShuffle);
        assert!(!report.passed());
    }

    #[test]
    fn log_adjoint_uses_quasi_shuffle_eulerian() {
        // ⟨log S, 1•2⟩ = 9 - 6·7/2 = -12 on the worked example
        let s = dsign(&worked_example(), 2);
        let x = w("1.2");
        assert_eq!(s.log().unwrap().coefficient(&x), int(-12));
        assert_eq!(s.pair(&eulerian_qshuffle(2, 2, &x).unwrap()), int(-12));
        // the shuffle eulerian map gives (9 - 19)/2 instead
        assert_eq!(s.pair(&eulerian_shuffle(2, 2, &x).unwrap()), int(-5));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn log_adjoint_on_quasi_shuffle_group(y in arb_series(2, 3)) {
            let s = dsign(&y, 4);
            let log = s.log().unwrap();
            for x in words_up_to(2, 4) {
                let e = eulerian_qshuffle(2, 4, &x).unwrap();
                prop_assert_eq!(log.coefficient(&x), s.pair(&e));
            }
        }

        #[test]
        fn quasi_shuffle_relations_hold(y in arb_series(3, 5)) {
            prop_assert!(check_quasi_shuffle(&y, 4).passed());
        }

        #[test]
        fn chen_identity(a in arb_series(2, 3), b in arb_series(2, 3)) {
            let ab = concat_series(&a, &b).unwrap();
            let left = dsign(&ab, 4);
            let right = dsign(&a, 4).concat(&dsign(&b, 4)).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn zero_padding_is_invisible(y in arb_series(2, 4), at in 0usize..5, zeros in 1usize..3) {
            let mut rows: Vec<Vec<BigRational>> = y.values().to_vec();
            let at = at.min(rows.len());
            for _ in 0..zeros {
                rows.insert(at, vec![int(0); 2]);
            }
            let padded = TimeSeries::increments(2, rows).unwrap();
            prop_assert_eq!(dsign(&padded, 4), dsign(&y, 4));
        }

        #[test]
        fn translation_invariance(x in arb_series(2, 4), c in prop::collection::vec(-9i64..=9, 2)) {
            let shifted: Vec<Vec<BigRational>> = x
                .values()
                .iter()
                .map(|r| r.iter().zip(&c).map(|(v, s)| v + int(*s)).collect())
                .collect();
            let shifted = TimeSeries::path(2, shifted).unwrap();
            prop_assert_eq!(dsign_from_path(&x, 3), dsign(&shifted, 3));
        }

        #[test]
        fn log_signature_is_lie(y in arb_series(2, 3)) {
            let l = log_signature(&y, 4);
            prop_assert!(l.is_lie_shuffle());
            let s = dsign(&y, 4);
            for m in monomials_up_to(2, 4) {
                let x = Word::letter(m);
                prop_assert_eq!(l.coefficient(&x), s.coefficient(&x));
            }
        }
    }
}
