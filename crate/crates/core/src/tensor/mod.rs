//! Truncated tensors over the monomial alphabet with exact rational
//! coefficients, and the algebra built on top of them.
//!
//! A [`Tensor`] lives in `T^{≤h}(𝔄_d)`: it carries its dimension `d` and
//! height bound `h`, and stores only nonzero coefficients of words of height
//! at most `h`. Products truncate eagerly.

mod hoffman;
mod lie;
mod products;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::format_rational;
use crate::words::Word;

pub use hoffman::ordered_factorizations;
pub use lie::{eulerian_qshuffle, eulerian_shuffle, lie_element, CheckReport, Product, Violation};
pub use products::{quasi_shuffle, shuffle, WordSum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    dim: usize,
    height: usize,
    terms: BTreeMap<Word, BigRational>,
}

impl Tensor {
    pub fn zero(dim: usize, height: usize) -> Self {
        Self {
            dim,
            height,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `ε`.
    pub fn unit(dim: usize, height: usize) -> Self {
        let mut t = Self::zero(dim, height);
        t.terms.insert(Word::empty(), BigRational::one());
        t
    }

    pub fn from_word(dim: usize, height: usize, word: Word) -> Result<Self> {
        Self::from_terms(dim, height, [(word, BigRational::one())])
    }

    /// Sums the given terms; every word must lie in the space.
    pub fn from_terms<I>(dim: usize, height: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, BigRational)>,
    {
        let mut t = Self::zero(dim, height);
        for (w, c) in terms {
            t.check_word(&w)?;
            t.accumulate(w, c);
        }
        Ok(t)
    }

    /// Embeds a word sum, dropping words above the height bound.
    pub fn from_word_sum(dim: usize, height: usize, sum: &WordSum) -> Self {
        let mut t = Self::zero(dim, height);
        for (w, &n) in sum {
            if w.height() <= height {
                t.accumulate(w.clone(), BigRational::from_integer(BigInt::from(n)));
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn height_bound(&self) -> usize {
        self.height
    }

    /// Nonzero terms in canonical order (height, then lexicographic).
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `⟨self, w⟩`.
    pub fn coefficient(&self, w: &Word) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `⟨self, ε⟩`.
    pub fn constant(&self) -> BigRational {
        self.coefficient(&Word::empty())
    }

    /// Bilinear pairing `Σ_w ⟨self, w⟩⟨other, w⟩`.
    pub fn pair(&self, other: &Tensor) -> BigRational {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .terms
            .iter()
            .filter_map(|(w, c)| large.terms.get(w).map(|d| c * d))
            .sum()
    }

    /// Pairs against an integer combination of words.
    pub fn pair_word_sum(&self, sum: &WordSum) -> BigRational {
        sum.iter()
            .filter_map(|(w, &n)| {
                self.terms
                    .get(w)
                    .map(|c| c * BigRational::from_integer(BigInt::from(n)))
            })
            .sum()
    }

    pub(crate) fn check_word(&self, w: &Word) -> Result<()> {
        if w.height() > self.height || w.max_index() as usize > self.dim {
            return Err(Error::OutOfSpace {
                word: w.to_string(),
                dim: self.dim,
                height: self.height,
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Tensor) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.height != other.height {
            return Err(Error::HeightMismatch {
                left: self.height,
                right: other.height,
            });
        }
        Ok(())
    }

    /// Adds `c · w` without bounds checks; drops the term if it cancels.
    pub(crate) fn accumulate(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `c · w` after checking that `w` lies in the space.
    pub fn add_term(&mut self, w: Word, c: BigRational) -> Result<()> {
        self.check_word(&w)?;
        self.accumulate(w, c);
        Ok(())
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.accumulate(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Tensor {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, s: &BigRational) -> Tensor {
        if s.is_zero() {
            return Self::zero(self.dim, self.height);
        }
        Tensor {
            dim: self.dim,
            height: self.height,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    /// `π^k`: the homogeneous part of height exactly `k`.
    pub fn project_level(&self, k: usize) -> Tensor {
        Tensor {
            dim: self.dim,
            height: self.height,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.height() == k)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-embeds into `T^{≤h}`; terms above `h` are dropped.
    pub fn truncate(&self, h: usize) -> Tensor {
        Tensor {
            dim: self.dim,
            height: h,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.height() <= h)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Truncated concatenation product `•_h`.
    pub fn concat(&self, other: &Tensor) -> Result<Tensor> {
        self.check_compatible(other)?;
        Ok(self.concat_unchecked(other))
    }

    fn concat_unchecked(&self, other: &Tensor) -> Tensor {
        let mut out = Self::zero(self.dim, self.height);
        for (w, a) in &self.terms {
            let budget = self.height - w.height();
            for (v, b) in &other.terms {
                if v.height() > budget {
                    // terms are sorted by height
                    break;
                }
                out.accumulate(w.concat(v), a * b);
            }
        }
        out
    }

    /// Truncated exponential `Σ_n v^n / n!`; requires `⟨v, ε⟩ = 0`.
    pub fn exp(&self) -> Result<Tensor> {
        let c = self.constant();
        if !c.is_zero() {
            return Err(Error::ConstantTerm {
                expected: "0".into(),
                found: format_rational(&c),
            });
        }
        let mut out = Self::unit(self.dim, self.height);
        let mut power = Self::unit(self.dim, self.height);
        for n in 1..=self.height {
            power = power.concat_unchecked(self);
            if power.is_zero() {
                break;
            }
            let factor = BigRational::new(BigInt::one(), factorial(n));
            out = out.add(&power.scale(&factor))?;
        }
        Ok(out)
    }

    /// Truncated logarithm `Σ_n (-1)^{n-1} (v - ε)^n / n`; requires `⟨v, ε⟩ = 1`.
    pub fn log(&self) -> Result<Tensor> {
        let c = self.constant();
        if !c.is_one() {
            return Err(Error::ConstantTerm {
                expected: "1".into(),
                found: format_rational(&c),
            });
        }
        let reduced = self.sub(&Self::unit(self.dim, self.height))?;
        let mut out = Self::zero(self.dim, self.height);
        let mut power = Self::unit(self.dim, self.height);
        for n in 1..=self.height {
            power = power.concat_unchecked(&reduced);
            if power.is_zero() {
                break;
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let factor = BigRational::new(BigInt::from(sign), BigInt::from(n));
            out = out.add(&power.scale(&factor))?;
        }
        Ok(out)
    }

    /// Lie bracket `[self, other] = self • other − other • self`.
    pub fn bracket(&self, other: &Tensor) -> Result<Tensor> {
        self.check_compatible(other)?;
        Ok(self
            .concat_unchecked(other)
            .sub(&other.concat_unchecked(self))
            .expect("same space"))
    }

    pub(crate) fn map_words<F>(&self, mut f: F) -> Tensor
    where
        F: FnMut(&Word, &BigRational, &mut Tensor),
    {
        let mut out = Self::zero(self.dim, self.height);
        for (w, c) in &self.terms {
            f(w, c, &mut out);
        }
        out
    }
}

pub(crate) fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{}·{w}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: Word,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorJson {
    dim: usize,
    height: usize,
    terms: Vec<TermJson>,
}

impl Tensor {
    /// Canonical JSON: terms sorted by (height, word), reduced fractions with
    /// positive denominators.
    pub fn to_json(&self) -> String {
        let json = TensorJson {
            dim: self.dim,
            height: self.height,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| TermJson {
                    word: w.clone(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        };
        serde_json::to_string(&json).expect("tensor serialisation cannot fail")
    }

    pub fn to_json_pretty(&self) -> String {
        let value: serde_json::Value = serde_json::from_str(&self.to_json()).expect("round trip of own output");
        serde_json::to_string_pretty(&value).expect("tensor serialisation cannot fail")
    }

    /// Parses the JSON tensor format; fractions are normalised, zero terms
    /// dropped, repeated words rejected.
    pub fn from_json(s: &str) -> Result<Tensor> {
        let json: TensorJson =
            serde_json::from_str(s).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
        let mut t = Tensor::zero(json.dim, json.height);
        let mut seen = std::collections::BTreeSet::new();
        for (i, term) in json.terms.into_iter().enumerate() {
            let at = |msg: String| Error::invalid(format!("term {i}: {msg}"));
            let num: BigInt = term
                .num
                .parse()
                .map_err(|_| at(format!("bad numerator {:?}", term.num)))?;
            let den: BigInt = term
                .den
                .parse()
                .map_err(|_| at(format!("bad denominator {:?}", term.den)))?;
            if !den.is_positive() {
                return Err(at("denominator must be positive".into()));
            }
            if !seen.insert(term.word.clone()) {
                return Err(at(format!("repeated word {}", term.word)));
            }
            t.check_word(&term.word).map_err(|e| at(e.to_string()))?;
            t.accumulate(term.word, BigRational::new(num, den));
        }
        Ok(t)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    pub(crate) fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    /// Builds a tensor from `(num, den, word)` triples.
    pub(crate) fn t(dim: usize, h: usize, terms: &[(i64, i64, &str)]) -> Tensor {
        Tensor::from_terms(dim, h, terms.iter().map(|&(n, d, s)| (w(s), ratio(n, d)))).unwrap()
    }

    #[test]
    fn linear_examples() {
        let a = t(1, 2, &[(2, 1, "1")]);
        let b = t(1, 2, &[(3, 1, "1")]);
        assert_eq!(a.add(&b).unwrap(), t(1, 2, &[(5, 1, "1")]));
        let x = t(1, 2, &[(1, 1, ""), (6, 1, "1"), (14, 1, "11")]);
        assert!(x.scale(&int(0)).is_zero());
        assert_eq!(x.scale(&int(0)).len(), 0);
        assert_eq!(x.project_level(2), t(1, 2, &[(14, 1, "11")]));
        assert_eq!(x.coefficient(&w("1.1")), int(0));
        assert_eq!(x.constant(), int(1));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = t(2, 2, &[(1, 1, "1.2")]);
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn mismatch_errors() {
        let a = Tensor::zero(2, 2);
        assert!(matches!(
            a.add(&Tensor::zero(3, 2)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            a.concat(&Tensor::zero(2, 3)),
            Err(Error::HeightMismatch { .. })
        ));
        assert!(matches!(
            Tensor::from_word(2, 2, w("1.1.1")),
            Err(Error::OutOfSpace { .. })
        ));
        assert!(Tensor::from_word(2, 2, w("3")).is_err());
    }

    #[test]
    fn concat_examples() {
        let one = t(2, 3, &[(1, 1, "1")]);
        let two = t(2, 3, &[(1, 1, "2")]);
        assert_eq!(one.concat(&two).unwrap(), t(2, 3, &[(1, 1, "1.2")]));
        let a = t(2, 2, &[(1, 1, "11")]);
        let b = t(2, 2, &[(1, 1, "12")]);
        assert!(a.concat(&b).unwrap().is_zero());
        let x = t(2, 2, &[(1, 1, ""), (1, 1, "1")]);
        let y = t(2, 2, &[(1, 1, ""), (1, 1, "2")]);
        assert_eq!(
            x.concat(&y).unwrap(),
            t(2, 2, &[(1, 1, ""), (1, 1, "1"), (1, 1, "2"), (1, 1, "1.2")])
        );
    }

    #[test]
    fn exp_log_examples() {
        let one = t(1, 2, &[(1, 1, "1")]);
        assert_eq!(one.exp().unwrap(), t(1, 2, &[(1, 1, ""), (1, 1, "1"), (1, 2, "1.1")]));
        let g = t(1, 2, &[(1, 1, ""), (1, 1, "1")]);
        assert_eq!(g.log().unwrap(), t(1, 2, &[(1, 1, "1"), (-1, 2, "1.1")]));
        let v = t(2, 3, &[(1, 1, "1"), (1, 1, "2"), (1, 1, "12")]);
        assert_eq!(v.exp().unwrap().log().unwrap(), v);
        assert!(matches!(g.exp(), Err(Error::ConstantTerm { .. })));
        assert!(matches!(one.log(), Err(Error::ConstantTerm { .. })));
    }

    #[test]
    fn json_format() {
        let x = t(2, 2, &[(1, 1, ""), (-1, 2, "12"), (3, 1, "2.1")]);
        let s = x.to_json();
        assert_eq!(
            s,
            r#"{"dim":2,"height":2,"terms":[{"word":[],"num":"1","den":"1"},{"word":[[2],[1]],"num":"3","den":"1"},{"word":[[1,2]],"num":"-1","den":"2"}]}"#
        );
        assert_eq!(Tensor::from_json(&s).unwrap(), x);
        assert_eq!(Tensor::from_json(&x.to_json_pretty()).unwrap(), x);
    }

    #[test]
    fn json_rejects_bad_input() {
        let bad_den = r#"{"dim":1,"height":1,"terms":[{"word":[[1]],"num":"1","den":"0"}]}"#;
        assert!(Tensor::from_json(bad_den).is_err());
        let too_high = r#"{"dim":1,"height":1,"terms":[{"word":[[1,1]],"num":"1","den":"1"}]}"#;
        assert!(Tensor::from_json(too_high).is_err());
        let repeated =
            r#"{"dim":1,"height":1,"terms":[{"word":[[1]],"num":"1","den":"1"},{"word":[[1]],"num":"1","den":"1"}]}"#;
        assert!(Tensor::from_json(repeated).is_err());
        match Tensor::from_json("{\"dim\": 1,\n \"height\": }") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        // non-reduced input is normalised
        let loose = r#"{"dim":1,"height":1,"terms":[{"word":[[1]],"num":"2","den":"4"}]}"#;
        assert_eq!(Tensor::from_json(loose).unwrap(), t(1, 1, &[(1, 2, "1")]));
    }

    #[test]
    fn display() {
        let x = t(2, 2, &[(1, 1, ""), (-1, 2, "12"), (3, 1, "2.1"), (1, 1, "1")]);
        assert_eq!(x.to_string(), "1 + 1 + 3·2•1 - 1/2·12");
    }

    pub(crate) fn arb_tensor(dim: usize, h: usize, with_constant: Option<i64>) -> impl Strategy<Value = Tensor> {
        let words: Vec<Word> = crate::words::words_up_to(dim, h)
            .into_iter()
            .filter(|w| !w.is_empty())
            .collect();
        let n = words.len();
        prop::collection::vec((0..n, -5i64..=5, 1i64..=3), 0..8).prop_map(move |entries| {
            let mut x = Tensor::zero(dim, h);
            if let Some(c) = with_constant {
                x.accumulate(Word::empty(), int(c));
            }
            for (i, a, b) in entries {
                x.accumulate(words[i].clone(), ratio(a, b));
            }
            x
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn exp_log_inverse(v in arb_tensor(2, 4, None), g in arb_tensor(2, 4, Some(1))) {
            prop_assert_eq!(v.exp().unwrap().log().unwrap(), v);
            prop_assert_eq!(g.log().unwrap().exp().unwrap(), g);
        }

        #[test]
        fn concat_associative_with_unit(
            a in arb_tensor(2, 3, Some(1)),
            b in arb_tensor(2, 3, None),
            c in arb_tensor(2, 3, Some(2)),
        ) {
            let unit = Tensor::unit(2, 3);
            prop_assert_eq!(a.concat(&unit).unwrap(), a.clone());
            prop_assert_eq!(unit.concat(&a).unwrap(), a.clone());
            let left = a.concat(&b).unwrap().concat(&c).unwrap();
            let right = a.concat(&b.concat(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn json_round_trip(a in arb_tensor(3, 3, Some(1))) {
            let s = a.to_json();
            let back = Tensor::from_json(&s).unwrap();
            prop_assert_eq!(back.to_json(), s);
            prop_assert_eq!(back, a);
        }
    }
}
