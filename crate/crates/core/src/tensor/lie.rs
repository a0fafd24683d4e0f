//! Lie elements, eulerian maps, and the membership tests for the shuffle and
//! quasi-shuffle groups and for the Lie algebra.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::products::{product_with, quasi_shuffle, shuffle, WordSum};
use super::Tensor;
use crate::error::{Error, Result};
use crate::rational::format_rational;
use crate::words::{compositions, words_up_to, Word};

/// Right-nested bracketing `𝔩_w = [e_1, 𝔩_{e_2 … e_k}]`, with `𝔩_I = I`.
pub fn lie_element(dim: usize, height: usize, w: &Word) -> Result<Tensor> {
    let letters = w.letters();
    let Some((last, init)) = letters.split_last() else {
        return Err(Error::EmptyWord);
    };
    let mut acc = Tensor::from_word(dim, height, Word::letter(last.clone()))?;
    for letter in init.iter().rev() {
        let e = Tensor::from_word(dim, height, Word::letter(letter.clone()))?;
        acc = e.bracket(&acc)?;
    }
    Ok(acc)
}

/// `Σ_{n=1}^{|w|} ((-1)^{n-1}/n) Σ_{w = u_1 • … • u_n} u_1 ⋆ … ⋆ u_n`, summed
/// over decompositions into nonempty consecutive factors.
fn eulerian(w: &Word, contract: bool) -> Vec<(Word, BigRational)> {
    if w.is_empty() {
        return Vec::new();
    }
    let mut by_word: std::collections::BTreeMap<Word, BigRational> = Default::default();
    for a in compositions(w.len()) {
        let n = a.len();
        let mut start = 0;
        let mut acc = WordSum::new();
        acc.insert(Word::empty(), 1);
        for &part in a.parts() {
            let factor = w.slice(start, start + part);
            acc = product_with(&acc, &factor, contract);
            start += part;
        }
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let weight = BigRational::new(BigInt::from(sign), BigInt::from(n));
        for (x, m) in acc {
            let c = &weight * BigRational::from_integer(BigInt::from(m));
            let entry = by_word.entry(x).or_insert_with(BigRational::zero);
            *entry += c;
        }
    }
    by_word.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// The truncated shuffle eulerian map applied to a single word.
pub fn eulerian_shuffle(dim: usize, height: usize, w: &Word) -> Result<Tensor> {
    Tensor::from_terms(dim, height, eulerian(w, false))
}

/// The truncated quasi-shuffle eulerian map applied to a single word.
pub fn eulerian_qshuffle(dim: usize, height: usize, w: &Word) -> Result<Tensor> {
    Tensor::from_terms(dim, height, eulerian(w, true))
}

/// Which commutative product a membership test uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Product {
    Shuffle,
    QuasiShuffle,
}

impl Product {
    fn apply(self, w: &Word, v: &Word) -> WordSum {
        match self {
            Product::Shuffle => shuffle(w, v),
            Product::QuasiShuffle => quasi_shuffle(w, v),
        }
    }
}

/// The first relation that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ConstantTerm(BigRational),
    Pair {
        left: Word,
        right: Word,
        paired: BigRational,
        expected: BigRational,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ConstantTerm(c) => {
                write!(f, "constant coefficient is {}", format_rational(c))
            }
            Violation::Pair {
                left,
                right,
                paired,
                expected,
            } => write!(
                f,
                "pair ({left}, {right}): product pairs to {} but {} was expected",
                format_rational(paired),
                format_rational(expected)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    /// Number of word-pair relations evaluated (stops at the first failure).
    pub relations_checked: usize,
    pub violation: Option<Violation>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "PASS ({} relations checked)", self.relations_checked),
            Some(v) => write!(f, "FAIL after {} relations: {v}", self.relations_checked),
        }
    }
}

/// Unordered pairs of nonempty words with height sum at most `h`.
fn word_pairs(dim: usize, h: usize) -> Vec<(Word, Word)> {
    let words: Vec<Word> = words_up_to(dim, h.saturating_sub(1))
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect();
    let mut pairs = Vec::new();
    for (i, a) in words.iter().enumerate() {
        for b in &words[i..] {
            if a.height() + b.height() > h {
                // words are sorted by height
                break;
            }
            pairs.push((a.clone(), b.clone()));
        }
    }
    pairs
}

impl Tensor {
    /// Checks `⟨v, ε⟩ = 1` and `⟨v, w ⋆ u⟩ = ⟨v, w⟩⟨v, u⟩` for all word pairs
    /// with height sum at most the bound.
    pub fn check_grouplike(&self, product: Product) -> CheckReport {
        let c = self.constant();
        if !c.is_one() {
            return CheckReport {
                relations_checked: 0,
                violation: Some(Violation::ConstantTerm(c)),
            };
        }
        let mut checked = 0;
        for (a, b) in word_pairs(self.dim, self.height) {
            checked += 1;
            let paired = self.pair_word_sum(&product.apply(&a, &b));
            let expected = self.coefficient(&a) * self.coefficient(&b);
            if paired != expected {
                return CheckReport {
                    relations_checked: checked,
                    violation: Some(Violation::Pair {
                        left: a,
                        right: b,
                        paired,
                        expected,
                    }),
                };
            }
        }
        CheckReport {
            relations_checked: checked,
            violation: None,
        }
    }

    /// Checks `⟨v, ε⟩ = 0` and `⟨v, u ⧢ k⟩ = 0` for all nonempty pairs.
    pub fn check_lie_shuffle(&self) -> CheckReport {
        let c = self.constant();
        if !c.is_zero() {
            return CheckReport {
                relations_checked: 0,
                violation: Some(Violation::ConstantTerm(c)),
            };
        }
        let mut checked = 0;
        for (a, b) in word_pairs(self.dim, self.height) {
            checked += 1;
            let paired = self.pair_word_sum(&shuffle(&a, &b));
            if !paired.is_zero() {
                return CheckReport {
                    relations_checked: checked,
                    violation: Some(Violation::Pair {
                        left: a,
                        right: b,
                        paired,
                        expected: BigRational::zero(),
                    }),
                };
            }
        }
        CheckReport {
            relations_checked: checked,
            violation: None,
        }
    }

    pub fn is_grouplike_shuffle(&self) -> bool {
        self.check_grouplike(Product::Shuffle).passed()
    }

    pub fn is_grouplike_qshuffle(&self) -> bool {
        self.check_grouplike(Product::QuasiShuffle).passed()
    }

    pub fn is_lie_shuffle(&self) -> bool {
        self.check_lie_shuffle().passed()
    }

    /// Eulerian shuffle map extended linearly.
    pub fn eulerian_shuffle(&self) -> Tensor {
        self.map_words(|w, c, out| {
            for (x, a) in eulerian(w, false) {
                out.accumulate(x, a * c);
            }
        })
    }

    /// Eulerian quasi-shuffle map extended linearly.
    pub fn eulerian_qshuffle(&self) -> Tensor {
        self.map_words(|w, c, out| {
            for (x, a) in eulerian(w, true) {
                out.accumulate(x, a * c);
            }
        })
    }
}
