//! Recovering a quasi-shuffle group-like element from its top homogeneous
//! component.
//!
//! If `w` is group-like of height `h` and `v` its height-`h` part, then
//! `⟨v, 1^{⧢̄h}⟩ = ⟨w, 1⟩^h` and, for `u` of height `l < h`,
//! `⟨v, u ⧢̄ 1^{⧢̄(h-l)}⟩ = ⟨w, u⟩ ⟨w, 1⟩^{h-l}`. A root of the first equation
//! fixes everything else.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::alphabet::Monomial;
use crate::error::{Error, Result};
use crate::rational::format_rational;
use crate::tensor::quasi_shuffle;
use crate::tensor::{Tensor, WordSum};
use crate::words::{words_up_to, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    /// `⟨top, 1^{⧢̄h}⟩`.
    pub leading: BigRational,
    /// Number of preimages over an algebraically closed field.
    pub multiplicity: usize,
    /// One preimage per rational `h`-th root of `leading`.
    pub preimages: Vec<Tensor>,
}

fn quasi_power_of_one(m: usize) -> WordSum {
    let one = Word::letter(Monomial::var(1));
    let mut acc = WordSum::new();
    acc.insert(Word::empty(), 1);
    for _ in 0..m {
        let mut next = WordSum::new();
        for (x, n) in &acc {
            for (y, k) in quasi_shuffle(x, &one) {
                *next.entry(y).or_insert(0) += n * k;
            }
        }
        acc = next;
    }
    acc
}

fn exact_root(n: &BigInt, h: u32) -> Option<BigInt> {
    let r = n.nth_root(h);
    (num_traits::pow(r.clone(), h as usize) == *n).then_some(r)
}

/// Rational solutions of `r^h = c`.
fn rational_roots(c: &BigRational, h: usize) -> Vec<BigRational> {
    let h32 = h as u32;
    let negative = c.is_negative();
    if negative && h.is_multiple_of(2) {
        return Vec::new();
    }
    let (Some(p), Some(q)) = (exact_root(&c.numer().abs(), h32), exact_root(c.denom(), h32)) else {
        return Vec::new();
    };
    let r = BigRational::new(p, q);
    if negative {
        vec![-r]
    } else if h.is_multiple_of(2) {
        vec![r.clone(), -r]
    } else {
        vec![r]
    }
}

/// Preimages of a homogeneous height-`h` tensor under the projection of the
/// quasi-shuffle group onto its top level (`h` is the tensor's bound).
pub fn fiber_reconstruct(top: &Tensor) -> Result<Fiber> {
    let h = top.height_bound();
    if h == 0 {
        return Err(Error::invalid("the top level must have positive height"));
    }
    if let Some((w, _)) = top.terms().find(|(w, _)| w.height() != h) {
        return Err(Error::invalid(format!("top has a term on {w}, of height below {h}")));
    }
    let leading = top.pair_word_sum(&quasi_power_of_one(h));
    if leading.is_zero() {
        return Err(Error::NonGenericFiber(format!(
            "⟨top, 1^{h}⟩ = {}",
            format_rational(&leading)
        )));
    }
    let powers: Vec<WordSum> = (0..h).map(quasi_power_of_one).collect();
    let lower: Vec<Word> = words_up_to(top.dim(), h - 1)
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect();
    // ⟨top, u ⧢̄ 1^{h-l}⟩ does not depend on the root
    let pairings: Vec<BigRational> = lower
        .iter()
        .map(|u| {
            let mut sum = WordSum::new();
            for (x, n) in &powers[h - u.height()] {
                for (y, k) in quasi_shuffle(u, x) {
                    *sum.entry(y).or_insert(0) += n * k;
                }
            }
            top.pair_word_sum(&sum)
        })
        .collect();
    let preimages = rational_roots(&leading, h)
        .into_iter()
        .map(|r| {
            let mut w = top.clone();
            w.add_term(Word::empty(), BigRational::one())?;
            for (u, p) in lower.iter().zip(&pairings) {
                let scale = num_traits::pow(r.clone(), h - u.height());
                w.add_term(u.clone(), p / scale)?;
            }
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Fiber {
        leading,
        multiplicity: h,
        preimages,
    })
}
