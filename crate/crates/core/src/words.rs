//! Words over the monomial alphabet, compositions, contraction, and Lyndon
//! words with the height grading.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::alphabet::{monomials_of_degree, monomials_up_to, Monomial};
use crate::error::{Error, Result};

/// A finite sequence of monomials. The empty word is the unit `ε`.
///
/// Words are ordered by height first and then lexicographically (a proper
/// prefix precedes its extensions). This is the canonical order used for
/// serialising tensors; [`Word::lex_cmp`] is the pure lexicographic order
/// used by the Lyndon layer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Monomial>", into = "Vec<Monomial>")]
pub struct Word {
    letters: Vec<Monomial>,
    height: usize,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(letters: Vec<Monomial>) -> Self {
        let height = letters.iter().map(Monomial::degree).sum();
        Self { letters, height }
    }

    pub fn letter(m: Monomial) -> Self {
        Self::new(vec![m])
    }

    /// Parses `"12.3"` style notation: letters in digit notation separated by
    /// `.`; the empty string or `"e"` is the empty word.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "ε" {
            return Ok(Self::empty());
        }
        s.split(['.', '•'])
            .map(Monomial::from_digits)
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn letters(&self) -> &[Monomial] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of the letter degrees.
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn max_index(&self) -> u16 {
        self.letters.iter().map(Monomial::max_index).max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word {
            letters,
            height: self.height + other.height,
        }
    }

    pub fn push(&mut self, m: Monomial) {
        self.height += m.degree();
        self.letters.push(m);
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word {
            letters,
            height: self.height,
        }
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word::new(self.letters[start..end].to_vec())
    }

    /// Contracts consecutive blocks of letters of sizes `a_1, …, a_l` by
    /// multiset union.
    pub fn contract(&self, a: &Composition) -> Result<Word> {
        if a.weight() != self.len() {
            return Err(Error::WeightMismatch {
                weight: a.weight(),
                length: self.len(),
            });
        }
        let mut letters = Vec::with_capacity(a.len());
        let mut start = 0;
        for &part in a.parts() {
            let block = &self.letters[start..start + part];
            let merged = block[1..].iter().fold(block[0].clone(), |acc, m| acc.union(m));
            letters.push(merged);
            start += part;
        }
        Ok(Word {
            letters,
            height: self.height,
        })
    }

    /// Lexicographic comparison induced by the alphabet order.
    pub fn lex_cmp(&self, other: &Word) -> Ordering {
        self.letters.cmp(&other.letters)
    }

    /// Nonempty and strictly smaller than each of its proper suffixes.
    pub fn is_lyndon(&self) -> bool {
        let n = self.len();
        n > 0 && (1..n).all(|i| self.letters[..] < self.letters[i..])
    }

    /// Unique factorization into a lexicographically nonincreasing sequence of
    /// Lyndon words (Duval's algorithm).
    pub fn lyndon_factorize(&self) -> Result<Vec<Word>> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let s = &self.letters;
        let n = s.len();
        let mut factors = Vec::new();
        let mut i = 0;
        while i < n {
            let (mut j, mut k) = (i + 1, i);
            while j < n && s[k] <= s[j] {
                if s[k] < s[j] {
                    k = i;
                } else {
                    k += 1;
                }
                j += 1;
            }
            while i <= k {
                factors.push(Word::new(s[i..i + j - k].to_vec()));
                i += j - k;
            }
        }
        Ok(factors)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height
            .cmp(&other.height)
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Monomial>> for Word {
    fn from(letters: Vec<Monomial>) -> Self {
        Word::new(letters)
    }
}

impl From<Word> for Vec<Monomial> {
    fn from(w: Word) -> Self {
        w.letters
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        for (i, m) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, "•")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// All words over `MS_d` of height exactly `k`, in canonical order.
pub fn words_of_height(d: usize, k: usize) -> Vec<Word> {
    if k == 0 {
        return vec![Word::empty()];
    }
    // by_height[j] = words of height j
    let mut by_height: Vec<Vec<Word>> = vec![vec![Word::empty()]];
    let letters: Vec<Vec<Monomial>> = (0..=k).map(|j| monomials_of_degree(d, j)).collect();
    for j in 1..=k {
        let mut level = Vec::new();
        for first in 1..=j {
            for m in &letters[first] {
                for rest in &by_height[j - first] {
                    let mut w = Word::letter(m.clone());
                    w = w.concat(rest);
                    level.push(w);
                }
            }
        }
        level.sort();
        by_height.push(level);
    }
    by_height.pop().unwrap()
}

/// All words of height `0..=h` (including `ε`), in canonical order.
pub fn words_up_to(d: usize, h: usize) -> Vec<Word> {
    (0..=h).flat_map(|k| words_of_height(d, k)).collect()
}

/// A composition of a positive integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::invalid("compositions have positive parts"));
        }
        Ok(Self { parts })
    }

    /// Composition of `k` whose partial sums are the set bits of `breaks`
    /// (bit `j` stands for the partial sum `j + 1`).
    pub fn from_breaks(k: usize, breaks: u64) -> Self {
        let mut parts = Vec::new();
        let mut last = 0;
        for j in 1..k {
            if breaks >> (j - 1) & 1 == 1 {
                parts.push(j - last);
                last = j;
            }
        }
        parts.push(k - last);
        Self { parts }
    }

    pub fn breaks(&self) -> u64 {
        let mut mask = 0;
        let mut sum = 0;
        for &p in &self.parts[..self.parts.len() - 1] {
            sum += p;
            mask |= 1 << (sum - 1);
        }
        mask
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Product of the factorials of the parts.
    pub fn factorial_product(&self) -> BigInt {
        self.parts
            .iter()
            .map(|&p| (1..=p).map(BigInt::from).product::<BigInt>())
            .product()
    }

    /// Product of the parts.
    pub fn part_product(&self) -> BigInt {
        self.parts.iter().map(|&p| BigInt::from(p)).product()
    }

    /// `(α!, Πα, ℓ(α))`.
    pub fn stats(&self) -> (BigInt, BigInt, usize) {
        (self.factorial_product(), self.part_product(), self.len())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All `2^(k-1)` compositions of `k`, in binary-reflected (Gray code) order of
/// their break sets.
pub fn compositions(k: usize) -> Vec<Composition> {
    assert!(k >= 1, "compositions of a positive integer");
    assert!(k <= 64, "break sets are stored in a u64");
    (0..1u64 << (k - 1))
        .map(|i| Composition::from_breaks(k, i ^ (i >> 1)))
        .collect()
}

/// All Lyndon words over `MS_d` of height at most `h`, in canonical order.
///
/// Backtracking over the graded alphabet with a height budget; prefixes that
/// cannot start a Lyndon word are pruned by tracking the period of the
/// current prefix.
pub fn lyndon_words(d: usize, h: usize) -> Vec<Word> {
    let alphabet = monomials_up_to(d, h);
    let mut out = Vec::new();
    let mut prefix: Vec<Monomial> = Vec::new();

    fn extend(alphabet: &[Monomial], budget: usize, period: usize, prefix: &mut Vec<Monomial>, out: &mut Vec<Word>) {
        let n = prefix.len();
        for a in alphabet {
            if a.degree() > budget {
                break;
            }
            let new_period = if n == 0 {
                1
            } else {
                match a.cmp(&prefix[n - period]) {
                    Ordering::Less => continue,
                    Ordering::Equal => period,
                    Ordering::Greater => n + 1,
                }
            };
            prefix.push(a.clone());
            if new_period == n + 1 {
                out.push(Word::new(prefix.clone()));
            }
            extend(alphabet, budget - a.degree(), new_period, prefix, out);
            prefix.pop();
        }
    }

    extend(&alphabet, h, 1, &mut prefix, &mut out);
    out.sort();
    out
}

/// Number-theoretic Möbius function.
pub fn mobius(n: u64) -> i32 {
    assert!(n >= 1);
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |k| n.is_multiple_of(*k))
}

/// Classical necklace count `(1/h) Σ_{k|h} μ(h/k) d^k`.
pub fn mu_classic(d: usize, h: usize) -> BigUint {
    assert!(d >= 1 && h >= 1);
    let total: BigInt = divisors(h)
        .map(|k| BigInt::from(mobius((h / k) as u64)) * BigInt::from(d).pow(k as u32))
        .sum();
    (total / BigInt::from(h))
        .to_biguint()
        .expect("necklace counts are nonnegative")
}

/// `n Σ_{α ⊨ n} (1/ℓ(α)) Π_i binom(α_i + d - 1, d - 1)`, which is an integer.
///
/// The inner sum is grouped by the number of parts: `by_len[l]` accumulates
/// `Π binom(...)` over compositions of the current weight with `l` parts.
fn weighted_composition_sum(d: usize, n: usize) -> Result<BigInt> {
    let letters: Vec<BigInt> = (0..=n)
        .map(|j| {
            if j == 0 {
                BigInt::zero()
            } else {
                binomial(BigInt::from(j + d - 1), BigInt::from(d - 1))
            }
        })
        .collect();
    // table[w][l]: sum over compositions of w with l parts
    let mut table = vec![vec![BigInt::zero(); n + 1]; n + 1];
    table[0][0] = BigInt::one();
    for w in 1..=n {
        for l in 1..=w {
            let mut acc = BigInt::zero();
            for first in 1..=w - l + 1 {
                if !table[w - first][l - 1].is_zero() {
                    acc += &letters[first] * &table[w - first][l - 1];
                }
            }
            table[w][l] = acc;
        }
    }
    let sum: BigRational = (1..=n)
        .map(|l| BigRational::new(table[n][l].clone(), BigInt::from(l)))
        .sum();
    let scaled = sum * BigRational::from_integer(BigInt::from(n));
    if !scaled.is_integer() {
        return Err(Error::Internal(format!(
            "weighted composition sum for d={d}, n={n} is not an integer: {scaled}"
        )));
    }
    Ok(scaled.to_integer())
}

/// Number of Lyndon words of height exactly `h` over `MS_d`, by Möbius
/// inversion of the height generating function.
pub fn lambda(d: usize, h: usize) -> Result<BigUint> {
    if d == 0 || h == 0 {
        return Err(Error::invalid("lambda needs d >= 1 and h >= 1"));
    }
    let mut h_lambda = BigInt::zero();
    for k in divisors(h) {
        let mu = mobius((h / k) as u64);
        if mu != 0 {
            h_lambda += BigInt::from(mu) * weighted_composition_sum(d, k)?;
        }
    }
    let (q, r) = num_integer::Integer::div_rem(&h_lambda, &BigInt::from(h));
    if !r.is_zero() || q.is_negative() {
        return Err(Error::Internal(format!(
            "h*lambda = {h_lambda} is not a nonnegative multiple of h = {h}"
        )));
    }
    Ok(q.to_biguint().expect("checked nonnegative"))
}

/// Convenience for small values.
pub fn lambda_u64(d: usize, h: usize) -> Result<u64> {
    lambda(d, h)?
        .to_u64()
        .ok_or_else(|| Error::invalid("lambda value exceeds u64"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn height_examples() {
        assert_eq!(Word::empty().height(), 0);
        assert_eq!(w("12.3").height(), 3);
        assert_eq!(w("1.1.11").height(), 4);
    }

    #[test]
    fn concat_examples() {
        assert_eq!(w("1.2").concat(&w("3")), w("1.2.3"));
        assert_eq!(Word::empty().concat(&w("12")), w("12"));
        assert_eq!(w("1").concat(&w("1")), w("1.1"));
    }

    #[test]
    fn contract_examples() {
        let c = |p: &[usize]| Composition::new(p.to_vec()).unwrap();
        assert_eq!(w("1.2.3").contract(&c(&[2, 1])).unwrap(), w("12.3"));
        assert_eq!(w("1.2").contract(&c(&[1, 1])).unwrap(), w("1.2"));
        assert_eq!(w("1.2.3").contract(&c(&[3])).unwrap(), w("123"));
        assert!(matches!(w("1.2").contract(&c(&[3])), Err(Error::WeightMismatch { .. })));
    }

    #[test]
    fn composition_listing() {
        assert_eq!(compositions(1), vec![Composition::new(vec![1]).unwrap()]);
        let c3: Vec<String> = compositions(3).iter().map(|c| c.to_string()).collect();
        assert_eq!(c3.len(), 4);
        for expected in ["(3)", "(2,1)", "(1,2)", "(1,1,1)"] {
            assert!(c3.contains(&expected.to_string()));
        }
        assert_eq!(compositions(4).len(), 8);
        for k in 1..=8 {
            for c in compositions(k) {
                assert_eq!(c.weight(), k);
                assert_eq!(Composition::from_breaks(k, c.breaks()), c);
            }
        }
    }

    #[test]
    fn composition_stats() {
        let s = |p: &[usize]| {
            let (f, q, l) = Composition::new(p.to_vec()).unwrap().stats();
            (f.to_u64().unwrap(), q.to_u64().unwrap(), l)
        };
        assert_eq!(s(&[2, 1]), (2, 2, 2));
        assert_eq!(s(&[3]), (6, 3, 1));
        assert_eq!(s(&[1, 1, 1]), (1, 1, 3));
    }

    #[test]
    fn lyndon_examples() {
        assert!(w("1").is_lyndon());
        assert!(!w("1.1").is_lyndon());
        assert!(w("1.2").is_lyndon());
        assert!(!w("2.1").is_lyndon());
        assert!(!Word::empty().is_lyndon());
    }

    #[test]
    fn lyndon_word_listing() {
        let by_height = |d, h| {
            let mut counts = vec![0usize; h + 1];
            for x in lyndon_words(d, h) {
                counts[x.height()] += 1;
            }
            counts
        };
        assert_eq!(by_height(1, 3), vec![0, 1, 1, 2]);
        let d2 = lyndon_words(2, 2);
        let h1: Vec<_> = d2.iter().filter(|x| x.height() == 1).cloned().collect();
        assert_eq!(h1, vec![w("1"), w("2")]);
        assert_eq!(by_height(2, 2)[2], 4);
        assert_eq!(by_height(2, 3)[3], 12);
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(w("1.2").lyndon_factorize().unwrap(), vec![w("1.2")]);
        assert_eq!(w("2.1").lyndon_factorize().unwrap(), vec![w("2"), w("1")]);
        // 1•1•2 < 1•2 and 1•1•2 < 2 under the chosen order
        assert!(w("1.1.2").lex_cmp(&w("1.2")).is_lt());
        assert!(w("1.1.2").lex_cmp(&w("2")).is_lt());
        assert_eq!(w("1.1.2").lyndon_factorize().unwrap(), vec![w("1.1.2")]);
        assert_eq!(Word::empty().lyndon_factorize(), Err(Error::EmptyWord));
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(7), -1);
        assert_eq!(mobius(30), -1);
    }

    #[test]
    fn mu_classic_examples() {
        assert_eq!(mu_classic(2, 3), BigUint::from(2u32));
        for d in 1..6 {
            assert_eq!(mu_classic(d, 1), BigUint::from(d));
        }
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_u64(2, 3).unwrap(), 12);
        assert_eq!(lambda_u64(1, 2).unwrap(), 1);
        assert_eq!(lambda_u64(7, 9).unwrap(), 188856934);
        assert!(lambda(0, 3).is_err());
    }

    /// Direct enumeration over all compositions, independent of the
    /// grouped-by-length evaluation.
    fn lambda_by_enumeration(d: usize, h: usize) -> BigRational {
        let mut total = BigRational::zero();
        for k in divisors(h) {
            let mu = mobius((h / k) as u64);
            let mut inner = BigRational::zero();
            for a in compositions(k) {
                let prod: BigInt = a
                    .parts()
                    .iter()
                    .map(|&p| binomial(BigInt::from(p + d - 1), BigInt::from(d - 1)))
                    .product();
                inner += BigRational::new(prod, BigInt::from(a.len()));
            }
            total += inner * BigRational::new(BigInt::from(k as i64 * mu as i64), BigInt::from(h));
        }
        total
    }

    #[test]
    fn lambda_matches_direct_enumeration() {
        for d in 1..=5 {
            for h in 1..=8 {
                let direct = lambda_by_enumeration(d, h);
                assert!(direct.is_integer());
                assert_eq!(BigInt::from(lambda(d, h).unwrap()), direct.to_integer(), "d={d} h={h}");
            }
        }
    }

    #[test]
    fn generation_matches_formula() {
        for d in 1..=4 {
            let words = lyndon_words(d, 6);
            for k in 1..=6 {
                let count = words.iter().filter(|x| x.height() == k).count() as u64;
                assert_eq!(count, lambda_u64(d, k).unwrap(), "d={d} k={k}");
            }
        }
    }

    #[test]
    fn generated_words_pass_is_lyndon() {
        let words = lyndon_words(3, 4);
        assert!(words.iter().all(Word::is_lyndon));
        let all = words_up_to(3, 4);
        let brute: Vec<_> = all.into_iter().filter(Word::is_lyndon).collect();
        assert_eq!(brute, words);
    }

    #[test]
    fn degree_one_alphabet_matches_necklaces() {
        for d in 1..=4 {
            for h in 1..=6 {
                let count = lyndon_words(d, h)
                    .iter()
                    .filter(|x| x.len() == h && x.height() == h)
                    .count();
                assert_eq!(BigUint::from(count), mu_classic(d, h), "d={d} h={h}");
            }
        }
    }

    #[test]
    fn word_counts_match_generating_function() {
        // 1 / (1 - ((1-x)^-d - 1)) for d = 2: 1, 2, 7, 24, 82
        let counts: Vec<usize> = (0..=4).map(|k| words_of_height(2, k).len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 24, 82]);
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(prop::collection::vec(1u16..=3, 1..3), 1..6).prop_filter_map("height <= 8", |letters| {
            let w = Word::new(letters.into_iter().map(|l| Monomial::new(l).unwrap()).collect());
            (w.height() <= 8).then_some(w)
        })
    }

    proptest! {
        #[test]
        fn factorization_is_lyndon_nonincreasing(x in arb_word()) {
            let factors = x.lyndon_factorize().unwrap();
            prop_assert!(factors.iter().all(Word::is_lyndon));
            for pair in factors.windows(2) {
                prop_assert!(pair[0].lex_cmp(&pair[1]).is_ge());
            }
            let joined = factors.iter().fold(Word::empty(), |acc, f| acc.concat(f));
            prop_assert_eq!(joined, x);
        }

        #[test]
        fn contraction_preserves_height_and_indices(x in arb_word(), seed in any::<u64>()) {
            let k = x.len();
            let mask = if k > 1 { seed % (1 << (k - 1)) } else { 0 };
            let a = Composition::from_breaks(k, mask);
            let c = x.contract(&a).unwrap();
            prop_assert_eq!(c.height(), x.height());
            prop_assert_eq!(c.len(), a.len());
            let all = |w: &Word| {
                let mut v: Vec<u16> = w.letters().iter().flat_map(|m| m.indices().to_vec()).collect();
                v.sort();
                v
            };
            prop_assert_eq!(all(&c), all(&x));
        }

        #[test]
        fn height_bounds_length(x in arb_word()) {
            prop_assert!(x.len() <= x.height());
            prop_assert_eq!(
                x.len() == x.height(),
                x.letters().iter().all(|m| m.degree() == 1)
            );
        }
    }
}
