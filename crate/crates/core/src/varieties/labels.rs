//! Named coordinates of signature varieties and polynomials written in them.
//!
//! Naming follows the usual conventions for small cases:
//!
//! - one variable: `s` followed by `h - 1` bits. Bit `j` (from the left) is
//!   1 when positions `h - j` and `h - j + 1` lie in the same letter, i.e.
//!   the bits mark the joins of the reversed composition. `s00` is
//!   `M_(1,1,1)`, `s01` is `M_(2,1)`, `s10` is `M_(1,2)`, `s11` is `M_(3)`.
//! - height three, two or more variables: `s_ijk` for `i•j•k`, `t_ijk` for
//!   `ij•k`, `u_ijk` for `i•jk`, `v_ijk` for the single letter `ijk`.
//! - anything else: `w` followed by the letters in digit notation separated
//!   by `x`, e.g. `w1x12x2` for `1•12•2`.
//!
//! Index strings may be written bare (`s121`), with an underscore, or in
//! braces with optional commas (`s_{1,2,1}`).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Monomial;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{format_rational, parse_rational};
use crate::signature::{dsign, iterated_sums, TimeSeries};
use crate::words::{words_of_height, Composition, Word};

use super::{composition_word, word_composition};

/// A coordinate of `V_{d,h,N}`: the signature coefficient of one word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordinateLabel {
    word: Word,
}

impl CoordinateLabel {
    pub fn new(word: Word) -> Result<Self> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(CoordinateLabel { word })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// The name of this coordinate for series in `d` variables.
    pub fn name(&self, d: usize) -> String {
        let w = &self.word;
        if d == 1 {
            let h = w.height();
            let a = word_composition(w).expect("word over one variable");
            let mut joins = vec![true; h];
            let mut sum = 0;
            for &p in a.parts() {
                sum += p;
                joins[sum - 1] = false;
            }
            // bit j reads position h - j
            let bits: String = (1..h).map(|j| if joins[h - j - 1] { '1' } else { '0' }).collect();
            return format!("s{bits}");
        }
        let degree_one = |k: usize| w.letters()[k].degree() == 1;
        let digits: String = w
            .letters()
            .iter()
            .flat_map(|m| m.indices().iter().map(|i| i.to_string()))
            .collect();
        if w.height() == 3 && d <= 9 {
            let prefix = match w.len() {
                3 => Some('s'),
                2 if degree_one(1) => Some('t'),
                2 => Some('u'),
                1 => Some('v'),
                _ => None,
            };
            if let Some(p) = prefix {
                return format!("{p}{digits}");
            }
        }
        let parts: Vec<String> = w.letters().iter().map(|m| m.to_string()).collect();
        format!("w{}", parts.join("x"))
    }

    /// Resolves a name for series in `d` variables.
    pub fn parse(label: &str, d: usize) -> Result<Self> {
        let bad = |why: &str| Error::invalid(format!("cannot resolve coordinate {label:?}: {why}"));
        let mut chars = label.chars();
        let kind = chars.next().ok_or_else(|| bad("empty label"))?;
        let body: String = chars.filter(|c| !matches!(c, '_' | '{' | '}' | ',' | ' ')).collect();
        if kind == 'w' {
            let letters = body
                .split('x')
                .map(Monomial::from_digits)
                .collect::<Result<Vec<_>>>()
                .map_err(|_| bad("letters must be digit strings separated by x"))?;
            let w = Word::new(letters);
            if w.max_index() as usize > d {
                return Err(bad("index exceeds the dimension"));
            }
            return Self::new(w);
        }
        if d == 1 {
            if kind != 's' || !body.chars().all(|c| c == '0' || c == '1') {
                return Err(bad("one-variable coordinates are s followed by bits"));
            }
            let h = body.len() + 1;
            let bits: Vec<bool> = body.chars().map(|c| c == '1').collect();
            // bit j marks a join between positions h - j and h - j + 1
            let mut breaks = 0u64;
            for p in 1..h {
                if !bits[h - p - 1] {
                    breaks |= 1 << (p - 1);
                }
            }
            return Self::new(composition_word(&Composition::from_breaks(h, breaks)));
        }
        let idx: Vec<u16> = body
            .chars()
            .map(|c| c.to_digit(10).filter(|&i| i >= 1).map(|i| i as u16))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("indices must be digits 1-9"))?;
        if idx.len() != 3 {
            return Err(bad("s/t/u/v coordinates take three indices"));
        }
        if idx.iter().any(|&i| i as usize > d) {
            return Err(bad("index exceeds the dimension"));
        }
        let m = |ix: &[u16]| Monomial::new(ix.to_vec()).expect("nonzero indices");
        let letters = match kind {
            's' => vec![m(&idx[0..1]), m(&idx[1..2]), m(&idx[2..3])],
            't' => vec![m(&idx[0..2]), m(&idx[2..3])],
            'u' => vec![m(&idx[0..1]), m(&idx[1..3])],
            'v' => vec![m(&idx[..])],
            _ => return Err(bad("unknown coordinate family")),
        };
        Self::new(Word::new(letters))
    }
}

/// Coordinates of `V_{d,h,N}`: one per word of height exactly `h`. For one
/// variable they are ordered by their bit strings, otherwise canonically.
pub fn coordinate_labels(d: usize, h: usize) -> Vec<CoordinateLabel> {
    let mut labels: Vec<CoordinateLabel> = words_of_height(d, h)
        .into_iter()
        .map(|w| CoordinateLabel { word: w })
        .collect();
    if d == 1 {
        labels.sort_by_key(|l| l.name(1));
    }
    labels
}

/// A polynomial in coordinate labels with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPoly {
    dim: usize,
    terms: Vec<(BigRational, Vec<(CoordinateLabel, u32)>)>,
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(BigRational),
    Label(String),
    Plus,
    Minus,
    Times,
    Caret,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() || c == '\\' || c == '&' => i += 1,
            '+' => {
                out.push((col, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((col, Token::Minus));
                i += 1;
            }
            '*' => {
                out.push((col, Token::Times));
                i += 1;
            }
            '^' => {
                out.push((col, Token::Caret));
                i += 1;
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.' || chars[i] == '/') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let q = parse_rational(&s).map_err(|m| Error::parse(1, col, m))?;
                out.push((col, Token::Number(q)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                i += 1;
                while i < chars.len() {
                    match chars[i] {
                        '{' => {
                            while i < chars.len() && chars[i] != '}' {
                                i += 1;
                            }
                            i += 1;
                            break;
                        }
                        c if c.is_ascii_alphanumeric() || c == '_' || c == ',' => i += 1,
                        _ => break,
                    }
                }
                let s: String = chars[start..i.min(chars.len())].iter().collect();
                out.push((col, Token::Label(s)));
            }
            other => return Err(Error::parse(1, col, format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

impl LabeledPoly {
    /// Parses text such as `"s121*s222*v222 - 2 s001^2 + 1/2*t122"`.
    /// Products may be written with `*` or by juxtaposition.
    pub fn parse(text: &str, d: usize) -> Result<Self> {
        let tokens = tokenize(text)?;
        let mut terms = Vec::new();
        let mut pos = 0;
        let end_col = text.chars().count() + 1;
        if tokens.is_empty() {
            return Err(Error::parse(1, 1, "empty polynomial"));
        }
        while pos < tokens.len() {
            let mut coeff = BigRational::one();
            while let Some((_, t @ (Token::Plus | Token::Minus))) = tokens.get(pos) {
                if *t == Token::Minus {
                    coeff = -coeff;
                }
                pos += 1;
            }
            let mut factors: BTreeMap<CoordinateLabel, u32> = BTreeMap::new();
            let mut any = false;
            loop {
                match tokens.get(pos) {
                    Some((_, Token::Number(q))) => {
                        coeff *= q;
                        pos += 1;
                    }
                    Some((col, Token::Label(name))) => {
                        let label =
                            CoordinateLabel::parse(name, d).map_err(|e| Error::parse(1, *col, e.to_string()))?;
                        pos += 1;
                        let mut power = 1;
                        if let Some((_, Token::Caret)) = tokens.get(pos) {
                            match tokens.get(pos + 1) {
                                Some((col, Token::Number(q))) => {
                                    power = (q.is_integer() && q.is_positive())
                                        .then(|| q.to_integer().try_into().ok())
                                        .flatten()
                                        .ok_or_else(|| Error::parse(1, *col, "exponents are positive integers"))?;
                                    pos += 2;
                                }
                                other => {
                                    let col = other.map_or(end_col, |(c, _)| *c);
                                    return Err(Error::parse(1, col, "expected an exponent"));
                                }
                            }
                        }
                        *factors.entry(label).or_insert(0) += power;
                    }
                    Some((col, tok)) => {
                        if !any {
                            return Err(Error::parse(1, *col, format!("expected a term, found {tok:?}")));
                        }
                        if *tok != Token::Times {
                            break;
                        }
                        pos += 1;
                        if !matches!(tokens.get(pos), Some((_, Token::Number(_) | Token::Label(_)))) {
                            let col = tokens.get(pos).map_or(end_col, |(c, _)| *c);
                            return Err(Error::parse(1, col, "expected a factor after '*'"));
                        }
                        continue;
                    }
                    None => {
                        if !any {
                            return Err(Error::parse(1, end_col, "expected a term"));
                        }
                        break;
                    }
                }
                any = true;
            }
            terms.push((coeff, factors.into_iter().collect()));
        }
        Ok(LabeledPoly { dim: d, terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Every coordinate the polynomial mentions.
    pub fn labels(&self) -> Vec<&CoordinateLabel> {
        let mut out: Vec<&CoordinateLabel> = self.terms.iter().flat_map(|(_, f)| f.iter().map(|(l, _)| l)).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn max_height(&self) -> usize {
        self.labels().iter().map(|l| l.word.height()).max().unwrap_or(0)
    }

    /// Evaluates with each coordinate replaced by `value(label)`.
    pub fn evaluate<F: Fn(&CoordinateLabel) -> BigRational>(&self, value: F) -> BigRational {
        let mut total = BigRational::zero();
        for (c, factors) in &self.terms {
            let mut term = c.clone();
            for (label, power) in factors {
                term *= num_traits::pow(value(label), *power as usize);
            }
            total += term;
        }
        total
    }

    /// Substitutes a polynomial for each coordinate and expands.
    pub fn substitute<F: Fn(&CoordinateLabel) -> Poly>(&self, nvars: usize, value: F) -> Poly {
        let mut total = Poly::zero(nvars);
        for (c, factors) in &self.terms {
            let mut term = Poly::constant(nvars, c.clone());
            for (label, power) in factors {
                term = term.mul(&value(label).pow(*power));
            }
            total = total.add(&term);
        }
        total
    }
}

impl fmt::Display for LabeledPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, factors)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !c.abs().is_one() || factors.is_empty() {
                parts.push(format_rational(&c.abs()));
            }
            for (l, p) in factors {
                let name = l.name(self.dim);
                parts.push(if *p == 1 { name } else { format!("{name}^{p}") });
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// The iterated-sum polynomials of every word of height at most `h` for a
/// series of `n` symbolic vectors; variable `t·d + c` is coordinate `c` of
/// step `t` (both from zero).
pub fn symbolic_coordinates(d: usize, h: usize, n: usize) -> BTreeMap<Word, Poly> {
    let nvars = n * d;
    let unit = Poly::constant(nvars, BigRational::one());
    let vars: Vec<Vec<Poly>> = (0..n)
        .map(|t| (0..d).map(|c| Poly::var(nvars, t * d + c)).collect())
        .collect();
    iterated_sums(d, h, &unit, &vars).into_iter().collect()
}

/// Whether the polynomial vanishes identically on `V_{d,h,N}`, by expanding
/// its composition with the parametrization.
pub fn vanishes_symbolically(poly: &LabeledPoly, n: usize) -> bool {
    let coords = symbolic_coordinates(poly.dim, poly.max_height(), n);
    poly.substitute(n * poly.dim, |l| coords[&l.word].clone()).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingReport {
    pub trials: usize,
    /// Points where the polynomial did not vanish.
    pub nonzero: usize,
    pub max_abs_residual: BigRational,
}

impl VanishingReport {
    pub fn vanishes(&self) -> bool {
        self.nonzero == 0
    }
}

impl fmt::Display for VanishingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} trials, {} nonzero, max |residual| = {})",
            if self.vanishes() { "PASS" } else { "FAIL" },
            self.trials,
            self.nonzero,
            format_rational(&self.max_abs_residual)
        )
    }
}

/// Evaluates the polynomial on the signatures of `trials` random integer
/// series of length `n` (entries in `[-10, 10]`).
pub fn verify_vanishing(poly: &LabeledPoly, h: usize, n: usize, trials: usize, seed: u64) -> Result<VanishingReport> {
    if let Some(l) = poly.labels().into_iter().find(|l| l.word.height() > h) {
        return Err(Error::invalid(format!(
            "coordinate {} has height {}, above {h}",
            l.name(poly.dim),
            l.word.height()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nonzero = 0;
    let mut max_abs = BigRational::zero();
    for _ in 0..trials {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..poly.dim).map(|_| rng.gen_range(-10..=10)).collect())
            .collect();
        let y = TimeSeries::from_integers(poly.dim, &rows)?;
        let s = dsign(&y, h);
        let r = poly.evaluate(|l| s.coefficient(&l.word)).abs();
        if !r.is_zero() {
            nonzero += 1;
        }
        if r > max_abs {
            max_abs = r;
        }
    }
    Ok(VanishingReport {
        trials,
        nonzero,
        max_abs_residual: max_abs,
    })
}
