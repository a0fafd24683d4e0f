//! The Hoffman isomorphism `Φ_H`, its inverse `Ψ_H`, and their adjoints.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{factorial, Tensor};
use crate::alphabet::Monomial;
use crate::words::{compositions, Word};

/// All ordered `n`-tuples of nonempty monomials whose union is `m`.
pub fn ordered_factorizations(m: &Monomial, n: usize) -> Vec<Vec<Monomial>> {
    assert!(n >= 1);
    let dim = m.max_index() as usize;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    split(&m.exponents(dim), n, &mut current, &mut out);
    out
}

fn split(rest: &[u32], parts: usize, current: &mut Vec<Monomial>, out: &mut Vec<Vec<Monomial>>) {
    let remaining: u32 = rest.iter().sum();
    if (remaining as usize) < parts {
        return;
    }
    if parts == 1 {
        current.push(Monomial::from_exponents(rest).expect("nonempty remainder"));
        out.push(current.clone());
        current.pop();
        return;
    }
    // enumerate every nonempty sub-multiset as the next part
    let mut choice = vec![0u32; rest.len()];
    loop {
        let mut i = 0;
        while i < rest.len() && choice[i] == rest[i] {
            choice[i] = 0;
            i += 1;
        }
        if i == rest.len() {
            break;
        }
        choice[i] += 1;
        let part = Monomial::from_exponents(&choice).expect("choice is nonempty");
        let left: Vec<u32> = rest.iter().zip(&choice).map(|(r, c)| r - c).collect();
        current.push(part);
        split(&left, parts - 1, current, out);
        current.pop();
    }
}

fn signed_ratio(sign: bool, den: BigInt) -> BigRational {
    let num = if sign { -BigInt::one() } else { BigInt::one() };
    BigRational::new(num, den)
}

impl Tensor {
    /// `Φ_H(w) = Σ_{α ⊨ |w|} (1/α!) (w)_α`, extended linearly.
    pub fn hoffman_phi(&self) -> Tensor {
        self.map_words(|w, c, out| {
            if w.is_empty() {
                out.accumulate(w.clone(), c.clone());
                return;
            }
            for a in compositions(w.len()) {
                let coeff = c * BigRational::new(BigInt::one(), a.factorial_product());
                out.accumulate(w.contract(&a).expect("weight matches"), coeff);
            }
        })
    }

    /// `Ψ_H(w) = Σ_{α ⊨ |w|} ((-1)^{|w| - ℓ(α)} / Πα) (w)_α`, extended linearly.
    pub fn hoffman_psi(&self) -> Tensor {
        self.map_words(|w, c, out| {
            if w.is_empty() {
                out.accumulate(w.clone(), c.clone());
                return;
            }
            for a in compositions(w.len()) {
                let odd = (w.len() - a.len()) % 2 == 1;
                let coeff = c * signed_ratio(odd, a.part_product());
                out.accumulate(w.contract(&a).expect("weight matches"), coeff);
            }
        })
    }

    /// `Φ*_H`: multiplicative for `•`, with
    /// `Φ*_H(i) = Σ_n (1/n!) Σ_{i_1 ⊎ … ⊎ i_n = i} i_1 • … • i_n`.
    pub fn hoffman_phi_star(&self) -> Tensor {
        self.letterwise(|n| BigRational::new(BigInt::one(), factorial(n)))
    }

    /// `Ψ*_H`: multiplicative for `•`, with `(-1)^{n-1}/n` weights.
    pub fn hoffman_psi_star(&self) -> Tensor {
        self.letterwise(|n| signed_ratio(n % 2 == 0, BigInt::from(n)))
    }

    fn letterwise<F>(&self, weight: F) -> Tensor
    where
        F: Fn(usize) -> BigRational,
    {
        let (dim, height) = (self.dim, self.height);
        let mut images: HashMap<Monomial, Tensor> = HashMap::new();
        let mut image_of = |m: &Monomial| -> Tensor {
            images
                .entry(m.clone())
                .or_insert_with(|| {
                    let mut t = Tensor::zero(dim, height);
                    for n in 1..=m.degree() {
                        let c = weight(n);
                        for parts in ordered_factorizations(m, n) {
                            t.accumulate(Word::new(parts), c.clone());
                        }
                    }
                    t
                })
                .clone()
        };
        self.map_words(|w, c, out| {
            let mut acc = Tensor::unit(dim, height);
            for letter in w.letters() {
                acc = acc.concat_unchecked(&image_of(letter));
            }
            for (x, a) in acc.terms {
                out.accumulate(x, a * c);
            }
        })
    }
}
