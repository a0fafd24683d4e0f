//! Shuffle and quasi-shuffle products of words, and their bilinear
//! extensions to truncated tensors.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::Tensor;
use crate::error::Result;
use crate::words::Word;

/// A nonnegative integer combination of words.
pub type WordSum = BTreeMap<Word, u64>;

fn add_to(sum: &mut WordSum, w: Word, n: u64) {
    *sum.entry(w).or_insert(0) += n;
}

/// Runs the last-letter recursion on the prefix grid of `w` and `v`.
///
/// `grid[a][b]` holds `w[..a] ⋆ v[..b]`. With `contract` set, the extra term
/// `(w[..a-1] ⋆ v[..b-1]) • (w_a v_b)` of the quasi-shuffle is included.
fn product(w: &Word, v: &Word, contract: bool) -> WordSum {
    let (p, q) = (w.len(), v.len());
    let mut grid: Vec<Vec<WordSum>> = vec![vec![WordSum::new(); q + 1]; p + 1];
    for a in 0..=p {
        for b in 0..=q {
            let mut cell = WordSum::new();
            if a == 0 {
                cell.insert(v.slice(0, b), 1);
            } else if b == 0 {
                cell.insert(w.slice(0, a), 1);
            } else {
                let i = &w.letters()[a - 1];
                let j = &v.letters()[b - 1];
                for (x, &n) in &grid[a - 1][b] {
                    let mut y = x.clone();
                    y.push(i.clone());
                    add_to(&mut cell, y, n);
                }
                for (x, &n) in &grid[a][b - 1] {
                    let mut y = x.clone();
                    y.push(j.clone());
                    add_to(&mut cell, y, n);
                }
                if contract {
                    let ij = i.union(j);
                    for (x, &n) in &grid[a - 1][b - 1] {
                        let mut y = x.clone();
                        y.push(ij.clone());
                        add_to(&mut cell, y, n);
                    }
                }
            }
            grid[a][b] = cell;
        }
    }
    grid.pop().unwrap().pop().unwrap()
}

/// `w ⧢ v`.
pub fn shuffle(w: &Word, v: &Word) -> WordSum {
    product(w, v, false)
}

/// `w ⧢̄ v`: the shuffle with contraction terms `(w ⧢̄ v)•ij`.
pub fn quasi_shuffle(w: &Word, v: &Word) -> WordSum {
    product(w, v, true)
}

/// Multiplies every word of `sum` by `v` and collects the result.
pub(crate) fn product_with(sum: &WordSum, v: &Word, contract: bool) -> WordSum {
    let mut out = WordSum::new();
    for (x, &n) in sum {
        for (y, m) in product(x, v, contract) {
            add_to(&mut out, y, n * m);
        }
    }
    out
}

impl Tensor {
    fn bilinear(&self, other: &Tensor, contract: bool) -> Result<Tensor> {
        self.check_compatible(other)?;
        let mut out = Tensor::zero(self.dim, self.height);
        for (w, a) in &self.terms {
            let budget = self.height - w.height();
            for (v, b) in &other.terms {
                if v.height() > budget {
                    break;
                }
                let coeff = a * b;
                for (x, n) in product(w, v, contract) {
                    out.accumulate(x, &coeff * BigRational::from_integer(BigInt::from(n)));
                }
            }
        }
        Ok(out)
    }

    /// Bilinear shuffle product, truncated at the height bound.
    pub fn shuffle(&self, other: &Tensor) -> Result<Tensor> {
        self.bilinear(other, false)
    }

    /// Bilinear quasi-shuffle product, truncated at the height bound.
    pub fn quasi_shuffle(&self, other: &Tensor) -> Result<Tensor> {
        self.bilinear(other, true)
    }
}
