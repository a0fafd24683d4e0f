//! Dimension lower bounds from the rank of the Jacobian of the signature map
//! at a random integer point, computed over a prime field.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::words::{lambda, words_up_to, Word};

/// The largest prime below `2^31`.
pub const DEFAULT_MODULUS: u64 = 2_147_483_647;

#[derive(Clone, Copy)]
struct Field {
    p: u64,
}

impl Field {
    fn reduce(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        self.add(a, self.p - b)
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    if let Some(&b) = BASES.iter().find(|&&b| n.is_multiple_of(b)) {
        return n == b;
    }
    let f = Field { p: n };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &BASES {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Value of a letter (given as exponents) at `y` and its gradient.
fn letter_and_gradient(f: Field, exps: &[u32], y: &[u64]) -> (u64, Vec<u64>) {
    let value = exps
        .iter()
        .zip(y)
        .fold(1, |acc, (&e, &v)| f.mul(acc, f.pow(v, e as u64)));
    let grad = (0..y.len())
        .map(|c| {
            if exps[c] == 0 {
                return 0;
            }
            let mut g = f.reduce(exps[c] as i64);
            for (k, (&e, &v)) in exps.iter().zip(y).enumerate() {
                let e = if k == c { e - 1 } else { e };
                g = f.mul(g, f.pow(v, e as u64));
            }
            g
        })
        .collect();
    (value, grad)
}

/// Gradient of `y ↦ ⟨S(y), w⟩` with respect to all `N·d` entries, row-major
/// in time.
///
/// With `pre[j][t]` the sum for the first `j` letters over steps before `t`
/// and `suf[j][t]` the sum for letters `j..` over steps after `t`, the
/// derivative at step `t` is `Σ_j pre[j][t] · ∂e_j(y_t) · suf[j+1][t]`.
fn word_gradient(f: Field, w: &Word, dim: usize, point: &[Vec<u64>]) -> Vec<u64> {
    let n = point.len();
    let k = w.len();
    let letters: Vec<(Vec<u64>, Vec<Vec<u64>>)> = w
        .letters()
        .iter()
        .map(|m| {
            let exps = m.exponents(dim);
            let (vals, grads): (Vec<u64>, Vec<Vec<u64>>) =
                point.iter().map(|y| letter_and_gradient(f, &exps, y)).unzip();
            (vals, grads)
        })
        .collect();

    // pre[j][t]: letters 0..j over steps 0..t (exclusive)
    let mut pre = vec![vec![0u64; n + 1]; k + 1];
    pre[0].fill(1);
    for t in 0..n {
        for j in 1..=k {
            let step = f.mul(pre[j - 1][t], letters[j - 1].0[t]);
            pre[j][t + 1] = f.add(pre[j][t], step);
        }
    }
    // suf[j][t]: letters j..k over steps t..n
    let mut suf = vec![vec![0u64; n + 1]; k + 1];
    suf[k].fill(1);
    for t in (0..n).rev() {
        for j in (0..k).rev() {
            let step = f.mul(letters[j].0[t], suf[j + 1][t + 1]);
            suf[j][t] = f.add(suf[j][t + 1], step);
        }
    }

    let mut grad = vec![0u64; n * dim];
    for t in 0..n {
        for j in 0..k {
            let outer = f.mul(pre[j][t], suf[j + 1][t + 1]);
            if outer == 0 {
                continue;
            }
            for c in 0..dim {
                let g = letters[j].1[t][c];
                grad[t * dim + c] = f.add(grad[t * dim + c], f.mul(outer, g));
            }
        }
    }
    grad
}

fn rank(f: Field, mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(*x, f.mul(factor, p));
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Rank of the Jacobian of `y ↦ (⟨S(y), w⟩)_{0 < ht(w) ≤ h}` at a random point
/// with entries in `[-10, 10]`, reduced modulo the prime `modulus`.
///
/// A lower bound for `dim V_{d,h,N}` (exact for all but finitely many primes
/// and a dense set of points).
pub fn jacobian_rank(d: usize, h: usize, n: usize, seed: u64, modulus: u64) -> Result<usize> {
    if d == 0 || h == 0 || n == 0 {
        return Err(Error::invalid("jacobian_rank needs d, h, N >= 1"));
    }
    if modulus >= 1 << 62 || !is_prime(modulus) {
        return Err(Error::invalid(format!("{modulus} is not a prime below 2^62")));
    }
    let f = Field { p: modulus };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point: Vec<Vec<u64>> = (0..n)
        .map(|_| (0..d).map(|_| f.reduce(rng.gen_range(-10..=10))).collect())
        .collect();
    let rows = words_up_to(d, h)
        .into_iter()
        .filter(|w| !w.is_empty())
        .map(|w| word_gradient(f, &w, d, &point))
        .collect();
    Ok(rank(f, rows))
}

/// Ranks for each series length in `lengths`, same seed and modulus.
pub fn jacobian_rank_sweep(
    d: usize,
    h: usize,
    lengths: impl IntoIterator<Item = usize>,
    seed: u64,
    modulus: u64,
) -> Result<Vec<(usize, usize)>> {
    lengths
        .into_iter()
        .map(|n| jacobian_rank(d, h, n, seed, modulus).map(|r| (n, r)))
        .collect()
}

/// `Σ_{l ≤ h} λ_{d,l}`, the conjectured dimension of the universal variety.
pub fn expected_dimension(d: usize, h: usize) -> Result<usize> {
    let mut total = BigUint::default();
    for l in 1..=h {
        total += lambda(d, l)?;
    }
    total
        .to_usize()
        .ok_or_else(|| Error::invalid("dimension exceeds usize"))
}
