//! The graded commutative alphabet of monic monomials in `d` variables.
//!
//! A monomial is stored as its sorted multiset of 1-based variable indices,
//! so `X1^2 X2` is `[1, 1, 2]` and prints as `112`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonempty multiset of variable indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u16>", into = "Vec<u16>")]
pub struct Monomial {
    indices: Vec<u16>,
}

impl Monomial {
    /// Builds a monomial from indices in any order.
    pub fn new(mut indices: Vec<u16>) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::invalid("a monomial needs at least one index"));
        }
        if indices.contains(&0) {
            return Err(Error::invalid("monomial indices are 1-based"));
        }
        indices.sort_unstable();
        Ok(Self { indices })
    }

    /// The degree-one monomial `X_i`.
    pub fn var(i: u16) -> Self {
        assert!(i >= 1, "monomial indices are 1-based");
        Self { indices: vec![i] }
    }

    /// Parses the compact digit notation (`"112"`), one digit per index.
    pub fn from_digits(s: &str) -> Result<Self> {
        let indices = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|v| v as u16)
                    .ok_or_else(|| Error::invalid(format!("bad monomial digit {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(indices)
    }

    pub fn indices(&self) -> &[u16] {
        &self.indices
    }

    pub fn degree(&self) -> usize {
        self.indices.len()
    }

    /// Largest variable index occurring in the monomial.
    pub fn max_index(&self) -> u16 {
        *self.indices.last().expect("monomials are nonempty")
    }

    /// Multiset union (the product of monomials).
    pub fn union(&self, other: &Monomial) -> Monomial {
        let mut indices = Vec::with_capacity(self.degree() + other.degree());
        let (mut a, mut b) = (self.indices.iter().peekable(), other.indices.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => {
                    if x <= y {
                        indices.push(*a.next().unwrap());
                    } else {
                        indices.push(*b.next().unwrap());
                    }
                }
                (Some(_), None) => indices.extend(a.by_ref()),
                (None, Some(_)) => indices.extend(b.by_ref()),
                (None, None) => break,
            }
        }
        Monomial { indices }
    }

    /// Product of the coordinates of `v` named by the indices.
    pub fn evaluate<T>(&self, v: &[T]) -> T
    where
        T: Clone + One + for<'a> Mul<&'a T, Output = T>,
    {
        self.indices.iter().fold(T::one(), |acc, &i| acc * &v[i as usize - 1])
    }

    /// Exponent vector of length `dim`.
    pub fn exponents(&self, dim: usize) -> Vec<u32> {
        let mut exps = vec![0u32; dim];
        for &i in &self.indices {
            exps[i as usize - 1] += 1;
        }
        exps
    }

    /// Builds a monomial from an exponent vector; `None` for the constant.
    pub fn from_exponents(exps: &[u32]) -> Option<Self> {
        let indices: Vec<u16> = exps
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i as u16 + 1, e as usize))
            .collect();
        (!indices.is_empty()).then_some(Self { indices })
    }
}

impl Ord for Monomial {
    /// Degree first, then lexicographic on the sorted index lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.indices.cmp(&other.indices))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl TryFrom<Vec<u16>> for Monomial {
    type Error = Error;

    fn try_from(v: Vec<u16>) -> Result<Self> {
        Monomial::new(v)
    }
}

impl From<Monomial> for Vec<u16> {
    fn from(m: Monomial) -> Self {
        m.indices
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.indices.iter().all(|&i| i < 10) {
            for i in &self.indices {
                write!(f, "{i}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
            write!(f, "{{{}}}", parts.join(","))
        }
    }
}

/// All monomials in `d` variables of degree `k` exactly, in lexicographic order.
pub fn monomials_of_degree(d: usize, k: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    if d == 0 || k == 0 {
        return out;
    }
    let mut current = Vec::with_capacity(k);
    fn rec(d: u16, k: usize, start: u16, current: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if current.len() == k {
            out.push(Monomial {
                indices: current.clone(),
            });
            return;
        }
        for i in start..=d {
            current.push(i);
            rec(d, k, i, current, out);
            current.pop();
        }
    }
    rec(d as u16, k, 1, &mut current, &mut out);
    out
}

/// All monomials of degree `1..=h` in `d` variables, sorted by the alphabet order.
pub fn monomials_up_to(d: usize, h: usize) -> Vec<Monomial> {
    (1..=h).flat_map(|k| monomials_of_degree(d, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_integer::binomial;
    use proptest::prelude::*;

    fn m(s: &str) -> Monomial {
        Monomial::from_digits(s).unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(m("1").degree(), 1);
        assert_eq!(m("112").degree(), 3);
        assert_eq!(m("22").degree(), 2);
    }

    #[test]
    fn union_examples() {
        assert_eq!(m("1").union(&m("2")), m("12"));
        assert_eq!(m("12").union(&m("1")), m("112"));
        assert_eq!(m("2").union(&m("11")), m("112"));
    }

    #[test]
    fn evaluate_examples() {
        let v = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(m("112").evaluate(&v(&[2, 3])), BigInt::from(12));
        assert_eq!(m("1").evaluate(&v(&[6, 7])), BigInt::from(6));
        assert_eq!(m("22").evaluate(&v(&[1, -3])), BigInt::from(9));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(m("1").cmp(&m("2")), Ordering::Less);
        assert_eq!(m("2").cmp(&m("11")), Ordering::Less);
        assert_eq!(m("12").cmp(&m("12")), Ordering::Equal);
    }

    #[test]
    fn monomials_up_to_examples() {
        let names = |d, h| monomials_up_to(d, h).iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(names(2, 2), ["1", "2", "11", "12", "22"]);
        assert_eq!(names(1, 3), ["1", "11", "111"]);
        assert_eq!(names(3, 1), ["1", "2", "3"]);
    }

    #[test]
    fn degree_slices_are_binomial() {
        for d in 1..=4usize {
            for k in 1..=6usize {
                assert_eq!(
                    monomials_of_degree(d, k).len(),
                    binomial(k + d - 1, d - 1),
                    "d={d} k={k}"
                );
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Monomial::new(vec![]).is_err());
        assert!(Monomial::new(vec![0, 1]).is_err());
        assert_eq!(Monomial::new(vec![2, 1, 1]).unwrap(), m("112"));
    }

    #[test]
    fn json_is_sorted_index_array() {
        assert_eq!(serde_json::to_string(&m("112")).unwrap(), "[1,1,2]");
        let back: Monomial = serde_json::from_str("[2,1]").unwrap();
        assert_eq!(back, m("12"));
        assert!(serde_json::from_str::<Monomial>("[]").is_err());
    }

    #[test]
    fn exponent_round_trip() {
        let x = m("1133");
        assert_eq!(x.exponents(3), vec![2, 0, 2]);
        assert_eq!(Monomial::from_exponents(&[2, 0, 2]), Some(x));
        assert_eq!(Monomial::from_exponents(&[0, 0]), None);
    }

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(1u16..=4, 1..5).prop_map(|v| Monomial::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn union_commutative_associative(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
            prop_assert_eq!(a.union(&b), b.union(&a));
            prop_assert_eq!(a.union(&b).union(&c), a.union(&b.union(&c)));
            prop_assert_eq!(a.union(&b).degree(), a.degree() + b.degree());
        }

        #[test]
        fn order_is_graded_and_total(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
            if a.degree() < b.degree() {
                prop_assert_eq!(a.cmp(&b), Ordering::Less);
            }
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
            prop_assert_eq!(a.cmp(&b) == Ordering::Equal, a == b);
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
        }
    }
}
