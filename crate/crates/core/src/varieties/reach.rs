//! Reachability systems: prescribed monomial coefficients of the signature
//! plus vanishing of the pairings with `Φ_H e_1(𝔩_w)` for `|w| ≥ 2`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::alphabet::monomials_up_to;
use crate::error::{Error, Result};
use crate::signature::{dsign, TimeSeries};
use crate::tensor::{lie_element, Tensor};
use crate::words::{words_up_to, Word};

/// Which Hoffman map turns `e_1(𝔩_w)` into a functional on signatures.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Convention {
    #[default]
    Phi,
    PhiStar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub word: Word,
    /// Length of `word`.
    pub level: usize,
    pub functional: Tensor,
    /// Required value of the pairing with the signature.
    pub value: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachabilitySystem {
    pub dim: usize,
    pub height: usize,
    pub target: Tensor,
    pub convention: Convention,
    pub constraints: Vec<Constraint>,
}

impl ReachabilitySystem {
    pub fn level(&self, k: usize) -> impl Iterator<Item = &Constraint> {
        self.constraints.iter().filter(move |c| c.level == k)
    }
}

/// Builds the system for a target supported on single letters of degree at
/// most `h`.
pub fn reachability_system(target: &Tensor, d: usize, h: usize, convention: Convention) -> Result<ReachabilitySystem> {
    if target.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: target.dim(),
        });
    }
    if d == 0 || h == 0 {
        return Err(Error::invalid("reachability needs d >= 1 and h >= 1"));
    }
    for (w, _) in target.terms() {
        if w.len() != 1 || w.height() > h {
            return Err(Error::invalid(format!(
                "target has a term on {w}; only single letters of degree at most {h} are allowed"
            )));
        }
    }
    let mut constraints = Vec::new();
    for m in monomials_up_to(d, h) {
        let w = Word::letter(m);
        constraints.push(Constraint {
            functional: Tensor::from_word(d, h, w.clone())?,
            value: target.coefficient(&w),
            level: 1,
            word: w,
        });
    }
    for w in words_up_to(d, h) {
        if w.len() < 2 {
            continue;
        }
        let e = lie_element(d, h, &w)?.eulerian_shuffle();
        let functional = match convention {
            Convention::Phi => e.hoffman_phi(),
            Convention::PhiStar => e.hoffman_phi_star(),
        };
        constraints.push(Constraint {
            level: w.len(),
            word: w,
            functional,
            value: BigRational::zero(),
        });
    }
    Ok(ReachabilitySystem {
        dim: d,
        height: h,
        target: target.clone(),
        convention,
        constraints,
    })
}

/// `⟨S(y), functional⟩ - value` for every constraint, in order.
pub fn reachability_residual(sys: &ReachabilitySystem, y: &TimeSeries) -> Result<Vec<BigRational>> {
    if y.dim() != sys.dim {
        return Err(Error::DimensionMismatch {
            expected: sys.dim,
            found: y.dim(),
        });
    }
    let s = dsign(y, sys.height);
    Ok(sys
        .constraints
        .iter()
        .map(|c| s.pair(&c.functional) - &c.value)
        .collect())
}
