//! Tooling for signature varieties `V_{d,h,N}`: the closure of the set of
//! height-`h` signature coefficients of length-`N` series in `d` dimensions.

mod fiber;
mod jacobian;
mod labels;
mod m2;
mod reach;

pub use fiber::{fiber_reconstruct, Fiber};
pub use jacobian::{expected_dimension, jacobian_rank, jacobian_rank_sweep, DEFAULT_MODULUS};
pub use labels::{
    coordinate_labels, symbolic_coordinates, vanishes_symbolically, verify_vanishing, CoordinateLabel, LabeledPoly,
    VanishingReport,
};
pub use m2::export_macaulay2;
pub use reach::{reachability_residual, reachability_system, Constraint, Convention, ReachabilitySystem};

use num_rational::BigRational;
use num_traits::One;

use crate::alphabet::Monomial;
use crate::error::{Error, Result};
use crate::signature::TimeSeries;
use crate::tensor::Tensor;
use crate::words::{Composition, Word};

/// The 2×2 minor
/// `(2S_{e•e} + S_{ee})(2S_{f•f} + S_{ff}) - (S_{ef} + S_{e•f} + S_{f•e})²`,
/// which vanishes on every signature.
pub fn h2_quadric_residual(s: &Tensor, e: &Monomial, f: &Monomial) -> Result<BigRational> {
    if e == f {
        return Err(Error::invalid("the quadric needs two distinct letters"));
    }
    let need = 2 * e.degree().max(f.degree());
    if s.height_bound() < need {
        return Err(Error::invalid(format!(
            "the quadric for {e}, {f} needs height {need}, tensor is truncated at {}",
            s.height_bound()
        )));
    }
    let letter = |m: &Monomial| Word::letter(m.clone());
    let pair = |a: &Monomial, b: &Monomial| Word::new(vec![a.clone(), b.clone()]);
    let c = |w: Word| s.coefficient(&w);
    let two = BigRational::from_integer(2.into());
    let ee = &two * c(pair(e, e)) + c(letter(&e.union(e)));
    let ff = &two * c(pair(f, f)) + c(letter(&f.union(f)));
    let ef = c(letter(&e.union(f))) + c(pair(e, f)) + c(pair(f, e));
    Ok(ee * ff - &ef * &ef)
}

/// The word over `MS_1` whose letter degrees are the parts of `a`.
pub fn composition_word(a: &Composition) -> Word {
    Word::new(
        a.parts()
            .iter()
            .map(|&p| Monomial::new(vec![1; p]).expect("positive part"))
            .collect(),
    )
}

/// The composition read off a nonempty word over `MS_1`.
pub fn word_composition(w: &Word) -> Result<Composition> {
    if w.max_index() > 1 {
        return Err(Error::invalid(format!("{w} is not a word over one variable")));
    }
    Composition::new(w.letters().iter().map(Monomial::degree).collect())
}

/// The monomial quasi-symmetric function
/// `M_α(y) = Σ_{i_1 < … < i_k} y_{i_1}^{α_1} ⋯ y_{i_k}^{α_k}` of a
/// one-dimensional series.
pub fn qsym_value(a: &Composition, y: &TimeSeries) -> Result<BigRational> {
    if y.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: y.dim(),
        });
    }
    let y = y.to_increments();
    // partial[j] = M_{(α_1..α_j)} over the rows seen so far
    let mut partial = vec![BigRational::from_integer(0.into()); a.len() + 1];
    partial[0] = BigRational::one();
    for row in y.values() {
        for (j, &p) in a.parts().iter().enumerate().rev() {
            let term = &partial[j] * num_traits::pow(row[0].clone(), p);
            partial[j + 1] += term;
        }
    }
    Ok(partial.pop().unwrap())
}
