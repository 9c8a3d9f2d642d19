//! Multiplicities of irreducible SO(3) representations in tensor products.
//!
//! `R(m)` is the irrep of dimension `2m + 1`. The two-fold product follows the
//! Clebsch–Gordan rule; longer products are obtained by operadic composition,
//! and a weight-counting oracle provides an independent route.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::bending::{is_nonempty, is_smooth, LengthVector};
use crate::operad::{w_compose, Count, Evaluate, WElement};

/// Label `m` of the irrep `R(m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinLabel(pub u64);

impl SpinLabel {
    pub fn dim(self) -> u64 {
        2 * self.0 + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KaehlerError {
    #[error("need at least 3 side lengths, got {0}")]
    TooFewSides(usize),
    #[error("side length {index} is zero; lengths must be positive")]
    NonPositiveLength { index: usize },
    #[error("tensor products need at least one factor")]
    EmptyProduct,
}

/// `[R(c1) ⊗ R(c2) : R(d)]`, which is 1 exactly when `|c1 − c2| ≤ d ≤ c1 + c2`.
pub fn cg(d: u64, c1: u64, c2: u64) -> u64 {
    u64::from(c1.abs_diff(c2) <= d && d <= c1 + c2)
}

struct ClebschGordan;

impl Evaluate for ClebschGordan {
    fn arity(&self) -> usize {
        2
    }

    fn eval(&self, d: u64, c: &[u64]) -> Count {
        Count::from(cg(d, c[0], c[1]))
    }

    fn support_bound(&self, c: &[u64]) -> u64 {
        c[0] + c[1]
    }
}

/// The Clebsch–Gordan rule as an arity-2 element.
pub fn cg_element() -> WElement {
    static CG: OnceLock<WElement> = OnceLock::new();
    CG.get_or_init(|| WElement::from_evaluator(Arc::new(ClebschGordan)))
        .clone()
}

/// How to bracket an `n`-fold product when folding the two-fold rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fold {
    /// `((c₁ ⊗ c₂) ⊗ c₃) ⊗ …`
    Left,
    /// `c₁ ⊗ (c₂ ⊗ (c₃ ⊗ …))`
    Right,
    /// Split the factors in half at every level.
    Balanced,
}

/// The `n`-fold multiplicity function built with the given bracketing.
pub fn f_kaehler_with(n: usize, fold: Fold) -> Result<WElement, KaehlerError> {
    fn build(n: usize, fold: Fold) -> WElement {
        if n == 1 {
            return WElement::unit();
        }
        let cg = cg_element();
        if n == 2 {
            return cg;
        }
        let (left, right) = match fold {
            Fold::Left => (n - 1, 1),
            Fold::Right => (1, n - 1),
            Fold::Balanced => (n / 2, n - n / 2),
        };
        let mut element = cg;
        // Graft the right factor first so the left one still sits at slot 1.
        if right > 1 {
            element = w_compose(&element, 2, &build(right, fold)).expect("slot 2 of cg");
        }
        if left > 1 {
            element = w_compose(&element, 1, &build(left, fold)).expect("slot 1 of cg");
        }
        element
    }
    if n == 0 {
        return Err(KaehlerError::EmptyProduct);
    }
    Ok(build(n, fold))
}

/// `f_kaehler(n).eval(d; c) = [R(c₁) ⊗ … ⊗ R(cₙ) : R(d)]`.
///
/// Elements are cached per `n` so their memo tables are shared between calls.
pub fn f_kaehler(n: usize) -> Result<WElement, KaehlerError> {
    static CACHE: OnceLock<Mutex<HashMap<usize, WElement>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&n) {
        return Ok(hit.clone());
    }
    let element = f_kaehler_with(n, Fold::Left)?;
    Ok(cache
        .lock()
        .expect("cache lock")
        .entry(n)
        .or_insert(element)
        .clone())
}

/// Number of weight vectors of `R(c₁) ⊗ … ⊗ R(cₙ)` with total weight `j`, for
/// every `j ≥ 0`, by iterated convolution of the weight multisets.
fn weight_counts(c: &[u64]) -> Vec<Count> {
    // Index `w + total` holds the count for weight `w ∈ [-total, total]`.
    let mut counts = vec![Count::one()];
    for &ci in c {
        let width = 2 * ci as usize + 1;
        let mut next = vec![Count::zero(); counts.len() + width - 1];
        for (offset, value) in counts.iter().enumerate() {
            if value.is_zero() {
                continue;
            }
            for slot in &mut next[offset..offset + width] {
                *slot += value;
            }
        }
        counts = next;
    }
    let total = (counts.len() - 1) / 2;
    counts.split_off(total)
}

/// `W_d − W_{d+1}`, where `W_j` counts weight vectors of total weight `j`.
///
/// Independent of the Clebsch–Gordan rule; used to check [`f_kaehler`].
pub fn weight_oracle(d: u64, c: &[u64]) -> Count {
    let counts = weight_counts(c);
    let at = |j: u64| counts.get(j as usize).cloned().unwrap_or_default();
    let (high, low) = (at(d), at(d + 1));
    // Weight multiplicities are unimodal, so this never underflows.
    high - low
}

/// Dimension of the space of holomorphic sections on the polygon space with
/// side lengths `r = (r₀, …, r_{n−1})`, plus the two predicates that qualify it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KaehlerDimension {
    pub dim: Count,
    pub smooth: bool,
    pub nonempty: bool,
}

/// `[R(r₁) ⊗ … ⊗ R(r_{n−1}) : R(r₀)]`. Non-smooth `r` are counted anyway and
/// flagged.
pub fn dim_h0(r: &[u64]) -> Result<KaehlerDimension, KaehlerError> {
    if r.len() < 3 {
        return Err(KaehlerError::TooFewSides(r.len()));
    }
    if let Some(index) = r.iter().position(|&x| x == 0) {
        return Err(KaehlerError::NonPositiveLength { index });
    }
    let dim = f_kaehler(r.len() - 1)?.eval(r[0], &r[1..]);
    Ok(KaehlerDimension {
        dim,
        smooth: is_smooth(r).expect("entries checked positive"),
        nonempty: is_nonempty(&LengthVector::from_sides(r).expect("at least one side")),
    })
}
