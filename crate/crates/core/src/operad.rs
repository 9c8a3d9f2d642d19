//! The operad of finitely supported counting functions on `Z≥0`.
//!
//! An element of arity `n` is a function `(d; c₁..cₙ) ↦ count` such that for
//! each fixed `c` only finitely many `d` give a nonzero value. Since the input
//! space is infinite, elements are kept as evaluators: each carries a support
//! bound `B(c)` with `eval(d; c) = 0` whenever `d > B(c)`. Composition sums
//! over `k = 0..=B_g(c_{i,m})`, which is exact because every dropped term
//! vanishes.
//!
//! Composite and pulled-back elements memoize their values. The caches are
//! behind `RwLock`s and never held across a recursive call, so concurrent
//! evaluation may compute the same entry twice but always stores the same
//! value.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::tree::RibbonTree;

/// Arbitrary-precision nonnegative count.
pub type Count = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperadError {
    #[error("composition position {position} out of range 1..={arity}")]
    PositionOutOfRange { position: usize, arity: usize },
    #[error("index map has no support-bound transport; the pulled-back element may not be finitely supported")]
    MissingBoundTransport,
    #[error(
        "element of arity {arity} is nonzero at d = {d} beyond its bound {bound} for c = {c:?}"
    )]
    UnsoundBound {
        arity: usize,
        d: u64,
        bound: u64,
        c: Vec<u64>,
    },
    #[error("support bound is not monotone: B({smaller:?}) = {low} > B({larger:?}) = {high}")]
    NonMonotoneBound {
        smaller: Vec<u64>,
        larger: Vec<u64>,
        low: u64,
        high: u64,
    },
}

/// User-supplied evaluator for [`WElement::from_evaluator`].
pub trait Evaluate: Send + Sync {
    fn arity(&self) -> usize;
    fn eval(&self, d: u64, c: &[u64]) -> Count;
    /// `eval(d; c) = 0` for every `d` above this value.
    fn support_bound(&self, c: &[u64]) -> u64;
}

type Memo = RwLock<HashMap<(u64, Vec<u64>), Count>>;

enum Kind {
    Unit,
    Composite {
        outer: WElement,
        position: usize,
        inner: WElement,
    },
    Pullback {
        map: IndexMap,
        base: WElement,
    },
    Custom(Arc<dyn Evaluate>),
}

struct Inner {
    arity: usize,
    kind: Kind,
    memo: Memo,
}

/// An element of the operad, shared by reference counting.
#[derive(Clone)]
pub struct WElement {
    inner: Arc<Inner>,
}

impl fmt::Debug for WElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.inner.kind {
            Kind::Unit => "unit",
            Kind::Composite { .. } => "composite",
            Kind::Pullback { .. } => "pullback",
            Kind::Custom(_) => "custom",
        };
        f.debug_struct("WElement")
            .field("arity", &self.inner.arity)
            .field("kind", &kind)
            .finish()
    }
}

/// `c^{i,m;k}`: replace the block of length `m` starting at position `i`
/// (1-based) by the single entry `k`.
pub fn substitute_block(c: &[u64], i: usize, m: usize, k: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(c.len() + 1 - m);
    out.extend_from_slice(&c[..i - 1]);
    out.push(k);
    out.extend_from_slice(&c[i - 1 + m..]);
    out
}

/// `c_{i,m}`: the block of length `m` starting at position `i` (1-based).
pub fn extract_block(c: &[u64], i: usize, m: usize) -> &[u64] {
    &c[i - 1..i - 1 + m]
}

impl WElement {
    fn wrap(arity: usize, kind: Kind) -> Self {
        WElement {
            inner: Arc::new(Inner {
                arity,
                kind,
                memo: RwLock::new(HashMap::new()),
            }),
        }
    }

    /// The unit: `1` if `d = c`, else `0`.
    pub fn unit() -> Self {
        Self::wrap(1, Kind::Unit)
    }

    pub fn from_evaluator(evaluator: Arc<dyn Evaluate>) -> Self {
        Self::wrap(evaluator.arity(), Kind::Custom(evaluator))
    }

    /// Wrap a closure pair. Nothing is checked here; see [`WElement::certify`].
    pub fn from_fn<E, B>(arity: usize, eval: E, bound: B) -> Self
    where
        E: Fn(u64, &[u64]) -> Count + Send + Sync + 'static,
        B: Fn(&[u64]) -> u64 + Send + Sync + 'static,
    {
        struct Closure<E, B> {
            arity: usize,
            eval: E,
            bound: B,
        }
        impl<E, B> Evaluate for Closure<E, B>
        where
            E: Fn(u64, &[u64]) -> Count + Send + Sync,
            B: Fn(&[u64]) -> u64 + Send + Sync,
        {
            fn arity(&self) -> usize {
                self.arity
            }
            fn eval(&self, d: u64, c: &[u64]) -> Count {
                (self.eval)(d, c)
            }
            fn support_bound(&self, c: &[u64]) -> u64 {
                (self.bound)(c)
            }
        }
        Self::from_evaluator(Arc::new(Closure { arity, eval, bound }))
    }

    pub fn arity(&self) -> usize {
        self.inner.arity
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.inner.kind, Kind::Unit)
    }

    pub fn support_bound(&self, c: &[u64]) -> u64 {
        assert_eq!(c.len(), self.arity(), "arity mismatch");
        match &self.inner.kind {
            Kind::Unit => c[0],
            Kind::Composite {
                outer,
                position,
                inner,
            } => {
                let m = inner.arity();
                let worst = inner.support_bound(extract_block(c, *position, m));
                outer.support_bound(&substitute_block(c, *position, m, worst))
            }
            Kind::Pullback { map, base } => {
                let mapped: Vec<u64> = c.iter().map(|&x| map.majorant(x)).collect();
                map.transport(base.support_bound(&mapped))
                    .expect("pullbacks are built with a transport")
            }
            Kind::Custom(e) => e.support_bound(c),
        }
    }

    /// Value at `(d; c)`.
    ///
    /// # Panics
    /// If `c.len()` differs from the arity.
    pub fn eval(&self, d: u64, c: &[u64]) -> Count {
        assert_eq!(c.len(), self.arity(), "arity mismatch");
        match &self.inner.kind {
            Kind::Unit => {
                if d == c[0] {
                    Count::one()
                } else {
                    Count::zero()
                }
            }
            Kind::Custom(e) => e.eval(d, c),
            _ => {
                if d > self.support_bound(c) {
                    return Count::zero();
                }
                let key = (d, c.to_vec());
                if let Some(hit) = self.inner.memo.read().expect("memo lock").get(&key) {
                    return hit.clone();
                }
                let value = self.compute(d, c);
                self.inner
                    .memo
                    .write()
                    .expect("memo lock")
                    .insert(key, value.clone());
                value
            }
        }
    }

    fn compute(&self, d: u64, c: &[u64]) -> Count {
        match &self.inner.kind {
            Kind::Composite {
                outer,
                position,
                inner,
            } => {
                let m = inner.arity();
                let block = extract_block(c, *position, m);
                let mut total = Count::zero();
                for k in 0..=inner.support_bound(block) {
                    let right = inner.eval(k, block);
                    if right.is_zero() {
                        continue;
                    }
                    let left = outer.eval(d, &substitute_block(c, *position, m, k));
                    if !left.is_zero() {
                        total += left * right;
                    }
                }
                total
            }
            Kind::Pullback { map, base } => {
                let mapped: Vec<u64> = c.iter().map(|&x| map.apply(x)).collect();
                base.eval(map.apply(d), &mapped)
            }
            Kind::Unit | Kind::Custom(_) => unreachable!("not memoized"),
        }
    }

    /// `self ∘_position inner`.
    pub fn compose(&self, position: usize, inner: &WElement) -> Result<WElement, OperadError> {
        w_compose(self, position, inner)
    }

    /// Scan `c ∈ {0..=max_label}^n` and check that the bound is sound (zeros
    /// for `d` in `B(c)+1 ..= B(c)+scan`) and monotone in each coordinate.
    pub fn certify(&self, max_label: u64, scan: u64) -> Result<(), OperadError> {
        for c in label_box(self.arity(), max_label) {
            let bound = self.support_bound(&c);
            for d in bound + 1..=bound + scan {
                if !self.eval(d, &c).is_zero() {
                    return Err(OperadError::UnsoundBound {
                        arity: self.arity(),
                        d,
                        bound,
                        c,
                    });
                }
            }
            for slot in 0..c.len() {
                if c[slot] < max_label {
                    let mut larger = c.clone();
                    larger[slot] += 1;
                    let high = self.support_bound(&larger);
                    if high < bound {
                        return Err(OperadError::NonMonotoneBound {
                            smaller: c,
                            larger,
                            low: bound,
                            high,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// All tuples in `{0..=max}^len`, lexicographically.
pub fn label_box(len: usize, max: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = (max + 1)
        .checked_pow(len as u32)
        .expect("label box too large");
    (0..total).map(move |mut index| {
        let mut tuple = vec![0; len];
        for slot in tuple.iter_mut().rev() {
            *slot = index % (max + 1);
            index /= max + 1;
        }
        tuple
    })
}

/// Partial composition `(f ∘_i g)(d; c) = Σ_k f(d; c^{i,m;k}) · g(k; c_{i,m})`.
pub fn w_compose(f: &WElement, i: usize, g: &WElement) -> Result<WElement, OperadError> {
    if i == 0 || i > f.arity() {
        return Err(OperadError::PositionOutOfRange {
            position: i,
            arity: f.arity(),
        });
    }
    Ok(WElement::wrap(
        f.arity() + g.arity() - 1,
        Kind::Composite {
            outer: f.clone(),
            position: i,
            inner: g.clone(),
        },
    ))
}

pub fn w_unit() -> WElement {
    WElement::unit()
}

type MapFn = Arc<dyn Fn(u64) -> u64 + Send + Sync>;

/// A map `Z≥0 → Z≥0` used for pullbacks, optionally paired with a bound
/// transport `t` such that `d > t(b)` implies `map(d) > b`, and a monotone
/// majorant `u ≥ map`.
#[derive(Clone)]
pub struct IndexMap {
    map: MapFn,
    majorant: MapFn,
    transport: Option<MapFn>,
}

impl fmt::Debug for IndexMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IndexMap")
            .field("has_transport", &self.transport.is_some())
            .finish()
    }
}

impl IndexMap {
    /// `majorant` must be monotone with `majorant(x) ≥ map(x)`; pulled-back
    /// support bounds are sound when the base element's bound is monotone.
    pub fn new<F, U, T>(map: F, majorant: U, transport: T) -> Self
    where
        F: Fn(u64) -> u64 + Send + Sync + 'static,
        U: Fn(u64) -> u64 + Send + Sync + 'static,
        T: Fn(u64) -> u64 + Send + Sync + 'static,
    {
        IndexMap {
            map: Arc::new(map),
            majorant: Arc::new(majorant),
            transport: Some(Arc::new(transport)),
        }
    }

    pub fn without_transport<F>(map: F) -> Self
    where
        F: Fn(u64) -> u64 + Send + Sync + 'static,
    {
        let map: MapFn = Arc::new(map);
        IndexMap {
            majorant: map.clone(),
            map,
            transport: None,
        }
    }

    pub fn identity() -> Self {
        Self::new(|x| x, |x| x, |b| b)
    }

    pub fn constant(value: u64) -> Self {
        Self::without_transport(move |_| value)
    }

    /// Permutes `0..image.len()` by `x ↦ image[x]` and fixes everything above.
    /// Returns `None` unless `image` is a permutation of `0..image.len()`.
    pub fn finite_permutation(image: Vec<u64>) -> Option<Self> {
        let n = image.len() as u64;
        let mut seen = vec![false; image.len()];
        for &y in &image {
            if y >= n || std::mem::replace(&mut seen[y as usize], true) {
                return None;
            }
        }
        let image = Arc::new(image);
        let top = n.saturating_sub(1);
        Some(Self::new(
            move |x| image.get(x as usize).copied().unwrap_or(x),
            move |x| x.max(top),
            move |b| b.max(top),
        ))
    }

    /// `x ↦ scale·x + shift` with `scale ≥ 1`.
    pub fn affine(scale: u64, shift: u64) -> Option<Self> {
        (scale >= 1).then(|| {
            Self::new(
                move |x| scale * x + shift,
                move |x| scale * x + shift,
                move |b| b.saturating_sub(shift) / scale,
            )
        })
    }

    pub fn apply(&self, x: u64) -> u64 {
        (self.map)(x)
    }

    pub fn majorant(&self, x: u64) -> u64 {
        (self.majorant)(x)
    }

    pub fn transport(&self, bound: u64) -> Option<u64> {
        self.transport.as_ref().map(|t| t(bound))
    }
}

/// `(Φ*f)(d; c) = f(Φ(d); Φ(c₁), …, Φ(cₙ))`.
pub fn pullback(map: &IndexMap, f: &WElement) -> Result<WElement, OperadError> {
    if map.transport.is_none() {
        return Err(OperadError::MissingBoundTransport);
    }
    Ok(WElement::wrap(
        f.arity(),
        Kind::Pullback {
            map: map.clone(),
            base: f.clone(),
        },
    ))
}

/// The projection onto the corolla operad: a tree maps to its leaf count.
pub fn project_leafcount(tree: &RibbonTree) -> usize {
    tree.leaf_count()
}
