//! The explicit Eilenberg–Zilber operators between `C^N(X × Y)` and
//! `C^N(X) ⊗ C^N(Y)`.
//!
//! Each operator is a term generator: it walks the summands of its closed
//! formula, applies the operator words, and hands every summand whose output
//! survives normalization to a callback together with the parity of its sign.
//! `X` and `Y` are any [`SimplicialObject`], so the same code serves two-fold
//! products of simplicial sets and the nested splittings `X × (X × ... × X)`
//! used for `p`-fold products.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::simplicial::{OperatorWord, SimplicialObject};

/// A `(p, q)`-shuffle: a partition of `{0, ..., p+q-1}` into ascending `alpha`
/// (length `p`) and `beta` (length `q`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    /// `Σ_i alpha_i - (i - 1)`.
    pub sig: usize,
}

/// All `(p, q)`-shuffles, lexicographic in `alpha`.
pub fn shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    shuffle_masks(p, q)
        .iter()
        .map(|s| {
            let alpha: Vec<usize> = (0..p + q).filter(|i| s.alpha & (1u64 << i) != 0).collect();
            let beta: Vec<usize> = (0..p + q).filter(|i| s.beta & (1u64 << i) != 0).collect();
            Shuffle { alpha, beta, sig: s.sig }
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
struct ShuffleMask {
    alpha: u64,
    beta: u64,
    sig: usize,
}

fn enumerate_shuffles(p: usize, q: usize) -> Vec<ShuffleMask> {
    fn rec(start: usize, left: usize, n: usize, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for v in start..=n - left {
            rec(v + 1, left - 1, n, acc | (1u64 << v), out);
        }
    }
    let n = p + q;
    let mut alphas = Vec::new();
    rec(0, p, n, 0, &mut alphas);
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    alphas
        .into_iter()
        .map(|alpha| {
            let sig = (0..n).filter(|i| alpha & (1u64 << i) != 0).enumerate().map(|(pos, a)| a - pos).sum();
            ShuffleMask { alpha, beta: full & !alpha, sig }
        })
        .collect()
}

thread_local! {
    static SHUFFLES: RefCell<HashMap<(usize, usize), Rc<[ShuffleMask]>>> = RefCell::new(HashMap::new());
}

fn shuffle_masks(p: usize, q: usize) -> Rc<[ShuffleMask]> {
    SHUFFLES.with(|cache| {
        cache.borrow_mut().entry((p, q)).or_insert_with(|| enumerate_shuffles(p, q).into()).clone()
    })
}

fn degenerate_by<S: SimplicialObject>(space: &S, x: &S::Simplex, mask: u64, offset: usize) -> S::Simplex {
    let mut y = x.clone();
    let mut rest = mask;
    while rest != 0 {
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        y = space.degeneracy(b + offset, &y);
    }
    y
}

/// Alexander–Whitney: `AW(a × b) = Σ_{i=0}^m ∂_{i+1}⋯∂_m a ⊗ ∂_0⋯∂_{i-1} b`.
///
/// Summands with a degenerate factor are skipped; all signs are `+`.
pub fn aw_terms<A, B>(xa: &A, xb: &B, a: &A::Simplex, b: &B::Simplex, mut emit: impl FnMut(A::Simplex, B::Simplex))
where
    A: SimplicialObject,
    B: SimplicialObject,
{
    let m = xa.dim(a);
    debug_assert_eq!(m, xb.dim(b));
    for i in 0..=m {
        let front = OperatorWord::deleting(m, i + 1..=m).expect("in range").apply(xa, a);
        if xa.is_degenerate(&front) {
            continue;
        }
        let back = OperatorWord::deleting(m, 0..i).expect("in range").apply(xb, b);
        if xb.is_degenerate(&back) {
            continue;
        }
        emit(front, back);
    }
}

/// Eilenberg–Mac Lane shuffle map:
/// `EML(a_p ⊗ b_q) = Σ (-1)^{sig} s_{β_q}⋯s_{β_1} a × s_{α_p}⋯s_{α_1} b`.
///
/// Emits `(a', b', odd)` for every nondegenerate product simplex.
pub fn eml_terms<A, B>(xa: &A, xb: &B, a: &A::Simplex, b: &B::Simplex, mut emit: impl FnMut(A::Simplex, B::Simplex, bool))
where
    A: SimplicialObject,
    B: SimplicialObject,
{
    let p = xa.dim(a);
    let q = xb.dim(b);
    for s in shuffle_masks(p, q).iter() {
        let a2 = degenerate_by(xa, a, s.beta, 0);
        let b2 = degenerate_by(xb, b, s.alpha, 0);
        if xa.degeneracy_mask(&a2) & xb.degeneracy_mask(&b2) != 0 {
            continue;
        }
        emit(a2, b2, s.sig % 2 == 1);
    }
}

/// Shih homotopy, closed form. With `m̄ = m - p - q`,
///
/// `SHI(a × b) = Σ (-1)^{m̄+sig+1} s_{β_q+m̄}⋯s_{β_1+m̄} s_{m̄-1} ∂_{m-q+1}⋯∂_m a
///               × s_{α_{p+1}+m̄}⋯s_{α_1+m̄} ∂_{m̄}⋯∂_{m-q-1} b`
///
/// over `0 <= q <= m-1`, `0 <= p <= m-q-1` and `(p+1, q)`-shuffles. Zero in
/// dimension 0.
pub fn shi_terms<A, B>(xa: &A, xb: &B, a: &A::Simplex, b: &B::Simplex, mut emit: impl FnMut(A::Simplex, B::Simplex, bool))
where
    A: SimplicialObject,
    B: SimplicialObject,
{
    let m = xa.dim(a);
    debug_assert_eq!(m, xb.dim(b));
    for q in 0..m {
        let a_face = OperatorWord::deleting(m, m - q + 1..=m).expect("in range").apply(xa, a);
        for p in 0..m - q {
            let mbar = m - p - q;
            let a_base = xa.degeneracy(mbar - 1, &a_face);
            let b_base = OperatorWord::deleting(m, mbar..m - q).expect("in range").apply(xb, b);
            for s in shuffle_masks(p + 1, q).iter() {
                let a2 = degenerate_by(xa, &a_base, s.beta, mbar);
                let b2 = degenerate_by(xb, &b_base, s.alpha, mbar);
                if xa.degeneracy_mask(&a2) & xb.degeneracy_mask(&b2) != 0 {
                    continue;
                }
                emit(a2, b2, (mbar + s.sig + 1) % 2 == 1);
            }
        }
    }
}

/// Number of raw summands of each operator, before normalization.
pub fn raw_summands_aw(m: usize) -> usize {
    m + 1
}

pub fn raw_summands_eml(p: usize, q: usize) -> usize {
    binomial(p + q, p)
}

pub fn raw_summands_shi(m: usize) -> usize {
    (0..m).map(|q| (0..m - q).map(|p| binomial(p + 1 + q, q)).sum::<usize>()).sum()
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
