//! The higher diagonal approximation `D_n = h_n Δ`, `h_n = AW (t SHI)^n`,
//! cup-i products and Steenrod squares.
//!
//! `h_n` is computed two ways. [`h_slow`] composes the Eilenberg–Zilber
//! operators literally. [`h_fast`] sums over strictly increasing multi-indices
//! `(i_0, ..., i_n)` in `{0, ..., m}`, each contributing one signed tensor of
//! two pure face words: cut `0..=m` at the `i_k` into `n + 2` segments; the
//! first word deletes the odd-numbered segments and the second word the
//! even-numbered ones.

use std::collections::HashMap;

use smallvec::SmallVec;

use crate::chains::{differential, tensor_boundary, Chain, Coefficient, Cochain, ProductChain, ProductSimplex, Tensor, TensorChain, Z2};
use crate::error::{Error, Result};
use crate::ez::{aw_terms, shi_terms};
use crate::simplicial::{OperatorWord, SimplexRef, SimplicialObject, SimplicialSet};

/// `ī = (i_0 < i_1 < ... < i_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub SmallVec<[usize; 8]>);

impl MultiIndex {
    pub fn new(entries: impl IntoIterator<Item = usize>) -> Self {
        MultiIndex(entries.into_iter().collect())
    }

    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// The `n + 2` segments of `0..=m` between the cut points, as half-open
    /// ranges (possibly empty).
    pub fn segments(&self, m: usize) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::with_capacity(self.0.len() + 1);
        let mut start = 0;
        for &i in &self.0 {
            out.push(start..i);
            start = i + 1;
        }
        out.push(start..m + 1);
        out
    }

    /// The two face words: the first deletes the odd segments, the second the
    /// even ones.
    pub fn words(&self, m: usize) -> (OperatorWord, OperatorWord) {
        let segs = self.segments(m);
        let pick = |parity: usize| {
            let vertices = segs.iter().enumerate().filter(|(k, _)| k % 2 == parity).flat_map(|(_, r)| r.clone());
            OperatorWord::deleting(m, vertices).expect("segments lie in 0..=m")
        };
        (pick(1), pick(0))
    }
}

/// All `(n + 1)`-element multi-indices in `{0, ..., m}`, lexicographic.
pub fn theorem_indices(n: usize, m: usize) -> Vec<MultiIndex> {
    fn rec(start: usize, left: usize, m: usize, acc: &mut SmallVec<[usize; 8]>, out: &mut Vec<MultiIndex>) {
        if left == 0 {
            out.push(MultiIndex(acc.clone()));
            return;
        }
        if m + 1 < start + left {
            return;
        }
        for v in start..=m + 1 - left {
            acc.push(v);
            rec(v + 1, left - 1, m, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n + 1, m, &mut SmallVec::new(), &mut out);
    out
}

/// Which sign exponent to drop when deliberately miscomputing signs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SignFault {
    #[default]
    None,
    DropA,
    DropB,
    DropC,
    DropD,
}

/// The exponents of `(-1)^{A(n) + B(n,m,ī) + C(n,ī) + D(n,m,ī)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignExponents {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl SignExponents {
    pub fn compute(n: usize, m: usize, idx: &MultiIndex) -> Self {
        let i = |k: usize| idx.0[k] as u64;
        let (n64, m64) = (n as u64, m as u64);
        let a = u64::from(matches!(n % 8, 3..=6));
        let b = if matches!(n % 4, 1 | 2) {
            (0..=n / 2).map(|j| i(2 * j)).sum()
        } else {
            let odd: u64 = if n == 0 { 0 } else { (0..=(n - 1) / 2).map(|j| i(2 * j + 1)).sum() };
            odd + n64 * m64
        };
        let prefix = |k: usize| (0..=k).map(i).sum::<u64>();
        let c = (1..=n / 2).map(|j| (i(2 * j) + i(2 * j - 1)) * prefix(2 * j - 1)).sum();
        let d = if n % 2 == 1 { (m64 + i(n)) * prefix(n) } else { 0 };
        SignExponents { a, b, c, d }
    }

    pub fn with_fault(mut self, fault: SignFault) -> Self {
        match fault {
            SignFault::None => {}
            SignFault::DropA => self.a = 0,
            SignFault::DropB => self.b = 0,
            SignFault::DropC => self.c = 0,
            SignFault::DropD => self.d = 0,
        }
        self
    }

    pub fn is_odd(&self) -> bool {
        (self.a + self.b + self.c + self.d) % 2 == 1
    }
}

/// One summand of `h_n` on an `m`-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalTerm {
    pub index: MultiIndex,
    /// `+1` or `-1`.
    pub sign: i8,
    pub word_first: OperatorWord,
    pub word_second: OperatorWord,
    /// `n mod 2`; for odd `n` the words act on swapped components.
    pub parity: usize,
}

pub fn diagonal_terms(n: usize, m: usize) -> Vec<DiagonalTerm> {
    diagonal_terms_with(n, m, SignFault::None)
}

pub fn diagonal_terms_with(n: usize, m: usize, fault: SignFault) -> Vec<DiagonalTerm> {
    theorem_indices(n, m)
        .into_iter()
        .map(|index| {
            let odd = SignExponents::compute(n, m, &index).with_fault(fault).is_odd();
            let (word_first, word_second) = index.words(m);
            DiagonalTerm { index, sign: if odd { -1 } else { 1 }, word_first, word_second, parity: n % 2 }
        })
        .collect()
}

/// `h_n(a × b)` by the closed face-operator formula.
pub fn h_fast<S, R>(n: usize, xs: &S, ys: &S, a: &SimplexRef, b: &SimplexRef) -> TensorChain<R>
where
    S: SimplicialObject<Simplex = SimplexRef>,
    R: Coefficient,
{
    h_fast_with(n, xs, ys, a, b, SignFault::None)
}

pub fn h_fast_with<S, R>(n: usize, xs: &S, ys: &S, a: &SimplexRef, b: &SimplexRef, fault: SignFault) -> TensorChain<R>
where
    S: SimplicialObject<Simplex = SimplexRef>,
    R: Coefficient,
{
    let m = a.dim();
    debug_assert_eq!(m, b.dim());
    let mut out = TensorChain::new();
    for index in theorem_indices(n, m) {
        let (w1, w2) = index.words(m);
        let (u, v) = if n % 2 == 0 { (w1.apply(xs, a), w2.apply(ys, b)) } else { (w1.apply(ys, b), w2.apply(xs, a)) };
        let coeff = if R::SIGNLESS {
            R::one()
        } else {
            R::sign(SignExponents::compute(n, m, &index).with_fault(fault).is_odd())
        };
        out.add_term(Tensor::pair(u, v), coeff);
    }
    out
}

/// `h_n(a × b) = AW (t SHI)^n (a × b)` by composing the operators.
pub fn h_slow<S, R>(n: usize, xs: &S, ys: &S, a: &SimplexRef, b: &SimplexRef) -> TensorChain<R>
where
    S: SimplicialObject<Simplex = SimplexRef>,
    R: Coefficient,
{
    let mut out = TensorChain::new();
    if a.degeneracy_mask() & b.degeneracy_mask() != 0 {
        return out;
    }
    let mut current: Vec<((SimplexRef, SimplexRef), R)> = vec![((*a, *b), R::one())];
    let (mut sx, mut sy) = (xs, ys);
    for _ in 0..n {
        let mut next: HashMap<(SimplexRef, SimplexRef), R> = HashMap::new();
        for ((u, v), r) in &current {
            shi_terms(sx, sy, u, v, |u2, v2, odd| {
                let e = next.entry((v2, u2)).or_insert_with(R::zero);
                *e = e.add(r.mul(R::sign(odd)));
            });
        }
        std::mem::swap(&mut sx, &mut sy);
        current = next.into_iter().filter(|(_, r)| !r.is_zero()).collect();
        current.sort_by(|x, y| x.0.cmp(&y.0));
    }
    for ((u, v), r) in current {
        aw_terms(sx, sy, &u, &v, |p, q| out.add_term(Tensor::pair(p, q), r));
    }
    out
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    Slow,
    #[default]
    Fast,
}

/// `D_i(x) = h_i(x × x)`.
pub fn big_d<R: Coefficient>(i: usize, space: &SimplicialSet, x: &SimplexRef, mode: Mode) -> TensorChain<R> {
    match mode {
        Mode::Slow => h_slow(i, space, space, x, x),
        Mode::Fast => h_fast(i, space, space, x, x),
    }
}

/// `Δ(x) = (x, ..., x)`.
pub fn diagonal<R: Coefficient>(x: SimplexRef, p: usize) -> ProductChain<R> {
    ProductChain::single(ProductSimplex::diagonal(x, p), R::one())
}

/// `t(x_1, ..., x_p) = (x_2, ..., x_p, x_1)`.
pub fn rotate_t<R: Coefficient>(c: &ProductChain<R>) -> ProductChain<R> {
    c.iter().map(|(z, r)| (z.rotated(), r)).collect()
}

/// `T(x_1 ⊗ ... ⊗ x_p) = (-1)^{|x_1|(|x_2| + ... + |x_p|)} x_2 ⊗ ... ⊗ x_p ⊗ x_1`.
pub fn rotate_tensor<R: Coefficient>(c: &TensorChain<R>) -> TensorChain<R> {
    c.iter()
        .map(|(t, r)| {
            let first = t.0[0].dim();
            let rest: usize = t.0[1..].iter().map(|x| x.dim()).sum();
            let mut f = t.0.clone();
            f.rotate_left(1);
            (Tensor(f), r.mul(R::sign(first * rest % 2 == 1)))
        })
        .collect()
}

/// `d_⊗ D_{i+1}(x) + (-1)^i D_{i+1}(dx) - T D_i(x) - (-1)^{i+1} D_i(x)`,
/// which vanishes for a higher diagonal approximation.
pub fn recurrence_defect(i: usize, space: &SimplicialSet, x: &SimplexRef, mode: Mode) -> TensorChain<i64> {
    let spaces = [space, space];
    let next = big_d::<i64>(i + 1, space, x, mode);
    let mut lhs = tensor_boundary(&spaces, &next);
    let dx = differential(space, &Chain::single(*x, 1i64));
    let sign = if i % 2 == 0 { 1 } else { -1 };
    for (y, r) in dx.iter() {
        lhs.add_scaled(&big_d(i + 1, space, y, mode), sign * r);
    }
    let di = big_d::<i64>(i, space, x, mode);
    lhs.sub_assign(&rotate_tensor(&di));
    lhs.add_scaled(&di, if i % 2 == 0 { 1 } else { -1 });
    lhs
}

/// `c ⌣_i c'(x) = μ⟨c ⊗ c', D_i(x)⟩`.
pub fn cup_i(i: usize, space: &SimplicialSet, c: &Cochain, c2: &Cochain, x: &SimplexRef) -> Result<Z2> {
    cup_i_with(i, space, c, c2, x, Mode::Fast)
}

pub fn cup_i_with(i: usize, space: &SimplicialSet, c: &Cochain, c2: &Cochain, x: &SimplexRef, mode: Mode) -> Result<Z2> {
    let total = c.degree() + c2.degree();
    if total < i || x.dim() != total - i {
        return Err(Error::DegreeMismatch(format!(
            "cup-{i} of degrees {} and {} is evaluated on {}-simplices, not on a {}-simplex",
            c.degree(),
            c2.degree(),
            total as i64 - i as i64,
            x.dim()
        )));
    }
    Ok(pair_tensor(c, c2, &big_d::<Z2>(i, space, x, mode)))
}

fn pair_tensor<R: Coefficient>(c: &Cochain, c2: &Cochain, t: &TensorChain<R>) -> Z2 {
    t.iter().fold(Z2::ZERO, |acc, (t, r)| acc.add(c.value(&t.0[0]).mul(c2.value(&t.0[1])).mul(r.to_z2())))
}

/// `c ⌣_i c'` on every generator of degree `p + q - i`.
pub fn cup_i_cochain(i: usize, space: &SimplicialSet, c: &Cochain, c2: &Cochain) -> Result<Cochain> {
    let total = c.degree() + c2.degree();
    if total < i {
        return Err(Error::DegreeMismatch(format!("cup-{i} of degrees {} and {} has negative degree", c.degree(), c2.degree())));
    }
    let mut out = Cochain::zero(total - i);
    for &g in space.generators(total - i) {
        if cup_i(i, space, c, c2, &space.simplex(g))?.0 {
            out.toggle(g);
        }
    }
    Ok(out)
}

/// The cup product `c ⌣ c'`.
pub fn cup(space: &SimplicialSet, c: &Cochain, c2: &Cochain) -> Cochain {
    cup_i_cochain(0, space, c, c2).expect("cup-0 is defined in all degrees")
}

/// Multi-indices of the Steenrod square `Sq^i` on degree-`j` classes
/// (`n = j - i`, `m = i + j`): `i_n, ..., i_1` range from
/// `max(S(k), k)` up to `i_{k+1} - 1` (with `i_{n+1} - 1 = m`), and
/// `i_0 = S(0)` when `0 <= S(0) < i_1`, where
/// `S(k) = i_{k+1} - i_{k+2} + ... ± i_n + (-1)^{k+n} ⌊(m+1)/2⌋ + ⌊k/2⌋`.
pub fn sq_indices(i: usize, j: usize) -> Vec<MultiIndex> {
    if i > j {
        return Vec::new();
    }
    let n = j - i;
    let m = (i + j) as i64;
    let half = (m + 1) / 2;
    // S(k) given i_{k+1}, ..., i_n stored in `chosen` (chosen[l] = i_l)
    let s = |k: usize, chosen: &[i64]| -> i64 {
        let alt: i64 = (k + 1..=n).map(|l| if (l - k - 1) % 2 == 0 { chosen[l] } else { -chosen[l] }).sum();
        let tail = if (k + n) % 2 == 0 { half } else { -half };
        alt + tail + (k / 2) as i64
    };
    fn rec(
        k: usize,
        upper: i64,
        chosen: &mut Vec<i64>,
        s: &dyn Fn(usize, &[i64]) -> i64,
        out: &mut Vec<MultiIndex>,
    ) {
        if k == 0 {
            let i0 = s(0, chosen);
            if (0..=upper).contains(&i0) {
                chosen[0] = i0;
                out.push(MultiIndex(chosen.iter().map(|&v| v as usize).collect()));
            }
            return;
        }
        let lower = s(k, chosen).max(k as i64);
        for v in lower..=upper {
            chosen[k] = v;
            rec(k - 1, v - 1, chosen, s, out);
        }
    }
    let mut chosen = vec![0i64; n + 1];
    let mut out = Vec::new();
    rec(n, m, &mut chosen, &s, &mut out);
    out.sort();
    out
}

/// Summands and face operators of the `Sq^i` formula on degree `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TermCount {
    pub summands: u64,
    pub face_ops: u64,
}

pub fn term_count(i: usize, j: usize) -> TermCount {
    let m = i + j;
    let idx = sq_indices(i, j);
    let face_ops = idx
        .iter()
        .map(|ix| {
            let (w1, w2) = ix.words(m);
            (w1.face_count() + w2.face_count()) as u64
        })
        .sum();
    TermCount { summands: idx.len() as u64, face_ops }
}

/// `Sq^i(c)(x)` by the closed formula, on any simplicial object (for
/// instrumented evaluation).
pub fn sq_value<S>(space: &S, i: usize, c: &Cochain, x: &SimplexRef) -> Z2
where
    S: SimplicialObject<Simplex = SimplexRef>,
{
    let j = c.degree();
    let m = i + j;
    if i > j || x.dim() != m {
        return Z2::ZERO;
    }
    let mut acc = false;
    for ix in sq_indices(i, j) {
        let (w1, w2) = ix.words(m);
        acc ^= c.value(&w1.apply(space, x)).0 & c.value(&w2.apply(space, x)).0;
    }
    Z2(acc)
}

/// `Sq^i(c)(x) = μ⟨c ⊗ c, h_{j-i}(x × x)⟩` by composing operators.
pub fn sq_slow_value<S>(space: &S, i: usize, c: &Cochain, x: &SimplexRef) -> Z2
where
    S: SimplicialObject<Simplex = SimplexRef>,
{
    let j = c.degree();
    if i > j || x.dim() != i + j {
        return Z2::ZERO;
    }
    pair_tensor(c, c, &h_slow::<S, Z2>(j - i, space, space, x, x))
}

fn sq_by(space: &SimplicialSet, i: usize, c: &Cochain, value: impl Fn(&SimplexRef) -> Z2) -> Cochain {
    let m = i + c.degree();
    let mut out = Cochain::zero(m);
    if i > c.degree() {
        return out;
    }
    for &g in space.generators(m) {
        if value(&space.simplex(g)).0 {
            out.toggle(g);
        }
    }
    out
}

/// `Sq^i(c)` as a cochain of degree `i + deg c`.
pub fn sq(space: &SimplicialSet, i: usize, c: &Cochain) -> Cochain {
    sq_by(space, i, c, |x| sq_value(space, i, c, x))
}

pub fn sq_slow(space: &SimplicialSet, i: usize, c: &Cochain) -> Cochain {
    sq_by(space, i, c, |x| sq_slow_value(space, i, c, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    fn edges() -> (SimplicialSet, SimplexRef, SimplexRef) {
        let x = library::builtin("simplex-2").unwrap();
        let a = x.simplex(x.find("0,1").unwrap());
        let b = x.simplex(x.find("1,2").unwrap());
        (x, a, b)
    }

    #[test]
    fn segments_and_words() {
        let ix = MultiIndex::new([1, 3]);
        assert_eq!(ix.segments(5), vec![0..1, 2..3, 4..6]);
        let (w1, w2) = ix.words(5);
        assert_eq!(w1.face_indices(), vec![2]);
        assert_eq!(w2.face_indices(), vec![0, 4, 5]);
    }

    #[test]
    fn theorem_index_ranges() {
        assert_eq!(theorem_indices(0, 2).len(), 3);
        assert_eq!(theorem_indices(2, 4).len(), 10);
        assert!(theorem_indices(3, 2).is_empty());
    }

    #[test]
    fn sign_exponents_by_hand() {
        let e = SignExponents::compute(1, 1, &MultiIndex::new([0, 1]));
        assert_eq!((e.a, e.b % 2, e.c % 2, e.d % 2), (0, 0, 0, 0));
        for n in 0..16 {
            let idx = MultiIndex::new(0..=n);
            let a = SignExponents::compute(n, n, &idx).a;
            assert_eq!(a == 1, [3, 4, 5, 6].contains(&(n % 8)), "n = {n}");
        }
        // n = 2, m = 4, ī = (0, 2, 3): B = i_0 + i_2, C = (i_2 + i_1)(i_1 + i_0)
        let e = SignExponents::compute(2, 4, &MultiIndex::new([0, 2, 3]));
        assert_eq!((e.b, e.c, e.d), (3, 10, 0));
        // n = 3, m = 5, ī = (0, 1, 3, 4): B = i_1 + i_3 + 3m, D = (m + i_3)(i_3 + ... + i_0)
        let e = SignExponents::compute(3, 5, &MultiIndex::new([0, 1, 3, 4]));
        assert_eq!((e.b, e.d), (20, 72));
    }

    #[test]
    fn fast_formula_on_two_edges() {
        let (x, a, b) = edges();
        let h: TensorChain<i64> = h_fast(1, &x, &x, &a, &b);
        assert_eq!(h, TensorChain::single(Tensor::pair(b, a), 1));
        let slow: TensorChain<i64> = h_slow(1, &x, &x, &a, &b);
        assert_eq!(h, slow);
    }

    #[test]
    fn degree_zero_is_alexander_whitney() {
        let (x, a, b) = edges();
        let h: TensorChain<i64> = h_fast(0, &x, &x, &a, &b);
        let mut aw = TensorChain::new();
        aw_terms(&x, &x, &a, &b, |u, v| aw.add_term(Tensor::pair(u, v), 1i64));
        assert_eq!(h, aw);
    }

    #[test]
    fn vanishing_cases() {
        let (x, a, _) = edges();
        let v = x.simplex(x.find("0").unwrap());
        assert!(h_slow::<_, i64>(1, &x, &x, &v, &v).is_zero());
        assert!(big_d::<i64>(2, &x, &a, Mode::Fast).is_zero());
        assert!(big_d::<i64>(2, &x, &a, Mode::Slow).is_zero());
    }

    #[test]
    fn words_contain_faces_only() {
        for n in 0..4 {
            for m in 0..7 {
                for t in diagonal_terms(n, m) {
                    assert!(t.word_first.is_face_only() && t.word_second.is_face_only());
                    assert_eq!(t.word_first.face_count() + t.word_second.face_count(), m - n);
                }
            }
        }
    }

    #[test]
    fn tensor_rotation_signs() {
        let (_, a, b) = edges();
        let t = TensorChain::single(Tensor::pair(a, b), 1i64);
        assert_eq!(rotate_tensor(&t), TensorChain::single(Tensor::pair(b, a), -1));
        let z = ProductChain::single(ProductSimplex::new([a, b, a]), 1i64);
        assert_eq!(rotate_t(&rotate_t(&rotate_t(&z))), z);
    }

    #[test]
    fn sq_ranges() {
        assert_eq!(sq_indices(3, 3), vec![MultiIndex::new([3])]);
        assert_eq!(sq_indices(0, 1), vec![MultiIndex::new([0, 1])]);
        assert!(sq_indices(2, 1).is_empty());
        for i in 0..6 {
            assert_eq!(term_count(i, i), TermCount { summands: 1, face_ops: 2 * i as u64 });
        }
    }

    #[test]
    fn cup_i_checks_degrees() {
        let x = library::builtin("rp2").unwrap();
        let c = Cochain::indicator(&x, x.generators(1)[0]);
        let e = x.simplex(x.generators(1)[0]);
        assert!(matches!(cup_i(0, &x, &c, &c, &e), Err(Error::DegreeMismatch(_))));
        assert!(cup_i(1, &x, &c, &c, &e).is_ok());
    }
}
