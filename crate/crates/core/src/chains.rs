//! Normalized chains, tensor chains and Z₂ cochains.

use std::collections::{btree_map, BTreeMap, BTreeSet};
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::simplicial::{GenId, SimplexRef, SimplicialObject, SimplicialSet};

/// Ground ring of a computation: the integers (`i64`) or [`Z2`].
pub trait Coefficient: Copy + Eq + fmt::Debug + Send + Sync + 'static {
    /// `-1 = 1`: sign computations may be skipped.
    const SIGNLESS: bool = false;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(self, other: Self) -> Self;
    fn neg(self) -> Self;
    fn mul(self, other: Self) -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    /// Reduction mod 2.
    fn to_z2(self) -> Z2;

    #[inline]
    fn sign(odd: bool) -> Self {
        if odd {
            Self::one().neg()
        } else {
            Self::one()
        }
    }
}

impl Coefficient for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn neg(self) -> Self {
        -self
    }
    fn mul(self, other: Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_z2(self) -> Z2 {
        Z2(self.rem_euclid(2) == 1)
    }
}

/// The field with two elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z2(pub bool);

impl Z2 {
    pub const ZERO: Z2 = Z2(false);
    pub const ONE: Z2 = Z2(true);
}

impl Coefficient for Z2 {
    const SIGNLESS: bool = true;

    fn zero() -> Self {
        Z2(false)
    }
    fn one() -> Self {
        Z2(true)
    }
    fn add(self, other: Self) -> Self {
        Z2(self.0 ^ other.0)
    }
    fn neg(self) -> Self {
        self
    }
    fn mul(self, other: Self) -> Self {
        Z2(self.0 & other.0)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn from_i64(v: i64) -> Self {
        Z2(v.rem_euclid(2) == 1)
    }
    fn to_z2(self) -> Z2 {
        self
    }
    #[inline]
    fn sign(_odd: bool) -> Self {
        Z2(true)
    }
}

impl fmt::Display for Z2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as u8)
    }
}

/// A basis element of a normalized complex.
pub trait Basis: Clone + Ord + fmt::Debug {
    /// Degenerate elements are zero in the normalized complex.
    fn is_degenerate(&self) -> bool;
    fn degree(&self) -> usize;
}

impl Basis for SimplexRef {
    fn is_degenerate(&self) -> bool {
        SimplexRef::is_degenerate(self)
    }
    fn degree(&self) -> usize {
        self.dim()
    }
}

/// A simplex of a product `X_1 × ... × X_p`: equal-dimensional components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductSimplex(pub SmallVec<[SimplexRef; 4]>);

impl ProductSimplex {
    pub fn new(components: impl IntoIterator<Item = SimplexRef>) -> Self {
        let c: SmallVec<[SimplexRef; 4]> = components.into_iter().collect();
        debug_assert!(c.windows(2).all(|w| w[0].dim() == w[1].dim()));
        ProductSimplex(c)
    }

    pub fn diagonal(x: SimplexRef, p: usize) -> Self {
        ProductSimplex(std::iter::repeat_n(x, p).collect())
    }

    pub fn components(&self) -> &[SimplexRef] {
        &self.0
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn dim(&self) -> usize {
        self.0.first().map_or(0, |x| x.dim())
    }

    /// Bit `k` set iff every component is in the image of `s_k`.
    pub fn degeneracy_mask(&self) -> u64 {
        self.0.iter().fold(u64::MAX, |m, x| m & x.degeneracy_mask())
    }

    /// Cyclic rotation `(x_1, ..., x_p) ↦ (x_2, ..., x_p, x_1)`.
    pub fn rotated(&self) -> Self {
        let mut c = self.0.clone();
        c.rotate_left(1);
        ProductSimplex(c)
    }
}

impl Basis for ProductSimplex {
    fn is_degenerate(&self) -> bool {
        self.degeneracy_mask() != 0
    }
    fn degree(&self) -> usize {
        self.dim()
    }
}

/// A basis tensor `x_1 ⊗ ... ⊗ x_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tensor(pub SmallVec<[SimplexRef; 4]>);

impl Tensor {
    pub fn new(factors: impl IntoIterator<Item = SimplexRef>) -> Self {
        Tensor(factors.into_iter().collect())
    }

    pub fn pair(a: SimplexRef, b: SimplexRef) -> Self {
        Tensor(smallvec::smallvec![a, b])
    }

    pub fn factors(&self) -> &[SimplexRef] {
        &self.0
    }
}

impl Basis for Tensor {
    fn is_degenerate(&self) -> bool {
        self.0.iter().any(|x| x.is_degenerate())
    }
    fn degree(&self) -> usize {
        self.0.iter().map(|x| x.dim()).sum()
    }
}

/// A finite formal sum with nonzero coefficients over nondegenerate basis elements.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<K: Ord, R> {
    terms: BTreeMap<K, R>,
}

pub type Chain<R> = LinComb<SimplexRef, R>;
pub type ProductChain<R> = LinComb<ProductSimplex, R>;
pub type TensorChain<R> = LinComb<Tensor, R>;

impl<K: Basis, R: Coefficient> Default for LinComb<K, R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Basis, R: Coefficient> LinComb<K, R> {
    pub fn new() -> Self {
        LinComb { terms: BTreeMap::new() }
    }

    pub fn single(k: K, r: R) -> Self {
        let mut c = Self::new();
        c.add_term(k, r);
        c
    }

    /// Adds `r·k`; degenerate `k` is dropped (normalization).
    #[inline]
    pub fn add_term(&mut self, k: K, r: R) {
        if r.is_zero() || k.is_degenerate() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(r);
            }
            btree_map::Entry::Occupied(mut e) => {
                let v = e.get().add(r);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, r: R) {
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v.mul(r));
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.add_scaled(other, R::one());
    }

    pub fn sub_assign(&mut self, other: &Self) {
        self.add_scaled(other, R::one().neg());
    }

    pub fn scaled(&self, r: R) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, r);
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(R::one().neg())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, R)> + '_ {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> + '_ {
        self.terms.keys()
    }

    pub fn coefficient(&self, k: &K) -> R {
        self.terms.get(k).copied().unwrap_or_else(R::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<K2: Basis>(&self, mut f: impl FnMut(&K) -> LinComb<K2, R>) -> LinComb<K2, R> {
        let mut out = LinComb::new();
        for (k, v) in self.iter() {
            out.add_scaled(&f(k), v);
        }
        out
    }

    /// Reduction of every coefficient mod 2.
    pub fn to_z2(&self) -> LinComb<K, Z2> {
        self.iter().map(|(k, v)| (k.clone(), v.to_z2())).collect()
    }
}

impl<K: Basis, R: Coefficient> FromIterator<(K, R)> for LinComb<K, R> {
    fn from_iter<I: IntoIterator<Item = (K, R)>>(iter: I) -> Self {
        let mut c = Self::new();
        for (k, r) in iter {
            c.add_term(k, r);
        }
        c
    }
}

impl<K: Ord + fmt::Debug, R: fmt::Debug> fmt::Debug for LinComb<K, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// `d = Σ (-1)^i ∂_i` on a normalized complex of any simplicial object.
pub fn differential<S, R>(space: &S, c: &LinComb<S::Simplex, R>) -> LinComb<S::Simplex, R>
where
    S: SimplicialObject,
    S::Simplex: Basis,
    R: Coefficient,
{
    let mut out = LinComb::new();
    for (x, v) in c.iter() {
        let n = space.dim(x);
        if n == 0 {
            continue;
        }
        for i in 0..=n {
            out.add_term(space.face(i, x), v.mul(R::sign(i % 2 == 1)));
        }
    }
    out
}

pub fn boundary<R: Coefficient>(space: &SimplicialSet, c: &Chain<R>) -> Chain<R> {
    differential(space, c)
}

/// Product `X_1 × ... × X_p` of simplicial sets; faces and degeneracies act
/// componentwise.
#[derive(Clone, Copy)]
pub struct Product<'a> {
    factors: &'a [&'a SimplicialSet],
}

impl<'a> Product<'a> {
    pub fn new(factors: &'a [&'a SimplicialSet]) -> Self {
        Product { factors }
    }

    pub fn factors(&self) -> &'a [&'a SimplicialSet] {
        self.factors
    }
}

impl SimplicialObject for Product<'_> {
    type Simplex = ProductSimplex;

    #[inline]
    fn dim(&self, x: &ProductSimplex) -> usize {
        x.dim()
    }

    #[inline]
    fn face(&self, k: usize, x: &ProductSimplex) -> ProductSimplex {
        ProductSimplex(x.0.iter().zip(self.factors).map(|(c, s)| s.face(k, c)).collect())
    }

    #[inline]
    fn degeneracy(&self, k: usize, x: &ProductSimplex) -> ProductSimplex {
        ProductSimplex(x.0.iter().map(|c| c.degenerate_unchecked(k)).collect())
    }

    #[inline]
    fn degeneracy_mask(&self, x: &ProductSimplex) -> u64 {
        x.degeneracy_mask()
    }
}

pub fn product_boundary<R: Coefficient>(factors: &[&SimplicialSet], c: &ProductChain<R>) -> ProductChain<R> {
    differential(&Product::new(factors), c)
}

/// Koszul differential `d(x_1 ⊗ ... ⊗ x_p) = Σ_k (-1)^{|x_1|+...+|x_{k-1}|} x_1 ⊗ ... ⊗ d x_k ⊗ ... ⊗ x_p`.
/// `spaces[k]` is the simplicial set of the `k`-th tensor factor.
pub fn tensor_boundary<R: Coefficient>(spaces: &[&SimplicialSet], c: &TensorChain<R>) -> TensorChain<R> {
    let mut out = TensorChain::new();
    for (t, v) in c.iter() {
        debug_assert_eq!(t.0.len(), spaces.len());
        let mut prefix = 0usize;
        for (k, x) in t.0.iter().enumerate() {
            let n = x.dim();
            if n > 0 {
                for i in 0..=n {
                    let mut f = t.clone();
                    f.0[k] = spaces[k].face(i, x);
                    out.add_term(f, v.mul(R::sign((prefix + i) % 2 == 1)));
                }
            }
            prefix += n;
        }
    }
    out
}

/// A Z₂-valued cochain on the nondegenerate simplices of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    degree: usize,
    support: BTreeSet<GenId>,
}

impl Cochain {
    pub fn zero(degree: usize) -> Self {
        Cochain { degree, support: BTreeSet::new() }
    }

    /// The cochain that is 1 exactly on the given generators.
    pub fn from_support(space: &SimplicialSet, degree: usize, support: impl IntoIterator<Item = GenId>) -> Result<Self> {
        let mut c = Cochain::zero(degree);
        for g in support {
            if g >= space.num_generators() || space.generator_dim(g) != degree {
                return Err(Error::DegreeMismatch(format!(
                    "generator {g} is not a {degree}-dimensional generator"
                )));
            }
            c.toggle(g);
        }
        Ok(c)
    }

    pub fn indicator(space: &SimplicialSet, g: GenId) -> Self {
        let mut c = Cochain::zero(space.generator_dim(g));
        c.support.insert(g);
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn support(&self) -> &BTreeSet<GenId> {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn toggle(&mut self, g: GenId) {
        if !self.support.remove(&g) {
            self.support.insert(g);
        }
    }

    /// `⟨c, x⟩` for a single simplex: zero on degenerate simplices and on
    /// degree mismatch.
    #[inline]
    pub fn value(&self, x: &SimplexRef) -> Z2 {
        Z2(x.dim() == self.degree && !x.is_degenerate() && self.support.contains(&x.generator()))
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "cannot add cochains of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(Cochain { degree: self.degree, support: self.support.symmetric_difference(&other.support).copied().collect() })
    }
}

/// `⟨c, x⟩`, bilinear, zero when degrees differ.
pub fn pairing<R: Coefficient>(c: &Cochain, x: &Chain<R>) -> Z2 {
    x.iter().fold(Z2::ZERO, |acc, (s, v)| acc.add(c.value(s).mul(v.to_z2())))
}

/// `(δc)(x) = c(dx)` on every generator of degree `deg c + 1`.
pub fn coboundary(space: &SimplicialSet, c: &Cochain) -> Cochain {
    let mut out = Cochain::zero(c.degree + 1);
    for &g in space.generators(c.degree + 1) {
        let x = space.simplex(g);
        let mut v = false;
        for k in 0..=c.degree + 1 {
            v ^= c.value(&space.face(k, &x)).0;
        }
        if v {
            out.support.insert(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    #[test]
    fn boundary_of_edge() {
        let x = library::builtin("interval").unwrap();
        let e = x.simplex(x.generators(1)[0]);
        let d = boundary(&x, &Chain::single(e, 1i64));
        let v0 = x.simplex(x.find("0").unwrap());
        let v1 = x.simplex(x.find("1").unwrap());
        assert_eq!(d, [(v1, 1), (v0, -1)].into_iter().collect());
    }

    #[test]
    fn degenerate_insertion_is_noop() {
        let x = library::builtin("interval").unwrap();
        let v = x.simplex(x.find("0").unwrap());
        let mut c = Chain::<i64>::new();
        c.add_term(v.degenerate(0).unwrap(), 3);
        assert!(c.is_zero());
    }

    #[test]
    fn minimal_sphere_top_cell_is_a_cycle() {
        let x = library::builtin("sphere-2-minimal").unwrap();
        let s = x.simplex(x.generators(2)[0]);
        assert!(boundary(&x, &Chain::single(s, 1i64)).is_zero());
    }

    #[test]
    fn boundary_squared_vanishes_everywhere() {
        for name in library::BUILTINS {
            let x = library::builtin(name).unwrap();
            for g in 0..x.num_generators() {
                let c = Chain::single(x.simplex(g), 1i64);
                assert!(boundary(&x, &boundary(&x, &c)).is_zero(), "{name}");
            }
        }
    }

    #[test]
    fn tensor_boundary_signs() {
        let x = library::builtin("interval").unwrap();
        let e = x.simplex(x.generators(1)[0]);
        let v0 = x.simplex(x.find("0").unwrap());
        let v1 = x.simplex(x.find("1").unwrap());
        let spaces = [&x, &x];
        let vv = TensorChain::single(Tensor::pair(v0, v0), 1i64);
        assert!(tensor_boundary(&spaces, &vv).is_zero());
        let ee = TensorChain::single(Tensor::pair(e, e), 1i64);
        let expected: TensorChain<i64> = [
            (Tensor::pair(v1, e), 1),
            (Tensor::pair(v0, e), -1),
            (Tensor::pair(e, v1), -1),
            (Tensor::pair(e, v0), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(tensor_boundary(&spaces, &ee), expected);
    }

    #[test]
    fn product_faces_act_diagonally() {
        let x = library::builtin("sphere-1-minimal").unwrap();
        let e = x.simplex(x.generators(1)[0]);
        let spaces = [&x, &x];
        let p = Product::new(&spaces);
        let z = ProductSimplex::new([e, e]);
        let f = p.face(0, &z);
        assert_eq!(f.components(), &[x.face(0, &e), x.face(0, &e)]);
        let v = x.simplex(x.generators(0)[0]);
        let deg = ProductSimplex::new([v.degenerate(0).unwrap(), v.degenerate(0).unwrap()]);
        assert!(ProductChain::single(deg, 1i64).is_zero());
    }

    #[test]
    fn coboundary_of_constant_is_zero_on_connected_space() {
        let x = library::builtin("rp2").unwrap();
        let c = Cochain::from_support(&x, 0, x.generators(0).iter().copied()).unwrap();
        assert!(coboundary(&x, &c).is_zero());
    }

    #[test]
    fn pairing_rules() {
        let x = library::builtin("rp2").unwrap();
        let g = x.generators(1)[3];
        let c = Cochain::indicator(&x, g);
        assert_eq!(pairing(&c, &Chain::single(x.simplex(g), Z2::ONE)), Z2::ONE);
        let t = x.generators(2)[0];
        assert_eq!(pairing(&c, &Chain::single(x.simplex(t), Z2::ONE)), Z2::ZERO);
    }
}
