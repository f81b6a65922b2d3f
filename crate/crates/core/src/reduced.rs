//! The morphisms `D_i = f γ_i φ γ_{i-1} ⋯ γ_1 φ Δ` on `p`-fold products, with
//! `D_0 = f Δ`, built from the `p`-fold Eilenberg–Zilber contraction
//! `(f, g, φ)` and the cyclic operators
//!
//! * `γ_odd = t`, `γ_even = t + t² + ⋯ + t^{p-1}` on `C^N(X^{×p})`,
//! * `α_odd = T - 1`, `α_even = 1 + T + ⋯ + T^{p-1}` and
//!   `β_odd = T`, `β_even = T + ⋯ + T^{p-1}` on `C^N(X)^{⊗p}`.
//!
//! They satisfy `d D_i + (-1)^{i+1} D_i d = α_i D_{i-1}`.

use crate::chains::{differential, tensor_boundary, Chain, Coefficient, ProductSimplex, Tensor, TensorChain};
use crate::contraction::{Cell, CellChain, Contraction};
use crate::diagonal::rotate_tensor;
use crate::error::{Error, Result};
use crate::simplicial::{SimplexRef, SimplicialSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(i: usize) -> Self {
        if i % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// `γ_i` on chains of `X^{×p}` (cells with a single product factor).
pub fn gamma<R: Coefficient>(i: usize, p: usize, c: &CellChain<R>) -> CellChain<R> {
    let powers: Vec<usize> = match Parity::of(i) {
        Parity::Odd => vec![1],
        Parity::Even => (1..p).collect(),
    };
    let mut out = CellChain::new();
    for (cell, r) in c.iter() {
        for &k in &powers {
            let mut z = cell.0[0].clone();
            z.0.rotate_left(k % p.max(1));
            out.add_term(Cell::new([z]), r);
        }
    }
    out
}

fn tensor_power<R: Coefficient>(c: &TensorChain<R>, k: usize) -> TensorChain<R> {
    (0..k).fold(c.clone(), |acc, _| rotate_tensor(&acc))
}

/// `α_i`: `T - 1` for odd `i`, `1 + T + ⋯ + T^{p-1}` for even `i`.
pub fn alpha<R: Coefficient>(i: usize, p: usize, c: &TensorChain<R>) -> TensorChain<R> {
    match Parity::of(i) {
        Parity::Odd => {
            let mut out = rotate_tensor(c);
            out.sub_assign(c);
            out
        }
        Parity::Even => {
            let mut out = TensorChain::new();
            for k in 0..p {
                out.add_assign(&tensor_power(c, k));
            }
            out
        }
    }
}

/// `β_i`: `T` for odd `i`, `T + ⋯ + T^{p-1}` for even `i`.
pub fn beta<R: Coefficient>(i: usize, p: usize, c: &TensorChain<R>) -> TensorChain<R> {
    match Parity::of(i) {
        Parity::Odd => rotate_tensor(c),
        Parity::Even => {
            let mut out = TensorChain::new();
            for k in 1..p {
                out.add_assign(&tensor_power(c, k));
            }
            out
        }
    }
}

/// Whether `p` is prime. The chain-level identities do not need it.
pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Cells whose factors are single simplices, read as tensors.
pub fn cells_to_tensors<R: Coefficient>(c: &CellChain<R>) -> TensorChain<R> {
    c.iter().map(|(cell, r)| (Tensor::new(cell.simplices().copied()), r)).collect()
}

pub fn tensors_to_cells<R: Coefficient>(c: &TensorChain<R>) -> CellChain<R> {
    c.iter().map(|(t, r)| (Cell::from_simplices(t.factors().iter().copied()), r)).collect()
}

/// The `D_i` family of one simplicial set for one `p`.
pub struct ReducedPowers<'a, R> {
    space: &'a SimplicialSet,
    p: usize,
    contraction: Contraction<'a, R>,
}

impl<'a, R: Coefficient> ReducedPowers<'a, R> {
    pub fn new(space: &'a SimplicialSet, p: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidArgument(format!("reduced powers need p >= 2, got {p}")));
        }
        let contraction = Contraction::pfold(&vec![space; p])?;
        Ok(ReducedPowers { space, p, contraction })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn contraction(&self) -> &Contraction<'a, R> {
        &self.contraction
    }

    /// `D_i(x)`.
    pub fn d(&self, i: usize, x: &SimplexRef) -> TensorChain<R> {
        let mut c = CellChain::single(Cell::new([ProductSimplex::diagonal(*x, self.p)]), R::one());
        for k in 1..=i {
            c = gamma(k, self.p, &self.contraction.phi(&c));
        }
        cells_to_tensors(&self.contraction.f(&c))
    }

    /// `D_i` extended linearly to chains.
    pub fn d_chain(&self, i: usize, c: &Chain<R>) -> TensorChain<R> {
        let mut out = TensorChain::new();
        for (x, r) in c.iter() {
            out.add_scaled(&self.d(i, x), r);
        }
        out
    }

    /// `d D_i(x) + (-1)^{i+1} D_i(dx) - α_i D_{i-1}(x)`; zero when the identity holds.
    pub fn identity_defect(&self, i: usize, x: &SimplexRef) -> Result<TensorChain<R>> {
        if i == 0 {
            return Err(Error::InvalidArgument("the identity relates D_i to D_{i-1}, so i >= 1".into()));
        }
        let spaces = vec![self.space; self.p];
        let mut lhs = tensor_boundary(&spaces, &self.d(i, x));
        let dx = differential(self.space, &Chain::single(*x, R::one()));
        lhs.add_scaled(&self.d_chain(i, &dx), R::sign(i % 2 == 0));
        lhs.sub_assign(&alpha(i, self.p, &self.d(i - 1, x)));
        Ok(lhs)
    }
}

/// `t g = g T` on every basis tensor of degree `<= max_dim`; returns the first
/// failing tensor.
pub fn check_rotation_intertwines<R: Coefficient>(c: &Contraction<'_, R>, max_dim: usize) -> Option<Cell> {
    for d in 0..=max_dim {
        for cell in c.small().basis(d) {
            let x = CellChain::single(cell.clone(), R::one());
            let lhs = gamma(1, c.small().num_factors(), &c.g(&x));
            let tx = tensors_to_cells(&rotate_tensor(&cells_to_tensors(&x)));
            if lhs != c.g(&tx) {
                return Some(cell);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonal::{big_d, Mode};
    use crate::library;

    #[test]
    fn gamma_powers() {
        let x = library::builtin("simplex-2").unwrap();
        let v: Vec<SimplexRef> = x.generators(0).iter().map(|&g| x.simplex(g)).collect();
        let z = CellChain::single(Cell::new([ProductSimplex::new(v.clone())]), 1i64);
        let rot = |k: usize| {
            let mut w = v.clone();
            w.rotate_left(k);
            Cell::new([ProductSimplex::new(w)])
        };
        assert_eq!(gamma(1, 3, &z), CellChain::single(rot(1), 1));
        assert_eq!(gamma(2, 3, &z), [(rot(1), 1), (rot(2), 1)].into_iter().collect());
    }

    #[test]
    fn alpha_for_two_factors() {
        let x = library::builtin("interval").unwrap();
        let e = x.simplex(x.generators(1)[0]);
        let v = x.simplex(x.generators(0)[0]);
        let c = TensorChain::single(Tensor::pair(e, v), 1i64);
        let t = TensorChain::single(Tensor::pair(v, e), 1i64);
        let mut odd = t.clone();
        odd.sub_assign(&c);
        assert_eq!(alpha(1, 2, &c), odd);
        let mut even = t.clone();
        even.add_assign(&c);
        assert_eq!(alpha(2, 2, &c), even);
        assert_eq!(beta(1, 2, &c), t);
    }

    #[test]
    fn two_fold_family_is_the_higher_diagonal() {
        let x = library::builtin("rp2").unwrap();
        let r = ReducedPowers::<i64>::new(&x, 2).unwrap();
        for &g in x.generators(2) {
            let s = x.simplex(g);
            for i in 0..=3 {
                assert_eq!(r.d(i, &s), big_d(i, &x, &s, Mode::Slow));
            }
        }
    }

    #[test]
    fn vanishes_on_vertices() {
        let x = library::builtin("torus").unwrap();
        let r = ReducedPowers::<i64>::new(&x, 3).unwrap();
        let v = x.simplex(x.generators(0)[0]);
        assert!(r.d(1, &v).is_zero());
        assert_eq!(r.d(0, &v), TensorChain::single(Tensor::new([v, v, v]), 1));
    }

    #[test]
    fn primes() {
        let p: Vec<usize> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(p, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
