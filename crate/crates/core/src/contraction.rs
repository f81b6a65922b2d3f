//! Contractions `(f, g, φ)` between chain complexes built from normalized
//! chains of products, their tensor products and compositions, and the
//! `p`-fold Eilenberg–Zilber contraction.
//!
//! Every complex handled here is a tensor product of normalized chain
//! complexes of products: a [`Shape`] lists the simplicial sets involved and
//! how they are grouped into tensor factors. A basis element is a [`Cell`],
//! one product simplex per factor.

use std::fmt;
use std::rc::Rc;

use smallvec::SmallVec;

use crate::chains::{Basis, Coefficient, LinComb, Product, ProductSimplex};
use crate::error::{Error, Result};
use crate::ez::{aw_terms, eml_terms, shi_terms};
use crate::simplicial::{SimplexRef, SimplicialObject, SimplicialSet};

/// `z_1 ⊗ ... ⊗ z_r`, each `z_k` a simplex of a product of simplicial sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell(pub SmallVec<[ProductSimplex; 3]>);

impl Cell {
    pub fn new(factors: impl IntoIterator<Item = ProductSimplex>) -> Self {
        Cell(factors.into_iter().collect())
    }

    /// A cell of a shape whose factors all have width one.
    pub fn from_simplices(xs: impl IntoIterator<Item = SimplexRef>) -> Self {
        Cell(xs.into_iter().map(|x| ProductSimplex::new([x])).collect())
    }

    pub fn factors(&self) -> &[ProductSimplex] {
        &self.0
    }

    pub fn split(&self, at: usize) -> (Cell, Cell) {
        (Cell(self.0[..at].iter().cloned().collect()), Cell(self.0[at..].iter().cloned().collect()))
    }

    pub fn concat(&self, other: &Cell) -> Cell {
        Cell(self.0.iter().chain(other.0.iter()).cloned().collect())
    }

    /// The components of all factors, flattened.
    pub fn simplices(&self) -> impl Iterator<Item = &SimplexRef> + '_ {
        self.0.iter().flat_map(|z| z.components().iter())
    }
}

impl Basis for Cell {
    fn is_degenerate(&self) -> bool {
        self.0.iter().any(|z| z.is_degenerate())
    }
    fn degree(&self) -> usize {
        self.0.iter().map(|z| z.dim()).sum()
    }
}

pub type CellChain<R> = LinComb<Cell, R>;

/// `C^N(X_1 × ... × X_{w_1}) ⊗ C^N(...) ⊗ ...`: the simplicial sets in order
/// and the widths of the tensor factors.
#[derive(Clone)]
pub struct Shape<'a> {
    spaces: Vec<&'a SimplicialSet>,
    widths: Vec<usize>,
}

impl<'a> Shape<'a> {
    pub fn new(spaces: Vec<&'a SimplicialSet>, widths: Vec<usize>) -> Result<Self> {
        if widths.contains(&0) || widths.iter().sum::<usize>() != spaces.len() {
            return Err(Error::InvalidArgument(format!(
                "factor widths {widths:?} do not partition {} spaces",
                spaces.len()
            )));
        }
        Ok(Shape { spaces, widths })
    }

    /// A single product factor.
    pub fn product(spaces: &[&'a SimplicialSet]) -> Self {
        Shape { spaces: spaces.to_vec(), widths: vec![spaces.len()] }
    }

    /// One tensor factor per space.
    pub fn tensor(spaces: &[&'a SimplicialSet]) -> Self {
        Shape { spaces: spaces.to_vec(), widths: vec![1; spaces.len()] }
    }

    pub fn spaces(&self) -> &[&'a SimplicialSet] {
        &self.spaces
    }

    pub fn widths(&self) -> &[usize] {
        &self.widths
    }

    pub fn num_factors(&self) -> usize {
        self.widths.len()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.widths.len() + 1);
        let mut acc = 0;
        out.push(0);
        for &w in &self.widths {
            acc += w;
            out.push(acc);
        }
        out
    }

    /// The spaces of tensor factor `k`.
    pub fn factor_spaces(&self, k: usize) -> &[&'a SimplicialSet] {
        let off = self.offsets();
        &self.spaces[off[k]..off[k + 1]]
    }

    pub fn concat(&self, other: &Shape<'a>) -> Shape<'a> {
        Shape {
            spaces: self.spaces.iter().chain(other.spaces.iter()).copied().collect(),
            widths: self.widths.iter().chain(other.widths.iter()).copied().collect(),
        }
    }

    /// A cell written with generator names, e.g. `(s0 a × b) ⊗ (c)`.
    pub fn describe(&self, cell: &Cell) -> String {
        let mut spaces = self.spaces.iter();
        let factors: Vec<String> = cell
            .factors()
            .iter()
            .map(|z| {
                let parts: Vec<String> =
                    z.0.iter().map(|x| spaces.next().map_or_else(|| format!("{x:?}"), |s| s.describe(x))).collect();
                format!("({})", parts.join(" × "))
            })
            .collect();
        factors.join(" ⊗ ")
    }

    pub fn same_as(&self, other: &Shape<'_>) -> bool {
        self.widths == other.widths
            && self.spaces.len() == other.spaces.len()
            && self.spaces.iter().zip(&other.spaces).all(|(a, b)| std::ptr::eq(*a, *b))
    }

    /// Koszul differential of the tensor product.
    pub fn differential<R: Coefficient>(&self, c: &CellChain<R>) -> CellChain<R> {
        let off = self.offsets();
        let mut out = CellChain::new();
        for (cell, v) in c.iter() {
            let mut prefix = 0usize;
            for (k, z) in cell.0.iter().enumerate() {
                let n = z.dim();
                if n > 0 {
                    let prod = Product::new(&self.spaces[off[k]..off[k + 1]]);
                    for i in 0..=n {
                        let mut f = cell.clone();
                        f.0[k] = prod.face(i, z);
                        out.add_term(f, v.mul(R::sign((prefix + i) % 2 == 1)));
                    }
                }
                prefix += n;
            }
        }
        out
    }

    /// Every nondegenerate cell of total degree `dim`, in ascending order.
    pub fn basis(&self, dim: usize) -> Vec<Cell> {
        let off = self.offsets();
        let per_factor: Vec<Vec<Vec<ProductSimplex>>> = (0..self.widths.len())
            .map(|k| (0..=dim).map(|d| product_basis(&self.spaces[off[k]..off[k + 1]], d)).collect())
            .collect();
        let mut out = Vec::new();
        let mut current: Vec<ProductSimplex> = Vec::new();
        fn rec(
            k: usize,
            left: usize,
            per_factor: &[Vec<Vec<ProductSimplex>>],
            current: &mut Vec<ProductSimplex>,
            out: &mut Vec<Cell>,
        ) {
            if k == per_factor.len() {
                if left == 0 {
                    out.push(Cell(current.iter().cloned().collect()));
                }
                return;
            }
            let last = k + 1 == per_factor.len();
            for d in 0..=left {
                if last && d != left {
                    continue;
                }
                for z in &per_factor[k][d] {
                    current.push(z.clone());
                    rec(k + 1, left - d, per_factor, current, out);
                    current.pop();
                }
            }
        }
        rec(0, dim, &per_factor, &mut current, &mut out);
        out.sort();
        out
    }
}

impl fmt::Debug for Shape<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Shape").field("factors", &self.spaces.len()).field("widths", &self.widths).finish()
    }
}

/// All simplices of dimension `m` of a simplicial set, degenerate or not.
pub fn all_simplices(space: &SimplicialSet, m: usize) -> Vec<SimplexRef> {
    let mut out = Vec::new();
    for d in 0..=m.min(space.top_dim()) {
        let t = m - d;
        for &g in space.generators(d) {
            for_each_subset(m, t, |mask| {
                let mut x = space.simplex(g);
                let mut rest = mask;
                while rest != 0 {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    x = space.degeneracy(b, &x);
                }
                out.push(x);
            });
        }
    }
    out
}

fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(u64)) {
    fn rec(start: usize, left: usize, n: usize, acc: u64, f: &mut impl FnMut(u64)) {
        if left == 0 {
            f(acc);
            return;
        }
        for v in start..=n - left {
            rec(v + 1, left - 1, n, acc | (1u64 << v), f);
        }
    }
    if k <= n {
        rec(0, k, n, 0, &mut f);
    }
}

/// The nondegenerate `m`-simplices of `X_1 × ... × X_w`, ascending.
pub fn product_basis(spaces: &[&SimplicialSet], m: usize) -> Vec<ProductSimplex> {
    let columns: Vec<Vec<SimplexRef>> = spaces.iter().map(|s| all_simplices(s, m)).collect();
    let mut out = Vec::new();
    let mut current: SmallVec<[SimplexRef; 4]> = SmallVec::new();
    fn rec(
        k: usize,
        mask: u64,
        columns: &[Vec<SimplexRef>],
        current: &mut SmallVec<[SimplexRef; 4]>,
        out: &mut Vec<ProductSimplex>,
    ) {
        if k == columns.len() {
            if mask == 0 {
                out.push(ProductSimplex(current.clone()));
            }
            return;
        }
        for x in &columns[k] {
            current.push(*x);
            rec(k + 1, mask & x.degeneracy_mask(), columns, current, out);
            current.pop();
        }
    }
    if !spaces.is_empty() {
        rec(0, u64::MAX, &columns, &mut current, &mut out);
    }
    out.sort();
    out
}

type CellMap<'a, R> = Rc<dyn Fn(&Cell) -> CellChain<R> + 'a>;

/// A contraction from a big complex `N` onto a small complex `M`:
/// `f: N → M`, `g: M → N`, `φ: N → N` of degree `+1`.
pub struct Contraction<'a, R> {
    big: Shape<'a>,
    small: Shape<'a>,
    f: CellMap<'a, R>,
    g: CellMap<'a, R>,
    phi: CellMap<'a, R>,
}

impl<R> Clone for Contraction<'_, R> {
    fn clone(&self) -> Self {
        Contraction {
            big: self.big.clone(),
            small: self.small.clone(),
            f: self.f.clone(),
            g: self.g.clone(),
            phi: self.phi.clone(),
        }
    }
}

fn apply<R: Coefficient>(map: &CellMap<'_, R>, c: &CellChain<R>) -> CellChain<R> {
    c.map_linear(|cell| map(cell))
}

/// `a ⊗ b` for chains on the two halves of a concatenated shape.
pub fn tensor_chains<R: Coefficient>(a: &CellChain<R>, b: &CellChain<R>) -> CellChain<R> {
    let mut out = CellChain::new();
    for (x, u) in a.iter() {
        for (y, v) in b.iter() {
            out.add_term(x.concat(y), u.mul(v));
        }
    }
    out
}

impl<'a, R: Coefficient> Contraction<'a, R> {
    /// Assembles a contraction from its three maps, given on basis cells.
    pub fn from_maps(
        big: Shape<'a>,
        small: Shape<'a>,
        f: impl Fn(&Cell) -> CellChain<R> + 'a,
        g: impl Fn(&Cell) -> CellChain<R> + 'a,
        phi: impl Fn(&Cell) -> CellChain<R> + 'a,
    ) -> Self {
        Contraction { big, small, f: Rc::new(f), g: Rc::new(g), phi: Rc::new(phi) }
    }

    pub fn big(&self) -> &Shape<'a> {
        &self.big
    }

    pub fn small(&self) -> &Shape<'a> {
        &self.small
    }

    pub fn f(&self, c: &CellChain<R>) -> CellChain<R> {
        apply(&self.f, c)
    }

    pub fn g(&self, c: &CellChain<R>) -> CellChain<R> {
        apply(&self.g, c)
    }

    pub fn phi(&self, c: &CellChain<R>) -> CellChain<R> {
        apply(&self.phi, c)
    }

    pub fn f_cell(&self, cell: &Cell) -> CellChain<R> {
        (self.f)(cell)
    }

    pub fn g_cell(&self, cell: &Cell) -> CellChain<R> {
        (self.g)(cell)
    }

    pub fn phi_cell(&self, cell: &Cell) -> CellChain<R> {
        (self.phi)(cell)
    }

    /// The same contraction with `φ` replaced.
    pub fn with_homotopy(self, phi: impl Fn(&Cell) -> CellChain<R> + 'a) -> Self {
        Contraction { phi: Rc::new(phi), ..self }
    }

    /// `(f, g, -φ)`.
    pub fn with_negated_homotopy(self) -> Self {
        let phi = self.phi.clone();
        self.with_homotopy(move |c| phi(c).negated())
    }

    /// `(1, 1, 0)` on a complex.
    pub fn identity(shape: Shape<'a>) -> Self {
        Contraction::from_maps(
            shape.clone(),
            shape,
            |c| CellChain::single(c.clone(), R::one()),
            |c| CellChain::single(c.clone(), R::one()),
            |_| CellChain::new(),
        )
    }

    /// The Eilenberg–Zilber contraction `(AW, EML, SHI)` of
    /// `C^N(X_1 × (X_2 × ... × X_w))` onto `C^N(X_1) ⊗ C^N(X_2 × ... × X_w)`.
    pub fn eilenberg_zilber(spaces: &[&'a SimplicialSet]) -> Result<Self> {
        if spaces.len() < 2 {
            return Err(Error::InvalidArgument("the Eilenberg–Zilber contraction needs at least two factors".into()));
        }
        let w = spaces.len();
        let big = Shape::product(spaces);
        let small = Shape { spaces: spaces.to_vec(), widths: vec![1, w - 1] };
        let (sf, sg, sp) = (spaces.to_vec(), spaces.to_vec(), spaces.to_vec());
        let f = move |cell: &Cell| {
            let z = &cell.0[0];
            let (a, b) = split_product(z);
            let (pa, pb) = (Product::new(&sf[..1]), Product::new(&sf[1..]));
            let mut out = CellChain::new();
            aw_terms(&pa, &pb, &a, &b, |u, v| out.add_term(Cell::new([u, v]), R::one()));
            out
        };
        let g = move |cell: &Cell| {
            let (a, b) = (&cell.0[0], &cell.0[1]);
            let (pa, pb) = (Product::new(&sg[..1]), Product::new(&sg[1..]));
            let mut out = CellChain::new();
            eml_terms(&pa, &pb, a, b, |u, v, odd| out.add_term(Cell::new([join_product(&u, &v)]), R::sign(odd)));
            out
        };
        let phi = move |cell: &Cell| {
            let z = &cell.0[0];
            let (a, b) = split_product(z);
            let (pa, pb) = (Product::new(&sp[..1]), Product::new(&sp[1..]));
            let mut out = CellChain::new();
            shi_terms(&pa, &pb, &a, &b, |u, v, odd| out.add_term(Cell::new([join_product(&u, &v)]), R::sign(odd)));
            out
        };
        Ok(Contraction::from_maps(big, small, f, g, phi))
    }

    /// `(f₁⊗f₂, g₁⊗g₂, φ₁⊗g₂f₂ + 1⊗φ₂)`.
    pub fn tensor(c1: &Contraction<'a, R>, c2: &Contraction<'a, R>) -> Self {
        let big = c1.big.concat(&c2.big);
        let small = c1.small.concat(&c2.small);
        let (nb, ns) = (c1.big.num_factors(), c1.small.num_factors());
        let (f1, f2, g1, g2, p1, p2) =
            (c1.f.clone(), c2.f.clone(), c1.g.clone(), c2.g.clone(), c1.phi.clone(), c2.phi.clone());
        let f2b = f2.clone();
        let g2b = g2.clone();
        let f = move |cell: &Cell| {
            let (x, y) = cell.split(nb);
            tensor_chains(&f1(&x), &f2(&y))
        };
        let g = move |cell: &Cell| {
            let (x, y) = cell.split(ns);
            tensor_chains(&g1(&x), &g2(&y))
        };
        let phi = move |cell: &Cell| {
            let (x, y) = cell.split(nb);
            let gf_y = apply(&g2b, &f2b(&y));
            let mut out = tensor_chains(&p1(&x), &gf_y);
            let sign = R::sign(x.degree() % 2 == 1);
            let rhs = tensor_chains(&CellChain::single(x, sign), &p2(&y));
            out.add_assign(&rhs);
            out
        };
        Contraction::from_maps(big, small, f, g, phi)
    }

    /// `(f₂f₁, g₁g₂, φ₁ + g₁φ₂f₁)` for `c1: N → M₁` and `c2: M₁ → M₂`.
    pub fn compose(c1: &Contraction<'a, R>, c2: &Contraction<'a, R>) -> Result<Self> {
        if !c1.small.same_as(&c2.big) {
            return Err(Error::ComplexMismatch(format!(
                "cannot compose: small complex {:?} differs from big complex {:?}",
                c1.small, c2.big
            )));
        }
        let (f1, f2, g1, g2, p1, p2) =
            (c1.f.clone(), c2.f.clone(), c1.g.clone(), c2.g.clone(), c1.phi.clone(), c2.phi.clone());
        let (f1b, g1b) = (f1.clone(), g1.clone());
        let f = move |cell: &Cell| apply(&f2, &f1(cell));
        let g = move |cell: &Cell| apply(&g1, &g2(cell));
        let phi = move |cell: &Cell| {
            let mut out = p1(cell);
            out.add_assign(&apply(&g1b, &apply(&p2, &f1b(cell))));
            out
        };
        Ok(Contraction::from_maps(c1.big.clone(), c2.small.clone(), f, g, phi))
    }

    /// The contraction of `C^N(X_1 × ... × X_p)` onto `C^N(X_1) ⊗ ... ⊗ C^N(X_p)`,
    /// nested from the left: split off `X_1`, then contract the remaining
    /// `(p-1)`-fold product.
    pub fn pfold(spaces: &[&'a SimplicialSet]) -> Result<Self> {
        match spaces.len() {
            0 | 1 => Err(Error::InvalidArgument(format!("p-fold contraction needs p >= 2, got {}", spaces.len()))),
            2 => Self::eilenberg_zilber(spaces),
            _ => {
                let ez = Self::eilenberg_zilber(spaces)?;
                let rest = Self::tensor(&Self::identity(Shape::product(&spaces[..1])), &Self::pfold(&spaces[1..])?);
                Self::compose(&ez, &rest)
            }
        }
    }
}

/// The `p`-fold contraction of `C^N(X^{×p})` onto `C^N(X)^{⊗p}`.
pub fn pfold_contraction<R: Coefficient>(space: &SimplicialSet, p: usize) -> Result<Contraction<'_, R>> {
    Contraction::pfold(&vec![space; p])
}

fn split_product(z: &ProductSimplex) -> (ProductSimplex, ProductSimplex) {
    (ProductSimplex(z.0[..1].iter().copied().collect()), ProductSimplex(z.0[1..].iter().copied().collect()))
}

fn join_product(a: &ProductSimplex, b: &ProductSimplex) -> ProductSimplex {
    ProductSimplex(a.0.iter().chain(b.0.iter()).copied().collect())
}

/// One of the contraction axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    /// `fg = 1`
    C1,
    /// `φd + dφ + gf = 1`
    C2,
    /// `φg = 0`
    C3,
    /// `fφ = 0`
    C4,
    /// `φφ = 0`
    C5,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [Axiom::C1, Axiom::C2, Axiom::C3, Axiom::C4, Axiom::C5];

    pub fn label(self) -> &'static str {
        match self {
            Axiom::C1 => "c1",
            Axiom::C2 => "c2",
            Axiom::C3 => "c3",
            Axiom::C4 => "c4",
            Axiom::C5 => "c5",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Axiom::C1 => "fg = 1",
            Axiom::C2 => "φd + dφ + gf = 1",
            Axiom::C3 => "φg = 0",
            Axiom::C4 => "fφ = 0",
            Axiom::C5 => "φφ = 0",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub checked: usize,
    /// The first basis cell (in ascending order) on which the axiom fails.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionReport {
    pub results: Vec<AxiomResult>,
}

impl ContractionReport {
    pub fn is_ok(&self) -> bool {
        self.results.iter().all(|r| r.counterexample.is_none())
    }

    pub fn result(&self, axiom: Axiom) -> &AxiomResult {
        self.results.iter().find(|r| r.axiom == axiom).expect("every axiom is checked")
    }

    pub fn first_failure(&self) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.counterexample.is_some())
    }
}

impl fmt::Display for ContractionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            match &r.counterexample {
                None => writeln!(f, "{} ({}): ok on {} cells", r.axiom.label(), r.axiom.statement(), r.checked)?,
                Some(c) => writeln!(f, "{} ({}): FAILS on {}", r.axiom.label(), r.axiom.statement(), c)?,
            }
        }
        Ok(())
    }
}

/// Sign in front of `gf` in the homotopy relation `φd + dφ = ±(1 - gf)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomotopyRelation {
    /// `φd + dφ + gf = 1`
    OneMinusGf,
    /// `φd + dφ = gf - 1`
    GfMinusOne,
}

fn homotopy_defect<R: Coefficient>(c: &Contraction<'_, R>, cell: &Cell, relation: HomotopyRelation) -> CellChain<R> {
    let x = CellChain::single(cell.clone(), R::one());
    let mut lhs = c.phi(&c.big.differential(&x));
    lhs.add_assign(&c.big.differential(&c.phi(&x)));
    let gf = c.g(&c.f(&x));
    match relation {
        HomotopyRelation::OneMinusGf => {
            lhs.add_assign(&gf);
            lhs.sub_assign(&x);
        }
        HomotopyRelation::GfMinusOne => {
            lhs.sub_assign(&gf);
            lhs.add_assign(&x);
        }
    }
    lhs
}

/// Checks `φd + dφ = ±(1 - gf)` on every basis cell of degree `<= max_dim`.
/// Returns the first failing cell.
pub fn check_homotopy_relation<R: Coefficient>(
    c: &Contraction<'_, R>,
    max_dim: usize,
    relation: HomotopyRelation,
) -> Option<Cell> {
    (0..=max_dim).flat_map(|d| c.big.basis(d)).find(|cell| !homotopy_defect(c, cell, relation).is_zero())
}

/// Verifies (c1)–(c5) on every basis cell of degree `<= max_dim`.
pub fn check_contraction<R: Coefficient>(c: &Contraction<'_, R>, max_dim: usize) -> ContractionReport {
    let big: Vec<Cell> = (0..=max_dim).flat_map(|d| c.big.basis(d)).collect();
    let small: Vec<Cell> = (0..=max_dim).flat_map(|d| c.small.basis(d)).collect();
    let mut results = Vec::new();
    for axiom in Axiom::ALL {
        let (cells, defect): (&[Cell], Box<dyn Fn(&Cell) -> CellChain<R>>) = match axiom {
            Axiom::C1 => (&small, Box::new(|m: &Cell| {
                let mut v = c.f(&c.g_cell(m));
                v.sub_assign(&CellChain::single(m.clone(), R::one()));
                v
            })),
            Axiom::C2 => (&big, Box::new(|n: &Cell| homotopy_defect(c, n, HomotopyRelation::OneMinusGf))),
            Axiom::C3 => (&small, Box::new(|m: &Cell| c.phi(&c.g_cell(m)))),
            Axiom::C4 => (&big, Box::new(|n: &Cell| c.f(&c.phi_cell(n)))),
            Axiom::C5 => (&big, Box::new(|n: &Cell| c.phi(&c.phi_cell(n)))),
        };
        let shape = if matches!(axiom, Axiom::C1 | Axiom::C3) { &c.small } else { &c.big };
        let counterexample = cells.iter().find(|cell| !defect(cell).is_zero()).map(|cell| shape.describe(cell));
        results.push(AxiomResult { axiom, checked: cells.len(), counterexample });
    }
    ContractionReport { results }
}

/// Checks `f d = d f` and `g d = d g` on basis cells of degree `<= max_dim`.
pub fn check_chain_maps<R: Coefficient>(c: &Contraction<'_, R>, max_dim: usize) -> Option<String> {
    for d in 0..=max_dim {
        for cell in c.big.basis(d) {
            let x = CellChain::single(cell.clone(), R::one());
            if c.f(&c.big.differential(&x)) != c.small.differential(&c.f(&x)) {
                return Some(format!("f on {}", c.big.describe(&cell)));
            }
        }
        for cell in c.small.basis(d) {
            let x = CellChain::single(cell.clone(), R::one());
            if c.g(&c.small.differential(&x)) != c.big.differential(&c.g(&x)) {
                return Some(format!("g on {}", c.small.describe(&cell)));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    #[test]
    fn basis_of_small_products() {
        let x = library::builtin("interval").unwrap();
        let spaces = [&x, &x];
        // I × I: 4 vertices, 5 edges, 2 triangles
        assert_eq!(product_basis(&spaces, 0).len(), 4);
        assert_eq!(product_basis(&spaces, 1).len(), 5);
        assert_eq!(product_basis(&spaces, 2).len(), 2);
        assert_eq!(product_basis(&spaces, 3).len(), 0);
        let t = Shape::tensor(&spaces);
        assert_eq!(t.basis(1).len(), 4);
        assert_eq!(t.basis(2).len(), 1);
    }

    #[test]
    fn differential_squares_to_zero_on_shapes() {
        let x = library::builtin("sphere-1-minimal").unwrap();
        let y = library::builtin("interval").unwrap();
        let spaces = [&x, &y, &x];
        for shape in [Shape::product(&spaces), Shape::tensor(&spaces), Shape::new(spaces.to_vec(), vec![1, 2]).unwrap()] {
            for d in 0..=3 {
                for cell in shape.basis(d) {
                    let c = CellChain::single(cell, 1i64);
                    assert!(shape.differential(&shape.differential(&c)).is_zero());
                }
            }
        }
    }

    #[test]
    fn compose_rejects_mismatched_complexes() {
        let x = library::builtin("interval").unwrap();
        let spaces = [&x, &x, &x];
        let ez = Contraction::<i64>::eilenberg_zilber(&spaces).unwrap();
        let other = Contraction::<i64>::identity(Shape::tensor(&spaces));
        assert!(matches!(Contraction::compose(&ez, &other), Err(Error::ComplexMismatch(_))));
        assert!(Contraction::<i64>::pfold(&spaces[..1]).is_err());
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let x = library::builtin("interval").unwrap();
        let spaces = [&x, &x];
        let i1 = Contraction::<i64>::identity(Shape::product(&spaces[..1]));
        let i2 = Contraction::<i64>::identity(Shape::product(&spaces[1..]));
        let t = Contraction::tensor(&i1, &i2);
        for cell in t.big().basis(2) {
            let c = CellChain::single(cell.clone(), 1i64);
            assert_eq!(t.f(&c), c);
            assert_eq!(t.g(&c), c);
            assert!(t.phi(&c).is_zero());
        }
    }

    #[test]
    fn pfold_degree_zero_projection() {
        let x = library::builtin("rp2").unwrap();
        let spaces = [&x, &x, &x];
        let c = Contraction::<i64>::pfold(&spaces).unwrap();
        let v: Vec<SimplexRef> = x.generators(0)[..3].iter().map(|&g| x.simplex(g)).collect();
        let z = Cell::new([ProductSimplex::new(v.clone())]);
        let out = c.f_cell(&z);
        assert_eq!(out, CellChain::single(Cell::from_simplices(v), 1));
    }
}
