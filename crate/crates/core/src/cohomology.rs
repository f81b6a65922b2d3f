//! Mod-2 cohomology by Gaussian elimination, and the action of cup products
//! and Steenrod squares on it.

use std::collections::HashMap;
use std::fmt;

use crate::chains::{coboundary, Cochain};
use crate::diagonal::{cup, sq};
use crate::error::{Error, Result};
use crate::simplicial::{GenId, SimplicialObject, SimplicialSet};

fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// A dense bit-packed matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u64>>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix { rows, cols, data: vec![vec![0; words_for(cols)]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_columns(rows: usize, columns: &[Vec<bool>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, &b) in col.iter().enumerate() {
                m.set(r, c, b);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r][c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let bit = 1u64 << (c % 64);
        if v {
            self.data[r][c / 64] |= bit;
        } else {
            self.data[r][c / 64] &= !bit;
        }
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        self.data[r][c / 64] ^= 1u64 << (c % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|row| row.iter().all(|&w| w == 0))
    }

    pub fn column(&self, c: usize) -> Vec<bool> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.cols != other.rows {
            return Err(Error::DegreeMismatch(format!(
                "cannot multiply a {}x{} by a {}x{} matrix",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    for (o, w) in out.data[r].iter_mut().zip(&other.data[k]) {
                        *o ^= w;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Row-reduced echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Gf2Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for c in 0..self.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| m.get(r, c)) else { continue };
            m.data.swap(row, p);
            let pivot_row = m.data[row].clone();
            for r in 0..m.rows {
                if r != row && m.get(r, c) {
                    for (o, w) in m.data[r].iter_mut().zip(&pivot_row) {
                        *o ^= w;
                    }
                }
            }
            pivots.push(c);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{v : M v = 0}`, one vector per free column, ascending.
    pub fn kernel(&self) -> Vec<Vec<bool>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![false; self.cols];
                v[f] = true;
                for (row, &p) in pivots.iter().enumerate() {
                    if r.get(row, f) {
                        v[p] = true;
                    }
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        write!(f, "{self}")
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<&str> = (0..self.cols).map(|c| if self.get(r, c) { "1" } else { "0" }).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// The matrix of `δ^p: C^p → C^{p+1}`: one column per `p`-generator, one row
/// per `(p+1)`-generator, in generator order.
pub fn delta_matrix(space: &SimplicialSet, p: usize) -> Gf2Matrix {
    let cols = space.generators(p);
    let rows = space.generators(p + 1);
    let position: HashMap<GenId, usize> = cols.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let mut m = Gf2Matrix::zeros(rows.len(), cols.len());
    for (r, &g) in rows.iter().enumerate() {
        let x = space.simplex(g);
        for k in 0..=p + 1 {
            let f = space.face(k, &x);
            if !f.is_degenerate() {
                m.toggle(r, position[&f.generator()]);
            }
        }
    }
    m
}

/// Coordinates of a class in a [`CohomologyBasis`].
pub type Coordinates = Vec<bool>;

/// Result of [`CohomologyBasis::class_of`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassOf {
    Class(Coordinates),
    NotACocycle,
}

#[derive(Clone, Debug)]
struct ReducerRow {
    vector: Vec<u64>,
    tag: Vec<u64>,
}

fn first_bit(v: &[u64]) -> Option<usize> {
    v.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn xor_into(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

/// Echelon rows spanning the cocycles, each tagged with the class it
/// represents modulo coboundaries.
#[derive(Clone, Debug, Default)]
struct Reducer {
    rows: HashMap<usize, ReducerRow>,
}

impl Reducer {
    /// Reduces `v`; returns the residue and the accumulated tag.
    fn reduce(&self, mut vector: Vec<u64>, mut tag: Vec<u64>) -> (Vec<u64>, Vec<u64>) {
        while let Some(p) = first_bit(&vector) {
            match self.rows.get(&p) {
                Some(row) => {
                    xor_into(&mut vector, &row.vector);
                    xor_into(&mut tag, &row.tag);
                }
                None => break,
            }
        }
        (vector, tag)
    }

    /// Inserts `v`; false if it was already in the span.
    fn insert(&mut self, vector: Vec<u64>, tag: Vec<u64>) -> bool {
        let (vector, tag) = self.reduce(vector, tag);
        match first_bit(&vector) {
            Some(p) => {
                self.rows.insert(p, ReducerRow { vector, tag });
                true
            }
            None => false,
        }
    }
}

/// A basis of `H^p(X; Z₂)` by representative cocycles.
#[derive(Clone, Debug)]
pub struct CohomologyBasis {
    degree: usize,
    generators: Vec<GenId>,
    representatives: Vec<Cochain>,
    reducer: Reducer,
    tag_words: usize,
}

impl CohomologyBasis {
    pub fn compute(space: &SimplicialSet, p: usize) -> Self {
        let generators = space.generators(p).to_vec();
        let n = generators.len();
        let pack = |v: &[bool]| {
            let mut w = vec![0u64; words_for(n)];
            for (i, &b) in v.iter().enumerate() {
                if b {
                    w[i / 64] |= 1 << (i % 64);
                }
            }
            w
        };
        let kernel = delta_matrix(space, p).kernel();
        let tag_words = words_for(kernel.len());
        let mut reducer = Reducer::default();
        if p > 0 {
            let below = delta_matrix(space, p - 1);
            for c in 0..below.cols() {
                reducer.insert(pack(&below.column(c)), vec![0; tag_words]);
            }
        }
        let mut representatives = Vec::new();
        for v in &kernel {
            let k = representatives.len();
            let mut tag = vec![0u64; tag_words];
            tag[k / 64] |= 1 << (k % 64);
            if reducer.insert(pack(v), tag) {
                let mut c = Cochain::zero(p);
                for (i, &b) in v.iter().enumerate() {
                    if b {
                        c.toggle(generators[i]);
                    }
                }
                representatives.push(c);
            }
        }
        CohomologyBasis { degree: p, generators, representatives, reducer, tag_words }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Cochain] {
        &self.representatives
    }

    /// The representative cocycle `Σ coords_k · rep_k`.
    pub fn representative(&self, coords: &[bool]) -> Result<Cochain> {
        if coords.len() != self.dim() {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates in degree {}, got {}",
                self.dim(),
                self.degree,
                coords.len()
            )));
        }
        let mut c = Cochain::zero(self.degree);
        for (rep, _) in self.representatives.iter().zip(coords).filter(|(_, &b)| b) {
            c = c.add(rep).expect("same degree");
        }
        Ok(c)
    }

    /// The class of a cochain of this degree, or `NotACocycle`.
    pub fn class_of(&self, space: &SimplicialSet, c: &Cochain) -> Result<ClassOf> {
        if c.degree() != self.degree {
            return Err(Error::DegreeMismatch(format!(
                "a degree-{} cochain has no class in degree {}",
                c.degree(),
                self.degree
            )));
        }
        if !coboundary(space, c).is_zero() {
            return Ok(ClassOf::NotACocycle);
        }
        let position: HashMap<GenId, usize> = self.generators.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut v = vec![0u64; words_for(self.generators.len())];
        for g in c.support() {
            let i = position[g];
            v[i / 64] |= 1 << (i % 64);
        }
        let (residue, tag) = self.reducer.reduce(v, vec![0; self.tag_words]);
        debug_assert!(first_bit(&residue).is_none(), "every cocycle reduces to zero");
        Ok(ClassOf::Class((0..self.dim()).map(|k| tag[k / 64] >> (k % 64) & 1 == 1).collect()))
    }
}

/// `H^*(X; Z₂)` in every degree up to the top dimension.
#[derive(Clone, Debug)]
pub struct Cohomology<'a> {
    space: &'a SimplicialSet,
    bases: Vec<CohomologyBasis>,
    empty: Vec<CohomologyBasis>,
}

impl<'a> Cohomology<'a> {
    pub fn new(space: &'a SimplicialSet) -> Self {
        Self::up_to(space, space.top_dim())
    }

    pub fn up_to(space: &'a SimplicialSet, max_dim: usize) -> Self {
        let bases = (0..=max_dim).map(|p| CohomologyBasis::compute(space, p)).collect();
        Cohomology { space, bases, empty: Vec::new() }
    }

    pub fn space(&self) -> &'a SimplicialSet {
        self.space
    }

    pub fn max_dim(&self) -> usize {
        self.bases.len() - 1
    }

    /// The basis in degree `p`; beyond the computed range, computed on demand.
    pub fn basis(&mut self, p: usize) -> &CohomologyBasis {
        if p < self.bases.len() {
            return &self.bases[p];
        }
        if let Some(i) = self.empty.iter().position(|b| b.degree == p) {
            return &self.empty[i];
        }
        self.empty.push(CohomologyBasis::compute(self.space, p));
        self.empty.last().expect("just pushed")
    }

    pub fn betti(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.dim()).collect()
    }

    fn class_in(&mut self, p: usize, c: &Cochain, err: impl FnOnce() -> Error) -> Result<Coordinates> {
        let space = self.space;
        match self.basis(p).class_of(space, c)? {
            ClassOf::Class(v) => Ok(v),
            ClassOf::NotACocycle => Err(err()),
        }
    }

    /// `Sq^i: H^j → H^{i+j}` on one class.
    pub fn sq(&mut self, i: usize, j: usize, class: &[bool]) -> Result<Coordinates> {
        let c = self.basis(j).representative(class)?;
        let s = sq(self.space, i, &c);
        self.class_in(i + j, &s, || Error::SquareNotCocycle { i, j })
    }

    /// The matrix of `Sq^i: H^j → H^{i+j}` in the computed bases.
    pub fn sq_matrix(&mut self, i: usize, j: usize) -> Result<Gf2Matrix> {
        let n = self.basis(j).dim();
        let rows = self.basis(i + j).dim();
        let mut columns = Vec::with_capacity(n);
        for k in 0..n {
            let mut e = vec![false; n];
            e[k] = true;
            columns.push(self.sq(i, j, &e)?);
        }
        Ok(Gf2Matrix::from_columns(rows, &columns))
    }

    /// `[a] ⌣ [b]` for classes in degrees `p` and `q`.
    pub fn cup(&mut self, p: usize, a: &[bool], q: usize, b: &[bool]) -> Result<Coordinates> {
        let ca = self.basis(p).representative(a)?;
        let cb = self.basis(q).representative(b)?;
        let product = cup(self.space, &ca, &cb);
        self.class_in(p + q, &product, || {
            Error::InvalidArgument(format!("cup product of degree-{p} and degree-{q} cocycles is not a cocycle"))
        })
    }
}

/// Mod-2 Betti numbers up to the top dimension.
pub fn betti_numbers(space: &SimplicialSet) -> Vec<usize> {
    Cohomology::new(space).betti()
}

pub fn cohomology_basis(space: &SimplicialSet, p: usize) -> CohomologyBasis {
    CohomologyBasis::compute(space, p)
}
