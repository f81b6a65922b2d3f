//! Finite simplicial sets and the face/degeneracy operator calculus.
//!
//! Every simplex is kept in canonical form `s_{j_t} ... s_{j_1} g` with `g` a
//! nondegenerate generator and `j_t > ... > j_1`. The degeneracy word is stored
//! as a bit set, so deciding whether a simplex is degenerate is a single
//! comparison, and so is deciding whether a tuple of simplices is degenerate in
//! a product (the bit sets must intersect).

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest simplex dimension representable by the bit-set encoding.
pub const MAX_DIM: usize = 63;

pub type GenId = usize;

#[inline]
fn low_bits(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Composes `s_k` on the left of the canonical degeneracy word encoded by `word`.
///
/// Moving `s_k` rightwards past every `s_j` with `j >= k` raises `j` by one.
#[inline]
pub(crate) fn compose_degeneracy(word: u64, k: usize) -> u64 {
    let low = word & low_bits(k);
    let high = (word >> k) << (k + 1);
    low | high | (1u64 << k)
}

/// Outcome of pushing a face operator through a canonical degeneracy word.
pub(crate) enum FacePush {
    /// `∂_k s_j = 1` fired; the remaining word is returned.
    Cancelled(u64),
    /// The face operator passed every degeneracy and now reads `∂_k`.
    Emerged(u64, usize),
}

#[inline]
pub(crate) fn push_face(word: u64, mut k: usize) -> FacePush {
    let mut out = 0u64;
    let mut rest = word;
    while rest != 0 {
        let j = 63 - rest.leading_zeros() as usize;
        rest &= !(1u64 << j);
        if k < j {
            out |= 1u64 << (j - 1);
        } else if k == j || k == j + 1 {
            return FacePush::Cancelled(out | (word & low_bits(j)));
        } else {
            out |= 1u64 << j;
            k -= 1;
        }
    }
    FacePush::Emerged(out, k)
}

fn bits_ascending(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

fn bits_descending(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = 63 - mask.leading_zeros() as usize;
            mask &= !(1u64 << b);
            Some(b)
        }
    })
}

/// A single face or degeneracy symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Face(usize),
    Degeneracy(usize),
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Face(k) => write!(f, "d{k}"),
            Op::Degeneracy(k) => write!(f, "s{k}"),
        }
    }
}

/// A composition of face and degeneracy operators in canonical form
/// `s_{j_t} ... s_{j_1} ∂_{i_1} ... ∂_{i_s}` with `j_t > ... > j_1` and
/// `i_s > ... > i_1`.
///
/// The face part is recorded as the set of vertices of the source simplex it
/// deletes; the degeneracy part as the set `{j_1, ..., j_t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperatorWord {
    source_dim: usize,
    target_dim: usize,
    faces: u64,
    degeneracies: u64,
}

impl OperatorWord {
    pub fn identity(dim: usize) -> Self {
        OperatorWord { source_dim: dim, target_dim: dim, faces: 0, degeneracies: 0 }
    }

    /// The pure face word deleting the given vertices of an `source_dim`-simplex.
    pub fn deleting(source_dim: usize, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        if source_dim > MAX_DIM {
            return Err(Error::DimensionTooLarge(source_dim));
        }
        let mut faces = 0u64;
        for v in vertices {
            if v > source_dim {
                return Err(Error::FaceOutOfRange { index: v, dim: source_dim });
            }
            faces |= 1u64 << v;
        }
        let removed = faces.count_ones() as usize;
        if removed > source_dim {
            return Err(Error::InvalidArgument(format!(
                "cannot delete {removed} vertices of a {source_dim}-simplex"
            )));
        }
        Ok(OperatorWord { source_dim, target_dim: source_dim - removed, faces, degeneracies: 0 })
    }

    /// Puts a raw composition into canonical form. `ops` is listed in
    /// application order: `ops[0]` acts first.
    pub fn normalize(ops: &[Op], source_dim: usize) -> Result<Self> {
        if source_dim > MAX_DIM {
            return Err(Error::DimensionTooLarge(source_dim));
        }
        let mut w = OperatorWord::identity(source_dim);
        for (position, &op) in ops.iter().enumerate() {
            let dim = w.target_dim;
            let bad = || Error::MalformedWord { position, symbol: op.to_string(), dim };
            match op {
                Op::Degeneracy(k) => {
                    if k > dim || dim + 1 > MAX_DIM {
                        return Err(bad());
                    }
                    w = w.then_degeneracy(k);
                }
                Op::Face(k) => {
                    if dim == 0 || k > dim {
                        return Err(bad());
                    }
                    w = w.then_face(k);
                }
            }
        }
        Ok(w)
    }

    fn then_degeneracy(mut self, k: usize) -> Self {
        self.degeneracies = compose_degeneracy(self.degeneracies, k);
        self.target_dim += 1;
        self
    }

    fn then_face(mut self, k: usize) -> Self {
        match push_face(self.degeneracies, k) {
            FacePush::Cancelled(rest) => self.degeneracies = rest,
            FacePush::Emerged(rest, k) => {
                self.degeneracies = rest;
                // the k-th vertex still present after the existing faces
                let survivor = (0..=self.source_dim)
                    .filter(|v| self.faces & (1u64 << v) == 0)
                    .nth(k)
                    .expect("face index checked against the current dimension");
                self.faces |= 1u64 << survivor;
            }
        }
        self.target_dim -= 1;
        self
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    /// `[j_t, ..., j_1]`, strictly decreasing.
    pub fn degeneracy_indices(&self) -> Vec<usize> {
        bits_descending(self.degeneracies).collect()
    }

    /// `[i_1, ..., i_s]`, strictly increasing (written order).
    pub fn face_indices(&self) -> Vec<usize> {
        bits_ascending(self.faces).collect()
    }

    pub fn face_count(&self) -> usize {
        self.faces.count_ones() as usize
    }

    pub fn is_face_only(&self) -> bool {
        self.degeneracies == 0
    }

    pub fn is_identity(&self) -> bool {
        self.faces == 0 && self.degeneracies == 0
    }

    /// Applies the word to a simplex: faces first (largest index first), then
    /// degeneracies (smallest index first).
    pub fn apply<S: SimplicialObject + ?Sized>(&self, space: &S, x: &S::Simplex) -> S::Simplex {
        debug_assert_eq!(space.dim(x), self.source_dim);
        let mut y = x.clone();
        for v in bits_descending(self.faces) {
            y = space.face(v, &y);
        }
        for j in bits_ascending(self.degeneracies) {
            y = space.degeneracy(j, &y);
        }
        y
    }

    /// Symbol-by-symbol listing in application order.
    pub fn to_ops(&self) -> Vec<Op> {
        let mut ops: Vec<Op> = bits_descending(self.faces).map(Op::Face).collect();
        ops.extend(bits_ascending(self.degeneracies).map(Op::Degeneracy));
        ops
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = bits_descending(self.degeneracies).map(|j| format!("s{j}")).collect();
        parts.extend(bits_ascending(self.faces).map(|i| format!("d{i}")));
        write!(f, "{}", parts.join(" "))
    }
}

/// A simplex `s_{j_t} ... s_{j_1} g` of a simplicial set, `g` a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    dim: u32,
    generator: u32,
    degeneracies: u64,
}

impl SimplexRef {
    pub(crate) fn from_parts(generator: GenId, dim: usize, degeneracies: u64) -> Self {
        SimplexRef { dim: dim as u32, generator: generator as u32, degeneracies }
    }

    pub fn generator(&self) -> GenId {
        self.generator as GenId
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    /// Degeneracy word `[j_t, ..., j_1]`, strictly decreasing; empty iff nondegenerate.
    pub fn degeneracies(&self) -> Vec<usize> {
        bits_descending(self.degeneracies).collect()
    }

    /// Bit `k` is set iff this simplex lies in the image of `s_k`.
    pub fn degeneracy_mask(&self) -> u64 {
        self.degeneracies
    }

    pub fn is_degenerate(&self) -> bool {
        self.degeneracies != 0
    }

    pub fn generator_dim(&self) -> usize {
        self.dim() - self.degeneracies.count_ones() as usize
    }

    /// Applies `s_k`. Degeneracies never consult the face table.
    pub fn degenerate(&self, k: usize) -> Result<SimplexRef> {
        if k > self.dim() {
            return Err(Error::DegeneracyOutOfRange { index: k, dim: self.dim() });
        }
        if self.dim() + 1 > MAX_DIM {
            return Err(Error::DimensionTooLarge(self.dim() + 1));
        }
        Ok(self.degenerate_unchecked(k))
    }

    #[inline]
    pub(crate) fn degenerate_unchecked(&self, k: usize) -> SimplexRef {
        SimplexRef {
            dim: self.dim + 1,
            generator: self.generator,
            degeneracies: compose_degeneracy(self.degeneracies, k),
        }
    }

    #[inline]
    fn with_degeneracy_word(mut self, word: u64) -> SimplexRef {
        for j in bits_ascending(word) {
            self = self.degenerate_unchecked(j);
        }
        self
    }
}

/// Anything with face and degeneracy maps on a distinguished type of simplex.
///
/// Indices are trusted: callers guarantee `k <= dim(x)` (and `dim(x) >= 1` for
/// faces). The checked public entry points live on [`SimplicialSet`].
pub trait SimplicialObject {
    type Simplex: Clone + Ord + fmt::Debug;

    fn dim(&self, x: &Self::Simplex) -> usize;
    fn face(&self, k: usize, x: &Self::Simplex) -> Self::Simplex;
    fn degeneracy(&self, k: usize, x: &Self::Simplex) -> Self::Simplex;
    /// Bit `k` set iff `x` is in the image of `s_k`.
    fn degeneracy_mask(&self, x: &Self::Simplex) -> u64;

    fn is_degenerate(&self, x: &Self::Simplex) -> bool {
        self.degeneracy_mask(x) != 0
    }
}

/// A finite simplicial set given by its nondegenerate generators and their faces.
#[derive(Clone, Debug)]
pub struct SimplicialSet {
    names: Vec<String>,
    dims: Vec<usize>,
    by_dim: Vec<Vec<GenId>>,
    faces: Vec<Vec<SimplexRef>>,
    lookup: HashMap<String, GenId>,
}

/// One entry of a face table: the face is `s_{j_t} ... s_{j_1} target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSpec {
    pub degeneracies: Vec<usize>,
    pub target: String,
}

impl FaceSpec {
    pub fn nondegenerate(target: impl Into<String>) -> Self {
        FaceSpec { degeneracies: Vec::new(), target: target.into() }
    }
}

#[derive(Clone, Debug)]
pub struct GeneratorSpec {
    pub name: String,
    pub dim: usize,
    /// Faces `∂_0, ..., ∂_dim` in order; empty for vertices.
    pub faces: Vec<FaceSpec>,
}

impl SimplicialSet {
    /// Builds a simplicial set from an explicit face table.
    pub fn from_generators(gens: Vec<GeneratorSpec>) -> Result<Self> {
        let mut lookup = HashMap::new();
        for (id, g) in gens.iter().enumerate() {
            if g.dim > MAX_DIM {
                return Err(Error::DimensionTooLarge(g.dim));
            }
            if lookup.insert(g.name.clone(), id).is_some() {
                return Err(Error::InvalidSet(format!("duplicate generator `{}`", g.name)));
            }
        }
        let top = gens.iter().map(|g| g.dim).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); if gens.is_empty() { 0 } else { top + 1 }];
        let mut faces = Vec::with_capacity(gens.len());
        for (id, g) in gens.iter().enumerate() {
            by_dim[g.dim].push(id);
            let expected = if g.dim == 0 { 0 } else { g.dim + 1 };
            if g.faces.len() != expected {
                return Err(Error::InvalidSet(format!(
                    "generator `{}` of dimension {} lists {} faces, expected {expected}",
                    g.name,
                    g.dim,
                    g.faces.len()
                )));
            }
            let mut row = Vec::with_capacity(expected);
            for (k, spec) in g.faces.iter().enumerate() {
                let target = *lookup
                    .get(&spec.target)
                    .ok_or_else(|| Error::UnknownGenerator(spec.target.clone()))?;
                let face_dim = g.dim - 1;
                let target_dim = gens[target].dim;
                if target_dim + spec.degeneracies.len() != face_dim {
                    return Err(Error::InvalidSet(format!(
                        "face {k} of `{}`: `{}` with {} degeneracies does not have dimension {face_dim}",
                        g.name,
                        spec.target,
                        spec.degeneracies.len()
                    )));
                }
                let mut mask = 0u64;
                for (pos, &j) in spec.degeneracies.iter().enumerate() {
                    if pos > 0 && j >= spec.degeneracies[pos - 1] {
                        return Err(Error::InvalidSet(format!(
                            "face {k} of `{}`: degeneracy word must be strictly decreasing",
                            g.name
                        )));
                    }
                    if j >= face_dim {
                        return Err(Error::InvalidSet(format!(
                            "face {k} of `{}`: degeneracy index {j} out of range",
                            g.name
                        )));
                    }
                    mask |= 1u64 << j;
                }
                row.push(SimplexRef::from_parts(target, face_dim, mask));
            }
            faces.push(row);
        }
        Ok(SimplicialSet {
            names: gens.iter().map(|g| g.name.clone()).collect(),
            dims: gens.iter().map(|g| g.dim).collect(),
            by_dim,
            faces,
            lookup,
        })
    }

    /// The polyhedral simplicial set of an ordered simplicial complex: every
    /// subset of a facet is a generator and `∂_k` deletes the `k`-th vertex.
    pub fn from_ordered_complex<V: AsRef<str>>(vertices: &[V], facets: &[Vec<V>]) -> Result<Self> {
        let mut position = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if position.insert(v.as_ref().to_string(), i).is_some() {
                return Err(Error::InvalidSet(format!("duplicate vertex `{}`", v.as_ref())));
            }
        }
        let mut simplices: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        for facet in facets {
            let idx = facet
                .iter()
                .map(|v| {
                    position
                        .get(v.as_ref())
                        .copied()
                        .ok_or_else(|| Error::UnknownGenerator(v.as_ref().to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            if idx.is_empty() {
                return Err(Error::InvalidSet("empty facet".into()));
            }
            if idx.windows(2).any(|w| w[0] >= w[1]) {
                let names: Vec<&str> = facet.iter().map(|v| v.as_ref()).collect();
                return Err(Error::InvalidSet(format!(
                    "facet [{}] is not strictly increasing in the vertex order",
                    names.join(",")
                )));
            }
            if idx.len() - 1 > MAX_DIM {
                return Err(Error::DimensionTooLarge(idx.len() - 1));
            }
            let n = idx.len();
            for subset in 1u64..(1u64 << n) {
                let sub: Vec<usize> = (0..n).filter(|b| subset & (1 << b) != 0).map(|b| idx[b]).collect();
                simplices.insert((sub.len() - 1, sub));
            }
        }
        // vertices that appear in no facet are still points of the space
        for i in 0..vertices.len() {
            simplices.insert((0, vec![i]));
        }
        let name_of = |s: &[usize]| s.iter().map(|&i| vertices[i].as_ref()).collect::<Vec<_>>().join(",");
        let gens = simplices
            .iter()
            .map(|(dim, s)| GeneratorSpec {
                name: name_of(s),
                dim: *dim,
                faces: if *dim == 0 {
                    Vec::new()
                } else {
                    (0..=*dim)
                        .map(|k| {
                            let mut f = s.clone();
                            f.remove(k);
                            FaceSpec::nondegenerate(name_of(&f))
                        })
                        .collect()
                },
            })
            .collect();
        Self::from_generators(gens)
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    /// Largest generator dimension (0 for an empty set).
    pub fn top_dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    pub fn generators(&self, dim: usize) -> &[GenId] {
        self.by_dim.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn name(&self, g: GenId) -> &str {
        &self.names[g]
    }

    pub fn generator_dim(&self, g: GenId) -> usize {
        self.dims[g]
    }

    pub fn find(&self, name: &str) -> Option<GenId> {
        self.lookup.get(name).copied()
    }

    /// The generator itself as a nondegenerate simplex.
    pub fn simplex(&self, g: GenId) -> SimplexRef {
        SimplexRef::from_parts(g, self.dims[g], 0)
    }

    /// Stored face `∂_k g` of a generator.
    pub fn stored_face(&self, g: GenId, k: usize) -> SimplexRef {
        self.faces[g][k]
    }

    /// Applies `∂_k`, consulting the face table only when the operator reaches
    /// the generator.
    pub fn apply_face(&self, k: usize, x: &SimplexRef) -> Result<SimplexRef> {
        if x.dim() == 0 || k > x.dim() {
            return Err(Error::FaceOutOfRange { index: k, dim: x.dim() });
        }
        Ok(self.face_unchecked(k, x))
    }

    pub fn apply_degeneracy(&self, k: usize, x: &SimplexRef) -> Result<SimplexRef> {
        x.degenerate(k)
    }

    #[inline]
    pub(crate) fn face_unchecked(&self, k: usize, x: &SimplexRef) -> SimplexRef {
        match push_face(x.degeneracies, k) {
            FacePush::Cancelled(rest) => SimplexRef { dim: x.dim - 1, generator: x.generator, degeneracies: rest },
            FacePush::Emerged(rest, k) => self.faces[x.generator()][k].with_degeneracy_word(rest),
        }
    }

    /// Evaluates a raw composition (application order) symbol by symbol.
    pub fn apply_ops(&self, ops: &[Op], x: &SimplexRef) -> Result<SimplexRef> {
        let mut y = *x;
        for &op in ops {
            y = match op {
                Op::Face(k) => self.apply_face(k, &y)?,
                Op::Degeneracy(k) => self.apply_degeneracy(k, &y)?,
            };
        }
        Ok(y)
    }

    /// Lists every generator and pair `i < j` where `∂_i ∂_j x != ∂_{j-1} ∂_i x`.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (g, &n) in self.dims.iter().enumerate() {
            if n < 2 {
                continue;
            }
            let x = self.simplex(g);
            for j in 1..=n {
                for i in 0..j {
                    let left = self.face_unchecked(i, &self.face_unchecked(j, &x));
                    let right = self.face_unchecked(j - 1, &self.face_unchecked(i, &x));
                    if left != right {
                        violations.push(Violation { generator: self.names[g].clone(), i, j });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        if report.is_ok() {
            Ok(self)
        } else {
            Err(Error::Validation(report))
        }
    }

    /// Human-readable rendering of a simplex, e.g. `s1 s0 (a,b)`.
    pub fn describe(&self, x: &SimplexRef) -> String {
        let mut out = String::new();
        for j in x.degeneracies() {
            out.push_str(&format!("s{j} "));
        }
        out.push_str(self.name(x.generator()));
        out
    }

    /// Generators grouped by dimension as names, suitable for serialization.
    pub fn generator_names(&self) -> Vec<Vec<String>> {
        self.by_dim.iter().map(|gs| gs.iter().map(|&g| self.names[g].clone()).collect()).collect()
    }

    /// Generator specs equivalent to this set (round-trips through [`Self::from_generators`]).
    pub fn to_generator_specs(&self) -> Vec<GeneratorSpec> {
        (0..self.num_generators())
            .map(|g| GeneratorSpec {
                name: self.names[g].clone(),
                dim: self.dims[g],
                faces: self.faces[g]
                    .iter()
                    .map(|f| FaceSpec { degeneracies: f.degeneracies(), target: self.names[f.generator()].clone() })
                    .collect(),
            })
            .collect()
    }
}

impl SimplicialObject for SimplicialSet {
    type Simplex = SimplexRef;

    #[inline]
    fn dim(&self, x: &SimplexRef) -> usize {
        x.dim()
    }

    #[inline]
    fn face(&self, k: usize, x: &SimplexRef) -> SimplexRef {
        debug_assert!(x.dim() >= 1 && k <= x.dim());
        self.face_unchecked(k, x)
    }

    #[inline]
    fn degeneracy(&self, k: usize, x: &SimplexRef) -> SimplexRef {
        debug_assert!(k <= x.dim());
        x.degenerate_unchecked(k)
    }

    #[inline]
    fn degeneracy_mask(&self, x: &SimplexRef) -> u64 {
        x.degeneracies
    }
}

/// Counts face operator applications on the wrapped object.
pub struct Counting<'a, S> {
    inner: &'a S,
    faces: std::cell::Cell<u64>,
}

impl<'a, S> Counting<'a, S> {
    pub fn new(inner: &'a S) -> Self {
        Counting { inner, faces: std::cell::Cell::new(0) }
    }

    pub fn face_count(&self) -> u64 {
        self.faces.get()
    }

    pub fn reset(&self) {
        self.faces.set(0);
    }

    pub fn inner(&self) -> &'a S {
        self.inner
    }
}

impl<S: SimplicialObject> SimplicialObject for Counting<'_, S> {
    type Simplex = S::Simplex;

    #[inline]
    fn dim(&self, x: &Self::Simplex) -> usize {
        self.inner.dim(x)
    }

    #[inline]
    fn face(&self, k: usize, x: &Self::Simplex) -> Self::Simplex {
        self.faces.set(self.faces.get() + 1);
        self.inner.face(k, x)
    }

    #[inline]
    fn degeneracy(&self, k: usize, x: &Self::Simplex) -> Self::Simplex {
        self.inner.degeneracy(k, x)
    }

    #[inline]
    fn degeneracy_mask(&self, x: &Self::Simplex) -> u64 {
        self.inner.degeneracy_mask(x)
    }
}

/// The standard simplex `Δ^m` without stored face tables: the generator id
/// of a nondegenerate simplex is the bit set of its vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StandardSimplex {
    m: usize,
}

impl StandardSimplex {
    pub const MAX_DIM: usize = 31;

    pub fn new(m: usize) -> Result<Self> {
        if m > Self::MAX_DIM {
            return Err(Error::DimensionTooLarge(m));
        }
        Ok(StandardSimplex { m })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    /// The nondegenerate simplex spanned by a nonempty vertex set.
    pub fn simplex(&self, vertices: u64) -> SimplexRef {
        debug_assert!(vertices != 0 && vertices >> (self.m + 1) == 0);
        SimplexRef::from_parts(vertices as usize, vertices.count_ones() as usize - 1, 0)
    }

    pub fn top(&self) -> SimplexRef {
        self.simplex(low_bits(self.m + 1))
    }
}

impl SimplicialObject for StandardSimplex {
    type Simplex = SimplexRef;

    #[inline]
    fn dim(&self, x: &SimplexRef) -> usize {
        x.dim()
    }

    #[inline]
    fn face(&self, k: usize, x: &SimplexRef) -> SimplexRef {
        match push_face(x.degeneracies, k) {
            FacePush::Cancelled(rest) => SimplexRef { dim: x.dim - 1, generator: x.generator, degeneracies: rest },
            FacePush::Emerged(rest, k) => {
                let mut vertices = x.generator as u64;
                for _ in 0..k {
                    vertices &= vertices - 1;
                }
                let deleted = vertices & vertices.wrapping_neg();
                SimplexRef { dim: x.dim - 1, generator: (x.generator as u64 & !deleted) as u32, degeneracies: rest }
            }
        }
    }

    #[inline]
    fn degeneracy(&self, k: usize, x: &SimplexRef) -> SimplexRef {
        x.degenerate_unchecked(k)
    }

    #[inline]
    fn degeneracy_mask(&self, x: &SimplexRef) -> u64 {
        x.degeneracies
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub generator: String,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{}: d{} d{} != d{} d{}", v.generator, v.i, v.j, v.j - 1, v.i)?;
        }
        Ok(())
    }
}
