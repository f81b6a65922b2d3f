//! Verification suites with machine-readable reports.
//!
//! Every suite iterates in a fixed order, so identical parameters give
//! byte-identical reports.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chains::{coboundary, Cochain};
use crate::cohomology::{ClassOf, Cohomology};
use crate::contraction::{
    check_chain_maps, check_contraction, check_homotopy_relation, product_basis, Contraction, HomotopyRelation,
};
use crate::diagonal::{big_d, h_fast_with, h_slow, recurrence_defect, sq, sq_slow_value, sq_value, Mode, SignFault};
use crate::error::{Error, Result};
use crate::library;
use crate::reduced::{check_rotation_intertwines, is_prime, ReducedPowers};
use crate::simplicial::{SimplexRef, SimplicialObject, SimplicialSet};

pub const SUITES: &[&str] = &["contraction", "theorem2", "recurrence", "sq-equivalence", "reduced-powers", "axioms"];

/// Spaces whose pairwise products the contraction suite checks.
pub const CONTRACTION_SPACES: &[&str] = &["interval", "sphere-2-minimal", "rp2", "torus"];

/// The builtins plus a space with generators up to dimension 6.
fn deep_spaces() -> Vec<&'static str> {
    library::BUILTINS.iter().copied().chain(["simplex-6"]).collect()
}

/// Mixed products for the higher-diagonal comparison.
pub const MIXED_PAIRS: &[(&str, &str)] = &[
    ("interval", "rp2"),
    ("rp2", "interval"),
    ("sphere-2-minimal", "torus"),
    ("torus", "klein-bottle"),
    ("rp2", "sphere-3-minimal"),
    ("simplex-3", "sphere-2-boundary"),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub id: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<Case>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), cases: Vec::new() }
    }

    fn push(&mut self, id: impl Into<String>, failure: Option<String>, ok_detail: impl Into<String>) {
        let (status, detail) = match failure {
            None => (Status::Pass, ok_detail.into()),
            Some(d) => (Status::Fail, d),
        };
        self.cases.push(Case { id: id.into(), status, detail });
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn case(&self, id: &str) -> Option<&Case> {
        self.cases.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            writeln!(f, "{tag} {} {}", c.id, c.detail)?;
        }
        let failed = self.failures().count();
        write!(f, "{}: {} cases, {} failed", self.suite, self.cases.len(), failed)
    }
}

/// Suite parameters; `None` picks the suite's default.
#[derive(Clone, Debug, Default)]
pub struct SuiteParams {
    pub spaces: Option<Vec<String>>,
    pub max_n: Option<usize>,
    pub max_dim: Option<usize>,
    pub max_i: Option<usize>,
    pub p: Option<usize>,
    pub seed: u64,
    pub sign_fault: SignFault,
}

impl SuiteParams {
    fn spaces_or(&self, default: &[&str]) -> Vec<String> {
        match &self.spaces {
            Some(s) => s.clone(),
            None => default.iter().map(|s| s.to_string()).collect(),
        }
    }
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteReport> {
    match name {
        "contraction" => contraction_suite(params),
        "theorem2" => theorem2_suite(params),
        "recurrence" => recurrence_suite(params),
        "sq-equivalence" => sq_equivalence_suite(params),
        "reduced-powers" => reduced_powers_suite(params),
        "axioms" => axioms_suite(params),
        _ => Err(Error::InvalidArgument(format!("unknown suite '{name}'; expected one of {}", SUITES.join(", ")))),
    }
}

fn load_all(names: &[String]) -> Result<Vec<(String, SimplicialSet)>> {
    names.iter().map(|n| Ok((n.clone(), library::load_space(n)?))).collect()
}

fn contraction_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let max_dim = params.max_dim.unwrap_or(4);
    let spaces = load_all(&params.spaces_or(CONTRACTION_SPACES))?;
    let mut report = SuiteReport::new("contraction");
    for (nx, x) in &spaces {
        for (ny, y) in &spaces {
            let c = Contraction::<i64>::eilenberg_zilber(&[x, y])?;
            contraction_cases(&mut report, &format!("{nx}×{ny}"), &c, max_dim);
        }
    }
    let pfold_dim = max_dim.min(3);
    for (nx, x) in spaces.iter().take(2) {
        let c = Contraction::<i64>::pfold(&[x, x, x])?;
        contraction_cases(&mut report, &format!("{nx}^3"), &c, pfold_dim);
    }
    Ok(report)
}

fn contraction_cases(report: &mut SuiteReport, label: &str, c: &Contraction<'_, i64>, max_dim: usize) {
    for r in check_contraction(c, max_dim).results {
        let id = format!("{label}/{}", r.axiom.label());
        let failure = r.counterexample.map(|cell| format!("{} fails on {cell}", r.axiom.statement()));
        report.push(id, failure, format!("{} on {} cells of dim <= {max_dim}", r.axiom.statement(), r.checked));
    }
    report.push(format!("{label}/chain-maps"), check_chain_maps(c, max_dim), "fd = df and gd = dg");
    let opposite = check_homotopy_relation(c, max_dim, HomotopyRelation::GfMinusOne);
    report.push(
        format!("{label}/homotopy-gf-minus-one"),
        opposite.map(|cell| format!("φd + dφ = gf - 1 fails on {}", c.big().describe(&cell))),
        "φd + dφ = gf - 1",
    );
}

fn theorem2_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let max_n = params.max_n.unwrap_or(3);
    let max_dim = params.max_dim.unwrap_or(6);
    let names = params.spaces_or(library::BUILTINS);
    let mut pairs: Vec<(String, String)> = names.iter().map(|n| (n.clone(), n.clone())).collect();
    if params.spaces.is_none() {
        pairs.extend(MIXED_PAIRS.iter().map(|(a, b)| (a.to_string(), b.to_string())));
    }
    let mut report = SuiteReport::new("theorem2");
    let mut minimal: Option<(usize, usize, String)> = None;
    for (na, nb) in &pairs {
        let x = library::load_space(na)?;
        let y = library::load_space(nb)?;
        let bases: Vec<_> = (0..=max_dim).map(|m| product_basis(&[&x, &y], m)).collect();
        for n in 0..=max_n {
            let mut checked = 0;
            let mut failure = None;
            'dims: for (m, basis) in bases.iter().enumerate() {
                for z in basis {
                    let (a, b) = (&z.0[0], &z.0[1]);
                    checked += 1;
                    let fast = h_fast_with::<_, i64>(n, &x, &y, a, b, params.sign_fault);
                    let slow = h_slow::<_, i64>(n, &x, &y, a, b);
                    if fast != slow {
                        let cell = format!("({}, {})", x.describe(a), y.describe(b));
                        let detail = format!("h_{n} differs on the {m}-simplex {cell}: fast {fast:?}, slow {slow:?}");
                        if minimal.as_ref().is_none_or(|(mm, mn, _)| (m, n) < (*mm, *mn)) {
                            minimal = Some((m, n, format!("{na}×{nb} {cell}")));
                        }
                        failure = Some(detail);
                        break 'dims;
                    }
                }
            }
            report.push(format!("{na}×{nb}/n={n}"), failure, format!("{checked} simplices of dim <= {max_dim}"));
        }
    }
    if let Some((m, n, cell)) = minimal {
        report.push("minimal-counterexample", Some(format!("h_{n} on the {m}-simplex {cell}")), "");
    }
    Ok(report)
}

fn recurrence_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let max_i = params.max_i.unwrap_or(3);
    let max_dim = params.max_dim.unwrap_or(6);
    let mut report = SuiteReport::new("recurrence");
    for (name, x) in load_all(&params.spaces_or(&deep_spaces()))? {
        for mode in [Mode::Fast, Mode::Slow] {
            for i in 0..=max_i {
                let mut checked = 0;
                let mut failure = None;
                for m in 0..=max_dim.min(x.top_dim()) {
                    for &g in x.generators(m) {
                        checked += 1;
                        let s = x.simplex(g);
                        let defect = recurrence_defect(i, &x, &s, mode);
                        if !defect.is_zero() && failure.is_none() {
                            failure = Some(format!("defect {defect:?} on {}", x.describe(&s)));
                        }
                    }
                }
                report.push(format!("{name}/{mode:?}/i={i}"), failure, format!("{checked} generators"));
            }
        }
    }
    Ok(report)
}

fn sq_equivalence_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let max_total = params.max_dim.unwrap_or(6);
    let mut report = SuiteReport::new("sq-equivalence");
    for (name, x) in load_all(&params.spaces_or(&deep_spaces()))? {
        for m in 0..=max_total.min(x.top_dim()) {
            for i in 0..=m {
                let j = m - i;
                let mut checked = 0;
                let mut failure = None;
                'outer: for &gc in x.generators(j) {
                    let c = Cochain::indicator(&x, gc);
                    for &gx in x.generators(m) {
                        let s = x.simplex(gx);
                        checked += 1;
                        let fast = sq_value(&x, i, &c, &s);
                        let slow = sq_slow_value(&x, i, &c, &s);
                        if fast != slow {
                            failure = Some(format!(
                                "Sq^{i}(1_{}) on {}: formula {fast}, composite {slow}",
                                x.name(gc),
                                x.describe(&s)
                            ));
                            break 'outer;
                        }
                    }
                }
                report.push(format!("{name}/Sq^{i} on C^{j}"), failure, format!("{checked} evaluations"));
            }
        }
        let mut h = Cohomology::new(&x);
        for j in 0..=x.top_dim() {
            let reps = h.basis(j).representatives().to_vec();
            for i in 0..=j {
                let failure = reps.iter().enumerate().find_map(|(k, c)| {
                    let s = sq(&x, i, c);
                    (!coboundary(&x, &s).is_zero()).then(|| format!("Sq^{i} of basis cocycle {k} is not a cocycle"))
                });
                report.push(format!("{name}/Sq^{i} preserves cocycles in H^{j}"), failure, format!("{} cocycles", reps.len()));
            }
        }
    }
    Ok(report)
}

fn reduced_powers_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let max_dim = params.max_dim.unwrap_or(4);
    let runs: Vec<(usize, usize)> = match params.p {
        Some(p) => vec![(p, params.max_i.unwrap_or(if p == 2 { 3 } else { 2 }))],
        None => vec![(2, params.max_i.unwrap_or(3)), (3, params.max_i.unwrap_or(2))],
    };
    let mut report = SuiteReport::new("reduced-powers");
    for (name, x) in load_all(&params.spaces_or(CONTRACTION_SPACES))? {
        for &(p, max_i) in &runs {
            let note = if is_prime(p) { String::new() } else { format!(" (p = {p} is not prime)") };
            let r = ReducedPowers::<i64>::new(&x, p)?;
            let gens: Vec<SimplexRef> =
                (0..=max_dim.min(x.top_dim())).flat_map(|m| x.generators(m).iter().map(|&g| x.simplex(g))).collect();
            for i in 1..=max_i {
                let mut failure = None;
                for s in &gens {
                    let defect = r.identity_defect(i, s)?;
                    if !defect.is_zero() {
                        failure = Some(format!("defect {defect:?} on {}{note}", x.describe(s)));
                        break;
                    }
                }
                report.push(format!("{name}/p={p}/i={i}"), failure, format!("{} generators{note}", gens.len()));
            }
            let tg = check_rotation_intertwines(r.contraction(), max_dim.min(3));
            report.push(format!("{name}/p={p}/tg=gT"), tg.map(|c| format!("fails on {}", r.contraction().small().describe(&c))), "t g = g T");
            if p == 2 {
                let failure = (0..=max_i).find_map(|i| {
                    gens.iter()
                        .find(|s| r.d(i, s) != big_d::<i64>(i, &x, s, Mode::Slow))
                        .map(|s| format!("D_{i} differs on {}", x.describe(s)))
                });
                report.push(format!("{name}/p=2/matches-higher-diagonal"), failure, "termwise equal");
            }
        }
    }
    Ok(report)
}

/// `(a ⌣ a)(x) = a(front j-face) · a(back j-face)`, read off the faces directly.
pub fn cup_square_oracle(space: &SimplicialSet, a: &Cochain) -> Cochain {
    let j = a.degree();
    let mut out = Cochain::zero(2 * j);
    for &g in space.generators(2 * j) {
        let x = space.simplex(g);
        let mut front = x;
        for _ in 0..j {
            front = space.face(space.dim(&front), &front);
        }
        let mut back = x;
        for _ in 0..j {
            back = space.face(0, &back);
        }
        if a.value(&front).0 && a.value(&back).0 {
            out.toggle(g);
        }
    }
    out
}

fn random_cochain(space: &SimplicialSet, degree: usize, rng: &mut ChaCha8Rng) -> Cochain {
    let mut c = Cochain::zero(degree);
    for &g in space.generators(degree) {
        if rng.gen_bool(0.5) {
            c.toggle(g);
        }
    }
    c
}

fn class(h: &mut Cohomology<'_>, c: &Cochain) -> Option<Vec<bool>> {
    let space = h.space();
    match h.basis(c.degree()).class_of(space, c) {
        Ok(ClassOf::Class(v)) => Some(v),
        _ => None,
    }
}

/// Every vector of length `n` when `n <= 4`, otherwise the unit vectors.
fn test_vectors(n: usize) -> Vec<Vec<bool>> {
    if n <= 4 {
        (0u32..1 << n).map(|bits| (0..n).map(|k| bits >> k & 1 == 1).collect()).collect()
    } else {
        (0..n).map(|i| (0..n).map(|k| k == i).collect()).collect()
    }
}

fn axioms_suite(params: &SuiteParams) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut report = SuiteReport::new("axioms");
    for (name, x) in load_all(&params.spaces_or(library::BUILTINS))? {
        let top = x.top_dim();
        let mut h = Cohomology::new(&x);
        for j in 0..=top.min(2) {
            let m = h.sq_matrix(0, j)?;
            let n = h.basis(j).dim();
            let failure = (m != crate::cohomology::Gf2Matrix::identity(n)).then(|| format!("Sq^0 on H^{j} is\n{m}"));
            report.push(format!("{name}/Sq^0=id on H^{j}"), failure, format!("dim H^{j} = {n}"));
        }
        for j in 0..=top {
            let n = h.basis(j).dim();
            let vectors = test_vectors(n);
            let mut failure = None;
            for a in &vectors {
                let square = h.sq(j, j, a)?;
                let rep = h.basis(j).representative(a)?;
                let oracle = class(&mut h, &cup_square_oracle(&x, &rep));
                if oracle.as_ref() != Some(&square) {
                    failure = Some(format!("Sq^{j}{a:?} = {square:?}, cup square {oracle:?}"));
                    break;
                }
            }
            report.push(format!("{name}/Sq^j=cup-square on H^{j}"), failure, format!("{} classes", vectors.len()));
        }
        for j in 0..=top {
            let mut failure = None;
            for i in j + 1..=j + 2 {
                for c in h.basis(j).representatives().to_vec() {
                    let s = sq(&x, i, &c);
                    if !s.is_zero() {
                        failure = Some(format!("Sq^{i} of a degree-{j} cocycle is nonzero"));
                    }
                }
                let c = random_cochain(&x, j, &mut rng);
                if !sq(&x, i, &c).is_zero() {
                    failure = Some(format!("Sq^{i} of a random degree-{j} cochain is nonzero"));
                }
            }
            report.push(format!("{name}/Sq^(i>j)=0 on C^{j}"), failure, "i = j+1, j+2");
        }
        for j in 1..=top {
            let n = h.basis(j).dim();
            if n == 0 {
                continue;
            }
            let mut failure = None;
            for i in 0..=j {
                let a: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
                let rep = h.basis(j).representative(&a)?;
                let shifted = rep.add(&coboundary(&x, &random_cochain(&x, j - 1, &mut rng)))?;
                let expected = h.sq(i, j, &a)?;
                let got = class(&mut h, &sq(&x, i, &shifted));
                if got.as_ref() != Some(&expected) {
                    failure = Some(format!("Sq^{i} of a cohomologous representative gives {got:?}, expected {expected:?}"));
                    break;
                }
                let b: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
                let sum: Vec<bool> = a.iter().zip(&b).map(|(p, q)| p ^ q).collect();
                let lhs = h.sq(i, j, &sum)?;
                let sb = h.sq(i, j, &b)?;
                let rhs: Vec<bool> = expected.iter().zip(&sb).map(|(p, q)| p ^ q).collect();
                if lhs != rhs {
                    failure = Some(format!("Sq^{i} is not additive on {a:?} + {b:?}"));
                    break;
                }
            }
            report.push(format!("{name}/representative-independence and additivity on H^{j}"), failure, format!("seed {}", params.seed));
        }
        if name == "rp2" {
            let n = h.basis(1).dim();
            let a = vec![true; n];
            let sq1 = h.sq(1, 1, &a)?;
            let rep = h.basis(1).representative(&a)?;
            let oracle = class(&mut h, &cup_square_oracle(&x, &rep));
            let failure = if oracle.as_ref() != Some(&sq1) {
                Some(format!("Sq^1 a = {sq1:?}, a² = {oracle:?}"))
            } else if !sq1.iter().any(|&b| b) {
                Some("Sq^1 a vanishes".to_string())
            } else {
                None
            };
            report.push("rp2/Sq^1 a = a² != 0", failure, "the generator of H^2");
        }
    }
    Ok(report)
}
