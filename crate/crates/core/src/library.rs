//! Built-in example spaces.
//!
//! | name                  | model                                               |
//! |-----------------------|-----------------------------------------------------|
//! | `point`               | one vertex                                          |
//! | `interval`            | the 1-simplex                                       |
//! | `simplex-N`           | the standard `N`-simplex                            |
//! | `sphere-N-minimal`    | one vertex `*`, one `N`-cell with degenerate faces  |
//! | `sphere-N-boundary`   | boundary of the `(N+1)`-simplex                     |
//! | `rp2`                 | 6 vertices, 10 triangles                            |
//! | `torus`               | 7 vertices, 14 triangles                            |
//! | `klein-bottle`        | 9 vertices, 18 triangles                            |
//! | `suspension-of-NAME`  | unreduced suspension of an ordered complex          |

use std::path::Path;

use crate::error::{Error, Result};
use crate::io::{self, OrderedComplexFile};
use crate::simplicial::{FaceSpec, GeneratorSpec, SimplicialSet, MAX_DIM};

const RP2: &str = include_str!("../data/rp2.json");
const TORUS: &str = include_str!("../data/torus.json");
const KLEIN_BOTTLE: &str = include_str!("../data/klein-bottle.json");

/// Names accepted by [`builtin`] that the test suites sweep over.
pub const BUILTINS: &[&str] = &[
    "point",
    "interval",
    "simplex-3",
    "sphere-1-minimal",
    "sphere-2-minimal",
    "sphere-3-minimal",
    "sphere-1-boundary",
    "sphere-2-boundary",
    "rp2",
    "torus",
    "klein-bottle",
    "suspension-of-rp2",
];

/// A library entry: how the space is built and its mod-2 Betti numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceLibraryEntry {
    pub name: String,
    pub description: String,
    pub expected_betti: Vec<usize>,
}

fn sphere_betti(n: usize) -> Vec<usize> {
    let mut b = vec![0; n + 1];
    b[0] += 1;
    b[n] += 1;
    b
}

fn parse_param<'a>(name: &'a str, prefix: &str, suffix: &str) -> Option<&'a str> {
    name.strip_prefix(prefix)?.strip_suffix(suffix)
}

fn parse_dim(text: &str, name: &str) -> Result<usize> {
    let n: usize = text.parse().map_err(|_| Error::UnknownSpace(name.to_string()))?;
    if n >= MAX_DIM {
        return Err(Error::DimensionTooLarge(n));
    }
    Ok(n)
}

/// Documentation for a builtin name.
pub fn describe(name: &str) -> Result<SpaceLibraryEntry> {
    let entry = |description: String, expected_betti: Vec<usize>| {
        Ok(SpaceLibraryEntry { name: name.to_string(), description, expected_betti })
    };
    match name {
        "point" => entry("a single vertex".into(), vec![1]),
        "interval" => entry("the standard 1-simplex".into(), vec![1, 0]),
        "rp2" => entry("real projective plane, 6 vertices and 10 triangles".into(), vec![1, 1, 1]),
        "torus" => entry("torus, 7 vertices and 14 triangles".into(), vec![1, 2, 1]),
        "klein-bottle" => entry("Klein bottle, 9 vertices and 18 triangles".into(), vec![1, 2, 1]),
        _ => {
            if let Some(n) = parse_param(name, "simplex-", "") {
                let n = parse_dim(n, name)?;
                let mut b = vec![0; n + 1];
                b[0] = 1;
                entry(format!("the standard {n}-simplex"), b)
            } else if let Some(n) = parse_param(name, "sphere-", "-minimal") {
                let n = parse_dim(n, name)?;
                if n == 0 {
                    return Err(Error::UnknownSpace(name.to_string()));
                }
                entry(format!("{n}-sphere with one vertex and one {n}-cell"), sphere_betti(n))
            } else if let Some(n) = parse_param(name, "sphere-", "-boundary") {
                let n = parse_dim(n, name)?;
                entry(format!("{n}-sphere as the boundary of the {}-simplex", n + 1), sphere_betti(n))
            } else if let Some(inner) = name.strip_prefix("suspension-of-") {
                let base = describe(inner)?;
                if ordered_complex(inner).is_err() {
                    return Err(Error::UnknownSpace(name.to_string()));
                }
                let mut b = vec![1];
                b.extend(base.expected_betti.iter().enumerate().map(|(k, &v)| if k == 0 { v - 1 } else { v }));
                entry(format!("unreduced suspension of {inner}"), b)
            } else {
                Err(Error::UnknownSpace(name.to_string()))
            }
        }
    }
}

/// The ordered-complex description of a builtin, when it has one.
pub fn ordered_complex(name: &str) -> Result<OrderedComplexFile> {
    let from_json = |text: &str| -> Result<OrderedComplexFile> { Ok(serde_json::from_str(text)?) };
    let simplex = |verts: Vec<String>, facets: Vec<Vec<String>>| OrderedComplexFile { vertices: verts, facets };
    match name {
        "point" => Ok(simplex(vec!["0".into()], vec![vec!["0".into()]])),
        "interval" => ordered_complex("simplex-1"),
        "rp2" => from_json(RP2),
        "torus" => from_json(TORUS),
        "klein-bottle" => from_json(KLEIN_BOTTLE),
        _ => {
            if let Some(n) = parse_param(name, "simplex-", "") {
                let n = parse_dim(n, name)?;
                let v: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
                Ok(simplex(v.clone(), vec![v]))
            } else if let Some(n) = parse_param(name, "sphere-", "-boundary") {
                let n = parse_dim(n, name)?;
                if n + 1 >= MAX_DIM {
                    return Err(Error::DimensionTooLarge(n + 1));
                }
                let v: Vec<String> = (0..=n + 1).map(|i| i.to_string()).collect();
                let facets = (0..=n + 1)
                    .map(|skip| v.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, s)| s.clone()).collect())
                    .collect();
                Ok(simplex(v, facets))
            } else if let Some(inner) = name.strip_prefix("suspension-of-") {
                let base = ordered_complex(inner)?;
                let (north, south) = ("n".to_string(), "s".to_string());
                if base.vertices.contains(&north) || base.vertices.contains(&south) {
                    return Err(Error::InvalidSet(format!("{inner} already uses the cone point names")));
                }
                let mut vertices = base.vertices.clone();
                vertices.push(north.clone());
                vertices.push(south.clone());
                let mut facets = Vec::new();
                for f in &base.facets {
                    for apex in [&north, &south] {
                        let mut g = f.clone();
                        g.push(apex.clone());
                        facets.push(g);
                    }
                }
                Ok(simplex(vertices, facets))
            } else {
                Err(Error::UnknownSpace(name.to_string()))
            }
        }
    }
}

/// The minimal model of `S^n`: `σ` has every face equal to `s_{n-2}⋯s_0 *`.
pub fn minimal_sphere(n: usize) -> Result<SimplicialSet> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::InvalidArgument(format!("no minimal model for the {n}-sphere")));
    }
    let face = FaceSpec { degeneracies: (0..n - 1).rev().collect(), target: "*".into() };
    SimplicialSet::from_generators(vec![
        GeneratorSpec { name: "*".into(), dim: 0, faces: Vec::new() },
        GeneratorSpec { name: "σ".into(), dim: n, faces: vec![face; n + 1] },
    ])
}

/// Builds a builtin space by name.
pub fn builtin(name: &str) -> Result<SimplicialSet> {
    if let Some(n) = parse_param(name, "sphere-", "-minimal") {
        return minimal_sphere(parse_dim(n, name)?);
    }
    ordered_complex(name)?.build()?.validated()
}

/// A path to a space file, or a builtin name.
pub fn load_space(spec: &str) -> Result<SimplicialSet> {
    let path = Path::new(spec);
    if path.is_file() {
        io::read_space(path)
    } else {
        builtin(spec)
    }
}
