//! Built-in example complexes and Lie algebras, shipped as JSON data files.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, LieAlgebraJson};
use crate::simplicial::{ComplexFile, SimplicialComplex};

/// Built-in complexes as `(name, JSON)`.
pub const COMPLEXES: &[(&str, &str)] = &[
    ("circle", include_str!("../data/circle.json")),
    ("interval", include_str!("../data/interval.json")),
    ("point", include_str!("../data/point.json")),
    ("solid_simplex", include_str!("../data/solid_simplex.json")),
    ("sphere", include_str!("../data/sphere.json")),
    ("torus", include_str!("../data/torus.json")),
];

/// Built-in Lie algebras as `(name, JSON)`.
pub const ALGEBRAS: &[(&str, &str)] = &[
    ("abelian1", include_str!("../data/abelian1.json")),
    ("abelian2", include_str!("../data/abelian2.json")),
    ("sl2", include_str!("../data/sl2.json")),
    ("solvable2", include_str!("../data/solvable2.json")),
];

fn lookup<'a>(table: &'a [(&str, &'a str)], name: &str, kind: &str) -> Result<&'a str> {
    table.iter().find(|(n, _)| *n == name).map(|(_, s)| *s).ok_or_else(|| {
        let names: Vec<&str> = table.iter().map(|(n, _)| *n).collect();
        Error::MalformedInput(format!("no built-in {kind} named {name:?} (available: {})", names.join(", ")))
    })
}

pub fn parse_complex(json: &str) -> Result<SimplicialComplex> {
    let file: ComplexFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.build()
}

pub fn parse_algebra(json: &str) -> Result<LieAlgebra> {
    let file: LieAlgebraJson = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.build()
}

pub fn complex(name: &str) -> Result<Arc<SimplicialComplex>> {
    Ok(Arc::new(parse_complex(lookup(COMPLEXES, name, "complex")?)?))
}

pub fn algebra(name: &str) -> Result<Arc<LieAlgebra>> {
    Ok(Arc::new(parse_algebra(lookup(ALGEBRAS, name, "Lie algebra")?)?))
}
