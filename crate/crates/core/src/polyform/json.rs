use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::local::LocalForm;
use super::piecewise::PiecewiseForm;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::simplicial::{CarrierFamily, Simplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    #[serde(with = "rational::serde_str")]
    pub coef: Rational,
}

/// One `f dx_I` summand; `indices` are one-based coordinate numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub indices: Vec<usize>,
    pub poly: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalJson {
    pub simplex: Simplex,
    pub components: Vec<ComponentJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseFormJson {
    pub degree: usize,
    pub locals: Vec<LocalJson>,
}

impl LocalJson {
    pub fn from_local(l: &LocalForm) -> Self {
        LocalJson {
            simplex: l.simplex().clone(),
            components: l
                .components()
                .iter()
                .map(|(idx, poly)| ComponentJson {
                    indices: idx.iter().map(|i| i + 1).collect(),
                    poly: poly
                        .terms()
                        .iter()
                        .map(|(e, c)| TermJson { exps: e.clone(), coef: c.clone() })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_local(&self, degree: usize) -> Result<LocalForm> {
        let k = self.simplex.dim();
        let mut comps = Vec::new();
        for c in &self.components {
            if c.indices.contains(&0) {
                return Err(Error::MalformedInput("form indices are one-based".into()));
            }
            if c.poly.iter().any(|t| t.exps.len() != k) {
                return Err(Error::MalformedInput(format!(
                    "exponent vectors on {} must have length {k}",
                    self.simplex
                )));
            }
            let poly = Polynomial::from_terms(k, c.poly.iter().map(|t| (t.exps.clone(), t.coef.clone())));
            comps.push((c.indices.iter().map(|i| i - 1).collect(), poly));
        }
        LocalForm::new(self.simplex.clone(), degree, comps)
    }
}

impl PiecewiseFormJson {
    pub fn from_form(form: &PiecewiseForm) -> Self {
        PiecewiseFormJson {
            degree: form.degree(),
            locals: form.locals().values().map(LocalJson::from_local).collect(),
        }
    }

    /// Rebuilds the form on a family, re-checking face compatibility.
    pub fn to_form(&self, family: &Arc<CarrierFamily>) -> Result<PiecewiseForm> {
        let locals = self.locals.iter().map(|l| l.to_local(self.degree)).collect::<Result<Vec<_>>>()?;
        PiecewiseForm::from_locals(family.clone(), self.degree, locals)
    }
}
