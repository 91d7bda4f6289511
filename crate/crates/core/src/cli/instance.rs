//! JSON instance files.
//!
//! Every numeric entry is a string holding an exact expression over the
//! declared parameters. Indices in `structure_constants` are 1-based;
//! `phi[j]` is the image `φ̄e_{j+1}`; `eta` defaults to `ḡ(·, ξ̄)`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::expr;
use crate::bstructure::AcbmStructure;
use crate::error::{Error, Result};
use crate::exactmath::{fmt_scalar, parse_scalar, Matrix, Scalar, SymForm, Vector};
use crate::liegroup::LieAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub dimension: usize,
    pub basis_names: Vec<String>,
    #[serde(default)]
    pub parameters: BTreeMap<String, String>,
    /// Parameters that random campaigns must never set to zero.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub nonzero_parameters: Vec<String>,
    #[serde(default)]
    pub structure_constants: Vec<(usize, usize, usize, String)>,
    pub phi: Vec<Vec<String>>,
    pub xi: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<String>>,
    pub g: Vec<Vec<String>>,
    pub submanifold: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub screen_hint: Option<Vec<Vec<String>>>,
}

/// A fully evaluated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub parameters: BTreeMap<String, Scalar>,
    pub basis_names: Vec<String>,
    pub structure: AcbmStructure,
    pub tangent: Vec<Vector>,
    pub screen_hint: Option<Vec<Vector>>,
}

pub fn parse_instance(path: &Path) -> Result<InstanceFile> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_instance_str(&text)
}

pub fn parse_instance_str(text: &str) -> Result<InstanceFile> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.validate()?;
    Ok(file)
}

/// Parses `lambda1=1,mu=2/3`.
pub fn parse_overrides(spec: &str) -> Result<BTreeMap<String, Scalar>> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| Error::Parse(format!("expected name=value, got `{kv}`")))?;
            Ok((k.trim().to_string(), parse_scalar(v).map_err(|e| at(&format!("--params {}", k.trim()), e))?))
        })
        .collect()
}

fn at(key: &str, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{key}: {m}")),
        other => Error::Parse(format!("{key}: {other}")),
    }
}

impl InstanceFile {
    /// Shape and reference checks that need no arithmetic beyond parsing.
    pub fn validate(&self) -> Result<()> {
        let d = self.dimension;
        let bad = |m: String| Err(Error::Instance(m));
        if d == 0 {
            return bad("dimension must be positive".into());
        }
        if self.basis_names.len() != d {
            return bad(format!("expected {d} basis names, got {}", self.basis_names.len()));
        }
        for (name, value) in &self.parameters {
            parse_scalar(value).map_err(|e| at(&format!("parameters.{name}"), e))?;
        }
        if let Some(p) = self.nonzero_parameters.iter().find(|p| !self.parameters.contains_key(*p)) {
            return Err(Error::Parse(format!("nonzero_parameters: unknown parameter `{p}`")));
        }
        for (n, (i, j, k, e)) in self.structure_constants.iter().enumerate() {
            if [i, j, k].iter().any(|&&x| x == 0 || x > d) {
                return bad(format!("structure_constants[{n}]: index out of range [1, {d}]"));
            }
            self.check_refs(&format!("structure_constants[{n}]"), e)?;
        }
        check_square(&self.phi, d, "phi")?;
        check_square(&self.g, d, "g")?;
        check_len(&self.xi, d, "xi")?;
        if let Some(eta) = &self.eta {
            check_len(eta, d, "eta")?;
        }
        for (n, v) in self.submanifold.iter().enumerate() {
            check_len(v, d, &format!("submanifold[{n}]"))?;
        }
        if let Some(h) = &self.screen_hint {
            for (n, v) in h.iter().enumerate() {
                check_len(v, d, &format!("screen_hint[{n}]"))?;
            }
        }
        let all = self
            .phi
            .iter()
            .chain(&self.g)
            .chain(std::iter::once(&self.xi))
            .chain(self.eta.iter())
            .chain(&self.submanifold)
            .chain(self.screen_hint.iter().flatten());
        for row in all {
            for e in row {
                self.check_refs("entry", e)?;
            }
        }
        Ok(())
    }

    fn check_refs(&self, key: &str, src: &str) -> Result<()> {
        for id in expr::identifiers(src).map_err(|e| at(key, e))? {
            if !self.parameters.contains_key(&id) {
                return Err(Error::Parse(format!("{key}: unknown parameter `{id}` in `{src}`")));
            }
        }
        Ok(())
    }

    /// Parameter values after applying `overrides`; overriding an
    /// undeclared parameter is an error.
    pub fn parameter_values(&self, overrides: &BTreeMap<String, Scalar>) -> Result<BTreeMap<String, Scalar>> {
        let mut values = BTreeMap::new();
        for (name, value) in &self.parameters {
            values.insert(name.clone(), parse_scalar(value).map_err(|e| at(&format!("parameters.{name}"), e))?);
        }
        for (name, value) in overrides {
            match values.get_mut(name) {
                Some(slot) => *slot = value.clone(),
                None => return Err(Error::Parse(format!("--params: unknown parameter `{name}`"))),
            }
        }
        Ok(values)
    }

    /// Evaluates every entry and assembles the structure. A listed
    /// `(i, j, k)` also sets `(j, i, k)` to the negated value unless that
    /// entry is listed too.
    pub fn resolve(&self, overrides: &BTreeMap<String, Scalar>) -> Result<Instance> {
        let d = self.dimension;
        let params = self.parameter_values(overrides)?;
        let ev = |key: &str, src: &str| expr::eval(src, &params).map_err(|e| at(key, e));
        let vector = |key: &str, row: &[String]| -> Result<Vector> {
            row.iter()
                .enumerate()
                .map(|(i, e)| ev(&format!("{key}[{i}]"), e))
                .collect::<Result<Vec<_>>>()
                .map(Vector::new)
        };

        let mut alg = LieAlgebra::abelian(d);
        let explicit: std::collections::HashSet<(usize, usize, usize)> =
            self.structure_constants.iter().map(|(i, j, k, _)| (i - 1, j - 1, k - 1)).collect();
        for (n, (i, j, k, e)) in self.structure_constants.iter().enumerate() {
            let v = ev(&format!("structure_constants[{n}]"), e)?;
            let (i, j, k) = (i - 1, j - 1, k - 1);
            if !explicit.contains(&(j, i, k)) {
                alg.set_raw(j, i, k, -v.clone());
            }
            alg.set_raw(i, j, k, v);
        }

        let columns: Vec<Vector> =
            self.phi.iter().enumerate().map(|(j, c)| vector(&format!("phi[{j}]"), c)).collect::<Result<_>>()?;
        let phi = Matrix::from_columns(&columns, d);
        let g_rows: Vec<Vec<Scalar>> = self
            .g
            .iter()
            .enumerate()
            .map(|(i, r)| vector(&format!("g[{i}]"), r).map(Vector::into_entries))
            .collect::<Result<_>>()?;
        let g = SymForm::new(Matrix::from_rows(g_rows)).map_err(|_| Error::Instance("g is not symmetric".into()))?;
        let xi = vector("xi", &self.xi)?;
        let eta = match &self.eta {
            Some(e) => vector("eta", e)?,
            None => g.lower(&xi),
        };
        let structure = AcbmStructure::new(alg, phi, xi, eta, g)?;
        let tangent = self
            .submanifold
            .iter()
            .enumerate()
            .map(|(n, v)| vector(&format!("submanifold[{n}]"), v))
            .collect::<Result<_>>()?;
        let screen_hint = match &self.screen_hint {
            Some(h) => Some(
                h.iter().enumerate().map(|(n, v)| vector(&format!("screen_hint[{n}]"), v)).collect::<Result<_>>()?,
            ),
            None => None,
        };
        Ok(Instance { parameters: params, basis_names: self.basis_names.clone(), structure, tangent, screen_hint })
    }

    /// Canonical pretty JSON: structure constants sorted by index, one
    /// trailing newline. Re-parsing yields an identical `InstanceFile`.
    pub fn canonical(&self) -> String {
        let mut c = self.clone();
        c.structure_constants.sort();
        c.structure_constants.dedup();
        let mut s = serde_json::to_string_pretty(&c).expect("instance serializes");
        s.push('\n');
        s
    }

    /// Numeric instance with no parameters, e.g. for exporting a built-in
    /// example.
    pub fn from_parts(
        structure: &AcbmStructure,
        basis_names: &[String],
        tangent: &[Vector],
        screen_hint: Option<&[Vector]>,
    ) -> Self {
        let d = structure.dim();
        let strs = |v: &Vector| v.to_strings();
        let mut sc = Vec::new();
        for i in 0..d {
            for j in (i + 1)..d {
                for k in 0..d {
                    let c = structure.alg.constant(i, j, k);
                    if !num_traits::Zero::is_zero(c) {
                        sc.push((i + 1, j + 1, k + 1, fmt_scalar(c)));
                    }
                }
            }
        }
        InstanceFile {
            dimension: d,
            basis_names: basis_names.to_vec(),
            parameters: BTreeMap::new(),
            nonzero_parameters: Vec::new(),
            structure_constants: sc,
            phi: (0..d).map(|j| strs(&structure.phi.column(j))).collect(),
            xi: strs(&structure.xi),
            eta: Some(strs(&structure.eta)),
            g: structure.g.gram().to_rows().iter().map(|r| r.iter().map(fmt_scalar).collect()).collect(),
            submanifold: tangent.iter().map(strs).collect(),
            screen_hint: screen_hint.map(|h| h.iter().map(strs).collect()),
        }
    }
}

fn check_len(v: &[String], d: usize, key: &str) -> Result<()> {
    if v.len() != d {
        return Err(Error::Instance(format!("{key}: expected {d} entries, got {}", v.len())));
    }
    Ok(())
}

fn check_square(m: &[Vec<String>], d: usize, key: &str) -> Result<()> {
    if m.len() != d {
        return Err(Error::Instance(format!("{key}: expected {d} rows, got {}", m.len())));
    }
    for (i, r) in m.iter().enumerate() {
        check_len(r, d, &format!("{key}[{i}]"))?;
    }
    Ok(())
}
