//! Named elements and element files.

use std::path::Path;

use qm_core::algebra::{Filtration, PointFunction};
use qm_core::numerics::ComplexMatrix;
use qm_core::{
    BetaSequence, CantorModel, IntervalModel, QuantizedInterval, SampledFunction, UhfModel,
};
use serde::Deserialize;

use crate::args::{BetaSpec, InstanceKind};
use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementFile {
    values: Vec<f64>,
    limit: f64,
    #[serde(default)]
    affine: bool,
}

fn parse_index(name: &str, prefix: &str) -> Result<Option<usize>, CliError> {
    match name.strip_prefix(prefix) {
        None => Ok(None),
        Some(k) => k
            .parse()
            .map(Some)
            .map_err(|_| CliError::Config(format!("bad index in element {name:?}"))),
    }
}

/// Continuum element for the interval: named step functions, `p1`, `unit`,
/// or a JSON element file.
pub fn interval_element(name: &str, level: usize) -> Result<SampledFunction, CliError> {
    if name == "p1" {
        return Ok(SampledFunction::p1(level));
    }
    if name == "unit" {
        return Ok(SampledFunction::constant(1.0));
    }
    let model = IntervalModel::new(level)?;
    let step = if let Some(n) = parse_index(name, "phi:")? {
        Some(model.phi(n)?)
    } else if let Some(n) = parse_index(name, "chi:")? {
        Some(model.chi(n)?)
    } else {
        None
    };
    if let Some(f) = step {
        return Ok(from_point_function(&f));
    }
    read_element_file(name)
}

// Points are `1, 1/2, …, 1/2^{N-2}` then the tail, which stays constant.
fn from_point_function(f: &PointFunction) -> SampledFunction {
    let (head, tail) = f.values().split_at(f.len() - 1);
    SampledFunction::from_samples(head.to_vec(), tail[0], false).expect("finite step function")
}

fn read_element_file(path: &str) -> Result<SampledFunction, CliError> {
    if !Path::new(path).is_file() {
        return Err(CliError::Config(format!(
            "unknown element {path:?} (not a known name or an existing file)"
        )));
    }
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.into(),
        source,
    })?;
    let file: ElementFile =
        serde_json::from_str(&text).map_err(|source| CliError::ElementFile {
            path: path.into(),
            source,
        })?;
    Ok(SampledFunction::from_samples(
        file.values,
        file.limit,
        file.affine,
    )?)
}

pub fn cantor_element(model: &CantorModel, name: &str) -> Result<PointFunction, CliError> {
    if name == "unit" {
        return Ok(PointFunction::constant(model.algebra().len(), 1.0));
    }
    match parse_index(name, "rademacher:")? {
        Some(k) => Ok(model.rademacher(k)?),
        None => Err(CliError::Config(format!(
            "unknown cantor element {name:?}; expected rademacher:k or unit"
        ))),
    }
}

pub fn uhf_element(model: &UhfModel, name: &str) -> Result<ComplexMatrix, CliError> {
    if name == "unit" {
        return Ok(model.algebra().unit());
    }
    match parse_index(name, "pauli:")? {
        Some(k) => Ok(model.pauli_site(k)?),
        None => Err(CliError::Config(format!(
            "unknown uhf element {name:?}; expected pauli:k or unit"
        ))),
    }
}

/// Resolves a beta spec over `levels` levels. Element-derived sequences are
/// computed from an element of the continuum interval algebra.
pub fn resolve_beta(spec: &BetaSpec, levels: usize) -> Result<BetaSequence, CliError> {
    let derived = |name: &str, squared: bool| -> Result<BetaSequence, CliError> {
        let space = QuantizedInterval::new(levels)?;
        let a = interval_element(name, levels.max(2))?;
        Ok(if squared {
            qm_core::algebra::beta_squared_from_element(&space, &a, levels)?
        } else {
            qm_core::algebra::beta_from_element(&space, &a, levels)?
        })
    };
    match spec {
        BetaSpec::Geometric(r) => Ok(BetaSequence::geometric(*r)?),
        BetaSpec::Harmonic => Ok(BetaSequence::harmonic()),
        BetaSpec::FromElement(name) => derived(name, false),
        BetaSpec::FromElementSquared(name) => derived(name, true),
    }
}

/// Number of filtration levels of the truncation.
pub fn top_level(instance: InstanceKind, level: usize) -> usize {
    match instance {
        InstanceKind::Interval => level,
        InstanceKind::Cantor | InstanceKind::Uhf => level + 1,
    }
}
