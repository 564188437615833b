use qm_core::algebra::{domain_separation_report, DomainSeparation, Filtration};
use qm_core::mk::pure_distance_matrix;
use qm_core::verify::{self, Check, Suite, VerifyConfig};
use qm_core::{
    lip_seminorm, BetaSequence, CantorModel, IntervalModel, QuantizedInterval, UhfModel,
};
use serde::Serialize;

use crate::args::{BetaSpec, InstanceKind};
use crate::elements::{cantor_element, interval_element, resolve_beta, top_level, uhf_element};
use crate::error::CliError;
use crate::output::Artifact;

// Levels used when an element-derived beta feeds the verification suites.
const VERIFY_BETA_LEVELS: usize = 24;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub instance: InstanceKind,
    pub level: usize,
    pub beta: BetaSpec,
    pub seed: u64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let (lo, hi) = self.instance.level_bounds();
        if !(lo..=hi).contains(&self.level) {
            return Err(CliError::Config(format!(
                "{} level {} outside supported range {lo}..={hi}",
                self.instance.name(),
                self.level
            )));
        }
        Ok(())
    }

    fn beta(&self) -> Result<BetaSequence, CliError> {
        resolve_beta(&self.beta, top_level(self.instance, self.level))
    }
}

#[derive(Debug, Serialize)]
pub struct Distances {
    instance: &'static str,
    level: usize,
    beta: String,
    labels: Vec<String>,
    lp: Vec<Vec<f64>>,
    /// Absent when beta is not non-increasing.
    closed_form: Option<Vec<Vec<f64>>>,
    max_discrepancy: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct DistanceRow {
    x: String,
    y: String,
    lp: f64,
    closed_form: Option<f64>,
    discrepancy: Option<f64>,
}

impl Artifact for Distances {
    type Row = DistanceRow;

    fn rows(&self) -> Vec<Self::Row> {
        let mut out = Vec::new();
        for (i, x) in self.labels.iter().enumerate() {
            for (j, y) in self.labels.iter().enumerate() {
                let lp = self.lp[i][j];
                let cf = self.closed_form.as_ref().map(|m| m[i][j]);
                out.push(DistanceRow {
                    x: x.clone(),
                    y: y.clone(),
                    lp,
                    closed_form: cf,
                    discrepancy: cf.map(|c| (lp - c).abs()),
                });
            }
        }
        out
    }
}

pub fn distances(cfg: &RunConfig) -> Result<Distances, CliError> {
    let beta = cfg.beta()?;
    let (matrix, closed_form) = match cfg.instance {
        InstanceKind::Interval => {
            let model = IntervalModel::new(cfg.level)?;
            let matrix = pure_distance_matrix(model.algebra(), &beta)?;
            let points = IntervalModel::points(cfg.level);
            let cf = companion(beta.is_monotone(), points.len(), |i, j| {
                model.closed_form_mk(&beta, points[i], points[j])
            })?;
            (matrix, cf)
        }
        InstanceKind::Cantor => {
            let model = CantorModel::new(cfg.level)?;
            let matrix = pure_distance_matrix(model.algebra(), &beta)?;
            let cf = companion(beta.is_monotone(), model.algebra().len(), |i, j| {
                model.prefix_distance(&beta, i, j)
            })?;
            (matrix, cf)
        }
        InstanceKind::Uhf => return Err(qm_core::Error::MatrixKindUnsupported.into()),
    };
    let max_discrepancy = closed_form.as_ref().map(|cf| {
        cf.iter()
            .flatten()
            .zip(matrix.values.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    });
    Ok(Distances {
        instance: cfg.instance.name(),
        level: cfg.level,
        beta: cfg.beta.to_string(),
        labels: matrix.labels,
        lp: matrix.values,
        closed_form,
        max_discrepancy,
    })
}

fn companion(
    monotone: bool,
    size: usize,
    f: impl Fn(usize, usize) -> qm_core::Result<f64>,
) -> Result<Option<Vec<Vec<f64>>>, CliError> {
    if !monotone {
        return Ok(None);
    }
    let m = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| if i == j { Ok(0.0) } else { f(i, j) })
                .collect()
        })
        .collect::<qm_core::Result<_>>()?;
    Ok(Some(m))
}

#[derive(Debug, Serialize)]
pub struct Domain {
    instance: &'static str,
    level: usize,
    element: String,
    levels: Vec<DomainRow>,
    summary: DomainSummary,
}

#[derive(Debug, Clone, Serialize)]
pub struct DomainRow {
    level: usize,
    beta_a: f64,
    beta_a_squared: f64,
    running_beta_a: f64,
    running_beta_a_squared: f64,
}

#[derive(Debug, Serialize)]
pub struct DomainSummary {
    /// Largest running value under `β_a`; stays at 1.
    max_running_beta_a: f64,
    /// Last running value under `β_a²`.
    final_running_beta_a_squared: f64,
    /// Ratio of the last two running values under `β_a²`.
    growth_ratio: f64,
}

impl Artifact for Domain {
    type Row = DomainRow;

    fn rows(&self) -> Vec<DomainRow> {
        self.levels.clone()
    }
}

pub fn domain(cfg: &RunConfig, element: &str) -> Result<Domain, CliError> {
    let levels = top_level(cfg.instance, cfg.level);
    let report = match cfg.instance {
        InstanceKind::Interval => {
            let space = QuantizedInterval::new(levels)?;
            domain_separation_report(&space, &interval_element(element, cfg.level)?, levels)?
        }
        InstanceKind::Cantor => {
            let model = CantorModel::new(cfg.level)?;
            domain_separation_report(model.algebra(), &cantor_element(&model, element)?, levels)?
        }
        InstanceKind::Uhf => {
            let model = UhfModel::new(cfg.level)?;
            domain_separation_report(model.algebra(), &uhf_element(&model, element)?, levels)?
        }
    };
    Ok(domain_artifact(cfg, element, report))
}

fn domain_artifact(cfg: &RunConfig, element: &str, r: DomainSeparation) -> Domain {
    let rows = (0..r.beta_a.len())
        .map(|i| DomainRow {
            level: i + 1,
            beta_a: r.beta_a[i],
            beta_a_squared: r.beta_a_squared[i],
            running_beta_a: r.running_beta_a[i],
            running_beta_a_squared: r.running_beta_a_squared[i],
        })
        .collect();
    Domain {
        instance: cfg.instance.name(),
        level: cfg.level,
        element: element.into(),
        levels: rows,
        summary: DomainSummary {
            max_running_beta_a: r.running_beta_a.iter().copied().fold(0.0, f64::max),
            final_running_beta_a_squared: r.last_squared(),
            growth_ratio: r.growth_ratio,
        },
    }
}

#[derive(Debug, Serialize)]
pub struct Seminorm {
    instance: &'static str,
    level: usize,
    beta: String,
    element: String,
    value: f64,
    /// The top-level residual vanishes, so `value` is the untruncated seminorm.
    exact: bool,
    levels: Vec<SeminormRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeminormRow {
    level: usize,
    beta: f64,
    residual: f64,
    term: f64,
    running: f64,
}

impl Artifact for Seminorm {
    type Row = SeminormRow;

    fn rows(&self) -> Vec<SeminormRow> {
        self.levels.clone()
    }
}

pub fn seminorm(cfg: &RunConfig, element: &str) -> Result<Seminorm, CliError> {
    let beta = cfg.beta()?;
    let rows = match cfg.instance {
        InstanceKind::Interval => {
            let space = QuantizedInterval::new(cfg.level)?;
            seminorm_rows(&space, &beta, &interval_element(element, cfg.level)?)?
        }
        InstanceKind::Cantor => {
            let model = CantorModel::new(cfg.level)?;
            seminorm_rows(model.algebra(), &beta, &cantor_element(&model, element)?)?
        }
        InstanceKind::Uhf => {
            let model = UhfModel::new(cfg.level)?;
            seminorm_rows(model.algebra(), &beta, &uhf_element(&model, element)?)?
        }
    };
    let (value, exact, levels) = rows;
    Ok(Seminorm {
        instance: cfg.instance.name(),
        level: cfg.level,
        beta: cfg.beta.to_string(),
        element: element.into(),
        value,
        exact,
        levels,
    })
}

fn seminorm_rows<A: Filtration>(
    alg: &A,
    beta: &BetaSequence,
    a: &A::Element,
) -> Result<(f64, bool, Vec<SeminormRow>), CliError> {
    let report = lip_seminorm(alg, beta, a)?;
    let running = report.running();
    let rows = report
        .terms
        .iter()
        .enumerate()
        .map(|(i, &term)| {
            let n = i + 1;
            Ok(SeminormRow {
                level: n,
                beta: beta.at(n)?,
                residual: alg.residual(n, a)?,
                term,
                running: running[i],
            })
        })
        .collect::<qm_core::Result<_>>()?;
    Ok((report.value, report.exact, rows))
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    suite: String,
    seed: u64,
    beta: String,
    passed: bool,
    checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn total(&self) -> usize {
        self.checks.len()
    }
}

impl Artifact for VerifyReport {
    type Row = Check;

    fn rows(&self) -> Vec<Check> {
        self.checks.clone()
    }
}

pub fn verify(cfg: &RunConfig, suite: Suite) -> Result<VerifyReport, CliError> {
    let beta = resolve_beta(&cfg.beta, VERIFY_BETA_LEVELS)?;
    let checks = verify::run(
        suite,
        &VerifyConfig {
            seed: cfg.seed,
            beta,
        },
    )?;
    Ok(VerifyReport {
        suite: suite.name().into(),
        seed: cfg.seed,
        beta: cfg.beta.to_string(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_needs_monotone_beta() {
        assert_eq!(companion(false, 3, |_, _| Ok(1.0)).unwrap(), None);
        let m = companion(true, 2, |i, j| Ok((i + 2 * j) as f64))
            .unwrap()
            .unwrap();
        assert_eq!(m, vec![vec![0.0, 2.0], vec![1.0, 0.0]]);
    }

    #[test]
    fn levels_outside_bounds_are_rejected() {
        let cfg = |instance, level| RunConfig {
            instance,
            level,
            beta: BetaSpec::Harmonic,
            seed: 0,
        };
        assert!(cfg(InstanceKind::Interval, 1).validate().is_err());
        assert!(cfg(InstanceKind::Interval, 24).validate().is_ok());
        assert!(cfg(InstanceKind::Cantor, 8).validate().is_ok());
        assert!(cfg(InstanceKind::Uhf, 0).validate().is_err());
        assert!(cfg(InstanceKind::Uhf, 6).validate().is_ok());
    }
}
