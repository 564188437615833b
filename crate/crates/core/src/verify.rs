//! Named check suites. Each check records its tolerance and the largest
//! observed deviation; a check passes when `deviation <= tolerance`.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{
    domain_separation_report, lip_seminorm, residual_decay, BetaSequence, Filtration,
};
use crate::error::{Error, Result};
use crate::instances::{CantorModel, IntervalModel, QuantizedInterval, SampledFunction, UhfModel};
use crate::mk::{mk_distance, pure_state_at, push_agreement, random_state, StateSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Ortho,
    Expansion,
    Products,
    Expectations,
    Seminorm,
    Mk,
    Sandwich,
    Domain,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Ortho,
        Suite::Expansion,
        Suite::Products,
        Suite::Expectations,
        Suite::Seminorm,
        Suite::Mk,
        Suite::Sandwich,
        Suite::Domain,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Ortho => "ortho",
            Suite::Expansion => "expansion",
            Suite::Products => "products",
            Suite::Expectations => "expectations",
            Suite::Seminorm => "seminorm",
            Suite::Mk => "mk",
            Suite::Sandwich => "sandwich",
            Suite::Domain => "domain",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub tolerance: f64,
    pub deviation: f64,
    pub passed: bool,
}

impl Check {
    fn new(suite: Suite, name: impl Into<String>, tolerance: f64, deviation: f64) -> Self {
        Self {
            suite: suite.name().into(),
            name: name.into(),
            tolerance,
            deviation,
            passed: deviation <= tolerance,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Used by the `mk` and `sandwich` suites; must be non-increasing.
    pub beta: BetaSequence,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            beta: BetaSequence::geometric(0.5).expect("valid ratio"),
        }
    }
}

pub fn run(suite: Suite, config: &VerifyConfig) -> Result<Vec<Check>> {
    match suite {
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH {
                out.extend(run(s, config)?);
            }
            Ok(out)
        }
        Suite::Ortho => ortho(),
        Suite::Expansion => expansion(),
        Suite::Products => products(),
        Suite::Expectations => expectations(config.seed),
        Suite::Seminorm => seminorm(),
        Suite::Mk => mk(&config.beta),
        Suite::Sandwich => sandwich(&config.beta, config.seed),
        Suite::Domain => domain(),
    }
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn ortho() -> Result<Vec<Check>> {
    let m = IntervalModel::new(20)?;
    let mut off = 0.0_f64;
    for i in 0..=18 {
        for j in i + 1..=18 {
            off = off.max(m.orthogonality_check(i, j)?.abs());
        }
    }
    let g = m.gram_matrix(19)?;
    let diag = max_of((1..=18).map(|n| (g[(n, n)] - 2f64.powi(1 - n as i32)).abs()));
    Ok(vec![
        Check::new(
            Suite::Ortho,
            "|tau(phi_i phi_j)|, 0 <= i < j <= 18, N=20",
            1e-12,
            off,
        ),
        Check::new(
            Suite::Ortho,
            "|tau(phi_n^2) - 2^(1-n)|, n <= 18, N=20",
            1e-12,
            diag,
        ),
    ])
}

fn expansion() -> Result<Vec<Check>> {
    let m = IntervalModel::new(16)?;
    let failures = (0..=15)
        .map(|n| m.chi_expansion_check(n))
        .collect::<Result<Vec<_>>>()?;
    let count = failures.iter().filter(|ok| !**ok).count();
    Ok(vec![Check::new(
        Suite::Expansion,
        "exact chi_n expansion, n <= 15 (failing indices)",
        0.0,
        count as f64,
    )])
}

fn products() -> Result<Vec<Check>> {
    let m = IntervalModel::new(16)?;
    let mut count = 0;
    for n in 0..=15 {
        for k in 0..=15 {
            if !m.product_table_check(n, k)? {
                count += 1;
            }
        }
    }
    Ok(vec![Check::new(
        Suite::Products,
        "exact phi_n phi_m table, n, m <= 15 (failing pairs)",
        0.0,
        count as f64,
    )])
}

/// Worst deviations of the conditional-expectation axioms over samples.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct AxiomDeviations {
    pub idempotence: f64,
    pub contractivity: f64,
    pub bimodule: f64,
    pub trace: f64,
    pub nesting: f64,
}

/// Checks `E_n∘E_n = E_n`, `‖E_n a‖ <= ‖a‖`, `E_n(b a b') = b E_n(a) b'`,
/// `τ∘E_n = τ` and `E_m∘E_n = E_m` on `samples` random elements.
pub fn expectation_axioms<A, F, G>(
    alg: &A,
    samples: usize,
    mut sample: F,
    mut level_sample: G,
) -> Result<AxiomDeviations>
where
    A: Filtration,
    F: FnMut(&A) -> Result<A::Element>,
    G: FnMut(&A, usize) -> Result<A::Element>,
{
    let mut d = AxiomDeviations::default();
    let top = alg.top_level();
    let diff = |x: &A::Element, y: &A::Element| alg.norm(&alg.combine(x, 1.0, y, -1.0));
    for s in 0..samples {
        let a = sample(alg)?;
        let norm_a = alg.norm(&a)?;
        let tau_a = alg.trace(&a);
        for n in 1..=top {
            let e = alg.expectation(n, &a)?;
            d.idempotence = d.idempotence.max(diff(&alg.expectation(n, &e)?, &e)?);
            d.contractivity = d.contractivity.max(alg.norm(&e)? - norm_a);
            d.trace = d.trace.max((alg.trace(&e) - tau_a).abs());
            let m = 1 + s % n;
            d.nesting = d
                .nesting
                .max(diff(&alg.expectation(m, &e)?, &alg.expectation(m, &a)?)?);
            let b = level_sample(alg, n)?;
            let b2 = level_sample(alg, n)?;
            let lhs = alg.expectation(n, &alg.product(&alg.product(&b, &a), &b2))?;
            let rhs = alg.product(&alg.product(&b, &e), &b2);
            d.bimodule = d.bimodule.max(diff(&lhs, &rhs)?);
        }
    }
    Ok(d)
}

fn axiom_checks(label: &str, d: AxiomDeviations) -> Vec<Check> {
    let s = Suite::Expectations;
    vec![
        Check::new(
            s,
            format!("{label}: E_n(E_n a) = E_n a"),
            1e-10,
            d.idempotence,
        ),
        Check::new(
            s,
            format!("{label}: ||E_n a|| <= ||a||"),
            1e-10,
            d.contractivity,
        ),
        Check::new(
            s,
            format!("{label}: E_n(b a b') = b E_n(a) b'"),
            1e-10,
            d.bimodule,
        ),
        Check::new(s, format!("{label}: tau(E_n a) = tau(a)"), 1e-10, d.trace),
        Check::new(
            s,
            format!("{label}: E_m E_n = E_m, m <= n"),
            1e-10,
            d.nesting,
        ),
    ]
}

fn expectations(seed: u64) -> Result<Vec<Check>> {
    const SAMPLES: usize = 100;
    let mut out = Vec::new();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let interval = IntervalModel::new(10)?;
    let top = interval.algebra().top_level();
    let d = expectation_axioms(
        interval.algebra(),
        SAMPLES,
        |alg| alg.random_element(top, &mut rng),
        |alg, n| alg.random_element(n, &mut ChaCha8Rng::seed_from_u64(seed ^ n as u64)),
    )?;
    out.extend(axiom_checks("interval N=10", d));

    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let cantor = CantorModel::new(5)?;
    let top = cantor.algebra().top_level();
    let d = expectation_axioms(
        cantor.algebra(),
        SAMPLES,
        |alg| alg.random_element(top, &mut rng),
        |alg, n| alg.random_element(n, &mut ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 8)),
    )?;
    out.extend(axiom_checks("cantor D=5", d));

    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    let uhf = UhfModel::new(5)?;
    let top = uhf.algebra().top_level();
    let mut brng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    let d = expectation_axioms(
        uhf.algebra(),
        SAMPLES,
        |alg| alg.random_hermitian(top, &mut rng),
        |alg, n| alg.random_matrix(n, &mut brng),
    )?;
    out.extend(axiom_checks("uhf M_32", d));
    Ok(out)
}

fn seminorm() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let m = IntervalModel::new(17)?;
    for (name, beta) in [
        ("2^-n", BetaSequence::geometric(0.5)?),
        ("1/n", BetaSequence::harmonic()),
    ] {
        let dev = (1..=15)
            .map(|n| {
                Ok((lip_seminorm(m.algebra(), &beta, &m.phi(n)?)?.value - 1.0 / beta.at(n)?).abs())
            })
            .collect::<Result<Vec<f64>>>()?;
        out.push(Check::new(
            Suite::Seminorm,
            format!("L(phi_n) = 1/beta(n), n <= 15, beta = {name}"),
            1e-12,
            max_of(dev),
        ));
    }
    let beta = BetaSequence::geometric(0.5)?;
    let c = CantorModel::new(6)?;
    let dev = (1..=6)
        .map(|k| {
            Ok(
                (lip_seminorm(c.algebra(), &beta, &c.rademacher(k)?)?.value - 1.0 / beta.at(k)?)
                    .abs(),
            )
        })
        .collect::<Result<Vec<f64>>>()?;
    out.push(Check::new(
        Suite::Seminorm,
        "L(r_k) = 1/beta(k), cantor D=6",
        1e-12,
        max_of(dev),
    ));
    let u = UhfModel::new(5)?;
    let dev = (1..=5)
        .map(|k| {
            Ok(
                (lip_seminorm(u.algebra(), &beta, &u.pauli_site(k)?)?.value - 1.0 / beta.at(k)?)
                    .abs(),
            )
        })
        .collect::<Result<Vec<f64>>>()?;
    out.push(Check::new(
        Suite::Seminorm,
        "L(pauli_k) = 1/beta(k), uhf K=5",
        1e-8,
        max_of(dev),
    ));
    Ok(out)
}

fn mk(beta: &BetaSequence) -> Result<Vec<Check>> {
    let m = IntervalModel::new(10)?;
    let alg = m.algebra();
    let points = IntervalModel::points(10);
    let mut dev = 0.0_f64;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let lp =
                mk_distance(alg, beta, &pure_state_at(alg, i)?, &pure_state_at(alg, j)?)?.value;
            dev = dev.max((lp - m.closed_form_mk(beta, points[i], points[j])?).abs());
        }
    }
    let c = CantorModel::new(4)?;
    let calg = c.algebra();
    let mut cdev = 0.0_f64;
    for i in 0..calg.len() {
        for j in i + 1..calg.len() {
            let lp = mk_distance(
                calg,
                beta,
                &pure_state_at(calg, i)?,
                &pure_state_at(calg, j)?,
            )?
            .value;
            cdev = cdev.max((lp - c.prefix_distance(beta, i, j)?).abs());
        }
    }
    Ok(vec![
        Check::new(
            Suite::Mk,
            "|LP - closed form|, interval N=10, all pure pairs",
            1e-8,
            dev,
        ),
        Check::new(
            Suite::Mk,
            "|LP - 2 beta(prefix+1)|, cantor D=4, all pure pairs",
            1e-8,
            cdev,
        ),
    ])
}

fn sandwich(beta: &BetaSequence, seed: u64) -> Result<Vec<Check>> {
    const PAIRS: u64 = 25;
    let m = IntervalModel::new(10)?;
    let alg = m.algebra();
    let mut violation = 0.0_f64;
    for p in 0..PAIRS {
        let mu = random_state(alg, seed.wrapping_mul(1_000_003).wrapping_add(2 * p));
        let nu = random_state(alg, seed.wrapping_mul(1_000_003).wrapping_add(2 * p + 1));
        for n in 1..=8 {
            let (mu, nu) = push_agreement(alg, &mu, &nu, n)?;
            let phi = m.phi(n)?;
            let lp = mk_distance(alg, beta, &mu, &nu)?.value;
            let lower = beta.at(n)? * (alg.evaluate(&mu, &phi)? - alg.evaluate(&nu, &phi)?).abs();
            violation = violation.max(lower - lp).max(lp - 2.0 * beta.at(n)?);
        }
    }
    Ok(vec![Check::new(
        Suite::Sandwich,
        format!("beta(n)|mu(phi_n)-nu(phi_n)| <= mk <= 2beta(n), {PAIRS} pairs, n <= 8"),
        1e-8,
        violation,
    )])
}

fn domain() -> Result<Vec<Check>> {
    let space = QuantizedInterval::new(25)?;
    let p1 = SampledFunction::p1(30);
    let report = domain_separation_report(&space, &p1, 20)?;
    let ones = max_of(report.running_beta_a.iter().map(|v| (v - 1.0).abs()));
    let growth = max_of(
        report
            .running_beta_a_squared
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let expected = 0.75 * 2f64.powi(i as i32 + 1);
                (v - expected).abs() / expected
            }),
    );
    let residuals = residual_decay(&space, &p1, 25)?;
    let monotone = max_of(residuals.windows(2).map(|w| w[1] - w[0]));
    Ok(vec![
        Check::new(
            Suite::Domain,
            "L_{beta_a}(p1) running terms = 1, n <= 20",
            1e-9,
            ones,
        ),
        Check::new(
            Suite::Domain,
            "L_{beta_a^2}(p1) running = (3/4) 2^n, relative, n <= 20",
            1e-6,
            growth,
        ),
        Check::new(
            Suite::Domain,
            "p1 residuals non-increasing, n <= 25",
            0.0,
            monotone,
        ),
        Check::new(
            Suite::Domain,
            "p1 residual at level 25",
            1e-6,
            residuals[24],
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn cheap_suites_pass() {
        let cfg = VerifyConfig::default();
        for s in [
            Suite::Ortho,
            Suite::Expansion,
            Suite::Products,
            Suite::Seminorm,
            Suite::Domain,
        ] {
            for c in run(s, &cfg).unwrap() {
                assert!(c.passed, "{c:?}");
            }
        }
    }
}
