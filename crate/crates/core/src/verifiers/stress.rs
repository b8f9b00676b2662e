use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{gen_random, gen_triangle_extremal, RandomSpec};
use crate::io::{parse_instance, write_instance};
use crate::rng::{derive_seed, RNG_ALGORITHM};
use crate::solvers::{exact_max, Reason, SolveResult, SolverBudget};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StressConfig {
    pub n: usize,
    pub v: usize,
    pub trials: usize,
    pub max_multiplicity: usize,
    pub seed: u64,
    /// Trial 0 is the triangle construction instead of a random instance.
    pub include_extremal: bool,
    pub node_limit: u64,
}

impl StressConfig {
    pub fn new(n: usize, v: usize, trials: usize, max_multiplicity: usize, seed: u64) -> Self {
        StressConfig {
            n,
            v,
            trials,
            max_multiplicity,
            seed,
            include_extremal: false,
            node_limit: SolverBudget::default().node_limit,
        }
    }

    /// The generator spec of random trial `index`.
    pub fn trial_spec(&self, index: usize) -> RandomSpec {
        RandomSpec::new(self.n, self.v, self.max_multiplicity, derive_seed(self.seed, index as u64))
    }
}

/// The rainbow matching certificate of a trial as found by the exact search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub size: usize,
    pub optimal: bool,
    pub nodes: u64,
    pub reason: Reason,
    pub pairs: Vec<crate::graph::EdgePair>,
    pub colours: Vec<crate::graph::Colour>,
}

impl From<&SolveResult> for Certificate {
    fn from(r: &SolveResult) -> Self {
        Certificate {
            size: r.size(),
            optimal: r.optimal,
            nodes: r.nodes_explored,
            reason: r.reason,
            pairs: r.best.pairs.clone(),
            colours: r.best.colours.clone(),
        }
    }
}

/// A trial that did not reach size `n`, with everything needed to replay it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StressCase {
    pub trial: usize,
    /// `None` for the planted triangle construction.
    pub spec: Option<RandomSpec>,
    /// Canonical instance text.
    pub instance: String,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StressReport {
    pub rng: String,
    pub config: StressConfig,
    pub trials: usize,
    pub successes: usize,
    /// Trials proved to have no rainbow matching of size `n`.
    pub failures: usize,
    /// Trials whose search ran out of budget below size `n`.
    pub unresolved: usize,
    /// Failed and unresolved trials, by trial index.
    pub cases: Vec<StressCase>,
}

impl StressReport {
    pub fn summary(&self) -> String {
        format!(
            "trials={} successes={} failures={} unresolved={}",
            self.trials, self.successes, self.failures, self.unresolved
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Writes one replay file per case into `dir`; returns their paths.
    pub fn write_replays(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        let io_err = |e: std::io::Error| Error::InvalidParameter(format!("{}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(io_err)?;
        let mut paths = Vec::new();
        for case in &self.cases {
            let path = dir.join(format!("trial-{:06}.json", case.trial));
            let mut text = serde_json::to_string_pretty(case).expect("case serializes");
            text.push('\n');
            fs::write(&path, text).map_err(io_err)?;
            paths.push(path);
        }
        Ok(paths)
    }
}

/// Parses a replay file and regenerates its instance, which must match the
/// stored text byte for byte.
pub fn replay_case(text: &str) -> Result<(StressCase, bool)> {
    let case: StressCase = serde_json::from_str(text).map_err(|e| Error::Parse {
        position: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let regenerated = match &case.spec {
        Some(spec) => gen_random(spec)?,
        None => {
            let stored = parse_instance(&case.instance)?;
            gen_triangle_extremal(stored.n())?
        }
    };
    let same = write_instance(&regenerated) == case.instance;
    Ok((case, same))
}

enum Outcome {
    Success,
    Failure(StressCase),
    Unresolved(StressCase),
}

fn run_trial(config: &StressConfig, index: usize) -> Result<Outcome> {
    let (spec, instance) = if config.include_extremal && index == 0 {
        (None, gen_triangle_extremal(config.n)?)
    } else {
        let spec = config.trial_spec(index);
        let instance = gen_random(&spec)?;
        (Some(spec), instance)
    };
    let budget = SolverBudget::nodes(config.node_limit).with_target(config.n);
    let result = exact_max(&instance, budget)?;
    if result.size() >= config.n {
        return Ok(Outcome::Success);
    }
    let case = StressCase {
        trial: index,
        spec,
        instance: write_instance(&instance),
        certificate: Certificate::from(&result),
    };
    Ok(if result.optimal {
        Outcome::Failure(case)
    } else {
        Outcome::Unresolved(case)
    })
}

/// Runs `trials` seeded instances through the exact search with target `n`.
/// Trial `i` uses stream `i` of the master seed, so the report does not
/// depend on `jobs`.
pub fn stress_conjecture(config: &StressConfig, jobs: usize) -> Result<StressReport> {
    if config.trials > 0 && !(config.include_extremal && config.trials == 1) {
        config.trial_spec(0).check()?;
    }
    if config.node_limit == 0 {
        return Err(Error::InvalidParameter("node limit must be positive".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let outcomes: Vec<Result<Outcome>> = pool.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|i| run_trial(config, i))
            .collect()
    });
    let mut report = StressReport {
        rng: RNG_ALGORITHM.to_string(),
        config: config.clone(),
        trials: config.trials,
        successes: 0,
        failures: 0,
        unresolved: 0,
        cases: Vec::new(),
    };
    for outcome in outcomes {
        match outcome? {
            Outcome::Success => report.successes += 1,
            Outcome::Failure(case) => {
                report.failures += 1;
                report.cases.push(case);
            }
            Outcome::Unresolved(case) => {
                report.unresolved += 1;
                report.cases.push(case);
            }
        }
    }
    Ok(report)
}
