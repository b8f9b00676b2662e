use std::collections::BTreeSet;

use rand::seq::IteratorRandom;
use serde::Serialize;

use super::aux_audit::{validate_aux, AuxReport};
use super::horns::{check_horn_counting, check_observation_horn, horn_census};
use super::Verdict;
use crate::error::Result;
use crate::graph::{Colour, Instance};
use crate::rng::seeded;
use crate::solvers::{exact_max, find_aux_matching, horn_augment, SolverBudget};

pub const AUDIT_NODE_LIMIT: u64 = 20_000_000;
const MAX_TRIPLES: usize = 32;
const MAX_T: usize = 6;

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct LemmaAudit {
    /// The matching under audit was proved maximum.
    pub certified_maximum: bool,
    pub matching_size: usize,
    pub horn_certificates: usize,
    pub vacuous: usize,
    pub passed: usize,
    pub aux: Vec<AuxReport>,
    /// Every breach, in the order found.
    pub violations: Vec<String>,
}

impl LemmaAudit {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "certified={} |M|={} horns={} vacuous={} pass={} aux_checks={} violations={}",
            self.certified_maximum,
            self.matching_size,
            self.horn_certificates,
            self.vacuous,
            self.passed,
            self.aux.len(),
            self.violations.len()
        )
    }

    fn record(&mut self, what: &str, v: Verdict) {
        match v {
            Verdict::Vacuous => self.vacuous += 1,
            Verdict::Pass { .. } => self.passed += 1,
            Verdict::Violation { detail } => self.violations.push(format!("{what}: {detail}")),
        }
    }
}

/// Runs the horn and auxiliary-matching checks against the best rainbow
/// matching the exact search finds. `seed` picks colour triples when there
/// are too many to try them all.
pub fn lemma_audit(instance: &Instance, seed: u64) -> Result<LemmaAudit> {
    let solved = exact_max(instance, SolverBudget::nodes(AUDIT_NODE_LIMIT))?;
    let m = solved.best.canonical();
    let plain = m.to_matching()?;
    let unused: BTreeSet<Colour> = m.unused_colours(instance).into_iter().collect();
    let mut audit = LemmaAudit {
        certified_maximum: solved.optimal,
        matching_size: m.len(),
        ..LemmaAudit::default()
    };

    let census = horn_census(instance, &plain, &unused);
    audit.horn_certificates = census.certificates.len();
    let most = unused.iter().map(|&c| census.horn_edges(c)).max().unwrap_or(0);
    for k in 1..=most {
        let v = check_horn_counting(instance, &plain, &unused, k);
        audit.record(&format!("horn counting k={k}"), v);
    }

    let triples: Vec<[Colour; 3]> = {
        let cs: Vec<Colour> = unused.iter().copied().collect();
        let all = (0..cs.len()).flat_map(|i| {
            let cs = &cs;
            (i + 1..cs.len()).flat_map(move |j| (j + 1..cs.len()).map(move |k| [cs[i], cs[j], cs[k]]))
        });
        let mut picked = all.choose_multiple(&mut seeded(seed), MAX_TRIPLES);
        picked.sort_unstable();
        picked
    };
    for &e in plain.pairs() {
        for t in &triples {
            let colours: BTreeSet<Colour> = t.iter().copied().collect();
            let v = check_observation_horn(instance, &plain, e, &colours)?;
            audit.record(&format!("three-colour horn at {e} {t:?}"), v);
        }
    }

    if audit.certified_maximum {
        if let Some(bigger) = horn_augment(instance, &m)? {
            audit.violations.push(format!(
                "maximum matching of size {} has a horn augmentation to {}",
                m.len(),
                bigger.len()
            ));
        }
    }
    for t in 1..=MAX_T {
        let aux = find_aux_matching(instance, &m, t)?;
        let report = validate_aux(instance, &m, &aux, audit.certified_maximum);
        for v in &report.violations {
            audit.violations.push(format!("aux t={t}: {v}"));
        }
        audit.aux.push(report);
    }
    Ok(audit)
}
