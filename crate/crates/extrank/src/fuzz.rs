//! Seeded random search for principle violations, with witness shrinking.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::argset::ArgSet;
use crate::framework::Framework;
use crate::principles::{
    check, check_split, check_syntax_independence, Mode, Outcome, PrincipleId, PrincipleReport, SplitDirection,
};
use crate::spec::RankingSpec;
use crate::Result;

/// Parameters of a fuzzing run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FuzzConfig {
    /// Number of random frameworks to try.
    pub trials: usize,
    /// Smallest framework size.
    pub min_args: usize,
    /// Largest framework size.
    pub max_args: usize,
    /// Probability of each ordered pair (self-attacks included) being an attack.
    pub density: f64,
    /// Seed of the run; equal seeds give equal reports.
    pub seed: u64,
    /// Whether to shrink the first witness found.
    pub shrink: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            trials: 500,
            min_args: 1,
            max_args: 6,
            density: 0.25,
            seed: 0,
            shrink: true,
        }
    }
}

/// One generated test case.
#[derive(Debug, Clone)]
struct Instance {
    framework: Framework,
    /// Left side of a composition or decomposition split.
    part: Option<ArgSet>,
    /// Relabelling for syntax independence.
    perm: Option<Vec<usize>>,
}

/// Name of the `i`-th argument in a framework of `n` arguments.
pub fn arg_name(i: usize, n: usize) -> String {
    if n <= 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("a{i}")
    }
}

/// An Erdős–Rényi framework over ordered pairs, self-attacks included.
pub fn random_framework(rng: &mut impl Rng, n: usize, density: f64) -> Framework {
    let names: Vec<String> = (0..n).map(|i| arg_name(i, n)).collect();
    let mut attacks = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if rng.gen_bool(density) {
                attacks.push((names[x].clone(), names[y].clone()));
            }
        }
    }
    Framework::new(names, attacks).expect("generated names are distinct")
}

/// A framework made of two unconnected random parts, with the first part's
/// arguments.
pub fn random_split(rng: &mut impl Rng, n: usize, density: f64) -> (Framework, ArgSet) {
    let n = n.max(2);
    let left = rng.gen_range(1..n);
    let names: Vec<String> = (0..n).map(|i| arg_name(i, n)).collect();
    let side = |i: usize| i < left;
    let mut attacks = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if side(x) == side(y) && rng.gen_bool(density) {
                attacks.push((names[x].clone(), names[y].clone()));
            }
        }
    }
    let f = Framework::new(names, attacks).expect("generated names are distinct");
    let part = ArgSet::from_indices(n, 0..left);
    (f, part)
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn generate(principle: PrincipleId, config: &FuzzConfig, trial: usize) -> Instance {
    let mut rng = trial_rng(config.seed, trial);
    let n = rng.gen_range(config.min_args..=config.max_args.max(config.min_args));
    match principle {
        PrincipleId::Composition | PrincipleId::Decomposition => {
            let (framework, part) = random_split(&mut rng, n, config.density);
            Instance {
                framework,
                part: Some(part),
                perm: None,
            }
        }
        PrincipleId::SyntaxIndependence => {
            use rand::seq::SliceRandom;
            let framework = random_framework(&mut rng, n, config.density);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            Instance {
                framework,
                part: None,
                perm: Some(perm),
            }
        }
        _ => Instance {
            framework: random_framework(&mut rng, n, config.density),
            part: None,
            perm: None,
        },
    }
}

fn run(spec: &RankingSpec, principle: PrincipleId, inst: &Instance, seed: u64) -> Result<PrincipleReport> {
    match (principle, &inst.part, &inst.perm) {
        (PrincipleId::Composition, Some(part), _) => {
            check_split(&inst.framework, part, spec, SplitDirection::Composition, seed)
        }
        (PrincipleId::Decomposition, Some(part), _) => {
            check_split(&inst.framework, part, spec, SplitDirection::Decomposition, seed)
        }
        (PrincipleId::SyntaxIndependence, _, Some(perm)) => {
            check_syntax_independence(&inst.framework, spec, perm, seed)
        }
        _ => check(&inst.framework, spec, principle, seed),
    }
}

fn without_argument(inst: &Instance, i: usize) -> Option<Instance> {
    let f = &inst.framework;
    let keep = f.full_set().without(i);
    let (framework, old) = f.restrict(&keep);
    let part = match &inst.part {
        Some(p) => {
            let q = ArgSet::from_indices(old.len(), (0..old.len()).filter(|&k| p.contains(old[k])));
            if q.is_empty() || q.len() == old.len() {
                return None;
            }
            Some(q)
        }
        None => None,
    };
    let perm = inst.perm.as_ref().map(|perm| {
        let mut kept: Vec<usize> = old.iter().map(|&k| perm[k]).collect();
        let mut sorted = kept.clone();
        sorted.sort();
        for v in &mut kept {
            *v = sorted.binary_search(v).expect("value is present");
        }
        kept
    });
    Some(Instance { framework, part, perm })
}

fn shrink(
    spec: &RankingSpec,
    principle: PrincipleId,
    mut inst: Instance,
    mut report: PrincipleReport,
    seed: u64,
) -> Result<PrincipleReport> {
    loop {
        let mut improved = false;
        for i in 0..inst.framework.len() {
            if let Some(smaller) = without_argument(&inst, i) {
                let r = run(spec, principle, &smaller, seed)?;
                if r.outcome.is_violated() {
                    inst = smaller;
                    report = r;
                    improved = true;
                    break;
                }
            }
        }
        if improved {
            continue;
        }
        for &(x, y) in inst.framework.attacks() {
            let smaller = Instance {
                framework: inst.framework.without_attack(x, y),
                ..inst.clone()
            };
            let r = run(spec, principle, &smaller, seed)?;
            if r.outcome.is_violated() {
                inst = smaller;
                report = r;
                improved = true;
                break;
            }
        }
        if !improved {
            return Ok(report);
        }
    }
}

/// Searches random frameworks for a violation of `principle` under `spec`.
///
/// Stops at the first violating trial and, if enabled, shrinks it by
/// removing arguments and attacks while the violation persists. The report's
/// sample size is the number of trials run.
pub fn fuzz(spec: &RankingSpec, principle: PrincipleId, config: &FuzzConfig) -> Result<PrincipleReport> {
    for trial in 0..config.trials {
        let inst = generate(principle, config, trial);
        let report = run(spec, principle, &inst, config.seed)?;
        if report.outcome.is_violated() {
            let report = if config.shrink {
                shrink(spec, principle, inst, report, config.seed)?
            } else {
                report
            };
            return Ok(PrincipleReport {
                sample_size: trial + 1,
                mode: Mode::Sampled,
                ..report
            });
        }
    }
    Ok(PrincipleReport {
        principle,
        spec: spec.clone(),
        sample_size: config.trials,
        mode: Mode::Sampled,
        outcome: Outcome::NoViolationFound,
        structurally_unsatisfiable: false,
    })
}
