//! Seeded random comparison of the nested formula against character peeling.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::gamma::{build_gamma_set, GammaContext};
use crate::kn::kn_matrix_for_gamma;
use crate::mp::{addable_nodes, removable_nodes, Multipartition, ParamContext, Partition, QuantumChar, Residue};
use crate::terrain::nested_decomposition_number;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ThetaKind {
    WellSeparated,
    Flotw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrosscheckConfig {
    pub samples: usize,
    pub seed: u64,
    pub max_level: usize,
    pub max_addable: usize,
    pub max_m: usize,
}

impl Default for CrosscheckConfig {
    fn default() -> Self {
        CrosscheckConfig { samples: 200, seed: 0x5eed, max_level: 3, max_addable: 6, max_m: 4 }
    }
}

#[derive(Debug, Clone)]
pub struct RandomCase {
    pub gamma_context: GammaContext,
    pub theta_kind: ThetaKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub context: String,
    pub lambda: String,
    pub mu: String,
    pub nested: String,
    pub kn: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub contexts: usize,
    pub entries: usize,
    pub well_separated: usize,
    pub flotw: usize,
    pub disagreements: Vec<Disagreement>,
}

impl CrosscheckReport {
    pub fn ok(&self) -> bool {
        self.disagreements.is_empty()
    }
}

fn random_partition(rng: &mut ChaCha8Rng) -> Partition {
    let rows = rng.gen_range(0..=4);
    let mut parts: Vec<usize> = (0..rows).map(|_| rng.gen_range(1..=5)).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(parts).expect("positive parts")
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Draws a single-residue Γ; γ is made admissible by stripping removable
/// nodes of the chosen residue.
pub fn random_case(rng: &mut ChaCha8Rng, config: &CrosscheckConfig) -> RandomCase {
    loop {
        let e = match rng.gen_range(0..4) {
            0 => QuantumChar::Finite(3),
            1 => QuantumChar::Finite(4),
            2 => QuantumChar::Finite(5),
            _ => QuantumChar::Infinite,
        };
        let level = rng.gen_range(1..=config.max_level);
        let kappa: Vec<i64> = (0..level).map(|_| rng.gen_range(0..5)).collect();
        let comps: Vec<Partition> = (0..level).map(|_| random_partition(rng)).collect();
        let gamma = Multipartition::new(comps).expect("level matches");
        let theta_kind = if rng.gen_bool(0.5) { ThetaKind::WellSeparated } else { ThetaKind::Flotw };
        let g = if rng.gen_bool(0.5) { rational(1, 1) } else { rational(99, 100) };
        let n = gamma.size() as i64 + config.max_m as i64 + 2;
        let mut slots: Vec<i64> = (0..level as i64).collect();
        slots.shuffle(rng);
        let theta: Vec<BigRational> = slots
            .iter()
            .map(|&k| match theta_kind {
                ThetaKind::WellSeparated => rational(k * n * 7 + k, 7),
                ThetaKind::Flotw => rational(k, level as i64 + 1) * &g,
            })
            .collect();
        let Ok(ctx) = ParamContext::new(e, kappa, theta, g) else { continue };

        let mut residues: Vec<Residue> = addable_nodes(&gamma, &ctx, None)
            .expect("level matches")
            .iter()
            .map(|n| ctx.residue_of(n).expect("level matches"))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        residues.shuffle(rng);
        let Some(&i) = residues.first() else { continue };
        let only: BTreeSet<Residue> = [i].into();
        let mut g0 = gamma;
        loop {
            let rem = removable_nodes(&g0, &ctx, Some(&only)).expect("level matches");
            if rem.is_empty() {
                break;
            }
            for n in &rem {
                g0 = g0.with_removed(n).expect("removable");
            }
        }
        let a = addable_nodes(&g0, &ctx, Some(&only)).expect("level matches").len();
        if a == 0 || a > config.max_addable {
            continue;
        }
        let m = rng.gen_range(1..=a.min(config.max_m));
        let ms: BTreeMap<Residue, usize> = [(i, m)].into();
        if let Ok(gc) = build_gamma_set(&g0, &only, &ms, &ctx) {
            return RandomCase { gamma_context: gc, theta_kind };
        }
    }
}

/// Compares the two engines on every pair of every sampled Γ.
pub fn crosscheck(config: &CrosscheckConfig) -> Result<CrosscheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let cases: Vec<RandomCase> = (0..config.samples).map(|_| random_case(&mut rng, config)).collect();
    let results = cases
        .par_iter()
        .map(|case| -> Result<(usize, Vec<Disagreement>)> {
            let gc = &case.gamma_context;
            let matrix = kn_matrix_for_gamma(gc)?;
            let mut out = Vec::new();
            let mut entries = 0;
            for (a, la) in gc.elements().iter().enumerate() {
                for (b, lb) in gc.elements().iter().enumerate() {
                    entries += 1;
                    let nested = nested_decomposition_number(la, lb, gc)?.value;
                    if nested != matrix.d[a][b] {
                        out.push(Disagreement {
                            context: describe(case),
                            lambda: la.to_string(),
                            mu: lb.to_string(),
                            nested: nested.to_string(),
                            kn: matrix.d[a][b].to_string(),
                        });
                    }
                }
            }
            Ok((entries, out))
        })
        .collect::<Result<Vec<_>>>()?;
    let well_separated = cases.iter().filter(|c| c.theta_kind == ThetaKind::WellSeparated).count();
    Ok(CrosscheckReport {
        contexts: cases.len(),
        entries: results.iter().map(|r| r.0).sum(),
        well_separated,
        flotw: cases.len() - well_separated,
        disagreements: results.into_iter().flat_map(|r| r.1).collect(),
    })
}

pub fn describe(case: &RandomCase) -> String {
    let gc = &case.gamma_context;
    let ctx = gc.ctx();
    let theta: Vec<String> = ctx.theta().iter().map(crate::loading::format_rational).collect();
    let kappa: Vec<i64> = ctx.kappa().iter().map(|k| k.0).collect();
    format!(
        "e={} kappa={kappa:?} theta=[{}] g={} gamma={} multiset={:?} ({:?})",
        ctx.e(),
        theta.join(","),
        crate::loading::format_rational(ctx.g()),
        gc.gamma(),
        gc.multiset().iter().map(|(r, m)| (r.0, *m)).collect::<Vec<_>>(),
        case.theta_kind
    )
}
