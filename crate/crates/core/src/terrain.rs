//! Terrains, decorations, latticed paths and the nested sign sequence formula.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::GammaContext;
use crate::laurent::LaurentPoly;
use crate::loading::ExactCoord;
use crate::mp::{addable_nodes, removable_nodes, Multipartition, Node, ParamContext, Residue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepKind {
    /// A removable node.
    Up,
    /// An addable node.
    Down,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TerrainStep {
    pub kind: StepKind,
    pub node: Node,
    #[serde(serialize_with = "ser_coord")]
    pub coord: ExactCoord,
}

fn ser_coord<S: serde::Serializer>(c: &ExactCoord, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Terrain {
    pub residue: Residue,
    pub steps: Vec<TerrainStep>,
}

impl Terrain {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `+1` for up-steps and `−1` for down-steps.
    pub fn generic(&self) -> Vec<i8> {
        self.steps.iter().map(|s| if s.kind == StepKind::Up { 1 } else { -1 }).collect()
    }

    pub fn position_of(&self, node: &Node) -> Option<usize> {
        self.steps.iter().position(|s| s.node == *node)
    }
}

pub fn terrain_of(mu: &Multipartition, i: Residue, ctx: &ParamContext) -> Result<Terrain> {
    let i = ctx.reduce(i.0);
    let only: BTreeSet<Residue> = [i].into();
    let mut steps: Vec<TerrainStep> = removable_nodes(mu, ctx, Some(&only))?
        .into_iter()
        .map(|n| TerrainStep { kind: StepKind::Up, node: n, coord: ctx.coord(&n) })
        .chain(addable_nodes(mu, ctx, Some(&only))?.into_iter().map(|n| TerrainStep { kind: StepKind::Down, node: n, coord: ctx.coord(&n) }))
        .collect();
    steps.sort_by(|a, b| a.coord.cmp(&b.coord));
    Ok(Terrain { residue: i, steps })
}

/// A terrain with `(` on the edges of `λ∖μ` and `)` on the edges of `μ∖λ`.
/// Edge indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecoratedTerrain {
    pub terrain: Terrain,
    pub opens: Vec<usize>,
    pub closes: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
}

impl DecoratedTerrain {
    /// One character per edge: `(`, `)` or `.`.
    pub fn parenthesis_string(&self) -> String {
        (0..self.terrain.len())
            .map(|j| {
                if self.opens.contains(&j) {
                    '('
                } else if self.closes.contains(&j) {
                    ')'
                } else {
                    '.'
                }
            })
            .collect()
    }
}

/// `p ⊂ q` for parenthesis pairs.
pub fn pair_inside(p: (usize, usize), q: (usize, usize)) -> bool {
    q.0 < p.0 && p.1 < q.1
}

pub fn decorate(mu: &Multipartition, lambda: &Multipartition, i: Residue, ctx: &ParamContext) -> Result<DecoratedTerrain> {
    let terrain = terrain_of(mu, i, ctx)?;
    let locate = |node: &Node, kind: StepKind| -> Result<usize> {
        match terrain.position_of(node) {
            Some(j) if terrain.steps[j].kind == kind => Ok(j),
            _ => Err(Error::UnbalancedDecoration(format!("{node} is not a {kind:?} step of the terrain of {mu}"))),
        }
    };
    let mut opens = lambda.difference(mu).iter().map(|n| locate(n, StepKind::Down)).collect::<Result<Vec<_>>>()?;
    let mut closes = mu.difference(lambda).iter().map(|n| locate(n, StepKind::Up)).collect::<Result<Vec<_>>>()?;
    opens.sort_unstable();
    closes.sort_unstable();

    let mut stack = Vec::new();
    let mut pairs = Vec::new();
    for j in 0..terrain.len() {
        if opens.binary_search(&j).is_ok() {
            stack.push(j);
        } else if closes.binary_search(&j).is_ok() {
            let o = stack.pop().ok_or_else(|| Error::UnbalancedDecoration(format!("edge {} closes with no open parenthesis", j + 1)))?;
            pairs.push((o, j));
        }
    }
    if let Some(o) = stack.pop() {
        return Err(Error::UnbalancedDecoration(format!("edge {} is never closed", o + 1)));
    }
    pairs.sort_unstable();
    Ok(DecoratedTerrain { terrain, opens, closes, pairs })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticedPath {
    pub pair: (usize, usize),
    pub steps: Vec<i8>,
    pub norm: usize,
}

impl LatticedPath {
    /// Heights at the `len + 1` vertices, starting from 0.
    pub fn prefix_sums(&self) -> Vec<i64> {
        let mut h = vec![0i64];
        for &s in &self.steps {
            h.push(h.last().unwrap() + s as i64);
        }
        h
    }
}

/// The generic path and everything reachable from it by flattening an up-step,
/// a run of zeros and a down-step lying strictly inside the pair.
pub fn latticed_paths(dt: &DecoratedTerrain, pair: (usize, usize)) -> Result<Vec<LatticedPath>> {
    if !dt.pairs.contains(&pair) {
        return Err(Error::validation("pair", format!("({},{}) is not a parenthesis pair", pair.0 + 1, pair.1 + 1)));
    }
    let (p, q) = pair;
    let start = dt.terrain.generic();
    let mut seen: BTreeSet<Vec<i8>> = [start.clone()].into();
    let mut queue: VecDeque<Vec<i8>> = [start].into();
    while let Some(cur) = queue.pop_front() {
        for j in p + 1..q {
            if cur[j] != 1 {
                continue;
            }
            let mut k = j + 1;
            while k < q && cur[k] == 0 {
                k += 1;
            }
            if k < q && cur[k] == -1 {
                let mut next = cur.clone();
                next[j..=k].iter_mut().for_each(|x| *x = 0);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    let mut out: Vec<LatticedPath> = seen
        .into_iter()
        .map(|steps| {
            let norm = steps[p + 1..q].iter().filter(|&&s| s != 0).count() + 1;
            LatticedPath { pair, steps, norm }
        })
        .collect();
    out.sort_by(|a, b| b.norm.cmp(&a.norm).then_with(|| b.steps.cmp(&a.steps)));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WellNestedFamily {
    /// One path per pair, in the order of `DecoratedTerrain::pairs`.
    pub paths: Vec<LatticedPath>,
    pub norm: usize,
}

fn nested_ok(inner: &LatticedPath, outer: &LatticedPath) -> bool {
    inner.prefix_sums().iter().zip(outer.prefix_sums()).all(|(a, b)| *a >= b)
}

/// Number of choice functions before the nesting condition is imposed.
pub fn raw_family_count(dt: &DecoratedTerrain) -> Result<usize> {
    dt.pairs.iter().try_fold(1usize, |acc, &p| Ok(acc * latticed_paths(dt, p)?.len()))
}

/// All families satisfying `ρ_P ≥ ρ_Q` whenever `P ⊂ Q`, chosen innermost first.
pub fn well_nested_families(dt: &DecoratedTerrain) -> Result<Vec<WellNestedFamily>> {
    let n = dt.pairs.len();
    let candidates = dt.pairs.iter().map(|&p| latticed_paths(dt, p)).collect::<Result<Vec<_>>>()?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&k| (dt.pairs[k].1 - dt.pairs[k].0, k));

    let mut chosen: Vec<Option<usize>> = vec![None; n];
    let mut out = Vec::new();

    fn go(
        depth: usize,
        order: &[usize],
        dt: &DecoratedTerrain,
        candidates: &[Vec<LatticedPath>],
        chosen: &mut Vec<Option<usize>>,
        out: &mut Vec<WellNestedFamily>,
    ) {
        if depth == order.len() {
            let paths: Vec<LatticedPath> = chosen.iter().enumerate().map(|(k, c)| candidates[k][c.unwrap()].clone()).collect();
            let norm = paths.iter().map(|p| p.norm).sum();
            out.push(WellNestedFamily { paths, norm });
            return;
        }
        let k = order[depth];
        for (ci, cand) in candidates[k].iter().enumerate() {
            let fits = (0..chosen.len()).all(|o| match chosen[o] {
                None => true,
                Some(oc) => {
                    let other = &candidates[o][oc];
                    if pair_inside(dt.pairs[o], dt.pairs[k]) {
                        nested_ok(other, cand)
                    } else if pair_inside(dt.pairs[k], dt.pairs[o]) {
                        nested_ok(cand, other)
                    } else {
                        true
                    }
                }
            });
            if fits {
                chosen[k] = Some(ci);
                go(depth + 1, order, dt, candidates, chosen, out);
                chosen[k] = None;
            }
        }
    }

    go(0, &order, dt, &candidates, &mut chosen, &mut out);
    Ok(out)
}

/// `Σ_ω t^{‖ω‖}` over the well-nested families.
pub fn family_polynomial(dt: &DecoratedTerrain) -> Result<LaurentPoly> {
    Ok(LaurentPoly::from_terms(well_nested_families(dt)?.iter().map(|f| (f.norm as i32, 1))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NestedValue {
    pub value: LaurentPoly,
    /// Whether the value is known to hold over every field, not just ℂ.
    pub field_independent: bool,
}

/// `d_{λμ}(t)` from the terrain of `μ` decorated by `λ`.
pub fn nested_decomposition_number(lambda: &Multipartition, mu: &Multipartition, gc: &GammaContext) -> Result<NestedValue> {
    let i = gc.single_residue().ok_or_else(|| Error::validation("residues", "the nested formula needs a single residue"))?;
    let (li, mi) = (gc.index_of(lambda)?, gc.index_of(mu)?);
    let field_independent = gc.ctx().kappa().iter().filter(|&&k| k == i).count() <= 1;
    let value = if li == mi {
        LaurentPoly::one()
    } else if !gc.dominates_idx(li, mi) {
        LaurentPoly::zero()
    } else {
        family_polynomial(&decorate(mu, lambda, i, gc.ctx())?)?
    };
    Ok(NestedValue { value, field_independent })
}
