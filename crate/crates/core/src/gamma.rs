//! The subquotient index set Γ(𝓜) over an admissible multipartition γ.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::OnceLock;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::loading::{DominanceOrder, ExactCoord};
use crate::mp::{addable_nodes, check_adjacency_free, removable_nodes, Multipartition, Node, ParamContext, Residue};

/// γ together with the residue set `S`, the multiset `𝓜` and the resulting Γ.
///
/// Every element of Γ is γ plus a choice of addable nodes of γ; elements are
/// stored as sorted index lists into the coordinate-ordered addable list.
#[derive(Debug)]
pub struct GammaContext {
    ctx: ParamContext,
    gamma: Multipartition,
    residues: BTreeSet<Residue>,
    multiset: BTreeMap<Residue, usize>,
    addable: Vec<Node>,
    addable_coords: Vec<ExactCoord>,
    addable_res: Vec<Residue>,
    elements: Vec<Multipartition>,
    added: Vec<Vec<usize>>,
    index: HashMap<Multipartition, usize>,
    plus: usize,
    minus: usize,
    geometry: OnceLock<Geometry>,
}

impl Clone for GammaContext {
    fn clone(&self) -> Self {
        GammaContext {
            ctx: self.ctx.clone(),
            gamma: self.gamma.clone(),
            residues: self.residues.clone(),
            multiset: self.multiset.clone(),
            addable: self.addable.clone(),
            addable_coords: self.addable_coords.clone(),
            addable_res: self.addable_res.clone(),
            elements: self.elements.clone(),
            added: self.added.clone(),
            index: self.index.clone(),
            plus: self.plus,
            minus: self.minus,
            geometry: OnceLock::new(),
        }
    }
}

pub fn build_gamma_set(gamma: &Multipartition, residues: &BTreeSet<Residue>, multiset: &BTreeMap<Residue, usize>, ctx: &ParamContext) -> Result<GammaContext> {
    ctx.check_level(gamma)?;
    let residues: BTreeSet<Residue> = residues.iter().map(|r| ctx.reduce(r.0)).collect();
    check_adjacency_free(&residues, ctx.e())?;
    let mut ms = BTreeMap::new();
    for (r, &m) in multiset {
        let r = ctx.reduce(r.0);
        if !residues.contains(&r) {
            return Err(Error::validation("multiset", format!("residue {r} is not in the residue set")));
        }
        if m > 0 {
            *ms.entry(r).or_insert(0) += m;
        }
    }
    if let Some(n) = removable_nodes(gamma, ctx, Some(&residues))?.first() {
        return Err(Error::NotAdmissible(n.to_string()));
    }

    let addable = addable_nodes(gamma, ctx, Some(&residues))?;
    let addable_coords: Vec<ExactCoord> = addable.iter().map(|n| ctx.coord(n)).collect();
    let addable_res: Vec<Residue> = addable.iter().map(|n| ctx.res(n)).collect();

    let mut per_residue: Vec<Vec<Vec<usize>>> = Vec::new();
    for (&r, &m) in &ms {
        let avail: Vec<usize> = (0..addable.len()).filter(|&j| addable_res[j] == r).collect();
        if m > avail.len() {
            return Err(Error::MultisetTooLarge { residue: r.0, requested: m, available: avail.len() });
        }
        per_residue.push(avail.into_iter().combinations(m).collect());
    }
    let choices: Vec<Vec<usize>> = if per_residue.is_empty() {
        vec![Vec::new()]
    } else {
        per_residue
            .into_iter()
            .multi_cartesian_product()
            .map(|parts| {
                let mut v: Vec<usize> = parts.into_iter().flatten().collect();
                v.sort_unstable();
                v
            })
            .collect()
    };

    let mut raw: Vec<(Multipartition, Vec<usize>)> = Vec::with_capacity(choices.len());
    for idx in choices {
        let nodes: Vec<Node> = idx.iter().map(|&j| addable[j]).collect();
        raw.push((gamma.with_nodes_added(&nodes)?, idx));
    }

    let dom = |a: &[usize], b: &[usize]| dominates_indices(a, b, &addable_res);
    let order = linear_extension(&raw, &dom);
    let (elements, added): (Vec<_>, Vec<_>) = order.into_iter().map(|i| raw[i].clone()).unzip();
    let index = elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();

    let plus_idx: Vec<usize> =
        ms.iter().flat_map(|(r, &m)| (0..addable.len()).filter(|&j| addable_res[j] == *r).take(m).collect::<Vec<_>>()).sorted().collect();
    let minus_idx: Vec<usize> = ms
        .iter()
        .flat_map(|(r, &m)| {
            let v: Vec<usize> = (0..addable.len()).filter(|&j| addable_res[j] == *r).collect();
            v[v.len() - m..].to_vec()
        })
        .sorted()
        .collect();
    let plus = added.iter().position(|a| *a == plus_idx).expect("leftmost choice lies in gamma set");
    let minus = added.iter().position(|a| *a == minus_idx).expect("rightmost choice lies in gamma set");

    Ok(GammaContext {
        ctx: ctx.clone(),
        gamma: gamma.clone(),
        residues,
        multiset: ms,
        addable,
        addable_coords,
        addable_res,
        elements,
        added,
        index,
        plus,
        minus,
        geometry: OnceLock::new(),
    })
}

/// `a ⊵ b` for two index choices drawn from the same coordinate-sorted addable list.
fn dominates_indices(a: &[usize], b: &[usize], res: &[Residue]) -> bool {
    let mut by_res: BTreeMap<Residue, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for &j in a {
        by_res.entry(res[j]).or_default().0.push(j);
    }
    for &j in b {
        by_res.entry(res[j]).or_default().1.push(j);
    }
    by_res.values().all(|(x, y)| x.len() >= y.len() && x.iter().zip(y).all(|(p, q)| p <= q))
}

/// Kahn's algorithm over the dominance order: among the currently maximal
/// elements the lexicographically largest multipartition goes first.
fn linear_extension(raw: &[(Multipartition, Vec<usize>)], dom: &dyn Fn(&[usize], &[usize]) -> bool) -> Vec<usize> {
    let n = raw.len();
    let mut above: Vec<usize> = vec![0; n];
    let mut below: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && dom(&raw[i].1, &raw[j].1) {
                above[j] += 1;
                below[i].push(j);
            }
        }
    }
    let mut ready: BTreeSet<(&Multipartition, usize)> = (0..n).filter(|&i| above[i] == 0).map(|i| (&raw[i].0, i)).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(&(key, i)) = ready.iter().next_back() {
        ready.remove(&(key, i));
        out.push(i);
        for &j in &below[i] {
            above[j] -= 1;
            if above[j] == 0 {
                ready.insert((&raw[j].0, j));
            }
        }
    }
    out
}

impl GammaContext {
    pub fn ctx(&self) -> &ParamContext {
        &self.ctx
    }

    pub fn gamma(&self) -> &Multipartition {
        &self.gamma
    }

    pub fn residues(&self) -> &BTreeSet<Residue> {
        &self.residues
    }

    pub fn multiset(&self) -> &BTreeMap<Residue, usize> {
        &self.multiset
    }

    /// Total number of added nodes `m = |𝓜|`.
    pub fn m(&self) -> usize {
        self.multiset.values().sum()
    }

    /// The single residue when `S = {i}`.
    pub fn single_residue(&self) -> Option<Residue> {
        (self.residues.len() == 1).then(|| *self.residues.iter().next().unwrap())
    }

    /// Addable `S`-nodes of γ in coordinate order (`A₁, …, A_a`).
    pub fn addable(&self) -> &[Node] {
        &self.addable
    }

    pub fn addable_coords(&self) -> &[ExactCoord] {
        &self.addable_coords
    }

    pub fn addable_residues(&self) -> &[Residue] {
        &self.addable_res
    }

    /// Γ, sorted by a linear extension of dominance (most dominant first).
    pub fn elements(&self) -> &[Multipartition] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn plus(&self) -> &Multipartition {
        &self.elements[self.plus]
    }

    pub fn minus(&self) -> &Multipartition {
        &self.elements[self.minus]
    }

    pub fn contains(&self, lambda: &Multipartition) -> bool {
        self.index.contains_key(lambda)
    }

    pub fn index_of(&self, lambda: &Multipartition) -> Result<usize> {
        self.index.get(lambda).copied().ok_or_else(|| Error::NotInGamma(lambda.to_string()))
    }

    /// Sorted indices into the addable list of the nodes `λ∖γ`.
    pub fn added_indices(&self, idx: usize) -> &[usize] {
        &self.added[idx]
    }

    /// `elements[a] ⊵ elements[b]`.
    pub fn dominates_idx(&self, a: usize, b: usize) -> bool {
        dominates_indices(&self.added[a], &self.added[b], &self.addable_res)
    }

    pub fn compare_idx(&self, a: usize, b: usize) -> DominanceOrder {
        if a == b {
            return DominanceOrder::Equal;
        }
        match (self.dominates_idx(a, b), self.dominates_idx(b, a)) {
            (true, true) => DominanceOrder::Equal,
            (true, false) => DominanceOrder::Greater,
            (false, true) => DominanceOrder::Less,
            (false, false) => DominanceOrder::Incomparable,
        }
    }

    /// Covering relations of dominance on Γ, as `(upper, lower)` index pairs.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let strictly = |a: usize, b: usize| a != b && self.dominates_idx(a, b);
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if strictly(a, b) && !(0..n).any(|c| strictly(a, c) && strictly(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The multipartition obtained from γ by adding the given addable indices.
    pub fn element_from_indices(&self, idx: &[usize]) -> Result<Multipartition> {
        let mut v = idx.to_vec();
        v.sort_unstable();
        self.added.iter().position(|a| *a == v).map(|i| self.elements[i].clone()).ok_or_else(|| Error::NotInGamma(format!("addable choice {idx:?}")))
    }

    pub(crate) fn geometry(&self) -> &Geometry {
        self.geometry.get_or_init(|| Geometry::new(self))
    }
}

/// Precomputed strand data for tableaux that fix γ pointwise.
///
/// A moving strand runs from addable node `s` to addable node `t`; its
/// interactions with the vertical γ strands, their ghosts and the red lines
/// depend only on `(s, t)`.
#[derive(Debug)]
pub(crate) struct Geometry {
    pub ok: Vec<Vec<bool>>,
    pub stat: Vec<Vec<i64>>,
    pub rank_node: Vec<usize>,
    pub rank_ghost: Vec<usize>,
    pub res: Vec<Residue>,
    pub ctx: ParamContext,
}

impl Geometry {
    fn new(gc: &GammaContext) -> Self {
        let ctx = &gc.ctx;
        let a = gc.addable.len();
        let c = &gc.addable_coords;
        let g = ctx.g();
        let statics: Vec<(ExactCoord, ExactCoord, Residue)> = gc
            .gamma
            .nodes()
            .iter()
            .map(|n| {
                let x = ctx.coord(n);
                let gx = ctx.ghost_of(&x);
                (x, gx, ctx.res(n))
            })
            .collect();

        let mut ok = vec![vec![false; a]; a];
        let mut stat = vec![vec![0i64; a]; a];
        for s in 0..a {
            let node = gc.addable[s];
            for t in 0..a {
                if gc.addable_res[s] != gc.addable_res[t] || c[t] < c[s] {
                    continue;
                }
                let target = &c[t];
                let mut good = true;
                if node.row == 1 && node.col == 1 {
                    good &= *target > ctx.red_line(node.comp);
                }
                if node.row > 1 {
                    let up = ctx.coord(&Node::new(node.row - 1, node.col, node.comp));
                    good &= target.base > &up.base + g || (target.base == &up.base + g && target.eps > up.eps);
                }
                if node.col > 1 {
                    let left = ctx.coord(&Node::new(node.row, node.col - 1, node.comp));
                    good &= target.base > &left.base - g || (target.base == &left.base - g && target.eps > left.eps);
                }
                ok[s][t] = good;
            }
        }
        for s in 0..a {
            for t in 0..a {
                if gc.addable_res[s] != gc.addable_res[t] || s == t {
                    continue;
                }
                let r = gc.addable_res[s];
                let (lo, hi) = if c[s] < c[t] { (&c[s], &c[t]) } else { (&c[t], &c[s]) };
                let glo = ctx.ghost_of(lo);
                let ghi = ctx.ghost_of(hi);
                let between = |x: &ExactCoord| lo < x && x < hi;
                let between_ghost = |x: &ExactCoord| &glo < x && x < &ghi;
                let mut d = 0i64;
                for (x, gx, rb) in &statics {
                    if *rb == r && between(x) {
                        d -= 2;
                    }
                    if *rb == ctx.shift(r, -1) && between(gx) {
                        d += 1;
                    }
                    if r == ctx.shift(*rb, -1) && between_ghost(x) {
                        d += 1;
                    }
                }
                for k in 1..=ctx.level() {
                    if ctx.kappa()[k - 1] == r && between(&ctx.red_line(k)) {
                        d += 1;
                    }
                }
                stat[s][t] = d;
            }
        }

        let mut all: Vec<(ExactCoord, usize, bool)> = Vec::with_capacity(2 * a);
        for (j, x) in c.iter().enumerate() {
            all.push((x.clone(), j, false));
            all.push((ctx.ghost_of(x), j, true));
        }
        all.sort();
        let mut rank_node = vec![0; a];
        let mut rank_ghost = vec![0; a];
        for (rank, (_, j, ghost)) in all.into_iter().enumerate() {
            if ghost {
                rank_ghost[j] = rank;
            } else {
                rank_node[j] = rank;
            }
        }
        Geometry { ok, stat, rank_node, rank_ghost, res: gc.addable_res.clone(), ctx: ctx.clone() }
    }

    /// Degree contribution between two moving strands `sa→ta` and `sb→tb`.
    pub fn pair_term(&self, sa: usize, ta: usize, sb: usize, tb: usize) -> i64 {
        let (rn, rg) = (&self.rank_node, &self.rank_ghost);
        let (ra, rb) = (self.res[sa], self.res[sb]);
        let mut d = 0;
        if ra == rb && (rn[sa] < rn[sb]) != (rn[ta] < rn[tb]) {
            d -= 2;
        }
        if rb == self.ctx.shift(ra, -1) && (rn[sa] < rg[sb]) != (rn[ta] < rg[tb]) {
            d += 1;
        }
        if ra == self.ctx.shift(rb, -1) && (rn[sb] < rg[sa]) != (rn[tb] < rg[ta]) {
            d += 1;
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loading::parse_rational;
    use crate::mp::QuantumChar;

    fn two_residue() -> GammaContext {
        let ctx = ParamContext::new(
            QuantumChar::Finite(4),
            vec![0, 3],
            vec![parse_rational("0").unwrap(), parse_rational("7").unwrap()],
            parse_rational("0.99").unwrap(),
        )
        .unwrap();
        let g: Multipartition = "3,2,1^3|4,2^2,1".parse().unwrap();
        let s: BTreeSet<Residue> = [Residue(1), Residue(3)].into();
        let m: BTreeMap<Residue, usize> = [(Residue(1), 1), (Residue(3), 3)].into();
        build_gamma_set(&g, &s, &m, &ctx).unwrap()
    }

    #[test]
    fn two_residue_gamma_set() {
        let gc = two_residue();
        assert_eq!(gc.len(), 20);
        assert_eq!(gc.plus().to_string(), "4,3,2,1^2|5,2^2,1");
        assert_eq!(gc.minus().to_string(), "3,2,1^4|5,2^3,1");
        assert_eq!(gc.elements()[0], *gc.plus());
        assert_eq!(gc.elements()[gc.len() - 1], *gc.minus());
    }

    #[test]
    fn empty_multiset_is_gamma_alone() {
        let ctx = ParamContext::with_integers(QuantumChar::Finite(3), vec![0], vec![0], 1).unwrap();
        let g: Multipartition = "2".parse().unwrap();
        let gc = build_gamma_set(&g, &[Residue(0)].into(), &BTreeMap::new(), &ctx).unwrap();
        assert_eq!(gc.elements(), std::slice::from_ref(&g));
        assert_eq!(gc.plus(), &g);
        assert_eq!(gc.minus(), &g);
    }

    #[test]
    fn construction_errors() {
        let ctx = ParamContext::with_integers(QuantumChar::Finite(3), vec![0], vec![0], 1).unwrap();
        let one: Multipartition = "1".parse().unwrap();
        let s: BTreeSet<Residue> = [Residue(0)].into();
        let m: BTreeMap<Residue, usize> = [(Residue(0), 1)].into();
        assert!(matches!(build_gamma_set(&one, &s, &m, &ctx), Err(Error::NotAdmissible(_))));
        let empty = Multipartition::empty(1);
        let many: BTreeMap<Residue, usize> = [(Residue(0), 2)].into();
        assert!(matches!(build_gamma_set(&empty, &s, &many, &ctx), Err(Error::MultisetTooLarge { .. })));
        let other: BTreeMap<Residue, usize> = [(Residue(1), 1)].into();
        assert!(matches!(build_gamma_set(&empty, &s, &other, &ctx), Err(Error::Validation { .. })));
    }
}
