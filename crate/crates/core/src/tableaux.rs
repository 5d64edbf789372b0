//! Semistandard tableaux, their degrees and graded standard characters.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::GammaContext;
use crate::laurent::LaurentPoly;
use crate::loading::{theta_dominance, DominanceOrder, ExactCoord};
use crate::mp::{residue_multiset, Multipartition, Node, ParamContext, Residue};

#[derive(Debug, Clone, Copy)]
pub enum Mode<'a> {
    General,
    GammaRestricted(&'a GammaContext),
}

/// A residue-preserving bijection from the nodes of `shape` to the nodes of `weight`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tableau {
    shape: Multipartition,
    weight: Multipartition,
    #[serde(serialize_with = "ser_assignment")]
    assignment: BTreeMap<Node, Node>,
    degree: i64,
}

fn ser_assignment<S: serde::Serializer>(a: &BTreeMap<Node, Node>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(a.iter().map(|(from, to)| [from.to_string(), to.to_string()]))
}

impl Tableau {
    /// Builds a tableau and computes its degree from the strand diagram.
    pub fn new(shape: Multipartition, weight: Multipartition, assignment: BTreeMap<Node, Node>, ctx: &ParamContext) -> Result<Self> {
        let mut t = Tableau { shape, weight, assignment, degree: 0 };
        t.validate(ctx)?;
        t.degree = tableau_degree(&t, ctx);
        Ok(t)
    }

    pub fn identity(lambda: &Multipartition) -> Self {
        let assignment = lambda.nodes().into_iter().map(|n| (n, n)).collect();
        Tableau { shape: lambda.clone(), weight: lambda.clone(), assignment, degree: 0 }
    }

    pub fn shape(&self) -> &Multipartition {
        &self.shape
    }

    pub fn weight(&self) -> &Multipartition {
        &self.weight
    }

    pub fn assignment(&self) -> &BTreeMap<Node, Node> {
        &self.assignment
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn image(&self, node: &Node) -> Option<&Node> {
        self.assignment.get(node)
    }

    fn validate(&self, ctx: &ParamContext) -> Result<()> {
        let nodes = self.shape.nodes();
        if nodes.len() != self.assignment.len() || nodes.iter().any(|n| !self.assignment.contains_key(n)) {
            return Err(Error::validation("tableau", "assignment does not cover the shape"));
        }
        let mut targets: Vec<&Node> = self.assignment.values().collect();
        targets.sort();
        targets.dedup();
        if targets.len() != nodes.len() || targets.iter().any(|t| !self.weight.contains(t)) || self.weight.size() != nodes.len() {
            return Err(Error::validation("tableau", "assignment is not a bijection onto the weight"));
        }
        if !self.is_semistandard(ctx) {
            return Err(Error::validation("tableau", "assignment is not semistandard"));
        }
        Ok(())
    }

    /// Checks residue preservation and the three coordinate inequalities.
    pub fn is_semistandard(&self, ctx: &ParamContext) -> bool {
        let g = ctx.g();
        let at = |n: &Node| ctx.coord(&self.assignment[n]);
        self.assignment.iter().all(|(src, dst)| {
            if ctx.res(src) != ctx.res(dst) {
                return false;
            }
            let x = ctx.coord(dst);
            if src.row == 1 && src.col == 1 && x <= ctx.red_line(src.comp) {
                return false;
            }
            if src.row > 1 {
                let up = at(&Node::new(src.row - 1, src.col, src.comp));
                if x <= ExactCoord::new(&up.base + g, up.eps) {
                    return false;
                }
            }
            if src.col > 1 {
                let left = at(&Node::new(src.row, src.col - 1, src.comp));
                if x <= ExactCoord::new(&left.base - g, left.eps) {
                    return false;
                }
            }
            true
        })
    }

    /// The strands of the diagram: bottom at the λ-node, top at its image.
    pub fn strands(&self, ctx: &ParamContext) -> Vec<Strand> {
        self.assignment.iter().map(|(s, t)| Strand { bottom: ctx.coord(s), top: ctx.coord(t), residue: ctx.res(s) }).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strand {
    pub bottom: ExactCoord,
    pub top: ExactCoord,
    pub residue: Residue,
}

fn crosses(a0: &ExactCoord, a1: &ExactCoord, b0: &ExactCoord, b1: &ExactCoord) -> bool {
    (a0 < b0) != (a1 < b1)
}

fn strictly_between(x: &ExactCoord, a: &ExactCoord, b: &ExactCoord) -> bool {
    (a < x && x < b) || (b < x && x < a)
}

/// Degree of a diagram of straight black strands with ghosts at offset `−g`
/// and vertical red lines at each `θ_k`.
pub fn diagram_degree(strands: &[Strand], ctx: &ParamContext) -> i64 {
    let ghosts: Vec<(ExactCoord, ExactCoord)> = strands.iter().map(|s| (ctx.ghost_of(&s.bottom), ctx.ghost_of(&s.top))).collect();
    let mut deg = 0;
    for (a, sa) in strands.iter().enumerate() {
        for (b, sb) in strands.iter().enumerate() {
            if a == b {
                continue;
            }
            if a < b && sa.residue == sb.residue && crosses(&sa.bottom, &sa.top, &sb.bottom, &sb.top) {
                deg -= 2;
            }
            if sb.residue == ctx.shift(sa.residue, -1) && crosses(&sa.bottom, &sa.top, &ghosts[b].0, &ghosts[b].1) {
                deg += 1;
            }
        }
        for k in 1..=ctx.level() {
            if ctx.kappa()[k - 1] == sa.residue && strictly_between(&ctx.red_line(k), &sa.bottom, &sa.top) {
                deg += 1;
            }
        }
    }
    deg
}

pub fn tableau_degree(t: &Tableau, ctx: &ParamContext) -> i64 {
    diagram_degree(&t.strands(ctx), ctx)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedCharacter {
    pub shape: Multipartition,
    pub weight: Multipartition,
    pub value: LaurentPoly,
}

fn same_content(lambda: &Multipartition, mu: &Multipartition, ctx: &ParamContext) -> Result<bool> {
    ctx.check_level(lambda)?;
    ctx.check_level(mu)?;
    Ok(lambda.size() == mu.size() && residue_multiset(lambda, ctx)? == residue_multiset(mu, ctx)?)
}

/// All semistandard `λ`-tableaux of weight `μ`.
pub fn enumerate_sstd(lambda: &Multipartition, mu: &Multipartition, ctx: &ParamContext, mode: Mode<'_>) -> Result<Vec<Tableau>> {
    if let Mode::GammaRestricted(gc) = mode {
        if gc.ctx() != ctx {
            return Err(Error::ContextMismatch("gamma context was built for different parameters".into()));
        }
    }
    if !same_content(lambda, mu, ctx)? {
        if let Mode::GammaRestricted(gc) = mode {
            gc.index_of(lambda)?;
            gc.index_of(mu)?;
        }
        return Ok(Vec::new());
    }
    let out = match mode {
        Mode::General => general(lambda, mu, ctx),
        Mode::GammaRestricted(gc) => {
            let (li, mi) = (gc.index_of(lambda)?, gc.index_of(mu)?);
            restricted_words(gc, li, mi).into_iter().map(|(word, degree)| tableau_from_word(gc, li, mi, &word, degree)).collect()
        }
    };
    check_dominance(lambda, mu, ctx, mode, !out.is_empty())?;
    Ok(out)
}

fn check_dominance(lambda: &Multipartition, mu: &Multipartition, ctx: &ParamContext, mode: Mode<'_>, nonempty: bool) -> Result<()> {
    if !nonempty || lambda == mu {
        return Ok(());
    }
    let ok = match mode {
        Mode::GammaRestricted(gc) => gc.dominates_idx(gc.index_of(lambda)?, gc.index_of(mu)?),
        Mode::General => theta_dominance(lambda, mu, ctx)? == DominanceOrder::Greater,
    };
    if !ok {
        return Err(Error::DominanceAssertion(format!("SStd({lambda}, {mu}) is nonempty but {mu} is not dominated by {lambda}")));
    }
    Ok(())
}

pub fn delta_character(lambda: &Multipartition, mu: &Multipartition, ctx: &ParamContext, mode: Mode<'_>) -> Result<GradedCharacter> {
    let value = match mode {
        Mode::GammaRestricted(gc) if same_content(lambda, mu, ctx)? => {
            if gc.ctx() != ctx {
                return Err(Error::ContextMismatch("gamma context was built for different parameters".into()));
            }
            let (li, mi) = (gc.index_of(lambda)?, gc.index_of(mu)?);
            let words = restricted_words(gc, li, mi);
            check_dominance(lambda, mu, ctx, mode, !words.is_empty())?;
            LaurentPoly::from_terms(words.iter().map(|(_, d)| (*d as i32, 1)))
        }
        _ => LaurentPoly::from_terms(enumerate_sstd(lambda, mu, ctx, mode)?.iter().map(|t| (t.degree as i32, 1))),
    };
    Ok(GradedCharacter { shape: lambda.clone(), weight: mu.clone(), value })
}

/// Backtracking over the nodes of λ in row-major order, so that the nodes
/// above and to the left of each node are already placed.
fn general(lambda: &Multipartition, mu: &Multipartition, ctx: &ParamContext) -> Vec<Tableau> {
    let src = lambda.nodes();
    let targets: Vec<(Node, ExactCoord, Residue)> = mu.nodes().into_iter().map(|n| (n, ctx.coord(&n), ctx.res(&n))).collect();
    let mut used = vec![false; targets.len()];
    let mut chosen: BTreeMap<Node, usize> = BTreeMap::new();
    let mut out = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        src: &[Node],
        targets: &[(Node, ExactCoord, Residue)],
        used: &mut [bool],
        chosen: &mut BTreeMap<Node, usize>,
        ctx: &ParamContext,
        lambda: &Multipartition,
        mu: &Multipartition,
        out: &mut Vec<Tableau>,
    ) {
        if i == src.len() {
            let assignment: BTreeMap<Node, Node> = chosen.iter().map(|(s, &t)| (*s, targets[t].0)).collect();
            let mut t = Tableau { shape: lambda.clone(), weight: mu.clone(), assignment, degree: 0 };
            t.degree = tableau_degree(&t, ctx);
            out.push(t);
            return;
        }
        let node = src[i];
        let r = ctx.res(&node);
        let g = ctx.g();
        let up = (node.row > 1).then(|| {
            let x = &targets[chosen[&Node::new(node.row - 1, node.col, node.comp)]].1;
            ExactCoord::new(&x.base + g, x.eps)
        });
        let left = (node.col > 1).then(|| {
            let x = &targets[chosen[&Node::new(node.row, node.col - 1, node.comp)]].1;
            ExactCoord::new(&x.base - g, x.eps)
        });
        let red = (node.row == 1 && node.col == 1).then(|| ctx.red_line(node.comp));
        for j in 0..targets.len() {
            let (_, x, tr) = &targets[j];
            if used[j] || *tr != r {
                continue;
            }
            if up.as_ref().is_some_and(|u| x <= u) || left.as_ref().is_some_and(|l| x <= l) || red.as_ref().is_some_and(|l| x <= l) {
                continue;
            }
            used[j] = true;
            chosen.insert(node, j);
            go(i + 1, src, targets, used, chosen, ctx, lambda, mu, out);
            chosen.remove(&node);
            used[j] = false;
        }
    }

    go(0, &src, &targets, &mut used, &mut chosen, ctx, lambda, mu, &mut out);
    out
}

/// Tableaux that fix γ pointwise, as component words: entry `k` is the
/// addable index receiving the `k`-th added node of λ. Degrees come from the
/// precomputed strand geometry.
pub(crate) fn restricted_words(gc: &GammaContext, li: usize, mi: usize) -> Vec<(Vec<usize>, i64)> {
    let geo = gc.geometry();
    let src = gc.added_indices(li);
    let dst = gc.added_indices(mi);
    if src.len() != dst.len() {
        return Vec::new();
    }
    let mut used = vec![false; dst.len()];
    let mut word = Vec::with_capacity(src.len());
    let mut out = Vec::new();

    fn go(i: usize, src: &[usize], dst: &[usize], used: &mut [bool], word: &mut Vec<usize>, geo: &crate::gamma::Geometry, out: &mut Vec<(Vec<usize>, i64)>) {
        if i == src.len() {
            let mut deg: i64 = src.iter().zip(word.iter()).map(|(&s, &t)| geo.stat[s][t]).sum();
            for a in 0..src.len() {
                for b in a + 1..src.len() {
                    deg += geo.pair_term(src[a], word[a], src[b], word[b]);
                }
            }
            out.push((word.clone(), deg));
            return;
        }
        let s = src[i];
        for (j, &t) in dst.iter().enumerate() {
            if used[j] || !geo.ok[s][t] {
                continue;
            }
            used[j] = true;
            word.push(t);
            go(i + 1, src, dst, used, word, geo, out);
            word.pop();
            used[j] = false;
        }
    }

    go(0, src, dst, &mut used, &mut word, geo, &mut out);
    out
}

pub(crate) fn tableau_from_word(gc: &GammaContext, li: usize, mi: usize, word: &[usize], degree: i64) -> Tableau {
    let mut assignment: BTreeMap<Node, Node> = gc.gamma().nodes().into_iter().map(|n| (n, n)).collect();
    for (&s, &t) in gc.added_indices(li).iter().zip(word) {
        assignment.insert(gc.addable()[s], gc.addable()[t]);
    }
    Tableau { shape: gc.elements()[li].clone(), weight: gc.elements()[mi].clone(), assignment, degree }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::QuantumChar;

    fn level1(e: u32) -> ParamContext {
        ParamContext::with_integers(QuantumChar::Finite(e), vec![0], vec![0], 1).unwrap()
    }

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    #[test]
    fn identity_is_unique_on_the_diagonal() {
        let ctx = level1(4);
        let l = mp("3,1");
        let ts = enumerate_sstd(&l, &l, &ctx, Mode::General).unwrap();
        assert_eq!(ts, vec![Tableau::identity(&l)]);
        assert_eq!(delta_character(&l, &l, &ctx, Mode::General).unwrap().value, LaurentPoly::one());
    }

    #[test]
    fn small_unique_tableau() {
        let ts = enumerate_sstd(&mp("3,1"), &mp("2,1^2"), &level1(4), Mode::General).unwrap();
        assert_eq!(ts.len(), 1);
        assert!(ts[0].is_semistandard(&level1(4)));
    }

    #[test]
    fn mismatched_content_is_empty() {
        let ctx = level1(4);
        assert!(enumerate_sstd(&mp("2"), &mp("1"), &ctx, Mode::General).unwrap().is_empty());
        assert!(delta_character(&mp("2"), &mp("1,1"), &ctx, Mode::General).unwrap().value.is_zero());
    }

    #[test]
    fn tableau_constructor_rejects_non_bijections() {
        let ctx = level1(4);
        let l = mp("2");
        let mut a: BTreeMap<Node, Node> = BTreeMap::new();
        a.insert(Node::new(1, 1, 1), Node::new(1, 1, 1));
        assert!(Tableau::new(l.clone(), l.clone(), a, &ctx).is_err());
    }
}
