//! Partitions, multipartitions, nodes, residues and the global parameter context.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::loading::ExactCoord;

/// The quantum characteristic `e`: a finite integer at least 3, or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuantumChar {
    Finite(u32),
    Infinite,
}

impl QuantumChar {
    pub fn finite(e: u32) -> Result<Self> {
        if e < 3 {
            return Err(Error::validation("e", format!("e must be at least 3 or infinity, got {e}")));
        }
        Ok(QuantumChar::Finite(e))
    }

    pub fn reduce(self, value: i64) -> Residue {
        match self {
            QuantumChar::Finite(e) => Residue(value.rem_euclid(e as i64)),
            QuantumChar::Infinite => Residue(value),
        }
    }

    pub fn shift(self, r: Residue, by: i64) -> Residue {
        self.reduce(r.0 + by)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, QuantumChar::Finite(_))
    }
}

impl fmt::Display for QuantumChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuantumChar::Finite(e) => write!(f, "{e}"),
            QuantumChar::Infinite => write!(f, "infinity"),
        }
    }
}

impl FromStr for QuantumChar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("infinity") || t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(QuantumChar::Infinite);
        }
        let e: u32 = t.parse().map_err(|_| Error::Parse(format!("bad value for e: {s:?}")))?;
        QuantumChar::finite(e)
    }
}

/// A residue, already reduced modulo `e` by the context that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Residue(pub i64);

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A node `(row, col, comp)`; all three coordinates are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Node {
    pub comp: usize,
    pub row: usize,
    pub col: usize,
}

impl Node {
    pub fn new(row: usize, col: usize, comp: usize) -> Self {
        Node { comp, row, col }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.row, self.col, self.comp)
    }
}

/// A partition stored as its weakly decreasing positive parts.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::validation("partition", "zero part before a positive part"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::validation("partition", format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Length of row `r` (1-based); zero past the last row.
    pub fn row(&self, r: usize) -> usize {
        if r == 0 {
            return 0;
        }
        self.0.get(r - 1).copied().unwrap_or(0)
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        r >= 1 && c >= 1 && c <= self.row(r)
    }

    pub fn is_addable(&self, r: usize, c: usize) -> bool {
        r >= 1 && c >= 1 && !self.contains(r, c) && (c == 1 || self.contains(r, c - 1)) && (r == 1 || self.contains(r - 1, c))
    }

    pub fn is_removable(&self, r: usize, c: usize) -> bool {
        self.contains(r, c) && !self.contains(r + 1, c) && !self.contains(r, c + 1)
    }

    /// Addable cells, top row first.
    pub fn addable_cells(&self) -> Vec<(usize, usize)> {
        (1..=self.num_rows() + 1)
            .filter_map(|r| {
                let c = self.row(r) + 1;
                (r == 1 || self.row(r - 1) >= c).then_some((r, c))
            })
            .collect()
    }

    /// Removable cells, top row first.
    pub fn removable_cells(&self) -> Vec<(usize, usize)> {
        (1..=self.num_rows()).filter(|&r| self.row(r) > self.row(r + 1)).map(|r| (r, self.row(r))).collect()
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &len)| (1..=len).map(move |c| (i + 1, c)))
    }

    pub fn with_added(&self, r: usize, c: usize) -> Option<Self> {
        if !self.is_addable(r, c) {
            return None;
        }
        let mut parts = self.0.clone();
        if r > parts.len() {
            parts.push(1);
        } else {
            parts[r - 1] += 1;
        }
        Some(Partition(parts))
    }

    pub fn with_removed(&self, r: usize, c: usize) -> Option<Self> {
        if !self.is_removable(r, c) {
            return None;
        }
        let mut parts = self.0.clone();
        parts[r - 1] -= 1;
        if parts[r - 1] == 0 {
            parts.pop();
        }
        Some(Partition(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let run = self.0[i..].iter().take_while(|&&q| q == p).count();
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if run > 1 {
                write!(f, "{p}^{run}")?;
            } else {
                write!(f, "{p}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;
    /// Accepts `8,5,3,1^3`; `-`, `∅` or the empty string denote the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() || t == "-" || t == "∅" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in t.split(',') {
            let tok = tok.trim();
            let (base, rep) = match tok.split_once('^') {
                Some((b, r)) => (b.trim(), r.trim()),
                None => (tok, "1"),
            };
            let part: usize = base.parse().map_err(|_| Error::Parse(format!("bad part {tok:?} in {s:?}")))?;
            let rep: usize = rep.parse().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
            parts.extend(std::iter::repeat_n(part, rep));
        }
        Partition::new(parts).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
    }
}

/// An `l`-multipartition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Multipartition(Vec<Partition>);

impl TryFrom<Vec<Vec<usize>>> for Multipartition {
    type Error = Error;
    fn try_from(v: Vec<Vec<usize>>) -> Result<Self> {
        let comps = v.into_iter().map(Partition::new).collect::<Result<Vec<_>>>()?;
        Multipartition::new(comps)
    }
}

impl From<Multipartition> for Vec<Vec<usize>> {
    fn from(m: Multipartition) -> Self {
        m.0.into_iter().map(|p| p.0).collect()
    }
}

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::validation("multipartition", "level must be at least 1"));
        }
        Ok(Multipartition(components))
    }

    pub fn from_parts(parts: Vec<Vec<usize>>) -> Result<Self> {
        Multipartition::try_from(parts)
    }

    pub fn empty(level: usize) -> Self {
        Multipartition(vec![Partition::empty(); level.max(1)])
    }

    pub fn level(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(Partition::size).sum()
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    /// Component `k`, 1-based.
    pub fn component(&self, k: usize) -> &Partition {
        &self.0[k - 1]
    }

    pub fn contains(&self, node: &Node) -> bool {
        node.comp >= 1 && node.comp <= self.level() && self.0[node.comp - 1].contains(node.row, node.col)
    }

    /// All nodes, component by component, row-major inside each component.
    pub fn nodes(&self) -> Vec<Node> {
        self.0.iter().enumerate().flat_map(|(k, p)| p.cells().map(move |(r, c)| Node::new(r, c, k + 1))).collect()
    }

    pub fn is_addable(&self, node: &Node) -> bool {
        node.comp >= 1 && node.comp <= self.level() && self.0[node.comp - 1].is_addable(node.row, node.col)
    }

    pub fn is_removable(&self, node: &Node) -> bool {
        node.comp >= 1 && node.comp <= self.level() && self.0[node.comp - 1].is_removable(node.row, node.col)
    }

    pub fn with_added(&self, node: &Node) -> Result<Self> {
        if node.comp == 0 || node.comp > self.level() {
            return Err(Error::ComponentOutOfRange { component: node.comp, level: self.level() });
        }
        let p = self.0[node.comp - 1].with_added(node.row, node.col).ok_or_else(|| Error::validation("node", format!("{node} is not addable to {self}")))?;
        let mut comps = self.0.clone();
        comps[node.comp - 1] = p;
        Ok(Multipartition(comps))
    }

    pub fn with_removed(&self, node: &Node) -> Result<Self> {
        if node.comp == 0 || node.comp > self.level() {
            return Err(Error::ComponentOutOfRange { component: node.comp, level: self.level() });
        }
        let p =
            self.0[node.comp - 1].with_removed(node.row, node.col).ok_or_else(|| Error::validation("node", format!("{node} is not removable from {self}")))?;
        let mut comps = self.0.clone();
        comps[node.comp - 1] = p;
        Ok(Multipartition(comps))
    }

    /// Adds a set of nodes in any order (each must become addable in turn).
    pub fn with_nodes_added(&self, nodes: &[Node]) -> Result<Self> {
        let mut pending: Vec<Node> = nodes.to_vec();
        let mut cur = self.clone();
        while !pending.is_empty() {
            let pos = pending.iter().position(|n| cur.is_addable(n)).ok_or_else(|| Error::validation("nodes", format!("cannot add {:?} to {cur}", pending)))?;
            cur = cur.with_added(&pending.remove(pos))?;
        }
        Ok(cur)
    }

    /// Nodes of `self` that are not in `other`.
    pub fn difference(&self, other: &Multipartition) -> Vec<Node> {
        self.nodes().into_iter().filter(|n| !other.contains(n)).collect()
    }

    pub fn is_subset_of(&self, other: &Multipartition) -> bool {
        self.level() == other.level()
            && self.0.iter().zip(&other.0).all(|(a, b)| a.num_rows() <= b.num_rows() && (1..=a.num_rows()).all(|r| a.row(r) <= b.row(r)))
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Multipartition {
    type Err = Error;
    /// Components separated by `|`, e.g. `8,5,3,1^3|6,5^2,3,2,1^3`.
    fn from_str(s: &str) -> Result<Self> {
        let comps = s.split('|').map(Partition::from_str).collect::<Result<Vec<_>>>()?;
        Multipartition::new(comps)
    }
}

/// The global parameters `(e, κ, θ, g)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamContext {
    e: QuantumChar,
    kappa: Vec<Residue>,
    theta: Vec<BigRational>,
    g: BigRational,
}

impl ParamContext {
    pub fn new(e: QuantumChar, kappa: Vec<i64>, theta: Vec<BigRational>, g: BigRational) -> Result<Self> {
        if let QuantumChar::Finite(v) = e {
            QuantumChar::finite(v)?;
        }
        if kappa.is_empty() {
            return Err(Error::validation("multicharge", "level must be at least 1"));
        }
        if kappa.len() != theta.len() {
            return Err(Error::validation("theta", format!("expected {} entries to match the multicharge, got {}", kappa.len(), theta.len())));
        }
        if !g.is_positive() {
            return Err(Error::validation("g", "g must be positive"));
        }
        for i in 0..theta.len() {
            for j in i + 1..theta.len() {
                let q = (&theta[i] - &theta[j]) / &g;
                if q.is_integer() {
                    return Err(Error::validation(format!("theta[{j}]"), format!("theta[{i}] - theta[{j}] is an integer multiple of g")));
                }
            }
        }
        let kappa = kappa.into_iter().map(|k| e.reduce(k)).collect();
        Ok(ParamContext { e, kappa, theta, g })
    }

    /// Convenience constructor with integer weighting and `g = 1`-style integer scale.
    pub fn with_integers(e: QuantumChar, kappa: Vec<i64>, theta: Vec<i64>, g: i64) -> Result<Self> {
        let theta = theta.into_iter().map(|t| BigRational::from_integer(t.into())).collect();
        ParamContext::new(e, kappa, theta, BigRational::from_integer(g.into()))
    }

    pub fn e(&self) -> QuantumChar {
        self.e
    }

    pub fn level(&self) -> usize {
        self.kappa.len()
    }

    pub fn kappa(&self) -> &[Residue] {
        &self.kappa
    }

    pub fn theta(&self) -> &[BigRational] {
        &self.theta
    }

    pub fn g(&self) -> &BigRational {
        &self.g
    }

    pub fn reduce(&self, v: i64) -> Residue {
        self.e.reduce(v)
    }

    pub fn shift(&self, r: Residue, by: i64) -> Residue {
        self.e.shift(r, by)
    }

    fn check_comp(&self, node: &Node) -> Result<()> {
        if node.comp == 0 || node.comp > self.level() {
            return Err(Error::ComponentOutOfRange { component: node.comp, level: self.level() });
        }
        Ok(())
    }

    pub fn residue_of(&self, node: &Node) -> Result<Residue> {
        self.check_comp(node)?;
        Ok(self.res(node))
    }

    pub(crate) fn res(&self, node: &Node) -> Residue {
        self.e.reduce(self.kappa[node.comp - 1].0 + node.col as i64 - node.row as i64)
    }

    pub fn coord_of_node(&self, node: &Node) -> Result<ExactCoord> {
        self.check_comp(node)?;
        Ok(self.coord(node))
    }

    pub(crate) fn coord(&self, node: &Node) -> ExactCoord {
        self.lattice_coord(node.comp, node.row as i64, node.col as i64)
    }

    /// Coordinate `θ_k + g(a−b) + (a+b)ε` of the lattice point `(a,b)` of component `k`.
    pub fn lattice_coord(&self, comp: usize, a: i64, b: i64) -> ExactCoord {
        let base = &self.theta[comp - 1] + &self.g * BigRational::from_integer((a - b).into());
        ExactCoord::new(base, a + b)
    }

    pub fn ghost_of(&self, c: &ExactCoord) -> ExactCoord {
        ExactCoord::new(&c.base - &self.g, c.eps)
    }

    pub fn red_line(&self, comp: usize) -> ExactCoord {
        ExactCoord::new(self.theta[comp - 1].clone(), 0)
    }

    pub fn is_well_separated(&self, n: usize) -> bool {
        let bound = &self.g * BigRational::from_integer(n.into());
        self.pairs_all(|d| d > bound)
    }

    pub fn is_flotw(&self) -> bool {
        self.pairs_all(|d| !d.is_zero() && d < self.g)
    }

    fn pairs_all(&self, pred: impl Fn(BigRational) -> bool) -> bool {
        (0..self.level()).all(|i| (i + 1..self.level()).all(|j| pred((&self.theta[i] - &self.theta[j]).abs())))
    }

    pub fn check_level(&self, m: &Multipartition) -> Result<()> {
        if m.level() != self.level() {
            return Err(Error::ContextMismatch(format!("{m} has level {} but the context has level {}", m.level(), self.level())));
        }
        Ok(())
    }
}

pub fn residue_of(node: &Node, ctx: &ParamContext) -> Result<Residue> {
    ctx.residue_of(node)
}

pub fn residue_multiset(lambda: &Multipartition, ctx: &ParamContext) -> Result<BTreeMap<Residue, usize>> {
    ctx.check_level(lambda)?;
    let mut out = BTreeMap::new();
    for n in lambda.nodes() {
        *out.entry(ctx.res(&n)).or_insert(0) += 1;
    }
    Ok(out)
}

fn sort_by_coord(mut nodes: Vec<Node>, ctx: &ParamContext) -> Vec<Node> {
    nodes.sort_by_cached_key(|n| ctx.coord(n));
    nodes
}

/// Addable nodes (optionally restricted to residues in `filter`) in coordinate order.
pub fn addable_nodes(lambda: &Multipartition, ctx: &ParamContext, filter: Option<&BTreeSet<Residue>>) -> Result<Vec<Node>> {
    ctx.check_level(lambda)?;
    let nodes = lambda
        .components()
        .iter()
        .enumerate()
        .flat_map(|(k, p)| p.addable_cells().into_iter().map(move |(r, c)| Node::new(r, c, k + 1)))
        .filter(|n| filter.is_none_or(|f| f.contains(&ctx.res(n))))
        .collect();
    Ok(sort_by_coord(nodes, ctx))
}

/// Removable nodes (optionally restricted to residues in `filter`) in coordinate order.
pub fn removable_nodes(lambda: &Multipartition, ctx: &ParamContext, filter: Option<&BTreeSet<Residue>>) -> Result<Vec<Node>> {
    ctx.check_level(lambda)?;
    let nodes = lambda
        .components()
        .iter()
        .enumerate()
        .flat_map(|(k, p)| p.removable_cells().into_iter().map(move |(r, c)| Node::new(r, c, k + 1)))
        .filter(|n| filter.is_none_or(|f| f.contains(&ctx.res(n))))
        .collect();
    Ok(sort_by_coord(nodes, ctx))
}

/// Fails with `AdjacencyViolation` unless no two residues of `s` differ by one.
pub fn check_adjacency_free(s: &BTreeSet<Residue>, e: QuantumChar) -> Result<()> {
    for &r in s {
        let up = e.shift(r, 1);
        if s.contains(&up) {
            return Err(Error::AdjacencyViolation(r.0, up.0));
        }
    }
    Ok(())
}

pub fn is_admissible(gamma: &Multipartition, s: &BTreeSet<Residue>, ctx: &ParamContext) -> Result<bool> {
    check_adjacency_free(s, ctx.e())?;
    Ok(removable_nodes(gamma, ctx, Some(s))?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(e: u32, kappa: Vec<i64>) -> ParamContext {
        let l = kappa.len() as i64;
        let theta = (0..l).map(|k| BigRational::new((301 * k).into(), 3.into())).collect();
        ParamContext::new(QuantumChar::Finite(e), kappa, theta, BigRational::from_integer(1.into())).unwrap()
    }

    #[test]
    fn residues() {
        let c = ctx(4, vec![0, 3]);
        assert_eq!(c.residue_of(&Node::new(1, 1, 1)).unwrap(), Residue(0));
        assert_eq!(c.residue_of(&Node::new(1, 4, 2)).unwrap(), Residue(2));
        assert_eq!(ctx(5, vec![0]).residue_of(&Node::new(6, 1, 1)).unwrap(), Residue(0));
        assert!(matches!(c.residue_of(&Node::new(1, 1, 3)), Err(Error::ComponentOutOfRange { .. })));
    }

    #[test]
    fn residue_multiset_two_residue() {
        let c = ctx(4, vec![0, 3]);
        let g: Multipartition = "3,2,1^3|4,2^2,1".parse().unwrap();
        let m = residue_multiset(&g, &c).unwrap();
        let expect: BTreeMap<Residue, usize> = [(0, 5), (1, 4), (2, 5), (3, 3)].into_iter().map(|(r, n)| (Residue(r), n)).collect();
        assert_eq!(m, expect);
        assert!(residue_multiset(&Multipartition::empty(2), &c).unwrap().is_empty());
        let single = residue_multiset(&Multipartition::from_parts(vec![vec![1]]).unwrap(), &ctx(3, vec![2])).unwrap();
        assert_eq!(single, [(Residue(2), 1)].into_iter().collect());
    }

    #[test]
    fn infinite_residues_are_integers() {
        let c = ParamContext::with_integers(QuantumChar::Infinite, vec![0], vec![0], 1).unwrap();
        assert_eq!(c.residue_of(&Node::new(7, 1, 1)).unwrap(), Residue(-6));
    }

    #[test]
    fn parse_and_display_round_trip() {
        let s = "8,5,3,1^3|6,5^2,3,2,1^3";
        let m: Multipartition = s.parse().unwrap();
        assert_eq!(m.component(1).parts(), &[8, 5, 3, 1, 1, 1]);
        assert_eq!(m.to_string(), s);
        let e: Multipartition = "-|1|".parse().unwrap();
        assert_eq!(e.level(), 3);
        assert_eq!(e.to_string(), "-|1|-");
        assert!("3,4".parse::<Multipartition>().is_err());
    }

    #[test]
    fn addable_removable_basics() {
        let c = ctx(5, vec![0]);
        let empty = Multipartition::empty(1);
        assert_eq!(addable_nodes(&empty, &c, None).unwrap(), vec![Node::new(1, 1, 1)]);
        assert!(removable_nodes(&empty, &c, None).unwrap().is_empty());
        let g: Multipartition = "5,1^4".parse().unwrap();
        let zero: BTreeSet<Residue> = [Residue(0)].into();
        let add = addable_nodes(&g, &c, Some(&zero)).unwrap();
        assert_eq!(add, vec![Node::new(1, 6, 1), Node::new(2, 2, 1), Node::new(6, 1, 1)]);
    }

    #[test]
    fn admissibility() {
        let c = ctx(4, vec![0, 3]);
        let g: Multipartition = "3,2,1^3|4,2^2,1".parse().unwrap();
        let s: BTreeSet<Residue> = [Residue(1), Residue(3)].into();
        assert!(is_admissible(&g, &s, &c).unwrap());
        let one: Multipartition = "1".parse().unwrap();
        assert!(!is_admissible(&one, &[Residue(0)].into(), &ctx(4, vec![0])).unwrap());
        let bad: BTreeSet<Residue> = [Residue(1), Residue(2)].into();
        assert!(matches!(is_admissible(&g, &bad, &c), Err(Error::AdjacencyViolation(..))));
        // 3 and 0 are adjacent modulo 4
        let wrap: BTreeSet<Residue> = [Residue(0), Residue(3)].into();
        assert!(matches!(is_admissible(&g, &wrap, &c), Err(Error::AdjacencyViolation(..))));
    }

    #[test]
    fn context_validation() {
        assert!(QuantumChar::finite(2).is_err());
        let bad = ParamContext::with_integers(QuantumChar::Finite(3), vec![0, 0], vec![0, 2], 1);
        assert!(matches!(bad, Err(Error::Validation { .. })));
        let c = ParamContext::new(
            QuantumChar::Finite(3),
            vec![0, 0],
            vec![BigRational::from_integer(0.into()), BigRational::new(1.into(), 2.into())],
            BigRational::from_integer(1.into()),
        )
        .unwrap();
        assert!(c.is_flotw());
        assert!(!c.is_well_separated(1));
    }
}
