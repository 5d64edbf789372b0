//! i-diagonals, χ-sequences and their equivalence, and transport between
//! single-residue subquotients.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::GammaContext;
use crate::loading::ExactCoord;
use crate::mp::{removable_nodes, Multipartition, Node, ParamContext, Residue};
use crate::tableaux::{tableau_from_word, Tableau};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
    Centred,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IDiagonal {
    pub comp: usize,
    /// `r − c` of the i-nodes on the diagonal.
    pub offset: i64,
    /// i-nodes of γ on the diagonal, bottom to top.
    pub inodes: Vec<Node>,
    /// `b₁ … b₆`.
    pub bricks: [usize; 6],
    pub visible: bool,
    pub side: Side,
    #[serde(serialize_with = "ser_coord")]
    pub x: ExactCoord,
}

fn ser_coord<S: serde::Serializer>(c: &ExactCoord, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

impl IDiagonal {
    /// `b_k` for `k` in `1..=6`.
    pub fn b(&self, k: usize) -> usize {
        self.bricks[k - 1]
    }

    pub fn symbol(&self) -> ChiSymbol {
        let k = match self.side {
            Side::Left => 4,
            Side::Right => 5,
            Side::Centred => 6,
        };
        let j = if self.visible {
            0
        } else if self.b(2) == 1 {
            2
        } else {
            3
        };
        ChiSymbol::Brick { negative: self.b(1) % 2 == 1, k, j }
    }
}

/// The i-diagonals of an i-admissible γ, sorted by `x(𝐃)`.
pub fn i_diagonals(gamma: &Multipartition, i: Residue, ctx: &ParamContext) -> Result<Vec<IDiagonal>> {
    let i = ctx.reduce(i.0);
    if let Some(n) = removable_nodes(gamma, ctx, Some(&[i].into()))?.first() {
        return Err(Error::DiagonalModelViolation(format!("{n} is a removable {i}-node")));
    }
    let mut out = Vec::new();
    for k in 1..=ctx.level() {
        let p = gamma.component(k);
        let rows = p.num_rows() as i64;
        let cols = p.row(1) as i64;
        for delta in -(cols + 1)..=(rows + 1) {
            if ctx.reduce(ctx.kappa()[k - 1].0 - delta) != i {
                continue;
            }
            if let Some(d) = diagonal_at(p, k, delta, ctx)? {
                out.push(d);
            }
        }
    }
    out.sort_by(|a, b| a.x.cmp(&b.x).then(a.comp.cmp(&b.comp)));
    Ok(out)
}

fn diagonal_at(p: &crate::mp::Partition, comp: usize, delta: i64, ctx: &ParamContext) -> Result<Option<IDiagonal>> {
    let pos = |t: i64| -> (i64, i64) {
        if delta <= 0 {
            (t, t - delta)
        } else {
            (t + delta, t)
        }
    };
    let has = |(r, c): (i64, i64)| r >= 1 && c >= 1 && p.contains(r as usize, c as usize);
    let addable = |(r, c): (i64, i64)| r >= 1 && c >= 1 && p.is_addable(r as usize, c as usize);

    let mut t_top = 0i64;
    while has(pos(t_top + 1)) {
        t_top += 1;
    }
    if t_top == 0 && !addable(pos(1)) {
        return Ok(None);
    }
    let visible = addable(pos(t_top + 1));
    let mut bricks = [0usize; 6];
    bricks[0] = (1..=t_top)
        .filter(|&t| {
            let (r, c) = pos(t);
            has((r, c + 1)) && has((r + 1, c))
        })
        .count();
    if !visible {
        let (r, c) = pos(t_top);
        match (has((r, c + 1)), has((r + 1, c))) {
            (true, false) => bricks[2] = 1,
            (false, true) => bricks[1] = 1,
            _ => return Err(Error::DiagonalModelViolation(format!("top node ({r},{c},{comp}) has no single partner"))),
        }
    }
    let side = match delta.signum() {
        -1 => Side::Left,
        1 => Side::Right,
        _ => Side::Centred,
    };
    bricks[match side {
        Side::Left => 3,
        Side::Right => 4,
        Side::Centred => 5,
    }] = 1;
    let t = t_top as usize;
    let consistent = if visible { bricks[0] == t && bricks[1] + bricks[2] == 0 } else { bricks[0] + 1 == t && bricks[1] + bricks[2] == 1 };
    if !consistent {
        return Err(Error::DiagonalModelViolation(format!("brick counts {bricks:?} do not match {t} i-nodes at offset {delta}")));
    }
    let top = if t_top >= 1 {
        pos(t_top)
    } else if delta < 0 {
        (0, -delta)
    } else {
        (delta, 0)
    };
    let inodes = (1..=t_top)
        .map(|s| {
            let (r, c) = pos(s);
            Node::new(r as usize, c as usize, comp)
        })
        .collect();
    Ok(Some(IDiagonal { comp, offset: delta, inodes, bricks, visible, side, x: ctx.lattice_coord(comp, top.0, top.1) }))
}

/// `(−1)^{b₁}𝐝_k^j`, or one of the formal symbols `∅` and `−∅`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChiSymbol {
    Brick { negative: bool, k: u8, j: u8 },
    Empty,
    NegEmpty,
}

impl ChiSymbol {
    pub fn brick(negative: bool, k: u8, j: u8) -> Self {
        ChiSymbol::Brick { negative, k, j }
    }
}

impl fmt::Display for ChiSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChiSymbol::Brick { negative, k, j } => write!(f, "{}d{k}^{j}", if *negative { '-' } else { '+' }),
            ChiSymbol::Empty => write!(f, "∅"),
            ChiSymbol::NegEmpty => write!(f, "-∅"),
        }
    }
}

impl FromStr for ChiSymbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse(format!("not a chi symbol: {s:?}"));
        match t {
            "∅" | "+∅" | "empty" | "+empty" => return Ok(ChiSymbol::Empty),
            "-∅" | "-empty" => return Ok(ChiSymbol::NegEmpty),
            _ => {}
        }
        let (negative, body) = match t.chars().next() {
            Some('-') => (true, &t[1..]),
            Some('+') => (false, &t[1..]),
            _ => (false, t),
        };
        let body = body.strip_prefix('d').ok_or_else(bad)?;
        let (k, j) = body.split_once('^').ok_or_else(bad)?;
        let k: u8 = k.parse().map_err(|_| bad())?;
        let j: u8 = j.parse().map_err(|_| bad())?;
        if !(4..=6).contains(&k) || ![0, 2, 3].contains(&j) {
            return Err(bad());
        }
        Ok(ChiSymbol::Brick { negative, k, j })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct ChiSequence(pub Vec<ChiSymbol>);

impl fmt::Display for ChiSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for ChiSequence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() {
            return Ok(ChiSequence(Vec::new()));
        }
        Ok(ChiSequence(t.split(',').map(ChiSymbol::from_str).collect::<Result<_>>()?))
    }
}

impl From<ChiSequence> for String {
    fn from(c: ChiSequence) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for ChiSequence {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

pub fn chi_sequence(gamma: &Multipartition, i: Residue, ctx: &ParamContext) -> Result<ChiSequence> {
    Ok(ChiSequence(i_diagonals(gamma, i, ctx)?.iter().map(IDiagonal::symbol).collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    I,
    II,
    III,
    IV,
    V,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::I => "(i)",
            Rule::II => "(ii)",
            Rule::III => "(iii)",
            Rule::IV => "(iv)",
            Rule::V => "(v)",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub rule: Rule,
    pub position: usize,
    pub result: ChiSequence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ChiEquivalence {
    /// A rewrite trace leading from the first sequence to the second.
    Equivalent(Vec<RewriteStep>),
    /// The invariant of each side; they differ.
    Inequivalent {
        left: Vec<(i8, u8)>,
        right: Vec<(i8, u8)>,
    },
    Unknown,
}

/// The visible symbols, with `𝐝₄`/`𝐝₅` folded together by rule (i).
/// No rewrite changes it.
pub fn fast_invariant(seq: &ChiSequence) -> Vec<(i8, u8)> {
    seq.0
        .iter()
        .filter_map(|s| match *s {
            ChiSymbol::Brick { negative, k, j: 0 } => {
                let sign: i8 = if negative { -1 } else { 1 };
                Some(match k {
                    4 => (sign, 0),
                    5 => (-sign, 0),
                    _ => (sign, 6),
                })
            }
            _ => None,
        })
        .collect()
}

fn flip_45(s: ChiSymbol) -> Option<ChiSymbol> {
    match s {
        ChiSymbol::Brick { negative, k: k @ (4 | 5), j } => Some(ChiSymbol::Brick { negative: !negative, k: 9 - k, j }),
        _ => None,
    }
}

/// Every sequence one identification away from `seq`, within `max_len`.
pub fn neighbours(seq: &[ChiSymbol], max_len: usize) -> Vec<(Rule, usize, Vec<ChiSymbol>)> {
    use ChiSymbol::*;
    let mut out = Vec::new();
    let n = seq.len();
    let replace = |p: usize, width: usize, with: &[ChiSymbol]| -> Vec<ChiSymbol> {
        let mut v = Vec::with_capacity(n + with.len());
        v.extend_from_slice(&seq[..p]);
        v.extend_from_slice(with);
        v.extend_from_slice(&seq[p + width..]);
        v
    };
    for p in 0..n {
        if let Some(f) = flip_45(seq[p]) {
            out.push((Rule::I, p, replace(p, 1, &[f])));
        }
        match seq[p] {
            NegEmpty => {
                if n < max_len {
                    for k in [4, 5] {
                        for negative in [false, true] {
                            for (a, b) in [(2, 3), (3, 2)] {
                                out.push((Rule::II, p, replace(p, 1, &[Brick { negative, k, j: a }, Brick { negative, k, j: b }])));
                            }
                        }
                    }
                }
            }
            Empty => {
                out.push((Rule::V, p, replace(p, 1, &[])));
                if n < max_len {
                    out.push((Rule::V, p, replace(p, 1, &[NegEmpty, NegEmpty])));
                    for negative in [false, true] {
                        for j in [2, 3] {
                            let d6 = Brick { negative, k: 6, j };
                            out.push((Rule::IV, p, replace(p, 1, &[d6, d6])));
                        }
                    }
                }
            }
            _ => {}
        }
        if p + 1 < n {
            match (seq[p], seq[p + 1]) {
                (Brick { negative: s1, k: k1, j: j1 }, Brick { negative: s2, k: k2, j: j2 }) if k1 == k2 => {
                    if (k1 == 4 || k1 == 5) && s1 == s2 && ((j1, j2) == (2, 3) || (j1, j2) == (3, 2)) {
                        out.push((Rule::II, p, replace(p, 2, &[NegEmpty])));
                    }
                    if (k1 == 4 || k1 == 5) && s1 != s2 && j1 == j2 && (j1 == 2 || j1 == 3) {
                        let swapped = [Brick { negative: s2, k: k1, j: j1 }, Brick { negative: s1, k: k1, j: j1 }];
                        out.push((Rule::III, p, replace(p, 2, &swapped)));
                    }
                    if k1 == 6 && s1 == s2 && j1 == j2 && (j1 == 2 || j1 == 3) {
                        out.push((Rule::IV, p, replace(p, 2, &[Empty])));
                    }
                }
                (NegEmpty, NegEmpty) => out.push((Rule::V, p, replace(p, 2, &[Empty]))),
                _ => {}
            }
        }
    }
    if n < max_len {
        for p in 0..=n {
            out.push((Rule::V, p, replace(p, 0, &[Empty])));
        }
    }
    out
}

const STATE_CAP: usize = 2_000_000;

/// Search parents: each visited sequence maps to its predecessor and the move taken.
type Seen = HashMap<Vec<ChiSymbol>, Option<(Vec<ChiSymbol>, Rule, usize)>>;

/// Decides `a ∼ b` by invariant, then by normalizing with rule (i), then by a
/// bidirectional search of at most `depth` identifications.
pub fn chi_equivalent(a: &ChiSequence, b: &ChiSequence, depth: usize) -> ChiEquivalence {
    if a == b {
        return ChiEquivalence::Equivalent(Vec::new());
    }
    let (ia, ib) = (fast_invariant(a), fast_invariant(b));
    if ia != ib {
        return ChiEquivalence::Inequivalent { left: ia, right: ib };
    }
    if let Some(trace) = normalize_by_flips(a, b) {
        return ChiEquivalence::Equivalent(trace);
    }
    let max_len = a.0.len().max(b.0.len()) + 2 * depth;
    let mut seen_a: Seen = HashMap::from([(a.0.clone(), None)]);
    let mut seen_b: Seen = HashMap::from([(b.0.clone(), None)]);
    let mut front_a: VecDeque<Vec<ChiSymbol>> = [a.0.clone()].into();
    let mut front_b: VecDeque<Vec<ChiSymbol>> = [b.0.clone()].into();

    for _ in 0..depth {
        let grow_a = front_a.len() <= front_b.len();
        let (front, seen, other) = if grow_a { (&mut front_a, &mut seen_a, &seen_b) } else { (&mut front_b, &mut seen_b, &seen_a) };
        let mut next = VecDeque::new();
        let mut meet = None;
        'outer: for cur in front.drain(..) {
            for (rule, pos, nb) in neighbours(&cur, max_len) {
                if seen.contains_key(&nb) {
                    continue;
                }
                seen.insert(nb.clone(), Some((cur.clone(), rule, pos)));
                if other.contains_key(&nb) {
                    meet = Some(nb);
                    break 'outer;
                }
                next.push_back(nb);
            }
        }
        if let Some(m) = meet {
            return ChiEquivalence::Equivalent(join_trace(&seen_a, &seen_b, m));
        }
        if next.is_empty() {
            break;
        }
        *front = next;
        if seen_a.len() + seen_b.len() > STATE_CAP {
            break;
        }
    }
    ChiEquivalence::Unknown
}

fn join_trace(seen_a: &Seen, seen_b: &Seen, meet: Vec<ChiSymbol>) -> Vec<RewriteStep> {
    let mut head = Vec::new();
    let mut cur = meet.clone();
    while let Some(Some((parent, rule, pos))) = seen_a.get(&cur) {
        head.push(RewriteStep { rule: *rule, position: *pos, result: ChiSequence(cur.clone()) });
        cur = parent.clone();
    }
    head.reverse();
    let mut cur = meet;
    while let Some(Some((parent, rule, pos))) = seen_b.get(&cur) {
        head.push(RewriteStep { rule: *rule, position: *pos, result: ChiSequence(parent.clone()) });
        cur = parent.clone();
    }
    head
}

/// Rewrites every `𝐝₅` symbol of both sides to `𝐝₄` with rule (i); succeeds
/// when the two normal forms coincide.
fn normalize_by_flips(a: &ChiSequence, b: &ChiSequence) -> Option<Vec<RewriteStep>> {
    let path = |s: &ChiSequence| -> (Vec<ChiSymbol>, Vec<(usize, Vec<ChiSymbol>)>) {
        let mut cur = s.0.clone();
        let mut steps = Vec::new();
        for p in 0..cur.len() {
            if let ChiSymbol::Brick { k: 5, .. } = cur[p] {
                cur[p] = flip_45(cur[p]).unwrap();
                steps.push((p, cur.clone()));
            }
        }
        (cur, steps)
    };
    let (na, sa) = path(a);
    let (nb, sb) = path(b);
    if na != nb {
        return None;
    }
    let mut trace: Vec<RewriteStep> = sa.into_iter().map(|(p, r)| RewriteStep { rule: Rule::I, position: p, result: ChiSequence(r) }).collect();
    let mut back: Vec<Vec<ChiSymbol>> = vec![b.0.clone()];
    back.extend(sb.iter().map(|(_, r)| r.clone()));
    for idx in (0..sb.len()).rev() {
        trace.push(RewriteStep { rule: Rule::I, position: sb[idx].0, result: ChiSequence(back[idx].clone()) });
    }
    Some(trace)
}

fn single_residue(gc: &GammaContext) -> Result<Residue> {
    gc.single_residue().ok_or_else(|| Error::validation("residues", "this operation needs a single residue"))
}

/// `σ_k(λ)`: the 1-based position in the addable list of the k-th added node.
pub fn sigma_k(lambda: &Multipartition, gc: &GammaContext) -> Result<Vec<usize>> {
    single_residue(gc)?;
    let idx = gc.index_of(lambda)?;
    Ok(gc.added_indices(idx).iter().map(|j| j + 1).collect())
}

pub fn length_ell(lambda: &Multipartition, mu: &Multipartition, gc: &GammaContext) -> Result<usize> {
    let (li, mi) = (gc.index_of(lambda)?, gc.index_of(mu)?);
    if li != mi && !gc.dominates_idx(li, mi) {
        return Err(Error::NotComparable(lambda.to_string(), mu.to_string()));
    }
    let (sl, sm) = (sigma_k(lambda, gc)?, sigma_k(mu, gc)?);
    Ok(sm.iter().zip(&sl).map(|(m, l)| m - l).sum())
}

/// For each added node of the shape, in σ order, the 1-based addable index of
/// its image.
pub fn component_word(t: &Tableau, gc: &GammaContext) -> Result<Vec<usize>> {
    let li = gc.index_of(t.shape())?;
    gc.index_of(t.weight())?;
    for n in gc.gamma().nodes() {
        if t.image(&n) != Some(&n) {
            return Err(Error::validation("tableau", format!("node {n} of gamma is not fixed")));
        }
    }
    gc.added_indices(li)
        .iter()
        .map(|&s| {
            let img = t.image(&gc.addable()[s]).ok_or_else(|| Error::validation("tableau", "added node has no image"))?;
            gc.addable().iter().position(|a| a == img).map(|p| p + 1).ok_or_else(|| Error::validation("tableau", format!("image {img} is not an addable node")))
        })
        .collect()
}

/// Rebuilds the tableau with a given component word; the degree is recomputed
/// from its strand diagram.
pub fn tableau_from_component_word(lambda: &Multipartition, mu: &Multipartition, word: &[usize], gc: &GammaContext) -> Result<Tableau> {
    let (li, mi) = (gc.index_of(lambda)?, gc.index_of(mu)?);
    if word.len() != gc.added_indices(li).len() || word.iter().any(|&w| w == 0 || w > gc.addable().len()) {
        return Err(Error::validation("word", format!("{word:?} is not a component word for {lambda}")));
    }
    let zero_based: Vec<usize> = word.iter().map(|w| w - 1).collect();
    let mut targets = zero_based.clone();
    targets.sort_unstable();
    if targets != gc.added_indices(mi) {
        return Err(Error::validation("word", format!("{word:?} does not fill the added nodes of {mu}")));
    }
    let t = tableau_from_word(gc, li, mi, &zero_based, 0);
    Tableau::new(t.shape().clone(), t.weight().clone(), t.assignment().clone(), gc.ctx())
}

/// Identifies two single-residue subquotients through their addable lists.
#[derive(Debug, Clone)]
pub struct TransportMap {
    source: GammaContext,
    target: GammaContext,
}

impl TransportMap {
    pub fn new(source: &GammaContext, target: &GammaContext) -> Result<Self> {
        if source.single_residue().is_none() || target.single_residue().is_none() {
            return Err(Error::IncompatibleContexts("transport needs single-residue contexts".into()));
        }
        if source.addable().len() != target.addable().len() {
            return Err(Error::IncompatibleContexts(format!(
                "{} addable nodes on the source but {} on the target",
                source.addable().len(),
                target.addable().len()
            )));
        }
        if source.m() != target.m() {
            return Err(Error::IncompatibleContexts(format!("{} added nodes on the source but {} on the target", source.m(), target.m())));
        }
        Ok(TransportMap { source: source.clone(), target: target.clone() })
    }

    pub fn source(&self) -> &GammaContext {
        &self.source
    }

    pub fn target(&self) -> &GammaContext {
        &self.target
    }

    pub fn transport_multipartition(&self, lambda: &Multipartition) -> Result<Multipartition> {
        let i = self.source.index_of(lambda)?;
        self.target.element_from_indices(self.source.added_indices(i))
    }

    pub fn transport_tableau(&self, t: &Tableau) -> Result<Tableau> {
        let word = component_word(t, &self.source)?;
        let lambda = self.transport_multipartition(t.shape())?;
        let mu = self.transport_multipartition(t.weight())?;
        tableau_from_component_word(&lambda, &mu, &word, &self.target).map_err(|e| Error::IncompatibleContexts(format!("transported tableau is invalid: {e}")))
    }
}
