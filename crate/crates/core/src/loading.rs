//! Exact coordinates with an infinitesimal tilt, loadings and θ-dominance.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mp::{Multipartition, Node, ParamContext, Residue};

/// `base + eps·ε` for a positive infinitesimal ε; ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactCoord {
    pub base: BigRational,
    pub eps: i64,
}

impl ExactCoord {
    pub fn new(base: BigRational, eps: i64) -> Self {
        ExactCoord { base, eps }
    }

    /// The numeric value once ε is replaced by `eps_value`.
    pub fn numeric(&self, eps_value: &BigRational) -> BigRational {
        &self.base + eps_value * BigRational::from_integer(self.eps.into())
    }
}

impl fmt::Display for ExactCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.base.is_zero(), self.eps) {
            (true, 0) => write!(f, "0"),
            (true, e) => write!(f, "{e}ε"),
            (false, 0) => write!(f, "{}", format_rational(&self.base)),
            (false, e) if e < 0 => write!(f, "{}{}ε", format_rational(&self.base), e),
            (false, e) => write!(f, "{}+{}ε", format_rational(&self.base), e),
        }
    }
}

/// Parses `p/q`, an integer, or a decimal literal such as `-0.97`, exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let r = BigRational::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Renders a rational as a terminating decimal when possible, else as `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        return r.to_integer().to_string();
    }
    let mut den = r.denom().clone();
    let (mut twos, mut fives) = (0usize, 0usize);
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let places = twos.max(fives);
    let scaled = (r.abs() * BigRational::from_integer(num_traits::pow(BigInt::from(10), places))).to_integer();
    let digits = format!("{:0>width$}", scaled.to_string(), width = places + 1);
    let (int, frac) = digits.split_at(digits.len() - places);
    format!("{}{}.{}", if r.is_negative() { "-" } else { "" }, int, frac)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedPoint {
    pub coord: ExactCoord,
    pub residue: Residue,
    pub node: Option<Node>,
}

/// Residue-labelled points with pairwise distinct coordinates, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Loading {
    points: Vec<LoadedPoint>,
}

impl Loading {
    pub fn new(mut points: Vec<LoadedPoint>) -> Result<Self> {
        points.sort_by(|a, b| a.coord.cmp(&b.coord));
        if let Some(w) = points.windows(2).find(|w| w[0].coord == w[1].coord) {
            return Err(Error::DuplicateCoordinate(w[0].coord.to_string()));
        }
        Ok(Loading { points })
    }

    pub fn points(&self) -> &[LoadedPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn residue_sequence(&self) -> Vec<Residue> {
        self.points.iter().map(|p| p.residue).collect()
    }

    pub fn numeric(&self, eps_value: &BigRational) -> Vec<BigRational> {
        self.points.iter().map(|p| p.coord.numeric(eps_value)).collect()
    }

    fn by_residue(&self) -> BTreeMap<Residue, Vec<&ExactCoord>> {
        let mut m: BTreeMap<Residue, Vec<&ExactCoord>> = BTreeMap::new();
        for p in &self.points {
            m.entry(p.residue).or_default().push(&p.coord);
        }
        m
    }
}

pub fn coord_of_node(node: &Node, ctx: &ParamContext) -> Result<ExactCoord> {
    ctx.coord_of_node(node)
}

pub fn loading_of(lambda: &Multipartition, ctx: &ParamContext) -> Result<Loading> {
    ctx.check_level(lambda)?;
    loading_of_nodes(&lambda.nodes(), ctx)
}

pub(crate) fn loading_of_nodes(nodes: &[Node], ctx: &ParamContext) -> Result<Loading> {
    Loading::new(nodes.iter().map(|n| LoadedPoint { coord: ctx.coord(n), residue: ctx.res(n), node: Some(*n) }).collect())
}

/// True iff for every residue and threshold, `a` has at least as many points
/// below the threshold as `b`.
///
/// Only the thresholds just past each point of `b` can fail, which reduces the
/// sweep to comparing the k-th smallest points residue by residue.
pub fn dominates(a: &Loading, b: &Loading) -> bool {
    let pa = a.by_residue();
    b.by_residue().iter().all(|(r, bs)| match pa.get(r) {
        Some(as_) => as_.len() >= bs.len() && as_.iter().zip(bs).all(|(x, y)| x <= y),
        None => false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DominanceOrder {
    Greater,
    Less,
    Equal,
    Incomparable,
}

/// Compares two multipartitions; points common to both cancel, so only the
/// symmetric difference is loaded.
pub fn theta_dominance(lambda: &Multipartition, mu: &Multipartition, ctx: &ParamContext) -> Result<DominanceOrder> {
    ctx.check_level(lambda)?;
    ctx.check_level(mu)?;
    if lambda == mu {
        return Ok(DominanceOrder::Equal);
    }
    let a = loading_of_nodes(&lambda.difference(mu), ctx)?;
    let b = loading_of_nodes(&mu.difference(lambda), ctx)?;
    Ok(match (dominates(&a, &b), dominates(&b, &a)) {
        (true, true) => DominanceOrder::Equal,
        (true, false) => DominanceOrder::Greater,
        (false, true) => DominanceOrder::Less,
        (false, false) => DominanceOrder::Incomparable,
    })
}
