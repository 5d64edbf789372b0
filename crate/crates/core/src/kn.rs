//! Character peeling: graded decomposition matrices from standard characters.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::GammaContext;
use crate::laurent::{bar_split, LaurentPoly};
use crate::loading::{theta_dominance, DominanceOrder};
use crate::mp::{Multipartition, ParamContext};
use crate::tableaux::{delta_character, restricted_words, Mode};
use crate::tensor::FactoredContext;
use crate::terrain::nested_decomposition_number;

/// A finite set of labels with a dominance relation `geq[a][b] ⇔ a ⊵ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominancePoset {
    labels: Vec<Multipartition>,
    geq: Vec<Vec<bool>>,
}

impl DominancePoset {
    pub fn new(labels: Vec<Multipartition>, geq: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        if geq.len() != n || geq.iter().any(|r| r.len() != n) || (0..n).any(|i| !geq[i][i]) {
            return Err(Error::validation("poset", "relation must be a reflexive square matrix"));
        }
        Ok(DominancePoset { labels, geq })
    }

    pub fn from_gamma(gc: &GammaContext) -> Self {
        Self::from_gamma_subset(gc, &(0..gc.len()).collect::<Vec<_>>())
    }

    fn from_gamma_subset(gc: &GammaContext, idx: &[usize]) -> Self {
        let labels = idx.iter().map(|&i| gc.elements()[i].clone()).collect();
        let geq = idx.iter().map(|&a| idx.iter().map(|&b| a == b || gc.dominates_idx(a, b)).collect()).collect();
        DominancePoset { labels, geq }
    }

    /// θ-dominance on arbitrary multipartitions of one residue class.
    pub fn from_context(labels: Vec<Multipartition>, ctx: &ParamContext) -> Result<Self> {
        let n = labels.len();
        let mut geq = vec![vec![false; n]; n];
        for a in 0..n {
            for b in 0..n {
                geq[a][b] = matches!(theta_dominance(&labels[a], &labels[b], ctx)?, DominanceOrder::Greater | DominanceOrder::Equal);
            }
        }
        Ok(DominancePoset { labels, geq })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Multipartition] {
        &self.labels
    }

    pub fn geq(&self, a: usize, b: usize) -> bool {
        self.geq[a][b]
    }

    /// Labels `ν` with `lo ⊴ ν ⊴ hi`.
    pub fn interval(&self, hi: usize, lo: usize) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.geq[hi][v] && self.geq[v][lo]).collect()
    }
}

/// `d[λ][μ] = d_{λμ}(t)`, `simple[ν][μ] = Dim L_μ(ν)` and `delta[λ][μ] = Dim Δ_μ(λ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionMatrix {
    pub labels: Vec<Multipartition>,
    pub d: Vec<Vec<LaurentPoly>>,
    pub simple: Vec<Vec<LaurentPoly>>,
    pub delta: Vec<Vec<LaurentPoly>>,
}

impl DecompositionMatrix {
    pub fn index_of(&self, m: &Multipartition) -> Option<usize> {
        self.labels.iter().position(|x| x == m)
    }

    pub fn entry(&self, lambda: &Multipartition, mu: &Multipartition) -> Option<&LaurentPoly> {
        Some(&self.d[self.index_of(lambda)?][self.index_of(mu)?])
    }

    /// Unitriangularity, positivity, bar-invariance of simple characters and
    /// the reassembly `Dim Δ_μ(ν) = Σ_ξ d_{νξ}·Dim L_μ(ξ)`.
    pub fn verify(&self, poset: &DominancePoset) -> Result<()> {
        let n = self.labels.len();
        let bad = |msg: String| Err(Error::InvariantViolation(msg));
        for a in 0..n {
            if self.d[a][a] != LaurentPoly::one() || self.simple[a][a] != LaurentPoly::one() {
                return bad(format!("diagonal entry at {} is not 1", self.labels[a]));
            }
            for b in 0..n {
                let (d, l) = (&self.d[a][b], &self.simple[a][b]);
                if a != b && !d.in_t_nat_t() {
                    return bad(format!("d({}, {}) = {d} is not in tN[t]", self.labels[a], self.labels[b]));
                }
                if !l.is_bar_invariant() || !l.has_nonnegative_coefficients() {
                    return bad(format!("Dim L_{}({}) = {l} is not a bar-invariant positive polynomial", self.labels[b], self.labels[a]));
                }
                if !poset.geq(a, b) && (!d.is_zero() || !l.is_zero()) {
                    return bad(format!("nonzero entry for non-dominated pair ({}, {})", self.labels[a], self.labels[b]));
                }
                if poset.geq(a, b) {
                    let mut sum = LaurentPoly::zero();
                    for x in poset.interval(a, b) {
                        sum += &(&self.d[a][x] * &self.simple[x][b]);
                    }
                    if sum != self.delta[a][b] {
                        return bad(format!("reassembly fails at ({}, {}): {sum} != {}", self.labels[a], self.labels[b], self.delta[a][b]));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Peels decomposition numbers off the characters `chars(λ, μ) = Dim Δ_μ(λ)`.
///
/// Pairs `μ ⊴ λ` are processed by increasing size of the interval `[μ, λ]`, so
/// every strictly intermediate entry is known when a pair is reached.
#[allow(clippy::needless_range_loop)]
pub fn kn_matrix(poset: &DominancePoset, chars: &(dyn Fn(usize, usize) -> Result<LaurentPoly> + Sync)) -> Result<DecompositionMatrix> {
    let n = poset.len();
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let values = cells.par_iter().map(|&(a, b)| chars(a, b)).collect::<Result<Vec<_>>>()?;
    let mut delta = vec![vec![LaurentPoly::zero(); n]; n];
    for ((a, b), v) in cells.into_iter().zip(values) {
        delta[a][b] = v;
    }

    for a in 0..n {
        if delta[a][a] != LaurentPoly::one() {
            return Err(Error::InvariantViolation(format!("Dim Δ_λ(λ) = {} for λ = {}", delta[a][a], poset.labels[a])));
        }
        for b in 0..n {
            if !poset.geq(a, b) && !delta[a][b].is_zero() {
                return Err(Error::NonSaturatedPoset(format!(
                    "Dim Δ_{}({}) = {} although the pair is not dominated",
                    poset.labels[b], poset.labels[a], delta[a][b]
                )));
            }
        }
    }

    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && poset.geq(a, b) {
                pairs.push((poset.interval(a, b).len(), a, b));
            }
        }
    }
    pairs.sort_unstable();

    let mut d = vec![vec![LaurentPoly::zero(); n]; n];
    let mut simple = vec![vec![LaurentPoly::zero(); n]; n];
    for a in 0..n {
        d[a][a] = LaurentPoly::one();
        simple[a][a] = LaurentPoly::one();
    }
    for (_, a, b) in pairs {
        let mut f = delta[a][b].clone();
        for x in poset.interval(a, b) {
            if x != a && x != b {
                f -= &(&d[a][x] * &simple[x][b]);
            }
        }
        let (dv, lv) = bar_split(&f).map_err(|e| match e {
            Error::PositivityViolation(m) => Error::PositivityViolation(format!("at ({}, {}): {m}", poset.labels[a], poset.labels[b])),
            other => other,
        })?;
        d[a][b] = dv;
        simple[a][b] = lv;
    }

    let m = DecompositionMatrix { labels: poset.labels.clone(), d, simple, delta };
    m.verify(poset)?;
    Ok(m)
}

fn gamma_chars<'a>(gc: &'a GammaContext, idx: &[usize]) -> impl Fn(usize, usize) -> Result<LaurentPoly> + Sync + 'a {
    let idx = idx.to_vec();
    move |a, b| {
        let words = restricted_words(gc, idx[a], idx[b]);
        Ok(LaurentPoly::from_terms(words.iter().map(|(_, deg)| (*deg as i32, 1))))
    }
}

/// The full matrix over Γ, with characters from tableaux fixing γ.
pub fn kn_matrix_for_gamma(gc: &GammaContext) -> Result<DecompositionMatrix> {
    let idx: Vec<usize> = (0..gc.len()).collect();
    kn_matrix(&DominancePoset::from_gamma(gc), &gamma_chars(gc, &idx))
}

/// The full matrix over an explicit list of multipartitions, with characters
/// from unrestricted tableau enumeration.
pub fn kn_matrix_general(labels: Vec<Multipartition>, ctx: &ParamContext) -> Result<DecompositionMatrix> {
    let poset = DominancePoset::from_context(labels, ctx)?;
    let labels = poset.labels().to_vec();
    kn_matrix(&poset, &|a, b| Ok(delta_character(&labels[a], &labels[b], ctx, Mode::General)?.value))
}

/// A single entry, peeling only over the interval `[μ, λ]` of Γ.
pub fn kn_entry(lambda: &Multipartition, mu: &Multipartition, gc: &GammaContext) -> Result<LaurentPoly> {
    let (li, mi) = (gc.index_of(lambda)?, gc.index_of(mu)?);
    if li == mi {
        return Ok(LaurentPoly::one());
    }
    if !gc.dominates_idx(li, mi) {
        if !restricted_words(gc, li, mi).is_empty() {
            return Err(Error::NonSaturatedPoset(format!("SStd({lambda}, {mu}) is nonempty for a non-dominated pair")));
        }
        return Ok(LaurentPoly::zero());
    }
    let idx: Vec<usize> = (0..gc.len()).filter(|&v| gc.dominates_idx(li, v) && gc.dominates_idx(v, mi)).collect();
    let poset = DominancePoset::from_gamma_subset(gc, &idx);
    let m = kn_matrix(&poset, &gamma_chars(gc, &idx))?;
    let a = idx.iter().position(|&v| v == li).unwrap();
    let b = idx.iter().position(|&v| v == mi).unwrap();
    Ok(m.d[a][b].clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Engine {
    Nested,
    Kn,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompReport {
    pub lambda: Multipartition,
    pub mu: Multipartition,
    pub value: LaurentPoly,
    pub nested: Option<LaurentPoly>,
    pub kn: Option<LaurentPoly>,
    pub field_independent: Option<bool>,
}

/// The nested formula; over several residues it is the product of the
/// single-residue factors.
pub fn nested_entry(lambda: &Multipartition, mu: &Multipartition, gc: &GammaContext) -> Result<(LaurentPoly, bool)> {
    if gc.single_residue().is_some() || gc.m() == 0 {
        if gc.m() == 0 {
            gc.index_of(lambda)?;
            gc.index_of(mu)?;
            return Ok((LaurentPoly::one(), true));
        }
        let v = nested_decomposition_number(lambda, mu, gc)?;
        return Ok((v.value, v.field_independent));
    }
    let fc = FactoredContext::new(gc)?;
    let (ls, ms) = (fc.psi_multipartition(lambda)?, fc.psi_multipartition(mu)?);
    let mut value = LaurentPoly::one();
    let mut all = true;
    for ((_, child), (l, m)) in fc.children().iter().zip(ls.iter().zip(&ms)) {
        let v = nested_decomposition_number(l, m, child)?;
        value = &value * &v.value;
        all &= v.field_independent;
    }
    Ok((value, all))
}

pub fn decomp_number(lambda: &Multipartition, mu: &Multipartition, gc: &GammaContext, engine: Engine) -> Result<DecompReport> {
    let nested = match engine {
        Engine::Nested | Engine::Both => Some(nested_entry(lambda, mu, gc)?),
        Engine::Kn => None,
    };
    let kn = match engine {
        Engine::Kn | Engine::Both => Some(kn_entry(lambda, mu, gc)?),
        Engine::Nested => None,
    };
    if let (Some((n, _)), Some(k)) = (&nested, &kn) {
        if n != k {
            return Err(Error::EngineDisagreement { pair: format!("({lambda}, {mu})"), nested: n.to_string(), kn: k.to_string() });
        }
    }
    let value = kn.clone().or_else(|| nested.as_ref().map(|n| n.0.clone())).unwrap();
    Ok(DecompReport { lambda: lambda.clone(), mu: mu.clone(), value, field_independent: nested.as_ref().map(|n| n.1), nested: nested.map(|n| n.0), kn })
}
