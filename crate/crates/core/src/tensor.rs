//! Splitting a multi-residue Γ into single-residue factors.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::{build_gamma_set, GammaContext};
use crate::kn::kn_matrix_for_gamma;
use crate::laurent::LaurentPoly;
use crate::mp::{Multipartition, Residue};
use crate::tableaux::{enumerate_sstd, tableau_degree, Mode, Tableau};

/// A Γ together with one single-residue Γ for each residue that is added.
#[derive(Debug, Clone)]
pub struct FactoredContext {
    parent: GammaContext,
    children: Vec<(Residue, GammaContext)>,
}

impl FactoredContext {
    pub fn new(parent: &GammaContext) -> Result<Self> {
        let mut children = Vec::new();
        for (&r, &m) in parent.multiset() {
            let s: BTreeSet<Residue> = [r].into();
            let ms: BTreeMap<Residue, usize> = [(r, m)].into();
            children.push((r, build_gamma_set(parent.gamma(), &s, &ms, parent.ctx())?));
        }
        Ok(FactoredContext { parent: parent.clone(), children })
    }

    pub fn parent(&self) -> &GammaContext {
        &self.parent
    }

    pub fn children(&self) -> &[(Residue, GammaContext)] {
        &self.children
    }

    /// γ plus the added nodes of each residue, one multipartition per residue.
    pub fn psi_multipartition(&self, lambda: &Multipartition) -> Result<Vec<Multipartition>> {
        let idx = self.parent.index_of(lambda)?;
        let added = self.parent.added_indices(idx);
        self.children
            .iter()
            .map(|(r, _)| {
                let nodes: Vec<_> = added.iter().filter(|&&j| self.parent.addable_residues()[j] == *r).map(|&j| self.parent.addable()[j]).collect();
                self.parent.gamma().with_nodes_added(&nodes)
            })
            .collect()
    }

    pub fn psi_inverse(&self, parts: &[Multipartition]) -> Result<Multipartition> {
        if parts.len() != self.children.len() {
            return Err(Error::validation("parts", format!("expected {} factors, got {}", self.children.len(), parts.len())));
        }
        let mut nodes = Vec::new();
        for ((_, child), p) in self.children.iter().zip(parts) {
            let i = child.index_of(p)?;
            nodes.extend(child.added_indices(i).iter().map(|&j| child.addable()[j]));
        }
        let lambda = self.parent.gamma().with_nodes_added(&nodes)?;
        self.parent.index_of(&lambda)?;
        Ok(lambda)
    }

    /// Restrictions of a γ-fixing tableau to each residue.
    pub fn psi_tableau(&self, t: &Tableau) -> Result<Vec<Tableau>> {
        let shapes = self.psi_multipartition(t.shape())?;
        let weights = self.psi_multipartition(t.weight())?;
        let ctx = self.parent.ctx();
        let gamma = self.parent.gamma();
        for n in gamma.nodes() {
            if t.image(&n) != Some(&n) {
                return Err(Error::validation("tableau", format!("node {n} of gamma is not fixed")));
            }
        }
        self.children
            .iter()
            .zip(shapes.into_iter().zip(weights))
            .map(|((r, _), (shape, weight))| {
                let assignment = t.assignment().iter().filter(|(s, _)| gamma.contains(s) || ctx.res(s) == *r).map(|(s, d)| (*s, *d)).collect();
                Tableau::new(shape, weight, assignment, ctx)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    pub pairs_checked: usize,
    pub tableaux_checked: usize,
    pub counterexample: Option<String>,
}

impl FactorReport {
    pub fn ok(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks degree additivity, tableau counts, dominance and the product formula
/// for decomposition numbers over every pair of Γ.
pub fn factor_check(fc: &FactoredContext) -> Result<FactorReport> {
    let parent = &fc.parent;
    let ctx = parent.ctx();
    let mut report = FactorReport { pairs_checked: 0, tableaux_checked: 0, counterexample: None };
    let fail = |mut r: FactorReport, msg: String| {
        r.counterexample = Some(msg);
        Ok(r)
    };

    let parent_matrix = kn_matrix_for_gamma(parent)?;
    let child_matrices = fc.children.iter().map(|(_, c)| kn_matrix_for_gamma(c)).collect::<Result<Vec<_>>>()?;
    let psi = parent.elements().iter().map(|l| fc.psi_multipartition(l)).collect::<Result<Vec<_>>>()?;

    for a in 0..parent.len() {
        for b in 0..parent.len() {
            let (la, lb) = (&parent.elements()[a], &parent.elements()[b]);
            report.pairs_checked += 1;
            let tabs = enumerate_sstd(la, lb, ctx, Mode::GammaRestricted(parent))?;
            for t in &tabs {
                report.tableaux_checked += 1;
                let full = tableau_degree(t, ctx);
                let parts = fc.psi_tableau(t)?;
                let sum: i64 = parts.iter().map(Tableau::degree).sum();
                if full != t.degree() || sum != full {
                    return fail(report, format!("degree of a tableau in SStd({la}, {lb}) is {full} but its factors sum to {sum}"));
                }
            }
            let mut count = 1usize;
            let mut product = LaurentPoly::one();
            let mut all_dominate = true;
            for (k, (_, child)) in fc.children.iter().enumerate() {
                let (ca, cb) = (&psi[a][k], &psi[b][k]);
                count *= enumerate_sstd(ca, cb, ctx, Mode::GammaRestricted(child))?.len();
                let m = &child_matrices[k];
                let entry = m.entry(ca, cb).ok_or_else(|| Error::NotInGamma(ca.to_string()))?;
                product = &product * entry;
                let (ia, ib) = (child.index_of(ca)?, child.index_of(cb)?);
                all_dominate &= ia == ib || child.dominates_idx(ia, ib);
            }
            if count != tabs.len() {
                return fail(report, format!("|SStd({la}, {lb})| = {} but the factors give {count}", tabs.len()));
            }
            if (a == b || parent.dominates_idx(a, b)) != all_dominate {
                return fail(report, format!("dominance of ({la}, {lb}) is not respected by the factors"));
            }
            if parent_matrix.d[a][b] != product {
                return fail(report, format!("d({la}, {lb}) = {} but the factors multiply to {product}", parent_matrix.d[a][b]));
            }
        }
    }
    Ok(report)
}
