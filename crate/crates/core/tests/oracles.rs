//! Independent brute-force oracles for the enumerators and orders.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cherednik::crosscheck::random_case;
use cherednik::kn::kn_matrix_general;
use cherednik::{
    addable_nodes, coord_of_node, enumerate_sstd, kn_matrix_for_gamma, residue_multiset, residue_of, theta_dominance, CrosscheckConfig, DominanceOrder,
    DominancePoset, GammaContext, Mode, Multipartition, Node, ParamContext, Partition, Residue,
};
use common::ctx;

fn eps() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(1_000_000))
}

fn x(node: &Node, c: &ParamContext) -> BigRational {
    coord_of_node(node, c).unwrap().numeric(&eps())
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn multipartitions(n: usize, level: usize) -> Vec<Multipartition> {
    if level == 1 {
        return partitions(n, n).into_iter().map(|p| Multipartition::from_parts(vec![p]).unwrap()).collect();
    }
    let mut out = Vec::new();
    for k in 0..=n {
        for p in partitions(k, k) {
            for rest in multipartitions(n - k, level - 1) {
                let mut comps = vec![Partition::new(p.clone()).unwrap()];
                comps.extend(rest.components().iter().cloned());
                out.push(Multipartition::new(comps).unwrap());
            }
        }
    }
    out
}

fn semistandard(assign: &BTreeMap<Node, Node>, c: &ParamContext) -> bool {
    let g = c.g();
    assign.iter().all(|(s, t)| {
        let xt = x(t, c);
        if residue_of(s, c).unwrap() != residue_of(t, c).unwrap() {
            return false;
        }
        if s.row == 1 && s.col == 1 && xt <= c.theta()[s.comp - 1] {
            return false;
        }
        if s.row > 1 && xt <= x(&assign[&Node::new(s.row - 1, s.col, s.comp)], c) + g {
            return false;
        }
        if s.col > 1 && xt <= x(&assign[&Node::new(s.row, s.col - 1, s.comp)], c) - g {
            return false;
        }
        true
    })
}

/// Degree counted from the strand picture, on numeric coordinates.
fn degree(assign: &BTreeMap<Node, Node>, c: &ParamContext) -> i64 {
    let strands: Vec<(BigRational, BigRational, Residue)> = assign.iter().map(|(s, t)| (x(s, c), x(t, c), residue_of(s, c).unwrap())).collect();
    let cross = |a0: &BigRational, a1: &BigRational, b0: &BigRational, b1: &BigRational| (a0 < b0) != (a1 < b1);
    let mut d = 0;
    for (a, (a0, a1, ra)) in strands.iter().enumerate() {
        for (b, (b0, b1, rb)) in strands.iter().enumerate() {
            if a == b {
                continue;
            }
            if a < b && ra == rb && cross(a0, a1, b0, b1) {
                d -= 2;
            }
            if *rb == c.shift(*ra, -1) && cross(a0, a1, &(b0 - c.g()), &(b1 - c.g())) {
                d += 1;
            }
        }
        for k in 0..c.level() {
            let th = &c.theta()[k];
            if c.kappa()[k] == *ra && ((a0 < th && th < a1) || (a1 < th && th < a0)) {
                d += 1;
            }
        }
    }
    d
}

/// Every residue-preserving bijection, filtered.
fn brute_sstd(lambda: &Multipartition, mu: &Multipartition, c: &ParamContext) -> Vec<(BTreeMap<Node, Node>, i64)> {
    let by_res = |m: &Multipartition| -> BTreeMap<Residue, Vec<Node>> {
        let mut out: BTreeMap<Residue, Vec<Node>> = BTreeMap::new();
        for n in m.nodes() {
            out.entry(residue_of(&n, c).unwrap()).or_default().push(n);
        }
        out
    };
    let (src, dst) = (by_res(lambda), by_res(mu));
    let classes: Vec<Vec<Vec<(Node, Node)>>> = src
        .iter()
        .map(|(r, ns)| {
            let ts = &dst[r];
            ts.iter().permutations(ts.len()).map(|p| ns.iter().copied().zip(p.into_iter().copied()).collect()).collect()
        })
        .collect();
    let mut out = Vec::new();
    for choice in classes.iter().multi_cartesian_product() {
        let assign: BTreeMap<Node, Node> = choice.into_iter().flatten().copied().collect();
        if semistandard(&assign, c) {
            let d = degree(&assign, c);
            out.push((assign, d));
        }
    }
    out.sort();
    out
}

fn small_contexts() -> Vec<ParamContext> {
    vec![
        ctx(Some(3), &[0, 1], &["0", "7/2"], "1"),
        ctx(Some(3), &[0, 2], &["0", "1/3"], "1"),
        ctx(Some(4), &[0, 0], &["-5/3", "0"], "99/100"),
        ctx(None, &[0, 1], &["0", "1/2"], "1"),
    ]
}

#[test]
fn general_enumeration_matches_brute_force() {
    let mut pairs = 0;
    let mut tableaux = 0;
    for c in small_contexts() {
        for n in 1..=5 {
            let all = multipartitions(n, 2);
            for (l, m) in all.iter().cartesian_product(&all) {
                if residue_multiset(l, &c).unwrap() != residue_multiset(m, &c).unwrap() {
                    continue;
                }
                let want = brute_sstd(l, m, &c);
                let mut got: Vec<(BTreeMap<Node, Node>, i64)> =
                    enumerate_sstd(l, m, &c, Mode::General).unwrap().into_iter().map(|t| (t.assignment().clone(), t.degree())).collect();
                got.sort();
                assert_eq!(got, want, "SStd({l}, {m})");
                pairs += 1;
                tableaux += want.len();
            }
        }
    }
    assert!(pairs > 1000 && tableaux > 500);
}

fn small_cases(seed: u64, n: usize, max_gamma: usize) -> Vec<GammaContext> {
    let config = CrosscheckConfig { max_addable: 5, max_m: 3, ..CrosscheckConfig::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let case = random_case(&mut rng, &config);
        if case.gamma_context.gamma().size() <= max_gamma {
            out.push(case.gamma_context);
        }
    }
    out
}

#[test]
fn gamma_set_matches_subset_enumeration() {
    for gc in small_cases(11, 40, 60) {
        let c = gc.ctx();
        let adds = addable_nodes(gc.gamma(), c, Some(gc.residues())).unwrap();
        let want: BTreeSet<Multipartition> = adds
            .iter()
            .powerset()
            .filter(|sub| {
                let mut count: BTreeMap<Residue, usize> = BTreeMap::new();
                for n in sub {
                    *count.entry(residue_of(n, c).unwrap()).or_default() += 1;
                }
                count == *gc.multiset()
            })
            .map(|sub| gc.gamma().with_nodes_added(&sub.into_iter().copied().collect::<Vec<_>>()).unwrap())
            .collect();
        let got: BTreeSet<Multipartition> = gc.elements().iter().cloned().collect();
        assert_eq!(got, want);
        assert_eq!(got.len(), gc.len());
        for l in gc.elements() {
            assert_ne!(theta_dominance(gc.plus(), l, c).unwrap(), DominanceOrder::Less);
            assert_ne!(theta_dominance(l, gc.minus(), c).unwrap(), DominanceOrder::Less);
        }
    }
}

/// λ ⊵ μ iff, for each residue and every threshold, λ has at least as many
/// points of that residue at or left of the threshold as μ does.
fn dominance_by_counting(lambda: &Multipartition, mu: &Multipartition, c: &ParamContext) -> bool {
    let pts = |a: &Multipartition, b: &Multipartition| -> Vec<(Residue, BigRational)> {
        a.nodes().into_iter().filter(|n| !b.contains(n)).map(|n| (residue_of(&n, c).unwrap(), x(&n, c))).collect()
    };
    let (pl, pm) = (pts(lambda, mu), pts(mu, lambda));
    pl.iter().chain(&pm).all(|(r, t)| {
        let count = |ps: &[(Residue, BigRational)]| ps.iter().filter(|(s, y)| s == r && y <= t).count();
        count(&pl) >= count(&pm)
    })
}

#[test]
fn dominance_matches_counting_oracle() {
    let mut comparable = 0;
    for gc in small_cases(23, 40, 60) {
        let c = gc.ctx();
        let els = gc.elements();
        for (a, b) in (0..els.len()).cartesian_product(0..els.len()) {
            let want = dominance_by_counting(&els[a], &els[b], c);
            let order = theta_dominance(&els[a], &els[b], c).unwrap();
            assert_eq!(want, matches!(order, DominanceOrder::Greater | DominanceOrder::Equal), "{} vs {}", els[a], els[b]);
            assert_eq!(want, gc.dominates_idx(a, b));
            comparable += usize::from(want && a != b);
        }
    }
    assert!(comparable > 0);
}

#[test]
fn general_sstd_on_gamma_fixes_gamma() {
    for gc in small_cases(31, 25, 14) {
        let c = gc.ctx();
        for (l, m) in gc.elements().iter().cartesian_product(gc.elements()) {
            let general: Vec<(BTreeMap<Node, Node>, i64)> =
                enumerate_sstd(l, m, c, Mode::General).unwrap().into_iter().map(|t| (t.assignment().clone(), t.degree())).sorted().collect();
            let restricted: Vec<(BTreeMap<Node, Node>, i64)> =
                enumerate_sstd(l, m, c, Mode::GammaRestricted(&gc)).unwrap().into_iter().map(|t| (t.assignment().clone(), t.degree())).sorted().collect();
            assert_eq!(general, restricted, "SStd({l}, {m}) in {}", gc.gamma());
        }
    }
}

#[test]
fn gamma_mode_matrix_matches_general_mode() {
    for gc in small_cases(47, 20, 14) {
        let fast = kn_matrix_for_gamma(&gc).unwrap();
        let slow = kn_matrix_general(gc.elements().to_vec(), gc.ctx()).unwrap();
        fast.verify(&DominancePoset::from_gamma(&gc)).unwrap();
        for (l, m) in gc.elements().iter().cartesian_product(gc.elements()) {
            assert_eq!(fast.entry(l, m), slow.entry(l, m), "d({l}, {m}) in {}", gc.gamma());
        }
    }
}
