#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use cherednik::{build_gamma_set, parse_rational, GammaContext, Multipartition, ParamContext, QuantumChar, Residue};

pub fn ctx(e: Option<u32>, kappa: &[i64], theta: &[&str], g: &str) -> ParamContext {
    let e = match e {
        Some(e) => QuantumChar::finite(e).unwrap(),
        None => QuantumChar::Infinite,
    };
    let theta = theta.iter().map(|t| parse_rational(t).unwrap()).collect();
    ParamContext::new(e, kappa.to_vec(), theta, parse_rational(g).unwrap()).unwrap()
}

pub fn mp(s: &str) -> Multipartition {
    s.parse().unwrap()
}

pub fn gamma(gamma: &str, multiset: &[(i64, usize)], ctx: &ParamContext) -> GammaContext {
    let s: BTreeSet<Residue> = multiset.iter().map(|&(r, _)| Residue(r)).collect();
    let ms: BTreeMap<Residue, usize> = multiset.iter().map(|&(r, m)| (Residue(r), m)).collect();
    build_gamma_set(&mp(gamma), &s, &ms, ctx).unwrap()
}

/// γ with every removable node of residue `i` taken off, repeatedly, until it is
/// `i`-admissible; returns it with the number of nodes removed.
pub fn strip(lambda: &Multipartition, i: i64, ctx: &ParamContext) -> (Multipartition, usize) {
    let only: BTreeSet<Residue> = [ctx.reduce(i)].into();
    let mut cur = lambda.clone();
    let mut removed = 0;
    loop {
        let rem = cherednik::removable_nodes(&cur, ctx, Some(&only)).unwrap();
        if rem.is_empty() {
            return (cur, removed);
        }
        for n in rem {
            cur = cur.with_removed(&n).unwrap();
            removed += 1;
        }
    }
}

pub mod examples {
    use super::*;

    pub fn two_residue_ctx() -> ParamContext {
        ctx(Some(4), &[0, 3], &["0", "7"], "0.99")
    }

    pub fn two_residue() -> GammaContext {
        gamma("3,2,1^3|4,2^2,1", &[(1, 1), (3, 3)], &two_residue_ctx())
    }

    pub fn two_residue_single() -> GammaContext {
        gamma("3,2,1^3|4,2^2,1", &[(3, 3)], &two_residue_ctx())
    }

    pub fn level_seven() -> GammaContext {
        let c = ctx(Some(4), &[3, 1, 3, 3, 3, 1, 3], &["-3", "-1", "1", "3", "5", "9", "11"], "0.99");
        gamma("-|-|-|-|-|-|-", &[(1, 1), (3, 3)], &c)
    }

    pub fn small_level1() -> GammaContext {
        gamma("5,1^4", &[(0, 1)], &ctx(Some(5), &[0], &["0"], "0.99"))
    }

    pub fn small_level3() -> GammaContext {
        gamma("-|2,1|-", &[(1, 1)], &ctx(Some(11), &[1, 1, 1], &["-5", "0", "4"], "0.99"))
    }

    pub fn wide_m2() -> GammaContext {
        gamma("30^6,28,20,19^2,15,11,9,7,3^6", &[(0, 2)], &ctx(Some(5), &[0], &["0"], "1"))
    }

    pub fn narrow_m2() -> GammaContext {
        gamma("10^4,9,5^4,3^3,1^8", &[(0, 2)], &ctx(Some(5), &[0], &["0"], "1"))
    }

    pub fn unsigned_chi_ctx() -> ParamContext {
        ctx(Some(5), &[0], &["0"], "1")
    }

    pub const UNSIGNED_CHI_GAMMA: &str = "10,9^2,6,4^2,3,2,1^2";

    pub fn flotw_level2_ctx() -> ParamContext {
        ctx(Some(3), &[2, 1], &["0", "1"], "2")
    }

    pub const FLOTW_GAMMA: &str = "7,5,3,1^2|5^2,4,2^2,1^2";
    pub const FLOTW_LAMBDA: &str = "8,5,3,1^3|6,5^2,3,2,1^3";
    pub const FLOTW_MU: &str = "7,5,4,2,1^2|5^3,2^3,1^2";

    pub fn flotw_level1_ctx() -> ParamContext {
        ctx(Some(4), &[1], &["0"], "1")
    }

    pub const FLOTW_L1_GAMMA: &str = "19,18,17^3,16,13,12,11,8^3,7,6,5,2^2";

    pub fn peel_ctx() -> ParamContext {
        ctx(Some(3), &[0], &["0"], "1")
    }

    pub const PEEL_LAMBDA: &str = "10^2,9^2,8^2,7^2,6,5^3,4^2,3,2^2,1^2";
    pub const PEEL_MU: &str = "10^2,9^2,8,7^2,6^3,5,4^3,3,2^3,1^2";

    pub fn rank3_level1_ctx() -> ParamContext {
        ctx(Some(5), &[1], &["0"], "1")
    }

    pub const RANK3_BAR_GAMMA: &str = "14,12,11,9,8,5^2,3,2,1^2";
    pub const RANK3_LAMBDA: &str = "15,12^2,9,8,5^2,3^2,1^2";
    pub const RANK3_MU: &str = "14,12,11,9^2,5^2,3^2,1^3";
    pub const RANK3_GAMMA: &str = "10,8,7,5^3,3^3|5,4,3^5,2,1^2";
}
