//! Interesting relations and the informativeness preorder on valuations,
//! plus the checks connecting informativeness with yield/cost.

use crate::error::{Error, Result};
use crate::monotone::{cost_monotone, yield_monotone, PartialValuation};
use crate::order::OrderedResources;
use crate::preorder::FinitePreorder;
use crate::rational::ExtRational;
use crate::set::ResourceSet;
use serde::Serialize;

/// Ordered pairs of carrier indices.
pub type InterestingRelation = Vec<(usize, usize)>;

/// For a total valuation: all pairs (a, b) with f(a) < f(b).
pub fn interesting_pairs(values: &[ExtRational]) -> InterestingRelation {
    let n = values.len();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| values[a] < values[b])
        .collect()
}

/// For a partial valuation: pairs (r, s) in W x W with f(r) < f(s) and
/// r not above s — the pairs whose nonconvertibility the valuation witnesses.
pub fn interesting_pairs_partial(f: &PartialValuation, pre: &FinitePreorder) -> InterestingRelation {
    let w: Vec<usize> = f.domain().iter().collect();
    let mut out = Vec::new();
    for &a in &w {
        for &b in &w {
            if f.value(a) < f.value(b) && !pre.holds(a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InformMode {
    /// Compare total valuations by their plain interesting relations.
    Monotone,
    /// Compare partial valuations by witnessed-nonconvertibility relations.
    Partial,
}

fn relation_of(f: &PartialValuation, pre: &FinitePreorder, mode: InformMode) -> Result<InterestingRelation> {
    match mode {
        InformMode::Monotone => {
            if !f.is_total() {
                return Err(Error::BadParameters(
                    "monotone-mode comparison needs total valuations".into(),
                ));
            }
            let values: Vec<ExtRational> = (0..f.universe())
                .map(|r| f.value(r).unwrap().clone())
                .collect();
            Ok(interesting_pairs(&values))
        }
        InformMode::Partial => Ok(interesting_pairs_partial(f, pre)),
    }
}

/// f ⊒ g: every pair g is interesting about, f is too.
pub fn more_informative(
    f: &PartialValuation,
    g: &PartialValuation,
    pre: &FinitePreorder,
    mode: InformMode,
) -> Result<bool> {
    let rf = relation_of(f, pre, mode)?;
    let rg = relation_of(g, pre, mode)?;
    Ok(rg.iter().all(|p| rf.contains(p)))
}

/// Outcome of the informativeness-propagation checks for one (f, g, D)
/// instance.
#[derive(Clone, Debug, Serialize)]
pub struct InformPropagationReport {
    /// f ⊒ g as partial functions.
    pub premise: bool,
    /// Yield_f ⊒ Yield_g (checked only when the premise holds).
    pub yield_implication: Option<bool>,
    /// Cost_f ⊒ Cost_g (checked only when the premise holds).
    pub cost_implication: Option<bool>,
    /// For monotone, equal-domain f and g with D = free: f ⊒ g ⇔ Yield_f ⊒
    /// Yield_g and f ⊒ g ⇔ Cost_f ⊒ Cost_g.
    pub yield_biconditional: Option<bool>,
    pub cost_biconditional: Option<bool>,
}

impl InformPropagationReport {
    pub fn all_hold(&self) -> bool {
        self.yield_implication.unwrap_or(true)
            && self.cost_implication.unwrap_or(true)
            && self.yield_biconditional.unwrap_or(true)
            && self.cost_biconditional.unwrap_or(true)
    }
}

/// More informative partial functions generate more informative yield and
/// cost monotones; the converses hold for monotone inputs on a shared domain
/// when D is the free set.
pub fn prop_informative_yield_cost_check(
    ctx: &OrderedResources,
    f: &PartialValuation,
    g: &PartialValuation,
    d: Option<&ResourceSet>,
) -> Result<InformPropagationReport> {
    let pre = ctx.order();
    let premise = more_informative(f, g, &pre, InformMode::Partial)?;

    let yf = yield_monotone(ctx, f, d)?;
    let yg = yield_monotone(ctx, g, d)?;
    let cf = cost_monotone(ctx, f, d)?;
    let cg = cost_monotone(ctx, g, d)?;
    let yield_more = |a: &[ExtRational], b: &[ExtRational]| {
        let ra = interesting_pairs(a);
        interesting_pairs(b).iter().all(|p| ra.contains(p))
    };
    let y_impl = yield_more(&yf.values, &yg.values);
    let c_impl = yield_more(&cf.values, &cg.values);

    let mut report = InformPropagationReport {
        premise,
        yield_implication: premise.then_some(y_impl),
        cost_implication: premise.then_some(c_impl),
        yield_biconditional: None,
        cost_biconditional: None,
    };

    let equal_domain = f.domain() == g.domain();
    let monotone_inputs =
        f.monotone_on_domain(&pre).is_ok() && g.monotone_on_domain(&pre).is_ok();
    if d.is_none() && equal_domain && monotone_inputs {
        report.yield_biconditional = Some(premise == y_impl);
        report.cost_biconditional = Some(premise == c_impl);
    }
    Ok(report)
}

/// Enumerates every order-preserving map from the carrier into {0, .., top}.
/// Intended for tiny carriers: the count is (top+1)^(carrier size).
pub fn enumerate_monotones(pre: &FinitePreorder, top: u8) -> Vec<Vec<ExtRational>> {
    let n = pre.len();
    let base = top as usize + 1;
    let mut out = Vec::new();
    let total = base.pow(n as u32);
    for code in 0..total {
        let mut values = Vec::with_capacity(n);
        let mut rest = code;
        for _ in 0..n {
            values.push(ExtRational::from_int((rest % base) as i64));
            rest /= base;
        }
        if crate::monotone::is_monotone(&values, pre).is_ok() {
            out.push(values);
        }
    }
    out
}

/// The rank valuation on a chain W: each element's value is the number of
/// elements of W it dominates. It has every interesting pair any valuation
/// on W can have, so it is most informative there.
pub fn chain_rank_valuation(
    ctx: &OrderedResources,
    w: &ResourceSet,
) -> Result<PartialValuation> {
    let pre = ctx.order();
    let members: Vec<usize> = w.iter().collect();
    for &a in &members {
        for &b in &members {
            if !pre.holds(a, b) && !pre.holds(b, a) {
                return Err(Error::WNotAChain {
                    a: ctx.label(a).to_string(),
                    b: ctx.label(b).to_string(),
                });
            }
        }
    }
    Ok(PartialValuation::from_entries(
        ctx.len(),
        members.iter().map(|&a| {
            let rank = members.iter().filter(|&&b| pre.holds(a, b)).count();
            (a, ExtRational::from_int(rank as i64))
        }),
    ))
}

/// Builds the rank valuation on a chain W and verifies it is at least as
/// informative (partial mode) as every valuation in `family`.
pub fn chain_most_informative_check(
    ctx: &OrderedResources,
    w: &ResourceSet,
    family: &[PartialValuation],
) -> Result<bool> {
    let rank = chain_rank_valuation(ctx, w)?;
    let pre = ctx.order();
    for g in family {
        let g = g.restrict(w);
        if !more_informative(&rank, &g, &pre, InformMode::Partial)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{p5, tri};

    #[test]
    fn interesting_pairs_of_total_valuations() {
        assert!(interesting_pairs(&vec![ExtRational::zero(); 3]).is_empty());
        let (_, f, _) = p5();
        let values: Vec<ExtRational> = (0..4).map(|r| f.value(r).unwrap().clone()).collect();
        let mut pairs = interesting_pairs(&values);
        pairs.sort();
        assert_eq!(pairs, vec![(0, 1), (0, 3), (2, 1), (2, 3)]);
    }

    #[test]
    fn p5_partial_interesting_pairs() {
        let (pre, f, _) = p5();
        let mut pairs = interesting_pairs_partial(&f, &pre);
        pairs.sort();
        // (r1, s2) and (s1, r2).
        assert_eq!(pairs, vec![(0, 3), (2, 1)]);
    }

    #[test]
    fn partial_and_total_relations_coincide_for_monotones() {
        // For a valuation monotone on W, f(r) < f(s) already implies r ⋡ s.
        let ctx = OrderedResources::from_theory(tri()).unwrap();
        let pre = ctx.order();
        let f = PartialValuation::from_entries(
            3,
            [(0, ExtRational::from_int(2)), (1, ExtRational::from_int(1))],
        );
        assert!(f.monotone_on_domain(&pre).is_ok());
        let partial = interesting_pairs_partial(&f, &pre);
        let total_on_w: Vec<(usize, usize)> = {
            let w: Vec<usize> = f.domain().iter().collect();
            w.iter()
                .flat_map(|&a| w.iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| f.value(a) < f.value(b))
                .collect()
        };
        assert_eq!(partial, total_on_w);
    }

    #[test]
    fn more_informative_basics() {
        let (pre, f, _) = p5();
        assert!(more_informative(&f, &f, &pre, InformMode::Partial).unwrap());
        let constant = PartialValuation::total(vec![ExtRational::zero(); 4]);
        assert!(more_informative(&f, &constant, &pre, InformMode::Monotone).unwrap());
        assert!(more_informative(&constant, &constant, &pre, InformMode::Monotone).unwrap());
    }

    #[test]
    fn no_single_monotone_witnesses_both_p5_pairs() {
        let (pre, f, _) = p5();
        let needed = interesting_pairs_partial(&f, &pre);
        assert_eq!(needed.len(), 2);
        let all = enumerate_monotones(&pre, 3);
        assert!(!all.is_empty());
        for m in &all {
            let pairs = interesting_pairs(m);
            assert!(
                !(pairs.contains(&needed[0]) && pairs.contains(&needed[1])),
                "{m:?} witnesses both pairs"
            );
        }
    }

    #[test]
    fn propagation_report_on_equal_inputs() {
        let ctx = OrderedResources::from_theory(tri()).unwrap();
        let f = PartialValuation::from_entries(
            3,
            [(0, ExtRational::from_int(2)), (1, ExtRational::from_int(1))],
        );
        let report = prop_informative_yield_cost_check(&ctx, &f, &f, None).unwrap();
        assert!(report.premise);
        assert!(report.all_hold());
        assert_eq!(report.yield_biconditional, Some(true));
    }

    #[test]
    fn p5_yield_cost_are_least_informative() {
        let (pre, f, _) = p5();
        let ctx = OrderedResources::Preorder(pre);
        let report = prop_informative_yield_cost_check(&ctx, &f, &f, None).unwrap();
        // f is not monotone, so no biconditional is attempted.
        assert_eq!(report.yield_biconditional, None);
        let y = yield_monotone(&ctx, &f, None).unwrap();
        assert!(interesting_pairs(&y.values).is_empty());
    }

    #[test]
    fn chain_rank_dominates_arbitrary_valuations() {
        // e ≽ a in TRI: {e, a} is a chain.
        let ctx = OrderedResources::from_theory(tri()).unwrap();
        let w = ResourceSet::from_members(3, [0, 1]);
        let family: Vec<PartialValuation> = (0..50)
            .map(|i| {
                PartialValuation::total(vec![
                    ExtRational::from_int(i % 7),
                    ExtRational::from_int((3 * i) % 5),
                    ExtRational::from_int(i % 3),
                ])
            })
            .collect();
        assert!(chain_most_informative_check(&ctx, &w, &family).unwrap());
        // Singleton chains are trivially most informative.
        assert!(chain_most_informative_check(&ctx, &ResourceSet::singleton(3, 2), &family).unwrap());
        // {a, b} is not a chain.
        let bad = ResourceSet::from_members(3, [1, 2]);
        assert!(matches!(
            chain_most_informative_check(&ctx, &bad, &family),
            Err(Error::WNotAChain { .. })
        ));
    }
}
