//! Cross-module properties checked over seeded theory families.

use proptest::prelude::*;
use rth_core::gen::{build, random_valuation, seeded_convex, DomainMode, FamilySpec};
use rth_core::monotone::{cost_monotone, is_monotone, yield_monotone};
use rth_core::order::{down_closure, is_downward_closed, OrderedResources};
use rth_core::translate::{
    certify_direct, enh_order, pull_back, MediatingMap, PullbackMode, SubsetOrderKind,
};
use rth_core::{PartialValuation, ResourceSet, ResourceTheory};

fn family_strategy() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        (1usize..=4).prop_map(|g| FamilySpec::UnionMonoid { ground: g }),
        (1usize..=8).prop_map(|m| FamilySpec::TruncatedAddition { max: m }),
        (1usize..=8).prop_map(|m| FamilySpec::BlurredAddition { max: m }),
        (1usize..=8).prop_map(|m| FamilySpec::TropicalMin { max: m }),
        ((1usize..=3), (1usize..=3)).prop_map(|(g, m)| FamilySpec::Product {
            left: Box::new(FamilySpec::UnionMonoid { ground: g }),
            right: Box::new(FamilySpec::TruncatedAddition { max: m }),
        }),
    ]
}

fn seeded_theory() -> impl Strategy<Value = ResourceTheory> {
    (family_strategy(), any::<u64>()).prop_map(|(spec, seed)| build(&spec, seed).expect("builds"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Every seeded theory satisfies the combination axioms.
    #[test]
    fn seeded_families_satisfy_axioms(t in seeded_theory()) {
        let report = t.validate();
        prop_assert!(report.is_valid(), "violations: {:?}", report.violations);
    }

    /// Seeded convex theories satisfy the axioms too.
    #[test]
    fn seeded_convex_satisfies_axioms(ground in 1usize..=4, seed in any::<u64>()) {
        let c = seeded_convex(ground, seed).expect("builds");
        let report = c.validate();
        prop_assert!(report.is_valid(), "violations: {:?}", report.violations);
    }

    /// Yield and cost of an arbitrary (not necessarily monotone) partial
    /// valuation are monotone, for the free set and for any downward closed
    /// choice set.
    #[test]
    fn yield_and_cost_are_monotone(
        t in seeded_theory(),
        fseed in any::<u64>(),
        dseed in any::<u64>(),
    ) {
        let ctx = OrderedResources::from_theory(t).expect("order");
        let f = random_valuation(&ctx, fseed, false, DomainMode::RandomSubset);
        let pre = ctx.order();
        for d in [None, Some(seeded_downward_closed(&ctx, dseed))] {
            let y = yield_monotone(&ctx, &f, d.as_ref()).expect("yield");
            let c = cost_monotone(&ctx, &f, d.as_ref()).expect("cost");
            prop_assert!(y.monotone_checked && is_monotone(&y.values, &pre).is_ok());
            prop_assert!(c.monotone_checked && is_monotone(&c.values, &pre).is_ok());
        }
    }

    /// Shrinking the valuation's domain never raises a yield and never
    /// lowers a cost.
    #[test]
    fn domain_enlargement_is_pointwise_monotone(
        t in seeded_theory(),
        fseed in any::<u64>(),
        mask in any::<u64>(),
    ) {
        let ctx = OrderedResources::from_theory(t).expect("order");
        let f = random_valuation(&ctx, fseed, false, DomainMode::Full);
        let window = ResourceSet::from_mask(ctx.len(), mask & f.domain().mask());
        let g = f.restrict(&window);
        let y_full = yield_monotone(&ctx, &f, None).expect("yield");
        let y_small = yield_monotone(&ctx, &g, None).expect("yield");
        let c_full = cost_monotone(&ctx, &f, None).expect("cost");
        let c_small = cost_monotone(&ctx, &g, None).expect("cost");
        for r in 0..ctx.len() {
            prop_assert!(y_small.values[r] <= y_full.values[r]);
            prop_assert!(c_small.values[r] >= c_full.values[r]);
        }
    }

    /// A total monotone valuation is its own yield- and cost-extension.
    #[test]
    fn extensions_fix_total_monotones(t in seeded_theory(), fseed in any::<u64>()) {
        let ctx = OrderedResources::from_theory(t).expect("order");
        let f = random_valuation(&ctx, fseed, true, DomainMode::Full);
        let y = yield_monotone(&ctx, &f, None).expect("yield");
        let c = cost_monotone(&ctx, &f, None).expect("cost");
        for r in 0..ctx.len() {
            let v = f.value(r).expect("total");
            prop_assert_eq!(&y.values[r], v);
            prop_assert_eq!(&c.values[r], v);
        }
    }

    /// The enhancement order on subsets coincides with reverse inclusion of
    /// downward closures.
    #[test]
    fn enhancement_order_matches_closure_inclusion(
        t in seeded_theory(),
        a in any::<u64>(),
        b in any::<u64>(),
    ) {
        let ctx = OrderedResources::from_theory(t).expect("order");
        let s = ResourceSet::from_mask(ctx.len(), a & mask_all(ctx.len()));
        let u = ResourceSet::from_mask(ctx.len(), b & mask_all(ctx.len()));
        let lhs = enh_order(&ctx, &s, &u);
        let rhs = down_closure(&ctx, &u).is_subset(&down_closure(&ctx, &s));
        prop_assert_eq!(lhs, rhs);
    }
}

fn mask_all(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn seeded_downward_closed(ctx: &OrderedResources, seed: u64) -> ResourceSet {
    let germ = ResourceSet::from_mask(ctx.len(), seed & mask_all(ctx.len()));
    let pick = down_closure(ctx, &germ);
    debug_assert!(is_downward_closed(ctx, &pick));
    pick
}

/// Pulling a valuation back through a mediating map and then taking its
/// cost does not in general agree with taking the cost first and pulling
/// the result back. This scans small reverse-inclusion maps over a chain
/// and checks that the two composites disagree somewhere.
#[test]
fn cost_and_pullback_do_not_commute() {
    let t = build(&FamilySpec::TruncatedAddition { max: 3 }, 0).expect("builds");
    let ctx = OrderedResources::from_theory(t).expect("order");
    let n = ctx.len();
    let mut found = 0usize;
    let mut compared = 0usize;
    // Constant maps certify trivially; the rotated masks add varied shapes.
    for map_seed in 1u64..200 {
        let images: Vec<ResourceSet> = (0..n)
            .map(|r| {
                let bits = if map_seed < (1 << n) {
                    map_seed
                } else {
                    map_seed.wrapping_mul(0x9e37_79b9).rotate_left(r as u32 * 7) % (1 << n)
                };
                ResourceSet::from_mask(n, bits.max(1))
            })
            .collect();
        let map = MediatingMap::new(SubsetOrderKind::ReverseInclusion, images);
        let Ok(cert) = certify_direct(map, &ctx, &ctx, 1 << 16) else {
            continue;
        };
        for fseed in 0u64..10 {
            let f = random_valuation(&ctx, fseed, false, DomainMode::Full);
            let pulled = pull_back(&cert, &ctx, &ctx, &f, PullbackMode::Min).expect("pull");
            let path_a = cost_monotone(&ctx, &PartialValuation::total(pulled.values), None)
                .expect("cost");
            let cost_first = cost_monotone(&ctx, &f, None).expect("cost");
            let path_b = pull_back(
                &cert,
                &ctx,
                &ctx,
                &PartialValuation::total(cost_first.values),
                PullbackMode::Min,
            )
            .expect("pull");
            compared += 1;
            if path_a.values != path_b.values {
                found += 1;
            }
        }
    }
    assert!(compared > 50, "search space too small: {compared}");
    assert!(
        found > 0,
        "expected the composites to disagree on some map/valuation pair"
    );
}
