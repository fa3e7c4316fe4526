//! Enhancement/degradation orders on subsets, mediating maps between
//! theories, their certification, and the pull-back of monotones.

use crate::error::{Error, Result};
use crate::monotone::{f_max, f_min, is_monotone, MonotoneFn, PartialValuation, Provenance};
use crate::order::{
    down_closure, is_downward_closed, is_upward_closed, up_closure, OrderedResources,
};
use crate::preorder::FinitePreorder;
use crate::set::ResourceSet;
use crate::theory::ResourceTheory;
use serde::{Deserialize, Serialize};

/// The four subset orders used as mediating preorders.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsetOrderKind {
    Enhancement,
    Degradation,
    Inclusion,
    ReverseInclusion,
}

/// S ≽_enh T: every element of T is dominated by some element of S.
/// Computed via the closure characterization ↓(S) ⊇ ↓(T); in particular
/// S ≽_enh ∅ holds for every S.
pub fn enh_order(ctx: &OrderedResources, s: &ResourceSet, t: &ResourceSet) -> bool {
    down_closure(ctx, t).is_subset(&down_closure(ctx, s))
}

/// S ≽_deg T: every element of S dominates some element of T. Computed via
/// ↑(S) ⊆ ↑(T); in particular ∅ ≽_deg T for every T.
pub fn deg_order(ctx: &OrderedResources, s: &ResourceSet, t: &ResourceSet) -> bool {
    up_closure(ctx, s).is_subset(&up_closure(ctx, t))
}

fn subset_holds(
    ctx: &OrderedResources,
    kind: SubsetOrderKind,
    s: &ResourceSet,
    t: &ResourceSet,
) -> bool {
    match kind {
        SubsetOrderKind::Enhancement => enh_order(ctx, s, t),
        SubsetOrderKind::Degradation => deg_order(ctx, s, t),
        SubsetOrderKind::Inclusion => t.is_subset(s),
        SubsetOrderKind::ReverseInclusion => s.is_subset(t),
    }
}

/// Label for a subset, e.g. `{e,a}`; members in carrier order.
pub fn subset_label(ctx: &OrderedResources, s: &ResourceSet) -> String {
    let inner: Vec<&str> = s.iter().map(|r| ctx.label(r)).collect();
    format!("{{{}}}", inner.join(","))
}

/// Materializes the chosen order on the full powerset; subsets are indexed by
/// bit mask, so subset index i has members given by the bits of i.
pub fn powerset_preorder(
    ctx: &OrderedResources,
    kind: SubsetOrderKind,
    cap: usize,
) -> Result<FinitePreorder> {
    let n = ctx.len();
    if n >= 20 || (1usize << n) > cap {
        return Err(Error::CarrierTooLarge {
            size: 1usize.checked_shl(n as u32).unwrap_or(usize::MAX),
            cap,
        });
    }
    let count = 1usize << n;
    let sets: Vec<ResourceSet> = (0..count)
        .map(|m| ResourceSet::from_mask(n, m as u64))
        .collect();
    let labels: Vec<String> = sets.iter().map(|s| subset_label(ctx, s)).collect();
    let mut rel = vec![false; count * count];
    for (i, si) in sets.iter().enumerate() {
        for (j, sj) in sets.iter().enumerate() {
            rel[i * count + j] = subset_holds(ctx, kind, si, sj);
        }
    }
    FinitePreorder::new(labels, rel)
}

/// A set-valued map from a source carrier into a target carrier, with the
/// subset order its images are meant to be compared under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MediatingMap {
    pub kind: SubsetOrderKind,
    /// map[r] ⊆ target carrier.
    pub map: Vec<ResourceSet>,
}

impl MediatingMap {
    pub fn new(kind: SubsetOrderKind, map: Vec<ResourceSet>) -> Self {
        MediatingMap { kind, map }
    }

    pub fn source_len(&self) -> usize {
        self.map.len()
    }

    /// Image of a set: the union of member images.
    pub fn image(&self, s: &ResourceSet, target_len: usize) -> ResourceSet {
        let mut out = ResourceSet::empty(target_len);
        for r in s.iter() {
            out.union_in_place(&self.map[r]);
        }
        out
    }

    /// r ↦ F(r) ∩ window. The caller is responsible for the closure
    /// condition; use `restrict_certified` to keep a certificate.
    pub fn restricted(&self, window: &ResourceSet) -> Self {
        MediatingMap {
            kind: self.kind,
            map: self.map.iter().map(|img| img.intersect(window)).collect(),
        }
    }
}

/// Copy_n: r ↦ the n-fold combination r ⊠ ... ⊠ r (a set, since ⊠ is
/// set-valued), compared under ≽_enh.
pub fn copy_map(theory: &ResourceTheory, n: usize) -> Result<MediatingMap> {
    if n < 1 {
        return Err(Error::BadParameters("copy power must be >= 1".into()));
    }
    let size = theory.len();
    let map = (0..size)
        .map(|r| {
            let mut acc = ResourceSet::singleton(size, r);
            for _ in 1..n {
                acc = theory.combine_sets(&acc, &ResourceSet::singleton(size, r));
            }
            acc
        })
        .collect();
    Ok(MediatingMap::new(SubsetOrderKind::Enhancement, map))
}

/// Aug_C: r ↦ C ⊠ r, compared under ≽_enh.
pub fn aug_map(theory: &ResourceTheory, c: &ResourceSet) -> MediatingMap {
    let size = theory.len();
    let map = (0..size)
        .map(|r| theory.combine_sets(c, &ResourceSet::singleton(size, r)))
        .collect();
    MediatingMap::new(SubsetOrderKind::Enhancement, map)
}

/// One checked sufficient condition, with a witness when it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionOutcome {
    pub name: &'static str,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Result of testing the sufficient conditions certifying a map as order
/// preserving into the enhancement order on target subsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnhMediatingReport {
    pub conditions: Vec<ConditionOutcome>,
}

impl EnhMediatingReport {
    /// Any single passing condition set certifies the map.
    pub fn certified(&self) -> Option<&'static str> {
        self.conditions.iter().find(|c| c.holds).map(|c| c.name)
    }
}

/// Checks the three alternative sufficient-condition sets for order
/// preservation of F into (P(Q), ≽_enh):
///
/// 1. primary: F(free_R ⊠ r) ⊆ free_Q ⊠ F(r) for every r;
/// 2. exact star morphism: F(r ⊠ s) = F(r) ⊠ F(s) for all r, s, together
///    with F(free_R) ⊆ free_Q ⊠ F(neutral_R);
/// 3. lax star morphism: F(r ⊠ s) ⊆ F(r) ⊠ F(s) together with
///    F(free_R) ⊆ free_Q.
pub fn check_enh_mediating(
    f: &MediatingMap,
    source: &ResourceTheory,
    target: &ResourceTheory,
) -> EnhMediatingReport {
    let qn = target.len();
    let img = |s: &ResourceSet| f.image(s, qn);

    let mut primary = ConditionOutcome {
        name: "primary",
        holds: true,
        witness: None,
    };
    for r in 0..source.len() {
        let lhs = img(&source.downset(r));
        let rhs = target.combine_sets(target.free(), &f.map[r]);
        if !lhs.is_subset(&rhs) {
            primary.holds = false;
            primary.witness = Some(source.name(r).to_string());
            break;
        }
    }

    let mut star_exact = ConditionOutcome {
        name: "exact-star-morphism+free-preserving-0",
        holds: true,
        witness: None,
    };
    'exact: for r in 0..source.len() {
        for s in 0..source.len() {
            let lhs = img(source.combine(r, s));
            let rhs = target.combine_sets(&f.map[r], &f.map[s]);
            if lhs != rhs {
                star_exact.holds = false;
                star_exact.witness = Some(format!("{},{}", source.name(r), source.name(s)));
                break 'exact;
            }
        }
    }
    if star_exact.holds {
        let lhs = img(source.free());
        let rhs = target.combine_sets(target.free(), &img(source.neutral()));
        if !lhs.is_subset(&rhs) {
            star_exact.holds = false;
            star_exact.witness = Some("F(free) not within free_Q x F(neutral)".into());
        }
    }

    let mut star_lax = ConditionOutcome {
        name: "lax-star-morphism+free-preserving-1",
        holds: true,
        witness: None,
    };
    'lax: for r in 0..source.len() {
        for s in 0..source.len() {
            let lhs = img(source.combine(r, s));
            let rhs = target.combine_sets(&f.map[r], &f.map[s]);
            if !lhs.is_subset(&rhs) {
                star_lax.holds = false;
                star_lax.witness = Some(format!("{},{}", source.name(r), source.name(s)));
                break 'lax;
            }
        }
    }
    if star_lax.holds && !img(source.free()).is_subset(target.free()) {
        star_lax.holds = false;
        star_lax.witness = Some("F(free) not within free_Q".into());
    }

    EnhMediatingReport {
        conditions: vec![primary, star_exact, star_lax],
    }
}

/// Result of the degradation-side certification of F = G^(-1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegMediatingReport {
    pub conditions: Vec<ConditionOutcome>,
}

impl DegMediatingReport {
    /// All three conditions must hold.
    pub fn certified(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }
}

/// Certifies F as order preserving into (P(Q), ≽_deg) by exhibiting a map
/// G: Q → R with F = G^(-1), G(p ⊠ q) ⊇ G(p) ⊠ G(q), and G(free_Q) ⊇ free_R.
pub fn check_deg_mediating(
    f: &MediatingMap,
    g: &[usize],
    source: &ResourceTheory,
    target: &ResourceTheory,
) -> DegMediatingReport {
    assert_eq!(g.len(), target.len());
    let mut inverse = ConditionOutcome {
        name: "F-is-preimage-of-G",
        holds: true,
        witness: None,
    };
    for r in 0..source.len() {
        let preimage = ResourceSet::from_members(
            target.len(),
            (0..target.len()).filter(|&q| g[q] == r),
        );
        if preimage != f.map[r] {
            inverse.holds = false;
            inverse.witness = Some(source.name(r).to_string());
            break;
        }
    }

    let g_image = |s: &ResourceSet| {
        ResourceSet::from_members(source.len(), s.iter().map(|q| g[q]))
    };

    let mut star = ConditionOutcome {
        name: "star-comorphism",
        holds: true,
        witness: None,
    };
    'star: for p in 0..target.len() {
        for q in 0..target.len() {
            let lhs = g_image(target.combine(p, q));
            let rhs = source.combine_sets(
                &ResourceSet::singleton(source.len(), g[p]),
                &ResourceSet::singleton(source.len(), g[q]),
            );
            if !rhs.is_subset(&lhs) {
                star.holds = false;
                star.witness = Some(format!("{},{}", target.name(p), target.name(q)));
                break 'star;
            }
        }
    }

    let free_onto = {
        let holds = source.free().is_subset(&g_image(target.free()));
        ConditionOutcome {
            name: "free-surjectivity",
            holds,
            witness: (!holds).then(|| "G(free_Q) misses part of free_R".into()),
        }
    };

    DegMediatingReport {
        conditions: vec![inverse, star, free_onto],
    }
}

/// A mediating map together with how its order preservation was established.
#[derive(Clone, Debug)]
pub struct CertifiedMap {
    pub map: MediatingMap,
    pub how: String,
}

/// Certifies via the enhancement-order lemma conditions.
pub fn certify_enh(
    f: MediatingMap,
    source: &ResourceTheory,
    target: &ResourceTheory,
) -> Result<CertifiedMap> {
    let report = check_enh_mediating(&f, source, target);
    match report.certified() {
        Some(name) => Ok(CertifiedMap {
            map: f,
            how: format!("enh-lemma:{name}"),
        }),
        None => Err(Error::UncertifiedInput(
            "as enhancement-order preserving".into(),
        )),
    }
}

/// Certifies via the degradation-order lemma conditions.
pub fn certify_deg(
    f: MediatingMap,
    g: &[usize],
    source: &ResourceTheory,
    target: &ResourceTheory,
) -> Result<CertifiedMap> {
    let report = check_deg_mediating(&f, g, source, target);
    if report.certified() {
        Ok(CertifiedMap {
            map: f,
            how: "deg-lemma".into(),
        })
    } else {
        Err(Error::UncertifiedInput(
            "as degradation-order preserving".into(),
        ))
    }
}

/// Certifies directly: materializes the target powerset under the map's
/// declared order and checks order preservation of r ↦ F(r) exhaustively.
pub fn certify_direct(
    f: MediatingMap,
    source: &OrderedResources,
    target: &OrderedResources,
    cap: usize,
) -> Result<CertifiedMap> {
    let source_order = source.order();
    let power = powerset_preorder(target, f.kind, cap)?;
    let index_map: Vec<usize> = f.map.iter().map(|img| img.mask() as usize).collect();
    match crate::preorder::is_order_preserving(&index_map, &source_order, &power) {
        Ok(()) => Ok(CertifiedMap {
            map: f,
            how: "direct".into(),
        }),
        Err((a, b)) => Err(Error::NotOrderPreserving {
            a: source.label(a).to_string(),
            b: source.label(b).to_string(),
        }),
    }
}

/// Accepts the caller's own certification (a force flag); pull-backs still
/// run the monotonicity self-check.
pub fn assert_certified(f: MediatingMap) -> CertifiedMap {
    CertifiedMap {
        map: f,
        how: "asserted".into(),
    }
}

/// Restricts a certified map by a window, preserving the certificate: the
/// window must be upward closed in the target (enhancement kind) or downward
/// closed (degradation kind); plain inclusions accept any window.
pub fn restrict_certified(
    cert: &CertifiedMap,
    target: &OrderedResources,
    window: &ResourceSet,
) -> Result<CertifiedMap> {
    match cert.map.kind {
        SubsetOrderKind::Enhancement => {
            if !is_upward_closed(target, window) {
                return Err(Error::WindowClosureMismatch(
                    "enhancement-order windows must be upward closed".into(),
                ));
            }
        }
        SubsetOrderKind::Degradation => {
            if !is_downward_closed(target, window) {
                return Err(Error::WindowClosureMismatch(
                    "degradation-order windows must be downward closed".into(),
                ));
            }
        }
        SubsetOrderKind::Inclusion | SubsetOrderKind::ReverseInclusion => {}
    }
    Ok(CertifiedMap {
        map: cert.map.restricted(window),
        how: format!("{}+window", cert.how),
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PullbackMode {
    Max,
    Min,
}

/// Pulls a root valuation on the target back through a certified mediating
/// map: r ↦ f-max (or f-min) of the root over F(r).
///
/// Requirements follow the mode: enhancement maps pull back maxima of
/// valuations monotone on an upward closed domain; degradation maps pull
/// back minima over downward closed domains; inclusion-order maps accept any
/// partial valuation.
pub fn pull_back(
    cert: &CertifiedMap,
    source: &OrderedResources,
    target: &OrderedResources,
    root: &PartialValuation,
    mode: PullbackMode,
) -> Result<MonotoneFn> {
    let kind = cert.map.kind;
    match (kind, mode) {
        (SubsetOrderKind::Enhancement, PullbackMode::Max)
        | (SubsetOrderKind::Degradation, PullbackMode::Min) => {
            let target_order = target.order();
            if let Err((a, b)) = root.monotone_on_domain(&target_order) {
                return Err(Error::FNotMonotoneOnDomain {
                    a: target.label(a).to_string(),
                    b: target.label(b).to_string(),
                });
            }
            let w = root.domain();
            let ok = match mode {
                PullbackMode::Max => is_upward_closed(target, w),
                PullbackMode::Min => is_downward_closed(target, w),
            };
            if !ok {
                return Err(Error::ClosureMismatch(format!(
                    "root domain must be {} closed in the target",
                    if mode == PullbackMode::Max { "upward" } else { "downward" }
                )));
            }
        }
        (SubsetOrderKind::Inclusion, PullbackMode::Max)
        | (SubsetOrderKind::ReverseInclusion, PullbackMode::Min) => {}
        _ => {
            return Err(Error::BadParameters(format!(
                "mediating order {kind:?} does not support {mode:?} pull-back"
            )));
        }
    }
    let values: Vec<_> = cert
        .map
        .map
        .iter()
        .map(|img| match mode {
            PullbackMode::Max => f_max(root, img),
            PullbackMode::Min => f_min(root, img),
        })
        .collect();
    let checked = is_monotone(&values, &source.order()).is_ok();
    Ok(MonotoneFn {
        values,
        provenance: Provenance::Pullback {
            order: format!("{:?}", kind),
            mode: match mode {
                PullbackMode::Max => "max".into(),
                PullbackMode::Min => "min".into(),
            },
        },
        monotone_checked: checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{tri, um1};
    use crate::rational::ExtRational;

    fn tri_ctx() -> OrderedResources {
        OrderedResources::from_theory(tri()).unwrap()
    }

    /// Brute-force oracle straight from the definitions: an enhancement
    /// assigns to every element of T a dominating element of S; a
    /// degradation assigns to every element of S a dominated element of T.
    fn enh_oracle(ctx: &OrderedResources, s: &ResourceSet, t: &ResourceSet) -> bool {
        t.iter().all(|b| s.iter().any(|a| ctx.dominates(a, b)))
    }

    fn deg_oracle(ctx: &OrderedResources, s: &ResourceSet, t: &ResourceSet) -> bool {
        s.iter().all(|a| t.iter().any(|b| ctx.dominates(a, b)))
    }

    #[test]
    fn subset_orders_match_function_existence_oracles() {
        for theory in [tri(), um1()] {
            let n = theory.len();
            let ctx = OrderedResources::from_theory(theory).unwrap();
            for sm in 0..(1u64 << n) {
                for tm in 0..(1u64 << n) {
                    let s = ResourceSet::from_mask(n, sm);
                    let t = ResourceSet::from_mask(n, tm);
                    assert_eq!(enh_order(&ctx, &s, &t), enh_oracle(&ctx, &s, &t));
                    assert_eq!(deg_order(&ctx, &s, &t), deg_oracle(&ctx, &s, &t));
                    // Closure characterizations agree with set_order too.
                    assert_eq!(
                        enh_order(&ctx, &s, &t),
                        ctx.theory().unwrap().set_order(&s, &t)
                    );
                }
            }
        }
    }

    #[test]
    fn empty_set_conventions() {
        let ctx = tri_ctx();
        let empty = ResourceSet::empty(3);
        let full = ResourceSet::full(3);
        assert!(enh_order(&ctx, &empty, &empty));
        assert!(enh_order(&ctx, &full, &empty));
        assert!(!enh_order(&ctx, &empty, &full));
        assert!(deg_order(&ctx, &empty, &full));
        assert!(!deg_order(&ctx, &full, &empty));
    }

    #[test]
    fn tri_subset_order_examples() {
        let ctx = tri_ctx();
        let s = |m: &[usize]| ResourceSet::from_members(3, m.iter().copied());
        assert!(enh_order(&ctx, &s(&[0]), &s(&[0, 1])));
        assert!(!enh_order(&ctx, &s(&[2]), &s(&[1])));
        assert!(deg_order(&ctx, &s(&[0]), &s(&[1])));
        assert!(!deg_order(&ctx, &s(&[2]), &s(&[1])));
    }

    #[test]
    fn powerset_preorder_restricted_to_singletons_is_resource_order() {
        let ctx = tri_ctx();
        let power = powerset_preorder(&ctx, SubsetOrderKind::Enhancement, 1 << 10).unwrap();
        let order = ctx.order();
        for r in 0..3 {
            for s in 0..3 {
                assert_eq!(power.holds(1 << r, 1 << s), order.holds(r, s));
            }
        }
        // Single-point carrier: {x} ≽_enh ∅ but not conversely.
        let point = OrderedResources::Preorder(
            FinitePreorder::from_pairs(vec!["x".into()], &[(0, 0)]).unwrap(),
        );
        let p = powerset_preorder(&point, SubsetOrderKind::Enhancement, 16).unwrap();
        assert!(p.holds(1, 0) && !p.holds(0, 1));
    }

    #[test]
    fn copy_and_aug_examples() {
        let t = tri();
        let copy2 = copy_map(&t, 2).unwrap();
        assert_eq!(copy2.map[1], ResourceSet::singleton(3, 1)); // a ⊠ a = {a}
        let aug_neutral = aug_map(&t, t.neutral());
        for r in 0..3 {
            assert_eq!(aug_neutral.map[r], ResourceSet::singleton(3, r));
        }
        let aug_b = aug_map(&t, &ResourceSet::singleton(3, 2));
        assert_eq!(aug_b.map[0], ResourceSet::singleton(3, 2)); // b ⊠ e = {b}
    }

    #[test]
    fn aug_satisfies_primary_condition_and_copy_the_lax_one() {
        let t = tri();
        let report = check_enh_mediating(&aug_map(&t, &ResourceSet::singleton(3, 2)), &t, &t);
        assert!(report.conditions[0].holds, "{report:?}");
        let report = check_enh_mediating(&copy_map(&t, 2).unwrap(), &t, &t);
        assert!(
            report.conditions[2].holds,
            "copy should satisfy the lax star-morphism conditions: {report:?}"
        );
        assert!(report.certified().is_some());
    }

    #[test]
    fn deg_certificate_for_identity_embedding() {
        let t = tri();
        let f = MediatingMap::new(
            SubsetOrderKind::Degradation,
            (0..3).map(|r| ResourceSet::singleton(3, r)).collect(),
        );
        let report = check_deg_mediating(&f, &[0, 1, 2], &t, &t);
        assert!(report.certified(), "{report:?}");
        // Constant G to a non-free element fails free surjectivity.
        let f_const = MediatingMap::new(
            SubsetOrderKind::Degradation,
            vec![
                ResourceSet::empty(3),
                ResourceSet::empty(3),
                ResourceSet::full(3),
            ],
        );
        let report = check_deg_mediating(&f_const, &[2, 2, 2], &t, &t);
        assert!(!report.conditions[2].holds);
    }

    #[test]
    fn restriction_checks_window_closure() {
        let t = tri();
        let ctx = tri_ctx();
        let cert = certify_enh(aug_map(&t, t.free()), &t, &t).unwrap();
        // {a} is not upward closed (e is above a).
        assert!(matches!(
            restrict_certified(&cert, &ctx, &ResourceSet::singleton(3, 1)),
            Err(Error::WindowClosureMismatch(_))
        ));
        let full = restrict_certified(&cert, &ctx, &ResourceSet::full(3)).unwrap();
        assert_eq!(full.map, cert.map);
        let empty = restrict_certified(&cert, &ctx, &ResourceSet::empty(3)).unwrap();
        assert!(empty.map.map.iter().all(|img| img.is_empty()));
    }

    #[test]
    fn pull_back_through_neutral_augmentation_is_identity() {
        let t = tri();
        let ctx = tri_ctx();
        let cert = certify_enh(aug_map(&t, t.neutral()), &t, &t).unwrap();
        let root = PartialValuation::total(vec![
            ExtRational::from_int(2),
            ExtRational::from_int(1),
            ExtRational::from_int(9),
        ]);
        let pulled = pull_back(&cert, &ctx, &ctx, &root, PullbackMode::Max).unwrap();
        assert_eq!(pulled.values, vec![
            ExtRational::from_int(2),
            ExtRational::from_int(1),
            ExtRational::from_int(9),
        ]);
        assert!(pulled.monotone_checked);
    }

    #[test]
    fn pull_back_through_copy_map() {
        let t = tri();
        let ctx = tri_ctx();
        let cert = certify_enh(copy_map(&t, 2).unwrap(), &t, &t).unwrap();
        // W = {e,a,b} (upward closed), f(e)=1, f(a)=1, f(b)=5.
        let root = PartialValuation::total(vec![
            ExtRational::from_int(1),
            ExtRational::from_int(1),
            ExtRational::from_int(5),
        ]);
        let pulled = pull_back(&cert, &ctx, &ctx, &root, PullbackMode::Max).unwrap();
        assert_eq!(pulled.values[2], ExtRational::from_int(5));
        assert!(pulled.monotone_checked);
    }

    #[test]
    fn pull_back_rejects_uncertifiable_combinations() {
        let t = tri();
        let ctx = tri_ctx();
        let cert = certify_enh(aug_map(&t, t.neutral()), &t, &t).unwrap();
        let root = PartialValuation::total(vec![ExtRational::zero(); 3]);
        assert!(matches!(
            pull_back(&cert, &ctx, &ctx, &root, PullbackMode::Min),
            Err(Error::BadParameters(_))
        ));
        // Non-monotone root rejected for enhancement/max.
        let bad = PartialValuation::total(vec![
            ExtRational::zero(),
            ExtRational::one(),
            ExtRational::zero(),
        ]);
        assert!(matches!(
            pull_back(&cert, &ctx, &ctx, &bad, PullbackMode::Max),
            Err(Error::FNotMonotoneOnDomain { .. })
        ));
    }

    #[test]
    fn u_image_map_is_enh_order_preserving() {
        // r ↦ U ⊠ r is order preserving into ≽_enh for every U; because the
        // carrier is tiny we can certify directly on the powerset.
        let t = tri();
        let ctx = tri_ctx();
        for um in 0..8u64 {
            let u = ResourceSet::from_mask(3, um);
            let f = MediatingMap::new(SubsetOrderKind::Enhancement, {
                (0..3)
                    .map(|r| t.combine_sets(&u, &ResourceSet::singleton(3, r)))
                    .collect()
            });
            assert!(certify_direct(f, &ctx, &ctx, 1 << 10).is_ok(), "U = {um:b}");
        }
    }
}
