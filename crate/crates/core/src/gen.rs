//! Built-in fixtures and seeded generators: parametric theory families,
//! random valuations, and convex fixtures for property testing.

use crate::convex::{ConvexTheory, Point};
use crate::error::{Error, Result};
use crate::monotone::PartialValuation;
use crate::order::{down_closure, up_closure, OrderedResources};
use crate::preorder::FinitePreorder;
use crate::rational::ExtRational;
use crate::set::ResourceSet;
use crate::theory::ResourceTheory;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Three resources e, a, b with e neutral, a ⊠ a = a, a ⊠ b = b ⊠ b = b,
/// free = {e, a}. The smallest theory whose order is not total.
pub fn tri() -> ResourceTheory {
    let names = vec!["e".to_string(), "a".to_string(), "b".to_string()];
    let table = |x: usize, y: usize| -> usize {
        match (x.min(y), x.max(y)) {
            (0, other) => other,
            (1, 1) => 1,
            _ => 2, // (1,2) and (2,2)
        }
    };
    ResourceTheory::from_deterministic_table(
        names,
        table,
        ResourceSet::from_members(3, [0, 1]),
        ResourceSet::singleton(3, 0),
    )
    .expect("tri is well formed")
}

/// The two-element union monoid on subsets of {x}: resources "0" and "x",
/// ⊠ = union, free = neutral = {"0"}.
pub fn um1() -> ResourceTheory {
    ResourceTheory::from_deterministic_table(
        vec!["0".to_string(), "x".to_string()],
        |a, b| a.max(b),
        ResourceSet::singleton(2, 0),
        ResourceSet::singleton(2, 0),
    )
    .expect("um1 is well formed")
}

/// A four-element preorder r1 ≽ r2, s1 ≽ s2 (indices 0..3) together with the
/// valuation f = (0, 1, 0, 1). f is not order preserving, yet its yield and
/// cost extensions are constant while f itself still witnesses the
/// nonconvertibilities (r1, s2) and (s1, r2) — returned as the third element.
pub fn p5() -> (FinitePreorder, PartialValuation, Vec<(usize, usize)>) {
    let labels = ["r1", "r2", "s1", "s2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let pre = FinitePreorder::from_pairs(labels, &[(0, 1), (2, 3)]).expect("p5 is a preorder");
    let f = PartialValuation::total(
        [0, 1, 0, 1].iter().map(|&v| ExtRational::from_int(v)).collect(),
    );
    (pre, f, vec![(0, 3), (2, 1)])
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Points {0, 1/2, 1} on the line with the bilinear combination
/// r ⊠ s = 1 - r - s + 2rs (the multiplicative monoid on {-1, 0, 1}
/// transported through x ↦ 2x - 1). Neutral is 1; free = {0, 1}.
pub fn cvx1() -> ConvexTheory {
    let names = vec!["0".to_string(), "1/2".to_string(), "1".to_string()];
    // Index-level table of (1 - r - s + 2rs) over values 0, 1/2, 1.
    let table = |a: usize, b: usize| -> usize {
        match (a.min(b), a.max(b)) {
            (0, 0) => 2,
            (0, 2) => 0,
            (2, 2) => 2,
            _ => 1, // any pair involving 1/2
        }
    };
    let theory = ResourceTheory::from_deterministic_table(
        names,
        table,
        ResourceSet::from_members(3, [0, 2]),
        ResourceSet::singleton(3, 2),
    )
    .expect("cvx1 is well formed");
    let points = vec![vec![ratio(0, 1)], vec![ratio(1, 2)], vec![ratio(1, 1)]];
    ConvexTheory::new(theory, points).expect("cvx1 points are consistent")
}

/// A planar diamond: p0 = (0,0), p1 = (1,0), p2 = (0,1), e = (1,1) with
/// ⊠ = coordinatewise minimum, neutral = {e}, free = {p0, e}. No three
/// distinct points are collinear, so bilinearity holds vacuously, and all
/// four named convex monotones are nonconstant.
pub fn cvx2() -> ConvexTheory {
    let names = ["p0", "p1", "p2", "e"].iter().map(|s| s.to_string()).collect();
    let coords = [(0, 0), (1, 0), (0, 1), (1, 1)];
    let table = move |a: usize, b: usize| -> usize {
        let x = coords[a].0.min(coords[b].0);
        let y = coords[a].1.min(coords[b].1);
        coords.iter().position(|&c| c == (x, y)).unwrap()
    };
    let theory = ResourceTheory::from_deterministic_table(
        names,
        table,
        ResourceSet::from_members(4, [0, 3]),
        ResourceSet::singleton(4, 3),
    )
    .expect("cvx2 is well formed");
    let points = coords
        .iter()
        .map(|&(x, y)| vec![ratio(x, 1), ratio(y, 1)])
        .collect();
    ConvexTheory::new(theory, points).expect("cvx2 points are consistent")
}

/// The carrier of `cvx1` but with ⊠ = numeric minimum: a perfectly valid
/// plain theory whose combination is not bilinear, so convex alignment is
/// not a 3-contraction for it. Used to show the convex checks have teeth.
pub fn cvx_min_broken() -> ConvexTheory {
    let names = vec!["0".to_string(), "1/2".to_string(), "1".to_string()];
    let theory = ResourceTheory::from_deterministic_table(
        names,
        |a, b| a.min(b),
        ResourceSet::from_members(3, [0, 2]),
        ResourceSet::singleton(3, 2),
    )
    .expect("min table is well formed");
    let points = vec![vec![ratio(0, 1)], vec![ratio(1, 2)], vec![ratio(1, 1)]];
    ConvexTheory::new(theory, points).expect("points are consistent")
}

/// Parametric theory families for seeded generation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// Subsets of a ground set of the given size under union; neutral and
    /// least element is the empty set. Free is the powerset of a seeded
    /// sub-ground-set (union closed by construction).
    UnionMonoid { ground: usize },
    /// {0, .., max} under saturating addition; free = {0} ∪ {k, .., max}
    /// for a seeded cutoff k.
    TruncatedAddition { max: usize },
    /// {0, .., max} under saturating addition, blurred: positive inputs
    /// combine to the two-element set {r+s, r+s+1} (saturated). The only
    /// built-in family with genuinely multi-valued combination.
    BlurredAddition { max: usize },
    /// {0, .., max, ∞} under minimum with neutral ∞. Free is {∞} plus a
    /// seeded subset (any subset is min-closed).
    TropicalMin { max: usize },
    /// Componentwise product of two member theories.
    Product {
        left: Box<FamilySpec>,
        right: Box<FamilySpec>,
    },
    /// One of the built-in theories: "tri", "um1", "cvx1", "cvx2".
    Builtin { name: String },
}

impl FamilySpec {
    /// Parses a CLI-style family name with an optional size parameter.
    pub fn from_name(family: &str, size: usize) -> Result<FamilySpec> {
        Ok(match family {
            "union-monoid" => FamilySpec::UnionMonoid { ground: size },
            "truncated-addition" => FamilySpec::TruncatedAddition { max: size },
            "blurred-addition" => FamilySpec::BlurredAddition { max: size },
            "tropical-min" => FamilySpec::TropicalMin { max: size },
            "tri" | "um1" | "cvx1" | "cvx2" => FamilySpec::Builtin {
                name: family.to_string(),
            },
            other => {
                return Err(Error::BadParameters(format!(
                    "unknown family `{other}`"
                )))
            }
        })
    }
}

fn subset_name(mask: u64, ground: usize) -> String {
    let members: Vec<String> = (0..ground)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i.to_string())
        .collect();
    format!("{{{}}}", members.join(","))
}

/// Materializes a family member. The seed only influences the degrees of
/// freedom the family leaves open (typically the free set); the carrier and
/// combination are determined by the spec.
pub fn build(spec: &FamilySpec, seed: u64) -> Result<ResourceTheory> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match spec {
        FamilySpec::UnionMonoid { ground } => {
            let g = *ground;
            if g == 0 || g > 5 {
                return Err(Error::BadParameters(
                    "union-monoid ground size must be in 1..=5".into(),
                ));
            }
            let n = 1usize << g;
            let names = (0..n as u64).map(|m| subset_name(m, g)).collect();
            let sub: u64 = rng.gen_range(0..n as u64);
            let free =
                ResourceSet::from_members(n, (0..n as u64).filter(|m| m & !sub == 0).map(|m| m as usize));
            ResourceTheory::from_deterministic_table(
                names,
                |a, b| a | b,
                free,
                ResourceSet::singleton(n, 0),
            )
        }
        FamilySpec::TruncatedAddition { max } => {
            let m = *max;
            if m == 0 || m > 30 {
                return Err(Error::BadParameters(
                    "truncated-addition max must be in 1..=30".into(),
                ));
            }
            let n = m + 1;
            let names = (0..n).map(|v| v.to_string()).collect();
            let k = rng.gen_range(1..=m + 1);
            let free = ResourceSet::from_members(n, std::iter::once(0).chain(k..n));
            ResourceTheory::from_deterministic_table(
                names,
                move |a, b| (a + b).min(m),
                free,
                ResourceSet::singleton(n, 0),
            )
        }
        FamilySpec::BlurredAddition { max } => {
            let m = *max;
            if m == 0 || m > 30 {
                return Err(Error::BadParameters(
                    "blurred-addition max must be in 1..=30".into(),
                ));
            }
            let n = m + 1;
            let names: Vec<String> = (0..n).map(|v| v.to_string()).collect();
            let entries = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).map(|(a, b)| {
                let prod = if a == 0 || b == 0 {
                    ResourceSet::singleton(n, (a + b).min(m))
                } else {
                    ResourceSet::from_members(n, [(a + b).min(m), (a + b + 1).min(m)])
                };
                (a, b, prod)
            });
            let k = rng.gen_range(1..=m + 1);
            let free = ResourceSet::from_members(n, std::iter::once(0).chain(k..n));
            ResourceTheory::new(names, entries, free, ResourceSet::singleton(n, 0))
        }
        FamilySpec::TropicalMin { max } => {
            let m = *max;
            if m > 30 {
                return Err(Error::BadParameters(
                    "tropical-min max must be at most 30".into(),
                ));
            }
            let n = m + 2; // 0..=max plus ∞ at index m + 1
            let names = (0..=m)
                .map(|v| v.to_string())
                .chain(std::iter::once("inf".to_string()))
                .collect();
            let mut free = ResourceSet::singleton(n, m + 1);
            for v in 0..=m {
                if rng.gen_bool(0.5) {
                    free.insert(v);
                }
            }
            ResourceTheory::from_deterministic_table(names, |a, b| a.min(b), free, ResourceSet::singleton(n, m + 1))
        }
        FamilySpec::Product { left, right } => {
            let l = build(left, seed ^ 0x9e37_79b9)?;
            let r = build(right, seed.rotate_left(17))?;
            product_theory(&l, &r)
        }
        FamilySpec::Builtin { name } => match name.as_str() {
            "tri" => Ok(tri()),
            "um1" => Ok(um1()),
            "cvx1" => Ok(cvx1().theory().clone()),
            "cvx2" => Ok(cvx2().theory().clone()),
            other => Err(Error::BadParameters(format!("unknown builtin `{other}`"))),
        },
    }
}

/// Componentwise product of two theories: pairs combine coordinatewise and a
/// pair is free (neutral) exactly when both coordinates are.
pub fn product_theory(l: &ResourceTheory, r: &ResourceTheory) -> Result<ResourceTheory> {
    let (nl, nr) = (l.len(), r.len());
    let n = nl
        .checked_mul(nr)
        .filter(|&n| n <= 4096)
        .ok_or_else(|| Error::BadParameters("product carrier too large".into()))?;
    let idx = |a: usize, b: usize| a * nr + b;
    let names = (0..nl)
        .flat_map(|a| (0..nr).map(move |b| (a, b)))
        .map(|(a, b)| format!("({}|{})", l.name(a), r.name(b)))
        .collect();
    let mut entries = Vec::new();
    for a in 0..n {
        for b in a..n {
            let (al, ar) = (a / nr, a % nr);
            let (bl, br) = (b / nr, b % nr);
            let pl = l.combine(al, bl);
            let pr = r.combine(ar, br);
            let mut prod = ResourceSet::empty(n);
            for x in pl.iter() {
                for y in pr.iter() {
                    prod.insert(idx(x, y));
                }
            }
            entries.push((a, b, prod));
        }
    }
    let lift = |sl: &ResourceSet, sr: &ResourceSet| {
        ResourceSet::from_members(
            n,
            sl.iter().flat_map(|x| sr.iter().map(move |y| idx(x, y))),
        )
    };
    ResourceTheory::new(names, entries, lift(l.free(), r.free()), lift(l.neutral(), r.neutral()))
}

/// How the domain of a random valuation is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomainMode {
    Full,
    RandomSubset,
    DownwardClosed,
    UpwardClosed,
}

/// Draws a seeded valuation over the ordered carrier. With `monotone` the
/// value of r is a random-nonnegative-weighted count of the resources r
/// dominates, which respects the order (and ties equivalent resources);
/// otherwise values are independent small integers.
pub fn random_valuation(
    ctx: &OrderedResources,
    seed: u64,
    monotone: bool,
    mode: DomainMode,
) -> PartialValuation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = ctx.len();
    let pre = ctx.order();
    let values: Vec<ExtRational> = if monotone {
        let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(0..5)).collect();
        (0..n)
            .map(|r| {
                let total: i64 = pre.down(r).iter().map(|s| weights[s]).sum();
                ExtRational::from_int(total)
            })
            .collect()
    } else {
        (0..n)
            .map(|_| ExtRational::from_ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
            .collect()
    };
    let domain = match mode {
        DomainMode::Full => ResourceSet::full(n),
        DomainMode::RandomSubset => {
            ResourceSet::from_members(n, (0..n).filter(|_| rng.gen_bool(0.5)))
        }
        DomainMode::DownwardClosed => {
            let base = ResourceSet::from_members(n, (0..n).filter(|_| rng.gen_bool(0.5)));
            down_closure(ctx, &base)
        }
        DomainMode::UpwardClosed => {
            let base = ResourceSet::from_members(n, (0..n).filter(|_| rng.gen_bool(0.5)));
            up_closure(ctx, &base)
        }
    };
    let entries = domain.iter().map(|r| (r, values[r].clone()));
    PartialValuation::from_entries(n, entries)
}

/// A seeded convex fixture: an intersection-closed family of subsets of a
/// small ground set, embedded as 0/1 indicator vectors with ⊠ = intersection
/// and the ground set as neutral. No three distinct 0/1 vectors are
/// collinear, so these are bilinear for free; the free set is the filter of
/// a nonempty member, which keeps all four named monotones nonconstant
/// (the empty set always lies outside it).
pub fn seeded_convex(ground: usize, seed: u64) -> Result<ConvexTheory> {
    if ground == 0 || ground > 5 {
        return Err(Error::BadParameters(
            "convex fixture ground size must be in 1..=5".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top: u64 = (1 << ground) - 1;
    let mut masks: Vec<u64> = vec![0, top];
    for _ in 0..ground + 1 {
        masks.push(rng.gen_range(0..=top));
    }
    // Close under intersection.
    loop {
        let mut added = false;
        for i in 0..masks.len() {
            for j in 0..masks.len() {
                let meet = masks[i] & masks[j];
                if !masks.contains(&meet) {
                    masks.push(meet);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    masks.sort_unstable();
    masks.dedup();
    let n = masks.len();
    let names = masks.iter().map(|&m| subset_name(m, ground)).collect();
    let index = |m: u64| masks.binary_search(&m).expect("closed under meet");
    let theory = ResourceTheory::from_deterministic_table(
        names,
        |a, b| index(masks[a] & masks[b]),
        {
            // Free = everything containing a seeded nonempty pivot.
            let pivot = loop {
                let m = masks[rng.gen_range(0..n)];
                if m != 0 {
                    break m;
                }
            };
            ResourceSet::from_members(n, (0..n).filter(|&i| masks[i] & pivot == pivot))
        },
        ResourceSet::singleton(n, index(top)),
    )?;
    let points: Vec<Point> = masks
        .iter()
        .map(|&m| (0..ground).map(|i| ratio((m >> i & 1) as i64, 1)).collect())
        .collect();
    ConvexTheory::new(theory, points)
}
