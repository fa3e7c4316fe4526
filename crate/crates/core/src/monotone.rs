//! Partial valuations, the f-max/f-min root optimizations, and the yield and
//! cost constructions.

use crate::error::{Error, Result};
use crate::order::{
    d_image, d_preimage, down_closure, is_downward_closed, is_upward_closed, OrderedResources,
};
use crate::preorder::FinitePreorder;
use crate::rational::ExtRational;
use crate::set::ResourceSet;
use serde::{Deserialize, Serialize};

/// A partial function from the carrier into the extended rationals, defined
/// exactly on `domain`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialValuation {
    domain: ResourceSet,
    values: Vec<Option<ExtRational>>,
}

impl PartialValuation {
    pub fn new(domain: ResourceSet, values: Vec<Option<ExtRational>>) -> Result<Self> {
        if values.len() != domain.universe() {
            return Err(Error::BadParameters(
                "valuation length differs from carrier size".into(),
            ));
        }
        for i in 0..values.len() {
            if domain.contains(i) != values[i].is_some() {
                return Err(Error::BadParameters(format!(
                    "valuation must be defined exactly on its domain (index {i})"
                )));
            }
        }
        Ok(PartialValuation { domain, values })
    }

    pub fn total(values: Vec<ExtRational>) -> Self {
        let domain = ResourceSet::full(values.len());
        PartialValuation {
            domain,
            values: values.into_iter().map(Some).collect(),
        }
    }

    pub fn from_entries(
        universe: usize,
        entries: impl IntoIterator<Item = (usize, ExtRational)>,
    ) -> Self {
        let mut domain = ResourceSet::empty(universe);
        let mut values = vec![None; universe];
        for (i, v) in entries {
            domain.insert(i);
            values[i] = Some(v);
        }
        PartialValuation { domain, values }
    }

    pub fn domain(&self) -> &ResourceSet {
        &self.domain
    }

    pub fn universe(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, r: usize) -> Option<&ExtRational> {
        self.values[r].as_ref()
    }

    pub fn is_total(&self) -> bool {
        self.domain.len() == self.universe()
    }

    /// Restricts the domain to `w`.
    pub fn restrict(&self, w: &ResourceSet) -> Self {
        let domain = self.domain.intersect(w);
        let values = (0..self.values.len())
            .map(|i| {
                if domain.contains(i) {
                    self.values[i].clone()
                } else {
                    None
                }
            })
            .collect();
        PartialValuation { domain, values }
    }

    /// Checks the valuation is order preserving on its own domain; returns
    /// the lexicographically first violating pair otherwise.
    pub fn monotone_on_domain(&self, pre: &FinitePreorder) -> std::result::Result<(), (usize, usize)> {
        for a in self.domain.iter() {
            for b in self.domain.iter() {
                if pre.holds(a, b) && self.values[a] < self.values[b] {
                    return Err((a, b));
                }
            }
        }
        Ok(())
    }
}

/// sup of the valuation over `S ∩ W`, with sup ∅ = -inf.
pub fn f_max(f: &PartialValuation, s: &ResourceSet) -> ExtRational {
    s.intersect(f.domain())
        .iter()
        .map(|r| f.value(r).unwrap().clone())
        .max()
        .unwrap_or(ExtRational::NegInf)
}

/// inf of the valuation over `S ∩ W`, with inf ∅ = +inf.
pub fn f_min(f: &PartialValuation, s: &ResourceSet) -> ExtRational {
    s.intersect(f.domain())
        .iter()
        .map(|r| f.value(r).unwrap().clone())
        .min()
        .unwrap_or(ExtRational::PosInf)
}

/// How a monotone was built; serialized with the values so reports are
/// self-describing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "kebab-case")]
pub enum Provenance {
    Yield { d: String, window: Vec<String> },
    Cost { d: String, window: Vec<String> },
    Pullback { order: String, mode: String },
    Contraction { kind: String },
    Convex { kind: String },
    User,
}

/// A total extended-rational map on the carrier, tagged with its construction
/// and the outcome of its monotonicity self-check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneFn {
    pub values: Vec<ExtRational>,
    pub provenance: Provenance,
    /// Outcome of `is_monotone` against the order it was built over.
    pub monotone_checked: bool,
}

/// Order preservation of a total valuation into the extended rationals with
/// their usual order; the lexicographically first witness `(a, b)` has
/// a ≽ b but f(a) < f(b).
pub fn is_monotone(
    values: &[ExtRational],
    pre: &FinitePreorder,
) -> std::result::Result<(), (usize, usize)> {
    assert_eq!(values.len(), pre.len());
    for a in 0..values.len() {
        for b in 0..values.len() {
            if pre.holds(a, b) && values[a] < values[b] {
                return Err((a, b));
            }
        }
    }
    Ok(())
}

fn resolve_d<'a>(
    ctx: &OrderedResources,
    d: Option<&'a ResourceSet>,
) -> Result<Option<&'a ResourceSet>> {
    match d {
        None => Ok(None),
        Some(d) => {
            if ctx.theory().is_none() {
                return Err(Error::DRequiresTheory);
            }
            let closure = down_closure(ctx, d);
            if closure != *d {
                let escapee = closure.difference(d).iter().next().unwrap();
                let from = d
                    .iter()
                    .find(|&r| ctx.down(r).contains(escapee))
                    .unwrap_or(escapee);
                return Err(Error::DNotDownwardClosed { from, escapee });
            }
            Ok(Some(d))
        }
    }
}

/// Yield: r ↦ sup { f(w) : w ∈ D ⊠ r, w ∈ W }. `d = None` means D = free,
/// which also works on preorder-backed contexts (D ⊠ r is then ↓r).
pub fn yield_monotone(
    ctx: &OrderedResources,
    f: &PartialValuation,
    d: Option<&ResourceSet>,
) -> Result<MonotoneFn> {
    let d = resolve_d(ctx, d)?;
    let values: Vec<ExtRational> = (0..ctx.len())
        .map(|r| {
            let reach = match (d, ctx.theory()) {
                (Some(d), Some(t)) => d_image(t, d, r),
                _ => ctx.down(r),
            };
            f_max(f, &reach)
        })
        .collect();
    let checked = is_monotone(&values, &ctx.order()).is_ok();
    Ok(MonotoneFn {
        values,
        provenance: Provenance::Yield {
            d: describe_d(ctx, d),
            window: describe_set(ctx, f.domain()),
        },
        monotone_checked: checked,
    })
}

/// Cost: r ↦ inf { f(w) : r ∈ D ⊠ w, w ∈ W }.
pub fn cost_monotone(
    ctx: &OrderedResources,
    f: &PartialValuation,
    d: Option<&ResourceSet>,
) -> Result<MonotoneFn> {
    let d = resolve_d(ctx, d)?;
    let values: Vec<ExtRational> = (0..ctx.len())
        .map(|r| {
            let reached_from = match (d, ctx.theory()) {
                (Some(d), Some(t)) => d_preimage(t, d, r),
                _ => ctx.up(r),
            };
            f_min(f, &reached_from)
        })
        .collect();
    let checked = is_monotone(&values, &ctx.order()).is_ok();
    Ok(MonotoneFn {
        values,
        provenance: Provenance::Cost {
            d: describe_d(ctx, d),
            window: describe_set(ctx, f.domain()),
        },
        monotone_checked: checked,
    })
}

fn describe_d(ctx: &OrderedResources, d: Option<&ResourceSet>) -> String {
    match d {
        None => "free".to_string(),
        Some(d) => describe_set(ctx, d).join(","),
    }
}

fn describe_set(ctx: &OrderedResources, s: &ResourceSet) -> Vec<String> {
    s.iter().map(|r| ctx.label(r).to_string()).collect()
}

/// For a valuation monotone on its own domain, Yield and Cost with D = free
/// both restrict back to the valuation on the domain. Errors if the input is
/// not monotone on its domain; returns false only on theorem failure (never,
/// for valid inputs).
pub fn extension_coincidence_check(ctx: &OrderedResources, f: &PartialValuation) -> Result<bool> {
    if let Err((a, b)) = f.monotone_on_domain(&ctx.order()) {
        return Err(Error::FNotMonotoneOnDomain {
            a: ctx.label(a).to_string(),
            b: ctx.label(b).to_string(),
        });
    }
    let y = yield_monotone(ctx, f, None)?;
    let c = cost_monotone(ctx, f, None)?;
    Ok(f.domain()
        .iter()
        .all(|r| &y.values[r] == f.value(r).unwrap() && &c.values[r] == f.value(r).unwrap()))
}

/// D-image and D-preimage maps for downward closed D are order preserving
/// into (DC, ⊇) and (UC, ⊆) respectively; checked directly.
pub fn check_d_maps_order_preserving(
    theory: &crate::theory::ResourceTheory,
    d: &ResourceSet,
) -> Result<bool> {
    let ctx = OrderedResources::from_theory(theory.clone())?;
    if !is_downward_closed(&ctx, d) {
        let closure = down_closure(&ctx, d);
        let escapee = closure.difference(d).iter().next().unwrap();
        return Err(Error::DNotDownwardClosed { from: escapee, escapee });
    }
    let order = ctx.order();
    for r in 0..theory.len() {
        for s in 0..theory.len() {
            if !order.holds(r, s) {
                continue;
            }
            // Images land in DC ordered by ⊇; preimages in UC ordered by ⊆.
            if !d_image(theory, d, s).is_subset(&d_image(theory, d, r)) {
                return Ok(false);
            }
            if !d_preimage(theory, d, r).is_subset(&d_preimage(theory, d, s)) {
                return Ok(false);
            }
        }
    }
    // The images and preimages really are closed sets.
    for r in 0..theory.len() {
        if !is_downward_closed(&ctx, &d_image(theory, d, r)) {
            return Ok(false);
        }
        if !is_upward_closed(&ctx, &d_preimage(theory, d, r)) {
            return Ok(false);
        }
    }
    Ok(true)
}
