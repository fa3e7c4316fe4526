//! k-distinguishability theories over deterministic bases, k-contraction
//! certificates, and the monotone constructions they support.

use crate::error::{Error, Result};
use crate::monotone::{is_monotone, MonotoneFn, Provenance};
use crate::order::{down_closure, is_downward_closed, is_upward_closed, OrderedResources};
use crate::rational::ExtRational;
use crate::set::ResourceSet;
use crate::theory::ResourceTheory;

/// Default cap on the materialized tuple-carrier size n^k.
pub const DEFAULT_TUPLE_CAP: usize = 1_000_000;

/// A theory in which every combination is a single resource.
#[derive(Clone, Debug)]
pub struct DeterministicTheory {
    theory: ResourceTheory,
}

impl DeterministicTheory {
    pub fn new(theory: ResourceTheory) -> Result<Self> {
        for a in 0..theory.len() {
            for b in a..theory.len() {
                let got = theory.combine(a, b).len();
                if got != 1 {
                    return Err(Error::BaseNotDeterministic {
                        a: theory.name(a).to_string(),
                        b: theory.name(b).to_string(),
                        got,
                    });
                }
            }
        }
        Ok(DeterministicTheory { theory })
    }

    pub fn theory(&self) -> &ResourceTheory {
        &self.theory
    }

    pub fn len(&self) -> usize {
        self.theory.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theory.is_empty()
    }

    /// The unique element of r ⊠ s.
    pub fn table(&self, r: usize, s: usize) -> usize {
        self.theory.combine(r, s).iter().next().expect("deterministic")
    }
}

/// The materialized theory of k-tuples under componentwise combination.
#[derive(Clone, Debug)]
pub struct TupleTheory {
    theory: ResourceTheory,
    base_len: usize,
    k: usize,
    constrained: bool,
}

impl TupleTheory {
    pub fn theory(&self) -> &ResourceTheory {
        &self.theory
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base_len(&self) -> usize {
        self.base_len
    }

    pub fn constrained(&self) -> bool {
        self.constrained
    }

    pub fn len(&self) -> usize {
        self.theory.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theory.is_empty()
    }

    /// Index of the tuple with the given components.
    pub fn index_of(&self, components: &[usize]) -> usize {
        assert_eq!(components.len(), self.k);
        components
            .iter()
            .fold(0, |acc, &c| acc * self.base_len + c)
    }

    /// Components of the tuple at `index`.
    pub fn components(&self, index: usize) -> Vec<usize> {
        let mut out = vec![0; self.k];
        let mut rest = index;
        for slot in out.iter_mut().rev() {
            *slot = rest % self.base_len;
            rest /= self.base_len;
        }
        out
    }

    /// Component i of the tuple at `index` (the projection map Π_i).
    pub fn project(&self, axis: usize, index: usize) -> usize {
        self.components(index)[axis]
    }

    /// Π_i^(-1)(r): all tuples whose component `axis` is `r`.
    pub fn fiber(&self, axis: usize, r: usize) -> ResourceSet {
        ResourceSet::from_members(
            self.len(),
            (0..self.len()).filter(|&t| self.project(axis, t) == r),
        )
    }

    /// The product S_0 x ... x S_(k-1) as a set of tuples.
    pub fn product(&self, sets: &[ResourceSet]) -> ResourceSet {
        assert_eq!(sets.len(), self.k);
        ResourceSet::from_members(
            self.len(),
            (0..self.len()).filter(|&t| {
                self.components(t)
                    .iter()
                    .zip(sets)
                    .all(|(&c, s)| s.contains(c))
            }),
        )
    }
}

/// Builds the (un)constrained k-distinguishability theory: k-tuples combined
/// componentwise; free tuples are the constant ones (unconstrained) or the
/// constant tuples of free base resources (constrained); neutral tuples are
/// constant tuples of neutral base resources.
pub fn build_k_dist(
    base: &DeterministicTheory,
    k: usize,
    constrained: bool,
    cap: usize,
) -> Result<TupleTheory> {
    if k < 2 {
        return Err(Error::BadParameters("k must be >= 2".into()));
    }
    let n = base.len();
    let size = n
        .checked_pow(k as u32)
        .filter(|&s| s <= cap)
        .ok_or(Error::CarrierTooLarge {
            size: n.saturating_pow(k as u32),
            cap,
        })?;

    let mut scratch = TupleTheory {
        theory: base.theory().clone(), // placeholder; replaced below
        base_len: n,
        k,
        constrained,
    };

    let names: Vec<String> = (0..size)
        .map(|t| {
            let inner: Vec<&str> = scratch
                .components(t)
                .iter()
                .map(|&c| base.theory().name(c))
                .collect();
            format!("({})", inner.join(","))
        })
        .collect();

    let combined = |a: usize, b: usize| -> usize {
        let ca = scratch.components(a);
        let cb = scratch.components(b);
        let cc: Vec<usize> = ca
            .iter()
            .zip(&cb)
            .map(|(&x, &y)| base.table(x, y))
            .collect();
        scratch.index_of(&cc)
    };

    let mut free = ResourceSet::empty(size);
    let mut neutral = ResourceSet::empty(size);
    for c in 0..n {
        let constant = scratch.index_of(&vec![c; k]);
        if !constrained || base.theory().free().contains(c) {
            free.insert(constant);
        }
        if base.theory().neutral().contains(c) {
            neutral.insert(constant);
        }
    }

    let theory =
        ResourceTheory::from_deterministic_table(names, |a, b| combined(a, b), free, neutral)?;
    scratch.theory = theory;
    Ok(scratch)
}

/// A valuation certified monotone in the unconstrained k-distinguishability
/// theory over its base.
#[derive(Clone, Debug)]
pub struct ContractionCert {
    pub k: usize,
    pub values: Vec<ExtRational>,
    pub how: &'static str,
}

/// Monotonicity of a total tuple valuation under the unconstrained tuple
/// order; the witness is the first violating tuple-index pair.
pub fn is_k_contraction(
    values: &[ExtRational],
    tt: &TupleTheory,
) -> Result<std::result::Result<(), (usize, usize)>> {
    if tt.constrained() {
        return Err(Error::BadParameters(
            "contractions are monotones of the unconstrained tuple theory".into(),
        ));
    }
    if values.len() != tt.len() {
        return Err(Error::BadParameters(
            "valuation length differs from tuple carrier".into(),
        ));
    }
    Ok(is_monotone(values, &tt.theory().resource_order()?))
}

/// Certifies a k-contraction by the direct check.
pub fn certify_contraction(
    base: &DeterministicTheory,
    k: usize,
    values: Vec<ExtRational>,
    cap: usize,
) -> Result<ContractionCert> {
    let tt = build_k_dist(base, k, false, cap)?;
    match is_k_contraction(&values, &tt)? {
        Ok(()) => Ok(ContractionCert {
            k,
            values,
            how: "checked",
        }),
        Err(_) => Err(Error::UncertifiedInput(format!("as a {k}-contraction"))),
    }
}

/// Accepts the caller's assertion that the valuation is a k-contraction.
pub fn assert_contraction(k: usize, values: Vec<ExtRational>) -> ContractionCert {
    ContractionCert {
        k,
        values,
        how: "asserted",
    }
}

/// The difference indicator: 0 on constant tuples, 1 elsewhere. A
/// k-contraction over every deterministic base (a deterministic map cannot
/// split equal components).
pub fn difference_indicator(base_len: usize, k: usize) -> Vec<ExtRational> {
    let scratch = |index: usize| {
        let mut rest = index;
        let mut first = None;
        let mut constant = true;
        for _ in 0..k {
            let c = rest % base_len;
            rest /= base_len;
            constant &= *first.get_or_insert(c) == c;
        }
        constant
    };
    (0..base_len.pow(k as u32))
        .map(|t| {
            if scratch(t) {
                ExtRational::zero()
            } else {
                ExtRational::one()
            }
        })
        .collect()
}

/// A map Φ certified to commute with combination by free resources:
/// Φ(t ⊠ r) = t ⊠ Φ(r) for every free t.
#[derive(Clone, Debug)]
pub struct CommutingCert {
    pub phi: Vec<usize>,
}

/// Checks the commutation identity; witness is the failing pair (t, r).
pub fn commuting_map_check(
    base: &DeterministicTheory,
    phi: &[usize],
) -> std::result::Result<(), (usize, usize)> {
    assert_eq!(phi.len(), base.len());
    for t in base.theory().free().iter() {
        for r in 0..base.len() {
            if phi[base.table(t, r)] != base.table(t, phi[r]) {
                return Err((t, r));
            }
        }
    }
    Ok(())
}

pub fn certify_commuting(base: &DeterministicTheory, phi: Vec<usize>) -> Result<CommutingCert> {
    match commuting_map_check(base, &phi) {
        Ok(()) => Ok(CommutingCert { phi }),
        Err((t, r)) => Err(Error::UncertifiedInput(format!(
            "as commuting (fails at t={}, r={})",
            base.theory().name(t),
            base.theory().name(r)
        ))),
    }
}

/// M(r) = f(r, Φ(r)) for a certified 2-contraction f and certified
/// commuting map Φ.
pub fn monotone_from_commuting(
    base: &DeterministicTheory,
    f: &ContractionCert,
    phi: &CommutingCert,
) -> Result<MonotoneFn> {
    if f.k != 2 {
        return Err(Error::BadParameters(
            "commuting-map monotones need a 2-contraction".into(),
        ));
    }
    let n = base.len();
    let values: Vec<ExtRational> = (0..n)
        .map(|r| f.values[r * n + phi.phi[r]].clone())
        .collect();
    let order = base.theory().resource_order()?;
    let checked = is_monotone(&values, &order).is_ok();
    Ok(MonotoneFn {
        values,
        provenance: Provenance::Contraction {
            kind: "commuting-map".into(),
        },
        monotone_checked: checked,
    })
}

/// M(r) = inf { f(r, s) : s ∈ R_dc } for a certified 2-contraction and a
/// downward closed R_dc.
pub fn min_distinguishability(
    base: &DeterministicTheory,
    f: &ContractionCert,
    r_dc: &ResourceSet,
) -> Result<MonotoneFn> {
    if f.k != 2 {
        return Err(Error::BadParameters(
            "minimal distinguishability needs a 2-contraction".into(),
        ));
    }
    let ctx = OrderedResources::from_theory(base.theory().clone())?;
    if !is_downward_closed(&ctx, r_dc) {
        let closure = down_closure(&ctx, r_dc);
        let escapee = closure.difference(r_dc).iter().next().unwrap();
        return Err(Error::DNotDownwardClosed {
            from: escapee,
            escapee,
        });
    }
    let n = base.len();
    let values: Vec<ExtRational> = (0..n)
        .map(|r| {
            r_dc.iter()
                .map(|s| f.values[r * n + s].clone())
                .min()
                .unwrap_or(ExtRational::PosInf)
        })
        .collect();
    let checked = is_monotone(&values, &base.theory().resource_order()?).is_ok();
    Ok(MonotoneFn {
        values,
        provenance: Provenance::Contraction {
            kind: "min-distinguishability".into(),
        },
        monotone_checked: checked,
    })
}

/// The general construction: M(r) = inf of f over Π_axis^(-1)(r) ∩ W_dc,
/// for a certified k-contraction and W_dc downward closed in the constrained
/// k-distinguishability theory.
pub fn contraction_monotone(
    base: &DeterministicTheory,
    f: &ContractionCert,
    axis: usize,
    w_dc: &ResourceSet,
    cap: usize,
) -> Result<MonotoneFn> {
    if axis >= f.k {
        return Err(Error::BadParameters(format!(
            "axis {axis} out of range for k = {}",
            f.k
        )));
    }
    let tt = build_k_dist(base, f.k, true, cap)?;
    if w_dc.universe() != tt.len() {
        return Err(Error::BadParameters(
            "window must range over the tuple carrier".into(),
        ));
    }
    let tctx = OrderedResources::from_theory(tt.theory().clone())?;
    if !is_downward_closed(&tctx, w_dc) {
        let closure = down_closure(&tctx, w_dc);
        let escapee = closure.difference(w_dc).iter().next().unwrap();
        return Err(Error::WdcNotDownwardClosed(escapee));
    }
    let values: Vec<ExtRational> = (0..base.len())
        .map(|r| {
            tt.fiber(axis, r)
                .intersect(w_dc)
                .iter()
                .map(|t| f.values[t].clone())
                .min()
                .unwrap_or(ExtRational::PosInf)
        })
        .collect();
    let checked = is_monotone(&values, &base.theory().resource_order()?).is_ok();
    Ok(MonotoneFn {
        values,
        provenance: Provenance::Contraction {
            kind: format!("k-contraction-min(axis={axis})"),
        },
        monotone_checked: checked,
    })
}

/// If every S_i is downward closed in the base, their product is downward
/// closed in the constrained tuple theory; dually for upward closed sets.
/// Returns false only on a lemma failure (never, for valid bases).
pub fn product_dc_check(
    base: &DeterministicTheory,
    sets: &[ResourceSet],
    cap: usize,
) -> Result<bool> {
    let k = sets.len();
    if k < 2 {
        return Err(Error::BadParameters("need at least two factors".into()));
    }
    let ctx = OrderedResources::from_theory(base.theory().clone())?;
    let tt = build_k_dist(base, k, true, cap)?;
    let tctx = OrderedResources::from_theory(tt.theory().clone())?;
    let product = tt.product(sets);
    if sets.iter().all(|s| is_downward_closed(&ctx, s)) && !is_downward_closed(&tctx, &product) {
        return Ok(false);
    }
    if sets.iter().all(|s| is_upward_closed(&ctx, s)) && !is_upward_closed(&tctx, &product) {
        return Ok(false);
    }
    Ok(true)
}

/// Searches for subsets S_1..S_k whose product equals `target` in the tuple
/// theory; used to confirm sets (like the constant tuples) that are *not*
/// products. Exhaustive, so only for small bases.
pub fn factorization_search(tt: &TupleTheory, target: &ResourceSet) -> Option<Vec<ResourceSet>> {
    let n = tt.base_len();
    assert!(n <= 16 && tt.k() <= 3, "factorization search is exhaustive");
    let count = 1u64 << n;
    let mut choice = vec![0u64; tt.k()];
    loop {
        let sets: Vec<ResourceSet> = choice
            .iter()
            .map(|&m| ResourceSet::from_mask(n, m))
            .collect();
        if &tt.product(&sets) == target {
            return Some(sets);
        }
        // Odometer step.
        let mut i = 0;
        loop {
            choice[i] += 1;
            if choice[i] < count {
                break;
            }
            choice[i] = 0;
            i += 1;
            if i == tt.k() {
                return None;
            }
        }
    }
}
