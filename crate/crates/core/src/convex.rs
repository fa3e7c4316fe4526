//! Convex resource theories over exact-rational point sets: convex
//! alignment and the weight/robustness family of monotones.

use crate::error::{Error, Result};
use crate::monotone::{is_monotone, MonotoneFn, Provenance};
use crate::order::{is_downward_closed, OrderedResources};
use crate::rational::{in_unit_interval, mix, ExtRational};
use crate::set::ResourceSet;
use crate::theory::{ResourceTheory, ValidationReport, Violation};
use num_rational::BigRational;

pub type Point = Vec<BigRational>;

/// A finite carrier of rational vectors with a singleton-valued combination
/// expected to be bilinear (affine in each argument on the realized convex
/// combinations).
#[derive(Clone, Debug)]
pub struct ConvexTheory {
    theory: ResourceTheory,
    points: Vec<Point>,
    dim: usize,
}

impl ConvexTheory {
    pub fn new(theory: ResourceTheory, points: Vec<Point>) -> Result<Self> {
        if points.len() != theory.len() {
            return Err(Error::BadParameters(
                "one point per carrier element required".into(),
            ));
        }
        let dim = points.first().map(|p| p.len()).unwrap_or(0);
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch(dim, p.len()));
        }
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
        Ok(ConvexTheory {
            theory,
            points,
            dim,
        })
    }

    pub fn theory(&self) -> &ResourceTheory {
        &self.theory
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, r: usize) -> &Point {
        &self.points[r]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.theory.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theory.is_empty()
    }

    /// The unique index of r ⊠ s.
    pub fn combine_one(&self, r: usize, s: usize) -> usize {
        self.theory.combine(r, s).iter().next().expect("singleton")
    }

    /// Core axioms plus the bilinearity spot-check: for every realized
    /// convex combination r = λs + (1-λ)t in the carrier and every u,
    /// r ⊠ u must equal λ(s ⊠ u) + (1-λ)(t ⊠ u) as a vector. The check is
    /// partial by nature: only collinear triples present in the finite
    /// carrier are observable.
    pub fn validate(&self) -> ValidationReport {
        let mut report = self.theory.validate();
        let n = self.len();
        'outer: for r in 0..n {
            for s in 0..n {
                for t in 0..n {
                    let Some(lambda) = decompose(self.point(r), self.point(s), self.point(t))
                    else {
                        continue;
                    };
                    for u in 0..n {
                        let ru = self.point(self.combine_one(r, u));
                        let su = self.point(self.combine_one(s, u));
                        let tu = self.point(self.combine_one(t, u));
                        let expected: Point = su
                            .iter()
                            .zip(tu)
                            .map(|(a, b)| mix(&lambda, a, b))
                            .collect();
                        if *ru != expected {
                            report.violations.push(Violation {
                                axiom: "bilinearity",
                                witness: format!(
                                    "({},{},{}) with u={}",
                                    self.theory.name(r),
                                    self.theory.name(s),
                                    self.theory.name(t),
                                    self.theory.name(u)
                                ),
                            });
                            break 'outer;
                        }
                    }
                }
            }
        }
        report
    }
}

/// The unique λ in [0, 1] with r = λs + (1-λ)t, when s and t actually pin
/// one down (s ≠ t); `None` when no such λ exists or when every λ works.
fn decompose(r: &Point, s: &Point, t: &Point) -> Option<BigRational> {
    let pin = s.iter().zip(t).position(|(a, b)| a != b)?;
    let lambda = (&r[pin] - &t[pin]) / (&s[pin] - &t[pin]);
    if !in_unit_interval(&lambda) {
        return None;
    }
    let fits = r
        .iter()
        .zip(s.iter().zip(t))
        .all(|(ri, (si, ti))| *ri == mix(&lambda, si, ti));
    fits.then_some(lambda)
}

/// Convex alignment: the minimum λ in [0, 1] with r = λs + (1-λ)t, solved
/// exactly coordinatewise; 1 when no such λ exists. When every λ works
/// (r = s = t) the minimum, 0, is returned.
pub fn cva(r: &Point, s: &Point, t: &Point) -> Result<ExtRational> {
    if r.len() != s.len() || r.len() != t.len() {
        return Err(Error::DimensionMismatch(r.len(), s.len().max(t.len())));
    }
    if s == t {
        return Ok(if r == t {
            ExtRational::zero()
        } else {
            ExtRational::one()
        });
    }
    Ok(match decompose(r, s, t) {
        Some(lambda) => ExtRational::Finite(lambda),
        None => ExtRational::one(),
    })
}

fn cva_indices(ct: &ConvexTheory, r: usize, s: usize, t: usize) -> ExtRational {
    cva(ct.point(r), ct.point(s), ct.point(t)).expect("dimension-consistent carrier")
}

/// Verifies cva(r,s,t) >= cva(r⊠u, s⊠u, t⊠u) over every quadruple; the
/// 3-contraction property. Returns the first violating quadruple.
pub fn cva_contraction_check(
    ct: &ConvexTheory,
) -> std::result::Result<(), (usize, usize, usize, usize)> {
    let n = ct.len();
    for r in 0..n {
        for s in 0..n {
            for t in 0..n {
                let base = cva_indices(ct, r, s, t);
                for u in 0..n {
                    let moved = cva_indices(
                        ct,
                        ct.combine_one(r, u),
                        ct.combine_one(s, u),
                        ct.combine_one(t, u),
                    );
                    if base < moved {
                        return Err((r, s, t, u));
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConvexKind {
    /// inf over s ∈ R, t ∈ R_free of cva(r, s, t).
    Weight,
    /// inf over r ∈ R_free, s ∈ R of cva(r, s, t).
    Robustness,
    /// inf over r, s ∈ R_free of cva(r, s, t).
    FreeRobustness,
    /// inf over s, t ∈ R_free of cva(r, s, t).
    NonConvexity,
}

impl ConvexKind {
    pub fn name(self) -> &'static str {
        match self {
            ConvexKind::Weight => "weight",
            ConvexKind::Robustness => "robustness",
            ConvexKind::FreeRobustness => "free-robustness",
            ConvexKind::NonConvexity => "non-convexity",
        }
    }

    /// (axis, ranges) in the three-slot cva window picture: the axis slot
    /// ranges over the whole carrier and carries the argument.
    fn window(self) -> (usize, [bool; 3]) {
        // true = slot restricted to free; the axis entry is ignored.
        match self {
            ConvexKind::Weight => (0, [false, false, true]),
            ConvexKind::NonConvexity => (0, [false, true, true]),
            ConvexKind::Robustness => (2, [true, false, false]),
            ConvexKind::FreeRobustness => (2, [true, true, false]),
        }
    }
}

fn window_min(ct: &ConvexTheory, axis: usize, slots: [&ResourceSet; 3], x: usize) -> ExtRational {
    let mut best = ExtRational::PosInf;
    let slot_members = |i: usize| -> Vec<usize> {
        if i == axis {
            vec![x]
        } else {
            slots[i].iter().collect()
        }
    };
    for &r in &slot_members(0) {
        for &s in &slot_members(1) {
            for &t in &slot_members(2) {
                let v = cva_indices(ct, r, s, t);
                if v < best {
                    best = v;
                }
            }
        }
    }
    best
}

pub fn weight(ct: &ConvexTheory, r: usize) -> ExtRational {
    named_value(ct, ConvexKind::Weight, r)
}

pub fn robustness(ct: &ConvexTheory, t: usize) -> ExtRational {
    named_value(ct, ConvexKind::Robustness, t)
}

pub fn free_robustness(ct: &ConvexTheory, t: usize) -> ExtRational {
    named_value(ct, ConvexKind::FreeRobustness, t)
}

pub fn non_convexity(ct: &ConvexTheory, r: usize) -> ExtRational {
    named_value(ct, ConvexKind::NonConvexity, r)
}

fn named_value(ct: &ConvexTheory, kind: ConvexKind, x: usize) -> ExtRational {
    let (axis, restricted) = kind.window();
    let full = ResourceSet::full(ct.len());
    let slots: [&ResourceSet; 3] = std::array::from_fn(|i| {
        if restricted[i] {
            ct.theory.free()
        } else {
            &full
        }
    });
    window_min(ct, axis, slots, x)
}

/// One of the four named monotones as a total map with its self-check.
pub fn named_monotone(ct: &ConvexTheory, kind: ConvexKind) -> Result<MonotoneFn> {
    let values: Vec<ExtRational> = (0..ct.len()).map(|x| named_value(ct, kind, x)).collect();
    let checked = is_monotone(&values, &ct.theory.resource_order()?).is_ok();
    Ok(MonotoneFn {
        values,
        provenance: Provenance::Convex {
            kind: kind.name().into(),
        },
        monotone_checked: checked,
    })
}

/// The general cva-min construction: the 1-based axis must be 1 or 3, its
/// window slot must be the full carrier, and the remaining slots must be
/// downward closed.
pub fn cva_monotone(
    ct: &ConvexTheory,
    axis: usize,
    slots: [&ResourceSet; 3],
) -> Result<MonotoneFn> {
    if axis != 1 && axis != 3 {
        return Err(Error::BadParameters("axis must be 1 or 3".into()));
    }
    let axis0 = axis - 1;
    if *slots[axis0] != ResourceSet::full(ct.len()) {
        return Err(Error::AxisWindowMismatch { axis });
    }
    let ctx = OrderedResources::from_theory(ct.theory.clone())?;
    for (i, s) in slots.iter().enumerate() {
        if i != axis0 && !is_downward_closed(&ctx, s) {
            return Err(Error::SNotDownwardClosed { axis: i + 1 });
        }
    }
    let values: Vec<ExtRational> = (0..ct.len())
        .map(|x| window_min(ct, axis0, slots, x))
        .collect();
    let checked = is_monotone(&values, &ctx.order()).is_ok();
    Ok(MonotoneFn {
        values,
        provenance: Provenance::Convex {
            kind: format!("cva-min(axis={axis})"),
        },
        monotone_checked: checked,
    })
}

/// One entry of the 12-way classification: an axis, the free/full choice for
/// the two remaining slots, and whether the resulting map is constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionClass {
    /// 1-based axis.
    pub axis: usize,
    /// For the two non-axis slots in order: true = restricted to free.
    pub restricted: [bool; 2],
    pub constant: bool,
    pub values: Vec<ExtRational>,
}

/// Enumerates all 12 cva-min constructions (3 axes x 4 free/full choices for
/// the other two slots) and reports which are constant maps.
pub fn classify_constructions(ct: &ConvexTheory) -> Vec<ConstructionClass> {
    let full = ResourceSet::full(ct.len());
    let mut out = Vec::new();
    for axis0 in 0..3 {
        for choice in 0..4u8 {
            let restricted = [choice & 1 != 0, choice & 2 != 0];
            let mut slots: [&ResourceSet; 3] = [&full; 3];
            let mut which = 0;
            for (i, slot) in slots.iter_mut().enumerate() {
                if i != axis0 {
                    if restricted[which] {
                        *slot = ct.theory.free();
                    }
                    which += 1;
                }
            }
            let values: Vec<ExtRational> =
                (0..ct.len()).map(|x| window_min(ct, axis0, slots, x)).collect();
            let constant = values.windows(2).all(|w| w[0] == w[1]);
            out.push(ConstructionClass {
                axis: axis0 + 1,
                restricted,
                constant,
                values,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{cvx1, cvx2};
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn pt(coords: &[(i64, i64)]) -> Point {
        coords.iter().map(|&(n, d)| q(n, d)).collect()
    }

    /// Independent oracle: candidate λ values are 0, 1, and each
    /// coordinatewise solution; the result is the least candidate in [0, 1]
    /// that satisfies every coordinate, else 1.
    fn cva_oracle(r: &Point, s: &Point, t: &Point) -> ExtRational {
        let mut candidates = vec![BigRational::zero(), q(1, 1)];
        for i in 0..r.len() {
            let denom = &s[i] - &t[i];
            if !denom.is_zero() {
                candidates.push((&r[i] - &t[i]) / denom);
            }
        }
        candidates.sort();
        for lambda in candidates {
            if !in_unit_interval(&lambda) {
                continue;
            }
            if r.iter()
                .zip(s.iter().zip(t))
                .all(|(ri, (si, ti))| *ri == mix(&lambda, si, ti))
            {
                return ExtRational::Finite(lambda);
            }
        }
        ExtRational::one()
    }

    #[test]
    fn cva_examples() {
        let r = pt(&[(1, 2)]);
        let s = pt(&[(1, 1)]);
        let t = pt(&[(0, 1)]);
        assert_eq!(cva(&r, &s, &t).unwrap(), ExtRational::from_ratio(1, 2));
        // t = r forces λ = 0 regardless of s.
        assert_eq!(cva(&r, &s, &r).unwrap(), ExtRational::zero());
        // Non-collinear 2-D points hit the fallback.
        let a = pt(&[(0, 1), (0, 1)]);
        let b = pt(&[(1, 1), (0, 1)]);
        let c = pt(&[(0, 1), (1, 1)]);
        assert_eq!(cva(&a, &b, &c).unwrap(), ExtRational::one());
        assert!(matches!(
            cva(&r, &a, &b),
            Err(Error::DimensionMismatch(..))
        ));
    }

    #[test]
    fn cva_matches_oracle_on_cvx_fixtures() {
        for ct in [cvx1(), cvx2()] {
            for r in 0..ct.len() {
                for s in 0..ct.len() {
                    for t in 0..ct.len() {
                        assert_eq!(
                            cva_indices(&ct, r, s, t),
                            cva_oracle(ct.point(r), ct.point(s), ct.point(t)),
                            "{r},{s},{t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cvx1_validates_and_is_a_3_contraction() {
        let ct = cvx1();
        assert!(ct.validate().is_valid());
        assert_eq!(cva_contraction_check(&ct), Ok(()));
    }

    #[test]
    fn broken_nonbilinear_table_is_caught() {
        // Same carrier as CVX1 but with ⊠ = min: a valid theory whose
        // combination is not bilinear.
        let ct = crate::gen::cvx_min_broken();
        assert!(ct.theory().validate().is_valid());
        let report = ct.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == "bilinearity"));
        assert!(cva_contraction_check(&ct).is_err());
    }

    #[test]
    fn cvx1_named_values() {
        let ct = cvx1();
        let half = ct.theory().index_of("1/2").unwrap();
        assert_eq!(weight(&ct, half), ExtRational::from_ratio(1, 2));
        assert_eq!(robustness(&ct, half), ExtRational::one());
        // Free resources score 0 on every named monotone.
        for f in ct.theory().free().iter() {
            assert_eq!(weight(&ct, f), ExtRational::zero());
            assert_eq!(robustness(&ct, f), ExtRational::zero());
            assert_eq!(free_robustness(&ct, f), ExtRational::zero());
            assert_eq!(non_convexity(&ct, f), ExtRational::zero());
        }
    }

    #[test]
    fn named_monotones_pass_self_check_and_stay_in_unit_interval() {
        for ct in [cvx1(), cvx2()] {
            for kind in [
                ConvexKind::Weight,
                ConvexKind::Robustness,
                ConvexKind::FreeRobustness,
                ConvexKind::NonConvexity,
            ] {
                let m = named_monotone(&ct, kind).unwrap();
                assert!(m.monotone_checked, "{:?}", kind);
                for v in &m.values {
                    assert!(*v >= ExtRational::zero() && *v <= ExtRational::one());
                }
            }
        }
    }

    #[test]
    fn cva_monotone_specializes_to_named_monotones() {
        let ct = cvx1();
        let full = ResourceSet::full(ct.len());
        let free = ct.theory().free().clone();
        let w = cva_monotone(&ct, 1, [&full, &full, &free]).unwrap();
        assert_eq!(w.values, named_monotone(&ct, ConvexKind::Weight).unwrap().values);
        let r = cva_monotone(&ct, 3, [&free, &full, &full]).unwrap();
        assert_eq!(
            r.values,
            named_monotone(&ct, ConvexKind::Robustness).unwrap().values
        );
        assert!(matches!(
            cva_monotone(&ct, 2, [&full, &full, &full]),
            Err(Error::BadParameters(_))
        ));
        assert!(matches!(
            cva_monotone(&ct, 1, [&free, &full, &full]),
            Err(Error::AxisWindowMismatch { axis: 1 })
        ));
    }

    #[test]
    fn twelve_constructions_classify_with_eight_constant() {
        for ct in [cvx1(), cvx2()] {
            let classes = classify_constructions(&ct);
            assert_eq!(classes.len(), 12);
            let constant = classes.iter().filter(|c| c.constant).count();
            assert_eq!(constant, 8);
            // Every axis-2 construction is constant: the outer slots can
            // always collude with r = t free.
            for c in &classes {
                if c.axis == 2 {
                    assert!(c.constant);
                }
            }
        }
    }
}
