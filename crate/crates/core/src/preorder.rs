//! Finite preorders as explicit boolean relation matrices, with quotients,
//! order-preservation checks, and the kernel / first-isomorphism machinery.

use crate::error::{Error, Result};
use crate::set::ResourceSet;

/// A reflexive, transitive relation over a labeled finite carrier.
///
/// `holds(a, b)` reads "a is above b": for resource orders this is a ≽ b,
/// i.e. b is obtainable from a.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinitePreorder {
    labels: Vec<String>,
    rel: Vec<bool>, // row-major: rel[a * n + b] == holds(a, b)
}

impl FinitePreorder {
    /// Builds a preorder, verifying reflexivity and transitivity.
    pub fn new(labels: Vec<String>, rel: Vec<bool>) -> Result<Self> {
        let p = Self::new_unchecked(labels, rel);
        p.check_preorder()?;
        Ok(p)
    }

    /// Builds without checking; caller guarantees the axioms.
    pub fn new_unchecked(labels: Vec<String>, rel: Vec<bool>) -> Self {
        assert_eq!(rel.len(), labels.len() * labels.len());
        FinitePreorder { labels, rel }
    }

    /// Builds from a list of pairs `(a, b)` meaning a ≽ b. Reflexive pairs
    /// are added automatically; transitivity is still the caller's burden.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut rel = vec![false; n * n];
        for a in 0..n {
            rel[a * n + a] = true;
        }
        for &(a, b) in pairs {
            rel[a * n + b] = true;
        }
        Self::new(labels, rel)
    }

    pub fn check_preorder(&self) -> Result<()> {
        let n = self.len();
        for a in 0..n {
            if !self.holds(a, a) {
                return Err(Error::NotAPreorder(format!(
                    "not reflexive at {}",
                    self.labels[a]
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !self.holds(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.holds(b, c) && !self.holds(a, c) {
                        return Err(Error::NotAPreorder(format!(
                            "not transitive at {} >= {} >= {}",
                            self.labels[a], self.labels[b], self.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// a ≽ b.
    pub fn holds(&self, a: usize, b: usize) -> bool {
        self.rel[a * self.len() + b]
    }

    /// a ≽ b and b ≽ a.
    pub fn equivalent(&self, a: usize, b: usize) -> bool {
        self.holds(a, b) && self.holds(b, a)
    }

    /// Principal downset {b : a ≽ b}.
    pub fn down(&self, a: usize) -> ResourceSet {
        ResourceSet::from_members(self.len(), (0..self.len()).filter(|&b| self.holds(a, b)))
    }

    /// Principal upset {b : b ≽ a}.
    pub fn up(&self, a: usize) -> ResourceSet {
        ResourceSet::from_members(self.len(), (0..self.len()).filter(|&b| self.holds(b, a)))
    }

    /// All ordered pairs with `holds(a, b)`, row-major.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.holds(a, b))
            .collect()
    }

    /// Equivalence classes of mutual order, each sorted, ordered by least member.
    pub fn equivalence_classes(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let class: Vec<usize> = (a..n).filter(|&b| self.equivalent(a, b)).collect();
            for &b in &class {
                seen[b] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Quotient by mutual order: the partition plus the induced partial order
    /// on classes. Class labels join member labels with `~`.
    pub fn quotient(&self) -> (Vec<Vec<usize>>, FinitePreorder) {
        let classes = self.equivalence_classes();
        let m = classes.len();
        let labels: Vec<String> = classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&i| self.labels[i].as_str())
                    .collect::<Vec<_>>()
                    .join("~")
            })
            .collect();
        let mut rel = vec![false; m * m];
        for (i, ci) in classes.iter().enumerate() {
            for (j, cj) in classes.iter().enumerate() {
                rel[i * m + j] = self.holds(ci[0], cj[0]);
            }
        }
        let q = FinitePreorder::new_unchecked(labels, rel);
        debug_assert!(q.check_preorder().is_ok());
        (classes, q)
    }

    /// Cover pairs (a, b) of a partial order: a strictly above b with nothing
    /// strictly between. Intended for the quotient order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let strict = |a: usize, b: usize| self.holds(a, b) && !self.holds(b, a);
        let mut out = Vec::new();
        for a in 0..n {
            'next: for b in 0..n {
                if !strict(a, b) {
                    continue;
                }
                for c in 0..n {
                    if strict(a, c) && strict(c, b) {
                        continue 'next;
                    }
                }
                out.push((a, b));
            }
        }
        out
    }
}

/// Checks that `f` (a total index map source → target) is order preserving;
/// returns the lexicographically first violating pair `(a, b)` with a ≽ b in
/// the source but f(a) not ≽ f(b) in the target.
pub fn is_order_preserving(
    f: &[usize],
    source: &FinitePreorder,
    target: &FinitePreorder,
) -> std::result::Result<(), (usize, usize)> {
    assert_eq!(f.len(), source.len());
    for a in 0..source.len() {
        for b in 0..source.len() {
            if source.holds(a, b) && !target.holds(f[a], f[b]) {
                return Err((a, b));
            }
        }
    }
    Ok(())
}

/// The kernel of `f`: the partition of the source where a ~ a' iff
/// f(a) and f(a') are equivalent in the target order.
pub fn kernel(f: &[usize], target: &FinitePreorder) -> Vec<Vec<usize>> {
    let n = f.len();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for a in 0..n {
        if seen[a] {
            continue;
        }
        let class: Vec<usize> = (a..n).filter(|&b| target.equivalent(f[a], f[b])).collect();
        for &b in &class {
            seen[b] = true;
        }
        classes.push(class);
    }
    classes
}

/// First isomorphism theorem for preorders, checked concretely.
///
/// Quotients the source by the kernel of `f`, verifies the source order
/// descends to a well-defined partial order on kernel classes, builds the
/// image of `f` modulo target equivalence, and verifies the canonical map is
/// a bijective order isomorphism.
pub fn first_isomorphism_check(
    f: &[usize],
    source: &FinitePreorder,
    target: &FinitePreorder,
) -> Result<bool> {
    if let Err((a, b)) = is_order_preserving(f, source, target) {
        return Err(Error::NotOrderPreserving {
            a: source.label(a).to_string(),
            b: source.label(b).to_string(),
        });
    }
    let classes = kernel(f, target);
    // The source order must be constant across kernel-class representatives.
    for ci in &classes {
        for cj in &classes {
            let expected = source.holds(ci[0], cj[0]);
            for &a in ci {
                for &b in cj {
                    if source.holds(a, b) != expected {
                        return Ok(false);
                    }
                }
            }
        }
    }
    // Quotient must be a partial order (antisymmetric).
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            if i != j && source.holds(ci[0], cj[0]) && source.holds(cj[0], ci[0]) {
                return Ok(false);
            }
        }
    }
    // Image classes modulo target equivalence.
    let mut image_reps: Vec<usize> = Vec::new();
    for &a in f {
        if !image_reps.iter().any(|&r| target.equivalent(r, a)) {
            image_reps.push(a);
        }
    }
    // The canonical map kernel class -> image class.
    let canonical: Vec<usize> = classes
        .iter()
        .map(|c| {
            image_reps
                .iter()
                .position(|&r| target.equivalent(r, f[c[0]]))
                .expect("image representative")
        })
        .collect();
    // Bijective?
    if canonical.len() != image_reps.len() {
        return Ok(false);
    }
    let mut hit = vec![false; image_reps.len()];
    for &t in &canonical {
        hit[t] = true;
    }
    if !hit.iter().all(|&h| h) {
        return Ok(false);
    }
    // Order isomorphism: class order iff image order, both directions.
    for (i, ci) in classes.iter().enumerate() {
        for (j, cj) in classes.iter().enumerate() {
            let src = source.holds(ci[0], cj[0]);
            let tgt = target.holds(image_reps[canonical[i]], image_reps[canonical[j]]);
            if src != tgt {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> FinitePreorder {
        // c0 ≽ c1 ≽ c2
        FinitePreorder::from_pairs(
            vec!["c0".into(), "c1".into(), "c2".into()],
            &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)],
        )
        .unwrap()
    }

    #[test]
    fn rejects_non_preorders() {
        let labels = vec!["x".into(), "y".into()];
        assert!(matches!(
            FinitePreorder::new(labels.clone(), vec![false, false, false, true]),
            Err(Error::NotAPreorder(_))
        ));
        // Missing transitive edge 0 -> 2.
        let labels3 = vec!["x".into(), "y".into(), "z".into()];
        let mut rel = vec![false; 9];
        for i in 0..3 {
            rel[i * 3 + i] = true;
        }
        rel[1] = true; // x ≽ y
        rel[5] = true; // y ≽ z
        assert!(matches!(
            FinitePreorder::new(labels3, rel),
            Err(Error::NotAPreorder(_))
        ));
    }

    #[test]
    fn quotient_collapses_mutual_pairs() {
        // x ~ y, both above z.
        let p = FinitePreorder::from_pairs(
            vec!["x".into(), "y".into(), "z".into()],
            &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (0, 2), (1, 2)],
        )
        .unwrap();
        let (classes, q) = p.quotient();
        assert_eq!(classes, vec![vec![0, 1], vec![2]]);
        assert_eq!(q.labels(), ["x~y", "z"]);
        assert!(q.holds(0, 1) && !q.holds(1, 0));
    }

    #[test]
    fn quotient_of_complete_relation_is_single_class() {
        let p = FinitePreorder::new(vec!["x".into(), "y".into()], vec![true; 4]).unwrap();
        let (classes, q) = p.quotient();
        assert_eq!(classes.len(), 1);
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn covers_skip_transitive_edges() {
        assert_eq!(chain3().covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn order_preservation_witnesses() {
        let p = chain3();
        assert!(is_order_preserving(&[0, 1, 2], &p, &p).is_ok());
        // Reversing the chain violates at the first comparable pair.
        assert_eq!(is_order_preserving(&[2, 1, 0], &p, &p), Err((0, 1)));
    }

    #[test]
    fn kernel_of_constant_map_is_one_class() {
        let p = chain3();
        assert_eq!(kernel(&[1, 1, 1], &p), vec![vec![0, 1, 2]]);
        assert_eq!(kernel(&[0, 1, 2], &p).len(), 3);
    }

    #[test]
    fn identity_satisfies_first_isomorphism() {
        let p = chain3();
        assert!(first_isomorphism_check(&[0, 1, 2], &p, &p).unwrap());
    }

    #[test]
    fn first_isomorphism_rejects_order_collapsing_kernel() {
        // Source: two incomparable points; f maps both onto one point.
        // The source order does not descend (x ≽ x in-class but x ⋡ y): the
        // constant-across-classes test fails.
        let discrete = FinitePreorder::from_pairs(
            vec!["x".into(), "y".into()],
            &[(0, 0), (1, 1)],
        )
        .unwrap();
        let point = FinitePreorder::from_pairs(vec!["p".into()], &[(0, 0)]).unwrap();
        assert!(!first_isomorphism_check(&[0, 0], &discrete, &point).unwrap());
    }
}
