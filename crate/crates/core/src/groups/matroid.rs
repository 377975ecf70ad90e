//! The group matroid on `n` labeled copies of `Γ_k`.

use serde::{Deserialize, Serialize};

use super::{GroupContext, GroupElement, SubgroupDescriptor, TranslationLattice};
use crate::error::{Error, Result};

/// A finite multiset of pairs `(γ, i)` with `i` in `0..n`.
///
/// Part indices are zero-based here; the text forms used elsewhere follow the
/// same convention.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedSubset {
    pub n: usize,
    pub elements: Vec<(GroupElement, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsetTransform {
    /// Replace `A_i` by `γ_i⁻¹ A_i γ_i`; one element per nonempty part, in
    /// increasing part order.
    Conjugate(Vec<GroupElement>),
    /// Move the listed positions (indices into `A_from`) to the empty part `to`.
    Separate { from: usize, to: usize, moved: Vec<usize> },
    /// Merge nonempty `A_from` into nonempty `A_into`.
    Fuse { into: usize, from: usize },
}

/// Shape of a tight independent set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TightType {
    /// One part carries all the extra elements.
    One,
    /// Two parts of size two share them (k = 2 only).
    Two,
}

impl IndexedSubset {
    pub fn new(n: usize, elements: Vec<(GroupElement, usize)>) -> Self {
        debug_assert!(elements.iter().all(|&(_, i)| i < n));
        IndexedSubset { n, elements }
    }

    pub fn empty(n: usize) -> Self {
        IndexedSubset { n, elements: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn part(&self, i: usize) -> Vec<GroupElement> {
        self.elements.iter().filter(|&&(_, p)| p == i).map(|&(g, _)| g).collect()
    }

    pub fn parts(&self) -> Vec<Vec<GroupElement>> {
        let mut parts = vec![Vec::new(); self.n];
        for &(g, i) in &self.elements {
            parts[i].push(g);
        }
        parts
    }

    /// Number of nonempty parts, `c(A)`.
    pub fn part_count(&self) -> usize {
        self.parts().iter().filter(|p| !p.is_empty()).count()
    }

    pub fn with(&self, element: GroupElement, part: usize) -> IndexedSubset {
        let mut out = self.clone();
        out.elements.push((element, part));
        out
    }

    pub fn descriptors(&self, ctx: &GroupContext) -> Vec<SubgroupDescriptor> {
        self.parts().iter().map(|p| SubgroupDescriptor::classify(ctx, p)).collect()
    }

    /// `Λ(A)`, the join of the translation subgroups of the parts.
    pub fn lattice(&self, ctx: &GroupContext) -> TranslationLattice {
        self.descriptors(ctx).iter().fold(TranslationLattice::trivial(), |acc, d| acc.join(&d.lattice))
    }

    /// `g1(A) = n + rep(Λ(A))/2 - Σ T(Γ_{A,i})/2`.
    pub fn g1(&self, ctx: &GroupContext) -> i64 {
        let descriptors = self.descriptors(ctx);
        let lattice = descriptors.iter().fold(TranslationLattice::trivial(), |acc, d| acc.join(&d.lattice));
        let t_sum: i64 = descriptors.iter().map(|d| d.t_invariant()).sum();
        let twice = 2 * self.n as i64 + lattice.rep(ctx) - t_sum;
        debug_assert!(twice % 2 == 0);
        twice / 2
    }

    pub fn is_independent(&self, ctx: &GroupContext) -> bool {
        self.len() as i64 == self.g1(ctx)
    }

    pub fn is_tight(&self, ctx: &GroupContext) -> bool {
        self.is_independent(ctx) && self.len() as i64 == self.part_count() as i64 + ctx.full_rep() / 2
    }

    /// Contains a tight subset on the same nonempty parts; for the group matroid
    /// this is `g1(A) = c(A) + rep(Λ(Γ_k))/2`.
    pub fn is_spanning(&self, ctx: &GroupContext) -> bool {
        self.g1(ctx) == self.part_count() as i64 + ctx.full_rep() / 2
    }

    /// Classify a tight independent set by where its extra elements sit.
    pub fn tight_type(&self, ctx: &GroupContext) -> Option<TightType> {
        if !self.is_tight(ctx) {
            return None;
        }
        let parts: Vec<Vec<GroupElement>> = self.parts().into_iter().filter(|p| !p.is_empty()).collect();
        if !parts.iter().all(|p| p.iter().any(|g| g.is_rotation())) {
            return None;
        }
        let large: Vec<&Vec<GroupElement>> = parts.iter().filter(|p| p.len() > 1).collect();
        let full = ctx.full_rep();
        match large.as_slice() {
            [one] if one.len() as i64 == 1 + full / 2 => {
                (SubgroupDescriptor::classify(ctx, one).rep() == full).then_some(TightType::One)
            }
            [a, b] if a.len() == 2 && b.len() == 2 && ctx.k() == 2 => {
                let joined = SubgroupDescriptor::classify(ctx, a).lattice.join(&SubgroupDescriptor::classify(ctx, b).lattice);
                (joined.rep(ctx) == full).then_some(TightType::Two)
            }
            _ => None,
        }
    }

    pub fn transform(&self, ctx: &GroupContext, mode: &SubsetTransform) -> Result<IndexedSubset> {
        let invalid = |msg: &str| Error::InvalidTransform(msg.to_string());
        let parts = self.parts();
        match mode {
            SubsetTransform::Conjugate(by) => {
                let nonempty: Vec<usize> = (0..self.n).filter(|&i| !parts[i].is_empty()).collect();
                if by.len() != nonempty.len() {
                    return Err(invalid("need one conjugating element per nonempty part"));
                }
                if by.iter().any(|g| !ctx.is_valid(g)) {
                    return Err(invalid("conjugating element not in the group"));
                }
                let mut slot = vec![None; self.n];
                for (&i, g) in nonempty.iter().zip(by) {
                    slot[i] = Some(*g);
                }
                let elements = self
                    .elements
                    .iter()
                    .map(|&(g, i)| (ctx.conjugate(&slot[i].expect("nonempty part"), &g), i))
                    .collect();
                Ok(IndexedSubset { n: self.n, elements })
            }
            SubsetTransform::Separate { from, to, moved } => {
                if *from >= self.n || *to >= self.n || from == to {
                    return Err(invalid("part index out of range"));
                }
                if !parts[*to].is_empty() {
                    return Err(invalid("separation target must be empty"));
                }
                let size = parts[*from].len();
                if moved.iter().any(|&p| p >= size) {
                    return Err(invalid("moved position out of range"));
                }
                let mut seen = 0usize;
                let elements = self
                    .elements
                    .iter()
                    .map(|&(g, i)| {
                        if i != *from {
                            return (g, i);
                        }
                        let position = seen;
                        seen += 1;
                        if moved.contains(&position) {
                            (g, *to)
                        } else {
                            (g, i)
                        }
                    })
                    .collect();
                Ok(IndexedSubset { n: self.n, elements })
            }
            SubsetTransform::Fuse { into, from } => {
                if *into >= self.n || *from >= self.n || into == from {
                    return Err(invalid("part index out of range"));
                }
                if parts[*into].is_empty() || parts[*from].is_empty() {
                    return Err(invalid("fusing requires two nonempty parts"));
                }
                let elements = self.elements.iter().map(|&(g, i)| (g, if i == *from { *into } else { i })).collect();
                Ok(IndexedSubset { n: self.n, elements })
            }
        }
    }
}
