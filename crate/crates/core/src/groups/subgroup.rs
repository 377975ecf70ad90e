//! Finitely generated subgroups of `Γ_k`, classified from their generators.

use serde::{Deserialize, Serialize};

use super::{GroupContext, GroupElement, Lattice, RationalPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubgroupClass {
    Trivial,
    CyclicRotation,
    TranslationOnly,
    Mixed,
}

/// The translation subgroup `Λ(Γ')`.
///
/// For k = 2 it is always known exactly. For k = 3, 4, 6 a subgroup mixing
/// rotations and translations only records that `Λ` is nonzero, which is all
/// the dimension counts depend on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TranslationLattice {
    Exact(Lattice),
    Nontrivial,
}

impl TranslationLattice {
    pub fn trivial() -> Self {
        TranslationLattice::Exact(Lattice::trivial())
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, TranslationLattice::Exact(l) if l.is_trivial())
    }

    pub fn exact(&self) -> Option<&Lattice> {
        match self {
            TranslationLattice::Exact(l) => Some(l),
            TranslationLattice::Nontrivial => None,
        }
    }

    pub fn join(&self, other: &TranslationLattice) -> TranslationLattice {
        match (self, other) {
            (TranslationLattice::Exact(a), TranslationLattice::Exact(b)) => TranslationLattice::Exact(a.join(b)),
            (TranslationLattice::Nontrivial, _) | (_, TranslationLattice::Nontrivial) => TranslationLattice::Nontrivial,
        }
    }

    /// `rep_{Γ_k}` of the translation subgroup: twice the rank for k = 2, and 2
    /// for any nonzero subgroup when k = 3, 4, 6.
    pub fn rep(&self, ctx: &GroupContext) -> i64 {
        match self {
            TranslationLattice::Nontrivial => 2,
            TranslationLattice::Exact(l) if ctx.k() == 2 => 2 * l.rank() as i64,
            TranslationLattice::Exact(l) => {
                if l.is_trivial() {
                    0
                } else {
                    2
                }
            }
        }
    }

    /// Restricted Teichmüller dimension: `rep - 1` when nonzero, else 0.
    pub fn teich(&self, ctx: &GroupContext) -> i64 {
        if self.is_trivial() {
            0
        } else {
            self.rep(ctx) - 1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupDescriptor {
    pub context: GroupContext,
    pub generators: Vec<GroupElement>,
    pub class: SubgroupClass,
    pub lattice: TranslationLattice,
    pub rotation_witness: Option<GroupElement>,
    #[serde(skip)]
    pub common_center: Option<RationalPoint>,
}

impl SubgroupDescriptor {
    pub fn classify(ctx: &GroupContext, generators: &[GroupElement]) -> SubgroupDescriptor {
        let generators: Vec<GroupElement> = generators.to_vec();
        let translations: Vec<[i64; 2]> = generators.iter().filter(|g| g.is_translation()).map(|g| g.t).collect();
        let rotations: Vec<&GroupElement> = generators.iter().filter(|g| g.is_rotation()).collect();

        let (class, lattice) = match rotations.first() {
            None if translations.is_empty() => (SubgroupClass::Trivial, TranslationLattice::trivial()),
            None => (SubgroupClass::TranslationOnly, TranslationLattice::Exact(Lattice::from_generators(&translations))),
            Some(&&first) if ctx.k() == 2 => {
                // Λ = <translation generators, ρ0⁻¹ρj>; exact because every
                // translation subgroup of Γ_2 is normal.
                let inv = ctx.invert(&first);
                let mut vectors = translations.clone();
                vectors.extend(rotations.iter().map(|r| ctx.compose(&inv, r).t));
                let lattice = Lattice::from_generators(&vectors);
                let class = if lattice.is_trivial() { SubgroupClass::CyclicRotation } else { SubgroupClass::Mixed };
                (class, TranslationLattice::Exact(lattice))
            }
            Some(&&first) => {
                let concentric = rotations.iter().all(|r| ctx.same_center(&first, r));
                if translations.is_empty() && concentric {
                    (SubgroupClass::CyclicRotation, TranslationLattice::trivial())
                } else {
                    (SubgroupClass::Mixed, TranslationLattice::Nontrivial)
                }
            }
        };
        let rotation_witness = rotations.first().map(|r| **r);
        let common_center = match class {
            SubgroupClass::CyclicRotation => rotation_witness.and_then(|r| ctx.rotation_center(&r).ok()),
            _ => None,
        };
        SubgroupDescriptor { context: *ctx, generators, class, lattice, rotation_witness, common_center }
    }

    pub fn has_rotation(&self) -> bool {
        matches!(self.class, SubgroupClass::CyclicRotation | SubgroupClass::Mixed)
    }

    pub fn has_translation(&self) -> bool {
        matches!(self.class, SubgroupClass::TranslationOnly | SubgroupClass::Mixed)
    }

    /// 0 when the subgroup contains a rotation, else 2.
    pub fn t_invariant(&self) -> i64 {
        if self.has_rotation() {
            0
        } else {
            2
        }
    }

    pub fn rep(&self) -> i64 {
        self.lattice.rep(&self.context)
    }

    pub fn teich(&self) -> i64 {
        self.lattice.teich(&self.context)
    }

    /// Dimension of the centralizer of the image under any faithful representation.
    pub fn cent(&self) -> i64 {
        match self.class {
            SubgroupClass::Mixed => 0,
            SubgroupClass::CyclicRotation => 1,
            SubgroupClass::TranslationOnly => 2,
            SubgroupClass::Trivial => 3,
        }
    }

    /// Descriptor of `<Γ', γ>`.
    pub fn with_generator(&self, gamma: GroupElement) -> SubgroupDescriptor {
        let mut gens = self.generators.clone();
        gens.push(gamma);
        SubgroupDescriptor::classify(&self.context, &gens)
    }

    /// Membership of `γ` in the closure `cl(Γ')`: the largest supergroup with
    /// the same `rep(Λ(·))` and `T(·)`.
    pub fn in_closure(&self, gamma: &GroupElement) -> bool {
        let ctx = &self.context;
        if ctx.k() == 2 {
            let lattice = self.lattice.exact().expect("Γ_2 lattices are exact");
            return match self.class {
                SubgroupClass::Trivial => gamma.is_identity(),
                SubgroupClass::TranslationOnly => gamma.s == 0 && lattice.spans(gamma.t),
                SubgroupClass::CyclicRotation | SubgroupClass::Mixed => {
                    let witness = self.rotation_witness.expect("rotation present");
                    let saturated = lattice.saturate();
                    if gamma.s == 0 {
                        saturated.contains(gamma.t)
                    } else {
                        saturated.contains([gamma.t[0] - witness.t[0], gamma.t[1] - witness.t[1]])
                    }
                }
            };
        }
        match self.class {
            SubgroupClass::Trivial => gamma.is_identity(),
            SubgroupClass::CyclicRotation => {
                let witness = self.rotation_witness.expect("rotation present");
                gamma.is_identity() || (gamma.is_rotation() && ctx.same_center(&witness, gamma))
            }
            SubgroupClass::TranslationOnly => gamma.s == 0,
            SubgroupClass::Mixed => true,
        }
    }
}
