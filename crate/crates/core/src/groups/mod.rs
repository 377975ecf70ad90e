//! The orientation-preserving crystallographic groups `Γ_k = Z^2 ⋊ Z/k` for
//! `k = 2, 3, 4, 6`.
//!
//! An element `((m1, m2), s)` stands for `t1^m1 t2^m2 r^s`: its translation
//! part is written in lattice coordinates and its rotation class is taken
//! modulo `k`. The generator of `Z/k` acts on `Z^2` through a fixed integer
//! matrix; the matching geometric rotation by `2π/k` is exact over Q(sqrt 3).

mod lattice;
mod matroid;
mod subgroup;

pub use lattice::Lattice;
pub use matroid::{IndexedSubset, SubsetTransform, TightType};
pub use subgroup::{SubgroupClass, SubgroupDescriptor, TranslationLattice};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::scalar::{Mat2, Scalar};

pub type IntMat2 = [[i64; 2]; 2];
pub type IntVec2 = [i64; 2];

/// A rational point in lattice coordinates.
pub type RationalPoint = [BigRational; 2];

pub const SUPPORTED_ORDERS: [u8; 4] = [2, 3, 4, 6];

/// The group `Γ_k` together with its integer action and geometric rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct GroupContext {
    k: u8,
    powers: [IntMat2; 6],
}

impl TryFrom<u8> for GroupContext {
    type Error = Error;
    fn try_from(k: u8) -> Result<Self> {
        GroupContext::new(k as i64)
    }
}

impl From<GroupContext> for u8 {
    fn from(ctx: GroupContext) -> u8 {
        ctx.k
    }
}

fn int_mul(a: &IntMat2, b: &IntMat2) -> IntMat2 {
    let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn int_apply(m: &IntMat2, t: IntVec2) -> IntVec2 {
    [m[0][0] * t[0] + m[0][1] * t[1], m[1][0] * t[0] + m[1][1] * t[1]]
}

const INT_IDENTITY: IntMat2 = [[1, 0], [0, 1]];

impl GroupContext {
    pub fn new(k: i64) -> Result<Self> {
        let generator: IntMat2 = match k {
            2 => [[-1, 0], [0, -1]],
            3 => [[0, -1], [1, -1]],
            4 => [[0, -1], [1, 0]],
            6 => [[0, -1], [1, 1]],
            _ => return Err(Error::InvalidOrder(k)),
        };
        let mut powers = [INT_IDENTITY; 6];
        for s in 1..6 {
            powers[s] = int_mul(&generator, &powers[s - 1]);
        }
        Ok(GroupContext { k: k as u8, powers })
    }

    pub fn all() -> impl Iterator<Item = GroupContext> {
        SUPPORTED_ORDERS.iter().map(|&k| GroupContext::new(k as i64).unwrap())
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    /// The generator of `Z/k` acting on `Z^2`.
    pub fn action_matrix(&self) -> IntMat2 {
        self.powers[1]
    }

    pub fn action_power(&self, s: u8) -> IntMat2 {
        self.powers[(s % self.k) as usize]
    }

    /// Counterclockwise rotation by `2π/k`, exact.
    pub fn rotation(&self) -> Mat2 {
        let z = Scalar::zero;
        let i = Scalar::from_int;
        match self.k {
            2 => [[i(-1), z()], [z(), i(-1)]],
            3 => [
                [Scalar::from_ratio(-1, 2), Scalar::sqrt3_ratio(-1, 2)],
                [Scalar::sqrt3_ratio(1, 2), Scalar::from_ratio(-1, 2)],
            ],
            4 => [[z(), i(-1)], [i(1), z()]],
            6 => [
                [Scalar::from_ratio(1, 2), Scalar::sqrt3_ratio(-1, 2)],
                [Scalar::sqrt3_ratio(1, 2), Scalar::from_ratio(1, 2)],
            ],
            _ => unreachable!(),
        }
    }

    pub fn rotation_power(&self, s: u8) -> Mat2 {
        let r = self.rotation();
        let mut out = crate::scalar::identity2();
        for _ in 0..(s % self.k) {
            out = crate::scalar::mat_mul(&r, &out);
        }
        out
    }

    /// Number of lattice parameters of a representation: `v1, v2` for k = 2, `v1` otherwise.
    pub fn lattice_params(&self) -> usize {
        if self.k == 2 {
            2
        } else {
            1
        }
    }

    /// `rep(Λ(Γ_k))`: 4 for k = 2, 2 otherwise.
    pub fn full_rep(&self) -> i64 {
        2 * self.lattice_params() as i64
    }

    pub fn element(&self, t: IntVec2, s: i64) -> GroupElement {
        GroupElement { t, s: s.rem_euclid(self.k as i64) as u8 }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    pub fn t1(&self) -> GroupElement {
        GroupElement { t: [1, 0], s: 0 }
    }

    pub fn t2(&self) -> GroupElement {
        GroupElement { t: [0, 1], s: 0 }
    }

    pub fn r(&self) -> GroupElement {
        GroupElement { t: [0, 0], s: 1 }
    }

    pub fn is_valid(&self, a: &GroupElement) -> bool {
        a.s < self.k
    }

    /// `(t_a, s_a)(t_b, s_b) = (t_a + M^{s_a} t_b, s_a + s_b)`.
    pub fn compose(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mt = int_apply(&self.action_power(a.s), b.t);
        GroupElement { t: [a.t[0] + mt[0], a.t[1] + mt[1]], s: (a.s + b.s) % self.k }
    }

    pub fn invert(&self, a: &GroupElement) -> GroupElement {
        let s = (self.k - a.s % self.k) % self.k;
        let mt = int_apply(&self.action_power(s), a.t);
        GroupElement { t: [-mt[0], -mt[1]], s }
    }

    pub fn conjugate(&self, by: &GroupElement, a: &GroupElement) -> GroupElement {
        self.compose(&self.compose(&self.invert(by), a), by)
    }

    pub fn power(&self, a: &GroupElement, e: i64) -> GroupElement {
        let base = if e < 0 { self.invert(a) } else { *a };
        (0..e.unsigned_abs()).fold(GroupElement::IDENTITY, |acc, _| self.compose(&acc, &base))
    }

    /// Integer form of the rotation center: `(adj(I - M^s) t, det(I - M^s))`,
    /// so the center is the first component divided by the second.
    pub(crate) fn center_fraction(&self, a: &GroupElement) -> Option<(IntVec2, i64)> {
        if a.s == 0 {
            return None;
        }
        let m = self.action_power(a.s);
        let (p, q, r, s) = (1 - m[0][0], -m[0][1], -m[1][0], 1 - m[1][1]);
        let det = p * s - q * r;
        debug_assert!(det > 0);
        Some(([s * a.t[0] - q * a.t[1], -r * a.t[0] + p * a.t[1]], det))
    }

    /// Fixed point `(I - M^s)^{-1} t` of a rotation, in lattice coordinates.
    pub fn rotation_center(&self, a: &GroupElement) -> Result<RationalPoint> {
        let (num, det) = self.center_fraction(a).ok_or(Error::NotARotation)?;
        let q = |x: i64| BigRational::new(BigInt::from(x), BigInt::from(det));
        Ok([q(num[0]), q(num[1])])
    }

    pub(crate) fn same_center(&self, a: &GroupElement, b: &GroupElement) -> bool {
        match (self.center_fraction(a), self.center_fraction(b)) {
            (Some((na, da)), Some((nb, db))) => na[0] * db == nb[0] * da && na[1] * db == nb[1] * da,
            _ => false,
        }
    }
}

/// `((m1, m2), s)`: translation part in lattice coordinates, rotation class mod k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub t: IntVec2,
    pub s: u8,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { t: [0, 0], s: 0 };

    pub fn new(t: IntVec2, s: u8) -> Self {
        GroupElement { t, s }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn is_rotation(&self) -> bool {
        self.s != 0
    }

    pub fn is_translation(&self) -> bool {
        self.s == 0 && self.t != [0, 0]
    }
}

impl fmt::Display for GroupElement {
    /// Serialized as `m1 m2 s`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.t[0], self.t[1], self.s)
    }
}

impl FromStr for GroupElement {
    type Err = ParseError;

    /// Reads `m1 m2 s`; the residue is not range-checked against any `k`.
    fn from_str(text: &str) -> std::result::Result<Self, Self::Err> {
        let fields: Vec<&str> = text.split_whitespace().collect();
        let bad = || ParseError::new(0, format!("expected `m1 m2 s`, got `{text}`"));
        if fields.len() != 3 {
            return Err(bad());
        }
        let m1 = fields[0].parse().map_err(|_| bad())?;
        let m2 = fields[1].parse().map_err(|_| bad())?;
        let s: u8 = fields[2].parse().map_err(|_| bad())?;
        Ok(GroupElement { t: [m1, m2], s })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{identity2, mat_mul};
    use proptest::prelude::*;

    fn ctx(k: i64) -> GroupContext {
        GroupContext::new(k).unwrap()
    }

    #[test]
    fn action_matrices_match_table() {
        assert_eq!(ctx(2).action_matrix(), [[-1, 0], [0, -1]]);
        assert_eq!(ctx(3).action_matrix(), [[0, -1], [1, -1]]);
        assert_eq!(ctx(4).action_matrix(), [[0, -1], [1, 0]]);
        assert_eq!(ctx(6).action_matrix(), [[0, -1], [1, 1]]);
        assert_eq!(GroupContext::new(5), Err(Error::InvalidOrder(5)));
    }

    #[test]
    fn action_has_exact_order_k() {
        for c in GroupContext::all() {
            let m = c.action_matrix();
            let mut p = INT_IDENTITY;
            for s in 1..=c.k() {
                p = int_mul(&m, &p);
                assert_eq!(p == INT_IDENTITY, s == c.k(), "k={} s={}", c.k(), s);
            }
        }
    }

    #[test]
    fn geometric_rotation_is_orthogonal_of_order_k() {
        for c in GroupContext::all() {
            let r = c.rotation();
            let det = &r[0][0] * &r[1][1] - &r[0][1] * &r[1][0];
            assert_eq!(det, Scalar::one());
            let rt = [[r[0][0].clone(), r[1][0].clone()], [r[0][1].clone(), r[1][1].clone()]];
            assert_eq!(mat_mul(&rt, &r), identity2());
            let mut p = identity2();
            for s in 1..=c.k() {
                p = mat_mul(&r, &p);
                assert_eq!(p == identity2(), s == c.k());
            }
        }
    }

    #[test]
    fn compose_examples() {
        let k4 = ctx(4);
        assert_eq!(k4.compose(&k4.element([1, 0], 1), &k4.element([1, 0], 0)), k4.element([1, 1], 1));
        let k2 = ctx(2);
        assert_eq!(k2.compose(&k2.r(), &k2.t1()), k2.element([-1, 0], 1));
        for c in GroupContext::all() {
            let g = c.element([3, -2], 1);
            assert_eq!(c.compose(&c.identity(), &g), g);
        }
    }

    #[test]
    fn invert_examples() {
        let k4 = ctx(4);
        assert_eq!(k4.invert(&k4.element([1, 0], 1)), k4.element([0, 1], 3));
        assert_eq!(k4.invert(&GroupElement::IDENTITY), GroupElement::IDENTITY);
        let k2 = ctx(2);
        assert_eq!(k2.invert(&k2.element([2, 3], 0)), k2.element([-2, -3], 0));
    }

    #[test]
    fn rotation_center_examples() {
        let half = BigRational::new(1.into(), 2.into());
        let zero = BigRational::from_integer(0.into());
        let k2 = ctx(2);
        assert_eq!(k2.rotation_center(&k2.element([1, 0], 1)).unwrap(), [half.clone(), zero.clone()]);
        for c in GroupContext::all() {
            assert_eq!(c.rotation_center(&c.r()).unwrap(), [zero.clone(), zero.clone()]);
            assert_eq!(c.rotation_center(&c.t1()), Err(Error::NotARotation));
        }
        let k4 = ctx(4);
        assert_eq!(k4.rotation_center(&k4.element([1, 0], 1)).unwrap(), [half.clone(), half]);
        let k3 = ctx(3);
        let third = |n: i64| BigRational::new(n.into(), 3.into());
        assert_eq!(k3.rotation_center(&k3.element([1, 0], 1)).unwrap(), [third(2), third(1)]);
    }

    #[test]
    fn element_text_round_trip() {
        let g = GroupElement::new([-3, 7], 2);
        assert_eq!(g.to_string(), "-3 7 2");
        assert_eq!("-3 7 2".parse::<GroupElement>().unwrap(), g);
        assert!("1 2".parse::<GroupElement>().is_err());
    }

    fn element(k: u8) -> impl Strategy<Value = GroupElement> {
        ((-5i64..=5), (-5i64..=5), 0..k).prop_map(|(a, b, s)| GroupElement::new([a, b], s))
    }

    fn context() -> impl Strategy<Value = GroupContext> {
        prop::sample::select(vec![2i64, 3, 4, 6]).prop_map(|k| GroupContext::new(k).unwrap())
    }

    proptest! {
        #[test]
        fn group_axioms(c in context(), seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut pick = || c.element([rng.gen_range(-5..=5), rng.gen_range(-5..=5)], rng.gen_range(0..c.k() as i64));
            let (a, b, d) = (pick(), pick(), pick());
            prop_assert_eq!(c.compose(&c.compose(&a, &b), &d), c.compose(&a, &c.compose(&b, &d)));
            prop_assert_eq!(c.compose(&a, &c.invert(&a)), GroupElement::IDENTITY);
            prop_assert_eq!(c.compose(&c.invert(&a), &a), GroupElement::IDENTITY);
            prop_assert_eq!(c.compose(&a, &GroupElement::IDENTITY), a);
        }

        #[test]
        fn center_is_fixed(a in element(6)) {
            let c = ctx(6);
            prop_assume!(a.is_rotation());
            let center = c.rotation_center(&a).unwrap();
            // t + M^s c = c
            let m = c.action_power(a.s);
            for i in 0..2 {
                let image = BigRational::from_integer(a.t[i].into())
                    + BigRational::from_integer(m[i][0].into()) * &center[0]
                    + BigRational::from_integer(m[i][1].into()) * &center[1];
                prop_assert_eq!(&image, &center[i]);
            }
        }
    }
}
