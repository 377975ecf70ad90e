//! Sublattices of `Z^2` in Hermite normal form.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::IntVec2;

/// A sublattice of `Z^2`, stored by its canonical basis.
///
/// The basis vectors are the columns of a lower-triangular matrix
/// `[[a, 0], [c, d]]` with positive pivots and `0 <= c < d`; a rank-1 lattice
/// keeps just its first column, normalized to a positive leading entry. Two
/// generating sets of the same lattice therefore produce the same value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lattice {
    basis: Vec<IntVec2>,
}

/// Fold generators into `(first, rest)` where `first` carries the gcd of the
/// first coordinates and every vector in `rest` has first coordinate zero.
fn eliminate_first(vectors: &[IntVec2]) -> (Option<IntVec2>, Vec<i64>) {
    let mut pivot: Option<IntVec2> = None;
    let mut seconds = Vec::new();
    for &v in vectors {
        if v[0] == 0 {
            if v[1] != 0 {
                seconds.push(v[1]);
            }
            continue;
        }
        match pivot {
            None => pivot = Some(v),
            Some(mut p) => {
                let mut w = v;
                // Euclid on the first coordinate, applied to whole vectors
                while w[0] != 0 {
                    let q = Integer::div_floor(&p[0], &w[0]);
                    let r = [p[0] - q * w[0], p[1] - q * w[1]];
                    p = w;
                    w = r;
                }
                if w[1] != 0 {
                    seconds.push(w[1]);
                }
                pivot = Some(p);
            }
        }
    }
    (pivot, seconds)
}

impl Lattice {
    pub fn trivial() -> Self {
        Lattice { basis: Vec::new() }
    }

    pub fn full() -> Self {
        Lattice { basis: vec![[1, 0], [0, 1]] }
    }

    /// HNF basis of the sublattice generated by `vectors`.
    pub fn from_generators<'a>(vectors: impl IntoIterator<Item = &'a IntVec2>) -> Self {
        let vectors: Vec<IntVec2> = vectors.into_iter().copied().filter(|v| *v != [0, 0]).collect();
        let (pivot, seconds) = eliminate_first(&vectors);
        let d = seconds.iter().fold(0i64, |g, &x| g.gcd(&x));
        match (pivot, d) {
            (None, 0) => Lattice::trivial(),
            (None, d) => Lattice { basis: vec![[0, d]] },
            (Some(p), 0) => {
                let p = if p[0] < 0 { [-p[0], -p[1]] } else { p };
                Lattice { basis: vec![p] }
            }
            (Some(p), d) => {
                let p = if p[0] < 0 { [-p[0], -p[1]] } else { p };
                Lattice { basis: vec![[p[0], p[1].mod_floor(&d)], [0, d]] }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[IntVec2] {
        &self.basis
    }

    /// Index in `Z^2` for rank 2 lattices.
    pub fn determinant(&self) -> Option<i64> {
        (self.rank() == 2).then(|| self.basis[0][0] * self.basis[1][1])
    }

    /// Lattice generated by both.
    pub fn join(&self, other: &Lattice) -> Lattice {
        Lattice::from_generators(self.basis.iter().chain(other.basis.iter()))
    }

    /// `(Q-span) ∩ Z^2`: the translations with some nonzero multiple in the lattice.
    pub fn saturate(&self) -> Lattice {
        match self.rank() {
            0 => Lattice::trivial(),
            1 => {
                let v = self.basis[0];
                let g = v[0].gcd(&v[1]);
                Lattice { basis: vec![[v[0] / g, v[1] / g]] }
            }
            _ => Lattice::full(),
        }
    }

    pub fn contains(&self, t: IntVec2) -> bool {
        match self.rank() {
            0 => t == [0, 0],
            1 => {
                let v = self.basis[0];
                if v[0] != 0 {
                    t[0] % v[0] == 0 && t[1] == (t[0] / v[0]) * v[1]
                } else {
                    t[0] == 0 && t[1] % v[1] == 0
                }
            }
            _ => {
                let [[a, c], [_, d]] = [self.basis[0], self.basis[1]];
                if t[0] % a != 0 {
                    return false;
                }
                let rest = t[1] - (t[0] / a) * c;
                rest % d == 0
            }
        }
    }

    /// Membership of an integer vector in the rational span.
    pub fn spans(&self, t: IntVec2) -> bool {
        match self.rank() {
            0 => t == [0, 0],
            1 => {
                let v = self.basis[0];
                v[0] * t[1] - v[1] * t[0] == 0
            }
            _ => true,
        }
    }
}

impl fmt::Display for Lattice {
    /// One basis vector per line, `x y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.basis.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} {}", v[0], v[1])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn generator_examples() {
        assert_eq!(Lattice::from_generators(&[]).rank(), 0);
        let one = Lattice::from_generators(&[[2, 4]]);
        assert_eq!(one.rank(), 1);
        assert_eq!(one.basis(), &[[2, 4]]);
        assert_eq!(Lattice::from_generators(&[[-2, -4]]), one);
        let two = Lattice::from_generators(&[[2, 0], [0, 3]]);
        assert_eq!(two.basis(), &[[2, 0], [0, 3]]);
        assert_eq!(two.determinant(), Some(6));
        assert_eq!(Lattice::from_generators(&[[0, -5], [0, 10]]).basis(), &[[0, 5]]);
    }

    #[test]
    fn canonical_across_generating_sets() {
        let a = Lattice::from_generators(&[[1, 0], [0, 1]]);
        let b = Lattice::from_generators(&[[3, 2], [2, 1], [7, 7]]);
        assert_eq!(a, b);
        assert_eq!(a, Lattice::full());
        let c = Lattice::from_generators(&[[2, 1], [0, 3]]);
        let d = Lattice::from_generators(&[[2, 4], [4, 5]]);
        assert_eq!(c, d);
        assert_eq!(c.basis(), &[[2, 1], [0, 3]]);
    }

    #[test]
    fn saturation_examples() {
        assert!(Lattice::trivial().saturate().is_trivial());
        assert_eq!(Lattice::from_generators(&[[2, 0]]).saturate().basis(), &[[1, 0]]);
        assert_eq!(Lattice::from_generators(&[[2, 0], [0, 3]]).saturate(), Lattice::full());
        assert_eq!(Lattice::from_generators(&[[-4, 6]]).saturate().basis(), &[[2, -3]]);
    }

    #[test]
    fn serialization_rows() {
        assert_eq!(Lattice::from_generators(&[[2, 0], [0, 3]]).to_string(), "2 0\n0 3");
    }

    fn vectors() -> impl Strategy<Value = Vec<IntVec2>> {
        prop::collection::vec(((-6i64..=6), (-6i64..=6)).prop_map(|(a, b)| [a, b]), 0..4)
    }

    proptest! {
        #[test]
        fn generators_are_members(vs in vectors()) {
            let l = Lattice::from_generators(&vs);
            for v in &vs {
                prop_assert!(l.contains(*v));
            }
            for b in l.basis() {
                prop_assert!(l.contains(*b));
            }
            // basis generates the same lattice
            prop_assert_eq!(Lattice::from_generators(l.basis()), l.clone());
        }

        #[test]
        fn saturation_contains_with_finite_index(vs in vectors()) {
            let l = Lattice::from_generators(&vs);
            let s = l.saturate();
            prop_assert_eq!(s.rank(), l.rank());
            for b in l.basis() {
                prop_assert!(s.contains(*b));
            }
            for b in s.basis() {
                prop_assert!(l.spans(*b));
            }
        }
    }
}
