use std::fmt;

use num_integer::Integer;

use super::congruence::lcm_all;
use crate::error::{Error, Result};

/// `Z/d_1 x ... x Z/d_k`, stored with the moduli exactly as given.
///
/// The moduli are not forced into invariant-factor form; `[2, 3]` and `[6]`
/// are different presentations of isomorphic groups. The empty list is the
/// trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAbelianGroup {
    moduli: Vec<i64>,
    order: u64,
    exponent: i64,
}

/// Residue vector of a group element. Coordinates are always reduced into
/// `[0, d_i)`; the type itself does not know its group, so operations go
/// through [`FiniteAbelianGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupElement(pub Vec<i64>);

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl FiniteAbelianGroup {
    pub fn new(moduli: Vec<i64>) -> Result<Self> {
        if let Some(d) = moduli.iter().find(|&&d| d < 1) {
            return Err(Error::InvalidGroup(format!("modulus {d} must be at least 1")));
        }
        let order = moduli
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d as u64))
            .ok_or_else(|| Error::InvalidGroup("group order exceeds 64 bits".into()))?;
        let exponent = lcm_all(moduli.iter().copied())?;
        Ok(FiniteAbelianGroup { moduli, order, exponent })
    }

    pub fn cyclic(n: i64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { moduli: Vec::new(), order: 1, exponent: 1 }
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// True for a single-factor presentation `Z/n`.
    pub fn is_presented_cyclic(&self) -> bool {
        self.moduli.len() == 1
    }

    /// Moduli of `G^t`: this group's moduli repeated `t` times.
    pub fn power_moduli(&self, t: usize) -> Vec<i64> {
        (0..t).flat_map(|_| self.moduli.iter().copied()).collect()
    }

    /// `G^t` as a group. Fails when its order does not fit in 64 bits; the
    /// linear algebra on large powers works from [`Self::power_moduli`].
    pub fn power(&self, t: usize) -> Result<Self> {
        Self::new(self.power_moduli(t))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.moduli.len()])
    }

    /// Builds an element from arbitrary integers, reducing each coordinate.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.moduli.len() {
            return Err(Error::Dimension(format!(
                "element has {} coordinates, group has {}",
                coords.len(),
                self.moduli.len()
            )));
        }
        Ok(GroupElement(coords.iter().zip(&self.moduli).map(|(&x, &d)| x.rem_euclid(d)).collect()))
    }

    /// The `i`-th standard generator (1 in factor `i`, 0 elsewhere).
    pub fn basis(&self, i: usize) -> GroupElement {
        let mut e = self.zero();
        e.0[i] = 1 % self.moduli[i];
        e
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.0.len() == self.moduli.len() && x.0.iter().zip(&self.moduli).all(|(&c, &d)| (0..d).contains(&c))
    }

    pub fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(format!("{x} is not a reduced element of {self}")))
        }
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter().zip(&y.0).zip(&self.moduli).map(|((&a, &b), &d)| (a + b) % d).collect(),
        )
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter().zip(&y.0).zip(&self.moduli).map(|((&a, &b), &d)| (a - b).rem_euclid(d)).collect(),
        )
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        GroupElement(x.0.iter().zip(&self.moduli).map(|(&a, &d)| (-a).rem_euclid(d)).collect())
    }

    pub fn scale(&self, k: i64, x: &GroupElement) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(&self.moduli)
                .map(|(&a, &d)| ((i128::from(k) * i128::from(a)).rem_euclid(i128::from(d))) as i64)
                .collect(),
        )
    }

    /// Sum of `coeffs[i] * elems[i]`.
    pub fn combine(&self, coeffs: &[i64], elems: &[GroupElement]) -> GroupElement {
        let mut acc = vec![0i128; self.moduli.len()];
        for (&c, e) in coeffs.iter().zip(elems) {
            for (slot, (&x, &d)) in acc.iter_mut().zip(e.0.iter().zip(&self.moduli)) {
                *slot = (*slot + i128::from(c) * i128::from(x)).rem_euclid(i128::from(d));
            }
        }
        GroupElement(acc.into_iter().map(|x| x as i64).collect())
    }

    /// Additive order of `x`.
    pub fn element_order(&self, x: &GroupElement) -> i64 {
        x.0.iter().zip(&self.moduli).fold(1i64, |acc, (&a, &d)| acc.lcm(&(d / a.gcd(&d))))
    }

    /// Mixed-radix index; the first coordinate is the most significant, so
    /// index order agrees with lexicographic order.
    pub fn index_of(&self, x: &GroupElement) -> usize {
        x.0.iter().zip(&self.moduli).fold(0usize, |acc, (&a, &d)| acc * d as usize + a as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut coords = vec![0i64; self.moduli.len()];
        for (slot, &d) in coords.iter_mut().zip(&self.moduli).rev() {
            *slot = (idx % d as usize) as i64;
            idx /= d as usize;
        }
        GroupElement(coords)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order as usize).map(move |i| self.element_at(i))
    }

    /// Index of the sum of two elements given by index.
    pub fn add_index(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0usize;
        let mut weight = 1usize;
        for &d in self.moduli.iter().rev() {
            let d = d as usize;
            let s = (a % d + b % d) % d;
            out += s * weight;
            weight *= d;
            a /= d;
            b /= d;
        }
        out
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.moduli.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_exponent() {
        let g = FiniteAbelianGroup::new(vec![2, 4, 3]).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(g.exponent(), 12);
        assert_eq!(FiniteAbelianGroup::trivial().order(), 1);
        assert!(FiniteAbelianGroup::new(vec![0]).is_err());
    }

    #[test]
    fn index_roundtrip_and_lex_order() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let all: Vec<_> = g.elements().collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        for (i, e) in all.iter().enumerate() {
            assert_eq!(g.index_of(e), i);
        }
        for a in 0..6 {
            for b in 0..6 {
                let s = g.add(&g.element_at(a), &g.element_at(b));
                assert_eq!(g.add_index(a, b), g.index_of(&s));
            }
        }
    }

    #[test]
    fn arithmetic_reduces() {
        let g = FiniteAbelianGroup::new(vec![4, 6]).unwrap();
        let x = g.element(&[3, 5]).unwrap();
        let y = g.element(&[-1, 7]).unwrap();
        assert_eq!(y, GroupElement(vec![3, 1]));
        assert_eq!(g.add(&x, &y), GroupElement(vec![2, 0]));
        assert_eq!(g.sub(&x, &y), GroupElement(vec![0, 4]));
        assert_eq!(g.neg(&x), GroupElement(vec![1, 1]));
        assert_eq!(g.scale(-3, &x), GroupElement(vec![3, 3]));
        assert_eq!(g.element_order(&x), 12);
        assert_eq!(g.element_order(&g.zero()), 1);
    }
}
