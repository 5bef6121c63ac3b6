use super::group::{FiniteAbelianGroup, GroupElement};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// A homomorphism between presented groups, given by an integer matrix with
/// one row per target factor and one column per source factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homomorphism {
    source: FiniteAbelianGroup,
    target: FiniteAbelianGroup,
    matrix: IntMatrix<i64>,
}

impl Homomorphism {
    /// Validates shape and well-definedness: the image of the `j`-th source
    /// generator must be killed by its order `d_j`. Entries are reduced
    /// modulo the target moduli row-wise.
    pub fn new(
        source: FiniteAbelianGroup,
        target: FiniteAbelianGroup,
        matrix: IntMatrix<i64>,
    ) -> Result<Self> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.rank(),
                source.rank()
            )));
        }
        let mut m = matrix;
        for i in 0..m.rows() {
            let di = target.moduli()[i];
            for j in 0..m.cols() {
                m[(i, j)] = m[(i, j)].rem_euclid(di);
            }
        }
        for (j, &dj) in source.moduli().iter().enumerate() {
            for (i, &di) in target.moduli().iter().enumerate() {
                if (i128::from(dj) * i128::from(m[(i, j)])) % i128::from(di) != 0 {
                    return Err(Error::NotWellDefined(format!(
                        "generator {j} has order {dj} but its image is not killed by {dj}"
                    )));
                }
            }
        }
        Ok(Homomorphism { source, target, matrix: m })
    }

    /// Homomorphism sending the `j`-th source generator to `images[j]`.
    pub fn from_images(
        source: FiniteAbelianGroup,
        target: FiniteAbelianGroup,
        images: &[GroupElement],
    ) -> Result<Self> {
        let cols: Vec<Vec<i64>> = images.iter().map(|e| e.0.clone()).collect();
        let m = IntMatrix::from_cols(&cols, target.rank())?;
        if images.len() != source.rank() {
            return Err(Error::Dimension(format!(
                "{} images for {} generators",
                images.len(),
                source.rank()
            )));
        }
        Self::new(source, target, m)
    }

    pub fn identity(g: &FiniteAbelianGroup) -> Self {
        Homomorphism {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::from_rows(
                (0..g.rank())
                    .map(|i| (0..g.rank()).map(|j| i64::from(i == j) % g.moduli()[i]).collect())
                    .collect(),
                g.rank(),
            )
            .expect("square"),
        }
    }

    /// Multiplication by an integer, as an endomorphism.
    pub fn scalar(g: &FiniteAbelianGroup, k: i64) -> Self {
        let mut m = IntMatrix::zeros(g.rank(), g.rank());
        for i in 0..g.rank() {
            m[(i, i)] = k.rem_euclid(g.moduli()[i]);
        }
        Homomorphism { source: g.clone(), target: g.clone(), matrix: m }
    }

    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix<i64> {
        &self.matrix
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        self.source.check(x)?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &GroupElement) -> GroupElement {
        let coords: Vec<i64> = (0..self.target.rank())
            .map(|i| {
                let d = i128::from(self.target.moduli()[i]);
                let s: i128 = self
                    .matrix
                    .row(i)
                    .iter()
                    .zip(&x.0)
                    .map(|(&a, &b)| i128::from(a) * i128::from(b) % d)
                    .sum();
                s.rem_euclid(d) as i64
            })
            .collect();
        GroupElement(coords)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if self.target != other.source {
            return Err(Error::AmbientMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        let images: Vec<GroupElement> = (0..self.source.rank())
            .map(|j| other.apply_unchecked(&self.apply_unchecked(&self.source.basis(j))))
            .collect();
        Homomorphism::from_images(self.source.clone(), other.target.clone(), &images)
    }

    /// True when this is the identity on a group (same presentation).
    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == Homomorphism::identity(&self.source)
    }
}
