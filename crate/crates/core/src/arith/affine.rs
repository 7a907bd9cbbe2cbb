use super::Scalar;

/// The index map `n ↦ slope·n + intercept`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMap<T> {
    pub slope: T,
    pub intercept: T,
}

impl<T: Scalar> AffineMap<T> {
    pub fn new(slope: T, intercept: T) -> Self {
        AffineMap { slope, intercept }
    }

    pub fn identity() -> Self {
        AffineMap::new(T::one(), T::zero())
    }

    pub fn constant(c: T) -> Self {
        AffineMap::new(T::zero(), c)
    }

    pub fn is_constant(&self) -> bool {
        self.slope.is_zero()
    }

    pub fn eval(&self, n: &T) -> T {
        self.slope.clone() * n.clone() + self.intercept.clone()
    }

    /// `self ∘ inner`, i.e. `n ↦ self(inner(n))`.
    pub fn compose(&self, inner: &AffineMap<T>) -> Self {
        AffineMap::new(
            self.slope.clone() * inner.slope.clone(),
            self.slope.clone() * inner.intercept.clone() + self.intercept.clone(),
        )
    }

    /// `n ↦ self(n + t)`.
    pub fn shifted(&self, t: &T) -> Self {
        AffineMap::new(self.slope.clone(), self.intercept.clone() + self.slope.clone() * t.clone())
    }

    pub fn add(&self, other: &AffineMap<T>) -> Self {
        AffineMap::new(
            self.slope.clone() + other.slope.clone(),
            self.intercept.clone() + other.intercept.clone(),
        )
    }

    pub fn scale(&self, c: &T) -> Self {
        AffineMap::new(self.slope.clone() * c.clone(), self.intercept.clone() * c.clone())
    }
}
