//! Boilerplate shared by the public series newtypes.

macro_rules! poly_wrapper {
    ($ty:ident) => {
        impl $ty {
            pub fn zero(dim: usize, cap: u32) -> crate::error::Result<Self> {
                crate::series::poly::check_shape(dim, cap)?;
                Ok($ty(crate::series::poly::Poly::zero(dim, cap)))
            }

            pub fn constant(dim: usize, cap: u32, c: crate::series::Scalar) -> crate::error::Result<Self> {
                crate::series::poly::check_shape(dim, cap)?;
                Ok($ty(crate::series::poly::Poly::constant(dim, cap, c)))
            }

            pub fn dim(&self) -> usize {
                self.0.dim
            }

            pub fn weight_cap(&self) -> u32 {
                self.0.cap
            }

            pub fn is_zero(&self) -> bool {
                self.0.is_zero()
            }

            /// Number of stored (nonzero) terms.
            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_zero()
            }

            /// Lowest weight carrying a nonzero coefficient.
            pub fn min_weight(&self) -> Option<u32> {
                self.0.min_weight()
            }

            fn same_dim(&self, other: &Self) -> crate::error::Result<()> {
                if self.0.dim != other.0.dim {
                    return Err(crate::error::Error::DimensionMismatch {
                        left: self.0.dim,
                        right: other.0.dim,
                    });
                }
                Ok(())
            }

            pub fn add(&self, other: &Self) -> crate::error::Result<Self> {
                self.same_dim(other)?;
                Ok($ty(self.0.add(&other.0)))
            }

            pub fn sub(&self, other: &Self) -> crate::error::Result<Self> {
                self.same_dim(other)?;
                Ok($ty(self.0.sub(&other.0)))
            }

            pub fn mul(&self, other: &Self) -> crate::error::Result<Self> {
                self.same_dim(other)?;
                Ok($ty(self.0.mul(&other.0)))
            }

            pub fn pow(&self, k: u32) -> Self {
                $ty(self.0.pow(k))
            }

            pub fn scale(&self, c: &crate::series::Scalar) -> Self {
                $ty(self.0.scale(c))
            }

            pub fn neg(&self) -> Self {
                $ty(self.0.neg())
            }

            /// Drops every term above `cap` (never raises the cap).
            pub fn truncate(&self, cap: u32) -> Self {
                $ty(self.0.truncate(cap))
            }

            /// Sets the cap, treating the stored polynomial as exact when raising it.
            pub fn with_cap(&self, cap: u32) -> crate::error::Result<Self> {
                crate::series::poly::check_shape(self.0.dim, cap)?;
                Ok($ty(self.0.with_cap(cap)))
            }

            /// Restriction to the terms of exactly the given weight.
            pub fn weight_component(&self, w: u32) -> Self {
                let dim = self.0.dim;
                $ty(self.0.filter(|m| m.weight(dim) == w))
            }
        }
    };
}

pub(crate) use poly_wrapper;
