//! Rotation angles in radians.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::scalar::Scalar;

/// An angle in radians, stored raw.
///
/// Angles are never silently reduced: the stored value is exactly what was
/// given. Reduction happens only in comparisons, through [`Angle::rem_mod`]
/// and the `is_zero_*` / `eq_mod` helpers. Y-rotations are periodic in 4π
/// (half-angle matrix), phases in 2π.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Angle<S>(S);

impl<S: Scalar> Angle<S> {
    /// Wraps radians. Panics on NaN or infinity; use [`Angle::checked`] for
    /// unvalidated input.
    pub fn new(radians: S) -> Self {
        assert!(radians.is_finite(), "angle must be finite");
        Angle(radians)
    }

    /// Wraps radians, rejecting NaN and infinity.
    pub fn checked(radians: S) -> Option<Self> {
        radians.is_finite().then_some(Angle(radians))
    }

    pub fn zero() -> Self {
        Angle(S::zero())
    }

    pub fn radians(self) -> S {
        self.0
    }

    /// Canonical representative in `(-period/2, period/2]`.
    pub fn rem_mod(self, period: S) -> S {
        let r = self.0 - (self.0 / period).round() * period;
        // `round` can land us on -period/2 exactly; fold to +period/2.
        if r <= -period / S::from_f64_lossy(2.0) {
            r + period
        } else {
            r
        }
    }

    /// Zero modulo 4π — the identity test for Y-rotations.
    pub fn is_zero_ry(self) -> bool {
        self.rem_mod(S::four_pi()).abs() < S::angle_zero_tol()
    }

    /// Zero modulo 2π — the identity test for phases.
    pub fn is_zero_rz(self) -> bool {
        self.rem_mod(S::two_pi()).abs() < S::angle_zero_tol()
    }

    /// Equality modulo the given period.
    pub fn eq_mod(self, other: Self, period: S) -> bool {
        (self - other).rem_mod_abs(period) < S::angle_zero_tol()
    }

    fn rem_mod_abs(self, period: S) -> S {
        self.rem_mod(period).abs()
    }

    pub fn half(self) -> Self {
        Angle(self.0 / S::from_f64_lossy(2.0))
    }
}

impl<S: Scalar> Add for Angle<S> {
    type Output = Angle<S>;
    fn add(self, rhs: Self) -> Self {
        Angle(self.0 + rhs.0)
    }
}

impl<S: Scalar> Sub for Angle<S> {
    type Output = Angle<S>;
    fn sub(self, rhs: Self) -> Self {
        Angle(self.0 - rhs.0)
    }
}

impl<S: Scalar> Neg for Angle<S> {
    type Output = Angle<S>;
    fn neg(self) -> Self {
        Angle(-self.0)
    }
}

impl<S: Scalar> fmt::Display for Angle<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}
