use core::fmt;
use num_complex::Complex64;

use super::StructureKind;
use crate::error::{Error, Result};

/// A point `α/β` of the extended complex plane. Never `(0, 0)`.
///
/// Equality is projective: `(α, β) == (tα, tβ)` for any `t != 0`.
#[derive(Debug, Clone, Copy)]
pub struct HomogeneousValue {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl HomogeneousValue {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        if alpha == Complex64::new(0.0, 0.0) && beta == Complex64::new(0.0, 0.0) {
            return Err(Error::DegeneratePencil("homogeneous value (0, 0)"));
        }
        Ok(HomogeneousValue { alpha, beta })
    }

    pub fn from_complex(z: Complex64) -> Self {
        HomogeneousValue {
            alpha: z,
            beta: Complex64::new(1.0, 0.0),
        }
    }

    pub fn infinity() -> Self {
        HomogeneousValue {
            alpha: Complex64::new(1.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.beta == Complex64::new(0.0, 0.0)
    }

    /// `α/β`, or `None` at infinity.
    pub fn value(&self) -> Option<Complex64> {
        if self.is_infinite() {
            None
        } else {
            Some(self.alpha / self.beta)
        }
    }

    /// `α·β' − α'·β`; zero exactly when the two points coincide.
    pub fn cross(&self, other: &Self) -> Complex64 {
        self.alpha * other.beta - other.alpha * self.beta
    }

    /// Representative with `|α|² + |β|² = 1`.
    pub fn normalized(&self) -> Self {
        let s = libm::hypot(self.alpha.norm(), self.beta.norm());
        HomogeneousValue {
            alpha: self.alpha / s,
            beta: self.beta / s,
        }
    }

    pub fn chordal_distance(&self, other: &Self) -> f64 {
        let x = self.normalized();
        let y = other.normalized();
        x.cross(&y).norm().min(1.0)
    }

    /// The eigenvalue paired with `self` by the structure.
    ///
    /// Palindromic: `1/conj(λ)`, alternating: `-conj(λ)`.
    pub fn companion(&self, kind: StructureKind) -> Self {
        match kind {
            StructureKind::Palindromic => HomogeneousValue {
                alpha: self.beta.conj(),
                beta: self.alpha.conj(),
            },
            StructureKind::Alternating => HomogeneousValue {
                alpha: -self.alpha.conj(),
                beta: self.beta.conj(),
            },
        }
    }

    /// Distance from the point to its own companion. Zero on the unit circle
    /// (palindromic) or the extended imaginary axis (alternating).
    pub fn self_pair_distance(&self, kind: StructureKind) -> f64 {
        self.chordal_distance(&self.companion(kind))
    }

    /// Nearest self-companion point: radial projection onto the unit circle,
    /// or dropping the real part.
    pub fn project_self_paired(&self, kind: StructureKind) -> Self {
        let x = self.normalized();
        match kind {
            StructureKind::Palindromic => {
                let (ra, rb) = (x.alpha.norm(), x.beta.norm());
                if ra == 0.0 || rb == 0.0 {
                    return *self;
                }
                HomogeneousValue {
                    alpha: x.alpha / ra,
                    beta: x.beta / rb,
                }
            }
            StructureKind::Alternating => match x.value() {
                None => x,
                Some(z) => HomogeneousValue::from_complex(Complex64::new(0.0, z.im)),
            },
        }
    }
}

impl PartialEq for HomogeneousValue {
    fn eq(&self, other: &Self) -> bool {
        self.cross(other) == Complex64::new(0.0, 0.0)
    }
}

impl fmt::Display for HomogeneousValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(z) => write!(f, "{}{:+}i", z.re, z.im),
            None => write!(f, "inf"),
        }
    }
}
