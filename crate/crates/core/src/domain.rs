use serde::{Deserialize, Serialize};

/// Open interval a parameter lives in, together with the smooth bijection
/// to the real line used by the unconstrained optimizers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Domain {
    /// (0, ∞), mapped by exp.
    Positive,
    /// (−∞, ∞), identity.
    Real,
    /// (0, 1), mapped by the logistic function.
    Unit,
    /// (−1, 1), mapped by tanh.
    Symmetric,
}

impl Domain {
    pub fn contains(self, v: f64) -> bool {
        match self {
            Domain::Positive => v > 0.0 && v.is_finite(),
            Domain::Real => v.is_finite(),
            Domain::Unit => v > 0.0 && v < 1.0,
            Domain::Symmetric => v > -1.0 && v < 1.0,
        }
    }

    /// Maps an unconstrained coordinate into the domain.
    pub fn from_free(self, psi: f64) -> f64 {
        match self {
            Domain::Positive => psi.exp(),
            Domain::Real => psi,
            Domain::Unit => 1.0 / (1.0 + (-psi).exp()),
            Domain::Symmetric => psi.tanh(),
        }
    }

    /// Inverse of [`Domain::from_free`].
    pub fn to_free(self, v: f64) -> f64 {
        match self {
            Domain::Positive => v.ln(),
            Domain::Real => v,
            Domain::Unit => (v / (1.0 - v)).ln(),
            Domain::Symmetric => v.atanh(),
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Domain::Positive => "(0, inf)",
            Domain::Real => "(-inf, inf)",
            Domain::Unit => "(0, 1)",
            Domain::Symmetric => "(-1, 1)",
        }
    }
}
