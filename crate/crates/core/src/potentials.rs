//! The split harmonic and split linear potential families.
//!
//! Both families are piecewise in `x` with the kink at the origin:
//!
//! ```text
//! harmonic:  V(x) = kappa nu^2 x^2 / (2 nu - 1)^2   (x < 0),   kappa nu^2 x^2   (x >= 0)
//! linear:    V(x) = -kappa nu x / (2 nu - 1)       (x < 0),   kappa nu x       (x >= 0)
//! ```
//!
//! At `nu = 1` both are symmetric. As `nu` decreases towards `1/2` the left
//! wall steepens and the right side softens while the separation of the
//! turning points at any fixed energy stays the same.

use core::fmt;
use core::str::FromStr;

use num_rational::Ratio;

use crate::{Error, Result};

/// Physical constants `hbar`, `m` and the stiffness `kappa`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Units {
    pub hbar: f64,
    pub mass: f64,
    /// Energy/length^2 for the harmonic family, energy/length for the linear one.
    pub kappa: f64,
}

impl Units {
    pub fn new(hbar: f64, mass: f64, kappa: f64) -> Result<Self> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if ok(hbar) && ok(mass) && ok(kappa) {
            Ok(Self { hbar, mass, kappa })
        } else {
            Err(Error::InvalidUnits { hbar, mass, kappa })
        }
    }

    /// `hbar = m = 1`, `kappa = 1/2`, so that `omega = 1`.
    pub const fn harmonic_default() -> Self {
        Self { hbar: 1.0, mass: 1.0, kappa: 0.5 }
    }

    /// `hbar = m = kappa = 1`, so that `(hbar^2 kappa^2 / m)^(1/3) = 1`.
    pub const fn linear_default() -> Self {
        Self { hbar: 1.0, mass: 1.0, kappa: 1.0 }
    }

    pub fn default_for(kind: PotentialKind) -> Self {
        match kind {
            PotentialKind::SplitHarmonic => Self::harmonic_default(),
            PotentialKind::SplitLinear => Self::linear_default(),
        }
    }

    /// Angular frequency `sqrt(2 kappa / m)` of the symmetric harmonic model.
    pub fn omega(&self) -> f64 {
        libm::sqrt(2.0 * self.kappa / self.mass)
    }

    /// Natural energy unit of the linear model, `(hbar^2 kappa^2 / m)^(1/3)`.
    pub fn linear_energy_unit(&self) -> f64 {
        libm::cbrt(self.hbar * self.hbar * self.kappa * self.kappa / self.mass)
    }

    /// Natural energy unit of `kind`: `hbar omega` or `(hbar^2 kappa^2 / m)^(1/3)`.
    pub fn energy_unit(&self, kind: PotentialKind) -> f64 {
        match kind {
            PotentialKind::SplitHarmonic => self.hbar * self.omega(),
            PotentialKind::SplitLinear => self.linear_energy_unit(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PotentialKind {
    SplitHarmonic,
    SplitLinear,
}

impl fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PotentialKind::SplitHarmonic => "harmonic",
            PotentialKind::SplitLinear => "linear",
        })
    }
}

/// Shear parameter, kept as an exact rational when it was supplied as one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shear {
    Exact(Ratio<i64>),
    Float(f64),
}

impl Shear {
    pub fn value(&self) -> f64 {
        match *self {
            Shear::Exact(r) => ratio_to_f64(r),
            Shear::Float(v) => v,
        }
    }

    /// Left-branch scale factor `nu / (2 nu - 1)`.
    pub fn left_scale(&self) -> f64 {
        match *self {
            Shear::Exact(r) => {
                let one = Ratio::from_integer(1);
                ratio_to_f64(r / (r + r - one))
            }
            Shear::Float(v) => v / (2.0 * v - 1.0),
        }
    }

    pub fn as_ratio(&self) -> Option<Ratio<i64>> {
        match *self {
            Shear::Exact(r) => Some(r),
            Shear::Float(_) => None,
        }
    }
}

pub(crate) fn ratio_to_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl From<f64> for Shear {
    fn from(v: f64) -> Self {
        Shear::Float(v)
    }
}

impl From<Ratio<i64>> for Shear {
    fn from(r: Ratio<i64>) -> Self {
        Shear::Exact(r)
    }
}

impl fmt::Display for Shear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shear::Exact(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Shear::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Shear::Float(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseShearError;

impl fmt::Display for ParseShearError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected a decimal number or a fraction p/q")
    }
}

impl FromStr for Shear {
    type Err = ParseShearError;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| ParseShearError)?;
            let q: i64 = q.trim().parse().map_err(|_| ParseShearError)?;
            if q == 0 {
                return Err(ParseShearError);
            }
            Ok(Shear::Exact(Ratio::new(p, q)))
        } else {
            s.parse::<f64>().map(Shear::Float).map_err(|_| ParseShearError)
        }
    }
}

/// Classical turning points at a given energy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TurningPoints {
    pub x_minus: f64,
    pub x_plus: f64,
}

impl TurningPoints {
    pub fn width(&self) -> f64 {
        self.x_plus - self.x_minus
    }

    pub fn contains(&self, x: f64) -> bool {
        self.x_minus < x && x < self.x_plus
    }
}

/// A one-dimensional confining potential with a single kink at the origin.
///
/// Each branch must be smooth on its closed half-line, `V(0) = 0` must be the
/// global minimum and `V` must grow without bound in both directions. The
/// shooting solver matches its left and right integrations at `x = 0`.
pub trait Potential {
    fn value(&self, x: f64) -> f64;
    /// `dV/dx`, taken from the left branch for `x < 0` and from the right one otherwise.
    fn slope(&self, x: f64) -> f64;
    fn turning_points(&self, energy: f64) -> Result<TurningPoints>;
    fn hbar(&self) -> f64;
    fn mass(&self) -> f64;
}

/// One member of a sheared family at a fixed shear.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Model {
    pub kind: PotentialKind,
    pub units: Units,
    nu: Shear,
    left_scale: f64,
}

impl Model {
    /// Accepts `1/2 < nu <= 1`.
    pub fn new(kind: PotentialKind, units: Units, nu: impl Into<Shear>) -> Result<Self> {
        Self::build(kind, units, nu.into(), 1.0)
    }

    /// Accepts any `nu > 1/2`, including the unexplored `nu > 1` side.
    pub fn new_extended(kind: PotentialKind, units: Units, nu: impl Into<Shear>) -> Result<Self> {
        Self::build(kind, units, nu.into(), f64::INFINITY)
    }

    fn build(kind: PotentialKind, units: Units, nu: Shear, max: f64) -> Result<Self> {
        let units = Units::new(units.hbar, units.mass, units.kappa)?;
        let valid = match nu {
            Shear::Exact(r) => {
                let half = Ratio::new(1, 2);
                r > half && (max.is_infinite() || ratio_to_f64(r) <= max)
            }
            Shear::Float(v) => v.is_finite() && v > 0.5 && v <= max,
        };
        if !valid {
            return Err(Error::ShearOutOfRange { nu: nu.value(), min: 0.5, max });
        }
        Ok(Self { kind, units, nu, left_scale: nu.left_scale() })
    }

    pub fn nu(&self) -> f64 {
        self.nu.value()
    }

    pub fn shear(&self) -> Shear {
        self.nu
    }

    /// `nu / (2 nu - 1)`; the left branch is the right one with `nu` replaced by this.
    pub fn left_scale(&self) -> f64 {
        self.left_scale
    }

    fn branch_scale(&self, x: f64) -> f64 {
        if x < 0.0 {
            self.left_scale
        } else {
            self.nu()
        }
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        let s = self.branch_scale(x);
        let kappa = self.units.kappa;
        match self.kind {
            PotentialKind::SplitHarmonic => kappa * s * s * x * x,
            PotentialKind::SplitLinear => kappa * s * libm::fabs(x),
        }
    }

    pub fn turning_points(&self, energy: f64) -> Result<TurningPoints> {
        if energy.is_nan() || energy <= 0.0 {
            return Err(Error::NonPositiveEnergy(energy));
        }
        let kappa = self.units.kappa;
        let reach = match self.kind {
            PotentialKind::SplitHarmonic => libm::sqrt(energy / kappa),
            PotentialKind::SplitLinear => energy / kappa,
        };
        Ok(TurningPoints { x_minus: -reach / self.left_scale, x_plus: reach / self.nu() })
    }
}

impl Potential for Model {
    fn value(&self, x: f64) -> f64 {
        self.evaluate(x)
    }

    fn slope(&self, x: f64) -> f64 {
        let s = self.branch_scale(x);
        let kappa = self.units.kappa;
        match self.kind {
            PotentialKind::SplitHarmonic => 2.0 * kappa * s * s * x,
            PotentialKind::SplitLinear => {
                if x < 0.0 {
                    -kappa * s
                } else {
                    kappa * s
                }
            }
        }
    }

    fn turning_points(&self, energy: f64) -> Result<TurningPoints> {
        Model::turning_points(self, energy)
    }

    fn hbar(&self) -> f64 {
        self.units.hbar
    }

    fn mass(&self) -> f64 {
        self.units.mass
    }
}
