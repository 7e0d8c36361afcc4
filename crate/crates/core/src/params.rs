//! Physical parameter bundles.
//!
//! Units throughout the crate: lengths in µm, transverse wave vectors in
//! rad/µm, and every density is normalized to unit integral over its plane.
//! Since q = p/ħ the uncertainty threshold for transverse position and wave
//! vector is the dimensionless 1/2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A length that may be infinite, meaning the term it controls is absent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extent {
    Finite(f64),
    Infinite,
}

impl Extent {
    pub fn inf() -> Self {
        Extent::Infinite
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Extent::Infinite)
    }

    /// 1/x², exactly zero for the infinite sentinel.
    pub fn inv_sq(self) -> f64 {
        match self {
            Extent::Finite(x) => 1.0 / (x * x),
            Extent::Infinite => 0.0,
        }
    }

    /// 1/x, exactly zero for the infinite sentinel.
    pub fn recip(self) -> f64 {
        match self {
            Extent::Finite(x) => 1.0 / x,
            Extent::Infinite => 0.0,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Extent::Finite(x) => x,
            Extent::Infinite => f64::INFINITY,
        }
    }

    fn canonical(self) -> Self {
        match self {
            Extent::Finite(x) if x.is_infinite() => Extent::Infinite,
            other => other,
        }
    }
}

impl From<f64> for Extent {
    fn from(x: f64) -> Self {
        Extent::Finite(x).canonical()
    }
}

impl std::fmt::Display for Extent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Extent::Finite(x) => write!(f, "{x}"),
            Extent::Infinite => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for Extent {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "inf" | "+inf" | "Inf" | "infinity" => Ok(Extent::Infinite),
            t => t
                .parse::<f64>()
                .map(Extent::from)
                .map_err(|e| format!("invalid number `{t}`: {e}")),
        }
    }
}

// JSON has no infinity, so the sentinel travels as the string "inf".
impl Serialize for Extent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extent::Finite(x) => s.serialize_f64(*x),
            Extent::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Extent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Extent::from(x)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Gaussian Schell-model pump beam.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PumpParams {
    /// Beam waist w.
    pub w: f64,
    /// Transverse coherence length.
    pub ell_c: Extent,
    /// Radius of curvature (sign distinguishes converging and diverging beams).
    #[serde(rename = "R")]
    pub radius: Extent,
    /// Pump wave number.
    pub k_p: f64,
}

impl PumpParams {
    pub fn new(w: f64, ell_c: impl Into<Extent>, radius: impl Into<Extent>, k_p: f64) -> Self {
        PumpParams {
            w,
            ell_c: ell_c.into(),
            radius: radius.into(),
            k_p,
        }
    }

    /// Fully coherent pump with a flat phase front.
    pub fn coherent(w: f64, k_p: f64) -> Self {
        Self::new(w, Extent::Infinite, Extent::Infinite, k_p)
    }

    pub fn with_ell_c(self, ell_c: impl Into<Extent>) -> Self {
        PumpParams {
            ell_c: ell_c.into(),
            ..self
        }
    }

    pub fn with_radius(self, radius: impl Into<Extent>) -> Self {
        PumpParams {
            radius: radius.into(),
            ..self
        }
    }

    /// 1/𝓡² = k_p/R with the sign of R kept; zero for a flat phase.
    pub fn inv_curvature_sq(&self) -> f64 {
        self.k_p * self.radius.recip()
    }

    /// w⁴/𝓡⁴.
    pub fn w4_over_curv4(&self) -> f64 {
        let t = self.w * self.w * self.inv_curvature_sq();
        t * t
    }

    pub fn validate(self) -> Result<Self> {
        positive("w", self.w)?;
        positive("k_p", self.k_p)?;
        let ell_c = match self.ell_c.canonical() {
            Extent::Finite(x) => {
                positive("ell_c", x)?;
                Extent::Finite(x)
            }
            Extent::Infinite => Extent::Infinite,
        };
        let radius = match self.radius.canonical() {
            Extent::Finite(x) if x.is_nan() => return Err(Error::NonFiniteParameter("R")),
            Extent::Finite(0.0) => return Err(Error::ZeroParameter("R")),
            // A negative infinity is still a flat phase front.
            other => other,
        };
        Ok(PumpParams {
            ell_c,
            radius,
            ..self
        })
    }
}

pub fn validate_pump(p: PumpParams) -> Result<PumpParams> {
    p.validate()
}

/// Nonlinear crystal and phase-matching parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrystalParams {
    /// Crystal length.
    #[serde(rename = "L")]
    pub length: f64,
    /// Front-face position; the crystal occupies [z0 − L, z0].
    pub z0: f64,
    /// Width parameter of the Gaussian approximation to the sinc.
    pub alpha: f64,
    /// Nondegeneracy, β² = k_i/k_s.
    pub beta: f64,
    pub k_p: f64,
}

/// Conventional Gaussian-approximation parameter.
pub const DEFAULT_ALPHA: f64 = 0.455;

impl CrystalParams {
    /// Degenerate crystal with the origin at its back face (z0 = L).
    pub fn new(length: f64, k_p: f64) -> Self {
        CrystalParams {
            length,
            z0: length,
            alpha: DEFAULT_ALPHA,
            beta: 1.0,
            k_p,
        }
    }

    pub fn centered(self) -> Self {
        CrystalParams {
            z0: self.length / 2.0,
            ..self
        }
    }

    pub fn with_z0(self, z0: f64) -> Self {
        CrystalParams { z0, ..self }
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        CrystalParams { alpha, ..self }
    }

    pub fn validate(self) -> Result<Self> {
        positive("L", self.length)?;
        if !self.z0.is_finite() {
            return Err(Error::NonFiniteParameter("z0"));
        }
        positive("alpha", self.alpha)?;
        positive("beta", self.beta)?;
        positive("k_p", self.k_p)?;
        Ok(self)
    }
}

pub fn validate_crystal(c: CrystalParams) -> Result<CrystalParams> {
    c.validate()
}

fn positive(name: &'static str, x: f64) -> Result<()> {
    if x.is_nan() || x.is_infinite() {
        Err(Error::NonFiniteParameter(name))
    } else if x <= 0.0 {
        Err(Error::NonPositiveParameter(name))
    } else {
        Ok(())
    }
}
