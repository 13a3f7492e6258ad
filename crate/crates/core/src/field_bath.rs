//! Massive scalar field bath: spectral densities and GKLS rate coefficients.
//!
//! Natural units (hbar = c = k_B = 1). The qubit level spacing `omega` sets the
//! frequency scale and every rate coefficient is reported in units of the
//! massless vacuum emission rate `gamma0 = mu^2 omega / (2 pi)`, so a propagation
//! time `tau` is always the dimensionless product `gamma0 * tau`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{finite, non_negative, positive, Error, Result};

/// State of the field the qubits are immersed in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Bath {
    Vacuum,
    Thermal { temperature: f64 },
}

/// Physical parameters of the field and the qubit pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldBathConfig {
    pub mass: f64,
    pub omega: f64,
    pub mu: f64,
    pub separation: f64,
    pub bath: Bath,
}

impl FieldBathConfig {
    pub fn new(mass: f64, omega: f64, mu: f64, separation: f64, bath: Bath) -> Result<Self> {
        non_negative("mass", mass)?;
        positive("omega", omega)?;
        positive("mu", mu)?;
        non_negative("separation", separation)?;
        if let Bath::Thermal { temperature } = bath {
            positive("temperature", temperature)?;
        }
        Ok(Self {
            mass,
            omega,
            mu,
            separation,
            bath,
        })
    }

    /// Configuration in dimensionless form: `omega = 1` and `mu` chosen so that
    /// `gamma0 = 1`. `separation` is `omega * L`, `temp_ratio` is `T / omega`.
    pub fn dimensionless(
        mass_ratio: f64,
        separation: f64,
        temp_ratio: Option<f64>,
    ) -> Result<Self> {
        let bath = match temp_ratio {
            None => Bath::Vacuum,
            Some(t) => Bath::Thermal { temperature: t },
        };
        Self::new(mass_ratio, 1.0, (2.0 * PI).sqrt(), separation, bath)
    }

    pub fn gray_factor(&self) -> f64 {
        gray_factor(self.mass, self.omega).expect("validated config")
    }

    pub fn spatial_factor(&self) -> f64 {
        spatial_factor(self.omega, self.separation, self.gray_factor()).expect("validated config")
    }

    pub fn gamma0(&self) -> f64 {
        gamma0(self.mu, self.omega).expect("validated config")
    }

    /// Inverse temperature, `None` in vacuum.
    pub fn beta(&self) -> Option<f64> {
        match self.bath {
            Bath::Vacuum => None,
            Bath::Thermal { temperature } => Some(1.0 / temperature),
        }
    }

    /// Rate coefficients for whichever bath the config describes.
    pub fn coefficients(&self) -> GklsCoefficients {
        match self.bath {
            Bath::Vacuum => vacuum_coefficients(self).expect("bath checked"),
            Bath::Thermal { .. } => thermal_coefficients(self).expect("bath checked"),
        }
    }
}

/// The four coefficients driving the population and coherence equations,
/// in units of `gamma0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GklsCoefficients {
    pub a1: f64,
    pub b1: f64,
    pub a2: f64,
    pub b2: f64,
}

impl GklsCoefficients {
    pub const ZERO: Self = Self {
        a1: 0.0,
        b1: 0.0,
        a2: 0.0,
        b2: 0.0,
    };

    pub fn is_zero(&self) -> bool {
        self.a1 == 0.0 && self.b1 == 0.0 && self.a2 == 0.0 && self.b2 == 0.0
    }

    /// True when the coefficients have the vacuum structure `a1 = b1`, `a2 = b2`.
    pub fn is_vacuum_like(&self) -> bool {
        self.a1 == self.b1 && self.a2 == self.b2
    }

    /// Ratio `a2 / a1`; 0 when all rates vanish.
    pub fn lambda(&self) -> f64 {
        if self.a1 == 0.0 {
            0.0
        } else {
            self.a2 / self.a1
        }
    }

    /// Checks the structural invariants within a relative tolerance.
    pub fn check(&self, tol: f64) -> Result<()> {
        for (name, v) in [
            ("a1", self.a1),
            ("b1", self.b1),
            ("a2", self.a2),
            ("b2", self.b2),
        ] {
            finite(name, v)?;
        }
        non_negative("a1", self.a1)?;
        non_negative("b1", self.b1)?;
        let slack = tol * self.a1.max(self.b1).max(1e-300);
        if self.a2.abs() > self.a1 + slack {
            return Err(Error::InvalidParameter {
                name: "a2",
                value: self.a2,
                reason: "|a2| must not exceed a1",
            });
        }
        if self.b2.abs() > self.b1 + slack {
            return Err(Error::InvalidParameter {
                name: "b2",
                value: self.b2,
                reason: "|b2| must not exceed b1",
            });
        }
        if self.b1 > self.a1 + slack {
            return Err(Error::InvalidParameter {
                name: "b1",
                value: self.b1,
                reason: "b1 must not exceed a1",
            });
        }
        if self.a1 > 0.0 && self.b1 > 0.0 {
            let gap = (self.a2 / self.a1 - self.b2 / self.b1).abs();
            if gap > tol.max(1e-12) {
                return Err(Error::InvalidParameter {
                    name: "b2",
                    value: self.b2,
                    reason: "a2/a1 and b2/b1 must agree",
                });
            }
        }
        Ok(())
    }
}

/// `sqrt(1 - m^2/omega^2)` above the mass gap, exactly 0 when `omega <= m`.
pub fn gray_factor(mass: f64, omega: f64) -> Result<f64> {
    non_negative("mass", mass)?;
    positive("omega", omega)?;
    if omega <= mass {
        return Ok(0.0);
    }
    let r = mass / omega;
    Ok(((1.0 - r) * (1.0 + r)).sqrt())
}

/// `sin(x)/x` with `x = omega * L * gray`; 1 at `x = 0`.
pub fn spatial_factor(omega: f64, separation: f64, gray: f64) -> Result<f64> {
    positive("omega", omega)?;
    non_negative("separation", separation)?;
    non_negative("gray_factor", gray)?;
    if gray > 1.0 {
        return Err(Error::InvalidParameter {
            name: "gray_factor",
            value: gray,
            reason: "must lie in [0, 1]",
        });
    }
    Ok(sinc(omega * separation * gray))
}

pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0)
    } else {
        x.sin() / x
    }
}

/// Single-qubit spontaneous emission rate into the massless vacuum.
pub fn gamma0(mu: f64, omega: f64) -> Result<f64> {
    positive("mu", mu)?;
    positive("omega", omega)?;
    Ok(mu * mu * omega / (2.0 * PI))
}

pub fn vacuum_coefficients(config: &FieldBathConfig) -> Result<GklsCoefficients> {
    if config.bath != Bath::Vacuum {
        return Err(Error::InvalidParameter {
            name: "bath",
            value: config.beta().unwrap_or(f64::NAN),
            reason: "vacuum coefficients need a vacuum bath",
        });
    }
    let gray = config.gray_factor();
    let lambda = config.spatial_factor();
    let a = gray / 4.0;
    Ok(GklsCoefficients {
        a1: a,
        b1: a,
        a2: lambda * a,
        b2: lambda * a,
    })
}

pub fn thermal_coefficients(config: &FieldBathConfig) -> Result<GklsCoefficients> {
    let beta = match config.bath {
        Bath::Thermal { temperature } => 1.0 / temperature,
        Bath::Vacuum => {
            return Err(Error::InvalidParameter {
                name: "bath",
                value: 0.0,
                reason: "thermal coefficients need a thermal bath",
            })
        }
    };
    let gray = config.gray_factor();
    let lambda = config.spatial_factor();
    let b1 = gray / 4.0;
    let a1 = b1 * coth(0.5 * config.omega * beta);
    Ok(GklsCoefficients {
        a1,
        b1,
        a2: lambda * a1,
        b2: lambda * b1,
    })
}

pub(crate) fn coth(x: f64) -> f64 {
    1.0 / x.tanh()
}

/// Fourier transforms of the same-point and cross-point vacuum Wightman
/// functions at frequency `zeta`, for two static detectors a distance
/// `separation` apart. Zero below the mass gap.
pub fn spectral_density(zeta: f64, mass: f64, separation: f64) -> Result<(f64, f64)> {
    finite("zeta", zeta)?;
    non_negative("mass", mass)?;
    non_negative("separation", separation)?;
    if zeta <= mass {
        return Ok((0.0, 0.0));
    }
    let k = ((zeta - mass) * (zeta + mass)).sqrt();
    let same = k / (2.0 * PI);
    let kl = k * separation;
    let cross = if kl < 1e-4 {
        let kl2 = kl * kl;
        same * (1.0 - kl2 / 6.0 * (1.0 - kl2 / 20.0))
    } else {
        kl.sin() / (2.0 * PI * separation)
    };
    Ok((same, cross))
}

/// Thermal spectral densities built from the vacuum ones by detailed balance:
/// emission weighted by `1 + n`, absorption by `n`, with `n` the Bose factor.
pub fn thermal_spectral_density(
    zeta: f64,
    mass: f64,
    separation: f64,
    beta: f64,
) -> Result<(f64, f64)> {
    positive("beta", beta)?;
    if zeta >= 0.0 {
        let (same, cross) = spectral_density(zeta, mass, separation)?;
        let weight = -1.0 / (-beta * zeta).exp_m1();
        Ok((same * weight, cross * weight))
    } else {
        let (same, cross) = spectral_density(-zeta, mass, separation)?;
        let n = 1.0 / (-beta * zeta).exp_m1();
        Ok((same * n, cross * n))
    }
}

/// Coefficients assembled directly from the spectral densities,
/// `A = mu^2/4 [G(omega) + G(-omega)]`, `B = mu^2/4 [G(omega) - G(-omega)]`,
/// rescaled to units of `gamma0`. Independent of the closed forms above.
pub fn coefficients_from_spectral_density(config: &FieldBathConfig) -> Result<GklsCoefficients> {
    let w = config.omega;
    let (up, down) = match config.bath {
        Bath::Vacuum => (
            spectral_density(w, config.mass, config.separation)?,
            spectral_density(-w, config.mass, config.separation)?,
        ),
        Bath::Thermal { temperature } => (
            thermal_spectral_density(w, config.mass, config.separation, 1.0 / temperature)?,
            thermal_spectral_density(-w, config.mass, config.separation, 1.0 / temperature)?,
        ),
    };
    let scale = config.mu * config.mu / 4.0 / config.gamma0();
    Ok(GklsCoefficients {
        a1: scale * (up.0 + down.0),
        b1: scale * (up.0 - down.0),
        a2: scale * (up.1 + down.1),
        b2: scale * (up.1 - down.1),
    })
}
