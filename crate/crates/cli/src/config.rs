//! Flat `section.key = value` configuration with typed resolution.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::str::FromStr;

use mayerfield::beam::{
    BeamParams, CurvatureFormula, SlitConfig, SlitVelocityField, VelocityMethod,
};
use mayerfield::trajectory::IntegratorConfig;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("unknown config key '{0}'")]
    UnknownKey(String),
    #[error("line {line}: expected 'section.key = value', got '{text}'")]
    Syntax { line: usize, text: String },
    #[error("invalid value '{value}' for {key}: {reason}")]
    InvalidValue {
        key: String,
        value: String,
        reason: String,
    },
    #[error(transparent)]
    Model(#[from] mayerfield::Error),
}

pub type ConfigResult<T> = std::result::Result<T, ConfigError>;

/// Placeholder for values derived from other keys.
pub const AUTO: &str = "auto";

/// Every recognised key with its default.
const DEFAULTS: &[(&str, &str)] = &[
    ("beam.w0", AUTO),
    ("beam.k", AUTO),
    ("beam.z0", AUTO),
    ("beam.lambda", AUTO),
    ("slits.a", "3"),
    ("slits.curvature", "standard"),
    ("integrator.method", "analytic"),
    ("integrator.dz", AUTO),
    ("integrator.z_screen", AUTO),
    ("integrator.x_bounds", "30"),
    ("integrator.vz_min", "1e-6"),
    ("integrator.max_steps", "1000000"),
    ("integrator.h_fd", AUTO),
    ("integrator.density_floor", "1e-12"),
    ("seeding.n_uniform", "200"),
    ("seeding.x_min", "-5"),
    ("seeding.x_max", "5"),
    ("seeding.n_sampled", "20000"),
    ("seeding.bins", "40"),
    ("seeding.rng_seed", "7"),
    ("output.trajectory_stride", "10"),
    ("output.density_nx", "241"),
    ("output.density_nz", "101"),
    ("lattice.n", "16"),
    ("lattice.k_scale", "1"),
    ("lattice.phase", "0.3"),
    ("fresnel.samples", "4096"),
    ("fresnel.half_window", AUTO),
    ("fresnel.z", AUTO),
    ("fresnel.slit_half_window", AUTO),
    ("eikonal.n", "41"),
    ("eikonal.h", "0.05"),
    ("caratheodory.m", "1"),
    ("caratheodory.c", "1"),
    ("caratheodory.rapidity", "0.6"),
    ("caratheodory.s_max", "5"),
    ("caratheodory.steps", "200"),
    ("inversion.n0c", "1"),
    ("inversion.pi", AUTO),
    ("inversion.rapidity", "0.5"),
    ("inversion.samples", "100"),
    ("inversion.tol", "1e-9"),
];

/// Raw key/value map; every key in `DEFAULTS` is always present.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
    explicit: BTreeMap<String, bool>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            values: DEFAULTS
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
            explicit: BTreeMap::new(),
        }
    }
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> ConfigResult<()> {
        let slot = self
            .values
            .get_mut(key)
            .ok_or_else(|| ConfigError::UnknownKey(key.to_string()))?;
        *slot = value.trim().to_string();
        self.explicit.insert(key.to_string(), value.trim() != AUTO);
        Ok(())
    }

    /// Applies an override of the form `section.key=value`.
    pub fn apply_assignment(&mut self, assignment: &str) -> ConfigResult<()> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| ConfigError::Syntax {
                line: 0,
                text: assignment.to_string(),
            })?;
        self.set(key.trim(), value)
    }

    /// Applies every `section.key = value` line of a config file.
    pub fn apply_text(&mut self, text: &str) -> ConfigResult<()> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: n + 1,
                text: raw.to_string(),
            })?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    pub fn raw(&self, key: &str) -> &str {
        self.values
            .get(key)
            .map(String::as_str)
            .unwrap_or_else(|| panic!("unregistered key {key}"))
    }

    fn is_explicit(&self, key: &str) -> bool {
        self.explicit.get(key).copied().unwrap_or(false)
    }

    pub fn get<T>(&self, key: &str) -> ConfigResult<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        let raw = self.raw(key);
        raw.parse().map_err(|e: T::Err| ConfigError::InvalidValue {
            key: key.to_string(),
            value: raw.to_string(),
            reason: e.to_string(),
        })
    }

    /// Parsed value, or `fallback` when the key is left at `auto`.
    pub fn get_or<T>(&self, key: &str, fallback: T) -> ConfigResult<T>
    where
        T: FromStr,
        T::Err: Display,
    {
        if self.raw(key) == AUTO {
            Ok(fallback)
        } else {
            self.get(key)
        }
    }

    pub fn get_four(&self, key: &str) -> ConfigResult<[f64; 4]> {
        let raw = self.raw(key);
        let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
        let invalid = |reason: String| ConfigError::InvalidValue {
            key: key.to_string(),
            value: raw.to_string(),
            reason,
        };
        if parts.len() != 4 {
            return Err(invalid(format!(
                "expected 4 comma-separated numbers, got {}",
                parts.len()
            )));
        }
        let mut out = [0.0; 4];
        for (slot, p) in out.iter_mut().zip(parts) {
            *slot = p
                .parse()
                .map_err(|e: std::num::ParseFloatError| invalid(e.to_string()))?;
        }
        Ok(out)
    }

    /// Beam parameters from any two of `w0`, `k`, `z0` (all three must agree
    /// if given); unset values fall back to `w0 = 1`, `k = 100`.
    pub fn beam(&self) -> ConfigResult<BeamParams> {
        let pick = |key: &str| -> ConfigResult<Option<f64>> {
            if self.is_explicit(key) {
                self.get(key).map(Some)
            } else {
                Ok(None)
            }
        };
        let (w0, k, z0) = (pick("beam.w0")?, pick("beam.k")?, pick("beam.z0")?);
        let params = match (w0, k, z0) {
            (Some(w), Some(k), Some(z)) => BeamParams::new(w, z, k)?,
            (Some(w), Some(k), None) => BeamParams::from_waist_and_wavenumber(w, k)?,
            (Some(w), None, Some(z)) => BeamParams::from_waist_and_rayleigh(w, z)?,
            (None, Some(k), Some(z)) => BeamParams::from_rayleigh_and_wavenumber(z, k)?,
            (Some(w), None, None) => BeamParams::from_waist_and_wavenumber(w, 100.0)?,
            (None, Some(k), None) => BeamParams::from_waist_and_wavenumber(1.0, k)?,
            (None, None, Some(z)) => BeamParams::from_waist_and_rayleigh(1.0, z)?,
            (None, None, None) => BeamParams::from_waist_and_wavenumber(1.0, 100.0)?,
        };
        match pick("beam.lambda")? {
            Some(l) => Ok(params.with_lambda(l)?),
            None => Ok(params),
        }
    }

    pub fn slits(&self) -> ConfigResult<SlitConfig> {
        let curvature: CurvatureFormula = self.get("slits.curvature")?;
        Ok(SlitConfig::new(self.get("slits.a")?, curvature)?)
    }

    pub fn integrator(&self) -> ConfigResult<IntegratorConfig> {
        let beam = self.beam()?;
        let cfg = IntegratorConfig {
            dz: self.get_or("integrator.dz", beam.z0() / 100.0)?,
            z_screen: self.get_or("integrator.z_screen", 10.0 * beam.z0())?,
            x_bounds: self.get("integrator.x_bounds")?,
            max_steps: self.get("integrator.max_steps")?,
            vz_min: self.get("integrator.vz_min")?,
            record_every: self.get("output.trajectory_stride")?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn velocity_field(&self) -> ConfigResult<SlitVelocityField> {
        let params = self.beam()?;
        let method = match self.raw("integrator.method") {
            "analytic" => VelocityMethod::Analytic,
            "finite-difference" => VelocityMethod::FiniteDifference {
                h_fd: self.get_or("integrator.h_fd", params.default_fd_step())?,
            },
            other => {
                return Err(ConfigError::InvalidValue {
                    key: "integrator.method".into(),
                    value: other.into(),
                    reason: "expected analytic|finite-difference".into(),
                })
            }
        };
        Ok(SlitVelocityField {
            params,
            slits: self.slits()?,
            floor: self.get("integrator.density_floor")?,
            method,
        })
    }

    /// Every key with `auto` replaced by its resolved value, in key order.
    pub fn resolved(&self) -> ConfigResult<Vec<(String, String)>> {
        let beam = self.beam()?;
        let integ = self.integrator()?;
        let resolve = |key: &str| -> String {
            match key {
                "beam.w0" => beam.w0().to_string(),
                "beam.k" => beam.k().to_string(),
                "beam.z0" => beam.z0().to_string(),
                "beam.lambda" => beam.lambda().to_string(),
                "integrator.dz" => integ.dz.to_string(),
                "integrator.z_screen" => integ.z_screen.to_string(),
                "integrator.h_fd" => beam.default_fd_step().to_string(),
                "fresnel.half_window" => (20.0 * beam.w0()).to_string(),
                "fresnel.z" => beam.z0().to_string(),
                "fresnel.slit_half_window" => (60.0 * beam.w0()).to_string(),
                "inversion.pi" => "rest current boosted by inversion.rapidity".to_string(),
                _ => String::new(),
            }
        };
        Ok(self
            .values
            .iter()
            .map(|(k, v)| {
                let shown = if k.starts_with("beam.") || v == AUTO {
                    resolve(k)
                } else {
                    v.clone()
                };
                (k.clone(), shown)
            })
            .collect())
    }

    /// Comment block echoing the resolved configuration.
    pub fn header(&self, command: &str) -> ConfigResult<String> {
        let mut out = format!("# mayerfield {command}\n");
        for (k, v) in self.resolved()? {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        Ok(out)
    }
}
