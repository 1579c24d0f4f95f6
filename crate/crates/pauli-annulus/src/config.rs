//! JSON run configuration: schema, validation and construction of the solver
//! objects. Unknown keys are rejected so typos fail loudly.

use serde::Deserialize;
use std::path::Path;

use crate::annulus::{AnnulusGeometry, RadialField};
use crate::error::{Error, Result};
use crate::fiber::Formulation;
use crate::gauge::GaugeData;
use crate::potential::{solve_scalar_potential, ScalarPotential};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub geometry: GeometryConfig,
    pub field: FieldConfig,
    #[serde(default)]
    pub gauge: GaugeConfig,
    #[serde(default)]
    pub numerics: NumericsConfig,
    #[serde(default)]
    pub experiment: ExperimentConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Default output directory; the command line can override it.
    pub directory: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub rho1: f64,
    pub rho2: f64,
}

/// Field profile. `kind` selects which of the other keys apply.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldConfig {
    Constant { value: f64 },
    /// Coefficients in r, lowest degree first.
    Polynomial { coefficients: Vec<f64> },
    Table { r: Vec<f64>, b: Vec<f64> },
}

/// Either a raw inner-boundary circulation of the vector potential, or the
/// symmetric gauge derived from the field's extension into the hole.
/// Exactly one of the two must be given.
#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct GaugeConfig {
    pub circulation: Option<f64>,
    #[serde(default)]
    pub symmetric_gauge: bool,
    /// Conjugation index shifting the circulation by 2 pi h p.
    #[serde(default)]
    pub p: i64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericsConfig {
    #[serde(default = "default_n_grid")]
    pub n_grid: usize,
    #[serde(default = "default_formulation")]
    pub formulation: FormulationConfig,
    #[serde(default = "default_half_width")]
    pub m_half_width: i64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulationConfig {
    Direct,
    Weighted,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_h_list")]
    pub h_list: Vec<f64>,
    #[serde(default = "default_k_max")]
    pub k_max: usize,
}

fn default_n_grid() -> usize {
    4096
}

fn default_formulation() -> FormulationConfig {
    FormulationConfig::Weighted
}

fn default_half_width() -> i64 {
    8
}

fn default_h_list() -> Vec<f64> {
    vec![0.2, 0.1, 0.05]
}

fn default_k_max() -> usize {
    2
}

impl Default for NumericsConfig {
    fn default() -> Self {
        NumericsConfig {
            n_grid: default_n_grid(),
            formulation: default_formulation(),
            m_half_width: default_half_width(),
        }
    }
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            h_list: default_h_list(),
            k_max: default_k_max(),
        }
    }
}

impl RunConfig {
    /// Read and validate a config file. Missing files and malformed JSON are
    /// reported as distinct error classes so the CLI can map them to
    /// distinct exit codes.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let cfg: RunConfig = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.geometry.rho1 > 0.0 && self.geometry.rho1 < self.geometry.rho2) {
            return Err(Error::Config(format!(
                "geometry: need 0 < rho1 < rho2, got rho1={}, rho2={}",
                self.geometry.rho1, self.geometry.rho2
            )));
        }
        if self.gauge.circulation.is_some() && self.gauge.symmetric_gauge {
            return Err(Error::Config(
                "gauge: give either circulation or symmetric_gauge, not both".into(),
            ));
        }
        if self.numerics.n_grid < 128 {
            return Err(Error::Config(format!(
                "numerics.n_grid must be >= 128, got {}",
                self.numerics.n_grid
            )));
        }
        if self.experiment.k_max == 0 {
            return Err(Error::Config("experiment.k_max must be >= 1".into()));
        }
        if self.experiment.h_list.is_empty() {
            return Err(Error::Config("experiment.h_list must not be empty".into()));
        }
        if let Some(h) = self.experiment.h_list.iter().find(|h| !(**h > 0.0)) {
            return Err(Error::Config(format!(
                "experiment.h_list entries must be positive, found {h}"
            )));
        }
        if self.numerics.m_half_width < 1 {
            return Err(Error::Config(
                "numerics.m_half_width must be >= 1".into(),
            ));
        }
        Ok(())
    }

    pub fn geometry(&self) -> Result<AnnulusGeometry> {
        AnnulusGeometry::new(self.geometry.rho1, self.geometry.rho2)
    }

    pub fn field(&self) -> Result<RadialField> {
        let geom = self.geometry()?;
        match &self.field {
            FieldConfig::Constant { value } => RadialField::constant(geom, *value),
            FieldConfig::Polynomial { coefficients } => {
                RadialField::polynomial(geom, coefficients.clone())
            }
            FieldConfig::Table { r, b } => RadialField::table(geom, r.clone(), b.clone()),
        }
    }

    pub fn potential(&self, field: &RadialField) -> Result<ScalarPotential> {
        solve_scalar_potential(self.geometry()?, field, self.numerics.n_grid)
    }

    /// Resolve the gauge declaration. No declaration means zero circulation
    /// (the scalar-gauge representative has c0 = rho1 phi'(rho1)).
    pub fn gauge_data(&self, pot: &ScalarPotential, field: &RadialField) -> Result<GaugeData> {
        let circ = if self.gauge.symmetric_gauge {
            field.symmetric_gauge_circulation()?
        } else {
            self.gauge.circulation.unwrap_or(0.0)
        };
        Ok(GaugeData::new(pot, circ, self.gauge.p))
    }

    pub fn formulation(&self) -> Formulation {
        match self.numerics.formulation {
            FormulationConfig::Direct => Formulation::Direct,
            FormulationConfig::Weighted => Formulation::Weighted,
        }
    }
}
