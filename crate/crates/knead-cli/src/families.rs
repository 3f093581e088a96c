//! Map-family specifications: named parameter sets resolved into the
//! library's map objects, with kneading eligibility policed here.

use anyhow::{anyhow, bail, Context, Result};
use knead_core::interval_map::{IntervalMap, PlanarMap, TriangularMap};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    #[value(name = "quadratic")]
    Quadratic,
    #[value(name = "triangular_quadratic")]
    TriangularQuadratic,
    #[value(name = "baker")]
    Baker,
    #[value(name = "twisted_horseshoe")]
    TwistedHorseshoe,
    #[value(name = "kaplan_yorke")]
    KaplanYorke,
    #[value(name = "custom_piecewise")]
    CustomPiecewise,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Quadratic => "quadratic",
            Family::TriangularQuadratic => "triangular_quadratic",
            Family::Baker => "baker",
            Family::TwistedHorseshoe => "twisted_horseshoe",
            Family::KaplanYorke => "kaplan_yorke",
            Family::CustomPiecewise => "custom_piecewise",
        }
    }

    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            Family::Quadratic => &["a"],
            Family::TriangularQuadratic => &["a", "b"],
            Family::Baker | Family::TwistedHorseshoe => &["a", "b"],
            Family::KaplanYorke => &["a", "b", "c"],
            Family::CustomPiecewise => &[],
        }
    }

    /// The kneading machinery needs a continuous piecewise-monotone map;
    /// the Baker map is discontinuous and the Kaplan-Yorke basis is a
    /// circle map, so those families iterate only.
    pub fn kneading_eligible(self) -> bool {
        matches!(
            self,
            Family::Quadratic | Family::TriangularQuadratic | Family::CustomPiecewise
        )
    }
}

/// A resolved map: either a one-dimensional system, a triangular system, or
/// an iterate-only planar map.
pub enum ResolvedMap {
    Interval(IntervalMap),
    Triangular(TriangularMap),
    Planar(PlanarMap),
}

#[derive(Debug, Clone)]
pub struct MapSpec {
    pub family: Family,
    pub parameters: BTreeMap<String, f64>,
    pub domain: Option<(f64, f64)>,
    pub breakpoints: Vec<f64>,
    pub pieces: Vec<Vec<f64>>,
}

impl MapSpec {
    pub fn param(&self, name: &str) -> Result<f64> {
        self.parameters
            .get(name)
            .copied()
            .ok_or_else(|| anyhow!("family '{}' needs parameter '{name}'", self.family.name()))
    }

    pub fn resolve(&self) -> Result<ResolvedMap> {
        Ok(match self.family {
            Family::Quadratic => ResolvedMap::Interval(IntervalMap::quadratic(self.param("a")?)?),
            Family::TriangularQuadratic => ResolvedMap::Triangular(TriangularMap::quadratic(
                self.param("a")?,
                self.param("b")?,
            )?),
            Family::Baker => ResolvedMap::Planar(PlanarMap::Baker {
                a: self.param("a")?,
                b: self.param("b")?,
            }),
            Family::TwistedHorseshoe => ResolvedMap::Planar(PlanarMap::TwistedHorseshoe {
                a: self.param("a")?,
                b: self.param("b")?,
            }),
            Family::KaplanYorke => ResolvedMap::Planar(PlanarMap::KaplanYorke {
                a: self.param("a")?,
                b: self.param("b")?,
                c: self.param("c")?,
            }),
            Family::CustomPiecewise => {
                let domain = self
                    .domain
                    .ok_or_else(|| anyhow!("custom_piecewise needs --domain lo:hi"))?;
                if self.pieces.is_empty() {
                    bail!("custom_piecewise needs --pieces");
                }
                ResolvedMap::Interval(IntervalMap::piecewise(
                    domain,
                    self.breakpoints.clone(),
                    self.pieces.clone(),
                    1e-9,
                )?)
            }
        })
    }

    /// Re-resolve with one parameter overridden (used by sweeps).
    pub fn with_param(&self, name: &str, value: f64) -> MapSpec {
        let mut out = self.clone();
        out.parameters.insert(name.to_string(), value);
        out
    }
}

pub fn parse_param(s: &str) -> Result<(String, f64)> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| anyhow!("parameter must look like name=value, got '{s}'"))?;
    let value: f64 = value
        .parse()
        .with_context(|| format!("parameter value in '{s}' is not a number"))?;
    Ok((name.trim().to_string(), value))
}

/// "lo:hi" pair.
pub fn parse_domain(s: &str) -> Result<(f64, f64)> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| anyhow!("domain must look like lo:hi, got '{s}'"))?;
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

/// Comma-separated reals.
pub fn parse_reals(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<f64>().map_err(Into::into))
        .collect()
}

/// Pipe-separated pieces of comma-separated ascending coefficients:
/// "0,2|2,-2" is the tent map's two affine pieces.
pub fn parse_pieces(s: &str) -> Result<Vec<Vec<f64>>> {
    s.split('|').map(parse_reals).collect()
}

/// "name=lo:hi:steps" sweep request.
#[derive(Debug, Clone)]
pub struct SweepRange {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl SweepRange {
    pub fn parse(s: &str) -> Result<Self> {
        let (name, rest) = s
            .split_once('=')
            .ok_or_else(|| anyhow!("sweep must look like name=lo:hi:steps, got '{s}'"))?;
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            bail!("sweep range must be lo:hi:steps, got '{rest}'");
        }
        Ok(SweepRange {
            name: name.trim().to_string(),
            lo: parts[0].trim().parse()?,
            hi: parts[1].trim().parse()?,
            steps: parts[2].trim().parse()?,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        match self.steps {
            0 => Vec::new(),
            1 => vec![self.lo],
            n => (0..n)
                .map(|k| self.lo + (self.hi - self.lo) * k as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}
