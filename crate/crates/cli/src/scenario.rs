//! Scenario files: one JSON object per invocation, strictly typed.

use fedosov_core::cohomology::{CentralExtension, Coefficients};
use fedosov_core::json::{
    ActionJson, ConnectionJson, FormSeriesJson, SeriesJson, SymplectoJson, WeylElementJson,
};
use fedosov_core::geometry::ChartManifold;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Star,
    FedosovBuild,
    FlatSection,
    Lift,
    CocycleCheck,
    Dmap,
    Witness,
    Classify,
    Cech,
    H2Connect,
}

impl Command {
    pub fn needs_connection(self) -> bool {
        !matches!(self, Command::Cech | Command::H2Connect)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarChoice {
    #[default]
    Exact,
    Approx,
}

/// Seeded random polynomials (plane) or trigonometric polynomials (torus).
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomFunctions {
    pub count: usize,
    /// Total degree on the plane, largest frequency on the torus.
    pub degree: u32,
}

/// Replace one generator's unit by `1 + c·yᵅ` with seeded `c`, `α`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Perturbation {
    /// 1-based generator index.
    pub generator: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentralJson {
    pub constant: String,
    #[serde(default)]
    pub mode: Option<Vec<i32>>,
    #[serde(default)]
    pub tail: Option<SeriesJson>,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BuiltinComplex {
    Tetrahedron,
    Torus,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ComplexJson {
    Builtin { builtin: BuiltinComplex },
    Explicit { vertices: usize, triangles: Vec<[usize; 3]> },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    /// Must match the subcommand when present.
    #[serde(default)]
    pub command: Option<Command>,
    #[serde(default)]
    pub scalar: ScalarChoice,
    #[serde(rename = "D", default)]
    pub trunc: Option<u32>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub manifold: Option<ChartManifold>,
    #[serde(default)]
    pub connection: Option<ConnectionJson>,
    #[serde(default)]
    pub theta: Option<FormSeriesJson>,
    #[serde(default)]
    pub f: Option<SeriesJson>,
    #[serde(default)]
    pub g: Option<SeriesJson>,
    #[serde(default)]
    pub functions: Option<Vec<SeriesJson>>,
    #[serde(default)]
    pub random_pairs: Option<RandomFunctions>,
    #[serde(default)]
    pub action: Option<ActionJson>,
    #[serde(default)]
    pub units: Option<Vec<WeylElementJson>>,
    #[serde(default)]
    pub perturb: Option<Perturbation>,
    #[serde(default)]
    pub gamma: Option<SymplectoJson>,
    #[serde(default)]
    pub target_theta: Option<FormSeriesJson>,
    #[serde(default)]
    pub primitive: Option<FormSeriesJson>,
    #[serde(default)]
    pub unit: Option<WeylElementJson>,
    #[serde(default)]
    pub central: Option<CentralJson>,
    #[serde(default)]
    pub covectors: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub random_covectors: Option<usize>,
    #[serde(default)]
    pub constants: Option<Vec<String>>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub complex: Option<ComplexJson>,
    #[serde(default)]
    pub coefficients: Option<Vec<Coefficients>>,
    #[serde(default)]
    pub extension: Option<CentralExtension>,
    #[serde(default)]
    pub eta: Option<Vec<usize>>,
}

/// Parse with JSON-pointer error locations.
pub fn parse(text: &str) -> Result<Scenario, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = pointer_of(e.path());
        CliError::Schema { pointer, message: e.inner().to_string() }
    })
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => {
                out.push('/');
                out.push_str(&key.replace('~', "~0").replace('/', "~1"));
            }
            Segment::Enum { variant } => out.push_str(&format!("/{variant}")),
            Segment::Unknown => out.push_str("/?"),
        }
    }
    out
}

impl Scenario {
    /// Block-presence and truncation checks for the chosen command.
    pub fn validate(&self, command: Command) -> Result<(), CliError> {
        if let Some(c) = self.command {
            if c != command {
                return Err(CliError::schema("/command", format!("scenario is for {c:?}, invoked as {command:?}")));
            }
        }
        if let Some(d) = self.trunc {
            if d < 2 || d % 2 != 0 {
                return Err(CliError::schema("/D", format!("truncation degree must be even and at least 2, got {d}")));
            }
        }
        if command.needs_connection() {
            if self.trunc.is_none() {
                return Err(CliError::schema("/D", "missing truncation degree"));
            }
            if self.manifold.is_none() {
                return Err(CliError::schema("/manifold", "missing manifold block"));
            }
        }
        let missing = |name: &str| CliError::schema(&format!("/{name}"), format!("{command:?} needs the {name} block"));
        match command {
            Command::Star => {
                if self.random_pairs.is_none() && (self.f.is_none() || self.g.is_none()) {
                    return Err(missing("f"));
                }
                if self.f.is_some() != self.g.is_some() {
                    return Err(missing(if self.f.is_some() { "g" } else { "f" }));
                }
            }
            Command::FlatSection if self.functions.is_none() => return Err(missing("functions")),
            Command::CocycleCheck if self.action.is_none() => return Err(missing("action")),
            Command::Classify if self.action.is_none() => return Err(missing("action")),
            Command::Dmap if self.unit.is_none() == self.central.is_none() => {
                return Err(CliError::schema("/unit", "dmap needs exactly one of unit or central"));
            }
            Command::Witness if self.covectors.is_none() && self.random_covectors.is_none() => {
                return Err(missing("covectors"));
            }
            Command::Cech if self.complex.is_none() => return Err(missing("complex")),
            Command::H2Connect => {
                if self.extension.is_none() {
                    return Err(missing("extension"));
                }
                if self.eta.is_none() {
                    return Err(missing("eta"));
                }
            }
            _ => {}
        }
        Ok(())
    }
}

