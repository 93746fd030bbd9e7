//! Run configuration shared by all subcommands, and the error type that maps
//! to process exit codes.

use std::path::PathBuf;

use pairgeom::exactla::{parse_field_descriptor, FieldChoice, PrimeField, DEFAULT_BUDGET};
use pairgeom::flags::FlagType;
use pairgeom::GeomError;
use serde_json::{json, Value};

/// Failure classes of a run.
#[derive(Debug)]
pub enum CliError {
    /// A hard invariant did not hold.
    Failed(String),
    /// An enumeration would exceed the budget.
    Budget(GeomError),
    /// Bad arguments, bad input files or an unusable configuration.
    Config(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Budget(_) => 2,
            CliError::Config(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Failed(s) => write!(f, "invariant failure: {s}"),
            CliError::Budget(e) => write!(f, "{e}"),
            CliError::Config(s) => write!(f, "configuration error: {s}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::BudgetExceeded { .. } => CliError::Budget(e),
            other => CliError::Config(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Parameters common to all subcommands. `None` fields fall back to the
/// defaults of each suite or command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub field: Option<FieldChoice>,
    pub dim: Option<usize>,
    pub pq: Option<(usize, usize)>,
    pub k: Option<usize>,
    /// Step dimensions, with or without the ambient dimension at the end.
    pub flag_type: Option<Vec<usize>>,
    pub grass: Option<usize>,
    pub seed: u64,
    pub budget: u64,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: None,
            dim: None,
            pq: None,
            k: None,
            flag_type: None,
            grass: None,
            seed: 0,
            budget: DEFAULT_BUDGET,
            out: None,
        }
    }
}

/// Parses `a,b,c` into integers.
pub fn parse_list(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| CliError::Config(format!("bad integer list {s:?}"))))
        .collect()
}

pub fn parse_pq(s: &str) -> CliResult<(usize, usize)> {
    match parse_list(s)?.as_slice() {
        [p, q] => Ok((*p, *q)),
        _ => Err(CliError::Config(format!("--pq expects p,q, got {s:?}"))),
    }
}

pub fn parse_field(s: &str) -> CliResult<FieldChoice> {
    parse_field_descriptor(s).map_err(|e| CliError::Config(e.to_string()))
}

impl RunConfig {
    pub fn validate(&self) -> CliResult<()> {
        if self.budget == 0 {
            return Err(CliError::Config("budget must be positive".into()));
        }
        if self.dim == Some(0) {
            return Err(CliError::Config("--dim must be at least 1".into()));
        }
        if let Some((p, q)) = self.pq {
            if p == 0 || q == 0 {
                return Err(CliError::Config("--pq entries must be positive".into()));
            }
        }
        if self.k == Some(0) {
            return Err(CliError::Config("--k must be at least 1".into()));
        }
        if self.flag_type.is_some() && self.grass.is_some() {
            return Err(CliError::Config("--type and --grass are exclusive".into()));
        }
        if self.flag_type.is_some() || self.grass.is_some() {
            self.point_type()?;
        }
        Ok(())
    }

    /// The prime field, or `default` when no field was given.
    pub fn prime_or(&self, default: u32) -> CliResult<PrimeField> {
        match self.field {
            Some(FieldChoice::Prime(f)) => Ok(f),
            Some(FieldChoice::Rational) => Err(CliError::Config("this operation needs a prime field".into())),
            None => Ok(PrimeField::new(default)?),
        }
    }

    pub fn require_dim(&self) -> CliResult<usize> {
        self.dim.ok_or_else(|| CliError::Config("--dim is required".into()))
    }

    /// Point type from `--grass d` or `--type`, in dimension `--dim`.
    pub fn point_type(&self) -> CliResult<FlagType> {
        let n = self.require_dim()?;
        let t = match (&self.grass, &self.flag_type) {
            (Some(d), None) => FlagType::grassmannian(*d, n)?,
            (None, Some(dims)) => {
                let mut dims = dims.clone();
                if dims.last() != Some(&n) {
                    dims.push(n);
                }
                if dims.iter().any(|&d| d > n) {
                    return Err(CliError::Config(format!("type {dims:?} exceeds dimension {n}")));
                }
                FlagType::new(dims)?
            }
            _ => return Err(CliError::Config("one of --grass or --type is required".into())),
        };
        if let Some(k) = self.k {
            if k != t.length() {
                return Err(CliError::Config(format!("--k {k} does not match the type length {}", t.length())));
            }
        }
        Ok(t)
    }

    /// Whether an explicit instance was requested.
    pub fn has_instance(&self) -> bool {
        self.dim.is_some() || self.pq.is_some() || self.field.is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.map(|f| match f {
                FieldChoice::Prime(p) => json!(p.p()),
                FieldChoice::Rational => json!("rat"),
            }),
            "dim": self.dim,
            "pq": self.pq.map(|(p, q)| vec![p, q]),
            "k": self.k,
            "type": self.flag_type,
            "grass": self.grass,
            "seed": self.seed,
            "budget": self.budget,
        })
    }
}
