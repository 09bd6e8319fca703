use std::fmt;
use std::str::FromStr;

use relhom::groups::{FiniteGroup, GroupSpec, Subgroup};
use relhom::modres::{Budget, GModule};
use relhom::relhom::{Coefficients, TakasuEngine};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const DEFAULT_MAX_RANK: usize = 5000;
pub const DEFAULT_MAX_DEGREE: usize = 6;
pub const BUDGET_ENV: &str = "RELHOM_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Adamson,
    Takasu,
    Compare,
    VerifyLes,
    Malnormal,
    Family,
    Jmodule,
    GoodTriple,
    Bredon,
    OracleNormal,
}

impl Command {
    /// Whether the command reports per-degree results.
    pub fn uses_degrees(self) -> bool {
        !matches!(
            self,
            Command::Malnormal | Command::Family | Command::Jmodule | Command::GoodTriple
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
}

/// An inclusive degree range written `A..B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct DegreeRange {
    pub lo: usize,
    pub hi: usize,
}

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s
            .split_once("..")
            .ok_or_else(|| format!("expected A..B, got {s:?}"))?;
        let b = b.strip_prefix('=').unwrap_or(b);
        let lo = a
            .trim()
            .parse()
            .map_err(|_| format!("bad lower degree {a:?}"))?;
        let hi = b
            .trim()
            .parse()
            .map_err(|_| format!("bad upper degree {b:?}"))?;
        if lo > hi {
            return Err(format!("empty degree range {lo}..{hi}"));
        }
        Ok(DegreeRange { lo, hi })
    }
}

impl TryFrom<String> for DegreeRange {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<DegreeRange> for String {
    fn from(d: DegreeRange) -> String {
        d.to_string()
    }
}

impl fmt::Display for DegreeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub group: GroupSpec,
    /// Generators of `H`; empty means the trivial subgroup.
    #[serde(default)]
    pub subgroup: Vec<usize>,
    /// Generators of `K ≤ H` for triples.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_subgroup: Option<Vec<usize>>,
    #[serde(default)]
    pub coefficients: Coefficients,
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<DegreeRange>,
    #[serde(default)]
    pub engine: TakasuEngine,
    #[serde(default)]
    pub budget: BudgetSpec,
    #[serde(default)]
    pub output: OutputFormat,
}

/// Parses a job, naming the field path of the first problem.
pub fn parse_job(text: &str) -> Result<JobSpec, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { "job".to_string() } else { path };
        CliError::validation(path, e.into_inner().to_string())
    })
}

/// Kernel objects a job refers to.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub group: FiniteGroup,
    pub subgroup: Subgroup,
    pub second: Option<Subgroup>,
    pub module: GModule,
    pub budget: Budget,
    pub degrees: DegreeRange,
}

fn subgroup_from(g: &FiniteGroup, gens: &[usize], path: &str) -> Result<Subgroup, CliError> {
    if let Some((i, x)) = gens.iter().enumerate().find(|(_, &x)| x >= g.order()) {
        return Err(CliError::validation(
            format!("{path}[{i}]"),
            format!(
                "element {x} out of range for a group of order {}",
                g.order()
            ),
        ));
    }
    Subgroup::generated(g, gens).map_err(|e| CliError::from(e).at(path))
}

impl JobSpec {
    pub fn default_degrees(&self) -> DegreeRange {
        match self.command {
            Command::Takasu | Command::Compare => DegreeRange { lo: 1, hi: 4 },
            Command::Bredon => DegreeRange { lo: 2, hi: 4 },
            _ => DegreeRange { lo: 0, hi: 4 },
        }
    }

    /// Default caps, then `RELHOM_BUDGET`, then the job's own budget.
    pub fn effective_budget(&self, env: Option<&str>) -> Result<Budget, CliError> {
        let mut max_rank = DEFAULT_MAX_RANK;
        if let Some(v) = env {
            max_rank = v.trim().parse().map_err(|_| {
                CliError::validation(
                    BUDGET_ENV,
                    format!("expected a positive integer, got {v:?}"),
                )
            })?;
        }
        if let Some(r) = self.budget.max_rank {
            max_rank = r;
        }
        if max_rank == 0 {
            return Err(CliError::validation(
                "budget.max_rank",
                "rank cap must be positive",
            ));
        }
        Ok(Budget {
            max_rank,
            max_degree: self.budget.max_degree.unwrap_or(DEFAULT_MAX_DEGREE),
        })
    }

    pub fn resolve(&self, env_budget: Option<&str>) -> Result<Resolved, CliError> {
        let group = self
            .group
            .build()
            .map_err(|e| CliError::from(e).at("group"))?;
        let subgroup = subgroup_from(&group, &self.subgroup, "subgroup")?;
        let second = match &self.second_subgroup {
            Some(gens) => Some(subgroup_from(&group, gens, "second_subgroup")?),
            None => None,
        };
        if self.command == Command::GoodTriple && second.is_none() {
            return Err(CliError::validation(
                "second_subgroup",
                "good-triple needs a second subgroup",
            ));
        }
        let module = self
            .coefficients
            .build(&group)
            .map_err(|e| CliError::from(e).at("coefficients"))?;
        let budget = self.effective_budget(env_budget)?;
        let degrees = self.degrees.unwrap_or_else(|| self.default_degrees());
        if self.command.uses_degrees() && degrees.hi > budget.max_degree {
            return Err(CliError::validation(
                "degrees",
                format!(
                    "degree {} exceeds the degree cap {}",
                    degrees.hi, budget.max_degree
                ),
            ));
        }
        Ok(Resolved {
            group,
            subgroup,
            second,
            module,
            budget,
            degrees,
        })
    }
}
