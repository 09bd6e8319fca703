use std::collections::BTreeMap;
use std::time::Instant;

use relhom::bredon::{
    bredon_homology, diagonal_coinvariant_homology, quotient_homology, takasu_pair_complex,
    CoefficientSystem, OrbitCategory,
};
use relhom::exactla::{FgAbGroup, HomologyMap, IntMatrix};
use relhom::groups::{
    bracket_normalizer, family_generated, family_gh, is_good_triple, is_malnormal, SubgroupFamily,
};
use relhom::modres::Normalization;
use relhom::relhom::{
    adamson_homology, comparison, j_module, normal_quotient_oracle, takasu_homology,
    verify_takasu_les, SlotKind,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::job::{Command, JobSpec, Resolved};

pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiEntry {
    /// `iso`, `zero`, or the invariant factors of the matrix.
    pub description: String,
    pub source: String,
    pub target: String,
    pub matrix: IntMatrix,
    pub kernel: String,
    pub cokernel: String,
    pub is_iso: bool,
    pub is_zero: bool,
}

impl PhiEntry {
    pub fn from_map(m: &HomologyMap) -> Self {
        let description = if m.is_zero {
            "zero".to_string()
        } else if m.is_iso {
            "iso".to_string()
        } else {
            let d: Vec<String> = m
                .map
                .smith_diagonal()
                .iter()
                .map(ToString::to_string)
                .collect();
            format!("snf({})", d.join(","))
        };
        PhiEntry {
            description,
            source: m.map.source.to_string(),
            target: m.map.target.to_string(),
            matrix: m.map.matrix.clone(),
            kernel: m.kernel.to_string(),
            cokernel: m.cokernel.to_string(),
            is_iso: m.is_iso,
            is_zero: m.is_zero,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub takasu: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adamson: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<PhiEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub version: String,
    pub job: JobSpec,
    pub rows: Vec<DegreeRow>,
    /// Named checks; the job fails verification when any is false.
    pub flags: BTreeMap<String, bool>,
    /// Command-specific results.
    pub details: Value,
    pub timing: Timing,
}

impl ResultDocument {
    pub fn verified(&self) -> bool {
        self.flags.values().all(|&b| b)
    }

    /// The document with the timing zeroed, for byte comparisons.
    pub fn without_timing(&self) -> Self {
        ResultDocument {
            timing: Timing { elapsed_ms: 0 },
            ..self.clone()
        }
    }
}

fn strs(v: &[FgAbGroup]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn family_json(f: &SubgroupFamily) -> Value {
    let reps: Vec<Value> = f
        .conjugacy_representatives()
        .iter()
        .map(|k| json!({ "order": k.order(), "elements": k.elements() }))
        .collect();
    json!({ "size": f.len(), "trivial": f.is_trivial(), "class_representatives": reps })
}

struct Output {
    rows: Vec<DegreeRow>,
    flags: BTreeMap<String, bool>,
    details: Value,
}

impl Output {
    fn new() -> Self {
        Output {
            rows: Vec::new(),
            flags: BTreeMap::new(),
            details: Value::Null,
        }
    }
}

fn rows_for(lo: usize, hi: usize) -> Vec<DegreeRow> {
    (lo..=hi)
        .map(|degree| DegreeRow {
            degree,
            ..DegreeRow::default()
        })
        .collect()
}

fn dispatch(job: &JobSpec, r: &Resolved) -> Result<Output, CliError> {
    let (h, m, b) = (&r.subgroup, &r.module, &r.budget);
    let (lo, hi) = (r.degrees.lo, r.degrees.hi);
    let mut out = Output::new();
    match job.command {
        Command::Adamson => {
            let a = adamson_homology(h, m, hi, b)?;
            out.rows = rows_for(lo, hi);
            for row in &mut out.rows {
                row.adamson = Some(a[row.degree].to_string());
            }
        }
        Command::Takasu => {
            let t = takasu_homology(h, m, hi, job.engine, b)?;
            out.rows = rows_for(lo, hi);
            for row in &mut out.rows {
                row.takasu = Some(t[row.degree].to_string());
            }
            out.details = json!({ "engine": job.engine });
        }
        Command::Compare => {
            let t = takasu_homology(h, m, hi, job.engine, b)?;
            let a = adamson_homology(h, m, hi, b)?;
            let first = lo.max(1);
            let maps = if hi >= first {
                if first == 1 && !m.is_trivial_action() {
                    return Err(CliError::from(relhom::Error::Unsupported(
                        "degree 1 comparison is only defined for constant coefficients (split-injectivity proviso); \
                         start the range at 2"
                            .into(),
                    ))
                    .at("degrees"));
                }
                let c = comparison(h, m, first..=hi, b)?;
                out.flags
                    .insert("lift_is_chain_map".into(), c.lift_is_chain_map());
                c.maps
            } else {
                Vec::new()
            };
            out.rows = rows_for(lo, hi);
            for row in &mut out.rows {
                row.takasu = Some(t[row.degree].to_string());
                row.adamson = Some(a[row.degree].to_string());
                row.phi = maps
                    .iter()
                    .find(|x| x.degree == row.degree)
                    .map(PhiEntry::from_map);
            }
            let consistent = maps.iter().all(|x| {
                x.map.source.to_string() == t[x.degree].to_string()
                    && x.map.target.to_string() == a[x.degree].to_string()
            });
            out.flags
                .insert("phi_groups_match_homology".into(), consistent);
        }
        Command::VerifyLes => {
            let c = verify_takasu_les(h, m, lo..=hi, b)?;
            out.rows = rows_for(lo, hi);
            for row in &mut out.rows {
                if let Some(s) = c.slot(SlotKind::Pair, row.degree) {
                    row.takasu = Some(s.group.to_string());
                } else if row.degree == 0 {
                    row.takasu = Some(FgAbGroup::trivial().to_string());
                }
            }
            out.flags.insert("all_slots_exact".into(), c.exact);
            out.flags
                .insert("shapiro_identification".into(), c.shapiro_ok);
            out.details = serde_json::to_value(&c).expect("certificate serializes");
        }
        Command::Malnormal => {
            let v = is_malnormal(h);
            out.details = json!({ "malnormal": v });
        }
        Command::Family => {
            let fh = family_generated(h);
            let gh = family_gh(h);
            let orders = |f: &SubgroupFamily| -> Vec<usize> {
                f.conjugacy_representatives()
                    .iter()
                    .map(|k| k.order())
                    .collect()
            };
            out.details = json!({
                "malnormal": is_malnormal(h),
                "family_generated_class_orders": orders(&fh),
                "family_gh_class_orders": orders(&gh),
                "family_gh_trivial": gh.is_trivial(),
                "family_generated": family_json(&fh),
                "family_gh": family_json(&gh),
            });
        }
        Command::Jmodule => {
            let rep = j_module(h);
            out.flags.insert("j_consistent".into(), rep.consistent);
            out.details = serde_json::to_value(&rep).expect("report serializes");
        }
        Command::GoodTriple => {
            let k = r.second.as_ref().expect("checked during resolution");
            let t = is_good_triple(h, k).map_err(|e| CliError::from(e).at("second_subgroup"))?;
            let bn = bracket_normalizer(h, k)?;
            out.details = json!({ "good": t.good, "witness": t.witness, "bracket_normalizer": bn });
        }
        Command::Bredon => {
            let x = takasu_pair_complex(h, hi + 2, Normalization::Normalized, b)?;
            let cat = OrbitCategory::for_complex(&x)?;
            let sys = CoefficientSystem::coinvariants(m, &cat)?;
            let bh = bredon_homology(&x, &sys)?;
            let oracle = diagonal_coinvariant_homology(&x, m)?;
            out.flags
                .insert("matches_coinvariant_oracle".into(), bh == oracle);
            let mut details = json!({ "bredon": strs(&bh), "coinvariant_oracle": strs(&oracle) });
            if m.is_trivial_action() && !m.has_relations() {
                let q = quotient_homology(&x)?;
                out.flags
                    .insert("matches_quotient_homology".into(), q == bh);
                details["quotient"] = json!(strs(&q));
            }
            out.details = details;
            out.rows = rows_for(lo, hi);
            for row in &mut out.rows {
                if row.degree >= 2 || (row.degree == 1 && m.is_trivial_action()) {
                    row.takasu = Some(bh[row.degree].to_string());
                }
            }
        }
        Command::OracleNormal => {
            let checks = normal_quotient_oracle(h, m, hi, b)
                .map_err(|e| CliError::from(e).at("subgroup"))?;
            out.rows = rows_for(lo, hi);
            for row in &mut out.rows {
                row.adamson = Some(checks[row.degree].adamson.to_string());
            }
            let sel: Vec<_> = checks.iter().filter(|c| c.degree >= lo).collect();
            out.flags.insert(
                "matches_quotient_group_homology".into(),
                sel.iter().all(|c| c.matches),
            );
            out.details = json!({
                "quotient_homology": sel.iter().map(|c| c.oracle.to_string()).collect::<Vec<_>>(),
            });
        }
    }
    Ok(out)
}

/// Runs a job. `env_budget` is the value of `RELHOM_BUDGET`, if set.
pub fn run(job: &JobSpec, env_budget: Option<&str>) -> Result<ResultDocument, CliError> {
    let start = Instant::now();
    let resolved = job.resolve(env_budget)?;
    let out = dispatch(job, &resolved)?;
    let mut echo = job.clone();
    if echo.command.uses_degrees() {
        echo.degrees = Some(resolved.degrees);
    }
    Ok(ResultDocument {
        version: TOOLKIT_VERSION.to_string(),
        job: echo,
        rows: out.rows,
        flags: out.flags,
        details: out.details,
        timing: Timing {
            elapsed_ms: start.elapsed().as_millis() as u64,
        },
    })
}
