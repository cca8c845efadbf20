//! Command-line front end. [`run`] does all the work and returns the exit
//! code with both output streams, so tests can drive it without a process.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::budget::{Budget, BudgetExceeded};
use crate::cohomology::{betti_numbers, euler_characteristic_of, one_formality};
use crate::extension::{
    carlson_toledo_check, gysin_dims, gysin_mhs, h2ab_to_h2_surjectivity, nomizu_crosscheck, ExtensionDatum,
    WeightGradedHodge,
};
use crate::io::{self, IoError, LieFile, TowerFile};
use crate::lie::LieAlgebra;
use crate::linalg::Subspace;
use crate::minimal_model::{build_tower, dual_lie_tower, roundtrip_check, HirschTower, TowerError, TowerOptions};
use crate::transfer::invariant_dims;

#[derive(Debug, Parser)]
#[command(
    name = "nilcohom",
    version,
    about = "Cohomology of nilpotent Lie algebras and nilpotent group extensions"
)]
pub struct Cli {
    /// Emit the machine-readable report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest exterior-power dimension any computation may build.
    #[arg(long, global = true, value_name = "N")]
    pub budget: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti numbers, nilpotency class, lower central series and Euler characteristic.
    Betti { lie: PathBuf },
    /// Dimensions of the lower central series.
    Lcs { lie: PathBuf },
    /// Whether H²(L/[L,L]) -> H²(L) is onto.
    Formality { lie: PathBuf },
    /// Degree-one minimal model tower built from cup-product data.
    MinimalModel {
        cup: PathBuf,
        /// Highest stage to build.
        #[arg(long, default_value_t = 6)]
        stages: usize,
        /// Also print the dual tower of Lie algebras.
        #[arg(long)]
        dual: bool,
    },
    /// Cohomology of a Z-central extension of a free abelian group.
    Gysin {
        extension: PathBuf,
        /// Print weight-graded Hodge numbers; requires a Hodge-typed datum.
        #[arg(long)]
        hodge: bool,
    },
    /// Cohomology invariant under a finite group of automorphisms.
    Invariants { lie: PathBuf, action: PathBuf },
}

/// Machine-readable result of one command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub results: Value,
    pub flags: BTreeMap<String, bool>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: json!({}),
            flags: BTreeMap::new(),
        }
    }

    fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Budget(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<BudgetExceeded> for Failure {
    fn from(e: BudgetExceeded) -> Self {
        Failure::Budget(e.to_string())
    }
}

/// A finished command: report, text lines, warnings and exit code.
struct Done {
    report: Report,
    lines: Vec<String>,
    warnings: Vec<String>,
    code: i32,
}

impl Done {
    fn ok(report: Report, lines: Vec<String>) -> Self {
        Done {
            report,
            lines,
            warnings: Vec::new(),
            code: EXIT_OK,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INVALID,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let budget = cli.budget.map(Budget::new).unwrap_or_default();
    let result = match &cli.command {
        Command::Betti { lie } => cmd_betti(lie, budget),
        Command::Lcs { lie } => cmd_lcs(lie),
        Command::Formality { lie } => cmd_formality(lie, budget),
        Command::MinimalModel { cup, stages, dual } => cmd_minimal_model(cup, *stages, *dual, budget),
        Command::Gysin { extension, hodge } => cmd_gysin(extension, *hodge, budget),
        Command::Invariants { lie, action } => cmd_invariants(lie, action, budget),
    };
    match result {
        Ok(done) => {
            let stdout = if cli.json {
                done.report.to_json()
            } else {
                done.lines.iter().map(|l| format!("{l}\n")).collect()
            };
            let mut stderr: String = done.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
            if done.code == EXIT_BUDGET {
                if let Some(msg) = done.report.results.get("error").and_then(Value::as_str) {
                    stderr.push_str(&format!("error: {msg}\n"));
                }
            }
            Outcome {
                code: done.code,
                stdout,
                stderr,
            }
        }
        Err(Failure::Invalid(msg)) => Outcome {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Budget(msg)) => Outcome {
            code: EXIT_BUDGET,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn joined(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn path_text(p: &Path) -> String {
    p.display().to_string()
}

/// Lower central series dimensions until they stop changing, and whether
/// the series reached zero.
fn lcs_dims(l: &LieAlgebra) -> (Vec<usize>, bool) {
    let mut term = Subspace::full(l.dim());
    let mut dims = vec![term.dim()];
    while !term.is_zero() {
        let next = l.bracket_with_algebra(&term);
        if next.dim() == term.dim() {
            return (dims, false);
        }
        dims.push(next.dim());
        term = next;
    }
    (dims, true)
}

fn cmd_betti(path: &Path, budget: Budget) -> Result<Done, Failure> {
    let l = io::read_lie(path)?;
    budget.check_exterior(l.dim())?;
    let betti = betti_numbers(&l);
    let (lcs, nilpotent) = lcs_dims(&l);
    let class = nilpotent.then(|| lcs.len() - 1);
    let euler = euler_characteristic_of(&betti);

    let class_text = class.map_or("not nilpotent".to_string(), |c| format!("class {c}"));
    let mut lines = vec![format!("betti: {}; {class_text}", joined(&betti))];
    lines.extend(betti.iter().enumerate().map(|(k, b)| format!("b{k} = {b}")));
    lines.push(format!("lcs: {}", joined(&lcs)));
    lines.push(format!("euler: {euler}"));

    let mut report = Report::new("betti").input("lie", path_text(path));
    report.results = json!({
        "betti": betti,
        "class": class,
        "lcs": lcs,
        "euler": euler,
    });
    report.flags.insert("nilpotent".into(), nilpotent);
    let mut done = Done::ok(report, lines);
    if !nilpotent {
        done.warnings
            .push("algebra is not nilpotent; Betti numbers are those of the Lie algebra only".into());
    }
    Ok(done)
}

fn cmd_lcs(path: &Path) -> Result<Done, Failure> {
    let l = io::read_lie(path)?;
    let (lcs, nilpotent) = lcs_dims(&l);
    let mut lines = vec![format!("lcs: {}", joined(&lcs))];
    lines.extend(lcs.iter().enumerate().map(|(i, d)| format!("C{} = {d}", i + 1)));
    lines.push(if nilpotent {
        format!("class {}", lcs.len() - 1)
    } else {
        "not nilpotent".to_string()
    });
    let mut report = Report::new("lcs").input("lie", path_text(path));
    report.results = json!({
        "lcs": lcs,
        "class": nilpotent.then(|| lcs.len() - 1),
    });
    report.flags.insert("nilpotent".into(), nilpotent);
    Ok(Done::ok(report, lines))
}

fn cmd_formality(path: &Path, budget: Budget) -> Result<Done, Failure> {
    let l = io::read_lie(path)?;
    budget.check_exterior(l.dim())?;
    let f = one_formality(&l).map_err(|e| Failure::Invalid(e.to_string()))?;
    let verdict = if f.is_one_formal() {
        "ONE-FORMAL".to_string()
    } else {
        format!("NOT ONE-FORMAL (image {} of {})", f.image_dim, f.h2)
    };
    let lines = vec![
        format!("dim H2(L/[L,L]) = {}", f.h2_abelianization),
        format!("image dim       = {}", f.image_dim),
        format!("dim H2(L)       = {}", f.h2),
        verdict,
    ];
    let mut report = Report::new("formality").input("lie", path_text(path));
    report.results = json!({
        "h2_abelianization": f.h2_abelianization,
        "image_dim": f.image_dim,
        "h2": f.h2,
    });
    report.flags.insert("one_formal".into(), f.is_one_formal());
    Ok(Done::ok(report, lines))
}

fn tower_lines(t: &HirschTower) -> Vec<String> {
    let status = io::status_name(t.status());
    (1..=t.stage_count())
        .map(|s| {
            let mut line = format!("stage {s}: {} generators", t.new_generators(s));
            if s == t.stage_count() {
                line.push_str("; ");
                line.push_str(status);
            }
            line
        })
        .collect()
}

fn cmd_minimal_model(path: &Path, stages: usize, dual: bool, budget: Budget) -> Result<Done, Failure> {
    let cup = io::read_cup(path)?;
    let options = TowerOptions {
        max_stage: stages,
        budget,
    };
    let (tower, budget_error) = match build_tower(&cup, options) {
        Ok(t) => (t, None),
        Err(TowerError::BudgetExceeded { source, partial }) => (*partial, Some(source)),
        Err(e) => return Err(Failure::Invalid(e.to_string())),
    };

    let mut lines = tower_lines(&tower);
    let mut results = serde_json::to_value(TowerFile::from_tower(&tower)).expect("tower serializes");
    let mut report = Report::new("minimal-model")
        .input("cup", path_text(path))
        .input("stages", stages)
        .input("dual", dual);
    report.flags.insert("stabilized".into(), tower.is_stabilized());
    report.flags.insert("budget_exceeded".into(), budget_error.is_some());

    if dual {
        let lie_tower = dual_lie_tower(&tower).map_err(|e| Failure::Invalid(e.to_string()))?;
        let mut dual_json = Vec::new();
        for (s, l) in lie_tower.algebras.iter().enumerate() {
            lines.push(format!("dual stage {} (dim {}):", s + 1, l.dim()));
            let brackets = l.describe_brackets();
            if brackets.is_empty() {
                lines.push("  abelian".to_string());
            }
            lines.extend(brackets.into_iter().map(|b| format!("  {b}")));
            dual_json.push(serde_json::to_value(LieFile::from_algebra(l)).expect("lie serializes"));
        }
        let roundtrip = roundtrip_check(&tower).is_ok();
        lines.push(format!("roundtrip: {}", if roundtrip { "pass" } else { "FAIL" }));
        results["dual"] = Value::Array(dual_json);
        report.flags.insert("roundtrip".into(), roundtrip);
    }

    let code = match &budget_error {
        Some(e) => {
            results["error"] = Value::String(e.to_string());
            EXIT_BUDGET
        }
        None => EXIT_OK,
    };
    report.results = results;
    Ok(Done {
        report,
        lines,
        warnings: Vec::new(),
        code,
    })
}

fn hodge_piece_text(h: &WeightGradedHodge) -> String {
    if h.pieces.is_empty() {
        return "0".to_string();
    }
    h.pieces
        .iter()
        .map(|p| {
            let v = p.hodge_vector().unwrap_or_default();
            format!(
                "weight {}, dim {}, ({})",
                p.weight,
                p.dim,
                v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            )
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn hodge_json(h: &WeightGradedHodge) -> Value {
    Value::Array(
        h.pieces
            .iter()
            .map(|p| {
                json!({
                    "weight": p.weight,
                    "dim": p.dim,
                    "hodge": p.hodge_vector(),
                })
            })
            .collect(),
    )
}

fn cmd_gysin(path: &Path, hodge: bool, budget: Budget) -> Result<Done, Failure> {
    let e: ExtensionDatum = io::read_extension(path)?;
    budget.check_exterior(e.rank() + 1)?;
    let dims = gysin_dims(&e);
    let surj = h2ab_to_h2_surjectivity(&e);
    let nomizu = nomizu_crosscheck(&e);
    let ct = carlson_toledo_check(&e).ok();

    let ct_text = match ct {
        Some(c) if c.nonzero() => "nonzero",
        Some(_) => "ZERO",
        None => "n/a (rank 0)",
    };
    let mut lines = vec![format!(
        "H*: {}; surjective: {}; nomizu: {}; CT: {ct_text}",
        joined(&dims),
        if surj.surjective { "yes" } else { "no" },
        if nomizu.is_ok() { "pass" } else { "FAIL" },
    )];
    if let Err(m) = &nomizu {
        lines.push(format!("  {m}"));
    }

    let mut report = Report::new("gysin")
        .input("extension", path_text(path))
        .input("hodge", hodge);
    let mut results = json!({
        "dims": dims,
        "h2_abelianization": surj.h2_abelianization,
        "h2": surj.h2,
    });
    report.flags.insert("surjective".into(), surj.surjective);
    report.flags.insert("nomizu".into(), nomizu.is_ok());
    if let Some(c) = ct {
        report.flags.insert("carlson_toledo".into(), c.nonzero());
    }

    if hodge {
        let mut pieces = Vec::new();
        for k in 0..dims.len() {
            let h = gysin_mhs(&e, k).map_err(|err| Failure::Invalid(err.to_string()))?;
            let mut line = format!("H{k}: {}", hodge_piece_text(&h));
            if k == 2 {
                let pure = h.is_pure_of_weight(2);
                line.push_str(if pure { "; PURE" } else { "; NOT PURE" });
                report.flags.insert("pure_h2".into(), pure);
            }
            lines.push(line);
            pieces.push(hodge_json(&h));
        }
        results["mhs"] = Value::Array(pieces);
    }
    report.results = results;
    Ok(Done::ok(report, lines))
}

fn cmd_invariants(lie_path: &Path, action_path: &Path, budget: Budget) -> Result<Done, Failure> {
    let l = io::read_lie(lie_path)?;
    budget.check_exterior(l.dim())?;
    let action = io::read_action(action_path, &l)?;
    let invariant = invariant_dims(&action);
    let betti = betti_numbers(&l);
    let lines = vec![
        format!("group order: {}", action.order()),
        format!("invariant / betti: {} / {}", joined(&invariant), joined(&betti)),
    ];
    let mut report = Report::new("invariants")
        .input("lie", path_text(lie_path))
        .input("action", path_text(action_path));
    report.results = json!({
        "order": action.order(),
        "invariant": invariant,
        "betti": betti,
    });
    report.flags.insert("nilpotent".into(), l.is_nilpotent());
    let mut done = Done::ok(report, lines);
    if !l.is_nilpotent() {
        done.warnings.push("algebra is not nilpotent".into());
    }
    Ok(done)
}
