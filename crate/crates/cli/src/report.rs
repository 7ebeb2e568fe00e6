//! JSON reports. Field order is fixed by the struct definitions, so equal
//! inputs give byte-identical output. The layout is described by
//! `crates/cli/schema/report.schema.json`.

use hteq::equiv::{Side, Verdict};
use hteq::oracle::{Counterexample, ValidationReport};
use hteq::{Alphabets, HtInterp, Signature, Theory};
use serde::Serialize;

pub const SCHEMA: &str = "hteq-report/1";

#[derive(Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

pub const TOOL: Tool = Tool {
    name: "hteq",
    version: env!("CARGO_PKG_VERSION"),
};

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct Interp {
    pub here: Vec<String>,
    pub there: Vec<String>,
}

impl Interp {
    pub fn new(m: HtInterp, signature: &Signature) -> Interp {
        Interp {
            here: m.here.names(signature),
            there: m.there.names(signature),
        }
    }
}

#[derive(Serialize)]
pub struct AlphabetsOut {
    pub aplus: Vec<String>,
    pub aminus: Vec<String>,
}

impl From<&Alphabets> for AlphabetsOut {
    fn from(ab: &Alphabets) -> Self {
        AlphabetsOut {
            aplus: ab.a_plus.iter().map(|a| a.name().to_owned()).collect(),
            aminus: ab.a_minus.iter().map(|a| a.name().to_owned()).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct Witness {
    pub interpretation: Interp,
    pub side: &'static str,
}

impl Witness {
    pub fn of(verdict: &Verdict) -> Option<Witness> {
        Some(Witness {
            interpretation: Interp::new(verdict.witness?, &verdict.signature),
            side: verdict.witness_side.map_or("first", Side::name),
        })
    }
}

#[derive(Serialize)]
pub struct ContextOut {
    pub formulas: Vec<String>,
    pub provenance: String,
    pub answer_set: Vec<String>,
    pub side: &'static str,
}

impl From<&Counterexample> for ContextOut {
    fn from(cx: &Counterexample) -> Self {
        ContextOut {
            formulas: formulas(&cx.context),
            provenance: cx.provenance.clone(),
            answer_set: cx.answer_set.clone(),
            side: if cx.in_first { "first" } else { "second" },
        }
    }
}

pub fn formulas(theory: &Theory) -> Vec<String> {
    theory.formulas().iter().map(ToString::to_string).collect()
}

pub fn verdict_word(equivalent: bool) -> &'static str {
    if equivalent {
        "equivalent"
    } else {
        "not-equivalent"
    }
}

#[derive(Serialize)]
pub struct CheckReport {
    pub schema: &'static str,
    pub tool: Tool,
    pub command: &'static str,
    pub mode: String,
    pub inputs: Vec<String>,
    pub signature: Vec<String>,
    pub alphabets: Option<AlphabetsOut>,
    pub verdict: &'static str,
    pub witness: Option<Witness>,
    pub context: Option<ContextOut>,
    pub sizes: [usize; 2],
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Serialize)]
pub struct ModelsReport {
    pub schema: &'static str,
    pub tool: Tool,
    pub command: &'static str,
    pub which: String,
    pub input: String,
    pub signature: Vec<String>,
    pub members: Vec<Interp>,
}

#[derive(Serialize)]
pub struct TransformReport {
    pub schema: &'static str,
    pub tool: Tool,
    pub command: &'static str,
    pub kind: String,
    pub input: String,
    pub output: String,
}

#[derive(Serialize)]
pub struct ValidateReport {
    pub schema: &'static str,
    pub tool: Tool,
    pub command: &'static str,
    pub seed: u64,
    pub passed: bool,
    pub report: ValidationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Serialize)]
pub struct NgWitness {
    pub interpretation: Interp,
    pub side: &'static str,
}

#[derive(Serialize)]
pub struct CheckNgReport {
    pub schema: &'static str,
    pub tool: Tool,
    pub command: &'static str,
    pub mode: &'static str,
    pub inputs: Vec<String>,
    pub extra_consts: usize,
    pub verdict: &'static str,
    pub universes: Vec<Vec<String>>,
    pub failing_universe: Option<Vec<String>>,
    pub witness: Option<NgWitness>,
    pub context: Option<Vec<String>>,
    pub note: &'static str,
}

pub fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}
