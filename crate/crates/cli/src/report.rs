//! JSON report model. Field order is fixed by the struct definitions
//! and every collection is emitted in a deterministic order, so a
//! fixed input and configuration produce byte-identical output.

use serde::Serialize;
use tauseq_core::config::Caps;
use tauseq_core::error::Result;
use tauseq_core::field::FieldSpec;
use tauseq_core::sequences::{enumerate_complete, Flavor, Sequence, TaggedModule};
use tauseq_core::stability::Level;
use tauseq_core::universe::BuiltUniverse;
use tauseq_core::verify::{Counterexample, StatementOutcome};

/// A module with enough data to replay any check: signed dimension
/// vector, one row-major matrix of exact entry strings per algebra
/// generator, and the shift tag.
#[derive(Serialize)]
pub struct ModuleJson {
    pub dim_vector: Vec<i64>,
    pub matrices: Vec<Vec<String>>,
    pub shifted: bool,
}

impl ModuleJson {
    pub fn from_tagged(t: &TaggedModule) -> Self {
        ModuleJson {
            dim_vector: t.dim_vector_signed(),
            matrices: t
                .module
                .gen_actions
                .iter()
                .map(|m| m.entry_strings())
                .collect(),
            shifted: t.shifted,
        }
    }

    pub fn from_module(m: &tauseq_core::module::Module) -> Self {
        ModuleJson::from_tagged(&TaggedModule::plain(m.clone()))
    }
}

#[derive(Serialize)]
pub struct UniverseJson {
    pub certified: bool,
    pub bound: Vec<usize>,
    pub count: usize,
}

impl UniverseJson {
    pub fn from_built(built: &BuiltUniverse) -> Self {
        UniverseJson {
            certified: built.level.certified,
            bound: built.bound.clone(),
            count: built.level.universe.len(),
        }
    }
}

#[derive(Serialize)]
pub struct CounterexampleJson {
    pub description: String,
    pub modules: Vec<ModuleJson>,
    pub sequences: Vec<Vec<ModuleJson>>,
}

impl CounterexampleJson {
    pub fn from_core(ce: &Counterexample) -> Self {
        CounterexampleJson {
            description: ce.description.clone(),
            modules: ce.modules.iter().map(ModuleJson::from_tagged).collect(),
            sequences: ce.sequences.iter().map(|s| sequence_json(s)).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct StatementJson {
    pub name: String,
    pub status: String,
    pub counterexample: Option<CounterexampleJson>,
}

/// The statement entry used by the `verify` subcommand; it adds the
/// one-line explanation that the fixed report schema has no slot for.
#[derive(Serialize)]
pub struct StatementDetailJson {
    pub name: String,
    pub status: String,
    pub detail: String,
    pub counterexample: Option<CounterexampleJson>,
}

#[derive(Serialize)]
pub struct FlavorSequencesJson {
    pub flavor: String,
    pub complete: Vec<Vec<ModuleJson>>,
}

#[derive(Serialize)]
pub struct ReportJson {
    pub algebra: String,
    pub field: FieldSpec,
    pub universe: UniverseJson,
    pub statements: Vec<StatementJson>,
    pub sequences: Vec<FlavorSequencesJson>,
}

pub fn sequence_json(seq: &Sequence) -> Vec<ModuleJson> {
    seq.iter().map(ModuleJson::from_tagged).collect()
}

pub fn statement_json(outcome: &StatementOutcome) -> StatementJson {
    StatementJson {
        name: outcome.name.as_str().into(),
        status: outcome.status.as_str().into(),
        counterexample: outcome
            .counterexample
            .as_ref()
            .map(CounterexampleJson::from_core),
    }
}

pub fn statement_detail_json(outcome: &StatementOutcome) -> StatementDetailJson {
    StatementDetailJson {
        name: outcome.name.as_str().into(),
        status: outcome.status.as_str().into(),
        detail: outcome.detail.clone(),
        counterexample: outcome
            .counterexample
            .as_ref()
            .map(CounterexampleJson::from_core),
    }
}

/// Complete sequences per flavor. Uncertified universes cannot support
/// exhaustive enumeration, so their lists stay empty.
pub fn flavor_sequences(level: &Level, caps: &Caps) -> Result<Vec<FlavorSequencesJson>> {
    let mut out = Vec::new();
    for flavor in [Flavor::Plain, Flavor::Signed, Flavor::Brick] {
        let complete = if level.certified {
            enumerate_complete(level, flavor, caps)?
                .iter()
                .map(|s| sequence_json(s))
                .collect()
        } else {
            Vec::new()
        };
        out.push(FlavorSequencesJson {
            flavor: flavor.name().into(),
            complete,
        });
    }
    Ok(out)
}

pub fn build_report(
    algebra_name: &str,
    field: FieldSpec,
    built: &BuiltUniverse,
    outcomes: &[StatementOutcome],
    caps: &Caps,
) -> Result<ReportJson> {
    Ok(ReportJson {
        algebra: algebra_name.into(),
        field,
        universe: UniverseJson::from_built(built),
        statements: outcomes.iter().map(statement_json).collect(),
        sequences: flavor_sequences(&built.level, caps)?,
    })
}
