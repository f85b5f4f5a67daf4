//! The verification battery: seven named statements checked against a
//! built universe. Each check returns pass, fail with a replayable
//! counterexample, or skipped when the universe cannot support the
//! quantifier (uncertified list, infinite field).

use crate::ar::{g_vector, is_tau_rigid, tau};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::module::{hom_dim, is_in_gen, Module};
use crate::sequences::{
    basic_tau_rigid_subsets, bounded_rigid_pairs, dim_vector_rank, enumerate_complete,
    verify_one_place_uniqueness, verify_unique_wide, Flavor, Sequence, TaggedModule,
};
use crate::stability::{in_perp_context, is_theta_semistable, Level};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StatementName {
    Nohom,
    Interp,
    Equiv,
    Linindep,
    Main,
    CorMain,
    CorWide,
}

impl StatementName {
    pub const ALL: [StatementName; 7] = [
        StatementName::Nohom,
        StatementName::Interp,
        StatementName::Equiv,
        StatementName::Linindep,
        StatementName::Main,
        StatementName::CorMain,
        StatementName::CorWide,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StatementName::Nohom => "nohom",
            StatementName::Interp => "interp",
            StatementName::Equiv => "equiv",
            StatementName::Linindep => "linindep",
            StatementName::Main => "main",
            StatementName::CorMain => "cor-main",
            StatementName::CorWide => "cor-wide",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "nohom" => Ok(StatementName::Nohom),
            "interp" => Ok(StatementName::Interp),
            "equiv" => Ok(StatementName::Equiv),
            "linindep" => Ok(StatementName::Linindep),
            "main" => Ok(StatementName::Main),
            "cor-main" => Ok(StatementName::CorMain),
            "cor-wide" => Ok(StatementName::CorWide),
            other => Err(Error::invalid(format!(
                "unknown statement {other:?}: expected one of nohom, interp, equiv, linindep, main, cor-main, cor-wide"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StatementStatus {
    Pass,
    Fail,
    Skipped,
}

impl StatementStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            StatementStatus::Pass => "pass",
            StatementStatus::Fail => "fail",
            StatementStatus::Skipped => "skipped",
        }
    }
}

/// Witness data for a failed statement: enough modules (ambient
/// representatives, with shift tags) and sequences to re-run the
/// violated check directly.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub description: String,
    pub modules: Vec<TaggedModule>,
    pub sequences: Vec<Sequence>,
}

#[derive(Clone, Debug)]
pub struct StatementOutcome {
    pub name: StatementName,
    pub status: StatementStatus,
    pub detail: String,
    pub counterexample: Option<Counterexample>,
}

impl StatementOutcome {
    fn pass(name: StatementName, detail: String) -> Self {
        StatementOutcome {
            name,
            status: StatementStatus::Pass,
            detail,
            counterexample: None,
        }
    }

    fn skipped(name: StatementName, detail: &str) -> Self {
        StatementOutcome {
            name,
            status: StatementStatus::Skipped,
            detail: detail.into(),
            counterexample: None,
        }
    }

    fn fail(name: StatementName, counterexample: Counterexample) -> Self {
        StatementOutcome {
            name,
            status: StatementStatus::Fail,
            detail: counterexample.description.clone(),
            counterexample: Some(counterexample),
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Flips the sign of every stability weight before the semistable
    /// test, for comparison against the opposite literature convention.
    pub negate_theta: bool,
}

pub fn verify_statement(
    level: &Level,
    name: StatementName,
    opts: &VerifyOptions,
    caps: &Caps,
) -> Result<StatementOutcome> {
    match name {
        StatementName::Nohom => check_nohom(level, caps),
        StatementName::Interp => check_interp(level),
        StatementName::Equiv => check_equiv(level, opts, caps),
        StatementName::Linindep => check_linindep(level, caps),
        StatementName::Main => check_main(level, caps),
        StatementName::CorMain => check_cor_main(level, caps),
        StatementName::CorWide => check_cor_wide(level, caps),
    }
}

pub fn verify_all(
    level: &Level,
    opts: &VerifyOptions,
    caps: &Caps,
) -> Result<Vec<StatementOutcome>> {
    StatementName::ALL
        .iter()
        .map(|&name| verify_statement(level, name, opts, caps))
        .collect()
}

/// No nonzero map from a module generated by a tau-rigid module into
/// the translate of that module. Quantifies the rigid module over all
/// basic sums of universe members whose total is tau-rigid.
fn check_nohom(level: &Level, _caps: &Caps) -> Result<StatementOutcome> {
    let subsets = basic_tau_rigid_subsets(level)?;
    let mut pairs = 0usize;
    for subset in &subsets {
        if subset.is_empty() {
            continue;
        }
        let parts: Vec<&Module> = subset.iter().map(|&i| &level.universe[i]).collect();
        let x = Module::direct_sum(&parts);
        let tau_x = tau(&x)?;
        for m in &level.universe {
            if !is_in_gen(m, &x) {
                continue;
            }
            pairs += 1;
            let d = hom_dim(m, &tau_x);
            if d != 0 {
                return Ok(StatementOutcome::fail(
                    StatementName::Nohom,
                    Counterexample {
                        description: format!(
                            "a module generated by a tau-rigid module admits a {d}-dimensional Hom space into its translate"
                        ),
                        modules: vec![TaggedModule::plain(x), TaggedModule::plain(m.clone())],
                        sequences: Vec::new(),
                    },
                ));
            }
        }
    }
    Ok(StatementOutcome::pass(
        StatementName::Nohom,
        format!(
            "{} generated modules over {} rigid sums, no forbidden Hom space",
            pairs,
            subsets.len().saturating_sub(1)
        ),
    ))
}

/// The pairing identity: g-vector of X dotted with the dimension
/// vector of L equals dim Hom(X, L) minus dim Hom(L, tau X), for every
/// ordered pair of universe members.
fn check_interp(level: &Level) -> Result<StatementOutcome> {
    let mut pairs = 0usize;
    for x in &level.universe {
        let g = g_vector(x)?;
        let tau_x = tau(x)?;
        for l in &level.universe {
            pairs += 1;
            let dim_l = l.dim_vector();
            let lhs: i64 = g
                .iter()
                .zip(&dim_l)
                .map(|(a, &b)| a * b as i64)
                .sum();
            let rhs = hom_dim(x, l) as i64 - hom_dim(l, &tau_x) as i64;
            if lhs != rhs {
                return Ok(StatementOutcome::fail(
                    StatementName::Interp,
                    Counterexample {
                        description: format!(
                            "pairing mismatch: g.dim = {lhs} but hom difference = {rhs}"
                        ),
                        modules: vec![
                            TaggedModule::plain(x.clone()),
                            TaggedModule::plain(l.clone()),
                        ],
                        sequences: Vec::new(),
                    },
                ));
            }
        }
    }
    Ok(StatementOutcome::pass(
        StatementName::Interp,
        format!("pairing identity exact on {pairs} ordered pairs"),
    ))
}

/// Semistability with respect to the g-vector of an indecomposable
/// tau-rigid module selects exactly its perpendicular context.
fn check_equiv(level: &Level, opts: &VerifyOptions, caps: &Caps) -> Result<StatementOutcome> {
    if !level.algebra.field.is_finite() {
        return Ok(StatementOutcome::skipped(
            StatementName::Equiv,
            "semistability enumerates submodules, which needs a finite field",
        ));
    }
    let mut pairs = 0usize;
    let mut rigid_count = 0usize;
    for x in &level.universe {
        if !is_tau_rigid(x)? {
            continue;
        }
        rigid_count += 1;
        let mut theta = g_vector(x)?;
        if opts.negate_theta {
            for t in &mut theta {
                *t = -*t;
            }
        }
        let tau_x = tau(x)?;
        for m in &level.universe {
            pairs += 1;
            let semistable = is_theta_semistable(m, &theta, caps)?;
            let perp = in_perp_context(m, x, &tau_x);
            if semistable != perp {
                return Ok(StatementOutcome::fail(
                    StatementName::Equiv,
                    Counterexample {
                        description: format!(
                            "semistable = {semistable} but perpendicular membership = {perp} under weights {theta:?}"
                        ),
                        modules: vec![
                            TaggedModule::plain(x.clone()),
                            TaggedModule::plain(m.clone()),
                        ],
                        sequences: Vec::new(),
                    },
                ));
            }
        }
    }
    Ok(StatementOutcome::pass(
        StatementName::Equiv,
        format!("semistable sets match perpendicular contexts for {rigid_count} rigid modules ({pairs} membership tests)"),
    ))
}

/// Dimension vectors along any complete sequence are linearly
/// independent. On uncertified universes the statement is checked on
/// the sequences the slice can exhibit: rigid singletons and the
/// length-two candidates admitted by every necessary test.
fn check_linindep(level: &Level, caps: &Caps) -> Result<StatementOutcome> {
    if level.certified {
        let n = level.algebra.n();
        let mut total = 0usize;
        for flavor in [Flavor::Plain, Flavor::Signed, Flavor::Brick] {
            let seqs = enumerate_complete(level, flavor, caps)?;
            total += seqs.len();
            for seq in &seqs {
                let rank = dim_vector_rank(seq);
                if rank != n {
                    return Ok(StatementOutcome::fail(
                        StatementName::Linindep,
                        Counterexample {
                            description: format!(
                                "complete {} sequence has dimension-vector rank {rank}, expected {n}",
                                flavor.name()
                            ),
                            modules: Vec::new(),
                            sequences: vec![seq.clone()],
                        },
                    ));
                }
            }
        }
        return Ok(StatementOutcome::pass(
            StatementName::Linindep,
            format!("all {total} complete sequences across three flavors have full rank {n}"),
        ));
    }

    let mut checked = 0usize;
    for x in &level.universe {
        if !is_tau_rigid(x)? {
            continue;
        }
        checked += 1;
        let seq = vec![TaggedModule::plain(x.clone())];
        if dim_vector_rank(&seq) != 1 {
            return Ok(StatementOutcome::fail(
                StatementName::Linindep,
                Counterexample {
                    description: "a rigid module has a zero dimension vector".into(),
                    modules: Vec::new(),
                    sequences: vec![seq],
                },
            ));
        }
    }
    let pairs = bounded_rigid_pairs(level, caps)?;
    for (m, x) in &pairs {
        checked += 1;
        let seq = vec![TaggedModule::plain(m.clone()), TaggedModule::plain(x.clone())];
        let rank = dim_vector_rank(&seq);
        if rank != 2 {
            return Ok(StatementOutcome::fail(
                StatementName::Linindep,
                Counterexample {
                    description: format!(
                        "candidate length-two sequence has dimension-vector rank {rank}, expected 2"
                    ),
                    modules: Vec::new(),
                    sequences: vec![seq],
                },
            ));
        }
    }
    Ok(StatementOutcome::pass(
        StatementName::Linindep,
        format!(
            "{} singletons and pairs within the slice have full rank ({} pairs)",
            checked,
            pairs.len()
        ),
    ))
}

/// Two complete plain sequences that agree everywhere but one place
/// agree there too.
fn check_main(level: &Level, caps: &Caps) -> Result<StatementOutcome> {
    if !level.certified {
        return Ok(StatementOutcome::skipped(
            StatementName::Main,
            "exhaustive sequence enumeration needs a certified universe",
        ));
    }
    let seqs = enumerate_complete(level, Flavor::Plain, caps)?;
    if let Some((a, b, pos)) = verify_one_place_uniqueness(&seqs, caps)? {
        return Ok(StatementOutcome::fail(
            StatementName::Main,
            one_place_counterexample(StatementName::Main, Flavor::Plain, &seqs, a, b, pos),
        ));
    }
    Ok(StatementOutcome::pass(
        StatementName::Main,
        format!(
            "no two of {} complete plain sequences differ in exactly one place",
            seqs.len()
        ),
    ))
}

/// The same one-place rigidity for the signed flavor (comparing
/// underlying modules) and for the brick flavor.
fn check_cor_main(level: &Level, caps: &Caps) -> Result<StatementOutcome> {
    if !level.certified {
        return Ok(StatementOutcome::skipped(
            StatementName::CorMain,
            "exhaustive sequence enumeration needs a certified universe",
        ));
    }
    let mut counts = Vec::new();
    for flavor in [Flavor::Signed, Flavor::Brick] {
        let seqs = enumerate_complete(level, flavor, caps)?;
        if let Some((a, b, pos)) = verify_one_place_uniqueness(&seqs, caps)? {
            return Ok(StatementOutcome::fail(
                StatementName::CorMain,
                one_place_counterexample(StatementName::CorMain, flavor, &seqs, a, b, pos),
            ));
        }
        counts.push(format!("{} {}", seqs.len(), flavor.name()));
    }
    Ok(StatementOutcome::pass(
        StatementName::CorMain,
        format!(
            "one-place rigidity holds across {} and {} complete sequences",
            counts[0], counts[1]
        ),
    ))
}

fn one_place_counterexample(
    _name: StatementName,
    flavor: Flavor,
    seqs: &[Sequence],
    a: usize,
    b: usize,
    pos: usize,
) -> Counterexample {
    Counterexample {
        description: format!(
            "two complete {} sequences differ exactly at position {} (1-based from the left)",
            flavor.name(),
            pos + 1
        ),
        modules: Vec::new(),
        sequences: vec![seqs[a].clone(), seqs[b].clone()],
    }
}

/// Every prefix of every complete sequence is complete in exactly one
/// perpendicular context, for each flavor.
fn check_cor_wide(level: &Level, caps: &Caps) -> Result<StatementOutcome> {
    if !level.certified {
        return Ok(StatementOutcome::skipped(
            StatementName::CorWide,
            "context enumeration needs a certified universe",
        ));
    }
    let mut prefix_total = 0usize;
    for flavor in [Flavor::Plain, Flavor::Signed, Flavor::Brick] {
        let seqs = enumerate_complete(level, flavor, caps)?;
        prefix_total += seqs.len() * level.algebra.n();
        if let Some(f) = verify_unique_wide(level, &seqs, flavor, caps)? {
            return Ok(StatementOutcome::fail(
                StatementName::CorWide,
                Counterexample {
                    description: format!(
                        "a length-{} prefix of a complete {} sequence is complete in {} contexts, expected exactly 1",
                        f.prefix_length,
                        flavor.name(),
                        f.host_count
                    ),
                    modules: Vec::new(),
                    sequences: vec![seqs[f.sequence_index].clone()],
                },
            ));
        }
    }
    Ok(StatementOutcome::pass(
        StatementName::CorWide,
        format!("every one of {prefix_total} prefixes lives in exactly one context"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_fixtures::*;
    use crate::universe::build_universe;
    use std::sync::Arc;

    fn level_of(src: &str) -> Level {
        let alg = Arc::new(build(src));
        build_universe(&alg, None, &Caps::default(), 1).unwrap().level
    }

    fn opts() -> VerifyOptions {
        VerifyOptions::default()
    }

    #[test]
    fn every_statement_passes_on_the_linear_quiver() {
        let lv = level_of(A2);
        let all = verify_all(&lv, &opts(), &Caps::default()).unwrap();
        assert_eq!(all.len(), 7);
        for o in &all {
            assert_eq!(o.status, StatementStatus::Pass, "{}: {}", o.name.as_str(), o.detail);
        }
    }

    #[test]
    fn every_statement_passes_on_the_cycle() {
        let lv = level_of(NAK3);
        let all = verify_all(&lv, &opts(), &Caps::default()).unwrap();
        for o in &all {
            assert_eq!(o.status, StatementStatus::Pass, "{}: {}", o.name.as_str(), o.detail);
        }
    }

    #[test]
    fn slice_universe_skips_the_uniqueness_suites() {
        let lv = level_of(KRON);
        let all = verify_all(&lv, &opts(), &Caps::default()).unwrap();
        let by_name = |n: StatementName| {
            all.iter().find(|o| o.name == n).unwrap().status
        };
        assert_eq!(by_name(StatementName::Nohom), StatementStatus::Pass);
        assert_eq!(by_name(StatementName::Interp), StatementStatus::Pass);
        assert_eq!(by_name(StatementName::Equiv), StatementStatus::Pass);
        assert_eq!(by_name(StatementName::Linindep), StatementStatus::Pass);
        assert_eq!(by_name(StatementName::Main), StatementStatus::Skipped);
        assert_eq!(by_name(StatementName::CorMain), StatementStatus::Skipped);
        assert_eq!(by_name(StatementName::CorWide), StatementStatus::Skipped);
    }

    #[test]
    fn rational_universe_skips_semistability() {
        let lv = level_of(LOOP2_RATIONAL);
        let all = verify_all(&lv, &opts(), &Caps::default()).unwrap();
        let by_name = |n: StatementName| {
            all.iter().find(|o| o.name == n).unwrap().status
        };
        assert_eq!(by_name(StatementName::Nohom), StatementStatus::Pass);
        assert_eq!(by_name(StatementName::Interp), StatementStatus::Pass);
        assert_eq!(by_name(StatementName::Equiv), StatementStatus::Skipped);
        assert_eq!(by_name(StatementName::Linindep), StatementStatus::Pass);
        assert_eq!(by_name(StatementName::Main), StatementStatus::Skipped);
    }

    #[test]
    fn negated_weights_break_the_semistability_match() {
        let lv = level_of(A2);
        let out = verify_statement(
            &lv,
            StatementName::Equiv,
            &VerifyOptions { negate_theta: true },
            &Caps::default(),
        )
        .unwrap();
        assert_eq!(out.status, StatementStatus::Fail);
        let ce = out.counterexample.expect("failure carries a witness");
        assert_eq!(ce.modules.len(), 2);
        // Replay the violated instance directly.
        let x = &ce.modules[0].module;
        let m = &ce.modules[1].module;
        let mut theta = crate::ar::g_vector(x).unwrap();
        for t in &mut theta {
            *t = -*t;
        }
        let semistable = is_theta_semistable(m, &theta, &Caps::default()).unwrap();
        let tau_x = crate::ar::tau(x).unwrap();
        let perp = in_perp_context(m, x, &tau_x);
        assert_ne!(semistable, perp);
    }

    #[test]
    fn statement_names_round_trip() {
        for name in StatementName::ALL {
            assert_eq!(StatementName::parse(name.as_str()).unwrap(), name);
        }
        assert!(StatementName::parse("bogus").is_err());
    }
}
