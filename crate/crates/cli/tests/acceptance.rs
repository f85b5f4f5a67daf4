//! Acceptance battery. Each test prints exactly one PASS/FAIL line for
//! its criterion (run with --nocapture to see the lines for passing
//! tests; the harness result line mirrors them either way).

use std::path::Path;
use std::sync::Arc;
use tauseq_core::algebra::build_path_algebra;
use tauseq_core::ar::{g_vector, is_tau_rigid};
use tauseq_core::config::Caps;
use tauseq_core::decomp::{are_isomorphic, brick_quotient, is_brick};
use tauseq_core::module::Module;
use tauseq_core::quiver::parse_quiver_json;
use tauseq_core::sequences::{basic_tau_rigid_subsets, bounded_rigid_pairs, enumerate_complete, Flavor};
use tauseq_core::stability::{is_tau_rigid_in, wide_context, Level};
use tauseq_core::universe::build_universe;
use tauseq_core::verify::{verify_statement, StatementName, StatementStatus, VerifyOptions};

const CERTIFIED: [&str; 4] = ["a2", "a3", "loop2", "nak3"];
const FINITE: [&str; 5] = ["a2", "a3", "loop2", "nak3", "kron"];
const ALL: [&str; 7] = [
    "a2",
    "a3",
    "loop2",
    "nak3",
    "kron",
    "a2_rational",
    "loop2_rational",
];

fn caps() -> Caps {
    Caps::default()
}

fn level_of(name: &str) -> Level {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    let resolved = parse_quiver_json(&text).unwrap().resolve().unwrap();
    let algebra = Arc::new(build_path_algebra(&resolved).unwrap());
    build_universe(&algebra, None, &caps(), 1).unwrap().level
}

fn statement_passes(fixture: &str, name: StatementName) -> (bool, String) {
    let lv = level_of(fixture);
    let out = verify_statement(&lv, name, &VerifyOptions::default(), &caps()).unwrap();
    (out.status == StatementStatus::Pass, out.detail)
}

#[test]
fn criterion_01_pairing_identity_on_all_five_finite_fixtures() {
    let mut details = Vec::new();
    for f in FINITE {
        let (ok, detail) = statement_passes(f, StatementName::Interp);
        assert!(ok, "criterion 01 pairing-identity: FAIL on {f}: {detail}");
        details.push(format!("{f}: {detail}"));
    }
    println!(
        "criterion 01 pairing-identity: PASS ({})",
        details.join("; ")
    );
}

#[test]
fn criterion_02_semistable_sets_equal_perpendicular_contexts() {
    for f in CERTIFIED {
        let (ok, detail) = statement_passes(f, StatementName::Equiv);
        assert!(ok, "criterion 02 semistability-match: FAIL on {f}: {detail}");
    }
    println!("criterion 02 semistability-match: PASS (exact set equality on a2, a3, loop2, nak3)");
}

#[test]
fn criterion_03_no_hom_from_generated_modules_into_the_translate() {
    for f in FINITE {
        let (ok, detail) = statement_passes(f, StatementName::Nohom);
        assert!(ok, "criterion 03 generated-hom-vanishing: FAIL on {f}: {detail}");
    }
    println!("criterion 03 generated-hom-vanishing: PASS (zero violations on all five finite-field fixtures)");
}

#[test]
fn criterion_04_dimension_vector_independence() {
    for f in CERTIFIED {
        let (ok, detail) = statement_passes(f, StatementName::Linindep);
        assert!(ok, "criterion 04 dimension-independence: FAIL on {f}: {detail}");
    }
    let kron = level_of("kron");
    let pairs = bounded_rigid_pairs(&kron, &caps()).unwrap();
    assert!(
        !pairs.is_empty(),
        "criterion 04 dimension-independence: FAIL (no candidate pairs in the bounded slice)"
    );
    let mut saw_unit_pair = false;
    for (m, x) in &pairs {
        let dm = m.dim_vector();
        let dx = x.dim_vector();
        let rank2 = dm[0] as i64 * dx[1] as i64 - dm[1] as i64 * dx[0] as i64 != 0;
        assert!(
            rank2,
            "criterion 04 dimension-independence: FAIL (pair {dm:?}, {dx:?} is dependent)"
        );
        if dm == [1, 0] && dx == [0, 1] {
            saw_unit_pair = true;
        }
    }
    assert!(
        saw_unit_pair,
        "criterion 04 dimension-independence: FAIL (expected the ((1,0),(0,1)) pair in the slice)"
    );
    println!(
        "criterion 04 dimension-independence: PASS (full rank on every certified fixture; {} bounded pairs on kron all rank 2)",
        pairs.len()
    );
}

#[test]
fn criterion_05_one_place_determination() {
    for f in CERTIFIED {
        let (ok, detail) = statement_passes(f, StatementName::Main);
        assert!(ok, "criterion 05 one-place-determination: FAIL on {f}: {detail}");
        let (ok, detail) = statement_passes(f, StatementName::CorMain);
        assert!(ok, "criterion 05 one-place-determination: FAIL on {f}: {detail}");
    }
    println!("criterion 05 one-place-determination: PASS (plain, signed, and brick flavors on a2, a3, loop2, nak3)");
}

#[test]
fn criterion_06_unique_hosting_context_per_prefix() {
    for f in ["a2", "loop2"] {
        let (ok, detail) = statement_passes(f, StatementName::CorWide);
        assert!(ok, "criterion 06 unique-hosting-context: FAIL on {f}: {detail}");
    }
    println!("criterion 06 unique-hosting-context: PASS (every prefix of every complete sequence on a2 and loop2)");
}

#[test]
fn criterion_07_frozen_sequence_counts() {
    let c = caps();
    let a2 = level_of("a2");
    let loop2 = level_of("loop2");
    let a2_plain = enumerate_complete(&a2, Flavor::Plain, &c).unwrap().len();
    let a2_signed = enumerate_complete(&a2, Flavor::Signed, &c).unwrap().len();
    let loop_plain = enumerate_complete(&loop2, Flavor::Plain, &c).unwrap().len();
    let loop_signed = enumerate_complete(&loop2, Flavor::Signed, &c).unwrap().len();
    let loop_brick = enumerate_complete(&loop2, Flavor::Brick, &c).unwrap().len();

    assert_eq!(a2_plain, 3, "criterion 07 frozen-counts: FAIL (a2 plain)");
    assert_eq!(a2_signed, 10, "criterion 07 frozen-counts: FAIL (a2 signed)");
    assert_eq!(loop_plain, 1, "criterion 07 frozen-counts: FAIL (loop2 plain)");
    assert_eq!(loop_brick, 1, "criterion 07 frozen-counts: FAIL (loop2 brick)");

    if loop_signed != 1 {
        println!("criterion 07 frozen-counts: FAIL (loop2 signed: expected 1, found {loop_signed})");
        println!("  analysis: the two complete signed sequences on the one-vertex loop algebra are (P) and (P[1]).");
        println!("  A shifted last entry is allowed exactly when its underlying module is projective, and P is");
        println!("  projective, so (P[1]) is valid alongside (P). The same counting identity that gives the");
        println!("  asserted a2 value 10 = 2! x 5 (orderings times support pairs) gives 1! x 2 = 2 here: the");
        println!("  loop algebra has two support pairs, (P, empty set) and (0, whole quiver). The expected value");
        println!("  1 for the signed flavor is inconsistent with those two accepted facts; the enumerator");
        println!("  faithfully implements the definition, so this criterion is left failing rather than gamed.");
    } else {
        println!("criterion 07 frozen-counts: PASS");
    }
    assert_eq!(
        loop_signed, 1,
        "criterion 07 frozen-counts: FAIL (loop2 signed: expected 1, found {loop_signed}; see analysis above)"
    );
}

#[test]
fn criterion_08_relative_rigidity_strategies_agree() {
    let c = caps();
    let mut checked = 0usize;
    for f in CERTIFIED {
        let lv = level_of(f);
        for subset in basic_tau_rigid_subsets(&lv).unwrap() {
            let x = if subset.is_empty() {
                Module::zero(&lv.algebra)
            } else {
                let parts: Vec<&Module> = subset.iter().map(|&i| &lv.universe[i]).collect();
                Module::direct_sum(&parts)
            };
            let ctx = wide_context(&lv, &x, &c).unwrap();
            for m in &ctx.members {
                // The transport strategy and the ambient Ext criterion
                // are cross-checked inside; disagreement is an error.
                let inside = is_tau_rigid_in(&ctx, m, &c).unwrap();
                checked += 1;
                if subset.is_empty() {
                    assert_eq!(
                        inside,
                        is_tau_rigid(m).unwrap(),
                        "criterion 08 rigidity-strategies: FAIL (whole-category context disagrees with the ambient test)"
                    );
                }
            }
        }
    }
    println!(
        "criterion 08 rigidity-strategies: PASS (both strategies agree on {checked} context members)"
    );
}

#[test]
fn criterion_09_g_vector_rigidity() {
    let c = caps();
    let mut pairs = 0usize;
    for f in ALL {
        let lv = level_of(f);
        let mut rigid: Vec<(&Module, Vec<i64>)> = Vec::new();
        for m in &lv.universe {
            if is_tau_rigid(m).unwrap() {
                rigid.push((m, g_vector(m).unwrap()));
            }
        }
        for (m, g) in &rigid {
            let nonzero: Vec<usize> = (0..g.len()).filter(|&i| g[i] != 0).collect();
            if nonzero.len() == 1 {
                let i = nonzero[0];
                assert_eq!(
                    g[i], 1,
                    "criterion 09 g-vector-rigidity: FAIL on {f}: axis-proportional g-vector {g:?} of a dim {:?} module is not the basis vector",
                    m.dim_vector()
                );
            }
        }
        for a in 0..rigid.len() {
            for b in (a + 1)..rigid.len() {
                pairs += 1;
                if rigid[a].1 == rigid[b].1 {
                    assert!(
                        are_isomorphic(rigid[a].0, rigid[b].0, &c).unwrap(),
                        "criterion 09 g-vector-rigidity: FAIL on {f}: equal g-vectors {:?} on non-isomorphic modules",
                        rigid[a].1
                    );
                }
            }
        }
    }
    println!("criterion 09 g-vector-rigidity: PASS (injective on rigid modules across all seven fixtures, {pairs} pairs; axis-proportional implies the axis itself)");
}

#[test]
fn criterion_10_brick_quotient_suite() {
    let c = caps();
    let mut total = 0usize;
    for f in ALL {
        let lv = level_of(f);
        let mut images: Vec<(Module, Module)> = Vec::new();
        for m in &lv.universe {
            if !is_tau_rigid(m).unwrap() {
                continue;
            }
            let q = brick_quotient(m, &c).unwrap();
            assert!(
                is_brick(&q, &c).unwrap(),
                "criterion 10 brick-quotients: FAIL on {f}: quotient of a rigid dim {:?} module is not a brick",
                m.dim_vector()
            );
            images.push((m.clone(), q));
            total += 1;
        }
        for a in 0..images.len() {
            for b in (a + 1)..images.len() {
                assert!(
                    !are_isomorphic(&images[a].1, &images[b].1, &c).unwrap(),
                    "criterion 10 brick-quotients: FAIL on {f}: two distinct rigid modules share one brick image"
                );
            }
        }
    }
    let loop2 = level_of("loop2");
    let p = loop2.universe.iter().find(|m| m.dim == 2).unwrap();
    let s = loop2.universe.iter().find(|m| m.dim == 1).unwrap();
    let q = brick_quotient(p, &c).unwrap();
    assert!(
        are_isomorphic(&q, s, &c).unwrap(),
        "criterion 10 brick-quotients: FAIL (quotient of the regular loop module is not the simple)"
    );
    println!("criterion 10 brick-quotients: PASS ({total} rigid modules: every image a brick, images pairwise distinct, loop regular maps to the simple)");
}
