//! Enumeration, checking, and completion of the three flavors of
//! tau-exceptional sequences, together with the uniqueness verifiers.
//!
//! A sequence (X_1, ..., X_k) is consumed from the right: the last
//! entry must be legal at the current layer, and the prefix is checked
//! inside the perpendicular context of that entry. Entries are stored
//! as ambient modules throughout; each recursion layer keeps a list of
//! ambient representatives aligned with its universe so results can be
//! reported in the original category.
//!
//! Flavors:
//! - plain: every entry unshifted and tau-rigid at its layer;
//! - signed: an unshifted entry must be tau-rigid at its layer, a
//!   shifted entry must be projective at its layer;
//! - brick: every entry is the brick quotient of a unique tau-rigid
//!   module at its layer; checking searches for that lift and treats
//!   an ambiguous lift as a broken bijection.

use crate::ar::{ext_dim, is_tau_rigid, tau};
use crate::config::Caps;
use crate::decomp::{are_isomorphic, brick_quotient};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::ExactMatrix;
use crate::module::{hom_dim, is_in_gen, Module};
use crate::stability::{in_perp_context, wide_context, Level, WideContext};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    Plain,
    Signed,
    Brick,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Plain => "plain",
            Flavor::Signed => "signed",
            Flavor::Brick => "brick",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Flavor::Plain),
            "signed" => Ok(Flavor::Signed),
            "brick" => Ok(Flavor::Brick),
            other => Err(Error::invalid(format!(
                "unknown sequence flavor '{other}', expected plain, signed, or brick"
            ))),
        }
    }
}

/// A module together with its shift tag. Only signed sequences carry
/// shifted entries; the other flavors keep the tag false.
#[derive(Clone, Debug)]
pub struct TaggedModule {
    pub module: Module,
    pub shifted: bool,
}

impl TaggedModule {
    pub fn plain(module: Module) -> Self {
        TaggedModule {
            module,
            shifted: false,
        }
    }

    /// Dimension vector with the shift acting as negation.
    pub fn dim_vector_signed(&self) -> Vec<i64> {
        let sign = if self.shifted { -1 } else { 1 };
        self.module
            .dim_vector()
            .into_iter()
            .map(|d| sign * d as i64)
            .collect()
    }
}

pub type Sequence = Vec<TaggedModule>;

/// Per-position summary of the layer a sequence entry was checked in,
/// recorded from the right end inward.
#[derive(Clone, Debug)]
pub struct ContextSummary {
    pub simples: usize,
    pub reduced_dim: usize,
    pub wide_projectives: usize,
}

pub struct SequenceReport {
    pub valid: bool,
    /// 1-based position (counted from the left) and reason, when invalid.
    pub failure: Option<(usize, String)>,
    pub contexts: Vec<ContextSummary>,
}

fn reduce_by(level: &Level, ambient: &[Module], member: usize, caps: &Caps) -> Result<(WideContext, Vec<Module>)> {
    let ctx = wide_context(level, &level.universe[member], caps)?;
    let inner_ambient: Vec<Module> = ctx
        .member_indices
        .iter()
        .map(|&i| ambient[i].clone())
        .collect();
    Ok((ctx, inner_ambient))
}

fn summarize(ctx: &WideContext) -> ContextSummary {
    ContextSummary {
        simples: ctx.reduced.algebra.n(),
        reduced_dim: ctx.reduced.algebra.dim,
        wide_projectives: ctx.wide_projective_indices.len(),
    }
}

/// A module is projective at a layer exactly when its minimal
/// presentation has no relation term.
fn is_projective_at(level: &Level, member: usize) -> Result<bool> {
    crate::ar::is_projective_module(&level.universe[member])
}

/// All complete sequences of the requested flavor over a certified
/// layer, in a deterministic order: the rightmost entry varies slowest
/// and runs through the universe in canonical order, an unshifted tag
/// precedes a shifted one, and prefixes recurse likewise.
pub fn enumerate_complete(level: &Level, flavor: Flavor, caps: &Caps) -> Result<Vec<Sequence>> {
    match flavor {
        Flavor::Plain | Flavor::Signed => {
            enumerate_rec(level, &level.universe, flavor, caps)
        }
        Flavor::Brick => {
            let plain = enumerate_rec(level, &level.universe, Flavor::Plain, caps)?;
            let mut out: Vec<Sequence> = Vec::with_capacity(plain.len());
            for seq in &plain {
                let mut bricks = Vec::with_capacity(seq.len());
                for entry in seq {
                    bricks.push(TaggedModule::plain(brick_quotient(&entry.module, caps)?));
                }
                out.push(bricks);
            }
            // The quotient map must stay injective on whole sequences.
            for a in 0..out.len() {
                for b in (a + 1)..out.len() {
                    let mut same = true;
                    for (x, y) in out[a].iter().zip(&out[b]) {
                        if !are_isomorphic(&x.module, &y.module, caps)? {
                            same = false;
                            break;
                        }
                    }
                    if same {
                        return Err(Error::invariant(
                            "two distinct sequences share one brick image",
                        ));
                    }
                }
            }
            Ok(out)
        }
    }
}

fn enumerate_rec(
    level: &Level,
    ambient: &[Module],
    flavor: Flavor,
    caps: &Caps,
) -> Result<Vec<Sequence>> {
    if level.algebra.n() == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut out = Vec::new();
    for idx in 0..level.universe.len() {
        let rigid = is_tau_rigid(&level.universe[idx])?;
        let mut tags: Vec<bool> = Vec::new();
        match flavor {
            Flavor::Plain | Flavor::Brick => {
                if rigid {
                    tags.push(false);
                }
            }
            Flavor::Signed => {
                if rigid {
                    tags.push(false);
                }
                if is_projective_at(level, idx)? {
                    tags.push(true);
                }
            }
        }
        if tags.is_empty() {
            continue;
        }
        let (ctx, inner_ambient) = reduce_by(level, ambient, idx, caps)?;
        let prefixes = enumerate_rec(&ctx.reduced, &inner_ambient, flavor, caps)?;
        for shifted in tags {
            for p in &prefixes {
                let mut s = p.clone();
                s.push(TaggedModule {
                    module: ambient[idx].clone(),
                    shifted,
                });
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// Locates a module among the layer's ambient representatives.
fn locate(ambient: &[Module], m: &Module, caps: &Caps) -> Result<Option<usize>> {
    for (i, a) in ambient.iter().enumerate() {
        if are_isomorphic(m, a, caps)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn check_rec(
    level: &Level,
    ambient: &[Module],
    seq: &[TaggedModule],
    flavor: Flavor,
    caps: &Caps,
    contexts: &mut Vec<ContextSummary>,
) -> Result<Option<(usize, String)>> {
    let Some((last, prefix)) = seq.split_last() else {
        return Ok(None);
    };
    let position = seq.len();
    if last.shifted && flavor != Flavor::Signed {
        return Ok(Some((position, "only signed sequences may carry shift tags".into())));
    }
    let member = match flavor {
        Flavor::Plain | Flavor::Signed => {
            let Some(i) = locate(ambient, &last.module, caps)? else {
                return Ok(Some((
                    position,
                    "entry is not an indecomposable object of its context".into(),
                )));
            };
            if last.shifted {
                if !is_projective_at(level, i)? {
                    return Ok(Some((
                        position,
                        "shifted entry is not projective in its context".into(),
                    )));
                }
            } else if !is_tau_rigid(&level.universe[i])? {
                return Ok(Some((position, "entry is not tau-rigid in its context".into())));
            }
            i
        }
        Flavor::Brick => {
            let mut lifts = Vec::new();
            for i in 0..level.universe.len() {
                if is_tau_rigid(&level.universe[i])?
                    && are_isomorphic(&brick_quotient(&ambient[i], caps)?, &last.module, caps)?
                {
                    lifts.push(i);
                }
            }
            match lifts.len() {
                0 => {
                    return Ok(Some((
                        position,
                        "no tau-rigid object of the context has this brick quotient".into(),
                    )))
                }
                1 => lifts[0],
                _ => {
                    return Err(Error::invariant(
                        "multiple tau-rigid objects share one brick quotient",
                    ))
                }
            }
        }
    };
    let (ctx, inner_ambient) = reduce_by(level, ambient, member, caps)?;
    contexts.push(summarize(&ctx));
    check_rec(&ctx.reduced, &inner_ambient, prefix, flavor, caps, contexts)
}

pub fn check_sequence(
    level: &Level,
    seq: &[TaggedModule],
    flavor: Flavor,
    caps: &Caps,
) -> Result<SequenceReport> {
    let mut contexts = Vec::new();
    let failure = check_rec(level, &level.universe, seq, flavor, caps, &mut contexts)?;
    Ok(SequenceReport {
        valid: failure.is_none(),
        failure,
        contexts,
    })
}

pub fn is_tau_exceptional(level: &Level, seq: &[Module], caps: &Caps) -> Result<SequenceReport> {
    let tagged: Vec<TaggedModule> = seq.iter().cloned().map(TaggedModule::plain).collect();
    check_sequence(level, &tagged, Flavor::Plain, caps)
}

pub fn is_signed_tau_exceptional(
    level: &Level,
    seq: &[TaggedModule],
    caps: &Caps,
) -> Result<SequenceReport> {
    check_sequence(level, seq, Flavor::Signed, caps)
}

pub fn is_brick_tau_exceptional(level: &Level, seq: &[Module], caps: &Caps) -> Result<SequenceReport> {
    let tagged: Vec<TaggedModule> = seq.iter().cloned().map(TaggedModule::plain).collect();
    check_sequence(level, &tagged, Flavor::Brick, caps)
}

/// Extends a valid sequence to a complete one by repeatedly inserting,
/// directly before the current front, the lowest-indexed projective of
/// the innermost layer (unshifted; for the brick flavor, its brick
/// quotient). Fails with the checker's reason when the input is not
/// valid.
pub fn complete_sequence(
    level: &Level,
    partial: &[TaggedModule],
    flavor: Flavor,
    caps: &Caps,
) -> Result<Sequence> {
    // Walk the partial sequence to the innermost layer.
    let mut cur = level.clone();
    let mut ambient: Vec<Module> = cur.universe.clone();
    let mut stack: Vec<(Level, Vec<Module>)> = Vec::new();
    {
        let report = check_sequence(level, partial, flavor, caps)?;
        if let Some((pos, why)) = report.failure {
            return Err(Error::invalid(format!(
                "partial sequence is not valid at position {pos}: {why}"
            )));
        }
    }
    for k in (0..partial.len()).rev() {
        let entry = &partial[k];
        let member = match flavor {
            Flavor::Plain | Flavor::Signed => locate(&ambient, &entry.module, caps)?
                .ok_or_else(|| Error::invariant("validated entry vanished from its context"))?,
            Flavor::Brick => {
                let mut found = None;
                for i in 0..cur.universe.len() {
                    if is_tau_rigid(&cur.universe[i])?
                        && are_isomorphic(&brick_quotient(&ambient[i], caps)?, &entry.module, caps)?
                    {
                        found = Some(i);
                        break;
                    }
                }
                found.ok_or_else(|| Error::invariant("validated lift vanished from its context"))?
            }
        };
        let (ctx, inner_ambient) = reduce_by(&cur, &ambient, member, caps)?;
        stack.push((cur, ambient));
        cur = ctx.reduced;
        ambient = inner_ambient;
    }
    let mut added: Vec<TaggedModule> = Vec::new();
    while cur.algebra.n() > 0 {
        let mut chosen = None;
        for i in 0..cur.universe.len() {
            if is_projective_at(&cur, i)? {
                chosen = Some(i);
                break;
            }
        }
        let i = chosen.ok_or_else(|| {
            Error::invariant("a layer with simple modules has no projective in its universe")
        })?;
        let entry = match flavor {
            Flavor::Plain | Flavor::Signed => TaggedModule::plain(ambient[i].clone()),
            Flavor::Brick => TaggedModule::plain(brick_quotient(&ambient[i], caps)?),
        };
        added.push(entry);
        let (ctx, inner_ambient) = reduce_by(&cur, &ambient, i, caps)?;
        cur = ctx.reduced;
        ambient = inner_ambient;
    }
    added.reverse();
    added.extend_from_slice(partial);
    Ok(added)
}

/// Rank of the signed dimension vectors, computed over the rationals.
pub fn dim_vector_rank(seq: &[TaggedModule]) -> usize {
    if seq.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<i64>> = seq.iter().map(|t| t.dim_vector_signed()).collect();
    let m = ExactMatrix::from_int_rows(FieldSpec::Rational, &rows);
    m.rank()
}

/// Linear independence of the signed dimension vectors.
pub fn verify_linear_independence(seq: &[TaggedModule]) -> (usize, usize) {
    (dim_vector_rank(seq), seq.len())
}

/// Looks for a pair of distinct sequences whose underlying modules
/// differ in exactly one position. Returns the offending pair and the
/// position when found.
pub fn verify_one_place_uniqueness(
    all: &[Sequence],
    caps: &Caps,
) -> Result<Option<(usize, usize, usize)>> {
    for a in 0..all.len() {
        for b in (a + 1)..all.len() {
            if all[a].len() != all[b].len() {
                continue;
            }
            let mut differing = Vec::new();
            for p in 0..all[a].len() {
                if !are_isomorphic(&all[a][p].module, &all[b][p].module, caps)? {
                    differing.push(p);
                    if differing.len() > 1 {
                        break;
                    }
                }
            }
            if differing.len() == 1 {
                return Ok(Some((a, b, differing[0])));
            }
        }
    }
    Ok(None)
}

/// All subsets of the layer's tau-rigid indecomposables whose direct
/// sums are tau-rigid, as sorted index lists (the empty set included).
pub fn basic_tau_rigid_subsets(level: &Level) -> Result<Vec<Vec<usize>>> {
    let mut rigid = Vec::new();
    for (i, u) in level.universe.iter().enumerate() {
        if is_tau_rigid(u)? {
            rigid.push(i);
        }
    }
    let r = rigid.len();
    if r > 24 {
        return Err(Error::CapExceeded {
            what: "enumerating tau-rigid summand subsets".into(),
            required: 1u128 << r,
            cap: 1u128 << 24,
        });
    }
    let mut taus = Vec::with_capacity(r);
    for &i in &rigid {
        taus.push(tau(&level.universe[i])?);
    }
    let mut compatible = vec![vec![true; r]; r];
    for a in 0..r {
        for b in 0..r {
            if a != b {
                compatible[a][b] = hom_dim(&level.universe[rigid[a]], &taus[b]) == 0;
            }
        }
    }
    let mut out = Vec::new();
    'mask: for mask in 0u32..(1u32 << r) {
        let picked: Vec<usize> = (0..r).filter(|&a| mask >> a & 1 == 1).collect();
        for &a in &picked {
            for &b in &picked {
                if a != b && !compatible[a][b] {
                    continue 'mask;
                }
            }
        }
        out.push(picked.into_iter().map(|a| rigid[a]).collect());
    }
    out.sort_by(|x: &Vec<usize>, y| (x.len(), x.clone()).cmp(&(y.len(), y.clone())));
    Ok(out)
}

pub struct UniqueWideFailure {
    pub sequence_index: usize,
    pub prefix_length: usize,
    pub host_count: usize,
}

/// Checks that each prefix of each complete sequence is a complete
/// sequence of its flavor in exactly one perpendicular context, where
/// the candidate contexts range over J(Y) for all basic tau-rigid Y
/// and are identified by their member sets.
pub fn verify_unique_wide(
    level: &Level,
    all: &[Sequence],
    flavor: Flavor,
    caps: &Caps,
) -> Result<Option<UniqueWideFailure>> {
    let subsets = basic_tau_rigid_subsets(level)?;
    // Deduplicate contexts by member set.
    let mut hosts: Vec<(Vec<usize>, WideContext, Vec<Module>)> = Vec::new();
    for subset in &subsets {
        let x = if subset.is_empty() {
            Module::zero(&level.algebra)
        } else {
            let parts: Vec<&Module> = subset.iter().map(|&i| &level.universe[i]).collect();
            Module::direct_sum(&parts)
        };
        let ctx = wide_context(level, &x, caps)?;
        let key = ctx.member_indices.clone();
        if hosts.iter().any(|(k, _, _)| *k == key) {
            continue;
        }
        let ambient: Vec<Module> = ctx
            .member_indices
            .iter()
            .map(|&i| level.universe[i].clone())
            .collect();
        hosts.push((key, ctx, ambient));
    }
    let n = level.algebra.n();
    for (si, seq) in all.iter().enumerate() {
        for j in 1..=n.min(seq.len()) {
            let prefix = &seq[..j];
            let mut count = 0usize;
            for (_, ctx, ambient) in &hosts {
                if ctx.reduced.algebra.n() != j {
                    continue;
                }
                let mut contexts = Vec::new();
                let failure = check_rec(&ctx.reduced, ambient, prefix, flavor, caps, &mut contexts)?;
                if failure.is_none() {
                    count += 1;
                }
            }
            if count != 1 {
                return Ok(Some(UniqueWideFailure {
                    sequence_index: si,
                    prefix_length: j,
                    host_count: count,
                }));
            }
        }
    }
    Ok(None)
}

/// On layers whose universe is only a bounded slice, full context
/// reduction is unavailable; this finds length-two candidates that
/// every necessary test within the slice admits: N tau-rigid, M in the
/// perpendicular context of N, and no extension from M to any slice
/// member of that context generated by M.
pub fn bounded_rigid_pairs(level: &Level, caps: &Caps) -> Result<Vec<(Module, Module)>> {
    let mut out = Vec::new();
    for n_mod in &level.universe {
        if !is_tau_rigid(n_mod)? {
            continue;
        }
        let tau_n = tau(n_mod)?;
        for m in &level.universe {
            if !in_perp_context(m, n_mod, &tau_n) {
                continue;
            }
            let mut admissible = true;
            for k in &level.universe {
                if in_perp_context(k, n_mod, &tau_n)
                    && is_in_gen(k, m)
                    && ext_dim(m, k)? != 0
                {
                    admissible = false;
                    break;
                }
            }
            if admissible {
                out.push((m.clone(), n_mod.clone()));
            }
        }
    }
    let _ = caps;
    Ok(out)
}
