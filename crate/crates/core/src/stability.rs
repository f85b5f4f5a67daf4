//! King semistability, perpendicular wide subcategories of tau-rigid
//! modules, and the reduction to module categories over endomorphism
//! algebras of their Ext-projective generators.
//!
//! For a tau-rigid X the context J(X) consists of the modules U with
//! Hom(X, U) = 0 and Hom(U, tau X) = 0. It is a wide subcategory
//! equivalent to the module category of End(P_W) for P_W the sum of
//! its Ext-projectives, via M -> Hom(P_W, M) with the algebra acting
//! by precomposition. The number of Ext-projectives must equal the
//! ambient vertex count minus the number of isomorphism classes of
//! summands of X; a mismatch indicates a computation error and is
//! reported as an invariant violation.

use crate::algebra::{based_algebra_from_parts, empty_algebra, BasedAlgebra};
use crate::ar::{ext_dim, tau};
use crate::config::Caps;
use crate::decomp::{are_isomorphic, end_radical, is_indecomposable, rank_of_module};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{ExactMatrix, Subspace};
use crate::module::{all_submodules, hom_basis, hom_dim, is_in_gen, Module};
use std::sync::Arc;

/// One layer of the reduction recursion: an algebra together with
/// representatives of the indecomposable modules the layer can see.
/// `certified` records whether that list provably contains every
/// indecomposable up to isomorphism.
#[derive(Clone, Debug)]
pub struct Level {
    pub algebra: Arc<BasedAlgebra>,
    pub universe: Vec<Module>,
    pub certified: bool,
}

/// theta . dim_vector as an exact integer.
fn pair(theta: &[i64], dims: &[usize]) -> i128 {
    theta
        .iter()
        .zip(dims)
        .map(|(&t, &d)| t as i128 * d as i128)
        .sum()
}

/// King semistability with the convention that the weight vanishes on
/// the module and is nonpositive on submodules.
pub fn is_theta_semistable(m: &Module, theta: &[i64], caps: &Caps) -> Result<bool> {
    if theta.len() != m.algebra.n() {
        return Err(Error::invalid(
            "stability weight must list one entry per vertex",
        ));
    }
    if m.dim == 0 {
        return Ok(false);
    }
    if pair(theta, &m.dim_vector()) != 0 {
        return Ok(false);
    }
    for sub in all_submodules(m, caps.max_subspaces)? {
        if sub.dim() == 0 || sub.dim() == m.dim {
            continue;
        }
        let (s, _) = crate::module::submodule_from_subspace(m, &sub)?;
        if pair(theta, &s.dim_vector()) > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Membership in the perpendicular context of x: no morphisms from x
/// in, none out into tau x.
pub fn in_perp_context(u: &Module, x: &Module, tau_x: &Module) -> bool {
    hom_dim(x, u) == 0 && hom_dim(u, tau_x) == 0
}

pub struct WideContext {
    pub x: Module,
    pub tau_x: Module,
    /// Indecomposable representatives of the context, in universe order.
    pub members: Vec<Module>,
    /// Positions of `members` inside the source layer's universe.
    pub member_indices: Vec<usize>,
    /// Indices into `members` of the Ext-projectives.
    pub wide_projective_indices: Vec<usize>,
    /// Direct sum of the Ext-projectives, in member-index order.
    pub proj_bundle: Module,
    /// The reduced layer: endomorphism algebra of the bundle with the
    /// transported universe.
    pub reduced: Level,
    /// Matrices of the reduced algebra's basis as endomorphisms of the
    /// bundle, indexed like the algebra basis.
    lambda_mats: Vec<ExactMatrix>,
}

/// Builds the perpendicular context of a tau-rigid module over a
/// certified layer and its reduction to the endomorphism algebra of
/// the Ext-projective generator.
pub fn wide_context(level: &Level, x: &Module, caps: &Caps) -> Result<WideContext> {
    let algebra = &level.algebra;
    let field = algebra.field;
    if !level.certified {
        return Err(Error::Unsupported(
            "perpendicular context reduction needs a certified list of indecomposables".into(),
        ));
    }
    let tau_x = tau(x)?;
    if hom_dim(x, &tau_x) != 0 {
        return Err(Error::invalid(
            "context construction requires a tau-rigid module",
        ));
    }

    let mut members: Vec<Module> = Vec::new();
    let mut member_indices: Vec<usize> = Vec::new();
    for (i, u) in level.universe.iter().enumerate() {
        if in_perp_context(u, x, &tau_x) {
            members.push(u.clone());
            member_indices.push(i);
        }
    }

    let mut wide_projective_indices = Vec::new();
    for (i, p) in members.iter().enumerate() {
        let mut ext_free = true;
        for u in &members {
            if ext_dim(p, u)? != 0 {
                ext_free = false;
                break;
            }
        }
        if ext_free {
            wide_projective_indices.push(i);
        }
    }

    let expected = algebra.n() as i64 - rank_of_module(x, caps)? as i64;
    if wide_projective_indices.len() as i64 != expected {
        return Err(Error::invariant(format!(
            "context of a tau-rigid module has {} Ext-projectives, expected {}",
            wide_projective_indices.len(),
            expected
        )));
    }

    let wide_projs: Vec<&Module> = wide_projective_indices
        .iter()
        .map(|&i| &members[i])
        .collect();
    let r = wide_projs.len();
    let proj_bundle = if r == 0 {
        Module::zero(algebra)
    } else {
        Module::direct_sum(&wide_projs)
    };
    let mut offsets = vec![0usize];
    for p in &wide_projs {
        offsets.push(offsets.last().unwrap() + p.dim);
    }

    // Assemble the endomorphism algebra of the bundle with a basis
    // adapted to the block structure: identity endomorphisms of the
    // summands first, then their local radicals, then all morphisms
    // between distinct summands. Elements multiply opposite to matrix
    // composition so that hom spaces out of the bundle become left
    // modules under precomposition.
    let mut mats: Vec<ExactMatrix> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut idempotents = Vec::new();
    let embed = |h: &ExactMatrix, i: usize, j: usize| -> ExactMatrix {
        let mut m = ExactMatrix::zeros(field, proj_bundle.dim, proj_bundle.dim);
        m.set_block(offsets[i], offsets[j], h);
        m
    };
    for (i, p) in wide_projs.iter().enumerate() {
        idempotents.push(mats.len());
        mats.push(embed(&ExactMatrix::identity(field, p.dim), i, i));
        labels.push(format!("e_{i}"));
    }
    for (i, p) in wide_projs.iter().enumerate() {
        let rad = end_radical(p, caps)?;
        if rad.len() + 1 != hom_basis(p, p).len() {
            return Err(Error::Unsupported(format!(
                "endomorphism algebra of Ext-projective {i} is not elementary over this base field"
            )));
        }
        for (k, h) in rad.iter().enumerate() {
            mats.push(embed(h, i, i));
            labels.push(format!("r_{i}_{k}"));
        }
    }
    for (i, pi) in wide_projs.iter().enumerate() {
        for (j, pj) in wide_projs.iter().enumerate() {
            if i == j {
                continue;
            }
            for (k, h) in hom_basis(pj, pi).iter().enumerate() {
                mats.push(embed(h, i, j));
                labels.push(format!("h_{j}_to_{i}_{k}"));
            }
        }
    }

    let dim = mats.len();
    let reduced_algebra = if dim == 0 {
        Arc::new(empty_algebra(field, format!("{}-reduced", algebra.name)))
    } else {
        let amb = proj_bundle.dim * proj_bundle.dim;
        // Coordinates must come back in the order of `mats`, so solve
        // against the basis matrix instead of a row-reduced span.
        let mut basis_cols = ExactMatrix::zeros(field, amb, dim);
        for (j, m) in mats.iter().enumerate() {
            for (r, val) in vectorize(m).into_iter().enumerate() {
                basis_cols[(r, j)] = val;
            }
        }
        if basis_cols.rank() != dim {
            return Err(Error::invariant(
                "endomorphism basis of the bundle is linearly dependent",
            ));
        }
        let mut mult = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                // Opposite composition: apply i first, then j.
                let prod = mats[j].mul(&mats[i]);
                mult[i * dim + j] = basis_cols
                    .solve(&vectorize(&prod))
                    .ok_or_else(|| Error::invariant("endomorphism span is not closed"))?;
            }
        }
        let mut unit = vec![field.zero(); dim];
        for &e in &idempotents {
            unit[e] = field.one();
        }
        let radical: Vec<usize> = (0..dim).filter(|k| !idempotents.contains(k)).collect();
        let generators: Vec<usize> = (0..dim).collect();
        let gen_words: Vec<Vec<usize>> = (0..dim).map(|k| vec![k]).collect();
        Arc::new(based_algebra_from_parts(
            format!("{}-reduced", algebra.name),
            field,
            labels,
            mult,
            unit,
            idempotents,
            generators,
            gen_words,
            radical,
        )?)
    };

    let mut ctx = WideContext {
        x: x.clone(),
        tau_x,
        members,
        member_indices,
        wide_projective_indices,
        proj_bundle,
        reduced: Level {
            algebra: reduced_algebra,
            universe: Vec::new(),
            certified: level.certified,
        },
        lambda_mats: mats,
    };

    // Transport consistency: the bundle itself becomes the regular
    // module of the reduced algebra.
    if r > 0 {
        let transported_bundle = transport(&ctx, &ctx.proj_bundle.clone())?;
        transported_bundle.validate()?;
        let regular = Module::regular(&ctx.reduced.algebra);
        if !are_isomorphic(&transported_bundle, &regular, caps)? {
            return Err(Error::invariant(
                "transported Ext-projective bundle is not the regular module",
            ));
        }
    }

    let mut transported = Vec::new();
    for m in &ctx.members {
        let t = transport(&ctx, m)?;
        t.validate()?;
        if !is_indecomposable(&t, caps)? {
            return Err(Error::invariant(
                "transport of an indecomposable context member decomposed",
            ));
        }
        transported.push(t);
    }
    ctx.reduced.universe = transported;
    Ok(ctx)
}

fn vectorize(m: &ExactMatrix) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(m.rows * m.cols);
    for r in 0..m.rows {
        v.extend_from_slice(m.row(r));
    }
    v
}

/// The image of a context member under the equivalence: Hom(P_W, M)
/// with the reduced algebra acting by precomposition.
pub fn transport(ctx: &WideContext, m: &Module) -> Result<Module> {
    let field = ctx.proj_bundle.algebra.field;
    let reduced = &ctx.reduced.algebra;
    if reduced.dim == 0 || m.dim == 0 {
        return Ok(Module::zero(reduced));
    }
    let homs = hom_basis(&ctx.proj_bundle, m);
    let d = homs.len();
    if d == 0 {
        return Ok(Module::zero(reduced));
    }
    let amb = m.dim * ctx.proj_bundle.dim;
    let vecs: Vec<Vec<Scalar>> = homs.iter().map(vectorize).collect();
    let span = Subspace::from_vectors(field, amb, &vecs);
    let coord_mats: Vec<ExactMatrix> = span
        .basis_vectors()
        .into_iter()
        .map(|v| {
            let mut h = ExactMatrix::zeros(field, m.dim, ctx.proj_bundle.dim);
            for r in 0..m.dim {
                for c in 0..ctx.proj_bundle.dim {
                    h[(r, c)] = v[r * ctx.proj_bundle.dim + c].clone();
                }
            }
            h
        })
        .collect();
    let mut gen_actions = Vec::with_capacity(reduced.generators.len());
    for &g in &reduced.generators {
        let a = &ctx.lambda_mats[g];
        let mut act = ExactMatrix::zeros(field, d, d);
        for (j, phi) in coord_mats.iter().enumerate() {
            let image = phi.mul(a);
            let coords = span
                .express(&vectorize(&image))
                .ok_or_else(|| Error::invariant("precomposition left the hom space"))?;
            for (r, v) in coords.into_iter().enumerate() {
                act[(r, j)] = v;
            }
        }
        gen_actions.push(act);
    }
    Ok(Module {
        algebra: Arc::clone(reduced),
        dim: d,
        gen_actions,
    })
}

/// Tau-rigidity of a context member measured inside the context, i.e.
/// after transport to the reduced algebra. When the layer is certified
/// the result is cross-checked against the ambient characterization:
/// rigidity inside the context is equivalent to the vanishing of
/// Ext^1(M, N) for every context member N generated by M.
pub fn is_tau_rigid_in(ctx: &WideContext, m: &Module, caps: &Caps) -> Result<bool> {
    if !in_perp_context(m, &ctx.x, &ctx.tau_x) {
        return Err(Error::invalid(
            "module does not lie in the perpendicular context",
        ));
    }
    let t = transport(ctx, m)?;
    let reduced_answer = crate::ar::is_tau_rigid(&t)?;
    if ctx.reduced.certified {
        let mut ambient_answer = true;
        for n in &ctx.members {
            if is_in_gen(n, m) && ext_dim(m, n)? != 0 {
                ambient_answer = false;
                break;
            }
        }
        if ambient_answer != reduced_answer {
            return Err(Error::invariant(format!(
                "context rigidity disagreement: reduced says {reduced_answer}, ambient says {ambient_answer}"
            )));
        }
    }
    let _ = caps;
    Ok(reduced_answer)
}
