//! Minimal projective presentations, the Nakayama functor, the
//! Auslander-Reiten translate, g-vectors, and first extension spaces.
//!
//! The translate of M is computed from a minimal presentation
//! f: P1 -> P0 as the kernel of the induced map between the
//! corresponding injectives. A morphism P(i) -> P(j) is right
//! multiplication by an element z of e_i A e_j; the Nakayama functor
//! sends it to the transpose of left multiplication by z between the
//! right ideals e_j A -> e_i A, read in the dual bases of the
//! injectives.

use crate::algebra::BasedAlgebra;
use crate::config::Caps;
use crate::decomp::is_brick;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{ExactMatrix, Subspace};
use crate::module::{
    hom_basis, hom_dim, injective_with_space, kernel_module, projective_with_space,
    quotient_by_subspace, Module,
};
use std::sync::Arc;

/// A direct sum of vertex projectives or injectives together with the
/// coordinate subspaces of its summands and the offsets of each
/// summand inside the sum.
struct Bundle {
    module: Module,
    spaces: Vec<Subspace>,
    offsets: Vec<usize>,
}

fn projective_bundle(algebra: &Arc<BasedAlgebra>, vertices: &[usize]) -> Bundle {
    bundle_of(algebra, vertices, projective_with_space)
}

fn injective_bundle(algebra: &Arc<BasedAlgebra>, vertices: &[usize]) -> Bundle {
    bundle_of(algebra, vertices, injective_with_space)
}

fn bundle_of(
    algebra: &Arc<BasedAlgebra>,
    vertices: &[usize],
    make: fn(&Arc<BasedAlgebra>, usize) -> (Module, Subspace),
) -> Bundle {
    let mut parts = Vec::new();
    let mut spaces = Vec::new();
    let mut offsets = vec![0usize];
    for &v in vertices {
        let (m, s) = make(algebra, v);
        offsets.push(offsets.last().unwrap() + m.dim);
        parts.push(m);
        spaces.push(s);
    }
    let module = if parts.is_empty() {
        Module::zero(algebra)
    } else {
        Module::direct_sum(&parts.iter().collect::<Vec<_>>())
    };
    Bundle {
        module,
        spaces,
        offsets,
    }
}

/// A minimal projective presentation p1 -> p0 -> m -> 0.
pub struct Presentation {
    pub p0_vertices: Vec<usize>,
    pub p1_vertices: Vec<usize>,
    pub p0: Module,
    pub p1: Module,
    /// Map p1 -> p0 (rows indexed by p0, columns by p1).
    pub map: ExactMatrix,
    /// Covering map p0 -> m.
    pub cover: ExactMatrix,
}

/// Minimal projective cover: the top determines one projective summand
/// per simple composition factor, mapped onto lifted generators.
fn minimal_cover(m: &Module) -> Result<(Vec<usize>, Bundle, ExactMatrix)> {
    let algebra = &m.algebra;
    let field = algebra.field;
    let rad = m.radical_subspace();
    let (top, proj) = quotient_by_subspace(m, &rad)?;
    let mut vertices = Vec::new();
    let mut generators: Vec<Vec<Scalar>> = Vec::new();
    for v in 0..algebra.n() {
        let idem = top.idempotent_action(v);
        let cols: Vec<Vec<Scalar>> = (0..idem.cols).map(|c| idem.col_vec(c)).collect();
        let vertex_top = Subspace::from_vectors(field, top.dim, &cols);
        for t in vertex_top.basis_vectors() {
            let lift = proj
                .solve(&t)
                .ok_or_else(|| Error::invariant("radical projection is not surjective"))?;
            // Homogenize so the generator sits in e_v M.
            let hom_lift = m.idempotent_action(v).mul_vec(&lift);
            vertices.push(v);
            generators.push(hom_lift);
        }
    }
    let bundle = projective_bundle(algebra, &vertices);
    let mut cover = ExactMatrix::zeros(field, m.dim, bundle.module.dim);
    for (k, gen) in generators.iter().enumerate() {
        for (j, w) in bundle.spaces[k].basis_vectors().iter().enumerate() {
            let col = m.action_of(w).mul_vec(gen);
            for (r, val) in col.into_iter().enumerate() {
                cover[(r, bundle.offsets[k] + j)] = val;
            }
        }
    }
    if cover.rank() != m.dim {
        return Err(Error::invariant("projective cover is not surjective"));
    }
    let kernel = Subspace::from_vectors(field, bundle.module.dim, &cover.kernel_basis());
    if !bundle.module.radical_subspace().contains_subspace(&kernel) {
        return Err(Error::invariant(
            "projective cover is not minimal: its kernel leaves the radical",
        ));
    }
    Ok((vertices, bundle, cover))
}

pub fn minimal_presentation(m: &Module) -> Result<Presentation> {
    let (p0_vertices, p0_bundle, cover) = minimal_cover(m)?;
    let (kernel, kernel_inc) = kernel_module(&p0_bundle.module, m, &cover)?;
    let (p1_vertices, p1_bundle, kernel_cover) = minimal_cover(&kernel)?;
    let map = kernel_inc.mul(&kernel_cover);
    Ok(Presentation {
        p0_vertices,
        p1_vertices,
        p0: p0_bundle.module,
        p1: p1_bundle.module,
        map,
        cover,
    })
}

/// Multiplicity vector of projective covers minus first syzygy covers.
pub fn g_vector(m: &Module) -> Result<Vec<i64>> {
    let pres = minimal_presentation(m)?;
    let n = m.algebra.n();
    let mut g = vec![0i64; n];
    for &v in &pres.p0_vertices {
        g[v] += 1;
    }
    for &v in &pres.p1_vertices {
        g[v] -= 1;
    }
    Ok(g)
}

pub fn is_projective_module(m: &Module) -> Result<bool> {
    Ok(minimal_presentation(m)?.p1_vertices.is_empty())
}

/// Extracts the algebra element z in e_i A e_j that realizes the block
/// P(u_l) -> P(v_k) of a map between projective bundles, then returns
/// the matrix of left multiplication by z from W_{v_k} to W_{u_l}.
fn apply_nakayama(
    algebra: &Arc<BasedAlgebra>,
    p1: &Bundle,
    p1_vertices: &[usize],
    p0: &Bundle,
    p0_vertices: &[usize],
    i0: &Bundle,
    i1: &Bundle,
    map: &ExactMatrix,
) -> ExactMatrix {
    let field = algebra.field;
    let mut out = ExactMatrix::zeros(field, i0.module.dim, i1.module.dim);
    for (l, &u) in p1_vertices.iter().enumerate() {
        let pu_space = &p1.spaces[l];
        let e_u = algebra.basis_coords(algebra.idempotents[u]);
        let e_u_coords = pu_space
            .express(&e_u)
            .expect("the idempotent generates its projective");
        for (k, _v) in p0_vertices.iter().enumerate() {
            let pv_space = &p0.spaces[k];
            // Image of e_u under the (k, l) block, as an algebra element.
            let block = map.block(
                p0.offsets[k],
                p1.offsets[l],
                p0.offsets[k + 1] - p0.offsets[k],
                p1.offsets[l + 1] - p1.offsets[l],
            );
            let z_coords = block.mul_vec(&e_u_coords);
            let mut z = vec![field.zero(); algebra.dim];
            for (t, w) in pv_space.basis_vectors().iter().enumerate() {
                if z_coords[t].is_zero() {
                    continue;
                }
                for (c, wc) in w.iter().enumerate() {
                    z[c] = field.add(&z[c], &field.mul(&z_coords[t], wc));
                }
            }
            // Left multiplication by z: W_v -> W_u, then transpose.
            let wv = &i0.spaces[k];
            let wu = &i1.spaces[l];
            let mut lz = ExactMatrix::zeros(field, wu.dim(), wv.dim());
            for (c, w) in wv.basis_vectors().iter().enumerate() {
                let prod = algebra.multiply(&z, w);
                let coords = wu
                    .express(&prod)
                    .expect("z e_v A lands in e_u A");
                for (r, val) in coords.into_iter().enumerate() {
                    lz[(r, c)] = val;
                }
            }
            let block_t = lz.transpose();
            for r in 0..block_t.rows {
                for c in 0..block_t.cols {
                    out[(i0.offsets[k] + r, i1.offsets[l] + c)] = block_t[(r, c)].clone();
                }
            }
        }
    }
    out
}

/// The Auslander-Reiten translate: kernel of the Nakayama image of a
/// minimal presentation. Projectives yield zero.
pub fn tau(m: &Module) -> Result<Module> {
    let algebra = &m.algebra;
    if m.dim == 0 {
        return Ok(Module::zero(algebra));
    }
    let (p0_vertices, p0_bundle, cover) = minimal_cover(m)?;
    let (kernel, kernel_inc) = kernel_module(&p0_bundle.module, m, &cover)?;
    let (p1_vertices, p1_bundle, kernel_cover) = minimal_cover(&kernel)?;
    let map = kernel_inc.mul(&kernel_cover);
    if p1_vertices.is_empty() {
        return Ok(Module::zero(algebra));
    }
    let i0 = injective_bundle(algebra, &p0_vertices);
    let i1 = injective_bundle(algebra, &p1_vertices);
    let nu_map = apply_nakayama(
        algebra,
        &p1_bundle,
        &p1_vertices,
        &p0_bundle,
        &p0_vertices,
        &i0,
        &i1,
        &map,
    );
    // nu_map runs I(p1) -> I(p0); the translate is its kernel.
    let (t, _) = kernel_module(&i1.module, &i0.module, &nu_map)?;
    Ok(t)
}

pub fn is_tau_rigid(m: &Module) -> Result<bool> {
    let t = tau(m)?;
    Ok(hom_dim(m, &t) == 0)
}

/// dim Ext^1(M, N), from the exact sequence induced by the syzygy:
/// Ext^1(M, N) is the cokernel of Hom(P0, N) -> Hom(K, N) where K is
/// the kernel of a projective cover P0 -> M.
pub fn ext_dim(m: &Module, n: &Module) -> Result<usize> {
    if m.dim == 0 || n.dim == 0 {
        return Ok(0);
    }
    let (_, p0_bundle, cover) = minimal_cover(m)?;
    let (kernel, kernel_inc) = kernel_module(&p0_bundle.module, m, &cover)?;
    if kernel.dim == 0 {
        return Ok(0);
    }
    let hom_k = hom_basis(&kernel, n);
    let hom_p = hom_basis(&p0_bundle.module, n);
    // Rank of the restriction Hom(P0, N) -> Hom(K, N), h -> h o inc.
    let field = n.algebra.field;
    let restricted: Vec<Vec<Scalar>> = hom_p
        .iter()
        .map(|h| {
            let r = h.mul(&kernel_inc);
            let mut v = Vec::with_capacity(r.rows * r.cols);
            for row in 0..r.rows {
                v.extend_from_slice(r.row(row));
            }
            v
        })
        .collect();
    let restriction_rank =
        Subspace::from_vectors(field, n.dim * kernel.dim, &restricted).dim();
    Ok(hom_k.len() - restriction_rank)
}

/// A classical exceptional module: a brick without self-extensions.
pub fn is_classical_exceptional(m: &Module, caps: &Caps) -> Result<bool> {
    Ok(m.dim > 0 && is_brick(m, caps)? && ext_dim(m, m)? == 0)
}

/// The first syzygy: kernel of the minimal projective cover.
pub fn syzygy(m: &Module) -> Result<Module> {
    if m.dim == 0 {
        return Ok(Module::zero(&m.algebra));
    }
    let (_, p0_bundle, cover) = minimal_cover(m)?;
    let (kernel, _) = kernel_module(&p0_bundle.module, m, &cover)?;
    Ok(kernel)
}

/// Extension dimension in degree k, computed from the minimal
/// resolution as degree-one extensions of the (k-1)-st syzygy.
pub fn ext_dim_k(m: &Module, n: &Module, k: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::invalid("extension degree must be at least one"));
    }
    let mut omega = m.clone();
    for _ in 1..k {
        omega = syzygy(&omega)?;
        if omega.dim == 0 {
            return Ok(0);
        }
    }
    ext_dim(&omega, n)
}

/// Classical exceptionality of a whole sequence, with extension
/// vanishing tested only up to the supplied degree bound; in positive
/// global dimension beyond the bound this is a truncated test.
pub fn is_classical_exceptional_sequence(
    seq: &[&Module],
    max_degree: usize,
    caps: &Caps,
) -> Result<bool> {
    if max_degree == 0 {
        return Err(Error::invalid("extension degree bound must be positive"));
    }
    for x in seq {
        if x.dim == 0 || !is_brick(x, caps)? {
            return Ok(false);
        }
    }
    for j in 0..seq.len() {
        for i in 0..=j {
            if i < j && hom_dim(seq[j], seq[i]) != 0 {
                return Ok(false);
            }
            for m in 1..=max_degree {
                if ext_dim_k(seq[j], seq[i], m)? != 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_fixtures::*;
    use crate::decomp::are_isomorphic;
    use crate::module::{from_vertex_data, projective, simple};

    fn arc(json: &str) -> Arc<BasedAlgebra> {
        Arc::new(build(json))
    }

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn translates_on_the_linear_quiver() {
        let alg = arc(A2);
        let s1 = simple(&alg, 0);
        let s2 = simple(&alg, 1);
        let t = tau(&s1).unwrap();
        assert!(are_isomorphic(&t, &s2, &caps()).unwrap());
        // Projectives translate to zero.
        assert_eq!(tau(&projective(&alg, 0)).unwrap().dim, 0);
        assert_eq!(tau(&s2).unwrap().dim, 0);
    }

    #[test]
    fn g_vectors_on_the_linear_quiver() {
        let alg = arc(A2);
        assert_eq!(g_vector(&simple(&alg, 0)).unwrap(), vec![1, -1]);
        assert_eq!(g_vector(&projective(&alg, 0)).unwrap(), vec![1, 0]);
        assert_eq!(g_vector(&simple(&alg, 1)).unwrap(), vec![0, 1]);
    }

    #[test]
    fn projectivity_detection_via_presentations() {
        let alg = arc(A2);
        assert!(is_projective_module(&projective(&alg, 0)).unwrap());
        assert!(!is_projective_module(&simple(&alg, 0)).unwrap());
        let loop_alg = arc(LOOP2);
        assert!(is_projective_module(&Module::regular(&loop_alg)).unwrap());
        assert!(!is_projective_module(&simple(&loop_alg, 0)).unwrap());
    }

    #[test]
    fn loop_simple_translates_to_itself() {
        let alg = arc(LOOP2);
        let s = simple(&alg, 0);
        let t = tau(&s).unwrap();
        assert!(are_isomorphic(&t, &s, &caps()).unwrap());
        assert!(!is_tau_rigid(&s).unwrap());
        assert!(is_tau_rigid(&Module::regular(&alg)).unwrap());
    }

    #[test]
    fn nakayama_cycle_translates_simples_forward() {
        let alg = arc(NAK3);
        let s1 = simple(&alg, 0);
        let s2 = simple(&alg, 1);
        let t = tau(&s1).unwrap();
        assert!(are_isomorphic(&t, &s2, &caps()).unwrap());
        assert!(is_tau_rigid(&s1).unwrap());
    }

    #[test]
    fn kronecker_rigidity_split() {
        let alg = arc(KRON);
        assert!(is_tau_rigid(&projective(&alg, 0)).unwrap());
        assert!(is_tau_rigid(&simple(&alg, 0)).unwrap());
        let f = alg.field;
        let one = ExactMatrix::from_int_rows(f, &[vec![1]]);
        let reg = from_vertex_data(&alg, &[1, 1], &[one.clone(), one]).unwrap();
        let t = tau(&reg).unwrap();
        assert!(are_isomorphic(&t, &reg, &caps()).unwrap());
        assert!(!is_tau_rigid(&reg).unwrap());
    }

    #[test]
    fn extension_dimensions() {
        let alg = arc(A2);
        let s1 = simple(&alg, 0);
        let s2 = simple(&alg, 1);
        assert_eq!(ext_dim(&s1, &s2).unwrap(), 1);
        assert_eq!(ext_dim(&s2, &s1).unwrap(), 0);
        assert_eq!(ext_dim(&s1, &s1).unwrap(), 0);

        let kron = arc(KRON);
        assert_eq!(ext_dim(&simple(&kron, 0), &simple(&kron, 1)).unwrap(), 2);

        let loop_alg = arc(LOOP2);
        let s = simple(&loop_alg, 0);
        assert_eq!(ext_dim(&s, &s).unwrap(), 1);
    }

    #[test]
    fn classical_exceptionals_on_small_algebras() {
        let c = caps();
        let alg = arc(A2);
        for v in 0..2 {
            assert!(is_classical_exceptional(&simple(&alg, v), &c).unwrap());
            assert!(is_classical_exceptional(&projective(&alg, v), &c).unwrap());
        }
        let loop_alg = arc(LOOP2);
        assert!(!is_classical_exceptional(&simple(&loop_alg, 0), &c).unwrap());
        assert!(!is_classical_exceptional(&Module::regular(&loop_alg), &c).unwrap());
    }

    #[test]
    fn translate_of_zero_is_zero() {
        let alg = arc(A2);
        let z = Module::zero(&alg);
        assert_eq!(tau(&z).unwrap().dim, 0);
        assert_eq!(g_vector(&z).unwrap(), vec![0, 0]);
    }
}
