//! Finite-dimensional left modules given by explicit matrices for the
//! algebra generators, plus the constructions the rest of the engine
//! needs: hom spaces, subquotients, projectives, injectives, simples,
//! generation traces, and full submodule lattices over finite fields.

use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{ExactMatrix, Subspace};
use std::sync::Arc;

/// A left module: one action matrix per algebra generator. Actions of
/// arbitrary basis elements are recovered through the algebra's
/// generator words, and arbitrary elements by linearity.
#[derive(Clone)]
pub struct Module {
    pub algebra: Arc<BasedAlgebra>,
    pub dim: usize,
    pub gen_actions: Vec<ExactMatrix>,
}

impl std::fmt::Debug for Module {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Module(dim {} over {})", self.dim, self.algebra.name)
    }
}

impl Module {
    pub fn zero(algebra: &Arc<BasedAlgebra>) -> Module {
        let f = algebra.field;
        Module {
            algebra: Arc::clone(algebra),
            dim: 0,
            gen_actions: vec![ExactMatrix::zeros(f, 0, 0); algebra.generators.len()],
        }
    }

    /// The algebra as a left module over itself.
    pub fn regular(algebra: &Arc<BasedAlgebra>) -> Module {
        let gen_actions = algebra
            .generators
            .iter()
            .map(|&g| algebra.left_mult_matrix(&algebra.basis_coords(g)))
            .collect();
        Module {
            algebra: Arc::clone(algebra),
            dim: algebra.dim,
            gen_actions,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Action matrix of the algebra basis element with index `i`,
    /// assembled from the generator word (applied left to right).
    pub fn basis_action(&self, i: usize) -> ExactMatrix {
        let f = self.algebra.field;
        let mut acc = ExactMatrix::identity(f, self.dim);
        for &g in &self.algebra.gen_words[i] {
            acc = self.gen_actions[g].mul(&acc);
        }
        acc
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn action_of(&self, coords: &[Scalar]) -> ExactMatrix {
        let f = self.algebra.field;
        let mut acc = ExactMatrix::zeros(f, self.dim, self.dim);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.basis_action(i).scale(c));
            }
        }
        acc
    }

    /// Checks that the generator matrices define an algebra action:
    /// the induced map on basis elements is multiplicative and sends
    /// the unit to the identity.
    pub fn validate(&self) -> Result<()> {
        let alg = &self.algebra;
        let f = alg.field;
        for (g, m) in self.gen_actions.iter().enumerate() {
            if m.rows != self.dim || m.cols != self.dim {
                return Err(Error::invariant(format!(
                    "generator {g} action has shape {}x{}, module dimension is {}",
                    m.rows, m.cols, self.dim
                )));
            }
        }
        let actions: Vec<ExactMatrix> = (0..alg.dim).map(|i| self.basis_action(i)).collect();
        let unit_action = self.action_of(&alg.unit);
        if unit_action != ExactMatrix::identity(f, self.dim) {
            return Err(Error::invariant(
                "unit does not act as the identity",
            ));
        }
        for i in 0..alg.dim {
            for j in 0..alg.dim {
                let lhs = actions[i].mul(&actions[j]);
                let mut rhs = ExactMatrix::zeros(f, self.dim, self.dim);
                for (k, c) in alg.mult_coords(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        rhs = rhs.add(&actions[k].scale(c));
                    }
                }
                if lhs != rhs {
                    return Err(Error::invariant(format!(
                        "action is not multiplicative on basis pair ({i},{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Dimension of e_v M for each vertex v.
    pub fn dim_vector(&self) -> Vec<usize> {
        (0..self.algebra.n())
            .map(|v| self.idempotent_action(v).rank())
            .collect()
    }

    pub fn idempotent_action(&self, v: usize) -> ExactMatrix {
        self.basis_action(self.algebra.idempotents[v])
    }

    pub fn direct_sum(parts: &[&Module]) -> Module {
        assert!(!parts.is_empty(), "direct sum needs at least one summand");
        let algebra = Arc::clone(&parts[0].algebra);
        let f = algebra.field;
        debug_assert!(parts.iter().all(|m| m.algebra.name == algebra.name));
        let dim: usize = parts.iter().map(|m| m.dim).sum();
        let mut gen_actions = Vec::with_capacity(algebra.generators.len());
        for g in 0..algebra.generators.len() {
            let mut m = ExactMatrix::zeros(f, dim, dim);
            let mut offset = 0;
            for part in parts {
                m.set_block(offset, offset, &part.gen_actions[g]);
                offset += part.dim;
            }
            gen_actions.push(m);
        }
        Module {
            algebra,
            dim,
            gen_actions,
        }
    }

    /// True when the subspace is stable under every generator action.
    pub fn is_invariant(&self, space: &Subspace) -> bool {
        space.basis_vectors().iter().all(|v| {
            self.gen_actions
                .iter()
                .all(|g| space.contains(&g.mul_vec(v)))
        })
    }

    /// Smallest submodule containing the given vector.
    pub fn cyclic_submodule(&self, v: &[Scalar]) -> Subspace {
        let f = self.algebra.field;
        let mut space = Subspace::from_vectors(f, self.dim, &[v.to_vec()]);
        loop {
            let mut grew = false;
            for w in space.basis_vectors() {
                for g in &self.gen_actions {
                    let image = g.mul_vec(&w);
                    if !space.contains(&image) {
                        space = space.sum(&Subspace::from_vectors(f, self.dim, &[image]));
                        grew = true;
                    }
                }
            }
            if !grew {
                return space;
            }
        }
    }

    /// The radical subspace rad(A)·M.
    pub fn radical_subspace(&self) -> Subspace {
        let f = self.algebra.field;
        let mut vectors = Vec::new();
        for &r in &self.algebra.radical {
            let act = self.basis_action(r);
            for c in 0..self.dim {
                vectors.push(act.col_vec(c));
            }
        }
        Subspace::from_vectors(f, self.dim, &vectors)
    }
}

/// Basis of the space of module morphisms x -> y, as matrices with
/// `y.dim` rows and `x.dim` columns acting on column vectors.
pub fn hom_basis(x: &Module, y: &Module) -> Vec<ExactMatrix> {
    let f = x.algebra.field;
    debug_assert_eq!(x.algebra.name, y.algebra.name);
    if x.dim == 0 || y.dim == 0 {
        return Vec::new();
    }
    let unknowns = y.dim * x.dim;
    let n_gens = x.gen_actions.len();
    // Intertwining with every generator forces intertwining with the
    // whole algebra.
    let mut system = ExactMatrix::zeros(f, n_gens * unknowns, unknowns);
    for (g, (xg, yg)) in x.gen_actions.iter().zip(&y.gen_actions).enumerate() {
        for r in 0..y.dim {
            for c in 0..x.dim {
                let eq = g * unknowns + r * x.dim + c;
                // Entry (r, c) of F * Xg - Yg * F.
                for k in 0..x.dim {
                    let cur = system[(eq, r * x.dim + k)].clone();
                    system[(eq, r * x.dim + k)] = f.add(&cur, &xg[(k, c)]);
                }
                for k in 0..y.dim {
                    let cur = system[(eq, k * x.dim + c)].clone();
                    system[(eq, k * x.dim + c)] = f.sub(&cur, &yg[(r, k)]);
                }
            }
        }
    }
    system
        .kernel_basis()
        .into_iter()
        .map(|v| {
            let mut m = ExactMatrix::zeros(f, y.dim, x.dim);
            for r in 0..y.dim {
                for c in 0..x.dim {
                    m[(r, c)] = v[r * x.dim + c].clone();
                }
            }
            m
        })
        .collect()
}

pub fn hom_dim(x: &Module, y: &Module) -> usize {
    hom_basis(x, y).len()
}

/// The submodule carried by an invariant subspace, with its inclusion
/// into the ambient module.
pub fn submodule_from_subspace(m: &Module, space: &Subspace) -> Result<(Module, ExactMatrix)> {
    let f = m.algebra.field;
    if !m.is_invariant(space) {
        return Err(Error::invariant(
            "subspace is not invariant under the module action",
        ));
    }
    let d = space.dim();
    let basis = space.basis_vectors();
    let mut gen_actions = Vec::with_capacity(m.gen_actions.len());
    for g in &m.gen_actions {
        let mut act = ExactMatrix::zeros(f, d, d);
        for (j, w) in basis.iter().enumerate() {
            let coords = space
                .express(&g.mul_vec(w))
                .expect("invariant subspace contains generator images");
            for (r, v) in coords.into_iter().enumerate() {
                act[(r, j)] = v;
            }
        }
        gen_actions.push(act);
    }
    let mut inclusion = ExactMatrix::zeros(f, m.dim, d);
    for (j, w) in basis.iter().enumerate() {
        for (r, v) in w.iter().enumerate() {
            inclusion[(r, j)] = v.clone();
        }
    }
    let sub = Module {
        algebra: Arc::clone(&m.algebra),
        dim: d,
        gen_actions,
    };
    Ok((sub, inclusion))
}

/// The quotient of m by an invariant subspace, with the projection.
/// Quotient coordinates are the non-pivot ambient coordinates of the
/// subspace's echelon basis.
pub fn quotient_by_subspace(m: &Module, space: &Subspace) -> Result<(Module, ExactMatrix)> {
    let f = m.algebra.field;
    if !m.is_invariant(space) {
        return Err(Error::invariant(
            "subspace is not invariant under the module action",
        ));
    }
    let pivots: std::collections::BTreeSet<usize> = space.pivot_columns().into_iter().collect();
    let free: Vec<usize> = (0..m.dim).filter(|c| !pivots.contains(c)).collect();
    let d = free.len();
    let restrict = |v: &[Scalar]| -> Vec<Scalar> {
        let reduced = space.reduce(v);
        free.iter().map(|&c| reduced[c].clone()).collect()
    };
    let mut projection = ExactMatrix::zeros(f, d, m.dim);
    for c in 0..m.dim {
        let mut e = vec![f.zero(); m.dim];
        e[c] = f.one();
        for (r, v) in restrict(&e).into_iter().enumerate() {
            projection[(r, c)] = v;
        }
    }
    let mut gen_actions = Vec::with_capacity(m.gen_actions.len());
    for g in &m.gen_actions {
        let mut act = ExactMatrix::zeros(f, d, d);
        for (j, &c) in free.iter().enumerate() {
            let mut lift = vec![f.zero(); m.dim];
            lift[c] = f.one();
            for (r, v) in restrict(&g.mul_vec(&lift)).into_iter().enumerate() {
                act[(r, j)] = v;
            }
        }
        gen_actions.push(act);
    }
    let quot = Module {
        algebra: Arc::clone(&m.algebra),
        dim: d,
        gen_actions,
    };
    Ok((quot, projection))
}

/// Kernel of a morphism source -> target, with inclusion into source.
pub fn kernel_module(
    source: &Module,
    _target: &Module,
    map: &ExactMatrix,
) -> Result<(Module, ExactMatrix)> {
    let f = source.algebra.field;
    let ker = Subspace::from_vectors(f, source.dim, &map.kernel_basis());
    submodule_from_subspace(source, &ker)
}

/// Image of a morphism source -> target, with inclusion into target.
pub fn image_module(
    _source: &Module,
    target: &Module,
    map: &ExactMatrix,
) -> Result<(Module, ExactMatrix)> {
    let f = target.algebra.field;
    let cols: Vec<Vec<Scalar>> = (0..map.cols).map(|c| map.col_vec(c)).collect();
    let image = Subspace::from_vectors(f, target.dim, &cols);
    submodule_from_subspace(target, &image)
}

/// Cokernel of a morphism source -> target, with the projection.
pub fn cokernel_module(
    _source: &Module,
    target: &Module,
    map: &ExactMatrix,
) -> Result<(Module, ExactMatrix)> {
    let f = target.algebra.field;
    let cols: Vec<Vec<Scalar>> = (0..map.cols).map(|c| map.col_vec(c)).collect();
    let image = Subspace::from_vectors(f, target.dim, &cols);
    quotient_by_subspace(target, &image)
}

/// Top of the module (quotient by its radical), with the projection.
pub fn top_module(m: &Module) -> Result<(Module, ExactMatrix)> {
    quotient_by_subspace(m, &m.radical_subspace())
}

/// The indecomposable projective at a vertex: the direct summand
/// A e_v of the regular module. Also returns its coordinate subspace
/// inside the algebra, whose echelon basis vectors are the algebra
/// elements the projective's coordinates refer to.
pub fn projective_with_space(algebra: &Arc<BasedAlgebra>, v: usize) -> (Module, Subspace) {
    let f = algebra.field;
    let regular = Module::regular(algebra);
    let e = algebra.basis_coords(algebra.idempotents[v]);
    let right = algebra.right_mult_matrix(&e);
    let cols: Vec<Vec<Scalar>> = (0..right.cols).map(|c| right.col_vec(c)).collect();
    let space = Subspace::from_vectors(f, algebra.dim, &cols);
    let (p, _) = submodule_from_subspace(&regular, &space)
        .expect("A e_v is a left ideal, hence invariant");
    (p, space)
}

pub fn projective(algebra: &Arc<BasedAlgebra>, v: usize) -> Module {
    projective_with_space(algebra, v).0
}

/// The indecomposable injective at a vertex: the dual of e_v A, with
/// each algebra element acting as the transpose of its right
/// multiplication on e_v A. Also returns the subspace e_v A whose
/// echelon basis indexes the injective's coordinates (as dual basis).
pub fn injective_with_space(algebra: &Arc<BasedAlgebra>, v: usize) -> (Module, Subspace) {
    let f = algebra.field;
    let e = algebra.basis_coords(algebra.idempotents[v]);
    let left = algebra.left_mult_matrix(&e);
    let cols: Vec<Vec<Scalar>> = (0..left.cols).map(|c| left.col_vec(c)).collect();
    let space = Subspace::from_vectors(f, algebra.dim, &cols);
    let d = space.dim();
    let basis = space.basis_vectors();
    let mut gen_actions = Vec::with_capacity(algebra.generators.len());
    for &g in &algebra.generators {
        let gc = algebra.basis_coords(g);
        let mut right_mult = ExactMatrix::zeros(f, d, d);
        for (j, w) in basis.iter().enumerate() {
            let coords = space
                .express(&algebra.multiply(w, &gc))
                .expect("e_v A is a right ideal");
            for (r, val) in coords.into_iter().enumerate() {
                right_mult[(r, j)] = val;
            }
        }
        gen_actions.push(right_mult.transpose());
    }
    (
        Module {
            algebra: Arc::clone(algebra),
            dim: d,
            gen_actions,
        },
        space,
    )
}

pub fn injective(algebra: &Arc<BasedAlgebra>, v: usize) -> Module {
    injective_with_space(algebra, v).0
}

/// The simple module at a vertex (top of the projective).
pub fn simple(algebra: &Arc<BasedAlgebra>, v: usize) -> Module {
    let p = projective(algebra, v);
    let (s, _) = top_module(&p).expect("radical subspace is invariant");
    assert_eq!(s.dim, 1, "tops of projectives are one-dimensional here");
    s
}

/// Sum of the images of all morphisms m -> n.
pub fn trace_subspace(m: &Module, n: &Module) -> Subspace {
    let f = n.algebra.field;
    let mut vectors = Vec::new();
    for h in hom_basis(m, n) {
        for c in 0..h.cols {
            vectors.push(h.col_vec(c));
        }
    }
    Subspace::from_vectors(f, n.dim, &vectors)
}

/// True when n is generated by m, i.e. n is a quotient of a finite
/// direct sum of copies of m. Equivalent to the trace of m filling n.
pub fn is_in_gen(n: &Module, m: &Module) -> bool {
    trace_subspace(m, n).dim() == n.dim
}

/// Every submodule of m, as subspaces of its coordinate space: all
/// cyclic submodules, then closure under sums. Finite fields only.
pub fn all_submodules(m: &Module, max_spaces: usize) -> Result<Vec<Subspace>> {
    let f = m.algebra.field;
    let elements = f.elements()?;
    let q = elements.len() as u128;
    let count = q
        .checked_pow(m.dim as u32)
        .ok_or_else(|| Error::Unsupported("vector enumeration overflow".to_string()))?;
    if count > max_spaces as u128 {
        return Err(Error::CapExceeded {
            what: format!("enumerating vectors of a {}-dimensional module", m.dim),
            required: count,
            cap: max_spaces as u128,
        });
    }

    let mut found: Vec<Subspace> = vec![Subspace::zero(f, m.dim)];
    let mut digits = vec![0usize; m.dim];
    loop {
        // Advance the odometer first so the zero vector is skipped.
        let mut pos = 0;
        loop {
            if pos == m.dim {
                // All vectors seen; close under sums and return.
                let mut closed = found;
                loop {
                    let mut added = false;
                    let snapshot = closed.clone();
                    for a in &snapshot {
                        for b in &snapshot {
                            let s = a.sum(b);
                            if !closed.contains(&s) {
                                if closed.len() >= max_spaces {
                                    return Err(Error::CapExceeded {
                                        what: "collecting submodules".into(),
                                        required: max_spaces as u128 + 1,
                                        cap: max_spaces as u128,
                                    });
                                }
                                closed.push(s);
                                added = true;
                            }
                        }
                    }
                    if !added {
                        closed.sort_by_key(|s| (s.dim(), s.basis_rows().entry_strings()));
                        return Ok(closed);
                    }
                }
            }
            digits[pos] += 1;
            if digits[pos] < elements.len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
        let v: Vec<Scalar> = digits.iter().map(|&d| elements[d].clone()).collect();
        let cyc = m.cyclic_submodule(&v);
        if !found.contains(&cyc) {
            if found.len() >= max_spaces {
                return Err(Error::CapExceeded {
                    what: "collecting cyclic submodules".into(),
                    required: max_spaces as u128 + 1,
                    cap: max_spaces as u128,
                });
            }
            found.push(cyc);
        }
    }
}

/// A module over a quiver algebra in vertex-graded coordinates: one
/// dimension per vertex and one matrix per arrow.
#[derive(Clone, Debug)]
pub struct GradedModule {
    pub vertex_dims: Vec<usize>,
    pub arrow_matrices: Vec<ExactMatrix>,
}

/// Assembles a module from vertex-graded data. The coordinate space is
/// the concatenation of the vertex spaces in vertex order.
pub fn from_vertex_data(
    algebra: &Arc<BasedAlgebra>,
    vertex_dims: &[usize],
    arrow_matrices: &[ExactMatrix],
) -> Result<Module> {
    let f = algebra.field;
    let quiver = algebra
        .quiver
        .as_ref()
        .ok_or_else(|| Error::invalid("vertex-graded modules need a quiver presentation"))?;
    if vertex_dims.len() != quiver.vertex_names.len() || arrow_matrices.len() != quiver.arrows.len()
    {
        return Err(Error::invalid(
            "vertex-graded data has the wrong number of vertices or arrows",
        ));
    }
    let mut offsets = vec![0usize; vertex_dims.len() + 1];
    for (i, &d) in vertex_dims.iter().enumerate() {
        offsets[i + 1] = offsets[i] + d;
    }
    let dim = offsets[vertex_dims.len()];
    let mut gen_actions = Vec::with_capacity(algebra.generators.len());
    for v in 0..vertex_dims.len() {
        let mut proj = ExactMatrix::zeros(f, dim, dim);
        for k in offsets[v]..offsets[v + 1] {
            proj[(k, k)] = f.one();
        }
        gen_actions.push(proj);
    }
    for (ai, mat) in arrow_matrices.iter().enumerate() {
        let a = &quiver.arrows[ai];
        if mat.rows != vertex_dims[a.to] || mat.cols != vertex_dims[a.from] {
            return Err(Error::invalid(format!(
                "arrow {} action must map the source vertex space to the target vertex space",
                a.name
            )));
        }
        let mut act = ExactMatrix::zeros(f, dim, dim);
        act.set_block(offsets[a.to], offsets[a.from], mat);
        gen_actions.push(act);
    }
    let m = Module {
        algebra: Arc::clone(algebra),
        dim,
        gen_actions,
    };
    Ok(m)
}

/// Rewrites a module over a quiver algebra in vertex-graded
/// coordinates by choosing a basis adapted to the idempotent
/// decomposition.
pub fn to_vertex_graded(m: &Module) -> Result<GradedModule> {
    let f = m.algebra.field;
    let quiver = m
        .algebra
        .quiver
        .as_ref()
        .ok_or_else(|| Error::invalid("vertex-graded form needs a quiver presentation"))?;
    let n = quiver.vertex_names.len();
    let mut columns: Vec<Vec<Scalar>> = Vec::with_capacity(m.dim);
    let mut vertex_dims = Vec::with_capacity(n);
    let mut offsets = vec![0usize];
    for v in 0..n {
        let proj = m.idempotent_action(v);
        let cols: Vec<Vec<Scalar>> = (0..proj.cols).map(|c| proj.col_vec(c)).collect();
        let space = Subspace::from_vectors(f, m.dim, &cols);
        vertex_dims.push(space.dim());
        columns.extend(space.basis_vectors());
        offsets.push(offsets.last().unwrap() + space.dim());
    }
    if offsets[n] != m.dim {
        return Err(Error::invariant(
            "idempotent images do not decompose the module",
        ));
    }
    let mut t = ExactMatrix::zeros(f, m.dim, m.dim);
    for (j, col) in columns.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            t[(r, j)] = v.clone();
        }
    }
    let t_inv = t
        .inverse()
        .ok_or_else(|| Error::invariant("graded basis change is singular"))?;
    let mut arrow_matrices = Vec::with_capacity(quiver.arrows.len());
    for (ai, a) in quiver.arrows.iter().enumerate() {
        let conj = t_inv.mul(&m.gen_actions[n + ai]).mul(&t);
        let block = conj.block(
            offsets[a.to],
            offsets[a.from],
            vertex_dims[a.to],
            vertex_dims[a.from],
        );
        arrow_matrices.push(block);
    }
    Ok(GradedModule {
        vertex_dims,
        arrow_matrices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_fixtures::*;
    use crate::field::FieldSpec;

    fn arc(json: &str) -> Arc<BasedAlgebra> {
        Arc::new(build(json))
    }

    #[test]
    fn a2_projectives_and_injectives() {
        let alg = arc(A2);
        let p1 = projective(&alg, 0);
        let p2 = projective(&alg, 1);
        assert_eq!(p1.dim, 2);
        assert_eq!(p1.dim_vector(), vec![1, 1]);
        assert_eq!(p2.dim_vector(), vec![0, 1]);
        let i1 = injective(&alg, 0);
        let i2 = injective(&alg, 1);
        assert_eq!(i1.dim_vector(), vec![1, 0]);
        assert_eq!(i2.dim_vector(), vec![1, 1]);
        for m in [&p1, &p2, &i1, &i2] {
            m.validate().unwrap();
        }
    }

    #[test]
    fn a2_simples_and_regular() {
        let alg = arc(A2);
        let s1 = simple(&alg, 0);
        let s2 = simple(&alg, 1);
        assert_eq!(s1.dim_vector(), vec![1, 0]);
        assert_eq!(s2.dim_vector(), vec![0, 1]);
        let reg = Module::regular(&alg);
        reg.validate().unwrap();
        assert_eq!(reg.dim_vector(), vec![1, 2]);
    }

    #[test]
    fn a2_hom_dimensions_match_path_spaces() {
        let alg = arc(A2);
        let p1 = projective(&alg, 0);
        let p2 = projective(&alg, 1);
        assert_eq!(hom_dim(&p1, &p1), 1);
        assert_eq!(hom_dim(&p2, &p1), 1);
        assert_eq!(hom_dim(&p1, &p2), 0);
        let i2 = injective(&alg, 1);
        assert_eq!(hom_dim(&p1, &i2), 1);
        // End of the regular module has the algebra's dimension.
        let reg = Module::regular(&alg);
        assert_eq!(hom_dim(&reg, &reg), 3);
    }

    #[test]
    fn kronecker_parallel_arrows_double_the_hom_space() {
        let alg = arc(KRON);
        let p1 = projective(&alg, 0);
        let p2 = projective(&alg, 1);
        assert_eq!(p1.dim_vector(), vec![1, 2]);
        assert_eq!(hom_dim(&p2, &p1), 2);
    }

    #[test]
    fn nak3_projectives_coincide_with_shifted_injectives() {
        let alg = arc(NAK3);
        for v in 0..3 {
            assert_eq!(projective(&alg, v).dim, 2);
        }
        assert_eq!(injective(&alg, 0).dim_vector(), vec![1, 0, 1]);
        assert_eq!(projective(&alg, 2).dim_vector(), vec![1, 0, 1]);
    }

    #[test]
    fn submodule_lattices_of_small_modules() {
        let alg = arc(A2);
        let p1 = projective(&alg, 0);
        let subs = all_submodules(&p1, 10_000).unwrap();
        assert_eq!(subs.len(), 3);

        let loop_alg = arc(LOOP2);
        let reg = Module::regular(&loop_alg);
        let subs = all_submodules(&reg, 10_000).unwrap();
        assert_eq!(subs.len(), 3);
    }

    #[test]
    fn quotient_and_kernel_fit_together() {
        let alg = arc(A2);
        let p1 = projective(&alg, 0);
        let (top, proj) = top_module(&p1).unwrap();
        assert_eq!(top.dim_vector(), vec![1, 0]);
        let (ker, inc) = kernel_module(&p1, &top, &proj).unwrap();
        assert_eq!(ker.dim_vector(), vec![0, 1]);
        ker.validate().unwrap();
        // Inclusion followed by projection is zero.
        assert!(proj.mul(&inc).is_zero());
    }

    #[test]
    fn generation_trace_criterion() {
        let alg = arc(A2);
        let p1 = projective(&alg, 0);
        let s1 = simple(&alg, 0);
        let s2 = simple(&alg, 1);
        assert!(is_in_gen(&s1, &p1));
        assert!(!is_in_gen(&s2, &p1));
        assert!(is_in_gen(&p1, &p1));
        let both = Module::direct_sum(&[&p1, &projective(&alg, 1)]);
        assert!(is_in_gen(&s2, &both));
    }

    #[test]
    fn cyclic_closures_inside_a_projective() {
        let alg = arc(A2);
        let p1 = projective(&alg, 0);
        let f = alg.field;
        // Coordinate order in P(1) follows the ambient basis (e_1, a).
        let whole = p1.cyclic_submodule(&[f.one(), f.zero()]);
        assert_eq!(whole.dim(), 2);
        let rad = p1.cyclic_submodule(&[f.zero(), f.one()]);
        assert_eq!(rad.dim(), 1);
    }

    #[test]
    fn graded_round_trip_preserves_structure() {
        let alg = arc(A2);
        let f = alg.field;
        let arrow = ExactMatrix::from_int_rows(f, &[vec![1]]);
        let built = from_vertex_data(&alg, &[1, 1], &[arrow]).unwrap();
        built.validate().unwrap();
        assert_eq!(built.dim_vector(), vec![1, 1]);
        let graded = to_vertex_graded(&built).unwrap();
        assert_eq!(graded.vertex_dims, vec![1, 1]);
        assert_eq!(graded.arrow_matrices[0].rows, 1);
        assert!(!graded.arrow_matrices[0].is_zero());

        // A non-graded module (the injective) round-trips too.
        let i2 = injective(&alg, 1);
        let g = to_vertex_graded(&i2).unwrap();
        let rebuilt = from_vertex_data(&alg, &g.vertex_dims, &g.arrow_matrices).unwrap();
        rebuilt.validate().unwrap();
        assert_eq!(rebuilt.dim_vector(), i2.dim_vector());
    }

    #[test]
    fn validate_rejects_non_actions() {
        let alg = arc(A2);
        let f = alg.field;
        let mut p1 = projective(&alg, 0);
        p1.gen_actions[2] = ExactMatrix::identity(f, 2);
        assert!(p1.validate().is_err());
    }

    #[test]
    fn zero_module_behaves() {
        let alg = arc(A2);
        let z = Module::zero(&alg);
        z.validate().unwrap();
        assert_eq!(z.dim_vector(), vec![0, 0]);
        assert_eq!(hom_dim(&z, &projective(&alg, 0)), 0);
    }

    #[test]
    fn submodule_enumeration_respects_rational_limits() {
        let alg = arc(LOOP2_RATIONAL);
        assert_eq!(alg.field, FieldSpec::Rational);
        let reg = Module::regular(&alg);
        assert!(all_submodules(&reg, 1000).is_err());
    }
}
