//! Direct sum decomposition, isomorphism testing, endomorphism
//! radicals, bricks, and bounded enumeration of indecomposables.
//!
//! Splitting uses Fitting's lemma: for an endomorphism f of M, the
//! stable power g = f^(2^k) with 2^k >= dim M satisfies
//! M = im g (+) ker g. A module is certified indecomposable either
//! because its endomorphism space is one line, because an exhaustive
//! walk over the endomorphism algebra found no proper Fitting split
//! (any nontrivial idempotent would be its own stable power), or, over
//! the rationals, because the trace-form radical of the endomorphism
//! algebra has codimension one.

use crate::algebra::BasedAlgebra;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{ExactMatrix, Subspace};
use crate::module::{from_vertex_data, hom_basis, submodule_from_subspace, Module};
use num::{BigInt, BigRational, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;


fn vectorize(m: &ExactMatrix) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(m.rows * m.cols);
    for r in 0..m.rows {
        v.extend_from_slice(m.row(r));
    }
    v
}

/// f^(2^k) with 2^k >= the matrix dimension; by Fitting's lemma its
/// image and kernel are complementary invariant subspaces.
fn stable_power(f_mat: &ExactMatrix) -> ExactMatrix {
    let dim = f_mat.rows;
    let mut g = f_mat.clone();
    let mut pow = 1usize;
    while pow < dim.max(1) {
        g = g.mul(&g);
        pow *= 2;
    }
    g
}

/// Monic minimal polynomial of a square matrix, coefficients from the
/// constant term up.
pub fn minimal_polynomial(f: &ExactMatrix) -> Vec<Scalar> {
    let field = f.field;
    let n2 = f.rows * f.cols;
    let mut powers: Vec<ExactMatrix> = vec![ExactMatrix::identity(field, f.rows)];
    loop {
        let k = powers.len();
        let next = powers.last().unwrap().mul(f);
        let mut system = ExactMatrix::zeros(field, n2, k);
        for (c, p) in powers.iter().enumerate() {
            for (r, v) in vectorize(p).into_iter().enumerate() {
                system[(r, c)] = v;
            }
        }
        if let Some(sol) = system.solve(&vectorize(&next)) {
            let mut coeffs: Vec<Scalar> = sol.into_iter().map(|c| field.neg(&c)).collect();
            coeffs.push(field.one());
            return coeffs;
        }
        powers.push(next);
    }
}

fn eval_poly(field: FieldSpec, coeffs: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = field.zero();
    for c in coeffs.iter().rev() {
        acc = field.add(&field.mul(&acc, x), c);
    }
    acc
}

fn small_divisors(n: &BigInt, limit: u64) -> Vec<BigInt> {
    let mut out = Vec::new();
    let abs = n.abs();
    if abs.is_zero() {
        return out;
    }
    let mut d = BigInt::from(1u64);
    let lim = BigInt::from(limit);
    while &d * &d <= abs && d <= lim {
        if (&abs % &d).is_zero() {
            out.push(d.clone());
            out.push(&abs / &d);
        }
        d += 1;
    }
    out
}

/// Roots of the minimal polynomial of f in the base field; shifting f
/// by a root produces a singular endomorphism, the useful input for
/// Fitting splits.
fn shift_candidates(field: FieldSpec, f: &ExactMatrix) -> Vec<Scalar> {
    let coeffs = minimal_polynomial(f);
    match field {
        FieldSpec::Prime { p } if p <= 257 => field
            .elements()
            .expect("finite field")
            .into_iter()
            .filter(|x| eval_poly(field, &coeffs, x).is_zero())
            .collect(),
        FieldSpec::Prime { .. } => Vec::new(),
        FieldSpec::Rational => {
            // Rational root theorem after clearing denominators.
            let rats: Vec<BigRational> = coeffs
                .iter()
                .map(|c| match c {
                    Scalar::Rat(r) => (**r).clone(),
                    Scalar::Fp(_) => unreachable!("rational field scalars"),
                })
                .collect();
            let mut lcm = BigInt::from(1u64);
            for r in &rats {
                lcm = num::integer::lcm(lcm, r.denom().clone());
            }
            let ints: Vec<BigInt> = rats.iter().map(|r| (r * &lcm).to_integer()).collect();
            let lead = ints.last().unwrap().clone();
            let konst = ints
                .iter()
                .find(|c| !c.is_zero())
                .cloned()
                .unwrap_or_else(|| BigInt::from(1u64));
            let mut candidates: Vec<Scalar> = vec![Scalar::Rat(Box::new(BigRational::zero()))];
            for p in small_divisors(&konst, 1000) {
                for q in small_divisors(&lead, 1000) {
                    for sign in [1i64, -1] {
                        let cand = BigRational::new(&p * BigInt::from(sign), q.clone());
                        candidates.push(Scalar::Rat(Box::new(cand)));
                    }
                }
            }
            candidates.sort_by_key(|c| c.to_string());
            candidates.dedup();
            candidates
                .into_iter()
                .filter(|x| eval_poly(field, &coeffs, x).is_zero())
                .collect()
        }
    }
}

type SplitParts = ((Module, ExactMatrix), (Module, ExactMatrix));

enum SplitOutcome {
    Split(Box<SplitParts>),
    Certified,
    Unknown { end_dim: usize },
}

/// Fitting split along one endomorphism, when proper.
fn try_fitting(m: &Module, f_mat: &ExactMatrix) -> Option<SplitParts> {
    let field = m.algebra.field;
    let g = stable_power(f_mat);
    let r = g.rank();
    if r == 0 || r == m.dim {
        return None;
    }
    let image_cols: Vec<Vec<Scalar>> = (0..g.cols).map(|c| g.col_vec(c)).collect();
    let image = Subspace::from_vectors(field, m.dim, &image_cols);
    let kernel = Subspace::from_vectors(field, m.dim, &g.kernel_basis());
    let a = submodule_from_subspace(m, &image).ok()?;
    let b = submodule_from_subspace(m, &kernel).ok()?;
    Some((a, b))
}

fn find_split(m: &Module, caps: &Caps) -> Result<SplitOutcome> {
    assert!(m.dim > 0);
    let field = m.algebra.field;
    let ends = hom_basis(m, m);
    let d = ends.len();
    if d == 1 {
        return Ok(SplitOutcome::Certified);
    }

    // Basis endomorphisms and their eigenvalue shifts.
    for e in &ends {
        if let Some((a, b)) = try_fitting(m, e) {
            return Ok(SplitOutcome::Split(Box::new((a, b))));
        }
        for lambda in shift_candidates(field, e) {
            let shifted = e.sub(&ExactMatrix::identity(field, m.dim).scale(&lambda));
            if let Some((a, b)) = try_fitting(m, &shifted) {
                return Ok(SplitOutcome::Split(Box::new((a, b))));
            }
        }
    }

    // Random combinations.
    let mut rng = ChaCha8Rng::seed_from_u64(caps.seed);
    let finite_elements = field.elements().ok();
    for _ in 0..caps.random_trials {
        let mut combo = ExactMatrix::zeros(field, m.dim, m.dim);
        for e in &ends {
            let c = match &finite_elements {
                Some(els) => els[rng.gen_range(0..els.len())].clone(),
                None => field.from_int(rng.gen_range(-3i64..=3)),
            };
            if !c.is_zero() {
                combo = combo.add(&e.scale(&c));
            }
        }
        if let Some((a, b)) = try_fitting(m, &combo) {
            return Ok(SplitOutcome::Split(Box::new((a, b))));
        }
        for lambda in shift_candidates(field, &combo) {
            let shifted = combo.sub(&ExactMatrix::identity(field, m.dim).scale(&lambda));
            if let Some((a, b)) = try_fitting(m, &shifted) {
                return Ok(SplitOutcome::Split(Box::new((a, b))));
            }
        }
    }

    // Exhaustive walk: a decomposable module has a nontrivial
    // idempotent, which is its own stable power, so scanning every
    // endomorphism either splits or certifies.
    if let Some(els) = &finite_elements {
        let q = els.len() as u128;
        let total = q.checked_pow(d as u32);
        if let Some(total) = total {
            if total <= caps.hom_budget as u128 {
                let mut digits = vec![0usize; d];
                'outer: loop {
                    let mut pos = 0;
                    loop {
                        if pos == d {
                            break 'outer;
                        }
                        digits[pos] += 1;
                        if digits[pos] < els.len() {
                            break;
                        }
                        digits[pos] = 0;
                        pos += 1;
                    }
                    let mut combo = ExactMatrix::zeros(field, m.dim, m.dim);
                    for (i, &dig) in digits.iter().enumerate() {
                        if dig != 0 {
                            combo = combo.add(&ends[i].scale(&els[dig]));
                        }
                    }
                    if let Some((a, b)) = try_fitting(m, &combo) {
                        return Ok(SplitOutcome::Split(Box::new((a, b))));
                    }
                }
                return Ok(SplitOutcome::Certified);
            }
        }
    }

    // Rational fallback: the trace form computes the radical in
    // characteristic zero; a local endomorphism algebra certifies
    // indecomposability.
    if field == FieldSpec::Rational {
        let rad = char_zero_radical(field, &ends);
        if d - rad.len() == 1 {
            return Ok(SplitOutcome::Certified);
        }
    }
    Ok(SplitOutcome::Unknown { end_dim: d })
}

/// Splits a module into indecomposable summands with their inclusion
/// maps. The zero module yields an empty list.
pub fn decompose(m: &Module, caps: &Caps) -> Result<Vec<(Module, ExactMatrix)>> {
    if m.dim == 0 {
        return Ok(Vec::new());
    }
    match find_split(m, caps)? {
        SplitOutcome::Certified => Ok(vec![(
            m.clone(),
            ExactMatrix::identity(m.algebra.field, m.dim),
        )]),
        SplitOutcome::Split(parts) => {
            let ((a, inc_a), (b, inc_b)) = *parts;
            let mut out = Vec::new();
            for (s, inc) in decompose(&a, caps)? {
                out.push((s, inc_a.mul(&inc)));
            }
            for (s, inc) in decompose(&b, caps)? {
                out.push((s, inc_b.mul(&inc)));
            }
            Ok(out)
        }
        SplitOutcome::Unknown { end_dim } => {
            let q = match m.algebra.field {
                FieldSpec::Prime { p } => p as u128,
                FieldSpec::Rational => 0,
            };
            Err(Error::CapExceeded {
                what: format!(
                    "certifying indecomposability of a module with a {end_dim}-dimensional endomorphism algebra"
                ),
                required: q.checked_pow(end_dim as u32).unwrap_or(u128::MAX),
                cap: caps.hom_budget as u128,
            })
        }
    }
}

pub fn is_indecomposable(m: &Module, caps: &Caps) -> Result<bool> {
    if m.dim == 0 {
        return Ok(false);
    }
    match find_split(m, caps)? {
        SplitOutcome::Certified => Ok(true),
        SplitOutcome::Split(_) => Ok(false),
        SplitOutcome::Unknown { end_dim } => Err(Error::CapExceeded {
            what: format!(
                "certifying indecomposability of a module with a {end_dim}-dimensional endomorphism algebra"
            ),
            required: 0,
            cap: caps.hom_budget as u128,
        }),
    }
}

/// Isomorphism test for two modules already known indecomposable: some
/// pair of hom basis elements composes to an automorphism exactly when
/// the modules are isomorphic, because the identity factors through
/// the span of such compositions.
fn indec_iso(x: &Module, y: &Module) -> Option<ExactMatrix> {
    if x.dim != y.dim || x.dim_vector() != y.dim_vector() {
        return None;
    }
    let forward = hom_basis(x, y);
    let backward = hom_basis(y, x);
    for f in &forward {
        for g in &backward {
            if g.mul(f).is_invertible() {
                return Some(f.clone());
            }
        }
    }
    None
}

/// Isomorphism test for arbitrary modules: decompose both sides and
/// match indecomposable summands one-to-one.
pub fn are_isomorphic(a: &Module, b: &Module, caps: &Caps) -> Result<bool> {
    if a.dim != b.dim || a.dim_vector() != b.dim_vector() {
        return Ok(false);
    }
    if a.dim == 0 {
        return Ok(true);
    }
    let pa = decompose(a, caps)?;
    let pb = decompose(b, caps)?;
    if pa.len() != pb.len() {
        return Ok(false);
    }
    if pa.len() == 1 {
        return Ok(indec_iso(&pa[0].0, &pb[0].0).is_some());
    }
    let mut used = vec![false; pb.len()];
    for (sa, _) in &pa {
        let mut matched = false;
        for (j, (sb, _)) in pb.iter().enumerate() {
            if !used[j] && indec_iso(sa, sb).is_some() {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of pairwise non-isomorphic indecomposable summands.
pub fn rank_of_module(m: &Module, caps: &Caps) -> Result<usize> {
    let parts = decompose(m, caps)?;
    let mut reps: Vec<&Module> = Vec::new();
    for (s, _) in &parts {
        if !reps.iter().any(|r| indec_iso(r, s).is_some()) {
            reps.push(s);
        }
    }
    Ok(reps.len())
}

fn char_zero_radical(field: FieldSpec, ends: &[ExactMatrix]) -> Vec<ExactMatrix> {
    let d = ends.len();
    if d == 0 {
        return Vec::new();
    }
    // Radical of the symmetric form (x, y) -> trace(xy) on the
    // endomorphism algebra; in characteristic zero this is the Jacobson
    // radical because radical elements are nilpotent (trace zero
    // against everything) and the form is nondegenerate on the
    // semisimple quotient.
    let mut gram = ExactMatrix::zeros(field, d, d);
    for i in 0..d {
        for j in 0..d {
            let prod = ends[i].mul(&ends[j]);
            let mut tr = field.zero();
            for k in 0..prod.rows {
                tr = field.add(&tr, &prod[(k, k)]);
            }
            gram[(i, j)] = tr;
        }
    }
    gram.kernel_basis()
        .into_iter()
        .map(|coords| {
            let mut m = ExactMatrix::zeros(field, ends[0].rows, ends[0].cols);
            for (i, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    m = m.add(&ends[i].scale(c));
                }
            }
            m
        })
        .collect()
}

/// Structure constants of the span of `elements` (closed under
/// products), in coordinates of the echelonized span.
struct SpanAlgebra {
    field: FieldSpec,
    dim: usize,
    mult: Vec<Vec<Scalar>>,
    mats: Vec<ExactMatrix>,
}

impl SpanAlgebra {
    fn new(field: FieldSpec, elements: &[ExactMatrix]) -> SpanAlgebra {
        let ambient = elements[0].rows * elements[0].cols;
        let vecs: Vec<Vec<Scalar>> = elements.iter().map(vectorize).collect();
        let space = Subspace::from_vectors(field, ambient, &vecs);
        let d = space.dim();
        let side = elements[0].rows;
        let mats: Vec<ExactMatrix> = space
            .basis_vectors()
            .into_iter()
            .map(|v| {
                let mut m = ExactMatrix::zeros(field, side, side);
                for r in 0..side {
                    for c in 0..side {
                        m[(r, c)] = v[r * side + c].clone();
                    }
                }
                m
            })
            .collect();
        let mut mult = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in 0..d {
                let prod = mats[i].mul(&mats[j]);
                mult[i * d + j] = space
                    .express(&vectorize(&prod))
                    .expect("endomorphism span is multiplicatively closed");
            }
        }
        SpanAlgebra {
            field,
            dim: d,
            mult,
            mats,
        }
    }

    fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut out = vec![f.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, m) in self.mult[i * self.dim + j].iter().enumerate() {
                    if !m.is_zero() {
                        out[k] = f.add(&out[k], &f.mul(&c, m));
                    }
                }
            }
        }
        out
    }

    fn to_matrix(&self, coords: &[Scalar]) -> ExactMatrix {
        let f = self.field;
        let mut m = ExactMatrix::zeros(f, self.mats[0].rows, self.mats[0].cols);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.mats[i].scale(c));
            }
        }
        m
    }
}

/// Radical of the local endomorphism algebra of an indecomposable
/// module over a prime field. The residue division ring is a finite
/// field by Wedderburn, hence commutative, so the commutator ideal
/// sits inside the radical; the radical of the commutative quotient is
/// the kernel of an iterated Frobenius map, which is linear over a
/// prime field.
fn local_radical_char_p(p: u64, ends: &[ExactMatrix]) -> Result<Vec<ExactMatrix>> {
    let field = FieldSpec::Prime { p };
    let alg = SpanAlgebra::new(field, ends);
    let d = alg.dim;

    // Two-sided ideal generated by commutators, in span coordinates.
    let unit_vec = |i: usize| {
        let mut v = vec![field.zero(); d];
        v[i] = field.one();
        v
    };
    let mut comm_vecs: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let ij = alg.multiply(&unit_vec(i), &unit_vec(j));
            let ji = alg.multiply(&unit_vec(j), &unit_vec(i));
            let diff: Vec<Scalar> = ij
                .iter()
                .zip(&ji)
                .map(|(a, b)| field.sub(a, b))
                .collect();
            comm_vecs.push(diff);
        }
    }
    let mut ideal = Subspace::from_vectors(field, d, &comm_vecs);
    loop {
        let mut grew = false;
        for v in ideal.basis_vectors() {
            for i in 0..d {
                for prod in [
                    alg.multiply(&unit_vec(i), &v),
                    alg.multiply(&v, &unit_vec(i)),
                ] {
                    if !ideal.contains(&prod) {
                        ideal = ideal.sum(&Subspace::from_vectors(field, d, &[prod]));
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }

    // Commutative quotient in the non-pivot coordinates.
    let pivots: std::collections::BTreeSet<usize> = ideal.pivot_columns().into_iter().collect();
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    let bdim = free.len();
    let to_quot = |v: &[Scalar]| -> Vec<Scalar> {
        let r = ideal.reduce(v);
        free.iter().map(|&c| r[c].clone()).collect()
    };
    let lift = |w: &[Scalar]| -> Vec<Scalar> {
        let mut v = vec![field.zero(); d];
        for (k, &c) in free.iter().enumerate() {
            v[c] = w[k].clone();
        }
        v
    };
    // Quotient multiplication through lifts.
    let quot_mul = |x: &[Scalar], y: &[Scalar]| to_quot(&alg.multiply(&lift(x), &lift(y)));

    // Iterated Frobenius x -> x^(p^e) with p^e >= the quotient
    // dimension; its kernel is the nilradical of the commutative
    // quotient.
    let mut pe = p as u128;
    while pe < bdim as u128 {
        pe *= p as u128;
    }
    let quot_pow = |x: &[Scalar], mut exp: u128| -> Vec<Scalar> {
        let mut base = x.to_vec();
        let mut acc: Option<Vec<Scalar>> = None;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => quot_mul(&a, &base),
                });
            }
            exp >>= 1;
            if exp > 0 {
                base = quot_mul(&base, &base);
            }
        }
        acc.unwrap_or_else(|| vec![field.zero(); bdim])
    };
    let mut frob = ExactMatrix::zeros(field, bdim, bdim);
    for j in 0..bdim {
        let mut basis = vec![field.zero(); bdim];
        basis[j] = field.one();
        for (r, v) in quot_pow(&basis, pe).into_iter().enumerate() {
            frob[(r, j)] = v;
        }
    }
    let quot_rad = frob.kernel_basis();

    // Radical = ideal + lifts of the quotient radical, back in span
    // coordinates and then as matrices.
    let mut rad_vecs = ideal.basis_vectors();
    for w in quot_rad {
        rad_vecs.push(lift(&w));
    }
    let rad_space = Subspace::from_vectors(field, d, &rad_vecs);

    // Locality sanity: the radical must be a nilpotent ideal of
    // codimension equal to the degree of a finite field extension; the
    // nilpotency check alone already catches a wrong decomposition.
    let mut power = rad_space.clone();
    let mut steps = 0;
    while power.dim() > 0 {
        steps += 1;
        if steps > d + 1 {
            return Err(Error::invariant(
                "computed endomorphism radical is not nilpotent; module was not indecomposable",
            ));
        }
        let mut next = Vec::new();
        for a in power.basis_vectors() {
            for b in rad_space.basis_vectors() {
                next.push(alg.multiply(&a, &b));
            }
        }
        power = Subspace::from_vectors(field, d, &next);
    }

    Ok(rad_space
        .basis_vectors()
        .into_iter()
        .map(|v| alg.to_matrix(&v))
        .collect())
}

/// Basis of the radical of End(M), as endomorphism matrices of M.
///
/// Characteristic zero uses the trace form. Positive characteristic
/// decomposes M and assembles the radical from the local radicals of
/// the summands plus every morphism between non-isomorphic summands.
pub fn end_radical(m: &Module, caps: &Caps) -> Result<Vec<ExactMatrix>> {
    let field = m.algebra.field;
    if m.dim == 0 {
        return Ok(Vec::new());
    }
    let result: Vec<ExactMatrix> = match field {
        FieldSpec::Rational => {
            let ends = hom_basis(m, m);
            char_zero_radical(field, &ends)
        }
        FieldSpec::Prime { p } => {
            let parts = decompose(m, caps)?;
            let k = parts.len();
            // Projections of m onto the summands, from the inverse of
            // the assembled inclusion matrix.
            let mut t = ExactMatrix::zeros(field, m.dim, m.dim);
            let mut offsets = vec![0usize];
            for (s, inc) in &parts {
                let off = *offsets.last().unwrap();
                t.set_block(0, off, inc);
                offsets.push(off + s.dim);
            }
            let t_inv = t
                .inverse()
                .ok_or_else(|| Error::invariant("summand inclusions do not decompose the module"))?;
            let projections: Vec<ExactMatrix> = (0..k)
                .map(|i| t_inv.block(offsets[i], 0, parts[i].0.dim, m.dim))
                .collect();

            // Isomorphism class representatives and witnessing maps.
            let mut class_of = vec![usize::MAX; k];
            let mut iso_to_rep: Vec<Option<ExactMatrix>> = vec![None; k];
            let mut reps: Vec<usize> = Vec::new();
            for i in 0..k {
                let mut assigned = false;
                for &r in &reps {
                    if let Some(phi) = indec_iso(&parts[r].0, &parts[i].0) {
                        class_of[i] = r;
                        // phi maps the representative to part i.
                        iso_to_rep[i] = Some(phi);
                        assigned = true;
                        break;
                    }
                }
                if !assigned {
                    class_of[i] = i;
                    iso_to_rep[i] = Some(ExactMatrix::identity(field, parts[i].0.dim));
                    reps.push(i);
                }
            }
            let mut local_rads: std::collections::BTreeMap<usize, Vec<ExactMatrix>> =
                std::collections::BTreeMap::new();
            for &r in &reps {
                let ends_r = hom_basis(&parts[r].0, &parts[r].0);
                local_rads.insert(r, local_radical_char_p(p, &ends_r)?);
            }

            let mut rad = Vec::new();
            for i in 0..k {
                for j in 0..k {
                    let (si, inci) = &parts[i];
                    let (sj, _) = &parts[j];
                    let pj = &projections[j];
                    if class_of[i] == class_of[j] {
                        // Non-isomorphisms between isomorphic summands:
                        // compose the radical of the representative's
                        // endomorphism algebra with the witnessing
                        // isomorphisms.
                        let r = class_of[i];
                        let phi_i = iso_to_rep[i].as_ref().unwrap();
                        let phi_j = iso_to_rep[j].as_ref().unwrap();
                        let phi_j_inv = phi_j
                            .inverse()
                            .ok_or_else(|| Error::invariant("isomorphism witness is singular"))?;
                        for rho in &local_rads[&r] {
                            let h = phi_i.mul(rho).mul(&phi_j_inv);
                            rad.push(inci.mul(&h).mul(pj));
                        }
                    } else {
                        for h in hom_basis(sj, si) {
                            rad.push(inci.mul(&h).mul(pj));
                        }
                    }
                }
            }
            rad
        }
    };

    // The assembled radical must be a nil ideal: spot-check nilpotency
    // of the span.
    if !result.is_empty() {
        let amb = m.dim * m.dim;
        let span = Subspace::from_vectors(field, amb, &result.iter().map(vectorize).collect::<Vec<_>>());
        let mut power = span.clone();
        let mut steps = 0;
        while power.dim() > 0 {
            steps += 1;
            if steps > span.dim() + 1 {
                return Err(Error::invariant(
                    "assembled endomorphism radical is not nilpotent",
                ));
            }
            let mut next = Vec::new();
            for a in power.basis_vectors() {
                let am = devectorize(field, &a, m.dim);
                for b in &result {
                    next.push(vectorize(&am.mul(b)));
                }
            }
            power = Subspace::from_vectors(field, amb, &next);
        }
    }
    Ok(result)
}

fn devectorize(field: FieldSpec, v: &[Scalar], side: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(field, side, side);
    for r in 0..side {
        for c in 0..side {
            m[(r, c)] = v[r * side + c].clone();
        }
    }
    m
}

/// A brick: a nonzero module whose endomorphism algebra is a division
/// algebra. Checked as indecomposability plus a vanishing endomorphism
/// radical; the one-dimensional shortcut covers the common case.
pub fn is_brick(m: &Module, caps: &Caps) -> Result<bool> {
    if m.dim == 0 {
        return Ok(false);
    }
    if hom_basis(m, m).len() == 1 {
        return Ok(true);
    }
    if !is_indecomposable(m, caps)? {
        return Ok(false);
    }
    Ok(end_radical(m, caps)?.is_empty())
}

/// The largest quotient of m all of whose endomorphisms are scalar on
/// the summand structure: m modulo the images of its endomorphism
/// radical. For an indecomposable rigid module this is the associated
/// brick.
pub fn brick_quotient(m: &Module, caps: &Caps) -> Result<Module> {
    let field = m.algebra.field;
    if m.dim == 0 {
        return Ok(m.clone());
    }
    let rad = end_radical(m, caps)?;
    let mut vectors = Vec::new();
    for r in &rad {
        for c in 0..r.cols {
            vectors.push(r.col_vec(c));
        }
    }
    let subspace = Subspace::from_vectors(field, m.dim, &vectors);
    let (q, _) = crate::module::quotient_by_subspace(m, &subspace)?;
    Ok(q)
}

/// Rank normal form representatives for a rows x cols arrow matrix.
fn rank_normal_forms(field: FieldSpec, rows: usize, cols: usize) -> Vec<ExactMatrix> {
    (0..=rows.min(cols))
        .map(|r| {
            let mut m = ExactMatrix::zeros(field, rows, cols);
            for i in 0..r {
                m[(i, i)] = field.one();
            }
            m
        })
        .collect()
}

/// All indecomposable modules with dimension vector componentwise at
/// most `bound`, one representative per isomorphism class, over a
/// finite base field.
///
/// Candidates are graded module structures; the first arrow between
/// distinct vertices is normalized to rank normal form (legitimate
/// because base changes at the two endpoints are module isomorphisms),
/// every other arrow ranges over all matrices. Isomorphic duplicates
/// are removed as they appear. With `jobs > 1` the dimension vectors
/// are sharded across threads; results are merged in the same
/// deterministic order as the sequential run.
pub fn enumerate_indecomposables(
    algebra: &Arc<BasedAlgebra>,
    bound: &[usize],
    caps: &Caps,
    jobs: usize,
) -> Result<Vec<Module>> {
    let quiver = algebra
        .quiver
        .as_ref()
        .ok_or_else(|| Error::invalid("indecomposable enumeration needs a quiver presentation"))?;
    let n = quiver.vertex_names.len();
    if bound.len() != n {
        return Err(Error::invalid(
            "dimension bound must list one entry per vertex",
        ));
    }
    let mut dim_vectors: Vec<Vec<usize>> = Vec::new();
    let mut current = vec![0usize; n];
    loop {
        if current.iter().any(|&d| d > 0) {
            dim_vectors.push(current.clone());
        }
        let mut pos = 0;
        loop {
            if pos == n {
                dim_vectors.sort_by_key(|d| (d.iter().sum::<usize>(), d.clone()));
                let run = |d: &Vec<usize>| indecomposables_for_dim_vector(algebra, d, caps);
                let per_vector: Vec<Result<Vec<Module>>> = if jobs > 1 {
                    let pool = rayon::ThreadPoolBuilder::new()
                        .num_threads(jobs)
                        .build()
                        .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
                    pool.install(|| {
                        use rayon::prelude::*;
                        dim_vectors.par_iter().map(run).collect()
                    })
                } else {
                    dim_vectors.iter().map(run).collect()
                };
                let mut out = Vec::new();
                for r in per_vector {
                    out.extend(r?);
                }
                return Ok(out);
            }
            current[pos] += 1;
            if current[pos] <= bound[pos] {
                break;
            }
            current[pos] = 0;
            pos += 1;
        }
    }
}

fn indecomposables_for_dim_vector(
    algebra: &Arc<BasedAlgebra>,
    dims: &[usize],
    caps: &Caps,
) -> Result<Vec<Module>> {
    let field = algebra.field;
    let quiver = algebra.quiver.as_ref().unwrap();
    let elements = field.elements()?;
    let q = elements.len() as u128;

    // Per-arrow candidate lists: rank normal forms for the first
    // non-loop arrow, full entry odometers elsewhere.
    let normal_form_arrow = quiver.arrows.iter().position(|a| a.from != a.to);
    let mut arrow_shapes: Vec<(usize, usize)> = Vec::new();
    let mut candidate_count: u128 = 1;
    for (ai, a) in quiver.arrows.iter().enumerate() {
        let rows = dims[a.to];
        let cols = dims[a.from];
        arrow_shapes.push((rows, cols));
        let here = if Some(ai) == normal_form_arrow {
            (rows.min(cols) + 1) as u128
        } else {
            q.checked_pow((rows * cols) as u32)
                .ok_or_else(|| Error::CapExceeded {
                    what: "arrow matrix enumeration".into(),
                    required: u128::MAX,
                    cap: caps.enum_candidates as u128,
                })?
        };
        candidate_count = candidate_count
            .checked_mul(here)
            .ok_or_else(|| Error::CapExceeded {
                what: "module candidate enumeration".into(),
                required: u128::MAX,
                cap: caps.enum_candidates as u128,
            })?;
    }
    if candidate_count > caps.enum_candidates as u128 {
        return Err(Error::CapExceeded {
            what: format!("module candidates at dimension vector {dims:?}"),
            required: candidate_count,
            cap: caps.enum_candidates as u128,
        });
    }

    let per_arrow: Vec<Vec<ExactMatrix>> = quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, _)| {
            let (rows, cols) = arrow_shapes[ai];
            if Some(ai) == normal_form_arrow {
                rank_normal_forms(field, rows, cols)
            } else {
                all_matrices(field, &elements, rows, cols)
            }
        })
        .collect();

    let mut accepted: Vec<(usize, Module)> = Vec::new();
    let mut choice = vec![0usize; quiver.arrows.len()];
    loop {
        let arrow_mats: Vec<ExactMatrix> = choice
            .iter()
            .enumerate()
            .map(|(ai, &ci)| per_arrow[ai][ci].clone())
            .collect();
        if let Ok(m) = from_vertex_data(algebra, dims, &arrow_mats) {
            if m.validate().is_ok() {
                let end_dim = hom_basis(&m, &m).len();
                if is_indecomposable(&m, caps)? {
                    let duplicate = accepted
                        .iter()
                        .any(|(ed, acc)| *ed == end_dim && indec_iso(acc, &m).is_some());
                    if !duplicate {
                        accepted.push((end_dim, m));
                    }
                }
            }
        }
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(accepted.into_iter().map(|(_, m)| m).collect());
            }
            choice[pos] += 1;
            if choice[pos] < per_arrow[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

fn all_matrices(
    field: FieldSpec,
    elements: &[Scalar],
    rows: usize,
    cols: usize,
) -> Vec<ExactMatrix> {
    let cells = rows * cols;
    let mut out = Vec::new();
    let mut digits = vec![0usize; cells];
    loop {
        let mut m = ExactMatrix::zeros(field, rows, cols);
        for (k, &d) in digits.iter().enumerate() {
            m[(k / cols, k % cols)] = elements[d].clone();
        }
        out.push(m);
        let mut pos = 0;
        loop {
            if pos == cells {
                return out;
            }
            digits[pos] += 1;
            if digits[pos] < elements.len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::test_fixtures::*;
    use crate::module::{injective, projective, simple, Module};

    fn arc(json: &str) -> Arc<crate::algebra::BasedAlgebra> {
        Arc::new(build(json))
    }

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn projectives_are_indecomposable_and_sums_split() {
        let alg = arc(A2);
        let p1 = projective(&alg, 0);
        let p2 = projective(&alg, 1);
        assert!(is_indecomposable(&p1, &caps()).unwrap());
        assert!(is_indecomposable(&p2, &caps()).unwrap());
        let sum = Module::direct_sum(&[&p1, &p2, &p1]);
        let parts = decompose(&sum, &caps()).unwrap();
        assert_eq!(parts.len(), 3);
        assert_eq!(rank_of_module(&sum, &caps()).unwrap(), 2);
    }

    #[test]
    fn isomorphism_detects_equal_and_distinct_classes() {
        let alg = arc(A2);
        let p1 = projective(&alg, 0);
        let i2 = injective(&alg, 1);
        let s1 = simple(&alg, 0);
        assert!(are_isomorphic(&p1, &i2, &caps()).unwrap());
        assert!(!are_isomorphic(&p1, &s1, &caps()).unwrap());
        let a = Module::direct_sum(&[&p1, &s1]);
        let b = Module::direct_sum(&[&s1, &i2]);
        assert!(are_isomorphic(&a, &b, &caps()).unwrap());
        let c = Module::direct_sum(&[&s1, &s1]);
        assert!(!are_isomorphic(&a, &c, &caps()).unwrap());
    }

    #[test]
    fn loop_algebra_regular_module_has_radical_endomorphism() {
        let alg = arc(LOOP2);
        let reg = Module::regular(&alg);
        assert!(is_indecomposable(&reg, &caps()).unwrap());
        let rad = end_radical(&reg, &caps()).unwrap();
        assert_eq!(rad.len(), 1);
        assert!(!is_brick(&reg, &caps()).unwrap());
        let s = simple(&alg, 0);
        assert!(is_brick(&s, &caps()).unwrap());
        // The brick quotient of the regular module is the simple.
        let q = brick_quotient(&reg, &caps()).unwrap();
        assert!(are_isomorphic(&q, &s, &caps()).unwrap());
    }

    #[test]
    fn rational_loop_matches_finite_field_behaviour() {
        let alg = arc(LOOP2_RATIONAL);
        let reg = Module::regular(&alg);
        assert!(is_indecomposable(&reg, &caps()).unwrap());
        assert_eq!(end_radical(&reg, &caps()).unwrap().len(), 1);
        let s = simple(&alg, 0);
        assert!(is_brick(&s, &caps()).unwrap());
        assert!(!is_brick(&reg, &caps()).unwrap());
    }

    #[test]
    fn galois_orbit_module_is_a_brick_with_bigger_endomorphism_field() {
        // Kronecker module with both arrows acting on a 2-dimensional
        // space, one as the identity and one as the companion matrix of
        // an irreducible quadratic: indecomposable with endomorphism
        // algebra a quadratic field extension, hence a brick even
        // though its endomorphism space has dimension two.
        let alg = arc(KRON);
        let f = alg.field;
        let ident = ExactMatrix::identity(f, 2);
        let comp = ExactMatrix::from_int_rows(f, &[vec![0, 1], vec![1, 1]]);
        let m = from_vertex_data(&alg, &[2, 2], &[ident, comp]).unwrap();
        m.validate().unwrap();
        assert!(is_indecomposable(&m, &caps()).unwrap());
        assert_eq!(hom_basis(&m, &m).len(), 2);
        assert!(end_radical(&m, &caps()).unwrap().is_empty());
        assert!(is_brick(&m, &caps()).unwrap());
    }

    #[test]
    fn minimal_polynomial_of_nilpotent_and_idempotent() {
        let f = FieldSpec::Prime { p: 2 };
        let nil = ExactMatrix::from_int_rows(f, &[vec![0, 1], vec![0, 0]]);
        let mp = minimal_polynomial(&nil);
        // T^2: coefficients (0, 0, 1).
        assert_eq!(mp.len(), 3);
        assert!(mp[0].is_zero() && mp[1].is_zero() && mp[2].is_one());
        let idem = ExactMatrix::from_int_rows(f, &[vec![1, 0], vec![0, 0]]);
        // T^2 - T has roots 0 and 1.
        let roots = shift_candidates(f, &idem);
        assert_eq!(roots.len(), 2);
    }

    #[test]
    fn enumeration_counts_small_quivers() {
        let c = caps();
        assert_eq!(
            enumerate_indecomposables(&arc(A2), &[1, 1], &c, 1).unwrap().len(),
            3
        );
        assert_eq!(
            enumerate_indecomposables(&arc(A3), &[1, 1, 1], &c, 1).unwrap().len(),
            6
        );
        assert_eq!(
            enumerate_indecomposables(&arc(NAK3), &[1, 1, 1], &c, 1).unwrap().len(),
            6
        );
        assert_eq!(
            enumerate_indecomposables(&arc(LOOP2), &[2], &c, 1).unwrap().len(),
            2
        );
        assert_eq!(
            enumerate_indecomposables(&arc(KRON), &[1, 1], &c, 1).unwrap().len(),
            5
        );
    }

    #[test]
    fn enumeration_is_deterministic_across_thread_counts() {
        let c = caps();
        let alg = arc(NAK3);
        let seq = enumerate_indecomposables(&alg, &[1, 1, 1], &c, 1).unwrap();
        let par = enumerate_indecomposables(&alg, &[1, 1, 1], &c, 3).unwrap();
        assert_eq!(seq.len(), par.len());
        for (a, b) in seq.iter().zip(&par) {
            assert_eq!(a.dim_vector(), b.dim_vector());
            assert_eq!(a.gen_actions, b.gen_actions);
        }
    }

    #[test]
    fn enumeration_respects_candidate_cap() {
        let mut c = caps();
        c.enum_candidates = 2;
        let err = enumerate_indecomposables(&arc(KRON), &[2, 2], &c, 1).unwrap_err();
        match err {
            Error::CapExceeded { cap, .. } => assert_eq!(cap, 2),
            other => panic!("expected cap error, got {other}"),
        }
    }

    #[test]
    fn kronecker_window_contains_eighteen_classes() {
        let c = caps();
        let all = enumerate_indecomposables(&arc(KRON), &[3, 3], &c, 1).unwrap();
        assert_eq!(all.len(), 18);
        // Regulars split by dimension: three at (1,1), four at (2,2),
        // five at (3,3); preprojectives and preinjectives fill the rest.
        let count_at = |dv: &[usize]| {
            all.iter()
                .filter(|m| m.dim_vector() == dv)
                .count()
        };
        assert_eq!(count_at(&[1, 1]), 3);
        assert_eq!(count_at(&[2, 2]), 4);
        assert_eq!(count_at(&[3, 3]), 5);
        assert_eq!(count_at(&[1, 2]), 1);
        assert_eq!(count_at(&[2, 3]), 1);
        assert_eq!(count_at(&[3, 2]), 1);
    }
}
