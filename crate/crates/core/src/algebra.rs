//! Finite-dimensional elementary algebras with a distinguished basis
//! and full structure-constant tables.
//!
//! Two constructors exist: the bounded quotient of a path algebra by an
//! admissible relation ideal, and endomorphism algebras of projective
//! bundles (built in the reduction machinery). Both produce a basis
//! adapted to the radical: `radical` lists basis indices that span the
//! Jacobson radical, and the primitive orthogonal idempotents are
//! themselves basis elements.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{ExactMatrix, Subspace};
use crate::quiver::ResolvedQuiver;
use std::collections::HashMap;

/// Hard cap on the number of paths materialized while building a path
/// algebra quotient; beyond this the presentation is rejected rather
/// than ground through.
pub const PATH_CAP: usize = 200_000;

#[derive(Debug)]
pub struct BasedAlgebra {
    pub name: String,
    pub field: FieldSpec,
    pub dim: usize,
    pub basis_labels: Vec<String>,
    /// Structure constants: coords of b_i * b_j, where the product
    /// applies b_j first (so module actions satisfy rho(x*y) = rho(x)rho(y)).
    mult: Vec<Vec<Scalar>>,
    pub unit: Vec<Scalar>,
    /// Basis indices of the primitive orthogonal idempotents e_1..e_n.
    pub idempotents: Vec<usize>,
    /// Basis indices of a generating set: the idempotents plus enough
    /// elements that every basis element is a product of generators.
    pub generators: Vec<usize>,
    /// For each basis element, a word in generator positions whose
    /// product (applied left to right) equals that element.
    pub gen_words: Vec<Vec<usize>>,
    /// Basis indices spanning the Jacobson radical.
    pub radical: Vec<usize>,
    /// Present when the algebra came from a quiver presentation; used by
    /// module enumeration.
    pub quiver: Option<ResolvedQuiver>,
}

impl BasedAlgebra {
    pub fn n(&self) -> usize {
        self.idempotents.len()
    }

    pub fn mult_coords(&self, i: usize, j: usize) -> &[Scalar] {
        &self.mult[i * self.dim + j]
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
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
                for (k, m) in self.mult_coords(i, j).iter().enumerate() {
                    if !m.is_zero() {
                        out[k] = f.add(&out[k], &f.mul(&c, m));
                    }
                }
            }
        }
        out
    }

    pub fn basis_coords(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    /// Matrix of left multiplication by the element with given coords.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.multiply(x, &self.basis_coords(j));
            for (r, v) in col.into_iter().enumerate() {
                m[(r, j)] = v;
            }
        }
        m
    }

    /// Matrix of right multiplication by the element with given coords.
    pub fn right_mult_matrix(&self, x: &[Scalar]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.multiply(&self.basis_coords(j), x);
            for (r, v) in col.into_iter().enumerate() {
                m[(r, j)] = v;
            }
        }
        m
    }

    /// Structural sanity of the whole table: associativity, unit,
    /// idempotent axioms, radical (nilpotent two-sided ideal of
    /// codimension n, i.e. the algebra is elementary).
    pub fn validate(&self) -> Result<()> {
        let d = self.dim;
        let f = self.field;
        let fail = |msg: String| Err(Error::invariant(format!("algebra {}: {msg}", self.name)));

        if self.mult.len() != d * d || self.mult.iter().any(|v| v.len() != d) {
            return fail("structure constant table has wrong shape".into());
        }
        if d == 0 {
            return Ok(());
        }

        // Associativity on basis triples.
        for i in 0..d {
            for j in 0..d {
                let ij = self.mult_coords(i, j).to_vec();
                for k in 0..d {
                    let left = self.multiply(&ij, &self.basis_coords(k));
                    let right = self.multiply(&self.basis_coords(i), self.mult_coords(j, k));
                    if left != right {
                        return fail(format!("associativity fails on basis triple ({i},{j},{k})"));
                    }
                }
            }
        }

        // Unit.
        for i in 0..d {
            let b = self.basis_coords(i);
            if self.multiply(&self.unit, &b) != b || self.multiply(&b, &self.unit) != b {
                return fail(format!("unit fails on basis element {i}"));
            }
        }

        // Idempotents: orthogonal, idempotent, summing to the unit.
        let mut sum = vec![f.zero(); d];
        for (a, &ei) in self.idempotents.iter().enumerate() {
            let e = self.basis_coords(ei);
            if self.multiply(&e, &e) != e {
                return fail(format!("idempotent {a} is not idempotent"));
            }
            for &ej in &self.idempotents[a + 1..] {
                let o = self.basis_coords(ej);
                if !self.multiply(&e, &o).iter().all(Scalar::is_zero)
                    || !self.multiply(&o, &e).iter().all(Scalar::is_zero)
                {
                    return fail("idempotents are not orthogonal".into());
                }
            }
            for (k, v) in sum.iter_mut().enumerate() {
                *v = f.add(v, &e[k]);
            }
        }
        if sum != self.unit {
            return fail("idempotents do not sum to the unit".into());
        }

        // Radical: spanned by basis elements, a two-sided nilpotent
        // ideal, complement spanned by the idempotents (so A/rad = K^n
        // and every idempotent is primitive).
        let rad_set: std::collections::BTreeSet<usize> = self.radical.iter().copied().collect();
        if rad_set.len() + self.idempotents.len() != d {
            return fail("radical indices plus idempotents do not exhaust the basis".into());
        }
        for &e in &self.idempotents {
            if rad_set.contains(&e) {
                return fail("an idempotent is listed in the radical".into());
            }
        }
        let rad_vectors: Vec<Vec<Scalar>> = self.radical.iter().map(|&r| self.basis_coords(r)).collect();
        let rad_space = Subspace::from_vectors(f, d, &rad_vectors);
        for i in 0..d {
            for &r in &self.radical {
                let left = self.multiply(&self.basis_coords(i), &self.basis_coords(r));
                let right = self.multiply(&self.basis_coords(r), &self.basis_coords(i));
                if !rad_space.contains(&left) || !rad_space.contains(&right) {
                    return fail("radical is not a two-sided ideal".into());
                }
            }
        }
        let mut power = rad_space.clone();
        let mut steps = 0usize;
        while power.dim() > 0 {
            steps += 1;
            if steps > d + 1 {
                return fail("radical is not nilpotent".into());
            }
            let mut next_vectors = Vec::new();
            for v in power.basis_vectors() {
                for &r in &self.radical {
                    next_vectors.push(self.multiply(&self.basis_coords(r), &v));
                }
            }
            power = Subspace::from_vectors(f, d, &next_vectors);
        }

        // Generator words reproduce the basis.
        for (i, word) in self.gen_words.iter().enumerate() {
            let mut acc = self.unit.clone();
            for &g in word {
                let gen = self.basis_coords(self.generators[g]);
                acc = self.multiply(&gen, &acc);
            }
            if acc != self.basis_coords(i) {
                return fail(format!("generator word for basis element {i} is wrong"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Path {
    source: usize,
    target: usize,
    /// Arrow indices in traversal order (first arrow traversed first).
    word: Vec<usize>,
}

/// Builds the quotient of the path algebra by the two-sided ideal the
/// relations generate, truncated at path length `nilpotency_bound`.
///
/// The construction enumerates all paths of length <= bound, spans the
/// relation ideal inside that space, and keeps the non-pivot paths as
/// the quotient basis. It errors unless every path of length exactly
/// `bound` reduces to zero; that certificate makes the arrow ideal of
/// the output nilpotent, hence the result finite-dimensional, and for a
/// genuinely admissible ideal the output is the full quotient algebra.
pub fn build_path_algebra(quiver: &ResolvedQuiver) -> Result<BasedAlgebra> {
    let f = quiver.field;
    let n = quiver.vertex_names.len();
    let bound = quiver.nilpotency_bound;

    // Paths by length; index order is the canonical path order
    // (length, then extension history), used everywhere below.
    let mut paths: Vec<Path> = (0..n)
        .map(|v| Path {
            source: v,
            target: v,
            word: Vec::new(),
        })
        .collect();
    let mut key_to_index: HashMap<(usize, Vec<usize>), usize> = paths
        .iter()
        .enumerate()
        .map(|(i, p)| ((p.source, p.word.clone()), i))
        .collect();
    let mut length_start = vec![0usize];
    let mut prev_range = 0..n;
    for _len in 1..=bound {
        length_start.push(paths.len());
        let mut new_paths = Vec::new();
        for pi in prev_range.clone() {
            let p = paths[pi].clone();
            for (ai, a) in quiver.arrows.iter().enumerate() {
                if a.from == p.target {
                    let mut word = p.word.clone();
                    word.push(ai);
                    new_paths.push(Path {
                        source: p.source,
                        target: a.to,
                        word,
                    });
                }
            }
        }
        prev_range = paths.len()..paths.len() + new_paths.len();
        for p in new_paths {
            if paths.len() >= PATH_CAP {
                return Err(Error::CapExceeded {
                    what: format!("enumerating paths of length <= {bound}"),
                    required: PATH_CAP as u128 + 1,
                    cap: PATH_CAP as u128,
                });
            }
            key_to_index.insert((p.source, p.word.clone()), paths.len());
            paths.push(p);
        }
    }
    length_start.push(paths.len());
    let total = paths.len();

    let path_index = |source: usize, word: &[usize]| -> Option<usize> {
        key_to_index.get(&(source, word.to_vec())).copied()
    };

    // Span of the relation ideal: every product (prefix ++ relation
    // term ++ suffix) of total length <= bound, with longer terms
    // truncated away.
    let mut ideal_rows: Vec<Vec<Scalar>> = Vec::new();
    for rel in &quiver.relations {
        let rel_source = quiver.arrows[rel[0].1[0]].from;
        let rel_target = quiver.arrows[*rel[0].1.last().unwrap()].to;
        let min_len = rel.iter().map(|(_, w)| w.len()).min().unwrap();
        for prefix in &paths {
            if prefix.target != rel_source {
                continue;
            }
            for suffix in &paths {
                if suffix.source != rel_target {
                    continue;
                }
                if prefix.word.len() + min_len + suffix.word.len() > bound {
                    continue;
                }
                let mut row = vec![f.zero(); total];
                let mut nonzero = false;
                for (coeff, term_word) in rel {
                    let mut word = prefix.word.clone();
                    word.extend_from_slice(term_word);
                    word.extend_from_slice(&suffix.word);
                    if word.len() > bound {
                        continue;
                    }
                    let idx = path_index(prefix.source, &word)
                        .expect("composable concatenation within bound was enumerated");
                    row[idx] = f.add(&row[idx], coeff);
                    nonzero = true;
                }
                if nonzero && !row.iter().all(Scalar::is_zero) {
                    ideal_rows.push(row);
                }
            }
        }
    }
    let ideal = Subspace::from_vectors(f, total, &ideal_rows);

    // Finiteness certificate: all paths of maximal length die.
    for pi in length_start[bound]..total {
        let mut v = vec![f.zero(); total];
        v[pi] = f.one();
        if !ideal.contains(&v) {
            return Err(Error::invalid(format!(
                "path {} of length {bound} does not reduce to zero; algebra dimension not certified within the bound",
                path_label(quiver, &paths[pi])
            )));
        }
    }

    // Quotient basis: non-pivot paths in canonical path order.
    let pivot_paths: std::collections::BTreeSet<usize> = {
        let mut set = std::collections::BTreeSet::new();
        let basis_rows = ideal.basis_rows();
        for r in 0..ideal.dim() {
            let lead = (0..total)
                .find(|&c| !basis_rows[(r, c)].is_zero())
                .expect("echelon row is nonzero");
            set.insert(lead);
        }
        set
    };
    let basis_paths: Vec<usize> = (0..total).filter(|p| !pivot_paths.contains(p)).collect();
    let dim = basis_paths.len();
    let basis_position: HashMap<usize, usize> = basis_paths
        .iter()
        .enumerate()
        .map(|(pos, &p)| (p, pos))
        .collect();

    // Residue of a path-space vector in quotient coordinates.
    let to_quotient = |v: &[Scalar]| -> Vec<Scalar> {
        let reduced = ideal.reduce(v);
        basis_paths.iter().map(|&p| reduced[p].clone()).collect()
    };

    let mut mult = vec![vec![f.zero(); dim]; dim * dim];
    for (i, &pi) in basis_paths.iter().enumerate() {
        for (j, &pj) in basis_paths.iter().enumerate() {
            // Product applies b_j first: traverse path j, then path i.
            let (a, b) = (&paths[pi], &paths[pj]);
            if b.target != a.source {
                continue;
            }
            let mut word = b.word.clone();
            word.extend_from_slice(&a.word);
            if word.len() > bound {
                continue;
            }
            let idx = path_index(b.source, &word).expect("in-bound concatenation exists");
            let mut v = vec![f.zero(); total];
            v[idx] = f.one();
            mult[i * dim + j] = to_quotient(&v);
        }
    }

    let mut unit = vec![f.zero(); dim];
    let mut idempotents = Vec::with_capacity(n);
    for v in 0..n {
        let pos = *basis_position
            .get(&v)
            .expect("trivial paths survive any admissible quotient");
        unit[pos] = f.one();
        idempotents.push(pos);
    }

    // Generators: trivial paths then arrows (arrows always survive).
    let mut generators = idempotents.clone();
    let mut arrow_gen_pos = Vec::with_capacity(quiver.arrows.len());
    for ai in 0..quiver.arrows.len() {
        let word = vec![ai];
        let p = path_index(quiver.arrows[ai].from, &word).expect("length-1 paths were enumerated");
        let pos = *basis_position
            .get(&p)
            .expect("arrows survive any admissible quotient");
        arrow_gen_pos.push(generators.len());
        generators.push(pos);
    }

    let mut gen_words = Vec::with_capacity(dim);
    let mut radical = Vec::new();
    for &p in &basis_paths {
        let path = &paths[p];
        if path.word.is_empty() {
            gen_words.push(vec![path.source]);
        } else {
            radical.push(basis_position[&p]);
            gen_words.push(path.word.iter().map(|&ai| arrow_gen_pos[ai]).collect());
        }
    }

    let labels = basis_paths
        .iter()
        .map(|&p| path_label(quiver, &paths[p]))
        .collect();

    let algebra = BasedAlgebra {
        name: quiver.name.clone(),
        field: f,
        dim,
        basis_labels: labels,
        mult,
        unit,
        idempotents,
        generators,
        gen_words,
        radical,
        quiver: Some(quiver.clone()),
    };
    algebra.validate()?;
    Ok(algebra)
}

fn path_label(quiver: &ResolvedQuiver, path: &Path) -> String {
    if path.word.is_empty() {
        format!("e_{}", quiver.vertex_names[path.source])
    } else {
        path.word
            .iter()
            .map(|&a| quiver.arrows[a].name.clone())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// The zero algebra: no basis, no idempotents. Shows up as the
/// endomorphism algebra of an empty projective bundle.
pub fn empty_algebra(field: FieldSpec, name: String) -> BasedAlgebra {
    BasedAlgebra {
        name,
        field,
        dim: 0,
        basis_labels: Vec::new(),
        mult: Vec::new(),
        unit: Vec::new(),
        idempotents: Vec::new(),
        generators: Vec::new(),
        gen_words: Vec::new(),
        radical: Vec::new(),
        quiver: None,
    }
}

/// Direct constructor for algebras whose basis and structure constants
/// are computed elsewhere (endomorphism algebras). Validates before
/// returning.
#[allow(clippy::too_many_arguments)]
pub fn based_algebra_from_parts(
    name: String,
    field: FieldSpec,
    basis_labels: Vec<String>,
    mult: Vec<Vec<Scalar>>,
    unit: Vec<Scalar>,
    idempotents: Vec<usize>,
    generators: Vec<usize>,
    gen_words: Vec<Vec<usize>>,
    radical: Vec<usize>,
) -> Result<BasedAlgebra> {
    let dim = basis_labels.len();
    let algebra = BasedAlgebra {
        name,
        field,
        dim,
        basis_labels,
        mult,
        unit,
        idempotents,
        generators,
        gen_words,
        radical,
        quiver: None,
    };
    algebra.validate()?;
    Ok(algebra)
}

#[cfg(test)]
pub mod test_fixtures {
    //! Inline presentations shared across the unit test modules.
    pub const A2: &str = r#"{
        "name": "a2",
        "field": {"kind": "prime", "p": 2},
        "vertices": ["1", "2"],
        "arrows": [{"name": "a", "from": "1", "to": "2"}],
        "relations": [],
        "universe": {"certified": true, "bound": [1, 1]}
    }"#;

    pub const A3: &str = r#"{
        "name": "a3",
        "field": {"kind": "prime", "p": 2},
        "vertices": ["1", "2", "3"],
        "arrows": [
            {"name": "a", "from": "1", "to": "2"},
            {"name": "b", "from": "2", "to": "3"}
        ],
        "relations": [],
        "universe": {"certified": true, "bound": [1, 1, 1]}
    }"#;

    pub const LOOP2: &str = r#"{
        "name": "loop2",
        "field": {"kind": "prime", "p": 2},
        "vertices": ["v"],
        "arrows": [{"name": "x", "from": "v", "to": "v"}],
        "relations": [[{"coeff": "1", "path": ["x", "x"]}]],
        "nilpotency_bound": 2,
        "universe": {"certified": true, "bound": [2]}
    }"#;

    pub const NAK3: &str = r#"{
        "name": "nak3",
        "field": {"kind": "prime", "p": 2},
        "vertices": ["1", "2", "3"],
        "arrows": [
            {"name": "a", "from": "1", "to": "2"},
            {"name": "b", "from": "2", "to": "3"},
            {"name": "c", "from": "3", "to": "1"}
        ],
        "relations": [
            [{"coeff": "1", "path": ["a", "b"]}],
            [{"coeff": "1", "path": ["b", "c"]}],
            [{"coeff": "1", "path": ["c", "a"]}]
        ],
        "nilpotency_bound": 2,
        "universe": {"certified": true, "bound": [1, 1, 1]}
    }"#;

    pub const KRON: &str = r#"{
        "name": "kron",
        "field": {"kind": "prime", "p": 2},
        "vertices": ["1", "2"],
        "arrows": [
            {"name": "a", "from": "1", "to": "2"},
            {"name": "b", "from": "1", "to": "2"}
        ],
        "relations": [],
        "universe": {"certified": false, "bound": [3, 3]}
    }"#;

    pub const LOOP2_RATIONAL: &str = r#"{
        "name": "loop2_rational",
        "field": {"kind": "rational"},
        "vertices": ["v"],
        "arrows": [{"name": "x", "from": "v", "to": "v"}],
        "relations": [[{"coeff": "1", "path": ["x", "x"]}]],
        "nilpotency_bound": 2
    }"#;

    pub fn build(json: &str) -> super::BasedAlgebra {
        let quiver = crate::quiver::parse_quiver_json(json)
            .unwrap()
            .resolve()
            .unwrap();
        super::build_path_algebra(&quiver).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::test_fixtures::*;
    use super::*;
    use crate::quiver::parse_quiver_json;

    #[test]
    fn a2_has_dimension_three() {
        let alg = build(A2);
        assert_eq!(alg.dim, 3);
        assert_eq!(alg.basis_labels, vec!["e_1", "e_2", "a"]);
        assert_eq!(alg.n(), 2);
        assert_eq!(alg.radical.len(), 1);
    }

    #[test]
    fn kronecker_has_dimension_four() {
        let alg = build(KRON);
        assert_eq!(alg.dim, 4);
        assert_eq!(alg.basis_labels, vec!["e_1", "e_2", "a", "b"]);
    }

    #[test]
    fn loop_quotient_has_dimension_two() {
        let alg = build(LOOP2);
        assert_eq!(alg.dim, 2);
        assert_eq!(alg.basis_labels, vec!["e_v", "x"]);
        // x * x = 0 in the quotient.
        let x = alg.basis_coords(1);
        assert!(alg.multiply(&x, &x).iter().all(Scalar::is_zero));
    }

    #[test]
    fn nak3_has_dimension_six_and_rad_square_zero() {
        let alg = build(NAK3);
        assert_eq!(alg.dim, 6);
        assert_eq!(alg.radical.len(), 3);
        for &r in &alg.radical {
            for &s in &alg.radical {
                let prod = alg.multiply(&alg.basis_coords(r), &alg.basis_coords(s));
                assert!(prod.iter().all(Scalar::is_zero));
            }
        }
    }

    #[test]
    fn free_loop_fails_certification() {
        let text = r#"{
            "field": {"kind": "prime", "p": 2},
            "vertices": ["v"],
            "arrows": [{"name": "x", "from": "v", "to": "v"}],
            "relations": [],
            "nilpotency_bound": 5
        }"#;
        let quiver = parse_quiver_json(text).unwrap().resolve().unwrap();
        let err = build_path_algebra(&quiver).unwrap_err();
        assert!(err.to_string().contains("not certified"));
    }

    #[test]
    fn composition_applies_first_path_first() {
        // In a3, the product b*a (apply a, then b) is the length-two
        // path while a*b vanishes.
        let alg = build(A3);
        let a = alg.basis_coords(3);
        let b = alg.basis_coords(4);
        let ba = alg.multiply(&b, &a);
        assert!(!ba.iter().all(Scalar::is_zero));
        assert_eq!(alg.basis_labels[5], "a*b");
        assert!(alg.multiply(&a, &b).iter().all(Scalar::is_zero));
        assert_eq!(ba, alg.basis_coords(5));
    }

    #[test]
    fn rational_field_parse_and_build() {
        let alg = build(LOOP2_RATIONAL);
        assert_eq!(alg.dim, 2);
        assert_eq!(alg.field, FieldSpec::Rational);
    }

    #[test]
    fn mixed_length_relation_reduces_longer_paths() {
        // Loop with x^2 = x^3, truncated at length 4. Chained
        // substitution makes every power from x^2 up reduce to zero
        // inside the truncation, so certification succeeds.
        let text = r#"{
            "field": {"kind": "rational"},
            "vertices": ["v"],
            "arrows": [{"name": "x", "from": "v", "to": "v"}],
            "relations": [[
                {"coeff": "1", "path": ["x", "x"]},
                {"coeff": "-1", "path": ["x", "x", "x"]}
            ]],
            "nilpotency_bound": 4
        }"#;
        let quiver = parse_quiver_json(text).unwrap().resolve().unwrap();
        let alg = build_path_algebra(&quiver).unwrap();
        // Truncation makes x nilpotent, so x^2 = x^3 = ... = 0 and only
        // {e, x} survive.
        assert_eq!(alg.dim, 2);
    }

    #[test]
    fn validate_rejects_broken_tables() {
        let mut alg = build(A2);
        // Corrupt one structure constant: a*a should stay zero.
        alg.mult[2 * 3 + 2] = alg.basis_coords(0);
        assert!(alg.validate().is_err());
    }

    #[test]
    fn empty_algebra_is_valid() {
        let alg = empty_algebra(FieldSpec::Prime { p: 2 }, "empty".into());
        assert!(alg.validate().is_ok());
        assert_eq!(alg.n(), 0);
    }
}
