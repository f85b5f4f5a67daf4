//! Construction of the module universe a run quantifies over.
//!
//! Over a finite field the universe is the exhaustive list of
//! indecomposables up to a per-vertex dimension bound; the fixture says
//! whether that bound captures every indecomposable (`certified`) or is
//! an honest slice. Over the rationals exhaustive enumeration is
//! impossible, so the universe is the standard family of projectives,
//! injectives, and simples, and is never certified.

use crate::algebra::BasedAlgebra;
use crate::config::Caps;
use crate::decomp::{are_isomorphic, enumerate_indecomposables};
use crate::error::{Error, Result};
use crate::module::{injective, projective, simple, Module};
use crate::stability::Level;
use std::sync::Arc;

/// A built universe plus the bound it was enumerated under. The bound
/// is empty over the rationals, where no enumeration happens.
#[derive(Clone, Debug)]
pub struct BuiltUniverse {
    pub level: Level,
    pub bound: Vec<usize>,
}

/// Build the quantification universe for an algebra, honoring fixture
/// metadata and an optional bound override.
///
/// Finite fields need a bound from the fixture or from the caller. A
/// caller override keeps the certified flag only when it dominates the
/// fixture bound componentwise, so enlarging a certified universe is
/// allowed but shrinking it demotes the run to slice semantics.
pub fn build_universe(
    algebra: &Arc<BasedAlgebra>,
    override_bound: Option<&[usize]>,
    caps: &Caps,
    jobs: usize,
) -> Result<BuiltUniverse> {
    let n = algebra.n();
    let fixture = algebra.quiver.as_ref().and_then(|q| q.universe.clone());

    if !algebra.field.is_finite() {
        if fixture.is_some() {
            return Err(Error::invalid(
                "universe metadata over the rationals is meaningless: exhaustive enumeration needs a finite field",
            ));
        }
        if override_bound.is_some() {
            return Err(Error::invalid(
                "a dimension bound over the rationals is meaningless: exhaustive enumeration needs a finite field",
            ));
        }
        let universe = standard_families(algebra, caps)?;
        return Ok(BuiltUniverse {
            level: Level {
                algebra: algebra.clone(),
                universe,
                certified: false,
            },
            bound: Vec::new(),
        });
    }

    let bound: Vec<usize> = match (override_bound, &fixture) {
        (Some(b), _) => {
            if b.len() != n {
                return Err(Error::invalid(format!(
                    "dimension bound has {} entries for {} vertices",
                    b.len(),
                    n
                )));
            }
            b.to_vec()
        }
        (None, Some(u)) => u.bound.clone(),
        (None, None) => {
            return Err(Error::invalid(
                "no enumeration bound: the input carries no universe block, pass --dim-bound",
            ))
        }
    };

    let certified = match &fixture {
        Some(u) => {
            u.certified
                && match override_bound {
                    Some(b) => b.iter().zip(&u.bound).all(|(x, y)| x >= y),
                    None => true,
                }
        }
        None => false,
    };

    let universe = enumerate_indecomposables(algebra, &bound, caps, jobs)?;
    Ok(BuiltUniverse {
        level: Level {
            algebra: algebra.clone(),
            universe,
            certified,
        },
        bound,
    })
}

/// Projectives, injectives, and simples, deduplicated up to
/// isomorphism and sorted by (total dimension, dimension vector).
pub fn standard_families(algebra: &Arc<BasedAlgebra>, caps: &Caps) -> Result<Vec<Module>> {
    let n = algebra.n();
    let mut found: Vec<Module> = Vec::new();
    let mut candidates = Vec::with_capacity(3 * n);
    for v in 0..n {
        candidates.push(simple(algebra, v));
        candidates.push(projective(algebra, v));
        candidates.push(injective(algebra, v));
    }
    for c in candidates {
        c.validate()?;
        let mut fresh = true;
        for old in &found {
            if are_isomorphic(old, &c, caps)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            found.push(c);
        }
    }
    found.sort_by_key(|m| (m.dim, m.dim_vector()));
    Ok(found)
}
