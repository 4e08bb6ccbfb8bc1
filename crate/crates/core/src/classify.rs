//! Recognisers for named combinatorial types of circular compositions.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::certificate;
use crate::circular::{
    canonical_arcs, enumerate_facets_circular, facet_count, induce_composition, vertex_set,
    CircularComposition,
};
use crate::complex::FacetComplex;
use crate::decomposition::SignedDecomposition;
use crate::error::{Error, Result};
use crate::poly::binomial;
use crate::scalar::Sign;

/// Whether the polytope has exactly `d + 1` vertices.
pub fn is_simplex(c: &CircularComposition) -> Result<bool> {
    check(c)?;
    Ok(vertex_set(c).len() == c.d() + 1)
}

/// Whether the facets are exactly the choices of one endpoint per divider
/// over `d` disjoint dividers.
pub fn is_cross_polytope(c: &CircularComposition) -> Result<bool> {
    check(c)?;
    if c.dividers() != c.d() || vertex_set(c).len() != 2 * c.d() {
        return Ok(false);
    }
    let facets = enumerate_facets_circular(c)?;
    let pairs = c.divider_pairs();
    let choices: BTreeSet<Vec<usize>> = pairs
        .iter()
        .map(|&(a, b)| [a, b])
        .multi_cartesian_product()
        .map(|mut f| {
            f.sort_unstable();
            f
        })
        .collect();
    Ok(facets.facets().iter().cloned().collect::<BTreeSet<_>>() == choices)
}

/// The composition induced by the line pattern `(1, …, 1, n − d + 3)` with
/// `d − 2` intervals.
pub fn stacked_pattern(d: usize, n: usize) -> Result<CircularComposition> {
    if d < 3 {
        return Err(Error::Domain(format!("stacked family needs d ≥ 3, got {d}")));
    }
    if n < d + 1 {
        return Err(Error::Underdetermined { n, d });
    }
    let mut sizes = vec![1; d - 3];
    sizes.push(n - (d - 3));
    let line = SignedDecomposition::new(sizes, Sign::Positive, d)?;
    Ok(induce_composition(&line)?.0)
}

/// `(d − 1) n − (d + 1)(d − 2)`.
pub fn stacked_facet_count(d: usize, n: usize) -> BigUint {
    BigUint::from((d - 1) * n - (d + 1) * (d - 2))
}

/// Whether `c` belongs to the stacked family, up to rotation and reflection.
pub fn is_stacked_family(c: &CircularComposition) -> Result<bool> {
    check(c)?;
    let pattern = stacked_pattern(c.d(), c.n())?;
    if pattern.dividers() != c.dividers() || canonical_arcs(&pattern) != canonical_arcs(c) {
        return Ok(false);
    }
    let count = facet_count(c);
    if count != stacked_facet_count(c.d(), c.n()) {
        return Err(Error::Precondition(format!(
            "stacked pattern {:?} has {count} facets",
            c.arcs()
        )));
    }
    Ok(true)
}

/// Whether every `k`-subset of vertices lies in a facet.
pub fn is_k_neighbourly(c: &CircularComposition, k: usize) -> Result<bool> {
    check(c)?;
    if k == 0 || k > c.d() / 2 {
        return Err(Error::Domain(format!(
            "neighbourliness order {k} outside 1..={}",
            c.d() / 2
        )));
    }
    let facets = enumerate_facets_circular(c)?;
    Ok(complex_is_k_neighbourly(&facets, k))
}

/// Whether every `k`-subset of the vertices of `complex` lies in a facet.
pub fn complex_is_k_neighbourly(complex: &FacetComplex, k: usize) -> bool {
    let faces: BTreeSet<Vec<usize>> = complex
        .facets()
        .par_iter()
        .flat_map_iter(|f| f.iter().copied().combinations(k))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let v = complex.vertices().len();
    BigUint::from(faces.len()) == binomial(v as i64, k as i64)
}

/// The cyclic polytope's composition on `n` points in dimension `d`.
pub fn cyclic_composition(d: usize, n: usize) -> Result<CircularComposition> {
    if d.is_multiple_of(2) {
        CircularComposition::dividerless(d, n)
    } else {
        CircularComposition::new(d, vec![n])
    }
}

/// Whether `c` is combinatorially a cyclic polytope on its vertices.
pub fn is_cyclic_type(c: &CircularComposition) -> Result<bool> {
    check(c)?;
    let facets = enumerate_facets_circular(c)?;
    let cyclic = cyclic_composition(c.d(), facets.vertices().len())?;
    Ok(certificate(&facets)? == certificate(&enumerate_facets_circular(&cyclic)?)?)
}

fn check(c: &CircularComposition) -> Result<()> {
    if c.n() <= c.d() {
        return Err(Error::Underdetermined { n: c.n(), d: c.d() });
    }
    Ok(())
}

/// Summary of the recognisers for one composition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub vertices: usize,
    pub facets: usize,
    pub simplex: bool,
    pub cross: bool,
    pub stacked_family: bool,
    pub cyclic: bool,
    pub neighbourly: bool,
}

/// Runs every recogniser. Below dimension 3 the stacked flag is false, and
/// below dimension 2 neighbourliness holds vacuously.
pub fn classify(c: &CircularComposition) -> Result<Classification> {
    check(c)?;
    let facets = enumerate_facets_circular(c)?;
    let vertices = vertex_set(c).len();
    let stacked_family = if c.d() >= 3 {
        is_stacked_family(c)?
    } else {
        false
    };
    let neighbourly = c.d() < 2 || complex_is_k_neighbourly(&facets, c.d() / 2);
    Ok(Classification {
        vertices,
        facets: facets.len(),
        simplex: vertices == c.d() + 1,
        cross: is_cross_polytope(c)?,
        stacked_family,
        cyclic: is_cyclic_type(c)?,
        neighbourly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(d: usize, arcs: &[usize]) -> CircularComposition {
        CircularComposition::new(d, arcs.to_vec()).unwrap()
    }

    #[test]
    fn simplex_examples() {
        assert!(is_simplex(&comp(4, &[1, 1, 1, 5])).unwrap());
        assert!(is_simplex(&CircularComposition::dividerless(4, 5).unwrap()).unwrap());
        assert!(!is_simplex(&comp(4, &[3, 4])).unwrap());
    }

    #[test]
    fn cross_examples() {
        assert!(is_cross_polytope(&comp(4, &[2, 3, 2, 3])).unwrap());
        assert_eq!(enumerate_facets_circular(&comp(4, &[2, 3, 2, 3])).unwrap().len(), 16);
        assert!(is_cross_polytope(&comp(3, &[2, 2, 2])).unwrap());
        assert!(!is_cross_polytope(&comp(3, &[1, 2, 2])).unwrap());
    }

    #[test]
    fn stacked_examples() {
        assert!(is_stacked_family(&comp(4, &[1, 9])).unwrap());
        assert!(is_stacked_family(&comp(4, &[9, 1])).unwrap());
        assert_eq!(facet_count(&comp(4, &[1, 9])), BigUint::from(20u32));
        assert!(!is_stacked_family(&CircularComposition::dividerless(4, 8).unwrap()).unwrap());
        assert!(matches!(
            is_stacked_family(&comp(2, &[1, 4])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn neighbourly_examples() {
        assert!(is_k_neighbourly(&CircularComposition::dividerless(4, 9).unwrap(), 2).unwrap());
        assert!(is_k_neighbourly(&comp(5, &[9]), 2).unwrap());
        assert!(!is_k_neighbourly(&comp(4, &[3, 4]), 2).unwrap());
        assert!(is_k_neighbourly(&comp(4, &[2, 4]), 2).unwrap());
        assert!(matches!(is_k_neighbourly(&comp(4, &[2, 4]), 3), Err(Error::Domain(_))));
        assert!(matches!(is_k_neighbourly(&comp(4, &[2, 4]), 0), Err(Error::Domain(_))));
    }

    #[test]
    fn cyclic_examples() {
        assert!(is_cyclic_type(&comp(3, &[7])).unwrap());
        assert!(is_cyclic_type(&comp(4, &[2, 4])).unwrap());
        assert!(!is_cyclic_type(&comp(4, &[3, 3])).unwrap());
        assert!(is_cyclic_type(&comp(3, &[1, 2, 2])).unwrap());
    }

    #[test]
    fn summary() {
        let c = classify(&comp(4, &[3, 4])).unwrap();
        assert_eq!((c.vertices, c.facets), (7, 12));
        assert!(!c.simplex && !c.cross && !c.cyclic && !c.neighbourly && !c.stacked_family);
    }
}
