//! Counting combinatorial types per dimension and vertex count.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::{certificate, Certificate};
use crate::circular::{
    canonical_arcs, enumerate_compositions, enumerate_facets_circular, CircularComposition,
};
use crate::classify::{complex_is_k_neighbourly, cyclic_composition, is_stacked_family};
use crate::decomposition::compositions;
use crate::error::{Error, Result};

/// Type flags, each the disjunction over all compositions of the type.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeFlags {
    pub simplex: bool,
    pub cross: bool,
    pub stacked_family: bool,
    pub cyclic: bool,
    pub neighbourly: bool,
}

impl TypeFlags {
    fn merge(self, other: TypeFlags) -> TypeFlags {
        TypeFlags {
            simplex: self.simplex || other.simplex,
            cross: self.cross || other.cross,
            stacked_family: self.stacked_family || other.stacked_family,
            cyclic: self.cyclic || other.cyclic,
            neighbourly: self.neighbourly || other.neighbourly,
        }
    }
}

/// One combinatorial type with its first representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialType {
    pub representative: CircularComposition,
    pub certificate: Certificate,
    pub flags: TypeFlags,
    pub members: usize,
}

/// Every composition whose polytope has exactly `n_vertices` vertices, one
/// per dihedral class: all points when there are fewer than `d` dividers,
/// and arcs of size at most 2 when there are `d`.
pub fn type_members(d: usize, n_vertices: usize) -> Result<Vec<CircularComposition>> {
    if d == 0 {
        return Err(Error::Domain("dimension must be positive".into()));
    }
    if n_vertices <= d {
        return Err(Error::Underdetermined { n: n_vertices, d });
    }
    let mut members: Vec<CircularComposition> = enumerate_compositions(d, n_vertices)
        .into_iter()
        .filter(|c| c.dividers() < d)
        .collect();
    let mut capped = std::collections::BTreeSet::new();
    for arcs in compositions(n_vertices, d) {
        if arcs.iter().all(|&m| m <= 2) {
            let c = CircularComposition::new(d, arcs)?;
            capped.insert(canonical_arcs(&c));
        }
    }
    members.extend(capped);
    Ok(members)
}

/// Distinct combinatorial types of `d`-polytopes with `n_vertices` vertices,
/// sorted by certificate.
pub fn combinatorial_types(d: usize, n_vertices: usize) -> Result<Vec<CombinatorialType>> {
    let members = type_members(d, n_vertices)?;
    let cyclic = certificate(&enumerate_facets_circular(&cyclic_composition(d, n_vertices)?)?)?;
    let analysed = members
        .into_par_iter()
        .map(|c| {
            let facets = enumerate_facets_circular(&c)?;
            let cert = certificate(&facets)?;
            let vertices = facets.vertices().len();
            debug_assert_eq!(vertices, n_vertices);
            let flags = TypeFlags {
                simplex: vertices == d + 1,
                cross: c.dividers() == d && vertices == 2 * d && facets.len() == 1 << d,
                stacked_family: d >= 3 && is_stacked_family(&c)?,
                cyclic: cert == cyclic,
                neighbourly: d < 2 || complex_is_k_neighbourly(&facets, d / 2),
            };
            Ok((c, cert, flags))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut types: BTreeMap<Certificate, CombinatorialType> = BTreeMap::new();
    for (c, cert, flags) in analysed {
        types
            .entry(cert.clone())
            .and_modify(|t| {
                t.flags = t.flags.merge(flags);
                t.members += 1;
            })
            .or_insert(CombinatorialType {
                representative: c,
                certificate: cert,
                flags,
                members: 1,
            });
    }
    Ok(types.into_values().collect())
}

/// Number of combinatorial types of `d`-polytopes with `n_vertices`
/// vertices.
pub fn count_types(d: usize, n_vertices: usize) -> Result<usize> {
    Ok(combinatorial_types(d, n_vertices)?.len())
}

/// A report row for one `(d, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub d: usize,
    pub n: usize,
    pub count: usize,
    pub types: Vec<TypeEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeEntry {
    pub arcs: Vec<usize>,
    pub dividers: usize,
    pub certificate: String,
    pub flags: TypeFlags,
}

/// Rows for every `d` in `d_range` and `n` in `n_range` with `n > d`, in
/// increasing `(d, n)` order.
pub fn table_report(
    d_range: impl IntoIterator<Item = usize>,
    n_range: impl IntoIterator<Item = usize> + Clone,
) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for d in d_range {
        for n in n_range.clone().into_iter().filter(|&n| n > d) {
            let types = combinatorial_types(d, n)?;
            rows.push(TableRow {
                d,
                n,
                count: types.len(),
                types: types
                    .into_iter()
                    .map(|t| TypeEntry {
                        arcs: t.representative.arcs().to_vec(),
                        dividers: t.representative.dividers(),
                        certificate: t.certificate.to_hex(),
                        flags: t.flags,
                    })
                    .collect(),
            });
        }
    }
    Ok(rows)
}

/// `d,n,count` lines with a header.
pub fn report_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("d,n,count\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.d, r.n, r.count));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(count_types(3, 4).unwrap(), 1);
        assert_eq!(count_types(3, 6).unwrap(), 2);
        assert_eq!(count_types(4, 6).unwrap(), 2);
        assert_eq!(count_types(4, 8).unwrap(), 6);
    }

    #[test]
    fn members_cover_both_branches() {
        let m = type_members(4, 6).unwrap();
        assert!(m.iter().any(|c| c.dividers() == 4));
        assert!(m.iter().all(|c| c.dividers() < 4 || c.arcs().iter().all(|&a| a <= 2)));
        assert!(matches!(type_members(4, 4), Err(Error::Underdetermined { .. })));
    }

    #[test]
    fn flags_in_dimension_three() {
        let types = combinatorial_types(3, 6).unwrap();
        assert!(types.iter().any(|t| t.flags.cross && !t.flags.cyclic));
        assert!(types.iter().any(|t| t.flags.cyclic && !t.flags.cross));
    }

    #[test]
    fn csv_mirror() {
        let rows = table_report(3..=3, 4..=6).unwrap();
        assert_eq!(report_csv(&rows), "d,n,count\n3,4,1\n3,5,1\n3,6,2\n");
    }
}
