use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A pure simplicial complex given by its facets.
///
/// Every facet is a sorted `d`-subset of `0..n_labels`; facets are distinct
/// and kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FacetComplex {
    n_labels: usize,
    d: usize,
    facets: Vec<Vec<usize>>,
}

impl FacetComplex {
    pub fn new(n_labels: usize, d: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for mut facet in facets {
            facet.sort_unstable();
            if facet.len() != d {
                return Err(Error::Arity {
                    expected: d,
                    got: facet.len(),
                });
            }
            if facet.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Precondition(format!(
                    "facet {facet:?} repeats a label"
                )));
            }
            if let Some(&bad) = facet.iter().find(|&&v| v >= n_labels) {
                return Err(Error::Index {
                    index: bad,
                    limit: n_labels,
                });
            }
            set.insert(facet);
        }
        Ok(FacetComplex {
            n_labels,
            d,
            facets: set.into_iter().collect(),
        })
    }

    pub fn n_labels(&self) -> usize {
        self.n_labels
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn contains(&self, facet: &[usize]) -> bool {
        let mut f = facet.to_vec();
        f.sort_unstable();
        self.facets.binary_search(&f).is_ok()
    }

    /// Labels that appear in at least one facet, ascending.
    pub fn vertices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.facets.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    /// Applies `map[old] = new` to every label.
    pub fn relabel(&self, map: &[usize], n_labels: usize) -> Result<Self> {
        let facets = self
            .facets
            .iter()
            .map(|f| f.iter().map(|&v| map[v]).collect())
            .collect();
        FacetComplex::new(n_labels, self.d, facets)
    }

    /// Drops labels not used by any facet and compacts the rest, preserving
    /// their order. Returns the reduced complex and the kept labels.
    pub fn restrict_to_vertices(&self) -> (FacetComplex, Vec<usize>) {
        let kept = self.vertices();
        let mut map = vec![usize::MAX; self.n_labels];
        for (new, &old) in kept.iter().enumerate() {
            map[old] = new;
        }
        let reduced = self
            .relabel(&map, kept.len())
            .expect("compaction keeps facets valid");
        (reduced, kept)
    }
}

/// Wire form `{"facets": [[…], …]}`; `n_labels` and `d` are optional on
/// input and inferred from the facets when absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_labels: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub facets: Vec<Vec<usize>>,
}

impl FacetsJson {
    /// The bare `{"facets": …}` output form.
    pub fn bare(complex: &FacetComplex) -> Self {
        FacetsJson {
            n_labels: None,
            d: None,
            facets: complex.facets.clone(),
        }
    }
}

impl TryFrom<FacetsJson> for FacetComplex {
    type Error = Error;

    fn try_from(value: FacetsJson) -> Result<Self> {
        let d = match (value.d, value.facets.first()) {
            (Some(d), _) => d,
            (None, Some(f)) => f.len(),
            (None, None) => {
                return Err(Error::DegenerateComplex(
                    "empty facet list without an explicit dimension".into(),
                ))
            }
        };
        let n_labels = value.n_labels.unwrap_or_else(|| {
            value
                .facets
                .iter()
                .flatten()
                .max()
                .map_or(0, |&m| m + 1)
        });
        FacetComplex::new(n_labels, d, value.facets)
    }
}
