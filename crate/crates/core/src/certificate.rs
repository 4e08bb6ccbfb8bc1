//! Relabelling-invariant certificates of facet complexes.
//!
//! Vertices are canonically ordered by iterated partition refinement on the
//! vertex–facet incidence structure, then by backtracking over the first
//! non-singleton cell. Each discrete partition gives a relabelled sorted
//! facet list; the smallest one is the certificate. Automorphisms found when
//! two leaves agree prune equivalent branches.

use std::cmp::Ordering;
use std::fmt;

use crate::complex::FacetComplex;
use crate::error::{Error, Result};

/// Canonical byte encoding of a vertex-reduced facet complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate(Vec<u8>);

impl Certificate {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Certificate of `complex` after dropping labels not used by any facet.
pub fn certificate(complex: &FacetComplex) -> Result<Certificate> {
    if complex.is_empty() {
        return Err(Error::DegenerateComplex("no facets".into()));
    }
    let (reduced, _) = complex.restrict_to_vertices();
    let n = reduced.n_labels();
    if n > u16::MAX as usize || reduced.len() > u32::MAX as usize {
        return Err(Error::Domain("complex too large to encode".into()));
    }
    let labelling = canonical_labelling(&reduced);
    let code = relabelled(&reduced, &labelling);
    let mut bytes = Vec::with_capacity(8 + 2 * reduced.len() * reduced.d());
    bytes.extend_from_slice(&(n as u16).to_be_bytes());
    bytes.extend_from_slice(&(reduced.d() as u16).to_be_bytes());
    bytes.extend_from_slice(&(reduced.len() as u32).to_be_bytes());
    for facet in code {
        for v in facet {
            bytes.extend_from_slice(&(v as u16).to_be_bytes());
        }
    }
    Ok(Certificate(bytes))
}

/// A label map `labelling[v]` such that relabelled facet lists of
/// isomorphic complexes coincide. Every label must be a vertex.
pub fn canonical_labelling(complex: &FacetComplex) -> Vec<usize> {
    let search = Search::new(complex);
    let mut state = SearchState::default();
    let root = search.refine(vec![(0..complex.n_labels()).collect()]);
    search.explore(root, &mut Vec::new(), &mut state);
    state.best.expect("a complex with vertices has a leaf").1
}

fn relabelled(complex: &FacetComplex, labelling: &[usize]) -> Vec<Vec<usize>> {
    let mut facets: Vec<Vec<usize>> = complex
        .facets()
        .iter()
        .map(|f| {
            let mut g: Vec<usize> = f.iter().map(|&v| labelling[v]).collect();
            g.sort_unstable();
            g
        })
        .collect();
    facets.sort_unstable();
    facets
}

type Partition = Vec<Vec<usize>>;
type Code = Vec<Vec<usize>>;

struct Search<'a> {
    complex: &'a FacetComplex,
    incident: Vec<Vec<usize>>,
}

#[derive(Default)]
struct SearchState {
    first: Option<(Code, Vec<usize>)>,
    best: Option<(Code, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(complex: &'a FacetComplex) -> Self {
        let mut incident = vec![Vec::new(); complex.n_labels()];
        for (i, f) in complex.facets().iter().enumerate() {
            for &v in f {
                incident[v].push(i);
            }
        }
        Search { complex, incident }
    }

    /// Splits cells by the multiset of incident facets seen through the
    /// current cell indices until nothing changes.
    fn refine(&self, mut partition: Partition) -> Partition {
        let n = self.complex.n_labels();
        loop {
            let mut cell_of = vec![0usize; n];
            for (c, cell) in partition.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = c;
                }
            }
            let mut next: Partition = Vec::with_capacity(partition.len());
            for cell in &partition {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<Vec<usize>>, usize)> = cell
                    .iter()
                    .map(|&v| (self.signature(v, &cell_of), v))
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
            }
            if next.len() == partition.len() {
                return next;
            }
            partition = next;
        }
    }

    fn signature(&self, v: usize, cell_of: &[usize]) -> Vec<Vec<usize>> {
        let facets = self.complex.facets();
        let mut sig: Vec<Vec<usize>> = self.incident[v]
            .iter()
            .map(|&i| {
                let mut cells: Vec<usize> = facets[i]
                    .iter()
                    .filter(|&&u| u != v)
                    .map(|&u| cell_of[u])
                    .collect();
                cells.sort_unstable();
                cells
            })
            .collect();
        sig.sort_unstable();
        sig
    }

    fn explore(&self, partition: Partition, prefix: &mut Vec<usize>, state: &mut SearchState) {
        let Some(target) = partition.iter().position(|c| c.len() > 1) else {
            self.leaf(&partition, state);
            return;
        };
        let cell = partition[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if self.equivalent_to_explored(v, &explored, prefix, state) {
                continue;
            }
            let mut child = partition.clone();
            let rest: Vec<usize> = cell.iter().copied().filter(|&u| u != v).collect();
            child.splice(target..=target, [vec![v], rest]);
            let child = self.refine(child);
            prefix.push(v);
            self.explore(child, prefix, state);
            prefix.pop();
            explored.push(v);
        }
    }

    /// Whether some stored automorphism fixing `prefix` pointwise connects
    /// `v` with an explored sibling.
    fn equivalent_to_explored(
        &self,
        v: usize,
        explored: &[usize],
        prefix: &[usize],
        state: &SearchState,
    ) -> bool {
        if explored.is_empty() {
            return false;
        }
        let n = self.complex.n_labels();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for gamma in &state.automorphisms {
            if prefix.iter().all(|&p| gamma[p] == p) {
                for x in 0..n {
                    let a = find(&mut parent, x);
                    let b = find(&mut parent, gamma[x]);
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == root)
    }

    fn leaf(&self, partition: &Partition, state: &mut SearchState) {
        let n = self.complex.n_labels();
        let mut labelling = vec![0; n];
        for (c, cell) in partition.iter().enumerate() {
            labelling[cell[0]] = c;
        }
        let code = relabelled(self.complex, &labelling);
        let twin = [&state.first, &state.best]
            .into_iter()
            .flatten()
            .find(|known| known.0 == code)
            .map(|known| known.1.clone());
        if let Some(pi1) = twin {
            self.record_automorphism(&pi1, &labelling, state);
        }
        if state.first.is_none() {
            state.first = Some((code.clone(), labelling.clone()));
        }
        let better = match &state.best {
            None => true,
            Some((best, _)) => code.cmp(best) == Ordering::Less,
        };
        if better {
            state.best = Some((code, labelling));
        }
    }

    /// Stores `γ = π1⁻¹ ∘ π2` after checking that it preserves the facets.
    fn record_automorphism(&self, pi1: &[usize], pi2: &[usize], state: &mut SearchState) {
        let n = pi1.len();
        let mut inverse = vec![0; n];
        for (v, &label) in pi1.iter().enumerate() {
            inverse[label] = v;
        }
        let gamma: Vec<usize> = (0..n).map(|v| inverse[pi2[v]]).collect();
        if gamma.iter().enumerate().all(|(v, &g)| v == g) {
            return;
        }
        let preserved = self.complex.facets().iter().all(|f| {
            let image: Vec<usize> = f.iter().map(|&v| gamma[v]).collect();
            self.complex.contains(&image)
        });
        if preserved {
            state.automorphisms.push(gamma);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(n: usize, d: usize, facets: &[&[usize]]) -> FacetComplex {
        FacetComplex::new(n, d, facets.iter().map(|f| f.to_vec()).collect()).unwrap()
    }

    #[test]
    fn relabelled_copies_agree() {
        let square = complex(4, 2, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        let shuffled = square.relabel(&[2, 0, 3, 1], 4).unwrap();
        assert_eq!(certificate(&square).unwrap(), certificate(&shuffled).unwrap());
    }

    #[test]
    fn different_shapes_differ() {
        let square = complex(4, 2, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        let path = complex(4, 2, &[&[0, 1], &[1, 2], &[2, 3]]);
        let two_edges = complex(4, 2, &[&[0, 1], &[2, 3]]);
        let c = [&square, &path, &two_edges].map(|x| certificate(x).unwrap());
        assert_ne!(c[0], c[1]);
        assert_ne!(c[1], c[2]);
        assert_ne!(c[0], c[2]);
    }

    #[test]
    fn unused_labels_are_ignored() {
        let a = complex(3, 2, &[&[0, 1], &[1, 2], &[0, 2]]);
        let b = complex(7, 2, &[&[1, 4], &[4, 6], &[1, 6]]);
        assert_eq!(certificate(&a).unwrap(), certificate(&b).unwrap());
    }

    #[test]
    fn empty_complex_is_degenerate() {
        let e = FacetComplex::new(3, 2, vec![]).unwrap();
        assert!(matches!(certificate(&e), Err(Error::DegenerateComplex(_))));
    }

    #[test]
    fn header_layout() {
        let tri = complex(3, 2, &[&[0, 1], &[1, 2], &[0, 2]]);
        let hex = certificate(&tri).unwrap().to_hex();
        assert!(hex.starts_with("0003000200000003"), "{hex}");
    }

    #[test]
    fn regular_complex_with_large_group() {
        // boundary of the octahedron: every vertex looks alike
        let oct: Vec<Vec<usize>> = (0..8)
            .map(|mask: usize| (0..3).map(|i| 2 * i + ((mask >> i) & 1)).collect())
            .collect();
        let a = FacetComplex::new(6, 3, oct).unwrap();
        let b = a.relabel(&[5, 3, 1, 0, 2, 4], 6).unwrap();
        assert_eq!(certificate(&a).unwrap(), certificate(&b).unwrap());
    }
}
