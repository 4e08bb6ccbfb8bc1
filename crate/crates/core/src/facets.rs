//! Facets of line configurations without coordinates: σ-parity alternating
//! complements and the `S = S1 ⊔ S2 ⊔ S3` decomposition.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::complex::FacetComplex;
use crate::decomposition::{IndexedDecomposition, SignedDecomposition};
use crate::error::{Error, Result};

/// Whether the 1-based positions `l` form a σ-parity alternating sequence:
/// consecutive entries share a sign exactly when their parities differ.
pub fn is_sigma_pa(decomposition: &SignedDecomposition, l: &[usize]) -> Result<bool> {
    let n = decomposition.n();
    if let Some(&bad) = l.iter().find(|&&p| p == 0 || p > n) {
        return Err(Error::Index {
            index: bad,
            limit: n,
        });
    }
    if l.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(format!(
            "sequence {l:?} is not strictly increasing"
        )));
    }
    let ix = decomposition.indexed();
    Ok(l.windows(2).all(|w| compatible(&ix, w[0], w[1])))
}

fn compatible(ix: &IndexedDecomposition, a: usize, b: usize) -> bool {
    (ix.sign_at(a) == ix.sign_at(b)) == ((a + b) % 2 == 1)
}

/// Facets as complements of σ-parity alternating sequences of length `n − d`.
pub fn enumerate_facets_line(decomposition: &SignedDecomposition) -> Result<FacetComplex> {
    let n = decomposition.n();
    let d = decomposition.d();
    if n <= d {
        return Err(Error::Underdetermined { n, d });
    }
    let ix = decomposition.indexed();
    let m = n - d;
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(m);
    extend(&ix, n, m, &mut seq, &mut out);
    let facets = out
        .into_iter()
        .map(|l: Vec<usize>| {
            let mut keep = l.into_iter().peekable();
            (1..=n)
                .filter(|p| {
                    if keep.peek() == Some(p) {
                        keep.next();
                        false
                    } else {
                        true
                    }
                })
                .map(|p| p - 1)
                .collect()
        })
        .collect();
    FacetComplex::new(n, d, facets)
}

fn extend(
    ix: &IndexedDecomposition,
    n: usize,
    m: usize,
    seq: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if seq.len() == m {
        out.push(seq.clone());
        return;
    }
    let remaining = m - seq.len();
    let lo = seq.last().map_or(1, |&p| p + 1);
    for next in lo..=n + 1 - remaining {
        if seq.last().is_none_or(|&p| compatible(ix, p, next)) {
            seq.push(next);
            extend(ix, n, m, seq, out);
            seq.pop();
        }
    }
}

/// A facet split as `S1 ⊔ S2 ⊔ S3`, in 0-based positions.
///
/// `s1[j]` is the point chosen on divider `j + 1`; `s3` lists consecutive
/// pairs in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct S123 {
    #[serde(rename = "S1")]
    pub s1: Vec<usize>,
    #[serde(rename = "S2")]
    pub s2: Vec<usize>,
    #[serde(rename = "S3")]
    pub s3: Vec<[usize; 2]>,
}

/// Builds the decomposition of `subset` (0-based positions) interval by
/// interval and returns it if it satisfies the three facet conditions.
///
/// A result is returned exactly when `subset` spans a facet.
pub fn s123_decompose(decomposition: &SignedDecomposition, subset: &[usize]) -> Result<Option<S123>> {
    let d = decomposition.d();
    let n = decomposition.n();
    if subset.len() != d {
        return Err(Error::Arity {
            expected: d,
            got: subset.len(),
        });
    }
    let s: BTreeSet<usize> = subset.iter().map(|&p| p + 1).collect();
    if s.len() != d {
        return Err(Error::Precondition(format!(
            "subset {subset:?} repeats a position"
        )));
    }
    if let Some(&bad) = subset.iter().find(|&&p| p >= n) {
        return Err(Error::Index {
            index: bad,
            limit: n,
        });
    }
    let ix = decomposition.indexed();
    let k = ix.k();

    let mut chosen: Vec<Option<usize>> = vec![None; k + 1];
    let mut s2 = BTreeSet::new();
    for run in maximal_runs(&s) {
        split_run(&ix, &run, &mut chosen, &mut s2);
    }

    let Some(s1) = chosen[1..].iter().copied().collect::<Option<Vec<usize>>>() else {
        return Ok(None);
    };
    let s1_set: BTreeSet<usize> = s1.iter().copied().collect();
    if s1_set.len() != k || !s1_set.is_subset(&s) {
        return Ok(None);
    }
    if s2.iter().any(|p| s1_set.contains(p)) || (d - k).checked_sub(s2.len()).is_none_or(|r| r % 2 == 1) {
        return Ok(None);
    }
    let rest: Vec<usize> = s
        .iter()
        .copied()
        .filter(|p| !s1_set.contains(p) && !s2.contains(p))
        .collect();
    let Some(s3) = consecutive_pairs(&rest) else {
        return Ok(None);
    };
    Ok(Some(S123 {
        s1: s1.into_iter().map(|p| p - 1).collect(),
        s2: s2.into_iter().map(|p| p - 1).collect(),
        s3: s3.into_iter().map(|[a, b]| [a - 1, b - 1]).collect(),
    }))
}

/// Splits `s` (sorted 1-based positions) into maximal runs of consecutive
/// positions.
/// Facets found by testing every `d`-subset with [`s123_decompose`].
pub fn enumerate_facets_s123(decomposition: &SignedDecomposition) -> Result<FacetComplex> {
    let mut facets = Vec::new();
    for s in (0..decomposition.n()).combinations(decomposition.d()) {
        if s123_decompose(decomposition, &s)?.is_some() {
            facets.push(s);
        }
    }
    FacetComplex::new(decomposition.n(), decomposition.d(), facets)
}

fn maximal_runs(s: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut runs: Vec<Vec<usize>> = Vec::new();
    for &p in s {
        match runs.last_mut() {
            Some(run) if *run.last().expect("runs are nonempty") + 1 == p => run.push(p),
            _ => runs.push(vec![p]),
        }
    }
    runs
}

/// Chooses the divider points and end points contributed by one maximal run.
fn split_run(
    ix: &IndexedDecomposition,
    run: &[usize],
    chosen: &mut [Option<usize>],
    s2: &mut BTreeSet<usize>,
) {
    let k = ix.k();
    let n = ix.n();
    let lo = run[0];
    let hi = *run.last().expect("runs are nonempty");
    let in_run = |p: usize| p >= lo && p <= hi;
    let dividers: Vec<usize> = (1..=k)
        .filter(|&j| {
            let (a, b) = ix.divider(j);
            in_run(a) || in_run(b)
        })
        .collect();
    // |J ∩ I_j ∖ excluded|
    let count_in = |j: usize, excluded: Option<usize>| {
        (ix.first(j)..=ix.last(j))
            .filter(|&p| in_run(p) && Some(p) != excluded)
            .count()
    };
    let mut local = Vec::with_capacity(dividers.len());
    if lo != 1 {
        let mut prev = None;
        for &j in &dividers {
            let pick = if count_in(j, prev) % 2 == 1 {
                ix.last(j)
            } else {
                ix.first(j + 1)
            };
            chosen[j] = Some(pick);
            local.push(pick);
            prev = Some(pick);
        }
        if hi == n {
            let left = (ix.first(k + 1)..=n)
                .filter(|&p| in_run(p) && !local.contains(&p))
                .count();
            if left % 2 == 1 {
                s2.insert(n);
            }
        }
    } else {
        let mut next = None;
        for &j in dividers.iter().rev() {
            let pick = if count_in(j + 1, next) % 2 == 1 {
                ix.first(j + 1)
            } else {
                ix.last(j)
            };
            chosen[j] = Some(pick);
            local.push(pick);
            next = Some(pick);
        }
        let left = (1..=ix.last(1))
            .filter(|&p| in_run(p) && !local.contains(&p))
            .count();
        if left % 2 == 1 {
            s2.insert(1);
        }
    }
}

/// Pairs up sorted positions as `(p, p + 1)`, if possible.
fn consecutive_pairs(sorted: &[usize]) -> Option<Vec<[usize; 2]>> {
    if sorted.len() % 2 == 1 {
        return None;
    }
    sorted
        .chunks(2)
        .map(|c| (c[0] + 1 == c[1]).then_some([c[0], c[1]]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Sign;

    fn dec(sizes: &[usize], sign: Sign, d: usize) -> SignedDecomposition {
        SignedDecomposition::new(sizes.to_vec(), sign, d).unwrap()
    }

    /// The 12 facets of the two-interval example, 1-based.
    const EXAMPLE_FACETS: [[usize; 4]; 12] = [
        [4, 5, 6, 7],
        [3, 5, 6, 7],
        [3, 4, 5, 7],
        [2, 3, 4, 7],
        [1, 4, 6, 7],
        [1, 4, 5, 6],
        [1, 3, 6, 7],
        [1, 3, 5, 6],
        [1, 3, 4, 5],
        [1, 2, 4, 7],
        [1, 2, 3, 7],
        [1, 2, 3, 4],
    ];

    #[test]
    fn sigma_pa_examples() {
        let d = dec(&[3, 4], Sign::Positive, 4);
        assert!(is_sigma_pa(&d, &[1, 2, 3]).unwrap());
        assert!(!is_sigma_pa(&d, &[4, 6, 7]).unwrap());
        assert!(matches!(is_sigma_pa(&d, &[0, 2]), Err(Error::Index { .. })));
        assert!(matches!(is_sigma_pa(&d, &[2, 8]), Err(Error::Index { .. })));
        let trivial = dec(&[6], Sign::Positive, 4);
        assert!(is_sigma_pa(&trivial, &[1, 4]).unwrap());
        assert!(!is_sigma_pa(&trivial, &[1, 3]).unwrap());
    }

    #[test]
    fn example_facets_from_parity() {
        let f = enumerate_facets_line(&dec(&[3, 4], Sign::Positive, 4)).unwrap();
        let expected: BTreeSet<Vec<usize>> = EXAMPLE_FACETS
            .iter()
            .map(|f| f.iter().map(|p| p - 1).collect())
            .collect();
        assert_eq!(f.facets().iter().cloned().collect::<BTreeSet<_>>(), expected);
    }

    #[test]
    fn cyclic_counts() {
        assert_eq!(enumerate_facets_line(&dec(&[7], Sign::Positive, 4)).unwrap().len(), 14);
        assert!(matches!(
            enumerate_facets_line(&dec(&[4], Sign::Positive, 4)),
            Err(Error::Underdetermined { n: 4, d: 4 })
        ));
    }

    #[test]
    fn s123_examples() {
        let d = dec(&[3, 4], Sign::Positive, 4);
        let got = s123_decompose(&d, &[3, 4, 5, 6]).unwrap().unwrap();
        assert_eq!(got.s1, vec![3]);
        assert_eq!(got.s2, vec![6]);
        assert_eq!(got.s3, vec![[4, 5]]);
        assert_eq!(s123_decompose(&d, &[0, 1, 2, 4]).unwrap(), None);

        let even = dec(&[8], Sign::Positive, 4);
        let got = s123_decompose(&even, &[1, 2, 4, 5]).unwrap().unwrap();
        assert!(got.s1.is_empty() && got.s2.is_empty());
        assert_eq!(got.s3, vec![[1, 2], [4, 5]]);
        assert!(matches!(
            s123_decompose(&even, &[1, 2, 4]),
            Err(Error::Arity { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn s123_agrees_with_parity_on_the_example() {
        let d = dec(&[3, 4], Sign::Positive, 4);
        let facets = enumerate_facets_line(&d).unwrap();
        let mut accepted = 0;
        for s in (0..7usize).combinations(4) {
            let ok = s123_decompose(&d, &s).unwrap().is_some();
            assert_eq!(ok, facets.contains(&s), "{s:?}");
            accepted += ok as usize;
        }
        assert_eq!(accepted, 12);
        assert_eq!(enumerate_facets_s123(&d).unwrap(), facets);
    }

    #[test]
    fn runs_and_pairs() {
        let s: BTreeSet<usize> = [1, 2, 4, 6, 7, 8].into_iter().collect();
        assert_eq!(maximal_runs(&s), vec![vec![1, 2], vec![4], vec![6, 7, 8]]);
        assert_eq!(consecutive_pairs(&[2, 3, 7, 8]), Some(vec![[2, 3], [7, 8]]));
        assert_eq!(consecutive_pairs(&[2, 4]), None);
        assert_eq!(consecutive_pairs(&[2]), None);
    }
}
