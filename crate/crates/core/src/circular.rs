//! Circular compositions: cyclically ordered points with marked dividers.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::FacetComplex;
use crate::decomposition::{compositions, SignedDecomposition};
use crate::error::{Error, Result};
use crate::geometry::{chart_from_decomposition, Chart, GroundSet};
use crate::poly::binomial;
use crate::scalar::{Scalar, Sign};

/// Arc sizes `(m_1, …, m_l)` around a cycle, with a divider after each arc.
///
/// Points are labelled `0..n` going around the cycle, arc 1 first. The
/// dividerless case (`l = 0`, even `d`) stores a single arc holding all
/// points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircularComposition {
    d: usize,
    arcs: Vec<usize>,
    dividers: usize,
}

impl CircularComposition {
    pub fn new(d: usize, arcs: Vec<usize>) -> Result<Self> {
        let l = arcs.len();
        Self::with_dividers(d, arcs, l)
    }

    /// The composition of `n` points without dividers.
    pub fn dividerless(d: usize, n: usize) -> Result<Self> {
        Self::with_dividers(d, vec![n], 0)
    }

    pub fn with_dividers(d: usize, arcs: Vec<usize>, dividers: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidComposition("dimension must be positive".into()));
        }
        if arcs.is_empty() {
            return Err(Error::InvalidComposition("no arcs".into()));
        }
        if arcs.contains(&0) {
            return Err(Error::InvalidComposition("empty arc".into()));
        }
        if dividers == 0 {
            if arcs.len() != 1 {
                return Err(Error::InvalidComposition(
                    "a dividerless composition has a single arc".into(),
                ));
            }
        } else if dividers != arcs.len() {
            return Err(Error::InvalidComposition(format!(
                "{} arcs need {} dividers, got {dividers}",
                arcs.len(),
                arcs.len()
            )));
        }
        if dividers > d {
            return Err(Error::InvalidComposition(format!(
                "{dividers} dividers exceed dimension {d}"
            )));
        }
        if dividers % 2 != d % 2 {
            return Err(Error::InvalidComposition(format!(
                "{dividers} dividers and dimension {d} have different parities"
            )));
        }
        Ok(CircularComposition { d, arcs, dividers })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn arcs(&self) -> &[usize] {
        &self.arcs
    }

    /// Number of dividers `l`.
    pub fn dividers(&self) -> usize {
        self.dividers
    }

    pub fn n(&self) -> usize {
        self.arcs.iter().sum()
    }

    /// Label of the first point of each arc.
    pub fn arc_starts(&self) -> Vec<usize> {
        self.arcs
            .iter()
            .scan(0, |acc, &m| {
                let start = *acc;
                *acc += m;
                Some(start)
            })
            .collect()
    }

    /// Endpoint labels `(last of arc j, first of arc j + 1)` of every
    /// divider, cyclically.
    pub fn divider_pairs(&self) -> Vec<(usize, usize)> {
        if self.dividers == 0 {
            return Vec::new();
        }
        let n = self.n();
        let starts = self.arc_starts();
        (0..self.dividers)
            .map(|j| {
                let last = starts[j] + self.arcs[j] - 1;
                (last, (last + 1) % n)
            })
            .collect()
    }

    fn check_size(&self) -> Result<()> {
        if self.n() <= self.d {
            return Err(Error::Underdetermined {
                n: self.n(),
                d: self.d,
            });
        }
        Ok(())
    }
}

/// Wire form `{"d": 4, "arcs": [3, 4]}`, with `"dividers": 0` for the
/// dividerless case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionJson {
    pub d: usize,
    pub arcs: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dividers: Option<usize>,
}

impl From<&CircularComposition> for CompositionJson {
    fn from(value: &CircularComposition) -> Self {
        CompositionJson {
            d: value.d,
            arcs: value.arcs.clone(),
            dividers: (value.dividers == 0).then_some(0),
        }
    }
}

impl TryFrom<CompositionJson> for CircularComposition {
    type Error = Error;

    fn try_from(value: CompositionJson) -> Result<Self> {
        let l = value.dividers.unwrap_or(value.arcs.len());
        CircularComposition::with_dividers(value.d, value.arcs, l)
    }
}

/// The composition induced by a signed decomposition on the line, and the
/// map `τ` from line positions (0-based) to circle labels.
pub fn induce_composition(
    decomposition: &SignedDecomposition,
) -> Result<(CircularComposition, Vec<usize>)> {
    let d = decomposition.d();
    let k = decomposition.sign_changes();
    let sizes = decomposition.sizes();
    let n = decomposition.n();
    let identity: Vec<usize> = (0..n).collect();
    if k % 2 != d % 2 {
        return Ok((CircularComposition::new(d, sizes.to_vec())?, identity));
    }
    if k == 0 {
        return Ok((CircularComposition::dividerless(d, n)?, identity));
    }
    let mut arcs = sizes[1..].to_vec();
    *arcs.last_mut().expect("k ≥ 1") += sizes[0];
    let shift = sizes[0];
    let tau = (0..n).map(|p| (p + n - shift) % n).collect();
    Ok((CircularComposition::new(d, arcs)?, tau))
}

/// Dihedral normal form: the lexicographically smallest rotation or
/// reflection of the arc sequence.
pub fn canonical_arcs(c: &CircularComposition) -> CircularComposition {
    if c.dividers == 0 {
        return c.clone();
    }
    let l = c.arcs.len();
    let mut best = c.arcs.clone();
    let reversed: Vec<usize> = c.arcs.iter().rev().copied().collect();
    for seq in [&c.arcs, &reversed] {
        for r in 0..l {
            let rotated: Vec<usize> = seq[r..].iter().chain(&seq[..r]).copied().collect();
            if rotated < best {
                best = rotated;
            }
        }
    }
    CircularComposition {
        d: c.d,
        arcs: best,
        dividers: c.dividers,
    }
}

/// Facets satisfying the circular facet condition, with the number of
/// repeated sets met while enumerating.
pub fn enumerate_facets_circular_counted(c: &CircularComposition) -> Result<(FacetComplex, usize)> {
    c.check_size()?;
    let n = c.n();
    let pairs_needed = (c.d - c.dividers) / 2;
    let choices = divider_choices(c);
    let per_choice: Vec<Vec<Vec<usize>>> = choices
        .into_par_iter()
        .map(|s1| {
            let mut used = vec![false; n];
            for &v in &s1 {
                used[v] = true;
            }
            let mut out = Vec::new();
            let mut picked = Vec::with_capacity(pairs_needed);
            cycle_pairs(n, pairs_needed, 0, &mut used, &mut picked, &mut |pairs| {
                let mut facet = s1.clone();
                facet.extend(pairs.iter().flat_map(|&e| [e, (e + 1) % n]));
                facet.sort_unstable();
                out.push(facet);
            });
            out
        })
        .collect();
    let total: usize = per_choice.iter().map(Vec::len).sum();
    let distinct: BTreeSet<Vec<usize>> = per_choice.into_iter().flatten().collect();
    let repeats = total - distinct.len();
    Ok((
        FacetComplex::new(n, c.d, distinct.into_iter().collect())?,
        repeats,
    ))
}

/// Facets satisfying the circular facet condition.
pub fn enumerate_facets_circular(c: &CircularComposition) -> Result<FacetComplex> {
    enumerate_facets_circular_counted(c).map(|(f, _)| f)
}

/// All ways of taking one endpoint per divider with distinct points, in
/// lexicographic order of the choice sequence.
fn divider_choices(c: &CircularComposition) -> Vec<Vec<usize>> {
    fn go(pairs: &[(usize, usize)], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(&(a, b)) = pairs.get(cur.len()) else {
            out.push(cur.clone());
            return;
        };
        for v in [a, b] {
            if !cur.contains(&v) {
                cur.push(v);
                go(pairs, cur, out);
                cur.pop();
            }
        }
    }
    let pairs = c.divider_pairs();
    let mut out = Vec::new();
    go(&pairs, &mut Vec::with_capacity(pairs.len()), &mut out);
    out
}

/// Chooses `needed` disjoint cycle edges `{e, e + 1 mod n}` with `e ≥ from`
/// avoiding `used`, calling `emit` with the edge starts.
fn cycle_pairs(
    n: usize,
    needed: usize,
    from: usize,
    used: &mut [bool],
    picked: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if picked.len() == needed {
        emit(picked);
        return;
    }
    // a 2-cycle has a single edge
    let edges = if n == 2 { 1 } else { n };
    for e in from..edges {
        let f = (e + 1) % n;
        if used[e] || used[f] {
            continue;
        }
        used[e] = true;
        used[f] = true;
        picked.push(e);
        cycle_pairs(n, needed, e + 1, used, picked, emit);
        picked.pop();
        used[e] = false;
        used[f] = false;
    }
}

/// Labels that are vertices: every point unless there are `d` dividers, in
/// which case only divider endpoints.
pub fn vertex_set(c: &CircularComposition) -> Vec<usize> {
    if c.dividers < c.d {
        return (0..c.n()).collect();
    }
    let set: BTreeSet<usize> = c
        .divider_pairs()
        .into_iter()
        .flat_map(|(a, b)| [a, b])
        .collect();
    set.into_iter().collect()
}

/// Number of facets by the closed formula.
pub fn facet_count(c: &CircularComposition) -> BigUint {
    let d = c.d as i64;
    let l = c.dividers;
    if l == 0 {
        let n = c.n() as i64;
        let h = d / 2;
        return binomial(n - h, h) + binomial(n - 1 - h, h - 1);
    }
    let r = (c.d - l) / 2;
    let m: Vec<i64> = c.arcs.iter().map(|&x| x as i64).collect();
    let labellings = interlacing_labellings(l);
    let mut first = BigUint::zero();
    let mut second = BigUint::zero();
    for parts in weak_compositions(r, l) {
        let plain = |j: usize, shift: i64| binomial(m[j] - shift - parts[j] as i64, parts[j] as i64);
        let base: BigUint = (0..l).map(|j| plain(j, 1)).product();
        second += base;
        for labels in &labellings {
            let term: BigUint = labels
                .iter()
                .enumerate()
                .map(|(j, label)| match label {
                    Label::A => plain(j, 0),
                    Label::B => plain(j, 2),
                    Label::Neither => plain(j, 1),
                })
                .product();
            first += term;
        }
    }
    first + BigUint::from(2u32) * second
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    A,
    B,
    Neither,
}

/// Every assignment of `A`, `B` or neither to `1..=l` in which the labelled
/// positions alternate between `A` and `B` and both labels occur equally
/// often, at least once.
fn interlacing_labellings(l: usize) -> Vec<Vec<Label>> {
    let mut out = Vec::new();
    let total = 3usize.pow(l as u32);
    for code in 0..total {
        let mut x = code;
        let labels: Vec<Label> = (0..l)
            .map(|_| {
                let label = [Label::Neither, Label::A, Label::B][x % 3];
                x /= 3;
                label
            })
            .collect();
        let marked: Vec<Label> = labels.iter().copied().filter(|&t| t != Label::Neither).collect();
        let alternating = marked.windows(2).all(|w| w[0] != w[1]);
        if !marked.is_empty() && marked.len().is_multiple_of(2) && alternating {
            out.push(labels);
        }
    }
    out
}

/// All `(r_1, …, r_l)` of non-negative integers summing to `r`.
fn weak_compositions(r: usize, l: usize) -> Vec<Vec<usize>> {
    compositions(r + l, l)
        .into_iter()
        .map(|c| c.into_iter().map(|x| x - 1).collect())
        .collect()
}

/// A line configuration realising `c`: the points `1..=n` cut into arcs in
/// order, with a chart whose first interval is positive.
pub fn realize<T: Scalar>(c: &CircularComposition) -> Result<(GroundSet<T>, Chart<T>)> {
    let ground = GroundSet::integers(c.n())?;
    let decomposition = SignedDecomposition::new(c.arcs.clone(), Sign::Positive, c.d)?;
    let chart = chart_from_decomposition(&decomposition, &ground)?;
    Ok((ground, chart))
}

/// Every composition of `n` points in dimension `d`, one per dihedral class,
/// sorted by arcs within each divider count.
pub fn enumerate_compositions(d: usize, n: usize) -> Vec<CircularComposition> {
    let mut out = Vec::new();
    if d == 0 || n == 0 {
        return out;
    }
    if d.is_multiple_of(2) {
        out.push(CircularComposition::dividerless(d, n).expect("valid by construction"));
    }
    for l in (1..=d.min(n)).filter(|l| l % 2 == d % 2) {
        let classes: BTreeSet<Vec<usize>> = compositions(n, l)
            .into_iter()
            .map(|arcs| {
                let c = CircularComposition::new(d, arcs).expect("valid by construction");
                canonical_arcs(&c).arcs
            })
            .collect();
        out.extend(
            classes
                .into_iter()
                .map(|arcs| CircularComposition::new(d, arcs).expect("valid by construction")),
        );
    }
    out
}
