#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use veronese::decomposition::SignedDecomposition;
use veronese::facets::s123_decompose;
use veronese::{Rational, Sign};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `n` distinct sorted rationals with small numerators and denominators.
pub fn random_ground(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let mut set = BTreeSet::new();
    while set.len() < n {
        set.insert(frac(rng.gen_range(-40..=40), rng.gen_range(1..=6)));
    }
    set.into_iter().collect()
}

pub fn random_decomposition(rng: &mut ChaCha8Rng, n: usize, d: usize) -> SignedDecomposition {
    let max_changes = d.min(n - 1);
    let k = rng.gen_range(0..=max_changes);
    let mut cuts: Vec<usize> = (1..n).collect();
    let mut chosen = Vec::new();
    for _ in 0..k {
        let i = rng.gen_range(0..cuts.len());
        chosen.push(cuts.swap_remove(i));
    }
    chosen.sort_unstable();
    let mut sizes = Vec::new();
    let mut prev = 0;
    for c in chosen.into_iter().chain([n]) {
        sizes.push(c - prev);
        prev = c;
    }
    let sign = if rng.gen_bool(0.5) {
        Sign::Positive
    } else {
        Sign::Negative
    };
    SignedDecomposition::new(sizes, sign, d).unwrap()
}

/// Facets accepted by the S1 ⊔ S2 ⊔ S3 decomposition, by exhaustive search
/// over all `d`-subsets.
pub fn s123_facets(decomposition: &SignedDecomposition) -> BTreeSet<Vec<usize>> {
    (0..decomposition.n())
        .combinations(decomposition.d())
        .filter(|s| s123_decompose(decomposition, s).unwrap().is_some())
        .collect()
}

/// Number of `(S1, S2, S3)` triples satisfying the three facet conditions
/// for `s` (0-based), found by trying every split.
pub fn count_s123_splits(decomposition: &SignedDecomposition, s: &[usize]) -> usize {
    let sizes = decomposition.sizes();
    let n = decomposition.n();
    let d = decomposition.d();
    let k = sizes.len() - 1;
    let set: BTreeSet<usize> = s.iter().copied().collect();
    let mut ends = Vec::new();
    let mut acc = 0;
    for &m in &sizes[..k] {
        acc += m;
        ends.push((acc - 1, acc));
    }
    let mut count = 0;
    for choice in 0..(1u32 << k) {
        let s1: Vec<usize> = ends
            .iter()
            .enumerate()
            .map(|(j, &(a, b))| if choice >> j & 1 == 0 { a } else { b })
            .collect();
        let s1_set: BTreeSet<usize> = s1.iter().copied().collect();
        if s1_set.len() != k || !s1_set.is_subset(&set) {
            continue;
        }
        let endpoints: Vec<usize> = [0, n - 1].into_iter().unique().collect();
        for s2 in endpoints.iter().copied().powerset() {
            if s2.iter().any(|p| !set.contains(p) || s1_set.contains(p)) {
                continue;
            }
            if (d - k) < s2.len() || (d - k - s2.len()) % 2 == 1 {
                continue;
            }
            let rest: Vec<usize> = set
                .iter()
                .copied()
                .filter(|p| !s1_set.contains(p) && !s2.contains(p))
                .collect();
            count += count_pairings(&rest);
        }
    }
    count
}

/// Ways to split sorted positions into disjoint pairs `(p, p + 1)`.
fn count_pairings(rest: &[usize]) -> usize {
    match rest {
        [] => 1,
        [a, b, tail @ ..] if a + 1 == *b => count_pairings(tail),
        _ => 0,
    }
}

/// Polynomial coefficients, constant term first, trailing zeros removed.
fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let factor = r.last().unwrap().clone() / lead.clone();
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].clone() - factor.clone() * c.clone();
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_gcd(a: Vec<Rational>, b: Vec<Rational>) -> Vec<Rational> {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Number of distinct roots on the projective line of the binary form
/// `Σ ξ_j x^{d−j} y^j`, through the square-free part of `Σ ξ_j z^j`.
pub fn distinct_projective_roots(xi: &[Rational]) -> usize {
    let d = xi.len() - 1;
    let f = trim(xi.to_vec());
    let deg = f.len() - 1;
    let at_infinity = usize::from(deg < d);
    if deg == 0 {
        return at_infinity;
    }
    let derivative: Vec<Rational> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.clone() * q(i as i64))
        .collect();
    let g = poly_gcd(f.clone(), derivative);
    let finite = deg - (g.len() - 1);
    finite + at_infinity
}

