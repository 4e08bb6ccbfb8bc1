//! Signed decompositions of an ordered ground set into sign-alternating runs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Sign;

/// Sizes of consecutive runs `I_1, …, I_{k+1}` with alternating signs.
///
/// `k = sizes.len() - 1` is the number of sign changes and never exceeds
/// `d`. This is the combinatorial surrogate of a chamber.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedDecomposition {
    sizes: Vec<usize>,
    first_sign: Sign,
    d: usize,
}

impl SignedDecomposition {
    pub fn new(sizes: Vec<usize>, first_sign: Sign, d: usize) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidDecomposition("no intervals".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidDecomposition("empty interval".into()));
        }
        if first_sign.is_zero() {
            return Err(Error::InvalidDecomposition("interval sign must be ±1".into()));
        }
        if sizes.len() - 1 > d {
            return Err(Error::InvalidDecomposition(format!(
                "{} sign changes exceed dimension {d}",
                sizes.len() - 1
            )));
        }
        Ok(SignedDecomposition {
            sizes,
            first_sign,
            d,
        })
    }

    /// The decomposition with a single interval of positive sign.
    pub fn trivial(n: usize, d: usize) -> Result<Self> {
        Self::new(vec![n], Sign::Positive, d)
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn first_sign(&self) -> Sign {
        self.first_sign
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Total number of points.
    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Number of sign changes `k`.
    pub fn sign_changes(&self) -> usize {
        self.sizes.len() - 1
    }

    /// Sign of interval `j` (0-based).
    pub fn interval_sign(&self, j: usize) -> Sign {
        if j.is_multiple_of(2) {
            self.first_sign
        } else {
            -self.first_sign
        }
    }

    /// Same partition, opposite signs.
    pub fn flipped(&self) -> Self {
        SignedDecomposition {
            sizes: self.sizes.clone(),
            first_sign: -self.first_sign,
            d: self.d,
        }
    }

    pub fn indexed(&self) -> IndexedDecomposition {
        IndexedDecomposition::new(self)
    }

    /// Every signed decomposition of `n` ordered points with at most `d`
    /// sign changes, in a fixed order.
    pub fn enumerate_all(n: usize, d: usize) -> Vec<SignedDecomposition> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        for parts in 1..=(d + 1).min(n) {
            for sizes in compositions(n, parts) {
                for sign in [Sign::Positive, Sign::Negative] {
                    out.push(SignedDecomposition {
                        sizes: sizes.clone(),
                        first_sign: sign,
                        d,
                    });
                }
            }
        }
        out
    }
}

/// All compositions of `n` into exactly `parts` positive parts, in
/// lexicographic order.
pub fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 1..=rest.saturating_sub(parts - 1) {
            cur.push(first);
            go(rest - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 || n < parts {
        return out;
    }
    go(n, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// A signed decomposition together with the double indexing `t_{j,i}`.
///
/// Positions are 1-based here because the parity conditions on facet
/// complements are stated for 1-based sequences.
#[derive(Debug, Clone)]
pub struct IndexedDecomposition {
    decomposition: SignedDecomposition,
    /// 1-based position of `t_{j,1}` for each interval `j` (0-based slot).
    starts: Vec<usize>,
    /// Interval (0-based) of each 1-based position, slot 0 unused.
    interval_of: Vec<usize>,
}

impl IndexedDecomposition {
    fn new(decomposition: &SignedDecomposition) -> Self {
        let mut starts = Vec::with_capacity(decomposition.sizes.len());
        let mut interval_of = vec![usize::MAX];
        let mut next = 1;
        for (j, &size) in decomposition.sizes.iter().enumerate() {
            starts.push(next);
            interval_of.extend(std::iter::repeat_n(j, size));
            next += size;
        }
        IndexedDecomposition {
            decomposition: decomposition.clone(),
            starts,
            interval_of,
        }
    }

    pub fn decomposition(&self) -> &SignedDecomposition {
        &self.decomposition
    }

    pub fn n(&self) -> usize {
        self.interval_of.len() - 1
    }

    pub fn k(&self) -> usize {
        self.decomposition.sign_changes()
    }

    /// Flat 1-based position of `t_{j,i}`, both indices 1-based.
    pub fn position(&self, j: usize, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.decomposition.sizes[j - 1]);
        self.starts[j - 1] + i - 1
    }

    /// First position of interval `j` (1-based).
    pub fn first(&self, j: usize) -> usize {
        self.starts[j - 1]
    }

    /// Last position of interval `j` (1-based).
    pub fn last(&self, j: usize) -> usize {
        self.starts[j - 1] + self.decomposition.sizes[j - 1] - 1
    }

    /// Interval (1-based) containing the 1-based position `pos`.
    pub fn interval(&self, pos: usize) -> usize {
        self.interval_of[pos] + 1
    }

    /// `sgn_σ(t_pos)` for a 1-based position.
    pub fn sign_at(&self, pos: usize) -> Sign {
        self.decomposition.interval_sign(self.interval_of[pos])
    }

    /// The divider pair `{t_{j,n_j}, t_{j+1,1}}` for `j ∈ [k]`.
    pub fn divider(&self, j: usize) -> (usize, usize) {
        (self.last(j), self.first(j + 1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub sizes: Vec<usize>,
    pub first_sign: i8,
    pub d: usize,
}

impl From<&SignedDecomposition> for DecompositionJson {
    fn from(value: &SignedDecomposition) -> Self {
        DecompositionJson {
            sizes: value.sizes.clone(),
            first_sign: value.first_sign.as_i8(),
            d: value.d,
        }
    }
}

impl TryFrom<DecompositionJson> for SignedDecomposition {
    type Error = Error;

    fn try_from(value: DecompositionJson) -> Result<Self> {
        let sign = match value.first_sign {
            1 => Sign::Positive,
            -1 => Sign::Negative,
            other => {
                return Err(Error::InvalidDecomposition(format!(
                    "first_sign must be 1 or -1, got {other}"
                )))
            }
        };
        SignedDecomposition::new(value.sizes, sign, value.d)
    }
}
