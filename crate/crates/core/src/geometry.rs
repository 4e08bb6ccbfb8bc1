//! Points on the rational normal curve seen through an affine chart, and the
//! sign tests that decide which `d`-subsets of generating points span facets.
//!
//! A chart `ξ` turns the curve into `t ↦ (1, t, …, t^d) / q_ξ(t)` with
//! `q_ξ(t) = Σ ξ_i t^i`. A `d`-subset `S` of the parameters spans a facet
//! exactly when `p_S(t) / q_ξ(t)`, with `p_S(t) = ∏_{s∈S} (t − s)`, has a
//! single nonzero sign over the remaining parameters.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::FacetComplex;
use crate::decomposition::SignedDecomposition;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::monic_from_roots;
use crate::scalar::{half, Scalar, Sign};


/// Strictly increasing parameter values `t_1 < … < t_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroundSet<T> {
    params: Vec<T>,
}

impl<T: Scalar> GroundSet<T> {
    pub fn new(params: Vec<T>) -> Result<Self> {
        if params.is_empty() {
            return Err(Error::InvalidInstance("empty ground set".into()));
        }
        if let Some(w) = params.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInstance(format!(
                "parameters must be strictly increasing, but t[{w}] = {} >= t[{}] = {}",
                params[w],
                w + 1,
                params[w + 1]
            )));
        }
        Ok(GroundSet { params })
    }

    /// `{1, 2, …, n}`.
    pub fn integers(n: usize) -> Result<Self> {
        Self::new((1..=n as i64).map(crate::scalar::int).collect())
    }

    pub fn params(&self) -> &[T] {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }
}

/// Coordinates `(ξ_0, …, ξ_d)` of an affine chart; not all zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chart<T> {
    coords: Vec<T>,
}

impl<T: Scalar> Chart<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidChart(format!(
                "a chart needs at least 2 coordinates, got {}",
                coords.len()
            )));
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidChart("all coordinates are zero".into()));
        }
        Ok(Chart { coords })
    }

    /// The chart `(1, 0, …, 0)`, under which the curve is the moment curve.
    pub fn moment(d: usize) -> Self {
        let mut coords = vec![T::zero(); d + 1];
        coords[0] = T::one();
        Chart { coords }
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn d(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn negated(&self) -> Self {
        Chart {
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// Whether the curve in this chart is a `d`-order curve.
    pub fn is_d_order(&self) -> bool {
        crate::poly::is_power_of_linear_form(&self.coords, self.d())
            .expect("chart invariants guarantee a valid form")
    }
}

/// A generating point `ν_d(t) / q_ξ(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurvePoint<T> {
    coords: Vec<T>,
}

impl<T: Scalar> CurvePoint<T> {
    pub fn coords(&self) -> &[T] {
        &self.coords
    }
}

/// `q_ξ(t) = Σ ξ_i t^i`, by Horner's rule.
pub fn q_eval<T: Scalar>(xi: &Chart<T>, t: &T) -> T {
    xi.coords
        .iter()
        .rev()
        .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
}

/// `(1, t, …, t^d) / ⟨ξ, (1, t, …, t^d)⟩`.
///
/// The denominator is formed as an inner product with the power vector, not
/// through [`q_eval`], so the determinant oracle stays independent of the
/// `λ` route.
pub fn curve_point<T: Scalar>(xi: &Chart<T>, t: &T) -> Result<CurvePoint<T>> {
    let mut powers = Vec::with_capacity(xi.coords.len());
    let mut p = T::one();
    for _ in 0..xi.coords.len() {
        powers.push(p.clone());
        p = p * t.clone();
    }
    let denom = powers
        .iter()
        .zip(&xi.coords)
        .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone());
    if denom.is_zero() {
        return Err(Error::PointAtInfinity(t.to_exact_string()));
    }
    Ok(CurvePoint {
        coords: powers.into_iter().map(|x| x / denom.clone()).collect(),
    })
}

/// `λ_{ξ,S}(t) = p_S(t) / q_ξ(t)`.
pub fn lambda_eval<T: Scalar>(xi: &Chart<T>, subset: &[T], t: &T) -> Result<T> {
    let q = q_eval(xi, t);
    if q.is_zero() {
        return Err(Error::PointAtInfinity(t.to_exact_string()));
    }
    let p = subset
        .iter()
        .fold(T::one(), |acc, s| acc * (t.clone() - s.clone()));
    Ok(p / q)
}

fn check_instance<T: Scalar>(xi: &Chart<T>, ground: &GroundSet<T>) -> Result<()> {
    let d = xi.d();
    if ground.len() <= d {
        return Err(Error::Underdetermined {
            n: ground.len(),
            d,
        });
    }
    if let Some(t) = ground.params.iter().find(|t| q_eval(xi, t).is_zero()) {
        return Err(Error::InvalidInstance(format!(
            "chart vanishes at parameter {}",
            t.to_exact_string()
        )));
    }
    Ok(())
}

fn check_subset(d: usize, n: usize, subset: &[usize]) -> Result<Vec<usize>> {
    if subset.len() != d {
        return Err(Error::Arity {
            expected: d,
            got: subset.len(),
        });
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition(format!(
            "subset {subset:?} repeats a parameter"
        )));
    }
    if let Some(&bad) = sorted.iter().find(|&&i| i >= n) {
        return Err(Error::Index {
            index: bad,
            limit: n,
        });
    }
    Ok(sorted)
}

fn constant_nonzero_sign(mut signs: impl Iterator<Item = Sign>) -> bool {
    let Some(first) = signs.next() else {
        return true;
    };
    !first.is_zero() && signs.all(|s| s == first)
}

fn lambda_test_unchecked<T: Scalar>(xi: &Chart<T>, ground: &GroundSet<T>, subset: &[usize]) -> bool {
    let roots: Vec<T> = subset.iter().map(|&i| ground.params[i].clone()).collect();
    let signs = (0..ground.len())
        .filter(|i| subset.binary_search(i).is_err())
        .map(|i| {
            let value = lambda_eval(xi, &roots, &ground.params[i])
                .expect("instance was checked for points at infinity");
            Sign::of(&value)
        });
    constant_nonzero_sign(signs)
}

/// Facet test through the sign of `λ_{ξ,S}` on `T ∖ S`.
///
/// `subset` holds positional indices into `ground`.
pub fn facet_test_lambda<T: Scalar>(
    xi: &Chart<T>,
    ground: &GroundSet<T>,
    subset: &[usize],
) -> Result<bool> {
    check_instance(xi, ground)?;
    let sorted = check_subset(xi.d(), ground.len(), subset)?;
    Ok(lambda_test_unchecked(xi, ground, &sorted))
}

/// Facet test through determinant signs of the generating points.
///
/// For every `u ∈ T ∖ S` the matrix with rows `ν(s)/q(s)` for `s ∈ S`
/// ascending, followed by `ν(u)/q(u)`, must have the same nonzero sign.
pub fn facet_test_determinant<T: Scalar>(
    xi: &Chart<T>,
    ground: &GroundSet<T>,
    subset: &[usize],
) -> Result<bool> {
    let d = xi.d();
    if ground.len() <= d {
        return Err(Error::Underdetermined {
            n: ground.len(),
            d,
        });
    }
    let sorted = check_subset(d, ground.len(), subset)?;
    let points = ground
        .params
        .iter()
        .map(|t| curve_point(xi, t))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| match e {
            Error::PointAtInfinity(t) => {
                Error::InvalidInstance(format!("chart vanishes at parameter {t}"))
            }
            other => other,
        })?;
    determinant_test_unchecked(&points, &sorted)
}

fn determinant_test_unchecked<T: Scalar>(
    points: &[CurvePoint<T>],
    subset: &[usize],
) -> Result<bool> {
    let base: Vec<Vec<T>> = subset.iter().map(|&i| points[i].coords.clone()).collect();
    let mut signs = Vec::new();
    for (u, point) in points.iter().enumerate() {
        if subset.binary_search(&u).is_ok() {
            continue;
        }
        let mut rows = base.clone();
        rows.push(point.coords.clone());
        signs.push(Matrix::from_rows(rows)?.sign_det()?);
    }
    Ok(constant_nonzero_sign(signs.into_iter()))
}

/// All facets by the `λ` sign test, as sorted index sets into `ground`.
pub fn enumerate_facets_geometric<T: Scalar>(
    xi: &Chart<T>,
    ground: &GroundSet<T>,
) -> Result<FacetComplex> {
    check_instance(xi, ground)?;
    let candidates: Vec<Vec<usize>> = (0..ground.len()).combinations(xi.d()).collect();
    let facets = candidates
        .into_par_iter()
        .filter(|s| lambda_test_unchecked(xi, ground, s))
        .collect();
    FacetComplex::new(ground.len(), xi.d(), facets)
}

/// All facets by the determinant oracle.
pub fn enumerate_facets_determinant<T: Scalar>(
    xi: &Chart<T>,
    ground: &GroundSet<T>,
) -> Result<FacetComplex> {
    check_instance(xi, ground)?;
    let points = ground
        .params
        .iter()
        .map(|t| curve_point(xi, t))
        .collect::<Result<Vec<_>>>()?;
    let candidates: Vec<Vec<usize>> = (0..ground.len()).combinations(xi.d()).collect();
    let tested = candidates
        .into_par_iter()
        .map(|s| determinant_test_unchecked(&points, &s).map(|ok| ok.then_some(s)))
        .collect::<Result<Vec<_>>>()?;
    FacetComplex::new(ground.len(), xi.d(), tested.into_iter().flatten().collect())
}

/// Indices of generating points that lie on some facet.
pub fn vertices_geometric<T: Scalar>(xi: &Chart<T>, ground: &GroundSet<T>) -> Result<Vec<usize>> {
    Ok(enumerate_facets_geometric(xi, ground)?.vertices())
}

/// Maximal runs of constant sign of `q_ξ` over `ground`.
pub fn decompose_chart<T: Scalar>(
    xi: &Chart<T>,
    ground: &GroundSet<T>,
) -> Result<SignedDecomposition> {
    let signs = ground
        .params
        .iter()
        .map(|t| match Sign::of(&q_eval(xi, t)) {
            Sign::Zero => Err(Error::InvalidInstance(format!(
                "chart vanishes at parameter {}",
                t.to_exact_string()
            ))),
            s => Ok(s),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut sizes = vec![1usize];
    for w in signs.windows(2) {
        if w[0] == w[1] {
            *sizes.last_mut().expect("nonempty") += 1;
        } else {
            sizes.push(1);
        }
    }
    // q_ξ has degree at most d, so it changes sign at most d times
    assert!(sizes.len() - 1 <= xi.d(), "polynomial of degree ≤ d changed sign more than d times");
    SignedDecomposition::new(sizes, signs[0], xi.d())
}

/// A chart realising `decomposition` on `ground`.
///
/// `q_ξ(t) = c · ∏ (t − s_i)` where `s_i` is the midpoint of the gap after
/// interval `i` and `c = ±1` makes the first interval carry the requested
/// sign.
pub fn chart_from_decomposition<T: Scalar>(
    decomposition: &SignedDecomposition,
    ground: &GroundSet<T>,
) -> Result<Chart<T>> {
    if decomposition.n() != ground.len() {
        return Err(Error::InvalidDecomposition(format!(
            "decomposition covers {} points but the ground set has {}",
            decomposition.n(),
            ground.len()
        )));
    }
    let d = decomposition.d();
    let mut cuts = Vec::with_capacity(decomposition.sign_changes());
    let mut end = 0;
    for &size in &decomposition.sizes()[..decomposition.sign_changes()] {
        end += size;
        let gap = ground.params[end - 1].clone() + ground.params[end].clone();
        cuts.push(half(gap));
    }
    let mut coords = monic_from_roots(&cuts);
    // every cut lies to the right of t_1, so ∏ (t_1 − s_i) has sign (−1)^k
    let leading_sign = if cuts.len() % 2 == 0 {
        Sign::Positive
    } else {
        Sign::Negative
    };
    if leading_sign != decomposition.first_sign() {
        coords = coords.into_iter().map(|c| -c).collect();
    }
    coords.resize(d + 1, T::zero());
    Chart::new(coords)
}

/// Wire form of an instance: `{"d": 4, "t": ["-3", …], "xi": ["0", "-1", …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub d: usize,
    pub t: Vec<String>,
    pub xi: Vec<String>,
}

impl InstanceJson {
    pub fn from_parts<T: Scalar>(xi: &Chart<T>, ground: &GroundSet<T>) -> Self {
        InstanceJson {
            d: xi.d(),
            t: ground.params.iter().map(Scalar::to_exact_string).collect(),
            xi: xi.coords.iter().map(Scalar::to_exact_string).collect(),
        }
    }

    pub fn parse<T: Scalar>(&self) -> Result<(Chart<T>, GroundSet<T>)> {
        if self.xi.len() != self.d + 1 {
            return Err(Error::Dimension(format!(
                "xi has {} entries but d = {} needs {}",
                self.xi.len(),
                self.d,
                self.d + 1
            )));
        }
        let xi = self
            .xi
            .iter()
            .map(|s| T::parse_exact(s))
            .collect::<Result<Vec<_>>>()?;
        let t = self
            .t
            .iter()
            .map(|s| T::parse_exact(s))
            .collect::<Result<Vec<_>>>()?;
        Ok((Chart::new(xi)?, GroundSet::new(t)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use num_rational::{BigRational, Rational64};

    type Q = BigRational;

    fn qs(vs: &[i64]) -> Vec<Q> {
        vs.iter().map(|&v| int(v)).collect()
    }

    fn chart(vs: &[i64]) -> Chart<Q> {
        Chart::new(qs(vs)).unwrap()
    }

    fn ground(vs: &[i64]) -> GroundSet<Q> {
        GroundSet::new(qs(vs)).unwrap()
    }

    fn two_interval_instance() -> (Chart<Q>, GroundSet<Q>) {
        (chart(&[0, -1, 0, 0, 0]), ground(&[-3, -2, -1, 1, 2, 3, 4]))
    }

    #[test]
    fn q_eval_examples() {
        assert_eq!(q_eval(&chart(&[1, 0, 0, 0, 0]), &int(7)), int::<Q>(1));
        assert_eq!(q_eval(&chart(&[0, -1, 0, 0, 0]), &int(-3)), int::<Q>(3));
        assert_eq!(q_eval(&chart(&[-1, 0, 1]), &int(2)), int::<Q>(3));
    }

    #[test]
    fn curve_point_examples() {
        let p = curve_point(&chart(&[1, 0, 0]), &int(2)).unwrap();
        assert_eq!(p.coords(), qs(&[1, 2, 4]).as_slice());
        let p = curve_point(&chart(&[-1, 0, 1]), &int(2)).unwrap();
        let third = |n: i64| Q::new(n.into(), 3.into());
        assert_eq!(p.coords(), &[third(1), third(2), third(4)]);
        assert!(matches!(
            curve_point(&chart(&[-1, 0, 1]), &int(1)),
            Err(Error::PointAtInfinity(_))
        ));
    }

    #[test]
    fn curve_points_lie_on_the_chart_hyperplane() {
        let xi = chart(&[3, -1, 2, 0, 5]);
        for t in [-4i64, -1, 0, 2, 9] {
            let p = curve_point(&xi, &int(t)).unwrap();
            let dot = p
                .coords()
                .iter()
                .zip(xi.coords())
                .fold(Q::from_integer(0.into()), |acc, (a, b)| acc + a * b);
            assert_eq!(dot, int::<Q>(1));
        }
    }

    #[test]
    fn lambda_examples() {
        let s = qs(&[1, 2, 3, 4]);
        let xi = chart(&[0, -1, 0, 0, 0]);
        assert_eq!(lambda_eval(&xi, &s, &int(-3)).unwrap(), int::<Q>(280));
        assert_eq!(lambda_eval(&xi, &s, &int(-1)).unwrap(), int::<Q>(120));
        assert_eq!(lambda_eval(&xi, &s, &int(2)).unwrap(), int::<Q>(0));
        assert!(lambda_eval(&xi, &s, &int(0)).is_err());
    }

    #[test]
    fn facet_tests_on_the_two_interval_example() {
        let (xi, t) = two_interval_instance();
        assert!(facet_test_lambda(&xi, &t, &[3, 4, 5, 6]).unwrap());
        assert!(!facet_test_lambda(&xi, &t, &[0, 1, 2, 4]).unwrap());
        assert!(facet_test_determinant(&xi, &t, &[3, 4, 5, 6]).unwrap());
        assert!(!facet_test_determinant(&xi, &t, &[0, 1, 2, 4]).unwrap());
        assert!(matches!(
            facet_test_determinant(&xi, &t, &[3, 3, 4, 5]),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            facet_test_lambda(&xi, &t, &[3, 4, 5]),
            Err(Error::Arity { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn moment_curve_gale_evenness() {
        let xi = Chart::<Q>::moment(4);
        let t = ground(&[0, 1, 2, 3, 4]);
        assert!(facet_test_lambda(&xi, &t, &[0, 1, 3, 4]).unwrap());
        let t6 = ground(&[0, 1, 2, 3, 4, 5]);
        assert!(!facet_test_lambda(&xi, &t6, &[0, 1, 2, 4]).unwrap());
        assert!(facet_test_lambda(&xi, &t6, &[0, 1, 3, 4]).unwrap());
        let t7 = ground(&[0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(enumerate_facets_geometric(&xi, &t7).unwrap().len(), 14);
    }

    #[test]
    fn vanishing_chart_is_an_invalid_instance() {
        let xi = chart(&[0, -1, 0, 0, 0]);
        let t = ground(&[-2, -1, 0, 1, 2]);
        assert!(matches!(
            facet_test_lambda(&xi, &t, &[0, 1, 2, 3]),
            Err(Error::InvalidInstance(_))
        ));
        assert!(matches!(
            facet_test_determinant(&xi, &t, &[0, 1, 3, 4]),
            Err(Error::InvalidInstance(_))
        ));
        assert!(matches!(decompose_chart(&xi, &t), Err(Error::InvalidInstance(_))));
    }

    #[test]
    fn minimal_ground_set_gives_a_simplex() {
        let xi = chart(&[2, -1, 1]);
        let t = ground(&[-1, 3, 7]);
        let f = enumerate_facets_geometric(&xi, &t).unwrap();
        assert_eq!(f.facets(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(vertices_geometric(&xi, &t).unwrap(), vec![0, 1, 2]);
        let too_small = ground(&[1, 2]);
        assert!(matches!(
            enumerate_facets_geometric(&xi, &too_small),
            Err(Error::Underdetermined { n: 2, d: 2 })
        ));
    }

    #[test]
    fn decomposition_examples() {
        let (xi, t) = two_interval_instance();
        let d = decompose_chart(&xi, &t).unwrap();
        assert_eq!(d.sizes(), &[3, 4]);
        assert_eq!(d.first_sign(), Sign::Positive);

        let d = decompose_chart(&Chart::<Q>::moment(3), &ground(&[1, 5, 9])).unwrap();
        assert_eq!((d.sizes(), d.first_sign()), (&[3][..], Sign::Positive));

        // e_3 with two negative parameters
        let d = decompose_chart(&chart(&[0, 0, 0, 1, 0]), &ground(&[-5, -2, 1, 4, 6, 8])).unwrap();
        assert_eq!(d.sizes(), &[2, 4]);
        assert_eq!(d.first_sign(), Sign::Negative);
    }

    #[test]
    fn chart_from_decomposition_examples() {
        let t = ground(&[-3, -2, -1, 1, 2, 3, 4]);
        let d = SignedDecomposition::new(vec![3, 4], Sign::Positive, 4).unwrap();
        assert_eq!(chart_from_decomposition(&d, &t).unwrap(), chart(&[0, -1, 0, 0, 0]));
        let trivial = SignedDecomposition::trivial(7, 4).unwrap();
        assert_eq!(chart_from_decomposition(&trivial, &t).unwrap(), Chart::moment(4));
        let wrong = SignedDecomposition::trivial(6, 4).unwrap();
        assert!(matches!(
            chart_from_decomposition(&wrong, &t),
            Err(Error::InvalidDecomposition(_))
        ));
    }

    #[test]
    fn small_rationals_work_too() {
        let xi = Chart::new(vec![Rational64::from(0), Rational64::from(-1), 0.into(), 0.into(), 0.into()])
            .unwrap();
        let t = GroundSet::new([-3i64, -2, -1, 1, 2, 3, 4].map(Rational64::from).to_vec()).unwrap();
        assert_eq!(enumerate_facets_geometric(&xi, &t).unwrap().len(), 12);
        assert_eq!(enumerate_facets_determinant(&xi, &t).unwrap().len(), 12);
    }

    #[test]
    fn instance_json() {
        let text = r#"{"d": 4, "t": ["-3","-2","-1","1","2","3","4"], "xi": ["0","-1","0","0","0"]}"#;
        let inst: InstanceJson = serde_json::from_str(text).unwrap();
        let (xi, t) = inst.parse::<Q>().unwrap();
        assert_eq!((xi.d(), t.len()), (4, 7));
        assert_eq!(InstanceJson::from_parts(&xi, &t), inst);
        let bad = InstanceJson {
            d: 3,
            ..inst.clone()
        };
        assert!(matches!(bad.parse::<Q>(), Err(Error::Dimension(_))));
        let zero_den = InstanceJson {
            t: vec!["1/0".into()],
            ..inst
        };
        assert!(matches!(zero_den.parse::<Q>(), Err(Error::Parse(_))));
    }
}
