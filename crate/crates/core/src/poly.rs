//! Symmetric functions, binomials and the perfect-power test for binary forms.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};

/// `σ_i(values)`, with `σ_0 = 1`.
pub fn elementary_symmetric<T: Scalar>(values: &[T], i: usize) -> Result<T> {
    if i > values.len() {
        return Err(Error::Index {
            index: i,
            limit: values.len(),
        });
    }
    Ok(elementary_symmetric_all(values).swap_remove(i))
}

/// `[σ_0, σ_1, …, σ_n]` of `values`.
pub fn elementary_symmetric_all<T: Scalar>(values: &[T]) -> Vec<T> {
    let mut sigma = vec![T::zero(); values.len() + 1];
    sigma[0] = T::one();
    for (seen, v) in values.iter().enumerate() {
        for j in (1..=seen + 1).rev() {
            let add = sigma[j - 1].clone() * v.clone();
            sigma[j] = sigma[j].clone() + add;
        }
    }
    sigma
}

/// Coefficients (constant term first) of `∏ (t - root)`.
pub fn monic_from_roots<T: Scalar>(roots: &[T]) -> Vec<T> {
    let sigma = elementary_symmetric_all(roots);
    let k = roots.len();
    (0..=k)
        .map(|j| {
            let s = sigma[k - j].clone();
            if (k - j) % 2 == 1 {
                -s
            } else {
                s
            }
        })
        .collect()
}

/// Binomial coefficient with the conventions of the facet-count formula:
/// zero for negative `n`, `C(n, 0) = 1` for `n ≥ 0`, zero for `k < 0` or
/// `k > n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from((n - i) as u64) / BigUint::from((i + 1) as u64);
    }
    acc
}

/// Whether `Σ ξ_j x^{d-j} y^j` is a scalar multiple of a `d`-th power of a
/// linear form.
///
/// With `c_j = ξ_j / C(d, j)` this holds exactly when the Hankel matrix with
/// rows `(c_0, …, c_{d-1})` and `(c_1, …, c_d)` has rank at most one.
pub fn is_power_of_linear_form<T: Scalar>(xi: &[T], d: usize) -> Result<bool> {
    if xi.len() != d + 1 {
        return Err(Error::Dimension(format!(
            "chart has {} coordinates, dimension {d} needs {}",
            xi.len(),
            d + 1
        )));
    }
    if xi.iter().all(Zero::is_zero) {
        return Err(Error::InvalidChart("all coordinates are zero".into()));
    }
    let c: Vec<T> = xi
        .iter()
        .enumerate()
        .map(|(j, x)| {
            let b = binomial(d as i64, j as i64);
            let b: T = int(i64::try_from(b).expect("binomial fits in i64 for supported d"));
            x.clone() / b
        })
        .collect();
    for i in 0..d {
        for j in i + 1..d {
            let minor = c[i].clone() * c[j + 1].clone() - c[i + 1].clone() * c[j].clone();
            if !minor.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        int(v)
    }

    fn qs(vs: &[i64]) -> Vec<BigRational> {
        vs.iter().map(|&v| q(v)).collect()
    }

    #[test]
    fn sigma_values() {
        let v = qs(&[1, 2, 3]);
        assert_eq!(elementary_symmetric(&v, 0).unwrap(), q(1));
        assert_eq!(elementary_symmetric(&v, 1).unwrap(), q(6));
        assert_eq!(elementary_symmetric(&v, 2).unwrap(), q(11));
        assert_eq!(elementary_symmetric(&v, 3).unwrap(), q(6));
        assert!(matches!(
            elementary_symmetric(&v, 4),
            Err(Error::Index { index: 4, limit: 3 })
        ));
        assert_eq!(elementary_symmetric::<BigRational>(&[], 0).unwrap(), q(1));
    }

    #[test]
    fn monic_expansion() {
        // (t-1)(t-2) = t^2 - 3t + 2
        assert_eq!(monic_from_roots(&qs(&[1, 2])), qs(&[2, -3, 1]));
        assert_eq!(monic_from_roots::<BigRational>(&[]), qs(&[1]));
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(-1, 0), BigUint::zero());
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(3, -1), BigUint::zero());
    }

    #[test]
    fn power_of_linear_form_examples() {
        assert!(is_power_of_linear_form(&qs(&[1, 0, 0, 0, 0]), 4).unwrap());
        assert!(is_power_of_linear_form(&qs(&[1, -4, 6, -4, 1]), 4).unwrap());
        assert!(!is_power_of_linear_form(&qs(&[0, -1, 0, 0, 0]), 4).unwrap());
        assert!(is_power_of_linear_form(&qs(&[0, 0, 0, 0, 3]), 4).unwrap());
        assert!(matches!(
            is_power_of_linear_form(&qs(&[0, 0, 0]), 2),
            Err(Error::InvalidChart(_))
        ));
        assert!(matches!(
            is_power_of_linear_form(&qs(&[1, 0]), 2),
            Err(Error::Dimension(_))
        ));
    }
}
