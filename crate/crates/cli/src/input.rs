//! Reading instances, decompositions, compositions and facet complexes from
//! flags or JSON.

use std::io::Read;
use std::path::PathBuf;

use clap::Args;
use serde_json::Value;
use veronese::circular::CompositionJson;
use veronese::complex::FacetsJson;
use veronese::decomposition::DecompositionJson;
use veronese::geometry::InstanceJson;
use veronese::{Chart, CircularComposition, FacetComplex, GroundSet, Rational, Scalar, Sign, SignedDecomposition};

use crate::failure::Failure;

#[derive(Args, Debug, Default)]
pub struct Source {
    /// JSON input file, `-` for stdin.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Dimension.
    #[arg(long)]
    pub d: Option<usize>,
    /// Ground set, comma-separated integers or p/q.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Chart coefficients ξ_0,…,ξ_d.
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<String>,
    /// Arc sizes of a circular composition.
    #[arg(long)]
    pub arcs: Option<String>,
    /// Number of dividers; only 0 (with a single arc) differs from the default.
    #[arg(long)]
    pub dividers: Option<usize>,
    /// Interval sizes of a signed decomposition.
    #[arg(long)]
    pub sizes: Option<String>,
    /// Sign of the first interval, 1 or -1.
    #[arg(long, allow_hyphen_values = true)]
    pub first_sign: Option<i8>,
    /// Facets as `0,1,2;1,2,3`.
    #[arg(long)]
    pub facets: Option<String>,
}

pub enum Input {
    Instance(Chart, GroundSet),
    Decomposition(SignedDecomposition),
    Composition(CircularComposition),
    Facets(FacetComplex),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Instance(..) => "instance",
            Input::Decomposition(_) => "decomposition",
            Input::Composition(_) => "composition",
            Input::Facets(_) => "facets",
        }
    }
}

pub fn parse_rationals(text: &str) -> Result<Vec<Rational>, Failure> {
    split(text)
        .map(|s| Rational::parse_exact(s).map_err(Failure::from))
        .collect()
}

pub fn parse_counts(text: &str) -> Result<Vec<usize>, Failure> {
    split(text)
        .map(|s| {
            s.parse()
                .map_err(|_| Failure::invalid("parse", format!("{s:?} is not a nonnegative integer")))
        })
        .collect()
}

fn split(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

/// `a`, `a..b` or `a..=b`, both ends inclusive.
pub fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<usize>, Failure> {
    let bad = || Failure::invalid("parse", format!("{text:?} is not a range like 4..12"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match text.split_once("..") {
        None => {
            let a = num(text)?;
            Ok(a..=a)
        }
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?);
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
    }
}

impl Source {
    pub fn read(&self) -> Result<Input, Failure> {
        if let Some(path) = &self.input {
            let inline = self.t.is_some()
                || self.xi.is_some()
                || self.arcs.is_some()
                || self.sizes.is_some()
                || self.facets.is_some();
            if inline {
                return Err(Failure::usage("--input cannot be combined with inline data"));
            }
            return from_json(&read_file(path)?);
        }
        let given = [
            self.xi.is_some(),
            self.sizes.is_some(),
            self.arcs.is_some(),
            self.facets.is_some(),
        ];
        match given.iter().filter(|&&g| g).count() {
            0 => return Err(Failure::usage("no input: pass --input or inline data")),
            1 => {}
            _ => return Err(Failure::usage("give exactly one of --xi, --sizes, --arcs, --facets")),
        }
        if let Some(xi) = &self.xi {
            let xi = parse_rationals(xi)?;
            let d = match self.d {
                Some(d) => d,
                None => xi.len().checked_sub(1).ok_or_else(|| Failure::usage("--xi is empty"))?,
            };
            let t = self.t.as_deref().ok_or_else(|| Failure::usage("an instance needs --t"))?;
            return instance(d, xi, parse_rationals(t)?);
        }
        if let Some(sizes) = &self.sizes {
            let d = self.need_d()?;
            let sign = match self.first_sign.unwrap_or(1) {
                1 => Sign::Positive,
                -1 => Sign::Negative,
                s => return Err(Failure::invalid("invalid_decomposition", format!("first sign {s} is not 1 or -1"))),
            };
            return Ok(Input::Decomposition(SignedDecomposition::new(parse_counts(sizes)?, sign, d)?));
        }
        if let Some(arcs) = &self.arcs {
            let d = self.need_d()?;
            let arcs = parse_counts(arcs)?;
            let l = self.dividers.unwrap_or(arcs.len());
            return Ok(Input::Composition(CircularComposition::with_dividers(d, arcs, l)?));
        }
        let facets = self.facets.as_deref().unwrap_or_default();
        let facets = facets
            .split(';')
            .filter(|f| !f.trim().is_empty())
            .map(parse_counts)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Input::Facets(FacetComplex::try_from(FacetsJson {
            n_labels: None,
            d: self.d,
            facets,
        })?))
    }

    /// The ground set from `--t`, if given.
    pub fn ground(&self) -> Result<Option<GroundSet>, Failure> {
        match &self.t {
            None => Ok(None),
            Some(t) => Ok(Some(GroundSet::new(parse_rationals(t)?)?)),
        }
    }

    fn need_d(&self) -> Result<usize, Failure> {
        self.d.ok_or_else(|| Failure::usage("--d is required"))
    }
}

fn instance(d: usize, xi: Vec<Rational>, t: Vec<Rational>) -> Result<Input, Failure> {
    if xi.len() != d + 1 {
        return Err(veronese::Error::Dimension(format!(
            "xi has {} entries but d = {d} needs {}",
            xi.len(),
            d + 1
        ))
        .into());
    }
    Ok(Input::Instance(Chart::new(xi)?, GroundSet::new(t)?))
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    let mut text = String::new();
    let result = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|s| text = s)
    };
    result.map_err(|e| Failure::invalid("io", e.to_string()).with("path", path.display().to_string()))?;
    Ok(text)
}

fn malformed(e: serde_json::Error) -> Failure {
    Failure::invalid("malformed_json", e.to_string())
}

/// Dispatches on the keys present: `xi`, `sizes`, `arcs` or `facets`.
pub fn from_json(text: &str) -> Result<Input, Failure> {
    let value: Value = serde_json::from_str(text).map_err(malformed)?;
    let has = |k: &str| value.get(k).is_some();
    if has("xi") {
        let json: InstanceJson = serde_json::from_value(value).map_err(malformed)?;
        let (xi, t) = json.parse::<Rational>()?;
        return Ok(Input::Instance(xi, t));
    }
    if has("sizes") {
        let json: DecompositionJson = serde_json::from_value(value).map_err(malformed)?;
        return Ok(Input::Decomposition(json.try_into()?));
    }
    if has("arcs") {
        let json: CompositionJson = serde_json::from_value(value).map_err(malformed)?;
        return Ok(Input::Composition(json.try_into()?));
    }
    if has("facets") {
        let json: FacetsJson = serde_json::from_value(value).map_err(malformed)?;
        return Ok(Input::Facets(json.try_into()?));
    }
    Err(Failure::invalid(
        "malformed_json",
        "expected an object with one of the keys xi, sizes, arcs, facets",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4..12").unwrap(), 4..=12);
        assert_eq!(parse_range("4..=12").unwrap(), 4..=12);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("a..3").is_err());
    }

    #[test]
    fn rationals_and_counts() {
        let r = parse_rationals("-3, 1/2,4").unwrap();
        assert_eq!(r.len(), 3);
        assert!(parse_rationals("1/0").is_err());
        assert_eq!(parse_counts("3,4").unwrap(), vec![3, 4]);
        assert!(parse_counts("3,-4").is_err());
    }

    #[test]
    fn json_dispatch() {
        assert!(matches!(from_json(r#"{"d":4,"arcs":[3,4]}"#), Ok(Input::Composition(_))));
        assert!(matches!(
            from_json(r#"{"d":2,"sizes":[2,1],"first_sign":-1}"#),
            Ok(Input::Decomposition(_))
        ));
        assert!(matches!(
            from_json(r#"{"d":1,"t":["0","1"],"xi":["1","0"]}"#),
            Ok(Input::Instance(..))
        ));
        assert!(matches!(from_json(r#"{"facets":[[0,1],[1,2]]}"#), Ok(Input::Facets(_))));
        assert_eq!(from_json("{").err().unwrap().code, "malformed_json");
        assert_eq!(from_json("{}").err().unwrap().code, "malformed_json");
    }
}
