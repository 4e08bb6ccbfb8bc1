use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use veronese::circular::{
    enumerate_facets_circular, facet_count, induce_composition, realize, vertex_set, CompositionJson,
};
use veronese::classify::classify;
use veronese::complex::FacetsJson;
use veronese::decomposition::DecompositionJson;
use veronese::enumerate::{report_csv, table_report};
use veronese::facets::{enumerate_facets_line, enumerate_facets_s123};
use veronese::geometry::{
    chart_from_decomposition, decompose_chart, enumerate_facets_determinant,
    enumerate_facets_geometric, vertices_geometric, InstanceJson,
};
use veronese::{
    certificate, Chart, CircularComposition, FacetComplex, GroundSet, Rational, Scalar, Sign,
    SignedDecomposition,
};

use crate::failure::Failure;
use crate::input::{parse_range, parse_rationals, Input, Source};
use crate::output::{facet_lines, join, Output};
use crate::{Cli, Command, EnumerateArgs};

pub type Outcome = Result<Output, (Option<Output>, Failure)>;

pub fn run(cli: &Cli) -> Outcome {
    let with_input = |s: &Source, f: &dyn Fn(&Input) -> Result<Output, Failure>| {
        let input = s.read()?;
        f(&input).map(|o| (o, input))
    };
    let result = match &cli.command {
        Command::Facets(s) => with_input(s, &facets),
        Command::Decompose(s) => with_input(s, &decompose),
        Command::Chart(s) => with_input(s, &|i| chart(s, i)),
        Command::Count { source, verify } => with_input(source, &|i| count(i, *verify)),
        Command::Classify(s) => with_input(s, &classify_input),
        Command::Vertices(s) => with_input(s, &vertices),
        Command::ChartOrder(s) => {
            return no_check(cli, "chart-order").and_then(|_| chart_order(s)).map_err(|f| (None, f))
        }
        Command::Enumerate(args) => {
            return no_check(cli, "enumerate").and_then(|_| enumerate(args)).map_err(|f| (None, f))
        }
        Command::Certify(s) => {
            return no_check(cli, "certify").and_then(|_| certify(s)).map_err(|f| (None, f))
        }
        Command::SelfTest {
            instances,
            max_d,
            max_n,
        } => return self_test(cli.seed, *instances, *max_d, *max_n).map_err(|f| (None, f)),
    };
    let (mut out, input) = result.map_err(|f| (None, f))?;
    if cli.check {
        let v = match verify(&input) {
            Ok(v) => v,
            Err(f) => return Err((Some(out), f)),
        };
        let agree = v.agree;
        out.appendix.push((v.json, v.text));
        if !agree {
            let failure = Failure::cross_check("the four facet characterizations disagree")
                .with("input", input.kind());
            return Err((Some(out), failure));
        }
    }
    Ok(out)
}

fn no_check(cli: &Cli, name: &str) -> Result<(), Failure> {
    if cli.check {
        return Err(Failure::usage(format!(
            "--check needs an instance, decomposition or composition, not {name}"
        )));
    }
    Ok(())
}

fn wrong_kind(input: &Input, wanted: &str) -> Failure {
    Failure::invalid("invalid_input", format!("expected {wanted}, got {}", input.kind()))
}

fn big_json(value: &impl ToString) -> Value {
    let s = value.to_string();
    s.parse::<u64>().map(Value::from).unwrap_or(Value::String(s))
}

/// The composition carried by a composition, or induced from a line input.
fn composition_of(input: &Input) -> Result<CircularComposition, Failure> {
    match input {
        Input::Composition(c) => Ok(c.clone()),
        Input::Decomposition(dec) => Ok(induce_composition(dec)?.0),
        Input::Instance(xi, t) => Ok(induce_composition(&decompose_chart(xi, t)?)?.0),
        Input::Facets(_) => Err(wrong_kind(input, "a composition")),
    }
}

fn facet_complex(input: &Input) -> Result<FacetComplex, Failure> {
    Ok(match input {
        Input::Instance(xi, t) => enumerate_facets_geometric(xi, t)?,
        Input::Decomposition(dec) => enumerate_facets_line(dec)?,
        Input::Composition(c) => enumerate_facets_circular(c)?,
        Input::Facets(_) => {
            return Err(wrong_kind(input, "an instance, decomposition or composition"))
        }
    })
}

fn facets_output(complex: &FacetComplex) -> Output {
    let facets = complex.facets();
    let pretty = format!("{} facets\n", facets.len())
        + &facets
            .iter()
            .map(|f| format!("{{{}}}\n", join(f, ", ")))
            .collect::<String>();
    Output::new(json!(FacetsJson::bare(complex)), facet_lines(facets), pretty)
}

fn facets(input: &Input) -> Result<Output, Failure> {
    Ok(facets_output(&facet_complex(input)?))
}

fn decompose(input: &Input) -> Result<Output, Failure> {
    let Input::Instance(xi, t) = input else {
        return Err(wrong_kind(input, "an instance"));
    };
    let dec = decompose_chart(xi, t)?;
    let (c, tau) = induce_composition(&dec)?;
    let sign = dec.first_sign().as_i8();
    let json = json!({
        "decomposition": DecompositionJson::from(&dec),
        "composition": CompositionJson::from(&c),
        "tau": tau,
    });
    let csv = format!(
        "sizes,first_sign,d,arcs,dividers\n{},{},{},{},{}\n",
        join(dec.sizes(), ";"),
        sign,
        dec.d(),
        join(c.arcs(), ";"),
        c.dividers()
    );
    let pretty = format!(
        "intervals ({}) starting {}, d = {}\ncomposition ({}) with {} dividers\n",
        join(dec.sizes(), ", "),
        if sign > 0 { "positive" } else { "negative" },
        dec.d(),
        join(c.arcs(), ", "),
        c.dividers()
    );
    Ok(Output::new(json, csv, pretty))
}

fn chart(source: &Source, input: &Input) -> Result<Output, Failure> {
    let Input::Decomposition(dec) = input else {
        return Err(wrong_kind(input, "a signed decomposition"));
    };
    let ground = match source.ground()? {
        Some(g) => g,
        None => GroundSet::integers(dec.n())?,
    };
    let xi = chart_from_decomposition(dec, &ground)?;
    Ok(instance_output(&xi, &ground))
}

fn instance_output(xi: &Chart, ground: &GroundSet) -> Output {
    let json = InstanceJson::from_parts(xi, ground);
    let csv = format!("t,{}\nxi,{}\n", json.t.join(","), json.xi.join(","));
    let pretty = format!("d = {}\nt = {}\nxi = {}\n", json.d, json.t.join(", "), json.xi.join(", "));
    Output::new(json!(json), csv, pretty)
}

fn count(input: &Input, verify: bool) -> Result<Output, Failure> {
    let c = composition_of(input)?;
    let formula = facet_count(&c);
    if !verify {
        return Ok(Output::new(
            json!({"formula": big_json(&formula)}),
            format!("formula\n{formula}\n"),
            format!("{formula} facets\n"),
        ));
    }
    let listed = enumerate_facets_circular(&c)?.len();
    let out = Output::new(
        json!({"formula": big_json(&formula), "enumerated": listed}),
        format!("formula,enumerated\n{formula},{listed}\n"),
        format!("{formula} facets by formula, {listed} enumerated\n"),
    );
    if formula.to_string() != listed.to_string() {
        return Err(Failure::cross_check(format!(
            "formula gives {formula} facets but enumeration finds {listed}"
        )));
    }
    Ok(out)
}

fn classify_input(input: &Input) -> Result<Output, Failure> {
    let c = classify(&composition_of(input)?)?;
    let json = json!(c);
    let flags = [
        ("simplex", c.simplex),
        ("cross", c.cross),
        ("stacked_family", c.stacked_family),
        ("cyclic", c.cyclic),
        ("neighbourly", c.neighbourly),
    ];
    let csv = format!(
        "vertices,facets,{}\n{},{},{}\n",
        flags.iter().map(|f| f.0).collect::<Vec<_>>().join(","),
        c.vertices,
        c.facets,
        flags.iter().map(|f| f.1.to_string()).collect::<Vec<_>>().join(",")
    );
    let named: Vec<&str> = flags.iter().filter(|f| f.1).map(|f| f.0).collect();
    let pretty = format!(
        "{} vertices, {} facets\n{}\n",
        c.vertices,
        c.facets,
        if named.is_empty() {
            "no named type".to_string()
        } else {
            named.join(", ")
        }
    );
    Ok(Output::new(json, csv, pretty))
}

fn vertices(input: &Input) -> Result<Output, Failure> {
    let v = match input {
        Input::Instance(xi, t) => vertices_geometric(xi, t)?,
        Input::Decomposition(dec) => enumerate_facets_line(dec)?.vertices(),
        Input::Composition(c) => vertex_set(c),
        Input::Facets(f) => f.vertices(),
    };
    Ok(Output::new(
        json!({"vertices": v}),
        format!("{}\n", join(&v, ",")),
        format!("{} vertices: {}\n", v.len(), join(&v, ", ")),
    ))
}

fn chart_order(source: &Source) -> Result<Output, Failure> {
    let (d, coords) = match (&source.input, &source.xi) {
        (Some(_), Some(_)) => return Err(Failure::usage("--input cannot be combined with --xi")),
        (None, None) => return Err(Failure::usage("chart-order needs --xi or --input")),
        (None, Some(xi)) => (source.d, parse_rationals(xi)?),
        (Some(path), None) => {
            #[derive(serde::Deserialize)]
            struct ChartJson {
                d: Option<usize>,
                xi: Vec<String>,
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::invalid("io", e.to_string()))?;
            let json: ChartJson = serde_json::from_str(&text)
                .map_err(|e| Failure::invalid("malformed_json", e.to_string()))?;
            let coords = json
                .xi
                .iter()
                .map(|s| Rational::parse_exact(s))
                .collect::<Result<Vec<_>, _>>()?;
            (json.d.or(source.d), coords)
        }
    };
    if let Some(d) = d {
        if coords.len() != d + 1 {
            return Err(veronese::Error::Dimension(format!(
                "xi has {} entries but d = {d} needs {}",
                coords.len(),
                d + 1
            ))
            .into());
        }
    }
    let xi = Chart::new(coords)?;
    let ordered = xi.is_d_order();
    Ok(Output::new(
        json!({"d": xi.d(), "d_order": ordered}),
        format!("d,d_order\n{},{ordered}\n", xi.d()),
        format!(
            "the chart {} a {}-order curve\n",
            if ordered { "gives" } else { "does not give" },
            xi.d()
        ),
    ))
}

fn enumerate(args: &EnumerateArgs) -> Result<Output, Failure> {
    let ds = parse_range(&args.d)?;
    let ns = parse_range(&args.n)?;
    if *ds.start() == 0 {
        return Err(veronese::Error::Domain("dimension must be positive".into()).into());
    }
    let rows = table_report(ds, ns)?;
    let mut pretty = String::new();
    for r in &rows {
        pretty.push_str(&format!("d={} n={}: {} types\n", r.d, r.n, r.count));
        for t in &r.types {
            let f = t.flags;
            let names: Vec<&str> = [
                ("simplex", f.simplex),
                ("cross", f.cross),
                ("stacked", f.stacked_family),
                ("cyclic", f.cyclic),
                ("neighbourly", f.neighbourly),
            ]
            .iter()
            .filter(|x| x.1)
            .map(|x| x.0)
            .collect();
            pretty.push_str(&format!(
                "  ({}) l={} {}\n",
                join(&t.arcs, ","),
                t.dividers,
                names.join(" ")
            ));
        }
    }
    Ok(Output {
        json: rows.iter().map(|r| json!(r)).collect(),
        csv: report_csv(&rows),
        pretty,
        appendix: Vec::new(),
    })
}

fn certify(source: &Source) -> Result<Output, Failure> {
    let input = source.read()?;
    let Input::Facets(complex) = &input else {
        return Err(wrong_kind(&input, "a facet complex"));
    };
    let hex = certificate(complex)?.to_hex();
    Ok(Output::new(
        json!({"certificate": hex}),
        format!("certificate\n{hex}\n"),
        format!("{hex}\n"),
    ))
}

struct Verification {
    agree: bool,
    json: Value,
    text: String,
}

/// Facets by the λ test, the determinant oracle, parity-alternating
/// complements and the S1/S2/S3 split, in the labels of `input`.
fn verify(input: &Input) -> Result<Verification, Failure> {
    let (xi, t, tau) = match input {
        Input::Instance(xi, t) => (xi.clone(), t.clone(), None),
        Input::Decomposition(dec) => {
            let t = GroundSet::integers(dec.n())?;
            (chart_from_decomposition(dec, &t)?, t, None)
        }
        Input::Composition(c) => {
            let (t, xi) = realize::<Rational>(c)?;
            let tau = induce_composition(&decompose_chart(&xi, &t)?)?.1;
            (xi, t, Some(tau))
        }
        Input::Facets(_) => return Err(wrong_kind(input, "an instance, decomposition or composition")),
    };
    let dec = decompose_chart(&xi, &t)?;
    let sets = [
        enumerate_facets_geometric(&xi, &t)?,
        enumerate_facets_determinant(&xi, &t)?,
        enumerate_facets_line(&dec)?,
        enumerate_facets_s123(&dec)?,
    ];
    let sets = match &tau {
        None => sets.to_vec(),
        Some(tau) => sets
            .iter()
            .map(|s| s.relabel(tau, t.len()))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let as_set = |c: &FacetComplex| c.facets().iter().cloned().collect::<BTreeSet<_>>();
    let reference = as_set(&facet_complex(input)?);
    let agree = sets.iter().all(|s| as_set(s) == reference);
    let json = json!({
        "lambda": sets[0].facets(),
        "determinant": sets[1].facets(),
        "sigma_pa": sets[2].facets(),
        "s123": sets[3].facets(),
        "agree": agree,
    });
    let text = format!(
        "check: lambda {}, determinant {}, sigma_pa {}, s123 {} facets; {}\n",
        sets[0].len(),
        sets[1].len(),
        sets[2].len(),
        sets[3].len(),
        if agree { "all agree" } else { "MISMATCH" }
    );
    Ok(Verification { agree, json, text })
}

fn self_test(seed: u64, instances: usize, max_d: usize, max_n: usize) -> Result<Output, Failure> {
    if max_d < 1 || max_n <= max_d {
        return Err(Failure::usage("self-test needs 1 ≤ max-d < max-n"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..instances {
        let d = rng.gen_range(1..=max_d);
        let n = rng.gen_range(d + 1..=max_n);
        let mut params = BTreeSet::new();
        while params.len() < n {
            params.insert(Rational::new(
                rng.gen_range(-40i64..=40).into(),
                rng.gen_range(1i64..=7).into(),
            ));
        }
        let ground = GroundSet::new(params.into_iter().collect())?;
        let k = rng.gen_range(0..=d.min(n - 1));
        let mut cuts: Vec<usize> = sample(&mut rng, n - 1, k).into_iter().map(|c| c + 1).collect();
        cuts.sort_unstable();
        cuts.push(n);
        let sizes: Vec<usize> = cuts
            .iter()
            .scan(0, |prev, &c| {
                let s = c - *prev;
                *prev = c;
                Some(s)
            })
            .collect();
        let sign = if rng.gen_bool(0.5) { Sign::Positive } else { Sign::Negative };
        let dec = SignedDecomposition::new(sizes, sign, d)?;
        let xi = chart_from_decomposition(&dec, &ground)?;
        let input = Input::Instance(xi.clone(), ground.clone());
        if !verify(&input)?.agree {
            return Err(Failure::cross_check("the four facet characterizations disagree")
                .with("instance", i)
                .with("seed", seed)
                .with("data", json!(InstanceJson::from_parts(&xi, &ground))));
        }
    }
    Ok(Output::new(
        json!({"seed": seed, "instances": instances, "agree": true}),
        format!("seed,instances,agree\n{seed},{instances},true\n"),
        format!("{instances} random instances agree (seed {seed})\n"),
    ))
}
