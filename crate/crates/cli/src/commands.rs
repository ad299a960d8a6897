//! Subcommand implementations. Each returns a JSON report and whether
//! every certified check passed.

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use umap_core::algebraic::random::{quotient_instance, random_element};
use umap_core::algebraic::{
    bombieri_gap_check, enumerate_algebraics, height_bound_product, height_bound_sum, icen_check, AlgebraicError,
    AlgebraicNumber, BoundSpec, Field,
};
use umap_core::exact::rational::{self, Rational};
use umap_core::exact::ExactError;
use umap_core::liouville::{
    cf_expansion, classify_witness, liouville_prefix_check, strong_prefix_check, LiouvilleError, LiouvilleNumber,
};
use umap_core::map::{
    approximant_sequence, eval_at_rational, lower_degree_audit, map_of_number, measure_growth_constant, parse_map,
    primitivity_scan, verify_theorem_chain, ApproximantRecord, GrowthConstant, MapError, RationalMap,
};

use crate::args;

#[derive(Debug)]
pub enum CliError {
    /// Bad input; exit status 2.
    Usage(String),
    /// A computation that could not be completed; exit status 1.
    Failure(String),
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::Parse(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<AlgebraicError> for CliError {
    fn from(e: AlgebraicError) -> Self {
        use AlgebraicError::*;
        match e {
            Exact(inner) => inner.into(),
            Parse(_) | NotIrreducible(_) | IrreducibilityUnknown(_) | EmbeddingNotIsolating | InvalidBound | FieldMismatch
            | EmptyInput | WrongCoordinateCount { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<LiouvilleError> for CliError {
    fn from(e: LiouvilleError) -> Self {
        use LiouvilleError::*;
        match e {
            Exact(inner) => inner.into(),
            Parse(_) | InvalidBase(_) | NotIncreasing(_) | InvalidIndex(_) | TooFewEntries | NonPositiveConstant
            | NegativeEpsilon => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<MapError> for CliError {
    fn from(e: MapError) -> Self {
        use MapError::*;
        match e {
            Algebraic(inner) => inner.into(),
            Liouville(inner) => inner.into(),
            Exact(inner) => inner.into(),
            Parse(_) | ZeroDenominator | ConstantMap | DegreeNotBelowM { .. } | GrowthConstantNotAboveOne | PoleAtAlpha(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failure(e.to_string()),
        }
    }
}

pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn pair(iv: &umap_core::exact::RationalInterval) -> Value {
    json!([rational::fmt_rational(iv.lo()), rational::fmt_rational(iv.hi())])
}

fn number_json(a: &AlgebraicNumber) -> Value {
    json!({
        "min_poly": a.min_poly().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "degree": a.degree(),
        "height": a.height().to_string(),
        "iso": pair(a.iso()),
    })
}

pub fn parse_number(s: &str) -> Result<LiouvilleNumber, CliError> {
    LiouvilleNumber::parse(s).map_err(|e| usage(e.to_string()))
}

pub fn construct(number: &str, ks: &[usize]) -> Result<Outcome, CliError> {
    let xi = parse_number(number)?;
    let rows = ks
        .iter()
        .map(|&k| {
            let c = xi.convergent(k)?;
            let omega = xi.omega_measured(k)?;
            Ok(json!({
                "k": k,
                "convergent": rational::fmt_rational(&c.value),
                "height": c.height().to_string(),
                "gap": pair(&c.gap),
                "omega": pair(&omega),
            }))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Outcome { report: json!({"number": xi.to_json(), "convergents": rows}), passed: true })
}

pub fn cf(number: &str, count: usize, budget: usize) -> Result<Outcome, CliError> {
    let xi = parse_number(number)?;
    let quotients = match &xi {
        LiouvilleNumber::Cf(c) => c.quotients().iter().take(count).cloned().collect::<Vec<BigInt>>(),
        LiouvilleNumber::Series(_) => cf_expansion(|w: &Rational| xi.enclosure(w), count, budget)?,
    };
    let cfn = umap_core::liouville::CFNumber::new(quotients)?;
    let s = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    Ok(Outcome {
        report: json!({
            "number": xi.to_json(),
            "quotients": s(cfn.quotients()),
            "numerators": s(cfn.numerators()),
            "denominators": s(cfn.denominators()),
        }),
        passed: true,
    })
}

pub struct ClassifyOpts<'a> {
    pub number: &'a str,
    pub ks: &'a [usize],
    pub class: &'a str,
    pub c: &'a Rational,
    pub eps: &'a Rational,
    pub n: u32,
    pub start: usize,
    pub threshold: &'a Rational,
}

pub fn classify(o: &ClassifyOpts<'_>) -> Result<Outcome, CliError> {
    let xi = parse_number(o.number)?;
    let verdict = match o.class {
        "l" => classify_witness(&xi.witness(o.ks)?, o.c, o.eps)?,
        "liouville" => liouville_prefix_check(&xi.witness(o.ks)?, o.threshold)?,
        "strong" => match &xi {
            LiouvilleNumber::Cf(c) => strong_prefix_check(c, o.n, o.start)?,
            LiouvilleNumber::Series(_) => return Err(usage("the strong class needs a continued fraction number")),
        },
        other => return Err(usage(format!("unknown class '{other}' (use l, strong or liouville)"))),
    };
    let passed = verdict.passes;
    let report = json!({
        "class": verdict.class_name,
        "C": rational::fmt_rational(&verdict.c),
        "passes": verdict.passes,
        "first_failure_index": verdict.first_failure_index,
    });
    Ok(Outcome { report, passed })
}

fn field_and_map(field: &str, map: &str) -> Result<(Field, RationalMap), CliError> {
    let k = args::parse_field(field).map_err(usage)?;
    let f = parse_map(&k, map)?;
    Ok((k, f))
}

pub fn map_eval(field: &str, map: &str, alphas: &[Rational], scan: Option<u64>) -> Result<Outcome, CliError> {
    let (k, f) = field_and_map(field, map)?;
    let m = k.degree();
    let values = alphas
        .iter()
        .map(|a| {
            let g = eval_at_rational(&f, a)?;
            let mut v = number_json(&g);
            v["alpha"] = json!(rational::fmt_rational(a));
            v["primitive"] = json!(g.degree() == m);
            Ok(v)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut report = json!({"field": k.to_string(), "map": f.to_json(), "values": values});
    if let Some(cap) = scan {
        let s = primitivity_scan(&f, &BigInt::from(cap))?;
        report["scan"] = json!({
            "height_cap": cap,
            "scanned": s.scanned,
            "exceptions": s.exceptions.iter().map(rational::fmt_rational).collect::<Vec<_>>(),
            "poles": s.poles.iter().map(rational::fmt_rational).collect::<Vec<_>>(),
        });
    }
    Ok(Outcome { report, passed: true })
}

fn growth_constant(records: &[ApproximantRecord], c: Option<&Rational>) -> Result<GrowthConstant, CliError> {
    Ok(match c {
        Some(c) => GrowthConstant::new(c.clone())?,
        None => measure_growth_constant(records)?,
    })
}

pub struct ChainOpts<'a> {
    pub number: &'a str,
    pub field: &'a str,
    pub map: &'a str,
    pub ks: &'a [usize],
    pub c: Option<&'a Rational>,
    pub budget: usize,
}

pub fn verify_theorem(o: &ChainOpts<'_>) -> Result<Outcome, CliError> {
    let xi = parse_number(o.number)?;
    let (k, f) = field_and_map(o.field, o.map)?;
    let records = approximant_sequence(&xi, &f, o.ks, o.budget)?;
    let c = growth_constant(&records, o.c)?;
    let rep = verify_theorem_chain(&records, &c, k.degree())?;
    let mut report = rep.to_json();
    report["number"] = xi.to_json();
    report["field"] = json!(k.to_string());
    report["map"] = f.to_json();
    Ok(Outcome { passed: rep.all_ok(), report })
}

pub fn audit_degree(o: &ChainOpts<'_>, n: usize, height: u64) -> Result<Outcome, CliError> {
    let xi = parse_number(o.number)?;
    let (k, f) = field_and_map(o.field, o.map)?;
    let m = k.degree();
    if n >= m {
        return Err(MapError::DegreeNotBelowM { n, m }.into());
    }
    let spec = BoundSpec::new(n, height)?;
    let records = approximant_sequence(&xi, &f, o.ks, o.budget)?;
    let c = growth_constant(&records, o.c)?;
    let target = map_of_number(f.clone(), xi.clone());
    let depth = o.budget.clamp(1, 12);
    let rep = lower_degree_audit(&target, n, &spec, &records, &c, m, depth)?;
    let worst = rep.worst.as_ref().map(|w| {
        json!({
            "candidate": number_json(&w.candidate),
            "distance": pair(&w.distance),
            "exponent": pair(&w.exponent),
        })
    });
    let report = json!({
        "number": xi.to_json(),
        "field": k.to_string(),
        "map": f.to_json(),
        "n": rep.n,
        "m": rep.m,
        "spec": {"max_degree": spec.max_degree, "max_height": spec.max_height},
        "C": rational::fmt_rational(c.value()),
        "candidates": rep.candidates,
        "audited": rep.audited,
        "worst": worst,
        "all_separated": rep.all_separated,
        "triangle_pairs": rep.triangle_pairs,
        "triangle_violations": rep.triangle_violations,
        "koksma_bound": rational::fmt_rational(&rep.koksma_bound),
    });
    Ok(Outcome { passed: rep.passes(), report })
}

pub struct LemmaOpts<'a> {
    pub lemma: u32,
    pub deg: usize,
    pub height: u64,
    pub field: &'a str,
    pub count: usize,
    pub seed: u64,
}

pub fn check_lemmas(o: &LemmaOpts<'_>) -> Result<Outcome, CliError> {
    let report = match o.lemma {
        2 => {
            let nums = enumerate_algebraics(&BoundSpec::new(o.deg, o.height)?);
            let violations: usize = (0..nums.len())
                .into_par_iter()
                .map(|i| {
                    (i + 1..nums.len())
                        .filter(|&j| !bombieri_gap_check(&nums[i], &nums[j]).map(|g| g.verified).unwrap_or(false))
                        .count()
                })
                .sum();
            let pairs = nums.len() * nums.len().saturating_sub(1) / 2;
            json!({"lemma": 2, "max_degree": o.deg, "max_height": o.height, "numbers": nums.len(), "pairs": pairs, "violations": violations})
        }
        3 => {
            let k = args::parse_field(o.field).map_err(usage)?;
            let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
            let (mut sum_bad, mut prod_bad) = (0usize, 0usize);
            for _ in 0..o.count {
                let xs = [random_element(&mut rng, &k, 100), random_element(&mut rng, &k, 100)];
                sum_bad += usize::from(!height_bound_sum(&xs)?.ok);
                prod_bad += usize::from(!height_bound_product(&xs)?.ok);
            }
            json!({"lemma": 3, "field": k.to_string(), "instances": o.count, "seed": o.seed,
                   "sum_violations": sum_bad, "product_violations": prod_bad, "violations": sum_bad + prod_bad})
        }
        1 => {
            let k = args::parse_field(o.field).map_err(usage)?;
            let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
            let mut bad = 0usize;
            for i in 0..o.count {
                let (r, l) = (i % 4, 2 + i % 2);
                let (rel, values, eta) = quotient_instance(&mut rng, &k, r, l, 20);
                let c = icen_check(&rel, &values, &eta)?;
                bad += usize::from(!(c.degree_ok && c.height_ok));
            }
            json!({"lemma": 1, "field": k.to_string(), "instances": o.count, "seed": o.seed, "violations": bad})
        }
        other => return Err(usage(format!("unknown lemma {other} (use 1, 2 or 3)"))),
    };
    let passed = report["violations"] == json!(0);
    Ok(Outcome { report, passed })
}
