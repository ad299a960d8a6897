//! End-to-end acceptance criteria. Each test prints one PASS/FAIL line.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use umap_core::algebraic::number::{charpoly, minimal_relation};
use umap_core::algebraic::random::{quotient_instance, random_element};
use umap_core::algebraic::{
    bombieri_gap_check, enumerate_algebraics, height_bound_product, height_bound_sum, icen_check, BoundSpec, Field,
    FieldElement, NumberField,
};
use umap_core::exact::rational::{self, int, rat, Rational};
use umap_core::exact::upoly;
use umap_core::liouville::{build_strong_cf, classify_witness, strong_prefix_check, LiouvilleNumber, SeriesNumber, Witness};
use umap_core::map::{
    approximant_sequence, lower_degree_audit, map_of_number, measure_growth_constant, parse_map, primitivity_scan,
    verify_theorem_chain,
};

/// Certified worst exponent upper bound of the degree-1 audit of
/// `sqrt2 * l` over heights up to 200, recorded from the first run.
const AUDIT_WORST_EXPONENT_HI: &str = "13065529043/4294967296";

fn report(n: u32, name: &str, ok: bool, detail: String) {
    println!("criterion {n} [{name}]: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn sqrt2_field() -> Field {
    NumberField::parse("[-2,0,1]@[1,2]").unwrap()
}

#[test]
fn criterion_1_separation_exhaustive() {
    let start = Instant::now();
    let nums = enumerate_algebraics(&BoundSpec::new(2, 5).unwrap());
    let violations: usize = (0..nums.len())
        .into_par_iter()
        .map(|i| {
            (i + 1..nums.len())
                .filter(|&j| !bombieri_gap_check(&nums[i], &nums[j]).map(|g| g.verified).unwrap_or(false))
                .count()
        })
        .sum();
    let pairs = nums.len() * (nums.len() - 1) / 2;
    let elapsed = start.elapsed();
    report(
        1,
        "separation, degree <= 2, height <= 5",
        violations == 0 && elapsed < Duration::from_secs(120),
        format!("{} numbers, {pairs} pairs, {violations} violations, {:.1}s", nums.len(), elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_2_sum_product_heights() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let fields = [sqrt2_field(), NumberField::pure_root(3, 2).unwrap()];
    let mut violations = 0;
    let mut total = 0;
    for k in &fields {
        for _ in 0..1000 {
            let a = random_element(&mut rng, k, 100);
            let b = random_element(&mut rng, k, 100);
            if !height_bound_sum(&[a.clone(), b.clone()]).unwrap().ok {
                violations += 1;
            }
            if !height_bound_product(&[a, b]).unwrap().ok {
                violations += 1;
            }
            total += 2;
        }
    }
    report(2, "sum/product height bounds", violations == 0, format!("{total} instances, {violations} violations"));
}

#[test]
fn criterion_3_quotient_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let k = sqrt2_field();
    let mut violations = 0;
    for _ in 0..200 {
        let (r, l) = loop {
            let r = rng.gen_range(0..=3);
            let l = rng.gen_range(0..=3);
            if r.max(l) >= 2 {
                break (r, l);
            }
        };
        let (rel, values, eta) = quotient_instance(&mut rng, &k, r, l, 20);
        match icen_check(&rel, &values, &eta) {
            Ok(c) if c.degree_ok && c.height_ok => {}
            _ => violations += 1,
        }
    }
    report(3, "root height of relations over Q(sqrt2)", violations == 0, format!("200 instances, {violations} violations"));
}

#[test]
fn criterion_4_demo_chain() {
    let start = Instant::now();
    let xi = LiouvilleNumber::parse("series:10:factorial").unwrap();
    let f = parse_map(&sqrt2_field(), "theta*x").unwrap();
    let records = approximant_sequence(&xi, &f, &[2, 3, 4, 5, 6], 8).unwrap();
    let c = measure_growth_constant(&records).unwrap();
    let rep = verify_theorem_chain(&records, &c, 2).unwrap();
    let sixteen = int(16);
    let eq9_form = rep.entries.iter().all(|e| e.e.lo() >= &(e.omega.lo() / &sixteen));
    let spread = rep.entries[4].e.lo() - rep.entries[0].e.hi();
    let heights = records[0].h_gamma == BigInt::from(5000) && records[1].h_gamma == BigInt::from(500_000_000_000u64);
    let elapsed = start.elapsed();
    let ok = eq9_form && rep.monotone_e && spread >= rat(3, 2) && heights && elapsed < Duration::from_secs(60);
    report(
        4,
        "demo chain l with sqrt2*x, k = 2..6",
        ok,
        format!(
            "e2 = [{:.4}, {:.4}], e6 = [{:.4}, {:.4}], spread {:.4}, monotone {}, {:.1}s",
            rational::to_f64(rep.entries[0].e.lo()),
            rational::to_f64(rep.entries[0].e.hi()),
            rational::to_f64(rep.entries[4].e.lo()),
            rational::to_f64(rep.entries[4].e.hi()),
            rational::to_f64(&spread),
            rep.monotone_e,
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_5_audit_regression() {
    let xi = LiouvilleNumber::parse("series:10:factorial").unwrap();
    let f = parse_map(&sqrt2_field(), "theta*x").unwrap();
    let records = approximant_sequence(&xi, &f, &[2, 3, 4, 5, 6], 8).unwrap();
    let c = measure_growth_constant(&records).unwrap();
    let target = map_of_number(f, xi);
    let spec = BoundSpec::new(1, 200).unwrap();
    let run = || lower_degree_audit(&target, 1, &spec, &records, &c, 2, 8).unwrap();
    let (a, b) = (run(), run());
    let worst = a.worst.as_ref().unwrap();
    let hi = rational::fmt_rational(worst.exponent.hi());
    let stable = b.worst.as_ref().map(|w| rational::fmt_rational(w.exponent.hi())) == Some(hi.clone())
        && b.worst.as_ref().unwrap().candidate == worst.candidate;
    // Floating-point brute force over all p/q in the window.
    let fx = rational::to_f64(target(&rat(1, 1 << 60)).unwrap().lo());
    let mut best = (f64::MIN, 0i64, 0i64);
    for q in 1..=200i64 {
        for p in -200..=200i64 {
            let h = p.abs().max(q);
            if h < 2 || num_integer::gcd(p, q) != 1 {
                continue;
            }
            let e = -(fx - p as f64 / q as f64).abs().log2() / (h as f64).log2();
            if e > best.0 {
                best = (e, p, q);
            }
        }
    }
    let oracle_ok = (rational::to_f64(worst.exponent.hi()) - best.0).abs() < 1e-6
        && worst.candidate.as_rational() == Some(rat(best.1, best.2));
    let ok = a.all_separated && a.triangle_violations == 0 && stable && oracle_ok && hi == AUDIT_WORST_EXPONENT_HI;
    report(
        5,
        "degree-1 audit of sqrt2*l, heights <= 200",
        ok,
        format!(
            "{} candidates, worst {} at exponent hi {hi} (~{:.6}), separated {}, triangle violations {}",
            a.candidates,
            worst.candidate,
            rational::to_f64(worst.exponent.hi()),
            a.all_separated,
            a.triangle_violations
        ),
    );
}

#[test]
fn criterion_6_primitivity() {
    let f = parse_map(&sqrt2_field(), "theta*x").unwrap();
    let scan = primitivity_scan(&f, &BigInt::from(30)).unwrap();
    report(6, "primitivity of sqrt2*x up to height 30", scan.exceptions == vec![Rational::zero()], format!("exceptions {:?}", scan.exceptions.iter().map(rational::fmt_rational).collect::<Vec<_>>()));
}

#[test]
fn criterion_7_classifier_fixtures() {
    let ell = SeriesNumber::liouville_constant();
    let full = Witness::from_series(&ell, &[1, 2, 3, 4, 5, 6]).unwrap();
    let sub = Witness::from_series(&ell, &[2, 4, 6]).unwrap();
    let a = classify_witness(&full, &rat(11, 10), &int(0)).unwrap();
    let b = classify_witness(&sub, &rat(14, 10), &int(0)).unwrap();
    let c = classify_witness(&sub, &rat(14, 10), &int(1)).unwrap();
    let ok = a.passes && !b.passes && b.first_failure_index == Some(2) && c.passes;
    report(
        7,
        "classifier fixtures",
        ok,
        format!("full {}, subsampled eps=0 {} at {:?}, subsampled eps=1 {}", a.passes, b.passes, b.first_failure_index, c.passes),
    );
}

#[test]
fn criterion_8_strong_cf() {
    let cf = build_strong_cf(|k| k as u32, 4).unwrap();
    let expected: Vec<BigInt> = [1u64, 2, 5, 127, 260144646].iter().map(|&q| BigInt::from(q)).collect();
    let qs = cf.denominators().to_vec();
    let has_seq = qs.windows(4).any(|w| w == &expected[1..]);
    let v = strong_prefix_check(&cf, 2, 1).unwrap();
    report(8, "strong continued fraction", has_seq && v.passes, format!("q = {:?}, prefix check {}", qs, v.passes));
}

/// Rank of a rational matrix by Gaussian elimination.
fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                for j in c..ncols {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

#[test]
fn criterion_9_minimal_polynomial_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let fields = [
        sqrt2_field(),
        NumberField::pure_root(3, 2).unwrap(),
        NumberField::pure_root(4, 3).unwrap(),
        NumberField::parse("[-1,-1,0,1]@[1,2]").unwrap(),
    ];
    let mut failures = 0;
    for i in 0..500 {
        let k = &fields[i % fields.len()];
        let e = random_element(&mut rng, k, 50);
        let rel = minimal_relation(&e);
        let d = rel.len() - 1;
        let as_k: Vec<FieldElement> = rel.iter().map(|c| FieldElement::from_rational(k, c.clone())).collect();
        let vanishes = upoly::eval(&as_k, &e).is_zero();
        // 1, e, ..., e^(d-1) independent over Q rules out lower degree.
        let powers: Vec<Vec<Rational>> = (0..d).map(|j| e.pow(j as u32).coords().to_vec()).collect();
        let minimal = rank(powers) == d;
        let cp = charpoly(&e.mul_matrix());
        let divides = upoly::rem(&cp, &rel).is_empty();
        let monic = rel.last().is_some_and(|c| c.is_one());
        if !(vanishes && minimal && divides && monic) {
            failures += 1;
        }
    }
    report(9, "minimal polynomial oracle", failures == 0, format!("500 elements, {failures} failures"));
}
