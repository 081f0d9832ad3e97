//! The batch of reproduction checks behind `report-all`.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use super::{sweep, theorem_37_report, theorem_a_report, theorem_c_report};
use crate::charring::Partition2;
use crate::error::Result;
use crate::gzeta::{gzeta_dim, metabelian_summand, theorem_b_closed_form, theorem_b_predicate};
use crate::liechar::{
    l4_delta2_comp_factors, lie_tilting_decomp, stohr_tilting_decomp, StohrSummand, Verdict,
};
use crate::modarith::PrimeChar;
use crate::tiltchar::{is_weyl_simple, tensor_power_decomp};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, outcome: Result<Vec<String>>) -> CheckResult {
    match outcome {
        Ok(failures) if failures.is_empty() => CheckResult {
            name,
            passed: true,
            detail: "ok".into(),
        },
        Ok(failures) => CheckResult {
            name,
            passed: false,
            detail: failures.join("; "),
        },
        Err(e) => CheckResult {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn primes(ps: &[u64]) -> Vec<PrimeChar> {
    ps.iter()
        .map(|&q| PrimeChar::new(q).expect("prime literal"))
        .collect()
}

fn gzeta_dichotomy() -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for p in primes(&[2, 3, 5]) {
        let q = p.get();
        for r in (q..=250).step_by(q as usize) {
            let want = match p.power_exponent(r) {
                Some(m) => q.pow(m) - q.pow(m - 1),
                None => r - 1,
            };
            let got = gzeta_dim(r, p)?;
            if got != want {
                bad.push(format!("p={q} r={r}: dim {got}, want {want}"));
            }
        }
    }
    Ok(bad)
}

fn theorem_b_agreement() -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for p in primes(&[2, 3, 5, 7]) {
        for r in 2..=250 {
            if theorem_b_predicate(r, p)? != theorem_b_closed_form(r, p) {
                bad.push(format!("p={p} r={r}"));
            }
        }
    }
    Ok(bad)
}

fn golden_values() -> Result<Vec<String>> {
    let two = PrimeChar::TWO;
    let map = |pairs: &[(u32, i128)]| pairs.iter().copied().collect::<BTreeMap<_, _>>();
    let mut bad = Vec::new();
    let mut expect = |label: &str, got: &BTreeMap<u32, i128>, want: BTreeMap<u32, i128>| {
        if *got != want {
            bad.push(format!("{label}: got {got:?}"));
        }
    };
    expect(
        "E^2",
        tensor_power_decomp(2, two)?.entries(),
        map(&[(2, 1)]),
    );
    expect(
        "E^3",
        tensor_power_decomp(3, two)?.entries(),
        map(&[(3, 1), (1, 2)]),
    );
    expect(
        "D_{1,1}",
        stohr_tilting_decomp(&StohrSummand::new(1, 1)?)?.entries(),
        map(&[(3, 1), (1, 1)]),
    );
    expect(
        "L^6",
        lie_tilting_decomp(6, two)?.decomposition.entries(),
        map(&[(4, 1), (0, 1)]),
    );
    let l4 = l4_delta2_comp_factors()?;
    expect(
        "L^4(Δ(2))",
        l4.entries(),
        map(&[(6, 1), (4, 2), (2, 3), (0, 4)]),
    );
    if l4.weighted_dimension() != 18 {
        bad.push(format!("L^4(Δ(2)) dimension {}", l4.weighted_dimension()));
    }
    Ok(bad)
}

fn theorem_a(range: RangeInclusive<u32>) -> Result<Vec<String>> {
    let two = PrimeChar::TWO;
    let rows = sweep(range, theorem_a_report)?;
    let mut bad = Vec::new();
    for (r, rows) in rows {
        let got: Vec<Partition2> = rows
            .iter()
            .filter(|x| x.expected)
            .map(|x| x.lambda)
            .collect();
        let want: Vec<Partition2> = Partition2::p_regular(r, two)
            .filter(|l| l.weight() != r && (l.weight() != r - 2 || !two.is_power(r as u64)))
            .collect();
        if got != want {
            bad.push(format!("r={r}: membership {got:?}"));
        }
        for row in rows.iter().filter(|x| !x.certified) {
            bad.push(format!("r={r}: {} not certified", row.lambda));
        }
    }
    Ok(bad)
}

fn theorem_37(range: RangeInclusive<u32>) -> Result<Vec<String>> {
    let reports = sweep(range, theorem_37_report)?;
    let mut bad = Vec::new();
    for (r, rep) in reports {
        if (r % 2 == 1) != (rep.verdict == Verdict::Tilting) {
            bad.push(format!("r={r}: {}", rep.verdict));
        }
    }
    for r in [4, 8] {
        let v = lie_tilting_decomp(r, PrimeChar::TWO)?.verdict;
        if v != Verdict::NotTiltingCertified {
            bad.push(format!("r={r}: {v}"));
        }
    }
    Ok(bad)
}

fn dimension_conservation() -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for p in primes(&[2, 3, 5]) {
        for r in 1..=20u32 {
            let d = tensor_power_decomp(r, p)?;
            if d.weighted_dimension() != 1i128 << r {
                bad.push(format!("E^{r} at p={p}"));
            }
            if !p.divides(r as u64) {
                let lie = lie_tilting_decomp(r, p)?;
                if lie.decomposition.weighted_dimension() != lie.character.dimension() {
                    bad.push(format!("L^{r} at p={p}"));
                }
            }
        }
    }
    Ok(bad)
}

fn theorem_c_consistency() -> Result<Vec<String>> {
    let cases = [(9, 3), (27, 3), (10, 5), (50, 5), (25, 5)];
    let results: Vec<Result<Vec<String>>> = cases
        .par_iter()
        .map(|&(r, q)| {
            let rows = theorem_c_report(r, PrimeChar::new(q)?)?;
            Ok(rows
                .iter()
                .filter(|x| x.claimed && !x.char_consistent)
                .map(|x| format!("r={r} p={q} {}", x.lambda))
                .collect())
        })
        .collect();
    let mut bad = Vec::new();
    for res in results {
        bad.extend(res?);
    }
    Ok(bad)
}

fn metabelian() -> Result<Vec<String>> {
    let mut bad = Vec::new();
    if !metabelian_summand(4, PrimeChar::TWO)? {
        bad.push("r=4 p=2".into());
    }
    for p in primes(&[2, 3, 5, 7]) {
        for r in 2..=100u64 {
            if p.is_power(r) {
                continue;
            }
            let want = r == 2 || is_weyl_simple(r as u32 - 2, p);
            if metabelian_summand(r, p)? != want {
                bad.push(format!("r={r} p={p}"));
            }
        }
    }
    Ok(bad)
}

type Job = Box<dyn Fn() -> Result<Vec<String>> + Send + Sync>;

/// Runs every reproduction check; Theorem A and the tilting criterion use
/// the degrees in `range`.
pub fn report_all(range: RangeInclusive<u32>) -> Vec<CheckResult> {
    let jobs: Vec<(&'static str, Job)> = vec![
        ("gzeta-dichotomy", Box::new(gzeta_dichotomy)),
        ("theorem-b-closed-form", Box::new(theorem_b_agreement)),
        ("golden-values", Box::new(golden_values)),
        (
            "theorem-a",
            Box::new({
                let range = range.clone();
                move || theorem_a(range.clone())
            }),
        ),
        (
            "theorem-37",
            Box::new({
                let range = range.clone();
                move || theorem_37(range.clone())
            }),
        ),
        ("dimension-conservation", Box::new(dimension_conservation)),
        ("theorem-c-consistency", Box::new(theorem_c_consistency)),
        ("metabelian-predicate", Box::new(metabelian)),
    ];
    jobs.par_iter()
        .map(|(name, job)| check(name, job()))
        .collect()
}
