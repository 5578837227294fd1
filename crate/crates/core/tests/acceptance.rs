//! Acceptance run on SL_q(2): degree bound 3, grade cap 3, exact
//! arithmetic throughout. Prints one PASS/FAIL line per criterion.
//!
//! Criterion 2 reads FAIL: L+ and L- take different values on the two
//! sides of the determinant rule `t[1,2]*t[2,1] -> ...` (L+(det) = q, not
//! 1), so they are not rewrite-invariant. The run exits nonzero if any
//! other criterion fails or if criterion 2 fails for a different reason.

use std::process::ExitCode;

use qdc::bicomplex::{cartan_report, rank_report};
use qdc::calculus::{leibniz_report, roundtrip_report, Calculus};
use qdc::checks::{bicovariance_report, hopf_report};
use qdc::functionals::DualSpace;
use qdc::report::{CheckReport, Status};

const DEGREE: usize = 3;
const CAP: usize = 3;
const SAMPLES: usize = 50;
const SEED: u64 = 20_251_018;

struct Criterion {
    number: usize,
    title: &'static str,
    failures: Vec<(String, String)>,
    note: Option<String>,
}

fn gate(all: &CheckReport, ids: &[&str]) -> Vec<(String, String)> {
    ids.iter()
        .filter_map(|id| match all.get(id) {
            None => Some((id.to_string(), "missing from the reports".into())),
            Some(r) if r.status == Status::Fail => Some((id.to_string(), r.witness.clone().unwrap_or_default())),
            Some(_) => None,
        })
        .collect()
}

fn status_of(all: &CheckReport, id: &str) -> String {
    match all.get(id) {
        Some(r) if r.status == Status::Pass => format!("{} holds", id),
        Some(r) => format!("{} fails ({})", id, r.witness.as_deref().unwrap_or("")),
        None => format!("{} missing", id),
    }
}

fn main() -> ExitCode {
    let run = || -> qdc::Result<Vec<Criterion>> {
        let c = Calculus::standard(CAP)?;
        let dual = DualSpace::new(c.qg(), DEGREE);
        let mut all = hopf_report(c.qg(), DEGREE)?;
        all.extend(bicovariance_report(c.qg(), c.functionals(), &dual)?);
        all.extend(leibniz_report(&c, DEGREE, SAMPLES, SEED)?);
        all.extend(cartan_report(&c, DEGREE, SAMPLES, SEED)?);
        all.extend(roundtrip_report(&c, &dual)?);
        all.extend(rank_report(&c, &[2, 3, 5])?);

        let groups: [(&str, Vec<&str>); 10] = [
            (
                "R-matrix gate",
                vec!["rmatrix-yang-baxter", "rmatrix-hecke", "rmatrix-perturbed-rejected"],
            ),
            (
                "rewrite soundness",
                vec![
                    "rewrite-confluence",
                    "determinant-central",
                    "rewrite-invariance-lplus",
                    "rewrite-invariance-lminus",
                    "rewrite-invariance-f",
                    "rewrite-invariance-chi",
                ],
            ),
            ("Hopf axioms", vec!["coassociativity", "counit-law", "antipode-law"]),
            (
                "bicovariance identities",
                vec![
                    "bracket-relation",
                    "braiding-intertwines-f",
                    "mixed-exchange",
                    "vector-field-exchange",
                    "q-jacobi",
                    "symmetric-vanishing",
                ],
            ),
            ("d against the vector fields", vec!["d-basis-expansion"]),
            (
                "Leibniz and Cartan conditions",
                vec![
                    "leibniz-d",
                    "graded-leibniz-d",
                    "no-lowering",
                    "d-squared-trace",
                    "partial-squared-trace",
                    "delta-squared-trace",
                    "anticommute-trace",
                    "d-squared-counit",
                    "partial-squared-counit",
                    "delta-squared-counit",
                    "anticommute-counit",
                ],
            ),
            (
                "projector laws",
                vec!["projector-idempotent", "projector-complete", "projector-orthogonal"],
            ),
            (
                "reconstruction round trip",
                vec![
                    "phi-rank",
                    "phi-differential",
                    "roundtrip-trace",
                    "roundtrip-counit",
                    "psi-injective",
                ],
            ),
            (
                "bicomplex grid",
                vec!["grid-additivity", "grid-r-at-most-one", "classical-two-forms"],
            ),
            (
                "numeric rank cross-check",
                vec!["numeric-ranks-q2", "numeric-ranks-q3", "numeric-ranks-q5"],
            ),
        ];
        let mut out = Vec::new();
        for (i, (title, ids)) in groups.into_iter().enumerate() {
            let note = match i + 1 {
                7 => Some(status_of(&all, "projector-right-module")),
                8 => all
                    .results
                    .iter()
                    .find(|r| r.id == "psi-injective-witness")
                    .map(|r| r.description.clone()),
                _ => None,
            };
            out.push(Criterion {
                number: i + 1,
                title,
                failures: gate(&all, &ids),
                note,
            });
        }
        Ok(out)
    };

    let criteria = match run() {
        Ok(c) => c,
        Err(e) => {
            println!("acceptance run aborted: {}", e);
            return ExitCode::FAILURE;
        }
    };
    let mut unexpected = false;
    for c in &criteria {
        let verdict = if c.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {}: {} ({})", c.number, verdict, c.title);
        for (id, w) in &c.failures {
            println!("    {}: {}", id, w);
        }
        if let Some(n) = &c.note {
            println!("    informative: {}", n);
        }
        let known = c.number == 2
            && c.failures.len() == 2
            && c.failures.iter().all(|(id, w)| {
                (id == "rewrite-invariance-lplus" || id == "rewrite-invariance-lminus") && w.contains("on rule t[1,2]*t[2,1] ->")
            });
        if !c.failures.is_empty() && !known {
            unexpected = true;
        }
    }
    if criteria[1].failures.is_empty() {
        // L+ invariance on the determinant rule would contradict L+(det) = q.
        println!("criterion 2 passed, which contradicts the known L+ value on det_q");
        unexpected = true;
    }
    if unexpected {
        ExitCode::FAILURE
    } else {
        println!("all criteria as recorded; criterion 2 fails on the determinant rule only");
        ExitCode::SUCCESS
    }
}
