//! Bundled worked examples with their published values.
//!
//! Published values were rounded at intermediate steps, so some checks carry
//! a tolerance wider than floating-point noise.

use std::fmt::Write as _;

use super::document::{load_document, Scenario};
use super::pipeline::run_pipeline;
use crate::mass::MassFunction;
use crate::rules::{conjunctive, pcr5, FusionReport};

pub const DIRECTORS_TOTAL_PROPORTIONAL: &str =
    include_str!("../../scenarios/directors-total-proportional.json");
pub const DIRECTORS_MIXED_INTERVALS: &str =
    include_str!("../../scenarios/directors-mixed-intervals.json");
pub const DIRECTORS_UNDER_AVERAGE: &str =
    include_str!("../../scenarios/directors-under-average.json");
pub const SUSPECTS_PCR5: &str = include_str!("../../scenarios/suspects-pcr5.json");

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenCheck {
    pub quantity: String,
    pub reference: f64,
    pub computed: f64,
    pub tolerance: f64,
}

impl GoldenCheck {
    pub fn delta(&self) -> f64 {
        (self.computed - self.reference).abs()
    }

    pub fn passed(&self) -> bool {
        self.delta() <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenCase {
    pub name: &'static str,
    pub summary: String,
    pub checks: Vec<GoldenCheck>,
}

impl GoldenCase {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(GoldenCheck::passed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenReport {
    pub cases: Vec<GoldenCase>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(GoldenCase::passed)
    }

    pub fn case(&self, name: &str) -> Option<&GoldenCase> {
        self.cases.iter().find(|c| c.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for case in &self.cases {
            let _ = writeln!(out, "{}: {}", case.name, case.summary);
            let _ = writeln!(
                out,
                "  {:<22} {:>12} {:>12} {:>10} {:>8}  status",
                "quantity", "reference", "computed", "|delta|", "tol"
            );
            for c in &case.checks {
                let _ = writeln!(
                    out,
                    "  {:<22} {:>12.6} {:>12.6} {:>10.2e} {:>8.0e}  {}",
                    c.quantity,
                    c.reference,
                    c.computed,
                    c.delta(),
                    c.tolerance,
                    if c.passed() { "ok" } else { "MISMATCH" }
                );
            }
            out.push('\n');
        }
        let total: usize = self.cases.iter().map(|c| c.checks.len()).sum();
        let failed: usize = self
            .cases
            .iter()
            .flat_map(|c| &c.checks)
            .filter(|c| !c.passed())
            .count();
        let _ = writeln!(
            out,
            "{} cases, {} checks, {} mismatches",
            self.cases.len(),
            total,
            failed
        );
        out
    }
}

struct Checks<'a> {
    mass: &'a MassFunction,
    out: Vec<GoldenCheck>,
}

impl<'a> Checks<'a> {
    fn new(mass: &'a MassFunction) -> Self {
        Self {
            mass,
            out: Vec::new(),
        }
    }

    fn on(&mut self, mass: &'a MassFunction) -> &mut Self {
        self.mass = mass;
        self
    }

    fn value(
        &mut self,
        quantity: impl Into<String>,
        reference: f64,
        computed: f64,
        tolerance: f64,
    ) -> &mut Self {
        self.out.push(GoldenCheck {
            quantity: quantity.into(),
            reference,
            computed,
            tolerance,
        });
        self
    }

    fn weight(&mut self, prefix: &str, expr: &str, reference: f64, tolerance: f64) -> &mut Self {
        let computed = if expr == "∅" {
            self.mass.conflict_weight()
        } else {
            self.mass.weight_of(expr).expect("bundled label")
        };
        self.value(format!("{prefix}({expr})"), reference, computed, tolerance)
    }
}

fn load(doc: &str) -> Scenario {
    load_document(doc.as_bytes()).expect("bundled scenario is valid")
}

fn run(s: &Scenario) -> FusionReport {
    run_pipeline(s).expect("bundled pipeline runs")
}

fn directors_total_proportional() -> GoldenCase {
    let s = load(DIRECTORS_TOTAL_PROPORTIONAL);
    let masses = s.masses();
    let table = conjunctive(&masses[0], &masses[1]).expect("nonnegative");
    let report = run(&s);
    let mut c = Checks::new(&table.result);
    c.weight("m12", "A", 0.46, 1e-9)
        .weight("m12", "B", 0.28, 1e-9)
        .weight("m12", "A|B", 0.02, 1e-9)
        .value("k", 0.45, table.conflict, 1e-9)
        .value("k after divisor", 0.409, report.scaled_conflict(), 1e-3)
        .on(&report.result)
        .weight("m", "A", 0.67, 0.01)
        .weight("m", "B", 0.40, 0.01)
        .weight("m", "A|B", 0.03, 0.01)
        .value("total", 1.1, report.result.total(), 1e-9);
    GoldenCase {
        name: "directors-total-proportional",
        summary:
            "two over-masses on [0, 1.1]; OverNormalize, then spread conflict over all focal sets"
                .into(),
        checks: c.out,
    }
}

fn directors_mixed_intervals() -> GoldenCase {
    let s = load(DIRECTORS_MIXED_INTERVALS);
    let masses = s.masses();
    let table = conjunctive(&masses[0], &masses[1]).expect("nonnegative");
    let redistributed = pcr5(&masses[0], &masses[1]).expect("nonnegative");
    let report = run(&s);
    let mut c = Checks::new(&table.result);
    c.weight("m12", "A", 0.46, 1e-9)
        .weight("m12", "B", 0.30, 1e-9)
        .weight("m12", "A|B", 0.02, 1e-9)
        .weight("m12", "∅", 0.54, 1e-9)
        .on(&redistributed.result)
        .weight("pcr5", "A", 0.755, 0.001)
        .weight("pcr5", "B", 0.545, 0.001)
        .weight("pcr5", "A|B", 0.020, 0.001)
        .value("divisor", 1.1, report.divisor, 1e-9)
        .on(&report.result)
        .weight("m", "A", 0.686, 0.001)
        .weight("m", "B", 0.496, 0.001)
        .weight("m", "A|B", 0.018, 0.001)
        .value("total", 1.2, report.result.total(), 1e-9);
    GoldenCase {
        name: "directors-mixed-intervals",
        summary: "over-masses on [0, 1.1] and [0, 1.2]; PCR5, then OverNormalize to [0, 1.2]"
            .into(),
        checks: c.out,
    }
}

fn directors_under_average() -> GoldenCase {
    let s = load(DIRECTORS_UNDER_AVERAGE);
    let report = run(&s);
    let mut c = Checks::new(&report.result);
    c.weight("m", "A", 0.1, 1e-9)
        .weight("m", "B", 0.3, 1e-9)
        .weight("m", "A|B", 0.4, 1e-9)
        .value("conflict", 0.0, report.conflict, 1e-9);
    let m = &report.result;
    let best_singleton = m
        .focal_entries()
        .filter(|(s, _)| s.cardinality() == 1)
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(s, _)| m.frame().render(s))
        .unwrap_or_default();
    GoldenCase {
        name: "directors-under-average",
        summary: format!(
            "two under-masses on [-0.2, 1]; average rule (best singleton: {best_singleton})"
        ),
        checks: c.out,
    }
}

fn suspects_pcr5() -> GoldenCase {
    let s = load(SUSPECTS_PCR5);
    let masses = s.masses();
    let table = conjunctive(&masses[0], &masses[1]).expect("nonnegative");
    let report = run(&s);
    let m = &report.result;
    let a = s.frame.parse_focal("A").expect("label");
    let theta = s.frame.universe();
    let mut c = Checks::new(&table.result);
    c.weight("m12", "A", 0.28, 1e-9)
        .weight("m12", "B", 0.46, 1e-9)
        .weight("m12", "A|B", 0.02, 1e-9)
        .weight("m12", "∅", 0.45, 1e-9)
        .on(m)
        .weight("m", "A", 0.44, 0.02)
        .weight("m", "B", 0.64, 0.02)
        .weight("m", "A|B", 0.02, 0.02)
        .value("Bel(A)", 0.44, m.belief(a).expect("nonempty"), 0.02)
        .value("Pl(A)", 0.46, m.plausibility(a).expect("nonempty"), 0.02)
        .value("Bel(A|B)", 1.1, m.belief(theta).expect("nonempty"), 1e-6)
        .value(
            "Pl(A|B)",
            1.1,
            m.plausibility(theta).expect("nonempty"),
            1e-6,
        );
    GoldenCase {
        name: "suspects-pcr5",
        summary: "two over-masses on [0, 1.1]; PCR5, then OverNormalize, then Bel/Pl".into(),
        checks: c.out,
    }
}

/// Runs all bundled worked examples.
pub fn paper_examples() -> GoldenReport {
    GoldenReport {
        cases: vec![
            directors_total_proportional(),
            directors_mixed_intervals(),
            directors_under_average(),
            suspects_pcr5(),
        ],
    }
}
