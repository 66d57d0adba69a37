//! Serializable views of library results and their text rendering.
//!
//! Text output lists the same fields as the JSON, one per line.

use std::fmt::Write as _;

use serde::Serialize;

use nvcat_core::bounds::{CatBoundReport, Certificate};
use nvcat_core::cover::{CoverHomology, TorsionSummary};
use nvcat_core::local_system::TwistedDims;

#[derive(Serialize)]
pub struct ValidateView {
    pub vertices: usize,
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    pub cocycle_ok: bool,
    pub violations: Vec<[usize; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periods_generator: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<u64>,
}

impl ValidateView {
    pub fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "vertices: {}", self.vertices).unwrap();
        writeln!(s, "f-vector: {:?}", self.f_vector).unwrap();
        writeln!(s, "euler characteristic: {}", self.euler_characteristic).unwrap();
        if self.cocycle_ok {
            writeln!(s, "cocycle: ok").unwrap();
        } else {
            writeln!(s, "cocycle: violated on {} triangle(s)", self.violations.len()).unwrap();
            for t in &self.violations {
                writeln!(s, "  triangle {t:?}").unwrap();
            }
        }
        if let (Some(p), Some(l)) = (self.periods_generator, self.lambda) {
            writeln!(s, "periods generator: {p}, lambda: {l}").unwrap();
        }
        s
    }
}

#[derive(Serialize)]
pub struct DegreeView {
    pub degree: usize,
    pub free_rank: usize,
    pub invariant_factors: Vec<String>,
}

#[derive(Serialize)]
pub struct CoverView {
    pub field: String,
    pub degrees: Vec<DegreeView>,
    pub euler_characteristic: i64,
}

impl CoverView {
    pub fn new(h: &CoverHomology) -> Self {
        CoverView {
            field: h.field.to_string(),
            degrees: h
                .degrees
                .iter()
                .map(|d| DegreeView {
                    degree: d.degree,
                    free_rank: d.free_rank,
                    invariant_factors: d.invariant_factors.iter().map(|p| p.to_string()).collect(),
                })
                .collect(),
            euler_characteristic: h.euler_characteristic(),
        }
    }

    pub fn text(&self) -> String {
        let mut s = format!("field: {}\n", self.field);
        for d in &self.degrees {
            writeln!(
                s,
                "H_{}: free rank {}, torsion [{}]",
                d.degree,
                d.free_rank,
                d.invariant_factors.join(", ")
            )
            .unwrap();
        }
        writeln!(s, "euler characteristic: {}", self.euler_characteristic).unwrap();
        s
    }
}

#[derive(Serialize)]
pub struct FactorView {
    pub factor: String,
    pub multiplicity: usize,
    pub certified: bool,
}

#[derive(Serialize)]
pub struct SuppView {
    pub field: String,
    pub lambda: u64,
    pub degrees: Vec<DegreeView>,
    pub delta: String,
    pub factorization: Vec<FactorView>,
    pub supp: Vec<String>,
    pub torsion_dim: usize,
}

impl SuppView {
    pub fn new(h: &CoverHomology, t: &TorsionSummary) -> Self {
        SuppView {
            field: t.field.to_string(),
            lambda: t.lambda,
            degrees: CoverView::new(h).degrees,
            delta: t.delta.to_string(),
            factorization: t
                .factorization
                .iter()
                .map(|f| FactorView {
                    factor: f.poly.to_string(),
                    multiplicity: f.multiplicity,
                    certified: f.certified,
                })
                .collect(),
            supp: t.supp.iter().map(|a| a.to_string()).collect(),
            torsion_dim: t.torsion_dim,
        }
    }

    pub fn text(&self) -> String {
        let mut s = format!("field: {}\nlambda: {}\n", self.field, self.lambda);
        for d in &self.degrees {
            writeln!(
                s,
                "H_{}: free rank {}, torsion [{}]",
                d.degree,
                d.free_rank,
                d.invariant_factors.join(", ")
            )
            .unwrap();
        }
        writeln!(s, "delta: {}", self.delta).unwrap();
        for f in &self.factorization {
            let mark = if f.certified {
                ""
            } else {
                " (irreducibility not certified)"
            };
            writeln!(s, "  factor {} ^ {}{mark}", f.factor, f.multiplicity).unwrap();
        }
        writeln!(s, "supp: {{{}}}", self.supp.join(", ")).unwrap();
        writeln!(s, "torsion dimension: {}", self.torsion_dim).unwrap();
        s
    }
}

#[derive(Serialize)]
pub struct CohomView {
    pub field: String,
    pub values: Vec<TwistedDims>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover_free_ranks: Option<Vec<usize>>,
}

impl CohomView {
    pub fn text(&self) -> String {
        let mut s = format!("field: {}\n", self.field);
        for d in &self.values {
            writeln!(s, "a = {}: dims {:?}", d.a, d.dims).unwrap();
        }
        if let Some(r) = &self.cover_free_ranks {
            writeln!(s, "cover free ranks: {r:?}").unwrap();
        }
        s
    }
}

pub fn report_text(r: &CatBoundReport) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "field: {}, seed: {}, max_r: {}, survivor order: {}",
        r.field, r.seed, r.max_r, r.survivor_order
    )
    .unwrap();
    writeln!(s, "periods generator: {}, lambda: {}", r.periods_generator, r.lambda).unwrap();
    if !r.supp.is_empty() {
        writeln!(s, "supp: {{{}}}", r.supp.join(", ")).unwrap();
    }
    if !r.survivor_dims.is_empty() {
        writeln!(s, "survivor dims: {:?}", r.survivor_dims).unwrap();
    }
    for b in &r.bounds {
        let detail = match &b.certificate {
            Certificate::Cup(c) => format!("a = {}, b = {}, r = {}", c.a, c.b, c.r),
            Certificate::Massey(c) => format!("r = {}, survivors through order {}", c.r, c.survivor_order),
            Certificate::Classical(c) => format!("cuplength {}", c.w.len()),
        };
        writeln!(s, "bound {} from {} ({detail})", b.value, b.theorem.name()).unwrap();
    }
    let sources: Vec<&str> = r.best_sources.iter().map(|t| t.name()).collect();
    writeln!(s, "best bound: {} [{}]", r.best_bound, sources.join(", ")).unwrap();
    for rel in &r.relations {
        writeln!(s, "relation: {rel}").unwrap();
    }
    for n in &r.notes {
        writeln!(s, "note: {n}").unwrap();
    }
    writeln!(s, "{}", r.interpretation).unwrap();
    s
}
