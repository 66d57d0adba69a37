use serde::{Deserialize, Serialize};

use crate::cocycle::{periods, require_cocycle, IntegralCocycle};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

use super::certificate::{
    replay_classical, replay_cup, replay_massey, CupCertificate, MasseyCertificate, ProductCertificate, SparseCochain,
};
use super::classical::classical_cup_length;
use super::cup::{cup_length_bound, supp_summary};
use super::massey::massey_bound;
use super::products::pairing_witness;

pub const SCHEMA_VERSION: u32 = 1;

/// Largest complex the bound pipeline accepts.
pub const MAX_SIMPLICES: usize = 20_000;

#[derive(Clone, Debug)]
pub struct BoundConfig {
    pub field: Field,
    pub seed: u64,
    pub max_r: usize,
    pub survivor_order: usize,
    pub a: Option<Scalar>,
    pub b: Option<Scalar>,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig {
            field: Field::Rationals,
            seed: 0,
            max_r: 8,
            survivor_order: 4,
            a: None,
            b: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    Cup,
    Massey,
    Classical,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Cup => "cup",
            Theorem::Massey => "massey",
            Theorem::Classical => "classical",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    Cup(CupCertificate),
    Massey(MasseyCertificate),
    Classical(ProductCertificate),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub value: usize,
    pub theorem: Theorem,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatBoundReport {
    pub schema: u32,
    pub field: String,
    pub seed: u64,
    pub max_r: usize,
    pub survivor_order: usize,
    pub periods_generator: u64,
    pub lambda: u64,
    pub supp: Vec<String>,
    pub survivor_dims: Vec<usize>,
    pub bounds: Vec<BoundEntry>,
    pub best_bound: usize,
    pub best_sources: Vec<Theorem>,
    pub relations: Vec<String>,
    pub notes: Vec<String>,
    pub interpretation: String,
}

fn interpretation(bound: usize) -> String {
    format!(
        "any closed 1-form in class xi admitting a gradient-like field with no homoclinic cycles has at least {bound} zeros; \
         a representative with at most one zero always exists, so small zero counts force homoclinic cycles"
    )
}

fn classical_entry(complex: &SimplicialComplex, field: Field) -> BoundEntry {
    let result = classical_cup_length(complex, field);
    let cert = result.certificate.clone().unwrap_or_else(|| {
        let unit = vec![field.one(); complex.count(0)];
        let (c, p) = pairing_witness(complex, &IntegralCocycle::zero_on(complex), &field.one(), 0, &unit)
            .expect("nonempty complex");
        ProductCertificate {
            w: Vec::new(),
            witness: SparseCochain::from_values(complex, 0, &c),
            pairing: p.to_string(),
        }
    });
    BoundEntry {
        value: result.bound(),
        theorem: Theorem::Classical,
        certificate: Certificate::Classical(cert),
    }
}

fn finish(mut report: CatBoundReport) -> CatBoundReport {
    report.best_bound = report.bounds.iter().map(|e| e.value).max().unwrap_or(0);
    report.best_sources = report
        .bounds
        .iter()
        .filter(|e| e.value == report.best_bound)
        .map(|e| e.theorem)
        .collect();
    report.best_sources.dedup();
    report.interpretation = interpretation(report.best_bound);
    report
}

/// Runs every applicable bound and assembles the report.
pub fn bound_report(complex: &SimplicialComplex, xi: &IntegralCocycle, config: &BoundConfig) -> Result<CatBoundReport> {
    if complex.total_simplices() > MAX_SIMPLICES {
        return Err(Error::Limit(format!(
            "{} simplices exceeds the limit of {MAX_SIMPLICES}",
            complex.total_simplices()
        )));
    }
    require_cocycle(complex, xi)?;
    let field = config.field;
    let period = periods(complex, xi)?;
    let mut report = CatBoundReport {
        schema: SCHEMA_VERSION,
        field: field.to_string(),
        seed: config.seed,
        max_r: config.max_r,
        survivor_order: config.survivor_order,
        periods_generator: period,
        lambda: period,
        supp: Vec::new(),
        survivor_dims: Vec::new(),
        bounds: Vec::new(),
        best_bound: 0,
        best_sources: Vec::new(),
        relations: Vec::new(),
        notes: Vec::new(),
        interpretation: String::new(),
    };
    let classical = classical_entry(complex, field);
    if period == 0 {
        report.relations.push("cat(X,xi) = cat(X,0) = cat(X)".into());
        report.relations.push(format!("cat(X) >= {}", classical.value));
        report.bounds.push(classical);
        return Ok(finish(report));
    }
    report.relations.push("cat(X,xi) <= cat(X) - 1".into());
    report.relations.push(format!("cat(X) >= {}", classical.value));
    let supp = supp_summary(complex, xi, field)?;
    report.supp = supp.supp.iter().map(|s| s.to_string()).collect();
    let (cup, massey) = rayon::join(
        || {
            cup_length_bound(
                complex,
                xi,
                field,
                config.seed,
                config.max_r,
                config.a.clone(),
                config.b.clone(),
            )
        },
        || massey_bound(complex, xi, field, config.survivor_order, config.max_r),
    );
    let (cup, massey) = (cup?, massey?);
    if let Some(cert) = cup.certificate.clone() {
        report.bounds.push(BoundEntry {
            value: cup.bound(),
            theorem: Theorem::Cup,
            certificate: Certificate::Cup(cert),
        });
    }
    report.survivor_dims = massey.survivor_dims.clone();
    report
        .notes
        .push(format!("survivors verified through order {}", massey.survivor_order));
    if period > 1 {
        report.notes.push(format!("massey bound computed for xi/{period}"));
    }
    if let Some(cert) = massey.certificate {
        report.bounds.push(BoundEntry {
            value: massey.bound,
            theorem: Theorem::Massey,
            certificate: Certificate::Massey(cert),
        });
    }
    Ok(finish(report))
}

/// Re-verifies every certificate of a report against the raw inputs.
pub fn replay_report(complex: &SimplicialComplex, xi: &IntegralCocycle, report: &CatBoundReport) -> Result<()> {
    if report.schema != SCHEMA_VERSION {
        return Err(Error::Replay(format!("unsupported schema {}", report.schema)));
    }
    let field = Field::parse(&report.field)?;
    let exact = periods(complex, xi)? == 0;
    for (k, entry) in report.bounds.iter().enumerate() {
        let value = match (&entry.certificate, entry.theorem) {
            (Certificate::Cup(c), Theorem::Cup) if !exact => {
                replay_cup(complex, xi, field, c)?;
                c.r + 1
            }
            (Certificate::Massey(c), Theorem::Massey) if !exact => {
                replay_massey(complex, xi, field, c)?;
                c.r - 1
            }
            (Certificate::Classical(c), Theorem::Classical) if exact => {
                replay_classical(complex, field, c)?;
                c.w.len() + 1
            }
            _ => return Err(Error::Replay(format!("bound {k} does not apply to this class"))),
        };
        if value != entry.value {
            return Err(Error::Replay(format!(
                "bound {k} claims {} but certifies {value}",
                entry.value
            )));
        }
    }
    let best = report.bounds.iter().map(|e| e.value).max().unwrap_or(0);
    if best != report.best_bound {
        return Err(Error::Replay("best bound is not the maximum over sources".into()));
    }
    Ok(())
}
