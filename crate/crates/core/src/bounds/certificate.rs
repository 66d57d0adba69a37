//! Serializable certificates and their replay from raw inputs.
//!
//! Replay never trusts the search: it re-reads every cochain, re-checks the
//! cocycle and defining-system equations, recomputes the product, and pairs
//! it with the stored witness chain.

use serde::{Deserialize, Serialize};

use crate::cochain::cup_values;
use crate::cocycle::{divisibility, periods, IntegralCocycle};
use crate::complex::SimplicialComplex;
use crate::cover::{build_twisted_complex, cover_homology, torsion_summary, TorsionSummary};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::is_zero_vec;
use crate::local_system::twisted_coboundary_matrix;

use super::products::pair;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseEntry {
    pub simplex: Vec<usize>,
    pub value: String,
}

/// Nonzero values of a cochain (or chain) keyed by simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseCochain {
    pub degree: usize,
    pub entries: Vec<SparseEntry>,
}

impl SparseCochain {
    pub fn from_values(complex: &SimplicialComplex, degree: usize, values: &[Scalar]) -> Self {
        let entries = complex
            .simplices(degree)
            .iter()
            .zip(values)
            .filter(|(_, v)| !v.is_zero())
            .map(|(s, v)| SparseEntry {
                simplex: s.vertices().to_vec(),
                value: v.to_string(),
            })
            .collect();
        SparseCochain { degree, entries }
    }

    pub fn to_values(&self, complex: &SimplicialComplex, field: Field) -> Result<Vec<Scalar>> {
        let mut out = vec![field.zero(); complex.count(self.degree)];
        for e in &self.entries {
            if e.simplex.len() != self.degree + 1 {
                return Err(Error::Replay(format!("simplex {:?} has the wrong degree", e.simplex)));
            }
            let i = complex
                .index_of(&e.simplex)
                .ok_or_else(|| Error::Replay(format!("{:?} is not a simplex", e.simplex)))?;
            out[i] = field.parse_element(&e.value)?;
        }
        Ok(out)
    }
}

/// A nonzero product `w_1 ∪ ... ∪ w_r` of untwisted classes together with a
/// homology cycle on which it evaluates to `pairing`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductCertificate {
    pub w: Vec<SparseCochain>,
    pub witness: SparseCochain,
    pub pairing: String,
}

/// `u ∪ v ∪ w_1 ∪ ... ∪ w_r != 0` with `u` twisted by `a` and `v` by `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CupCertificate {
    pub a: String,
    pub b: String,
    pub r: usize,
    pub u: SparseCochain,
    pub v: SparseCochain,
    pub w: Vec<SparseCochain>,
    pub witness: SparseCochain,
    pub pairing: String,
}

/// Explicit defining system through order `R` for one class `v`:
/// `c_1 = xi`, `δc_m = Σ c_k ∪ c_{m-k}`, `b_1 = v`,
/// `δb_{m+1} = Σ_{k=1}^m (-1)^{1+q} b_k ∪ c_{m+1-k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefiningSystem {
    pub degree: usize,
    /// `b_1, ..., b_{R+1}`.
    pub b: Vec<SparseCochain>,
    /// `c_1, ..., c_R`.
    pub c: Vec<SparseCochain>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MasseyCertificate {
    pub r: usize,
    pub survivor_order: usize,
    pub lambda: u64,
    pub product: ProductCertificate,
    /// Transcripts for `w[0]` and `w[1]`.
    pub survivors: Vec<DefiningSystem>,
}

fn fail(msg: impl Into<String>) -> Error {
    Error::Replay(msg.into())
}

fn supp_of(complex: &SimplicialComplex, xi: &IntegralCocycle, field: Field) -> Result<Option<TorsionSummary>> {
    if periods(complex, xi)? == 0 {
        return Ok(None);
    }
    let (lambda, eta) = divisibility(complex, xi)?;
    let c = build_twisted_complex(complex, &eta, field)?;
    Ok(Some(torsion_summary(&cover_homology(&c), lambda)))
}

fn check_twisted_cocycle(
    complex: &SimplicialComplex,
    xi: &IntegralCocycle,
    twist: &Scalar,
    degree: usize,
    values: &[Scalar],
    what: &str,
) -> Result<()> {
    if degree < complex.dim() && !is_zero_vec(&twisted_coboundary_matrix(complex, xi, twist, degree).mul_vec(values)) {
        return Err(fail(format!("{what} is not a cocycle")));
    }
    Ok(())
}

/// Multiplies the running product by the `w` list and checks the witness.
#[allow(clippy::too_many_arguments)]
fn check_product(
    complex: &SimplicialComplex,
    xi: &IntegralCocycle,
    field: Field,
    twist: &Scalar,
    mut degree: usize,
    mut z: Vec<Scalar>,
    w: &[SparseCochain],
    witness: &SparseCochain,
    pairing: &str,
) -> Result<()> {
    let one = field.one();
    for (k, wk) in w.iter().enumerate() {
        if wk.degree == 0 {
            return Err(fail(format!("w[{k}] has degree 0")));
        }
        let vals = wk.to_values(complex, field)?;
        check_twisted_cocycle(complex, xi, &one, wk.degree, &vals, &format!("w[{k}]"))?;
        if degree + wk.degree > complex.dim() {
            return Err(fail("product exceeds the dimension"));
        }
        z = cup_values(complex, degree, &z, wk.degree, &vals, None);
        degree += wk.degree;
    }
    if witness.degree != degree {
        return Err(fail("witness degree does not match the product"));
    }
    let c = witness.to_values(complex, field)?;
    if degree > 0
        && !is_zero_vec(
            &twisted_coboundary_matrix(complex, xi, twist, degree - 1)
                .transpose()
                .mul_vec(&c),
        )
    {
        return Err(fail("witness is not a cycle"));
    }
    let p = pair(&z, &c);
    if p.is_zero() || p != field.parse_element(pairing)? {
        return Err(fail(format!("pairing is {p}, certificate says {pairing}")));
    }
    Ok(())
}

pub fn replay_cup(
    complex: &SimplicialComplex,
    xi: &IntegralCocycle,
    field: Field,
    cert: &CupCertificate,
) -> Result<()> {
    let a = field.parse_element(&cert.a)?;
    let b = field.parse_element(&cert.b)?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroTwist);
    }
    if let Some(s) = supp_of(complex, xi, field)? {
        for x in [&a, &b] {
            if s.contains(x) {
                return Err(fail(format!("{x} lies in Supp")));
            }
        }
    }
    if cert.w.len() != cert.r {
        return Err(fail("r does not match the number of untwisted factors"));
    }
    let u = cert.u.to_values(complex, field)?;
    let v = cert.v.to_values(complex, field)?;
    check_twisted_cocycle(complex, xi, &a, cert.u.degree, &u, "u")?;
    check_twisted_cocycle(complex, xi, &b, cert.v.degree, &v, "v")?;
    let degree = cert.u.degree + cert.v.degree;
    if degree > complex.dim() {
        return Err(fail("u ∪ v exceeds the dimension"));
    }
    let z = cup_values(complex, cert.u.degree, &u, cert.v.degree, &v, Some((xi, &b)));
    check_product(
        complex,
        xi,
        field,
        &(&a * &b),
        degree,
        z,
        &cert.w,
        &cert.witness,
        &cert.pairing,
    )
}

pub fn replay_classical(complex: &SimplicialComplex, field: Field, cert: &ProductCertificate) -> Result<()> {
    let zero = IntegralCocycle::zero_on(complex);
    let unit = vec![field.one(); complex.count(0)];
    check_product(
        complex,
        &zero,
        field,
        &field.one(),
        0,
        unit,
        &cert.w,
        &cert.witness,
        &cert.pairing,
    )
}

pub fn replay_massey(
    complex: &SimplicialComplex,
    xi: &IntegralCocycle,
    field: Field,
    cert: &MasseyCertificate,
) -> Result<()> {
    let (lambda, eta) = divisibility(complex, xi)?;
    if lambda != cert.lambda {
        return Err(fail("divisibility does not match"));
    }
    if cert.product.w.len() != cert.r || cert.r < 2 || cert.survivors.len() != 2 {
        return Err(fail("product must have r >= 2 factors and two survivor transcripts"));
    }
    replay_classical(complex, field, &cert.product)?;
    let xi_hat = eta.to_field(complex, field);
    for (k, sys) in cert.survivors.iter().enumerate() {
        if sys.b.first() != Some(&cert.product.w[k]) {
            return Err(fail(format!("transcript {k} does not start at w[{k}]")));
        }
        if sys.c.len() < cert.survivor_order || sys.b.len() != sys.c.len() + 1 {
            return Err(fail(format!("transcript {k} is shorter than the survivor order")));
        }
        check_defining_system(complex, field, &xi_hat, sys)?;
    }
    Ok(())
}

/// Verifies every equation of a defining system.
pub fn check_defining_system(
    complex: &SimplicialComplex,
    field: Field,
    xi_hat: &[Scalar],
    sys: &DefiningSystem,
) -> Result<()> {
    let q = sys.degree;
    let c: Vec<Vec<Scalar>> = sys
        .c
        .iter()
        .map(|x| x.to_values(complex, field))
        .collect::<Result<_>>()?;
    let b: Vec<Vec<Scalar>> = sys
        .b
        .iter()
        .map(|x| x.to_values(complex, field))
        .collect::<Result<_>>()?;
    if sys.c.iter().any(|x| x.degree != 1) || sys.b.iter().any(|x| x.degree != q) {
        return Err(fail("defining system has cochains of the wrong degree"));
    }
    if c.first().map(Vec::as_slice) != Some(xi_hat) {
        return Err(fail("c_1 is not the class xi"));
    }
    let d1 = complex.coboundary_matrix(1, field);
    for m in 2..=c.len() {
        let mut s = vec![field.zero(); complex.count(2)];
        for k in 1..m {
            crate::linalg::add_scaled(
                &mut s,
                &cup_values(complex, 1, &c[k - 1], 1, &c[m - k - 1], None),
                &field.one(),
            );
        }
        if d1.mul_vec(&c[m - 1]) != s {
            return Err(fail(format!("equation for c_{m} fails")));
        }
    }
    let dq = complex.coboundary_matrix(q, field);
    for m in 1..b.len() {
        let r = stage_sum(complex, field, q, &b[..m], &c);
        if dq.mul_vec(&b[m]) != r {
            return Err(fail(format!("equation for b_{} fails", m + 1)));
        }
    }
    Ok(())
}

/// `Σ_{k=1}^m (-1)^{1+q} b_k ∪ c_{m+1-k}` for `m = b.len()`.
pub(crate) fn stage_sum(
    complex: &SimplicialComplex,
    field: Field,
    q: usize,
    b: &[Vec<Scalar>],
    c: &[Vec<Scalar>],
) -> Vec<Scalar> {
    let m = b.len();
    let sgn = if q % 2 == 1 { field.one() } else { -field.one() };
    let mut out = vec![field.zero(); complex.count(q + 1)];
    for k in 1..=m {
        crate::linalg::add_scaled(&mut out, &cup_values(complex, q, &b[k - 1], 1, &c[m - k], None), &sgn);
    }
    out
}
