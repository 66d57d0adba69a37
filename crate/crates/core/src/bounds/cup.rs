use crate::cocycle::{divisibility, periods, IntegralCocycle};
use crate::complex::SimplicialComplex;
use crate::cover::{build_twisted_complex, cover_homology, torsion_summary, TorsionSummary};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::local_system::{cup_twisted, pick_generic, TwistedCohomology};

use super::certificate::{CupCertificate, SparseCochain};
use super::classical::{capped_cup_length, untwisted_spaces};
use super::products::{pairing_witness, positive_classes, saturate, Generator, Level};

#[derive(Clone, Debug)]
pub struct CupBound {
    /// Largest `r` with a nonzero `u ∪ v ∪ w_1 ∪ ... ∪ w_r`; `None` when even
    /// `u ∪ v` vanishes for all choices.
    pub r_best: Option<usize>,
    pub certificate: Option<CupCertificate>,
}

impl CupBound {
    /// `cat(X, xi) >= r_best + 1`, or 0 without a certificate.
    pub fn bound(&self) -> usize {
        self.r_best.map_or(0, |r| r + 1)
    }
}

/// Supp of `xi` computed through its indivisible part.
pub fn supp_summary(complex: &SimplicialComplex, xi: &IntegralCocycle, field: Field) -> Result<TorsionSummary> {
    let (lambda, eta) = divisibility(complex, xi)?;
    let c = build_twisted_complex(complex, &eta, field)?;
    Ok(torsion_summary(&cover_homology(&c), lambda))
}

/// Twisted cup-length search. `a` defaults to a seeded generic value and
/// `b` to `1/a`.
pub fn cup_length_bound(
    complex: &SimplicialComplex,
    xi: &IntegralCocycle,
    field: Field,
    seed: u64,
    max_r: usize,
    a: Option<Scalar>,
    b: Option<Scalar>,
) -> Result<CupBound> {
    if xi.is_zero() {
        return Ok(from_classical(complex, field, max_r));
    }
    if periods(complex, xi)? == 0 {
        return Err(Error::ExactClass);
    }
    let supp = supp_summary(complex, xi, field)?;
    let a = match a {
        Some(a) => a,
        None => pick_generic(&supp, field, 1, seed)?.remove(0),
    };
    let b = match b {
        Some(b) => b,
        None => a.inverse().map_err(|_| Error::ZeroTwist)?,
    };
    for x in [&a, &b] {
        if x.is_zero() {
            return Err(Error::ZeroTwist);
        }
        if supp.contains(x) {
            return Err(Error::NotGeneric(x.to_string()));
        }
    }
    let ab = &a * &b;
    let (ha, (hb, hab)) = rayon::join(
        || TwistedCohomology::compute(complex, xi, &a),
        || {
            rayon::join(
                || TwistedCohomology::compute(complex, xi, &b),
                || TwistedCohomology::compute(complex, xi, &ab),
            )
        },
    );
    let (ha, hb, hab) = (ha?, hb?, hab?);
    let us: Vec<(usize, &Vec<Scalar>)> = ha
        .spaces
        .iter()
        .flat_map(|s| s.reps().iter().map(move |r| (s.degree, r)))
        .collect();
    let vs: Vec<(usize, &Vec<Scalar>)> = hb
        .spaces
        .iter()
        .flat_map(|s| s.reps().iter().map(move |r| (s.degree, r)))
        .collect();
    let mut first = Level::new(hab.spaces.len());
    for (i, (p, u)) in us.iter().enumerate() {
        for (j, (q, v)) in vs.iter().enumerate() {
            if p + q > complex.dim() {
                continue;
            }
            let uc = crate::cochain::Cochain::twisted(*p, (*u).clone(), a.clone());
            let vc = crate::cochain::Cochain::twisted(*q, (*v).clone(), b.clone());
            let z = cup_twisted(complex, xi, &uc, &vc)?;
            first.offer(
                &hab.spaces,
                Generator {
                    degree: p + q,
                    values: z.values,
                    factors: vec![i, j],
                },
            );
        }
    }
    if first.is_empty() {
        return Ok(CupBound {
            r_best: None,
            certificate: None,
        });
    }
    let untwisted = untwisted_spaces(complex, field);
    let multipliers = positive_classes(&untwisted);
    let levels = saturate(complex, &hab.spaces, first, &multipliers, max_r);
    let r_best = levels.len() - 1;
    let g = &levels[r_best].gens[0];
    let (witness, pairing) = pairing_witness(complex, xi, &ab, g.degree, &g.values).expect("nonzero class");
    let (p, u) = us[g.factors[0]];
    let (q, v) = vs[g.factors[1]];
    let certificate = CupCertificate {
        a: a.to_string(),
        b: b.to_string(),
        r: r_best,
        u: SparseCochain::from_values(complex, p, u),
        v: SparseCochain::from_values(complex, q, v),
        w: g.factors[2..]
            .iter()
            .map(|&k| SparseCochain::from_values(complex, multipliers[k].degree, &multipliers[k].values))
            .collect(),
        witness: SparseCochain::from_values(complex, g.degree, &witness),
        pairing: pairing.to_string(),
    };
    Ok(CupBound {
        r_best: Some(r_best),
        certificate: Some(certificate),
    })
}

/// For `xi = 0` the twisted bound specializes to the classical estimate with
/// `u = v = 1` in degree 0.
fn from_classical(complex: &SimplicialComplex, field: Field, max_r: usize) -> CupBound {
    let one = field.one();
    let unit_values = vec![one.clone(); complex.count(0)];
    let unit = SparseCochain::from_values(complex, 0, &unit_values);
    let (w, witness, pairing) = match capped_cup_length(complex, field, max_r).certificate {
        Some(c) => (c.w, c.witness, c.pairing),
        None => {
            let (c, p) = pairing_witness(complex, &IntegralCocycle::zero_on(complex), &one, 0, &unit_values)
                .expect("nonempty complex");
            (Vec::new(), SparseCochain::from_values(complex, 0, &c), p.to_string())
        }
    };
    let r = w.len();
    let certificate = CupCertificate {
        a: one.to_string(),
        b: one.to_string(),
        r,
        u: unit.clone(),
        v: unit,
        w,
        witness,
        pairing,
    };
    CupBound {
        r_best: Some(r),
        certificate: Some(certificate),
    }
}
