//! Massey powers `<v, xi, ..., xi>` and the survivor bound.
//!
//! The cochains `c_m` depend only on `xi` and are fixed once. With them
//! fixed, a defining system for `v` is linear in `v` and in the cocycle
//! adjustments `z_m` added to `b_m`, so every search below is a kernel
//! computation over explicit cochain systems. Freedom in the `c_m` is used
//! only at the last stage of a single Massey power, where it enters linearly
//! as `v ∪ H^1`. This makes the checker sound but not complete.

use rayon::prelude::*;
use serde::Serialize;

use crate::cochain::{cup_values, untwisted_cohomology, CohomologySpace};
use crate::cocycle::{divisibility, periods, IntegralCocycle};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{add_scaled, is_zero_vec, IncrementalBasis, Matrix};

use super::certificate::{stage_sum, DefiningSystem, MasseyCertificate, ProductCertificate, SparseCochain};
use super::classical::untwisted_spaces;
use super::products::{pairing_witness, positive_classes, saturate, Generator, Level};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MasseyStatus {
    Vanishes,
    NonzeroModLastStage,
    Undecided,
}

/// Cochains of a defining system: `b_1..b_{r+1}` in degree `q`, `c_1..c_r` in
/// degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemCochains {
    pub degree: usize,
    pub b: Vec<Vec<Scalar>>,
    pub c: Vec<Vec<Scalar>>,
}

impl SystemCochains {
    pub fn to_sparse(&self, complex: &SimplicialComplex) -> DefiningSystem {
        DefiningSystem {
            degree: self.degree,
            b: self
                .b
                .iter()
                .map(|x| SparseCochain::from_values(complex, self.degree, x))
                .collect(),
            c: self
                .c
                .iter()
                .map(|x| SparseCochain::from_values(complex, 1, x))
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MasseyResult {
    pub order: usize,
    pub status: MasseyStatus,
    /// `(-1)^{1+q}` times the last-stage sum, so that order 1 gives `v ∪ xi`.
    pub representative: Option<Vec<Scalar>>,
    /// Complete defining system when the product vanishes.
    pub system: Option<SystemCochains>,
}

/// `c_1 = xi`, `δc_m = Σ_{k=1}^{m-1} c_k ∪ c_{m-k}`; `None` when some sum is
/// not exact.
pub fn xi_system(complex: &SimplicialComplex, field: Field, xi_hat: &[Scalar], r: usize) -> Option<Vec<Vec<Scalar>>> {
    let h2 = untwisted_cohomology(complex, field, 2);
    let n1 = complex.count(1);
    let mut c = vec![xi_hat.to_vec()];
    for m in 2..=r {
        let mut s = vec![field.zero(); complex.count(2)];
        for k in 1..m {
            add_scaled(
                &mut s,
                &cup_values(complex, 1, &c[k - 1], 1, &c[m - k - 1], None),
                &field.one(),
            );
        }
        c.push(h2.primitive(&s, n1)?);
    }
    Some(c)
}

#[derive(Clone, Debug)]
struct Elem {
    alpha: Vec<Scalar>,
    b: Vec<Vec<Scalar>>,
}

fn combine(elems: &[Elem], coeffs: &[Scalar]) -> Elem {
    let first = &elems[0];
    let field = coeffs[0].field();
    let mut alpha = vec![field.zero(); first.alpha.len()];
    let mut b: Vec<Vec<Scalar>> = first.b.iter().map(|x| vec![field.zero(); x.len()]).collect();
    for (e, l) in elems.iter().zip(coeffs) {
        if l.is_zero() {
            continue;
        }
        add_scaled(&mut alpha, &e.alpha, l);
        for (acc, x) in b.iter_mut().zip(&e.b) {
            add_scaled(acc, x, l);
        }
    }
    Elem { alpha, b }
}

fn combine_vecs(vs: &[Vec<Scalar>], coeffs: &[Scalar], len: usize, field: Field) -> Vec<Scalar> {
    let mut out = vec![field.zero(); len];
    for (v, l) in vs.iter().zip(coeffs) {
        add_scaled(&mut out, v, l);
    }
    out
}

struct Ctx<'a> {
    complex: &'a SimplicialComplex,
    field: Field,
    q: usize,
    hq: &'a CohomologySpace,
    hq1: &'a CohomologySpace,
    c: &'a [Vec<Scalar>],
}

impl Ctx<'_> {
    fn sgn(&self) -> Scalar {
        if self.q % 2 == 1 {
            self.field.one()
        } else {
            -self.field.one()
        }
    }

    fn stage(&self, e: &Elem) -> Vec<Scalar> {
        stage_sum(self.complex, self.field, self.q, &e.b, self.c)
    }

    /// Adds the `z_m` directions: `b_m` is a cocycle representative, all
    /// earlier entries vanish.
    fn add_z_directions(&self, elems: &mut Vec<Elem>, m: usize, alpha_len: usize) {
        let n = self.complex.count(self.q);
        for rep in self.hq.reps() {
            let mut b = vec![vec![self.field.zero(); n]; m - 1];
            b.push(rep.clone());
            elems.push(Elem {
                alpha: vec![self.field.zero(); alpha_len],
                b,
            });
        }
    }

    /// Columns of class coordinates of the stage sums; `None` if a sum is not
    /// a cocycle.
    fn coordinates(&self, sums: &[Vec<Scalar>]) -> Option<Matrix> {
        let rows = self.hq1.dim();
        let cols: Vec<Vec<Scalar>> = sums.iter().map(|s| self.hq1.coordinates(s)).collect::<Option<_>>()?;
        Some(Matrix::from_columns(self.field, rows, &cols))
    }

    /// Appends `b_{m+1}` to each combination of `elems` given by the kernel.
    fn advance(&self, elems: &[Elem], sums: &[Vec<Scalar>], kernel: &[Vec<Scalar>]) -> Vec<Elem> {
        let n = self.complex.count(self.q);
        let len = self.complex.count(self.q + 1);
        kernel
            .iter()
            .map(|k| {
                let mut e = combine(elems, k);
                let r = combine_vecs(sums, k, len, self.field);
                e.b.push(self.hq1.primitive(&r, n).expect("exact by construction"));
                e
            })
            .collect()
    }
}

/// The Massey power `<v, xi, ..., xi>` with `r` copies of `xi`.
pub fn massey_power(
    complex: &SimplicialComplex,
    field: Field,
    v: &[Scalar],
    q: usize,
    xi_hat: &[Scalar],
    r: usize,
) -> Result<MasseyResult> {
    if r == 0 || v.len() != complex.count(q) || xi_hat.len() != complex.count(1) {
        return Err(Error::MismatchedCochains);
    }
    let hq = untwisted_cohomology(complex, field, q);
    let hq1 = untwisted_cohomology(complex, field, q + 1);
    let h1 = untwisted_cohomology(complex, field, 1);
    if !hq.is_cocycle(v) || !h1.is_cocycle(xi_hat) {
        return Err(Error::NotACycle);
    }
    let undecided = MasseyResult {
        order: r,
        status: MasseyStatus::Undecided,
        representative: None,
        system: None,
    };
    let Some(c) = xi_system(complex, field, xi_hat, r) else {
        return Ok(undecided);
    };
    let ctx = Ctx {
        complex,
        field,
        q,
        hq: &hq,
        hq1: &hq1,
        c: &c,
    };
    let sgn = ctx.sgn();
    let extras: Vec<Vec<Scalar>> = h1
        .reps()
        .iter()
        .map(|y| {
            let mut x = cup_values(complex, q, v, 1, y, None);
            x.iter_mut().for_each(|s| *s = &*s * &sgn);
            x
        })
        .collect();
    let mut elems = vec![Elem {
        alpha: vec![field.one()],
        b: vec![v.to_vec()],
    }];
    for m in 1..=r {
        if m >= 2 {
            ctx.add_z_directions(&mut elems, m, 1);
        }
        let sums: Vec<Vec<Scalar>> = elems.iter().map(|e| ctx.stage(e)).collect();
        let with_extras = m >= 2;
        let mut all = sums.clone();
        if with_extras {
            all.extend(extras.iter().cloned());
        }
        let Some(coords) = ctx.coordinates(&all) else {
            return Ok(undecided);
        };
        let kernel = coords.kernel();
        let ne = elems.len();
        let alpha_of = |k: &Vec<Scalar>| -> Scalar {
            elems
                .iter()
                .zip(k)
                .fold(field.zero(), |acc, (e, l)| &acc + &(&e.alpha[0] * l))
        };
        let solution = kernel.iter().find(|k| !alpha_of(k).is_zero()).cloned();
        if m < r {
            // z-only kernel keeps the c_m fixed for the later stages
            let z_only = ctx.coordinates(&sums).expect("checked above").kernel();
            if !z_only.iter().any(|k| !alpha_of(k).is_zero()) {
                return if solution.is_some() {
                    Ok(undecided)
                } else {
                    Err(Error::LowerOrderNonVanishing { order: r, failed: m })
                };
            }
            elems = ctx.advance(&elems, &sums, &z_only);
            continue;
        }
        return Ok(match solution {
            Some(k) => {
                let inv = alpha_of(&k).inverse().expect("nonzero");
                let k: Vec<Scalar> = k.iter().map(|x| x * &inv).collect();
                let (ke, ky) = k.split_at(ne);
                let mut e = combine(&elems, ke);
                let mut total = combine_vecs(&sums, ke, complex.count(q + 1), field);
                let mut c_final = c.clone();
                if with_extras {
                    let y = combine_vecs(h1.reps(), ky, complex.count(1), field);
                    add_scaled(&mut c_final[r - 1], &y, &field.one());
                    add_scaled(
                        &mut total,
                        &combine_vecs(&extras, ky, complex.count(q + 1), field),
                        &field.one(),
                    );
                }
                e.b.push(hq1.primitive(&total, complex.count(q)).expect("exact by construction"));
                MasseyResult {
                    order: r,
                    status: MasseyStatus::Vanishes,
                    representative: None,
                    system: Some(SystemCochains {
                        degree: q,
                        b: e.b,
                        c: c_final,
                    }),
                }
            }
            None => {
                let lead = elems
                    .iter()
                    .position(|e| !e.alpha[0].is_zero())
                    .expect("v survives earlier stages");
                let inv = elems[lead].alpha[0].inverse().expect("nonzero");
                let mut rep = sums[lead].clone();
                rep.iter_mut().for_each(|s| *s = &(&*s * &inv) * &sgn);
                MasseyResult {
                    order: r,
                    status: MasseyStatus::NonzeroModLastStage,
                    representative: Some(rep),
                    system: None,
                }
            }
        });
    }
    unreachable!("loop returns at the last stage")
}

/// Classes of degree `q` whose Massey powers of orders `1..=order` all vanish
/// through a common explicit system with the fixed `c_m`.
#[derive(Clone, Debug)]
pub struct SurvivorSpace {
    pub degree: usize,
    pub basis: Vec<SystemCochains>,
}

pub fn survivor_space(
    complex: &SimplicialComplex,
    field: Field,
    q: usize,
    c: &[Vec<Scalar>],
    order: usize,
) -> SurvivorSpace {
    let hq = untwisted_cohomology(complex, field, q);
    let hq1 = untwisted_cohomology(complex, field, q + 1);
    let ctx = Ctx {
        complex,
        field,
        q,
        hq: &hq,
        hq1: &hq1,
        c,
    };
    let h = hq.dim();
    let mut elems: Vec<Elem> = hq
        .reps()
        .iter()
        .enumerate()
        .map(|(j, rep)| {
            let mut alpha = vec![field.zero(); h];
            alpha[j] = field.one();
            Elem {
                alpha,
                b: vec![rep.clone()],
            }
        })
        .collect();
    for m in 1..=order {
        if elems.is_empty() {
            break;
        }
        if m >= 2 {
            ctx.add_z_directions(&mut elems, m, h);
        }
        let sums: Vec<Vec<Scalar>> = elems.iter().map(|e| ctx.stage(e)).collect();
        let Some(coords) = ctx.coordinates(&sums) else {
            elems.clear();
            break;
        };
        elems = ctx.advance(&elems, &sums, &coords.kernel());
    }
    let mut seen = IncrementalBasis::new();
    let basis = elems
        .into_iter()
        .filter(|e| !is_zero_vec(&e.alpha) && seen.insert(&e.alpha))
        .map(|e| SystemCochains {
            degree: q,
            b: e.b,
            c: c[..order].to_vec(),
        })
        .collect();
    SurvivorSpace { degree: q, basis }
}

#[derive(Clone, Debug)]
pub struct MasseyBound {
    /// Length of the longest certified product, 0 when none.
    pub r: usize,
    /// `cat(X, xi) >= r - 1` when `r >= 2`, else 0.
    pub bound: usize,
    pub survivor_order: usize,
    pub survivor_dims: Vec<usize>,
    pub certificate: Option<MasseyCertificate>,
}

pub fn massey_bound(
    complex: &SimplicialComplex,
    xi: &IntegralCocycle,
    field: Field,
    survivor_order: usize,
    max_r: usize,
) -> Result<MasseyBound> {
    if periods(complex, xi)? == 0 {
        return Err(Error::ExactClass);
    }
    let order = survivor_order.max(1);
    let (lambda, eta) = divisibility(complex, xi)?;
    let xi_hat = eta.to_field(complex, field);
    let top = complex.dim();
    let empty = MasseyBound {
        r: 0,
        bound: 0,
        survivor_order: order,
        survivor_dims: vec![0; top + 1],
        certificate: None,
    };
    let Some(c) = xi_system(complex, field, &xi_hat, order) else {
        return Ok(empty);
    };
    let spaces = untwisted_spaces(complex, field);
    let survivors: Vec<SurvivorSpace> = (1..=top)
        .into_par_iter()
        .map(|q| survivor_space(complex, field, q, &c, order))
        .collect();
    let mut survivor_dims = vec![0];
    survivor_dims.extend(survivors.iter().map(|s| s.basis.len()));
    let all: Vec<&SystemCochains> = survivors.iter().flat_map(|s| &s.basis).collect();
    if max_r < 2 {
        return Ok(MasseyBound { survivor_dims, ..empty });
    }
    let mut first = Level::new(spaces.len());
    for i in 0..all.len() {
        for j in i..all.len() {
            let (p, q) = (all[i].degree, all[j].degree);
            if p + q > top {
                continue;
            }
            let z = cup_values(complex, p, &all[i].b[0], q, &all[j].b[0], None);
            first.offer(
                &spaces,
                Generator {
                    degree: p + q,
                    values: z,
                    factors: vec![i, j],
                },
            );
        }
    }
    if first.is_empty() {
        return Ok(MasseyBound { survivor_dims, ..empty });
    }
    let multipliers = positive_classes(&spaces);
    let levels = saturate(complex, &spaces, first, &multipliers, max_r - 2);
    let r = levels.len() + 1;
    let g = &levels[levels.len() - 1].gens[0];
    let (witness, pairing) = pairing_witness(
        complex,
        &IntegralCocycle::zero_on(complex),
        &field.one(),
        g.degree,
        &g.values,
    )
    .expect("nonzero class");
    let (i, j) = (g.factors[0], g.factors[1]);
    let mut w = vec![
        SparseCochain::from_values(complex, all[i].degree, &all[i].b[0]),
        SparseCochain::from_values(complex, all[j].degree, &all[j].b[0]),
    ];
    w.extend(
        g.factors[2..]
            .iter()
            .map(|&k| SparseCochain::from_values(complex, multipliers[k].degree, &multipliers[k].values)),
    );
    let certificate = MasseyCertificate {
        r,
        survivor_order: order,
        lambda,
        product: ProductCertificate {
            w,
            witness: SparseCochain::from_values(complex, g.degree, &witness),
            pairing: pairing.to_string(),
        },
        survivors: vec![all[i].to_sparse(complex), all[j].to_sparse(complex)],
    };
    Ok(MasseyBound {
        r,
        bound: r - 1,
        survivor_order: order,
        survivor_dims,
        certificate: Some(certificate),
    })
}
