//! Roots and irreducible factorization of Laurent polynomials.
//!
//! Over `F_p` the factorization is complete: square-free decomposition,
//! distinct-degree splitting and Cantor-Zassenhaus. Over `Q` we split off all
//! rational roots; a remaining square-free factor of degree at most 3 has no
//! rational root and is therefore irreducible, while larger leftovers are
//! reported with `certified = false`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, Scalar};
use crate::laurent::poly::LaurentPoly;

/// Divisor enumeration gives up above this absolute value.
const DIVISOR_LIMIT: u64 = 1 << 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleFactor {
    /// Canonical associate: lowest exponent 0, monic.
    pub poly: LaurentPoly,
    pub multiplicity: usize,
    /// False only for rational factors whose irreducibility was not proven.
    pub certified: bool,
}

/// Irreducible factors of `p` up to a unit, sorted by (degree, coefficients).
pub fn factor(p: &LaurentPoly) -> Vec<IrreducibleFactor> {
    if p.is_zero() || p.is_unit() {
        return Vec::new();
    }
    let f = Dense::from_laurent(p).monic();
    let mut out = Vec::new();
    for (part, mult) in square_free(&f) {
        let pieces = match f.field {
            Field::Rationals => split_rational(&part),
            Field::Prime(_) => split_prime(&part).into_iter().map(|g| (g, true)).collect(),
        };
        for (g, certified) in pieces {
            out.push(IrreducibleFactor {
                poly: g.to_laurent(),
                multiplicity: mult,
                certified,
            });
        }
    }
    out.sort_by(|a, b| {
        a.poly
            .span()
            .cmp(&b.poly.span())
            .then_with(|| cmp_coeffs(a.poly.coeffs(), b.poly.coeffs()))
    });
    out
}

/// Distinct roots of `p` in its base field, in ascending order (by value over
/// `Q`, by residue over `F_p`). Zero is never a root of a Laurent polynomial
/// in canonical form and is not reported.
pub fn roots(p: &LaurentPoly) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = factor(p)
        .into_iter()
        .filter(|f| f.poly.span() == Some(1))
        .map(|f| -f.poly.coeff(0))
        .collect();
    out.sort_by(cmp_scalar);
    out.dedup();
    out
}

pub fn cmp_scalar(a: &Scalar, b: &Scalar) -> Ordering {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => x.cmp(y),
        _ => a.residue().cmp(&b.residue()),
    }
}

fn cmp_coeffs(a: &[Scalar], b: &[Scalar]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        a.iter()
            .rev()
            .zip(b.iter().rev())
            .map(|(x, y)| cmp_scalar(x, y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

/// Dense polynomial in `k[t]`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Dense {
    field: Field,
    c: Vec<Scalar>,
}

impl Dense {
    fn new(field: Field, mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(Scalar::is_zero) {
            c.pop();
        }
        Dense { field, c }
    }

    fn from_laurent(p: &LaurentPoly) -> Self {
        Dense::new(p.field(), p.coeffs().to_vec())
    }

    fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(self.field, 0, self.c.clone())
    }

    fn one(field: Field) -> Self {
        Dense::new(field, vec![field.one()])
    }

    fn x(field: Field) -> Self {
        Dense::new(field, vec![field.zero(), field.one()])
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn monic(&self) -> Self {
        match self.c.last() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inverse().unwrap();
                Dense::new(self.field, self.c.iter().map(|x| x * &inv).collect())
            }
        }
    }

    fn add(&self, o: &Dense) -> Dense {
        let n = self.c.len().max(o.c.len());
        let z = self.field.zero();
        Dense::new(
            self.field,
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    fn sub(&self, o: &Dense) -> Dense {
        let n = self.c.len().max(o.c.len());
        let z = self.field.zero();
        Dense::new(
            self.field,
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z) - o.c.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    fn mul(&self, o: &Dense) -> Dense {
        if self.is_zero() || o.is_zero() {
            return Dense::new(self.field, Vec::new());
        }
        let mut c = vec![self.field.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Dense::new(self.field, c)
    }

    fn div_rem(&self, d: &Dense) -> (Dense, Dense) {
        let dn = d.c.len();
        let inv = d.c.last().expect("division by zero").inverse().unwrap();
        let mut r = self.c.clone();
        let mut q = vec![self.field.zero(); r.len().saturating_sub(dn - 1)];
        while r.len() >= dn {
            let top = r.len() - 1;
            let f = &r[top] * &inv;
            if !f.is_zero() {
                let off = top + 1 - dn;
                for (k, dc) in d.c.iter().enumerate() {
                    r[off + k] = &r[off + k] - &(&f * dc);
                }
                q[off] = f;
            }
            r.pop();
        }
        (Dense::new(self.field, q), Dense::new(self.field, r))
    }

    fn rem(&self, d: &Dense) -> Dense {
        self.div_rem(d).1
    }

    fn gcd(&self, o: &Dense) -> Dense {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn derivative(&self) -> Dense {
        Dense::new(
            self.field,
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| x * &self.field.from_i64(i as i64))
                .collect(),
        )
    }

    fn pow_mod(&self, e: &BigUint, m: &Dense) -> Dense {
        let mut acc = Dense::one(self.field);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }
}

/// Yun-style square-free decomposition of a monic polynomial; over `F_p` the
/// p-th power parts are handled by taking p-th roots of the coefficients.
fn square_free(f: &Dense) -> Vec<(Dense, usize)> {
    let mut out = Vec::new();
    square_free_into(f, 1, &mut out);
    out.sort_by_key(|(_, m)| *m);
    out
}

fn square_free_into(f: &Dense, scale: usize, out: &mut Vec<(Dense, usize)>) {
    if f.deg() == 0 {
        return;
    }
    let df = f.derivative();
    if df.is_zero() {
        // f = g(t^p); over F_p the p-th root of each coefficient is itself
        let p = f.field.characteristic() as usize;
        let g = Dense::new(f.field, f.c.iter().step_by(p).cloned().collect());
        square_free_into(&g, scale * p, out);
        return;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.deg() > 0 {
            push_part(out, z.monic(), i * scale);
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if c.deg() > 0 {
        // only reachable in positive characteristic
        square_free_into(&c.monic(), scale, out);
    }
}

fn push_part(out: &mut Vec<(Dense, usize)>, g: Dense, m: usize) {
    if let Some(slot) = out.iter_mut().find(|(_, k)| *k == m) {
        slot.0 = slot.0.mul(&g);
    } else {
        out.push((g, m));
    }
}

fn split_prime(f: &Dense) -> Vec<Dense> {
    let field = f.field;
    let p = BigUint::from(field.characteristic());
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = Dense::x(field);
    let mut d = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    while rest.deg() > 0 {
        d += 1;
        if 2 * d > rest.deg() {
            out.push(rest.monic());
            break;
        }
        h = h.pow_mod(&p, &rest);
        let g = rest.gcd(&h.sub(&Dense::x(field)));
        if g.deg() > 0 {
            equal_degree(&g, d, &mut rng, &mut out);
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
        }
    }
    out
}

fn equal_degree(f: &Dense, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Dense>) {
    if f.deg() == d {
        out.push(f.monic());
        return;
    }
    let field = f.field;
    let q = field.characteristic();
    loop {
        let a = Dense::new(
            field,
            (0..f.deg())
                .map(|_| field.from_i64(rng.gen_range(0..q) as i64))
                .collect(),
        );
        if a.deg() == 0 {
            continue;
        }
        let b = if q == 2 {
            // trace map a + a^2 + ... + a^(2^(kd-1)) with kd = d
            let mut acc = a.rem(f);
            let mut s = acc.clone();
            for _ in 1..d {
                s = s.mul(&s).rem(f);
                acc = acc.add(&s);
            }
            acc
        } else {
            let e = (BigUint::from(q).pow(d as u32) - 1u32) / 2u32;
            a.pow_mod(&e, f).sub(&Dense::one(field))
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < f.deg() {
            equal_degree(&g, d, rng, out);
            equal_degree(&f.div_rem(&g).0, d, rng, out);
            return;
        }
    }
}

fn split_rational(f: &Dense) -> Vec<(Dense, bool)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut exhaustive = true;
    match rational_root_candidates(&rest) {
        Some(cands) => {
            for r in cands {
                if rest.deg() == 0 {
                    break;
                }
                let lin = Dense::new(f.field, vec![-Scalar::Rational(r.clone()), f.field.one()]);
                let (q, rem) = rest.div_rem(&lin);
                if rem.is_zero() {
                    out.push((lin, true));
                    rest = q;
                }
            }
        }
        None => exhaustive = false,
    }
    if rest.deg() > 0 {
        let certified = rest.deg() == 1 || (exhaustive && rest.deg() <= 3);
        out.push((rest.monic(), certified));
    }
    out
}

/// All `±d/e` with `d | a_0` and `e | a_n` after clearing denominators; `None`
/// when the coefficients are too large to enumerate divisors.
fn rational_root_candidates(f: &Dense) -> Option<Vec<BigRational>> {
    let den =
        f.c.iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.as_rational().unwrap().denom()));
    let ints: Vec<BigInt> =
        f.c.iter()
            .map(|x| (x.as_rational().unwrap() * &den).to_integer())
            .collect();
    let lo = ints
        .iter()
        .find(|x| !x.is_zero())?
        .abs()
        .to_u64()
        .filter(|&v| v <= DIVISOR_LIMIT)?;
    let hi = ints.last()?.abs().to_u64().filter(|&v| v <= DIVISOR_LIMIT)?;
    let mut out = Vec::new();
    for d in divisors(lo) {
        for e in divisors(hi) {
            for s in [1i64, -1] {
                out.push(BigRational::new(BigInt::from(d) * s, BigInt::from(e)));
            }
        }
    }
    out.sort();
    out.dedup();
    Some(out)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(Field::Rationals, low, c)
    }

    #[test]
    fn rational_roots() {
        // t^-1 (t - 1)(t - 2)(2t + 1)
        let p = &(&q(-1, &[-1, 1]) * &q(0, &[-2, 1])) * &q(0, &[1, 2]);
        let r: Vec<String> = roots(&p).iter().map(ToString::to_string).collect();
        assert_eq!(r, ["-1/2", "1", "2"]);
    }

    #[test]
    fn irreducible_quadratic_and_multiplicity() {
        // (t^2 + 1)(t - 1)^2
        let p = &q(0, &[1, 0, 1]) * &(&q(0, &[-1, 1]) * &q(0, &[-1, 1]));
        let f = factor(&p);
        assert_eq!(f.len(), 2);
        assert_eq!(
            (f[0].poly.clone(), f[0].multiplicity, f[0].certified),
            (q(0, &[-1, 1]), 2, true)
        );
        assert_eq!(
            (f[1].poly.clone(), f[1].multiplicity, f[1].certified),
            (q(0, &[1, 0, 1]), 1, true)
        );
        assert!(roots(&q(0, &[1, 0, 1])).is_empty());
    }

    #[test]
    fn prime_field_split() {
        let f7 = Field::Prime(7);
        // t^2 + 1 is irreducible mod 7, t^2 - 1 splits; t^7 - t splits completely
        assert!(roots(&LaurentPoly::from_i64s(f7, 0, &[1, 0, 1])).is_empty());
        let r: Vec<u64> = roots(&LaurentPoly::from_i64s(f7, 0, &[-1, 0, 1]))
            .iter()
            .filter_map(Scalar::residue)
            .collect();
        assert_eq!(r, [1, 6]);
        let all = roots(&LaurentPoly::from_i64s(f7, 0, &[-1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(all.len(), 6);
        let f2 = Field::Prime(2);
        // (t^2 + t + 1)(t + 1)^2 over F_2
        let p = &LaurentPoly::from_i64s(f2, 0, &[1, 1, 1]) * &LaurentPoly::from_i64s(f2, 0, &[1, 0, 1]);
        let f = factor(&p);
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].multiplicity, 2);
    }

    #[test]
    fn product_of_factors_recovers_input() {
        let f5 = Field::Prime(5);
        let p = LaurentPoly::from_i64s(f5, 0, &[3, 1, 4, 1, 0, 2, 6, 1]);
        let mut acc = LaurentPoly::one(f5);
        for f in factor(&p) {
            for _ in 0..f.multiplicity {
                acc = &acc * &f.poly;
            }
        }
        assert_eq!(acc, p.normalized());
    }
}
