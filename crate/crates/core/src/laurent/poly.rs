use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::AlgebraError;
use crate::field::{Field, Scalar};

/// An element of `k[t, 1/t]`.
///
/// Stored densely from the lowest exponent; the first and last stored
/// coefficients are nonzero and the zero polynomial stores nothing, so
/// structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    field: Field,
    low: i64,
    coeffs: Vec<Scalar>,
}

impl LaurentPoly {
    pub fn zero(field: Field) -> Self {
        LaurentPoly {
            field,
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: Scalar, e: i64) -> Self {
        let field = c.field();
        Self::from_coeffs(field, e, vec![c])
    }

    /// `t^e`.
    pub fn t_pow(field: Field, e: i64) -> Self {
        Self::monomial(field.one(), e)
    }

    /// Coefficients of `t^low, t^(low+1), ...`; zeros at either end are trimmed.
    pub fn from_coeffs(field: Field, low: i64, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero(field);
        }
        coeffs.drain(..lead_zeros);
        LaurentPoly {
            field,
            low: low + lead_zeros as i64,
            coeffs,
        }
    }

    pub fn from_i64s(field: Field, low: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, low, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Units of the ring are the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn low(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// `high - low`; the Euclidean size on `k[t, 1/t]`.
    pub fn span(&self) -> Option<usize> {
        (!self.is_zero()).then(|| self.coeffs.len() - 1)
    }

    pub fn coeff(&self, e: i64) -> Scalar {
        let k = e - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            self.field.zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Coefficients from the lowest exponent up.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn trailing_coeff(&self) -> Option<&Scalar> {
        self.coeffs.first()
    }

    /// Total coefficient height, used to break pivot ties.
    pub fn height(&self) -> u64 {
        self.coeffs.iter().map(Scalar::height).sum()
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch(self.field, other.field))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let low = self.low.min(other.low);
        let high = self.high().unwrap().max(other.high().unwrap());
        let coeffs = (low..=high).map(|e| &self.coeff(e) + &other.coeff(e)).collect();
        Ok(Self::from_coeffs(self.field, low, coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(Self::from_coeffs(self.field, self.low + other.low, coeffs))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_coeffs(self.field, self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            field: self.field,
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Splits `self = unit * canonical` where the canonical associate has
    /// lowest exponent 0 and leading coefficient 1. The zero polynomial is its
    /// own canonical associate with unit 1.
    pub fn canonical(&self) -> (LaurentPoly, LaurentPoly) {
        if self.is_zero() {
            return (Self::one(self.field), self.clone());
        }
        let lead = self.leading_coeff().unwrap().clone();
        let inv = lead.inverse().expect("nonzero leading coefficient");
        let normalized = LaurentPoly {
            field: self.field,
            low: 0,
            coeffs: self.coeffs.iter().map(|c| c * &inv).collect(),
        };
        (Self::monomial(lead, self.low), normalized)
    }

    pub fn normalized(&self) -> LaurentPoly {
        self.canonical().1
    }

    pub fn is_normalized(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.leading_coeff().is_some_and(Scalar::is_one))
    }

    /// Inverse of a unit `c t^m`.
    pub fn unit_inverse(&self) -> Option<LaurentPoly> {
        if !self.is_unit() {
            return None;
        }
        Some(Self::monomial(self.coeffs[0].inverse().ok()?, -self.low))
    }

    /// Euclidean division: `self = q * d + r` with `span(r) < span(d)` or `r = 0`.
    pub fn div_rem(&self, d: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly), AlgebraError> {
        self.check(d)?;
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok((Self::zero(self.field), Self::zero(self.field)));
        }
        // shift both to polynomials with nonzero constant term and divide from the top
        let mut rem = self.coeffs.clone();
        let dn = d.coeffs.len();
        let inv_lead = d.leading_coeff().unwrap().inverse()?;
        let mut quot = vec![self.field.zero(); rem.len().saturating_sub(dn - 1).max(1)];
        while rem.len() >= dn {
            let top = rem.len() - 1;
            let c = rem[top].clone();
            if !c.is_zero() {
                let f = &c * &inv_lead;
                let offset = top + 1 - dn;
                for (k, dc) in d.coeffs.iter().enumerate() {
                    rem[offset + k] = &rem[offset + k] - &(&f * dc);
                }
                quot[offset] = f;
            }
            rem.pop();
        }
        let q = Self::from_coeffs(self.field, self.low - d.low, quot);
        let r = Self::from_coeffs(self.field, self.low, rem);
        Ok((q, r))
    }

    /// `Some(q)` with `self = q * d` when `d` divides `self`.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return self.is_zero().then(|| Self::zero(self.field));
        }
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &LaurentPoly) -> bool {
        other.exact_div(self).is_some()
    }

    /// Evaluation at a nonzero field element (zero is allowed when no negative
    /// exponents occur).
    pub fn eval(&self, a: &Scalar) -> Result<Scalar, AlgebraError> {
        if a.field() != self.field {
            return Err(AlgebraError::FieldMismatch(self.field, a.field()));
        }
        if self.is_zero() {
            return Ok(self.field.zero());
        }
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * a) + c;
        }
        if self.low == 0 {
            Ok(acc)
        } else {
            Ok(&acc * &a.pow(self.low)?)
        }
    }

    /// Substitutes `t -> t^k` for `k >= 1`.
    pub fn compose_power(&self, k: usize) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::from_coeffs(self.field, self.low * k as i64, coeffs)
    }

    /// Formal derivative `d/dt`.
    pub fn derivative(&self) -> LaurentPoly {
        let mut out = Self::zero(self.field);
        for (e, c) in self.terms() {
            if e != 0 {
                out = &out + &Self::monomial(c * &self.field.from_i64(e), e - 1);
            }
        }
        out
    }

    /// Renders with `t` as the variable, e.g. `t^2-1`, `2*t^-1+1/2`.
    pub fn to_string_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with("t"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self, self.field)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("field mismatch")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            field: self.field,
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Canonical-associate gcd.
pub fn poly_gcd(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
    Ok(ext_gcd(p, q)?.0)
}

/// `(g, s, u)` with `s * p + u * q = g`, `g` the canonical gcd.
pub fn ext_gcd(p: &LaurentPoly, q: &LaurentPoly) -> Result<(LaurentPoly, LaurentPoly, LaurentPoly), AlgebraError> {
    p.check(q)?;
    if p.is_zero() && q.is_zero() {
        return Err(AlgebraError::BothZero);
    }
    let field = p.field();
    let (mut r0, mut r1) = (p.clone(), q.clone());
    let (mut s0, mut s1) = (LaurentPoly::one(field), LaurentPoly::zero(field));
    let (mut u0, mut u1) = (LaurentPoly::zero(field), LaurentPoly::one(field));
    while !r1.is_zero() {
        let (quot, rem) = r0.div_rem(&r1)?;
        let s2 = &s0 - &(&quot * &s1);
        let u2 = &u0 - &(&quot * &u1);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s2);
        u0 = std::mem::replace(&mut u1, u2);
    }
    let (unit, g) = r0.canonical();
    let inv = unit.unit_inverse().expect("unit");
    Ok((g, &s0 * &inv, &u0 * &inv))
}

pub fn poly_lcm(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
    if p.is_zero() || q.is_zero() {
        return Ok(LaurentPoly::zero(p.field()));
    }
    let g = poly_gcd(p, q)?;
    Ok((&p.exact_div(&g).expect("gcd divides") * q).normalized())
}

/// Ring operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
}

pub fn poly_arith(p: &LaurentPoly, q: &LaurentPoly, op: PolyOp) -> Result<LaurentPoly, AlgebraError> {
    match op {
        PolyOp::Add => p.try_add(q),
        PolyOp::Mul => p.try_mul(q),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rationals;

    fn p(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(Q, low, c)
    }

    #[test]
    fn arithmetic_examples() {
        // (t - 1) + 1 = t
        assert_eq!(
            poly_arith(&p(0, &[-1, 1]), &p(0, &[1]), PolyOp::Add).unwrap(),
            p(1, &[1])
        );
        // (t - 1)(t + 1) = t^2 - 1
        assert_eq!(
            poly_arith(&p(0, &[-1, 1]), &p(0, &[1, 1]), PolyOp::Mul).unwrap(),
            p(0, &[-1, 0, 1])
        );
        // t^-1 * t = 1
        assert!(poly_arith(&p(-1, &[1]), &p(1, &[1]), PolyOp::Mul).unwrap().is_one());
        let f5 = LaurentPoly::one(Field::Prime(5));
        assert!(matches!(
            poly_arith(&p(0, &[1]), &f5, PolyOp::Add),
            Err(AlgebraError::FieldMismatch(..))
        ));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(0, &[-1, 1]), &p(0, &[-1, 0, 1])).unwrap(), p(0, &[-1, 1]));
        assert!(poly_gcd(&p(0, &[-2, 1]), &p(0, &[-3, 1])).unwrap().is_one());
        // t^3 (t - 1) and t^-2 (t - 1)^2
        let a = p(3, &[-1, 1]);
        let b = p(-2, &[1, -2, 1]);
        assert_eq!(poly_gcd(&a, &b).unwrap(), p(0, &[-1, 1]));
        assert!(matches!(
            poly_gcd(&LaurentPoly::zero(Q), &LaurentPoly::zero(Q)),
            Err(AlgebraError::BothZero)
        ));
        assert_eq!(poly_gcd(&LaurentPoly::zero(Q), &p(4, &[3])).unwrap(), p(0, &[1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(0, &[-2, 1]).to_string(), "t-2");
        assert_eq!(p(0, &[-1, 0, 1]).to_string(), "t^2-1");
        assert_eq!(p(-1, &[2]).to_string(), "2*t^-1");
        assert_eq!(LaurentPoly::zero(Q).to_string(), "0");
        let half = LaurentPoly::constant(Q.ratio(1, 2).unwrap());
        assert_eq!((&p(-1, &[2]) + &half).to_string(), "1/2+2*t^-1");
    }

    #[test]
    fn canonical_associates() {
        let (u, c) = p(3, &[4, 2]).canonical();
        assert_eq!(c, p(0, &[2, 1]));
        assert_eq!(&u * &c, p(3, &[4, 2]));
        assert!(c.is_normalized());
    }

    #[test]
    fn evaluation_and_derivative() {
        let f = p(-1, &[1, 0, 3]); // t^-1 + 3t
        assert_eq!(f.eval(&Q.from_i64(2)).unwrap(), Q.ratio(13, 2).unwrap());
        assert_eq!(p(0, &[5, -2, 0, 1]).derivative(), p(0, &[-2, 0, 3]));
        assert_eq!(p(0, &[-1, 1]).compose_power(3), p(0, &[-1, 0, 0, 1]));
    }

    fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
        (-3i64..3, prop::collection::vec(-4i64..5, 0..5)).prop_map(|(low, c)| p(low, &c))
    }

    proptest! {
        #[test]
        fn division_is_euclidean(a in poly_strategy(), d in poly_strategy()) {
            prop_assume!(!d.is_zero());
            let (q, r) = a.div_rem(&d).unwrap();
            prop_assert_eq!(&(&q * &d) + &r, a);
            if !r.is_zero() {
                prop_assert!(r.span().unwrap() < d.span().unwrap());
            }
        }

        #[test]
        fn gcd_divides_and_bezout(a in poly_strategy(), b in poly_strategy()) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let (g, s, u) = ext_gcd(&a, &b).unwrap();
            prop_assert!(g.is_normalized());
            prop_assert!(g.divides(&a));
            prop_assert!(g.divides(&b));
            prop_assert_eq!(&(&s * &a) + &(&u * &b), g);
        }
    }
}
