use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Which indeterminate a polynomial is written in: the bracket variable `A`
/// or the Jones variable `t = A^-4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    A,
    T,
}

impl Var {
    fn symbol(self) -> &'static str {
        match self {
            Var::A => "A",
            Var::T => "t",
        }
    }
}

/// Integer Laurent polynomial in one variable. Zero coefficients are never
/// stored, so derived equality is coefficient-wise equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    var: Var,
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero(var: Var) -> Self {
        LaurentPoly { var, terms: BTreeMap::new() }
    }

    pub fn one(var: Var) -> Self {
        LaurentPoly::monomial(var, 1, 0)
    }

    pub fn monomial(var: Var, coeff: i64, exp: i32) -> Self {
        let mut p = LaurentPoly::zero(var);
        p.add_term(exp, coeff);
        p
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms(var: Var, terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = LaurentPoly::zero(var);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// `max - min` exponent; `None` for the zero polynomial.
    pub fn breadth(&self) -> Option<i32> {
        Some(self.max_degree()? - self.min_degree()?)
    }

    pub fn add_term(&mut self, exp: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    /// `p(x) -> p(x^-1)`.
    pub fn invert(&self) -> Self {
        LaurentPoly { var: self.var, terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    pub fn is_palindromic(&self) -> bool {
        *self == self.invert()
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly { var: self.var, terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        LaurentPoly::from_terms(self.var, self.terms().map(|(e, c)| (e, c * k)))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(LaurentPoly::one(self.var), |acc, _| &acc * self)
    }

    /// Re-expresses an `A`-polynomial in `t = A^-4`. Fails if some exponent is
    /// not a multiple of 4.
    pub fn a_to_t(&self) -> Option<Self> {
        assert_eq!(self.var, Var::A, "a_to_t on a t-polynomial");
        let mut out = LaurentPoly::zero(Var::T);
        for (e, c) in self.terms() {
            if e % 4 != 0 {
                return None;
            }
            out.add_term(-e / 4, c);
        }
        Some(out)
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder or needs non-integer coefficients.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<Self> {
        assert_eq!(self.var, divisor.var, "variable mismatch");
        let (d_max, d_lead) = divisor.terms.iter().next_back().map(|(&e, &c)| (e, c))?;
        let d_min = divisor.min_degree()?;
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero(self.var);
        let Some(p_min) = self.min_degree() else {
            return Some(quot);
        };
        while let Some((r_max, r_lead)) = rem.terms.iter().next_back().map(|(&e, &c)| (e, c)) {
            if r_max - (d_max - d_min) < p_min || r_lead % d_lead != 0 {
                return None;
            }
            let q_exp = r_max - d_max;
            let q_coeff = r_lead / d_lead;
            quot.add_term(q_exp, q_coeff);
            for (e, c) in divisor.terms() {
                rem.add_term(e + q_exp, -c * q_coeff);
            }
            if rem.max_degree().is_some_and(|m| m >= r_max) {
                return None;
            }
        }
        Some(quot)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.var, rhs.var, "variable mismatch");
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.var, rhs.var, "variable mismatch");
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.var, rhs.var, "variable mismatch");
        let mut out = LaurentPoly::zero(self.var);
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// Canonical single-line form, increasing exponents, e.g. `-t^-4+t^-3+t^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let x = self.var.symbol();
        for (k, (e, c)) in self.terms().enumerate() {
            if c < 0 {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            let a = c.unsigned_abs();
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if e == 1 {
                        f.write_str(x)?;
                    } else {
                        write!(f, "{x}^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    var: Var,
    terms: Vec<(i32, i64)>,
}

/// JSON form: `{"var": "t", "terms": [[exponent, coefficient], ...]}`.
impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyJson { var: self.var, terms: self.terms().collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        Ok(LaurentPoly::from_terms(j.var, j.terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(Var::T, terms.iter().copied())
    }

    #[test]
    fn display_form() {
        assert_eq!(t(&[(-4, -1), (-3, 1), (-1, 1)]).to_string(), "-t^-4+t^-3+t^-1");
        assert_eq!(t(&[(0, 1)]).to_string(), "1");
        assert_eq!(t(&[(1, 2), (3, -1)]).to_string(), "2t-t^3");
        assert_eq!(LaurentPoly::zero(Var::A).to_string(), "0");
    }

    #[test]
    fn zero_terms_are_dropped() {
        let p = &t(&[(2, 1)]) - &t(&[(2, 1)]);
        assert!(p.is_zero());
        assert_eq!(p, LaurentPoly::zero(Var::T));
        assert_eq!(p.breadth(), None);
    }

    #[test]
    fn palindromes() {
        assert!(LaurentPoly::one(Var::T).is_palindromic());
        assert!(t(&[(-2, 1), (-1, -1), (0, 1), (1, -1), (2, 1)]).is_palindromic());
        assert!(!t(&[(1, 1), (3, 1), (4, -1)]).is_palindromic());
    }

    #[test]
    fn a_to_t_requires_multiples_of_four() {
        let p = LaurentPoly::from_terms(Var::A, [(-4, 1), (8, -2)]);
        assert_eq!(p.a_to_t().unwrap(), t(&[(1, 1), (-2, -2)]));
        assert!(LaurentPoly::monomial(Var::A, 1, 2).a_to_t().is_none());
    }

    #[test]
    fn exact_division() {
        let delta = LaurentPoly::from_terms(Var::A, [(2, -1), (-2, -1)]);
        let p = LaurentPoly::from_terms(Var::A, [(5, 3), (-7, 1), (0, -2)]);
        let prod = &p * &delta;
        assert_eq!(prod.div_exact(&delta).unwrap(), p);
        assert!(LaurentPoly::one(Var::A).div_exact(&delta).is_none());
    }

    #[test]
    fn json_shape() {
        let p = t(&[(-1, 1), (-3, 1), (-4, -1)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"var":"t","terms":[[-4,-1],[-3,1],[-1,1]]}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-8i32..8, -5i64..5), 0..6).prop_map(|v| LaurentPoly::from_terms(Var::A, v))
    }

    proptest! {
        #[test]
        fn ring_laws(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn division_inverts_multiplication(p in arb_poly(), q in arb_poly(), unit in prop::bool::ANY) {
            // a unit leading coefficient keeps the quotient integral
            let top = q.max_degree().map_or(0, |d| d + 1);
            let q = &q + &LaurentPoly::monomial(Var::A, if unit { 1 } else { -1 }, top);
            prop_assert_eq!((&p * &q).div_exact(&q), Some(p.clone()));
        }

        #[test]
        fn inversion_negates_breadth_bounds(p in arb_poly()) {
            let inv = p.invert();
            prop_assert_eq!(inv.breadth(), p.breadth());
            prop_assert_eq!(inv.invert(), p);
        }
    }
}
