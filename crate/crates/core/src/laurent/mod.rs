//! Exact multivariate Laurent polynomials with integer coefficients.
//!
//! Every cluster variable is stored as a [`LaurentPoly`] in the initial variables
//! of its seed. Values are kept in a canonical form (sorted terms, no zero
//! coefficients), so structural equality is mathematical equality.

mod monomial;
mod parse;
mod var;

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use monomial::Monomial;
pub use var::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("not exactly divisible")]
    NotDivisible,
    #[error("image of {0} is not invertible but {0} occurs with a negative exponent")]
    NonUnitNegativePower(Var),
    #[error("image of {0} is zero but {0} occurs with a negative exponent")]
    ZeroIntoNegativePower(Var),
    #[error("no image given for {0}")]
    MissingImage(Var),
    #[error("invalid variable name {0:?}")]
    InvalidName(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A Laurent polynomial in canonical form.
///
/// Terms are sorted ascending by the graded [`Monomial`] order and carry nonzero
/// coefficients. The derived ordering compares the term lists and is used to
/// sort cluster variables canonically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        LaurentPoly::term(Monomial::one(), c.into())
    }

    pub fn var(v: Var) -> Self {
        LaurentPoly::term(Monomial::var(v), BigInt::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        LaurentPoly::term(m, BigInt::one())
    }

    pub fn term(m: Monomial, c: BigInt) -> Self {
        if c.is_zero() {
            LaurentPoly::zero()
        } else {
            LaurentPoly { terms: vec![(m, c)] }
        }
    }

    /// Collects terms, merging equal monomials and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(iter: I) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in iter {
            *acc.entry(m).or_default() += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        LaurentPoly { terms }
    }

    pub fn parse(text: &str) -> Result<Self, LaurentError> {
        parse::parse(text)
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// The value as an integer, if the polynomial is constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// The variable, if the polynomial is exactly a single variable.
    pub fn as_var(&self) -> Option<&Var> {
        match self.terms.as_slice() {
            [(m, c)] if c.is_one() => match m.exponents() {
                [(v, 1)] => Some(v),
                _ => None,
            },
            _ => None,
        }
    }

    /// `(monomial, ±1)` when the polynomial is a unit of the Laurent ring.
    pub fn as_unit_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        match self.terms.as_slice() {
            [(m, c)] if c.abs().is_one() => Some((m, c)),
            _ => None,
        }
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.variables().cloned())
            .collect()
    }

    /// Smallest exponent of each variable over all terms (variables absent
    /// from a term count as exponent 0).
    pub fn min_exponents(&self) -> BTreeMap<Var, i64> {
        let mut mins: BTreeMap<Var, i64> = BTreeMap::new();
        for v in self.variables() {
            let e = self.terms.iter().map(|(m, _)| m.exponent(&v)).min().unwrap_or(0);
            mins.insert(v, e);
        }
        mins
    }

    /// Largest exponent-sum over all terms, counting negative exponents by their
    /// absolute value.
    pub fn abs_degree(&self) -> i64 {
        self.terms.iter().map(|(m, _)| m.abs_degree()).max().unwrap_or(0)
    }

    /// True when no variable occurs with a negative exponent.
    pub fn is_polynomial(&self) -> bool {
        self.terms.iter().all(|(m, _)| !m.has_negative_exponent())
    }

    /// The least monomial `d` with `self * d` polynomial.
    pub fn denominator(&self) -> Monomial {
        Monomial::from_exponents(
            self.min_exponents()
                .into_iter()
                .filter(|&(_, e)| e < 0)
                .map(|(v, e)| (v, -e)),
        )
    }

    pub fn scale(&self, k: &BigInt) -> LaurentPoly {
        if k.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> LaurentPoly {
        // Multiplying by a monomial preserves the relative order of terms.
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    fn add_ref(&self, other: &LaurentPoly) -> LaurentPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentPoly { terms: out }
    }

    fn neg_ref(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn sub_ref(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add_ref(&other.neg_ref())
    }

    fn mul_ref(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        if let [(m, c)] = other.terms.as_slice() {
            return self.mul_monomial(m).scale(c);
        }
        if let [(m, c)] = self.terms.as_slice() {
            return other.mul_monomial(m).scale(c);
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity((self.terms.len() * other.terms.len()).min(1 << 16));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Self::from_map(acc)
    }

    /// Raises to an integer power. Negative powers are only defined for units
    /// of the Laurent ring (`±` a monomial).
    pub fn pow(&self, k: i64) -> Result<LaurentPoly, LaurentError> {
        if k < 0 {
            let (m, c) = self.as_unit_monomial().ok_or(LaurentError::NotDivisible)?;
            let sign = if k % 2 != 0 { c.clone() } else { BigInt::one() };
            return Ok(LaurentPoly::term(m.pow(k), sign));
        }
        let mut result = LaurentPoly::one();
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Exact quotient `self / divisor` in the Laurent ring over the integers.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        if divisor.is_zero() {
            return Err(LaurentError::NotDivisible);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if let [(m, c)] = divisor.terms.as_slice() {
            let inv = m.inverse();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (tm, tc) in &self.terms {
                let (q, r) = tc.div_rem(c);
                if !r.is_zero() {
                    return Err(LaurentError::NotDivisible);
                }
                terms.push((tm.mul(&inv), q));
            }
            return Ok(LaurentPoly { terms });
        }
        // Shift both operands to polynomials with no monomial factor; an exact
        // Laurent quotient of such polynomials is itself a polynomial.
        let shift_a = self.monomial_content();
        let shift_b = divisor.monomial_content();
        let a = self.mul_monomial(&shift_a.inverse());
        let b = divisor.mul_monomial(&shift_b.inverse());
        let q = poly_div_exact(&a, &b)?;
        Ok(q.mul_monomial(&shift_a.mul(&shift_b.inverse())))
    }

    /// The monomial `x^min` built from the per-variable minimum exponents.
    fn monomial_content(&self) -> Monomial {
        Monomial::from_exponents(self.min_exponents())
    }

    /// Applies the ring map sending each variable to its image.
    ///
    /// A variable occurring with a negative exponent must map to a nonzero
    /// integer or a unit monomial; the final quotient must be exact.
    pub fn substitute(
        &self,
        images: &BTreeMap<Var, LaurentPoly>,
    ) -> Result<LaurentPoly, LaurentError> {
        let lookup = |v: &Var| images.get(v).ok_or_else(|| LaurentError::MissingImage(v.clone()));
        for v in self.variables() {
            lookup(&v)?;
        }
        let denom = self.denominator();
        for (v, _) in denom.exponents() {
            let img = lookup(v)?;
            if img.is_zero() {
                return Err(LaurentError::ZeroIntoNegativePower(v.clone()));
            }
            if img.as_integer().is_none() && img.as_unit_monomial().is_none() {
                return Err(LaurentError::NonUnitNegativePower(v.clone()));
            }
        }
        let numerator = self.mul_monomial(&denom);
        let mut powers: HashMap<(Var, i64), LaurentPoly> = HashMap::new();
        let mut image_of = |m: &Monomial| -> Result<LaurentPoly, LaurentError> {
            let mut acc = LaurentPoly::one();
            for (v, e) in m.exponents() {
                let key = (v.clone(), *e);
                if !powers.contains_key(&key) {
                    let p = images[v].pow(*e)?;
                    powers.insert(key.clone(), p);
                }
                acc = &acc * &powers[&key];
            }
            Ok(acc)
        };
        let mut num_image = LaurentPoly::zero();
        for (m, c) in &numerator.terms {
            num_image = &num_image + &image_of(m)?.scale(c);
        }
        let den_image = image_of(&denom)?;
        num_image.div_exact(&den_image)
    }

    /// Renames variables; variables missing from `map` are kept.
    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let renamed = Monomial::from_exponents(
                m.exponents()
                    .iter()
                    .map(|(v, e)| (map.get(v).unwrap_or(v).clone(), *e)),
            );
            (renamed, c.clone())
        }))
    }

    /// Numerator-over-monomial form, e.g. `(1+x2)/x1`, without spaces.
    pub fn to_fraction_string(&self) -> String {
        let denom = self.denominator();
        let num = self.mul_monomial(&denom);
        let mut out = String::new();
        if denom.is_one() {
            write_terms(&mut out, &num, "+", "-").unwrap();
            return out;
        }
        if num.len() == 1 {
            write_terms(&mut out, &num, "+", "-").unwrap();
        } else {
            out.push('(');
            write_terms(&mut out, &num, "+", "-").unwrap();
            out.push(')');
        }
        out.push('/');
        if denom.exponents().len() > 1 {
            out.push('(');
            denom.fmt_factors(&mut out).unwrap();
            out.push(')');
        } else {
            denom.fmt_factors(&mut out).unwrap();
        }
        out
    }
}

fn write_terms(out: &mut impl fmt::Write, p: &LaurentPoly, plus: &str, minus: &str) -> fmt::Result {
    if p.is_zero() {
        return out.write_char('0');
    }
    for (i, (m, c)) in p.terms.iter().enumerate() {
        let negative = c.is_negative();
        if i == 0 {
            if negative {
                out.write_char('-')?;
            }
        } else {
            out.write_str(if negative { minus } else { plus })?;
        }
        let abs = c.abs();
        if m.is_one() {
            write!(out, "{abs}")?;
        } else {
            if !abs.is_one() {
                write!(out, "{abs}*")?;
            }
            m.fmt_factors(out)?;
        }
    }
    Ok(())
}

/// Exact division of polynomials (nonnegative exponents) using the graded
/// monomial order; a single divisor always forms a Gröbner basis of its ideal,
/// so a nonzero remainder term proves non-divisibility.
fn poly_div_exact(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
    let (lead_m, lead_c) = b.terms.last().expect("nonzero divisor");
    let mut rem: BTreeMap<Monomial, BigInt> = a.terms.iter().cloned().collect();
    let mut quotient: Vec<(Monomial, BigInt)> = Vec::new();
    while let Some((m, c)) = rem.pop_last() {
        if m.degree() < lead_m.degree() || !m.dominates(lead_m) {
            return Err(LaurentError::NotDivisible);
        }
        let (qc, r) = c.div_rem(lead_c);
        if !r.is_zero() {
            return Err(LaurentError::NotDivisible);
        }
        let qm = m.mul(&lead_m.inverse());
        for (bm, bc) in &b.terms[..b.terms.len() - 1] {
            match rem.entry(bm.mul(&qm)) {
                Entry::Occupied(mut e) => {
                    *e.get_mut() -= &qc * bc;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                Entry::Vacant(e) => {
                    e.insert(-(&qc * bc));
                }
            }
        }
        quotient.push((qm, qc));
    }
    quotient.reverse();
    Ok(LaurentPoly { terms: quotient })
}

impl fmt::Display for LaurentPoly {
    /// Canonical textual form: `c*x1^e1*x2^e2` terms joined by ` + ` / ` - `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self, " + ", " - ")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse(s)
    }
}

impl From<Var> for LaurentPoly {
    fn from(v: Var) -> Self {
        LaurentPoly::var(v)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapters writing polynomials in fraction form, e.g. `(1+x2)/x1`.
pub mod fraction {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::LaurentPoly;

    pub fn serialize<S: Serializer>(p: &LaurentPoly, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&p.to_fraction_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<LaurentPoly, D::Error> {
        let s = String::deserialize(deserializer)?;
        LaurentPoly::parse(&s).map_err(serde::de::Error::custom)
    }

    pub mod seq {
        use serde::ser::SerializeSeq;
        use serde::Serializer;

        use super::LaurentPoly;

        pub fn serialize<S: Serializer>(ps: &[LaurentPoly], serializer: S) -> Result<S::Ok, S::Error> {
            let mut seq = serializer.serialize_seq(Some(ps.len()))?;
            for p in ps {
                seq.serialize_element(&p.to_fraction_string())?;
            }
            seq.end()
        }
    }

    pub mod opt {
        use serde::Serializer;

        use super::LaurentPoly;

        pub fn serialize<S: Serializer>(
            p: &Option<LaurentPoly>,
            serializer: S,
        ) -> Result<S::Ok, S::Error> {
            match p {
                Some(p) => serializer.serialize_some(&p.to_fraction_string()),
                None => serializer.serialize_none(),
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                LaurentPoly::$inner(self, rhs)
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                LaurentPoly::$inner(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    fn v(s: &str) -> Var {
        Var::new(s).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(p("x1") + LaurentPoly::zero(), p("x1"));
        assert_eq!((p("1 + x2") + p("x1")).to_string(), "1 + x1 + x2");
        assert!((p("1 + x2") + p("-1 - x2")).is_zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("x1") * p("x1^-1"), LaurentPoly::one());
        assert_eq!((p("1 + x2") * p("x1^-1")).to_string(), "x1^-1 + x1^-1*x2");
        assert_eq!(p("(1+x2)/x1") * p("x1"), p("1 + x2"));
    }

    #[test]
    fn div_exact_examples() {
        assert_eq!(p("x1*x2 + x2").div_exact(&p("x2")).unwrap(), p("x1 + 1"));
        assert_eq!(
            p("1 + x2").div_exact(&p("x1")).unwrap().to_string(),
            "x1^-1 + x1^-1*x2"
        );
        assert_eq!(
            p("1 + x2").div_exact(&p("1 + x1")),
            Err(LaurentError::NotDivisible)
        );
    }

    #[test]
    fn div_exact_general_divisor() {
        let a = p("x1^-2 + 3*x2 - x1*x3^4");
        let b = p("x1^2*x2^-1 - 7 + x3");
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(p("2*x1 + 2").div_exact(&p("2*x1 + 4")), Err(LaurentError::NotDivisible));
        assert_eq!(p("x1 + 1").div_exact(&p("2*x1 + 2")), Err(LaurentError::NotDivisible));
        assert_eq!(p("x1").div_exact(&LaurentPoly::zero()), Err(LaurentError::NotDivisible));
    }

    #[test]
    fn substitute_examples() {
        let f = p("(1+x2)/x1");
        let identity: BTreeMap<Var, LaurentPoly> =
            [v("x1"), v("x2")].into_iter().map(|x| (x.clone(), x.into())).collect();
        assert_eq!(f.substitute(&identity).unwrap(), f);

        let zeros: BTreeMap<Var, LaurentPoly> =
            [(v("x1"), LaurentPoly::zero()), (v("x3"), LaurentPoly::zero())].into();
        assert!(p("x1 + x3").substitute(&zeros).unwrap().is_zero());

        let ints: BTreeMap<Var, LaurentPoly> = [(v("x1"), 2.into()), (v("x2"), 3.into())].into();
        assert_eq!(f.substitute(&ints).unwrap(), LaurentPoly::constant(2));
    }

    #[test]
    fn substitute_errors() {
        let f = p("(1+x2)/x1");
        let zero: BTreeMap<Var, LaurentPoly> = [(v("x1"), 0.into()), (v("x2"), 3.into())].into();
        assert_eq!(
            f.substitute(&zero),
            Err(LaurentError::ZeroIntoNegativePower(v("x1")))
        );
        let nonunit: BTreeMap<Var, LaurentPoly> =
            [(v("x1"), p("1 + x2")), (v("x2"), p("x2"))].into();
        assert_eq!(
            f.substitute(&nonunit),
            Err(LaurentError::NonUnitNegativePower(v("x1")))
        );
        let inexact: BTreeMap<Var, LaurentPoly> = [(v("x1"), 2.into()), (v("x2"), 2.into())].into();
        assert_eq!(f.substitute(&inexact), Err(LaurentError::NotDivisible));
        let missing: BTreeMap<Var, LaurentPoly> = [(v("x1"), 1.into())].into();
        assert_eq!(f.substitute(&missing), Err(LaurentError::MissingImage(v("x2"))));
    }

    #[test]
    fn substitute_unit_monomials() {
        let f = p("(x1 + x3 + x2*x3)/(x1*x2)");
        let images: BTreeMap<Var, LaurentPoly> = [
            (v("x1"), p("-x5")),
            (v("x2"), p("x6^-1")),
            (v("x3"), p("x5 + x6")),
        ]
        .into();
        let expected = (p("-x5") + p("x5 + x6") + p("x6^-1") * p("x5 + x6"))
            .div_exact(&(p("-x5") * p("x6^-1")))
            .unwrap();
        assert_eq!(f.substitute(&images).unwrap(), expected);
    }

    #[test]
    fn pow_and_units() {
        assert_eq!(p("1 + x1").pow(3).unwrap(), p("1 + 3*x1 + 3*x1^2 + x1^3"));
        assert_eq!(p("-x1").pow(-3).unwrap(), p("-x1^-3"));
        assert_eq!(p("1 + x1").pow(-1), Err(LaurentError::NotDivisible));
        assert_eq!(p("x2").pow(0).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn display_forms() {
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
        assert_eq!(p("-x1 + 2 - 3*x2^2").to_string(), "2 - x1 - 3*x2^2");
        assert_eq!(p("(1+x2)/x1").to_fraction_string(), "(1+x2)/x1");
        assert_eq!(p("(x1+x3)/x2").to_fraction_string(), "(x1+x3)/x2");
        assert_eq!(
            p("(x1+x3+x2*x3)/(x1*x2)").to_fraction_string(),
            "(x1+x3+x2*x3)/(x1*x2)"
        );
        assert_eq!(p("x3/x1^2").to_fraction_string(), "x3/x1^2");
        assert_eq!(p("x1 - 1").to_fraction_string(), "-1+x1");
    }

    #[test]
    fn fraction_form_parses_back() {
        for s in ["(1+x2)/x1", "(x1+x3+x2*x3)/(x1*x2)", "-x3/x1^2", "7", "x1*x2^-1 - 2*x2^-3"] {
            let f = p(s);
            assert_eq!(p(&f.to_fraction_string()), f);
        }
    }

    #[test]
    fn rename_merges() {
        let f = p("x3 + x9");
        let map: BTreeMap<Var, Var> = [(v("x9"), v("x3"))].into();
        assert_eq!(f.rename(&map), p("2*x3"));
    }
}
