use std::cmp::Ordering;
use std::fmt;

use super::Var;

/// A Laurent monomial `x1^e1 * x2^e2 * ...` with nonzero integer exponents,
/// stored sorted by variable.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(Var, i64)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs, merging
    /// repeated variables and dropping zero exponents.
    pub fn from_exponents<I: IntoIterator<Item = (Var, i64)>>(iter: I) -> Self {
        let mut exps: Vec<(Var, i64)> = iter.into_iter().collect();
        exps.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Var, i64)> = Vec::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some((last, acc)) if *last == v => *acc += e,
                _ => merged.push((v, e)),
            }
        }
        merged.retain(|&(_, e)| e != 0);
        Monomial { exps: merged }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[(Var, i64)] {
        &self.exps
    }

    pub fn exponent(&self, v: &Var) -> i64 {
        self.exps
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    /// Sum of the exponents.
    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    /// Sum of the absolute values of the exponents.
    pub fn abs_degree(&self) -> i64 {
        self.exps.iter().map(|&(_, e)| e.abs()).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps: out }
    }

    pub fn inverse(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|(v, e)| (v.clone(), -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|(v, e)| (v.clone(), e * k)).collect(),
        }
    }

    /// True when every exponent of `self` is at least the matching exponent of
    /// `other` (polynomial divisibility of `self` by `other`).
    pub fn dominates(&self, other: &Monomial) -> bool {
        other.exps.iter().all(|(v, e)| self.exponent(v) >= *e)
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.exps.iter().any(|&(_, e)| e < 0)
    }

    pub fn variables(&self) -> impl Iterator<Item = &Var> {
        self.exps.iter().map(|(v, _)| v)
    }

    pub(crate) fn fmt_factors(&self, f: &mut impl fmt::Write) -> fmt::Result {
        for (i, (v, e)) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_char('*')?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Graded order: total degree first, then within a degree the monomial with the
/// larger exponent on the first differing variable sorts first. Sorted ascending,
/// `1 < x1 < x2 < x1^2 < x1*x2 < x2^2`. The order is multiplicative, so it is a
/// monomial order on polynomials.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        loop {
            let (va, ea) = match a.get(i) {
                Some((v, e)) => (Some(v), *e),
                None => (None, 0),
            };
            let (vb, eb) = match b.get(j) {
                Some((v, e)) => (Some(v), *e),
                None => (None, 0),
            };
            let (ea, eb) = match (va, vb) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => {
                    i += 1;
                    (ea, 0)
                }
                (None, Some(_)) => {
                    j += 1;
                    (0, eb)
                }
                (Some(x), Some(y)) => match x.cmp(y) {
                    Ordering::Less => {
                        i += 1;
                        (ea, 0)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (0, eb)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (ea, eb)
                    }
                },
            };
            if ea != eb {
                return eb.cmp(&ea);
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        self.fmt_factors(f)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(&str, i64)]) -> Monomial {
        Monomial::from_exponents(pairs.iter().map(|&(v, e)| (Var::new(v).unwrap(), e)))
    }

    #[test]
    fn graded_order() {
        let mut ms = vec![
            m(&[("x2", 2)]),
            m(&[("x1", 1), ("x2", 1)]),
            m(&[]),
            m(&[("x2", 1)]),
            m(&[("x1", 2)]),
            m(&[("x1", 1)]),
            m(&[("x1", -1)]),
        ];
        ms.sort();
        let printed: Vec<String> = ms.iter().map(|x| x.to_string()).collect();
        assert_eq!(printed, ["x1^-1", "1", "x1", "x2", "x1^2", "x1*x2", "x2^2"]);
    }

    #[test]
    fn order_is_multiplicative() {
        let a = m(&[("x1", 1), ("x3", 1)]);
        let b = m(&[("x2", 2)]);
        let c = m(&[("x2", 1), ("x4", -3)]);
        assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
    }

    #[test]
    fn merge_and_cancel() {
        let a = m(&[("x1", 1), ("x2", -1)]);
        let b = m(&[("x2", 1)]);
        assert_eq!(a.mul(&b), m(&[("x1", 1)]));
        assert!(a.mul(&a.inverse()).is_one());
        assert_eq!(m(&[("x1", 1), ("x1", -1)]), Monomial::one());
    }
}
