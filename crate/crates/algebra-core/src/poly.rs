//! Multivariate polynomials over the Gaussian rationals.
//!
//! A polynomial is a map monomial -> nonzero coefficient. Variable names are
//! not stored here; they belong to the surrounding ideal or variety, and all
//! arithmetic is purely index-based.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::gauss::GaussRat;
use crate::monomial::{Monomial, MonomialOrder};
use crate::rat::Rat;
use crate::CoreError;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Polynomial::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = Polynomial::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(index: usize) -> Self {
        Polynomial::term(GaussRat::one(), Monomial::var(index, 1))
    }

    pub fn term(c: GaussRat, m: Monomial) -> Self {
        let mut p = Polynomial::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical (grevlex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn constant_part(&self) -> GaussRat {
        self.coefficient(&Monomial::one())
    }

    /// True when the polynomial is a constant (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Number of variable slots spanned by the support.
    pub fn width(&self) -> usize {
        self.terms.keys().map(|m| m.width()).max().unwrap_or(0)
    }

    /// Marks every variable occurring in the support in a bool table of
    /// length at least `n`.
    pub fn support(&self, n: usize) -> Vec<bool> {
        let mut used = vec![false; n.max(self.width())];
        for m in self.terms.keys() {
            for (i, _) in m.iter() {
                used[i] = true;
            }
        }
        used
    }

    pub fn add_term(&mut self, c: &GaussRat, m: &Monomial) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(m);
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(c, m);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(&(-c.clone()), m);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn mul_term(&self, c: &GaussRat, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut out = Polynomial::zero();
        for (mm, cc) in self.terms() {
            out.terms.insert(mm.mul(m), cc * c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in other.terms() {
            for (mm, cc) in self.terms() {
                out.add_term(&(cc * c), &mm.mul(m));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &GaussRat)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => Polynomial::zero(),
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Formal partial derivative with respect to variable `v`.
    pub fn partial(&self, v: usize) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in self.terms() {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm.set_exponent(v, e - 1);
            let factor = GaussRat::from_rat(Rat::from_integer((e as i64).into()));
            out.add_term(&(c * &factor), &mm);
        }
        out
    }

    /// Exact evaluation at a Gaussian-rational point (indexed by variable).
    pub fn eval_gauss(&self, point: &[GaussRat]) -> Result<GaussRat, CoreError> {
        let mut acc = GaussRat::zero();
        for (m, c) in self.terms() {
            let mut t = c.clone();
            for (i, e) in m.iter() {
                let x = point
                    .get(i)
                    .ok_or_else(|| CoreError::BadScalar(format!("point too short for var {i}")))?;
                t *= &x.pow(e as u32);
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Renames variables: monomial exponent of old index `i` moves to
    /// `map[i]`. Distinct old indices must map to distinct new indices.
    pub fn remap_vars(&self, map: &[usize]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in self.terms() {
            let mut mm = Monomial::one();
            for (i, e) in m.iter() {
                mm.set_exponent(map[i], e);
            }
            out.add_term(c, &mm);
        }
        out
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, vars }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    vars: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.poly.terms().collect();
        terms.sort_by(|(a, _), (b, _)| MonomialOrder::GrevLex.cmp(b, a));
        for (k, (m, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "({c})")?;
            } else {
                if !c.is_one() {
                    write!(f, "({c})*")?;
                }
                let mut first = true;
                for (i, e) in m.iter() {
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    let name = self
                        .vars
                        .get(i)
                        .map(|s| s.as_str())
                        .unwrap_or("?");
                    if e == 1 {
                        write!(f, "{name}")?;
                    } else {
                        write!(f, "{name}^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.width()).map(|i| format!("v{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    fn p(src: &str) -> Polynomial {
        parse_poly(src, &vars()).unwrap()
    }

    #[test]
    fn arithmetic_matches_hand_expansion() {
        // (x + y)^2 = x^2 + 2xy + y^2
        let s = p("x + y");
        assert_eq!(s.mul(&s), p("x^2 + 2*x*y + y^2"));
        // (x + i)*(x - i) = x^2 + 1
        assert_eq!(p("x + i").mul(&p("x - i")), p("x^2 + 1"));
        assert_eq!(p("x - x"), Polynomial::zero());
    }

    #[test]
    fn partial_derivatives() {
        let f = p("x^3*y + 2*z - 7");
        assert_eq!(f.partial(0), p("3*x^2*y"));
        assert_eq!(f.partial(1), p("x^3"));
        assert_eq!(f.partial(2), p("2"));
        assert_eq!(f.partial(0).partial(1), p("3*x^2"));
    }

    #[test]
    fn evaluation_is_exact() {
        let f = p("x^2 + 1/2*y - 3");
        let pt = vec![
            GaussRat::from_str_pair("1/2", "0").unwrap(),
            GaussRat::from_int(4),
        ];
        // 1/4 + 2 - 3 = -3/4
        assert_eq!(
            f.eval_gauss(&pt).unwrap(),
            GaussRat::from_str_pair("-3/4", "0").unwrap()
        );
    }

    #[test]
    fn leading_terms_respect_order() {
        let f = p("x*y^2 + x^2");
        let (lex, _) = f.leading_term(MonomialOrder::Lex).unwrap();
        assert_eq!(lex, &Monomial::from_exps(&[2]));
        let (grev, _) = f.leading_term(MonomialOrder::GrevLex).unwrap();
        assert_eq!(grev, &Monomial::from_exps(&[1, 2]));
    }

    #[test]
    fn monic_divides_by_leading_coefficient() {
        let f = p("2*x^2 + 4*y");
        assert_eq!(f.monic(MonomialOrder::GrevLex), p("x^2 + 2*y"));
    }

    #[test]
    fn remap_moves_support() {
        let f = p("x^2*y + z");
        let g = f.remap_vars(&[2, 1, 0]);
        assert_eq!(g, p("z^2*y + x"));
    }
}
