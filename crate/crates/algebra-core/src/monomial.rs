//! Monomials and admissible term orders.
//!
//! Exponents are stored densely (index = variable index) with trailing zeros
//! trimmed, which keeps order comparisons branch-light; the sparse
//! `{"var": exp}` shape only exists on the wire.

use std::cmp::Ordering;

use smallvec::SmallVec;

type Exps = SmallVec<[u16; 8]>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Exps,
}

/// Canonical storage order for term maps: grevlex. Algorithms that need a
/// specific admissible order pass a [`MonomialOrder`] explicitly.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_cmp(self, other, 0, usize::MAX)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Exps::new() }
    }

    pub fn var(index: usize, exp: u16) -> Self {
        let mut m = Monomial::one();
        m.set_exponent(index, exp);
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        let mut m = Monomial {
            exps: Exps::from_slice(exps),
        };
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, index: usize) -> u16 {
        self.exps.get(index).copied().unwrap_or(0)
    }

    pub fn set_exponent(&mut self, index: usize, exp: u16) {
        if index >= self.exps.len() {
            if exp == 0 {
                return;
            }
            self.exps.resize(index + 1, 0);
        }
        self.exps[index] = exp;
        self.trim();
    }

    /// Highest variable index that occurs, plus one.
    pub fn width(&self) -> usize {
        self.exps.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Iterates `(variable index, exponent)` over the support.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u16)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let mut exps = Exps::with_capacity(n);
        for i in 0..n {
            exps.push(self.exponent(i) + other.exponent(i));
        }
        let mut m = Monomial { exps };
        m.trim();
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .enumerate()
            .all(|(i, &e)| e <= other.exponent(i))
    }

    /// `other / self`, if divisible.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = Exps::with_capacity(other.exps.len());
        for i in 0..other.exps.len() {
            exps.push(other.exponent(i) - self.exponent(i));
        }
        let mut m = Monomial { exps };
        m.trim();
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let mut exps = Exps::with_capacity(n);
        for i in 0..n {
            exps.push(self.exponent(i).max(other.exponent(i)));
        }
        let mut m = Monomial { exps };
        m.trim();
        m
    }

    /// True when the supports are disjoint (Buchberger's first criterion).
    pub fn coprime(&self, other: &Monomial) -> bool {
        let n = self.exps.len().min(other.exps.len());
        (0..n).all(|i| self.exponent(i) == 0 || other.exponent(i) == 0)
    }

    /// True when every variable in the support lies in `allowed`.
    pub fn supported_on(&self, allowed: &[bool]) -> bool {
        self.iter().all(|(i, _)| allowed.get(i).copied().unwrap_or(false))
    }
}

/// Admissible monomial orders. `Lex` and `GrevLex` are the two orders
/// exposed on ideal bases; `Elim(k)` is the block order (grevlex on the
/// first `k` variables, then grevlex on the rest) used internally to
/// compute elimination ideals.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Elim(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex_cmp(a, b, 0, usize::MAX),
            MonomialOrder::GrevLex => grevlex_cmp(a, b, 0, usize::MAX),
            MonomialOrder::Elim(k) => {
                grevlex_cmp(a, b, 0, *k).then_with(|| grevlex_cmp(a, b, *k, usize::MAX))
            }
        }
    }
}

fn lex_cmp(a: &Monomial, b: &Monomial, from: usize, to: usize) -> Ordering {
    let n = a.width().max(b.width()).min(to);
    for i in from..n {
        match a.exponent(i).cmp(&b.exponent(i)) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn grevlex_cmp(a: &Monomial, b: &Monomial, from: usize, to: usize) -> Ordering {
    let n = a.width().max(b.width()).min(to);
    let deg = |m: &Monomial| -> u32 {
        (from..n).map(|i| m.exponent(i) as u32).sum()
    };
    match deg(a).cmp(&deg(b)) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Equal block degree: the rightmost differing exponent decides,
    // smaller exponent there means larger monomial.
    for i in (from..n).rev() {
        match a.exponent(i).cmp(&b.exponent(i)) {
            Ordering::Equal => continue,
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}
