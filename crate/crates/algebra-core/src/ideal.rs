//! Ideal bases, Buchberger's algorithm, elimination, dimension and
//! unit-saturation.
//!
//! All routines are exact and deterministic: identical inputs (including the
//! order tag) produce bit-identical reduced bases. Work is metered by a
//! step [`Budget`]; exceeding it aborts with `ResourceExhausted` rather than
//! looping unboundedly.

use std::sync::OnceLock;

use num_traits::One;

use crate::gauss::GaussRat;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::CoreError;

/// Reduction-step meter shared by a computation tree.
#[derive(Clone, Debug)]
pub struct Budget {
    pub steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { steps: 1_000_000 }
    }
}

impl Budget {
    pub fn new(steps: u64) -> Self {
        Budget { steps }
    }

    fn step(&mut self) -> Result<(), CoreError> {
        if self.steps == 0 {
            return Err(CoreError::ResourceExhausted);
        }
        self.steps -= 1;
        Ok(())
    }
}

/// A finite generating set of an ideal of `Q(i)[vars]`, tagged with the
/// monomial order used for its Groebner data. The reduced basis is computed
/// lazily and cached.
#[derive(Debug)]
pub struct IdealBasis {
    vars: Vec<String>,
    gens: Vec<Polynomial>,
    order: MonomialOrder,
    gb: OnceLock<Result<Vec<Polynomial>, CoreError>>,
}

impl Clone for IdealBasis {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(v) = self.gb.get() {
            let _ = gb.set(v.clone());
        }
        IdealBasis {
            vars: self.vars.clone(),
            gens: self.gens.clone(),
            order: self.order,
            gb,
        }
    }
}

impl PartialEq for IdealBasis {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.gens == other.gens && self.order == other.order
    }
}

impl IdealBasis {
    pub fn new(vars: Vec<String>, gens: Vec<Polynomial>, order: MonomialOrder) -> Self {
        let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        IdealBasis {
            vars,
            gens,
            order,
            gb: OnceLock::new(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Same generators under a different order (cache dropped).
    pub fn with_order(&self, order: MonomialOrder) -> IdealBasis {
        IdealBasis::new(self.vars.clone(), self.gens.clone(), order)
    }

    /// Same generators in a ring extended by `extra` fresh variables.
    pub fn extend_ring(&self, extra: &[String]) -> IdealBasis {
        let mut vars = self.vars.clone();
        vars.extend_from_slice(extra);
        IdealBasis::new(vars, self.gens.clone(), self.order)
    }

    /// The reduced Groebner basis under the ideal's order, computed with a
    /// fresh default budget.
    pub fn groebner(&self) -> Result<&[Polynomial], CoreError> {
        self.groebner_with(&mut Budget::default())
    }

    pub fn groebner_with(&self, budget: &mut Budget) -> Result<&[Polynomial], CoreError> {
        let r = self.gb.get_or_init(|| buchberger(&self.gens, self.order, budget));
        match r {
            Ok(v) => Ok(v),
            Err(e) => Err(e.clone()),
        }
    }

    /// Seeds the Groebner cache with a basis already known to be reduced.
    fn with_known_groebner(
        vars: Vec<String>,
        basis: Vec<Polynomial>,
        order: MonomialOrder,
    ) -> IdealBasis {
        let ideal = IdealBasis::new(vars, basis.clone(), order);
        let _ = ideal.gb.set(Ok(basis));
        ideal
    }

    /// Fully reduced normal form of `p` modulo the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, CoreError> {
        self.normal_form_with(p, &mut Budget::default())
    }

    pub fn normal_form_with(
        &self,
        p: &Polynomial,
        budget: &mut Budget,
    ) -> Result<Polynomial, CoreError> {
        let order = self.order;
        let gb = self.groebner_with(budget)?;
        let basis: Vec<OPoly> = gb.iter().map(|g| OPoly::from_poly(g, order)).collect();
        let h = reduce_full(OPoly::from_poly(p, order), &basis, order, budget)?;
        Ok(h.into_poly())
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, CoreError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn is_unit_ideal(&self) -> Result<bool, CoreError> {
        let gb = self.groebner()?;
        Ok(gb.len() == 1 && gb[0].is_constant() && !gb[0].is_zero())
    }

    /// Ideal equality via uniqueness of the reduced basis (both sides are
    /// compared under this ideal's order).
    pub fn ideal_eq(&self, other: &IdealBasis) -> Result<bool, CoreError> {
        if self.vars.len() != other.vars.len() {
            return Ok(false);
        }
        let a = self.groebner()?;
        let b = other.with_order(self.order);
        let b = b.groebner()?;
        Ok(a == b)
    }

    /// The elimination ideal `I ∩ Q(i)[keep]`, returned as a basis over the
    /// ring on the kept variables (in their original relative order). The
    /// returned basis is a reduced grevlex Groebner basis.
    pub fn eliminate(&self, keep: &[usize]) -> Result<IdealBasis, CoreError> {
        self.eliminate_with(keep, &mut Budget::default())
    }

    pub fn eliminate_with(
        &self,
        keep: &[usize],
        budget: &mut Budget,
    ) -> Result<IdealBasis, CoreError> {
        let n = self.vars.len();
        let mut is_kept = vec![false; n];
        for &k in keep {
            if k >= n {
                return Err(CoreError::VarMismatch(format!(
                    "keep index {k} out of range for {n} variables"
                )));
            }
            if is_kept[k] {
                return Err(CoreError::VarMismatch(format!("duplicate keep index {k}")));
            }
            is_kept[k] = true;
        }
        let elim: Vec<usize> = (0..n).filter(|&i| !is_kept[i]).collect();
        let kept: Vec<usize> = (0..n).filter(|&i| is_kept[i]).collect();

        // Permute so the eliminated block comes first, then run the block
        // order that makes any occurrence of an eliminated variable large.
        let mut map = vec![0usize; n];
        for (new, &old) in elim.iter().chain(kept.iter()).enumerate() {
            map[old] = new;
        }
        let permuted: Vec<Polynomial> = self.gens.iter().map(|g| g.remap_vars(&map)).collect();
        let order = MonomialOrder::Elim(elim.len());
        let gb = buchberger(&permuted, order, budget)?;

        // Keep the members supported on the kept block and compact them
        // onto indices 0..keep.len().
        let keep_start = elim.len();
        let mut allowed = vec![false; n];
        for i in keep_start..n {
            allowed[i] = true;
        }
        let mut compact = vec![0usize; n];
        for (j, slot) in compact.iter_mut().enumerate().skip(keep_start) {
            *slot = j - keep_start;
        }
        let mut out = Vec::new();
        for g in gb {
            if g.terms().all(|(m, _)| m.supported_on(&allowed)) {
                out.push(g.remap_vars(&compact));
            }
        }
        let vars: Vec<String> = kept.iter().map(|&i| self.vars[i].clone()).collect();
        Ok(IdealBasis::with_known_groebner(vars, out, MonomialOrder::GrevLex))
    }

    /// Krull dimension of `V(I)` inside affine space on this ring's
    /// variables: the size of a maximal set of variables independent modulo
    /// the leading-term ideal of a grevlex basis. Returns -1 for the unit
    /// ideal (empty variety).
    pub fn dimension(&self) -> Result<i64, CoreError> {
        self.dimension_with(&mut Budget::default())
    }

    pub fn dimension_with(&self, budget: &mut Budget) -> Result<i64, CoreError> {
        let grev = if self.order == MonomialOrder::GrevLex {
            self.clone()
        } else {
            self.with_order(MonomialOrder::GrevLex)
        };
        let gb = grev.groebner_with(budget)?;
        if gb.len() == 1 && gb[0].is_constant() && !gb[0].is_zero() {
            return Ok(-1);
        }
        let leads: Vec<Monomial> = gb
            .iter()
            .map(|g| {
                g.leading_term(MonomialOrder::GrevLex)
                    .expect("nonzero basis member")
                    .0
                    .clone()
            })
            .collect();
        let n = self.vars.len();
        let mut chosen = vec![false; n];
        let best = independent_set(&leads, &mut chosen, 0, n);
        Ok(best as i64)
    }

    /// Saturates the ideal at the coordinates in `unit_vars`: the result is
    /// `I : (prod of vars)^inf`, i.e. the part of the zero set where those
    /// coordinates are invertible. Same ring as the input.
    pub fn saturate_units(&self, unit_vars: &[usize]) -> Result<IdealBasis, CoreError> {
        self.saturate_units_with(unit_vars, &mut Budget::default())
    }

    pub fn saturate_units_with(
        &self,
        unit_vars: &[usize],
        budget: &mut Budget,
    ) -> Result<IdealBasis, CoreError> {
        if unit_vars.is_empty() {
            return Ok(self.clone());
        }
        let n = self.vars.len();
        let inv_names: Vec<String> = unit_vars.iter().map(|i| format!("_inv{i}")).collect();
        let mut ext = self.extend_ring(&inv_names);
        let mut gens = ext.gens.clone();
        for (k, &v) in unit_vars.iter().enumerate() {
            if v >= n {
                return Err(CoreError::VarMismatch(format!(
                    "unit variable {v} out of range"
                )));
            }
            // v * _invv - 1
            let prod = Polynomial::var(v).mul(&Polynomial::var(n + k));
            gens.push(prod.sub(&Polynomial::one()));
        }
        ext = IdealBasis::new(ext.vars, gens, self.order);
        let keep: Vec<usize> = (0..n).collect();
        let small = ext.eliminate_with(&keep, budget)?;
        Ok(IdealBasis::new(
            self.vars.clone(),
            small.gens().to_vec(),
            self.order,
        ))
    }
}

/// Depth-first search for a largest variable set containing no support of a
/// leading monomial. `leads` must be the leading monomials of a Groebner
/// basis; independence of `S` means no lead is supported entirely on `S`.
fn independent_set(leads: &[Monomial], chosen: &mut Vec<bool>, from: usize, n: usize) -> usize {
    let mut best = chosen.iter().filter(|&&b| b).count();
    for v in from..n {
        chosen[v] = true;
        let ok = leads.iter().all(|m| !m.supported_on(chosen));
        if ok {
            best = best.max(independent_set(leads, chosen, v + 1, n));
        }
        chosen[v] = false;
    }
    best
}

/// Polynomial with terms sorted descending under a fixed order; the working
/// representation inside the Buchberger loop.
#[derive(Clone, Debug)]
struct OPoly {
    terms: Vec<(Monomial, GaussRat)>,
}

impl OPoly {
    fn from_poly(p: &Polynomial, order: MonomialOrder) -> OPoly {
        let mut terms: Vec<(Monomial, GaussRat)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        OPoly { terms }
    }

    fn into_poly(self) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in self.terms {
            p.add_term(&c, &m);
        }
        p
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(Monomial, GaussRat) {
        &self.terms[0]
    }

    fn make_monic(&mut self) {
        if self.is_zero() {
            return;
        }
        let inv = self.terms[0].1.inv().expect("nonzero leading coefficient");
        if inv.is_one() {
            return;
        }
        for (_, c) in self.terms.iter_mut() {
            *c *= &inv;
        }
    }

    /// `self - coef * shift * g`, merging the two sorted term lists.
    fn sub_scaled(
        &self,
        from: usize,
        coef: &GaussRat,
        shift: &Monomial,
        g: &OPoly,
        order: MonomialOrder,
    ) -> OPoly {
        let a = &self.terms[from..];
        let mut out = Vec::with_capacity(a.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < a.len() && j < g.terms.len() {
            let gm = g.terms[j].0.mul(shift);
            match order.cmp(&a[i].0, &gm) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((gm, -(coef * &g.terms[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 - &(coef * &g.terms[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        while i < a.len() {
            out.push(a[i].clone());
            i += 1;
        }
        while j < g.terms.len() {
            out.push((g.terms[j].0.mul(shift), -(coef * &g.terms[j].1)));
            j += 1;
        }
        OPoly { terms: out }
    }
}

/// Fully reduces `h` modulo `basis` (leading and lower terms), scanning the
/// basis in index order. Each cancellation costs one budget step.
fn reduce_full(
    mut h: OPoly,
    basis: &[OPoly],
    order: MonomialOrder,
    budget: &mut Budget,
) -> Result<OPoly, CoreError> {
    let mut done: Vec<(Monomial, GaussRat)> = Vec::new();
    let mut from = 0usize;
    'scan: while from < h.terms.len() {
        let (m, c) = &h.terms[from];
        for g in basis {
            if g.is_zero() {
                continue;
            }
            let (gm, _gc) = g.lead();
            if let Some(shift) = gm.div_into(m) {
                budget.step()?;
                // basis members are monic, so the cofactor is just c
                let coef = c.clone();
                let next = h.sub_scaled(from, &coef, &shift, g, order);
                h = next;
                from = 0;
                continue 'scan;
            }
        }
        done.push(h.terms[from].clone());
        from += 1;
    }
    Ok(OPoly { terms: done })
}

fn s_poly(f: &OPoly, g: &OPoly, order: MonomialOrder) -> OPoly {
    let (fm, _) = f.lead();
    let (gm, _) = g.lead();
    let l = fm.lcm(gm);
    let sf = fm.div_into(&l).expect("lcm divisible by lead");
    let sg = gm.div_into(&l).expect("lcm divisible by lead");
    // both inputs monic
    let lifted = OPoly {
        terms: f
            .terms
            .iter()
            .map(|(m, c)| (m.mul(&sf), c.clone()))
            .collect(),
    };
    lifted.sub_scaled(0, &GaussRat::one(), &sg, g, order)
}

#[derive(Clone)]
struct Pair {
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// Computes the reduced Groebner basis of the ideal generated by `gens`
/// under `order`, using the Gebauer-Moeller pair update and the normal
/// (smallest lcm) selection strategy.
pub fn buchberger(
    gens: &[Polynomial],
    order: MonomialOrder,
    budget: &mut Budget,
) -> Result<Vec<Polynomial>, CoreError> {
    let mut basis: Vec<OPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut queue: Vec<OPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| OPoly::from_poly(g, order))
        .collect();
    queue.reverse();

    loop {
        // Insert pending polynomials (initial generators first).
        while let Some(mut h) = queue.pop() {
            h = reduce_full(h, &basis, order, budget)?;
            if h.is_zero() {
                continue;
            }
            h.make_monic();
            update_pairs(&mut basis, &mut pairs, h);
        }
        let Some(best) = select_pair(&pairs, order) else {
            break;
        };
        let pair = pairs.swap_remove(best);
        budget.step()?;
        let s = s_poly(&basis[pair.i], &basis[pair.j], order);
        let r = reduce_full(s, &basis, order, budget)?;
        if !r.is_zero() {
            let mut r = r;
            r.make_monic();
            update_pairs(&mut basis, &mut pairs, r);
        }
    }

    Ok(reduce_basis(basis, order, budget)?)
}

fn select_pair(pairs: &[Pair], order: MonomialOrder) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, p) in pairs.iter().enumerate() {
        match best {
            None => best = Some(k),
            Some(b) => {
                let pb = &pairs[b];
                let ord = order
                    .cmp(&p.lcm, &pb.lcm)
                    .then_with(|| (p.i, p.j).cmp(&(pb.i, pb.j)));
                if ord == std::cmp::Ordering::Less {
                    best = Some(k);
                }
            }
        }
    }
    best
}

/// Gebauer-Moeller update: appends `h` to the basis, pruning the pair set
/// with the chain and coprimality criteria.
fn update_pairs(basis: &mut Vec<OPoly>, pairs: &mut Vec<Pair>, h: OPoly) {
    let t = basis.len();
    let ht = h.lead().0.clone();

    // Candidate pairs (h, g) for current members.
    let cand: Vec<Pair> = basis
        .iter()
        .enumerate()
        .map(|(i, g)| Pair {
            lcm: ht.lcm(&g.lead().0),
            i,
            j: t,
        })
        .collect();

    // First filter: drop (h, g1) when another candidate's lcm properly
    // divides it, or when an equal-lcm candidate is kept earlier.
    let mut keep = vec![true; cand.len()];
    for a in 0..cand.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..cand.len() {
            if a == b || !keep[b] {
                continue;
            }
            if cand[b].lcm.divides(&cand[a].lcm) && cand[a].lcm != cand[b].lcm {
                keep[a] = false;
                break;
            }
            if cand[a].lcm == cand[b].lcm && b < a {
                keep[a] = false;
                break;
            }
        }
    }

    // Coprimality criterion: S-polynomials of coprime leads reduce to zero.
    let fresh: Vec<Pair> = cand
        .into_iter()
        .zip(keep)
        .filter(|(p, k)| *k && !ht.coprime(&basis[p.i].lead().0))
        .map(|(p, _)| p)
        .collect();

    // Chain criterion on the old pair set.
    pairs.retain(|p| {
        let li = basis[p.i].lead().0.lcm(&ht);
        let lj = basis[p.j].lead().0.lcm(&ht);
        !(ht.divides(&p.lcm) && li != p.lcm && lj != p.lcm)
    });

    pairs.extend(fresh);
    basis.push(h);
}

/// Minimalizes and tail-reduces a Groebner basis, producing the unique
/// reduced basis sorted ascending by leading monomial.
fn reduce_basis(
    mut basis: Vec<OPoly>,
    order: MonomialOrder,
    budget: &mut Budget,
) -> Result<Vec<Polynomial>, CoreError> {
    basis.retain(|g| !g.is_zero());
    // Drop members whose lead is divisible by another member's lead.
    let mut minimal: Vec<OPoly> = Vec::new();
    basis.sort_by(|a, b| order.cmp(&a.lead().0, &b.lead().0));
    for g in basis.into_iter() {
        if minimal
            .iter()
            .any(|m| m.lead().0.divides(&g.lead().0))
        {
            continue;
        }
        minimal.push(g);
    }
    // Tail-reduce each member against the others; leads are untouched
    // because they are pairwise indivisible.
    let snapshot = minimal.clone();
    let mut out = Vec::with_capacity(minimal.len());
    for (i, g) in snapshot.iter().enumerate() {
        let others: Vec<OPoly> = snapshot
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let r = reduce_full(g.clone(), &others, order, budget)?;
        debug_assert!(!r.is_zero());
        out.push(r.into_poly());
    }
    Ok(out)
}
