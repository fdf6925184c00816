//! Buchberger engine for graded submodules of twisted free modules over the
//! base polynomial ring S.
//!
//! Free modules carry per-slot twists in the `R(t)` sense: `FreeModule::twists()[i] = t`
//! means basis element `e_i` has degree `-t`, so `R(-3)` has twist `-3` and its
//! generator sits in degree 3. All engine inputs must be homogeneous; this keeps
//! every computation degree-by-degree testable.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{AlgebraError, Result};
use crate::poly::{Monomial, ModuleOrderKind, Polynomial, PolyRing};
use crate::scalars::FieldElem;

/// Twisted graded free module over the ambient polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    ring: PolyRing,
    twists: Vec<i64>,
}

/// Element of a [`FreeModule`]: one polynomial per slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleVector {
    comps: Vec<Polynomial>,
}

impl ModuleVector {
    pub fn comps(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }
}

/// A leading-term handle: slot index plus monomial and coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadTerm {
    pub slot: usize,
    pub mono: Monomial,
    pub coeff: FieldElem,
}

impl FreeModule {
    pub fn new(ring: PolyRing, twists: Vec<i64>) -> FreeModule {
        FreeModule { ring, twists }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    /// Degree of the basis element `e_i` (the negative of the twist).
    pub fn basis_degree(&self, i: usize) -> i64 {
        -self.twists[i]
    }

    /// Same module with all twists shifted by `i` (the module `F(i)`).
    pub fn twisted(&self, i: i64) -> FreeModule {
        FreeModule { ring: self.ring.clone(), twists: self.twists.iter().map(|t| t + i).collect() }
    }

    pub fn zero_vector(&self) -> ModuleVector {
        ModuleVector { comps: vec![Polynomial::zero(); self.rank()] }
    }

    pub fn basis_vector(&self, i: usize) -> ModuleVector {
        let mut v = self.zero_vector();
        v.comps[i] = self.ring.one();
        v
    }

    pub fn vector(&self, comps: Vec<Polynomial>) -> Result<ModuleVector> {
        if comps.len() != self.rank() {
            return Err(AlgebraError::VariableCountMismatch { expected: self.rank(), got: comps.len() });
        }
        Ok(ModuleVector { comps })
    }

    /// Vector with `f` in slot `i`, zero elsewhere.
    pub fn single(&self, i: usize, f: Polynomial) -> ModuleVector {
        let mut v = self.zero_vector();
        v.comps[i] = f;
        v
    }

    pub fn add(&self, a: &ModuleVector, b: &ModuleVector) -> ModuleVector {
        ModuleVector {
            comps: a.comps.iter().zip(&b.comps).map(|(x, y)| self.ring.add(x, y)).collect(),
        }
    }

    pub fn sub(&self, a: &ModuleVector, b: &ModuleVector) -> ModuleVector {
        ModuleVector {
            comps: a.comps.iter().zip(&b.comps).map(|(x, y)| self.ring.sub(x, y)).collect(),
        }
    }

    pub fn neg(&self, a: &ModuleVector) -> ModuleVector {
        ModuleVector { comps: a.comps.iter().map(|x| self.ring.neg(x)).collect() }
    }

    pub fn mul_term(&self, a: &ModuleVector, m: &Monomial, c: &FieldElem) -> ModuleVector {
        ModuleVector { comps: a.comps.iter().map(|x| self.ring.mul_term(x, m, c)).collect() }
    }

    pub fn scale(&self, a: &ModuleVector, c: &FieldElem) -> ModuleVector {
        ModuleVector { comps: a.comps.iter().map(|x| self.ring.scale(x, c)).collect() }
    }

    pub fn mul_poly(&self, a: &ModuleVector, f: &Polynomial) -> ModuleVector {
        ModuleVector { comps: a.comps.iter().map(|x| self.ring.mul(x, f)).collect() }
    }

    /// Degree of a module term `m * e_slot`.
    pub fn term_degree(&self, slot: usize, m: &Monomial) -> i64 {
        self.ring.mono_degree(m) + self.basis_degree(slot)
    }

    /// Homogeneous degree of a nonzero vector; errors on inhomogeneity.
    pub fn degree(&self, v: &ModuleVector) -> Result<Option<i64>> {
        let mut deg: Option<i64> = None;
        for (i, comp) in v.comps.iter().enumerate() {
            for (m, _) in comp.terms() {
                let d = self.term_degree(i, m);
                match deg {
                    None => deg = Some(d),
                    Some(d0) if d0 != d => {
                        return Err(AlgebraError::Inhomogeneous(format!(
                            "vector mixes degrees {d0} and {d}"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(deg)
    }

    pub fn is_homogeneous(&self, v: &ModuleVector) -> bool {
        self.degree(v).is_ok()
    }

    /// Compare module terms under the ring's module order extension.
    pub fn cmp_terms(&self, a_slot: usize, a: &Monomial, b_slot: usize, b: &Monomial) -> Ordering {
        match self.ring.order().module {
            ModuleOrderKind::TermOverPosition => {
                let da = self.term_degree(a_slot, a);
                let db = self.term_degree(b_slot, b);
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                match self.ring.mono_cmp(a, b) {
                    Ordering::Equal => b_slot.cmp(&a_slot), // lower slot is greater
                    ord => ord,
                }
            }
            ModuleOrderKind::PositionOverTerm => match b_slot.cmp(&a_slot) {
                Ordering::Equal => self.ring.mono_cmp(a, b),
                ord => ord,
            },
        }
    }

    /// Leading term of a vector: the greatest module term.
    pub fn lead(&self, v: &ModuleVector) -> Option<LeadTerm> {
        let mut best: Option<LeadTerm> = None;
        for (slot, comp) in v.comps.iter().enumerate() {
            if let Some((m, c)) = comp.leading() {
                let better = match &best {
                    None => true,
                    Some(bt) => self.cmp_terms(slot, m, bt.slot, &bt.mono) == Ordering::Greater,
                };
                if better {
                    best = Some(LeadTerm { slot, mono: m.clone(), coeff: c.clone() });
                }
            }
        }
        best
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self, v: &ModuleVector) -> ModuleVector {
        match self.lead(v) {
            None => v.clone(),
            Some(lt) => {
                let inv = self.ring.field().inv(&lt.coeff).expect("nonzero leading coefficient");
                self.scale(v, &inv)
            }
        }
    }

    pub fn display(&self, v: &ModuleVector) -> String {
        let parts: Vec<String> = v.comps.iter().map(|c| self.ring.display(c)).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Reduced Groebner basis of a graded submodule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    fm: FreeModule,
    elements: Vec<ModuleVector>,
    leads: Vec<LeadTerm>,
    /// Degree cap used during computation; `None` means a full basis.
    cap: Option<i64>,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[ModuleVector] {
        &self.elements
    }

    pub fn free_module(&self) -> &FreeModule {
        &self.fm
    }

    pub fn leads(&self) -> &[LeadTerm] {
        &self.leads
    }

    pub fn cap(&self) -> Option<i64> {
        self.cap
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Remainder of full multivariate division of `v` by `basis`.
///
/// Every term of the output is reducible by no basis leading term; the
/// difference `v - output` lies in the span of `basis`.
pub fn normal_form(fm: &FreeModule, v: &ModuleVector, basis: &[ModuleVector]) -> ModuleVector {
    reduce_full(fm, v, basis, None).0
}

/// Division with quotient tracking: returns `(r, q)` with
/// `v = sum q[t] * basis[t] + r`.
pub fn reduce_tracked(fm: &FreeModule, v: &ModuleVector, basis: &[ModuleVector]) -> (ModuleVector, Vec<Polynomial>) {
    let (r, q) = reduce_full(fm, v, basis, Some(basis.len()));
    (r, q.expect("tracking requested"))
}

fn reduce_full(
    fm: &FreeModule,
    v: &ModuleVector,
    basis: &[ModuleVector],
    track: Option<usize>,
) -> (ModuleVector, Option<Vec<Polynomial>>) {
    let ring = fm.ring().clone();
    let field = *ring.field();
    let leads: Vec<Option<LeadTerm>> = basis.iter().map(|g| fm.lead(g)).collect();
    let mut quotients = track.map(|n| vec![Polynomial::zero(); n]);
    let mut work = v.clone();
    let mut remainder = fm.zero_vector();
    'outer: while let Some(lt) = fm.lead(&work) {
        for (t, g) in basis.iter().enumerate() {
            if let Some(glt) = &leads[t] {
                if glt.slot == lt.slot && glt.mono.divides(&lt.mono) {
                    let m = lt.mono.div(&glt.mono).expect("divisibility checked");
                    let c = field
                        .div(&lt.coeff, &glt.coeff)
                        .expect("leading coefficients are nonzero");
                    work = fm.sub(&work, &fm.mul_term(g, &m, &c));
                    if let Some(q) = quotients.as_mut() {
                        let term = ring.from_terms(vec![(m, c)]);
                        q[t] = ring.add(&q[t], &term);
                    }
                    continue 'outer;
                }
            }
        }
        // move the irreducible leading term into the remainder
        let term = fm.single(lt.slot, ring.from_terms(vec![(lt.mono.clone(), lt.coeff.clone())]));
        remainder = fm.add(&remainder, &term);
        work = fm.sub(&work, &term);
    }
    (remainder, quotients)
}

fn check_homogeneous(fm: &FreeModule, gens: &[ModuleVector]) -> Result<()> {
    for g in gens {
        fm.degree(g)?;
    }
    Ok(())
}

/// Key ordering pairs by S-vector degree, then deterministically.
type PairKey = (i64, Vec<u32>, usize, usize);

fn pair_key(fm: &FreeModule, leads: &[LeadTerm], i: usize, j: usize) -> PairKey {
    let lcm = leads[i].mono.lcm(&leads[j].mono);
    let deg = fm.term_degree(leads[i].slot, &lcm);
    (deg, lcm.exps().to_vec(), i, j)
}

struct Engine {
    fm: FreeModule,
    basis: Vec<ModuleVector>,
    leads: Vec<LeadTerm>,
    pending: BTreeSet<PairKey>,
    done: BTreeSet<(usize, usize)>,
    cap: Option<i64>,
    // representation of each basis element in terms of the input generators
    reps: Option<Vec<ModuleVector>>,
    rep_fm: Option<FreeModule>,
}

impl Engine {
    fn new(fm: FreeModule, cap: Option<i64>, track: Option<FreeModule>) -> Engine {
        Engine {
            fm,
            basis: Vec::new(),
            leads: Vec::new(),
            pending: BTreeSet::new(),
            done: BTreeSet::new(),
            cap,
            reps: track.as_ref().map(|_| Vec::new()),
            rep_fm: track,
        }
    }

    fn push(&mut self, g: ModuleVector, rep: Option<ModuleVector>) {
        let lt = self.fm.lead(&g).expect("nonzero element");
        let inv = self
            .fm
            .ring()
            .field()
            .inv(&lt.coeff)
            .expect("nonzero leading coefficient");
        let monic = self.fm.scale(&g, &inv);
        if let (Some(reps), Some(rep_fm), Some(rep)) = (self.reps.as_mut(), self.rep_fm.as_ref(), rep) {
            reps.push(rep_fm.scale(&rep, &inv));
        }
        let t = self.basis.len();
        self.basis.push(monic);
        self.leads.push(LeadTerm { slot: lt.slot, mono: lt.mono, coeff: self.fm.ring().field().one() });
        for i in 0..t {
            if self.leads[i].slot == self.leads[t].slot {
                let key = pair_key(&self.fm, &self.leads, i, t);
                if self.cap.map_or(true, |cap| key.0 <= cap) {
                    self.pending.insert(key);
                }
            }
        }
    }

    /// Chain criterion: skip S(i,j) when some k divides the lcm and both
    /// S(i,k), S(k,j) are already accounted for.
    fn chain_skip(&self, i: usize, j: usize) -> bool {
        let lcm = self.leads[i].mono.lcm(&self.leads[j].mono);
        for k in 0..self.basis.len() {
            if k == i || k == j || self.leads[k].slot != self.leads[i].slot {
                continue;
            }
            if self.leads[k].mono.divides(&lcm)
                && self.done.contains(&(i.min(k), i.max(k)))
                && self.done.contains(&(j.min(k), j.max(k)))
            {
                return true;
            }
        }
        false
    }

    fn spair(&self, i: usize, j: usize) -> (ModuleVector, Monomial, Monomial) {
        let lcm = self.leads[i].mono.lcm(&self.leads[j].mono);
        let mi = lcm.div(&self.leads[i].mono).expect("lcm divisible");
        let mj = lcm.div(&self.leads[j].mono).expect("lcm divisible");
        let one = self.fm.ring().field().one();
        let s = self.fm.sub(
            &self.fm.mul_term(&self.basis[i], &mi, &one),
            &self.fm.mul_term(&self.basis[j], &mj, &one),
        );
        (s, mi, mj)
    }

    fn run(&mut self) {
        while let Some(key) = self.pending.iter().next().cloned() {
            self.pending.remove(&key);
            let (_, _, i, j) = key;
            if self.chain_skip(i, j) {
                self.done.insert((i, j));
                continue;
            }
            self.done.insert((i, j));
            let (s, mi, mj) = self.spair(i, j);
            if self.reps.is_some() {
                let (r, q) = reduce_tracked(&self.fm, &s, &self.basis);
                if !r.is_zero() {
                    let rep = self.pair_rep(i, j, &mi, &mj, &q);
                    self.push(r, Some(rep));
                }
            } else {
                let r = normal_form(&self.fm, &s, &self.basis);
                if !r.is_zero() {
                    self.push(r, None);
                }
            }
        }
    }

    /// Representation of `spair(i,j) - sum q_t basis_t` in terms of the inputs.
    fn pair_rep(&self, i: usize, j: usize, mi: &Monomial, mj: &Monomial, q: &[Polynomial]) -> ModuleVector {
        let rep_fm = self.rep_fm.as_ref().expect("tracking enabled");
        let reps = self.reps.as_ref().expect("tracking enabled");
        let one = rep_fm.ring().field().one();
        let mut acc = rep_fm.sub(
            &rep_fm.mul_term(&reps[i], mi, &one),
            &rep_fm.mul_term(&reps[j], mj, &one),
        );
        for (t, qt) in q.iter().enumerate() {
            if !qt.is_zero() {
                acc = rep_fm.sub(&acc, &rep_fm.mul_poly(&reps[t], qt));
            }
        }
        acc
    }
}

fn interreduce(fm: &FreeModule, mut basis: Vec<ModuleVector>) -> Vec<ModuleVector> {
    // minimalize: sort by ascending leading term, drop elements whose lead is
    // divisible by the lead of something kept
    basis.sort_by(|a, b| {
        let la = fm.lead(a).expect("nonzero");
        let lb = fm.lead(b).expect("nonzero");
        fm.cmp_terms(la.slot, &la.mono, lb.slot, &lb.mono)
    });
    let mut kept: Vec<ModuleVector> = Vec::new();
    let mut kept_leads: Vec<LeadTerm> = Vec::new();
    for g in basis {
        let lt = fm.lead(&g).expect("nonzero");
        let redundant = kept_leads
            .iter()
            .any(|k| k.slot == lt.slot && k.mono.divides(&lt.mono));
        if !redundant {
            kept.push(g);
            kept_leads.push(lt);
        }
    }
    // tail-reduce each against the others
    let mut out = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<ModuleVector> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let r = normal_form(fm, &kept[i], &others);
        out.push(fm.monic(&r));
    }
    out.sort_by(|a, b| {
        let la = fm.lead(a).expect("nonzero");
        let lb = fm.lead(b).expect("nonzero");
        fm.cmp_terms(la.slot, &la.mono, lb.slot, &lb.mono)
    });
    out
}

fn groebner_inner(fm: &FreeModule, gens: &[ModuleVector], cap: Option<i64>) -> Result<GroebnerBasis> {
    check_homogeneous(fm, gens)?;
    let mut engine = Engine::new(fm.clone(), cap, None);
    for g in gens {
        if !g.is_zero() {
            engine.push(g.clone(), None);
        }
    }
    engine.run();
    let elements = interreduce(fm, engine.basis);
    let leads = elements.iter().map(|g| fm.lead(g).expect("nonzero")).collect();
    Ok(GroebnerBasis { fm: fm.clone(), elements, leads, cap })
}

/// Reduced Groebner basis of the submodule generated by `gens`.
pub fn groebner(fm: &FreeModule, gens: &[ModuleVector]) -> Result<GroebnerBasis> {
    groebner_inner(fm, gens, None)
}

/// Degree-truncated basis: agrees with the full basis on all components of
/// degree at most `cap`.
pub fn groebner_up_to(fm: &FreeModule, gens: &[ModuleVector], cap: i64) -> Result<GroebnerBasis> {
    groebner_inner(fm, gens, Some(cap))
}

/// Membership of `v` in the submodule generated by the basis elements.
pub fn member(fm: &FreeModule, v: &ModuleVector, gb: &GroebnerBasis) -> bool {
    normal_form(fm, v, gb.elements()).is_zero()
}

/// Buchberger criterion check: every S-vector reduces to zero. Used by tests
/// and the acceptance suite as a direct certificate.
pub fn buchberger_holds(gb: &GroebnerBasis) -> bool {
    let fm = gb.free_module();
    let n = gb.elements().len();
    for i in 0..n {
        for j in (i + 1)..n {
            if gb.leads[i].slot != gb.leads[j].slot {
                continue;
            }
            let lcm = gb.leads[i].mono.lcm(&gb.leads[j].mono);
            if let Some(cap) = gb.cap {
                if fm.term_degree(gb.leads[i].slot, &lcm) > cap {
                    continue;
                }
            }
            let mi = lcm.div(&gb.leads[i].mono).expect("lcm divisible");
            let mj = lcm.div(&gb.leads[j].mono).expect("lcm divisible");
            let one = fm.ring().field().one();
            let s = fm.sub(
                &fm.mul_term(&gb.elements[i], &mi, &one),
                &fm.mul_term(&gb.elements[j], &mj, &one),
            );
            if !normal_form(fm, &s, gb.elements()).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Syzygies of `gens`: a homogeneous generating set of
/// `{(c_1..c_m) : sum c_t gens_t = 0}` inside a free module twisted by the
/// generator degrees (Schreyer construction plus conversion to the inputs).
pub fn syzygies(fm: &FreeModule, gens: &[ModuleVector]) -> Result<(FreeModule, Vec<ModuleVector>)> {
    check_homogeneous(fm, gens)?;
    let ring = fm.ring().clone();
    let mut twists = Vec::with_capacity(gens.len());
    for g in gens {
        // zero generators sit in degree 0 by convention; their basis vector is a syzygy
        let d = fm.degree(g)?.unwrap_or(0);
        twists.push(-d);
    }
    let rep_fm = FreeModule::new(ring.clone(), twists);
    let mut out: Vec<ModuleVector> = Vec::new();

    let mut engine = Engine::new(fm.clone(), None, Some(rep_fm.clone()));
    for (t, g) in gens.iter().enumerate() {
        if g.is_zero() {
            out.push(rep_fm.basis_vector(t));
        } else {
            engine.push(g.clone(), Some(rep_fm.basis_vector(t)));
        }
    }
    engine.run();
    let basis = engine.basis;
    let reps = engine.reps.expect("tracking enabled");
    let leads = engine.leads;

    // conversion syzygies: gens_t - (division of gens_t by the basis)
    for (t, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let (r, q) = reduce_tracked(fm, g, &basis);
        debug_assert!(r.is_zero(), "generator must reduce to zero against its own basis");
        let mut tau = rep_fm.basis_vector(t);
        for (s, qs) in q.iter().enumerate() {
            if !qs.is_zero() {
                tau = rep_fm.sub(&tau, &rep_fm.mul_poly(&reps[s], qs));
            }
        }
        if !tau.is_zero() {
            out.push(tau);
        }
    }

    // Schreyer syzygies: every same-slot S-pair of the final basis
    let one = ring.field().one();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            if leads[i].slot != leads[j].slot {
                continue;
            }
            let lcm = leads[i].mono.lcm(&leads[j].mono);
            let mi = lcm.div(&leads[i].mono).expect("lcm divisible");
            let mj = lcm.div(&leads[j].mono).expect("lcm divisible");
            let s = fm.sub(
                &fm.mul_term(&basis[i], &mi, &one),
                &fm.mul_term(&basis[j], &mj, &one),
            );
            let (r, q) = reduce_tracked(fm, &s, &basis);
            debug_assert!(r.is_zero(), "S-pair of a Groebner basis must reduce to zero");
            let mut sigma = rep_fm.sub(
                &rep_fm.mul_term(&reps[i], &mi, &one),
                &rep_fm.mul_term(&reps[j], &mj, &one),
            );
            for (t, qt) in q.iter().enumerate() {
                if !qt.is_zero() {
                    sigma = rep_fm.sub(&sigma, &rep_fm.mul_poly(&reps[t], qt));
                }
            }
            if !sigma.is_zero() {
                out.push(sigma);
            }
        }
    }

    if cfg!(debug_assertions) {
        for s in &out {
            let mut acc = fm.zero_vector();
            for (t, g) in gens.iter().enumerate() {
                acc = fm.add(&acc, &fm.mul_poly(g, &s.comps()[t]));
            }
            debug_assert!(acc.is_zero(), "syzygy check failed");
        }
    }
    out.dedup();
    Ok((rep_fm, out))
}
