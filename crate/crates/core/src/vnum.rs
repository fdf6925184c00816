//! Associated primes and Vasconcelos invariants.
//!
//! The membership test is the localization criterion: p ∈ Ass(M) iff the
//! colon K = (0 :_M p) is nonzero and Ann(K) ⊆ p. Candidate primes are the
//! variable-subset primes of R; when all defining data are monomial this
//! search is exhaustive, otherwise results carry a completeness warning.
//!
//! Local v-numbers use the annihilator/torsion formula
//! v_p(M) = indeg( (0:_M p) / ((0:_M p) ∩ Γ_a(M)) ), where a is the product
//! of the associated primes strictly containing p (the unit ideal if none).

use crate::error::{AlgebraError, Result};
use crate::gmod::{ExtInt, SubquotientModule};
use crate::gring::{GradedRing, HomogeneousIdeal};

/// A prime ideal candidate: either the image of a variable subset (verified
/// prime by inspecting the reduced basis of its preimage) or user-supplied
/// (trusted and marked as such).
#[derive(Debug, Clone)]
pub struct PrimeCandidate {
    ideal: HomogeneousIdeal,
    /// Variable indices when the candidate arose from a variable subset.
    vars: Option<Vec<usize>>,
    user_supplied: bool,
}

impl PartialEq for PrimeCandidate {
    fn eq(&self, other: &Self) -> bool {
        self.ideal == other.ideal
    }
}

impl Eq for PrimeCandidate {}

impl PrimeCandidate {
    pub fn user_supplied(ideal: HomogeneousIdeal) -> PrimeCandidate {
        PrimeCandidate { ideal, vars: None, user_supplied: true }
    }

    pub fn ideal(&self) -> &HomogeneousIdeal {
        &self.ideal
    }

    pub fn is_user_supplied(&self) -> bool {
        self.user_supplied
    }

    pub fn display(&self) -> String {
        match &self.vars {
            Some(vs) => {
                let names = self.ideal.ring().base().vars();
                let parts: Vec<&str> = vs.iter().map(|i| names[*i].as_str()).collect();
                format!("({})", parts.join(","))
            }
            None => {
                let base = self.ideal.ring().base();
                let parts: Vec<String> =
                    self.ideal.min_gens().iter().map(|g| base.display(g)).collect();
                format!("({})", parts.join(","))
            }
        }
    }
}

/// All variable subsets whose image in R is prime: the reduced basis of
/// J + (x_i : i in T) must consist of variables alone.
pub fn variable_subset_primes(ring: &GradedRing) -> Result<Vec<PrimeCandidate>> {
    let d = ring.base().nvars();
    let mut out: Vec<PrimeCandidate> = Vec::new();
    let mut subsets: Vec<Vec<usize>> = (0u32..(1 << d))
        .map(|mask| (0..d).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by_key(|s: &Vec<usize>| (s.len(), s.clone()));
    for vars in subsets {
        let gens = vars.iter().map(|i| ring.base().var(*i)).collect();
        let ideal = ring.ideal(gens)?;
        let all_vars = ideal.gb().elements().iter().all(|v| {
            let p = &v.comps()[0];
            p.terms().len() == 1 && p.terms()[0].0.exps().iter().sum::<u32>() == 1
        });
        if !all_vars {
            continue;
        }
        if out.iter().any(|c| c.ideal == ideal) {
            continue;
        }
        // record the candidate by the variables actually present in its basis
        let basis_vars: Vec<usize> = ideal
            .gb()
            .elements()
            .iter()
            .map(|v| {
                v.comps()[0].terms()[0]
                    .0
                    .exps()
                    .iter()
                    .position(|e| *e == 1)
                    .expect("single variable")
            })
            .collect();
        let mut basis_vars = basis_vars;
        basis_vars.sort_unstable();
        out.push(PrimeCandidate { ideal, vars: Some(basis_vars), user_supplied: false });
    }
    Ok(out)
}

/// Localization criterion for p ∈ Ass(M).
pub fn is_associated(p: &PrimeCandidate, m: &SubquotientModule) -> Result<bool> {
    let k = m.colon_ann(p.ideal())?;
    if k.is_zero() {
        return Ok(false);
    }
    let ann = k.annihilator()?;
    Ok(ann.min_gens().iter().all(|g| p.ideal().contains_elem(g)))
}

/// True when every piece of defining data is a single monomial, so the
/// variable-subset search is exhaustive (multigraded structure).
pub fn is_monomial_data(m: &SubquotientModule) -> bool {
    let monomial_poly = |p: &crate::poly::Polynomial| p.terms().len() <= 1;
    let monomial_vec = |v: &crate::gb::ModuleVector| {
        v.comps().iter().filter(|p| !p.is_zero()).count() <= 1
            && v.comps().iter().all(|p| monomial_poly(p))
    };
    m.ring().j_gens().iter().all(|p| monomial_poly(p))
        && m.u_gens().iter().all(|v| monomial_vec(v))
        && m.v_gens().iter().all(|v| monomial_vec(v))
}

/// Search for the associated primes of M among variable-subset primes plus
/// user-supplied extras. Returns the verified list and a completeness flag.
pub fn ass_search(
    m: &SubquotientModule,
    extra: &[PrimeCandidate],
) -> Result<(Vec<PrimeCandidate>, bool)> {
    let complete = is_monomial_data(m) && extra.iter().all(|c| !c.user_supplied);
    if m.is_zero() {
        return Ok((Vec::new(), true));
    }
    let ann = m.annihilator()?;
    let mut found: Vec<PrimeCandidate> = Vec::new();
    for cand in variable_subset_primes(m.ring())? {
        // Ass(M) ⊆ Supp(M) = V(Ann M)
        if !ann.min_gens().iter().all(|g| cand.ideal().contains_elem(g)) {
            continue;
        }
        if is_associated(&cand, m)? {
            found.push(cand);
        }
    }
    for cand in extra {
        if found.iter().any(|c| c == cand) {
            continue;
        }
        if is_associated(cand, m)? {
            found.push(cand.clone());
        }
    }
    Ok((found, complete))
}

/// v_p(M) via the annihilator/torsion formula. `ass` must contain p together
/// with every associated prime of M (it determines the torsion ideal).
pub fn local_v(
    m: &SubquotientModule,
    p: &PrimeCandidate,
    ass: &[PrimeCandidate],
) -> Result<i64> {
    if !ass.iter().any(|q| q == p) {
        return Err(AlgebraError::NotAssociated);
    }
    let strictly_above: Vec<&PrimeCandidate> = ass
        .iter()
        .filter(|q| *q != p && q.ideal().contains(p.ideal()) && !p.ideal().contains(q.ideal()))
        .collect();
    let a = if strictly_above.is_empty() {
        m.ring().unit_ideal()
    } else {
        let mut acc = strictly_above[0].ideal().clone();
        for q in &strictly_above[1..] {
            acc = acc.multiply(q.ideal())?;
        }
        acc
    };
    let k = m.colon_ann(p.ideal())?;
    let torsion = m.gamma(&a)?;
    let cap = k.intersect(&torsion)?;
    let quotient = k.quotient_by(&cap)?;
    match quotient.indeg() {
        ExtInt::Int(n) => Ok(n),
        ExtInt::Infinity => Err(AlgebraError::NotAssociated),
    }
}

/// Full v-number record of a module.
#[derive(Debug, Clone)]
pub struct VRecord {
    pub ass: Vec<PrimeCandidate>,
    pub v_locals: Vec<(PrimeCandidate, i64)>,
    pub v: ExtInt,
    pub indeg: ExtInt,
    /// Whether the associated-prime search was provably exhaustive.
    pub ass_complete: bool,
}

impl VRecord {
    pub fn local_of(&self, display: &str) -> Option<i64> {
        self.v_locals
            .iter()
            .find(|(p, _)| p.display() == display)
            .map(|(_, v)| *v)
    }

    pub fn ass_displays(&self) -> Vec<String> {
        self.ass.iter().map(|p| p.display()).collect()
    }
}

/// Associated primes, every local v-number, their minimum, and the initial
/// degree. The zero module yields v = indeg = infinity with no primes.
pub fn v_number(m: &SubquotientModule, extra: &[PrimeCandidate]) -> Result<VRecord> {
    let (ass, ass_complete) = ass_search(m, extra)?;
    let mut v_locals = Vec::with_capacity(ass.len());
    let mut v = ExtInt::Infinity;
    for p in &ass {
        let vp = local_v(m, p, &ass)?;
        v = v.min(ExtInt::Int(vp));
        v_locals.push((p.clone(), vp));
    }
    Ok(VRecord { ass, v_locals, v, indeg: m.indeg(), ass_complete })
}
