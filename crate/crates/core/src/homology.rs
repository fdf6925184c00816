//! Hom and tensor complexes, Ext and Tor as graded subquotients, homology of
//! three-term complexes with submodule data, and extraction of the
//! (U, V, W, Z, n0) package.
//!
//! Grading conventions are fixed once and for all: dualizing against R(-a)
//! twists by +a, tensoring twists by -a. The v-number expectations for the
//! worked families depend on these signs.

use crate::error::{AlgebraError, Result};
use crate::gb::{FreeModule, ModuleVector};
use crate::gmod::{intersect_spans, preimage_span, GradedMap, SubquotientModule};
use crate::gring::{GradedRing, HomogeneousIdeal};
use crate::resolve::{free_resolution, FreeResolution};

// --- block construction ------------------------------------------------------

fn block_index(g_rank: usize, copy: usize, slot: usize) -> usize {
    copy * g_rank + slot
}

/// Ambient of Hom(F, M): one twisted copy of M's ambient per basis slot of F.
fn hom_block_fm(f: &FreeModule, m_amb: &FreeModule) -> FreeModule {
    let mut twists = Vec::with_capacity(f.rank() * m_amb.rank());
    for i in 0..f.rank() {
        let shift = f.basis_degree(i); // Hom(R(-a), M) = M(+a)
        for t in m_amb.twists() {
            twists.push(t + shift);
        }
    }
    FreeModule::new(m_amb.ring().clone(), twists)
}

/// Ambient of F ⊗ M: twisted the opposite way.
fn tensor_block_fm(f: &FreeModule, m_amb: &FreeModule) -> FreeModule {
    let mut twists = Vec::with_capacity(f.rank() * m_amb.rank());
    for i in 0..f.rank() {
        let shift = f.basis_degree(i); // R(-a) ⊗ M = M(-a)
        for t in m_amb.twists() {
            twists.push(t - shift);
        }
    }
    FreeModule::new(m_amb.ring().clone(), twists)
}

fn embed_in_copy(big: &FreeModule, g_rank: usize, copy: usize, v: &ModuleVector) -> ModuleVector {
    let mut out = big.zero_vector();
    for (slot, p) in v.comps().iter().enumerate() {
        if !p.is_zero() {
            out = big.add(&out, &big.single(block_index(g_rank, copy, slot), p.clone()));
        }
    }
    out
}

fn block_gens(big: &FreeModule, g_rank: usize, copies: usize, gens: &[ModuleVector]) -> Vec<ModuleVector> {
    let mut out = Vec::with_capacity(copies * gens.len());
    for copy in 0..copies {
        for g in gens {
            out.push(embed_in_copy(big, g_rank, copy, g));
        }
    }
    out
}

/// The module M^(copies) with per-copy twists, as a subquotient of `big`.
fn block_module(ring: &GradedRing, big: FreeModule, copies: usize, m: &SubquotientModule) -> Result<SubquotientModule> {
    let g_rank = m.ambient().rank();
    let u = block_gens(&big, g_rank, copies, m.u_gens());
    let v = block_gens(&big, g_rank, copies, m.v_gens());
    SubquotientModule::new(ring.clone(), big, u, v)
}

/// Hom(d, M): the map Hom(F_k, M) -> Hom(F_{k+1}, M) induced by d: F_{k+1} -> F_k.
fn hom_induced_map(d: &GradedMap, m_amb: &FreeModule) -> Result<GradedMap> {
    let g_rank = m_amb.rank();
    let src_big = hom_block_fm(d.target(), m_amb);
    let tgt_big = hom_block_fm(d.source(), m_amb);
    let mut cols = Vec::with_capacity(src_big.rank());
    for i in 0..d.target().rank() {
        for l in 0..g_rank {
            let mut col = tgt_big.zero_vector();
            for j in 0..d.source().rank() {
                let entry = d.entry(i, j);
                if !entry.is_zero() {
                    col = tgt_big.add(&col, &tgt_big.single(block_index(g_rank, j, l), entry.clone()));
                }
            }
            cols.push(col);
        }
    }
    GradedMap::new(src_big, tgt_big, cols)
}

/// d ⊗ M: the map F_{k+1} ⊗ M -> F_k ⊗ M.
fn tensor_induced_map(d: &GradedMap, m_amb: &FreeModule) -> Result<GradedMap> {
    let g_rank = m_amb.rank();
    let src_big = tensor_block_fm(d.source(), m_amb);
    let tgt_big = tensor_block_fm(d.target(), m_amb);
    let mut cols = Vec::with_capacity(src_big.rank());
    for j in 0..d.source().rank() {
        for l in 0..g_rank {
            let mut col = tgt_big.zero_vector();
            for i in 0..d.target().rank() {
                let entry = d.entry(i, j);
                if !entry.is_zero() {
                    col = tgt_big.add(&col, &tgt_big.single(block_index(g_rank, i, l), entry.clone()));
                }
            }
            cols.push(col);
        }
    }
    GradedMap::new(src_big, tgt_big, cols)
}

/// Homology ker(psi)/im(phi) of maps of subquotients sharing ambient data.
fn homology_of(
    phi: &GradedMap,
    a: &SubquotientModule,
    psi: &GradedMap,
    b: &SubquotientModule,
    c: &SubquotientModule,
) -> Result<SubquotientModule> {
    let ring = b.ring().clone();
    let pre = preimage_span(b.ambient(), psi.cols(), c.ambient(), &c.denominator_span())?;
    let numerator = if b.covers_ambient() {
        pre
    } else {
        intersect_spans(b.ambient(), &pre, &b.numerator_span())?
    };
    let mut denom: Vec<ModuleVector> = a.u_gens().iter().map(|u| phi.apply(u)).collect();
    denom.extend(b.v_gens().iter().cloned());
    SubquotientModule::new(ring, b.ambient().clone(), numerator, denom)
}

fn zero_module(ring: &GradedRing) -> SubquotientModule {
    SubquotientModule::zero(ring, FreeModule::new(ring.base().clone(), Vec::new()))
}

fn resolution_module(res: &FreeResolution, k: usize) -> Result<Option<FreeModule>> {
    if let Some(fm) = res.free_module(k) {
        Ok(Some(fm.clone()))
    } else if res.complete() {
        Ok(None)
    } else {
        Err(AlgebraError::ResolutionTooShort { need: k, have: res.length() - 1 })
    }
}

// --- Ext and Tor --------------------------------------------------------------

/// Ext^k(L, M) computed from an already-built resolution of L.
pub fn ext_with_resolution(res: &FreeResolution, m: &SubquotientModule, k: usize) -> Result<SubquotientModule> {
    let ring = m.ring().clone();
    let fk = match resolution_module(res, k)? {
        Some(fm) => fm,
        None => return Ok(zero_module(&ring)),
    };
    let b = block_module(&ring, hom_block_fm(&fk, m.ambient()), fk.rank(), m)?;

    // psi: Hom(F_k, M) -> Hom(F_{k+1}, M)
    let (psi, c) = match resolution_module(res, k + 1)? {
        Some(fk1) => {
            let d = &res.maps()[k];
            let psi = hom_induced_map(d, m.ambient())?;
            let c = block_module(&ring, hom_block_fm(&fk1, m.ambient()), fk1.rank(), m)?;
            (psi, c)
        }
        None => {
            let c_amb = FreeModule::new(ring.base().clone(), Vec::new());
            let c = SubquotientModule::zero(&ring, c_amb.clone());
            (GradedMap::zero(b.ambient().clone(), c_amb), c)
        }
    };

    // phi: Hom(F_{k-1}, M) -> Hom(F_k, M)
    let (phi, a) = if k == 0 {
        let a_amb = FreeModule::new(ring.base().clone(), Vec::new());
        let a = SubquotientModule::zero(&ring, a_amb.clone());
        (GradedMap::zero(a_amb, b.ambient().clone()), a)
    } else {
        let fkm1 = resolution_module(res, k - 1)?.expect("earlier module exists");
        let d = &res.maps()[k - 1];
        let phi = hom_induced_map(d, m.ambient())?;
        let a = block_module(&ring, hom_block_fm(&fkm1, m.ambient()), fkm1.rank(), m)?;
        (phi, a)
    };

    homology_of(&phi, &a, &psi, &b, &c)
}

/// Tor_k(L, M) from an already-built resolution of L.
pub fn tor_with_resolution(res: &FreeResolution, m: &SubquotientModule, k: usize) -> Result<SubquotientModule> {
    let ring = m.ring().clone();
    let fk = match resolution_module(res, k)? {
        Some(fm) => fm,
        None => return Ok(zero_module(&ring)),
    };
    let b = block_module(&ring, tensor_block_fm(&fk, m.ambient()), fk.rank(), m)?;

    // psi: F_k ⊗ M -> F_{k-1} ⊗ M
    let (psi, c) = if k == 0 {
        let c_amb = FreeModule::new(ring.base().clone(), Vec::new());
        let c = SubquotientModule::zero(&ring, c_amb.clone());
        (GradedMap::zero(b.ambient().clone(), c_amb), c)
    } else {
        let fkm1 = resolution_module(res, k - 1)?.expect("earlier module exists");
        let d = &res.maps()[k - 1];
        let psi = tensor_induced_map(d, m.ambient())?;
        let c = block_module(&ring, tensor_block_fm(&fkm1, m.ambient()), fkm1.rank(), m)?;
        (psi, c)
    };

    // phi: F_{k+1} ⊗ M -> F_k ⊗ M
    let (phi, a) = match resolution_module(res, k + 1)? {
        Some(fk1) => {
            let d = &res.maps()[k];
            let phi = tensor_induced_map(d, m.ambient())?;
            let a = block_module(&ring, tensor_block_fm(&fk1, m.ambient()), fk1.rank(), m)?;
            (phi, a)
        }
        None => {
            let a_amb = FreeModule::new(ring.base().clone(), Vec::new());
            let a = SubquotientModule::zero(&ring, a_amb.clone());
            (GradedMap::zero(a_amb, b.ambient().clone()), a)
        }
    };

    homology_of(&phi, &a, &psi, &b, &c)
}

/// Ext^k(L, M) as a graded subquotient; resolves L to length k+1 internally.
pub fn ext(l: &SubquotientModule, m: &SubquotientModule, k: usize) -> Result<SubquotientModule> {
    if l.ring() != m.ring() {
        return Err(AlgebraError::RingMismatch);
    }
    let res = free_resolution(l, k + 2, true)?;
    ext_with_resolution(&res, m, k)
}

/// Tor_k(L, M) as a graded subquotient.
pub fn tor(l: &SubquotientModule, m: &SubquotientModule, k: usize) -> Result<SubquotientModule> {
    if l.ring() != m.ring() {
        return Err(AlgebraError::RingMismatch);
    }
    let res = free_resolution(l, k + 2, true)?;
    tor_with_resolution(&res, m, k)
}

// --- three-term complexes ------------------------------------------------------

/// A complex A -> B -> C with chosen submodules A' ⊆ A, B' ⊆ B, C' ⊆ C
/// compatible with the maps, and an ideal I driving the family
/// A/I^n A' -> B/I^n B' -> C/I^n C'.
#[derive(Debug, Clone)]
pub struct ThreeTermComplex {
    a: SubquotientModule,
    b: SubquotientModule,
    c: SubquotientModule,
    a_sub: SubquotientModule,
    b_sub: SubquotientModule,
    c_sub: SubquotientModule,
    phi: GradedMap,
    psi: GradedMap,
    ideal: HomogeneousIdeal,
}

impl ThreeTermComplex {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        a: SubquotientModule,
        b: SubquotientModule,
        c: SubquotientModule,
        a_sub: SubquotientModule,
        b_sub: SubquotientModule,
        c_sub: SubquotientModule,
        phi: GradedMap,
        psi: GradedMap,
        ideal: HomogeneousIdeal,
    ) -> Result<ThreeTermComplex> {
        if phi.source() != a.ambient() || phi.target() != b.ambient() {
            return Err(AlgebraError::AmbientMismatch);
        }
        if psi.source() != b.ambient() || psi.target() != c.ambient() {
            return Err(AlgebraError::AmbientMismatch);
        }
        for (sub, sup, name) in [(&a_sub, &a, "A'"), (&b_sub, &b, "B'"), (&c_sub, &c, "C'")] {
            if !sup.contains(sub) {
                return Err(AlgebraError::NotSubmodule(format!("{name} is not inside its module")));
            }
        }
        let zero_b = b.submodule(vec![])?;
        let zero_c = c.submodule(vec![])?;
        for g in a.v_gens() {
            if !zero_b.contains_vector(&phi.apply(g)) {
                return Err(AlgebraError::NotSubmodule("phi does not respect denominators".into()));
            }
        }
        for g in b.v_gens() {
            if !zero_c.contains_vector(&psi.apply(g)) {
                return Err(AlgebraError::NotSubmodule("psi does not respect denominators".into()));
            }
        }
        for g in a_sub.u_gens() {
            if !b_sub.contains_vector(&phi.apply(g)) {
                return Err(AlgebraError::NotSubmodule("phi(A') must lie in B'".into()));
            }
        }
        for g in b_sub.u_gens() {
            if !c_sub.contains_vector(&psi.apply(g)) {
                return Err(AlgebraError::NotSubmodule("psi(B') must lie in C'".into()));
            }
        }
        for g in a.u_gens() {
            if !zero_c.contains_vector(&psi.apply(&phi.apply(g))) {
                return Err(AlgebraError::NotSubmodule("psi ∘ phi must vanish".into()));
            }
        }
        Ok(ThreeTermComplex { a, b, c, a_sub, b_sub, c_sub, phi, psi, ideal })
    }

    pub fn middle(&self) -> &SubquotientModule {
        &self.b
    }

    pub fn middle_sub(&self) -> &SubquotientModule {
        &self.b_sub
    }

    pub fn first_sub(&self) -> &SubquotientModule {
        &self.a_sub
    }

    pub fn ideal(&self) -> &HomogeneousIdeal {
        &self.ideal
    }

    /// H(n): homology of A/I^nA' -> B/I^nB' -> C/I^nC', computed directly as
    /// preimage(psi, I^nC')/(im(phi) + I^nB').
    pub fn homology_at(&self, n: u32) -> Result<SubquotientModule> {
        let ring = self.b.ring().clone();
        let i_n = self.ideal.power(n)?;
        let inc = i_n.apply_to_module(&self.c_sub)?;
        let pre = preimage_span(self.b.ambient(), self.psi.cols(), self.c.ambient(), &inc.numerator_span())?;
        let numerator = if self.b.covers_ambient() {
            pre
        } else {
            intersect_spans(self.b.ambient(), &pre, &self.b.numerator_span())?
        };
        let inb = i_n.apply_to_module(&self.b_sub)?;
        let mut denom: Vec<ModuleVector> = self.a.u_gens().iter().map(|u| self.phi.apply(u)).collect();
        denom.extend(inb.u_gens().iter().cloned());
        denom.extend(self.b.v_gens().iter().cloned());
        SubquotientModule::new(ring, self.b.ambient().clone(), numerator, denom)
    }
}

/// The stable package of Lemma-style homology: Z = B/im(phi) with submodules
/// U, V, W such that H(n) ≅ (U + I^{n-n0}V)/I^{n-n0}W for n ≥ n0.
#[derive(Debug, Clone)]
pub struct UVWPackage {
    pub z: SubquotientModule,
    pub u: SubquotientModule,
    pub v: SubquotientModule,
    pub w: SubquotientModule,
    pub n0: u32,
    pub window: u32,
    pub ideal: HomogeneousIdeal,
}

impl UVWPackage {
    /// The module (U + I^m V)/I^m W.
    pub fn family_module(&self, m: u32) -> Result<SubquotientModule> {
        let i_m = self.ideal.power(m)?;
        let imv = i_m.apply_to_module(&self.v)?;
        let imw = i_m.apply_to_module(&self.w)?;
        self.u.sum(&imv)?.quotient_by(&imw)
    }
}

/// Least n0 ≤ cap with I^n C' ∩ N = I^{n-n0}(I^{n0} C' ∩ N) verified for all
/// n in (n0, n0+window]; submodules share the ambient module's denominator.
pub fn artin_rees_offset(
    cprime: &SubquotientModule,
    image: &SubquotientModule,
    ideal: &HomogeneousIdeal,
    window: u32,
    cap: u32,
) -> Result<u32> {
    let mut powers: Vec<HomogeneousIdeal> = Vec::with_capacity((cap + window + 1) as usize);
    for n in 0..=(cap + window) {
        powers.push(ideal.power(n)?);
    }
    'offset: for n0 in 0..=cap {
        let base = powers[n0 as usize].apply_to_module(cprime)?.intersect(image)?;
        for n in (n0 + 1)..=(n0 + window) {
            let lhs = powers[n as usize].apply_to_module(cprime)?.intersect(image)?;
            let rhs = powers[(n - n0) as usize].apply_to_module(&base)?;
            if !lhs.same_module(&rhs) {
                continue 'offset;
            }
        }
        return Ok(n0);
    }
    Err(AlgebraError::NoArtinReesOffset { cap: cap as usize, window: window as usize })
}

/// Extract (Z, U, V, W, n0) from a three-term complex: n0 from the Artin-Rees
/// stabilization of I^n C' ∩ im(psi), then V' = psi^{-1}(I^{n0} C'),
/// W' = I^{n0} B', pushed into Z = B/im(phi).
pub fn uvw_extract(t: &ThreeTermComplex, n_probe: u32, window: u32) -> Result<UVWPackage> {
    let ring = t.b.ring().clone();
    let im_psi_gens: Vec<ModuleVector> = t.b.u_gens().iter().map(|u| t.psi.apply(u)).collect();
    let im_psi = t.c.submodule(im_psi_gens)?;
    let n0 = artin_rees_offset(&t.c_sub, &im_psi, &t.ideal, window, n_probe)?;

    let i_n0 = t.ideal.power(n0)?;
    let in0c = i_n0.apply_to_module(&t.c_sub)?;
    let vprime_pre = preimage_span(t.b.ambient(), t.psi.cols(), t.c.ambient(), &in0c.numerator_span())?;
    let vprime = if t.b.covers_ambient() {
        vprime_pre
    } else {
        intersect_spans(t.b.ambient(), &vprime_pre, &t.b.numerator_span())?
    };
    let wprime = i_n0.apply_to_module(&t.b_sub)?.u_gens().to_vec();

    let ker_pre = preimage_span(t.b.ambient(), t.psi.cols(), t.c.ambient(), &t.c.denominator_span())?;
    let ker = if t.b.covers_ambient() {
        ker_pre
    } else {
        intersect_spans(t.b.ambient(), &ker_pre, &t.b.numerator_span())?
    };

    let mut dz: Vec<ModuleVector> = t.a.u_gens().iter().map(|u| t.phi.apply(u)).collect();
    dz.extend(t.b.v_gens().iter().cloned());

    let z = SubquotientModule::new(ring.clone(), t.b.ambient().clone(), t.b.u_gens().to_vec(), dz.clone())?;
    let u = SubquotientModule::new(ring.clone(), t.b.ambient().clone(), ker, dz.clone())?;
    let v = SubquotientModule::new(ring.clone(), t.b.ambient().clone(), vprime, dz.clone())?;
    let w = SubquotientModule::new(ring.clone(), t.b.ambient().clone(), wprime, dz)?;
    if !v.contains(&w) {
        return Err(AlgebraError::NotSubmodule("W must lie inside V".into()));
    }
    Ok(UVWPackage { z, u, v, w, n0, window, ideal: t.ideal.clone() })
}

/// The dualized-resolution complex whose per-n homology is Ext^k(L, M/I^nN):
/// A, B, C are Hom(F_{k∓1}, M), Hom(F_k, M) with primed submodules the
/// corresponding blocks of N.
pub fn ext_complex(
    res: &FreeResolution,
    m: &SubquotientModule,
    n_sub: &SubquotientModule,
    ideal: &HomogeneousIdeal,
    k: usize,
) -> Result<ThreeTermComplex> {
    let ring = m.ring().clone();
    let g_rank = m.ambient().rank();

    let make = |fm: Option<FreeModule>| -> Result<(SubquotientModule, SubquotientModule)> {
        match fm {
            Some(f) => {
                let big = hom_block_fm(&f, m.ambient());
                let module = block_module(&ring, big.clone(), f.rank(), m)?;
                let sub_gens = block_gens(&big, g_rank, f.rank(), n_sub.u_gens());
                let sub = module.submodule(sub_gens)?;
                Ok((module, sub))
            }
            None => {
                let z = zero_module(&ring);
                Ok((z.clone(), z))
            }
        }
    };

    let (b, b_sub) = make(resolution_module(res, k)?)?;
    let (c, c_sub) = make(resolution_module(res, k + 1)?)?;
    let (a, a_sub) = if k == 0 {
        let z = zero_module(&ring);
        (z.clone(), z)
    } else {
        make(resolution_module(res, k - 1)?)?
    };

    let psi = match resolution_module(res, k + 1)? {
        Some(_) => hom_induced_map(&res.maps()[k], m.ambient())?,
        None => GradedMap::zero(b.ambient().clone(), c.ambient().clone()),
    };
    let phi = if k == 0 {
        GradedMap::zero(a.ambient().clone(), b.ambient().clone())
    } else {
        hom_induced_map(&res.maps()[k - 1], m.ambient())?
    };

    ThreeTermComplex::new(a, b, c, a_sub, b_sub, c_sub, phi, psi, ideal.clone())
}

/// Tensor analogue: per-n homology is Tor_k(L, M/I^nN).
pub fn tor_complex(
    res: &FreeResolution,
    m: &SubquotientModule,
    n_sub: &SubquotientModule,
    ideal: &HomogeneousIdeal,
    k: usize,
) -> Result<ThreeTermComplex> {
    let ring = m.ring().clone();
    let g_rank = m.ambient().rank();

    let make = |fm: Option<FreeModule>| -> Result<(SubquotientModule, SubquotientModule)> {
        match fm {
            Some(f) => {
                let big = tensor_block_fm(&f, m.ambient());
                let module = block_module(&ring, big.clone(), f.rank(), m)?;
                let sub_gens = block_gens(&big, g_rank, f.rank(), n_sub.u_gens());
                let sub = module.submodule(sub_gens)?;
                Ok((module, sub))
            }
            None => {
                let z = zero_module(&ring);
                Ok((z.clone(), z))
            }
        }
    };

    let (b, b_sub) = make(resolution_module(res, k)?)?;
    let (a, a_sub) = make(resolution_module(res, k + 1)?)?;
    let (c, c_sub) = if k == 0 {
        let z = zero_module(&ring);
        (z.clone(), z)
    } else {
        make(resolution_module(res, k - 1)?)?
    };

    let phi = match resolution_module(res, k + 1)? {
        Some(_) => tensor_induced_map(&res.maps()[k], m.ambient())?,
        None => GradedMap::zero(a.ambient().clone(), b.ambient().clone()),
    };
    let psi = if k == 0 {
        GradedMap::zero(b.ambient().clone(), c.ambient().clone())
    } else {
        tensor_induced_map(&res.maps()[k - 1], m.ambient())?
    };

    ThreeTermComplex::new(a, b, c, a_sub, b_sub, c_sub, phi, psi, ideal.clone())
}
