//! Graded subquotient modules over R = S/J and module-level algebra.
//!
//! Every module is a subquotient (U+V)/V of a twisted free S-module, with the
//! relations J·(basis) always adjoined to V so that the module is genuinely an
//! R-module while all Groebner computation happens over S. Submodules of a
//! module are represented as subquotients sharing its denominator.

use serde::{Serialize, Serializer};
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::gb::{self, FreeModule, GroebnerBasis, ModuleVector};
use crate::gring::{GradedRing, HomogeneousIdeal};
use crate::poly::{Monomial, Polynomial};
use crate::scalars::{Field, FieldElem};

/// An integer extended with infinity; used for degrees and v-numbers, where
/// the zero module has `indeg` and `v` equal to infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtInt {
    Int(i64),
    Infinity,
}

impl ExtInt {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtInt::Int(_))
    }

    pub fn finite(&self) -> Option<i64> {
        match self {
            ExtInt::Int(n) => Some(*n),
            ExtInt::Infinity => None,
        }
    }

    pub fn min(self, other: ExtInt) -> ExtInt {
        match (self, other) {
            (ExtInt::Int(a), ExtInt::Int(b)) => ExtInt::Int(a.min(b)),
            (ExtInt::Int(a), ExtInt::Infinity) | (ExtInt::Infinity, ExtInt::Int(a)) => ExtInt::Int(a),
            (ExtInt::Infinity, ExtInt::Infinity) => ExtInt::Infinity,
        }
    }

    pub fn sub(self, i: i64) -> ExtInt {
        match self {
            ExtInt::Int(n) => ExtInt::Int(n - i),
            ExtInt::Infinity => ExtInt::Infinity,
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Int(n) => write!(f, "{n}"),
            ExtInt::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtInt::Int(n) => serializer.serialize_i64(*n),
            ExtInt::Infinity => serializer.serialize_str("inf"),
        }
    }
}

/// Incremental Gaussian elimination over an exact field; rows inserted one at
/// a time, reporting independence.
pub(crate) struct RowReducer {
    field: Field,
    echelon: Vec<Vec<FieldElem>>,
    pivot_cols: Vec<usize>,
}

impl RowReducer {
    pub fn new(field: Field) -> RowReducer {
        RowReducer { field, echelon: Vec::new(), pivot_cols: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    /// Reduce `row` against the echelon; if nonzero, normalize and keep it.
    pub fn insert(&mut self, mut row: Vec<FieldElem>) -> bool {
        let f = self.field;
        for (r, &pc) in self.echelon.iter().zip(&self.pivot_cols) {
            if !f.is_zero(&row[pc]) {
                let c = row[pc].clone();
                for (x, y) in row.iter_mut().zip(r) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        if let Some(pc) = row.iter().position(|c| !f.is_zero(c)) {
            let inv = f.inv(&row[pc]).expect("nonzero pivot");
            for x in row.iter_mut() {
                *x = f.mul(x, &inv);
            }
            self.echelon.push(row);
            self.pivot_cols.push(pc);
            true
        } else {
            false
        }
    }
}

/// A degree-0 homomorphism between twisted free modules, given by the images
/// of the source basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    source: FreeModule,
    target: FreeModule,
    cols: Vec<ModuleVector>,
}

impl GradedMap {
    pub fn new(source: FreeModule, target: FreeModule, cols: Vec<ModuleVector>) -> Result<GradedMap> {
        if cols.len() != source.rank() {
            return Err(AlgebraError::VariableCountMismatch { expected: source.rank(), got: cols.len() });
        }
        if source.ring() != target.ring() {
            return Err(AlgebraError::RingMismatch);
        }
        for (j, col) in cols.iter().enumerate() {
            match target.degree(col)? {
                None => {}
                Some(d) if d == source.basis_degree(j) => {}
                Some(d) => {
                    return Err(AlgebraError::DegreeViolation(format!(
                        "column {j} has degree {d}, expected {}",
                        source.basis_degree(j)
                    )))
                }
            }
        }
        Ok(GradedMap { source, target, cols })
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn cols(&self) -> &[ModuleVector] {
        &self.cols
    }

    pub fn zero(source: FreeModule, target: FreeModule) -> GradedMap {
        let cols = vec![target.zero_vector(); source.rank()];
        GradedMap { source, target, cols }
    }

    pub fn identity(fm: &FreeModule) -> GradedMap {
        let cols = (0..fm.rank()).map(|i| fm.basis_vector(i)).collect();
        GradedMap { source: fm.clone(), target: fm.clone(), cols }
    }

    pub fn apply(&self, v: &ModuleVector) -> ModuleVector {
        let mut acc = self.target.zero_vector();
        for (j, col) in self.cols.iter().enumerate() {
            let c = &v.comps()[j];
            if !c.is_zero() {
                acc = self.target.add(&acc, &self.target.mul_poly(col, c));
            }
        }
        acc
    }

    /// Entry (i, j): the coefficient of `e_i` in the image of `e_j`.
    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.cols[j].comps()[i]
    }
}

/// Dimension and representative basis of one graded component of a module.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    pub degree: i64,
    pub dimension: usize,
    pub basis: Vec<ModuleVector>,
}

/// Graded module (U+V)/V presented inside a twisted free module over S.
#[derive(Debug, Clone)]
pub struct SubquotientModule {
    ring: GradedRing,
    ambient: FreeModule,
    u_gens: Vec<ModuleVector>,
    v_gens: Vec<ModuleVector>,
    gb_v: GroebnerBasis,
    gb_uv: GroebnerBasis,
}

fn adjoin_ring_relations(ring: &GradedRing, ambient: &FreeModule, v_gens: &mut Vec<ModuleVector>) {
    for i in 0..ambient.rank() {
        for j in ring.j_gens() {
            let rel = ambient.single(i, j.clone());
            if !v_gens.contains(&rel) {
                v_gens.push(rel);
            }
        }
    }
}

impl SubquotientModule {
    /// Canonical constructor; J·(basis) is adjoined to the denominator
    /// automatically and all generators must be homogeneous.
    pub fn new(
        ring: GradedRing,
        ambient: FreeModule,
        u_gens: Vec<ModuleVector>,
        v_gens: Vec<ModuleVector>,
    ) -> Result<SubquotientModule> {
        if ambient.ring() != ring.base() {
            return Err(AlgebraError::RingMismatch);
        }
        for g in u_gens.iter().chain(&v_gens) {
            if g.comps().len() != ambient.rank() {
                return Err(AlgebraError::AmbientMismatch);
            }
            ambient.degree(g)?;
        }
        let mut v_gens = v_gens;
        adjoin_ring_relations(&ring, &ambient, &mut v_gens);
        let u_gens: Vec<ModuleVector> = u_gens.into_iter().filter(|g| !g.is_zero()).collect();
        let v_gens: Vec<ModuleVector> = v_gens.into_iter().filter(|g| !g.is_zero()).collect();
        let gb_v = gb::groebner(&ambient, &v_gens)?;
        let mut uv = u_gens.clone();
        uv.extend(v_gens.iter().cloned());
        let gb_uv = gb::groebner(&ambient, &uv)?;
        Ok(SubquotientModule { ring, ambient, u_gens, v_gens, gb_v, gb_uv })
    }

    /// The free R-module with the given twists, as a subquotient.
    pub fn free(ring: &GradedRing, twists: Vec<i64>) -> SubquotientModule {
        let ambient = FreeModule::new(ring.base().clone(), twists);
        let u_gens = (0..ambient.rank()).map(|i| ambient.basis_vector(i)).collect();
        SubquotientModule::new(ring.clone(), ambient, u_gens, Vec::new())
            .expect("free module construction is always valid")
    }

    /// The cyclic module R/I.
    pub fn cyclic(ring: &GradedRing, i: &HomogeneousIdeal) -> Result<SubquotientModule> {
        let ambient = FreeModule::new(ring.base().clone(), vec![0]);
        let u_gens = vec![ambient.basis_vector(0)];
        let v_gens = i.gens().iter().map(|g| ambient.single(0, g.clone())).collect();
        SubquotientModule::new(ring.clone(), ambient, u_gens, v_gens)
    }

    /// The ideal I viewed as a submodule of R.
    pub fn ideal_as_module(i: &HomogeneousIdeal) -> Result<SubquotientModule> {
        let ring = i.ring().clone();
        let ambient = FreeModule::new(ring.base().clone(), vec![0]);
        let u_gens = i.gens().iter().map(|g| ambient.single(0, g.clone())).collect();
        SubquotientModule::new(ring, ambient, u_gens, Vec::new())
    }

    /// The zero module in the given ambient.
    pub fn zero(ring: &GradedRing, ambient: FreeModule) -> SubquotientModule {
        SubquotientModule::new(ring.clone(), ambient, Vec::new(), Vec::new())
            .expect("zero module construction is always valid")
    }

    /// Submodule of this module generated by `gens` (same denominator).
    pub fn submodule(&self, gens: Vec<ModuleVector>) -> Result<SubquotientModule> {
        SubquotientModule::new(self.ring.clone(), self.ambient.clone(), gens, self.v_gens.clone())
    }

    /// Canonical generating set of U+V upstairs: the reduced basis elements.
    /// Keeping spans basis-reduced contains generator growth across the
    /// syzygy-heavy operations.
    pub fn numerator_span(&self) -> Vec<ModuleVector> {
        self.gb_uv.elements().to_vec()
    }

    /// Canonical generating set of the denominator V upstairs.
    pub fn denominator_span(&self) -> Vec<ModuleVector> {
        self.gb_v.elements().to_vec()
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    pub fn u_gens(&self) -> &[ModuleVector] {
        &self.u_gens
    }

    pub fn v_gens(&self) -> &[ModuleVector] {
        &self.v_gens
    }

    pub fn gb_v(&self) -> &GroebnerBasis {
        &self.gb_v
    }

    pub fn gb_uv(&self) -> &GroebnerBasis {
        &self.gb_uv
    }

    /// True iff every numerator generator lies in the denominator.
    pub fn is_zero(&self) -> bool {
        self.u_gens.iter().all(|g| gb::member(&self.ambient, g, &self.gb_v))
    }

    /// Membership of an ambient vector in U+V.
    pub fn contains_vector(&self, v: &ModuleVector) -> bool {
        gb::member(&self.ambient, v, &self.gb_uv)
    }

    /// True when U+V is the whole ambient free module.
    pub fn covers_ambient(&self) -> bool {
        (0..self.ambient.rank()).all(|i| self.contains_vector(&self.ambient.basis_vector(i)))
    }

    /// Containment of another subquotient's numerator (denominators assumed equal).
    pub fn contains(&self, other: &SubquotientModule) -> bool {
        other.u_gens.iter().all(|g| self.contains_vector(g))
    }

    /// Equality as submodules of a common quotient: same denominator span and
    /// same numerator span.
    pub fn same_module(&self, other: &SubquotientModule) -> bool {
        self.ambient == other.ambient
            && self.gb_v.elements() == other.gb_v.elements()
            && self.gb_uv.elements() == other.gb_uv.elements()
    }

    fn same_denominator(&self, other: &SubquotientModule) -> bool {
        self.ambient == other.ambient && self.gb_v.elements() == other.gb_v.elements()
    }

    /// The module M(i): same presentation, grading shifted by i.
    pub fn twist(&self, i: i64) -> SubquotientModule {
        SubquotientModule::new(
            self.ring.clone(),
            self.ambient.twisted(i),
            self.u_gens.clone(),
            self.v_gens.clone(),
        )
        .expect("twisting preserves validity")
    }

    pub fn direct_sum(&self, other: &SubquotientModule) -> Result<SubquotientModule> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch);
        }
        let mut twists = self.ambient.twists().to_vec();
        twists.extend_from_slice(other.ambient.twists());
        let ambient = FreeModule::new(self.ring.base().clone(), twists);
        let r1 = self.ambient.rank();
        let inj1 = |v: &ModuleVector| {
            let mut comps = v.comps().to_vec();
            comps.extend(vec![Polynomial::zero(); other.ambient.rank()]);
            ambient.vector(comps).expect("rank matches")
        };
        let inj2 = |v: &ModuleVector| {
            let mut comps = vec![Polynomial::zero(); r1];
            comps.extend(v.comps().to_vec());
            ambient.vector(comps).expect("rank matches")
        };
        let u_gens: Vec<ModuleVector> = self
            .u_gens
            .iter()
            .map(&inj1)
            .chain(other.u_gens.iter().map(&inj2))
            .collect();
        let v_gens: Vec<ModuleVector> = self
            .v_gens
            .iter()
            .map(&inj1)
            .chain(other.v_gens.iter().map(&inj2))
            .collect();
        SubquotientModule::new(self.ring.clone(), ambient, u_gens, v_gens)
    }

    /// Dimension and basis of the graded component M_n, by linear algebra over
    /// the standard monomials of (F/V)_n.
    pub fn graded_piece(&self, n: i64) -> GradedPiece {
        let ring = self.ambient.ring();
        let field = *ring.field();
        // standard monomial columns of (F/V)_n
        let mut columns: Vec<(usize, Monomial)> = Vec::new();
        for slot in 0..self.ambient.rank() {
            let d = n + self.ambient.twists()[slot];
            for m in ring.monomials_of_degree(d) {
                let reducible = self
                    .gb_v
                    .leads()
                    .iter()
                    .any(|lt| lt.slot == slot && lt.mono.divides(&m));
                if !reducible {
                    columns.push((slot, m));
                }
            }
        }
        if columns.is_empty() {
            return GradedPiece { degree: n, dimension: 0, basis: Vec::new() };
        }
        let col_index = |slot: usize, m: &Monomial| -> Option<usize> {
            columns.iter().position(|(s, cm)| *s == slot && cm == m)
        };
        let mut reducer = RowReducer::new(field);
        let mut basis = Vec::new();
        for u in &self.u_gens {
            let du = match self.ambient.degree(u).expect("validated homogeneous") {
                Some(d) => d,
                None => continue,
            };
            for m in ring.monomials_of_degree(n - du) {
                let candidate = self.ambient.mul_term(u, &m, &field.one());
                let nf = gb::normal_form(&self.ambient, &candidate, self.gb_v.elements());
                if nf.is_zero() {
                    continue;
                }
                let mut row = vec![field.zero(); columns.len()];
                for (slot, comp) in nf.comps().iter().enumerate() {
                    for (mono, c) in comp.terms() {
                        let idx = col_index(slot, mono).expect("normal form terms are standard");
                        row[idx] = c.clone();
                    }
                }
                if reducer.insert(row) {
                    basis.push(nf);
                }
            }
        }
        GradedPiece { degree: n, dimension: reducer.rank(), basis }
    }

    pub fn dim_at(&self, n: i64) -> usize {
        self.graded_piece(n).dimension
    }

    /// Hilbert function values over an inclusive degree window.
    pub fn hilbert(&self, lo: i64, hi: i64) -> Vec<usize> {
        (lo..=hi).map(|n| self.dim_at(n)).collect()
    }

    /// Degrees of the nonzero numerator generators.
    fn gen_degrees(&self) -> Vec<i64> {
        self.u_gens
            .iter()
            .filter_map(|g| self.ambient.degree(g).expect("validated homogeneous"))
            .collect()
    }

    /// Initial degree: least n with M_n nonzero, infinity for the zero module.
    /// The scan is bounded by the numerator generator degrees.
    pub fn indeg(&self) -> ExtInt {
        if self.is_zero() {
            return ExtInt::Infinity;
        }
        let degs = self.gen_degrees();
        let lo = *degs.iter().min().expect("nonzero module has generators");
        let hi = *degs.iter().max().expect("nonzero module has generators");
        for n in lo..=hi {
            if self.dim_at(n) > 0 {
                return ExtInt::Int(n);
            }
        }
        unreachable!("a nonzero module has a nonzero piece at some generator degree")
    }

    /// Minimal generator degrees: for each n, the count is
    /// dim M_n - dim (S_+ M)_n (graded Nakayama).
    pub fn min_gen_degrees(&self) -> Vec<i64> {
        if self.is_zero() {
            return Vec::new();
        }
        let splus = self
            .ring
            .irrelevant_ideal()
            .apply_to_module(self)
            .expect("same ring");
        let degs = self.gen_degrees();
        let lo = *degs.iter().min().expect("nonzero");
        let hi = *degs.iter().max().expect("nonzero");
        let mut out = Vec::new();
        for n in lo..=hi {
            let extra = self.dim_at(n).saturating_sub(splus.dim_at(n));
            out.extend(std::iter::repeat(n).take(extra));
        }
        out
    }

    /// A minimal generating set, by greedy removal of redundant generators.
    pub fn minimal_generators(&self) -> Vec<ModuleVector> {
        let mut cands: Vec<ModuleVector> = self
            .u_gens
            .iter()
            .map(|g| gb::normal_form(&self.ambient, g, self.gb_v.elements()))
            .filter(|g| !g.is_zero())
            .map(|g| self.ambient.monic(&g))
            .collect();
        cands.sort_by(|a, b| {
            let da = self.ambient.degree(a).expect("homogeneous").expect("nonzero");
            let db = self.ambient.degree(b).expect("homogeneous").expect("nonzero");
            da.cmp(&db).then_with(|| {
                let la = self.ambient.lead(a).expect("nonzero");
                let lb = self.ambient.lead(b).expect("nonzero");
                self.ambient.cmp_terms(la.slot, &la.mono, lb.slot, &lb.mono)
            })
        });
        cands.dedup();
        let mut keep = vec![true; cands.len()];
        for i in (0..cands.len()).rev() {
            let mut others = self.v_gens.clone();
            for (j, c) in cands.iter().enumerate() {
                if j != i && keep[j] {
                    others.push(c.clone());
                }
            }
            let gb_others = gb::groebner(&self.ambient, &others).expect("validated homogeneous");
            if gb::member(&self.ambient, &cands[i], &gb_others) {
                keep[i] = false;
            }
        }
        cands.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect()
    }

    /// Sum of submodules sharing this module's denominator.
    pub fn sum(&self, other: &SubquotientModule) -> Result<SubquotientModule> {
        if !self.same_denominator(other) {
            return Err(AlgebraError::AmbientMismatch);
        }
        let mut u = self.u_gens.clone();
        u.extend(other.u_gens.iter().cloned());
        self.submodule(u)
    }

    /// Intersection of submodules sharing this module's denominator, via
    /// syzygies on the concatenated numerator spans.
    pub fn intersect(&self, other: &SubquotientModule) -> Result<SubquotientModule> {
        if !self.same_denominator(other) {
            return Err(AlgebraError::AmbientMismatch);
        }
        let a = self.numerator_span();
        let b = other.numerator_span();
        let gens = intersect_spans(&self.ambient, &a, &b)?;
        self.submodule(gens)
    }

    /// The submodule I·M (same denominator).
    pub fn ideal_times(&self, i: &HomogeneousIdeal) -> Result<SubquotientModule> {
        i.apply_to_module(self)
    }

    /// The colon submodule (0 :_M a) = {m in M : a m = 0}, computed as one
    /// preimage under the stacked multiplication map v -> (g_1 v, ..., g_k v).
    pub fn colon_ann(&self, a: &HomogeneousIdeal) -> Result<SubquotientModule> {
        if a.ring() != &self.ring {
            return Err(AlgebraError::RingMismatch);
        }
        let gens = a.min_gens();
        if gens.is_empty() {
            return self.submodule(self.u_gens.clone());
        }
        let base = self.ring.base();
        let mut big_twists = Vec::with_capacity(gens.len() * self.ambient.rank());
        let mut degrees = Vec::with_capacity(gens.len());
        for g in gens {
            let d = base.mono_degree(&g.leading().expect("minimal generators are nonzero").0);
            degrees.push(d);
            big_twists.extend(self.ambient.twists().iter().map(|t| t + d));
        }
        let big = FreeModule::new(base.clone(), big_twists);
        let rank = self.ambient.rank();
        let cols: Vec<ModuleVector> = (0..rank)
            .map(|i| {
                let mut col = big.zero_vector();
                for (t, g) in gens.iter().enumerate() {
                    col = big.add(&col, &big.single(t * rank + i, g.clone()));
                }
                col
            })
            .collect();
        let mut v_blocks = Vec::new();
        for t in 0..gens.len() {
            for v in self.denominator_span() {
                let mut comps = vec![Polynomial::zero(); big.rank()];
                for (i, p) in v.comps().iter().enumerate() {
                    comps[t * rank + i] = p.clone();
                }
                v_blocks.push(big.vector(comps).expect("rank matches"));
            }
        }
        let pre = preimage_span(&self.ambient, &cols, &big, &v_blocks)?;
        let numerator = if self.covers_ambient() {
            pre
        } else {
            intersect_spans(&self.ambient, &pre, &self.numerator_span())?
        };
        self.submodule(numerator)
    }

    /// The torsion submodule Gamma_a(M) = (0 :_M a^infinity), found by
    /// doubling the exponent until two consecutive colons agree.
    pub fn gamma(&self, a: &HomogeneousIdeal) -> Result<SubquotientModule> {
        if a.ring() != &self.ring {
            return Err(AlgebraError::RingMismatch);
        }
        if a.min_gens().is_empty() {
            // the zero ideal annihilates everything at the first power
            return Ok(self.clone());
        }
        let mut t: u32 = 1;
        let mut prev = self.colon_ann(a)?;
        loop {
            t *= 2;
            if t > 1 << 12 {
                unreachable!("colon chain must stabilize by Noetherianity");
            }
            let next = self.colon_ann(&a.power(t)?)?;
            if prev.gb_uv.elements() == next.gb_uv.elements() {
                return Ok(prev);
            }
            prev = next;
        }
    }

    /// The annihilator (0 :_R x) of the image in M of a single ambient vector.
    pub fn element_annihilator(&self, x: &ModuleVector) -> Result<HomogeneousIdeal> {
        let colon = colon_ideal_into(&self.ambient, x, &self.denominator_span())?;
        self.ring.ideal(colon)
    }

    /// Ann(M) as an ideal of R: the intersection over numerator generators u
    /// of the colon ideals (V : u).
    pub fn annihilator(&self) -> Result<HomogeneousIdeal> {
        let mut result = self.ring.unit_ideal();
        for u in &self.u_gens {
            let colon = colon_ideal_into(&self.ambient, u, &self.denominator_span())?;
            let ideal = self.ring.ideal(colon)?;
            result = result.intersect(&ideal)?;
        }
        Ok(result)
    }

    /// The quotient M/N for a submodule N sharing M's denominator: the
    /// denominator is enlarged by N's numerator.
    pub fn quotient_by(&self, n: &SubquotientModule) -> Result<SubquotientModule> {
        if !self.same_denominator(n) {
            return Err(AlgebraError::AmbientMismatch);
        }
        if !n.u_gens.iter().all(|g| self.contains_vector(g)) {
            return Err(AlgebraError::NotSubmodule(
                "quotient_by requires the second module inside the first".into(),
            ));
        }
        let mut v = self.v_gens.clone();
        v.extend(n.u_gens.iter().cloned());
        SubquotientModule::new(self.ring.clone(), self.ambient.clone(), self.u_gens.clone(), v)
    }

    pub fn describe(&self) -> String {
        format!(
            "subquotient(ambient rank {}, {} gens, {} rels)",
            self.ambient.rank(),
            self.u_gens.len(),
            self.v_gens.len()
        )
    }
}

impl HomogeneousIdeal {
    /// The submodule I·M of M (same denominator as M).
    pub fn apply_to_module(&self, m: &SubquotientModule) -> Result<SubquotientModule> {
        if self.ring() != m.ring() {
            return Err(AlgebraError::RingMismatch);
        }
        let ambient = m.ambient().clone();
        let mut gens = Vec::new();
        for g in self.min_gens() {
            for u in m.u_gens() {
                gens.push(ambient.mul_poly(u, g));
            }
        }
        m.submodule(gens)
    }
}

/// Kernel of the induced map `source_module -> F_target/(J F_target)`:
/// the vectors of U+V whose image lies in J·(target basis).
pub fn kernel(f: &GradedMap, source_module: &SubquotientModule) -> Result<SubquotientModule> {
    if f.source() != source_module.ambient() {
        return Err(AlgebraError::AmbientMismatch);
    }
    let ring = source_module.ring();
    let target_v: Vec<ModuleVector> = {
        let mut v = Vec::new();
        adjoin_ring_relations(ring, f.target(), &mut v);
        v
    };
    let pre = preimage_span(f.source(), f.cols(), f.target(), &target_v)?;
    let inside = intersect_spans(f.source(), &pre, &source_module.numerator_span())?;
    source_module.submodule(inside)
}

/// Image of `source_module` in the free quotient of the target.
pub fn image(f: &GradedMap, source_module: &SubquotientModule) -> Result<SubquotientModule> {
    if f.source() != source_module.ambient() {
        return Err(AlgebraError::AmbientMismatch);
    }
    let ring = source_module.ring().clone();
    let gens: Vec<ModuleVector> = source_module.u_gens().iter().map(|u| f.apply(u)).collect();
    SubquotientModule::new(ring, f.target().clone(), gens, Vec::new())
}

/// Preimage f^{-1}(T) of a subquotient T of the target's free quotient, as a
/// submodule of the source's free quotient.
pub fn preimage(f: &GradedMap, t: &SubquotientModule) -> Result<SubquotientModule> {
    if f.target() != t.ambient() {
        return Err(AlgebraError::AmbientMismatch);
    }
    let ring = t.ring().clone();
    let gens = preimage_span(f.source(), f.cols(), f.target(), &t.numerator_span())?;
    SubquotientModule::new(ring, f.source().clone(), gens, Vec::new())
}

/// Span-level intersection: generators of span(a) ∩ span(b) via syzygies of
/// the concatenated list.
pub(crate) fn intersect_spans(
    fm: &FreeModule,
    a: &[ModuleVector],
    b: &[ModuleVector],
) -> Result<Vec<ModuleVector>> {
    let mut all = a.to_vec();
    all.extend(b.iter().cloned());
    let (_, syz) = gb::syzygies(fm, &all)?;
    let mut out = Vec::new();
    for s in &syz {
        let mut acc = fm.zero_vector();
        for (t, av) in a.iter().enumerate() {
            acc = fm.add(&acc, &fm.mul_poly(av, &s.comps()[t]));
        }
        if !acc.is_zero() {
            out.push(acc);
        }
    }
    Ok(out)
}

/// Span-level preimage: generators of {v in F_src : sum v_j cols_j in span(sub)}.
pub(crate) fn preimage_span(
    source: &FreeModule,
    cols: &[ModuleVector],
    target: &FreeModule,
    sub: &[ModuleVector],
) -> Result<Vec<ModuleVector>> {
    let mut all = cols.to_vec();
    all.extend(sub.iter().cloned());
    let (_, syz) = gb::syzygies(target, &all)?;
    let mut out = Vec::new();
    for s in &syz {
        let comps: Vec<Polynomial> = s.comps()[..cols.len()].to_vec();
        let v = source.vector(comps).expect("rank matches");
        if !v.is_zero() {
            out.push(v);
        }
    }
    Ok(out)
}

/// Colon ideal (span(v_gens) : u) = {s in S : s·u in span(v_gens)}.
pub(crate) fn colon_ideal_into(
    fm: &FreeModule,
    u: &ModuleVector,
    v_gens: &[ModuleVector],
) -> Result<Vec<Polynomial>> {
    let mut all = vec![u.clone()];
    all.extend(v_gens.iter().cloned());
    let (_, syz) = gb::syzygies(fm, &all)?;
    Ok(syz
        .iter()
        .map(|s| s.comps()[0].clone())
        .filter(|p| !p.is_zero())
        .collect())
}

impl fmt::Display for SubquotientModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gring::GradedRing;

    fn r_xy_mod_xy() -> GradedRing {
        GradedRing::build(&[("x", 1), ("y", 1)], Field::Rationals, &["x*y"]).unwrap()
    }

    fn qxy() -> GradedRing {
        GradedRing::build(&[("x", 1), ("y", 1)], Field::Rationals, &[]).unwrap()
    }

    /// R/(gens) as a module.
    fn cyclic(ring: &GradedRing, rels: &[&str]) -> SubquotientModule {
        let i = ring.ideal_str(rels).unwrap();
        SubquotientModule::cyclic(ring, &i).unwrap()
    }

    /// (gens)/(rels) inside R^1.
    fn sub_quot(ring: &GradedRing, gens: &[&str], rels: &[&str]) -> SubquotientModule {
        let ambient = FreeModule::new(ring.base().clone(), vec![0]);
        let u = gens
            .iter()
            .map(|s| ambient.single(0, ring.base().parse(s).unwrap()))
            .collect();
        let v = rels
            .iter()
            .map(|s| ambient.single(0, ring.base().parse(s).unwrap()))
            .collect();
        SubquotientModule::new(ring.clone(), ambient, u, v).unwrap()
    }

    #[test]
    fn constructors_and_zero_test() {
        let r = r_xy_mod_xy();
        let whole = sub_quot(&r, &["1"], &[]);
        assert!(!whole.is_zero());
        // (y)/(y^4): the module from the second paper family at n=3
        let m = sub_quot(&r, &["y"], &["y^4"]);
        assert!(!m.is_zero());
        let z = sub_quot(&r, &["x"], &["x"]);
        assert!(z.is_zero());
        assert_eq!(z.indeg(), ExtInt::Infinity);
    }

    #[test]
    fn graded_pieces() {
        let r = r_xy_mod_xy();
        let m = sub_quot(&r, &["y"], &["y^3"]);
        assert_eq!(m.dim_at(1), 1);
        assert_eq!(m.dim_at(2), 1);
        assert_eq!(m.dim_at(3), 0);
        assert_eq!(m.indeg(), ExtInt::Int(1));

        let q = qxy();
        let k = cyclic(&q, &["x", "y"]);
        assert_eq!(k.dim_at(0), 1);
        assert_eq!(k.dim_at(1), 0);

        let z = sub_quot(&q, &[], &[]);
        assert_eq!(z.dim_at(0), 0);
        assert_eq!(z.dim_at(3), 0);
    }

    #[test]
    fn twisted_free_module_indeg() {
        let q = qxy();
        let f = SubquotientModule::free(&q, vec![-3]);
        assert_eq!(f.indeg(), ExtInt::Int(3));
        // shift fact at the indeg level
        let m = sub_quot(&q, &["x^2"], &["x^4"]);
        assert_eq!(m.indeg(), ExtInt::Int(2));
        assert_eq!(m.twist(1).indeg(), ExtInt::Int(1));
        assert_eq!(m.twist(-2).indeg(), ExtInt::Int(4));
    }

    #[test]
    fn kernel_of_multiplication() {
        let r = r_xy_mod_xy();
        // x : R(-1) -> R, kernel is generated by y
        let source = FreeModule::new(r.base().clone(), vec![-1]);
        let target = FreeModule::new(r.base().clone(), vec![0]);
        let f = GradedMap::new(
            source.clone(),
            target,
            vec![FreeModule::new(r.base().clone(), vec![0]).single(0, r.base().parse("x").unwrap())],
        )
        .unwrap();
        let src_mod = SubquotientModule::free(&r, vec![-1]);
        let ker = kernel(&f, &src_mod).unwrap();
        let expect = src_mod
            .submodule(vec![source.single(0, r.base().parse("y").unwrap())])
            .unwrap();
        assert!(ker.same_module(&expect));

        // kernel of the zero map is the whole source
        let zf = GradedMap::zero(source.clone(), FreeModule::new(r.base().clone(), vec![0]));
        let ker0 = kernel(&zf, &src_mod).unwrap();
        assert!(ker0.same_module(&src_mod.submodule(src_mod.numerator_span()).unwrap()));

        // image of the identity is the whole target
        let idm = GradedMap::identity(&source);
        let img = image(&idm, &src_mod).unwrap();
        assert!(img.same_module(&SubquotientModule::free(&r, vec![-1])));
    }

    #[test]
    fn preimage_examples() {
        let r = r_xy_mod_xy();
        let source = FreeModule::new(r.base().clone(), vec![-1]);
        let target = FreeModule::new(r.base().clone(), vec![0]);
        let mul_y = GradedMap::new(
            source.clone(),
            target.clone(),
            vec![target.single(0, r.base().parse("y").unwrap())],
        )
        .unwrap();
        // preimage of (y^2) under y: f with y f in (y^2, xy) iff f in (x, y)
        let t = sub_quot(&r, &["y^2"], &[]);
        let pre = preimage(&mul_y, &t).unwrap();
        let expect = SubquotientModule::new(
            r.clone(),
            source.clone(),
            vec![
                source.single(0, r.base().parse("x").unwrap()),
                source.single(0, r.base().parse("y").unwrap()),
            ],
            vec![],
        )
        .unwrap();
        assert!(pre.same_module(&expect));

        // preimage of zero equals the kernel
        let mul_x = GradedMap::new(
            source.clone(),
            target.clone(),
            vec![target.single(0, r.base().parse("x").unwrap())],
        )
        .unwrap();
        let zero_t = sub_quot(&r, &[], &[]);
        let pre0 = preimage(&mul_x, &zero_t).unwrap();
        let ker = kernel(&mul_x, &SubquotientModule::free(&r, vec![-1])).unwrap();
        assert!(pre0.same_module(&ker));

        // preimage of the whole target is the whole source
        let whole_t = sub_quot(&r, &["1"], &[]);
        let pre1 = preimage(&mul_x, &whole_t).unwrap();
        assert!(pre1.same_module(&SubquotientModule::free(&r, vec![-1])
            .submodule(SubquotientModule::free(&r, vec![-1]).numerator_span())
            .unwrap()));
    }

    #[test]
    fn sums_and_intersections() {
        let q = qxy();
        let whole = SubquotientModule::free(&q, vec![0]);
        let mx = whole.submodule(vec![whole.ambient().single(0, q.base().parse("x").unwrap())]).unwrap();
        let my = whole.submodule(vec![whole.ambient().single(0, q.base().parse("y").unwrap())]).unwrap();
        let zero = whole.submodule(vec![]).unwrap();
        assert!(mx.sum(&zero).unwrap().same_module(&mx));
        let cap = mx.intersect(&my).unwrap();
        let mxy = whole.submodule(vec![whole.ambient().single(0, q.base().parse("x*y").unwrap())]).unwrap();
        assert!(cap.same_module(&mxy));

        let r = r_xy_mod_xy();
        let wr = SubquotientModule::free(&r, vec![0]);
        let sx = wr.submodule(vec![wr.ambient().single(0, r.base().parse("x").unwrap())]).unwrap();
        let sy = wr.submodule(vec![wr.ambient().single(0, r.base().parse("y").unwrap())]).unwrap();
        let both = sy.sum(&sx).unwrap();
        let expect = wr
            .submodule(vec![
                wr.ambient().single(0, r.base().parse("x").unwrap()),
                wr.ambient().single(0, r.base().parse("y").unwrap()),
            ])
            .unwrap();
        assert!(both.same_module(&expect));
    }

    #[test]
    fn ideal_times_module() {
        let r = r_xy_mod_xy();
        let iy = r.ideal_str(&["y"]).unwrap();
        let whole = SubquotientModule::free(&r, vec![0]);
        let ym = iy.apply_to_module(&whole).unwrap();
        let expect = whole.submodule(vec![whole.ambient().single(0, r.base().parse("y").unwrap())]).unwrap();
        assert!(ym.same_module(&expect));

        let unit = r.unit_ideal();
        let m = sub_quot(&r, &["y"], &["y^3"]);
        assert!(unit.apply_to_module(&m).unwrap().same_module(&m.submodule(m.u_gens().to_vec()).unwrap()));

        // Example with weights: I^n W inside R/(x*y^3)
        let q = qxy();
        let w = cyclic(&q, &["x*y^3"]);
        let i = q.ideal_str(&["x^2"]).unwrap();
        let iw = i.apply_to_module(&w).unwrap();
        let expect = w.submodule(vec![w.ambient().single(0, q.base().parse("x^2").unwrap())]).unwrap();
        assert!(iw.same_module(&expect));
    }

    #[test]
    fn colon_and_gamma() {
        let r = r_xy_mod_xy();
        let whole = SubquotientModule::free(&r, vec![0]);
        let iy = r.ideal_str(&["y"]).unwrap();
        let k = whole.colon_ann(&iy).unwrap();
        let expect = whole.submodule(vec![whole.ambient().single(0, r.base().parse("x").unwrap())]).unwrap();
        assert!(k.same_module(&expect));

        let m = sub_quot(&r, &["y"], &["y^3"]);
        assert!(m.colon_ann(&r.unit_ideal()).unwrap().is_zero());

        let q = qxy();
        let mq = cyclic(&q, &["x^2"]);
        let ix = q.ideal_str(&["x"]).unwrap();
        let kq = mq.colon_ann(&ix).unwrap();
        let expect = mq.submodule(vec![mq.ambient().single(0, q.base().parse("x").unwrap())]).unwrap();
        assert!(kq.same_module(&expect));

        // Gamma examples
        let mg = cyclic(&q, &["x^2", "x*y"]);
        let g = mg.gamma(&q.irrelevant_ideal()).unwrap();
        let expect = mg.submodule(vec![mg.ambient().single(0, q.base().parse("x").unwrap())]).unwrap();
        assert!(g.same_module(&expect));

        assert!(mg.gamma(&q.unit_ideal()).unwrap().is_zero());

        let fin = cyclic(&q, &["x", "y^2"]);
        let gfin = fin.gamma(&q.irrelevant_ideal()).unwrap();
        assert!(gfin.same_module(&fin.submodule(fin.numerator_span()).unwrap()));

        // gamma is idempotent on the colon chain
        let again = mg.gamma(&q.irrelevant_ideal()).unwrap();
        assert!(again.same_module(&g));
    }

    #[test]
    fn colon_monotone_in_the_ideal() {
        let q = qxy();
        let m = cyclic(&q, &["x^2", "x*y^2"]);
        let small = q.ideal_str(&["x"]).unwrap();
        let big = q.ideal_str(&["x", "y"]).unwrap();
        let k_small = m.colon_ann(&small).unwrap();
        let k_big = m.colon_ann(&big).unwrap();
        assert!(k_small.contains(&k_big));
    }

    #[test]
    fn annihilators() {
        let r = r_xy_mod_xy();
        // (x, y^2)/(x, y^3) has annihilator (x, y) for n = 3
        let m = sub_quot(&r, &["x", "y^2"], &["x", "y^3"]);
        let ann = m.annihilator().unwrap();
        assert_eq!(ann, r.ideal_str(&["x", "y"]).unwrap());

        let whole = SubquotientModule::free(&r, vec![0]);
        assert!(whole.annihilator().unwrap().is_zero());

        let q = qxy();
        let mq = cyclic(&q, &["x^2"]);
        assert_eq!(mq.annihilator().unwrap(), q.ideal_str(&["x^2"]).unwrap());
    }

    #[test]
    fn min_gen_degrees_and_minimal_generators() {
        let r = r_xy_mod_xy();
        let m = sub_quot(&r, &["y"], &["y^3"]);
        assert_eq!(m.min_gen_degrees(), vec![1]);

        let q = qxy();
        let i = sub_quot(&q, &["x^2", "x*y"], &[]);
        assert_eq!(i.min_gen_degrees(), vec![2, 2]);

        let z = sub_quot(&q, &["x"], &["x"]);
        assert!(z.min_gen_degrees().is_empty());

        let redundant = sub_quot(&q, &["x^2", "x*y", "x^3"], &[]);
        let min = redundant.minimal_generators();
        assert_eq!(min.len(), 2);
    }

    #[test]
    fn quotients() {
        let r = r_xy_mod_xy();
        let whole = SubquotientModule::free(&r, vec![0]);
        let n = whole.submodule(vec![whole.ambient().single(0, r.base().parse("y^3").unwrap())]).unwrap();
        let q = whole.quotient_by(&n).unwrap();
        let expect = cyclic(&r, &["y^3"]);
        assert_eq!(q.hilbert(0, 6), expect.hilbert(0, 6));

        let zero = whole.submodule(vec![]).unwrap();
        assert!(whole.quotient_by(&zero).unwrap().hilbert(0, 4) == whole.hilbert(0, 4));

        let m = whole.submodule(whole.u_gens().to_vec()).unwrap();
        assert!(whole.quotient_by(&m).unwrap().is_zero());

        // N not inside M errors
        let small = whole.submodule(vec![whole.ambient().single(0, r.base().parse("x^2").unwrap())]).unwrap();
        assert!(small.quotient_by(&m).is_err());
    }

    #[test]
    fn direct_sum_hilbert_adds() {
        let q = qxy();
        let a = cyclic(&q, &["x", "y^2"]);
        let b = cyclic(&q, &["x^2", "y"]);
        let s = a.direct_sum(&b).unwrap();
        for n in 0..5 {
            assert_eq!(s.dim_at(n), a.dim_at(n) + b.dim_at(n));
        }
    }
}
