//! Graded ring presentations R = S/J and homogeneous-ideal algebra.
//!
//! Every ideal of R is represented by its full preimage in S (always containing
//! J), with a cached reduced Groebner basis. Ideal equality is equality of those
//! canonical bases, so it is decidable everywhere.

use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::gb::{self, FreeModule, GroebnerBasis, ModuleVector};
use crate::poly::{Homogeneity, MonomialOrder, PolyRing, Polynomial};
use crate::scalars::Field;

#[derive(Debug)]
struct GradedRingData {
    base: PolyRing,
    j_gens: Vec<Polynomial>,
    gb_j: GroebnerBasis,
}

/// A quotient R = S/J of a weighted polynomial ring by a homogeneous ideal.
/// Ring elements are represented by normal forms modulo the basis of J.
#[derive(Debug, Clone)]
pub struct GradedRing {
    data: Arc<GradedRingData>,
}

impl PartialEq for GradedRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.base == other.data.base
                && self.data.gb_j.elements() == other.data.gb_j.elements())
    }
}

impl Eq for GradedRing {}

impl GradedRing {
    /// Validated quotient ring; rejects inhomogeneous defining relations.
    pub fn new(base: PolyRing, j_gens: Vec<Polynomial>) -> Result<GradedRing> {
        for g in &j_gens {
            if matches!(base.homogeneity(g), Some(Homogeneity::Inhomogeneous)) {
                return Err(AlgebraError::Inhomogeneous(format!(
                    "defining relation {} is not homogeneous",
                    base.display(g)
                )));
            }
        }
        let fm = FreeModule::new(base.clone(), vec![0]);
        let vecs: Vec<ModuleVector> = j_gens.iter().map(|g| fm.single(0, g.clone())).collect();
        let gb_j = gb::groebner(&fm, &vecs)?;
        Ok(GradedRing { data: Arc::new(GradedRingData { base, j_gens, gb_j }) })
    }

    /// Convenience constructor from variable/weight pairs and polynomial text.
    pub fn build(vars: &[(&str, i64)], field: Field, quotient: &[&str]) -> Result<GradedRing> {
        let names = vars.iter().map(|(n, _)| n.to_string()).collect();
        let weights = vars.iter().map(|(_, w)| *w).collect();
        let base = PolyRing::new(names, weights, field, MonomialOrder::default())?;
        let j_gens = quotient.iter().map(|s| base.parse(s)).collect::<Result<Vec<_>>>()?;
        GradedRing::new(base, j_gens)
    }

    pub fn base(&self) -> &PolyRing {
        &self.data.base
    }

    pub fn j_gens(&self) -> &[Polynomial] {
        &self.data.j_gens
    }

    pub fn gb_j(&self) -> &GroebnerBasis {
        &self.data.gb_j
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.data.gb_j.is_trivial()
    }

    /// Rank-1 free module over S used for ideal computations.
    pub fn ideal_ambient(&self) -> FreeModule {
        FreeModule::new(self.data.base.clone(), vec![0])
    }

    /// Canonical representative of a ring element.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        let fm = self.ideal_ambient();
        let v = fm.single(0, f.clone());
        gb::normal_form(&fm, &v, self.data.gb_j.elements()).comps()[0].clone()
    }

    /// Ideal of R generated by `gens` (given as polynomial representatives).
    pub fn ideal(&self, gens: Vec<Polynomial>) -> Result<HomogeneousIdeal> {
        HomogeneousIdeal::new(self.clone(), gens)
    }

    pub fn ideal_str(&self, gens: &[&str]) -> Result<HomogeneousIdeal> {
        let gens = gens
            .iter()
            .map(|s| self.data.base.parse(s))
            .collect::<Result<Vec<_>>>()?;
        self.ideal(gens)
    }

    pub fn unit_ideal(&self) -> HomogeneousIdeal {
        self.ideal(vec![self.data.base.one()]).expect("unit ideal is valid")
    }

    pub fn zero_ideal(&self) -> HomogeneousIdeal {
        self.ideal(Vec::new()).expect("zero ideal is valid")
    }

    /// The irrelevant ideal (all variables).
    pub fn irrelevant_ideal(&self) -> HomogeneousIdeal {
        let gens = (0..self.data.base.nvars()).map(|i| self.data.base.var(i)).collect();
        self.ideal(gens).expect("variables are homogeneous")
    }
}

impl fmt::Display for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.data.j_gens.is_empty() {
            write!(f, "{}", self.data.base)
        } else {
            let js: Vec<String> = self.data.j_gens.iter().map(|g| self.data.base.display(g)).collect();
            write!(f, "{} / ({})", self.data.base, js.join(", "))
        }
    }
}

/// Homogeneous ideal of a [`GradedRing`], canonicalized by the reduced
/// Groebner basis of its preimage J + (gens) in S.
#[derive(Debug, Clone)]
pub struct HomogeneousIdeal {
    ring: GradedRing,
    gens: Vec<Polynomial>,
    gb: GroebnerBasis,
    min_gens: Vec<Polynomial>,
    min_gen_degrees: Vec<i64>,
}

impl PartialEq for HomogeneousIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gb.elements() == other.gb.elements()
    }
}

impl Eq for HomogeneousIdeal {}

impl HomogeneousIdeal {
    pub fn new(ring: GradedRing, gens: Vec<Polynomial>) -> Result<HomogeneousIdeal> {
        let base = ring.base().clone();
        for g in &gens {
            if matches!(base.homogeneity(g), Some(Homogeneity::Inhomogeneous)) {
                return Err(AlgebraError::Inhomogeneous(format!(
                    "ideal generator {} is not homogeneous",
                    base.display(g)
                )));
            }
        }
        let fm = ring.ideal_ambient();
        let mut pre: Vec<ModuleVector> = ring.j_gens().iter().map(|g| fm.single(0, g.clone())).collect();
        pre.extend(gens.iter().map(|g| fm.single(0, g.clone())));
        let gb = gb::groebner(&fm, &pre)?;
        let (min_gens, min_gen_degrees) = minimalize_ideal_gens(&ring, &gens)?;
        Ok(HomogeneousIdeal { ring, gens, gb, min_gens, min_gen_degrees })
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced basis of the preimage ideal in S (contains the data of J).
    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// A minimal homogeneous generating set over R.
    pub fn min_gens(&self) -> &[Polynomial] {
        &self.min_gens
    }

    /// Degrees d_1 <= ... <= d_c of the minimal generators.
    pub fn min_gen_degrees(&self) -> &[i64] {
        &self.min_gen_degrees
    }

    pub fn contains_elem(&self, f: &Polynomial) -> bool {
        let fm = self.ring.ideal_ambient();
        gb::member(&fm, &fm.single(0, f.clone()), &self.gb)
    }

    pub fn contains(&self, other: &HomogeneousIdeal) -> bool {
        self.ring == other.ring && other.gens.iter().all(|g| self.contains_elem(g))
    }

    pub fn is_zero(&self) -> bool {
        // the zero ideal of R: preimage equals J
        self.gb.elements() == self.ring.gb_j().elements()
    }

    pub fn is_unit(&self) -> bool {
        self.contains_elem(&self.ring.base().one())
    }

    /// I^n with I^0 the unit ideal; generators are minimalized after each
    /// squaring/multiplication step to contain growth.
    pub fn power(&self, n: u32) -> Result<HomogeneousIdeal> {
        let mut result = self.ring.unit_ideal();
        let mut base = self.clone();
        let mut n = n;
        loop {
            if n & 1 == 1 {
                result = result.multiply(&base)?;
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            base = base.multiply(&base)?;
        }
        Ok(result)
    }

    pub fn sum(&self, other: &HomogeneousIdeal) -> Result<HomogeneousIdeal> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch);
        }
        let mut gens = self.min_gens.clone();
        gens.extend(other.min_gens.iter().cloned());
        self.ring.ideal(gens)
    }

    pub fn multiply(&self, other: &HomogeneousIdeal) -> Result<HomogeneousIdeal> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch);
        }
        let base = self.ring.base();
        let mut gens = Vec::new();
        for a in &self.min_gens {
            for b in &other.min_gens {
                gens.push(base.mul(a, b));
            }
        }
        self.ring.ideal(gens)
    }

    /// Intersection, computed via syzygies on the concatenated preimage bases.
    pub fn intersect(&self, other: &HomogeneousIdeal) -> Result<HomogeneousIdeal> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch);
        }
        let fm = self.ring.ideal_ambient();
        let a: Vec<ModuleVector> = self.gb.elements().to_vec();
        let b: Vec<ModuleVector> = other.gb.elements().to_vec();
        let mut all = a.clone();
        all.extend(b.iter().cloned());
        let (_, syz) = gb::syzygies(&fm, &all)?;
        let base = self.ring.base();
        let mut gens = Vec::new();
        for s in &syz {
            let mut acc = base.zero();
            for (t, av) in a.iter().enumerate() {
                acc = base.add(&acc, &base.mul(&av.comps()[0], &s.comps()[t]));
            }
            if !acc.is_zero() {
                gens.push(acc);
            }
        }
        self.ring.ideal(gens)
    }
}

impl fmt::Display for HomogeneousIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = self.ring.base();
        let gs: Vec<String> = self.min_gens.iter().map(|g| base.display(g)).collect();
        write!(f, "({})", gs.join(", "))
    }
}

/// Greedy irredundant generating set over R; by graded Nakayama an irredundant
/// homogeneous generating set is minimal, and its degree multiset is canonical.
fn minimalize_ideal_gens(ring: &GradedRing, gens: &[Polynomial]) -> Result<(Vec<Polynomial>, Vec<i64>)> {
    let base = ring.base().clone();
    let fm = ring.ideal_ambient();
    let mut cands: Vec<Polynomial> = gens
        .iter()
        .map(|g| ring.reduce(g))
        .filter(|g| !g.is_zero())
        .collect();
    {
        let mut pre: Vec<ModuleVector> = ring.j_gens().iter().map(|g| fm.single(0, g.clone())).collect();
        pre.extend(cands.iter().map(|g| fm.single(0, g.clone())));
        let full = gb::groebner(&fm, &pre)?;
        if gb::member(&fm, &fm.single(0, base.one()), &full) {
            return Ok((vec![base.one()], vec![0]));
        }
    }
    cands.sort_by(|a, b| {
        let da = base.mono_degree(&a.leading().expect("nonzero").0);
        let db = base.mono_degree(&b.leading().expect("nonzero").0);
        da.cmp(&db)
            .then_with(|| base.mono_cmp(&b.leading().unwrap().0, &a.leading().unwrap().0))
    });
    let mut keep = vec![true; cands.len()];
    for i in (0..cands.len()).rev() {
        let mut others: Vec<ModuleVector> =
            ring.j_gens().iter().map(|g| fm.single(0, g.clone())).collect();
        for (j, c) in cands.iter().enumerate() {
            if j != i && keep[j] {
                others.push(fm.single(0, c.clone()));
            }
        }
        let gb_others = gb::groebner(&fm, &others)?;
        if gb::member(&fm, &fm.single(0, cands[i].clone()), &gb_others) {
            keep[i] = false;
        }
    }
    let kept: Vec<Polynomial> = cands
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(c, _)| c)
        .collect();
    let mut degrees: Vec<i64> = kept
        .iter()
        .map(|g| base.mono_degree(&g.leading().expect("nonzero").0))
        .collect();
    degrees.sort_unstable();
    Ok((kept, degrees))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_4_2_ring() -> GradedRing {
        GradedRing::build(&[("x", 1), ("y", 1)], Field::Rationals, &["x*y"]).unwrap()
    }

    fn qxy() -> GradedRing {
        GradedRing::build(&[("x", 1), ("y", 1)], Field::Rationals, &[]).unwrap()
    }

    #[test]
    fn make_ring_validates() {
        let r = example_4_2_ring();
        assert!(r.reduce(&r.base().parse("x*y").unwrap()).is_zero());
        assert!(qxy().is_polynomial_ring());
        let bad = GradedRing::build(&[("x", 1), ("y", 1)], Field::Rationals, &["x + y^2"]);
        assert!(matches!(bad, Err(AlgebraError::Inhomogeneous(_))));
        let bad_weight = PolyRing::new(
            vec!["x".into()],
            vec![0],
            Field::Rationals,
            MonomialOrder::default(),
        );
        assert!(matches!(bad_weight, Err(AlgebraError::NonpositiveWeight(0))));
    }

    #[test]
    fn principal_power() {
        let r = example_4_2_ring();
        let i = r.ideal_str(&["y"]).unwrap();
        let i3 = i.power(3).unwrap();
        assert_eq!(i3.min_gens().len(), 1);
        assert_eq!(i3.min_gen_degrees(), &[3]);
        assert!(i3.contains_elem(&r.base().parse("y^3").unwrap()));
        assert!(!i3.contains_elem(&r.base().parse("y^2").unwrap()));
    }

    #[test]
    fn square_of_two_generated() {
        let r = qxy();
        let i = r.ideal_str(&["x^2", "x*y"]).unwrap();
        let sq = i.power(2).unwrap();
        let expect = r.ideal_str(&["x^4", "x^3*y", "x^2*y^2"]).unwrap();
        assert_eq!(sq, expect);
        assert_eq!(sq.min_gen_degrees(), &[4, 4, 4]);
    }

    #[test]
    fn zeroth_power_is_unit() {
        let r = qxy();
        let i = r.ideal_str(&["x^2"]).unwrap();
        let one = i.power(0).unwrap();
        assert!(one.is_unit());
        assert_eq!(one.min_gen_degrees(), &[0]);
    }

    #[test]
    fn intersection_product_sum() {
        let r = qxy();
        let ix = r.ideal_str(&["x"]).unwrap();
        let iy = r.ideal_str(&["y"]).unwrap();
        assert_eq!(ix.intersect(&iy).unwrap(), r.ideal_str(&["x*y"]).unwrap());
        let ixy = r.ideal_str(&["x", "y"]).unwrap();
        assert_eq!(ix.multiply(&ixy).unwrap(), r.ideal_str(&["x^2", "x*y"]).unwrap());
        let a = r.ideal_str(&["x^2", "y"]).unwrap();
        assert_eq!(a.sum(&ix).unwrap(), ixy);
        assert_eq!(a.sum(&ix).unwrap().min_gen_degrees(), &[1, 1]);
    }

    #[test]
    fn minimal_generators() {
        let r = qxy();
        let i = r.ideal_str(&["x^2", "x*y", "x^3"]).unwrap();
        assert_eq!(i.min_gen_degrees(), &[2, 2]);
        let r2 = example_4_2_ring();
        assert_eq!(r2.ideal_str(&["y"]).unwrap().min_gen_degrees(), &[1]);
        assert_eq!(qxy().ideal_str(&["x^2"]).unwrap().min_gen_degrees(), &[2]);
    }

    #[test]
    fn power_additivity() {
        let r = example_4_2_ring();
        let i = r.ideal_str(&["y", "x^2"]).unwrap();
        for (m, n) in [(1u32, 1u32), (1, 2), (2, 2), (2, 3)] {
            let lhs = i.power(m + n).unwrap();
            let rhs = i.power(m).unwrap().multiply(&i.power(n).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn intersection_bounds() {
        let r = qxy();
        let a = r.ideal_str(&["x^2", "y^3"]).unwrap();
        let b = r.ideal_str(&["x*y"]).unwrap();
        let cap = a.intersect(&b).unwrap();
        assert!(a.contains(&cap));
        assert!(b.contains(&cap));
        assert!(cap.contains(&a.multiply(&b).unwrap()));
    }
}
