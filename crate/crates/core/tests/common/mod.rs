//! Shared oracle helpers for the integration suites.
//!
//! The Hilbert oracle here is deliberately independent of the Groebner path:
//! it spans graded pieces by brute-force monomial multiples and row-reduces
//! over the full monomial basis of the ambient component, never consulting a
//! basis of leading terms.

#![allow(dead_code)]

use gradua_core::gb::{FreeModule, ModuleVector};
use gradua_core::gmod::SubquotientModule;
use gradua_core::gring::GradedRing;
use gradua_core::poly::Monomial;
use gradua_core::scalars::{Field, FieldElem};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Row-reduce over the field; returns the rank.
fn rank_of_rows(field: &Field, mut rows: Vec<Vec<FieldElem>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivot_rows: Vec<(usize, Vec<FieldElem>)> = Vec::new();
    for row in rows.iter_mut() {
        let mut r = row.clone();
        for (pc, pr) in &pivot_rows {
            if !field.is_zero(&r[*pc]) {
                let c = r[*pc].clone();
                for (x, y) in r.iter_mut().zip(pr) {
                    *x = field.sub(x, &field.mul(&c, y));
                }
            }
        }
        if let Some(pc) = (0..width).find(|j| !field.is_zero(&r[*j])) {
            let inv = field.inv(&r[pc]).unwrap();
            for x in r.iter_mut() {
                *x = field.mul(x, &inv);
            }
            pivot_rows.push((pc, r));
            rank += 1;
        }
    }
    rank
}

/// Dimension of the degree-n piece of the span of `gens` inside `fm`,
/// computed over the full monomial basis of the ambient component.
pub fn span_dim_oracle(fm: &FreeModule, gens: &[ModuleVector], n: i64) -> usize {
    let ring = fm.ring();
    let field = ring.field();
    // ambient basis of F_n: (slot, monomial) with deg m = n + twist(slot)
    let mut columns: Vec<(usize, Monomial)> = Vec::new();
    for slot in 0..fm.rank() {
        for m in ring.monomials_of_degree(n + fm.twists()[slot]) {
            columns.push((slot, m));
        }
    }
    if columns.is_empty() {
        return 0;
    }
    let mut rows = Vec::new();
    for g in gens {
        let dg = match fm.degree(g).expect("homogeneous") {
            Some(d) => d,
            None => continue,
        };
        for m in ring.monomials_of_degree(n - dg) {
            let prod = fm.mul_term(g, &m, &field.one());
            let mut row = vec![field.zero(); columns.len()];
            for (slot, comp) in prod.comps().iter().enumerate() {
                for (mono, c) in comp.terms() {
                    let idx = columns
                        .iter()
                        .position(|(s, cm)| *s == slot && cm == mono)
                        .expect("monomial of the right degree");
                    row[idx] = c.clone();
                }
            }
            rows.push(row);
        }
    }
    rank_of_rows(field, rows)
}

/// Hilbert value of a subquotient by the pure linear-algebra route:
/// dim (U+V)_n - dim V_n.
pub fn hilbert_oracle(m: &SubquotientModule, n: i64) -> usize {
    let mut uv = m.u_gens().to_vec();
    uv.extend(m.v_gens().iter().cloned());
    span_dim_oracle(m.ambient(), &uv, n) - span_dim_oracle(m.ambient(), m.v_gens(), n)
}

/// Degreewise membership oracle: v lies in the span of `gens` at its degree
/// iff adjoining it does not raise the rank.
pub fn member_oracle(fm: &FreeModule, v: &ModuleVector, gens: &[ModuleVector]) -> bool {
    if v.is_zero() {
        return true;
    }
    let n = fm.degree(v).expect("homogeneous").expect("nonzero");
    let before = span_dim_oracle(fm, gens, n);
    let mut with = gens.to_vec();
    with.push(v.clone());
    span_dim_oracle(fm, &with, n) == before
}

/// All nonzero homogeneous elements of M_n over a finite field, as ambient
/// representatives (coefficient combinations of a graded-piece basis).
pub fn enumerate_piece(m: &SubquotientModule, n: i64) -> Vec<ModuleVector> {
    let piece = m.graded_piece(n);
    let field = m.ring().base().field();
    let elems = field.enumerate().expect("finite field required");
    let fm = m.ambient();
    let mut out = Vec::new();
    let dim = piece.basis.len();
    if dim == 0 {
        return out;
    }
    let mut counter = vec![0usize; dim];
    loop {
        // advance odometer
        let mut i = 0;
        loop {
            if i == dim {
                return out;
            }
            counter[i] += 1;
            if counter[i] < elems.len() {
                break;
            }
            counter[i] = 0;
            i += 1;
        }
        let mut acc = fm.zero_vector();
        for (j, idx) in counter.iter().enumerate() {
            if *idx != 0 {
                acc = fm.add(&acc, &fm.scale(&piece.basis[j], &elems[*idx]));
            }
        }
        if !acc.is_zero() {
            out.push(acc);
        }
    }
}

/// Definitional local v-number by exhaustive search over a finite field:
/// least n in [lo, hi] admitting x in M_n with (0 :_R x) = p.
pub fn local_v_enumeration_oracle(
    m: &SubquotientModule,
    p: &gradua_core::gring::HomogeneousIdeal,
    lo: i64,
    hi: i64,
) -> Option<i64> {
    for n in lo..=hi {
        for x in enumerate_piece(m, n) {
            let ann = m.element_annihilator(&x).expect("colon computes");
            if ann == *p {
                return Some(n);
            }
        }
    }
    None
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random monomial of weighted degree <= max_deg (and >= 1) in the ring.
pub fn random_monomial(rng: &mut ChaCha8Rng, ring: &GradedRing, max_deg: i64) -> Monomial {
    let base = ring.base();
    loop {
        let degree = rng.gen_range(1..=max_deg);
        let monos = base.monomials_of_degree(degree);
        if !monos.is_empty() {
            return monos[rng.gen_range(0..monos.len())].clone();
        }
    }
}

/// Random proper nonzero monomial ideal with `count` generators.
pub fn random_monomial_ideal(
    rng: &mut ChaCha8Rng,
    ring: &GradedRing,
    count: usize,
    max_deg: i64,
) -> gradua_core::gring::HomogeneousIdeal {
    loop {
        let gens: Vec<_> = (0..count)
            .map(|_| ring.base().monomial(random_monomial(rng, ring, max_deg)))
            .collect();
        let ideal = ring.ideal(gens).expect("monomials are homogeneous");
        if !ideal.is_unit() && !ideal.is_zero() {
            return ideal;
        }
    }
}
