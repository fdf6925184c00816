//! Graded free resolutions of finitely presented modules over R = S/J,
//! truncated at a requested homological length.
//!
//! Each step computes the kernel of the previous map as syzygies over S with
//! the J-relations adjoined, then presents it by (optionally minimal)
//! generators. Choosing minimal generators at every step yields a minimal
//! resolution: all matrix entries then lie in the irrelevant ideal.

use crate::error::{AlgebraError, Result};
use crate::gb::{FreeModule, ModuleVector};
use crate::gmod::{preimage_span, GradedMap, SubquotientModule};
use crate::gring::GradedRing;

/// A truncated graded free resolution F_{k_max} -> ... -> F_1 -> F_0 ->> M.
#[derive(Debug, Clone)]
pub struct FreeResolution {
    ring: GradedRing,
    module: SubquotientModule,
    /// Images in M's ambient of the F_0 basis vectors.
    augmentation: Vec<ModuleVector>,
    f0: FreeModule,
    /// maps[k]: F_{k+1} -> F_k.
    maps: Vec<GradedMap>,
    minimal: bool,
    /// True when the last computed kernel was zero, so the resolution is the
    /// whole (finite) resolution rather than a truncation.
    complete: bool,
}

impl FreeResolution {
    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn module(&self) -> &SubquotientModule {
        &self.module
    }

    pub fn augmentation(&self) -> &[ModuleVector] {
        &self.augmentation
    }

    pub fn maps(&self) -> &[GradedMap] {
        &self.maps
    }

    pub fn minimal(&self) -> bool {
        self.minimal
    }

    pub fn complete(&self) -> bool {
        self.complete
    }

    /// Number of free modules present: F_0 .. F_{length()-1}.
    pub fn length(&self) -> usize {
        self.maps.len() + 1
    }

    /// The free module F_k, or `None` past the computed (or finite) end.
    pub fn free_module(&self, k: usize) -> Option<&FreeModule> {
        if k == 0 {
            Some(&self.f0)
        } else {
            self.maps.get(k - 1).map(|d| d.source())
        }
    }

    /// Twist tuples per step, in the R(t) notation.
    pub fn twist_table(&self) -> Vec<Vec<i64>> {
        (0..self.length())
            .map(|k| self.free_module(k).expect("within length").twists().to_vec())
            .collect()
    }

    /// Whether d_k ∘ d_{k+1} lands in J·F_{k-1} (zero over R), for every k.
    pub fn composites_vanish(&self) -> bool {
        for k in 1..self.maps.len() {
            let dk = &self.maps[k - 1];
            let dk1 = &self.maps[k];
            let target = dk.target().clone();
            let test = SubquotientModule::zero(&self.ring, target);
            for col in dk1.cols() {
                let composite = dk.apply(col);
                if !test.contains_vector(&composite) {
                    return false;
                }
            }
        }
        // also check F_1 -> F_0 ->> M
        if let Some(d1) = self.maps.first() {
            for col in d1.cols() {
                let mut image = self.module.ambient().zero_vector();
                for (j, aug) in self.augmentation.iter().enumerate() {
                    image = self
                        .module
                        .ambient()
                        .add(&image, &self.module.ambient().mul_poly(aug, &col.comps()[j]));
                }
                let in_v = self
                    .module
                    .submodule(vec![])
                    .expect("zero submodule")
                    .contains_vector(&image);
                if !in_v {
                    return false;
                }
            }
        }
        true
    }

    /// Homology module at F_k for 1 <= k <= maps.len()-1; exactness there is
    /// the defining property of a resolution.
    pub fn homology_at(&self, k: usize) -> Result<SubquotientModule> {
        if k == 0 || k >= self.maps.len() {
            return Err(AlgebraError::EmptyRange);
        }
        let dk = &self.maps[k - 1]; // F_k -> F_{k-1}
        let dk1 = &self.maps[k]; // F_{k+1} -> F_k
        let fk = dk.source().clone();
        let free_fk = SubquotientModule::free(&self.ring, fk.twists().to_vec());
        let ker = crate::gmod::kernel(dk, &free_fk)?;
        let denom: Vec<ModuleVector> = dk1.cols().to_vec();
        SubquotientModule::new(self.ring.clone(), fk, ker.u_gens().to_vec(), denom)
    }

    /// All nonzero entries of all maps have positive degree (no units); true
    /// for resolutions built with minimal generator selection.
    pub fn entries_in_irrelevant_ideal(&self) -> bool {
        self.maps.iter().all(|d| {
            d.cols().iter().all(|col| {
                col.comps().iter().all(|p| {
                    p.terms().iter().all(|(m, _)| !m.is_one())
                })
            })
        })
    }
}

/// Resolve `m` by iterated syzygies to homological length `k_max`.
pub fn free_resolution(m: &SubquotientModule, k_max: usize, minimal: bool) -> Result<FreeResolution> {
    let ring = m.ring().clone();
    let base = ring.base().clone();

    let gens0: Vec<ModuleVector> = if minimal {
        m.minimal_generators()
    } else {
        m.u_gens().iter().filter(|g| !g.is_zero()).cloned().collect()
    };
    let mut twists0 = Vec::with_capacity(gens0.len());
    for g in &gens0 {
        let d = m.ambient().degree(g)?.expect("nonzero generator");
        twists0.push(-d);
    }
    let f0 = FreeModule::new(base.clone(), twists0);

    let mut maps: Vec<GradedMap> = Vec::new();
    let mut complete = false;

    // kernel of F_0 ->> M: coefficient vectors landing in V_M
    let mut current_free = f0.clone();
    let mut current_cols: Vec<ModuleVector> = gens0.clone();
    let mut current_target = m.ambient().clone();
    let mut current_v: Vec<ModuleVector> = m.v_gens().to_vec();

    for _ in 0..k_max {
        if current_cols.is_empty() {
            complete = true;
            break;
        }
        let ker_gens = preimage_span(&current_free, &current_cols, &current_target, &current_v)?;
        let ker_mod = SubquotientModule::new(ring.clone(), current_free.clone(), ker_gens, Vec::new())?;
        let next_gens = if minimal {
            ker_mod.minimal_generators()
        } else {
            ker_mod.u_gens().to_vec()
        };
        if next_gens.is_empty() {
            complete = true;
            break;
        }
        let mut twists = Vec::with_capacity(next_gens.len());
        for g in &next_gens {
            let d = current_free.degree(g)?.expect("nonzero generator");
            twists.push(-d);
        }
        let next_free = FreeModule::new(base.clone(), twists);
        let map = GradedMap::new(next_free.clone(), current_free.clone(), next_gens.clone())?;
        maps.push(map);

        current_target = current_free;
        current_v = SubquotientModule::zero(&ring, current_target.clone()).v_gens().to_vec();
        current_free = next_free;
        current_cols = next_gens;
    }

    Ok(FreeResolution { ring, module: m.clone(), augmentation: gens0, f0, maps, minimal, complete })
}
