//! The asymptotic v-function engine: per-n computation of the module
//! families, exact eventual-linearity detection, Artin-Rees offset
//! estimation, and theorem-verification drivers.
//!
//! Linearity is certified only on the computed window: a fit (a, b, n_stab)
//! means v(n) = a·n + b holds exactly for every computed n >= n_stab, with a
//! suffix at least `min_suffix` long. The infinite-n claims of the source
//! results are not verifiable by finite computation.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::gmod::{ExtInt, SubquotientModule};
use crate::gring::HomogeneousIdeal;
use crate::homology::{self, artin_rees_offset};
use crate::resolve::{free_resolution, FreeResolution};
use crate::vnum::{self, PrimeCandidate};

/// What to apply to each per-n module of the family.
#[derive(Debug, Clone)]
pub enum FamilyFunctor {
    /// The module itself.
    Raw,
    /// Ext^k(L, -).
    Ext { l: SubquotientModule, k: usize },
    /// Tor_k(L, -).
    Tor { l: SubquotientModule, k: usize },
}

/// The per-n module family.
#[derive(Debug, Clone)]
pub enum FamilyVariant {
    /// M/I^n N for a submodule N of M (same denominator).
    Quotient { m: SubquotientModule, n_sub: SubquotientModule },
    /// I^n M / I^n N.
    PowerQuotient { m: SubquotientModule, n_sub: SubquotientModule },
    /// (U + I^n V)/I^n W for submodules of one module with W ⊆ V.
    Uvw { u: SubquotientModule, v: SubquotientModule, w: SubquotientModule },
}

/// A complete family descriptor: functor ∘ variant with the driving ideal.
#[derive(Debug, Clone)]
pub struct VFamily {
    pub functor: FamilyFunctor,
    pub variant: FamilyVariant,
    pub ideal: HomogeneousIdeal,
}

impl VFamily {
    pub fn validate(&self) -> Result<()> {
        match &self.variant {
            FamilyVariant::Quotient { m, n_sub } | FamilyVariant::PowerQuotient { m, n_sub } => {
                if !m.contains(n_sub) {
                    return Err(AlgebraError::NotSubmodule("N must be a submodule of M".into()));
                }
                if m.ring() != self.ideal.ring() {
                    return Err(AlgebraError::RingMismatch);
                }
            }
            FamilyVariant::Uvw { u, v, w } => {
                if !v.contains(w) {
                    return Err(AlgebraError::NotSubmodule("W must lie inside V".into()));
                }
                if u.ring() != self.ideal.ring() || v.ring() != self.ideal.ring() {
                    return Err(AlgebraError::RingMismatch);
                }
            }
        }
        if let FamilyFunctor::Ext { l, .. } | FamilyFunctor::Tor { l, .. } = &self.functor {
            if l.ring() != self.ideal.ring() {
                return Err(AlgebraError::RingMismatch);
            }
        }
        Ok(())
    }

    /// The target module of the variant at index n.
    pub fn module_at(&self, n: u32) -> Result<SubquotientModule> {
        let i_n = self.ideal.power(n)?;
        match &self.variant {
            FamilyVariant::Quotient { m, n_sub } => {
                let inn = i_n.apply_to_module(n_sub)?;
                m.quotient_by(&inn)
            }
            FamilyVariant::PowerQuotient { m, n_sub } => {
                let num = i_n.apply_to_module(m)?;
                let den = i_n.apply_to_module(n_sub)?;
                num.quotient_by(&den)
            }
            FamilyVariant::Uvw { u, v, w } => {
                let inv = i_n.apply_to_module(v)?;
                let inw = i_n.apply_to_module(w)?;
                u.sum(&inv)?.quotient_by(&inw)
            }
        }
    }

    /// H_n: the functor applied to the variant's module.
    fn evaluate(&self, res: Option<&FreeResolution>, n: u32) -> Result<SubquotientModule> {
        let target = self.module_at(n)?;
        match &self.functor {
            FamilyFunctor::Raw => Ok(target),
            FamilyFunctor::Ext { k, .. } => {
                homology::ext_with_resolution(res.expect("resolution prepared"), &target, *k)
            }
            FamilyFunctor::Tor { k, .. } => {
                homology::tor_with_resolution(res.expect("resolution prepared"), &target, *k)
            }
        }
    }

    /// The module H whose colon hypothesis (0:_H I) = 0 the theorems require;
    /// `None` when the matching statement has no such hypothesis.
    pub fn hypothesis_module(&self) -> Result<Option<SubquotientModule>> {
        match (&self.functor, &self.variant) {
            (FamilyFunctor::Ext { l, k }, FamilyVariant::Quotient { m, .. }) => {
                Ok(Some(homology::ext(l, m, *k)?))
            }
            (FamilyFunctor::Tor { l, k }, FamilyVariant::Quotient { m, .. }) => {
                Ok(Some(homology::tor(l, m, *k)?))
            }
            (FamilyFunctor::Raw, FamilyVariant::Quotient { m, .. }) => Ok(Some(m.clone())),
            (FamilyFunctor::Raw, FamilyVariant::Uvw { u, .. }) => Ok(Some(u.clone())),
            _ => Ok(None),
        }
    }

    pub fn describe(&self) -> String {
        let functor = match &self.functor {
            FamilyFunctor::Raw => "module".to_string(),
            FamilyFunctor::Ext { k, .. } => format!("ext^{k}"),
            FamilyFunctor::Tor { k, .. } => format!("tor_{k}"),
        };
        let variant = match &self.variant {
            FamilyVariant::Quotient { .. } => "M/I^nN",
            FamilyVariant::PowerQuotient { .. } => "I^nM/I^nN",
            FamilyVariant::Uvw { .. } => "(U+I^nV)/I^nW",
        };
        format!("{functor} of {variant}")
    }
}

/// One computed row of a v-function sweep.
#[derive(Debug, Clone, Serialize)]
pub struct VRow {
    pub n: u32,
    pub v: ExtInt,
    pub indeg: ExtInt,
    pub ass: Vec<String>,
    pub v_locals: Vec<(String, i64)>,
    pub ass_complete: bool,
}

/// An exact linear law v(n) = a·n + b holding for every computed n >= n_stab.
/// b = infinity encodes an eventually-zero family (a is 0 there).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LinearFit {
    pub a: i64,
    pub b: ExtInt,
    pub n_stab: i64,
}

/// Report of a whole sweep.
#[derive(Debug, Clone, Serialize)]
pub struct VFunctionReport {
    pub family: String,
    pub ideal_degrees: Vec<i64>,
    pub min_suffix: usize,
    pub rows: Vec<VRow>,
    pub fit: Option<LinearFit>,
    pub indeg_fit: Option<LinearFit>,
    pub vp_fits: Vec<(String, Option<LinearFit>)>,
    pub slope_check: Option<bool>,
    pub warnings: Vec<String>,
}

/// Exact-fit suffix detection. Returns the longest suffix of length at least
/// `min_suffix` on which the values are an affine function of n with integer
/// slope, or all infinite; least-squares is never used.
pub fn fit_linear(values: &[(i64, ExtInt)], min_suffix: usize) -> Option<LinearFit> {
    let ms = min_suffix.max(2);
    if values.len() < ms {
        return None;
    }
    let (_, last_v) = *values.last().expect("nonempty");
    match last_v {
        ExtInt::Infinity => {
            let run = values.iter().rev().take_while(|(_, v)| *v == ExtInt::Infinity).count();
            if run >= ms {
                Some(LinearFit { a: 0, b: ExtInt::Infinity, n_stab: values[values.len() - run].0 })
            } else {
                None
            }
        }
        ExtInt::Int(vn) => {
            let (n_last, _) = *values.last().expect("nonempty");
            let mut slope: Option<i64> = None;
            let mut start = values.len() - 1;
            for i in (0..values.len() - 1).rev() {
                let (n0, v0) = values[i];
                let (n1, v1) = values[i + 1];
                let v0 = match v0 {
                    ExtInt::Int(x) => x,
                    ExtInt::Infinity => break,
                };
                let v1 = match v1 {
                    ExtInt::Int(x) => x,
                    ExtInt::Infinity => unreachable!("suffix is finite"),
                };
                let dn = n1 - n0;
                if dn == 0 || (v1 - v0) % dn != 0 {
                    break;
                }
                let a = (v1 - v0) / dn;
                match slope {
                    None => {
                        slope = Some(a);
                        start = i;
                    }
                    Some(s) if s == a => start = i,
                    Some(_) => break,
                }
            }
            let len = values.len() - start;
            match slope {
                Some(a) if len >= ms => {
                    Some(LinearFit { a, b: ExtInt::Int(vn - a * n_last), n_stab: values[start].0 })
                }
                _ => None,
            }
        }
    }
}

/// Sweep the family over [n_min, n_max], fit v and indeg and each persistent
/// local v-number, and check the fitted slope against the generator degrees.
pub fn v_function(
    family: &VFamily,
    n_min: u32,
    n_max: u32,
    min_suffix: usize,
    extra_primes: &[PrimeCandidate],
    parallel: bool,
) -> Result<VFunctionReport> {
    if n_max < n_min {
        return Err(AlgebraError::EmptyRange);
    }
    family.validate()?;
    let res = match &family.functor {
        FamilyFunctor::Ext { l, k } | FamilyFunctor::Tor { l, k } => {
            Some(free_resolution(l, k + 2, true)?)
        }
        FamilyFunctor::Raw => None,
    };
    let ns: Vec<u32> = (n_min..=n_max).collect();
    let compute = |n: &u32| -> Result<VRow> {
        let h_n = family.evaluate(res.as_ref(), *n)?;
        let rec = vnum::v_number(&h_n, extra_primes)?;
        let mut ass = rec.ass_displays();
        ass.sort();
        Ok(VRow {
            n: *n,
            v: rec.v,
            indeg: rec.indeg,
            ass,
            v_locals: rec.v_locals.iter().map(|(p, v)| (p.display(), *v)).collect(),
            ass_complete: rec.ass_complete,
        })
    };
    let rows: Vec<VRow> = if parallel {
        ns.par_iter().map(compute).collect::<Result<Vec<_>>>()?
    } else {
        ns.iter().map(compute).collect::<Result<Vec<_>>>()?
    };

    let v_seq: Vec<(i64, ExtInt)> = rows.iter().map(|r| (r.n as i64, r.v)).collect();
    let fit = fit_linear(&v_seq, min_suffix);
    let indeg_seq: Vec<(i64, ExtInt)> = rows.iter().map(|r| (r.n as i64, r.indeg)).collect();
    let indeg_fit = fit_linear(&indeg_seq, min_suffix);

    // persistent local v-numbers: fit over the longest trailing run in which
    // the prime occurs
    let mut prime_names: Vec<String> = Vec::new();
    for r in &rows {
        for (p, _) in &r.v_locals {
            if !prime_names.contains(p) {
                prime_names.push(p.clone());
            }
        }
    }
    let mut vp_fits = Vec::new();
    for p in prime_names {
        let trailing: Vec<(i64, ExtInt)> = rows
            .iter()
            .rev()
            .map_while(|r| {
                r.v_locals
                    .iter()
                    .find(|(q, _)| *q == p)
                    .map(|(_, v)| (r.n as i64, ExtInt::Int(*v)))
            })
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .collect();
        let f = fit_linear(&trailing, min_suffix);
        vp_fits.push((p, f));
    }

    let slope_check = fit.and_then(|f| match f.b {
        ExtInt::Int(_) => Some(family.ideal.min_gen_degrees().contains(&f.a)),
        ExtInt::Infinity => None,
    });

    let mut warnings = Vec::new();
    if rows.iter().any(|r| !r.ass_complete) {
        warnings.push("associated-prime search was candidates-only for some rows".to_string());
    }
    if fit.is_none() {
        warnings.push(format!("no stable linear law on window [{n_min}, {n_max}]"));
    }

    Ok(VFunctionReport {
        family: family.describe(),
        ideal_degrees: family.ideal.min_gen_degrees().to_vec(),
        min_suffix,
        rows,
        fit,
        indeg_fit,
        vp_fits,
        slope_check,
        warnings,
    })
}

/// Windowed Artin-Rees estimation record.
#[derive(Debug, Clone, Serialize)]
pub struct ArtinReesEstimate {
    pub n0: u32,
    pub window: u32,
    pub verified_range: (u32, u32),
}

/// Least n0 whose window passes the intersection identity
/// I^n C' ∩ N = I^{n-n0}(I^{n0} C' ∩ N); see the module notes on windowed
/// certification.
pub fn artin_rees_estimate(
    cprime: &SubquotientModule,
    image: &SubquotientModule,
    ideal: &HomogeneousIdeal,
    window: u32,
    n_cap: u32,
) -> Result<ArtinReesEstimate> {
    let n0 = artin_rees_offset(cprime, image, ideal, window, n_cap)?;
    Ok(ArtinReesEstimate { n0, window, verified_range: (n0 + 1, n0 + window) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

/// Outcome of checking a sweep against the matching linearity statement.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremVerdict {
    /// (0 :_H I) = 0 for the family's hypothesis module, when one applies.
    pub colon_hypothesis: CheckStatus,
    pub colon_is_zero: Option<bool>,
    /// Fitted slope lies among the minimal generator degrees of I.
    pub slope_in_degrees: CheckStatus,
    /// Ass(H_n) constant across the fitted suffix.
    pub ass_stable_on_suffix: CheckStatus,
    pub fit_found: bool,
}

impl TheoremVerdict {
    /// A verdict is consistent with the statements when no applicable check
    /// failed; a failed hypothesis makes the conclusion checks vacuous.
    pub fn consistent(&self) -> bool {
        if self.colon_hypothesis == CheckStatus::Fail {
            return true;
        }
        self.slope_in_degrees != CheckStatus::Fail && self.ass_stable_on_suffix != CheckStatus::Fail
    }

    pub fn hypothesis_violated(&self) -> bool {
        self.colon_hypothesis == CheckStatus::Fail
    }
}

/// Check a finished sweep report: the colon hypothesis on H, slope membership
/// when the hypothesis holds, and Ass-stability across the fitted suffix.
pub fn verify_theorem(family: &VFamily, report: &VFunctionReport) -> Result<TheoremVerdict> {
    let hypothesis = family.hypothesis_module()?;
    let (colon_hypothesis, colon_is_zero) = match &hypothesis {
        Some(h) => {
            let colon = h.colon_ann(&family.ideal)?;
            let ok = colon.is_zero();
            (if ok { CheckStatus::Pass } else { CheckStatus::Fail }, Some(ok))
        }
        None => (CheckStatus::NotApplicable, None),
    };

    let slope_in_degrees = match report.fit {
        Some(LinearFit { a, b: ExtInt::Int(_), .. }) => {
            if colon_hypothesis == CheckStatus::Fail {
                CheckStatus::NotApplicable
            } else {
                let degrees = family.ideal.min_gen_degrees();
                if degrees.contains(&a) {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                }
            }
        }
        _ => CheckStatus::NotApplicable,
    };

    let ass_stable_on_suffix = match report.fit {
        Some(fit) => {
            let suffix: Vec<&VRow> =
                report.rows.iter().filter(|r| (r.n as i64) >= fit.n_stab).collect();
            let stable = suffix.windows(2).all(|w| w[0].ass == w[1].ass);
            if stable {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            }
        }
        None => CheckStatus::NotApplicable,
    };

    Ok(TheoremVerdict {
        colon_hypothesis,
        colon_is_zero,
        slope_in_degrees,
        ass_stable_on_suffix,
        fit_found: report.fit.is_some(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gb::FreeModule;
    use crate::gring::GradedRing;
    use crate::scalars::Field;

    fn r_xy_mod_xy() -> GradedRing {
        GradedRing::build(&[("x", 1), ("y", 1)], Field::Rationals, &["x*y"]).unwrap()
    }

    fn cyclic(ring: &GradedRing, rels: &[&str]) -> SubquotientModule {
        let i = ring.ideal_str(rels).unwrap();
        SubquotientModule::cyclic(ring, &i).unwrap()
    }

    fn whole_as_submodule(ring: &GradedRing) -> (SubquotientModule, SubquotientModule) {
        let free = SubquotientModule::free(ring, vec![0]);
        let sub = free.submodule(free.u_gens().to_vec()).unwrap();
        (free, sub)
    }

    #[test]
    fn fit_linear_examples() {
        let seq: Vec<(i64, ExtInt)> =
            [5, 3, 2, 3, 4, 5, 6].iter().enumerate().map(|(i, v)| (i as i64 + 1, ExtInt::Int(*v))).collect();
        let fit = fit_linear(&seq, 4).unwrap();
        assert_eq!((fit.a, fit.b, fit.n_stab), (1, ExtInt::Int(-1), 3));

        let inf: Vec<(i64, ExtInt)> = (1..=5).map(|n| (n, ExtInt::Infinity)).collect();
        let fit = fit_linear(&inf, 4).unwrap();
        assert_eq!((fit.a, fit.b), (0, ExtInt::Infinity));

        let geo: Vec<(i64, ExtInt)> =
            [1, 2, 4, 8].iter().enumerate().map(|(i, v)| (i as i64 + 1, ExtInt::Int(*v))).collect();
        assert!(fit_linear(&geo, 3).is_none());
    }

    #[test]
    fn ext_sweep_on_the_hypersurface() {
        // v(Ext^1(L, R/(y^n))) = n - 2 with slope 1
        let r = r_xy_mod_xy();
        let l = cyclic(&r, &["x"]);
        let (free, sub) = whole_as_submodule(&r);
        let iy = r.ideal_str(&["y"]).unwrap();
        let family = VFamily {
            functor: FamilyFunctor::Ext { l, k: 1 },
            variant: FamilyVariant::Quotient { m: free, n_sub: sub },
            ideal: iy,
        };
        let report = v_function(&family, 2, 6, 4, &[], false).unwrap();
        let vs: Vec<ExtInt> = report.rows.iter().map(|r| r.v).collect();
        assert_eq!(vs, (2..=6).map(|n| ExtInt::Int(n - 2)).collect::<Vec<_>>());
        let fit = report.fit.unwrap();
        assert_eq!((fit.a, fit.b), (1, ExtInt::Int(-2)));
        assert_eq!(report.slope_check, Some(true));
        let verdict = verify_theorem(&family, &report).unwrap();
        assert_eq!(verdict.colon_hypothesis, CheckStatus::Pass);
        assert_eq!(verdict.slope_in_degrees, CheckStatus::Pass);
        assert_eq!(verdict.ass_stable_on_suffix, CheckStatus::Pass);
        assert!(verdict.consistent());
    }

    #[test]
    fn vanishing_family_fits_infinity() {
        // Ext^2 over the hypersurface vanishes for n >= 2
        let r = r_xy_mod_xy();
        let l = cyclic(&r, &["x"]);
        let (free, sub) = whole_as_submodule(&r);
        let iy = r.ideal_str(&["y"]).unwrap();
        let family = VFamily {
            functor: FamilyFunctor::Ext { l, k: 2 },
            variant: FamilyVariant::Quotient { m: free, n_sub: sub },
            ideal: iy,
        };
        let report = v_function(&family, 2, 6, 4, &[], false).unwrap();
        let fit = report.fit.unwrap();
        assert_eq!(fit.b, ExtInt::Infinity);
        assert_eq!(report.slope_check, None);
    }

    #[test]
    fn hypothesis_violation_gives_constant_v() {
        // M = N = (y): Ext^2(L, M/I^nN) = ((y)/(y^2))(+2), v = -1 constant
        let r = r_xy_mod_xy();
        let l = cyclic(&r, &["x"]);
        let ambient = FreeModule::new(r.base().clone(), vec![0]);
        let m = SubquotientModule::new(
            r.clone(),
            ambient.clone(),
            vec![ambient.single(0, r.base().parse("y").unwrap())],
            vec![],
        )
        .unwrap();
        let n_sub = m.submodule(m.u_gens().to_vec()).unwrap();
        let iy = r.ideal_str(&["y"]).unwrap();
        let family = VFamily {
            functor: FamilyFunctor::Ext { l, k: 2 },
            variant: FamilyVariant::Quotient { m, n_sub },
            ideal: iy,
        };
        let report = v_function(&family, 1, 5, 4, &[], false).unwrap();
        let vs: Vec<ExtInt> = report.rows.iter().map(|r| r.v).collect();
        assert_eq!(vs, vec![ExtInt::Int(-1); 5]);
        let fit = report.fit.unwrap();
        assert_eq!((fit.a, fit.b), (0, ExtInt::Int(-1)));
        assert_eq!(report.slope_check, Some(false), "slope 0 is not a generator degree");
        let verdict = verify_theorem(&family, &report).unwrap();
        assert!(verdict.hypothesis_violated());
        assert!(verdict.consistent(), "a violated hypothesis makes the conclusion vacuous");
    }

    #[test]
    fn uvw_family_of_the_first_example() {
        // U = V = W = R/(XY^3) in Q[X,Y], I = (X^2): v = 3, v_p = 3, v_m = 2n+1
        let q = GradedRing::build(&[("x", 1), ("y", 1)], Field::Rationals, &[]).unwrap();
        let z = cyclic(&q, &["x*y^3"]);
        let sub = z.submodule(z.u_gens().to_vec()).unwrap();
        let i = q.ideal_str(&["x^2"]).unwrap();
        let family = VFamily {
            functor: FamilyFunctor::Raw,
            variant: FamilyVariant::Uvw { u: sub.clone(), v: sub.clone(), w: sub },
            ideal: i,
        };
        let report = v_function(&family, 1, 5, 4, &[], false).unwrap();
        for row in &report.rows {
            assert_eq!(row.v, ExtInt::Int(3));
            assert_eq!(row.ass, vec!["(x)", "(x,y)"]);
        }
        let vm = report.vp_fits.iter().find(|(p, _)| p == "(x,y)").unwrap().1.unwrap();
        assert_eq!((vm.a, vm.b), (2, ExtInt::Int(1)));
        let verdict = verify_theorem(&family, &report).unwrap();
        assert!(verdict.hypothesis_violated(), "(0:_U I) = Y^3 U is nonzero");
    }

    #[test]
    fn rows_are_reproducible() {
        let r = r_xy_mod_xy();
        let l = cyclic(&r, &["x"]);
        let (free, sub) = whole_as_submodule(&r);
        let iy = r.ideal_str(&["y"]).unwrap();
        let family = VFamily {
            functor: FamilyFunctor::Tor { l, k: 0 },
            variant: FamilyVariant::Quotient { m: free, n_sub: sub },
            ideal: iy,
        };
        let a = v_function(&family, 1, 4, 2, &[], false).unwrap();
        let b = v_function(&family, 1, 4, 2, &[], true).unwrap();
        for (x, y) in a.rows.iter().zip(&b.rows) {
            assert_eq!(x.n, y.n);
            assert_eq!(x.v, y.v);
            assert_eq!(x.ass, y.ass);
        }
    }

    #[test]
    fn artin_rees_estimate_reports_window() {
        let q = GradedRing::build(&[("x", 1), ("y", 1)], Field::Rationals, &[]).unwrap();
        let whole = SubquotientModule::free(&q, vec![0]);
        let cy = whole.submodule(vec![whole.ambient().single(0, q.base().parse("y").unwrap())]).unwrap();
        let cx = whole.submodule(vec![whole.ambient().single(0, q.base().parse("x").unwrap())]).unwrap();
        let i = q.ideal_str(&["x", "y"]).unwrap();
        let est = artin_rees_estimate(&cy, &cx, &i, 3, 6).unwrap();
        assert_eq!(est.verified_range, (est.n0 + 1, est.n0 + 3));
    }
}
