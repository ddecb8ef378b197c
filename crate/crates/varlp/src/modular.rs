//! Modulars and Luxemburg norms for variable-exponent spaces.
//!
//! The modular of `f` against the exponent `p` is
//! `rho_p(f) = integral of |f(t)|^{p(t)} dt` over the domain; the Luxemburg
//! norm is `inf { r > 0 : rho_p(f / r) <= 1 }`. The norm is computed by
//! predicate bisection on `r`, starting from `r = 1` and doubling/halving
//! (capped at `2^{+-60}`) until the predicate flips, then narrowing the
//! bracket below `1e-10 * max(1, r)` and returning the satisfying side.
//!
//! A divergent modular counts as "greater than 1"; an indeterminate one
//! aborts the norm rather than guessing a side.
//!
//! Probe integrands are capped pointwise at `PROBE_CLAMP`: a `min` can only
//! lower the modular, so a capped value above 1 still certifies the true
//! modular exceeds 1, while a "holds" verdict with the cap active would need
//! the overweight region to have measure below `1/PROBE_CLAMP` — far beneath
//! what sampling quadrature can resolve in the first place. The cap keeps
//! probes at small radii against huge exponents inside the float range
//! instead of overflowing the panel march. Modular *values* (as opposed to
//! norm probes) are never clamped.

use crate::error::{Error, Result};
use crate::function::{derive_unary, DerivedKind, PiecewiseFunction};
use crate::interval::IntervalUnion;
use crate::quad::{self, IntegralOutcome, QuadConfig};

/// Modular of a closure against `p` over a union of intervals.
pub fn modular_of<F: Fn(f64) -> f64>(
    f: F,
    support: &IntervalUnion,
    p: &PiecewiseFunction,
    cfg: &QuadConfig,
) -> IntegralOutcome {
    let cuts = p.breakpoints();
    let mut acc = IntegralOutcome::Finite { value: 0.0, error: 0.0 };
    for &(lo, hi) in support.parts() {
        let part = quad::integrate_piecewise(
            |t| f(t).abs().powf(p.eval(t)),
            &cuts,
            lo,
            hi,
            cfg,
        );
        acc = acc.combine(part);
        if acc.is_divergent() {
            return acc;
        }
    }
    acc
}

/// Modular of a piecewise function against `p` over the whole domain.
pub fn modular(f: &PiecewiseFunction, p: &PiecewiseFunction, cfg: &QuadConfig) -> IntegralOutcome {
    let support = IntervalUnion::from_parts(vec![(p.domain().lo(), p.domain().hi())]);
    let mut cuts = p.breakpoints();
    cuts.extend(f.breakpoints());
    let mut acc = IntegralOutcome::Finite { value: 0.0, error: 0.0 };
    for &(lo, hi) in support.parts() {
        let part = quad::integrate_piecewise(|t| f.eval(t).abs().powf(p.eval(t)), &cuts, lo, hi, cfg);
        acc = acc.combine(part);
        if acc.is_divergent() {
            return acc;
        }
    }
    acc
}

/// Integral of `alpha^{p(t)}` over a set (`alpha >= 0`). This is the
/// modular of `alpha * indicator(set)` and the building block for every
/// disjointly-supported norm computation.
pub fn int_pow(alpha: f64, p: &PiecewiseFunction, set: &IntervalUnion, cfg: &QuadConfig) -> IntegralOutcome {
    if alpha < 0.0 || alpha.is_nan() {
        return IntegralOutcome::Indeterminate {
            reason: format!("base {alpha} must be nonnegative"),
        };
    }
    if alpha == 0.0 {
        return IntegralOutcome::Finite { value: 0.0, error: 0.0 };
    }
    if alpha == 1.0 {
        return IntegralOutcome::Finite { value: set.measure(), error: 0.0 };
    }
    let cuts = p.breakpoints();
    let mut acc = IntegralOutcome::Finite { value: 0.0, error: 0.0 };
    for &(lo, hi) in set.parts() {
        let part = quad::integrate_piecewise(|t| alpha.powf(p.eval(t)), &cuts, lo, hi, cfg);
        acc = acc.combine(part);
        if acc.is_divergent() {
            return acc;
        }
    }
    acc
}

/// Pointwise cap on norm-probe integrands (see the module doc).
const PROBE_CLAMP: f64 = 1e60;

/// Explicit comparison so NaN passes through (and surfaces as a quadrature
/// event) instead of being silently absorbed by `f64::min`.
fn clamp_probe(v: f64) -> f64 {
    if v > PROBE_CLAMP {
        PROBE_CLAMP
    } else {
        v
    }
}

/// Clamped-probe version of [`int_pow`]: integrates
/// `min(alpha^{p(t)}, PROBE_CLAMP)` over the set. Only valid as a norm
/// predicate oracle, never as a modular value.
pub fn probe_pow(
    alpha: f64,
    p: &PiecewiseFunction,
    set: &IntervalUnion,
    cfg: &QuadConfig,
) -> IntegralOutcome {
    if alpha < 0.0 || alpha.is_nan() {
        return IntegralOutcome::Indeterminate {
            reason: format!("base {alpha} must be nonnegative"),
        };
    }
    if alpha == 0.0 {
        return IntegralOutcome::Finite { value: 0.0, error: 0.0 };
    }
    if alpha == 1.0 {
        return IntegralOutcome::Finite { value: set.measure(), error: 0.0 };
    }
    let cuts = p.breakpoints();
    let mut acc = IntegralOutcome::Finite { value: 0.0, error: 0.0 };
    for &(lo, hi) in set.parts() {
        let part = quad::integrate_piecewise(
            |t| clamp_probe(alpha.powf(p.eval(t))),
            &cuts,
            lo,
            hi,
            cfg,
        );
        acc = acc.combine(part);
        if acc.is_divergent() {
            return acc;
        }
    }
    acc
}

/// Clamped-probe version of [`modular_of`]: integrates
/// `min(|f(t)|^{p(t)}, PROBE_CLAMP)`. Only valid as a norm predicate oracle.
pub fn probe_modular<F: Fn(f64) -> f64>(
    f: F,
    support: &IntervalUnion,
    p: &PiecewiseFunction,
    cfg: &QuadConfig,
) -> IntegralOutcome {
    let cuts = p.breakpoints();
    let mut acc = IntegralOutcome::Finite { value: 0.0, error: 0.0 };
    for &(lo, hi) in support.parts() {
        let part = quad::integrate_piecewise(
            |t| clamp_probe(f(t).abs().powf(p.eval(t))),
            &cuts,
            lo,
            hi,
            cfg,
        );
        acc = acc.combine(part);
        if acc.is_divergent() {
            return acc;
        }
    }
    acc
}

/// One side of the norm predicate.
enum Side {
    Holds,
    Fails,
}

fn side_of(out: IntegralOutcome) -> Result<Side> {
    match out {
        IntegralOutcome::Finite { value, error } => {
            if value + error <= 1.0 {
                Ok(Side::Holds)
            } else if value - error > 1.0 {
                Ok(Side::Fails)
            } else {
                // The modular sits on the boundary within quadrature error;
                // push the norm up by the tiny ambiguity.
                Ok(Side::Fails)
            }
        }
        IntegralOutcome::Divergent { .. } => Ok(Side::Fails),
        IntegralOutcome::Indeterminate { reason } => Err(Error::Indeterminate(format!(
            "modular could not be classified during norm bisection: {reason}"
        ))),
    }
}

/// Luxemburg-norm bisection driven by a modular oracle `rho(r)` evaluating
/// the modular of `f / r`.
fn norm_by_bisection(mut rho: impl FnMut(f64) -> IntegralOutcome) -> Result<f64> {
    let cap = 2.0f64.powi(60);
    let (mut lo, mut hi);
    match side_of(rho(1.0))? {
        Side::Holds => {
            hi = 1.0;
            let mut r = 0.5;
            loop {
                match side_of(rho(r))? {
                    Side::Holds => {
                        hi = r;
                        r *= 0.5;
                        if r < 1.0 / cap {
                            // Every tested radius admits the function: the
                            // norm is (numerically) zero.
                            return Ok(0.0);
                        }
                    }
                    Side::Fails => {
                        lo = r;
                        break;
                    }
                }
            }
        }
        Side::Fails => {
            lo = 1.0;
            let mut r = 2.0;
            loop {
                match side_of(rho(r))? {
                    Side::Fails => {
                        lo = r;
                        r *= 2.0;
                        if r > cap {
                            // No admissible radius: the function lies
                            // outside the space.
                            return Ok(f64::INFINITY);
                        }
                    }
                    Side::Holds => {
                        hi = r;
                        break;
                    }
                }
            }
        }
    }
    while hi - lo > 1e-10 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match side_of(rho(mid))? {
            Side::Holds => hi = mid,
            Side::Fails => lo = mid,
        }
    }
    Ok(hi)
}

/// Luxemburg-norm bisection against an arbitrary modular oracle `rho(r)`
/// evaluating the modular of `f / r` (used for functions assembled from
/// disjoint atoms, where the modular is a sum of per-atom pieces).
pub fn norm_from_modular(rho: impl FnMut(f64) -> IntegralOutcome) -> Result<f64> {
    norm_by_bisection(rho)
}

/// Luxemburg norm of a closure supported on a set.
pub fn norm_of<F: Fn(f64) -> f64>(
    f: F,
    support: &IntervalUnion,
    p: &PiecewiseFunction,
    cfg: &QuadConfig,
) -> Result<f64> {
    if support.is_empty() {
        return Ok(0.0);
    }
    norm_by_bisection(|r| probe_modular(|t| f(t) / r, support, p, cfg))
}

/// Luxemburg norm of a piecewise function over the whole domain.
pub fn luxemburg_norm(f: &PiecewiseFunction, p: &PiecewiseFunction, cfg: &QuadConfig) -> Result<f64> {
    let mut cuts = p.breakpoints();
    cuts.extend(f.breakpoints());
    let (lo, hi) = (p.domain().lo(), p.domain().hi());
    norm_by_bisection(|r| {
        quad::integrate_piecewise(
            |t| clamp_probe((f.eval(t).abs() / r).powf(p.eval(t))),
            &cuts,
            lo,
            hi,
            cfg,
        )
    })
}

/// Norm of the indicator of a set.
pub fn char_norm(set: &IntervalUnion, p: &PiecewiseFunction, cfg: &QuadConfig) -> Result<f64> {
    if set.is_empty() {
        return Ok(0.0);
    }
    norm_by_bisection(|r| probe_pow(1.0 / r, p, set, cfg))
}

/// Both sides of the generalized Hölder inequality:
/// `integral |f g| <= 4 ||f||_p ||g||_{p'}`. Returns `(lhs, rhs)`.
pub fn holder_products(
    f: &PiecewiseFunction,
    g: &PiecewiseFunction,
    p: &PiecewiseFunction,
    cfg: &QuadConfig,
) -> Result<(f64, f64)> {
    let q = derive_unary(DerivedKind::Conjugate, p)?;
    let mut cuts = p.breakpoints();
    cuts.extend(f.breakpoints());
    cuts.extend(g.breakpoints());
    let pairing = quad::integrate_piecewise(
        |t| (f.eval(t) * g.eval(t)).abs(),
        &cuts,
        p.domain().lo(),
        p.domain().hi(),
        cfg,
    );
    let lhs = match pairing {
        IntegralOutcome::Finite { value, .. } => value,
        IntegralOutcome::Divergent { .. } => f64::INFINITY,
        IntegralOutcome::Indeterminate { reason } => {
            return Err(Error::Indeterminate(format!("pairing integral: {reason}")))
        }
    };
    let nf = luxemburg_norm(f, p, cfg)?;
    let ng = luxemburg_norm(g, &q, cfg)?;
    Ok((lhs, 4.0 * nf * ng))
}

/// Pairwise-disjoint measurable sets acting as atoms for sequence-space
/// comparisons.
#[derive(Debug, Clone)]
pub struct DisjointAtoms {
    sets: Vec<IntervalUnion>,
}

impl DisjointAtoms {
    pub fn new(sets: Vec<IntervalUnion>) -> Result<DisjointAtoms> {
        for (i, a) in sets.iter().enumerate() {
            if a.is_empty() {
                return Err(Error::Domain(format!("atom {i} is empty")));
            }
            for b in sets.iter().skip(i + 1) {
                if !a.is_disjoint_from(b) {
                    return Err(Error::Domain(format!("atom {i} overlaps a later atom")));
                }
            }
        }
        Ok(DisjointAtoms { sets })
    }

    pub fn sets(&self) -> &[IntervalUnion] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// Modular of `sum_n c_n * indicator(A_n)`: disjointness makes it a plain
/// sum of per-atom pieces.
pub fn atom_modular(
    coeffs: &[f64],
    atoms: &DisjointAtoms,
    p: &PiecewiseFunction,
    cfg: &QuadConfig,
) -> IntegralOutcome {
    let mut acc = IntegralOutcome::Finite { value: 0.0, error: 0.0 };
    for (c, set) in coeffs.iter().zip(atoms.sets()) {
        let part = int_pow(c.abs(), p, set, cfg);
        acc = acc.combine(part);
        if acc.is_divergent() {
            return acc;
        }
    }
    acc
}

/// Luxemburg norm of `sum_n c_n * indicator(A_n)`.
pub fn atom_norm(
    coeffs: &[f64],
    atoms: &DisjointAtoms,
    p: &PiecewiseFunction,
    cfg: &QuadConfig,
) -> Result<f64> {
    if coeffs.iter().all(|c| *c == 0.0) {
        return Ok(0.0);
    }
    norm_by_bisection(|r| {
        let mut acc = IntegralOutcome::Finite { value: 0.0, error: 0.0 };
        for (c, set) in coeffs.iter().zip(atoms.sets()) {
            let part = probe_pow(c.abs() / r, p, set, cfg);
            acc = acc.combine(part);
            if acc.is_divergent() {
                return acc;
            }
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::function::{Monotone, Piece};
    use crate::interval::IntervalDomain;
    use std::collections::BTreeMap;

    fn func(domain: (f64, f64), specs: &[(f64, f64, &str, Monotone)]) -> PiecewiseFunction {
        let dom = IntervalDomain::new(domain.0, domain.1).unwrap();
        let pieces = specs
            .iter()
            .map(|(lo, hi, src, m)| {
                Piece::new(*lo, *hi, parse(src, &BTreeMap::new()).unwrap(), *m).unwrap()
            })
            .collect();
        PiecewiseFunction::new("p", dom, pieces).unwrap()
    }

    fn two_three() -> PiecewiseFunction {
        func(
            (0.0, 1.0),
            &[
                (0.0, 0.5, "2", Monotone::Constant),
                (0.5, 1.0, "3", Monotone::Constant),
            ],
        )
    }

    #[test]
    fn modular_of_a_constant_against_split_exponent() {
        // rho(1/2) with p = 2 then 3: (1/4)(1/2) + (1/8)(1/2) = 3/16.
        let p = two_three();
        let f = func((0.0, 1.0), &[(0.0, 1.0, "0.5", Monotone::Constant)]);
        match modular(&f, &p, &QuadConfig::default()) {
            IntegralOutcome::Finite { value, .. } => {
                assert!((value - 3.0 / 16.0).abs() < 1e-10, "value = {value}")
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn char_norm_on_split_exponent() {
        // ||indicator(0,1/2)||: only the p=2 piece sees mass, so the norm
        // is (1/2)^{1/2}.
        let p = two_three();
        let set = IntervalUnion::from_parts(vec![(0.0, 0.5)]);
        let n = char_norm(&set, &p, &QuadConfig::default()).unwrap();
        assert!((n - 0.5f64.sqrt()).abs() < 1e-8, "norm = {n}");
    }

    #[test]
    fn char_norm_constant_exponent_is_measure_power() {
        let p = func((0.0, 1.0), &[(0.0, 1.0, "2", Monotone::Constant)]);
        let set = IntervalUnion::from_parts(vec![(0.0, 0.25)]);
        let n = char_norm(&set, &p, &QuadConfig::default()).unwrap();
        assert!((n - 0.5).abs() < 1e-8, "norm = {n}");
    }

    #[test]
    fn norm_of_identity_under_constant_exponents() {
        // ||t||_3 = (1/4)^{1/3}; ||t||_2 = 3^{-1/2}.
        let f = func((0.0, 1.0), &[(0.0, 1.0, "t", Monotone::Increasing)]);
        let p3 = func((0.0, 1.0), &[(0.0, 1.0, "3", Monotone::Constant)]);
        let n3 = luxemburg_norm(&f, &p3, &QuadConfig::default()).unwrap();
        assert!((n3 - 0.25f64.powf(1.0 / 3.0)).abs() < 1e-8, "n3 = {n3}");
        let p2 = func((0.0, 1.0), &[(0.0, 1.0, "2", Monotone::Constant)]);
        let n2 = luxemburg_norm(&f, &p2, &QuadConfig::default()).unwrap();
        assert!((n2 - 1.0 / 3.0f64.sqrt()).abs() < 1e-8, "n2 = {n2}");
    }

    #[test]
    fn unbounded_exponent_pins_char_norm_at_one() {
        // p(t) = 1/t on (0,1), set (0,1/2): for every r < 1 the modular
        // diverges (the integrand blows up like e^{c/t}), while r = 1 gives
        // modular 1/2 <= 1. The norm is exactly 1.
        let p = func((0.0, 1.0), &[(0.0, 1.0, "1/t", Monotone::Decreasing)]);
        let set = IntervalUnion::from_parts(vec![(0.0, 0.5)]);
        let n = char_norm(&set, &p, &QuadConfig::default()).unwrap();
        assert!((n - 1.0).abs() < 1e-9, "norm = {n}");
    }

    #[test]
    fn function_outside_the_space_has_infinite_norm() {
        let f = func((0.0, 1.0), &[(0.0, 1.0, "1/t", Monotone::Decreasing)]);
        let p = func((0.0, 1.0), &[(0.0, 1.0, "2", Monotone::Constant)]);
        let n = luxemburg_norm(&f, &p, &QuadConfig::default()).unwrap();
        assert!(n.is_infinite(), "norm = {n}");
    }

    #[test]
    fn zero_function_has_zero_norm() {
        let f = func((0.0, 1.0), &[(0.0, 1.0, "0", Monotone::Constant)]);
        let p = two_three();
        let n = luxemburg_norm(&f, &p, &QuadConfig::default()).unwrap();
        assert_eq!(n, 0.0);
    }

    #[test]
    fn holder_inequality_holds_with_constant_four() {
        let f = func((0.0, 1.0), &[(0.0, 1.0, "t", Monotone::Increasing)]);
        let g = func((0.0, 1.0), &[(0.0, 1.0, "1", Monotone::Constant)]);
        let p = func((0.0, 1.0), &[(0.0, 1.0, "2", Monotone::Constant)]);
        let (lhs, rhs) = holder_products(&f, &g, &p, &QuadConfig::default()).unwrap();
        assert!((lhs - 0.5).abs() < 1e-9);
        assert!(lhs <= rhs, "lhs = {lhs}, rhs = {rhs}");
    }

    #[test]
    fn atom_norm_matches_indicator_norm() {
        let p = func((0.0, 1.0), &[(0.0, 1.0, "2", Monotone::Constant)]);
        let atoms = DisjointAtoms::new(vec![
            IntervalUnion::from_parts(vec![(0.0, 0.25)]),
            IntervalUnion::from_parts(vec![(0.25, 0.5)]),
        ])
        .unwrap();
        let n = atom_norm(&[1.0, 1.0], &atoms, &p, &QuadConfig::default()).unwrap();
        assert!((n - 0.5f64.sqrt()).abs() < 1e-8, "norm = {n}");
    }

    #[test]
    fn overlapping_atoms_are_rejected() {
        let bad = DisjointAtoms::new(vec![
            IntervalUnion::from_parts(vec![(0.0, 0.3)]),
            IntervalUnion::from_parts(vec![(0.2, 0.5)]),
        ]);
        assert!(bad.is_err());
    }

    #[test]
    fn normalized_weight_has_unit_modular_and_norm() {
        // s = mu(B)^{-1/p(t)} on B: the modular of s is exactly mu(B) *
        // mu(B)^{-1} = 1, and the norm is 1.
        let p = two_three();
        let set = IntervalUnion::from_parts(vec![(0.0, 0.25)]);
        let mu = set.measure();
        let w = move |t: f64| mu.powf(-1.0 / p_eval_for_weight(t));
        let n = norm_of(w, &set, &p, &QuadConfig::default()).unwrap();
        assert!((n - 1.0).abs() < 1e-8, "norm = {n}");
    }

    fn p_eval_for_weight(t: f64) -> f64 {
        if t < 0.5 {
            2.0
        } else {
            3.0
        }
    }
}
