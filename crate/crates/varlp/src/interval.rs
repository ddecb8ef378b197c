//! Interval domains and finite unions of intervals.
//!
//! All set arithmetic works on measure only; individual endpoints are treated
//! as null, so open/closed distinctions never matter.

use crate::error::{Error, Result};

/// The underlying measure space: an interval `(lo, hi)` with Lebesgue
/// measure. `hi` may be `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalDomain {
    lo: f64,
    hi: f64,
}

impl IntervalDomain {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || lo < 0.0 {
            return Err(Error::Domain(format!(
                "domain lower end must be finite and >= 0, got {lo}"
            )));
        }
        if hi <= lo {
            return Err(Error::Domain(format!(
                "domain must satisfy lo < hi, got [{lo}, {hi}]"
            )));
        }
        Ok(IntervalDomain { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Total measure; `f64::INFINITY` for unbounded domains.
    pub fn measure(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_finite(&self) -> bool {
        self.hi.is_finite()
    }

    pub fn contains(&self, t: f64) -> bool {
        t > self.lo && t < self.hi
    }
}

impl std::fmt::Display for IntervalDomain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.hi.is_finite() {
            write!(f, "({}, {})", self.lo, self.hi)
        } else {
            write!(f, "({}, inf)", self.lo)
        }
    }
}

/// A finite union of disjoint intervals, kept sorted. Empty parts are
/// normalized away; adjacent parts merge.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IntervalUnion {
    parts: Vec<(f64, f64)>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { parts: Vec::new() }
    }

    pub fn interval(a: f64, b: f64) -> Self {
        IntervalUnion::from_parts(vec![(a, b)])
    }

    /// Builds a union from arbitrary (possibly overlapping, unsorted) parts.
    pub fn from_parts(mut parts: Vec<(f64, f64)>) -> Self {
        parts.retain(|&(a, b)| b > a);
        parts.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(parts.len());
        for (a, b) in parts {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        IntervalUnion { parts: merged }
    }

    pub fn parts(&self) -> &[(f64, f64)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn measure(&self) -> f64 {
        self.parts.iter().map(|&(a, b)| b - a).sum()
    }

    pub fn contains(&self, t: f64) -> bool {
        self.parts.iter().any(|&(a, b)| t > a && t < b)
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        IntervalUnion::from_parts(parts)
    }

    pub fn intersect(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (a1, b1) = self.parts[i];
            let (a2, b2) = other.parts[j];
            let lo = a1.max(a2);
            let hi = b1.min(b2);
            if hi > lo {
                out.push((lo, hi));
            }
            if b1 < b2 {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalUnion { parts: out }
    }

    pub fn subtract(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut out = Vec::new();
        for &(a, b) in &self.parts {
            let mut lo = a;
            for &(c, d) in &other.parts {
                if d <= lo {
                    continue;
                }
                if c >= b {
                    break;
                }
                if c > lo {
                    out.push((lo, c.min(b)));
                }
                lo = lo.max(d);
                if lo >= b {
                    break;
                }
            }
            if lo < b {
                out.push((lo, b));
            }
        }
        IntervalUnion { parts: out }
    }

    pub fn is_disjoint_from(&self, other: &IntervalUnion) -> bool {
        self.intersect(other).measure() == 0.0
    }

    /// Keeps the leftmost sub-union of the requested measure (used to trim a
    /// level set down to an exact target measure).
    pub fn take_measure_from_left(&self, target: f64) -> IntervalUnion {
        let mut out = Vec::new();
        let mut remaining = target;
        for &(a, b) in &self.parts {
            if remaining <= 0.0 {
                break;
            }
            let len = b - a;
            if len <= remaining {
                out.push((a, b));
                remaining -= len;
            } else {
                out.push((a, a + remaining));
                remaining = 0.0;
            }
        }
        IntervalUnion { parts: out }
    }
}

impl std::fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("{}");
        }
        for (i, (a, b)) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "({a}, {b})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_rejects_degenerate_and_negative() {
        assert!(IntervalDomain::new(1.0, 1.0).is_err());
        assert!(IntervalDomain::new(2.0, 1.0).is_err());
        assert!(IntervalDomain::new(-1.0, 1.0).is_err());
        assert!(IntervalDomain::new(0.0, f64::INFINITY).is_ok());
    }

    #[test]
    fn union_normalizes_overlaps() {
        let u = IntervalUnion::from_parts(vec![(0.5, 1.0), (0.0, 0.6), (2.0, 2.0)]);
        assert_eq!(u.parts(), &[(0.0, 1.0)]);
        assert!((u.measure() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn subtract_produces_rings() {
        let big = IntervalUnion::interval(0.0, 1.0);
        let small = IntervalUnion::interval(0.25, 0.5);
        let ring = big.subtract(&small);
        assert_eq!(ring.parts(), &[(0.0, 0.25), (0.5, 1.0)]);
        assert!(ring.is_disjoint_from(&small));
    }

    #[test]
    fn intersect_and_trim() {
        let a = IntervalUnion::from_parts(vec![(0.0, 1.0), (2.0, 3.0)]);
        let b = IntervalUnion::interval(0.5, 2.5);
        let c = a.intersect(&b);
        assert_eq!(c.parts(), &[(0.5, 1.0), (2.0, 2.5)]);
        let t = c.take_measure_from_left(0.75);
        assert!((t.measure() - 0.75).abs() < 1e-15);
        assert_eq!(t.parts(), &[(0.5, 1.0), (2.0, 2.25)]);
    }
}
