//! Piecewise closed-form functions on an interval, with declared per-piece
//! monotonicity.
//!
//! Monotonicity declarations are the backbone of the exact evaluation paths:
//! a piece tagged increasing/decreasing admits exact level-crossing solves,
//! which the rearrangement and witness layers rely on. Declared tags are
//! trusted; tags derived by combining functions are computed by a sound
//! direction algebra and, where the algebra is silent but **both** inputs are
//! declared, upgraded by dense sampling (splitting a piece at a single
//! interior extremum when one is found). Pieces whose inputs are undeclared
//! are never upgraded, so an `unknown` tag always means "no claim".

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::interval::{IntervalDomain, IntervalUnion};

/// Direction of a function on one piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotone {
    Increasing,
    Decreasing,
    Constant,
    Unknown,
}

impl Monotone {
    pub fn flip(self) -> Monotone {
        match self {
            Monotone::Increasing => Monotone::Decreasing,
            Monotone::Decreasing => Monotone::Increasing,
            other => other,
        }
    }

    /// Direction of a sum of two terms with the given directions.
    pub fn add(self, other: Monotone) -> Monotone {
        use Monotone::*;
        match (self, other) {
            (Unknown, _) | (_, Unknown) => Unknown,
            (Constant, x) | (x, Constant) => x,
            (Increasing, Increasing) => Increasing,
            (Decreasing, Decreasing) => Decreasing,
            _ => Unknown,
        }
    }

    pub fn is_declared(self) -> bool {
        self != Monotone::Unknown
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Monotone::Increasing => "inc",
            Monotone::Decreasing => "dec",
            Monotone::Constant => "const",
            Monotone::Unknown => "unknown",
        }
    }
}

impl std::str::FromStr for Monotone {
    type Err = Error;
    fn from_str(s: &str) -> Result<Monotone> {
        match s {
            "inc" | "increasing" => Ok(Monotone::Increasing),
            "dec" | "decreasing" => Ok(Monotone::Decreasing),
            "const" | "constant" => Ok(Monotone::Constant),
            "unknown" => Ok(Monotone::Unknown),
            other => Err(Error::Domain(format!(
                "monotone tag must be inc|dec|const|unknown, got `{other}`"
            ))),
        }
    }
}

/// Which end of a piece to approach.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PieceEnd {
    Lo,
    Hi,
}

/// One piece: a formula on a half-open subinterval, plus a direction tag.
#[derive(Debug, Clone)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub expr: Expr,
    pub monotone: Monotone,
}

impl Piece {
    pub fn new(lo: f64, hi: f64, expr: Expr, monotone: Monotone) -> Result<Piece> {
        if !lo.is_finite() || lo < 0.0 {
            return Err(Error::Domain(format!("piece start {lo} must be finite and >= 0")));
        }
        if !(hi > lo) {
            return Err(Error::Domain(format!("piece ({lo}, {hi}) is empty")));
        }
        Ok(Piece { lo, hi, expr, monotone })
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_finite(&self) -> bool {
        self.hi.is_finite()
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.lo && t < self.hi
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.expr.eval(t)
    }

    /// Maps u in (0,1) to a point of the piece; monotone increasing in u.
    pub fn t_of_u(&self, u: f64) -> f64 {
        if self.hi.is_finite() {
            self.lo + (self.hi - self.lo) * u
        } else {
            let scale = self.lo.abs().max(1.0);
            self.lo + scale * u / (1.0 - u)
        }
    }

    /// Estimated limit of the formula approaching one end from inside the
    /// piece, from a geometric ladder of sample points. A monotone formula
    /// approaching a finite limit shows increments that die out (geometric
    /// decay, or a summable power law); increments that persist mean the
    /// formula diverges at the end, even when every sampled value is still
    /// small (logarithmic blowups never produce large samples in floating
    /// point).
    pub fn end_value(&self, end: PieceEnd) -> f64 {
        let mut vals = Vec::with_capacity(20);
        for k in (6..=60).step_by(3) {
            let t = match (end, self.hi.is_finite()) {
                (PieceEnd::Lo, _) => {
                    let scale = if self.hi.is_finite() { self.len() } else { self.lo.abs().max(1.0) };
                    let t = self.lo + scale * 0.5f64.powi(k);
                    if t <= self.lo {
                        break;
                    }
                    t
                }
                (PieceEnd::Hi, true) => {
                    let t = self.hi - self.len() * 0.5f64.powi(k);
                    if t >= self.hi {
                        break;
                    }
                    t
                }
                (PieceEnd::Hi, false) => self.lo.abs().max(1.0) * 2.0f64.powi(k) + self.lo,
            };
            let v = self.eval(t);
            if v.is_infinite() {
                // The formula itself saturates: a diverging limit.
                return v;
            }
            if v.is_finite() {
                vals.push(v);
            }
        }
        limit_from_ladder(&vals)
    }

    /// Solves `f(t) = level` inside a piece declared increasing or
    /// decreasing. Returns `None` when the level is outside the piece's
    /// range or the piece is not declared monotone.
    pub fn crossing(&self, level: f64) -> Option<f64> {
        let lo_v = self.end_value(PieceEnd::Lo);
        let hi_v = self.end_value(PieceEnd::Hi);
        self.crossing_with_bounds(level, lo_v, hi_v)
    }

    /// Like [`Piece::crossing`] with the endpoint limits already known
    /// (callers on hot paths cache them).
    pub fn crossing_with_bounds(&self, level: f64, lo_v: f64, hi_v: f64) -> Option<f64> {
        let sign = match self.monotone {
            Monotone::Increasing => 1.0,
            Monotone::Decreasing => -1.0,
            _ => return None,
        };
        // g(u) = sign * (f(t(u)) - level) is nondecreasing in u.
        let g = |u: f64| sign * (self.eval(self.t_of_u(u)) - level);
        let lo_val = sign * (lo_v - level);
        let hi_val = sign * (hi_v - level);
        if lo_val.is_nan() || hi_val.is_nan() {
            return None;
        }
        if lo_val > 0.0 || hi_val < 0.0 {
            return None; // level outside the range taken on this piece
        }
        let (mut ulo, mut uhi) = (0.0f64, 1.0f64);
        for _ in 0..1200 {
            let mid = 0.5 * (ulo + uhi);
            if mid <= ulo || mid >= uhi {
                break;
            }
            let gm = g(mid);
            if gm.is_nan() {
                // Singular sample; shrink away from the low end, where our
                // formulas may be undefined in floating point.
                ulo = mid;
                continue;
            }
            if gm < 0.0 {
                ulo = mid;
            } else {
                uhi = mid;
            }
        }
        Some(self.t_of_u(0.5 * (ulo + uhi)))
    }

    /// Part of this piece where the value exceeds `level`, resolved exactly
    /// for declared-monotone pieces and by grid scan otherwise.
    pub fn superlevel(&self, level: f64, grid: usize) -> IntervalUnion {
        let whole = || IntervalUnion::from_parts(vec![(self.lo, self.hi)]);
        match self.monotone {
            Monotone::Constant => {
                let v = self.eval(self.t_of_u(0.5));
                if v > level {
                    whole()
                } else {
                    IntervalUnion::empty()
                }
            }
            Monotone::Increasing | Monotone::Decreasing => {
                let lo_v = self.end_value(PieceEnd::Lo);
                let hi_v = self.end_value(PieceEnd::Hi);
                let (near, far) = (lo_v, hi_v);
                let above_lo = near > level;
                let above_hi = far > level;
                if above_lo && above_hi {
                    return whole();
                }
                if !above_lo && !above_hi {
                    return IntervalUnion::empty();
                }
                match self.crossing(level) {
                    Some(x) => {
                        if above_hi {
                            IntervalUnion::from_parts(vec![(x, self.hi)])
                        } else {
                            IntervalUnion::from_parts(vec![(self.lo, x)])
                        }
                    }
                    None => IntervalUnion::empty(),
                }
            }
            Monotone::Unknown => {
                let n = grid.max(16);
                let mut parts = Vec::new();
                let mut open: Option<f64> = None;
                let mut prev_t = self.lo;
                for i in 1..=n {
                    let u = i as f64 / (n as f64 + 1.0);
                    let t = self.t_of_u(u);
                    let above = self.eval(t) > level;
                    match (above, open) {
                        (true, None) => open = Some(prev_t),
                        (false, Some(start)) => {
                            parts.push((start, t));
                            open = None;
                        }
                        _ => {}
                    }
                    prev_t = t;
                }
                if let Some(start) = open {
                    parts.push((start, self.hi));
                }
                IntervalUnion::from_parts(parts)
            }
        }
    }
}

/// How two exponent functions compare pointwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Comparison {
    /// `q <= p` at every sampled point (up to rounding slack).
    LeqAe,
    /// Found a point where `q > p` by more than the slack.
    Violation { t: f64, p: f64, q: f64 },
}

/// A function defined piecewise on an interval domain.
#[derive(Debug, Clone)]
pub struct PiecewiseFunction {
    name: String,
    domain: IntervalDomain,
    pieces: Vec<Piece>,
}

impl PiecewiseFunction {
    pub fn new(name: &str, domain: IntervalDomain, mut pieces: Vec<Piece>) -> Result<PiecewiseFunction> {
        if pieces.is_empty() {
            return Err(Error::Domain("a function needs at least one piece".into()));
        }
        pieces.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap());
        let rel = |x: f64| 1e-9 * x.abs().max(1.0);
        if (pieces[0].lo - domain.lo()).abs() > rel(domain.lo()) {
            return Err(Error::Domain(format!(
                "pieces start at {} but the domain starts at {}",
                pieces[0].lo,
                domain.lo()
            )));
        }
        for w in 0..pieces.len() - 1 {
            let (a_hi, b_lo) = (pieces[w].hi, pieces[w + 1].lo);
            if (a_hi - b_lo).abs() > rel(a_hi) {
                return Err(Error::Domain(format!(
                    "pieces leave a gap or overlap between {a_hi} and {b_lo}"
                )));
            }
        }
        let last_hi = pieces.last().unwrap().hi;
        let matches_end = if domain.hi().is_finite() {
            last_hi.is_finite() && (last_hi - domain.hi()).abs() <= rel(domain.hi())
        } else {
            last_hi.is_infinite()
        };
        if !matches_end {
            return Err(Error::Domain(format!(
                "pieces end at {} but the domain ends at {}",
                last_hi,
                domain.hi()
            )));
        }
        Ok(PiecewiseFunction {
            name: name.to_string(),
            domain,
            pieces,
        })
    }

    pub fn constant(name: &str, domain: IntervalDomain, value: f64) -> PiecewiseFunction {
        let piece = Piece {
            lo: domain.lo(),
            hi: domain.hi(),
            expr: Expr::Const(value),
            monotone: Monotone::Constant,
        };
        PiecewiseFunction {
            name: name.to_string(),
            domain,
            pieces: vec![piece],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &IntervalDomain {
        &self.domain
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// All pieces are tagged with a usable direction.
    pub fn is_piecewise_monotone(&self) -> bool {
        self.pieces.iter().all(|p| p.monotone.is_declared())
    }

    pub fn piece_containing(&self, t: f64) -> &Piece {
        let idx = self
            .pieces
            .partition_point(|p| p.hi <= t)
            .min(self.pieces.len() - 1);
        &self.pieces[idx]
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.piece_containing(t).eval(t)
    }

    /// Interior breakpoints plus both domain ends (finite ones).
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out = vec![self.domain.lo()];
        for p in &self.pieces {
            if p.hi.is_finite() {
                out.push(p.hi);
            }
        }
        out.dedup();
        out
    }

    /// Essential bounds over the whole domain. Uses declared directions for
    /// endpoint limits and dense samples on undeclared pieces.
    pub fn ess_bounds(&self) -> (f64, f64) {
        let union = IntervalUnion::from_parts(vec![(self.domain.lo(), self.domain.hi())]);
        self.ess_bounds_on(&union)
    }

    /// Essential bounds over a union of subintervals of the domain.
    pub fn ess_bounds_on(&self, set: &IntervalUnion) -> (f64, f64) {
        let mut inf = f64::INFINITY;
        let mut sup = f64::NEG_INFINITY;
        let mut consider = |v: f64| {
            if v.is_nan() {
                return;
            }
            inf = inf.min(v);
            sup = sup.max(v);
        };
        for &(c, d) in set.parts() {
            for piece in &self.pieces {
                let lo = piece.lo.max(c);
                let hi = piece.hi.min(d);
                if !(hi > lo) {
                    continue;
                }
                let clipped = Piece {
                    lo,
                    hi,
                    expr: piece.expr.clone(),
                    monotone: piece.monotone,
                };
                match piece.monotone {
                    Monotone::Constant => consider(clipped.eval(clipped.t_of_u(0.5))),
                    Monotone::Increasing | Monotone::Decreasing => {
                        consider(clipped.end_value(PieceEnd::Lo));
                        consider(clipped.end_value(PieceEnd::Hi));
                    }
                    Monotone::Unknown => {
                        consider(clipped.end_value(PieceEnd::Lo));
                        consider(clipped.end_value(PieceEnd::Hi));
                        let n = 512;
                        for i in 1..=n {
                            let u = i as f64 / (n as f64 + 1.0);
                            consider(clipped.eval(clipped.t_of_u(u)));
                        }
                    }
                }
                // Far out on the axis the float spacing can exceed the
                // geometric ladder offsets, collapsing the end ladders to
                // nothing; direct samples at the first representable points
                // inside the clip keep the bounds anchored to real values.
                consider(clipped.eval(clipped.lo.next_up()));
                if clipped.hi.is_finite() {
                    consider(clipped.eval(clipped.hi.next_down()));
                }
            }
        }
        (inf, sup)
    }

    pub fn ess_inf(&self) -> f64 {
        self.ess_bounds().0
    }

    pub fn ess_sup(&self) -> f64 {
        self.ess_bounds().1
    }

    /// Set where the function exceeds `level`.
    pub fn superlevel_set(&self, level: f64, grid: usize) -> IntervalUnion {
        let mut out = IntervalUnion::empty();
        for piece in &self.pieces {
            out = out.union(&piece.superlevel(level, grid));
        }
        out
    }

    /// Set where `lo_level < f(t) <= hi_level`.
    pub fn band_set(&self, lo_level: f64, hi_level: f64, grid: usize) -> IntervalUnion {
        let above_lo = self.superlevel_set(lo_level, grid);
        let above_hi = self.superlevel_set(hi_level, grid);
        above_lo.subtract(&above_hi)
    }

    /// Splits pieces of this function at the given points (points outside
    /// the domain or on existing boundaries are ignored).
    pub fn refined(&self, cuts: &[f64]) -> PiecewiseFunction {
        let mut pieces = Vec::new();
        for piece in &self.pieces {
            let mut local: Vec<f64> = cuts
                .iter()
                .copied()
                .filter(|&c| c > piece.lo && c < piece.hi && c.is_finite())
                .collect();
            local.sort_by(|a, b| a.partial_cmp(b).unwrap());
            local.dedup();
            let mut start = piece.lo;
            for c in local {
                pieces.push(Piece {
                    lo: start,
                    hi: c,
                    expr: piece.expr.clone(),
                    monotone: piece.monotone,
                });
                start = c;
            }
            pieces.push(Piece {
                lo: start,
                hi: piece.hi,
                expr: piece.expr.clone(),
                monotone: piece.monotone,
            });
        }
        PiecewiseFunction {
            name: self.name.clone(),
            domain: self.domain,
            pieces,
        }
    }

    /// Measure of the set where the two functions agree (up to relative
    /// slack), estimated piecewise by dense sampling.
    pub fn equal_measure(&self, other: &PiecewiseFunction, rel_tol: f64) -> f64 {
        let cuts = other.breakpoints();
        let own = self.refined(&cuts);
        let other = other.refined(&self.breakpoints());
        let mut total = 0.0f64;
        for piece in &own.pieces {
            let n = 256;
            let mut hits = 0usize;
            for i in 1..=n {
                let u = i as f64 / (n as f64 + 1.0);
                let t = piece.t_of_u(u);
                let (a, b) = (own.eval(t), other.eval(t));
                let scale = a.abs().max(b.abs()).max(1.0);
                if (a - b).abs() <= rel_tol * scale {
                    hits += 1;
                }
            }
            if hits == 0 {
                continue;
            }
            let frac = hits as f64 / n as f64;
            if piece.is_finite() {
                total += frac * piece.len();
            } else if hits > n / 2 {
                return f64::INFINITY;
            } else {
                // Equality only on a bounded prefix of an unbounded piece:
                // bound the contribution by the sampled prefix length.
                let scale = piece.lo.abs().max(1.0);
                total += frac * scale;
            }
        }
        total
    }

    /// Checks `other <= self` pointwise on a dense sample (the order used to
    /// test inclusions between spaces over a finite measure).
    pub fn dominates(&self, other: &PiecewiseFunction, rel_tol: f64) -> Comparison {
        let n_per_piece = 512;
        let own = self.refined(&other.breakpoints());
        for piece in &own.pieces {
            for i in 1..=n_per_piece {
                let u = i as f64 / (n_per_piece as f64 + 1.0);
                let t = piece.t_of_u(u);
                let p = self.eval(t);
                let q = other.eval(t);
                if p.is_nan() || q.is_nan() {
                    continue;
                }
                // Infinite p dominates everything at that point.
                if p == f64::INFINITY {
                    continue;
                }
                let scale = p.abs().max(q.abs()).max(1.0);
                if q - p > rel_tol * scale {
                    return Comparison::Violation { t, p, q };
                }
            }
        }
        Comparison::LeqAe
    }
}

impl std::fmt::Display for PiecewiseFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{} on {}", self.name, self.domain)?;
        for p in &self.pieces {
            writeln!(f, "  ({}, {}) [{}]  {}", p.lo, p.hi, p.monotone.as_str(), p.expr)?;
        }
        Ok(())
    }
}

/// Derived combination of one or two exponent functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivedKind {
    /// `p / (p - 1)`, the conjugate exponent.
    Conjugate,
    /// `1 / p`.
    Reciprocal,
    /// `p - 1`, the gap above the bottom exponent.
    RightGap,
    /// `p - q`.
    Difference,
    /// `(p - q) / (p q)`, the reciprocal gap `1/q - 1/p`.
    DifferenceOverProduct,
    /// `p q / (p - q)`.
    ProductOverDifference,
    /// `(p - q) / p`, the relative gap.
    RelativeGap,
}

impl DerivedKind {
    pub fn is_unary(self) -> bool {
        matches!(
            self,
            DerivedKind::Conjugate | DerivedKind::Reciprocal | DerivedKind::RightGap
        )
    }

    fn build(self, p: &Expr, q: Option<&Expr>) -> Expr {
        let p = p.clone();
        match self {
            DerivedKind::Conjugate => Expr::div(p.clone(), Expr::sub(p, Expr::Const(1.0))),
            DerivedKind::Reciprocal => Expr::div(Expr::Const(1.0), p),
            DerivedKind::RightGap => Expr::sub(p, Expr::Const(1.0)),
            DerivedKind::Difference => Expr::sub(p, q.unwrap().clone()),
            DerivedKind::DifferenceOverProduct => {
                let q = q.unwrap().clone();
                Expr::div(Expr::sub(p.clone(), q.clone()), Expr::mul(p, q))
            }
            DerivedKind::ProductOverDifference => {
                let q = q.unwrap().clone();
                Expr::div(Expr::mul(p.clone(), q.clone()), Expr::sub(p, q))
            }
            DerivedKind::RelativeGap => {
                let q = q.unwrap().clone();
                Expr::div(Expr::sub(p.clone(), q), p)
            }
        }
    }

    fn direction(self, dp: Monotone, dq: Monotone) -> Monotone {
        match self {
            DerivedKind::Conjugate | DerivedKind::Reciprocal => dp.flip(),
            DerivedKind::RightGap => dp,
            DerivedKind::Difference => dp.add(dq.flip()),
            // 1/q - 1/p: the first term moves against q, the second with p.
            DerivedKind::DifferenceOverProduct => dq.flip().add(dp),
            DerivedKind::ProductOverDifference => dq.flip().add(dp).flip(),
            // 1 - q/p with positive p, q: moves against q and with p.
            DerivedKind::RelativeGap => dq.add(dp.flip()).flip(),
        }
    }

    pub fn describe(self, p: &str, q: &str) -> String {
        match self {
            DerivedKind::Conjugate => format!("{p}/({p}-1)"),
            DerivedKind::Reciprocal => format!("1/{p}"),
            DerivedKind::RightGap => format!("{p}-1"),
            DerivedKind::Difference => format!("{p}-{q}"),
            DerivedKind::DifferenceOverProduct => format!("({p}-{q})/({p}*{q})"),
            DerivedKind::ProductOverDifference => format!("{p}*{q}/({p}-{q})"),
            DerivedKind::RelativeGap => format!("({p}-{q})/{p}"),
        }
    }
}

/// Applies a one-argument combination.
pub fn derive_unary(kind: DerivedKind, f: &PiecewiseFunction) -> Result<PiecewiseFunction> {
    if !kind.is_unary() {
        return Err(Error::Domain(format!("{kind:?} takes two functions")));
    }
    let pieces = f
        .pieces
        .iter()
        .map(|p| Piece {
            lo: p.lo,
            hi: p.hi,
            expr: kind.build(&p.expr, None),
            monotone: kind.direction(p.monotone, Monotone::Unknown),
        })
        .collect();
    Ok(PiecewiseFunction {
        name: kind.describe(&f.name, ""),
        domain: f.domain,
        pieces,
    })
}

/// Applies a two-argument combination on the common refinement of `p` and
/// `q`, deriving per-piece directions algebraically and upgrading by
/// sampling where both inputs are declared.
pub fn derive_binary(
    kind: DerivedKind,
    p: &PiecewiseFunction,
    q: &PiecewiseFunction,
) -> Result<PiecewiseFunction> {
    if kind.is_unary() {
        return Err(Error::Domain(format!("{kind:?} takes one function")));
    }
    if (p.domain.lo() - q.domain.lo()).abs() > 1e-12
        || (p.domain.hi() - q.domain.hi()).abs() > 1e-12 && !(p.domain.hi().is_infinite() && q.domain.hi().is_infinite())
    {
        return Err(Error::Domain(format!(
            "domain mismatch: {} vs {}",
            p.domain, q.domain
        )));
    }
    let p_ref = p.refined(&q.breakpoints());
    let q_ref = q.refined(&p.breakpoints());
    let mut pieces = Vec::new();
    for pp in &p_ref.pieces {
        let mid = pp.t_of_u(0.5);
        let qq = q_ref.piece_containing(mid);
        let expr = kind.build(&pp.expr, Some(&qq.expr));
        let algebra = kind.direction(pp.monotone, qq.monotone);
        let draft = Piece {
            lo: pp.lo,
            hi: pp.hi,
            expr,
            monotone: algebra,
        };
        if algebra == Monotone::Unknown && pp.monotone.is_declared() && qq.monotone.is_declared() {
            pieces.extend(upgrade_by_sampling(draft));
        } else {
            pieces.push(draft);
        }
    }
    Ok(PiecewiseFunction {
        name: kind.describe(&p.name, &q.name),
        domain: p.domain,
        pieces,
    })
}

/// Dense-samples a piece whose direction the algebra could not determine,
/// returning either the piece with an observed direction or, when a single
/// interior extremum is found, the two monotone halves split at it. Falls
/// back to the unchanged piece when the samples oscillate.
fn upgrade_by_sampling(piece: Piece) -> Vec<Piece> {
    const N: usize = 513;
    let mut vals = Vec::with_capacity(N);
    let mut scale = 0.0f64;
    for i in 1..=N {
        let u = i as f64 / (N as f64 + 1.0);
        let v = piece.eval(piece.t_of_u(u));
        if !v.is_finite() {
            return vec![piece];
        }
        scale = scale.max(v.abs());
        vals.push(v);
    }
    let eps = 1e-11 * scale.max(1e-300);
    let mut signs: Vec<(i8, usize)> = Vec::new();
    for i in 0..vals.len() - 1 {
        let d = vals[i + 1] - vals[i];
        let s = if d > eps {
            1
        } else if d < -eps {
            -1
        } else {
            0
        };
        if s != 0 && signs.last().map(|&(ls, _)| ls) != Some(s) {
            signs.push((s, i));
        }
    }
    let tagged = |m: Monotone| {
        vec![Piece {
            monotone: m,
            ..piece.clone()
        }]
    };
    match signs.as_slice() {
        [] => tagged(Monotone::Constant),
        [(1, _)] => tagged(Monotone::Increasing),
        [(-1, _)] => tagged(Monotone::Decreasing),
        [(1, _), (-1, j)] => split_at_extremum(&piece, *j, true),
        [(-1, _), (1, j)] => split_at_extremum(&piece, *j, false),
        _ => vec![piece],
    }
}

/// Golden-section search for the extremum near sample index `j`, then split.
fn split_at_extremum(piece: &Piece, j: usize, maximum: bool) -> Vec<Piece> {
    const N: usize = 513;
    let u_of = |i: usize| i as f64 / (N as f64 + 1.0);
    let mut a = u_of(j.saturating_sub(2).max(1));
    let mut b = u_of((j + 3).min(N));
    let score = |u: f64| {
        let v = piece.eval(piece.t_of_u(u));
        if maximum {
            v
        } else {
            -v
        }
    };
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let (mut f1, mut f2) = (score(x1), score(x2));
    for _ in 0..200 {
        if b - a < 1e-14 {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = score(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = score(x1);
        }
    }
    let u_star = 0.5 * (a + b);
    let t_star = piece.t_of_u(u_star);
    let (left_dir, right_dir) = if maximum {
        (Monotone::Increasing, Monotone::Decreasing)
    } else {
        (Monotone::Decreasing, Monotone::Increasing)
    };
    let margin = 1e-9 * (t_star.abs().max(piece.lo.abs()).max(1.0));
    if t_star - piece.lo < margin {
        return vec![Piece {
            monotone: right_dir,
            ..piece.clone()
        }];
    }
    if piece.hi.is_finite() && piece.hi - t_star < margin {
        return vec![Piece {
            monotone: left_dir,
            ..piece.clone()
        }];
    }
    vec![
        Piece {
            lo: piece.lo,
            hi: t_star,
            expr: piece.expr.clone(),
            monotone: left_dir,
        },
        Piece {
            lo: t_star,
            hi: piece.hi,
            expr: piece.expr.clone(),
            monotone: right_dir,
        },
    ]
}

/// Classifies the limit of a ladder of samples approaching an endpoint.
fn limit_from_ladder(vals: &[f64]) -> f64 {
    let n = vals.len();
    if n == 0 {
        return f64::NAN;
    }
    let last = vals[n - 1];
    if n < 5 {
        return last;
    }
    let scale = last.abs().max(1e-300);
    let d: Vec<f64> = vals.windows(2).map(|w| w[1] - w[0]).collect();
    // Increments already at rounding noise: converged.
    if d[d.len() - 3..].iter().all(|x| x.abs() <= 1e-11 * scale) {
        return last;
    }
    // Increments decaying geometrically: finite limit, extrapolated.
    let tail = &d[d.len().saturating_sub(6)..];
    let ratios: Vec<f64> = tail
        .windows(2)
        .map(|w| w[1].abs() / w[0].abs().max(1e-300))
        .collect();
    if !ratios.is_empty() && ratios.iter().all(|&r| r <= 0.85) {
        let r = ratios.iter().cloned().fold(0.0f64, f64::max);
        return last + tail[tail.len() - 1] * r / (1.0 - r);
    }
    // Increments decaying like a summable power law: finite limit close to
    // the deepest sample.
    let pts: Vec<(f64, f64)> = d
        .iter()
        .enumerate()
        .filter(|(_, x)| x.abs() > 1e-13 * scale)
        .map(|(i, x)| ((i as f64 + 1.0).ln(), x.abs().ln()))
        .collect();
    if pts.len() >= 5 {
        let np = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / np;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / np;
        let (mut num, mut den) = (0.0, 0.0);
        for (x, y) in &pts {
            num += (x - mx) * (y - my);
            den += (x - mx) * (x - mx);
        }
        let beta = if den == 0.0 { 0.0 } else { num / den };
        if beta <= -1.3 {
            return last;
        }
    }
    // Persistent increments: the end blows up (possibly very slowly).
    if d[d.len() - 1] > 0.0 {
        f64::INFINITY
    } else {
        f64::NEG_INFINITY
    }
}

/// Checks that a function is a valid exponent: at least 1 everywhere it is
/// sampled (infinite values are allowed, they mean the bound is not attained
/// in floating point).
pub fn validate_exponent(f: &PiecewiseFunction) -> Result<()> {
    for piece in f.pieces() {
        let n = 128;
        for i in 1..=n {
            let u = i as f64 / (n as f64 + 1.0);
            let t = piece.t_of_u(u);
            let v = piece.eval(t);
            if v.is_nan() {
                return Err(Error::Domain(format!(
                    "exponent {} is undefined at t = {t}",
                    f.name()
                )));
            }
            if v < 1.0 - 1e-12 {
                return Err(Error::Domain(format!(
                    "exponent {} = {v} < 1 at t = {t}",
                    f.name()
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use std::collections::BTreeMap;

    fn func(name: &str, domain: (f64, f64), specs: &[(f64, f64, &str, Monotone)]) -> PiecewiseFunction {
        let dom = IntervalDomain::new(domain.0, domain.1).unwrap();
        let pieces = specs
            .iter()
            .map(|(lo, hi, src, m)| {
                Piece::new(*lo, *hi, parse(src, &BTreeMap::new()).unwrap(), *m).unwrap()
            })
            .collect();
        PiecewiseFunction::new(name, dom, pieces).unwrap()
    }

    #[test]
    fn piecewise_eval_picks_the_right_piece() {
        let f = func(
            "f",
            (0.0, 1.0),
            &[
                (0.0, 0.5, "2", Monotone::Constant),
                (0.5, 1.0, "3", Monotone::Constant),
            ],
        );
        assert_eq!(f.eval(0.25), 2.0);
        assert_eq!(f.eval(0.75), 3.0);
    }

    #[test]
    fn conjugate_flips_direction_and_matches_formula() {
        let p = func("p", (0.0, 1.0), &[(0.0, 1.0, "1 + t", Monotone::Increasing)]);
        let c = derive_unary(DerivedKind::Conjugate, &p).unwrap();
        assert_eq!(c.pieces()[0].monotone, Monotone::Decreasing);
        // (1+t)/t at t = 0.5 is 3.
        assert!((c.eval(0.5) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn conjugate_of_two_is_two() {
        let p = func("p", (0.0, 1.0), &[(0.0, 1.0, "2", Monotone::Constant)]);
        let c = derive_unary(DerivedKind::Conjugate, &p).unwrap();
        assert!((c.eval(0.3) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn reciprocal_gap_direction_from_algebra() {
        // p decreasing, q increasing: 1/q - 1/p is decreasing.
        let p = func("p", (0.0, 1.0), &[(0.0, 1.0, "3 - t", Monotone::Decreasing)]);
        let q = func("q", (0.0, 1.0), &[(0.0, 1.0, "1 + t", Monotone::Increasing)]);
        let g = derive_binary(DerivedKind::DifferenceOverProduct, &p, &q).unwrap();
        assert_eq!(g.pieces()[0].monotone, Monotone::Decreasing);
        let t = 0.25;
        let expect = 1.0 / (1.0 + t) - 1.0 / (3.0 - t);
        assert!((g.eval(t) - expect).abs() < 1e-12);
    }

    #[test]
    fn sampling_splits_a_hump_at_its_peak() {
        // p = (1 - ln t)^{3/2}, q = (1 - ln t)^{1/2} on (0,1), both
        // decreasing. Their reciprocal gap A^{-1/2} - A^{-3/2} (with
        // A = 1 - ln t) peaks where A = 3, i.e. t = e^{-2}.
        let p = func(
            "p",
            (0.0, 1.0),
            &[(0.0, 1.0, "(1 - ln(t))^1.5", Monotone::Decreasing)],
        );
        let q = func(
            "q",
            (0.0, 1.0),
            &[(0.0, 1.0, "(1 - ln(t))^0.5", Monotone::Decreasing)],
        );
        let g = derive_binary(DerivedKind::DifferenceOverProduct, &p, &q).unwrap();
        assert_eq!(g.pieces().len(), 2, "expected a split at the peak");
        assert_eq!(g.pieces()[0].monotone, Monotone::Increasing);
        assert_eq!(g.pieces()[1].monotone, Monotone::Decreasing);
        let t_star = g.pieces()[0].hi;
        assert!(
            (t_star - (-2.0f64).exp()).abs() < 1e-6,
            "split at {t_star}, expected {}",
            (-2.0f64).exp()
        );
    }

    #[test]
    fn unknown_inputs_are_never_upgraded() {
        let p = func("p", (0.0, 1.0), &[(0.0, 1.0, "2 + t", Monotone::Unknown)]);
        let q = func("q", (0.0, 1.0), &[(0.0, 1.0, "2", Monotone::Constant)]);
        let g = derive_binary(DerivedKind::Difference, &p, &q).unwrap();
        assert_eq!(g.pieces()[0].monotone, Monotone::Unknown);
    }

    #[test]
    fn ess_bounds_detect_blowup_and_finite_end() {
        let p = func("p", (0.0, 1.0), &[(0.0, 1.0, "1/t^0.5", Monotone::Decreasing)]);
        let (inf, sup) = p.ess_bounds();
        assert!((inf - 1.0).abs() < 1e-6, "inf = {inf}");
        assert_eq!(sup, f64::INFINITY);
    }

    #[test]
    fn ess_bounds_on_unbounded_domain() {
        let p = func("p", (0.0, f64::INFINITY), &[(0.0, f64::INFINITY, "1 + 1/(1 + t)", Monotone::Decreasing)]);
        let (inf, sup) = p.ess_bounds();
        assert!((inf - 1.0).abs() < 1e-6, "inf = {inf}");
        assert!((sup - 2.0).abs() < 1e-6, "sup = {sup}");
    }

    #[test]
    fn superlevel_of_decreasing_log() {
        // {t in (0,1) : ln(1/t) > 2} = (0, e^{-2}).
        let f = func("f", (0.0, 1.0), &[(0.0, 1.0, "ln(1/t)", Monotone::Decreasing)]);
        let s = f.superlevel_set(2.0, 64);
        assert!((s.measure() - (-2.0f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn band_set_between_levels() {
        // {1 < ln(1/t) <= 2} = [e^{-2}, e^{-1}).
        let f = func("f", (0.0, 1.0), &[(0.0, 1.0, "ln(1/t)", Monotone::Decreasing)]);
        let band = f.band_set(1.0, 2.0, 64);
        let expect = (-1.0f64).exp() - (-2.0f64).exp();
        assert!((band.measure() - expect).abs() < 1e-9, "band = {band}");
    }

    #[test]
    fn equal_measure_of_partial_overlap() {
        let p = func(
            "p",
            (0.0, 1.0),
            &[
                (0.0, 0.5, "2", Monotone::Constant),
                (0.5, 1.0, "3", Monotone::Constant),
            ],
        );
        let q = func("q", (0.0, 1.0), &[(0.0, 1.0, "2", Monotone::Constant)]);
        let m = p.equal_measure(&q, 1e-9);
        assert!((m - 0.5).abs() < 0.02, "measure = {m}");
    }

    #[test]
    fn dominates_catches_a_violation() {
        let p = func("p", (0.0, 1.0), &[(0.0, 1.0, "2", Monotone::Constant)]);
        let q = func("q", (0.0, 1.0), &[(0.0, 1.0, "2 + t", Monotone::Increasing)]);
        match p.dominates(&q, 1e-9) {
            Comparison::Violation { t, .. } => assert!(t > 0.0),
            other => panic!("expected violation, got {other:?}"),
        }
        assert_eq!(q.dominates(&p, 1e-9), Comparison::LeqAe);
    }

    #[test]
    fn crossing_solves_levels_exactly_enough() {
        let f = func("f", (0.0, 1.0), &[(0.0, 1.0, "ln(1/t)", Monotone::Decreasing)]);
        let x = f.pieces()[0].crossing(3.0).unwrap();
        assert!((x - (-3.0f64).exp()).abs() < 1e-12);
        // Deep level: crossing near 0 keeps relative precision.
        let x = f.pieces()[0].crossing(100.0).unwrap();
        assert!((x / (-100.0f64).exp() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn validate_exponent_rejects_below_one() {
        let bad = func("p", (0.0, 1.0), &[(0.0, 1.0, "t", Monotone::Increasing)]);
        assert!(validate_exponent(&bad).is_err());
        let good = func("p", (0.0, 1.0), &[(0.0, 1.0, "1 + t", Monotone::Increasing)]);
        assert!(validate_exponent(&good).is_ok());
    }
}
