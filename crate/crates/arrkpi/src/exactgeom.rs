//! Exact rational linear algebra underneath all arrangement computations.
//!
//! Coordinates are [`Rational`] (arbitrary-precision). Hyperplanes are stored
//! with integer data in a canonical form so that sign vectors are stable:
//! the coefficient vector is primitive (gcd 1 including the offset) and the
//! first nonzero normal entry is positive.
//!
//! Feasibility of a strict/equality sign system is decided by depth-first
//! Fourier–Motzkin elimination with exact arithmetic; a witness point is
//! recovered by back-substituting interval midpoints.

use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary-precision rational scalar used for all exact coordinates.
pub type Rational = num::BigRational;

/// Convenience constructor for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Convenience constructor for the fraction `n/d` (d ≠ 0).
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("hyperplane normal must be nonzero")]
    ZeroNormal,
    #[error("box must have one (lo, hi) pair per coordinate with lo < hi")]
    InvalidBox,
}

/// Sign of a rational quantity; orders as − < 0 < +.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(x: &Rational) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn of_int(x: i64) -> Sign {
        match x.cmp(&0) {
            std::cmp::Ordering::Less => Sign::Neg,
            std::cmp::Ordering::Equal => Sign::Zero,
            std::cmp::Ordering::Greater => Sign::Pos,
        }
    }

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_char(self.as_char())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let c = char::deserialize(d)?;
        match c {
            '-' => Ok(Sign::Neg),
            '0' => Ok(Sign::Zero),
            '+' => Ok(Sign::Pos),
            other => Err(serde::de::Error::custom(format!(
                "invalid sign character {other:?}"
            ))),
        }
    }
}

/// Sign vector indexed like the hyperplane list it was evaluated against.
pub type SignVector = Vec<Sign>;

/// Renders a sign vector as a compact string such as `+0-`.
pub fn signs_to_string(sv: &[Sign]) -> String {
    sv.iter().map(|s| s.as_char()).collect()
}

/// An affine hyperplane `{ x : normal · x = offset }` with canonical integer
/// data: the combined vector (normal, offset) is primitive and the first
/// nonzero normal entry is positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Hyperplane {
    normal: Vec<i64>,
    offset: i64,
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Hyperplane {
    /// Builds a hyperplane from raw data, canonicalizing it.
    pub fn new(normal: Vec<i64>, offset: i64) -> Result<Hyperplane, GeomError> {
        if normal.iter().all(|&a| a == 0) {
            return Err(GeomError::ZeroNormal);
        }
        let mut h = Hyperplane { normal, offset };
        h.canonicalize();
        Ok(h)
    }

    /// Builds from a JSON-style row `[a₁, …, aₙ, c]` meaning `a·x = c`.
    pub fn from_row(row: &[i64]) -> Result<Hyperplane, GeomError> {
        if row.len() < 2 {
            return Err(GeomError::ZeroNormal);
        }
        Hyperplane::new(row[..row.len() - 1].to_vec(), row[row.len() - 1])
    }

    /// The row `[a₁, …, aₙ, c]` form used by the JSON interchange format.
    pub fn to_row(&self) -> Vec<i64> {
        let mut row = self.normal.clone();
        row.push(self.offset);
        row
    }

    fn canonicalize(&mut self) {
        let mut g = self.normal.iter().fold(0i64, |acc, &a| gcd_i64(acc, a));
        g = gcd_i64(g, self.offset);
        if g > 1 {
            for a in &mut self.normal {
                *a /= g;
            }
            self.offset /= g;
        }
        let lead = self.normal.iter().find(|&&a| a != 0).copied().unwrap_or(0);
        if lead < 0 {
            for a in &mut self.normal {
                *a = -*a;
            }
            self.offset = -self.offset;
        }
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    /// Exact value of `normal · p − offset`.
    pub fn eval(&self, p: &[Rational]) -> Result<Rational, GeomError> {
        if p.len() != self.normal.len() {
            return Err(GeomError::DimensionMismatch {
                expected: self.normal.len(),
                got: p.len(),
            });
        }
        let mut acc = -rat(self.offset);
        for (a, x) in self.normal.iter().zip(p) {
            if *a != 0 {
                acc += rat(*a) * x;
            }
        }
        Ok(acc)
    }

    /// Sign of the hyperplane functional at `p`.
    pub fn eval_sign(&self, p: &[Rational]) -> Result<Sign, GeomError> {
        Ok(Sign::of(&self.eval(p)?))
    }

    /// The same hyperplane translated so that `v` becomes the origin
    /// (i.e. the linear hyperplane with the same normal when `v` lies on it).
    pub fn translated_to_origin(&self, v: &[Rational]) -> Result<Hyperplane, GeomError> {
        debug_assert_eq!(self.eval_sign(v)?, Sign::Zero, "point must lie on the hyperplane");
        Hyperplane::new(self.normal.clone(), 0)
    }
}

impl std::fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, &a) in self.normal.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if first {
                if a == -1 {
                    write!(f, "-")?;
                } else if a != 1 {
                    write!(f, "{a}")?;
                }
                first = false;
            } else if a < 0 {
                write!(f, " - ")?;
                if a != -1 {
                    write!(f, "{}", -a)?;
                }
            } else {
                write!(f, " + ")?;
                if a != 1 {
                    write!(f, "{a}")?;
                }
            }
            write!(f, "x{}", i + 1)?;
        }
        write!(f, " = {}", self.offset)
    }
}

/// A nonempty affine subspace given by a basepoint and an independent basis of
/// its linear part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFlat {
    pub basepoint: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
}

impl AffineFlat {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basepoint.len()
    }

    /// Whether `p` lies on the flat (exact membership test).
    pub fn contains(&self, p: &[Rational]) -> bool {
        // Solve basepoint + directions·t = p by Gaussian elimination on the
        // direction matrix; consistent iff p − basepoint is in the span.
        let n = self.basepoint.len();
        if p.len() != n {
            return false;
        }
        let mut cols: Vec<Vec<Rational>> = self.directions.clone();
        let mut rhs: Vec<Rational> = (0..n).map(|i| p[i].clone() - self.basepoint[i].clone()).collect();
        let mut row = 0usize;
        for c in 0..cols.len() {
            let Some(pivot) = (row..n).find(|&r| !cols[c][r].is_zero()) else {
                continue;
            };
            for col in cols.iter_mut() {
                col.swap(row, pivot);
            }
            rhs.swap(row, pivot);
            let pv = cols[c][row].clone();
            for r in 0..n {
                if r != row && !cols[c][r].is_zero() {
                    let factor = cols[c][r].clone() / pv.clone();
                    for col in cols.iter_mut() {
                        let delta = col[row].clone() * factor.clone();
                        col[r] -= delta;
                    }
                    let delta = rhs[row].clone() * factor.clone();
                    rhs[r] -= delta;
                }
            }
            row += 1;
        }
        // Any residual in a row with no pivot must vanish.
        let mut pivot_rows = vec![false; n];
        let mut r = 0usize;
        for c in 0..cols.len() {
            if r < n && !cols[c][r].is_zero() {
                pivot_rows[r] = true;
                r += 1;
            }
        }
        rhs.iter().enumerate().all(|(i, v)| pivot_rows[i] || v.is_zero())
    }
}

/// Exact intersection of a set of hyperplanes: the affine flat, or `None`
/// if the intersection is empty. An empty input yields the whole space.
pub fn flat_of(hs: &[Hyperplane], ambient_dim: usize) -> Result<Option<AffineFlat>, GeomError> {
    for h in hs {
        if h.dim() != ambient_dim {
            return Err(GeomError::DimensionMismatch {
                expected: ambient_dim,
                got: h.dim(),
            });
        }
    }
    // Gaussian elimination on the m×n system normal·x = offset.
    let m = hs.len();
    let n = ambient_dim;
    let mut a: Vec<Vec<Rational>> = hs
        .iter()
        .map(|h| h.normal().iter().map(|&c| rat(c)).collect())
        .collect();
    let mut b: Vec<Rational> = hs.iter().map(|h| rat(h.offset())).collect();
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut row = 0usize;
    for col in 0..n {
        let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        b.swap(row, p);
        let pv = a[row][col].clone();
        for c in col..n {
            a[row][c] = a[row][c].clone() / pv.clone();
        }
        b[row] = b[row].clone() / pv.clone();
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..n {
                    let delta = a[row][c].clone() * f.clone();
                    a[r][c] -= delta;
                }
                let delta = b[row].clone() * f.clone();
                b[r] -= delta;
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == m {
            break;
        }
    }
    // Inconsistent if a zero row has nonzero rhs.
    for r in row..m {
        if !b[r].is_zero() {
            return Ok(None);
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let is_pivot = {
        let mut v = vec![false; n];
        for &c in &pivot_cols {
            v[c] = true;
        }
        v
    };
    // Particular solution: free variables 0.
    let mut base = vec![Rational::zero(); n];
    for (r, &c) in pivot_cols.iter().enumerate() {
        base[c] = b[r].clone();
    }
    // Nullspace basis: one direction per free column.
    let mut directions = Vec::new();
    for free in 0..n {
        if is_pivot[free] {
            continue;
        }
        let mut d = vec![Rational::zero(); n];
        d[free] = Rational::one();
        for (r, &c) in pivot_cols.iter().enumerate() {
            d[c] = -a[r][free].clone();
        }
        directions.push(d);
    }
    Ok(Some(AffineFlat {
        basepoint: base,
        directions,
    }))
}

/// Relation of a [`LinCon`]: `= 0`, `> 0`, or `≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Gt,
    Ge,
}

/// One linear constraint `coeffs · x + constant REL 0` for the exact solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinCon {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
    pub rel: Rel,
}

impl LinCon {
    /// Scales the coefficient vector to its primitive integer direction and
    /// applies the same scale factor to the constant, so that parallel
    /// constraints become directly comparable.
    fn normalized(&self) -> (Vec<BigInt>, Rational) {
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            let d = c.denom().clone();
            let g = num::integer::gcd(denom_lcm.clone(), d.clone());
            denom_lcm = denom_lcm / g * d;
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = num::integer::gcd(g, v.abs());
        }
        let scale = if g.is_zero() || g.is_one() {
            Rational::from_integer(denom_lcm)
        } else {
            for v in &mut ints {
                *v = v.clone() / g.clone();
            }
            Rational::new(denom_lcm, g)
        };
        (ints, self.constant.clone() * scale)
    }
}

/// Decides whether the strict/equality system given by `signs` over `hs`,
/// intersected with the open box, is nonempty; returns an exact witness.
///
/// `signs` may be a prefix-length slice paired with the same-length prefix of
/// `hs`; callers enumerating cells use that to prune partial assignments.
pub fn feasible(
    signs: &[Sign],
    hs: &[Hyperplane],
    bx: &[(Rational, Rational)],
) -> Result<Option<Vec<Rational>>, GeomError> {
    if signs.len() != hs.len() {
        return Err(GeomError::DimensionMismatch {
            expected: hs.len(),
            got: signs.len(),
        });
    }
    let n = bx.len();
    for h in hs {
        if h.dim() != n {
            return Err(GeomError::DimensionMismatch {
                expected: n,
                got: h.dim(),
            });
        }
    }
    for (lo, hi) in bx {
        if lo >= hi {
            return Err(GeomError::InvalidBox);
        }
    }
    let mut cons: Vec<LinCon> = Vec::with_capacity(hs.len() + 2 * n);
    for (h, &s) in hs.iter().zip(signs) {
        // normal·x − offset  (>|=|<)  0, flipped so inequalities read "> 0".
        let flip = s == Sign::Neg;
        let coeffs: Vec<Rational> = h
            .normal()
            .iter()
            .map(|&a| if flip { rat(-a) } else { rat(a) })
            .collect();
        let constant = if flip { rat(h.offset()) } else { rat(-h.offset()) };
        cons.push(LinCon {
            coeffs,
            constant,
            rel: if s == Sign::Zero { Rel::Eq } else { Rel::Gt },
        });
    }
    for (i, (lo, hi)) in bx.iter().enumerate() {
        let mut c1 = vec![Rational::zero(); n];
        c1[i] = Rational::one();
        cons.push(LinCon {
            coeffs: c1,
            constant: -lo.clone(),
            rel: Rel::Gt,
        });
        let mut c2 = vec![Rational::zero(); n];
        c2[i] = -Rational::one();
        cons.push(LinCon {
            coeffs: c2,
            constant: hi.clone(),
            rel: Rel::Gt,
        });
    }
    Ok(fm_solve(cons, n))
}

/// Decides feasibility of an arbitrary system of exact linear constraints
/// (each `coeffs·x + constant {=,>,≥} 0` over `nvars` variables) and returns
/// a witness point if the solution set is nonempty.
pub fn solve_constraints(cons: Vec<LinCon>, nvars: usize) -> Option<Vec<Rational>> {
    debug_assert!(cons.iter().all(|c| c.coeffs.len() == nvars));
    fm_solve(cons, nvars)
}

/// Recursive Fourier–Motzkin with witness recovery; constraints read
/// `coeffs·x + constant {=,>,≥} 0`.
fn fm_solve(cons: Vec<LinCon>, nvars: usize) -> Option<Vec<Rational>> {
    let cons = dedup_constraints(cons);
    if nvars == 0 {
        for c in &cons {
            let ok = match c.rel {
                Rel::Eq => c.constant.is_zero(),
                Rel::Gt => c.constant.is_positive(),
                Rel::Ge => !c.constant.is_negative(),
            };
            if !ok {
                return None;
            }
        }
        return Some(Vec::new());
    }
    let k = nvars - 1;
    // Prefer substituting an equality that involves x_k.
    if let Some(pos) = cons
        .iter()
        .position(|c| c.rel == Rel::Eq && !c.coeffs[k].is_zero())
    {
        let eq = cons[pos].clone();
        let ak = eq.coeffs[k].clone();
        // x_k = (−constant − Σ_{j<k} a_j x_j) / a_k
        let mut rest = Vec::with_capacity(cons.len() - 1);
        for (i, c) in cons.into_iter().enumerate() {
            if i == pos {
                continue;
            }
            rest.push(substitute(c, k, &eq, &ak));
        }
        let partial = fm_solve(rest, k)?;
        let mut acc = -eq.constant.clone();
        for j in 0..k {
            if !eq.coeffs[j].is_zero() {
                acc -= eq.coeffs[j].clone() * partial[j].clone();
            }
        }
        let mut out = partial;
        out.push(acc / ak);
        return Some(out);
    }
    // Partition inequalities by the sign of the x_k coefficient.
    let mut lowers: Vec<LinCon> = Vec::new(); // a_k > 0: x_k bounded below
    let mut uppers: Vec<LinCon> = Vec::new(); // a_k < 0: x_k bounded above
    let mut rest: Vec<LinCon> = Vec::new();
    for c in cons {
        if c.coeffs[k].is_zero() {
            rest.push(c);
        } else if c.coeffs[k].is_positive() {
            lowers.push(c);
        } else {
            uppers.push(c);
        }
    }
    // Eliminate x_k: each (lower, upper) pair combines into a new constraint,
    // strict if either input is strict.
    let mut reduced = rest;
    for lo in &lowers {
        for up in &uppers {
            // lo: a·x_k ⋆ L(x'), up: −b·x_k ⋆ −U(x') with a, b > 0 ⇒ bL ⋆ aU.
            let a = lo.coeffs[k].clone();
            let b = -up.coeffs[k].clone();
            let mut coeffs = vec![Rational::zero(); k];
            for (j, cj) in coeffs.iter_mut().enumerate() {
                *cj = lo.coeffs[j].clone() * b.clone() + up.coeffs[j].clone() * a.clone();
            }
            let constant = lo.constant.clone() * b + up.constant.clone() * a;
            let rel = if lo.rel == Rel::Gt || up.rel == Rel::Gt {
                Rel::Gt
            } else {
                Rel::Ge
            };
            reduced.push(LinCon {
                coeffs,
                constant,
                rel,
            });
        }
    }
    for c in &mut reduced {
        c.coeffs.truncate(k);
    }
    let partial = fm_solve(reduced, k)?;
    // Back-substitute: interval for x_k; prefer the midpoint.
    let bound_at = |c: &LinCon| -> Rational {
        let mut v = -c.constant.clone();
        for j in 0..k {
            if !c.coeffs[j].is_zero() {
                v -= c.coeffs[j].clone() * partial[j].clone();
            }
        }
        v / c.coeffs[k].clone()
    };
    let mut lo_best: Option<(Rational, bool)> = None; // (bound, strict)
    for c in &lowers {
        let bound = bound_at(c);
        let strict = c.rel == Rel::Gt;
        let better = match &lo_best {
            None => true,
            Some((b, bs)) => bound > *b || (bound == *b && strict && !bs),
        };
        if better {
            lo_best = Some((bound, strict));
        }
    }
    let mut hi_best: Option<(Rational, bool)> = None;
    for c in &uppers {
        let bound = bound_at(c);
        let strict = c.rel == Rel::Gt;
        let better = match &hi_best {
            None => true,
            Some((b, bs)) => bound < *b || (bound == *b && strict && !bs),
        };
        if better {
            hi_best = Some((bound, strict));
        }
    }
    let x_k = match (lo_best, hi_best) {
        (Some((lo, lo_strict)), Some((hi, hi_strict))) => {
            if lo < hi {
                (lo + hi) / rat(2)
            } else {
                debug_assert!(
                    lo == hi && !lo_strict && !hi_strict,
                    "Fourier–Motzkin interval must be nonempty"
                );
                lo
            }
        }
        (Some((lo, strict)), None) => {
            if strict {
                lo + Rational::one()
            } else {
                lo
            }
        }
        (None, Some((hi, strict))) => {
            if strict {
                hi - Rational::one()
            } else {
                hi
            }
        }
        (None, None) => Rational::zero(),
    };
    let mut out = partial;
    out.push(x_k);
    Some(out)
}

fn substitute(mut c: LinCon, k: usize, eq: &LinCon, ak: &Rational) -> LinCon {
    // Replace x_k using eq: a_k x_k = −eq.constant − Σ_{j<k} eq.coeffs[j] x_j.
    let ck = c.coeffs[k].clone();
    if !ck.is_zero() {
        let f = ck / ak.clone();
        for j in 0..k {
            let delta = eq.coeffs[j].clone() * f.clone();
            c.coeffs[j] -= delta;
        }
        c.constant -= eq.constant.clone() * f;
        c.coeffs[k] = Rational::zero();
    }
    c
}

/// Same-direction pruning on the primitive normalized form. The inequality
/// with the smallest normalized constant is the binding one (it implies every
/// parallel inequality with a larger constant); at equal constants a strict
/// one implies the weak one. Duplicate equalities merge; contradictory
/// parallel equalities both survive (keyed by constant) so the solver can
/// detect infeasibility.
fn dedup_constraints(cons: Vec<LinCon>) -> Vec<LinCon> {
    use std::collections::BTreeMap;
    let mut ineq_best: BTreeMap<Vec<BigInt>, (Rational, LinCon)> = BTreeMap::new();
    let mut eqs: BTreeMap<(Vec<BigInt>, Rational), LinCon> = BTreeMap::new();
    for c in cons {
        let (dir, norm_const) = c.normalized();
        if c.rel == Rel::Eq {
            eqs.entry((dir, norm_const)).or_insert(c);
        } else {
            let replace = match ineq_best.get(&dir) {
                None => true,
                Some((prev_const, prev)) => {
                    norm_const < *prev_const
                        || (norm_const == *prev_const && c.rel == Rel::Gt && prev.rel == Rel::Ge)
                }
            };
            if replace {
                ineq_best.insert(dir, (norm_const, c));
            }
        }
    }
    eqs.into_values()
        .chain(ineq_best.into_values().map(|(_, c)| c))
        .collect()
}
