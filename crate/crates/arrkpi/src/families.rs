//! Arrangement families and the admissibility catalogue.
//!
//! Builders for the reflection arrangements (types B, D, skewed A), the
//! odd-level family `family_h(k, n)`, and the congruence family
//! `family_k(k, n, half_width)` restricted to an open box.
//!
//! [`classify_local`] decomposes a central arrangement into a product of
//! catalogue blocks — type B, type D, or skewed type A up to a coordinate
//! reflection mask — and [`verify_admissible`] runs that classification over
//! every vertex of an arrangement. Two independent arithmetic oracles
//! ([`h_vertex_oracle`], [`k_vertex_oracle`]) predict the decomposition at a
//! vertex of the H/K families straight from the vertex coordinates, without
//! looking at hyperplanes; agreement between classifier and oracle is part of
//! the verification suite.
//!
//! Coordinates in blocks are 0-based indices into the ambient space.

use crate::arrangement::{ArrError, Arrangement};
use crate::exactgeom::{rat, Hyperplane, Rational};
use itertools::Itertools;
use num::bigint::BigInt;
use num::traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Kind of one irreducible block of an admissible decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BlockKind {
    B,
    D,
    #[serde(rename = "skewedA")]
    SkewedA,
}

/// One block of an admissible decomposition: a kind, the (sorted, 0-based)
/// coordinates it lives on, and — for skewed type A only — the reflection
/// mask, canonicalized so that its first entry is +1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    pub kind: BlockKind,
    pub coords: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mask: Option<Vec<i8>>,
}

/// A product decomposition of a central arrangement into catalogue blocks.
/// The coordinate sets of the blocks partition the ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleType {
    pub factors: Vec<Block>,
}

impl std::fmt::Display for AdmissibleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|b| {
                let kind = match b.kind {
                    BlockKind::B => "B",
                    BlockKind::D => "D",
                    BlockKind::SkewedA => "skewedA",
                };
                match &b.mask {
                    Some(m) => {
                        let signs: String =
                            m.iter().map(|&e| if e > 0 { '+' } else { '-' }).collect();
                        format!("{}{}({:?}; {})", kind, b.coords.len(), b.coords, signs)
                    }
                    None => format!("{}{}({:?})", kind, b.coords.len(), b.coords),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

fn pair_hyperplanes(n: usize, i: usize, j: usize, both_signs: bool) -> Vec<Hyperplane> {
    let mut out = Vec::new();
    let mut diff = vec![0i64; n];
    diff[i] = 1;
    diff[j] = -1;
    out.push(Hyperplane::new(diff, 0).expect("nonzero"));
    if both_signs {
        let mut sum = vec![0i64; n];
        sum[i] = 1;
        sum[j] = 1;
        out.push(Hyperplane::new(sum, 0).expect("nonzero"));
    }
    out
}

fn coordinate_hyperplane(n: usize, i: usize, level: i64) -> Hyperplane {
    let mut normal = vec![0i64; n];
    normal[i] = 1;
    Hyperplane::new(normal, level).expect("nonzero")
}

/// The central reflection arrangement of the given kind in `ℝⁿ`:
/// type B = `{xᵢ = 0} ∪ {xᵢ ± xⱼ = 0}`, type D = `{xᵢ ± xⱼ = 0}` (n ≥ 2),
/// skewed type A = `{xᵢ = 0} ∪ {xᵢ − xⱼ = 0}`.
pub fn reflection_arrangement(kind: BlockKind, n: usize) -> Result<Arrangement, ArrError> {
    let min_n = if kind == BlockKind::D { 2 } else { 1 };
    if n < min_n {
        return Err(ArrError::BadRank(n));
    }
    let mut hs = Vec::new();
    if kind != BlockKind::D {
        for i in 0..n {
            hs.push(coordinate_hyperplane(n, i, 0));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            hs.extend(pair_hyperplanes(n, i, j, kind != BlockKind::SkewedA));
        }
    }
    Arrangement::new(hs, vec![(-2, 2); n])
}

/// The odd-level family: coordinate hyperplanes `xᵢ = c` for every odd level
/// `c ∈ {−(2k+1), −(2k−1), …, 2k+1}` together with all `xᵢ ± xⱼ = 0`, inside
/// the region `(−(2k+2), 2k+2)ⁿ`.
pub fn family_h(k: i64, n: usize) -> Result<Arrangement, ArrError> {
    assert!(k >= 1 && n >= 2, "family H needs k ≥ 1, n ≥ 2");
    let mut hs = Vec::new();
    for i in 0..n {
        let mut c = -(2 * k + 1);
        while c <= 2 * k + 1 {
            hs.push(coordinate_hyperplane(n, i, c));
            c += 2;
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            hs.extend(pair_hyperplanes(n, i, j, true));
        }
    }
    Arrangement::new(hs, vec![(-(2 * k + 2), 2 * k + 2); n])
}

/// The congruence family restricted to the open box `(−b, b)ⁿ`: all
/// hyperplanes `xᵢ = c` with `c ∈ ℤ`, `xᵢ + xⱼ = c` with `c ∈ 2kℤ + 1`, and
/// `xᵢ − xⱼ = c` with `c ∈ 2kℤ`, kept iff the hyperplane meets the open box.
pub fn family_k(k: i64, n: usize, half_width: i64) -> Result<Arrangement, ArrError> {
    assert!(k >= 1 && n >= 2, "family K needs k ≥ 1, n ≥ 2");
    if half_width < 1 {
        return Err(ArrError::BadRegion);
    }
    let b = half_width;
    let mut hs = Vec::new();
    for i in 0..n {
        // x_i = c meets (−b, b)ⁿ iff |c| < b.
        for c in (-b + 1)..=(b - 1) {
            hs.push(coordinate_hyperplane(n, i, c));
        }
    }
    let in_congruence_range = |modulus: i64, residue: i64, bound: i64| -> Vec<i64> {
        // All c ≡ residue (mod modulus) with |c| < bound.
        let mut out = Vec::new();
        let mut c = residue - modulus * ((residue + bound) / modulus + 2);
        while c <= -bound {
            c += modulus;
        }
        while c < bound {
            out.push(c);
            c += modulus;
        }
        out
    };
    for i in 0..n {
        for j in (i + 1)..n {
            // x_i + x_j = c meets the open box iff |c| < 2b; same for x_i − x_j.
            for c in in_congruence_range(2 * k, 1, 2 * b) {
                let mut normal = vec![0i64; n];
                normal[i] = 1;
                normal[j] = 1;
                hs.push(Hyperplane::new(normal, c).expect("nonzero"));
            }
            for c in in_congruence_range(2 * k, 0, 2 * b) {
                let mut normal = vec![0i64; n];
                normal[i] = 1;
                normal[j] = -1;
                hs.push(Hyperplane::new(normal, c).expect("nonzero"));
            }
        }
    }
    Arrangement::new(hs, vec![(-b, b); n])
}

/// How one canonicalized central hyperplane reads in catalogue terms.
enum LocalForm {
    /// `x_i = 0`
    Coord(usize),
    /// `x_i + σ x_j = 0` with `i < j`, `σ = ±1`.
    Pair(usize, usize, i8),
}

fn parse_local(h: &Hyperplane) -> Option<LocalForm> {
    if h.offset() != 0 {
        return None;
    }
    let nz: Vec<(usize, i64)> = h
        .normal()
        .iter()
        .enumerate()
        .filter(|&(_, &a)| a != 0)
        .map(|(i, &a)| (i, a))
        .collect();
    match nz.as_slice() {
        [(i, 1)] => Some(LocalForm::Coord(*i)),
        [(i, 1), (j, 1)] => Some(LocalForm::Pair(*i, *j, 1)),
        [(i, 1), (j, -1)] => Some(LocalForm::Pair(*i, *j, -1)),
        _ => None,
    }
}

/// Classifies a central arrangement against the admissibility catalogue.
///
/// Coordinates are grouped by the relation "some hyperplane involves both";
/// each group must match type B, type D, or skewed type A exactly, the last
/// up to a reflection mask (returned lexicographically least, i.e. with
/// leading +1). Returns `None` when any hyperplane falls outside the
/// catalogue shapes, a coordinate is unconstrained, or a group matches no
/// type. `{x₁−x₂, x₁+x₂}` is always labeled `D₂`, never split.
pub fn classify_local(a: &Arrangement) -> Option<AdmissibleType> {
    if !a.is_central() {
        return None;
    }
    let n = a.dim();
    let mut has_coord = vec![false; n];
    // (i, j) → set of σ present, σ = +1 for x_i + x_j, −1 for x_i − x_j.
    let mut pair_signs: BTreeMap<(usize, usize), BTreeSet<i8>> = BTreeMap::new();
    for h in a.hyperplanes() {
        match parse_local(h)? {
            LocalForm::Coord(i) => has_coord[i] = true,
            LocalForm::Pair(i, j, s) => {
                pair_signs.entry((i, j)).or_default().insert(s);
            }
        }
    }
    // Connected components of the coordinate graph.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(i, j) in pair_signs.keys() {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut seen = vec![false; n];
    let mut factors = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        factors.push(classify_block(&comp, &has_coord, &pair_signs)?);
    }
    factors.sort();
    Some(AdmissibleType { factors })
}

fn classify_block(
    comp: &[usize],
    has_coord: &[bool],
    pair_signs: &BTreeMap<(usize, usize), BTreeSet<i8>>,
) -> Option<Block> {
    let zeros = comp.iter().filter(|&&i| has_coord[i]).count();
    if comp.len() == 1 {
        // A singleton block {x_i = 0} matches both B₁ and skewed A₁; it is
        // reported as skewed A₁ so products over vertices stay in one kind.
        return if zeros == 1 {
            Some(Block {
                kind: BlockKind::SkewedA,
                coords: comp.to_vec(),
                mask: Some(vec![1]),
            })
        } else {
            None // unconstrained coordinate
        };
    }
    // Every pair inside the block must be present; record its sign set.
    let mut all_both = true;
    let mut all_single = true;
    for (a, b) in comp.iter().copied().tuple_combinations() {
        match pair_signs.get(&(a, b)) {
            None => return None, // incomplete block
            Some(s) if s.len() == 2 => all_single = false,
            Some(_) => all_both = false,
        }
    }
    if all_both && zeros == comp.len() {
        return Some(Block {
            kind: BlockKind::B,
            coords: comp.to_vec(),
            mask: None,
        });
    }
    if all_both && zeros == 0 {
        return Some(Block {
            kind: BlockKind::D,
            coords: comp.to_vec(),
            mask: None,
        });
    }
    if all_single && zeros == comp.len() {
        // Skewed type A: find a mask ε with ε_i ε_j = −σ_ij for every pair.
        let pos: BTreeMap<usize, usize> = comp.iter().enumerate().map(|(p, &c)| (c, p)).collect();
        let mut mask: Vec<i8> = vec![0; comp.len()];
        mask[0] = 1;
        for p in 1..comp.len() {
            let sigma = *pair_signs[&(comp[0], comp[p])].iter().next().unwrap();
            mask[p] = -sigma * mask[0];
        }
        for (a, b) in comp.iter().copied().tuple_combinations() {
            let sigma = *pair_signs[&(a, b)].iter().next().unwrap();
            if mask[pos[&a]] * mask[pos[&b]] != -sigma {
                return None; // inconsistent sign pattern
            }
        }
        return Some(Block {
            kind: BlockKind::SkewedA,
            coords: comp.to_vec(),
            mask: Some(mask),
        });
    }
    None
}

/// Exact solution of `n` hyperplane equations in `n` variables via Cramer's
/// rule on 128-bit integers; `None` when the normals are dependent.
fn solve_square(rows: &[&Hyperplane], n: usize) -> Option<Vec<Rational>> {
    fn det(m: &[Vec<i128>]) -> i128 {
        match m.len() {
            0 => 1,
            1 => m[0][0],
            2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
            _ => {
                let mut acc = 0i128;
                for (j, &top) in m[0].iter().enumerate() {
                    if top == 0 {
                        continue;
                    }
                    let minor: Vec<Vec<i128>> = m[1..]
                        .iter()
                        .map(|row| {
                            row.iter()
                                .enumerate()
                                .filter(|&(c, _)| c != j)
                                .map(|(_, &v)| v)
                                .collect()
                        })
                        .collect();
                    let term = top * det(&minor);
                    if j % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                acc
            }
        }
    }
    let m: Vec<Vec<i128>> = rows
        .iter()
        .map(|h| h.normal().iter().map(|&a| a as i128).collect())
        .collect();
    let d = det(&m);
    if d == 0 {
        return None;
    }
    let mut out = Vec::with_capacity(n);
    for col in 0..n {
        let mut mc = m.clone();
        for (r, row) in mc.iter_mut().enumerate() {
            row[col] = rows[r].offset() as i128;
        }
        out.push(Rational::new(BigInt::from(det(&mc)), BigInt::from(d)));
    }
    Some(out)
}

/// All vertices (0-dimensional fans) of the arrangement strictly inside its
/// region: intersections of `n` independent hyperplanes, deduplicated.
pub fn arrangement_vertices(arr: &Arrangement) -> Vec<Vec<Rational>> {
    let n = arr.dim();
    let hs = arr.hyperplanes();
    let mut set: BTreeSet<Vec<Rational>> = BTreeSet::new();
    if hs.len() < n {
        return Vec::new();
    }
    for subset in (0..hs.len()).combinations(n) {
        let rows: Vec<&Hyperplane> = subset.iter().map(|&i| &hs[i]).collect();
        if let Some(p) = solve_square(&rows, n) {
            if arr.region_contains(&p) {
                set.insert(p);
            }
        }
    }
    set.into_iter().collect()
}

/// One classified vertex in an admissibility report.
#[derive(Clone, Debug, Serialize)]
pub struct VertexEntry {
    /// Vertex coordinates as exact rational strings.
    pub vertex: Vec<String>,
    /// The admissible decomposition, or `null` for a violation.
    pub factors: Option<AdmissibleType>,
}

/// Result of running [`classify_local`] over every vertex of an arrangement.
#[derive(Clone, Debug, Serialize)]
pub struct AdmissibleReport {
    pub vertex_count: usize,
    pub all_admissible: bool,
    pub vertices: Vec<VertexEntry>,
    /// Names of vertices where classification failed.
    pub violations: Vec<String>,
}

fn rational_strings(p: &[Rational]) -> Vec<String> {
    p.iter().map(|x| x.to_string()).collect()
}

/// Classifies the local arrangement at every vertex strictly inside the
/// region (optionally shrunk to `window`).
pub fn verify_admissible(arr: &Arrangement, window: Option<&[(i64, i64)]>) -> AdmissibleReport {
    let scoped;
    let arr = match window {
        None => arr,
        Some(w) => {
            let region: Vec<(i64, i64)> = arr
                .region()
                .iter()
                .zip(w)
                .map(|(&(lo, hi), &(wlo, whi))| (lo.max(wlo), hi.min(whi)))
                .collect();
            scoped = Arrangement::new(arr.hyperplanes().to_vec(), region)
                .expect("shrunken window stays valid");
            &scoped
        }
    };
    let mut vertices = Vec::new();
    let mut violations = Vec::new();
    for v in arrangement_vertices(arr) {
        let local = arr.local_at(&v).expect("vertices lie on hyperplanes");
        let factors = classify_local(&local);
        if factors.is_none() {
            violations.push(format!("({})", rational_strings(&v).join(", ")));
        }
        vertices.push(VertexEntry {
            vertex: rational_strings(&v),
            factors,
        });
    }
    AdmissibleReport {
        vertex_count: vertices.len(),
        all_admissible: violations.is_empty(),
        vertices,
        violations,
    }
}

fn canonical_mask(mut mask: Vec<i8>) -> Vec<i8> {
    if mask.first().copied() == Some(-1) {
        for e in &mut mask {
            *e = -*e;
        }
    }
    mask
}

/// Independent prediction of the admissible type at a vertex of
/// `family_h(k, ·)`, straight from the coordinates: the zero coordinates form
/// one type-D block (size ≥ 2), and for each odd level `v` the coordinates
/// with `|θᵢ| = v ≤ 2k+1` form a skewed type A block with mask `sign(θᵢ)`.
/// Returns `None` for coordinates no H-vertex can have.
pub fn h_vertex_oracle(k: i64, theta: &[Rational]) -> Option<AdmissibleType> {
    let mut by_level: BTreeMap<BigInt, Vec<usize>> = BTreeMap::new();
    for (i, x) in theta.iter().enumerate() {
        if !x.denom().is_one() {
            return None;
        }
        by_level.entry(x.numer().abs()).or_default().push(i);
    }
    let mut factors = Vec::new();
    for (level, coords) in by_level {
        if level.is_zero() {
            if coords.len() < 2 {
                return None; // a lone zero coordinate is unconstrained
            }
            factors.push(Block {
                kind: BlockKind::D,
                coords,
                mask: None,
            });
        } else {
            let v = level.to_i64()?;
            if v % 2 == 0 || v > 2 * k + 1 {
                return None;
            }
            let mask: Vec<i8> = coords
                .iter()
                .map(|&i| if theta[i].is_positive() { 1 } else { -1 })
                .collect();
            factors.push(Block {
                kind: BlockKind::SkewedA,
                coords,
                mask: Some(canonical_mask(mask)),
            });
        }
    }
    factors.sort();
    Some(AdmissibleType { factors })
}

/// Independent prediction of the admissible type at a vertex of
/// `family_k(k, ·, ·)`. Integer coordinates group by the residue relation
/// (`θᵢ ≡ θⱼ` or `θᵢ + θⱼ ≡ 1 (mod 2k)`) into skewed type A blocks whose mask
/// distinguishes the two residues in a class; non-integer coordinates lie in
/// `kℤ + ½` and group by the parity of `(θᵢ − ½)/k` into type D blocks of
/// size ≥ 2. No hyperplane ties an integer to a non-integer coordinate.
pub fn k_vertex_oracle(k: i64, theta: &[Rational]) -> Option<AdmissibleType> {
    let two_k = BigInt::from(2 * k);
    let modk = |x: &BigInt| -> BigInt {
        let r = x % &two_k;
        if r.is_negative() {
            r + &two_k
        } else {
            r
        }
    };
    let mut int_coords: Vec<(usize, BigInt)> = Vec::new(); // (coord, residue mod 2k)
    let mut half_coords: Vec<(usize, bool)> = Vec::new(); // (coord, parity of (θ−½)/k)
    for (i, x) in theta.iter().enumerate() {
        if x.denom().is_one() {
            int_coords.push((i, modk(x.numer())));
        } else {
            // Non-integer coordinates of a K-vertex satisfy 2θ ∈ 2kℤ + 1.
            let doubled = x * rat(2);
            if !doubled.denom().is_one() {
                return None;
            }
            let m = doubled.numer() - BigInt::from(1);
            if (&m % &two_k) != BigInt::zero() {
                return None;
            }
            let q = m / &two_k; // θ = qk + ½
            half_coords.push((i, (&q % BigInt::from(2)) != BigInt::zero()));
        }
    }
    let mut factors = Vec::new();
    // Integer part: classes of the tie relation, built by closure.
    let tied = |a: &BigInt, b: &BigInt| -> bool {
        a == b || modk(&(a + b)) == modk(&BigInt::from(1))
    };
    let mut used = vec![false; int_coords.len()];
    for s in 0..int_coords.len() {
        if used[s] {
            continue;
        }
        used[s] = true;
        let mut class = vec![s];
        let mut frontier = vec![s];
        while let Some(a) = frontier.pop() {
            for b in 0..int_coords.len() {
                if !used[b] && tied(&int_coords[a].1, &int_coords[b].1) {
                    used[b] = true;
                    class.push(b);
                    frontier.push(b);
                }
            }
        }
        class.sort_unstable();
        // Within a class, residues take two values r and 1−r; mask +1 on the
        // pivot's residue. Verify every pair is actually tied (clique).
        let pivot_res = int_coords[class[0]].1.clone();
        for (&a, &b) in class.iter().tuple_combinations() {
            if !tied(&int_coords[a].1, &int_coords[b].1) {
                return None;
            }
        }
        let coords: Vec<usize> = class.iter().map(|&p| int_coords[p].0).collect();
        let mask: Vec<i8> = class
            .iter()
            .map(|&p| if int_coords[p].1 == pivot_res { 1 } else { -1 })
            .collect();
        factors.push(Block {
            kind: BlockKind::SkewedA,
            coords,
            mask: Some(canonical_mask(mask)),
        });
    }
    // Non-integer part: parity classes are type D blocks.
    for parity in [false, true] {
        let coords: Vec<usize> = half_coords
            .iter()
            .filter(|&&(_, p)| p == parity)
            .map(|&(i, _)| i)
            .collect();
        if coords.len() == 1 {
            return None; // a lone half coordinate is unconstrained
        }
        if coords.len() >= 2 {
            factors.push(Block {
                kind: BlockKind::D,
                coords,
                mask: None,
            });
        }
    }
    factors.sort();
    Some(AdmissibleType { factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::ratio;

    fn h(normal: &[i64], offset: i64) -> Hyperplane {
        Hyperplane::new(normal.to_vec(), offset).unwrap()
    }

    fn central(hs: Vec<Hyperplane>, n: usize) -> Arrangement {
        Arrangement::new(hs, vec![(-2, 2); n]).unwrap()
    }

    #[test]
    fn reflection_arrangement_counts() {
        assert_eq!(
            reflection_arrangement(BlockKind::B, 2).unwrap().hyperplanes().len(),
            4
        );
        assert_eq!(
            reflection_arrangement(BlockKind::D, 3).unwrap().hyperplanes().len(),
            6
        );
        let sa2 = reflection_arrangement(BlockKind::SkewedA, 2).unwrap();
        assert_eq!(sa2.hyperplanes().len(), 3);
        assert!(reflection_arrangement(BlockKind::D, 1).is_err());
    }

    #[test]
    fn family_h_counts_and_levels() {
        assert_eq!(family_h(1, 2).unwrap().hyperplanes().len(), 10);
        assert_eq!(family_h(1, 3).unwrap().hyperplanes().len(), 18);
        // Levels of H with k = 2 are the odd numbers −5 … 5.
        let h22 = family_h(2, 2).unwrap();
        let mut levels: Vec<i64> = h22
            .hyperplanes()
            .iter()
            .filter(|h| h.normal() == [1, 0])
            .map(|h| h.offset())
            .collect();
        levels.sort_unstable();
        assert_eq!(levels, vec![-5, -3, -1, 1, 3, 5]);
    }

    #[test]
    fn family_k_box_count_matches_hand_enumeration() {
        // k = 1, open box (−2, 2)²: coordinates {−1,0,1} each, sums at the
        // odd levels {−3,−1,1,3}, differences at the even levels {−2,0,2}.
        let k12 = family_k(1, 2, 2).unwrap();
        assert_eq!(k12.hyperplanes().len(), 13);
        // Degenerate thin box: only levels through it survive.
        let thin = family_k(1, 2, 1).unwrap();
        // Coordinates: x₁ = 0, x₂ = 0; sums odd |c| < 2: {−1, 1};
        // differences even |c| < 2: {0}.
        assert_eq!(thin.hyperplanes().len(), 5);
    }

    #[test]
    fn classify_catalogue_examples() {
        // {x₁, x₂, x₁−x₂} → skewed A₂ with trivial mask.
        let t = classify_local(&central(
            vec![h(&[1, 0], 0), h(&[0, 1], 0), h(&[1, -1], 0)],
            2,
        ))
        .unwrap();
        assert_eq!(
            t.factors,
            vec![Block {
                kind: BlockKind::SkewedA,
                coords: vec![0, 1],
                mask: Some(vec![1, 1])
            }]
        );
        // {x₁, x₂, x₁+x₂} → skewed A₂ with coordinate 2 reflected.
        let t = classify_local(&central(
            vec![h(&[1, 0], 0), h(&[0, 1], 0), h(&[1, 1], 0)],
            2,
        ))
        .unwrap();
        assert_eq!(t.factors[0].mask, Some(vec![1, -1]));
        // {x₁−x₂, x₁+x₂} → D₂, never a rotated product.
        let t = classify_local(&central(vec![h(&[1, -1], 0), h(&[1, 1], 0)], 2)).unwrap();
        assert_eq!(
            t.factors,
            vec![Block {
                kind: BlockKind::D,
                coords: vec![0, 1],
                mask: None
            }]
        );
        // Full B₂.
        let t = classify_local(&reflection_arrangement(BlockKind::B, 2).unwrap()).unwrap();
        assert_eq!(t.factors[0].kind, BlockKind::B);
    }

    #[test]
    fn classify_rejects_non_catalogue_shapes() {
        // A hyperplane with three coordinates.
        assert!(classify_local(&central(vec![h(&[1, 1, 1], 0)], 3)).is_none());
        // Unconstrained coordinate.
        assert!(classify_local(&central(vec![h(&[1, 0], 0)], 2)).is_none());
        // Mixed: pair (1,2) has both signs, pair (1,3) only one, zeros everywhere.
        let a = central(
            vec![
                h(&[1, 0, 0], 0),
                h(&[0, 1, 0], 0),
                h(&[0, 0, 1], 0),
                h(&[1, -1, 0], 0),
                h(&[1, 1, 0], 0),
                h(&[1, 0, -1], 0),
                h(&[0, 1, -1], 0),
            ],
            3,
        );
        assert!(classify_local(&a).is_none());
        // Inconsistent skewed signs on a triangle: x₁−x₂, x₁−x₃, x₂+x₃.
        let a = central(
            vec![
                h(&[1, 0, 0], 0),
                h(&[0, 1, 0], 0),
                h(&[0, 0, 1], 0),
                h(&[1, -1, 0], 0),
                h(&[1, 0, -1], 0),
                h(&[0, 1, 1], 0),
            ],
            3,
        );
        assert!(classify_local(&a).is_none());
    }

    #[test]
    fn spec_vertices_classify_as_documented() {
        // K₁,₂ vertex (0, 1): x₁ = 0, x₂ = 1, x₁ + x₂ = 1 pass through.
        let arr = family_k(1, 2, 2).unwrap();
        let local = arr.local_at(&[rat(0), rat(1)]).unwrap();
        assert_eq!(local.hyperplanes().len(), 3);
        let t = classify_local(&local).unwrap();
        assert_eq!(t.factors[0].kind, BlockKind::SkewedA);
        assert_eq!(t.factors[0].mask, Some(vec![1, -1]));
        // K₁,₂ vertex (1/2, 1/2): only x₁−x₂ = 0 and x₁+x₂ = 1 → D₂.
        let local = arr.local_at(&[ratio(1, 2), ratio(1, 2)]).unwrap();
        let t = classify_local(&local).unwrap();
        assert_eq!(
            t.factors,
            vec![Block {
                kind: BlockKind::D,
                coords: vec![0, 1],
                mask: None
            }]
        );
        // H₁,₂ vertex (1, 1): x₁ = 1, x₂ = 1, x₁−x₂ = 0 → skewed A₂, mask (+,+).
        let arr = family_h(1, 2).unwrap();
        let local = arr.local_at(&[rat(1), rat(1)]).unwrap();
        let t = classify_local(&local).unwrap();
        assert_eq!(t.factors[0].mask, Some(vec![1, 1]));
    }

    #[test]
    fn vertex_discovery_finds_known_points() {
        let arr = family_k(1, 2, 2).unwrap();
        let vs = arrangement_vertices(&arr);
        let has = |x: Rational, y: Rational| vs.iter().any(|v| v[0] == x && v[1] == y);
        assert!(has(rat(0), rat(1)));
        assert!(has(ratio(1, 2), ratio(1, 2)));
        assert!(has(rat(0), rat(0)));
        // All vertices lie strictly inside the region.
        for v in &vs {
            assert!(arr.region_contains(v));
        }
    }

    #[test]
    fn verify_admissible_small_families_pass_and_match_oracles() {
        let arr = family_h(1, 2).unwrap();
        let report = verify_admissible(&arr, None);
        assert!(report.all_admissible, "violations: {:?}", report.violations);
        for (v, entry) in arrangement_vertices(&arr).iter().zip(&report.vertices) {
            let oracle = h_vertex_oracle(1, v).expect("H vertex must match the oracle pattern");
            assert_eq!(entry.factors.as_ref(), Some(&oracle), "vertex {v:?}");
        }
        let arr = family_k(1, 2, 2).unwrap();
        let report = verify_admissible(&arr, None);
        assert!(report.all_admissible, "violations: {:?}", report.violations);
        for (v, entry) in arrangement_vertices(&arr).iter().zip(&report.vertices) {
            let oracle = k_vertex_oracle(1, v).expect("K vertex must match the oracle pattern");
            assert_eq!(entry.factors.as_ref(), Some(&oracle), "vertex {v:?}");
        }
    }

    #[test]
    fn oracle_predicts_three_case_split() {
        // Integer vertex → skewed A blocks only.
        let t = k_vertex_oracle(1, &[rat(0), rat(1)]).unwrap();
        assert!(t.factors.iter().all(|b| b.kind == BlockKind::SkewedA));
        // Half vertex → D blocks only.
        let t = k_vertex_oracle(1, &[ratio(1, 2), ratio(1, 2)]).unwrap();
        assert!(t.factors.iter().all(|b| b.kind == BlockKind::D));
        // Mixed vertex in dimension 4 for k = 1:
        // θ = (0, 1, ½, ½): ties 0∼1 (sum ≡ 1 mod 2), coords 2,3 same parity.
        let t = k_vertex_oracle(1, &[rat(0), rat(1), ratio(1, 2), ratio(1, 2)]).unwrap();
        let kinds: Vec<BlockKind> = t.factors.iter().map(|b| b.kind).collect();
        assert_eq!(kinds, vec![BlockKind::D, BlockKind::SkewedA]);
        assert_eq!(t.factors[0].coords, vec![2, 3]);
        assert_eq!(t.factors[1].coords, vec![0, 1]);
        // A lone half coordinate cannot be a vertex.
        assert!(k_vertex_oracle(1, &[rat(0), ratio(1, 2)]).is_none());
    }

    #[test]
    fn classification_is_permutation_and_mask_covariant() {
        // Start from skewed A₃ with mask (+,−,+) on coordinates (0,1,2):
        // hyperplanes x_i = 0 and ε_i x_i − ε_j x_j.
        let eps = [1i64, -1, 1];
        let mut hs = vec![h(&[1, 0, 0], 0), h(&[0, 1, 0], 0), h(&[0, 0, 1], 0)];
        for i in 0..3 {
            for j in (i + 1)..3 {
                let mut normal = vec![0i64; 3];
                normal[i] = eps[i];
                normal[j] = -eps[j];
                hs.push(Hyperplane::new(normal, 0).unwrap());
            }
        }
        let base = classify_local(&central(hs.clone(), 3)).unwrap();
        assert_eq!(base.factors[0].mask, Some(vec![1, -1, 1]));
        // Apply the coordinate swap 0↔2 and the global mask δ = (−,−,+).
        let delta = [-1i64, -1, 1];
        let perm = [2usize, 1, 0];
        let transformed: Vec<Hyperplane> = hs
            .iter()
            .map(|hp| {
                let mut normal = vec![0i64; 3];
                for (i, &a) in hp.normal().iter().enumerate() {
                    // x_i ↦ δ_i x_{perm(i)}
                    normal[perm[i]] += a * delta[i];
                }
                Hyperplane::new(normal, 0).unwrap()
            })
            .collect();
        let t = classify_local(&central(transformed, 3)).unwrap();
        assert_eq!(t.factors.len(), 1);
        assert_eq!(t.factors[0].coords, vec![0, 1, 2]);
        // Expected mask: ε'_{perm(i)} = δ_i ε_i, canonicalized.
        // ε' = (δ₂ε₂, δ₁ε₁, δ₀ε₀) indexwise → (1·1, (−1)(−1), (−1)(1)) = (+,+,−).
        assert_eq!(t.factors[0].mask, Some(vec![1, 1, -1]));
    }

    #[test]
    fn admissible_report_serializes_deterministically() {
        let arr = family_k(1, 2, 2).unwrap();
        let a = serde_json::to_string(&verify_admissible(&arr, None)).unwrap();
        let b = serde_json::to_string(&verify_admissible(&arr, None)).unwrap();
        assert_eq!(a, b);
        assert!(a.contains("\"skewedA\""));
    }

    #[test]
    #[ignore = "timing probe for the largest verification case; run explicitly"]
    fn large_h_family_verifies_quickly() {
        let start = std::time::Instant::now();
        let arr = family_h(3, 4).unwrap();
        let report = verify_admissible(&arr, None);
        assert!(report.all_admissible, "violations: {:?}", report.violations);
        for (v, entry) in arrangement_vertices(&arr).iter().zip(&report.vertices) {
            let oracle = h_vertex_oracle(3, v).expect("H vertex must match the oracle pattern");
            assert_eq!(entry.factors.as_ref(), Some(&oracle));
        }
        eprintln!(
            "H(k=3, n=4): {} vertices in {:?}",
            report.vertex_count,
            start.elapsed()
        );
    }

    #[test]
    fn window_shrinks_the_validated_region() {
        let arr = family_h(1, 2).unwrap();
        let full = verify_admissible(&arr, None);
        let windowed = verify_admissible(&arr, Some(&[(-1, 1), (-1, 1)]));
        assert!(windowed.vertex_count < full.vertex_count);
        // (0,0) is the only H vertex strictly inside (−1,1)².
        assert_eq!(windowed.vertex_count, 1);
        assert_eq!(windowed.vertices[0].vertex, vec!["0", "0"]);
    }
}
