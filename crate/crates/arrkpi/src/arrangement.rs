//! Hyperplane arrangements and their fan decompositions.
//!
//! An [`Arrangement`] is a finite list of integer hyperplanes together with an
//! open axis-aligned region (a box) in which all cells are witnessed. The
//! region stratifies into *fans*: maximal connected subsets on which every
//! hyperplane keeps a constant sign. Each fan is a relatively open convex
//! polyhedron recorded by its sign covector, an exact interior witness point,
//! its affine support, and a boundedness flag (boundedness is decided in the
//! ambient space via the recession cone, independent of the region).
//!
//! The face order on fans — `F ≤ G` iff the covector of `F` arises from the
//! covector of `G` by zeroing entries — drives everything downstream: chamber
//! sets `F⁰`, gates, face projections, and the dual cell complex.

use crate::exactgeom::{
    feasible, flat_of, rat, solve_constraints, AffineFlat, GeomError, Hyperplane,
    LinCon, Rational, Rel, Sign, SignVector,
};
use num::traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum ArrError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("region too small to contain any chamber")]
    NoChamber,
    #[error("region must have one (lo, hi) pair per coordinate with lo < hi")]
    BadRegion,
    #[error("unsupported rank {0} for this family")]
    BadRank(usize),
    #[error("point is not a vertex of the arrangement")]
    NotAVertex,
    #[error("invalid arrangement JSON: {0}")]
    Json(String),
}

/// A finite integer hyperplane arrangement with an open box region.
///
/// Hyperplanes are stored canonicalized, deduplicated, and sorted, so two
/// arrangements with the same geometry compare equal and all covector-indexed
/// output is deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    hyperplanes: Vec<Hyperplane>,
    region: Vec<(i64, i64)>,
}

#[derive(Serialize, Deserialize)]
struct ArrangementJson {
    dim: usize,
    hyperplanes: Vec<Vec<i64>>,
    region: Vec<(i64, i64)>,
}

impl Arrangement {
    /// Builds an arrangement; an empty hyperplane list is allowed and
    /// decomposes the region into a single chamber.
    pub fn new(
        hyperplanes: Vec<Hyperplane>,
        region: Vec<(i64, i64)>,
    ) -> Result<Arrangement, ArrError> {
        let dim = region.len();
        for h in &hyperplanes {
            if h.dim() != dim {
                return Err(ArrError::Geom(GeomError::DimensionMismatch {
                    expected: dim,
                    got: h.dim(),
                }));
            }
        }
        if region.iter().any(|(lo, hi)| lo >= hi) {
            return Err(ArrError::BadRegion);
        }
        let mut hyperplanes = hyperplanes;
        hyperplanes.sort();
        hyperplanes.dedup();
        Ok(Arrangement {
            hyperplanes,
            region,
        })
    }

    pub fn dim(&self) -> usize {
        self.region.len()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn region(&self) -> &[(i64, i64)] {
        &self.region
    }

    pub fn region_rational(&self) -> Vec<(Rational, Rational)> {
        self.region
            .iter()
            .map(|&(lo, hi)| (rat(lo), rat(hi)))
            .collect()
    }

    /// Whether every hyperplane passes through the origin.
    pub fn is_central(&self) -> bool {
        self.hyperplanes.iter().all(|h| h.offset() == 0)
    }

    /// Whether the normals span the ambient space.
    pub fn is_essential(&self) -> bool {
        let rows: Vec<Hyperplane> = self
            .hyperplanes
            .iter()
            .map(|h| Hyperplane::new(h.normal().to_vec(), 0).expect("nonzero normal"))
            .collect();
        match flat_of(&rows, self.dim()) {
            Ok(Some(f)) => f.dim() == 0,
            _ => false,
        }
    }

    /// Exact sign covector of a point with respect to the hyperplane list.
    pub fn covector_of_point(&self, p: &[Rational]) -> Result<SignVector, ArrError> {
        self.hyperplanes
            .iter()
            .map(|h| h.eval_sign(p).map_err(ArrError::from))
            .collect()
    }

    /// Whether `p` lies strictly inside the region box.
    pub fn region_contains(&self, p: &[Rational]) -> bool {
        p.len() == self.dim()
            && self
                .region
                .iter()
                .zip(p)
                .all(|(&(lo, hi), x)| *x > rat(lo) && *x < rat(hi))
    }

    /// The arrangement of all hyperplanes through `v`, translated so that `v`
    /// becomes the origin; the result is central. The region becomes the unit
    /// box, which is immaterial for a central arrangement (every cone meets
    /// every neighborhood of the origin). At a point on no hyperplane the
    /// result is the empty arrangement, whose single fan is the whole space.
    pub fn local_at(&self, v: &[Rational]) -> Result<Arrangement, ArrError> {
        let mut local = Vec::new();
        for h in &self.hyperplanes {
            if h.eval_sign(v)? == Sign::Zero {
                local.push(Hyperplane::new(h.normal().to_vec(), 0)?);
            }
        }
        Arrangement::new(local, vec![(-1, 1); self.dim()])
    }

    pub fn from_json_str(s: &str) -> Result<Arrangement, ArrError> {
        let parsed: ArrangementJson =
            serde_json::from_str(s).map_err(|e| ArrError::Json(e.to_string()))?;
        if parsed.region.len() != parsed.dim {
            return Err(ArrError::Json(format!(
                "region has {} entries but dim is {}",
                parsed.region.len(),
                parsed.dim
            )));
        }
        let mut hs = Vec::with_capacity(parsed.hyperplanes.len());
        for row in &parsed.hyperplanes {
            if row.len() != parsed.dim + 1 {
                return Err(ArrError::Json(format!(
                    "hyperplane row {row:?} must have dim+1 = {} entries",
                    parsed.dim + 1
                )));
            }
            hs.push(Hyperplane::from_row(row)?);
        }
        Arrangement::new(hs, parsed.region)
    }

    pub fn to_json_string(&self) -> String {
        let j = ArrangementJson {
            dim: self.dim(),
            hyperplanes: self.hyperplanes.iter().map(|h| h.to_row()).collect(),
            region: self.region.clone(),
        };
        serde_json::to_string_pretty(&j).expect("arrangement serialization cannot fail")
    }
}

/// Composition of sign covectors: entries of `a` win wherever nonzero.
pub fn covector_compose(a: &[Sign], b: &[Sign]) -> SignVector {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| if x != Sign::Zero { x } else { y })
        .collect()
}

/// `F ≤ G` in the face order: the covector of `F` is obtained from the
/// covector of `G` by zeroing some entries.
pub fn covector_le(f: &[Sign], g: &[Sign]) -> bool {
    f.iter().zip(g).all(|(&x, &y)| x == Sign::Zero || x == y)
}

/// One fan (stratum) of an arrangement.
#[derive(Clone, Debug)]
pub struct Fan {
    /// Sign of each hyperplane on the fan, indexed like the arrangement.
    pub covector: SignVector,
    /// Affine hull of the fan: the intersection of its zero-set hyperplanes.
    pub support: AffineFlat,
    /// Dimension of the fan (= dimension of its support).
    pub dim: usize,
    /// Whether the fan is a bounded subset of the ambient space.
    pub bounded: bool,
    /// An exact interior point of the fan, inside the region.
    pub witness: Vec<Rational>,
}

pub type FanId = usize;

/// The full fan decomposition of an arrangement, closed under the face order.
#[derive(Clone, Debug)]
pub struct FanComplex {
    arrangement: Arrangement,
    fans: Vec<Fan>,
    index: BTreeMap<SignVector, FanId>,
    chambers: Vec<FanId>,
}

/// Enumerates every fan of the arrangement that meets the open region box.
///
/// Depth-first search over sign assignments, pruning prefixes that are
/// already infeasible, so the work is proportional to the number of fans
/// rather than `3^(#hyperplanes)`.
pub fn enumerate_fans(arr: &Arrangement) -> Result<FanComplex, ArrError> {
    let hs = arr.hyperplanes();
    let found = enumerate_covectors(arr)?;
    if !found
        .iter()
        .any(|(cov, _)| cov.iter().all(|&s| s != Sign::Zero))
    {
        return Err(ArrError::NoChamber);
    }
    let mut fans = Vec::with_capacity(found.len());
    for (covector, witness) in found {
        let zeros: Vec<Hyperplane> = covector
            .iter()
            .zip(hs)
            .filter(|(&s, _)| s == Sign::Zero)
            .map(|(_, h)| h.clone())
            .collect();
        let support = flat_of(&zeros, arr.dim())?
            .expect("zero set of a realized covector cannot be inconsistent");
        let dim = support.dim();
        let bounded = recession_cone_is_trivial(hs, &covector, arr.dim());
        fans.push(Fan {
            covector,
            support,
            dim,
            bounded,
            witness,
        });
    }
    fans.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.covector.cmp(&b.covector)));
    let index: BTreeMap<SignVector, FanId> = fans
        .iter()
        .enumerate()
        .map(|(i, f)| (f.covector.clone(), i))
        .collect();
    let chambers: Vec<FanId> = fans
        .iter()
        .enumerate()
        .filter(|(_, f)| f.covector.iter().all(|&s| s != Sign::Zero))
        .map(|(i, _)| i)
        .collect();
    Ok(FanComplex {
        arrangement: arr.clone(),
        fans,
        index,
        chambers,
    })
}

/// Enumerates every realized sign covector together with a witness point,
/// without computing supports or boundedness (cheaper than
/// [`enumerate_fans`] when only the combinatorics are needed).
pub fn enumerate_covectors(
    arr: &Arrangement,
) -> Result<Vec<(SignVector, Vec<Rational>)>, ArrError> {
    let hs = arr.hyperplanes();
    let bx = arr.region_rational();
    let mut found: Vec<(SignVector, Vec<Rational>)> = Vec::new();
    let mut prefix: SignVector = Vec::with_capacity(hs.len());
    dfs_signs(hs, &bx, &mut prefix, &mut found)?;
    Ok(found)
}

fn dfs_signs(
    hs: &[Hyperplane],
    bx: &[(Rational, Rational)],
    prefix: &mut SignVector,
    found: &mut Vec<(SignVector, Vec<Rational>)>,
) -> Result<(), ArrError> {
    let k = prefix.len();
    if k == hs.len() {
        // The caller only recurses into feasible prefixes, but the final
        // witness is recomputed here so every leaf stores one.
        if let Some(w) = feasible(prefix, hs, bx)? {
            found.push((prefix.clone(), w));
        }
        return Ok(());
    }
    for s in [Sign::Neg, Sign::Zero, Sign::Pos] {
        prefix.push(s);
        if feasible(prefix, &hs[..k + 1], bx)?.is_some() {
            dfs_signs(hs, bx, prefix, found)?;
        }
        prefix.pop();
    }
    Ok(())
}

/// Whether the recession cone of the closed fan `{x : sign constraints}` is
/// the origin alone, i.e. the fan is bounded in the ambient space.
fn recession_cone_is_trivial(hs: &[Hyperplane], covector: &[Sign], dim: usize) -> bool {
    // The cone is {d : n_i·d = 0 where σ_i = 0, σ_i (n_i·d) ≥ 0 otherwise}.
    // It contains a nonzero vector iff for some coordinate j and sign ε the
    // slice {d ∈ cone : d_j = ε} is nonempty.
    let base: Vec<LinCon> = hs
        .iter()
        .zip(covector)
        .map(|(h, &s)| {
            let flip = s == Sign::Neg;
            LinCon {
                coeffs: h
                    .normal()
                    .iter()
                    .map(|&a| if flip { rat(-a) } else { rat(a) })
                    .collect(),
                constant: Rational::zero(),
                rel: if s == Sign::Zero { Rel::Eq } else { Rel::Ge },
            }
        })
        .collect();
    for j in 0..dim {
        for eps in [1i64, -1] {
            let mut cons = base.clone();
            let mut coeffs = vec![Rational::zero(); dim];
            coeffs[j] = Rational::one();
            cons.push(LinCon {
                coeffs,
                constant: rat(-eps),
                rel: Rel::Eq,
            });
            if solve_constraints(cons, dim).is_some() {
                return false;
            }
        }
    }
    true
}

impl FanComplex {
    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn fans(&self) -> &[Fan] {
        &self.fans
    }

    pub fn fan(&self, id: FanId) -> &Fan {
        &self.fans[id]
    }

    pub fn len(&self) -> usize {
        self.fans.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fans.is_empty()
    }

    /// Fan ids of the chambers (top-dimensional fans), in covector order.
    pub fn chambers(&self) -> &[FanId] {
        &self.chambers
    }

    /// Looks up a fan by covector.
    pub fn find(&self, covector: &[Sign]) -> Option<FanId> {
        self.index.get(covector).copied()
    }

    /// Fan ids of the 0-dimensional fans (arrangement vertices in the region).
    pub fn vertices(&self) -> Vec<FanId> {
        (0..self.fans.len())
            .filter(|&i| self.fans[i].dim == 0)
            .collect()
    }

    /// Face order `a ≤ b`.
    pub fn le(&self, a: FanId, b: FanId) -> bool {
        covector_le(&self.fans[a].covector, &self.fans[b].covector)
    }

    /// Fans covering `a` in the face order: `b > a` with `dim b = dim a + 1`.
    pub fn covers_of(&self, a: FanId) -> Vec<FanId> {
        (0..self.fans.len())
            .filter(|&b| {
                b != a && self.fans[b].dim == self.fans[a].dim + 1 && self.le(a, b)
            })
            .collect()
    }

    /// The chamber set `F⁰`: all chambers whose covector agrees with `F` on
    /// its nonzero entries (equivalently, all chambers above `F`).
    pub fn chamber_set(&self, f: FanId) -> Vec<FanId> {
        self.chambers
            .iter()
            .copied()
            .filter(|&c| self.le(f, c))
            .collect()
    }

    /// Number of hyperplanes separating two chambers.
    pub fn separation(&self, c1: FanId, c2: FanId) -> usize {
        self.fans[c1]
            .covector
            .iter()
            .zip(&self.fans[c2].covector)
            .filter(|(&a, &b)| a != Sign::Zero && b == a.opposite())
            .count()
    }

    /// The gate of chamber `c` in the chamber set of fan `f`: the unique
    /// chamber of `F⁰` at minimal separation from `c`, realized as the
    /// covector composition `F ∘ c`.
    pub fn gate(&self, c: FanId, f: FanId) -> FanId {
        let cov = covector_compose(&self.fans[f].covector, &self.fans[c].covector);
        self.find(&cov)
            .expect("composition of realized covectors is realized")
    }

    /// Projection of fan `e` to the face `f`: the fan with covector `F ∘ E`.
    /// Its chamber set is exactly the gate image of `E⁰`.
    pub fn project_face(&self, e: FanId, f: FanId) -> FanId {
        let cov = covector_compose(&self.fans[f].covector, &self.fans[e].covector);
        self.find(&cov)
            .expect("composition of realized covectors is realized")
    }

    /// Chambers adjacent to chamber `c`: separated from it by exactly one
    /// hyperplane (equivalently, sharing a codimension-one face).
    pub fn adjacent_chambers(&self, c: FanId) -> Vec<FanId> {
        self.chambers
            .iter()
            .copied()
            .filter(|&d| d != c && self.separation(c, d) == 1)
            .collect()
    }

    /// Graph distance between chambers in the chamber adjacency graph.
    pub fn chamber_graph_distance(&self, c1: FanId, c2: FanId) -> Option<usize> {
        if c1 == c2 {
            return Some(0);
        }
        let mut dist: BTreeMap<FanId, usize> = BTreeMap::new();
        dist.insert(c1, 0);
        let mut queue = std::collections::VecDeque::from([c1]);
        while let Some(c) = queue.pop_front() {
            let d = dist[&c];
            for nb in self.adjacent_chambers(c) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(nb) {
                    e.insert(d + 1);
                    if nb == c2 {
                        return Some(d + 1);
                    }
                    queue.push_back(nb);
                }
            }
        }
        dist.get(&c2).copied()
    }

    /// Euler characteristic of the order complex of the fan poset: the
    /// alternating sum over chain lengths of the number of chains.
    pub fn order_complex_euler(&self) -> i64 {
        // Dynamic program on chains ending at each fan, one length at a time.
        let n = self.fans.len();
        let mut strict_below: Vec<Vec<FanId>> = vec![Vec::new(); n];
        for b in 0..n {
            for a in 0..n {
                if a != b && self.fans[a].dim < self.fans[b].dim && self.le(a, b) {
                    strict_below[b].push(a);
                }
            }
        }
        let mut ending_at: Vec<i64> = vec![1; n];
        let mut chi: i64 = n as i64;
        let mut sign = -1i64;
        loop {
            let mut next: Vec<i64> = vec![0; n];
            let mut total = 0i64;
            for b in 0..n {
                for &a in &strict_below[b] {
                    next[b] += ending_at[a];
                }
                total += next[b];
            }
            if total == 0 {
                break;
            }
            chi += sign * total;
            sign = -sign;
            ending_at = next;
        }
        chi
    }

    /// Euler characteristic of the dual complex: one `codim(F)`-cell per fan.
    pub fn dual_euler(&self) -> i64 {
        let n = self.arrangement.dim();
        self.fans
            .iter()
            .map(|f| if (n - f.dim) % 2 == 0 { 1i64 } else { -1 })
            .sum()
    }

    /// The dual cell structure: each fan `F` spans a cell of dimension
    /// `codim(F)` whose vertex set is the chamber set `F⁰`; the faces of the
    /// cell of `F` are the cells of the fans `G ≥ F`.
    pub fn dual_complex(&self) -> DualComplex<'_> {
        DualComplex { complex: self }
    }
}

/// View of a fan complex as its dual cell complex (vertices = chambers).
#[derive(Clone, Copy)]
pub struct DualComplex<'a> {
    complex: &'a FanComplex,
}

impl DualComplex<'_> {
    /// Dimension of the dual cell of `f` (= codimension of the fan).
    pub fn cell_dim(&self, f: FanId) -> usize {
        self.complex.arrangement.dim() - self.complex.fans[f].dim
    }

    /// Vertex set of the dual cell of `f`: the chamber set `F⁰`.
    pub fn face_of(&self, f: FanId) -> Vec<FanId> {
        self.complex.chamber_set(f)
    }

    /// Proper faces of the dual cell of `f`: dual cells of fans `G > F`.
    pub fn boundary_cells(&self, f: FanId) -> Vec<FanId> {
        (0..self.complex.fans.len())
            .filter(|&g| g != f && self.complex.le(f, g))
            .collect()
    }

    /// Number of dual cells in each dimension `0 ..= ambient dim`.
    pub fn cell_counts(&self) -> Vec<usize> {
        let n = self.complex.arrangement.dim();
        let mut counts = vec![0usize; n + 1];
        for f in self.complex.fans() {
            counts[n - f.dim] += 1;
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{ratio, signs_to_string};

    fn h(normal: &[i64], offset: i64) -> Hyperplane {
        Hyperplane::new(normal.to_vec(), offset).unwrap()
    }

    /// Three concurrent lines in the plane: x₁ = 0, x₂ = 0, x₁ − x₂ = 0.
    fn three_lines() -> Arrangement {
        Arrangement::new(
            vec![h(&[1, 0], 0), h(&[0, 1], 0), h(&[1, -1], 0)],
            vec![(-2, 2), (-2, 2)],
        )
        .unwrap()
    }

    #[test]
    fn three_concurrent_lines_have_thirteen_fans() {
        let fc = enumerate_fans(&three_lines()).unwrap();
        // 1 origin + 6 rays + 6 chambers.
        assert_eq!(fc.len(), 13);
        assert_eq!(fc.chambers().len(), 6);
        assert_eq!(fc.vertices().len(), 1);
        let by_dim: Vec<usize> = (0..=2)
            .map(|d| fc.fans().iter().filter(|f| f.dim == d).count())
            .collect();
        assert_eq!(by_dim, vec![1, 6, 6]);
    }

    #[test]
    fn witness_signs_match_covector() {
        let arr = three_lines();
        let fc = enumerate_fans(&arr).unwrap();
        for fan in fc.fans() {
            let cov = arr.covector_of_point(&fan.witness).unwrap();
            assert_eq!(cov, fan.covector, "stored witness must realize the covector");
            assert!(arr.region_contains(&fan.witness));
        }
    }

    #[test]
    fn only_the_origin_is_bounded_in_a_central_arrangement() {
        let fc = enumerate_fans(&three_lines()).unwrap();
        for fan in fc.fans() {
            assert_eq!(
                fan.bounded,
                fan.dim == 0,
                "covector {} must be bounded iff it is the origin",
                signs_to_string(&fan.covector)
            );
        }
    }

    #[test]
    fn empty_arrangement_is_a_single_chamber() {
        let arr = Arrangement::new(vec![], vec![(-2, 2), (-2, 2)]).unwrap();
        let fc = enumerate_fans(&arr).unwrap();
        assert_eq!(fc.len(), 1, "the whole region is one fan");
        assert_eq!(fc.chambers().len(), 1);
        let fan = fc.fan(fc.chambers()[0]);
        assert_eq!(fan.covector, vec![]);
        assert_eq!(fan.dim, 2);
        assert!(!fan.bounded);
        assert!(arr.region_contains(&fan.witness));
        // A chamber-interior point of a nonempty arrangement has the empty
        // arrangement as its local structure.
        let three = three_lines();
        let local = three.local_at(&[ratio(1, 3), ratio(1, 7)]).unwrap();
        assert!(local.hyperplanes().is_empty());
        assert_eq!(enumerate_fans(&local).unwrap().len(), 1);
    }

    #[test]
    fn affine_line_splits_plane_into_three_fans() {
        let arr = Arrangement::new(vec![h(&[1, 0], 1)], vec![(-3, 3), (-3, 3)]).unwrap();
        let fc = enumerate_fans(&arr).unwrap();
        assert_eq!(fc.len(), 3);
        assert_eq!(fc.chambers().len(), 2);
        // No fan of a single-line arrangement is bounded.
        assert!(fc.fans().iter().all(|f| !f.bounded));
        assert_eq!(fc.order_complex_euler(), 1);
        assert_eq!(fc.dual_euler(), 1);
    }

    #[test]
    fn bounded_cells_of_a_box_grid() {
        // x₁ = ±1 and x₂ = ±1: the middle square is bounded, plus its faces
        // need care: edges/vertices of the grid are bounded iff they touch
        // only the central square's closure in bounded directions.
        let arr = Arrangement::new(
            vec![h(&[1, 0], 1), h(&[1, 0], -1), h(&[0, 1], 1), h(&[0, 1], -1)],
            vec![(-4, 4), (-4, 4)],
        )
        .unwrap();
        let fc = enumerate_fans(&arr).unwrap();
        assert_eq!(fc.chambers().len(), 9);
        let bounded_chambers = fc
            .chambers()
            .iter()
            .filter(|&&c| fc.fan(c).bounded)
            .count();
        assert_eq!(bounded_chambers, 1, "only the central square is bounded");
        // 4 corner vertices, 4 bounded edges (sides of the square).
        let bounded_edges = fc
            .fans()
            .iter()
            .filter(|f| f.dim == 1 && f.bounded)
            .count();
        assert_eq!(bounded_edges, 4);
        assert_eq!(fc.vertices().len(), 4);
    }

    #[test]
    fn face_order_matches_closure_geometry() {
        let fc = enumerate_fans(&three_lines()).unwrap();
        let origin = fc.vertices()[0];
        // The origin is below every fan.
        for i in 0..fc.len() {
            assert!(fc.le(origin, i));
        }
        // Each ray is below exactly two chambers.
        for (i, fan) in fc.fans().iter().enumerate() {
            if fan.dim == 1 {
                assert_eq!(fc.chamber_set(i).len(), 2);
                assert_eq!(fc.covers_of(i).len(), 2);
            }
        }
        // Chamber sets of the origin = all chambers.
        assert_eq!(fc.chamber_set(origin).len(), 6);
    }

    #[test]
    fn separation_equals_chamber_graph_distance() {
        let arr = Arrangement::new(
            vec![h(&[1, 0], 0), h(&[0, 1], 0), h(&[1, -1], 0), h(&[1, 1], 2)],
            vec![(-4, 4), (-4, 4)],
        )
        .unwrap();
        let fc = enumerate_fans(&arr).unwrap();
        for &c1 in fc.chambers() {
            for &c2 in fc.chambers() {
                assert_eq!(
                    Some(fc.separation(c1, c2)),
                    fc.chamber_graph_distance(c1, c2),
                    "separation count must equal wall-crossing distance"
                );
            }
        }
    }

    #[test]
    fn gate_minimizes_separation_uniquely() {
        let fc = enumerate_fans(&three_lines()).unwrap();
        for &c in fc.chambers() {
            for f in 0..fc.len() {
                let g = fc.gate(c, f);
                let f0 = fc.chamber_set(f);
                assert!(f0.contains(&g));
                let dg = fc.separation(c, g);
                for &other in &f0 {
                    if other != g {
                        assert!(
                            fc.separation(c, other) > dg,
                            "gate must be the strict separation minimizer"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn projection_is_idempotent_and_gate_compatible() {
        let fc = enumerate_fans(&three_lines()).unwrap();
        for e in 0..fc.len() {
            for f in 0..fc.len() {
                let p = fc.project_face(e, f);
                assert_eq!(fc.project_face(p, f), p, "projection must be idempotent");
                // Chamber set of the projection = gates of E⁰ chambers.
                let mut gates: Vec<FanId> =
                    fc.chamber_set(e).iter().map(|&c| fc.gate(c, f)).collect();
                gates.sort_unstable();
                gates.dedup();
                let mut pc = fc.chamber_set(p);
                pc.sort_unstable();
                assert_eq!(gates, pc);
            }
        }
    }

    #[test]
    fn euler_characteristics_are_one_over_a_box() {
        for arr in [
            three_lines(),
            Arrangement::new(
                vec![h(&[1, 0], 0), h(&[0, 1], 1), h(&[1, 1], -1)],
                vec![(-3, 3), (-3, 3)],
            )
            .unwrap(),
        ] {
            let fc = enumerate_fans(&arr).unwrap();
            assert_eq!(fc.order_complex_euler(), 1);
            assert_eq!(fc.dual_euler(), 1);
        }
    }

    #[test]
    fn local_arrangement_keeps_only_incident_hyperplanes() {
        let arr = Arrangement::new(
            vec![h(&[1, 0], 0), h(&[0, 1], 0), h(&[1, 0], 1)],
            vec![(-2, 2), (-2, 2)],
        )
        .unwrap();
        let local = arr.local_at(&[rat(0), rat(0)]).unwrap();
        assert_eq!(local.hyperplanes().len(), 2);
        assert!(local.is_central());
    }

    #[test]
    fn json_roundtrip_preserves_arrangement() {
        let arr = three_lines();
        let s = arr.to_json_string();
        let back = Arrangement::from_json_str(&s).unwrap();
        assert_eq!(arr, back);
        // Spec-shaped literal input parses too.
        let lit = r#"{"dim":2,"hyperplanes":[[1,0,0],[0,1,0],[1,-1,0]],"region":[[-2,2],[-2,2]]}"#;
        assert_eq!(Arrangement::from_json_str(lit).unwrap(), arr);
    }

    #[test]
    fn dual_complex_counts_are_consistent() {
        let fc = enumerate_fans(&three_lines()).unwrap();
        let dual = fc.dual_complex();
        assert_eq!(dual.cell_counts(), vec![6, 6, 1]);
        let origin = fc.vertices()[0];
        assert_eq!(dual.cell_dim(origin), 2);
        assert_eq!(dual.face_of(origin).len(), 6);
        assert_eq!(dual.boundary_cells(origin).len(), 12);
    }
}
